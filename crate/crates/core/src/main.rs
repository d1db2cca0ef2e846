use clap::{Parser, Subcommand, ValueEnum};
use quadalg::bocher::{
    builtin, builtin_names, compose, composition_grid, contracted_basis, flat_geometric_action, potential_limit,
    same_on_cone, validate_bocher, BocherError, BocherKind, BocherMatrix, GeneratorDictionary, ParamMap, FLAT_NAMES,
};
use quadalg::canon::{canonicalize, isomorphic, CanonError, CanonicalForm};
use quadalg::catalog::{
    all_systems, expected_canonical, get_system, laplace_class_members, potential, realizability, stackel_reproduce,
    table_rows, LaplaceClass, Table, ALL_CLASSES,
};
use quadalg::contract::{
    builtin_curves, contraction_graph, search_contraction, verify_contraction, Certificate, ContractError, SearchBounds,
};
use quadalg::exactfield::{parse_rational, rational_to_json, FieldElem, Q};
use quadalg::qalg::{structure_equations, Casimir, CurveMat};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "quadalg", version, about = "Canonical forms and contractions of free quadratic algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Dot,
}

/// A system name, a JSON file or a polynomial in X1, X2, X3.
#[derive(clap::Args)]
struct AlgebraArg {
    #[arg(long, conflicts_with = "input")]
    system: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    /// Value of b for the D1A/D4 families (rational).
    #[arg(long)]
    b: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical form of a free Casimir.
    Canon {
        #[command(flatten)]
        alg: AlgebraArg,
        /// Casimir given inline, e.g. "X1^2*X2".
        #[arg(long, conflicts_with_all = ["system", "input"])]
        poly: Option<String>,
    },
    /// Decide whether two algebras are isomorphic; exit 1 when not.
    Iso {
        first: String,
        second: String,
        #[arg(long)]
        b: Option<String>,
    },
    /// Contraction curves between free algebras
    #[command(subcommand)]
    Contract(ContractCmd),
    /// Bôcher contractions of so(4,C) and their potentials
    #[command(subcommand)]
    Bocher(BocherCmd),
    /// The built-in superintegrable systems
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Reproduce the Stäckel-class formula of a system symbolically.
    Stackel { system: String },
    /// Structure relations {L1,R} and {L2,R} of an algebra.
    Structure {
        algebra: String,
        #[arg(long)]
        b: Option<String>,
    },
}

#[derive(Subcommand)]
enum ContractCmd {
    /// Verify that a curve contracts one algebra to another.
    Verify {
        /// JSON curve file or the name of a stored curve.
        #[arg(long)]
        curve: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        b: Option<String>,
    },
    /// Bounded search for a contraction curve.
    Search {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 2)]
        max_exp: i64,
        #[arg(long, default_value_t = 2)]
        max_denom: i64,
        #[arg(long)]
        b: Option<String>,
    },
    /// Contraction graph of the eighteen representatives.
    Graph {
        /// Also run the bounded search between unconnected pairs.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 2)]
        max_exp: i64,
        #[arg(long, default_value_t = 2)]
        max_denom: i64,
    },
    /// List the stored curves and whether each verifies.
    Curves,
}

#[derive(Subcommand)]
enum BocherCmd {
    /// Classify a matrix as special, general or invalid.
    Check {
        matrix: String,
        /// Integer exponents for parameterized built-ins, e.g. 1,2.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        exps: Vec<i64>,
    },
    /// Contracted so(4,C) basis.
    Basis {
        matrix: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        exps: Vec<i64>,
    },
    /// A(ε^p)·B(ε^r) for m = p/r.
    Compose {
        a: String,
        b: String,
        #[arg(long, default_value = "1")]
        m: String,
    },
    /// Leading action on flat coordinates.
    Geom {
        matrix: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        exps: Vec<i64>,
    },
    /// Limit of a potential under a matrix and a parameter map.
    Potlimit {
        /// Laplace class of the source potential, e.g. 1111.
        #[arg(long)]
        potential: String,
        #[arg(long)]
        matrix: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        exps: Vec<i64>,
        /// JSON parameter map; the identity when omitted.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Expected class of the limit; exit 1 on mismatch.
        #[arg(long)]
        target: Option<String>,
    },
    /// Names of the built-in matrices.
    List,
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// One system: manifold, class, free Casimir and canonical form.
    Show {
        name: String,
        #[arg(long)]
        b: Option<String>,
    },
    /// Canonical forms of every table row against the expected polynomial.
    Table,
    /// Laplace classes and their members.
    Classes,
    /// All system names.
    List,
}

enum Failure {
    /// The computation ran and the answer is negative.
    Math(String),
    Usage(String),
}

type Res = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn math(e: impl std::fmt::Display) -> Failure {
    Failure::Math(e.to_string())
}

fn contract_err(e: ContractError) -> Failure {
    match e {
        ContractError::DivergentLimit { .. } | ContractError::TargetMismatch { .. } => math(e),
        ContractError::InvalidCurve(_) | ContractError::Parse(_) => usage(e),
        ContractError::Canon(CanonError::RootsOutsideField) => math(e),
        _ => usage(e),
    }
}

fn bocher_err(e: BocherError) -> Failure {
    match e {
        BocherError::DivergentPotential { .. }
        | BocherError::NotSpecial
        | BocherError::InvalidMatrix
        | BocherError::NotInAlgebra
        | BocherError::NonTermination(_)
        | BocherError::DegenerateChart
        | BocherError::ZeroOperator => math(e),
        _ => usage(e),
    }
}

fn read_json(p: &Path) -> Result<Value, Failure> {
    let s = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    serde_json::from_str(&s).map_err(|e| usage(format!("{}: {e}", p.display())))
}

fn parse_b(b: &Option<String>) -> Result<Option<FieldElem>, Failure> {
    b.as_deref()
        .map(|s| parse_rational(s).map(FieldElem::from_q).map_err(|e| usage(format!("--b: {e}"))))
        .transpose()
}

fn casimir_from_value(v: &Value) -> Result<Casimir, Failure> {
    let r = match v {
        Value::String(s) => Casimir::parse(s),
        Value::Object(o) if o.get("polynomial").is_some_and(Value::is_string) => {
            Casimir::parse(o["polynomial"].as_str().unwrap())
        }
        _ => Casimir::from_json(v),
    };
    r.map_err(usage)
}

/// A system name, a path to a JSON Casimir, or an inline polynomial.
fn load_algebra(arg: &str, b: &Option<FieldElem>) -> Result<Casimir, Failure> {
    if Path::new(arg).is_file() {
        return casimir_from_value(&read_json(Path::new(arg))?);
    }
    if let Ok(sys) = get_system(arg) {
        return sys.free_casimir(b.as_ref()).map_err(usage);
    }
    Casimir::parse(arg).map_err(|e| usage(format!("{arg}: not a system, file or polynomial ({e})")))
}

fn load_matrix(arg: &str, exps: &[i64]) -> Result<BocherMatrix, Failure> {
    if builtin_names().contains(&arg) {
        return builtin(arg, exps).map_err(usage);
    }
    if !Path::new(arg).is_file() {
        return Err(usage(format!("{arg}: not a built-in matrix or a file")));
    }
    BocherMatrix::from_json(&read_json(Path::new(arg))?).map_err(usage)
}

fn load_curve(arg: &str) -> Result<CurveMat, Failure> {
    if Path::new(arg).is_file() {
        let v = read_json(Path::new(arg))?;
        return CurveMat::from_json(v.get("curve").unwrap_or(&v)).map_err(usage);
    }
    builtin_curves()
        .into_iter()
        .find(|(sc, _)| sc.name == arg)
        .map(|(sc, _)| sc.curve)
        .ok_or_else(|| usage(format!("{arg}: not a curve file or stored curve name")))
}

/// Rational field elements print as plain numbers ("n/d" strings off the integers).
fn compact(x: &FieldElem) -> Value {
    match x.as_rational() {
        Some(q) if q.is_integer() => q.numer().to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| x.to_json()),
        Some(q) => Value::String(q.to_string()),
        None => x.to_json(),
    }
}

fn cert_json(c: &Certificate) -> Value {
    let mut v = c.to_json();
    v["canonical"] = canon_json(&c.canonical);
    v
}

fn canon_json(c: &CanonicalForm) -> Value {
    let mut v = c.to_json();
    let params: serde_json::Map<String, Value> = c.params.iter().map(|(k, x)| (k.clone(), compact(x))).collect();
    v["params"] = Value::Object(params);
    v["polynomial"] = Value::String(c.polynomial().to_string());
    v
}

fn q_json(q: &Q) -> Value {
    if q.is_integer() {
        rational_to_json(q)[0].clone()
    } else {
        Value::String(q.to_string())
    }
}

// a closed pipe (`quadalg ... | head`) ends the program quietly
macro_rules! out {
    ($($t:tt)*) => { write_out(format_args!($($t)*)) };
}

fn write_out(a: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = writeln!(std::io::stdout().lock(), "{a}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

fn emit(v: &Value) {
    out!("{}", serde_json::to_string(v).expect("serializable"));
}

fn no_dot(f: Format) -> Res {
    if f == Format::Dot {
        Err(usage("--format dot is only available for `contract graph`"))
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Res {
    let fmt = cli.format;
    match cli.cmd {
        Cmd::Canon { alg, poly } => {
            no_dot(fmt)?;
            let b = parse_b(&alg.b)?;
            let f = match (&alg.system, &alg.input, &poly) {
                (Some(s), _, _) => get_system(s).map_err(usage)?.free_casimir(b.as_ref()).map_err(usage)?,
                (_, Some(p), _) => casimir_from_value(&read_json(p)?)?,
                (_, _, Some(p)) => Casimir::parse(p).map_err(usage)?,
                _ => return Err(usage("one of --system, --input or --poly is required")),
            };
            let c = canonicalize(&f).map_err(|e| match e {
                CanonError::RootsOutsideField => math(e),
                _ => usage(e),
            })?;
            match fmt {
                Format::Tsv => {
                    let ps: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    out!("{}\t{}\t{}", c.label, ps.join(","), c.polynomial());
                }
                _ => emit(&canon_json(&c)),
            }
        }
        Cmd::Iso { first, second, b } => {
            no_dot(fmt)?;
            let b = parse_b(&b)?;
            let (f, g) = (load_algebra(&first, &b)?, load_algebra(&second, &b)?);
            let w = isomorphic(&f, &g).map_err(math)?;
            match fmt {
                Format::Tsv => out!("{first}\t{second}\t{}", w.is_some()),
                _ => emit(&json!({"isomorphic": w.is_some(), "witness": w.as_ref().map(|m| m.to_json())})),
            }
            if w.is_none() {
                return Err(math(format!("{first} and {second} are not isomorphic")));
            }
        }
        Cmd::Contract(c) => run_contract(c, fmt)?,
        Cmd::Bocher(c) => {
            no_dot(fmt)?;
            run_bocher(c, fmt)?
        }
        Cmd::Catalog(c) => {
            no_dot(fmt)?;
            run_catalog(c, fmt)?
        }
        Cmd::Stackel { system } => {
            no_dot(fmt)?;
            let (got, want) = stackel_reproduce(&system).map_err(usage)?;
            let ok = got.equals(&want);
            match fmt {
                Format::Tsv => out!("{system}\t{ok}\t{got}"),
                _ => emit(&json!({"system": system, "computed": got.to_string(), "printed": want.to_string(), "match": ok})),
            }
            if !ok {
                return Err(math(format!("{system}: computed Stäckel form differs from the printed one")));
            }
        }
        Cmd::Structure { algebra, b } => {
            no_dot(fmt)?;
            let f = load_algebra(&algebra, &parse_b(&b)?)?;
            let (r1, r2) = structure_equations(&f);
            match fmt {
                Format::Tsv => out!("{{L1,R}}\t{r1}\n{{L2,R}}\t{r2}"),
                _ => emit(&json!({"casimir": f.to_string(), "L1_R": r1.to_string(), "L2_R": r2.to_string()})),
            }
        }
    }
    Ok(())
}

fn run_contract(c: ContractCmd, fmt: Format) -> Res {
    match c {
        ContractCmd::Verify { curve, from, to, b } => {
            no_dot(fmt)?;
            let b = parse_b(&b)?;
            let curve = load_curve(&curve)?;
            let cert = verify_contraction(&curve, &load_algebra(&from, &b)?, &load_algebra(&to, &b)?)
                .map_err(contract_err)?;
            match fmt {
                Format::Tsv => out!("{from}\t{to}\t{}\t{}", cert.canonical.label, cert.limit),
                _ => emit(&cert_json(&cert)),
            }
        }
        ContractCmd::Search { from, to, max_exp, max_denom, b } => {
            no_dot(fmt)?;
            let b = parse_b(&b)?;
            let bounds = SearchBounds { max_exp, max_denom };
            let r = search_contraction(&load_algebra(&from, &b)?, &load_algebra(&to, &b)?, bounds)
                .map_err(contract_err)?;
            match (&r, fmt) {
                (Some(cert), Format::Tsv) => out!("{from}\t{to}\tfound\t{}", cert.limit),
                (None, Format::Tsv) => out!("{from}\t{to}\tabsent"),
                (Some(cert), _) => emit(&json!({"found": true, "certificate": cert_json(&cert)})),
                (None, _) => emit(&json!({"found": false})),
            }
            if r.is_none() {
                return Err(math(format!("no contraction {from} -> {to} within the bounds")));
            }
        }
        ContractCmd::Graph { search, max_exp, max_denom } => {
            let g = contraction_graph(search.then_some(SearchBounds { max_exp, max_denom }));
            match fmt {
                Format::Dot => out!("{}", g.to_dot().trim_end()),
                Format::Tsv => {
                    for e in &g.edges {
                        out!("{}\t{}\t{}", e.from, e.to, e.via);
                    }
                }
                Format::Json => emit(&json!({
                    "nodes": g.nodes,
                    "edges": g.edges.iter().map(|e| json!({"from": e.from, "to": e.to, "via": e.via})).collect::<Vec<_>>(),
                    "missing_diagram_edges": g.missing_diagram_edges(),
                    "upward_edges": g.upward_edges().len(),
                })),
            }
        }
        ContractCmd::Curves => {
            no_dot(fmt)?;
            let rows: Vec<(String, String, String, Result<String, String>)> = builtin_curves()
                .into_iter()
                .map(|(sc, r)| {
                    (sc.name, sc.source.to_string(), sc.target.to_string(), r.map(|c| c.limit.to_string()).map_err(|e| e.to_string()))
                })
                .collect();
            match fmt {
                Format::Tsv => {
                    for (n, s, t, r) in &rows {
                        let (status, detail) = match r {
                            Ok(l) => ("ok", l),
                            Err(e) => ("fail", e),
                        };
                        out!("{n}\t{s}\t{t}\t{status}\t{detail}");
                    }
                }
                _ => emit(&Value::Array(
                    rows.iter()
                        .map(|(n, s, t, r)| {
                            json!({"name": n, "from": s, "to": t, "verified": r.is_ok(),
                                   "limit": r.as_ref().ok(), "error": r.as_ref().err()})
                        })
                        .collect(),
                )),
            }
        }
    }
    Ok(())
}

fn run_bocher(c: BocherCmd, fmt: Format) -> Res {
    match c {
        BocherCmd::Check { matrix, exps } => {
            let a = load_matrix(&matrix, &exps)?;
            let kind = validate_bocher(&a);
            let order = a.cone_error_order();
            match fmt {
                Format::Tsv => out!("{matrix}\t{kind}"),
                _ => emit(&json!({
                    "matrix": matrix,
                    "kind": kind,
                    "det": a.det().to_string(),
                    "cone_error_order": order.as_ref().map(q_json),
                })),
            }
            if kind == BocherKind::Invalid {
                return Err(math(format!("{matrix} is not a Bôcher contraction")));
            }
        }
        BocherCmd::Basis { matrix, exps } => {
            let a = load_matrix(&matrix, &exps)?;
            let basis = contracted_basis(&a).map_err(bocher_err)?;
            let d = GeneratorDictionary;
            match fmt {
                Format::Tsv => {
                    for (alpha, op) in &basis {
                        out!("{alpha}\t{op}");
                    }
                }
                _ => emit(&Value::Array(
                    basis
                        .iter()
                        .map(|(alpha, op)| {
                            let flat = d.decompose_flat(op).map(|cs| {
                                FLAT_NAMES
                                    .iter()
                                    .zip(&cs)
                                    .filter(|(_, c)| !c.is_zero())
                                    .map(|(n, c)| (n.to_string(), Value::String(c.to_string())))
                                    .collect::<serde_json::Map<_, _>>()
                            });
                            json!({"alpha": alpha, "operator": op.to_string(), "coeffs": op.to_json(), "flat": flat})
                        })
                        .collect(),
                )),
            }
        }
        BocherCmd::Compose { a, b, m } => {
            let m = parse_rational(&m).map_err(|e| usage(format!("--m: {e}")))?;
            let (ma, mb) = (load_matrix(&a, &[])?, load_matrix(&b, &[])?);
            let (_, kind, q) = composition_grid(&ma, &mb, std::slice::from_ref(&m)).remove(0);
            let product = compose(&ma, &mb, &m).ok();
            match fmt {
                Format::Tsv => out!("{a}\t{b}\t{m}\t{kind}"),
                _ => emit(&json!({
                    "m": q_json(&m),
                    "kind": kind,
                    "cone_error_order": q.as_ref().map(q_json),
                    "matrix": product.map(|p| p.to_json()),
                })),
            }
            if kind == BocherKind::Invalid {
                return Err(math("composition is not a Bôcher contraction"));
            }
        }
        BocherCmd::Geom { matrix, exps } => {
            let a = load_matrix(&matrix, &exps)?;
            let fa = flat_geometric_action(&a).map_err(bocher_err)?;
            match fmt {
                Format::Tsv => out!("{fa}"),
                _ => {
                    let mut v = fa.to_json();
                    if let Some((q, k)) = fa.scaling() {
                        v["scaling"] = json!({"order": q_json(&q), "kappa": k.to_string()});
                    }
                    emit(&v)
                }
            }
        }
        BocherCmd::Potlimit { potential: p, matrix, exps, params, target } => {
            let cls: LaplaceClass = p.parse().map_err(usage)?;
            let a = load_matrix(&matrix, &exps)?;
            let map = match &params {
                Some(path) => ParamMap::from_json(&read_json(path)?).map_err(usage)?,
                None => ParamMap::identity(),
            };
            let lim = potential_limit(&potential(cls), &a, &map).map_err(bocher_err)?;
            let tgt = target.as_deref().map(|t| t.parse::<LaplaceClass>().map_err(usage)).transpose()?;
            let matches = tgt.map(|t| same_on_cone(&lim, &potential(t)));
            match fmt {
                Format::Tsv => out!("{lim}\t{}", matches.map_or("-".to_string(), |m| m.to_string())),
                _ => emit(&json!({"limit": lim.to_string(), "target": tgt.map(|t| t.name()), "matches": matches})),
            }
            if matches == Some(false) {
                return Err(math(format!("limit does not equal V_{} on the null cone", tgt.unwrap())));
            }
        }
        BocherCmd::List => match fmt {
            Format::Tsv => builtin_names().into_iter().for_each(|n| out!("{n}")),
            _ => emit(&json!(builtin_names())),
        },
    }
    Ok(())
}

fn run_catalog(c: CatalogCmd, fmt: Format) -> Res {
    match c {
        CatalogCmd::Show { name, b } => {
            let b = parse_b(&b)?;
            let sys = get_system(&name).map_err(usage)?;
            let f = sys.free_casimir(b.as_ref()).map_err(usage)?;
            let canon = canonicalize(&f).ok();
            match fmt {
                Format::Tsv => out!(
                    "{}\t{}\t{}\t{f}\t{}",
                    sys.name,
                    sys.manifold.name(),
                    sys.laplace_class.map_or("-".to_string(), |c| c.to_string()),
                    canon.as_ref().map_or("-".to_string(), |c| c.label.to_string())
                ),
                _ => emit(&json!({
                    "name": sys.name,
                    "manifold": sys.manifold.name(),
                    "class": sys.laplace_class.map(|c| c.name()),
                    "free_casimir": f.to_string(),
                    "parameterized_casimir": sys.parameterized_casimir().map(|p| p.to_string()),
                    "canonical": canon.as_ref().map(canon_json),
                    "realizability": canon.as_ref().map(realizability),
                })),
            }
        }
        CatalogCmd::Table => {
            let rows: Vec<Value> = table_rows()
                .iter()
                .map(|r| {
                    let f = get_system(r.system).unwrap().free_casimir(r.b.as_ref()).unwrap();
                    let got = canonicalize(&f);
                    let want = expected_canonical(r.system, r.b.as_ref()).ok();
                    let ok = match (&got, &want) {
                        (Ok(c), Some(w)) => c.polynomial() == *w,
                        _ => false,
                    };
                    json!({
                        "table": match r.table { Table::CanND => "CanND", Table::CanNDD => "CanNDD" },
                        "row": r.row,
                        "b": r.b.as_ref().map(compact),
                        "label": got.as_ref().ok().map(|c| c.label.to_string()),
                        "canonical": got.as_ref().map(|c| c.polynomial().to_string()).unwrap_or_else(|e| e.to_string()),
                        "expected": want.map(|w| w.to_string()),
                        "match": ok,
                    })
                })
                .collect();
            match fmt {
                Format::Tsv => {
                    for r in &rows {
                        let s = |k: &str| r[k].as_str().map_or_else(|| r[k].to_string(), str::to_string);
                        out!("{}\t{}\t{}\t{}\t{}", s("table"), s("row"), s("label"), s("canonical"), r["match"]);
                    }
                }
                _ => emit(&Value::Array(rows)),
            }
        }
        CatalogCmd::Classes => {
            let rows: Vec<(String, Vec<&str>)> = ALL_CLASSES
                .iter()
                .map(|c| (c.name().to_string(), laplace_class_members(c.name()).unwrap()))
                .collect();
            match fmt {
                Format::Tsv => {
                    for (c, m) in &rows {
                        out!("{c}\t{}", m.join(","));
                    }
                }
                _ => emit(&Value::Object(rows.into_iter().map(|(c, m)| (c, json!(m))).collect())),
            }
        }
        CatalogCmd::List => match fmt {
            Format::Tsv => all_systems().iter().for_each(|s| out!("{}", s.name)),
            _ => emit(&json!(all_systems().iter().map(|s| s.name).collect::<Vec<_>>())),
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
