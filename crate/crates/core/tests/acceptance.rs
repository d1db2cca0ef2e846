//! Acceptance report: one line per criterion, PASS or FAIL, with runtime against its budget.
//! Known failures are listed in the notes; set ACCEPTANCE_STRICT=1 to turn any FAIL into a
//! nonzero exit status.

mod common;

use quadalg::bocher::{
    builtin, builtin_names, compose, contracted_basis, flat_geometric_action, potential_limit, same_on_cone,
    validate_bocher, BocherKind,
};
use quadalg::canon::{canonicalize, in_domain, isomorphic, template, CanonicalForm, Label, ALL_LABELS};
use quadalg::catalog::{
    coincidence_groups, expected_canonical, get_system, potential, Member, representatives, stackel_post_step,
    stackel_target, table_rows, LaplaceClass, Table,
};
use quadalg::contract::{
    builtin_curves, contraction_graph, search_contraction, stratum_obstruction, CurveSource, Obstruction, SearchBounds,
};
use quadalg::exactfield::{rank, FieldElem, Q};
use quadalg::qalg::{g_action, stackel_free, stackel_post, symbolic_c, Mat3};
use quadalg::symbolic::qi;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn fe(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.join(", ")
    }
}

fn table_check(table: Table) -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for r in table_rows().into_iter().filter(|r| r.table == table) {
        n += 1;
        let tag = match &r.b {
            Some(b) if r.row.contains("b=") || r.system == "E7" || r.system == "D4A" => format!("{} @ b={b}", r.row),
            _ => r.row.clone(),
        };
        let f = get_system(r.system).unwrap().free_casimir(r.b.as_ref()).unwrap();
        let want = expected_canonical(r.system, r.b.as_ref()).unwrap();
        match canonicalize(&f) {
            Ok(c) if c.polynomial() == want => {}
            Ok(c) => bad.push(format!("{tag} (got {})", c.polynomial())),
            Err(e) => bad.push(format!("{tag} ({e})")),
        }
    }
    outcome(bad.is_empty(), format!("{}/{n} rows exact; mismatches: {}", n - bad.len(), list(&bad)))
}

fn c1() -> Outcome {
    table_check(Table::CanND)
}

fn c2() -> Outcome {
    table_check(Table::CanNDD)
}

fn c3() -> Outcome {
    let mut bad = Vec::new();
    let groups = coincidence_groups();
    for g in &groups {
        let cs: Vec<_> = g.members.iter().map(|m| m.casimir()).collect();
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                if !matches!(isomorphic(&cs[i], &cs[j]), Ok(Some(_))) {
                    bad.push(format!("group {}: {} !~ {}", g.index, g.members[i], g.members[j]));
                }
            }
        }
    }
    // quotient of representatives and group members under verified isomorphism
    let mut classes: BTreeSet<String> = BTreeSet::new();
    let members = representatives().into_iter().map(|(_, m)| m).chain(groups.iter().flat_map(|g| g.members.clone()));
    let generic_d4 = |m: &Member| {
        let small = |b: &FieldElem| b.is_zero() || b == &FieldElem::from_int(2) || b == &FieldElem::from_int(-2);
        matches!(m.system, "D4B" | "D4C") && m.b.as_ref().is_some_and(|b| !small(b))
    };
    for m in members {
        // one-parameter families count once, whatever instance a group happens to pick
        let key = if generic_d4(&m) {
            "D4 family".to_string()
        } else if m.system == "D1A" && m.b.as_ref().is_some_and(|b| !b.is_zero()) {
            "D1A family".to_string()
        } else {
            match canonicalize(&m.casimir()) {
            Ok(c) => c.polynomial().to_string(),
                Err(_) => format!("uncanonicalizable {m}"),
            }
        };
        classes.insert(key);
    }
    let groups_failed: BTreeSet<usize> =
        bad.iter().filter_map(|s| s.strip_prefix("group ")?.split(':').next()?.parse().ok()).collect();
    outcome(
        bad.is_empty() && classes.len() == 18,
        format!(
            "{} of 10 groups pairwise isomorphic (failing groups: {:?}); quotient has {} classes; {}",
            10 - groups_failed.len(),
            groups_failed,
            classes.len(),
            list(&bad)
        ),
    )
}

fn c4() -> Outcome {
    let mut bad = Vec::new();
    let (mut schemata, mut printed) = (BTreeSet::new(), 0);
    let mut n = 0;
    for (sc, r) in builtin_curves() {
        match sc.origin {
            CurveSource::Schema { index, .. } => {
                schemata.insert(index);
            }
            CurveSource::Printed => printed += 1,
            CurveSource::Search => continue,
        }
        n += 1;
        if let Err(e) = r {
            bad.push(format!("{}: {e}", sc.name));
        }
    }
    outcome(
        bad.is_empty() && schemata.len() == 5 && printed == 4,
        format!("{} schemata, {printed} S9 curves, {}/{n} certificates; failures: {}", schemata.len(), n - bad.len(), list(&bad)),
    )
}

fn c5() -> Outcome {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    let c = symbolic_c();
    for name in ["S9", "E1", "E8", "E2", "E10", "E3'"] {
        let sys = get_system(name).unwrap();
        let f = sys.parameterized_casimir().unwrap();
        let (cls, want) = stackel_target(name).unwrap();
        let free = stackel_free(&f, &c).unwrap();
        let got = stackel_post(&free, &stackel_post_step(name).unwrap()).unwrap();
        if !got.equals(&want) {
            bad.push(format!("{name} {cls}"));
            if name == "E2" {
                let (relabeled, _) = quadalg::catalog::stackel_reproduce(name).unwrap();
                notes.push(format!("E2 matches after relabeling c14,c24,c34: {}", relabeled.equals(&want)));
            }
        }
    }
    outcome(bad.is_empty(), format!("{}/6 formulas exact; mismatches: {}; {}", 6 - bad.len(), list(&bad), notes.join("; ")))
}

fn gaussian(rng: &mut ChaCha8Rng) -> FieldElem {
    &fe(rng.gen_range(-3..=3)) + &(&FieldElem::i() * &fe(rng.gen_range(-3..=3)))
}

fn random_g(rng: &mut ChaCha8Rng) -> Mat3 {
    loop {
        let mut r: [[FieldElem; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| gaussian(rng)));
        r[2][0] = FieldElem::zero();
        r[2][1] = FieldElem::zero();
        let m = Mat3::from_rows(r);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Up to three in-domain parameter assignments per label, drawn from a fixed value pool.
fn template_samples(l: Label) -> Vec<BTreeMap<String, FieldElem>> {
    let i = FieldElem::i();
    let pool = [
        fe(0),
        fe(1),
        fe(-1),
        fe(2),
        FieldElem::frac(1, 2),
        i.clone(),
        -i.clone(),
        &fe(1) + &i,
        &fe(3) * &i,
        fe(-3),
    ];
    let names = l.params();
    let mut out = Vec::new();
    let k = names.len();
    let total = pool.len().pow(k as u32);
    for idx in 0..total {
        let mut rest = idx;
        let mut p = BTreeMap::new();
        for n in names {
            p.insert(n.to_string(), pool[rest % pool.len()].clone());
            rest /= pool.len();
        }
        if in_domain(l, &p) {
            out.push(p);
        }
        if out.len() == 3 {
            break;
        }
    }
    out
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mats: Vec<Mat3> = (0..100).map(|_| random_g(&mut rng)).collect();
    let mut bad = Vec::new();
    for (node, m) in representatives() {
        let f = m.casimir();
        let c = match canonicalize(&f) {
            Ok(c) => c,
            Err(e) => {
                bad.push(format!("{node} ({e})"));
                continue;
            }
        };
        let moved = mats.iter().filter(|a| canonicalize(&g_action(a, &f).unwrap()).ok().as_ref() != Some(&c)).count();
        if moved > 0 {
            bad.push(format!("{node} ({moved}/100 matrices change the form)"));
        }
    }
    let mut idem = Vec::new();
    let mut samples = 0;
    for l in ALL_LABELS {
        for p in template_samples(l) {
            samples += 1;
            let t = template(l, &p);
            match canonicalize(&t) {
                Ok(CanonicalForm { label, ref params, .. }) if label == l && template(l, params) == t => {}
                Ok(c) => {
                    let ps: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    idem.push(format!("{l}[{}] -> {}", ps.join(","), c.label));
                }
                Err(e) => idem.push(format!("{l} ({e})")),
            }
        }
    }
    outcome(
        bad.is_empty() && idem.is_empty(),
        format!(
            "G-invariance over 18 representatives x 100 matrices: failures {}; idempotence on {samples} template samples: failures {}",
            list(&bad),
            list(&idem)
        ),
    )
}

fn c7() -> Outcome {
    let mut bad = Vec::new();
    for n in ["form1", "form2", "form3", "form4"] {
        let a = builtin(n, &[]).unwrap();
        if validate_bocher(&a) != BocherKind::Special {
            bad.push(format!("{n} not special"));
        }
    }
    let s = builtin("special_1111_to_211", &[]).unwrap();
    if s.cone_error_order().is_some() || s.transpose().mul(&s) != quadalg::bocher::BocherMatrix::identity() {
        bad.push("special [1,1,1,1]->[2,1,1] has an error term".into());
    }
    let mut printed = Vec::new();
    let mut bases = 0;
    for n in builtin_names() {
        let a = builtin(n, &[]).unwrap();
        if validate_bocher(&a) == BocherKind::Invalid {
            printed.push(n.to_string());
            continue;
        }
        bases += 1;
        match contracted_basis(&a) {
            Ok(b) if b.len() == 6 && rank(&b.iter().map(|(_, op)| op.to_vec6()).collect::<Vec<_>>()) == 6 => {}
            Ok(b) => bad.push(format!("{n}: {} limits", b.len())),
            Err(e) => bad.push(format!("{n}: {e}")),
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "form1..form4 special, x.x exact, rank-6 bases for {bases} valid built-ins; failures: {}; literal printed variants validate invalid: {}",
            list(&bad),
            printed.join(", ")
        ),
    )
}

fn c8() -> Outcome {
    let h = builtin("H", &[]).unwrap();
    let mut bad = Vec::new();
    // A(ε^p)·B(ε^r) with m = p/r: H(ε)H(ε²) is m = 1/2, H(ε)H(ε³) is m = 1/3
    for (label, m) in [("H(e)H(e^2)", q(1, 2)), ("H(e)H(e^3)", q(1, 3))] {
        match compose(&h, &h, &m) {
            Ok(c) if validate_bocher(&c) == BocherKind::Special => {}
            Ok(c) => bad.push(format!("{label} {}", validate_bocher(&c))),
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    }
    let fa = flat_geometric_action(&builtin("recipe_1111_to_211", &[]).unwrap());
    let scaling = fa.as_ref().ok().and_then(|f| f.scaling());
    let half = FieldElem::frac(1, 2);
    let geo_ok = matches!(&scaling, Some((o, k)) if *o == qi(1) && &(k * k) == &half);
    if !geo_ok {
        bad.push(format!("recipe flat action {:?}", scaling.as_ref().map(|(o, k)| format!("e^{o} * {k}"))));
    }
    let kappa = scaling.map(|(_, k)| k.to_string()).unwrap_or_else(|| "-".into());
    outcome(bad.is_empty(), format!("compositions special; recipe gives x = kappa*eps*x' with kappa = {kappa} (|kappa|^2 = 1/2); failures: {}", list(&bad)))
}

fn c9() -> Outcome {
    let bounds = SearchBounds { max_exp: 3, max_denom: 2 };
    let e10 = get_system("E10").unwrap().free_casimir(None).unwrap();
    let e11 = get_system("E11").unwrap().free_casimir(None).unwrap();
    let absent = matches!(search_contraction(&e10, &e11, bounds), Ok(None));
    let (mut climbed, mut inconclusive) = (Vec::new(), Vec::new());
    let mut checked = 0;
    let mut seen = BTreeSet::new();
    for (sc, r) in builtin_curves() {
        let Ok(cert) = r else { continue };
        if !seen.insert((sc.source, sc.target)) || matches!(isomorphic(&cert.source, &cert.target), Ok(Some(_))) {
            continue;
        }
        checked += 1;
        let pair = format!("{} -> {}", sc.target, sc.source);
        match search_contraction(&cert.target, &cert.source, SearchBounds::default()) {
            Ok(None) => {}
            Ok(Some(_)) => climbed.push(pair),
            // the search could not canonicalize one end; fall back to the stratum ranks
            Err(e) => match stratum_obstruction(&cert.target, &cert.source) {
                Obstruction::Forbidden => inconclusive.push(format!("{pair} ({e}; stratum forbids it)")),
                Obstruction::Allowed => climbed.push(format!("{pair} ({e}; undecided)")),
            },
        }
    }
    outcome(
        absent && climbed.is_empty(),
        format!(
            "E10 -> E11 (|q| <= 3, denominators <= 2): {}; reverse searches (|q| <= 2) absent for {}/{checked} stored pairs; inconclusive search, excluded by strata: {}; not excluded: {}",
            if absent { "absent" } else { "FOUND" },
            checked - climbed.len(),
            list(&inconclusive),
            list(&climbed)
        ),
    )
}

fn c10() -> Outcome {
    let v = potential(LaplaceClass::C1111);
    let mut parts = Vec::new();
    let mut pass = true;
    for (label, matrix, target) in
        [("V211 via special matrix", "special_1111_to_211", LaplaceClass::C211), ("V31 via printed matrix", "v1111_to_v31", LaplaceClass::C31)]
    {
        let a = builtin(matrix, &[]).unwrap();
        let w = potential(target);
        let check = |bound: i64| -> Option<bool> {
            let map = common::derive_param_map(&v, &a, &w, bound)?;
            Some(potential_limit(&v, &a, &map).is_ok_and(|lim| same_on_cone(&lim, &w)))
        };
        match check(4) {
            Some(true) => parts.push(format!("{label}: exact")),
            r => {
                pass = false;
                let wider = check(8);
                parts.push(format!(
                    "{label}: {} with |p| <= 4; with |p| <= 8: {}",
                    if r.is_none() { "no parameter map" } else { "limit differs" },
                    match wider {
                        Some(true) => "exact",
                        Some(false) => "limit differs",
                        None => "no parameter map",
                    }
                ));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn c11() -> Outcome {
    let g = contraction_graph(None);
    let mut missing = Vec::new();
    for (sc, _) in builtin_curves() {
        if matches!(sc.origin, CurveSource::Search) || sc.source == sc.target {
            continue;
        }
        if !g.has_edge(sc.source, sc.target) && !missing.contains(&format!("{} -> {}", sc.source, sc.target)) {
            missing.push(format!("{} -> {}", sc.source, sc.target));
        }
    }
    let upward: Vec<String> = g.upward_edges().iter().map(|e| format!("{} -> {}", e.from, e.to)).collect();
    let deterministic = g.to_dot() == contraction_graph(None).to_dot();
    outcome(
        missing.is_empty() && upward.is_empty() && deterministic,
        format!(
            "{} edges; listed contractions missing: {}; upward edges: {}; DOT deterministic: {deterministic}; reference arrows without a stored certificate: {}",
            g.edges.len(),
            list(&missing),
            list(&upward),
            g.missing_diagram_edges().len()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 11] = [
        ("canonical forms, constant curvature", c1, 10),
        ("canonical forms, Darboux", c2, 10),
        ("coincidence groups and quotient", c3, 10),
        ("explicit contractions", c4, 30),
        ("Staeckel class formulas", c5, 60),
        ("G-invariance and idempotence", c6, 300),
        ("Bocher validation", c7, 60),
        ("composition and flat action", c8, 30),
        ("non-contraction evidence", c9, 600),
        ("potential limits", c10, 300),
        ("contraction graph", c11, 10),
    ];
    let mut failed = 0;
    for (k, (name, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let dt = t.elapsed();
        let over = dt > Duration::from_secs(*budget);
        if !o.pass || over {
            failed += 1;
        }
        println!(
            "C{:<2} {} {name}: {} [{:.1}s, budget {budget}s{}]",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            dt.as_secs_f64(),
            if over { ", OVER BUDGET" } else { "" }
        );
    }
    println!("acceptance: {}/11 criteria pass", 11 - failed);
    if failed > 0 && std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
