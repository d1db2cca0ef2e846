use super::search::{search_contraction, SearchBounds};
use super::{normalizing_witness, stratum_obstruction, verify_contraction, Certificate, ContractError, Obstruction};
use crate::canon::canonicalize;
use crate::catalog::{representative, representatives, DIAGRAM_EDGES};
use crate::exactfield::{rat, FieldElem, Q};
use crate::qalg::{stratum, Casimir, CurveMat, Mat3};
use crate::symbolic::{qi, EpsSeries};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum CurveSource {
    /// An explicit curve, used exactly as printed.
    Printed,
    /// One of the five family matrices M(ε), composed as M(ε)·diag(1, 1, ε^−p)·W with W the
    /// normalizing witness of the source.
    Schema { index: usize, p: i64 },
    /// Found by the bounded search and stored.
    Search,
}

#[derive(Debug, Clone)]
pub struct StoredCurve {
    pub name: String,
    pub source: &'static str,
    pub target: &'static str,
    pub origin: CurveSource,
    pub curve: CurveMat,
}

fn m(c: FieldElem, q: Q) -> EpsSeries {
    EpsSeries::monomial(c, q)
}

fn fe(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

fn curve(rows: [[EpsSeries; 3]; 3]) -> CurveMat {
    CurveMat(rows)
}

fn z() -> EpsSeries {
    EpsSeries::zero()
}

fn node_casimir(node: &str) -> Casimir {
    representative(node).expect("diagram node").casimir()
}

/// The five family matrices, as printed (before the outer inverse).
fn schema_matrix(k: usize) -> CurveMat {
    let e = |n: i64| m(fe(1), qi(n));
    let inv_sqrt2 = FieldElem::sqrt2().inv().unwrap();
    let printed = match k {
        1 | 2 => curve([[e(0), z(), z()], [z(), e(0), z()], [z(), z(), e(1)]]),
        3 => curve([[e(0), z(), z()], [e(-2), e(-1), z()], [z(), z(), e(-3)]]),
        4 => curve([
            [e(-2), m(inv_sqrt2.clone(), qi(-1)), z()],
            [e(-2), m(-inv_sqrt2, qi(-1)), z()],
            [z(), z(), e(0)],
        ]),
        5 => curve([[e(-1), z(), z()], [z(), e(0), z()], [z(), z(), e(-3)]]),
        _ => panic!("schema index 1..=5"),
    };
    printed.inverse().expect("monomial determinant")
}

/// Sources and target of each family matrix.
pub const SCHEMATA: [(&[&str], &str); 5] = [
    (&["D3D", "D2C", "D2B", "E16", "E1"], "E17"),
    (&["D1A(b!=0)", "D1A(b=0)", "E2"], "E10"),
    (&["D3D", "D2C", "D2B", "E16", "E1", "E17"], "E10"),
    (&["S9", "S7", "D4C(b!=0)", "D4C(b=0)"], "E10"),
    (&["S9", "S7", "D4C(b!=0)", "D4C(b=0)"], "E17"),
];

/// Largest H-rescaling exponent tried when instantiating a family matrix.
const MAX_H_SHIFT: i64 = 6;

fn schema_curve(k: usize, src: &'static str, tgt: &'static str) -> (StoredCurve, Result<Certificate, ContractError>) {
    let f = node_casimir(src);
    let g = node_casimir(tgt);
    let w = normalizing_witness(&f);
    let build = |p: i64, w: &Mat3| {
        let h = CurveMat::diag_eps([qi(0), qi(0), qi(-p)]);
        schema_matrix(k).mul(&h).mul(&w.to_curve())
    };
    let name = format!("schema{k}: {src} -> {tgt}");
    let w = match w {
        Ok(w) => w,
        Err(e) => {
            let sc = StoredCurve { name, source: src, target: tgt, origin: CurveSource::Schema { index: k, p: 0 }, curve: schema_matrix(k) };
            return (sc, Err(e));
        }
    };
    let mut first_err = None;
    for p in 0..=MAX_H_SHIFT {
        let c = build(p, &w);
        match verify_contraction(&c, &f, &g) {
            Ok(cert) => {
                let sc = StoredCurve { name, source: src, target: tgt, origin: CurveSource::Schema { index: k, p }, curve: c };
                return (sc, Ok(cert));
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    let sc = StoredCurve { name, source: src, target: tgt, origin: CurveSource::Schema { index: k, p: 0 }, curve: build(0, &w) };
    (sc, Err(first_err.unwrap()))
}

/// The explicit curves for S9, in the order E20, E1, E11, E2.
pub fn s9_printed_curves() -> Vec<(&'static str, CurveMat)> {
    let i = FieldElem::i;
    let e = |c: FieldElem, n: i64| m(c, qi(n));
    let to_e20 = CurveMat::diag_eps([qi(1), qi(1), qi(2)]);
    let to_e1 = curve([[e(fe(1), -1), z(), e(-i(), -1)], [z(), e(fe(1), 0), z()], [z(), z(), e(&fe(2) * &i(), -1)]]);
    let to_e11 = curve([
        [e(fe(1), -1), z(), z()],
        [z(), e(fe(1), -1), m(fe(-1), rat(-3, 2))],
        [z(), z(), e(fe(1), 0)],
    ]);
    let s3 = FieldElem::sqrt3();
    let k13 = &(&fe(128) * &i()) / &s3;
    let mut e13 = e(fe(64), 2);
    e13 = e13.add(&e(k13, 1));
    let to_e2 = curve([
        [e(fe(64), 2), e(fe(64), 2), e13],
        [e(&fe(8) * &i(), 1), e(&fe(-8) * &i(), 1), z()],
        [z(), z(), e(&(&fe(-128) * &i()) * &s3, 1)],
    ]);
    vec![
        ("E20", to_e20),
        ("E1", to_e1.inverse().unwrap()),
        ("E11", to_e11.inverse().unwrap()),
        ("E2", to_e2),
    ]
}

/// S9 → E2 as found by the bounded search (|q| ≤ 2, integer exponents):
/// diag(ε, ε², ε²)·T(−1, −1)·[[1, −1], [0, 1]]·W, with W the canonicalization witness of S9.
pub fn s9_to_e2_search_curve() -> CurveMat {
    let w = canonicalize(&node_casimir("S9")).expect("S9 canonicalizes").witness;
    let c = Mat3::translation(fe(-1), fe(-1)).mul(&Mat3::block([[fe(1), fe(-1)], [fe(0), fe(1)]]));
    CurveMat::diag_eps([qi(1), qi(2), qi(2)]).mul(&c.mul(&w).to_curve())
}

/// Every stored curve with its verification outcome.
pub fn builtin_curves() -> Vec<(StoredCurve, Result<Certificate, ContractError>)> {
    let mut jobs: Vec<(usize, &'static str, &'static str)> = Vec::new();
    for (k, (srcs, tgt)) in SCHEMATA.iter().enumerate() {
        for s in srcs.iter() {
            jobs.push((k + 1, s, tgt));
        }
    }
    let mut out: Vec<_> = jobs.par_iter().map(|&(k, s, t)| schema_curve(k, s, t)).collect();
    let s9 = node_casimir("S9");
    for (tgt, c) in s9_printed_curves() {
        let r = verify_contraction(&c, &s9, &node_casimir(tgt));
        let sc = StoredCurve { name: format!("printed: S9 -> {tgt}"), source: "S9", target: tgt, origin: CurveSource::Printed, curve: c };
        out.push((sc, r));
    }
    let c = s9_to_e2_search_curve();
    let r = verify_contraction(&c, &s9, &node_casimir("E2"));
    out.push((
        StoredCurve { name: "search: S9 -> E2".into(), source: "S9", target: "E2", origin: CurveSource::Search, curve: c },
        r,
    ));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub via: String,
}

#[derive(Debug, Clone)]
pub struct ContractionGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
    pub certificates: Vec<Certificate>,
}

/// Graph over the eighteen representative algebras. Edges come from verified stored curves and,
/// when `search` is given, from the bounded search between pairs without an obstruction.
pub fn contraction_graph(search: Option<SearchBounds>) -> ContractionGraph {
    let nodes: Vec<String> = representatives().iter().map(|(n, _)| n.to_string()).collect();
    let mut edges: Vec<Edge> = Vec::new();
    let mut certificates = Vec::new();
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
    for (sc, r) in builtin_curves() {
        if let Ok(cert) = r {
            if sc.source != sc.target && seen.insert((sc.source.to_string(), sc.target.to_string())) {
                edges.push(Edge { from: sc.source.into(), to: sc.target.into(), via: sc.name });
                certificates.push(cert);
            }
        }
    }
    if let Some(b) = search {
        let pairs: Vec<(String, String)> = nodes
            .iter()
            .flat_map(|a| nodes.iter().map(move |c| (a.clone(), c.clone())))
            .filter(|(a, c)| a != c && !seen.contains(&(a.clone(), c.clone())))
            .collect();
        let found: Vec<(String, String, Certificate)> = pairs
            .par_iter()
            .filter_map(|(a, c)| {
                let (f, g) = (node_casimir(a), node_casimir(c));
                if stratum_obstruction(&f, &g) == Obstruction::Forbidden {
                    return None;
                }
                search_contraction(&f, &g, b).ok().flatten().map(|cert| (a.clone(), c.clone(), cert))
            })
            .collect();
        for (a, c, cert) in found {
            // isomorphic pairs come back with constant curves; those are not edges
            if canonicalize(&cert.source).ok() == canonicalize(&cert.target).ok() {
                continue;
            }
            edges.push(Edge { from: a.clone(), to: c.clone(), via: "search".into() });
            certificates.push(cert);
        }
    }
    let order = |n: &str| nodes.iter().position(|x| x == n).unwrap();
    let mut idx: Vec<usize> = (0..edges.len()).collect();
    idx.sort_by_key(|&k| (order(&edges[k].from), order(&edges[k].to)));
    let edges2 = idx.iter().map(|&k| edges[k].clone()).collect();
    let certs2 = idx.iter().map(|&k| certificates[k].clone()).collect();
    ContractionGraph { nodes, edges: edges2, certificates: certs2 }
}

impl ContractionGraph {
    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        self.edges.iter().any(|e| e.from == from && e.to == to)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph contractions {\n");
        for n in &self.nodes {
            let _ = writeln!(s, "  \"{n}\";");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.from, e.to, e.via);
        }
        s.push_str("}\n");
        s
    }

    /// Edges that climb the stratum hierarchy (there should be none).
    pub fn upward_edges(&self) -> Vec<&Edge> {
        self.edges
            .iter()
            .filter(|e| stratum(&node_casimir(&e.to)).rank() < stratum(&node_casimir(&e.from)).rank())
            .collect()
    }

    /// Reference arrows without a certificate in this graph.
    pub fn missing_diagram_edges(&self) -> Vec<(&'static str, &'static str)> {
        DIAGRAM_EDGES.iter().copied().filter(|(a, b)| !self.has_edge(a, b)).collect()
    }

    /// Certified edges that the diagram does not draw.
    pub fn extra_edges(&self) -> Vec<&Edge> {
        self.edges.iter().filter(|e| !DIAGRAM_EDGES.iter().any(|(a, b)| *a == e.from && *b == e.to)).collect()
    }
}
