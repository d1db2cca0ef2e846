//! Contractions of free quadratic algebras: exact verification along ε-curves in G,
//! orbit-closure obstructions, a bounded search, and the contraction graph.

mod graph;
mod search;

pub use graph::{builtin_curves, contraction_graph, ContractionGraph, CurveSource, Edge, StoredCurve};
pub use search::{search_contraction, SearchBounds};

use crate::canon::{canonicalize, leading_cubic_class, CanonError, CanonicalForm};
use crate::exactfield::{rank, FieldElem, Q};
use crate::qalg::{g_action_curve, stratum, Casimir, CurveMat, Mat3, QalgError};
use crate::symbolic::{eps_limit, SymError};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContractError {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("limit diverges (ε-order {order})")]
    DivergentLimit { order: Q },
    #[error("limit {limit} has canonical form {got}, target has {want}")]
    TargetMismatch { limit: String, got: String, want: String },
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Qalg(#[from] QalgError),
    #[error("malformed certificate: {0}")]
    Parse(String),
}

/// Evidence that `curve` contracts `source` to an algebra isomorphic to `target`.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub curve: CurveMat,
    pub source: Casimir,
    pub target: Casimir,
    pub limit: Casimir,
    pub canonical: CanonicalForm,
}

impl Certificate {
    /// Recompute the limit from scratch and compare it exactly with the stored one.
    pub fn reverify(&self) -> bool {
        match verify_contraction(&self.curve, &self.source, &self.target) {
            Ok(c) => c.limit == self.limit && c.canonical == self.canonical,
            Err(_) => false,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "curve": self.curve.to_json(),
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "limit": self.limit.to_json(),
            "canonical": self.canonical.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, ContractError> {
        let cas = |k: &str| Casimir::from_json(&v[k]).map_err(|e| ContractError::Parse(format!("{k}: {e}")));
        Ok(Certificate {
            curve: CurveMat::from_json(&v["curve"])?,
            source: cas("source")?,
            target: cas("target")?,
            limit: cas("limit")?,
            canonical: CanonicalForm::from_json(&v["canonical"]).map_err(ContractError::Parse)?,
        })
    }
}

pub fn validate_curve(curve: &CurveMat) -> Result<(), ContractError> {
    if !curve.0[2][0].is_zero() || !curve.0[2][1].is_zero() {
        return Err(ContractError::InvalidCurve("entries (3,1), (3,2) must vanish".into()));
    }
    if curve.det().is_zero() {
        return Err(ContractError::InvalidCurve("determinant vanishes identically".into()));
    }
    if curve.det().inv_monomial().is_none() {
        return Err(ContractError::InvalidCurve("determinant must be a single ε-monomial".into()));
    }
    Ok(())
}

/// Exact limit of A(ε)·F as ε → 0⁺.
pub fn curve_limit(curve: &CurveMat, src: &Casimir) -> Result<Casimir, ContractError> {
    validate_curve(curve)?;
    let s = g_action_curve(curve, src)?;
    match eps_limit(&s) {
        Ok(p) => Ok(Casimir::new(p)),
        Err(SymError::DivergentLimit { order }) => Err(ContractError::DivergentLimit { order }),
        Err(e) => Err(QalgError::from(e).into()),
    }
}

pub fn verify_contraction(curve: &CurveMat, src: &Casimir, tgt: &Casimir) -> Result<Certificate, ContractError> {
    let limit = curve_limit(curve, src)?;
    let got = canonicalize(&limit)?;
    let want = canonicalize(tgt)?;
    if got != want {
        return Err(ContractError::TargetMismatch {
            limit: limit.to_string(),
            got: got.to_string(),
            want: want.to_string(),
        });
    }
    Ok(Certificate { curve: curve.clone(), source: src.clone(), target: tgt.clone(), limit, canonical: got })
}

/// A constant W ∈ G bringing F to its canonical form, or, when that needs roots outside K,
/// at least bringing the leading part to its normal form.
pub fn normalizing_witness(f: &Casimir) -> Result<Mat3, ContractError> {
    match canonicalize(f) {
        Ok(c) => Ok(c.witness),
        Err(CanonError::RootsOutsideField) => Ok(leading_cubic_class(f)?.1),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Obstruction {
    Allowed,
    Forbidden,
}

/// Dimension of the G-orbit of F: rank of the infinitesimal action of the
/// seven-dimensional Lie algebra of G on the cubic forms.
pub fn orbit_dimension(f: &Casimir) -> usize {
    let p = &f.form;
    let monos: Vec<Vec<u32>> = (0..=3u32)
        .flat_map(|a| (0..=3 - a).map(move |b| vec![a, b, 3 - a - b]))
        .collect();
    let basis = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 2)];
    let rows: Vec<Vec<FieldElem>> = basis
        .iter()
        .map(|&(i, j)| {
            // d/dt exp(tE_ij)·F = 2 tr(E_ij restricted to the block)·F − x_j ∂_i F
            let mut v = p.derivative(i).mul(&p.var_like(j)).neg();
            if i == j && i < 2 {
                v = v.add(&p.scale(&FieldElem::from_int(2)));
            }
            monos.iter().map(|m| v.coeff(m)).collect()
        })
        .collect();
    rank(&rows)
}

/// Necessary condition for a contraction src → tgt: strata can only be descended, and within
/// one stratum a different orbit in the closure has strictly smaller dimension.
pub fn stratum_obstruction(src: &Casimir, tgt: &Casimir) -> Obstruction {
    let (s, t) = (stratum(src), stratum(tgt));
    if t.rank() < s.rank() {
        return Obstruction::Forbidden;
    }
    if s == t {
        let same_orbit = match (canonicalize(src), canonicalize(tgt)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        if !same_orbit && orbit_dimension(tgt) >= orbit_dimension(src) {
            return Obstruction::Forbidden;
        }
    }
    Obstruction::Allowed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_system;
    use crate::exactfield::rat;
    use crate::symbolic::{qi, EpsSeries};

    fn cas(s: &str) -> Casimir {
        Casimir::parse(s).unwrap()
    }

    fn free(n: &str) -> Casimir {
        get_system(n).unwrap().free_casimir(None).unwrap()
    }

    #[test]
    fn orbit_dimensions() {
        assert_eq!(orbit_dimension(&Casimir::zero()), 0);
        assert_eq!(orbit_dimension(&cas("X3^3")), 1);
        assert!(orbit_dimension(&free("S9")) > orbit_dimension(&free("E17")));
    }

    #[test]
    fn obstruction_examples() {
        assert_eq!(stratum_obstruction(&free("E17"), &free("S9")), Obstruction::Forbidden);
        assert_eq!(stratum_obstruction(&free("E10"), &free("E11")), Obstruction::Allowed);
        for n in ["S9", "E1", "E20", "D3A"] {
            assert_eq!(stratum_obstruction(&free(n), &Casimir::zero()), Obstruction::Allowed);
        }
    }

    #[test]
    fn s9_to_e20() {
        let c = CurveMat::diag_eps([qi(1), qi(1), qi(2)]);
        let cert = verify_contraction(&c, &free("S9"), &cas("X3*X1*X2")).unwrap();
        assert_eq!(cert.limit, cas("1/16*X3*X1*X2"));
        assert!(cert.reverify());
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert!(back.reverify());
    }

    #[test]
    fn divergent_and_mismatch() {
        let c = CurveMat::diag_eps([qi(-1), qi(0), qi(0)]);
        assert!(matches!(
            verify_contraction(&c, &free("S9"), &free("S9")),
            Err(ContractError::DivergentLimit { .. })
        ));
        let c = CurveMat::diag_eps([qi(1), qi(1), qi(2)]);
        assert!(matches!(
            verify_contraction(&c, &free("S9"), &free("E17")),
            Err(ContractError::TargetMismatch { .. })
        ));
        let mut bad = CurveMat::identity();
        bad.0[2][0] = EpsSeries::monomial(FieldElem::one(), rat(1, 2));
        assert!(matches!(curve_limit(&bad, &free("S9")), Err(ContractError::InvalidCurve(_))));
    }
}
