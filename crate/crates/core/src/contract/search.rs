use super::{normalizing_witness, orbit_dimension, verify_contraction, Certificate, ContractError};
use crate::canon::{canonicalize, isomorphic, omega, CanonError};
use crate::exactfield::{rat, FieldElem, Q};
use crate::qalg::{g_action, stratum, Casimir, CurveMat, Mat3};
use crate::symbolic::EpsSeries;
use num_traits::Signed;
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};

/// Exponents q = n/d with |q| ≤ max_exp and 1 ≤ d ≤ max_denom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_exp: i64,
    pub max_denom: i64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_exp: 2, max_denom: 2 }
    }
}

fn exponents(b: SearchBounds) -> Vec<Q> {
    let mut v: Vec<Q> = Vec::new();
    for d in 1..=b.max_denom.max(1) {
        for n in -b.max_exp * d..=b.max_exp * d {
            v.push(rat(n, d));
        }
    }
    v.sort();
    v.dedup();
    v
}

/// Constant part of a candidate curve: a translation after a GL2 block.
fn constants() -> Vec<Mat3> {
    let fe = FieldElem::from_int;
    let mut blocks: Vec<Mat3> = omega().iter().map(|m| Mat3::block(m.map(|r| r.map(fe)))).collect();
    let ks = [fe(1), fe(-1), fe(2), fe(-2), FieldElem::i(), -FieldElem::i()];
    for k in &ks {
        blocks.push(Mat3::block([[fe(1), fe(0)], [k.clone(), fe(1)]]));
        blocks.push(Mat3::block([[fe(1), k.clone()], [fe(0), fe(1)]]));
    }
    let mut out = Vec::new();
    for b in &blocks {
        for v1 in -1..=1 {
            for v2 in -1..=1 {
                out.push(Mat3::translation(fe(v1), fe(v2)).mul(b));
            }
        }
    }
    out
}

/// Terms of P surviving in the limit of diag(ε^p)·P, as a bitmask over P's terms; None when the
/// limit diverges. With p = n/D the coefficient of X^m carries ε^((2(n1+n2) − n·m)/D).
fn face_mask(n: &[i64; 3], monos: &[[i64; 3]]) -> Option<u32> {
    let shift = 2 * (n[0] + n[1]);
    let mut mask = 0u32;
    for (k, m) in monos.iter().enumerate() {
        let w = shift - n[0] * m[0] - n[1] * m[1] - n[2] * m[2];
        if w < 0 {
            return None;
        }
        if w == 0 {
            mask |= 1 << k;
        }
    }
    Some(mask)
}

fn exponent_vectors(f: &Casimir) -> Vec<[i64; 3]> {
    f.form.terms().map(|(m, _)| [m[0] as i64, m[1] as i64, m[2] as i64]).collect()
}

fn face(f: &Casimir, mask: u32) -> Casimir {
    let mut out = f.form.zero_like();
    for (k, (m, c)) in f.form.terms().enumerate() {
        if mask & (1 << k) != 0 {
            out.add_term(m.clone(), c.clone());
        }
    }
    Casimir::new(out)
}

fn curve_of(p: &[Q; 3], c: &Mat3) -> CurveMat {
    let d = CurveMat(std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { EpsSeries::monomial(FieldElem::one(), p[i].clone()) } else { EpsSeries::zero() })
    }));
    d.mul(&c.to_curve())
}

/// Bounded search over curves diag(ε^p1, ε^p2, ε^p3)·C·W, with W the normalizing witness
/// of the source and C from a fixed set of shears, Ω elements and unit translations. Candidates
/// are visited by total |p| and then lexicographically; the first verified one is returned.
/// `None` is not a proof that no contraction exists.
pub fn search_contraction(
    src: &Casimir,
    tgt: &Casimir,
    bounds: SearchBounds,
) -> Result<Option<Certificate>, ContractError> {
    match isomorphic(src, tgt) {
        Ok(Some(w)) => return verify_contraction(&w.to_curve(), src, tgt).map(Some),
        Ok(None) | Err(CanonError::RootsOutsideField) => {}
        Err(e) => return Err(e.into()),
    }
    let ws = normalizing_witness(src)?;
    let want = canonicalize(tgt)?;
    let want_stratum = stratum(tgt);
    let want_dim = orbit_dimension(tgt);
    let cs: Vec<(Mat3, Casimir)> = constants()
        .into_iter()
        .map(|c| {
            let m = c.mul(&ws);
            let f = g_action(&m, src).expect("invertible constant");
            (m, f)
        })
        .collect();
    let ex = exponents(bounds);
    let mut triples: Vec<[Q; 3]> = Vec::new();
    for a in &ex {
        for b in &ex {
            for c in &ex {
                triples.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    let weight = |p: &[Q; 3]| p[0].abs() + p[1].abs() + p[2].abs();
    triples.sort_by(|x, y| weight(x).cmp(&weight(y)).then_with(|| x.cmp(y)));

    // Every limit is a face of some C·W·F; canonicalize each distinct face once.
    let denom: i64 = (1..=bounds.max_denom.max(1)).fold(1, num_integer::lcm);
    let scaled: Vec<[i64; 3]> = triples
        .iter()
        .map(|p| p.clone().map(|q| (q * rat(denom, 1)).to_integer().try_into().expect("small exponent")))
        .collect();
    let expv: Vec<Vec<[i64; 3]>> = cs.iter().map(|(_, f)| exponent_vectors(f)).collect();
    let masks: Vec<Vec<Option<u32>>> =
        scaled.par_iter().map(|n| expv.iter().map(|e| face_mask(n, e)).collect()).collect();
    let mut faces: BTreeSet<(usize, u32)> = BTreeSet::new();
    for row in &masks {
        for (ci, m) in row.iter().enumerate() {
            if let Some(m) = m {
                faces.insert((ci, *m));
            }
        }
    }
    let mut polys: HashMap<Casimir, bool> = HashMap::new();
    let faces: Vec<((usize, u32), Casimir)> = faces
        .into_iter()
        .map(|(ci, m)| {
            let lim = face(&cs[ci].1, m);
            polys.insert(lim.clone(), false);
            ((ci, m), lim)
        })
        .collect();
    let distinct: Vec<Casimir> = polys.keys().cloned().collect();
    let matches: Vec<bool> = distinct
        .par_iter()
        .map(|lim| {
            stratum(lim) == want_stratum
                && orbit_dimension(lim) == want_dim
                && canonicalize(lim).is_ok_and(|c| c == want)
        })
        .collect();
    for (lim, ok) in distinct.into_iter().zip(matches) {
        polys.insert(lim, ok);
    }
    let good: BTreeSet<(usize, u32)> = faces.into_iter().filter(|(_, lim)| polys[lim]).map(|(k, _)| k).collect();
    let hit = masks.iter().enumerate().find_map(|(ti, row)| {
        row.iter()
            .enumerate()
            .find(|(ci, m)| m.is_some_and(|m| good.contains(&(*ci, m))))
            .map(|(ci, _)| curve_of(&triples[ti], &cs[ci].0))
    });
    match hit {
        Some(curve) => verify_contraction(&curve, src, tgt).map(Some),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_system;

    fn free(n: &str) -> Casimir {
        get_system(n).unwrap().free_casimir(None).unwrap()
    }

    #[test]
    fn finds_s9_to_e20() {
        let b = SearchBounds { max_exp: 2, max_denom: 2 };
        let c = search_contraction(&free("S9"), &Casimir::parse("X3*X1*X2").unwrap(), b).unwrap().unwrap();
        assert!(c.reverify());
    }

    #[test]
    fn identity_when_equal() {
        let c = search_contraction(&free("E1"), &free("E1"), SearchBounds::default()).unwrap().unwrap();
        assert_eq!(c.curve, CurveMat::identity());
        assert_eq!(c.limit, free("E1"));
    }

    #[test]
    fn e10_does_not_reach_e11() {
        let b = SearchBounds { max_exp: 3, max_denom: 2 };
        assert!(search_contraction(&free("E10"), &free("E11"), b).unwrap().is_none());
    }
}
