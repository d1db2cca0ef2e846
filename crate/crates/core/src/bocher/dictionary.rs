use super::VectorFieldOp;
use crate::exactfield::{solve, FieldElem};

pub const FLAT_NAMES: [&str; 6] = ["P1", "P2", "J", "D", "K1", "K2"];
pub const SPHERE_NAMES: [&str; 6] = ["J12", "J31", "J23", "p1", "p2", "p3"];

/// Flat-space and 2-sphere conformal generators written in the L_jk.
#[derive(Debug, Clone, Copy, Default)]
pub struct GeneratorDictionary;

fn l(j: usize, k: usize) -> VectorFieldOp {
    VectorFieldOp::l(j - 1, k - 1)
}

fn plus_i(a: VectorFieldOp, b: VectorFieldOp, sign: i64) -> VectorFieldOp {
    a.add(&b.scale(&(&FieldElem::i() * &FieldElem::from_int(sign))))
}

impl GeneratorDictionary {
    /// P_j = L_j3 + iL_j4, D = iL34, J = L12, K_j = L_j3 − iL_j4.
    pub fn flat(&self, name: &str) -> Option<VectorFieldOp> {
        Some(match name {
            "P1" => plus_i(l(1, 3), l(1, 4), 1),
            "P2" => plus_i(l(2, 3), l(2, 4), 1),
            "J" => l(1, 2),
            "D" => l(3, 4).scale(&FieldElem::i()),
            "K1" => plus_i(l(1, 3), l(1, 4), -1),
            "K2" => plus_i(l(2, 3), l(2, 4), -1),
            _ => return None,
        })
    }

    /// J_jk = L_jk on the sphere, and p_{s_j} = i L_j4 (from L_j4 = −i p_{s_j}).
    pub fn sphere(&self, name: &str) -> Option<VectorFieldOp> {
        let i = FieldElem::i();
        Some(match name {
            "J12" => l(1, 2),
            "J31" => l(1, 3).scale(&-FieldElem::one()),
            "J23" => l(2, 3),
            "p1" => l(1, 4).scale(&i),
            "p2" => l(2, 4).scale(&i),
            "p3" => l(3, 4).scale(&i),
            _ => return None,
        })
    }

    /// Coordinates of an element of so(4,C) in the basis P1, P2, J, D, K1, K2.
    pub fn decompose_flat(&self, op: &VectorFieldOp) -> Option<Vec<FieldElem>> {
        if !op.is_antisymmetric() {
            return None;
        }
        let cols: Vec<Vec<FieldElem>> = FLAT_NAMES.iter().map(|n| self.flat(n).unwrap().to_vec6()).collect();
        let system: Vec<Vec<FieldElem>> = (0..6).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        solve(&system, &op.to_vec6())
    }

    pub fn compose_flat(&self, coords: &[FieldElem]) -> VectorFieldOp {
        FLAT_NAMES
            .iter()
            .zip(coords)
            .fold(VectorFieldOp::zero(), |acc, (n, c)| acc.add(&self.flat(n).unwrap().scale(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_round_trip() {
        let d = GeneratorDictionary;
        for (k, n) in FLAT_NAMES.iter().enumerate() {
            let c = d.decompose_flat(&d.flat(n).unwrap()).unwrap();
            for (j, x) in c.iter().enumerate() {
                assert_eq!(x.is_zero(), j != k, "{n}");
            }
        }
    }

    #[test]
    fn sphere_momenta() {
        let d = GeneratorDictionary;
        // L_j4 = −i p_{s_j}
        let p1 = d.sphere("p1").unwrap();
        assert_eq!(p1.scale(&-FieldElem::i()), VectorFieldOp::l(0, 3));
        assert_eq!(d.sphere("J31").unwrap(), VectorFieldOp::l(2, 0));
    }
}
