use crate::exactfield::FieldElem;
use crate::symbolic::{MultiPoly, RationalFn};

use super::{Casimir, QalgError};

/// Potential parameters of a parameterized Casimir, following X1, X2, X3.
pub const PARAM_VARS: [&str; 4] = ["a1", "a2", "a3", "a4"];

pub fn c_var(j: usize, k: usize) -> String {
    format!("c{j}{k}")
}

/// X1, X2, X3 followed by c11..c44: the ring of Stäckel-transformed free Casimirs.
pub fn stackel_ring() -> Vec<String> {
    let mut v: Vec<String> = ["X1", "X2", "X3"].iter().map(|s| s.to_string()).collect();
    for j in 1..=4 {
        for k in 1..=4 {
            v.push(c_var(j, k));
        }
    }
    v
}

fn work_ring() -> Vec<String> {
    let mut v: Vec<String> = ["X1", "X2", "X3", "a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    v.extend(stackel_ring().into_iter().skip(3));
    v
}

/// The generic transform matrix (c_jk) with symbolic entries in the Stäckel ring.
pub fn symbolic_c() -> Vec<Vec<MultiPoly>> {
    let ring = stackel_ring();
    let z = MultiPoly::with_vars(ring.clone());
    (1..=4)
        .map(|j| (1..=4).map(|k| z.var_like(ring.iter().position(|v| *v == c_var(j, k)).unwrap())).collect())
        .collect()
}

fn det4(m: &[Vec<MultiPoly>]) -> MultiPoly {
    // Laplace expansion along the first row.
    fn det(m: &[Vec<MultiPoly>]) -> MultiPoly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = m[0][0].zero_like();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<MultiPoly>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
            let t = m[0][j].mul(&det(&minor));
            acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }
    det(m)
}

/// Stäckel transform of a parameterized Casimir (ring X1, X2, X3, a1..a4) by the
/// matrix C, whose entries live in the Stäckel ring (constants or c_jk symbols):
/// a_j ↦ Σ c_jk b_k; then H ↦ −b4 together with b4 ↦ −H; then every b_k ↦ 0.
/// The result lives in the Stäckel ring.
pub fn stackel_free(f: &Casimir, c: &[Vec<MultiPoly>]) -> Result<MultiPoly, QalgError> {
    if c.len() != 4 || c.iter().any(|r| r.len() != 4) {
        return Err(QalgError::Parse("Stäckel matrix must be 4×4".into()));
    }
    if det4(c).is_zero() {
        return Err(QalgError::SingularTransform);
    }
    let ring = work_ring();
    let sring = stackel_ring();
    let z = MultiPoly::with_vars(ring.clone());
    let var = |name: &str| z.var_like(ring.iter().position(|v| v == name).unwrap());
    if f.form.vars().iter().any(|v| !ring[..7].contains(v)) {
        return Err(QalgError::Parse("parameterized Casimir may only involve a1..a4".into()));
    }
    let f0 = f.form.embed(&ring);

    // 1) a_j = Σ c_jk b_k
    let step1: Vec<MultiPoly> = ring
        .iter()
        .map(|v| match PARAM_VARS.iter().position(|p| p == v) {
            Some(j) => {
                let mut e = z.clone();
                for k in 0..4 {
                    e = e.add(&c[j][k].embed(&ring).mul(&var(&format!("b{}", k + 1))));
                }
                e
            }
            None => var(v),
        })
        .collect();
    let f1 = f0.compose(&step1)?;
    // 2) H ↦ −b4, b4 ↦ −H, simultaneously
    let step2: Vec<MultiPoly> = ring
        .iter()
        .map(|v| match v.as_str() {
            "X3" => var("b4").neg(),
            "b4" => var("X3").neg(),
            _ => var(v),
        })
        .collect();
    let f2 = f1.compose(&step2)?;
    // 3) b_k = 0
    let f3 = f2.kill(&["b1", "b2", "b3", "b4"]);
    Ok(f3.restrict(&sring))
}

/// A final affine change L_i ↦ Σ_j m_ij X_j (with X3 = H fixed), coefficients
/// rational in the c_jk.
#[derive(Clone, Debug)]
pub struct PostStep {
    pub l1: [RationalFn; 3],
    pub l2: [RationalFn; 3],
}

impl PostStep {
    pub fn identity() -> Self {
        let ring = stackel_ring();
        let z = MultiPoly::with_vars(ring);
        let k = |c: i64| RationalFn::poly(z.constant_like(FieldElem::from_int(c)));
        PostStep { l1: [k(1), k(0), k(0)], l2: [k(0), k(1), k(0)] }
    }

    /// L1 ↦ X1 + s1·H, L2 ↦ X2 + s2·H.
    pub fn shift(s1: RationalFn, s2: RationalFn) -> Self {
        let mut p = Self::identity();
        p.l1[2] = s1;
        p.l2[2] = s2;
        p
    }
}

/// Apply a post-step to a Stäckel-transformed free Casimir. The result is returned as a
/// rational function in the Stäckel ring (denominators come from the shift coefficients).
pub fn stackel_post(f: &MultiPoly, step: &PostStep) -> Result<RationalFn, QalgError> {
    let ring = stackel_ring();
    let z = MultiPoly::with_vars(ring.clone());
    let all: Vec<&RationalFn> = step.l1.iter().chain(step.l2.iter()).collect();
    // common denominator: product of the distinct denominators
    let mut dens: Vec<MultiPoly> = Vec::new();
    for r in &all {
        if !dens.iter().any(|d| *d == r.den) {
            dens.push(r.den.clone());
        }
    }
    let d = dens.iter().fold(z.constant_like(FieldElem::one()), |acc, x| acc.mul(x));
    let scaled = |r: &RationalFn| r.num.mul(&d).div_exact(&r.den).expect("denominator divides the common one");
    let form = |row: &[RationalFn; 3]| {
        let mut e = z.clone();
        for (j, r) in row.iter().enumerate() {
            e = e.add(&scaled(r).mul(&z.var_like(j)));
        }
        e
    };
    let mut images: Vec<MultiPoly> = (0..ring.len()).map(|k| z.var_like(k)).collect();
    images[0] = form(&step.l1);
    images[1] = form(&step.l2);
    images[2] = z.var_like(2).mul(&d);
    // homogeneity of degree 3 in (X1, X2, H): F(L/d) = F(d·L')/d³
    let g = f.compose(&images)?;
    Ok(RationalFn::new(g, d.pow(3))?)
}
