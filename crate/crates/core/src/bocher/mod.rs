//! Bôcher contractions of so(4,C): 4×4 Laurent matrices x = A(ε)·y acting on
//! tetraspherical coordinates, the induced limits of the generators L_jk, composition,
//! the built-in families, and the flat-space and potential limits they induce.

mod builtins;
mod dictionary;
mod geometry;

pub use builtins::{builtin, builtin_names};
pub use dictionary::{GeneratorDictionary, FLAT_NAMES, SPHERE_NAMES};
pub use geometry::{flat_geometric_action, potential_limit, same_on_cone, FlatAction, FlatComponent, ParamMap};

use crate::exactfield::{rank, solve, FieldElem, Q};
use crate::symbolic::{qi, EpsSeries, SymError};
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::Value;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BocherError {
    #[error("Bôcher matrices take integer ε-exponents only (found ε^{0})")]
    NonIntegerExponent(Q),
    #[error("matrix is not a Bôcher contraction")]
    InvalidMatrix,
    #[error("composition needs special inputs")]
    NotSpecial,
    #[error("the operator vanishes identically")]
    ZeroOperator,
    #[error("leading coefficient matrix is not antisymmetric")]
    NotInAlgebra,
    #[error("basis construction did not terminate after {0} reductions")]
    NonTermination(usize),
    #[error("unknown built-in {0:?}")]
    UnknownBuiltin(String),
    #[error("{0}")]
    BadParams(String),
    #[error("leading denominator x3 + i x4 vanishes identically")]
    DegenerateChart,
    #[error("potential diverges: the a{param} term has order {order}")]
    DivergentPotential { param: usize, order: Q },
    #[error("potential must be linear in a1..a4 over x1..x4")]
    NotLinear,
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("malformed input: {0}")]
    Parse(String),
}

/// x = A(ε)·y with A a 4×4 matrix of Laurent polynomials in ε.
#[derive(Clone, PartialEq, Eq)]
pub struct BocherMatrix([[EpsSeries; 4]; 4]);

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BocherKind {
    Special,
    General,
    Invalid,
}

impl fmt::Display for BocherKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BocherKind::Special => "special",
            BocherKind::General => "general",
            BocherKind::Invalid => "invalid",
        })
    }
}

type Grid = [[EpsSeries; 4]; 4];

fn zero_grid() -> Grid {
    std::array::from_fn(|_| std::array::from_fn(|_| EpsSeries::zero()))
}

fn min_order(g: &Grid) -> Option<Q> {
    g.iter().flatten().filter_map(|s| s.min_order()).min()
}

impl BocherMatrix {
    pub fn new(m: Grid) -> Result<Self, BocherError> {
        for s in m.iter().flatten() {
            if let Some((q, _)) = s.terms().find(|(q, _)| !q.is_integer()) {
                return Err(BocherError::NonIntegerExponent(q.clone()));
            }
        }
        Ok(BocherMatrix(m))
    }

    pub fn identity() -> Self {
        BocherMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { EpsSeries::one() } else { EpsSeries::zero() })
        }))
    }

    pub fn entries(&self) -> &Grid {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &EpsSeries {
        &self.0[i][j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        BocherMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).fold(EpsSeries::zero(), |s, k| s.add(&self.0[i][k].mul(&o.0[k][j]))))
        }))
    }

    pub fn transpose(&self) -> Self {
        BocherMatrix(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    /// A(ε^n).
    pub fn reparam(&self, n: i64) -> Self {
        let m = qi(n);
        BocherMatrix(self.0.clone().map(|r| r.map(|s| s.reparam(&m))))
    }

    fn minor3(&self, rows: [usize; 3], cols: [usize; 3]) -> EpsSeries {
        let m = |i: usize, j: usize| &self.0[rows[i]][cols[j]];
        let t = |a: usize, b: usize, c: usize| m(0, a).mul(m(1, b)).mul(m(2, c));
        t(0, 1, 2).add(&t(1, 2, 0)).add(&t(2, 0, 1)).sub(&t(0, 2, 1)).sub(&t(1, 0, 2)).sub(&t(2, 1, 0))
    }

    fn cofactor(&self, i: usize, j: usize) -> EpsSeries {
        let others = |k: usize| -> [usize; 3] {
            let v: Vec<usize> = (0..4).filter(|&x| x != k).collect();
            [v[0], v[1], v[2]]
        };
        let m = self.minor3(others(i), others(j));
        if (i + j) % 2 == 0 {
            m
        } else {
            m.neg()
        }
    }

    pub fn det(&self) -> EpsSeries {
        (0..4).fold(EpsSeries::zero(), |s, j| s.add(&self.0[0][j].mul(&self.cofactor(0, j))))
    }

    /// Exact inverse; needs a nonzero constant determinant.
    pub fn inverse(&self) -> Result<Self, BocherError> {
        let d = self.det();
        if !d.is_constant() || d.is_zero() {
            return Err(BocherError::InvalidMatrix);
        }
        let di = d.constant_term().inv().expect("nonzero determinant");
        Ok(BocherMatrix(std::array::from_fn(|i| std::array::from_fn(|j| self.cofactor(j, i).scale(&di)))))
    }

    /// Aᵀ·A − I: x·x − y·y as a quadratic form in y.
    pub fn cone_defect(&self) -> Grid {
        let mut g = self.transpose().mul(self).0;
        for (k, row) in g.iter_mut().enumerate() {
            row[k] = row[k].sub(&EpsSeries::one());
        }
        g
    }

    /// q with x·x = y·y + O(ε^q); None when x·x = y·y exactly.
    pub fn cone_error_order(&self) -> Option<Q> {
        min_order(&self.cone_defect())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|r| Value::Array(r.iter().map(|x| x.to_json()).collect())).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, BocherError> {
        let v = v.get("matrix").unwrap_or(v);
        let rows = v.as_array().filter(|r| r.len() == 4).ok_or_else(|| BocherError::Parse("4×4 matrix".into()))?;
        let mut g = zero_grid();
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_array().filter(|r| r.len() == 4).ok_or_else(|| BocherError::Parse("matrix row".into()))?;
            for (j, x) in r.iter().enumerate() {
                g[i][j] = EpsSeries::from_json(x)?;
            }
        }
        Self::new(g)
    }
}

impl fmt::Debug for BocherMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(|s| s.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn validate_bocher(a: &BocherMatrix) -> BocherKind {
    match a.cone_error_order() {
        None => BocherKind::Special,
        Some(q) => {
            let d = a.det();
            let unit = d.is_constant() && {
                let c = d.constant_term();
                c.is_one() || (-c).is_one()
            };
            if unit && q.is_positive() {
                BocherKind::General
            } else {
                BocherKind::Invalid
            }
        }
    }
}

pub fn validate_all(ms: &[BocherMatrix]) -> Vec<BocherKind> {
    ms.par_iter().map(validate_bocher).collect()
}

/// Σ F_kl y_k ∂_{y_l}; lies in so(4,C) iff F is antisymmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorFieldOp {
    pub coeffs: [[FieldElem; 4]; 4],
}

/// Index pairs (j<k) ordering the coordinates of so(4,C).
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl VectorFieldOp {
    pub fn zero() -> Self {
        VectorFieldOp { coeffs: std::array::from_fn(|_| std::array::from_fn(|_| FieldElem::zero())) }
    }

    /// L_jk = y_j ∂_k − y_k ∂_j (0-based indices).
    pub fn l(j: usize, k: usize) -> Self {
        let mut v = Self::zero();
        v.coeffs[j][k] = FieldElem::one();
        v.coeffs[k][j] = -FieldElem::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| (&self.coeffs[i][j] + &self.coeffs[j][i]).is_zero()))
    }

    pub fn add(&self, o: &Self) -> Self {
        VectorFieldOp { coeffs: std::array::from_fn(|i| std::array::from_fn(|j| &self.coeffs[i][j] + &o.coeffs[i][j])) }
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        VectorFieldOp { coeffs: self.coeffs.clone().map(|r| r.map(|x| &x * c)) }
    }

    /// Coordinates b_jk in the basis L_jk, j < k.
    pub fn to_vec6(&self) -> Vec<FieldElem> {
        PAIRS.iter().map(|&(j, k)| self.coeffs[j][k].clone()).collect()
    }

    pub fn from_vec6(v: &[FieldElem]) -> Self {
        PAIRS.iter().zip(v).fold(Self::zero(), |acc, (&(j, k), c)| acc.add(&Self::l(j, k).scale(c)))
    }

    pub fn to_json(&self) -> Value {
        let m: serde_json::Map<String, Value> = PAIRS
            .iter()
            .filter(|&&(j, k)| !self.coeffs[j][k].is_zero())
            .map(|&(j, k)| (format!("L{}{}", j + 1, k + 1), self.coeffs[j][k].to_json()))
            .collect();
        Value::Object(m)
    }
}

impl fmt::Display for VectorFieldOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_antisymmetric() {
            return write!(f, "{:?}", self.coeffs);
        }
        let parts: Vec<String> = PAIRS
            .iter()
            .filter(|&&(j, k)| !self.coeffs[j][k].is_zero())
            .map(|&(j, k)| format!("({})*L'{}{}", self.coeffs[j][k], j + 1, k + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for VectorFieldOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// L_ts written in the y-coordinates: entry (k,l) is A_tk Ã_ls − A_sk Ã_lt.
fn expand_generator(a: &BocherMatrix, ai: &BocherMatrix, t: usize, s: usize) -> Grid {
    std::array::from_fn(|k| {
        std::array::from_fn(|l| a.0[t][k].mul(&ai.0[l][s]).sub(&a.0[s][k].mul(&ai.0[l][t])))
    })
}

fn leading(g: &Grid) -> Option<(Q, VectorFieldOp)> {
    let q = min_order(g)?;
    let coeffs = std::array::from_fn(|i| std::array::from_fn(|j| g[i][j].coeff(&q)));
    Some((q, VectorFieldOp { coeffs }))
}

fn checked_inverse(a: &BocherMatrix) -> Result<BocherMatrix, BocherError> {
    match validate_bocher(a) {
        BocherKind::Invalid => Err(BocherError::InvalidMatrix),
        BocherKind::Special => Ok(a.transpose()),
        BocherKind::General => a.inverse(),
    }
}

fn to_int(q: &Q) -> i64 {
    q.to_integer().try_into().expect("small exponent")
}

/// Leading behaviour of L = Σ c_ts(ε) L_ts (0-based t ≠ s): the order α and the limit of ε^{−α}L.
pub fn generator_limit(
    c: &[((usize, usize), EpsSeries)],
    a: &BocherMatrix,
) -> Result<(i64, VectorFieldOp), BocherError> {
    let ai = checked_inverse(a)?;
    let mut sum = zero_grid();
    for ((t, s), cts) in c {
        if t == s || *t > 3 || *s > 3 {
            return Err(BocherError::BadParams(format!("no generator L{}{}", t + 1, s + 1)));
        }
        let g = expand_generator(a, &ai, *t, *s);
        for k in 0..4 {
            for l in 0..4 {
                sum[k][l] = sum[k][l].add(&cts.mul(&g[k][l]));
            }
        }
    }
    let (q, f) = leading(&sum).ok_or(BocherError::ZeroOperator)?;
    if !f.is_antisymmetric() {
        return Err(BocherError::NotInAlgebra);
    }
    Ok((to_int(&q), f))
}

const MAX_REDUCTIONS: usize = 64;

/// Six generator combinations whose rescaled limits form a basis of so(4,C), with their orders
/// in nondecreasing order. Starting from the L_ts sorted by order, a candidate whose leading
/// term is dependent on the limits found so far is reduced by ε-monomial multiples of the
/// earlier elements until a new direction appears.
pub fn contracted_basis(a: &BocherMatrix) -> Result<Vec<(i64, VectorFieldOp)>, BocherError> {
    let ai = checked_inverse(a)?;
    let mut gens: Vec<(Q, Grid)> = PAIRS
        .iter()
        .map(|&(t, s)| {
            let g = expand_generator(a, &ai, t, s);
            (min_order(&g).expect("L_ts never vanishes"), g)
        })
        .collect();
    gens.sort_by(|x, y| x.0.cmp(&y.0));
    let mut found: Vec<(Q, VectorFieldOp, Grid)> = Vec::new();
    let mut steps = 0;
    for (_, mut g) in gens {
        loop {
            let (q, f) = leading(&g).ok_or(BocherError::NonTermination(steps))?;
            if !f.is_antisymmetric() {
                return Err(BocherError::NotInAlgebra);
            }
            let cols: Vec<Vec<FieldElem>> = found.iter().map(|(_, l, _)| l.to_vec6()).collect();
            let target = f.to_vec6();
            let system: Vec<Vec<FieldElem>> = (0..6).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
            let beta = if cols.is_empty() { None } else { solve(&system, &target) };
            match beta {
                None => {
                    found.push((q, f, g));
                    break;
                }
                Some(beta) => {
                    steps += 1;
                    if steps > MAX_REDUCTIONS {
                        return Err(BocherError::NonTermination(steps));
                    }
                    for (b, (qi_, _, gi)) in beta.iter().zip(&found) {
                        if b.is_zero() {
                            continue;
                        }
                        let m = EpsSeries::monomial(b.clone(), &q - qi_);
                        for k in 0..4 {
                            for l in 0..4 {
                                g[k][l] = g[k][l].sub(&m.mul(&gi[k][l]));
                            }
                        }
                    }
                }
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));
    let out: Vec<(i64, VectorFieldOp)> = found.into_iter().map(|(q, f, _)| (to_int(&q), f)).collect();
    debug_assert_eq!(rank(&out.iter().map(|(_, f)| f.to_vec6()).collect::<Vec<_>>()), 6);
    Ok(out)
}

fn reparam_pair(a: &BocherMatrix, b: &BocherMatrix, m: &Q) -> BocherMatrix {
    let p: i64 = m.numer().try_into().expect("small numerator");
    let r: i64 = m.denom().try_into().expect("small denominator");
    a.reparam(p).mul(&b.reparam(r))
}

/// A(ε^m)·B(ε) for special A and B; m = p/r is realized as A(ε^p)·B(ε^r).
pub fn compose(a: &BocherMatrix, b: &BocherMatrix, m: &Q) -> Result<BocherMatrix, BocherError> {
    if !m.is_positive() {
        return Err(BocherError::BadParams("m must be positive".into()));
    }
    if validate_bocher(a) != BocherKind::Special || validate_bocher(b) != BocherKind::Special {
        return Err(BocherError::NotSpecial);
    }
    let c = reparam_pair(a, b, m);
    match validate_bocher(&c) {
        BocherKind::Special => Ok(c),
        _ => Err(BocherError::InvalidMatrix),
    }
}

/// Products A(ε^m)·B(ε) over a grid of m, for inputs that need not be special. Each entry
/// carries the validation result and the order q of x·x − z·z.
pub fn composition_grid(a: &BocherMatrix, b: &BocherMatrix, grid: &[Q]) -> Vec<(Q, BocherKind, Option<Q>)> {
    grid.par_iter()
        .filter(|m| m.is_positive())
        .map(|m| {
            let c = reparam_pair(a, b, m);
            (m.clone(), validate_bocher(&c), c.cone_error_order())
        })
        .collect()
}
