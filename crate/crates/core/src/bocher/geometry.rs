use super::{BocherError, BocherMatrix};
use crate::exactfield::{FieldElem, Q};
use crate::symbolic::{
    parse_poly, rational_leading, reduce_null_cone, substitute_linear, EpsPoly, EpsSeries, MultiPoly, RationalExpr,
    RationalFn, SymError,
};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use std::fmt;

const X: [&str; 4] = ["x1", "x2", "x3", "x4"];
const XA: [&str; 8] = ["x1", "x2", "x3", "x4", "a1", "a2", "a3", "a4"];

/// Leading ε-behaviour of one flat coordinate, read in the primed chart.
#[derive(Debug, Clone)]
pub struct FlatComponent {
    pub order: Q,
    /// Leading coefficient as a function of the primed tetraspherical coordinates.
    pub leading: RationalFn,
    /// (a, b, c) when the leading coefficient is a x' + b y' + c.
    pub affine: Option<[FieldElem; 3]>,
}

#[derive(Debug, Clone)]
pub struct FlatAction {
    pub x: FlatComponent,
    pub y: FlatComponent,
}

fn affine_part(r: &RationalFn) -> Option<[FieldElem; 3]> {
    let chart = parse_poly("x3 + i*x4", &X).ok()?;
    let lin = r.num.mul(&chart).div_exact(&r.den)?;
    let e = |k: usize| -> Vec<u32> { (0..4).map(|j| u32::from(j == k)).collect() };
    if lin.terms().any(|(m, _)| m.iter().sum::<u32>() != 1) {
        return None;
    }
    let c = lin.coeff(&e(2));
    if lin.coeff(&e(3)) != &c * &FieldElem::i() {
        return None;
    }
    Some([-lin.coeff(&e(0)), -lin.coeff(&e(1)), c])
}

fn component(a: &BocherMatrix, row: usize) -> Result<FlatComponent, BocherError> {
    let rows: Vec<Vec<EpsSeries>> = a.entries().iter().map(|r| r.to_vec()).collect();
    let num = substitute_linear(&parse_poly(&format!("-{}", X[row]), &X)?, &rows)?;
    let den = substitute_linear(&parse_poly("x3 + i*x4", &X)?, &rows)?;
    if den.is_zero() {
        return Err(BocherError::DegenerateChart);
    }
    let (order, leading) = rational_leading(&RationalExpr::new(num, den)?)?;
    let affine = affine_part(&leading);
    Ok(FlatComponent { order, leading, affine })
}

/// Leading action on flat coordinates x = −x1/(x3+ix4), y = −x2/(x3+ix4) under x = A(ε)·x'.
pub fn flat_geometric_action(a: &BocherMatrix) -> Result<FlatAction, BocherError> {
    Ok(FlatAction { x: component(a, 0)?, y: component(a, 1)? })
}

impl FlatComponent {
    fn to_json(&self) -> Value {
        json!({
            "order": crate::exactfield::rational_to_json(&self.order),
            "leading": self.leading.to_string(),
            "affine": self.affine.as_ref().map(|v| v.iter().map(|c| c.to_json()).collect::<Vec<_>>()),
        })
    }

    fn show(&self, var: &str) -> String {
        let body = match &self.affine {
            Some([a, b, c]) => {
                let mut parts = Vec::new();
                for (k, s) in [(a, "x'"), (b, "y'")] {
                    if !k.is_zero() {
                        parts.push(format!("({k})*{s}"));
                    }
                }
                if !c.is_zero() || parts.is_empty() {
                    parts.push(format!("({c})"));
                }
                parts.join(" + ")
            }
            None => self.leading.to_string(),
        };
        format!("{var} = e^({}) * [{body}] + ...", self.order)
    }
}

impl FlatAction {
    pub fn to_json(&self) -> Value {
        json!({"x": self.x.to_json(), "y": self.y.to_json()})
    }

    /// κ and q when the action is x = κ ε^q x', y = κ ε^q y' at leading order.
    pub fn scaling(&self) -> Option<(Q, FieldElem)> {
        match (&self.x.affine, &self.y.affine) {
            (Some([a, b, c]), Some([d, e, g]))
                if self.x.order == self.y.order && b.is_zero() && c.is_zero() && d.is_zero() && g.is_zero() && a == e =>
            {
                Some((self.x.order.clone(), a.clone()))
            }
            _ => None,
        }
    }
}

impl fmt::Display for FlatAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\n{}", self.x.show("x"), self.y.show("y"))
    }
}

/// a_j(ε) = Σ_k c_jk(ε)·b_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamMap(pub [[EpsSeries; 4]; 4]);

impl ParamMap {
    pub fn identity() -> Self {
        ParamMap(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { EpsSeries::one() } else { EpsSeries::zero() })
        }))
    }

    pub fn to_json(&self) -> Value {
        json!({"map": self.0.iter().map(|r| r.iter().map(|s| s.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>()})
    }

    pub fn from_json(v: &Value) -> Result<Self, BocherError> {
        let v = v.get("map").unwrap_or(v);
        let rows = v.as_array().filter(|r| r.len() == 4).ok_or_else(|| BocherError::Parse("4×4 parameter map".into()))?;
        let mut m = Self::identity().0;
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_array().filter(|r| r.len() == 4).ok_or_else(|| BocherError::Parse("map row".into()))?;
            for (j, x) in r.iter().enumerate() {
                m[i][j] = EpsSeries::from_json(x)?;
            }
        }
        Ok(ParamMap(m))
    }
}

fn reduce(p: &MultiPoly) -> MultiPoly {
    reduce_null_cone(p, &[0, 1, 2, 3], 3)
}

/// Lowest ε-order whose coefficient does not vanish on the cone.
fn cone_order(e: &EpsPoly) -> Option<Q> {
    e.parts().find(|(_, p)| !reduce(p).is_zero()).map(|(q, _)| q.clone())
}

/// Limit of V(A(ε)x', C(ε)b) on the null cone, one parameter at a time: the b_k term must have
/// nonnegative order; order-zero terms survive. Orders are read modulo x·x = 0. The result uses the names x1..x4, a1..a4 for
/// the primed coordinates and the new parameters.
pub fn potential_limit(v: &RationalFn, a: &BocherMatrix, c: &ParamMap) -> Result<RationalFn, BocherError> {
    if v.vars() != XA {
        return Err(BocherError::NotLinear);
    }
    if v.den.terms().any(|(m, _)| m[4..].iter().any(|&e| e > 0))
        || v.num.terms().any(|(m, _)| m[4..].iter().sum::<u32>() != 1)
    {
        return Err(BocherError::NotLinear);
    }
    let mut m: Vec<Vec<EpsSeries>> = vec![vec![EpsSeries::zero(); 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a.get(i, j).clone();
            m[i + 4][j + 4] = c.0[i][j].clone();
        }
    }
    let num = substitute_linear(&v.num, &m)?;
    let den = substitute_linear(&v.den, &m)?;
    let d0 = cone_order(&den).ok_or(SymError::ZeroDenominatorLeading)?;
    let lead_den = den.part(&d0);
    // split the numerator by parameter
    let mut per: Vec<EpsPoly> = (0..4).map(|_| EpsPoly::zero(v.vars())).collect();
    for (q, p) in num.parts() {
        for (mono, coef) in p.terms() {
            let k = (4..8).find(|&k| mono[k] == 1).expect("linear in parameters");
            let mut x = p.zero_like();
            let mut m2 = mono.clone();
            m2[k] = 0;
            x.add_term(m2, coef.clone());
            per[k - 4].add_part(q.clone(), x);
        }
    }
    let mut out = lead_den.zero_like();
    for (k, nk) in per.iter().enumerate() {
        let Some(qk) = cone_order(nk) else { continue };
        let pk = nk.part(&qk);
        let order = &qk - &d0;
        if order.is_negative() {
            return Err(BocherError::DivergentPotential { param: k + 1, order });
        }
        if order.is_zero() {
            out = out.add(&pk.mul(&pk.var_like(k + 4)));
        }
    }
    Ok(RationalFn::new(out, lead_den)?)
}

/// Equality of two potentials on the null cone.
pub fn same_on_cone(p: &RationalFn, q: &RationalFn) -> bool {
    p.equals_mod(q, &reduce)
}
