use crate::exactfield::{FieldElem, Q};
use num_traits::Zero;
use std::fmt;

use super::{EpsPoly, MultiPoly, SymError};

/// Quotient of two polynomials over K, not reduced beyond monomial content.
#[derive(Clone)]
pub struct RationalFn {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, SymError> {
        if den.is_zero() {
            return Err(SymError::ZeroDenominator);
        }
        Ok(RationalFn { num, den }.tidy())
    }

    pub fn poly(p: MultiPoly) -> Self {
        let one = p.constant_like(FieldElem::one());
        RationalFn { num: p, den: one }
    }

    pub fn vars(&self) -> &[String] {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancel common monomial factors, normalize the denominator's leading coefficient,
    /// and collapse to a polynomial when the denominator divides the numerator.
    fn tidy(self) -> Self {
        let RationalFn { mut num, mut den } = self;
        if num.is_zero() {
            return RationalFn { den: num.constant_like(FieldElem::one()), num };
        }
        let a = num.monomial_content();
        let b = den.monomial_content();
        let g: Vec<u32> = a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect();
        num = num.shift_down(&g);
        den = den.shift_down(&g);
        if let Some(q) = num.div_exact(&den) {
            return RationalFn { den: q.constant_like(FieldElem::one()), num: q };
        }
        let lc = den.terms().next_back().map(|(_, c)| c.clone()).unwrap();
        let li = lc.inv().unwrap();
        RationalFn { num: num.scale(&li), den: den.scale(&li) }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RationalFn { num: self.num.add(&o.num), den: self.den.clone() }.tidy();
        }
        RationalFn { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }.tidy()
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        RationalFn { num: self.num.scale(c), den: self.den.clone() }.tidy()
    }

    /// Exact equality as rational functions.
    pub fn equals(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    /// Equality after reducing with a rewrite rule (used for the null-cone relation).
    pub fn equals_mod(&self, o: &Self, reduce: &dyn Fn(&MultiPoly) -> MultiPoly) -> bool {
        reduce(&self.num.mul(&o.den).sub(&o.num.mul(&self.den))).is_zero()
    }

    pub fn eval(&self, pt: &[FieldElem]) -> Result<FieldElem, SymError> {
        let d = self.den.eval(pt);
        if d.is_zero() {
            return Err(SymError::ZeroDenominator);
        }
        Ok(&self.num.eval(pt) / &d)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(&vec![0; self.den.nvars()]).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Quotient of two ε-collected polynomials.
#[derive(Clone, Debug)]
pub struct RationalExpr {
    pub num: EpsPoly,
    pub den: EpsPoly,
}

impl RationalExpr {
    pub fn new(num: EpsPoly, den: EpsPoly) -> Result<Self, SymError> {
        if den.is_zero() {
            return Err(SymError::ZeroDenominator);
        }
        Ok(RationalExpr { num, den })
    }

    pub fn from_fn(r: &RationalFn) -> Self {
        RationalExpr { num: EpsPoly::from_poly(&r.num), den: EpsPoly::from_poly(&r.den) }
    }
}

/// Leading ε-order of a quotient and the ratio of the two leading coefficients.
pub fn rational_leading(r: &RationalExpr) -> Result<(Q, RationalFn), SymError> {
    let (qd, pd) = r.den.leading().ok_or(SymError::ZeroDenominatorLeading)?;
    match r.num.leading() {
        None => Ok((Q::zero(), RationalFn::poly(pd.zero_like()))),
        Some((qn, pn)) => Ok((qn - qd, RationalFn::new(pn, pd)?)),
    }
}

/// Rewrite `var_k`² as −Σ_{j≠k} var_j² until var_k has degree ≤ 1 (the cone Σ x_j² = 0).
pub fn reduce_null_cone(p: &MultiPoly, vars: &[usize], k: usize) -> MultiPoly {
    let mut out = p.zero_like();
    let mut work = p.clone();
    loop {
        let mut next = p.zero_like();
        let mut changed = false;
        for (m, c) in work.terms() {
            if m[k] >= 2 {
                changed = true;
                for &j in vars.iter().filter(|&&j| j != k) {
                    let mut m2 = m.clone();
                    m2[k] -= 2;
                    m2[j] += 2;
                    next.add_term(m2, -c);
                }
            } else {
                out.add_term(m.clone(), c.clone());
            }
        }
        if !changed {
            return out;
        }
        work = next;
    }
}
