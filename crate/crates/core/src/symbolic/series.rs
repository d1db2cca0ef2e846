use crate::exactfield::{rational_from_json, rational_to_json, FieldElem, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

use super::{MultiPoly, SymError};

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Finite sum Σ c_q ε^q with exact rational exponents and coefficients in K.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EpsSeries {
    terms: BTreeMap<Q, FieldElem>,
}

impl EpsSeries {
    pub fn zero() -> Self {
        EpsSeries { terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::monomial(c, Q::zero())
    }

    pub fn one() -> Self {
        Self::constant(FieldElem::one())
    }

    pub fn monomial(c: FieldElem, q: Q) -> Self {
        let mut s = Self::zero();
        s.add_term(q, c);
        s
    }

    /// ε^n with an integer exponent.
    pub fn eps(n: i64) -> Self {
        Self::monomial(FieldElem::one(), qi(n))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Q, FieldElem)>) -> Self {
        let mut s = Self::zero();
        for (q, c) in it {
            s.add_term(q, c);
        }
        s
    }

    pub fn add_term(&mut self, q: Q, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&q) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&q);
                }
            }
            None => {
                self.terms.insert(q, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &FieldElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|q| q.is_zero())
    }

    pub fn constant_term(&self) -> FieldElem {
        self.coeff(&Q::zero())
    }

    pub fn coeff(&self, q: &Q) -> FieldElem {
        self.terms.get(q).cloned().unwrap_or_else(FieldElem::zero)
    }

    pub fn min_order(&self) -> Option<Q> {
        self.terms.keys().next().cloned()
    }

    pub fn max_order(&self) -> Option<Q> {
        self.terms.keys().next_back().cloned()
    }

    pub fn leading(&self) -> Option<(Q, FieldElem)> {
        self.terms.iter().next().map(|(q, c)| (q.clone(), c.clone()))
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|q| q.is_integer())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (q, c) in &o.terms {
            r.add_term(q.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        EpsSeries { terms: self.terms.iter().map(|(q, c)| (q.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &FieldElem) -> Self {
        let mut r = Self::zero();
        for (q, c) in &self.terms {
            r.add_term(q.clone(), c * k);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (q1, c1) in &self.terms {
            for (q2, c2) in &o.terms {
                r.add_term(q1 + q2, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse, available when the series is a single monomial.
    pub fn inv_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (q, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.inv().ok()?, -q))
    }

    /// Reparametrize ε ↦ ε^m.
    pub fn reparam(&self, m: &Q) -> Self {
        EpsSeries { terms: self.terms.iter().map(|(q, c)| (q * m, c.clone())).collect() }
    }

    /// Multiply by ε^q.
    pub fn shift(&self, q: &Q) -> Self {
        EpsSeries { terms: self.terms.iter().map(|(p, c)| (p + q, c.clone())).collect() }
    }

    /// Drop every term of order > q.
    pub fn truncate(&self, q: &Q) -> Self {
        EpsSeries { terms: self.terms.iter().filter(|(p, _)| *p <= q).map(|(p, c)| (p.clone(), c.clone())).collect() }
    }

    /// Value at ε = 0⁺, or an error when a pole survives.
    pub fn limit(&self) -> Result<FieldElem, SymError> {
        match self.min_order() {
            Some(q) if q.is_negative() => Err(SymError::DivergentLimit { order: q }),
            _ => Ok(self.constant_term()),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms.iter().map(|(q, c)| json!({"eps_exp": rational_to_json(q), "coeff": c.to_json()})).collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self, SymError> {
        let perr = |e: crate::exactfield::FieldError| SymError::Parse(e.to_string());
        match v {
            Value::Array(items) if items.iter().all(|t| t.is_object()) => {
                let mut s = Self::zero();
                for t in items {
                    let q = rational_from_json(t.get("eps_exp").ok_or_else(|| SymError::Parse("eps_exp".into()))?)
                        .map_err(perr)?;
                    let c = FieldElem::from_json(t.get("coeff").ok_or_else(|| SymError::Parse("coeff".into()))?)
                        .map_err(perr)?;
                    s.add_term(q, c);
                }
                Ok(s)
            }
            // bare constant
            _ => Ok(Self::constant(FieldElem::from_json(v).map_err(perr)?)),
        }
    }
}

impl fmt::Display for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(q, c)| {
                if q.is_zero() {
                    format!("({c})")
                } else if q.is_one() {
                    format!("({c})*e")
                } else {
                    format!("({c})*e^({q})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Polynomial whose coefficients are ε-series, stored collected by ε-exponent.
#[derive(Clone, PartialEq, Eq)]
pub struct EpsPoly {
    vars: Vec<String>,
    terms: BTreeMap<Q, MultiPoly>,
}

impl EpsPoly {
    pub fn zero(vars: &[String]) -> Self {
        EpsPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn from_poly(p: &MultiPoly) -> Self {
        let mut r = Self::zero(p.vars());
        r.add_part(Q::zero(), p.clone());
        r
    }

    pub fn from_parts(vars: &[String], parts: impl IntoIterator<Item = (Q, MultiPoly)>) -> Self {
        let mut r = Self::zero(vars);
        for (q, p) in parts {
            r.add_part(q, p);
        }
        r
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    fn zero_poly(&self) -> MultiPoly {
        MultiPoly::with_vars(self.vars.clone())
    }

    pub fn add_part(&mut self, q: Q, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(q.clone()).or_insert_with(|| MultiPoly::with_vars(p.vars().to_vec()));
        *e = e.add(&p);
        if e.is_zero() {
            self.terms.remove(&q);
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Q, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn part(&self, q: &Q) -> MultiPoly {
        self.terms.get(q).cloned().unwrap_or_else(|| self.zero_poly())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_order(&self) -> Option<Q> {
        self.terms.keys().next().cloned()
    }

    pub fn leading(&self) -> Option<(Q, MultiPoly)> {
        self.terms.iter().next().map(|(q, p)| (q.clone(), p.clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (q, p) in &o.terms {
            r.add_part(q.clone(), p.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (q, p) in &o.terms {
            r.add_part(q.clone(), p.neg());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(&self.vars);
        for (q1, p1) in &self.terms {
            for (q2, p2) in &o.terms {
                r.add_part(q1 + q2, p1.mul(p2));
            }
        }
        r
    }

    pub fn scale_series(&self, s: &EpsSeries) -> Self {
        let mut r = Self::zero(&self.vars);
        for (q1, c) in s.terms() {
            for (q2, p) in &self.terms {
                r.add_part(q1 + q2, p.scale(c));
            }
        }
        r
    }

    /// The ε-series coefficient of one monomial.
    pub fn coeff_series(&self, m: &[u32]) -> EpsSeries {
        EpsSeries::from_terms(self.terms.iter().map(|(q, p)| (q.clone(), p.coeff(m))))
    }

    /// Reparametrize ε ↦ ε^m.
    pub fn reparam(&self, m: &Q) -> Self {
        EpsPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(q, p)| (q * m, p.clone())).collect() }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms.iter().map(|(q, p)| json!({"eps_exp": rational_to_json(q), "coeff": p.to_json()})).collect(),
        )
    }
}

impl fmt::Display for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(q, p)| format!("e^({q})*[{p}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Evaluate p(M·x): variable k is replaced by Σ_j M[k][j]·x_j.
pub fn substitute_linear(p: &MultiPoly, m: &[Vec<EpsSeries>]) -> Result<EpsPoly, SymError> {
    let n = p.nvars();
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(SymError::ArityMismatch { expected: n, got: m.len() });
    }
    let vars = p.vars().to_vec();
    let images: Vec<EpsPoly> = m
        .iter()
        .map(|row| {
            let mut e = EpsPoly::zero(&vars);
            for (j, s) in row.iter().enumerate() {
                let xj = p.var_like(j);
                for (q, c) in s.terms() {
                    e.add_part(q.clone(), xj.scale(c));
                }
            }
            e
        })
        .collect();
    let one = {
        let mut e = EpsPoly::zero(&vars);
        e.add_part(Q::zero(), p.constant_like(FieldElem::one()));
        e
    };
    let mut powers: Vec<Vec<EpsPoly>> = images.iter().map(|im| vec![one.clone(), im.clone()]).collect();
    let mut out = EpsPoly::zero(&vars);
    for (mono, c) in p.terms() {
        let mut t = EpsPoly::zero(&vars);
        t.add_part(Q::zero(), p.constant_like(c.clone()));
        for (k, &e) in mono.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[k].len() <= e as usize {
                let nxt = powers[k].last().unwrap().mul(&images[k]);
                powers[k].push(nxt);
            }
            t = t.mul(&powers[k][e as usize]);
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// The ε → 0⁺ limit of an ε-collected polynomial.
pub fn eps_limit(s: &EpsPoly) -> Result<MultiPoly, SymError> {
    match s.min_order() {
        Some(q) if q.is_negative() => Err(SymError::DivergentLimit { order: q }),
        _ => Ok(s.part(&Q::zero())),
    }
}
