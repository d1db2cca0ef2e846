use crate::exactfield::{FieldElem, Q};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

use super::SymError;

pub type Monomial = Vec<u32>;

/// Sparse polynomial over K in a named, ordered set of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> Self {
        MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn with_vars(vars: Vec<String>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: FieldElem) -> Self {
        let mut p = self.zero_like();
        p.add_term(vec![0; self.nvars()], c);
        p
    }

    pub fn var_like(&self, k: usize) -> Self {
        let mut e = vec![0; self.nvars()];
        e[k] = 1;
        let mut p = self.zero_like();
        p.add_term(e, FieldElem::one());
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Self {
        let p = Self::zero(vars);
        let k = p.var_index(name).expect("unknown variable");
        p.var_like(k)
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len());
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(FieldElem::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.iter().sum::<u32>() == d)
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.vars, o.vars);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&FieldElem::from_int(-1))
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        let mut r = self.zero_like();
        if c.is_zero() {
            return r;
        }
        for (m, v) in &self.terms {
            r.terms.insert(m.clone(), v * c);
        }
        r
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        self.scale(&FieldElem::from_q(c.clone()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.vars, o.vars);
        let mut r = self.zero_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.constant_like(FieldElem::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, k: usize) -> Self {
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            if m[k] > 0 {
                let mut m2 = m.clone();
                m2[k] -= 1;
                r.add_term(m2, c.scale(&Q::from_integer(m[k].into())));
            }
        }
        r
    }

    /// Substitute polynomials (in a possibly different ring) for every variable.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly, SymError> {
        if images.len() != self.nvars() {
            return Err(SymError::ArityMismatch { expected: self.nvars(), got: images.len() });
        }
        let target = images.first().map(|p| p.zero_like()).unwrap_or_else(|| self.clone());
        let mut cache: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![p.constant_like(FieldElem::one()), p.clone()]).collect();
        let mut out = target;
        for (m, c) in &self.terms {
            let mut t = out.constant_like(c.clone());
            for (k, &e) in m.iter().enumerate() {
                while cache[k].len() <= e as usize {
                    let nxt = cache[k].last().unwrap().mul(&images[k]);
                    cache[k].push(nxt);
                }
                if e > 0 {
                    t = t.mul(&cache[k][e as usize]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Re-express in a larger variable list (names must be a superset).
    pub fn embed(&self, vars: &[String]) -> Self {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable missing in target ring"))
            .collect();
        let mut r = MultiPoly::with_vars(vars.to_vec());
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (k, &x) in m.iter().enumerate() {
                e[idx[k]] = x;
            }
            r.add_term(e, c.clone());
        }
        r
    }

    /// Drop variables that must not occur (panics if they do).
    pub fn restrict(&self, vars: &[String]) -> Self {
        let idx: Vec<Option<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut r = MultiPoly::with_vars(vars.to_vec());
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (k, &x) in m.iter().enumerate() {
                match idx[k] {
                    Some(j) => e[j] = x,
                    None => assert_eq!(x, 0, "variable {} still present", self.vars[k]),
                }
            }
            r.add_term(e, c.clone());
        }
        r
    }

    /// Set the named variables to zero.
    pub fn kill(&self, names: &[&str]) -> Self {
        let ks: Vec<usize> = names.iter().filter_map(|n| self.var_index(n)).collect();
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            if ks.iter().all(|&k| m[k] == 0) {
                r.terms.insert(m.clone(), c.clone());
            }
        }
        r
    }

    /// Collect by powers of the given variables: map from their exponents to the remaining polynomial.
    pub fn collect(&self, ks: &[usize]) -> BTreeMap<Vec<u32>, MultiPoly> {
        let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = ks.iter().map(|&k| m[k]).collect();
            let mut rest = m.clone();
            for &k in ks {
                rest[k] = 0;
            }
            out.entry(key).or_insert_with(|| self.zero_like()).add_term(rest, c.clone());
        }
        out
    }

    /// Evaluate at a point of K^n.
    pub fn eval(&self, pt: &[FieldElem]) -> FieldElem {
        let mut acc = FieldElem::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = &t * &pt[k].pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Self {
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    /// Exact division by a polynomial, when the quotient is a polynomial.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (dm, dc) = d.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let dinv = dc.inv().ok()?;
        let mut r = self.clone();
        let mut q = self.zero_like();
        while let Some((m, c)) = r.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if m.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = m.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let qc = &c * &dinv;
            let mut t = self.zero_like();
            t.add_term(qm, qc);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let mut g = match it.next() {
            Some(m) => m.clone(),
            None => return vec![0; self.nvars()],
        };
        for m in it {
            for (a, b) in g.iter_mut().zip(m) {
                *a = (*a).min(*b);
            }
        }
        g
    }

    pub fn shift_down(&self, m0: &[u32]) -> Self {
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            r.terms.insert(m.iter().zip(m0).map(|(a, b)| a - b).collect(), c.clone());
        }
        r
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vars": self.vars,
            "terms": self.terms.iter().map(|(m, c)| json!({"exponents": m, "coeff": c.to_json()})).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, SymError> {
        let bad = |s: &str| SymError::Parse(s.to_string());
        let vars: Vec<String> = v
            .get("vars")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing vars"))?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(|| bad("variable name")))
            .collect::<Result<_, _>>()?;
        let mut p = MultiPoly::with_vars(vars);
        let terms = v.get("terms").and_then(|x| x.as_array()).ok_or_else(|| bad("missing terms"))?;
        for t in terms {
            let e: Monomial = t
                .get("exponents")
                .and_then(|x| x.as_array())
                .ok_or_else(|| bad("exponents"))?
                .iter()
                .map(|x| x.as_u64().map(|n| n as u32).ok_or_else(|| bad("exponent")))
                .collect::<Result<_, _>>()?;
            if e.len() != p.nvars() {
                return Err(SymError::ArityMismatch { expected: p.nvars(), got: e.len() });
            }
            let c = FieldElem::from_json(t.get("coeff").ok_or_else(|| bad("coeff"))?)
                .map_err(|e| SymError::Parse(e.to_string()))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| if e == 1 { self.vars[k].clone() } else { format!("{}^{}", self.vars[k], e) })
                .collect();
            let mut cs = c.to_string();
            let needs_paren = cs.contains(' ') || cs.contains('*');
            if first {
                first = false;
            } else if !needs_paren && cs.starts_with('-') {
                cs.remove(0);
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{}", if needs_paren { format!("({cs})") } else { cs })?;
            } else if cs == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else if cs == "-1" {
                write!(f, "-{}", mono.join("*"))?;
            } else if needs_paren {
                write!(f, "({})*{}", cs, mono.join("*"))?;
            } else {
                write!(f, "{}*{}", cs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
