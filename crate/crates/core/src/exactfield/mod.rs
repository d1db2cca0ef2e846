//! Exact arithmetic in K = Q(i, √2, √3).
//!
//! Elements are stored by their eight rational coordinates over the basis
//! {1, i, √2, i√2, √3, i√3, √6, i√6}. The real and imaginary parts live in
//! the real subfield Q(√2, √3), where signs are decided exactly, so moduli
//! and arguments can be compared without floating point.

mod real;
pub mod roots;

pub use real::Q;
use real::Real;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument of zero is undefined")]
    ZeroArgument,
    #[error("malformed field element: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareMode {
    Modulus,
    Argument,
}

/// An element of K.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    c: [Q; 8],
}

pub const BASIS_NAMES: [&str; 8] = ["1", "i", "√2", "i√2", "√3", "i√3", "√6", "i√6"];

pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

impl FieldElem {
    pub fn new(c: [Q; 8]) -> Self {
        FieldElem { c }
    }

    pub fn zero() -> Self {
        FieldElem { c: std::array::from_fn(|_| Q::zero()) }
    }

    pub fn one() -> Self {
        Self::from_q(Q::one())
    }

    pub fn from_q(x: Q) -> Self {
        let mut e = Self::zero();
        e.c[0] = x;
        e
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(Q::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_q(rat(n, d))
    }

    fn basis(k: usize) -> Self {
        let mut e = Self::zero();
        e.c[k] = Q::one();
        e
    }

    pub fn i() -> Self {
        Self::basis(1)
    }
    pub fn sqrt2() -> Self {
        Self::basis(2)
    }
    pub fn sqrt3() -> Self {
        Self::basis(4)
    }
    pub fn sqrt6() -> Self {
        Self::basis(6)
    }

    /// a + b·i with rational a, b.
    pub fn gauss(a: Q, b: Q) -> Self {
        let mut e = Self::zero();
        e.c[0] = a;
        e.c[1] = b;
        e
    }

    pub fn coords(&self) -> &[Q; 8] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Q> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn re_part(&self) -> Real {
        Real([self.c[0].clone(), self.c[2].clone(), self.c[4].clone(), self.c[6].clone()])
    }

    fn im_part(&self) -> Real {
        Real([self.c[1].clone(), self.c[3].clone(), self.c[5].clone(), self.c[7].clone()])
    }

    fn from_parts(re: Real, im: Real) -> Self {
        let [r0, r1, r2, r3] = re.0;
        let [i0, i1, i2, i3] = im.0;
        FieldElem { c: [r0, i0, r1, i1, r2, i2, r3, i3] }
    }

    pub fn re(&self) -> Self {
        Self::from_parts(self.re_part(), Real::zero())
    }

    pub fn im(&self) -> Self {
        Self::from_parts(self.im_part(), Real::zero())
    }

    pub fn is_real(&self) -> bool {
        self.im_part().is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::from_parts(self.re_part(), self.im_part().neg())
    }

    /// |a|² as a real element of K.
    pub fn abs2(&self) -> Self {
        let re = self.re_part();
        let im = self.im_part();
        Self::from_parts(re.mul(&re).add(&im.mul(&im)), Real::zero())
    }

    /// Sign of a real element; `None` when the element is not real.
    pub fn real_sign(&self) -> Option<i32> {
        if self.is_real() {
            Some(self.re_part().signum())
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        let re = self.re_part();
        let im = self.im_part();
        let n = re.mul(&re).add(&im.mul(&im));
        let ninv = n.inv().ok_or(FieldError::DivisionByZero)?;
        Ok(Self::from_parts(re.mul(&ninv), im.neg().mul(&ninv)))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self * &o.inv()?)
    }

    pub fn scale(&self, s: &Q) -> Self {
        FieldElem { c: std::array::from_fn(|k| &self.c[k] * s) }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powi(&self, n: i32) -> Result<Self, FieldError> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.inv()?.pow((-n) as u32))
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re_part().to_f64(), self.im_part().to_f64())
    }

    /// Quadrant index for arg in [0, 2π): 0 ↔ [0, π/2), 1 ↔ [π/2, π), ...
    fn quadrant(&self) -> u8 {
        let sr = self.re_part().signum();
        let si = self.im_part().signum();
        if sr > 0 && si >= 0 {
            0
        } else if sr <= 0 && si > 0 {
            1
        } else if sr < 0 && si <= 0 {
            2
        } else {
            3
        }
    }

    pub fn cmp_modulus(&self, o: &Self) -> Ordering {
        let d = self.abs2() - o.abs2();
        d.re_part().cmp_zero()
    }

    pub fn cmp_arg(&self, o: &Self) -> Result<Ordering, FieldError> {
        if self.is_zero() || o.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let (qa, qb) = (self.quadrant(), o.quadrant());
        if qa != qb {
            return Ok(qa.cmp(&qb));
        }
        // Same quadrant: the angle difference lies in (−π/2, π/2).
        let s = (self * &o.conj()).im_part().signum();
        Ok(s.cmp(&0))
    }

    pub fn complex_compare(&self, o: &Self, mode: CompareMode) -> Result<Ordering, FieldError> {
        match mode {
            CompareMode::Modulus => Ok(self.cmp_modulus(o)),
            CompareMode::Argument => self.cmp_arg(o),
        }
    }

    /// Argument ordering with arg(0) placed before every nonzero value.
    pub fn cmp_arg_total(&self, o: &Self) -> Ordering {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.cmp_arg(o).unwrap(),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.c.iter().map(rational_to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, FieldError> {
        match v {
            Value::Array(items) if items.len() == 8 => {
                let mut c: [Q; 8] = std::array::from_fn(|_| Q::zero());
                for (k, it) in items.iter().enumerate() {
                    c[k] = rational_from_json(it)?;
                }
                Ok(FieldElem { c })
            }
            Value::Number(_) | Value::String(_) => Ok(Self::from_q(rational_from_json(v)?)),
            Value::Array(items) if items.len() == 2 => Ok(Self::from_q(rational_from_json(v)?)),
            _ => Err(FieldError::Parse(v.to_string())),
        }
    }
}

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt, FieldError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| FieldError::Parse(v.to_string())),
        Value::String(s) => BigInt::from_str(s).map_err(|_| FieldError::Parse(s.clone())),
        _ => Err(FieldError::Parse(v.to_string())),
    }
}

pub fn rational_to_json(x: &Q) -> Value {
    Value::Array(vec![int_to_json(x.numer()), int_to_json(x.denom())])
}

pub fn rational_from_json(v: &Value) -> Result<Q, FieldError> {
    match v {
        Value::Array(p) if p.len() == 2 => {
            let n = int_from_json(&p[0])?;
            let d = int_from_json(&p[1])?;
            if d.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            Ok(Q::new(n, d))
        }
        Value::Number(_) => Ok(Q::from_integer(int_from_json(v)?)),
        Value::String(s) => parse_rational(s),
        _ => Err(FieldError::Parse(v.to_string())),
    }
}

pub fn parse_rational(s: &str) -> Result<Q, FieldError> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n = BigInt::from_str(a.trim()).map_err(|_| FieldError::Parse(s.into()))?;
            let d = BigInt::from_str(b.trim()).map_err(|_| FieldError::Parse(s.into()))?;
            if d.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            Ok(Q::new(n, d))
        }
        None => BigInt::from_str(s)
            .map(Q::from_integer)
            .map_err(|_| FieldError::Parse(s.into())),
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        FieldElem::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let neg = x.is_negative();
            let a = x.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", BASIS_NAMES[k])?;
            } else {
                write!(f, "{}*{}", a, BASIS_NAMES[k])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Q> for FieldElem {
    fn from(x: Q) -> Self {
        Self::from_q(x)
    }
}

fn mul_ref(a: &FieldElem, b: &FieldElem) -> FieldElem {
    let (ar, ai) = (a.re_part(), a.im_part());
    let (br, bi) = (b.re_part(), b.im_part());
    let re = ar.mul(&br).sub(&ai.mul(&bi));
    let im = ar.mul(&bi).add(&ai.mul(&br));
    FieldElem::from_parts(re, im)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                $f(self, o)
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                $f(&self, &o)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                $f(&self, o)
            }
        }
        impl $tr<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                $f(self, &o)
            }
        }
    };
}

binop!(Add, add, |a: &FieldElem, b: &FieldElem| FieldElem {
    c: std::array::from_fn(|k| &a.c[k] + &b.c[k])
});
binop!(Sub, sub, |a: &FieldElem, b: &FieldElem| FieldElem {
    c: std::array::from_fn(|k| &a.c[k] - &b.c[k])
});
binop!(Mul, mul, mul_ref);
// Panics on a zero divisor; use `checked_div` where the divisor may vanish.
binop!(Div, div, |a: &FieldElem, b: &FieldElem| a
    .checked_div(b)
    .expect("division by zero in K"));

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { c: self.c.map(|x| -x) }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { c: std::array::from_fn(|k| -&self.c[k]) }
    }
}

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, o: &FieldElem) {
        for k in 0..8 {
            self.c[k] += &o.c[k];
        }
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, o: &FieldElem) {
        for k in 0..8 {
            self.c[k] -= &o.c[k];
        }
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, o: &FieldElem) {
        *self = &*self * o;
    }
}

impl Zero for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
}

impl One for FieldElem {
    fn one() -> Self {
        FieldElem::one()
    }
}

/// Apply one of the four field operations.
pub fn field_arith(a: &FieldElem, b: &FieldElem, op: char) -> Result<FieldElem, FieldError> {
    match op {
        '+' => Ok(a + b),
        '-' => Ok(a - b),
        '*' => Ok(a * b),
        '/' => a.checked_div(b),
        _ => Err(FieldError::Parse(format!("unknown operator {op}"))),
    }
}

/// Rank of a matrix over K by exact Gaussian elimination.
pub fn rank(rows: &[Vec<FieldElem>]) -> usize {
    let mut m: Vec<Vec<FieldElem>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..ncols {
                let t = &f * &m[r][j];
                m[i][j] -= &t;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// One solution x of Σ_j m[i][j]·x_j = rhs[i] (free variables set to zero), or None.
pub fn solve(m: &[Vec<FieldElem>], rhs: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<FieldElem>> =
        m.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, piv);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..=ncols {
                let t = &f * &a[r][j];
                a[i][j] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    if a[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![FieldElem::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][ncols].clone();
    }
    Some(x)
}
