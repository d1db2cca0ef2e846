//! Test-side oracle for parameter maps of potential limits.
//!
//! Works numerically-exactly at sample points of the null cone: every entry of A(ε)·y0 is a
//! Laurent polynomial with coefficients in K, each potential term becomes a truncated Laurent
//! series, and the map a_j = Σ_k c_jk(ε) b_k with c_jk = Σ_{|m|≤M} γ ε^m is found by linear
//! algebra. The library then has to confirm the map symbolically.

#![allow(dead_code)]

use quadalg::bocher::{BocherMatrix, ParamMap};
use quadalg::exactfield::{solve, FieldElem};
use quadalg::symbolic::{qi, EpsSeries, MultiPoly, RationalFn};

/// c[k] is the coefficient of ε^(lo + k).
#[derive(Clone, Debug)]
struct Laurent {
    lo: i64,
    c: Vec<FieldElem>,
}

impl Laurent {
    fn constant(x: FieldElem) -> Self {
        Laurent { lo: 0, c: vec![x] }
    }

    fn from_series(s: &EpsSeries) -> Self {
        let terms: Vec<(i64, FieldElem)> =
            s.terms().map(|(q, c)| (q.to_integer().try_into().unwrap(), c.clone())).collect();
        if terms.is_empty() {
            return Laurent { lo: 0, c: vec![] };
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![FieldElem::zero(); (hi - lo + 1) as usize];
        for (e, x) in terms {
            c[(e - lo) as usize] = x;
        }
        Laurent { lo, c }
    }

    fn coeff(&self, n: i64) -> FieldElem {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.c.len() {
            FieldElem::zero()
        } else {
            self.c[k as usize].clone()
        }
    }

    fn add(&self, o: &Self) -> Self {
        if self.c.is_empty() {
            return o.clone();
        }
        if o.c.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = (self.lo + self.c.len() as i64).max(o.lo + o.c.len() as i64);
        Laurent { lo, c: (lo..hi).map(|n| &self.coeff(n) + &o.coeff(n)).collect() }
    }

    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Laurent { lo: 0, c: vec![] };
        }
        let mut c = vec![FieldElem::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += &(x * y);
            }
        }
        Laurent { lo: self.lo + o.lo, c }
    }

    /// Lowest order with a nonzero coefficient.
    fn order(&self) -> Option<i64> {
        self.c.iter().position(|x| !x.is_zero()).map(|k| self.lo + k as i64)
    }

    /// self / d, expanded through order `upto`.
    fn div(&self, d: &Self, upto: i64) -> Self {
        let dlo = d.order().expect("denominator vanishes at the sample point");
        let d0 = d.coeff(dlo).inv().unwrap();
        let Some(nlo) = self.order() else { return Laurent { lo: 0, c: vec![] } };
        let lo = nlo - dlo;
        let len = (upto - lo + 1).max(0) as usize;
        let mut q = vec![FieldElem::zero(); len];
        for k in 0..len {
            // num[nlo + k] = Σ_j q[j] d[dlo + k − j]
            let mut r = self.coeff(nlo + k as i64);
            for j in 0..k {
                r -= &(&q[j] * &d.coeff(dlo + (k - j) as i64));
            }
            q[k] = &r * &d0;
        }
        Laurent { lo, c: q }
    }
}

fn eval_poly(p: &MultiPoly, vals: &[Laurent]) -> Laurent {
    let mut acc = Laurent { lo: 0, c: vec![] };
    for (m, c) in p.terms() {
        let mut t = Laurent::constant(c.clone());
        for (k, &e) in m.iter().enumerate() {
            for _ in 0..e {
                t = t.mul(&vals[k]);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Coefficient of a_k in the numerator (variables x1..x4, a1..a4).
fn param_part(p: &MultiPoly, k: usize) -> MultiPoly {
    let mut out = p.zero_like();
    for (m, c) in p.terms() {
        if m[4 + k] == 1 {
            let mut m2 = m.clone();
            m2[4 + k] = 0;
            out.add_term(m2, c.clone());
        }
    }
    out
}

/// Gaussian-integer points on y1² + y2² + y3² + y4² = 0.
pub fn cone_points() -> Vec<[FieldElem; 4]> {
    let quads: [[i64; 4]; 12] = [
        [1, 2, 2, 3],
        [2, 3, 6, 7],
        [1, 4, 8, 9],
        [4, 4, 7, 9],
        [2, 6, 9, 11],
        [6, 6, 7, 11],
        [3, 4, 12, 13],
        [2, 5, 14, 15],
        [2, 10, 11, 15],
        [1, 12, 12, 17],
        [8, 9, 12, 17],
        [6, 6, 17, 19],
    ];
    quads
        .iter()
        .enumerate()
        .map(|(n, q)| {
            let slot = n % 4;
            let mut y: [FieldElem; 4] = std::array::from_fn(|_| FieldElem::zero());
            let mut others = q[..3].iter();
            for (k, yk) in y.iter_mut().enumerate() {
                if k == slot {
                    *yk = &FieldElem::i() * &FieldElem::from_int(q[3]);
                } else {
                    let v = *others.next().unwrap();
                    *yk = FieldElem::from_int(if (n + k) % 3 == 0 { -v } else { v });
                }
            }
            y
        })
        .collect()
}

fn point_value(r: &MultiPoly, den: &MultiPoly, y: &[FieldElem; 4]) -> FieldElem {
    let mut pt: Vec<FieldElem> = y.to_vec();
    pt.extend((0..4).map(|_| FieldElem::zero()));
    &r.eval(&pt) / &den.eval(&pt)
}

/// Solve for a parameter map taking V to `target` under A, with ε-exponents |m| ≤ max_exp.
pub fn derive_param_map(v: &RationalFn, a: &BocherMatrix, target: &RationalFn, max_exp: i64) -> Option<ParamMap> {
    let pts = cone_points();
    // s[p][j]: the a_j term of V at A(ε)·y_p, through order max_exp
    let mut s: Vec<Vec<Laurent>> = Vec::new();
    for y in &pts {
        let xs: Vec<Laurent> = (0..4)
            .map(|i| {
                (0..4).fold(Laurent { lo: 0, c: vec![] }, |acc, k| {
                    acc.add(&Laurent::from_series(&a.get(i, k).scale(&y[k])))
                })
            })
            .chain((0..4).map(|_| Laurent { lo: 0, c: vec![] }))
            .collect();
        let den = eval_poly(&v.den, &xs);
        s.push((0..4).map(|j| eval_poly(&param_part(&v.num, j), &xs).div(&den, max_exp)).collect());
    }
    let lowest = s.iter().flatten().filter_map(|l| l.order()).min()?;
    let n_lo = lowest - max_exp;
    let ms: Vec<i64> = (-max_exp..=max_exp).collect();
    let mut out = ParamMap::identity().0;
    for k in 0..4 {
        let tk = param_part(&target.num, k);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (p, y) in pts.iter().enumerate() {
            for n in n_lo..=0 {
                let row: Vec<FieldElem> =
                    (0..4).flat_map(|j| ms.iter().map(move |&m| (j, m))).map(|(j, m)| s[p][j].coeff(n - m)).collect();
                rows.push(row);
                rhs.push(if n == 0 { point_value(&tk, &target.den, y) } else { FieldElem::zero() });
            }
        }
        let Some(g) = solve(&rows, &rhs) else {
            if std::env::var("ORACLE_DEBUG").is_ok() {
                eprintln!("no solution for parameter {}", k + 1);
            }
            return None;
        };
        for j in 0..4 {
            out[j][k] = EpsSeries::from_terms(ms.iter().enumerate().map(|(i, &m)| (qi(m), g[j * ms.len() + i].clone())));
        }
    }
    Some(ParamMap(out))
}
