//! Roots of univariate polynomials over K that lie in K.
//!
//! Candidates are located numerically at the four complex embeddings of K
//! (√2 ↦ ±√2, √3 ↦ ±√3, i fixed), coordinates are recovered by continued
//! fractions, and every candidate is checked by exact substitution. Nothing
//! approximate is ever returned.

use super::{FieldElem, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Dense univariate polynomial, coefficient of x^k at index k.
pub type UPoly = Vec<FieldElem>;

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn eval(p: &[FieldElem], x: &FieldElem) -> FieldElem {
    let mut acc = FieldElem::zero();
    for c in p.iter().rev() {
        acc = &acc * x + c;
    }
    acc
}

fn derivative(p: &[FieldElem]) -> UPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&Q::from_integer(BigInt::from(k))))
        .collect()
}

fn poly_rem(a: &[FieldElem], b: &[FieldElem]) -> UPoly {
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    let lead_inv = b.last().unwrap().inv().unwrap();
    while r.len() >= b.len() && !r.is_empty() {
        let f = r.last().unwrap() * &lead_inv;
        let shift = r.len() - b.len();
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &(&f * bc);
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn poly_div(a: &[FieldElem], b: &[FieldElem]) -> UPoly {
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return vec![];
    }
    let lead_inv = b.last().unwrap().inv().unwrap();
    let mut qt = vec![FieldElem::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let f = r.last().unwrap() * &lead_inv;
        let shift = r.len() - b.len();
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &(&f * bc);
        }
        qt[shift] = f;
        r.pop();
        trim(&mut r);
    }
    qt
}

/// Monic gcd over K.
pub fn gcd(a: &[FieldElem], b: &[FieldElem]) -> UPoly {
    let mut x: UPoly = a.to_vec();
    let mut y: UPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        let li = l.inv().unwrap();
        for c in x.iter_mut() {
            *c = &*c * &li;
        }
    }
    x
}

// ---- fixed-point complex arithmetic ------------------------------------

#[derive(Clone, Debug)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

struct Ctx {
    p: usize,
    sqrt2: BigInt,
    sqrt3: BigInt,
}

impl Ctx {
    fn new(p: usize) -> Self {
        let sq = |k: u32| (BigInt::from(k) << (2 * p)).sqrt();
        Ctx { p, sqrt2: sq(2), sqrt3: sq(3) }
    }

    fn one(&self) -> BigInt {
        BigInt::one() << self.p
    }

    fn from_q(&self, x: &Q) -> BigInt {
        (x.numer() << self.p) / x.denom()
    }

    fn mulr(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.p
    }

    fn mul(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            re: (&a.re * &b.re - &a.im * &b.im) >> self.p,
            im: (&a.re * &b.im + &a.im * &b.re) >> self.p,
        }
    }

    fn div(&self, a: &Fx, b: &Fx) -> Option<Fx> {
        let n = &b.re * &b.re + &b.im * &b.im;
        if n.is_zero() {
            return None;
        }
        let re = &a.re * &b.re + &a.im * &b.im;
        let im = &a.im * &b.re - &a.re * &b.im;
        Some(Fx { re: (re << self.p) / &n, im: (im << self.p) / &n })
    }

    fn sub(&self, a: &Fx, b: &Fx) -> Fx {
        Fx { re: &a.re - &b.re, im: &a.im - &b.im }
    }

    /// Image of an element under the embedding (√2 ↦ s2√2, √3 ↦ s3√3).
    fn embed(&self, x: &FieldElem, s2: i32, s3: i32) -> Fx {
        let c = x.coords();
        let part = |o: usize| {
            let a = self.from_q(&c[o]);
            let b = self.mulr(&self.from_q(&c[o + 2]), &self.sqrt2) * s2;
            let d = self.mulr(&self.from_q(&c[o + 4]), &self.sqrt3) * s3;
            let e = self.mulr(&self.mulr(&self.from_q(&c[o + 6]), &self.sqrt2), &self.sqrt3) * (s2 * s3);
            a + b + d + e
        };
        Fx { re: part(0), im: part(1) }
    }

    fn eval(&self, p: &[Fx], z: &Fx) -> Fx {
        let mut acc = Fx { re: BigInt::zero(), im: BigInt::zero() };
        for c in p.iter().rev() {
            let m = self.mul(&acc, z);
            acc = Fx { re: m.re + &c.re, im: m.im + &c.im };
        }
        acc
    }

    fn norm_inf(&self, a: &Fx) -> BigInt {
        a.re.abs().max(a.im.abs())
    }
}

/// Durand–Kerner on a monic polynomial given by fixed-point coefficients.
fn durand_kerner(ctx: &Ctx, p: &[Fx]) -> Vec<Fx> {
    let n = p.len() - 1;
    // Cauchy bound 1 + max |a_k| (monic)
    let mut bound = 0f64;
    for c in &p[..n] {
        let r = (ctx.norm_inf(c) >> ctx.p).to_f64().unwrap_or(f64::MAX) + 1.0;
        bound = bound.max(r);
    }
    let radius = 1.0 + 2.0 * bound;
    let scale = 2f64.powi(52);
    let mut z: Vec<Fx> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            let to = |v: f64| (BigInt::from_f64(v * scale).unwrap_or_default() << ctx.p) >> 52;
            Fx { re: to(radius * t.cos()), im: to(radius * t.sin()) }
        })
        .collect();
    let tol = BigInt::one() << (ctx.p / 4);
    let mut polish = 2;
    for _ in 0..500 {
        let mut moved = BigInt::zero();
        for k in 0..n {
            let mut den = Fx { re: ctx.one(), im: BigInt::zero() };
            for j in 0..n {
                if j != k {
                    den = ctx.mul(&den, &ctx.sub(&z[k], &z[j]));
                }
            }
            let num = ctx.eval(p, &z[k]);
            if let Some(step) = ctx.div(&num, &den) {
                let m = ctx.norm_inf(&step);
                if m > moved {
                    moved = m;
                }
                z[k] = ctx.sub(&z[k], &step);
            }
        }
        if moved <= tol {
            if polish == 0 {
                break;
            }
            polish -= 1;
        }
    }
    z
}

/// Best rational approximation of v / 2^p with denominator ≤ dmax.
fn rational_approx(v: &BigInt, p: usize, dmax: &BigInt) -> Q {
    let mut num = v.clone();
    let mut den = BigInt::one() << p;
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    loop {
        let (a, r) = num.div_mod_floor(&den);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > dmax {
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        if r.is_zero() {
            break;
        }
        num = std::mem::replace(&mut den, r);
    }
    if k1.is_zero() {
        return Q::zero();
    }
    Q::new(h1, k1)
}

const EMB: [(i32, i32); 4] = [(1, 1), (-1, 1), (1, -1), (-1, -1)];

fn try_reconstruct(ctx: &Ctx, pick: [&Fx; 4]) -> FieldElem {
    let (pp, mp, pm, mm) = (pick[0], pick[1], pick[2], pick[3]);
    let dmax = BigInt::one() << (ctx.p / 4);
    let sqrt6 = ctx.mulr(&ctx.sqrt2, &ctx.sqrt3);
    let mut c: [Q; 8] = std::array::from_fn(|_| Q::zero());
    for (o, get) in [(0usize, (|f: &Fx| f.re.clone()) as fn(&Fx) -> BigInt), (1, |f: &Fx| f.im.clone())] {
        let (a, b, d, e) = (get(pp), get(mp), get(pm), get(mm));
        let s0 = (&a + &b + &d + &e) >> 2;
        let s2 = (&a - &b + &d - &e) >> 2;
        let s3 = (&a + &b - &d - &e) >> 2;
        let s6 = (&a - &b - &d + &e) >> 2;
        let div = |x: BigInt, r: &BigInt| (x << ctx.p) / r;
        c[o] = rational_approx(&s0, ctx.p, &dmax);
        c[o + 2] = rational_approx(&div(s2, &ctx.sqrt2), ctx.p, &dmax);
        c[o + 4] = rational_approx(&div(s3, &ctx.sqrt3), ctx.p, &dmax);
        c[o + 6] = rational_approx(&div(s6, &sqrt6), ctx.p, &dmax);
    }
    FieldElem::new(c)
}

fn fx_close(a: &Fx, b: &Fx, tol: &BigInt) -> bool {
    (&a.re - &b.re).abs() <= *tol && (&a.im - &b.im).abs() <= *tol
}

/// All distinct roots of `p` lying in K, ordered by argument in [0, 2π) and then modulus.
pub fn poly_roots(p: &[FieldElem]) -> Vec<FieldElem> {
    let mut p: UPoly = p.to_vec();
    trim(&mut p);
    if p.len() <= 1 {
        return vec![];
    }
    let mut roots = Vec::new();
    // Pull out x = 0 first.
    let mut shift = 0;
    while p[shift].is_zero() {
        shift += 1;
    }
    if shift > 0 {
        roots.push(FieldElem::zero());
        p.drain(..shift);
    }
    if p.len() > 1 {
        let g = gcd(&p, &derivative(&p));
        let mut sq = if g.len() > 1 { poly_div(&p, &g) } else { p.clone() };
        let li = sq.last().unwrap().inv().unwrap();
        for c in sq.iter_mut() {
            *c = &*c * &li;
        }
        roots.extend(squarefree_roots(&sq));
    }
    sort_roots(&mut roots);
    roots
}

pub fn sort_roots(roots: &mut [FieldElem]) {
    roots.sort_by(|a, b| match a.cmp_arg_total(b) {
        Ordering::Equal => a.cmp_modulus(b),
        o => o,
    });
}

fn squarefree_roots(p: &[FieldElem]) -> Vec<FieldElem> {
    let n = p.len() - 1;
    if n == 1 {
        return vec![-(&p[0] / &p[1])];
    }
    for &prec in &[256usize, 1024, 4096] {
        let ctx = Ctx::new(prec);
        let per_emb: Vec<Vec<Fx>> = EMB
            .iter()
            .map(|&(s2, s3)| {
                let fp: Vec<Fx> = p.iter().map(|c| ctx.embed(c, s2, s3)).collect();
                durand_kerner(&ctx, &fp)
            })
            .collect();
        let tol = BigInt::one() << (ctx.p / 2);
        let mut found: Vec<FieldElem> = Vec::new();
        // A root of K appears at the (+,+) embedding; its conjugate images pin down the
        // matching root at the other embeddings, so combinations are enumerated.
        for z0 in &per_emb[0] {
            'combo: for z1 in &per_emb[1] {
                for z2 in &per_emb[2] {
                    for z3 in &per_emb[3] {
                        let cand = try_reconstruct(&ctx, [z0, z1, z2, z3]);
                        // cheap filter: the candidate must land back on the chosen roots
                        let back: Vec<Fx> = EMB.iter().map(|&(s2, s3)| ctx.embed(&cand, s2, s3)).collect();
                        if !(fx_close(&back[0], z0, &tol)
                            && fx_close(&back[1], z1, &tol)
                            && fx_close(&back[2], z2, &tol)
                            && fx_close(&back[3], z3, &tol))
                        {
                            continue;
                        }
                        if eval(p, &cand).is_zero() {
                            if !found.contains(&cand) {
                                found.push(cand);
                            }
                            break 'combo;
                        }
                    }
                }
            }
        }
        if found.len() == n || prec == 4096 {
            return found;
        }
    }
    vec![]
}

/// All n-th roots of x in K, in the order of `poly_roots`.
pub fn nth_roots(x: &FieldElem, n: u32) -> Vec<FieldElem> {
    if x.is_zero() {
        return vec![FieldElem::zero()];
    }
    let mut p = vec![FieldElem::zero(); n as usize + 1];
    p[0] = -x;
    p[n as usize] = FieldElem::one();
    poly_roots(&p)
}

/// The n-th root whose argument is smallest in [0, 2π), if any lies in K.
pub fn principal_root(x: &FieldElem, n: u32) -> Option<FieldElem> {
    nth_roots(x, n).into_iter().next()
}

pub fn sqrt(x: &FieldElem) -> Option<FieldElem> {
    principal_root(x, 2)
}
