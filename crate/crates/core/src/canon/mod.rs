//! Canonical forms of free Casimirs under G, with explicit witnesses.

mod table;

pub use table::{arg_below_pi, in_domain, template, Label, ALL_LABELS};

use crate::exactfield::roots::{nth_roots, poly_roots};
use crate::exactfield::FieldElem;
use crate::qalg::{cubic_root_pattern, g_action, Casimir, Mat3, QalgError};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonError {
    #[error("required roots do not lie in K")]
    RootsOutsideField,
    #[error("Casimir has symbolic parameters; specialize them first")]
    UnsupportedParameter,
    #[error("not a homogeneous cubic in X1, X2, X3")]
    NotCubic,
    #[error(transparent)]
    Qalg(#[from] QalgError),
}

/// Normal form class of the leading cubic F^(3).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeadingClass {
    /// X1 X2 (X1 + X2)
    C1,
    /// X1² X2
    C2,
    /// X1³
    C3,
    /// F^(3) = 0, with F^(2)/H brought to X1X2, X1² or left at 0.
    Zero(QuadClass),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadClass {
    X1X2,
    X1Sq,
    Zero,
}

/// The six elements of the stabilizer of X1X2(X1+X2) in GL2, in tie-break order.
pub fn omega() -> [[[i64; 2]; 2]; 6] {
    [[[0, 1], [1, 0]], [[0, 1], [-1, -1]], [[1, 0], [0, 1]], [[-1, -1], [0, 1]], [[1, 0], [-1, -1]], [[-1, -1], [1, 0]]]
}

fn block_i(m: [[i64; 2]; 2]) -> Mat3 {
    Mat3::block(m.map(|r| r.map(FieldElem::from_int)))
}

fn fe(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

fn z() -> FieldElem {
    FieldElem::zero()
}

fn one() -> FieldElem {
    FieldElem::one()
}

/// Running state: the transformed Casimir and the accumulated witness.
#[derive(Clone)]
struct St {
    f: Casimir,
    w: Mat3,
}

impl St {
    fn apply(&self, a: &Mat3) -> St {
        St { f: g_action(a, &self.f).expect("group element"), w: a.mul(&self.w) }
    }
    fn c(&self, a: u32, b: u32, c: u32) -> FieldElem {
        self.f.coeff(a, b, c)
    }
    fn c8(&self) -> FieldElem {
        self.c(1, 0, 2)
    }
    fn c9(&self) -> FieldElem {
        self.c(0, 1, 2)
    }
    fn c10(&self) -> FieldElem {
        self.c(0, 0, 3)
    }
}

fn div(a: &FieldElem, b: &FieldElem) -> FieldElem {
    a / b
}

fn roots_or_err(x: &FieldElem, n: u32) -> Result<Vec<FieldElem>, CanonError> {
    let r = nth_roots(x, n);
    if r.len() != n as usize {
        return Err(CanonError::RootsOutsideField);
    }
    Ok(r)
}

fn root_or_err(x: &FieldElem, n: u32) -> Result<FieldElem, CanonError> {
    nth_roots(x, n).into_iter().next().ok_or(CanonError::RootsOutsideField)
}

fn cmp_mod_arg(a: &FieldElem, b: &FieldElem) -> Ordering {
    a.cmp_modulus(b).then_with(|| a.cmp_arg_total(b))
}

/// Pick the first minimum under `cmp` (ties keep the earlier candidate).
fn pick<T>(cands: Vec<T>, cmp: impl Fn(&T, &T) -> Ordering) -> T {
    let mut it = cands.into_iter();
    let mut best = it.next().expect("nonempty candidate list");
    for c in it {
        if cmp(&c, &best) == Ordering::Less {
            best = c;
        }
    }
    best
}

/// |c8| max, arg c8 min, |c9| min, arg c9 min.
fn rtrp(a: &St, b: &St) -> Ordering {
    b.c8().cmp_modulus(&a.c8()).then_with(|| a.c8().cmp_arg_total(&b.c8())).then_with(|| cmp_mod_arg(&a.c9(), &b.c9()))
}

fn by_arg_c10(a: &St, b: &St) -> Ordering {
    a.c10().cmp_arg_total(&b.c10())
}

fn check_free(f: &Casimir) -> Result<(), CanonError> {
    if f.form.nvars() != 3 {
        return Err(CanonError::UnsupportedParameter);
    }
    if !f.form.is_zero() && !f.form.is_homogeneous(3) {
        return Err(CanonError::NotCubic);
    }
    Ok(())
}

/// Bring F^(3) to one of X1X2(X1+X2), X1²X2, X1³; when F^(3) = 0, bring F^(2) to X1X2·H or X1²·H.
pub fn leading_cubic_class(f: &Casimir) -> Result<(LeadingClass, Mat3), CanonError> {
    check_free(f)?;
    let st = St { f: f.clone(), w: Mat3::identity() };
    if f.graded_part(3).is_zero() {
        let (cls, s) = normalize_quadratic(st)?;
        return Ok((LeadingClass::Zero(cls), s.w));
    }
    let (cls, s) = normalize_cubic(st)?;
    Ok((cls, s.w))
}

fn normalize_cubic(mut st: St) -> Result<(LeadingClass, St), CanonError> {
    // make the X1³ coefficient nonzero with X2 ↦ X2 + s·X1
    if st.c(3, 0, 0).is_zero() {
        let cubic = |s: i64| {
            let s = fe(s);
            let t = [st.c(3, 0, 0), st.c(2, 1, 0), st.c(1, 2, 0), st.c(0, 3, 0)];
            &t[0] + &(&t[1] * &s) + &t[2] * &s.pow(2) + &t[3] * &s.pow(3)
        };
        let s = (1..=3).find(|&s| !cubic(s).is_zero()).expect("nonzero binary cubic");
        st = st.apply(&Mat3::block([[one(), z()], [fe(-s), one()]]));
    }
    let (a, b, c, d) = (st.c(3, 0, 0), st.c(2, 1, 0), st.c(1, 2, 0), st.c(0, 3, 0));
    let m2 = match cubic_root_pattern(&a, &b, &c, &d) {
        3 => {
            // a (X1 − r X2)³
            let r = -div(&b, &(&fe(3) * &a));
            [[a.inv().unwrap(), r], [z(), one()]]
        }
        2 => {
            let h = &b * &b - &fe(3) * &a * &c;
            let r = div(&(&fe(9) * &a * &d - &b * &c), &(&fe(2) * &h));
            let s = div(&(&fe(4) * &a * &b * &c - &fe(9) * &a * &a * &d - b.pow(3)), &(&a * &h));
            // rows: double factor, a · simple factor
            let l = [[one(), -r], [a.clone(), -(&a * &s)]];
            let dl = &l[0][0] * &l[1][1] - &l[0][1] * &l[1][0];
            mat2_mul(&inv2(&l), &[[one(), z()], [z(), &dl * &dl]])
        }
        _ => {
            let ts = poly_roots(&[d.clone(), c.clone(), b.clone(), a.clone()]);
            if ts.len() != 3 {
                return Err(CanonError::RootsOutsideField);
            }
            let (t1, t2, t3) = (&ts[0], &ts[1], &ts[2]);
            let beta = div(&(t3 - t1), &(t2 - t1));
            let alpha = &one() - &beta;
            let l = [[alpha.clone(), -(&alpha * t1)], [beta.clone(), -(&beta * t2)]];
            let k = div(&a, &(&alpha * &beta));
            let dl = &l[0][0] * &l[1][1] - &l[0][1] * &l[1][0];
            let tt = &k * &dl * &dl;
            inv2(&l).map(|r| r.map(|x| &x * &tt))
        }
    };
    let m = Mat3::block(m2);
    let st = st.apply(&m.inverse()?);
    let target = [
        (LeadingClass::C1, "X1*X2*(X1+X2)"),
        (LeadingClass::C2, "X1^2*X2"),
        (LeadingClass::C3, "X1^3"),
    ];
    let f3 = st.f.graded_part(3);
    for (cls, src) in target {
        if f3 == Casimir::parse(src).unwrap().form {
            return Ok((cls, st));
        }
    }
    unreachable!("cubic normalization reached {}", f3)
}

fn mat2_mul(a: &[[FieldElem; 2]; 2], b: &[[FieldElem; 2]; 2]) -> [[FieldElem; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j]))
}

fn inv2(a: &[[FieldElem; 2]; 2]) -> [[FieldElem; 2]; 2] {
    let d = (&a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]).inv().expect("invertible 2×2");
    [[&a[1][1] * &d, -(&a[0][1] * &d)], [-(&a[1][0] * &d), &a[0][0] * &d]]
}

fn normalize_quadratic(st: St) -> Result<(QuadClass, St), CanonError> {
    let (a, b, c) = (st.c(2, 0, 1), st.c(1, 1, 1), st.c(0, 2, 1));
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Ok((QuadClass::Zero, st));
    }
    let disc = &b * &b - &fe(4) * &a * &c;
    if !disc.is_zero() {
        let l = if !a.is_zero() {
            let ts = poly_roots(&[c.clone(), b.clone(), a.clone()]);
            if ts.len() != 2 {
                return Err(CanonError::RootsOutsideField);
            }
            [[one(), -ts[0].clone()], [a.clone(), -(&a * &ts[1])]]
        } else {
            [[z(), one()], [b.clone(), c.clone()]]
        };
        let st = st.apply(&Mat3::block(l));
        let k = st.c(1, 1, 1);
        let st = st.apply(&Mat3::diag(one(), one(), k));
        return Ok((QuadClass::X1X2, st));
    }
    let l = if !a.is_zero() { [[one(), div(&b, &(&fe(2) * &a))], [z(), one()]] } else { [[z(), one()], [one(), z()]] };
    let st = st.apply(&Mat3::block(l));
    let k = st.c(2, 0, 1);
    let st = st.apply(&Mat3::diag(one(), one(), k));
    Ok((QuadClass::X1Sq, st))
}

/// A canonical representative: table row, its parameters, and W with W·F = template.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub label: Label,
    pub params: BTreeMap<String, FieldElem>,
    pub witness: Mat3,
}

impl PartialEq for CanonicalForm {
    /// Same orbit: label and parameters agree (witnesses may differ).
    fn eq(&self, o: &Self) -> bool {
        self.label == o.label && self.params == o.params
    }
}

impl CanonicalForm {
    pub fn polynomial(&self) -> Casimir {
        template(self.label, &self.params)
    }

    pub fn to_json(&self) -> Value {
        let params: serde_json::Map<String, Value> = self.params.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        json!({ "label": self.label.as_str(), "params": params, "witness": self.witness.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self, String> {
        let label: Label = v["label"].as_str().ok_or("missing label")?.parse()?;
        let mut params = BTreeMap::new();
        if let Some(m) = v["params"].as_object() {
            for (k, x) in m {
                params.insert(k.clone(), FieldElem::from_json(x).map_err(|e| e.to_string())?);
            }
        }
        let witness = Mat3::from_json(&v["witness"]).map_err(|e| e.to_string())?;
        Ok(CanonicalForm { label, params, witness })
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if !ps.is_empty() {
            write!(f, " [{}]", ps.join(", "))?;
        }
        write!(f, ": {}", self.polynomial())
    }
}

fn finish(label: Label, st: St) -> CanonicalForm {
    let mut params = BTreeMap::new();
    for &p in label.params() {
        let v = match p {
            "c8" => st.c8(),
            "c9" => st.c9(),
            _ => st.c10(),
        };
        params.insert(p.to_string(), v);
    }
    // 2b lists c8 only in its extra orbit
    if label == Label::L2b && params["c8"].is_zero() {
        params.remove("c8");
    }
    let out = CanonicalForm { label, params, witness: st.w };
    assert_eq!(out.polynomial(), st.f, "canonical form does not match row {label}");
    out
}

/// Canonical form of a free Casimir, with a witness W such that W·F equals the row polynomial.
pub fn canonicalize(f: &Casimir) -> Result<CanonicalForm, CanonError> {
    check_free(f)?;
    let st = St { f: f.clone(), w: Mat3::identity() };
    if f.graded_part(3).is_zero() {
        return case4(st);
    }
    let (cls, st) = normalize_cubic(st)?;
    match cls {
        LeadingClass::C1 => case1(st),
        LeadingClass::C2 => case2(st),
        _ => case3(st),
    }
}

fn case1(st: St) -> Result<CanonicalForm, CanonError> {
    let st = st.apply(&Mat3::translation(st.c(0, 2, 1), st.c(2, 0, 1)));
    let c7 = st.c(1, 1, 1);
    if !c7.is_zero() {
        let st = st.apply(&Mat3::diag(one(), one(), c7));
        return Ok(finish(Label::L1d, pick(cands_1d(&st), cmp_1d)));
    }
    let c10 = st.c10();
    if !c10.is_zero() {
        let mut cands = Vec::new();
        for cc in roots_or_err(&c10, 3)? {
            cands.extend(cands_1a(&st.apply(&Mat3::diag(one(), one(), cc))));
        }
        return Ok(finish(Label::L1a, pick(cands, rtrp)));
    }
    if st.c8().is_zero() && st.c9().is_zero() {
        return Ok(finish(Label::L1c, st));
    }
    let best = pick(cands_1b(&st), cmp_1b);
    let s = root_or_err(&best.c8(), 2)?;
    Ok(finish(Label::L1b, best.apply(&Mat3::diag(one(), one(), s))))
}

/// Ω-images of a 1d form with c7 = 1, re-translated.
fn cands_1d(st: &St) -> Vec<St> {
    omega()
        .into_iter()
        .map(|om| {
            let g = st.apply(&block_i(om));
            let g = g.apply(&Mat3::translation(g.c(0, 2, 1), g.c(2, 0, 1)));
            debug_assert!(g.c(1, 1, 1).is_one());
            g
        })
        .collect()
}

fn cmp_1d(a: &St, b: &St) -> Ordering {
    rtrp(a, b).then_with(|| cmp_mod_arg(&a.c10(), &b.c10()))
}

/// Ω-images of a 1a form with c10 = 1 (cube roots of unity are handled by the caller).
fn cands_1a(st: &St) -> Vec<St> {
    omega().into_iter().map(|om| st.apply(&block_i(om))).collect()
}

/// Ω-images of a 1b form with X1 still present in the H² part.
fn cands_1b(st: &St) -> Vec<St> {
    omega().into_iter().map(|om| st.apply(&block_i(om))).filter(|g| !g.c8().is_zero()).collect()
}

// H ↦ sH with s² = c8 leaves c9/c8, so the choice is made on that ratio
fn cmp_1b(a: &St, b: &St) -> Ordering {
    cmp_mod_arg(&div(&a.c9(), &a.c8()), &div(&b.c9(), &b.c8()))
}

/// For the rows whose domain is "least under an ordering": no stabilizer image of the
/// template is strictly smaller.
pub(crate) fn least_in_orbit(label: Label, params: &BTreeMap<String, FieldElem>) -> bool {
    let st = St { f: template(label, params), w: Mat3::identity() };
    match label {
        Label::L1d => cands_1d(&st).iter().all(|g| cmp_1d(g, &st) != Ordering::Less),
        Label::L1b => cands_1b(&st).iter().all(|g| cmp_1b(g, &st) != Ordering::Less),
        Label::L1a => nth_roots(&one(), 3)
            .iter()
            .flat_map(|r| cands_1a(&st.apply(&Mat3::diag(one(), one(), r.clone()))))
            .all(|g| rtrp(&g, &st) != Ordering::Less),
        _ => true,
    }
}

fn case2(st: St) -> Result<CanonicalForm, CanonError> {
    let st = st.apply(&Mat3::translation(div(&st.c(1, 1, 1), &fe(2)), st.c(2, 0, 1)));
    let c6 = st.c(0, 2, 1);
    if !c6.is_zero() {
        let st = st.apply(&Mat3::diag(one(), one(), c6));
        let (c8, c9, c10) = (st.c8(), st.c9(), st.c10());
        // diag(r, 1, r²) scales H²X1, H²X2, H³ by r⁻³, r⁻², r⁻⁴
        let dr = |r: &FieldElem| Mat3::diag(r.clone(), one(), r.pow(2));
        if !c8.is_zero() {
            let cands: Vec<St> = roots_or_err(&c8, 3)?.iter().map(|r| st.apply(&dr(r))).collect();
            let best = pick(cands, |a, b| a.c9().cmp_arg_total(&b.c9()).then_with(|| by_arg_c10(a, b)));
            return Ok(finish(Label::L2c, best));
        }
        if !c9.is_zero() {
            let cands: Vec<St> = roots_or_err(&c9, 2)?.iter().map(|r| st.apply(&dr(r))).collect();
            return Ok(finish(Label::L2d, pick(cands, by_arg_c10)));
        }
        if !c10.is_zero() {
            let r = root_or_err(&c10, 4)?;
            return Ok(finish(Label::L2e, st.apply(&dr(&r))));
        }
        return Ok(finish(Label::L2e, st));
    }
    let (c8, c9, c10) = (st.c8(), st.c9(), st.c10());
    // diag(a, 1, c) scales H²X1, H²X2, H³ by a/c², a²/c², a²/c³
    let da = |a: FieldElem, c: FieldElem| Mat3::diag(a, one(), c);
    if !c8.is_zero() && !c9.is_zero() {
        let a = div(&c8, &c9);
        let cands: Vec<St> = roots_or_err(&(&a * &c8), 2)?.into_iter().map(|c| st.apply(&da(a.clone(), c))).collect();
        return Ok(finish(Label::L2a, pick(cands, by_arg_c10)));
    }
    if !c8.is_zero() {
        let (a, c) = if !c10.is_zero() {
            let c = div(&c8.pow(2), &c10);
            (div(&c.pow(2), &c8), c)
        } else {
            (c8.inv().unwrap(), one())
        };
        return Ok(finish(Label::L2b, st.apply(&da(a, c))));
    }
    if !c9.is_zero() {
        let c = if c10.is_zero() { one() } else { div(&c10, &c9) };
        let a = root_or_err(&div(&c.pow(2), &c9), 2)?;
        return Ok(finish(Label::L2b, st.apply(&da(a, c))));
    }
    if !c10.is_zero() {
        return Ok(finish(Label::L2b, st.apply(&da(c10.clone(), c10))));
    }
    Ok(finish(Label::L2b, st))
}

fn case3(st: St) -> Result<CanonicalForm, CanonError> {
    let st = st.apply(&Mat3::translation(div(&st.c(2, 0, 1), &fe(3)), z()));
    let (c6, c7) = (st.c(0, 2, 1), st.c(1, 1, 1));
    if !c6.is_zero() {
        let q = div(&c7, &(&fe(2) * &c6));
        let st = st.apply(&Mat3::from_rows([[one(), z(), z()], [q, one(), z()], [z(), z(), one()]]));
        let st = st.apply(&Mat3::translation(div(&st.c(2, 0, 1), &fe(3)), z()));
        let st = st.apply(&Mat3::diag(one(), one(), st.c(0, 2, 1)));
        let st = st.apply(&Mat3::translation(z(), div(&st.c9(), &fe(2))));
        // diag(d², d, d⁴) scales H²X1 by d⁻⁴ and H³ by d⁻⁶
        let dd = |d: &FieldElem| Mat3::diag(d.pow(2), d.clone(), d.pow(4));
        let (c8, c10) = (st.c8(), st.c10());
        if !c8.is_zero() {
            let cands: Vec<St> = roots_or_err(&c8, 4)?.iter().map(|d| st.apply(&dd(d))).collect();
            return Ok(finish(Label::L3f, pick(cands, by_arg_c10)));
        }
        if !c10.is_zero() {
            let d = root_or_err(&c10, 6)?;
            return Ok(finish(Label::L3e, st.apply(&dd(&d))));
        }
        return Ok(finish(Label::L3e, st));
    }
    if !c7.is_zero() {
        let st = st.apply(&Mat3::diag(one(), one(), c7));
        let (c8, c9) = (st.c8(), st.c9());
        // X1 ↦ X1 − v1 H, X2 ↦ X2 − q X1 − v2 H clears HX1², H²X1, H²X2
        let v1 = c9.clone();
        let q = -(&fe(3) * &c9);
        let v2 = &c8 + &(&fe(3) * &c9.pow(2));
        let s = Mat3::from_rows([[one(), z(), -v1], [-q, one(), -v2], [z(), z(), one()]]);
        let st = st.apply(&s.inverse()?);
        let c10 = st.c10();
        if c10.is_zero() {
            return Ok(finish(Label::L3d, st));
        }
        let d = root_or_err(&c10, 3)?;
        return Ok(finish(Label::L3d, st.apply(&Mat3::diag(d.pow(2), d.clone(), d.pow(3)))));
    }
    let (c8, c9, c10) = (st.c8(), st.c9(), st.c10());
    if !c9.is_zero() {
        let a = Mat3::from_rows([[one(), z(), z()], [div(&c8, &c9), one(), div(&c10, &c9)], [z(), z(), one()]]);
        let st = st.apply(&a);
        let d = st.c9().inv().unwrap();
        return Ok(finish(Label::L3c, st.apply(&Mat3::diag(d.pow(2), d.clone(), d.pow(2)))));
    }
    if !c8.is_zero() {
        let cands: Vec<St> = roots_or_err(&c8, 2)?.into_iter().map(|s| st.apply(&Mat3::diag(one(), one(), s))).collect();
        return Ok(finish(Label::L3a, pick(cands, by_arg_c10)));
    }
    if !c10.is_zero() {
        let d = root_or_err(&c10, 3)?;
        return Ok(finish(Label::L3b, st.apply(&Mat3::diag(one(), one(), d))));
    }
    Ok(finish(Label::L3b, st))
}

fn case4(st: St) -> Result<CanonicalForm, CanonError> {
    let (qc, st) = normalize_quadratic(st)?;
    match qc {
        QuadClass::X1X2 => {
            let st = st.apply(&Mat3::translation(st.c9(), st.c8()));
            let c10 = st.c10();
            if c10.is_zero() {
                return Ok(finish(Label::L4e, st));
            }
            Ok(finish(Label::L4e, st.apply(&Mat3::diag(c10.clone(), one(), c10))))
        }
        QuadClass::X1Sq => {
            let st = st.apply(&Mat3::translation(div(&st.c8(), &fe(2)), z()));
            let c9 = st.c9();
            if !c9.is_zero() {
                let st = st.apply(&Mat3::translation(z(), div(&st.c10(), &c9)));
                return Ok(finish(Label::L4a, st.apply(&Mat3::diag(c9.clone(), c9.clone(), c9.pow(2)))));
            }
            let c10 = st.c10();
            if c10.is_zero() {
                return Ok(finish(Label::L4c, st));
            }
            let s = root_or_err(&c10.inv().unwrap(), 2)?;
            Ok(finish(Label::L4c, st.apply(&Mat3::diag(s, one(), one()))))
        }
        QuadClass::Zero => {
            let (c8, c9, c10) = (st.c8(), st.c9(), st.c10());
            if !(c8.is_zero() && c9.is_zero()) {
                let l = if !c8.is_zero() { [[c8, c9], [z(), one()]] } else { [[c8, c9], [one(), z()]] };
                let st = st.apply(&Mat3::block(l));
                let k = st.c8();
                let st = st.apply(&Mat3::translation(div(&st.c10(), &k), z()));
                return Ok(finish(Label::L4f, st.apply(&Mat3::diag(k.inv().unwrap(), one(), one()))));
            }
            if c10.is_zero() {
                return Ok(finish(Label::L4g, st));
            }
            Ok(finish(Label::L4g, st.apply(&Mat3::diag(c10.clone(), one(), c10))))
        }
    }
}

/// Some W ∈ G with W·F = G, or None when the canonical forms differ.
pub fn isomorphic(f: &Casimir, g: &Casimir) -> Result<Option<Mat3>, CanonError> {
    let a = canonicalize(f)?;
    let b = canonicalize(g)?;
    if a != b {
        return Ok(None);
    }
    Ok(Some(b.witness.inverse()?.mul(&a.witness)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cas(s: &str) -> Casimir {
        Casimir::parse(s).unwrap()
    }

    fn params(kv: &[(&str, FieldElem)]) -> BTreeMap<String, FieldElem> {
        kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn residual_symmetries_shrink_domains() {
        let w = &FieldElem::frac(-1, 2) + &(&FieldElem::i() * &FieldElem::sqrt3() * &FieldElem::frac(1, 2));
        assert!(in_domain(Label::L2c, &params(&[("c9", one()), ("c10", z())])));
        assert!(!in_domain(Label::L2c, &params(&[("c9", w.clone()), ("c10", z())])));
        assert!(!in_domain(Label::L2c, &params(&[("c9", z()), ("c10", &w * &w)])));
        assert!(in_domain(Label::L2a, &params(&[("c10", FieldElem::i())])));
        assert!(!in_domain(Label::L2a, &params(&[("c10", fe(-1))])));
        // every template sample that is in its domain is a fixed point
        for label in [Label::L1a, Label::L1b, Label::L1d, Label::L2a, Label::L2c] {
            for v in [z(), one(), fe(-1), FieldElem::i(), fe(2)] {
                let p: BTreeMap<_, _> = label.params().iter().map(|k| (k.to_string(), v.clone())).collect();
                if !in_domain(label, &p) {
                    continue;
                }
                let f = template(label, &p);
                if let Ok(c) = canonicalize(&f) {
                    assert_eq!(c.label, label, "{label:?} {p:?}");
                    assert_eq!(template(c.label, &c.params), f, "{label:?} {p:?}");
                }
            }
        }
    }

    #[test]
    fn omega_stabilizes_c1() {
        let c1 = cas("X1*X2*(X1+X2)");
        for om in omega() {
            assert_eq!(g_action(&block_i(om), &c1).unwrap(), c1);
        }
    }

    #[test]
    fn leading_classes() {
        let (c, w) = leading_cubic_class(&cas("X1*X2*(X1-X2)")).unwrap();
        assert_eq!(c, LeadingClass::C1);
        assert_eq!(g_action(&w, &cas("X1*X2*(X1-X2)")).unwrap().graded_part(3), cas("X1*X2*(X1+X2)").form);
        assert_eq!(leading_cubic_class(&cas("X2^3 + X3^3")).unwrap().0, LeadingClass::C3);
        assert_eq!(leading_cubic_class(&cas("X1*X2^2")).unwrap().0, LeadingClass::C2);
        assert_eq!(leading_cubic_class(&cas("X3*(X1^2+X2^2)")).unwrap().0, LeadingClass::Zero(QuadClass::X1X2));
        assert_eq!(leading_cubic_class(&cas("X3^2*X1")).unwrap().0, LeadingClass::Zero(QuadClass::Zero));
    }

    #[test]
    fn flat_examples() {
        let e2 = canonicalize(&cas("X1^2*(X3+X1)")).unwrap();
        assert_eq!(e2.label, Label::L3a);
        // 2i/(3√3) = 2i√3/9
        assert_eq!(e2.params["c10"], &FieldElem::frac(2, 9) * &(&FieldElem::i() * &FieldElem::sqrt3()));
        assert_eq!(canonicalize(&cas("X1^3")).unwrap().label, Label::L3b);
        assert_eq!(canonicalize(&cas("X1*X3^2")).unwrap().label, Label::L4f);
        assert_eq!(canonicalize(&Casimir::zero()).unwrap().label, Label::L4g);
        let e20 = canonicalize(&cas("X3*(X1^2+X2^2)")).unwrap();
        assert_eq!(e20.label, Label::L4e);
        assert!(e20.params.values().all(|v| v.is_zero()));
    }

    #[test]
    fn witnesses_are_sound() {
        for s in ["X1*X2*(X1+X2) + X3*X1*X2 + 1/16*X1*X2*X3", "X1^2*X2 + X1*X2^2 + 1/16*X1*X2*X3", "X1*X2^2 + X1*X2*X3 + X2*X3^2 - X3^3"] {
            let f = cas(s);
            let c = canonicalize(&f).unwrap();
            assert_eq!(g_action(&c.witness, &f).unwrap(), c.polynomial());
        }
    }

    #[test]
    fn outside_field_is_reported() {
        assert_eq!(canonicalize(&cas("X1^3 - 2*X2^3")).unwrap_err(), CanonError::RootsOutsideField);
        let p = Casimir::parse_with("b*X1^3", &["b"]).unwrap();
        assert_eq!(canonicalize(&p).unwrap_err(), CanonError::UnsupportedParameter);
    }

    #[test]
    fn json_round_trip() {
        let c = canonicalize(&cas("X1^2*(X3+X1)")).unwrap();
        let back = CanonicalForm::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.witness, c.witness);
    }
}
