//! Casimir cubic forms, the block-triangular group G and its action, structure
//! equations, strata, and the Stäckel construction of free algebras.

mod matrix;
mod stackel;

pub use matrix::{CurveMat, Mat3};
pub use stackel::{c_var, stackel_free, stackel_post, stackel_ring, symbolic_c, PostStep, PARAM_VARS};

use crate::exactfield::FieldElem;
use crate::symbolic::{parse_poly, substitute_linear, EpsPoly, MultiPoly, SymError, XVARS};
use serde_json::Value;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QalgError {
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix is not in G (entries (3,1), (3,2) must vanish)")]
    NotInGroup,
    #[error("curve determinant is not a monomial in ε")]
    NonMonomialDeterminant,
    #[error("singular Stäckel transform")]
    SingularTransform,
    #[error("Casimir must be free (variables X1, X2, X3 only)")]
    NotFree,
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A Casimir F(L1, L2, H), stored with X3 in place of H. Extra variables
/// (parameters a1..a4, b) follow X1, X2, X3 in the variable list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Casimir {
    pub form: MultiPoly,
}

impl Casimir {
    pub fn new(form: MultiPoly) -> Self {
        assert!(form.nvars() >= 3 && form.vars()[..3] == ["X1", "X2", "X3"], "Casimir ring must start with X1, X2, X3");
        Casimir { form }
    }

    pub fn parse(src: &str) -> Result<Self, QalgError> {
        Ok(Casimir { form: parse_poly(src, &XVARS)? })
    }

    pub fn parse_with(src: &str, extra: &[&str]) -> Result<Self, QalgError> {
        let mut vars: Vec<&str> = XVARS.to_vec();
        vars.extend_from_slice(extra);
        Ok(Casimir { form: parse_poly(src, &vars)? })
    }

    pub fn zero() -> Self {
        Casimir { form: MultiPoly::zero(&XVARS) }
    }

    pub fn is_free(&self) -> bool {
        self.form.nvars() == 3 && self.form.is_homogeneous(3)
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    /// Coefficient of X1^a X2^b H^c.
    pub fn coeff(&self, a: u32, b: u32, c: u32) -> FieldElem {
        let mut m = vec![0; self.form.nvars()];
        m[0] = a;
        m[1] = b;
        m[2] = c;
        self.form.coeff(&m)
    }

    /// F^(i): the part of degree i in (X1, X2), so that F = Σ H^(3−i) F^(i).
    pub fn graded_part(&self, i: u32) -> MultiPoly {
        let mut r = self.form.zero_like();
        for (m, c) in self.form.terms() {
            if m[0] + m[1] == i {
                r.add_term(m.clone(), c.clone());
            }
        }
        r
    }

    /// Drop every term involving a variable beyond X1, X2, X3.
    pub fn free_part(&self) -> Casimir {
        let mut r = MultiPoly::zero(&XVARS);
        for (m, c) in self.form.terms() {
            if m[3..].iter().all(|&e| e == 0) {
                r.add_term(m[..3].to_vec(), c.clone());
            }
        }
        Casimir { form: r }
    }

    /// Substitute a value for a named parameter, removing it from the ring.
    pub fn specialize(&self, name: &str, v: &FieldElem) -> Casimir {
        let Some(k) = self.form.var_index(name) else {
            return self.clone();
        };
        let vars: Vec<String> = self.form.vars().iter().filter(|s| *s != name).cloned().collect();
        let mut r = MultiPoly::with_vars(vars);
        for (m, c) in self.form.terms() {
            let mut m2 = m.clone();
            let e = m2.remove(k);
            r.add_term(m2, c * &v.pow(e));
        }
        Casimir { form: r }
    }

    pub fn to_json(&self) -> Value {
        self.form.to_json()
    }

    pub fn from_json(v: &Value) -> Result<Self, QalgError> {
        let p = MultiPoly::from_json(v)?;
        if p.nvars() < 3 || p.vars()[..3] != ["X1", "X2", "X3"] {
            return Err(QalgError::Parse("Casimir variables must start with X1, X2, X3".into()));
        }
        Ok(Casimir { form: p })
    }
}

impl fmt::Display for Casimir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)
    }
}

impl fmt::Debug for Casimir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)
    }
}

/// (A·F)(x) = det(A₂)²·F(A⁻¹x). Extra (parameter) variables are left alone.
pub fn g_action(a: &Mat3, f: &Casimir) -> Result<Casimir, QalgError> {
    if !a.0[2][0].is_zero() || !a.0[2][1].is_zero() {
        return Err(QalgError::NotInGroup);
    }
    let inv = a.inverse()?;
    let d2 = a.det2();
    let p = &f.form;
    let images: Vec<MultiPoly> = (0..p.nvars())
        .map(|k| {
            if k < 3 {
                let mut e = p.zero_like();
                for j in 0..3 {
                    e = e.add(&p.var_like(j).scale(&inv.0[k][j]));
                }
                e
            } else {
                p.var_like(k)
            }
        })
        .collect();
    let g = p.compose(&images)?;
    Ok(Casimir { form: g.scale(&(&d2 * &d2)) })
}

/// The action of a curve A(ε), collected by powers of ε.
pub fn g_action_curve(a: &CurveMat, f: &Casimir) -> Result<EpsPoly, QalgError> {
    if !a.0[2][0].is_zero() || !a.0[2][1].is_zero() {
        return Err(QalgError::NotInGroup);
    }
    if f.form.nvars() != 3 {
        return Err(QalgError::NotFree);
    }
    let inv = a.inverse()?;
    let d2 = a.det2();
    let s = substitute_linear(&f.form, &inv.rows())?;
    Ok(s.scale_series(&d2.mul(&d2)))
}

/// {L1, R} = ½ ∂F/∂L2 and {L2, R} = −½ ∂F/∂L1.
pub fn structure_equations(f: &Casimir) -> (MultiPoly, MultiPoly) {
    let half = FieldElem::frac(1, 2);
    (f.form.derivative(1).scale(&half), f.form.derivative(0).scale(&(-half)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum Stratum {
    A1,
    A2,
    A3,
    B,
    C,
    D,
}

impl Stratum {
    /// Position in the hierarchy A1 → A2 → A3 → B → C → D.
    pub fn rank(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Stratum::A1 => "A1",
            Stratum::A2 => "A2",
            Stratum::A3 => "A3",
            Stratum::B => "B",
            Stratum::C => "C",
            Stratum::D => "D",
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Root multiplicity pattern of a X1³ + b X1²X2 + c X1X2² + d X2³ (nonzero form):
/// 1 for three distinct roots, 2 for a double root, 3 for a triple root.
pub fn cubic_root_pattern(a: &FieldElem, b: &FieldElem, c: &FieldElem, d: &FieldElem) -> u8 {
    let n = |k: i64| FieldElem::from_int(k);
    let disc = b * b * c * c - n(4) * a * c.pow(3) - n(4) * b.pow(3) * d - n(27) * a * a * d * d + n(18) * a * b * c * d;
    if !disc.is_zero() {
        return 1;
    }
    // Hessian covariant vanishes identically exactly for perfect cubes.
    let h0 = b * b - n(3) * a * c;
    let h1 = b * c - n(9) * a * d;
    let h2 = c * c - n(3) * b * d;
    if h0.is_zero() && h1.is_zero() && h2.is_zero() {
        3
    } else {
        2
    }
}

pub fn stratum(f: &Casimir) -> Stratum {
    let f3 = f.graded_part(3);
    if !f3.is_zero() {
        let (a, b, c, d) = (f.coeff(3, 0, 0), f.coeff(2, 1, 0), f.coeff(1, 2, 0), f.coeff(0, 3, 0));
        return match cubic_root_pattern(&a, &b, &c, &d) {
            1 => Stratum::A1,
            2 => Stratum::A2,
            _ => Stratum::A3,
        };
    }
    if !f.graded_part(2).is_zero() {
        Stratum::B
    } else if !f.graded_part(1).is_zero() {
        Stratum::C
    } else {
        Stratum::D
    }
}
