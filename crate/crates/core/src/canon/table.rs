use crate::exactfield::FieldElem;
use crate::qalg::Casimir;
use crate::symbolic::{MultiPoly, XVARS};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Row labels of the canonical-form table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    L1a,
    L1b,
    L1c,
    L1d,
    L2a,
    L2b,
    L2c,
    L2d,
    L2e,
    L3a,
    L3b,
    L3c,
    L3d,
    L3e,
    L3f,
    L3g,
    L4a,
    L4b,
    L4c,
    L4d,
    L4e,
    L4f,
    L4g,
}

pub const ALL_LABELS: [Label; 23] = [
    Label::L1a,
    Label::L1b,
    Label::L1c,
    Label::L1d,
    Label::L2a,
    Label::L2b,
    Label::L2c,
    Label::L2d,
    Label::L2e,
    Label::L3a,
    Label::L3b,
    Label::L3c,
    Label::L3d,
    Label::L3e,
    Label::L3f,
    Label::L3g,
    Label::L4a,
    Label::L4b,
    Label::L4c,
    Label::L4d,
    Label::L4e,
    Label::L4f,
    Label::L4g,
];

impl Label {
    pub fn as_str(self) -> &'static str {
        use Label::*;
        match self {
            L1a => "1a",
            L1b => "1b",
            L1c => "1c",
            L1d => "1d",
            L2a => "2a",
            L2b => "2b",
            L2c => "2c",
            L2d => "2d",
            L2e => "2e",
            L3a => "3a",
            L3b => "3b",
            L3c => "3c",
            L3d => "3d",
            L3e => "3e",
            L3f => "3f",
            L3g => "3g",
            L4a => "4a",
            L4b => "4b",
            L4c => "4c",
            L4d => "4d",
            L4e => "4e",
            L4f => "4f",
            L4g => "4g",
        }
    }

    /// Free parameters of the row (2b also carries c8 ∈ {0, 1}).
    pub fn params(self) -> &'static [&'static str] {
        use Label::*;
        match self {
            L1a => &["c8", "c9"],
            L1b => &["c9"],
            L1c | L3c | L4a | L4f => &[],
            L1d => &["c8", "c9", "c10"],
            L2b => &["c8", "c9", "c10"],
            L2c => &["c9", "c10"],
            L4e => &["c8", "c10"],
            _ => &["c10"],
        }
    }

    /// Table text of the row polynomial, with H written as X3.
    pub fn template_src(self) -> &'static str {
        use Label::*;
        match self {
            L1a => "X1*X2*(X1+X2) + c8*X1*X3^2 + c9*X2*X3^2 + X3^3",
            L1b => "X1*X2*(X1+X2) + X1*X3^2 + c9*X2*X3^2",
            L1c => "X1*X2*(X1+X2)",
            L1d => "X1*X2*(X1+X2) + X3*X1*X2 + c8*X1*X3^2 + c9*X2*X3^2 + c10*X3^3",
            L2a => "X1^2*X2 + X1*X3^2 + X2*X3^2 + c10*X3^3",
            L2b => "X1^2*X2 + c8*X1*X3^2 + c9*X2*X3^2 + c10*X3^3",
            L2c => "X1^2*X2 + X3*X2^2 + X1*X3^2 + c9*X2*X3^2 + c10*X3^3",
            L2d => "X1^2*X2 + X3*X2^2 + X2*X3^2 + c10*X3^3",
            L2e => "X1^2*X2 + X3*X2^2 + c10*X3^3",
            L3a => "X1^3 + X1*X3^2 + c10*X3^3",
            L3b => "X1^3 + c10*X3^3",
            L3c => "X1^3 + X2*X3^2",
            L3d => "X1^3 + X3*X1*X2 + c10*X3^3",
            L3e => "X1^3 + X3*X2^2 + c10*X3^3",
            L3f => "X1^3 + X3*X2^2 + X1*X3^2 + c10*X3^3",
            L3g => "X1^3 + X3*X1*X2 + X3*X2^2 + c10*X3^3",
            L4a => "X3*X1^2 + X3^2*X2",
            L4b => "X3*X1^2 + X3^2*X1 + c10*X3^3",
            L4c => "X3*X1^2 + c10*X3^3",
            L4d => "X3*X1*X2 + X3^2*(X1+X2) + c10*X3^3",
            L4e => "X3*X1*X2 + c8*X3^2*X1 + c10*X3^3",
            L4f => "X3^2*X1",
            L4g => "c10*X3^3",
        }
    }

    /// Leading class digit (1..4).
    pub fn case(self) -> u8 {
        self.as_str().as_bytes()[0] - b'0'
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ALL_LABELS.iter().copied().find(|l| l.as_str() == s).ok_or_else(|| format!("unknown label {s}"))
    }
}

/// Instantiate a table row. Missing parameters default to 0.
pub fn template(label: Label, params: &BTreeMap<String, FieldElem>) -> Casimir {
    let vars = ["X1", "X2", "X3", "c8", "c9", "c10"];
    let p = crate::symbolic::parse_poly(label.template_src(), &vars).expect("table rows parse");
    let get = |k: &str| params.get(k).cloned().unwrap_or_else(FieldElem::zero);
    let (c8, c9, c10) = (get("c8"), get("c9"), get("c10"));
    let mut out = MultiPoly::zero(&XVARS);
    for (m, c) in p.terms() {
        let v = c * &c8.pow(m[3]) * c9.pow(m[4]) * c10.pow(m[5]);
        out.add_term(m[..3].to_vec(), v);
    }
    Casimir::new(out)
}

fn in01(x: &FieldElem) -> bool {
    x.is_zero() || x.is_one()
}

/// arg(x) ∈ [0, π), with 0 admitted.
pub fn arg_below_pi(x: &FieldElem) -> bool {
    x.is_zero() || x.cmp_arg(&FieldElem::from_int(-1)).unwrap() == Ordering::Less
}

/// arg(x) ∈ [0, 2π/3), with 0 admitted.
fn arg_below_two_thirds_pi(x: &FieldElem) -> bool {
    let omega = &FieldElem::frac(-1, 2) + &(&FieldElem::i() * &FieldElem::sqrt3() * &FieldElem::frac(1, 2));
    x.is_zero() || x.cmp_arg(&omega).unwrap() == Ordering::Less
}

/// Parameter domain of each row, including the residual symmetries of 2a, 2c and 3f.
pub fn in_domain(label: Label, params: &BTreeMap<String, FieldElem>) -> bool {
    let z = FieldElem::zero();
    let get = |k: &str| params.get(k).unwrap_or(&z);
    use Label::*;
    match label {
        L2b => {
            let (c8, c9, c10) = (get("c8"), get("c9"), get("c10"));
            in01(c8) && in01(c9) && in01(c10) && !(c8.is_one() && c9.is_one())
        }
        L2e | L3b | L3d | L3e | L4c | L4g => in01(get("c10")),
        L4e => in01(get("c8")) && in01(get("c10")),
        L3a | L3f | L2a => arg_below_pi(get("c10")),
        // μ3 acts by c9 ↦ ωc9, c10 ↦ ω²c10
        L2c if !get("c9").is_zero() => arg_below_two_thirds_pi(get("c9")),
        L2c => arg_below_two_thirds_pi(get("c10")),
        L1a | L1b | L1d => super::least_in_orbit(label, params),
        _ => true,
    }
}
