use super::{BocherError, BocherMatrix};
use crate::exactfield::FieldElem;
use crate::symbolic::{qi, EpsSeries};

pub fn builtin_names() -> &'static [&'static str] {
    &[
        "identity",
        "form1",
        "form2",
        "form3",
        "form4",
        "H",
        "special_1111_to_211",
        "recipe_1111_to_211",
        "v1111_to_v31",
        "form1_printed",
        "form4_printed",
        "recipe_1111_to_211_printed",
    ]
}

/// Σ c·ε^n over the given terms.
fn lp(terms: &[(i64, FieldElem)]) -> EpsSeries {
    EpsSeries::from_terms(terms.iter().map(|(n, c)| (qi(*n), c.clone())))
}

fn f(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

fn half() -> FieldElem {
    FieldElem::frac(1, 2)
}

fn i() -> FieldElem {
    FieldElem::i()
}

fn z() -> EpsSeries {
    EpsSeries::zero()
}

fn one() -> EpsSeries {
    EpsSeries::one()
}

/// (ε^p + ε^−p)/2 and ∓i(ε^p − ε^−p)/2: the rotation block of exp(tC) with ε^p = e^{iλt}.
fn rot(p: i64) -> [[EpsSeries; 2]; 2] {
    let c = lp(&[(p, half()), (-p, half())]);
    let s = lp(&[(p, half()), (-p, -half())]);
    [[c.clone(), s.scale(&-i())], [s.scale(&i()), c]]
}

fn block(a: [[EpsSeries; 2]; 2], b: [[EpsSeries; 2]; 2]) -> [[EpsSeries; 4]; 4] {
    let mut m: [[EpsSeries; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| z()));
    for r in 0..2 {
        for c in 0..2 {
            m[r][c] = a[r][c].clone();
            m[r + 2][c + 2] = b[r][c].clone();
        }
    }
    m
}

fn id2() -> [[EpsSeries; 2]; 2] {
    [[one(), z()], [z(), one()]]
}

fn param(params: &[i64], k: usize, default: i64) -> i64 {
    params.get(k).copied().unwrap_or(default)
}

/// exp(tC4) with ε1 = ε^p1 = e^{iλt} and ε2 = ε^p2 = 1/t. `printed` reproduces the sign
/// pattern of the published matrix in entries (1,4), (2,3) and (4,2).
fn form4(p1: i64, p2: i64, printed: bool) -> [[EpsSeries; 4]; 4] {
    let h = half();
    let c = lp(&[(p1, h.clone()), (-p1, h.clone())]);
    let s = lp(&[(p1, h.clone()), (-p1, -h.clone())]); // (ε1 − 1/ε1)/2
    let u = lp(&[(-p1 - p2, h.clone())]); // 1/(2 ε1 ε2)
    let v = lp(&[(p1 - p2, h.clone())]); // ε1/(2 ε2)
    let si = s.scale(&i());
    let sign = |x: EpsSeries| if printed { x.neg() } else { x };
    [
        [c.clone(), u.clone(), u.scale(&i()), sign(si.neg())],
        [v.neg(), c.clone(), sign(si.neg()), v.scale(&i())],
        [v.scale(&-i()), si.clone(), c.clone(), v.neg()],
        [si, sign(u.scale(&-i())), u, c],
    ]
}

/// Built-in Bôcher matrices. `params` are integer exponents: form2 and form4 take
/// ε1 = ε^p1, ε2 = ε^p2 (default 1, 1).
pub fn builtin(name: &str, params: &[i64]) -> Result<BocherMatrix, BocherError> {
    let s2 = FieldElem::sqrt2();
    let r2 = s2.inv().expect("nonzero");
    let m = match name {
        "identity" => return Ok(BocherMatrix::identity()),
        "form1" => block(rot(1), id2()),
        "form1_printed" => block(rot(1), [[z(), z()], [z(), z()]]),
        "form2" => block(rot(param(params, 0, 1)), rot(param(params, 1, 1))),
        "form3" => [
            [lp(&[(0, f(1)), (-2, -half())]), lp(&[(-1, f(1))]), lp(&[(-2, &i() * &half())]), z()],
            [lp(&[(-1, f(-1))]), one(), lp(&[(-1, i())]), z()],
            [lp(&[(-2, &i() * &half())]), lp(&[(-1, -i())]), lp(&[(0, f(1)), (-2, half())]), z()],
            [z(), z(), z(), one()],
        ],
        "form4" => form4(param(params, 0, 1), param(params, 1, 1), false),
        "form4_printed" => form4(param(params, 0, 1), param(params, 1, 1), true),
        "H" => form4(0, 1, false),
        "special_1111_to_211" => {
            let c = lp(&[(1, half()), (-1, half())]);
            [
                [one(), z(), z(), z()],
                [z(), one(), z(), z()],
                [z(), z(), c.clone(), lp(&[(1, &-i() * &half()), (-1, &i() * &half())])],
                [z(), z(), lp(&[(1, &i() * &half()), (-1, &-i() * &half())]), c],
            ]
        }
        "recipe_1111_to_211" | "recipe_1111_to_211_printed" => {
            let x33 = if name.ends_with("printed") { &-i() * &r2 } else { -r2.clone() };
            [
                [one(), z(), z(), z()],
                [z(), one(), z(), z()],
                [z(), z(), lp(&[(-1, x33)]), lp(&[(-1, &-i() * &r2)])],
                [
                    z(),
                    z(),
                    lp(&[(-1, &i() * &r2), (1, &-i() * &r2)]),
                    lp(&[(-1, -r2.clone()), (1, -r2.clone())]),
                ],
            ]
        }
        "v1111_to_v31" => [
            [one(), z(), lp(&[(-1, f(1))]), lp(&[(-1, i())])],
            [z(), one(), z(), z()],
            [lp(&[(-1, f(-1))]), z(), lp(&[(0, f(1)), (-2, -half())]), lp(&[(-2, &-i() * &half())])],
            [lp(&[(-1, -i())]), z(), lp(&[(-2, &-i() * &half())]), lp(&[(0, f(1)), (-2, half())])],
        ],
        _ => return Err(BocherError::UnknownBuiltin(name.to_string())),
    };
    BocherMatrix::new(m)
}
