//! Sparse polynomials over K, ε-series with rational exponents, and leading-order limits.

mod poly;
mod rational;
mod series;

pub use poly::{Monomial, MultiPoly};
pub use rational::{rational_leading, reduce_null_cone, RationalExpr, RationalFn};
pub use series::{eps_limit, qi, substitute_linear, EpsPoly, EpsSeries};

use crate::exactfield::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("divergent limit: a term of order {order} survives")]
    DivergentLimit { order: Q },
    #[error("leading coefficient of the denominator vanishes")]
    ZeroDenominatorLeading,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Variables of the Casimir ring; X3 plays the role of H.
pub const XVARS: [&str; 3] = ["X1", "X2", "X3"];

/// Parse a small polynomial expression such as "X1^2*X2 - 1/16*X1*X3^2 + i*X3^3".
///
/// Coefficient atoms: integers, rationals p/q, `i`, `s2`, `s3`, `s6` (√2, √3, √6).
/// Supports + − * ^ and parentheses; exponents are nonnegative integers.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<MultiPoly, SymError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, vars };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(SymError::Parse(format!("trailing input in {src:?}")));
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, SymError> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Num(txt.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_' || cs[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(SymError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.vars)
    }

    fn expr(&mut self) -> Result<MultiPoly, SymError> {
        let mut acc = self.zero();
        let mut sign = 1;
        if let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            sign = if *c == '-' { -1 } else { 1 };
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            match self.peek() {
                Some(Tok::Op('+')) => sign = 1,
                Some(Tok::Op('-')) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly, SymError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.mul(&f);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let f = self.power()?;
                    let c = f
                        .terms()
                        .next()
                        .filter(|(m, _)| f.len() == 1 && m.iter().all(|&e| e == 0))
                        .map(|(_, c)| c.clone())
                        .ok_or_else(|| SymError::Parse("division by a non-constant".into()))?;
                    let ci = c.inv().map_err(|e| SymError::Parse(e.to_string()))?;
                    acc = acc.scale(&ci);
                }
                Some(Tok::Ident(_)) | Some(Tok::Num(_)) | Some(Tok::Op('(')) => {
                    let f = self.power()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly, SymError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| SymError::Parse("exponent".into()))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(SymError::Parse("expected exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, SymError> {
        use crate::exactfield::FieldElem;
        let z = self.zero();
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(z.constant_like(FieldElem::from_q(Q::from_integer(n))))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if let Some(k) = self.vars.iter().position(|v| *v == id) {
                    return Ok(z.var_like(k));
                }
                let c = match id.as_str() {
                    "i" => FieldElem::i(),
                    "s2" => FieldElem::sqrt2(),
                    "s3" => FieldElem::sqrt3(),
                    "s6" => FieldElem::sqrt6(),
                    _ => return Err(SymError::Parse(format!("unknown symbol {id}"))),
                };
                Ok(z.constant_like(c))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.toks.get(self.pos) != Some(&Tok::Op(')')) {
                    return Err(SymError::Parse("missing )".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            other => Err(SymError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rat, FieldElem};

    fn x(s: &str) -> MultiPoly {
        parse_poly(s, &XVARS).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let p = x("X1^2*X2 + X1*X2^2 + 1/16*X1*X2*X3");
        assert_eq!(p.coeff(&[1, 1, 1]), FieldElem::frac(1, 16));
        assert_eq!(x("2 i s3 X3^3").coeff(&[0, 0, 3]), FieldElem::i() * FieldElem::sqrt3() * FieldElem::from_int(2));
        assert_eq!(x("(X1 + X2)^2 - X1^2 - X2^2"), x("2 X1 X2"));
        assert_eq!(x("-X1/4").coeff(&[1, 0, 0]), FieldElem::frac(-1, 4));
    }

    #[test]
    fn identity_and_diagonal_substitution() {
        let p = x("X1^2*X2");
        let id: Vec<Vec<EpsSeries>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { EpsSeries::one() } else { EpsSeries::zero() }).collect())
            .collect();
        assert_eq!(eps_limit(&substitute_linear(&p, &id).unwrap()).unwrap(), p);
        let mut d = id.clone();
        d[2][2] = EpsSeries::eps(1);
        let r = substitute_linear(&x("X1*X2*X3"), &d).unwrap();
        assert_eq!(r.min_order(), Some(qi(1)));
        assert_eq!(r.part(&qi(1)), x("X1*X2*X3"));
    }

    #[test]
    fn limits() {
        let vars: Vec<String> = XVARS.iter().map(|s| s.to_string()).collect();
        let s = EpsPoly::from_parts(&vars, [(qi(1), x("X1")), (qi(0), x("X2"))]);
        assert_eq!(eps_limit(&s).unwrap(), x("X2"));
        let s = EpsPoly::from_parts(&vars, [(qi(-1), x("X1"))]);
        assert!(matches!(eps_limit(&s), Err(SymError::DivergentLimit { .. })));
        let s = EpsPoly::from_parts(&vars, [(rat(-3, 2), x("X1")), (rat(-3, 2), x("-X1"))]);
        assert_eq!(eps_limit(&s).unwrap(), x("0"));
    }

    #[test]
    fn leading_of_quotients() {
        let v = ["x"];
        let xp = parse_poly("x", &v).unwrap();
        let one = parse_poly("1", &v).unwrap();
        let names: Vec<String> = vec!["x".into()];
        let num = EpsPoly::from_parts(&names, [(qi(1), xp.clone())]);
        let den = EpsPoly::from_parts(&names, [(qi(0), one.clone()), (qi(1), one.clone())]);
        let (o, l) = rational_leading(&RationalExpr::new(num, den).unwrap()).unwrap();
        assert_eq!(o, qi(1));
        assert!(l.equals(&RationalFn::poly(xp.clone())));
        let r = RationalExpr::from_fn(&RationalFn::new(xp.clone(), xp.clone()).unwrap());
        let (o, l) = rational_leading(&r).unwrap();
        assert_eq!(o, qi(0));
        assert!(l.equals(&RationalFn::poly(one)));
    }

    #[test]
    fn null_cone_rewrite() {
        let v = ["y1", "y2", "y3", "y4"];
        let p = parse_poly("y1^2 + y2^2 + y3^2 + y4^2", &v).unwrap();
        assert!(reduce_null_cone(&p, &[0, 1, 2, 3], 3).is_zero());
        let q = parse_poly("y4^3", &v).unwrap();
        assert_eq!(reduce_null_cone(&q, &[0, 1, 2, 3], 3), parse_poly("-(y1^2+y2^2+y3^2)*y4", &v).unwrap());
    }
}
