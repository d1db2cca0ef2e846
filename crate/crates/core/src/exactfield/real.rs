//! The real subfield Q(√2, √3) in the basis (1, √2, √3, √6), with exact signs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

pub type Q = BigRational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Real(pub [Q; 4]);

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

impl Real {
    pub fn zero() -> Self {
        Real([Q::zero(), Q::zero(), Q::zero(), Q::zero()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Real) -> Real {
        Real([
            &self.0[0] + &o.0[0],
            &self.0[1] + &o.0[1],
            &self.0[2] + &o.0[2],
            &self.0[3] + &o.0[3],
        ])
    }

    pub fn sub(&self, o: &Real) -> Real {
        Real([
            &self.0[0] - &o.0[0],
            &self.0[1] - &o.0[1],
            &self.0[2] - &o.0[2],
            &self.0[3] - &o.0[3],
        ])
    }

    pub fn neg(&self) -> Real {
        Real([-&self.0[0], -&self.0[1], -&self.0[2], -&self.0[3]])
    }

    pub fn mul(&self, o: &Real) -> Real {
        let [a0, a1, a2, a3] = &self.0;
        let [b0, b1, b2, b3] = &o.0;
        // √2·√6 = 2√3, √3·√6 = 3√2, √2·√3 = √6
        let c0 = a0 * b0 + q(2) * (a1 * b1) + q(3) * (a2 * b2) + q(6) * (a3 * b3);
        let c1 = a0 * b1 + a1 * b0 + q(3) * (a2 * b3 + a3 * b2);
        let c2 = a0 * b2 + a2 * b0 + q(2) * (a1 * b3 + a3 * b1);
        let c3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1;
        Real([c0, c1, c2, c3])
    }

    /// Write self = u + v√3 with u, v in Q(√2), each as (rational, √2-coefficient).
    fn split3(&self) -> ((Q, Q), (Q, Q)) {
        let [a0, a1, a2, a3] = self.0.clone();
        ((a0, a1), (a2, a3))
    }

    pub fn inv(&self) -> Option<Real> {
        if self.is_zero() {
            return None;
        }
        // (u + v√3)⁻¹ = (u − v√3) / (u² − 3v²), and u² − 3v² lies in Q(√2).
        let ((u0, u1), (v0, v1)) = self.split3();
        let n0 = &u0 * &u0 + q(2) * (&u1 * &u1) - q(3) * (&v0 * &v0 + q(2) * (&v1 * &v1));
        let n1 = q(2) * (&u0 * &u1) - q(6) * (&v0 * &v1);
        let d = &n0 * &n0 - q(2) * (&n1 * &n1);
        let m0 = &n0 / &d;
        let m1 = -&n1 / &d;
        let conj = Real([u0, u1, -v0, -v1]);
        Some(conj.mul(&Real([m0, m1, Q::zero(), Q::zero()])))
    }

    pub fn signum(&self) -> i32 {
        let ((u0, u1), (v0, v1)) = self.split3();
        let su = sign2(&u0, &u1);
        let sv = sign2(&v0, &v1);
        if sv == 0 || su == sv {
            return su;
        }
        if su == 0 {
            return sv;
        }
        // Opposite signs: the larger of u² and 3v² wins.
        let d0 = &u0 * &u0 + q(2) * (&u1 * &u1) - q(3) * (&v0 * &v0 + q(2) * (&v1 * &v1));
        let d1 = q(2) * (&u0 * &u1) - q(6) * (&v0 * &v1);
        if sign2(&d0, &d1) > 0 {
            su
        } else {
            sv
        }
    }

    pub fn cmp_zero(&self) -> Ordering {
        self.signum().cmp(&0)
    }

    pub fn to_f64(&self) -> f64 {
        let f = |x: &Q| num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN);
        f(&self.0[0])
            + f(&self.0[1]) * 2f64.sqrt()
            + f(&self.0[2]) * 3f64.sqrt()
            + f(&self.0[3]) * 6f64.sqrt()
    }
}

/// Sign of a + b√2.
fn sign2(a: &Q, b: &Q) -> i32 {
    let sa = sgn(a);
    let sb = sgn(b);
    if sb == 0 || sa == sb {
        return sa;
    }
    if sa == 0 {
        return sb;
    }
    let d = a * a - q(2) * (b * b);
    if d.is_positive() {
        sa
    } else {
        sb
    }
}

fn sgn(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64, c: i64, d: i64) -> Real {
        Real([q(a), q(b), q(c), q(d)])
    }

    #[test]
    fn sign_of_near_cancellations() {
        // 5 − 2√6 = (√3 − √2)² > 0
        assert_eq!(r(5, 0, 0, -2).signum(), 1);
        // √2 + √3 − √6 − 0.5 > 0 (≈ 0.197)
        assert_eq!(Real([Q::new(BigInt::from(-1), BigInt::from(2)), q(1), q(1), q(-1)]).signum(), 1);
        // 7 − 4√3 > 0, 7 − 5√2 < 0
        assert_eq!(r(7, 0, -4, 0).signum(), 1);
        assert_eq!(r(7, -5, 0, 0).signum(), -1);
        assert_eq!(Real::zero().signum(), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let x = r(1, 2, -3, 1);
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), r(1, 0, 0, 0));
    }
}
