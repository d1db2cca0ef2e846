use crate::exactfield::{FieldElem, Q};
use crate::symbolic::EpsSeries;
use serde_json::Value;
use std::fmt;

use super::QalgError;

/// A constant 3×3 matrix over K.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[FieldElem; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        Self::diag(FieldElem::one(), FieldElem::one(), FieldElem::one())
    }

    pub fn diag(a: FieldElem, b: FieldElem, c: FieldElem) -> Self {
        let z = FieldElem::zero;
        Mat3([[a, z(), z()], [z(), b, z()], [z(), z(), c]])
    }

    pub fn from_rows(r: [[FieldElem; 3]; 3]) -> Self {
        Mat3(r)
    }

    pub fn from_ints(r: [[i64; 3]; 3]) -> Self {
        Mat3(r.map(|row| row.map(FieldElem::from_int)))
    }

    /// Embed a 2×2 block acting on (X1, X2), fixing H.
    pub fn block(m: [[FieldElem; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = m;
        let z = FieldElem::zero;
        Mat3([[a, b, z()], [c, d, z()], [z(), z(), FieldElem::one()]])
    }

    /// The matrix with (A·F)(x) = F(x − vH), i.e. X1 ↦ X1 − v1·H, X2 ↦ X2 − v2·H.
    pub fn translation(v1: FieldElem, v2: FieldElem) -> Self {
        let (o, z) = (FieldElem::one, FieldElem::zero);
        Mat3([[o(), z(), v1], [z(), o(), v2], [z(), z(), o()]])
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.0[i][j]
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut s = FieldElem::zero();
                for k in 0..3 {
                    s += &(&self.0[i][k] * &o.0[k][j]);
                }
                s
            })
        }))
    }

    pub fn det(&self) -> FieldElem {
        let m = &self.0;
        &m[0][0] * &(&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * &(&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * &(&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn det2(&self) -> FieldElem {
        &self.0[0][0] * &self.0[1][1] - &self.0[0][1] * &self.0[1][0]
    }

    pub fn inverse(&self) -> Result<Mat3, QalgError> {
        let d = self.det();
        let di = d.inv().map_err(|_| QalgError::SingularMatrix)?;
        let m = &self.0;
        let cof = |i: usize, j: usize| {
            let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let v = &m[r[0]][c[0]] * &m[r[1]][c[1]] - &m[r[0]][c[1]] * &m[r[1]][c[0]];
            if (i + j) % 2 == 0 {
                v
            } else {
                -v
            }
        };
        Ok(Mat3(std::array::from_fn(|i| std::array::from_fn(|j| &cof(j, i) * &di))))
    }

    pub fn is_in_group(&self) -> bool {
        self.0[2][0].is_zero() && self.0[2][1].is_zero() && !self.det().is_zero()
    }

    pub fn to_curve(&self) -> CurveMat {
        CurveMat(self.0.clone().map(|r| r.map(EpsSeries::constant)))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|r| Value::Array(r.iter().map(|x| x.to_json()).collect())).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, QalgError> {
        let rows = v.as_array().filter(|r| r.len() == 3).ok_or_else(|| QalgError::Parse("3×3 matrix".into()))?;
        let mut out = Mat3::identity();
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_array().filter(|r| r.len() == 3).ok_or_else(|| QalgError::Parse("matrix row".into()))?;
            for (j, x) in r.iter().enumerate() {
                out.0[i][j] = FieldElem::from_json(x).map_err(|e| QalgError::Parse(e.to_string()))?;
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}, {}, {}", r[0], r[1], r[2])?;
        }
        write!(f, "]")
    }
}

/// A 3×3 matrix of ε-series, an element of G for every small ε > 0.
#[derive(Clone, PartialEq, Eq)]
pub struct CurveMat(pub [[EpsSeries; 3]; 3]);

impl CurveMat {
    pub fn identity() -> Self {
        Mat3::identity().to_curve()
    }

    pub fn diag_eps(p: [Q; 3]) -> Self {
        let mut m = Self::zero();
        for (k, q) in p.into_iter().enumerate() {
            m.0[k][k] = EpsSeries::monomial(FieldElem::one(), q);
        }
        m
    }

    pub fn zero() -> Self {
        CurveMat(std::array::from_fn(|_| std::array::from_fn(|_| EpsSeries::zero())))
    }

    pub fn mul(&self, o: &CurveMat) -> CurveMat {
        CurveMat(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut s = EpsSeries::zero();
                for k in 0..3 {
                    s = s.add(&self.0[i][k].mul(&o.0[k][j]));
                }
                s
            })
        }))
    }

    pub fn det(&self) -> EpsSeries {
        let m = &self.0;
        let minor = |a: usize, b: usize, c: usize, d: usize| m[1][a].mul(&m[2][b]).sub(&m[1][c].mul(&m[2][d]));
        m[0][0]
            .mul(&minor(1, 2, 2, 1))
            .sub(&m[0][1].mul(&minor(0, 2, 2, 0)))
            .add(&m[0][2].mul(&minor(0, 1, 1, 0)))
    }

    pub fn det2(&self) -> EpsSeries {
        self.0[0][0].mul(&self.0[1][1]).sub(&self.0[0][1].mul(&self.0[1][0]))
    }

    /// Exact inverse when the determinant is a single monomial in ε.
    pub fn inverse(&self) -> Result<CurveMat, QalgError> {
        let d = self.det();
        if d.is_zero() {
            return Err(QalgError::SingularMatrix);
        }
        let di = d.inv_monomial().ok_or(QalgError::NonMonomialDeterminant)?;
        let m = &self.0;
        let cof = |i: usize, j: usize| {
            let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let v = m[r[0]][c[0]].mul(&m[r[1]][c[1]]).sub(&m[r[0]][c[1]].mul(&m[r[1]][c[0]]));
            if (i + j) % 2 == 0 {
                v
            } else {
                v.neg()
            }
        };
        Ok(CurveMat(std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i).mul(&di)))))
    }

    pub fn is_in_group(&self) -> bool {
        self.0[2][0].is_zero() && self.0[2][1].is_zero() && !self.det().is_zero()
    }

    pub fn reparam(&self, m: &Q) -> CurveMat {
        CurveMat(self.0.clone().map(|r| r.map(|s| s.reparam(m))))
    }

    pub fn rows(&self) -> Vec<Vec<EpsSeries>> {
        self.0.iter().map(|r| r.to_vec()).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|r| Value::Array(r.iter().map(|x| x.to_json()).collect())).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, QalgError> {
        let rows = v.as_array().filter(|r| r.len() == 3).ok_or_else(|| QalgError::Parse("3×3 matrix".into()))?;
        let mut out = Self::zero();
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_array().filter(|r| r.len() == 3).ok_or_else(|| QalgError::Parse("matrix row".into()))?;
            for (j, x) in r.iter().enumerate() {
                out.0[i][j] = EpsSeries::from_json(x).map_err(|e| QalgError::Parse(e.to_string()))?;
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for CurveMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}, {}, {}", r[0], r[1], r[2])?;
        }
        write!(f, "]")
    }
}
