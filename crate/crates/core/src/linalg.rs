//! Dense matrices over exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("ragged rows")]
    Ragged,
    #[error("bad rational {0:?}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Result<Self, LinalgError> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Ragged);
        }
        let n = rows.len();
        Ok(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn same_shape(&self, o: &QMatrix) -> Result<(), LinalgError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(LinalgError::Shape(self.rows, self.cols, o.rows, o.cols));
        }
        Ok(())
    }

    pub fn add(&self, o: &QMatrix) -> Result<QMatrix, LinalgError> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Ok(QMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, o: &QMatrix) -> Result<QMatrix, LinalgError> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Ok(QMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &BigRational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::Shape(self.rows, self.cols, o.rows, o.cols));
        }
        let mut out = QMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Stacks `self` above `o`.
    pub fn vstack(&self, o: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != o.cols {
            return Err(LinalgError::Shape(self.rows, self.cols, o.rows, o.cols));
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(QMatrix { rows: self.rows + o.rows, cols: self.cols, data })
    }

    /// Places `self` left of `o`.
    pub fn hstack(&self, o: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.rows != o.rows {
            return Err(LinalgError::Shape(self.rows, self.cols, o.rows, o.cols));
        }
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(o.row(i)).cloned().collect())
            .collect();
        QMatrix::from_rows(rows, self.cols + o.cols)
    }

    /// Submatrix of the given row and column ranges.
    pub fn block(&self, r: std::ops::Range<usize>, c: std::ops::Range<usize>) -> QMatrix {
        let cols = c.len();
        let rows = r.map(|i| self.row(i)[c.clone()].to_vec()).collect();
        QMatrix::from_rows(rows, cols).expect("rectangular block")
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let x = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel as the columns of a `cols × nullity` matrix.
    pub fn kernel(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = QMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, BigRational::one());
            for (i, &p) in pivots.iter().enumerate() {
                out.set(p, k, -r.get(i, f));
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<QMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape(self.rows, self.cols, self.cols, self.rows));
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&QMatrix::identity(n))?.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Err(LinalgError::Singular);
        }
        Ok(r.block(0..n, n..2 * n))
    }

    /// The unique `x` with `self · x = b` for invertible `self`.
    pub fn solve(&self, b: &QMatrix) -> Result<QMatrix, LinalgError> {
        self.inverse()?.mul(b)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn max_abs_entry(&self) -> BigRational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Parses `"3"`, `"-2/5"`.
pub fn parse_rational(s: &str) -> Result<BigRational, LinalgError> {
    let bad = || LinalgError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Entries are JSON integers or strings such as `"1/2"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryWire {
    Int(i64),
    Str(String),
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<EntryWire>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| match (x.is_integer(), i64::try_from(x.to_integer())) {
                        (true, Ok(v)) => EntryWire::Int(v),
                        _ => EntryWire::Str(x.to_string()),
                    })
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rows: Vec<Vec<EntryWire>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| match e {
                        EntryWire::Int(v) => Ok(q(v)),
                        EntryWire::Str(s) => parse_rational(&s),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        QMatrix::from_rows(rows, cols).map_err(D::Error::custom)
    }
}
