use std::fmt;

use super::{AlgebraError, LaurentQ, MultiLaurent};

/// Truncated power series `Σ_{k=0..order} c_k y^k` with [`MultiLaurent`] coefficients.
///
/// `y` stands for `z^{-1}` in expansions at infinity and for `z` at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    nvars: usize,
    coeffs: Vec<MultiLaurent>,
}

impl Series {
    pub fn from_coeffs(nvars: usize, order: usize, coeffs: Vec<MultiLaurent>) -> Result<Self, AlgebraError> {
        let mut c = Vec::with_capacity(order + 1);
        for (k, x) in coeffs.into_iter().enumerate() {
            if x.nvars() != nvars {
                return Err(AlgebraError::NvarsMismatch(nvars, x.nvars()));
            }
            if k <= order {
                c.push(x);
            }
        }
        c.resize(order + 1, MultiLaurent::zero(nvars));
        Ok(Self { nvars, coeffs: c })
    }

    pub fn constant(c: MultiLaurent, order: usize) -> Self {
        let nvars = c.nvars();
        let mut coeffs = vec![MultiLaurent::zero(nvars); order + 1];
        coeffs[0] = c;
        Self { nvars, coeffs }
    }

    pub fn one(nvars: usize, order: usize) -> Self {
        Self::constant(MultiLaurent::one(nvars), order)
    }

    /// `c0 + c1 y`.
    pub fn linear(c0: MultiLaurent, c1: MultiLaurent, order: usize) -> Self {
        let nvars = c0.nvars();
        let mut s = Self::constant(c0, order);
        if order >= 1 {
            s.coeffs[1] = c1;
        }
        Self { nvars, coeffs: s.coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiLaurent] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &MultiLaurent {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<MultiLaurent> {
        self.coeffs
    }

    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut out = vec![MultiLaurent::zero(self.nvars); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if !other.coeffs[j].is_zero() {
                    out[i + j] += &(&self.coeffs[i] * &other.coeffs[j]);
                }
            }
        }
        Series { nvars: self.nvars, coeffs: out }
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        Series { nvars: self.nvars, coeffs }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect();
        Series { nvars: self.nvars, coeffs }
    }

    pub fn scale(&self, c: &MultiLaurent) -> Series {
        Series {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Inverse, defined when the constant term is a unit `± q^k x^e`.
    pub fn inverse(&self) -> Result<Series, AlgebraError> {
        let inv0 = self.coeffs[0].unit_inverse().ok_or(AlgebraError::NotExact)?;
        let order = self.order();
        let mut out: Vec<MultiLaurent> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for k in 1..=order {
            let mut acc = MultiLaurent::zero(self.nvars);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(-&(&acc * &inv0));
        }
        Ok(Series { nvars: self.nvars, coeffs: out })
    }

    pub fn div(&self, other: &Series) -> Result<Series, AlgebraError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Integer power; negative powers go through [`Series::inverse`].
    pub fn powi(&self, e: i32) -> Result<Series, AlgebraError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Series::one(self.nvars, self.order());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Substitute `y -> q^k y`.
    pub fn subs_y_qpow(&self, k: i32) -> Series {
        Series {
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.shift_q(k * n as i32))
                .collect(),
        }
    }

    pub fn scale_q(&self, c: &LaurentQ) -> Series {
        Series {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("[{c}]*y^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0 + O(y^{})", self.order() + 1)
        } else {
            write!(f, "{} + O(y^{})", parts.join(" + "), self.order() + 1)
        }
    }
}
