use std::fmt;

use super::{AlgebraError, MultiLaurent};

/// Element `num / den` of the fraction field of [`MultiLaurent`].
///
/// No normal form is kept; equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: MultiLaurent,
    den: MultiLaurent,
}

impl RationalFn {
    pub fn new(num: MultiLaurent, den: MultiLaurent) -> Result<Self, AlgebraError> {
        num.check_nvars(&den)?;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: MultiLaurent) -> Self {
        let den = MultiLaurent::one(p.nvars());
        Self { num: p, den }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MultiLaurent {
        &self.num
    }

    pub fn den(&self) -> &MultiLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        Self {
            num: self.num.permute(perm),
            den: self.den.permute(perm),
        }
    }

    pub fn add(&self, other: &RationalFn) -> Result<Self, AlgebraError> {
        self.num.check_nvars(&other.num)?;
        if self.den == other.den {
            return Ok(Self {
                num: &self.num + &other.num,
                den: self.den.clone(),
            });
        }
        Ok(Self {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFn) -> Result<Self, AlgebraError> {
        self.num.check_nvars(&other.num)?;
        Ok(Self {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        })
    }

    pub fn mul_poly(&self, p: &MultiLaurent) -> Self {
        Self {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    pub fn div(&self, other: &RationalFn) -> Result<Self, AlgebraError> {
        self.num.check_nvars(&other.num)?;
        if other.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        })
    }

    /// Cross-multiplication equality.
    pub fn equals(&self, other: &RationalFn) -> bool {
        self.nvars() == other.nvars() && &self.num * &other.den == &other.num * &self.den
    }

    /// The polynomial `num / den`, if the division is exact.
    pub fn to_poly(&self) -> Result<MultiLaurent, AlgebraError> {
        self.num.div_exact(&self.den)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
