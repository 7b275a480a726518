use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Laurent polynomial in `q` with arbitrary precision integer coefficients.
///
/// Terms are kept sorted by exponent and zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentQ {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, c.into());
        }
        out
    }

    pub fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `q -> q^k`.
    pub fn subs_q_pow(&self, k: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Substitute `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        self.subs_q_pow(-1)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Returns `(c, e)` when `self = c q^e` with `c = ±1`.
    pub fn as_unit(&self) -> Option<(i32, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((1, *e))
        } else if (-c).is_one() {
            Some((-1, *e))
        } else {
            None
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentQ) -> Option<LaurentQ> {
        let dmin = d.min_exp()?;
        let Some(amin) = self.min_exp() else {
            return Some(Self::zero());
        };
        let dp = d.shift(-dmin);
        let (dtop, dlc) = dp.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
        let mut rem = self.shift(-amin);
        let mut quot = Self::zero();
        while let Some((&top, lc)) = rem.terms.iter().next_back() {
            if top < dtop {
                return None;
            }
            let (c, r) = lc.div_rem(&dlc);
            if !r.is_zero() {
                return None;
            }
            let step = top - dtop;
            for (e, x) in dp.terms.iter() {
                rem.add_term(e + step, -(x * &c));
            }
            quot.add_term(step, c);
        }
        Some(quot.shift(amin - dmin))
    }
}

impl From<i64> for LaurentQ {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<BigInt> for LaurentQ {
    fn from(c: BigInt) -> Self {
        Self::from_int(c)
    }
}

impl AddAssign<&LaurentQ> for LaurentQ {
    fn add_assign(&mut self, rhs: &LaurentQ) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentQ> for LaurentQ {
    fn sub_assign(&mut self, rhs: &LaurentQ) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, -c);
        }
    }
}

impl MulAssign<&LaurentQ> for LaurentQ {
    fn mul_assign(&mut self, rhs: &LaurentQ) {
        *self = &*self * rhs;
    }
}

impl Mul<&LaurentQ> for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (a, x) in self.terms.iter() {
            for (b, y) in rhs.terms.iter() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $assign:ident) => {
        impl $tr<&LaurentQ> for LaurentQ {
            type Output = LaurentQ;
            fn $m(mut self, rhs: &LaurentQ) -> LaurentQ {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<LaurentQ> for LaurentQ {
            type Output = LaurentQ;
            fn $m(mut self, rhs: LaurentQ) -> LaurentQ {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&LaurentQ> for &LaurentQ {
            type Output = LaurentQ;
            fn $m(self, rhs: &LaurentQ) -> LaurentQ {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul<LaurentQ> for LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: LaurentQ) -> LaurentQ {
        &self * &rhs
    }
}

impl Mul<&LaurentQ> for LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        &self * rhs
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lq(pairs: &[(i32, i64)]) -> LaurentQ {
        LaurentQ::from_terms(pairs.iter().copied())
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = lq(&[(1, 1), (-1, 1)]);
        let b = lq(&[(1, 1)]);
        assert_eq!(&a - &b, lq(&[(-1, 1)]));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_and_quotient() {
        let a = lq(&[(1, 1), (-1, -1)]);
        let b = lq(&[(2, 1), (0, 1), (-2, 1)]);
        let p = &a * &b;
        assert_eq!(p, lq(&[(3, 1), (-3, -1)]));
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a));
        assert_eq!(b.div_exact(&lq(&[(0, 2)])), None);
        assert_eq!(lq(&[(5, 4)]).div_exact(&lq(&[(2, 2)])), Some(lq(&[(3, 2)])));
        assert_eq!(b.div_exact(&LaurentQ::zero()), None);
    }

    #[test]
    fn display_is_stable() {
        assert_eq!(lq(&[(2, 1), (0, -3), (-1, 1)]).to_string(), "q^2 - 3 + q^-1");
        assert_eq!(LaurentQ::zero().to_string(), "0");
    }

    #[test]
    fn unit_detection() {
        assert_eq!(lq(&[(3, -1)]).as_unit(), Some((-1, 3)));
        assert_eq!(lq(&[(3, 2)]).as_unit(), None);
    }
}
