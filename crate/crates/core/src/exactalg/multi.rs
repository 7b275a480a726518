use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed};

use super::{AlgebraError, LaurentQ};

pub type Exponents = Vec<i32>;

/// Laurent polynomial in `x_1..x_n` with coefficients in `Z[q, q^-1]`.
///
/// Terms are sorted lexicographically on the `x` exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiLaurent {
    nvars: usize,
    terms: BTreeMap<Exponents, LaurentQ>,
}

impl MultiLaurent {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, LaurentQ::one())
    }

    pub fn constant(nvars: usize, c: LaurentQ) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: LaurentQ) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut out = Self::zero(nvars);
        out.add_term(exps, &c);
        out
    }

    /// `x_i^e`.
    pub fn var_pow(nvars: usize, i: usize, e: i32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Self::monomial(nvars, exps, LaurentQ::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    /// `a x_i + b x_j` with Laurent coefficients.
    pub fn linear2(nvars: usize, i: usize, a: LaurentQ, j: usize, b: LaurentQ) -> Self {
        let mut out = Self::zero(nvars);
        out.add_term(unit(nvars, i), &a);
        out.add_term(unit(nvars, j), &b);
        out
    }

    /// `x_i - x_j`.
    pub fn difference(nvars: usize, i: usize, j: usize) -> Self {
        Self::linear2(nvars, i, LaurentQ::one(), j, LaurentQ::from_int(-1))
    }

    pub fn from_terms<I>(nvars: usize, iter: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Exponents, LaurentQ)>,
    {
        let mut out = Self::zero(nvars);
        for (e, c) in iter {
            if e.len() != nvars {
                return Err(AlgebraError::NvarsMismatch(nvars, e.len()));
            }
            out.add_term(e, &c);
        }
        Ok(out)
    }

    pub fn add_term(&mut self, exps: Exponents, c: &LaurentQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &LaurentQ)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> LaurentQ {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> LaurentQ {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn scale(&self, c: &LaurentQ) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, x) in self.terms.iter() {
            out.add_term(e.clone(), &(x * c));
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&LaurentQ::from_int(c))
    }

    /// Multiply by `q^k`.
    pub fn shift_q(&self, k: i32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.shift(k))).collect(),
        }
    }

    /// Multiply by the monomial `x^exps`.
    pub fn mul_monomial(&self, exps: &[i32]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_exps(e, exps), c.clone()))
                .collect(),
        }
    }

    /// Substitute `x_i -> x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            let mut ne = vec![0; self.nvars];
            for (i, &p) in perm.iter().enumerate() {
                ne[p] = e[i];
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Swap `x_i` and `x_j`.
    pub fn swap(&self, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.nvars).collect();
        perm.swap(i, j);
        self.permute(&perm)
    }

    /// Substitute `x_i -> x_{targets[i]}` into a ring with `nvars` variables.
    pub fn embed(&self, targets: &[usize], nvars: usize) -> Self {
        debug_assert_eq!(targets.len(), self.nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in self.terms.iter() {
            let mut ne = vec![0; nvars];
            for (i, &t) in targets.iter().enumerate() {
                ne[t] += e[i];
            }
            out.add_term(ne, c);
        }
        out
    }

    /// Map every coefficient through `f`.
    pub fn map_coeffs(&self, f: impl Fn(&LaurentQ) -> LaurentQ) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            out.add_term(e.clone(), &f(c));
        }
        out
    }

    pub fn total_degree_range(&self) -> Option<(i32, i32)> {
        let degs = self.terms.keys().map(|e| e.iter().sum::<i32>());
        degs.fold(None, |acc, d| match acc {
            None => Some((d, d)),
            Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
        })
    }

    /// Variables that occur with a nonzero exponent in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e[i] != 0))
            .collect()
    }

    /// Returns `(c, e)` when `self = c q^k x^e` with `c = ±1`.
    pub fn as_unit(&self) -> Option<(i32, i32, Exponents)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let (s, k) = c.as_unit()?;
        Some((s, k, e.clone()))
    }

    /// Inverse of a unit `± q^k x^e`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (s, k, e) = self.as_unit()?;
        let neg: Exponents = e.iter().map(|x| -x).collect();
        Some(Self::monomial(self.nvars, neg, LaurentQ::monomial(s, -k)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Coefficient of `x_i^e`, as a polynomial in which `x_i` no longer occurs.
    pub fn coefficient_of_var(&self, i: usize, e: i32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ex, c) in self.terms.iter() {
            if ex[i] == e {
                let mut ne = ex.clone();
                ne[i] = 0;
                out.terms.insert(ne, c.clone());
            }
        }
        out
    }

    /// Inverse of [`Self::coefficient_of_var`]: `sum_e coeffs[e] * x_i^e`.
    pub fn assemble_in_var(nvars: usize, i: usize, coeffs: &BTreeMap<i32, MultiLaurent>) -> Self {
        let mut out = Self::zero(nvars);
        for (&e, c) in coeffs.iter() {
            out += &c.mul_monomial(&unit_scaled(nvars, i, e));
        }
        out
    }

    /// Powers of `x_i` that occur, in increasing order.
    pub fn var_exponents(&self, i: usize) -> Vec<i32> {
        let mut v: Vec<i32> = self.terms.keys().map(|e| e[i]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Exact quotient by `x_a - x_b`.
    pub fn div_by_difference(&self, a: usize, b: usize) -> Result<Self, AlgebraError> {
        if a == b {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let exps = self.var_exponents(a);
        let lo = exps[0];
        let hi = *exps.last().expect("nonempty");
        if lo == hi {
            return Err(AlgebraError::NotExact);
        }
        let xb = unit(self.nvars, b);
        let mut quot = Self::zero(self.nvars);
        let mut carry = self.coefficient_of_var(a, hi);
        let mut e = hi - 1;
        loop {
            quot += &carry.mul_monomial(&unit_scaled(self.nvars, a, e));
            let next = &self.coefficient_of_var(a, e) + &carry.mul_monomial(&xb);
            if e == lo {
                if !next.is_zero() {
                    return Err(AlgebraError::NotExact);
                }
                break;
            }
            carry = next;
            e -= 1;
        }
        Ok(quot)
    }

    /// Exact quotient `self / d`, by graded lexicographic long division.
    pub fn div_exact(&self, d: &MultiLaurent) -> Result<Self, AlgebraError> {
        self.check_nvars(d)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if let Some(inv) = d.unit_inverse() {
            return Ok(self * &inv);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let n = self.nvars;
        let ashift = self.min_exponents();
        let dshift = d.min_exponents();
        let key = |e: &Exponents| (e.iter().sum::<i32>(), e.clone());
        let dp: Vec<(Exponents, LaurentQ)> = d
            .terms
            .iter()
            .map(|(e, c)| (sub_exps(e, &dshift), c.clone()))
            .collect();
        let (dlm, dlc) = dp
            .iter()
            .max_by_key(|(e, _)| key(e))
            .cloned()
            .expect("nonzero divisor");
        let mut rem: BTreeMap<(i32, Exponents), LaurentQ> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let s = sub_exps(e, &ashift);
                (key(&s), c.clone())
            })
            .collect();
        let mut quot = Self::zero(n);
        while let Some(((_, lm), lc)) = rem.pop_last() {
            if lm.iter().zip(dlm.iter()).any(|(x, y)| x < y) {
                return Err(AlgebraError::NotExact);
            }
            let c = lc.div_exact(&dlc).ok_or(AlgebraError::NotExact)?;
            let m = sub_exps(&lm, &dlm);
            for (e, x) in dp.iter() {
                if *e == dlm {
                    continue;
                }
                let ne = add_exps(e, &m);
                let k = key(&ne);
                let delta = -(x * &c);
                match rem.get_mut(&k) {
                    Some(slot) => {
                        *slot += &delta;
                        if slot.is_zero() {
                            rem.remove(&k);
                        }
                    }
                    None => {
                        rem.insert(k, delta);
                    }
                }
            }
            quot.add_term(m, &c);
        }
        let back = sub_exps(&ashift, &dshift);
        Ok(quot.mul_monomial(&back))
    }

    /// Divide every coefficient exactly by `c`.
    pub fn div_exact_coeff(&self, c: &LaurentQ) -> Result<Self, AlgebraError> {
        if c.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut out = Self::zero(self.nvars);
        for (e, x) in self.terms.iter() {
            out.terms
                .insert(e.clone(), x.div_exact(c).ok_or(AlgebraError::NotExact)?);
        }
        Ok(out)
    }

    pub fn check_nvars(&self, other: &MultiLaurent) -> Result<(), AlgebraError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(AlgebraError::NvarsMismatch(self.nvars, other.nvars))
        }
    }

    fn min_exponents(&self) -> Exponents {
        let mut m = vec![i32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (a, b) in m.iter_mut().zip(e.iter()) {
                *a = (*a).min(*b);
            }
        }
        if self.terms.is_empty() {
            m.iter_mut().for_each(|a| *a = 0);
        }
        m
    }
}

pub(crate) fn unit(nvars: usize, i: usize) -> Exponents {
    unit_scaled(nvars, i, 1)
}

pub(crate) fn unit_scaled(nvars: usize, i: usize, e: i32) -> Exponents {
    let mut v = vec![0; nvars];
    v[i] = e;
    v
}

fn add_exps(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn sub_exps(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

impl AddAssign<&MultiLaurent> for MultiLaurent {
    fn add_assign(&mut self, rhs: &MultiLaurent) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (e, c) in rhs.terms.iter() {
            self.add_term(e.clone(), c);
        }
    }
}

impl SubAssign<&MultiLaurent> for MultiLaurent {
    fn sub_assign(&mut self, rhs: &MultiLaurent) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (e, c) in rhs.terms.iter() {
            self.add_term(e.clone(), &-c);
        }
    }
}

impl Add<&MultiLaurent> for &MultiLaurent {
    type Output = MultiLaurent;
    fn add(self, rhs: &MultiLaurent) -> MultiLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MultiLaurent> for &MultiLaurent {
    type Output = MultiLaurent;
    fn sub(self, rhs: &MultiLaurent) -> MultiLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for MultiLaurent {
    type Output = MultiLaurent;
    fn add(mut self, rhs: MultiLaurent) -> MultiLaurent {
        self += &rhs;
        self
    }
}

impl Sub for MultiLaurent {
    type Output = MultiLaurent;
    fn sub(mut self, rhs: MultiLaurent) -> MultiLaurent {
        self -= &rhs;
        self
    }
}

impl Mul<&MultiLaurent> for &MultiLaurent {
    type Output = MultiLaurent;
    fn mul(self, rhs: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiLaurent::zero(self.nvars);
        for (a, x) in self.terms.iter() {
            for (b, y) in rhs.terms.iter() {
                out.add_term(add_exps(a, b), &(x * y));
            }
        }
        out
    }
}

impl Mul for MultiLaurent {
    type Output = MultiLaurent;
    fn mul(self, rhs: MultiLaurent) -> MultiLaurent {
        &self * &rhs
    }
}

impl Neg for &MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        MultiLaurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(j, x)| match x {
                    1 => format!("x{}", j + 1),
                    _ => format!("x{}^{}", j + 1, x),
                })
                .collect();
            let simple = c.len() == 1 && c.terms().next().is_some_and(|(k, v)| k == 0 && v.abs().is_one());
            let neg = simple && c.terms().next().is_some_and(|(_, v)| v.is_negative());
            match (mono.is_empty(), simple) {
                (true, _) => write!(f, "({c})")?,
                (false, true) => write!(f, "{}{}", if neg { "-" } else { "" }, mono.join("*"))?,
                (false, false) => write!(f, "({c})*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiLaurent {
        MultiLaurent::var(n, i)
    }

    #[test]
    fn difference_division_roundtrip() {
        let n = 3;
        let f = &(&x(n, 0) * &x(n, 0)) + &x(n, 2).shift_q(2);
        let d = MultiLaurent::difference(n, 0, 1);
        let p = &f * &d;
        assert_eq!(p.div_by_difference(0, 1).unwrap(), f);
        assert_eq!(p.div_exact(&d).unwrap(), f);
        assert_eq!(f.div_by_difference(0, 1), Err(AlgebraError::NotExact));
    }

    #[test]
    fn laurent_division() {
        let n = 2;
        let f = MultiLaurent::var_pow(n, 0, -2) + x(n, 1);
        let g = MultiLaurent::linear2(n, 0, LaurentQ::q_pow(1), 1, LaurentQ::q_pow(-1));
        let p = &f * &g;
        assert_eq!(p.div_exact(&g).unwrap(), f);
        assert_eq!(p.div_exact(&f).unwrap(), g);
        assert_eq!(p.div_exact(&MultiLaurent::zero(n)), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn permutation_substitutes_variables() {
        let n = 3;
        let f = &x(n, 0) * &(&x(n, 1) * &x(n, 1));
        let g = f.permute(&[2, 0, 1]);
        assert_eq!(g, &x(n, 2) * &(&x(n, 0) * &x(n, 0)));
    }

    #[test]
    fn coefficient_extraction_roundtrip() {
        let n = 2;
        let f = &(&x(n, 0) * &x(n, 1)) + &(&MultiLaurent::var_pow(n, 1, -1) + &x(n, 0).shift_q(3));
        let mut parts = BTreeMap::new();
        for e in f.var_exponents(1) {
            parts.insert(e, f.coefficient_of_var(1, e));
        }
        assert_eq!(MultiLaurent::assemble_in_var(n, 1, &parts), f);
    }
}
