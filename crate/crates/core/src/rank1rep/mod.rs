//! The rank-one model: `U_q(L sl_2)` acting on `⊕_v R^{S_[v]}`.

mod relations;

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{
    hall_littlewood, is_symmetric, monomial_symmetric, symmetrize_with, AlgebraError, LaurentQ, MultiLaurent,
    Partition2, RationalFn, Series,
};
use crate::par::Exec;
use crate::Sign;

pub use relations::{
    basis_elements, check_relation_ef, check_relation_exe2, check_relation_he, run_grid, Counterexample, GridConfig,
    GridReport, RelationChecker, RelationKind, RelationTally,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Rank1Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("level {level} out of range for N={n}")]
    Level { n: usize, level: i64 },
    #[error("polynomial has {got} variables, expected N={n}")]
    Nvars { n: usize, got: usize },
    #[error("polynomial is not S_[{level}]-symmetric")]
    NotSymmetric { level: usize },
    #[error("{op} produced a polynomial that is not S_[{level}]-symmetric")]
    OutputNotSymmetric { op: &'static str, level: usize },
    #[error("elements live in different spaces: (N={0}, v={1}) vs (N={2}, v={3})")]
    SpaceMismatch(usize, i64, usize, i64),
    #[error("series order {order} does not reach mode {mode}")]
    OrderTooSmall { order: usize, mode: i64 },
    #[error("invalid divided power data: {0}")]
    InvalidMultiplicity(String),
    #[error("relation failed: {0}")]
    RelationFailed(Box<Counterexample>),
    #[error("psi and p series disagree at coefficient {index} (sign {sign})")]
    PsiMismatch { sign: Sign, index: usize },
}

/// Element of `R^{S_[v]}` at level `v` in `N` variables.
///
/// Zero elements may carry the empty levels `-1` and `N+1` so that compositions of
/// operators keep track of where they land.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassElement {
    n: usize,
    level: i64,
    poly: MultiLaurent,
}

impl GrassElement {
    pub fn new(n: usize, level: usize, poly: MultiLaurent) -> Result<Self, Rank1Error> {
        if level > n {
            return Err(Rank1Error::Level { n, level: level as i64 });
        }
        if poly.nvars() != n {
            return Err(Rank1Error::Nvars { n, got: poly.nvars() });
        }
        let part = Partition2::level(n, level)?;
        if !is_symmetric(&poly, &part) {
            return Err(Rank1Error::NotSymmetric { level });
        }
        Ok(Self { n, level: level as i64, poly })
    }

    pub fn zero(n: usize, level: i64) -> Self {
        Self { n, level, poly: MultiLaurent::zero(n) }
    }

    /// The constant `1` at level `v`.
    pub fn vacuum(n: usize, level: usize) -> Result<Self, Rank1Error> {
        Self::new(n, level, MultiLaurent::one(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn poly(&self) -> &MultiLaurent {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn in_range(&self) -> bool {
        self.level >= 0 && self.level <= self.n as i64
    }

    fn same_space(&self, other: &GrassElement) -> Result<(), Rank1Error> {
        if self.n != other.n || self.level != other.level {
            return Err(Rank1Error::SpaceMismatch(self.n, self.level, other.n, other.level));
        }
        Ok(())
    }

    pub fn add(&self, other: &GrassElement) -> Result<GrassElement, Rank1Error> {
        self.same_space(other)?;
        Ok(Self { n: self.n, level: self.level, poly: &self.poly + &other.poly })
    }

    pub fn sub(&self, other: &GrassElement) -> Result<GrassElement, Rank1Error> {
        self.same_space(other)?;
        Ok(Self { n: self.n, level: self.level, poly: &self.poly - &other.poly })
    }

    pub fn scale(&self, c: &LaurentQ) -> GrassElement {
        Self { n: self.n, level: self.level, poly: self.poly.scale(c) }
    }

    /// Multiply by a polynomial that is symmetric at this level.
    pub fn mul_poly(&self, p: &MultiLaurent) -> GrassElement {
        Self { n: self.n, level: self.level, poly: &self.poly * p }
    }
}

impl fmt::Display for GrassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[N={}, v={}] {}", self.n, self.level, self.poly)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GrassWire {
    #[serde(rename = "N")]
    n: usize,
    v: i64,
    poly: MultiLaurent,
}

impl Serialize for GrassElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GrassWire { n: self.n, v: self.level, poly: self.poly.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrassElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = GrassWire::deserialize(d)?;
        if w.poly.is_zero() && (w.v == -1 || w.v == w.n as i64 + 1) {
            return Ok(GrassElement::zero(w.n, w.v));
        }
        let level = usize::try_from(w.v).map_err(serde::de::Error::custom)?;
        GrassElement::new(w.n, level, w.poly).map_err(serde::de::Error::custom)
    }
}

/// Which formula for the generators is used. `Corrupted` perturbs the `e` operator
/// and serves as a negative control for the relation checker.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FormulaVariant {
    #[default]
    Standard,
    Corrupted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rank1Model {
    pub variant: FormulaVariant,
}

impl Rank1Model {
    pub fn standard() -> Self {
        Self::default()
    }

    pub fn corrupted() -> Self {
        Self { variant: FormulaVariant::Corrupted }
    }

    /// `e_r`: level `v -> v-1`.
    pub fn apply_e(&self, r: i64, m: &GrassElement) -> Result<GrassElement, Rank1Error> {
        let (n, v) = (m.n, m.level);
        if v <= 0 || !m.in_range() || m.is_zero() {
            return Ok(GrassElement::zero(n, v - 1));
        }
        let k = (v - 1) as usize;
        let tq = match self.variant {
            FormulaVariant::Standard => LaurentQ::q_pow(-1),
            FormulaVariant::Corrupted => LaurentQ::q_pow(1),
        };
        let mut num = &m.poly * &MultiLaurent::var_pow(n, k, (r - n as i64) as i32);
        let mut den = MultiLaurent::one(n);
        for t in (k + 1)..n {
            num = &num * &MultiLaurent::linear2(n, k, LaurentQ::q_pow(1), t, -&tq);
            den = &den * &MultiLaurent::difference(n, k, t);
        }
        let f = RationalFn::new(num, den)?;
        let src = Partition2::level(n, k + 1)?;
        let dst = Partition2::level(n, k)?;
        let poly = symmetrize_with(Exec::Sequential, &f, &src, &dst)?;
        if !is_symmetric(&poly, &dst) {
            return Err(Rank1Error::OutputNotSymmetric { op: "e", level: k });
        }
        Ok(GrassElement { n, level: v - 1, poly })
    }

    /// `f_s`: level `v-1 -> v`.
    pub fn apply_f(&self, s: i64, m: &GrassElement) -> Result<GrassElement, Rank1Error> {
        let (n, v0) = (m.n, m.level);
        if v0 >= n as i64 || !m.in_range() || m.is_zero() {
            return Ok(GrassElement::zero(n, v0 + 1));
        }
        let l = v0 as usize;
        let mut num = &m.poly * &MultiLaurent::var_pow(n, l, (s + n as i64) as i32);
        let mut den = MultiLaurent::one(n);
        for u in 0..l {
            num = &num * &MultiLaurent::linear2(n, l, LaurentQ::q_pow(-1), u, LaurentQ::monomial(-1, 1));
            den = &den * &MultiLaurent::difference(n, l, u);
        }
        let f = RationalFn::new(num, den)?;
        let src = Partition2::level(n, l)?;
        let dst = Partition2::level(n, l + 1)?;
        let poly = symmetrize_with(Exec::Sequential, &f, &src, &dst)?;
        if !is_symmetric(&poly, &dst) {
            return Err(Rank1Error::OutputNotSymmetric { op: "f", level: l + 1 });
        }
        Ok(GrassElement { n, level: v0 + 1, poly })
    }

    /// `f_{p_s}^{(n_s)} ∘ … ∘ f_{p_1}^{(n_1)}` (smallest mode applied first) by the
    /// Hall–Littlewood closed formula.
    pub fn divided_power_f(
        &self,
        p_list: &[i64],
        n_list: &[usize],
        m: &GrassElement,
    ) -> Result<GrassElement, Rank1Error> {
        validate_divided(p_list, n_list)?;
        let big_n = m.n;
        let total: usize = n_list.iter().sum();
        if !m.in_range() {
            return Err(Rank1Error::Level { n: big_n, level: m.level });
        }
        let v0 = m.level as usize;
        if v0 + total > big_n {
            return Err(Rank1Error::InvalidMultiplicity(format!(
                "{total} applications from level {v0} exceed N={big_n}"
            )));
        }
        let v = v0 + total;
        if m.is_zero() {
            return Ok(GrassElement::zero(big_n, v as i64));
        }
        let p1 = p_list[0];
        let mut lambda: Vec<u32> = Vec::with_capacity(total);
        for (p, &c) in p_list.iter().zip(n_list.iter()).rev() {
            lambda.extend(std::iter::repeat_n((p - p1) as u32, c));
        }
        let hl = hall_littlewood(&lambda, total)?;
        let slots: Vec<usize> = (v0..v).collect();
        let mut num = &m.poly * &hl.embed(&slots, big_n);
        let shift: Vec<i32> = (0..big_n)
            .map(|i| if slots.contains(&i) { (big_n as i64 + p1) as i32 } else { 0 })
            .collect();
        num = num.mul_monomial(&shift);
        let mut den = MultiLaurent::one(big_n);
        for &i in &slots {
            for u in 0..v0 {
                num = &num * &MultiLaurent::linear2(big_n, i, LaurentQ::q_pow(-1), u, LaurentQ::monomial(-1, 1));
                den = &den * &MultiLaurent::difference(big_n, i, u);
            }
        }
        let f = RationalFn::new(num, den)?;
        let src = Partition2::level(big_n, v0)?;
        let dst = Partition2::level(big_n, v)?;
        let poly = symmetrize_with(Exec::Sequential, &f, &src, &dst)?.shift_q(divided_power_q_shift(n_list));
        if !is_symmetric(&poly, &dst) {
            return Err(Rank1Error::OutputNotSymmetric { op: "divided power", level: v });
        }
        Ok(GrassElement { n: big_n, level: v as i64, poly })
    }
}

/// `L = Σ n_i(n_i-1)/2 - n(n-1)/2`, the `q`-power relating the closed formula to
/// the divided powers.
pub fn divided_power_q_shift(n_list: &[usize]) -> i32 {
    let tri = |k: usize| (k * k.saturating_sub(1) / 2) as i32;
    let total: usize = n_list.iter().sum();
    n_list.iter().map(|&k| tri(k)).sum::<i32>() - tri(total)
}

fn validate_divided(p_list: &[i64], n_list: &[usize]) -> Result<(), Rank1Error> {
    if p_list.is_empty() || p_list.len() != n_list.len() {
        return Err(Rank1Error::InvalidMultiplicity(format!(
            "{} modes but {} multiplicities",
            p_list.len(),
            n_list.len()
        )));
    }
    if p_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Rank1Error::InvalidMultiplicity("modes must increase strictly".into()));
    }
    if n_list.contains(&0) {
        return Err(Rank1Error::InvalidMultiplicity("multiplicities must be positive".into()));
    }
    Ok(())
}

pub fn apply_e(r: i64, m: &GrassElement) -> Result<GrassElement, Rank1Error> {
    Rank1Model::standard().apply_e(r, m)
}

pub fn apply_f(s: i64, m: &GrassElement) -> Result<GrassElement, Rank1Error> {
    Rank1Model::standard().apply_f(s, m)
}

pub fn divided_power_f(p_list: &[i64], n_list: &[usize], m: &GrassElement) -> Result<GrassElement, Rank1Error> {
    Rank1Model::standard().divided_power_f(p_list, n_list, m)
}

/// Coefficients of `ψ^±(z)` at level `v` as multiplication operators: the expansion of
/// `Π_{u≤v} (q^-1 z - q x_u)/(z - x_u) · Π_{t>v} (q z - q^-1 x_t)/(z - x_t)`
/// in `z^-1` (sign +) or `z` (sign -).
pub fn psi_coefficients(n: usize, level: usize, sign: Sign, order: usize) -> Result<Vec<MultiLaurent>, Rank1Error> {
    if level > n {
        return Err(Rank1Error::Level { n, level: level as i64 });
    }
    let mut num = Series::one(n, order);
    let mut den = Series::one(n, order);
    let x = |i: usize| MultiLaurent::var(n, i);
    let c = |k: i32| MultiLaurent::constant(n, LaurentQ::q_pow(k));
    for i in 0..n {
        let (a, b) = if i < level { (-1, 1) } else { (1, -1) };
        let (nf, df) = match sign {
            Sign::Plus => (
                Series::linear(c(a), -&x(i).shift_q(b), order),
                Series::linear(MultiLaurent::one(n), -&x(i), order),
            ),
            Sign::Minus => (
                Series::linear(-&x(i).shift_q(b), c(a), order),
                Series::linear(-&x(i), MultiLaurent::one(n), order),
            ),
        };
        num = num.mul(&nf);
        den = den.mul(&df);
    }
    Ok(num.div(&den)?.into_coeffs())
}

/// `ψ^±` applied to `m`: coefficient `k` is `ψ^±_{±k} m`.
pub fn psi_series(sign: Sign, m: &GrassElement, order: usize) -> Result<Vec<GrassElement>, Rank1Error> {
    if !m.in_range() {
        return Ok(vec![m.clone(); order + 1]);
    }
    let coeffs = psi_coefficients(m.n, m.level as usize, sign, order)?;
    Ok(coeffs.iter().map(|c| m.mul_poly(c)).collect())
}

/// `p^+(z) = Π_{u≤v} (1 - q x_u/z)^-1 Π_{t>v} (1 - q^-1 x_t/z)` in `z^-1`, and
/// `p^-(z) = Π_{u≤v} (1 - q^-1 z/x_u)^-1 Π_{t>v} (1 - q z/x_t)` in `z`.
pub fn p_series(n: usize, level: usize, sign: Sign, order: usize) -> Result<Series, Rank1Error> {
    if level > n {
        return Err(Rank1Error::Level { n, level: level as i64 });
    }
    let one = MultiLaurent::one(n);
    let mut out = Series::one(n, order);
    for i in 0..n {
        let inner = i < level;
        let (var, k) = match (sign, inner) {
            (Sign::Plus, true) => (MultiLaurent::var(n, i), 1),
            (Sign::Plus, false) => (MultiLaurent::var(n, i), -1),
            (Sign::Minus, true) => (MultiLaurent::var_pow(n, i, -1), -1),
            (Sign::Minus, false) => (MultiLaurent::var_pow(n, i, -1), 1),
        };
        let factor = Series::linear(one.clone(), -&var.shift_q(k), order);
        out = if inner { out.div(&factor)? } else { out.mul(&factor) };
    }
    Ok(out)
}

/// Checks `ψ^±(z) = q^{±h} p^±(qz) / p^±(q^-1 z)` with `h = N - 2v`.
pub fn check_psi_p_consistency(n: usize, level: usize, order: usize) -> Result<(), Rank1Error> {
    let h = n as i32 - 2 * level as i32;
    for sign in [Sign::Plus, Sign::Minus] {
        let p = p_series(n, level, sign, order)?;
        let (up, down, qh) = match sign {
            Sign::Plus => (p.subs_y_qpow(-1), p.subs_y_qpow(1), h),
            Sign::Minus => (p.subs_y_qpow(1), p.subs_y_qpow(-1), -h),
        };
        let via_p = up.div(&down)?.scale_q(&LaurentQ::q_pow(qh));
        let psi = psi_coefficients(n, level, sign, order)?;
        for (index, (a, b)) in psi.iter().zip(via_p.coeffs()).enumerate() {
            if a != b {
                return Err(Rank1Error::PsiMismatch { sign, index });
            }
        }
    }
    Ok(())
}

/// Partitions of `d` with at most `k` parts, in decreasing lexicographic order.
pub fn partitions_bounded(d: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(d: u32, max: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if d == 0 {
            out.push(cur.clone());
            return;
        }
        if k == 0 {
            return;
        }
        for p in (1..=max.min(d)).rev() {
            cur.push(p);
            go(d - p, p, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, k, &mut Vec::new(), &mut out);
    out
}

/// `m_μ(x_1..x_v) · m_ν(x_{v+1}..x_N)`.
pub fn block_monomial(n: usize, level: usize, mu: &[u32], nu: &[u32]) -> Result<GrassElement, Rank1Error> {
    let a = monomial_symmetric(mu, level)?.embed(&(0..level).collect_vec(), n);
    let b = monomial_symmetric(nu, n - level)?.embed(&(level..n).collect_vec(), n);
    GrassElement::new(n, level, &a * &b)
}
