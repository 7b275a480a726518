//! Spectral parameters, Y/A monomials, l-weights, Drinfel'd polynomials and q-characters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cartan::{cartan_matrix, CartanError, QuiverGraph, Weight};
use crate::exactalg::{AlgebraError, LaurentQ, MultiLaurent, Series};
use crate::linalg::{LinalgError, QMatrix};
use crate::par::{self, Exec};
use crate::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LWeightError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("monomial {0} is not l-dominant")]
    NotDominant(String),
    #[error("spectral parameter base {0:?} is not in the parameter ring")]
    UnknownBase(String),
    #[error("monomial weight {0:?} is not an integral root shift of the top weight")]
    NotIntegral(Vec<i64>),
    #[error("cannot parse spectral parameter {0:?}")]
    Parse(String),
    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),
}

/// `base · ε^epow`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralParam {
    pub base: String,
    pub epow: i64,
}

impl SpectralParam {
    pub fn new(base: impl Into<String>, epow: i64) -> Self {
        Self { base: base.into(), epow }
    }

    /// Multiplication by `ε^n`.
    pub fn shift(&self, n: i64) -> Self {
        Self { base: self.base.clone(), epow: self.epow + n }
    }
}

impl fmt::Display for SpectralParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.epow == 0 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}:{}", self.base, self.epow)
        }
    }
}

/// Parses `a` or `a:k` (meaning `a·ε^k`).
impl FromStr for SpectralParam {
    type Err = LWeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LWeightError::Parse(s.to_string());
        let (base, epow) = match s.trim().split_once(':') {
            Some((b, e)) => (b, e.trim().parse::<i64>().map_err(|_| bad())?),
            None => (s.trim(), 0),
        };
        if base.is_empty() || !base.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(bad());
        }
        Ok(Self::new(base, epow))
    }
}

/// Monomial in `Y_{k,a}^{±1}`; zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YMonomial {
    exps: BTreeMap<(String, SpectralParam), i64>,
}

impl YMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn y(k: impl Into<String>, a: SpectralParam) -> Self {
        let mut m = Self::one();
        m.exps.insert((k.into(), a), 1);
        m
    }

    pub fn from_exps<I: IntoIterator<Item = (String, SpectralParam, i64)>>(it: I) -> Self {
        let mut m = Self::one();
        for (k, a, e) in it {
            m.add_exp(k, a, e);
        }
        m
    }

    fn add_exp(&mut self, k: String, a: SpectralParam, e: i64) {
        let key = (k, a);
        let v = self.exps.get(&key).copied().unwrap_or(0) + e;
        if v == 0 {
            self.exps.remove(&key);
        } else {
            self.exps.insert(key, v);
        }
    }

    pub fn exps(&self) -> impl Iterator<Item = (&str, &SpectralParam, i64)> + '_ {
        self.exps.iter().map(|((k, a), &e)| (k.as_str(), a, e))
    }

    pub fn exponent(&self, k: &str, a: &SpectralParam) -> i64 {
        self.exps.get(&(k.to_string(), a.clone())).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, o: &YMonomial) -> YMonomial {
        let mut m = self.clone();
        for ((k, a), &e) in &o.exps {
            m.add_exp(k.clone(), a.clone(), e);
        }
        m
    }

    pub fn pow(&self, n: i64) -> YMonomial {
        if n == 0 {
            return Self::one();
        }
        YMonomial { exps: self.exps.iter().map(|(k, &e)| (k.clone(), e * n)).collect() }
    }

    pub fn inv(&self) -> YMonomial {
        self.pow(-1)
    }

    pub fn div(&self, o: &YMonomial) -> YMonomial {
        self.mul(&o.inv())
    }

    pub fn is_l_dominant(&self) -> bool {
        self.exps.values().all(|&e| e > 0)
    }

    /// Exponent sum at each vertex.
    pub fn vertex_degrees(&self) -> BTreeMap<String, i64> {
        let mut out = BTreeMap::new();
        for ((k, _), &e) in &self.exps {
            *out.entry(k.clone()).or_insert(0) += e;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    pub fn bases(&self) -> Vec<String> {
        let mut b: Vec<String> = self.exps.keys().map(|(_, a)| a.base.clone()).collect();
        b.sort();
        b.dedup();
        b
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps()
            .map(|(k, a, e)| if e == 1 { format!("Y[{k},{a}]") } else { format!("Y[{k},{a}]^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct YFactorWire {
    k: String,
    base: String,
    epow: i64,
    exp: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct YMonomialWire {
    #[serde(rename = "Y")]
    y: Vec<YFactorWire>,
}

impl YMonomialWire {
    fn from_monomial(m: &YMonomial) -> Self {
        YMonomialWire {
            y: m
                .exps()
                .map(|(k, a, e)| YFactorWire { k: k.to_string(), base: a.base.clone(), epow: a.epow, exp: e })
                .collect(),
        }
    }

    fn into_monomial(self) -> Result<YMonomial, LWeightError> {
        let mut m = YMonomial::one();
        for f in self.y {
            if f.exp == 0 {
                return Err(LWeightError::InvalidMonomial(format!("zero exponent at Y[{},{}]", f.k, f.base)));
            }
            let key = (f.k, SpectralParam::new(f.base, f.epow));
            if m.exps.contains_key(&key) {
                return Err(LWeightError::InvalidMonomial(format!("repeated factor Y[{},{}]", key.0, key.1)));
            }
            m.exps.insert(key, f.exp);
        }
        Ok(m)
    }
}

impl Serialize for YMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        YMonomialWire::from_monomial(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for YMonomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        YMonomialWire::deserialize(d)?.into_monomial().map_err(D::Error::custom)
    }
}

/// `A_{k,a} = Y_{k,aε} Y_{k,aε^-1} Π_{in(h)=k} Y_{out(h),aε^{m(h)}}^{-1}`.
pub fn a_monomial(k: &str, a: &SpectralParam, g: &QuiverGraph) -> Result<YMonomial, LWeightError> {
    let ki = g.index_of(k)?;
    let mut m = YMonomial::one();
    m.add_exp(k.to_string(), a.shift(1), 1);
    m.add_exp(k.to_string(), a.shift(-1), 1);
    for h in g.incoming(ki) {
        let out = &g.vertices()[g.vout(h)?];
        m.add_exp(out.clone(), a.shift(g.edge_weight_m(h)? as i64), -1);
    }
    Ok(m)
}

/// Per-vertex roots `a` of `P_k(u) = Π (1 - u a)`, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DrinfeldPoly {
    roots: BTreeMap<String, Vec<SpectralParam>>,
}

impl DrinfeldPoly {
    pub fn from_roots<I: IntoIterator<Item = (String, SpectralParam)>>(it: I) -> Self {
        let mut roots: BTreeMap<String, Vec<SpectralParam>> = BTreeMap::new();
        for (k, a) in it {
            roots.entry(k).or_default().push(a);
        }
        for r in roots.values_mut() {
            r.sort();
        }
        Self { roots }
    }

    pub fn roots(&self, k: &str) -> &[SpectralParam] {
        self.roots.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn degree(&self, k: &str) -> usize {
        self.roots(k).len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> + '_ {
        self.roots.keys().map(String::as_str)
    }

    /// Expansion of `ε^{deg P_k} P_k(1/εz) / P_k(ε/z)` at every vertex of `g`.
    pub fn psi_series(
        &self,
        g: &QuiverGraph,
        sign: Sign,
        order: usize,
        ring: &ParamRing,
    ) -> Result<PsiEigenvalue, LWeightError> {
        for k in self.roots.keys() {
            g.index_of(k)?;
        }
        let mut series = BTreeMap::new();
        for k in g.vertices() {
            let mut s = Series::one(ring.nvars(), order);
            for a in self.roots(k) {
                s = s.mul(&y_factor(ring, a, sign, order)?);
            }
            series.insert(k.clone(), s);
        }
        Ok(PsiEigenvalue { sign, series })
    }
}

impl fmt::Display for DrinfeldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, r) in &self.roots {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "P_{k}(u) = ")?;
            let parts: Vec<String> = r.iter().map(|a| format!("(1 - u*{a})")).collect();
            write!(f, "{}", parts.join(""))?;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DrinfeldWire {
    #[serde(rename = "P")]
    p: BTreeMap<String, Vec<SpectralParam>>,
}

impl Serialize for DrinfeldPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DrinfeldWire { p: self.roots.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DrinfeldPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = DrinfeldWire::deserialize(d)?;
        Ok(DrinfeldPoly::from_roots(
            w.p.into_iter().flat_map(|(k, r)| r.into_iter().map(move |a| (k.clone(), a))),
        ))
    }
}

pub fn is_l_dominant(m: &YMonomial) -> bool {
    m.is_l_dominant()
}

/// Roots of `P_k` are the `Y_{k,a}` parameters with multiplicity.
pub fn drinfeld_of(m: &YMonomial) -> Result<DrinfeldPoly, LWeightError> {
    if !m.is_l_dominant() {
        return Err(LWeightError::NotDominant(m.to_string()));
    }
    Ok(DrinfeldPoly::from_roots(
        m.exps()
            .flat_map(|(k, a, e)| std::iter::repeat_n((k.to_string(), a.clone()), e as usize)),
    ))
}

/// `ℤ[q^±][x_b^±]` with one variable per base symbol; `q` stands for `ε`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamRing {
    bases: Vec<String>,
}

impl ParamRing {
    pub fn new<I: IntoIterator<Item = String>>(bases: I) -> Self {
        let mut b: Vec<String> = bases.into_iter().collect();
        b.sort();
        b.dedup();
        Self { bases: b }
    }

    pub fn nvars(&self) -> usize {
        self.bases.len()
    }

    pub fn bases(&self) -> &[String] {
        &self.bases
    }

    /// `a^sign` as a monomial `x_b^{±1} q^{±epow}`.
    pub fn param_pow(&self, a: &SpectralParam, e: i32) -> Result<MultiLaurent, LWeightError> {
        let i = self
            .bases
            .binary_search(&a.base)
            .map_err(|_| LWeightError::UnknownBase(a.base.clone()))?;
        let mut x = vec![0; self.nvars()];
        x[i] = e;
        Ok(MultiLaurent::monomial(self.nvars(), x, LaurentQ::q_pow(e * a.epow as i32)))
    }
}

/// `ε (1 - a/εz)/(1 - aε/z)` expanded in `1/z` (sign +) or `z` (sign -).
fn y_factor(ring: &ParamRing, a: &SpectralParam, sign: Sign, order: usize) -> Result<Series, LWeightError> {
    let n = ring.nvars();
    let one = MultiLaurent::one(n);
    let (num, den, lead) = match sign {
        Sign::Plus => {
            let x = ring.param_pow(a, 1)?;
            (
                Series::linear(one.clone(), -&x.shift_q(-1), order),
                Series::linear(one, -&x.shift_q(1), order),
                1,
            )
        }
        Sign::Minus => {
            let x = ring.param_pow(a, -1)?;
            (
                Series::linear(one.clone(), -&x.shift_q(1), order),
                Series::linear(one, -&x.shift_q(-1), order),
                -1,
            )
        }
    };
    Ok(num.div(&den)?.scale_q(&LaurentQ::q_pow(lead)))
}

/// Per-vertex `Ψ^±_k(z)` as truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiEigenvalue {
    pub sign: Sign,
    pub series: BTreeMap<String, Series>,
}

/// `ψ`-eigenvalue of an l-weight monomial over the ring of its own base symbols.
pub fn psi_eigenvalue(
    m: &YMonomial,
    g: &QuiverGraph,
    sign: Sign,
    order: usize,
) -> Result<PsiEigenvalue, LWeightError> {
    psi_eigenvalue_in(m, g, sign, order, &ParamRing::new(m.bases()))
}

pub fn psi_eigenvalue_in(
    m: &YMonomial,
    g: &QuiverGraph,
    sign: Sign,
    order: usize,
    ring: &ParamRing,
) -> Result<PsiEigenvalue, LWeightError> {
    let mut series: BTreeMap<String, Series> =
        g.vertices().iter().map(|k| (k.clone(), Series::one(ring.nvars(), order))).collect();
    for (k, a, e) in m.exps() {
        g.index_of(k)?;
        let f = y_factor(ring, a, sign, order)?.powi(e as i32)?;
        let s = series.get_mut(k).expect("vertex present");
        *s = s.mul(&f);
    }
    Ok(PsiEigenvalue { sign, series })
}

/// Multiset of l-weight monomials with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QCharacter {
    terms: BTreeMap<YMonomial, u64>,
}

impl QCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    /// The character `1` of the trivial module.
    pub fn trivial() -> Self {
        let mut c = Self::new();
        c.add(YMonomial::one(), 1);
        c
    }

    pub fn add(&mut self, m: YMonomial, mult: u64) {
        if mult > 0 {
            *self.terms.entry(m).or_insert(0) += mult;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&YMonomial, u64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn mult(&self, m: &YMonomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn dominant_monomials(&self) -> Vec<&YMonomial> {
        self.terms.keys().filter(|m| m.is_l_dominant()).collect()
    }

    pub fn merge(&mut self, o: &QCharacter) {
        for (m, c) in o.terms() {
            self.add(m.clone(), c);
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QTermWire {
    #[serde(rename = "Y")]
    y: Vec<YFactorWire>,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QCharWire {
    terms: Vec<QTermWire>,
}

impl Serialize for QCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QCharWire {
            terms: self
                .terms()
                .map(|(m, c)| QTermWire { y: YMonomialWire::from_monomial(m).y, mult: c })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QCharacter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = QCharWire::deserialize(d)?;
        let mut c = QCharacter::new();
        for t in w.terms {
            if t.mult == 0 {
                return Err(D::Error::custom("multiplicity must be positive"));
            }
            let m = YMonomialWire { y: t.y }.into_monomial().map_err(D::Error::custom)?;
            if c.terms.contains_key(&m) {
                return Err(D::Error::custom(format!("repeated monomial {m}")));
            }
            c.add(m, t.mult);
        }
        Ok(c)
    }
}

pub fn qchar_multiply(c1: &QCharacter, c2: &QCharacter) -> QCharacter {
    qchar_multiply_with(Exec::default(), c1, c2)
}

pub fn qchar_multiply_with(exec: Exec, c1: &QCharacter, c2: &QCharacter) -> QCharacter {
    let left: Vec<(&YMonomial, u64)> = c1.terms().collect();
    let parts = par::map(exec, &left, |(m1, a)| {
        let mut part = QCharacter::new();
        for (m2, b) in c2.terms() {
            part.add(m1.mul(m2), a * b);
        }
        part
    });
    let mut out = QCharacter::new();
    for p in &parts {
        out.merge(p);
    }
    out
}

/// Forgets spectral parameters: each monomial of fundamental weight `u` is recorded as
/// `top - Σ v_k α_k` with `C v = top - u`.
pub fn restrict_to_character(
    c: &QCharacter,
    g: &QuiverGraph,
    top: &[i64],
) -> Result<BTreeMap<Weight, u64>, LWeightError> {
    let n = g.n_vertices();
    if top.len() != n {
        return Err(CartanError::Mismatch(top.len(), n).into());
    }
    let cinv = QMatrix::from_i64(&cartan_matrix(g).c)?.inverse()?;
    let mut out = BTreeMap::new();
    for (m, mult) in c.terms() {
        let mut u = vec![0i64; n];
        for (k, d) in m.vertex_degrees() {
            u[g.index_of(&k)?] += d;
        }
        let diff: Vec<Vec<i64>> = top.iter().zip(&u).map(|(t, x)| vec![t - x]).collect();
        let v = cinv.mul(&QMatrix::from_i64(&diff)?)?;
        if !v.is_integral() {
            return Err(LWeightError::NotIntegral(u));
        }
        let v: Vec<i64> = (0..n)
            .map(|i| i64::try_from(v.get(i, 0).to_integer()).map_err(|_| LWeightError::NotIntegral(u.clone())))
            .collect::<Result<_, _>>()?;
        *out.entry(Weight::new(top.to_vec(), v)).or_insert(0) += mult;
    }
    Ok(out)
}
