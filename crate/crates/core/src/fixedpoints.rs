//! Graded dimension data of torus fixed points, their l-weights, and standard
//! q-characters in type `A_1`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cartan::{CartanError, QuiverGraph};
use crate::exactalg::{AlgebraError, LaurentQ, MultiLaurent, Series};
use crate::lweight::{
    a_monomial, psi_eigenvalue_in, DrinfeldPoly, LWeightError, ParamRing, PsiEigenvalue, QCharacter,
    SpectralParam, YMonomial,
};
use crate::par::{self, Exec};
use crate::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixedPointError {
    #[error(transparent)]
    LWeight(#[from] LWeightError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("parameters are not generic: {0}")]
    NonGeneric(String),
    #[error("monomial and series forms of the l-weight disagree at vertex {vertex} (sign {sign})")]
    ConventionMismatch { vertex: String, sign: Sign },
    #[error("invalid input: {0}")]
    Invalid(String),
}

type Key = (String, SpectralParam);

/// `dim V_k(λ)` and `dim W_k(λ)`, finitely supported.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedDims {
    v: BTreeMap<Key, u64>,
    w: BTreeMap<Key, u64>,
}

fn bump(map: &mut BTreeMap<Key, u64>, k: &str, a: SpectralParam, d: u64) {
    if d > 0 {
        *map.entry((k.to_string(), a)).or_insert(0) += d;
    }
}

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_v(&mut self, k: &str, a: SpectralParam, d: u64) {
        bump(&mut self.v, k, a, d);
    }

    pub fn add_w(&mut self, k: &str, a: SpectralParam, d: u64) {
        bump(&mut self.w, k, a, d);
    }

    pub fn with_v(mut self, k: &str, a: SpectralParam, d: u64) -> Self {
        self.add_v(k, a, d);
        self
    }

    pub fn with_w(mut self, k: &str, a: SpectralParam, d: u64) -> Self {
        self.add_w(k, a, d);
        self
    }

    pub fn v_dim(&self, k: &str, a: &SpectralParam) -> i64 {
        self.v.get(&(k.to_string(), a.clone())).map_or(0, |&d| d as i64)
    }

    pub fn w_dim(&self, k: &str, a: &SpectralParam) -> i64 {
        self.w.get(&(k.to_string(), a.clone())).map_or(0, |&d| d as i64)
    }

    pub fn v_entries(&self) -> impl Iterator<Item = (&str, &SpectralParam, u64)> + '_ {
        self.v.iter().map(|((k, a), &d)| (k.as_str(), a, d))
    }

    pub fn w_entries(&self) -> impl Iterator<Item = (&str, &SpectralParam, u64)> + '_ {
        self.w.iter().map(|((k, a), &d)| (k.as_str(), a, d))
    }

    /// Direct sum of gradings.
    pub fn direct_sum(&self, o: &GradedDims) -> GradedDims {
        let mut out = self.clone();
        for (k, a, d) in o.v_entries() {
            out.add_v(k, a.clone(), d);
        }
        for (k, a, d) in o.w_entries() {
            out.add_w(k, a.clone(), d);
        }
        out
    }

    /// Ungraded dimension vectors `(v, w)` in the vertex order of `g`.
    pub fn totals(&self, g: &QuiverGraph) -> Result<(Vec<i64>, Vec<i64>), FixedPointError> {
        let n = g.n_vertices();
        let (mut v, mut w) = (vec![0; n], vec![0; n]);
        for (k, _, d) in self.v_entries() {
            v[g.index_of(k)?] += d as i64;
        }
        for (k, _, d) in self.w_entries() {
            w[g.index_of(k)?] += d as i64;
        }
        Ok((v, w))
    }

    /// Every `V`-parameter lies in `⋃ (W-parameter) ε^ℤ`.
    pub fn vwei_ok(&self) -> bool {
        let wb: BTreeSet<&str> = self.w.keys().map(|(_, a)| a.base.as_str()).collect();
        self.v.keys().all(|(_, a)| wb.contains(a.base.as_str()))
    }

    pub fn bases(&self) -> Vec<String> {
        let b: BTreeSet<String> = self.v.keys().chain(self.w.keys()).map(|(_, a)| a.base.clone()).collect();
        b.into_iter().collect()
    }

    fn check_vertices(&self, g: &QuiverGraph) -> Result<(), FixedPointError> {
        for (k, _) in self.v.keys().chain(self.w.keys()) {
            g.index_of(k)?;
        }
        Ok(())
    }

    /// Signed weights `(λ, ±d)` of the class of the complex at vertex `k`.
    fn complex_terms(&self, g: &QuiverGraph, k: &str) -> Result<Vec<(SpectralParam, i64)>, FixedPointError> {
        let ki = g.index_of(k)?;
        let mut out = Vec::new();
        for h in g.incoming(ki) {
            let l = &g.vertices()[g.vout(h)?];
            let m = g.edge_weight_m(h)? as i64;
            for (k2, mu, d) in self.v_entries() {
                if k2 == l {
                    out.push((mu.shift(-m - 1), d as i64));
                }
            }
        }
        for (k2, mu, d) in self.w_entries() {
            if k2 == k {
                out.push((mu.shift(-1), d as i64));
            }
        }
        for (k2, mu, d) in self.v_entries() {
            if k2 == k {
                out.push((mu.shift(-2), -(d as i64)));
                out.push((mu.clone(), -(d as i64)));
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DimWire {
    k: String,
    base: String,
    epow: i64,
    dim: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradedWire {
    #[serde(rename = "V", default)]
    v: Vec<DimWire>,
    #[serde(rename = "W", default)]
    w: Vec<DimWire>,
}

fn to_wire(m: &BTreeMap<Key, u64>) -> Vec<DimWire> {
    m.iter()
        .map(|((k, a), &d)| DimWire { k: k.clone(), base: a.base.clone(), epow: a.epow, dim: d })
        .collect()
}

impl Serialize for GradedDims {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GradedWire { v: to_wire(&self.v), w: to_wire(&self.w) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedDims {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = GradedWire::deserialize(d)?;
        let mut g = GradedDims::new();
        for (src, is_v) in [(wire.v, true), (wire.w, false)] {
            for e in src {
                let key = (e.k.clone(), SpectralParam::new(e.base, e.epow));
                let map = if is_v { &g.v } else { &g.w };
                if map.contains_key(&key) {
                    return Err(D::Error::custom(format!("repeated entry for vertex {} at {}", key.0, key.1)));
                }
                if is_v {
                    g.add_v(&key.0, key.1, e.dim);
                } else {
                    g.add_w(&key.0, key.1, e.dim);
                }
            }
        }
        Ok(g)
    }
}

/// Dimension of the fixed-point component with grading `g`.
pub fn dim_m_rho(g: &GradedDims, graph: &QuiverGraph) -> Result<i64, FixedPointError> {
    g.check_vertices(graph)?;
    let vs = graph.vertices();
    let mut total = 0i64;
    for h in graph.oriented_edges() {
        let (o, i) = (&vs[graph.vout(h)?], &vs[graph.vin(h)?]);
        let m = graph.edge_weight_m(h)? as i64;
        for (k, lam, d) in g.v_entries() {
            if k == o {
                total += d as i64 * g.v_dim(i, &lam.shift(-m - 1));
            }
        }
    }
    for (k, lam, d) in g.w_entries() {
        total += d as i64 * (g.v_dim(k, &lam.shift(-1)) + g.v_dim(k, &lam.shift(1)));
    }
    for (k, lam, d) in g.v_entries() {
        total -= d as i64 * (d as i64 + g.v_dim(k, &lam.shift(-2)));
    }
    Ok(total)
}

/// Euler characteristic of the graded piece `C_{k,λ}`.
pub fn rank_c_k_lambda(
    g: &GradedDims,
    k: &str,
    lam: &SpectralParam,
    graph: &QuiverGraph,
) -> Result<i64, FixedPointError> {
    let ki = graph.index_of(k)?;
    let mut r = g.w_dim(k, &lam.shift(1)) - g.v_dim(k, &lam.shift(2)) - g.v_dim(k, lam);
    for h in graph.incoming(ki) {
        let o = &graph.vertices()[graph.vout(h)?];
        r += g.v_dim(o, &lam.shift(graph.edge_weight_m(h)? as i64 + 1));
    }
    Ok(r)
}

/// All `λ` at which some `C_{k,λ}` may be nonzero.
fn rank_support(g: &GradedDims, graph: &QuiverGraph) -> Result<BTreeSet<Key>, FixedPointError> {
    let mut out = BTreeSet::new();
    for k in graph.vertices() {
        for (lam, _) in g.complex_terms(graph, k)? {
            out.insert((k.clone(), lam));
        }
    }
    Ok(out)
}

/// `Π Y_{k,λ}^{rank C_{k,λ}}` without the series cross-check.
pub fn l_weight_monomial(g: &GradedDims, graph: &QuiverGraph) -> Result<YMonomial, FixedPointError> {
    g.check_vertices(graph)?;
    let mut exps = Vec::new();
    for (k, lam) in rank_support(g, graph)? {
        let r = rank_c_k_lambda(g, &k, &lam, graph)?;
        exps.push((k, lam, r));
    }
    Ok(YMonomial::from_exps(exps))
}

/// `Π_k Π_{W_k(a)} Y_{k,ε^-1 a} · Π_k Π_{V_k(c)} A_{k,ε^-1 c}^{-1}`.
pub fn l_weight_a_form(g: &GradedDims, graph: &QuiverGraph) -> Result<YMonomial, FixedPointError> {
    let mut m = YMonomial::one();
    for (k, a, d) in g.w_entries() {
        m = m.mul(&YMonomial::y(k, a.shift(-1)).pow(d as i64));
    }
    for (k, c, d) in g.v_entries() {
        m = m.mul(&a_monomial(k, &c.shift(-1), graph)?.pow(-(d as i64)));
    }
    Ok(m)
}

/// Direct expansion of `ε^{rank C_k} χ(Λ_{-1/εz} C_k / Λ_{-ε/z} C_k)` from the graded
/// pieces of the complex.
pub fn genweight_series(
    g: &GradedDims,
    graph: &QuiverGraph,
    sign: Sign,
    order: usize,
    ring: &ParamRing,
) -> Result<PsiEigenvalue, FixedPointError> {
    let n = ring.nvars();
    let one = MultiLaurent::one(n);
    let mut series = BTreeMap::new();
    for k in graph.vertices() {
        let mut s = Series::one(n, order);
        let mut rank = 0i64;
        for (lam, d) in g.complex_terms(graph, k)? {
            rank += d;
            let (num, den) = match sign {
                Sign::Plus => {
                    let x = ring.param_pow(&lam, 1)?;
                    (
                        Series::linear(one.clone(), -&x.shift_q(-1), order),
                        Series::linear(one.clone(), -&x.shift_q(1), order),
                    )
                }
                Sign::Minus => {
                    let x = ring.param_pow(&lam, -1)?;
                    (
                        Series::linear(one.clone(), -&x.shift_q(1), order),
                        Series::linear(one.clone(), -&x.shift_q(-1), order),
                    )
                }
            };
            s = s.mul(&num.div(&den)?.powi(d as i32)?);
        }
        let lead = match sign {
            Sign::Plus => rank,
            Sign::Minus => -rank,
        };
        series.insert(k.clone(), s.scale_q(&LaurentQ::q_pow(lead as i32)));
    }
    Ok(PsiEigenvalue { sign, series })
}

/// Series order used by the internal consistency check in [`l_weight_of_rho`].
pub const LWEIGHT_CHECK_ORDER: usize = 4;

/// l-weight of the fixed component with grading `g`; the monomial form, the
/// `A`-monomial form and the direct series expansion are checked against each other.
pub fn l_weight_of_rho(g: &GradedDims, graph: &QuiverGraph) -> Result<YMonomial, FixedPointError> {
    let m = l_weight_monomial(g, graph)?;
    if l_weight_a_form(g, graph)? != m {
        return Err(FixedPointError::ConventionMismatch { vertex: "*".into(), sign: Sign::Plus });
    }
    let ring = ParamRing::new(g.bases());
    for sign in [Sign::Plus, Sign::Minus] {
        let lhs = psi_eigenvalue_in(&m, graph, sign, LWEIGHT_CHECK_ORDER, &ring)?;
        let rhs = genweight_series(g, graph, sign, LWEIGHT_CHECK_ORDER, &ring)?;
        for (k, s) in &lhs.series {
            if rhs.series.get(k) != Some(s) {
                return Err(FixedPointError::ConventionMismatch { vertex: k.clone(), sign });
            }
        }
    }
    Ok(m)
}

/// No two parameters have ratio `ε^n` with `n ≠ 0`.
pub fn is_generic(params: &[SpectralParam]) -> bool {
    params
        .iter()
        .tuple_combinations()
        .all(|(a, b)| a.base != b.base || a.epow == b.epow)
}

/// Fixed point in type `A_1` given by the subset `S` of `W`-lines that are hit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FixedPointSl2 {
    pub w_params: Vec<SpectralParam>,
    pub subset: Vec<usize>,
}

impl FixedPointSl2 {
    pub fn n(&self) -> usize {
        self.w_params.len()
    }

    pub fn level(&self) -> usize {
        self.subset.len()
    }

    /// `W = ⊕ ℂ_{w_i}`, `V = ⊕_{i∈S} ℂ_{ε w_i}`.
    pub fn graded_dims(&self) -> GradedDims {
        let mut g = GradedDims::new();
        for a in &self.w_params {
            g.add_w(SL2_VERTEX, a.clone(), 1);
        }
        for &i in &self.subset {
            g.add_v(SL2_VERTEX, self.w_params[i].shift(1), 1);
        }
        g
    }
}

/// Vertex id of the `A_1` graph.
pub const SL2_VERTEX: &str = "1";

pub fn sl2_graph() -> QuiverGraph {
    QuiverGraph::type_a(1)
}

fn require_generic(params: &[SpectralParam]) -> Result<(), FixedPointError> {
    if is_generic(params) {
        return Ok(());
    }
    let bad = params
        .iter()
        .tuple_combinations()
        .find(|(a, b)| a.base == b.base && a.epow != b.epow)
        .map(|(a, b)| format!("{a} / {b} is a nonzero power of ε"))
        .unwrap_or_default();
    Err(FixedPointError::NonGeneric(bad))
}

/// All subsets of `{0..N-1}` (of size `level` if given), by size then lexicographically.
pub fn enumerate_fixed_points_sl2(
    params: &[SpectralParam],
    level: Option<usize>,
) -> Result<Vec<FixedPointSl2>, FixedPointError> {
    require_generic(params)?;
    let n = params.len();
    if let Some(v) = level {
        if v > n {
            return Err(FixedPointError::Invalid(format!("level {v} exceeds N={n}")));
        }
    }
    let levels: Vec<usize> = match level {
        Some(v) => vec![v],
        None => (0..=n).collect(),
    };
    Ok(levels
        .into_iter()
        .flat_map(|v| (0..n).combinations(v))
        .map(|subset| FixedPointSl2 { w_params: params.to_vec(), subset })
        .collect())
}

pub fn qchar_standard_sl2(params: &[SpectralParam]) -> Result<QCharacter, FixedPointError> {
    qchar_standard_sl2_with(Exec::default(), params)
}

/// Sum of l-weights over fixed points.
pub fn qchar_standard_sl2_with(exec: Exec, params: &[SpectralParam]) -> Result<QCharacter, FixedPointError> {
    let fps = enumerate_fixed_points_sl2(params, None)?;
    let graph = sl2_graph();
    let monos = par::try_map(exec, &fps, |fp| l_weight_of_rho(&fp.graded_dims(), &graph))?;
    let mut c = QCharacter::new();
    for m in monos {
        c.add(m, 1);
    }
    Ok(c)
}

/// `Π (1 - u ε^-1 w_i)`.
pub fn highest_drinfeld_sl2(params: &[SpectralParam]) -> DrinfeldPoly {
    DrinfeldPoly::from_roots(params.iter().map(|a| (SL2_VERTEX.to_string(), a.shift(-1))))
}

/// Number of fixed points equals `Π_i 2 = 2^N`.
pub fn euler_product_check(w: &[i64], params: &[SpectralParam]) -> Result<bool, FixedPointError> {
    if w.len() != 1 || w[0] != params.len() as i64 {
        return Err(FixedPointError::Invalid(format!(
            "weight {w:?} does not match {} parameters on A_1",
            params.len()
        )));
    }
    let count = enumerate_fixed_points_sl2(params, None)?.len() as u128;
    let single: u128 = params
        .iter()
        .map(|a| enumerate_fixed_points_sl2(std::slice::from_ref(a), None).map(|v| v.len() as u128))
        .product::<Result<u128, _>>()?;
    Ok(count == single && count == 1u128 << params.len())
}
