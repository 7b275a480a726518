//! ADHM data over exact rationals: moment map, stability, the tautological complex
//! at a point and fixed-point checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{CartanError, OrientedEdge, QuiverGraph};
use crate::fixedpoints::{sl2_graph, FixedPointSl2};
use crate::linalg::{LinalgError, QMatrix};
use crate::lweight::{LWeightError, SpectralParam};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdhmError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Param(#[from] LWeightError),
    #[error("{what} has shape {got:?}, expected {want:?}")]
    Shape { what: String, got: (usize, usize), want: (usize, usize) },
    #[error("tau sigma is nonzero at vertex {0}: the moment map does not vanish")]
    MomentMap(String),
    #[error("sigma is not injective at vertex {0} although the datum is stable")]
    SigmaNotInjective(String),
    #[error("graded basis at vertex {0} is not invertible")]
    NotInvertible(String),
    #[error("invalid grading: {0}")]
    Grading(String),
    #[error("invalid ADHM file: {0}")]
    File(String),
}

/// `(B, i, j)` with `B_h: V_out(h) → V_in(h)`, `i_k: W_k → V_k`, `j_k: V_k → W_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdhmData {
    graph: QuiverGraph,
    v: Vec<usize>,
    w: Vec<usize>,
    b: Vec<QMatrix>,
    i: Vec<QMatrix>,
    j: Vec<QMatrix>,
}

fn check_shape(what: impl FnOnce() -> String, m: &QMatrix, want: (usize, usize)) -> Result<(), AdhmError> {
    if (m.rows(), m.cols()) != want {
        return Err(AdhmError::Shape { what: what(), got: (m.rows(), m.cols()), want });
    }
    Ok(())
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl AdhmData {
    pub fn zero(graph: QuiverGraph, v: Vec<usize>, w: Vec<usize>) -> Result<Self, AdhmError> {
        let n = graph.n_vertices();
        if v.len() != n || w.len() != n {
            return Err(CartanError::Mismatch(v.len().max(w.len()), n).into());
        }
        let mut b = Vec::new();
        for h in graph.oriented_edges() {
            b.push(QMatrix::zeros(v[graph.vin(h)?], v[graph.vout(h)?]));
        }
        let i = (0..n).map(|k| QMatrix::zeros(v[k], w[k])).collect();
        let j = (0..n).map(|k| QMatrix::zeros(w[k], v[k])).collect();
        Ok(Self { graph, v, w, b, i, j })
    }

    fn slot(&self, h: OrientedEdge) -> Result<usize, AdhmError> {
        let e = self.graph.edges().len();
        if h.edge >= e {
            return Err(CartanError::UnknownEdge(h.edge).into());
        }
        Ok(h.edge + if h.reversed { e } else { 0 })
    }

    pub fn set_b(&mut self, h: OrientedEdge, m: QMatrix) -> Result<(), AdhmError> {
        let s = self.slot(h)?;
        let want = (self.v[self.graph.vin(h)?], self.v[self.graph.vout(h)?]);
        check_shape(|| format!("B[{}{}]", h.edge, if h.reversed { "'" } else { "" }), &m, want)?;
        self.b[s] = m;
        Ok(())
    }

    pub fn set_i(&mut self, k: usize, m: QMatrix) -> Result<(), AdhmError> {
        let want = (self.v[k], self.w[k]);
        check_shape(|| format!("i[{}]", self.graph.vertices()[k]), &m, want)?;
        self.i[k] = m;
        Ok(())
    }

    pub fn set_j(&mut self, k: usize, m: QMatrix) -> Result<(), AdhmError> {
        let want = (self.w[k], self.v[k]);
        check_shape(|| format!("j[{}]", self.graph.vertices()[k]), &m, want)?;
        self.j[k] = m;
        Ok(())
    }

    pub fn graph(&self) -> &QuiverGraph {
        &self.graph
    }

    pub fn v(&self) -> &[usize] {
        &self.v
    }

    pub fn w(&self) -> &[usize] {
        &self.w
    }

    pub fn b(&self, h: OrientedEdge) -> Result<&QMatrix, AdhmError> {
        Ok(&self.b[self.slot(h)?])
    }

    pub fn i(&self, k: usize) -> &QMatrix {
        &self.i[k]
    }

    pub fn j(&self, k: usize) -> &QMatrix {
        &self.j[k]
    }

    /// `g · (B, i, j) = (g_in B g_out^-1, g i, j g^-1)`.
    pub fn base_change(&self, g: &[QMatrix]) -> Result<AdhmData, AdhmError> {
        if g.len() != self.v.len() {
            return Err(CartanError::Mismatch(g.len(), self.v.len()).into());
        }
        let mut inv = Vec::with_capacity(g.len());
        for (k, gk) in g.iter().enumerate() {
            check_shape(|| format!("g[{}]", self.graph.vertices()[k]), gk, (self.v[k], self.v[k]))?;
            inv.push(gk.inverse().map_err(|_| AdhmError::NotInvertible(self.graph.vertices()[k].clone()))?);
        }
        let mut out = self.clone();
        for h in self.graph.oriented_edges() {
            let (o, i) = (self.graph.vout(h)?, self.graph.vin(h)?);
            let s = self.slot(h)?;
            out.b[s] = g[i].mul(&self.b[s])?.mul(&inv[o])?;
        }
        for k in 0..self.v.len() {
            out.i[k] = g[k].mul(&self.i[k])?;
            out.j[k] = self.j[k].mul(&inv[k])?;
        }
        Ok(out)
    }
}

/// `μ_k = Σ_{in(h)=k} ε(h) B_h B_h̄ + i_k j_k`.
pub fn moment_map(d: &AdhmData) -> Result<Vec<QMatrix>, AdhmError> {
    let g = &d.graph;
    let mut out = Vec::with_capacity(d.v.len());
    for k in 0..d.v.len() {
        let mut m = d.i[k].mul(&d.j[k])?;
        for h in g.incoming(k) {
            let t = d.b(h)?.mul(d.b(h.bar())?)?.scale(&rat(g.eps(h) as i64));
            m = m.add(&t)?;
        }
        out.push(m);
    }
    Ok(out)
}

/// Outcome of the invariant-subspace iteration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    /// Refinement rounds that shrank some subspace.
    pub iterations: usize,
    /// Dimensions of the largest `B`-invariant graded subspace inside `Ker j`.
    pub destabilizing_dims: Vec<usize>,
}

fn row_reduce(m: &QMatrix) -> QMatrix {
    let (r, piv) = m.rref();
    r.block(0..piv.len(), 0..m.cols())
}

/// Computes `S ⊆ Ker j` as `Ker K_k`, growing `K_k` by `K_in(h) B_h` for `out(h) = k`
/// until the ranks stabilize.
pub fn stability_report(d: &AdhmData) -> Result<StabilityReport, AdhmError> {
    let g = &d.graph;
    let n = d.v.len();
    let mut ks: Vec<QMatrix> = d.j.iter().map(row_reduce).collect();
    let mut iterations = 0;
    loop {
        let mut next = Vec::with_capacity(n);
        for k in 0..n {
            let mut m = ks[k].clone();
            for h in g.outgoing(k) {
                m = m.vstack(&ks[g.vin(h)?].mul(d.b(h)?)?)?;
            }
            next.push(row_reduce(&m));
        }
        let changed = next.iter().zip(&ks).any(|(a, b)| a.rows() != b.rows());
        ks = next;
        if !changed {
            break;
        }
        iterations += 1;
    }
    let dims: Vec<usize> = ks.iter().zip(&d.v).map(|(k, &v)| v - k.rows()).collect();
    Ok(StabilityReport { stable: dims.iter().all(|&x| x == 0), iterations, destabilizing_dims: dims })
}

pub fn is_stable(d: &AdhmData) -> Result<bool, AdhmError> {
    Ok(stability_report(d)?.stable)
}

/// `σ_k`, `τ_k` and rank data at vertex `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSigma {
    pub sigma: QMatrix,
    pub tau: QMatrix,
    pub rank_sigma: usize,
    pub rank_tau: usize,
    pub codim_im_tau: usize,
}

/// `σ_k = (B_h̄)_{in(h)=k} ⊕ j_k` and `τ_k = (ε(h) B_h)_{in(h)=k} ⊕ i_k`; checks
/// `τ_k σ_k = 0` and, for stable data, injectivity of `σ_k`.
pub fn tau_sigma_at_point(d: &AdhmData, k: usize) -> Result<TauSigma, AdhmError> {
    let (sigma, tau) = sigma_tau(d, k)?;
    if !tau.mul(&sigma)?.is_zero() {
        return Err(AdhmError::MomentMap(d.graph.vertices()[k].clone()));
    }
    let rank_sigma = sigma.rank();
    if rank_sigma < d.v[k] && is_stable(d)? {
        return Err(AdhmError::SigmaNotInjective(d.graph.vertices()[k].clone()));
    }
    let rank_tau = tau.rank();
    Ok(TauSigma { sigma, tau, rank_sigma, rank_tau, codim_im_tau: d.v[k] - rank_tau })
}

fn sigma_tau(d: &AdhmData, k: usize) -> Result<(QMatrix, QMatrix), AdhmError> {
    let g = &d.graph;
    let mut sigma = QMatrix::zeros(0, d.v[k]);
    let mut tau = QMatrix::zeros(d.v[k], 0);
    for h in g.incoming(k) {
        sigma = sigma.vstack(d.b(h.bar())?)?;
        tau = tau.hstack(&d.b(h)?.scale(&rat(g.eps(h) as i64)))?;
    }
    Ok((sigma.vstack(&d.j[k])?, tau.hstack(&d.i[k])?))
}

/// `codim Im τ_k`, defined whether or not the moment map vanishes.
pub fn codim_im_tau(d: &AdhmData, k: usize) -> Result<usize, AdhmError> {
    let (_, tau) = sigma_tau(d, k)?;
    Ok(d.v[k] - tau.rank())
}

/// Basis of `V_k` (or `W_k`) as matrix columns, each labelled by its eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub basis: QMatrix,
    pub labels: Vec<SpectralParam>,
}

impl GradedBasis {
    pub fn coordinate(labels: Vec<SpectralParam>) -> Self {
        Self { basis: QMatrix::identity(labels.len()), labels }
    }
}

/// Eigenspace decompositions of every `V_k` and `W_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdhmGrading {
    pub v: Vec<GradedBasis>,
    pub w: Vec<GradedBasis>,
}

fn inverse_basis(gb: &GradedBasis, dim: usize, name: &str) -> Result<QMatrix, AdhmError> {
    if gb.labels.len() != dim || gb.basis.rows() != dim || gb.basis.cols() != dim {
        return Err(AdhmError::Grading(format!(
            "{name} needs a {dim}x{dim} basis with {dim} labels"
        )));
    }
    gb.basis.inverse().map_err(|_| AdhmError::NotInvertible(name.to_string()))
}

/// Every nonzero entry `(r, c)` of `m` must satisfy `rows[r] = cols[c]·ε^shift`.
fn respects(m: &QMatrix, rows: &[SpectralParam], cols: &[SpectralParam], shift: i64) -> bool {
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| m.get(r, c).is_zero() || rows[r] == cols[c].shift(shift)))
}

/// Checks `B_h V_out(λ) ⊆ V_in(ε^{-m(h)-1}λ)`, `i W(λ) ⊆ V(ε^-1 λ)`, `j V(λ) ⊆ W(ε^-1 λ)`.
pub fn check_fixed(d: &AdhmData, grading: &AdhmGrading) -> Result<bool, AdhmError> {
    let g = &d.graph;
    let n = d.v.len();
    if grading.v.len() != n || grading.w.len() != n {
        return Err(AdhmError::Grading(format!("expected {n} vertices")));
    }
    let names = g.vertices();
    let mut pinv = Vec::with_capacity(n);
    let mut qinv = Vec::with_capacity(n);
    for (k, name) in names.iter().enumerate() {
        pinv.push(inverse_basis(&grading.v[k], d.v[k], &format!("V_{name}"))?);
        qinv.push(inverse_basis(&grading.w[k], d.w[k], &format!("W_{name}"))?);
    }
    for h in g.oriented_edges() {
        let (o, i) = (g.vout(h)?, g.vin(h)?);
        let m = pinv[i].mul(d.b(h)?)?.mul(&grading.v[o].basis)?;
        let shift = -(g.edge_weight_m(h)? as i64) - 1;
        if !respects(&m, &grading.v[i].labels, &grading.v[o].labels, shift) {
            return Ok(false);
        }
    }
    for k in 0..n {
        let ii = pinv[k].mul(&d.i[k])?.mul(&grading.w[k].basis)?;
        if !respects(&ii, &grading.v[k].labels, &grading.w[k].labels, -1) {
            return Ok(false);
        }
        let jj = qinv[k].mul(&d.j[k])?.mul(&grading.v[k].basis)?;
        if !respects(&jj, &grading.w[k].labels, &grading.v[k].labels, -1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The datum of an `A_1` fixed point: `j` sends the `t`-th basis vector of `V` to the
/// `S[t]`-th coordinate line of `W`, `i = 0`.
pub fn sl2_fixed_point_data(fp: &FixedPointSl2) -> Result<(AdhmData, AdhmGrading), AdhmError> {
    let (n, v) = (fp.n(), fp.level());
    let mut d = AdhmData::zero(sl2_graph(), vec![v], vec![n])?;
    let mut j = QMatrix::zeros(n, v);
    for (t, &s) in fp.subset.iter().enumerate() {
        j.set(s, t, rat(1));
    }
    d.set_j(0, j)?;
    let grading = AdhmGrading {
        v: vec![GradedBasis::coordinate(fp.subset.iter().map(|&s| fp.w_params[s].shift(1)).collect())],
        w: vec![GradedBasis::coordinate(fp.w_params.clone())],
    };
    Ok((d, grading))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeMatrixWire {
    edge: usize,
    reversed: bool,
    matrix: QMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisWire {
    basis: QMatrix,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradingWire {
    #[serde(rename = "V")]
    v: BTreeMap<String, BasisWire>,
    #[serde(rename = "W")]
    w: BTreeMap<String, BasisWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AdhmWire {
    graph: QuiverGraph,
    v: Vec<usize>,
    w: Vec<usize>,
    #[serde(rename = "B", default)]
    b: Vec<EdgeMatrixWire>,
    #[serde(default)]
    i: BTreeMap<String, QMatrix>,
    #[serde(default)]
    j: BTreeMap<String, QMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<GradingWire>,
}

/// An ADHM datum with an optional eigenspace grading, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdhmFile {
    pub data: AdhmData,
    pub grading: Option<AdhmGrading>,
}

/// JSON `[]` carries no column count; empty matrices are reshaped to the expected size.
fn fit(m: QMatrix, want: (usize, usize)) -> QMatrix {
    if m.rows() == 0 && want.0 == 0 {
        QMatrix::zeros(0, want.1)
    } else {
        m
    }
}

impl AdhmFile {
    pub fn from_json(s: &str) -> Result<Self, AdhmError> {
        let w: AdhmWire = serde_json::from_str(s).map_err(|e| AdhmError::File(e.to_string()))?;
        let mut d = AdhmData::zero(w.graph.clone(), w.v.clone(), w.w.clone())?;
        let mut seen = std::collections::BTreeSet::new();
        for e in w.b {
            let h = OrientedEdge { edge: e.edge, reversed: e.reversed };
            if !seen.insert(h) {
                return Err(AdhmError::File(format!("edge {} given twice", e.edge)));
            }
            let want = (d.v[d.graph.vin(h)?], d.v[d.graph.vout(h)?]);
            d.set_b(h, fit(e.matrix, want))?;
        }
        for (name, m) in w.i {
            let k = d.graph.index_of(&name)?;
            let want = (d.v[k], d.w[k]);
            d.set_i(k, fit(m, want))?;
        }
        for (name, m) in w.j {
            let k = d.graph.index_of(&name)?;
            let want = (d.w[k], d.v[k]);
            d.set_j(k, fit(m, want))?;
        }
        let grading = match w.grading {
            None => None,
            Some(gw) => {
                let side = |map: BTreeMap<String, BasisWire>, dims: &[usize]| -> Result<Vec<GradedBasis>, AdhmError> {
                    for name in map.keys() {
                        d.graph.index_of(name)?;
                    }
                    let mut out = Vec::new();
                    for (k, name) in d.graph.vertices().iter().enumerate() {
                        out.push(match map.get(name) {
                            Some(b) => GradedBasis {
                                basis: fit(b.basis.clone(), (dims[k], dims[k])),
                                labels: b.labels.iter().map(|l| l.parse()).collect::<Result<_, _>>()?,
                            },
                            None if dims[k] == 0 => GradedBasis::coordinate(vec![]),
                            None => return Err(AdhmError::Grading(format!("missing basis at vertex {name}"))),
                        });
                    }
                    Ok(out)
                };
                Some(AdhmGrading { v: side(gw.v, &d.v)?, w: side(gw.w, &d.w)? })
            }
        };
        Ok(AdhmFile { data: d, grading })
    }

    pub fn to_json(&self) -> String {
        let d = &self.data;
        let names = d.graph.vertices();
        let b = d
            .graph
            .oriented_edges()
            .into_iter()
            .map(|h| EdgeMatrixWire { edge: h.edge, reversed: h.reversed, matrix: d.b(h).expect("own edge").clone() })
            .collect();
        let side = |v: &[GradedBasis]| {
            names
                .iter()
                .zip(v)
                .map(|(n, g)| {
                    (n.clone(), BasisWire { basis: g.basis.clone(), labels: g.labels.iter().map(|l| l.to_string()).collect() })
                })
                .collect()
        };
        let wire = AdhmWire {
            graph: d.graph.clone(),
            v: d.v.clone(),
            w: d.w.clone(),
            b,
            i: names.iter().cloned().zip(d.i.iter().cloned()).collect(),
            j: names.iter().cloned().zip(d.j.iter().cloned()).collect(),
            grading: self.grading.as_ref().map(|g| GradingWire { v: side(&g.v), w: side(&g.w) }),
        };
        serde_json::to_string(&wire).expect("ADHM data serializes")
    }
}
