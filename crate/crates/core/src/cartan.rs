//! Quiver graphs, Cartan data, weights and q-integers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::LaurentQ;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("edge {0} joins vertex {1:?} to itself")]
    SelfLoop(usize, String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexIndex(usize),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
    #[error("index sets differ: {0} vs {1} vertices")]
    Mismatch(usize, usize),
    #[error("q-binomial needs 0 <= r <= n, got n={n} r={r}")]
    BinomialRange { n: i64, r: i64 },
    #[error("q-integer quotient is not exact")]
    NotExact,
    #[error("pairing of two weights with fundamental parts is undefined")]
    UndefinedPairing,
}

/// One orientation of an edge: `reversed = false` is the orientation in `Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedEdge {
    pub edge: usize,
    pub reversed: bool,
}

impl OrientedEdge {
    pub fn bar(self) -> Self {
        Self { edge: self.edge, reversed: !self.reversed }
    }
}

/// Finite graph without edge loops, with an orientation `Ω` given by each edge's
/// `(out, in)` pair. Parallel edges are numbered in input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeWire {
    out: String,
    #[serde(rename = "in")]
    into: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphWire {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeWire>,
}

impl QuiverGraph {
    pub fn new(vertices: Vec<String>, edges: &[(&str, &str)]) -> Result<Self, CartanError> {
        let idx = index_map(&vertices)?;
        let look = |v: &str| idx.get(v).copied().ok_or_else(|| CartanError::UnknownVertex(v.to_string()));
        let e = edges
            .iter()
            .map(|(o, i)| Ok((look(o)?, look(i)?)))
            .collect::<Result<Vec<_>, CartanError>>()?;
        Self::from_indices(vertices, e)
    }

    pub fn from_indices(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self, CartanError> {
        index_map(&vertices)?;
        for (n, &(o, i)) in edges.iter().enumerate() {
            if o >= vertices.len() {
                return Err(CartanError::VertexIndex(o));
            }
            if i >= vertices.len() {
                return Err(CartanError::VertexIndex(i));
            }
            if o == i {
                return Err(CartanError::SelfLoop(n, vertices[o].clone()));
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Type `A_n`: vertices `"1".."n"` and edges `k -> k+1`.
    pub fn type_a(n: usize) -> Self {
        let vertices = (1..=n).map(|k| k.to_string()).collect();
        let edges = (1..n).map(|k| (k - 1, k)).collect();
        Self { vertices, edges }
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        serde_json::from_str(s).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.wire()).expect("graph serializes")
    }

    fn wire(&self) -> GraphWire {
        GraphWire {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(o, i)| EdgeWire {
                    out: self.vertices[o].clone(),
                    into: self.vertices[i].clone(),
                })
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Edges as `(out, in)` index pairs in `Ω`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, id: &str) -> Result<usize, CartanError> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| CartanError::UnknownVertex(id.to_string()))
    }

    /// The oriented edge set `H = Ω ⊔ Ω̄`.
    pub fn oriented_edges(&self) -> Vec<OrientedEdge> {
        let fwd = (0..self.edges.len()).map(|edge| OrientedEdge { edge, reversed: false });
        let rev = (0..self.edges.len()).map(|edge| OrientedEdge { edge, reversed: true });
        fwd.chain(rev).collect()
    }

    fn check_edge(&self, h: OrientedEdge) -> Result<(usize, usize), CartanError> {
        let &(o, i) = self.edges.get(h.edge).ok_or(CartanError::UnknownEdge(h.edge))?;
        Ok(if h.reversed { (i, o) } else { (o, i) })
    }

    pub fn vout(&self, h: OrientedEdge) -> Result<usize, CartanError> {
        Ok(self.check_edge(h)?.0)
    }

    pub fn vin(&self, h: OrientedEdge) -> Result<usize, CartanError> {
        Ok(self.check_edge(h)?.1)
    }

    /// `ε(h) = +1` on `Ω`, `-1` on `Ω̄`.
    pub fn eps(&self, h: OrientedEdge) -> i32 {
        if h.reversed {
            -1
        } else {
            1
        }
    }

    /// Oriented edges with `vin(h) = k`.
    pub fn incoming(&self, k: usize) -> Vec<OrientedEdge> {
        self.oriented_edges()
            .into_iter()
            .filter(|h| self.check_edge(*h).map(|(_, i)| i == k).unwrap_or(false))
            .collect()
    }

    /// Oriented edges with `vout(h) = k`.
    pub fn outgoing(&self, k: usize) -> Vec<OrientedEdge> {
        self.oriented_edges()
            .into_iter()
            .filter(|h| self.check_edge(*h).map(|(o, _)| o == k).unwrap_or(false))
            .collect()
    }

    /// `m(h_p) = b' + 1 - 2p` where `h_p` runs from the lower to the higher vertex
    /// index, and `m(h̄) = -m(h)`.
    pub fn edge_weight_m(&self, h: OrientedEdge) -> Result<i32, CartanError> {
        let (o, i) = self.check_edge(h)?;
        let (lo, hi) = (o.min(i), o.max(i));
        let parallel: Vec<usize> = (0..self.edges.len())
            .filter(|&e| {
                let (a, b) = self.edges[e];
                a.min(b) == lo && a.max(b) == hi
            })
            .collect();
        let b = parallel.len() as i32;
        let p = parallel.iter().position(|&e| e == h.edge).expect("edge in its own class") as i32 + 1;
        let m = b + 1 - 2 * p;
        Ok(if o == lo { m } else { -m })
    }
}

impl Serialize for QuiverGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuiverGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = GraphWire::deserialize(d)?;
        let edges: Vec<(&str, &str)> = w.edges.iter().map(|e| (e.out.as_str(), e.into.as_str())).collect();
        Self::new(w.vertices.clone(), &edges).map_err(serde::de::Error::custom)
    }
}

fn index_map(vertices: &[String]) -> Result<BTreeMap<&str, usize>, CartanError> {
    let mut idx = BTreeMap::new();
    for (n, v) in vertices.iter().enumerate() {
        if idx.insert(v.as_str(), n).is_some() {
            return Err(CartanError::DuplicateVertex(v.clone()));
        }
    }
    Ok(idx)
}

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub c: IntMatrix,
    pub a: IntMatrix,
    pub a_omega: IntMatrix,
    pub a_omega_bar: IntMatrix,
    pub c_prime: IntMatrix,
    pub c_doubleprime: IntMatrix,
    pub c_omega: IntMatrix,
}

impl CartanData {
    pub fn rank(&self) -> usize {
        self.c.len()
    }
}

pub fn cartan_matrix(g: &QuiverGraph) -> CartanData {
    let n = g.n_vertices();
    let zero = vec![vec![0i64; n]; n];
    let ident: IntMatrix = (0..n).map(|k| (0..n).map(|l| (k == l) as i64).collect()).collect();
    let mut a_omega = zero.clone();
    for &(o, i) in g.edges() {
        a_omega[i][o] += 1;
    }
    let a_omega_bar: IntMatrix = (0..n).map(|k| (0..n).map(|l| a_omega[l][k]).collect()).collect();
    let a: IntMatrix = (0..n)
        .map(|k| (0..n).map(|l| a_omega[k][l] + a_omega_bar[k][l]).collect())
        .collect();
    let c: IntMatrix = (0..n).map(|k| (0..n).map(|l| 2 * ident[k][l] - a[k][l]).collect()).collect();
    let c_prime = (0..n).map(|k| (0..n).map(|l| c[k][l] - ident[k][l]).collect()).collect();
    let c_omega = (0..n)
        .map(|k| (0..n).map(|l| ident[k][l] - a_omega[k][l]).collect())
        .collect();
    CartanData {
        c,
        a,
        a_omega,
        a_omega_bar,
        c_prime,
        c_doubleprime: ident,
        c_omega,
    }
}

/// `fund · Λ - root · α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub fund: Vec<i64>,
    pub root: Vec<i64>,
}

impl Weight {
    pub fn new(fund: Vec<i64>, root: Vec<i64>) -> Self {
        Self { fund, root }
    }

    /// `Σ w_k Λ_k`.
    pub fn lambda(w: &[i64]) -> Self {
        Self::new(w.to_vec(), vec![0; w.len()])
    }

    /// `Σ v_k α_k`.
    pub fn alpha(v: &[i64]) -> Self {
        Self::new(vec![0; v.len()], v.iter().map(|x| -x).collect())
    }

    pub fn len(&self) -> usize {
        self.fund.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fund.is_empty()
    }

    fn check(&self, n: usize) -> Result<(), CartanError> {
        if self.fund.len() != n {
            return Err(CartanError::Mismatch(self.fund.len(), n));
        }
        if self.root.len() != n {
            return Err(CartanError::Mismatch(self.root.len(), n));
        }
        Ok(())
    }
}

/// Symmetric bilinear form with `(α_k, α_l) = C_kl` and `(α_k, Λ_l) = δ_kl`.
pub fn pairing(cd: &CartanData, x: &Weight, y: &Weight) -> Result<i64, CartanError> {
    let n = cd.rank();
    x.check(n)?;
    y.check(n)?;
    let fx = x.fund.iter().any(|&a| a != 0);
    let fy = y.fund.iter().any(|&a| a != 0);
    if fx && fy {
        return Err(CartanError::UndefinedPairing);
    }
    let mut s = 0;
    for k in 0..n {
        s -= x.fund[k] * y.root[k] + x.root[k] * y.fund[k];
        for l in 0..n {
            s += x.root[k] * cd.c[k][l] * y.root[l];
        }
    }
    Ok(s)
}

/// `⟨h_k, x⟩`.
pub fn coroot_pairing(cd: &CartanData, k: usize, x: &Weight) -> Result<i64, CartanError> {
    let n = cd.rank();
    x.check(n)?;
    if k >= n {
        return Err(CartanError::VertexIndex(k));
    }
    Ok(x.fund[k] - (0..n).map(|l| cd.c[k][l] * x.root[l]).sum::<i64>())
}

/// `⟨h_k, w - v⟩`, the rank of the tautological complex at `k`.
pub fn rank_ck(cd: &CartanData, v: &[i64], w: &[i64], k: usize) -> Result<i64, CartanError> {
    coroot_pairing(cd, k, &Weight::new(w.to_vec(), v.to_vec()))
}

/// `(v, 2w - v)`.
pub fn dim_quiver_variety(cd: &CartanData, v: &[i64], w: &[i64]) -> Result<i64, CartanError> {
    let two_w: Vec<i64> = w.iter().map(|x| 2 * x).collect();
    pairing(cd, &Weight::alpha(v), &Weight::new(two_w, v.to_vec()))
}

pub fn is_dominant(cd: &CartanData, x: &Weight) -> Result<bool, CartanError> {
    for k in 0..cd.rank() {
        if coroot_pairing(cd, k, x)? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[n]_q = (q^n - q^-n) / (q - q^-1)` for any integer `n`.
pub fn q_int(n: i64) -> LaurentQ {
    if n < 0 {
        return -q_int(-n);
    }
    LaurentQ::from_terms((0..n).map(|i| ((n - 1 - 2 * i) as i32, 1)))
}

pub fn q_factorial(n: u32) -> LaurentQ {
    (1..=n as i64).fold(LaurentQ::one(), |acc, k| &acc * &q_int(k))
}

/// Gaussian binomial, from `[n, r] = q^{-r}[n-1, r] + q^{n-r}[n-1, r-1]`.
pub fn q_binomial(n: i64, r: i64) -> Result<LaurentQ, CartanError> {
    if n < 0 || r < 0 || r > n {
        return Err(CartanError::BinomialRange { n, r });
    }
    let mut row = vec![LaurentQ::one()];
    for m in 1..=n {
        let mut next = vec![LaurentQ::one(); (m + 1) as usize];
        for k in 1..m {
            let a = row[k as usize].shift(-(k as i32));
            let b = row[(k - 1) as usize].shift((m - k) as i32);
            next[k as usize] = a + b;
        }
        row = next;
    }
    Ok(row[r as usize].clone())
}

/// `[q^h; n, r]` on the `h`-eigenvalue `m`: `Π_{s=1..r} [m+n-s+1]_q / [s]_q`.
pub fn qh_binomial(m: i64, n: i64, r: i64) -> Result<LaurentQ, CartanError> {
    if r < 1 {
        return Err(CartanError::BinomialRange { n, r });
    }
    let num = (1..=r).fold(LaurentQ::one(), |acc, s| &acc * &q_int(m + n - s + 1));
    num.div_exact(&q_factorial(r as u32)).ok_or(CartanError::NotExact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lq(pairs: &[(i32, i64)]) -> LaurentQ {
        LaurentQ::from_terms(pairs.iter().copied())
    }

    fn two_vertices(edges: usize) -> QuiverGraph {
        let e = vec![("1", "2"); edges];
        QuiverGraph::new(vec!["1".into(), "2".into()], &e).unwrap()
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_matrix(&QuiverGraph::type_a(1)).c, vec![vec![2]]);
        assert_eq!(cartan_matrix(&two_vertices(1)).c, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_matrix(&two_vertices(2)).c, vec![vec![2, -2], vec![-2, 2]]);
    }

    #[test]
    fn self_loops_rejected() {
        let r = QuiverGraph::new(vec!["1".into()], &[("1", "1")]);
        assert!(matches!(r, Err(CartanError::SelfLoop(0, _))));
        assert!(QuiverGraph::new(vec!["1".into()], &[("1", "2")]).is_err());
        assert!(QuiverGraph::new(vec!["1".into(), "1".into()], &[]).is_err());
    }

    #[test]
    fn edge_labels() {
        let g = two_vertices(1);
        let h = OrientedEdge { edge: 0, reversed: false };
        assert_eq!(g.edge_weight_m(h).unwrap(), 0);
        let g = two_vertices(2);
        let h1 = OrientedEdge { edge: 0, reversed: false };
        let h2 = OrientedEdge { edge: 1, reversed: false };
        assert_eq!(g.edge_weight_m(h1).unwrap(), 1);
        assert_eq!(g.edge_weight_m(h2).unwrap(), -1);
        assert_eq!(g.edge_weight_m(h1.bar()).unwrap(), -1);
        assert!(g.edge_weight_m(OrientedEdge { edge: 5, reversed: false }).is_err());
    }

    #[test]
    fn pairing_examples() {
        let cd = cartan_matrix(&QuiverGraph::type_a(2));
        assert_eq!(coroot_pairing(&cd, 0, &Weight::lambda(&[1, 0])).unwrap(), 1);
        assert_eq!(pairing(&cd, &Weight::alpha(&[1, 0]), &Weight::alpha(&[0, 1])).unwrap(), -1);
        let y = Weight::new(vec![2, 2], vec![1, 1]);
        assert_eq!(pairing(&cd, &Weight::alpha(&[1, 1]), &y).unwrap(), 2);
        assert_eq!(
            pairing(&cd, &Weight::lambda(&[1, 0]), &Weight::lambda(&[0, 1])),
            Err(CartanError::UndefinedPairing)
        );
        assert!(pairing(&cd, &Weight::lambda(&[1]), &Weight::alpha(&[0, 1])).is_err());
    }

    #[test]
    fn rank_and_dimension() {
        let a1 = cartan_matrix(&QuiverGraph::type_a(1));
        let a2 = cartan_matrix(&QuiverGraph::type_a(2));
        assert_eq!(rank_ck(&a1, &[0], &[1], 0).unwrap(), 1);
        assert_eq!(rank_ck(&a1, &[2], &[5], 0).unwrap(), 1);
        assert_eq!(rank_ck(&a2, &[1, 0], &[1, 0], 1).unwrap(), 1);
        assert_eq!(dim_quiver_variety(&a1, &[2], &[5]).unwrap(), 12);
        assert_eq!(dim_quiver_variety(&a1, &[0], &[5]).unwrap(), 0);
        assert_eq!(dim_quiver_variety(&a2, &[1, 1], &[1, 1]).unwrap(), 2);
    }

    #[test]
    fn dominance() {
        let a1 = cartan_matrix(&QuiverGraph::type_a(1));
        assert!(is_dominant(&a1, &Weight::lambda(&[1])).unwrap());
        assert!(!is_dominant(&a1, &Weight::alpha(&[-1])).unwrap());
        for n in 0..6 {
            for v in 0..6 {
                let x = Weight::new(vec![n], vec![v]);
                assert_eq!(is_dominant(&a1, &x).unwrap(), 2 * v <= n);
            }
        }
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_int(2), lq(&[(1, 1), (-1, 1)]));
        assert_eq!(q_int(0), LaurentQ::zero());
        assert_eq!(q_binomial(5, 0).unwrap(), LaurentQ::one());
        assert!(q_binomial(2, 3).is_err());
        assert_eq!(qh_binomial(0, 1, 1).unwrap(), LaurentQ::one());
        assert_eq!(qh_binomial(1, 0, 1).unwrap(), LaurentQ::one());
    }

    #[test]
    fn graph_json_roundtrip() {
        let s = r#"{"vertices":["1","2"],"edges":[{"out":"1","in":"2"}]}"#;
        let g = QuiverGraph::from_json(s).unwrap();
        assert_eq!(g.to_json(), s);
        assert!(QuiverGraph::from_json(r#"{"vertices":["1"],"edges":[{"out":"1","in":"1"}]}"#).is_err());
    }
}
