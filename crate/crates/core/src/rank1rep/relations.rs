//! Mode-by-mode verification of the loop algebra relations in the rank-one model.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use super::{block_monomial, partitions_bounded, psi_coefficients, GrassElement, Rank1Error, Rank1Model};
use crate::exactalg::{LaurentQ, MultiLaurent};
use crate::par::{self, Exec};
use crate::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    E(i64),
    F(i64),
    Psi(Sign, i64),
}

/// Which identity a check instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    /// `(q - q^-1)[e_r, f_s] = ψ^+_{r+s} - ψ^-_{r+s}`.
    Ef,
    /// `x_{a+1} x_b - t x_a x_{b+1} = t x_b x_{a+1} - x_{b+1} x_a` with `t = q^{±2}`.
    Ex2(Sign),
    /// `ψ_{a+1} x_b - t ψ_a x_{b+1} = t x_b ψ_{a+1} - x_{b+1} ψ_a`.
    Hx { psi: Sign, x: Sign },
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs = |s: &Sign| if *s == Sign::Plus { "e" } else { "f" };
        match self {
            RelationKind::Ef => write!(f, "EF"),
            RelationKind::Ex2(s) => write!(f, "exchange({})", xs(s)),
            RelationKind::Hx { psi, x } => write!(f, "psi{}-{}", psi, xs(x)),
        }
    }
}

/// A failing identity together with the nonzero residual or the error raised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub relation: String,
    pub modes: Vec<i64>,
    pub element: GrassElement,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<MultiLaurent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at modes {:?} on {}", self.relation, self.modes, self.element)?;
        if let Some(r) = &self.residual {
            write!(f, ", residual {r}")?;
        }
        if let Some(e) = &self.error {
            write!(f, ", error: {e}")?;
        }
        Ok(())
    }
}

/// Operators of one model on `N` variables with `ψ` tables cached for every level.
#[derive(Clone, Debug)]
pub struct RelationChecker {
    model: Rank1Model,
    n: usize,
    order: usize,
    psi_plus: Vec<Vec<MultiLaurent>>,
    psi_minus: Vec<Vec<MultiLaurent>>,
}

impl RelationChecker {
    pub fn new(model: Rank1Model, n: usize, order: usize) -> Result<Self, Rank1Error> {
        let table = |s| (0..=n).map(|v| psi_coefficients(n, v, s, order)).collect::<Result<Vec<_>, _>>();
        Ok(Self {
            model,
            n,
            order,
            psi_plus: table(Sign::Plus)?,
            psi_minus: table(Sign::Minus)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `ψ^±_j m`, zero outside the support of the series.
    pub fn psi_mode(&self, sign: Sign, j: i64, m: &GrassElement) -> Result<GrassElement, Rank1Error> {
        let k = match sign {
            Sign::Plus => j,
            Sign::Minus => -j,
        };
        if k < 0 || !m.in_range() || m.is_zero() {
            return Ok(GrassElement::zero(m.n, m.level));
        }
        if k as usize > self.order {
            return Err(Rank1Error::OrderTooSmall { order: self.order, mode: j });
        }
        let table = match sign {
            Sign::Plus => &self.psi_plus,
            Sign::Minus => &self.psi_minus,
        };
        Ok(m.mul_poly(&table[m.level as usize][k as usize]))
    }

    fn apply(&self, op: Op, m: &GrassElement) -> Result<GrassElement, Rank1Error> {
        match op {
            Op::E(r) => self.model.apply_e(r, m),
            Op::F(s) => self.model.apply_f(s, m),
            Op::Psi(sign, j) => self.psi_mode(sign, j, m),
        }
    }

    pub fn check(&self, kind: RelationKind, a: i64, b: i64, m: &GrassElement) -> Result<(), Rank1Error> {
        let mut ev = Evaluator::new(self, m);
        ev.check(kind, a, b)
    }
}

/// Memoizes operator words applied to one element.
struct Evaluator<'a> {
    checker: &'a RelationChecker,
    base: &'a GrassElement,
    cache: HashMap<Vec<Op>, GrassElement>,
}

impl<'a> Evaluator<'a> {
    fn new(checker: &'a RelationChecker, base: &'a GrassElement) -> Self {
        Self { checker, base, cache: HashMap::new() }
    }

    /// `ops[0] ∘ ops[1] ∘ … ` applied to the base element.
    fn word(&mut self, ops: &[Op]) -> Result<GrassElement, Rank1Error> {
        if ops.is_empty() {
            return Ok(self.base.clone());
        }
        if let Some(x) = self.cache.get(ops) {
            return Ok(x.clone());
        }
        let inner = self.word(&ops[1..])?;
        let out = self.checker.apply(ops[0], &inner)?;
        self.cache.insert(ops.to_vec(), out.clone());
        Ok(out)
    }

    fn residual(&mut self, terms: &[(LaurentQ, Vec<Op>)]) -> Result<MultiLaurent, Rank1Error> {
        let mut acc: Option<GrassElement> = None;
        for (c, w) in terms {
            let x = self.word(w)?.scale(c);
            acc = Some(match acc {
                None => x,
                Some(a) => a.add(&x)?,
            });
        }
        Ok(acc.map(|a| a.poly).unwrap_or_else(|| MultiLaurent::zero(self.base.n)))
    }

    fn terms(&self, kind: RelationKind, a: i64, b: i64) -> Result<Vec<(LaurentQ, Vec<Op>)>, Rank1Error> {
        let one = LaurentQ::one;
        let order = self.checker.order;
        Ok(match kind {
            RelationKind::Ef => {
                let j = a + b;
                if j.unsigned_abs() as usize > order {
                    return Err(Rank1Error::OrderTooSmall { order, mode: j });
                }
                let qq = LaurentQ::from_terms([(1, 1), (-1, -1)]);
                vec![
                    (qq.clone(), vec![Op::E(a), Op::F(b)]),
                    (-&qq, vec![Op::F(b), Op::E(a)]),
                    (-one(), vec![Op::Psi(Sign::Plus, j)]),
                    (one(), vec![Op::Psi(Sign::Minus, j)]),
                ]
            }
            RelationKind::Ex2(s) => {
                let (x, t) = x_and_t(s);
                vec![
                    (one(), vec![x(a + 1), x(b)]),
                    (-&t, vec![x(a), x(b + 1)]),
                    (-&t, vec![x(b), x(a + 1)]),
                    (one(), vec![x(b + 1), x(a)]),
                ]
            }
            RelationKind::Hx { psi, x: xs } => {
                let (x, t) = x_and_t(xs);
                let reach = match psi {
                    Sign::Plus => a + 1,
                    Sign::Minus => -a,
                };
                if reach > order as i64 {
                    return Err(Rank1Error::OrderTooSmall { order, mode: reach });
                }
                let p = |j| Op::Psi(psi, j);
                vec![
                    (one(), vec![p(a + 1), x(b)]),
                    (-&t, vec![p(a), x(b + 1)]),
                    (-&t, vec![x(b), p(a + 1)]),
                    (one(), vec![x(b + 1), p(a)]),
                ]
            }
        })
    }

    fn check(&mut self, kind: RelationKind, a: i64, b: i64) -> Result<(), Rank1Error> {
        let terms = self.terms(kind, a, b)?;
        let residual = self.residual(&terms)?;
        if residual.is_zero() {
            return Ok(());
        }
        Err(Rank1Error::RelationFailed(Box::new(Counterexample {
            relation: kind.to_string(),
            modes: vec![a, b],
            element: self.base.clone(),
            residual: Some(residual),
            error: None,
        })))
    }
}

fn x_and_t(s: Sign) -> (fn(i64) -> Op, LaurentQ) {
    match s {
        Sign::Plus => (Op::E, LaurentQ::q_pow(2)),
        Sign::Minus => (Op::F, LaurentQ::q_pow(-2)),
    }
}

/// `(q - q^-1)[e_r, f_s] m = (ψ^+_{r+s} - ψ^-_{r+s}) m`.
pub fn check_relation_ef(r: i64, s: i64, m: &GrassElement, order: usize) -> Result<(), Rank1Error> {
    RelationChecker::new(Rank1Model::standard(), m.n(), order)?.check(RelationKind::Ef, r, s, m)
}

/// Exchange relation for `e` (sign +) or `f` (sign -) at modes `(r, s)`.
pub fn check_relation_exe2(r: i64, s: i64, m: &GrassElement, sign: Sign) -> Result<(), Rank1Error> {
    RelationChecker::new(Rank1Model::standard(), m.n(), 0)?.check(RelationKind::Ex2(sign), r, s, m)
}

/// `ψ^{psi}` against `e` (x = +) or `f` (x = -) at bidegree `(a, b)`.
pub fn check_relation_he(
    a: i64,
    b: i64,
    m: &GrassElement,
    order: usize,
    psi: Sign,
    x: Sign,
) -> Result<(), Rank1Error> {
    RelationChecker::new(Rank1Model::standard(), m.n(), order)?.check(RelationKind::Hx { psi, x }, a, b, m)
}

/// Products `m_μ(x_1..x_v) m_ν(x_{v+1}..x_N)` with `|μ| + |ν| ≤ max_degree`.
pub fn basis_elements(n: usize, level: usize, max_degree: u32) -> Result<Vec<GrassElement>, Rank1Error> {
    let mut out = Vec::new();
    for d1 in 0..=max_degree {
        for d2 in 0..=(max_degree - d1) {
            for mu in partitions_bounded(d1, level) {
                for nu in partitions_bounded(d2, n - level) {
                    out.push(block_monomial(n, level, &mu, &nu)?);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridConfig {
    pub max_n: usize,
    pub modes: (i64, i64),
    pub order: usize,
    pub basis_degree: u32,
    pub model: Rank1Model,
    pub exec: Exec,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            max_n: 4,
            modes: (-2, 2),
            order: 4,
            basis_degree: 2,
            model: Rank1Model::standard(),
            exec: Exec::Parallel,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationTally {
    pub passed: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub elements: usize,
    pub checks: u64,
    pub tallies: BTreeMap<String, RelationTally>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Counterexample>,
}

impl GridReport {
    pub fn all_passed(&self) -> bool {
        self.tallies.values().all(|t| t.failed == 0)
    }
}

/// The relation instances checked on every element.
fn instances(cfg: &GridConfig) -> Vec<(RelationKind, i64, i64)> {
    let (lo, hi) = cfg.modes;
    let order = cfg.order as i64;
    let mut out = Vec::new();
    for r in lo..=hi {
        for s in lo..=hi {
            out.push((RelationKind::Ef, r, s));
        }
    }
    for sign in [Sign::Plus, Sign::Minus] {
        for a in lo..=hi {
            for b in lo..=hi {
                out.push((RelationKind::Ex2(sign), a, b));
            }
        }
    }
    for x in [Sign::Plus, Sign::Minus] {
        for (psi, alo, ahi) in [(Sign::Plus, -1, order - 1), (Sign::Minus, -order, 0)] {
            for a in alo..=ahi {
                for b in lo..=hi {
                    out.push((RelationKind::Hx { psi, x }, a, b));
                }
            }
        }
    }
    out
}

/// Runs every relation instance on every basis element for `1 ≤ N ≤ max_n` and all levels.
pub fn run_grid(cfg: &GridConfig) -> Result<GridReport, Rank1Error> {
    let (lo, hi) = cfg.modes;
    if lo > hi {
        return Err(Rank1Error::InvalidMultiplicity(format!("empty mode range {lo}..{hi}")));
    }
    let need = (2 * lo.abs()).max(2 * hi.abs());
    if need > cfg.order as i64 {
        return Err(Rank1Error::OrderTooSmall { order: cfg.order, mode: need });
    }
    let checkers: Vec<RelationChecker> = (0..=cfg.max_n)
        .map(|n| RelationChecker::new(cfg.model, n, cfg.order))
        .collect::<Result<_, _>>()?;
    let mut units: Vec<GrassElement> = Vec::new();
    for n in 1..=cfg.max_n {
        for v in 0..=n {
            units.extend(basis_elements(n, v, cfg.basis_degree)?);
        }
    }
    let inst = instances(cfg);
    let results = par::map(cfg.exec, &units, |m| {
        let checker = &checkers[m.n()];
        let mut ev = Evaluator::new(checker, m);
        let mut tallies: BTreeMap<String, RelationTally> = BTreeMap::new();
        let mut first: Option<Counterexample> = None;
        for &(kind, a, b) in &inst {
            let t = tallies.entry(kind.to_string()).or_default();
            match ev.check(kind, a, b) {
                Ok(()) => t.passed += 1,
                Err(e) => {
                    t.failed += 1;
                    if first.is_none() {
                        first = Some(match e {
                            Rank1Error::RelationFailed(c) => *c,
                            other => Counterexample {
                                relation: kind.to_string(),
                                modes: vec![a, b],
                                element: m.clone(),
                                residual: None,
                                error: Some(other.to_string()),
                            },
                        });
                    }
                }
            }
        }
        (tallies, first)
    });
    let mut report = GridReport {
        elements: units.len(),
        checks: 0,
        tallies: BTreeMap::new(),
        first_failure: None,
    };
    for (tallies, first) in results {
        for (k, t) in tallies {
            let slot = report.tallies.entry(k).or_default();
            slot.passed += t.passed;
            slot.failed += t.failed;
            report.checks += t.passed + t.failed;
        }
        if report.first_failure.is_none() {
            report.first_failure = first;
        }
    }
    Ok(report)
}
