//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qloop_core::adhm::{is_stable, moment_map, tau_sigma_at_point, AdhmData};
use qloop_core::cartan::{OrientedEdge, QuiverGraph, Weight};
use qloop_core::exactalg::{hall_littlewood, LaurentQ, MultiLaurent};
use qloop_core::fixedpoints::{
    dim_m_rho, enumerate_fixed_points_sl2, genweight_series, is_generic, l_weight_of_rho, qchar_standard_sl2,
    rank_c_k_lambda, sl2_graph, GradedDims, SL2_VERTEX,
};
use qloop_core::linalg::QMatrix;
use qloop_core::lweight::{
    drinfeld_of, psi_eigenvalue_in, qchar_multiply, restrict_to_character, DrinfeldPoly, ParamRing, QCharacter,
    SpectralParam,
};
use qloop_core::rank1rep::{
    apply_e, apply_f, basis_elements, divided_power_f, run_grid, GrassElement, GridConfig,
};
use qloop_core::Sign;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `[n]_q = (q^n - q^-n)/(q - q^-1)` expanded by hand.
fn q_integer(n: i64) -> LaurentQ {
    let mut out = LaurentQ::zero();
    let (sign, n) = if n < 0 { (-1, -n) } else { (1, n) };
    for i in 0..n {
        out.add_term((n - 1 - 2 * i) as i32, BigInt::from(sign));
    }
    out
}

fn q_fact(n: i64) -> LaurentQ {
    (1..=n).fold(LaurentQ::one(), |acc, k| &acc * &q_integer(k))
}

fn relation_suite() -> Outcome {
    let start = Instant::now();
    let report = run_grid(&GridConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.all_passed(), || {
        format!(
            "{} failures, first: {}",
            report.tallies.values().map(|t| t.failed).sum::<u64>(),
            report.first_failure.as_ref().map(|c| c.to_string()).unwrap_or_default()
        )
    })?;
    ensure(report.tallies.len() == 7, || format!("expected 7 relation families, got {}", report.tallies.len()))?;
    ensure(elapsed <= Duration::from_secs(300), || format!("took {elapsed:.1?}"))?;
    Ok(format!("{} checks on {} elements in {:.1?}", report.checks, report.elements, elapsed))
}

fn commutator_normalization() -> Outcome {
    let mut cases = 0;
    for n in 1..=4usize {
        for v in 0..=n {
            let m = GrassElement::vacuum(n, v).map_err(|e| e.to_string())?;
            let ef = apply_e(0, &apply_f(0, &m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let fe = apply_f(0, &apply_e(0, &m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            for x in [&ef, &fe] {
                ensure(x.level() == v as i64, || format!("level drift at N={n} v={v}"))?;
            }
            let comm = ef.poly() - fe.poly();
            let want = MultiLaurent::constant(n, q_integer(n as i64 - 2 * v as i64));
            ensure(comm == want, || format!("N={n} v={v}: got {comm}, want {want}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} vacua"))
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn divided_power_oracle() -> Outcome {
    let mut cases = 0;
    for big_n in 1..=4usize {
        for total in 1..=3usize.min(big_n) {
            for v0 in 0..=big_n - total {
                let starts = basis_elements(big_n, v0, 1).map_err(|e| e.to_string())?;
                for m in &starts {
                    for mask in 1u32..8 {
                        let ps: Vec<i64> = (0..3).filter(|b| mask & (1 << b) != 0).map(|b| b as i64 - 1).collect();
                        for ns in compositions(total, ps.len()) {
                            let mut cur = m.clone();
                            for (&p, &k) in ps.iter().zip(&ns) {
                                for _ in 0..k {
                                    cur = apply_f(p, &cur).map_err(|e| e.to_string())?;
                                }
                                let poly = cur
                                    .poly()
                                    .div_exact_coeff(&q_fact(k as i64))
                                    .map_err(|_| format!("f_{p}^{k} not divisible by [{k}]! on {m}"))?;
                                cur = GrassElement::new(big_n, cur.level() as usize, poly).map_err(|e| e.to_string())?;
                            }
                            let closed = divided_power_f(&ps, &ns, m).map_err(|e| e.to_string())?;
                            ensure(closed == cur, || format!("N={big_n} p={ps:?} n={ns:?} on {m}"))?;
                            cases += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn partitions(d: u32, max: u32, len: usize) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![vec![]];
    }
    if len == 0 {
        return vec![];
    }
    (1..=d.min(max))
        .rev()
        .flat_map(|first| {
            partitions(d - first, first, len - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Sum of `x^α` over the distinct rearrangements `α` of `λ` padded to `n`.
fn monomial_oracle(lam: &[u32], n: usize) -> MultiLaurent {
    let mut padded: Vec<i32> = lam.iter().map(|&x| x as i32).collect();
    padded.resize(n, 0);
    let mut seen = BTreeSet::new();
    let mut stack = vec![(Vec::new(), padded)];
    while let Some((pre, rest)) = stack.pop() {
        if rest.is_empty() {
            seen.insert(pre);
            continue;
        }
        for i in 0..rest.len() {
            let mut p = pre.clone();
            p.push(rest[i]);
            let mut r = rest.clone();
            r.remove(i);
            stack.push((p, r));
        }
    }
    MultiLaurent::from_terms(n, seen.into_iter().map(|e| (e, LaurentQ::one()))).unwrap()
}

fn hall_littlewood_specialization() -> Outcome {
    let mut cases = 0;
    for n in 1..=4usize {
        for d in 0..=4u32 {
            for lam in partitions(d, d, n) {
                let p = hall_littlewood(&lam, n).map_err(|e| e.to_string())?;
                let at_one = p.map_coeffs(|c| LaurentQ::from_int(c.eval_at_one()));
                ensure(at_one == monomial_oracle(&lam, n), || format!("λ={lam:?} n={n}: {at_one}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} partitions"))
}

fn binom(n: u64, r: u64) -> u64 {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sl2_params(n: usize) -> Vec<SpectralParam> {
    (0..n).map(|i| SpectralParam::new(format!("a{i}"), (i as i64 * 2) % 5 - 2)).collect()
}

fn sl2_qcharacter() -> Outcome {
    let g = sl2_graph();
    for n in 0..=6usize {
        let params = sl2_params(n);
        let c = qchar_standard_sl2(&params).map_err(|e| e.to_string())?;
        ensure(c.dim() == 1 << n, || format!("N={n}: dim {}", c.dim()))?;
        let dom = c.dominant_monomials();
        ensure(dom.len() == 1, || format!("N={n}: {} dominant monomials", dom.len()))?;
        let p = drinfeld_of(dom[0]).map_err(|e| e.to_string())?;
        ensure(p.degree(SL2_VERTEX) == n, || format!("N={n}: degree {}", p.degree(SL2_VERTEX)))?;
        let want = DrinfeldPoly::from_roots(params.iter().map(|a| (SL2_VERTEX.to_string(), a.shift(-1))));
        ensure(p == want, || format!("N={n}: {p} vs {want}"))?;
        let mut prod = QCharacter::trivial();
        for a in &params {
            prod = qchar_multiply(&prod, &qchar_standard_sl2(std::slice::from_ref(a)).map_err(|e| e.to_string())?);
        }
        ensure(prod == c, || format!("N={n}: not the product of single-parameter characters"))?;
        let weights = restrict_to_character(&c, &g, &[n as i64]).map_err(|e| e.to_string())?;
        for v in 0..=n {
            let got = weights.get(&Weight::new(vec![n as i64], vec![v as i64])).copied().unwrap_or(0);
            ensure(got == binom(n as u64, v as u64), || format!("N={n} v={v}: multiplicity {got}"))?;
        }
        ensure(weights.len() == n + 1, || format!("N={n}: {} weights", weights.len()))?;
    }
    Ok("N = 0..6".into())
}

fn lweight_consistency() -> Outcome {
    let g = sl2_graph();
    let mut count = 0;
    for n in 0..=4usize {
        let params = sl2_params(n);
        let ring = ParamRing::new(params.iter().map(|a| a.base.clone()));
        for fp in enumerate_fixed_points_sl2(&params, None).map_err(|e| e.to_string())? {
            let dims = fp.graded_dims();
            let m = l_weight_of_rho(&dims, &g).map_err(|e| e.to_string())?;
            for sign in [Sign::Plus, Sign::Minus] {
                let lhs = psi_eigenvalue_in(&m, &g, sign, 4, &ring).map_err(|e| e.to_string())?;
                let rhs = genweight_series(&dims, &g, sign, 4, &ring).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || format!("{fp:?} sign {sign}"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} fixed points"))
}

/// Symmetric Cartan matrix `2I - A` from an edge list.
fn cartan_oracle(g: &QuiverGraph) -> Vec<Vec<i64>> {
    let n = g.n_vertices();
    let mut c: Vec<Vec<i64>> = (0..n).map(|k| (0..n).map(|l| 2 * (k == l) as i64).collect()).collect();
    for &(o, i) in g.edges() {
        c[o][i] -= 1;
        c[i][o] -= 1;
    }
    c
}

fn fixed_point_isolation() -> Outcome {
    let g1 = sl2_graph();
    for n in 0..=5usize {
        for fp in enumerate_fixed_points_sl2(&sl2_params(n), None).map_err(|e| e.to_string())? {
            let d = dim_m_rho(&fp.graded_dims(), &g1).map_err(|e| e.to_string())?;
            ensure(d == 0, || format!("{fp:?}: dim {d}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x51ab1e);
    let graphs = [QuiverGraph::type_a(1), QuiverGraph::type_a(2), QuiverGraph::type_a(3)];
    let corpus = 60;
    for case in 0..corpus {
        let g = &graphs[case % 3];
        let n = g.n_vertices();
        let mut dims = GradedDims::new();
        for _ in 0..rng.gen_range(0..5) {
            let k = g.vertices()[rng.gen_range(0..n)].clone();
            dims.add_v(&k, SpectralParam::new(["a", "b"][rng.gen_range(0..2)], rng.gen_range(-3..=3)), rng.gen_range(1..=2));
        }
        for _ in 0..rng.gen_range(0..4) {
            let k = g.vertices()[rng.gen_range(0..n)].clone();
            dims.add_w(&k, SpectralParam::new(["a", "b"][rng.gen_range(0..2)], rng.gen_range(-3..=3)), rng.gen_range(1..=2));
        }
        let c = cartan_oracle(g);
        let mut v = vec![0i64; n];
        let mut w = vec![0i64; n];
        for (k, _, d) in dims.v_entries() {
            v[g.index_of(k).unwrap()] += d as i64;
        }
        for (k, _, d) in dims.w_entries() {
            w[g.index_of(k).unwrap()] += d as i64;
        }
        for (ki, k) in g.vertices().iter().enumerate() {
            let mut total = 0;
            for b in ["a", "b"] {
                for e in -10..=10 {
                    total += rank_c_k_lambda(&dims, k, &SpectralParam::new(b, e), g).map_err(|e| e.to_string())?;
                }
            }
            let want = w[ki] - (0..n).map(|l| c[ki][l] * v[l]).sum::<i64>();
            ensure(total == want, || format!("case {case} vertex {k}: {total} vs {want}"))?;
        }
    }
    Ok(format!("N ≤ 5 isolated; {corpus} random gradings"))
}

fn mat(rows: &[Vec<i64>]) -> QMatrix {
    QMatrix::from_i64(rows).unwrap()
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    loop {
        let mut m = QMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let num: i64 = rng.gen_range(-4..=4);
                let den: i64 = rng.gen_range(1..=3);
                m.set(r, c, BigRational::new(num.into(), den.into()));
            }
        }
        if m.rank() == n {
            return m;
        }
    }
}

fn stability_corpus() -> Vec<(&'static str, AdhmData, bool)> {
    let a1 = QuiverGraph::type_a(1);
    let a2 = QuiverGraph::type_a(2);
    let fwd = OrientedEdge { edge: 0, reversed: false };
    let mut out = Vec::new();
    let mut d = AdhmData::zero(a1.clone(), vec![1], vec![1]).unwrap();
    out.push(("j = 0", d.clone(), false));
    d = AdhmData::zero(a1.clone(), vec![1], vec![2]).unwrap();
    d.set_i(0, mat(&[vec![1, 0]])).unwrap();
    d.set_j(0, mat(&[vec![0], vec![1]])).unwrap();
    out.push(("j injective, i nonzero", d, true));
    d = AdhmData::zero(a1.clone(), vec![2], vec![1]).unwrap();
    d.set_j(0, mat(&[vec![1, 0]])).unwrap();
    out.push(("j rank-deficient, no B", d, false));
    d = AdhmData::zero(a1.clone(), vec![2], vec![2]).unwrap();
    d.set_j(0, mat(&[vec![1, 2], vec![3, 4]])).unwrap();
    out.push(("j invertible", d, true));
    out.push(("V = 0", AdhmData::zero(a1, vec![0], vec![3]).unwrap(), true));
    d = AdhmData::zero(a2.clone(), vec![1, 1], vec![0, 1]).unwrap();
    d.set_b(fwd, mat(&[vec![1]])).unwrap();
    d.set_j(1, mat(&[vec![1]])).unwrap();
    out.push(("j_1 = 0 rescued by B", d, true));
    d = AdhmData::zero(a2.clone(), vec![1, 1], vec![0, 1]).unwrap();
    d.set_j(1, mat(&[vec![1]])).unwrap();
    out.push(("j_1 = 0, B = 0", d, false));
    d = AdhmData::zero(a2.clone(), vec![1, 1], vec![0, 1]).unwrap();
    d.set_b(fwd.bar(), mat(&[vec![1]])).unwrap();
    d.set_j(1, mat(&[vec![1]])).unwrap();
    out.push(("B points away from W", d, false));
    d = AdhmData::zero(a2.clone(), vec![2, 1], vec![1, 1]).unwrap();
    d.set_j(0, mat(&[vec![1, 0]])).unwrap();
    d.set_b(fwd, mat(&[vec![0, 1]])).unwrap();
    d.set_j(1, mat(&[vec![1]])).unwrap();
    out.push(("rank-deficient j rescued by B", d, true));
    d = AdhmData::zero(a2, vec![2, 1], vec![1, 1]).unwrap();
    d.set_j(0, mat(&[vec![1, 0]])).unwrap();
    d.set_b(fwd, mat(&[vec![1, 0]])).unwrap();
    d.set_j(1, mat(&[vec![1]])).unwrap();
    out.push(("rank-deficient j, B kills the kernel", d, false));
    out
}

fn stability_checker() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xad4a);
    let corpus = stability_corpus();
    let mut mu_zero = 0;
    for (name, d, want) in &corpus {
        let got = is_stable(d).map_err(|e| e.to_string())?;
        ensure(got == *want, || format!("{name}: got {got}"))?;
        for _ in 0..20 {
            let g: Vec<QMatrix> = d.v().iter().map(|&n| random_invertible(&mut rng, n)).collect();
            let e = d.base_change(&g).map_err(|e| e.to_string())?;
            ensure(is_stable(&e).map_err(|e| e.to_string())? == *want, || format!("{name}: verdict changed under base change"))?;
        }
        if moment_map(d).map_err(|e| e.to_string())?.iter().all(QMatrix::is_zero) {
            mu_zero += 1;
            for k in 0..d.v().len() {
                let ts = tau_sigma_at_point(d, k).map_err(|e| format!("{name}: {e}"))?;
                ensure(ts.tau.mul(&ts.sigma).unwrap().is_zero(), || format!("{name}: τσ ≠ 0"))?;
            }
        }
    }
    ensure(corpus.len() == 10, || format!("corpus has {} cases", corpus.len()))?;
    Ok(format!("{} cases, {mu_zero} with μ = 0", corpus.len()))
}

fn genericity_table() -> Outcome {
    let p = |s: &str| -> Vec<SpectralParam> {
        s.split_whitespace().map(|x| x.parse().unwrap()).collect()
    };
    let table: [(&str, bool); 10] = [
        ("a b", true),
        ("a a:2", false),
        ("a a", true),
        ("", true),
        ("a", true),
        ("a b c", true),
        ("a a:1", false),
        ("a:1 a:1 b:-2", true),
        ("a b b:-3", false),
        ("a:2 b:2 a:-1", false),
    ];
    for (s, want) in table {
        let got = is_generic(&p(s));
        ensure(got == want, || format!("{{{s}}}: got {got}"))?;
    }
    Ok("10 multisets".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("relation suite", relation_suite),
        ("commutator normalization", commutator_normalization),
        ("divided-power oracle", divided_power_oracle),
        ("Hall-Littlewood specialization", hall_littlewood_specialization),
        ("sl2 q-character", sl2_qcharacter),
        ("l-weight consistency", lweight_consistency),
        ("fixed-point isolation and rank refinement", fixed_point_isolation),
        ("stability checker", stability_checker),
        ("genericity", genericity_table),
    ];
    let mut failed = 0;
    let mut summary = BTreeMap::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        match &outcome {
            Ok(detail) => println!("[{}] {name}: PASS ({detail}; {t:.1?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("[{}] {name}: FAIL ({why})", i + 1);
            }
        }
        summary.insert(i + 1, outcome.is_ok());
    }
    println!("acceptance: {}/{} passed", summary.values().filter(|&&b| b).count(), summary.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
