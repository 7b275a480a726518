use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qloop_core::adhm::{is_stable, moment_map, stability_report, tau_sigma_at_point, AdhmData};
use qloop_core::cartan::{OrientedEdge, QuiverGraph};
use qloop_core::linalg::QMatrix;

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> QMatrix {
    let mut m = QMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rat(entries[(r * cols + c) % entries.len()]));
        }
    }
    m
}

/// `L · D · U` with unit triangular `L`, `U` and nonzero diagonal `D`.
fn invertible(n: usize, seed: &[i64]) -> QMatrix {
    let mut l = QMatrix::identity(n);
    let mut u = QMatrix::identity(n);
    let mut d = QMatrix::identity(n);
    let mut it = seed.iter().cycle();
    for r in 0..n {
        for c in 0..r {
            l.set(r, c, rat(*it.next().unwrap()));
            u.set(c, r, rat(*it.next().unwrap()));
        }
        let x = *it.next().unwrap();
        d.set(r, r, BigRational::new(BigInt::from(if x == 0 { 2 } else { x }), BigInt::from(3)));
    }
    l.mul(&d).unwrap().mul(&u).unwrap()
}

#[derive(Debug, Clone)]
struct Case {
    data: AdhmData,
}

/// A_1 or A_2 data with `B_h̄ = 0` and `i_k j_k = 0`, so the moment map vanishes.
fn mu_zero_case() -> impl Strategy<Value = Case> {
    (1usize..=2, prop::collection::vec(0usize..=2, 4), prop::collection::vec(-2i64..=2, 1..24)).prop_map(
        |(nv, dims, entries)| {
            let g = QuiverGraph::type_a(nv);
            let v: Vec<usize> = dims[..nv].to_vec();
            let w: Vec<usize> = dims[2..2 + nv].to_vec();
            let mut d = AdhmData::zero(g.clone(), v.clone(), w.clone()).unwrap();
            for k in 0..nv {
                let j = matrix(w[k], v[k], &entries);
                let left_null = j.transpose().kernel();
                let x = matrix(v[k], left_null.cols(), &entries[entries.len() / 2..].iter().chain(&[1]).copied().collect::<Vec<_>>());
                let i = x.mul(&left_null.transpose()).unwrap();
                d.set_j(k, j).unwrap();
                d.set_i(k, i).unwrap();
            }
            if nv == 2 {
                let h = OrientedEdge { edge: 0, reversed: false };
                d.set_b(h, matrix(v[1], v[0], &entries)).unwrap();
            }
            Case { data: d }
        },
    )
}

fn any_case() -> impl Strategy<Value = Case> {
    (1usize..=2, prop::collection::vec(0usize..=2, 4), prop::collection::vec(-1i64..=1, 1..24)).prop_map(
        |(nv, dims, entries)| {
            let g = QuiverGraph::type_a(nv);
            let v: Vec<usize> = dims[..nv].to_vec();
            let w: Vec<usize> = dims[2..2 + nv].to_vec();
            let mut d = AdhmData::zero(g.clone(), v.clone(), w.clone()).unwrap();
            for k in 0..nv {
                d.set_j(k, matrix(w[k], v[k], &entries)).unwrap();
                d.set_i(k, matrix(v[k], w[k], &entries[1..].iter().chain(&[0]).copied().collect::<Vec<_>>())).unwrap();
            }
            for h in g.oriented_edges() {
                let (o, i) = (g.vout(h).unwrap(), g.vin(h).unwrap());
                d.set_b(h, matrix(v[i], v[o], &entries)).unwrap();
            }
            Case { data: d }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stability_is_gauge_invariant(c in any_case(), seed in prop::collection::vec(-3i64..=3, 1..12)) {
        let d = &c.data;
        let g: Vec<QMatrix> = d.v().iter().enumerate().map(|(k, &n)| invertible(n, &seed[k % seed.len()..])).collect();
        let e = d.base_change(&g).unwrap();
        let (r1, r2) = (stability_report(d).unwrap(), stability_report(&e).unwrap());
        prop_assert_eq!(r1.stable, r2.stable);
        prop_assert_eq!(r1.destabilizing_dims, r2.destabilizing_dims);
        prop_assert!(r1.iterations <= d.v().iter().sum::<usize>());
    }

    #[test]
    fn complex_at_mu_zero_points(c in mu_zero_case()) {
        let d = &c.data;
        prop_assert!(moment_map(d).unwrap().iter().all(QMatrix::is_zero));
        let stable = is_stable(d).unwrap();
        for k in 0..d.v().len() {
            let ts = tau_sigma_at_point(d, k).unwrap();
            prop_assert!(ts.tau.mul(&ts.sigma).unwrap().is_zero());
            if stable {
                prop_assert_eq!(ts.rank_sigma, d.v()[k]);
            }
        }
    }
}
