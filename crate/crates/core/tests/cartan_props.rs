use proptest::prelude::*;
use qloop_core::cartan::{
    cartan_matrix, dim_quiver_variety, is_dominant, q_binomial, rank_ck, QuiverGraph, Weight,
};

fn graph_strategy() -> impl Strategy<Value = QuiverGraph> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..6)))
        .prop_map(|(n, pairs)| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            QuiverGraph::from_indices((1..=n).map(|k| format!("v{k}")).collect(), edges).unwrap()
        })
}

fn binom(n: i64, r: i64) -> i64 {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cartan_matrix_shape(g in graph_strategy()) {
        let cd = cartan_matrix(&g);
        let n = g.n_vertices();
        for k in 0..n {
            prop_assert_eq!(cd.c[k][k], 2);
            for l in 0..n {
                prop_assert_eq!(cd.c[k][l], cd.c[l][k]);
                prop_assert_eq!(cd.c[k][l], 2 * (k == l) as i64 - cd.a[k][l]);
                prop_assert_eq!(cd.a_omega[k][l] + cd.a_omega[l][k], cd.a[k][l]);
            }
        }
    }

    #[test]
    fn edge_weights_antisymmetric_and_spread(g in graph_strategy()) {
        for h in g.oriented_edges() {
            prop_assert_eq!(g.edge_weight_m(h).unwrap() + g.edge_weight_m(h.bar()).unwrap(), 0);
        }
        let n = g.n_vertices();
        for lo in 0..n {
            for hi in (lo + 1)..n {
                let mut ms: Vec<i32> = g
                    .oriented_edges()
                    .into_iter()
                    .filter(|&h| g.vout(h).unwrap() == lo && g.vin(h).unwrap() == hi)
                    .map(|h| g.edge_weight_m(h).unwrap())
                    .collect();
                ms.sort();
                let b = ms.len() as i32;
                let want: Vec<i32> = (0..b).map(|p| 1 - b + 2 * p).collect();
                prop_assert_eq!(ms, want);
            }
        }
    }

    #[test]
    fn rank_ck_matches_complex_dimensions(
        g in graph_strategy(),
        v in prop::collection::vec(0i64..4, 4),
        w in prop::collection::vec(0i64..4, 4),
    ) {
        let n = g.n_vertices();
        let (v, w) = (&v[..n], &w[..n]);
        let cd = cartan_matrix(&g);
        for k in 0..n {
            // V_k -> ⊕_{in(h)=k} V_out(h) ⊕ W_k -> V_k
            let middle: i64 = g.incoming(k).iter().map(|&h| v[g.vout(h).unwrap()]).sum::<i64>() + w[k];
            prop_assert_eq!(rank_ck(&cd, v, w, k).unwrap(), middle - 2 * v[k]);
        }
    }
}

#[test]
fn q_binomial_at_one() {
    for n in 0..=8 {
        for r in 0..=n {
            assert_eq!(q_binomial(n, r).unwrap().eval_at_one(), binom(n, r).into());
        }
    }
}

#[test]
fn quiver_variety_dimension_grid() {
    for g in [QuiverGraph::type_a(1), QuiverGraph::type_a(2), QuiverGraph::type_a(3)] {
        let cd = cartan_matrix(&g);
        let n = g.n_vertices();
        let total = 5usize.pow(2 * n as u32);
        for code in 0..total {
            let digits: Vec<i64> = (0..2 * n).map(|i| ((code / 5usize.pow(i as u32)) % 5) as i64).collect();
            let (v, w) = digits.split_at(n);
            let mu = Weight::new(w.to_vec(), v.to_vec());
            if !is_dominant(&cd, &mu).unwrap() {
                continue;
            }
            let d = dim_quiver_variety(&cd, v, w).unwrap();
            assert!(d >= 0, "v={v:?} w={w:?} dim={d}");
            if n == 1 {
                assert_eq!(d, 2 * v[0] * (w[0] - v[0]));
            }
        }
    }
}
