use proptest::prelude::*;
use qloop_core::cartan::{cartan_matrix, QuiverGraph};
use qloop_core::lweight::{
    a_monomial, drinfeld_of, psi_eigenvalue_in, qchar_multiply, restrict_to_character, ParamRing, QCharacter,
    SpectralParam, YMonomial,
};
use qloop_core::Sign;

fn corpus() -> Vec<QuiverGraph> {
    let v = |n: usize| (1..=n).map(|k| k.to_string()).collect::<Vec<_>>();
    vec![
        QuiverGraph::type_a(1),
        QuiverGraph::type_a(2),
        QuiverGraph::type_a(3),
        QuiverGraph::new(v(2), &[("1", "2"), ("1", "2")]).unwrap(),
        QuiverGraph::new(v(3), &[("1", "2"), ("2", "3"), ("3", "1")]).unwrap(),
        QuiverGraph::new(v(4), &[("1", "2"), ("1", "3"), ("1", "4")]).unwrap(),
        QuiverGraph::new(v(2), &[("1", "2"), ("2", "1"), ("1", "2")]).unwrap(),
    ]
}

fn param() -> impl Strategy<Value = SpectralParam> {
    (prop::sample::select(vec!["a", "b", "c"]), -3i64..=3).prop_map(|(b, e)| SpectralParam::new(b, e))
}

fn monomial(dominant: bool) -> impl Strategy<Value = YMonomial> {
    let lo = if dominant { 1 } else { -2 };
    prop::collection::vec((prop::sample::select(vec!["1", "2"]), param(), lo..=2i64), 0..4)
        .prop_map(|fs| YMonomial::from_exps(fs.into_iter().map(|(k, a, e)| (k.to_string(), a, e))))
}

fn character() -> impl Strategy<Value = QCharacter> {
    prop::collection::vec((monomial(false), 1u64..=3), 1..4).prop_map(|ts| {
        let mut c = QCharacter::new();
        for (m, k) in ts {
            c.add(m, k);
        }
        c
    })
}

#[test]
fn a_monomial_degrees_are_cartan_columns() {
    let a: SpectralParam = "a".parse().unwrap();
    for g in corpus() {
        let cd = cartan_matrix(&g);
        for (k, name) in g.vertices().iter().enumerate() {
            let degs = a_monomial(name, &a, &g).unwrap().vertex_degrees();
            for (l, other) in g.vertices().iter().enumerate() {
                assert_eq!(degs.get(other).copied().unwrap_or(0), cd.c[l][k], "graph {g:?} k={name}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dominance_closed_under_products(x in monomial(true), y in monomial(true)) {
        prop_assert!(x.mul(&y).is_l_dominant());
    }

    #[test]
    fn psi_of_dominant_matches_drinfeld(m in monomial(true)) {
        let g = QuiverGraph::type_a(2);
        let ring = ParamRing::new(["a", "b", "c"].map(String::from));
        let p = drinfeld_of(&m).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            prop_assert_eq!(
                psi_eigenvalue_in(&m, &g, sign, 4, &ring).unwrap(),
                p.psi_series(&g, sign, 4, &ring).unwrap()
            );
        }
    }

    #[test]
    fn dimension_is_multiplicative(c1 in character(), c2 in character()) {
        let prod = qchar_multiply(&c1, &c2);
        prop_assert_eq!(prod.dim(), c1.dim() * c2.dim());
    }
}

#[test]
fn restriction_preserves_dimension() {
    let g = QuiverGraph::type_a(2);
    let a: SpectralParam = "a".parse().unwrap();
    let top = YMonomial::y("1", a.clone());
    let mut c = QCharacter::new();
    c.add(top.clone(), 1);
    let second = top.div(&a_monomial("1", &a.shift(1), &g).unwrap());
    c.add(second.clone(), 1);
    c.add(second.div(&a_monomial("2", &a.shift(2), &g).unwrap()), 1);
    let sq = qchar_multiply(&c, &c);
    let w = restrict_to_character(&sq, &g, &[2, 0]).unwrap();
    assert_eq!(w.values().sum::<u64>(), sq.dim());
    assert_eq!(w.values().sum::<u64>(), 9);
}
