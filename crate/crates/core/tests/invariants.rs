use num_rational::BigRational;
use proptest::prelude::*;
use zonal_core::combinatorics::{partitions_of, Composition};
use zonal_core::measures::nearest_lattice_point;
use zonal_core::symfunc::{
    evaluate_exact, expand_product, jack_expansion_in, jack_monomial_expansion, JackParameter,
};

fn partition_of(n: usize) -> impl Strategy<Value = zonal_core::Partition> {
    let ps = partitions_of(n, n);
    (0..ps.len()).prop_map(move |i| ps[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rounding_is_sum_preserving_and_order_preserving(
        raw in prop::collection::vec(0.0f64..1.0, 1..6),
        grid in 1usize..40,
    ) {
        let total: f64 = raw.iter().sum();
        prop_assume!(total > 1e-9);
        let mut p: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let eta = nearest_lattice_point(&p, grid);
        prop_assert_eq!(eta.weight(), grid);
        for (e, x) in eta.entries().iter().zip(&p) {
            prop_assert!((*e as f64 - grid as f64 * x).abs() < 1.0 + 1e-9);
        }
        p.sort_by(|a, b| b.total_cmp(a));
        let sorted = nearest_lattice_point(&p, grid);
        prop_assert!(sorted.entries().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn product_is_a_ring_homomorphism(
        a in (1usize..4).prop_flat_map(partition_of),
        b in (1usize..4).prop_flat_map(partition_of),
        x in prop::collection::vec(-3i64..4, 1..4),
    ) {
        let alpha = JackParameter::zonal();
        let f = jack_monomial_expansion(&a, &alpha);
        let g = jack_monomial_expansion(&b, &alpha);
        let fg = expand_product(&f, &g);
        prop_assert_eq!(&fg, &expand_product(&g, &f));
        let xq: Vec<BigRational> = x.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        prop_assert_eq!(
            evaluate_exact(&fg, &xq),
            evaluate_exact(&f, &xq) * evaluate_exact(&g, &xq)
        );
    }

    #[test]
    fn restriction_commutes_with_the_recurrence(
        lambda in (1usize..9).prop_flat_map(partition_of),
        n in 1usize..5,
    ) {
        let alpha = JackParameter::zonal();
        let full = jack_monomial_expansion(&lambda, &alpha);
        let cut = jack_expansion_in(&lambda, &alpha, Some(n));
        prop_assert_eq!(cut, full.restricted(n));
    }

    #[test]
    fn composition_display_round_trip(entries in prop::collection::vec(0usize..30, 1..6)) {
        let c = Composition::new(entries.clone());
        let parsed: Vec<usize> = c.to_string().split('-').map(|t| t.parse().unwrap()).collect();
        prop_assert_eq!(parsed, entries);
    }
}
