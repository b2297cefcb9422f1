use num_bigint::BigUint;
use proptest::prelude::*;
use semipart::circle;
use semipart::partitions::{partition_series, WeightConfig};
use semipart::sieve;
use semipart::weyl;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn part_weights_sum_to_pair_count(x in 4u64..50_000) {
        let total: u64 = sieve::semiprime_parts(x).iter().map(|p| p.weight as u64).sum();
        prop_assert_eq!(total, sieve::pi2_star(x));
    }

    #[test]
    fn convergents_satisfy_dirichlet(alpha in -10.0f64..10.0, q_max in 1u64..1_000_000) {
        let r = weyl::dirichlet_approx(alpha, q_max).unwrap();
        prop_assert!(r.q >= 1 && r.q <= q_max);
        prop_assert_eq!(num_integer::gcd(r.a.unsigned_abs(), r.q), 1);
        prop_assert!(r.err * (r.q as f64).powi(2) <= 1.0);
    }

    #[test]
    fn ramanujan_sum_matches_von_sterneck(q in 1u64..2000, a in 0i64..5000) {
        let g = num_integer::gcd(a.unsigned_abs(), q);
        let d = q / g;
        let expected = sieve::mobius(d) as i64 * sieve::totient(q) as i64 / sieve::totient(d) as i64;
        prop_assert_eq!(circle::ramanujan_sum(q, a).unwrap(), expected);
    }

    #[test]
    fn residue_classes_partition_the_pairs(t in 4u64..20_000, q in 1u64..12) {
        let mut total = 0;
        for ell in (0..q).filter(|&l| num_integer::gcd(l, q) == 1) {
            total += sieve::semiprime_count_mod(t, q, ell).unwrap().count;
        }
        prop_assert!(total <= sieve::pi2_star(t));
    }
}

#[test]
fn recovery_matches_dp_at_larger_n() {
    let series = partition_series(WeightConfig::p2(), 400).unwrap();
    for n in [300u64, 357, 400] {
        let r = circle::recover_coefficient_auto(n, WeightConfig::p2(), Some(&series)).unwrap();
        assert_eq!(&r.rounded, series.count(n as usize), "n = {n}");
    }
}

#[test]
fn named_counts_are_ordered() {
    // every P2-distinct partition is a P2 partition, and P2 is dominated by P2-sharp
    let a = partition_series(WeightConfig::p2_distinct(), 500).unwrap();
    let b = partition_series(WeightConfig::p2(), 500).unwrap();
    let c = partition_series(WeightConfig::p2_sharp(), 500).unwrap();
    for n in 0..=500 {
        assert!(a.count(n) <= b.count(n) && b.count(n) <= c.count(n), "n = {n}");
    }
    assert_eq!(c.count(12), &BigUint::from(4u32));
}
