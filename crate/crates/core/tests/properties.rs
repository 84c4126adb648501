mod common;

use opercalc::filtration::{
    profile_score, rearrangement_check, rearrangement_sum, score_from_slack,
};
use opercalc::frobenius::hirschowitz_bound;
use opercalc::polygon::{polygon_from_quotient_data, shatz_leq};
use opercalc::{FiltrationProfile, HNPolygon, Rational};
use proptest::prelude::*;

/// Weakly decreasing positive sequences with parts at most 6.
fn profile_strategy() -> impl Strategy<Value = FiltrationProfile> {
    prop::collection::vec(1i64..=6, 1..10).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        FiltrationProfile::tight(parts).unwrap()
    })
}

proptest! {
    #[test]
    fn shatz_order_is_a_partial_order((a, b, c) in common::polygon_triple()) {
        prop_assert!(shatz_leq(&a, &a).unwrap());
        let ab = shatz_leq(&a, &b).unwrap();
        let ba = shatz_leq(&b, &a).unwrap();
        prop_assert_eq!(ab, common::oracle_below(&a, &b));
        if ab && ba {
            prop_assert_eq!(&a, &b);
        }
        if ab && shatz_leq(&b, &c).unwrap() {
            prop_assert!(shatz_leq(&a, &c).unwrap());
        }
    }

    #[test]
    fn quotient_data_round_trips(poly in (2i64..=7).prop_flat_map(common::polygon_strategy)) {
        let (ranks, degrees) = poly.quotient_data();
        prop_assert_eq!(polygon_from_quotient_data(&ranks, &degrees).unwrap(), poly.clone());
        prop_assert_eq!(ranks.iter().sum::<i64>(), poly.total_rank());
        // slopes δ_i/n_i increase along the quotient indexing
        for i in 1..ranks.len() {
            prop_assert!(degrees[i - 1] * ranks[i] < degrees[i] * ranks[i - 1]);
        }
    }

    #[test]
    fn value_at_is_concave(poly in (2i64..=7).prop_flat_map(common::polygon_strategy)) {
        let r = poly.total_rank();
        for x in 1..r {
            let twice = poly.value_at(x) * Rational::integer(2);
            prop_assert!(twice >= poly.value_at(x - 1) + poly.value_at(x + 1));
        }
        for &(x, y) in poly.breakpoints() {
            prop_assert_eq!(poly.value_at(x), Rational::integer(y));
        }
    }

    #[test]
    fn json_round_trip(poly in (2i64..=7).prop_flat_map(common::polygon_strategy)) {
        let json = serde_json::to_string(&poly).unwrap();
        prop_assert_eq!(serde_json::from_str::<HNPolygon>(&json).unwrap(), poly);
    }

    #[test]
    fn rationals_are_canonical(n in -10_000i64..10_000, d in -500i64..500) {
        prop_assume!(d != 0);
        let q = Rational::new(n, d).unwrap();
        prop_assert!(q.is_canonical());
        // a/b == ka/kb
        prop_assert_eq!(Rational::new(3 * n, 3 * d).unwrap(), q.clone());
        prop_assert_eq!(q.to_string().parse::<Rational>().unwrap(), q);
    }

    #[test]
    fn rearrangement_holds_on_random_profiles(profile in profile_strategy()) {
        prop_assert!(rearrangement_check(&profile));
        let m = profile.last_index();
        prop_assert_eq!(rearrangement_sum(&profile), profile.weight() * m - 2 * profile_score(&profile));
    }

    #[test]
    fn slack_form_matches_score(profile in profile_strategy()) {
        let m = profile.last_index();
        let slack = profile.slack();
        let by_hand: i64 = m * (m + 1) / 2
            + slack.iter().enumerate().map(|(i, s)| (i as i64) * (i as i64 - 1) / 2 * s).sum::<i64>();
        prop_assert_eq!(score_from_slack(&slack), profile_score(&profile));
        prop_assert_eq!(by_hand, profile_score(&profile));
    }

    #[test]
    fn hirschowitz_epsilon_satisfies_congruence(
        (n, m) in (2i64..40).prop_flat_map(|n| (Just(n), 1..n)),
        d in -200i64..200,
        g in 2i64..8,
    ) {
        let hb = hirschowitz_bound(n, d, m, g).unwrap();
        prop_assert!((0..n).contains(&hb.epsilon));
        prop_assert_eq!((m * d - m * (n - m) * (g - 1) - hb.epsilon).rem_euclid(n), 0);
        // m·n·bound is the integer m·d - m(n-m)(g-1) - ε
        let scaled = hb.slope_bound * Rational::integer(m * n);
        prop_assert_eq!(scaled, Rational::integer(m * d - m * (n - m) * (g - 1) - hb.epsilon));
    }
}
