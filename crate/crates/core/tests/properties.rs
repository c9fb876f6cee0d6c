use std::cmp::Ordering;

use adek3::glue::{overlattice_candidates, SearchLimits};
use adek3::nikulin::embedding_verdict;
use adek3::{ade_discriminant_form, AdeConfiguration, AdeType, FiniteQuadraticForm};
use proptest::prelude::*;

fn arb_type() -> impl Strategy<Value = AdeType> {
    prop_oneof![
        (1u32..=19).prop_map(AdeType::a),
        (4u32..=19).prop_map(AdeType::d),
        (6u32..=8).prop_map(AdeType::e),
    ]
}

fn arb_config(max_rank: u32) -> impl Strategy<Value = AdeConfiguration> {
    prop::collection::vec(arb_type(), 1..8)
        .prop_map(AdeConfiguration::new)
        .prop_filter("rank bound", move |c| c.rank() <= max_rank)
}

proptest! {
    #[test]
    fn names_round_trip(c in arb_config(19), seed in any::<u64>()) {
        prop_assert_eq!(c.to_string().parse::<AdeConfiguration>().unwrap(), c.clone());
        let mut parts: Vec<String> = c.summands().iter().map(|t| t.to_string()).collect();
        let k = parts.len();
        parts.rotate_left(seed as usize % k);
        prop_assert_eq!(parts.join("+").parse::<AdeConfiguration>().unwrap(), c);
    }

    #[test]
    fn order_is_rank_first_and_antisymmetric(a in arb_config(19), b in arb_config(19)) {
        if a.rank() != b.rank() {
            prop_assert_eq!(a.cmp(&b), a.rank().cmp(&b.rank()));
        }
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a.to_string() == b.to_string());
    }

    #[test]
    fn verdict_ignores_generator_order(c in arb_config(19), seed in any::<u64>()) {
        let form = ade_discriminant_form(&c);
        let n = form.num_generators();
        prop_assume!(n > 1);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted = FiniteQuadraticForm::new(
            perm.iter().map(|&i| form.orders()[i]).collect(),
            perm.iter().map(|&i| form.q_values()[i]).collect(),
            perm.iter().map(|&i| perm.iter().map(|&j| form.pairing()[i][j]).collect()).collect(),
        ).unwrap();
        prop_assert_eq!(permuted.length_profile(), form.length_profile());
        prop_assert_eq!(embedding_verdict(c.rank(), &permuted), embedding_verdict(c.rank(), &form));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn candidate_orders_multiply_out(c in arb_config(12)) {
        let base = c.discriminant_order();
        for cand in overlattice_candidates(&c, SearchLimits::default()).unwrap() {
            prop_assert_eq!(cand.index, cand.subgroup.order());
            prop_assert_eq!(cand.induced_form.order() * cand.index * cand.index, base);
        }
    }
}
