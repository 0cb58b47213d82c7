//! Randomized properties extending the exhaustive sweeps past their
//! bounds.  Whatever can be enumerated completely is checked in the
//! oracle's sweeps instead; these tests sample the regions the sweeps
//! cannot reach (larger matrices, taller wedges, bigger cyclic orders).

use proptest::collection::vec;
use proptest::prelude::*;

use suspsplit::catalog::{SpaceTerm, Wedge};
use suspsplit::decomposer::reduce_phi;
use suspsplit::oracle::{chain_homology, enumerate_inputs, EnumerationBounds};
use suspsplit::torsion::{FinAbGroup, PrimePower};

fn prime_power() -> impl Strategy<Value = PrimePower> {
    (prop_oneof![Just(2u64), Just(3), Just(5), Just(7)], 1u32..=4)
        .prop_map(|(p, r)| PrimePower::new(p, r).expect("valid prime power"))
}

/// Any catalog term, over dimension ranges the constructors accept.
fn space_term() -> impl Strategy<Value = SpaceTerm> {
    prop_oneof![
        (1u32..=12).prop_map(|m| SpaceTerm::sphere(m).unwrap()),
        (prime_power(), 3u32..=10).prop_map(|(q, m)| SpaceTerm::moore(q, m).unwrap()),
        (2u32..=8).prop_map(|n| SpaceTerm::chang_eta(n).unwrap()),
        ((2u32..=8), 1u32..=4).prop_map(|(n, r)| SpaceTerm::chang_r(n, r).unwrap()),
        (2u32..=4).prop_map(|n| SpaceTerm::cone_eta2(n).unwrap()),
        ((3u32..=4), 1u32..=4).prop_map(|(n, r)| SpaceTerm::cone_tilde_eta(n, r).unwrap()),
        ((3u32..=4), 1u32..=4).prop_map(|(n, r)| SpaceTerm::cone_2r_eta2(n, r).unwrap()),
        ((4u32..=5), 1u32..=4).prop_map(|(n, r)| SpaceTerm::cone_tilde_eta_eta(n, r).unwrap()),
        ((4u32..=5), 1u32..=4).prop_map(|(n, r)| SpaceTerm::cone_chang(n, r).unwrap()),
        Just(SpaceTerm::cone_eta3()),
        (3u32..=7).prop_map(|m| SpaceTerm::cone_alpha1(m).unwrap()),
        ((4u32..=7), 1u32..=4).prop_map(|(m, r)| SpaceTerm::cone_tilde_alpha1(m, r).unwrap()),
        ((4u32..=7), 1u32..=4).prop_map(|(m, r)| SpaceTerm::cone_i_alpha1(m, r).unwrap()),
    ]
}

/// Matrices for the rank reduction: `A` is l x l, `B` is l x t2 with one
/// torsion exponent per column, all entries 0 or 1.
#[allow(clippy::type_complexity)]
fn phi_inputs() -> impl Strategy<Value = (Vec<Vec<u8>>, Vec<Vec<u8>>, Vec<u32>)> {
    (0usize..=5, 0usize..=5).prop_flat_map(|(l, t2)| {
        (
            vec(vec(0u8..=1, l), l),
            vec(vec(0u8..=1, t2), l),
            vec(1u32..=4, t2),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn chain_and_table_homology_agree_on_arbitrary_wedges(
        terms in vec(space_term(), 0..6)
    ) {
        let w = Wedge::from_terms(terms);
        prop_assert_eq!(chain_homology(&w), w.reduced_homology());
    }

    #[test]
    fn suspension_shifts_wedge_homology_by_one(
        terms in vec(space_term(), 0..6)
    ) {
        // Suspension is partial on the catalog (e.g. the cone on eta^3
        // has no catalog suspension); the shift law applies whenever it
        // is defined.
        let w = Wedge::from_terms(terms);
        if let Ok(suspended) = w.suspend() {
            prop_assert_eq!(suspended.reduced_homology(), w.reduced_homology().shifted(1));
        }
    }

    #[test]
    fn localization_drops_exactly_the_two_primary_torsion(
        terms in vec(space_term(), 0..6)
    ) {
        let w = Wedge::from_terms(terms);
        let local = w.localize_away_from_2();
        let mut seen = std::collections::BTreeSet::new();
        for (d, (_, t)) in w.reduced_homology().iter() {
            seen.insert(d);
            let (lr, lt) = local.reduced_homology().part(d);
            let (wr, wt) = w.reduced_homology().part(d);
            prop_assert_eq!(lr, wr, "free rank in degree {}", d);
            prop_assert_eq!(lt, wt.away_from(2), "torsion in degree {}", d);
            let _ = t;
        }
        // Localization may not introduce homology in degrees the original
        // wedge lacked.
        for (d, _) in local.reduced_homology().iter() {
            prop_assert!(seen.contains(&d), "new homology in degree {}", d);
        }
    }

    #[test]
    fn wedge_construction_is_order_invariant(
        terms in vec(space_term(), 0..6),
        seed in any::<u64>(),
    ) {
        let mut shuffled = terms.clone();
        let mut state = seed | 1;
        for i in (1..shuffled.len()).rev() {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            shuffled.swap(i, j);
        }
        prop_assert_eq!(Wedge::from_terms(terms), Wedge::from_terms(shuffled));
    }

    #[test]
    fn rank_reduction_stays_in_bounds_past_the_exhaustive_range(
        (a, b, exps) in phi_inputs()
    ) {
        let l = a.len();
        let t2 = exps.len();
        let (c1, c2, chosen) = reduce_phi(&a, &b, &exps).expect("well-shaped input");
        let zero = a.iter().flatten().all(|&x| x == 0) && b.iter().flatten().all(|&x| x == 0);
        prop_assert_eq!((c1, c2) == (0, 0), zero);
        prop_assert!(c1 + c2 <= l, "c1 = {}, c2 = {}, l = {}", c1, c2, l);
        prop_assert!(c2 <= t2, "c2 = {}, t2 = {}", c2, t2);
        prop_assert_eq!(chosen.len(), c2);
        let mut sorted = chosen.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), chosen.len(), "chosen indices repeat");
        prop_assert!(chosen.iter().all(|&j| j < t2), "chosen index out of range");
    }

    #[test]
    fn cyclic_orders_carry_their_full_torsion(
        orders in vec(2u64..=720, 0..8)
    ) {
        let g = FinAbGroup::from_cyclic_orders(&orders).expect("orders factor");
        let product: u128 = orders.iter().map(|&q| u128::from(q)).product();
        let card: u128 = g.summands().iter().map(|q| u128::from(q.value())).product();
        prop_assert_eq!(card, product);
        // Splitting off the 2-primary part and the rest loses nothing.
        let again = g.primary_part(2).direct_sum(&g.away_from(2));
        prop_assert_eq!(again, g);
    }
}

/// Serialization round-trip over every enumerated document at the default
/// bounds: serialize, parse, serialize again, and require byte equality.
#[test]
fn enumerated_documents_round_trip_through_json() {
    let docs = enumerate_inputs(&EnumerationBounds::default(), 1_000_000).expect("under cap");
    assert!(!docs.is_empty());
    for doc in docs {
        let once = serde_json::to_string(&doc).expect("document serializes");
        let parsed: suspsplit::decomposer::InputDocument =
            serde_json::from_str(&once).expect("document parses back");
        let twice = serde_json::to_string(&parsed).expect("document re-serializes");
        assert_eq!(once, twice, "unstable serialization");
    }
}
