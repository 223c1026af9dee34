mod common;

use chainspec::dynamics::delta_ladder;
use chainspec::format::{model_to_json, parse_model, spectrum_from_json, spectrum_to_json};
use chainspec::fuzz::{generate_model, PartitionStrategy};
use chainspec::model::{extend_to_a1, validate_concrete, DiagonalElement};
use chainspec::oracle::{coefficient_atoms, delta_apply, delta_star_apply};
use chainspec::spectrum::full_spectrum;
use chainspec::verify::{verify_embedding, verify_operator_identities, Analysis};
use chainspec::ConcreteModel;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn model(seed: u64, max_size: usize) -> ConcreteModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate_model(&mut rng, max_size, PartitionStrategy::RandomCompatible).0
}

fn element(model: &ConcreteModel, values: &[i64]) -> DiagonalElement {
    let blocks = model.partition().len();
    let values: Vec<BigRational> = (0..blocks)
        .map(|b| BigRational::from_integer(values[b % values.len()].into()))
        .collect();
    DiagonalElement::from_block_values(model.partition(), &values)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_models_are_valid(seed in any::<u64>()) {
        prop_assert!(validate_concrete(&model(seed, 9)).is_valid());
    }

    #[test]
    fn delta_is_multiplicative_and_stays_in_a(
        seed in any::<u64>(),
        a in prop::collection::vec(-4i64..5, 1..6),
        b in prop::collection::vec(-4i64..5, 1..6),
    ) {
        let m = model(seed, 9);
        let (a, b) = (element(&m, &a), element(&m, &b));
        let lhs = delta_apply(&m, &a.mul(&b));
        prop_assert_eq!(&lhs, &delta_apply(&m, &a).mul(&delta_apply(&m, &b)));
        prop_assert!(lhs.in_algebra(m.partition()));
    }

    #[test]
    fn delta_star_is_multiplicative(
        seed in any::<u64>(),
        n in 0usize..4,
        a in prop::collection::vec(-4i64..5, 1..6),
        b in prop::collection::vec(-4i64..5, 1..6),
    ) {
        let m = model(seed, 9);
        let (a, b) = (element(&m, &a), element(&m, &b));
        prop_assert_eq!(
            delta_star_apply(&m, &a.mul(&b), n),
            delta_star_apply(&m, &a, n).mul(&delta_star_apply(&m, &b, n))
        );
    }

    #[test]
    fn operator_identities_hold(seed in any::<u64>()) {
        let report = verify_operator_identities(&model(seed, 8)).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn extension_is_valid_and_keeps_atoms(seed in any::<u64>()) {
        let m = model(seed, 9);
        let ext = extend_to_a1(&m).unwrap();
        let report = validate_concrete(&ext);
        prop_assert!(report.is_valid());
        prop_assert!(report.domain_in_algebra.passed);
        prop_assert!(ext.partition().refines(m.partition()));
        prop_assert_eq!(
            coefficient_atoms(&m).unwrap().atoms,
            coefficient_atoms(&ext).unwrap().atoms
        );
    }

    #[test]
    fn ladder_is_decreasing(seed in any::<u64>(), max_points in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pds = common::random_pds(&mut rng, max_points);
        let ladder = delta_ladder(&pds);
        let horizon = pds.len() + 2;
        for n in 0..horizon {
            prop_assert!(ladder.delta(n + 1).is_subset(ladder.delta(n)));
            prop_assert!(ladder.delta_neg(n + 1).is_subset(ladder.delta_neg(n)));
            prop_assert!(ladder.core().is_subset(ladder.delta_neg(n)));
        }
        prop_assert_eq!(ladder.delta(ladder.stab_forward()), ladder.delta(horizon));
        prop_assert_eq!(ladder.delta_neg(ladder.stab_backward()), ladder.core());
    }

    #[test]
    fn every_emitted_sequence_is_a_chain(seed in any::<u64>(), max_points in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pds = common::random_pds(&mut rng, max_points);
        let spectrum = full_spectrum(&pds, &delta_ladder(&pds));
        let upper = spectrum.upper.as_deref().unwrap();
        for seq in spectrum.materialized().chain(upper.materialized()) {
            prop_assert!(seq.is_chain(&pds), "{}", seq.format(&pds));
        }
        for n in spectrum.hat_tail.from..spectrum.hat_tail.from + 3 {
            for seq in spectrum.family(&pds, n) {
                prop_assert!(seq.is_chain(&pds));
                prop_assert_eq!(seq.length_index(), Some(n));
            }
        }
        prop_assert!(spectrum.materialized().all(|s| upper.materialized().any(|u| u == s))
            || !spectrum.hat_tail.roots.is_empty());
    }

    #[test]
    fn oracle_sequences_are_injective_chains_with_permanent_zeros(seed in any::<u64>()) {
        let report = verify_embedding(&model(seed, 9)).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn oracle_agrees_with_brute_force_orbits(seed in any::<u64>()) {
        // Each basis index walks its own σ-orbit; its atom must report the
        // same sequence of blocks.
        let m = model(seed, 8);
        let an = Analysis::new(&m).unwrap();
        for (atom, seq) in an.oracle.iter() {
            for &j in atom {
                for n in 0..=2 * m.size() {
                    let block = m.sigma().apply_pow(j, n).map(|k| m.partition().block_of(k));
                    prop_assert_eq!(seq.coordinate(n), block);
                }
            }
        }
    }

    #[test]
    fn model_json_round_trips(seed in any::<u64>()) {
        let m = model(seed, 10);
        let text = model_to_json(&m);
        let back = parse_model(&text).unwrap();
        prop_assert_eq!(model_to_json(&back), text);
        prop_assert_eq!(back, m);
    }

    #[test]
    fn spectrum_json_round_trips(seed in any::<u64>(), max_points in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pds = common::random_pds(&mut rng, max_points);
        let spectrum = full_spectrum(&pds, &delta_ladder(&pds));
        let json = spectrum_to_json(&spectrum, &pds);
        let text = serde_json::to_string(&json).unwrap();
        let reparsed = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(spectrum_from_json(&reparsed, &pds).unwrap(), spectrum);
    }

    #[test]
    fn dual_exists_exactly_when_delta_star_preserves_a(seed in any::<u64>()) {
        let m = model(seed, 8);
        let preserved = (0..m.partition().len()).all(|b| {
            let a = DiagonalElement::indicator(m.size(), m.partition().block(b).iter().copied());
            delta_star_apply(&m, &a, 1).in_algebra(m.partition())
        });
        let dual = chainspec::dynamics::dual_endomorphism_case(&m).unwrap();
        prop_assert_eq!(dual.is_some(), preserved);
    }
}
