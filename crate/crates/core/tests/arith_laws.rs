use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stratpi_core::arith::{
    cyclotomic_consistency, cyclotomic_quotient, unit_group_invariants, verify_formula, DedekindModel, Outcome,
    PrimeData,
};
use stratpi_core::fpgroup::{Effort, GroupHom};
use stratpi_core::sample::{random_dedekind_model, random_word, SampledModel};

fn sample(seed: u64) -> SampledModel {
    random_dedekind_model(&mut ChaCha8Rng::seed_from_u64(seed), 24)
}

fn with_primes(m: &DedekindModel, f: impl Fn(&PrimeData) -> PrimeData) -> DedekindModel {
    DedekindModel::new(m.g_k().clone(), m.primes().iter().map(f).collect()).unwrap()
}

#[test]
fn batch_of_fifty_matches_oracle() {
    let mut r = ChaCha8Rng::seed_from_u64(20261015);
    for i in 0..50 {
        let s = random_dedekind_model(&mut r, 24);
        let report = verify_formula(&s.model, &Effort::default()).unwrap();
        assert_eq!(report.outcome, Outcome::Match, "instance {i}: {}", report.detail);
        assert_eq!(report.computed_order, Some(s.oracle_order), "instance {i}");
        assert!(report.round_trip, "instance {i}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn conjugating_decomposition_groups_changes_nothing(seed in any::<u64>()) {
        let s = sample(seed);
        let mut r = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let c = random_word(&mut r, s.model.g_k().num_generators(), 5);
        let report = verify_formula(&s.model.conjugate_by(&c), &Effort::default()).unwrap();
        prop_assert_eq!(report.outcome, Outcome::Match);
        prop_assert_eq!(report.computed_order, Some(s.oracle_order));
    }

    #[test]
    fn trivial_inertia_gives_the_whole_group(seed in any::<u64>()) {
        let s = sample(seed);
        let m = with_primes(&s.model, |p| PrimeData { inertia: vec![], ..p.clone() });
        let report = verify_formula(&m, &Effort::default()).unwrap();
        prop_assert_eq!(report.outcome, Outcome::Match);
        prop_assert_eq!(report.computed_order, Some(s.group.order()));
    }

    #[test]
    fn full_inertia_kills_everything(seed in any::<u64>()) {
        let s = sample(seed);
        let g = s.model.g_k().clone();
        let whole = PrimeData {
            name: "p0".into(),
            decomposition: g.clone(),
            inclusion: GroupHom::identity_on_names(g.clone(), g.clone()).unwrap(),
            inertia: (0..g.num_generators()).map(stratpi_core::fpgroup::Word::generator).collect(),
        };
        let mut primes = s.model.primes().to_vec();
        primes.push(whole);
        let m = DedekindModel::new(g, primes).unwrap();
        let report = verify_formula(&m, &Effort::default()).unwrap();
        prop_assert_eq!(report.outcome, Outcome::Match);
        prop_assert_eq!(report.computed_order, Some(1));
    }

    #[test]
    fn renaming_primes_changes_nothing(seed in any::<u64>()) {
        let s = sample(seed);
        let m = with_primes(&s.model, |p| PrimeData { name: format!("q_{}", p.name), ..p.clone() });
        let a = verify_formula(&s.model, &Effort::default()).unwrap();
        let b = verify_formula(&m, &Effort::default()).unwrap();
        prop_assert_eq!(a.computed, b.computed);
        prop_assert_eq!(a.outcome, b.outcome);
    }

    #[test]
    fn quotient_shrinks_as_primes_are_added(m in 3u64..400) {
        let report = cyclotomic_consistency(m).unwrap();
        for a in &report.rows {
            for b in &report.rows {
                if a.primes.iter().all(|p| b.primes.contains(p)) {
                    let (oa, ob) = (a.quotient.order().unwrap(), b.quotient.order().unwrap());
                    prop_assert_eq!(&oa % &ob, 0u32.into());
                }
            }
        }
    }
}

#[test]
fn cyclotomic_agrees_with_brute_force_up_to_200() {
    for m in 3..=200 {
        let report = cyclotomic_consistency(m).unwrap();
        assert!(report.consistent(), "m = {m}");
        assert_eq!(report.rows[0].quotient, unit_group_invariants(m), "m = {m}");
        assert!(report.rows.last().unwrap().quotient.is_trivial(), "m = {m}");
    }
}

#[test]
fn cyclotomic_quotient_is_the_unit_group_of_the_reduced_level() {
    assert_eq!(cyclotomic_quotient(120, &[2]).unwrap(), unit_group_invariants(15));
    assert_eq!(cyclotomic_quotient(120, &[3, 5]).unwrap(), unit_group_invariants(8));
}
