//! Property tests: structural invariants over randomly generated inputs,
//! with the independent oracles as the reference implementation wherever an
//! engine search has one.

mod common;

use std::sync::Arc;

use compcycle::adder::{build_adder_category, Base};
use compcycle::audit::audit_simple_mappings;
use compcycle::category::{check_category_laws, opposite, CategoryDecl, FinCategory, MorDecl};
use compcycle::dsl::{canonical_format, parse_spec};
use compcycle::error::Limits;
use compcycle::functor::enumerate_functors;
use compcycle::lts::{lts_to_category, LtsMode, TransitionDecl, TransitionSystem};
use compcycle::nattrans::enumerate_nat_trans;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The two-object interval category `a -> b`, built directly.
fn interval() -> Arc<FinCategory> {
    let decl = CategoryDecl {
        objects: vec!["a".into(), "b".into()],
        morphisms: vec![MorDecl::new("f", "a", "b")],
        comp: vec![
            ("id_a", "id_a", "id_a"),
            ("id_b", "id_b", "id_b"),
            ("id_a", "f", "f"),
            ("f", "id_b", "f"),
        ]
        .into_iter()
        .map(|(f, g, h)| compcycle::category::CompDecl::new(f, g, h))
        .collect(),
        ..CategoryDecl::default()
    }
    .with_default_identities();
    Arc::new(FinCategory::new(decl).expect("the interval category is well-formed"))
}

/// A random forest-shaped transition system, mirroring
/// `common::random_forest_category` but keeping the raw states and
/// transitions for audit use.
fn random_forest_lts(rng: &mut impl Rng, max_states: usize) -> TransitionSystem {
    let n = rng.gen_range(2..=max_states.max(2));
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut transitions = Vec::new();
    for i in 1..n {
        if rng.gen_range(0..4) == 0 {
            continue;
        }
        let parent = rng.gen_range(0..i);
        transitions.push(TransitionDecl::new(
            format!("t{parent}_{i}"),
            states[parent].clone(),
            states[i].clone(),
        ));
    }
    TransitionSystem { states, transitions, metadata: String::new() }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    /// Free categories over forest quivers always satisfy the laws, and so
    /// do their opposites; taking the opposite twice is the identity.
    #[test]
    fn forest_categories_and_their_opposites_are_lawful(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = common::random_forest_category(&mut rng, 4);
        let report = check_category_laws(&cat, Limits::default());
        prop_assert!(report.ok, "category laws failed: {:?}", report.violations);

        let op = opposite(&cat);
        let op_report = check_category_laws(&op, Limits::default());
        prop_assert!(op_report.ok, "opposite laws failed: {:?}", op_report.violations);
        prop_assert_eq!(&opposite(&op), &*cat, "double opposite must restore the category");
    }

    /// The engine's functor search agrees with the brute-force oracle on
    /// the full list of functors between two small categories.
    #[test]
    fn functor_enumeration_matches_the_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_forest_category(&mut rng, 3);
        let b = common::random_forest_category(&mut rng, 3);
        let engine = enumerate_functors(&a, &b, Limits::default().with_candidates(10_000_000))
            .expect("the search space fits the budget");
        let oracle = common::oracle_functors(&a, &b);
        prop_assert_eq!(engine.len(), oracle.len());
        for f in &engine {
            let assignment: common::Assignment = (
                f.obj_entries().iter().map(|(x, y)| (x.to_string(), y.to_string())).collect(),
                f.mor_entries().iter().map(|(x, y)| (x.to_string(), y.to_string())).collect(),
            );
            prop_assert!(oracle.contains(&assignment), "engine found {:?}, oracle did not", assignment);
        }
    }

    /// The engine's transformation search agrees with the brute-force
    /// oracle, for every parallel pair drawn from the functor search.
    #[test]
    fn nat_trans_enumeration_matches_the_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_forest_category(&mut rng, 3);
        let b = common::random_forest_category(&mut rng, 3);
        let functors = enumerate_functors(&a, &b, Limits::default().with_candidates(10_000_000))
            .expect("the search space fits the budget");
        for f in functors.iter().take(3) {
            for g in functors.iter().take(3) {
                let engine = enumerate_nat_trans(f, g, Limits::default().with_candidates(10_000_000))
                    .expect("the search space fits the budget");
                let oracle = common::oracle_nat_trans(f, g);
                prop_assert_eq!(engine.len(), oracle.len());
            }
        }
    }

    /// Audit counts agree with the independent oracles on random
    /// forest-shaped transition systems read against the interval category.
    #[test]
    fn audit_counts_match_the_oracles(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ts = random_forest_lts(&mut rng, 3);
        let abs = interval();
        let report = audit_simple_mappings(&ts, &abs, Limits::default())
            .expect("the audit space fits the budget");
        prop_assert_eq!(report.n_simple, common::oracle_simple_maps(&ts, &abs).len() as u64);
        let phys = lts_to_category(&ts, LtsMode::FreeAcyclic).expect("forests are acyclic");
        prop_assert_eq!(report.n_functorial, common::oracle_inverse_pairs(&phys, &abs));
        prop_assert!(report.n_functorial <= report.n_simple);
    }

    /// The parser never panics, whatever the input.
    #[test]
    fn parser_is_total(input in any::<String>()) {
        let _ = parse_spec(&input);
    }

    /// Canonical formatting is a parse fixed point on random well-formed
    /// files, and parsing preserves the structure.
    #[test]
    fn canonical_format_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = common::random_spec(&mut rng);
        let once = canonical_format(&spec);
        let parsed = parse_spec(&once).map_err(|d| {
            TestCaseError::fail(format!("reparse failed: {d:?}\n---\n{once}"))
        })?;
        prop_assert_eq!(spec.items.len(), parsed.spec.items.len());
        for (a, b) in spec.items.iter().zip(&parsed.spec.items) {
            prop_assert_eq!(&a.name, &b.name);
            prop_assert_eq!(&a.kind, &b.kind);
        }
        prop_assert_eq!(once, canonical_format(&parsed.spec));
    }
}

/// Adder categories are lawful across every base at representative widths.
#[test]
fn adder_categories_are_lawful_across_widths() {
    for (base, widths) in [(Base::Binary, 1..=4u32), (Base::Octal, 1..=2), (Base::Decimal, 1..=2)] {
        for w in widths {
            let adder = build_adder_category(base, w)
                .unwrap_or_else(|e| panic!("base {} width {w}: {e}", base.radix()));
            let report = check_category_laws(&adder.category, Limits::default());
            assert!(
                report.ok,
                "base {} width {w} failed the laws: {:?}",
                base.radix(),
                report.violations
            );
        }
    }
}
