//! A finite-category engine for checking functorial computation claims.
//!
//! The crate decides, by exhaustive finite checking, whether a physical
//! process description together with a candidate abstract reading of it
//! constitutes a computation in the functorial sense: the reading must be a
//! lawful functor, must be accompanied by a lawful decoding functor, and the
//! two must be mutually inverse (or, in the relaxed regime, adjoint).
//!
//! Layered from the bottom up:
//!
//! * [`category`] — finite categories as explicit composition tables, law
//!   checking, opposite and free constructions;
//! * [`functor`] — functors, inverse pairs, brute-force enumeration;
//! * [`nattrans`] — natural transformations and their laws;
//! * [`adjunction`] — unit/counit presentations and the triangle laws;
//! * [`lts`] — labelled transition systems compiled into categories;
//! * [`adder`] — numeral categories, cogwheel fixtures and base conversion;
//! * [`absproc`] — abstract process categories with a null object;
//! * [`cycle`] — the computation-claim verifiers (compute/predict cycles,
//!   refinement, realizability, nesting, causal conditions);
//! * [`audit`] — brute-force contrast between plain state mappings and
//!   functorial readings;
//! * [`dsl`] — the `.catspec` text format (parser, canonical printer,
//!   resolver) and [`dot`] — Graphviz export.

pub mod absproc;
pub mod adder;
pub mod adjunction;
pub mod audit;
pub mod category;
pub mod cycle;
pub mod dot;
pub mod dsl;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod lts;
pub mod nattrans;

pub use absproc::{build_comp_category, ProgramDecl, NULL_OBJECT};
pub use adder::{
    adder_claim_parts, base_conversion_nat_trans, binary_realization_of_decimal,
    build_adder_category, build_combined_adder, cogwheel_lts, cogwheel_lts_prefixed, AdderCategory,
    AdderClaimParts, Base, CombinedAdder, Numeral, NumeralKind, RealizabilityParts,
};
pub use adjunction::{check_adjunction, find_unit_counit, identity_adjunction, Adjunction};
pub use audit::{audit_simple_mappings, AuditReport};
pub use category::{
    check_category_laws, free_category, opposite, CategoryDecl, CompDecl, EdgeDecl, FinCategory,
    Law, LawReport, MorDecl, MorId, ObjId, Quiver, Violation,
};
pub use cycle::{
    check_causal_counterfactual, check_composite_cycle, check_compute_cycle, check_cycle,
    check_multiple_realizability, check_nested, check_predict_cycle, check_refinement,
    compose_claims, CycleClaim, Direction, LayerLink, NestedClaim, NestedReport, RealizabilityMode,
    RealizabilityReport, RefinementReport, Stage, Verdict,
};
pub use error::{Error, Limits, Result};
pub use functor::{
    check_functor_laws, check_inverse_pair, compose_functors, enumerate_functors, Functor,
    FunctorDecl, InversePairReport, Variance,
};
pub use lts::{lts_to_category, LtsMode, TransitionDecl, TransitionSystem};
pub use nattrans::{check_naturality, enumerate_nat_trans, vertical_compose, NatTrans};
