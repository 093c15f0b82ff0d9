//! Error vocabulary shared by every engine module.
//!
//! Construction errors are *structural*: duplicate identifiers, references to
//! undeclared objects, ill-typed table entries.  Behavioural problems (a table
//! that fails associativity, a functor that does not preserve composition)
//! are never errors — they come back as witness reports from the `check_*`
//! family so a caller can display them instead of refusing to load the input.

use thiserror::Error;

/// Everything that can go wrong while *building* or *driving* the engine.
///
/// Each variant carries a stable machine-readable code (see [`Error::code`])
/// that the CLI surfaces in diagnostics and JSON reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An identifier was declared twice in the same namespace.
    #[error("duplicate identifier `{id}` ({context})")]
    DuplicateId { id: String, context: String },

    /// A declaration mentions an identifier that was never declared.
    #[error("reference to undeclared identifier `{id}` ({context})")]
    DanglingReference { id: String, context: String },

    /// A composition-table entry is not typeable: the pair is not composable
    /// or the recorded result has the wrong endpoints.
    #[error("ill-typed composition entry for ({f}, {g}): {detail}")]
    IllTypedComp { f: String, g: String, detail: String },

    /// An identity assignment does not have the shape `a -> a`.
    #[error("ill-typed identity for object `{object}`: {detail}")]
    IllTypedIdentity { object: String, detail: String },

    /// Two arrows (or functors, or transformations) cannot be composed.
    #[error("not composable: {detail}")]
    NotComposable { detail: String },

    /// A morphism identifier does not exist in the category at hand.
    #[error("unknown morphism `{id}`")]
    UnknownMor { id: String },

    /// An object identifier does not exist in the category at hand.
    #[error("unknown object `{id}`")]
    UnknownObj { id: String },

    /// A quiver passed to the free-category construction has a cycle, so the
    /// path category would be infinite.  Carries one witness cycle.
    #[error("quiver has a cycle through {}", cycle.join(" -> "))]
    CyclicQuiver { cycle: Vec<String> },

    /// A map that must be total is missing entries.
    #[error("partial map: missing entry for `{missing}` ({context})")]
    PartialMap { missing: String, context: String },

    /// A natural transformation was requested between functors that are not
    /// parallel (different endpoints or different variance).
    #[error("functors are not parallel: {detail}")]
    NotParallel { detail: String },

    /// An enumeration or search exceeded its candidate budget.
    #[error("enumeration budget of {budget} candidates exceeded ({context})")]
    BudgetExceeded { budget: u64, context: String },

    /// A supplied composition table disagrees with the transition graph it
    /// claims to present.
    #[error("explicit table does not match the transition system: {detail}")]
    TableMismatch { detail: String },

    /// A composition table is missing entries for composable pairs.  Carries
    /// the missing pairs so the caller can close the table.
    #[error("composition table is not closed; missing {} entr{}: {}",
        missing.len(),
        if missing.len() == 1 { "y" } else { "ies" },
        render_pairs(missing))]
    UnclosedTable { missing: Vec<(String, String)> },

    /// A numeral construction was asked for more digits than the builder
    /// supports for that base.
    #[error("width {width} exceeds the cap of {cap} digits for base {base}")]
    WidthOverflow { base: u32, width: u32, cap: u32 },

    /// Two numeral objects that must denote the same value do not.
    #[error("value mismatch: {detail}")]
    ValueMismatch { detail: String },

    /// A claim's functors do not line up with its categories.
    #[error("ill-typed claim: {detail}")]
    IllTypedClaim { detail: String },

    /// Layers and links of a nested claim do not line up.
    #[error("layer mismatch: {detail}")]
    LayerMismatch { detail: String },

    /// Relaxed realizability exhausted its budget while searching for a unit
    /// and counit.
    #[error("no unit/counit found within budget ({context})")]
    NoUnitCounitFound { context: String },
}

fn render_pairs(pairs: &[(String, String)]) -> String {
    const SHOW: usize = 8;
    let mut out: Vec<String> =
        pairs.iter().take(SHOW).map(|(f, g)| format!("({f}, {g})")).collect();
    if pairs.len() > SHOW {
        out.push(format!("... {} more", pairs.len() - SHOW));
    }
    out.join(", ")
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicateId { .. } => "DUPLICATE_ID",
            Error::DanglingReference { .. } => "DANGLING_REFERENCE",
            Error::IllTypedComp { .. } => "ILL_TYPED_COMP",
            Error::IllTypedIdentity { .. } => "ILL_TYPED_IDENTITY",
            Error::NotComposable { .. } => "NOT_COMPOSABLE",
            Error::UnknownMor { .. } => "UNKNOWN_MOR",
            Error::UnknownObj { .. } => "UNKNOWN_OBJ",
            Error::CyclicQuiver { .. } => "CYCLIC_QUIVER",
            Error::PartialMap { .. } => "PARTIAL_MAP",
            Error::NotParallel { .. } => "NOT_PARALLEL",
            Error::BudgetExceeded { .. } => "BUDGET_EXCEEDED",
            Error::TableMismatch { .. } => "TABLE_MISMATCH",
            Error::UnclosedTable { .. } => "UNCLOSED_TABLE",
            Error::WidthOverflow { .. } => "WIDTH_OVERFLOW",
            Error::ValueMismatch { .. } => "VALUE_MISMATCH",
            Error::IllTypedClaim { .. } => "ILL_TYPED_CLAIM",
            Error::LayerMismatch { .. } => "LAYER_MISMATCH",
            Error::NoUnitCounitFound { .. } => "NO_UNIT_COUNIT_FOUND",
        }
    }
}

/// Convenient alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Caps applied by checkers and enumerators.
///
/// `max_witnesses` bounds how many violations a law report lists before the
/// scan stops (the report is then marked truncated).  `max_candidates` bounds
/// brute-force enumerations; exceeding it is a [`Error::BudgetExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_witnesses: usize,
    pub max_candidates: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_witnesses: 10, max_candidates: 1_000_000 }
    }
}

impl Limits {
    /// Limits that stop at the first violation; used by enumeration filters
    /// and fail-fast sweeps.
    pub fn first_witness() -> Self {
        Limits { max_witnesses: 1, ..Limits::default() }
    }

    pub fn with_witnesses(mut self, max: usize) -> Self {
        self.max_witnesses = max;
        self
    }

    pub fn with_candidates(mut self, max: u64) -> Self {
        self.max_candidates = max;
        self
    }
}
