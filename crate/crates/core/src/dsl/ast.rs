//! Abstract syntax for workspace specification files.
//!
//! The AST stores exactly what was declared: auto-filled identity
//! absorptions, default identities and defaulted functor images appear only
//! when the file is resolved into core structures, never here.  That keeps
//! the canonical printer a faithful record of the source.

use crate::cycle::{Direction, RealizabilityMode};
use crate::functor::Variance;

/// One parsed specification file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpecFile {
    pub items: Vec<Item>,
}

/// A named top-level block, with the line it started on (1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub name: String,
    pub kind: ItemKind,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ItemKind {
    Category(CategoryBlock),
    Quiver(QuiverBlock),
    Lts(LtsBlock),
    Functor(FunctorBlock),
    NatTrans(NatTransBlock),
    Adjunction(AdjunctionBlock),
    Link(LinkBlock),
    Claim(ClaimBlock),
    Audit(AuditBlock),
}

impl ItemKind {
    /// The block keyword, as written in source.
    pub fn keyword(&self) -> &'static str {
        match self {
            ItemKind::Category(_) => "category",
            ItemKind::Quiver(_) => "quiver",
            ItemKind::Lts(_) => "lts",
            ItemKind::Functor(_) => "functor",
            ItemKind::NatTrans(_) => "nattrans",
            ItemKind::Adjunction(_) => "adjunction",
            ItemKind::Link(_) => "link",
            ItemKind::Claim(_) => "claim",
            ItemKind::Audit(_) => "audit",
        }
    }
}

/// An arrow-shaped inner declaration (`mor`/`edge`/`trans` lines).
#[derive(Debug, Clone, PartialEq)]
pub struct ArrowLine {
    pub id: String,
    pub dom: String,
    pub cod: String,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CategoryBlock {
    pub objects: Vec<String>,
    pub null_object: Option<String>,
    /// Explicit `identity <obj> = <mor>` lines.
    pub identities: Vec<(String, String)>,
    pub morphisms: Vec<ArrowLine>,
    /// `comp f . g = h` lines (apply `f`, then `g`).
    pub comps: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuiverBlock {
    pub nodes: Vec<String>,
    pub edges: Vec<ArrowLine>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LtsBlock {
    pub states: Vec<String>,
    pub transitions: Vec<ArrowLine>,
    pub metadata: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctorBlock {
    pub src: String,
    pub dst: String,
    pub variance: Variance,
    pub theory: Option<String>,
    pub obj_map: Vec<(String, String)>,
    pub mor_map: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NatTransBlock {
    pub source: String,
    pub target: String,
    /// `at <obj>: <mor>` component lines.
    pub components: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjunctionBlock {
    pub left: String,
    pub right: String,
    pub unit: String,
    pub counit: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkBlock {
    pub up: String,
    pub down: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimKind {
    Cycle,
    Composite,
    Refinement,
    Realizability,
    Nested,
    Causal,
}

impl ClaimKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimKind::Cycle => "cycle",
            ClaimKind::Composite => "composite",
            ClaimKind::Refinement => "refinement",
            ClaimKind::Realizability => "realizability",
            ClaimKind::Nested => "nested",
            ClaimKind::Causal => "causal",
        }
    }
}

/// A claim block; which fields are required depends on `kind` and is
/// enforced by the parser.
#[derive(Debug, Clone, PartialEq)]
pub struct ClaimBlock {
    pub kind: ClaimKind,
    pub direction: Option<Direction>,
    pub phys: Option<String>,
    pub abs: Option<String>,
    pub r: Option<String>,
    pub rt: Option<String>,
    pub chain: Vec<String>,
    pub fine: Option<String>,
    pub coarse: Option<String>,
    pub eta: Option<String>,
    pub mode: Option<RealizabilityMode>,
    pub unit: Option<String>,
    pub counit: Option<String>,
    pub layers: Vec<String>,
    pub links: Vec<String>,
}

impl ClaimBlock {
    pub fn empty(kind: ClaimKind) -> ClaimBlock {
        ClaimBlock {
            kind,
            direction: None,
            phys: None,
            abs: None,
            r: None,
            rt: None,
            chain: Vec::new(),
            fine: None,
            coarse: None,
            eta: None,
            mode: None,
            unit: None,
            counit: None,
            layers: Vec::new(),
            links: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditBlock {
    pub lts: String,
    pub abs: String,
}
