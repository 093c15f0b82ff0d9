//! A small text format for declaring categories, readouts and claims, plus
//! the machinery to parse, canonically format, resolve and verify whole
//! files of them.
//!
//! The pipeline is `parse_spec` (text → [`SpecFile`]), optionally
//! `canonical_format` (stable pretty-printing, a fixed point of the
//! parser), `resolve_spec` (names → core structures, with identity and
//! absorption-row auto-fill for category blocks), and `verify_spec`
//! (one [`CheckEntry`] per block, serializable for machine consumption).

pub mod ast;
mod parse;
mod print;
mod resolve;

pub use ast::{
    AdjunctionBlock, ArrowLine, AuditBlock, CategoryBlock, ClaimBlock, ClaimKind, FunctorBlock,
    Item, ItemKind, LinkBlock, LtsBlock, NatTransBlock, QuiverBlock, SpecFile,
};
pub use parse::{parse_spec, Diagnostic, ParseOutcome};
pub use print::canonical_format;
pub use resolve::{
    resolve_spec, verify_spec, CheckDetail, CheckEntry, FileVerification, ResolvedAudit,
    ResolvedClaim, ResolvedSpec,
};
