//! Line-oriented parser for specification files.
//!
//! Grammar sketch (one directive per line, `#` starts a comment, block
//! bodies are brace-delimited):
//!
//! ```text
//! category Name {            quiver Name {             lts Name {
//!   objects: a, b              nodes: a, b               states: s0, s1
//!   null: z                    edge e: a -> b            trans t: s0 -> s1 [label="step"]
//!   identity: a = ida        }                           metadata: "free text"
//!   mor f: a -> b [label="step"]                       }
//!   comp f . g = h
//! }
//!
//! functor F: C -> D {        nattrans n: F => G {      adjunction A {
//!   variance: contravariant    at a: u                   left: F
//!   theory: "what it reads"  }                           right: G
//!   obj a -> x                                           unit: n
//!   mor f -> u                                           counit: m
//! }                                                    }
//!
//! link L {                   claim Name {              audit Name {
//!   up: F                      kind: cycle               lts: M
//!   down: G                    phys: C                   abs: A
//! }                            abs: D                  }
//!                              r: F
//!                              rt: G
//!                            }
//! ```
//!
//! Diagnostics carry a stable code, a message, and a 1-based line/column:
//! `E001` syntax, `E002` duplicate definition, `E003` unknown reference,
//! `E004` construction or verification setup failure, `W001` nothing to
//! verify beyond structural laws.

use std::fmt;

use serde::Serialize;

use super::ast::*;
use crate::cycle::{Direction, RealizabilityMode};
use crate::functor::Variance;

/// One parser/resolver message with a stable code and source position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: &'static str,
    pub message: String,
    pub line: usize,
    pub col: usize,
}

impl Diagnostic {
    pub fn is_warning(&self) -> bool {
        self.code.starts_with('W')
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {} {}", self.line, self.col, self.code, self.message)
    }
}

/// A successfully parsed file plus any warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseOutcome {
    pub spec: SpecFile,
    pub warnings: Vec<Diagnostic>,
}

/// Parses a specification file.  All syntax and duplicate-name errors are
/// collected (one per offending line) before giving up.
pub fn parse_spec(input: &str) -> Result<ParseOutcome, Vec<Diagnostic>> {
    let mut items: Vec<Item> = Vec::new();
    let mut errors: Vec<Diagnostic> = Vec::new();
    let mut open: Option<Item> = None;

    for (line_ix, raw) in input.lines().enumerate() {
        let line_no = line_ix + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let mut scan = Scan::new(line, line_no);
        match &mut open {
            None => match parse_header(&mut scan) {
                Ok(item) => open = Some(item),
                Err(d) => errors.push(d),
            },
            Some(item) => {
                scan.skip_ws();
                if scan.try_expect("}") {
                    if let Err(d) = scan.finish() {
                        errors.push(d);
                    }
                    let done = open.take().expect("block is open");
                    close_block(done, &mut items, &mut errors);
                } else if let Err(d) = parse_directive(&mut scan, item) {
                    errors.push(d);
                }
            }
        }
    }
    if let Some(item) = open {
        errors.push(Diagnostic {
            code: "E001",
            message: format!("block `{}` is never closed", item.name),
            line: item.line,
            col: 1,
        });
    }

    if !errors.is_empty() {
        return Err(errors);
    }
    let mut warnings = Vec::new();
    let has_work = items.iter().any(|i| matches!(i.kind, ItemKind::Claim(_) | ItemKind::Audit(_)));
    if !has_work {
        warnings.push(Diagnostic {
            code: "W001",
            message: "file declares no claims or audits; only structural laws will be checked"
                .into(),
            line: 1,
            col: 1,
        });
    }
    Ok(ParseOutcome { spec: SpecFile { items }, warnings })
}

/// Validates kind-specific required fields and name uniqueness, then commits
/// the block.
fn close_block(item: Item, items: &mut Vec<Item>, errors: &mut Vec<Diagnostic>) {
    let same_namespace = |kind: &ItemKind, other: &ItemKind| -> bool {
        let cat = |k: &ItemKind| {
            matches!(k, ItemKind::Category(_) | ItemKind::Quiver(_) | ItemKind::Lts(_))
        };
        (cat(kind) && cat(other)) || std::mem::discriminant(kind) == std::mem::discriminant(other)
    };
    if let Some(prev) =
        items.iter().find(|i| i.name == item.name && same_namespace(&i.kind, &item.kind))
    {
        errors.push(Diagnostic {
            code: "E002",
            message: format!(
                "`{}` is already defined as a {} on line {}",
                item.name,
                prev.kind.keyword(),
                prev.line
            ),
            line: item.line,
            col: 1,
        });
        return;
    }
    if let ItemKind::Claim(claim) = &item.kind {
        let mut need = |field: &str, present: bool| {
            if !present {
                errors.push(Diagnostic {
                    code: "E001",
                    message: format!(
                        "claim `{}` of kind {} is missing its `{field}` field",
                        item.name,
                        claim.kind.as_str()
                    ),
                    line: item.line,
                    col: 1,
                });
            }
        };
        match claim.kind {
            ClaimKind::Cycle | ClaimKind::Causal => {
                need("phys", claim.phys.is_some());
                need("abs", claim.abs.is_some());
                need("r", claim.r.is_some());
                need("rt", claim.rt.is_some());
            }
            ClaimKind::Composite => need("chain", !claim.chain.is_empty()),
            ClaimKind::Refinement => {
                need("fine", claim.fine.is_some());
                need("coarse", claim.coarse.is_some());
            }
            ClaimKind::Realizability => {
                need("phys", claim.phys.is_some());
                need("abs", claim.abs.is_some());
                need("r", claim.r.is_some());
                need("rt", claim.rt.is_some());
                need("mode", claim.mode.is_some());
                if claim.unit.is_some() != claim.counit.is_some() {
                    errors.push(Diagnostic {
                        code: "E001",
                        message: format!(
                            "claim `{}` must supply unit and counit together or not at all",
                            item.name
                        ),
                        line: item.line,
                        col: 1,
                    });
                }
            }
            ClaimKind::Nested => {
                need("layers", !claim.layers.is_empty());
            }
        }
    }
    items.push(item);
}

fn strip_comment(line: &str) -> &str {
    let bytes = line.as_bytes();
    let mut in_str = false;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' if in_str => i += 1,
            b'"' => in_str = !in_str,
            b'#' if !in_str => return &line[..i],
            _ => {}
        }
        i += 1;
    }
    line
}

fn parse_header(scan: &mut Scan) -> Result<Item, Diagnostic> {
    let keyword = scan.ident("a block keyword")?;
    let line = scan.line_no;
    let kind = match keyword {
        "category" | "quiver" | "lts" | "adjunction" | "link" | "claim" | "audit" => keyword,
        "functor" | "nattrans" => keyword,
        other => {
            return Err(scan.error(format!(
                "unknown block keyword `{other}` (expected category, quiver, lts, functor, nattrans, adjunction, link, claim or audit)"
            )))
        }
    };
    let name = scan.ident("a block name")?.to_string();
    let kind = match kind {
        "functor" => {
            scan.expect(":")?;
            let src = scan.ident("the source category")?.to_string();
            scan.expect("->")?;
            let dst = scan.ident("the target category")?.to_string();
            ItemKind::Functor(FunctorBlock {
                src,
                dst,
                variance: Variance::Covariant,
                theory: None,
                obj_map: Vec::new(),
                mor_map: Vec::new(),
            })
        }
        "nattrans" => {
            scan.expect(":")?;
            let source = scan.ident("the source functor")?.to_string();
            scan.expect("=>")?;
            let target = scan.ident("the target functor")?.to_string();
            ItemKind::NatTrans(NatTransBlock { source, target, components: Vec::new() })
        }
        "category" => ItemKind::Category(CategoryBlock::default()),
        "quiver" => ItemKind::Quiver(QuiverBlock::default()),
        "lts" => ItemKind::Lts(LtsBlock::default()),
        "adjunction" => ItemKind::Adjunction(AdjunctionBlock {
            left: String::new(),
            right: String::new(),
            unit: String::new(),
            counit: String::new(),
        }),
        "link" => ItemKind::Link(LinkBlock { up: String::new(), down: String::new() }),
        "claim" => ItemKind::Claim(ClaimBlock::empty(ClaimKind::Cycle)),
        "audit" => ItemKind::Audit(AuditBlock { lts: String::new(), abs: String::new() }),
        _ => unreachable!(),
    };
    scan.expect("{")?;
    scan.finish()?;
    Ok(Item { name, kind, line })
}

fn parse_directive(scan: &mut Scan, item: &mut Item) -> Result<(), Diagnostic> {
    match &mut item.kind {
        ItemKind::Category(block) => category_directive(scan, block),
        ItemKind::Quiver(block) => quiver_directive(scan, block),
        ItemKind::Lts(block) => lts_directive(scan, block),
        ItemKind::Functor(block) => functor_directive(scan, block),
        ItemKind::NatTrans(block) => nattrans_directive(scan, block),
        ItemKind::Adjunction(block) => adjunction_directive(scan, block),
        ItemKind::Link(block) => link_directive(scan, block),
        ItemKind::Claim(block) => claim_directive(scan, block),
        ItemKind::Audit(block) => audit_directive(scan, block),
    }
}

fn category_directive(scan: &mut Scan, block: &mut CategoryBlock) -> Result<(), Diagnostic> {
    let word = scan.ident("a category directive")?;
    match word {
        "objects" => {
            scan.expect(":")?;
            let list = scan.ident_list()?;
            scan.finish()?;
            block.objects.extend(list);
            Ok(())
        }
        "null" => {
            scan.expect(":")?;
            let obj = scan.ident("the null object")?.to_string();
            scan.finish()?;
            if block.null_object.is_some() {
                return Err(scan.dup("null"));
            }
            block.null_object = Some(obj);
            Ok(())
        }
        "identity" => {
            scan.expect(":")?;
            let obj = scan.ident("an object")?.to_string();
            scan.expect("=")?;
            let mor = scan.ident("its identity morphism")?.to_string();
            scan.finish()?;
            if block.identities.iter().any(|(o, _)| *o == obj) {
                return Err(scan.dup(&format!("identity for `{obj}`")));
            }
            block.identities.push((obj, mor));
            Ok(())
        }
        "mor" => {
            let arrow = scan.arrow_line()?;
            if block.morphisms.iter().any(|m| m.id == arrow.id) {
                return Err(scan.dup(&format!("morphism `{}`", arrow.id)));
            }
            block.morphisms.push(arrow);
            Ok(())
        }
        "comp" => {
            let first = scan.ident("the first morphism")?.to_string();
            scan.expect(".")?;
            let then = scan.ident("the second morphism")?.to_string();
            scan.expect("=")?;
            let result = scan.ident("the composite")?.to_string();
            scan.finish()?;
            if block.comps.iter().any(|(f, g, _)| *f == first && *g == then) {
                return Err(scan.dup(&format!("composition of `{first}` and `{then}`")));
            }
            block.comps.push((first, then, result));
            Ok(())
        }
        other => Err(scan.error(format!(
            "unknown category directive `{other}` (expected objects, null, identity, mor or comp)"
        ))),
    }
}

fn quiver_directive(scan: &mut Scan, block: &mut QuiverBlock) -> Result<(), Diagnostic> {
    let word = scan.ident("a quiver directive")?;
    match word {
        "nodes" => {
            scan.expect(":")?;
            let list = scan.ident_list()?;
            scan.finish()?;
            block.nodes.extend(list);
            Ok(())
        }
        "edge" => {
            let arrow = scan.arrow_line()?;
            if block.edges.iter().any(|m| m.id == arrow.id) {
                return Err(scan.dup(&format!("edge `{}`", arrow.id)));
            }
            block.edges.push(arrow);
            Ok(())
        }
        other => {
            Err(scan.error(format!("unknown quiver directive `{other}` (expected nodes or edge)")))
        }
    }
}

fn lts_directive(scan: &mut Scan, block: &mut LtsBlock) -> Result<(), Diagnostic> {
    let word = scan.ident("an lts directive")?;
    match word {
        "states" => {
            scan.expect(":")?;
            let list = scan.ident_list()?;
            scan.finish()?;
            block.states.extend(list);
            Ok(())
        }
        "trans" => {
            let arrow = scan.arrow_line()?;
            if block.transitions.iter().any(|m| m.id == arrow.id) {
                return Err(scan.dup(&format!("transition `{}`", arrow.id)));
            }
            block.transitions.push(arrow);
            Ok(())
        }
        "metadata" => {
            scan.expect(":")?;
            let text = scan.quoted()?;
            scan.finish()?;
            if block.metadata.is_some() {
                return Err(scan.dup("metadata"));
            }
            block.metadata = Some(text);
            Ok(())
        }
        other => Err(scan.error(format!(
            "unknown lts directive `{other}` (expected states, trans or metadata)"
        ))),
    }
}

fn functor_directive(scan: &mut Scan, block: &mut FunctorBlock) -> Result<(), Diagnostic> {
    let word = scan.ident("a functor directive")?;
    match word {
        "variance" => {
            scan.expect(":")?;
            let v = scan.ident("covariant or contravariant")?;
            let variance = match v {
                "covariant" => Variance::Covariant,
                "contravariant" => Variance::Contravariant,
                other => return Err(scan.error(format!("unknown variance `{other}`"))),
            };
            scan.finish()?;
            block.variance = variance;
            Ok(())
        }
        "theory" => {
            scan.expect(":")?;
            let text = scan.quoted()?;
            scan.finish()?;
            if block.theory.is_some() {
                return Err(scan.dup("theory"));
            }
            block.theory = Some(text);
            Ok(())
        }
        "obj" => {
            let from = scan.ident("a source object")?.to_string();
            scan.expect("->")?;
            let to = scan.ident("its image")?.to_string();
            scan.finish()?;
            if block.obj_map.iter().any(|(f, _)| *f == from) {
                return Err(scan.dup(&format!("image of object `{from}`")));
            }
            block.obj_map.push((from, to));
            Ok(())
        }
        "mor" => {
            let from = scan.ident("a source morphism")?.to_string();
            scan.expect("->")?;
            let to = scan.ident("its image")?.to_string();
            scan.finish()?;
            if block.mor_map.iter().any(|(f, _)| *f == from) {
                return Err(scan.dup(&format!("image of morphism `{from}`")));
            }
            block.mor_map.push((from, to));
            Ok(())
        }
        other => Err(scan.error(format!(
            "unknown functor directive `{other}` (expected variance, theory, obj or mor)"
        ))),
    }
}

fn nattrans_directive(scan: &mut Scan, block: &mut NatTransBlock) -> Result<(), Diagnostic> {
    let word = scan.ident("a nattrans directive")?;
    if word != "at" {
        return Err(scan.error(format!("unknown nattrans directive `{word}` (expected at)")));
    }
    let obj = scan.ident("an object")?.to_string();
    scan.expect(":")?;
    let mor = scan.ident("the component morphism")?.to_string();
    scan.finish()?;
    if block.components.iter().any(|(o, _)| *o == obj) {
        return Err(scan.dup(&format!("component at `{obj}`")));
    }
    block.components.push((obj, mor));
    Ok(())
}

fn named_ref(scan: &mut Scan, slot: &mut String, what: &str) -> Result<(), Diagnostic> {
    scan.expect(":")?;
    let name = scan.ident(what)?.to_string();
    scan.finish()?;
    if !slot.is_empty() {
        return Err(scan.dup(what));
    }
    *slot = name;
    Ok(())
}

fn adjunction_directive(scan: &mut Scan, block: &mut AdjunctionBlock) -> Result<(), Diagnostic> {
    let word = scan.ident("an adjunction directive")?;
    match word {
        "left" => named_ref(scan, &mut block.left, "the left functor"),
        "right" => named_ref(scan, &mut block.right, "the right functor"),
        "unit" => named_ref(scan, &mut block.unit, "the unit"),
        "counit" => named_ref(scan, &mut block.counit, "the counit"),
        other => Err(scan.error(format!(
            "unknown adjunction directive `{other}` (expected left, right, unit or counit)"
        ))),
    }
}

fn link_directive(scan: &mut Scan, block: &mut LinkBlock) -> Result<(), Diagnostic> {
    let word = scan.ident("a link directive")?;
    match word {
        "up" => named_ref(scan, &mut block.up, "the upward functor"),
        "down" => named_ref(scan, &mut block.down, "the downward functor"),
        other => Err(scan.error(format!("unknown link directive `{other}` (expected up or down)"))),
    }
}

fn opt_ref(scan: &mut Scan, slot: &mut Option<String>, what: &str) -> Result<(), Diagnostic> {
    scan.expect(":")?;
    let name = scan.ident(what)?.to_string();
    scan.finish()?;
    if slot.is_some() {
        return Err(scan.dup(what));
    }
    *slot = Some(name);
    Ok(())
}

fn claim_directive(scan: &mut Scan, block: &mut ClaimBlock) -> Result<(), Diagnostic> {
    let word = scan.ident("a claim directive")?;
    match word {
        "kind" => {
            scan.expect(":")?;
            let k = scan.ident("a claim kind")?;
            block.kind = match k {
                "cycle" => ClaimKind::Cycle,
                "composite" => ClaimKind::Composite,
                "refinement" => ClaimKind::Refinement,
                "realizability" => ClaimKind::Realizability,
                "nested" => ClaimKind::Nested,
                "causal" => ClaimKind::Causal,
                other => return Err(scan.error(format!("unknown claim kind `{other}`"))),
            };
            scan.finish()
        }
        "direction" => {
            scan.expect(":")?;
            let d = scan.ident("compute or predict")?;
            block.direction = Some(match d {
                "compute" => Direction::Compute,
                "predict" => Direction::Predict,
                other => return Err(scan.error(format!("unknown direction `{other}`"))),
            });
            scan.finish()
        }
        "mode" => {
            scan.expect(":")?;
            let m = scan.ident("strict or relaxed")?;
            block.mode = Some(match m {
                "strict" => RealizabilityMode::Strict,
                "relaxed" => RealizabilityMode::Relaxed,
                other => return Err(scan.error(format!("unknown realizability mode `{other}`"))),
            });
            scan.finish()
        }
        "phys" => opt_ref(scan, &mut block.phys, "the physical category"),
        "abs" => opt_ref(scan, &mut block.abs, "the abstract category"),
        "r" => opt_ref(scan, &mut block.r, "the readout functor"),
        "rt" => opt_ref(scan, &mut block.rt, "the implementation functor"),
        "fine" => opt_ref(scan, &mut block.fine, "the finer readout"),
        "coarse" => opt_ref(scan, &mut block.coarse, "the coarser readout"),
        "eta" => opt_ref(scan, &mut block.eta, "the translation"),
        "unit" => opt_ref(scan, &mut block.unit, "the unit"),
        "counit" => opt_ref(scan, &mut block.counit, "the counit"),
        "chain" => {
            scan.expect(":")?;
            let list = scan.ident_list()?;
            scan.finish()?;
            if !block.chain.is_empty() {
                return Err(scan.dup("chain"));
            }
            block.chain = list;
            Ok(())
        }
        "layers" => {
            scan.expect(":")?;
            let list = scan.ident_list()?;
            scan.finish()?;
            if !block.layers.is_empty() {
                return Err(scan.dup("layers"));
            }
            block.layers = list;
            Ok(())
        }
        "links" => {
            scan.expect(":")?;
            let list = scan.ident_list()?;
            scan.finish()?;
            if !block.links.is_empty() {
                return Err(scan.dup("links"));
            }
            block.links = list;
            Ok(())
        }
        other => Err(scan.error(format!("unknown claim directive `{other}`"))),
    }
}

fn audit_directive(scan: &mut Scan, block: &mut AuditBlock) -> Result<(), Diagnostic> {
    let word = scan.ident("an audit directive")?;
    match word {
        "lts" => named_ref(scan, &mut block.lts, "the transition system"),
        "abs" => named_ref(scan, &mut block.abs, "the abstract category"),
        other => {
            Err(scan.error(format!("unknown audit directive `{other}` (expected lts or abs)")))
        }
    }
}

// ---------------------------------------------------------------------------
// Line scanner
// ---------------------------------------------------------------------------

struct Scan<'a> {
    line: &'a str,
    line_no: usize,
    pos: usize,
}

impl<'a> Scan<'a> {
    fn new(line: &'a str, line_no: usize) -> Scan<'a> {
        Scan { line, line_no, pos: 0 }
    }

    fn error(&self, message: String) -> Diagnostic {
        Diagnostic { code: "E001", message, line: self.line_no, col: self.pos + 1 }
    }

    fn dup(&self, what: &str) -> Diagnostic {
        Diagnostic {
            code: "E002",
            message: format!("{what} is declared twice"),
            line: self.line_no,
            col: 1,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.line.len() && self.line.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.line.len()
    }

    fn rest(&self) -> &'a str {
        &self.line[self.pos..]
    }

    /// Identifier: letter or underscore, then letters, digits, underscores.
    fn ident(&mut self, what: &str) -> Result<&'a str, Diagnostic> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.line.as_bytes();
        if start >= bytes.len() || !(bytes[start].is_ascii_alphabetic() || bytes[start] == b'_') {
            return Err(self.error(format!("expected {what}")));
        }
        let mut end = start + 1;
        while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
            end += 1;
        }
        self.pos = end;
        Ok(&self.line[start..end])
    }

    fn try_expect(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), Diagnostic> {
        if self.try_expect(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{tok}`")))
        }
    }

    /// `"text"` with `\"` and `\\` escapes.
    fn quoted(&mut self) -> Result<String, Diagnostic> {
        self.expect("\"")?;
        let bytes = self.line.as_bytes();
        let mut out = String::new();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b'"' => {
                    self.pos += 1;
                    return Ok(out);
                }
                b'\\' => {
                    self.pos += 1;
                    match bytes.get(self.pos) {
                        Some(b'"') => out.push('"'),
                        Some(b'\\') => out.push('\\'),
                        _ => return Err(self.error("unsupported escape in string".into())),
                    }
                    self.pos += 1;
                }
                _ => {
                    let ch_start = self.pos;
                    let mut ch_end = ch_start + 1;
                    while ch_end < bytes.len() && !self.line.is_char_boundary(ch_end) {
                        ch_end += 1;
                    }
                    out.push_str(&self.line[ch_start..ch_end]);
                    self.pos = ch_end;
                }
            }
        }
        Err(self.error("unterminated string".into()))
    }

    /// Comma-separated identifiers (at least one).
    fn ident_list(&mut self) -> Result<Vec<String>, Diagnostic> {
        let mut out = vec![self.ident("an identifier")?.to_string()];
        while self.try_expect(",") {
            out.push(self.ident("an identifier")?.to_string());
        }
        Ok(out)
    }

    /// `<id>: <dom> -> <cod> [label="..."]` — the keyword was consumed.
    fn arrow_line(&mut self) -> Result<ArrowLine, Diagnostic> {
        let id = self.ident("an arrow id")?.to_string();
        self.expect(":")?;
        let dom = self.ident("the source")?.to_string();
        self.expect("->")?;
        let cod = self.ident("the target")?.to_string();
        let label = if self.try_expect("[") {
            self.expect("label")?;
            self.expect("=")?;
            let text = self.quoted()?;
            self.expect("]")?;
            Some(text)
        } else {
            None
        };
        self.finish()?;
        Ok(ArrowLine { id, dom, cod, label })
    }

    /// Rejects trailing garbage.
    fn finish(&mut self) -> Result<(), Diagnostic> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected trailing input `{}`", self.rest().trim_end())))
        }
    }
}
