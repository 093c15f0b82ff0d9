//! Canonical formatter for specification files.
//!
//! `canonical_format` renders a parsed file back to text in a fixed layout:
//! two-space indent, one blank line between blocks, directives grouped in a
//! fixed order per block kind, declaration order preserved inside each
//! group, and a trailing newline.  Formatting is idempotent: parsing the
//! output and printing it again yields the same text, so goldens stay
//! stable.

use std::fmt::Write as _;

use super::ast::*;

/// Renders a specification file in canonical form.
pub fn canonical_format(spec: &SpecFile) -> String {
    let mut out = String::new();
    for (i, item) in spec.items.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        print_item(&mut out, item);
    }
    out
}

fn print_item(out: &mut String, item: &Item) {
    match &item.kind {
        ItemKind::Category(block) => {
            let _ = writeln!(out, "category {} {{", item.name);
            if !block.objects.is_empty() {
                let _ = writeln!(out, "  objects: {}", block.objects.join(", "));
            }
            if let Some(null) = &block.null_object {
                let _ = writeln!(out, "  null: {null}");
            }
            for (obj, mor) in &block.identities {
                let _ = writeln!(out, "  identity: {obj} = {mor}");
            }
            for m in &block.morphisms {
                print_arrow(out, "mor", m);
            }
            for (f, g, h) in &block.comps {
                let _ = writeln!(out, "  comp {f} . {g} = {h}");
            }
        }
        ItemKind::Quiver(block) => {
            let _ = writeln!(out, "quiver {} {{", item.name);
            if !block.nodes.is_empty() {
                let _ = writeln!(out, "  nodes: {}", block.nodes.join(", "));
            }
            for e in &block.edges {
                print_arrow(out, "edge", e);
            }
        }
        ItemKind::Lts(block) => {
            let _ = writeln!(out, "lts {} {{", item.name);
            if !block.states.is_empty() {
                let _ = writeln!(out, "  states: {}", block.states.join(", "));
            }
            for t in &block.transitions {
                print_arrow(out, "trans", t);
            }
            if let Some(text) = &block.metadata {
                let _ = writeln!(out, "  metadata: {}", quote(text));
            }
        }
        ItemKind::Functor(block) => {
            let _ = writeln!(out, "functor {}: {} -> {} {{", item.name, block.src, block.dst);
            if block.variance == crate::functor::Variance::Contravariant {
                let _ = writeln!(out, "  variance: contravariant");
            }
            if let Some(text) = &block.theory {
                let _ = writeln!(out, "  theory: {}", quote(text));
            }
            for (from, to) in &block.obj_map {
                let _ = writeln!(out, "  obj {from} -> {to}");
            }
            for (from, to) in &block.mor_map {
                let _ = writeln!(out, "  mor {from} -> {to}");
            }
        }
        ItemKind::NatTrans(block) => {
            let _ =
                writeln!(out, "nattrans {}: {} => {} {{", item.name, block.source, block.target);
            for (obj, mor) in &block.components {
                let _ = writeln!(out, "  at {obj}: {mor}");
            }
        }
        ItemKind::Adjunction(block) => {
            let _ = writeln!(out, "adjunction {} {{", item.name);
            let _ = writeln!(out, "  left: {}", block.left);
            let _ = writeln!(out, "  right: {}", block.right);
            let _ = writeln!(out, "  unit: {}", block.unit);
            let _ = writeln!(out, "  counit: {}", block.counit);
        }
        ItemKind::Link(block) => {
            let _ = writeln!(out, "link {} {{", item.name);
            let _ = writeln!(out, "  up: {}", block.up);
            let _ = writeln!(out, "  down: {}", block.down);
        }
        ItemKind::Claim(block) => {
            let _ = writeln!(out, "claim {} {{", item.name);
            let _ = writeln!(out, "  kind: {}", block.kind.as_str());
            if let Some(d) = block.direction {
                let dir = match d {
                    crate::cycle::Direction::Compute => "compute",
                    crate::cycle::Direction::Predict => "predict",
                };
                let _ = writeln!(out, "  direction: {dir}");
            }
            if let Some(m) = block.mode {
                let mode = match m {
                    crate::cycle::RealizabilityMode::Strict => "strict",
                    crate::cycle::RealizabilityMode::Relaxed => "relaxed",
                };
                let _ = writeln!(out, "  mode: {mode}");
            }
            let scalar = [
                ("phys", &block.phys),
                ("abs", &block.abs),
                ("r", &block.r),
                ("rt", &block.rt),
                ("fine", &block.fine),
                ("coarse", &block.coarse),
                ("eta", &block.eta),
                ("unit", &block.unit),
                ("counit", &block.counit),
            ];
            for (key, value) in scalar {
                if let Some(v) = value {
                    let _ = writeln!(out, "  {key}: {v}");
                }
            }
            if !block.chain.is_empty() {
                let _ = writeln!(out, "  chain: {}", block.chain.join(", "));
            }
            if !block.layers.is_empty() {
                let _ = writeln!(out, "  layers: {}", block.layers.join(", "));
            }
            if !block.links.is_empty() {
                let _ = writeln!(out, "  links: {}", block.links.join(", "));
            }
        }
        ItemKind::Audit(block) => {
            let _ = writeln!(out, "audit {} {{", item.name);
            let _ = writeln!(out, "  lts: {}", block.lts);
            let _ = writeln!(out, "  abs: {}", block.abs);
        }
    }
    out.push_str("}\n");
}

fn print_arrow(out: &mut String, keyword: &str, arrow: &ArrowLine) {
    let _ = write!(out, "  {keyword} {}: {} -> {}", arrow.id, arrow.dom, arrow.cod);
    if let Some(label) = &arrow.label {
        let _ = write!(out, " [label={}]", quote(label));
    }
    out.push('\n');
}

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for ch in text.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            other => out.push(other),
        }
    }
    out.push('"');
    out
}
