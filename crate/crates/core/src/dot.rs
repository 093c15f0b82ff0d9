//! Graphviz DOT rendering for categories, claims and transformations.
//!
//! Output is deterministic (carrier order, fixed styling) so renders can be
//! frozen as goldens.  Identity morphisms are omitted everywhere except
//! when a transformation uses one as a component, in which case it shows up
//! as a highlighted self-loop.

use std::fmt::Write as _;

use crate::category::FinCategory;
use crate::cycle::CycleClaim;
use crate::nattrans::NatTrans;

fn quote(name: &str) -> String {
    let mut out = String::with_capacity(name.len() + 2);
    out.push('"');
    for ch in name.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            other => out.push(other),
        }
    }
    out.push('"');
    out
}

fn edge_label(cat: &FinCategory, mor: &str) -> String {
    match cat.label(mor) {
        Ok(Some(label)) => format!("{mor} ({label})"),
        _ => mor.to_string(),
    }
}

/// Emits the object/morphism body of one category with every node id
/// prefixed, two-space indented at `depth`.
fn category_body(out: &mut String, cat: &FinCategory, prefix: &str, depth: usize) {
    let pad = "  ".repeat(depth);
    for obj in cat.objects() {
        let _ = writeln!(
            out,
            "{pad}{} [label={}];",
            quote(&format!("{prefix}{obj}")),
            quote(obj.as_str())
        );
    }
    for mor in cat.morphisms() {
        if cat.is_identity(mor.as_str()).unwrap_or(false) {
            continue;
        }
        let dom = cat.dom(mor.as_str()).expect("morphism endpoints resolve");
        let cod = cat.cod(mor.as_str()).expect("morphism endpoints resolve");
        let _ = writeln!(
            out,
            "{pad}{} -> {} [label={}];",
            quote(&format!("{prefix}{dom}")),
            quote(&format!("{prefix}{cod}")),
            quote(&edge_label(cat, mor.as_str()))
        );
    }
}

/// Renders one category as a directed graph, identities omitted.
pub fn dot_category(name: &str, cat: &FinCategory) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=ellipse, fontname=\"Helvetica\"];\n");
    out.push_str("  edge [fontname=\"Helvetica\"];\n");
    category_body(&mut out, cat, "", 1);
    out.push_str("}\n");
    out
}

/// Renders a claim as two clusters — the physical category on the left,
/// the abstract one on the right — with the readout drawn as dashed edges
/// and the implementation as dotted edges on the object level.
pub fn dot_claim(name: &str, claim: &CycleClaim) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    out.push_str("  rankdir=LR;\n");
    out.push_str("  compound=true;\n");
    out.push_str("  node [shape=ellipse, fontname=\"Helvetica\"];\n");
    out.push_str("  edge [fontname=\"Helvetica\"];\n");
    out.push_str("  subgraph cluster_phys {\n    label=\"physical\";\n    color=gray60;\n");
    category_body(&mut out, claim.phys(), "phys:", 2);
    out.push_str("  }\n");
    out.push_str("  subgraph cluster_abs {\n    label=\"abstract\";\n    color=gray60;\n");
    category_body(&mut out, claim.abs(), "abs:", 2);
    out.push_str("  }\n");
    for obj in claim.phys().objects() {
        let image = claim.r().obj_image(obj.as_str()).expect("readout is total");
        let _ = writeln!(
            out,
            "  {} -> {} [style=dashed, color=gray40, constraint=false];",
            quote(&format!("phys:{obj}")),
            quote(&format!("abs:{image}"))
        );
    }
    for obj in claim.abs().objects() {
        let image = claim.rt().obj_image(obj.as_str()).expect("implementation is total");
        let _ = writeln!(
            out,
            "  {} -> {} [style=dotted, color=gray40, constraint=false];",
            quote(&format!("abs:{obj}")),
            quote(&format!("phys:{image}"))
        );
    }
    out.push_str("}\n");
    out
}

/// Renders a transformation over its target category: component morphisms
/// are drawn bold, and components that are identities appear as bold
/// self-loops (identities are otherwise omitted).
pub fn dot_nattrans(name: &str, nt: &NatTrans) -> String {
    let cat = nt.source_functor().dst();
    let components: Vec<(String, String)> =
        nt.components().into_iter().map(|(o, m)| (o.to_string(), m.to_string())).collect();
    let highlighted: std::collections::BTreeSet<&str> =
        components.iter().map(|(_, m)| m.as_str()).collect();

    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=ellipse, fontname=\"Helvetica\"];\n");
    out.push_str("  edge [fontname=\"Helvetica\"];\n");
    for obj in cat.objects() {
        let _ = writeln!(out, "  {} [label={}];", quote(obj.as_str()), quote(obj.as_str()));
    }
    for mor in cat.morphisms() {
        let is_component = highlighted.contains(mor.as_str());
        if cat.is_identity(mor.as_str()).unwrap_or(false) && !is_component {
            continue;
        }
        let dom = cat.dom(mor.as_str()).expect("morphism endpoints resolve");
        let cod = cat.cod(mor.as_str()).expect("morphism endpoints resolve");
        let style = if is_component { ", color=black, penwidth=2.0" } else { ", color=gray50" };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{style}];",
            quote(dom.as_str()),
            quote(cod.as_str()),
            quote(&edge_label(cat, mor.as_str()))
        );
    }
    out.push_str("}\n");
    out
}
