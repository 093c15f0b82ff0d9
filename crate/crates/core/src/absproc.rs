//! Builder for abstract computation categories: data types as objects,
//! programs as morphisms, with an optional null object.
//!
//! The builder auto-fills everything forced by the axioms — identity
//! absorptions and, when the null object is present, the null-threading
//! composites (`from_null` after a program, a program into `into_null`, and
//! round trips through null).  A composite through null (`into_null_t` then
//! `from_null_u`) is only auto-filled when exactly one morphism `t -> u`
//! exists; otherwise the choice is genuinely free and must be declared.  Any
//! composable pair still missing after auto-fill makes the table unclosed,
//! and construction fails listing the gaps rather than guessing.

use std::collections::BTreeMap;

use crate::category::{CategoryDecl, CompDecl, FinCategory, MorDecl};
use crate::error::{Error, Result};

/// The null object's reserved name.
pub const NULL_OBJECT: &str = "null";

/// One program declaration: a named morphism from its input type to its
/// output type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramDecl {
    pub name: String,
    pub input: String,
    pub output: String,
}

impl ProgramDecl {
    pub fn new(
        name: impl Into<String>,
        input: impl Into<String>,
        output: impl Into<String>,
    ) -> Self {
        ProgramDecl { name: name.into(), input: input.into(), output: output.into() }
    }
}

/// Builds the computation category over `types` and `programs`.
///
/// `composites` are the caller's composition facts; they always win over
/// auto-fill.  With `include_null`, a `null` object is adjoined with exactly
/// one arrow to (`from_null_<t>`) and from (`into_null_<t>`) every type.
pub fn build_comp_category(
    types: &[impl AsRef<str>],
    programs: &[ProgramDecl],
    composites: &[CompDecl],
    include_null: bool,
) -> Result<FinCategory> {
    let mut objects: Vec<String> = types.iter().map(|t| t.as_ref().to_string()).collect();
    if include_null {
        objects.push(NULL_OBJECT.into());
    }
    for (i, o) in objects.iter().enumerate() {
        if objects[..i].contains(o) {
            return Err(Error::DuplicateId { id: o.clone(), context: "objects".into() });
        }
    }

    // name -> (dom, cod), insertion also guards against collisions between
    // program names and the generated identity / null-arrow names.
    let mut endpoints: BTreeMap<String, (String, String)> = BTreeMap::new();
    let mut insert = |name: String, dom: String, cod: String| -> Result<()> {
        if endpoints.insert(name.clone(), (dom, cod)).is_some() {
            return Err(Error::DuplicateId { id: name, context: "morphisms".into() });
        }
        Ok(())
    };
    for o in &objects {
        insert(format!("id_{o}"), o.clone(), o.clone())?;
    }
    for p in programs {
        for end in [&p.input, &p.output] {
            if !objects.contains(end) {
                return Err(Error::DanglingReference {
                    id: end.clone(),
                    context: format!("endpoint of program `{}`", p.name),
                });
            }
        }
        insert(p.name.clone(), p.input.clone(), p.output.clone())?;
    }
    if include_null {
        for t in types {
            let t = t.as_ref();
            insert(format!("from_null_{t}"), NULL_OBJECT.into(), t.into())?;
            insert(format!("into_null_{t}"), t.into(), NULL_OBJECT.into())?;
        }
    }

    let mut table: BTreeMap<(String, String), String> = BTreeMap::new();
    for c in composites {
        if table.insert((c.first.clone(), c.then.clone()), c.result.clone()).is_some() {
            return Err(Error::DuplicateId {
                id: format!("({}, {})", c.first, c.then),
                context: "composition table".into(),
            });
        }
    }
    let mut fill = |first: String, then: String, result: String| {
        table.entry((first, then)).or_insert(result);
    };
    // Identity absorptions.
    for (name, (dom, cod)) in &endpoints {
        fill(format!("id_{dom}"), name.clone(), name.clone());
        fill(name.clone(), format!("id_{cod}"), name.clone());
    }
    if include_null {
        for t in types.iter().map(AsRef::as_ref) {
            // Threading a program after materializing from null, or into
            // null after a program, stays a null arrow.
            for p in programs {
                if p.input == t {
                    fill(
                        format!("from_null_{t}"),
                        p.name.clone(),
                        format!("from_null_{}", p.output),
                    );
                    fill(
                        p.name.clone(),
                        format!("into_null_{}", p.output),
                        format!("into_null_{t}"),
                    );
                }
            }
            fill(format!("from_null_{t}"), format!("into_null_{t}"), format!("id_{NULL_OBJECT}"));
            // Round trips *through* null: forced only when the hom-set at
            // the other end is a singleton.
            for u in types.iter().map(AsRef::as_ref) {
                let mut hom: Vec<&str> = programs
                    .iter()
                    .filter(|p| p.input == t && p.output == u)
                    .map(|p| p.name.as_str())
                    .collect();
                let id_t = format!("id_{t}");
                if t == u {
                    hom.push(&id_t);
                }
                if let [only] = hom[..] {
                    fill(format!("into_null_{t}"), format!("from_null_{u}"), only.to_string());
                }
            }
        }
    }

    // Closure audit before handing the table to the category constructor.
    let mut missing: Vec<(String, String)> = Vec::new();
    for (f, (_, f_cod)) in &endpoints {
        for (g, (g_dom, _)) in &endpoints {
            if f_cod == g_dom && !table.contains_key(&(f.clone(), g.clone())) {
                missing.push((f.clone(), g.clone()));
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::UnclosedTable { missing });
    }

    let decl = CategoryDecl {
        objects,
        morphisms: programs
            .iter()
            .map(|p| MorDecl::new(&p.name, &p.input, &p.output).labelled("program"))
            .chain(types.iter().flat_map(|t| {
                let t = t.as_ref();
                include_null
                    .then(|| {
                        [
                            MorDecl::new(format!("from_null_{t}"), NULL_OBJECT, t),
                            MorDecl::new(format!("into_null_{t}"), t, NULL_OBJECT),
                        ]
                    })
                    .into_iter()
                    .flatten()
            }))
            .collect(),
        comp: table
            .into_iter()
            .map(|((first, then), result)| CompDecl { first, then, result })
            .collect(),
        null_object: include_null.then(|| NULL_OBJECT.to_string()),
        ..Default::default()
    }
    .with_default_identities();
    FinCategory::new(decl)
}
