//! Labelled transition systems and their compilation into categories.
//!
//! A [`TransitionSystem`] is the raw description of a physical process:
//! states and labelled transitions.  It becomes a [`FinCategory`] either
//! freely (states are objects, morphisms are transition *paths* — requires
//! acyclicity) or against an explicitly supplied composition table, which is
//! validated to present the same transition graph.

use crate::category::{free_category, validate_ident, CategoryDecl, EdgeDecl, FinCategory, Quiver};
use crate::error::{Error, Result};

/// One labelled transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionDecl {
    pub id: String,
    pub source: String,
    pub target: String,
    pub label: Option<String>,
}

impl TransitionDecl {
    pub fn new(
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        TransitionDecl { id: id.into(), source: source.into(), target: target.into(), label: None }
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// A finite labelled transition system.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransitionSystem {
    pub states: Vec<String>,
    pub transitions: Vec<TransitionDecl>,
    /// Free-form provenance note (which device, which preparation, ...).
    pub metadata: String,
}

impl TransitionSystem {
    /// Structural validation: well-formed unique identifiers, resolvable
    /// endpoints.
    pub fn validate(&self) -> Result<()> {
        let mut states = std::collections::BTreeSet::new();
        for s in &self.states {
            validate_ident(s, "state id")?;
            if !states.insert(s.as_str()) {
                return Err(Error::DuplicateId { id: s.clone(), context: "states".into() });
            }
        }
        let mut ids = std::collections::BTreeSet::new();
        for t in &self.transitions {
            validate_ident(&t.id, "transition id")?;
            if !ids.insert(t.id.as_str()) {
                return Err(Error::DuplicateId { id: t.id.clone(), context: "transitions".into() });
            }
            for (end, what) in [(&t.source, "source"), (&t.target, "target")] {
                if !states.contains(end.as_str()) {
                    return Err(Error::DanglingReference {
                        id: end.clone(),
                        context: format!("{what} of transition `{}`", t.id),
                    });
                }
            }
        }
        Ok(())
    }

    /// The underlying directed multigraph.
    pub fn to_quiver(&self) -> Quiver {
        Quiver {
            nodes: self.states.clone(),
            edges: self
                .transitions
                .iter()
                .map(|t| EdgeDecl {
                    id: t.id.clone(),
                    source: t.source.clone(),
                    target: t.target.clone(),
                    label: t.label.clone(),
                })
                .collect(),
        }
    }
}

/// How to compile a transition system into a category.
#[derive(Debug, Clone)]
pub enum LtsMode {
    /// Free path category; the transition graph must be acyclic.
    FreeAcyclic,
    /// The caller supplies the full category (identities, composites, table);
    /// it is validated against the transition graph before construction.
    ExplicitTable(CategoryDecl),
}

/// Compiles a transition system into a finite category.
///
/// In [`LtsMode::ExplicitTable`], the declaration must have exactly the
/// states as objects and must contain every transition as a morphism with
/// the same endpoints; anything else is a [`Error::TableMismatch`].  Extra
/// morphisms (identities, composites) are expected — they are what closes
/// the table.
pub fn lts_to_category(ts: &TransitionSystem, mode: LtsMode) -> Result<FinCategory> {
    ts.validate()?;
    match mode {
        LtsMode::FreeAcyclic => free_category(&ts.to_quiver()),
        LtsMode::ExplicitTable(decl) => {
            let declared: std::collections::BTreeSet<&str> =
                decl.objects.iter().map(|s| s.as_str()).collect();
            let states: std::collections::BTreeSet<&str> =
                ts.states.iter().map(|s| s.as_str()).collect();
            if declared != states {
                let missing: Vec<&&str> = states.difference(&declared).collect();
                let extra: Vec<&&str> = declared.difference(&states).collect();
                return Err(Error::TableMismatch {
                    detail: format!(
                        "objects do not match states (missing: {missing:?}, extra: {extra:?})"
                    ),
                });
            }
            for t in &ts.transitions {
                match decl.morphisms.iter().find(|m| m.id == t.id) {
                    None => {
                        return Err(Error::TableMismatch {
                            detail: format!("transition `{}` is not declared as a morphism", t.id),
                        })
                    }
                    Some(m) if m.dom != t.source || m.cod != t.target => {
                        return Err(Error::TableMismatch {
                            detail: format!(
                                "morphism `{}` has endpoints {} -> {}, but the transition runs {} -> {}",
                                t.id, m.dom, m.cod, t.source, t.target
                            ),
                        })
                    }
                    Some(_) => {}
                }
            }
            FinCategory::new(decl)
        }
    }
}
