//! Brute-force audit contrasting the simple mapping account with the
//! functorial one.
//!
//! The simple account blesses any assignment of abstract objects to machine
//! states under which every transition is mirrored by *some* abstract
//! morphism.  The functorial account demands a readout/implementation pair
//! of lawful functors that are mutually inverse.  This module counts both
//! populations exhaustively over the same physical system and abstract
//! category, so the gap between the two criteria is a number, not a slogan.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::FinCategory;
use crate::error::{Error, Limits, Result};
use crate::functor::{check_inverse_pair, enumerate_functors, Functor};
use crate::lts::{lts_to_category, LtsMode, TransitionSystem};

/// Counts and exemplars from one audit run.
#[derive(Debug, Clone)]
pub struct AuditReport {
    /// State maps the simple mapping account accepts.
    pub n_simple: u64,
    /// Readout/implementation functor pairs that form a strict cycle.
    pub n_functorial: u64,
    /// First few accepted state maps, in enumeration order (state -> object).
    pub simple_samples: Vec<BTreeMap<String, String>>,
    /// First few accepted functor pairs, in enumeration order.
    pub functorial_samples: Vec<(Functor, Functor)>,
}

impl AuditReport {
    /// The functorial account accepts strictly fewer candidates here.
    pub fn strictly_more_demanding(&self) -> bool {
        self.n_functorial < self.n_simple
    }
}

/// Runs the audit: enumerates every simple state map and every inverse
/// functor pair between the system's free category and `abs`.
///
/// Each of the three searches (state maps, forward functors, backward
/// functors) gets `limits.max_candidates` of budget, as does the pairing
/// pass; sample lists are capped at `limits.max_witnesses`.  The transition
/// graph must be acyclic, since the functorial side needs its free category.
pub fn audit_simple_mappings(
    ts: &TransitionSystem,
    abs: &Arc<FinCategory>,
    limits: Limits,
) -> Result<AuditReport> {
    let phys = Arc::new(lts_to_category(ts, LtsMode::FreeAcyclic)?);

    // Deterministic enumeration order: sorted state names against sorted
    // object names.
    let mut states: Vec<&str> = ts.states.iter().map(|s| s.as_str()).collect();
    states.sort_unstable();
    let mut objects: Vec<&str> = abs.objects().iter().map(|o| o.as_str()).collect();
    objects.sort_unstable();

    // mirrored[a][b]: some morphism a -> b exists in `abs`.
    let nobj = abs.obj_count();
    let mut mirrored = vec![false; nobj * nobj];
    for (pos, name) in objects.iter().enumerate() {
        let a = abs.obj_ix(name).expect("sorted object exists");
        for m in abs.by_dom_ix(a) {
            mirrored[pos * nobj + sorted_pos(&objects, abs, abs.cod_ix(*m))] = true;
        }
    }
    // Transitions as (source position, target position) into the sorted
    // state list.
    let pos_of = |s: &str| states.binary_search(&s).expect("validated state");
    let edges: Vec<(usize, usize)> =
        ts.transitions.iter().map(|t| (pos_of(&t.source), pos_of(&t.target))).collect();

    let mut n_simple: u64 = 0;
    let mut simple_samples = Vec::new();
    if nobj == 0 {
        if !states.is_empty() {
            // No assignment exists into an empty category.
        } else {
            n_simple = 1;
            simple_samples.push(BTreeMap::new());
        }
    } else {
        let mut assignment = vec![0usize; states.len()];
        let mut examined: u64 = 0;
        loop {
            examined += 1;
            if examined > limits.max_candidates {
                return Err(Error::BudgetExceeded {
                    budget: limits.max_candidates,
                    context: "simple state-map enumeration".into(),
                });
            }
            if edges.iter().all(|(s, t)| mirrored[assignment[*s] * nobj + assignment[*t]]) {
                n_simple += 1;
                if simple_samples.len() < limits.max_witnesses {
                    simple_samples.push(
                        states
                            .iter()
                            .zip(&assignment)
                            .map(|(s, o)| (s.to_string(), objects[*o].to_string()))
                            .collect(),
                    );
                }
            }
            // Lexicographic odometer.
            let mut i = states.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                assignment[i] += 1;
                if assignment[i] < nobj {
                    break;
                }
                assignment[i] = 0;
            }
            if assignment.iter().all(|a| *a == 0) {
                break;
            }
        }
    }

    let forward = enumerate_functors(&phys, abs, limits)?;
    let backward = enumerate_functors(abs, &phys, limits)?;
    let mut n_functorial: u64 = 0;
    let mut functorial_samples = Vec::new();
    let mut examined: u64 = 0;
    for r in &forward {
        for rt in &backward {
            examined += 1;
            if examined > limits.max_candidates {
                return Err(Error::BudgetExceeded {
                    budget: limits.max_candidates,
                    context: "inverse-pair search over enumerated functors".into(),
                });
            }
            if check_inverse_pair(r, rt, Limits::first_witness())?.ok() {
                n_functorial += 1;
                if functorial_samples.len() < limits.max_witnesses {
                    functorial_samples.push((r.clone(), rt.clone()));
                }
            }
        }
    }

    Ok(AuditReport { n_simple, n_functorial, simple_samples, functorial_samples })
}

fn sorted_pos(objects: &[&str], abs: &FinCategory, obj: u32) -> usize {
    objects.binary_search(&abs.obj_name(obj).as_str()).expect("object present in sorted list")
}
