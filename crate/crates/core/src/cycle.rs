//! Verification of computation claims.
//!
//! A [`CycleClaim`] pairs a physical category with an abstract one via a
//! readout functor `r` and an implementation functor `rt` running the other
//! way.  The claim *computes* when both are lawful functors and mutually
//! inverse; everything else here is built on that: predict cycles scan the
//! abstract side first, composite and nested claims chain cycles through
//! intermediate categories, refinement relates two readouts by a natural
//! transformation, relaxed realizability weakens inversion to an adjunction,
//! and the causal/counterfactual checks test that the readout tracks what
//! the machine actually does.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::adjunction::{check_adjunction, find_unit_counit, Adjunction};
use crate::category::{FinCategory, Law, Violation};
use crate::error::{Error, Limits, Result};
use crate::functor::{check_functor_laws, check_inverse_pair, compose_functors, Functor, Variance};
use crate::nattrans::{check_naturality, enumerate_nat_trans, NatTrans};

/// Which way a claim is exercised: reading computation off a physical
/// process, or predicting physical evolution from the abstract theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Compute,
    Predict,
}

/// The verification stage at which a claim first failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    FunctorLaws,
    InversePair,
    Naturality,
    Triangle,
    Causal,
    Counterfactual,
}

impl Stage {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stage::FunctorLaws => "FUNCTOR_LAWS",
            Stage::InversePair => "INVERSE_PAIR",
            Stage::Naturality => "NATURALITY",
            Stage::Triangle => "TRIANGLE",
            Stage::Causal => "CAUSAL",
            Stage::Counterfactual => "COUNTERFACTUAL",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Stage {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// A claim that a physical system computes an abstract process: a readout
/// `r` from the physical category into the abstract one, and an
/// implementation `rt` the other way.
#[derive(Debug, Clone)]
pub struct CycleClaim {
    phys: Arc<FinCategory>,
    abs: Arc<FinCategory>,
    r: Functor,
    rt: Functor,
}

impl CycleClaim {
    /// Wires up a claim, rejecting functors that do not run between the two
    /// given categories in opposite directions.  Laws are *not* checked
    /// here — that is what verification is for.
    pub fn new(
        phys: Arc<FinCategory>,
        abs: Arc<FinCategory>,
        r: Functor,
        rt: Functor,
    ) -> Result<CycleClaim> {
        for (name, f, want_src, want_dst) in [("r", &r, &phys, &abs), ("rt", &rt, &abs, &phys)] {
            if f.src() != want_src {
                return Err(Error::IllTypedClaim {
                    detail: format!("functor `{name}` does not start at the declared category"),
                });
            }
            if f.dst() != want_dst {
                return Err(Error::IllTypedClaim {
                    detail: format!("functor `{name}` does not land in the declared category"),
                });
            }
        }
        Ok(CycleClaim { phys, abs, r, rt })
    }

    pub fn phys(&self) -> &Arc<FinCategory> {
        &self.phys
    }

    pub fn abs(&self) -> &Arc<FinCategory> {
        &self.abs
    }

    pub fn r(&self) -> &Functor {
        &self.r
    }

    pub fn rt(&self) -> &Functor {
        &self.rt
    }
}

/// Outcome of verifying one claim: pass, or the first failing stage with its
/// witnesses.  `counterexample_count` is the number of witnesses recorded;
/// when `truncated` is set the scan stopped at the witness cap and more
/// exist.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub stage: Option<Stage>,
    pub witnesses: Vec<Violation>,
    pub counterexample_count: usize,
    pub truncated: bool,
}

impl Verdict {
    fn pass() -> Verdict {
        Verdict {
            ok: true,
            stage: None,
            witnesses: Vec::new(),
            counterexample_count: 0,
            truncated: false,
        }
    }

    fn fail(stage: Stage, witnesses: Vec<Violation>, truncated: bool) -> Verdict {
        Verdict {
            ok: false,
            stage: Some(stage),
            counterexample_count: witnesses.len(),
            witnesses,
            truncated,
        }
    }

    /// Failure without a stage: a decisive negative search result (no
    /// candidate exists), which has no pointable witness.
    fn absent() -> Verdict {
        Verdict {
            ok: false,
            stage: None,
            witnesses: Vec::new(),
            counterexample_count: 0,
            truncated: false,
        }
    }
}

fn cap_witnesses(
    mut witnesses: Vec<Violation>,
    limits: Limits,
    already_truncated: bool,
) -> (Vec<Violation>, bool) {
    let truncated = already_truncated || witnesses.len() > limits.max_witnesses;
    witnesses.truncate(limits.max_witnesses);
    (witnesses, truncated)
}

fn verdict_from_pair(
    pair: crate::functor::InversePairReport,
    limits: Limits,
    swap_sides: bool,
) -> Verdict {
    if !pair.r_laws.ok || !pair.rt_laws.ok {
        let truncated = pair.r_laws.truncated || pair.rt_laws.truncated;
        let mut witnesses = pair.r_laws.violations;
        witnesses.extend(pair.rt_laws.violations);
        let (witnesses, truncated) = cap_witnesses(witnesses, limits, truncated);
        return Verdict::fail(Stage::FunctorLaws, witnesses, truncated);
    }
    if !pair.left_identity_ok || !pair.right_identity_ok {
        let mut witnesses = pair.witnesses;
        if swap_sides {
            for w in &mut witnesses {
                if let Some(side) = w.subjects.first_mut() {
                    *side = match side.as_str() {
                        "rt∘r" => "r∘rt".into(),
                        "r∘rt" => "rt∘r".into(),
                        other => other.into(),
                    };
                }
            }
        }
        return Verdict::fail(Stage::InversePair, witnesses, pair.truncated);
    }
    Verdict::pass()
}

/// Verifies a compute cycle: `r` and `rt` are lawful functors and strict
/// two-sided inverses.  Scans the physical side first.
pub fn check_compute_cycle(claim: &CycleClaim, limits: Limits) -> Verdict {
    let pair = check_inverse_pair(&claim.r, &claim.rt, limits)
        .expect("claim wiring was validated at construction");
    verdict_from_pair(pair, limits, false)
}

/// Verifies a predict cycle: the same inversion conditions, but scanned from
/// the abstract side first (encode, evolve, read back).  Witness sides are
/// reported in the claim's own vocabulary: `rt∘r` acts on the physical
/// category, `r∘rt` on the abstract one.
pub fn check_predict_cycle(claim: &CycleClaim, limits: Limits) -> Verdict {
    let pair = check_inverse_pair(&claim.rt, &claim.r, limits)
        .expect("claim wiring was validated at construction");
    verdict_from_pair(pair, limits, true)
}

/// Verifies a claim in the given direction.
pub fn check_cycle(claim: &CycleClaim, direction: Direction, limits: Limits) -> Verdict {
    match direction {
        Direction::Compute => check_compute_cycle(claim, limits),
        Direction::Predict => check_predict_cycle(claim, limits),
    }
}

/// Composes two claims whose categories meet in the middle (the first
/// claim's abstract category is the second's physical one).
pub fn compose_claims(first: &CycleClaim, second: &CycleClaim) -> Result<CycleClaim> {
    if first.abs != second.phys {
        return Err(Error::LayerMismatch {
            detail:
                "the first claim's abstract category is not the second claim's physical category"
                    .into(),
        });
    }
    CycleClaim::new(
        Arc::clone(&first.phys),
        Arc::clone(&second.abs),
        compose_functors(&first.r, &second.r)?,
        compose_functors(&second.rt, &first.rt)?,
    )
}

/// Verifies a chain of claims end to end: each link's abstract category must
/// be the next link's physical category; the chain collapses into one
/// composite claim which is then checked as a compute cycle.
pub fn check_composite_cycle(claims: &[CycleClaim], limits: Limits) -> Result<Verdict> {
    let (first, rest) = claims.split_first().ok_or_else(|| Error::IllTypedClaim {
        detail: "a composite claim needs at least one link".into(),
    })?;
    let mut composite = first.clone();
    for claim in rest {
        composite = compose_claims(&composite, claim)?;
    }
    Ok(check_compute_cycle(&composite, limits))
}

/// Outcome of a refinement check between two parallel readouts.
#[derive(Debug, Clone)]
pub struct RefinementReport {
    pub ok: bool,
    /// The translation that exhibits the refinement (supplied or found).
    pub eta: Option<NatTrans>,
    pub witnesses: Vec<Violation>,
    pub truncated: bool,
}

/// Checks that `fine` refines `coarse`: a natural transformation translates
/// the finer readout into the coarser one, componentwise and commuting with
/// every dynamic step.
///
/// With `eta` supplied, its naturality is verified (failures carry
/// [`Law::Naturality`] witnesses).  Without it, the full space of candidate
/// transformations is searched: an empty result is a decisive "no refinement
/// exists", not an error.
pub fn check_refinement(
    fine: &Functor,
    coarse: &Functor,
    eta: Option<&NatTrans>,
    limits: Limits,
) -> Result<RefinementReport> {
    if fine.src() != coarse.src() || fine.dst() != coarse.dst() {
        return Err(Error::NotParallel {
            detail: "refinement relates two readouts of the same physical category into the same abstract one"
                .into(),
        });
    }
    match eta {
        Some(eta) => {
            if eta.source_functor() != fine || eta.target_functor() != coarse {
                return Err(Error::IllTypedClaim {
                    detail: "the supplied translation does not run from the finer readout to the coarser one"
                        .into(),
                });
            }
            let report = check_naturality(eta, limits);
            Ok(RefinementReport {
                ok: report.ok,
                eta: Some(eta.clone()),
                witnesses: report.violations,
                truncated: report.truncated,
            })
        }
        None => {
            let found = enumerate_nat_trans(fine, coarse, limits)?;
            Ok(RefinementReport {
                ok: !found.is_empty(),
                eta: found.into_iter().next(),
                witnesses: Vec::new(),
                truncated: false,
            })
        }
    }
}

/// How strong a realizability claim is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RealizabilityMode {
    /// The realization must be a strict compute cycle.
    Strict,
    /// The readout and implementation need only be adjoint: round trips may
    /// land in a systematically translated presentation instead of on the
    /// nose.
    Relaxed,
}

/// Outcome of a realizability check.
#[derive(Debug, Clone)]
pub struct RealizabilityReport {
    pub mode: RealizabilityMode,
    pub ok: bool,
    pub verdict: Verdict,
    /// In relaxed mode, the adjunction exhibiting the realization.
    pub adjunction: Option<Adjunction>,
}

/// Checks that the claimed physical system realizes the abstract process,
/// strictly or up to adjunction.
///
/// In relaxed mode a unit/counit pair may be supplied (both or neither);
/// otherwise the space of candidates is searched.  A completed search with
/// no hit is a decisive failure; running out of candidate budget mid-search
/// is [`Error::NoUnitCounitFound`], because nothing was proved either way.
pub fn check_multiple_realizability(
    claim: &CycleClaim,
    mode: RealizabilityMode,
    unit_counit: Option<(NatTrans, NatTrans)>,
    limits: Limits,
) -> Result<RealizabilityReport> {
    match mode {
        RealizabilityMode::Strict => {
            if unit_counit.is_some() {
                return Err(Error::IllTypedClaim {
                    detail: "a strict realizability claim takes no unit/counit".into(),
                });
            }
            let verdict = check_compute_cycle(claim, limits);
            Ok(RealizabilityReport { mode, ok: verdict.ok, verdict, adjunction: None })
        }
        RealizabilityMode::Relaxed => {
            let r_laws = check_functor_laws(&claim.r, limits);
            let rt_laws = check_functor_laws(&claim.rt, limits);
            if !r_laws.ok || !rt_laws.ok {
                let truncated = r_laws.truncated || rt_laws.truncated;
                let mut witnesses = r_laws.violations;
                witnesses.extend(rt_laws.violations);
                let (witnesses, truncated) = cap_witnesses(witnesses, limits, truncated);
                let verdict = Verdict::fail(Stage::FunctorLaws, witnesses, truncated);
                return Ok(RealizabilityReport { mode, ok: false, verdict, adjunction: None });
            }
            let adj = match unit_counit {
                Some((unit, counit)) => {
                    Adjunction::new(claim.r.clone(), claim.rt.clone(), unit, counit)?
                }
                None => match find_unit_counit(&claim.r, &claim.rt, limits) {
                    Ok(Some((unit, counit))) => {
                        Adjunction::new(claim.r.clone(), claim.rt.clone(), unit, counit)?
                    }
                    Ok(None) => {
                        return Ok(RealizabilityReport {
                            mode,
                            ok: false,
                            verdict: Verdict::absent(),
                            adjunction: None,
                        })
                    }
                    Err(Error::BudgetExceeded { budget, context }) => {
                        return Err(Error::NoUnitCounitFound {
                            context: format!(
                                "candidate budget of {budget} exhausted while {context}"
                            ),
                        })
                    }
                    Err(other) => return Err(other),
                },
            };
            let report = check_adjunction(&adj, limits);
            let verdict = if report.ok {
                Verdict::pass()
            } else {
                let stage = match report.violations.first().map(|v| v.law) {
                    Some(Law::Triangle) => Stage::Triangle,
                    _ => Stage::Naturality,
                };
                Verdict::fail(stage, report.violations, report.truncated)
            };
            Ok(RealizabilityReport { mode, ok: verdict.ok, verdict, adjunction: Some(adj) })
        }
    }
}

/// Glue between consecutive layers of a nested claim: an invertible change
/// of presentation from one layer's abstract category to the next layer's
/// physical one.
#[derive(Debug, Clone)]
pub struct LayerLink {
    pub up: Functor,
    pub down: Functor,
}

impl LayerLink {
    /// The trivial link for layers that share a category.
    pub fn identity(cat: &Arc<FinCategory>) -> LayerLink {
        LayerLink { up: Functor::identity(cat), down: Functor::identity(cat) }
    }
}

/// A tower of claims, each one's abstract category feeding the next one's
/// physical category through a link.
#[derive(Debug, Clone)]
pub struct NestedClaim {
    pub layers: Vec<CycleClaim>,
    pub links: Vec<LayerLink>,
}

/// Outcome of verifying a nested claim: each layer, each link, and the
/// composed end-to-end cycle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NestedReport {
    pub ok: bool,
    pub layers: Vec<Verdict>,
    pub links: Vec<Verdict>,
    pub composite: Verdict,
}

/// Verifies a nested claim.
///
/// Wiring errors (wrong link endpoints, contravariant links, a missing
/// link) are [`Error::LayerMismatch`]; behavioral failures land in the
/// per-layer, per-link and composite verdicts.
pub fn check_nested(nested: &NestedClaim, limits: Limits) -> Result<NestedReport> {
    if nested.layers.is_empty() {
        return Err(Error::LayerMismatch {
            detail: "a nested claim needs at least one layer".into(),
        });
    }
    if nested.links.len() + 1 != nested.layers.len() {
        return Err(Error::LayerMismatch {
            detail: format!(
                "{} layers need {} links, got {}",
                nested.layers.len(),
                nested.layers.len() - 1,
                nested.links.len()
            ),
        });
    }
    let mut link_claims = Vec::new();
    for (i, link) in nested.links.iter().enumerate() {
        let lower = &nested.layers[i];
        let upper = &nested.layers[i + 1];
        if link.up.variance() != Variance::Covariant || link.down.variance() != Variance::Covariant
        {
            return Err(Error::LayerMismatch {
                detail: format!("link {i} must be covariant in both directions"),
            });
        }
        if link.up.src() != &lower.abs || link.up.dst() != &upper.phys {
            return Err(Error::LayerMismatch {
                detail: format!(
                    "link {i} must go from layer {i}'s abstract category to layer {}'s physical category",
                    i + 1
                ),
            });
        }
        if link.down.src() != &upper.phys || link.down.dst() != &lower.abs {
            return Err(Error::LayerMismatch {
                detail: format!(
                    "link {i} must come back from layer {}'s physical category to layer {i}'s abstract category",
                    i + 1
                ),
            });
        }
        link_claims.push(CycleClaim::new(
            Arc::clone(&lower.abs),
            Arc::clone(&upper.phys),
            link.up.clone(),
            link.down.clone(),
        )?);
    }

    let layers: Vec<Verdict> =
        nested.layers.iter().map(|c| check_compute_cycle(c, limits)).collect();
    let links: Vec<Verdict> = link_claims.iter().map(|c| check_compute_cycle(c, limits)).collect();

    let mut composite = nested.layers[0].clone();
    for (link_claim, layer) in link_claims.iter().zip(&nested.layers[1..]) {
        composite = compose_claims(&composite, link_claim)?;
        composite = compose_claims(&composite, layer)?;
    }
    let composite = check_compute_cycle(&composite, limits);

    let ok = layers.iter().all(|v| v.ok) && links.iter().all(|v| v.ok) && composite.ok;
    Ok(NestedReport { ok, layers, links, composite })
}

/// Checks the causal and counterfactual support of a claim's readout.
///
/// *Causal*: every non-identity abstract morphism must be the reading of at
/// least one physical morphism — an abstract step nothing physical performs
/// has no cause.  *Counterfactual*: any two physical states with the same
/// reading must offer the same set of abstract successor readings over their
/// non-identity out-morphisms — otherwise the readout smuggles in outcome
/// information the dynamics do not carry.  The causal scan runs first; the
/// counterfactual scan only runs on a causally sound claim.
pub fn check_causal_counterfactual(claim: &CycleClaim, limits: Limits) -> Verdict {
    let phys = &claim.phys;
    let abs = &claim.abs;
    let r = &claim.r;

    let mut realized = vec![false; abs.mor_count()];
    for m in 0..phys.mor_count() as u32 {
        realized[r.mor_image_ix(m) as usize] = true;
    }
    let mut witnesses = Vec::new();
    let mut truncated = false;
    for u in 0..abs.mor_count() as u32 {
        if !abs.is_identity_ix(u) && !realized[u as usize] {
            if witnesses.len() == limits.max_witnesses {
                truncated = true;
                break;
            }
            witnesses.push(Violation {
                law: Law::Causal,
                subjects: vec![abs.mor_name(u).to_string()],
                detail: format!(
                    "no physical morphism is read as `{}`; the abstract step has no physical cause",
                    abs.mor_name(u)
                ),
            });
        }
    }
    if !witnesses.is_empty() {
        return Verdict::fail(Stage::Causal, witnesses, truncated);
    }

    let mut classes: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for p in 0..phys.obj_count() as u32 {
        classes.entry(r.obj_image_ix(p)).or_default().push(p);
    }
    let successors = |p: u32| -> BTreeSet<u32> {
        phys.by_dom_ix(p)
            .iter()
            .filter(|m| !phys.is_identity_ix(**m))
            .map(|m| r.obj_image_ix(phys.cod_ix(*m)))
            .collect()
    };
    'outer: for members in classes.values() {
        let (first, rest) = match members.split_first() {
            Some(split) if !split.1.is_empty() => split,
            _ => continue,
        };
        let reference = successors(*first);
        for p in rest {
            let got = successors(*p);
            if got != reference {
                if witnesses.len() == limits.max_witnesses {
                    truncated = true;
                    break 'outer;
                }
                let render = |set: &BTreeSet<u32>| {
                    let names: Vec<String> =
                        set.iter().map(|o| abs.obj_name(*o).to_string()).collect();
                    format!("{{{}}}", names.join(", "))
                };
                witnesses.push(Violation {
                    law: Law::Counterfactual,
                    subjects: vec![
                        phys.obj_name(*first).to_string(),
                        phys.obj_name(*p).to_string(),
                    ],
                    detail: format!(
                        "both read as `{}`, but their abstract successor readings differ: {} vs {}",
                        abs.obj_name(r.obj_image_ix(*first)),
                        render(&reference),
                        render(&got)
                    ),
                });
            }
        }
    }
    if witnesses.is_empty() {
        Verdict::pass()
    } else {
        Verdict::fail(Stage::Counterfactual, witnesses, truncated)
    }
}
