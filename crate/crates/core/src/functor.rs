//! Functors between finite categories, their laws, and brute-force
//! enumeration.
//!
//! A [`Functor`] is a total object map plus a total morphism map, covariant
//! or contravariant.  As with categories, construction validates structure
//! (totality, resolvable identifiers) while the behavioural laws — typing,
//! identity preservation, composition preservation — are checked separately
//! by [`check_functor_laws`], so unlawful candidates can be represented and
//! reported against.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{
    check_category_laws, FinCategory, Law, LawReport, MorId, ObjId, Sink, Violation,
};
use crate::error::{Error, Limits, Result};

/// Whether a functor preserves or reverses the direction of morphisms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub enum Variance {
    #[default]
    Covariant,
    Contravariant,
}

impl Variance {
    /// Variance of a composite: two reversals cancel.
    pub fn compose(self, other: Variance) -> Variance {
        if self == other {
            Variance::Covariant
        } else {
            Variance::Contravariant
        }
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::Covariant => "covariant",
            Variance::Contravariant => "contravariant",
        })
    }
}

/// Construction input for [`Functor::new`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctorDecl {
    pub obj_map: BTreeMap<String, String>,
    pub mor_map: BTreeMap<String, String>,
    pub variance: Variance,
    /// Optional name of the abstract theory this functor reads off (for
    /// display only; ignored by equality).
    pub theory: Option<String>,
}

/// A functor between two finite categories.
#[derive(Debug, Clone)]
pub struct Functor {
    src: Arc<FinCategory>,
    dst: Arc<FinCategory>,
    /// Image object index per source object index.
    obj_map: Vec<u32>,
    /// Image morphism index per source morphism index.
    mor_map: Vec<u32>,
    variance: Variance,
    theory: Option<String>,
}

impl PartialEq for Functor {
    /// Structural equality of endpoints and maps; the display-only `theory`
    /// label is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.variance == other.variance
            && self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && self.src == other.src
            && self.dst == other.dst
    }
}

impl Eq for Functor {}

impl Functor {
    /// Builds a functor from name-level maps.
    ///
    /// Both maps must be total on the source.  As the one exception, the
    /// image of an identity morphism may be omitted: it defaults to the
    /// identity of the mapped object.  An explicit entry always wins, so
    /// identity-breaking candidates remain expressible.
    pub fn new(src: Arc<FinCategory>, dst: Arc<FinCategory>, decl: FunctorDecl) -> Result<Functor> {
        let mut obj_map = vec![u32::MAX; src.obj_count()];
        for (from, to) in &decl.obj_map {
            let fi = src.obj_ix(from).ok_or_else(|| Error::DanglingReference {
                id: from.clone(),
                context: "functor object map key (not an object of the source)".into(),
            })?;
            let ti = dst.obj_ix(to).ok_or_else(|| Error::DanglingReference {
                id: to.clone(),
                context: "functor object map value (not an object of the target)".into(),
            })?;
            obj_map[fi as usize] = ti;
        }
        for (ix, &img) in obj_map.iter().enumerate() {
            if img == u32::MAX {
                return Err(Error::PartialMap {
                    missing: src.objects()[ix].to_string(),
                    context: "functor object map".into(),
                });
            }
        }

        let mut mor_map = vec![u32::MAX; src.mor_count()];
        for (from, to) in &decl.mor_map {
            let fi = src.mor_ix(from).ok_or_else(|| Error::DanglingReference {
                id: from.clone(),
                context: "functor morphism map key (not a morphism of the source)".into(),
            })?;
            let ti = dst.mor_ix(to).ok_or_else(|| Error::DanglingReference {
                id: to.clone(),
                context: "functor morphism map value (not a morphism of the target)".into(),
            })?;
            mor_map[fi as usize] = ti;
        }
        for (ix, img) in mor_map.iter_mut().enumerate() {
            if *img == u32::MAX {
                let mix = ix as u32;
                if src.is_identity_ix(mix) {
                    *img = dst.identity_ix(obj_map[src.dom_ix(mix) as usize]);
                } else {
                    return Err(Error::PartialMap {
                        missing: src.morphisms()[ix].to_string(),
                        context: "functor morphism map".into(),
                    });
                }
            }
        }

        Ok(Functor { src, dst, obj_map, mor_map, variance: decl.variance, theory: decl.theory })
    }

    /// Internal constructor from already-validated index maps.
    pub(crate) fn from_indices(
        src: Arc<FinCategory>,
        dst: Arc<FinCategory>,
        obj_map: Vec<u32>,
        mor_map: Vec<u32>,
        variance: Variance,
    ) -> Functor {
        debug_assert_eq!(obj_map.len(), src.obj_count());
        debug_assert_eq!(mor_map.len(), src.mor_count());
        Functor { src, dst, obj_map, mor_map, variance, theory: None }
    }

    /// The identity functor on a category.
    pub fn identity(cat: &Arc<FinCategory>) -> Functor {
        Functor {
            src: Arc::clone(cat),
            dst: Arc::clone(cat),
            obj_map: (0..cat.obj_count() as u32).collect(),
            mor_map: (0..cat.mor_count() as u32).collect(),
            variance: Variance::Covariant,
            theory: None,
        }
    }

    pub fn src(&self) -> &Arc<FinCategory> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FinCategory> {
        &self.dst
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn theory(&self) -> Option<&str> {
        self.theory.as_deref()
    }

    pub fn with_theory(mut self, theory: impl Into<String>) -> Functor {
        self.theory = Some(theory.into());
        self
    }

    /// Image of a source object.
    pub fn obj_image(&self, obj: &str) -> Result<&ObjId> {
        let ix = self.src.obj_ix(obj).ok_or_else(|| Error::UnknownObj { id: obj.into() })?;
        Ok(self.dst.obj_name(self.obj_map[ix as usize]))
    }

    /// Image of a source morphism.
    pub fn mor_image(&self, mor: &str) -> Result<&MorId> {
        let ix = self.src.mor_ix(mor).ok_or_else(|| Error::UnknownMor { id: mor.into() })?;
        Ok(self.dst.mor_name(self.mor_map[ix as usize]))
    }

    /// All `(object, image)` pairs, ascending by source object.
    pub fn obj_entries(&self) -> Vec<(&ObjId, &ObjId)> {
        self.src
            .objects()
            .iter()
            .zip(self.obj_map.iter())
            .map(|(o, &i)| (o, self.dst.obj_name(i)))
            .collect()
    }

    /// All `(morphism, image)` pairs, ascending by source morphism.
    pub fn mor_entries(&self) -> Vec<(&MorId, &MorId)> {
        self.src
            .morphisms()
            .iter()
            .zip(self.mor_map.iter())
            .map(|(m, &i)| (m, self.dst.mor_name(i)))
            .collect()
    }

    pub(crate) fn obj_image_ix(&self, obj: u32) -> u32 {
        self.obj_map[obj as usize]
    }

    pub(crate) fn mor_image_ix(&self, mor: u32) -> u32 {
        self.mor_map[mor as usize]
    }

    /// Copy with one object-map entry replaced (no law validation; the image
    /// must still be an object of the target).  Fault injector for sweeps.
    pub fn with_obj_entry(&self, obj: &str, image: &str) -> Result<Functor> {
        let oix = self.src.obj_ix(obj).ok_or_else(|| Error::UnknownObj { id: obj.into() })?;
        let img = self.dst.obj_ix(image).ok_or_else(|| Error::UnknownObj { id: image.into() })?;
        let mut out = self.clone();
        out.obj_map[oix as usize] = img;
        Ok(out)
    }

    /// Copy with one morphism-map entry replaced (no law validation).
    pub fn with_mor_entry(&self, mor: &str, image: &str) -> Result<Functor> {
        let mix = self.src.mor_ix(mor).ok_or_else(|| Error::UnknownMor { id: mor.into() })?;
        let img = self.dst.mor_ix(image).ok_or_else(|| Error::UnknownMor { id: image.into() })?;
        let mut out = self.clone();
        out.mor_map[mix as usize] = img;
        Ok(out)
    }

    /// Copy with the source category replaced by a structurally equal one
    /// (same objects and morphisms in the same order).  Used when sweeping
    /// perturbed composition tables, which share the original carrier.
    pub fn with_src(&self, src: Arc<FinCategory>) -> Functor {
        debug_assert_eq!(src.obj_count(), self.src.obj_count());
        debug_assert_eq!(src.mor_count(), self.src.mor_count());
        Functor { src, ..self.clone() }
    }

    /// Copy with the target category replaced by a structurally equal one.
    pub fn with_dst(&self, dst: Arc<FinCategory>) -> Functor {
        debug_assert_eq!(dst.obj_count(), self.dst.obj_count());
        debug_assert_eq!(dst.mor_count(), self.dst.mor_count());
        Functor { dst, ..self.clone() }
    }
}

/// Checks typing, identity preservation and composition preservation,
/// exhaustively over the source category, honouring the variance.
pub fn check_functor_laws(f: &Functor, limits: Limits) -> LawReport {
    let mut sink = Sink::new(limits);
    scan_functor_laws(f, &mut sink, "");
    sink.finish()
}

/// Shared scan used by the claim verifiers; `role` (for example `"R"`)
/// prefixes witness subjects so composite reports stay readable.
pub(crate) fn scan_functor_laws(fun: &Functor, sink: &mut Sink, role: &str) {
    let src = &fun.src;
    let dst = &fun.dst;
    let tag = |mut subjects: Vec<String>| -> Vec<String> {
        if !role.is_empty() {
            subjects.insert(0, role.to_string());
        }
        subjects
    };

    // Typing: F(f) must run F(dom f) -> F(cod f), reversed if contravariant.
    for m in 0..src.mor_count() as u32 {
        let img = fun.mor_map[m as usize];
        let (want_dom, want_cod) = match fun.variance {
            Variance::Covariant => {
                (fun.obj_map[src.dom_ix(m) as usize], fun.obj_map[src.cod_ix(m) as usize])
            }
            Variance::Contravariant => {
                (fun.obj_map[src.cod_ix(m) as usize], fun.obj_map[src.dom_ix(m) as usize])
            }
        };
        if (dst.dom_ix(img) != want_dom || dst.cod_ix(img) != want_cod)
            && !sink.push(
                Law::Typing,
                tag(vec![src.mor_name(m).to_string()]),
                format!(
                    "image `{}` has endpoints {} -> {}, expected {} -> {}",
                    dst.mor_name(img),
                    dst.obj_name(dst.dom_ix(img)),
                    dst.obj_name(dst.cod_ix(img)),
                    dst.obj_name(want_dom),
                    dst.obj_name(want_cod)
                ),
            )
        {
            return;
        }
    }

    // Identity preservation: F(id_a) = id_{F(a)}.
    for o in 0..src.obj_count() as u32 {
        let img = fun.mor_map[src.identity_ix(o) as usize];
        let want = dst.identity_ix(fun.obj_map[o as usize]);
        if img != want
            && !sink.push(
                Law::IdentityPreservation,
                tag(vec![src.obj_name(o).to_string()]),
                format!(
                    "image of {} is `{}`, expected `{}`",
                    src.mor_name(src.identity_ix(o)),
                    dst.mor_name(img),
                    dst.mor_name(want)
                ),
            )
        {
            return;
        }
    }

    // Composition preservation over every recorded source entry.
    for f in 0..src.mor_count() as u32 {
        for (g, h) in src.comp_group(f) {
            let (first, second) = match fun.variance {
                Variance::Covariant => (fun.mor_map[f as usize], fun.mor_map[g as usize]),
                Variance::Contravariant => (fun.mor_map[g as usize], fun.mor_map[f as usize]),
            };
            let subjects = || tag(vec![src.mor_name(f).to_string(), src.mor_name(g).to_string()]);
            if dst.cod_ix(first) != dst.dom_ix(second) {
                if !sink.push(
                    Law::Composition,
                    subjects(),
                    format!(
                        "images `{}` and `{}` are not composable in the target",
                        dst.mor_name(first),
                        dst.mor_name(second)
                    ),
                ) {
                    return;
                }
                continue;
            }
            match dst.comp_ix(first, second) {
                Some(image_comp) if image_comp == fun.mor_map[h as usize] => {}
                got => {
                    let detail = match got {
                        Some(image_comp) => format!(
                            "comp({}, {}) = {} in the target but the image of {} is {}",
                            dst.mor_name(first),
                            dst.mor_name(second),
                            dst.mor_name(image_comp),
                            src.mor_name(h),
                            dst.mor_name(fun.mor_map[h as usize])
                        ),
                        None => format!(
                            "comp({}, {}) is undefined in the target",
                            dst.mor_name(first),
                            dst.mor_name(second)
                        ),
                    };
                    if !sink.push(Law::Composition, subjects(), detail) {
                        return;
                    }
                }
            }
        }
    }
}

/// Composes two functors in application order: the result applies `first`,
/// then `second` (i.e. `second ∘ first`).  Variances multiply.
pub fn compose_functors(first: &Functor, second: &Functor) -> Result<Functor> {
    if first.dst != second.src {
        return Err(Error::NotComposable {
            detail: "functors do not share the middle category".into(),
        });
    }
    let obj_map = first.obj_map.iter().map(|&o| second.obj_map[o as usize]).collect();
    let mor_map = first.mor_map.iter().map(|&m| second.mor_map[m as usize]).collect();
    Ok(Functor {
        src: Arc::clone(&first.src),
        dst: Arc::clone(&second.dst),
        obj_map,
        mor_map,
        variance: first.variance.compose(second.variance),
        theory: None,
    })
}

/// Outcome of checking that two functors are mutually inverse.
///
/// `left_identity_ok` states that decoding after encoding is the identity on
/// the encoder's source (`rt ∘ r = Id`); `right_identity_ok` states the other
/// direction (`r ∘ rt = Id`).  `witnesses` lists the failing object and
/// morphism comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InversePairReport {
    pub r_laws: LawReport,
    pub rt_laws: LawReport,
    pub left_identity_ok: bool,
    pub right_identity_ok: bool,
    pub witnesses: Vec<Violation>,
    pub truncated: bool,
}

impl InversePairReport {
    pub fn ok(&self) -> bool {
        self.r_laws.ok && self.rt_laws.ok && self.left_identity_ok && self.right_identity_ok
    }
}

/// Checks that `r` and `rt` are lawful functors and strict two-sided
/// inverses of each other.
pub fn check_inverse_pair(r: &Functor, rt: &Functor, limits: Limits) -> Result<InversePairReport> {
    if r.dst != rt.src || rt.dst != r.src {
        return Err(Error::NotComposable {
            detail: "inverse pair must run between the same two categories, in opposite directions"
                .into(),
        });
    }
    let r_laws = check_functor_laws(r, limits);
    let rt_laws = check_functor_laws(rt, limits);

    let mut sink = Sink::new(limits);
    let mut left_identity_ok = true;
    let mut right_identity_ok = true;
    scan_inverse_identities(r, rt, "rt∘r", &mut left_identity_ok, &mut sink);
    if sink.is_open() {
        scan_inverse_identities(rt, r, "r∘rt", &mut right_identity_ok, &mut sink);
    } else {
        // The cap was hit on the left side; the scan stopped, so report the
        // right side honestly as unknown-failed only if already seen.
        right_identity_ok = false;
    }
    let report = sink.finish();
    Ok(InversePairReport {
        r_laws,
        rt_laws,
        left_identity_ok,
        right_identity_ok,
        witnesses: report.violations,
        truncated: report.truncated,
    })
}

/// Scans `out ∘ into = Id` on `into`'s source, objects first.
fn scan_inverse_identities(
    into: &Functor,
    out: &Functor,
    side: &str,
    ok: &mut bool,
    sink: &mut Sink,
) {
    let src = &into.src;
    for o in 0..src.obj_count() as u32 {
        let round = out.obj_map[into.obj_map[o as usize] as usize];
        if round != o {
            *ok = false;
            if !sink.push(
                Law::Inverse,
                vec![side.to_string(), src.obj_name(o).to_string()],
                format!(
                    "object {} round-trips to {}, expected itself",
                    src.obj_name(o),
                    src.obj_name(round)
                ),
            ) {
                return;
            }
        }
    }
    for m in 0..src.mor_count() as u32 {
        let round = out.mor_map[into.mor_map[m as usize] as usize];
        if round != m {
            *ok = false;
            if !sink.push(
                Law::Inverse,
                vec![side.to_string(), src.mor_name(m).to_string()],
                format!(
                    "morphism {} round-trips to {}, expected itself",
                    src.mor_name(m),
                    src.mor_name(round)
                ),
            ) {
                return;
            }
        }
    }
}

/// Enumerates every lawful covariant functor from `src` to `dst`, in
/// lexicographic order of `(object map, morphism map)`.
///
/// Candidate maps are generated by an odometer over the target's hom-sets
/// (identity images are forced to identities, which is sound because any
/// other choice fails the identity law).  Every candidate examined counts
/// against `limits.max_candidates`; exceeding the budget is an error rather
/// than a silently incomplete answer.
pub fn enumerate_functors(
    src: &Arc<FinCategory>,
    dst: &Arc<FinCategory>,
    limits: Limits,
) -> Result<Vec<Functor>> {
    let nobj = src.obj_count();
    let nmor = src.mor_count();
    let mut found = Vec::new();
    let mut examined: u64 = 0;
    let bump = |examined: &mut u64| -> Result<()> {
        *examined += 1;
        if *examined > limits.max_candidates {
            Err(Error::BudgetExceeded {
                budget: limits.max_candidates,
                context: "functor enumeration".into(),
            })
        } else {
            Ok(())
        }
    };

    if dst.obj_count() == 0 {
        if nobj == 0 {
            found.push(Functor::from_indices(
                Arc::clone(src),
                Arc::clone(dst),
                Vec::new(),
                Vec::new(),
                Variance::Covariant,
            ));
        }
        return Ok(found);
    }

    // Non-identity source morphisms, ascending; identities are forced.
    let free_mors: Vec<u32> = (0..nmor as u32).filter(|&m| !src.is_identity_ix(m)).collect();

    let mut obj_map = vec![0u32; nobj];
    'obj: loop {
        // Candidate images per free morphism under this object assignment.
        let mut slot_candidates: Vec<Vec<u32>> = Vec::with_capacity(free_mors.len());
        let mut feasible = true;
        for &m in &free_mors {
            let want_dom = obj_map[src.dom_ix(m) as usize];
            let want_cod = obj_map[src.cod_ix(m) as usize];
            let cands = dst.hom_ixs(want_dom, want_cod);
            if cands.is_empty() {
                feasible = false;
                break;
            }
            slot_candidates.push(cands);
        }

        if !feasible {
            bump(&mut examined)?;
        } else {
            let mut digits = vec![0usize; free_mors.len()];
            'mor: loop {
                bump(&mut examined)?;
                let mut mor_map = vec![0u32; nmor];
                for o in 0..nobj {
                    mor_map[src.identity_ix(o as u32) as usize] = dst.identity_ix(obj_map[o]);
                }
                for (slot, &m) in free_mors.iter().enumerate() {
                    mor_map[m as usize] = slot_candidates[slot][digits[slot]];
                }
                let cand = Functor::from_indices(
                    Arc::clone(src),
                    Arc::clone(dst),
                    obj_map.clone(),
                    mor_map,
                    Variance::Covariant,
                );
                if check_functor_laws(&cand, Limits::first_witness()).ok {
                    found.push(cand);
                }
                // Advance the morphism odometer (last slot least significant).
                let mut slot = digits.len();
                loop {
                    if slot == 0 {
                        break 'mor;
                    }
                    slot -= 1;
                    digits[slot] += 1;
                    if digits[slot] < slot_candidates[slot].len() {
                        break;
                    }
                    digits[slot] = 0;
                }
            }
        }

        // Advance the object odometer.
        let mut slot = nobj;
        loop {
            if slot == 0 {
                break 'obj;
            }
            slot -= 1;
            obj_map[slot] += 1;
            if (obj_map[slot] as usize) < dst.obj_count() {
                break;
            }
            obj_map[slot] = 0;
        }
    }

    Ok(found)
}

/// Convenience: a category is lawful iff its law report is clean.  Re-export
/// here keeps enumeration call sites self-contained.
pub fn category_is_lawful(cat: &FinCategory) -> bool {
    check_category_laws(cat, Limits::first_witness()).ok
}
