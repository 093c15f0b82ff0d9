//! Natural transformations between parallel functors.
//!
//! A [`NatTrans`] assigns to every source object a component morphism in the
//! target category.  Construction checks totality and that the two functors
//! are parallel (same endpoints, same variance); component *typing* is part
//! of the naturality check, so mistyped candidates can be represented and
//! reported with located witnesses.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::{FinCategory, Law, LawReport, MorId, ObjId, Sink};
use crate::error::{Error, Limits, Result};
use crate::functor::{Functor, Variance};

/// A natural transformation candidate from `source_functor` to
/// `target_functor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    f: Functor,
    g: Functor,
    /// Component morphism index (in the target category) per source object
    /// index.
    components: Vec<u32>,
}

impl NatTrans {
    /// Builds a transformation from a name-level component map, which must
    /// be total on the source category's objects.
    pub fn new(f: Functor, g: Functor, components: BTreeMap<String, String>) -> Result<NatTrans> {
        ensure_parallel(&f, &g)?;
        let src = f.src();
        let dst = f.dst();
        let mut table = vec![u32::MAX; src.obj_count()];
        for (obj, mor) in &components {
            let oix = src.obj_ix(obj).ok_or_else(|| Error::DanglingReference {
                id: obj.clone(),
                context: "transformation component key (not an object of the source)".into(),
            })?;
            let mix = dst.mor_ix(mor).ok_or_else(|| Error::DanglingReference {
                id: mor.clone(),
                context: "transformation component value (not a morphism of the target)".into(),
            })?;
            table[oix as usize] = mix;
        }
        for (ix, &c) in table.iter().enumerate() {
            if c == u32::MAX {
                return Err(Error::PartialMap {
                    missing: src.objects()[ix].to_string(),
                    context: "transformation components".into(),
                });
            }
        }
        Ok(NatTrans { f, g, components: table })
    }

    pub(crate) fn from_indices(f: Functor, g: Functor, components: Vec<u32>) -> NatTrans {
        debug_assert_eq!(components.len(), f.src().obj_count());
        NatTrans { f, g, components }
    }

    /// The identity transformation on a functor: every component is the
    /// identity at the image object.
    pub fn identity(f: &Functor) -> NatTrans {
        let components = (0..f.src().obj_count() as u32)
            .map(|o| f.dst().identity_ix(f.obj_image_ix(o)))
            .collect();
        NatTrans { f: f.clone(), g: f.clone(), components }
    }

    pub fn source_functor(&self) -> &Functor {
        &self.f
    }

    pub fn target_functor(&self) -> &Functor {
        &self.g
    }

    /// The component at one source object.
    pub fn component(&self, obj: &str) -> Result<&MorId> {
        let oix = self.f.src().obj_ix(obj).ok_or_else(|| Error::UnknownObj { id: obj.into() })?;
        Ok(self.f.dst().mor_name(self.components[oix as usize]))
    }

    /// All `(object, component)` pairs, ascending by source object.
    pub fn components(&self) -> Vec<(&ObjId, &MorId)> {
        let src = self.f.src();
        let dst = self.f.dst();
        src.objects()
            .iter()
            .zip(self.components.iter())
            .map(|(o, &c)| (o, dst.mor_name(c)))
            .collect()
    }

    pub(crate) fn component_ix(&self, obj: u32) -> u32 {
        self.components[obj as usize]
    }

    /// Copy with one component replaced (no law validation); fault injector
    /// for perturbation sweeps.
    pub fn with_component(&self, obj: &str, mor: &str) -> Result<NatTrans> {
        let oix = self.f.src().obj_ix(obj).ok_or_else(|| Error::UnknownObj { id: obj.into() })?;
        let mix = self.f.dst().mor_ix(mor).ok_or_else(|| Error::UnknownMor { id: mor.into() })?;
        let mut out = self.clone();
        out.components[oix as usize] = mix;
        Ok(out)
    }
}

fn ensure_parallel(f: &Functor, g: &Functor) -> Result<()> {
    if f.src() != g.src() || f.dst() != g.dst() {
        return Err(Error::NotParallel {
            detail: "functors do not share source and target categories".into(),
        });
    }
    if f.variance() != g.variance() {
        return Err(Error::NotParallel {
            detail: format!(
                "functors have different variance ({} vs {})",
                f.variance(),
                g.variance()
            ),
        });
    }
    Ok(())
}

/// Checks component typing and every naturality square, exhaustively over
/// the source category's morphisms.
///
/// For covariant functors the square at `u : a -> b` demands
/// `comp(η_a, G(u)) = comp(F(u), η_b)`; for contravariant pairs the square
/// flips to `comp(η_b, G(u)) = comp(F(u), η_a)`.  Squares touching a
/// mistyped component are skipped (the typing witness already locates the
/// problem).
pub fn check_naturality(nt: &NatTrans, limits: Limits) -> LawReport {
    let mut sink = Sink::new(limits);
    scan_naturality(nt, &mut sink, "");
    sink.finish()
}

pub(crate) fn scan_naturality(nt: &NatTrans, sink: &mut Sink, role: &str) {
    let src = nt.f.src();
    let dst = nt.f.dst();
    let tag = |mut subjects: Vec<String>| -> Vec<String> {
        if !role.is_empty() {
            subjects.insert(0, role.to_string());
        }
        subjects
    };

    // Component typing: η_a must run F(a) -> G(a).
    let mut typed = vec![true; src.obj_count()];
    for o in 0..src.obj_count() as u32 {
        let c = nt.components[o as usize];
        let want_dom = nt.f.obj_image_ix(o);
        let want_cod = nt.g.obj_image_ix(o);
        if dst.dom_ix(c) != want_dom || dst.cod_ix(c) != want_cod {
            typed[o as usize] = false;
            if !sink.push(
                Law::Naturality,
                tag(vec![src.obj_name(o).to_string()]),
                format!(
                    "component `{}` has endpoints {} -> {}, expected {} -> {}",
                    dst.mor_name(c),
                    dst.obj_name(dst.dom_ix(c)),
                    dst.obj_name(dst.cod_ix(c)),
                    dst.obj_name(want_dom),
                    dst.obj_name(want_cod)
                ),
            ) {
                return;
            }
        }
    }

    // Squares.
    for u in 0..src.mor_count() as u32 {
        let (a, b) = (src.dom_ix(u), src.cod_ix(u));
        if !typed[a as usize] || !typed[b as usize] {
            continue;
        }
        // Left path starts with the component at the square's source corner.
        let (eta_first, eta_then) = match nt.f.variance() {
            Variance::Covariant => (nt.components[a as usize], nt.components[b as usize]),
            Variance::Contravariant => (nt.components[b as usize], nt.components[a as usize]),
        };
        let left = dst.comp_ix(eta_first, nt.g.mor_image_ix(u));
        let right = dst.comp_ix(nt.f.mor_image_ix(u), eta_then);
        let describe = |side: Option<u32>| match side {
            Some(m) => format!("`{}`", dst.mor_name(m)),
            None => "undefined".to_string(),
        };
        if (left.is_none() || right.is_none() || left != right)
            && !sink.push(
                Law::Naturality,
                tag(vec![src.mor_name(u).to_string()]),
                format!(
                    "square at {}: comp({}, {}) = {} but comp({}, {}) = {}",
                    src.mor_name(u),
                    dst.mor_name(eta_first),
                    dst.mor_name(nt.g.mor_image_ix(u)),
                    describe(left),
                    dst.mor_name(nt.f.mor_image_ix(u)),
                    dst.mor_name(eta_then),
                    describe(right)
                ),
            )
        {
            return;
        }
    }
}

/// Composes two transformations objectwise: the component at `a` is
/// `comp(first_a, second_a)`.  Requires `first : F => G` and
/// `second : G => H` with the *same* middle functor.
pub fn vertical_compose(first: &NatTrans, second: &NatTrans) -> Result<NatTrans> {
    if first.g != second.f {
        return Err(Error::NotComposable {
            detail: "vertical composition needs the first target functor to equal the second source functor"
                .into(),
        });
    }
    let dst = first.f.dst();
    let mut components = Vec::with_capacity(first.components.len());
    for o in 0..first.components.len() {
        let x = first.components[o];
        let y = second.components[o];
        match dst.comp_ix(x, y) {
            Some(c) => components.push(c),
            None => {
                return Err(Error::NotComposable {
                    detail: format!(
                        "components `{}` and `{}` at object {} do not compose in the target",
                        dst.mor_name(x),
                        dst.mor_name(y),
                        first.f.src().obj_name(o as u32)
                    ),
                })
            }
        }
    }
    Ok(NatTrans { f: first.f.clone(), g: second.g.clone(), components })
}

/// Enumerates every natural transformation between two parallel functors,
/// in lexicographic order of the component map.
///
/// Candidates are drawn from the hom-sets `hom(F(a), G(a))`; each candidate
/// examined counts against `limits.max_candidates`.
pub fn enumerate_nat_trans(f: &Functor, g: &Functor, limits: Limits) -> Result<Vec<NatTrans>> {
    ensure_parallel(f, g)?;
    let src = f.src();
    let dst: &Arc<FinCategory> = f.dst();
    let nobj = src.obj_count();

    let mut slot_candidates: Vec<Vec<u32>> = Vec::with_capacity(nobj);
    for o in 0..nobj as u32 {
        let cands = dst.hom_ixs(f.obj_image_ix(o), g.obj_image_ix(o));
        if cands.is_empty() {
            return Ok(Vec::new());
        }
        slot_candidates.push(cands);
    }

    let mut found = Vec::new();
    let mut examined: u64 = 0;
    let mut digits = vec![0usize; nobj];
    loop {
        examined += 1;
        if examined > limits.max_candidates {
            return Err(Error::BudgetExceeded {
                budget: limits.max_candidates,
                context: "natural transformation enumeration".into(),
            });
        }
        let components: Vec<u32> =
            digits.iter().enumerate().map(|(s, &d)| slot_candidates[s][d]).collect();
        let cand = NatTrans::from_indices(f.clone(), g.clone(), components);
        if check_naturality(&cand, Limits::first_witness()).ok {
            found.push(cand);
        }
        let mut slot = nobj;
        loop {
            if slot == 0 {
                return Ok(found);
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
