//! Finite categories presented by explicit, total composition tables.
//!
//! A [`FinCategory`] stores finite sets of objects and morphisms plus a
//! composition table, so every law check reduces to table lookups and
//! exhaustive scans.  Composition is recorded in *application order*:
//! `comp(f, g)` is the composite "`f` then `g`" (written `g ∘ f` in the usual
//! notation) and is defined exactly when `cod(f) = dom(g)`.
//!
//! Construction validates structure — identifiers resolve, table entries are
//! typeable — but deliberately does **not** check the category laws.  Laws
//! (closure, identity absorption, associativity, null-object uniqueness) are
//! checked separately by [`check_category_laws`] so that a driver can load a
//! broken table and *report* what is wrong with it instead of refusing it.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Limits, Result};

// ---------------------------------------------------------------------------
// Identifiers
// ---------------------------------------------------------------------------

/// Checks the lexical rules shared by all identifiers: nonempty, printable,
/// no whitespace.  Identifiers are ordered by plain byte-wise comparison.
pub(crate) fn validate_ident(s: &str, what: &str) -> Result<()> {
    let bad = s.is_empty() || s.chars().any(|c| c.is_whitespace() || c.is_control());
    if bad {
        return Err(Error::DanglingReference {
            id: s.to_string(),
            context: format!("{what} must be nonempty, printable and contain no whitespace"),
        });
    }
    Ok(())
}

macro_rules! ident_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }

        impl From<$name> for String {
            fn from(id: $name) -> String {
                id.0
            }
        }

        impl PartialEq<str> for $name {
            fn eq(&self, other: &str) -> bool {
                self.0 == other
            }
        }

        impl PartialEq<&str> for $name {
            fn eq(&self, other: &&str) -> bool {
                self.0 == **other
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_string())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(s)
            }
        }
    };
}

ident_type! {
    /// Name of an object in a finite category.
    ObjId
}

ident_type! {
    /// Name of a morphism in a finite category.
    MorId
}

// ---------------------------------------------------------------------------
// Declarations (construction input)
// ---------------------------------------------------------------------------

/// One morphism declaration: `id: dom -> cod`, optionally labelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorDecl {
    pub id: String,
    pub dom: String,
    pub cod: String,
    pub label: Option<String>,
}

impl MorDecl {
    pub fn new(id: impl Into<String>, dom: impl Into<String>, cod: impl Into<String>) -> Self {
        MorDecl { id: id.into(), dom: dom.into(), cod: cod.into(), label: None }
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// One composition-table entry: `first` then `then` equals `result`
/// (`result = then ∘ first`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompDecl {
    pub first: String,
    pub then: String,
    pub result: String,
}

impl CompDecl {
    pub fn new(
        first: impl Into<String>,
        then: impl Into<String>,
        result: impl Into<String>,
    ) -> Self {
        CompDecl { first: first.into(), then: then.into(), result: result.into() }
    }
}

/// Everything needed to build a [`FinCategory`].
///
/// `identities` maps each object to the name of its identity morphism.  An
/// identity may either reference a declared morphism (whose endpoints must
/// then be the object itself) or name a fresh morphism, which is created.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryDecl {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorDecl>,
    pub identities: BTreeMap<String, String>,
    pub comp: Vec<CompDecl>,
    pub null_object: Option<String>,
}

impl CategoryDecl {
    /// Fills `identities` with `id_<object>` for every object that does not
    /// already have an identity assigned.
    pub fn with_default_identities(mut self) -> Self {
        for obj in &self.objects {
            self.identities.entry(obj.clone()).or_insert_with(|| format!("id_{obj}"));
        }
        self
    }
}

// ---------------------------------------------------------------------------
// Storage
// ---------------------------------------------------------------------------

/// Immutable part of a category: names, endpoints, identities.  Shared via
/// `Arc` so that composition-table perturbations (fault injection in tests
/// and sweeps) can produce modified copies without re-allocating every name.
#[derive(Debug, PartialEq, Eq)]
struct Carrier {
    objects: Vec<ObjId>,
    obj_lookup: BTreeMap<ObjId, u32>,
    morphisms: Vec<MorId>,
    mor_lookup: BTreeMap<MorId, u32>,
    labels: Vec<Option<String>>,
    dom: Vec<u32>,
    cod: Vec<u32>,
    /// Identity morphism index per object index.
    identity: Vec<u32>,
    is_identity: Vec<bool>,
    /// Morphism indices grouped by domain object, each group ascending.
    by_dom: Vec<Vec<u32>>,
}

/// A finite category: objects, morphisms and an explicit composition table.
#[derive(Debug, Clone)]
pub struct FinCategory {
    carrier: Arc<Carrier>,
    /// Offsets into `comp_entries`, grouped by the first (earlier-applied)
    /// morphism; length is `mor_count() + 1`.
    comp_start: Vec<u32>,
    /// `(second, result)` pairs, ascending by `second` within each group.
    comp_entries: Vec<(u32, u32)>,
    null_object: Option<u32>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.carrier, &other.carrier) || self.carrier == other.carrier)
            && self.comp_start == other.comp_start
            && self.comp_entries == other.comp_entries
            && self.null_object == other.null_object
    }
}

impl Eq for FinCategory {}

impl FinCategory {
    /// Builds a category from explicit declarations.
    ///
    /// Validates that identifiers are well-formed and unique, that every
    /// reference resolves, that every object has an identity of the right
    /// shape and that every composition entry is typeable.  The category laws
    /// are *not* checked here; see [`check_category_laws`].
    pub fn new(decl: CategoryDecl) -> Result<FinCategory> {
        // Objects.
        let mut objects: Vec<ObjId> = Vec::with_capacity(decl.objects.len());
        for name in &decl.objects {
            validate_ident(name, "object id")?;
            objects.push(ObjId(name.clone()));
        }
        objects.sort();
        for pair in objects.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateId {
                    id: pair[0].0.clone(),
                    context: "objects".into(),
                });
            }
        }
        let obj_lookup: BTreeMap<ObjId, u32> =
            objects.iter().enumerate().map(|(i, o)| (o.clone(), i as u32)).collect();
        let find_obj = |name: &str, context: &str| -> Result<u32> {
            obj_lookup.get(name).copied().ok_or_else(|| Error::DanglingReference {
                id: name.to_string(),
                context: context.to_string(),
            })
        };

        // Morphisms: declared ones plus identities that name fresh morphisms.
        struct RawMor {
            id: String,
            dom: u32,
            cod: u32,
            label: Option<String>,
        }
        let mut raw: Vec<RawMor> = Vec::with_capacity(decl.morphisms.len() + objects.len());
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        for m in &decl.morphisms {
            validate_ident(&m.id, "morphism id")?;
            if seen.contains_key(&m.id) {
                return Err(Error::DuplicateId { id: m.id.clone(), context: "morphisms".into() });
            }
            let dom = find_obj(&m.dom, &format!("domain of morphism `{}`", m.id))?;
            let cod = find_obj(&m.cod, &format!("codomain of morphism `{}`", m.id))?;
            seen.insert(m.id.clone(), raw.len());
            raw.push(RawMor { id: m.id.clone(), dom, cod, label: m.label.clone() });
        }

        // Identities: one per object, totality required.
        let mut identity_name: BTreeMap<u32, String> = BTreeMap::new();
        for (obj, mor) in &decl.identities {
            let oix = find_obj(obj, "identity assignment")?;
            validate_ident(mor, "identity morphism id")?;
            match seen.get(mor) {
                Some(&pos) => {
                    if raw[pos].dom != oix || raw[pos].cod != oix {
                        return Err(Error::IllTypedIdentity {
                            object: obj.clone(),
                            detail: format!(
                                "`{}` has endpoints {} -> {}",
                                mor, objects[raw[pos].dom as usize], objects[raw[pos].cod as usize]
                            ),
                        });
                    }
                }
                None => {
                    seen.insert(mor.clone(), raw.len());
                    raw.push(RawMor { id: mor.clone(), dom: oix, cod: oix, label: None });
                }
            }
            identity_name.insert(oix, mor.clone());
        }
        for (ix, obj) in objects.iter().enumerate() {
            if !identity_name.contains_key(&(ix as u32)) {
                return Err(Error::PartialMap {
                    missing: obj.0.clone(),
                    context: "identity assignment (every object needs an identity)".into(),
                });
            }
        }

        // Freeze morphism order (ascending by id) and remap.
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| raw[a].id.cmp(&raw[b].id));
        let mut mor_of_raw = vec![0u32; raw.len()];
        for (mix, &rix) in order.iter().enumerate() {
            mor_of_raw[rix] = mix as u32;
        }
        let morphisms: Vec<MorId> = order.iter().map(|&r| MorId(raw[r].id.clone())).collect();
        let labels: Vec<Option<String>> = order.iter().map(|&r| raw[r].label.clone()).collect();
        let dom: Vec<u32> = order.iter().map(|&r| raw[r].dom).collect();
        let cod: Vec<u32> = order.iter().map(|&r| raw[r].cod).collect();
        let mor_lookup: BTreeMap<MorId, u32> =
            morphisms.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let find_mor = |name: &str, context: &str| -> Result<u32> {
            mor_lookup.get(name).copied().ok_or_else(|| Error::DanglingReference {
                id: name.to_string(),
                context: context.to_string(),
            })
        };

        let mut identity = vec![0u32; objects.len()];
        let mut is_identity = vec![false; morphisms.len()];
        for (oix, name) in &identity_name {
            let mix = mor_lookup[name.as_str()];
            identity[*oix as usize] = mix;
            is_identity[mix as usize] = true;
        }

        let mut by_dom: Vec<Vec<u32>> = vec![Vec::new(); objects.len()];
        for (mix, &d) in dom.iter().enumerate() {
            by_dom[d as usize].push(mix as u32);
        }

        // Composition table.
        let mut entries: Vec<(u32, u32, u32)> = Vec::with_capacity(decl.comp.len());
        let mut entry_keys: BTreeSet<(u32, u32)> = BTreeSet::new();
        for e in &decl.comp {
            let f = find_mor(&e.first, "composition entry")?;
            let g = find_mor(&e.then, "composition entry")?;
            let h = find_mor(&e.result, "composition entry")?;
            if cod[f as usize] != dom[g as usize] {
                return Err(Error::IllTypedComp {
                    f: e.first.clone(),
                    g: e.then.clone(),
                    detail: format!(
                        "pair is not composable: cod({}) = {} but dom({}) = {}",
                        e.first,
                        objects[cod[f as usize] as usize],
                        e.then,
                        objects[dom[g as usize] as usize]
                    ),
                });
            }
            if dom[h as usize] != dom[f as usize] || cod[h as usize] != cod[g as usize] {
                return Err(Error::IllTypedComp {
                    f: e.first.clone(),
                    g: e.then.clone(),
                    detail: format!(
                        "result `{}` has endpoints {} -> {}, expected {} -> {}",
                        e.result,
                        objects[dom[h as usize] as usize],
                        objects[cod[h as usize] as usize],
                        objects[dom[f as usize] as usize],
                        objects[cod[g as usize] as usize]
                    ),
                });
            }
            if !entry_keys.insert((f, g)) {
                return Err(Error::DuplicateId {
                    id: format!("({}, {})", e.first, e.then),
                    context: "composition table".into(),
                });
            }
            entries.push((f, g, h));
        }

        let null_object = match &decl.null_object {
            Some(name) => Some(find_obj(name, "null object")?),
            None => None,
        };

        let carrier = Arc::new(Carrier {
            objects,
            obj_lookup,
            morphisms,
            mor_lookup,
            labels,
            dom,
            cod,
            identity,
            is_identity,
            by_dom,
        });
        Ok(FinCategory::assemble(carrier, entries, null_object))
    }

    /// Groups and sorts raw `(first, second, result)` entries into the
    /// flattened table layout.
    fn assemble(
        carrier: Arc<Carrier>,
        mut entries: Vec<(u32, u32, u32)>,
        null_object: Option<u32>,
    ) -> FinCategory {
        entries.sort_unstable_by_key(|&(f, g, _)| (f, g));
        let nmor = carrier.morphisms.len();
        let mut comp_start = vec![0u32; nmor + 1];
        for &(f, _, _) in &entries {
            comp_start[f as usize + 1] += 1;
        }
        for i in 0..nmor {
            comp_start[i + 1] += comp_start[i];
        }
        let comp_entries: Vec<(u32, u32)> = entries.iter().map(|&(_, g, h)| (g, h)).collect();
        FinCategory { carrier, comp_start, comp_entries, null_object }
    }

    // -- basic accessors ----------------------------------------------------

    /// All objects, ascending by identifier.
    pub fn objects(&self) -> &[ObjId] {
        &self.carrier.objects
    }

    /// All morphisms, ascending by identifier.
    pub fn morphisms(&self) -> &[MorId] {
        &self.carrier.morphisms
    }

    pub fn obj_count(&self) -> usize {
        self.carrier.objects.len()
    }

    pub fn mor_count(&self) -> usize {
        self.carrier.morphisms.len()
    }

    pub fn has_obj(&self, name: &str) -> bool {
        self.carrier.obj_lookup.contains_key(name)
    }

    pub fn has_mor(&self, name: &str) -> bool {
        self.carrier.mor_lookup.contains_key(name)
    }

    pub fn dom(&self, mor: &str) -> Result<&ObjId> {
        let m = self.mor_ix_checked(mor)?;
        Ok(&self.carrier.objects[self.carrier.dom[m as usize] as usize])
    }

    pub fn cod(&self, mor: &str) -> Result<&ObjId> {
        let m = self.mor_ix_checked(mor)?;
        Ok(&self.carrier.objects[self.carrier.cod[m as usize] as usize])
    }

    pub fn label(&self, mor: &str) -> Result<Option<&str>> {
        let m = self.mor_ix_checked(mor)?;
        Ok(self.carrier.labels[m as usize].as_deref())
    }

    /// The identity morphism of an object.
    pub fn identity_of(&self, obj: &str) -> Result<&MorId> {
        let o = self.obj_ix_checked(obj)?;
        Ok(&self.carrier.morphisms[self.carrier.identity[o as usize] as usize])
    }

    pub fn is_identity(&self, mor: &str) -> Result<bool> {
        let m = self.mor_ix_checked(mor)?;
        Ok(self.carrier.is_identity[m as usize])
    }

    pub fn null_object(&self) -> Option<&ObjId> {
        self.null_object.map(|o| &self.carrier.objects[o as usize])
    }

    /// The recorded composite "`f` then `g`" (that is, `g ∘ f`).
    ///
    /// Fails with [`Error::NotComposable`] when `cod(f) != dom(g)` and also —
    /// with an explanatory detail — when the pair is composable but the table
    /// has no entry for it (a closure violation in the underlying table).
    pub fn compose(&self, f: &str, g: &str) -> Result<&MorId> {
        let fi = self.mor_ix_checked(f)?;
        let gi = self.mor_ix_checked(g)?;
        if self.carrier.cod[fi as usize] != self.carrier.dom[gi as usize] {
            return Err(Error::NotComposable {
                detail: format!(
                    "cod({f}) = {} but dom({g}) = {}",
                    self.carrier.objects[self.carrier.cod[fi as usize] as usize],
                    self.carrier.objects[self.carrier.dom[gi as usize] as usize]
                ),
            });
        }
        match self.comp_ix(fi, gi) {
            Some(h) => Ok(&self.carrier.morphisms[h as usize]),
            None => Err(Error::NotComposable {
                detail: format!("no composition entry recorded for ({f}, {g})"),
            }),
        }
    }

    /// All morphisms from `a` to `b`, ascending by identifier.
    pub fn hom_set(&self, a: &str, b: &str) -> Result<Vec<&MorId>> {
        let ai = self.obj_ix_checked(a)?;
        let bi = self.obj_ix_checked(b)?;
        Ok(self.carrier.by_dom[ai as usize]
            .iter()
            .filter(|&&m| self.carrier.cod[m as usize] == bi)
            .map(|&m| &self.carrier.morphisms[m as usize])
            .collect())
    }

    /// Every recorded table entry as `(first, second, result)`, ascending by
    /// `(first, second)`.
    pub fn composition_entries(&self) -> Vec<(&MorId, &MorId, &MorId)> {
        let mors = &self.carrier.morphisms;
        let mut out = Vec::with_capacity(self.comp_entries.len());
        for f in 0..self.mor_count() {
            let (lo, hi) = (self.comp_start[f] as usize, self.comp_start[f + 1] as usize);
            for &(g, h) in &self.comp_entries[lo..hi] {
                out.push((&mors[f], &mors[g as usize], &mors[h as usize]));
            }
        }
        out
    }

    // -- index-level accessors (crate-internal fast paths) ------------------

    pub(crate) fn obj_ix(&self, name: &str) -> Option<u32> {
        self.carrier.obj_lookup.get(name).copied()
    }

    pub(crate) fn mor_ix(&self, name: &str) -> Option<u32> {
        self.carrier.mor_lookup.get(name).copied()
    }

    fn obj_ix_checked(&self, name: &str) -> Result<u32> {
        self.obj_ix(name).ok_or_else(|| Error::UnknownObj { id: name.to_string() })
    }

    fn mor_ix_checked(&self, name: &str) -> Result<u32> {
        self.mor_ix(name).ok_or_else(|| Error::UnknownMor { id: name.to_string() })
    }

    pub(crate) fn obj_name(&self, ix: u32) -> &ObjId {
        &self.carrier.objects[ix as usize]
    }

    pub(crate) fn mor_name(&self, ix: u32) -> &MorId {
        &self.carrier.morphisms[ix as usize]
    }

    pub(crate) fn dom_ix(&self, mor: u32) -> u32 {
        self.carrier.dom[mor as usize]
    }

    pub(crate) fn cod_ix(&self, mor: u32) -> u32 {
        self.carrier.cod[mor as usize]
    }

    pub(crate) fn identity_ix(&self, obj: u32) -> u32 {
        self.carrier.identity[obj as usize]
    }

    pub(crate) fn is_identity_ix(&self, mor: u32) -> bool {
        self.carrier.is_identity[mor as usize]
    }

    pub(crate) fn by_dom_ix(&self, obj: u32) -> &[u32] {
        &self.carrier.by_dom[obj as usize]
    }

    pub(crate) fn null_object_ix(&self) -> Option<u32> {
        self.null_object
    }

    /// Table lookup by indices; `None` when no entry is recorded.
    pub(crate) fn comp_ix(&self, f: u32, g: u32) -> Option<u32> {
        let (lo, hi) =
            (self.comp_start[f as usize] as usize, self.comp_start[f as usize + 1] as usize);
        let group = &self.comp_entries[lo..hi];
        // Groups are sorted by `g` and almost always tiny.
        match group.binary_search_by_key(&g, |&(s, _)| s) {
            Ok(pos) => Some(group[pos].1),
            Err(_) => None,
        }
    }

    /// Morphisms whose domain is `cod(f)`, i.e. the second legs composable
    /// after `f`.
    pub(crate) fn continuations(&self, f: u32) -> &[u32] {
        &self.carrier.by_dom[self.carrier.cod[f as usize] as usize]
    }

    /// All `(second, result)` table entries whose first leg is `f`,
    /// ascending by `second`.
    pub(crate) fn comp_group(&self, f: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        let (lo, hi) =
            (self.comp_start[f as usize] as usize, self.comp_start[f as usize + 1] as usize);
        self.comp_entries[lo..hi].iter().copied()
    }

    /// Hom-set by object indices, as ascending morphism indices.
    pub(crate) fn hom_ixs(&self, a: u32, b: u32) -> Vec<u32> {
        self.carrier.by_dom[a as usize]
            .iter()
            .filter(|&&m| self.carrier.cod[m as usize] == b)
            .copied()
            .collect()
    }

    // -- perturbation helpers ------------------------------------------------

    /// Returns a copy whose table maps `(first, then)` to `result`, replacing
    /// the previous entry or inserting a new one.
    ///
    /// **No typing validation is performed** — this is a deliberate fault
    /// injector for tests and sweeps, the one way to build a category whose
    /// table [`check_category_laws`] (or a functor-law check downstream) will
    /// reject.  The carrier (names, endpoints, identities) is shared with
    /// `self`, so the copy is cheap even for large categories.
    pub fn with_comp_entry_unchecked(
        &self,
        first: &str,
        then: &str,
        result: &str,
    ) -> Result<FinCategory> {
        let f = self.mor_ix_checked(first)?;
        let g = self.mor_ix_checked(then)?;
        let h = self.mor_ix_checked(result)?;
        let mut out = self.clone();
        let (lo, hi) =
            (out.comp_start[f as usize] as usize, out.comp_start[f as usize + 1] as usize);
        match out.comp_entries[lo..hi].binary_search_by_key(&g, |&(s, _)| s) {
            Ok(pos) => {
                out.comp_entries[lo + pos].1 = h;
            }
            Err(pos) => {
                out.comp_entries.insert(lo + pos, (g, h));
                for s in out.comp_start[f as usize + 1..].iter_mut() {
                    *s += 1;
                }
            }
        }
        Ok(out)
    }

    /// Returns a copy whose table has no entry for `(first, then)`; useful
    /// for exercising closure violations.  Removing an absent entry is fine.
    pub fn without_comp_entry(&self, first: &str, then: &str) -> Result<FinCategory> {
        let f = self.mor_ix_checked(first)?;
        let g = self.mor_ix_checked(then)?;
        let mut out = self.clone();
        let (lo, hi) =
            (out.comp_start[f as usize] as usize, out.comp_start[f as usize + 1] as usize);
        if let Ok(pos) = out.comp_entries[lo..hi].binary_search_by_key(&g, |&(s, _)| s) {
            out.comp_entries.remove(lo + pos);
            for s in out.comp_start[f as usize + 1..].iter_mut() {
                *s -= 1;
            }
        }
        Ok(out)
    }

    /// Replaces the raw table entry at flat position `pos` (in the order of
    /// [`FinCategory::composition_entries`]) with `result`, unchecked.
    /// Returns the `(first, then)` pair of the touched entry alongside the
    /// perturbed category; `None` when `pos` is out of range or the
    /// replacement equals the current value.
    pub fn with_comp_entry_at_unchecked(
        &self,
        pos: usize,
        result: &str,
    ) -> Option<((&MorId, &MorId), FinCategory)> {
        if pos >= self.comp_entries.len() {
            return None;
        }
        let h = self.mor_ix(result)?;
        if self.comp_entries[pos].1 == h {
            return None;
        }
        let f = match self.comp_start.partition_point(|&s| (s as usize) <= pos) {
            0 => return None,
            k => (k - 1) as u32,
        };
        let g = self.comp_entries[pos].0;
        let mut out = self.clone();
        out.comp_entries[pos].1 = h;
        Some(((self.mor_name(f), self.mor_name(g)), out))
    }

    /// Number of recorded table entries.
    pub fn comp_len(&self) -> usize {
        self.comp_entries.len()
    }
}

// ---------------------------------------------------------------------------
// Law checking
// ---------------------------------------------------------------------------

/// The axiom (or preservation property) a witness violates.  Serialized by
/// its stable upper-case name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    CompositionTyping,
    CompositionClosure,
    IdentityLeft,
    IdentityRight,
    Associativity,
    NullNotInitial,
    NullNotTerminal,
    Typing,
    IdentityPreservation,
    Composition,
    Naturality,
    Triangle,
    Inverse,
    Square,
    Causal,
    Counterfactual,
}

impl Law {
    pub fn as_str(&self) -> &'static str {
        match self {
            Law::CompositionTyping => "COMPOSITION_TYPING",
            Law::CompositionClosure => "COMPOSITION_CLOSURE",
            Law::IdentityLeft => "IDENTITY_LEFT",
            Law::IdentityRight => "IDENTITY_RIGHT",
            Law::Associativity => "ASSOCIATIVITY",
            Law::NullNotInitial => "NULL_NOT_INITIAL",
            Law::NullNotTerminal => "NULL_NOT_TERMINAL",
            Law::Typing => "TYPING",
            Law::IdentityPreservation => "IDENTITY_PRESERVATION",
            Law::Composition => "COMPOSITION",
            Law::Naturality => "NATURALITY",
            Law::Triangle => "TRIANGLE",
            Law::Inverse => "INVERSE",
            Law::Square => "SQUARE",
            Law::Causal => "CAUSAL",
            Law::Counterfactual => "COUNTERFACTUAL",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Law {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One concrete law violation: which law, which identifiers, and an
/// explanation carrying the expected/actual values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub subjects: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}): {}", self.law, self.subjects.join(", "), self.detail)
    }
}

/// Outcome of a law check: every violation found, in deterministic scan
/// order, up to the witness cap.  `truncated` means the scan stopped at the
/// cap and further violations may exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    pub truncated: bool,
}

/// Collects violations up to a cap; every checker shares this behaviour so
/// witness lists stay deterministic and bounded.
pub(crate) struct Sink {
    cap: usize,
    violations: Vec<Violation>,
    truncated: bool,
}

impl Sink {
    pub(crate) fn new(limits: Limits) -> Self {
        Sink { cap: limits.max_witnesses.max(1), violations: Vec::new(), truncated: false }
    }

    /// Records a violation; returns `false` when the cap is reached and the
    /// scan should stop.
    pub(crate) fn push(&mut self, law: Law, subjects: Vec<String>, detail: String) -> bool {
        self.violations.push(Violation { law, subjects, detail });
        if self.violations.len() >= self.cap {
            self.truncated = true;
            false
        } else {
            true
        }
    }

    pub(crate) fn is_open(&self) -> bool {
        !self.truncated
    }

    pub(crate) fn finish(self) -> LawReport {
        LawReport {
            ok: self.violations.is_empty(),
            violations: self.violations,
            truncated: self.truncated,
        }
    }
}

/// Exhaustively checks the category axioms on the explicit table.
///
/// Scan order (and therefore witness order) is deterministic: entry typing,
/// closure, identity absorption, associativity, then null-object uniqueness,
/// each in ascending identifier order.
pub fn check_category_laws(cat: &FinCategory, limits: Limits) -> LawReport {
    let mut sink = Sink::new(limits);
    scan_category_laws(cat, &mut sink);
    sink.finish()
}

pub(crate) fn scan_category_laws(cat: &FinCategory, sink: &mut Sink) {
    let nmor = cat.mor_count() as u32;

    // Entry typing: every recorded entry must be a composable pair with a
    // result of the right shape.  (Construction guarantees this; perturbed
    // tables may not.)
    for f in 0..nmor {
        let (lo, hi) =
            (cat.comp_start[f as usize] as usize, cat.comp_start[f as usize + 1] as usize);
        for &(g, h) in &cat.comp_entries[lo..hi] {
            if cat.cod_ix(f) != cat.dom_ix(g) {
                if !sink.push(
                    Law::CompositionTyping,
                    vec![cat.mor_name(f).to_string(), cat.mor_name(g).to_string()],
                    format!(
                        "entry recorded for a non-composable pair: cod({}) = {}, dom({}) = {}",
                        cat.mor_name(f),
                        cat.obj_name(cat.cod_ix(f)),
                        cat.mor_name(g),
                        cat.obj_name(cat.dom_ix(g))
                    ),
                ) {
                    return;
                }
                continue;
            }
            if (cat.dom_ix(h) != cat.dom_ix(f) || cat.cod_ix(h) != cat.cod_ix(g))
                && !sink.push(
                    Law::CompositionTyping,
                    vec![
                        cat.mor_name(f).to_string(),
                        cat.mor_name(g).to_string(),
                        cat.mor_name(h).to_string(),
                    ],
                    format!(
                        "result `{}` has endpoints {} -> {}, expected {} -> {}",
                        cat.mor_name(h),
                        cat.obj_name(cat.dom_ix(h)),
                        cat.obj_name(cat.cod_ix(h)),
                        cat.obj_name(cat.dom_ix(f)),
                        cat.obj_name(cat.cod_ix(g))
                    ),
                )
            {
                return;
            }
        }
    }

    // Closure: every composable pair has an entry.
    for f in 0..nmor {
        for &g in cat.continuations(f) {
            if cat.comp_ix(f, g).is_none()
                && !sink.push(
                    Law::CompositionClosure,
                    vec![cat.mor_name(f).to_string(), cat.mor_name(g).to_string()],
                    format!(
                        "composable pair ({}, {}) has no entry in the table",
                        cat.mor_name(f),
                        cat.mor_name(g)
                    ),
                )
            {
                return;
            }
        }
    }

    // Identity absorption.
    for f in 0..nmor {
        let id_dom = cat.identity_ix(cat.dom_ix(f));
        match cat.comp_ix(id_dom, f) {
            Some(h) if h == f => {}
            got => {
                let detail = match got {
                    Some(h) => format!(
                        "comp({}, {}) = {}, expected {}",
                        cat.mor_name(id_dom),
                        cat.mor_name(f),
                        cat.mor_name(h),
                        cat.mor_name(f)
                    ),
                    None => {
                        format!("comp({}, {}) has no entry", cat.mor_name(id_dom), cat.mor_name(f))
                    }
                };
                if !sink.push(Law::IdentityLeft, vec![cat.mor_name(f).to_string()], detail) {
                    return;
                }
            }
        }
        let id_cod = cat.identity_ix(cat.cod_ix(f));
        match cat.comp_ix(f, id_cod) {
            Some(h) if h == f => {}
            got => {
                let detail = match got {
                    Some(h) => format!(
                        "comp({}, {}) = {}, expected {}",
                        cat.mor_name(f),
                        cat.mor_name(id_cod),
                        cat.mor_name(h),
                        cat.mor_name(f)
                    ),
                    None => {
                        format!("comp({}, {}) has no entry", cat.mor_name(f), cat.mor_name(id_cod))
                    }
                };
                if !sink.push(Law::IdentityRight, vec![cat.mor_name(f).to_string()], detail) {
                    return;
                }
            }
        }
    }

    // Associativity over every composable triple.  Pairs whose entries are
    // missing were already reported as closure violations and are skipped.
    for f in 0..nmor {
        for &g in cat.continuations(f) {
            let Some(fg) = cat.comp_ix(f, g) else { continue };
            for &h in cat.continuations(g) {
                let Some(gh) = cat.comp_ix(g, h) else { continue };
                let (Some(left), Some(right)) = (cat.comp_ix(fg, h), cat.comp_ix(f, gh)) else {
                    continue;
                };
                if left != right
                    && !sink.push(
                        Law::Associativity,
                        vec![
                            cat.mor_name(f).to_string(),
                            cat.mor_name(g).to_string(),
                            cat.mor_name(h).to_string(),
                        ],
                        format!(
                            "comp(comp({f_}, {g_}), {h_}) = {l} but comp({f_}, comp({g_}, {h_})) = {r}",
                            f_ = cat.mor_name(f),
                            g_ = cat.mor_name(g),
                            h_ = cat.mor_name(h),
                            l = cat.mor_name(left),
                            r = cat.mor_name(right)
                        ),
                    )
                {
                    return;
                }
            }
        }
    }

    // Null object: exactly one morphism from it to every object, and exactly
    // one from every object to it.
    if let Some(z) = cat.null_object_ix() {
        let nobj = cat.obj_count() as u32;
        for x in 0..nobj {
            let outgoing = cat.by_dom_ix(z).iter().filter(|&&m| cat.cod_ix(m) == x).count();
            if outgoing != 1
                && !sink.push(
                    Law::NullNotInitial,
                    vec![cat.obj_name(x).to_string()],
                    format!(
                        "expected exactly one morphism {} -> {}, found {}",
                        cat.obj_name(z),
                        cat.obj_name(x),
                        outgoing
                    ),
                )
            {
                return;
            }
        }
        for x in 0..nobj {
            let incoming = cat.by_dom_ix(x).iter().filter(|&&m| cat.cod_ix(m) == z).count();
            if incoming != 1
                && !sink.push(
                    Law::NullNotTerminal,
                    vec![cat.obj_name(x).to_string()],
                    format!(
                        "expected exactly one morphism {} -> {}, found {}",
                        cat.obj_name(x),
                        cat.obj_name(z),
                        incoming
                    ),
                )
            {
                return;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Opposite category
// ---------------------------------------------------------------------------

/// The opposite category: same objects and morphism names, domains and
/// codomains swapped, table entries reversed.  Applying it twice returns a
/// category equal field-for-field to the original.
pub fn opposite(cat: &FinCategory) -> FinCategory {
    let c = &cat.carrier;
    let mut by_dom: Vec<Vec<u32>> = vec![Vec::new(); c.objects.len()];
    for (mix, &d) in c.cod.iter().enumerate() {
        by_dom[d as usize].push(mix as u32);
    }
    let carrier = Arc::new(Carrier {
        objects: c.objects.clone(),
        obj_lookup: c.obj_lookup.clone(),
        morphisms: c.morphisms.clone(),
        mor_lookup: c.mor_lookup.clone(),
        labels: c.labels.clone(),
        dom: c.cod.clone(),
        cod: c.dom.clone(),
        identity: c.identity.clone(),
        is_identity: c.is_identity.clone(),
        by_dom,
    });
    let mut entries: Vec<(u32, u32, u32)> = Vec::with_capacity(cat.comp_entries.len());
    for f in 0..cat.mor_count() as u32 {
        let (lo, hi) =
            (cat.comp_start[f as usize] as usize, cat.comp_start[f as usize + 1] as usize);
        for &(g, h) in &cat.comp_entries[lo..hi] {
            entries.push((g, f, h));
        }
    }
    FinCategory::assemble(carrier, entries, cat.null_object)
}

// ---------------------------------------------------------------------------
// Free category on an acyclic quiver
// ---------------------------------------------------------------------------

/// A finite directed multigraph: the generating data for a free category.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Quiver {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeDecl>,
}

/// One quiver edge, optionally labelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDecl {
    pub id: String,
    pub source: String,
    pub target: String,
    pub label: Option<String>,
}

impl EdgeDecl {
    pub fn new(
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        EdgeDecl { id: id.into(), source: source.into(), target: target.into(), label: None }
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// Hard cap on the number of path morphisms the free construction will
/// enumerate before giving up with [`Error::BudgetExceeded`].
pub const MAX_FREE_MORPHISMS: usize = 250_000;

/// The free category on an acyclic quiver: objects are nodes, morphisms are
/// identities plus every directed path, and composition is concatenation.
///
/// Path morphisms are named by joining their edge identifiers with `_`, so a
/// single edge keeps its own name and the path `e0` then `e1` is `e0_e1`;
/// identities are named `id_<node>`.  A name collision with a declared edge
/// surfaces as [`Error::DuplicateId`].  Cyclic quivers are rejected with
/// [`Error::CyclicQuiver`] carrying one witness cycle.
pub fn free_category(quiver: &Quiver) -> Result<FinCategory> {
    // Local index maps (the category construction re-validates ids).
    let mut node_ix: BTreeMap<&str, usize> = BTreeMap::new();
    for n in &quiver.nodes {
        validate_ident(n, "quiver node")?;
        if node_ix.insert(n.as_str(), node_ix.len()).is_some() {
            return Err(Error::DuplicateId { id: n.clone(), context: "quiver nodes".into() });
        }
    }
    let mut edge_ids: BTreeSet<&str> = BTreeSet::new();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); quiver.nodes.len()];
    let mut edge_ends: Vec<(usize, usize)> = Vec::with_capacity(quiver.edges.len());
    for (eix, e) in quiver.edges.iter().enumerate() {
        validate_ident(&e.id, "quiver edge")?;
        if !edge_ids.insert(e.id.as_str()) {
            return Err(Error::DuplicateId { id: e.id.clone(), context: "quiver edges".into() });
        }
        let s = *node_ix.get(e.source.as_str()).ok_or_else(|| Error::DanglingReference {
            id: e.source.clone(),
            context: format!("source of edge `{}`", e.id),
        })?;
        let t = *node_ix.get(e.target.as_str()).ok_or_else(|| Error::DanglingReference {
            id: e.target.clone(),
            context: format!("target of edge `{}`", e.id),
        })?;
        out_edges[s].push(eix);
        edge_ends.push((s, t));
    }

    detect_cycle(quiver, &out_edges, &edge_ends)?;

    // Enumerate all nonempty paths by depth-first extension.  Acyclicity
    // bounds the search; the explicit cap guards against path blow-up.
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for start in 0..quiver.nodes.len() {
        let mut stack: Vec<Vec<usize>> = out_edges[start].iter().map(|&e| vec![e]).collect();
        // Reverse so that shorter/earlier edges pop first; order does not
        // matter for correctness (morphisms are sorted by name later).
        stack.reverse();
        while let Some(path) = stack.pop() {
            if paths.len() >= MAX_FREE_MORPHISMS {
                return Err(Error::BudgetExceeded {
                    budget: MAX_FREE_MORPHISMS as u64,
                    context: "free category path enumeration".into(),
                });
            }
            let end = edge_ends[*path.last().unwrap()].1;
            for &e in &out_edges[end] {
                let mut longer = path.clone();
                longer.push(e);
                stack.push(longer);
            }
            paths.push(path);
        }
    }

    let path_name = |path: &[usize]| -> String {
        path.iter().map(|&e| quiver.edges[e].id.as_str()).collect::<Vec<_>>().join("_")
    };

    let mut morphisms: Vec<MorDecl> = Vec::with_capacity(paths.len());
    let mut name_of_path: BTreeMap<Vec<usize>, String> = BTreeMap::new();
    for path in &paths {
        let name = path_name(path);
        let (s, _) = edge_ends[path[0]];
        let (_, t) = edge_ends[*path.last().unwrap()];
        let label = if path.len() == 1 { quiver.edges[path[0]].label.clone() } else { None };
        morphisms.push(MorDecl {
            id: name.clone(),
            dom: quiver.nodes[s].clone(),
            cod: quiver.nodes[t].clone(),
            label,
        });
        name_of_path.insert(path.clone(), name);
    }

    // Composition: concatenation of paths, plus identity absorption.
    let mut comp: Vec<CompDecl> = Vec::new();
    let mut paths_from: Vec<Vec<usize>> = vec![Vec::new(); quiver.nodes.len()];
    for (pix, path) in paths.iter().enumerate() {
        paths_from[edge_ends[path[0]].0].push(pix);
    }
    for (pix, p) in paths.iter().enumerate() {
        let p_end = edge_ends[*p.last().unwrap()].1;
        for &qix in &paths_from[p_end] {
            let q = &paths[qix];
            let mut joined = p.clone();
            joined.extend_from_slice(q);
            comp.push(CompDecl {
                first: name_of_path[p].clone(),
                then: name_of_path[q].clone(),
                result: name_of_path[&joined].clone(),
            });
        }
        let id_dom = format!("id_{}", quiver.nodes[edge_ends[p[0]].0]);
        let id_cod = format!("id_{}", quiver.nodes[p_end]);
        comp.push(CompDecl::new(id_dom, name_of_path[p].clone(), name_of_path[p].clone()));
        comp.push(CompDecl::new(name_of_path[p].clone(), id_cod, name_of_path[p].clone()));
        let _ = pix;
    }
    for node in &quiver.nodes {
        let id = format!("id_{node}");
        comp.push(CompDecl::new(id.clone(), id.clone(), id));
    }

    FinCategory::new(
        CategoryDecl {
            objects: quiver.nodes.clone(),
            morphisms,
            identities: BTreeMap::new(),
            comp,
            null_object: None,
        }
        .with_default_identities(),
    )
}

/// Kahn's algorithm; on failure extracts one concrete cycle for the error.
fn detect_cycle(
    quiver: &Quiver,
    out_edges: &[Vec<usize>],
    edge_ends: &[(usize, usize)],
) -> Result<()> {
    let n = quiver.nodes.len();
    let mut indegree = vec![0usize; n];
    for &(_, t) in edge_ends {
        indegree[t] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut removed = 0usize;
    while let Some(v) = queue.pop() {
        removed += 1;
        for &e in &out_edges[v] {
            let t = edge_ends[e].1;
            indegree[t] -= 1;
            if indegree[t] == 0 {
                queue.push(t);
            }
        }
    }
    if removed == n {
        return Ok(());
    }
    // Walk forward inside the residual graph until a node repeats.
    let start = (0..n).find(|&v| indegree[v] > 0).expect("residual node exists");
    let mut seen_at: BTreeMap<usize, usize> = BTreeMap::new();
    let mut walk = vec![start];
    let mut cur = start;
    loop {
        if let Some(&pos) = seen_at.get(&cur) {
            let cycle: Vec<String> = walk[pos..].iter().map(|&v| quiver.nodes[v].clone()).collect();
            return Err(Error::CyclicQuiver { cycle });
        }
        seen_at.insert(cur, walk.len() - 1);
        let next = out_edges[cur]
            .iter()
            .map(|&e| edge_ends[e].1)
            .find(|&t| indegree[t] > 0)
            .expect("residual graph has no sink");
        walk.push(next);
        cur = next;
    }
}
