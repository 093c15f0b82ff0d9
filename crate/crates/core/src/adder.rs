//! Numeral-addition categories and the cogwheel machines that realize them.
//!
//! These are the workhorse fixtures: an abstract category whose objects are
//! numerals (singly and in pairs) and whose non-identity morphisms perform
//! addition; a multi-base variant whose copies are glued by base-conversion
//! arrows; and a mechanical transition system (a crank-driven register pair)
//! whose free category is isomorphic to the single-base adder.
//!
//! Naming scheme, with digit strings always rendered in the owning numeral's
//! base, most significant digit first, `0` for zero and no leading zeros:
//!
//! * single numeral objects `n<digits>`, pair objects `p<left>_<right>`,
//!   addition morphisms `add_<left>_<right>`, identities `id_<object>`;
//! * in a multi-base category every id carries a `b<base>_` prefix, and the
//!   glue morphisms are `conv_b<hi>_b<lo>_<object>` (digits in the source
//!   base) and `cross_b<hi>_b<lo>_<left>_<right>`;
//! * cogwheel states are `in_<left>_<right>` and `out_<digits>`, and its
//!   transitions `crank_<left>_<right>`, all optionally prefixed.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::{CategoryDecl, CompDecl, FinCategory, MorDecl, MorId, ObjId};
use crate::error::{Error, Result};
use crate::functor::{Functor, FunctorDecl};
use crate::lts::{TransitionDecl, TransitionSystem};
use crate::nattrans::NatTrans;

/// Supported numeral bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    Binary,
    Octal,
    Decimal,
}

impl Base {
    /// The radix.
    pub fn radix(self) -> u64 {
        match self {
            Base::Binary => 2,
            Base::Octal => 8,
            Base::Decimal => 10,
        }
    }

    /// Maximum register width (in digits) a builder accepts for this base.
    /// The caps keep every generated category comfortably enumerable.
    pub fn width_cap(self) -> u32 {
        match self {
            Base::Binary => 8,
            Base::Octal => 4,
            Base::Decimal => 3,
        }
    }

    /// Renders `value` in this base, most significant digit first.
    pub fn digits(self, value: u64) -> String {
        if value == 0 {
            return "0".into();
        }
        let radix = self.radix();
        let mut out = Vec::new();
        let mut v = value;
        while v > 0 {
            out.push(char::from(b'0' + (v % radix) as u8));
            v /= radix;
        }
        out.iter().rev().collect()
    }

    /// Parses a canonical digit string (as produced by [`Base::digits`]).
    pub fn parse_digits(self, s: &str) -> Option<u64> {
        if s.is_empty() || (s.len() > 1 && s.starts_with('0')) {
            return None;
        }
        let radix = self.radix();
        let mut v: u64 = 0;
        for c in s.chars() {
            let d = c.to_digit(10)? as u64;
            if d >= radix {
                return None;
            }
            v = v.checked_mul(radix)?.checked_add(d)?;
        }
        Some(v)
    }

    /// How many digits `value` occupies in this base.
    pub fn digits_needed(self, value: u64) -> u32 {
        self.digits(value).len() as u32
    }
}

impl TryFrom<u64> for Base {
    type Error = Error;

    fn try_from(radix: u64) -> Result<Base> {
        match radix {
            2 => Ok(Base::Binary),
            8 => Ok(Base::Octal),
            10 => Ok(Base::Decimal),
            other => Err(Error::ValueMismatch {
                detail: format!("unsupported base {other} (expected 2, 8 or 10)"),
            }),
        }
    }
}

/// What a numeral object denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NumeralKind {
    Single(u64),
    Pair(u64, u64),
}

/// A numeral annotated with its base; knows its display and object-id forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Numeral {
    pub base: Base,
    pub kind: NumeralKind,
}

impl Numeral {
    pub fn single(base: Base, value: u64) -> Numeral {
        Numeral { base, kind: NumeralKind::Single(value) }
    }

    pub fn pair(base: Base, left: u64, right: u64) -> Numeral {
        Numeral { base, kind: NumeralKind::Pair(left, right) }
    }

    /// Human display form: `15` or `6,9`.
    pub fn digit_string(&self) -> String {
        match self.kind {
            NumeralKind::Single(v) => self.base.digits(v),
            NumeralKind::Pair(x, y) => format!("{},{}", self.base.digits(x), self.base.digits(y)),
        }
    }

    /// Identifier-safe object name: `n15` or `p6_9` (no base prefix).
    pub fn object_name(&self) -> String {
        match self.kind {
            NumeralKind::Single(v) => format!("n{}", self.base.digits(v)),
            NumeralKind::Pair(x, y) => {
                format!("p{}_{}", self.base.digits(x), self.base.digits(y))
            }
        }
    }
}

fn ensure_width(base: Base, width: u32) -> Result<u64> {
    if width == 0 || width > base.width_cap() {
        return Err(Error::WidthOverflow {
            base: base.radix() as u32,
            width,
            cap: base.width_cap(),
        });
    }
    Ok(base.radix().pow(width))
}

/// A single-base addition category.
///
/// Objects: one `n<v>` per value `v < base^width` and one `p<x>_<y>` per pair
/// with `x + y < base^width` (so every addition stays in range).  Non-identity
/// morphisms: `add_<x>_<y>: p<x>_<y> -> n<x+y>`.  The composition table is the
/// full closure (identity absorptions only — no two additions ever compose).
#[derive(Debug, Clone)]
pub struct AdderCategory {
    pub category: Arc<FinCategory>,
    pub base: Base,
    pub width: u32,
    bound: u64,
}

impl AdderCategory {
    /// Exclusive upper bound on representable values (`base^width`).
    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Object holding the single value `v`, if representable.
    pub fn single_obj(&self, v: u64) -> Option<ObjId> {
        (v < self.bound).then(|| Numeral::single(self.base, v).object_name().into())
    }

    /// Object holding the input pair `(x, y)`, if the sum stays in range.
    pub fn pair_obj(&self, x: u64, y: u64) -> Option<ObjId> {
        (x.checked_add(y)? < self.bound)
            .then(|| Numeral::pair(self.base, x, y).object_name().into())
    }

    /// The addition morphism on `(x, y)`, if the sum stays in range.
    pub fn add_mor(&self, x: u64, y: u64) -> Option<MorId> {
        (x.checked_add(y)? < self.bound)
            .then(|| format!("add_{}_{}", self.base.digits(x), self.base.digits(y)).into())
    }
}

/// Builds the single-base addition category for `base^width` values.
pub fn build_adder_category(base: Base, width: u32) -> Result<AdderCategory> {
    let bound = ensure_width(base, width)?;
    let mut decl = CategoryDecl::default();
    for v in 0..bound {
        decl.objects.push(Numeral::single(base, v).object_name());
    }
    for x in 0..bound {
        for y in 0..bound - x {
            decl.objects.push(Numeral::pair(base, x, y).object_name());
        }
    }
    for x in 0..bound {
        for y in 0..bound - x {
            let pair = Numeral::pair(base, x, y).object_name();
            let sum = Numeral::single(base, x + y).object_name();
            let add = format!("add_{}_{}", base.digits(x), base.digits(y));
            decl.comp.push(CompDecl::new(format!("id_{pair}"), &add, &add));
            decl.comp.push(CompDecl::new(&add, format!("id_{sum}"), &add));
            decl.morphisms.push(MorDecl::new(add, pair, sum).labelled("add"));
        }
    }
    for obj in &decl.objects {
        decl.comp.push(CompDecl::new(
            format!("id_{obj}"),
            format!("id_{obj}"),
            format!("id_{obj}"),
        ));
    }
    let decl = decl.with_default_identities();
    Ok(AdderCategory { category: Arc::new(FinCategory::new(decl)?), base, width, bound })
}

/// A multi-base addition category: one copy of the adder per base, all over
/// the *same* value range (`bases[0]^width`), glued by conversion arrows.
///
/// Conversions run from earlier to later bases in `bases`: for `i < j` every
/// object of copy `i` has exactly one arrow `conv_b<i>_b<j>_<object>` to the
/// value-equal object of copy `j`, and every pair additionally has the
/// composite `cross_b<i>_b<j>_<x>_<y>` ("add, then convert" = "convert, then
/// add") to the value-equal single of copy `j`.
#[derive(Debug, Clone)]
pub struct CombinedAdder {
    pub category: Arc<FinCategory>,
    pub bases: Vec<Base>,
    /// Width of `bases[0]`; later bases render the same values in their own
    /// digits.
    pub width: u32,
    bound: u64,
}

impl CombinedAdder {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    fn base_pos(&self, base: Base) -> Option<usize> {
        self.bases.iter().position(|b| *b == base)
    }

    fn prefixed(&self, base: Base, name: String) -> String {
        format!("b{}_{name}", base.radix())
    }

    pub fn single_obj(&self, base: Base, v: u64) -> Option<ObjId> {
        self.base_pos(base)?;
        (v < self.bound).then(|| self.prefixed(base, Numeral::single(base, v).object_name()).into())
    }

    pub fn pair_obj(&self, base: Base, x: u64, y: u64) -> Option<ObjId> {
        self.base_pos(base)?;
        (x.checked_add(y)? < self.bound)
            .then(|| self.prefixed(base, Numeral::pair(base, x, y).object_name()).into())
    }

    pub fn add_mor(&self, base: Base, x: u64, y: u64) -> Option<MorId> {
        self.base_pos(base)?;
        (x.checked_add(y)? < self.bound).then(|| {
            self.prefixed(base, format!("add_{}_{}", base.digits(x), base.digits(y))).into()
        })
    }

    /// Conversion arrow on a numeral object; `hi` must precede `lo` in
    /// `bases` and the numeral must be in range.
    pub fn conv_mor(&self, hi: Base, lo: Base, kind: NumeralKind) -> Option<MorId> {
        if self.base_pos(hi)? >= self.base_pos(lo)? {
            return None;
        }
        let in_range = match kind {
            NumeralKind::Single(v) => v < self.bound,
            NumeralKind::Pair(x, y) => x.checked_add(y)? < self.bound,
        };
        in_range.then(|| {
            format!(
                "conv_b{}_b{}_{}",
                hi.radix(),
                lo.radix(),
                Numeral { base: hi, kind }.object_name()
            )
            .into()
        })
    }

    /// The add-then-convert composite on a pair.
    pub fn cross_mor(&self, hi: Base, lo: Base, x: u64, y: u64) -> Option<MorId> {
        if self.base_pos(hi)? >= self.base_pos(lo)? {
            return None;
        }
        (x.checked_add(y)? < self.bound).then(|| {
            format!("cross_b{}_b{}_{}_{}", hi.radix(), lo.radix(), hi.digits(x), hi.digits(y))
                .into()
        })
    }

    /// Decodes an object name back into its base and denotation.
    pub fn decode_object(&self, name: &str) -> Option<Numeral> {
        let rest = name.strip_prefix('b')?;
        let (radix, body) = rest.split_once('_')?;
        let base = Base::try_from(radix.parse::<u64>().ok()?).ok()?;
        self.base_pos(base)?;
        if let Some(digits) = body.strip_prefix('n') {
            let v = base.parse_digits(digits)?;
            (v < self.bound).then(|| Numeral::single(base, v))
        } else if let Some(pair) = body.strip_prefix('p') {
            let (l, r) = pair.split_once('_')?;
            let x = base.parse_digits(l)?;
            let y = base.parse_digits(r)?;
            (x.checked_add(y)? < self.bound).then(|| Numeral::pair(base, x, y))
        } else {
            None
        }
    }
}

/// Builds the glued multi-base category.  All copies share the value range
/// of `bases[0]`; every base must be able to render the largest value within
/// its own width cap.
pub fn build_combined_adder(bases: &[Base], width: u32) -> Result<CombinedAdder> {
    if bases.is_empty() {
        return Err(Error::ValueMismatch { detail: "at least one base is required".into() });
    }
    for (i, b) in bases.iter().enumerate() {
        if bases[..i].contains(b) {
            return Err(Error::DuplicateId {
                id: format!("b{}", b.radix()),
                context: "combined adder bases".into(),
            });
        }
    }
    let bound = ensure_width(bases[0], width)?;
    for b in &bases[1..] {
        let needed = b.digits_needed(bound - 1);
        if needed > b.width_cap() {
            return Err(Error::WidthOverflow {
                base: b.radix() as u32,
                width: needed,
                cap: b.width_cap(),
            });
        }
    }

    let combined =
        CombinedAdder { category: Arc::new(dummy_category()), bases: bases.to_vec(), width, bound };
    let singles = 0..bound;
    let pairs = || (0..bound).flat_map(|x| (0..bound - x).map(move |y| (x, y)));

    let mut decl = CategoryDecl::default();
    let mut comp: Vec<CompDecl> = Vec::new();
    // Per-base copies.
    for &base in bases {
        for v in singles.clone() {
            decl.objects.push(obj(&combined, base, NumeralKind::Single(v)));
        }
        for (x, y) in pairs() {
            decl.objects.push(obj(&combined, base, NumeralKind::Pair(x, y)));
        }
        for (x, y) in pairs() {
            let pair = obj(&combined, base, NumeralKind::Pair(x, y));
            let sum = obj(&combined, base, NumeralKind::Single(x + y));
            let add: String = combined.add_mor(base, x, y).unwrap().into();
            comp.push(CompDecl::new(format!("id_{pair}"), &add, &add));
            comp.push(CompDecl::new(&add, format!("id_{sum}"), &add));
            decl.morphisms.push(MorDecl::new(add, pair, sum).labelled("add"));
        }
    }
    // Glue: conversions and crosses for every ordered base pair.
    for (i, &hi) in bases.iter().enumerate() {
        for &lo in &bases[i + 1..] {
            for v in singles.clone() {
                push_conv(&combined, &mut decl, &mut comp, hi, lo, NumeralKind::Single(v));
            }
            for (x, y) in pairs() {
                push_conv(&combined, &mut decl, &mut comp, hi, lo, NumeralKind::Pair(x, y));
                let cross: String = combined.cross_mor(hi, lo, x, y).unwrap().into();
                let dom = obj(&combined, hi, NumeralKind::Pair(x, y));
                let cod = obj(&combined, lo, NumeralKind::Single(x + y));
                comp.push(CompDecl::new(format!("id_{dom}"), &cross, &cross));
                comp.push(CompDecl::new(&cross, format!("id_{cod}"), &cross));
                // add then convert, and convert then add, both give the cross.
                comp.push(CompDecl::new(
                    combined.add_mor(hi, x, y).unwrap(),
                    combined.conv_mor(hi, lo, NumeralKind::Single(x + y)).unwrap(),
                    &cross,
                ));
                comp.push(CompDecl::new(
                    combined.conv_mor(hi, lo, NumeralKind::Pair(x, y)).unwrap(),
                    combined.add_mor(lo, x, y).unwrap(),
                    &cross,
                ));
                decl.morphisms.push(MorDecl::new(cross, dom, cod).labelled("cross"));
            }
        }
    }
    // Glue-of-glue: conversion chains and conversion/cross rewrites across
    // three bases.
    for (i, &hi) in bases.iter().enumerate() {
        for (j, &mid) in bases.iter().enumerate().skip(i + 1) {
            for &lo in &bases[j + 1..] {
                for v in singles.clone() {
                    let k = NumeralKind::Single(v);
                    comp.push(CompDecl::new(
                        combined.conv_mor(hi, mid, k).unwrap(),
                        combined.conv_mor(mid, lo, k).unwrap(),
                        combined.conv_mor(hi, lo, k).unwrap(),
                    ));
                }
                for (x, y) in pairs() {
                    let k = NumeralKind::Pair(x, y);
                    comp.push(CompDecl::new(
                        combined.conv_mor(hi, mid, k).unwrap(),
                        combined.conv_mor(mid, lo, k).unwrap(),
                        combined.conv_mor(hi, lo, k).unwrap(),
                    ));
                    comp.push(CompDecl::new(
                        combined.conv_mor(hi, mid, k).unwrap(),
                        combined.cross_mor(mid, lo, x, y).unwrap(),
                        combined.cross_mor(hi, lo, x, y).unwrap(),
                    ));
                    comp.push(CompDecl::new(
                        combined.cross_mor(hi, mid, x, y).unwrap(),
                        combined.conv_mor(mid, lo, NumeralKind::Single(x + y)).unwrap(),
                        combined.cross_mor(hi, lo, x, y).unwrap(),
                    ));
                }
            }
        }
    }
    for o in &decl.objects {
        comp.push(CompDecl::new(format!("id_{o}"), format!("id_{o}"), format!("id_{o}")));
    }
    decl.comp = comp;
    let decl = decl.with_default_identities();
    Ok(CombinedAdder { category: Arc::new(FinCategory::new(decl)?), ..combined })
}

fn obj(c: &CombinedAdder, base: Base, kind: NumeralKind) -> String {
    c.prefixed(base, Numeral { base, kind }.object_name())
}

fn push_conv(
    c: &CombinedAdder,
    decl: &mut CategoryDecl,
    comp: &mut Vec<CompDecl>,
    hi: Base,
    lo: Base,
    kind: NumeralKind,
) {
    let conv: String = c.conv_mor(hi, lo, kind).unwrap().into();
    let dom = obj(c, hi, kind);
    let cod = obj(c, lo, kind);
    comp.push(CompDecl::new(format!("id_{dom}"), &conv, &conv));
    comp.push(CompDecl::new(&conv, format!("id_{cod}"), &conv));
    decl.morphisms.push(MorDecl::new(conv, dom, cod).labelled("conv"));
}

fn dummy_category() -> FinCategory {
    FinCategory::new(CategoryDecl::default()).expect("empty category")
}

/// The base-conversion natural transformation between two readouts of the
/// same source into a combined category.
///
/// `f_hi` must send every source object to a copy-`hi` object and `f_lo` to
/// the value-equal copy-`lo` object; the component at each source object is
/// then the conversion arrow between the two images.  Value disagreements
/// are reported as [`Error::ValueMismatch`].
pub fn base_conversion_nat_trans(
    combined: &CombinedAdder,
    hi: Base,
    lo: Base,
    f_hi: &Functor,
    f_lo: &Functor,
) -> Result<NatTrans> {
    let (hi_pos, lo_pos) = match (combined.base_pos(hi), combined.base_pos(lo)) {
        (Some(h), Some(l)) => (h, l),
        _ => {
            return Err(Error::ValueMismatch {
                detail: "both bases must belong to the combined category".into(),
            })
        }
    };
    if hi_pos >= lo_pos {
        return Err(Error::ValueMismatch {
            detail: format!(
                "conversion arrows run from b{} to b{} only",
                combined.bases[hi_pos.min(lo_pos)].radix(),
                combined.bases[hi_pos.max(lo_pos)].radix()
            ),
        });
    }
    for (role, f) in [("first", f_hi), ("second", f_lo)] {
        if f.dst() != &combined.category {
            return Err(Error::ValueMismatch {
                detail: format!("the {role} functor does not land in the combined category"),
            });
        }
    }
    let mut components = BTreeMap::new();
    for o in f_hi.src().objects() {
        let img_hi = f_hi.obj_image(o.as_ref())?;
        let num = match combined.decode_object(img_hi.as_ref()) {
            Some(n) if n.base == hi => n,
            _ => {
                return Err(Error::ValueMismatch {
                    detail: format!(
                        "image of `{o}` under the first functor, `{img_hi}`, is not a b{} numeral",
                        hi.radix()
                    ),
                })
            }
        };
        let img_lo = f_lo.obj_image(o.as_ref())?;
        let want: ObjId = obj(combined, lo, num.kind).into();
        if img_lo != &want {
            return Err(Error::ValueMismatch {
                detail: format!(
                    "images of `{o}` disagree: `{img_hi}` denotes {} but the second functor gives `{img_lo}` (expected `{want}`)",
                    num.digit_string()
                ),
            });
        }
        components.insert(
            o.to_string(),
            combined.conv_mor(hi, lo, num.kind).expect("in-range conversion").into(),
        );
    }
    NatTrans::new(f_hi.clone(), f_lo.clone(), components)
}

/// A crank-driven register machine presented as a transition system: one
/// input state per digit pair, one output state per representable sum, and a
/// `crank` transition performing the addition.  `prefix` (possibly empty) is
/// prepended to every state and transition id, so several instances can
/// coexist in one workspace.
pub fn cogwheel_lts_prefixed(base: Base, width: u32, prefix: &str) -> Result<TransitionSystem> {
    let bound = ensure_width(base, width)?;
    let mut ts = TransitionSystem {
        metadata: format!("cogwheel adder, base {}, width {width}", base.radix()),
        ..Default::default()
    };
    for (x, y) in (0..bound).flat_map(|x| (0..bound - x).map(move |y| (x, y))) {
        ts.states.push(format!("{prefix}in_{}_{}", base.digits(x), base.digits(y)));
    }
    for v in 0..bound {
        ts.states.push(format!("{prefix}out_{}", base.digits(v)));
    }
    for (x, y) in (0..bound).flat_map(|x| (0..bound - x).map(move |y| (x, y))) {
        ts.transitions.push(
            TransitionDecl::new(
                format!("{prefix}crank_{}_{}", base.digits(x), base.digits(y)),
                format!("{prefix}in_{}_{}", base.digits(x), base.digits(y)),
                format!("{prefix}out_{}", base.digits(x + y)),
            )
            .labelled("crank"),
        );
    }
    Ok(ts)
}

/// [`cogwheel_lts_prefixed`] with no prefix.
pub fn cogwheel_lts(base: Base, width: u32) -> Result<TransitionSystem> {
    cogwheel_lts_prefixed(base, width, "")
}

/// Everything needed to state the canonical adder claim: the cogwheel
/// machine, its free category, the abstract adder, and the mutually inverse
/// readout (`encode`) and implementation (`decode`) functors.
#[derive(Debug, Clone)]
pub struct AdderClaimParts {
    pub lts: TransitionSystem,
    pub phys: Arc<FinCategory>,
    pub abs: Arc<FinCategory>,
    pub encode: Functor,
    pub decode: Functor,
    pub adder: AdderCategory,
}

/// Builds the canonical single-base adder claim.
pub fn adder_claim_parts(base: Base, width: u32) -> Result<AdderClaimParts> {
    let adder = build_adder_category(base, width)?;
    let lts = cogwheel_lts(base, width)?;
    let phys = Arc::new(crate::lts::lts_to_category(&lts, crate::lts::LtsMode::FreeAcyclic)?);
    let abs = Arc::clone(&adder.category);
    let bound = adder.bound();

    let mut enc = FunctorDecl::default();
    let mut dec = FunctorDecl::default();
    for v in 0..bound {
        let out = format!("out_{}", base.digits(v));
        let n = Numeral::single(base, v).object_name();
        enc.obj_map.insert(out.clone(), n.clone());
        dec.obj_map.insert(n, out);
    }
    for (x, y) in (0..bound).flat_map(|x| (0..bound - x).map(move |y| (x, y))) {
        let digits = format!("{}_{}", base.digits(x), base.digits(y));
        enc.obj_map.insert(format!("in_{digits}"), format!("p{digits}"));
        dec.obj_map.insert(format!("p{digits}"), format!("in_{digits}"));
        enc.mor_map.insert(format!("crank_{digits}"), format!("add_{digits}"));
        dec.mor_map.insert(format!("add_{digits}"), format!("crank_{digits}"));
    }
    let encode = Functor::new(Arc::clone(&phys), Arc::clone(&abs), enc.clone())?
        .with_theory(format!("base-{} addition", base.radix()));
    let decode = Functor::new(Arc::clone(&abs), Arc::clone(&phys), dec)?;
    Ok(AdderClaimParts { lts, phys, abs, encode, decode, adder })
}

/// A realization whose readout is faithful only up to base conversion: the
/// machine is a *binary* cogwheel, the abstract side is the combined
/// binary+decimal category, and the readout lands in the decimal copy.  The
/// implementation functor collapses both copies back onto the machine, so
/// the pair is not mutually inverse — but the conversion arrows supply a
/// unit making the relaxed (adjunction) criterion succeed.
#[derive(Debug, Clone)]
pub struct RealizabilityParts {
    pub lts: TransitionSystem,
    pub phys: Arc<FinCategory>,
    pub abs: Arc<FinCategory>,
    /// Readout into the decimal copy.
    pub r: Functor,
    /// Implementation collapsing both copies onto the machine.
    pub rt: Functor,
    pub combined: CombinedAdder,
}

/// Builds the binary-machine / combined-category realization for `width`
/// binary digits.
pub fn binary_realization_of_decimal(width: u32) -> Result<RealizabilityParts> {
    let combined = build_combined_adder(&[Base::Binary, Base::Decimal], width)?;
    let lts = cogwheel_lts(Base::Binary, width)?;
    let phys = Arc::new(crate::lts::lts_to_category(&lts, crate::lts::LtsMode::FreeAcyclic)?);
    let abs = Arc::clone(&combined.category);
    let bound = combined.bound();
    let pairs = || (0..bound).flat_map(|x| (0..bound - x).map(move |y| (x, y)));

    let mut r = FunctorDecl::default();
    let mut rt = FunctorDecl::default();
    for v in 0..bound {
        let out = format!("out_{}", Base::Binary.digits(v));
        r.obj_map.insert(out.clone(), combined.single_obj(Base::Decimal, v).unwrap().into());
        for &base in &combined.bases {
            rt.obj_map.insert(combined.single_obj(base, v).unwrap().into(), out.clone());
            rt.mor_map.insert(
                combined
                    .conv_mor(Base::Binary, Base::Decimal, NumeralKind::Single(v))
                    .unwrap()
                    .into(),
                format!("id_{out}"),
            );
        }
    }
    for (x, y) in pairs() {
        let digits = format!("{}_{}", Base::Binary.digits(x), Base::Binary.digits(y));
        let inp = format!("in_{digits}");
        let crank = format!("crank_{digits}");
        r.obj_map.insert(inp.clone(), combined.pair_obj(Base::Decimal, x, y).unwrap().into());
        r.mor_map.insert(crank.clone(), combined.add_mor(Base::Decimal, x, y).unwrap().into());
        for &base in &combined.bases {
            rt.obj_map.insert(combined.pair_obj(base, x, y).unwrap().into(), inp.clone());
            rt.mor_map.insert(combined.add_mor(base, x, y).unwrap().into(), crank.clone());
        }
        rt.mor_map.insert(
            combined.conv_mor(Base::Binary, Base::Decimal, NumeralKind::Pair(x, y)).unwrap().into(),
            format!("id_{inp}"),
        );
        rt.mor_map.insert(
            combined.cross_mor(Base::Binary, Base::Decimal, x, y).unwrap().into(),
            crank.clone(),
        );
    }
    let r = Functor::new(Arc::clone(&phys), Arc::clone(&abs), r)?.with_theory("decimal addition");
    let rt = Functor::new(Arc::clone(&abs), Arc::clone(&phys), rt)?;
    Ok(RealizabilityParts { lts, phys, abs, r, rt, combined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjunction::find_unit_counit;
    use crate::category::check_category_laws;
    use crate::error::Limits;
    use crate::functor::{check_functor_laws, check_inverse_pair};
    use crate::nattrans::check_naturality;

    #[test]
    fn digit_rendering_round_trips() {
        assert_eq!(Base::Decimal.digits(0), "0");
        assert_eq!(Base::Decimal.digits(15), "15");
        assert_eq!(Base::Binary.digits(6), "110");
        assert_eq!(Base::Octal.digits(64), "100");
        for base in [Base::Binary, Base::Octal, Base::Decimal] {
            for v in 0..300 {
                assert_eq!(base.parse_digits(&base.digits(v)), Some(v));
            }
            assert_eq!(base.parse_digits("01"), None);
            assert_eq!(base.parse_digits(""), None);
        }
        assert_eq!(Base::Binary.parse_digits("102"), None);
    }

    #[test]
    fn decimal_width_two_adder_has_the_expected_census() {
        let adder = build_adder_category(Base::Decimal, 2).unwrap();
        let cat = &adder.category;
        // 100 singles + 5050 pairs; identities + 5050 additions.
        assert_eq!(cat.obj_count(), 5150);
        assert_eq!(cat.mor_count(), 10200);
        assert_eq!(cat.comp_len(), 15250);
        assert_eq!(adder.pair_obj(6, 9).unwrap().as_ref(), "p6_9");
        assert_eq!(adder.single_obj(15).unwrap().as_ref(), "n15");
        assert_eq!(adder.add_mor(6, 9).unwrap().as_ref(), "add_6_9");
        assert_eq!(adder.pair_obj(60, 40), None);
        assert_eq!(cat.compose("add_6_9", "id_n15").unwrap(), "add_6_9");
    }

    #[test]
    fn small_adders_satisfy_the_laws() {
        for (base, width) in [(Base::Binary, 3), (Base::Octal, 1), (Base::Decimal, 1)] {
            let adder = build_adder_category(base, width).unwrap();
            let report = check_category_laws(&adder.category, Limits::default());
            assert!(report.ok, "base {} width {width}: {:?}", base.radix(), report.violations);
        }
    }

    #[test]
    fn width_caps_are_enforced() {
        assert!(matches!(
            build_adder_category(Base::Decimal, 4),
            Err(Error::WidthOverflow { base: 10, width: 4, cap: 3 })
        ));
        assert!(matches!(build_adder_category(Base::Binary, 0), Err(Error::WidthOverflow { .. })));
        // A combined category must also respect the caps of the later bases:
        // 8 binary digits reach 255, which needs 3 octal digits (fine) but
        // would need 8 binary digits in the octal cap check only if octal
        // were first.  Decimal at width 3 reaches 999, needing 10 binary
        // digits — over the binary cap.
        assert!(matches!(
            build_combined_adder(&[Base::Decimal, Base::Binary], 3),
            Err(Error::WidthOverflow { base: 2, width: 10, cap: 8 })
        ));
    }

    #[test]
    fn combined_binary_decimal_category_is_lawful_and_closed() {
        let combined = build_combined_adder(&[Base::Binary, Base::Decimal], 2).unwrap();
        let cat = &combined.category;
        // Per copy: 4 singles + 10 pairs objects, 14 identities + 10 adds.
        // Glue: 14 conversions + 10 crosses.
        assert_eq!(cat.obj_count(), 28);
        assert_eq!(cat.mor_count(), 72);
        let report = check_category_laws(cat, Limits::default());
        assert!(report.ok, "{:?}", report.violations);
        // add then convert = convert then add = cross.
        assert_eq!(cat.compose("b2_add_10_1", "conv_b2_b10_n11").unwrap(), "cross_b2_b10_10_1");
        assert_eq!(cat.compose("conv_b2_b10_p10_1", "b10_add_2_1").unwrap(), "cross_b2_b10_10_1");
        assert_eq!(combined.decode_object("b10_n3"), Some(Numeral::single(Base::Decimal, 3)));
        assert_eq!(combined.decode_object("b2_p10_1"), Some(Numeral::pair(Base::Binary, 2, 1)));
        assert_eq!(combined.decode_object("b10_n99"), None);
        assert_eq!(combined.decode_object("zz"), None);
    }

    #[test]
    fn three_base_combination_composes_conversions() {
        let combined =
            build_combined_adder(&[Base::Binary, Base::Octal, Base::Decimal], 2).unwrap();
        let cat = &combined.category;
        let report = check_category_laws(cat, Limits::default());
        assert!(report.ok, "{:?}", report.violations);
        assert_eq!(cat.compose("conv_b2_b8_n11", "conv_b8_b10_n3").unwrap(), "conv_b2_b10_n11");
        assert_eq!(cat.compose("cross_b2_b8_10_1", "conv_b8_b10_n3").unwrap(), "cross_b2_b10_10_1");
    }

    #[test]
    fn cogwheel_free_category_matches_the_adder() {
        let parts = adder_claim_parts(Base::Decimal, 2).unwrap();
        assert_eq!(parts.phys.obj_count(), parts.abs.obj_count());
        assert_eq!(parts.phys.mor_count(), parts.abs.mor_count());
        assert!(check_functor_laws(&parts.encode, Limits::default()).ok);
        assert!(check_functor_laws(&parts.decode, Limits::default()).ok);
        let pair = check_inverse_pair(&parts.encode, &parts.decode, Limits::default()).unwrap();
        assert!(pair.ok(), "{:?}", pair.witnesses);
        assert_eq!(parts.encode.theory(), Some("base-10 addition"));
        assert_eq!(parts.encode.obj_image("in_6_9").unwrap().as_ref(), "p6_9");
        assert_eq!(parts.encode.mor_image("crank_6_9").unwrap().as_ref(), "add_6_9");
    }

    #[test]
    fn prefixed_cogwheels_can_coexist() {
        let a = cogwheel_lts_prefixed(Base::Binary, 1, "left_").unwrap();
        let b = cogwheel_lts_prefixed(Base::Binary, 1, "right_").unwrap();
        let mut merged = a.clone();
        merged.states.extend(b.states.iter().cloned());
        merged.transitions.extend(b.transitions.iter().cloned());
        assert!(merged.validate().is_ok());
        assert!(a.states.contains(&"left_in_0_1".to_string()));
        assert!(b.transitions.iter().any(|t| t.id == "right_crank_0_1"));
    }

    #[test]
    fn conversion_components_form_a_natural_transformation() {
        let parts = binary_realization_of_decimal(2).unwrap();
        // Readout into the *binary* copy, for contrast with `parts.r`.
        let mut hi = FunctorDecl::default();
        for o in parts.phys.objects() {
            let img: String = if let Some(d) = o.as_ref().strip_prefix("out_") {
                let v = Base::Binary.parse_digits(d).unwrap();
                parts.combined.single_obj(Base::Binary, v).unwrap().into()
            } else {
                format!("b2_p{}", o.as_ref().strip_prefix("in_").unwrap())
            };
            hi.obj_map.insert(o.to_string(), img);
        }
        for m in parts.phys.morphisms() {
            if let Some(d) = m.as_ref().strip_prefix("crank_") {
                hi.mor_map.insert(m.to_string(), format!("b2_add_{d}"));
            }
        }
        let f_hi = Functor::new(Arc::clone(&parts.phys), Arc::clone(&parts.abs), hi).unwrap();
        assert!(check_functor_laws(&f_hi, Limits::default()).ok);
        let nt = base_conversion_nat_trans(
            &parts.combined,
            Base::Binary,
            Base::Decimal,
            &f_hi,
            &parts.r,
        )
        .unwrap();
        assert_eq!(nt.component("out_11").unwrap().as_ref(), "conv_b2_b10_n11");
        let report = check_naturality(&nt, Limits::default());
        assert!(report.ok, "{:?}", report.violations);

        // Wrong direction and value-skewed readouts are rejected.
        assert!(matches!(
            base_conversion_nat_trans(
                &parts.combined,
                Base::Decimal,
                Base::Binary,
                &parts.r,
                &f_hi
            ),
            Err(Error::ValueMismatch { .. })
        ));
        let skew = parts.r.clone().with_obj_entry("out_0", "b10_n1").unwrap();
        assert!(matches!(
            base_conversion_nat_trans(&parts.combined, Base::Binary, Base::Decimal, &f_hi, &skew),
            Err(Error::ValueMismatch { .. })
        ));
    }

    #[test]
    fn relaxed_realization_has_unit_and_counit_but_no_inverse() {
        let parts = binary_realization_of_decimal(1).unwrap();
        assert!(check_functor_laws(&parts.r, Limits::default()).ok);
        assert!(check_functor_laws(&parts.rt, Limits::default()).ok);
        let pair = check_inverse_pair(&parts.r, &parts.rt, Limits::default()).unwrap();
        assert!(!pair.ok());
        assert!(pair.witnesses.iter().any(|v| v.subjects[0] == "r∘rt"));
        let found =
            find_unit_counit(&parts.r, &parts.rt, Limits::default().with_candidates(10_000))
                .unwrap()
                .expect("unit and counit exist");
        let (unit, counit) = found;
        assert_eq!(unit.component("b2_n1").unwrap().as_ref(), "conv_b2_b10_n1");
        assert_eq!(unit.component("b10_n1").unwrap().as_ref(), "id_b10_n1");
        assert_eq!(counit.component("out_1").unwrap().as_ref(), "id_out_1");
    }
}
