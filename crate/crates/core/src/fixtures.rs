//! Ready-made specification files: worked examples used by the test suite,
//! the documentation and the command-line `fixtures` generator.
//!
//! Each builder returns a [`SpecFile`] whose canonical rendering parses and
//! verifies on its own.  Builders that take a width validate it through the
//! underlying constructors and pass their errors through.

use std::sync::Arc;

use crate::absproc::{build_comp_category, ProgramDecl};
use crate::adder::{
    adder_claim_parts, base_conversion_nat_trans, binary_realization_of_decimal,
    cogwheel_lts_prefixed, Base,
};
use crate::category::{CompDecl, FinCategory};
use crate::cycle::{Direction, RealizabilityMode};
use crate::dsl::{
    ArrowLine, AuditBlock, CategoryBlock, ClaimBlock, ClaimKind, FunctorBlock, Item, ItemKind,
    LinkBlock, LtsBlock, NatTransBlock, SpecFile,
};
use crate::error::{Limits, Result};
use crate::functor::{Functor, FunctorDecl};
use crate::lts::TransitionSystem;
use crate::nattrans::NatTrans;

fn item(name: &str, kind: ItemKind) -> Item {
    Item { name: name.into(), kind, line: 0 }
}

fn arrow(id: &str, dom: &str, cod: &str, label: Option<&str>) -> ArrowLine {
    ArrowLine { id: id.into(), dom: dom.into(), cod: cod.into(), label: label.map(str::to_string) }
}

/// Projects a category back onto a declaration block, dropping everything
/// resolution fills in again: default-named identities and the
/// identity-absorption rows of the table.
fn category_block(cat: &FinCategory) -> CategoryBlock {
    let mut block = CategoryBlock {
        objects: cat.objects().iter().map(|o| o.to_string()).collect(),
        null_object: cat.null_object().map(|o| o.to_string()),
        ..CategoryBlock::default()
    };
    for obj in cat.objects() {
        let ident = cat.identity_of(obj.as_str()).expect("object exists");
        if ident.as_str() != format!("id_{obj}") {
            block.identities.push((obj.to_string(), ident.to_string()));
        }
    }
    let is_id = |m: &str| cat.is_identity(m).expect("morphism exists");
    for mor in cat.morphisms() {
        if is_id(mor.as_str()) {
            continue;
        }
        block.morphisms.push(arrow(
            mor.as_str(),
            cat.dom(mor.as_str()).expect("morphism exists").as_str(),
            cat.cod(mor.as_str()).expect("morphism exists").as_str(),
            cat.label(mor.as_str()).expect("morphism exists"),
        ));
    }
    for (f, g, h) in cat.composition_entries() {
        if is_id(f.as_str()) || is_id(g.as_str()) {
            continue;
        }
        block.comps.push((f.to_string(), g.to_string(), h.to_string()));
    }
    block
}

/// Projects a functor onto a block, dropping identity-morphism images
/// (restored by construction).
fn functor_block(src: &str, dst: &str, f: &Functor) -> FunctorBlock {
    FunctorBlock {
        src: src.into(),
        dst: dst.into(),
        variance: f.variance(),
        theory: f.theory().map(str::to_string),
        obj_map: f.obj_entries().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        mor_map: f
            .mor_entries()
            .into_iter()
            .filter(|(m, _)| !f.src().is_identity(m.as_str()).expect("morphism exists"))
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    }
}

fn nattrans_block(source: &str, target: &str, nt: &NatTrans) -> NatTransBlock {
    NatTransBlock {
        source: source.into(),
        target: target.into(),
        components: nt
            .components()
            .into_iter()
            .map(|(o, m)| (o.to_string(), m.to_string()))
            .collect(),
    }
}

fn lts_block(ts: &TransitionSystem) -> LtsBlock {
    LtsBlock {
        states: ts.states.clone(),
        transitions: ts
            .transitions
            .iter()
            .map(|t| arrow(&t.id, &t.source, &t.target, t.label.as_deref()))
            .collect(),
        metadata: if ts.metadata.is_empty() { None } else { Some(ts.metadata.clone()) },
    }
}

fn cycle_claim_block(kind: ClaimKind, phys: &str, abs: &str, r: &str, rt: &str) -> ClaimBlock {
    ClaimBlock {
        phys: Some(phys.into()),
        abs: Some(abs.into()),
        r: Some(r.into()),
        rt: Some(rt.into()),
        ..ClaimBlock::empty(kind)
    }
}

/// The complete state-map enumeration fits in `budget` candidates.
fn audit_fits(states: usize, objects: usize, budget: u64) -> bool {
    let mut total: u128 = 1;
    for _ in 0..states {
        total = total.saturating_mul(objects as u128);
        if total > budget as u128 {
            return false;
        }
    }
    true
}

/// The smallest interesting file: a one-step machine read as the interval
/// category, verified in both directions and audited.
pub fn spec_interval() -> SpecFile {
    let items = vec![
        item(
            "Steps",
            ItemKind::Lts(LtsBlock {
                states: vec!["s0".into(), "s1".into()],
                transitions: vec![arrow("t", "s0", "s1", Some("tick"))],
                metadata: Some("one-step machine".into()),
            }),
        ),
        item(
            "Interval",
            ItemKind::Category(CategoryBlock {
                objects: vec!["a".into(), "b".into()],
                morphisms: vec![arrow("f", "a", "b", None)],
                ..CategoryBlock::default()
            }),
        ),
        item(
            "Read",
            ItemKind::Functor(FunctorBlock {
                src: "Steps".into(),
                dst: "Interval".into(),
                variance: crate::functor::Variance::Covariant,
                theory: Some("ordered progress".into()),
                obj_map: vec![("s0".into(), "a".into()), ("s1".into(), "b".into())],
                mor_map: vec![("t".into(), "f".into())],
            }),
        ),
        item(
            "Impl",
            ItemKind::Functor(FunctorBlock {
                src: "Interval".into(),
                dst: "Steps".into(),
                variance: crate::functor::Variance::Covariant,
                theory: None,
                obj_map: vec![("a".into(), "s0".into()), ("b".into(), "s1".into())],
                mor_map: vec![("f".into(), "t".into())],
            }),
        ),
        item(
            "Main",
            ItemKind::Claim(ClaimBlock {
                direction: Some(Direction::Compute),
                ..cycle_claim_block(ClaimKind::Cycle, "Steps", "Interval", "Read", "Impl")
            }),
        ),
        item("Counts", ItemKind::Audit(AuditBlock { lts: "Steps".into(), abs: "Interval".into() })),
    ];
    SpecFile { items }
}

/// A cogwheel adding machine read as single-digit addition: cycle claims in
/// both directions, a causal/counterfactual claim, and — when the machine
/// is small enough to enumerate — the mapping audit.
pub fn spec_adder_claim(base: Base, width: u32) -> Result<SpecFile> {
    let parts = adder_claim_parts(base, width)?;
    let mut items = vec![
        item("Machine", ItemKind::Lts(lts_block(&parts.lts))),
        item("Sums", ItemKind::Category(category_block(&parts.abs))),
        item("Read", ItemKind::Functor(functor_block("Machine", "Sums", &parts.encode))),
        item("Impl", ItemKind::Functor(functor_block("Sums", "Machine", &parts.decode))),
        item(
            "Compute",
            ItemKind::Claim(ClaimBlock {
                direction: Some(Direction::Compute),
                ..cycle_claim_block(ClaimKind::Cycle, "Machine", "Sums", "Read", "Impl")
            }),
        ),
        item(
            "Predict",
            ItemKind::Claim(ClaimBlock {
                direction: Some(Direction::Predict),
                ..cycle_claim_block(ClaimKind::Cycle, "Machine", "Sums", "Read", "Impl")
            }),
        ),
        item(
            "Grounded",
            ItemKind::Claim(cycle_claim_block(
                ClaimKind::Causal,
                "Machine",
                "Sums",
                "Read",
                "Impl",
            )),
        ),
    ];
    if audit_fits(parts.lts.states.len(), parts.abs.obj_count(), Limits::default().max_candidates) {
        items.push(item(
            "Counts",
            ItemKind::Audit(AuditBlock { lts: "Machine".into(), abs: "Sums".into() }),
        ));
    }
    Ok(SpecFile { items })
}

/// A three-state chain audited against the interval category: many simple
/// state maps, no inverse functor pair at all.
pub fn spec_chain_audit() -> SpecFile {
    let items = vec![
        item(
            "Chain",
            ItemKind::Lts(LtsBlock {
                states: vec!["c0".into(), "c1".into(), "c2".into()],
                transitions: vec![arrow("t0", "c0", "c1", None), arrow("t1", "c1", "c2", None)],
                metadata: Some("two-step chain".into()),
            }),
        ),
        item(
            "Interval",
            ItemKind::Category(CategoryBlock {
                objects: vec!["a".into(), "b".into()],
                morphisms: vec![arrow("f", "a", "b", None)],
                ..CategoryBlock::default()
            }),
        ),
        item("Counts", ItemKind::Audit(AuditBlock { lts: "Chain".into(), abs: "Interval".into() })),
    ];
    SpecFile { items }
}

/// Two readouts of the binary machine into the combined binary+decimal
/// category — one lands in the binary copy, one in the decimal copy — with
/// the base-conversion translation exhibiting the first as a refinement of
/// the second.  A second claim drops the explicit translation and lets the
/// search find it.
pub fn spec_refinement(width: u32) -> Result<SpecFile> {
    let rp = binary_realization_of_decimal(width)?;
    let combined = &rp.combined;
    let bound = combined.bound();

    let mut fine = FunctorDecl::default();
    for v in 0..bound {
        fine.obj_map.insert(
            format!("out_{}", Base::Binary.digits(v)),
            combined.single_obj(Base::Binary, v).expect("value in range").into(),
        );
    }
    for (x, y) in (0..bound).flat_map(|x| (0..bound - x).map(move |y| (x, y))) {
        let digits = format!("{}_{}", Base::Binary.digits(x), Base::Binary.digits(y));
        fine.obj_map.insert(
            format!("in_{digits}"),
            combined.pair_obj(Base::Binary, x, y).expect("pair in range").into(),
        );
        fine.mor_map.insert(
            format!("crank_{digits}"),
            combined.add_mor(Base::Binary, x, y).expect("pair in range").into(),
        );
    }
    let fine = Functor::new(Arc::clone(&rp.phys), Arc::clone(&rp.abs), fine)?
        .with_theory("binary addition");
    let eta = base_conversion_nat_trans(combined, Base::Binary, Base::Decimal, &fine, &rp.r)?;

    let items = vec![
        item("Machine", ItemKind::Lts(lts_block(&rp.lts))),
        item("Numbers", ItemKind::Category(category_block(&rp.abs))),
        item("FineRead", ItemKind::Functor(functor_block("Machine", "Numbers", &fine))),
        item("CoarseRead", ItemKind::Functor(functor_block("Machine", "Numbers", &rp.r))),
        item("Convert", ItemKind::NatTrans(nattrans_block("FineRead", "CoarseRead", &eta))),
        item(
            "Finer",
            ItemKind::Claim(ClaimBlock {
                fine: Some("FineRead".into()),
                coarse: Some("CoarseRead".into()),
                eta: Some("Convert".into()),
                ..ClaimBlock::empty(ClaimKind::Refinement)
            }),
        ),
        item(
            "FoundAnyway",
            ItemKind::Claim(ClaimBlock {
                fine: Some("FineRead".into()),
                coarse: Some("CoarseRead".into()),
                ..ClaimBlock::empty(ClaimKind::Refinement)
            }),
        ),
    ];
    Ok(SpecFile { items })
}

/// The binary machine against the combined binary+decimal category: the
/// strict claim fails (round trips land in the converted copy), the relaxed
/// claim succeeds via the searched-for unit and counit.
pub fn spec_realizability(width: u32) -> Result<SpecFile> {
    let rp = binary_realization_of_decimal(width)?;
    let items = vec![
        item("Machine", ItemKind::Lts(lts_block(&rp.lts))),
        item("Numbers", ItemKind::Category(category_block(&rp.abs))),
        item("Read", ItemKind::Functor(functor_block("Machine", "Numbers", &rp.r))),
        item("Impl", ItemKind::Functor(functor_block("Numbers", "Machine", &rp.rt))),
        item(
            "OnTheNose",
            ItemKind::Claim(ClaimBlock {
                mode: Some(RealizabilityMode::Strict),
                ..cycle_claim_block(ClaimKind::Realizability, "Machine", "Numbers", "Read", "Impl")
            }),
        ),
        item(
            "UpToConversion",
            ItemKind::Claim(ClaimBlock {
                mode: Some(RealizabilityMode::Relaxed),
                ..cycle_claim_block(ClaimKind::Realizability, "Machine", "Numbers", "Read", "Impl")
            }),
        ),
    ];
    Ok(SpecFile { items })
}

/// A two-layer tower: the cogwheel machine computes single-digit sums, and
/// those sums are in turn read as a virtual machine one level up, linked
/// through the shared middle category.
pub fn spec_nested(width: u32) -> Result<SpecFile> {
    let parts = adder_claim_parts(Base::Binary, width)?;
    let vm_lts = cogwheel_lts_prefixed(Base::Binary, width, "vm_")?;
    let vm_cat = Arc::new(crate::lts::lts_to_category(&vm_lts, crate::lts::LtsMode::FreeAcyclic)?);

    let mut up = FunctorDecl::default();
    let mut down = FunctorDecl::default();
    for o in parts.abs.objects() {
        let img = if let Some(d) = o.as_str().strip_prefix('n') {
            format!("vm_out_{d}")
        } else {
            format!("vm_in_{}", o.as_str().strip_prefix('p').expect("sum object"))
        };
        up.obj_map.insert(o.to_string(), img.clone());
        down.obj_map.insert(img, o.to_string());
    }
    for m in parts.abs.morphisms() {
        if let Some(d) = m.as_str().strip_prefix("add_") {
            up.mor_map.insert(m.to_string(), format!("vm_crank_{d}"));
            down.mor_map.insert(format!("vm_crank_{d}"), m.to_string());
        }
    }
    let vm_read = Functor::new(Arc::clone(&parts.abs), Arc::clone(&vm_cat), up)?;
    let vm_impl = Functor::new(Arc::clone(&vm_cat), Arc::clone(&parts.abs), down)?;
    let sums_id = Functor::identity(&parts.abs);

    let items = vec![
        item("Machine", ItemKind::Lts(lts_block(&parts.lts))),
        item("Sums", ItemKind::Category(category_block(&parts.abs))),
        item("Vm", ItemKind::Lts(lts_block(&vm_lts))),
        item("Read", ItemKind::Functor(functor_block("Machine", "Sums", &parts.encode))),
        item("Impl", ItemKind::Functor(functor_block("Sums", "Machine", &parts.decode))),
        item("VmRead", ItemKind::Functor(functor_block("Sums", "Vm", &vm_read))),
        item("VmImpl", ItemKind::Functor(functor_block("Vm", "Sums", &vm_impl))),
        item("SumsId", ItemKind::Functor(functor_block("Sums", "Sums", &sums_id))),
        item("Bridge", ItemKind::Link(LinkBlock { up: "SumsId".into(), down: "SumsId".into() })),
        item(
            "Base",
            ItemKind::Claim(cycle_claim_block(ClaimKind::Cycle, "Machine", "Sums", "Read", "Impl")),
        ),
        item(
            "Emulated",
            ItemKind::Claim(cycle_claim_block(ClaimKind::Cycle, "Sums", "Vm", "VmRead", "VmImpl")),
        ),
        item(
            "Tower",
            ItemKind::Claim(ClaimBlock {
                layers: vec!["Base".into(), "Emulated".into()],
                links: vec!["Bridge".into()],
                ..ClaimBlock::empty(ClaimKind::Nested)
            }),
        ),
        item(
            "EndToEnd",
            ItemKind::Claim(ClaimBlock {
                chain: vec!["Base".into(), "Emulated".into()],
                ..ClaimBlock::empty(ClaimKind::Composite)
            }),
        ),
    ];
    Ok(SpecFile { items })
}

/// A program category over one data type with a null object.  Double
/// negation is declared to be the identity, and the detour through `null`
/// factors through an explicit always-diverging program — with `negate`
/// around, `hom(bool, bool)` is not a singleton, so that composite cannot
/// be inferred and `bottom` must absorb on both sides for associativity to
/// hold.
pub fn spec_comp_bool() -> SpecFile {
    let cat = build_comp_category(
        &["bool"],
        &[ProgramDecl::new("negate", "bool", "bool"), ProgramDecl::new("bottom", "bool", "bool")],
        &[
            CompDecl::new("negate", "negate", "id_bool"),
            CompDecl::new("bottom", "bottom", "bottom"),
            CompDecl::new("negate", "bottom", "bottom"),
            CompDecl::new("bottom", "negate", "bottom"),
            CompDecl::new("into_null_bool", "from_null_bool", "bottom"),
        ],
        true,
    )
    .expect("the negation category is well-formed");
    SpecFile { items: vec![item("Programs", ItemKind::Category(category_block(&cat)))] }
}

/// Every fixture this module can emit, by CLI-facing name, at its default
/// parameters.
pub fn default_fixtures() -> Vec<(&'static str, SpecFile)> {
    vec![
        ("interval", spec_interval()),
        ("adder", spec_adder_claim(Base::Binary, 1).expect("default width is valid")),
        ("chain-audit", spec_chain_audit()),
        ("refinement", spec_refinement(1).expect("default width is valid")),
        ("realizability", spec_realizability(1).expect("default width is valid")),
        ("nested", spec_nested(1).expect("default width is valid")),
        ("programs", spec_comp_bool()),
    ]
}
