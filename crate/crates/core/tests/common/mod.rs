//! Independent oracles and generators shared by the integration tests.
//!
//! The enumerators here are deliberately naive: they spell out the textbook
//! definitions over exhaustive assignment tables and share no code with the
//! engine's search routines, so agreement between the two is evidence, not
//! tautology.

// Each integration test binary compiles this module afresh and uses a
// different slice of it.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use compcycle::category::{CategoryDecl, CompDecl, FinCategory, MorDecl, Quiver};
use compcycle::cycle::{Direction, RealizabilityMode};
use compcycle::dsl::{
    AdjunctionBlock, ArrowLine, AuditBlock, CategoryBlock, ClaimBlock, ClaimKind, FunctorBlock,
    Item, ItemKind, LinkBlock, LtsBlock, NatTransBlock, QuiverBlock, SpecFile,
};
use compcycle::free_category;
use compcycle::functor::{Functor, Variance};
use compcycle::lts::TransitionSystem;
use rand::Rng;

/// All total maps from `slots` positions into `choices` values, in
/// lexicographic order.
pub fn all_maps(slots: usize, choices: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if choices == 0 {
        if slots == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = vec![0usize; slots];
    loop {
        out.push(current.clone());
        let mut pos = slots;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < choices {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// One functor assignment found by the oracle: object images and morphism
/// images by name.
pub type Assignment = (BTreeMap<String, String>, BTreeMap<String, String>);

/// Brute-force enumeration of all covariant functors `src -> dst`, straight
/// from the definition: try every object assignment and every assignment of
/// the non-identity morphisms, force identities, then test typing and
/// composition preservation over all composable pairs.
pub fn oracle_functors(src: &FinCategory, dst: &FinCategory) -> Vec<Assignment> {
    let src_objs: Vec<&str> = src.objects().iter().map(|o| o.as_str()).collect();
    let dst_objs: Vec<&str> = dst.objects().iter().map(|o| o.as_str()).collect();
    let src_nonid: Vec<&str> = src
        .morphisms()
        .iter()
        .map(|m| m.as_str())
        .filter(|m| !src.is_identity(m).unwrap())
        .collect();
    let dst_mors: Vec<&str> = dst.morphisms().iter().map(|m| m.as_str()).collect();

    let mut found = Vec::new();
    for obj_choice in all_maps(src_objs.len(), dst_objs.len()) {
        let obj_of = |o: &str| -> &str {
            let ix = src_objs.iter().position(|x| *x == o).unwrap();
            dst_objs[obj_choice[ix]]
        };
        'candidate: for mor_choice in all_maps(src_nonid.len(), dst_mors.len()) {
            let mor_of = |m: &str| -> &str {
                if src.is_identity(m).unwrap() {
                    let o = src.dom(m).unwrap();
                    return dst.identity_of(obj_of(o.as_str())).unwrap().as_str();
                }
                let ix = src_nonid.iter().position(|x| *x == m).unwrap();
                dst_mors[mor_choice[ix]]
            };
            // Typing.
            for m in src.morphisms() {
                let img = mor_of(m.as_str());
                if dst.dom(img).unwrap().as_str() != obj_of(src.dom(m.as_str()).unwrap().as_str())
                    || dst.cod(img).unwrap().as_str()
                        != obj_of(src.cod(m.as_str()).unwrap().as_str())
                {
                    continue 'candidate;
                }
            }
            // Composition preservation over every composable pair.
            for m1 in src.morphisms() {
                for m2 in src.morphisms() {
                    if src.cod(m1.as_str()).unwrap() != src.dom(m2.as_str()).unwrap() {
                        continue;
                    }
                    let lhs = mor_of(src.compose(m1.as_str(), m2.as_str()).unwrap().as_str());
                    match dst.compose(mor_of(m1.as_str()), mor_of(m2.as_str())) {
                        Ok(rhs) if rhs.as_str() == lhs => {}
                        _ => continue 'candidate,
                    }
                }
            }
            let objs = src_objs.iter().map(|o| (o.to_string(), obj_of(o).to_string())).collect();
            let mors = src
                .morphisms()
                .iter()
                .map(|m| (m.to_string(), mor_of(m.as_str()).to_string()))
                .collect();
            found.push((objs, mors));
        }
    }
    found
}

/// Brute-force enumeration of natural transformations between two parallel
/// functors: every choice of components, tested against typing and every
/// naturality square.
pub fn oracle_nat_trans(f: &Functor, g: &Functor) -> Vec<BTreeMap<String, String>> {
    let src = f.src();
    let dst = f.dst();
    let objs: Vec<&str> = src.objects().iter().map(|o| o.as_str()).collect();
    let dst_mors: Vec<&str> = dst.morphisms().iter().map(|m| m.as_str()).collect();

    let mut found = Vec::new();
    'candidate: for choice in all_maps(objs.len(), dst_mors.len()) {
        let comp_at = |o: &str| -> &str {
            let ix = objs.iter().position(|x| *x == o).unwrap();
            dst_mors[choice[ix]]
        };
        for o in &objs {
            let c = comp_at(o);
            if dst.dom(c).unwrap() != f.obj_image(o).unwrap()
                || dst.cod(c).unwrap() != g.obj_image(o).unwrap()
            {
                continue 'candidate;
            }
        }
        for m in src.morphisms() {
            let a = src.dom(m.as_str()).unwrap().as_str();
            let b = src.cod(m.as_str()).unwrap().as_str();
            let left = dst.compose(comp_at(a), g.mor_image(m.as_str()).unwrap().as_str());
            let right = dst.compose(f.mor_image(m.as_str()).unwrap().as_str(), comp_at(b));
            match (left, right) {
                (Ok(l), Ok(r)) if l == r => {}
                _ => continue 'candidate,
            }
        }
        found.push(objs.iter().map(|o| (o.to_string(), comp_at(o).to_string())).collect());
    }
    found
}

/// Brute-force count of simple state maps: assignments of states to objects
/// under which every declared transition is mirrored by *some* abstract
/// morphism (identities count).
pub fn oracle_simple_maps(
    ts: &TransitionSystem,
    abs: &FinCategory,
) -> Vec<BTreeMap<String, String>> {
    let mut states: Vec<&str> = ts.states.iter().map(|s| s.as_str()).collect();
    states.sort_unstable();
    let mut objs: Vec<&str> = abs.objects().iter().map(|o| o.as_str()).collect();
    objs.sort_unstable();

    let mut found = Vec::new();
    'candidate: for choice in all_maps(states.len(), objs.len()) {
        let img = |s: &str| -> &str {
            let ix = states.iter().position(|x| *x == s).unwrap();
            objs[choice[ix]]
        };
        for t in &ts.transitions {
            if abs.hom_set(img(&t.source), img(&t.target)).unwrap().is_empty() {
                continue 'candidate;
            }
        }
        found.push(states.iter().map(|s| (s.to_string(), img(s).to_string())).collect());
    }
    found
}

/// Brute-force count of strict inverse functor pairs between two
/// categories: both round trips must be the identity assignment on objects
/// and morphisms.
pub fn oracle_inverse_pairs(phys: &FinCategory, abs: &FinCategory) -> u64 {
    let forward = oracle_functors(phys, abs);
    let backward = oracle_functors(abs, phys);
    let mut count = 0;
    for (f_obj, f_mor) in &forward {
        for (g_obj, g_mor) in &backward {
            let round_obj = f_obj.iter().all(|(o, img)| g_obj[img] == *o)
                && g_obj.iter().all(|(o, img)| f_obj[img] == *o);
            let round_mor = f_mor.iter().all(|(m, img)| g_mor[img] == *m)
                && g_mor.iter().all(|(m, img)| f_mor[img] == *m);
            if round_obj && round_mor {
                count += 1;
            }
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// A random forest quiver on `1..=max_nodes` nodes: every non-root node
/// points at one earlier node, so the free category has at most one path
/// between any two objects.  That uniqueness makes every single-entry
/// mutation of the composition table a law violation, never a different
/// lawful category.
pub fn random_forest_category(rng: &mut impl Rng, max_nodes: usize) -> Arc<FinCategory> {
    let n = rng.gen_range(2..=max_nodes.max(2));
    let nodes: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        // Roughly one in four nodes starts a new tree.
        if rng.gen_range(0..4) == 0 {
            continue;
        }
        let parent = rng.gen_range(0..i);
        edges.push(compcycle::category::EdgeDecl::new(
            format!("e{parent}_{i}"),
            nodes[parent].clone(),
            nodes[i].clone(),
        ));
    }
    let quiver = Quiver { nodes, edges };
    Arc::new(free_category(&quiver).expect("forests are acyclic"))
}

/// The two-element monoid `{id, e}` with `e ∘ e = e`, as a one-object
/// category.  Its single object has a non-identity endomorphism, which the
/// forest categories never have; perturbations that stay well-typed are
/// possible here.
pub fn idempotent_monoid() -> Arc<FinCategory> {
    let decl = CategoryDecl {
        objects: vec!["a".into()],
        morphisms: vec![MorDecl::new("e", "a", "a")],
        comp: vec![
            CompDecl::new("e", "e", "e"),
            CompDecl::new("id_a", "e", "e"),
            CompDecl::new("e", "id_a", "e"),
            CompDecl::new("id_a", "id_a", "id_a"),
        ],
        ..CategoryDecl::default()
    }
    .with_default_identities();
    Arc::new(FinCategory::new(decl).expect("the idempotent monoid is well-formed"))
}

// ---------------------------------------------------------------------------
// Random specification files
// ---------------------------------------------------------------------------

fn pick<'a, T>(rng: &mut impl Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

/// Random text for labels, theories and metadata.  The pool deliberately
/// includes the characters the tokenizer has to treat specially inside
/// strings: quotes, backslashes, the comment marker, punctuation that is
/// meaningful outside strings, and a multi-byte character.
fn random_text(rng: &mut impl Rng) -> String {
    const POOL: &[char] = &[
        'a', 'Z', '7', ' ', '#', '"', '\\', ':', ',', '-', '>', '.', '[', ']', '{', '}', '=', '_',
        'π',
    ];
    let len = rng.gen_range(0..=12);
    (0..len).map(|_| *pick(rng, POOL)).collect()
}

/// A dangling-by-design reference: parsing does not resolve names, so random
/// identifiers are fine in claim, functor and audit positions.
fn random_ref(rng: &mut impl Rng) -> String {
    format!("x{}", rng.gen_range(0..30))
}

fn random_arrows(rng: &mut impl Rng, prefix: &str, endpoints: &[String]) -> Vec<ArrowLine> {
    let n = rng.gen_range(0..=4);
    (0..n)
        .map(|j| ArrowLine {
            id: format!("{prefix}{j}"),
            dom: pick(rng, endpoints).clone(),
            cod: pick(rng, endpoints).clone(),
            label: rng.gen_bool(0.4).then(|| random_text(rng)),
        })
        .collect()
}

fn random_claim(rng: &mut impl Rng) -> ClaimBlock {
    use ClaimKind::*;
    let kind = *pick(rng, &[Cycle, Composite, Refinement, Realizability, Nested, Causal]);
    let mut c = ClaimBlock::empty(kind);
    match kind {
        Cycle | Causal => {
            c.phys = Some(random_ref(rng));
            c.abs = Some(random_ref(rng));
            c.r = Some(random_ref(rng));
            c.rt = Some(random_ref(rng));
            if kind == Cycle && rng.gen_bool(0.5) {
                c.direction =
                    Some(if rng.gen_bool(0.5) { Direction::Compute } else { Direction::Predict });
            }
        }
        Composite => {
            c.chain = (0..rng.gen_range(1..=3)).map(|_| random_ref(rng)).collect();
        }
        Refinement => {
            c.fine = Some(random_ref(rng));
            c.coarse = Some(random_ref(rng));
            if rng.gen_bool(0.5) {
                c.eta = Some(random_ref(rng));
            }
        }
        Realizability => {
            c.phys = Some(random_ref(rng));
            c.abs = Some(random_ref(rng));
            c.r = Some(random_ref(rng));
            c.rt = Some(random_ref(rng));
            c.mode = Some(if rng.gen_bool(0.5) {
                RealizabilityMode::Strict
            } else {
                RealizabilityMode::Relaxed
            });
            if rng.gen_bool(0.5) {
                c.unit = Some(random_ref(rng));
                c.counit = Some(random_ref(rng));
            }
        }
        Nested => {
            c.layers = (0..rng.gen_range(1..=3)).map(|_| random_ref(rng)).collect();
            c.links = (0..rng.gen_range(0..=2)).map(|_| random_ref(rng)).collect();
        }
    }
    c
}

/// A random well-formed specification file.  Only parse-level constraints
/// are honoured (unique names per namespace, unique directive keys, required
/// claim fields); references may dangle, since the round-trip tests stop at
/// the parser.
pub fn random_spec(rng: &mut impl Rng) -> SpecFile {
    let mut items: Vec<Item> = Vec::new();
    let mut n = 0usize;
    let mut name = |prefix: &str| {
        n += 1;
        format!("{prefix}{n}")
    };
    let push = |items: &mut Vec<Item>, name: String, kind: ItemKind| {
        items.push(Item { name, kind, line: 0 });
    };

    for _ in 0..rng.gen_range(0..=2) {
        let cname = name("Cat");
        let objects: Vec<String> =
            (0..rng.gen_range(1..=4)).map(|i| format!("{cname}_o{i}")).collect();
        let morphisms = random_arrows(rng, &format!("{cname}_m"), &objects);
        let mor_ids: Vec<String> = morphisms.iter().map(|m| m.id.clone()).collect();
        let mut block = CategoryBlock {
            null_object: rng.gen_bool(0.3).then(|| pick(rng, &objects).clone()),
            identities: objects
                .iter()
                .enumerate()
                .filter(|_| rng.gen_bool(0.25))
                .map(|(i, o)| (o.clone(), format!("{cname}_i{i}")))
                .collect(),
            objects,
            morphisms,
            comps: Vec::new(),
        };
        if !mor_ids.is_empty() {
            let mut seen = BTreeSet::new();
            for _ in 0..rng.gen_range(0..=3) {
                let f = pick(rng, &mor_ids).clone();
                let g = pick(rng, &mor_ids).clone();
                if seen.insert((f.clone(), g.clone())) {
                    block.comps.push((f, g, pick(rng, &mor_ids).clone()));
                }
            }
        }
        push(&mut items, cname, ItemKind::Category(block));
    }

    for _ in 0..rng.gen_range(0..=2) {
        let qname = name("Quiv");
        let nodes: Vec<String> =
            (0..rng.gen_range(1..=4)).map(|i| format!("{qname}_v{i}")).collect();
        let edges = random_arrows(rng, &format!("{qname}_e"), &nodes);
        push(&mut items, qname, ItemKind::Quiver(QuiverBlock { nodes, edges }));
    }

    for _ in 0..rng.gen_range(0..=2) {
        let lname = name("Sys");
        let states: Vec<String> =
            (0..rng.gen_range(1..=4)).map(|i| format!("{lname}_s{i}")).collect();
        let transitions = random_arrows(rng, &format!("{lname}_t"), &states);
        let metadata = rng.gen_bool(0.5).then(|| random_text(rng));
        push(&mut items, lname, ItemKind::Lts(LtsBlock { states, transitions, metadata }));
    }

    for _ in 0..rng.gen_range(0..=2) {
        let block = FunctorBlock {
            src: random_ref(rng),
            dst: random_ref(rng),
            variance: if rng.gen_bool(0.3) { Variance::Contravariant } else { Variance::Covariant },
            theory: rng.gen_bool(0.4).then(|| random_text(rng)),
            obj_map: (0..rng.gen_range(0..=4))
                .map(|i| (format!("a{i}"), random_ref(rng)))
                .collect(),
            mor_map: (0..rng.gen_range(0..=4))
                .map(|i| (format!("m{i}"), random_ref(rng)))
                .collect(),
        };
        push(&mut items, name("F"), ItemKind::Functor(block));
    }

    for _ in 0..rng.gen_range(0..=2) {
        let block = NatTransBlock {
            source: random_ref(rng),
            target: random_ref(rng),
            components: (0..rng.gen_range(0..=4))
                .map(|i| (format!("c{i}"), random_ref(rng)))
                .collect(),
        };
        push(&mut items, name("Eta"), ItemKind::NatTrans(block));
    }

    if rng.gen_bool(0.5) {
        let block = AdjunctionBlock {
            left: random_ref(rng),
            right: random_ref(rng),
            unit: random_ref(rng),
            counit: random_ref(rng),
        };
        push(&mut items, name("Adj"), ItemKind::Adjunction(block));
    }

    if rng.gen_bool(0.5) {
        let block = LinkBlock { up: random_ref(rng), down: random_ref(rng) };
        push(&mut items, name("Link"), ItemKind::Link(block));
    }

    for _ in 0..rng.gen_range(0..=3) {
        let claim = random_claim(rng);
        push(&mut items, name("Claim"), ItemKind::Claim(claim));
    }

    if rng.gen_bool(0.5) {
        let block = AuditBlock { lts: random_ref(rng), abs: random_ref(rng) };
        push(&mut items, name("Audit"), ItemKind::Audit(block));
    }

    SpecFile { items }
}
