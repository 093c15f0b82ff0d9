//! Resolution of parsed specification files into core structures, and
//! whole-file verification.
//!
//! Resolution runs in dependency order regardless of declaration order:
//! categories (including quivers and transition systems, which compile to
//! their free categories), then functors, then natural transformations and
//! layer links, then adjunctions, then cycle claims, then the claims that
//! reference other claims, then audits.  Forward references are therefore
//! fine.  Two things are filled in automatically during resolution rather
//! than written by hand: missing identity morphisms (one per object) and
//! the identity-absorption rows of a category block's composition table.
//! Everything else — including every non-identity composite — must be
//! declared, and a declared entry is never overridden, so a wrong one is
//! reported by the law checker instead of being silently repaired.
//!
//! Verification ([`verify_spec`]) walks the file in declaration order and
//! produces one [`CheckEntry`] per block: structural laws for categories,
//! functor laws, naturality, adjunction laws, a verdict per claim, and the
//! mapping-count comparison per audit.  Link blocks are pure wiring and get
//! no entry of their own; they are exercised by the nested claims that use
//! them.  Errors that prevent a check from deciding anything (unsatisfiable
//! wiring discovered mid-check, exhausted search budgets) surface as `E004`
//! diagnostics, distinct from a decided failure.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use super::ast::*;
use super::parse::Diagnostic;
use crate::adjunction::{check_adjunction, Adjunction};
use crate::audit::audit_simple_mappings;
use crate::category::{
    check_category_laws, free_category, CategoryDecl, CompDecl, EdgeDecl, FinCategory, LawReport,
    MorDecl, Quiver, Violation,
};
use crate::cycle::{
    check_causal_counterfactual, check_composite_cycle, check_cycle, check_multiple_realizability,
    check_nested, check_refinement, CycleClaim, Direction, LayerLink, NestedClaim, NestedReport,
    RealizabilityMode, Verdict,
};
use crate::error::{Error, Limits};
use crate::functor::{check_functor_laws, Functor, FunctorDecl};
use crate::lts::{lts_to_category, LtsMode, TransitionDecl, TransitionSystem};
use crate::nattrans::{check_naturality, NatTrans};

/// Every structure a specification file declares, ready to check.
#[derive(Debug, Default)]
pub struct ResolvedSpec {
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    /// Transition systems keep their original form alongside the compiled
    /// free category, because audits need the raw states and transitions.
    pub transition_systems: BTreeMap<String, TransitionSystem>,
    pub functors: BTreeMap<String, Functor>,
    pub nat_trans: BTreeMap<String, NatTrans>,
    pub adjunctions: BTreeMap<String, Adjunction>,
    pub links: BTreeMap<String, LayerLink>,
    pub claims: BTreeMap<String, ResolvedClaim>,
    pub audits: BTreeMap<String, ResolvedAudit>,
}

/// A claim with every reference replaced by the structure it names.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum ResolvedClaim {
    Cycle {
        claim: CycleClaim,
        direction: Direction,
    },
    Composite {
        chain: Vec<CycleClaim>,
    },
    Refinement {
        fine: Functor,
        coarse: Functor,
        eta: Option<NatTrans>,
    },
    Realizability {
        claim: CycleClaim,
        mode: RealizabilityMode,
        unit_counit: Option<(NatTrans, NatTrans)>,
    },
    Nested {
        nested: NestedClaim,
    },
    Causal {
        claim: CycleClaim,
    },
}

/// An audit with its transition system and abstract category in hand.
#[derive(Debug, Clone)]
pub struct ResolvedAudit {
    pub ts: TransitionSystem,
    pub abs: Arc<FinCategory>,
}

/// Resolves all blocks of a file, collecting every reference and
/// construction error instead of stopping at the first.
pub fn resolve_spec(spec: &SpecFile) -> Result<ResolvedSpec, Vec<Diagnostic>> {
    let mut r = Resolver { out: ResolvedSpec::default(), diags: Vec::new() };

    for item in &spec.items {
        match &item.kind {
            ItemKind::Category(block) => r.add_category(item, block),
            ItemKind::Quiver(block) => r.add_quiver(item, block),
            ItemKind::Lts(block) => r.add_lts(item, block),
            _ => {}
        }
    }
    for item in &spec.items {
        if let ItemKind::Functor(block) = &item.kind {
            r.add_functor(item, block);
        }
    }
    for item in &spec.items {
        match &item.kind {
            ItemKind::NatTrans(block) => r.add_nattrans(item, block),
            ItemKind::Link(block) => r.add_link(item, block),
            _ => {}
        }
    }
    for item in &spec.items {
        if let ItemKind::Adjunction(block) = &item.kind {
            r.add_adjunction(item, block);
        }
    }
    for item in &spec.items {
        if let ItemKind::Claim(block) = &item.kind {
            if block.kind == ClaimKind::Cycle {
                r.add_claim(item, block);
            }
        }
    }
    for item in &spec.items {
        if let ItemKind::Claim(block) = &item.kind {
            if block.kind != ClaimKind::Cycle {
                r.add_claim(item, block);
            }
        }
    }
    for item in &spec.items {
        if let ItemKind::Audit(block) = &item.kind {
            r.add_audit(item, block);
        }
    }

    if r.diags.is_empty() {
        Ok(r.out)
    } else {
        Err(r.diags)
    }
}

struct Resolver {
    out: ResolvedSpec,
    diags: Vec<Diagnostic>,
}

impl Resolver {
    fn unknown(&mut self, line: usize, what: &str, name: &str) {
        self.diags.push(Diagnostic {
            code: "E003",
            message: format!("{what} `{name}` is not defined"),
            line,
            col: 1,
        });
    }

    fn core_err(&mut self, line: usize, context: &str, err: &Error) {
        self.diags.push(Diagnostic {
            code: "E004",
            message: format!("{context}: {err}"),
            line,
            col: 1,
        });
    }

    fn duplicate(&mut self, line: usize, what: &str, name: &str) {
        self.diags.push(Diagnostic {
            code: "E002",
            message: format!("{what} `{name}` is already defined"),
            line,
            col: 1,
        });
    }

    fn missing_field(&mut self, item: &Item, field: &str) {
        self.diags.push(Diagnostic {
            code: "E001",
            message: format!("claim `{}` is missing its `{field}` field", item.name),
            line: item.line,
            col: 1,
        });
    }

    fn store_category(&mut self, item: &Item, built: crate::error::Result<FinCategory>) {
        match built {
            Ok(cat) => {
                let prev = self.out.categories.insert(item.name.clone(), Arc::new(cat));
                if prev.is_some() {
                    self.duplicate(item.line, item.kind.keyword(), &item.name);
                }
            }
            Err(err) => {
                self.core_err(item.line, &format!("{} `{}`", item.kind.keyword(), item.name), &err)
            }
        }
    }

    fn add_category(&mut self, item: &Item, block: &CategoryBlock) {
        self.store_category(item, FinCategory::new(category_decl(block)));
    }

    fn add_quiver(&mut self, item: &Item, block: &QuiverBlock) {
        let quiver = Quiver {
            nodes: block.nodes.clone(),
            edges: block
                .edges
                .iter()
                .map(|e| {
                    let mut d = EdgeDecl::new(&e.id, &e.dom, &e.cod);
                    if let Some(label) = &e.label {
                        d = d.labelled(label);
                    }
                    d
                })
                .collect(),
        };
        self.store_category(item, free_category(&quiver));
    }

    fn add_lts(&mut self, item: &Item, block: &LtsBlock) {
        let ts = TransitionSystem {
            states: block.states.clone(),
            transitions: block
                .transitions
                .iter()
                .map(|t| {
                    let mut d = TransitionDecl::new(&t.id, &t.dom, &t.cod);
                    if let Some(label) = &t.label {
                        d = d.labelled(label);
                    }
                    d
                })
                .collect(),
            metadata: block.metadata.clone().unwrap_or_default(),
        };
        self.store_category(item, lts_to_category(&ts, LtsMode::FreeAcyclic));
        self.out.transition_systems.insert(item.name.clone(), ts);
    }

    fn category(&mut self, line: usize, name: &str) -> Option<Arc<FinCategory>> {
        match self.out.categories.get(name) {
            Some(cat) => Some(Arc::clone(cat)),
            None => {
                self.unknown(line, "category", name);
                None
            }
        }
    }

    fn functor(&mut self, line: usize, name: &str) -> Option<Functor> {
        match self.out.functors.get(name) {
            Some(f) => Some(f.clone()),
            None => {
                self.unknown(line, "functor", name);
                None
            }
        }
    }

    fn nattrans(&mut self, line: usize, name: &str) -> Option<NatTrans> {
        match self.out.nat_trans.get(name) {
            Some(n) => Some(n.clone()),
            None => {
                self.unknown(line, "nattrans", name);
                None
            }
        }
    }

    fn add_functor(&mut self, item: &Item, block: &FunctorBlock) {
        let src = self.category(item.line, &block.src);
        let dst = self.category(item.line, &block.dst);
        let (Some(src), Some(dst)) = (src, dst) else { return };
        let decl = FunctorDecl {
            obj_map: block.obj_map.iter().cloned().collect(),
            mor_map: block.mor_map.iter().cloned().collect(),
            variance: block.variance,
            theory: block.theory.clone(),
        };
        match Functor::new(src, dst, decl) {
            Ok(f) => {
                if self.out.functors.insert(item.name.clone(), f).is_some() {
                    self.duplicate(item.line, "functor", &item.name);
                }
            }
            Err(err) => self.core_err(item.line, &format!("functor `{}`", item.name), &err),
        }
    }

    fn add_nattrans(&mut self, item: &Item, block: &NatTransBlock) {
        let f = self.functor(item.line, &block.source);
        let g = self.functor(item.line, &block.target);
        let (Some(f), Some(g)) = (f, g) else { return };
        let components = block.components.iter().cloned().collect();
        match NatTrans::new(f, g, components) {
            Ok(n) => {
                if self.out.nat_trans.insert(item.name.clone(), n).is_some() {
                    self.duplicate(item.line, "nattrans", &item.name);
                }
            }
            Err(err) => self.core_err(item.line, &format!("nattrans `{}`", item.name), &err),
        }
    }

    fn add_link(&mut self, item: &Item, block: &LinkBlock) {
        let up = self.functor(item.line, &block.up);
        let down = self.functor(item.line, &block.down);
        let (Some(up), Some(down)) = (up, down) else { return };
        if up.src() != down.dst() || up.dst() != down.src() {
            self.diags.push(Diagnostic {
                code: "E004",
                message: format!(
                    "link `{}`: its two functors must run between the same categories in opposite directions",
                    item.name
                ),
                line: item.line,
                col: 1,
            });
            return;
        }
        if self.out.links.insert(item.name.clone(), LayerLink { up, down }).is_some() {
            self.duplicate(item.line, "link", &item.name);
        }
    }

    fn add_adjunction(&mut self, item: &Item, block: &AdjunctionBlock) {
        let f = self.functor(item.line, &block.left);
        let g = self.functor(item.line, &block.right);
        let unit = self.nattrans(item.line, &block.unit);
        let counit = self.nattrans(item.line, &block.counit);
        let (Some(f), Some(g), Some(unit), Some(counit)) = (f, g, unit, counit) else { return };
        match Adjunction::new(f, g, unit, counit) {
            Ok(adj) => {
                if self.out.adjunctions.insert(item.name.clone(), adj).is_some() {
                    self.duplicate(item.line, "adjunction", &item.name);
                }
            }
            Err(err) => self.core_err(item.line, &format!("adjunction `{}`", item.name), &err),
        }
    }

    /// Resolves the shared `phys`/`abs`/`r`/`rt` quadruple of cycle-shaped
    /// claims.
    fn cycle_parts(&mut self, item: &Item, block: &ClaimBlock) -> Option<CycleClaim> {
        let field = |r: &mut Resolver, name: &Option<String>, label: &str| match name {
            Some(n) => Some(n.clone()),
            None => {
                r.missing_field(item, label);
                None
            }
        };
        let phys = field(self, &block.phys, "phys")?;
        let abs = field(self, &block.abs, "abs")?;
        let r_name = field(self, &block.r, "r")?;
        let rt_name = field(self, &block.rt, "rt")?;
        let phys = self.category(item.line, &phys);
        let abs = self.category(item.line, &abs);
        let r = self.functor(item.line, &r_name);
        let rt = self.functor(item.line, &rt_name);
        let (Some(phys), Some(abs), Some(r), Some(rt)) = (phys, abs, r, rt) else { return None };
        match CycleClaim::new(phys, abs, r, rt) {
            Ok(claim) => Some(claim),
            Err(err) => {
                self.core_err(item.line, &format!("claim `{}`", item.name), &err);
                None
            }
        }
    }

    /// Looks up a previously resolved claim that must be of kind `cycle`.
    fn cycle_claim_ref(&mut self, line: usize, name: &str) -> Option<CycleClaim> {
        match self.out.claims.get(name) {
            Some(ResolvedClaim::Cycle { claim, .. }) => Some(claim.clone()),
            Some(_) => {
                self.diags.push(Diagnostic {
                    code: "E003",
                    message: format!(
                        "claim `{name}` is not of kind cycle; chains and layers may only reference cycle claims"
                    ),
                    line,
                    col: 1,
                });
                None
            }
            None => {
                self.unknown(line, "claim", name);
                None
            }
        }
    }

    fn add_claim(&mut self, item: &Item, block: &ClaimBlock) {
        let resolved = match block.kind {
            ClaimKind::Cycle => self.cycle_parts(item, block).map(|claim| ResolvedClaim::Cycle {
                claim,
                direction: block.direction.unwrap_or(Direction::Compute),
            }),
            ClaimKind::Causal => {
                self.cycle_parts(item, block).map(|claim| ResolvedClaim::Causal { claim })
            }
            ClaimKind::Composite => {
                if block.chain.is_empty() {
                    self.missing_field(item, "chain");
                    return;
                }
                let mut chain = Vec::new();
                for name in &block.chain {
                    let Some(claim) = self.cycle_claim_ref(item.line, name) else { return };
                    chain.push(claim);
                }
                Some(ResolvedClaim::Composite { chain })
            }
            ClaimKind::Refinement => {
                let (fine_name, coarse_name) = match (&block.fine, &block.coarse) {
                    (Some(f), Some(c)) => (f.clone(), c.clone()),
                    (fine, _) => {
                        self.missing_field(item, if fine.is_none() { "fine" } else { "coarse" });
                        return;
                    }
                };
                let fine = self.functor(item.line, &fine_name);
                let coarse = self.functor(item.line, &coarse_name);
                let eta = match &block.eta {
                    Some(name) => match self.nattrans(item.line, name) {
                        Some(n) => Some(n),
                        None => return,
                    },
                    None => None,
                };
                let (Some(fine), Some(coarse)) = (fine, coarse) else { return };
                Some(ResolvedClaim::Refinement { fine, coarse, eta })
            }
            ClaimKind::Realizability => {
                let Some(mode) = block.mode else {
                    self.missing_field(item, "mode");
                    return;
                };
                let claim = self.cycle_parts(item, block);
                let unit_counit = match (&block.unit, &block.counit) {
                    (Some(u), Some(c)) => {
                        let unit = self.nattrans(item.line, u);
                        let counit = self.nattrans(item.line, c);
                        let (Some(unit), Some(counit)) = (unit, counit) else { return };
                        Some((unit, counit))
                    }
                    (None, None) => None,
                    _ => {
                        self.missing_field(
                            item,
                            if block.unit.is_none() { "unit" } else { "counit" },
                        );
                        return;
                    }
                };
                claim.map(|claim| ResolvedClaim::Realizability { claim, mode, unit_counit })
            }
            ClaimKind::Nested => {
                if block.layers.is_empty() {
                    self.missing_field(item, "layers");
                    return;
                }
                let mut layers = Vec::new();
                for name in &block.layers {
                    let Some(claim) = self.cycle_claim_ref(item.line, name) else { return };
                    layers.push(claim);
                }
                let mut links = Vec::new();
                for name in &block.links {
                    match self.out.links.get(name) {
                        Some(link) => links.push(link.clone()),
                        None => {
                            self.unknown(item.line, "link", name);
                            return;
                        }
                    }
                }
                Some(ResolvedClaim::Nested { nested: NestedClaim { layers, links } })
            }
        };
        if let Some(resolved) = resolved {
            if self.out.claims.insert(item.name.clone(), resolved).is_some() {
                self.duplicate(item.line, "claim", &item.name);
            }
        }
    }

    fn add_audit(&mut self, item: &Item, block: &AuditBlock) {
        let ts = match self.out.transition_systems.get(&block.lts) {
            Some(ts) => ts.clone(),
            None => {
                self.unknown(item.line, "lts", &block.lts);
                return;
            }
        };
        let Some(abs) = self.category(item.line, &block.abs) else { return };
        if self.out.audits.insert(item.name.clone(), ResolvedAudit { ts, abs }).is_some() {
            self.duplicate(item.line, "audit", &item.name);
        }
    }
}

/// Expands a category block into a construction declaration, filling in
/// default identities and the identity-absorption rows of the table.
/// Declared entries always win; only missing `(id, f)`, `(f, id)` and
/// `(id, id)` rows are added.
fn category_decl(block: &CategoryBlock) -> CategoryDecl {
    let decl = CategoryDecl {
        objects: block.objects.clone(),
        morphisms: block
            .morphisms
            .iter()
            .map(|m| {
                let mut d = MorDecl::new(&m.id, &m.dom, &m.cod);
                if let Some(label) = &m.label {
                    d = d.labelled(label);
                }
                d
            })
            .collect(),
        identities: block.identities.iter().cloned().collect(),
        comp: block
            .comps
            .iter()
            .map(|(f, g, h)| CompDecl::new(f.clone(), g.clone(), h.clone()))
            .collect(),
        null_object: block.null_object.clone(),
    }
    .with_default_identities();

    let mut declared: BTreeSet<(String, String)> =
        decl.comp.iter().map(|c| (c.first.clone(), c.then.clone())).collect();
    let declared_mor: BTreeMap<&str, (&str, &str)> =
        decl.morphisms.iter().map(|m| (m.id.as_str(), (m.dom.as_str(), m.cod.as_str()))).collect();

    // Endpoints of every morphism that will exist after construction:
    // declared ones, plus fresh identities for objects whose identity does
    // not name a declared morphism.
    let mut endpoints: Vec<(String, String, String)> =
        decl.morphisms.iter().map(|m| (m.id.clone(), m.dom.clone(), m.cod.clone())).collect();
    for (obj, ident) in &decl.identities {
        if !declared_mor.contains_key(ident.as_str()) {
            endpoints.push((ident.clone(), obj.clone(), obj.clone()));
        }
    }

    let mut filled = decl;
    for (mor, dom, cod) in &endpoints {
        for (first, then) in [
            filled.identities.get(dom).map(|ident| (ident.clone(), mor.clone())),
            filled.identities.get(cod).map(|ident| (mor.clone(), ident.clone())),
        ]
        .into_iter()
        .flatten()
        {
            if declared.insert((first.clone(), then.clone())) {
                filled.comp.push(CompDecl::new(first, then, mor.clone()));
            }
        }
    }
    filled
}

// ---------------------------------------------------------------------------
// Whole-file verification
// ---------------------------------------------------------------------------

/// One verified block: what was checked, whether it holds, and the full
/// evidence.
#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    /// Block keyword and name, e.g. `category Adder` or `claim Main`.
    pub subject: String,
    pub ok: bool,
    pub detail: CheckDetail,
}

/// The evidence behind one check entry.
#[derive(Debug, Clone, Serialize)]
pub enum CheckDetail {
    CategoryLaws(LawReport),
    FunctorLaws(LawReport),
    Naturality(LawReport),
    AdjunctionLaws(LawReport),
    Cycle(Verdict),
    Composite(Verdict),
    Causal(Verdict),
    Refinement {
        ok: bool,
        /// Components of the translation exhibiting the refinement, when
        /// one was supplied or found.
        translation: Option<Vec<(String, String)>>,
        witnesses: Vec<Violation>,
        truncated: bool,
    },
    Realizability {
        mode: RealizabilityMode,
        verdict: Verdict,
        /// Components of the unit/counit pair exhibiting a relaxed
        /// realization, when one was supplied or found.
        unit: Option<Vec<(String, String)>>,
        counit: Option<Vec<(String, String)>>,
    },
    Nested(NestedReport),
    Audit {
        n_simple: u64,
        n_functorial: u64,
        strictly_more_demanding: bool,
    },
}

/// Result of verifying a whole file, one entry per checkable block in
/// declaration order.
#[derive(Debug, Clone, Serialize)]
pub struct FileVerification {
    pub ok: bool,
    pub entries: Vec<CheckEntry>,
}

fn components_of(nt: &NatTrans) -> Vec<(String, String)> {
    nt.components().into_iter().map(|(o, m)| (o.to_string(), m.to_string())).collect()
}

/// Resolves and verifies every block of a file in declaration order.
///
/// A returned `Err` means some block could not be resolved or some check
/// could not reach a decision; a returned `Ok` carries a definite verdict
/// for every block, passing or failing.
pub fn verify_spec(spec: &SpecFile, limits: Limits) -> Result<FileVerification, Vec<Diagnostic>> {
    let resolved = resolve_spec(spec)?;
    let mut entries = Vec::new();
    let mut diags = Vec::new();

    for item in &spec.items {
        let subject = format!("{} {}", item.kind.keyword(), item.name);
        let check_failed = |diags: &mut Vec<Diagnostic>, err: &Error| {
            diags.push(Diagnostic {
                code: "E004",
                message: format!("{subject}: {err}"),
                line: item.line,
                col: 1,
            });
        };
        let detail = match &item.kind {
            ItemKind::Category(_) | ItemKind::Quiver(_) | ItemKind::Lts(_) => {
                let cat = &resolved.categories[&item.name];
                CheckDetail::CategoryLaws(check_category_laws(cat, limits))
            }
            ItemKind::Functor(_) => {
                CheckDetail::FunctorLaws(check_functor_laws(&resolved.functors[&item.name], limits))
            }
            ItemKind::NatTrans(_) => {
                CheckDetail::Naturality(check_naturality(&resolved.nat_trans[&item.name], limits))
            }
            ItemKind::Adjunction(_) => CheckDetail::AdjunctionLaws(check_adjunction(
                &resolved.adjunctions[&item.name],
                limits,
            )),
            ItemKind::Link(_) => continue,
            ItemKind::Claim(_) => match &resolved.claims[&item.name] {
                ResolvedClaim::Cycle { claim, direction } => {
                    CheckDetail::Cycle(check_cycle(claim, *direction, limits))
                }
                ResolvedClaim::Composite { chain } => match check_composite_cycle(chain, limits) {
                    Ok(verdict) => CheckDetail::Composite(verdict),
                    Err(err) => {
                        check_failed(&mut diags, &err);
                        continue;
                    }
                },
                ResolvedClaim::Causal { claim } => {
                    CheckDetail::Causal(check_causal_counterfactual(claim, limits))
                }
                ResolvedClaim::Refinement { fine, coarse, eta } => {
                    match check_refinement(fine, coarse, eta.as_ref(), limits) {
                        Ok(report) => CheckDetail::Refinement {
                            ok: report.ok,
                            translation: report.eta.as_ref().map(components_of),
                            witnesses: report.witnesses,
                            truncated: report.truncated,
                        },
                        Err(err) => {
                            check_failed(&mut diags, &err);
                            continue;
                        }
                    }
                }
                ResolvedClaim::Realizability { claim, mode, unit_counit } => {
                    match check_multiple_realizability(claim, *mode, unit_counit.clone(), limits) {
                        Ok(report) => CheckDetail::Realizability {
                            mode: report.mode,
                            unit: report.adjunction.as_ref().map(|a| components_of(a.unit())),
                            counit: report.adjunction.as_ref().map(|a| components_of(a.counit())),
                            verdict: report.verdict,
                        },
                        Err(err) => {
                            check_failed(&mut diags, &err);
                            continue;
                        }
                    }
                }
                ResolvedClaim::Nested { nested } => match check_nested(nested, limits) {
                    Ok(report) => CheckDetail::Nested(report),
                    Err(err) => {
                        check_failed(&mut diags, &err);
                        continue;
                    }
                },
            },
            ItemKind::Audit(_) => {
                let audit = &resolved.audits[&item.name];
                match audit_simple_mappings(&audit.ts, &audit.abs, limits) {
                    Ok(report) => CheckDetail::Audit {
                        n_simple: report.n_simple,
                        n_functorial: report.n_functorial,
                        strictly_more_demanding: report.strictly_more_demanding(),
                    },
                    Err(err) => {
                        check_failed(&mut diags, &err);
                        continue;
                    }
                }
            }
        };
        let ok = match &detail {
            CheckDetail::CategoryLaws(r)
            | CheckDetail::FunctorLaws(r)
            | CheckDetail::Naturality(r)
            | CheckDetail::AdjunctionLaws(r) => r.ok,
            CheckDetail::Cycle(v) | CheckDetail::Composite(v) | CheckDetail::Causal(v) => v.ok,
            CheckDetail::Refinement { ok, .. } => *ok,
            CheckDetail::Realizability { verdict, .. } => verdict.ok,
            CheckDetail::Nested(r) => r.ok,
            CheckDetail::Audit { .. } => true,
        };
        entries.push(CheckEntry { subject, ok, detail });
    }

    if !diags.is_empty() {
        return Err(diags);
    }
    let ok = entries.iter().all(|e| e.ok);
    Ok(FileVerification { ok, entries })
}
