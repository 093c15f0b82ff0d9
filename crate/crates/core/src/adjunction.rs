//! Adjunctions presented by unit and counit, and the triangle laws.
//!
//! The orientation is fixed once for the whole crate: an [`Adjunction`]
//! consists of `F : D -> C` and `G : C -> D` together with a unit
//! `η : Id_C => F∘G` (components `c -> F(G(c))`) and a counit
//! `ε : G∘F => Id_D` (components `G(F(d)) -> d`).  This is the orientation
//! under which both triangle composites typecheck:
//!
//! * at every object `c` of `C`:  `comp(G(η_c), ε_{G(c)}) = id_{G(c)}`
//! * at every object `d` of `D`:  `comp(η_{F(d)}, F(ε_d)) = id_{F(d)}`
//!
//! (The mirrored convention — a counit `Id_D => G∘F` — makes those very
//! composites ill-typed, so it is not representable here.)

use std::sync::Arc;

use crate::category::{FinCategory, Law, LawReport, Sink};
use crate::error::{Error, Limits, Result};
use crate::functor::{compose_functors, Functor};
use crate::nattrans::{enumerate_nat_trans, scan_naturality, NatTrans};

/// An adjunction candidate between two finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjunction {
    f: Functor,
    g: Functor,
    unit: NatTrans,
    counit: NatTrans,
}

impl Adjunction {
    /// Assembles an adjunction, validating the wiring: `F : D -> C` and
    /// `G : C -> D` must be opposed, the unit must run from the identity on
    /// `C` to the composite `F∘G`, and the counit from `G∘F` to the identity
    /// on `D`.  The triangle laws are checked separately by
    /// [`check_adjunction`].
    pub fn new(f: Functor, g: Functor, unit: NatTrans, counit: NatTrans) -> Result<Adjunction> {
        if f.src() != g.dst() || f.dst() != g.src() {
            return Err(Error::NotComposable {
                detail: "adjunction functors must run between the same two categories, in opposite directions"
                    .into(),
            });
        }
        let c = f.dst();
        let d = f.src();
        let fg = compose_functors(&g, &f)?; // C -> C, apply G then F
        let gf = compose_functors(&f, &g)?; // D -> D, apply F then G
        if unit.source_functor() != &Functor::identity(c) || unit.target_functor() != &fg {
            return Err(Error::NotParallel {
                detail: "unit must be a transformation from the identity functor to F∘G".into(),
            });
        }
        if counit.source_functor() != &gf || counit.target_functor() != &Functor::identity(d) {
            return Err(Error::NotParallel {
                detail: "counit must be a transformation from G∘F to the identity functor".into(),
            });
        }
        Ok(Adjunction { f, g, unit, counit })
    }

    /// `F : D -> C`.
    pub fn f(&self) -> &Functor {
        &self.f
    }

    /// `G : C -> D`.
    pub fn g(&self) -> &Functor {
        &self.g
    }

    pub fn unit(&self) -> &NatTrans {
        &self.unit
    }

    pub fn counit(&self) -> &NatTrans {
        &self.counit
    }
}

/// The identity adjunction on a category: `F = G = Id` with identity unit
/// and counit.  Passes [`check_adjunction`] whenever the category itself is
/// lawful.
pub fn identity_adjunction(cat: &Arc<FinCategory>) -> Adjunction {
    let id = Functor::identity(cat);
    Adjunction {
        f: id.clone(),
        g: id.clone(),
        unit: NatTrans::identity(&id),
        counit: NatTrans::identity(&id),
    }
}

/// Checks unit naturality, counit naturality, and both triangle identities,
/// exhaustively over the two categories.
///
/// Witness order: unit naturality (subjects prefixed `unit`), counit
/// naturality (prefixed `counit`), then [`Law::Triangle`] witnesses at the
/// failing objects — first the `C`-side triangle, then the `D`-side one.
pub fn check_adjunction(adj: &Adjunction, limits: Limits) -> LawReport {
    let mut sink = Sink::new(limits);
    scan_naturality(&adj.unit, &mut sink, "unit");
    if sink.is_open() {
        scan_naturality(&adj.counit, &mut sink, "counit");
    }
    if sink.is_open() {
        scan_triangles(adj, &mut sink);
    }
    sink.finish()
}

fn scan_triangles(adj: &Adjunction, sink: &mut Sink) {
    let c_cat = adj.f.dst();
    let d_cat = adj.f.src();

    // Triangle on the C side: comp(G(η_c), ε_{G(c)}) = id_{G(c)}.
    for c in 0..c_cat.obj_count() as u32 {
        let g_eta = adj.g.mor_image_ix(adj.unit.component_ix(c));
        let gc = adj.g.obj_image_ix(c);
        let eps_at_gc = adj.counit.component_ix(gc);
        let want = d_cat.identity_ix(gc);
        let got = d_cat.comp_ix(g_eta, eps_at_gc);
        if got != Some(want) {
            let got_txt = match got {
                Some(m) => format!("`{}`", d_cat.mor_name(m)),
                None => "undefined".to_string(),
            };
            if !sink.push(
                Law::Triangle,
                vec![c_cat.obj_name(c).to_string()],
                format!(
                    "comp(G(η_{c0}), ε_{gc0}) = comp({ge}, {ep}) = {got_txt}, expected {id}",
                    c0 = c_cat.obj_name(c),
                    gc0 = d_cat.obj_name(gc),
                    ge = d_cat.mor_name(g_eta),
                    ep = d_cat.mor_name(eps_at_gc),
                    id = d_cat.mor_name(want)
                ),
            ) {
                return;
            }
        }
    }

    // Triangle on the D side: comp(η_{F(d)}, F(ε_d)) = id_{F(d)}.
    for d in 0..d_cat.obj_count() as u32 {
        let fd = adj.f.obj_image_ix(d);
        let eta_at_fd = adj.unit.component_ix(fd);
        let f_eps = adj.f.mor_image_ix(adj.counit.component_ix(d));
        let want = c_cat.identity_ix(fd);
        let got = c_cat.comp_ix(eta_at_fd, f_eps);
        if got != Some(want) {
            let got_txt = match got {
                Some(m) => format!("`{}`", c_cat.mor_name(m)),
                None => "undefined".to_string(),
            };
            if !sink.push(
                Law::Triangle,
                vec![d_cat.obj_name(d).to_string()],
                format!(
                    "comp(η_{fd0}, F(ε_{d0})) = comp({et}, {fe}) = {got_txt}, expected {id}",
                    fd0 = c_cat.obj_name(fd),
                    d0 = d_cat.obj_name(d),
                    et = c_cat.mor_name(eta_at_fd),
                    fe = c_cat.mor_name(f_eps),
                    id = c_cat.mor_name(want)
                ),
            ) {
                return;
            }
        }
    }
}

/// Searches for a unit and counit making `f ⊣-style` wiring into a lawful
/// adjunction, by enumerating natural-transformation candidates on both
/// sides and testing the triangles for every pair.
///
/// Returns the first passing pair in enumeration order, `None` when the
/// (complete) enumeration proves no pair exists.  Budget exhaustion inside
/// the enumerations surfaces as [`Error::BudgetExceeded`].
pub fn find_unit_counit(
    f: &Functor,
    g: &Functor,
    limits: Limits,
) -> Result<Option<(NatTrans, NatTrans)>> {
    if f.src() != g.dst() || f.dst() != g.src() {
        return Err(Error::NotComposable {
            detail: "adjunction functors must run between the same two categories, in opposite directions"
                .into(),
        });
    }
    let c = f.dst();
    let d = f.src();
    let fg = compose_functors(g, f)?;
    let gf = compose_functors(f, g)?;
    let units = enumerate_nat_trans(&Functor::identity(c), &fg, limits)?;
    let counits = enumerate_nat_trans(&gf, &Functor::identity(d), limits)?;
    for unit in &units {
        for counit in &counits {
            let adj = Adjunction::new(f.clone(), g.clone(), unit.clone(), counit.clone())?;
            if check_adjunction(&adj, Limits::first_witness()).ok {
                return Ok(Some((unit.clone(), counit.clone())));
            }
        }
    }
    Ok(None)
}
