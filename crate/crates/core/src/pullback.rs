//! Pullback (co-induced) constructions: moving a crossed or 2-crossed
//! module over Q to one over P along a homomorphism φ: P → Q.
//!
//! In dimension one the pulled-back group is the fiber product
//! {(n, p) | v(n) = φ(p)} ⊆ N × P with boundary (n, p) ↦ p and action
//! p'·(n, p) = (φ(p')·n, p' p p'⁻¹). In dimension two the top group is the
//! d2-preimage of Ker d1 and the lifting of pairs is the lifting of their
//! first components.
//!
//! Every theorem conclusion is re-verified at runtime: the constructed
//! module goes through the full validators, the projection goes through the
//! morphism validators, and universal factorizations are checked for
//! existence and (by bounded enumeration) uniqueness.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{
    enumerate_homs, same_group, ActionTable, Elt, FiniteGroup, GroupHom, HOM_ENUM_BOUND,
};
use crate::x2mod::{TwoCrossedModule, X2Morphism};
use crate::xmod::{CrossedModule, XModMorphism};

/// Whether a universal arrow was confirmed unique by enumeration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Uniqueness {
    /// Enumeration found exactly one candidate.
    Unique,
    /// The source group exceeded the enumeration bound; existence was
    /// verified, uniqueness was not checked.
    NotChecked { bound: usize },
}

/// Result of [`pullback_xmod`].
pub struct PullbackXMod {
    /// The pulled-back crossed module over P.
    pub module: CrossedModule,
    /// Projection onto the original module (first components, φ).
    pub proj: XModMorphism,
    /// Pair (n, p) behind each element of the pulled-back group.
    pub legend: Vec<(Elt, Elt)>,
}

type PairIndex = HashMap<(Elt, Elt), Elt>;
type PairGroup = (Arc<FiniteGroup>, Vec<(Elt, Elt)>, PairIndex);

fn pair_group(
    n_grp: &Arc<FiniteGroup>,
    p_grp: &Arc<FiniteGroup>,
    keep: impl Fn(Elt, Elt) -> bool,
) -> Result<PairGroup> {
    let mut legend = Vec::new();
    for n in n_grp.elements() {
        for p in p_grp.elements() {
            if keep(n, p) {
                legend.push((n, p));
            }
        }
    }
    let index: HashMap<(Elt, Elt), Elt> =
        legend.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
    let table = legend
        .iter()
        .map(|&(n1, p1)| {
            legend
                .iter()
                .map(|&(n2, p2)| index[&(n_grp.mul(n1, n2), p_grp.mul(p1, p2))])
                .collect()
        })
        .collect();
    let labels = legend
        .iter()
        .map(|&(n, p)| format!("({},{})", n_grp.label(n), p_grp.label(p)))
        .collect();
    let group = Arc::new(FiniteGroup::from_table(table, Some(labels))?);
    Ok((group, legend, index))
}

/// Pull a crossed module (N, Q, v) back along φ: P → Q.
pub fn pullback_xmod(nmod: &CrossedModule, phi: &GroupHom) -> Result<PullbackXMod> {
    if !same_group(phi.dst(), nmod.p()) {
        return Err(Error::Mismatch("phi must land in the module base".into()));
    }
    let n_grp = nmod.m();
    let q_grp = nmod.p();
    let p_grp = phi.src();
    let v = nmod.boundary();
    let (group, legend, index) = pair_group(n_grp, p_grp, |n, p| v.apply(n) == phi.apply(p))?;
    // Defining condition spot-checked pointwise on the legend.
    for &(n, p) in &legend {
        debug_assert_eq!(v.apply(n), phi.apply(p));
    }

    let boundary = GroupHom::new(
        Arc::clone(&group),
        Arc::clone(p_grp),
        legend.iter().map(|&(_, p)| p).collect(),
    )?;
    let act = ActionTable::new(
        Arc::clone(p_grp),
        Arc::clone(&group),
        p_grp
            .elements()
            .map(|pp| {
                legend
                    .iter()
                    .map(|&(n, p)| index[&(nmod.apply(phi.apply(pp), n), p_grp.conj(pp, p))])
                    .collect()
            })
            .collect(),
    )?;
    let module = CrossedModule::new(Arc::clone(&group), Arc::clone(p_grp), act, boundary)?;

    let to_n = GroupHom::new(
        Arc::clone(&group),
        Arc::clone(n_grp),
        legend.iter().map(|&(n, _)| n).collect(),
    )?;
    let _ = q_grp;
    let proj = XModMorphism::new(module.pre().clone(), nmod.pre().clone(), to_n, phi.clone())?;
    Ok(PullbackXMod {
        module,
        proj,
        legend,
    })
}

/// The universal arrow into a pullback: for a crossed module (M, P, μ) and a
/// morphism (h, φ) into (N, Q, v), factor it through the pullback along φ.
/// The factorization is h'(m) = (h(m), μ(m)); existence, morphism-hood, the
/// commuting triangle and uniqueness are all verified.
pub fn pullback_xmod_universal(
    mmod: &CrossedModule,
    h_phi: &XModMorphism,
    pb: &PullbackXMod,
) -> Result<(GroupHom, Uniqueness)> {
    if h_phi.src() != mmod.pre() {
        return Err(Error::Mismatch("h_phi must start at mmod".into()));
    }
    if h_phi.eta() != pb.proj.eta() {
        return Err(Error::Mismatch(
            "h_phi base map differs from the pullback's phi".into(),
        ));
    }
    let h = h_phi.mu();
    let mu = mmod.boundary();
    let index: HashMap<(Elt, Elt), Elt> = pb
        .legend
        .iter()
        .enumerate()
        .map(|(i, &pr)| (pr, i))
        .collect();
    let map = mmod
        .m()
        .elements()
        .map(|m| {
            index
                .get(&(h.apply(m), mu.apply(m)))
                .copied()
                .ok_or_else(|| Error::NoFactorization {
                    reason: format!("(h({m}), boundary({m})) is not in the fiber product"),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let h_prime = GroupHom::new(Arc::clone(mmod.m()), Arc::clone(pb.module.m()), map)?;

    // h' is a morphism of crossed P-modules.
    XModMorphism::new(
        mmod.pre().clone(),
        pb.module.pre().clone(),
        h_prime.clone(),
        GroupHom::identity(mmod.p()),
    )?;
    // The triangle commutes: first-component projection recovers h.
    for m in mmod.m().elements() {
        if pb.proj.mu().apply(h_prime.apply(m)) != h.apply(m) {
            return Err(Error::NoFactorization {
                reason: format!("projection of h'({m}) differs from h({m})"),
            });
        }
        if pb.module.boundary().apply(h_prime.apply(m)) != mu.apply(m) {
            return Err(Error::NoFactorization {
                reason: format!("boundary of h'({m}) differs from boundary({m})"),
            });
        }
    }

    // Uniqueness among homs satisfying both commutation conditions.
    if mmod.m().order() > HOM_ENUM_BOUND {
        return Ok((
            h_prime,
            Uniqueness::NotChecked {
                bound: HOM_ENUM_BOUND,
            },
        ));
    }
    let candidates: Vec<GroupHom> = enumerate_homs(mmod.m(), pb.module.m())?
        .into_iter()
        .filter(|g| {
            mmod.m().elements().all(|m| {
                pb.proj.mu().apply(g.apply(m)) == h.apply(m)
                    && pb.module.boundary().apply(g.apply(m)) == mu.apply(m)
            })
        })
        .collect();
    match candidates.len() {
        1 => {
            debug_assert_eq!(candidates[0], h_prime);
            Ok((h_prime, Uniqueness::Unique))
        }
        count => Err(Error::NotUnique { count }),
    }
}

/// Result of [`pullback_x2mod`].
pub struct PullbackX2 {
    /// The pulled-back 2-crossed module over P.
    pub module: TwoCrossedModule,
    /// Projection onto the original module.
    pub proj: X2Morphism,
    /// Pair (n, p) behind each middle-group element.
    pub legend_mid: Vec<(Elt, Elt)>,
    /// Element of the original top group behind each top element.
    pub legend_top: Vec<Elt>,
}

/// Pull a 2-crossed module {H, N, Q} back along φ: P → Q.
pub fn pullback_x2mod(x2: &TwoCrossedModule, phi: &GroupHom) -> Result<PullbackX2> {
    if !same_group(phi.dst(), x2.p()) {
        return Err(Error::Mismatch("phi must land in the module base".into()));
    }
    let h_grp = x2.l();
    let n_grp = x2.m();
    let p_grp = phi.src();

    // Top group: the d2-preimage of Ker d1, computed by brute force.
    let top_sub = x2.kernel_preimage();
    let (top, embed) = top_sub.as_group();
    let legend_top: Vec<Elt> = top.elements().map(|t| embed.apply(t)).collect();
    let top_index: HashMap<Elt, Elt> = legend_top
        .iter()
        .enumerate()
        .map(|(i, &h)| (h, i))
        .collect();

    // Middle group: the fiber product over d1(n) = phi(p).
    let (mid, legend_mid, mid_index) =
        pair_group(n_grp, p_grp, |n, p| x2.d1().apply(n) == phi.apply(p))?;

    // d2*(h) = (d2(h), 1); the pair is in the fiber since d1 d2 = 1.
    let d2_star = GroupHom::new(
        Arc::clone(&top),
        Arc::clone(&mid),
        top.elements()
            .map(|t| mid_index[&(x2.d2().apply(embed.apply(t)), 0)])
            .collect(),
    )?;
    let d1_star = GroupHom::new(
        Arc::clone(&mid),
        Arc::clone(p_grp),
        legend_mid.iter().map(|&(_, p)| p).collect(),
    )?;

    // P acts on the top through phi, and diagonally on the middle.
    let act_top = ActionTable::new(
        Arc::clone(p_grp),
        Arc::clone(&top),
        p_grp
            .elements()
            .map(|pp| {
                top.elements()
                    .map(|t| top_index[&x2.act_l().apply(phi.apply(pp), embed.apply(t))])
                    .collect()
            })
            .collect(),
    )?;
    let act_mid = ActionTable::new(
        Arc::clone(p_grp),
        Arc::clone(&mid),
        p_grp
            .elements()
            .map(|pp| {
                legend_mid
                    .iter()
                    .map(|&(n, p)| {
                        mid_index[&(x2.act_m().apply(phi.apply(pp), n), p_grp.conj(pp, p))]
                    })
                    .collect()
            })
            .collect(),
    )?;

    // {(n,p), (n',p')} = {n, n'}, landing in the top group.
    let mut lifting = vec![vec![0; mid.order()]; mid.order()];
    for (i, &(n0, _)) in legend_mid.iter().enumerate() {
        for (j, &(n1, _)) in legend_mid.iter().enumerate() {
            let value = x2.lifting(n0, n1);
            lifting[i][j] = *top_index
                .get(&value)
                .ok_or(Error::LiftingEscapesKernel { n0, n1 })?;
        }
    }

    let module = TwoCrossedModule::new(
        top,
        mid,
        Arc::clone(p_grp),
        d2_star,
        d1_star,
        act_top,
        act_mid,
        lifting,
    )?;

    let to_n = GroupHom::new(
        Arc::clone(module.m()),
        Arc::clone(n_grp),
        legend_mid.iter().map(|&(n, _)| n).collect(),
    )?;
    let _ = h_grp;
    let proj = X2Morphism::new(module.clone(), x2.clone(), embed, to_n, phi.clone())?;
    Ok(PullbackX2 {
        module,
        proj,
        legend_mid,
        legend_top,
    })
}

/// The universal arrow into a 2-dimensional pullback: factor a morphism
/// (f2, f1, φ): {B2, B1, P} → {H, N, Q} through the pullback along φ as
/// (f2*, f1*, id_P) with f2*(b) = f2(b) and f1*(b) = (f1(b), d1'(b)).
pub fn pullback_x2_universal(
    src: &TwoCrossedModule,
    f: &X2Morphism,
    pb: &PullbackX2,
) -> Result<(X2Morphism, Uniqueness)> {
    if f.src() != src {
        return Err(Error::Mismatch("f must start at src".into()));
    }
    if f.f0() != pb.proj.f0() {
        return Err(Error::Mismatch(
            "f base map differs from the pullback's phi".into(),
        ));
    }
    let top_index: HashMap<Elt, Elt> = pb
        .legend_top
        .iter()
        .enumerate()
        .map(|(i, &h)| (h, i))
        .collect();
    let mid_index: HashMap<(Elt, Elt), Elt> = pb
        .legend_mid
        .iter()
        .enumerate()
        .map(|(i, &pr)| (pr, i))
        .collect();

    let f2_star_map = src
        .l()
        .elements()
        .map(|b| {
            top_index
                .get(&f.f2().apply(b))
                .copied()
                .ok_or_else(|| Error::NoFactorization {
                    reason: format!("f2({b}) escapes the kernel preimage"),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let f2_star = GroupHom::new(Arc::clone(src.l()), Arc::clone(pb.module.l()), f2_star_map)?;

    let f1_star_map = src
        .m()
        .elements()
        .map(|b| {
            mid_index
                .get(&(f.f1().apply(b), src.d1().apply(b)))
                .copied()
                .ok_or_else(|| Error::NoFactorization {
                    reason: format!("(f1({b}), d1({b})) is not in the fiber product"),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let f1_star = GroupHom::new(Arc::clone(src.m()), Arc::clone(pb.module.m()), f1_star_map)?;

    let factor = X2Morphism::new(
        src.clone(),
        pb.module.clone(),
        f2_star.clone(),
        f1_star.clone(),
        GroupHom::identity(src.p()),
    )?;
    // Projections recover f.
    for b in src.l().elements() {
        if pb.proj.f2().apply(f2_star.apply(b)) != f.f2().apply(b) {
            return Err(Error::NoFactorization {
                reason: format!("top projection of f2*({b}) differs from f2({b})"),
            });
        }
    }
    for b in src.m().elements() {
        if pb.proj.f1().apply(f1_star.apply(b)) != f.f1().apply(b) {
            return Err(Error::NoFactorization {
                reason: format!("middle projection of f1*({b}) differs from f1({b})"),
            });
        }
    }

    if src.l().order() > HOM_ENUM_BOUND || src.m().order() > HOM_ENUM_BOUND {
        return Ok((
            factor,
            Uniqueness::NotChecked {
                bound: HOM_ENUM_BOUND,
            },
        ));
    }
    // Candidates for each level are pinned by the commutation conditions;
    // pairs are then filtered through the full morphism validator.
    let g2s: Vec<GroupHom> = enumerate_homs(src.l(), pb.module.l())?
        .into_iter()
        .filter(|g| {
            src.l()
                .elements()
                .all(|b| pb.proj.f2().apply(g.apply(b)) == f.f2().apply(b))
        })
        .collect();
    let g1s: Vec<GroupHom> = enumerate_homs(src.m(), pb.module.m())?
        .into_iter()
        .filter(|g| {
            src.m().elements().all(|b| {
                pb.proj.f1().apply(g.apply(b)) == f.f1().apply(b)
                    && pb.module.d1().apply(g.apply(b)) == src.d1().apply(b)
            })
        })
        .collect();
    let mut count = 0;
    for g2 in &g2s {
        for g1 in &g1s {
            if X2Morphism::new(
                src.clone(),
                pb.module.clone(),
                g2.clone(),
                g1.clone(),
                GroupHom::identity(src.p()),
            )
            .is_ok()
            {
                count += 1;
            }
        }
    }
    if count != 1 {
        return Err(Error::NotUnique { count });
    }
    Ok((factor, Uniqueness::Unique))
}
