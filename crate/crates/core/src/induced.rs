//! Induced constructions: moving a crossed module over P to one over Q
//! along φ: P → Q, and moving a 2-crossed module along a pre-crossed
//! morphism θ = (φ', φ), plus push-outs and cokernels in dimension 2.
//!
//! Each construction exists in up to three strategies:
//!
//! - `Epi`: when the defining morphism is surjective the induced object is a
//!   plain quotient (M/\[K,M\] in dimension one, L/\[K,L\] in dimension two,
//!   K the kernel), with every descended map checked for well-definedness.
//! - `Mono` (dimension one): the transversal presentation, a free product of
//!   coset-indexed copies of M collapsed by coset enumeration.
//! - `GeneralTc`: the defining presentation on generators Q×M (dimension
//!   one) or (Q×L) ∪ (N×N) (dimension two), fully instantiated over all
//!   tuples and collapsed by coset enumeration.
//!
//! Relators are materialized concretely; the count is capped (default
//! 20000) with a hard error rather than silent truncation. Enumeration that
//! hits the coset limit yields an `UndecidedAtLimit` result that still
//! carries its presentation so callers can retry with a larger budget.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp::{todd_coxeter, CosetGroup, Enumeration, Letter, Presentation, Word};
use crate::group::{
    action_commutator_subgroup, enumerate_homs, left_transversal, quotient, same_group,
    ActionTable, Elt, FiniteGroup, GroupHom, Subgroup, HOM_ENUM_BOUND,
};
use crate::pullback::Uniqueness;
use crate::x2mod::{TwoCrossedModule, X2Morphism};
use crate::xmod::{minimal_section, CrossedModule, PreCrossedModule, XModMorphism};

pub const DEFAULT_COSET_LIMIT: usize = 100_000;
pub const DEFAULT_RELATOR_CAP: usize = 20_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Auto,
    Epi,
    Mono,
    GeneralTc,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StrategyUsed {
    Epi,
    Mono,
    GeneralTc,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InducedStatus {
    Decided,
    UndecidedAtLimit { limit: usize },
}

/// Knobs shared by the induced constructions.
#[derive(Clone, Copy, Debug)]
pub struct InducedOptions {
    pub strategy: Strategy,
    pub coset_limit: usize,
    pub relator_cap: usize,
    /// Use the alternative second-exchange relator form in the dimension-2
    /// presentation (kept for comparison; default off).
    pub alt_exchange_relators: bool,
}

impl Default for InducedOptions {
    fn default() -> Self {
        InducedOptions {
            strategy: Strategy::Auto,
            coset_limit: DEFAULT_COSET_LIMIT,
            relator_cap: DEFAULT_RELATOR_CAP,
            alt_exchange_relators: false,
        }
    }
}

fn cap_check(count: usize, cap: usize) -> Result<()> {
    if count > cap {
        Err(Error::RelatorCapExceeded { count, cap })
    } else {
        Ok(())
    }
}

/// Result of [`induced_xmod`].
pub struct InducedXMod {
    pub module: Option<CrossedModule>,
    /// The canonical map M → induced group (class of (1, m)).
    pub canonical: Option<GroupHom>,
    pub presentation: Presentation,
    pub strategy_used: StrategyUsed,
    pub status: InducedStatus,
    pub enumeration: Option<CosetGroup>,
}

impl InducedXMod {
    pub fn module(&self) -> Result<&CrossedModule> {
        self.module.as_ref().ok_or(Error::NotDecided)
    }

    pub fn canonical(&self) -> Result<&GroupHom> {
        self.canonical.as_ref().ok_or(Error::NotDecided)
    }
}

/// The defining presentation of the induced crossed module on generators
/// Q × M: per-fiber multiplication, action identification, and the
/// conjugation-equals-action relators, fully instantiated.
pub fn induced_xmod_presentation(
    mmod: &CrossedModule,
    phi: &GroupHom,
    cap: usize,
) -> Result<Presentation> {
    if !same_group(phi.src(), mmod.p()) {
        return Err(Error::Mismatch("phi must start at the module base".into()));
    }
    let m = mmod.m();
    let p = mmod.p();
    let q = phi.dst();
    let (nm, np, nq) = (m.order(), p.order(), q.order());
    cap_check(nq * nm * nm + nq * nm * np + nq * nq * nm * nm, cap)?;

    let gen = |qq: Elt, mm: Elt| Letter::new(qq * nm + mm);
    let gens = (0..nq * nm)
        .map(|i| format!("q{}m{}", i / nm, i % nm))
        .collect();
    let legend = (0..nq * nm)
        .map(|i| format!("({},{})", q.label(i / nm), m.label(i % nm)))
        .collect();
    let mu = mmod.boundary();
    let mut relators = Vec::new();
    for qq in q.elements() {
        for m1 in m.elements() {
            for m2 in m.elements() {
                relators.push(Word::from_letters([
                    gen(qq, m1),
                    gen(qq, m2),
                    gen(qq, m.mul(m1, m2)).inv(),
                ]));
            }
        }
    }
    for qq in q.elements() {
        for pp in p.elements() {
            for mm in m.elements() {
                relators.push(Word::from_letters([
                    gen(qq, mmod.apply(pp, mm)),
                    gen(q.mul(qq, phi.apply(pp)), mm).inv(),
                ]));
            }
        }
    }
    for q1 in q.elements() {
        for m1 in m.elements() {
            let twist = q.mul(q.conj(q1, phi.apply(mu.apply(m1))), 0);
            for q2 in q.elements() {
                let q2t = q.mul(twist, q2);
                for m2 in m.elements() {
                    relators.push(Word::from_letters([
                        gen(q1, m1),
                        gen(q2, m2),
                        gen(q1, m1).inv(),
                        gen(q2t, m2).inv(),
                    ]));
                }
            }
        }
    }
    Ok(Presentation::new(gens, relators)?.with_legend(legend))
}

/// The transversal presentation for an injective φ: one copy of M per left
/// coset of φ(P) in Q, with generator-pair conjugation relators.
pub fn induced_xmod_presentation_mono(
    mmod: &CrossedModule,
    phi: &GroupHom,
    cap: usize,
) -> Result<(Presentation, Vec<Elt>)> {
    if !phi.is_injective() {
        return Err(Error::StrategyMismatch {
            requested: "mono",
            reason: "phi is not injective".into(),
        });
    }
    let m = mmod.m();
    let q = phi.dst();
    let nm = m.order();
    let image = phi.image();
    let transversal = left_transversal(q, &image);
    let nt = transversal.len();
    cap_check(nt * nm * nm + nt * nt * nm * nm, cap)?;

    // coset representative and P-part of q·t = u·phi(p)
    let rep_of = |x: Elt| -> (usize, Elt) {
        for (i, &t) in transversal.iter().enumerate() {
            let rest = q.mul(q.inv(t), x);
            if image.contains(rest) {
                let p_elt = phi
                    .preimages(rest)
                    .first()
                    .copied()
                    .expect("rest is in the image");
                return (i, p_elt);
            }
        }
        unreachable!("transversal covers Q");
    };

    let gen = |ti: usize, mm: Elt| Letter::new(ti * nm + mm);
    let gens = (0..nt * nm)
        .map(|i| format!("t{}m{}", i / nm, i % nm))
        .collect();
    let legend = (0..nt * nm)
        .map(|i| format!("({},{})", q.label(transversal[i / nm]), m.label(i % nm)))
        .collect();
    let mu = mmod.boundary();
    let mut relators = Vec::new();
    for ti in 0..nt {
        for m1 in m.elements() {
            for m2 in m.elements() {
                relators.push(Word::from_letters([
                    gen(ti, m1),
                    gen(ti, m2),
                    gen(ti, m.mul(m1, m2)).inv(),
                ]));
            }
        }
    }
    // b c b^-1 = (delta b)·c over generator pairs.
    for ti in 0..nt {
        for m1 in m.elements() {
            let delta = q.conj(transversal[ti], phi.apply(mu.apply(m1)));
            for tj in 0..nt {
                let (u, p_elt) = rep_of(q.mul(delta, transversal[tj]));
                for m2 in m.elements() {
                    relators.push(Word::from_letters([
                        gen(ti, m1),
                        gen(tj, m2),
                        gen(ti, m1).inv(),
                        gen(u, mmod.apply(p_elt, m2)).inv(),
                    ]));
                }
            }
        }
    }
    Ok((
        Presentation::new(gens, relators)?.with_legend(legend),
        transversal,
    ))
}

/// Build the crossed module over Q presented by a completed enumeration,
/// given the boundary and action on the presentation generators.
fn module_from_enumeration(
    q: &Arc<FiniteGroup>,
    cg: &CosetGroup,
    boundary_of_gen: impl Fn(usize) -> Elt,
    action_on_gen: impl Fn(Elt, usize) -> usize,
) -> Result<CrossedModule> {
    let ngens = cg.gen_images.len();
    let boundary_images: Vec<Elt> = (0..ngens).map(&boundary_of_gen).collect();
    let boundary = cg.hom_from_gen_images(q, &boundary_images)?;
    let rows = q
        .elements()
        .map(|qq| {
            cg.words
                .iter()
                .map(|w| {
                    w.letters().iter().fold(0, |acc, l| {
                        let im = cg.gen_images[action_on_gen(qq, l.gen)];
                        let g = &cg.group;
                        g.mul(acc, if l.inverse { g.inv(im) } else { im })
                    })
                })
                .collect()
        })
        .collect();
    let act = ActionTable::new(Arc::clone(q), Arc::clone(&cg.group), rows)?;
    CrossedModule::new(Arc::clone(&cg.group), Arc::clone(q), act, boundary)
}

/// Induce a crossed module along φ: P → Q.
pub fn induced_xmod(
    mmod: &CrossedModule,
    phi: &GroupHom,
    opts: InducedOptions,
) -> Result<InducedXMod> {
    if !same_group(phi.src(), mmod.p()) {
        return Err(Error::Mismatch("phi must start at the module base".into()));
    }
    let strategy = match opts.strategy {
        Strategy::Auto => {
            if phi.is_surjective() {
                StrategyUsed::Epi
            } else if phi.is_injective() {
                StrategyUsed::Mono
            } else {
                StrategyUsed::GeneralTc
            }
        }
        Strategy::Epi => StrategyUsed::Epi,
        Strategy::Mono => StrategyUsed::Mono,
        Strategy::GeneralTc => StrategyUsed::GeneralTc,
    };
    let presentation = induced_xmod_presentation(mmod, phi, opts.relator_cap)?;
    let m = mmod.m();
    let q = phi.dst();
    let nm = m.order();

    match strategy {
        StrategyUsed::Epi => {
            if !phi.is_surjective() {
                return Err(Error::StrategyMismatch {
                    requested: "epi",
                    reason: "phi is not surjective".into(),
                });
            }
            let k = phi.kernel();
            let km = action_commutator_subgroup(&k, mmod.act())?;
            let (n_grp, proj) = quotient(m, &km)?;
            let section = minimal_section(&proj);
            let mu = mmod.boundary();
            let boundary = GroupHom::new(
                Arc::clone(&n_grp),
                Arc::clone(q),
                n_grp
                    .elements()
                    .map(|c| phi.apply(mu.apply(section[c])))
                    .collect(),
            )?;
            for mm in m.elements() {
                if boundary.apply(proj.apply(mm)) != phi.apply(mu.apply(mm)) {
                    return Err(Error::NotWellDefined {
                        witness: format!("boundary differs on the class of {mm}"),
                    });
                }
            }
            let phi_section = minimal_section(phi);
            let act = ActionTable::new(
                Arc::clone(q),
                Arc::clone(&n_grp),
                q.elements()
                    .map(|qq| {
                        n_grp
                            .elements()
                            .map(|c| proj.apply(mmod.apply(phi_section[qq], section[c])))
                            .collect()
                    })
                    .collect(),
            )?;
            // The action must be independent of the representative choices.
            for qq in q.elements() {
                for pp in phi.preimages(qq) {
                    for mm in m.elements() {
                        if proj.apply(mmod.apply(pp, mm)) != act.apply(qq, proj.apply(mm)) {
                            return Err(Error::NotWellDefined {
                                witness: format!(
                                    "action of {qq} via preimage {pp} differs on element {mm}"
                                ),
                            });
                        }
                    }
                }
            }
            let module = CrossedModule::new(Arc::clone(&n_grp), Arc::clone(q), act, boundary)?;
            Ok(InducedXMod {
                module: Some(module),
                canonical: Some(proj),
                presentation,
                strategy_used: StrategyUsed::Epi,
                status: InducedStatus::Decided,
                enumeration: None,
            })
        }
        StrategyUsed::Mono => {
            let (pres, transversal) = induced_xmod_presentation_mono(mmod, phi, opts.relator_cap)?;
            let image = phi.image();
            let rep_of = |x: Elt| -> (usize, Elt) {
                for (i, &t) in transversal.iter().enumerate() {
                    let rest = q.mul(q.inv(t), x);
                    if image.contains(rest) {
                        let p_elt = phi.preimages(rest)[0];
                        return (i, p_elt);
                    }
                }
                unreachable!("transversal covers Q");
            };
            match todd_coxeter(&pres, opts.coset_limit)? {
                Enumeration::LimitExceeded { limit, .. } => Ok(InducedXMod {
                    module: None,
                    canonical: None,
                    presentation: pres,
                    strategy_used: StrategyUsed::Mono,
                    status: InducedStatus::UndecidedAtLimit { limit },
                    enumeration: None,
                }),
                Enumeration::Complete(cg) => {
                    let mu = mmod.boundary();
                    let module = module_from_enumeration(
                        q,
                        &cg,
                        |g| q.conj(transversal[g / nm], phi.apply(mu.apply(g % nm))),
                        |qq, g| {
                            let (u, p_elt) = rep_of(q.mul(qq, transversal[g / nm]));
                            u * nm + mmod.apply(p_elt, g % nm)
                        },
                    )?;
                    let canonical = GroupHom::new(
                        Arc::clone(m),
                        Arc::clone(module.m()),
                        m.elements().map(|mm| cg.gen_images[mm]).collect(),
                    )?;
                    Ok(InducedXMod {
                        module: Some(module),
                        canonical: Some(canonical),
                        presentation: pres,
                        strategy_used: StrategyUsed::Mono,
                        status: InducedStatus::Decided,
                        enumeration: Some(cg),
                    })
                }
            }
        }
        StrategyUsed::GeneralTc => match todd_coxeter(&presentation, opts.coset_limit)? {
            Enumeration::LimitExceeded { limit, .. } => Ok(InducedXMod {
                module: None,
                canonical: None,
                presentation,
                strategy_used: StrategyUsed::GeneralTc,
                status: InducedStatus::UndecidedAtLimit { limit },
                enumeration: None,
            }),
            Enumeration::Complete(cg) => {
                let mu = mmod.boundary();
                let module = module_from_enumeration(
                    q,
                    &cg,
                    |g| q.conj(g / nm, phi.apply(mu.apply(g % nm))),
                    |qq, g| q.mul(qq, g / nm) * nm + g % nm,
                )?;
                let canonical = GroupHom::new(
                    Arc::clone(m),
                    Arc::clone(module.m()),
                    m.elements().map(|mm| cg.gen_images[mm]).collect(),
                )?;
                Ok(InducedXMod {
                    module: Some(module),
                    canonical: Some(canonical),
                    presentation,
                    strategy_used: StrategyUsed::GeneralTc,
                    status: InducedStatus::Decided,
                    enumeration: Some(cg),
                })
            }
        },
    }
}

/// The universal arrow out of an induced crossed module: given a morphism
/// (h, φ): mmod → nmod over the inducing map, produce the unique
/// h': φ*(M) → N with h' ∘ canonical = h as crossed Q-module morphisms.
pub fn induced_xmod_universal(
    result: &InducedXMod,
    mmod: &CrossedModule,
    phi: &GroupHom,
    h_phi: &XModMorphism,
) -> Result<(GroupHom, Uniqueness)> {
    let module = result.module()?;
    let canonical = result.canonical()?;
    if h_phi.src() != mmod.pre() {
        return Err(Error::Mismatch("h_phi must start at mmod".into()));
    }
    if h_phi.eta() != phi {
        return Err(Error::Mismatch("h_phi base map must equal phi".into()));
    }
    let nmod = h_phi.dst();
    if !same_group(nmod.p(), phi.dst()) {
        return Err(Error::Mismatch("nmod must live over Q".into()));
    }
    let h = h_phi.mu();
    let m = mmod.m();
    let nm = m.order();

    let h_prime = match (&result.enumeration, result.strategy_used) {
        (Some(cg), used) => {
            // Generator images (q_part, m) ↦ q_part · h(m); verify every
            // relator dies in N before building the homomorphism.
            let q = phi.dst();
            let gen_image: Vec<Elt> = (0..cg.gen_images.len())
                .map(|g| {
                    let (q_part, m_part) = (g / nm, g % nm);
                    let q_elt = match used {
                        StrategyUsed::Mono => {
                            let image = phi.image();
                            let t = left_transversal(q, &image);
                            t[q_part]
                        }
                        _ => q_part,
                    };
                    nmod.apply(q_elt, h.apply(m_part))
                })
                .collect();
            let n_grp = nmod.m();
            for (i, rel) in result.presentation.relators().iter().enumerate() {
                let v = rel.letters().iter().fold(0, |acc, l| {
                    let im = gen_image[l.gen];
                    n_grp.mul(acc, if l.inverse { n_grp.inv(im) } else { im })
                });
                if v != 0 {
                    return Err(Error::NotWellDefined {
                        witness: format!("relator #{i} has nontrivial image"),
                    });
                }
            }
            cg.hom_from_gen_images(n_grp, &gen_image)?
        }
        (None, _) => {
            // Epi path: h' on a class is h of any representative.
            let section = minimal_section(canonical);
            let map = module.m().elements().map(|c| h.apply(section[c])).collect();
            let h_prime = GroupHom::new(Arc::clone(module.m()), Arc::clone(nmod.m()), map)?;
            for mm in m.elements() {
                if h_prime.apply(canonical.apply(mm)) != h.apply(mm) {
                    return Err(Error::NotWellDefined {
                        witness: format!("h does not descend at element {mm}"),
                    });
                }
            }
            h_prime
        }
    };

    // h' is a morphism of crossed Q-modules and the triangle commutes.
    XModMorphism::new(
        module.pre().clone(),
        nmod.clone(),
        h_prime.clone(),
        GroupHom::identity(phi.dst()),
    )?;
    for mm in m.elements() {
        if h_prime.apply(canonical.apply(mm)) != h.apply(mm) {
            return Err(Error::NoFactorization {
                reason: format!("h'(canonical({mm})) differs from h({mm})"),
            });
        }
    }

    if module.m().order() > HOM_ENUM_BOUND {
        return Ok((
            h_prime,
            Uniqueness::NotChecked {
                bound: HOM_ENUM_BOUND,
            },
        ));
    }
    let count = enumerate_homs(module.m(), nmod.m())?
        .into_iter()
        .filter(|g| {
            m.elements()
                .all(|mm| g.apply(canonical.apply(mm)) == h.apply(mm))
                && XModMorphism::new(
                    module.pre().clone(),
                    nmod.clone(),
                    g.clone(),
                    GroupHom::identity(phi.dst()),
                )
                .is_ok()
        })
        .count();
    if count != 1 {
        return Err(Error::NotUnique { count });
    }
    Ok((h_prime, Uniqueness::Unique))
}

/// Result of [`induced_x2mod`].
pub struct InducedX2 {
    pub module: Option<TwoCrossedModule>,
    /// The canonical map L → induced top group (class of (1, l)).
    pub canonical: Option<GroupHom>,
    pub presentation: Presentation,
    pub strategy_used: StrategyUsed,
    pub status: InducedStatus,
    pub enumeration: Option<CosetGroup>,
}

impl InducedX2 {
    pub fn module(&self) -> Result<&TwoCrossedModule> {
        self.module.as_ref().ok_or(Error::NotDecided)
    }

    pub fn canonical(&self) -> Result<&GroupHom> {
        self.canonical.as_ref().ok_or(Error::NotDecided)
    }
}

fn check_theta(theta: &XModMorphism, x2: &TwoCrossedModule) -> Result<()> {
    let src = theta.src();
    if !same_group(src.m(), x2.m())
        || !same_group(src.p(), x2.p())
        || src.boundary() != x2.d1()
        || src.act() != x2.act_m()
    {
        return Err(Error::Mismatch(
            "theta must start at the base pre-crossed module of the 2-crossed module".into(),
        ));
    }
    Ok(())
}

/// Generator bookkeeping for the dimension-2 presentation: top-group
/// generators (q, l) come first, then the lifting generators (n1, n2).
struct X2Gens {
    nl: usize,
    nn: usize,
    nq: usize,
}

impl X2Gens {
    fn ql(&self, q: Elt, l: Elt) -> Letter {
        Letter::new(q * self.nl + l)
    }

    fn nn(&self, n1: Elt, n2: Elt) -> Letter {
        Letter::new(self.nq * self.nl + n1 * self.nn + n2)
    }

    fn total(&self) -> usize {
        self.nq * self.nl + self.nn * self.nn
    }
}

/// A normal-form element (q, l)(n1, n2) of the free product, used to
/// instantiate the relator schemas.
#[derive(Clone, Copy)]
struct Quad {
    q: Elt,
    l: Elt,
    n1: Elt,
    n2: Elt,
}

/// The defining presentation of the induced 2-crossed module on generators
/// (Q × L) ∪ (N × N).
pub fn induced_x2mod_presentation(
    theta: &XModMorphism,
    x2: &TwoCrossedModule,
    cap: usize,
    alt_exchange: bool,
) -> Result<Presentation> {
    check_theta(theta, x2)?;
    let dst = theta.dst();
    let (n_grp, q_grp, beta) = (dst.m(), dst.p(), dst.boundary());
    let l_grp = x2.l();
    let g = X2Gens {
        nl: l_grp.order(),
        nn: n_grp.order(),
        nq: q_grp.order(),
    };
    let quads = g.nq * g.nl * g.nn * g.nn;
    let count = g.nq * g.nl * g.nl          // fiber multiplication
        + x2.p().order() * g.nl              // action identification
        + x2.m().order() * x2.m().order()    // lifting identification
        + quads * quads                      // lifted-commutator relators
        + 2 * g.nn * g.nn * g.nn             // exchange relators
        + 2 * quads * g.nn; // boundary-pairing relators
    cap_check(count, cap)?;

    let gens = (0..g.total())
        .map(|i| {
            if i < g.nq * g.nl {
                format!("q{}l{}", i / g.nl, i % g.nl)
            } else {
                let j = i - g.nq * g.nl;
                format!("n{}x{}", j / g.nn, j % g.nn)
            }
        })
        .collect();
    let legend = (0..g.total())
        .map(|i| {
            if i < g.nq * g.nl {
                format!("({},{})", q_grp.label(i / g.nl), l_grp.label(i % g.nl))
            } else {
                let j = i - g.nq * g.nl;
                format!("{{{},{}}}", n_grp.label(j / g.nn), n_grp.label(j % g.nn))
            }
        })
        .collect();

    // Peiffer pairing in the target pre-crossed module.
    let angle = |n1: Elt, n2: Elt| -> Elt {
        let lhs = n_grp.mul(n_grp.mul(n1, n2), n_grp.inv(n1));
        n_grp.mul(lhs, dst.apply(beta.apply(n1), n_grp.inv(n2)))
    };
    // Boundary of a normal-form product: (q·phi'(d2 l)) · <n1, n2>.
    let dbar = |w: Quad| -> Elt {
        n_grp.mul(
            dst.apply(w.q, theta.mu().apply(x2.d2().apply(w.l))),
            angle(w.n1, w.n2),
        )
    };
    let word_of = |w: Quad| Word::from_letters([g.ql(w.q, w.l), g.nn(w.n1, w.n2)]);
    // n-action through the lifting: n·w = w · {dbar(w)^-1, n}.
    let n_act = |w: Quad, n: Elt| -> Word {
        word_of(w).concat(&Word::from_letters([g.nn(n_grp.inv(dbar(w)), n)]))
    };
    // Q-action on a normal-form product.
    let q_act = |qq: Elt, w: Quad| -> Word {
        Word::from_letters([
            g.ql(q_grp.mul(qq, w.q), w.l),
            g.nn(dst.apply(qq, w.n1), dst.apply(qq, w.n2)),
        ])
    };

    let all_quads: Vec<Quad> = (0..g.nq)
        .flat_map(|q| (0..g.nl).map(move |l| (q, l)))
        .flat_map(|(q, l)| {
            (0..g.nn).flat_map(move |n1| (0..g.nn).map(move |n2| Quad { q, l, n1, n2 }))
        })
        .collect();

    let mut relators = Vec::new();
    // Fiber multiplication: (q, l1)(q, l2) = (q, l1 l2).
    for qq in 0..g.nq {
        for l1 in 0..g.nl {
            for l2 in 0..g.nl {
                relators.push(Word::from_letters([
                    g.ql(qq, l1),
                    g.ql(qq, l2),
                    g.ql(qq, l_grp.mul(l1, l2)).inv(),
                ]));
            }
        }
    }
    // Action identification: (phi(p), l) = (1, p·l).
    for pp in x2.p().elements() {
        for ll in 0..g.nl {
            relators.push(Word::from_letters([
                g.ql(theta.eta().apply(pp), ll),
                g.ql(0, x2.act_l().apply(pp, ll)).inv(),
            ]));
        }
    }
    // Lifting identification: {phi'(m1), phi'(m2)} = image of {m1, m2}.
    for m1 in x2.m().elements() {
        for m2 in x2.m().elements() {
            relators.push(Word::from_letters([
                g.nn(theta.mu().apply(m1), theta.mu().apply(m2)),
                g.ql(0, x2.lifting(m1, m2)).inv(),
            ]));
        }
    }
    // Lifted commutators: {dbar(u), dbar(v)} = [u, v].
    for &u in &all_quads {
        for &v in &all_quads {
            let wu = word_of(u);
            let wv = word_of(v);
            let comm = Word::product(&[&wu, &wv, &wu.inverse(), &wv.inverse()]);
            relators.push(
                Word::from_letters([g.nn(dbar(u), dbar(v))])
                    .inverse()
                    .concat(&comm),
            );
        }
    }
    // Exchange relators over N^3.
    for n0 in 0..g.nn {
        for n1 in 0..g.nn {
            for n2 in 0..g.nn {
                // {n0, n1 n2} = ^(n0 n1 n0^-1){n0, n2} · {n0, n1}
                let lhs = Word::from_letters([g.nn(n0, n_grp.mul(n1, n2))]);
                let target = Quad {
                    q: 0,
                    l: 0,
                    n1: n0,
                    n2,
                };
                // ^n(n0, n2) with n = n0 n1 n0^-1, on a pure lifting generator.
                let acted = n_act(target, n_grp.conj(n0, n1));
                let rhs = acted.concat(&Word::from_letters([g.nn(n0, n1)]));
                relators.push(lhs.inverse().concat(&rhs));

                // {n0 n1, n2}: either the axiom form or the alternative.
                let lhs = Word::from_letters([g.nn(n_grp.mul(n0, n1), n2)]);
                let rhs = if alt_exchange {
                    // {n0, n1 n2^-1 n1}{n0, n1}
                    let mid = n_grp.mul(n_grp.mul(n1, n_grp.inv(n2)), n1);
                    Word::from_letters([g.nn(n0, mid), g.nn(n0, n1)])
                } else {
                    // {n0, n1 n2 n1^-1} · (beta(n0)·{n1, n2})
                    let mid = n_grp.conj(n1, n2);
                    Word::from_letters([
                        g.nn(n0, mid),
                        g.nn(dst.apply(beta.apply(n0), n1), dst.apply(beta.apply(n0), n2)),
                    ])
                };
                relators.push(lhs.inverse().concat(&rhs));
            }
        }
    }
    // Boundary pairings: {dbar(w), n} = w (n·w)^-1 and
    // {n, dbar(w)} = (n·w) (beta(n)·w)^-1.
    for &w in &all_quads {
        let ww = word_of(w);
        for n in 0..g.nn {
            let lhs = Word::from_letters([g.nn(dbar(w), n)]);
            let rhs = ww.concat(&n_act(w, n).inverse());
            relators.push(lhs.inverse().concat(&rhs));

            let lhs = Word::from_letters([g.nn(n, dbar(w))]);
            let rhs = n_act(w, n).concat(&q_act(beta.apply(n), w).inverse());
            relators.push(lhs.inverse().concat(&rhs));
        }
    }
    Ok(Presentation::new(gens, relators)?.with_legend(legend))
}

/// The transversal presentation in dimension 2, for an injective φ: one
/// copy of L per left coset of φ(P) in Q plus the lifting generators
/// (n1, n2), with the same structural relator families. Returns the
/// presentation and the transversal used.
pub fn induced_x2mod_presentation_mono(
    theta: &XModMorphism,
    x2: &TwoCrossedModule,
    cap: usize,
) -> Result<(Presentation, Vec<Elt>)> {
    check_theta(theta, x2)?;
    let phi = theta.eta();
    if !phi.is_injective() {
        return Err(Error::StrategyMismatch {
            requested: "mono",
            reason: "phi is not injective".into(),
        });
    }
    let dst = theta.dst();
    let (n_grp, q_grp, beta) = (dst.m(), dst.p(), dst.boundary());
    let l_grp = x2.l();
    let image = phi.image();
    let transversal = left_transversal(q_grp, &image);
    let (nl, nn, nt) = (l_grp.order(), n_grp.order(), transversal.len());
    let quads = nt * nl * nn * nn;
    let count = nt * nl * nl
        + x2.m().order() * x2.m().order()
        + quads * quads
        + 2 * nn * nn * nn
        + 2 * quads * nn;
    cap_check(count, cap)?;

    // coset representative and P-part of x = u·phi(p)
    let rep_of = |x: Elt| -> (usize, Elt) {
        for (i, &t) in transversal.iter().enumerate() {
            let rest = q_grp.mul(q_grp.inv(t), x);
            if image.contains(rest) {
                return (i, phi.preimages(rest)[0]);
            }
        }
        unreachable!("transversal covers Q");
    };
    let tl = |ti: usize, l: Elt| Letter::new(ti * nl + l);
    let gn = |n1: Elt, n2: Elt| Letter::new(nt * nl + n1 * nn + n2);
    let gens = (0..nt * nl + nn * nn)
        .map(|i| {
            if i < nt * nl {
                format!("t{}l{}", i / nl, i % nl)
            } else {
                let j = i - nt * nl;
                format!("n{}x{}", j / nn, j % nn)
            }
        })
        .collect();
    let legend = (0..nt * nl + nn * nn)
        .map(|i| {
            if i < nt * nl {
                format!(
                    "({},{})",
                    q_grp.label(transversal[i / nl]),
                    l_grp.label(i % nl)
                )
            } else {
                let j = i - nt * nl;
                format!("{{{},{}}}", n_grp.label(j / nn), n_grp.label(j % nn))
            }
        })
        .collect();

    let angle = |n1: Elt, n2: Elt| -> Elt {
        let lhs = n_grp.mul(n_grp.mul(n1, n2), n_grp.inv(n1));
        n_grp.mul(lhs, dst.apply(beta.apply(n1), n_grp.inv(n2)))
    };
    struct MQuad {
        t: usize,
        l: Elt,
        n1: Elt,
        n2: Elt,
    }
    let dbar = |w: &MQuad| -> Elt {
        n_grp.mul(
            dst.apply(transversal[w.t], theta.mu().apply(x2.d2().apply(w.l))),
            angle(w.n1, w.n2),
        )
    };
    let word_of = |w: &MQuad| Word::from_letters([tl(w.t, w.l), gn(w.n1, w.n2)]);
    let n_act = |w: &MQuad, n: Elt| -> Word {
        word_of(w).concat(&Word::from_letters([gn(n_grp.inv(dbar(w)), n)]))
    };
    let q_act = |qq: Elt, w: &MQuad| -> Word {
        let (u, p_elt) = rep_of(q_grp.mul(qq, transversal[w.t]));
        Word::from_letters([
            tl(u, x2.act_l().apply(p_elt, w.l)),
            gn(dst.apply(qq, w.n1), dst.apply(qq, w.n2)),
        ])
    };
    let all_quads: Vec<MQuad> = (0..nt)
        .flat_map(|t| (0..nl).map(move |l| (t, l)))
        .flat_map(|(t, l)| {
            (0..nn).flat_map(move |n1| (0..nn).map(move |n2| MQuad { t, l, n1, n2 }))
        })
        .collect();

    let mut relators = Vec::new();
    for ti in 0..nt {
        for l1 in 0..nl {
            for l2 in 0..nl {
                relators.push(Word::from_letters([
                    tl(ti, l1),
                    tl(ti, l2),
                    tl(ti, l_grp.mul(l1, l2)).inv(),
                ]));
            }
        }
    }
    for m1 in x2.m().elements() {
        for m2 in x2.m().elements() {
            relators.push(Word::from_letters([
                gn(theta.mu().apply(m1), theta.mu().apply(m2)),
                tl(0, x2.lifting(m1, m2)).inv(),
            ]));
        }
    }
    for u in &all_quads {
        for v in &all_quads {
            let wu = word_of(u);
            let wv = word_of(v);
            let comm = Word::product(&[&wu, &wv, &wu.inverse(), &wv.inverse()]);
            relators.push(
                Word::from_letters([gn(dbar(u), dbar(v))])
                    .inverse()
                    .concat(&comm),
            );
        }
    }
    for n0 in 0..nn {
        for n1 in 0..nn {
            for n2 in 0..nn {
                let lhs = Word::from_letters([gn(n0, n_grp.mul(n1, n2))]);
                let target = MQuad {
                    t: 0,
                    l: 0,
                    n1: n0,
                    n2,
                };
                let acted = n_act(&target, n_grp.conj(n0, n1));
                let rhs = acted.concat(&Word::from_letters([gn(n0, n1)]));
                relators.push(lhs.inverse().concat(&rhs));

                let lhs = Word::from_letters([gn(n_grp.mul(n0, n1), n2)]);
                let mid = n_grp.conj(n1, n2);
                let rhs = Word::from_letters([
                    gn(n0, mid),
                    gn(dst.apply(beta.apply(n0), n1), dst.apply(beta.apply(n0), n2)),
                ]);
                relators.push(lhs.inverse().concat(&rhs));
            }
        }
    }
    for w in &all_quads {
        let ww = word_of(w);
        for n in 0..nn {
            let lhs = Word::from_letters([gn(dbar(w), n)]);
            let rhs = ww.concat(&n_act(w, n).inverse());
            relators.push(lhs.inverse().concat(&rhs));

            let lhs = Word::from_letters([gn(n, dbar(w))]);
            let rhs = n_act(w, n).concat(&q_act(beta.apply(n), w).inverse());
            relators.push(lhs.inverse().concat(&rhs));
        }
    }
    Ok((
        Presentation::new(gens, relators)?.with_legend(legend),
        transversal,
    ))
}

/// Induce a 2-crossed module {L, M, P} along a pre-crossed morphism theta.
pub fn induced_x2mod(
    theta: &XModMorphism,
    x2: &TwoCrossedModule,
    opts: InducedOptions,
) -> Result<InducedX2> {
    check_theta(theta, x2)?;
    let strategy = match opts.strategy {
        Strategy::Auto => {
            if theta.mu().is_surjective() && theta.eta().is_surjective() {
                StrategyUsed::Epi
            } else {
                StrategyUsed::GeneralTc
            }
        }
        Strategy::Epi => StrategyUsed::Epi,
        Strategy::Mono => {
            return Err(Error::StrategyMismatch {
                requested: "mono",
                reason: "dimension-2 induction supports epi and general strategies".into(),
            })
        }
        Strategy::GeneralTc => StrategyUsed::GeneralTc,
    };
    let presentation =
        induced_x2mod_presentation(theta, x2, opts.relator_cap, opts.alt_exchange_relators)?;

    // The quotient fast path hinges on the descended lifting being
    // well-defined, which the surjectivity of theta alone does not grant.
    // Under Auto a failed well-definedness check falls back to enumeration;
    // an explicit Epi request surfaces the error.
    if strategy == StrategyUsed::Epi {
        match induced_x2_epi(theta, x2, presentation.clone()) {
            Err(Error::NotWellDefined { .. }) if opts.strategy == Strategy::Auto => {}
            other => return other,
        }
    }
    induced_x2_general(theta, x2, presentation, opts)
}

fn induced_x2_epi(
    theta: &XModMorphism,
    x2: &TwoCrossedModule,
    presentation: Presentation,
) -> Result<InducedX2> {
    let dst = theta.dst();
    let (n_grp, q_grp, beta) = (dst.m(), dst.p(), dst.boundary());
    if !theta.mu().is_surjective() || !theta.eta().is_surjective() {
        return Err(Error::StrategyMismatch {
            requested: "epi",
            reason: "theta is not a surjection on both levels".into(),
        });
    }
    let k = theta.eta().kernel();
    let kl = action_commutator_subgroup(&k, x2.act_l())?;
    let (lq, proj) = quotient(x2.l(), &kl)?;
    let l_section = minimal_section(&proj);
    let d_star = GroupHom::new(
        Arc::clone(&lq),
        Arc::clone(n_grp),
        lq.elements()
            .map(|c| theta.mu().apply(x2.d2().apply(l_section[c])))
            .collect(),
    )?;
    for ll in x2.l().elements() {
        if d_star.apply(proj.apply(ll)) != theta.mu().apply(x2.d2().apply(ll)) {
            return Err(Error::NotWellDefined {
                witness: format!("boundary differs on the class of {ll}"),
            });
        }
    }
    let eta_section = minimal_section(theta.eta());
    let act_lq = ActionTable::new(
        Arc::clone(q_grp),
        Arc::clone(&lq),
        q_grp
            .elements()
            .map(|qq| {
                lq.elements()
                    .map(|c| proj.apply(x2.act_l().apply(eta_section[qq], l_section[c])))
                    .collect()
            })
            .collect(),
    )?;
    for qq in q_grp.elements() {
        for pp in theta.eta().preimages(qq) {
            for ll in x2.l().elements() {
                if proj.apply(x2.act_l().apply(pp, ll)) != act_lq.apply(qq, proj.apply(ll)) {
                    return Err(Error::NotWellDefined {
                        witness: format!(
                            "action of {qq} via preimage {pp} differs on element {ll}"
                        ),
                    });
                }
            }
        }
    }
    let mu_section = minimal_section(theta.mu());
    let mut lifting = vec![vec![0; n_grp.order()]; n_grp.order()];
    for nn1 in n_grp.elements() {
        for nn2 in n_grp.elements() {
            lifting[nn1][nn2] = proj.apply(x2.lifting(mu_section[nn1], mu_section[nn2]));
        }
    }
    for nn1 in n_grp.elements() {
        for m1 in theta.mu().preimages(nn1) {
            for nn2 in n_grp.elements() {
                for m2 in theta.mu().preimages(nn2) {
                    if proj.apply(x2.lifting(m1, m2)) != lifting[nn1][nn2] {
                        return Err(Error::NotWellDefined {
                            witness: format!(
                                "lifting at ({nn1}, {nn2}) differs via preimages ({m1}, {m2})"
                            ),
                        });
                    }
                }
            }
        }
    }
    let module = TwoCrossedModule::new(
        lq,
        Arc::clone(n_grp),
        Arc::clone(q_grp),
        d_star,
        beta.clone(),
        act_lq,
        dst.act().clone(),
        lifting,
    )?;
    Ok(InducedX2 {
        module: Some(module),
        canonical: Some(proj),
        presentation,
        strategy_used: StrategyUsed::Epi,
        status: InducedStatus::Decided,
        enumeration: None,
    })
}

fn induced_x2_general(
    theta: &XModMorphism,
    x2: &TwoCrossedModule,
    presentation: Presentation,
    opts: InducedOptions,
) -> Result<InducedX2> {
    let dst = theta.dst();
    let (n_grp, q_grp, beta) = (dst.m(), dst.p(), dst.boundary());
    let g = X2Gens {
        nl: x2.l().order(),
        nn: n_grp.order(),
        nq: q_grp.order(),
    };
    match todd_coxeter(&presentation, opts.coset_limit)? {
        Enumeration::LimitExceeded { limit, .. } => Ok(InducedX2 {
            module: None,
            canonical: None,
            presentation,
            strategy_used: StrategyUsed::GeneralTc,
            status: InducedStatus::UndecidedAtLimit { limit },
            enumeration: None,
        }),
        Enumeration::Complete(cg) => {
            let angle = |n1: Elt, n2: Elt| -> Elt {
                let lhs = n_grp.mul(n_grp.mul(n1, n2), n_grp.inv(n1));
                n_grp.mul(lhs, dst.apply(beta.apply(n1), n_grp.inv(n2)))
            };
            let boundary_images: Vec<Elt> = (0..g.total())
                .map(|i| {
                    if i < g.nq * g.nl {
                        dst.apply(i / g.nl, theta.mu().apply(x2.d2().apply(i % g.nl)))
                    } else {
                        let j = i - g.nq * g.nl;
                        angle(j / g.nn, j % g.nn)
                    }
                })
                .collect();
            let d_star = cg.hom_from_gen_images(n_grp, &boundary_images)?;
            let rows = q_grp
                .elements()
                .map(|qq| {
                    cg.words
                        .iter()
                        .map(|w| {
                            w.letters().iter().fold(0, |acc, letter| {
                                let gidx = letter.gen;
                                let mapped = if gidx < g.nq * g.nl {
                                    g.ql(q_grp.mul(qq, gidx / g.nl), gidx % g.nl).gen
                                } else {
                                    let j = gidx - g.nq * g.nl;
                                    g.nn(dst.apply(qq, j / g.nn), dst.apply(qq, j % g.nn)).gen
                                };
                                let im = cg.gen_images[mapped];
                                let grp = &cg.group;
                                grp.mul(acc, if letter.inverse { grp.inv(im) } else { im })
                            })
                        })
                        .collect()
                })
                .collect();
            let act_top = ActionTable::new(Arc::clone(q_grp), Arc::clone(&cg.group), rows)?;
            let mut lifting = vec![vec![0; n_grp.order()]; n_grp.order()];
            for nn1 in n_grp.elements() {
                for nn2 in n_grp.elements() {
                    lifting[nn1][nn2] = cg.gen_images[g.nn(nn1, nn2).gen];
                }
            }
            let canonical = GroupHom::new(
                Arc::clone(x2.l()),
                Arc::clone(&cg.group),
                x2.l()
                    .elements()
                    .map(|ll| cg.gen_images[g.ql(0, ll).gen])
                    .collect(),
            )?;
            let module = TwoCrossedModule::new(
                Arc::clone(&cg.group),
                Arc::clone(n_grp),
                Arc::clone(q_grp),
                d_star,
                beta.clone(),
                act_top,
                dst.act().clone(),
                lifting,
            )?;
            Ok(InducedX2 {
                module: Some(module),
                canonical: Some(canonical),
                presentation,
                strategy_used: StrategyUsed::GeneralTc,
                status: InducedStatus::Decided,
                enumeration: Some(cg),
            })
        }
    }
}

/// The universal arrow out of an induced 2-crossed module: for a morphism
/// f = (f2, φ', φ): x2 → target into an (N → Q)-2-crossed module, produce
/// the unique f*: θ*(L) → B with f* ∘ canonical = f2.
pub fn induced_x2_universal(
    result: &InducedX2,
    theta: &XModMorphism,
    x2: &TwoCrossedModule,
    f: &X2Morphism,
) -> Result<(GroupHom, Uniqueness)> {
    let module = result.module()?;
    let canonical = result.canonical()?;
    if f.src() != x2 {
        return Err(Error::Mismatch(
            "f must start at the 2-crossed module".into(),
        ));
    }
    if f.f1() != theta.mu() || f.f0() != theta.eta() {
        return Err(Error::Mismatch("f must lie over theta".into()));
    }
    let target = f.dst();
    let dst = theta.dst();
    if !same_group(target.m(), dst.m())
        || !same_group(target.p(), dst.p())
        || target.d1() != dst.boundary()
        || target.act_m() != dst.act()
    {
        return Err(Error::Mismatch(
            "f target must be a 2-crossed module over (N, Q)".into(),
        ));
    }

    let f_star = match &result.enumeration {
        Some(cg) => {
            let g = X2Gens {
                nl: x2.l().order(),
                nn: dst.m().order(),
                nq: dst.p().order(),
            };
            let gen_image: Vec<Elt> = (0..g.total())
                .map(|i| {
                    if i < g.nq * g.nl {
                        target.act_l().apply(i / g.nl, f.f2().apply(i % g.nl))
                    } else {
                        let j = i - g.nq * g.nl;
                        target.lifting(j / g.nn, j % g.nn)
                    }
                })
                .collect();
            let b_grp = target.l();
            for (i, rel) in result.presentation.relators().iter().enumerate() {
                let v = rel.letters().iter().fold(0, |acc, l| {
                    let im = gen_image[l.gen];
                    b_grp.mul(acc, if l.inverse { b_grp.inv(im) } else { im })
                });
                if v != 0 {
                    return Err(Error::NotWellDefined {
                        witness: format!("relator #{i} has nontrivial image"),
                    });
                }
            }
            cg.hom_from_gen_images(b_grp, &gen_image)?
        }
        None => {
            let section = minimal_section(canonical);
            let map = module
                .l()
                .elements()
                .map(|c| f.f2().apply(section[c]))
                .collect();
            let f_star = GroupHom::new(Arc::clone(module.l()), Arc::clone(target.l()), map)?;
            for ll in x2.l().elements() {
                if f_star.apply(canonical.apply(ll)) != f.f2().apply(ll) {
                    return Err(Error::NotWellDefined {
                        witness: format!("f2 does not descend at element {ll}"),
                    });
                }
            }
            f_star
        }
    };

    // (f*, id, id) is a morphism of (N → Q)-2-crossed modules.
    X2Morphism::new(
        module.clone(),
        target.clone(),
        f_star.clone(),
        GroupHom::identity(dst.m()),
        GroupHom::identity(dst.p()),
    )?;
    for ll in x2.l().elements() {
        if f_star.apply(canonical.apply(ll)) != f.f2().apply(ll) {
            return Err(Error::NoFactorization {
                reason: format!("f*(canonical({ll})) differs from f2({ll})"),
            });
        }
    }

    if module.l().order() > HOM_ENUM_BOUND {
        return Ok((
            f_star,
            Uniqueness::NotChecked {
                bound: HOM_ENUM_BOUND,
            },
        ));
    }
    let count = enumerate_homs(module.l(), target.l())?
        .into_iter()
        .filter(|g| {
            x2.l()
                .elements()
                .all(|ll| g.apply(canonical.apply(ll)) == f.f2().apply(ll))
                && X2Morphism::new(
                    module.clone(),
                    target.clone(),
                    g.clone(),
                    GroupHom::identity(dst.m()),
                    GroupHom::identity(dst.p()),
                )
                .is_ok()
        })
        .count();
    if count != 1 {
        return Err(Error::NotUnique { count });
    }
    Ok((f_star, Uniqueness::Unique))
}

/// The trivial 2-crossed module {1, 1, 1}.
pub fn trivial_x2() -> TwoCrossedModule {
    let t = FiniteGroup::trivial();
    TwoCrossedModule::new(
        Arc::clone(&t),
        Arc::clone(&t),
        Arc::clone(&t),
        GroupHom::identity(&t),
        GroupHom::identity(&t),
        ActionTable::trivial(&t, &t),
        ActionTable::trivial(&t, &t),
        vec![vec![0]],
    )
    .expect("the trivial module validates")
}

/// The unique morphism from a 2-crossed module to the trivial one.
pub fn trivial_leg(src: &TwoCrossedModule) -> X2Morphism {
    let t = trivial_x2();
    X2Morphism::new(
        src.clone(),
        t.clone(),
        GroupHom::trivial(src.l(), t.l()),
        GroupHom::trivial(src.m(), t.m()),
        GroupHom::trivial(src.p(), t.p()),
    )
    .expect("collapse to the trivial module is a morphism")
}

/// Result of [`pushout_x2`].
pub struct PushoutX2 {
    /// The push-out {L, M, P} when every stage collapsed within the limit.
    pub module: Option<TwoCrossedModule>,
    /// The base pre-crossed push-out (M → P).
    pub base: Option<PreCrossedModule>,
    pub status: InducedStatus,
}

/// Push-out of two group homomorphisms out of a common source, by table
/// presentation and enumeration. Returns None when the limit is hit.
fn group_pushout(
    f1: &GroupHom,
    f2: &GroupHom,
    coset_limit: usize,
) -> Result<Option<(Arc<FiniteGroup>, GroupHom, GroupHom)>> {
    if !same_group(f1.src(), f2.src()) {
        return Err(Error::Mismatch("push-out legs must share a source".into()));
    }
    let (g0, g1, g2) = (f1.src(), f1.dst(), f2.dst());
    let (n1, n2) = (g1.order(), g2.order());
    let gen1 = |a: Elt| Letter::new(a);
    let gen2 = |a: Elt| Letter::new(n1 + a);
    let gens = (0..n1 + n2)
        .map(|i| {
            if i < n1 {
                format!("x{i}")
            } else {
                format!("y{}", i - n1)
            }
        })
        .collect();
    let mut relators = Vec::new();
    for a in g1.elements() {
        for b in g1.elements() {
            relators.push(Word::from_letters([
                gen1(a),
                gen1(b),
                gen1(g1.mul(a, b)).inv(),
            ]));
        }
    }
    for a in g2.elements() {
        for b in g2.elements() {
            relators.push(Word::from_letters([
                gen2(a),
                gen2(b),
                gen2(g2.mul(a, b)).inv(),
            ]));
        }
    }
    for x in g0.elements() {
        relators.push(Word::from_letters([
            gen1(f1.apply(x)),
            gen2(f2.apply(x)).inv(),
        ]));
    }
    let pres = Presentation::new(gens, relators)?;
    match todd_coxeter(&pres, coset_limit)? {
        Enumeration::LimitExceeded { .. } => Ok(None),
        Enumeration::Complete(cg) => {
            let iota1 = GroupHom::new(
                Arc::clone(g1),
                Arc::clone(&cg.group),
                g1.elements().map(|a| cg.gen_images[a]).collect(),
            )?;
            let iota2 = GroupHom::new(
                Arc::clone(g2),
                Arc::clone(&cg.group),
                g2.elements().map(|a| cg.gen_images[n1 + a]).collect(),
            )?;
            Ok(Some((Arc::clone(&cg.group), iota1, iota2)))
        }
    }
}

/// Smallest normal subgroup containing `gens` that is also closed under the
/// action.
fn invariant_normal_closure(g: &Arc<FiniteGroup>, act: &ActionTable, gens: &[Elt]) -> Subgroup {
    let mut gens = gens.to_vec();
    loop {
        let sub = Subgroup::normal_closure(g, &gens);
        let mut grew = false;
        for pp in act.actor().elements() {
            for x in sub.elements() {
                let y = act.apply(pp, x);
                if !sub.contains(y) {
                    gens.push(y);
                    grew = true;
                }
            }
        }
        if !grew {
            return sub;
        }
    }
}

/// Push-out of a span of 2-crossed module morphisms: build the base
/// pre-crossed push-out (M → P) by presentation and enumeration, induce all
/// three corners over it, push out the top groups, and quotient by the
/// structural relator families.
pub fn pushout_x2(leg1: &X2Morphism, leg2: &X2Morphism, opts: InducedOptions) -> Result<PushoutX2> {
    if leg1.src() != leg2.src() {
        return Err(Error::Mismatch("push-out legs must share a source".into()));
    }
    let x2_0 = leg1.src();
    let x2_1 = leg1.dst();
    let x2_2 = leg2.dst();
    let undecided = |limit| PushoutX2 {
        module: None,
        base: None,
        status: InducedStatus::UndecidedAtLimit { limit },
    };

    // Base group push-out P = P1 *_{P0} P2.
    let Some((p_grp, psi1, psi2)) = group_pushout(leg1.f0(), leg2.f0(), opts.coset_limit)? else {
        return Ok(undecided(opts.coset_limit));
    };

    // Pre-crossed push-out of (M1 <- M0 -> M2) over P: generators (p, m_i)
    // with fiber multiplication, action identification, and the two images
    // of M0 identified.
    let (m1_grp, m2_grp) = (x2_1.m(), x2_2.m());
    let (nm1, nm2) = (m1_grp.order(), m2_grp.order());
    let np = p_grp.order();
    let side1 = |p: Elt, m: Elt| Letter::new(p * nm1 + m);
    let side2 = |p: Elt, m: Elt| Letter::new(np * nm1 + p * nm2 + m);
    let count = np * (nm1 * nm1 + nm2 * nm2)
        + np * (x2_1.p().order() * nm1 + x2_2.p().order() * nm2)
        + np * x2_0.m().order();
    cap_check(count, opts.relator_cap)?;
    let gens = (0..np * nm1 + np * nm2)
        .map(|i| {
            if i < np * nm1 {
                format!("a{}m{}", i / nm1, i % nm1)
            } else {
                let j = i - np * nm1;
                format!("b{}m{}", j / nm2, j % nm2)
            }
        })
        .collect();
    let mut relators = Vec::new();
    for pp in 0..np {
        for a in 0..nm1 {
            for b in 0..nm1 {
                relators.push(Word::from_letters([
                    side1(pp, a),
                    side1(pp, b),
                    side1(pp, m1_grp.mul(a, b)).inv(),
                ]));
            }
        }
        for a in 0..nm2 {
            for b in 0..nm2 {
                relators.push(Word::from_letters([
                    side2(pp, a),
                    side2(pp, b),
                    side2(pp, m2_grp.mul(a, b)).inv(),
                ]));
            }
        }
    }
    for pp in 0..np {
        for p1 in x2_1.p().elements() {
            for mm in 0..nm1 {
                relators.push(Word::from_letters([
                    side1(pp, x2_1.act_m().apply(p1, mm)),
                    side1(p_grp.mul(pp, psi1.apply(p1)), mm).inv(),
                ]));
            }
        }
        for p2 in x2_2.p().elements() {
            for mm in 0..nm2 {
                relators.push(Word::from_letters([
                    side2(pp, x2_2.act_m().apply(p2, mm)),
                    side2(p_grp.mul(pp, psi2.apply(p2)), mm).inv(),
                ]));
            }
        }
    }
    for pp in 0..np {
        for m0 in x2_0.m().elements() {
            relators.push(Word::from_letters([
                side1(pp, leg1.f1().apply(m0)),
                side2(pp, leg2.f1().apply(m0)).inv(),
            ]));
        }
    }
    let pres = Presentation::new(gens, relators)?;
    let cg = match todd_coxeter(&pres, opts.coset_limit)? {
        Enumeration::LimitExceeded { limit, .. } => return Ok(undecided(limit)),
        Enumeration::Complete(cg) => cg,
    };
    let m_grp = Arc::clone(&cg.group);
    let alpha_images: Vec<Elt> = (0..np * nm1 + np * nm2)
        .map(|i| {
            if i < np * nm1 {
                let (pp, mm) = (i / nm1, i % nm1);
                p_grp.conj(pp, psi1.apply(x2_1.d1().apply(mm)))
            } else {
                let j = i - np * nm1;
                let (pp, mm) = (j / nm2, j % nm2);
                p_grp.conj(pp, psi2.apply(x2_2.d1().apply(mm)))
            }
        })
        .collect();
    let alpha = cg.hom_from_gen_images(&p_grp, &alpha_images)?;
    let act_rows = p_grp
        .elements()
        .map(|pnew| {
            cg.words
                .iter()
                .map(|w| {
                    w.letters().iter().fold(0, |acc, letter| {
                        let gidx = letter.gen;
                        let mapped = if gidx < np * nm1 {
                            side1(p_grp.mul(pnew, gidx / nm1), gidx % nm1).gen
                        } else {
                            let j = gidx - np * nm1;
                            side2(p_grp.mul(pnew, j / nm2), j % nm2).gen
                        };
                        let im = cg.gen_images[mapped];
                        m_grp.mul(acc, if letter.inverse { m_grp.inv(im) } else { im })
                    })
                })
                .collect()
        })
        .collect();
    let act_m = ActionTable::new(Arc::clone(&p_grp), Arc::clone(&m_grp), act_rows)?;
    let base = PreCrossedModule::new(
        Arc::clone(&m_grp),
        Arc::clone(&p_grp),
        act_m.clone(),
        alpha.clone(),
    )?;

    // Canonical pre-crossed morphisms into the base.
    let theta1 = XModMorphism::new(
        x2_1.base_precrossed()?,
        base.clone(),
        GroupHom::new(
            Arc::clone(m1_grp),
            Arc::clone(&m_grp),
            m1_grp
                .elements()
                .map(|mm| cg.gen_images[side1(0, mm).gen])
                .collect(),
        )?,
        psi1.clone(),
    )?;
    let theta2 = XModMorphism::new(
        x2_2.base_precrossed()?,
        base.clone(),
        GroupHom::new(
            Arc::clone(m2_grp),
            Arc::clone(&m_grp),
            m2_grp
                .elements()
                .map(|mm| cg.gen_images[side2(0, mm).gen])
                .collect(),
        )?,
        psi2.clone(),
    )?;
    let theta0 = theta1.compose(&XModMorphism::new(
        x2_0.base_precrossed()?,
        x2_1.base_precrossed()?,
        leg1.f1().clone(),
        leg1.f0().clone(),
    )?)?;
    // The two composites agree by the push-out identifications.
    for m0 in x2_0.m().elements() {
        debug_assert_eq!(
            theta0.mu().apply(m0),
            theta2.mu().apply(leg2.f1().apply(m0))
        );
    }

    // Induced corners over (M -> P).
    let corner_opts = InducedOptions {
        strategy: Strategy::Auto,
        ..opts
    };
    let b0 = induced_x2mod(&theta0, x2_0, corner_opts)?;
    let b1 = induced_x2mod(&theta1, x2_1, corner_opts)?;
    let b2 = induced_x2mod(&theta2, x2_2, corner_opts)?;
    for b in [&b0, &b1, &b2] {
        if let InducedStatus::UndecidedAtLimit { limit } = b.status {
            return Ok(undecided(limit));
        }
    }
    let (b1m, b2m) = (b1.module()?, b2.module()?);

    // Beta legs B0 -> B1 and B0 -> B2 by the universal property.
    let f_into_b1 = X2Morphism::new(
        x2_0.clone(),
        b1m.clone(),
        b1.canonical()?.compose(leg1.f2())?,
        theta0.mu().clone(),
        theta0.eta().clone(),
    )?;
    let (beta1, _) = induced_x2_universal(&b0, &theta0, x2_0, &f_into_b1)?;
    let f_into_b2 = X2Morphism::new(
        x2_0.clone(),
        b2m.clone(),
        b2.canonical()?.compose(leg2.f2())?,
        theta0.mu().clone(),
        theta0.eta().clone(),
    )?;
    let (beta2, _) = induced_x2_universal(&b0, &theta0, x2_0, &f_into_b2)?;

    // Push-out of the top groups.
    let Some((b_grp, iota1, iota2)) = group_pushout(&beta1, &beta2, opts.coset_limit)? else {
        return Ok(undecided(opts.coset_limit));
    };
    // Boundary on B: determined on the two injections, which generate it.
    let d_b = {
        let im1: Vec<Elt> = b1m.l().elements().map(|bb| b1m.d2().apply(bb)).collect();
        let im2: Vec<Elt> = b2m.l().elements().map(|bb| b2m.d2().apply(bb)).collect();
        hom_from_generators(&b_grp, &m_grp, &[(&iota1, &im1), (&iota2, &im2)])?
    };
    let act_b = {
        let mut rows = Vec::with_capacity(p_grp.order());
        for pp in p_grp.elements() {
            let im1: Vec<Elt> = b1m
                .l()
                .elements()
                .map(|bb| iota1.apply(b1m.act_l().apply(pp, bb)))
                .collect();
            let im2: Vec<Elt> = b2m
                .l()
                .elements()
                .map(|bb| iota2.apply(b2m.act_l().apply(pp, bb)))
                .collect();
            let row_hom = hom_from_generators(&b_grp, &b_grp, &[(&iota1, &im1), (&iota2, &im2)])?;
            rows.push(row_hom.map().to_vec());
        }
        ActionTable::new(Arc::clone(&p_grp), Arc::clone(&b_grp), rows)?
    };
    // Common lifting into B.
    let mut lift_b = vec![vec![0; m_grp.order()]; m_grp.order()];
    for ma in m_grp.elements() {
        for mb in m_grp.elements() {
            let via1 = iota1.apply(b1m.lifting(ma, mb));
            let via2 = iota2.apply(b2m.lifting(ma, mb));
            if via1 != via2 {
                return Err(Error::NotWellDefined {
                    witness: format!("push-out liftings disagree at ({ma}, {mb})"),
                });
            }
            lift_b[ma][mb] = via1;
        }
    }

    // The structural relator families, evaluated in B.
    let m_act_b = |mm: Elt, bb: Elt| -> Elt { b_grp.mul(bb, lift_b[m_grp.inv(d_b.apply(bb))][mm]) };
    let mut family_values = Vec::new();
    for bb in b_grp.elements() {
        for bb2 in b_grp.elements() {
            family_values.push(b_grp.mul(
                lift_b[d_b.apply(bb)][d_b.apply(bb2)],
                b_grp.inv(b_grp.commutator(bb, bb2)),
            ));
        }
    }
    for ma in m_grp.elements() {
        for mb in m_grp.elements() {
            for mc in m_grp.elements() {
                // {m, m' m''} {m, m'}^-1 (^(m m' m^-1){m, m''})^-1
                let v = b_grp.mul(
                    b_grp.mul(lift_b[ma][m_grp.mul(mb, mc)], b_grp.inv(lift_b[ma][mb])),
                    b_grp.inv(m_act_b(m_grp.conj(ma, mb), lift_b[ma][mc])),
                );
                family_values.push(v);
                // {m m', m''} (alpha(m)·{m', m''})^-1 {m, m' m'' m'^-1}^-1
                let v = b_grp.mul(
                    b_grp.mul(
                        lift_b[m_grp.mul(ma, mb)][mc],
                        b_grp.inv(act_b.apply(alpha.apply(ma), lift_b[mb][mc])),
                    ),
                    b_grp.inv(lift_b[ma][m_grp.conj(mb, mc)]),
                );
                family_values.push(v);
            }
        }
    }
    for bb in b_grp.elements() {
        for mm in m_grp.elements() {
            // {d(b), m} (m·(b^-1))^-1 b^-1
            let v = b_grp.mul(
                b_grp.mul(
                    lift_b[d_b.apply(bb)][mm],
                    b_grp.inv(m_act_b(mm, b_grp.inv(bb))),
                ),
                b_grp.inv(bb),
            );
            family_values.push(v);
            // {m, d(b)} (alpha(m)·b^-1)^-1 (m·b)^-1
            let v = b_grp.mul(
                b_grp.mul(
                    lift_b[mm][d_b.apply(bb)],
                    b_grp.inv(act_b.apply(alpha.apply(mm), b_grp.inv(bb))),
                ),
                b_grp.inv(m_act_b(mm, bb)),
            );
            family_values.push(v);
        }
    }
    for pp in p_grp.elements() {
        for ma in m_grp.elements() {
            for mb in m_grp.elements() {
                let v = b_grp.mul(
                    act_b.apply(pp, lift_b[ma][mb]),
                    b_grp.inv(lift_b[act_m.apply(pp, ma)][act_m.apply(pp, mb)]),
                );
                family_values.push(v);
            }
        }
    }
    let s = invariant_normal_closure(&b_grp, &act_b, &family_values);
    for x in s.elements() {
        if d_b.apply(x) != 0 {
            return Err(Error::NotWellDefined {
                witness: format!("boundary does not kill the relator subgroup at {x}"),
            });
        }
    }
    let (l_grp, proj) = quotient(&b_grp, &s)?;
    let section = minimal_section(&proj);
    let d_l = GroupHom::new(
        Arc::clone(&l_grp),
        Arc::clone(&m_grp),
        l_grp.elements().map(|c| d_b.apply(section[c])).collect(),
    )?;
    let act_l = ActionTable::new(
        Arc::clone(&p_grp),
        Arc::clone(&l_grp),
        p_grp
            .elements()
            .map(|pp| {
                l_grp
                    .elements()
                    .map(|c| proj.apply(act_b.apply(pp, section[c])))
                    .collect()
            })
            .collect(),
    )?;
    let mut lifting = vec![vec![0; m_grp.order()]; m_grp.order()];
    for ma in m_grp.elements() {
        for mb in m_grp.elements() {
            lifting[ma][mb] = proj.apply(lift_b[ma][mb]);
        }
    }
    let module = TwoCrossedModule::new(
        l_grp,
        Arc::clone(&m_grp),
        Arc::clone(&p_grp),
        d_l,
        alpha,
        act_l,
        act_m,
        lifting,
    )?;
    Ok(PushoutX2 {
        module: Some(module),
        base: Some(base),
        status: InducedStatus::Decided,
    })
}

/// Build a homomorphism out of a group generated by the images of the given
/// injections, by breadth-first search over products.
fn hom_from_generators(
    src: &Arc<FiniteGroup>,
    dst: &Arc<FiniteGroup>,
    pieces: &[(&GroupHom, &[Elt])],
) -> Result<GroupHom> {
    let mut map = vec![usize::MAX; src.order()];
    map[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut gens: Vec<(Elt, Elt)> = Vec::new();
    for (inj, images) in pieces {
        for (x, &im) in inj.src().elements().zip(images.iter()) {
            gens.push((inj.apply(x), im));
        }
    }
    while let Some(x) = queue.pop_front() {
        for &(g, im) in &gens {
            let y = src.mul(x, g);
            if map[y] == usize::MAX {
                map[y] = dst.mul(map[x], im);
                queue.push_back(y);
            }
        }
    }
    if map.contains(&usize::MAX) {
        return Err(Error::Mismatch(
            "the injection images do not generate the push-out".into(),
        ));
    }
    GroupHom::new(Arc::clone(src), Arc::clone(dst), map)
}

/// Cokernel of a 2-crossed module morphism: the push-out against the
/// collapse to the trivial module.
pub fn cokernel_x2(f: &X2Morphism, opts: InducedOptions) -> Result<PushoutX2> {
    pushout_x2(f, &trivial_leg(f.src()), opts)
}
