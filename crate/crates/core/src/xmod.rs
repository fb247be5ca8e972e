//! Pre-crossed and crossed modules, their morphisms, Peiffer commutators,
//! and the standard example constructions: normal inclusions, automorphism
//! modules, abelian (zero-boundary) modules, and central extensions.
//!
//! A crossed module is a boundary homomorphism ∂: M → P together with a left
//! P-action on M satisfying
//!
//! - CM1 (equivariance): ∂(p·m) = p ∂(m) p⁻¹
//! - CM2 (Peiffer identity): ∂(m)·n = m n m⁻¹
//!
//! A pre-crossed module satisfies only CM1. Both validators run exhaustively
//! on construction.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{
    automorphism_group, quotient, same_group, ActionTable, Elt, FiniteGroup, GroupHom, Subgroup,
};

/// A boundary M → P with a P-action on M satisfying CM1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreCrossedModule {
    m: Arc<FiniteGroup>,
    p: Arc<FiniteGroup>,
    act: ActionTable,
    boundary: GroupHom,
}

impl PreCrossedModule {
    pub fn new(
        m: Arc<FiniteGroup>,
        p: Arc<FiniteGroup>,
        act: ActionTable,
        boundary: GroupHom,
    ) -> Result<PreCrossedModule> {
        if !same_group(act.actor(), &p) || !same_group(act.space(), &m) {
            return Err(Error::Mismatch("action must be P on M".into()));
        }
        if !same_group(boundary.src(), &m) || !same_group(boundary.dst(), &p) {
            return Err(Error::Mismatch("boundary must map M to P".into()));
        }
        for pp in p.elements() {
            for mm in m.elements() {
                if boundary.apply(act.apply(pp, mm)) != p.conj(pp, boundary.apply(mm)) {
                    return Err(Error::Cm1Violation { p: pp, m: mm });
                }
            }
        }
        Ok(PreCrossedModule {
            m,
            p,
            act,
            boundary,
        })
    }

    pub fn m(&self) -> &Arc<FiniteGroup> {
        &self.m
    }

    pub fn p(&self) -> &Arc<FiniteGroup> {
        &self.p
    }

    pub fn act(&self) -> &ActionTable {
        &self.act
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    /// p·m through the stored action.
    pub fn apply(&self, p: Elt, m: Elt) -> Elt {
        self.act.apply(p, m)
    }

    /// The Peiffer commutator ⟨m, m'⟩ = m m' m⁻¹ · (∂(m)·m'⁻¹); it is the
    /// identity for all pairs exactly when CM2 holds.
    pub fn peiffer_commutator(&self, m: Elt, m2: Elt) -> Elt {
        let g = &self.m;
        let lhs = g.mul(g.mul(m, m2), g.inv(m));
        let acted = self.act.apply(self.boundary.apply(m), g.inv(m2));
        g.mul(lhs, acted)
    }

    /// The subgroup of M generated by all Peiffer commutators. Always normal.
    pub fn peiffer_subgroup(&self) -> Subgroup {
        let mut gens = Vec::new();
        for m in self.m.elements() {
            for m2 in self.m.elements() {
                gens.push(self.peiffer_commutator(m, m2));
            }
        }
        let sub = Subgroup::generated(&self.m, &gens);
        debug_assert!(sub.is_normal(), "Peiffer subgroup is normal in M");
        sub
    }

    /// Check CM2 and upgrade.
    pub fn into_crossed(self) -> Result<CrossedModule> {
        CrossedModule::from_pre(self)
    }
}

/// A pre-crossed module that also satisfies CM2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrossedModule {
    pre: PreCrossedModule,
}

impl CrossedModule {
    pub fn new(
        m: Arc<FiniteGroup>,
        p: Arc<FiniteGroup>,
        act: ActionTable,
        boundary: GroupHom,
    ) -> Result<CrossedModule> {
        CrossedModule::from_pre(PreCrossedModule::new(m, p, act, boundary)?)
    }

    pub fn from_pre(pre: PreCrossedModule) -> Result<CrossedModule> {
        let g = &pre.m;
        for m in g.elements() {
            for n in g.elements() {
                if pre.act.apply(pre.boundary.apply(m), n) != g.conj(m, n) {
                    return Err(Error::Cm2Violation { m, n });
                }
            }
        }
        Ok(CrossedModule { pre })
    }

    pub fn pre(&self) -> &PreCrossedModule {
        &self.pre
    }

    pub fn m(&self) -> &Arc<FiniteGroup> {
        &self.pre.m
    }

    pub fn p(&self) -> &Arc<FiniteGroup> {
        &self.pre.p
    }

    pub fn act(&self) -> &ActionTable {
        &self.pre.act
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.pre.boundary
    }

    pub fn apply(&self, p: Elt, m: Elt) -> Elt {
        self.pre.apply(p, m)
    }

    /// The inclusion of a normal subgroup with the conjugation action.
    pub fn normal_inclusion(p: &Arc<FiniteGroup>, n: &Subgroup) -> Result<CrossedModule> {
        if !same_group(n.parent(), p) {
            return Err(Error::Mismatch("subgroup of a different group".into()));
        }
        if !n.is_normal() {
            return Err(Error::NotNormal);
        }
        let (m, embed) = n.as_group();
        let elems = n.elements();
        let pos = |x: Elt| {
            elems
                .iter()
                .position(|&e| e == x)
                .expect("normal subgroup is closed under conjugation")
        };
        let act = ActionTable::new(
            Arc::clone(p),
            Arc::clone(&m),
            p.elements()
                .map(|pp| {
                    m.elements()
                        .map(|mm| pos(p.conj(pp, embed.apply(mm))))
                        .collect()
                })
                .collect(),
        )?;
        CrossedModule::new(m, Arc::clone(p), act, embed)
    }

    /// The map m ↦ (conjugation by m) into the automorphism group of M,
    /// with the evaluation action.
    pub fn automorphism(m: &Arc<FiniteGroup>) -> Result<CrossedModule> {
        let aut = automorphism_group(m)?;
        let chi_map = m
            .elements()
            .map(|x| {
                let conj_by_x: Vec<Elt> = m.elements().map(|y| m.conj(x, y)).collect();
                aut.maps
                    .iter()
                    .position(|a| *a == conj_by_x)
                    .expect("conjugation is an automorphism")
            })
            .collect();
        let chi = GroupHom::new(Arc::clone(m), Arc::clone(&aut.group), chi_map)?;
        CrossedModule::new(Arc::clone(m), aut.group, aut.action, chi)
    }

    /// The zero boundary on a P-module (the action space must be abelian).
    pub fn abelian(act: &ActionTable) -> Result<CrossedModule> {
        let m = act.space();
        let p = act.actor();
        CrossedModule::new(
            Arc::clone(m),
            Arc::clone(p),
            act.clone(),
            GroupHom::trivial(m, p),
        )
    }

    /// An epimorphism with central kernel, with the action lifted through
    /// the minimal-index section s: p·m = s(p) m s(p)⁻¹.
    pub fn central_extension(boundary: &GroupHom) -> Result<CrossedModule> {
        if !boundary.is_surjective() {
            return Err(Error::NotEpi);
        }
        let m = boundary.src();
        let p = boundary.dst();
        for k in boundary.kernel().elements() {
            if let Some(w) = m.elements().find(|&x| m.mul(k, x) != m.mul(x, k)) {
                return Err(Error::KernelNotCentral { k, m: w });
            }
        }
        let section = minimal_section(boundary);
        let act = ActionTable::new(
            Arc::clone(p),
            Arc::clone(m),
            p.elements()
                .map(|pp| m.elements().map(|mm| m.conj(section[pp], mm)).collect())
                .collect(),
        )?;
        CrossedModule::new(Arc::clone(m), Arc::clone(p), act, boundary.clone())
    }
}

/// Minimal-index preimage of every target element under an epimorphism.
pub fn minimal_section(boundary: &GroupHom) -> Vec<Elt> {
    let mut section = vec![usize::MAX; boundary.dst().order()];
    for x in boundary.src().elements() {
        let y = boundary.apply(x);
        if section[y] == usize::MAX {
            section[y] = x;
        }
    }
    section
}

/// A morphism of (pre-)crossed modules: μ: M → M', η: P → P' with
/// η∂ = ∂'μ and μ(p·m) = η(p)·μ(m).
#[derive(Clone, Debug)]
pub struct XModMorphism {
    src: PreCrossedModule,
    dst: PreCrossedModule,
    mu: GroupHom,
    eta: GroupHom,
}

impl XModMorphism {
    pub fn new(
        src: PreCrossedModule,
        dst: PreCrossedModule,
        mu: GroupHom,
        eta: GroupHom,
    ) -> Result<XModMorphism> {
        if !same_group(mu.src(), src.m()) || !same_group(mu.dst(), dst.m()) {
            return Err(Error::Mismatch("mu must map src M to dst M".into()));
        }
        if !same_group(eta.src(), src.p()) || !same_group(eta.dst(), dst.p()) {
            return Err(Error::Mismatch("eta must map src P to dst P".into()));
        }
        for m in src.m().elements() {
            if eta.apply(src.boundary().apply(m)) != dst.boundary().apply(mu.apply(m)) {
                return Err(Error::SquareNotCommuting { m });
            }
        }
        for p in src.p().elements() {
            for m in src.m().elements() {
                if mu.apply(src.apply(p, m)) != dst.apply(eta.apply(p), mu.apply(m)) {
                    return Err(Error::NotEquivariant { p, m });
                }
            }
        }
        Ok(XModMorphism { src, dst, mu, eta })
    }

    pub fn identity(module: &PreCrossedModule) -> XModMorphism {
        XModMorphism {
            src: module.clone(),
            dst: module.clone(),
            mu: GroupHom::identity(module.m()),
            eta: GroupHom::identity(module.p()),
        }
    }

    pub fn src(&self) -> &PreCrossedModule {
        &self.src
    }

    pub fn dst(&self) -> &PreCrossedModule {
        &self.dst
    }

    pub fn mu(&self) -> &GroupHom {
        &self.mu
    }

    pub fn eta(&self) -> &GroupHom {
        &self.eta
    }

    /// self ∘ other.
    pub fn compose(&self, other: &XModMorphism) -> Result<XModMorphism> {
        XModMorphism::new(
            other.src.clone(),
            self.dst.clone(),
            self.mu.compose(&other.mu)?,
            self.eta.compose(&other.eta)?,
        )
    }
}

/// The quotient of M by a P-invariant normal subgroup, over the same base.
/// Used by reflections and the epimorphism fast paths; every piece of the
/// descended structure is re-validated, nothing is assumed.
pub(crate) fn quotient_module(
    pre: &PreCrossedModule,
    by: &Subgroup,
) -> Result<(PreCrossedModule, GroupHom)> {
    let (q, proj) = quotient(pre.m(), by)?;
    let p = pre.p();
    let section = minimal_section(&proj);
    let bd = GroupHom::new(
        Arc::clone(&q),
        Arc::clone(p),
        q.elements()
            .map(|c| pre.boundary().apply(section[c]))
            .collect(),
    )?;
    for m in pre.m().elements() {
        if bd.apply(proj.apply(m)) != pre.boundary().apply(m) {
            return Err(Error::NotWellDefined {
                witness: format!("boundary differs on the coset of element {m}"),
            });
        }
    }
    let act = ActionTable::new(
        Arc::clone(p),
        Arc::clone(&q),
        p.elements()
            .map(|pp| {
                q.elements()
                    .map(|c| proj.apply(pre.apply(pp, section[c])))
                    .collect()
            })
            .collect(),
    )?;
    for pp in p.elements() {
        for m in pre.m().elements() {
            if act.apply(pp, proj.apply(m)) != proj.apply(pre.apply(pp, m)) {
                return Err(Error::NotWellDefined {
                    witness: format!("action of {pp} differs on the coset of element {m}"),
                });
            }
        }
    }
    let module = PreCrossedModule::new(Arc::clone(&q), Arc::clone(p), act, bd)?;
    Ok((module, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::enumerate_homs;

    #[test]
    fn identity_module_is_precrossed() {
        let c4 = FiniteGroup::cyclic(4);
        let pre = PreCrossedModule::new(
            Arc::clone(&c4),
            Arc::clone(&c4),
            ActionTable::conjugation(&c4),
            GroupHom::identity(&c4),
        )
        .unwrap();
        assert!(pre.into_crossed().is_ok());
    }

    #[test]
    fn inversion_example_is_precrossed_but_not_crossed() {
        let pre = fixtures::precrossed_c4_c2_inversion();
        match CrossedModule::from_pre(pre.clone()) {
            Err(Error::Cm2Violation { m, n }) => {
                let g = pre.m();
                assert_ne!(pre.apply(pre.boundary().apply(m), n), g.conj(m, n));
            }
            other => panic!("expected CM2 violation, got {other:?}"),
        }
    }

    #[test]
    fn cm1_violation_has_witness() {
        let c4 = FiniteGroup::cyclic(4);
        // C4 acting on itself by inversion through C4 -> C2, with identity
        // boundary: CM1 wants p·m = p m p⁻¹ = m and the inversion rows break it.
        let to_c2 = [0usize, 1, 0, 1];
        let act = ActionTable::new(
            Arc::clone(&c4),
            Arc::clone(&c4),
            (0..4)
                .map(|p| {
                    if to_c2[p] == 0 {
                        vec![0, 1, 2, 3]
                    } else {
                        vec![0, 3, 2, 1]
                    }
                })
                .collect(),
        )
        .unwrap();
        let bad = PreCrossedModule::new(
            Arc::clone(&c4),
            Arc::clone(&c4),
            act,
            GroupHom::identity(&c4),
        );
        match bad {
            Err(Error::Cm1Violation { p, m }) => {
                assert_eq!(to_c2[p], 1);
                assert!(m == 1 || m == 3);
            }
            other => panic!("expected CM1 violation, got {other:?}"),
        }
    }

    #[test]
    fn normal_inclusion_examples() {
        let c4 = FiniteGroup::cyclic(4);
        let sq = Subgroup::generated(&c4, &[2]);
        let xm = CrossedModule::normal_inclusion(&c4, &sq).unwrap();
        assert_eq!(xm.m().order(), 2);
        assert!(xm.boundary().is_injective());

        let s3 = FiniteGroup::symmetric(3);
        let a3: Vec<Elt> = s3
            .elements()
            .filter(|&x| s3.element_order(x) == 3)
            .collect();
        let a3 = Subgroup::generated(&s3, &a3);
        let xm = CrossedModule::normal_inclusion(&s3, &a3).unwrap();
        assert_eq!(xm.m().order(), 3);

        let trivial = Subgroup::trivial(&s3);
        assert!(CrossedModule::normal_inclusion(&s3, &trivial).is_ok());

        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let h = Subgroup::generated(&s3, &[t]);
        assert!(matches!(
            CrossedModule::normal_inclusion(&s3, &h),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn automorphism_module_examples() {
        let c2 = FiniteGroup::cyclic(2);
        let xm = CrossedModule::automorphism(&c2).unwrap();
        assert_eq!(xm.p().order(), 1);

        let c3 = FiniteGroup::cyclic(3);
        let xm = CrossedModule::automorphism(&c3).unwrap();
        assert_eq!(xm.p().order(), 2);
        // chi is trivial for abelian M.
        assert!(xm.m().elements().all(|m| xm.boundary().apply(m) == 0));

        let s3 = FiniteGroup::symmetric(3);
        let xm = CrossedModule::automorphism(&s3).unwrap();
        assert_eq!(xm.p().order(), 6);
        assert!(xm.boundary().is_bijective());
    }

    #[test]
    fn abelian_module_examples() {
        let c2 = FiniteGroup::cyclic(2);
        let c3 = FiniteGroup::cyclic(3);
        let act = ActionTable::new(
            Arc::clone(&c2),
            Arc::clone(&c3),
            vec![vec![0, 1, 2], vec![0, 2, 1]],
        )
        .unwrap();
        assert!(CrossedModule::abelian(&act).is_ok());
        // Nonabelian space fails CM2 for the zero boundary.
        let s3 = FiniteGroup::symmetric(3);
        let bad = CrossedModule::abelian(&ActionTable::trivial(&c2, &s3));
        assert!(matches!(bad, Err(Error::Cm2Violation { .. })));
    }

    #[test]
    fn central_extension_examples() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let surj = GroupHom::new(Arc::clone(&c4), Arc::clone(&c2), vec![0, 1, 0, 1]).unwrap();
        let xm = CrossedModule::central_extension(&surj).unwrap();
        assert_eq!(xm.m().order(), 4);

        let id = GroupHom::identity(&c4);
        assert!(CrossedModule::central_extension(&id).is_ok());

        let s3 = FiniteGroup::symmetric(3);
        let sign: Vec<Elt> = s3
            .elements()
            .map(|x| usize::from(s3.element_order(x) == 2))
            .collect();
        let sign = GroupHom::new(Arc::clone(&s3), Arc::clone(&c2), sign).unwrap();
        assert!(matches!(
            CrossedModule::central_extension(&sign),
            Err(Error::KernelNotCentral { .. })
        ));

        let not_epi = GroupHom::trivial(&c4, &c2);
        assert!(matches!(
            CrossedModule::central_extension(&not_epi),
            Err(Error::NotEpi)
        ));
    }

    #[test]
    fn central_extension_independent_of_section() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let surj = GroupHom::new(Arc::clone(&c4), Arc::clone(&c2), vec![0, 1, 0, 1]).unwrap();
        let minimal = CrossedModule::central_extension(&surj).unwrap();
        // A maximal-index section gives the same action by centrality.
        let mut section = [0usize; 2];
        for x in c4.elements() {
            section[surj.apply(x)] = x;
        }
        let act = ActionTable::new(
            Arc::clone(&c2),
            Arc::clone(&c4),
            c2.elements()
                .map(|pp| c4.elements().map(|mm| c4.conj(section[pp], mm)).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(minimal.act(), &act);
    }

    #[test]
    fn peiffer_commutator_values() {
        let pre = fixtures::precrossed_c4_c2_inversion();
        // <a, a> = a·a·a⁻¹·(∂a · a⁻¹) = a·a = a².
        assert_eq!(pre.peiffer_commutator(1, 1), 2);
        for m in pre.m().elements() {
            assert_eq!(pre.peiffer_commutator(m, 0), 0);
            assert_eq!(pre.peiffer_commutator(0, m), 0);
        }
        let sub = pre.peiffer_subgroup();
        assert_eq!(sub.elements(), vec![0, 2]);

        // On any crossed module the Peiffer subgroup is trivial.
        let c4 = FiniteGroup::cyclic(4);
        let xm = CrossedModule::normal_inclusion(&c4, &Subgroup::generated(&c4, &[2])).unwrap();
        assert!(xm.pre().peiffer_subgroup().is_trivial());
    }

    #[test]
    fn peiffer_trivial_iff_crossed() {
        let mut pres: Vec<PreCrossedModule> = vec![
            fixtures::precrossed_c4_c2_inversion(),
            fixtures::precrossed_s3_sign_trivial_action(),
        ];
        for (_, xm) in fixtures::crossed_fixtures() {
            pres.push(xm.pre().clone());
        }
        for pre in pres {
            let trivial = pre.peiffer_subgroup().is_trivial();
            let crossed = CrossedModule::from_pre(pre).is_ok();
            assert_eq!(trivial, crossed);
        }
    }

    #[test]
    fn morphism_validation() {
        let c4 = FiniteGroup::cyclic(4);
        let idm = PreCrossedModule::new(
            Arc::clone(&c4),
            Arc::clone(&c4),
            ActionTable::conjugation(&c4),
            GroupHom::identity(&c4),
        )
        .unwrap();
        let morph = XModMorphism::identity(&idm);
        assert!(morph.compose(&morph).is_ok());

        // Projection C4 -> C4/<a^2> as a morphism between identity modules.
        let sq = Subgroup::generated(&c4, &[2]);
        let (c2q, proj) = quotient(&c4, &sq).unwrap();
        let idq = PreCrossedModule::new(
            Arc::clone(&c2q),
            Arc::clone(&c2q),
            ActionTable::conjugation(&c2q),
            GroupHom::identity(&c2q),
        )
        .unwrap();
        XModMorphism::new(idm.clone(), idq, proj.clone(), proj).unwrap();

        // A collapsed mu with identity eta fails the square condition.
        let collapse = GroupHom::trivial(&c4, &c4);
        match XModMorphism::new(idm.clone(), idm, collapse, GroupHom::identity(&c4)) {
            Err(Error::SquareNotCommuting { m }) => assert_ne!(m, 0),
            other => panic!("expected square violation, got {other:?}"),
        }
    }

    #[test]
    fn quotient_module_by_peiffer_subgroup() {
        let pre = fixtures::precrossed_c4_c2_inversion();
        let peiffer = pre.peiffer_subgroup();
        let (q, _) = quotient_module(&pre, &peiffer).unwrap();
        // C4/<a^2> over C2 with the descended action is now a crossed module.
        assert_eq!(q.m().order(), 2);
        assert!(q.into_crossed().is_ok());
    }

    #[test]
    fn hom_enumeration_sanity() {
        let c4 = FiniteGroup::cyclic(4);
        assert_eq!(enumerate_homs(&c4, &c4).unwrap().len(), 4);
    }
}
