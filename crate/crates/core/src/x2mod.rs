//! 2-crossed modules: a normal complex L → M → P with P-actions and a
//! Peiffer lifting {-,-}: M×M → L, validated against the full axiom list.
//!
//! The lifting is stored as a total |M|×|M| table of L-elements. The action
//! of M on L is never user-supplied: it is derived from the lifting as
//! m·l = l·{∂₂(l)⁻¹, m}, and PL3's inner exponent is read through that
//! derived action.
//!
//! Axiom check order: normal complex, equivariance, PL1, PL2, PL4, PL3,
//! PL5. The first failure wins and carries a witness tuple.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{same_group, ActionTable, Elt, FiniteGroup, GroupHom, Subgroup};
use crate::xmod::{quotient_module, CrossedModule, PreCrossedModule, XModMorphism};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoCrossedModule {
    l: Arc<FiniteGroup>,
    m: Arc<FiniteGroup>,
    p: Arc<FiniteGroup>,
    d2: GroupHom,
    d1: GroupHom,
    act_l: ActionTable,
    act_m: ActionTable,
    lifting: Vec<Vec<Elt>>,
}

impl TwoCrossedModule {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        l: Arc<FiniteGroup>,
        m: Arc<FiniteGroup>,
        p: Arc<FiniteGroup>,
        d2: GroupHom,
        d1: GroupHom,
        act_l: ActionTable,
        act_m: ActionTable,
        lifting: Vec<Vec<Elt>>,
    ) -> Result<TwoCrossedModule> {
        if !same_group(d2.src(), &l) || !same_group(d2.dst(), &m) {
            return Err(Error::Mismatch("d2 must map L to M".into()));
        }
        if !same_group(d1.src(), &m) || !same_group(d1.dst(), &p) {
            return Err(Error::Mismatch("d1 must map M to P".into()));
        }
        if !same_group(act_l.actor(), &p) || !same_group(act_l.space(), &l) {
            return Err(Error::Mismatch("act_l must be P on L".into()));
        }
        if !same_group(act_m.actor(), &p) || !same_group(act_m.space(), &m) {
            return Err(Error::Mismatch("act_m must be P on M".into()));
        }
        if lifting.len() != m.order() || lifting.iter().any(|r| r.len() != m.order()) {
            return Err(Error::Mismatch("lifting table must be |M| x |M|".into()));
        }
        if let Some(&v) = lifting.iter().flatten().find(|&&v| v >= l.order()) {
            return Err(Error::Mismatch(format!(
                "lifting value {v} out of range for L of order {}",
                l.order()
            )));
        }

        let x2 = TwoCrossedModule {
            l,
            m,
            p,
            d2,
            d1,
            act_l,
            act_m,
            lifting,
        };
        x2.validate()?;
        Ok(x2)
    }

    fn validate(&self) -> Result<()> {
        let (l, m, p) = (&self.l, &self.m, &self.p);

        // Normal complex: Im d2 normal in M, Im d1 normal in P, d1 d2 = 1.
        if !self.d2.image().is_normal() {
            return Err(Error::ImageNotNormal { which: "d2" });
        }
        if !self.d1.image().is_normal() {
            return Err(Error::ImageNotNormal { which: "d1" });
        }
        for ll in l.elements() {
            if self.d1.apply(self.d2.apply(ll)) != 0 {
                return Err(Error::NotAComplex { l: ll });
            }
        }

        // P-equivariance of both boundaries (P acts on itself by conjugation).
        for pp in p.elements() {
            for ll in l.elements() {
                if self.d2.apply(self.act_l.apply(pp, ll))
                    != self.act_m.apply(pp, self.d2.apply(ll))
                {
                    return Err(Error::BoundaryNotEquivariant {
                        which: "d2",
                        p: pp,
                        x: ll,
                    });
                }
            }
            for mm in m.elements() {
                if self.d1.apply(self.act_m.apply(pp, mm)) != p.conj(pp, self.d1.apply(mm)) {
                    return Err(Error::BoundaryNotEquivariant {
                        which: "d1",
                        p: pp,
                        x: mm,
                    });
                }
            }
        }

        // PL1: d2{m0, m1} = m0 m1 m0^-1 (d1(m0)·m1^-1)
        for m0 in m.elements() {
            for m1 in m.elements() {
                let lhs = self.d2.apply(self.lifting[m0][m1]);
                let rhs = m.mul(
                    m.mul(m.mul(m0, m1), m.inv(m0)),
                    self.act_m.apply(self.d1.apply(m0), m.inv(m1)),
                );
                if lhs != rhs {
                    return Err(Error::Pl1Violation { m0, m1 });
                }
            }
        }

        // PL2: {d2 l0, d2 l1} = [l0, l1]
        for l0 in l.elements() {
            for l1 in l.elements() {
                if self.lifting[self.d2.apply(l0)][self.d2.apply(l1)] != l.commutator(l0, l1) {
                    return Err(Error::Pl2Violation { l0, l1 });
                }
            }
        }

        // PL4 first: {d2 l, m} = l·(m·l^-1), with the derived M-action.
        for ll in l.elements() {
            for mm in m.elements() {
                let lhs = self.lifting[self.d2.apply(ll)][mm];
                let rhs = l.mul(ll, self.m_act(mm, l.inv(ll)));
                if lhs != rhs {
                    return Err(Error::Pl4Violation {
                        second: false,
                        l: ll,
                        m: mm,
                    });
                }
            }
        }
        // PL4 second: {m, d2 l} = (m·l)·(d1(m)·l^-1).
        for ll in l.elements() {
            for mm in m.elements() {
                let lhs = self.lifting[mm][self.d2.apply(ll)];
                let rhs = l.mul(
                    self.m_act(mm, ll),
                    self.act_l.apply(self.d1.apply(mm), l.inv(ll)),
                );
                if lhs != rhs {
                    return Err(Error::Pl4Violation {
                        second: true,
                        l: ll,
                        m: mm,
                    });
                }
            }
        }

        // PL3 first: {m0, m1 m2} = ^(m0 m1 m0^-1){m0, m2} · {m0, m1}
        for m0 in m.elements() {
            for m1 in m.elements() {
                for m2 in m.elements() {
                    let lhs = self.lifting[m0][m.mul(m1, m2)];
                    let rhs = l.mul(
                        self.m_act(m.conj(m0, m1), self.lifting[m0][m2]),
                        self.lifting[m0][m1],
                    );
                    if lhs != rhs {
                        return Err(Error::Pl3Violation {
                            second: false,
                            m0,
                            m1,
                            m2,
                        });
                    }
                }
            }
        }
        // PL3 second: {m0 m1, m2} = {m0, m1 m2 m1^-1} · (d1(m0)·{m1, m2})
        for m0 in m.elements() {
            for m1 in m.elements() {
                for m2 in m.elements() {
                    let lhs = self.lifting[m.mul(m0, m1)][m2];
                    let rhs = l.mul(
                        self.lifting[m0][m.conj(m1, m2)],
                        self.act_l.apply(self.d1.apply(m0), self.lifting[m1][m2]),
                    );
                    if lhs != rhs {
                        return Err(Error::Pl3Violation {
                            second: true,
                            m0,
                            m1,
                            m2,
                        });
                    }
                }
            }
        }

        // PL5: p·{m0, m1} = {p·m0, p·m1}
        for pp in p.elements() {
            for m0 in m.elements() {
                for m1 in m.elements() {
                    if self.act_l.apply(pp, self.lifting[m0][m1])
                        != self.lifting[self.act_m.apply(pp, m0)][self.act_m.apply(pp, m1)]
                    {
                        return Err(Error::Pl5Violation { p: pp, m0, m1 });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn l(&self) -> &Arc<FiniteGroup> {
        &self.l
    }

    pub fn m(&self) -> &Arc<FiniteGroup> {
        &self.m
    }

    pub fn p(&self) -> &Arc<FiniteGroup> {
        &self.p
    }

    pub fn d2(&self) -> &GroupHom {
        &self.d2
    }

    pub fn d1(&self) -> &GroupHom {
        &self.d1
    }

    pub fn act_l(&self) -> &ActionTable {
        &self.act_l
    }

    pub fn act_m(&self) -> &ActionTable {
        &self.act_m
    }

    pub fn lifting(&self, m0: Elt, m1: Elt) -> Elt {
        self.lifting[m0][m1]
    }

    pub fn lifting_table(&self) -> &[Vec<Elt>] {
        &self.lifting
    }

    /// The derived action of M on L: m·l = l·{d2(l)^-1, m}.
    pub fn m_act(&self, m: Elt, l: Elt) -> Elt {
        let dl_inv = self.m.inv(self.d2.apply(l));
        self.l.mul(l, self.lifting[dl_inv][m])
    }

    /// The derived M-action as a table, validated as an action of M on L.
    pub fn m_action_table(&self) -> Result<ActionTable> {
        ActionTable::new(
            Arc::clone(&self.m),
            Arc::clone(&self.l),
            self.m
                .elements()
                .map(|mm| self.l.elements().map(|ll| self.m_act(mm, ll)).collect())
                .collect(),
        )
    }

    /// (L, M, d2) with the derived M-action, validated as a crossed module.
    pub fn lower_crossed_module(&self) -> Result<CrossedModule> {
        CrossedModule::new(
            Arc::clone(&self.l),
            Arc::clone(&self.m),
            self.m_action_table()?,
            self.d2.clone(),
        )
    }

    /// The underlying pre-crossed module (M, P, d1).
    pub fn base_precrossed(&self) -> Result<PreCrossedModule> {
        PreCrossedModule::new(
            Arc::clone(&self.m),
            Arc::clone(&self.p),
            self.act_m.clone(),
            self.d1.clone(),
        )
    }

    /// The Peiffer-subgroup construction: for a pre-crossed module M → P,
    /// the inclusion of the Peiffer subgroup ⟨M,M⟩ into M with the Peiffer
    /// commutator as lifting is a 2-crossed module.
    pub fn from_precrossed_peiffer(x: &PreCrossedModule) -> Result<TwoCrossedModule> {
        let sub = x.peiffer_subgroup();
        let (l, embed) = sub.as_group();
        let elems = sub.elements();
        let pos = |v: Elt| -> Result<Elt> {
            elems
                .iter()
                .position(|&e| e == v)
                .ok_or_else(|| Error::NotWellDefined {
                    witness: format!("element {v} escapes the Peiffer subgroup"),
                })
        };
        let m = x.m();
        let p = x.p();
        let mut lifting = vec![vec![0; m.order()]; m.order()];
        for m0 in m.elements() {
            for m1 in m.elements() {
                lifting[m0][m1] = pos(x.peiffer_commutator(m0, m1))?;
            }
        }
        // The Peiffer subgroup is P-invariant, so the action restricts.
        let mut act_rows = Vec::with_capacity(p.order());
        for pp in p.elements() {
            let mut row = Vec::with_capacity(l.order());
            for ll in l.elements() {
                row.push(pos(x.apply(pp, embed.apply(ll)))?);
            }
            act_rows.push(row);
        }
        let act_l = ActionTable::new(Arc::clone(p), Arc::clone(&l), act_rows)?;
        TwoCrossedModule::new(
            l,
            Arc::clone(m),
            Arc::clone(p),
            embed,
            x.boundary().clone(),
            act_l,
            x.act().clone(),
            lifting,
        )
    }

    /// Any crossed module as a 2-crossed module with trivial top group.
    pub fn from_crossed(x: &CrossedModule) -> Result<TwoCrossedModule> {
        let l = FiniteGroup::trivial();
        let m = x.m();
        let p = x.p();
        TwoCrossedModule::new(
            Arc::clone(&l),
            Arc::clone(m),
            Arc::clone(p),
            GroupHom::trivial(&l, m),
            x.boundary().clone(),
            ActionTable::trivial(p, &l),
            x.act().clone(),
            vec![vec![0; m.order()]; m.order()],
        )
    }

    /// Collapse to a crossed module: M/Im d2 → P with the descended action.
    pub fn reflect_to_xmod(&self) -> Result<CrossedModule> {
        let base = self.base_precrossed()?;
        let im = self.d2.image();
        let (module, _proj) = quotient_module(&base, &im)?;
        module.into_crossed()
    }

    /// For a trivial lifting, check the three structural consequences: the
    /// base is a crossed module, L is abelian, and Im d1 acts trivially on L.
    pub fn trivial_lifting_report(&self) -> Result<TrivialLiftingReport> {
        for m0 in self.m.elements() {
            for m1 in self.m.elements() {
                if self.lifting[m0][m1] != 0 {
                    return Err(Error::LiftingNotTrivial { m0, m1 });
                }
            }
        }
        let peiffer_identity = match self.base_precrossed()?.into_crossed() {
            Ok(_) => ClaimOutcome::Pass,
            Err(Error::Cm2Violation { m, n }) => ClaimOutcome::fail(vec![m, n]),
            Err(e) => return Err(e),
        };
        let l_abelian = match self
            .l
            .elements()
            .flat_map(|a| self.l.elements().map(move |b| (a, b)))
            .find(|&(a, b)| self.l.mul(a, b) != self.l.mul(b, a))
        {
            None => ClaimOutcome::Pass,
            Some((a, b)) => ClaimOutcome::fail(vec![a, b]),
        };
        let mut boundary_image_acts_trivially = ClaimOutcome::Pass;
        'outer: for mm in self.m.elements() {
            let pp = self.d1.apply(mm);
            for ll in self.l.elements() {
                if self.act_l.apply(pp, ll) != ll {
                    boundary_image_acts_trivially = ClaimOutcome::fail(vec![mm, ll]);
                    break 'outer;
                }
            }
        }
        Ok(TrivialLiftingReport {
            peiffer_identity,
            l_abelian,
            boundary_image_acts_trivially,
        })
    }

    /// Elements of L that map into Ker d1 under d2. For a valid 2-crossed
    /// module this is all of L (d1 d2 = 1); computed rather than assumed so
    /// pullbacks can use it directly.
    pub fn kernel_preimage(&self) -> Subgroup {
        let member: Vec<bool> = self
            .l
            .elements()
            .map(|ll| self.d1.apply(self.d2.apply(ll)) == 0)
            .collect();
        Subgroup::from_member_mask(&self.l, member).expect("preimage of a subgroup")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClaimOutcome {
    Pass,
    Fail { witness: Vec<Elt> },
}

impl ClaimOutcome {
    fn fail(witness: Vec<Elt>) -> ClaimOutcome {
        ClaimOutcome::Fail { witness }
    }

    pub fn passed(&self) -> bool {
        matches!(self, ClaimOutcome::Pass)
    }
}

/// Outcome of [`TwoCrossedModule::trivial_lifting_report`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TrivialLiftingReport {
    pub peiffer_identity: ClaimOutcome,
    pub l_abelian: ClaimOutcome,
    pub boundary_image_acts_trivially: ClaimOutcome,
}

impl TrivialLiftingReport {
    pub fn all_pass(&self) -> bool {
        self.peiffer_identity.passed()
            && self.l_abelian.passed()
            && self.boundary_image_acts_trivially.passed()
    }
}

/// A morphism of 2-crossed modules (f2, f1, f0), validated against all five
/// compatibility equations.
#[derive(Clone, Debug)]
pub struct X2Morphism {
    src: TwoCrossedModule,
    dst: TwoCrossedModule,
    f2: GroupHom,
    f1: GroupHom,
    f0: GroupHom,
}

impl X2Morphism {
    pub fn new(
        src: TwoCrossedModule,
        dst: TwoCrossedModule,
        f2: GroupHom,
        f1: GroupHom,
        f0: GroupHom,
    ) -> Result<X2Morphism> {
        if !same_group(f2.src(), &src.l) || !same_group(f2.dst(), &dst.l) {
            return Err(Error::Mismatch("f2 must map src L to dst L".into()));
        }
        if !same_group(f1.src(), &src.m) || !same_group(f1.dst(), &dst.m) {
            return Err(Error::Mismatch("f1 must map src M to dst M".into()));
        }
        if !same_group(f0.src(), &src.p) || !same_group(f0.dst(), &dst.p) {
            return Err(Error::Mismatch("f0 must map src P to dst P".into()));
        }
        // f0 d1 = d1' f1
        for mm in src.m.elements() {
            if f0.apply(src.d1.apply(mm)) != dst.d1.apply(f1.apply(mm)) {
                return Err(Error::X2Square { level: 1, x: mm });
            }
        }
        // f1 d2 = d2' f2
        for ll in src.l.elements() {
            if f1.apply(src.d2.apply(ll)) != dst.d2.apply(f2.apply(ll)) {
                return Err(Error::X2Square { level: 2, x: ll });
            }
        }
        // f1(p·m) = f0(p)·f1(m) and f2(p·l) = f0(p)·f2(l)
        for pp in src.p.elements() {
            for mm in src.m.elements() {
                if f1.apply(src.act_m.apply(pp, mm)) != dst.act_m.apply(f0.apply(pp), f1.apply(mm))
                {
                    return Err(Error::X2NotEquivariant {
                        level: 1,
                        p: pp,
                        x: mm,
                    });
                }
            }
            for ll in src.l.elements() {
                if f2.apply(src.act_l.apply(pp, ll)) != dst.act_l.apply(f0.apply(pp), f2.apply(ll))
                {
                    return Err(Error::X2NotEquivariant {
                        level: 2,
                        p: pp,
                        x: ll,
                    });
                }
            }
        }
        // f2{m0, m1} = {f1 m0, f1 m1}
        for m0 in src.m.elements() {
            for m1 in src.m.elements() {
                if f2.apply(src.lifting[m0][m1]) != dst.lifting[f1.apply(m0)][f1.apply(m1)] {
                    return Err(Error::X2LiftingMismatch { m0, m1 });
                }
            }
        }
        Ok(X2Morphism {
            src,
            dst,
            f2,
            f1,
            f0,
        })
    }

    pub fn identity(x2: &TwoCrossedModule) -> X2Morphism {
        X2Morphism {
            src: x2.clone(),
            dst: x2.clone(),
            f2: GroupHom::identity(&x2.l),
            f1: GroupHom::identity(&x2.m),
            f0: GroupHom::identity(&x2.p),
        }
    }

    pub fn src(&self) -> &TwoCrossedModule {
        &self.src
    }

    pub fn dst(&self) -> &TwoCrossedModule {
        &self.dst
    }

    pub fn f2(&self) -> &GroupHom {
        &self.f2
    }

    pub fn f1(&self) -> &GroupHom {
        &self.f1
    }

    pub fn f0(&self) -> &GroupHom {
        &self.f0
    }

    /// self ∘ other.
    pub fn compose(&self, other: &X2Morphism) -> Result<X2Morphism> {
        X2Morphism::new(
            other.src.clone(),
            self.dst.clone(),
            self.f2.compose(&other.f2)?,
            self.f1.compose(&other.f1)?,
            self.f0.compose(&other.f0)?,
        )
    }

    /// Image of a crossed-module morphism under the trivial-top inclusion.
    pub fn from_xmod_morphism(f: &XModMorphism) -> Result<X2Morphism> {
        let src = TwoCrossedModule::from_crossed(&f.src().clone().into_crossed()?)?;
        let dst = TwoCrossedModule::from_crossed(&f.dst().clone().into_crossed()?)?;
        let f2 = GroupHom::trivial(&src.l, &dst.l);
        X2Morphism::new(src, dst, f2, f.mu().clone(), f.eta().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn peiffer_fixture() -> TwoCrossedModule {
        TwoCrossedModule::from_precrossed_peiffer(&fixtures::precrossed_c4_c2_inversion()).unwrap()
    }

    #[test]
    fn peiffer_construction_on_inversion_example() {
        let x2 = peiffer_fixture();
        assert_eq!(x2.l().order(), 2);
        // {a, a} = a^2, the nonidentity element of L.
        assert_eq!(x2.lifting(1, 1), 1);
        assert_eq!(x2.lifting(0, 1), 0);
    }

    #[test]
    fn peiffer_construction_on_crossed_module_is_trivial() {
        let c4 = FiniteGroup::cyclic(4);
        let xm = CrossedModule::normal_inclusion(&c4, &Subgroup::generated(&c4, &[2])).unwrap();
        let x2 = TwoCrossedModule::from_precrossed_peiffer(xm.pre()).unwrap();
        assert_eq!(x2.l().order(), 1);
        assert!(x2.trivial_lifting_report().unwrap().all_pass());
    }

    #[test]
    fn from_crossed_examples() {
        for (name, xm) in fixtures::crossed_fixtures() {
            let x2 = TwoCrossedModule::from_crossed(&xm)
                .unwrap_or_else(|e| panic!("fixture {name}: {e}"));
            assert_eq!(x2.l().order(), 1);
        }
    }

    #[test]
    fn induced_m_action_examples() {
        let x2 = peiffer_fixture();
        // m = identity acts trivially.
        for ll in x2.l().elements() {
            assert_eq!(x2.m_act(0, ll), ll);
        }
        // Trivial lifting means trivial M-action.
        let c4 = FiniteGroup::cyclic(4);
        let xm = CrossedModule::normal_inclusion(&c4, &Subgroup::full(&c4)).unwrap();
        let flat = TwoCrossedModule::from_crossed(&xm).unwrap();
        for mm in flat.m().elements() {
            for ll in flat.l().elements() {
                assert_eq!(flat.m_act(mm, ll), ll);
            }
        }
    }

    #[test]
    fn lower_crossed_module_under_derived_action() {
        for (name, x2) in fixtures::two_crossed_fixtures() {
            x2.lower_crossed_module()
                .unwrap_or_else(|e| panic!("fixture {name}: {e}"));
        }
    }

    #[test]
    fn lifting_of_identity_is_identity() {
        for (_, x2) in fixtures::two_crossed_fixtures() {
            for mm in x2.m().elements() {
                assert_eq!(x2.lifting(mm, 0), 0);
                assert_eq!(x2.lifting(0, mm), 0);
            }
        }
    }

    #[test]
    fn pl4_composite_identity() {
        // {d2 l, m}{m, d2 l} = l · (d1(m)·l^-1) on every fixture.
        for (_, x2) in fixtures::two_crossed_fixtures() {
            let l = x2.l();
            for ll in l.elements() {
                for mm in x2.m().elements() {
                    let lhs = l.mul(
                        x2.lifting(x2.d2().apply(ll), mm),
                        x2.lifting(mm, x2.d2().apply(ll)),
                    );
                    let rhs = l.mul(ll, x2.act_l().apply(x2.d1().apply(mm), l.inv(ll)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn corrupted_lifting_entry_is_caught() {
        let x2 = peiffer_fixture();
        let mut lifting: Vec<Vec<Elt>> = x2.lifting_table().to_vec();
        lifting[1][1] = 0; // was 1
        let bad = TwoCrossedModule::new(
            Arc::clone(x2.l()),
            Arc::clone(x2.m()),
            Arc::clone(x2.p()),
            x2.d2().clone(),
            x2.d1().clone(),
            x2.act_l().clone(),
            x2.act_m().clone(),
            lifting,
        );
        assert!(matches!(bad, Err(Error::Pl1Violation { m0: 1, m1: 1 })));
    }

    #[test]
    fn reflect_collapses_peiffer_fixture() {
        let x2 = peiffer_fixture();
        let xm = x2.reflect_to_xmod().unwrap();
        // C4 / <a^2> over C2.
        assert_eq!(xm.m().order(), 2);
        assert_eq!(xm.p().order(), 2);
    }

    #[test]
    fn reflect_of_flat_module_keeps_m() {
        for (name, xm) in fixtures::crossed_fixtures() {
            let x2 = TwoCrossedModule::from_crossed(&xm).unwrap();
            let back = x2
                .reflect_to_xmod()
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(back.m().order(), xm.m().order(), "fixture {name}");
            let iso = crate::group::find_isomorphism(back.m(), xm.m()).unwrap();
            assert!(iso.is_some(), "fixture {name}");
        }
    }

    #[test]
    fn trivial_lifting_diagnostics() {
        for (name, xm) in fixtures::crossed_fixtures() {
            let x2 = TwoCrossedModule::from_crossed(&xm).unwrap();
            let report = x2.trivial_lifting_report().unwrap();
            assert!(report.all_pass(), "fixture {name}");
        }
        let x2 = peiffer_fixture();
        assert!(matches!(
            x2.trivial_lifting_report(),
            Err(Error::LiftingNotTrivial { .. })
        ));
    }

    #[test]
    fn morphism_validation_and_composition() {
        let x2 = peiffer_fixture();
        let id = X2Morphism::identity(&x2);
        assert!(id.compose(&id).is_ok());

        // Collapsing f1 with identity f0 and f2 breaks the level-1 square.
        let bad_f1 = GroupHom::trivial(x2.m(), x2.m());
        let bad = X2Morphism::new(
            x2.clone(),
            x2.clone(),
            GroupHom::identity(x2.l()),
            bad_f1,
            GroupHom::identity(x2.p()),
        );
        assert!(matches!(bad, Err(Error::X2Square { level: 1, .. })));

        // The inversion automorphism of M is a genuine endomorphism here.
        let neg = GroupHom::new(Arc::clone(x2.m()), Arc::clone(x2.m()), vec![0, 3, 2, 1]).unwrap();
        X2Morphism::new(
            x2.clone(),
            x2.clone(),
            GroupHom::identity(x2.l()),
            neg,
            GroupHom::identity(x2.p()),
        )
        .unwrap();
    }

    #[test]
    fn functorial_image_of_xmod_morphism() {
        let c4 = FiniteGroup::cyclic(4);
        let xm = CrossedModule::normal_inclusion(&c4, &Subgroup::full(&c4)).unwrap();
        let f = XModMorphism::identity(xm.pre());
        let x2f = X2Morphism::from_xmod_morphism(&f).unwrap();
        assert_eq!(x2f.src().m().order(), 4);
    }

    #[test]
    fn kernel_preimage_is_whole_l() {
        for (_, x2) in fixtures::two_crossed_fixtures() {
            assert_eq!(x2.kernel_preimage().order(), x2.l().order());
        }
    }
}
