//! A small library of worked fixtures over groups of order at most 16.
//!
//! These are the objects the test suites, the command-line examples and the
//! browser demo all share. Every constructor runs the full validators, so
//! simply building the lists is already an axiom sweep.

use std::sync::Arc;

use crate::format::Workspace;
use crate::group::{ActionTable, Elt, FiniteGroup, GroupHom, Subgroup};
use crate::x2mod::TwoCrossedModule;
use crate::xmod::{CrossedModule, PreCrossedModule};

/// The surjection C4 → C2 sending the generator to the generator.
pub fn surjection_c4_c2() -> GroupHom {
    let c4 = FiniteGroup::cyclic(4);
    let c2 = FiniteGroup::cyclic(2);
    GroupHom::new(c4, c2, vec![0, 1, 0, 1]).unwrap()
}

/// C2 acting on C4 by inversion.
pub fn inversion_action_c2_on_c4() -> ActionTable {
    ActionTable::new(
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(4),
        vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]],
    )
    .unwrap()
}

/// The running pre-crossed, non-crossed example: C4 → C2 with the inversion
/// action. CM1 holds, CM2 fails, and the Peiffer subgroup is {1, a^2}.
pub fn precrossed_c4_c2_inversion() -> PreCrossedModule {
    let surj = surjection_c4_c2();
    PreCrossedModule::new(
        Arc::clone(surj.src()),
        Arc::clone(surj.dst()),
        inversion_action_c2_on_c4(),
        surj,
    )
    .unwrap()
}

/// A second pre-crossed, non-crossed example: the sign map S3 → C2 with the
/// trivial action. Its Peiffer subgroup is the commutator subgroup A3.
pub fn precrossed_s3_sign_trivial_action() -> PreCrossedModule {
    let s3 = FiniteGroup::symmetric(3);
    let c2 = FiniteGroup::cyclic(2);
    let sign: Vec<Elt> = s3
        .elements()
        .map(|x| usize::from(s3.element_order(x) == 2))
        .collect();
    let sign = GroupHom::new(Arc::clone(&s3), Arc::clone(&c2), sign).unwrap();
    PreCrossedModule::new(
        Arc::clone(&s3),
        Arc::clone(&c2),
        ActionTable::trivial(&c2, &s3),
        sign,
    )
    .unwrap()
}

/// The alternating subgroup A3 inside S3.
pub fn a3_in_s3() -> (Arc<FiniteGroup>, Subgroup) {
    let s3 = FiniteGroup::symmetric(3);
    let gens: Vec<Elt> = s3
        .elements()
        .filter(|&x| s3.element_order(x) == 3)
        .collect();
    let a3 = Subgroup::generated(&s3, &gens);
    (s3, a3)
}

/// Crossed-module fixtures, covering all four standard constructions.
pub fn crossed_fixtures() -> Vec<(String, CrossedModule)> {
    let mut out: Vec<(String, CrossedModule)> = Vec::new();
    let mut push = |name: &str, xm: CrossedModule| out.push((name.to_string(), xm));

    let c2 = FiniteGroup::cyclic(2);
    let c3 = FiniteGroup::cyclic(3);
    let c4 = FiniteGroup::cyclic(4);

    // Normal inclusions.
    push(
        "inc_c4_sq",
        CrossedModule::normal_inclusion(&c4, &Subgroup::generated(&c4, &[2])).unwrap(),
    );
    let (s3, a3) = a3_in_s3();
    push(
        "inc_s3_a3",
        CrossedModule::normal_inclusion(&s3, &a3).unwrap(),
    );
    push(
        "inc_s3_triv",
        CrossedModule::normal_inclusion(&s3, &Subgroup::trivial(&s3)).unwrap(),
    );
    push(
        "inc_c4_full",
        CrossedModule::normal_inclusion(&c4, &Subgroup::full(&c4)).unwrap(),
    );
    let d4 = FiniteGroup::dihedral(4);
    push(
        "inc_d4_rot",
        CrossedModule::normal_inclusion(&d4, &Subgroup::generated(&d4, &[1])).unwrap(),
    );
    let v4 = FiniteGroup::klein_four();
    push(
        "inc_v4_a",
        CrossedModule::normal_inclusion(&v4, &Subgroup::generated(&v4, &[1])).unwrap(),
    );

    // Automorphism modules.
    push("aut_c3", CrossedModule::automorphism(&c3).unwrap());
    push("aut_s3", CrossedModule::automorphism(&s3).unwrap());

    // Abelian (zero-boundary) modules.
    let inv_c3 = ActionTable::new(
        Arc::clone(&c2),
        Arc::clone(&c3),
        vec![vec![0, 1, 2], vec![0, 2, 1]],
    )
    .unwrap();
    push("ab_c3_inv", CrossedModule::abelian(&inv_c3).unwrap());
    push(
        "ab_c2_triv",
        CrossedModule::abelian(&ActionTable::trivial(&c2, &c2)).unwrap(),
    );

    // Central extensions.
    push(
        "cen_c4_c2",
        CrossedModule::central_extension(&surjection_c4_c2()).unwrap(),
    );
    push(
        "cen_c4_id",
        CrossedModule::central_extension(&GroupHom::identity(&c4)).unwrap(),
    );

    out
}

/// 2-crossed fixtures: both Peiffer-subgroup constructions plus flat lifts
/// of crossed modules.
pub fn two_crossed_fixtures() -> Vec<(String, TwoCrossedModule)> {
    let mut out: Vec<(String, TwoCrossedModule)> = vec![
        (
            "peif_c4_c2".to_string(),
            TwoCrossedModule::from_precrossed_peiffer(&precrossed_c4_c2_inversion()).unwrap(),
        ),
        (
            "peif_s3_sign".to_string(),
            TwoCrossedModule::from_precrossed_peiffer(&precrossed_s3_sign_trivial_action())
                .unwrap(),
        ),
    ];
    for name in ["inc_c4_sq", "inc_s3_a3", "ab_c3_inv", "cen_c4_c2", "aut_c3"] {
        let xm = crossed_fixture(name);
        out.push((
            format!("flat_{name}"),
            TwoCrossedModule::from_crossed(&xm).unwrap(),
        ));
    }
    out
}

/// A ready-made workspace holding the running examples in the text format:
/// the inversion pre-crossed module, a normal-inclusion crossed module, the
/// Peiffer-subgroup 2-crossed module, and identity morphisms on each.
pub fn sample_workspace() -> crate::error::Result<Workspace> {
    let mut ws = Workspace::new();
    let reg_group = |ws: &mut Workspace, name: &str, g: &Arc<FiniteGroup>| {
        ws.add_group(name, g.table().to_vec(), g.labels().map(|l| l.to_vec()))
    };

    let x2 = two_crossed_fixture("peif_c4_c2");
    let c4 = Arc::clone(x2.m());
    let c2 = Arc::clone(x2.p());
    let sq = Arc::clone(x2.l());
    reg_group(&mut ws, "C2", &c2)?;
    reg_group(&mut ws, "C4", &c4)?;
    reg_group(&mut ws, "SQ", &sq)?;
    reg_group(&mut ws, "S3", &FiniteGroup::symmetric(3))?;
    reg_group(&mut ws, "V4", &FiniteGroup::klein_four())?;

    ws.add_hom("d", "C4", "C2", x2.d1().map().to_vec())?;
    ws.add_hom("incSQ", "SQ", "C4", x2.d2().map().to_vec())?;
    ws.add_hom("idC2", "C2", "C2", vec![0, 1])?;
    ws.add_hom("idC4", "C4", "C4", vec![0, 1, 2, 3])?;
    ws.add_hom("idSQ", "SQ", "SQ", vec![0, 1])?;

    ws.add_action("inv", "C2", "C4", x2.act_m().rows().to_vec())?;
    ws.add_action("onSQ", "C2", "SQ", x2.act_l().rows().to_vec())?;
    let conj = ActionTable::conjugation(&c4);
    ws.add_action("conjC4", "C4", "C4", conj.rows().to_vec())?;
    let inc = crossed_fixture("inc_c4_sq");
    ws.add_action("conjC4onSQ", "C4", "SQ", inc.act().rows().to_vec())?;

    ws.add_pxmod("INV", "C4", "C2", "inv", "d")?;
    ws.add_xmod("X", "SQ", "C4", "conjC4onSQ", "incSQ")?;
    ws.add_x2mod(
        "PEIF",
        "SQ",
        "C4",
        "C2",
        "incSQ",
        "d",
        "onSQ",
        "inv",
        x2.lifting_table().to_vec(),
    )?;

    ws.add_xmorphism("t", "X", "X", "idSQ", "idC4")?;
    ws.add_xmorphism("tinv", "INV", "INV", "idC4", "idC2")?;
    ws.add_x2morphism("u", "PEIF", "PEIF", "idSQ", "idC4", "idC2")?;

    let s3pres = crate::fp::Presentation::new(vec!["a".into(), "b".into()], vec![]).unwrap();
    let relators = ["a^2", "b^2", "a b a b a b"]
        .iter()
        .map(|s| s3pres.parse_word(s).unwrap())
        .collect();
    let s3pres = crate::fp::Presentation::new(vec!["a".into(), "b".into()], relators).unwrap();
    ws.add_presentation("s3pres", s3pres)?;
    Ok(ws)
}

/// Look up a crossed fixture by name.
pub fn crossed_fixture(name: &str) -> CrossedModule {
    crossed_fixtures()
        .into_iter()
        .find(|(n, _)| n == name)
        .unwrap_or_else(|| panic!("no crossed fixture named {name}"))
        .1
}

/// Look up a 2-crossed fixture by name.
pub fn two_crossed_fixture(name: &str) -> TwoCrossedModule {
    two_crossed_fixtures()
        .into_iter()
        .find(|(n, _)| n == name)
        .unwrap_or_else(|| panic!("no 2-crossed fixture named {name}"))
        .1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_counts() {
        assert!(crossed_fixtures().len() >= 10);
        assert!(two_crossed_fixtures().len() >= 6);
    }

    #[test]
    fn peiffer_fixture_shapes() {
        let x2 = two_crossed_fixture("peif_c4_c2");
        assert_eq!((x2.l().order(), x2.m().order(), x2.p().order()), (2, 4, 2));
        let x2 = two_crossed_fixture("peif_s3_sign");
        assert_eq!((x2.l().order(), x2.m().order(), x2.p().order()), (3, 6, 2));
    }
}
