//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test -p xmod2 --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use std::sync::Arc;
use std::time::Instant;

use xmod2::error::Error;
use xmod2::fixtures;
use xmod2::format::parse_str;
use xmod2::fp::{todd_coxeter, Enumeration, Presentation};
use xmod2::group::{
    enumerate_homs, find_isomorphism, ActionTable, Elt, FiniteGroup, GroupHom, Subgroup,
};
use xmod2::induced::{induced_x2_universal, induced_x2mod, induced_xmod, InducedOptions, Strategy};
use xmod2::pullback::{
    pullback_x2_universal, pullback_x2mod, pullback_xmod, pullback_xmod_universal, Uniqueness,
};
use xmod2::x2mod::{TwoCrossedModule, X2Morphism};
use xmod2::xmod::{CrossedModule, PreCrossedModule, XModMorphism};

fn opts() -> InducedOptions {
    InducedOptions {
        coset_limit: 20_000,
        ..InducedOptions::default()
    }
}

#[test]
fn criterion_1_axiom_suite_and_mutations() {
    let start = Instant::now();

    let crossed = fixtures::crossed_fixtures();
    let two_crossed = fixtures::two_crossed_fixtures();
    assert!(crossed.len() >= 10, "need at least 10 crossed fixtures");
    assert!(
        two_crossed.len() >= 6,
        "need at least 6 two-crossed fixtures"
    );
    for (name, xm) in &crossed {
        assert!(xm.m().order() <= 16 && xm.p().order() <= 16, "{name}");
    }
    for (name, x2) in &two_crossed {
        assert!(
            x2.l().order() <= 16 && x2.m().order() <= 16 && x2.p().order() <= 16,
            "{name}"
        );
    }
    // The four standard constructions are all present (they were built by
    // their dedicated constructors inside the fixture library).
    for required in ["inc_c4_sq", "aut_c3", "ab_c3_inv", "cen_c4_c2"] {
        assert!(crossed.iter().any(|(n, _)| n == required), "{required}");
    }
    // The Peiffer-subgroup example and flat lifts are present.
    assert!(two_crossed.iter().any(|(n, _)| n == "peif_c4_c2"));
    assert!(two_crossed.iter().any(|(n, _)| n.starts_with("flat_")));

    // Mutations: a single corrupted table entry is caught with a witness.
    // Each corruption below provably breaks an axiom: the identity column
    // of a multiplication table, the identity image of a homomorphism, the
    // bijectivity of an action row, or the boundary of a lifting value
    // under an injective d2.
    let mut mutations = 0;

    for (name, xm) in &crossed {
        if xm.m().order() > 1 {
            // x * 1 no longer equals x: the identity axiom breaks.
            let mut table = xm.m().table().to_vec();
            table[1][0] = (table[1][0] + 1) % xm.m().order();
            match FiniteGroup::from_table(table, None) {
                Err(Error::NotAGroup(defect)) => {
                    let _witness = format!("{defect}");
                    mutations += 1;
                }
                other => panic!("{name}: corrupted table accepted: {other:?}"),
            }
        }
        if xm.p().order() > 1 {
            // The identity no longer maps to the identity.
            let mut map = xm.boundary().map().to_vec();
            map[0] = 1;
            match GroupHom::new(Arc::clone(xm.m()), Arc::clone(xm.p()), map) {
                Err(Error::NotAHom { x, y }) => {
                    assert!(x < xm.m().order() && y < xm.m().order());
                    mutations += 1;
                }
                other => panic!("{name}: corrupted boundary accepted: {:?}", other.err()),
            }
        }
        if xm.m().order() > 1 {
            // A duplicated value makes one action row non-bijective (or
            // moves a point under the identity actor).
            let mut rows = xm.act().rows().to_vec();
            let p_last = xm.p().order() - 1;
            rows[p_last][0] = rows[p_last][1];
            match ActionTable::new(Arc::clone(xm.p()), Arc::clone(xm.m()), rows) {
                Err(Error::NotAnAction(defect)) => {
                    let _witness = format!("{defect}");
                    mutations += 1;
                }
                other => panic!("{name}: corrupted action accepted: {:?}", other.err()),
            }
        }
    }

    for (name, x2) in &two_crossed {
        let outcome = if x2.l().order() > 1 {
            // d2 is injective on these fixtures, so any change to a lifting
            // value changes its boundary and PL1 sees it.
            let mut lifting = x2.lifting_table().to_vec();
            let (a, b) = (x2.m().order() - 1, x2.m().order() - 1);
            lifting[a][b] = (lifting[a][b] + 1) % x2.l().order();
            TwoCrossedModule::new(
                Arc::clone(x2.l()),
                Arc::clone(x2.m()),
                Arc::clone(x2.p()),
                x2.d2().clone(),
                x2.d1().clone(),
                x2.act_l().clone(),
                x2.act_m().clone(),
                lifting,
            )
            .err()
        } else if x2.p().order() > 1 {
            // Trivial top group: corrupt the identity image of d1 instead.
            let mut map = x2.d1().map().to_vec();
            map[0] = 1;
            GroupHom::new(Arc::clone(x2.m()), Arc::clone(x2.p()), map).err()
        } else {
            continue;
        };
        match outcome {
            Some(
                Error::Pl1Violation { .. }
                | Error::Pl2Violation { .. }
                | Error::Pl3Violation { .. }
                | Error::Pl4Violation { .. }
                | Error::Pl5Violation { .. }
                | Error::NotAHom { .. },
            ) => mutations += 1,
            other => panic!("{name}: corrupted entry accepted: {other:?}"),
        }
    }
    assert!(
        mutations >= 20,
        "expected many mutation catches, got {mutations}"
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "axiom suite took {elapsed:?}");
    println!(
        "criterion 1 (axiom suite, {} crossed / {} two-crossed fixtures, {} mutations, {:?}): PASS",
        crossed.len(),
        two_crossed.len(),
        mutations,
        elapsed
    );
}

#[test]
fn criterion_2_pullback_theorems() {
    // Dimension 1: the C4 -> C2 fixture has fiber product of order 4,
    // confirmed by independent pair enumeration.
    let c2 = FiniteGroup::cyclic(2);
    let nmod = CrossedModule::normal_inclusion(&c2, &Subgroup::full(&c2)).unwrap();
    let phi = fixtures::surjection_c4_c2();
    let pb = pullback_xmod(&nmod, &phi).unwrap();
    assert_eq!(pb.module.m().order(), 4);
    let mut oracle = 0;
    for n in nmod.m().elements() {
        for p in phi.src().elements() {
            if nmod.boundary().apply(n) == phi.apply(p) {
                oracle += 1;
            }
        }
    }
    assert_eq!(oracle, 4);

    // Dimension 2: the Peiffer fixture has middle group of order 8.
    let x2 = fixtures::two_crossed_fixture("peif_c4_c2");
    let pb2 = pullback_x2mod(&x2, &phi).unwrap();
    assert_eq!(pb2.module.m().order(), 8);
    let mut oracle2 = 0;
    for n in x2.m().elements() {
        for p in phi.src().elements() {
            if x2.d1().apply(n) == phi.apply(p) {
                oracle2 += 1;
            }
        }
    }
    assert_eq!(oracle2, 8);

    // Every fixture pulls back along the identity to an isomorphic copy and
    // the universal factorization of the projection is unique.
    for (name, nmod) in fixtures::crossed_fixtures() {
        let id = GroupHom::identity(nmod.p());
        let pb = pullback_xmod(&nmod, &id).unwrap();
        assert!(
            find_isomorphism(pb.module.m(), nmod.m()).unwrap().is_some(),
            "{name}"
        );
        if pb.module.m().order() <= 16 {
            let (_, uniq) = pullback_xmod_universal(&pb.module, &pb.proj, &pb).unwrap();
            assert_eq!(uniq, Uniqueness::Unique, "{name}");
        }
    }
    for (name, x2) in fixtures::two_crossed_fixtures() {
        let id = GroupHom::identity(x2.p());
        let pb = pullback_x2mod(&x2, &id).unwrap();
        assert!(
            find_isomorphism(pb.module.m(), x2.m()).unwrap().is_some(),
            "{name}"
        );
        if pb.module.m().order() <= 16 && pb.module.l().order() <= 16 {
            let (_, uniq) = pullback_x2_universal(&pb.module, &pb.proj, &pb).unwrap();
            assert_eq!(uniq, Uniqueness::Unique, "{name}");
        }
    }
    // The order-8 pullback also factors its own projection uniquely.
    let (_, uniq) = pullback_x2_universal(&pb2.module, &pb2.proj, &pb2).unwrap();
    assert_eq!(uniq, Uniqueness::Unique);

    println!(
        "criterion 2 (pullback orders 4 and 8, identity pullbacks, unique factorizations): PASS"
    );
}

#[test]
fn criterion_3_induced_dimension_one_oracle() {
    let c2 = FiniteGroup::cyclic(2);
    let c4 = FiniteGroup::cyclic(4);
    let s3 = FiniteGroup::symmetric(3);
    let triv = FiniteGroup::trivial();
    let sign: Vec<Elt> = s3
        .elements()
        .map(|x| usize::from(s3.element_order(x) == 2))
        .collect();
    let cases: Vec<(&str, CrossedModule, GroupHom)> = vec![
        (
            "c2_to_point",
            CrossedModule::normal_inclusion(&c2, &Subgroup::full(&c2)).unwrap(),
            GroupHom::trivial(&c2, &triv),
        ),
        (
            "sq_in_c4_to_c2",
            CrossedModule::normal_inclusion(&c4, &Subgroup::generated(&c4, &[2])).unwrap(),
            fixtures::surjection_c4_c2(),
        ),
        (
            "c4_full_to_c2",
            CrossedModule::normal_inclusion(&c4, &Subgroup::full(&c4)).unwrap(),
            fixtures::surjection_c4_c2(),
        ),
        (
            "s3_full_to_sign",
            CrossedModule::normal_inclusion(&s3, &Subgroup::full(&s3)).unwrap(),
            GroupHom::new(Arc::clone(&s3), Arc::clone(&c2), sign).unwrap(),
        ),
        (
            "central_c4_to_point",
            CrossedModule::central_extension(&fixtures::surjection_c4_c2()).unwrap(),
            GroupHom::trivial(&c2, &triv),
        ),
    ];
    assert!(cases.len() >= 5);
    for (name, mmod, phi) in &cases {
        assert!(phi.is_surjective(), "{name}");
        assert!(phi.dst().order() <= 8, "{name}");
        let epi = induced_xmod(
            mmod,
            phi,
            InducedOptions {
                strategy: Strategy::Epi,
                ..opts()
            },
        )
        .unwrap();
        let tc = induced_xmod(
            mmod,
            phi,
            InducedOptions {
                strategy: Strategy::GeneralTc,
                ..opts()
            },
        )
        .unwrap();
        let (a, b) = (epi.module().unwrap(), tc.module().unwrap());
        assert_eq!(a.m().order(), b.m().order(), "{name}");
        let witness_iso = enumerate_homs(a.m(), b.m())
            .unwrap()
            .into_iter()
            .filter(|h| h.is_bijective())
            .find(|h| {
                mmod.m().elements().all(|mm| {
                    h.apply(epi.canonical().unwrap().apply(mm)) == tc.canonical().unwrap().apply(mm)
                })
            });
        assert!(
            witness_iso.is_some(),
            "{name}: no canonical-compatible isomorphism"
        );
    }
    // The pinned value: M = P = C2, Q = 1 induces to order 2 exactly.
    let pinned = induced_xmod(&cases[0].1, &cases[0].2, opts()).unwrap();
    assert_eq!(pinned.module().unwrap().m().order(), 2);

    println!(
        "criterion 3 (induced dimension 1: {} surjective fixtures, quotient vs enumeration): PASS",
        cases.len()
    );
}

/// Surjective theta collapsing the inversion Peiffer fixture onto (C2 -> 1).
fn collapse_theta_peiffer(x2: &TwoCrossedModule) -> XModMorphism {
    let triv = FiniteGroup::trivial();
    let c2 = FiniteGroup::cyclic(2);
    let dstmod = PreCrossedModule::new(
        Arc::clone(&c2),
        Arc::clone(&triv),
        ActionTable::trivial(&triv, &c2),
        GroupHom::trivial(&c2, &triv),
    )
    .unwrap();
    XModMorphism::new(
        x2.base_precrossed().unwrap(),
        dstmod,
        fixtures::surjection_c4_c2(),
        GroupHom::trivial(x2.p(), &triv),
    )
    .unwrap()
}

fn id_theta(x2: &TwoCrossedModule) -> XModMorphism {
    XModMorphism::identity(&x2.base_precrossed().unwrap())
}

fn dim2_cases() -> Vec<(String, TwoCrossedModule, XModMorphism)> {
    let peif = fixtures::two_crossed_fixture("peif_c4_c2");
    let flat = fixtures::two_crossed_fixture("flat_inc_c4_sq");
    vec![
        (
            "peiffer_collapse".to_string(),
            peif.clone(),
            collapse_theta_peiffer(&peif),
        ),
        (
            "peiffer_identity".to_string(),
            peif.clone(),
            id_theta(&peif),
        ),
        ("flat_identity".to_string(), flat.clone(), id_theta(&flat)),
    ]
}

#[test]
fn criterion_4_induced_dimension_two_oracle() {
    let cases = dim2_cases();
    assert!(cases.len() >= 3);
    for (name, x2, theta) in &cases {
        assert!(
            theta.mu().is_surjective() && theta.eta().is_surjective(),
            "{name}"
        );
        let epi = induced_x2mod(
            theta,
            x2,
            InducedOptions {
                strategy: Strategy::Epi,
                ..opts()
            },
        )
        .unwrap();
        let tc = induced_x2mod(
            theta,
            x2,
            InducedOptions {
                strategy: Strategy::GeneralTc,
                ..opts()
            },
        )
        .unwrap();
        let (a, b) = (epi.module().unwrap(), tc.module().unwrap());
        assert_eq!(a.l().order(), b.l().order(), "{name}");
        assert!(find_isomorphism(a.l(), b.l()).unwrap().is_some(), "{name}");
    }
    // The pinned value: the Peiffer fixture collapsed along phi: C2 -> 1
    // induces to a top group of order 2 exactly.
    let (_, x2, theta) = &cases[0];
    let out = induced_x2mod(theta, x2, opts()).unwrap();
    assert_eq!(out.module().unwrap().l().order(), 2);

    println!(
        "criterion 4 (induced dimension 2: {} surjective fixtures, quotient vs enumeration): PASS",
        cases.len()
    );
}

#[test]
fn criterion_5_universal_properties_dimension_three() {
    for (name, x2, theta) in dim2_cases() {
        for strategy in [Strategy::Epi, Strategy::GeneralTc] {
            let out = induced_x2mod(&theta, &x2, InducedOptions { strategy, ..opts() }).unwrap();
            let module = out.module().unwrap();
            let canonical = out.canonical().unwrap();
            let f = X2Morphism::new(
                x2.clone(),
                module.clone(),
                canonical.clone(),
                theta.mu().clone(),
                theta.eta().clone(),
            )
            .unwrap();
            let (f_star, uniq) = induced_x2_universal(&out, &theta, &x2, &f).unwrap();
            assert_eq!(uniq, Uniqueness::Unique, "{name} {strategy:?}");
            // f* . canonical = f2 holds identically.
            for ll in x2.l().elements() {
                assert_eq!(
                    f_star.apply(canonical.apply(ll)),
                    f.f2().apply(ll),
                    "{name} {strategy:?}"
                );
            }
        }
    }
    println!("criterion 5 (dimension-3 universal arrows exist, unique, and factor): PASS");
}

#[test]
fn criterion_6_coset_enumeration_soundness() {
    let pres = |gens: &[&str], rels: &[&str]| -> Presentation {
        let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let empty = Presentation::new(names.clone(), vec![]).unwrap();
        let words = rels.iter().map(|s| empty.parse_word(s).unwrap()).collect();
        Presentation::new(names, words).unwrap()
    };
    let mut checked = 0;
    let mut check = |p: Presentation, expect: usize| {
        let one = todd_coxeter(&p, 10_000).unwrap();
        let cg = match one {
            Enumeration::Complete(cg) => cg,
            Enumeration::LimitExceeded { .. } => panic!("unexpected limit"),
        };
        assert_eq!(cg.group.order(), expect);
        // Soundness: every relator traces to the identity from every coset.
        for c in 0..cg.group.order() {
            for r in p.relators() {
                let mut cur = c;
                for l in r.letters() {
                    cur = cg.table[cur][2 * l.gen + usize::from(l.inverse)];
                }
                assert_eq!(cur, c);
            }
        }
        // Determinism: a second run yields a byte-identical table.
        let two = match todd_coxeter(&p, 10_000).unwrap() {
            Enumeration::Complete(cg) => cg,
            Enumeration::LimitExceeded { .. } => panic!("unexpected limit"),
        };
        assert_eq!(cg.table, two.table);
        assert_eq!(cg.group.table(), two.group.table());
        checked += 1;
    };
    for n in 1..=12 {
        let rel = format!("a^{n}");
        check(pres(&["a"], &[&rel]), n);
    }
    check(pres(&["a", "b"], &["a^2", "b^2", "a b a b a b"]), 6); // S3
    check(pres(&["a", "b"], &["a^2", "b^2", "a b a b"]), 4); // Klein four
    check(pres(&["r", "s"], &["r^4", "s^2", "r s r s"]), 8); // D4
    println!(
        "criterion 6 (coset enumeration: {checked} presentations, soundness + determinism): PASS"
    );
}

#[test]
fn criterion_7_trivial_lifting_diagnostics() {
    let mut flats = 0;
    for (name, x2) in fixtures::two_crossed_fixtures() {
        if name.starts_with("flat_") {
            let report = x2.trivial_lifting_report().unwrap();
            assert!(report.all_pass(), "{name}");
            flats += 1;
        }
    }
    assert!(flats >= 4);
    let peif = fixtures::two_crossed_fixture("peif_c4_c2");
    assert!(matches!(
        peif.trivial_lifting_report(),
        Err(Error::LiftingNotTrivial { .. })
    ));
    println!("criterion 7 (trivial-lifting diagnostics on {flats} flat fixtures + refusal): PASS");
}

#[test]
fn criterion_8_cli_round_trip_and_exit_codes() {
    // Round trip: the sample workspace serializes and re-parses
    // byte-identically, and each crossed fixture survives an emit/reload.
    let ws = fixtures::sample_workspace().unwrap();
    let text = ws.serialize();
    assert_eq!(parse_str(&text).unwrap().serialize(), text);

    // Exit-code matrix through the compiled binary.
    let bin = env!("CARGO_BIN_EXE_xmod2");
    let dir = std::env::temp_dir().join("xmod2-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let sample = dir.join("sample.xm");
    std::fs::write(&sample, &text).unwrap();

    let bad_axiom = dir.join("bad_axiom.xm");
    std::fs::write(
        &bad_axiom,
        text.replace("pxmod INV", "xmod BADX").as_bytes(),
    )
    .unwrap();

    let bad_syntax = dir.join("bad_syntax.xm");
    std::fs::write(&bad_syntax, "group G { table = [[0,1] }").unwrap();

    let bad_reference = dir.join("bad_reference.xm");
    std::fs::write(&bad_reference, "hom f: A -> B {\n  map = [0]\n}\n").unwrap();

    let run = |args: &[&str]| -> i32 {
        std::process::Command::new(bin)
            .args(args)
            .output()
            .expect("binary runs")
            .status
            .code()
            .expect("exit code")
    };

    let sample_s = sample.to_str().unwrap();
    let matrix: Vec<(Vec<&str>, i32)> = vec![
        (vec!["check", sample_s], 0),
        (
            vec!["pullback2", "--x2mod", "PEIF", "--phi", "d", sample_s],
            0,
        ),
        (vec!["peiffer", "--pxmod", "INV", sample_s], 0),
        (vec!["check", bad_axiom.to_str().unwrap()], 2),
        (vec!["check", bad_syntax.to_str().unwrap()], 4),
        (vec!["check", bad_reference.to_str().unwrap()], 4),
        (
            vec![
                "induce",
                "--xmod",
                "X",
                "--phi",
                "idC4",
                "--strategy",
                "general",
                "--coset-limit",
                "1",
                sample_s,
            ],
            3,
        ),
        (vec!["check", "/nonexistent-xmod2-input"], 4),
        (vec!["reflect", "--x2mod", "NOSUCH", sample_s], 4),
        (
            vec!["induce2", "--x2mod", "PEIF", "--theta", "tinv", sample_s],
            0,
        ),
        (
            vec![
                "universal2",
                "--kind",
                "induced",
                "--via",
                "u",
                "--theta",
                "tinv",
                sample_s,
            ],
            0,
        ),
    ];
    for (args, expect) in &matrix {
        let got = run(args);
        assert_eq!(got, *expect, "args {args:?}");
    }

    // A constructed module emitted by the binary re-validates on load.
    let out_path = dir.join("emitted.xm");
    let status = std::process::Command::new(bin)
        .args([
            "pullback2",
            "--x2mod",
            "PEIF",
            "--phi",
            "d",
            "--out",
            out_path.to_str().unwrap(),
            sample_s,
        ])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let emitted = std::fs::read_to_string(&out_path).unwrap();
    let reloaded = parse_str(&emitted).unwrap();
    assert_eq!(reloaded.x2mod("out").unwrap().module.m().order(), 8);
    assert_eq!(reloaded.serialize(), emitted);

    println!(
        "criterion 8 (byte-identical round trip + exit-code matrix of {} scenarios): PASS",
        matrix.len() + 1
    );
}
