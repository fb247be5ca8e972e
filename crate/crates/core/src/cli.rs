//! Command dispatch: validate, construct, and report on workspace objects.
//!
//! Every command takes a parsed [`Workspace`], produces a human-readable
//! report, and optionally a new workspace in the text format holding the
//! constructed objects (named with an `out` prefix). Exit codes are stable:
//! 0 success, 2 validation failure, 3 undecided at the coset limit, 4 parse
//! or reference error.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::format::Workspace;
use crate::group::FiniteGroup;
use crate::induced::{
    cokernel_x2, induced_x2_universal, induced_x2mod, induced_xmod, induced_xmod_universal,
    pushout_x2, InducedOptions, InducedStatus, Strategy, StrategyUsed,
};
use crate::pullback::{
    pullback_x2_universal, pullback_x2mod, pullback_xmod, pullback_xmod_universal, Uniqueness,
};
use crate::x2mod::TwoCrossedModule;
use crate::xmod::CrossedModule;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

/// Map an error to the documented process exit code.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::UnresolvedReference { .. }
        | Error::DuplicateName { .. }
        | Error::Io(_) => EXIT_PARSE,
        Error::NotDecided => EXIT_UNDECIDED,
        Error::InObject { source, .. } => exit_code_for(source),
        _ => EXIT_VALIDATION,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UniversalKind {
    Pullback,
    Induced,
}

#[derive(Clone, Debug)]
pub enum Command {
    /// Re-state the validation status of every object in the workspace.
    Check,
    /// Pull a crossed module back along a homomorphism.
    Pullback { nmod: String, phi: String },
    /// Pull a 2-crossed module back along a homomorphism.
    Pullback2 { x2mod: String, phi: String },
    /// Induce a crossed module along a homomorphism.
    Induce {
        mmod: String,
        phi: String,
        opts: InducedOptions,
    },
    /// Induce a 2-crossed module along a pre-crossed morphism.
    Induce2 {
        x2mod: String,
        theta: String,
        opts: InducedOptions,
    },
    /// Push out a span of 2-crossed morphisms (or a cokernel when `right`
    /// is omitted).
    Pushout2 {
        left: String,
        right: Option<String>,
        opts: InducedOptions,
    },
    /// Peiffer data of a pre-crossed module and its 2-crossed lift.
    Peiffer { pxmod: String },
    /// Collapse a 2-crossed module to a crossed module.
    Reflect { x2mod: String },
    /// Factor a crossed-module morphism through a pullback or an induced
    /// module.
    Universal {
        kind: UniversalKind,
        via: String,
        opts: InducedOptions,
    },
    /// Factor a 2-crossed morphism through a pullback or an induced module.
    Universal2 {
        kind: UniversalKind,
        via: String,
        theta: Option<String>,
        opts: InducedOptions,
    },
}

pub struct RunOutcome {
    pub report: String,
    /// Constructed objects in the canonical text format, when any.
    pub output: Option<String>,
    pub exit_code: i32,
}

fn ok(report: String, output: Option<String>) -> RunOutcome {
    RunOutcome {
        report,
        output,
        exit_code: EXIT_OK,
    }
}

struct Report {
    lines: Vec<String>,
    start: Instant,
}

impl Report {
    fn new(title: &str) -> Report {
        Report {
            lines: vec![title.to_string()],
            start: Instant::now(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn finish(mut self) -> String {
        self.lines
            .push(format!("elapsed: {} ms", self.start.elapsed().as_millis()));
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

fn group_line(name: &str, g: &FiniteGroup) -> String {
    format!("  {name}: order {}", g.order())
}

fn describe_legend(g: &FiniteGroup) -> String {
    g.elements()
        .map(|x| format!("{x}={}", g.label(x)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Register a crossed module under `out`-prefixed names.
fn emit_xmod(module: &CrossedModule) -> Result<String> {
    let mut ws = Workspace::new();
    ws.add_group(
        "out_m",
        module.m().table().to_vec(),
        module.m().labels().map(|l| l.to_vec()),
    )?;
    ws.add_group(
        "out_p",
        module.p().table().to_vec(),
        module.p().labels().map(|l| l.to_vec()),
    )?;
    ws.add_hom("out_d", "out_m", "out_p", module.boundary().map().to_vec())?;
    ws.add_action("out_act", "out_p", "out_m", module.act().rows().to_vec())?;
    ws.add_xmod("out", "out_m", "out_p", "out_act", "out_d")?;
    Ok(ws.serialize())
}

/// Register a 2-crossed module under `out`-prefixed names.
fn emit_x2mod(module: &TwoCrossedModule) -> Result<String> {
    let mut ws = Workspace::new();
    ws.add_group(
        "out_l",
        module.l().table().to_vec(),
        module.l().labels().map(|l| l.to_vec()),
    )?;
    ws.add_group(
        "out_m",
        module.m().table().to_vec(),
        module.m().labels().map(|l| l.to_vec()),
    )?;
    ws.add_group(
        "out_p",
        module.p().table().to_vec(),
        module.p().labels().map(|l| l.to_vec()),
    )?;
    ws.add_hom("out_d2", "out_l", "out_m", module.d2().map().to_vec())?;
    ws.add_hom("out_d1", "out_m", "out_p", module.d1().map().to_vec())?;
    ws.add_action("out_actl", "out_p", "out_l", module.act_l().rows().to_vec())?;
    ws.add_action("out_actm", "out_p", "out_m", module.act_m().rows().to_vec())?;
    ws.add_x2mod(
        "out",
        "out_l",
        "out_m",
        "out_p",
        "out_d2",
        "out_d1",
        "out_actl",
        "out_actm",
        module.lifting_table().to_vec(),
    )?;
    Ok(ws.serialize())
}

fn emit_presentation(p: &crate::fp::Presentation) -> Result<String> {
    let mut ws = Workspace::new();
    ws.add_presentation("out_presentation", p.clone())?;
    Ok(ws.serialize())
}

fn describe_status(r: &mut Report, strategy: StrategyUsed, status: &InducedStatus) {
    r.line(format!("strategy: {strategy:?}"));
    match status {
        InducedStatus::Decided => r.line("status: decided"),
        InducedStatus::UndecidedAtLimit { limit } => {
            r.line(format!("status: undecided at coset limit {limit}"))
        }
    }
}

fn describe_uniqueness(r: &mut Report, u: &Uniqueness) {
    match u {
        Uniqueness::Unique => r.line("uniqueness: confirmed by enumeration"),
        Uniqueness::NotChecked { bound } => r.line(format!(
            "uniqueness: not checked (source order above {bound})"
        )),
    }
}

pub fn run(ws: &Workspace, cmd: &Command) -> Result<RunOutcome> {
    match cmd {
        Command::Check => {
            let mut r = Report::new("check: every object was validated at load time");
            for (name, g) in &ws.groups {
                r.line(format!("  group {name}: order {}, axioms pass", g.order()));
            }
            for (name, e) in &ws.homs {
                r.line(format!(
                    "  hom {name}: {} -> {}, multiplicative on all pairs",
                    e.src, e.dst
                ));
            }
            for (name, e) in &ws.actions {
                r.line(format!(
                    "  action {name}: {} on {}, automorphism rows and composition pass",
                    e.actor, e.space
                ));
            }
            for name in ws.presentations.keys() {
                r.line(format!(
                    "  presentation {name}: symbols resolved, words reduced"
                ));
            }
            for (name, e) in &ws.pxmods {
                r.line(format!(
                    "  pxmod {name}: CM1 pass (|M|={}, |P|={})",
                    e.module.m().order(),
                    e.module.p().order()
                ));
            }
            for (name, e) in &ws.xmods {
                r.line(format!(
                    "  xmod {name}: CM1/CM2 pass (|M|={}, |P|={})",
                    e.module.m().order(),
                    e.module.p().order()
                ));
            }
            for (name, e) in &ws.x2mods {
                r.line(format!(
                    "  x2mod {name}: complex, equivariance, PL1-PL5 pass (|L|={}, |M|={}, |P|={})",
                    e.module.l().order(),
                    e.module.m().order(),
                    e.module.p().order()
                ));
            }
            for name in ws.xmorphisms.keys() {
                r.line(format!("  xmorphism {name}: square and equivariance pass"));
            }
            for name in ws.x2morphisms.keys() {
                r.line(format!("  x2morphism {name}: all five equations pass"));
            }
            Ok(ok(r.finish(), None))
        }

        Command::Pullback { nmod, phi } => {
            let nmod_entry = ws.xmod(nmod)?;
            let phi_entry = ws.hom(phi)?;
            let pb = pullback_xmod(&nmod_entry.module, &phi_entry.hom)?;
            let mut r = Report::new(&format!("pullback of xmod {nmod} along {phi}"));
            r.line(group_line("pulled-back M", pb.module.m()));
            r.line(group_line("base P", pb.module.p()));
            r.line(format!("  legend: {}", describe_legend(pb.module.m())));
            r.line("axioms: CM1/CM2 re-verified; projection morphism verified");
            Ok(ok(r.finish(), Some(emit_xmod(&pb.module)?)))
        }

        Command::Pullback2 { x2mod, phi } => {
            let entry = ws.x2mod(x2mod)?;
            let phi_entry = ws.hom(phi)?;
            let pb = pullback_x2mod(&entry.module, &phi_entry.hom)?;
            let mut r = Report::new(&format!("pullback of x2mod {x2mod} along {phi}"));
            r.line(group_line("top L", pb.module.l()));
            r.line(group_line("middle M", pb.module.m()));
            r.line(group_line("base P", pb.module.p()));
            r.line(format!(
                "  middle legend: {}",
                describe_legend(pb.module.m())
            ));
            r.line("axioms: complex, equivariance, PL1-PL5 re-verified; projection verified");
            Ok(ok(r.finish(), Some(emit_x2mod(&pb.module)?)))
        }

        Command::Induce { mmod, phi, opts } => {
            let entry = ws.xmod(mmod)?;
            let phi_entry = ws.hom(phi)?;
            let out = induced_xmod(&entry.module, &phi_entry.hom, *opts)?;
            let mut r = Report::new(&format!("induced xmod from {mmod} along {phi}"));
            r.line(format!(
                "presentation: {} generators, {} relators",
                out.presentation.gens().len(),
                out.presentation.relators().len()
            ));
            describe_status(&mut r, out.strategy_used, &out.status);
            match &out.module {
                Some(module) => {
                    r.line(group_line("induced M", module.m()));
                    r.line(group_line("base Q", module.p()));
                    r.line("axioms: CM1/CM2 re-verified");
                    Ok(ok(r.finish(), Some(emit_xmod(module)?)))
                }
                None => Ok(RunOutcome {
                    report: r.finish(),
                    output: Some(emit_presentation(&out.presentation)?),
                    exit_code: EXIT_UNDECIDED,
                }),
            }
        }

        Command::Induce2 { x2mod, theta, opts } => {
            let entry = ws.x2mod(x2mod)?;
            let theta_entry = ws.xmorphism(theta)?;
            let out = induced_x2mod(&theta_entry.morphism, &entry.module, *opts)?;
            let mut r = Report::new(&format!("induced x2mod from {x2mod} along {theta}"));
            r.line(format!(
                "presentation: {} generators, {} relators",
                out.presentation.gens().len(),
                out.presentation.relators().len()
            ));
            describe_status(&mut r, out.strategy_used, &out.status);
            match &out.module {
                Some(module) => {
                    r.line(group_line("induced L", module.l()));
                    r.line(group_line("middle N", module.m()));
                    r.line(group_line("base Q", module.p()));
                    r.line("axioms: complex, equivariance, PL1-PL5 re-verified");
                    Ok(ok(r.finish(), Some(emit_x2mod(module)?)))
                }
                None => Ok(RunOutcome {
                    report: r.finish(),
                    output: Some(emit_presentation(&out.presentation)?),
                    exit_code: EXIT_UNDECIDED,
                }),
            }
        }

        Command::Pushout2 { left, right, opts } => {
            let leg1 = &ws.x2morphism(left)?.morphism;
            let out = match right {
                Some(right) => pushout_x2(leg1, &ws.x2morphism(right)?.morphism, *opts)?,
                None => cokernel_x2(leg1, *opts)?,
            };
            let title = match right {
                Some(right) => format!("push-out of {left} and {right}"),
                None => format!("cokernel of {left}"),
            };
            let mut r = Report::new(&title);
            match &out.module {
                Some(module) => {
                    r.line(group_line("top L", module.l()));
                    r.line(group_line("middle M", module.m()));
                    r.line(group_line("base P", module.p()));
                    r.line("axioms: complex, equivariance, PL1-PL5 re-verified");
                    Ok(ok(r.finish(), Some(emit_x2mod(module)?)))
                }
                None => {
                    r.line("status: undecided at the coset limit");
                    Ok(RunOutcome {
                        report: r.finish(),
                        output: None,
                        exit_code: EXIT_UNDECIDED,
                    })
                }
            }
        }

        Command::Peiffer { pxmod } => {
            let pre = ws.precrossed(pxmod)?;
            let sub = pre.peiffer_subgroup();
            let x2 = TwoCrossedModule::from_precrossed_peiffer(&pre)?;
            let mut r = Report::new(&format!("Peiffer data of {pxmod}"));
            r.line(format!(
                "  Peiffer subgroup: order {} {:?} (normal in M)",
                sub.order(),
                sub.elements()
            ));
            r.line(group_line("2-crossed top L", x2.l()));
            r.line("axioms: the lifted module passes complex, equivariance, PL1-PL5");
            Ok(ok(r.finish(), Some(emit_x2mod(&x2)?)))
        }

        Command::Reflect { x2mod } => {
            let entry = ws.x2mod(x2mod)?;
            let module = entry.module.reflect_to_xmod()?;
            let mut r = Report::new(&format!("reflection of {x2mod} to a crossed module"));
            r.line(group_line("M / Im d2", module.m()));
            r.line(group_line("base P", module.p()));
            r.line("axioms: CM1/CM2 re-verified");
            Ok(ok(r.finish(), Some(emit_xmod(&module)?)))
        }

        Command::Universal { kind, via, opts } => {
            let via_entry = ws.xmorphism(via)?;
            let mmod = via_entry.morphism.src().clone().into_crossed()?;
            let phi = via_entry.morphism.eta().clone();
            match kind {
                UniversalKind::Pullback => {
                    let nmod = via_entry.morphism.dst().clone().into_crossed()?;
                    let pb = pullback_xmod(&nmod, &phi)?;
                    let (arrow, uniq) = pullback_xmod_universal(&mmod, &via_entry.morphism, &pb)?;
                    let mut r = Report::new(&format!(
                        "universal factorization of {via} through a pullback"
                    ));
                    r.line(format!("  factorization map: {:?}", arrow.map()));
                    describe_uniqueness(&mut r, &uniq);
                    Ok(ok(r.finish(), Some(emit_xmod(&pb.module)?)))
                }
                UniversalKind::Induced => {
                    let out = induced_xmod(&mmod, &phi, *opts)?;
                    if out.module.is_none() {
                        return Ok(RunOutcome {
                            report: "undecided at the coset limit\n".into(),
                            output: Some(emit_presentation(&out.presentation)?),
                            exit_code: EXIT_UNDECIDED,
                        });
                    }
                    let (arrow, uniq) =
                        induced_xmod_universal(&out, &mmod, &phi, &via_entry.morphism)?;
                    let mut r = Report::new(&format!(
                        "universal factorization of {via} out of the induced module"
                    ));
                    r.line(format!("  factorization map: {:?}", arrow.map()));
                    describe_uniqueness(&mut r, &uniq);
                    Ok(ok(r.finish(), Some(emit_xmod(out.module()?)?)))
                }
            }
        }

        Command::Universal2 {
            kind,
            via,
            theta,
            opts,
        } => {
            let via_entry = ws.x2morphism(via)?;
            match kind {
                UniversalKind::Pullback => {
                    let src = via_entry.morphism.src().clone();
                    let target = via_entry.morphism.dst().clone();
                    let phi = via_entry.morphism.f0().clone();
                    let pb = pullback_x2mod(&target, &phi)?;
                    let (factor, uniq) = pullback_x2_universal(&src, &via_entry.morphism, &pb)?;
                    let mut r = Report::new(&format!(
                        "universal factorization of {via} through a pullback"
                    ));
                    r.line(format!("  f2*: {:?}", factor.f2().map()));
                    r.line(format!("  f1*: {:?}", factor.f1().map()));
                    describe_uniqueness(&mut r, &uniq);
                    Ok(ok(r.finish(), Some(emit_x2mod(&pb.module)?)))
                }
                UniversalKind::Induced => {
                    let theta_name = theta.as_ref().ok_or_else(|| {
                        Error::Mismatch("universal2 induced needs --theta".into())
                    })?;
                    let theta_entry = ws.xmorphism(theta_name)?;
                    let x2 = via_entry.morphism.src().clone();
                    let out = induced_x2mod(&theta_entry.morphism, &x2, *opts)?;
                    if out.module.is_none() {
                        return Ok(RunOutcome {
                            report: "undecided at the coset limit\n".into(),
                            output: Some(emit_presentation(&out.presentation)?),
                            exit_code: EXIT_UNDECIDED,
                        });
                    }
                    let (arrow, uniq) = induced_x2_universal(
                        &out,
                        &theta_entry.morphism,
                        &x2,
                        &via_entry.morphism,
                    )?;
                    let mut r = Report::new(&format!(
                        "universal factorization of {via} out of the induced module"
                    ));
                    r.line(format!("  f*: {:?}", arrow.map()));
                    describe_uniqueness(&mut r, &uniq);
                    Ok(ok(r.finish(), Some(emit_x2mod(out.module()?)?)))
                }
            }
        }
    }
}

/// Parse a strategy name as used by the command line.
pub fn parse_strategy(s: &str) -> Result<Strategy> {
    match s {
        "auto" => Ok(Strategy::Auto),
        "epi" => Ok(Strategy::Epi),
        "mono" => Ok(Strategy::Mono),
        "general" => Ok(Strategy::GeneralTc),
        other => Err(Error::Mismatch(format!(
            "unknown strategy {other:?} (expected auto, epi, mono or general)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::format::parse_str;

    fn sample() -> Workspace {
        fixtures::sample_workspace().unwrap()
    }

    fn opts() -> InducedOptions {
        InducedOptions {
            coset_limit: 20_000,
            ..InducedOptions::default()
        }
    }

    #[test]
    fn check_reports_every_object() {
        let out = run(&sample(), &Command::Check).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
        assert!(out.report.contains("x2mod PEIF"));
        assert!(out.report.contains("PL1-PL5 pass"));
    }

    #[test]
    fn pullback_command_emits_reloadable_output() {
        let out = run(
            &sample(),
            &Command::Pullback {
                nmod: "X".into(),
                phi: "idC4".into(),
            },
        )
        .unwrap();
        let emitted = out.output.unwrap();
        let ws = parse_str(&emitted).unwrap();
        assert!(ws.xmods.contains_key("out"));
    }

    #[test]
    fn pullback2_command_runs() {
        let out = run(
            &sample(),
            &Command::Pullback2 {
                x2mod: "PEIF".into(),
                phi: "d".into(),
            },
        )
        .unwrap();
        assert!(out.report.contains("middle M: order 8"));
        let ws = parse_str(&out.output.unwrap()).unwrap();
        assert_eq!(ws.x2mod("out").unwrap().module.m().order(), 8);
    }

    #[test]
    fn induce_command_decided_and_undecided() {
        let decided = run(
            &sample(),
            &Command::Induce {
                mmod: "X".into(),
                phi: "idC4".into(),
                opts: opts(),
            },
        )
        .unwrap();
        assert_eq!(decided.exit_code, EXIT_OK);

        // A tiny limit leaves the construction undecided but still emits the
        // presentation.
        let undecided = run(
            &sample(),
            &Command::Induce {
                mmod: "X".into(),
                phi: "idC4".into(),
                opts: InducedOptions {
                    strategy: Strategy::GeneralTc,
                    coset_limit: 1,
                    ..opts()
                },
            },
        )
        .unwrap();
        assert_eq!(undecided.exit_code, EXIT_UNDECIDED);
        let emitted = undecided.output.unwrap();
        assert!(parse_str(&emitted)
            .unwrap()
            .presentations
            .contains_key("out_presentation"));
    }

    #[test]
    fn peiffer_and_reflect_commands() {
        let out = run(
            &sample(),
            &Command::Peiffer {
                pxmod: "INV".into(),
            },
        )
        .unwrap();
        assert!(out.report.contains("order 2"));
        let out = run(
            &sample(),
            &Command::Reflect {
                x2mod: "PEIF".into(),
            },
        )
        .unwrap();
        let ws = parse_str(&out.output.unwrap()).unwrap();
        assert_eq!(ws.xmod("out").unwrap().module.m().order(), 2);
    }

    #[test]
    fn universal_commands_run() {
        let out = run(
            &sample(),
            &Command::Universal {
                kind: UniversalKind::Pullback,
                via: "t".into(),
                opts: opts(),
            },
        )
        .unwrap();
        assert!(out.report.contains("uniqueness: confirmed"));

        let out = run(
            &sample(),
            &Command::Universal2 {
                kind: UniversalKind::Pullback,
                via: "u".into(),
                theta: None,
                opts: opts(),
            },
        )
        .unwrap();
        assert!(out.report.contains("uniqueness: confirmed"));
    }

    #[test]
    fn pushout_command_runs() {
        let out = run(
            &sample(),
            &Command::Pushout2 {
                left: "u".into(),
                right: Some("u".into()),
                opts: opts(),
            },
        )
        .unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
        assert!(out.output.is_some());
    }

    #[test]
    fn exit_codes_for_errors() {
        assert_eq!(
            exit_code_for(&Error::Parse {
                line: 1,
                col: 1,
                msg: "x".into()
            }),
            EXIT_PARSE
        );
        assert_eq!(
            exit_code_for(&Error::UnresolvedReference { name: "x".into() }),
            EXIT_PARSE
        );
        assert_eq!(exit_code_for(&Error::NotDecided), EXIT_UNDECIDED);
        assert_eq!(
            exit_code_for(&Error::Cm2Violation { m: 0, n: 0 }),
            EXIT_VALIDATION
        );
        assert_eq!(
            exit_code_for(&Error::Cm1Violation { p: 0, m: 0 }.in_object("X")),
            EXIT_VALIDATION
        );
    }
}
