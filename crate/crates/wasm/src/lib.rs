//! Browser bindings for the crossed-module calculator: parse a workspace,
//! check its axioms, and run pullback or induced constructions, returning
//! JSON the demo page renders as colored multiplication tables.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use xmod2::cli::exit_code_for;
use xmod2::fixtures;
use xmod2::format::{parse_str, Workspace};
use xmod2::group::FiniteGroup;
use xmod2::induced::{induced_x2mod, induced_xmod, InducedOptions, InducedStatus};
use xmod2::pullback::{pullback_x2mod, pullback_xmod};
use xmod2::Error;

fn err_json(e: &Error) -> String {
    json!({
        "ok": false,
        "error": e.to_string(),
        "code": exit_code_for(e),
    })
    .to_string()
}

fn group_json(name: &str, g: &FiniteGroup) -> Value {
    json!({
        "name": name,
        "order": g.order(),
        "table": g.table(),
        "labels": g.elements().map(|x| g.label(x)).collect::<Vec<_>>(),
    })
}

/// Names of the built-in sample workspaces.
#[wasm_bindgen]
pub fn sample_names() -> String {
    json!(["peiffer-tower", "s3-inclusion"]).to_string()
}

/// A built-in sample workspace in the text format.
#[wasm_bindgen]
pub fn sample(name: &str) -> String {
    match name {
        "peiffer-tower" => fixtures::sample_workspace()
            .map(|ws| ws.serialize())
            .unwrap_or_default(),
        "s3-inclusion" => s3_workspace().map(|ws| ws.serialize()).unwrap_or_default(),
        _ => String::new(),
    }
}

fn s3_workspace() -> xmod2::Result<Workspace> {
    let mut ws = Workspace::new();
    let xm = fixtures::crossed_fixture("inc_s3_a3");
    ws.add_group(
        "A3",
        xm.m().table().to_vec(),
        xm.m().labels().map(|l| l.to_vec()),
    )?;
    ws.add_group(
        "S3",
        xm.p().table().to_vec(),
        xm.p().labels().map(|l| l.to_vec()),
    )?;
    ws.add_hom("inc", "A3", "S3", xm.boundary().map().to_vec())?;
    ws.add_action("conj", "S3", "A3", xm.act().rows().to_vec())?;
    ws.add_xmod("X", "A3", "S3", "conj", "inc")?;
    ws.add_hom("idS3", "S3", "S3", (0..6).collect())?;
    Ok(ws)
}

/// Parse and validate a workspace; report each object.
#[wasm_bindgen]
pub fn check(src: &str) -> String {
    let ws = match parse_str(src) {
        Ok(ws) => ws,
        Err(e) => return err_json(&e),
    };
    let mut objects = Vec::new();
    for (name, g) in &ws.groups {
        objects.push(json!({
            "kind": "group", "name": name, "summary": format!("order {}", g.order()),
            "group": group_json(name, g),
        }));
    }
    for (name, e) in &ws.homs {
        objects.push(json!({
            "kind": "hom", "name": name,
            "summary": format!("{} -> {}, multiplicative", e.src, e.dst),
        }));
    }
    for (name, e) in &ws.actions {
        objects.push(json!({
            "kind": "action", "name": name,
            "summary": format!("{} on {}, automorphism rows", e.actor, e.space),
        }));
    }
    for name in ws.presentations.keys() {
        objects.push(json!({"kind": "presentation", "name": name, "summary": "words reduced"}));
    }
    for (name, e) in &ws.pxmods {
        objects.push(json!({
            "kind": "pxmod", "name": name,
            "summary": format!("CM1 pass, |M|={}, |P|={}", e.module.m().order(), e.module.p().order()),
        }));
    }
    for (name, e) in &ws.xmods {
        objects.push(json!({
            "kind": "xmod", "name": name,
            "summary": format!("CM1/CM2 pass, |M|={}, |P|={}", e.module.m().order(), e.module.p().order()),
        }));
    }
    for (name, e) in &ws.x2mods {
        objects.push(json!({
            "kind": "x2mod", "name": name,
            "summary": format!(
                "complex, equivariance, PL1-PL5 pass, |L|={}, |M|={}, |P|={}",
                e.module.l().order(), e.module.m().order(), e.module.p().order()),
        }));
    }
    for name in ws.xmorphisms.keys() {
        objects.push(
            json!({"kind": "xmorphism", "name": name, "summary": "square + equivariance pass"}),
        );
    }
    for name in ws.x2morphisms.keys() {
        objects.push(
            json!({"kind": "x2morphism", "name": name, "summary": "all five equations pass"}),
        );
    }
    json!({"ok": true, "objects": objects}).to_string()
}

/// Pull a module (dimension 1 or 2) back along a homomorphism.
#[wasm_bindgen]
pub fn pullback(src: &str, dim: u32, module: &str, phi: &str) -> String {
    let inner = || -> xmod2::Result<Value> {
        let ws = parse_str(src)?;
        let phi_hom = ws.hom(phi)?.hom.clone();
        if dim == 1 {
            let entry = ws.xmod(module)?;
            let pb = pullback_xmod(&entry.module, &phi_hom)?;
            Ok(json!({
                "ok": true,
                "kind": "xmod",
                "groups": [
                    group_json("pulled-back M", pb.module.m()),
                    group_json("base P", pb.module.p()),
                ],
                "axioms": "CM1/CM2 re-verified; projection verified",
                "text": xmod2::cli::run(&ws, &xmod2::cli::Command::Pullback {
                    nmod: module.into(), phi: phi.into(),
                })?.output,
            }))
        } else {
            let entry = ws.x2mod(module)?;
            let pb = pullback_x2mod(&entry.module, &phi_hom)?;
            Ok(json!({
                "ok": true,
                "kind": "x2mod",
                "groups": [
                    group_json("top L", pb.module.l()),
                    group_json("middle M", pb.module.m()),
                    group_json("base P", pb.module.p()),
                ],
                "axioms": "complex, equivariance, PL1-PL5 re-verified; projection verified",
                "text": xmod2::cli::run(&ws, &xmod2::cli::Command::Pullback2 {
                    x2mod: module.into(), phi: phi.into(),
                })?.output,
            }))
        }
    };
    match inner() {
        Ok(v) => v.to_string(),
        Err(e) => err_json(&e),
    }
}

/// Induce a module (dimension 1 along a hom, dimension 2 along an
/// xmorphism) with a strategy and coset limit.
#[wasm_bindgen]
pub fn induce(
    src: &str,
    dim: u32,
    module: &str,
    along: &str,
    strategy: &str,
    coset_limit: u32,
) -> String {
    let inner = || -> xmod2::Result<Value> {
        let ws = parse_str(src)?;
        let opts = InducedOptions {
            strategy: xmod2::cli::parse_strategy(strategy)?,
            coset_limit: coset_limit.max(1) as usize,
            ..InducedOptions::default()
        };
        if dim == 1 {
            let entry = ws.xmod(module)?;
            let phi_hom = ws.hom(along)?.hom.clone();
            let out = induced_xmod(&entry.module, &phi_hom, opts)?;
            let mut v = json!({
                "ok": true,
                "kind": "xmod",
                "strategy": format!("{:?}", out.strategy_used),
                "generators": out.presentation.gens().len(),
                "relators": out.presentation.relators().len(),
                "decided": matches!(out.status, InducedStatus::Decided),
            });
            if let Some(module) = &out.module {
                v["groups"] = json!([
                    group_json("induced M", module.m()),
                    group_json("base Q", module.p()),
                ]);
            }
            Ok(v)
        } else {
            let entry = ws.x2mod(module)?;
            let theta = ws.xmorphism(along)?.morphism.clone();
            let out = induced_x2mod(&theta, &entry.module, opts)?;
            let mut v = json!({
                "ok": true,
                "kind": "x2mod",
                "strategy": format!("{:?}", out.strategy_used),
                "generators": out.presentation.gens().len(),
                "relators": out.presentation.relators().len(),
                "decided": matches!(out.status, InducedStatus::Decided),
            });
            if let Some(module) = &out.module {
                v["groups"] = json!([
                    group_json("induced L", module.l()),
                    group_json("middle N", module.m()),
                    group_json("base Q", module.p()),
                ]);
            }
            Ok(v)
        }
    };
    match inner() {
        Ok(v) => v.to_string(),
        Err(e) => err_json(&e),
    }
}
