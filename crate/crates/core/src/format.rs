//! The declarative text format: named blocks defining groups, homs,
//! actions, presentations, modules and morphisms, and the workspace that
//! resolves and validates them.
//!
//! Serialization is canonical: blocks are ordered by kind then name, with a
//! fixed layout, so `parse(serialize(ws))` reproduces the bytes exactly.
//! Every object goes through its full validator at load time; a bad block
//! fails with the underlying axiom witness wrapped in the object name.
//!
//! ```text
//! # a comment
//! group C2 {
//!   table = [[0,1],[1,0]]
//!   labels = ["1","a"]
//! }
//!
//! hom f: C4 -> C2 {
//!   map = [0,1,0,1]
//! }
//!
//! action inv: C2 on C4 {
//!   table = [[0,1,2,3],[0,3,2,1]]
//! }
//!
//! pxmod X {
//!   m = C4
//!   p = C2
//!   act = inv
//!   d = f
//! }
//! ```
//!
//! 2-crossed blocks (`x2mod`) take `l m p d2 d1 actl actm` references and an
//! inline `lifting` matrix, or `liftingfile = "path"` relative to the file.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp::{parse_word_over, render_word_over, Presentation, Word};
use crate::group::{ActionTable, Elt, FiniteGroup, GroupHom};
use crate::x2mod::{TwoCrossedModule, X2Morphism};
use crate::xmod::{CrossedModule, PreCrossedModule, XModMorphism};

pub struct HomEntry {
    pub src: String,
    pub dst: String,
    pub hom: GroupHom,
}

pub struct ActionEntry {
    pub actor: String,
    pub space: String,
    pub action: ActionTable,
}

pub struct PxModEntry {
    pub m: String,
    pub p: String,
    pub act: String,
    pub d: String,
    pub module: PreCrossedModule,
}

pub struct XModEntry {
    pub m: String,
    pub p: String,
    pub act: String,
    pub d: String,
    pub module: CrossedModule,
}

pub struct X2ModEntry {
    pub l: String,
    pub m: String,
    pub p: String,
    pub d2: String,
    pub d1: String,
    pub actl: String,
    pub actm: String,
    pub module: TwoCrossedModule,
}

pub struct XMorphEntry {
    pub src: String,
    pub dst: String,
    pub mu: String,
    pub eta: String,
    pub morphism: XModMorphism,
}

pub struct X2MorphEntry {
    pub src: String,
    pub dst: String,
    pub f2: String,
    pub f1: String,
    pub f0: String,
    pub morphism: X2Morphism,
}

/// All named objects parsed from one or more input files.
#[derive(Default)]
pub struct Workspace {
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub homs: BTreeMap<String, HomEntry>,
    pub actions: BTreeMap<String, ActionEntry>,
    pub presentations: BTreeMap<String, Presentation>,
    pub pxmods: BTreeMap<String, PxModEntry>,
    pub xmods: BTreeMap<String, XModEntry>,
    pub x2mods: BTreeMap<String, X2ModEntry>,
    pub xmorphisms: BTreeMap<String, XMorphEntry>,
    pub x2morphisms: BTreeMap<String, X2MorphEntry>,
}

impl Workspace {
    pub fn new() -> Workspace {
        Workspace::default()
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        let taken = self.groups.contains_key(name)
            || self.homs.contains_key(name)
            || self.actions.contains_key(name)
            || self.presentations.contains_key(name)
            || self.pxmods.contains_key(name)
            || self.xmods.contains_key(name)
            || self.x2mods.contains_key(name)
            || self.xmorphisms.contains_key(name)
            || self.x2morphisms.contains_key(name);
        if taken {
            Err(Error::DuplicateName { name: name.into() })
        } else {
            Ok(())
        }
    }

    pub fn group(&self, name: &str) -> Result<&Arc<FiniteGroup>> {
        self.groups
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference {
                name: name.to_string(),
            })
    }

    pub fn hom(&self, name: &str) -> Result<&HomEntry> {
        self.homs
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference {
                name: name.to_string(),
            })
    }

    pub fn action(&self, name: &str) -> Result<&ActionEntry> {
        self.actions
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference {
                name: name.to_string(),
            })
    }

    pub fn presentation(&self, name: &str) -> Result<&Presentation> {
        self.presentations
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference {
                name: name.to_string(),
            })
    }

    /// A pre-crossed module by name; `xmod` blocks also qualify.
    pub fn precrossed(&self, name: &str) -> Result<PreCrossedModule> {
        if let Some(e) = self.pxmods.get(name) {
            return Ok(e.module.clone());
        }
        if let Some(e) = self.xmods.get(name) {
            return Ok(e.module.pre().clone());
        }
        Err(Error::UnresolvedReference {
            name: name.to_string(),
        })
    }

    pub fn xmod(&self, name: &str) -> Result<&XModEntry> {
        self.xmods
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference {
                name: name.to_string(),
            })
    }

    pub fn x2mod(&self, name: &str) -> Result<&X2ModEntry> {
        self.x2mods
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference {
                name: name.to_string(),
            })
    }

    pub fn xmorphism(&self, name: &str) -> Result<&XMorphEntry> {
        self.xmorphisms
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference {
                name: name.to_string(),
            })
    }

    pub fn x2morphism(&self, name: &str) -> Result<&X2MorphEntry> {
        self.x2morphisms
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference {
                name: name.to_string(),
            })
    }

    pub fn add_group(
        &mut self,
        name: &str,
        table: Vec<Vec<Elt>>,
        labels: Option<Vec<String>>,
    ) -> Result<()> {
        self.check_fresh(name)?;
        let g = FiniteGroup::from_table(table, labels).map_err(|e| e.in_object(name))?;
        self.groups.insert(name.to_string(), Arc::new(g));
        Ok(())
    }

    pub fn add_hom(&mut self, name: &str, src: &str, dst: &str, map: Vec<Elt>) -> Result<()> {
        self.check_fresh(name)?;
        let hom = GroupHom::new(
            Arc::clone(self.group(src)?),
            Arc::clone(self.group(dst)?),
            map,
        )
        .map_err(|e| e.in_object(name))?;
        self.homs.insert(
            name.to_string(),
            HomEntry {
                src: src.to_string(),
                dst: dst.to_string(),
                hom,
            },
        );
        Ok(())
    }

    pub fn add_action(
        &mut self,
        name: &str,
        actor: &str,
        space: &str,
        rows: Vec<Vec<Elt>>,
    ) -> Result<()> {
        self.check_fresh(name)?;
        let action = ActionTable::new(
            Arc::clone(self.group(actor)?),
            Arc::clone(self.group(space)?),
            rows,
        )
        .map_err(|e| e.in_object(name))?;
        self.actions.insert(
            name.to_string(),
            ActionEntry {
                actor: actor.to_string(),
                space: space.to_string(),
                action,
            },
        );
        Ok(())
    }

    pub fn add_presentation(&mut self, name: &str, p: Presentation) -> Result<()> {
        self.check_fresh(name)?;
        self.presentations.insert(name.to_string(), p);
        Ok(())
    }

    pub fn add_pxmod(&mut self, name: &str, m: &str, p: &str, act: &str, d: &str) -> Result<()> {
        self.check_fresh(name)?;
        let module = PreCrossedModule::new(
            Arc::clone(self.group(m)?),
            Arc::clone(self.group(p)?),
            self.action(act)?.action.clone(),
            self.hom(d)?.hom.clone(),
        )
        .map_err(|e| e.in_object(name))?;
        self.pxmods.insert(
            name.to_string(),
            PxModEntry {
                m: m.to_string(),
                p: p.to_string(),
                act: act.to_string(),
                d: d.to_string(),
                module,
            },
        );
        Ok(())
    }

    pub fn add_xmod(&mut self, name: &str, m: &str, p: &str, act: &str, d: &str) -> Result<()> {
        self.check_fresh(name)?;
        let module = CrossedModule::new(
            Arc::clone(self.group(m)?),
            Arc::clone(self.group(p)?),
            self.action(act)?.action.clone(),
            self.hom(d)?.hom.clone(),
        )
        .map_err(|e| e.in_object(name))?;
        self.xmods.insert(
            name.to_string(),
            XModEntry {
                m: m.to_string(),
                p: p.to_string(),
                act: act.to_string(),
                d: d.to_string(),
                module,
            },
        );
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    pub fn add_x2mod(
        &mut self,
        name: &str,
        l: &str,
        m: &str,
        p: &str,
        d2: &str,
        d1: &str,
        actl: &str,
        actm: &str,
        lifting: Vec<Vec<Elt>>,
    ) -> Result<()> {
        self.check_fresh(name)?;
        let module = TwoCrossedModule::new(
            Arc::clone(self.group(l)?),
            Arc::clone(self.group(m)?),
            Arc::clone(self.group(p)?),
            self.hom(d2)?.hom.clone(),
            self.hom(d1)?.hom.clone(),
            self.action(actl)?.action.clone(),
            self.action(actm)?.action.clone(),
            lifting,
        )
        .map_err(|e| e.in_object(name))?;
        self.x2mods.insert(
            name.to_string(),
            X2ModEntry {
                l: l.to_string(),
                m: m.to_string(),
                p: p.to_string(),
                d2: d2.to_string(),
                d1: d1.to_string(),
                actl: actl.to_string(),
                actm: actm.to_string(),
                module,
            },
        );
        Ok(())
    }

    pub fn add_xmorphism(
        &mut self,
        name: &str,
        src: &str,
        dst: &str,
        mu: &str,
        eta: &str,
    ) -> Result<()> {
        self.check_fresh(name)?;
        let morphism = XModMorphism::new(
            self.precrossed(src)?,
            self.precrossed(dst)?,
            self.hom(mu)?.hom.clone(),
            self.hom(eta)?.hom.clone(),
        )
        .map_err(|e| e.in_object(name))?;
        self.xmorphisms.insert(
            name.to_string(),
            XMorphEntry {
                src: src.to_string(),
                dst: dst.to_string(),
                mu: mu.to_string(),
                eta: eta.to_string(),
                morphism,
            },
        );
        Ok(())
    }

    pub fn add_x2morphism(
        &mut self,
        name: &str,
        src: &str,
        dst: &str,
        f2: &str,
        f1: &str,
        f0: &str,
    ) -> Result<()> {
        self.check_fresh(name)?;
        let morphism = X2Morphism::new(
            self.x2mod(src)?.module.clone(),
            self.x2mod(dst)?.module.clone(),
            self.hom(f2)?.hom.clone(),
            self.hom(f1)?.hom.clone(),
            self.hom(f0)?.hom.clone(),
        )
        .map_err(|e| e.in_object(name))?;
        self.x2morphisms.insert(
            name.to_string(),
            X2MorphEntry {
                src: src.to_string(),
                dst: dst.to_string(),
                f2: f2.to_string(),
                f1: f1.to_string(),
                f0: f0.to_string(),
                morphism,
            },
        );
        Ok(())
    }

    /// Canonical serialization: kinds in a fixed order, names ascending,
    /// blocks separated by a blank line.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut block = |s: String| {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&s);
        };
        for (name, g) in &self.groups {
            let mut s = format!("group {name} {{\n  table = {}\n", fmt_matrix(g.table()));
            if let Some(labels) = g.labels() {
                s.push_str(&format!("  labels = {}\n", fmt_strings(labels)));
            }
            s.push_str("}\n");
            block(s);
        }
        for (name, e) in &self.homs {
            block(format!(
                "hom {name}: {} -> {} {{\n  map = {}\n}}\n",
                e.src,
                e.dst,
                fmt_list(e.hom.map())
            ));
        }
        for (name, e) in &self.actions {
            block(format!(
                "action {name}: {} on {} {{\n  table = {}\n}}\n",
                e.actor,
                e.space,
                fmt_matrix(e.action.rows())
            ));
        }
        for (name, p) in &self.presentations {
            let mut s = format!(
                "presentation {name} {{\n  gens = {}\n",
                fmt_strings(p.gens())
            );
            let relators: Vec<String> = p
                .relators()
                .iter()
                .map(|w| render_word_over(p.gens(), w))
                .collect();
            s.push_str(&format!("  relators = {}\n", fmt_strings(&relators)));
            if p.legend() != p.gens() {
                s.push_str(&format!("  legend = {}\n", fmt_strings(p.legend())));
            }
            s.push_str("}\n");
            block(s);
        }
        for (name, e) in &self.pxmods {
            block(format!(
                "pxmod {name} {{\n  m = {}\n  p = {}\n  act = {}\n  d = {}\n}}\n",
                e.m, e.p, e.act, e.d
            ));
        }
        for (name, e) in &self.xmods {
            block(format!(
                "xmod {name} {{\n  m = {}\n  p = {}\n  act = {}\n  d = {}\n}}\n",
                e.m, e.p, e.act, e.d
            ));
        }
        for (name, e) in &self.x2mods {
            block(format!(
                "x2mod {name} {{\n  l = {}\n  m = {}\n  p = {}\n  d2 = {}\n  d1 = {}\n  actl = {}\n  actm = {}\n  lifting = {}\n}}\n",
                e.l,
                e.m,
                e.p,
                e.d2,
                e.d1,
                e.actl,
                e.actm,
                fmt_matrix(e.module.lifting_table())
            ));
        }
        for (name, e) in &self.xmorphisms {
            block(format!(
                "xmorphism {name}: {} -> {} {{\n  mu = {}\n  eta = {}\n}}\n",
                e.src, e.dst, e.mu, e.eta
            ));
        }
        for (name, e) in &self.x2morphisms {
            block(format!(
                "x2morphism {name}: {} -> {} {{\n  f2 = {}\n  f1 = {}\n  f0 = {}\n}}\n",
                e.src, e.dst, e.f2, e.f1, e.f0
            ));
        }
        out
    }
}

fn fmt_list(xs: &[Elt]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(","))
}

fn fmt_matrix(rows: &[Vec<Elt>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| fmt_list(r)).collect();
    format!("[{}]", inner.join(","))
}

fn fmt_strings(xs: &[String]) -> String {
    let inner: Vec<String> = xs
        .iter()
        .map(|x| format!("\"{}\"", x.replace('\\', "\\\\").replace('"', "\\\"")))
        .collect();
    format!("[{}]", inner.join(","))
}

// ---------------------------------------------------------------------------
// Lexing and parsing
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Str(String),
    Int(usize),
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    Comma,
    Colon,
    Arrow,
    Eq,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn tokens(mut self) -> Result<Vec<Spanned>> {
        let mut out = Vec::new();
        loop {
            while let Some(c) = self.peek() {
                if c == b'#' {
                    while let Some(c) = self.bump() {
                        if c == b'\n' {
                            break;
                        }
                    }
                } else if c.is_ascii_whitespace() {
                    self.bump();
                } else {
                    break;
                }
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else { break };
            let tok = match c {
                b'{' => {
                    self.bump();
                    Tok::LBrace
                }
                b'}' => {
                    self.bump();
                    Tok::RBrace
                }
                b'[' => {
                    self.bump();
                    Tok::LBrack
                }
                b']' => {
                    self.bump();
                    Tok::RBrack
                }
                b',' => {
                    self.bump();
                    Tok::Comma
                }
                b':' => {
                    self.bump();
                    Tok::Colon
                }
                b'=' => {
                    self.bump();
                    Tok::Eq
                }
                b'-' => {
                    self.bump();
                    if self.peek() == Some(b'>') {
                        self.bump();
                        Tok::Arrow
                    } else {
                        return Err(self.err("expected '->'"));
                    }
                }
                b'"' => {
                    self.bump();
                    let mut s = String::new();
                    loop {
                        match self.bump() {
                            None => return Err(self.err("unterminated string")),
                            Some(b'"') => break,
                            Some(b'\\') => match self.bump() {
                                Some(b'"') => s.push('"'),
                                Some(b'\\') => s.push('\\'),
                                _ => return Err(self.err("bad escape")),
                            },
                            Some(c) => s.push(c as char),
                        }
                    }
                    Tok::Str(s)
                }
                c if c.is_ascii_digit() => {
                    let mut n = 0usize;
                    while let Some(c) = self.peek() {
                        if c.is_ascii_digit() {
                            n = n
                                .checked_mul(10)
                                .and_then(|n| n.checked_add((c - b'0') as usize))
                                .ok_or_else(|| self.err("integer overflow"))?;
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Int(n)
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut s = String::new();
                    while let Some(c) = self.peek() {
                        if c.is_ascii_alphanumeric() || c == b'_' {
                            s.push(c as char);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(s)
                }
                c => return Err(self.err(format!("unexpected character {:?}", c as char))),
            };
            out.push(Spanned { tok, line, col });
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    base_dir: Option<&'a Path>,
}

#[derive(Debug, Clone)]
enum Value {
    Name(String),
    Str(String),
    List(Vec<usize>),
    Matrix(Vec<Vec<usize>>),
    Strings(Vec<String>),
}

impl<'a> Parser<'a> {
    fn err_at(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self
            .toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|s| (s.line, s.col))
            .unwrap_or((0, 0));
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self
            .toks
            .get(self.pos)
            .map(|s| s.tok.clone())
            .ok_or_else(|| self.err_at("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        let got = self.next()?;
        if got != t {
            self.pos -= 1;
            return Err(self.err_at(format!("expected {t:?}, found {got:?}")));
        }
        Ok(())
    }

    fn ident(&mut self) -> Result<String> {
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            got => {
                self.pos -= 1;
                Err(self.err_at(format!("expected a name, found {got:?}")))
            }
        }
    }

    fn value(&mut self) -> Result<Value> {
        match self.next()? {
            Tok::Ident(s) => Ok(Value::Name(s)),
            Tok::Str(s) => Ok(Value::Str(s)),
            Tok::LBrack => match self.peek() {
                Some(Tok::RBrack) => {
                    self.next()?;
                    Ok(Value::List(Vec::new()))
                }
                Some(Tok::Str(_)) => {
                    let mut out = Vec::new();
                    loop {
                        match self.next()? {
                            Tok::Str(s) => out.push(s),
                            got => {
                                self.pos -= 1;
                                return Err(
                                    self.err_at(format!("expected a string, found {got:?}"))
                                );
                            }
                        }
                        match self.next()? {
                            Tok::Comma => continue,
                            Tok::RBrack => break,
                            got => {
                                self.pos -= 1;
                                return Err(
                                    self.err_at(format!("expected ',' or ']', found {got:?}"))
                                );
                            }
                        }
                    }
                    Ok(Value::Strings(out))
                }
                Some(Tok::LBrack) => {
                    let mut rows = Vec::new();
                    loop {
                        self.expect(Tok::LBrack)?;
                        let mut row = Vec::new();
                        if self.peek() == Some(&Tok::RBrack) {
                            self.next()?;
                        } else {
                            loop {
                                match self.next()? {
                                    Tok::Int(n) => row.push(n),
                                    got => {
                                        self.pos -= 1;
                                        return Err(self.err_at(format!(
                                            "expected an integer, found {got:?}"
                                        )));
                                    }
                                }
                                match self.next()? {
                                    Tok::Comma => continue,
                                    Tok::RBrack => break,
                                    got => {
                                        self.pos -= 1;
                                        return Err(self.err_at(format!(
                                            "expected ',' or ']', found {got:?}"
                                        )));
                                    }
                                }
                            }
                        }
                        rows.push(row);
                        match self.next()? {
                            Tok::Comma => continue,
                            Tok::RBrack => break,
                            got => {
                                self.pos -= 1;
                                return Err(
                                    self.err_at(format!("expected ',' or ']', found {got:?}"))
                                );
                            }
                        }
                    }
                    Ok(Value::Matrix(rows))
                }
                _ => {
                    let mut out = Vec::new();
                    loop {
                        match self.next()? {
                            Tok::Int(n) => out.push(n),
                            got => {
                                self.pos -= 1;
                                return Err(
                                    self.err_at(format!("expected an integer, found {got:?}"))
                                );
                            }
                        }
                        match self.next()? {
                            Tok::Comma => continue,
                            Tok::RBrack => break,
                            got => {
                                self.pos -= 1;
                                return Err(
                                    self.err_at(format!("expected ',' or ']', found {got:?}"))
                                );
                            }
                        }
                    }
                    Ok(Value::List(out))
                }
            },
            got => {
                self.pos -= 1;
                Err(self.err_at(format!("expected a value, found {got:?}")))
            }
        }
    }

    fn fields(&mut self) -> Result<Vec<(String, Value)>> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        loop {
            if self.peek() == Some(&Tok::RBrace) {
                self.next()?;
                return Ok(out);
            }
            let key = self.ident()?;
            self.expect(Tok::Eq)?;
            out.push((key, self.value()?));
        }
    }
}

fn take<'v>(fields: &'v [(String, Value)], key: &str) -> Option<&'v Value> {
    fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
}

fn need_name(fields: &[(String, Value)], key: &str, block: &str) -> Result<String> {
    match take(fields, key) {
        Some(Value::Name(s)) => Ok(s.clone()),
        _ => Err(Error::Parse {
            line: 0,
            col: 0,
            msg: format!("{block} block needs '{key} = <name>'"),
        }),
    }
}

fn need_matrix(fields: &[(String, Value)], key: &str, block: &str) -> Result<Vec<Vec<usize>>> {
    match take(fields, key) {
        Some(Value::Matrix(m)) => Ok(m.clone()),
        Some(Value::List(l)) if l.is_empty() => Ok(Vec::new()),
        _ => Err(Error::Parse {
            line: 0,
            col: 0,
            msg: format!("{block} block needs '{key} = [[...]]'"),
        }),
    }
}

/// Parse workspace text. `base_dir`, when given, resolves `liftingfile`
/// references.
pub fn parse_source(src: &str, base_dir: Option<&Path>) -> Result<Workspace> {
    let toks = Lexer::new(src).tokens()?;
    let mut p = Parser {
        toks,
        pos: 0,
        base_dir,
    };
    let mut ws = Workspace::new();
    while p.peek().is_some() {
        let kind = p.ident()?;
        let name = p.ident()?;
        match kind.as_str() {
            "group" => {
                let fields = p.fields()?;
                let table = need_matrix(&fields, "table", "group")?;
                let labels = match take(&fields, "labels") {
                    Some(Value::Strings(ls)) => Some(ls.clone()),
                    None => None,
                    _ => {
                        return Err(Error::Parse {
                            line: 0,
                            col: 0,
                            msg: "labels must be a list of strings".into(),
                        })
                    }
                };
                ws.add_group(&name, table, labels)?;
            }
            "hom" => {
                p.expect(Tok::Colon)?;
                let src_name = p.ident()?;
                p.expect(Tok::Arrow)?;
                let dst_name = p.ident()?;
                let fields = p.fields()?;
                let map = match take(&fields, "map") {
                    Some(Value::List(l)) => l.clone(),
                    _ => {
                        return Err(Error::Parse {
                            line: 0,
                            col: 0,
                            msg: "hom block needs 'map = [...]'".into(),
                        })
                    }
                };
                ws.add_hom(&name, &src_name, &dst_name, map)?;
            }
            "action" => {
                p.expect(Tok::Colon)?;
                let actor = p.ident()?;
                let on = p.ident()?;
                if on != "on" {
                    return Err(p.err_at("expected 'on' in action header"));
                }
                let space = p.ident()?;
                let fields = p.fields()?;
                let rows = need_matrix(&fields, "table", "action")?;
                ws.add_action(&name, &actor, &space, rows)?;
            }
            "presentation" => {
                let fields = p.fields()?;
                let gens = match take(&fields, "gens") {
                    Some(Value::Strings(g)) => g.clone(),
                    Some(Value::List(l)) if l.is_empty() => Vec::new(),
                    _ => {
                        return Err(Error::Parse {
                            line: 0,
                            col: 0,
                            msg: "presentation block needs 'gens = [\"...\"]'".into(),
                        })
                    }
                };
                let relator_texts = match take(&fields, "relators") {
                    Some(Value::Strings(r)) => r.clone(),
                    Some(Value::List(l)) if l.is_empty() => Vec::new(),
                    None => Vec::new(),
                    _ => {
                        return Err(Error::Parse {
                            line: 0,
                            col: 0,
                            msg: "relators must be a list of strings".into(),
                        })
                    }
                };
                let relators: Vec<Word> = relator_texts
                    .iter()
                    .map(|s| parse_word_over(&gens, s))
                    .collect::<Result<_>>()
                    .map_err(|e| e.in_object(&name))?;
                let mut pres = Presentation::new(gens, relators).map_err(|e| e.in_object(&name))?;
                if let Some(Value::Strings(legend)) = take(&fields, "legend") {
                    if legend.len() != pres.gens().len() {
                        return Err(Error::Parse {
                            line: 0,
                            col: 0,
                            msg: "legend length must match gens".into(),
                        });
                    }
                    pres = pres.with_legend(legend.clone());
                }
                ws.add_presentation(&name, pres)?;
            }
            "pxmod" | "xmod" => {
                let fields = p.fields()?;
                let m = need_name(&fields, "m", &kind)?;
                let pp = need_name(&fields, "p", &kind)?;
                let act = need_name(&fields, "act", &kind)?;
                let d = need_name(&fields, "d", &kind)?;
                if kind == "pxmod" {
                    ws.add_pxmod(&name, &m, &pp, &act, &d)?;
                } else {
                    ws.add_xmod(&name, &m, &pp, &act, &d)?;
                }
            }
            "x2mod" => {
                let fields = p.fields()?;
                let l = need_name(&fields, "l", "x2mod")?;
                let m = need_name(&fields, "m", "x2mod")?;
                let pp = need_name(&fields, "p", "x2mod")?;
                let d2 = need_name(&fields, "d2", "x2mod")?;
                let d1 = need_name(&fields, "d1", "x2mod")?;
                let actl = need_name(&fields, "actl", "x2mod")?;
                let actm = need_name(&fields, "actm", "x2mod")?;
                let lifting = if let Some(Value::Str(path)) = take(&fields, "liftingfile") {
                    let base = p.base_dir.ok_or_else(|| Error::Parse {
                        line: 0,
                        col: 0,
                        msg: "liftingfile requires file-based input".into(),
                    })?;
                    let text = std::fs::read_to_string(base.join(path))
                        .map_err(|e| Error::Io(e.to_string()))?;
                    parse_bare_matrix(&text)?
                } else {
                    need_matrix(&fields, "lifting", "x2mod")?
                };
                ws.add_x2mod(&name, &l, &m, &pp, &d2, &d1, &actl, &actm, lifting)?;
            }
            "xmorphism" => {
                p.expect(Tok::Colon)?;
                let src_name = p.ident()?;
                p.expect(Tok::Arrow)?;
                let dst_name = p.ident()?;
                let fields = p.fields()?;
                let mu = need_name(&fields, "mu", "xmorphism")?;
                let eta = need_name(&fields, "eta", "xmorphism")?;
                ws.add_xmorphism(&name, &src_name, &dst_name, &mu, &eta)?;
            }
            "x2morphism" => {
                p.expect(Tok::Colon)?;
                let src_name = p.ident()?;
                p.expect(Tok::Arrow)?;
                let dst_name = p.ident()?;
                let fields = p.fields()?;
                let f2 = need_name(&fields, "f2", "x2morphism")?;
                let f1 = need_name(&fields, "f1", "x2morphism")?;
                let f0 = need_name(&fields, "f0", "x2morphism")?;
                ws.add_x2morphism(&name, &src_name, &dst_name, &f2, &f1, &f0)?;
            }
            other => {
                return Err(p.err_at(format!("unknown block kind {other:?}")));
            }
        }
    }
    Ok(ws)
}

/// Parse a standalone matrix file (for `liftingfile` references).
fn parse_bare_matrix(src: &str) -> Result<Vec<Vec<usize>>> {
    let toks = Lexer::new(src).tokens()?;
    let mut p = Parser {
        toks,
        pos: 0,
        base_dir: None,
    };
    match p.value()? {
        Value::Matrix(m) => Ok(m),
        _ => Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "expected a matrix".into(),
        }),
    }
}

/// Parse workspace text with no file context.
pub fn parse_str(src: &str) -> Result<Workspace> {
    parse_source(src, None)
}

/// Parse and merge several files into one workspace.
pub fn parse_files(paths: &[std::path::PathBuf]) -> Result<Workspace> {
    let mut combined = String::new();
    for path in paths {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
        combined.push_str(&text);
        combined.push('\n');
    }
    let base = paths
        .first()
        .and_then(|p| p.parent())
        .map(|p| p.to_path_buf());
    parse_source(&combined, base.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn empty_source_is_empty_workspace() {
        let ws = parse_str("").unwrap();
        assert!(ws.groups.is_empty());
        assert_eq!(ws.serialize(), "");
    }

    #[test]
    fn group_and_hom_round_trip() {
        let text = "\
group C2 {
  table = [[0,1],[1,0]]
}

hom id: C2 -> C2 {
  map = [0,1]
}
";
        let ws = parse_str(text).unwrap();
        assert_eq!(ws.groups.len(), 1);
        assert_eq!(ws.homs.len(), 1);
        assert_eq!(ws.serialize(), text);
    }

    #[test]
    fn comments_and_whitespace_are_skipped() {
        let text = "# heading\ngroup C2 { table = [[0,1],[1,0]] } # trailing\n";
        let ws = parse_str(text).unwrap();
        assert_eq!(ws.groups.len(), 1);
    }

    #[test]
    fn cm2_violation_is_reported_with_witness() {
        // The inversion example declared as crossed must fail validation.
        let text = "\
group C4 {
  table = [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]
}

group C2 {
  table = [[0,1],[1,0]]
}

hom d: C4 -> C2 {
  map = [0,1,0,1]
}

action inv: C2 on C4 {
  table = [[0,1,2,3],[0,3,2,1]]
}

xmod X {
  m = C4
  p = C2
  act = inv
  d = d
}
";
        match parse_str(text) {
            Err(Error::InObject { name, source }) => {
                assert_eq!(name, "X");
                assert!(matches!(*source, Error::Cm2Violation { .. }));
            }
            other => panic!("expected a CM2 violation, got {:?}", other.err()),
        }
        // The same data as a pxmod block is fine.
        let ok = text.replace("xmod X", "pxmod X");
        assert!(parse_str(&ok).is_ok());
    }

    #[test]
    fn unresolved_reference() {
        let text = "hom f: A -> B { map = [0] }\n";
        assert!(matches!(
            parse_str(text),
            Err(Error::UnresolvedReference { .. })
        ));
    }

    #[test]
    fn duplicate_names_rejected() {
        let text = "\
group G { table = [[0]] }
group G { table = [[0]] }
";
        assert!(matches!(parse_str(text), Err(Error::DuplicateName { .. })));
    }

    #[test]
    fn parse_error_has_position() {
        match parse_str("group G { table = [[0]] ") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {:?}", other.err()),
        }
    }

    #[test]
    fn fixture_workspace_round_trips_byte_identically() {
        let ws = fixtures::sample_workspace().unwrap();
        let once = ws.serialize();
        let back = parse_str(&once).unwrap();
        assert_eq!(back.serialize(), once);
        assert!(!ws.x2mods.is_empty());
        assert!(!ws.xmorphisms.is_empty());
    }

    #[test]
    fn lifting_from_a_referenced_file() {
        let dir = std::env::temp_dir().join("xmod2-format-test");
        std::fs::create_dir_all(&dir).unwrap();
        let ws = fixtures::sample_workspace().unwrap();
        let mut text = ws.serialize();
        // Move the PEIF lifting out into a side file.
        let lifting = "[[0,0,0,0],[0,1,0,1],[0,0,0,0],[0,1,0,1]]";
        assert!(text.contains(lifting));
        text = text.replace(
            &format!("lifting = {lifting}"),
            "liftingfile = \"peif_lifting.txt\"",
        );
        std::fs::write(dir.join("peif_lifting.txt"), lifting).unwrap();
        let main = dir.join("main.xm");
        std::fs::write(&main, &text).unwrap();
        let loaded = parse_files(&[main]).unwrap();
        assert_eq!(
            loaded.x2mod("PEIF").unwrap().module.lifting_table(),
            ws.x2mod("PEIF").unwrap().module.lifting_table()
        );
        // Without a base directory the reference is rejected.
        assert!(matches!(parse_str(&text), Err(Error::Parse { .. })));
    }

    #[test]
    fn presentation_block_round_trips() {
        let text = "\
presentation s3 {
  gens = [\"a\",\"b\"]
  relators = [\"a^2\",\"b^2\",\"a b a b a b\"]
}
";
        let ws = parse_str(text).unwrap();
        assert_eq!(ws.serialize(), text);
        let p = ws.presentation("s3").unwrap();
        assert_eq!(p.relators().len(), 3);
    }
}
