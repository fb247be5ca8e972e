//! Finitely presented groups and bounded Todd–Coxeter coset enumeration.
//!
//! Enumeration is Felsch style: definitions are made at the first undefined
//! table entry in scan order, every definition is pushed on a deduction
//! stack, and consequences of each deduction are traced through all relator
//! rotations immediately. Coincidences are handled by a union-find merge
//! with table repair. The procedure is deterministic: the same presentation
//! and limit always produce byte-identical tables.
//!
//! A `LimitExceeded` outcome is a first-class result, not an error — it says
//! the presentation did not collapse within the coset budget, never that the
//! group is infinite.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elt, FiniteGroup, GroupHom};

/// One signed generator occurrence inside a word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Letter {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word over the generators of a presentation.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Build a word, cancelling adjacent x·x⁻¹ pairs.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out
                .last()
                .is_some_and(|p| p.gen == l.gen && p.inverse != l.inverse)
            {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn gen(g: usize) -> Word {
        Word(vec![Letter::new(g)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Concatenation of several words.
    pub fn product(words: &[&Word]) -> Word {
        Word::from_letters(words.iter().flat_map(|w| w.0.iter().copied()))
    }

    pub fn conjugate_by(&self, by: &Word) -> Word {
        Word::product(&[by, self, &by.inverse()])
    }
}

/// Generators plus relator words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    gens: Vec<String>,
    legend: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(gens: Vec<String>, relators: Vec<Word>) -> Result<Presentation> {
        let mut seen = std::collections::HashSet::new();
        for g in &gens {
            if !seen.insert(g.clone()) {
                return Err(Error::DuplicateGenerator { name: g.clone() });
            }
        }
        for w in &relators {
            for l in w.letters() {
                if l.gen >= gens.len() {
                    return Err(Error::UndeclaredSymbol {
                        symbol: format!("generator #{}", l.gen),
                    });
                }
            }
        }
        let relators = relators
            .into_iter()
            .map(|w| Word::from_letters(w.letters().iter().copied()))
            .collect();
        let legend = gens.clone();
        Ok(Presentation {
            gens,
            legend,
            relators,
        })
    }

    /// Attach human-readable descriptions to the generators, for reports.
    pub fn with_legend(mut self, legend: Vec<String>) -> Presentation {
        assert_eq!(legend.len(), self.gens.len());
        self.legend = legend;
        self
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn legend(&self) -> &[String] {
        &self.legend
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UndeclaredSymbol {
                symbol: name.to_string(),
            })
    }

    /// Parse a word like `a^2 b^-1 a` or `a*b*a^-1` over this presentation's
    /// generators.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        parse_word_over(&self.gens, s)
    }

    /// Render a word in the canonical text syntax.
    pub fn render_word(&self, w: &Word) -> String {
        render_word_over(&self.gens, w)
    }

    /// Disjoint union of two presentations. Generators of `other` that clash
    /// with ours are renamed by a numeric suffix.
    pub fn free_product(&self, other: &Presentation) -> Presentation {
        let mut gens = self.gens.clone();
        let mut legend = self.legend.clone();
        for (g, l) in other.gens.iter().zip(other.legend.iter()) {
            let mut name = g.clone();
            let mut k = 2;
            while gens.contains(&name) {
                name = format!("{g}_{k}");
                k += 1;
            }
            gens.push(name);
            legend.push(l.clone());
        }
        let offset = self.gens.len();
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().map(|w| {
            Word::from_letters(w.letters().iter().map(|l| Letter {
                gen: l.gen + offset,
                inverse: l.inverse,
            }))
        }));
        Presentation {
            gens,
            legend,
            relators,
        }
    }

    /// Extend the relator list.
    pub fn quotient_by(&self, extra: Vec<Word>) -> Result<Presentation> {
        for w in &extra {
            for l in w.letters() {
                if l.gen >= self.gens.len() {
                    return Err(Error::UndeclaredSymbol {
                        symbol: format!("generator #{}", l.gen),
                    });
                }
            }
        }
        let mut relators = self.relators.clone();
        relators.extend(
            extra
                .into_iter()
                .map(|w| Word::from_letters(w.letters().iter().copied())),
        );
        Ok(Presentation {
            gens: self.gens.clone(),
            legend: self.legend.clone(),
            relators,
        })
    }
}

pub fn parse_word_over(gens: &[String], s: &str) -> Result<Word> {
    let mut letters = Vec::new();
    for token in s.split(|c: char| c.is_whitespace() || c == '*') {
        if token.is_empty() || token == "1" {
            continue;
        }
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => {
                let exp: i64 = e.parse().map_err(|_| Error::UndeclaredSymbol {
                    symbol: token.to_string(),
                })?;
                (n, exp)
            }
            None => (token, 1),
        };
        let gen = gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UndeclaredSymbol {
                symbol: name.to_string(),
            })?;
        let letter = Letter {
            gen,
            inverse: exp < 0,
        };
        for _ in 0..exp.unsigned_abs() {
            letters.push(letter);
        }
    }
    Ok(Word::from_letters(letters))
}

pub fn render_word_over(gens: &[String], w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    let ls = w.letters();
    while i < ls.len() {
        let mut j = i;
        while j + 1 < ls.len() && ls[j + 1] == ls[i] {
            j += 1;
        }
        let count = (j - i + 1) as i64;
        let exp = if ls[i].inverse { -count } else { count };
        if exp == 1 {
            parts.push(gens[ls[i].gen].clone());
        } else {
            parts.push(format!("{}^{}", gens[ls[i].gen], exp));
        }
        i = j + 1;
    }
    parts.join(" ")
}

/// The group presented by a completed coset enumeration.
pub struct CosetGroup {
    pub group: Arc<FiniteGroup>,
    /// Image of each presentation generator in `group`.
    pub gen_images: Vec<Elt>,
    /// Closed coset table: rows indexed by element, columns by letter
    /// (2·gen for a generator, 2·gen+1 for its inverse).
    pub table: Vec<Vec<Elt>>,
    /// A word over the generators evaluating to each element.
    pub words: Vec<Word>,
    /// Number of cosets defined over the whole run, including collapsed ones.
    pub total_defined: usize,
}

pub enum Enumeration {
    Complete(CosetGroup),
    LimitExceeded { limit: usize, defined: usize },
}

impl Enumeration {
    pub fn complete(self) -> Result<CosetGroup> {
        match self {
            Enumeration::Complete(cg) => Ok(cg),
            Enumeration::LimitExceeded { .. } => Err(Error::NotDecided),
        }
    }
}

const UNDEF: usize = usize::MAX;

struct Enumerator {
    ngens: usize,
    /// rows over 2*ngens letters
    table: Vec<Vec<usize>>,
    rep: Vec<usize>,
    deductions: Vec<(usize, usize)>,
    /// relator rotations grouped by first letter
    tasks: Vec<Vec<Vec<usize>>>,
    total_defined: usize,
    alive: usize,
    /// scan cursor for the next definition site
    cursor: (usize, usize),
}

fn letter_code(l: Letter) -> usize {
    2 * l.gen + usize::from(l.inverse)
}

fn inv_code(x: usize) -> usize {
    x ^ 1
}

impl Enumerator {
    fn new(p: &Presentation) -> Enumerator {
        let ngens = p.gens.len();
        let mut tasks: Vec<Vec<Vec<usize>>> = vec![Vec::new(); 2 * ngens];
        let mut seen = std::collections::HashSet::new();
        for rel in &p.relators {
            if rel.is_empty() {
                continue;
            }
            for base in [
                rel.letters()
                    .iter()
                    .map(|&l| letter_code(l))
                    .collect::<Vec<_>>(),
                rel.inverse()
                    .letters()
                    .iter()
                    .map(|&l| letter_code(l))
                    .collect::<Vec<_>>(),
            ] {
                for i in 0..base.len() {
                    let mut rot = base[i..].to_vec();
                    rot.extend_from_slice(&base[..i]);
                    if seen.insert(rot.clone()) {
                        tasks[rot[0]].push(rot);
                    }
                }
            }
        }
        Enumerator {
            ngens,
            table: vec![vec![UNDEF; 2 * ngens]],
            rep: vec![0],
            deductions: Vec::new(),
            tasks,
            total_defined: 1,
            alive: 1,
            cursor: (0, 0),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.rep[x] != x {
            let up = self.rep[self.rep[x]];
            self.rep[x] = up;
            x = up;
        }
        x
    }

    fn is_alive(&self, x: usize) -> bool {
        self.rep[x] == x
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c][x] = d;
        self.table[d][inv_code(x)] = c;
        self.deductions.push((c, x));
        self.deductions.push((d, inv_code(x)));
    }

    fn define(&mut self, c: usize, x: usize, limit: usize) -> Option<()> {
        if self.total_defined >= limit {
            return None;
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; 2 * self.ngens]);
        self.rep.push(d);
        self.total_defined += 1;
        self.alive += 1;
        self.set(c, x, d);
        Some(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (keep, kill) = (a.min(b), a.max(b));
        self.rep[kill] = keep;
        self.alive -= 1;
        queue.push_back(kill);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(kill) = queue.pop_front() {
            for x in 0..2 * self.ngens {
                let d = self.table[kill][x];
                if d == UNDEF {
                    continue;
                }
                self.table[kill][x] = UNDEF;
                // Drop the stale backpointer.
                if self.table[d][inv_code(x)] == kill {
                    self.table[d][inv_code(x)] = UNDEF;
                    let slot = (d, inv_code(x));
                    if slot < self.cursor {
                        self.cursor = slot;
                    }
                }
                let keep = self.find(kill);
                let d = self.find(d);
                if self.table[keep][x] != UNDEF {
                    let e = self.table[keep][x];
                    let e = self.find(e);
                    self.merge(e, d, &mut queue);
                } else if self.table[d][inv_code(x)] != UNDEF {
                    let e = self.table[d][inv_code(x)];
                    let e = self.find(e);
                    self.merge(keep, e, &mut queue);
                } else {
                    self.set(keep, x, d);
                }
            }
        }
    }

    /// Trace one relator rotation from `c`, filling a single gap or merging.
    fn scan(&mut self, c: usize, word: &[usize]) {
        let mut f = self.find(c);
        let mut i = 0;
        let mut j = word.len();
        // forward
        while i < j {
            let next = self.table[f][word[i]];
            if next == UNDEF {
                break;
            }
            f = self.find(next);
            i += 1;
        }
        let mut b = self.find(c);
        if i == j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        // backward
        while j > i {
            let next = self.table[b][inv_code(word[j - 1])];
            if next == UNDEF {
                break;
            }
            b = self.find(next);
            j -= 1;
        }
        if j == i {
            if f != b {
                self.coincidence(f, b);
            }
        } else if j == i + 1 {
            self.set(f, word[i], b);
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_alive(c) || self.table[c][x] == UNDEF {
                continue;
            }
            let tasks = std::mem::take(&mut self.tasks[x]);
            for word in &tasks {
                self.scan(c, word);
                if !self.is_alive(c) || self.table[c][x] == UNDEF {
                    break;
                }
            }
            self.tasks[x] = tasks;
        }
    }

    fn next_undefined(&mut self) -> Option<(usize, usize)> {
        let (mut c, mut x) = self.cursor;
        while c < self.table.len() {
            if self.is_alive(c) {
                while x < 2 * self.ngens {
                    if self.table[c][x] == UNDEF {
                        self.cursor = (c, x);
                        return Some((c, x));
                    }
                    x += 1;
                }
            }
            c += 1;
            x = 0;
        }
        self.cursor = (c, 0);
        None
    }
}

/// Enumerate cosets of the trivial subgroup. On completion the presented
/// group is reconstructed as a validated [`FiniteGroup`].
pub fn todd_coxeter(p: &Presentation, coset_limit: usize) -> Result<Enumeration> {
    assert!(coset_limit >= 1, "coset limit must be positive");
    if p.gens.is_empty() {
        let group = FiniteGroup::trivial();
        return Ok(Enumeration::Complete(CosetGroup {
            group,
            gen_images: Vec::new(),
            table: vec![Vec::new()],
            words: vec![Word::empty()],
            total_defined: 1,
        }));
    }
    let mut e = Enumerator::new(p);
    loop {
        e.process_deductions();
        match e.next_undefined() {
            None => break,
            Some((c, x)) => {
                if e.define(c, x, coset_limit).is_none() {
                    return Ok(Enumeration::LimitExceeded {
                        limit: coset_limit,
                        defined: e.total_defined,
                    });
                }
            }
        }
    }

    // Compact the live cosets in increasing order.
    let live: Vec<usize> = (0..e.table.len()).filter(|&c| e.rep[c] == c).collect();
    let mut renum = vec![UNDEF; e.table.len()];
    for (new, &old) in live.iter().enumerate() {
        renum[old] = new;
    }
    let n = live.len();
    if n > crate::group::EXHAUSTIVE_BOUND {
        return Err(Error::BoundExceeded {
            what: "enumerated group order",
            actual: n,
            bound: crate::group::EXHAUSTIVE_BOUND,
        });
    }
    let mut table = vec![vec![0usize; 2 * e.ngens]; n];
    for (new, &old) in live.iter().enumerate() {
        for x in 0..2 * e.ngens {
            let mut d = e.table[old][x];
            debug_assert_ne!(d, UNDEF, "closed table has no gaps");
            d = e.find(d);
            table[new][x] = renum[d];
        }
    }

    // Breadth-first words for every coset from the identity coset.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut order_seen = vec![false; n];
    order_seen[0] = true;
    let mut bfs = VecDeque::from([0usize]);
    let mut bfs_order = vec![0usize];
    while let Some(c) = bfs.pop_front() {
        for x in 0..2 * e.ngens {
            let d = table[c][x];
            if !order_seen[d] {
                order_seen[d] = true;
                parent[d] = Some((c, x));
                bfs.push_back(d);
                bfs_order.push(d);
            }
        }
    }
    debug_assert!(order_seen.iter().all(|&b| b), "coset graph is connected");

    let mut words = vec![Word::empty(); n];
    for &c in &bfs_order {
        if let Some((par, x)) = parent[c] {
            let letter = Letter {
                gen: x / 2,
                inverse: x % 2 == 1,
            };
            words[c] = words[par].concat(&Word::from_letters([letter]));
        }
    }

    // Multiplication: coset c stands for the element traced by words[c], so
    // a·c is a's row traced along c's word; build it along the BFS order.
    let mut mul = vec![vec![0usize; n]; n];
    for (a, row) in mul.iter_mut().enumerate() {
        row[0] = a;
    }
    for &c in &bfs_order {
        if let Some((par, x)) = parent[c] {
            for a in 0..n {
                mul[a][c] = table[mul[a][par]][x];
            }
        }
    }
    let group = Arc::new(FiniteGroup::from_table(mul, None)?);
    let gen_images = (0..e.ngens).map(|g| table[0][2 * g]).collect();
    Ok(Enumeration::Complete(CosetGroup {
        group,
        gen_images,
        table,
        words,
        total_defined: e.total_defined,
    }))
}

impl CosetGroup {
    /// Evaluate a word in the reconstructed group.
    pub fn word_image(&self, w: &Word) -> Elt {
        let g = &self.group;
        w.letters().iter().fold(0, |acc, l| {
            let im = self.gen_images[l.gen];
            g.mul(acc, if l.inverse { g.inv(im) } else { im })
        })
    }

    /// The homomorphism determined by images of the presentation generators.
    /// Fails with `NotAHom` when the images do not satisfy the relators.
    pub fn hom_from_gen_images(&self, dst: &Arc<FiniteGroup>, images: &[Elt]) -> Result<GroupHom> {
        assert_eq!(images.len(), self.gen_images.len());
        let map = self
            .words
            .iter()
            .map(|w| {
                w.letters().iter().fold(0, |acc, l| {
                    let im = images[l.gen];
                    dst.mul(acc, if l.inverse { dst.inv(im) } else { im })
                })
            })
            .collect();
        GroupHom::new(Arc::clone(&self.group), Arc::clone(dst), map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: &[&str], relators: &[&str]) -> Presentation {
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let p = Presentation::new(gens.clone(), vec![]).unwrap();
        let relators = relators.iter().map(|s| p.parse_word(s).unwrap()).collect();
        Presentation::new(gens, relators).unwrap()
    }

    fn order_of(p: &Presentation, limit: usize) -> usize {
        match todd_coxeter(p, limit).unwrap() {
            Enumeration::Complete(cg) => cg.group.order(),
            Enumeration::LimitExceeded { .. } => panic!("unexpected limit"),
        }
    }

    #[test]
    fn word_reduction() {
        let p = pres(&["a", "b"], &[]);
        let w = p.parse_word("a b^-1 b a^-1 a").unwrap();
        assert_eq!(p.render_word(&w), "a");
        let w = p.parse_word("a a a").unwrap();
        assert_eq!(p.render_word(&w), "a^3");
        assert_eq!(p.parse_word("a^2 a^-2").unwrap(), Word::empty());
        assert!(matches!(
            p.parse_word("c"),
            Err(Error::UndeclaredSymbol { .. })
        ));
    }

    #[test]
    fn render_parse_round_trip() {
        let p = pres(&["a", "b"], &[]);
        for s in ["1", "a", "a^3", "a b^-1", "a^2 b a^-1", "b^-3 a"] {
            let w = p.parse_word(s).unwrap();
            assert_eq!(p.render_word(&w), s);
        }
    }

    #[test]
    fn single_generator_orders() {
        assert_eq!(order_of(&pres(&["a"], &["a"]), 100), 1);
        for n in 2..=12 {
            let rel = format!("a^{n}");
            assert_eq!(order_of(&pres(&["a"], &[&rel]), 100), n);
        }
    }

    #[test]
    fn classic_presentations() {
        // S3
        let s3 = pres(&["a", "b"], &["a^2", "b^2", "a b a b a b"]);
        assert_eq!(order_of(&s3, 100), 6);
        // Klein four-group
        let v4 = pres(&["a", "b"], &["a^2", "b^2", "a b a b"]);
        assert_eq!(order_of(&v4, 100), 4);
        // D4
        let d4 = pres(&["r", "s"], &["r^4", "s^2", "r s r s"]);
        assert_eq!(order_of(&d4, 100), 8);
        // Quaternion group
        let q8 = pres(&["x", "y"], &["x^4", "x^2 y^-2", "y^-1 x y x"]);
        assert_eq!(order_of(&q8, 100), 8);
    }

    #[test]
    fn dihedral_series() {
        for n in 1..=6 {
            let bn = format!("b^{n}");
            let p = pres(&["a", "b"], &["a^2", &bn, "a b a b"]);
            assert_eq!(order_of(&p, 200), 2 * n);
        }
    }

    #[test]
    fn free_product_hits_limit() {
        let c2 = pres(&["a"], &["a^2"]);
        let c2b = pres(&["b"], &["b^2"]);
        let infinite_dihedral = c2.free_product(&c2b);
        assert_eq!(
            infinite_dihedral.gens(),
            &["a".to_string(), "b".to_string()]
        );
        match todd_coxeter(&infinite_dihedral, 500).unwrap() {
            Enumeration::LimitExceeded { limit, .. } => assert_eq!(limit, 500),
            Enumeration::Complete(cg) => panic!("C2 * C2 closed at {}", cg.group.order()),
        }
    }

    #[test]
    fn free_product_renames_clashes() {
        let p1 = pres(&["a"], &["a^2"]);
        let p2 = pres(&["a"], &["a^3"]);
        let fp = p1.free_product(&p2);
        assert_eq!(fp.gens(), &["a".to_string(), "a_2".to_string()]);
        // C2 * C3 is infinite (the modular group).
        assert!(matches!(
            todd_coxeter(&fp, 300).unwrap(),
            Enumeration::LimitExceeded { .. }
        ));
    }

    #[test]
    fn free_product_with_empty_presentation() {
        let p = pres(&["a"], &["a^4"]);
        let empty = Presentation::new(vec![], vec![]).unwrap();
        assert_eq!(p.free_product(&empty), p);
    }

    #[test]
    fn quotient_by_collapses() {
        let p = pres(&["a"], &["a^4"]);
        let q = p.quotient_by(vec![p.parse_word("a^2").unwrap()]).unwrap();
        assert_eq!(order_of(&q, 100), 2);

        let inf = pres(&["a", "b"], &["a^2", "b^2"]);
        let v4 = inf
            .quotient_by(vec![inf.parse_word("a b a b").unwrap()])
            .unwrap();
        assert_eq!(order_of(&v4, 100), 4);

        assert_eq!(p.quotient_by(vec![]).unwrap(), p);
    }

    #[test]
    fn relators_evaluate_to_identity() {
        let p = pres(&["a", "b"], &["a^2", "b^2", "a b a b a b"]);
        let cg = todd_coxeter(&p, 100).unwrap().complete().unwrap();
        for r in p.relators() {
            assert_eq!(cg.word_image(r), 0);
        }
        assert_eq!(cg.word_image(&Word::empty()), 0);
        // Soundness from every coset: trace each relator around the table.
        for c in 0..cg.group.order() {
            for r in p.relators() {
                let mut cur = c;
                for l in r.letters() {
                    cur = cg.table[cur][2 * l.gen + usize::from(l.inverse)];
                }
                assert_eq!(cur, c);
            }
        }
    }

    #[test]
    fn word_image_examples() {
        let p = pres(&["a"], &["a^4"]);
        let cg = todd_coxeter(&p, 100).unwrap().complete().unwrap();
        let a2 = cg.word_image(&p.parse_word("a^2").unwrap());
        assert_eq!(cg.group.element_order(a2), 2);
    }

    #[test]
    fn determinism_byte_identical() {
        let p = pres(&["a", "b"], &["a^4", "b^2", "a b a b"]);
        let one = todd_coxeter(&p, 1000).unwrap().complete().unwrap();
        let two = todd_coxeter(&p, 1000).unwrap().complete().unwrap();
        assert_eq!(one.table, two.table);
        assert_eq!(one.group.table(), two.group.table());
        assert_eq!(one.gen_images, two.gen_images);
    }

    #[test]
    fn collapsing_presentation_with_coincidences() {
        // <a, b | a^3, b^3, a b^-1> collapses to C3.
        let p = pres(&["a", "b"], &["a^3", "b^3", "a b^-1"]);
        assert_eq!(order_of(&p, 100), 3);
        // a^2 = b and b^2 = a force a^3 = 1 and b = a^2: C3 again.
        let p = pres(&["a", "b"], &["a^2 b^-1", "b^2 a^-1"]);
        assert_eq!(order_of(&p, 100), 3);
        // Everything collapses to the trivial group.
        let p = pres(&["a", "b"], &["a^2", "a^3", "b a^-1"]);
        assert_eq!(order_of(&p, 100), 1);
    }

    #[test]
    fn empty_generator_presentation() {
        let p = Presentation::new(vec![], vec![]).unwrap();
        let cg = todd_coxeter(&p, 10).unwrap().complete().unwrap();
        assert_eq!(cg.group.order(), 1);
    }

    #[test]
    fn hom_from_gen_images() {
        let p = pres(&["a"], &["a^4"]);
        let cg = todd_coxeter(&p, 100).unwrap().complete().unwrap();
        let c2 = FiniteGroup::cyclic(2);
        let h = cg.hom_from_gen_images(&c2, &[1]).unwrap();
        assert!(h.is_surjective());
        let a2 = cg.word_image(&p.parse_word("a^2").unwrap());
        assert_eq!(h.apply(a2), 0);
        // Images violating the relators are rejected.
        let c3 = FiniteGroup::cyclic(3);
        assert!(cg.hom_from_gen_images(&c3, &[1]).is_err());
    }
}
