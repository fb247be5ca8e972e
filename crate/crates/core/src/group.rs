//! Finite groups as multiplication tables, with homomorphisms, actions by
//! automorphisms, subgroups, quotients, transversals and brute-force
//! homomorphism enumeration.
//!
//! Elements are dense indices `0..order` and index 0 is always the identity.
//! Construction validates every axiom exhaustively; there are no unchecked
//! constructors in the public surface, so a value of one of these types can
//! be trusted by everything downstream.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{ActionDefect, Error, GroupDefect, Result};

/// An element index inside a [`FiniteGroup`].
pub type Elt = usize;

/// Largest group order for which exhaustive validation is attempted.
pub const EXHAUSTIVE_BOUND: usize = 256;

/// Largest source order for brute-force homomorphism enumeration.
pub const HOM_ENUM_BOUND: usize = 64;

/// Largest group order for brute-force automorphism group construction.
pub const AUT_BOUND: usize = 24;

/// A finite group given by its full multiplication table.
///
/// Invariants (checked on construction): the table is associative, element 0
/// is a two-sided identity, every element has a two-sided inverse, and
/// labels, when present, are unique.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: Vec<Vec<Elt>>,
    inv: Vec<Elt>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

impl FiniteGroup {
    /// Validate a multiplication table and wrap it as a group.
    ///
    /// If the two-sided identity sits at an index other than 0 the elements
    /// are relabeled by the transposition that moves it to 0.
    pub fn from_table(table: Vec<Vec<Elt>>, labels: Option<Vec<String>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup(GroupDefect::NoIdentity));
        }
        if n > EXHAUSTIVE_BOUND {
            return Err(Error::BoundExceeded {
                what: "group order",
                actual: n,
                bound: EXHAUSTIVE_BOUND,
            });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotAGroup(GroupDefect::NotSquare {
                    row,
                    len: r.len(),
                    order: n,
                }));
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(Error::NotAGroup(GroupDefect::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order: n,
                    }));
                }
            }
        }
        if let Some(ref ls) = labels {
            if ls.len() != n {
                return Err(Error::NotAGroup(GroupDefect::LabelCount {
                    len: ls.len(),
                    order: n,
                }));
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::NotAGroup(GroupDefect::NoIdentity))?;

        let (table, labels) = if identity == 0 {
            (table, labels)
        } else {
            // Swap indices 0 and `identity` everywhere.
            let swap = |x: Elt| -> Elt {
                if x == 0 {
                    identity
                } else if x == identity {
                    0
                } else {
                    x
                }
            };
            let mut t = vec![vec![0; n]; n];
            for a in 0..n {
                for b in 0..n {
                    t[a][b] = swap(table[swap(a)][swap(b)]);
                }
            }
            let labels = labels.map(|ls| {
                let mut ls2 = ls.clone();
                ls2.swap(0, identity);
                ls2
            });
            (t, labels)
        };

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(GroupDefect::NotAssociative { a, b, c }));
                    }
                }
            }
        }

        let mut inv = vec![0; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x][y] == 0 && table[y][x] == 0)
                .ok_or(Error::NotAGroup(GroupDefect::NoInverse { x }))?;
            inv[x] = y;
        }

        if let Some(ref ls) = labels {
            let mut seen = std::collections::HashSet::new();
            for l in ls {
                if !seen.insert(l.clone()) {
                    return Err(Error::NotAGroup(GroupDefect::DuplicateLabel {
                        label: l.clone(),
                    }));
                }
            }
        }

        Ok(FiniteGroup {
            mul: table,
            inv,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.mul[a][b]
    }

    pub fn inv(&self, a: Elt) -> Elt {
        self.inv[a]
    }

    /// a * b * a^-1
    pub fn conj(&self, a: Elt, b: Elt) -> Elt {
        self.mul(self.mul(a, b), self.inv(a))
    }

    /// a * b * a^-1 * b^-1
    pub fn commutator(&self, a: Elt, b: Elt) -> Elt {
        self.mul(self.conj(a, b), self.inv(b))
    }

    /// Product of a slice of elements, left to right; empty product is 1.
    pub fn product(&self, xs: &[Elt]) -> Elt {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn elements(&self) -> std::ops::Range<Elt> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, x: Elt) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn table(&self) -> &[Vec<Elt>] {
        &self.mul
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name for an element: the stored label, or `1`/`g{i}`.
    pub fn label(&self, x: Elt) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None if x == 0 => "1".to_string(),
            None => format!("g{x}"),
        }
    }

    pub fn trivial() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_table(vec![vec![0]], Some(vec!["1".into()])).unwrap())
    }

    /// Cyclic group of order `n`, labeled 1, a, a^2, ...
    pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
        assert!((1..=EXHAUSTIVE_BOUND).contains(&n));
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            })
            .collect();
        Arc::new(FiniteGroup::from_table(table, Some(labels)).unwrap())
    }

    /// Klein four-group, labeled 1, a, b, ab.
    pub fn klein_four() -> Arc<FiniteGroup> {
        let table = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        let labels = vec!["1".into(), "a".into(), "b".into(), "ab".into()];
        Arc::new(FiniteGroup::from_table(table, Some(labels)).unwrap())
    }

    /// Symmetric group on `n` points (n <= 5), elements in lexicographic
    /// one-line order so the identity is element 0. Labels are cycle notation.
    pub fn symmetric(n: usize) -> Arc<FiniteGroup> {
        assert!((1..=5).contains(&n));
        let perms = permutations(n);
        let index: HashMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let m = perms.len();
        let mut table = vec![vec![0; m]; m];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                // (p*q)(x) = p(q(x))
                let pq: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                table[i][j] = index[&pq];
            }
        }
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Arc::new(FiniteGroup::from_table(table, Some(labels)).unwrap())
    }

    /// Dihedral group of order 2n: rotations r^i then reflections s r^i.
    pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
        assert!(n >= 1 && 2 * n <= EXHAUSTIVE_BOUND);
        let order = 2 * n;
        // Encode r^i as i, s r^i as n + i. s r^i * s r^j = r^(j-i), r^i * s r^j = s r^(j-i)...
        // Work with the faithful description: element = (flip, rot), product
        // (f1, r1)(f2, r2) = (f1 xor f2, if f2 { r2 - r1 } else { r1 + r2 }).
        let enc = |f: bool, r: usize| if f { n + r } else { r };
        let mut table = vec![vec![0; order]; order];
        for a in 0..order {
            for b in 0..order {
                let (f1, r1) = (a >= n, a % n);
                let (f2, r2) = (b >= n, b % n);
                let f = f1 ^ f2;
                let r = if f2 { (n + r2 - r1) % n } else { (r1 + r2) % n };
                table[a][b] = enc(f, r);
            }
        }
        let labels = (0..order)
            .map(|i| {
                let (f, r) = (i >= n, i % n);
                match (f, r) {
                    (false, 0) => "1".to_string(),
                    (false, 1) => "r".to_string(),
                    (false, r) => format!("r^{r}"),
                    (true, 0) => "s".to_string(),
                    (true, 1) => "sr".to_string(),
                    (true, r) => format!("sr^{r}"),
                }
            })
            .collect();
        Arc::new(FiniteGroup::from_table(table, Some(labels)).unwrap())
    }

    /// Replace the labels (None clears them). Fails on duplicates.
    pub fn with_labels(&self, labels: Option<Vec<String>>) -> Result<FiniteGroup> {
        FiniteGroup::from_table(self.mul.clone(), labels)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        let n = cur.len();
        if k == n {
            out.push(cur.clone());
            return;
        }
        for i in k..n {
            cur.swap(k, i);
            rec(cur, k + 1, out);
            cur.swap(k, i);
        }
    }
    rec(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut s = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        s.push('(');
        let mut x = start;
        loop {
            seen[x] = true;
            s.push_str(&(x + 1).to_string());
            x = p[x];
            if x == start {
                break;
            }
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}

/// Two groups are interchangeable when they are the same allocation or have
/// identical tables.
pub fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a.table() == b.table()
}

/// A total homomorphism between finite groups, stored as an image table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    src: Arc<FiniteGroup>,
    dst: Arc<FiniteGroup>,
    map: Vec<Elt>,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupHom({:?})", self.map)
    }
}

impl GroupHom {
    pub fn new(src: Arc<FiniteGroup>, dst: Arc<FiniteGroup>, map: Vec<Elt>) -> Result<GroupHom> {
        if map.len() != src.order() {
            return Err(Error::Mismatch(format!(
                "hom map has length {}, source has order {}",
                map.len(),
                src.order()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= dst.order()) {
            return Err(Error::Mismatch(format!(
                "hom map value {} out of range for target of order {}",
                v,
                dst.order()
            )));
        }
        for x in src.elements() {
            for y in src.elements() {
                if map[src.mul(x, y)] != dst.mul(map[x], map[y]) {
                    return Err(Error::NotAHom { x, y });
                }
            }
        }
        Ok(GroupHom { src, dst, map })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> GroupHom {
        GroupHom {
            src: Arc::clone(g),
            dst: Arc::clone(g),
            map: g.elements().collect(),
        }
    }

    pub fn trivial(src: &Arc<FiniteGroup>, dst: &Arc<FiniteGroup>) -> GroupHom {
        GroupHom {
            src: Arc::clone(src),
            dst: Arc::clone(dst),
            map: vec![0; src.order()],
        }
    }

    pub fn src(&self) -> &Arc<FiniteGroup> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FiniteGroup> {
        &self.dst
    }

    pub fn apply(&self, x: Elt) -> Elt {
        self.map[x]
    }

    pub fn map(&self) -> &[Elt] {
        &self.map
    }

    /// self ∘ other (apply `other` first). Domains must match.
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom> {
        if !same_group(&self.src, &other.dst) {
            return Err(Error::Mismatch(
                "hom composition: inner target differs from outer source".into(),
            ));
        }
        Ok(GroupHom {
            src: Arc::clone(&other.src),
            dst: Arc::clone(&self.dst),
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.dst.order()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.iter().all(|&b| b)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.dst.order()];
        for &v in &self.map {
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.src.order() == self.dst.order() && self.is_injective()
    }

    pub fn kernel(&self) -> Subgroup {
        let member: Vec<bool> = self.map.iter().map(|&v| v == 0).collect();
        Subgroup::from_member_mask(&self.src, member).expect("kernel is a subgroup")
    }

    pub fn image(&self) -> Subgroup {
        let mut member = vec![false; self.dst.order()];
        for &v in &self.map {
            member[v] = true;
        }
        Subgroup::from_member_mask(&self.dst, member).expect("image is a subgroup")
    }

    /// All preimages of a target element, ascending.
    pub fn preimages(&self, y: Elt) -> Vec<Elt> {
        self.map
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == y)
            .map(|(x, _)| x)
            .collect()
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse_iso(&self) -> Result<GroupHom> {
        if !self.is_bijective() {
            return Err(Error::Mismatch("hom is not bijective".into()));
        }
        let mut map = vec![0; self.dst.order()];
        for x in self.src.elements() {
            map[self.map[x]] = x;
        }
        Ok(GroupHom {
            src: Arc::clone(&self.dst),
            dst: Arc::clone(&self.src),
            map,
        })
    }
}

/// A left action of `actor` on `space` by automorphisms, stored as a table.
#[derive(Clone, PartialEq, Eq)]
pub struct ActionTable {
    actor: Arc<FiniteGroup>,
    space: Arc<FiniteGroup>,
    act: Vec<Vec<Elt>>,
}

impl std::fmt::Debug for ActionTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ActionTable({} on {})",
            self.actor.order(),
            self.space.order()
        )
    }
}

impl ActionTable {
    pub fn new(
        actor: Arc<FiniteGroup>,
        space: Arc<FiniteGroup>,
        act: Vec<Vec<Elt>>,
    ) -> Result<ActionTable> {
        if act.len() != actor.order() || act.iter().any(|r| r.len() != space.order()) {
            return Err(Error::Mismatch(
                "action table dimensions do not match actor x space".into(),
            ));
        }
        let n = space.order();
        for (p, row) in act.iter().enumerate() {
            let mut hit = vec![false; n];
            for &v in row {
                if v >= n || hit[v] {
                    return Err(Error::NotAnAction(ActionDefect::RowNotBijective { p }));
                }
                hit[v] = true;
            }
            for m1 in 0..n {
                for m2 in 0..n {
                    if row[space.mul(m1, m2)] != space.mul(row[m1], row[m2]) {
                        return Err(Error::NotAnAction(ActionDefect::RowNotHom { p, m1, m2 }));
                    }
                }
            }
        }
        for m in 0..n {
            if act[0][m] != m {
                return Err(Error::NotAnAction(ActionDefect::IdentityRowMoves { m }));
            }
        }
        for p in actor.elements() {
            for q in actor.elements() {
                let pq = actor.mul(p, q);
                for m in 0..n {
                    if act[pq][m] != act[p][act[q][m]] {
                        return Err(Error::NotAnAction(ActionDefect::Composition { p, q, m }));
                    }
                }
            }
        }
        Ok(ActionTable { actor, space, act })
    }

    pub fn trivial(actor: &Arc<FiniteGroup>, space: &Arc<FiniteGroup>) -> ActionTable {
        ActionTable {
            actor: Arc::clone(actor),
            space: Arc::clone(space),
            act: vec![space.elements().collect(); actor.order()],
        }
    }

    /// The conjugation action of a group on itself.
    pub fn conjugation(g: &Arc<FiniteGroup>) -> ActionTable {
        let act = g
            .elements()
            .map(|p| g.elements().map(|m| g.conj(p, m)).collect())
            .collect();
        ActionTable {
            actor: Arc::clone(g),
            space: Arc::clone(g),
            act,
        }
    }

    pub fn actor(&self) -> &Arc<FiniteGroup> {
        &self.actor
    }

    pub fn space(&self) -> &Arc<FiniteGroup> {
        &self.space
    }

    pub fn apply(&self, p: Elt, m: Elt) -> Elt {
        self.act[p][m]
    }

    pub fn rows(&self) -> &[Vec<Elt>] {
        &self.act
    }

    /// Is every row the identity?
    pub fn is_trivial(&self) -> bool {
        self.act
            .iter()
            .all(|row| row.iter().enumerate().all(|(m, &v)| v == m))
    }
}

/// A subgroup of a parent group, stored as a membership mask.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    member: Vec<bool>,
    normal: bool,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?}", self.elements())
    }
}

impl Subgroup {
    /// Wrap a membership mask, verifying closure under product and inverse.
    pub fn from_member_mask(parent: &Arc<FiniteGroup>, member: Vec<bool>) -> Result<Subgroup> {
        if member.len() != parent.order() || !member[0] {
            return Err(Error::Mismatch("subgroup mask malformed".into()));
        }
        for x in parent.elements().filter(|&x| member[x]) {
            if !member[parent.inv(x)] {
                return Err(Error::Mismatch(
                    "subgroup mask not closed under inverse".into(),
                ));
            }
            for y in parent.elements().filter(|&y| member[y]) {
                if !member[parent.mul(x, y)] {
                    return Err(Error::Mismatch(
                        "subgroup mask not closed under product".into(),
                    ));
                }
            }
        }
        let normal = compute_normal(parent, &member);
        Ok(Subgroup {
            parent: Arc::clone(parent),
            member,
            normal,
        })
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[Elt]) -> Subgroup {
        let mut member = vec![false; parent.order()];
        member[0] = true;
        let mut stack: Vec<Elt> = vec![0];
        fn push(member: &mut [bool], stack: &mut Vec<Elt>, x: Elt) {
            if !member[x] {
                member[x] = true;
                stack.push(x);
            }
        }
        for &g in gens {
            push(&mut member, &mut stack, g);
        }
        while let Some(x) = stack.pop() {
            push(&mut member, &mut stack, parent.inv(x));
            for y in parent.elements() {
                if member[y] {
                    push(&mut member, &mut stack, parent.mul(x, y));
                    push(&mut member, &mut stack, parent.mul(y, x));
                }
            }
        }
        let normal = compute_normal(parent, &member);
        Subgroup {
            parent: Arc::clone(parent),
            member,
            normal,
        }
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(parent: &Arc<FiniteGroup>, gens: &[Elt]) -> Subgroup {
        let mut closure: Vec<Elt> = gens.to_vec();
        loop {
            let sub = Subgroup::generated(parent, &closure);
            if sub.normal {
                return sub;
            }
            for g in parent.elements() {
                for x in sub.elements() {
                    let c = parent.conj(g, x);
                    if !sub.contains(c) {
                        closure.push(c);
                    }
                }
            }
        }
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::generated(parent, &[])
    }

    pub fn full(parent: &Arc<FiniteGroup>) -> Subgroup {
        let member = vec![true; parent.order()];
        Subgroup {
            parent: Arc::clone(parent),
            member,
            normal: true,
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn contains(&self, x: Elt) -> bool {
        self.member[x]
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn order(&self) -> usize {
        self.member.iter().filter(|&&b| b).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn elements(&self) -> Vec<Elt> {
        self.parent.elements().filter(|&x| self.member[x]).collect()
    }

    /// Realize the subgroup as a group in its own right, together with the
    /// inclusion homomorphism into the parent.
    pub fn as_group(&self) -> (Arc<FiniteGroup>, GroupHom) {
        let elems = self.elements();
        let pos: HashMap<Elt, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[&self.parent.mul(a, b)]).collect())
            .collect();
        let labels = self
            .parent
            .labels()
            .map(|ls| elems.iter().map(|&e| ls[e].clone()).collect());
        let group =
            Arc::new(FiniteGroup::from_table(table, labels).expect("subgroup table is a group"));
        let embed = GroupHom {
            src: Arc::clone(&group),
            dst: Arc::clone(&self.parent),
            map: elems,
        };
        (group, embed)
    }
}

fn compute_normal(parent: &FiniteGroup, member: &[bool]) -> bool {
    parent.elements().all(|g| {
        parent
            .elements()
            .filter(|&x| member[x])
            .all(|x| member[parent.conj(g, x)])
    })
}

/// Quotient by a normal subgroup. Coset representatives are the minimal
/// element index per coset, and cosets are numbered in representative order,
/// so the identity coset is element 0. Returns the quotient group and the
/// canonical projection.
pub fn quotient(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom)> {
    if !same_group(n.parent(), g) {
        return Err(Error::Mismatch("subgroup of a different group".into()));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    // coset id of x = minimal element of x*N
    let mut coset_min = vec![usize::MAX; g.order()];
    for x in g.elements() {
        let m = n
            .elements()
            .iter()
            .map(|&h| g.mul(x, h))
            .min()
            .expect("nonempty subgroup");
        coset_min[x] = m;
    }
    let mut reps: Vec<Elt> = coset_min.clone();
    reps.sort_unstable();
    reps.dedup();
    let rep_index: HashMap<Elt, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let table = reps
        .iter()
        .map(|&a| {
            reps.iter()
                .map(|&b| rep_index[&coset_min[g.mul(a, b)]])
                .collect()
        })
        .collect();
    let quot = Arc::new(FiniteGroup::from_table(table, None).expect("coset table is a group"));
    let proj = GroupHom {
        src: Arc::clone(g),
        dst: Arc::clone(&quot),
        map: g.elements().map(|x| rep_index[&coset_min[x]]).collect(),
    };
    Ok((quot, proj))
}

/// One representative per left coset x*H, minimal index per coset, identity
/// first (it represents H itself).
pub fn left_transversal(g: &Arc<FiniteGroup>, h: &Subgroup) -> Vec<Elt> {
    let mut reps = Vec::new();
    let mut seen = vec![false; g.order()];
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &k in &h.elements() {
            seen[g.mul(x, k)] = true;
        }
    }
    reps
}

/// A small generating set found greedily: repeatedly adjoin the least element
/// outside the subgroup generated so far.
pub fn generating_set(g: &Arc<FiniteGroup>) -> Vec<Elt> {
    let mut gens = Vec::new();
    let mut sub = Subgroup::trivial(g);
    while sub.order() < g.order() {
        let x = g
            .elements()
            .find(|&x| !sub.contains(x))
            .expect("proper subgroup");
        gens.push(x);
        sub = Subgroup::generated(g, &gens);
    }
    gens
}

/// Expression of every element as parent * generator^(±1), breadth-first from
/// the identity. `expr[0]` is None; generators may appear inverted.
pub fn bfs_words(g: &Arc<FiniteGroup>, gens: &[Elt]) -> Vec<Option<(Elt, usize, bool)>> {
    let mut expr: Vec<Option<(Elt, usize, bool)>> = vec![None; g.order()];
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &gen) in gens.iter().enumerate() {
            for inverse in [false, true] {
                let y = g.mul(x, if inverse { g.inv(gen) } else { gen });
                if !seen[y] {
                    seen[y] = true;
                    expr[y] = Some((x, i, inverse));
                    queue.push_back(y);
                }
            }
        }
    }
    debug_assert!(seen.iter().all(|&b| b), "generators must generate");
    expr
}

/// All homomorphisms src -> dst, by search over images of a generating set.
/// Deterministic order (lexicographic in the image tuple).
pub fn enumerate_homs(src: &Arc<FiniteGroup>, dst: &Arc<FiniteGroup>) -> Result<Vec<GroupHom>> {
    if src.order() > HOM_ENUM_BOUND {
        return Err(Error::BoundExceeded {
            what: "homomorphism enumeration source order",
            actual: src.order(),
            bound: HOM_ENUM_BOUND,
        });
    }
    let gens = generating_set(src);
    let expr = bfs_words(src, &gens);
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    enumerate_rec(src, dst, &gens, &expr, &mut images, 0, &mut out);
    Ok(out)
}

fn enumerate_rec(
    src: &Arc<FiniteGroup>,
    dst: &Arc<FiniteGroup>,
    gens: &[Elt],
    expr: &[Option<(Elt, usize, bool)>],
    images: &mut Vec<Elt>,
    depth: usize,
    out: &mut Vec<GroupHom>,
) {
    if depth == gens.len() {
        if let Some(map) = build_map(src, dst, expr, images) {
            out.push(GroupHom {
                src: Arc::clone(src),
                dst: Arc::clone(dst),
                map,
            });
        }
        return;
    }
    // The image of a generator must have order dividing the generator's order.
    let need = src.element_order(gens[depth]);
    for im in dst.elements() {
        if !need.is_multiple_of(dst.element_order(im)) {
            continue;
        }
        images[depth] = im;
        enumerate_rec(src, dst, gens, expr, images, depth + 1, out);
    }
}

fn build_map(
    src: &Arc<FiniteGroup>,
    dst: &Arc<FiniteGroup>,
    expr: &[Option<(Elt, usize, bool)>],
    images: &[Elt],
) -> Option<Vec<Elt>> {
    let mut map = vec![0usize; src.order()];
    // expr is in BFS discovery order by construction of bfs_words; fill by
    // repeatedly resolving entries whose parent is resolved.
    let mut resolved = vec![false; src.order()];
    resolved[0] = true;
    let mut remaining: Vec<Elt> = src.elements().filter(|&x| x != 0).collect();
    while !remaining.is_empty() {
        let before = remaining.len();
        remaining.retain(|&x| {
            let (parent, gi, inverse) = expr[x].expect("non-identity has an expression");
            if resolved[parent] {
                let g = if inverse {
                    dst.inv(images[gi])
                } else {
                    images[gi]
                };
                map[x] = dst.mul(map[parent], g);
                resolved[x] = true;
                false
            } else {
                true
            }
        });
        assert!(remaining.len() < before, "bfs expression must be acyclic");
    }
    for x in src.elements() {
        for y in src.elements() {
            if map[src.mul(x, y)] != dst.mul(map[x], map[y]) {
                return None;
            }
        }
    }
    Some(map)
}

/// First isomorphism src -> dst found by enumeration, if any.
pub fn find_isomorphism(
    src: &Arc<FiniteGroup>,
    dst: &Arc<FiniteGroup>,
) -> Result<Option<GroupHom>> {
    if src.order() != dst.order() {
        return Ok(None);
    }
    Ok(enumerate_homs(src, dst)?
        .into_iter()
        .find(|h| h.is_bijective()))
}

/// Subgroup of the space generated by all (k·m)m^{-1} for k in `k`, m in the
/// space of `act`.
pub fn action_commutator_subgroup(k: &Subgroup, act: &ActionTable) -> Result<Subgroup> {
    if !same_group(k.parent(), act.actor()) {
        return Err(Error::Mismatch(
            "displacement subgroup: actor differs from subgroup parent".into(),
        ));
    }
    let space = act.space();
    let mut gens = Vec::new();
    for kk in k.elements() {
        for m in space.elements() {
            gens.push(space.mul(act.apply(kk, m), space.inv(m)));
        }
    }
    Ok(Subgroup::generated(space, &gens))
}

/// The automorphism group of `m` realized as a finite group: element i of the
/// result permutes `m` by `maps[i]`, composition is the group product, and
/// `action` is the evaluation action on `m`.
pub struct AutomorphismGroup {
    pub group: Arc<FiniteGroup>,
    pub maps: Vec<Vec<Elt>>,
    pub action: ActionTable,
}

pub fn automorphism_group(m: &Arc<FiniteGroup>) -> Result<AutomorphismGroup> {
    if m.order() > AUT_BOUND {
        return Err(Error::BoundExceeded {
            what: "automorphism group order",
            actual: m.order(),
            bound: AUT_BOUND,
        });
    }
    let maps: Vec<Vec<Elt>> = enumerate_homs(m, m)?
        .into_iter()
        .filter(|h| h.is_bijective())
        .map(|h| h.map().to_vec())
        .collect();
    // Sorted image tuples put the identity automorphism first.
    let mut maps = maps;
    maps.sort();
    debug_assert_eq!(maps[0], m.elements().collect::<Vec<_>>());
    let index: HashMap<&Vec<Elt>, usize> = maps.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let table = maps
        .iter()
        .map(|s| {
            maps.iter()
                .map(|t| {
                    // (s ∘ t)(x) = s(t(x))
                    let st: Vec<Elt> = (0..m.order()).map(|x| s[t[x]]).collect();
                    index[&st]
                })
                .collect()
        })
        .collect();
    let group = Arc::new(FiniteGroup::from_table(table, None)?);
    let action = ActionTable::new(Arc::clone(&group), Arc::clone(m), maps.clone())?;
    Ok(AutomorphismGroup {
        group,
        maps,
        action,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group_from_table() {
        let g = FiniteGroup::from_table(vec![vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
    }

    #[test]
    fn c2_from_table() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn non_associative_latin_square_rejected() {
        // A Latin square of order 5 that is a quasigroup but not a group:
        // row i maps j to the table entry; built so that (1*1)*2 != 1*(1*2).
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        // Brute-force oracle: find some non-associative triple first.
        let mut witness = None;
        'outer: for a in 0..5usize {
            for b in 0..5usize {
                for c in 0..5usize {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        witness = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        let witness = witness.expect("this square must not be associative");
        match FiniteGroup::from_table(table, None) {
            Err(Error::NotAGroup(GroupDefect::NotAssociative { a, b, c })) => {
                assert_eq!((a, b, c), witness);
            }
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn identity_relocated_to_zero() {
        // C2 written with the identity at index 1.
        let g = FiniteGroup::from_table(
            vec![vec![1, 0], vec![0, 1]],
            Some(vec!["x".into(), "e".into()]),
        )
        .unwrap();
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.label(0), "e");
        assert_eq!(g.label(1), "x");
    }

    #[test]
    fn cyclic_group_structure() {
        let c4 = FiniteGroup::cyclic(4);
        assert_eq!(c4.order(), 4);
        assert_eq!(c4.mul(1, 1), 2);
        assert_eq!(c4.inv(1), 3);
        assert_eq!(c4.element_order(1), 4);
        assert_eq!(c4.element_order(2), 2);
        assert!(c4.is_abelian());
    }

    #[test]
    fn symmetric_three() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let transpositions = s3.elements().filter(|&x| s3.element_order(x) == 2).count();
        assert_eq!(transpositions, 3);
    }

    #[test]
    fn dihedral_four() {
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert_eq!(d4.element_order(1), 4); // r
        assert_eq!(d4.element_order(4), 2); // s
    }

    #[test]
    fn hom_validation() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let id = GroupHom::identity(&c4);
        assert_eq!(id.apply(3), 3);

        let f = GroupHom::new(Arc::clone(&c4), Arc::clone(&c2), vec![0, 1, 0, 1]).unwrap();
        assert!(f.is_surjective());
        assert!(!f.is_injective());
        assert_eq!(f.kernel().elements(), vec![0, 2]);

        // Swapping the identity with another element is not a hom.
        let bad = GroupHom::new(Arc::clone(&c4), Arc::clone(&c4), vec![1, 0, 3, 2]);
        assert!(matches!(bad, Err(Error::NotAHom { .. })));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let bad = FiniteGroup::from_table(
            vec![vec![0, 1], vec![1, 0]],
            Some(vec!["e".into(), "e".into()]),
        );
        assert!(matches!(
            bad,
            Err(Error::NotAGroup(GroupDefect::DuplicateLabel { .. }))
        ));
    }

    #[test]
    fn c4_to_c2_homs_and_brute_force_oracle() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let homs = enumerate_homs(&c4, &c2).unwrap();
        assert_eq!(homs.len(), 2);

        // Oracle: all |H|^|G| maps checked directly.
        let mut count = 0;
        for bits in 0..(1u32 << 4) {
            let map: Vec<usize> = (0..4).map(|i| ((bits >> i) & 1) as usize).collect();
            let ok = (0..4).all(|x| (0..4).all(|y| map[c4.mul(x, y)] == c2.mul(map[x], map[y])));
            if ok {
                count += 1;
            }
        }
        assert_eq!(count, homs.len());
    }

    #[test]
    fn hom_counts_small_cases() {
        let c2 = FiniteGroup::cyclic(2);
        let triv = FiniteGroup::trivial();
        assert_eq!(enumerate_homs(&triv, &c2).unwrap().len(), 1);
        assert_eq!(enumerate_homs(&c2, &c2).unwrap().len(), 2);
        let s3 = FiniteGroup::symmetric(3);
        // Homs S3 -> C2: trivial and sign.
        assert_eq!(enumerate_homs(&s3, &c2).unwrap().len(), 2);
    }

    /// Oracle equivalence against a direct scan of all |H|^|G| maps on a
    /// second tiny case.
    #[test]
    fn c2_to_c4_homs_and_brute_force_oracle() {
        let c2 = FiniteGroup::cyclic(2);
        let c4 = FiniteGroup::cyclic(4);
        let fast = enumerate_homs(&c2, &c4).unwrap().len();
        let mut count = 0;
        for a in 0..4usize {
            for b in 0..4usize {
                let map = [a, b];
                let ok = (0..2).all(|x: usize| {
                    (0..2).all(|y: usize| map[c2.mul(x, y)] == c4.mul(map[x], map[y]))
                });
                if ok {
                    count += 1;
                }
            }
        }
        assert_eq!(fast, count);
        assert_eq!(fast, 2);
    }

    #[test]
    fn conjugation_action() {
        let s3 = FiniteGroup::symmetric(3);
        let conj = ActionTable::conjugation(&s3);
        for p in s3.elements() {
            for m in s3.elements() {
                assert_eq!(conj.apply(p, m), s3.conj(p, m));
            }
        }
        let c4 = FiniteGroup::cyclic(4);
        assert!(ActionTable::conjugation(&c4).is_trivial());
        assert!(ActionTable::conjugation(&FiniteGroup::trivial()).is_trivial());
    }

    #[test]
    fn inversion_action_on_c4() {
        let c2 = FiniteGroup::cyclic(2);
        let c4 = FiniteGroup::cyclic(4);
        let act = ActionTable::new(
            Arc::clone(&c2),
            Arc::clone(&c4),
            vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]],
        )
        .unwrap();
        assert_eq!(act.apply(1, 1), 3);

        let bad = ActionTable::new(
            Arc::clone(&c2),
            Arc::clone(&c4),
            vec![vec![0, 1, 2, 3], vec![0, 1, 1, 3]],
        );
        assert!(matches!(
            bad,
            Err(Error::NotAnAction(ActionDefect::RowNotBijective { p: 1 }))
        ));
    }

    #[test]
    fn subgroup_generated_and_normality() {
        let c4 = FiniteGroup::cyclic(4);
        assert_eq!(Subgroup::generated(&c4, &[]).order(), 1);
        let sq = Subgroup::generated(&c4, &[2]);
        assert_eq!(sq.order(), 2);
        assert!(sq.is_normal());

        let s3 = FiniteGroup::symmetric(3);
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let sub = Subgroup::generated(&s3, &[t]);
        assert_eq!(sub.order(), 2);
        assert!(!sub.is_normal());

        let closure = Subgroup::normal_closure(&s3, &[t]);
        assert_eq!(closure.order(), 6);
        assert!(Subgroup::normal_closure(&s3, &[]).is_trivial());
    }

    #[test]
    fn quotient_and_transversal() {
        let c4 = FiniteGroup::cyclic(4);
        let n = Subgroup::generated(&c4, &[2]);
        let (q, proj) = quotient(&c4, &n).unwrap();
        assert_eq!(q.order(), 2);
        assert!(proj.is_surjective());
        assert_eq!(proj.kernel().elements(), n.elements());

        let s3 = FiniteGroup::symmetric(3);
        let a3: Vec<usize> = s3
            .elements()
            .filter(|&x| s3.element_order(x) != 2)
            .collect();
        let a3 = Subgroup::generated(&s3, &a3);
        assert_eq!(a3.order(), 3);
        let (q, _) = quotient(&s3, &a3).unwrap();
        assert_eq!(q.order(), 2);

        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let h = Subgroup::generated(&s3, &[t]);
        let reps = left_transversal(&s3, &h);
        assert_eq!(reps.len(), 3);
        // Disjoint cover.
        let mut seen = [false; 6];
        for &r in &reps {
            for k in h.elements() {
                let x = s3.mul(r, k);
                assert!(!seen[x]);
                seen[x] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
        assert_eq!(left_transversal(&s3, &Subgroup::full(&s3)), vec![0]);

        let non_normal = quotient(&s3, &h);
        assert!(matches!(non_normal, Err(Error::NotNormal)));
    }

    #[test]
    fn displacement_subgroup() {
        let c2 = FiniteGroup::cyclic(2);
        let c4 = FiniteGroup::cyclic(4);
        let inv_act = ActionTable::new(
            Arc::clone(&c2),
            Arc::clone(&c4),
            vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]],
        )
        .unwrap();
        // Full C2 acting by inversion: displacements m^-2 give {1, a^2}.
        let k = Subgroup::full(&c2);
        let sub = action_commutator_subgroup(&k, &inv_act).unwrap();
        assert_eq!(sub.elements(), vec![0, 2]);
        // Trivial actor subgroup gives the trivial subgroup.
        let sub = action_commutator_subgroup(&Subgroup::trivial(&c2), &inv_act).unwrap();
        assert!(sub.is_trivial());
        // Trivial action gives the trivial subgroup.
        let sub = action_commutator_subgroup(&k, &ActionTable::trivial(&c2, &c4)).unwrap();
        assert!(sub.is_trivial());
    }

    #[test]
    fn automorphism_groups() {
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(automorphism_group(&c2).unwrap().group.order(), 1);
        let c3 = FiniteGroup::cyclic(3);
        assert_eq!(automorphism_group(&c3).unwrap().group.order(), 2);
        let s3 = FiniteGroup::symmetric(3);
        let aut = automorphism_group(&s3).unwrap();
        assert_eq!(aut.group.order(), 6);
        assert!(find_isomorphism(&aut.group, &s3).unwrap().is_some());
    }

    #[test]
    fn subgroup_as_group_keeps_embedding() {
        let s3 = FiniteGroup::symmetric(3);
        let a3: Vec<usize> = s3
            .elements()
            .filter(|&x| s3.element_order(x) != 2)
            .collect();
        let (g, embed) = Subgroup::generated(&s3, &a3).as_group();
        assert_eq!(g.order(), 3);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(
                    embed.apply(g.mul(x, y)),
                    s3.mul(embed.apply(x), embed.apply(y))
                );
            }
        }
    }
}
