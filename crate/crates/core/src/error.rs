//! Error types for the whole crate.
//!
//! Every validation failure carries a witness: the concrete element(s) at
//! which the axiom broke. Downstream code and tests match on these rather
//! than parsing messages.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Why a multiplication table failed group validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupDefect {
    #[error("table is not square: row {row} has length {len}, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("entry [{row}][{col}] = {value} is out of range 0..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {x} has no two-sided inverse")]
    NoInverse { x: usize },
    #[error("duplicate label {label:?}")]
    DuplicateLabel { label: String },
    #[error("label count {len} does not match order {order}")]
    LabelCount { len: usize, order: usize },
}

/// Why a table failed action validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionDefect {
    #[error("row for actor {p} is not a bijection of the space")]
    RowNotBijective { p: usize },
    #[error("row for actor {p} is not multiplicative at ({m1}, {m2})")]
    RowNotHom { p: usize, m1: usize, m2: usize },
    #[error("identity actor moves element {m}")]
    IdentityRowMoves { m: usize },
    #[error("action of product {p}*{q} disagrees with composition at {m}")]
    Composition { p: usize, q: usize, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(GroupDefect),
    #[error("exhaustive check bound exceeded for {what}: {actual} > {bound}")]
    BoundExceeded {
        what: &'static str,
        actual: usize,
        bound: usize,
    },
    #[error("not a homomorphism: map({x}*{y}) != map({x})*map({y})")]
    NotAHom { x: usize, y: usize },
    #[error("not an action: {0}")]
    NotAnAction(ActionDefect),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("mismatched components: {0}")]
    Mismatch(String),

    #[error("boundary is not an epimorphism")]
    NotEpi,
    #[error("kernel element {k} is not central (fails against {m})")]
    KernelNotCentral { k: usize, m: usize },

    #[error("CM1 fails at p = {p}, m = {m}")]
    Cm1Violation { p: usize, m: usize },
    #[error("CM2 fails at m = {m}, n = {n}")]
    Cm2Violation { m: usize, n: usize },
    #[error("morphism square does not commute at m = {m}")]
    SquareNotCommuting { m: usize },
    #[error("morphism is not equivariant at p = {p}, m = {m}")]
    NotEquivariant { p: usize, m: usize },

    #[error("boundary complex fails: d1(d2({l})) is not the identity")]
    NotAComplex { l: usize },
    #[error("image of {which} is not a normal subgroup")]
    ImageNotNormal { which: &'static str },
    #[error("{which} is not equivariant at p = {p}, x = {x}")]
    BoundaryNotEquivariant {
        which: &'static str,
        p: usize,
        x: usize,
    },
    #[error("PL1 fails at (m0, m1) = ({m0}, {m1})")]
    Pl1Violation { m0: usize, m1: usize },
    #[error("PL2 fails at (l0, l1) = ({l0}, {l1})")]
    Pl2Violation { l0: usize, l1: usize },
    #[error("PL3 ({}) fails at ({m0}, {m1}, {m2})", if *.second { "second identity" } else { "first identity" })]
    Pl3Violation {
        second: bool,
        m0: usize,
        m1: usize,
        m2: usize,
    },
    #[error("PL4 ({}) fails at l = {l}, m = {m}", if *.second { "second identity" } else { "first identity" })]
    Pl4Violation { second: bool, l: usize, m: usize },
    #[error("PL5 fails at p = {p}, (m0, m1) = ({m0}, {m1})")]
    Pl5Violation { p: usize, m0: usize, m1: usize },
    #[error("2-crossed morphism square at level {level} does not commute at x = {x}")]
    X2Square { level: u8, x: usize },
    #[error("2-crossed morphism not equivariant at level {level}, p = {p}, x = {x}")]
    X2NotEquivariant { level: u8, p: usize, x: usize },
    #[error("2-crossed morphism does not preserve the lifting at ({m0}, {m1})")]
    X2LiftingMismatch { m0: usize, m1: usize },
    #[error("Peiffer lifting is not trivial: entry ({m0}, {m1}) is nonidentity")]
    LiftingNotTrivial { m0: usize, m1: usize },
    #[error("lifting value at ({n0}, {n1}) escapes the preimage of the kernel")]
    LiftingEscapesKernel { n0: usize, n1: usize },

    #[error("undeclared symbol {symbol:?}")]
    UndeclaredSymbol { symbol: String },
    #[error("duplicate generator {name:?}")]
    DuplicateGenerator { name: String },
    #[error("relator cap exceeded: {count} relators, cap {cap}")]
    RelatorCapExceeded { count: usize, cap: usize },

    #[error("strategy {requested:?} does not apply: {reason}")]
    StrategyMismatch {
        requested: &'static str,
        reason: String,
    },
    #[error("construction is undecided at the coset limit")]
    NotDecided,
    #[error("map is not well defined: {witness}")]
    NotWellDefined { witness: String },
    #[error("universal factorization is not unique: {count} candidates")]
    NotUnique { count: usize },
    #[error("no universal factorization: {reason}")]
    NoFactorization { reason: String },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unresolved reference {name:?}")]
    UnresolvedReference { name: String },
    #[error("duplicate name {name:?}")]
    DuplicateName { name: String },
    #[error("in object {name:?}: {source}")]
    InObject {
        name: String,
        #[source]
        source: Box<Error>,
    },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Attach the name of the workspace object being validated.
    pub fn in_object(self, name: &str) -> Error {
        Error::InObject {
            name: name.to_string(),
            source: Box::new(self),
        }
    }
}
