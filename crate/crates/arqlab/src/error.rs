//! Error type shared by every layer of the crate.
//!
//! Semantic failures (bad input, missing precondition, search giving up) are
//! reported through [`Error`]; violations of internal invariants that should
//! be unreachable panic instead.

use thiserror::Error;

/// Everything that can go wrong when constructing or analysing an algebra.
#[derive(Error, Debug)]
pub enum Error {
    /// Two objects over different scalar fields were combined.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    /// A prime-field characteristic is too small for a trace-form computation.
    #[error("characteristic too small: {0}")]
    CharacteristicTooSmall(String),

    /// A relation mixes non-parallel paths, has a term of length < 2, or
    /// refers to arrows that do not compose.
    #[error("malformed relation: {0}")]
    MalformedRelation(String),

    /// The quotient of the path algebra is not finite dimensional within the
    /// configured length bound.
    #[error("not finite dimensional: {0}")]
    NotFiniteDimensional(String),

    /// The relation ideal is not admissible (its positive-length part is not
    /// nilpotent, e.g. a relation like x^2 - x^3).
    #[error("relations not admissible: {0}")]
    NotAdmissible(String),

    /// A subspace presented as an ideal is not closed under multiplication.
    #[error("not a two-sided ideal: {0}")]
    NotTwoSided(String),

    /// The direct-sum splitting search exhausted its candidate endomorphisms.
    #[error("decomposition stalled: {0}")]
    DecompositionStalled(String),

    /// The isomorphism search exhausted its retry budget without a definite
    /// answer. Distinct from a proven "not isomorphic".
    #[error("isomorphism search inconclusive: {0}")]
    IsoSearchInconclusive(String),

    /// The translate of a projective (or cotranslate of an injective) was
    /// requested.
    #[error("translate undefined: {0}")]
    UndefinedTranslate(String),

    /// The socle of Ext^1(tau^{-1} X, X) as a module over the endomorphism
    /// ring is not one dimensional, so no almost split sequence can be
    /// normalised.
    #[error("almost split socle not unique: {0}")]
    SocleNotUnique(String),

    /// Knitting exceeded the node or dimension budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// An operation that needs a selfinjective algebra got something else.
    #[error("not selfinjective: {0}")]
    NotSelfinjective(String),

    /// No stable slice satisfying the requested constraints exists.
    #[error("no slice found: {0}")]
    NoSliceFound(String),

    /// A quiver automorphism used as a twist does not preserve the relations
    /// or is not invertible.
    #[error("invalid twist: {0}")]
    InvalidTwist(String),

    /// Reflection was requested at a vertex that is not a sink.
    #[error("not a sink: {0}")]
    NotASink(String),

    /// An operation that needs an acyclic Gabriel quiver got a cyclic one.
    #[error("not triangular: {0}")]
    NotTriangular(String),

    /// A certificate clause evaluated to false on the given input. The
    /// message names the first violated clause.
    #[error("certificate check failed: {0}")]
    CheckFailed(String),

    /// The valued stable translation quiver has a valuation other than (1,1)
    /// somewhere, so no simply laced tree class exists.
    #[error("not simply laced: {0}")]
    NotSimplyLaced(String),

    /// The orbit graph of the stable part is not a Dynkin tree of type A, D
    /// or E.
    #[error("tree class not Dynkin: {0}")]
    NotDynkin(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    /// The textual algebra format could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A command-line or constructor parameter is out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A verification pass over a freshly built object failed. This means a
    /// bug in the library, never bad user input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// An input/output problem while reading or writing algebra files.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
