use thiserror::Error;

/// Errors raised by constructions whose inputs fail a precondition.
///
/// Checks never return these: a failed check is a report with findings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("conflicting composition entries for `{g}` after `{f}`")]
    ConflictingComposite { g: String, f: String },
    #[error("category table is invalid: {0}")]
    InvalidCategory(String),
    #[error("no pullback of `{f}` and `{g}`")]
    NoPullback { f: String, g: String },
    #[error("no terminal object")]
    NoTerminal,
    #[error("display map category is not structured")]
    NotStructured,
    #[error("no path object for `{0}`")]
    NoPathObject(String),
    #[error("no lift found for square (w={w}, f={f}, p={p}, sigma={sigma})")]
    NoLift {
        w: String,
        f: String,
        p: String,
        sigma: String,
    },
    #[error("lifts `{0}` and `{1}` are not fibrewise homotopic")]
    LiftNotUnique(String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no admissible case: {0}")]
    NoAdmissibleCase(String),
    #[error("ill-typed term: {0}")]
    IllTyped(String),
}

pub type Result<T> = std::result::Result<T, Error>;
