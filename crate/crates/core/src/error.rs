use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("ring universes differ: {left} vs {right} variables")]
    UniverseMismatch { left: usize, right: usize },

    #[error("variable y{index} is outside the ring over {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("word is not in the kernel of deleting the last generator")]
    NotInKernel,

    #[error("invalid tip path `{0}`")]
    InvalidTip(String),

    #[error("tip naming: {0}")]
    TipNaming(String),

    #[error("a closed grope tree needs a surface at the bottom")]
    ClosedLeaf,

    #[error("multi-index repeats component {0}")]
    RepeatedIndex(usize),

    #[error("unknown component {0}")]
    UnknownComponent(String),

    #[error("operation needs at least {needed} components, got {got}")]
    TooFewComponents { needed: usize, got: usize },

    #[error("longitude of `{0}` mentions its own meridian")]
    SelfLongitude(String),

    #[error("meridian alphabets collide on `{0}`")]
    AlphabetCollision(String),

    #[error("solid-torus link has no wedge word")]
    MissingWedge,

    #[error("{0} is not almost homotopically trivial")]
    NotAlmostTrivial(&'static str),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error("{requested} generators exceeds the guard of {limit}")]
    TooManyGenerators { requested: usize, limit: usize },

    #[error("invalid link file: {0}")]
    LinkFile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
