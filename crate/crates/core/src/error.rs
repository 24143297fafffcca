//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("generator image map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("identified subgroup is not central: {0}")]
    NotCentral(String),
    #[error("character value lift failed (internal): {0}")]
    LiftFailure(String),
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("character is not invariant: {0}")]
    NotInvariant(String),
    #[error("character does not extend the given one: {0}")]
    NotAnExtension(String),
    #[error("central characters disagree on the intersection: {0}")]
    IncompatibleCentral(String),
    #[error("no defect class found (internal): {0}")]
    DefectClassNotFound(String),
    #[error("central subgroup not contained in kernels: {0}")]
    KernelViolation(String),
    #[error("no canonical character found (internal): {0}")]
    NoCanonicalCharacter(String),
    #[error("action is not coprime: {0}")]
    NotCoprime(String),
    #[error("commutator [x,y] does not lie in N")]
    CommutatorNotInN,
    #[error("[H,K] is not contained in N")]
    CommutatorConditionFails,
    #[error("block is not invariant: {0}")]
    NotInvariantBlock(String),
    #[error("module split failed: {0}")]
    SplitFailure(String),
    #[error("no intertwining matrix exists (internal): {0}")]
    NoIntertwiner(String),
    #[error("projective defect is not scalar (internal): {0}")]
    NonScalarDefect(String),
    #[error("chop budget exceeded after {0} attempts")]
    ChopBudgetExceeded(u32),
    #[error("irreducible-module search incomplete: found {found} of {wanted}")]
    SearchIncomplete { found: usize, wanted: usize },
    #[error("decomposition entry is not a nonnegative integer (internal): {0}")]
    NonIntegralDecomposition(String),
    #[error("Brauer character meets several blocks (internal): {0}")]
    BlockInconsistency(String),
    #[error("subgroup is not a central p-subgroup: {0}")]
    NotCentralP(String),
    #[error("config parse error: {0}")]
    ConfigParse(String),
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
    #[error("{0}")]
    Propagated(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
