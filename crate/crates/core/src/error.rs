use thiserror::Error;

/// Operational failures. Certification verdicts are not errors: they are
/// returned as report values with witnesses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse Cartan type label `{0}`")]
    BadCartanLabel(String),

    #[error("invalid Cartan matrix: {0}")]
    BadCartanMatrix(String),

    #[error("Cartan matrix `{label}` is not of finite type: {submatrix}")]
    NotFiniteType { label: String, submatrix: String },

    #[error("Weyl group order exceeds the cap of {cap}")]
    GroupTooLarge { cap: usize },

    #[error("simple root index {0} out of range")]
    BadSimpleRoot(usize),

    #[error("braid order is undefined for a simple root paired with itself ({0})")]
    EqualSimpleRoots(usize),

    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),

    #[error("the given element set is not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("elements have mixed lengths: {0}")]
    MixedLengths(String),

    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("edge references unknown vertex id `{0}`")]
    DanglingEdge(String),

    #[error("duplicate edge ({src} -> {dst}, label {label})")]
    DuplicateEdge { src: String, dst: String, label: usize },

    #[error("edge label {label} out of range for Cartan type of rank {rank}")]
    BadEdgeLabel { label: usize, rank: usize },

    #[error("rank inference failed: {0}")]
    RankInference(String),

    #[error("graph is not valid for this operation: {0}")]
    InvalidGraph(String),

    #[error("path enumeration exceeded the budget of {0} paths")]
    PathBudget(usize),

    #[error("paths with equal Weyl element but different degrees: {0}")]
    DegreeInconsistency(String),

    #[error("Knop action is not well defined: {0}")]
    ActionUndefined(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("weights must be given in the simple-root basis for this operation")]
    WeightBasisUnsupported,

    #[error("graph JSON is invalid at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("{0}")]
    Io(String),
}
