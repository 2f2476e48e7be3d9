use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),
    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("weight has length {got}, expected rank {rank}")]
    WeightLength { got: usize, rank: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("unsupported Cartan type for this operation: {0}")]
    UnsupportedType(String),
    #[error("crystal axiom ({axiom}) violated at element {element} for node {node}: {detail}")]
    CrystalAxiom { axiom: u8, element: usize, node: usize, detail: String },
    #[error("invalid crystal: {0}")]
    InvalidCrystal(String),
    #[error("crystals are over different Cartan data")]
    MismatchedCartan,
    #[error("crystal is not normal: {0}")]
    NotNormal(String),
    #[error("Schützenberger recursion inconsistent: {0}")]
    RecursionInconsistency(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("cannot parse word: {0}")]
    WordParse(String),
    #[error("operation not supported for group kind {0}")]
    UnsupportedKind(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("subset is not invariant under the generators: {0}")]
    NotInvariant(String),
    #[error("point ceiling of {ceiling} exceeded ({needed} points needed)")]
    CeilingExceeded { ceiling: usize, needed: usize },
    #[error("invalid category data: {0}")]
    InvalidCategory(String),
    #[error("invalid fiber system: {0}")]
    InvalidFiberSystem(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
