use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error in group spec near `{0}`")]
    GroupSyntax(String),

    #[error("cyclic factor order must be at least 2, got `{0}`")]
    ModulusTooSmall(String),

    #[error("free rank exponent must be at least 1, got `{0}`")]
    RankTooSmall(String),

    #[error("cannot parse group element `{0}`")]
    ElementSyntax(String),

    #[error("element {element} does not belong to group {group}")]
    DescriptorMismatch { element: String, group: String },

    #[error("degree word must be nonempty")]
    EmptyWord,

    #[error("grading tuple must be nonempty")]
    EmptyTuple,

    #[error("operation requires a torsion-free group, got {0}")]
    Torsion(String),

    #[error("operation requires pairwise distinct tuple entries")]
    RepeatedEntries,

    #[error("{0} is not in the support of the grading")]
    NotInSupport(String),

    #[error("word {0} is not a graded monomial identity")]
    NotAnIdentity(String),

    #[error("generator {0} is not a graded monomial identity")]
    GeneratorNotIdentity(String),

    #[error("invalid bound: {0}")]
    InvalidBound(String),

    #[error("unsupported matrix size {0}")]
    UnsupportedSize(usize),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
