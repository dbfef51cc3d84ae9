use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate interpolation nodes: argument {0} appears more than once")]
    DegenerateNodes(i64),

    #[error("interpolation needs at least one point")]
    NoNodes,

    #[error(
        "sequence inconsistent with claimed period/degree: coefficient of z^{degree} is {value}, expected 0"
    )]
    InconsistentSequence { degree: usize, value: String },

    #[error("sequence too short: {given} terms given, period {period} and degree {degree} need at least {needed}")]
    SequenceTooShort {
        given: usize,
        needed: usize,
        period: usize,
        degree: usize,
    },

    #[error("instance too large for brute force: {work} exceeds the budget of {budget} (raise it with --budget)")]
    TooLarge { work: String, budget: u64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("compatibility undefined: vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("no nowhere-harmonic coloring exists: vertex {0} is a single-vertex component")]
    SingletonComponent(usize),

    #[error("period not found within candidate set; largest holdout residual per candidate: {0}")]
    PeriodNotFound(String),

    #[error("fit inconsistent with reciprocity integrality: value {0} at -{1}")]
    NonIntegral(String, u64),

    #[error("fit was not verified on held-out samples")]
    UnverifiedFit,

    #[error("empty region: a constant orientation selects an orthant the Laplacian image never meets")]
    ConstantOrientation,

    #[error("orientation has {got} signs but the graph has {expected} vertices")]
    OrientationLength { got: usize, expected: usize },

    #[error("orbit identity violated at both offsets")]
    OrbitIdentityViolated,

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
