use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("parameters require i<j (got q{}_{})", .i + 1, .j + 1)]
    ParamOrder { i: usize, j: usize },

    #[error("scalar `{0}` is not a unit (exactly one term is required)")]
    NotAUnit(String),

    #[error("no value assigned to parameter {0}")]
    MissingParameter(String),

    #[error("parameter {0} is assigned the value 0")]
    ZeroParameterValue(String),

    #[error("monomial length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("the zero element has no degree")]
    ZeroElement,

    #[error("rewriting exceeded {budget} steps on word {word}; the presentation is not terminating")]
    NonTerminating { word: String, budget: usize },

    #[error("resolution element mixes homological degrees {0} and {1}")]
    MixedDegree(usize, usize),

    #[error("no differential out of homological degree 0")]
    DegreeZero,

    #[error("xi_{} requires an index at most t = {t}", .index + 1)]
    IndexBeyondT { index: usize, t: usize },

    #[error("degree mismatch: cohomology degree {expected}, generator degree {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("monomial {0} is not reduced (exponent reaches N_i for a nilpotent generator)")]
    NotReduced(String),

    #[error("element {0} has a constant term; expected an augmentation-ideal element")]
    NotAugmented(String),

    #[error("bar complex degree {0} is not supported (maximum 3)")]
    DegreeTooHigh(usize),

    #[error("comparison map is only defined on generators of degree 1 or 2 (got {0})")]
    UnsupportedDegree(usize),

    #[error("invalid generator {0}")]
    InvalidGenerator(String),

    #[error("x_{}^N_{} is not braided-central: {witness}", .index + 1, .index + 1)]
    NotBraidedCentral { index: usize, witness: String },

    #[error("rewriting is not confluent on {word}: {left} versus {right}")]
    ConfluenceFailure { word: String, left: String, right: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid presentation: {}", .0.join("; "))]
    Validation(Vec<String>),
}
