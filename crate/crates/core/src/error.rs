use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("{line}:{col}: {msg}")]
    AlgebraFile { line: usize, col: usize, msg: String },

    #[error("relation `{0}` is not homogeneous")]
    Inhomogeneous(String),

    #[error("relation `{0}` has degree 1; present the algebra on fewer variables")]
    LinearRelation(String),

    #[error("relation `{0}` has a nonzero constant term")]
    UnitRelation(String),

    #[error("degree cap {cap} is below the required degree {needed}")]
    CapTooSmall { cap: usize, needed: usize },

    #[error("operation needs degree {needed} but the algebra is only known up to {cap}")]
    BeyondCap { cap: usize, needed: usize },

    #[error("algebra is not artinian within its degree cap {0}")]
    NotArtinian(usize),

    #[error("element must be a nonzero nonunit: {0}")]
    ZeroOrUnit(String),

    #[error("element is a unit")]
    Unit,

    #[error("zero has no initial form")]
    NoInitialForm,

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("the maximal ideal does not satisfy m^4 = 0")]
    NotShort,

    #[error("Hilbert series is not balanced (H(-1) = {0})")]
    Unbalanced(i64),

    #[error("element `{0}` lies in m^2")]
    InSquare(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("inconsistent degrees in module presentation: {0}")]
    DegreeMismatch(String),

    #[error("differentials do not compose to zero at position {0}")]
    NotAComplex(usize),

    #[error("no degree-one solution d of c^2 = a*d")]
    NoHomogeneousSolution,

    #[error("regular sequence check failed: {0}")]
    NotRegular(String),

    #[error("constant term is not a unit")]
    NonUnitConstant,

    #[error("window end {end} exceeds the known order {order}")]
    WindowExceedsOrder { end: usize, order: usize },

    #[error("Betti table row {0} is incomplete within the degree cap")]
    Incomplete(usize),

    #[error("variable lists differ: {0}")]
    VariableMismatch(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
