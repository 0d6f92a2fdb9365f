use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown generator `{0}` for this presentation")]
    UnknownGenerator(String),
    #[error("the zero element has no multidegree")]
    ZeroElement,
    #[error("degree {got} exceeds the requested split bound {bound}")]
    DegreeTooLarge { got: String, bound: String },
    #[error("operands belong to different presentations")]
    PresetMismatch,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("multi-index hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("element is not hermitian")]
    NotHermitian,
    #[error("degree cap {cap} is below half the target degree {need}")]
    CapTooSmall { cap: String, need: String },
    #[error("rational rounding could not preserve positive semidefiniteness")]
    RoundingLostPSD,
    #[error("bad representation size: {0}")]
    BadSize(String),
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("multidegree {0} is not even in every component")]
    OddDegree(String),
    #[error("edge polynomial is not real: {0}")]
    NonRealPolynomial(String),
    #[error("shifted edge polynomial is not real on the real line: {0}")]
    NonRealShiftedPolynomial(String),
    #[error("shifted resolvent matrix is numerically singular")]
    SingularResolvent,
    #[error("operation requires the commutative preset")]
    NotCommPreset,
    #[error("operation not supported for this representation: {0}")]
    UnsupportedRepresentation(String),
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("inv() may only wrap products of denominator atoms: {0}")]
    BadInverse(String),
    #[error("expression is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
