use thiserror::Error;

/// Errors raised by the term language, the algebra and the front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("operator `{name}` expects {expected} argument(s), got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("not a Lyndon-Shirshov word: {0}")]
    NotLyndon(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a Lie element: leading word {0} is not Lyndon-Shirshov")]
    NotLie(String),

    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },

    #[error("instance too large: {0}")]
    SizeOverflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
