use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("degenerate form: boundary is not a rational homology sphere")]
    DegenerateForm,

    #[error("step not applicable at vertex {0}")]
    StepNotApplicable(usize),

    #[error("algorithm inapplicable: {0}")]
    Inapplicable(String),

    #[error("not an L-space slope: {p}/{q} is below 2g-1 = {bound}")]
    NotLSpaceSlope { p: i64, q: i64, bound: i64 },

    #[error("oracle too large: {size} box vectors exceed the limit of {limit}")]
    OracleTooLarge { size: u128, limit: u128 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors meaning the input was fine but the method does not
    /// apply to it (too many bad vertices, slope below the L-space bound, ...).
    pub fn is_inapplicable(&self) -> bool {
        matches!(
            self,
            Error::Inapplicable(_)
                | Error::NotLSpaceSlope { .. }
                | Error::OracleTooLarge { .. }
                | Error::DegenerateForm
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
