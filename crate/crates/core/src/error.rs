use thiserror::Error;

/// Errors raised by the laboratory.
///
/// The CLI maps [`Error::ResourceRefusal`] to exit status 3 and every
/// other variant reached during argument handling to status 2.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {0} outside supported range 1..={max}", max = crate::cube::Dimension::MAX)]
    Dimension(u32),

    #[error("{what} = {value} out of range: {detail}")]
    OutOfRange {
        what: &'static str,
        value: String,
        detail: String,
    },

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("side condition violated: {0}")]
    SideCondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource refusal: {0}")]
    ResourceRefusal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn out_of_range(
        what: &'static str,
        value: impl ToString,
        detail: impl Into<String>,
    ) -> Self {
        Error::OutOfRange {
            what,
            value: value.to_string(),
            detail: detail.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
