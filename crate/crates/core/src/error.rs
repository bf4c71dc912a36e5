use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Exact integer arithmetic left the checked width. The computation is
    /// abandoned rather than continued with a wrapped value.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("resource limit exceeded: {what} needs {requested}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Memory budget shared by the generators. Counts are in symbols/points, one
/// byte per symbol for words and 24 bytes per walk point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_bytes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_bytes: 2 << 30,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits { max_bytes: u64::MAX }
    }

    pub fn check(&self, what: &'static str, bytes: u64) -> Result<()> {
        if bytes > self.max_bytes {
            Err(Error::ResourceLimit {
                what,
                requested: bytes,
                limit: self.max_bytes,
            })
        } else {
            Ok(())
        }
    }
}
