use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid layer G({r}, {n}): need n >= r + 2")]
    InvalidLayer { r: u64, n: u64 },

    #[error("node {0} is not in the graph")]
    UnknownNode(u64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("moduli {first} and {second} are not coprime (gcd {gcd})")]
    NotCoprime { first: u64, second: u64, gcd: u64 },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("static model gave up after {draws} draws with {edges} of {target} edges placed")]
    GeneratorExhausted { draws: u64, edges: usize, target: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for systems rejected because two moduli share a factor.
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::NotCoprime { .. })
    }
}
