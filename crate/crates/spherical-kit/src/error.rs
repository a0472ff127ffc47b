use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidGroupSpec(String),

    #[error("unknown simple root '{0}'")]
    UnknownRoot(String),

    #[error("unknown spherical root '{0}'")]
    UnknownSigma(String),

    #[error("unknown colour '{0}'")]
    UnknownColour(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vector {0} does not solve the lattice equations")]
    OutsideLattice(String),

    #[error("completion cap exceeded ({what}: reached {reached}, cap {cap}); raise SPHERICAL_KIT_CAP to continue")]
    CapExceeded {
        what: &'static str,
        reached: u64,
        cap: u64,
    },

    #[error("colour subset {{{0}}} is not distinguished")]
    NotDistinguished(String),

    #[error("colour subset {{{0}}} lacks the star property: quotient roots are not a lattice basis")]
    StarFails(String),

    #[error("system is not valid: {0}")]
    InvalidSystem(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("diagram convention unsatisfiable: {0}")]
    Layout(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
