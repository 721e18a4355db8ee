use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto exit codes:
/// parse and lookup failures are usage errors, `Jacobi` means the input
/// is not a Lie algebra, `Unsupported` marks queries outside the scope
/// of a command (for example symplecticness of an odd-dimensional
/// algebra).
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data or an argument outside a precondition.
    #[error("input error: {0}")]
    Input(String),

    /// Text that failed to parse; `location` pins down where.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// The structure constants violate the Jacobi identity. The triple
    /// is the first basis combination where the cyclic sum is nonzero.
    #[error("jacobi identity fails on (e{i}, e{j}, e{k}): cyclic sum {defect}")]
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        defect: String,
    },

    /// A well-formed query the library refuses to answer.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Name not present in the built-in catalog.
    #[error("unknown catalog entry: {0}")]
    UnknownCatalog(String),

    /// An internal consistency check failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
