use alloc::string::String;

/// Errors raised by the library. Variants map onto the CLI exit code 2
/// (usage / precondition) except where a caller decides otherwise.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Shapes do not fit the operation (non-square, mismatched lengths, ...).
    #[error("dimension error: {0}")]
    Dimension(String),
    /// A matrix that must be Hermitian is not.
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    Symmetry {
        /// Largest |m[i][j] - conj(m[j][i])| found.
        deviation: f64,
    },
    /// Input vectors are linearly dependent under the inner product.
    #[error("vector {index} is linearly dependent on its predecessors")]
    Dependence {
        /// Position of the first offending vector.
        index: usize,
    },
    /// Bad argument (overlapping lists, out-of-range index, nonpositive weight...).
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Kernel or law outside its admissible domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Instance exceeds an enumeration / truncation cap.
    #[error("size error: {0}")]
    Size(String),
    /// Singular Gram matrix or similar degeneracy.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// Point outside the support of a density.
    #[error("support error: {0}")]
    Support(String),
    /// A documented precondition of a checker failed.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

macro_rules! arg_err {
    ($($t:tt)*) => { $crate::Error::Argument(alloc::format!($($t)*)) };
}
pub(crate) use arg_err;
