use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Internal consistency failures (orthogonality, lifting bounds) are reported
/// as [`Error::Internal`]; they indicate a bug rather than bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{what} exceeds cap: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is reducible over Q")]
    Reducible,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("element or embedding belongs to a different number field")]
    FieldMismatch,
    #[error("inconsistent group carrier: {0}")]
    InconsistentCarrier(String),
    #[error("element not in group")]
    NotInGroup,
    #[error("not a subgroup of this group")]
    NotASubgroup,
    #[error("no suitable prime found below {0}")]
    PrimeSearchExhausted(u64),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("vectors are linearly dependent")]
    DependentBasis,
    #[error("homomorphism images do not generate the target group")]
    NotGenerating,
    #[error("generating multiset is not closed under inverses")]
    NotSymmetric,
    #[error("spectra were computed with different cutoffs ({0} vs {1})")]
    CutoffMismatch(usize, usize),
    #[error("spectrum kind does not match comparison mode {0}")]
    KindMismatch(String),
    #[error("number field is not totally real")]
    NotTotallyReal,
    #[error("form is not admissible over a field other than Q")]
    Inadmissible,
    #[error("point is not in the negative cone (B(x,x) = {0})")]
    NotNegative(String),
    #[error("distance quotient {0} below 1 - 1e-12")]
    ToleranceBreach(String),
    #[error("degenerate composite field: {0}")]
    DegenerateComposite(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("job schema violation: {0}")]
    Schema(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
