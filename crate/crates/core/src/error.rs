use num_bigint::BigUint;
use thiserror::Error;

use crate::field::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed field `{0}` (expected `QQ` or `fp:<prime>`)")]
    FieldSyntax(String),
    #[error("modulus {0} is not prime")]
    NotPrime(String),
    #[error("modulus {0} exceeds the supported 64-bit range")]
    ModulusTooLarge(String),
    #[error("malformed scalar literal `{0}`")]
    FieldLiteral(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no primitive {k}-th root of unity in {field}")]
    NoRootExists { field: FieldSpec, k: u64 },
    #[error("operands belong to different fields or rings")]
    FieldMismatch,

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable x{index} (ring has {nvars} variables)")]
    UnknownVariable { index: usize, nvars: usize },
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has wrong shape: {0}")]
    Shape(String),

    #[error("need at least {required} samples, got {given}")]
    NotEnoughSamples { required: BigUint, given: usize },
    #[error("sample points are not pairwise distinct")]
    DuplicateSamples,
    #[error("slice points are not pairwise distinct")]
    DuplicatePoints,
    #[error("sectional generators require a principal ideal")]
    NotPrincipal,
    #[error("an ideal needs at least one generator")]
    EmptyIdeal,
    #[error("slicing needs at least {0} variables")]
    TooFewVariables(usize),

    #[error("{what} of size {size} exceeds the feasibility cap {cap}")]
    FeasibilityCapExceeded {
        what: String,
        size: BigUint,
        cap: u64,
    },
    #[error("Groebner basis grew beyond {0} elements")]
    CapExceeded(usize),
    #[error("cofactor certificate failed exact re-verification")]
    CertificateMismatch,

    #[error("all sectional generators are constant; the generator would lie in K[x1]")]
    InconsistentWithHypothesis,
    #[error("{drops} drop points exceed the allowed {allowed}")]
    TooManyDropPoints { drops: usize, allowed: usize },
    #[error("no rational function with the requested degree bounds fits the nodes")]
    NoInterpolant,
    #[error("reconstruction failed verification: {0}")]
    VerificationFailed(String),
    #[error("slice dataset is empty")]
    DegenerateDataset,
    #[error("invalid dataset: {0}")]
    Dataset(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
