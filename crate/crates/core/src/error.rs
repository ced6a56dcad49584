use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op} is undefined for the zero polynomial")]
    ZeroPolynomial { op: &'static str },
    #[error("{op} requires a non-constant polynomial")]
    ConstantPolynomial { op: &'static str },
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("f is not monic (leading coefficient {leading})")]
    NotMonic { leading: BigInt },
    #[error("f is not square-free (gcd(f, f') is non-constant)")]
    NotSquarefree,
    #[error("f must have odd degree 2g+1 >= 3, got degree {degree}")]
    EvenOrTooSmallDegree { degree: usize },

    #[error("point ({x}, {y}) does not lie on the curve")]
    PointNotOnCurve { x: String, y: String },
    #[error("invalid Mumford pair: {0}")]
    InvalidDivisor(String),

    #[error("form is not primitive: gcd(a, 2b, c) = {gcd}")]
    NotPrimitive { gcd: BigInt },
    #[error("deg h = {deg_h} must be below deg f = {deg_f}")]
    DegreeTooLarge { deg_h: usize, deg_f: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("discriminant mismatch: expected {expected}, got {actual}")]
    DiscriminantMismatch { expected: BigInt, actual: BigInt },
    #[error("ideal is not invertible: gcd(a, 2b, c) = {gcd}")]
    NonInvertible { gcd: BigInt },
    #[error("{a} does not divide b^2 - e^2 D")]
    DivisibilityViolated { a: BigInt },
    #[error("D = {0} must be a negative non-square integer")]
    InvalidDiscriminant(BigInt),
    #[error("integer factorisation of {value} exceeded the work bound")]
    FactorisationFailed { value: BigInt },
    #[error("|disc| = {0} is beyond the reduced-form enumeration range")]
    ClassNumberOutOfRange(BigInt),

    #[error("f({n}) = {value} is not negative")]
    PositiveValue { n: BigInt, value: BigInt },
    #[error("f({n}) = {value} is a perfect square")]
    SquareValue { n: BigInt, value: BigInt },
    #[error("Q is n-primitive at n = {n} but its canonical representative is not; value left indeterminate")]
    IndeterminateRepresentative { n: BigInt },
    #[error("upper end {hi} exceeds the negativity bound n_f = {n_f}")]
    RangeAboveBound { hi: BigInt, n_f: BigInt },
    #[error("no n in [{floor}, {n_f}] reaches order {k}")]
    NotFound { k: u64, floor: BigInt, n_f: BigInt },
}
