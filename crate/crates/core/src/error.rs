use num_bigint::BigInt;
use thiserror::Error;

use crate::kodaira::KodairaType;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("valuation of zero is infinite")]
    ZeroInput,
    #[error("{0} is not prime")]
    BadPrime(BigInt),
    #[error("place is not usable here: {0}")]
    BadPlace(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("discriminant vanishes identically")]
    SingularSurface,
    #[error("residue characteristic {0} disabled by configuration")]
    ResidueCharacteristic(u64),
    #[error("component index {index} is not a simple component of {kodaira}")]
    BadComponent { kodaira: KodairaType, index: usize },
    #[error("no degenerate fibers: Euler number 0")]
    NotElliptic,
    #[error("Euler number {0} is not divisible by 12")]
    InconsistentConfig(i64),
    #[error("malformed fiber multiset: {0}")]
    BadInput(String),
    #[error("base change map is constant")]
    ConstantMap,
    #[error("Riemann-Hurwitz data give a non-integral genus")]
    NonIntegerGenus,
    #[error("ramification index {0} not supported")]
    UnsupportedIndex(u32),
    #[error("surface is not rational (chi = {0})")]
    WrongChi(i64),
    #[error("point is not on the surface")]
    NotOnSurface,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("fiber configuration does not belong to this model")]
    ConfigMismatch,
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("t = {t} lies under a degenerate fiber of type {kodaira}")]
    DegenerateFiber { t: Rat, kodaira: KodairaType },
    #[error("t = {0} is a pole of the coefficients")]
    PoleOfCoefficient(Rat),
    #[error("prime {0} has bad reduction")]
    BadReduction(u64),
    #[error("prime {0} is too small (p > 3 required)")]
    SmallPrime(u64),
    #[error("generator has finite order")]
    TorsionGenerator,
    #[error("embedding does not map the curve into the surface")]
    EmbeddingInvalid,
    #[error("fiber curve of the second fibration is singular")]
    SingularFiberCurve,
}

pub type Result<T> = std::result::Result<T, Error>;
