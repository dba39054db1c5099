use alloc::string::String;

/// Failures reported by the library. Numerical checks that merely miss their
/// threshold are not errors; they produce a failing report instead.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("operands use different scalar backends")]
    BackendMismatch,
    #[error("partition size must be nonnegative")]
    NegativeSize,
    #[error("block has a pole at a resonant value of u")]
    PoleAtResonance,
    #[error("2*sigma is an integer (resonant)")]
    ResonantSigma,
    #[error("u is resonant (u = q^n)")]
    ResonantU,
    #[error("a Pochhammer base has modulus one")]
    UnitModulusBase,
    #[error("argument hits a pole")]
    PoleHit,
    #[error("series did not stabilize within the cutoff")]
    NoConvergence,
    #[error("tau function vanishes; F, G undefined")]
    ZeroTau,
    #[error("a required denominator vanished")]
    SingularLocus,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;
