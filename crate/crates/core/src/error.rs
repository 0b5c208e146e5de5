use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("total degree {degree} exceeds the cap of {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("not locally finite within caps: {0}")]
    NotLocallyFinite(String),
    #[error("derivation is not locally nilpotent")]
    NotLocallyNilpotent,
    #[error("characteristic polynomial has a non-rational root")]
    IrrationalSpectrum,
    #[error("characteristic polynomial too large for rational root search")]
    SpectrumTooLarge,
    #[error("matrix has entries outside Q")]
    NonRationalEntries,
    #[error("endomorphism is not elementary")]
    NotElementary,
    #[error("elementary automorphism has a zero unit coefficient")]
    NonUnit,
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("solution sets have different shapes or degree bounds")]
    IncomparableShapes,
    #[error("endomorphism does not match the solution set's shape")]
    ShapeMismatch,
    #[error("constraint solver stalled: {0}")]
    SolverIncomplete(String),
    #[error("solution component failed the substitution check: {0}")]
    UnsoundComponent(String),
}
