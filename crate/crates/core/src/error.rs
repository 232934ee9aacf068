use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants carry the parameter (curve parameter `t` or arclength `s`) at
/// which the failure was detected so that callers can report it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("jet division by a value too close to zero ({0:e})")]
    DivisionNearZero(f64),

    #[error("jet square root of non-positive value ({0:e})")]
    SqrtNonPositive(f64),

    #[error("parameter {t} outside the domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },

    #[error("PoleEncountered: curve has a pole at or near t = {t}")]
    PoleEncountered { t: f64 },

    #[error("NonSpacelikeVelocity: velocity at t = {t} is {character}")]
    NonSpacelikeVelocity { t: f64, character: &'static str },

    #[error("DegenerateFrame: level {level} residual vanishes at s = {s}")]
    DegenerateFrame { level: u8, s: f64 },

    #[error("NonSpacelikePrincipalNormal: g(T', T') = {g:e} at s = {s}")]
    NonSpacelikePrincipalNormal { s: f64, g: f64 },

    #[error("FrameDriftExceeded: Gram drift {drift:e} at s = {s}")]
    FrameDriftExceeded { s: f64, drift: f64 },

    #[error("IllConditionedFit: design matrix condition number {condition:e}")]
    IllConditionedFit { condition: f64 },

    #[error("NotOnHyperbolicSphere: g(y, y) = {g} at t = {t}")]
    NotOnHyperbolicSphere { t: f64, g: f64 },

    #[error("the sign eps = g(B1, B1) changes between samples")]
    EpsilonChanges,

    #[error("unknown curve '{0}'")]
    UnknownCurve(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
