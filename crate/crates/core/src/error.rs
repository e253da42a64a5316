//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("expected matrix dimension {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix dimension {0} is not a power of two")]
    NotQubitSized(usize),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("trace deviates from 1 by {deviation:.3e}")]
    TraceNotOne { deviation: f64 },

    #[error("state is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    Unphysical { min_eigenvalue: f64 },

    #[error("qubit index {index} out of range for {qubits}-qubit state")]
    QubitIndexOutOfRange { index: usize, qubits: usize },

    #[error("point (n_xx={n_xx}, n_xy={n_xy}, n_zz={n_zz}) lies outside the dynamical cone")]
    OutsideD3 { n_xx: f64, n_xy: f64, n_zz: f64 },

    #[error("state has weight {weight:.3e} outside the cat-state subspace")]
    CatSubspaceLeak { weight: f64 },

    #[error("state has weight {weight:.3e} outside the single-excitation subspace")]
    ExcitationSubspaceLeak { weight: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("time {0} is negative")]
    NegativeTime(f64),

    #[error("time {t} exceeds tabulated range [0, {t_end}]")]
    BeyondTabulatedRange { t: f64, t_end: f64 },

    #[error("dephasing value {0} lies outside [-1, 1]")]
    ZetaOutOfRange(f64),

    #[error("trajectory leaves the physical cone at t={t} (n_xx={n_xx}, n_zz={n_zz})")]
    UnphysicalTrajectory { t: f64, n_xx: f64, n_zz: f64 },

    #[error("curve starts separable: C(0)={c0:.3e} <= epsilon={epsilon:.3e}")]
    StartsSeparable { c0: f64, epsilon: f64 },

    #[error(
        "zero set touches the horizon t_max={t_max} and tail permanence cannot be \
         confirmed; extend the horizon or supply an analytic dephasing form"
    )]
    HorizonLimited { t_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
