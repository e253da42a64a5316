//! Simulation and analysis of two-qubit and N-qubit entanglement decay
//! under decoherence.
//!
//! The crate covers four layers:
//!
//! * [`state_space`] — polarization-vector and density-matrix state
//!   representations with spectral and closed-form positivity checks;
//! * [`measures`] — Wootters concurrence, negativity via partial transpose,
//!   and the PPT separability predicate;
//! * [`dynamics`] — cone trajectories under classical dephasing/relaxation
//!   noise, the N-qubit Kraus dephasing channel, and closed-form GHZ/W
//!   negativities;
//! * [`classify`] — zero-set extraction of entanglement curves and their
//!   topological decay categories A (approaching), B (bouncing),
//!   E (entering) and O (oscillating), plus parameter-grid sweeps.

pub mod classify;
pub mod dynamics;
pub mod error;
pub mod measures;
pub mod pauli;
pub mod state_space;

pub use classify::{
    classify, classify_model, sweep, Category, Classification, ClassifierConfig, DephasingFamily,
    EntanglementCurve, SampledCurve, SweepResult, ZeroSet,
};
pub use dynamics::{
    bwr_rates, concurrence_curve, ghz_state, kraus_dephase, negativity_ghz_closed,
    negativity_w_closed, trajectory, uniform_grid, w_state, ConcurrenceCurve, DephasingFunction,
    ModelParams, NegativityCurve, StateFamily, Trajectory,
};
pub use error::{Error, Result};
pub use measures::{
    concurrence, concurrence_d3, is_separable_ppt, negativity, negativity_w_basis,
    partial_transpose, trace_norm, Partition, WCoherenceVector,
};
pub use state_space::{
    char_poly_coeffs, d3_embed, d3_membership, density_to_pv, is_physical, pv_to_density,
    CharPolyCoeffs, D3Point, DensityMatrix, PolarizationVector, Tolerances,
};
