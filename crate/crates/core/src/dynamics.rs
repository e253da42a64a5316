//! Decoherence dynamics: cone trajectories under classical
//! dephasing/relaxation noise, and N-qubit dephasing through a two-operator
//! Kraus channel with closed-form negativities for GHZ and W states.
//!
//! Conventions adopted here:
//!
//! * The damped-cosine dephasing function makes `zeta` momentarily
//!   negative; coherence magnitudes always enter through `|zeta|`, while
//!   the signed value enters the Kraus operator (its completeness only
//!   needs `zeta^2 <= 1`).
//! * Both qubits share the coupling and the dephasing function by default;
//!   asymmetric per-qubit rates remain available through [`ModelParams`].
//! * The GHZ negativity decays as `|zeta|^N / 2`. A fixed-cubic variant
//!   (which agrees at N = 3) is kept behind [`GhzDecayExponent::Cubic`];
//!   the brute-force channel-plus-partial-transpose route in the test
//!   suite confirms the qubit-count exponent.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state_space::{d3_membership, DensityMatrix, D3Point};

/// Longitudinal and pure-dephasing relaxation rates of one qubit.
/// The transverse rate is derived: `Gamma_2 = Gamma_1/2 + Gamma_phi`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct QubitRates {
    pub gamma1: f64,
    pub gamma_phi: f64,
}

impl QubitRates {
    pub fn gamma2(&self) -> f64 {
        self.gamma1 / 2.0 + self.gamma_phi
    }
}

/// Redfield-theory rates from the noise power spectrum:
/// `Gamma_1 = g^2 sin^2(theta) S(B) / 2`, `Gamma_phi = g^2 cos^2(theta) S(0) / 2`.
///
/// `theta` is the angle between the energy axis and the noise axis:
/// `theta = 0` is pure dephasing, `theta = pi/2` transverse noise.
pub fn bwr_rates(g: f64, theta: f64, s0: f64, s_b: f64) -> Result<QubitRates> {
    if g < 0.0 || s0 < 0.0 || s_b < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "coupling and spectra must be non-negative (g={g}, S0={s0}, SB={s_b})"
        )));
    }
    let sin = theta.sin();
    let cos = theta.cos();
    Ok(QubitRates {
        gamma1: g * g * sin * sin * s_b / 2.0,
        gamma_phi: g * g * cos * cos * s0 / 2.0,
    })
}

/// Two-qubit classical-noise model: initial Werner purity `r`, noise-axis
/// angle, coupling, static field, spectrum values, and the per-qubit rates
/// they induce.
#[derive(Copy, Clone, Debug)]
pub struct ModelParams {
    pub r: f64,
    pub theta: f64,
    pub g: f64,
    pub b_field: f64,
    pub s0: f64,
    pub s_b: f64,
    pub rates_a: QubitRates,
    pub rates_b: QubitRates,
}

impl ModelParams {
    /// Both qubits share `g`, `theta` and the spectra.
    pub fn symmetric(r: f64, theta: f64, g: f64, b_field: f64, s0: f64, s_b: f64) -> Result<Self> {
        check_purity(r)?;
        let rates = bwr_rates(g, theta, s0, s_b)?;
        Ok(Self {
            r,
            theta,
            g,
            b_field,
            s0,
            s_b,
            rates_a: rates,
            rates_b: rates,
        })
    }

    /// Bypass the spectral route and fix the total longitudinal rate
    /// directly (split evenly between the qubits).
    pub fn from_rates(r: f64, gamma1_total: f64) -> Result<Self> {
        check_purity(r)?;
        if gamma1_total < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "relaxation rate must be non-negative, got {gamma1_total}"
            )));
        }
        let half = QubitRates {
            gamma1: gamma1_total / 2.0,
            gamma_phi: 0.0,
        };
        Ok(Self {
            r,
            theta: 0.0,
            g: 0.0,
            b_field: 0.0,
            s0: 0.0,
            s_b: 0.0,
            rates_a: half,
            rates_b: half,
        })
    }

    /// Overall longitudinal rate `Gamma_1^A + Gamma_1^B`.
    pub fn gamma1_total(&self) -> f64 {
        self.rates_a.gamma1 + self.rates_b.gamma1
    }

    /// Overall transverse rate `Gamma_2^A + Gamma_2^B`.
    pub fn gamma2_total(&self) -> f64 {
        self.rates_a.gamma2() + self.rates_b.gamma2()
    }

    /// Exponential dephasing function with the model's transverse rate.
    pub fn markovian_dephasing(&self) -> DephasingFunction {
        DephasingFunction::Markovian {
            gamma2: self.gamma2_total(),
        }
    }
}

fn check_purity(r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "Werner purity r={r} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Scalar coherence envelope `zeta(t)` with `zeta(0) = 1` and
/// `|zeta(t)| <= 1`.
#[derive(Clone, Debug)]
pub enum DephasingFunction {
    /// `exp(-gamma2 t)`.
    Markovian { gamma2: f64 },
    /// `exp(-gamma t) cos(omega t)`.
    DampedCosine { gamma: f64, omega: f64 },
    /// Linear interpolation of samples; evaluation beyond the grid errors.
    Tabulated { times: Vec<f64>, values: Vec<f64> },
}

impl DephasingFunction {
    pub fn markovian(gamma2: f64) -> Result<Self> {
        if gamma2 < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Markovian rate must be non-negative, got {gamma2}"
            )));
        }
        Ok(Self::Markovian { gamma2 })
    }

    pub fn damped_cosine(gamma: f64, omega: f64) -> Result<Self> {
        if gamma < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "damping rate must be non-negative, got {gamma}"
            )));
        }
        Ok(Self::DampedCosine { gamma, omega })
    }

    pub fn tabulated(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() || times.len() < 2 {
            return Err(Error::InvalidParameter(
                "tabulated dephasing needs at least two (t, zeta) samples".into(),
            ));
        }
        if times[0] != 0.0 || (values[0] - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(
                "tabulated dephasing must start at (0, 1)".into(),
            ));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "tabulated times must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| v.abs() > 1.0 + 1e-12) {
            return Err(Error::InvalidParameter(
                "tabulated dephasing values must lie in [-1, 1]".into(),
            ));
        }
        Ok(Self::Tabulated { times, values })
    }

    /// Evaluate at `t >= 0`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        match self {
            Self::Markovian { gamma2 } => Ok((-gamma2 * t).exp()),
            Self::DampedCosine { gamma, omega } => Ok((-gamma * t).exp() * (omega * t).cos()),
            Self::Tabulated { times, values } => {
                let t_end = *times.last().expect("non-empty table");
                if t > t_end {
                    return Err(Error::BeyondTabulatedRange { t, t_end });
                }
                let hi = times.partition_point(|&x| x < t).min(times.len() - 1);
                if times[hi] == t {
                    return Ok(values[hi]);
                }
                let lo = hi - 1;
                let w = (t - times[lo]) / (times[hi] - times[lo]);
                Ok(values[lo] + w * (values[hi] - values[lo]))
            }
        }
    }

    /// Last evaluable time, if bounded.
    pub fn end_time(&self) -> Option<f64> {
        match self {
            Self::Tabulated { times, .. } => times.last().copied(),
            _ => None,
        }
    }

    /// An analytic bound on `|zeta(t)|`, when one exists.
    fn abs_envelope_at(&self, t: f64) -> Option<f64> {
        match self {
            Self::Markovian { gamma2 } => Some((-gamma2 * t).exp()),
            Self::DampedCosine { gamma, .. } => Some((-gamma * t).exp()),
            Self::Tabulated { .. } => None,
        }
    }

    /// Whether `|zeta|` is known to be non-increasing.
    fn abs_nonincreasing(&self) -> bool {
        match self {
            Self::Markovian { .. } => true,
            Self::DampedCosine { omega, .. } => *omega == 0.0,
            Self::Tabulated { .. } => false,
        }
    }

    fn check_covers(&self, t_max: f64) -> Result<()> {
        if let Some(t_end) = self.end_time() {
            if t_end < t_max {
                return Err(Error::BeyondTabulatedRange { t: t_max, t_end });
            }
        }
        Ok(())
    }
}

/// Uniform time grid of `samples` points over `[0, t_max]`.
pub fn uniform_grid(t_max: f64, samples: usize) -> Vec<f64> {
    assert!(samples >= 2 && t_max > 0.0);
    let dt = t_max / (samples - 1) as f64;
    (0..samples).map(|k| k as f64 * dt).collect()
}

/// Default analysis horizon; resolves several oscillation periods of the
/// reference damped-cosine noise.
pub const DEFAULT_T_MAX: f64 = 200.0;
/// Default time-grid resolution.
pub const DEFAULT_SAMPLES: usize = 2000;

/// A sampled cone trajectory.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<D3Point>,
    pub params: ModelParams,
}

/// The state trajectory `n_XX(t) = r zeta(t)`, `n_XY = 0`,
/// `n_ZZ(t) = -r exp(-Gamma_1 t)`.
///
/// Every generated point must satisfy the cone inequalities; a violation
/// means the supplied `(zeta, Gamma_1)` pair is not a physical channel and
/// is reported as an error.
pub fn trajectory(
    params: &ModelParams,
    zeta: &DephasingFunction,
    times: &[f64],
) -> Result<Trajectory> {
    if times.is_empty() || times.windows(2).any(|w| w[1] <= w[0]) || times[0] < 0.0 {
        return Err(Error::InvalidParameter(
            "times must be non-empty, non-negative and strictly increasing".into(),
        ));
    }
    let gamma1 = params.gamma1_total();
    let mut points = Vec::with_capacity(times.len());
    for &t in times {
        let p = D3Point::new(params.r * zeta.eval(t)?, 0.0, -params.r * (-gamma1 * t).exp());
        if !d3_membership(&p) {
            return Err(Error::UnphysicalTrajectory {
                t,
                n_xx: p.n_xx,
                n_zz: p.n_zz,
            });
        }
        points.push(p);
    }
    Ok(Trajectory {
        times: times.to_vec(),
        points,
        params: *params,
    })
}

/// Closed-form concurrence along a cone trajectory:
/// `C(t) = max{0, r |zeta(t)| - xi(t)}` with
/// `xi(t) = (1 - r exp(-Gamma_1 t)) / 2`.
///
/// This is the cone concurrence `max{0, R - (1 + n_ZZ)/2}` evaluated on
/// the trajectory point, so the two routes agree identically.
#[derive(Clone, Debug)]
pub struct ConcurrenceCurve {
    r: f64,
    gamma1: f64,
    zeta: DephasingFunction,
    valid_to: f64,
}

impl ConcurrenceCurve {
    /// Build the evaluator; tabulated dephasing must cover `[0, t_max]`.
    pub fn new(params: &ModelParams, zeta: DephasingFunction, t_max: f64) -> Result<Self> {
        zeta.check_covers(t_max)?;
        Ok(Self {
            r: params.r,
            gamma1: params.gamma1_total(),
            zeta,
            valid_to: t_max,
        })
    }

    /// The separability threshold `xi(t) = (1 - r exp(-Gamma_1 t)) / 2`.
    pub fn xi(&self, t: f64) -> f64 {
        (1.0 - self.r * (-self.gamma1 * t).exp()) / 2.0
    }

    /// Signed entanglement margin `r |zeta(t)| - xi(t)`.
    pub fn margin(&self, t: f64) -> f64 {
        let z = self
            .zeta
            .eval(t)
            .expect("t within the validated horizon");
        self.r * z.abs() - self.xi(t)
    }

    /// Concurrence at `t` in `[0, valid_to]`.
    pub fn value(&self, t: f64) -> f64 {
        self.margin(t).max(0.0)
    }

    pub fn horizon(&self) -> f64 {
        self.valid_to
    }

    pub fn dephasing(&self) -> &DephasingFunction {
        &self.zeta
    }

    /// Whether `C(t) <= eps` for all `t >= horizon` follows analytically.
    ///
    /// For a non-increasing `|zeta|` the margin is non-increasing (`xi` is
    /// non-decreasing), so the value at the horizon decides. Otherwise the
    /// envelope bound `r E(t) - xi(t) <= r E(horizon) - xi(horizon)` is
    /// used when an envelope `E >= |zeta|` exists.
    pub fn zero_tail_confirmed(&self, horizon: f64, eps: f64) -> bool {
        if self.zeta.abs_nonincreasing() {
            return self.value(horizon) <= eps;
        }
        match self.zeta.abs_envelope_at(horizon) {
            Some(env) => self.r * env - self.xi(horizon) <= eps,
            None => false,
        }
    }
}

/// Sample a concurrence curve on a grid (trajectory algebra, `Eq.`-free
/// route shares the same expression).
pub fn concurrence_curve(
    params: &ModelParams,
    zeta: &DephasingFunction,
    times: &[f64],
) -> Result<Vec<f64>> {
    if times.is_empty() || times[0] < 0.0 {
        return Err(Error::InvalidParameter(
            "times must be non-empty and non-negative".into(),
        ));
    }
    let t_last = *times.last().expect("non-empty");
    let curve = ConcurrenceCurve::new(params, zeta.clone(), t_last)?;
    times
        .iter()
        .map(|&t| {
            if t < 0.0 {
                Err(Error::NegativeTime(t))
            } else {
                Ok(curve.value(t))
            }
        })
        .collect()
}

/// Apply the independent single-qubit dephasing channel
/// `E_0 = diag(1, zeta)`, `E_1 = diag(0, sqrt(1 - zeta^2))` to every qubit
/// via the full operator sum over Kraus strings.
pub fn kraus_dephase(rho0: &DensityMatrix, zeta: f64) -> Result<DensityMatrix> {
    if zeta.abs() > 1.0 {
        return Err(Error::ZetaOutOfRange(zeta));
    }
    let n = rho0.qubits();
    let dim = rho0.dim();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let e0 = DMatrix::from_row_slice(2, 2, &[one, zero, zero, Complex64::new(zeta, 0.0)]);
    let e1 = DMatrix::from_row_slice(
        2,
        2,
        &[
            zero,
            zero,
            zero,
            Complex64::new((1.0 - zeta * zeta).max(0.0).sqrt(), 0.0),
        ],
    );

    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for string in 0..(1usize << n) {
        let mut k = DMatrix::<Complex64>::identity(1, 1);
        for qubit in 0..n {
            let op = if string & (1 << (n - 1 - qubit)) == 0 {
                &e0
            } else {
                &e1
            };
            k = k.kronecker(op);
        }
        out += &k * rho0.matrix() * k.adjoint();
    }
    DensityMatrix::new(out)
}

/// Kraus completeness residual `max |E0^H E0 + E1^H E1 - I|` for a given
/// `zeta`; zero for any admissible value.
pub fn kraus_completeness_residual(zeta: f64) -> f64 {
    let comp = zeta * zeta + (1.0 - zeta * zeta);
    (comp - 1.0).abs()
}

/// N-qubit cat state `(|0...0> + |1...1>)/sqrt(2)` as a projector.
pub fn ghz_state(n: usize) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "GHZ state needs at least 2 qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut psi = DVector::<Complex64>::zeros(dim);
    psi[0] = amp;
    psi[dim - 1] = amp;
    DensityMatrix::from_pure(&psi)
}

/// N-qubit single-excitation symmetric state
/// `(|0...01> + |0...10> + ... + |10...0>)/sqrt(N)` as a projector.
pub fn w_state(n: usize) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "W state needs at least 2 qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut psi = DVector::<Complex64>::zeros(dim);
    for j in 0..n {
        psi[1 << (n - 1 - j)] = amp;
    }
    DensityMatrix::from_pure(&psi)
}

/// Exponent convention for the dephased-GHZ negativity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum GhzDecayExponent {
    /// `|zeta|^N / 2` — the exponent grows with the qubit count. Confirmed
    /// against the brute-force channel + partial-transpose route.
    #[default]
    QubitCount,
    /// `|zeta|^3 / 2` regardless of N; coincides with the other convention
    /// only at N = 3. Retained for comparison.
    Cubic,
}

/// Closed-form negativity of the dephased GHZ state (default exponent).
pub fn negativity_ghz_closed(zeta: f64, n: usize) -> Result<f64> {
    negativity_ghz_closed_with(zeta, n, GhzDecayExponent::QubitCount)
}

/// Closed-form negativity of the dephased GHZ state under a chosen
/// exponent convention.
pub fn negativity_ghz_closed_with(zeta: f64, n: usize, exp: GhzDecayExponent) -> Result<f64> {
    check_zeta_and_n(zeta, n)?;
    let k = match exp {
        GhzDecayExponent::QubitCount => n as i32,
        GhzDecayExponent::Cubic => 3,
    };
    Ok(zeta.abs().powi(k) / 2.0)
}

/// Closed-form negativity of the dephased W state:
/// `sqrt(N-1)/N |zeta|^2`.
pub fn negativity_w_closed(zeta: f64, n: usize) -> Result<f64> {
    check_zeta_and_n(zeta, n)?;
    Ok((n as f64 - 1.0).sqrt() / n as f64 * zeta * zeta)
}

fn check_zeta_and_n(zeta: f64, n: usize) -> Result<()> {
    if zeta.abs() > 1.0 {
        return Err(Error::ZetaOutOfRange(zeta));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 qubits, got {n}"
        )));
    }
    Ok(())
}

/// Effective Bloch coordinates of a state supported on the two cat states
/// `|0...0>`, `|1...1>`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CatBloch {
    pub n_x: f64,
    pub n_y: f64,
    pub n_z: f64,
}

/// Functional form mapping cat-subspace Bloch coordinates to negativity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum GhzNegativityForm {
    /// `sqrt(n_X^2 + n_Y^2) / 2` — half the coherence magnitude of the
    /// effective qubit. Confirmed against the brute-force route.
    #[default]
    CoherenceMagnitude,
    /// `(n_X^2 + n_Y^2) / 2`; agrees with the magnitude form only on the
    /// symmetry axis and the equator. Retained for comparison.
    SquaredMagnitude,
}

/// Extract the effective Bloch vector of a cat-subspace state. Errors if
/// more than `tol` of the state (Frobenius weight) lies outside the
/// subspace.
pub fn ghz_bloch(rho: &DensityMatrix, tol: f64) -> Result<CatBloch> {
    let dim = rho.dim();
    let last = dim - 1;
    let mut leak = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            let inside = (a == 0 || a == last) && (b == 0 || b == last);
            if !inside {
                leak += rho.matrix()[(a, b)].norm_sqr();
            }
        }
    }
    let leak = leak.sqrt();
    if leak > tol {
        return Err(Error::CatSubspaceLeak { weight: leak });
    }
    let coh = rho.matrix()[(0, last)];
    Ok(CatBloch {
        n_x: 2.0 * coh.re,
        n_y: -2.0 * coh.im,
        n_z: rho.matrix()[(0, 0)].re - rho.matrix()[(last, last)].re,
    })
}

/// Negativity from cat-subspace Bloch coordinates (default form).
pub fn ghz_bloch_negativity(b: &CatBloch) -> f64 {
    ghz_bloch_negativity_with(b, GhzNegativityForm::CoherenceMagnitude)
}

/// Negativity from cat-subspace Bloch coordinates under a chosen form.
pub fn ghz_bloch_negativity_with(b: &CatBloch, form: GhzNegativityForm) -> f64 {
    let sq = b.n_x * b.n_x + b.n_y * b.n_y;
    match form {
        GhzNegativityForm::CoherenceMagnitude => sq.sqrt() / 2.0,
        GhzNegativityForm::SquaredMagnitude => sq / 2.0,
    }
}

/// Which symmetric family a dephased-negativity curve tracks.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum StateFamily {
    Ghz,
    W,
}

/// Closed-form negativity of a dephased GHZ or W state as a function of
/// time, for classification.
#[derive(Clone, Debug)]
pub struct NegativityCurve {
    family: StateFamily,
    n: usize,
    zeta: DephasingFunction,
    valid_to: f64,
}

impl NegativityCurve {
    pub fn new(
        family: StateFamily,
        n: usize,
        zeta: DephasingFunction,
        t_max: f64,
    ) -> Result<Self> {
        check_zeta_and_n(0.0, n)?;
        zeta.check_covers(t_max)?;
        Ok(Self {
            family,
            n,
            zeta,
            valid_to: t_max,
        })
    }

    fn decay_power(&self) -> i32 {
        match self.family {
            StateFamily::Ghz => self.n as i32,
            StateFamily::W => 2,
        }
    }

    fn prefactor(&self) -> f64 {
        match self.family {
            StateFamily::Ghz => 0.5,
            StateFamily::W => (self.n as f64 - 1.0).sqrt() / self.n as f64,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        let z = self
            .zeta
            .eval(t)
            .expect("t within the validated horizon");
        self.prefactor() * z.abs().powi(self.decay_power())
    }

    pub fn horizon(&self) -> f64 {
        self.valid_to
    }

    /// Tail permanence: the curve is bounded by
    /// `prefactor * E(t)^power` for a non-increasing envelope `E`.
    pub fn zero_tail_confirmed(&self, horizon: f64, eps: f64) -> bool {
        if self.zeta.abs_nonincreasing() {
            return self.value(horizon) <= eps;
        }
        match self.zeta.abs_envelope_at(horizon) {
            Some(env) => self.prefactor() * env.powi(self.decay_power()) <= eps,
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{negativity, Partition};
    use crate::state_space::{bell_phi_plus, bell_psi_plus};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn bwr_examples() {
        let r = bwr_rates(0.7, 0.0, 0.4, 0.9).unwrap();
        assert_eq!(r.gamma1, 0.0);
        assert_abs_diff_eq!(r.gamma_phi, 0.49 * 0.4 / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.gamma2(), r.gamma_phi, epsilon = 1e-15);

        let r = bwr_rates(0.7, FRAC_PI_2, 0.4, 0.9).unwrap();
        assert_abs_diff_eq!(r.gamma1, 0.49 * 0.9 / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.gamma_phi, 0.0, epsilon = 1e-30);

        let r = bwr_rates(0.0, 0.3, 0.4, 0.9).unwrap();
        assert_eq!((r.gamma1, r.gamma_phi), (0.0, 0.0));

        assert!(bwr_rates(1.0, 0.0, -0.1, 0.0).is_err());
    }

    #[test]
    fn dephasing_evaluation() {
        let m = DephasingFunction::markovian(0.05).unwrap();
        assert_eq!(m.eval(0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(m.eval(20.0).unwrap(), (-1.0f64).exp(), epsilon = 1e-15);

        let d = DephasingFunction::damped_cosine(0.02, 0.3).unwrap();
        assert_eq!(d.eval(0.0).unwrap(), 1.0);
        // First sign flip at omega t = pi.
        let t = PI / 0.3;
        assert_abs_diff_eq!(d.eval(t).unwrap(), -(-0.02 * t).exp(), epsilon = 1e-12);

        assert!(matches!(m.eval(-1.0), Err(Error::NegativeTime(_))));

        let tab =
            DephasingFunction::tabulated(vec![0.0, 1.0, 2.0], vec![1.0, 0.5, 0.25]).unwrap();
        assert_eq!(tab.eval(0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(tab.eval(0.5).unwrap(), 0.75, epsilon = 1e-15);
        assert_eq!(tab.eval(2.0).unwrap(), 0.25);
        assert!(matches!(
            tab.eval(2.5),
            Err(Error::BeyondTabulatedRange { .. })
        ));
        assert!(DephasingFunction::tabulated(vec![0.0, 1.0], vec![0.9, 0.5]).is_err());
        assert!(DephasingFunction::tabulated(vec![0.5, 1.0], vec![1.0, 0.5]).is_err());
    }

    #[test]
    fn trajectory_examples() {
        let params = ModelParams::from_rates(0.8, 0.03).unwrap();
        let zeta = DephasingFunction::markovian(0.05).unwrap();
        let times = uniform_grid(100.0, 101);
        let traj = trajectory(&params, &zeta, &times).unwrap();
        let p0 = traj.points[0];
        assert_eq!((p0.n_xx, p0.n_xy, p0.n_zz), (0.8, 0.0, -0.8));
        let last = traj.points.last().unwrap();
        assert!(last.radius() < 0.01 && last.n_zz.abs() < 0.05);

        // Pure dephasing keeps n_ZZ frozen.
        let params = ModelParams::symmetric(0.9, 0.0, 1.0, 1.0, 0.1, 0.1).unwrap();
        let traj = trajectory(&params, &zeta, &times).unwrap();
        for p in &traj.points {
            assert_eq!(p.n_zz, -0.9);
        }
    }

    #[test]
    fn trajectory_rejects_unphysical_pairs() {
        // Dephasing far slower than relaxation violates positivity.
        let params = ModelParams::from_rates(1.0, 1.0).unwrap();
        let zeta = DephasingFunction::markovian(0.001).unwrap();
        let times = uniform_grid(50.0, 200);
        assert!(matches!(
            trajectory(&params, &zeta, &times),
            Err(Error::UnphysicalTrajectory { .. })
        ));
    }

    #[test]
    fn concurrence_curve_matches_cone_formula() {
        let params = ModelParams::from_rates(1.0, 0.03).unwrap();
        let zeta = DephasingFunction::damped_cosine(0.02, 0.3).unwrap();
        let times = uniform_grid(150.0, 300);
        let c = concurrence_curve(&params, &zeta, &times).unwrap();
        assert_eq!(c[0], 1.0);
        let traj = trajectory(&params, &zeta, &times).unwrap();
        for (ck, p) in c.iter().zip(&traj.points) {
            let direct = crate::measures::concurrence_d3(p).unwrap();
            assert_abs_diff_eq!(*ck, direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn pure_dephasing_bell_curve_is_zeta() {
        let params = ModelParams::from_rates(1.0, 0.0).unwrap();
        let zeta = DephasingFunction::markovian(0.05).unwrap();
        let curve = ConcurrenceCurve::new(&params, zeta, 200.0).unwrap();
        for &t in &[0.0, 1.0, 10.0, 100.0, 200.0] {
            assert_abs_diff_eq!(curve.value(t), (-0.05 * t).exp(), epsilon = 1e-15);
        }
    }

    #[test]
    fn kraus_identity_and_full_dephasing() {
        let ghz = ghz_state(3).unwrap();
        let same = kraus_dephase(&ghz, 1.0).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                assert_abs_diff_eq!(
                    (same.matrix()[(a, b)] - ghz.matrix()[(a, b)]).norm(),
                    0.0,
                    epsilon = 1e-14
                );
            }
        }

        let dead = kraus_dephase(&ghz, 0.0).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                let want = if a == b && (a == 0 || a == 7) { 0.5 } else { 0.0 };
                assert_abs_diff_eq!(dead.matrix()[(a, b)].norm(), want, epsilon = 1e-14);
            }
        }

        assert!(matches!(
            kraus_dephase(&ghz, 1.2),
            Err(Error::ZetaOutOfRange(_))
        ));
    }

    /// Operator-sum result equals the elementwise rule
    /// `rho_ab -> zeta^(Hamming distance) rho_ab`.
    #[test]
    fn kraus_matches_elementwise_rule() {
        for n in [2usize, 3] {
            let rho = w_state(n).unwrap();
            let zeta = -0.6;
            let out = kraus_dephase(&rho, zeta).unwrap();
            let dim = 1usize << n;
            for a in 0..dim {
                for b in 0..dim {
                    let h = (a ^ b).count_ones() as i32;
                    let want = rho.matrix()[(a, b)] * Complex64::new(zeta.powi(h), 0.0);
                    assert_abs_diff_eq!((out.matrix()[(a, b)] - want).norm(), 0.0, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn ghz_and_w_at_small_n() {
        let g2 = ghz_state(2).unwrap();
        let want = bell_phi_plus();
        for a in 0..4 {
            for b in 0..4 {
                assert_abs_diff_eq!(
                    (g2.matrix()[(a, b)] - want.matrix()[(a, b)]).norm(),
                    0.0,
                    epsilon = 1e-15
                );
            }
        }
        let w2 = w_state(2).unwrap();
        let want = bell_psi_plus();
        for a in 0..4 {
            for b in 0..4 {
                assert_abs_diff_eq!(
                    (w2.matrix()[(a, b)] - want.matrix()[(a, b)]).norm(),
                    0.0,
                    epsilon = 1e-15
                );
            }
        }
        let w3 = w_state(3).unwrap();
        let amp = 1.0 / 3.0;
        for idx in [1usize, 2, 4] {
            assert_abs_diff_eq!(w3.matrix()[(idx, idx)].re, amp, epsilon = 1e-15);
        }
        assert!(ghz_state(1).is_err());
        assert!(w_state(0).is_err());
    }

    #[test]
    fn closed_forms_at_reference_points() {
        assert_abs_diff_eq!(negativity_ghz_closed(1.0, 3).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(negativity_w_closed(1.0, 2).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(
            negativity_w_closed(0.5, 4).unwrap(),
            3.0f64.sqrt() / 16.0,
            epsilon = 1e-15
        );
    }

    /// The decisive case for the exponent convention: N = 4 at zeta = 1/2.
    /// The brute-force route gives |zeta|^4/2, not |zeta|^3/2.
    #[test]
    fn ghz_exponent_resolved_by_brute_force() {
        let zeta = 0.5;
        let state = kraus_dephase(&ghz_state(4).unwrap(), zeta).unwrap();
        let oracle = negativity(&state, Partition::new(0)).unwrap();
        let qubit_count = negativity_ghz_closed_with(zeta, 4, GhzDecayExponent::QubitCount)
            .unwrap();
        let cubic = negativity_ghz_closed_with(zeta, 4, GhzDecayExponent::Cubic).unwrap();
        assert_abs_diff_eq!(oracle, qubit_count, epsilon = 1e-12);
        assert!((oracle - cubic).abs() > 0.03);
    }

    #[test]
    fn bloch_view_of_dephased_cat_states() {
        let pure = ghz_state(3).unwrap();
        let b = ghz_bloch(&pure, 1e-10).unwrap();
        assert_abs_diff_eq!(b.n_x, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b.n_y, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b.n_z, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ghz_bloch_negativity(&b), 0.5, epsilon = 1e-14);

        let dead = kraus_dephase(&pure, 0.0).unwrap();
        let b = ghz_bloch(&dead, 1e-10).unwrap();
        assert_eq!((b.n_x, b.n_y, b.n_z), (0.0, 0.0, 0.0));
        assert_eq!(ghz_bloch_negativity(&b), 0.0);

        // Partially dephased: n_X = zeta^N, and the magnitude form matches
        // the brute-force negativity while the squared form does not.
        let zeta = 0.5;
        let part = kraus_dephase(&pure, zeta).unwrap();
        let b = ghz_bloch(&part, 1e-10).unwrap();
        assert_abs_diff_eq!(b.n_x, zeta.powi(3), epsilon = 1e-13);
        let oracle = negativity(&part, Partition::new(0)).unwrap();
        assert_abs_diff_eq!(ghz_bloch_negativity(&b), oracle, epsilon = 1e-12);
        assert!(
            (ghz_bloch_negativity_with(&b, GhzNegativityForm::SquaredMagnitude) - oracle).abs()
                > 0.02
        );

        assert!(matches!(
            ghz_bloch(&w_state(3).unwrap(), 1e-10),
            Err(Error::CatSubspaceLeak { .. })
        ));
    }

    #[test]
    fn negativity_curve_tail_logic() {
        let m = NegativityCurve::new(
            StateFamily::Ghz,
            3,
            DephasingFunction::markovian(0.05).unwrap(),
            200.0,
        )
        .unwrap();
        assert_abs_diff_eq!(m.value(0.0), 0.5, epsilon = 1e-15);
        // exp(-0.15 * 100)/2 ~ 1.5e-7 is still above eps.
        assert!(!m.zero_tail_confirmed(100.0, 1e-9));
        assert!(m.zero_tail_confirmed(200.0, 1e-9));

        let d = NegativityCurve::new(
            StateFamily::W,
            4,
            DephasingFunction::damped_cosine(0.02, 0.3).unwrap(),
            200.0,
        )
        .unwrap();
        // Envelope at the horizon is far above eps: no permanence.
        assert!(!d.zero_tail_confirmed(200.0, 1e-9));
    }
}
