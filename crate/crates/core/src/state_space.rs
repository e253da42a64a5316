//! State representations and physicality certification.
//!
//! Two-qubit states are carried as 15-component polarization vectors
//! (expectation values of the Pauli pair operators); general N-qubit states
//! as density matrices. Positivity can be certified spectrally or, inside
//! the three-parameter dynamical cone, through the closed-form
//! characteristic-polynomial inequalities.
//!
//! Component layout of the polarization vector, lexicographic over
//! `I < X < Y < Z` with `(I, I)` omitted:
//!
//! | index | pair | index | pair | index | pair |
//! |-------|------|-------|------|-------|------|
//! | 0     | IX   | 5     | XY   | 10    | YZ   |
//! | 1     | IY   | 6     | XZ   | 11    | ZI   |
//! | 2     | IZ   | 7     | YI   | 12    | ZX   |
//! | 3     | XI   | 8     | YX   | 13    | ZY   |
//! | 4     | XX   | 9     | YY   | 14    | ZZ   |

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{pair_index, pair_labels, pauli_pair, PauliOp};

/// Numerical tolerances for state validation.
#[derive(Copy, Clone, Debug)]
pub struct Tolerances {
    /// Max allowed Hermiticity deviation.
    pub herm: f64,
    /// Max allowed |trace - 1|.
    pub trace: f64,
    /// Eigenvalues above `-psd` count as non-negative.
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-10,
            trace: 1e-10,
            psd: 1e-10,
        }
    }
}

/// Default slack used by boundary-inclusive inequality checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Real 15-component polarization vector of a two-qubit state.
///
/// Component `n_ij = <sigma_i (x) sigma_j>`; see the module table for the
/// layout. Serializes as a flat 15-element array in that order.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolarizationVector(pub [f64; 15]);

impl PolarizationVector {
    /// The zero vector (the fully mixed state).
    pub fn zero() -> Self {
        Self([0.0; 15])
    }

    /// Component `<sigma_i (x) sigma_j>`. `(I, I)` yields 1 (the trace).
    pub fn get(&self, i: PauliOp, j: PauliOp) -> f64 {
        match pair_index(i, j) {
            Some(k) => self.0[k],
            None => 1.0,
        }
    }

    /// Set component `(i, j)`. Panics on `(I, I)`, which is fixed by
    /// normalization.
    pub fn set(&mut self, i: PauliOp, j: PauliOp, value: f64) {
        let k = pair_index(i, j).expect("(I, I) component is fixed by normalization");
        self.0[k] = value;
    }

    /// Euclidean norm of the 15 components.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn as_array(&self) -> &[f64; 15] {
        &self.0
    }
}

/// N-qubit density matrix: Hermitian, unit trace. Positivity is certified
/// separately by [`is_physical`].
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: DMatrix<Complex64>,
    n_qubits: usize,
}

impl DensityMatrix {
    /// Validate and wrap a matrix with default [`Tolerances`].
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        Self::with_tolerances(mat, &Tolerances::default())
    }

    /// Validate and wrap: square with power-of-two dimension, Hermitian
    /// within `tol.herm`, trace 1 within `tol.trace`.
    pub fn with_tolerances(mat: DMatrix<Complex64>, tol: &Tolerances) -> Result<Self> {
        let n = mat.nrows();
        if mat.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: mat.ncols(),
            });
        }
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::NotQubitSized(n));
        }
        let mut herm_dev: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                herm_dev = herm_dev.max((mat[(r, c)] - mat[(c, r)].conj()).norm());
            }
        }
        if herm_dev > tol.herm {
            return Err(Error::NotHermitian {
                deviation: herm_dev,
            });
        }
        let tr: Complex64 = mat.diagonal().sum();
        let tr_dev = (tr - Complex64::new(1.0, 0.0)).norm();
        if tr_dev > tol.trace {
            return Err(Error::TraceNotOne { deviation: tr_dev });
        }
        Ok(Self {
            mat,
            n_qubits: n.trailing_zeros() as usize,
        })
    }

    /// Projector onto a pure state; the vector is normalized first.
    pub fn from_pure(psi: &DVector<Complex64>) -> Result<Self> {
        let n = psi.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::NotQubitSized(n));
        }
        let nrm = psi.norm();
        if nrm == 0.0 {
            return Err(Error::InvalidParameter("zero state vector".into()));
        }
        let psi = psi / Complex64::new(nrm, 0.0);
        let mat = DMatrix::from_fn(n, n, |r, c| psi[r] * psi[c].conj());
        Ok(Self {
            mat,
            n_qubits: n.trailing_zeros() as usize,
        })
    }

    /// Wrap a matrix whose invariants are guaranteed by construction.
    pub(crate) fn from_valid(mat: DMatrix<Complex64>) -> Self {
        let n = mat.nrows();
        debug_assert!(n.is_power_of_two());
        Self {
            mat,
            n_qubits: n.trailing_zeros() as usize,
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// Eigenvalues in ascending order (real; the matrix is Hermitian).
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()
            .first()
            .copied()
            .expect("non-empty spectrum")
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(mat: &DMatrix<Complex64>) -> Vec<f64> {
    let eig = SymmetricEigen::new(mat.clone());
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    vals
}

/// Point of the three-parameter dynamical cone: `n_XX = n_YY`,
/// `n_XY = -n_YX`, `n_ZZ` free, all other components zero.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct D3Point {
    pub n_xx: f64,
    pub n_xy: f64,
    pub n_zz: f64,
}

impl D3Point {
    pub fn new(n_xx: f64, n_xy: f64, n_zz: f64) -> Self {
        Self { n_xx, n_xy, n_zz }
    }

    /// Conserved transverse radius `R = sqrt(n_XX^2 + n_XY^2)`.
    pub fn radius(&self) -> f64 {
        self.n_xx.hypot(self.n_xy)
    }
}

/// Characteristic-polynomial coefficients of a 4x4 density matrix with the
/// alternating-sign convention `det(xI - rho) = sum_j (-1)^j a_j x^(4-j)`,
/// i.e. `a_j` is the j-th elementary symmetric polynomial of the
/// eigenvalues. All `a_j >= 0` iff the state is positive semidefinite.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharPolyCoeffs {
    /// `a[0] = 1`, `a[1] = trace`.
    pub a: [f64; 5],
}

/// Reconstruct the density matrix from a polarization vector:
/// `rho = I/4 + (1/4) sum n_ij sigma_i (x) sigma_j`.
///
/// Any 15-vector is accepted; the result is Hermitian with unit trace by
/// construction but not necessarily positive.
pub fn pv_to_density(pv: &PolarizationVector) -> DensityMatrix {
    let quarter = Complex64::new(0.25, 0.0);
    let mut mat = DMatrix::<Complex64>::identity(4, 4) * quarter;
    for (k, &(i, j)) in pair_labels().iter().enumerate() {
        let n = pv.0[k];
        if n != 0.0 {
            mat += pauli_pair(i, j) * (quarter * Complex64::new(n, 0.0));
        }
    }
    DensityMatrix::from_valid(mat)
}

/// Extract the polarization vector of a two-qubit state:
/// `n_ij = Tr(rho sigma_i (x) sigma_j)`.
///
/// Exact inverse of [`pv_to_density`] up to floating rounding.
pub fn density_to_pv(rho: &DensityMatrix) -> Result<PolarizationVector> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    let mut out = [0.0; 15];
    for (k, &(i, j)) in pair_labels().iter().enumerate() {
        let prod = rho.matrix() * pauli_pair(i, j);
        let tr: Complex64 = prod.diagonal().sum();
        out[k] = tr.re;
    }
    Ok(PolarizationVector(out))
}

/// Characteristic-polynomial coefficients of a two-qubit state, computed
/// from traces of matrix powers via Newton's identities. This route is
/// independent of any eigendecomposition.
pub fn char_poly_coeffs(rho: &DensityMatrix) -> Result<CharPolyCoeffs> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    let m = rho.matrix();
    let m2 = m * m;
    let m3 = &m2 * m;
    let m4 = &m3 * m;
    let tr = |x: &DMatrix<Complex64>| -> f64 { x.diagonal().sum().re };
    let p = [tr(m), tr(&m2), tr(&m3), tr(&m4)];

    // k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    let mut e = [1.0, 0.0, 0.0, 0.0, 0.0];
    for k in 1..=4 {
        let mut acc = 0.0;
        let mut sign = 1.0;
        for i in 1..=k {
            acc += sign * e[k - i] * p[i - 1];
            sign = -sign;
        }
        e[k] = acc / k as f64;
    }
    Ok(CharPolyCoeffs { a: e })
}

/// Spectral physicality test: min eigenvalue >= -tol and |trace - 1| <= tol.
pub fn is_physical(rho: &DensityMatrix, tol: f64) -> bool {
    let tr: Complex64 = rho.matrix().diagonal().sum();
    (tr - Complex64::new(1.0, 0.0)).norm() <= tol && rho.min_eigenvalue() >= -tol
}

/// Closed-form membership test for the dynamical cone, boundary inclusive
/// with slack [`DEFAULT_TOL`]:
///
/// * `2R^2 + n_ZZ^2 <= 3`
/// * `n_ZZ <= 1 - 2R^2` and `n_ZZ >= -1`
/// * `2R + n_ZZ <= 1`
pub fn d3_membership(p: &D3Point) -> bool {
    d3_membership_with_tol(p, DEFAULT_TOL)
}

/// [`d3_membership`] with explicit boundary slack.
pub fn d3_membership_with_tol(p: &D3Point, tol: f64) -> bool {
    let r = p.radius();
    let z = p.n_zz;
    2.0 * r * r + z * z <= 3.0 + tol
        && z <= 1.0 - 2.0 * r * r + tol
        && z >= -1.0 - tol
        && 2.0 * r + z <= 1.0 + tol
}

/// Embed a cone point as a full polarization vector:
/// `n_XX = n_YY`, `n_XY = -n_YX`, `n_ZZ`, rest zero.
pub fn d3_embed(p: &D3Point) -> PolarizationVector {
    let mut pv = PolarizationVector::zero();
    pv.set(PauliOp::X, PauliOp::X, p.n_xx);
    pv.set(PauliOp::Y, PauliOp::Y, p.n_xx);
    pv.set(PauliOp::X, PauliOp::Y, p.n_xy);
    pv.set(PauliOp::Y, PauliOp::X, -p.n_xy);
    pv.set(PauliOp::Z, PauliOp::Z, p.n_zz);
    pv
}

/// Projector onto `(|01> + |10>)/sqrt(2)`.
pub fn bell_psi_plus() -> DensityMatrix {
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    DensityMatrix::from_pure(&DVector::from_vec(vec![zero, amp, amp, zero]))
        .expect("valid Bell vector")
}

/// Projector onto `(|00> + |11>)/sqrt(2)`.
pub fn bell_phi_plus() -> DensityMatrix {
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    DensityMatrix::from_pure(&DVector::from_vec(vec![amp, zero, zero, amp]))
        .expect("valid Bell vector")
}

/// Generalized Werner state `r |Psi+><Psi+| + (1-r) I/4` with `r` in [0, 1].
///
/// Its cone coordinates are `(r, 0, -r)`.
pub fn werner_state(r: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "Werner purity r={r} outside [0, 1]"
        )));
    }
    let bell = bell_psi_plus();
    let eye = DMatrix::<Complex64>::identity(4, 4);
    let mat = bell.matrix() * Complex64::new(r, 0.0) + eye * Complex64::new((1.0 - r) / 4.0, 0.0);
    Ok(DensityMatrix::from_valid(mat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn maximally_mixed() -> DensityMatrix {
        pv_to_density(&PolarizationVector::zero())
    }

    #[test]
    fn zero_vector_gives_maximally_mixed() {
        let rho = maximally_mixed();
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c { 0.25 } else { 0.0 };
                assert_abs_diff_eq!(rho.matrix()[(r, c)].re, want, epsilon = 1e-15);
                assert_abs_diff_eq!(rho.matrix()[(r, c)].im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn bell_vector_gives_bell_projector() {
        // n_XX = n_YY = 1, n_ZZ = -1 is the Bell state (|01>+|10>)/sqrt(2).
        let mut pv = PolarizationVector::zero();
        pv.set(PauliOp::X, PauliOp::X, 1.0);
        pv.set(PauliOp::Y, PauliOp::Y, 1.0);
        pv.set(PauliOp::Z, PauliOp::Z, -1.0);
        let rho = pv_to_density(&pv);
        let want = bell_psi_plus();
        for r in 0..4 {
            for c in 0..4 {
                assert_abs_diff_eq!(
                    (rho.matrix()[(r, c)] - want.matrix()[(r, c)]).norm(),
                    0.0,
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn ground_projector_vector() {
        // |00><00| = (I + ZI + IZ + ZZ)/4.
        let mut pv = PolarizationVector::zero();
        pv.set(PauliOp::Z, PauliOp::I, 1.0);
        pv.set(PauliOp::I, PauliOp::Z, 1.0);
        pv.set(PauliOp::Z, PauliOp::Z, 1.0);
        let rho = pv_to_density(&pv);
        assert_abs_diff_eq!(rho.matrix()[(0, 0)].re, 1.0, epsilon = 1e-15);
        for k in 1..4 {
            assert_abs_diff_eq!(rho.matrix()[(k, k)].re, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn pv_of_bell_and_werner() {
        let pv = density_to_pv(&bell_psi_plus()).unwrap();
        assert_abs_diff_eq!(pv.get(PauliOp::X, PauliOp::X), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(pv.get(PauliOp::Y, PauliOp::Y), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(pv.get(PauliOp::Z, PauliOp::Z), -1.0, epsilon = 1e-14);
        let off: f64 = pv
            .as_array()
            .iter()
            .enumerate()
            .filter(|(k, _)| ![4usize, 9, 14].contains(k))
            .map(|(_, v)| v.abs())
            .sum();
        assert_abs_diff_eq!(off, 0.0, epsilon = 1e-13);

        let pv = density_to_pv(&werner_state(0.5).unwrap()).unwrap();
        assert_abs_diff_eq!(pv.get(PauliOp::X, PauliOp::X), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(pv.get(PauliOp::Y, PauliOp::Y), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(pv.get(PauliOp::Z, PauliOp::Z), -0.5, epsilon = 1e-14);
    }

    #[test]
    fn pv_round_trip_is_exact() {
        let mut pv = PolarizationVector::zero();
        for (k, v) in pv.0.iter_mut().enumerate() {
            *v = 0.05 * (k as f64) - 0.35;
        }
        let back = density_to_pv(&pv_to_density(&pv)).unwrap();
        for k in 0..15 {
            assert_abs_diff_eq!(back.0[k], pv.0[k], epsilon = 1e-14);
        }
    }

    #[test]
    fn char_poly_of_mixed_pure_and_werner() {
        let c = char_poly_coeffs(&maximally_mixed()).unwrap();
        assert_abs_diff_eq!(c.a[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.a[1], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.a[2], 3.0 / 8.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.a[3], 1.0 / 16.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.a[4], 1.0 / 256.0, epsilon = 1e-14);

        let c = char_poly_coeffs(&bell_psi_plus()).unwrap();
        assert_abs_diff_eq!(c.a[1], 1.0, epsilon = 1e-14);
        for k in 2..=4 {
            assert_abs_diff_eq!(c.a[k], 0.0, epsilon = 1e-14);
        }

        // Werner r = 1/2: eigenvalues {5/8, 1/8, 1/8, 1/8}.
        let c = char_poly_coeffs(&werner_state(0.5).unwrap()).unwrap();
        assert_abs_diff_eq!(c.a[2], 0.28125, epsilon = 1e-14);
        assert_abs_diff_eq!(c.a[3], 0.03125, epsilon = 1e-14);
        assert_abs_diff_eq!(c.a[4], 0.001220703125, epsilon = 1e-14);
    }

    #[test]
    fn physicality_examples() {
        assert!(is_physical(&maximally_mixed(), 1e-10));
        assert!(is_physical(&bell_psi_plus(), 1e-10));
        // R = 1, n_ZZ = 0 violates 2R + n_ZZ <= 1.
        let bad = pv_to_density(&d3_embed(&D3Point::new(1.0, 0.0, 0.0)));
        assert!(!is_physical(&bad, 1e-10));
    }

    #[test]
    fn cone_membership_examples() {
        assert!(d3_membership(&D3Point::new(1.0, 0.0, -1.0))); // Bell circle
        assert!(d3_membership(&D3Point::new(0.0, 0.0, 0.0)));
        assert!(!d3_membership(&D3Point::new(1.0, 0.0, 0.0)));
    }

    #[test]
    fn embed_layout() {
        let pv = d3_embed(&D3Point::new(0.0, 0.3, -0.2));
        assert_eq!(pv.get(PauliOp::X, PauliOp::Y), 0.3);
        assert_eq!(pv.get(PauliOp::Y, PauliOp::X), -0.3);
        assert_eq!(pv.get(PauliOp::Z, PauliOp::Z), -0.2);
        assert_eq!(pv.get(PauliOp::X, PauliOp::X), 0.0);
        assert_eq!(pv.norm(), (0.09f64 + 0.09 + 0.04).sqrt());

        // (r, 0, -r) is the Werner state.
        let w = pv_to_density(&d3_embed(&D3Point::new(0.7, 0.0, -0.7)));
        let want = werner_state(0.7).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert_abs_diff_eq!(
                    (w.matrix()[(r, c)] - want.matrix()[(r, c)]).norm(),
                    0.0,
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        let mut m = DMatrix::<Complex64>::identity(4, 4) * Complex64::new(0.25, 0.0);
        m[(0, 1)] = Complex64::new(0.3, 0.1);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));

        let m = DMatrix::<Complex64>::identity(4, 4);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::TraceNotOne { .. })
        ));

        let m = DMatrix::<Complex64>::identity(3, 3) * Complex64::new(1.0 / 3.0, 0.0);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotQubitSized(3))
        ));
    }
}
