//! Entanglement measures: Wootters concurrence, negativity via partial
//! transpose and trace norm, and the PPT separability predicate.
//!
//! The concurrence uses the standard spin-flip construction
//! `C = max{0, l1 - l2 - l3 - l4}` with `l_i` the decreasing square roots of
//! the eigenvalues of `rho (Y(x)Y) rho* (Y(x)Y)`, conjugation taken in the
//! computational basis. Eigenvalues in `[-tol, 0)` are clipped to zero
//! before square roots are taken.
//!
//! For `N > 2` qubits the negativity is reported per bipartite `(1)(N-1)`
//! partition; PPT equals separability only for two qubits, for larger
//! systems it is a working criterion.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{pauli_pair, PauliOp};
use crate::state_space::{
    d3_membership, hermitian_eigenvalues, DensityMatrix, D3Point, Tolerances,
};

/// Bipartite `(1)(N-1)` split: the single qubit whose indices are
/// transposed. Qubit 0 is the leftmost (most significant) factor.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub transposed_qubit: usize,
}

impl Partition {
    pub fn new(transposed_qubit: usize) -> Self {
        Self { transposed_qubit }
    }
}

impl Default for Partition {
    fn default() -> Self {
        Self::new(0)
    }
}

/// Coherences of a state supported on the single-excitation subspace,
/// scaled by the qubit count: the raw matrix elements moved by the partial
/// transpose are `beta[i] / N`.
#[derive(Clone, Debug)]
pub struct WCoherenceVector {
    beta: Vec<Complex64>,
    n_qubits: usize,
}

impl WCoherenceVector {
    /// `beta` must have length `N - 1` with every `|beta_i| <= 1`.
    pub fn new(beta: Vec<Complex64>, n_qubits: usize) -> Result<Self> {
        if n_qubits < 2 || beta.len() != n_qubits - 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} coherences for {} qubits, got {}",
                n_qubits.saturating_sub(1),
                n_qubits,
                beta.len()
            )));
        }
        if let Some(b) = beta.iter().find(|b| b.norm() > 1.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "coherence magnitude {} exceeds 1",
                b.norm()
            )));
        }
        Ok(Self { beta, n_qubits })
    }

    pub fn beta(&self) -> &[Complex64] {
        &self.beta
    }

    pub fn qubits(&self) -> usize {
        self.n_qubits
    }
}

fn psd_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut d = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        let v = eig.eigenvalues[i];
        d[(i, i)] = Complex64::new(if v > 0.0 { v.sqrt() } else { 0.0 }, 0.0);
    }
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

fn ensure_physical(rho: &DensityMatrix, tol: f64) -> Result<()> {
    let min = rho.min_eigenvalue();
    if min < -tol {
        return Err(Error::Unphysical {
            min_eigenvalue: min,
        });
    }
    Ok(())
}

/// Wootters concurrence of a physical two-qubit state, in [0, 1].
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    ensure_physical(rho, Tolerances::default().psd)?;

    let yy = pauli_pair(PauliOp::Y, PauliOp::Y);
    let rho_star = rho.matrix().map(|z| z.conj());
    let rho_tilde = &yy * rho_star * &yy;
    let s = psd_sqrt(rho.matrix());
    let m = &s * rho_tilde * &s;

    let mut lambdas: Vec<f64> = hermitian_eigenvalues(&m)
        .into_iter()
        .map(|v| if v > 0.0 { v.sqrt() } else { 0.0 })
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Closed-form concurrence on the dynamical cone:
/// `C = max{0, R - (1 + n_ZZ)/2}`.
///
/// Errors if the point lies outside the cone.
pub fn concurrence_d3(p: &D3Point) -> Result<f64> {
    if !d3_membership(p) {
        return Err(Error::OutsideD3 {
            n_xx: p.n_xx,
            n_xy: p.n_xy,
            n_zz: p.n_zz,
        });
    }
    Ok((p.radius() - (1.0 + p.n_zz) / 2.0).max(0.0))
}

/// Partial transpose over one qubit. The result is Hermitian with unit
/// trace but in general not positive.
pub fn partial_transpose(rho: &DensityMatrix, part: Partition) -> Result<DMatrix<Complex64>> {
    let n = rho.qubits();
    let k = part.transposed_qubit;
    if k >= n {
        return Err(Error::QubitIndexOutOfRange {
            index: k,
            qubits: n,
        });
    }
    let dim = rho.dim();
    let mask = 1usize << (n - 1 - k);
    let m = rho.matrix();
    let out = DMatrix::from_fn(dim, dim, |a, b| {
        let ap = (a & !mask) | (b & mask);
        let bp = (b & !mask) | (a & mask);
        m[(ap, bp)]
    });
    Ok(out)
}

/// Trace norm of a Hermitian matrix: sum of absolute eigenvalues.
pub fn trace_norm(h: &DMatrix<Complex64>) -> f64 {
    hermitian_eigenvalues(h).iter().map(|v| v.abs()).sum()
}

/// Negativity `N = (||rho^T_A||_1 - 1)/2`: the magnitude of the sum of
/// negative eigenvalues of the partial transpose.
pub fn negativity(rho: &DensityMatrix, part: Partition) -> Result<f64> {
    ensure_physical(rho, Tolerances::default().psd)?;
    let pt = partial_transpose(rho, part)?;
    Ok(((trace_norm(&pt) - 1.0) / 2.0).max(0.0))
}

/// PPT predicate: negativity at most `tol`. Exact separability for two
/// qubits; a working criterion for more.
pub fn is_separable_ppt(rho: &DensityMatrix, part: Partition, tol: f64) -> Result<bool> {
    Ok(negativity(rho, part)? <= tol)
}

/// Negativity of a state on the single-excitation subspace from its scaled
/// coherences: `N = (1/N) sqrt(sum |beta_i|^2)`.
pub fn negativity_w_basis(v: &WCoherenceVector) -> f64 {
    let sum: f64 = v.beta.iter().map(|b| b.norm_sqr()).sum();
    sum.sqrt() / v.n_qubits as f64
}

/// Extract the scaled coherences `beta_i = N rho[e_j, e_k]` moved by a
/// partial transpose on qubit `k`, where `e_j` is the basis state with a
/// single excitation on qubit `j`.
///
/// Errors if the state has weight outside the single-excitation subspace.
pub fn w_coherences(rho: &DensityMatrix, part: Partition) -> Result<WCoherenceVector> {
    let n = rho.qubits();
    let k = part.transposed_qubit;
    if k >= n {
        return Err(Error::QubitIndexOutOfRange {
            index: k,
            qubits: n,
        });
    }
    let dim = rho.dim();
    let excitation = |j: usize| 1usize << (n - 1 - j);
    let manifold: Vec<usize> = (0..n).map(excitation).collect();

    let mut leak: f64 = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            if !manifold.contains(&a) || !manifold.contains(&b) {
                leak += rho.matrix()[(a, b)].norm_sqr();
            }
        }
    }
    let leak = leak.sqrt();
    if leak > Tolerances::default().herm {
        return Err(Error::ExcitationSubspaceLeak { weight: leak });
    }

    let col = excitation(k);
    let beta: Vec<Complex64> = (0..n)
        .filter(|&j| j != k)
        .map(|j| rho.matrix()[(excitation(j), col)] * Complex64::new(n as f64, 0.0))
        .collect();
    WCoherenceVector::new(beta, n)
}
