//! Pauli operators and tensor-product basis for qubit systems.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Single-qubit Pauli operator label, ordered `I < X < Y < Z`.
///
/// This ordering fixes the component layout of
/// [`PolarizationVector`](crate::state_space::PolarizationVector).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

/// All Pauli labels in canonical order.
pub const PAULI_OPS: [PauliOp; 4] = [PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z];

impl PauliOp {
    /// The 2x2 matrix of this operator.
    pub fn matrix(self) -> DMatrix<Complex64> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let entries = match self {
            PauliOp::I => [one, zero, zero, one],
            PauliOp::X => [zero, one, one, zero],
            PauliOp::Y => [zero, -i, i, zero],
            PauliOp::Z => [one, zero, zero, -one],
        };
        DMatrix::from_row_slice(2, 2, &entries)
    }

    fn index(self) -> usize {
        match self {
            PauliOp::I => 0,
            PauliOp::X => 1,
            PauliOp::Y => 2,
            PauliOp::Z => 3,
        }
    }
}

impl std::fmt::Display for PauliOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PauliOp::I => write!(f, "I"),
            PauliOp::X => write!(f, "X"),
            PauliOp::Y => write!(f, "Y"),
            PauliOp::Z => write!(f, "Z"),
        }
    }
}

/// Two-qubit operator `sigma_i (x) sigma_j`, qubit 0 on the left factor.
pub fn pauli_pair(i: PauliOp, j: PauliOp) -> DMatrix<Complex64> {
    i.matrix().kronecker(&j.matrix())
}

/// Position of the pair `(i, j)` in the 15-component layout: lexicographic
/// over `I < X < Y < Z` with `(I, I)` omitted.
///
/// Returns `None` for `(I, I)`.
pub fn pair_index(i: PauliOp, j: PauliOp) -> Option<usize> {
    let flat = 4 * i.index() + j.index();
    if flat == 0 {
        None
    } else {
        Some(flat - 1)
    }
}

/// The 15 ordered pairs `(i, j) != (I, I)` matching [`pair_index`].
pub fn pair_labels() -> [(PauliOp, PauliOp); 15] {
    let mut out = [(PauliOp::I, PauliOp::X); 15];
    let mut k = 0;
    for &i in &PAULI_OPS {
        for &j in &PAULI_OPS {
            if let Some(idx) = pair_index(i, j) {
                out[idx] = (i, j);
                k += 1;
            }
        }
    }
    debug_assert_eq!(k, 15);
    out
}
