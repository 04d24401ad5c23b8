//! Pure and mixed register states, and the index bookkeeping needed to apply
//! a `k`-qubit operator to selected qubits of an `n`-qubit register without
//! ever forming the embedded `2^n × 2^n` matrix.

use nalgebra::{DMatrix, SymmetricEigen};

use super::operator::{Operator, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Tolerance used by [`DensityMatrix::validate`] for Hermiticity and trace.
pub const STATE_TOL: f64 = 1e-12;
/// Smallest eigenvalue tolerated by [`DensityMatrix::validate`].
pub const EIGEN_FLOOR: f64 = -1e-10;

pub(crate) fn check_targets(targets: &[usize], n_qubits: usize) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::EmptyQubitList);
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n_qubits {
            return Err(Error::QubitOutOfRange { index: t, n_qubits });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateQubit(t));
        }
    }
    Ok(())
}

/// Bit mask of qubit `q` in a basis index of an `n`-qubit register.
#[inline]
pub(crate) fn qubit_mask(q: usize, n_qubits: usize) -> usize {
    1 << (n_qubits - 1 - q)
}

/// Index groups for a local operator: each inner vector lists the `2^k`
/// register indices that share all non-target bits, ordered by the local
/// operator's basis index (first target most significant).
pub(crate) fn index_groups(targets: &[usize], n_qubits: usize) -> Vec<Vec<usize>> {
    let k = targets.len();
    let masks: Vec<usize> = targets.iter().map(|&t| qubit_mask(t, n_qubits)).collect();
    let all: usize = masks.iter().sum();
    let offsets: Vec<usize> = (0..1usize << k)
        .map(|a| {
            (0..k)
                .filter(|&t| a & (1 << (k - 1 - t)) != 0)
                .map(|t| masks[t])
                .sum()
        })
        .collect();
    (0..1usize << n_qubits)
        .filter(|base| base & all == 0)
        .map(|base| offsets.iter().map(|o| base | o).collect())
        .collect()
}

fn check_gate(op: &Operator, targets: &[usize], n_qubits: usize) -> Result<()> {
    check_targets(targets, n_qubits)?;
    let expected = 1usize << targets.len();
    if op.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            actual: op.dim(),
        });
    }
    Ok(())
}

/// `m ← (op ⊗ I) m` with `op` embedded on `targets`. `m` is column-major `dim × dim`.
fn left_multiply(m: &mut DMatrix<C64>, op: &Operator, groups: &[Vec<usize>]) {
    let dim = m.nrows();
    let local = op.dim();
    let mut buf = vec![ZERO; local];
    let data = m.as_mut_slice();
    for col in 0..dim {
        let column = &mut data[col * dim..(col + 1) * dim];
        for group in groups {
            for (a, &idx) in group.iter().enumerate() {
                buf[a] = column[idx];
            }
            for (a, &idx) in group.iter().enumerate() {
                let mut acc = ZERO;
                for (b, v) in buf.iter().enumerate() {
                    acc += op.get(a, b) * v;
                }
                column[idx] = acc;
            }
        }
    }
}

/// `m ← m (op ⊗ I)†` with `op` embedded on `targets`.
fn right_multiply_adjoint(m: &mut DMatrix<C64>, op: &Operator, groups: &[Vec<usize>]) {
    let dim = m.nrows();
    let local = op.dim();
    let mut buf = vec![ZERO; local];
    let data = m.as_mut_slice();
    for row in 0..dim {
        for group in groups {
            for (a, &idx) in group.iter().enumerate() {
                buf[a] = data[idx * dim + row];
            }
            for (a, &idx) in group.iter().enumerate() {
                let mut acc = ZERO;
                for (b, v) in buf.iter().enumerate() {
                    acc += v * op.get(a, b).conj();
                }
                data[idx * dim + row] = acc;
            }
        }
    }
}

/// A normalized pure state of `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: amplitudes.len(),
            });
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::Invariant(format!(
                "state vector has squared norm {norm}"
            )));
        }
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    /// The computational basis state with integer label `index`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << n_qubits];
        amplitudes[index] = ONE;
        StateVector {
            n_qubits,
            amplitudes,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn apply_gate(&self, gate: &Operator, targets: &[usize]) -> Result<Self> {
        check_gate(gate, targets, self.n_qubits)?;
        let mut amplitudes = self.amplitudes.clone();
        let mut buf = vec![ZERO; gate.dim()];
        for group in index_groups(targets, self.n_qubits) {
            for (a, &idx) in group.iter().enumerate() {
                buf[a] = amplitudes[idx];
            }
            for (a, &idx) in group.iter().enumerate() {
                amplitudes[idx] = buf
                    .iter()
                    .enumerate()
                    .map(|(b, v)| gate.get(a, b) * v)
                    .sum();
            }
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amplitudes,
        })
    }

    pub fn to_density(&self) -> DensityMatrix {
        let dim = self.amplitudes.len();
        let matrix = DMatrix::from_fn(dim, dim, |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        });
        DensityMatrix {
            n_qubits: self.n_qubits,
            matrix,
        }
    }
}

/// A mixed state of `n` qubits stored as a dense `2^n × 2^n` matrix.
///
/// Operations return new values; nothing is mutated in place from the
/// caller's point of view.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: DMatrix<C64>,
}

impl DensityMatrix {
    /// `|0…0⟩⟨0…0|`.
    pub fn zero_state(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let dim = 1usize << n_qubits;
        let mut matrix = DMatrix::zeros(dim, dim);
        matrix[(index, index)] = ONE;
        DensityMatrix { n_qubits, matrix }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let matrix = DMatrix::identity(dim, dim) * C64::new(1.0 / dim as f64, 0.0);
        DensityMatrix { n_qubits, matrix }
    }

    /// Wraps a matrix after checking the density-matrix invariants.
    pub fn from_operator(op: Operator) -> Result<Self> {
        let n_qubits = op.n_qubits().ok_or(Error::DimensionMismatch {
            expected: op.dim().next_power_of_two(),
            actual: op.dim(),
        })?;
        let rho = DensityMatrix {
            n_qubits,
            matrix: op.into_matrix(),
        };
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_matrix_unchecked(n_qubits: usize, matrix: DMatrix<C64>) -> Self {
        DensityMatrix { n_qubits, matrix }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn to_operator(&self) -> Operator {
        Operator::from_matrix(self.matrix.clone()).expect("density matrices are square")
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.to_operator().distance(&self.to_operator().adjoint())
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.matrix + self.matrix.adjoint()) * C64::new(0.5, 0.0);
        SymmetricEigen::new(herm)
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks Hermiticity and unit trace within 1e-12 and eigenvalues ≥ −1e-10.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > STATE_TOL {
            return Err(Error::Invariant(format!("not Hermitian (error {herm:e})")));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::Invariant(format!("trace {tr} != 1")));
        }
        let min = self.min_eigenvalue();
        if min < EIGEN_FLOOR {
            return Err(Error::Invariant(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    /// Diagonal of the matrix: computational-basis outcome probabilities.
    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            n_qubits: self.n_qubits + other.n_qubits,
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    /// `ρ ↦ U ρ U†` with `U` acting on `targets` (first target = most
    /// significant bit of `U`'s basis index).
    pub fn apply_gate(&self, gate: &Operator, targets: &[usize]) -> Result<Self> {
        check_gate(gate, targets, self.n_qubits)?;
        let groups = index_groups(targets, self.n_qubits);
        let mut matrix = self.matrix.clone();
        left_multiply(&mut matrix, gate, &groups);
        right_multiply_adjoint(&mut matrix, gate, &groups);
        Ok(DensityMatrix {
            n_qubits: self.n_qubits,
            matrix,
        })
    }

    /// `ρ ↦ Σ K ρ K†` with every `K` acting on `targets`.
    pub fn apply_kraus(&self, kraus: &[Operator], targets: &[usize]) -> Result<Self> {
        check_targets(targets, self.n_qubits)?;
        let groups = index_groups(targets, self.n_qubits);
        let dim = self.dim();
        let mut total = DMatrix::zeros(dim, dim);
        for k in kraus {
            check_gate(k, targets, self.n_qubits)?;
            let mut term = self.matrix.clone();
            left_multiply(&mut term, k, &groups);
            right_multiply_adjoint(&mut term, k, &groups);
            total += term;
        }
        Ok(DensityMatrix {
            n_qubits: self.n_qubits,
            matrix: total,
        })
    }

    /// Reduced state on `keep`, in the order given.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        check_targets(keep, self.n_qubits)?;
        let n = self.n_qubits;
        let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let spread = |qubits: &[usize], a: usize| -> usize {
            let k = qubits.len();
            qubits
                .iter()
                .enumerate()
                .filter(|(t, _)| a & (1 << (k - 1 - t)) != 0)
                .map(|(_, &q)| qubit_mask(q, n))
                .sum()
        };
        let kept_idx: Vec<usize> = (0..1usize << keep.len()).map(|a| spread(keep, a)).collect();
        let traced_idx: Vec<usize> = (0..1usize << traced.len())
            .map(|t| spread(&traced, t))
            .collect();
        let out_dim = kept_idx.len();
        let matrix = DMatrix::from_fn(out_dim, out_dim, |i, j| {
            traced_idx
                .iter()
                .map(|&t| self.matrix[(kept_idx[i] | t, kept_idx[j] | t)])
                .sum()
        });
        Ok(DensityMatrix {
            n_qubits: keep.len(),
            matrix,
        })
    }

    /// Entrywise maximum absolute difference.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.to_operator().max_abs_diff(&other.to_operator())
    }
}

/// `ρ ↦ U ρ U†` on `targets`.
pub fn apply_gate(
    state: &DensityMatrix,
    gate: &Operator,
    targets: &[usize],
) -> Result<DensityMatrix> {
    state.apply_gate(gate, targets)
}

/// Reduced state on `keep`.
pub fn partial_trace(state: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    state.partial_trace(keep)
}
