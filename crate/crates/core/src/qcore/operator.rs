use std::ops::{Add, Mul};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// A dense square complex matrix.
///
/// Gates, Kraus operators, POVM elements and the matrices inside density
/// matrices are all `Operator`s. Basis index `i` of a register of `n` qubits
/// carries qubit 0 in its most significant bit.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator(DMatrix<C64>);

impl Operator {
    /// Builds a `dim × dim` operator from row-major entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        Ok(Operator(DMatrix::from_row_slice(dim, dim, entries)))
    }

    pub fn from_matrix(matrix: DMatrix<C64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                actual: matrix.ncols(),
            });
        }
        Ok(Operator(matrix))
    }

    pub fn identity(dim: usize) -> Self {
        Operator(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Operator(DMatrix::zeros(dim, dim))
    }

    /// `|i⟩⟨j|` on a `dim`-dimensional space.
    pub fn ket_bra(i: usize, j: usize, dim: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        m[(i, j)] = ONE;
        Operator(m)
    }

    /// Computational-basis projector `|i⟩⟨i|`.
    pub fn projector(i: usize, dim: usize) -> Self {
        Self::ket_bra(i, i, dim)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// Number of qubits when the dimension is a power of two.
    pub fn n_qubits(&self) -> Option<usize> {
        let d = self.dim();
        d.is_power_of_two().then(|| d.trailing_zeros() as usize)
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Operator(self.0.adjoint())
    }

    pub fn scale(&self, factor: C64) -> Self {
        Operator(&self.0 * factor)
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius norm of `self - other`.
    pub fn distance(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "operator dimensions differ");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖G†G − I‖_F ≤ tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        (&self.adjoint() * self).distance(&Operator::identity(self.dim())) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.distance(&self.adjoint()) <= tol
    }

    /// Equality modulo a global phase: finds the phase from the largest entry
    /// of `other` and compares the aligned matrices entrywise.
    pub fn approx_eq_up_to_phase(&self, other: &Operator, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let (idx, pivot) = other
            .0
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .map(|(i, z)| (i, *z))
            .unwrap_or((0, ZERO));
        if pivot.norm() <= tol {
            return self.frobenius_norm() <= tol;
        }
        let mine = self.0.as_slice()[idx];
        if mine.norm() <= tol {
            return false;
        }
        let phase = (pivot / mine) / (pivot / mine).norm();
        self.scale(phase).distance(other) <= tol
    }

    /// Entrywise maximum absolute difference.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        Operator(&self.0 * &rhs.0)
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        Operator(&self.0 + &rhs.0)
    }
}

/// Kronecker product `a ⊗ b`; `a` acts on the more significant qubits.
pub fn tensor(a: &Operator, b: &Operator) -> Operator {
    Operator(a.0.kronecker(&b.0))
}

/// `ops[0] ⊗ ops[1] ⊗ …`. An empty list yields the 1×1 identity.
pub fn tensor_all<'a, I>(ops: I) -> Operator
where
    I: IntoIterator<Item = &'a Operator>,
{
    ops.into_iter()
        .fold(Operator::identity(1), |acc, op| tensor(&acc, op))
}

/// Shorthand for building small matrices in tests and gate tables.
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
