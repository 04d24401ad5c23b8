use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::qcore::{tensor, DensityMatrix, Operator, C64};

/// Tolerance on `Σ K†K = I` for a channel to count as trace preserving.
pub const TP_TOL: f64 = 1e-10;
/// Choi eigenvalues at or below this are dropped when extracting Kraus operators.
pub const CHOI_CUTOFF: f64 = 1e-12;
/// Choi eigenvalues between this and zero are clamped to zero.
pub const CHOI_NEGATIVE_FLOOR: f64 = -1e-10;

/// A completely positive trace-preserving map in Kraus form.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    n_qubits: usize,
    kraus: Vec<Operator>,
}

impl Channel {
    pub fn new(kraus: Vec<Operator>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidArgument("a channel needs a Kraus operator".into()))?;
        let n_qubits = first.n_qubits().ok_or(Error::DimensionMismatch {
            expected: first.dim().next_power_of_two(),
            actual: first.dim(),
        })?;
        if let Some(bad) = kraus.iter().find(|k| k.dim() != first.dim()) {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                actual: bad.dim(),
            });
        }
        let ch = Channel { n_qubits, kraus };
        let err = ch.trace_preservation_error();
        if err > TP_TOL {
            return Err(Error::Invariant(format!(
                "Kraus operators are not trace preserving (error {err:e})"
            )));
        }
        Ok(ch)
    }

    pub fn identity(n_qubits: usize) -> Self {
        Channel {
            n_qubits,
            kraus: vec![Operator::identity(1 << n_qubits)],
        }
    }

    /// `ρ ↦ U ρ U†`.
    pub fn unitary(u: Operator) -> Result<Self> {
        Channel::new(vec![u])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn kraus(&self) -> &[Operator] {
        &self.kraus
    }

    /// `‖Σ K†K − I‖_F`.
    pub fn trace_preservation_error(&self) -> f64 {
        let sum = self
            .kraus
            .iter()
            .fold(Operator::zeros(self.dim()), |acc, k| {
                &acc + &(&k.adjoint() * k)
            });
        sum.distance(&Operator::identity(self.dim()))
    }

    /// `‖Σ KK† − I‖_F`; zero for unital channels such as Pauli channels.
    pub fn unitality_error(&self) -> f64 {
        let sum = self
            .kraus
            .iter()
            .fold(Operator::zeros(self.dim()), |acc, k| {
                &acc + &(k * &k.adjoint())
            });
        sum.distance(&Operator::identity(self.dim()))
    }

    /// Applies the map to a bare matrix of matching dimension.
    pub fn apply_to(&self, m: &Operator) -> Operator {
        self.kraus
            .iter()
            .fold(Operator::zeros(self.dim()), |acc, k| {
                &acc + &(&(k * m) * &k.adjoint())
            })
    }

    /// Column-stacking superoperator `Σ K̄ ⊗ K`, so that
    /// `vec(Λ[ρ]) = S · vec(ρ)`.
    pub fn superoperator(&self) -> Operator {
        let d2 = self.dim() * self.dim();
        self.kraus.iter().fold(Operator::zeros(d2), |acc, k| {
            let conj = Operator::from_matrix(k.matrix().map(|z| z.conj())).expect("square");
            &acc + &tensor(&conj, k)
        })
    }

    /// Choi matrix `Σ_ij |i⟩⟨j| ⊗ Λ[|i⟩⟨j|]`.
    pub fn choi(&self) -> Operator {
        let d = self.dim();
        let mut j = DMatrix::<C64>::zeros(d * d, d * d);
        for k in &self.kraus {
            // column (i, a) of the vectorization holds K[a, i]
            let v: Vec<C64> = (0..d * d).map(|idx| k.get(idx % d, idx / d)).collect();
            for r in 0..d * d {
                for col in 0..d * d {
                    j[(r, col)] += v[r] * v[col].conj();
                }
            }
        }
        Operator::from_matrix(j).expect("square")
    }

    /// Recovers a minimal Kraus set from a Choi matrix by eigendecomposition.
    pub fn from_choi(choi: &Operator) -> Result<Self> {
        let d2 = choi.dim();
        let d = (d2 as f64).sqrt().round() as usize;
        if d * d != d2 || !d.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                actual: d2,
            });
        }
        let herm = (choi.matrix() + choi.matrix().adjoint()) * C64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm);
        let mut kraus = Vec::new();
        for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda < CHOI_NEGATIVE_FLOOR {
                return Err(Error::Invariant(format!(
                    "Choi matrix has eigenvalue {lambda:e}: map is not completely positive"
                )));
            }
            if lambda <= CHOI_CUTOFF {
                continue;
            }
            let v = eig.eigenvectors.column(idx);
            let scale = lambda.sqrt();
            let m = DMatrix::from_fn(d, d, |a, i| v[i * d + a] * scale);
            kraus.push(Operator::from_matrix(m)?);
        }
        if kraus.is_empty() {
            kraus.push(Operator::zeros(d));
        }
        Channel::new(kraus)
    }

    /// Entrywise distance between superoperators, the equality used for channels.
    pub fn superoperator_distance(&self, other: &Channel) -> f64 {
        self.superoperator().max_abs_diff(&other.superoperator())
    }

    /// The Heisenberg-picture dual `M ↦ Σ K† M K`.
    pub fn adjoint(&self) -> ObservableMap {
        ObservableMap {
            n_qubits: self.n_qubits,
            kraus: self.kraus.clone(),
        }
    }
}

/// The dual of a channel, acting on observables and POVM elements.
///
/// It is unital when the underlying channel is trace preserving but is not
/// itself required to preserve trace.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservableMap {
    n_qubits: usize,
    kraus: Vec<Operator>,
}

impl ObservableMap {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `M ↦ Σ K† M K`.
    pub fn apply(&self, m: &Operator) -> Operator {
        let d = 1 << self.n_qubits;
        self.kraus.iter().fold(Operator::zeros(d), |acc, k| {
            &acc + &(&(&k.adjoint() * m) * k)
        })
    }

    /// `‖Σ K† K − I‖_F`, i.e. how far the map is from sending `I` to `I`.
    pub fn unitality_error(&self) -> f64 {
        let d = 1 << self.n_qubits;
        self.apply(&Operator::identity(d))
            .distance(&Operator::identity(d))
    }

    /// Column-stacking superoperator `Σ Kᵀ ⊗ K†`.
    pub fn superoperator(&self) -> Operator {
        let d = 1 << self.n_qubits;
        self.kraus.iter().fold(Operator::zeros(d * d), |acc, k| {
            let transpose = Operator::from_matrix(k.matrix().transpose()).expect("square");
            &acc + &tensor(&transpose, &k.adjoint())
        })
    }
}

/// Heisenberg-picture dual of `ch`.
pub fn adjoint_channel(ch: &Channel) -> ObservableMap {
    ch.adjoint()
}

/// `Σ K ρ K†` with the channel embedded on `targets`.
pub fn apply_channel(
    state: &DensityMatrix,
    ch: &Channel,
    targets: &[usize],
) -> Result<DensityMatrix> {
    if ch.n_qubits() != targets.len() {
        return Err(Error::ArityMismatch {
            expected: ch.n_qubits(),
            actual: targets.len(),
        });
    }
    state.apply_kraus(ch.kraus(), targets)
}
