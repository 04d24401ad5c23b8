//! Channel twirling: the three-unitary twirl, its Haar-measure Monte-Carlo
//! counterpart, and the collective `G^{⊗n}` twirl on a register.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use super::kraus::{apply_channel, Channel};
use crate::error::{Error, Result};
use crate::qcore::{pauli_conjugation_table, DensityMatrix, Gate, Operator, C64};

/// Three single-qubit unitaries whose conjugation actions permute the
/// Paulis, so that averaging over them depolarizes any Pauli channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwirlSet {
    gates: [Gate; 3],
}

impl TwirlSet {
    /// `{I, V, W}`.
    pub fn standard() -> Self {
        TwirlSet {
            gates: [Gate::I, Gate::V, Gate::W],
        }
    }

    /// Accepts three single-qubit gates if each is a signed Pauli
    /// permutation and together they send every Pauli to all three Paulis.
    pub fn new(gates: [Gate; 3]) -> Result<Self> {
        let mut images = [[false; 4]; 3];
        for g in &gates {
            if g.arity() != 1 {
                return Err(Error::NotSingleQubit(g.arity()));
            }
            let table = pauli_conjugation_table(&g.matrix()).ok_or_else(|| {
                Error::InvalidArgument(format!("{g} does not permute the Pauli matrices"))
            })?;
            for (k, (_, image)) in table.iter().enumerate() {
                images[k][*image] = true;
            }
        }
        if images.iter().any(|row| !row[1..].iter().all(|&hit| hit)) {
            return Err(Error::InvalidArgument(
                "twirl set does not map each Pauli onto all three Paulis".into(),
            ));
        }
        Ok(TwirlSet { gates })
    }

    pub fn gates(&self) -> &[Gate; 3] {
        &self.gates
    }

    pub fn operators(&self) -> [Operator; 3] {
        self.gates.map(|g| g.matrix())
    }
}

impl Default for TwirlSet {
    fn default() -> Self {
        TwirlSet::standard()
    }
}

fn require_single_qubit(ch: &Channel) -> Result<()> {
    if ch.n_qubits() != 1 {
        return Err(Error::NotSingleQubit(ch.n_qubits()));
    }
    Ok(())
}

/// Kraus operators of `ρ ↦ w · U† Λ[U ρ U†] U`.
fn conjugated_kraus<'a>(
    ch: &'a Channel,
    u: &'a Operator,
    weight: f64,
) -> impl Iterator<Item = Operator> + 'a {
    let s = C64::new(weight.sqrt(), 0.0);
    ch.kraus()
        .iter()
        .map(move |k| (&(&u.adjoint() * k) * u).scale(s))
}

fn choi_of(kraus: impl IntoIterator<Item = Operator>, dim: usize) -> DMatrix<C64> {
    let mut j = DMatrix::<C64>::zeros(dim * dim, dim * dim);
    for k in kraus {
        let v: Vec<C64> = (0..dim * dim)
            .map(|idx| k.get(idx % dim, idx / dim))
            .collect();
        for r in 0..dim * dim {
            for col in 0..dim * dim {
                j[(r, col)] += v[r] * v[col].conj();
            }
        }
    }
    j
}

/// `ρ ↦ (1/3) Σ_G G† Λ[G ρ G†] G` over the twirl set, returned as a minimal
/// Kraus set extracted from the Choi matrix.
pub fn twirl3(ch: &Channel, set: &TwirlSet) -> Result<Channel> {
    require_single_qubit(ch)?;
    let ops = set.operators();
    let kraus = ops
        .iter()
        .flat_map(|g| conjugated_kraus(ch, g, 1.0 / 3.0).collect::<Vec<_>>());
    Channel::from_choi(&Operator::from_matrix(choi_of(kraus, 2))?)
}

/// Haar-random `dim × dim` unitary: QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: rand::Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for col in 0..dim {
        let d = r[(col, col)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for row in 0..dim {
            q[(row, col)] *= phase;
        }
    }
    Operator::from_matrix(q).expect("square")
}

/// Monte-Carlo estimate of the Haar twirl `∫ dμ(U) U† Λ[U ρ U†] U`.
///
/// Samples are drawn from a ChaCha20 stream seeded with `seed` and summed in
/// sample order, so the result is reproducible bit for bit.
pub fn twirl_haar_mc(ch: &Channel, n_samples: usize, seed: u64) -> Result<Channel> {
    require_single_qubit(ch)?;
    if n_samples == 0 {
        return Err(Error::InvalidArgument(
            "n_samples must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut acc = DMatrix::<C64>::zeros(4, 4);
    let w = 1.0 / n_samples as f64;
    for _ in 0..n_samples {
        let u = haar_unitary(&mut rng, 2);
        acc += choi_of(conjugated_kraus(ch, &u, w), 2);
    }
    Channel::from_choi(&Operator::from_matrix(acc)?)
}

/// Collective twirl of a product of per-qubit channels on an `n`-qubit state:
/// `(1/3) Σ_G (G^{⊗n})† Λ^{(n)}[G^{⊗n} ρ (G^{⊗n})†] G^{⊗n}`.
pub fn collective_twirl_sim(
    state: &DensityMatrix,
    per_qubit_channels: &[Channel],
    set: &TwirlSet,
) -> Result<DensityMatrix> {
    let n = state.n_qubits();
    if per_qubit_channels.len() != n {
        return Err(Error::ChannelCount {
            expected: n,
            actual: per_qubit_channels.len(),
        });
    }
    for ch in per_qubit_channels {
        require_single_qubit(ch)?;
    }
    let dim = state.dim();
    let mut acc = DMatrix::<C64>::zeros(dim, dim);
    for g in set.operators() {
        let gd = g.adjoint();
        let mut rho = state.clone();
        for q in 0..n {
            rho = rho.apply_gate(&g, &[q])?;
        }
        for (q, ch) in per_qubit_channels.iter().enumerate() {
            rho = apply_channel(&rho, ch, &[q])?;
        }
        for q in 0..n {
            rho = rho.apply_gate(&gd, &[q])?;
        }
        acc += rho.matrix();
    }
    Ok(DensityMatrix::from_matrix_unchecked(
        n,
        acc * C64::new(1.0 / 3.0, 0.0),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{depolarizing, eta_of_pauli, pauli_channel, Axis, PauliChannel};
    use crate::qcore::{c, ONE, ZERO};

    /// Brute-force evaluation of the three-unitary average on each basis
    /// matrix `E_ij`, assembled into a column-stacked superoperator. Uses
    /// only `Channel::apply_to`, never the Choi/Kraus route under test.
    fn twirl3_superop_oracle(ch: &Channel) -> Operator {
        let mut s = Operator::zeros(4).into_matrix();
        for i in 0..2 {
            for j in 0..2 {
                let e = Operator::ket_bra(i, j, 2);
                let mut out = Operator::zeros(2);
                for g in TwirlSet::standard().operators() {
                    let inner = &(&g * &e) * &g.adjoint();
                    let mapped = ch.apply_to(&inner);
                    out = &out + &(&(&g.adjoint() * &mapped) * &g);
                }
                for a in 0..2 {
                    for b in 0..2 {
                        s[(b * 2 + a, j * 2 + i)] = out.get(a, b) / 3.0;
                    }
                }
            }
        }
        Operator::from_matrix(s).unwrap()
    }

    #[test]
    fn oracle_fixes_eta_for_x_flip() {
        // Twirled X-flip(0.3) sends |0⟩⟨0| to diag(1 − η/2, η/2); read η off.
        let s = twirl3_superop_oracle(&pauli_channel(&PauliChannel::flip(Axis::X, 0.3).unwrap()));
        let p1 = s.get(3, 0).re;
        let eta = 2.0 * p1;
        assert!((eta - 0.4).abs() < 1e-15, "eta = {eta}");
        // the oracle output is depolarizing with that η
        let d = depolarizing(0.4).unwrap().superoperator();
        assert!(s.max_abs_diff(&d) < 1e-15);
    }

    #[test]
    fn twirl3_identity_is_identity() {
        let out = twirl3(&Channel::identity(1), &TwirlSet::standard()).unwrap();
        assert!(out.superoperator_distance(&Channel::identity(1)) < 1e-12);
    }

    #[test]
    fn twirl3_matches_oracle_and_depolarizes_x_flip() {
        let flip = pauli_channel(&PauliChannel::new(0.7, 0.3, 0.0, 0.0).unwrap());
        let out = twirl3(&flip, &TwirlSet::standard()).unwrap();
        assert!(
            out.superoperator()
                .max_abs_diff(&twirl3_superop_oracle(&flip))
                < 1e-12
        );
        let eta = eta_of_pauli(&PauliChannel::new(0.7, 0.3, 0.0, 0.0).unwrap());
        assert!(out.superoperator_distance(&depolarizing(eta).unwrap()) < 1e-12);
    }

    #[test]
    fn twirl3_fixed_points() {
        for eta in [0.0, 0.1, 0.4, 1.0] {
            let d = depolarizing(eta).unwrap();
            let out = twirl3(&d, &TwirlSet::standard()).unwrap();
            assert!(out.superoperator_distance(&d) < 1e-12, "eta {eta}");
        }
    }

    #[test]
    fn twirl3_of_amplitude_damping_is_not_depolarizing() {
        let g: f64 = 0.3;
        let k0 = Operator::from_rows(2, &[ONE, ZERO, ZERO, c((1.0 - g).sqrt(), 0.0)]).unwrap();
        let k1 = Operator::from_rows(2, &[ZERO, c(g.sqrt(), 0.0), ZERO, ZERO]).unwrap();
        let damp = Channel::new(vec![k0, k1]).unwrap();
        let out = twirl3(&damp, &TwirlSet::standard()).unwrap();
        assert!(
            out.superoperator()
                .max_abs_diff(&twirl3_superop_oracle(&damp))
                < 1e-12
        );
        // the non-unital part survives the three-element twirl
        assert!(out.unitality_error() > 1e-3, "{}", out.unitality_error());
    }

    #[test]
    fn twirl3_rejects_two_qubit_channels() {
        assert_eq!(
            twirl3(&Channel::identity(2), &TwirlSet::standard()),
            Err(Error::NotSingleQubit(2))
        );
    }

    #[test]
    fn twirl_set_validation() {
        assert!(TwirlSet::new([Gate::I, Gate::V, Gate::W]).is_ok());
        assert!(TwirlSet::new([Gate::I, Gate::V, Gate::V]).is_err());
        assert!(TwirlSet::new([Gate::I, Gate::H, Gate::V]).is_err());
        assert!(TwirlSet::new([Gate::I, Gate::Ry(0.2), Gate::W]).is_err());
        // a different valid set: conjugating by X keeps the cyclic structure
        assert!(TwirlSet::new([Gate::X, Gate::V, Gate::W]).is_ok());
    }

    #[test]
    fn haar_unitaries_are_unitary_and_seeded() {
        let mut a = ChaCha20Rng::seed_from_u64(3);
        let mut b = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..20 {
            let u = haar_unitary(&mut a, 2);
            assert!(u.is_unitary(1e-12));
            assert_eq!(u, haar_unitary(&mut b, 2));
        }
    }

    #[test]
    fn haar_twirl_small_sample_checks() {
        let out = twirl_haar_mc(&Channel::identity(1), 50, 1).unwrap();
        assert!(out.superoperator_distance(&Channel::identity(1)) < 1e-12);
        assert!(twirl_haar_mc(&Channel::identity(1), 0, 1).is_err());
        let d = depolarizing(0.4).unwrap();
        let out = twirl_haar_mc(&d, 2000, 5).unwrap();
        assert!(out.superoperator_distance(&d) < 1e-12);
    }

    #[test]
    fn collective_identity_channels_leave_state_unchanged() {
        let rho = DensityMatrix::zero_state(2)
            .apply_gate(&Gate::H.matrix(), &[0])
            .unwrap()
            .apply_gate(&Gate::Cx.matrix(), &[0, 1])
            .unwrap();
        let ids = vec![Channel::identity(1), Channel::identity(1)];
        let out = collective_twirl_sim(&rho, &ids, &TwirlSet::standard()).unwrap();
        assert!(out.max_abs_diff(&rho) < 1e-12);
    }

    #[test]
    fn collective_two_qubit_marginal_is_depolarized() {
        let rho = DensityMatrix::basis(2, 0b10);
        let flip = pauli_channel(&PauliChannel::flip(Axis::X, 0.3).unwrap());
        let out = collective_twirl_sim(&rho, &[flip, Channel::identity(1)], &TwirlSet::standard())
            .unwrap();
        let marginal = out.partial_trace(&[0]).unwrap();
        // oracle: D_0.4 on |1⟩⟨1| = diag(0.2, 0.8)
        assert!((marginal.get(0, 0).re - 0.2).abs() < 1e-12);
        assert!((marginal.get(1, 1).re - 0.8).abs() < 1e-12);
        let other = out.partial_trace(&[1]).unwrap();
        assert!(other.max_abs_diff(&DensityMatrix::basis(1, 0)) < 1e-12);
    }

    #[test]
    fn collective_rejects_wrong_channel_count() {
        assert_eq!(
            collective_twirl_sim(
                &DensityMatrix::zero_state(2),
                &[Channel::identity(1)],
                &TwirlSet::standard()
            ),
            Err(Error::ChannelCount {
                expected: 2,
                actual: 1
            })
        );
    }
}
