#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use twirlmit::channels::{haar_unitary, Channel, PauliChannel};
use twirlmit::qcore::{DensityMatrix, Gate, Operator, C64};
use twirlmit::sim::Circuit;

/// Random full-rank state `G G† / tr(G G†)` from a complex Ginibre matrix.
pub fn random_density<R: Rng>(rng: &mut R, n: usize) -> DensityMatrix {
    let d = 1 << n;
    let g = DMatrix::from_fn(d, d, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let m = &g * g.adjoint();
    let tr = m.trace();
    let m = m / tr;
    // symmetrize away rounding
    let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    DensityMatrix::from_operator(Operator::from_matrix(m).unwrap()).unwrap()
}

/// Random Hermitian matrix.
pub fn random_hermitian<R: Rng>(rng: &mut R, d: usize) -> Operator {
    let g = DMatrix::from_fn(d, d, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    Operator::from_matrix((&g + g.adjoint()) * C64::new(0.5, 0.0)).unwrap()
}

pub fn random_pauli<R: Rng>(rng: &mut R) -> PauliChannel {
    let w: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>());
    let s: f64 = w.iter().sum();
    let px = w[1] / s;
    let py = w[2] / s;
    let pz = w[3] / s;
    PauliChannel::new(1.0 - px - py - pz, px, py, pz).unwrap()
}

/// Random single-qubit channel from a Haar unitary on system ⊗ ancilla.
pub fn random_channel<R: Rng>(rng: &mut R) -> Channel {
    let u = haar_unitary(rng, 4);
    let kraus = (0..2)
        .map(|a| {
            Operator::from_matrix(DMatrix::from_fn(2, 2, |sp, s| u.get(sp * 2 + a, s * 2))).unwrap()
        })
        .collect();
    Channel::new(kraus).unwrap()
}

pub fn random_gate<R: Rng>(rng: &mut R, n: usize) -> (Gate, Vec<usize>) {
    let angle = |rng: &mut R| rng.random_range(-3.2..3.2);
    let q = rng.random_range(0..n);
    if n > 1 && rng.random_bool(0.3) {
        let mut r = rng.random_range(0..n - 1);
        if r >= q {
            r += 1;
        }
        let g = match rng.random_range(0..4) {
            0 => Gate::Cx,
            1 => Gate::Cz,
            2 => Gate::CRy(angle(rng)),
            _ => Gate::CPhase(angle(rng)),
        };
        return (g, vec![q, r]);
    }
    let g = match rng.random_range(0..7) {
        0 => Gate::H,
        1 => Gate::X,
        2 => Gate::Ry(angle(rng)),
        3 => Gate::U3(angle(rng), angle(rng), angle(rng)),
        4 => Gate::V,
        5 => Gate::Phase(angle(rng)),
        _ => Gate::U2(angle(rng), angle(rng)),
    };
    (g, vec![q])
}

/// Random circuit on `n` qubits measuring all of them.
pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, depth: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for _ in 0..depth {
        let (g, t) = random_gate(rng, n);
        c.gate(g, &t).unwrap();
    }
    c.measure_all();
    c
}
