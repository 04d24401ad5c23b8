//! Worked examples across modules, each checked against an oracle computed
//! here by other means than the code under test.

mod common;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use twirlmit::algorithms::{
    build_bv, build_deutsch, build_qae, qae_estimate, qft_matrix, BvInstance, DeutschCase,
    QaeInstance,
};
use twirlmit::channels::{
    apply_channel, collective_twirl_sim, depolarizing, eta_of_pauli, noise_circuit_fragment,
    pauli_channel, twirl3, twirl_haar_mc, Axis, Channel, PauliChannel, TwirlSet,
};
use twirlmit::mitigation::{
    apply_policy, correct_joint, mitigate_pipeline, project_to_simplex, MitigationConfig,
    NegativePolicy, QuasiDistribution,
};
use twirlmit::qcore::{paulis, DensityMatrix, Gate, Operator, StateVector, C64};
use twirlmit::scenarios::{Preset, BV_STRING};
use twirlmit::sim::{run_exact, run_with_twirl, Circuit, MeasurementModel, TwirlMode};

fn x_flip(p: f64) -> Channel {
    pauli_channel(&PauliChannel::flip(Axis::X, p).unwrap())
}

fn density_of(amps: &[f64]) -> DensityMatrix {
    let n = amps.len().trailing_zeros() as usize;
    let v: Vec<C64> = amps.iter().map(|&a| C64::new(a, 0.0)).collect();
    StateVector::new(n, v).unwrap().to_density()
}

#[test]
fn depolarizing_one_on_half_a_bell_pair() {
    let s = 0.5f64.sqrt();
    let bell = density_of(&[s, 0.0, 0.0, s]);
    let out = apply_channel(&bell, &depolarizing(1.0).unwrap(), &[1]).unwrap();
    assert!(out.max_abs_diff(&DensityMatrix::maximally_mixed(2)) < 1e-12);
}

#[test]
fn ghz_reduced_to_two_qubits() {
    let s = 0.5f64.sqrt();
    let mut amps = [0.0; 8];
    amps[0] = s;
    amps[7] = s;
    let ghz = density_of(&amps);
    let got = ghz.partial_trace(&[0, 1]).unwrap();
    // contract the third index of |ψ⟩⟨ψ| directly
    let mut want = DMatrix::<C64>::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..2 {
                want[(i, j)] += C64::new(amps[i * 2 + k] * amps[j * 2 + k], 0.0);
            }
        }
    }
    let want = DensityMatrix::from_operator(Operator::from_matrix(want).unwrap()).unwrap();
    assert!(got.max_abs_diff(&want) < 1e-12);
}

#[test]
fn adjoint_of_unitary_channel() {
    let u = Gate::U3(0.3, 1.1, -0.4).matrix();
    let ch = Channel::unitary(u.clone()).unwrap();
    let m = paulis()[1].clone();
    let want = &(&u.adjoint() * &m) * &u;
    assert!(ch.adjoint().apply(&m).distance(&want) < 1e-12);
}

/// Twirl by explicit sum over the set acting on a basis of operators.
fn twirl_oracle(ch: &Channel) -> impl Fn(&Operator) -> Operator + '_ {
    move |rho: &Operator| {
        let mut acc = Operator::zeros(2);
        for g in [Gate::I, Gate::V, Gate::W] {
            let g = g.matrix();
            let inner = &(&g * rho) * &g.adjoint();
            let out = &(&g.adjoint() * &ch.apply_to(&inner)) * &g;
            acc = &acc + &out.scale(C64::new(1.0 / 3.0, 0.0));
        }
        acc
    }
}

#[test]
fn twirl_of_x_flip_depolarizes_at_four_thirds_weight() {
    let ch = x_flip(0.3);
    let oracle = twirl_oracle(&ch);
    let twirled = twirl3(&ch, &TwirlSet::standard()).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let e = Operator::ket_bra(i, j, 2);
            assert!(twirled.apply_to(&e).distance(&oracle(&e)) < 1e-12);
        }
    }
    // flip rate of the twirled channel on |0⟩ is η/2
    let out = oracle(&Operator::projector(0, 2));
    let eta = 2.0 * out.get(1, 1).re;
    assert!((eta - 0.4).abs() < 1e-12);
    assert!((eta_of_pauli(&PauliChannel::flip(Axis::X, 0.3).unwrap()) - eta).abs() < 1e-12);
}

#[test]
fn twirl_of_amplitude_damping_is_not_depolarizing() {
    let g = 0.3f64;
    let k0 = Operator::from_rows(
        2,
        &[
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new((1.0 - g).sqrt(), 0.0),
        ],
    )
    .unwrap();
    let k1 = Operator::ket_bra(0, 1, 2).scale(C64::new(g.sqrt(), 0.0));
    let ch = Channel::new(vec![k0, k1]).unwrap();
    let t = twirl3(&ch, &TwirlSet::standard()).unwrap();
    assert!(ch.unitality_error() > 0.1);
    assert!(t.unitality_error() > 1e-3);
    let best = (0..=100)
        .map(|k| t.superoperator_distance(&depolarizing(k as f64 / 100.0).unwrap()))
        .fold(f64::INFINITY, f64::min);
    assert!(best > 1e-3);
}

#[test]
fn haar_average_matches_three_element_twirl() {
    let ch = x_flip(0.3);
    let mc = twirl_haar_mc(&ch, 100_000, 11).unwrap();
    let t = twirl3(&ch, &TwirlSet::standard()).unwrap();
    assert!(mc.superoperator().max_abs_diff(&t.superoperator()) < 5e-3);
    let d = depolarizing(0.4).unwrap();
    let mc = twirl_haar_mc(&d, 100_000, 12).unwrap();
    assert!(mc.superoperator().max_abs_diff(&d.superoperator()) < 5e-3);
}

#[test]
fn collective_twirl_marginal_on_flipped_qubit() {
    let rho = DensityMatrix::basis(2, 0b10);
    let out = collective_twirl_sim(
        &rho,
        &[x_flip(0.3), Channel::identity(1)],
        &TwirlSet::standard(),
    )
    .unwrap();
    let want = apply_channel(
        &DensityMatrix::basis(1, 1),
        &depolarizing(0.4).unwrap(),
        &[0],
    )
    .unwrap();
    assert!(out.partial_trace(&[0]).unwrap().max_abs_diff(&want) < 1e-12);
}

/// Exact BV success under X flips on `noisy` qubits after the coherent
/// twirl, from the conjugation rule alone: a branch keeps a qubit's flip
/// iff `G X G†` has an off-diagonal part.
fn bv_twirl_oracle(p: f64, n_noisy: i32) -> (f64, BTreeMap<u32, f64>) {
    let x = &paulis()[1];
    let mut err: BTreeMap<u32, f64> = BTreeMap::new();
    let mut success = 0.0;
    for g in [Gate::I, Gate::V, Gate::W] {
        let g = g.matrix();
        let conj = &(&g * x) * &g.adjoint();
        let flips = conj.get(0, 1).norm() > 0.5;
        if flips {
            success += (1.0 - p).powi(n_noisy) / 3.0;
            // distribution over the number of flipped noisy bits
            for k in 0..=n_noisy as u32 {
                let ways = if k == 1 { n_noisy as f64 } else { 1.0 };
                let w = ways * p.powi(k as i32) * (1.0 - p).powi(n_noisy - k as i32) / 3.0;
                *err.entry(k).or_default() += w;
            }
        } else {
            success += 1.0 / 3.0;
            *err.entry(0).or_default() += 1.0 / 3.0;
        }
    }
    (success, err)
}

#[test]
fn bv_double_noise_coherent_twirl() {
    let (want_twirled, err) = bv_twirl_oracle(0.3, 2);
    assert!((want_twirled - 0.66).abs() < 1e-12);
    let sc = Preset::BvDouble.scenario();
    let rep = mitigate_pipeline(&sc.circuit, &sc.noise, &sc.config, None).unwrap();
    let p = rep.exact.probabilities_of(BV_STRING).unwrap();
    assert!((p[0] - 1.0).abs() < 1e-10);
    assert!((p[1] - 0.49).abs() < 1e-10);
    assert!((p[2] - want_twirled).abs() < 1e-10);

    // correction as a sum over error patterns: each flipped bit contributes
    // the off-diagonal inverse entry, each clean bit the diagonal one
    let corrected = |eta: f64| {
        let stay = (1.0 - eta / 2.0) / (1.0 - eta);
        let flip = -(eta / 2.0) / (1.0 - eta);
        err.iter()
            .map(|(&k, w)| w * flip.powi(k as i32) * stay.powi(2 - k as i32))
            .sum::<f64>()
    };
    assert!((corrected(0.1) - 0.719136).abs() < 1e-6);
    assert!((p[3] - corrected(0.1)).abs() < 1e-10);

    let twirled = rep.exact.twirled.clone();
    let true_eta = MitigationConfig::per_bit(BTreeMap::from([(4, 0.4), (7, 0.4)])).unwrap();
    let q = correct_joint(&twirled, &true_eta).unwrap();
    assert!((q.weight_of(BV_STRING).unwrap() - corrected(0.4)).abs() < 1e-10);
    assert!((corrected(0.4) - 1.0 - 1.0 / 18.0).abs() < 1e-10);
}

#[test]
fn bv_single_noise_twirl_sampled() {
    let sc = Preset::BvSingle.scenario();
    let out = run_with_twirl(
        &sc.circuit,
        &sc.noise,
        &TwirlSet::standard(),
        TwirlMode::PerShot {
            shots: 8192,
            seed: 3,
        },
    )
    .unwrap();
    let p = out.distribution().prob_of(BV_STRING).unwrap();
    assert!((p - 0.8).abs() <= 0.015, "{p}");
}

#[test]
fn y_fragment_at_qae_angle() {
    let f = noise_circuit_fragment(Axis::Y, 1.1593);
    let ch = f.induced_channel().unwrap();
    let want = pauli_channel(&PauliChannel::flip(Axis::Y, 0.3).unwrap());
    assert!(ch.superoperator_distance(&want) < 1e-4);
}

#[test]
fn three_placements_of_x_noise() {
    let mut c = Circuit::new(1);
    c.measure_all();
    let noise = BTreeMap::from([(0, x_flip(0.3))]);
    let s = run_exact(&c, &MeasurementModel::state_noise(noise.clone()).unwrap()).unwrap();
    let d = run_exact(&c, &MeasurementModel::detector_noise(noise).unwrap()).unwrap();
    // unitary placement: system plus an ancilla rotated by θ with p = sin²(θ/2)
    let theta = 2.0 * 0.3f64.sqrt().asin();
    let mut u = Circuit::new(2);
    noise_circuit_fragment(Axis::X, theta)
        .append_to(&mut u, 0, 1)
        .unwrap();
    u.measure(&[0]).unwrap();
    let a = run_exact(&u, &MeasurementModel::ideal()).unwrap();
    for dist in [&s, &d, &a] {
        assert!((dist.prob(0) - 0.7).abs() < 1e-12);
        assert!((dist.prob(1) - 0.3).abs() < 1e-12);
    }
}

#[test]
fn qft_entry() {
    let f = qft_matrix(2).unwrap();
    assert!((f.get(3, 1) - C64::new(0.0, -0.5)).norm() < 1e-12);
}

#[test]
fn qae_peak_for_thirty_percent() {
    let inst = QaeInstance::new(7, 0.3).unwrap();
    let d = run_exact(&build_qae(&inst), &MeasurementModel::ideal()).unwrap();
    let est = qae_estimate(&d, 7).unwrap();
    let grid = PI / 128.0;
    assert!((est.estimate - 0.3).abs() <= grid);
    assert!(est.window_mass >= 8.0 / (PI * PI) - 1e-3);
    assert!((est.window_p_tilde - 0.2974).abs() < 5e-5);
}

#[test]
fn deutsch_answers() {
    for case in DeutschCase::ALL {
        let d = run_exact(&build_deutsch(case), &MeasurementModel::ideal()).unwrap();
        let want = case.eval(0) ^ case.eval(1);
        assert!((d.prob(want as usize) - 1.0).abs() < 1e-12, "{case}");
    }
}

#[test]
fn bv_ideal_marginals_follow_the_string() {
    let d = run_exact(
        &build_bv(&BvInstance::new(BV_STRING).unwrap()),
        &MeasurementModel::ideal(),
    )
    .unwrap();
    for (k, ch) in BV_STRING.chars().enumerate() {
        let (p0, p1) = d.marginal(k).unwrap();
        let want = if ch == '1' { (0.0, 1.0) } else { (1.0, 0.0) };
        assert!((p0 - want.0).abs() < 1e-10 && (p1 - want.1).abs() < 1e-10);
    }
}

#[test]
fn clip_small_negative() {
    let q = QuasiDistribution::new(2, BTreeMap::from([(0, 1.06), (1, -0.06)])).unwrap();
    let p = project_to_simplex(&q).unwrap();
    assert!((p.dist.weight(0) - 1.0).abs() < 1e-12);
    assert!((p.tv_distance - 0.06).abs() < 1e-12);
    let (kept, loss) = apply_policy(q.clone(), NegativePolicy::Quasi).unwrap();
    assert_eq!((kept, loss), (q, 0.0));
}
