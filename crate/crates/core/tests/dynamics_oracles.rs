use mediated_core::correlations::{evaluate_trajectory, negativity, Bipartition, MeasureKind};
use mediated_core::dynamics::{
    build_dipole_hamiltonian, build_jc_hamiltonian, total_excitation_operator, trotter_evolve, PieceSpectra,
    Propagator,
};
use mediated_core::hilbert::{reduce_pure, StateVector, Subsystem, SystemLayout};
use mediated_core::Execution;

fn jc(dim: usize) -> (SystemLayout, mediated_core::dynamics::HamiltonianSpec) {
    let layout = SystemLayout::fields_with_qubit(dim).unwrap();
    (layout, build_jc_hamiltonian(layout, 1.0).unwrap())
}

fn distance(x: &StateVector, y: &StateVector) -> f64 {
    (x.amplitudes() - y.amplitudes()).norm()
}

#[test]
fn high_order_trotter_reproduces_exact_negativity() {
    let (layout, spec) = jc(3);
    let psi = layout.basis_state(1, 1, 0).unwrap();
    let exact = Propagator::new(&spec).unwrap().evolve(&psi, 1.0).unwrap();
    let trotter = trotter_evolve(&psi, &spec, 1.0, 4096).unwrap();
    let cut = Bipartition::a_b();
    let n_exact = negativity(&reduce_pure(&exact, &[Subsystem::A, Subsystem::B]).unwrap(), &cut).unwrap();
    let n_trot = negativity(&reduce_pure(&trotter, &[Subsystem::A, Subsystem::B]).unwrap(), &cut).unwrap();
    assert!((n_exact - n_trot).abs() <= 1e-4, "{n_exact} vs {n_trot}");
    assert!(n_exact > 0.1);
}

#[test]
fn trotter_error_is_first_order() {
    let (layout, spec) = jc(3);
    let psi = layout.basis_state(1, 1, 0).unwrap();
    let exact = Propagator::new(&spec).unwrap().evolve(&psi, 1.0).unwrap();
    let pieces = PieceSpectra::new(&spec).unwrap();
    let err = |n| distance(&pieces.trotter(&psi, 1.0, n).unwrap(), &exact);
    let ratio = err(100) / err(200);
    assert!((1.8..=2.2).contains(&ratio), "ratio {ratio}");
    let errs: Vec<f64> = [64, 128, 256, 512].iter().map(|&n| err(n)).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn dipole_trotter_is_exact_for_every_step_count() {
    let layout = SystemLayout::fields_with_qubit(10).unwrap();
    let spec = build_dipole_hamiltonian(layout, 1.0).unwrap();
    let psi = layout.basis_state(1, 2, 0).unwrap();
    let exact = Propagator::new(&spec).unwrap().evolve(&psi, 0.7).unwrap();
    for n in [1, 2, 5, 17] {
        let d = distance(&trotter_evolve(&psi, &spec, 0.7, n).unwrap(), &exact);
        assert!(d <= 1e-10, "n={n}: {d}");
    }
}

#[test]
fn jc_excitation_truncation_is_exact() {
    // N+1 against N+3 for |210⟩ (N = 3).
    let times: Vec<f64> = (0..41).map(|k| k as f64 * 0.1).collect();
    let values = |dim: usize| {
        let (layout, spec) = jc(dim);
        let psi = layout.basis_state(2, 1, 0).unwrap();
        let states = Propagator::new(&spec).unwrap().trajectory(&psi, &times, Execution::Sequential).unwrap();
        evaluate_trajectory(&times, &states, &layout, &MeasureKind::ALL, Execution::Sequential).unwrap()
    };
    let small = values(4);
    let large = values(6);
    for kind in MeasureKind::ALL {
        for (a, b) in small.series(kind).unwrap().iter().zip(large.series(kind).unwrap()) {
            assert!((a - b).abs() <= 1e-12, "{kind}: {a} vs {b}");
        }
    }
}

#[test]
fn jc_trajectory_conserves_norm_and_excitation() {
    let (layout, spec) = jc(5);
    let n_op = total_excitation_operator(layout).unwrap();
    let psi = layout.basis_state(2, 2, 0).unwrap();
    let times: Vec<f64> = (0..50).map(|k| k as f64 * 0.08).collect();
    let states = Propagator::new(&spec).unwrap().trajectory(&psi, &times, Execution::Parallel).unwrap();
    for s in &states {
        assert!((s.norm() - 1.0).abs() <= 1e-10);
        assert!((s.expectation(n_op.matrix()).unwrap().re - 4.0).abs() <= 1e-10);
    }
}

#[test]
fn execution_strategies_are_bitwise_identical() {
    let (layout, spec) = jc(4);
    let psi = layout.basis_state(2, 1, 0).unwrap();
    let times: Vec<f64> = (0..64).map(|k| k as f64 * 0.05).collect();
    let prop = Propagator::new(&spec).unwrap();
    let run = |exec| {
        let states = prop.trajectory(&psi, &times, exec).unwrap();
        evaluate_trajectory(&times, &states, &layout, &MeasureKind::ALL, exec).unwrap()
    };
    assert_eq!(run(Execution::Sequential), run(Execution::Parallel));
}

#[test]
fn dipole_evolved_probes_stay_separable() {
    let layout = SystemLayout::fields_with_qubit(24).unwrap();
    let pieces = PieceSpectra::new(&build_dipole_hamiltonian(layout, 1.0).unwrap()).unwrap();
    let times: Vec<f64> = (0..21).map(|k| k as f64 * 0.1).collect();
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let psi = layout.basis_state(m, n, 0).unwrap();
        let states = pieces.factorized_trajectory(&psi, &times, Execution::Parallel).unwrap();
        let t = evaluate_trajectory(&times, &states, &layout, &[MeasureKind::Negativity], Execution::Parallel).unwrap();
        assert!(t.max(MeasureKind::Negativity).unwrap() <= 1e-8, "|{m}{n}0⟩");
    }
}
