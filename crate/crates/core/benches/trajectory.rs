use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mediated_core::correlations::{evaluate_trajectory, MeasureKind};
use mediated_core::dynamics::{build_dipole_hamiltonian, build_jc_hamiltonian, PieceSpectra, Propagator};
use mediated_core::hilbert::SystemLayout;
use mediated_core::Execution;
use std::hint::black_box;

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn grid(n: usize, t_max: f64) -> Vec<f64> {
    (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect()
}

fn jc_trajectory(c: &mut Criterion) {
    let layout = SystemLayout::fields_with_qubit(5).unwrap();
    let prop = Propagator::new(&build_jc_hamiltonian(layout, 1.0).unwrap()).unwrap();
    let psi = layout.basis_state(2, 2, 0).unwrap();
    let times = grid(401, 4.0);

    let mut group = c.benchmark_group("jc_220_trajectory");
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                let states = prop.trajectory(&psi, &times, exec).unwrap();
                black_box(evaluate_trajectory(&times, &states, &layout, &MeasureKind::ALL, exec).unwrap())
            })
        });
    }
    group.finish();
}

fn dipole_factorized(c: &mut Criterion) {
    let layout = SystemLayout::fields_with_qubit(16).unwrap();
    let pieces = PieceSpectra::new(&build_dipole_hamiltonian(layout, 1.0).unwrap()).unwrap();
    let psi = layout.basis_state(1, 1, 0).unwrap();
    let times = grid(41, 1.0);

    let mut group = c.benchmark_group("dipole_110_factorized");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                let states = pieces.factorized_trajectory(&psi, &times, exec).unwrap();
                black_box(evaluate_trajectory(&times, &states, &layout, &MeasureKind::ALL, exec).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, jc_trajectory, dipole_factorized);
criterion_main!(benches);
