use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ptspectra::gauge::{eigen_trajectory, GaugeSpec, Group, TrajectoryOptions};
use ptspectra::observables::{Axis, ScanFamily, ScanGrid};
use ptspectra::oracle::enumerate_zn_chain;
use ptspectra::spin::ZnSpec;
use ptspectra::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn phase_scan(c: &mut Criterion) {
    let family = ScanFamily::Zn { n: 3, j: 0.2 };
    let axes = [Axis::new(-2.5, 1.0, 71), Axis::new(0.0, 2.0, 41)];
    let mut group = c.benchmark_group("zn_scan_71x41");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| ScanGrid::run(family, axes, exec).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let spec = ZnSpec::new(3, 0.2, 0.25, 1.25);
    let mut group = c.benchmark_group("zn_enumeration_L10");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_zn_chain(&spec, 10, exec).unwrap())
        });
    }
    group.finish();
}

fn trajectory(c: &mut Criterion) {
    let template = GaugeSpec::new(Group::SU3, -0.5, 0.0, 4);
    let grid: Vec<f64> = (0..=20).map(|i| 0.1 * i as f64).collect();
    let mut group = c.benchmark_group("su3_trajectory");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = TrajectoryOptions { exec, ..Default::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| eigen_trajectory(&template, &grid, &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, phase_scan, enumeration, trajectory);
criterion_main!(benches);
