use std::time::Duration;

use appell_f4::checks::{CheckRegistry, Context};
use appell_f4::cohomology::{build_library, verify_library};
use appell_f4::connection::DivisorLabel;
use appell_f4::connection::{build_xi_hat, ParameterDictionary};
use appell_f4::numeric::{monodromy, MonodromyOptions, NumericParams};
use appell_f4::parallel::{map_with, Execution};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(Execution, &str); 2] = [
    (Execution::Sequential, "sequential"),
    (Execution::Parallel, "parallel"),
];

fn registry(c: &mut Criterion) {
    let reg = CheckRegistry::standard();
    let ctx = Context::new();
    let mut g = c.benchmark_group("verify_all");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    for (exec, name) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| reg.run_all(&ctx, exec))
        });
    }
    g.finish();
}

fn certificates(c: &mut Criterion) {
    let lib = build_library(&ParameterDictionary);
    let certs: Vec<_> = lib.iter().collect();
    let mut g = c.benchmark_group("certificate_library");
    g.sample_size(10);
    for (exec, name) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| map_with(exec, &certs, |cert| lib.verify(cert)))
        });
    }
    g.bench_function("verify_library_default", |b| {
        b.iter(|| verify_library(&lib))
    });
    g.finish();
}

fn monodromy_loops(c: &mut Criterion) {
    let sys = build_xi_hat(&ParameterDictionary);
    let params = NumericParams::default();
    let opts = MonodromyOptions::default();
    let mut g = c.benchmark_group("monodromy_five_divisors");
    g.sample_size(10);
    for (exec, name) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                map_with(exec, &DivisorLabel::ALL, |d| {
                    monodromy(&sys, &params, *d, &opts)
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, registry, certificates, monodromy_loops);
criterion_main!(benches);
