use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use shortres::exactla::PrimeField;
use shortres::invsys::{apolar_algebra, random_cubic};
use shortres::par::Execution;
use shortres::resolve::{minimal_resolution, residue_field};
use shortres::survey::{run_survey, SurveyConfig};

fn survey_modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("survey e=3, 8 samples");
    group.sample_size(10);
    for (name, exec) in [("parallel", Execution::Auto), ("sequential", Execution::Sequential)] {
        let cfg = SurveyConfig {
            samples: 8,
            seed: 1,
            cyclic_modules: 2,
            exec,
            ..SurveyConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| run_survey(cfg).unwrap())
        });
    }
    group.finish();
}

fn residue_field_resolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("resolution of k to (6, 10)");
    group.sample_size(10);
    for e in [3, 4] {
        let r = apolar_algebra(&random_cubic(PrimeField::default(), e, 0), 10).unwrap();
        group.bench_with_input(BenchmarkId::new("e", e), &r, |b, r| {
            b.iter(|| minimal_resolution(r, &residue_field(r), 6, 10).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, survey_modes, residue_field_resolution);
criterion_main!(benches);
