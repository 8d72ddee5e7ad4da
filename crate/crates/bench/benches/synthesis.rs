use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use simstab::{
    extremal_series, feasibility_search, gcp_plants, ControllerTemplate, Domain, GcpInstance,
    ParamBox, SearchConfig, Variant,
};

fn search(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for (delta, tpl) in [("3/4", "0,0"), ("1/2", "1,0"), ("1/3", "1,1")] {
        let plants = gcp_plants(&GcpInstance::new(
            delta.parse().unwrap(),
            Variant::Theorem1,
            Domain::Continuous,
        ));
        let tpl: ControllerTemplate = tpl.parse().unwrap();
        let bx = ParamBox::uniform(tpl.param_count(), -10.0, 10.0).unwrap();
        group.bench_function(BenchmarkId::new(tpl.to_string(), delta), |b| {
            b.iter(|| feasibility_search(black_box(&plants), &tpl, &bx, &cfg).unwrap())
        });
    }
    group.finish();
}

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("extremal_series");
    for (n, k) in [(8, 32), (32, 128), (64, 256)] {
        group.bench_function(BenchmarkId::from_parameter(format!("{n}x{k}")), |b| {
            b.iter(|| extremal_series(black_box(n), black_box(k)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, search, series);
criterion_main!(benches);
