use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use bellqec::experiment::{estimate, weight_profile, PatternModel, Scenario};
use bellqec::repetition::ChannelKind;
use bellqec::ExecPolicy;

const POLICIES: [(&str, ExecPolicy); 2] = [("sequential", ExecPolicy::Sequential), ("parallel", ExecPolicy::Parallel)];

fn exact_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("weight_profile");
    group.sample_size(10);
    for (scenario, k) in
        [(Scenario::QrcBipartiteBell, 2), (Scenario::StabilizerShort, 2), (Scenario::LongdistanceCc, 2)]
    {
        let model = PatternModel::new(scenario, k, ChannelKind::BitFlip).expect("model");
        for (name, policy) in POLICIES {
            group.bench_with_input(BenchmarkId::new(format!("{scenario}-k{k}"), name), &policy, |b, &policy| {
                b.iter(|| weight_profile(black_box(&model), policy).expect("profile"))
            });
        }
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("monte_carlo");
    group.sample_size(10);
    let model = PatternModel::new(Scenario::QrcSingle, 3, ChannelKind::BitFlip).expect("model");
    for (name, policy) in POLICIES {
        group.bench_with_input(BenchmarkId::new("qrc-single-k3", name), &policy, |b, &policy| {
            b.iter(|| estimate(black_box(&model), 0.1, 50_000, 1, policy).expect("estimate"))
        });
    }
    group.finish();
}

criterion_group!(benches, exact_enumeration, monte_carlo);
criterion_main!(benches);
