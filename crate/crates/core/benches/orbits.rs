use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use matpatch_core::umrow::{orbit_enum, Exec, FiniteRingEnum};
use matpatch_core::{Base, RingSpec};

fn orbits(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit_enum");
    group.sample_size(10);
    let cases = [
        ("Z/30 r=3", RingSpec::polynomial(Base::ModN(30), &[] as &[&str]), 3),
        ("F3[x]/(x^3) r=3", RingSpec::truncated(Base::ModN(3), &["x"], &["x"], 3).unwrap(), 3),
    ];
    for (name, spec, r) in cases {
        let ring = FiniteRingEnum::new(&spec).unwrap();
        for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, name), &r, |b, &r| {
                b.iter(|| orbit_enum(&ring, r, 10_000_000, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, orbits);
criterion_main!(benches);
