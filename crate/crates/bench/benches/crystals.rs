use criterion::{black_box, criterion_group, criterion_main, Criterion};
use youngwall_core::{
    build_datum, compare_graphs, generate, ClassicalWeight, Family, LimitCrystal, PathCrystal,
    PerfectCrystal, WallCrystal,
};

fn b3_walls() -> WallCrystal {
    let d = build_datum(Family::B1, 3).unwrap();
    WallCrystal::new(PerfectCrystal::new(d, 2), &ClassicalWeight(vec![2, 0, 0, 0])).unwrap()
}

fn perfect(c: &mut Criterion) {
    let mut g = c.benchmark_group("perfect");
    for f in [Family::B1, Family::D1, Family::C1] {
        let crystal = PerfectCrystal::new(build_datum(f, f.min_rank()).unwrap(), 2);
        g.bench_function(format!("verify {f} l=2"), |b| {
            b.iter(|| black_box(crystal.verify_perfect()))
        });
    }
    g.finish();
}

fn walls(c: &mut Criterion) {
    let w = b3_walls();
    c.bench_function("wall B3 2L0 depth 8", |b| {
        b.iter(|| generate(&w, 8, 1_000_000).unwrap())
    });
    let p = PathCrystal::new(b3_walls(), 10);
    c.bench_function("path B3 2L0 depth 8", |b| {
        b.iter(|| generate(&p, 8, 1_000_000).unwrap())
    });
    let (gw, gp) = (
        generate(&w, 8, 1_000_000).unwrap(),
        generate(&p, 8, 1_000_000).unwrap(),
    );
    c.bench_function("compare B3 2L0 depth 8", |b| {
        b.iter(|| compare_graphs(&gw, &gp).unwrap())
    });
}

fn limit(c: &mut Criterion) {
    let l = LimitCrystal::new(build_datum(Family::Dtwist, 2).unwrap());
    c.bench_function("B(inf) Dtwist depth 5", |b| {
        b.iter(|| generate(&l, 5, 1_000_000).unwrap())
    });
}

criterion_group!(benches, perfect, walls, limit);
criterion_main!(benches);
