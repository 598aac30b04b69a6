use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fuzzynav_bench::shipped;
use fuzzynav_core::control::{OAFLC_SOURCE, TFLC_SOURCE};
use fuzzynav_core::sim::scan;
use fuzzynav_core::{dsl, run, FusionPolicy, GoalSpec, Navigator, RobotState, SectorDistances};

fn inference(c: &mut Criterion) {
    let nav = Navigator::standard();
    c.bench_function("tflc_infer", |b| {
        b.iter(|| nav.tflc().infer(black_box(1.3), black_box(0.4)))
    });
    let sectors = SectorDistances::new(0.9, 1.4, 2.2);
    c.bench_function("oaflc_infer", |b| {
        b.iter(|| nav.oaflc().command(black_box(&sectors)))
    });
    let fis = nav.oaflc().system();
    c.bench_function("fis_infer_27_rules", |b| {
        b.iter(|| fis.infer(black_box(&[0.7, 1.1, 2.5])))
    });
}

fn parsing(c: &mut Criterion) {
    c.bench_function("parse_oaflc", |b| {
        b.iter(|| dsl::parse(black_box(OAFLC_SOURCE)))
    });
    c.bench_function("parse_tflc", |b| {
        b.iter(|| dsl::parse(black_box(TFLC_SOURCE)))
    });
}

fn sensing(c: &mut Criterion) {
    let config = shipped("cluttered.scn");
    let state = RobotState::new(2.0, 0.3, 0.2);
    c.bench_function("scan_cluttered", |b| {
        b.iter(|| scan(&config.world, black_box(&state)))
    });
    let nav = Navigator::standard();
    let s = scan(&config.world, &state).unwrap();
    let goal = GoalSpec::new(6.0, 0.0);
    let policy = FusionPolicy::default();
    c.bench_function("control_step", |b| {
        b.iter(|| nav.control_step(black_box(&state), &goal, black_box(&s), &policy))
    });
}

fn closed_loop(c: &mut Criterion) {
    let nav = Navigator::standard();
    let mut group = c.benchmark_group("run");
    group.sample_size(20);
    for name in ["empty.scn", "obstacle.scn", "cluttered.scn"] {
        let config = shipped(name);
        group.bench_function(name.trim_end_matches(".scn"), |b| {
            b.iter(|| run(black_box(&config), &nav))
        });
    }
    group.finish();
}

criterion_group!(benches, inference, parsing, sensing, closed_loop);
criterion_main!(benches);
