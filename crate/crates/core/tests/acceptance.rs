//! Acceptance suite: runs every fixture criterion at its exact expected
//! values and prints one pass/fail line per criterion.

use tropsurf::fixtures::run_criterion;

fn run(id: usize) {
    let r = run_criterion(id);
    println!(
        "criterion {:2}: {} - {}{}",
        r.id,
        if r.passed { "PASS" } else { "FAIL" },
        r.name,
        if r.detail.is_empty() { String::new() } else { format!(" ({})", r.detail) }
    );
    assert!(r.passed, "criterion {} failed: {}", r.id, r.detail);
}

#[test]
fn criterion_01_first_generic_surface() {
    run(1);
}

#[test]
fn criterion_02_second_generic_surface() {
    run(2);
}

#[test]
fn criterion_03_third_generic_surface() {
    run(3);
}

#[test]
fn criterion_04_tangential_triple_resolution() {
    run(4);
}

#[test]
fn criterion_05_two_triple_points_resolution() {
    run(5);
}

#[test]
fn criterion_06_plane_boundary_complexes() {
    run(6);
}

#[test]
fn criterion_07_balancing_everywhere() {
    run(7);
}

#[test]
fn criterion_08_cross_pipeline_equivalence() {
    run(8);
}

#[test]
fn criterion_09_resolution_invariance() {
    run(9);
}

#[test]
fn criterion_10_length_equals_mixed_volume() {
    run(10);
}

#[test]
fn criterion_11_pushforward_and_split_round_trip() {
    run(11);
}
