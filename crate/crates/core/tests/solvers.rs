mod common;

use common::*;
use plateau_cover::cover::{build_cover, Weighting};
use plateau_cover::error::Error;
use plateau_cover::functional::{energy_q, Labeling};
use plateau_cover::scene::{builtin_scene, rasterize, validate, Classification, Status};
use plateau_cover::solve::{
    brute_force, heuristic, mincut_degree2, solve, Certificate, HeuristicParams, SolverKind,
    DEFAULT_MAX_STATES,
};

#[test]
fn tiny_suite_is_valid_and_small() {
    let suite = tiny_scenes();
    assert!(suite.len() >= 10);
    for s in suite {
        let (raster, cover) = cover_of(&s, Weighting::Plain);
        assert_ne!(validate(&raster).status, Status::Fail, "{}", s.name);
        let limit = if s.degree == 2 { 20 } else { 15 };
        assert!(interior(&cover) <= limit, "{}: {}", s.name, interior(&cover));
    }
}

#[test]
fn solvers_agree_with_enumeration() {
    for w in [Weighting::Plain, Weighting::Crofton] {
        for s in tiny_scenes() {
            let (_, cover) = cover_of(&s, w);
            let b = brute_force(&cover, DEFAULT_MAX_STATES).unwrap();
            assert_eq!(b.certificate, Certificate::Exact);
            assert!(b.labeling.is_admissible(&cover));
            for seed in [1, 2] {
                let p = HeuristicParams { seed, restarts: 8, ..Default::default() };
                let h = heuristic(&cover, &p);
                assert_eq!(h.energy_q, b.energy_q, "{} {w} seed {seed}", s.name);
            }
            if s.degree == 2 {
                let m = mincut_degree2(&cover, &HeuristicParams::default()).unwrap();
                assert_eq!(m.energy_q, b.energy_q, "{} {w}", s.name);
            }
        }
    }
}

#[test]
fn brute_matches_straight_dual_path() {
    // 4×3 interior cells, points two faces apart
    let s = plane_scene(
        "small",
        [6.0, 5.0],
        2,
        1,
        &[[2., 2.], [4., 2.]],
        vec![cut("c", cycle(2, &[1, 2]), &[[2., 2.], [4., 2.]])],
    );
    let (_, cover) = cover_of(&s, Weighting::Plain);
    assert_eq!(interior(&cover), 12);
    let b = brute_force(&cover, DEFAULT_MAX_STATES).unwrap();
    assert_eq!(b.tv, 2.0 * 2.0);
}

#[test]
fn trivial_cover_has_zero_minimum() {
    let mut s = tiny_scenes().remove(0);
    s.cut_patches[0].permutation = plateau_cover::Permutation::identity(2);
    let (_, cover) = cover_of(&s, Weighting::Plain);
    let b = brute_force(&cover, DEFAULT_MAX_STATES).unwrap();
    assert_eq!(b.energy, 0.0);
    assert_eq!(b.labeling, Labeling::dirichlet(&cover));
}

#[test]
fn state_limit() {
    let s = plane_scene(
        "thirty",
        [8.0, 7.0],
        3,
        1,
        &[[2., 3.], [5., 3.]],
        vec![cut("c", cycle(3, &[1, 2, 3]), &[[2., 3.], [5., 3.]])],
    );
    let (_, cover) = cover_of(&s, Weighting::Plain);
    assert_eq!(interior(&cover), 30);
    match brute_force(&cover, DEFAULT_MAX_STATES) {
        Err(Error::StateLimit { states, limit }) => {
            assert_eq!(states, "3^30");
            assert_eq!(limit, 1 << 24);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn scaling_weights_scales_minimum() {
    for s in tiny_scenes().into_iter().take(6) {
        let (_, cover) = cover_of(&s, Weighting::Crofton);
        let b = brute_force(&cover, DEFAULT_MAX_STATES).unwrap();
        let mut scaled = cover.clone();
        scaled.scale_weights(3);
        let b3 = brute_force(&scaled, DEFAULT_MAX_STATES).unwrap();
        assert_eq!(b3.energy_q, 3 * b.energy_q);
        assert_eq!(b3.labeling, b.labeling);
    }
}

#[test]
fn positive_when_forced() {
    for s in tiny_scenes() {
        let (raster, cover) = cover_of(&s, Weighting::Plain);
        let forced = validate(&raster).count(Classification::FrameWettingForced) > 0;
        let r = solve(&cover, SolverKind::Auto, &HeuristicParams::default()).unwrap();
        assert!(r.energy >= 0.0);
        if forced {
            assert!(r.energy > 0.0, "{}", s.name);
        }
    }
}

#[test]
fn cut_placement_does_not_change_minimum() {
    let energies: Vec<i64> = ["two_points_2d", "two_points_2d_above", "two_points_2d_below"]
        .iter()
        .map(|n| {
            let raster = rasterize(&builtin_scene(n).unwrap()).unwrap();
            let cover = build_cover(&raster, Weighting::Plain).unwrap();
            mincut_degree2(&cover, &HeuristicParams::default()).unwrap().energy_q
        })
        .collect();
    assert_eq!(energies[0], energies[1]);
    assert_eq!(energies[0], energies[2]);
}

#[test]
fn heuristic_is_deterministic() {
    let s = &tiny_scenes()[6];
    let (_, cover) = cover_of(s, Weighting::Crofton);
    let p = HeuristicParams { seed: 11, restarts: 4, ..Default::default() };
    let a = heuristic(&cover, &p);
    let b = heuristic(&cover, &p);
    assert!(a.same_outcome(&b));
}

#[test]
fn heuristic_matches_mincut_on_double_covers() {
    for n in ["two_points_2d", "two_points_2d_above", "two_points_2d_below"] {
        let raster = rasterize(&builtin_scene(n).unwrap()).unwrap();
        let cover = build_cover(&raster, Weighting::Crofton).unwrap();
        let m = mincut_degree2(&cover, &HeuristicParams::default()).unwrap();
        for seed in 0..3 {
            let h = heuristic(&cover, &HeuristicParams { seed, ..Default::default() });
            assert_eq!(h.energy_q, m.energy_q, "{n} seed {seed}");
        }
    }
}

#[test]
fn result_energy_is_recomputed() {
    let s = &tiny_scenes()[1];
    let (_, cover) = cover_of(s, Weighting::Crofton);
    let r = solve(&cover, SolverKind::Auto, &HeuristicParams::default()).unwrap();
    assert_eq!(r.energy_q, energy_q(&r.labeling, &cover).unwrap());
    assert_eq!(r.tv, 2.0 * r.energy);
}
