//! End-to-end acceptance run: one line per criterion, then a hard assert.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::invariants;
use common::*;
use plateau_cover::cover::{build_cover, Weighting};
use plateau_cover::functional::{jump_set, total_variation};
use plateau_cover::measure::wetting_report;
use plateau_cover::permgroup::{in_subgroup, is_normal, subgroup_index, Word};
use plateau_cover::scene::{builtin_scene, rasterize, validate, Classification};
use plateau_cover::solve::{
    brute_force, heuristic, mincut_degree2, Certificate, HeuristicParams, DEFAULT_MAX_STATES,
};
use plateau_cover::Permutation;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    ((value - target) / target).abs() <= tol
}

fn oracle_equivalence() -> Outcome {
    let suite = tiny_scenes();
    let mut runs = 0;
    for w in [Weighting::Plain, Weighting::Crofton] {
        for s in &suite {
            let (_, cover) = cover_of(s, w);
            let b = brute_force(&cover, DEFAULT_MAX_STATES).map_err(|e| e.to_string())?;
            let p = HeuristicParams { seed: 2024, restarts: 8, ..Default::default() };
            let h = heuristic(&cover, &p);
            ensure(h.energy_q == b.energy_q, || {
                format!("{} {w}: heuristic {} vs brute {}", s.name, h.energy, b.energy)
            })?;
            if s.degree == 2 {
                let m = mincut_degree2(&cover, &p).map_err(|e| e.to_string())?;
                ensure(m.energy_q == b.energy_q, || {
                    format!("{} {w}: mincut {} vs brute {}", s.name, m.energy, b.energy)
                })?;
            }
            runs += 1;
        }
    }
    Ok(format!("{} scenes, {runs} runs, all equal to enumeration", suite.len()))
}

fn segment_test() -> Outcome {
    let mut energies = Vec::new();
    for n in ["two_points_2d", "two_points_2d_above", "two_points_2d_below"] {
        let raster = rasterize(&builtin_scene(n).unwrap()).unwrap();
        let cover = build_cover(&raster, Weighting::Plain).unwrap();
        let r = mincut_degree2(&cover, &HeuristicParams::default()).unwrap();
        let h = raster.grid.h;
        ensure(r.tv == 20.0 * h, || format!("{n}: tv {} != {}", r.tv, 20.0 * h))?;
        ensure(r.certificate == Certificate::Exact, || format!("{n}: not certified"))?;
        energies.push(r.energy_q);
    }
    ensure(energies.windows(2).all(|w| w[0] == w[1]), || format!("energies differ: {energies:?}"))?;
    Ok("tv = 20h for three cut placements".into())
}

fn disk_value() -> Outcome {
    let spec = disk_example();
    let (_, cover) = cover_of(&spec, Weighting::Crofton);
    let r = 10.0;
    let sigma = disk_labeling(&cover, [32.0, 14.0], r);
    let tv = total_variation(&sigma, &cover).unwrap();
    let target = 2.0 * (2.0 * std::f64::consts::PI * r + 20.0);
    ensure(within(tv, target, 0.05), || format!("tv {tv:.3} vs {target:.3}"))?;
    Ok(format!("tv {tv:.3} vs {target:.3} ({:+.2}%)", 100.0 * (tv / target - 1.0)))
}

fn disk_test() -> Outcome {
    let raster = rasterize(&builtin_scene("circle_3d").unwrap()).unwrap();
    let cover = build_cover(&raster, Weighting::Crofton).unwrap();
    let res = mincut_degree2(&cover, &HeuristicParams::default()).unwrap();
    let h = raster.grid.h;
    let target = std::f64::consts::PI * (8.0 * h).powi(2);
    let a = res.tv / 2.0;
    ensure(within(a, target, 0.05), || format!("tv/2 {a:.3} vs {target:.3}"))?;
    Ok(format!("tv/2 {a:.3} vs {target:.3} ({:+.2}%), {}", 100.0 * (a / target - 1.0), res.certificate))
}

fn steiner_test() -> Outcome {
    let raster = rasterize(&builtin_scene("steiner3_2d").unwrap()).unwrap();
    let h = raster.grid.h;
    let p = HeuristicParams { seed: 3, ..Default::default() };
    let plain = build_cover(&raster, Weighting::Plain).unwrap();
    let rp = heuristic(&plain, &p);
    let rsmt = 20.0 * h + (10.0 * 3f64.sqrt()).ceil() * h;
    ensure(rp.tv == 2.0 * rsmt, || format!("plain tv {} vs {}", rp.tv, 2.0 * rsmt))?;
    let crofton = build_cover(&raster, Weighting::Crofton).unwrap();
    let rc = heuristic(&crofton, &p);
    let target = 3f64.sqrt() * 20.0 * h;
    let a = rc.tv / 2.0;
    ensure(within(a, target, 0.06), || format!("crofton tv/2 {a:.3} vs {target:.3}"))?;
    Ok(format!(
        "plain tv {} = 2·{rsmt}; crofton tv/2 {a:.3} vs {target:.3} ({:+.2}%)",
        rp.tv,
        100.0 * (a / target - 1.0)
    ))
}

fn algebra() -> Outcome {
    let t = |a, b| Permutation::transposition(3, a, b);
    let w = t(2, 3).then(&t(1, 2).inverse()).then(&t(1, 3).inverse()).then(&t(1, 2));
    ensure(w.is_identity(), || format!("loop product is {w}"))?;

    let almgren = builtin_scene("almgren").unwrap().group.unwrap().homomorphism().unwrap();
    let idx = subgroup_index(&almgren, 1).unwrap();
    let normal = is_normal(&almgren, 1).unwrap();
    ensure(idx == 3 && !normal, || format!("almgren index {idx}, normal {normal}"))?;

    let cube_spec = builtin_scene("cube_skeleton").unwrap().group.unwrap();
    let cube = cube_spec.homomorphism().unwrap();
    ensure(is_normal(&cube, 1).unwrap(), || "cube cover not normal".into())?;
    let gens = cube.presentation().generators().to_vec();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let len = rng.gen_range(0..12);
        let word = Word::new((0..len).map(|_| {
            let g = gens[rng.gen_range(0..gens.len())].clone();
            (g, if rng.gen() { 1 } else { -1 })
        }));
        let inside = in_subgroup(&cube, 1, &word).unwrap();
        ensure(inside == (word.exponent_sum().rem_euclid(3) == 0), || format!("word {word}"))?;
    }

    let moebius = builtin_scene("moebius_retract").unwrap().group.unwrap().check().unwrap();
    ensure(moebius.relations_ok, || "abab = baba not preserved".into())?;
    Ok("loop identity, almgren index 3 not normal, cube kernel = exponent sum mod 3, moebius relation".into())
}

fn wetting() -> Outcome {
    let p = HeuristicParams { seed: 7, ..Default::default() };
    let raster = rasterize(&builtin_scene("cube_skeleton").unwrap()).unwrap();
    let cover = build_cover(&raster, Weighting::Plain).unwrap();
    let r = heuristic(&cover, &p);
    let w = wetting_report(&jump_set(&r.labeling, &cover).unwrap(), &raster);
    let wet = w.segments.iter().filter(|s| s.wetted).count();
    ensure(w.segments.len() == 12 && wet == 12, || format!("cube wets {wet}/{}", w.segments.len()))?;

    let raster = rasterize(&builtin_scene("almgren").unwrap()).unwrap();
    let report = validate(&raster);
    let lobe: Vec<_> = raster
        .segments
        .iter()
        .filter(|s| s.curve == 0 && (7..=9).contains(&s.index))
        .collect();
    for seg in &lobe {
        for e in &seg.elements {
            let class = report.record(*e).map(|r| r.class);
            ensure(class == Some(Classification::FrameWettingOptional), || {
                format!("lobe element {e:?} is {class:?}")
            })?;
        }
    }
    let cover = build_cover(&raster, Weighting::Plain).unwrap();
    let r = heuristic(&cover, &p);
    let w = wetting_report(&jump_set(&r.labeling, &cover).unwrap(), &raster);
    for seg in &lobe {
        let s = w.segment(seg.curve, seg.index).unwrap();
        ensure(!s.wetted, || format!("lobe segment {} wetted", s.segment))?;
    }
    let wet = w.segments.iter().filter(|s| s.wetted).count();
    Ok(format!("cube 12/12 edges wetted; almgren lobe optional and dry ({wet}/{} segments wetted)", w.segments.len()))
}

fn invariant_suites() -> Outcome {
    fn run<S: Strategy>(
        name: &str,
        cases: u32,
        s: S,
        f: impl Fn(S::Value) -> Result<(), TestCaseError>,
    ) -> Result<(), String> {
        let mut runner = TestRunner::new_with_rng(
            Config { cases, failure_persistence: None, ..Config::default() },
            proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
        );
        runner.run(&s, f).map_err(|e| format!("{name}: {e}"))
    }
    use invariants::*;
    run("tv = 2 area", 32, (0usize..3, any::<bool>(), any::<u64>()), tv_is_twice_jump_area)?;
    run("gauge", 12, (0usize..12, permutation(3), any::<u64>()), relabeling_is_a_gauge)?;
    run("fiber size", 32, (0usize..3, base(), rect()), fibers_have_degree_points)?;
    run(
        "backtrack",
        32,
        (0usize..3, base(), rect(), any::<proptest::sample::Index>(), 0usize..2),
        backtracking_keeps_monodromy,
    )?;
    run("link2 xor", 32, (0usize..2, base(), rect(), rect()), linking_parity_adds)?;
    run("weight scaling", 12, (0usize..12, 1i64..20), scaling_keeps_argmin)?;
    run("determinism", 12, (0usize..12, any::<u64>()), fixed_seed_is_deterministic)?;
    Ok("7 invariant suites".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", 60, oracle_equivalence),
        ("segment test", 5, segment_test),
        ("disk field value", 5, disk_value),
        ("disk test", 120, disk_test),
        ("steiner test", 60, steiner_test),
        ("algebraic identities", 1, algebra),
        ("wetting properties", 300, wetting),
        ("invariant suites", 60, invariant_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(*budget) => {
                Err(format!("{msg}; over budget {budget}s"))
            }
            other => other,
        };
        let (tag, msg) = match &outcome {
            Ok(m) => ("PASS", m.clone()),
            Err(m) => ("FAIL", m.clone()),
        };
        println!("criterion {}: {tag} {name} [{:.2}s] {msg}", i + 1, took.as_secs_f64());
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
