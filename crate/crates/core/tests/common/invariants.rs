//! Invariant checks shared by the property suite and the acceptance run.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use plateau_cover::cover::{build_cover, lift_path, link2, path_monodromy, BasePath, CoverGraph, Weighting};
use plateau_cover::functional::{energy_q, jump_set, total_variation, Labeling};
use plateau_cover::grid::Grid;
use plateau_cover::measure::area;
use plateau_cover::scene::{builtin_scene, rasterize, validate, RasterScene};
use plateau_cover::solve::{brute_force, heuristic, HeuristicParams, DEFAULT_MAX_STATES};
use plateau_cover::Permutation;
use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::TestCaseError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cover_of, tiny_scenes};

type Check = Result<(), TestCaseError>;

pub struct Planar {
    pub raster: RasterScene,
    pub plain: CoverGraph,
    pub crofton: CoverGraph,
}

pub fn planar() -> &'static [Planar] {
    static CELL: OnceLock<Vec<Planar>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["two_points_2d", "two_points_2d_below", "steiner3_2d"]
            .iter()
            .map(|n| {
                let raster = rasterize(&builtin_scene(n).unwrap()).unwrap();
                let plain = build_cover(&raster, Weighting::Plain).unwrap();
                let crofton = build_cover(&raster, Weighting::Crofton).unwrap();
                Planar { raster, plain, crofton }
            })
            .collect()
    })
}

pub fn permutation(d: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=d).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

pub type Rect = ([usize; 2], [usize; 2]);

pub fn rect() -> impl Strategy<Value = Rect> {
    (1usize..30, 1usize..30, 1usize..30, 1usize..30)
        .prop_map(|(a, b, c, d)| ([a.min(b), c.min(d)], [a.max(b) + 1, c.max(d) + 1]))
}

pub fn base() -> impl Strategy<Value = [usize; 2]> {
    (1usize..31, 1usize..31).prop_map(|(x, y)| [x, y])
}

/// Cells stepping one face at a time from the last cell of `path` to `to`.
fn walk(grid: &Grid, path: &mut Vec<usize>, to: [usize; 2]) {
    let mut c = grid.coords(*path.last().unwrap());
    for axis in [0, 1] {
        while c[axis] != to[axis] {
            if c[axis] < to[axis] {
                c[axis] += 1;
            } else {
                c[axis] -= 1;
            }
            path.push(grid.index(c));
        }
    }
}

/// Loop from `base` around a rectangle of cells and back the same way.
pub fn rect_loop(grid: &Grid, base: [usize; 2], (lo, hi): Rect) -> BasePath {
    let mut cells = vec![grid.index([base[0], base[1], 0])];
    walk(grid, &mut cells, lo);
    let approach = cells.clone();
    for corner in [[hi[0], lo[1]], hi, [lo[0], hi[1]], lo] {
        walk(grid, &mut cells, corner);
    }
    cells.extend(approach.iter().rev().skip(1));
    BasePath::closed(cells)
}

fn random_labeling(cover: &CoverGraph, seed: u64) -> Labeling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sheets = (0..cover.cell_count())
        .map(|_| rng.gen_range(0..cover.degree as u8))
        .collect();
    Labeling::from_sheets(sheets, cover.degree).unwrap()
}

pub fn tv_is_twice_jump_area((k, crofton, seed): (usize, bool, u64)) -> Check {
    let p = &planar()[k];
    let cover = if crofton { &p.crofton } else { &p.plain };
    let sigma = random_labeling(cover, seed);
    let jump = jump_set(&sigma, cover).unwrap();
    let a = area(&jump, Some((&sigma, cover))).unwrap();
    prop_assert!((total_variation(&sigma, cover).unwrap() - 2.0 * a).abs() < 1e-9);
    prop_assert_eq!(jump.total_q(), energy_q(&sigma, cover).unwrap());
    Ok(())
}

pub fn relabeling_is_a_gauge((k, g, seed): (usize, Permutation, u64)) -> Check {
    let spec = &tiny_scenes()[k];
    let g = if spec.degree == 2 { Permutation::transposition(2, 1, 2) } else { g };
    let moved = spec.relabeled(&g).unwrap();
    let (r1, c1) = cover_of(spec, Weighting::Crofton);
    let (r2, c2) = cover_of(&moved, Weighting::Crofton);
    let classes = |r: &RasterScene| {
        validate(r)
            .records
            .iter()
            .map(|x| (x.element, x.class))
            .collect::<Vec<_>>()
    };
    prop_assert_eq!(classes(&r1), classes(&r2));
    let sigma = random_labeling(&c1, seed);
    prop_assert_eq!(
        energy_q(&sigma, &c1).unwrap(),
        energy_q(&sigma.relabeled(&g), &c2).unwrap()
    );
    prop_assert_eq!(
        brute_force(&c1, DEFAULT_MAX_STATES).unwrap().energy_q,
        brute_force(&c2, DEFAULT_MAX_STATES).unwrap().energy_q
    );
    Ok(())
}

pub fn fibers_have_degree_points((k, b, r): (usize, [usize; 2], Rect)) -> Check {
    let p = &planar()[k];
    let raster = &p.raster;
    let path = rect_loop(&raster.grid, b, r);
    let ends: BTreeSet<usize> = (1..=raster.degree)
        .map(|s| lift_path(raster, &path, s).unwrap())
        .collect();
    prop_assert_eq!(ends.len(), raster.degree);
    let c = path.cells[0];
    let sigma = Labeling::dirichlet(&p.plain);
    let ones: usize = (1..=raster.degree).map(|s| sigma.field(c, s) as usize).sum();
    prop_assert_eq!(ones, 1);
    prop_assert_eq!(p.plain.node_count(), raster.degree * raster.free_cells().count());
    Ok(())
}

pub fn backtracking_keeps_monodromy((k, b, r, at, axis): (usize, [usize; 2], Rect, Index, usize)) -> Check {
    let raster = &planar()[k].raster;
    let g = &raster.grid;
    let path = rect_loop(g, b, r);
    let m = path_monodromy(raster, &path).unwrap();
    let i = at.index(path.cells.len());
    let c = path.cells[i];
    let Some(nb) = g.neighbor(c, axis, 1).or_else(|| g.neighbor(c, axis, -1)) else {
        return Ok(());
    };
    let mut cells = path.cells.clone();
    cells.splice(i + 1..i + 1, [nb, c]);
    prop_assert_eq!(path_monodromy(raster, &BasePath::closed(cells)).unwrap(), m);
    Ok(())
}

pub fn linking_parity_adds((k, b, r1, r2): (usize, [usize; 2], Rect, Rect)) -> Check {
    let raster = &planar()[k].raster;
    let l1 = rect_loop(&raster.grid, b, r1);
    let l2 = rect_loop(&raster.grid, b, r2);
    prop_assert_eq!(
        link2(raster, &l1.concat(&l2), None).unwrap(),
        link2(raster, &l1, None).unwrap() ^ link2(raster, &l2, None).unwrap()
    );
    Ok(())
}

pub fn scaling_keeps_argmin((k, lambda): (usize, i64)) -> Check {
    let (_, cover) = cover_of(&tiny_scenes()[k], Weighting::Crofton);
    let b = brute_force(&cover, DEFAULT_MAX_STATES).unwrap();
    let mut scaled = cover.clone();
    scaled.scale_weights(lambda);
    let s = brute_force(&scaled, DEFAULT_MAX_STATES).unwrap();
    prop_assert_eq!(s.energy_q, lambda * b.energy_q);
    prop_assert_eq!(s.labeling, b.labeling);
    Ok(())
}

pub fn fixed_seed_is_deterministic((k, seed): (usize, u64)) -> Check {
    let (_, cover) = cover_of(&tiny_scenes()[k], Weighting::Plain);
    let p = HeuristicParams {
        seed,
        restarts: 3,
        ..Default::default()
    };
    prop_assert!(heuristic(&cover, &p).same_outcome(&heuristic(&cover, &p)));
    Ok(())
}
