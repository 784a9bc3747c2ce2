#![allow(dead_code)]

pub mod invariants;

use plateau_cover::cover::{build_cover, CoverGraph, Weighting};
use plateau_cover::functional::Labeling;
use plateau_cover::scene::{
    rasterize, BoundaryCurve, CurveRole, CutPatchSpec, Domain, PatchGeometry, Point, RasterScene,
    SceneSpec,
};
use plateau_cover::Permutation;

pub fn cycle(d: usize, c: &[usize]) -> Permutation {
    Permutation::from_cycles(d, &[c]).unwrap()
}

pub fn cut(id: &str, p: Permutation, pts: &[[f64; 2]]) -> CutPatchSpec {
    CutPatchSpec {
        id: id.into(),
        permutation: p,
        geometry: PatchGeometry::Polyline(pts.iter().map(|q| Point::xy(q[0], q[1])).collect()),
    }
}

pub fn points(pts: &[[f64; 2]]) -> BoundaryCurve {
    BoundaryCurve::open(CurveRole::Boundary, pts.iter().map(|q| Point::xy(q[0], q[1])).collect())
}

pub fn plane_scene(
    name: &str,
    size: [f64; 2],
    degree: usize,
    dirichlet: usize,
    frame: &[[f64; 2]],
    cuts: Vec<CutPatchSpec>,
) -> SceneSpec {
    SceneSpec {
        name: name.into(),
        dimension: 2,
        domain: Domain {
            min: Point::xy(0.0, 0.0),
            max: Point::xy(size[0], size[1]),
        },
        grid_spacing: 1.0,
        degree,
        dirichlet_sheet: dirichlet,
        boundary_curves: vec![points(frame)],
        cut_patches: cuts,
        group: None,
    }
}

/// Scenes small enough to enumerate: 5×4 interior cells for degree 2 and
/// 5×3 for degree 3.
pub fn tiny_scenes() -> Vec<SceneSpec> {
    let s2 = [7.0, 6.0];
    let s3 = [7.0, 5.0];
    let t = |d| cycle(d, &[1, 2]);
    let r = |d| cycle(d, &[1, 2, 3]);
    vec![
        plane_scene("straight", s2, 2, 1, &[[2., 3.], [5., 3.]], vec![cut("c", t(2), &[[2., 3.], [5., 3.]])]),
        plane_scene("bent", s2, 2, 1, &[[2., 2.], [5., 4.]], vec![cut("c", t(2), &[[2., 2.], [5., 2.], [5., 4.]])]),
        plane_scene("corner", s2, 2, 2, &[[2., 4.], [4., 2.]], vec![cut("c", t(2), &[[2., 4.], [2., 2.], [4., 2.]])]),
        plane_scene("vertical", s2, 2, 1, &[[3., 2.], [3., 4.]], vec![cut("c", t(2), &[[3., 2.], [3., 4.]])]),
        plane_scene("detour", s2, 2, 2, &[[2., 3.], [5., 3.]], vec![cut("c", t(2), &[[2., 3.], [2., 4.], [5., 4.], [5., 3.]])]),
        plane_scene(
            "two_pairs",
            s2,
            2,
            1,
            &[[2., 2.], [4., 2.], [3., 4.], [5., 4.]],
            vec![cut("a", t(2), &[[2., 2.], [4., 2.]]), cut("b", t(2), &[[3., 4.], [5., 4.]])],
        ),
        plane_scene(
            "tripod",
            s3,
            3,
            1,
            &[[2., 2.], [5., 2.], [3., 3.]],
            vec![cut("l", r(3), &[[2., 2.], [2., 3.], [3., 3.]]), cut("r", r(3), &[[5., 2.], [5., 3.], [3., 3.]])],
        ),
        plane_scene("rotation", s3, 3, 1, &[[2., 3.], [5., 3.]], vec![cut("c", r(3), &[[2., 3.], [5., 3.]])]),
        plane_scene("optional", s3, 3, 3, &[[2., 2.], [5., 2.]], vec![cut("c", t(3), &[[2., 2.], [5., 2.]])]),
        plane_scene("forced_swap", s3, 3, 1, &[[2., 2.], [5., 2.]], vec![cut("c", t(3), &[[2., 2.], [5., 2.]])]),
        plane_scene(
            "mixed",
            s3,
            3,
            2,
            &[[2., 2.], [4., 2.], [3., 3.], [5., 3.]],
            vec![cut("a", t(3), &[[2., 2.], [4., 2.]]), cut("b", cycle(3, &[2, 3]), &[[3., 3.], [5., 3.]])],
        ),
        plane_scene(
            "crossed_tripod",
            s3,
            3,
            2,
            &[[2., 3.], [5., 3.], [3., 2.]],
            vec![cut("l", t(3), &[[2., 3.], [3., 3.], [3., 2.]]), cut("r", cycle(3, &[1, 3]), &[[5., 3.], [5., 2.], [3., 2.]])],
        ),
    ]
}

pub fn cover_of(spec: &SceneSpec, w: Weighting) -> (RasterScene, CoverGraph) {
    let raster = rasterize(spec).unwrap();
    let cover = build_cover(&raster, w).unwrap();
    (raster, cover)
}

/// The two-point configuration on 64², points at x = 22 and 42 on y = 32,
/// cut along the straight segment between them, Dirichlet sheet 2.
pub fn disk_example() -> SceneSpec {
    plane_scene(
        "disk_example",
        [64.0, 64.0],
        2,
        2,
        &[[22., 32.], [42., 32.]],
        vec![cut("sigma", cycle(2, &[1, 2]), &[[22., 32.], [42., 32.]])],
    )
}

/// Sheet 1 on the cells whose centers lie in the disk, sheet 2 elsewhere.
pub fn disk_labeling(cover: &CoverGraph, center: [f64; 2], r: f64) -> Labeling {
    let g = &cover.grid;
    let sheets = (0..g.cell_count())
        .map(|c| {
            let p = g.to_world(g.coords(c).map(|x| x as f64 + 0.5));
            let inside = (p[0] - center[0]).hypot(p[1] - center[1]) < r;
            if inside { 0 } else { 1 }
        })
        .collect();
    Labeling::from_sheets(sheets, 2).unwrap()
}

/// Interior-cell count: cells that are free and outside the collar.
pub fn interior(cover: &CoverGraph) -> usize {
    cover.interior_cells().len()
}
