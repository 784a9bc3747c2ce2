//! Browser bindings. Every entry point takes plain strings and numbers and
//! returns a JSON document; the `*_json` functions are the same operations
//! without the wasm-bindgen boundary.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use plateau_cover::cover::{build_cover, Weighting};
use plateau_cover::functional::jump_set;
use plateau_cover::grid::{Face, Grid};
use plateau_cover::measure::wetting_report;
use plateau_cover::permgroup::{GroupCheck, GroupSpec};
use plateau_cover::scene::{
    builtin_scene, parse_scene, rasterize, validate, PatchGeometry, Point, SceneSpec, BUILTIN_NAMES,
};
use plateau_cover::solve::{self, HeuristicParams, SolverKind};
use plateau_cover::Error;

type Seg = [f64; 4];

#[derive(Serialize)]
struct Frame {
    min: [f64; 2],
    max: [f64; 2],
    h: f64,
    points: Vec<[f64; 2]>,
    cuts: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
struct Solved {
    frame: Frame,
    solver: String,
    certificate: String,
    energy: f64,
    tv: f64,
    wetted: usize,
    segments_total: usize,
    jump: Vec<Seg>,
}

#[derive(Serialize)]
struct Overlay {
    x: f64,
    y: f64,
    class: String,
    monodromy: String,
}

#[derive(Serialize)]
struct Validated {
    frame: Frame,
    status: String,
    elements: Vec<Overlay>,
}

fn load(source: &str, grid: u32) -> Result<SceneSpec, Error> {
    let spec = if source.trim_start().starts_with('{') {
        parse_scene(source)?
    } else {
        builtin_scene(source.trim())?
    };
    if spec.dimension != 2 {
        return Err(Error::Schema(format!("scene `{}` is not planar", spec.name)));
    }
    if grid == 0 {
        Ok(spec)
    } else {
        spec.with_grid(grid as usize)
    }
}

fn frame(spec: &SceneSpec) -> Frame {
    let xy = |p: &Point| [p.0[0], p.0[1]];
    Frame {
        min: xy(&spec.domain.min),
        max: xy(&spec.domain.max),
        h: spec.grid_spacing,
        points: spec.boundary_curves.iter().flat_map(|c| c.points.iter().map(xy)).collect(),
        cuts: spec
            .cut_patches
            .iter()
            .filter_map(|p| match &p.geometry {
                PatchGeometry::Polyline(v) => Some(v.iter().map(xy).collect()),
                PatchGeometry::Triangles(_) => None,
            })
            .collect(),
    }
}

fn face_segment(grid: &Grid, f: Face) -> Seg {
    let [x, y, _] = grid.coords(f.cell).map(|v| v as f64);
    let (a, b) = if f.axis == 0 {
        ([x + 1.0, y, 0.0], [x + 1.0, y + 1.0, 0.0])
    } else {
        ([x, y + 1.0, 0.0], [x + 1.0, y + 1.0, 0.0])
    };
    let (a, b) = (grid.to_world(a), grid.to_world(b));
    [a[0], a[1], b[0], b[1]]
}

/// Built-in planar scene names.
pub fn planar_scenes() -> Vec<&'static str> {
    BUILTIN_NAMES
        .iter()
        .copied()
        .filter(|n| builtin_scene(n).map(|s| s.dimension == 2).unwrap_or(false))
        .collect()
}

pub fn solve_json(source: &str, grid: u32, weighting: &str, solver: &str, seed: u64) -> Result<String, Error> {
    let spec = load(source, grid)?;
    let raster = rasterize(&spec)?;
    let weighting: Weighting = weighting.parse()?;
    let kind: SolverKind = solver.parse()?;
    let cover = build_cover(&raster, weighting)?;
    let params = HeuristicParams {
        seed,
        ..Default::default()
    };
    let result = solve::solve(&cover, kind, &params)?;
    let jump = jump_set(&result.labeling, &cover)?;
    let wetting = wetting_report(&jump, &raster);
    let out = Solved {
        frame: frame(&spec),
        solver: result.solver.to_string(),
        certificate: result.certificate.to_string(),
        energy: result.energy,
        tv: result.tv,
        wetted: wetting.segments.iter().filter(|w| w.wetted).count(),
        segments_total: wetting.segments.len(),
        jump: jump.faces.iter().map(|&f| face_segment(&cover.grid, f)).collect(),
    };
    Ok(serde_json::to_string(&out)?)
}

pub fn validate_json(source: &str, grid: u32) -> Result<String, Error> {
    let spec = load(source, grid)?;
    let raster = rasterize(&spec)?;
    let report = validate(&raster);
    let g = &raster.grid;
    let elements = report
        .records
        .iter()
        .map(|r| {
            let p = g.to_world(g.element_center(r.element));
            Ok(Overlay {
                x: p[0],
                y: p[1],
                class: serde_json::to_value(r.class)?.as_str().unwrap_or("").to_string(),
                monodromy: r.monodromy.to_string(),
            })
        })
        .collect::<Result<_, Error>>()?;
    let out = Validated {
        frame: frame(&spec),
        status: serde_json::to_value(report.status)?.as_str().unwrap_or("").to_string(),
        elements,
    };
    Ok(serde_json::to_string(&out)?)
}

/// Accepts a group document or the name of a scene that carries one.
pub fn group_check_json(source: &str) -> Result<String, Error> {
    let group: GroupSpec = if source.trim_start().starts_with('{') {
        serde_json::from_str(source)?
    } else {
        builtin_scene(source.trim())?
            .group
            .ok_or_else(|| Error::Schema(format!("scene `{}` has no group presentation", source.trim())))?
    };
    let check: GroupCheck = group.check()?;
    Ok(serde_json::to_string(&check)?)
}

fn js(r: Result<String, Error>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = planarScenes)]
pub fn planar_scenes_js() -> String {
    serde_json::to_string(&planar_scenes()).unwrap_or_default()
}

#[wasm_bindgen(js_name = solveScene)]
pub fn solve_js(source: &str, grid: u32, weighting: &str, solver: &str, seed: u32) -> Result<String, JsError> {
    js(solve_json(source, grid, weighting, solver, seed as u64))
}

#[wasm_bindgen(js_name = validateScene)]
pub fn validate_js(source: &str, grid: u32) -> Result<String, JsError> {
    js(validate_json(source, grid))
}

#[wasm_bindgen(js_name = groupCheck)]
pub fn group_check_js(source: &str) -> Result<String, JsError> {
    js(group_check_json(source))
}
