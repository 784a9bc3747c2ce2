//! Area of the projected jump, wetting of the frame, OBJ export and the
//! run report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cover::{CoverGraph, Weighting};
use crate::error::{Error, Result};
use crate::functional::{total_variation, JumpSet, Labeling};
use crate::grid::{Element, Face, Grid};
use crate::scene::{validate, Classification, CurveRole, CurveSegment, RasterScene};
use crate::solve::{Certificate, SolveResult, SolverKind};

/// Area of the jump. With a labeling, also checks `TV = 2·area`.
pub fn area(jump: &JumpSet, check: Option<(&Labeling, &CoverGraph)>) -> Result<f64> {
    let a = jump.area();
    if let Some((labeling, cover)) = check {
        let tv = total_variation(labeling, cover)?;
        if (tv - 2.0 * a).abs() > 1e-9 * tv.abs().max(1.0) {
            return Err(Error::Precondition(format!(
                "total variation {tv} is not twice the jump area {a}"
            )));
        }
    }
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentWetting {
    /// `curve:index`.
    pub segment: String,
    pub role: CurveRole,
    pub class: Classification,
    pub wetted: bool,
    /// Chebyshev distance in cells from the segment's elements to the
    /// nearest jump face, less the half cell between an element and its
    /// ring faces. `None` for an empty jump.
    pub distance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WettingReport {
    pub segments: Vec<SegmentWetting>,
}

impl WettingReport {
    pub fn all_wetted(&self) -> bool {
        self.segments.iter().all(|s| s.wetted)
    }

    pub fn segment(&self, curve: usize, index: usize) -> Option<&SegmentWetting> {
        let id = format!("{curve}:{index}");
        self.segments.iter().find(|s| s.segment == id)
    }
}

fn rank(c: Classification) -> u8 {
    match c {
        Classification::Inconsistent => 4,
        Classification::FrameWettingForced => 3,
        Classification::FrameWettingOptional => 2,
        Classification::Wire => 1,
        Classification::Trivial => 0,
    }
}

fn chebyshev(p: [f64; 3], q: [f64; 3]) -> f64 {
    (0..3).map(|k| (p[k] - q[k]).abs()).fold(0.0, f64::max)
}

/// Elements standing for a segment: its own, or for a segment too short to
/// pierce any dual square, the nearest ones of the same curve.
fn segment_elements(raster: &RasterScene, seg: &CurveSegment) -> Vec<Element> {
    if !seg.elements.is_empty() {
        return seg.elements.clone();
    }
    let grid = &raster.grid;
    let (a, b) = (grid.to_grid(seg.from), grid.to_grid(seg.to));
    let mid = [0, 1, 2].map(|k| 0.5 * (a[k] + b[k]));
    let pool = raster
        .segments
        .iter()
        .filter(|s| s.curve == seg.curve)
        .flat_map(|s| s.elements.iter().copied());
    let mut best: Vec<Element> = Vec::new();
    let mut best_d = f64::INFINITY;
    for e in pool {
        let d = chebyshev(grid.element_center(e), mid);
        if d < best_d - 1e-9 {
            best_d = d;
            best.clear();
        }
        if d <= best_d + 1e-9 {
            best.push(e);
        }
    }
    best
}

/// A segment is wetted when a jump face lies on the elementary ring of any
/// of its elements.
pub fn wetting_report(jump: &JumpSet, raster: &RasterScene) -> WettingReport {
    let grid = &raster.grid;
    let validation = validate(raster);
    let faces: std::collections::HashSet<Face> = jump.faces.iter().copied().collect();
    let centers: Vec<[f64; 3]> = jump.faces.iter().map(|&f| grid.face_center(f)).collect();
    let segments = raster
        .segments
        .iter()
        .map(|seg| {
            let elements = segment_elements(raster, seg);
            let class = elements
                .iter()
                .filter_map(|&e| validation.record(e).map(|r| r.class))
                .max_by_key(|&c| rank(c))
                .unwrap_or(Classification::Trivial);
            let wetted = elements.iter().any(|&e| {
                grid.ring_steps(e)
                    .is_some_and(|ring| ring.iter().any(|s| faces.contains(&s.face)))
            });
            let distance = elements
                .iter()
                .flat_map(|&e| {
                    let p = grid.element_center(e);
                    centers.iter().map(move |&q| chebyshev(p, q))
                })
                .reduce(f64::min)
                .map(|d| (d - 0.5).max(0.0));
            SegmentWetting {
                segment: format!("{}:{}", seg.curve, seg.index),
                role: seg.role,
                class,
                wetted,
                distance,
            }
        })
        .collect();
    WettingReport { segments }
}

/// Grid vertices of a face, in cyclic order (two in 2D).
fn face_vertices(grid: &Grid, f: Face) -> Vec<[usize; 3]> {
    let a = f.axis as usize;
    let mut base = grid.coords(f.cell);
    base[a] += 1;
    if grid.dimension == 2 {
        let b = 1 - a;
        let mut v = base;
        v[b] += 1;
        return vec![base, v];
    }
    let (b, c) = ((a + 1) % 3, (a + 2) % 3);
    [(0, 0), (1, 0), (1, 1), (0, 1)]
        .iter()
        .map(|&(db, dc)| {
            let mut v = base;
            v[b] += db;
            v[c] += dc;
            v
        })
        .collect()
}

/// Wavefront OBJ text: one quad per jump face in 3D, one line segment per
/// jump face in 2D. Vertices are shared and numbered by first use.
pub fn obj_string(jump: &JumpSet, grid: &Grid) -> String {
    let mut index: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    let mut order = Vec::new();
    let mut records = Vec::new();
    for &f in &jump.faces {
        let ids: Vec<usize> = face_vertices(grid, f)
            .into_iter()
            .map(|v| {
                *index.entry(v).or_insert_with(|| {
                    order.push(v);
                    order.len()
                })
            })
            .collect();
        records.push(ids);
    }
    let mut out = String::from("# projected jump set\n");
    for v in &order {
        let p = grid.to_world(v.map(|x| x as f64));
        writeln!(out, "v {} {} {}", p[0], p[1], p[2]).unwrap();
    }
    let tag = if grid.dimension == 2 { "l" } else { "f" };
    for ids in &records {
        let list: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
        writeln!(out, "{tag} {}", list.join(" ")).unwrap();
    }
    out
}

pub fn export_obj(jump: &JumpSet, grid: &Grid, path: &Path) -> Result<()> {
    std::fs::write(path, obj_string(jump, grid)).map_err(|e| Error::io(path, e))
}

/// Polygons and polylines read back from an OBJ file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ObjMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
    pub lines: Vec<Vec<usize>>,
}

impl ObjMesh {
    pub fn element_count(&self) -> usize {
        self.faces.len() + self.lines.len()
    }

    /// Total polygon area plus total polyline length.
    pub fn measure(&self) -> f64 {
        let v = |i: usize| self.vertices[i];
        let mut total = 0.0;
        for f in &self.faces {
            let mut n = [0.0; 3];
            for k in 0..f.len() {
                let (p, q) = (v(f[k]), v(f[(k + 1) % f.len()]));
                n[0] += p[1] * q[2] - p[2] * q[1];
                n[1] += p[2] * q[0] - p[0] * q[2];
                n[2] += p[0] * q[1] - p[1] * q[0];
            }
            total += 0.5 * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        }
        for l in &self.lines {
            for w in l.windows(2) {
                let (p, q) = (v(w[0]), v(w[1]));
                total += ((0..3).map(|k| (p[k] - q[k]).powi(2)).sum::<f64>()).sqrt();
            }
        }
        total
    }
}

pub fn parse_obj(text: &str) -> Result<ObjMesh> {
    let mut mesh = ObjMesh::default();
    for (n, line) in text.lines().enumerate() {
        let mut parts = line.split_whitespace();
        let bad = || Error::Schema(format!("obj line {}: `{line}`", n + 1));
        match parts.next() {
            Some("v") => {
                let xs: Vec<f64> = parts
                    .map(|t| t.parse().map_err(|_| bad()))
                    .collect::<Result<_>>()?;
                if xs.len() < 3 {
                    return Err(bad());
                }
                mesh.vertices.push([xs[0], xs[1], xs[2]]);
            }
            Some(tag @ ("f" | "l")) => {
                let ids: Vec<usize> = parts
                    .map(|t| {
                        let i: usize = t.split('/').next().unwrap_or("").parse().map_err(|_| bad())?;
                        if i == 0 || i > mesh.vertices.len() {
                            return Err(bad());
                        }
                        Ok(i - 1)
                    })
                    .collect::<Result<_>>()?;
                if tag == "f" {
                    mesh.faces.push(ids);
                } else {
                    mesh.lines.push(ids);
                }
            }
            _ => {}
        }
    }
    Ok(mesh)
}

pub fn read_obj(path: &Path) -> Result<ObjMesh> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_obj(&text)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub dims: [usize; 3],
    pub h: f64,
}

/// Summary of one solve, written as JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scene: String,
    pub grid: GridInfo,
    pub weighting: Weighting,
    pub solver: SolverKind,
    pub certificate: Certificate,
    pub energy: f64,
    pub tv: f64,
    pub area: f64,
    pub wetting: Vec<SegmentWetting>,
    pub seed: u64,
    pub wallclock: f64,
    /// Effective run configuration.
    #[serde(default)]
    pub config: BTreeMap<String, String>,
}

impl Report {
    pub fn new(
        scene: &str,
        cover: &CoverGraph,
        result: &SolveResult,
        jump: &JumpSet,
        wetting: &WettingReport,
    ) -> Self {
        Report {
            scene: scene.to_string(),
            grid: GridInfo {
                dims: cover.grid.dims,
                h: cover.grid.h,
            },
            weighting: cover.weighting,
            solver: result.solver,
            certificate: result.certificate,
            energy: result.energy,
            tv: result.tv,
            area: jump.area(),
            wetting: wetting.segments.clone(),
            seed: result.seed,
            wallclock: result.wallclock,
            config: BTreeMap::new(),
        }
    }
}

pub fn report_json(report: &Report, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(report)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

pub fn read_report(path: &Path) -> Result<Report> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}
