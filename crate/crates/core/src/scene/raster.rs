use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::spec::{CurveRole, PatchGeometry, Point, SceneSpec};
use crate::error::{Error, Result};
use crate::grid::{Element, Face, Grid, DUAL_SHIFT};
use crate::permgroup::Permutation;

/// A patch crossing on one face: which patch and whether its normal points
/// along `+axis`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing {
    pub patch: u16,
    pub positive: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RasterPatch {
    pub id: String,
    pub permutation: Permutation,
    pub inverse: Permutation,
    pub faces: usize,
}

/// One input segment of a boundary curve (a single point in 2D) and the
/// codimension-2 elements it marks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveSegment {
    pub curve: usize,
    pub index: usize,
    pub role: CurveRole,
    pub from: [f64; 3],
    pub to: [f64; 3],
    pub elements: Vec<Element>,
}

/// The scene on its grid: crossing table, marked elements and collar.
#[derive(Clone, Debug, PartialEq)]
pub struct RasterScene {
    pub name: String,
    pub grid: Grid,
    pub degree: usize,
    pub dirichlet_sheet: usize,
    pub patches: Vec<RasterPatch>,
    pub segments: Vec<CurveSegment>,
    free: Vec<bool>,
    crossings: Vec<Option<Crossing>>,
    marks: BTreeMap<Element, CurveRole>,
    identity: Permutation,
}

impl RasterScene {
    pub fn crossing(&self, f: Face) -> Option<Crossing> {
        self.crossings[self.grid.face_slot(f)]
    }

    /// Faces carrying a crossing, in slot order.
    pub fn crossed_faces(&self) -> impl Iterator<Item = (Face, Crossing)> + '_ {
        self.crossings
            .iter()
            .enumerate()
            .filter_map(|(s, c)| c.map(|c| (self.grid.face_from_slot(s), c)))
    }

    pub fn is_free(&self, cell: usize) -> bool {
        self.free[cell]
    }

    pub fn free_cells(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.free.len()).filter(|&c| self.free[c])
    }

    pub fn is_collar(&self, cell: usize) -> bool {
        self.grid.is_collar(cell)
    }

    pub fn mark(&self, e: Element) -> Option<CurveRole> {
        self.marks.get(&e).copied()
    }

    pub fn marks(&self) -> &BTreeMap<Element, CurveRole> {
        &self.marks
    }

    pub fn identity(&self) -> &Permutation {
        &self.identity
    }

    /// Permutation picked up when crossing face `f` in the given direction.
    pub fn face_permutation(&self, f: Face, forward: bool) -> &Permutation {
        match self.crossing(f) {
            None => &self.identity,
            Some(c) => {
                let p = &self.patches[c.patch as usize];
                if c.positive == forward {
                    &p.permutation
                } else {
                    &p.inverse
                }
            }
        }
    }

    /// Permutation for the step between two face-adjacent cells.
    pub fn step_permutation(&self, from: usize, to: usize) -> Result<&Permutation> {
        let (face, forward) = self.grid.face_between(from, to).ok_or_else(|| {
            Error::InvalidPath(format!("cells {from} and {to} do not share a face"))
        })?;
        Ok(self.face_permutation(face, forward))
    }

    /// Composed permutation of the elementary loop around `e`.
    pub fn element_monodromy(&self, e: Element) -> Option<Permutation> {
        let steps = self.grid.ring_steps(e)?;
        let mut acc = self.identity.clone();
        for s in steps {
            acc = acc.then(self.face_permutation(s.face, s.forward));
        }
        Some(acc)
    }

    /// Indices of the patches with the given ids.
    pub fn patch_indices(&self, ids: &[&str]) -> Result<Vec<u16>> {
        ids.iter()
            .map(|id| {
                self.patches
                    .iter()
                    .position(|p| p.id == *id)
                    .map(|i| i as u16)
                    .ok_or_else(|| Error::Precondition(format!("no patch `{id}`")))
            })
            .collect()
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Integer dual-lattice indices `k` with `k + 0.5 + shift` strictly between `lo` and `hi`.
fn dual_range(lo: f64, hi: f64, shift: f64) -> std::ops::Range<i64> {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let start = (lo - 0.5 - shift).floor() as i64 + 1;
    let end = (hi - 0.5 - shift).floor() as i64 + 1;
    start..end.max(start)
}

struct Accumulator<'a> {
    grid: &'a Grid,
    net: HashMap<(usize, u16), i32>,
}

impl Accumulator<'_> {
    /// Records a crossing of the link from cell `c` to `c + e_axis`, where the
    /// link runs along `axis` at the given position.
    fn hit(&mut self, mut c: [i64; 3], axis: usize, x_axis: f64, patch: u16, positive: bool) {
        c[axis] = (x_axis - 0.5 - DUAL_SHIFT[axis]).floor() as i64;
        let dims = self.grid.dims;
        for a in 0..3 {
            if c[a] < 0 || c[a] as usize >= dims[a] {
                return;
            }
        }
        if c[axis] as usize + 1 >= dims[axis] {
            return;
        }
        let cell = self.grid.index([c[0] as usize, c[1] as usize, c[2] as usize]);
        let slot = self.grid.face_slot(Face {
            cell,
            axis: axis as u8,
        });
        *self.net.entry((slot, patch)).or_default() += if positive { 1 } else { -1 };
    }
}

fn raster_polyline(acc: &mut Accumulator, pts: &[[f64; 3]], patch: u16) {
    for w in pts.windows(2) {
        let (q0, q1) = (w[0], w[1]);
        let t = sub(q1, q0);
        for axis in 0..2 {
            let other = 1 - axis;
            if t[other] == 0.0 {
                continue;
            }
            // co-normal (ty, -tx)
            let normal_axis = if axis == 0 { t[1] } else { -t[0] };
            for k in dual_range(q0[other], q1[other], DUAL_SHIFT[other]) {
                let y = k as f64 + 0.5 + DUAL_SHIFT[other];
                let s = (y - q0[other]) / t[other];
                if !(0.0..1.0).contains(&s) {
                    continue;
                }
                let x = q0[axis] + s * t[axis];
                let mut c = [0i64; 3];
                c[other] = k;
                acc.hit(c, axis, x, patch, normal_axis > 0.0);
            }
        }
    }
}

fn raster_triangle(acc: &mut Accumulator, tri: [[f64; 3]; 3], patch: u16) {
    let n = cross(sub(tri[1], tri[0]), sub(tri[2], tri[0]));
    for axis in 0..3 {
        if n[axis] == 0.0 {
            continue;
        }
        let b = (axis + 1) % 3;
        let c = (axis + 2) % 3;
        let bmin = tri.iter().map(|p| p[b]).fold(f64::INFINITY, f64::min);
        let bmax = tri.iter().map(|p| p[b]).fold(f64::NEG_INFINITY, f64::max);
        let cmin = tri.iter().map(|p| p[c]).fold(f64::INFINITY, f64::min);
        let cmax = tri.iter().map(|p| p[c]).fold(f64::NEG_INFINITY, f64::max);
        let orient = |p: [f64; 3], q: [f64; 3], y: f64, z: f64| {
            (q[b] - p[b]) * (z - p[c]) - (q[c] - p[c]) * (y - p[b])
        };
        for kb in dual_range(bmin, bmax, DUAL_SHIFT[b]) {
            let y = kb as f64 + 0.5 + DUAL_SHIFT[b];
            for kc in dual_range(cmin, cmax, DUAL_SHIFT[c]) {
                let z = kc as f64 + 0.5 + DUAL_SHIFT[c];
                let o0 = orient(tri[0], tri[1], y, z);
                let o1 = orient(tri[1], tri[2], y, z);
                let o2 = orient(tri[2], tri[0], y, z);
                let inside = (o0 > 0.0 && o1 > 0.0 && o2 > 0.0) || (o0 < 0.0 && o1 < 0.0 && o2 < 0.0);
                if !inside {
                    continue;
                }
                let x = tri[0][axis] - (n[b] * (y - tri[0][b]) + n[c] * (z - tri[0][c])) / n[axis];
                let mut cell = [0i64; 3];
                cell[b] = kb;
                cell[c] = kc;
                acc.hit(cell, axis, x, patch, n[axis] > 0.0);
            }
        }
    }
}

fn check_orientation(id: &str, tris: &[[Point; 3]]) -> Result<()> {
    let key = |p: &Point| p.0.map(|x| (x * 1e6).round() as i64);
    let mut seen = HashMap::new();
    for t in tris {
        for k in 0..3 {
            let e = (key(&t[k]), key(&t[(k + 1) % 3]));
            if e.0 == e.1 {
                continue;
            }
            if seen.insert(e, ()).is_some() {
                return Err(Error::InconsistentOrientation(id.to_string()));
            }
        }
    }
    Ok(())
}

/// Elements pierced by a curve segment (3D) or containing a point (2D).
fn pierced(grid: &Grid, q0: [f64; 3], q1: [f64; 3]) -> Vec<Element> {
    let nearest = |x: f64, a: usize| (x - DUAL_SHIFT[a] + 0.5).floor() as i64;
    let mut out = Vec::new();
    let mut push = |axis: usize, v: [i64; 3]| {
        if v.iter().any(|&x| x < 0) {
            return;
        }
        let e = Element {
            axis: axis as u8,
            vertex: v.map(|x| x as usize),
        };
        if grid.ring_cells(e).is_some() && !out.contains(&e) {
            out.push(e);
        }
    };
    if grid.dimension == 2 {
        push(2, [nearest(q0[0], 0), nearest(q0[1], 1), 0]);
        return out;
    }
    let t = sub(q1, q0);
    // ordered along the segment
    let mut hits: Vec<(f64, usize, [i64; 3])> = Vec::new();
    for axis in 0..3 {
        if t[axis] == 0.0 {
            continue;
        }
        for k in dual_range(q0[axis], q1[axis], DUAL_SHIFT[axis]) {
            let x = k as f64 + 0.5 + DUAL_SHIFT[axis];
            let s = (x - q0[axis]) / t[axis];
            if !(0.0..1.0).contains(&s) {
                continue;
            }
            let mut v = [0i64; 3];
            for a in 0..3 {
                v[a] = if a == axis { k } else { nearest(q0[a] + s * t[a], a) };
            }
            hits.push((s, axis, v));
        }
    }
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (_, axis, v) in hits {
        push(axis, v);
    }
    out
}

/// Rasterizes a checked scene onto its grid.
pub fn rasterize(spec: &SceneSpec) -> Result<RasterScene> {
    spec.check()?;
    let grid = spec.grid()?;
    let mut acc = Accumulator {
        grid: &grid,
        net: HashMap::new(),
    };
    for (pi, patch) in spec.cut_patches.iter().enumerate() {
        let pi = pi as u16;
        match &patch.geometry {
            PatchGeometry::Polyline(pts) => {
                let g: Vec<[f64; 3]> = pts.iter().map(|p| grid.to_grid(p.0)).collect();
                raster_polyline(&mut acc, &g, pi);
            }
            PatchGeometry::Triangles(tris) => {
                check_orientation(&patch.id, tris)?;
                for t in tris {
                    raster_triangle(&mut acc, t.map(|p| grid.to_grid(p.0)), pi);
                }
            }
        }
    }
    let mut crossings: Vec<Option<Crossing>> = vec![None; grid.face_slots()];
    let mut entries: Vec<_> = acc.net.into_iter().filter(|(_, k)| *k != 0).collect();
    entries.sort_unstable();
    let mut counts = vec![0usize; spec.cut_patches.len()];
    for ((slot, patch), k) in entries {
        let id = |p: u16| spec.cut_patches[p as usize].id.clone();
        if k.abs() > 1 {
            return Err(Error::OverlappingPatches(id(patch), id(patch)));
        }
        if let Some(prev) = crossings[slot] {
            return Err(Error::OverlappingPatches(id(prev.patch), id(patch)));
        }
        crossings[slot] = Some(Crossing {
            patch,
            positive: k > 0,
        });
        counts[patch as usize] += 1;
    }

    let mut marks = BTreeMap::new();
    let mut segments = Vec::new();
    for (ci, curve) in spec.boundary_curves.iter().enumerate() {
        let pieces: Vec<(Point, Point)> = if spec.dimension == 2 || curve.points.len() == 1 {
            curve.points.iter().map(|&p| (p, p)).collect()
        } else {
            curve.segments()
        };
        let mut total = 0;
        for (si, (a, b)) in pieces.iter().enumerate() {
            let elements = pierced(&grid, grid.to_grid(a.0), grid.to_grid(b.0));
            total += elements.len();
            for &e in &elements {
                let entry = marks.entry(e).or_insert(curve.role);
                if curve.role == CurveRole::Boundary {
                    *entry = CurveRole::Boundary;
                }
            }
            segments.push(CurveSegment {
                curve: ci,
                index: si,
                role: curve.role,
                from: a.0,
                to: b.0,
                elements,
            });
        }
        if total == 0 {
            let (a, b) = pieces.first().copied().unwrap_or_default();
            return Err(Error::ChainBroken(format!(
                "curve {ci} segment {:?} -> {:?} marks no grid element",
                a.0, b.0
            )));
        }
    }

    let patches = spec
        .cut_patches
        .iter()
        .zip(counts)
        .map(|(p, faces)| RasterPatch {
            id: p.id.clone(),
            permutation: p.permutation.clone(),
            inverse: p.permutation.inverse(),
            faces,
        })
        .collect();
    Ok(RasterScene {
        name: spec.name.clone(),
        free: vec![true; grid.cell_count()],
        grid,
        degree: spec.degree,
        dirichlet_sheet: spec.dirichlet_sheet,
        patches,
        segments,
        crossings,
        marks,
        identity: Permutation::identity(spec.degree),
    })
}
