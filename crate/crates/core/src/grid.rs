//! Regular cell grids over an axis-aligned box.
//!
//! Cells are unit cubes in grid coordinates (`(p - origin) / h`), so the
//! center of cell `(i, j, k)` sits at `(i + ½, j + ½, k + ½)`. A 2D grid is a
//! 3D grid with a single layer in z. Faces are named by their low cell and
//! axis. Codimension-2 elements (grid edges in 3D, grid vertices in 2D) are
//! named by an axis and a grid vertex: in 3D the edge from `v` to `v + e_axis`,
//! in 2D always axis z with `v.z = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generic offset of the dual lattice, in grid units.
///
/// Cell centers and dual squares are shifted by this amount before any
/// intersection test so that authored geometry never hits a dual link or a
/// dual square boundary exactly.
pub const DUAL_SHIFT: [f64; 3] = [3.1e-7, 5.3e-7, 7.1e-7];

/// Offsets `(db, dc)` of the four cells around an element, counter-clockwise
/// in the `(b, c)` plane.
pub const RING: [(isize, isize); 4] = [(-1, -1), (0, -1), (0, 0), (-1, 0)];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub dimension: u8,
    pub dims: [usize; 3],
    pub origin: [f64; 3],
    pub h: f64,
}

/// Face between `cell` and its `+axis` neighbor.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub cell: usize,
    pub axis: u8,
}

/// Codimension-2 grid element.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    pub axis: u8,
    pub vertex: [usize; 3],
}

/// One step of an elementary loop: the face crossed and whether it is
/// traversed in the `+axis` direction.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RingStep {
    pub from: usize,
    pub to: usize,
    pub face: Face,
    pub forward: bool,
}

impl Element {
    /// The two axes spanning the plane of the elementary loop.
    pub fn plane(&self) -> (usize, usize) {
        let a = self.axis as usize;
        ((a + 1) % 3, (a + 2) % 3)
    }
}

impl Grid {
    /// Grid over `[min, max]` with spacing `h`; each extent is rounded to a
    /// whole number of cells.
    pub fn new(dimension: u8, min: [f64; 3], max: [f64; 3], h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Schema(format!("grid spacing {h} must be positive")));
        }
        if dimension != 2 && dimension != 3 {
            return Err(Error::Schema(format!("dimension {dimension} not in {{2, 3}}")));
        }
        let mut dims = [1usize; 3];
        for a in 0..dimension as usize {
            let extent = max[a] - min[a];
            let n = (extent / h).round();
            if n.is_nan() || n < 1.0 || (n * h - extent).abs() > 1e-6 * extent.abs().max(h) {
                return Err(Error::Schema(format!(
                    "domain extent {extent} along axis {a} is not a multiple of h = {h}"
                )));
            }
            dims[a] = n as usize;
        }
        let mut origin = min;
        if dimension == 2 {
            origin[2] = 0.0;
        }
        Ok(Grid {
            dimension,
            dims,
            origin,
            h,
        })
    }

    pub fn axes(&self) -> usize {
        self.dimension as usize
    }

    pub fn cell_count(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    pub fn face_slots(&self) -> usize {
        3 * self.cell_count()
    }

    #[inline]
    pub fn index(&self, c: [usize; 3]) -> usize {
        c[0] + self.dims[0] * (c[1] + self.dims[1] * c[2])
    }

    #[inline]
    pub fn coords(&self, i: usize) -> [usize; 3] {
        let x = i % self.dims[0];
        let r = i / self.dims[0];
        [x, r % self.dims[1], r / self.dims[1]]
    }

    /// Cell at signed coordinates, if inside the grid.
    pub fn cell_at(&self, c: [isize; 3]) -> Option<usize> {
        if c.iter().zip(self.dims).any(|(&x, n)| x < 0 || x as usize >= n) {
            return None;
        }
        Some(self.index([c[0] as usize, c[1] as usize, c[2] as usize]))
    }

    /// Neighbor of `cell` one step along `axis` in direction `dir` (±1).
    #[inline]
    pub fn neighbor(&self, cell: usize, axis: usize, dir: isize) -> Option<usize> {
        let mut c = self.coords(cell).map(|x| x as isize);
        c[axis] += dir;
        self.cell_at(c)
    }

    /// Whether two cells share a face.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.face_between(a, b).is_some()
    }

    /// The face shared by two cells and whether `a → b` runs along `+axis`.
    pub fn face_between(&self, a: usize, b: usize) -> Option<(Face, bool)> {
        let ca = self.coords(a);
        let cb = self.coords(b);
        let mut axis = None;
        for k in 0..3 {
            if ca[k] != cb[k] {
                if axis.is_some() || ca[k].abs_diff(cb[k]) != 1 {
                    return None;
                }
                axis = Some(k);
            }
        }
        let k = axis?;
        if ca[k] < cb[k] {
            Some((Face { cell: a, axis: k as u8 }, true))
        } else {
            Some((Face { cell: b, axis: k as u8 }, false))
        }
    }

    #[inline]
    pub fn face_slot(&self, f: Face) -> usize {
        f.axis as usize * self.cell_count() + f.cell
    }

    pub fn face_from_slot(&self, slot: usize) -> Face {
        let n = self.cell_count();
        Face {
            cell: slot % n,
            axis: (slot / n) as u8,
        }
    }

    /// Cell on the `+axis` side of a face, if any.
    pub fn face_high(&self, f: Face) -> Option<usize> {
        self.neighbor(f.cell, f.axis as usize, 1)
    }

    /// Cells in the outermost layer of the domain (x and y only in 2D).
    pub fn is_collar(&self, cell: usize) -> bool {
        let c = self.coords(cell);
        (0..self.axes()).any(|a| c[a] == 0 || c[a] + 1 == self.dims[a])
    }

    pub fn to_grid(&self, p: [f64; 3]) -> [f64; 3] {
        let mut g = [0.0; 3];
        for a in 0..3 {
            g[a] = (p[a] - self.origin[a]) / self.h;
        }
        if self.dimension == 2 {
            g[2] = 0.5;
        }
        g
    }

    pub fn to_world(&self, g: [f64; 3]) -> [f64; 3] {
        let mut p = [0.0; 3];
        for a in 0..3 {
            p[a] = self.origin[a] + g[a] * self.h;
        }
        if self.dimension == 2 {
            p[2] = 0.0;
        }
        p
    }

    /// Cell center in grid coordinates, shifted by [`DUAL_SHIFT`].
    pub fn dual_center(&self, cell: usize) -> [f64; 3] {
        let c = self.coords(cell);
        let mut p = [0.0; 3];
        for a in 0..3 {
            p[a] = c[a] as f64 + 0.5 + DUAL_SHIFT[a];
        }
        p
    }

    /// All codimension-2 elements whose four ring cells exist.
    pub fn elements(&self) -> Vec<Element> {
        let [nx, ny, nz] = self.dims;
        let mut out = Vec::new();
        if self.dimension == 2 {
            for y in 1..ny {
                for x in 1..nx {
                    out.push(Element {
                        axis: 2,
                        vertex: [x, y, 0],
                    });
                }
            }
            return out;
        }
        for axis in 0..3u8 {
            for z in 0..=nz {
                for y in 0..=ny {
                    for x in 0..=nx {
                        let e = Element {
                            axis,
                            vertex: [x, y, z],
                        };
                        if self.ring_cells(e).is_some() {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out
    }

    /// The four cells around an element in [`RING`] order.
    pub fn ring_cells(&self, e: Element) -> Option<[usize; 4]> {
        let a = e.axis as usize;
        let (b, c) = e.plane();
        if self.dimension == 2 && a != 2 {
            return None;
        }
        let mut cells = [0usize; 4];
        for (k, &(db, dc)) in RING.iter().enumerate() {
            let mut p = e.vertex.map(|x| x as isize);
            p[b] += db;
            p[c] += dc;
            cells[k] = self.cell_at(p)?;
        }
        Some(cells)
    }

    /// Steps of the elementary loop around `e`.
    pub fn ring_steps(&self, e: Element) -> Option<[RingStep; 4]> {
        let cells = self.ring_cells(e)?;
        let (b, c) = e.plane();
        let step = |from: usize, to: usize| {
            let (face, forward) = self.face_between(cells[from], cells[to]).expect("ring cells adjacent");
            RingStep {
                from: cells[from],
                to: cells[to],
                face,
                forward,
            }
        };
        let steps = [step(0, 1), step(1, 2), step(2, 3), step(3, 0)];
        debug_assert_eq!(steps[0].face.axis as usize, b);
        debug_assert_eq!(steps[1].face.axis as usize, c);
        Some(steps)
    }

    /// Dense index of an element.
    pub fn element_slot(&self, e: Element) -> usize {
        let [nx, ny, _] = self.dims;
        let v = e.vertex[0] + (nx + 1) * (e.vertex[1] + (ny + 1) * e.vertex[2]);
        e.axis as usize * self.vertex_count() + v
    }

    pub fn element_slots(&self) -> usize {
        3 * self.vertex_count()
    }

    fn vertex_count(&self) -> usize {
        (self.dims[0] + 1) * (self.dims[1] + 1) * (self.dims[2] + 1)
    }

    /// Center of an element in grid coordinates.
    pub fn element_center(&self, e: Element) -> [f64; 3] {
        let mut p = e.vertex.map(|x| x as f64);
        if self.dimension == 3 {
            p[e.axis as usize] += 0.5;
        } else {
            p[2] = 0.5;
        }
        p
    }

    /// Center of a face in grid coordinates.
    pub fn face_center(&self, f: Face) -> [f64; 3] {
        let mut p = self.coords(f.cell).map(|x| x as f64 + 0.5);
        p[f.axis as usize] += 0.5;
        p
    }

    /// Weight unit `h^(n-1)` converting per-face weights to physical measure.
    pub fn face_measure(&self) -> f64 {
        self.h.powi(self.dimension as i32 - 1)
    }
}
