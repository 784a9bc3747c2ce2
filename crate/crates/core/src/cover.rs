//! The discrete cover: `d` copies of every free cell glued across faces by
//! the crossing permutations, plus path monodromy, crossing parity and the
//! transport of labelings between two cut systems.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::Labeling;
use crate::grid::{Element, Grid};
use crate::permgroup::Permutation;
use crate::scene::{validate, RasterScene, Status};

/// Fixed-point scale of link weights.
pub const WEIGHT_SCALE: i64 = 1 << 16;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    /// Face neighbors only, unit weight: the L1 perimeter.
    #[default]
    Plain,
    /// Face and edge-diagonal neighbors with Cauchy–Crofton weights.
    Crofton,
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Weighting::Plain => "plain",
            Weighting::Crofton => "crofton",
        })
    }
}

impl FromStr for Weighting {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Weighting::Plain),
            "crofton" => Ok(Weighting::Crofton),
            _ => Err(Error::Schema(format!("unknown weighting `{s}`"))),
        }
    }
}

impl Weighting {
    /// Per-link weights `(axis, diagonal)` in units of `h^(n-1)`.
    pub fn unit_weights(self, dimension: u8) -> (f64, f64) {
        use std::f64::consts::PI;
        match (self, dimension) {
            (Weighting::Plain, _) => (1.0, 0.0),
            (Weighting::Crofton, 2) => (PI / 8.0, PI / (8.0 * 2f64.sqrt())),
            (Weighting::Crofton, _) => {
                let s = 3f64.sqrt();
                (2.0 / s - 1.0, (1.0 - 1.0 / s) / 2.0)
            }
        }
    }
}

fn quantize(w: f64) -> i64 {
    (w * WEIGHT_SCALE as f64).round() as i64
}

/// A base adjacency `a → b` carrying permutation `perm` (an index into the
/// cover's permutation table). `axis` is set for face links.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub a: u32,
    pub b: u32,
    pub perm: u16,
    pub weight: i64,
    pub axis: Option<u8>,
}

/// One entry of a cell's neighbor list: the sheet expected at `other` is
/// `perm(σ(cell))`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub other: u32,
    pub perm: u16,
    pub link: u32,
}

#[derive(Clone, Debug)]
pub struct CoverGraph {
    pub grid: Grid,
    pub degree: usize,
    /// 0-based.
    pub dirichlet: u8,
    pub weighting: Weighting,
    perms: Vec<Permutation>,
    inverse: Vec<u16>,
    links: Vec<Link>,
    offsets: Vec<u32>,
    incidences: Vec<Incidence>,
    free: Vec<bool>,
    collar: Vec<bool>,
}

struct PermTable {
    perms: Vec<Permutation>,
    index: HashMap<Permutation, u16>,
}

impl PermTable {
    fn intern(&mut self, p: &Permutation) -> u16 {
        if let Some(&i) = self.index.get(p) {
            return i;
        }
        let i = self.perms.len() as u16;
        self.perms.push(p.clone());
        self.index.insert(p.clone(), i);
        i
    }
}

/// Builds the cover of a validated raster.
pub fn build_cover(raster: &RasterScene, weighting: Weighting) -> Result<CoverGraph> {
    let report = validate(raster);
    if report.status == Status::Fail {
        let first = report.inconsistent().next().expect("failing record");
        return Err(Error::ValidationFailed(format!(
            "{} elements with non-identity monodromy off the frame, first {:?} with {}",
            report.inconsistent().count(),
            first.element,
            first.monodromy
        )));
    }
    let grid = raster.grid.clone();
    let id = raster.identity().clone();
    let mut table = PermTable {
        perms: vec![id.clone()],
        index: HashMap::from([(id, 0)]),
    };
    let (w_axis, w_diag) = weighting.unit_weights(grid.dimension);
    let (w_axis, w_diag) = (quantize(w_axis), quantize(w_diag));
    let mut links = Vec::new();
    let n = grid.cell_count();
    for cell in 0..n {
        if !raster.is_free(cell) {
            continue;
        }
        for axis in 0..grid.axes() {
            if let Some(nb) = grid.neighbor(cell, axis, 1) {
                if !raster.is_free(nb) {
                    continue;
                }
                let p = raster.step_permutation(cell, nb)?;
                links.push(Link {
                    a: cell as u32,
                    b: nb as u32,
                    perm: table.intern(p),
                    weight: w_axis,
                    axis: Some(axis as u8),
                });
            }
        }
    }
    if weighting == Weighting::Crofton {
        for cell in 0..n {
            if !raster.is_free(cell) {
                continue;
            }
            for a in 0..grid.axes() {
                for b in a + 1..grid.axes() {
                    for db in [1isize, -1] {
                        if let Some(link) = diagonal(raster, &mut table, cell, a, b, db)? {
                            links.push(Link {
                                weight: w_diag,
                                ..link
                            });
                        }
                    }
                }
            }
        }
    }
    let mut inverse = Vec::new();
    while inverse.len() < table.perms.len() {
        let p = table.perms[inverse.len()].inverse();
        inverse.push(table.intern(&p));
    }
    let (offsets, incidences) = incidence_lists(n, &links, &inverse);
    Ok(CoverGraph {
        degree: raster.degree,
        dirichlet: (raster.dirichlet_sheet - 1) as u8,
        weighting,
        perms: table.perms,
        inverse,
        links,
        offsets,
        incidences,
        free: (0..n).map(|c| raster.is_free(c)).collect(),
        collar: (0..n).map(|c| grid.is_collar(c)).collect(),
        grid,
    })
}

/// Diagonal link from `cell` to `cell + e_a + db·e_b`, composed axis by axis
/// in increasing axis order. Dropped when the element between the two cells
/// is marked.
fn diagonal(
    raster: &RasterScene,
    table: &mut PermTable,
    cell: usize,
    a: usize,
    b: usize,
    db: isize,
) -> Result<Option<Link>> {
    let grid = &raster.grid;
    let Some(mid) = grid.neighbor(cell, a, 1) else {
        return Ok(None);
    };
    let Some(target) = grid.neighbor(mid, b, db) else {
        return Ok(None);
    };
    if !raster.is_free(mid) || !raster.is_free(target) {
        return Ok(None);
    }
    let c0 = grid.coords(cell);
    let c1 = grid.coords(target);
    let third = 3 - a - b;
    let mut vertex = [0usize; 3];
    vertex[a] = c0[a].max(c1[a]);
    vertex[b] = c0[b].max(c1[b]);
    vertex[third] = c0[third];
    let e = Element {
        axis: third as u8,
        vertex,
    };
    if raster.mark(e).is_some() {
        return Ok(None);
    }
    let p = raster
        .step_permutation(cell, mid)?
        .then(raster.step_permutation(mid, target)?);
    Ok(Some(Link {
        a: cell as u32,
        b: target as u32,
        perm: table.intern(&p),
        weight: 0,
        axis: None,
    }))
}

fn incidence_lists(n: usize, links: &[Link], inverse: &[u16]) -> (Vec<u32>, Vec<Incidence>) {
    let mut count = vec![0u32; n + 1];
    for l in links {
        count[l.a as usize + 1] += 1;
        count[l.b as usize + 1] += 1;
    }
    for i in 0..n {
        count[i + 1] += count[i];
    }
    let offsets = count.clone();
    let mut fill = count;
    let mut inc = vec![
        Incidence {
            other: 0,
            perm: 0,
            link: 0
        };
        links.len() * 2
    ];
    for (k, l) in links.iter().enumerate() {
        let ia = fill[l.a as usize] as usize;
        fill[l.a as usize] += 1;
        inc[ia] = Incidence {
            other: l.b,
            perm: l.perm,
            link: k as u32,
        };
        let ib = fill[l.b as usize] as usize;
        fill[l.b as usize] += 1;
        inc[ib] = Incidence {
            other: l.a,
            perm: inverse[l.perm as usize],
            link: k as u32,
        };
    }
    (offsets, inc)
}

impl CoverGraph {
    pub fn cell_count(&self) -> usize {
        self.grid.cell_count()
    }

    pub fn node_count(&self) -> usize {
        self.degree * self.free.iter().filter(|&&f| f).count()
    }

    /// Node index of `(cell, sheet)` with a 0-based sheet.
    pub fn node(&self, cell: usize, sheet: u8) -> usize {
        cell * self.degree + sheet as usize
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn permutation(&self, id: u16) -> &Permutation {
        &self.perms[id as usize]
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn inverse_id(&self, id: u16) -> u16 {
        self.inverse[id as usize]
    }

    #[inline]
    pub fn apply(&self, perm: u16, sheet: u8) -> u8 {
        self.perms[perm as usize].apply0(sheet)
    }

    /// Neighbor list of a cell.
    #[inline]
    pub fn incidences(&self, cell: usize) -> &[Incidence] {
        &self.incidences[self.offsets[cell] as usize..self.offsets[cell + 1] as usize]
    }

    pub fn is_free(&self, cell: usize) -> bool {
        self.free[cell]
    }

    pub fn is_collar(&self, cell: usize) -> bool {
        self.collar[cell]
    }

    /// Free cells outside the Dirichlet collar.
    pub fn interior_cells(&self) -> Vec<usize> {
        (0..self.cell_count())
            .filter(|&c| self.free[c] && !self.collar[c])
            .collect()
    }

    /// Cover edges `((cell, sheet), (cell, sheet), weight)`, `d` per link.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, u8), (usize, u8), i64)> + '_ {
        self.links.iter().flat_map(move |l| {
            (0..self.degree as u8).map(move |s| {
                (
                    (l.a as usize, s),
                    (l.b as usize, self.apply(l.perm, s)),
                    l.weight,
                )
            })
        })
    }

    /// Multiplies every link weight by `k`.
    pub fn scale_weights(&mut self, k: i64) {
        for l in &mut self.links {
            l.weight *= k;
        }
    }

    /// Converts a quantized weight sum to `h^(n-1)` measure.
    pub fn to_measure(&self, q: i64) -> f64 {
        q as f64 / WEIGHT_SCALE as f64 * self.grid.face_measure()
    }

    /// Mean link weight, quantized.
    pub fn mean_weight(&self) -> f64 {
        if self.links.is_empty() {
            return 0.0;
        }
        self.links.iter().map(|l| l.weight as f64).sum::<f64>() / self.links.len() as f64
    }
}

/// A sequence of face-adjacent cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePath {
    pub cells: Vec<usize>,
    #[serde(default)]
    pub closed: bool,
}

impl BasePath {
    pub fn closed(cells: Vec<usize>) -> Self {
        BasePath { cells, closed: true }
    }

    pub fn open(cells: Vec<usize>) -> Self {
        BasePath {
            cells,
            closed: false,
        }
    }

    /// Consecutive steps, including the closing one when it is not a repeat.
    pub fn steps(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self.cells.windows(2).map(|w| (w[0], w[1])).collect();
        if self.closed {
            if let (Some(&last), Some(&first)) = (self.cells.last(), self.cells.first()) {
                if last != first {
                    out.push((last, first));
                }
            }
        }
        out
    }

    /// Loop from basepoint through `self` and then `other`, both closed at
    /// the same basepoint.
    pub fn concat(&self, other: &BasePath) -> BasePath {
        let mut cells = self.cells.clone();
        if cells.last() != self.cells.first() {
            cells.extend(self.cells.first());
        }
        cells.extend(other.cells.iter().skip(1));
        BasePath::closed(cells)
    }
}

fn check_path(raster: &RasterScene, path: &BasePath) -> Result<()> {
    for &c in &path.cells {
        if c >= raster.grid.cell_count() || !raster.is_free(c) {
            return Err(Error::InvalidPath(format!("cell {c} is not a free cell")));
        }
    }
    for (a, b) in path.steps() {
        if !raster.grid.adjacent(a, b) {
            return Err(Error::InvalidPath(format!("cells {a} and {b} do not share a face")));
        }
    }
    Ok(())
}

/// Composed crossing permutation along a closed path.
pub fn path_monodromy(raster: &RasterScene, path: &BasePath) -> Result<Permutation> {
    if !path.closed {
        return Err(Error::InvalidPath("monodromy needs a closed path".into()));
    }
    check_path(raster, path)?;
    let mut acc = raster.identity().clone();
    for (a, b) in path.steps() {
        acc = acc.then(raster.step_permutation(a, b)?);
    }
    Ok(acc)
}

/// Sheet (1-based) reached by lifting `path` from `sheet` at its first cell.
pub fn lift_path(raster: &RasterScene, path: &BasePath, sheet: usize) -> Result<usize> {
    check_path(raster, path)?;
    let mut s = sheet;
    for (a, b) in path.steps() {
        s = raster.step_permutation(a, b)?.apply(s);
    }
    Ok(s)
}

/// Parity of the crossings of a closed loop with a family of patches (all
/// patches when `family` is `None`, which requires degree 2).
pub fn link2(raster: &RasterScene, path: &BasePath, family: Option<&[&str]>) -> Result<u8> {
    if !path.closed {
        return Err(Error::InvalidPath("linking parity needs a closed loop".into()));
    }
    let members: Vec<u16> = match family {
        Some(ids) => raster.patch_indices(ids)?,
        None if raster.degree == 2 => (0..raster.patches.len() as u16).collect(),
        None => {
            return Err(Error::Precondition(
                "linking parity without a patch family needs degree 2".into(),
            ))
        }
    };
    check_path(raster, path)?;
    let mut parity = 0u8;
    for (a, b) in path.steps() {
        let (face, _) = raster.grid.face_between(a, b).expect("checked");
        if let Some(c) = raster.crossing(face) {
            if members.contains(&c.patch) {
                parity ^= 1;
            }
        }
    }
    Ok(parity)
}

fn same_base(a: &RasterScene, b: &RasterScene) -> Result<()> {
    if a.grid != b.grid {
        return Err(Error::RasterMismatch("rasters live on different grids".into()));
    }
    if a.degree != 2 || b.degree != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            found: if a.degree != 2 { a.degree } else { b.degree },
        });
    }
    if a.marks() != b.marks() {
        return Err(Error::Precondition("the two scenes have different frames".into()));
    }
    Ok(())
}

/// Cells touching a marked element.
fn near_frame(raster: &RasterScene, cell: usize) -> bool {
    raster
        .marks()
        .keys()
        .any(|&e| raster.grid.ring_cells(e).is_some_and(|r| r.contains(&cell)))
}

/// Parity of the number of crossings of either cut system along any path
/// from `basepoint`, by breadth-first propagation over faces.
pub fn parity_region(sigma: &RasterScene, gamma: &RasterScene, basepoint: usize) -> Result<Vec<u8>> {
    parity_region_ordered(sigma, gamma, basepoint, false)
}

/// As [`parity_region`], exploring neighbors in reverse order.
pub fn parity_region_ordered(
    sigma: &RasterScene,
    gamma: &RasterScene,
    basepoint: usize,
    reverse: bool,
) -> Result<Vec<u8>> {
    same_base(sigma, gamma)?;
    let grid = &sigma.grid;
    if basepoint >= grid.cell_count() || !sigma.is_free(basepoint) || near_frame(sigma, basepoint) {
        return Err(Error::Precondition(format!(
            "basepoint {basepoint} must be a free cell away from the frame"
        )));
    }
    const UNSEEN: u8 = u8::MAX;
    let mut h = vec![UNSEEN; grid.cell_count()];
    h[basepoint] = 0;
    let mut queue = VecDeque::from([basepoint]);
    let mut moves: Vec<(usize, isize)> = (0..grid.axes())
        .flat_map(|a| [(a, 1isize), (a, -1)])
        .collect();
    if reverse {
        moves.reverse();
    }
    while let Some(c) = queue.pop_front() {
        for &(axis, dir) in &moves {
            let Some(nb) = grid.neighbor(c, axis, dir) else {
                continue;
            };
            if !sigma.is_free(nb) {
                continue;
            }
            let (face, _) = grid.face_between(c, nb).expect("neighbors");
            let flips = sigma.crossing(face).is_some() as u8 + gamma.crossing(face).is_some() as u8;
            let value = h[c] ^ (flips & 1);
            if h[nb] == UNSEEN {
                h[nb] = value;
                queue.push_back(nb);
            } else if h[nb] != value {
                return Err(Error::Precondition(format!(
                    "crossing parity is not path independent at cell {nb}"
                )));
            }
        }
    }
    Ok(h)
}

/// Moves a degree-2 labeling from the cover cut along `sigma` to the cover
/// cut along `gamma`, swapping sheets where the crossing parity is odd.
pub fn transport_labeling(
    labeling: &Labeling,
    sigma: &RasterScene,
    gamma: &RasterScene,
) -> Result<Labeling> {
    same_base(sigma, gamma)?;
    if labeling.len() != sigma.grid.cell_count() {
        return Err(Error::RasterMismatch("labeling does not match the grid".into()));
    }
    let h = parity_region(sigma, gamma, 0)?;
    let sheets = labeling
        .sheets()
        .iter()
        .zip(&h)
        .map(|(&s, &p)| if p == 0 { s } else { 1 - s })
        .collect();
    Labeling::from_sheets(sheets, labeling.degree())
}
