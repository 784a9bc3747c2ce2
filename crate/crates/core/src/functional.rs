//! Fiber-constrained fields and the discrete total variation.
//!
//! A field `u: Y → {0,1}` with exactly one 1 per fiber is stored as the
//! active sheet `σ(c)` of every cell. A link `a → b` with permutation `p`
//! jumps iff `σ(b) ≠ p(σ(a))`; the energy is the weighted count of jumping
//! links and the total variation of `u` is twice that, since each jump
//! separates two pairs of cover nodes.

use serde::Serialize;

use crate::cover::{parity_region, CoverGraph};
use crate::error::{Error, Result};
use crate::grid::Face;
use crate::scene::RasterScene;

/// Active sheet per cell, 0-based internally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    sheets: Vec<u8>,
    degree: usize,
}

impl Labeling {
    pub fn from_sheets(sheets: Vec<u8>, degree: usize) -> Result<Self> {
        if let Some(&s) = sheets.iter().find(|&&s| s as usize >= degree) {
            return Err(Error::Schema(format!("sheet {} outside 1..{degree}", s + 1)));
        }
        Ok(Labeling { sheets, degree })
    }

    /// Every cell on the Dirichlet sheet.
    pub fn dirichlet(cover: &CoverGraph) -> Self {
        Labeling {
            sheets: vec![cover.dirichlet; cover.cell_count()],
            degree: cover.degree,
        }
    }

    pub fn len(&self) -> usize {
        self.sheets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sheets.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// 1-based sheet of a cell.
    pub fn sheet(&self, cell: usize) -> usize {
        self.sheets[cell] as usize + 1
    }

    pub fn sheets(&self) -> &[u8] {
        &self.sheets
    }

    #[cfg(test)]
    pub(crate) fn sheets_mut(&mut self) -> &mut [u8] {
        &mut self.sheets
    }

    /// Value of `u` at cover node `(cell, sheet)`, 1-based sheet.
    pub fn field(&self, cell: usize, sheet: usize) -> u8 {
        (self.sheet(cell) == sheet) as u8
    }

    /// Relabels sheets: `σ ↦ g ∘ σ`.
    pub fn relabeled(&self, g: &crate::Permutation) -> Labeling {
        Labeling {
            sheets: self.sheets.iter().map(|&s| g.apply0(s)).collect(),
            degree: self.degree,
        }
    }

    fn check(&self, cover: &CoverGraph) -> Result<()> {
        if self.sheets.len() != cover.cell_count() || self.degree != cover.degree {
            return Err(Error::RasterMismatch(format!(
                "labeling of {} cells, degree {} against a cover of {} cells, degree {}",
                self.sheets.len(),
                self.degree,
                cover.cell_count(),
                cover.degree
            )));
        }
        Ok(())
    }

    /// Whether every collar cell carries the Dirichlet sheet.
    pub fn is_admissible(&self, cover: &CoverGraph) -> bool {
        self.check(cover).is_ok()
            && (0..self.sheets.len())
                .all(|c| !cover.is_collar(c) || self.sheets[c] == cover.dirichlet)
    }
}

/// Quantized energy: the sum of jumping link weights.
pub fn energy_q(labeling: &Labeling, cover: &CoverGraph) -> Result<i64> {
    labeling.check(cover)?;
    Ok(sheets_energy(labeling.sheets(), cover))
}

pub(crate) fn sheets_energy(s: &[u8], cover: &CoverGraph) -> i64 {
    cover
        .links()
        .iter()
        .filter(|l| s[l.b as usize] != cover.apply(l.perm, s[l.a as usize]))
        .map(|l| l.weight)
        .sum()
}

/// Energy in units of `h^(n-1)`.
pub fn energy(labeling: &Labeling, cover: &CoverGraph) -> Result<f64> {
    Ok(cover.to_measure(energy_q(labeling, cover)?))
}

/// Total variation of the encoded field: twice the energy.
pub fn total_variation(labeling: &Labeling, cover: &CoverGraph) -> Result<f64> {
    Ok(2.0 * energy(labeling, cover)?)
}

/// Energy change when `cell` moves to sheet `to` (0-based).
#[inline]
pub fn delta_energy(sheets: &[u8], cover: &CoverGraph, cell: usize, to: u8) -> i64 {
    let from = sheets[cell];
    let mut d = 0;
    for inc in cover.incidences(cell) {
        let other = sheets[inc.other as usize];
        let w = cover.links()[inc.link as usize].weight;
        let before = other != cover.apply(inc.perm, from);
        let after = other != cover.apply(inc.perm, to);
        d += w * (after as i64 - before as i64);
    }
    d
}

/// Jumping links with their quantized weights.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JumpSet {
    pub links: Vec<(u32, i64)>,
    pub faces: Vec<Face>,
    measure: f64,
}

impl JumpSet {
    pub fn empty(cover: &CoverGraph) -> Self {
        JumpSet {
            links: Vec::new(),
            faces: Vec::new(),
            measure: cover.to_measure(1),
        }
    }

    pub fn total_q(&self) -> i64 {
        self.links.iter().map(|&(_, w)| w).sum()
    }

    /// Weighted measure of the projected jump, `H^(n-1)` in world units.
    pub fn area(&self) -> f64 {
        self.total_q() as f64 * self.measure
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// Adds a link of the cover to the set.
    pub fn insert(&mut self, cover: &CoverGraph, link: u32) {
        if self.links.iter().any(|&(l, _)| l == link) {
            return;
        }
        let l = cover.links()[link as usize];
        self.links.push((link, l.weight));
        self.links.sort_unstable();
        if let Some(axis) = l.axis {
            self.faces.push(Face {
                cell: l.a as usize,
                axis,
            });
            self.faces.sort_unstable();
        }
    }
}

pub fn jump_set(labeling: &Labeling, cover: &CoverGraph) -> Result<JumpSet> {
    labeling.check(cover)?;
    let s = labeling.sheets();
    let mut out = JumpSet::empty(cover);
    for (k, l) in cover.links().iter().enumerate() {
        if s[l.b as usize] != cover.apply(l.perm, s[l.a as usize]) {
            out.links.push((k as u32, l.weight));
            if let Some(axis) = l.axis {
                out.faces.push(Face {
                    cell: l.a as usize,
                    axis,
                });
            }
        }
    }
    out.faces.sort_unstable();
    Ok(out)
}

/// Constrained lifting of a binary base field on a double cover: sheet 1
/// where `v = 1`, sheet 2 where `v = 0`.
pub fn lift_constrained(v: &[u8], raster: &RasterScene) -> Result<Labeling> {
    if raster.degree != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            found: raster.degree,
        });
    }
    if v.len() != raster.grid.cell_count() {
        return Err(Error::RasterMismatch("field does not match the grid".into()));
    }
    let collar_value = (raster.dirichlet_sheet == 1) as u8;
    for (c, &x) in v.iter().enumerate() {
        if x > 1 {
            return Err(Error::Precondition(format!("field value {x} at cell {c} is not binary")));
        }
        if raster.is_collar(c) && x != collar_value {
            return Err(Error::Precondition(format!(
                "field must equal {collar_value} on the collar (cell {c})"
            )));
        }
    }
    Labeling::from_sheets(v.iter().map(|&x| 1 - x).collect(), 2)
}

/// A binary function read in one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartView {
    pub chart: usize,
    pub values: Vec<u8>,
}

/// The four chart readings of a degree-2 labeling for a pair of disjoint cut
/// systems: charts 1, 2 cut along `sigma`, charts 3, 4 along `other`. Also
/// returns the crossing-parity region.
pub fn chart_views(
    labeling: &Labeling,
    sigma: &RasterScene,
    other: &RasterScene,
) -> Result<(Vec<ChartView>, Vec<u8>)> {
    if labeling.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            found: labeling.degree(),
        });
    }
    if labeling.len() != sigma.grid.cell_count() {
        return Err(Error::RasterMismatch("labeling does not match the grid".into()));
    }
    if let Some((f, _)) = sigma.crossed_faces().find(|(f, _)| other.crossing(*f).is_some()) {
        return Err(Error::Precondition(format!("cuts share face {f:?}")));
    }
    let region = parity_region(sigma, other, 0)?;
    let v1: Vec<u8> = labeling.sheets().iter().map(|&s| (s == 0) as u8).collect();
    let v2: Vec<u8> = v1.iter().map(|&x| 1 - x).collect();
    let v3: Vec<u8> = v1.iter().zip(&region).map(|(&x, &h)| x ^ h).collect();
    let v4: Vec<u8> = v3.iter().map(|&x| 1 - x).collect();
    let views = [v1, v2, v3, v4]
        .into_iter()
        .enumerate()
        .map(|(k, values)| ChartView { chart: k + 1, values })
        .collect();
    Ok((views, region))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{build_cover, Weighting};
    use crate::scene::{builtin_scene, rasterize};

    fn setup() -> (RasterScene, CoverGraph) {
        let raster = rasterize(&builtin_scene("two_points_2d").unwrap()).unwrap();
        let cover = build_cover(&raster, Weighting::Plain).unwrap();
        (raster, cover)
    }

    #[test]
    fn lifted_one_jumps_on_cut() {
        let (raster, cover) = setup();
        let v = vec![1u8; raster.grid.cell_count()];
        let sigma = lift_constrained(&v, &raster).unwrap();
        let j = jump_set(&sigma, &cover).unwrap();
        let cut: Vec<Face> = raster.crossed_faces().map(|(f, _)| f).collect();
        assert_eq!(j.faces, cut);
        assert_eq!(j.area(), 10.0);
        assert_eq!(total_variation(&sigma, &cover).unwrap(), 20.0);
    }

    #[test]
    fn block_has_its_perimeter() {
        let (raster, cover) = setup();
        let g = &raster.grid;
        let mut v = vec![1u8; g.cell_count()];
        for y in 3..6 {
            for x in 3..7 {
                v[g.index([x, y, 0])] = 0;
            }
        }
        let sigma = lift_constrained(&v, &raster).unwrap();
        // the block is away from the cut, so the jump is its boundary plus the cut
        assert_eq!(energy(&sigma, &cover).unwrap(), 14.0 + 10.0);
    }

    #[test]
    fn delta_matches_recomputation() {
        let (_, cover) = setup();
        let mut sigma = Labeling::dirichlet(&cover);
        let e0 = energy_q(&sigma, &cover).unwrap();
        let c = cover.grid.index([16, 16, 0]);
        let d = delta_energy(sigma.sheets(), &cover, c, 1);
        sigma.sheets_mut()[c] = 1;
        assert_eq!(energy_q(&sigma, &cover).unwrap(), e0 + d);
    }

    #[test]
    fn lift_requires_degree_two() {
        let raster = rasterize(&builtin_scene("steiner3_2d").unwrap()).unwrap();
        let v = vec![1u8; raster.grid.cell_count()];
        assert!(matches!(lift_constrained(&v, &raster), Err(Error::WrongDegree { .. })));
    }
}
