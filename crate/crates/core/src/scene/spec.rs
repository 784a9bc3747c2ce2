use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::permgroup::{GroupSpec, Permutation};

/// A point in world coordinates; 2D documents may omit z.
#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct Point(pub [f64; 3]);

impl Point {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point([x, y, z])
    }

    pub fn xy(x: f64, y: f64) -> Self {
        Point([x, y, 0.0])
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        match v.as_slice() {
            [x, y] => Ok(Point([*x, *y, 0.0])),
            [x, y, z] => Ok(Point([*x, *y, *z])),
            _ => Err(serde::de::Error::custom(format!(
                "point needs 2 or 3 coordinates, got {}",
                v.len()
            ))),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub min: Point,
    pub max: Point,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveRole {
    Boundary,
    InvisibleWire,
}

/// A boundary polyline (3D) or a set of isolated points (2D).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub role: CurveRole,
    pub points: Vec<Point>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub closed: bool,
}

impl BoundaryCurve {
    pub fn open(role: CurveRole, points: Vec<Point>) -> Self {
        BoundaryCurve {
            role,
            points,
            closed: false,
        }
    }

    pub fn closed(role: CurveRole, points: Vec<Point>) -> Self {
        BoundaryCurve {
            role,
            points,
            closed: true,
        }
    }

    /// Polyline segments, including the closing one.
    pub fn segments(&self) -> Vec<(Point, Point)> {
        let n = self.points.len();
        let mut out: Vec<_> = self.points.windows(2).map(|w| (w[0], w[1])).collect();
        if self.closed && n > 2 {
            out.push((self.points[n - 1], self.points[0]));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatchGeometry {
    /// Oriented triangles; the normal follows the right-hand rule.
    Triangles(Vec<[Point; 3]>),
    /// Oriented polyline; the co-normal of direction `(tx, ty)` is `(ty, -tx)`.
    Polyline(Vec<Point>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutPatchSpec {
    pub id: String,
    pub permutation: Permutation,
    #[serde(flatten)]
    pub geometry: PatchGeometry,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub name: String,
    pub dimension: u8,
    pub domain: Domain,
    pub grid_spacing: f64,
    pub degree: usize,
    pub dirichlet_sheet: usize,
    #[serde(default)]
    pub boundary_curves: Vec<BoundaryCurve>,
    #[serde(default)]
    pub cut_patches: Vec<CutPatchSpec>,
    /// Presentation and homomorphism of the complement, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
}

/// Minimum distance from geometry to the domain boundary, in cells.
pub const COLLAR_CELLS: f64 = 2.0;

impl SceneSpec {
    pub fn grid(&self) -> Result<Grid> {
        Grid::new(
            self.dimension,
            self.domain.min.0,
            self.domain.max.0,
            self.grid_spacing,
        )
    }

    /// Checks every type invariant.
    pub fn check(&self) -> Result<()> {
        if self.degree < 2 || self.degree > u8::MAX as usize {
            return Err(Error::Schema(format!("degree {} must be at least 2", self.degree)));
        }
        if self.dirichlet_sheet == 0 || self.dirichlet_sheet > self.degree {
            return Err(Error::Schema(format!(
                "dirichlet_sheet {} outside 1..{}",
                self.dirichlet_sheet, self.degree
            )));
        }
        self.grid()?;
        for p in &self.cut_patches {
            if p.permutation.degree() != self.degree {
                return Err(Error::WrongDegree {
                    expected: self.degree,
                    found: p.permutation.degree(),
                });
            }
            match (&p.geometry, self.dimension) {
                (PatchGeometry::Polyline(pts), 2) if pts.len() >= 2 => {}
                (PatchGeometry::Triangles(t), 3) if !t.is_empty() => {}
                _ => {
                    return Err(Error::Schema(format!(
                        "patch `{}` geometry does not match dimension {}",
                        p.id, self.dimension
                    )))
                }
            }
        }
        let mut ids: Vec<&str> = self.cut_patches.iter().map(|p| p.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Schema(format!("duplicate patch id `{}`", w[0])));
        }
        let margin = COLLAR_CELLS * self.grid_spacing;
        let inside = |p: &Point, what: &str| -> Result<()> {
            for a in 0..self.dimension as usize {
                let lo = self.domain.min.0[a] + margin;
                let hi = self.domain.max.0[a] - margin;
                let tol = 1e-9 * self.grid_spacing;
                if p.0[a] < lo - tol || p.0[a] > hi + tol || !p.0[a].is_finite() {
                    return Err(Error::OutsideDomain(format!(
                        "{what} point {:?} is not inside the domain with a {COLLAR_CELLS}-cell collar",
                        p.0
                    )));
                }
            }
            Ok(())
        };
        for c in &self.boundary_curves {
            if c.points.is_empty() {
                return Err(Error::Schema("boundary curve without points".into()));
            }
            for p in &c.points {
                inside(p, "curve")?;
            }
        }
        for patch in &self.cut_patches {
            let pts: Vec<&Point> = match &patch.geometry {
                PatchGeometry::Polyline(v) => v.iter().collect(),
                PatchGeometry::Triangles(t) => t.iter().flatten().collect(),
            };
            for p in pts {
                inside(p, &format!("patch `{}`", patch.id))?;
            }
        }
        if let Some(g) = &self.group {
            let hom = g.homomorphism()?;
            if hom.degree() != self.degree {
                return Err(Error::WrongDegree {
                    expected: self.degree,
                    found: hom.degree(),
                });
            }
        }
        Ok(())
    }

    /// Relabels sheets by `g`: every patch permutation `p` becomes `g⁻¹pg`
    /// and the Dirichlet sheet `s` becomes `g(s)`.
    pub fn relabeled(&self, g: &Permutation) -> Result<SceneSpec> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        let mut out = self.clone();
        for p in &mut out.cut_patches {
            p.permutation = p.permutation.conjugate_by(g);
        }
        out.dirichlet_sheet = g.apply(self.dirichlet_sheet);
        if let Some(group) = &mut out.group {
            for img in group.images.values_mut() {
                *img = img.conjugate_by(g);
            }
            group.basepoint = g.apply(group.basepoint);
        }
        Ok(out)
    }

    /// Same geometry on a grid with `n` cells along x.
    pub fn with_grid(&self, n: usize) -> Result<SceneSpec> {
        if n == 0 {
            return Err(Error::Schema("grid size must be positive".into()));
        }
        let mut out = self.clone();
        out.grid_spacing = (self.domain.max.0[0] - self.domain.min.0[0]) / n as f64;
        out.check()?;
        Ok(out)
    }
}

/// Parses and checks a scene document.
pub fn parse_scene(text: &str) -> Result<SceneSpec> {
    let spec: SceneSpec =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    spec.check()?;
    Ok(spec)
}

pub fn serialize_scene(spec: &SceneSpec) -> String {
    serde_json::to_string_pretty(spec).expect("scene serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "name": "segment", "dimension": 2,
        "domain": {"min": [0, 0], "max": [16, 16]},
        "grid_spacing": 1.0, "degree": 2, "dirichlet_sheet": 1,
        "boundary_curves": [{"role": "boundary", "points": [[6, 8], [10, 8]]}],
        "cut_patches": [{"id": "cut", "permutation": [2, 1], "polyline": [[6, 8], [10, 8]]}]
    }"#;

    #[test]
    fn minimal_document() {
        let s = parse_scene(MINIMAL).unwrap();
        assert_eq!(s.degree, 2);
        assert_eq!(s.cut_patches.len(), 1);
        assert_eq!(parse_scene(&serialize_scene(&s)).unwrap(), s);
    }

    #[test]
    fn missing_degree_is_schema_error() {
        let text = MINIMAL.replace(r#""degree": 2,"#, "");
        assert!(matches!(parse_scene(&text), Err(Error::Schema(_))));
    }

    #[test]
    fn bad_permutation_is_schema_error() {
        let text = MINIMAL.replace("[2, 1]", "[2, 2]");
        assert!(matches!(parse_scene(&text), Err(Error::Schema(_))));
    }

    #[test]
    fn degree_one_rejected() {
        let text = MINIMAL
            .replace(r#""degree": 2"#, r#""degree": 1"#)
            .replace("[2, 1]", "[1]");
        assert!(parse_scene(&text).is_err());
    }

    #[test]
    fn geometry_in_collar_rejected() {
        let text = MINIMAL.replace("[[6, 8], [10, 8]]}]", "[[1, 8], [10, 8]]}]");
        assert!(matches!(parse_scene(&text), Err(Error::OutsideDomain(_))));
    }
}
