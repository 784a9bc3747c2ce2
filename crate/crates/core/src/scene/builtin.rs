//! Built-in scenes. Coordinates are in grid units of the default grid
//! (`h = 1`); [`builtin_scene_with_grid`] rescales the spacing.

use std::collections::BTreeMap;

use super::spec::{BoundaryCurve, CurveRole, CutPatchSpec, Domain, PatchGeometry, Point, SceneSpec};
use crate::error::{Error, Result};
use crate::permgroup::{GroupSpec, Permutation};

pub const BUILTIN_NAMES: &[&str] = &[
    "two_points_2d",
    "two_points_2d_above",
    "two_points_2d_below",
    "steiner3_2d",
    "circle_3d",
    "cube_skeleton",
    "almgren",
    "moebius_retract",
    "octahedron_checker",
    "octahedron_diametral",
];

type P3 = [f64; 3];

fn pt(p: P3) -> Point {
    Point(p)
}

fn cycle(d: usize, c: &[usize]) -> Permutation {
    Permutation::from_cycles(d, &[c]).expect("builtin cycle")
}

/// Quad `a b c d` split into two triangles with the same orientation.
fn quad(q: [P3; 4]) -> Vec<[Point; 3]> {
    vec![
        [pt(q[0]), pt(q[1]), pt(q[2])],
        [pt(q[0]), pt(q[2]), pt(q[3])],
    ]
}

/// Axis-aligned rectangle in the plane `x_axis = at`, spanning `lo..hi` in the
/// two cyclically following axes, with normal `±e_axis`.
fn rect(axis: usize, at: f64, lo: [f64; 2], hi: [f64; 2], positive: bool) -> Vec<[Point; 3]> {
    let b = (axis + 1) % 3;
    let c = (axis + 2) % 3;
    let corner = |u: f64, v: f64| {
        let mut p = [0.0; 3];
        p[axis] = at;
        p[b] = u;
        p[c] = v;
        p
    };
    let mut q = [
        corner(lo[0], lo[1]),
        corner(hi[0], lo[1]),
        corner(hi[0], hi[1]),
        corner(lo[0], hi[1]),
    ];
    if !positive {
        q.reverse();
    }
    quad(q)
}

/// Rectangle given by its `x, y, z` ranges, one of which is degenerate.
fn rect_xyz(x: [f64; 2], y: [f64; 2], z: [f64; 2], positive: bool) -> Vec<[Point; 3]> {
    let r = [x, y, z];
    let axis = (0..3).find(|&a| r[a][0] == r[a][1]).expect("flat rectangle");
    let b = (axis + 1) % 3;
    let c = (axis + 2) % 3;
    rect(axis, r[axis][0], [r[b][0], r[c][0]], [r[b][1], r[c][1]], positive)
}

fn patch(id: &str, permutation: Permutation, tris: Vec<[Point; 3]>) -> CutPatchSpec {
    CutPatchSpec {
        id: id.into(),
        permutation,
        geometry: PatchGeometry::Triangles(tris),
    }
}

fn polyline_patch(id: &str, permutation: Permutation, pts: &[[f64; 2]]) -> CutPatchSpec {
    CutPatchSpec {
        id: id.into(),
        permutation,
        geometry: PatchGeometry::Polyline(pts.iter().map(|p| Point::xy(p[0], p[1])).collect()),
    }
}

fn boundary(points: &[P3], closed: bool) -> BoundaryCurve {
    BoundaryCurve {
        role: CurveRole::Boundary,
        points: points.iter().copied().map(pt).collect(),
        closed,
    }
}

fn wire(points: &[P3]) -> BoundaryCurve {
    BoundaryCurve::closed(CurveRole::InvisibleWire, points.iter().copied().map(pt).collect())
}

fn group(gens: &[&str], relators: &[&str], images: &[Permutation]) -> GroupSpec {
    GroupSpec {
        generators: gens.iter().map(|s| s.to_string()).collect(),
        relators: relators.iter().map(|s| s.to_string()).collect(),
        images: gens
            .iter()
            .zip(images)
            .map(|(g, p)| (g.to_string(), p.clone()))
            .collect::<BTreeMap<_, _>>(),
        basepoint: 1,
    }
}

fn scene(name: &str, dimension: u8, size: [f64; 3], degree: usize) -> SceneSpec {
    SceneSpec {
        name: name.into(),
        dimension,
        domain: Domain {
            min: Point::default(),
            max: Point(size),
        },
        grid_spacing: 1.0,
        degree,
        dirichlet_sheet: 1,
        boundary_curves: Vec::new(),
        cut_patches: Vec::new(),
        group: None,
    }
}

fn two_points(name: &str, cut: &[[f64; 2]]) -> SceneSpec {
    let mut s = scene(name, 2, [32.0, 32.0, 0.0], 2);
    s.boundary_curves = vec![BoundaryCurve::open(
        CurveRole::Boundary,
        vec![Point::xy(11.0, 16.0), Point::xy(21.0, 16.0)],
    )];
    s.cut_patches = vec![polyline_patch("cut", cycle(2, &[1, 2]), cut)];
    let t = cycle(2, &[1, 2]);
    s.group = Some(group(&["a", "b"], &[], &[t.clone(), t]));
    s
}

fn steiner3() -> SceneSpec {
    // equilateral side 20 with the apex height rounded up to a whole cell
    let apex = 10.0 + (10.0 * 3f64.sqrt()).ceil();
    let mut s = scene("steiner3_2d", 2, [40.0, 40.0, 0.0], 3);
    s.boundary_curves = vec![BoundaryCurve::open(
        CurveRole::Boundary,
        vec![Point::xy(10.0, 10.0), Point::xy(30.0, 10.0), Point::xy(20.0, apex)],
    )];
    // the cuts meet the apex at a right angle so no face carries both
    let p = cycle(3, &[1, 2, 3]);
    s.cut_patches = vec![
        polyline_patch("left", p.clone(), &[[10.0, 10.0], [10.0, apex], [20.0, apex]]),
        polyline_patch("right", p, &[[30.0, 10.0], [20.0, 10.0], [20.0, apex]]),
    ];
    s
}

fn circle() -> SceneSpec {
    let mut s = scene("circle_3d", 3, [32.0; 3], 2);
    let (c, r, n) = (16.0, 8.0, 64);
    let rim: Vec<P3> = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            [c + r * t.cos(), c + r * t.sin(), c]
        })
        .collect();
    let tris = (0..n)
        .map(|k| [pt([c, c, c]), pt(rim[k]), pt(rim[(k + 1) % n])])
        .collect();
    s.boundary_curves = vec![boundary(&rim, true)];
    s.cut_patches = vec![patch("disk", cycle(2, &[1, 2]), tris)];
    s.group = Some(group(&["a"], &[], &[cycle(2, &[1, 2])]));
    s
}

fn cube_skeleton() -> SceneSpec {
    let mut s = scene("cube_skeleton", 3, [24.0; 3], 3);
    let (lo, hi) = (6.0, 18.0);
    let r = 3;
    let id = Permutation::identity(r);
    let up = cycle(r, &[1, 2, 3]);
    let down = cycle(r, &[1, 3, 2]);
    let perms = [down, id, up];
    let names = ["x", "y", "z"];
    let mut patches = Vec::new();
    for axis in 0..3 {
        patches.push(patch(
            &format!("{}-", names[axis]),
            perms[axis].clone(),
            rect(axis, lo, [lo, lo], [hi, hi], true),
        ));
        patches.push(patch(
            &format!("{}+", names[axis]),
            perms[axis].clone(),
            rect(axis, hi, [lo, lo], [hi, hi], false),
        ));
    }
    s.cut_patches = patches;
    let mut edges = Vec::new();
    for axis in 0..3 {
        let b = (axis + 1) % 3;
        let c = (axis + 2) % 3;
        for (u, v) in [(lo, lo), (hi, lo), (hi, hi), (lo, hi)] {
            let mut p = [0.0; 3];
            p[b] = u;
            p[c] = v;
            let mut q = p;
            p[axis] = lo;
            q[axis] = hi;
            edges.push(boundary(&[p, q], false));
        }
    }
    s.boundary_curves = edges;
    s.group = Some(group(&["a", "b", "c", "d", "e"], &[], &vec![cycle(3, &[1, 2, 3]); 5]));
    s
}

/// Almgren-type frame, authored in half-units: `x → 2x + 4`, `y → 2y + 4`,
/// `z → 2z + 8`.
fn almgren() -> SceneSpec {
    let mut s = scene("almgren", 3, [28.0; 3], 3);
    let m = |p: P3| [2.0 * p[0] + 4.0, 2.0 * p[1] + 4.0, 2.0 * p[2] + 8.0];
    let xr = |a: f64, b: f64| [2.0 * a + 4.0, 2.0 * b + 4.0];
    let yr = xr;
    let zr = |a: f64, b: f64| [2.0 * a + 8.0, 2.0 * b + 8.0];
    let at_y = |y: f64| [2.0 * y + 4.0; 2];
    let at_z = |z: f64| [2.0 * z + 8.0; 2];

    let mut disk = rect_xyz(xr(1.0, 7.0), yr(0.0, 8.0), at_z(0.0), true);
    disk.extend(rect_xyz(xr(3.0, 5.0), yr(8.0, 9.0), at_z(0.0), true));
    let mut ribbon = rect_xyz(xr(3.0, 5.0), yr(9.0, 10.0), at_z(0.0), true);
    ribbon.extend(rect_xyz(xr(3.0, 5.0), at_y(10.0), zr(0.0, 4.0), false));
    ribbon.extend(rect_xyz(xr(3.0, 5.0), yr(4.0, 10.0), at_z(4.0), false));
    ribbon.extend(rect_xyz(xr(3.0, 5.0), at_y(4.0), zr(0.0, 4.0), true));
    let tongue = rect_xyz(xr(3.0, 5.0), at_y(4.0), zr(-2.0, 0.0), true);
    let wire_disk = rect_xyz(xr(2.0, 6.0), at_y(9.0), zr(-1.0, 1.0), true);

    s.cut_patches = vec![
        patch("disk", cycle(3, &[1, 2]), disk),
        patch("ribbon", cycle(3, &[1, 3]), ribbon),
        patch("tongue", cycle(3, &[2, 3]), tongue),
        patch("wire_disk", cycle(3, &[2, 3]), wire_disk),
    ];
    let gamma: Vec<P3> = [
        [1.0, 0.0, 0.0],
        [7.0, 0.0, 0.0],
        [7.0, 8.0, 0.0],
        [5.0, 8.0, 0.0],
        [5.0, 10.0, 0.0],
        [5.0, 10.0, 4.0],
        [5.0, 4.0, 4.0],
        [5.0, 4.0, 0.0],
        [5.0, 4.0, -2.0],
        [3.0, 4.0, -2.0],
        [3.0, 4.0, 0.0],
        [3.0, 4.0, 4.0],
        [3.0, 10.0, 4.0],
        [3.0, 10.0, 0.0],
        [3.0, 8.0, 0.0],
        [1.0, 8.0, 0.0],
    ]
    .into_iter()
    .map(m)
    .collect();
    let c: Vec<P3> = [
        [2.0, 9.0, -1.0],
        [6.0, 9.0, -1.0],
        [6.0, 9.0, 1.0],
        [2.0, 9.0, 1.0],
    ]
    .into_iter()
    .map(m)
    .collect();
    s.boundary_curves = vec![boundary(&gamma, true), wire(&c)];
    s.group = Some(group(&["a", "b"], &[], &[cycle(3, &[1, 2]), cycle(3, &[2, 3])]));
    s
}

/// Stand-in for the Möbius-band retract: a polyhedral band with one
/// half-twist worth of orientation reversal, plus a wire disk.
fn moebius() -> SceneSpec {
    let mut s = scene("moebius_retract", 3, [20.0; 3], 3);
    let band: [[P3; 4]; 8] = [
        [[4.0, 4.0, 4.0], [4.0, 10.0, 4.0], [4.0, 10.0, 7.0], [4.0, 4.0, 7.0]],
        [[4.0, 4.0, 4.0], [10.0, 4.0, 4.0], [10.0, 10.0, 4.0], [4.0, 10.0, 4.0]],
        [[10.0, 4.0, 10.0], [10.0, 10.0, 10.0], [10.0, 10.0, 4.0], [10.0, 4.0, 4.0]],
        [[10.0, 10.0, 10.0], [10.0, 16.0, 10.0], [10.0, 16.0, 4.0], [10.0, 10.0, 4.0]],
        [[10.0, 10.0, 16.0], [10.0, 16.0, 16.0], [10.0, 16.0, 10.0], [10.0, 10.0, 10.0]],
        [[4.0, 10.0, 16.0], [10.0, 10.0, 16.0], [10.0, 10.0, 10.0], [4.0, 10.0, 10.0]],
        [[4.0, 4.0, 16.0], [4.0, 10.0, 16.0], [4.0, 10.0, 10.0], [4.0, 4.0, 10.0]],
        [[4.0, 4.0, 10.0], [4.0, 10.0, 10.0], [4.0, 10.0, 7.0], [4.0, 4.0, 7.0]],
    ];
    // a one-sided band cannot be a single oriented patch; it is split where
    // the orientation flips
    let lower = band[..4].iter().flat_map(|q| quad(*q)).collect();
    let upper = band[4..].iter().flat_map(|q| quad(*q)).collect();
    let rim: [P3; 12] = [
        [4.0, 10.0, 4.0],
        [4.0, 10.0, 10.0],
        [10.0, 10.0, 10.0],
        [10.0, 4.0, 10.0],
        [10.0, 4.0, 4.0],
        [4.0, 4.0, 4.0],
        [4.0, 4.0, 16.0],
        [4.0, 10.0, 16.0],
        [10.0, 10.0, 16.0],
        [10.0, 16.0, 16.0],
        [10.0, 16.0, 4.0],
        [10.0, 10.0, 4.0],
    ];
    let wire_disk = rect_xyz([3.0, 5.0], [3.0, 11.0], [7.0, 7.0], true);
    s.cut_patches = vec![
        patch("band_lower", cycle(3, &[1, 2, 3]), lower),
        patch("band_upper", cycle(3, &[1, 2, 3]), upper),
        patch("wire_disk", cycle(3, &[2, 3]), wire_disk),
    ];
    s.boundary_curves = vec![
        boundary(&rim, true),
        wire(&[[3.0, 3.0, 7.0], [5.0, 3.0, 7.0], [5.0, 11.0, 7.0], [3.0, 11.0, 7.0]]),
    ];
    s.group = Some(group(
        &["a", "b"],
        &["abab = baba"],
        &[cycle(3, &[1, 2, 3]), cycle(3, &[2, 3])],
    ));
    s
}

fn octahedron_edges(c: f64, r: f64) -> Vec<BoundaryCurve> {
    let v = |axis: usize, sign: f64| {
        let mut p = [c; 3];
        p[axis] += sign * r;
        p
    };
    let mut out = Vec::new();
    for a in 0..3 {
        for b in a + 1..3 {
            for sa in [1.0, -1.0] {
                for sb in [1.0, -1.0] {
                    out.push(boundary(&[v(a, sa), v(b, sb)], false));
                }
            }
        }
    }
    out
}

fn octahedron(name: &str, diametral: bool) -> SceneSpec {
    let (c, r) = (12.0, 8.0);
    let mut s = scene(name, 3, [24.0; 3], 3);
    let p = cycle(3, &[1, 2, 3]);
    let vertex = |axis: usize, sign: f64| {
        let mut q = [c; 3];
        q[axis] += sign * r;
        q
    };
    if diametral {
        s.cut_patches = (0..3)
            .map(|axis| {
                let b = (axis + 1) % 3;
                let cc = (axis + 2) % 3;
                let q = [vertex(b, 1.0), vertex(cc, 1.0), vertex(b, -1.0), vertex(cc, -1.0)];
                patch(&format!("square{axis}"), p.clone(), quad(q))
            })
            .collect();
    } else {
        let octants = [
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ];
        s.cut_patches = octants
            .iter()
            .enumerate()
            .map(|(k, sg)| {
                let t = [
                    pt(vertex(0, sg[0])),
                    pt(vertex(1, sg[1])),
                    pt(vertex(2, sg[2])),
                ];
                patch(&format!("face{k}"), p.clone(), vec![t])
            })
            .collect();
    }
    s.boundary_curves = octahedron_edges(c, r);
    s.group = Some(group(&["a", "b", "c", "d", "e"], &[], &vec![p; 5]));
    s
}

/// Looks up a built-in scene on its default grid.
pub fn builtin_scene(name: &str) -> Result<SceneSpec> {
    let s = match name {
        "two_points_2d" => two_points(name, &[[11.0, 16.0], [21.0, 16.0]]),
        "two_points_2d_above" => two_points(
            name,
            &[[11.0, 16.0], [11.0, 20.0], [21.0, 20.0], [21.0, 16.0]],
        ),
        "two_points_2d_below" => two_points(
            name,
            &[[11.0, 16.0], [11.0, 12.0], [21.0, 12.0], [21.0, 16.0]],
        ),
        "steiner3_2d" => steiner3(),
        "circle_3d" => circle(),
        "cube_skeleton" => cube_skeleton(),
        "almgren" => almgren(),
        "moebius_retract" => moebius(),
        "octahedron_checker" => octahedron(name, false),
        "octahedron_diametral" => octahedron(name, true),
        _ => return Err(Error::UnknownScene(name.to_string())),
    };
    Ok(s)
}

/// A built-in scene with `n` cells along each axis.
pub fn builtin_scene_with_grid(name: &str, n: usize) -> Result<SceneSpec> {
    builtin_scene(name)?.with_grid(n)
}
