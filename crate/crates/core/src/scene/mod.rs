//! Problem instances: the scene document, built-in scenes, rasterization
//! onto a cell grid, and the elementary-loop consistency check.

mod builtin;
mod raster;
mod spec;
mod validate;

pub use builtin::{builtin_scene, builtin_scene_with_grid, BUILTIN_NAMES};
pub use raster::{rasterize, Crossing, CurveSegment, RasterPatch, RasterScene};
pub use spec::{
    parse_scene, serialize_scene, BoundaryCurve, CurveRole, CutPatchSpec, Domain, PatchGeometry,
    Point, SceneSpec, COLLAR_CELLS,
};
pub use validate::{validate, Classification, ElementRecord, Status, ValidationReport};
