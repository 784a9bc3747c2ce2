//! Covering-space method for Plateau-type problems on regular grids.
//!
//! A problem instance ([`scene::SceneSpec`]) describes a boundary frame, optional
//! invisible wires and a set of oriented cut patches, each carrying a permutation
//! of the `d` sheets. The scene is rasterized onto a cell grid, the permutations
//! are checked for local consistency, and the resulting `d`-sheeted cover of the
//! grid is searched for a labeling of minimal total variation. The projected jump
//! set of that labeling is the discrete soap film.
//!
//! Module map:
//!
//! * [`scene`] parsing, built-in scenes, rasterization and validation
//! * [`permgroup`] permutations, words, homomorphisms into `S_d`
//! * [`cover`] the cover graph, monodromy, linking parity, labeling transport
//! * [`functional`] labelings, the energy, jump sets and chart views
//! * [`solve`] exhaustive, min-cut and move-making solvers
//! * [`measure`] area, wetting analysis, OBJ and JSON export

pub mod cover;
pub mod error;
pub mod functional;
pub mod grid;
pub mod measure;
pub mod permgroup;
pub mod scene;
pub mod solve;

pub use error::{Error, Result};
pub use permgroup::Permutation;
