//! Minimizers of the constrained energy: exhaustive enumeration, an exact
//! min-cut for double covers, and a move-making heuristic for any degree.

mod brute;
mod heuristic;
mod maxflow;
mod mincut;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cover::CoverGraph;
use crate::error::{Error, Result};
use crate::functional::{energy_q, Labeling};

pub use brute::brute_force;
pub use heuristic::heuristic;
pub use maxflow::FlowGraph;
pub use mincut::mincut_degree2;

/// Default cap on `d^k` for [`brute_force`].
pub const DEFAULT_MAX_STATES: u64 = 1 << 24;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    #[default]
    Auto,
    Brute,
    Mincut,
    Heuristic,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::Auto => "auto",
            SolverKind::Brute => "brute",
            SolverKind::Mincut => "mincut",
            SolverKind::Heuristic => "heuristic",
        })
    }
}

impl FromStr for SolverKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(SolverKind::Auto),
            "brute" => Ok(SolverKind::Brute),
            "mincut" => Ok(SolverKind::Mincut),
            "heuristic" => Ok(SolverKind::Heuristic),
            _ => Err(Error::Schema(format!("unknown solver `{s}`"))),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certificate {
    Exact,
    Heuristic,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::Exact => "exact",
            Certificate::Heuristic => "heuristic",
        })
    }
}

/// Geometric annealing schedule.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    /// Initial temperature in quantized weight units; `None` means the mean
    /// link weight.
    pub t0: Option<f64>,
    pub decay: f64,
    /// Sweeps without improvement before a restart stops.
    pub patience: usize,
    pub max_sweeps: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            t0: None,
            decay: 0.95,
            patience: 50,
            max_sweeps: 2000,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeuristicParams {
    pub seed: u64,
    pub restarts: usize,
    pub schedule: Schedule,
    /// Binary min-cut moves towards whole-sheet proposals.
    pub expansion: bool,
}

impl Default for HeuristicParams {
    fn default() -> Self {
        HeuristicParams {
            seed: 0,
            restarts: 8,
            schedule: Schedule::default(),
            expansion: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub labeling: Labeling,
    /// Quantized energy.
    pub energy_q: i64,
    pub energy: f64,
    pub tv: f64,
    pub solver: SolverKind,
    pub certificate: Certificate,
    pub seed: u64,
    /// Seconds.
    pub wallclock: f64,
}

impl SolveResult {
    fn new(
        cover: &CoverGraph,
        labeling: Labeling,
        solver: SolverKind,
        certificate: Certificate,
        seed: u64,
        clock: Stopwatch,
    ) -> Result<Self> {
        let q = energy_q(&labeling, cover)?;
        let energy = cover.to_measure(q);
        Ok(SolveResult {
            labeling,
            energy_q: q,
            energy,
            tv: 2.0 * energy,
            solver,
            certificate,
            seed,
            wallclock: clock.elapsed(),
        })
    }

    /// Equality of everything except the wallclock.
    pub fn same_outcome(&self, other: &SolveResult) -> bool {
        self.labeling == other.labeling
            && self.energy_q == other.energy_q
            && self.energy.to_bits() == other.energy.to_bits()
            && self.tv.to_bits() == other.tv.to_bits()
            && self.solver == other.solver
            && self.certificate == other.certificate
            && self.seed == other.seed
    }
}

/// Runs the requested solver. `Auto` picks min-cut for degree 2, exhaustive
/// search when the state space fits, and the heuristic otherwise.
pub fn solve(cover: &CoverGraph, kind: SolverKind, params: &HeuristicParams) -> Result<SolveResult> {
    match kind {
        SolverKind::Brute => brute_force(cover, DEFAULT_MAX_STATES),
        SolverKind::Mincut => mincut_degree2(cover, params),
        SolverKind::Heuristic => Ok(heuristic(cover, params)),
        SolverKind::Auto if cover.degree == 2 => mincut_degree2(cover, params),
        SolverKind::Auto => match brute_force(cover, DEFAULT_MAX_STATES) {
            Err(Error::StateLimit { .. }) => Ok(heuristic(cover, params)),
            other => other,
        },
    }
}

/// Elapsed seconds; always zero on targets without a clock.
#[derive(Copy, Clone)]
struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn elapsed(&self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        return self.start.elapsed().as_secs_f64();
        #[cfg(target_arch = "wasm32")]
        0.0
    }
}
