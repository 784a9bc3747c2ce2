use super::{heuristic, Certificate, FlowGraph, HeuristicParams, SolveResult, SolverKind, Stopwatch};
use crate::cover::CoverGraph;
use crate::error::{Error, Result};
use crate::functional::{sheets_energy, Labeling};

/// Exact minimizer for double covers via an s-t cut of the cover graph.
///
/// Source side is the Dirichlet sheet over the collar, sink side the other
/// sheet. A cell takes sheet 1 when its sheet-1 node is on the source side
/// and sheet 2 otherwise. The result is certified exact when twice its
/// energy equals the cut; otherwise the heuristic runs and the better of
/// the two is returned uncertified.
pub fn mincut_degree2(cover: &CoverGraph, fallback: &HeuristicParams) -> Result<SolveResult> {
    if cover.degree != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            found: cover.degree,
        });
    }
    let clock = Stopwatch::start();
    let n = cover.cell_count();
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut g = FlowGraph::new(2 * n + 2);
    let total: i64 = cover.links().iter().map(|l| l.weight).sum();
    let inf = 2 * total + 1;
    for l in cover.links() {
        for s in 0..2u8 {
            let u = cover.node(l.a as usize, s);
            let v = cover.node(l.b as usize, cover.apply(l.perm, s));
            g.add_edge(u, v, l.weight, l.weight);
        }
    }
    let dir = cover.dirichlet;
    for c in 0..n {
        if cover.is_free(c) && cover.is_collar(c) {
            g.add_edge(src, cover.node(c, dir), inf, 0);
            g.add_edge(cover.node(c, 1 - dir), sink, inf, 0);
        }
    }
    let cut = g.max_flow(src, sink);
    let side = g.source_side(src);
    let mut sheets = Labeling::dirichlet(cover).sheets().to_vec();
    for c in 0..n {
        if cover.is_free(c) {
            sheets[c] = if side[cover.node(c, 0)] { 0 } else { 1 };
        }
    }
    let e = sheets_energy(&sheets, cover);
    let labeling = Labeling::from_sheets(sheets, 2)?;
    if 2 * e == cut {
        return SolveResult::new(cover, labeling, SolverKind::Mincut, Certificate::Exact, 0, clock);
    }
    let h = heuristic(cover, fallback);
    let best = if (h.energy_q, h.labeling.sheets()) < (e, labeling.sheets()) {
        h.labeling
    } else {
        labeling
    };
    SolveResult::new(
        cover,
        best,
        SolverKind::Mincut,
        Certificate::Heuristic,
        fallback.seed,
        clock,
    )
}
