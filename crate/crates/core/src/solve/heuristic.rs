use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Certificate, FlowGraph, HeuristicParams, SolveResult, SolverKind, Stopwatch};
use crate::cover::CoverGraph;
use crate::functional::{delta_energy, sheets_energy, Labeling};

/// Multi-start local search: conditional re-labeling sweeps, binary min-cut
/// moves towards whole-sheet proposals, and annealing between descents.
/// Restart 0 starts from the Dirichlet labeling, later ones from random
/// interior sheets. Restarts are merged by (energy, labeling), so the
/// result does not depend on thread scheduling.
pub fn heuristic(cover: &CoverGraph, params: &HeuristicParams) -> SolveResult {
    let clock = Stopwatch::start();
    let restarts = params.restarts.max(1);
    let ctx = Context::new(cover, params.expansion);

    #[cfg(feature = "parallel")]
    let runs: Vec<(i64, Vec<u8>)> = {
        use rayon::prelude::*;
        (0..restarts).into_par_iter().map(|r| run(&ctx, params, r)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let runs: Vec<(i64, Vec<u8>)> = (0..restarts).map(|r| run(&ctx, params, r)).collect();

    let (_, best) = runs.into_iter().min().expect("at least one restart");
    let labeling = Labeling::from_sheets(best, cover.degree).expect("sheets in range");
    SolveResult::new(
        cover,
        labeling,
        SolverKind::Heuristic,
        Certificate::Heuristic,
        params.seed,
        clock,
    )
    .expect("labeling matches cover")
}

struct Context<'a> {
    cover: &'a CoverGraph,
    interior: Vec<usize>,
    /// Variable index of each interior cell, `u32::MAX` elsewhere.
    var: Vec<u32>,
    proposals: Vec<Vec<u8>>,
}

impl<'a> Context<'a> {
    fn new(cover: &'a CoverGraph, expansion: bool) -> Self {
        let interior = cover.interior_cells();
        let mut var = vec![u32::MAX; cover.cell_count()];
        for (i, &c) in interior.iter().enumerate() {
            var[c] = i as u32;
        }
        let mut proposals = Vec::new();
        if expansion {
            for a in 0..cover.degree as u8 {
                proposals.push(vec![a; cover.cell_count()]);
            }
            for a in 0..cover.degree as u8 {
                let t = transported(cover, a);
                if !proposals.contains(&t) {
                    proposals.push(t);
                }
            }
        }
        Context {
            cover,
            interior,
            var,
            proposals,
        }
    }
}

/// Sheet `a` carried across the cover by breadth-first search from the
/// first free cell of every component.
fn transported(cover: &CoverGraph, a: u8) -> Vec<u8> {
    let n = cover.cell_count();
    let mut out = vec![u8::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        if !cover.is_free(start) || out[start] != u8::MAX {
            continue;
        }
        out[start] = a;
        queue.push_back(start);
        while let Some(c) = queue.pop_front() {
            for inc in cover.incidences(c) {
                let o = inc.other as usize;
                if out[o] == u8::MAX {
                    out[o] = cover.apply(inc.perm, out[c]);
                    queue.push_back(o);
                }
            }
        }
    }
    for s in &mut out {
        if *s == u8::MAX {
            *s = a;
        }
    }
    out
}

fn run(ctx: &Context, params: &HeuristicParams, restart: usize) -> (i64, Vec<u8>) {
    let cover = ctx.cover;
    let d = cover.degree as u8;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(restart as u64);
    let mut s = Labeling::dirichlet(cover).sheets().to_vec();
    if restart > 0 {
        for &c in &ctx.interior {
            s[c] = rng.gen_range(0..d);
        }
    }
    let mut e = sheets_energy(&s, cover);
    descend(ctx, &mut s, &mut e);
    let mut best = (e, s.clone());
    let sched = &params.schedule;
    let mut t = sched.t0.unwrap_or_else(|| cover.mean_weight());
    let mut stale = 0;
    let mut sweeps = 0;
    while d > 1 && stale < sched.patience && sweeps < sched.max_sweeps {
        anneal_sweep(ctx, &mut s, &mut e, t, &mut rng);
        descend(ctx, &mut s, &mut e);
        if e < best.0 {
            best = (e, s.clone());
            stale = 0;
        } else {
            stale += 1;
        }
        t *= sched.decay;
        sweeps += 1;
    }
    best
}

fn anneal_sweep(ctx: &Context, s: &mut [u8], e: &mut i64, t: f64, rng: &mut ChaCha8Rng) {
    let d = ctx.cover.degree as u8;
    for &c in &ctx.interior {
        let mut to = rng.gen_range(0..d - 1);
        if to >= s[c] {
            to += 1;
        }
        let delta = delta_energy(s, ctx.cover, c, to);
        let u: f64 = rng.gen();
        if delta <= 0 || (t > 0.0 && u < (-(delta as f64) / t).exp()) {
            s[c] = to;
            *e += delta;
        }
    }
}

/// Alternates sweeps and binary moves until neither improves.
fn descend(ctx: &Context, s: &mut [u8], e: &mut i64) {
    loop {
        icm(ctx, s, e);
        let mut improved = false;
        for p in &ctx.proposals {
            if expansion(ctx, s, e, p) {
                icm(ctx, s, e);
                improved = true;
            }
        }
        if !improved {
            return;
        }
    }
}

/// Per-cell argmin sweeps to a local minimum.
fn icm(ctx: &Context, s: &mut [u8], e: &mut i64) {
    let d = ctx.cover.degree as u8;
    loop {
        let mut changed = false;
        for &c in &ctx.interior {
            let mut best = (0i64, s[c]);
            for to in 0..d {
                if to == s[c] {
                    continue;
                }
                let delta = delta_energy(s, ctx.cover, c, to);
                if delta < best.0 {
                    best = (delta, to);
                }
            }
            if best.0 < 0 {
                s[c] = best.1;
                *e += best.0;
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Adds `k·x` to a variable's unary costs, up to a constant.
fn unary(i: usize, k: i64, u0: &mut [i64], u1: &mut [i64]) {
    if k > 0 {
        u1[i] += k;
    } else {
        u0[i] -= k;
    }
}

/// Each interior cell keeps its sheet (x = 0) or takes the proposal's
/// (x = 1). Non-submodular pair terms are truncated, so the move is only
/// kept when the true energy drops.
fn expansion(ctx: &Context, s: &mut [u8], e: &mut i64, proposal: &[u8]) -> bool {
    let cover = ctx.cover;
    let m = ctx.interior.len();
    if ctx.interior.iter().all(|&c| s[c] == proposal[c]) {
        return false;
    }
    let (src, sink) = (m, m + 1);
    let mut g = FlowGraph::new(m + 2);
    let mut u0 = vec![0i64; m];
    let mut u1 = vec![0i64; m];
    for l in cover.links() {
        let (a, b) = (l.a as usize, l.b as usize);
        let (va, vb) = (ctx.var[a], ctx.var[b]);
        let w = l.weight;
        let cost = |x: u8, y: u8| if y != cover.apply(l.perm, x) { w } else { 0 };
        let la = [s[a], proposal[a]];
        let lb = [s[b], proposal[b]];
        match (va != u32::MAX, vb != u32::MAX) {
            (false, false) => {}
            (true, false) => {
                let k = cost(la[1], lb[0]) - cost(la[0], lb[0]);
                unary(va as usize, k, &mut u0, &mut u1);
            }
            (false, true) => {
                let k = cost(la[0], lb[1]) - cost(la[0], lb[0]);
                unary(vb as usize, k, &mut u0, &mut u1);
            }
            (true, true) => {
                let mut p00 = cost(la[0], lb[0]);
                let p01 = cost(la[0], lb[1]);
                let p10 = cost(la[1], lb[0]);
                let mut p11 = cost(la[1], lb[1]);
                if p00 + p11 > p01 + p10 {
                    p11 = (p01 + p10 - p00).max(0);
                    if p00 + p11 > p01 + p10 {
                        p00 = p01 + p10;
                        p11 = 0;
                    }
                }
                unary(va as usize, p10 - p00, &mut u0, &mut u1);
                unary(vb as usize, p11 - p10, &mut u0, &mut u1);
                g.add_edge(va as usize, vb as usize, p01 + p10 - p00 - p11, 0);
            }
        }
    }
    for i in 0..m {
        g.add_edge(src, i, u1[i], 0);
        g.add_edge(i, sink, u0[i], 0);
    }
    g.max_flow(src, sink);
    let side = g.source_side(src);
    let mut next = s.to_vec();
    let mut moved = false;
    for (i, &c) in ctx.interior.iter().enumerate() {
        if !side[i] && next[c] != proposal[c] {
            next[c] = proposal[c];
            moved = true;
        }
    }
    if !moved {
        return false;
    }
    let e2 = sheets_energy(&next, cover);
    if e2 < *e {
        s.copy_from_slice(&next);
        *e = e2;
        true
    } else {
        false
    }
}
