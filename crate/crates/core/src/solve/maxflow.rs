//! Dinic max-flow on integer capacities.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub struct FlowGraph {
    adj: Vec<Vec<u32>>,
    to: Vec<u32>,
    cap: Vec<i64>,
}

impl FlowGraph {
    pub fn new(nodes: usize) -> Self {
        FlowGraph {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Arc `u → v` with capacity `forward` and reverse capacity `backward`.
    pub fn add_edge(&mut self, u: usize, v: usize, forward: i64, backward: i64) {
        debug_assert!(forward >= 0 && backward >= 0);
        if u == v || (forward == 0 && backward == 0) {
            return;
        }
        let e = self.to.len() as u32;
        self.to.push(v as u32);
        self.cap.push(forward);
        self.adj[u].push(e);
        self.to.push(u as u32);
        self.cap.push(backward);
        self.adj[v].push(e + 1);
    }

    fn levels(&self, s: usize, t: usize, level: &mut [i32]) -> bool {
        level.fill(-1);
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && level[v] < 0 {
                    level[v] = level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        level[t] >= 0
    }

    /// Pushes a blocking flow along the level graph.
    fn blocking(&mut self, s: usize, t: usize, level: &mut [i32], it: &mut [usize]) -> i64 {
        let mut total = 0i64;
        let mut path: Vec<u32> = Vec::new();
        let mut v = s;
        loop {
            if v == t {
                let f = path.iter().map(|&e| self.cap[e as usize]).min().unwrap_or(0);
                let mut cut_at = path.len();
                for (k, &e) in path.iter().enumerate() {
                    self.cap[e as usize] -= f;
                    self.cap[(e ^ 1) as usize] += f;
                    if self.cap[e as usize] == 0 && cut_at == path.len() {
                        cut_at = k;
                    }
                }
                total += f;
                path.truncate(cut_at);
                v = match path.last() {
                    Some(&e) => self.to[e as usize] as usize,
                    None => s,
                };
                continue;
            }
            let mut advanced = false;
            while it[v] < self.adj[v].len() {
                let e = self.adj[v][it[v]];
                let w = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && level[w] == level[v] + 1 {
                    path.push(e);
                    v = w;
                    advanced = true;
                    break;
                }
                it[v] += 1;
            }
            if advanced {
                continue;
            }
            if v == s {
                return total;
            }
            level[v] = -1;
            let e = path.pop().expect("non-empty path");
            v = self.to[(e ^ 1) as usize] as usize;
            it[v] += 1;
        }
    }

    /// Maximum flow value from `s` to `t`; capacities become residuals.
    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.node_count();
        let mut level = vec![-1i32; n];
        let mut it = vec![0usize; n];
        let mut flow = 0i64;
        while self.levels(s, t, &mut level) {
            it.fill(0);
            flow += self.blocking(s, t, &mut level, &mut it);
        }
        flow
    }

    /// Nodes reachable from `s` in the residual graph.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && !seen[v] {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
        seen
    }
}
