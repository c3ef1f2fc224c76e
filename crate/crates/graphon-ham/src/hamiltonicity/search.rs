//! Exact Hamiltonian-cycle search with a node-expansion budget.

use super::{HamWitness, WitnessKind};
use crate::sampling::SampledDigraph;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HamCycleSearch {
    Found(HamWitness),
    Absent,
    /// The budget ran out before the search finished.
    Unknown,
}

/// Backtracking from node 0. A partial path `0 … v` is abandoned when some
/// unvisited node has no usable in- or out-arc left, or when the unvisited
/// nodes together with the two path ends cannot be threaded into one cycle
/// (strong connectivity after contracting `v` and `0`). A node whose only
/// remaining predecessor is `v` is taken next.
pub fn find_ham_cycle(g: &SampledDigraph, budget: u64) -> HamCycleSearch {
    let n = g.node_count();
    if n < 2 {
        return HamCycleSearch::Absent;
    }
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (a, b) in g.edges() {
        preds[b].push(a as u32);
    }
    if (0..n).any(|v| g.out_neighbors(v).is_empty() || preds[v].is_empty()) {
        return HamCycleSearch::Absent;
    }
    let mut s = Search {
        g,
        preds,
        visited: vec![false; n],
        path: vec![0],
        budget,
        expansions: 0,
        mark: vec![0; n],
        epoch: 0,
        queue: Vec::with_capacity(n),
    };
    s.visited[0] = true;
    if !s.threadable(0) {
        return HamCycleSearch::Absent;
    }
    match s.extend() {
        Step::Done => HamCycleSearch::Found(HamWitness {
            kind: WitnessKind::Cycle,
            cycles: vec![s.path],
        }),
        Step::Fail => HamCycleSearch::Absent,
        Step::OutOfBudget => HamCycleSearch::Unknown,
    }
}

enum Step {
    Done,
    Fail,
    OutOfBudget,
}

struct Search<'a> {
    g: &'a SampledDigraph,
    preds: Vec<Vec<u32>>,
    visited: Vec<bool>,
    path: Vec<usize>,
    budget: u64,
    expansions: u64,
    mark: Vec<u32>,
    epoch: u32,
    queue: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self) -> Step {
        let n = self.g.node_count();
        let v = *self.path.last().expect("path starts at node 0");
        if self.path.len() == n {
            return if self.g.has_edge(v, 0) { Step::Done } else { Step::Fail };
        }
        let Some(candidates) = self.candidates(v) else {
            return Step::Fail;
        };
        for w in candidates {
            if self.expansions >= self.budget {
                return Step::OutOfBudget;
            }
            self.expansions += 1;
            self.visited[w] = true;
            self.path.push(w);
            if self.threadable(w) {
                match self.extend() {
                    Step::Fail => {}
                    other => return other,
                }
            }
            self.path.pop();
            self.visited[w] = false;
        }
        Step::Fail
    }

    /// Next nodes to try after `v`, or `None` if the position is dead.
    fn candidates(&self, v: usize) -> Option<Vec<usize>> {
        let n = self.g.node_count();
        let mut forced = None;
        for w in 0..n {
            if self.visited[w] {
                continue;
            }
            let mut ins = 0;
            let mut only = usize::MAX;
            for &p in &self.preds[w] {
                let p = p as usize;
                if !self.visited[p] || p == v {
                    ins += 1;
                    only = p;
                }
            }
            let outs = self
                .g
                .out_neighbors(w)
                .iter()
                .filter(|&&q| !self.visited[q as usize] || q == 0)
                .count();
            if ins == 0 || outs == 0 {
                return None;
            }
            if ins == 1 && only == v {
                if forced.is_some() {
                    return None;
                }
                forced = Some(w);
            }
        }
        if let Some(w) = forced {
            return self.g.has_edge(v, w).then(|| vec![w]);
        }
        // Fewest onward options first.
        let mut next: Vec<(usize, usize)> = self
            .g
            .out_neighbors(v)
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| !self.visited[w])
            .map(|w| {
                let deg = self.g.out_neighbors(w).iter().filter(|&&q| !self.visited[q as usize]).count();
                (deg, w)
            })
            .collect();
        next.sort_unstable();
        Some(next.into_iter().map(|(_, w)| w).collect())
    }

    /// Can the unvisited nodes still be threaded from `end` back to node 0?
    /// Contract `end` and 0 into one hub `h` (arcs out of `end`, arcs into
    /// 0); the hub and the unvisited nodes must be strongly connected.
    fn threadable(&mut self, end: usize) -> bool {
        let n = self.g.node_count();
        let remaining = n - self.path.len();
        if remaining == 0 {
            return self.g.has_edge(end, 0);
        }
        // Forward reach from the hub.
        self.epoch += 1;
        let e = self.epoch;
        self.queue.clear();
        for &w in self.g.out_neighbors(end) {
            let w = w as usize;
            if !self.visited[w] && self.mark[w] != e {
                self.mark[w] = e;
                self.queue.push(w);
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            for &w in self.g.out_neighbors(u) {
                let w = w as usize;
                if !self.visited[w] && self.mark[w] != e {
                    self.mark[w] = e;
                    self.queue.push(w);
                }
            }
        }
        if self.queue.len() != remaining {
            return false;
        }
        // Backward reach to the hub.
        self.epoch += 1;
        let e = self.epoch;
        self.queue.clear();
        for &p in &self.preds[0] {
            let p = p as usize;
            if !self.visited[p] && self.mark[p] != e {
                self.mark[p] = e;
                self.queue.push(p);
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            for &p in &self.preds[u] {
                let p = p as usize;
                if !self.visited[p] && self.mark[p] != e {
                    self.mark[p] = e;
                    self.queue.push(p);
                }
            }
        }
        self.queue.len() == remaining
    }
}
