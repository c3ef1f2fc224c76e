//! Integer flows on a skeleton and their cycle decompositions.

use std::collections::VecDeque;

use super::FlowMatrix;
use crate::error::{Error, Result};
use crate::skeleton::{canonical_rotation, enumerate_cycles, incidence_matrix, CycleSet, SkeletonGraph, DEFAULT_CYCLE_CAP};

fn check_y(s: &SkeletonGraph, y: &[i64]) -> Result<Vec<u64>> {
    if y.len() != s.node_count() {
        return Err(Error::Dimension(format!(
            "y has {} entries for {} skeleton nodes",
            y.len(),
            s.node_count()
        )));
    }
    y.iter()
        .map(|&v| {
            u64::try_from(v).map_err(|_| Error::InvalidArgument(format!("negative entry {v} in y")))
        })
        .collect()
}

/// A balanced integer matrix supported on the skeleton with row sums `y`.
///
/// Transportation problem: supply `y_i` at an out-copy of every node, demand
/// `y_j` at an in-copy, uncapacitated arcs `out_i → in_j` for skeleton edges
/// `(i, j)`. Solved as a max flow (Edmonds–Karp); it saturates every supply
/// iff such a matrix exists, and the flow is integral.
pub fn integer_flow(s: &SkeletonGraph, y: &[i64]) -> Result<Option<FlowMatrix>> {
    let y = check_y(s, y)?;
    let m = s.node_count();
    let total: u64 = y.iter().sum();
    // Nodes: source 0, out-copies 1..=m, in-copies m+1..=2m, sink 2m+1.
    let mut net = Network::new(2 * m + 2);
    let (src, sink) = (0, 2 * m + 1);
    for i in 0..m {
        net.add(src, 1 + i, y[i]);
        net.add(1 + m + i, sink, y[i]);
    }
    let mut arc_of = vec![vec![None; m]; m];
    for (i, j) in s.edges() {
        arc_of[i][j] = Some(net.add(1 + i, 1 + m + j, total));
    }
    if net.max_flow(src, sink) != total {
        return Ok(None);
    }
    let entries = (0..m)
        .map(|i| (0..m).map(|j| arc_of[i][j].map_or(0, |a| net.flow(a))).collect())
        .collect();
    Ok(Some(FlowMatrix::new(entries)?))
}

struct Network {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
    original: Vec<u64>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            original: Vec::new(),
        }
    }

    /// Adds `a → b` and its residual twin; returns the forward arc id.
    fn add(&mut self, a: usize, b: usize, c: u64) -> usize {
        let id = self.to.len();
        self.head[a].push(id);
        self.to.push(b);
        self.cap.push(c);
        self.original.push(c);
        self.head[b].push(id + 1);
        self.to.push(a);
        self.cap.push(0);
        self.original.push(0);
        id
    }

    fn flow(&self, arc: usize) -> u64 {
        self.original[arc] - self.cap[arc]
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let n = self.head.len();
        let mut total = 0;
        loop {
            let mut via = vec![usize::MAX; n];
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                if v == t {
                    break;
                }
                for &a in &self.head[v] {
                    let w = self.to[a];
                    if self.cap[a] > 0 && !seen[w] {
                        seen[w] = true;
                        via[w] = a;
                        q.push_back(w);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push = u64::MAX;
            let mut v = t;
            while v != s {
                let a = via[v];
                push = push.min(self.cap[a]);
                v = self.to[a ^ 1];
            }
            let mut v = t;
            while v != s {
                let a = via[v];
                self.cap[a] -= push;
                self.cap[a ^ 1] += push;
                v = self.to[a ^ 1];
            }
            total += push;
        }
    }
}

/// Multiplicities `c` over `cycles` with `Σ c_j A_j = a`.
///
/// Repeatedly walks the support of what is left, from the smallest node with
/// outgoing flow, always along the smallest out-neighbour, until a node
/// repeats; the closed part is a cycle, and its smallest entry is
/// subtracted along it.
pub fn peel_cycles(s: &SkeletonGraph, a: &FlowMatrix, cycles: &CycleSet) -> Result<Vec<u64>> {
    let m = s.node_count();
    if a.size() != m {
        return Err(Error::Dimension(format!("flow matrix is {}x{} for {m} nodes", a.size(), a.size())));
    }
    for i in 0..m {
        for j in 0..m {
            if a.get(i, j) > 0 && !s.has_edge(i, j) {
                return Err(Error::OffSkeleton(i, j));
            }
        }
    }
    if !a.is_balanced() {
        return Err(Error::Unbalanced);
    }
    let mut left: Vec<Vec<u64>> = a.entries().to_vec();
    let mut c = vec![0u64; cycles.len()];
    while let Some(start) = (0..m).find(|&i| left[i].iter().any(|&v| v > 0)) {
        let mut pos = vec![usize::MAX; m];
        let mut walk = Vec::new();
        let mut v = start;
        while pos[v] == usize::MAX {
            pos[v] = walk.len();
            walk.push(v);
            v = (0..m)
                .find(|&j| left[v][j] > 0)
                .expect("balance gives every node with inflow some outflow");
        }
        let cycle = &walk[pos[v]..];
        let edges = crate::skeleton::cycle_edges(cycle);
        let times = edges.iter().map(|&(x, y)| left[x][y]).min().expect("cycle has an edge");
        for &(x, y) in &edges {
            left[x][y] -= times;
        }
        let j = cycles
            .position(&canonical_rotation(cycle))
            .ok_or_else(|| Error::InvalidArgument("cycle set is missing a cycle of the flow".into()))?;
        c[j] += times;
    }
    Ok(c)
}

/// Multiplicities `c` with every `c_j ≥ 1` and `Σ c_j z_j = y`, when they
/// exist: `y − Z𝟙` must be nonnegative and admit a balanced integer flow.
pub fn x0_certificate(s: &SkeletonGraph, y: &[i64], cycles: &CycleSet) -> Result<Option<Vec<u64>>> {
    let yy = check_y(s, y)?;
    if yy.iter().all(|&v| v == 0) {
        return Ok(None);
    }
    let z = incidence_matrix(s, cycles);
    let rest: Vec<i64> = y.iter().zip(z.row_sums()).map(|(&a, b)| a - b).collect();
    if rest.iter().any(|&v| v < 0) {
        return Ok(None);
    }
    let Some(flow) = integer_flow(s, &rest)? else {
        return Ok(None);
    };
    let extra = peel_cycles(s, &flow, cycles)?;
    Ok(Some(extra.iter().map(|e| e + 1).collect()))
}

/// Membership in `X_0`, taken here as "y is a combination of all cycle
/// vectors with every coefficient a positive integer".
pub fn in_x0(s: &SkeletonGraph, y: &[i64]) -> Result<bool> {
    let cycles = enumerate_cycles(s, DEFAULT_CYCLE_CAP)?;
    Ok(x0_certificate(s, y, &cycles)?.is_some())
}
