//! Complete S-partite graphs and explicit witnesses on them.

use super::ear::ear_decomposition;
use super::flow::{integer_flow, peel_cycles, x0_certificate};
use super::{HamWitness, WitnessKind};
use crate::error::{Error, Result};
use crate::sampling::SampledDigraph;
use crate::skeleton::{cycle_edges, enumerate_cycles, is_strongly_connected, SkeletonGraph, DEFAULT_CYCLE_CAP};

fn counts(s: &SkeletonGraph, y: &[i64]) -> Result<Vec<usize>> {
    if y.len() != s.node_count() {
        return Err(Error::Dimension(format!(
            "y has {} entries for {} skeleton nodes",
            y.len(),
            s.node_count()
        )));
    }
    y.iter()
        .map(|&v| usize::try_from(v).map_err(|_| Error::InvalidArgument(format!("negative entry {v} in y"))))
        .collect()
}

/// First node of every block in `K_y`: block `i` holds nodes
/// `offsets[i] .. offsets[i] + y_i`.
pub fn block_offsets(y: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(y.len());
    let mut acc = 0;
    for &c in y {
        out.push(acc);
        acc += c;
    }
    out
}

/// `K_y`: `y_i` nodes in block `i`, numbered block by block, and an arc
/// between two distinct nodes iff their blocks are joined in `s`.
pub fn build_complete_partite(s: &SkeletonGraph, y: &[i64]) -> Result<SampledDigraph> {
    let y = counts(s, y)?;
    let block_of: Vec<usize> = y.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i, c)).collect();
    let n = block_of.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && s.has_edge(block_of[a], block_of[b]) {
                edges.push((a, b));
            }
        }
    }
    SampledDigraph::from_edges(s.node_count(), block_of, &edges)
}

/// Hands out unused nodes of `K_y` block by block.
struct Allocator {
    next: Vec<usize>,
    end: Vec<usize>,
}

impl Allocator {
    fn new(y: &[usize]) -> Self {
        let next = block_offsets(y);
        let end = next.iter().zip(y).map(|(o, c)| o + c).collect();
        Allocator { next, end }
    }

    fn take(&mut self, block: usize) -> usize {
        let v = self.next[block];
        assert!(v < self.end[block], "block {block} over-allocated");
        self.next[block] += 1;
        v
    }

    fn exhausted(&self) -> bool {
        self.next == self.end
    }

    /// Nodes for `copies` consecutive copies of `cycle`, concatenated.
    fn copies(&mut self, cycle: &[usize], copies: u64) -> Vec<usize> {
        let mut out = Vec::with_capacity(cycle.len() * copies as usize);
        for _ in 0..copies {
            for &b in cycle {
                out.push(self.take(b));
            }
        }
        out
    }
}

/// A cycle cover of `K_y` with exactly `c_j` cycles mapping onto skeleton
/// cycle `C_j`, where `c` peels an integer flow with row sums `y`.
pub fn build_ham_decomposition_ky(s: &SkeletonGraph, y: &[i64]) -> Result<HamWitness> {
    let yc = counts(s, y)?;
    if let Some(v) = (0..s.node_count()).find(|&v| s.has_self_loop(v)) {
        return Err(Error::SelfLoop { node: v });
    }
    let flow = integer_flow(s, y)?.ok_or(Error::NotInCone)?;
    let cycles = enumerate_cycles(s, DEFAULT_CYCLE_CAP)?;
    let c = peel_cycles(s, &flow, &cycles)?;
    let mut alloc = Allocator::new(&yc);
    let mut out = Vec::new();
    for (cycle, &cj) in cycles.cycles().iter().zip(&c) {
        for _ in 0..cj {
            out.push(alloc.copies(cycle, 1));
        }
    }
    debug_assert!(alloc.exhausted());
    Ok(HamWitness {
        kind: WitnessKind::Decomposition,
        cycles: out,
    })
}

/// A Hamiltonian cycle of `K_y` for `y` in `X_0`.
///
/// Follows an ear decomposition `S_0 ⊂ S_1 ⊂ … ⊂ S_T = S`. Every skeleton
/// cycle first appears at some level; at level 0 that is only the base cycle,
/// whose `c` copies are chained into one cycle. At level `t` the new cycles
/// all pass through the ear's first node `u`. Each new cycle `C_j` becomes a
/// chain of its `c_j` copies starting in block `u`, and the chains are
/// spliced into the running cycle right before one of its block-`u` nodes.
/// Every junction is an arc, since it repeats the arc that entered a
/// block-`u` node.
pub fn build_ham_cycle_ky(s: &SkeletonGraph, y: &[i64]) -> Result<HamWitness> {
    let yc = counts(s, y)?;
    if let Some(v) = (0..s.node_count()).find(|&v| s.has_self_loop(v)) {
        return Err(Error::SelfLoop { node: v });
    }
    if !is_strongly_connected(s) {
        return Err(Error::NotStronglyConnected);
    }
    let cycles = enumerate_cycles(s, DEFAULT_CYCLE_CAP)?;
    let c = x0_certificate(s, y, &cycles)?.ok_or(Error::NotInX0)?;
    let ears = ear_decomposition(s)?;
    let m = s.node_count();

    // Level at which every edge appears.
    let mut edge_level = vec![vec![usize::MAX; m]; m];
    for (a, b) in cycle_edges(&ears.base_cycle) {
        edge_level[a][b] = 0;
    }
    for (t, ear) in ears.ears.iter().enumerate() {
        for w in ear.windows(2) {
            edge_level[w[0]][w[1]] = t + 1;
        }
    }
    let mut by_level: Vec<Vec<usize>> = vec![Vec::new(); ears.ears.len() + 1];
    for (j, cycle) in cycles.cycles().iter().enumerate() {
        let level = cycle_edges(cycle)
            .iter()
            .map(|&(a, b)| edge_level[a][b])
            .max()
            .expect("cycles have edges");
        by_level[level].push(j);
    }

    let mut alloc = Allocator::new(&yc);
    let rotate_to = |cycle: &[usize], block: usize| -> Vec<usize> {
        let k = cycle.iter().position(|&b| b == block).expect("cycle passes through the block");
        cycle[k..].iter().chain(&cycle[..k]).copied().collect()
    };

    let mut h: Vec<usize> = Vec::new();
    for &j in &by_level[0] {
        h.extend(alloc.copies(&cycles.cycles()[j], c[j]));
    }
    for (t, ear) in ears.ears.iter().enumerate() {
        let new = &by_level[t + 1];
        if new.is_empty() {
            continue;
        }
        let u = ear[0];
        let p = h
            .iter()
            .position(|&v| block_of(&yc, v) == u)
            .expect("the built part uses every node of the previous level");
        h.rotate_left(p);
        for &j in new {
            let cycle = rotate_to(&cycles.cycles()[j], u);
            h.extend(alloc.copies(&cycle, c[j]));
        }
    }
    debug_assert!(alloc.exhausted());
    Ok(HamWitness {
        kind: WitnessKind::Cycle,
        cycles: vec![h],
    })
}

/// Joins the cycles of a decomposition of `K_y` into one cycle.
///
/// If disjoint cycles pass through nodes `x` and `x'` of the same block,
/// swapping the predecessors of `x` and `x'` turns them into a single cycle;
/// both new arcs enter the same block as before, so they exist in `K_y`.
/// Gives `None` when the cycles cannot all be linked through shared blocks.
pub fn merge_into_cycle(h: &HamWitness, block_of: &[usize]) -> Option<HamWitness> {
    let n = block_of.len();
    let mut succ = vec![usize::MAX; n];
    let mut pred = vec![usize::MAX; n];
    let mut comp = vec![usize::MAX; n];
    for (k, cycle) in h.cycles.iter().enumerate() {
        for (i, &v) in cycle.iter().enumerate() {
            let w = cycle[(i + 1) % cycle.len()];
            succ[v] = w;
            pred[w] = v;
            comp[v] = k;
        }
    }
    if n == 0 || comp.contains(&usize::MAX) {
        return None;
    }
    let mut parent: Vec<usize> = (0..h.cycles.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let blocks = block_of.iter().max().map_or(0, |&b| b + 1);
    let mut anchor = vec![usize::MAX; blocks];
    let mut joined = 1;
    for x in 0..n {
        let u = block_of[x];
        let x0 = anchor[u];
        if x0 == usize::MAX {
            anchor[u] = x;
            continue;
        }
        let (r0, r1) = (find(&mut parent, comp[x0]), find(&mut parent, comp[x]));
        if r0 == r1 {
            continue;
        }
        let (a, b) = (pred[x0], pred[x]);
        succ[a] = x;
        pred[x] = a;
        succ[b] = x0;
        pred[x0] = b;
        parent[r1] = r0;
        joined += 1;
    }
    if joined != h.cycles.len() {
        return None;
    }
    let mut cycle = vec![0];
    while succ[*cycle.last().expect("nonempty")] != 0 {
        cycle.push(succ[*cycle.last().expect("nonempty")]);
    }
    Some(HamWitness {
        kind: WitnessKind::Cycle,
        cycles: vec![cycle],
    })
}

fn block_of(y: &[usize], v: usize) -> usize {
    let mut acc = 0;
    for (i, &c) in y.iter().enumerate() {
        acc += c;
        if v < acc {
            return i;
        }
    }
    unreachable!("node {v} outside K_y")
}
