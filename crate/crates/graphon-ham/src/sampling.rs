//! Seeded samplers for step-graphons.
//!
//! # Streams
//!
//! Trial `t` of master seed `s` uses a ChaCha8 generator whose 256-bit key
//! is four successive SplitMix64 outputs started from `s`, on stream number
//! `t`. Every draw is one `next_u64` value `U`, read as the rational
//! `U / 2^64`.
//!
//! # Draw order
//!
//! One draw per node, in index order, picks its block: node `v` lands in
//! block `i` iff `σ_i ≤ U/2^64 < σ_{i+1}`. Then ordered pairs `(a, b)` (or
//! unordered pairs `a < b` for undirected sampling) are scanned in
//! lexicographic order; a pair whose probability is strictly between 0 and 1
//! consumes one draw and gets its edge iff `U/2^64 < p`. Pairs with
//! probability 0 or 1 consume nothing.
//!
//! Only the block of each node is kept; the underlying uniform coordinate
//! is discarded once the block is known.

use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::graphon::StepGraphon;
use crate::rational::{threshold_2_64, Rational};
use crate::skeleton::SkeletonGraph;

pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes two words into one; used to derive per-`n` seeds.
pub fn mix(a: u64, b: u64) -> u64 {
    let mut s = a;
    let h = splitmix64(&mut s);
    let mut t = h ^ b;
    splitmix64(&mut t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngSpec {
    pub master_seed: u64,
    pub trial_index: u64,
}

impl RngSpec {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        RngSpec {
            master_seed,
            trial_index,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut state = self.master_seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(self.trial_index);
        rng
    }
}

/// Simple directed graph on `0..n` with a block label per node. Out-lists
/// are stored sorted in one flat array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledDigraph {
    n: usize,
    blocks: usize,
    block_of: Vec<usize>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl SampledDigraph {
    /// Builds a digraph from an edge list, sorting and removing duplicates.
    pub fn from_edges(blocks: usize, block_of: Vec<usize>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = block_of.len();
        if let Some(&b) = block_of.iter().find(|&&b| b >= blocks) {
            return Err(Error::InvalidArgument(format!("block label {b} outside {blocks} blocks")));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidArgument("too many nodes".into()));
        }
        let mut sorted = edges.to_vec();
        for &(a, b) in &sorted {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!("edge ({a}, {b}) outside {n} nodes")));
            }
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at node {a}")));
            }
        }
        sorted.sort_unstable();
        sorted.dedup();
        let mut offsets = vec![0usize; n + 1];
        for &(a, _) in &sorted {
            offsets[a + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let targets = sorted.iter().map(|&(_, b)| b as u32).collect();
        Ok(SampledDigraph {
            n,
            blocks,
            block_of,
            offsets,
            targets,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.out_neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.out_neighbors(a).iter().map(move |&b| (a, b as usize)))
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &b in &self.targets {
            d[b as usize] += 1;
        }
        d
    }

    /// `y(G)`: number of nodes in each block.
    pub fn block_counts(&self) -> Vec<usize> {
        let mut y = vec![0; self.blocks];
        for &b in &self.block_of {
            y[b] += 1;
        }
        y
    }

    /// Every edge joins blocks that are adjacent in `s`.
    pub fn respects_skeleton(&self, s: &SkeletonGraph) -> bool {
        s.node_count() == self.blocks && self.edges().all(|(a, b)| s.has_edge(self.block_of[a], self.block_of[b]))
    }

    /// Text export: a header with `n`, the block count and the block label
    /// of every node, then one `a b` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\nblocks {}\nblock_of", self.n, self.blocks);
        for b in &self.block_of {
            out.push(' ');
            out.push_str(&b.to_string());
        }
        out.push('\n');
        for (a, b) in self.edges() {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

/// Reads the format written by [`SampledDigraph::to_edge_list`].
pub fn parse_edge_list(text: &str) -> Result<SampledDigraph> {
    let perr = |msg: String| Error::Parse(msg);
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let mut header = |key: &str| -> Result<Vec<usize>> {
        let line = lines.next().ok_or_else(|| perr(format!("missing {key:?} line")))?;
        let mut parts = line.split_whitespace();
        if parts.next() != Some(key) {
            return Err(perr(format!("expected {key:?} line, found {line:?}")));
        }
        parts
            .map(|p| p.parse::<usize>().map_err(|_| perr(format!("bad number {p:?} in {key:?} line"))))
            .collect()
    };
    let n = match header("n")?.as_slice() {
        [n] => *n,
        _ => return Err(perr("the n line takes one number".into())),
    };
    let blocks = match header("blocks")?.as_slice() {
        [b] => *b,
        _ => return Err(perr("the blocks line takes one number".into())),
    };
    let block_of = header("block_of")?;
    if block_of.len() != n {
        return Err(perr(format!("block_of has {} labels for {n} nodes", block_of.len())));
    }
    let mut edges = Vec::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(perr(format!("edge line needs two numbers: {line:?}")));
        };
        let a = a.parse::<usize>().map_err(|_| perr(format!("bad node {a:?}")))?;
        let b = b.parse::<usize>().map_err(|_| perr(format!("bad node {b:?}")))?;
        edges.push((a, b));
    }
    SampledDigraph::from_edges(blocks, block_of, &edges).map_err(|e| perr(e.to_string()))
}

/// Simple undirected graph on `0..n` with block labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledGraph {
    blocks: usize,
    block_of: Vec<usize>,
    adj: Vec<Vec<u32>>,
}

impl SampledGraph {
    pub fn from_edges(blocks: usize, block_of: Vec<usize>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = block_of.len();
        if let Some(&b) = block_of.iter().find(|&&b| b >= blocks) {
            return Err(Error::InvalidArgument(format!("block label {b} outside {blocks} blocks")));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidArgument(format!("bad undirected edge ({a}, {b})")));
            }
            adj[a].push(b as u32);
            adj[b].push(a as u32);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        Ok(SampledGraph { blocks, block_of, adj })
    }

    pub fn node_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, l)| l.iter().map(move |&b| (a, b as usize)).filter(|&(a, b)| a < b))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn block_counts(&self) -> Vec<usize> {
        let mut y = vec![0; self.blocks];
        for &b in &self.block_of {
            y[b] += 1;
        }
        y
    }
}

/// Precomputed integer thresholds for one graphon, reused across trials.
#[derive(Clone, Debug)]
pub struct Sampler {
    m: usize,
    /// `ceil(σ_i · 2^64)` for the interior points `σ_1 … σ_{m−1}`.
    cuts: Vec<u128>,
    /// Row-major `ceil(p_ij · 2^64)`.
    edge: Vec<u128>,
    symmetric: bool,
}

const ALWAYS: u128 = 1 << 64;

impl Sampler {
    pub fn new(w: &StepGraphon) -> Self {
        let m = w.blocks();
        let points = w.partition().points();
        let cuts = points[1..m].iter().map(threshold_2_64).collect();
        let mut edge = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                edge.push(threshold_2_64(w.value(i, j)));
            }
        }
        Sampler {
            m,
            cuts,
            edge,
            symmetric: w.is_symmetric(),
        }
    }

    fn blocks_for(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        (0..n)
            .map(|_| {
                let u = rng.next_u64() as u128;
                self.cuts.partition_point(|&c| c <= u)
            })
            .collect()
    }

    #[inline]
    fn bernoulli(threshold: u128, rng: &mut ChaCha8Rng) -> bool {
        match threshold {
            0 => false,
            ALWAYS => true,
            t => (rng.next_u64() as u128) < t,
        }
    }

    pub fn sample_directed(&self, n: usize, spec: &RngSpec) -> SampledDigraph {
        let mut rng = spec.rng();
        let block_of = self.blocks_for(n, &mut rng);
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for a in 0..n {
            let row = &self.edge[block_of[a] * self.m..(block_of[a] + 1) * self.m];
            for (b, &bb) in block_of.iter().enumerate() {
                if a != b && Self::bernoulli(row[bb], &mut rng) {
                    targets.push(b as u32);
                }
            }
            offsets.push(targets.len());
        }
        SampledDigraph {
            n,
            blocks: self.m,
            block_of,
            offsets,
            targets,
        }
    }

    pub fn sample_undirected(&self, n: usize, spec: &RngSpec) -> Result<SampledGraph> {
        if !self.symmetric {
            return Err(Error::NotSymmetric);
        }
        let mut rng = spec.rng();
        let block_of = self.blocks_for(n, &mut rng);
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for a in 0..n {
            let row = &self.edge[block_of[a] * self.m..(block_of[a] + 1) * self.m];
            for b in a + 1..n {
                if Self::bernoulli(row[block_of[b]], &mut rng) {
                    adj[a].push(b as u32);
                    adj[b].push(a as u32);
                }
            }
        }
        Ok(SampledGraph {
            blocks: self.m,
            block_of,
            adj,
        })
    }
}

/// Block labels from uniform draws, then an independent
/// directed edge for every ordered pair of distinct nodes.
pub fn sample_directed(w: &StepGraphon, n: usize, spec: &RngSpec) -> SampledDigraph {
    Sampler::new(w).sample_directed(n, spec)
}

/// Block labels, then one independent edge per unordered pair, on a
/// symmetric graphon.
pub fn sample_undirected(ws: &StepGraphon, n: usize, spec: &RngSpec) -> Result<SampledGraph> {
    Sampler::new(ws).sample_undirected(n, spec)
}

/// Every undirected edge becomes the arc (or arcs) the skeleton
/// allows between its blocks.
pub fn orient_symmetric(g: &SampledGraph, s: &SkeletonGraph) -> Result<SampledDigraph> {
    if s.node_count() != g.blocks {
        return Err(Error::Dimension(format!(
            "graph has {} blocks but the skeleton has {} nodes",
            g.blocks,
            s.node_count()
        )));
    }
    let mut arcs = Vec::with_capacity(2 * g.edge_count());
    for (a, b) in g.edges() {
        let (i, j) = (g.block_of[a], g.block_of[b]);
        let forward = s.has_edge(i, j);
        let backward = s.has_edge(j, i);
        if !forward && !backward {
            return Err(Error::NotPartite(format!(
                "edge ({a}, {b}) joins blocks {i} and {j}, which the skeleton does not connect"
            )));
        }
        if forward {
            arcs.push((a, b));
        }
        if backward {
            arcs.push((b, a));
        }
    }
    SampledDigraph::from_edges(g.blocks, g.block_of.clone(), &arcs)
}

/// Drops every arc between blocks joined both ways in the skeleton
/// whose reverse arc is absent.
pub fn trim_digraph(g: &SampledDigraph, s: &SkeletonGraph) -> SampledDigraph {
    let keep: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(a, b)| {
            let (i, j) = (g.block_of[a], g.block_of[b]);
            let both = s.has_edge(i, j) && s.has_edge(j, i);
            !both || g.has_edge(b, a)
        })
        .collect();
    SampledDigraph::from_edges(g.blocks, g.block_of.clone(), &keep).expect("subgraph of a valid digraph")
}

/// `x(G) = y(G) / n`.
pub fn empirical_concentration(g: &SampledDigraph) -> Result<Vec<Rational>> {
    if g.n == 0 {
        return Err(Error::InvalidArgument("empty graph has no concentration vector".into()));
    }
    let n = g.n as i64;
    Ok(g.block_counts()
        .iter()
        .map(|&c| Rational::new((c as i64).into(), n.into()))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDegreeReport {
    pub a: usize,
    pub b: usize,
    /// `min_{v ∈ A} e(v, B) / |B|`.
    pub min_ratio_a: Rational,
    /// `min_{v ∈ B} e(v, A) / |A|`.
    pub min_ratio_b: Rational,
    pub passes: bool,
}

/// Minimum cross-degree ratios for every pair of distinct adjacent blocks of
/// the symmetric skeleton `s`, compared with `delta`. This is only the degree
/// half of super-regularity; the subset condition is not checked.
pub fn degree_regularity_report(
    g: &SampledGraph,
    s: &SkeletonGraph,
    delta: &Rational,
) -> Result<Vec<PairDegreeReport>> {
    let m = g.blocks;
    if s.node_count() != m {
        return Err(Error::Dimension(format!("graph has {m} blocks, skeleton {}", s.node_count())));
    }
    let sizes = g.block_counts();
    // cross[v][j]: neighbours of v in block j.
    let cross: Vec<Vec<usize>> = (0..g.node_count())
        .map(|v| {
            let mut c = vec![0usize; m];
            for &u in g.neighbors(v) {
                c[g.block_of[u as usize]] += 1;
            }
            c
        })
        .collect();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !(s.has_edge(a, b) || s.has_edge(b, a)) {
                continue;
            }
            for blk in [a, b] {
                if sizes[blk] == 0 {
                    return Err(Error::EmptyBlock { block: blk });
                }
            }
            let min_ratio = |from: usize, to: usize| {
                let best = (0..g.node_count())
                    .filter(|&v| g.block_of[v] == from)
                    .map(|v| cross[v][to])
                    .min()
                    .unwrap_or(0);
                Rational::new((best as i64).into(), (sizes[to] as i64).into())
            };
            let ra = min_ratio(a, b);
            let rb = min_ratio(b, a);
            let passes = ra > *delta && rb > *delta;
            out.push(PairDegreeReport {
                a,
                b,
                min_ratio_a: ra,
                min_ratio_b: rb,
                passes,
            });
        }
    }
    Ok(out)
}

/// Smallest positive value of a graphon, halved: the default degree
/// threshold for the report above.
pub fn default_delta(ws: &StepGraphon) -> Rational {
    let min = ws
        .values()
        .iter()
        .flatten()
        .filter(|v| !v.is_zero())
        .min()
        .cloned()
        .unwrap_or_else(Rational::zero);
    min / Rational::from_integer(2.into())
}
