//! Random instances shared by the integration tests.
#![allow(dead_code)]

use graphon_ham::rational::ratio;
use graphon_ham::sampling::SampledDigraph;
use graphon_ham::skeleton::{enumerate_cycles, is_strongly_connected, SkeletonGraph};
use graphon_ham::{Partition, Rational, StepGraphon};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m − 1` distinct interior cuts on the grid `k/64`.
pub fn random_partition(rng: &mut ChaCha8Rng, m: usize) -> Partition {
    let mut cuts: Vec<i64> = (1..64).collect();
    cuts.shuffle(rng);
    let mut cuts = cuts[..m - 1].to_vec();
    cuts.sort_unstable();
    let mut points = vec![ratio(0, 1)];
    points.extend(cuts.iter().map(|&k| ratio(k, 64)));
    points.push(ratio(1, 1));
    Partition::new(points).unwrap()
}

/// Probability `k/8`, `k ∈ 1..=8`.
pub fn random_value(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(1..=8), 8)
}

/// A nonzero step-graphon on 1..=`max_blocks` blocks; each block pair is in
/// the support with probability `density`.
pub fn random_graphon(rng: &mut ChaCha8Rng, max_blocks: usize, density: f64) -> StepGraphon {
    loop {
        let m = rng.gen_range(1..=max_blocks);
        let partition = random_partition(rng, m);
        let values: Vec<Vec<Rational>> = (0..m)
            .map(|_| {
                (0..m)
                    .map(|_| if rng.gen_bool(density) { random_value(rng) } else { ratio(0, 1) })
                    .collect()
            })
            .collect();
        let w = StepGraphon::new(partition, values).unwrap();
        if !w.is_zero() {
            return w;
        }
    }
}

/// A random graphon with symmetric support (values may differ across the
/// diagonal).
pub fn random_symmetric_support_graphon(rng: &mut ChaCha8Rng, max_blocks: usize, density: f64) -> StepGraphon {
    loop {
        let m = rng.gen_range(1..=max_blocks);
        let partition = random_partition(rng, m);
        let mut values = vec![vec![ratio(0, 1); m]; m];
        for i in 0..m {
            for j in i..m {
                if rng.gen_bool(density) {
                    values[i][j] = random_value(rng);
                    values[j][i] = random_value(rng);
                }
            }
        }
        let w = StepGraphon::new(partition, values).unwrap();
        if !w.is_zero() {
            return w;
        }
    }
}

/// A strongly connected loop-free skeleton on 2..=`max_nodes` nodes with at
/// most `max_cycles` cycles: a random spanning cycle plus random chords.
pub fn random_strong_skeleton(rng: &mut ChaCha8Rng, max_nodes: usize, max_cycles: usize) -> SkeletonGraph {
    loop {
        let m = rng.gen_range(2..=max_nodes);
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        let mut edges: Vec<(usize, usize)> = (0..m).map(|k| (order[k], order[(k + 1) % m])).collect();
        let chord_p = rng.gen_range(0.0..0.5);
        for a in 0..m {
            for b in 0..m {
                if a != b && rng.gen_bool(chord_p) {
                    edges.push((a, b));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let s = SkeletonGraph::new(m, &edges).unwrap();
        assert!(is_strongly_connected(&s));
        if let Ok(c) = enumerate_cycles(&s, max_cycles) {
            if !c.is_empty() {
                return s;
            }
        }
    }
}

/// Digraph on 1..=`max_n` nodes with a random arc density.
pub fn random_digraph(rng: &mut ChaCha8Rng, max_n: usize) -> SampledDigraph {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.05..0.95);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b)
        .filter(|_| rng.gen_bool(p))
        .collect();
    SampledDigraph::from_edges(1, vec![0; n], &edges).unwrap()
}

/// A random interior point on the grid `k/256` that is not a cut yet.
pub fn random_new_cut(rng: &mut ChaCha8Rng, w: &StepGraphon) -> Rational {
    loop {
        let p = ratio(rng.gen_range(1..256), 256);
        if !w.partition().points().contains(&p) {
            return p;
        }
    }
}
