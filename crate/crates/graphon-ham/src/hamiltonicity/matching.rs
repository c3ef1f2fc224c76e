//! Cycle covers as perfect matchings.
//!
//! A spanning set of node-disjoint cycles in a loop-free digraph is the same
//! thing as a successor permutation `σ` with `v → σ(v)` an arc for every
//! `v`. That is a perfect matching between out-copies and in-copies of the
//! nodes, found here by Hopcroft–Karp.

use std::collections::VecDeque;

use super::{HamWitness, WitnessKind};
use crate::error::{Error, Result};
use crate::sampling::SampledDigraph;

const NIL: u32 = u32::MAX;

pub fn has_ham_decomposition(g: &SampledDigraph) -> Option<HamWitness> {
    let n = g.node_count();
    // Cheap rejection: a node without in- or out-arcs has no partner.
    if (0..n).any(|v| g.out_neighbors(v).is_empty()) || g.in_degrees().contains(&0) {
        return None;
    }
    let succ = hopcroft_karp(g)?;
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cycle.push(v);
            v = succ[v] as usize;
        }
        cycles.push(cycle);
    }
    Some(HamWitness {
        kind: WitnessKind::Decomposition,
        cycles,
    })
}

/// Perfect matching of out-copies to in-copies; `succ[v]` is the in-copy
/// matched to `v`.
fn hopcroft_karp(g: &SampledDigraph) -> Option<Vec<u32>> {
    let n = g.node_count();
    let mut match_l = vec![NIL; n];
    let mut match_r = vec![NIL; n];
    // Greedy start.
    let mut size = 0;
    for v in 0..n {
        if let Some(&w) = g.out_neighbors(v).iter().find(|&&w| match_r[w as usize] == NIL) {
            match_l[v] = w;
            match_r[w as usize] = v as u32;
            size += 1;
        }
    }
    let mut dist = vec![u32::MAX; n];
    let mut cursor = vec![0usize; n];
    let mut queue = VecDeque::with_capacity(n);
    while size < n {
        // Layer the free left nodes and their alternating paths.
        queue.clear();
        for v in 0..n {
            if match_l[v] == NIL {
                dist[v] = 0;
                queue.push_back(v);
            } else {
                dist[v] = u32::MAX;
            }
        }
        let mut reachable_free = false;
        while let Some(v) = queue.pop_front() {
            for &w in g.out_neighbors(v) {
                let u = match_r[w as usize];
                if u == NIL {
                    reachable_free = true;
                } else if dist[u as usize] == u32::MAX {
                    dist[u as usize] = dist[v] + 1;
                    queue.push_back(u as usize);
                }
            }
        }
        if !reachable_free {
            return None;
        }
        cursor.iter_mut().for_each(|c| *c = 0);
        let mut grown = 0;
        for v in 0..n {
            if match_l[v] == NIL && augment(g, v, &mut match_l, &mut match_r, &mut dist, &mut cursor) {
                grown += 1;
            }
        }
        if grown == 0 {
            return None;
        }
        size += grown;
    }
    Some(match_l)
}

/// Depth-first search along the layering, with an explicit stack so large
/// graphs do not exhaust the thread stack.
fn augment(
    g: &SampledDigraph,
    root: usize,
    match_l: &mut [u32],
    match_r: &mut [u32],
    dist: &mut [u32],
    cursor: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&v) = stack.last() {
        let adj = g.out_neighbors(v);
        let mut advanced = false;
        while cursor[v] < adj.len() {
            let w = adj[cursor[v]];
            cursor[v] += 1;
            let u = match_r[w as usize];
            if u == NIL {
                // Flip the alternating path recorded on the stack.
                let mut target = w;
                while let Some(x) = stack.pop() {
                    let prev = match_l[x];
                    match_l[x] = target;
                    match_r[target as usize] = x as u32;
                    target = prev;
                }
                return true;
            }
            if dist[u as usize] == dist[v] + 1 {
                stack.push(u as usize);
                advanced = true;
                break;
            }
        }
        if !advanced {
            dist[v] = u32::MAX;
            stack.pop();
        }
    }
    false
}

pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Exhaustive search for a fixed-point-free successor permutation. Test
/// oracle only.
pub fn brute_force_ham_decomposition(g: &SampledDigraph) -> Result<bool> {
    let n = g.node_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "brute force is limited to {BRUTE_FORCE_LIMIT} nodes, got {n}"
        )));
    }
    fn assign(g: &SampledDigraph, v: usize, taken: &mut [bool]) -> bool {
        if v == g.node_count() {
            return true;
        }
        for w in 0..g.node_count() {
            if w != v && !taken[w] && g.has_edge(v, w) {
                taken[w] = true;
                if assign(g, v + 1, taken) {
                    return true;
                }
                taken[w] = false;
            }
        }
        false
    }
    Ok(assign(g, 0, &mut vec![false; n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonicity::verify_witness;

    #[test]
    fn small_cases() {
        let c2 = SampledDigraph::from_edges(1, vec![0, 0], &[(0, 1), (1, 0)]).unwrap();
        let w = has_ham_decomposition(&c2).unwrap();
        assert_eq!(w.cycles, vec![vec![0, 1]]);
        assert!(brute_force_ham_decomposition(&c2).unwrap());
        let path = SampledDigraph::from_edges(1, vec![0; 3], &[(0, 1), (1, 2)]).unwrap();
        assert!(has_ham_decomposition(&path).is_none());
        assert!(!brute_force_ham_decomposition(&path).unwrap());
        let empty = SampledDigraph::from_edges(1, vec![0; 3], &[]).unwrap();
        assert!(!brute_force_ham_decomposition(&empty).unwrap());
        let none = SampledDigraph::from_edges(1, vec![], &[]).unwrap();
        assert_eq!(has_ham_decomposition(&none).unwrap().cycles, Vec::<Vec<usize>>::new());
        let big = SampledDigraph::from_edges(1, vec![0; 11], &[]).unwrap();
        assert!(brute_force_ham_decomposition(&big).is_err());
    }

    #[test]
    fn needs_augmenting_paths() {
        // Greedy matches 0→1 first; the only cover is 0→2→1→0.
        let g = SampledDigraph::from_edges(1, vec![0; 3], &[(0, 1), (0, 2), (2, 1), (1, 0)]).unwrap();
        let w = has_ham_decomposition(&g).unwrap();
        assert!(verify_witness(&g, &w));
        assert_eq!(w.cycles, vec![vec![0, 2, 1]]);
    }
}
