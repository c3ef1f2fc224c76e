//! Hamiltonian decompositions and cycles: deciding them on sampled
//! digraphs and constructing them on complete S-partite graphs.

mod ear;
mod flow;
mod matching;
mod partite;
mod search;

use serde::Serialize;

use crate::sampling::SampledDigraph;
use crate::skeleton::{canonical_rotation, CycleSet, SkeletonGraph};

pub use ear::{ear_decomposition, EarDecomposition};
pub use flow::{in_x0, integer_flow, peel_cycles, x0_certificate};
pub use matching::{brute_force_ham_decomposition, has_ham_decomposition, BRUTE_FORCE_LIMIT};
pub use partite::{block_offsets, build_complete_partite, build_ham_cycle_ky, build_ham_decomposition_ky, merge_into_cycle};
pub use search::{find_ham_cycle, HamCycleSearch, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Decomposition,
    Cycle,
}

/// A spanning cycle cover, or a single Hamiltonian cycle. Each cycle lists
/// its nodes in order; the closing arc back to the first node is implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HamWitness {
    pub kind: WitnessKind,
    pub cycles: Vec<Vec<usize>>,
}

impl HamWitness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("witness serializes")
    }
}

/// Nonnegative integer `m × m` matrix on skeleton pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowMatrix {
    entries: Vec<Vec<u64>>,
}

impl FlowMatrix {
    pub fn new(entries: Vec<Vec<u64>>) -> crate::Result<Self> {
        let m = entries.len();
        if entries.iter().any(|r| r.len() != m) {
            return Err(crate::Error::Dimension("flow matrix must be square".into()));
        }
        Ok(FlowMatrix { entries })
    }

    pub fn zeros(m: usize) -> Self {
        FlowMatrix {
            entries: vec![vec![0; m]; m],
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// `A 𝟙`.
    pub fn row_sums(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    /// `Aᵀ 𝟙`.
    pub fn col_sums(&self) -> Vec<u64> {
        let m = self.size();
        (0..m).map(|j| (0..m).map(|i| self.entries[i][j]).sum()).collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.row_sums() == self.col_sums()
    }

    pub fn supported_on(&self, s: &SkeletonGraph) -> bool {
        let m = self.size();
        m == s.node_count() && (0..m).all(|i| (0..m).all(|j| self.entries[i][j] == 0 || s.has_edge(i, j)))
    }

    /// Adjacency matrix `A_j` of one cycle.
    pub fn of_cycle(m: usize, cycle: &[usize]) -> Self {
        let mut f = FlowMatrix::zeros(m);
        for (a, b) in crate::skeleton::cycle_edges(cycle) {
            f.entries[a][b] += 1;
        }
        f
    }

    /// `Σ_j c_j A_j`.
    pub fn from_multiplicities(m: usize, cycles: &CycleSet, c: &[u64]) -> Self {
        let mut f = FlowMatrix::zeros(m);
        for (j, &cj) in c.iter().enumerate() {
            for (a, b) in cycles.cycle_edges(j) {
                f.entries[a][b] += cj;
            }
        }
        f
    }
}

/// True iff `h` is a valid witness in `g`: node-disjoint cycles of length at
/// least 2 covering every node, using only arcs of `g`, and a single cycle
/// when `h.kind` is `Cycle`.
pub fn verify_witness(g: &SampledDigraph, h: &HamWitness) -> bool {
    let n = g.node_count();
    if h.kind == WitnessKind::Cycle && h.cycles.len() != 1 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut covered = 0;
    for cycle in &h.cycles {
        if cycle.len() < 2 {
            return false;
        }
        for (k, &v) in cycle.iter().enumerate() {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
            covered += 1;
            let next = cycle[(k + 1) % cycle.len()];
            if next >= n || !g.has_edge(v, next) {
                return false;
            }
        }
    }
    covered == n
}

/// Skeleton image of every witness cycle, counted against a cycle set.
/// Returns `None` if some image is not a simple skeleton cycle.
pub fn pi_image_multiplicities(h: &HamWitness, block_of: &[usize], cycles: &CycleSet) -> Option<Vec<u64>> {
    let mut c = vec![0u64; cycles.len()];
    for cycle in &h.cycles {
        let image: Vec<usize> = cycle.iter().map(|&v| block_of[v]).collect();
        let j = cycles.position(&canonical_rotation(&image))?;
        c[j] += 1;
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> SampledDigraph {
        SampledDigraph::from_edges(1, vec![0, 0], &[(0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn verifier_examples() {
        let g = two_cycle();
        let ok = HamWitness {
            kind: WitnessKind::Cycle,
            cycles: vec![vec![0, 1]],
        };
        assert!(verify_witness(&g, &ok));
        let missing = SampledDigraph::from_edges(1, vec![0, 0, 0], &[(0, 1), (1, 0)]).unwrap();
        assert!(!verify_witness(&missing, &ok));
        let non_edge = HamWitness {
            kind: WitnessKind::Cycle,
            cycles: vec![vec![0, 1, 2]],
        };
        let path = SampledDigraph::from_edges(1, vec![0, 0, 0], &[(0, 1), (1, 2)]).unwrap();
        assert!(!verify_witness(&path, &non_edge));
        let repeated = HamWitness {
            kind: WitnessKind::Decomposition,
            cycles: vec![vec![0, 1], vec![1, 0]],
        };
        assert!(!verify_witness(&g, &repeated));
        let lone = HamWitness {
            kind: WitnessKind::Decomposition,
            cycles: vec![vec![0], vec![1]],
        };
        assert!(!verify_witness(&g, &lone));
        let two = HamWitness {
            kind: WitnessKind::Cycle,
            cycles: vec![vec![0, 1], vec![2, 3]],
        };
        let g4 = SampledDigraph::from_edges(1, vec![0; 4], &[(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        assert!(!verify_witness(&g4, &two));
        assert!(verify_witness(
            &g4,
            &HamWitness {
                kind: WitnessKind::Decomposition,
                cycles: two.cycles.clone()
            }
        ));
    }

    #[test]
    fn witness_json() {
        let w = HamWitness {
            kind: WitnessKind::Cycle,
            cycles: vec![vec![0, 1]],
        };
        assert_eq!(w.to_json().to_string(), r#"{"kind":"cycle","cycles":[[0,1]]}"#);
    }
}
