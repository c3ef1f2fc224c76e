//! Ear decompositions of strongly connected loop-free digraphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::skeleton::{cycle_edges, is_strongly_connected, SkeletonGraph};

/// A cycle and a sequence of ears. Ear `[u_1, …, u_r]` is a path (or, when
/// `u_1 = u_r`, a cycle) whose end nodes are already built and whose interior
/// nodes are new.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarDecomposition {
    pub base_cycle: Vec<usize>,
    pub ears: Vec<Vec<usize>>,
}

impl EarDecomposition {
    /// Nodes and edges after gluing every ear, checking the ear shape
    /// along the way. `None` if some ear is malformed.
    pub fn glue(&self, m: usize) -> Option<(Vec<bool>, Vec<Vec<bool>>)> {
        let mut nodes = vec![false; m];
        let mut edges = vec![vec![false; m]; m];
        for (a, b) in cycle_edges(&self.base_cycle) {
            if nodes[a] || edges[a][b] {
                return None;
            }
            nodes[a] = true;
            edges[a][b] = true;
        }
        for ear in &self.ears {
            let (&first, &last) = (ear.first()?, ear.last()?);
            if ear.len() < 2 || !nodes[first] || !nodes[last] {
                return None;
            }
            for &v in &ear[1..ear.len() - 1] {
                if nodes[v] {
                    return None;
                }
                nodes[v] = true;
            }
            for w in ear.windows(2) {
                if edges[w[0]][w[1]] {
                    return None;
                }
                edges[w[0]][w[1]] = true;
            }
        }
        Some((nodes, edges))
    }
}

/// Base cycle from the smallest-successor walk out of node 0, then ears
/// chosen greedily: the lexicographically first unused edge `(u, v)` leaving
/// a built node, extended through new nodes by a shortest path back to the
/// built part. There are exactly `|E| − |V|` ears.
pub fn ear_decomposition(s: &SkeletonGraph) -> Result<EarDecomposition> {
    let m = s.node_count();
    if let Some(v) = (0..m).find(|&v| s.has_self_loop(v)) {
        return Err(Error::SelfLoop { node: v });
    }
    if m < 2 || !is_strongly_connected(s) {
        return Err(Error::NotStronglyConnected);
    }
    let mut pos = vec![usize::MAX; m];
    let mut walk = Vec::new();
    let mut v = 0;
    while pos[v] == usize::MAX {
        pos[v] = walk.len();
        walk.push(v);
        v = s.out_neighbors(v).next().expect("strongly connected with two or more nodes");
    }
    let base_cycle = walk[pos[v]..].to_vec();

    let mut built = vec![false; m];
    let mut used = vec![vec![false; m]; m];
    for (a, b) in cycle_edges(&base_cycle) {
        built[a] = true;
        used[a][b] = true;
    }
    let mut ears = Vec::new();
    loop {
        let next = s.edges().into_iter().find(|&(a, b)| built[a] && !used[a][b]);
        let Some((u, v)) = next else {
            break;
        };
        let ear = if built[v] {
            vec![u, v]
        } else {
            // Shortest path from v to the built part through new nodes.
            let mut prev = vec![usize::MAX; m];
            prev[v] = v;
            let mut q = VecDeque::from([v]);
            let mut end = None;
            'bfs: while let Some(x) = q.pop_front() {
                for w in s.out_neighbors(x) {
                    if built[w] {
                        end = Some((x, w));
                        break 'bfs;
                    }
                    if prev[w] == usize::MAX {
                        prev[w] = x;
                        q.push_back(w);
                    }
                }
            }
            let (last_new, target) = end.expect("strong connectivity leads back to the built part");
            let mut path = vec![target, last_new];
            let mut x = last_new;
            while x != v {
                x = prev[x];
                path.push(x);
            }
            path.push(u);
            path.reverse();
            path
        };
        for &x in &ear {
            built[x] = true;
        }
        for w in ear.windows(2) {
            used[w[0]][w[1]] = true;
        }
        ears.push(ear);
    }
    Ok(EarDecomposition { base_cycle, ears })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycle_has_no_ears() {
        let s = SkeletonGraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        let e = ear_decomposition(&s).unwrap();
        assert_eq!(e.base_cycle, vec![0, 1]);
        assert!(e.ears.is_empty());
    }

    #[test]
    fn errors() {
        assert_eq!(ear_decomposition(&SkeletonGraph::new(1, &[]).unwrap()), Err(Error::NotStronglyConnected));
        let path = SkeletonGraph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(ear_decomposition(&path), Err(Error::NotStronglyConnected));
        let looped = SkeletonGraph::new(2, &[(0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(ear_decomposition(&looped), Err(Error::SelfLoop { node: 1 }));
    }

    #[test]
    fn glues_back_to_the_graph() {
        let s = SkeletonGraph::new(4, &[(0, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 0)]).unwrap();
        let e = ear_decomposition(&s).unwrap();
        assert_eq!(e.ears.len(), s.edge_count() - 4);
        let (nodes, edges) = e.glue(4).unwrap();
        assert!(nodes.iter().all(|&b| b));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(edges[i][j], s.has_edge(i, j));
            }
        }
    }
}
