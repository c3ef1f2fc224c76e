//! Skeleton digraphs, their cycles and the Conditions A, B, B′, C.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{cone_membership, rank, relative_interior_membership, ConeCertificate, RationalMatrix};
use crate::graphon::StepGraphon;
use crate::rational::{format_rational, Rational};

pub const DEFAULT_CYCLE_CAP: usize = 100_000;

/// Digraph on blocks `0..m`; edge `(i, j)` iff the graphon is nonzero on
/// `R_ij`. Self-loops are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkeletonGraph {
    m: usize,
    adj: Vec<Vec<bool>>,
}

impl SkeletonGraph {
    pub fn new(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![vec![false; m]; m];
        for &(i, j) in edges {
            if i >= m || j >= m {
                return Err(Error::Dimension(format!("edge ({i}, {j}) outside {m} nodes")));
            }
            adj[i][j] = true;
        }
        Ok(SkeletonGraph { m, adj })
    }

    pub fn node_count(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn has_self_loop(&self, i: usize) -> bool {
        self.adj[i][i]
    }

    pub fn is_loop_free(&self) -> bool {
        (0..self.m).all(|i| !self.adj[i][i])
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in 0..self.m {
                if self.adj[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().flatten().filter(|&&b| b).count()
    }

    pub fn out_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.m).filter(move |&j| self.adj[i][j])
    }

    /// Every non-loop edge has its reverse.
    pub fn is_symmetric(&self) -> bool {
        (0..self.m).all(|i| (0..self.m).all(|j| self.adj[i][j] == self.adj[j][i]))
    }

    /// Subgraph induced on `nodes`, relabelled `0..nodes.len()` in the given
    /// order.
    pub fn induced(&self, nodes: &[usize]) -> SkeletonGraph {
        let k = nodes.len();
        let adj = (0..k)
            .map(|a| (0..k).map(|b| self.adj[nodes[a]][nodes[b]]).collect())
            .collect();
        SkeletonGraph { m: k, adj }
    }
}

pub fn skeleton_of(w: &StepGraphon) -> SkeletonGraph {
    let m = w.blocks();
    let adj = (0..m)
        .map(|i| (0..m).map(|j| w.value(i, j).is_positive()).collect())
        .collect();
    SkeletonGraph { m, adj }
}

/// Tarjan's algorithm. Each component is sorted; components are ordered by
/// their smallest node.
pub fn strongly_connected_components(s: &SkeletonGraph) -> Vec<Vec<usize>> {
    struct State<'a> {
        s: &'a SkeletonGraph,
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }

    fn visit(st: &mut State, v: usize) {
        st.index[v] = Some(st.next);
        st.low[v] = st.next;
        st.next += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for w in 0..st.s.m {
            if !st.s.adj[v][w] {
                continue;
            }
            match st.index[w] {
                None => {
                    visit(st, w);
                    st.low[v] = st.low[v].min(st.low[w]);
                }
                Some(iw) if st.on_stack[w] => st.low[v] = st.low[v].min(iw),
                _ => {}
            }
        }
        if Some(st.low[v]) == st.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("v is on the stack");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            st.out.push(comp);
        }
    }

    let m = s.m;
    let mut st = State {
        s,
        index: vec![None; m],
        low: vec![0; m],
        on_stack: vec![false; m],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..m {
        if st.index[v].is_none() {
            visit(&mut st, v);
        }
    }
    let mut out = st.out;
    out.sort();
    out
}

/// Condition C. A single-node skeleton counts as strongly connected.
pub fn is_strongly_connected(s: &SkeletonGraph) -> bool {
    s.m >= 1 && strongly_connected_components(s).len() == 1
}

/// Undirected bipartite graph with an out-copy `u'_i` and an in-copy `u''_j`
/// of every node, joined iff `u_i u_j` is an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteDouble {
    pub m: usize,
    /// `(i, j)` stands for the undirected edge `(u'_i, u''_j)`.
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteDouble {
    /// Connected components among the `2m` nodes.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(2 * self.m);
        for &(i, j) in &self.edges {
            uf.union(i, self.m + j);
        }
        uf.count()
    }
}

pub fn bipartite_double(s: &SkeletonGraph) -> BipartiteDouble {
    BipartiteDouble {
        m: s.m,
        edges: s.edges(),
    }
}

struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.sets -= 1;
        }
    }

    fn count(&self) -> usize {
        self.sets
    }
}

/// Simple directed cycles of a skeleton, each rotated so its smallest node
/// comes first. A self-loop is the one-node cycle `[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CycleSet {
    cycles: Vec<Vec<usize>>,
}

impl CycleSet {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Index of the cycle equal to `cycle` up to rotation.
    pub fn position(&self, cycle: &[usize]) -> Option<usize> {
        let canon = canonical_rotation(cycle);
        self.cycles.iter().position(|c| *c == canon)
    }

    /// Edges `(v_k, v_{k+1})` of cycle `j`, including the closing edge.
    pub fn cycle_edges(&self, j: usize) -> Vec<(usize, usize)> {
        cycle_edges(&self.cycles[j])
    }
}

pub fn cycle_edges(cycle: &[usize]) -> Vec<(usize, usize)> {
    let d = cycle.len();
    (0..d).map(|k| (cycle[k], cycle[(k + 1) % d])).collect()
}

pub fn canonical_rotation(cycle: &[usize]) -> Vec<usize> {
    let Some(start) = cycle.iter().enumerate().min_by_key(|(_, &v)| v).map(|(k, _)| k) else {
        return Vec::new();
    };
    cycle[start..].iter().chain(cycle[..start].iter()).copied().collect()
}

/// All simple cycles, by Johnson's algorithm.
///
/// Order: grouped by largest node (descending), then by length, then
/// lexicographically. For the four-block example skeletons this reproduces
/// the usual labelling `u4u4, u3u4, u1u2u3u4, u2u3`.
pub fn enumerate_cycles(s: &SkeletonGraph, cap: usize) -> Result<CycleSet> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cycle cap must be positive".into()));
    }
    let m = s.m;
    let mut found: Vec<Vec<usize>> = Vec::new();
    for start in 0..m {
        // Component of `start` within the subgraph on nodes ≥ start.
        let rest: Vec<usize> = (start..m).collect();
        let sub = s.induced(&rest);
        let comp = strongly_connected_components(&sub)
            .into_iter()
            .find(|c| c.contains(&0))
            .expect("node 0 of the subgraph belongs to a component");
        if comp.len() == 1 && !s.adj[start][start] {
            continue;
        }
        let mut allowed = vec![false; m];
        for &c in &comp {
            allowed[start + c] = true;
        }
        let mut j = Johnson {
            s,
            start,
            allowed,
            blocked: vec![false; m],
            b: vec![Vec::new(); m],
            stack: Vec::new(),
            out: &mut found,
            cap,
            overflow: false,
        };
        j.circuit(start);
        if j.overflow {
            return Err(Error::CycleCapExceeded { cap });
        }
    }
    found.sort_by(|a, b| {
        let ma = a.iter().max();
        let mb = b.iter().max();
        mb.cmp(&ma).then(a.len().cmp(&b.len())).then(a.cmp(b))
    });
    Ok(CycleSet { cycles: found })
}

struct Johnson<'a> {
    s: &'a SkeletonGraph,
    start: usize,
    allowed: Vec<bool>,
    blocked: Vec<bool>,
    b: Vec<Vec<usize>>,
    stack: Vec<usize>,
    out: &'a mut Vec<Vec<usize>>,
    cap: usize,
    overflow: bool,
}

impl Johnson<'_> {
    fn circuit(&mut self, v: usize) -> bool {
        let mut closed = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for w in 0..self.s.m {
            if self.overflow {
                break;
            }
            if !self.s.adj[v][w] || !self.allowed[w] {
                continue;
            }
            if w == self.start {
                if self.out.len() == self.cap {
                    self.overflow = true;
                    break;
                }
                self.out.push(self.stack.clone());
                closed = true;
            } else if !self.blocked[w] && self.circuit(w) {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for w in 0..self.s.m {
                if self.s.adj[v][w] && self.allowed[w] && !self.b[w].contains(&v) {
                    self.b[w].push(v);
                }
            }
        }
        self.stack.pop();
        closed
    }

    fn unblock(&mut self, u: usize) {
        self.blocked[u] = false;
        while let Some(w) = self.b[u].pop() {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }
}

/// 0/1 matrix with one row per node and one column per cycle (or edge, for
/// the node-edge variant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u8>>,
}

impl IncidenceMatrix {
    pub fn from_columns(rows: usize, columns: &[Vec<usize>]) -> Self {
        let mut entries = vec![vec![0u8; columns.len()]; rows];
        for (j, support) in columns.iter().enumerate() {
            for &i in support {
                entries[i][j] = 1;
            }
        }
        IncidenceMatrix {
            rows,
            cols: columns.len(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i][j]
    }

    pub fn row_major(&self) -> &[Vec<u8>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        self.entries.iter().map(|row| row[j]).collect()
    }

    /// `Z·𝟙`: how many columns touch each row.
    pub fn row_sums(&self) -> Vec<i64> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&e| e as i64).sum())
            .collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| Rational::from_integer(self.entries[i][j].into()))
    }
}

pub fn incidence_matrix(s: &SkeletonGraph, cycles: &CycleSet) -> IncidenceMatrix {
    IncidenceMatrix::from_columns(s.m, &cycles.cycles)
}

/// Co-rank by the bipartite-double formula: one term `τ_p − 1` per strongly
/// connected component, where `τ_p` counts connected components of the
/// double of the component's induced subgraph.
pub fn corank_by_components(s: &SkeletonGraph) -> usize {
    strongly_connected_components(s)
        .iter()
        .map(|comp| bipartite_double(&s.induced(comp)).component_count() - 1)
        .sum()
}

/// `m − rank(Z)`, computed by exact elimination and by
/// [`corank_by_components`]; the two must agree.
pub fn corank(s: &SkeletonGraph, z: &IncidenceMatrix) -> Result<usize> {
    if z.rows() != s.m {
        return Err(Error::Dimension(format!(
            "incidence matrix has {} rows for {} nodes",
            z.rows(),
            s.m
        )));
    }
    let by_rank = s.m - rank(&z.to_rational());
    let by_components = corank_by_components(s);
    assert_eq!(
        by_rank, by_components,
        "co-rank by elimination disagrees with the bipartite formula"
    );
    Ok(by_rank)
}

/// One column per edge of the undirected collapse of a symmetric skeleton,
/// marking its endpoints (a single 1 for a loop). Columns follow the edges
/// `(i, j)`, `i ≤ j`, in lexicographic order.
pub fn node_edge_incidence(s_sym: &SkeletonGraph) -> Result<IncidenceMatrix> {
    if !s_sym.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut columns = Vec::new();
    for i in 0..s_sym.m {
        for j in i..s_sym.m {
            if s_sym.adj[i][j] {
                columns.push(if i == j { vec![i] } else { vec![i, j] });
            }
        }
    }
    Ok(IncidenceMatrix::from_columns(s_sym.m, &columns))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Zero,
    One,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub cond_a: bool,
    pub cond_b: bool,
    pub cond_b_prime: bool,
    pub cond_c: bool,
    pub corank: usize,
    /// `c ≥ 0` with `Z c = x*`, when `x*` lies in the cone.
    pub cone_certificate: Option<ConeCertificate>,
    /// `c > 0` with `Z c = x*`, when `x*` lies in the relative interior.
    pub interior_certificate: Option<ConeCertificate>,
    pub verdict_h: Verdict,
    pub verdict_strong_h: Verdict,
    pub concentration: Vec<Rational>,
    pub sccs: Vec<Vec<usize>>,
    pub cycles: CycleSet,
    pub incidence: IncidenceMatrix,
    /// The skeleton has one node, so Condition C holds by convention.
    pub single_node: bool,
    /// The graphon is identically zero.
    pub zero_graphon: bool,
}

impl ConditionReport {
    pub fn to_json(&self) -> Value {
        let cert = |c: &Option<ConeCertificate>| match c {
            Some(c) => json!({
                "coefficients": c.coefficients.iter().map(format_rational).collect::<Vec<_>>(),
                "strict": c.strict,
            }),
            None => Value::Null,
        };
        json!({
            "condA": self.cond_a,
            "condB": self.cond_b,
            "condBprime": self.cond_b_prime,
            "condC": self.cond_c,
            "corank": self.corank,
            "verdict_H": self.verdict_h,
            "verdict_strongH": self.verdict_strong_h,
            "cone_certificate": cert(&self.cone_certificate),
            "interior_certificate": cert(&self.interior_certificate),
            "concentration": self.concentration.iter().map(format_rational).collect::<Vec<_>>(),
            "sccs": self.sccs,
            "cycle_count": self.cycles.len(),
            "cycles": self.cycles.cycles(),
            "incidence": self.incidence.row_major(),
            "single_node_skeleton": self.single_node,
            "zero_graphon": self.zero_graphon,
        })
    }
}

pub fn check_conditions(w: &StepGraphon) -> Result<ConditionReport> {
    check_conditions_with_cap(w, DEFAULT_CYCLE_CAP)
}

pub fn check_conditions_with_cap(w: &StepGraphon, cap: usize) -> Result<ConditionReport> {
    let s = skeleton_of(w);
    let cycles = enumerate_cycles(&s, cap)?;
    let z = incidence_matrix(&s, &cycles);
    let corank = corank(&s, &z)?;
    let x = w.concentration_vector().into_entries();
    let zr = z.to_rational();
    let cone_certificate = cone_membership(&zr, &x)?;
    let interior_certificate = relative_interior_membership(&zr, &x)?;
    let cond_a = corank == 0;
    let cond_b_prime = cone_certificate.is_some();
    let cond_b = interior_certificate.is_some();
    let cond_c = is_strongly_connected(&s);
    let (verdict_h, verdict_strong_h) = verdicts(cond_a, cond_b, cond_b_prime, cond_c);
    let zero_graphon = w.is_zero();
    let (verdict_h, verdict_strong_h) = if zero_graphon {
        (Verdict::Zero, Verdict::Zero)
    } else {
        (verdict_h, verdict_strong_h)
    };
    Ok(ConditionReport {
        cond_a,
        cond_b,
        cond_b_prime,
        cond_c,
        corank,
        cone_certificate,
        interior_certificate,
        verdict_h,
        verdict_strong_h,
        concentration: x,
        sccs: strongly_connected_components(&s),
        cycles,
        incidence: z,
        single_node: s.m == 1,
        zero_graphon,
    })
}

/// Limits predicted for the decomposition (H) and cycle (strong H)
/// properties.
pub fn verdicts(a: bool, b: bool, b_prime: bool, c: bool) -> (Verdict, Verdict) {
    if !a || !b_prime {
        (Verdict::Zero, Verdict::Zero)
    } else if b && c {
        (Verdict::One, Verdict::One)
    } else if b {
        (Verdict::One, Verdict::Zero)
    } else {
        (Verdict::Indeterminate, Verdict::Indeterminate)
    }
}

/// Support of a vector of rationals, for tests and reports.
pub fn positive_support(v: &[Rational]) -> BTreeSet<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| x.is_positive())
        .map(|(i, _)| i)
        .collect()
}

/// `Σ_j c_j z_j` for a cycle set.
pub fn combine(z: &IncidenceMatrix, c: &[Rational]) -> Vec<Rational> {
    (0..z.rows())
        .map(|i| {
            (0..z.cols())
                .filter(|&j| z.get(i, j) == 1)
                .fold(Rational::zero(), |acc, j| acc + &c[j])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphon::Partition;
    use crate::rational::{int, ratio};

    fn fig1() -> SkeletonGraph {
        SkeletonGraph::new(4, &[(0, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 0), (3, 3)]).unwrap()
    }

    fn fig1_no_loop() -> SkeletonGraph {
        SkeletonGraph::new(4, &[(0, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 0)]).unwrap()
    }

    #[test]
    fn sccs() {
        assert_eq!(strongly_connected_components(&fig1()), vec![vec![0, 1, 2, 3]]);
        let empty = SkeletonGraph::new(3, &[]).unwrap();
        assert_eq!(strongly_connected_components(&empty), vec![vec![0], vec![1], vec![2]]);
        let path = SkeletonGraph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(strongly_connected_components(&path), vec![vec![0], vec![1]]);
        assert!(!is_strongly_connected(&path));
        assert!(is_strongly_connected(&SkeletonGraph::new(1, &[]).unwrap()));
    }

    #[test]
    fn bipartite_doubles() {
        assert_eq!(bipartite_double(&fig1()).edges.len(), 7);
        assert_eq!(bipartite_double(&fig1()).component_count(), 1);
        assert_eq!(bipartite_double(&fig1_no_loop()).component_count(), 2);
        let empty = SkeletonGraph::new(3, &[]).unwrap();
        assert!(bipartite_double(&empty).edges.is_empty());
        let looped = SkeletonGraph::new(1, &[(0, 0)]).unwrap();
        assert_eq!(bipartite_double(&looped).edges, vec![(0, 0)]);
    }

    #[test]
    fn cycles_of_fig1() {
        let c = enumerate_cycles(&fig1(), DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(c.cycles(), &[vec![3], vec![2, 3], vec![0, 1, 2, 3], vec![1, 2]]);
        let c = enumerate_cycles(&fig1_no_loop(), DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(c.cycles(), &[vec![2, 3], vec![0, 1, 2, 3], vec![1, 2]]);
        assert!(enumerate_cycles(&SkeletonGraph::new(1, &[]).unwrap(), 10).unwrap().is_empty());
    }

    #[test]
    fn cycle_cap_is_enforced() {
        assert_eq!(
            enumerate_cycles(&fig1(), 3),
            Err(Error::CycleCapExceeded { cap: 3 })
        );
        assert!(enumerate_cycles(&fig1(), 4).is_ok());
        assert!(Error::CycleCapExceeded { cap: 3 }.to_string().contains("--cycle-cap"));
    }

    #[test]
    fn incidence_and_corank() {
        let s = fig1();
        let z = incidence_matrix(&s, &enumerate_cycles(&s, 100).unwrap());
        let expect: Vec<Vec<u8>> = vec![vec![0, 0, 1, 0], vec![0, 0, 1, 1], vec![0, 1, 1, 1], vec![1, 1, 1, 0]];
        assert_eq!(z.row_major(), &expect[..]);
        assert_eq!(corank(&s, &z).unwrap(), 0);
        let s = fig1_no_loop();
        let z = incidence_matrix(&s, &enumerate_cycles(&s, 100).unwrap());
        let expect: Vec<Vec<u8>> = vec![vec![0, 1, 0], vec![0, 1, 1], vec![1, 1, 1], vec![1, 1, 0]];
        assert_eq!(z.row_major(), &expect[..]);
        assert_eq!(corank(&s, &z).unwrap(), 1);
        let e = SkeletonGraph::new(5, &[]).unwrap();
        let z = incidence_matrix(&e, &enumerate_cycles(&e, 100).unwrap());
        assert_eq!((z.rows(), z.cols()), (5, 0));
        assert_eq!(corank(&e, &z).unwrap(), 5);
    }

    #[test]
    fn node_edge_columns() {
        let s = SkeletonGraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(node_edge_incidence(&s).unwrap().column(0), vec![1, 1]);
        let l = SkeletonGraph::new(2, &[(0, 0)]).unwrap();
        assert_eq!(node_edge_incidence(&l).unwrap().column(0), vec![1, 0]);
        assert_eq!(node_edge_incidence(&fig1()), Err(Error::NotSymmetric));
    }

    #[test]
    fn verdict_table() {
        use Verdict::*;
        assert_eq!(verdicts(false, true, true, true), (Zero, Zero));
        assert_eq!(verdicts(true, false, false, true), (Zero, Zero));
        assert_eq!(verdicts(true, true, true, false), (One, Zero));
        assert_eq!(verdicts(true, true, true, true), (One, One));
        assert_eq!(verdicts(true, false, true, true), (Indeterminate, Indeterminate));
    }

    #[test]
    fn zero_graphon_report() {
        let w = StepGraphon::new(Partition::unit(), vec![vec![int(0)]]).unwrap();
        let r = check_conditions(&w).unwrap();
        assert!(r.zero_graphon && r.single_node && r.cond_c && !r.cond_a);
        assert_eq!(r.corank, 1);
        assert_eq!(r.verdict_h, Verdict::Zero);
    }

    #[test]
    fn full_block_is_hamiltonian() {
        let w = StepGraphon::new(Partition::unit(), vec![vec![ratio(1, 2)]]).unwrap();
        let r = check_conditions(&w).unwrap();
        assert!(r.cond_a && r.cond_b && r.cond_c);
        assert_eq!((r.verdict_h, r.verdict_strong_h), (Verdict::One, Verdict::One));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_skeleton(max_m: usize) -> impl Strategy<Value = SkeletonGraph> {
            (1..=max_m).prop_flat_map(|m| {
                (Just(m), proptest::collection::vec(proptest::bool::weighted(0.35), m * m)).prop_map(|(m, bits)| {
                    let edges: Vec<(usize, usize)> =
                        (0..m * m).filter(|&k| bits[k]).map(|k| (k / m, k % m)).collect();
                    SkeletonGraph::new(m, &edges).unwrap()
                })
            })
        }

        /// Brute-force cycle count: every simple cycle is a sequence of
        /// distinct nodes starting at its minimum.
        fn count_cycles(s: &SkeletonGraph) -> usize {
            fn extend(s: &SkeletonGraph, path: &mut Vec<usize>, count: &mut usize) {
                let first = path[0];
                let last = *path.last().unwrap();
                if s.has_edge(last, first) {
                    *count += 1;
                }
                for w in first + 1..s.node_count() {
                    if s.has_edge(last, w) && !path.contains(&w) {
                        path.push(w);
                        extend(s, path, count);
                        path.pop();
                    }
                }
            }
            let mut count = 0;
            for v in 0..s.node_count() {
                extend(s, &mut vec![v], &mut count);
            }
            count
        }

        proptest! {
            #[test]
            fn corank_routes_agree(s in arb_skeleton(7)) {
                let cycles = enumerate_cycles(&s, DEFAULT_CYCLE_CAP).unwrap();
                let z = incidence_matrix(&s, &cycles);
                prop_assert_eq!(s.node_count() - rank(&z.to_rational()), corank_by_components(&s));
            }

            #[test]
            fn cycles_are_simple_complete_and_canonical(s in arb_skeleton(6)) {
                let cycles = enumerate_cycles(&s, DEFAULT_CYCLE_CAP).unwrap();
                prop_assert_eq!(cycles.len(), count_cycles(&s));
                let mut seen = BTreeSet::new();
                for c in cycles.cycles() {
                    prop_assert_eq!(c.clone(), canonical_rotation(c));
                    let nodes: BTreeSet<_> = c.iter().collect();
                    prop_assert_eq!(nodes.len(), c.len());
                    for (a, b) in cycle_edges(c) {
                        prop_assert!(s.has_edge(a, b));
                    }
                    prop_assert!(seen.insert(c.clone()));
                }
                let z = incidence_matrix(&s, &cycles);
                for (j, c) in cycles.cycles().iter().enumerate() {
                    let col = z.column(j);
                    prop_assert_eq!(col.iter().filter(|&&e| e == 1).count(), c.len());
                    for &v in c {
                        prop_assert_eq!(col[v], 1);
                    }
                }
            }

            #[test]
            fn sccs_partition_and_are_maximal(s in arb_skeleton(7)) {
                let comps = strongly_connected_components(&s);
                let all: Vec<usize> = comps.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
                prop_assert_eq!(all, (0..s.node_count()).collect::<Vec<_>>());
                let reach = reachability(&s);
                for a in 0..s.node_count() {
                    for b in 0..s.node_count() {
                        let same = comps.iter().any(|c| c.contains(&a) && c.contains(&b));
                        prop_assert_eq!(same, a == b || (reach[a][b] && reach[b][a]));
                    }
                }
            }
        }

        fn reachability(s: &SkeletonGraph) -> Vec<Vec<bool>> {
            let m = s.node_count();
            let mut r: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| s.has_edge(i, j)).collect()).collect();
            for k in 0..m {
                for i in 0..m {
                    for j in 0..m {
                        if r[i][k] && r[k][j] {
                            r[i][j] = true;
                        }
                    }
                }
            }
            r
        }
    }
}
