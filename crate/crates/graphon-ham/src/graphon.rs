//! Step-graphons over exact rational partitions.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, is_unit_interval, ratio, Rational};
use crate::skeleton::{skeleton_of, strongly_connected_components};

/// Points `0 = σ_0 < σ_1 < … < σ_m = 1`. Block `i` (0-based) is the interval
/// `[σ_i, σ_{i+1})`, with the last block closed at 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    points: Vec<Rational>,
}

impl Partition {
    pub fn new(points: Vec<Rational>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPartition("need at least two points".into()));
        }
        if !points[0].is_zero() {
            return Err(Error::InvalidPartition("first point must be 0".into()));
        }
        if !points[points.len() - 1].is_one() {
            return Err(Error::InvalidPartition("last point must be 1".into()));
        }
        for w in points.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidPartition(format!(
                    "points must be strictly increasing ({} then {})",
                    format_rational(&w[0]),
                    format_rational(&w[1])
                )));
            }
        }
        Ok(Partition { points })
    }

    /// The trivial partition `(0, 1)`.
    pub fn unit() -> Self {
        Partition {
            points: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn blocks(&self) -> usize {
        self.points.len() - 1
    }

    pub fn lower(&self, block: usize) -> &Rational {
        &self.points[block]
    }

    pub fn upper(&self, block: usize) -> &Rational {
        &self.points[block + 1]
    }

    pub fn length(&self, block: usize) -> Rational {
        &self.points[block + 1] - &self.points[block]
    }

    /// Block containing `s ∈ [0, 1]`.
    pub fn block_of(&self, s: &Rational) -> usize {
        let m = self.blocks();
        // Number of interior points ≤ s.
        self.points[1..m].partition_point(|p| p <= s)
    }
}

/// Block lengths `σ_i − σ_{i−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcentrationVector {
    entries: Vec<Rational>,
}

impl ConcentrationVector {
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }
}

/// A graphon that is constant (value `p_ij`) on each rectangle
/// `R_ij = [σ_i, σ_{i+1}) × [σ_j, σ_{j+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepGraphon {
    partition: Partition,
    values: Vec<Vec<Rational>>,
}

impl StepGraphon {
    pub fn new(partition: Partition, values: Vec<Vec<Rational>>) -> Result<Self> {
        let m = partition.blocks();
        if values.len() != m || values.iter().any(|row| row.len() != m) {
            return Err(Error::Dimension(format!(
                "partition has {m} blocks, so values must be {m}x{m}"
            )));
        }
        for (i, row) in values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !is_unit_interval(v) {
                    return Err(Error::InvalidGraphon(format!(
                        "value {} at ({i}, {j}) is outside [0, 1]",
                        format_rational(v)
                    )));
                }
            }
        }
        Ok(StepGraphon { partition, values })
    }

    /// Graphon with the given partition, `value` on `support` and 0 elsewhere.
    pub fn with_support(partition: Partition, support: &[(usize, usize)], value: Rational) -> Result<Self> {
        let m = partition.blocks();
        let mut values = vec![vec![Rational::zero(); m]; m];
        for &(i, j) in support {
            if i >= m || j >= m {
                return Err(Error::Dimension(format!("support pair ({i}, {j}) outside {m} blocks")));
            }
            values[i][j] = value.clone();
        }
        StepGraphon::new(partition, values)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    pub fn blocks(&self) -> usize {
        self.partition.blocks()
    }

    pub fn value(&self, i: usize, j: usize) -> &Rational {
        &self.values[i][j]
    }

    pub fn evaluate(&self, s: &Rational, t: &Rational) -> &Rational {
        &self.values[self.partition.block_of(s)][self.partition.block_of(t)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.blocks();
        (0..m).all(|i| (0..i).all(|j| self.values[i][j] == self.values[j][i]))
    }

    pub fn has_self_loop(&self, block: usize) -> bool {
        self.values[block][block].is_positive()
    }

    pub fn concentration_vector(&self) -> ConcentrationVector {
        ConcentrationVector {
            entries: (0..self.blocks()).map(|i| self.partition.length(i)).collect(),
        }
    }

    /// Inserts `point` into the partition; the block it falls in is split and
    /// its row and column are duplicated, so the function is unchanged.
    pub fn refine_partition(&self, point: &Rational) -> Result<StepGraphon> {
        if !point.is_positive() || *point >= Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "refinement point {} is not in (0, 1)",
                format_rational(point)
            )));
        }
        if self.partition.points.contains(point) {
            return Err(Error::InvalidArgument(format!(
                "refinement point {} is already in the partition",
                format_rational(point)
            )));
        }
        let block = self.partition.block_of(point);
        let mut points = self.partition.points.clone();
        points.insert(block + 1, point.clone());
        let origin = split_map(self.blocks(), block);
        let values = origin
            .iter()
            .map(|&a| origin.iter().map(|&b| self.values[a][b].clone()).collect())
            .collect();
        Ok(StepGraphon {
            partition: Partition { points },
            values,
        })
    }

    /// `q_ij = max(p_ij, p_ji)` when one of the two is zero, `p_ij · p_ji`
    /// otherwise.
    pub fn symmetrize(&self) -> StepGraphon {
        let m = self.blocks();
        let values = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let (a, b) = (&self.values[i][j], &self.values[j][i]);
                        if a.is_zero() || b.is_zero() {
                            a.max(b).clone()
                        } else {
                            a * b
                        }
                    })
                    .collect()
            })
            .collect();
        StepGraphon {
            partition: self.partition.clone(),
            values,
        }
    }

    /// Every nonzero value replaced by 1.
    pub fn saturate(&self) -> StepGraphon {
        let values = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| if v.is_zero() { Rational::zero() } else { Rational::one() })
                    .collect()
            })
            .collect();
        StepGraphon {
            partition: self.partition.clone(),
            values,
        }
    }

    /// Splits `block` at its midpoint and zeroes the two diagonal sub-blocks.
    ///
    /// The two halves keep every other value of the original block, and the
    /// off-diagonal sub-blocks between them keep the self-loop value, so the
    /// loop at `block` becomes a 2-cycle between the halves.
    pub fn surgery_remove_self_loop(&self, block: usize) -> Result<StepGraphon> {
        self.surgery_with_origin(block).map(|(w, _)| w)
    }

    fn surgery_with_origin(&self, block: usize) -> Result<(StepGraphon, Vec<usize>)> {
        let m = self.blocks();
        if block >= m {
            return Err(Error::InvalidArgument(format!("block {block} outside {m} blocks")));
        }
        if !self.has_self_loop(block) {
            return Err(Error::NoSelfLoop { block });
        }
        let mid = (self.partition.lower(block) + self.partition.upper(block)) * ratio(1, 2);
        let mut points = self.partition.points.clone();
        points.insert(block + 1, mid);
        let origin = split_map(m, block);
        let values = (0..=m)
            .map(|a| {
                (0..=m)
                    .map(|b| {
                        if a == b && (a == block || a == block + 1) {
                            Rational::zero()
                        } else {
                            self.values[origin[a]][origin[b]].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok((
            StepGraphon {
                partition: Partition { points },
                values,
            },
            origin,
        ))
    }

    /// Removes the self-loop at `block`, first refining the block at its
    /// midpoint when the loop's strongly connected component is a single
    /// node. Surgery on a lone looped node would turn it into a 2-cycle
    /// whose bipartite double is disconnected; after the refinement the
    /// component has two nodes and surgery keeps Conditions A, B and C.
    ///
    /// Returns the new graphon and, for each new block, the block of `self`
    /// it lies inside.
    pub fn remove_self_loop(&self, block: usize) -> Result<(StepGraphon, Vec<usize>)> {
        if block >= self.blocks() {
            return Err(Error::InvalidArgument(format!(
                "block {block} outside {} blocks",
                self.blocks()
            )));
        }
        if !self.has_self_loop(block) {
            return Err(Error::NoSelfLoop { block });
        }
        let sccs = strongly_connected_components(&skeleton_of(self));
        let singleton = sccs.iter().any(|c| c.len() == 1 && c[0] == block);
        if singleton {
            let mid = (self.partition.lower(block) + self.partition.upper(block)) * ratio(1, 2);
            let refined = self.refine_partition(&mid)?;
            let first = split_map(self.blocks(), block);
            let (w, second) = refined.surgery_with_origin(block)?;
            let origin = second.iter().map(|&b| first[b]).collect();
            Ok((w, origin))
        } else {
            self.surgery_with_origin(block)
        }
    }

    /// Repeatedly removes the self-loop with the smallest block index until
    /// the skeleton is loop-free.
    pub fn loop_free_reduction(&self) -> StepGraphon {
        self.loop_free_reduction_with_origin().0
    }

    /// As [`loop_free_reduction`](Self::loop_free_reduction), also returning
    /// the original block of every block of the result.
    pub fn loop_free_reduction_with_origin(&self) -> (StepGraphon, Vec<usize>) {
        let mut w = self.clone();
        let mut origin: Vec<usize> = (0..self.blocks()).collect();
        while let Some(block) = (0..w.blocks()).find(|&i| w.has_self_loop(i)) {
            let (next, step) = w
                .remove_self_loop(block)
                .expect("block was selected because it has a self-loop");
            origin = step.iter().map(|&b| origin[b]).collect();
            w = next;
        }
        (w, origin)
    }

    /// True iff `self(s,t) ≤ other(s,t)` everywhere. Both partitions are
    /// merged, so the graphons may use different grids.
    pub fn pointwise_le(&self, other: &StepGraphon) -> bool {
        let mut points: Vec<Rational> = self
            .partition
            .points
            .iter()
            .chain(other.partition.points.iter())
            .cloned()
            .collect();
        points.sort();
        points.dedup();
        // Each cell of the merged grid is inside one block of each graphon;
        // its lower corner identifies them.
        let corners = &points[..points.len() - 1];
        corners
            .iter()
            .all(|s| corners.iter().all(|t| self.evaluate(s, t) <= other.evaluate(s, t)))
    }
}

/// Index map after splitting `block` of an `m`-block grid in two: new block
/// `a` came from old block `map[a]`.
fn split_map(m: usize, block: usize) -> Vec<usize> {
    let mut map: Vec<usize> = (0..m).collect();
    map.insert(block + 1, block);
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, parse_rational};
    use crate::skeleton::skeleton_of;

    fn part(points: &[(i64, i64)]) -> Partition {
        Partition::new(points.iter().map(|&(n, d)| ratio(n, d)).collect()).unwrap()
    }

    fn sixteenths() -> Partition {
        part(&[(0, 1), (1, 16), (4, 16), (9, 16), (1, 1)])
    }

    const SUPPORT: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 0), (3, 3)];

    fn w_a() -> StepGraphon {
        StepGraphon::with_support(sixteenths(), &SUPPORT, ratio(1, 5)).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![int(0)]).is_err());
        assert!(Partition::new(vec![int(0), ratio(1, 2)]).is_err());
        assert!(Partition::new(vec![ratio(1, 4), int(1)]).is_err());
        assert!(Partition::new(vec![int(0), ratio(1, 2), ratio(1, 2), int(1)]).is_err());
        assert!(Partition::new(vec![int(0), ratio(2, 3), ratio(1, 3), int(1)]).is_err());
        assert_eq!(Partition::unit().blocks(), 1);
    }

    #[test]
    fn block_lookup_uses_half_open_intervals() {
        let p = sixteenths();
        assert_eq!(p.block_of(&int(0)), 0);
        assert_eq!(p.block_of(&ratio(1, 16)), 1);
        assert_eq!(p.block_of(&ratio(9, 16)), 3);
        assert_eq!(p.block_of(&ratio(143, 256)), 2);
        assert_eq!(p.block_of(&int(1)), 3);
    }

    #[test]
    fn value_out_of_range_is_rejected() {
        let p = part(&[(0, 1), (1, 2), (1, 1)]);
        let bad = vec![vec![int(0), ratio(3, 2)], vec![int(0), int(0)]];
        assert!(matches!(StepGraphon::new(p.clone(), bad), Err(Error::InvalidGraphon(_))));
        let neg = vec![vec![int(0), ratio(-1, 2)], vec![int(0), int(0)]];
        assert!(StepGraphon::new(p.clone(), neg).is_err());
        let wrong_size = vec![vec![int(0)]];
        assert!(matches!(StepGraphon::new(p, wrong_size), Err(Error::Dimension(_))));
    }

    #[test]
    fn zero_graphon() {
        let w = StepGraphon::new(Partition::unit(), vec![vec![int(0)]]).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.concentration_vector().entries(), &[int(1)]);
    }

    #[test]
    fn concentration_of_sixteenths() {
        let x = w_a().concentration_vector();
        assert_eq!(x.entries(), &[ratio(1, 16), ratio(3, 16), ratio(5, 16), ratio(7, 16)]);
    }

    #[test]
    fn refinement_splits_and_duplicates() {
        let w = w_a();
        let r = w.refine_partition(&ratio(25, 32)).unwrap();
        assert_eq!(
            r.partition().points(),
            &[int(0), ratio(1, 16), ratio(4, 16), ratio(9, 16), ratio(25, 32), int(1)]
        );
        // Block 4 (0-based 3) is duplicated, including its self-loop.
        let s = skeleton_of(&r);
        for (i, j) in [(3, 3), (3, 4), (4, 3), (4, 4), (4, 0), (2, 4), (4, 2)] {
            assert!(s.has_edge(i, j), "missing ({i},{j})");
        }
        assert_eq!(s.edge_count(), 13);
        assert!(matches!(w.refine_partition(&ratio(1, 16)), Err(Error::InvalidArgument(_))));
        assert!(w.refine_partition(&int(0)).is_err());
        assert!(w.refine_partition(&int(1)).is_err());
    }

    #[test]
    fn symmetrize_rules() {
        let p = part(&[(0, 1), (1, 2), (1, 1)]);
        let w = StepGraphon::new(p.clone(), vec![vec![int(0), ratio(1, 2)], vec![int(0), int(1)]]).unwrap();
        let s = w.symmetrize();
        assert_eq!(s.value(0, 1), &ratio(1, 2));
        assert_eq!(s.value(1, 0), &ratio(1, 2));
        assert_eq!(s.value(1, 1), &int(1));
        let w = StepGraphon::new(p, vec![vec![int(0), ratio(1, 2)], vec![ratio(2, 3), int(0)]]).unwrap();
        assert_eq!(w.symmetrize().value(0, 1), &ratio(1, 3));
    }

    #[test]
    fn saturate_keeps_support() {
        let s = w_a().saturate();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if SUPPORT.contains(&(i, j)) { int(1) } else { int(0) };
                assert_eq!(s.value(i, j), &expect);
            }
        }
        assert_eq!(s.saturate(), s);
    }

    #[test]
    fn surgery_on_last_block() {
        let w = w_a();
        let ws = w.surgery_remove_self_loop(3).unwrap();
        assert_eq!(ws.partition().points()[4], ratio(25, 32));
        let s = skeleton_of(&ws);
        let mut edges = s.edges();
        edges.sort();
        assert_eq!(
            edges,
            vec![(0, 1), (1, 2), (2, 1), (2, 3), (2, 4), (3, 0), (3, 2), (3, 4), (4, 0), (4, 2), (4, 3)]
        );
        assert!(ws.pointwise_le(&w));
        assert!(!w.pointwise_le(&ws));
    }

    #[test]
    fn surgery_needs_a_loop() {
        let w_d = StepGraphon::with_support(sixteenths(), &SUPPORT[..6], int(1)).unwrap();
        assert_eq!(w_d.surgery_remove_self_loop(3), Err(Error::NoSelfLoop { block: 3 }));
    }

    #[test]
    fn surgery_on_lone_block_gives_two_cycle() {
        let ones = StepGraphon::new(Partition::unit(), vec![vec![int(1)]]).unwrap();
        let w = ones.surgery_remove_self_loop(0).unwrap();
        assert_eq!(w.partition().points(), &[int(0), ratio(1, 2), int(1)]);
        assert_eq!(w.values(), &[vec![int(0), int(1)], vec![int(1), int(0)]]);
    }

    #[test]
    fn loop_free_reduction_of_lone_loop_refines_first() {
        let ones = StepGraphon::new(Partition::unit(), vec![vec![int(1)]]).unwrap();
        let (w, origin) = ones.loop_free_reduction_with_origin();
        assert_eq!(origin, vec![0, 0, 0, 0]);
        assert_eq!(
            w.partition().points(),
            &[int(0), ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1)]
        );
        // Complete digraph on four nodes, no loops.
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(w.value(i, j), &if i == j { int(0) } else { int(1) });
            }
        }
    }

    #[test]
    fn loop_free_reduction_in_one_step() {
        let w = w_a();
        assert_eq!(w.loop_free_reduction(), w.surgery_remove_self_loop(3).unwrap());
        let d = StepGraphon::with_support(sixteenths(), &SUPPORT[..6], int(1)).unwrap();
        assert_eq!(d.loop_free_reduction(), d);
    }

    #[test]
    fn decimal_values_are_exact() {
        assert_eq!(parse_rational("0.2").unwrap(), ratio(1, 5));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        pub(crate) fn arb_graphon(max_m: usize) -> impl Strategy<Value = StepGraphon> {
            (1..=max_m)
                .prop_flat_map(|m| {
                    (
                        proptest::collection::btree_set(1u32..64, m - 1..=m - 1),
                        proptest::collection::vec(prop_oneof![Just(0u32), 1u32..=8], m * m),
                    )
                })
                .prop_map(|(cuts, vals)| {
                    let m = cuts.len() + 1;
                    let mut points = vec![int(0)];
                    points.extend(cuts.iter().map(|&c| ratio(c as i64, 64)));
                    points.push(int(1));
                    let values = (0..m)
                        .map(|i| (0..m).map(|j| ratio(vals[i * m + j] as i64, 8)).collect())
                        .collect();
                    StepGraphon::new(Partition::new(points).unwrap(), values).unwrap()
                })
        }

        fn grid() -> Vec<Rational> {
            (0..=40).map(|k| ratio(k, 40)).chain((0..17).map(|k| ratio(2 * k + 1, 34))).collect()
        }

        proptest! {
            #[test]
            fn refinement_preserves_the_function(w in arb_graphon(5), num in 1i64..127) {
                let p = ratio(num, 127);
                let r = w.refine_partition(&p).unwrap();
                prop_assert_eq!(r.blocks(), w.blocks() + 1);
                for s in grid() {
                    for t in grid() {
                        prop_assert_eq!(w.evaluate(&s, &t), r.evaluate(&s, &t));
                    }
                }
            }

            #[test]
            fn symmetrize_is_symmetric(w in arb_graphon(5)) {
                let s = w.symmetrize();
                prop_assert!(s.is_symmetric());
                let (a, b) = (skeleton_of(&w), skeleton_of(&s));
                for i in 0..w.blocks() {
                    for j in 0..w.blocks() {
                        prop_assert_eq!(b.has_edge(i, j), a.has_edge(i, j) || a.has_edge(j, i));
                    }
                }
            }

            #[test]
            fn surgery_removes_one_loop_and_adds_one_node(w in arb_graphon(5), pick in 0usize..5) {
                let loops: Vec<usize> = (0..w.blocks()).filter(|&i| w.has_self_loop(i)).collect();
                prop_assume!(!loops.is_empty());
                let block = loops[pick % loops.len()];
                let ws = w.surgery_remove_self_loop(block).unwrap();
                prop_assert_eq!(ws.blocks(), w.blocks() + 1);
                let count = |g: &StepGraphon| (0..g.blocks()).filter(|&i| g.has_self_loop(i)).count();
                prop_assert_eq!(count(&ws), count(&w) - 1);
                prop_assert!(ws.pointwise_le(&w));
            }

            #[test]
            fn loop_free_reduction_is_loop_free_and_below(w in arb_graphon(4)) {
                let (r, origin) = w.loop_free_reduction_with_origin();
                prop_assert!((0..r.blocks()).all(|i| !r.has_self_loop(i)));
                prop_assert!(r.pointwise_le(&w));
                prop_assert_eq!(origin.len(), r.blocks());
                for (b, &o) in origin.iter().enumerate() {
                    prop_assert!(r.partition().lower(b) >= w.partition().lower(o));
                    prop_assert!(r.partition().upper(b) <= w.partition().upper(o));
                }
            }
        }
    }
}
