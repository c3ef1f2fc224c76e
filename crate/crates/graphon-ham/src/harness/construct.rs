//! Explicit witnesses on `K_y` for graphons whose skeleton may have loops.
//!
//! A looped skeleton is first made loop-free by surgery. Each original block
//! then corresponds to one or more blocks of the reduced graphon, and `y_i`
//! has to be shared out among them. The even split is tried first, then other
//! splits in lexicographic order, up to [`SPLIT_LIMIT`] attempts. The
//! construction runs on the subgraph induced by the blocks that receive
//! nodes, and the witness is relabelled onto `K_y` of the original skeleton
//! and verified there.

use crate::error::{Error, Result};
use crate::geometry::cone_membership;
use crate::graphon::StepGraphon;
use crate::hamiltonicity::{
    block_offsets, build_complete_partite, build_ham_cycle_ky, build_ham_decomposition_ky, merge_into_cycle,
    verify_witness, HamWitness,
};
use crate::rational::int;
use crate::sampling::SampledDigraph;
use crate::skeleton::{enumerate_cycles, incidence_matrix, skeleton_of, SkeletonGraph, DEFAULT_CYCLE_CAP};

pub const SPLIT_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Decomposition,
    Cycle,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub witness: HamWitness,
    /// `K_y` of the original skeleton; the witness is verified against it.
    pub graph: SampledDigraph,
}

pub fn construct(w: &StepGraphon, y: &[i64], target: Target) -> Result<Construction> {
    let s = skeleton_of(w);
    let graph = build_complete_partite(&s, y)?;
    let cycles = enumerate_cycles(&s, DEFAULT_CYCLE_CAP)?;
    let z = incidence_matrix(&s, &cycles).to_rational();
    let yr: Vec<_> = y.iter().map(|&v| int(v)).collect();
    if cone_membership(&z, &yr)?.is_none() {
        return Err(Error::NotInCone);
    }

    let (reduced, origin) = w.loop_free_reduction_with_origin();
    let sr = skeleton_of(&reduced);
    let groups: Vec<Vec<usize>> = (0..s.node_count())
        .map(|i| (0..origin.len()).filter(|&b| origin[b] == i).collect())
        .collect();
    let choices: Vec<Vec<Vec<usize>>> = groups
        .iter()
        .zip(y)
        .map(|(g, &yi)| splits(yi as usize, g.len()))
        .collect();

    let mut last_err = None;
    let mut odometer = vec![0usize; choices.len()];
    for _ in 0..SPLIT_LIMIT {
        let mut yr = vec![0usize; origin.len()];
        for (i, g) in groups.iter().enumerate() {
            for (&b, &share) in g.iter().zip(&choices[i][odometer[i]]) {
                yr[b] = share;
            }
        }
        match attempt(&sr, &yr, target) {
            Ok(h) => {
                let h = relabel(h, &yr, &origin, y);
                if !verify_witness(&graph, &h) {
                    return Err(Error::NoWitness("constructed witness failed verification".into()));
                }
                return Ok(Construction { witness: h, graph });
            }
            Err(e) if e.is_infeasible() && !matches!(e, Error::CycleCapExceeded { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        if !advance(&mut odometer, &choices) {
            break;
        }
    }
    let what = match target {
        Target::Decomposition => "decomposition",
        Target::Cycle => "cycle",
    };
    Err(match last_err {
        Some(e) if groups.iter().all(|g| g.len() == 1) => e,
        _ => Error::NoWitness(format!("no split of y over the loop-free reduction gives a Hamiltonian {what}")),
    })
}

/// Builds on the subgraph induced by the blocks with `y_b > 0`; the result
/// is numbered block by block over those blocks.
fn attempt(s: &SkeletonGraph, y: &[usize], target: Target) -> Result<HamWitness> {
    let support: Vec<usize> = (0..y.len()).filter(|&b| y[b] > 0).collect();
    let sub = s.induced(&support);
    let ys: Vec<i64> = support.iter().map(|&b| y[b] as i64).collect();
    match target {
        Target::Decomposition => build_ham_decomposition_ky(&sub, &ys),
        Target::Cycle => {
            if support.is_empty() {
                return Err(Error::NotInX0);
            }
            match build_ham_cycle_ky(&sub, &ys) {
                Err(Error::NotInX0) | Err(Error::NotStronglyConnected) => {}
                other => return other,
            }
            // Outside X_0 a cycle can still exist; try joining the cycles of
            // a decomposition.
            let d = build_ham_decomposition_ky(&sub, &ys)?;
            let k = build_complete_partite(&sub, &ys)?;
            merge_into_cycle(&d, k.block_of()).ok_or(Error::NotInX0)
        }
    }
}

/// Nodes of reduced block `b` go to original block `origin[b]`, packed in
/// order of `b`.
fn relabel(h: HamWitness, yr: &[usize], origin: &[usize], y: &[i64]) -> HamWitness {
    let yu: Vec<usize> = y.iter().map(|&v| v as usize).collect();
    let mut next = block_offsets(&yu);
    let mut map = Vec::new();
    for (b, &count) in yr.iter().enumerate() {
        for _ in 0..count {
            map.push(next[origin[b]]);
            next[origin[b]] += 1;
        }
    }
    HamWitness {
        kind: h.kind,
        cycles: h.cycles.iter().map(|c| c.iter().map(|&v| map[v]).collect()).collect(),
    }
}

/// Ways to share `total` among `parts` blocks, even split first (larger
/// shares to earlier blocks), at most [`SPLIT_LIMIT`] of them.
fn splits(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let even: Vec<usize> = (0..parts).map(|k| total / parts + usize::from(k < total % parts)).collect();
    let mut out = vec![even.clone()];
    let mut cur = Vec::with_capacity(parts);
    compositions(total, parts, &mut cur, &mut out, &even);
    out
}

fn compositions(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, skip: &[usize]) {
    if out.len() >= SPLIT_LIMIT {
        return;
    }
    if parts == 1 {
        cur.push(left);
        if cur.as_slice() != skip {
            out.push(cur.clone());
        }
        cur.pop();
        return;
    }
    for share in 0..=left {
        cur.push(share);
        compositions(left - share, parts - 1, cur, out, skip);
        cur.pop();
    }
}

fn advance(odometer: &mut [usize], choices: &[Vec<Vec<usize>>]) -> bool {
    for (i, c) in odometer.iter_mut().enumerate() {
        *c += 1;
        if *c < choices[i].len() {
            return true;
        }
        *c = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::preset;
    use crate::hamiltonicity::WitnessKind;

    #[test]
    fn split_order() {
        assert_eq!(splits(3, 2), vec![vec![2, 1], vec![0, 3], vec![1, 2], vec![3, 0]]);
        assert_eq!(splits(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(splits(5, 1), vec![vec![5]]);
    }

    #[test]
    fn preset_examples() {
        let d = preset("case-d").unwrap();
        let c = construct(&d, &[1, 2, 3, 2], Target::Cycle).unwrap();
        assert_eq!(c.witness.kind, WitnessKind::Cycle);
        assert_eq!(c.witness.cycles[0].len(), 8);

        let a = preset("case-a").unwrap();
        let c = construct(&a, &[0, 0, 0, 2], Target::Decomposition).unwrap();
        assert_eq!(c.witness.cycles, vec![vec![0, 1]]);
        assert_eq!(c.graph.block_of(), &[3, 3]);

        assert_eq!(construct(&a, &[1, 0, 0, 0], Target::Decomposition).unwrap_err(), Error::NotInCone);
        // Outside X_0, but the flow is a single 4-cycle.
        assert!(construct(&d, &[1, 1, 1, 1], Target::Cycle).is_ok());
        // A lone 2-cycle between blocks 1 and 2 never reaches the others.
        assert_eq!(construct(&d, &[0, 1, 1, 0], Target::Cycle).unwrap().witness.cycles[0].len(), 2);
        assert_eq!(construct(&d, &[0, 0, 1, 0], Target::Cycle).unwrap_err(), Error::NotInCone);
    }

    #[test]
    fn lone_node_cannot_use_its_loop() {
        let a = preset("case-a").unwrap();
        let err = construct(&a, &[0, 0, 0, 1], Target::Decomposition).unwrap_err();
        assert!(matches!(err, Error::NoWitness(_)));
        assert!(err.is_infeasible());
    }

    #[test]
    fn looped_cycle_targets() {
        let a = preset("case-a").unwrap();
        for y in [[1, 1, 1, 1], [1, 2, 3, 4], [0, 1, 2, 2], [2, 3, 4, 6]] {
            let c = construct(&a, &y, Target::Cycle).unwrap();
            assert_eq!(c.witness.cycles[0].len(), y.iter().sum::<i64>() as usize, "{y:?}");
        }
    }
}
