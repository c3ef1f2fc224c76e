//! The four built-in step-graphons.
//!
//! All share one skeleton on blocks 0..4: the 4-cycle 0→1→2→3→0, the
//! 2-cycles 1↔2 and 2↔3, and a self-loop on block 3. Case d drops the loop.

use crate::error::{Error, Result};
use crate::graphon::{Partition, StepGraphon};
use crate::rational::{ratio, Rational};

pub const PRESET_NAMES: [&str; 4] = ["case-a", "case-b", "case-c", "case-d"];

const SUPPORT: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 0), (3, 3)];

fn partition(num: [i64; 5], den: i64) -> Partition {
    Partition::new(num.iter().map(|&k| ratio(k, den)).collect()).expect("preset partitions are valid")
}

fn build(partition: Partition, support: &[(usize, usize)], value: Rational) -> StepGraphon {
    StepGraphon::with_support(partition, support, value).expect("preset graphons are valid")
}

pub fn preset(name: &str) -> Result<StepGraphon> {
    Ok(match name {
        "case-a" => build(partition([0, 1, 4, 9, 16], 16), &SUPPORT, ratio(1, 5)),
        "case-b" => build(partition([0, 1, 3, 6, 8], 8), &SUPPORT, ratio(1, 1)),
        "case-c" => build(partition([0, 5, 10, 16, 20], 20), &SUPPORT, ratio(1, 1)),
        "case-d" => build(partition([0, 1, 3, 6, 8], 8), &SUPPORT[..6], ratio(1, 1)),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown preset {name:?}; available: {}",
                PRESET_NAMES.join(", ")
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::format_rational;

    fn points(name: &str) -> Vec<String> {
        preset(name).unwrap().partition().points().iter().map(format_rational).collect()
    }

    #[test]
    fn partitions() {
        assert_eq!(points("case-a"), ["0", "1/16", "1/4", "9/16", "1"]);
        assert_eq!(points("case-b"), ["0", "1/8", "3/8", "3/4", "1"]);
        assert_eq!(points("case-c"), ["0", "1/4", "1/2", "4/5", "1"]);
        assert_eq!(points("case-d"), points("case-b"));
    }

    #[test]
    fn values() {
        let a = preset("case-a").unwrap();
        assert_eq!(*a.value(3, 3), ratio(1, 5));
        assert_eq!(*a.value(0, 0), ratio(0, 1));
        let d = preset("case-d").unwrap();
        assert!(!d.has_self_loop(3));
        assert_eq!(*d.value(3, 0), ratio(1, 1));
    }

    #[test]
    fn unknown_name_lists_presets() {
        let err = preset("case-e").unwrap_err().to_string();
        for name in PRESET_NAMES {
            assert!(err.contains(name), "{err}");
        }
    }
}
