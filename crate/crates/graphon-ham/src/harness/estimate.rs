//! Monte Carlo estimation of the probability that a sample is Hamiltonian.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphon::StepGraphon;
use crate::hamiltonicity::{find_ham_cycle, has_ham_decomposition, HamCycleSearch, DEFAULT_BUDGET};
use crate::rational::{format_decimal, ratio};
use crate::sampling::{mix, RngSpec, Sampler};

pub const DEFAULT_TRIALS: u64 = 2000;
pub const DEFAULT_SEED: u64 = 1;
/// Largest `n` accepted in cycle mode without `allow_large`.
pub const CYCLE_MODE_LIMIT: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateMode {
    Decomposition,
    Cycle,
}

#[derive(Clone, Debug)]
pub struct EstimateConfig {
    pub graphon: StepGraphon,
    pub n_values: Vec<usize>,
    pub trials: u64,
    pub master_seed: u64,
    pub workers: usize,
    pub mode: EstimateMode,
    /// Expansion budget per search in cycle mode.
    pub budget: u64,
    pub allow_large: bool,
}

impl EstimateConfig {
    pub fn new(graphon: StepGraphon, n_values: Vec<usize>) -> Self {
        EstimateConfig {
            graphon,
            n_values,
            trials: DEFAULT_TRIALS,
            master_seed: DEFAULT_SEED,
            workers: 1,
            mode: EstimateMode::Decomposition,
            budget: DEFAULT_BUDGET,
            allow_large: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::InvalidArgument("no values of n given".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("workers must be at least 1".into()));
        }
        if self.mode == EstimateMode::Cycle && !self.allow_large {
            if let Some(&n) = self.n_values.iter().find(|&&n| n > CYCLE_MODE_LIMIT) {
                return Err(Error::InvalidArgument(format!(
                    "cycle mode is limited to n <= {CYCLE_MODE_LIMIT} (got {n}); pass --allow-large to override"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EstimateRow {
    pub n: usize,
    pub successes: u64,
    pub trials: u64,
    /// Trials where the cycle search ran out of budget; always 0 in
    /// decomposition mode. They count as failures in `successes`.
    pub unknown: u64,
}

impl EstimateRow {
    pub fn p_hat(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn stderr(&self) -> f64 {
        let p = self.p_hat();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

/// Seed of the trial streams for one `n`.
pub fn seed_for(master_seed: u64, n: usize) -> u64 {
    mix(master_seed, n as u64)
}

/// One row per `n`. Trial `t` at size `n` always uses stream `t` of
/// [`seed_for`]`(master_seed, n)`, and only counts are combined, so the
/// result does not depend on `workers`.
pub fn run_estimate(config: &EstimateConfig) -> Result<Vec<EstimateRow>> {
    config.validate()?;
    let sampler = Sampler::new(&config.graphon);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    let rows = config
        .n_values
        .iter()
        .map(|&n| {
            let seed = seed_for(config.master_seed, n);
            let (successes, unknown) = pool.install(|| {
                (0..config.trials)
                    .into_par_iter()
                    .map(|t| {
                        let g = sampler.sample_directed(n, &RngSpec::new(seed, t));
                        match config.mode {
                            EstimateMode::Decomposition => (u64::from(has_ham_decomposition(&g).is_some()), 0),
                            EstimateMode::Cycle => match find_ham_cycle(&g, config.budget) {
                                HamCycleSearch::Found(_) => (1, 0),
                                HamCycleSearch::Absent => (0, 0),
                                HamCycleSearch::Unknown => (0, 1),
                            },
                        }
                    })
                    .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
            });
            EstimateRow {
                n,
                successes,
                trials: config.trials,
                unknown,
            }
        })
        .collect();
    Ok(rows)
}

pub const CSV_HEADER: &str = "n,successes,trials,p_hat,stderr,unknown";

pub fn rows_to_csv(rows: &[EstimateRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let p = ratio(r.successes as i64, r.trials as i64);
        out.push_str(&format!(
            "{},{},{},{},{:.6},{}\n",
            r.n,
            r.successes,
            r.trials,
            format_decimal(&p, 6),
            r.stderr(),
            r.unknown
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphon::Partition;
    use crate::rational::int;

    #[test]
    fn zero_graphon_never_succeeds() {
        let zero = StepGraphon::new(Partition::unit(), vec![vec![int(0)]]).unwrap();
        let mut cfg = EstimateConfig::new(zero, vec![3]);
        cfg.trials = 1;
        let rows = run_estimate(&cfg).unwrap();
        assert_eq!(rows, vec![EstimateRow { n: 3, successes: 0, trials: 1, unknown: 0 }]);
        assert_eq!(rows_to_csv(&rows), "n,successes,trials,p_hat,stderr,unknown\n3,0,1,0.000000,0.000000,0\n");
    }

    #[test]
    fn complete_graphon_always_succeeds() {
        let one = StepGraphon::new(Partition::unit(), vec![vec![int(1)]]).unwrap();
        let mut cfg = EstimateConfig::new(one, vec![2, 7]);
        cfg.trials = 5;
        cfg.mode = EstimateMode::Cycle;
        let rows = run_estimate(&cfg).unwrap();
        assert!(rows.iter().all(|r| r.successes == 5));
    }

    #[test]
    fn config_errors() {
        let one = StepGraphon::new(Partition::unit(), vec![vec![int(1)]]).unwrap();
        let mut cfg = EstimateConfig::new(one, vec![]);
        assert!(run_estimate(&cfg).is_err());
        cfg.n_values = vec![61];
        cfg.mode = EstimateMode::Cycle;
        assert!(run_estimate(&cfg).is_err());
        cfg.trials = 0;
        cfg.mode = EstimateMode::Decomposition;
        assert!(run_estimate(&cfg).is_err());
    }

    #[test]
    fn csv_decimals() {
        let rows = [EstimateRow { n: 10, successes: 2, trials: 3, unknown: 1 }];
        assert_eq!(rows_to_csv(&rows).lines().nth(1), Some("10,2,3,0.666667,0.272166,1"));
    }
}
