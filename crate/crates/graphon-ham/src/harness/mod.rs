//! Operations behind the command-line tool.

mod construct;
mod estimate;
mod format;
mod presets;

pub use construct::{construct, Construction, Target, SPLIT_LIMIT};
pub use estimate::{
    rows_to_csv, run_estimate, seed_for, EstimateConfig, EstimateMode, EstimateRow, CSV_HEADER, CYCLE_MODE_LIMIT,
    DEFAULT_SEED, DEFAULT_TRIALS,
};
pub use format::{graphon_to_json, parse_graphon_json, parse_int_list};
pub use presets::{preset, PRESET_NAMES};

use serde_json::Value;

use crate::error::Result;
use crate::graphon::StepGraphon;
use crate::skeleton::check_conditions_with_cap;

/// Condition report as JSON.
pub fn analyze(w: &StepGraphon, cycle_cap: usize) -> Result<Value> {
    Ok(check_conditions_with_cap(w, cycle_cap)?.to_json())
}
