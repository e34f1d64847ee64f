//! Workload generation, measured experiments, analytic bound checks, and CSV
//! output for the adaptive-sort strategies. The `adaptive-sort-bench` binary
//! is a thin CLI over this crate.

pub mod bounds;
pub mod csv;
pub mod experiment;
pub mod workload;

pub use bounds::{check_bounds, expected_entropy, vm_peak_budget, BoundCheck};
pub use csv::{emit_csv, CSV_HEADER};
pub use experiment::{
    run_experiment, run_grid, row_seed, Algo, ExperimentRow, GridSpec, RunConfig, DEFAULT_REPS,
    DEFAULT_SCALE, DEFAULT_SEED, DEFAULT_S_VALUES,
};
pub use workload::{
    blob_keys, draw_length, inject_presortedness, int_keys, tag, Blob, Profile, WorkloadSpec,
    BLOB_LEN,
};

/// Default seed: the `ADAPTIVE_SORT_SEED` environment variable when set,
/// otherwise 1.
pub fn seed_from_env() -> u64 {
    std::env::var("ADAPTIVE_SORT_SEED")
        .ok()
        .and_then(|value| value.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}
