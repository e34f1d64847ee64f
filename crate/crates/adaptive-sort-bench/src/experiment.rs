//! Running one measured sort, and grids of them.
//!
//! An experiment generates its input from a [`WorkloadSpec`], sorts with the
//! requested algorithm, verifies the output against the stability oracle (and
//! optionally a reference stable sort), and only then reports a row. Rows for
//! unverified output do not exist.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use adaptive_sort::{
    run_length_entropy, sort_by, stability_oracle, Item, MinRun, SortConfig, Strategy,
};
use anyhow::{bail, Result};
use rayon::prelude::*;

use crate::workload::{
    blob_keys, draw_length, inject_presortedness, int_keys, tag, Profile, WorkloadSpec,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algo {
    Cpython,
    Pingpong,
    Vm,
    Inplace,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Cpython, Algo::Pingpong, Algo::Vm, Algo::Inplace];

    pub fn id(self) -> &'static str {
        match self {
            Algo::Cpython => "cpython",
            Algo::Pingpong => "pingpong",
            Algo::Vm => "vm",
            Algo::Inplace => "inplace",
        }
    }

    pub fn strategy(self) -> Strategy {
        match self {
            Algo::Cpython => Strategy::Cpython,
            Algo::Pingpong => Strategy::Pingpong,
            Algo::Vm => Strategy::Vm,
            Algo::Inplace => Strategy::Inplace,
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algo::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected cpython, pingpong, vm or inplace)"))
    }
}

/// Sort options shared by all experiments of one invocation.
#[derive(Copy, Clone, Debug)]
pub struct RunConfig {
    pub min_run: MinRun,
    /// Additionally compare the output against a reference stable sort (the
    /// O(n) sortedness+stability oracle always runs).
    pub verify_reference: bool,
    pub pingpong_last_pop: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            min_run: MinRun::Fixed(1),
            verify_reference: false,
            pingpong_last_pop: true,
        }
    }
}

/// One verified measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRow {
    pub algo: Algo,
    pub profile: Profile,
    pub n: u64,
    pub presort: u64,
    pub seed: u64,
    pub comparisons: u64,
    pub moves: u64,
    pub merge_cost: u64,
    /// Run-length entropy of the decomposition the sort actually merged.
    pub entropy_bits: f64,
    pub peak_extra_words: u64,
    pub max_stack_height: u64,
    pub wall_time_ns: u64,
    /// Page-system detail (not part of the CSV): smallest free-list length at
    /// a page request, and forced swap evictions, for the vm algorithm.
    pub vm_min_free_at_take: Option<u64>,
    pub vm_swap_evictions: u64,
}

/// Generates the input for `spec`, sorts it with `algo`, verifies the output,
/// and reports the measured row.
pub fn run_experiment(spec: &WorkloadSpec, algo: Algo, cfg: &RunConfig) -> Result<ExperimentRow> {
    let mut rng = spec.rng();
    let n = draw_length(spec, &mut rng);
    match spec.profile {
        Profile::Int => {
            let mut keys = int_keys(n, &mut rng);
            inject_presortedness(&mut keys, spec.presort, &mut rng);
            measure(&keys, spec, algo, cfg)
        }
        Profile::Ptr => {
            let arena = blob_keys(n, true, &mut rng);
            let mut keys: Vec<&[u32; 30]> = arena.iter().collect();
            inject_presortedness(&mut keys, spec.presort, &mut rng);
            measure(&keys, spec, algo, cfg)
        }
        Profile::BlobRandom => {
            let mut keys = blob_keys(n, false, &mut rng);
            inject_presortedness(&mut keys, spec.presort, &mut rng);
            measure(&keys, spec, algo, cfg)
        }
        Profile::BlobZero => {
            let mut keys = blob_keys(n, true, &mut rng);
            inject_presortedness(&mut keys, spec.presort, &mut rng);
            measure(&keys, spec, algo, cfg)
        }
    }
}

fn measure<K: Copy + Ord>(
    keys: &[K],
    spec: &WorkloadSpec,
    algo: Algo,
    cfg: &RunConfig,
) -> Result<ExperimentRow> {
    let mut items = tag(keys);
    let config = SortConfig::new(algo.strategy())
        .min_run(cfg.min_run)
        .payload_words(spec.profile.payload_words())
        .pingpong_last_pop(cfg.pingpong_last_pop);

    let started = Instant::now();
    let report = sort_by(&mut items, &config, |a: &Item<K>, b: &Item<K>| a.key < b.key);
    let wall_time_ns = started.elapsed().as_nanos() as u64;

    if !stability_oracle(&items) {
        bail!(
            "correctness violation: algorithm {algo} failed the stability oracle on workload {spec}"
        );
    }
    if cfg.verify_reference {
        let mut expected = tag(keys);
        expected.sort_by_key(|a| a.key);
        if items != expected {
            bail!(
                "correctness violation: algorithm {algo} diverged from the reference stable sort on workload {spec}"
            );
        }
    }

    let entropy_bits =
        if report.run_lengths.is_empty() { 0.0 } else { run_length_entropy(&report.run_lengths) };
    Ok(ExperimentRow {
        algo,
        profile: spec.profile,
        n: items.len() as u64,
        presort: spec.presort,
        seed: spec.seed,
        comparisons: report.stats.comparisons,
        moves: report.stats.moves,
        merge_cost: report.stats.merge_cost,
        entropy_bits,
        peak_extra_words: report.stats.peak_extra_words,
        max_stack_height: report.stats.max_stack_height,
        wall_time_ns,
        vm_min_free_at_take: report.vm.and_then(|vm| vm.min_free_at_take.map(|m| m as u64)),
        vm_swap_evictions: report.vm.map_or(0, |vm| vm.swap_evictions),
    })
}

pub const DEFAULT_SCALE: u64 = 1_000_000;
pub const DEFAULT_REPS: u32 = 10;
pub const DEFAULT_S_VALUES: [u64; 6] = [2, 100, 1_000, 10_000, 100_000, 1_000_000];
pub const DEFAULT_SEED: u64 = 1;

/// Deterministic per-row seed: repetitions of the same (profile, S) cell share
/// it across algorithms so the algorithms sort identical inputs.
pub fn row_seed(base: u64, profile: Profile, presort: u64, rep: u32) -> u64 {
    let mut seed = splitmix(base ^ (profile as u64).wrapping_mul(0x9E3779B97F4A7C15));
    seed = splitmix(seed ^ presort);
    splitmix(seed ^ rep as u64)
}

fn splitmix(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// An (algorithm x profile x S x repetition) grid.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub algos: Vec<Algo>,
    pub profiles: Vec<Profile>,
    pub scale: u64,
    pub s_values: Vec<u64>,
    pub reps: u32,
    pub base_seed: u64,
}

impl GridSpec {
    pub fn default_grid(base_seed: u64) -> Self {
        GridSpec {
            algos: Algo::ALL.to_vec(),
            profiles: Profile::ALL.to_vec(),
            scale: DEFAULT_SCALE,
            s_values: DEFAULT_S_VALUES.to_vec(),
            reps: DEFAULT_REPS,
            base_seed,
        }
    }

    pub fn cells(&self) -> Vec<(WorkloadSpec, Algo)> {
        let mut cells = Vec::new();
        for &algo in &self.algos {
            for &profile in &self.profiles {
                for &presort in &self.s_values {
                    for rep in 0..self.reps {
                        let seed = row_seed(self.base_seed, profile, presort, rep);
                        cells.push((WorkloadSpec::new(profile, self.scale, presort, seed), algo));
                    }
                }
            }
        }
        cells
    }
}

/// Runs every cell of the grid; experiments are independent, so they run in
/// parallel with one sort context per worker. Row order matches `cells()`.
pub fn run_grid(grid: &GridSpec, cfg: &RunConfig) -> Result<Vec<ExperimentRow>> {
    grid.cells()
        .par_iter()
        .map(|(spec, algo)| run_experiment(spec, *algo, cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_deterministic() {
        let spec = WorkloadSpec::new(Profile::Int, 10_000, 100, 1);
        let cfg = RunConfig::default();
        let a = run_experiment(&spec, Algo::Vm, &cfg).unwrap();
        let b = run_experiment(&spec, Algo::Vm, &cfg).unwrap();
        assert_eq!(a.comparisons, b.comparisons);
        assert_eq!(a.moves, b.moves);
        assert_eq!(a.merge_cost, b.merge_cost);
        assert_eq!(a.entropy_bits, b.entropy_bits);
    }

    #[test]
    fn vm_row_respects_the_comparison_budget() {
        let spec = WorkloadSpec::new(Profile::Int, 10_000, 100, 1);
        let row = run_experiment(&spec, Algo::Vm, &RunConfig::default()).unwrap();
        assert!(row.comparisons <= row.merge_cost + row.n);
    }

    #[test]
    fn presorted_input_has_zero_merge_cost() {
        let spec = WorkloadSpec::new(Profile::Int, 1_000, 1_000_000_000_000, 3);
        for algo in Algo::ALL {
            let row = run_experiment(&spec, algo, &RunConfig::default()).unwrap();
            assert_eq!(row.merge_cost, 0, "{algo}");
            assert_eq!(row.entropy_bits, 0.0);
        }
    }

    #[test]
    fn reference_verification_passes_for_all_profiles() {
        let cfg = RunConfig { verify_reference: true, ..RunConfig::default() };
        for profile in Profile::ALL {
            let spec = WorkloadSpec::new(profile, 3_000, 100, 7);
            for algo in Algo::ALL {
                run_experiment(&spec, algo, &cfg).unwrap();
            }
        }
    }

    #[test]
    fn same_cell_shares_the_seed_across_algorithms() {
        let grid = GridSpec {
            algos: vec![Algo::Cpython, Algo::Vm],
            profiles: vec![Profile::Int],
            scale: 1_000,
            s_values: vec![100],
            reps: 2,
            base_seed: 9,
        };
        let cells = grid.cells();
        assert_eq!(cells.len(), 4);
        assert_eq!(cells[0].0, cells[2].0);
        assert_eq!(cells[1].0, cells[3].0);
        assert_ne!(cells[0].0.seed, cells[1].0.seed);
    }
}
