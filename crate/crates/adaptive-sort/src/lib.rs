//! Stable, run-adaptive mergesort built around the powersort merge policy, with
//! interchangeable merge-buffer strategies and exact cost instrumentation.
//!
//! The sorting loop detects maximal non-decreasing runs and merges them in the
//! order dictated by run-boundary *powers*, which keeps the total merge cost
//! within `n * (H + 2)` of the run-length entropy `H` of the input. What varies
//! between the strategies is only where merge inputs and outputs live:
//!
//! * [`Strategy::Cpython`] — merges copy the smaller run to an auxiliary buffer
//!   of `ceil(n/2)` elements and merge back in place.
//! * [`Strategy::Pingpong`] — runs parked on the merge stack live in a full-size
//!   auxiliary array; merges write straight from (stack buffer, input) into the
//!   input, avoiding extraneous copies.
//! * [`Strategy::Vm`] — runs are sequences of fixed-size pages recycled through
//!   a free list, cutting extra memory to `O(sqrt(n T log n))` words.
//! * [`Strategy::Inplace`] — a rotation-based bufferless merge; correct and
//!   nearly in place, but move-hungry.
//!
//! Every sort returns a [`SortReport`] with the counters needed to check the
//! per-strategy cost budgets, plus the run decomposition actually merged.
//!
//! The crate is `no_std` (it allocates through `alloc` only); all IO, workload
//! generation and the benchmark CLI live in the companion `adaptive-sort-bench`
//! crate.

#![no_std]

extern crate alloc;

use alloc::vec::Vec;

mod cpython;
mod engine;
mod inplace;
mod merge;
mod pingpong;
mod power;
mod runs;
mod stats;
mod verify;
mod vm;

pub use inplace::merge_in_place;
pub use power::node_power;
pub use runs::min_run_length;
pub use stats::{run_length_entropy, MergeStats};
pub use verify::{stability_oracle, Item};
pub use vm::{page_size as vm_page_size, VmReport};

use engine::Ctx;

/// Which merge-buffer implementation backs the sort.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Copy the smaller run out to a `ceil(n/2)`-element buffer, merge back.
    Cpython,
    /// Full-size stack buffer; merges ping-pong between it and the input.
    Pingpong,
    /// Paged virtual runs drawn from a free list.
    Vm,
    /// Rotation-based bufferless merging.
    Inplace,
}

/// Minimum run length policy used to boost short detected runs by insertion
/// sort before they enter the merge machinery.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MinRun {
    /// Halve `n` (rounding up) until the value drops below 64.
    TimsortRule,
    /// Boost every run to at least this many elements (must be >= 1).
    /// `Fixed(1)` disables boosting: natural runs are used as detected.
    Fixed(usize),
}

impl MinRun {
    fn resolve(self, n: usize) -> usize {
        match self {
            MinRun::TimsortRule => min_run_length(n),
            MinRun::Fixed(len) => {
                assert!(len >= 1, "minimum run length must be at least 1");
                len
            }
        }
    }
}

/// Configuration for one sort call.
#[derive(Copy, Clone, Debug)]
pub struct SortConfig {
    pub strategy: Strategy,
    pub min_run: MinRun,
    /// Size of one element in words, used only for extra-memory accounting.
    pub payload_words: u64,
    /// Pingpong only: let the final pop of a merge cascade write its result
    /// directly into the stack buffer, making the following push free.
    pub pingpong_last_pop: bool,
}

impl SortConfig {
    pub fn new(strategy: Strategy) -> Self {
        SortConfig {
            strategy,
            min_run: MinRun::TimsortRule,
            payload_words: 1,
            pingpong_last_pop: true,
        }
    }

    pub fn min_run(mut self, min_run: MinRun) -> Self {
        self.min_run = min_run;
        self
    }

    pub fn payload_words(mut self, words: u64) -> Self {
        self.payload_words = words;
        self
    }

    pub fn pingpong_last_pop(mut self, enabled: bool) -> Self {
        self.pingpong_last_pop = enabled;
        self
    }
}

/// Everything observed during one sort.
#[derive(Clone, Debug, Default)]
pub struct SortReport {
    pub stats: MergeStats,
    /// Lengths of the runs actually fed to the merge policy, in input order
    /// (after min-run boosting). Sums to the input length.
    pub run_lengths: Vec<usize>,
    /// Page bookkeeping details; present only for [`Strategy::Vm`].
    pub vm: Option<VmReport>,
}

/// Stably sorts `data` with the configured strategy, using `Ord`.
pub fn sort<T: Copy + Ord>(data: &mut [T], config: &SortConfig) -> SortReport {
    sort_by(data, config, |a, b| a < b)
}

/// Stably sorts `data` by the comparator `is_less`.
///
/// All key comparisons made anywhere in the sort go through `is_less` and are
/// counted; `data` ends up in non-decreasing order with equal elements in
/// their original relative order.
pub fn sort_by<T: Copy, F: FnMut(&T, &T) -> bool>(
    data: &mut [T],
    config: &SortConfig,
    is_less: F,
) -> SortReport {
    let mut report = SortReport::default();
    let n = data.len();
    if n <= 1 {
        // Degenerate inputs never touch strategy machinery.
        if n == 1 {
            report.run_lengths.push(1);
        }
        return report;
    }

    let min_run = config.min_run.resolve(n);
    let mut ctx = Ctx::new(is_less, &mut report.stats, config.payload_words);
    match config.strategy {
        Strategy::Cpython => {
            let mut s = cpython::CpythonStrategy::new(data, &mut ctx);
            engine::drive(&mut s, n, min_run, &mut ctx, &mut report.run_lengths);
        }
        Strategy::Pingpong => {
            let mut s =
                pingpong::PingpongStrategy::new(data, config.pingpong_last_pop, &mut ctx);
            engine::drive(&mut s, n, min_run, &mut ctx, &mut report.run_lengths);
        }
        Strategy::Vm => {
            let mut s = vm::VmStrategy::new(data, &mut ctx);
            engine::drive(&mut s, n, min_run, &mut ctx, &mut report.run_lengths);
            report.vm = Some(s.report());
        }
        Strategy::Inplace => {
            let mut s = inplace::InplaceStrategy::new(data);
            engine::drive(&mut s, n, min_run, &mut ctx, &mut report.run_lengths);
        }
    }
    report
}
