//! The strategy-agnostic sorting loop: run extraction, the power-ordered merge
//! stack, and the final unwinding.

use alloc::vec::Vec;

use crate::power::node_power;
use crate::stats::MergeStats;

/// Per-sort context: the injected comparator plus the counters. Strategies
/// never compare keys directly; every comparison funnels through [`Ctx::less`]
/// so the count has a single audit point.
pub(crate) struct Ctx<'a, F> {
    is_less: F,
    pub stats: &'a mut MergeStats,
    /// Element size in words, for extra-memory accounting only.
    pub payload_words: u64,
}

impl<'a, F> Ctx<'a, F> {
    pub fn new(is_less: F, stats: &'a mut MergeStats, payload_words: u64) -> Self {
        Ctx { is_less, stats, payload_words }
    }

    #[inline]
    pub fn less<T>(&mut self, a: &T, b: &T) -> bool
    where
        F: FnMut(&T, &T) -> bool,
    {
        self.stats.comparisons += 1;
        (self.is_less)(a, b)
    }

    #[inline]
    pub fn moved(&mut self, count: u64) {
        self.stats.moves += count;
    }
}

/// A run handle: the `[lo, hi)` span it occupies in the input.
#[derive(Copy, Clone, Debug)]
pub(crate) struct Seg {
    pub lo: usize,
    pub hi: usize,
}

/// Where in the merge loop a merge happens. Strategies may use this to pick a
/// merge direction; the merged runs and the resulting order are the same
/// either way.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) enum MergeKind {
    /// Merge inside the stack-collapse loop. `last_pop` is true when this pop
    /// empties the collapse condition, i.e. the result is pushed right after.
    Collapse { last_pop: bool },
    /// Merge during the final unwinding once the input is exhausted.
    Unwind,
}

/// One merge-buffer implementation. Buffers hold contiguous subsegments of the
/// input's index space; `bounds` reports that segment, and `merge` requires
/// its two runs to be adjacent.
pub(crate) trait MergeStrategy<T, F: FnMut(&T, &T) -> bool> {
    type Run;

    /// Elements not yet extracted into runs.
    fn remaining(&self) -> usize;

    /// Detaches the next run (boosted to `min_len` if needed) from the front
    /// of the unsorted work area.
    fn extract_run(&mut self, min_len: usize, ctx: &mut Ctx<'_, F>) -> Self::Run;

    /// The `[lo, hi)` segment of input index space this run covers.
    fn bounds(run: &Self::Run) -> (usize, usize);

    /// Stable merge of two adjacent runs; returns the merged run.
    fn merge(
        &mut self,
        left: Self::Run,
        right: Self::Run,
        kind: MergeKind,
        ctx: &mut Ctx<'_, F>,
    ) -> Self::Run;

    /// Called right before a run is parked on the merge stack.
    fn before_push(&mut self, run: Self::Run, ctx: &mut Ctx<'_, F>) -> Self::Run {
        let _ = ctx;
        run
    }

    /// Consumes the single remaining run and leaves the sorted result in the
    /// original array.
    fn finish(&mut self, curr: Self::Run, ctx: &mut Ctx<'_, F>);
}

/// Runs the full adaptive sort over `strategy`. `n >= 2`; trivial inputs are
/// handled by the caller.
///
/// The stack keeps run powers strictly increasing bottom to top: before a new
/// boundary of power `p` is pushed, every stacked run with power >= p is
/// merged into the current run.
pub(crate) fn drive<T, F, S>(
    strategy: &mut S,
    n: usize,
    min_run: usize,
    ctx: &mut Ctx<'_, F>,
    run_lengths: &mut Vec<usize>,
) where
    F: FnMut(&T, &T) -> bool,
    S: MergeStrategy<T, F>,
{
    debug_assert!(n >= 2 && n == strategy.remaining());
    let mut stack: Vec<(S::Run, u32)> = Vec::new();

    let mut curr = strategy.extract_run(min_run, ctx);
    run_lengths.push(run_len::<T, F, S>(&curr));

    while strategy.remaining() > 0 {
        let next = strategy.extract_run(min_run, ctx);
        run_lengths.push(run_len::<T, F, S>(&next));

        let (ci, cj) = S::bounds(&curr);
        let (nj, nk) = S::bounds(&next);
        debug_assert_eq!(cj, nj, "extracted runs must be adjacent");
        let p = node_power(n, ci, cj, nk);

        while let Some(&(_, top_power)) = stack.last() {
            if top_power < p {
                break;
            }
            // The collapse ends after this pop iff the run below (if any)
            // already has a smaller power.
            let last_pop = match stack.len() {
                1 => true,
                len => stack[len - 2].1 < p,
            };
            let (top, _) = stack.pop().unwrap();
            record_merge::<T, F, S>(&top, &curr, ctx);
            curr = strategy.merge(top, curr, MergeKind::Collapse { last_pop }, ctx);
        }

        debug_assert!(
            stack.last().is_none_or(|&(_, top_power)| top_power < p),
            "stack powers must stay strictly increasing"
        );
        let run = strategy.before_push(curr, ctx);
        stack.push((run, p));
        ctx.stats.note_stack_height(stack.len());
        curr = next;
    }

    while let Some((top, _)) = stack.pop() {
        record_merge::<T, F, S>(&top, &curr, ctx);
        curr = strategy.merge(top, curr, MergeKind::Unwind, ctx);
    }

    let (lo, hi) = S::bounds(&curr);
    debug_assert!(lo == 0 && hi == n, "final run must cover the whole input");
    strategy.finish(curr, ctx);
}

fn run_len<T, F: FnMut(&T, &T) -> bool, S: MergeStrategy<T, F>>(run: &S::Run) -> usize {
    let (lo, hi) = S::bounds(run);
    hi - lo
}

fn record_merge<T, F: FnMut(&T, &T) -> bool, S: MergeStrategy<T, F>>(
    left: &S::Run,
    right: &S::Run,
    ctx: &mut Ctx<'_, F>,
) {
    let (li, lj) = S::bounds(left);
    let (rj, rk) = S::bounds(right);
    debug_assert_eq!(lj, rj, "merged runs must be adjacent");
    ctx.stats.record_merge(lj - li, rk - rj);
}
