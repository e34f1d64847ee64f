//! Pingpong strategy: runs parked on the merge stack live in a full-size
//! auxiliary array (`stack_buf`), while the work area and the current/next
//! runs stay in the input. A merge reads from both arrays and writes each
//! element once, so the only extra traffic is one copy per element when a
//! freshly detected run is pushed.

use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{Ctx, MergeKind, MergeStrategy, Seg};
use crate::merge::{merge_back, merge_fwd};
use crate::runs::extract_run_len;

/// A run plus which array currently holds it. A run at `[lo, hi)` occupies
/// that same index range of whichever array it resides in.
#[derive(Copy, Clone, Debug)]
pub(crate) struct PpRun {
    seg: Seg,
    in_stack_buf: bool,
}

pub(crate) struct PingpongStrategy<'a, T> {
    data: &'a mut [T],
    stack_buf: Vec<T>,
    work: usize,
    /// When set, the final pop of a collapse merges right-to-left into
    /// `stack_buf`, so the push that follows needs no copy.
    last_pop: bool,
}

impl<'a, T: Copy> PingpongStrategy<'a, T> {
    pub fn new<F>(data: &'a mut [T], last_pop: bool, ctx: &mut Ctx<'_, F>) -> Self {
        let n = data.len();
        // Full-size mirror allocation; the filler is never read.
        let stack_buf = vec![data[0]; n];
        ctx.stats.note_extra_words(n as u64 * ctx.payload_words);
        PingpongStrategy { data, stack_buf, work: 0, last_pop }
    }
}

impl<T: Copy, F: FnMut(&T, &T) -> bool> MergeStrategy<T, F> for PingpongStrategy<'_, T> {
    type Run = PpRun;

    fn remaining(&self) -> usize {
        self.data.len() - self.work
    }

    fn extract_run(&mut self, min_len: usize, ctx: &mut Ctx<'_, F>) -> PpRun {
        let len = extract_run_len(&mut self.data[self.work..], min_len, ctx);
        let seg = Seg { lo: self.work, hi: self.work + len };
        self.work = seg.hi;
        PpRun { seg, in_stack_buf: false }
    }

    fn bounds(run: &PpRun) -> (usize, usize) {
        (run.seg.lo, run.seg.hi)
    }

    fn merge(&mut self, left: PpRun, right: PpRun, kind: MergeKind, ctx: &mut Ctx<'_, F>) -> PpRun {
        // Merges only ever pair a stacked run with the current one.
        debug_assert!(left.in_stack_buf && !right.in_stack_buf);
        let (i, j, k) = (left.seg.lo, left.seg.hi, right.seg.hi);
        debug_assert_eq!(left.seg.hi, right.seg.lo);

        let into_stack_buf =
            self.last_pop && matches!(kind, MergeKind::Collapse { last_pop: true });
        if into_stack_buf {
            // The result is pushed immediately after: produce it in the stack
            // buffer by merging right-to-left over the left run in place.
            merge_back(&mut self.stack_buf[i..k], j - i, &self.data[j..k], ctx);
            PpRun { seg: Seg { lo: i, hi: k }, in_stack_buf: true }
        } else {
            merge_fwd(&self.stack_buf[i..j], &mut self.data[i..k], j - i, ctx);
            PpRun { seg: Seg { lo: i, hi: k }, in_stack_buf: false }
        }
    }

    fn before_push(&mut self, run: PpRun, ctx: &mut Ctx<'_, F>) -> PpRun {
        if run.in_stack_buf {
            // Already resident (placed by a last-pop merge); pushing is free.
            return run;
        }
        let (lo, hi) = (run.seg.lo, run.seg.hi);
        self.stack_buf[lo..hi].copy_from_slice(&self.data[lo..hi]);
        ctx.moved((hi - lo) as u64);
        PpRun { seg: run.seg, in_stack_buf: true }
    }

    fn finish(&mut self, curr: PpRun, _ctx: &mut Ctx<'_, F>) {
        // Unwind merges never target the stack buffer, so the sorted result
        // already sits in the input and there is nothing to copy.
        debug_assert!(!curr.in_stack_buf);
    }
}
