//! Baseline strategy: runs are subsegments of the input; each merge copies the
//! smaller run to an auxiliary buffer and merges back into the original span.

use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{Ctx, MergeKind, MergeStrategy, Seg};
use crate::merge::{merge_back, merge_fwd};
use crate::runs::extract_run_len;

pub(crate) struct CpythonStrategy<'a, T> {
    data: &'a mut [T],
    /// Scratch for the smaller merge input, allocated once at `ceil(n/2)`
    /// capacity. Logically empty between merges.
    aux: Vec<T>,
    work: usize,
}

impl<'a, T: Copy> CpythonStrategy<'a, T> {
    pub fn new<F>(data: &'a mut [T], ctx: &mut Ctx<'_, F>) -> Self {
        let cap = data.len().div_ceil(2);
        // The filler value models an uninitialized buffer; it is never read.
        let aux = vec![data[0]; cap];
        ctx.stats.note_extra_words(cap as u64 * ctx.payload_words);
        CpythonStrategy { data, aux, work: 0 }
    }
}

impl<T: Copy, F: FnMut(&T, &T) -> bool> MergeStrategy<T, F> for CpythonStrategy<'_, T> {
    type Run = Seg;

    fn remaining(&self) -> usize {
        self.data.len() - self.work
    }

    fn extract_run(&mut self, min_len: usize, ctx: &mut Ctx<'_, F>) -> Seg {
        let len = extract_run_len(&mut self.data[self.work..], min_len, ctx);
        let run = Seg { lo: self.work, hi: self.work + len };
        self.work = run.hi;
        run
    }

    fn bounds(run: &Seg) -> (usize, usize) {
        (run.lo, run.hi)
    }

    fn merge(&mut self, left: Seg, right: Seg, _kind: MergeKind, ctx: &mut Ctx<'_, F>) -> Seg {
        let (i, j, k) = (left.lo, left.hi, right.hi);
        debug_assert_eq!(left.hi, right.lo);
        let (left_len, right_len) = (j - i, k - j);
        if left_len <= right_len {
            // Copy the left run out, merge forward; ties take the copy.
            self.aux[..left_len].copy_from_slice(&self.data[i..j]);
            ctx.moved(left_len as u64);
            merge_fwd(&self.aux[..left_len], &mut self.data[i..k], left_len, ctx);
        } else {
            // Copy the right run out, merge backward; ties take the copy.
            self.aux[..right_len].copy_from_slice(&self.data[j..k]);
            ctx.moved(right_len as u64);
            merge_back(&mut self.data[i..k], left_len, &self.aux[..right_len], ctx);
        }
        Seg { lo: i, hi: k }
    }

    fn finish(&mut self, _curr: Seg, _ctx: &mut Ctx<'_, F>) {
        // Runs live in the input; the final run already is the sorted array.
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::MergeStrategy;
    use crate::MergeStats;

    fn merge_spans<T: Copy + Ord>(data: &mut [T], mid: usize) -> MergeStats {
        let mut stats = MergeStats::default();
        let mut ctx = Ctx::new(|a: &T, b: &T| a < b, &mut stats, 1);
        let n = data.len();
        let mut s = CpythonStrategy::new(data, &mut ctx);
        let left = Seg { lo: 0, hi: mid };
        let right = Seg { lo: mid, hi: n };
        let kind = MergeKind::Collapse { last_pop: false };
        let out = MergeStrategy::<T, _>::merge(&mut s, left, right, kind, &mut ctx);
        assert_eq!((out.lo, out.hi), (0, n));
        stats
    }

    #[test]
    fn interleaved_merge_stays_within_the_copy_budget() {
        let mut data = [1u32, 3, 2, 4];
        let stats = merge_spans(&mut data, 2);
        assert_eq!(data, [1, 2, 3, 4]);
        // Copy of the smaller run (2) plus three writes; the in-place tail
        // needs none. Bound: |smaller| + span = 6.
        assert_eq!(stats.moves, 5);
    }

    #[test]
    fn ordered_concatenation_still_pays_the_copy_back() {
        let mut data = [1u32, 2, 3, 4];
        let stats = merge_spans(&mut data, 2);
        assert_eq!(data, [1, 2, 3, 4]);
        // The left run is copied out and written back even though nothing
        // interleaves.
        assert_eq!(stats.moves, 4);
    }

    #[test]
    fn equal_keys_favor_the_left_run() {
        let mut data = [(2u32, 0u32), (2, 1)];
        let mut stats = MergeStats::default();
        let mut ctx = Ctx::new(|a: &(u32, u32), b: &(u32, u32)| a.0 < b.0, &mut stats, 1);
        let mut s = CpythonStrategy::new(&mut data, &mut ctx);
        let kind = MergeKind::Collapse { last_pop: false };
        MergeStrategy::<(u32, u32), _>::merge(
            &mut s,
            Seg { lo: 0, hi: 1 },
            Seg { lo: 1, hi: 2 },
            kind,
            &mut ctx,
        );
        assert_eq!(data, [(2, 0), (2, 1)]);
    }

    #[test]
    fn smaller_right_run_merges_backward() {
        let mut data = [1u32, 3, 5, 2];
        let stats = merge_spans(&mut data, 3);
        assert_eq!(data, [1, 2, 3, 5]);
        // Copy of the one-element right run, two left-run elements shifted,
        // one write for the copy; the left prefix [1] never moves.
        assert_eq!(stats.moves, 4);
    }
}
