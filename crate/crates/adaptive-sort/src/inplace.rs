//! Bufferless strategy: merges happen inside the input array by binary search
//! and block rotation, using only the recursion stack as extra space.
//!
//! This reproduces the classic divide-and-conquer in-place merge: pick the
//! median of the longer run, binary-search its stable insertion point in the
//! other run, rotate the two middle blocks past each other, and recurse on
//! both halves. Merging runs of total length m costs O(m log m) element moves,
//! which is what makes this strategy a lower baseline rather than a contender.

use crate::engine::{Ctx, MergeKind, MergeStrategy, Seg};
use crate::runs::extract_run_len;
use crate::stats::MergeStats;

pub(crate) struct InplaceStrategy<'a, T> {
    data: &'a mut [T],
    work: usize,
}

impl<'a, T: Copy> InplaceStrategy<'a, T> {
    pub fn new(data: &'a mut [T]) -> Self {
        InplaceStrategy { data, work: 0 }
    }
}

impl<T: Copy, F: FnMut(&T, &T) -> bool> MergeStrategy<T, F> for InplaceStrategy<'_, T> {
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
        debug_assert_eq!(left.hi, right.lo);
        merge_rec(self.data, left.lo, left.hi, right.hi, ctx);
        Seg { lo: left.lo, hi: right.hi }
    }

    fn finish(&mut self, _curr: Seg, _ctx: &mut Ctx<'_, F>) {}
}

/// Stable bufferless merge of the sorted runs `v[..mid]` and `v[mid..]`.
///
/// Exposed so the merge can be measured in isolation; `stats` receives the
/// comparison and move counts (a swap counts as three moves, matching a
/// temporary-based exchange).
pub fn merge_in_place<T: Copy, F: FnMut(&T, &T) -> bool>(
    v: &mut [T],
    mid: usize,
    stats: &mut MergeStats,
    is_less: F,
) {
    assert!(mid <= v.len(), "merge split point out of bounds");
    let mut ctx = Ctx::new(is_less, stats, 1);
    merge_rec(v, 0, mid, v.len(), &mut ctx);
}

fn merge_rec<T: Copy, F: FnMut(&T, &T) -> bool>(
    v: &mut [T],
    lo: usize,
    mid: usize,
    hi: usize,
    ctx: &mut Ctx<'_, F>,
) {
    let len1 = mid - lo;
    let len2 = hi - mid;
    if len1 == 0 || len2 == 0 {
        return;
    }
    if len1 + len2 == 2 {
        if ctx.less(&v[mid], &v[lo]) {
            swap(v, lo, mid, ctx);
        }
        return;
    }

    // Cut the longer run at its median; the bound direction keeps equal keys
    // stable (left-run pivots insert before equal right-run elements, right-run
    // pivots insert after equal left-run elements).
    let (cut1, cut2);
    if len1 > len2 {
        cut1 = lo + len1 / 2;
        let pivot = v[cut1];
        cut2 = lower_bound(v, mid, hi, &pivot, ctx);
    } else {
        cut2 = mid + len2 / 2;
        let pivot = v[cut2];
        cut1 = upper_bound(v, lo, mid, &pivot, ctx);
    }
    rotate(v, cut1, mid, cut2, ctx);
    let new_mid = cut1 + (cut2 - mid);
    merge_rec(v, lo, cut1, new_mid, ctx);
    merge_rec(v, new_mid, cut2, hi, ctx);
}

/// First index in `[lo, hi)` whose element is not less than `pivot`.
fn lower_bound<T, F: FnMut(&T, &T) -> bool>(
    v: &[T],
    mut lo: usize,
    mut hi: usize,
    pivot: &T,
    ctx: &mut Ctx<'_, F>,
) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ctx.less(&v[mid], pivot) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// First index in `[lo, hi)` whose element is greater than `pivot`.
fn upper_bound<T, F: FnMut(&T, &T) -> bool>(
    v: &[T],
    mut lo: usize,
    mut hi: usize,
    pivot: &T,
    ctx: &mut Ctx<'_, F>,
) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ctx.less(pivot, &v[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Rotates `v[lo..hi]` so that `v[mid..hi]` ends up before `v[lo..mid]`,
/// via triple reversal.
fn rotate<T: Copy, F>(v: &mut [T], lo: usize, mid: usize, hi: usize, ctx: &mut Ctx<'_, F>) {
    if lo == mid || mid == hi {
        return;
    }
    reverse(v, lo, mid, ctx);
    reverse(v, mid, hi, ctx);
    reverse(v, lo, hi, ctx);
}

fn reverse<T: Copy, F>(v: &mut [T], lo: usize, hi: usize, ctx: &mut Ctx<'_, F>) {
    let mut a = lo;
    let mut b = hi;
    while a + 1 < b {
        b -= 1;
        swap(v, a, b, ctx);
        a += 1;
    }
}

#[inline]
fn swap<T: Copy, F>(v: &mut [T], a: usize, b: usize, ctx: &mut Ctx<'_, F>) {
    v.swap(a, b);
    // Temporary plus two assignments.
    ctx.moved(3);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn merged(mut v: alloc::vec::Vec<u32>, mid: usize) -> alloc::vec::Vec<u32> {
        let mut stats = MergeStats::default();
        merge_in_place(&mut v, mid, &mut stats, |a, b| a < b);
        v
    }

    #[test]
    fn interleaved_runs() {
        assert_eq!(merged(alloc::vec![1, 3, 2, 4], 2), alloc::vec![1, 2, 3, 4]);
    }

    #[test]
    fn equal_keys_stay_in_order() {
        let mut v = [(2u32, 0u32), (2, 1)];
        let mut stats = MergeStats::default();
        merge_in_place(&mut v, 1, &mut stats, |a, b| a.0 < b.0);
        assert_eq!(v, [(2, 0), (2, 1)]);
    }

    #[test]
    fn empty_sides_are_noops() {
        assert_eq!(merged(alloc::vec![1, 2, 3], 0), alloc::vec![1, 2, 3]);
        assert_eq!(merged(alloc::vec![1, 2, 3], 3), alloc::vec![1, 2, 3]);
    }
}
