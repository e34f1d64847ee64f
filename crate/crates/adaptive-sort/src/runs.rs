//! Run detection and min-run boosting, shared by every strategy.

use crate::engine::Ctx;

/// Minimum run length for an array of `n` elements: starting from `n`,
/// repeatedly halve rounding up until the value drops below 64. Inputs shorter
/// than 64 come back unchanged.
///
/// Panics if `n == 0`.
pub fn min_run_length(n: usize) -> usize {
    assert!(n >= 1, "minimum run length of an empty array");
    let mut len = n;
    while len >= 64 {
        len = len.div_ceil(2);
    }
    len
}

/// Length of the maximal non-decreasing prefix of `v`. Each adjacent pair is
/// compared exactly once; descending prefixes are not reversed.
fn natural_run_len<T, F: FnMut(&T, &T) -> bool>(v: &[T], ctx: &mut Ctx<'_, F>) -> usize {
    let mut len = 1;
    while len < v.len() && !ctx.less(&v[len], &v[len - 1]) {
        len += 1;
    }
    len
}

/// Detects the next run at the front of `v` and, if it is shorter than
/// `min_len`, extends it to `min(min_len, v.len())` by a stable binary
/// insertion sort. Returns the length of the resulting run.
pub(crate) fn extract_run_len<T: Copy, F: FnMut(&T, &T) -> bool>(
    v: &mut [T],
    min_len: usize,
    ctx: &mut Ctx<'_, F>,
) -> usize {
    debug_assert!(!v.is_empty());
    let natural = natural_run_len(v, ctx);
    let target = min_len.min(v.len());
    if natural >= target {
        return natural;
    }
    for i in natural..target {
        // Upper-bound position of v[i] in the sorted prefix v[..i], so equal
        // keys keep their input order.
        let mut lo = 0;
        let mut hi = i;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if ctx.less(&v[i], &v[mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if lo < i {
            let tmp = v[i];
            v.copy_within(lo..i, lo + 1);
            v[lo] = tmp;
            // Temporary materialization, the shifted block, and the placement.
            ctx.moved(1 + (i - lo) as u64 + 1);
        }
    }
    target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::MergeStats;

    fn ctx(stats: &mut MergeStats) -> Ctx<'_, impl FnMut(&u32, &u32) -> bool> {
        Ctx::new(|a: &u32, b: &u32| a < b, stats, 1)
    }

    #[test]
    fn min_run_length_matches_halving_rule() {
        assert_eq!(min_run_length(63), 63);
        assert_eq!(min_run_length(64), 32);
        assert_eq!(min_run_length(1), 1);
        assert_eq!(min_run_length(10_000_000), 39);
    }

    #[test]
    #[should_panic(expected = "empty array")]
    fn min_run_length_rejects_zero() {
        min_run_length(0);
    }

    #[test]
    fn sorted_input_is_one_run() {
        let mut v = [1u32, 2, 3];
        let mut stats = MergeStats::default();
        let len = extract_run_len(&mut v, 1, &mut ctx(&mut stats));
        assert_eq!(len, 3);
        assert_eq!(v, [1, 2, 3]);
    }

    #[test]
    fn short_run_is_boosted_by_insertion_sort() {
        let mut v = [3u32, 1, 2];
        let mut stats = MergeStats::default();
        let len = extract_run_len(&mut v, 3, &mut ctx(&mut stats));
        assert_eq!(len, 3);
        assert_eq!(v, [1, 2, 3]);
        assert!(stats.moves > 0);
    }

    #[test]
    fn long_enough_prefix_is_not_extended() {
        let mut v = [5u32, 7, 2, 9];
        let mut stats = MergeStats::default();
        let len = extract_run_len(&mut v, 2, &mut ctx(&mut stats));
        assert_eq!(len, 2);
        assert_eq!(v, [5, 7, 2, 9]);
    }

    #[test]
    fn boosting_is_stable_for_equal_keys() {
        // Key is the first tuple field; the second tags input order.
        let mut v = [(2u32, 0u32), (1, 1), (1, 2), (1, 3)];
        let mut stats = MergeStats::default();
        let mut ctx = Ctx::new(|a: &(u32, u32), b: &(u32, u32)| a.0 < b.0, &mut stats, 1);
        let len = extract_run_len(&mut v, 4, &mut ctx);
        assert_eq!(len, 4);
        assert_eq!(v, [(1, 1), (1, 2), (1, 3), (2, 0)]);
    }

    #[test]
    fn boost_target_is_clamped_to_remaining_work() {
        let mut v = [2u32, 1];
        let mut stats = MergeStats::default();
        let len = extract_run_len(&mut v, 64, &mut ctx(&mut stats));
        assert_eq!(len, 2);
        assert_eq!(v, [1, 2]);
    }
}
