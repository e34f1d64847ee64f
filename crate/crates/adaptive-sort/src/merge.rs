//! Merge kernels shared by the buffer strategies.
//!
//! All kernels implement the same stable merge: on equal keys the left run's
//! element is emitted first. Forward kernels take from the left run on ties,
//! backward kernels (which place the largest remaining element last) take from
//! the right run on ties. Both write each output element at most once and skip
//! the tail that is already in place.

use crate::engine::Ctx;

/// Forward merge of `a` (left run, in side storage) with `out[b_start..]`
/// (right run, in place), writing the result into `out` from index 0.
///
/// The write cursor trails the right run's read cursor, so the merge is safe
/// in place; if `a` is exhausted first the remaining right-run elements are
/// already in their final slots and are not touched.
pub(crate) fn merge_fwd<T: Copy, F: FnMut(&T, &T) -> bool>(
    a: &[T],
    out: &mut [T],
    b_start: usize,
    ctx: &mut Ctx<'_, F>,
) {
    debug_assert!(b_start == a.len() && b_start <= out.len());
    let mut ai = 0;
    let mut bi = b_start;
    let mut w = 0;
    while ai < a.len() && bi < out.len() {
        if ctx.less(&out[bi], &a[ai]) {
            out[w] = out[bi];
            bi += 1;
        } else {
            out[w] = a[ai];
            ai += 1;
        }
        ctx.moved(1);
        w += 1;
    }
    while ai < a.len() {
        out[w] = a[ai];
        ctx.moved(1);
        ai += 1;
        w += 1;
    }
    debug_assert!(bi == out.len() || w == bi);
}

/// Backward merge of `out[..a_len]` (left run, in place) with `b` (right run,
/// in side storage), writing the result into all of `out` from the back.
///
/// The write cursor trails the left run's read cursor from above; if `b` is
/// exhausted first the remaining left-run prefix is already in place.
pub(crate) fn merge_back<T: Copy, F: FnMut(&T, &T) -> bool>(
    out: &mut [T],
    a_len: usize,
    b: &[T],
    ctx: &mut Ctx<'_, F>,
) {
    debug_assert!(a_len + b.len() == out.len());
    let mut ai = a_len;
    let mut bi = b.len();
    let mut w = out.len();
    while ai > 0 && bi > 0 {
        if ctx.less(&b[bi - 1], &out[ai - 1]) {
            out[w - 1] = out[ai - 1];
            ai -= 1;
        } else {
            out[w - 1] = b[bi - 1];
            bi -= 1;
        }
        ctx.moved(1);
        w -= 1;
    }
    while bi > 0 {
        out[w - 1] = b[bi - 1];
        ctx.moved(1);
        bi -= 1;
        w -= 1;
    }
    debug_assert!(bi == 0 && (ai == 0 || w == ai));
}

/// Page-bounded merge step: merges as much as possible of `a[*xa..]` and
/// `b[*xb..]` into `out[*xr..]`, advancing all three cursors. On return at
/// least one of the three ranges is exhausted.
///
/// The output-capacity check is hoisted out of the inner loop: the remaining
/// output space shrinks by exactly one per emitted element, so the kernel runs
/// the plain two-condition merge loop for `min` of the three remaining counts
/// and only then re-checks the bounds. Comparison and write sequences are
/// identical to checking all three conditions every iteration, and, as long as
/// no page boundary interrupts, to [`merge_fwd`].
pub(crate) fn page_merge<T: Copy, F: FnMut(&T, &T) -> bool>(
    a: &[T],
    xa: &mut usize,
    b: &[T],
    xb: &mut usize,
    out: &mut [T],
    xr: &mut usize,
    ctx: &mut Ctx<'_, F>,
) {
    loop {
        let batch = (a.len() - *xa).min(b.len() - *xb).min(out.len() - *xr);
        if batch == 0 {
            return;
        }
        for _ in 0..batch {
            if ctx.less(&b[*xb], &a[*xa]) {
                out[*xr] = b[*xb];
                *xb += 1;
            } else {
                out[*xr] = a[*xa];
                *xa += 1;
            }
            ctx.moved(1);
            *xr += 1;
        }
    }
}
