//! Paged virtual-memory strategy: runs are sequences of fixed-size pages.
//!
//! The input array is segmented into pages of `P` elements. A run is an
//! ordered list of pages: contiguous in logical order, scattered in physical
//! memory. Whenever a merge or the work cursor drains a page, the page joins a
//! free list and is reused as an output page, so apart from a small
//! pre-allocated reserve the sort recycles the input's own storage. Choosing
//! `P` near `sqrt(n / (T log2 n))` balances the reserve (about `log2 n` pages
//! of `P * T` words) against the page metadata (one word per page), for
//! `O(sqrt(n T log n))` extra words in total.
//!
//! Page lists are successor links stored in one flat array indexed by page id
//! (`next_page`), which is also where the free list lives. That keeps the
//! metadata at exactly one word per page and makes every list operation O(1).
//!
//! Merging works page by page: the kernel merges the front pages of both
//! inputs into the open output page and is re-invoked whenever one of the
//! three cursors hits a page boundary. Consumed input pages are released
//! before the next output page is requested, so a merge needs only O(1) pages
//! in flight. Runs always start at a page boundary and keep every page full
//! except the last; only the work area and merge inputs are consumed from the
//! front.

use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{Ctx, MergeKind, MergeStrategy};
use crate::merge::{merge_back, page_merge};
use crate::runs::extract_run_len;

const NIL: u32 = u32::MAX;

/// Page capacity in elements for an `n`-element sort of `payload_words`-word
/// elements: the largest power of two not above `sqrt(n / (T log2 n))`,
/// clamped to at least 16 and at most the largest power of two not above `n`.
pub fn page_size(n: usize, payload_words: u64) -> usize {
    assert!(n >= 1, "page size of an empty array");
    assert!(payload_words >= 1, "elements occupy at least one word");
    if n == 1 {
        return 1;
    }
    let ideal = libm::sqrt(n as f64 / (payload_words as f64 * libm::log2(n as f64)));
    let from_formula = prev_pow2(ideal as usize);
    from_formula.max(16).min(prev_pow2(n))
}

fn prev_pow2(x: usize) -> usize {
    if x == 0 {
        1
    } else {
        1 << (usize::BITS - 1 - x.leading_zeros())
    }
}

/// Page-system observations from one sort; see [`crate::SortReport`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct VmReport {
    /// Elements per page.
    pub page_len: usize,
    /// Pages the input array was segmented into.
    pub input_pages: usize,
    /// Pre-allocated extra pages seeding the free list.
    pub reserve_pages: usize,
    /// Smallest free-list length seen at the moment a page was requested;
    /// `None` if no page was ever requested. Any value >= 1 means the reserve
    /// never ran dry.
    pub min_free_at_take: Option<usize>,
    /// Copy-back evictions that had to swap through the consumed page because
    /// no reusable free page was available. Costs extra moves; expected 0.
    pub swap_evictions: u64,
}

/// A run as a linked list of pages. `front` is the consumed offset in the
/// head page (nonzero only while a merge eats the run); `back` is the fill of
/// the tail page. Middle pages are always full.
#[derive(Copy, Clone, Debug)]
pub(crate) struct PagedRun {
    head: u32,
    tail: u32,
    len: usize,
    front: usize,
    back: usize,
    lo: usize,
    hi: usize,
}

impl PagedRun {
    fn empty(lo: usize, hi: usize) -> Self {
        PagedRun { head: NIL, tail: NIL, len: 0, front: 0, back: 0, lo, hi }
    }
}

#[derive(Copy, Clone)]
struct PageGeom {
    page_len: usize,
    input_pages: usize,
    n: usize,
}

impl PageGeom {
    /// (lives in input array, start offset there, slot count) for a page.
    fn locate(&self, id: u32) -> (bool, usize, usize) {
        let id = id as usize;
        if id < self.input_pages {
            let start = id * self.page_len;
            (true, start, (self.n - start).min(self.page_len))
        } else {
            let start = (id - self.input_pages) * self.page_len;
            (false, start, self.page_len)
        }
    }
}

pub(crate) struct VmStrategy<'a, T> {
    data: &'a mut [T],
    extra: Vec<T>,
    geom: PageGeom,
    reserve: usize,
    /// Successor link per page; doubles as the free-list chain.
    next_page: Vec<u32>,
    free_head: u32,
    free_len: usize,
    /// Final partial input page, never freed or reused.
    dead_tail: Option<u32>,
    work: usize,
    min_free_at_take: usize,
    swap_evictions: u64,
}

impl<'a, T: Copy> VmStrategy<'a, T> {
    pub fn new<F>(data: &'a mut [T], ctx: &mut Ctx<'_, F>) -> Self {
        let page_len = page_size(data.len(), ctx.payload_words.max(1));
        Self::with_page_len(data, page_len, ctx)
    }

    /// One partial page per possible stack entry (`ceil(log2 n) + 1`) plus
    /// three scratch pages for the current/next/output runs.
    fn reserve_pages(n: usize) -> usize {
        ceil_log2(n) + 1 + 3
    }

    fn with_page_len<F>(data: &'a mut [T], page_len: usize, ctx: &mut Ctx<'_, F>) -> Self {
        let n = data.len();
        debug_assert!(n >= 2 && page_len >= 1);
        let input_pages = n.div_ceil(page_len);
        let reserve = Self::reserve_pages(n);
        let total_pages = input_pages + reserve;
        assert!(total_pages <= NIL as usize, "page id space exhausted");

        // All extra memory up front: the page reserve (seeding the free list)
        // and one successor-link word per page. The filler is never read.
        let extra = vec![data[0]; reserve * page_len];
        let mut next_page = vec![NIL; total_pages];
        let mut free_head = NIL;
        for id in (input_pages..total_pages).rev() {
            next_page[id] = free_head;
            free_head = id as u32;
        }
        ctx.stats.note_extra_words(
            (reserve * page_len) as u64 * ctx.payload_words + total_pages as u64,
        );

        let dead_tail = (!n.is_multiple_of(page_len)).then(|| (input_pages - 1) as u32);
        VmStrategy {
            data,
            extra,
            geom: PageGeom { page_len, input_pages, n },
            reserve,
            next_page,
            free_head,
            free_len: reserve,
            dead_tail,
            work: 0,
            min_free_at_take: usize::MAX,
            swap_evictions: 0,
        }
    }

    pub fn report(&self) -> VmReport {
        VmReport {
            page_len: self.geom.page_len,
            input_pages: self.geom.input_pages,
            reserve_pages: self.reserve,
            min_free_at_take: (self.min_free_at_take != usize::MAX)
                .then_some(self.min_free_at_take),
            swap_evictions: self.swap_evictions,
        }
    }

    fn take_page(&mut self) -> u32 {
        self.min_free_at_take = self.min_free_at_take.min(self.free_len);
        assert!(
            self.free_head != NIL,
            "page free list underflow: the pre-allocated reserve is sized so this cannot happen"
        );
        let page = self.free_head;
        self.free_head = self.next_page[page as usize];
        self.free_len -= 1;
        self.next_page[page as usize] = NIL;
        page
    }

    fn release_page(&mut self, page: u32) {
        if Some(page) == self.dead_tail {
            return;
        }
        self.next_page[page as usize] = self.free_head;
        self.free_head = page;
        self.free_len += 1;
    }

    /// (page, consumed offset, end offset) of the run's front page.
    fn front_span(&self, run: &PagedRun) -> (u32, usize, usize) {
        debug_assert!(run.len > 0);
        let end = if run.head == run.tail { run.back } else { self.geom.page_len };
        (run.head, run.front, end)
    }

    /// Consumes `count` elements (at most the front span) off the run's front,
    /// releasing the front page the moment it empties.
    fn consume_front(&mut self, run: &mut PagedRun, count: usize) {
        if count == 0 {
            return;
        }
        let (page, front, end) = self.front_span(run);
        debug_assert!(front + count <= end);
        run.front = front + count;
        run.len -= count;
        if run.len == 0 {
            self.release_page(page);
            let (lo, hi) = (run.lo, run.hi);
            *run = PagedRun::empty(lo, hi);
        } else if run.front == self.geom.page_len {
            run.head = self.next_page[page as usize];
            run.front = 0;
            self.release_page(page);
        }
    }

    /// Opens a fresh output page at the back of `run`.
    fn open_page(&mut self, run: &mut PagedRun) {
        debug_assert!(run.len == 0 || run.back == self.geom.page_len);
        let page = self.take_page();
        if run.len == 0 {
            run.head = page;
            run.front = 0;
        } else {
            self.next_page[run.tail as usize] = page;
        }
        run.tail = page;
        run.back = 0;
    }

    fn push_elem<F>(&mut self, run: &mut PagedRun, value: T, ctx: &mut Ctx<'_, F>) {
        if run.len == 0 || run.back == self.geom.page_len {
            self.open_page(run);
        }
        let (in_data, start, cap) = self.geom.locate(run.tail);
        debug_assert!(run.back < cap);
        if in_data {
            self.data[start + run.back] = value;
        } else {
            self.extra[start + run.back] = value;
        }
        run.back += 1;
        run.len += 1;
        ctx.moved(1);
    }

    /// Detaches the whole front page of an unconsumed run; returns it with its
    /// fill. Used to transfer merge tails by reference instead of by moves.
    fn detach_front_page(&mut self, run: &mut PagedRun) -> (u32, usize) {
        debug_assert!(run.len > 0 && run.front == 0);
        let page = run.head;
        let fill = if run.head == run.tail { run.back } else { self.geom.page_len };
        run.len -= fill;
        if run.len == 0 {
            run.head = NIL;
            run.tail = NIL;
            run.back = 0;
        } else {
            run.head = self.next_page[page as usize];
        }
        self.next_page[page as usize] = NIL;
        (page, fill)
    }

    /// Appends a detached page (with `fill` elements) to the back of `run`.
    fn attach_page(&mut self, run: &mut PagedRun, page: u32, fill: usize) {
        debug_assert!(run.len == 0 || run.back == self.geom.page_len);
        if run.len == 0 {
            run.head = page;
            run.front = 0;
        } else {
            self.next_page[run.tail as usize] = page;
        }
        self.next_page[page as usize] = NIL;
        run.tail = page;
        run.back = fill;
        run.len += fill;
    }

    /// Simultaneous mutable views of `N` distinct pages.
    fn views<const N: usize>(&mut self, ids: [u32; N]) -> [&mut [T]; N] {
        page_views(self.data, &mut self.extra, self.geom, ids)
    }

    /// Fill of a page linked inside the final run during copy-back: full
    /// unless it is the list tail.
    fn copy_back_fill(&self, page: u32) -> usize {
        if self.next_page[page as usize] == NIL {
            let rem = self.geom.n % self.geom.page_len;
            if rem == 0 {
                self.geom.page_len
            } else {
                rem
            }
        } else {
            self.geom.page_len
        }
    }

    /// Copy-back of the final run into the input array in physical page order.
    ///
    /// For each physical slot: if the slot's own page still holds data needed
    /// later in the run, that data is first evicted to a free page (re-linking
    /// the run), then the slot is overwritten with its final contents. Pages
    /// already in place are skipped. The scan for later references walks the
    /// remaining list linearly; quadratic in the page count in total, but the
    /// page count is O(sqrt(n)) and the scan is branch-cheap.
    fn copy_back<F>(&mut self, curr: PagedRun, ctx: &mut Ctx<'_, F>) {
        let geom = self.geom;
        debug_assert!(curr.len == geom.n && curr.front == 0);
        let mut cur = curr.head;
        for slot in 0..geom.input_pages as u32 {
            if cur == slot {
                // Already physically in place.
                cur = self.next_page[cur as usize];
                continue;
            }
            if let Some(pred) = self.find_later_reference(slot, cur) {
                if let Some(next) = self.evict_slot(slot, cur, pred, ctx) {
                    // Swap eviction placed this slot's contents as a side
                    // effect; move straight on to the next slot.
                    cur = next;
                    continue;
                }
            }
            let fill = self.copy_back_fill(cur);
            debug_assert_eq!(fill, geom.locate(slot).2);
            {
                let [dst, src] = self.views([slot, cur]);
                dst[..fill].copy_from_slice(&src[..fill]);
            }
            ctx.moved(fill as u64);
            let next = self.next_page[cur as usize];
            // The source page is spent; recycle it for later evictions. Its
            // own slot (if it is an input page) is still ahead of us.
            debug_assert!(cur as usize >= geom.input_pages || cur > slot);
            self.release_page(cur);
            cur = next;
        }
    }

    /// Predecessor of the node carrying physical page `slot` in the rest of
    /// the final run, if that page is still referenced after `cur`.
    fn find_later_reference(&self, slot: u32, cur: u32) -> Option<u32> {
        let mut prev = cur;
        let mut node = self.next_page[cur as usize];
        while node != NIL {
            if node == slot {
                return Some(prev);
            }
            prev = node;
            node = self.next_page[node as usize];
        }
        None
    }

    /// Relocates the contents of page `slot` (linked after `pred`) so the
    /// physical slot can be overwritten.
    ///
    /// Normally the contents move to a free page and `None` is returned: the
    /// caller still has to fill the slot from `cur`. If no reusable free page
    /// exists, the slot's contents are swapped with `cur`'s: that both places
    /// the slot's final data and re-homes the evicted data into the `cur`
    /// page object, which is spliced into the list where `slot` was. In that
    /// case the traversal's next node is returned.
    fn evict_slot<F>(
        &mut self,
        slot: u32,
        cur: u32,
        pred: u32,
        ctx: &mut Ctx<'_, F>,
    ) -> Option<u32> {
        if let Some(repl) = self.take_eviction_page(slot) {
            let fill = self.copy_back_fill(slot);
            {
                let [dst, src] = self.views([repl, slot]);
                dst[..fill].copy_from_slice(&src[..fill]);
            }
            ctx.moved(fill as u64);
            self.next_page[repl as usize] = self.next_page[slot as usize];
            self.next_page[pred as usize] = repl;
            return None;
        }

        // Swap eviction. Both pages have full capacity: `slot` is referenced
        // (so it is not the dead tail) and `cur` circulates.
        self.swap_evictions += 1;
        let page_len = self.geom.page_len;
        {
            let [a, b] = self.views([slot, cur]);
            a.swap_with_slice(b);
        }
        ctx.moved(3 * page_len as u64);
        let after_cur = self.next_page[cur as usize];
        self.next_page[cur as usize] = self.next_page[slot as usize];
        if pred == cur {
            // `slot` was the very next node; `cur` now stands in its place.
            Some(cur)
        } else {
            self.next_page[pred as usize] = cur;
            Some(after_cur)
        }
    }

    /// A free page whose storage may be overwritten at copy-back step `slot`:
    /// any extra page, or an input page strictly after `slot`. Stale entries
    /// (input pages at or before `slot`, whose regions are final output) are
    /// dropped from circulation.
    fn take_eviction_page(&mut self, slot: u32) -> Option<u32> {
        loop {
            if self.free_head == NIL {
                return None;
            }
            let page = self.take_page();
            if page as usize >= self.geom.input_pages || page > slot {
                return Some(page);
            }
            // Stale: its region already holds (or is about to hold) final
            // output. Permanently retire it.
        }
    }
}

fn ceil_log2(n: usize) -> usize {
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// Carves distinct pages out of the two backing arrays as disjoint `&mut`
/// slices, in the order of `ids`.
fn page_views<'s, T, const N: usize>(
    data: &'s mut [T],
    extra: &'s mut [T],
    geom: PageGeom,
    ids: [u32; N],
) -> [&'s mut [T]; N] {
    let mut req: [(bool, usize, usize, usize); N] = [(false, 0, 0, 0); N];
    for (slot, &id) in ids.iter().enumerate() {
        let (in_data, start, len) = geom.locate(id);
        debug_assert!(ids.iter().filter(|&&other| other == id).count() == 1);
        req[slot] = (in_data, start, len, slot);
    }
    // Carve each array front to back.
    req.sort_unstable_by_key(|&(in_data, start, ..)| (!in_data, start));
    let mut out: [Option<&'s mut [T]>; N] = [const { None }; N];
    let mut carve = |arr: &'s mut [T], in_data: bool| {
        let mut rest = arr;
        let mut offset = 0;
        for &(req_in_data, start, len, slot) in req.iter() {
            if req_in_data != in_data {
                continue;
            }
            let (_, tail) = rest.split_at_mut(start - offset);
            let (piece, tail) = tail.split_at_mut(len);
            out[slot] = Some(piece);
            rest = tail;
            offset = start + len;
        }
    };
    carve(data, true);
    carve(extra, false);
    out.map(|slice| slice.expect("every requested page is carved"))
}

impl<T: Copy, F: FnMut(&T, &T) -> bool> MergeStrategy<T, F> for VmStrategy<'_, T> {
    type Run = PagedRun;

    fn remaining(&self) -> usize {
        self.geom.n - self.work
    }

    fn extract_run(&mut self, min_len: usize, ctx: &mut Ctx<'_, F>) -> PagedRun {
        // The unconsumed work area is the untouched suffix of the input, so
        // detection and boosting run on plain contiguous memory; the run is
        // then copied out into fresh pages, releasing each work page as the
        // cursor leaves it.
        let len = extract_run_len(&mut self.data[self.work..], min_len, ctx);
        let lo = self.work;
        let mut run = PagedRun::empty(lo, lo + len);
        for idx in lo..lo + len {
            let value = self.data[idx];
            self.push_elem(&mut run, value, ctx);
            let consumed = idx + 1;
            if consumed % self.geom.page_len == 0 {
                self.release_page((consumed / self.geom.page_len - 1) as u32);
            }
        }
        self.work += len;
        run
    }

    fn bounds(run: &PagedRun) -> (usize, usize) {
        (run.lo, run.hi)
    }

    fn merge(
        &mut self,
        mut left: PagedRun,
        mut right: PagedRun,
        _kind: MergeKind,
        ctx: &mut Ctx<'_, F>,
    ) -> PagedRun {
        debug_assert_eq!(left.hi, right.lo);
        debug_assert!(left.len > 0 && right.len > 0);
        debug_assert!(left.front == 0 && right.front == 0);
        let (lo, hi) = (left.lo, right.hi);
        let total = left.len + right.len;
        let page_len = self.geom.page_len;

        if total <= page_len {
            // Both runs are single partial pages and the result fits in one:
            // merge backward in place over the left page, no page taken.
            debug_assert!(left.head == left.tail && right.head == right.tail);
            let (left_page, right_page) = (left.head, right.head);
            {
                let [out, b] = self.views([left_page, right_page]);
                merge_back(&mut out[..total], left.len, &b[..right.len], ctx);
            }
            self.release_page(right_page);
            self.next_page[left_page as usize] = NIL;
            return PagedRun { head: left_page, tail: left_page, len: total, front: 0, back: total, lo, hi };
        }

        let mut out = PagedRun::empty(lo, hi);
        while left.len > 0 && right.len > 0 {
            if out.len == 0 || out.back == page_len {
                // Drained input pages were released above, so this request is
                // covered by the reserve plus recycled pages.
                self.open_page(&mut out);
            }
            let (pa, xa0, ya) = self.front_span(&left);
            let (pb, xb0, yb) = self.front_span(&right);
            let (pr, xr0) = (out.tail, out.back);
            let (mut xa, mut xb, mut xr) = (xa0, xb0, xr0);
            {
                let [a, b, r] = self.views([pa, pb, pr]);
                page_merge(&a[..ya], &mut xa, &b[..yb], &mut xb, &mut r[..page_len], &mut xr, ctx);
            }
            self.consume_front(&mut left, xa - xa0);
            self.consume_front(&mut right, xb - xb0);
            out.back = xr;
            out.len += xr - xr0;
        }

        // Exactly one input has a tail left. Transfer its pages by reference
        // where alignment allows, otherwise by element moves.
        let mut t = if left.len > 0 { left } else { right };
        while t.len > 0 {
            if t.front == 0 && (out.len == 0 || out.back == page_len) {
                let (page, fill) = self.detach_front_page(&mut t);
                self.attach_page(&mut out, page, fill);
            } else {
                if out.len == 0 || out.back == page_len {
                    self.open_page(&mut out);
                }
                let (pt, xt, yt) = self.front_span(&t);
                let take = (yt - xt).min(page_len - out.back);
                {
                    let [dst, src] = self.views([out.tail, pt]);
                    dst[out.back..out.back + take].copy_from_slice(&src[xt..xt + take]);
                }
                ctx.moved(take as u64);
                self.consume_front(&mut t, take);
                out.back += take;
                out.len += take;
            }
        }
        debug_assert_eq!(out.len, total);
        out
    }

    fn finish(&mut self, curr: PagedRun, ctx: &mut Ctx<'_, F>) {
        self.copy_back(curr, ctx);
    }
}
