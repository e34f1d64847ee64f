//! Cost counters shared by all strategies, and the run-length entropy they are
//! measured against.

/// Counters for one sort. All counters are monotone while a sort runs.
///
/// `moves` counts every write of an element value into a distinct storage
/// location: merge output writes, buffer copies, insertion-sort shifts and the
/// temporaries they materialize. Loads that feed straight into a comparison or
/// a single write are not separate moves.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct MergeStats {
    /// Comparator invocations.
    pub comparisons: u64,
    /// Element writes (copy/move assignments and constructions).
    pub moves: u64,
    /// Sum of `|left| + |right|` over all two-run merges.
    pub merge_cost: u64,
    /// Largest extra allocation footprint, in words. Counts main buffers and
    /// page metadata; the O(log n) run stack and O(1) locals are excluded.
    pub peak_extra_words: u64,
    /// Largest number of runs simultaneously parked on the merge stack.
    pub max_stack_height: u64,
}

impl MergeStats {
    /// Accounts one two-run merge towards the merge cost.
    ///
    /// Merging an empty run is a merge-policy bug, hence the hard assert.
    pub fn record_merge(&mut self, left_len: usize, right_len: usize) {
        assert!(
            left_len >= 1 && right_len >= 1,
            "cannot merge an empty run (left={left_len}, right={right_len})"
        );
        self.merge_cost += (left_len + right_len) as u64;
    }

    pub(crate) fn note_extra_words(&mut self, words: u64) {
        if words > self.peak_extra_words {
            self.peak_extra_words = words;
        }
    }

    pub(crate) fn note_stack_height(&mut self, height: usize) {
        if height as u64 > self.max_stack_height {
            self.max_stack_height = height as u64;
        }
    }
}

/// Entropy of the run decomposition `lengths`, in bits:
/// `sum over i of (l_i / n) * log2(n / l_i)` where `n = sum of l_i`.
///
/// This is 0 for a single run and at most `log2(r)` for `r` runs; it lower
/// bounds (up to a linear term) the merge cost any run-adaptive mergesort pays
/// on an input with this decomposition.
///
/// Panics if `lengths` is empty or contains a zero-length run.
pub fn run_length_entropy(lengths: &[usize]) -> f64 {
    assert!(!lengths.is_empty(), "entropy of an empty run decomposition");
    let n: usize = lengths.iter().sum();
    let n = n as f64;
    let mut h = 0.0;
    for &len in lengths {
        assert!(len >= 1, "run decomposition contains an empty run");
        let p = len as f64 / n;
        h -= p * libm::log2(p);
    }
    h
}
