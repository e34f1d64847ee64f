//! The run-boundary power function that drives the merge policy.

/// Power of the boundary between adjacent runs `[i, j)` and `[j, k)` in an
/// array of length `n`: the smallest integer `p >= 1` such that some integer
/// multiple of `2^-p` lies in the half-open interval `((i+j)/2n, (j+k)/2n]`.
///
/// Intuitively the two fractions are the midpoints of the runs scaled to the
/// unit interval, and the power is the depth at which the boundary would sit
/// in a perfectly balanced binary merge tree. The merge loop keeps powers on
/// its stack strictly increasing, which is what bounds the stack height by
/// `ceil(log2 n) + 1` and the merge cost by `n * (H + 2)`.
///
/// Computed by interval halving: compare both interval endpoints against the
/// midpoint of the current dyadic cell, descend into the half that still
/// contains both, and stop as soon as they separate. Equivalent to a binary
/// digit scan of the two midpoint fractions.
///
/// Panics unless `i < j < k <= n`.
pub fn node_power(n: usize, i: usize, j: usize, k: usize) -> u32 {
    assert!(
        i < j && j < k && k <= n,
        "invalid run boundary: need i < j < k <= n, got (n={n}, i={i}, j={j}, k={k})"
    );
    assert!(n <= (u64::MAX / 4) as usize, "array too large for power arithmetic");

    // Endpoints as fractions over 2n: a/2n and b/2n with 0 <= a < b < 2n.
    // At depth p the current dyadic cell has been rescaled to [0, 2n); the
    // candidate point c * 2^-p sits at its middle, `half`.
    let half = n as u64;
    let mut a = (i + j) as u64;
    let mut b = (j + k) as u64;
    let mut p = 1;
    loop {
        if a >= half {
            // Both endpoints in the upper half-cell; descend into it.
            a -= half;
            b -= half;
        } else if b >= half {
            // a strictly below the point, b at or above it: the point lies in
            // (a/2n, b/2n], so the boundary separates at depth p.
            return p;
        }
        debug_assert!(a < b && b < half);
        a *= 2;
        b *= 2;
        p += 1;
        debug_assert!(p <= u64::BITS, "power search failed to terminate");
    }
}
