//! Analytic cost-bound checks evaluated on measured rows.

use adaptive_sort::vm_page_size;

use crate::experiment::{Algo, ExperimentRow};

/// Outcome of one bound check; `slack` is how far the measurement sits below
/// the bound (negative on failure).
#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub name: &'static str,
    pub pass: bool,
    pub slack: f64,
}

fn check(name: &'static str, value: u64, bound: f64) -> BoundCheck {
    BoundCheck { name, pass: value as f64 <= bound, slack: bound - value as f64 }
}

/// The per-strategy analytic budgets a verified row must satisfy:
/// merge cost within `n(H+2)`, stack height within `ceil(lg n) + 1`, and for
/// the buffered strategies `M + n` comparisons plus their move and extra
/// memory budgets (1.5M + n / n/2 words for the copying baseline, M + n / n
/// words for pingpong, M + 3n and the page formula for vm, none / zero words
/// for the bufferless baseline).
pub fn check_bounds(row: &ExperimentRow) -> Vec<BoundCheck> {
    let n = row.n;
    let m = row.merge_cost;
    let words = row.profile.payload_words();
    let mut checks = vec![
        check("merge-cost-entropy", m, n as f64 * (row.entropy_bits + 2.0)),
        check("stack-height", row.max_stack_height, (ceil_log2(n) + 1) as f64),
    ];
    if row.algo != Algo::Inplace {
        checks.push(check("comparisons", row.comparisons, (m + n) as f64));
    }
    match row.algo {
        Algo::Cpython => {
            checks.push(check("moves", row.moves, 1.5 * m as f64 + n as f64));
            checks.push(check("extra-memory", row.peak_extra_words, (n.div_ceil(2) * words) as f64));
        }
        Algo::Pingpong => {
            checks.push(check("moves", row.moves, (m + n) as f64));
            checks.push(check("extra-memory", row.peak_extra_words, (n * words) as f64));
        }
        Algo::Vm => {
            checks.push(check("moves", row.moves, (m + 3 * n) as f64));
            checks.push(check("extra-memory", row.peak_extra_words, vm_peak_budget(n, words) as f64));
        }
        Algo::Inplace => {
            checks.push(check("extra-memory", row.peak_extra_words, 0.0));
        }
    }
    checks
}

/// Extra-memory budget of the paged strategy for an `n`-element sort:
/// `(ceil(lg n) + 4)` reserve pages of `P * T` words plus one metadata word
/// per page with constant slack.
pub fn vm_peak_budget(n: u64, payload_words: u64) -> u64 {
    let page = vm_page_size(n as usize, payload_words) as u64;
    let lg = ceil_log2(n);
    (lg + 4) * page * payload_words + n.div_ceil(page) + lg + 16
}

pub fn ceil_log2(n: u64) -> u64 {
    assert!(n >= 1);
    (u64::BITS - (n - 1).leading_zeros()) as u64
}

/// Expected-entropy overlay for cost plots: `EN * log2(EN / (S+1))` bits for
/// expected input length `EN` and presortedness `S`, clamped to zero when the
/// expected run length reaches the input length.
pub fn expected_entropy(expected_len: f64, presort: u64) -> f64 {
    let run = (presort + 1) as f64;
    if expected_len <= run {
        0.0
    } else {
        expected_len * (expected_len / run).log2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::RunConfig;
    use crate::workload::{Profile, WorkloadSpec};

    #[test]
    fn verified_rows_pass_every_bound() {
        let cfg = RunConfig::default();
        for algo in Algo::ALL {
            let spec = WorkloadSpec::new(Profile::Int, 20_000, 100, 11);
            let row = crate::experiment::run_experiment(&spec, algo, &cfg).unwrap();
            for check in check_bounds(&row) {
                assert!(
                    check.pass,
                    "{algo}: bound {} failed with slack {}",
                    check.name, check.slack
                );
            }
        }
    }

    #[test]
    fn synthetic_violation_is_flagged() {
        let spec = WorkloadSpec::new(Profile::Int, 5_000, 100, 2);
        let mut row =
            crate::experiment::run_experiment(&spec, Algo::Pingpong, &RunConfig::default())
                .unwrap();
        row.merge_cost = (row.n as f64 * (row.entropy_bits + 2.0)) as u64 + 1;
        let checks = check_bounds(&row);
        let cost = checks.iter().find(|c| c.name == "merge-cost-entropy").unwrap();
        assert!(!cost.pass && cost.slack < 0.0);
    }

    #[test]
    fn expected_entropy_matches_hand_arithmetic() {
        assert_eq!(expected_entropy(8.0, 1), 16.0);
        assert_eq!(expected_entropy(8.0, 7), 0.0);
        // Overlay value at the largest presortedness of the reference setup.
        let overlay = expected_entropy(0.95e7, 1_000_000);
        assert!((overlay - 30_855_297.672118027).abs() < 1e-3, "overlay = {overlay}");
    }
}
