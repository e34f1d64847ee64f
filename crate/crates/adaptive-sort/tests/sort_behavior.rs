//! Behavioral tests for the full sort: hand-traced counter values on tiny
//! inputs, reference equivalence on seeded random data, and the per-strategy
//! memory accounting.

use adaptive_sort::{
    run_length_entropy, sort_by, stability_oracle, Item, MergeStats, MinRun, SortConfig,
    SortReport, Strategy,
};

const ALL: [Strategy; 4] =
    [Strategy::Cpython, Strategy::Pingpong, Strategy::Vm, Strategy::Inplace];

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn tagged(keys: &[u32]) -> Vec<Item<u32>> {
    keys.iter()
        .enumerate()
        .map(|(pos, &key)| Item::new(key, pos as u32))
        .collect()
}

fn reference(items: &[Item<u32>]) -> Vec<Item<u32>> {
    let mut sorted = items.to_vec();
    sorted.sort_by_key(|item| item.key);
    sorted
}

fn sort_items(items: &mut [Item<u32>], config: &SortConfig) -> SortReport {
    sort_by(items, config, |a, b| a.key < b.key)
}

#[test]
fn degenerate_inputs_bypass_the_machinery() {
    for strategy in ALL {
        let config = SortConfig::new(strategy);
        let mut empty: [u32; 0] = [];
        let report = adaptive_sort::sort(&mut empty, &config);
        assert_eq!(report.stats, MergeStats::default());
        assert!(report.run_lengths.is_empty());

        let mut single = [42u32];
        let report = adaptive_sort::sort(&mut single, &config);
        assert_eq!(report.stats, MergeStats::default());
        assert_eq!(report.run_lengths, vec![1]);
    }
}

#[test]
fn sorted_input_is_a_single_run_with_zero_merge_cost() {
    for strategy in ALL {
        for n in [2usize, 63, 64, 100, 1000] {
            let mut keys: Vec<u32> = (0..n as u32).collect();
            let report =
                adaptive_sort::sort(&mut keys, &SortConfig::new(strategy));
            assert_eq!(report.stats.merge_cost, 0, "{strategy:?} n={n}");
            assert_eq!(report.run_lengths, vec![n]);
            assert_eq!(report.stats.comparisons, n as u64 - 1);
        }
    }
}

/// Hand trace of the two-run input [5,6,7,8,1,2,3,4] with boosting disabled:
/// detection costs 7 comparisons, the single merge compares each right-run
/// element once (4) and has merge cost 8.
#[test]
fn two_run_trace_pingpong() {
    let expected = reference(&tagged(&[5, 6, 7, 8, 1, 2, 3, 4]));
    let mut items = tagged(&[5, 6, 7, 8, 1, 2, 3, 4]);
    let config = SortConfig::new(Strategy::Pingpong)
        .min_run(MinRun::Fixed(1))
        .payload_words(1);
    let report = sort_items(&mut items, &config);
    assert_eq!(items, expected);
    assert_eq!(report.run_lengths, vec![4, 4]);
    assert_eq!(report.stats.merge_cost, 8);
    assert_eq!(report.stats.comparisons, 11);
    // One push copy of four elements, then eight merge writes.
    assert_eq!(report.stats.moves, 12);
    assert_eq!(report.stats.max_stack_height, 1);
    assert_eq!(report.stats.peak_extra_words, 8);
}

#[test]
fn two_run_trace_cpython() {
    let expected = reference(&tagged(&[5, 6, 7, 8, 1, 2, 3, 4]));
    let mut items = tagged(&[5, 6, 7, 8, 1, 2, 3, 4]);
    let config = SortConfig::new(Strategy::Cpython).min_run(MinRun::Fixed(1));
    let report = sort_items(&mut items, &config);
    assert_eq!(items, expected);
    assert_eq!(report.stats.merge_cost, 8);
    assert_eq!(report.stats.comparisons, 11);
    // Copy of the (tied-smaller) left run plus eight merge writes.
    assert_eq!(report.stats.moves, 12);
    assert_eq!(report.stats.peak_extra_words, 4);
}

#[test]
fn two_run_trace_vm() {
    let expected = reference(&tagged(&[5, 6, 7, 8, 1, 2, 3, 4]));
    let mut items = tagged(&[5, 6, 7, 8, 1, 2, 3, 4]);
    let config = SortConfig::new(Strategy::Vm).min_run(MinRun::Fixed(1));
    let report = sort_items(&mut items, &config);
    assert_eq!(items, expected);
    assert_eq!(report.stats.merge_cost, 8);
    assert_eq!(report.stats.comparisons, 11);
    // Eight extraction copies, eight merge writes, eight copy-back writes.
    assert_eq!(report.stats.moves, 24);
    let vm = report.vm.expect("vm report present");
    assert_eq!(vm.page_len, 8);
    assert_eq!(vm.swap_evictions, 0);
}

#[test]
fn two_run_trace_inplace() {
    let expected = reference(&tagged(&[5, 6, 7, 8, 1, 2, 3, 4]));
    let mut items = tagged(&[5, 6, 7, 8, 1, 2, 3, 4]);
    let config = SortConfig::new(Strategy::Inplace).min_run(MinRun::Fixed(1));
    let report = sort_items(&mut items, &config);
    assert_eq!(items, expected);
    assert_eq!(report.stats.merge_cost, 8);
    assert_eq!(report.stats.peak_extra_words, 0);
}

#[test]
fn equal_key_blocks_keep_input_order() {
    for strategy in ALL {
        let keys = [1u32, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1];
        let mut items = tagged(&keys);
        let config = SortConfig::new(strategy).min_run(MinRun::Fixed(1));
        sort_items(&mut items, &config);
        assert!(stability_oracle(&items), "{strategy:?} broke stability");
        assert_eq!(items, reference(&tagged(&keys)));
    }
}

#[test]
fn matches_reference_stable_sort_on_seeded_random_inputs() {
    let mut state = 0xDEADBEEF;
    for round in 0..40 {
        let n = 1 + (splitmix(&mut state) % 3000) as usize;
        let key_space = [4u32, 64, 1 << 30][round % 3];
        let keys: Vec<u32> =
            (0..n).map(|_| (splitmix(&mut state) % key_space as u64) as u32).collect();
        let expected = reference(&tagged(&keys));
        for strategy in ALL {
            for min_run in [MinRun::Fixed(1), MinRun::TimsortRule, MinRun::Fixed(7)] {
                let mut items = tagged(&keys);
                let config = SortConfig::new(strategy).min_run(min_run);
                let report = sort_items(&mut items, &config);
                assert_eq!(
                    items, expected,
                    "{strategy:?} {min_run:?} diverged from reference (n={n})"
                );
                assert!(stability_oracle(&items));
                assert_eq!(report.run_lengths.iter().sum::<usize>(), n);
            }
        }
    }
}

#[test]
fn merge_cost_and_stack_height_are_policy_level_and_identical() {
    let mut state = 7;
    for _ in 0..20 {
        let n = 2 + (splitmix(&mut state) % 5000) as usize;
        let keys: Vec<u32> = (0..n).map(|_| splitmix(&mut state) as u32).collect();
        let reports: Vec<SortReport> = ALL
            .iter()
            .map(|&strategy| {
                let mut items = tagged(&keys);
                let config = SortConfig::new(strategy).min_run(MinRun::TimsortRule);
                sort_items(&mut items, &config)
            })
            .collect();
        for report in &reports[1..] {
            assert_eq!(report.stats.merge_cost, reports[0].stats.merge_cost);
            assert_eq!(report.stats.max_stack_height, reports[0].stats.max_stack_height);
            assert_eq!(report.run_lengths, reports[0].run_lengths);
        }
    }
}

#[test]
fn analytic_bounds_hold_on_random_inputs_without_boosting() {
    let mut state = 99;
    for _ in 0..25 {
        let n = 2 + (splitmix(&mut state) % 20_000) as usize;
        let keys: Vec<u32> = (0..n).map(|_| splitmix(&mut state) as u32).collect();
        for strategy in ALL {
            let mut items = tagged(&keys);
            let config = SortConfig::new(strategy).min_run(MinRun::Fixed(1));
            let report = sort_items(&mut items, &config);
            let stats = &report.stats;
            let n64 = n as u64;

            let entropy = run_length_entropy(&report.run_lengths);
            let cost_bound = n as f64 * (entropy + 2.0);
            assert!(
                stats.merge_cost as f64 <= cost_bound,
                "{strategy:?}: merge cost {} above n(H+2) = {cost_bound}",
                stats.merge_cost
            );
            assert!(stats.max_stack_height <= ceil_log2(n) + 1);

            if strategy != Strategy::Inplace {
                assert!(stats.comparisons <= stats.merge_cost + n64);
            }
            let move_budget = match strategy {
                Strategy::Cpython => Some(3 * stats.merge_cost / 2 + n64),
                Strategy::Pingpong => Some(stats.merge_cost + n64),
                Strategy::Vm => Some(stats.merge_cost + 3 * n64),
                Strategy::Inplace => None,
            };
            if let Some(budget) = move_budget {
                assert!(
                    stats.moves <= budget,
                    "{strategy:?}: moves {} above budget {budget}",
                    stats.moves
                );
            }
        }
    }
}

#[test]
fn vm_memory_stays_within_the_preallocation_formula() {
    let mut state = 4242;
    for &(n, payload_words) in
        &[(1000usize, 1u64), (1000, 30), (4096, 2), (100_000, 1), (100_000, 30)]
    {
        let keys: Vec<u32> = (0..n).map(|_| splitmix(&mut state) as u32).collect();
        let mut items = tagged(&keys);
        let config = SortConfig::new(Strategy::Vm)
            .min_run(MinRun::Fixed(1))
            .payload_words(payload_words);
        let report = sort_items(&mut items, &config);
        let vm = report.vm.expect("vm report");

        let page = adaptive_sort::vm_page_size(n, payload_words) as u64;
        assert_eq!(vm.page_len as u64, page);
        let lg = ceil_log2(n);
        let budget =
            (lg + 4) * page * payload_words + (n as u64).div_ceil(page) + lg + 16;
        assert!(
            report.stats.peak_extra_words <= budget,
            "peak {} above {budget} for n={n}, T={payload_words}",
            report.stats.peak_extra_words
        );
        assert!(vm.min_free_at_take.is_none_or(|min| min >= 1));
        assert_eq!(vm.swap_evictions, 0);
    }
}

#[test]
fn pingpong_and_cpython_report_exact_buffer_footprints() {
    let mut keys: Vec<u32> = (0..999u32).rev().collect();
    for payload_words in [1u64, 30] {
        let config = SortConfig::new(Strategy::Pingpong).payload_words(payload_words);
        let report = adaptive_sort::sort(&mut keys.clone(), &config);
        assert_eq!(report.stats.peak_extra_words, 999 * payload_words);

        let config = SortConfig::new(Strategy::Cpython).payload_words(payload_words);
        let report = adaptive_sort::sort(&mut keys, &config);
        assert_eq!(report.stats.peak_extra_words, 500 * payload_words);
    }
}

fn ceil_log2(n: usize) -> u64 {
    (usize::BITS - (n - 1).leading_zeros()) as u64
}

/// Hand trace of [30,40 | 10,20 | 15,80 | 50,60] (four runs of two) with
/// boosting off. The second boundary has a lower power than the first, so the
/// first stacked run is popped and merged; with the optimization that merge
/// lands in the stack buffer and the push after the collapse is free, saving
/// exactly the four-element re-push copy the plain variant pays.
#[test]
fn last_pop_collapse_trace() {
    let keys = [30u32, 40, 10, 20, 15, 80, 50, 60];
    let run = |last_pop: bool| {
        let mut items = tagged(&keys);
        let config = SortConfig::new(Strategy::Pingpong)
            .min_run(MinRun::Fixed(1))
            .pingpong_last_pop(last_pop);
        let report = sort_items(&mut items, &config);
        assert_eq!(items, reference(&tagged(&keys)));
        report
    };
    let optimized = run(true);
    let plain = run(false);
    assert_eq!(optimized.run_lengths, vec![2, 2, 2, 2]);
    assert_eq!(optimized.stats.merge_cost, 16);
    assert_eq!(plain.stats.merge_cost, 16);
    assert_eq!(optimized.stats.max_stack_height, 2);
    // Push 2, collapse merge 4, free push, push 2, unwind merges 4 + 5.
    assert_eq!(optimized.stats.moves, 17);
    // Same merges, plus the four-element copy when the merged run is pushed.
    assert_eq!(plain.stats.moves, 21);
}
