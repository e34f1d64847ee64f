//! Origin-tagged elements and the stability check used by tests and the
//! benchmark harness.

/// An element under sort: a key plus the index it occupied in the input.
///
/// Comparisons consult only `key`; `origin` exists so that stability is
/// observable after the fact. Origins must be unique within one input.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Item<K> {
    pub key: K,
    pub origin: u32,
}

impl<K> Item<K> {
    pub fn new(key: K, origin: u32) -> Self {
        Item { key, origin }
    }
}

/// True iff `items` is sorted non-decreasingly by key and every adjacent pair
/// of equal keys has strictly increasing origins.
///
/// With unique origins this is exactly "the output of a stable sort": within a
/// block of equal keys, strict origin growth rules out reordering as well as
/// duplicated or dropped elements.
pub fn stability_oracle<K: Ord>(items: &[Item<K>]) -> bool {
    items.windows(2).all(|w| match w[0].key.cmp(&w[1].key) {
        core::cmp::Ordering::Less => true,
        core::cmp::Ordering::Equal => w[0].origin < w[1].origin,
        core::cmp::Ordering::Greater => false,
    })
}
