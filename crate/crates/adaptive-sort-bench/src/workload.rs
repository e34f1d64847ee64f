//! Deterministic workload generation: input sizes, key distributions per
//! data-type profile, and presortedness injection.
//!
//! Everything is a pure function of a [`WorkloadSpec`]; the generator is
//! ChaCha12, seeded from the spec's 64-bit seed, so identical specs produce
//! bit-identical inputs across runs and processes.

use std::fmt;
use std::str::FromStr;

use adaptive_sort::Item;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Geometric};

/// Length of the array-valued keys used by the large-record profiles.
pub const BLOB_LEN: usize = 30;
pub type Blob = [u32; BLOB_LEN];

/// The four data-type cost profiles: cheap/expensive comparisons crossed with
/// cheap/expensive moves.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Profile {
    /// 32-bit keys: fast comparison, fast move.
    Int,
    /// Pointers to 30-word arrays with only the last word nonzero: every
    /// comparison walks all 30 word pairs, but moving the pointer is cheap.
    Ptr,
    /// Inline 30-word arrays of random words: comparisons usually decide on
    /// the first word, moving is expensive.
    BlobRandom,
    /// Inline 30-word arrays with only the last word nonzero: expensive
    /// comparison and expensive move.
    BlobZero,
}

impl Profile {
    pub const ALL: [Profile; 4] =
        [Profile::Int, Profile::Ptr, Profile::BlobRandom, Profile::BlobZero];

    pub fn id(self) -> &'static str {
        match self {
            Profile::Int => "int",
            Profile::Ptr => "ptr",
            Profile::BlobRandom => "blob-random",
            Profile::BlobZero => "blob-zero",
        }
    }

    /// Element size in words for the extra-memory accounting (a word being
    /// the size of one 32-bit key; a pointer counts as two).
    pub fn payload_words(self) -> u64 {
        match self {
            Profile::Int => 1,
            Profile::Ptr => 2,
            Profile::BlobRandom | Profile::BlobZero => BLOB_LEN as u64,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Profile::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| format!("unknown profile `{s}` (expected int, ptr, blob-random or blob-zero)"))
    }
}

/// One generated input: scale `N` (sizes are drawn from `[ceil(9N/10), N]`),
/// presortedness `S` (expected injected block length), profile, and seed.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WorkloadSpec {
    pub profile: Profile,
    pub scale: u64,
    pub presort: u64,
    pub seed: u64,
}

impl WorkloadSpec {
    pub fn new(profile: Profile, scale: u64, presort: u64, seed: u64) -> Self {
        assert!(scale >= 1, "workload scale must be at least 1");
        assert!(presort >= 2, "presortedness parameter must be at least 2");
        WorkloadSpec { profile, scale, presort, seed }
    }

    pub fn rng(&self) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(self.seed)
    }
}

/// Serialized as the CLI-friendly `profile:N:S:seed`.
impl fmt::Display for WorkloadSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.profile, self.scale, self.presort, self.seed)
    }
}

impl FromStr for WorkloadSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split(':');
        let mut next = |what: &str| {
            parts.next().ok_or_else(|| format!("workload spec `{s}` is missing the {what}"))
        };
        let profile: Profile = next("profile")?.parse()?;
        let scale = next("scale")?.parse::<u64>().map_err(|e| e.to_string())?;
        let presort = next("presortedness")?.parse::<u64>().map_err(|e| e.to_string())?;
        let seed = next("seed")?.parse::<u64>().map_err(|e| e.to_string())?;
        if parts.next().is_some() {
            return Err(format!("workload spec `{s}` has trailing fields"));
        }
        if scale < 1 || presort < 2 {
            return Err(format!("workload spec `{s}` violates N >= 1, S >= 2"));
        }
        Ok(WorkloadSpec { profile, scale, presort, seed })
    }
}

/// Input length drawn uniformly from `[ceil(9N/10), N]`.
pub fn draw_length(spec: &WorkloadSpec, rng: &mut impl Rng) -> usize {
    let lo = (9 * spec.scale).div_ceil(10);
    rng.gen_range(lo..=spec.scale) as usize
}

/// Every randomly generated word is uniform on `[100, 10^9]`.
fn random_word(rng: &mut impl Rng) -> u32 {
    rng.gen_range(100..=1_000_000_000u32)
}

pub fn int_keys(n: usize, rng: &mut impl Rng) -> Vec<u32> {
    (0..n).map(|_| random_word(rng)).collect()
}

/// 30-word array keys. With `zero_prefix` the first 29 words are zero so that
/// lexicographic comparison always walks the full depth.
pub fn blob_keys(n: usize, zero_prefix: bool, rng: &mut impl Rng) -> Vec<Blob> {
    (0..n)
        .map(|_| {
            let mut blob = [0u32; BLOB_LEN];
            if zero_prefix {
                blob[BLOB_LEN - 1] = random_word(rng);
            } else {
                for word in blob.iter_mut() {
                    *word = random_word(rng);
                }
            }
            blob
        })
        .collect()
}

/// Partitions `keys` left to right into blocks with i.i.d. geometric lengths
/// and sorts each block in place.
///
/// Convention: the geometric draw has support {0, 1, ...} and success
/// probability `1/S`; a block is `draw + 1` long, so block lengths are >= 1
/// with mean `S`. Adjacent blocks can fuse into longer natural runs but never
/// split, so the resulting run count is at most the block count.
pub fn inject_presortedness<K: Ord>(keys: &mut [K], presort: u64, rng: &mut impl Rng) {
    assert!(presort >= 2, "presortedness parameter must be at least 2");
    let lengths = Geometric::new(1.0 / presort as f64)
        .expect("success probability is in (0, 1)");
    let mut at = 0;
    while at < keys.len() {
        let block = (lengths.sample(rng) as usize).saturating_add(1);
        let end = at.saturating_add(block).min(keys.len());
        keys[at..end].sort();
        at = end;
    }
}

/// Attaches origin tags in input order.
pub fn tag<K: Copy>(keys: &[K]) -> Vec<Item<K>> {
    assert!(keys.len() <= u32::MAX as usize);
    keys.iter()
        .enumerate()
        .map(|(pos, &key)| Item::new(key, pos as u32))
        .collect()
}
