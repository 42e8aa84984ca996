//! Bandt-Pompe ordinal symbolization.
//!
//! A segment is cut into embedding vectors `(x_t, x_{t+τ}, ..., x_{t+(D-1)τ})`.
//! Each vector is replaced by the permutation that sorts it ascending, and the
//! permutation is stored as its Lehmer rank in `0..D!`.

use std::borrow::Cow;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MIN_DIMENSION: usize = 2;
pub const MAX_DIMENSION: usize = 7;

const FACTORIALS: [usize; MAX_DIMENSION + 1] = [1, 1, 2, 6, 24, 120, 720, 5040];

/// `n!` for `n <= 7`.
pub fn factorial(n: usize) -> usize {
    FACTORIALS[n]
}

/// How equal values inside an embedding vector are ordered.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TiePolicy {
    /// Equal values rank by position: the earlier observation is the smaller.
    /// A run of identical values therefore maps to the ascending pattern.
    #[default]
    IndexOrder,
    /// Every observation is shifted by `amplitude * (u - 1/2)` with `u` in
    /// `[0, 1)` drawn from `(seed, observation index)`; remaining ties fall
    /// back to index order. The amplitude should sit below the data's
    /// quantization step or it will reorder genuinely distinct values.
    Jitter { seed: u64, amplitude: f64 },
}

impl TiePolicy {
    /// Applies the policy's perturbation to a whole series. Index order needs
    /// none and borrows the input.
    pub fn prepare<'a>(&self, values: &'a [f64]) -> Cow<'a, [f64]> {
        match *self {
            TiePolicy::IndexOrder => Cow::Borrowed(values),
            TiePolicy::Jitter { seed, amplitude } => Cow::Owned(
                values
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| x + amplitude * (unit_jitter(seed, i as u64) - 0.5))
                    .collect(),
            ),
        }
    }
}

/// SplitMix64 finalizer (Steele, Lea & Flood), used as a counter-based hash so
/// jitter depends only on the seed and the observation index.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit_jitter(seed: u64, index: u64) -> f64 {
    let bits = splitmix64(seed ^ splitmix64(index));
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Embedding dimension, delay and tie handling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrdinalConfig {
    dimension: usize,
    delay: usize,
    tie_policy: TiePolicy,
}

impl Default for OrdinalConfig {
    fn default() -> Self {
        Self {
            dimension: 4,
            delay: 1,
            tie_policy: TiePolicy::IndexOrder,
        }
    }
}

impl OrdinalConfig {
    pub fn new(dimension: usize, delay: usize, tie_policy: TiePolicy) -> Result<Self> {
        if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&dimension) {
            return Err(Error::Config(format!(
                "embedding dimension D={dimension} must satisfy {MIN_DIMENSION} ≤ D ≤ {MAX_DIMENSION}"
            )));
        }
        if delay == 0 {
            return Err(Error::Config("embedding delay τ must be ≥ 1".into()));
        }
        if let TiePolicy::Jitter { amplitude, .. } = tie_policy {
            if !(amplitude.is_finite() && amplitude > 0.0) {
                return Err(Error::Config(format!(
                    "jitter amplitude must be positive and finite, got {amplitude}"
                )));
            }
        }
        Ok(Self {
            dimension,
            delay,
            tie_policy,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn delay(&self) -> usize {
        self.delay
    }

    pub fn tie_policy(&self) -> TiePolicy {
        self.tie_policy
    }

    /// Number of distinct patterns, `D!`.
    pub fn alphabet_size(&self) -> usize {
        factorial(self.dimension)
    }

    /// Observations spanned by one embedding vector, `(D-1)τ + 1`.
    pub fn span(&self) -> usize {
        (self.dimension - 1) * self.delay + 1
    }

    /// Number of embedding vectors in a segment of `len` observations.
    pub fn pattern_count(&self, len: usize) -> usize {
        (len + 1).saturating_sub(self.span())
    }
}

/// Lehmer rank of an ordinal pattern, in `0..D!`. Rank 0 is the ascending
/// pattern `(0, 1, ..., D-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PatternId(u16);

impl PatternId {
    pub fn rank(self) -> usize {
        self.0 as usize
    }

    pub fn from_rank(rank: usize, dimension: usize) -> Option<Self> {
        (dimension <= MAX_DIMENSION && rank < factorial(dimension)).then_some(Self(rank as u16))
    }

    /// Ranks a permutation of `0..D`. Returns `None` if `perm` is not one.
    pub fn from_permutation(perm: &[usize]) -> Option<Self> {
        let d = perm.len();
        if !(1..=MAX_DIMENSION).contains(&d) {
            return None;
        }
        let mut seen = [false; MAX_DIMENSION];
        for &p in perm {
            if p >= d || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        Some(Self(lehmer_rank(perm) as u16))
    }

    pub fn to_permutation(self, dimension: usize) -> Vec<usize> {
        let mut remaining: Vec<usize> = (0..dimension).collect();
        let mut rank = self.rank();
        let mut perm = Vec::with_capacity(dimension);
        for i in 0..dimension {
            let f = factorial(dimension - 1 - i);
            perm.push(remaining.remove(rank / f));
            rank %= f;
        }
        perm
    }
}

fn lehmer_rank(perm: &[usize]) -> usize {
    let d = perm.len();
    let mut rank = 0;
    for i in 0..d {
        let smaller_after = perm[i + 1..].iter().filter(|&&p| p < perm[i]).count();
        rank += smaller_after * factorial(d - 1 - i);
    }
    rank
}

/// Sorting permutation of `values` under index-order ties. Only called with
/// `values.len() <= MAX_DIMENSION`.
fn sorting_permutation(values: &[f64]) -> ([usize; MAX_DIMENSION], usize) {
    let d = values.len();
    let mut idx = [0usize; MAX_DIMENSION];
    for (i, slot) in idx.iter_mut().enumerate().take(d) {
        *slot = i;
    }
    // insertion sort; strict comparison keeps earlier indices first on ties
    for i in 1..d {
        let mut j = i;
        while j > 0 && values[idx[j]] < values[idx[j - 1]] {
            idx.swap(j, j - 1);
            j -= 1;
        }
    }
    (idx, d)
}

fn rank_window(values: &[f64]) -> PatternId {
    let (perm, d) = sorting_permutation(values);
    PatternId(lehmer_rank(&perm[..d]) as u16)
}

/// Ordinal pattern of a single embedding vector: the permutation listing the
/// positions of the values from smallest to largest.
///
/// # Panics
///
/// If `window` has fewer than 2 or more than 7 values. Jitter is keyed by
/// position within `window`.
pub fn pattern_of(window: &[f64], tie_policy: TiePolicy) -> PatternId {
    assert!(
        (MIN_DIMENSION..=MAX_DIMENSION).contains(&window.len()),
        "pattern_of: window length {} outside {MIN_DIMENSION}..={MAX_DIMENSION}",
        window.len()
    );
    rank_window(&tie_policy.prepare(window))
}

fn check_input(values: &[f64], config: &OrdinalConfig) -> Result<()> {
    if values.len() < config.span() {
        return Err(Error::InsufficientData {
            what: "ordinal patterns",
            needed: config.span(),
            got: values.len(),
        });
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    Ok(())
}

/// Calls `f` with the pattern of every embedding vector, in order. `values`
/// must already be prepared for the tie policy.
fn for_each_pattern(values: &[f64], dimension: usize, delay: usize, mut f: impl FnMut(PatternId)) {
    let span = (dimension - 1) * delay + 1;
    let mut buf = [0.0f64; MAX_DIMENSION];
    for t in 0..=(values.len() - span) {
        for (k, slot) in buf.iter_mut().enumerate().take(dimension) {
            *slot = values[t + k * delay];
        }
        f(rank_window(&buf[..dimension]));
    }
}

/// One pattern per embedding vector, for `t = 0 .. L - (D-1)τ - 1`.
pub fn extract_patterns(values: &[f64], config: &OrdinalConfig) -> Result<Vec<PatternId>> {
    check_input(values, config)?;
    let prepared = config.tie_policy.prepare(values);
    let mut out = Vec::with_capacity(config.pattern_count(values.len()));
    for_each_pattern(&prepared, config.dimension, config.delay, |p| out.push(p));
    Ok(out)
}

/// Pattern counts over all `D!` ordinal patterns of a segment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternDistribution {
    dimension: usize,
    counts: Vec<u64>,
    #[serde(skip)]
    total: u64,
}

impl PatternDistribution {
    pub fn from_counts(dimension: usize, counts: Vec<u64>) -> Result<Self> {
        if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&dimension) {
            return Err(Error::Config(format!("dimension {dimension} out of range")));
        }
        if counts.len() != factorial(dimension) {
            return Err(Error::AlphabetMismatch {
                left: counts.len(),
                right: factorial(dimension),
            });
        }
        let total = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidDistribution("no patterns counted".into()));
        }
        Ok(Self {
            dimension,
            counts,
            total,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, pattern: PatternId) -> u64 {
        self.counts[pattern.rank()]
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    /// Patterns never observed. Deterministic dynamics leave some of these.
    pub fn forbidden_patterns(&self) -> usize {
        self.counts.iter().filter(|&&c| c == 0).count()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        let total = self.total as f64;
        self.counts.iter().map(|&c| c as f64 / total).collect()
    }
}

/// Counts the ordinal patterns of `values`; `total = L - (D-1)τ`.
pub fn pattern_distribution(values: &[f64], config: &OrdinalConfig) -> Result<PatternDistribution> {
    check_input(values, config)?;
    let prepared = config.tie_policy.prepare(values);
    let mut counts = vec![0u64; config.alphabet_size()];
    for_each_pattern(&prepared, config.dimension, config.delay, |p| {
        counts[p.rank()] += 1
    });
    PatternDistribution::from_counts(config.dimension, counts)
}
