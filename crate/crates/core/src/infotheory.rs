//! Information quantifiers over discrete distributions.
//!
//! All logarithms are natural. For a distribution `P` over `M` bins:
//!
//! * `S[P] = -Σ p ln p` (Shannon entropy, nats)
//! * `H[P] = S[P] / ln M` (normalized entropy)
//! * `J[P, Q] = S[(P+Q)/2] - (S[P] + S[Q]) / 2` (Jensen-Shannon divergence)
//! * `Q_J[P] = J[P, Pₑ] / J[δ, Pₑ]` with `Pₑ` uniform and `δ` any delta
//! * `C[P] = Q_J[P] · H[P]` (statistical complexity)
//!
//! Entropy sums its terms in sorted order, so every quantifier is exactly
//! invariant under relabeling of bins.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordinal::PatternDistribution;

/// Allowed deviation of `Σ p` from 1 for caller-supplied vectors.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

pub const MIN_BOUNDS_RESOLUTION: usize = 16;

fn validate(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidDistribution("no bins".into()));
    }
    if let Some((i, v)) = p
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_finite() || **v < 0.0)
    {
        return Err(Error::InvalidDistribution(format!(
            "bin {i} has mass {v}"
        )));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "mass sums to {total}, not 1"
        )));
    }
    Ok(())
}

fn validate_alphabet(p: &[f64]) -> Result<()> {
    if p.len() < 2 {
        return Err(Error::InvalidDistribution(format!(
            "normalized quantifiers need at least 2 bins, got {}",
            p.len()
        )));
    }
    Ok(())
}

fn entropy_unchecked(p: &[f64]) -> f64 {
    let mut support = p.iter().copied().filter(|&x| x > 0.0);
    let Some(first) = support.next() else {
        return 0.0;
    };
    // k equal nonzero bins of a normalized vector: exactly uniform on k bins
    let mut k = 1usize;
    let mut all_equal = true;
    for x in support {
        k += 1;
        all_equal &= x == first;
    }
    if all_equal {
        return (k as f64).ln();
    }
    let mut terms: Vec<f64> = p
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .collect();
    terms.sort_by(f64::total_cmp);
    terms.iter().sum::<f64>().max(0.0)
}

/// Shannon entropy in nats; empty bins contribute nothing.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    validate(p)?;
    Ok(entropy_unchecked(p))
}

fn normalize(entropy: f64, bins: usize) -> f64 {
    (entropy / (bins as f64).ln()).clamp(0.0, 1.0)
}

/// `S[P] / ln M`, in `[0, 1]`.
pub fn normalized_entropy(p: &[f64]) -> Result<f64> {
    validate(p)?;
    validate_alphabet(p)?;
    Ok(normalize(entropy_unchecked(p), p.len()))
}

fn js_unchecked(p: &[f64], q: &[f64], sp: f64, sq: f64) -> f64 {
    let mid: Vec<f64> = p.iter().zip(q).map(|(a, b)| (a + b) * 0.5).collect();
    (entropy_unchecked(&mid) - (sp + sq) * 0.5).max(0.0)
}

/// Jensen-Shannon divergence in nats, in `[0, ln 2]`.
pub fn jensen_shannon(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::AlphabetMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    validate(p)?;
    validate(q)?;
    Ok(js_unchecked(p, q, entropy_unchecked(p), entropy_unchecked(q)))
}

fn uniform(bins: usize) -> Vec<f64> {
    vec![1.0 / bins as f64; bins]
}

/// `J[δ, Pₑ]` over `bins` bins: the largest divergence from uniform, used to
/// scale the disequilibrium into `[0, 1]`.
fn max_divergence_from_uniform(bins: usize) -> f64 {
    let mut delta = vec![0.0; bins];
    delta[0] = 1.0;
    let pe = uniform(bins);
    js_unchecked(&delta, &pe, 0.0, (bins as f64).ln())
}

fn disequilibrium_unchecked(p: &[f64], entropy: f64) -> f64 {
    let bins = p.len();
    let pe = uniform(bins);
    let j = js_unchecked(p, &pe, entropy, (bins as f64).ln());
    (j / max_divergence_from_uniform(bins)).clamp(0.0, 1.0)
}

/// Jensen-Shannon divergence from the uniform distribution, scaled so that
/// any delta distribution scores 1.
pub fn disequilibrium(p: &[f64]) -> Result<f64> {
    validate(p)?;
    validate_alphabet(p)?;
    Ok(disequilibrium_unchecked(p, entropy_unchecked(p)))
}

/// `Q_J[P] · H[P]`. Zero for both uniform and delta distributions.
pub fn statistical_complexity(p: &[f64]) -> Result<f64> {
    Ok(quantifiers(p)?.complexity)
}

/// The full set of quantifiers for one distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantifiers {
    /// Raw Shannon entropy `S`, nats.
    pub shannon: f64,
    /// Normalized permutation entropy `H`.
    pub entropy: f64,
    pub disequilibrium: f64,
    /// Statistical complexity `C`.
    pub complexity: f64,
}

impl Quantifiers {
    pub fn cecp(&self) -> CecpPoint {
        CecpPoint {
            entropy: self.entropy,
            complexity: self.complexity,
        }
    }

    pub fn from_distribution(dist: &PatternDistribution) -> Result<Self> {
        quantifiers(&dist.probabilities())
    }
}

pub fn quantifiers(p: &[f64]) -> Result<Quantifiers> {
    validate(p)?;
    validate_alphabet(p)?;
    let shannon = entropy_unchecked(p);
    let entropy = normalize(shannon, p.len());
    let disequilibrium = disequilibrium_unchecked(p, shannon);
    Ok(Quantifiers {
        shannon,
        entropy,
        disequilibrium,
        complexity: disequilibrium * entropy,
    })
}

/// A point `(H, C)` in the complexity-entropy causality plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CecpPoint {
    pub entropy: f64,
    pub complexity: f64,
}

impl CecpPoint {
    /// `(1, 0)`: a fully random, structureless series.
    pub const MAX_EFFICIENCY: CecpPoint = CecpPoint {
        entropy: 1.0,
        complexity: 0.0,
    };

    pub fn new(entropy: f64, complexity: f64) -> Self {
        Self {
            entropy,
            complexity,
        }
    }
}

pub fn cecp_point(p: &[f64]) -> Result<CecpPoint> {
    Ok(quantifiers(p)?.cecp())
}

/// A distribution stored as `(probability, multiplicity)` groups, which keeps
/// the bound families cheap for large alphabets.
struct Grouped<'a> {
    groups: &'a [(f64, usize)],
    bins: usize,
}

impl Grouped<'_> {
    fn entropy(&self) -> f64 {
        let support: Vec<_> = self.groups.iter().filter(|(p, m)| *p > 0.0 && *m > 0).collect();
        if let [(_, m)] = support.as_slice() {
            return (*m as f64).ln();
        }
        support
            .iter()
            .map(|(p, m)| -(*m as f64) * p * p.ln())
            .sum::<f64>()
            .max(0.0)
    }

    fn divergence_from_uniform(&self, entropy: f64) -> f64 {
        let pe = 1.0 / self.bins as f64;
        let mid: Vec<(f64, usize)> = self
            .groups
            .iter()
            .map(|&(p, m)| ((p + pe) * 0.5, m))
            .collect();
        let mid = Grouped {
            groups: &mid,
            bins: self.bins,
        };
        (mid.entropy() - (entropy + (self.bins as f64).ln()) * 0.5).max(0.0)
    }

    fn point(&self) -> CecpPoint {
        let s = self.entropy();
        let h = normalize(s, self.bins);
        let delta = [(1.0, 1), (0.0, self.bins - 1)];
        let q0 = Grouped {
            groups: &delta,
            bins: self.bins,
        }
        .divergence_from_uniform(0.0);
        let q = (self.divergence_from_uniform(s) / q0).clamp(0.0, 1.0);
        CecpPoint::new(h, q * h)
    }
}

/// Minimum-complexity family: one bin at `p ∈ [1/M, 1]`, the rest share `1 - p`.
fn lower_family(bins: usize, p: f64) -> CecpPoint {
    let m = bins as f64;
    if p <= 1.0 / m {
        return Grouped {
            groups: &[(1.0 / m, bins)],
            bins,
        }
        .point();
    }
    let groups = [(p, 1), ((1.0 - p) / (m - 1.0), bins - 1)];
    Grouped {
        groups: &groups,
        bins,
    }
    .point()
}

/// Maximum-complexity branch with `support` nonzero bins: one at `p ∈ [0, 1/support]`,
/// the other `support - 1` share `1 - p`, and `M - support` bins empty.
fn upper_family(bins: usize, support: usize, p: f64) -> CecpPoint {
    let n = support as f64;
    if p >= 1.0 / n {
        return Grouped {
            groups: &[(1.0 / n, support), (0.0, bins - support)],
            bins,
        }
        .point();
    }
    let groups = [
        (p, 1),
        ((1.0 - p) / (n - 1.0), support - 1),
        (0.0, bins - support),
    ];
    Grouped {
        groups: &groups,
        bins,
    }
    .point()
}

/// Solves `family(p).entropy == target` by bisection on `[lo, hi]`, where the
/// family's entropy is monotone in `p`.
fn solve_on_family(target: f64, mut lo: f64, mut hi: f64, family: impl Fn(f64) -> CecpPoint) -> CecpPoint {
    let increasing = family(hi).entropy >= family(lo).entropy;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (family(mid).entropy < target) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (a, b) = (family(lo), family(hi));
    if (a.entropy - target).abs() <= (b.entropy - target).abs() {
        a
    } else {
        b
    }
}

/// Lower and upper complexity bounds of the CECP for an alphabet of `M` bins.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CecpBounds {
    pub alphabet_size: usize,
    /// `(H, C_min)` sorted by `H`.
    pub lower: Vec<CecpPoint>,
    /// `(H, C_max)` sorted by `H`.
    pub upper: Vec<CecpPoint>,
}

impl CecpBounds {
    /// Complexity range `(C_min, C_max)` attainable at normalized entropy `h`,
    /// evaluated on the bound families directly rather than on the sampled
    /// polylines.
    pub fn complexity_range(&self, h: f64) -> (f64, f64) {
        complexity_range(self.alphabet_size, h)
    }

    /// Whether `point` lies between the bounds, allowing `tolerance` slack.
    pub fn contains(&self, point: CecpPoint, tolerance: f64) -> bool {
        if !(-tolerance..=1.0 + tolerance).contains(&point.entropy) {
            return false;
        }
        let (lo, hi) = self.complexity_range(point.entropy.clamp(0.0, 1.0));
        point.complexity >= lo - tolerance && point.complexity <= hi + tolerance
    }
}

fn complexity_range(bins: usize, h: f64) -> (f64, f64) {
    if h <= 0.0 || h >= 1.0 || bins < 2 {
        return (0.0, 0.0);
    }
    let m = bins as f64;
    let lower = solve_on_family(h, 1.0 / m, 1.0, |p| lower_family(bins, p));
    // branch with `n` support bins spans H ∈ [ln(n-1)/ln M, ln n/ln M]
    let target = h * m.ln();
    let support = ((2..=bins).find(|&n| (n as f64).ln() >= target)).unwrap_or(bins);
    let upper = solve_on_family(h, 0.0, 1.0 / support as f64, |p| {
        upper_family(bins, support, p)
    });
    (lower.complexity, upper.complexity)
}

/// Samples the lower and upper CECP bound curves for `bins` patterns.
///
/// The lower curve sweeps `resolution` values of `p` along its family; the
/// upper curve sweeps `resolution` values per support size `2..=M` and joins
/// the branches, which tile `H ∈ [0, 1]` in order. Both start at `(0, 0)` and
/// end at `(1, 0)`. The polylines are for plotting; use
/// [`CecpBounds::contains`] for containment checks.
pub fn cecp_bounds(bins: usize, resolution: usize) -> Result<CecpBounds> {
    if bins < 2 {
        return Err(Error::Config(format!(
            "bounds need an alphabet of at least 2 patterns, got {bins}"
        )));
    }
    if resolution < MIN_BOUNDS_RESOLUTION {
        return Err(Error::Config(format!(
            "bounds resolution {resolution} is below the minimum {MIN_BOUNDS_RESOLUTION}"
        )));
    }
    let m = bins as f64;
    let last = (resolution - 1) as f64;

    let mut lower: Vec<CecpPoint> = (0..resolution)
        .map(|i| {
            let t = i as f64 / last;
            let p = if i == 0 { 1.0 / m } else { 1.0 / m + t * (1.0 - 1.0 / m) };
            lower_family(bins, p)
        })
        .collect();
    lower.reverse();

    let mut upper = Vec::with_capacity((bins - 1) * resolution);
    for support in 2..=bins {
        let cap = 1.0 / support as f64;
        let first = if support == 2 { 0 } else { 1 };
        for i in first..resolution {
            let p = if i + 1 == resolution { cap } else { cap * i as f64 / last };
            upper.push(upper_family(bins, support, p));
        }
    }

    Ok(CecpBounds {
        alphabet_size: bins,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const LN2: f64 = std::f64::consts::LN_2;

    fn delta(bins: usize, at: usize) -> Vec<f64> {
        let mut v = vec![0.0; bins];
        v[at] = 1.0;
        v
    }

    /// Textbook evaluation without the sorted summation or uniform shortcut.
    fn naive_entropy(p: &[f64]) -> f64 {
        p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum()
    }

    fn naive_js(p: &[f64], q: &[f64]) -> f64 {
        let m: Vec<f64> = p.iter().zip(q).map(|(a, b)| 0.5 * (a + b)).collect();
        naive_entropy(&m) - 0.5 * naive_entropy(p) - 0.5 * naive_entropy(q)
    }

    #[test]
    fn entropy_analytic_cases() {
        let u24 = uniform(24);
        assert!((shannon_entropy(&u24).unwrap() - 24f64.ln()).abs() < 1e-12);
        assert!((24f64.ln() - 3.17805).abs() < 1e-5);
        assert_eq!(shannon_entropy(&delta(24, 3)).unwrap(), 0.0);
        let mut two = vec![0.0; 24];
        two[0] = 0.5;
        two[1] = 0.5;
        assert!((shannon_entropy(&two).unwrap() - LN2).abs() < 1e-15);
    }

    #[test]
    fn normalized_entropy_cases() {
        assert_eq!(normalized_entropy(&uniform(24)).unwrap(), 1.0);
        assert_eq!(normalized_entropy(&delta(24, 0)).unwrap(), 0.0);
        let mut two = vec![0.0; 24];
        two[5] = 0.5;
        two[17] = 0.5;
        let h = normalized_entropy(&two).unwrap();
        assert!((h - 0.21810).abs() < 1e-5);
    }

    #[test]
    fn invalid_distributions() {
        assert!(matches!(
            shannon_entropy(&[0.5, 0.6]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            shannon_entropy(&[1.5, -0.5]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(shannon_entropy(&[]).is_err());
        assert!(shannon_entropy(&[0.5, 0.5 + 5e-10]).is_ok());
        assert!(normalized_entropy(&[1.0]).is_err());
        assert!(matches!(
            jensen_shannon(&[1.0, 0.0], &[1.0, 0.0, 0.0]),
            Err(Error::AlphabetMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn js_cases() {
        let p = [0.1, 0.2, 0.3, 0.4];
        assert_eq!(jensen_shannon(&p, &p).unwrap(), 0.0);
        // three entropy terms: S[(½,½,0,…)] = ln 2, S[δ] = 0
        let j = jensen_shannon(&delta(6, 0), &delta(6, 4)).unwrap();
        assert!((j - LN2).abs() < 1e-15);
    }

    #[test]
    fn disequilibrium_cases() {
        assert_eq!(disequilibrium(&uniform(24)).unwrap(), 0.0);
        for at in 0..24 {
            assert!((disequilibrium(&delta(24, at)).unwrap() - 1.0).abs() < 1e-15);
        }
        let p = [0.75, 0.25];
        let expected = naive_js(&p, &[0.5, 0.5]) / naive_js(&[1.0, 0.0], &[0.5, 0.5]);
        assert!((disequilibrium(&p).unwrap() - expected).abs() < 1e-12);
        // frozen from a 30-digit evaluation of the same formula
        assert!((expected - 0.156_756_729_308_180_9).abs() < 1e-12, "{expected}");
    }

    #[test]
    fn complexity_cases() {
        assert_eq!(statistical_complexity(&uniform(24)).unwrap(), 0.0);
        assert_eq!(statistical_complexity(&delta(24, 7)).unwrap(), 0.0);

        let mut p = vec![0.0; 24];
        p[0] = 0.4;
        p[1] = 0.4;
        p[2] = 0.2;
        let pe = uniform(24);
        let q = naive_js(&p, &pe) / naive_js(&delta(24, 0), &pe);
        let h = naive_entropy(&p) / 24f64.ln();
        let c = statistical_complexity(&p).unwrap();
        assert!((c - q * h).abs() < 1e-12);
        assert!((c - 0.273_801_893_272_793).abs() < 1e-12, "{c}");
    }

    #[test]
    fn cecp_point_cases() {
        let u = cecp_point(&uniform(24)).unwrap();
        assert_eq!(u, CecpPoint::MAX_EFFICIENCY);
        assert_eq!(cecp_point(&delta(24, 0)).unwrap(), CecpPoint::new(0.0, 0.0));
        let p = [0.1, 0.2, 0.3, 0.4];
        let pt = cecp_point(&p).unwrap();
        assert_eq!(pt.entropy, normalized_entropy(&p).unwrap());
        assert_eq!(pt.complexity, statistical_complexity(&p).unwrap());
    }

    #[test]
    fn grouped_matches_vector_route() {
        for bins in [2usize, 6, 24, 120] {
            for p in [0.0, 0.03, 0.2, 0.5, 0.9] {
                for support in [2, bins / 2 + 1, bins] {
                    let n = support as f64;
                    if support < 2 || p > 1.0 / n {
                        continue;
                    }
                    let mut v = vec![0.0; bins];
                    v[0] = p;
                    for slot in v.iter_mut().take(support).skip(1) {
                        *slot = (1.0 - p) / (n - 1.0);
                    }
                    let a = upper_family(bins, support, p);
                    let b = cecp_point(&v).unwrap();
                    assert!((a.entropy - b.entropy).abs() < 1e-12);
                    assert!((a.complexity - b.complexity).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn bounds_endpoints() {
        for bins in [2usize, 6, 24, 720] {
            let b = cecp_bounds(bins, 32).unwrap();
            for curve in [&b.lower, &b.upper] {
                assert_eq!(*curve.first().unwrap(), CecpPoint::new(0.0, 0.0));
                assert_eq!(*curve.last().unwrap(), CecpPoint::new(1.0, 0.0));
                assert!(curve.windows(2).all(|w| w[0].entropy <= w[1].entropy));
            }
        }
        assert!(matches!(cecp_bounds(24, 15), Err(Error::Config(_))));
        assert!(matches!(cecp_bounds(1, 64), Err(Error::Config(_))));
    }

    #[test]
    fn binary_bounds_coincide() {
        let b = cecp_bounds(2, 64).unwrap();
        for (lo, hi) in b.lower.iter().zip(&b.upper) {
            assert!((lo.entropy - hi.entropy).abs() < 1e-12);
            assert!((lo.complexity - hi.complexity).abs() < 1e-12);
        }
        // brute force over the p grid: every binary distribution sits on both curves
        for i in 0..=1000 {
            let p = i as f64 / 1000.0;
            let pt = cecp_point(&[p, 1.0 - p]).unwrap();
            let (lo, hi) = b.complexity_range(pt.entropy);
            assert!((hi - lo).abs() < 1e-9);
            assert!((pt.complexity - lo).abs() < 1e-9, "p={p}");
        }
    }

    fn distribution(max_bins: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(prop_oneof![Just(0.0), 0.0..1.0f64], 2..=max_bins).prop_filter_map(
            "all-zero",
            |w| {
                let s: f64 = w.iter().sum();
                (s > 0.0).then(|| w.iter().map(|x| x / s).collect())
            },
        )
    }

    fn pair(max_bins: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (2..=max_bins).prop_flat_map(|n| {
            let one = prop::collection::vec(0.0..1.0f64, n).prop_filter_map("zero", |w| {
                let s: f64 = w.iter().sum();
                (s > 0.0).then(|| w.iter().map(|x| x / s).collect::<Vec<_>>())
            });
            (one.clone(), one)
        })
    }

    proptest! {
        #[test]
        fn relabeling_is_exact(p in distribution(8), seed in any::<u64>()) {
            let mut q = p.clone();
            // deterministic shuffle from the seed
            let n = q.len();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                q.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(quantifiers(&p).unwrap(), quantifiers(&q).unwrap());
        }

        #[test]
        fn quantifier_ranges(p in distribution(24)) {
            let q = quantifiers(&p).unwrap();
            prop_assert!((0.0..=1.0).contains(&q.entropy));
            prop_assert!((0.0..=1.0).contains(&q.disequilibrium));
            prop_assert!(q.complexity >= 0.0);
            prop_assert!((q.shannon - q.entropy * (p.len() as f64).ln()).abs() < 1e-12);
            prop_assert!((q.shannon - naive_entropy(&p)).abs() < 1e-12);
        }

        #[test]
        fn js_properties((p, q) in pair(24)) {
            let a = jensen_shannon(&p, &q).unwrap();
            prop_assert_eq!(a, jensen_shannon(&q, &p).unwrap());
            prop_assert!((0.0..=LN2 + 1e-12).contains(&a));
            prop_assert!((a - naive_js(&p, &q)).abs() < 1e-12);
        }

        #[test]
        fn complexity_zero_only_at_extremes(p in distribution(6)) {
            let c = statistical_complexity(&p).unwrap();
            let nonzero: Vec<f64> = p.iter().copied().filter(|&x| x > 0.0).collect();
            let is_uniform = nonzero.len() == p.len()
                && nonzero.iter().all(|&x| (x - nonzero[0]).abs() < 1e-15);
            if nonzero.len() == 1 || is_uniform {
                prop_assert!(c < 1e-12);
            } else {
                prop_assert!(c > 0.0);
            }
        }

        #[test]
        fn continuity(p in distribution(24), from in any::<prop::sample::Index>(), to in any::<prop::sample::Index>()) {
            let eps: f64 = 1e-9;
            let i = from.index(p.len());
            let j = to.index(p.len());
            let mut q = p.clone();
            let moved = eps.min(q[i]);
            q[i] -= moved;
            q[j] += moved;
            let a = quantifiers(&p).unwrap();
            let b = quantifiers(&q).unwrap();
            prop_assert!((a.entropy - b.entropy).abs() < 1e-6);
            prop_assert!((a.disequilibrium - b.disequilibrium).abs() < 1e-6);
            prop_assert!((a.complexity - b.complexity).abs() < 1e-6);
        }

        #[test]
        fn random_distributions_lie_within_bounds(p in distribution(6)) {
            let bounds = cecp_bounds(p.len(), 16).unwrap();
            let pt = cecp_point(&p).unwrap();
            prop_assert!(bounds.contains(pt, 1e-9), "{pt:?} {:?}", bounds.complexity_range(pt.entropy));
        }
    }
}
