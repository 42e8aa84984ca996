//! Seeded synthetic series and shuffle surrogates.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`), seeded with
//! `seed_from_u64`. Plain generators read stream 0; segment `i` of a splice
//! reads stream `i + 1` of the same seed, so segments are independent of one
//! another. Normal variates use `rand_distr::StandardNormal` (ziggurat).
//!
//! Synthetic dates are consecutive business days (Monday to Friday) starting
//! on Monday 1999-05-17.

use chrono::{Datelike, Days, NaiveDate, Weekday};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ingest::TimeSeries;

/// Lower edge of the chaotic regime of the logistic map.
pub const LOGISTIC_CHAOS_ONSET: f64 = 3.57;

pub fn epoch() -> NaiveDate {
    NaiveDate::from_ymd_opt(1999, 5, 17).expect("valid date")
}

/// The first `n` business days on or after [`epoch`].
pub fn business_days(n: usize) -> Vec<NaiveDate> {
    let mut out = Vec::with_capacity(n);
    let mut day = epoch();
    while out.len() < n {
        if !matches!(day.weekday(), Weekday::Sat | Weekday::Sun) {
            out.push(day);
        }
        day = day + Days::new(1);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// i.i.d. uniform on `[0, 1)`.
    WhiteNoise,
    /// Cumulative sum of i.i.d. standard normal steps.
    RandomWalk,
    /// `x[t+1] = φ·x[t] + ε`, started from the stationary distribution.
    Ar1 { phi: f64 },
    /// `x[t+1] = r·x[t]·(1 - x[t])` from a seeded `x[0] ∈ (0, 1)`.
    LogisticMap { r: f64 },
    /// A latent random walk observed through quotes that stay flat with
    /// probability `hold_prob` each step and otherwise jump to the latent
    /// value rounded to `tick_size`.
    StaleQuote { hold_prob: f64, tick_size: f64 },
    /// Concatenation of segments. Segments may not themselves be splices.
    Splice { segments: Vec<Segment> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segment {
    pub kind: GeneratorKind,
    pub length: usize,
}

impl Segment {
    pub fn new(kind: GeneratorKind, length: usize) -> Self {
        Self { kind, length }
    }
}

impl GeneratorKind {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::WhiteNoise => "white-noise",
            GeneratorKind::RandomWalk => "random-walk",
            GeneratorKind::Ar1 { .. } => "ar1",
            GeneratorKind::LogisticMap { .. } => "logistic-map",
            GeneratorKind::StaleQuote { .. } => "stale-quote",
            GeneratorKind::Splice { .. } => "splice",
        }
    }

    fn validate(&self, nested: bool) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        match *self {
            GeneratorKind::WhiteNoise | GeneratorKind::RandomWalk => Ok(()),
            GeneratorKind::Ar1 { phi } if phi.is_nan() || phi.abs() >= 1.0 => {
                bad(format!("AR(1) coefficient φ={phi} must satisfy |φ| < 1"))
            }
            GeneratorKind::LogisticMap { r } if !(r > LOGISTIC_CHAOS_ONSET && r <= 4.0) => bad(
                format!("logistic parameter r={r} must lie in ({LOGISTIC_CHAOS_ONSET}, 4]"),
            ),
            GeneratorKind::StaleQuote { hold_prob, .. } if !(0.0..1.0).contains(&hold_prob) => {
                bad(format!("hold probability {hold_prob} must lie in [0, 1)"))
            }
            GeneratorKind::StaleQuote { tick_size, .. }
                if !(tick_size.is_finite() && tick_size > 0.0) =>
            {
                bad(format!("tick size {tick_size} must be positive"))
            }
            GeneratorKind::Splice { .. } if nested => bad("splices cannot be nested".into()),
            GeneratorKind::Splice { ref segments } => {
                if segments.is_empty() {
                    return bad("splice needs at least one segment".into());
                }
                for s in segments {
                    if s.length == 0 {
                        return bad(format!("{} segment has zero length", s.kind.name()));
                    }
                    s.kind.validate(true)?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub length: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, length: usize, seed: u64) -> Result<Self> {
        let spec = Self { kind, length, seed };
        spec.validate()?;
        Ok(spec)
    }

    /// A splice whose length is the sum of its segments.
    pub fn splice(segments: Vec<Segment>, seed: u64) -> Result<Self> {
        let length = segments.iter().map(|s| s.length).sum();
        Self::new(GeneratorKind::Splice { segments }, length, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.length == 0 {
            return Err(Error::Config("series length must be ≥ 1".into()));
        }
        self.kind.validate(false)?;
        if let GeneratorKind::Splice { segments } = &self.kind {
            let sum: usize = segments.iter().map(|s| s.length).sum();
            if sum != self.length {
                return Err(Error::Config(format!(
                    "splice segments sum to {sum} observations but length is {}",
                    self.length
                )));
            }
        }
        Ok(())
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Iterates the logistic map `len` times starting from (and including) `x0`.
pub fn logistic_orbit(r: f64, x0: f64, len: usize) -> Vec<f64> {
    std::iter::successors(Some(x0), |&x| Some(r * x * (1.0 - x)))
        .take(len)
        .collect()
}

fn values_for(kind: &GeneratorKind, len: usize, seed: u64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match *kind {
        GeneratorKind::WhiteNoise => (0..len).map(|_| rng.random::<f64>()).collect(),
        GeneratorKind::RandomWalk => {
            let mut level = 0.0;
            (0..len)
                .map(|_| {
                    level += normal(rng);
                    level
                })
                .collect()
        }
        GeneratorKind::Ar1 { phi } => {
            let mut x = normal(rng) / (1.0 - phi * phi).sqrt();
            let mut out = Vec::with_capacity(len);
            out.push(x);
            for _ in 1..len {
                x = phi * x + normal(rng);
                out.push(x);
            }
            out
        }
        GeneratorKind::LogisticMap { r } => {
            let x0 = loop {
                let u = rng.random::<f64>();
                if u > 0.0 {
                    break u;
                }
            };
            logistic_orbit(r, x0, len)
        }
        GeneratorKind::StaleQuote {
            hold_prob,
            tick_size,
        } => {
            let quantize = |w: f64| (w / tick_size).round() * tick_size;
            let mut latent = normal(rng);
            let mut quote = quantize(latent);
            let mut out = Vec::with_capacity(len);
            out.push(quote);
            for _ in 1..len {
                latent += normal(rng);
                let hold = rng.random::<f64>() < hold_prob;
                if !hold {
                    quote = quantize(latent);
                }
                out.push(quote);
            }
            out
        }
        GeneratorKind::Splice { ref segments } => segments
            .iter()
            .enumerate()
            .flat_map(|(i, s)| {
                let mut seg_rng = rng_for(seed, i as u64 + 1);
                values_for(&s.kind, s.length, seed, &mut seg_rng)
            })
            .collect(),
    }
}

/// Generates the series described by `spec`; a pure function of the spec.
pub fn generate(spec: &GeneratorSpec) -> Result<TimeSeries> {
    spec.validate()?;
    let mut rng = rng_for(spec.seed, 0);
    let values = values_for(&spec.kind, spec.length, spec.seed, &mut rng);
    TimeSeries::new(spec.kind.name(), business_days(spec.length), values)
}

/// Same values in a uniformly random order, same dates.
pub fn shuffle_surrogate(series: &TimeSeries, seed: u64) -> Result<TimeSeries> {
    if series.len() < 2 {
        return Err(Error::InsufficientData {
            what: "a shuffle surrogate",
            needed: 2,
            got: series.len(),
        });
    }
    let mut values = series.values().to_vec();
    values.shuffle(&mut rng_for(seed, 0));
    series.with_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::{pattern_distribution, OrdinalConfig, TiePolicy};

    fn make(kind: GeneratorKind, length: usize, seed: u64) -> TimeSeries {
        generate(&GeneratorSpec::new(kind, length, seed).unwrap()).unwrap()
    }

    #[test]
    fn epoch_is_a_monday() {
        assert_eq!(epoch().weekday(), Weekday::Mon);
        let days = business_days(6);
        assert_eq!(days[4], NaiveDate::from_ymd_opt(1999, 5, 21).unwrap());
        assert_eq!(days[5], NaiveDate::from_ymd_opt(1999, 5, 24).unwrap());
    }

    #[test]
    fn deterministic_under_seed() {
        let a = make(GeneratorKind::WhiteNoise, 5, 11);
        let b = make(GeneratorKind::WhiteNoise, 5, 11);
        let c = make(GeneratorKind::WhiteNoise, 5, 12);
        assert_eq!(a, b);
        assert_ne!(a.values(), c.values());
        assert!(a.values().iter().all(|v| (0.0..1.0).contains(v)));
    }

    #[test]
    fn logistic_recurrence() {
        let orbit = logistic_orbit(4.0, 0.2, 4);
        let expected = [0.2, 0.64, 0.9216, 0.28901376];
        for (a, b) in orbit.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15, "{a} vs {b}");
        }
    }

    #[test]
    fn stale_quote_holds_at_rate() {
        let kind = GeneratorKind::StaleQuote {
            hold_prob: 0.9,
            tick_size: 0.01,
        };
        let s = make(kind, 10_000, 3);
        let zeros = s.values().windows(2).filter(|w| w[0] == w[1]).count();
        let frac = zeros as f64 / 9_999.0;
        // binomial sd ≈ 0.003, so ±0.03 is a ten-sigma band
        assert!((frac - 0.9).abs() < 0.03, "{frac}");
        assert!(s
            .values()
            .iter()
            .all(|v| ((v / 0.01).round() * 0.01 - v).abs() < 1e-9));
    }

    #[test]
    fn random_walk_sign_balance() {
        let s = make(GeneratorKind::RandomWalk, 10_000, 5);
        let ups = s.values().windows(2).filter(|w| w[1] > w[0]).count();
        let frac = ups as f64 / 9_999.0;
        assert!((0.47..=0.53).contains(&frac), "{frac}");
    }

    #[test]
    fn ar1_is_persistent() {
        let s = make(GeneratorKind::Ar1 { phi: 0.9 }, 5_000, 8);
        let x = s.values();
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        let var: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
        let cov: f64 = x.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
        assert!((cov / var - 0.9).abs() < 0.05);
    }

    #[test]
    fn logistic_has_forbidden_patterns() {
        for seed in 0..5 {
            let s = make(GeneratorKind::LogisticMap { r: 4.0 }, 2000, seed);
            for d in 3..=5 {
                let cfg = OrdinalConfig::new(d, 1, TiePolicy::IndexOrder).unwrap();
                let dist = pattern_distribution(s.values(), &cfg).unwrap();
                assert!(dist.forbidden_patterns() >= 1, "seed {seed} D={d}");
            }
        }
    }

    #[test]
    fn splice_lengths_and_segments() {
        let spec = GeneratorSpec::splice(
            vec![
                Segment::new(GeneratorKind::WhiteNoise, 1500),
                Segment::new(GeneratorKind::RandomWalk, 1000),
                Segment::new(GeneratorKind::WhiteNoise, 1496),
            ],
            9,
        )
        .unwrap();
        assert_eq!(spec.length, 3996);
        let s = generate(&spec).unwrap();
        assert_eq!(s.len(), 3996);
        assert_eq!(s.name(), "splice");
        // segment 1 reads stream 1: identical to generating it there alone
        let mut rng = rng_for(9, 1);
        let alone = values_for(&GeneratorKind::WhiteNoise, 1500, 9, &mut rng);
        assert_eq!(&s.values()[..1500], alone.as_slice());
    }

    #[test]
    fn invalid_parameters() {
        let cases = [
            GeneratorKind::Ar1 { phi: 1.0 },
            GeneratorKind::LogisticMap { r: 3.5 },
            GeneratorKind::LogisticMap { r: 4.1 },
            GeneratorKind::StaleQuote {
                hold_prob: 1.0,
                tick_size: 0.01,
            },
            GeneratorKind::StaleQuote {
                hold_prob: 0.5,
                tick_size: 0.0,
            },
            GeneratorKind::Splice { segments: vec![] },
        ];
        for kind in cases {
            assert!(matches!(GeneratorSpec::new(kind, 10, 0), Err(Error::Config(_))));
        }
        assert!(GeneratorSpec::new(GeneratorKind::WhiteNoise, 0, 0).is_err());
        let nested = GeneratorKind::Splice {
            segments: vec![Segment::new(
                GeneratorKind::Splice {
                    segments: vec![Segment::new(GeneratorKind::WhiteNoise, 2)],
                },
                2,
            )],
        };
        assert!(GeneratorSpec::new(nested, 2, 0).is_err());
        let mismatched = GeneratorKind::Splice {
            segments: vec![Segment::new(GeneratorKind::WhiteNoise, 2)],
        };
        assert!(GeneratorSpec::new(mismatched, 3, 0).is_err());
    }

    #[test]
    fn surrogate_preserves_values() {
        let s = make(GeneratorKind::RandomWalk, 300, 1);
        let sur = shuffle_surrogate(&s, 4).unwrap();
        assert_eq!(sur.dates(), s.dates());
        let mut a = s.values().to_vec();
        let mut b = sur.values().to_vec();
        assert_ne!(a, b);
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        assert_eq!(a, b);
        assert_eq!(shuffle_surrogate(&s, 4).unwrap(), sur);
    }

    #[test]
    fn surrogate_edge_lengths() {
        let one = TimeSeries::new("x", business_days(1), vec![1.0]).unwrap();
        assert!(matches!(
            shuffle_surrogate(&one, 0),
            Err(Error::InsufficientData { .. })
        ));
        let two = TimeSeries::new("x", business_days(2), vec![1.0, 2.0]).unwrap();
        let mut seen = std::collections::HashSet::new();
        for seed in 0..64 {
            let v = shuffle_surrogate(&two, seed).unwrap().values().to_vec();
            assert!(v == [1.0, 2.0] || v == [2.0, 1.0]);
            seen.insert(v[0].to_bits());
        }
        assert_eq!(seen.len(), 2);
    }
}
