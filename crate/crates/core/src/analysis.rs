//! Sliding-window CECP trajectories and entropy drift flags.

use std::ops::RangeInclusive;

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::infotheory::{CecpPoint, Quantifiers};
use crate::ingest::TimeSeries;
use crate::ordinal::{pattern_distribution, OrdinalConfig, TiePolicy};

/// Minimum expected count per pattern a window must afford: `W ≥ (D-1)τ + 5·D!`.
pub const MIN_PATTERNS_PER_SYMBOL: usize = 5;

/// Window length and step, both in observations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowSpec {
    length: usize,
    step: usize,
}

impl Default for WindowSpec {
    fn default() -> Self {
        Self {
            length: 500,
            step: 30,
        }
    }
}

impl WindowSpec {
    pub fn new(length: usize, step: usize) -> Result<Self> {
        if step == 0 {
            return Err(Error::Config("window step δ must be ≥ 1".into()));
        }
        if length < 2 {
            return Err(Error::Config(format!(
                "window length W={length} must be ≥ 2"
            )));
        }
        Ok(Self { length, step })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn step(&self) -> usize {
        self.step
    }

    /// Smallest window that yields on average five observations per pattern.
    pub fn min_length_for(config: &OrdinalConfig) -> usize {
        (config.dimension() - 1) * config.delay() + MIN_PATTERNS_PER_SYMBOL * config.alphabet_size()
    }

    pub fn check_against(&self, config: &OrdinalConfig) -> Result<()> {
        let needed = Self::min_length_for(config);
        if self.length < needed {
            return Err(Error::Config(format!(
                "window length W={} violates W ≥ (D−1)·τ + 5·D! = ({}−1)·{} + 5·{} = {} ({} < {})",
                self.length,
                config.dimension(),
                config.delay(),
                config.alphabet_size(),
                needed,
                self.length,
                needed
            )));
        }
        Ok(())
    }
}

/// Number of full windows in a series of `len` observations, or 0 if the
/// series is shorter than one window.
pub fn window_count(len: usize, length: usize, step: usize) -> usize {
    if len < length || step == 0 {
        0
    } else {
        (len - length) / step + 1
    }
}

/// A borrowed view of one window.
#[derive(Debug, Clone, Copy)]
pub struct WindowSegment<'a> {
    /// 1-based window number.
    pub index: usize,
    /// Offset of the first observation in the series.
    pub start: usize,
    pub values: &'a [f64],
    pub dates: &'a [NaiveDate],
}

impl WindowSegment<'_> {
    pub fn start_date(&self) -> NaiveDate {
        self.dates[0]
    }

    pub fn end_date(&self) -> NaiveDate {
        self.dates[self.dates.len() - 1]
    }
}

/// Window `k` covers observations `[(k-1)δ, (k-1)δ + W)`. Windows are anchored
/// at the first observation; a tail shorter than a full window is dropped.
pub fn sliding_windows<'a>(series: &'a TimeSeries, spec: &WindowSpec) -> Result<Vec<WindowSegment<'a>>> {
    let total = series.len();
    if total < spec.length {
        return Err(Error::InsufficientData {
            what: "one analysis window",
            needed: spec.length,
            got: total,
        });
    }
    Ok((0..window_count(total, spec.length, spec.step))
        .map(|k| {
            let start = k * spec.step;
            let range = start..start + spec.length;
            WindowSegment {
                index: k + 1,
                start,
                values: &series.values()[range.clone()],
                dates: &series.dates()[range],
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowResult {
    pub index: usize,
    pub start: usize,
    pub start_date: NaiveDate,
    pub end_date: NaiveDate,
    pub quantifiers: Quantifiers,
}

impl WindowResult {
    pub fn cecp(&self) -> CecpPoint {
        self.quantifiers.cecp()
    }

    pub fn entropy(&self) -> f64 {
        self.quantifiers.entropy
    }

    pub fn complexity(&self) -> f64 {
        self.quantifiers.complexity
    }
}

/// The windowed `(H, C)` path of one series, with the configuration that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CecpTrajectory {
    pub series: String,
    pub ordinal: OrdinalConfig,
    pub window: WindowSpec,
    pub results: Vec<WindowResult>,
}

impl CecpTrajectory {
    pub fn len(&self) -> usize {
        self.results.len()
    }

    pub fn is_empty(&self) -> bool {
        self.results.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = CecpPoint> + '_ {
        self.results.iter().map(WindowResult::cecp)
    }

    pub fn entropies(&self) -> Vec<f64> {
        self.results.iter().map(WindowResult::entropy).collect()
    }

    /// The window with the lowest `H`; the earliest one on ties.
    pub fn min_entropy(&self) -> Option<&WindowResult> {
        self.results
            .iter()
            .reduce(|best, r| if r.entropy() < best.entropy() { r } else { best })
    }
}

/// Quantifiers of a single segment analyzed on its own.
pub fn analyze_window(values: &[f64], config: &OrdinalConfig) -> Result<Quantifiers> {
    Quantifiers::from_distribution(&pattern_distribution(values, config)?)
}

/// Runs the ordinal pipeline on every window of `series`.
///
/// The tie policy is applied once to the whole series, so jitter is keyed by
/// absolute observation index and a window sees the same perturbation no
/// matter which window it belongs to. Windows are evaluated in parallel and
/// returned in index order.
pub fn analyze(series: &TimeSeries, config: &OrdinalConfig, spec: &WindowSpec) -> Result<CecpTrajectory> {
    spec.check_against(config)?;
    let windows = sliding_windows(series, spec)?;
    let prepared = config.tie_policy().prepare(series.values());
    let plain = OrdinalConfig::new(config.dimension(), config.delay(), TiePolicy::IndexOrder)?;

    let results = windows
        .par_iter()
        .map(|w| {
            let values = &prepared[w.start..w.start + spec.length];
            Ok(WindowResult {
                index: w.index,
                start: w.start,
                start_date: w.start_date(),
                end_date: w.end_date(),
                quantifiers: analyze_window(values, &plain)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CecpTrajectory {
        series: series.name().to_string(),
        ordinal: *config,
        window: *spec,
        results,
    })
}

/// Per-window entropy flags and trailing least-squares trend of `H`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftReport {
    pub h_threshold: f64,
    pub trend_span: usize,
    /// `flags[k]` is set when window `k+1` has `H` below the threshold.
    pub flags: Vec<bool>,
    /// Slope of `H` per window over the trailing `trend_span` windows; `None`
    /// until enough windows exist.
    pub trends: Vec<Option<f64>>,
}

impl DriftReport {
    pub fn flagged_count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    /// Maximal runs of flagged windows, as 1-based inclusive index ranges.
    pub fn flagged_blocks(&self) -> Vec<RangeInclusive<usize>> {
        let mut blocks = Vec::new();
        let mut open: Option<usize> = None;
        for (i, &flag) in self.flags.iter().enumerate() {
            match (flag, open) {
                (true, None) => open = Some(i + 1),
                (false, Some(start)) => {
                    blocks.push(start..=i);
                    open = None;
                }
                _ => {}
            }
        }
        if let Some(start) = open {
            blocks.push(start..=self.flags.len());
        }
        blocks
    }
}

fn ols_slope(ys: &[f64]) -> f64 {
    let n = ys.len() as f64;
    let x_mean = (n - 1.0) / 2.0;
    let y_mean = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, y) in ys.iter().enumerate() {
        let dx = i as f64 - x_mean;
        sxy += dx * (y - y_mean);
        sxx += dx * dx;
    }
    sxy / sxx
}

pub fn drift_report(trajectory: &CecpTrajectory, h_threshold: f64, trend_span: usize) -> Result<DriftReport> {
    if trajectory.is_empty() {
        return Err(Error::Config("drift report needs a non-empty trajectory".into()));
    }
    if !(h_threshold > 0.0 && h_threshold < 1.0) {
        return Err(Error::Config(format!(
            "entropy threshold {h_threshold} must lie strictly between 0 and 1"
        )));
    }
    if trend_span < 2 {
        return Err(Error::Config(format!("trend span {trend_span} must be at least 2")));
    }
    let h = trajectory.entropies();
    let flags = h.iter().map(|&x| x < h_threshold).collect();
    let trends = (0..h.len())
        .map(|k| (k + 1 >= trend_span).then(|| ols_slope(&h[k + 1 - trend_span..=k])))
        .collect();
    Ok(DriftReport {
        h_threshold,
        trend_span,
        flags,
        trends,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::business_days;
    use proptest::prelude::*;

    fn series(values: Vec<f64>) -> TimeSeries {
        TimeSeries::new("s", business_days(values.len()), values).unwrap()
    }

    fn trajectory_with(h: &[f64]) -> CecpTrajectory {
        let dates = business_days(h.len() + 1);
        CecpTrajectory {
            series: "t".into(),
            ordinal: OrdinalConfig::default(),
            window: WindowSpec::default(),
            results: h
                .iter()
                .enumerate()
                .map(|(i, &e)| WindowResult {
                    index: i + 1,
                    start: i,
                    start_date: dates[i],
                    end_date: dates[i + 1],
                    quantifiers: Quantifiers {
                        shannon: e * 24f64.ln(),
                        entropy: e,
                        disequilibrium: 0.0,
                        complexity: 0.0,
                    },
                })
                .collect(),
        }
    }

    #[test]
    fn window_arithmetic() {
        let s = series((0..560).map(f64::from).collect());
        let starts: Vec<usize> = sliding_windows(&s, &WindowSpec::new(500, 30).unwrap())
            .unwrap()
            .iter()
            .map(|w| w.start)
            .collect();
        assert_eq!(starts, vec![0, 30, 60]);
        assert_eq!(window_count(500, 500, 30), 1);
        // (3996 - 500) / 30 + 1 = 116 + 1
        assert_eq!(window_count(3996, 500, 30), 117);
    }

    #[test]
    fn short_series() {
        let s = series(vec![1.0; 10]);
        match sliding_windows(&s, &WindowSpec::new(20, 1).unwrap()) {
            Err(Error::InsufficientData { needed: 20, got: 10, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn window_constraint_message() {
        let cfg = OrdinalConfig::new(6, 1, TiePolicy::IndexOrder).unwrap();
        let err = WindowSpec::new(100, 30).unwrap().check_against(&cfg).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("3605") && msg.contains("100 < 3605"), "{msg}");
        assert!(WindowSpec::default()
            .check_against(&OrdinalConfig::default())
            .is_ok());
        assert!(WindowSpec::new(500, 0).is_err());
    }

    #[test]
    fn monotone_series_sits_at_origin() {
        let s = series((0..800).map(f64::from).collect());
        let t = analyze(&s, &OrdinalConfig::default(), &WindowSpec::default()).unwrap();
        assert_eq!(t.len(), 11);
        for r in &t.results {
            assert_eq!(r.cecp(), CecpPoint::new(0.0, 0.0));
            assert!(r.start_date < r.end_date);
        }
        assert!(t.results.windows(2).all(|w| w[0].index + 1 == w[1].index && w[0].start_date < w[1].start_date));
    }

    #[test]
    fn drift_flat_high_entropy() {
        let r = drift_report(&trajectory_with(&[0.99; 20]), 0.8, 10).unwrap();
        assert_eq!(r.flagged_count(), 0);
        assert!(r.trends[..9].iter().all(Option::is_none));
        assert!(r.trends[9..].iter().all(|t| t.unwrap().abs() < 1e-12));
    }

    #[test]
    fn drift_linear_decline() {
        // 1.0 → 0.4 over 60 windows: slope -0.6/59 per window
        let h: Vec<f64> = (0..60).map(|i| 1.0 - 0.6 * i as f64 / 59.0).collect();
        let r = drift_report(&trajectory_with(&h), 0.8, 10).unwrap();
        for t in r.trends.iter().flatten() {
            assert!((t + 0.6 / 59.0).abs() < 1e-12);
            assert!((t + 0.01).abs() < 2e-4);
        }
        assert_eq!(r.flagged_blocks().len(), 1);
    }

    #[test]
    fn drift_blocks_and_errors() {
        let r = drift_report(&trajectory_with(&[0.9, 0.5, 0.6, 0.9, 0.7, 0.7]), 0.8, 2).unwrap();
        assert_eq!(r.flagged_blocks(), vec![2..=3, 5..=6]);
        let t = trajectory_with(&[0.9; 5]);
        assert!(drift_report(&t, 0.0, 2).is_err());
        assert!(drift_report(&t, 1.0, 2).is_err());
        assert!(drift_report(&t, 0.5, 1).is_err());
        assert!(drift_report(&t, 0.5, 6).unwrap().trends.iter().all(Option::is_none));
        assert!(drift_report(&trajectory_with(&[]), 0.5, 2).is_err());
    }

    proptest! {
        #[test]
        fn count_formula_matches_enumeration(total in 1usize..3000, length in 1usize..800, step in 1usize..120) {
            let mut enumerated = 0;
            let mut start = 0;
            while start + length <= total {
                enumerated += 1;
                start += step;
            }
            prop_assert_eq!(window_count(total, length, step), enumerated);
        }

        #[test]
        fn windows_are_independent(seed in any::<u64>(), step in 7usize..60) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<f64> = (0..700).map(|_| (rng.random::<f64>() * 20.0).round()).collect();
            let s = series(values);
            let cfg = OrdinalConfig::new(3, 1, TiePolicy::IndexOrder).unwrap();
            let spec = WindowSpec::new(200, step).unwrap();
            let t = analyze(&s, &cfg, &spec).unwrap();
            for (r, w) in t.results.iter().zip(sliding_windows(&s, &spec).unwrap()) {
                prop_assert_eq!(r.quantifiers, analyze_window(w.values, &cfg).unwrap());
            }
        }
    }
}
