//! Ordinal-pattern information quantifiers for time series.
//!
//! The pipeline turns a rate series into a trajectory in the
//! complexity-entropy causality plane (CECP):
//!
//! 1. [`ingest`] loads and cleans a CSV column into a [`TimeSeries`].
//! 2. [`ordinal`] symbolizes segments into Bandt-Pompe ordinal patterns and
//!    counts them into a [`PatternDistribution`].
//! 3. [`infotheory`] turns a distribution into normalized permutation entropy
//!    `H` and Jensen-Shannon statistical complexity `C`.
//! 4. [`analysis`] slides a window over the series and reports one `(H, C)`
//!    point per window, plus a drift report on `H`.
//!
//! [`synth`] provides seeded generators (noise, random walks, chaotic maps,
//! stale quotes) and shuffle surrogates used as ground truth.

pub mod analysis;
pub mod error;
pub mod infotheory;
pub mod ingest;
pub mod ordinal;
pub mod synth;

pub use analysis::{
    analyze, analyze_window, drift_report, sliding_windows, window_count, CecpTrajectory,
    DriftReport, WindowResult, WindowSegment, WindowSpec,
};
pub use error::{Error, ErrorKind, Result};
pub use infotheory::{
    cecp_bounds, cecp_point, disequilibrium, jensen_shannon, normalized_entropy, quantifiers,
    shannon_entropy, statistical_complexity, CecpBounds, CecpPoint, Quantifiers,
};
pub use ingest::{
    clean, parse_csv, parse_csv_column, write_csv, CleaningPolicy, ColumnSelector, CsvOptions, DuplicatePolicy,
    MissingPolicy, RawRecord, TimeSeries,
};
pub use ordinal::{
    extract_patterns, factorial, pattern_distribution, pattern_of, OrdinalConfig, PatternDistribution,
    PatternId, TiePolicy,
};
pub use synth::{business_days, generate, shuffle_surrogate, GeneratorKind, GeneratorSpec, Segment};
