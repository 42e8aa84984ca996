//! CSV ingestion and cleaning of daily rate series.
//!
//! The first CSV column always holds the observation date; the value column is
//! selected by header name or by position. Cleaning sorts by date, resolves
//! duplicate dates and handles absent values according to a [`CleaningPolicy`].
//! Analysis downstream works on observation order only, so calendar gaps
//! (weekends, bank holidays) are simply not represented.

use std::io::{Read, Write};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_DATE_FORMAT: &str = "%Y-%m-%d";

/// Specifiers that would carry time-of-day information into a date.
const INTRADAY_SPECIFIERS: &[&str] = &[
    "%H", "%I", "%k", "%l", "%M", "%S", "%T", "%R", "%p", "%P", "%f", "%.f", "%s", "%X", "%r",
    "%c", "%+", "%Z", "%z",
];

/// One data row as read from a file: the value may be absent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawRecord {
    pub date: NaiveDate,
    pub value: Option<f64>,
}

impl RawRecord {
    pub fn new(date: NaiveDate, value: Option<f64>) -> Self {
        Self { date, value }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Name(String),
    /// Zero-based position in the header; position 0 is the date column.
    Index(usize),
}

impl Default for ColumnSelector {
    fn default() -> Self {
        ColumnSelector::Index(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvOptions {
    pub date_format: String,
    pub column: ColumnSelector,
    pub delimiter: u8,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self {
            date_format: DEFAULT_DATE_FORMAT.to_string(),
            column: ColumnSelector::default(),
            delimiter: b',',
        }
    }
}

impl CsvOptions {
    pub fn with_column(mut self, column: ColumnSelector) -> Self {
        self.column = column;
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MissingPolicy {
    #[default]
    Drop,
    ForwardFill,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DuplicatePolicy {
    #[default]
    Error,
    KeepFirst,
}

/// How [`clean`] treats absent values and repeated dates.
///
/// The default never fabricates values: absent observations are dropped and
/// duplicate dates are an error.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleaningPolicy {
    pub missing: MissingPolicy,
    pub duplicates: DuplicatePolicy,
}

/// A named, cleaned series of daily observations.
///
/// Dates are strictly increasing, every value is finite and the series holds
/// at least one observation.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    name: String,
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(name: impl Into<String>, dates: Vec<NaiveDate>, values: Vec<f64>) -> Result<Self> {
        if dates.len() != values.len() {
            return Err(Error::InputFormat(format!(
                "{} dates but {} values",
                dates.len(),
                values.len()
            )));
        }
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if let Some(w) = dates.windows(2).find(|w| w[0] >= w[1]) {
            return Err(if w[0] == w[1] {
                Error::DuplicateTimestamp(w[1])
            } else {
                Error::InputFormat(format!("dates out of order: {} after {}", w[1], w[0]))
            });
        }
        Ok(Self {
            name: name.into(),
            dates,
            values,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NaiveDate, f64)> + '_ {
        self.dates.iter().copied().zip(self.values.iter().copied())
    }

    pub fn to_records(&self) -> Vec<RawRecord> {
        self.iter().map(|(d, v)| RawRecord::new(d, Some(v))).collect()
    }

    /// Same dates, new values. Used by transforms that keep the time axis.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.name.clone(), self.dates.clone(), values)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

fn check_date_format(format: &str) -> Result<()> {
    if let Some(spec) = INTRADAY_SPECIFIERS.iter().find(|s| format.contains(**s)) {
        return Err(Error::Config(format!(
            "date format {format:?} contains time-of-day specifier {spec}; only daily dates are supported"
        )));
    }
    Ok(())
}

fn parse_date(field: &str, format: &str, row: usize) -> Result<NaiveDate> {
    NaiveDate::parse_from_str(field.trim(), format).map_err(|e| {
        Error::InputFormat(format!(
            "row {row}: cannot parse date {field:?} with format {format:?}: {e}"
        ))
    })
}

fn parse_value(field: Option<&str>) -> Option<f64> {
    field
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|v| v.is_finite())
}

/// Reads `(date, value)` records from delimited text with a header row.
///
/// Values that are empty or fail to parse become absent rather than errors;
/// dates that fail to parse are an input-format error.
pub fn parse_csv<R: Read>(source: R, options: &CsvOptions) -> Result<Vec<RawRecord>> {
    parse_csv_column(source, options).map(|(_, records)| records)
}

/// Like [`parse_csv`], also returning the header of the selected column.
pub fn parse_csv_column<R: Read>(source: R, options: &CsvOptions) -> Result<(String, Vec<RawRecord>)> {
    check_date_format(&options.date_format)?;

    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(true)
        .flexible(true)
        .from_reader(source);

    let headers = reader
        .headers()
        .map_err(|e| Error::InputFormat(format!("cannot read header row: {e}")))?
        .clone();
    if headers.len() < 2 || headers.iter().any(|h| h.trim().is_empty()) {
        return Err(Error::InputFormat(format!(
            "header must name a date column and at least one value column, got {:?}",
            headers.iter().collect::<Vec<_>>()
        )));
    }

    let column = match &options.column {
        ColumnSelector::Name(name) => headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Config(format!("unknown column {name:?}")))?,
        ColumnSelector::Index(i) => *i,
    };
    if column == 0 || column >= headers.len() {
        return Err(Error::Config(format!(
            "column index {column} is not a value column (header has {} columns, column 0 is the date)",
            headers.len()
        )));
    }

    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        // header is line 1
        let line = i + 2;
        let row = row.map_err(|e| Error::InputFormat(format!("line {line}: {e}")))?;
        if row.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let date = parse_date(row.get(0).unwrap_or(""), &options.date_format, line)?;
        records.push(RawRecord::new(date, parse_value(row.get(column))));
    }

    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok((headers[column].trim().to_string(), records))
}

/// Turns raw records into a [`TimeSeries`]: sorts by date, resolves duplicate
/// dates, then drops or forward-fills absent values.
pub fn clean(records: &[RawRecord], policy: CleaningPolicy, name: &str) -> Result<TimeSeries> {
    if records.iter().all(|r| r.value.is_none()) {
        return Err(Error::EmptySeries);
    }

    let mut sorted = records.to_vec();
    // stable: among equal dates the file order survives, so keep-first is well defined
    sorted.sort_by_key(|r| r.date);

    let mut deduped: Vec<RawRecord> = Vec::with_capacity(sorted.len());
    for record in sorted {
        match deduped.last() {
            Some(prev) if prev.date == record.date => match policy.duplicates {
                DuplicatePolicy::Error => return Err(Error::DuplicateTimestamp(record.date)),
                DuplicatePolicy::KeepFirst => {}
            },
            _ => deduped.push(record),
        }
    }

    let mut dates = Vec::with_capacity(deduped.len());
    let mut values = Vec::with_capacity(deduped.len());
    match policy.missing {
        MissingPolicy::Drop => {
            for r in &deduped {
                if let Some(v) = r.value {
                    dates.push(r.date);
                    values.push(v);
                }
            }
        }
        MissingPolicy::ForwardFill => {
            let mut last = None;
            for r in &deduped {
                let v = r.value.or(last).ok_or(Error::LeadingGap(r.date))?;
                last = Some(v);
                dates.push(r.date);
                values.push(v);
            }
        }
    }

    TimeSeries::new(name, dates, values)
}

/// Writes a series in the schema [`parse_csv`] reads: a `date,<name>` header
/// followed by one row per observation.
///
/// Values use the shortest representation that parses back to the same
/// `f64`, so a written series re-reads bit-for-bit.
pub fn write_csv<W: Write>(series: &TimeSeries, sink: W, date_format: &str) -> Result<()> {
    check_date_format(date_format)?;
    let mut writer = csv::WriterBuilder::new().from_writer(sink);
    let header_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    writer
        .write_record(["date", series.name()])
        .map_err(header_err)?;
    for (date, value) in series.iter() {
        writer
            .write_record([date.format(date_format).to_string(), format!("{value}")])
            .map_err(header_err)?;
    }
    writer.flush()?;
    Ok(())
}
