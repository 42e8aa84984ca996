//! Plot-ready CSV tables and atomic file output.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use cecp_core::{CecpBounds, CecpPoint, CecpTrajectory, DriftReport};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `v` with 12 significant digits, `%g` style: plain decimals for
/// exponents in `-5..12`, scientific otherwise, trailing zeros removed.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let sign = if v < 0.0 { "-" } else { "" };

    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let (int, frac) = if exp >= 0 {
            let split = exp as usize + 1;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), "0".repeat((-exp - 1) as usize) + &digits)
        };
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        let frac = digits[1..].trim_end_matches('0');
        let mantissa = if frac.is_empty() {
            digits[..1].to_string()
        } else {
            format!("{}.{frac}", &digits[..1])
        };
        format!("{sign}{mantissa}e{exp}")
    }
}

/// Writes `bytes` to a temporary file next to `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

fn date(d: chrono::NaiveDate) -> String {
    d.format("%Y-%m-%d").to_string()
}

pub fn trajectory_csv(t: &CecpTrajectory) -> Result<Vec<u8>> {
    table(
        &["index", "start_date", "end_date", "H", "C"],
        t.results.iter().map(|r| {
            vec![
                r.index.to_string(),
                date(r.start_date),
                date(r.end_date),
                format_sig(r.entropy()),
                format_sig(r.complexity()),
            ]
        }),
    )
}

pub fn cecp_csv(t: &CecpTrajectory) -> Result<Vec<u8>> {
    table(
        &["H", "C", "index"],
        t.results.iter().map(|r| {
            vec![
                format_sig(r.entropy()),
                format_sig(r.complexity()),
                r.index.to_string(),
            ]
        }),
    )
}

pub fn evolution_csv(t: &CecpTrajectory) -> Result<Vec<u8>> {
    table(
        &["index", "start_date", "H"],
        t.results
            .iter()
            .map(|r| vec![r.index.to_string(), date(r.start_date), format_sig(r.entropy())]),
    )
}

pub fn drift_csv(t: &CecpTrajectory, d: &DriftReport) -> Result<Vec<u8>> {
    table(
        &["index", "H", "flagged", "trend"],
        t.results.iter().zip(d.flags.iter().zip(&d.trends)).map(|(r, (flag, trend))| {
            vec![
                r.index.to_string(),
                format_sig(r.entropy()),
                u8::from(*flag).to_string(),
                trend.map(format_sig).unwrap_or_default(),
            ]
        }),
    )
}

pub fn curve_csv(points: &[CecpPoint]) -> Result<Vec<u8>> {
    table(
        &["H", "C"],
        points
            .iter()
            .map(|p| vec![format_sig(p.entropy), format_sig(p.complexity)]),
    )
}

pub fn bounds_csv(b: &CecpBounds) -> Result<(Vec<u8>, Vec<u8>)> {
    Ok((curve_csv(&b.lower)?, curve_csv(&b.upper)?))
}

/// Long format: one row per (series, window).
pub fn compare_csv(trajectories: &[CecpTrajectory]) -> Result<Vec<u8>> {
    table(
        &["series", "index", "start_date", "end_date", "H", "C"],
        trajectories.iter().flat_map(|t| {
            t.results.iter().map(|r| {
                vec![
                    t.series.clone(),
                    r.index.to_string(),
                    date(r.start_date),
                    date(r.end_date),
                    format_sig(r.entropy()),
                    format_sig(r.complexity()),
                ]
            })
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn significant_digit_cases() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(format_sig(0.999_999_999_999_9), "1");
        assert_eq!(format_sig(123_456.789_012_345), "123456.789012");
        assert_eq!(format_sig(1.5e-7), "1.5e-7");
        assert_eq!(format_sig(2.5e-5), "0.000025");
        assert_eq!(format_sig(1e12), "1e12");
        assert_eq!(format_sig(std::f64::consts::PI * 1e-9), "3.14159265359e-9");
    }

    proptest! {
        #[test]
        fn twelve_digits_survive(v in -1.0e9..1.0e9f64) {
            let s = format_sig(v);
            let back: f64 = s.parse().unwrap();
            prop_assert!((back - v).abs() <= v.abs() * 1e-11 + 1e-300);
        }
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
