use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use cecp_core::{
    analyze as analyze_series, cecp_bounds, clean, drift_report, generate, parse_csv_column,
    write_csv, CecpTrajectory, CleaningPolicy, ColumnSelector, CsvOptions, DriftReport,
    DuplicatePolicy, Error, GeneratorKind, GeneratorSpec, MissingPolicy, OrdinalConfig, Segment,
    TiePolicy, TimeSeries, WindowSpec,
};
use serde::Serialize;

use crate::args::{
    AnalysisOptions, AnalyzeArgs, CompareArgs, DuplicateArg, InputOptions, KindArg, MissingArg,
    SynthArgs, TieArg,
};
use crate::export;
use crate::manifest::{InputDigest, RunManifest};

struct Reader {
    csv: CsvOptions,
    policy: CleaningPolicy,
}

impl Reader {
    fn new(opts: &InputOptions) -> Result<Self, Error> {
        let column = match opts.column.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(opts.column.clone()),
        };
        if !opts.delimiter.is_ascii() {
            return Err(Error::Config(format!(
                "delimiter {:?} must be a single ASCII character",
                opts.delimiter
            )));
        }
        Ok(Self {
            csv: CsvOptions {
                date_format: opts.date_format.clone(),
                column,
                delimiter: opts.delimiter as u8,
            },
            policy: CleaningPolicy {
                missing: match opts.missing {
                    MissingArg::Drop => MissingPolicy::Drop,
                    MissingArg::ForwardFill => MissingPolicy::ForwardFill,
                },
                duplicates: match opts.duplicates {
                    DuplicateArg::Error => DuplicatePolicy::Error,
                    DuplicateArg::KeepFirst => DuplicatePolicy::KeepFirst,
                },
            },
        })
    }

    /// Reads, digests and cleans one input file. The series is named after
    /// its value column.
    fn load(&self, path: &Path) -> Result<(TimeSeries, InputDigest)> {
        let bytes = std::fs::read(path).map_err(|e| {
            Error::InputFormat(format!("cannot read {}: {e}", path.display()))
        })?;
        let digest = InputDigest::of(path, &bytes);
        let (column, records) = parse_csv_column(bytes.as_slice(), &self.csv)
            .with_context(|| format!("reading {}", path.display()))?;
        let series = clean(&records, self.policy, &column)
            .with_context(|| format!("cleaning {}", path.display()))?;
        Ok((series, digest))
    }
}

fn ordinal_setup(opts: &AnalysisOptions) -> Result<(OrdinalConfig, WindowSpec), Error> {
    let tie = match opts.tie_policy {
        TieArg::IndexOrder => TiePolicy::IndexOrder,
        TieArg::Jitter => TiePolicy::Jitter {
            seed: opts.jitter_seed,
            amplitude: opts.jitter_amplitude,
        },
    };
    let config = OrdinalConfig::new(opts.dimension, opts.delay, tie)?;
    let spec = WindowSpec::new(opts.window, opts.step)?;
    spec.check_against(&config)?;
    Ok((config, spec))
}

/// File-name-safe version of a series name.
fn file_stem(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') { c } else { '_' })
        .collect();
    if s.is_empty() { "series".into() } else { s }
}

fn prepare_out_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))
}

#[derive(Serialize)]
struct AnalyzeConfig<'a> {
    input: &'a InputOptions,
    analysis: &'a AnalysisOptions,
    h_threshold: f64,
    trend_span: usize,
    bounds: bool,
    bounds_resolution: usize,
    name: Option<&'a str>,
}

pub struct AnalyzeOutcome {
    pub trajectory: CecpTrajectory,
    pub drift: DriftReport,
    pub files: Vec<PathBuf>,
}

pub fn analyze(args: &AnalyzeArgs) -> Result<AnalyzeOutcome> {
    let reader = Reader::new(&args.input_options)?;
    let (config, spec) = ordinal_setup(&args.analysis)?;
    let bounds = args
        .bounds
        .then(|| cecp_bounds(config.alphabet_size(), args.bounds_resolution))
        .transpose()?;

    let (series, digest) = reader.load(&args.input)?;
    let series = match &args.name {
        Some(n) => series.renamed(n.clone()),
        None => series,
    };
    let trajectory = analyze_series(&series, &config, &spec)?;
    let drift = drift_report(&trajectory, args.drift.h_threshold, args.drift.trend_span)?;

    prepare_out_dir(&args.out_dir)?;
    let stem = file_stem(series.name());
    let mut outputs: Vec<(String, Vec<u8>)> = vec![
        (format!("{stem}.trajectory.csv"), export::trajectory_csv(&trajectory)?),
        (format!("{stem}.cecp.csv"), export::cecp_csv(&trajectory)?),
        (format!("{stem}.entropy.csv"), export::evolution_csv(&trajectory)?),
        (format!("{stem}.drift.csv"), export::drift_csv(&trajectory, &drift)?),
    ];
    if let Some(b) = &bounds {
        let (lower, upper) = export::bounds_csv(b)?;
        outputs.push((format!("{stem}.bounds_lower.csv"), lower));
        outputs.push((format!("{stem}.bounds_upper.csv"), upper));
    }

    let mut manifest = RunManifest::new(
        "analyze",
        AnalyzeConfig {
            input: &args.input_options,
            analysis: &args.analysis,
            h_threshold: args.drift.h_threshold,
            trend_span: args.drift.trend_span,
            bounds: args.bounds,
            bounds_resolution: args.bounds_resolution,
            name: args.name.as_deref(),
        },
    );
    manifest.inputs.push(digest);
    let files = write_outputs(&args.out_dir, &stem, outputs, manifest)?;

    Ok(AnalyzeOutcome {
        trajectory,
        drift,
        files,
    })
}

fn write_outputs(
    dir: &Path,
    stem: &str,
    outputs: Vec<(String, Vec<u8>)>,
    mut manifest: RunManifest,
) -> Result<Vec<PathBuf>> {
    let mut files = Vec::with_capacity(outputs.len() + 1);
    for (name, bytes) in outputs {
        let path = dir.join(&name);
        export::write_atomic(&path, &bytes)?;
        manifest.outputs.push(name);
        files.push(path);
    }
    let path = dir.join(format!("{stem}.manifest.json"));
    export::write_atomic(&path, &manifest.to_json())?;
    files.push(path);
    Ok(files)
}

#[derive(Serialize)]
struct CompareConfig<'a> {
    input: &'a InputOptions,
    analysis: &'a AnalysisOptions,
}

pub struct CompareOutcome {
    pub trajectories: Vec<CecpTrajectory>,
    pub files: Vec<PathBuf>,
}

pub fn compare(args: &CompareArgs) -> Result<CompareOutcome> {
    if args.inputs.len() < 2 {
        return Err(Error::Config(format!(
            "compare needs at least 2 inputs, got {}",
            args.inputs.len()
        ))
        .into());
    }
    let reader = Reader::new(&args.input_options)?;
    let (config, spec) = ordinal_setup(&args.analysis)?;

    let mut manifest = RunManifest::new(
        "compare",
        CompareConfig {
            input: &args.input_options,
            analysis: &args.analysis,
        },
    );
    let mut trajectories = Vec::with_capacity(args.inputs.len());
    for path in &args.inputs {
        let (series, digest) = reader.load(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| series.name().to_string());
        let trajectory = analyze_series(&series.renamed(name), &config, &spec)
            .with_context(|| format!("analyzing {}", path.display()))?;
        manifest.inputs.push(digest);
        trajectories.push(trajectory);
    }

    prepare_out_dir(&args.out_dir)?;
    let outputs = vec![("compare.csv".to_string(), export::compare_csv(&trajectories)?)];
    let files = write_outputs(&args.out_dir, "compare", outputs, manifest)?;
    Ok(CompareOutcome {
        trajectories,
        files,
    })
}

fn simple_kind(kind: KindArg, args: &SynthArgs) -> Result<GeneratorKind, Error> {
    Ok(match kind {
        KindArg::WhiteNoise => GeneratorKind::WhiteNoise,
        KindArg::RandomWalk => GeneratorKind::RandomWalk,
        KindArg::Ar1 => GeneratorKind::Ar1 { phi: args.phi },
        KindArg::LogisticMap => GeneratorKind::LogisticMap { r: args.r },
        KindArg::StaleQuote => GeneratorKind::StaleQuote {
            hold_prob: args.hold_prob,
            tick_size: args.tick_size,
        },
        KindArg::Splice => {
            return Err(Error::Config("splice segments cannot be splices".into()));
        }
    })
}

fn parse_segments(text: &str, args: &SynthArgs) -> Result<Vec<Segment>, Error> {
    use clap::ValueEnum;
    text.split(',')
        .map(|part| {
            let (kind, len) = part.trim().split_once(':').ok_or_else(|| {
                Error::Config(format!("segment {part:?} is not of the form kind:length"))
            })?;
            let kind = KindArg::from_str(kind.trim(), true)
                .map_err(|_| Error::Config(format!("unknown segment kind {kind:?}")))?;
            let length = len
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("segment length {len:?} is not a count")))?;
            Ok(Segment::new(simple_kind(kind, args)?, length))
        })
        .collect()
}

pub const DEFAULT_SYNTH_LENGTH: usize = 3996;

pub fn synth_spec(args: &SynthArgs) -> Result<GeneratorSpec, Error> {
    match (args.kind, &args.segments) {
        (KindArg::Splice, Some(text)) => {
            let segments = parse_segments(text, args)?;
            let total: usize = segments.iter().map(|s| s.length).sum();
            GeneratorSpec::new(
                GeneratorKind::Splice { segments },
                args.length.unwrap_or(total),
                args.seed,
            )
        }
        (KindArg::Splice, None) => Err(Error::Config("--kind splice requires --segments".into())),
        (_, Some(_)) => Err(Error::Config("--segments only applies to --kind splice".into())),
        (kind, None) => GeneratorSpec::new(
            simple_kind(kind, args)?,
            args.length.unwrap_or(DEFAULT_SYNTH_LENGTH),
            args.seed,
        ),
    }
}

#[derive(Serialize)]
struct SynthConfig<'a> {
    args: &'a SynthArgs,
    spec: &'a GeneratorSpec,
}

/// Returns the CSV bytes; they are also written to `--output` when given.
pub fn synth(args: &SynthArgs) -> Result<Vec<u8>> {
    let spec = synth_spec(args)?;
    let series = generate(&spec)?.renamed(args.name.clone());
    let mut bytes = Vec::new();
    write_csv(&series, &mut bytes, cecp_core::ingest::DEFAULT_DATE_FORMAT)?;

    if let Some(path) = &args.output {
        if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            prepare_out_dir(dir)?;
        }
        export::write_atomic(path, &bytes)?;
        let mut manifest = RunManifest::new(
            "synth",
            SynthConfig {
                args,
                spec: &spec,
            },
        );
        manifest.outputs.push(
            path.file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
        );
        export::write_atomic(&path.with_extension("manifest.json"), &manifest.to_json())?;
    }
    Ok(bytes)
}
