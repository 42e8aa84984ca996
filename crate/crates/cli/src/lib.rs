//! The `cecp` command-line tool: `analyze`, `compare` and `synth`.
//!
//! Exit codes: 0 success, 1 output/IO failure, 2 configuration error,
//! 3 input error, 4 insufficient data.

pub mod args;
pub mod commands;
pub mod export;
pub mod manifest;

use cecp_core::ErrorKind;

pub use args::{Cli, Command};

pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INSUFFICIENT: i32 = 4;

/// Maps an error to the process exit code by the first library error in its chain.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    err.chain()
        .find_map(|e| e.downcast_ref::<cecp_core::Error>())
        .map_or(EXIT_IO, |e| match e.kind() {
            ErrorKind::Configuration => EXIT_CONFIG,
            ErrorKind::Input => EXIT_INPUT,
            ErrorKind::InsufficientData => EXIT_INSUFFICIENT,
            ErrorKind::Io => EXIT_IO,
        })
}

pub fn run(cli: &Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::Analyze(args) => {
            let out = commands::analyze(args)?;
            let t = &out.trajectory;
            println!("{}: {} windows", t.series, t.len());
            if let Some(w) = t.min_entropy() {
                println!(
                    "minimum H = {} in window {} ({} .. {})",
                    export::format_sig(w.entropy()),
                    w.index,
                    w.start_date,
                    w.end_date
                );
            }
            let blocks = out.drift.flagged_blocks();
            if blocks.is_empty() {
                println!("no window below H = {}", out.drift.h_threshold);
            } else {
                for b in blocks {
                    println!(
                        "windows {}..={} below H = {}",
                        b.start(),
                        b.end(),
                        out.drift.h_threshold
                    );
                }
            }
            for f in &out.files {
                println!("wrote {}", f.display());
            }
        }
        Command::Compare(args) => {
            let out = commands::compare(args)?;
            for t in &out.trajectories {
                println!("{}: {} windows", t.series, t.len());
            }
            for f in &out.files {
                println!("wrote {}", f.display());
            }
        }
        Command::Synth(args) => {
            let bytes = commands::synth(args)?;
            if args.output.is_none() {
                use std::io::Write;
                std::io::stdout().write_all(&bytes)?;
            }
        }
    }
    Ok(())
}
