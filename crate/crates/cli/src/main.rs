use std::path::PathBuf;
use std::process::ExitCode;

use bucketbubble::{LayoutKind, SchedulePolicy, SortVariant};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Debug, Parser)]
#[command(name = "bucketbubble", version, about = "Length-bucketed parallel bubble sort over corpus words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sort the words of a file: shorter words first, then by raw bytes.
    Sort(SortArgs),
    /// Time sorts over a matrix of layouts, variants and thread counts.
    Bench(BenchArgs),
    /// Check sorted output against an independent baseline sort.
    Verify(VerifyArgs),
    /// Time the pre-processing phases and print corpus statistics.
    Preprocess(PreprocessArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Layout {
    Ragged,
    Flat,
}

impl From<Layout> for LayoutKind {
    fn from(l: Layout) -> Self {
        match l {
            Layout::Ragged => LayoutKind::Ragged,
            Layout::Flat => LayoutKind::Flat,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Naive,
    EarlyExit,
}

impl From<Variant> for SortVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Naive => SortVariant::Naive,
            Variant::EarlyExit => SortVariant::EarlyExit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Schedule {
    Static,
    Cyclic,
    Dynamic,
}

impl From<Schedule> for SchedulePolicy {
    fn from(s: Schedule) -> Self {
        match s {
            Schedule::Static => SchedulePolicy::StaticBlock,
            Schedule::Cyclic => SchedulePolicy::StaticCyclic,
            Schedule::Dynamic => SchedulePolicy::Dynamic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Plot,
}

#[derive(Debug, Args)]
struct SortArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "flat")]
    layout: Layout,
    #[arg(long, value_enum, default_value = "naive")]
    variant: Variant,
    /// Worker threads [default: logical cores]
    #[arg(long, env = "BUCKETBUBBLE_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    #[arg(long, value_enum, default_value = "static")]
    schedule: Schedule,
    /// Write sorted words here instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "flat")]
    layout: Vec<Layout>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "naive")]
    variant: Vec<Variant>,
    /// Thread counts; a 1-thread baseline is always added [default: 1,2,4,6,8,10,16]
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u32).range(1..))]
    threads: Vec<u32>,
    /// One-thread run of both layouts with 10 repetitions
    #[arg(long, conflicts_with_all = ["threads", "layout"])]
    sequential: bool,
    #[arg(long, value_enum, default_value = "static")]
    schedule: Schedule,
    /// Timed repetitions per row [default: 3, or 10 with --sequential]
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    reps: Option<u32>,
    #[arg(long, default_value_t = 1)]
    warmups: u32,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Report destination; a directory for `--format plot`
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Corpus file to verify in addition to generated corpora
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Word counts of the generated corpora
    #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,4,16", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Vec<u32>,
    #[arg(long, value_enum, default_value = "static")]
    schedule: Schedule,
    /// Only verify INPUT
    #[arg(long, requires = "input", conflicts_with_all = ["seed", "sizes"])]
    no_generated: bool,
}

#[derive(Debug, Args)]
struct PreprocessArgs {
    input: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sort(args) => commands::sort(args),
        Command::Bench(args) => commands::bench(args),
        Command::Verify(args) => commands::verify(args),
        Command::Preprocess(args) => commands::preprocess(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
