//! Repeated wall-clock timing of bucket sorts and the derived speedup and
//! efficiency columns.
//!
//! Each repetition rebuilds the store from the corpus outside the timed
//! region, so only the sort itself is measured. Speedup for a row is the mean
//! of the 1-thread row with the same dataset, layout and variant divided by
//! the row's own mean; efficiency is speedup divided by thread count.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::corpus::{load_text, tokenize, Word, WordSequence};
use crate::error::{Error, Result};
use crate::sort::{SchedulePolicy, SortConfig, SortVariant};
use crate::store::{LayoutKind, Store};

/// Default thread counts of a scaling run.
pub const SCALING_THREADS: [usize; 7] = [1, 2, 4, 6, 8, 10, 16];

// Instant has nanosecond resolution on every supported platform.
const CLOCK_FLOOR_SECONDS: f64 = 1e-9;

/// All repetitions of one (dataset, layout, variant, threads) measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub dataset: String,
    pub layout: LayoutKind,
    pub variant: SortVariant,
    pub threads: usize,
    pub mean_seconds: f64,
    pub runs: Vec<f64>,
}

impl TimingRow {
    /// Validates the runs and computes their arithmetic mean.
    pub fn new(
        dataset: impl Into<String>,
        layout: LayoutKind,
        variant: SortVariant,
        threads: usize,
        runs: Vec<f64>,
    ) -> Result<Self> {
        if threads == 0 {
            return Err(Error::ZeroThreads);
        }
        if runs.is_empty() {
            return Err(Error::Report("a timing row needs at least one run".into()));
        }
        if let Some(&bad) = runs.iter().find(|&&r| !(r > 0.0 && r.is_finite())) {
            return Err(Error::NonPositive {
                what: "run time",
                value: bad,
            });
        }
        let mean_seconds = runs.iter().sum::<f64>() / runs.len() as f64;
        Ok(TimingRow {
            dataset: dataset.into(),
            layout,
            variant,
            threads,
            mean_seconds,
            runs,
        })
    }
}

/// `t_serial / t_parallel`.
pub fn compute_speedup(t_serial: f64, t_parallel: f64) -> Result<f64> {
    for (what, value) in [("serial time", t_serial), ("parallel time", t_parallel)] {
        if value.is_nan() || value <= 0.0 {
            return Err(Error::NonPositive { what, value });
        }
    }
    Ok(t_serial / t_parallel)
}

/// `speedup / threads`.
pub fn compute_efficiency(speedup: f64, threads: usize) -> Result<f64> {
    if threads == 0 {
        return Err(Error::ZeroThreads);
    }
    if speedup.is_nan() || speedup <= 0.0 {
        return Err(Error::NonPositive {
            what: "speedup",
            value: speedup,
        });
    }
    Ok(speedup / threads as f64)
}

/// A timing row plus its derived columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub dataset: String,
    pub layout: LayoutKind,
    pub variant: SortVariant,
    pub threads: usize,
    pub mean_seconds: f64,
    pub speedup: f64,
    pub efficiency: f64,
    pub runs: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub schedule: SchedulePolicy,
    pub reps: usize,
    pub warmups: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub meta: ReportMeta,
    pub rows: Vec<ReportRow>,
}

impl BenchReport {
    /// Derives speedup and efficiency for every row. Each (dataset, layout,
    /// variant) group must contain a 1-thread row; row order is kept.
    pub fn from_timings(meta: ReportMeta, timings: Vec<TimingRow>) -> Result<Self> {
        let rows = timings
            .iter()
            .map(|t| {
                let baseline = timings
                    .iter()
                    .find(|b| b.threads == 1 && b.dataset == t.dataset && b.layout == t.layout && b.variant == t.variant)
                    .ok_or_else(|| Error::MissingBaseline {
                        dataset: t.dataset.clone(),
                        layout: t.layout.to_string(),
                        variant: t.variant.to_string(),
                    })?;
                let speedup = compute_speedup(baseline.mean_seconds, t.mean_seconds)?;
                Ok(ReportRow {
                    dataset: t.dataset.clone(),
                    layout: t.layout,
                    variant: t.variant,
                    threads: t.threads,
                    mean_seconds: t.mean_seconds,
                    speedup,
                    efficiency: compute_efficiency(speedup, t.threads)?,
                    runs: t.runs.clone(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(BenchReport { meta, rows })
    }

    fn max_runs(&self) -> usize {
        self.rows.iter().map(|r| r.runs.len()).max().unwrap_or(0)
    }
}

/// Outcome of [`time_sort`]: the timings plus the sorted words of the last
/// repetition.
#[derive(Debug, Clone)]
pub struct TimedSort {
    pub row: TimingRow,
    pub sorted: WordSequence,
}

/// Times `reps` sorts of `corpus` under `config` after `warmups` discarded
/// runs. The store is rebuilt before every run, outside the timed region.
pub fn time_sort(dataset: &str, corpus: &[Word], config: &SortConfig, reps: usize, warmups: usize) -> Result<TimedSort> {
    if reps == 0 {
        return Err(Error::Report("reps must be at least 1".into()));
    }
    let mut runs = Vec::with_capacity(reps);
    let mut last = None;
    for i in 0..warmups + reps {
        let mut store = Store::build(config.layout, corpus);
        let start = Instant::now();
        store.sort_parallel(config);
        let elapsed = start.elapsed().as_secs_f64();
        if i >= warmups {
            runs.push(elapsed.max(CLOCK_FLOOR_SECONDS));
        }
        last = Some(store);
    }
    let sorted = last.map(|s| s.emit_sorted()).unwrap_or_default();
    let row = TimingRow::new(dataset, config.layout, config.variant, config.threads.get(), runs)?;
    Ok(TimedSort { row, sorted })
}

/// A corpus file and the label it carries in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    pub label: String,
    pub path: PathBuf,
}

impl Dataset {
    /// Labels the file with its stem.
    pub fn from_path(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Dataset { label, path }
    }
}

/// What [`run_matrix`] measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPlan {
    pub layouts: Vec<LayoutKind>,
    pub variants: Vec<SortVariant>,
    pub threads: Vec<usize>,
    pub schedule: SchedulePolicy,
    pub reps: usize,
    pub warmups: usize,
}

impl MatrixPlan {
    /// Threads 1, 2, 4, 6, 8, 10 and 16 with three repetitions each.
    pub fn thread_scaling() -> Self {
        MatrixPlan {
            layouts: vec![LayoutKind::Flat],
            variants: vec![SortVariant::Naive],
            threads: SCALING_THREADS.to_vec(),
            schedule: SchedulePolicy::StaticBlock,
            reps: 3,
            warmups: 1,
        }
    }

    /// Both layouts on one thread with ten repetitions.
    pub fn sequential() -> Self {
        MatrixPlan {
            layouts: LayoutKind::ALL.to_vec(),
            variants: vec![SortVariant::Naive],
            threads: vec![1],
            schedule: SchedulePolicy::StaticBlock,
            reps: 10,
            warmups: 1,
        }
    }

    /// Thread list sorted, deduplicated, and guaranteed to contain 1.
    pub fn normalized_threads(&self) -> Result<Vec<usize>> {
        if self.threads.contains(&0) {
            return Err(Error::ZeroThreads);
        }
        let mut threads = self.threads.clone();
        threads.push(1);
        threads.sort_unstable();
        threads.dedup();
        Ok(threads)
    }

    fn sorted_unique<T: Ord + Clone>(items: &[T]) -> Vec<T> {
        let mut v = items.to_vec();
        v.sort();
        v.dedup();
        v
    }
}

/// Measures the full cross product for already-tokenized corpora.
/// `progress` sees every row as soon as it is measured.
pub fn run_matrix_words(
    corpora: &[(String, WordSequence)],
    plan: &MatrixPlan,
    mut progress: impl FnMut(&TimingRow),
) -> Result<BenchReport> {
    let threads = plan.normalized_threads()?;
    let layouts = MatrixPlan::sorted_unique(&plan.layouts);
    let variants = MatrixPlan::sorted_unique(&plan.variants);
    let mut timings = Vec::new();
    for (label, words) in corpora {
        for &layout in &layouts {
            for &variant in &variants {
                for &t in &threads {
                    let config = SortConfig::new(layout, variant, t, plan.schedule)?;
                    let row = time_sort(label, words, &config, plan.reps, plan.warmups)?.row;
                    progress(&row);
                    timings.push(row);
                }
            }
        }
    }
    let meta = ReportMeta {
        schedule: plan.schedule,
        reps: plan.reps,
        warmups: plan.warmups,
    };
    BenchReport::from_timings(meta, timings)
}

/// Loads and tokenizes every dataset, then measures the cross product of
/// layouts, variants and thread counts. A 1-thread row is always measured.
pub fn run_matrix(datasets: &[Dataset], plan: &MatrixPlan, progress: impl FnMut(&TimingRow)) -> Result<BenchReport> {
    let corpora = datasets
        .iter()
        .map(|d| {
            load_text(&d.path)
                .map(|text| (d.label.clone(), tokenize(text)))
                .map_err(|e| Error::Dataset {
                    dataset: d.label.clone(),
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    run_matrix_words(&corpora, plan, progress)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
    /// `threads value` pairs, one block per curve.
    Plot,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            "plot" => Ok(ReportFormat::Plot),
            _ => Err(Error::UnknownName {
                kind: "format",
                value: s.to_owned(),
            }),
        }
    }
}

const CSV_FIXED_COLUMNS: [&str; 7] = [
    "dataset",
    "layout",
    "variant",
    "threads",
    "mean_seconds",
    "speedup",
    "efficiency",
];

/// Serializes a report. Output is a pure function of the report.
pub fn emit_report(report: &BenchReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Csv => emit_csv(report),
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes to JSON");
            out.push(b'\n');
            out
        }
        ReportFormat::Plot => plot_curves(report)
            .iter()
            .map(|c| format!("# {}\n{}\n\n", c.name, c.render()))
            .collect::<String>()
            .into_bytes(),
    }
}

fn emit_csv(report: &BenchReport) -> Vec<u8> {
    let runs = report.max_runs();
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .flexible(false)
        .from_writer(Vec::new());
    let header = CSV_FIXED_COLUMNS
        .iter()
        .map(|c| c.to_string())
        .chain((1..=runs).map(|i| format!("run_{i}")));
    w.write_record(header).expect("in-memory write");
    for r in &report.rows {
        let record = [
            r.dataset.clone(),
            r.layout.to_string(),
            r.variant.to_string(),
            r.threads.to_string(),
            r.mean_seconds.to_string(),
            r.speedup.to_string(),
            r.efficiency.to_string(),
        ]
        .into_iter()
        .chain((0..runs).map(|i| r.runs.get(i).map(f64::to_string).unwrap_or_default()));
        w.write_record(record).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Reads the CSV form back into a report. `meta` is not part of the CSV and
/// comes back as its default.
pub fn parse_csv(bytes: &[u8]) -> Result<BenchReport> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(bytes);
    let headers = r.headers()?.clone();
    let fixed: Vec<&str> = headers.iter().take(CSV_FIXED_COLUMNS.len()).collect();
    if fixed != CSV_FIXED_COLUMNS {
        return Err(Error::Report(format!("unexpected CSV header {:?}", headers)));
    }
    let bad = |what: &str, v: &str| Error::Report(format!("bad {what} `{v}`"));
    let float = |v: &str, what: &str| v.parse::<f64>().map_err(|_| bad(what, v));
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let runs = record
            .iter()
            .skip(CSV_FIXED_COLUMNS.len())
            .filter(|v| !v.is_empty())
            .map(|v| float(v, "run"))
            .collect::<Result<Vec<_>>>()?;
        rows.push(ReportRow {
            dataset: record[0].to_owned(),
            layout: record[1].parse()?,
            variant: record[2].parse()?,
            threads: record[3].parse().map_err(|_| bad("threads", &record[3]))?,
            mean_seconds: float(&record[4], "mean_seconds")?,
            speedup: float(&record[5], "speedup")?,
            efficiency: float(&record[6], "efficiency")?,
            runs,
        });
    }
    Ok(BenchReport {
        meta: ReportMeta::default(),
        rows,
    })
}

/// One plottable series.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotCurve {
    /// Usable as a file stem: `{speedup|time}_{dataset}_{layout}_{variant}`.
    pub name: String,
    pub points: Vec<(usize, f64)>,
}

impl PlotCurve {
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (threads, value) in &self.points {
            let _ = writeln!(s, "{threads} {value}");
        }
        s
    }
}

fn file_safe(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect()
}

/// A speedup curve and a mean-time curve per (dataset, layout, variant), in
/// first-appearance order.
pub fn plot_curves(report: &BenchReport) -> Vec<PlotCurve> {
    let mut groups: Vec<(&str, LayoutKind, SortVariant)> = Vec::new();
    for r in &report.rows {
        let key = (r.dataset.as_str(), r.layout, r.variant);
        if !groups.contains(&key) {
            groups.push(key);
        }
    }
    let mut curves = Vec::new();
    for (dataset, layout, variant) in groups {
        let mut rows: Vec<&ReportRow> = report
            .rows
            .iter()
            .filter(|r| r.dataset == dataset && r.layout == layout && r.variant == variant)
            .collect();
        rows.sort_by_key(|r| r.threads);
        let suffix = format!("{}_{layout}_{variant}", file_safe(dataset));
        curves.push(PlotCurve {
            name: format!("speedup_{suffix}"),
            points: rows.iter().map(|r| (r.threads, r.speedup)).collect(),
        });
        curves.push(PlotCurve {
            name: format!("time_{suffix}"),
            points: rows.iter().map(|r| (r.threads, r.mean_seconds)).collect(),
        });
    }
    curves
}

/// Fixed-width table for terminals; efficiency shown in percent.
pub fn render_summary(report: &BenchReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<16} {:<7} {:<10} {:>7} {:>12} {:>8} {:>10}",
        "dataset", "layout", "variant", "threads", "mean (s)", "speedup", "efficiency"
    );
    for r in &report.rows {
        let _ = writeln!(
            s,
            "{:<16} {:<7} {:<10} {:>7} {:>12.3} {:>8.3} {:>9.0}%",
            r.dataset,
            r.layout,
            r.variant,
            r.threads,
            r.mean_seconds,
            r.speedup,
            r.efficiency * 100.0
        );
    }
    s
}
