use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;
use std::thread;

use anyhow::{Context, Result};
use bucketbubble::harness::{plot_curves, render_summary, Dataset, MatrixPlan, ReportFormat, SCALING_THREADS};
use bucketbubble::synth::{random_words, random_words_from};
use bucketbubble::verify::{verify_words, VerifyPlan};
use bucketbubble::{emit_report, load_text, preprocess_stats, run_matrix, tokenize, SortConfig, Store};

use crate::{BenchArgs, Format, PreprocessArgs, SortArgs, VerifyArgs};

fn default_threads() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("failed to write {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn sort(args: SortArgs) -> Result<ExitCode> {
    let threads = args.threads.map_or_else(default_threads, |t| t as usize);
    let config = SortConfig::new(args.layout.into(), args.variant.into(), threads, args.schedule.into())?;
    let words = tokenize(load_text(&args.input)?);
    let mut store = Store::build(config.layout, &words);
    store.sort_parallel(&config);
    write_output(args.output.as_deref(), &store.emit_sorted().to_lines())?;
    Ok(ExitCode::SUCCESS)
}

pub fn bench(args: BenchArgs) -> Result<ExitCode> {
    let mut plan = if args.sequential {
        MatrixPlan::sequential()
    } else {
        MatrixPlan {
            layouts: args.layout.iter().map(|&l| l.into()).collect(),
            threads: if args.threads.is_empty() {
                SCALING_THREADS.to_vec()
            } else {
                args.threads.iter().map(|&t| t as usize).collect()
            },
            ..MatrixPlan::thread_scaling()
        }
    };
    plan.variants = args.variant.iter().map(|&v| v.into()).collect();
    plan.schedule = args.schedule.into();
    plan.warmups = args.warmups as usize;
    if let Some(reps) = args.reps {
        plan.reps = reps as usize;
    }

    let datasets: Vec<Dataset> = args.inputs.iter().map(Dataset::from_path).collect();
    let report = run_matrix(&datasets, &plan, |row| {
        eprintln!(
            "measured {} {} {} threads={} mean={:.3}s",
            row.dataset, row.layout, row.variant, row.threads, row.mean_seconds
        );
    })?;

    let summary = render_summary(&report);
    match (args.format, args.output.as_deref()) {
        (Format::Plot, Some(dir)) => {
            fs::create_dir_all(dir).with_context(|| format!("failed to create {}", dir.display()))?;
            for curve in plot_curves(&report) {
                let path = dir.join(format!("{}.dat", curve.name));
                fs::write(&path, curve.render()).with_context(|| format!("failed to write {}", path.display()))?;
            }
            print!("{summary}");
        }
        (format, Some(path)) => {
            write_output(Some(path), &emit_report(&report, report_format(format)))?;
            print!("{summary}");
        }
        (format, None) => {
            // the report owns stdout
            eprint!("{summary}");
            write_output(None, &emit_report(&report, report_format(format)))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn report_format(format: Format) -> ReportFormat {
    match format {
        Format::Csv => ReportFormat::Csv,
        Format::Json => ReportFormat::Json,
        Format::Plot => ReportFormat::Plot,
    }
}

pub fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let plan = VerifyPlan {
        threads: args.threads.iter().map(|&t| t as usize).collect(),
        schedule: args.schedule.into(),
        ..VerifyPlan::default()
    };
    let configs = plan.configs()?;

    let mut corpora = Vec::new();
    if let Some(path) = &args.input {
        corpora.push((path.display().to_string(), tokenize(load_text(path)?)));
    }
    if !args.no_generated {
        for (i, &size) in args.sizes.iter().enumerate() {
            let seed = args.seed.wrapping_add(i as u64);
            corpora.push((format!("generated seed={seed} words={size}"), random_words(seed, size, 12)));
            corpora.push((
                format!("generated seed={seed} words={size} duplicates"),
                random_words_from(seed, size, 3, b"ab"),
            ));
        }
    }

    for (label, words) in &corpora {
        match verify_words(words, &configs) {
            Ok(n) => println!("{label}: OK ({} words, {n} configurations)", words.len()),
            Err(divergence) => {
                eprintln!("{label}: FAILED: {divergence}");
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn preprocess(args: PreprocessArgs) -> Result<ExitCode> {
    let report = preprocess_stats(&args.input)?;
    let mut out = String::from("phase,seconds\n");
    for (phase, d) in report.phases() {
        out.push_str(&format!("{phase},{:.3}\n", d.as_secs_f64()));
    }
    out.push_str(&format!("\nwords,{}\nmax_len,{}\n\nlength,count\n", report.word_count, report.max_len));
    for (len, count) in &report.histogram {
        out.push_str(&format!("{len},{count}\n"));
    }
    write_output(None, out.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}
