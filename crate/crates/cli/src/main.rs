//! `stacksort`: command-line front end for the stack-sorting laboratory.
//!
//! Exit status: 0 on success, 1 when a verification or fit reports a
//! failure, 2 on usage or input errors.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use stacksort::census::{
    self, fit_from_censuses, load_census, run_census_with, save_report, verify, Census, CensusOptions, Report,
};
use stacksort::{
    complexity, complexity_bounds, descents, forbidden_report, stack_sort, stack_sort_iter, Catalog, Witness, Word,
};

#[derive(Parser)]
#[command(name = "stacksort", version, about = "Stack-sorting complexity of permutations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the stack-sorting operator (default once).
    Sort {
        word: Word,
        #[arg(long, default_value_t = 1)]
        passes: usize,
    },
    /// Smallest k with S^k(w) = id.
    Complexity { word: Word },
    /// Descent count of a word, or with --n the descent polynomial of the
    /// permutations of complexity at most n-4.
    Descents {
        word: Option<Word>,
        #[arg(long, conflicts_with = "word")]
        n: Option<usize>,
        /// Read the census from a report instead of enumerating.
        #[arg(long, requires = "n")]
        census: Option<PathBuf>,
    },
    /// Forbidden-pattern report and the complexity bracket it implies.
    Forbidden { word: Word },
    /// First catalog row matching the permutation.
    Classify {
        word: Word,
        /// Alternative catalog file.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Exhaustive census of S_n.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long)]
        threads: Option<usize>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep one file per completed shard in this directory.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Reuse shard files found in the checkpoint directory.
        #[arg(long, requires = "checkpoint")]
        resume: bool,
        /// Stop after computing this many new shards.
        #[arg(long, requires = "checkpoint")]
        max_shards: Option<usize>,
    },
    /// Check a census against every formula valid at its n.
    Verify {
        #[arg(long, required_unless_present = "census")]
        n: Option<usize>,
        #[arg(long, conflicts_with = "n")]
        census: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        shards: usize,
    },
    /// Fit the binomial-form coefficients for complexity n-k.
    Fit {
        #[arg(long)]
        k: usize,
        #[arg(long, num_args = 1.., required = true)]
        census: Vec<PathBuf>,
    },
}

enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn witness_text(w: &Option<Witness>) -> String {
    match w {
        None => "none".into(),
        Some(w) => {
            let b: Vec<String> = w.b.iter().map(|x| x.to_string()).collect();
            format!("B={{{}}} c={} a={}", b.join(","), w.c, w.a)
        }
    }
}

fn witness_json(w: &Option<Witness>) -> serde_json::Value {
    w.as_ref().map_or(serde_json::Value::Null, |w| json!({"b": w.b, "c": w.c, "a": w.a}))
}

fn census_for(n: usize, shards: usize) -> Result<Census> {
    let opts = CensusOptions { shards, ..CensusOptions::default() };
    Ok(run_census_with(n, &Catalog::builtin(), &opts)?)
}

fn print_census(out: &mut impl Write, census: &Census, format: Format) -> Result<()> {
    let t = &census.tally;
    match format {
        Format::Csv => census::write_csv(census, out)?,
        Format::Json => {
            let rows: serde_json::Map<String, serde_json::Value> =
                t.counts_by_row.iter().map(|(k, v)| (k.clone(), v.to_string().into())).collect();
            let doc = json!({
                "n": t.n,
                "counts_by_complexity": t.counts_by_complexity.iter().map(u64::to_string).collect::<Vec<_>>(),
                "counts_by_row": rows,
                "class_mismatches": t.class_mismatches.to_string(),
                "shards": census.shards_completed,
                "checksum": census.checksum(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Table => {
            writeln!(out, "n {}", t.n)?;
            writeln!(out, "shards {}", census.shards_completed)?;
            for (c, count) in t.counts_by_complexity.iter().enumerate() {
                writeln!(out, "complexity {c} {count}")?;
            }
            for (label, count) in &t.counts_by_row {
                writeln!(out, "row {label} {count}")?;
            }
            writeln!(out, "class_mismatches {}", t.class_mismatches)?;
            writeln!(out, "checksum {}", census.checksum())?;
        }
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Outcome> {
    let format = cli.format;
    match cli.command {
        Command::Sort { word, passes } => {
            let sorted = if passes == 1 { stack_sort(&word) } else { stack_sort_iter(&word, passes) };
            match format {
                Format::Json => writeln!(out, "{}", json!({"input": word.to_string(), "passes": passes, "output": sorted.to_string()}))?,
                _ => writeln!(out, "{sorted}")?,
            }
        }
        Command::Complexity { word } => {
            let k = complexity(&word)?;
            match format {
                Format::Json => writeln!(out, "{}", json!({"word": word.to_string(), "complexity": k}))?,
                _ => writeln!(out, "{k}")?,
            }
        }
        Command::Descents { word: Some(word), .. } => {
            let d = descents(&word);
            match format {
                Format::Json => writeln!(out, "{}", json!({"word": word.to_string(), "descents": d}))?,
                _ => writeln!(out, "{d}")?,
            }
        }
        Command::Descents { word: None, n: Some(n), census } => {
            let census = match census {
                Some(path) => load_census(&path).with_context(|| format!("loading {}", path.display()))?,
                None => census_for(n, 1)?,
            };
            if census.n() != n {
                bail!("census file is for n = {}, not {n}", census.n());
            }
            let coeffs = census.descent_polynomial()?;
            match format {
                Format::Json => writeln!(out, "{}", json!({"n": n, "coefficients": coeffs.iter().map(u64::to_string).collect::<Vec<_>>()}))?,
                Format::Csv => {
                    writeln!(out, "n,descents,count")?;
                    for (d, c) in coeffs.iter().enumerate() {
                        writeln!(out, "{n},{d},{c}")?;
                    }
                }
                Format::Table => {
                    for (d, c) in coeffs.iter().enumerate() {
                        writeln!(out, "{d} {c}")?;
                    }
                }
            }
        }
        Command::Descents { .. } => bail!("give a word or --n"),
        Command::Forbidden { word } => {
            let report = forbidden_report(&word);
            let bounds = complexity_bounds(&word)?;
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "word": word.to_string(),
                        "max_order": report.max_order,
                        "max_uninterrupted_order": report.max_uninterrupted_order,
                        "witness": witness_json(&report.witness),
                        "uninterrupted_witness": witness_json(&report.uninterrupted_witness),
                        "lower": bounds.0,
                        "upper": bounds.1,
                    })
                )?,
                _ => {
                    writeln!(out, "max_order {}", report.max_order)?;
                    writeln!(out, "max_uninterrupted_order {}", report.max_uninterrupted_order)?;
                    writeln!(out, "witness {}", witness_text(&report.witness))?;
                    writeln!(out, "uninterrupted_witness {}", witness_text(&report.uninterrupted_witness))?;
                    writeln!(out, "bounds {} {}", bounds.0, bounds.1)?;
                }
            }
        }
        Command::Classify { word, catalog } => {
            let catalog = match catalog {
                Some(path) => Catalog::parse(&std::fs::read_to_string(&path)?)?,
                None => Catalog::builtin(),
            };
            let hit = catalog.classify(&word)?;
            match (format, hit) {
                (Format::Json, Some(c)) => writeln!(
                    out,
                    "{}",
                    json!({"word": word.to_string(), "label": c.row.label, "certified": c.row.certified_class().to_string(), "class": c.class})
                )?,
                (Format::Json, None) => writeln!(out, "{}", json!({"word": word.to_string(), "label": null}))?,
                (_, Some(c)) => writeln!(out, "{} {} {}", c.row.label, c.row.certified_class(), c.class)?,
                (_, None) => writeln!(out, "none")?,
            }
        }
        Command::Census { n, shards, threads, out: path, checkpoint, resume, max_shards } => {
            let opts = CensusOptions { shards, checkpoint, resume, max_new_shards: max_shards, threads };
            let census = run_census_with(n, &Catalog::builtin(), &opts)?;
            if let Some(path) = path {
                let report = Report { verify: verify(&census).items, census: census.clone(), fits: Vec::new() };
                save_report(&report, &path).with_context(|| format!("writing {}", path.display()))?;
            }
            print_census(out, &census, format)?;
        }
        Command::Verify { n, census, shards } => {
            let census = match (n, census) {
                (_, Some(path)) => load_census(&path).with_context(|| format!("loading {}", path.display()))?,
                (Some(n), None) => census_for(n, shards)?,
                (None, None) => bail!("give --n or --census"),
            };
            let report = verify(&census);
            match format {
                Format::Json => {
                    let items: Vec<_> = report
                        .items
                        .iter()
                        .map(|i| json!({"name": i.name, "formula_value": i.formula_value.to_string(), "census_value": i.census_value.to_string(), "pass": i.pass}))
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&json!({"n": report.n, "verify": items}))?)?;
                }
                Format::Csv => {
                    writeln!(out, "n,name,formula_value,census_value,pass")?;
                    for i in &report.items {
                        writeln!(out, "{},\"{}\",{},{},{}", report.n, i.name, i.formula_value, i.census_value, i.pass)?;
                    }
                }
                Format::Table => {
                    for item in &report.items {
                        writeln!(out, "{item}")?;
                    }
                    let failed = report.failures().count();
                    writeln!(out, "n {}: {} checks, {failed} failed", report.n, report.items.len())?;
                }
            }
            if !report.all_pass() {
                return Ok(Outcome::Failed);
            }
        }
        Command::Fit { k, census } => {
            let censuses = census
                .iter()
                .map(|p| load_census(p).with_context(|| format!("loading {}", p.display())))
                .collect::<Result<Vec<_>>>()?;
            let fit = fit_from_censuses(k, &censuses)?;
            let a: Vec<String> = fit.coefficients.iter().map(|a| a.to_string()).collect();
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"k": fit.k, "a": a, "natural": fit.natural, "consistent": fit.consistent, "data_points": fit.data_points, "inexact_points": fit.inexact_points})
                )?,
                _ => {
                    writeln!(out, "k {}", fit.k)?;
                    writeln!(out, "a {}", a.join(" "))?;
                    writeln!(out, "natural {}", fit.natural)?;
                    writeln!(out, "consistent {}", fit.consistent)?;
                    let pts: Vec<String> = fit.data_points.iter().map(|n| n.to_string()).collect();
                    writeln!(out, "points {}", pts.join(" "))?;
                }
            }
            if !(fit.natural && fit.consistent) {
                return Ok(Outcome::Failed);
            }
        }
    }
    Ok(Outcome::Ok)
}
