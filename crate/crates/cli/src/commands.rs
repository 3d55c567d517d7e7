use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use heaps_core::corpus::{census, strip_gutenberg, tokenize, RawText, TokenStream, TypeCensus};
use heaps_core::curves::{
    aggregate, default_ladder, local_slopes, logsample_curve, partition_curve, prefix_curve, Scheme, Statistic,
    TypeTokenCurve,
};
use heaps_core::format::sig6;
use heaps_core::regress::{fit, FitReport, LogBase, Model};
use heaps_core::urn::{
    expected_types_with_replacement, expected_types_without_replacement, mc_expected_types, parse_exponent, zipf_sweep,
    write_expectation_csv, write_sweep_csv, zipf_distribution, FitGrid, SweepConfig, TypeDistribution,
};

use crate::output::{stem, write_atomic};
use crate::{Cli, Command, Dictionary, UrnCommand};

pub fn run(cli: &Cli) -> Result<Vec<PathBuf>> {
    let out = cli.out.as_path();
    match &cli.command {
        Command::Ingest { input } => ingest(input, out),
        Command::Curve {
            tokens,
            scheme,
            ratio,
            statistic,
        } => curve(tokens, *scheme, *ratio, *statistic, out).map(|p| vec![p]),
        Command::Fit {
            input,
            model,
            log_base,
            statistic,
        } => fit_cmd(input, *model, *log_base, *statistic, out).map(|p| vec![p]),
        Command::Slopes { curve, band, step } => slopes(curve, *band, *step, out).map(|p| vec![p]),
        Command::Urn { command } => urn(command, out).map(|p| vec![p]),
    }
}

fn read_text(path: &Path) -> Result<String> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8_lossy(&bytes);
    Ok(text.strip_prefix('\u{feff}').unwrap_or(&text).to_string())
}

fn ingest(input: &Path, out: &Path) -> Result<Vec<PathBuf>> {
    let id = stem(input, ".txt");
    let stripped = strip_gutenberg(RawText::new(id.clone(), read_text(input)?))?;
    if !stripped.boilerplate_found {
        eprintln!(
            "warning: no Gutenberg start/end markers in {}; using the whole file",
            input.display()
        );
    }
    let stream = tokenize(&stripped.text)?;
    let tokens = write_atomic(out, &format!("{id}.tokens.txt"), |w| stream.write_tokens(w))?;
    let counts = census(&stream);
    let census_path = write_atomic(out, &format!("{id}.census.csv"), |w| counts.write_csv(w))?;
    Ok(vec![tokens, census_path])
}

fn read_stream(path: &Path) -> Result<TokenStream> {
    let file = File::open(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(TokenStream::read_tokens(
        stem(path, ".tokens.txt"),
        BufReader::new(file),
    )?)
}

fn read_curve(path: &Path) -> Result<TypeTokenCurve> {
    let file = File::open(path).with_context(|| format!("reading {}", path.display()))?;
    TypeTokenCurve::read_csv(file).with_context(|| format!("parsing {}", path.display()))
}

fn curve(tokens: &Path, scheme: Scheme, ratio: f64, statistic: Option<Statistic>, out: &Path) -> Result<PathBuf> {
    let stream = read_stream(tokens)?;
    let mut curve = match scheme {
        Scheme::Prefix => prefix_curve(&stream),
        Scheme::Partition => partition_curve(&stream, &default_ladder(stream.len()))?,
        Scheme::LogSample => logsample_curve(&prefix_curve(&stream), ratio)?,
    };
    let mut name = format!("{}.{scheme}", stream.source_id);
    if let Some(stat) = statistic {
        curve = aggregate(&curve, stat);
        name.push_str(&format!(".{stat}"));
    }
    write_atomic(out, &format!("{name}.csv"), |w| curve.write_csv(w))
}

const FIT_HEADER: [&str; 11] = [
    "source_id",
    "scheme",
    "model",
    "log_base",
    "n",
    "c0",
    "alpha",
    "beta",
    "r2",
    "r2_adj",
    "aic",
];

fn fit_row(r: &FitReport) -> Vec<String> {
    vec![
        r.source_id.clone(),
        r.scheme.clone(),
        r.model.to_string(),
        r.log_base.to_string(),
        r.n.to_string(),
        sig6(r.c0),
        sig6(r.alpha),
        sig6(r.beta),
        sig6(r.r2),
        sig6(r.r2_adj),
        sig6(r.aic),
    ]
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Column medians of a batch, labelled `median`.
fn median_row(reports: &[FitReport]) -> Vec<String> {
    let col = |f: fn(&FitReport) -> f64| sig6(median(reports.iter().map(f).collect()));
    let first = &reports[0];
    vec![
        "median".into(),
        first.scheme.clone(),
        first.model.to_string(),
        first.log_base.to_string(),
        col(|r| r.n as f64),
        col(|r| r.c0),
        col(|r| r.alpha),
        col(|r| r.beta),
        col(|r| r.r2),
        col(|r| r.r2_adj),
        col(|r| r.aic),
    ]
}

fn write_rows(w: &mut dyn Write, rows: &[Vec<String>]) -> heaps_core::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(FIT_HEADER)?;
    for r in rows {
        out.write_record(r)?;
    }
    out.flush()?;
    Ok(())
}

fn fit_one(path: &Path, model: Model, log_base: LogBase, statistic: Option<Statistic>) -> Result<FitReport> {
    let mut curve = read_curve(path)?;
    if let Some(stat) = statistic {
        curve = aggregate(&curve, stat);
    }
    let f = fit(&curve, model, log_base).with_context(|| format!("fitting {}", path.display()))?;
    Ok(f.report(&curve.source_id, &curve.scheme.to_string()))
}

fn fit_cmd(input: &Path, model: Model, log_base: LogBase, statistic: Option<Statistic>, out: &Path) -> Result<PathBuf> {
    if !input.is_dir() {
        let report = fit_one(input, model, log_base, statistic)?;
        let name = format!("{}.{model}.fit.csv", stem(input, ".csv"));
        return write_atomic(out, &name, |w| write_rows(w, &[fit_row(&report)]));
    }
    let mut files: Vec<PathBuf> = fs::read_dir(input)
        .with_context(|| format!("listing {}", input.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no curve CSV files in {}", input.display());
    }
    let reports = files
        .iter()
        .map(|p| fit_one(p, model, log_base, statistic))
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<Vec<String>> = reports.iter().map(fit_row).collect();
    rows.push(median_row(&reports));
    write_atomic(out, &format!("fit_summary.{model}.csv"), |w| write_rows(w, &rows))
}

fn slopes(path: &Path, band: f64, step: f64, out: &Path) -> Result<PathBuf> {
    let curve = read_curve(path)?;
    let report = local_slopes(&curve, band, step)?;
    if !report.skipped.is_empty() {
        eprintln!(
            "warning: {} band(s) with fewer than 3 points skipped",
            report.skipped.len()
        );
    }
    let name = format!("{}.slopes.csv", stem(path, ".csv"));
    write_atomic(out, &name, |w| report.write_csv(&curve.source_id, w))
}

fn single_zipf(dict: &Dictionary) -> Result<TypeDistribution> {
    let a = match dict.zipf_a.as_slice() {
        [] => "1.01",
        [a] => a.as_str(),
        _ => bail!("this command takes a single --zipf-a"),
    };
    Ok(zipf_distribution(
        dict.dict_size,
        &parse_exponent(a)?,
        dict.precision_bits,
    )?)
}

fn urn(command: &UrnCommand, out: &Path) -> Result<PathBuf> {
    match command {
        UrnCommand::Expect {
            dict,
            t_min,
            t_max,
            census,
        } => {
            if t_min > t_max {
                bail!("--t-min {t_min} exceeds --t-max {t_max}");
            }
            let rows: Vec<(u64, f64)> = match census {
                Some(path) => {
                    let file = File::open(path).with_context(|| format!("reading {}", path.display()))?;
                    let c = TypeCensus::read_csv(file)?;
                    (*t_min..=*t_max)
                        .map(|t| Ok((t, expected_types_without_replacement(&c, t)?)))
                        .collect::<heaps_core::Result<_>>()?
                }
                None => {
                    let d = single_zipf(dict)?;
                    (*t_min..=*t_max)
                        .map(|t| (t, expected_types_with_replacement(&d, t as f64)))
                        .collect()
                }
            };
            write_atomic(out, "urn_expect.csv", |w| write_expectation_csv(&rows, w))
        }
        UrnCommand::Sweep {
            dict,
            tokens,
            t_min,
            t_max,
            integer_grid,
        } => {
            let defaults = SweepConfig::default();
            let cfg = SweepConfig {
                exponents: if dict.zipf_a.is_empty() {
                    defaults.exponents
                } else {
                    dict.zipf_a.clone()
                },
                dict_size: dict.dict_size,
                tokens: tokens.clone(),
                t_min: *t_min,
                t_max: *t_max,
                grid: if *integer_grid {
                    FitGrid::Integer
                } else {
                    FitGrid::default()
                },
                precision_bits: dict.precision_bits,
            };
            let rows = zipf_sweep(&cfg)?;
            write_atomic(out, "urn_sweep.csv", |w| write_sweep_csv(&cfg, &rows, w))
        }
        UrnCommand::Mc {
            dict,
            tokens,
            trials,
            seed,
        } => {
            let d = single_zipf(dict)?;
            let mut rows = vec![["T", "mc_mean", "std_error", "exact", "z"].map(String::from).to_vec()];
            for (i, &t) in tokens.iter().enumerate() {
                // Distinct, reproducible stream per grid point.
                let est = mc_expected_types(&d, t, *trials, seed.wrapping_add(i as u64))?;
                let exact = expected_types_with_replacement(&d, t as f64);
                let z = if est.std_error > 0.0 {
                    (est.mean - exact) / est.std_error
                } else {
                    0.0
                };
                rows.push(vec![
                    t.to_string(),
                    sig6(est.mean),
                    sig6(est.std_error),
                    sig6(exact),
                    sig6(z),
                ]);
            }
            write_atomic(out, "urn_mc.csv", |w| {
                let mut out = csv::Writer::from_writer(w);
                for r in &rows {
                    out.write_record(r)?;
                }
                out.flush()?;
                Ok(())
            })
        }
    }
}
