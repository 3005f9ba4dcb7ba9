//! Command-line front end: argument parsing, spectrum input rules, output and manifests.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::Spectrum;
use crate::ldp::{legendre_of_cgf, rate, rate_scan};
use crate::manifest::RunManifest;
use crate::measure::{exact_distribution, Region};
use crate::output::{Cell, Format, Table};
use crate::rsk::{empirical_distribution, SamplerConfig};
use crate::verify::{run_verification, Fault, Level};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "SPECTRUM_SCOPE_THREADS";

/// Accepted distance of an input spectrum's sum from 1.
pub const INPUT_SUM_TOL: f64 = 1e-9;

const DEFAULT_CHAINS: u32 = 8;

#[derive(Debug, Parser)]
#[command(
    name = "spectrum-scope",
    version,
    about = "Exact and sampled statistics of Young-frame spectrum estimation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// Comma-separated eigenvalues in non-increasing order; uniform if omitted.
    #[arg(long)]
    pub spectrum: Option<String>,
    /// Sort unsorted input instead of rejecting it.
    #[arg(long)]
    pub allow_unsorted: bool,
    /// Divide the input by its sum before validation.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Manifest file; defaults to `<out>.manifest.json`, or stderr without `--out`.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact distribution of frame outcomes on N copies.
    Dist {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        spectrum: SpectrumArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decay exponents of the probability of missing the spectrum by more than epsilon.
    RateScan {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        spectrum: SpectrumArgs,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Empirical frame frequencies from RSK sampling.
    Sample {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        spectrum: SpectrumArgs,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CHAINS)]
        chains: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Vec<Fault>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the rate function with the Legendre transform of the cumulant generating function.
    Legendre {
        /// Defaults to the length of `--spectrum`.
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        spectrum: SpectrumArgs,
        /// Comma-separated point `s` of the ordered simplex.
        #[arg(long)]
        point: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Regenerate the output described by a manifest and check its checksum.
    Replay {
        manifest: PathBuf,
        /// Where to write the regenerated output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Output bytes of one command together with its manifest and exit status.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub bytes: Vec<u8>,
    pub manifest: RunManifest,
    pub exit_code: i32,
}

fn parse_floats(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidSpectrum(format!("cannot parse {t:?} as a number")))
        })
        .collect()
}

/// Applies the input rules: length `d`, non-negative, ordered unless `allow_unsorted`,
/// sum within `1e-9` of one (after `normalize`), rescaled only when off by more than `1e-12`.
pub fn resolve_spectrum(values: &[f64], d: usize, allow_unsorted: bool, normalize: bool) -> Result<Spectrum> {
    if values.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: values.len(),
        });
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::InvalidSpectrum(format!("entry {bad} is not a probability")));
    }
    if !allow_unsorted && values.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidSpectrum(format!(
            "entries {values:?} are not in non-increasing order (pass --allow-unsorted to sort them)"
        )));
    }
    let mut v = values.to_vec();
    if normalize {
        let total: f64 = v.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(Error::InvalidSpectrum("cannot normalize a zero vector".into()));
        }
        v.iter_mut().for_each(|x| *x /= total);
    }
    let total: f64 = v.iter().sum();
    if (total - 1.0).abs() > INPUT_SUM_TOL {
        return Err(Error::InvalidSpectrum(format!(
            "entries sum to {total}, not 1 within {INPUT_SUM_TOL:e} (pass --normalize to rescale)"
        )));
    }
    if (total - 1.0).abs() > crate::lattice::SPECTRUM_SUM_TOL {
        Spectrum::normalized(v)
    } else {
        Spectrum::canonicalize(v)
    }
}

fn spectrum_from_args(args: &SpectrumArgs, d: usize) -> Result<Spectrum> {
    if d == 0 {
        return Err(Error::Domain("d must be at least 1".into()));
    }
    match &args.spectrum {
        None => Ok(Spectrum::uniform(d)),
        Some(text) => resolve_spectrum(&parse_floats(text)?, d, args.allow_unsorted, args.normalize),
    }
}

/// Shortest round-trip decimal rendering, comma-joined.
fn join_values(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn strings<const K: usize>(items: [&str; K]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn indexed(prefix: &str, d: usize) -> impl Iterator<Item = String> + '_ {
    (1..=d).map(move |i| format!("{prefix}{i}"))
}

fn cmd_dist(d: usize, n: u32, spectrum: &SpectrumArgs, format: Format) -> Result<RunOutput> {
    let r = spectrum_from_args(spectrum, d)?;
    let dist = exact_distribution(d, n, &r)?;
    let columns: Vec<String> = indexed("Y", d)
        .chain(indexed("est", d))
        .chain(strings(["prob", "log_prob"]))
        .collect();
    let mut table = Table::new(columns);
    for (y, &lp) in dist.frames().iter().zip(dist.log_probs()) {
        let mut row: Vec<Cell> = y.rows().iter().map(|&k| Cell::UInt(u64::from(k))).collect();
        row.extend(y.rows().iter().map(|&k| Cell::Float(f64::from(k) / f64::from(n))));
        row.push(Cell::Float(lp.exp()));
        row.push(Cell::Float(lp));
        table.push(row);
    }
    let bytes = table.render(format).into_bytes();
    let mut args = strings(["dist", "--d"]);
    args.extend([d.to_string(), "--n".into(), n.to_string()]);
    args.extend(["--spectrum".into(), join_values(r.values())]);
    args.extend(["--format".into(), format_name(format).into()]);
    let params = json!({"d": d, "n": n, "spectrum": r.values(), "format": format_name(format)});
    let manifest = RunManifest::new("dist", args, params, None, &bytes).with_summary(json!({"frames": dist.len()}));
    Ok(RunOutput {
        bytes,
        manifest,
        exit_code: 0,
    })
}

fn cmd_rate_scan(d: usize, spectrum: &SpectrumArgs, epsilon: f64, n_list: &[u32], format: Format) -> Result<RunOutput> {
    let r = spectrum_from_args(spectrum, d)?;
    if n_list.is_empty() {
        return Err(Error::Domain("--n-list must name at least one N".into()));
    }
    if let Some(&0) = n_list.iter().find(|&&n| n == 0) {
        return Err(Error::Domain("every N in --n-list must be positive".into()));
    }
    let region = Region::ball_complement(&r, epsilon)?;
    let profile = rate_scan(d, &r, &region, n_list)?;
    let mut table = Table::new(["N", "K_N", "log_K_N", "a_N", "a_N_infinite", "target"]);
    for s in &profile.samples {
        table.push(vec![
            Cell::UInt(u64::from(s.n)),
            Cell::Float(s.probability),
            Cell::Float(s.log_probability),
            Cell::Float(s.a_n),
            Cell::Bool(s.infinite),
            Cell::Float(profile.target),
        ]);
    }
    let bytes = table.render(format).into_bytes();
    let n_text = n_list.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let mut args = strings(["rate-scan", "--d"]);
    args.extend([d.to_string(), "--spectrum".into(), join_values(r.values())]);
    args.extend(["--epsilon".into(), epsilon.to_string(), "--n-list".into(), n_text]);
    args.extend(["--format".into(), format_name(format).into()]);
    let params = json!({
        "d": d, "spectrum": r.values(), "epsilon": epsilon, "n_list": n_list,
        "format": format_name(format),
    });
    let summary = json!({"minimizer": profile.minimizer.as_ref().map(|m| m.values().to_vec())});
    let manifest = RunManifest::new("rate-scan", args, params, None, &bytes).with_summary(summary);
    Ok(RunOutput {
        bytes,
        manifest,
        exit_code: 0,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    d: usize,
    n: u32,
    spectrum: &SpectrumArgs,
    samples: u64,
    seed: u64,
    chains: u32,
    format: Format,
) -> Result<RunOutput> {
    let r = spectrum_from_args(spectrum, d)?;
    let cfg = SamplerConfig::new(r.clone(), n, seed, chains)?;
    let emp = empirical_distribution(&cfg, samples, None)?;
    let columns: Vec<String> = indexed("Y", d)
        .chain(indexed("est", d))
        .chain(strings(["count", "freq"]))
        .collect();
    let mut table = Table::new(columns);
    for (y, &k) in emp.counts.iter().rev() {
        let mut row: Vec<Cell> = y.rows().iter().map(|&v| Cell::UInt(u64::from(v))).collect();
        let scale = f64::from(n.max(1));
        row.extend(y.rows().iter().map(|&v| Cell::Float(f64::from(v) / scale)));
        row.push(Cell::UInt(k));
        row.push(Cell::Float(k as f64 / samples as f64));
        table.push(row);
    }
    let bytes = table.render(format).into_bytes();
    let (mean, sd) = emp.estimate_moments();
    let mut args = strings(["sample", "--d"]);
    args.extend([d.to_string(), "--n".into(), n.to_string()]);
    args.extend(["--spectrum".into(), join_values(r.values())]);
    args.extend([
        "--samples".into(),
        samples.to_string(),
        "--seed".into(),
        seed.to_string(),
    ]);
    args.extend(["--chains".into(), chains.to_string()]);
    args.extend(["--format".into(), format_name(format).into()]);
    let params = json!({
        "d": d, "n": n, "spectrum": r.values(), "samples": samples, "seed": seed,
        "chains": chains, "format": format_name(format),
    });
    let summary = json!({"distinct_frames": emp.counts.len(), "mean_estimate": mean, "sd_estimate": sd});
    let manifest = RunManifest::new("sample", args, params, Some(seed), &bytes).with_summary(summary);
    Ok(RunOutput {
        bytes,
        manifest,
        exit_code: 0,
    })
}

fn cmd_verify(level: Level, faults: &[Fault], format: Format) -> Result<RunOutput> {
    let report = run_verification(level, faults);
    let mut table = Table::new(["check", "passed", "cases", "detail"]);
    for c in &report.checks {
        table.push(vec![
            Cell::Text(c.name.into()),
            Cell::Bool(c.passed),
            Cell::UInt(c.cases),
            Cell::Text(c.detail.clone()),
        ]);
    }
    let bytes = table.render(format).into_bytes();
    let level_name = match level {
        Level::Quick => "quick",
        Level::Full => "full",
    };
    let mut args = strings(["verify", "--level", level_name]);
    for f in faults {
        args.push("--inject-fault".into());
        args.push(match f {
            Fault::Duality => "duality".into(),
        });
    }
    args.extend(["--format".into(), format_name(format).into()]);
    let params = json!({"level": level_name, "format": format_name(format)});
    let summary = json!({"passed": report.passed(), "failed": report.failures()});
    let manifest = RunManifest::new("verify", args, params, None, &bytes).with_summary(summary);
    Ok(RunOutput {
        bytes,
        manifest,
        exit_code: if report.passed() { 0 } else { 1 },
    })
}

fn cmd_legendre(d: Option<usize>, spectrum: &SpectrumArgs, point: &str, format: Format) -> Result<RunOutput> {
    let s_raw = parse_floats(point)?;
    let d = match (d, &spectrum.spectrum) {
        (Some(d), _) => d,
        (None, Some(text)) => text.split(',').count(),
        (None, None) => s_raw.len(),
    };
    let r = spectrum_from_args(spectrum, d)?;
    let s = resolve_spectrum(&s_raw, d, spectrum.allow_unsorted, spectrum.normalize)?;
    let direct = rate(&s, &r)?;
    let dual = legendre_of_cgf(&s, &r)?;
    let columns: Vec<String> = strings([
        "rate",
        "legendre",
        "difference",
        "iterations",
        "grad_norm",
        "certificate_gap",
    ])
    .into_iter()
    .chain(indexed("eta", d))
    .collect();
    let mut table = Table::new(columns);
    let mut row = vec![
        Cell::Float(direct),
        Cell::Float(dual.value),
        Cell::Float(dual.value - direct),
        Cell::UInt(dual.iterations as u64),
        Cell::Float(dual.grad_norm),
        Cell::Float(dual.certificate_gap),
    ];
    row.extend(dual.eta.iter().map(|&e| Cell::Float(e)));
    table.push(row);
    let bytes = table.render(format).into_bytes();
    let mut args = strings(["legendre", "--d"]);
    args.extend([d.to_string(), "--spectrum".into(), join_values(r.values())]);
    args.extend(["--point".into(), join_values(s.values())]);
    args.extend(["--format".into(), format_name(format).into()]);
    let params = json!({"d": d, "spectrum": r.values(), "point": s.values(), "format": format_name(format)});
    let manifest = RunManifest::new("legendre", args, params, None, &bytes);
    Ok(RunOutput {
        bytes,
        manifest,
        exit_code: 0,
    })
}

/// Runs a non-replay command in memory.
pub fn execute(command: &Command) -> Result<RunOutput> {
    match command {
        Command::Dist { d, n, spectrum, output } => cmd_dist(*d, *n, spectrum, output.format),
        Command::RateScan {
            d,
            spectrum,
            epsilon,
            n_list,
            output,
        } => cmd_rate_scan(*d, spectrum, *epsilon, n_list, output.format),
        Command::Sample {
            d,
            n,
            spectrum,
            samples,
            seed,
            chains,
            output,
        } => cmd_sample(*d, *n, spectrum, *samples, *seed, *chains, output.format),
        Command::Verify {
            level,
            inject_fault,
            output,
        } => cmd_verify(*level, inject_fault, output.format),
        Command::Legendre {
            d,
            spectrum,
            point,
            output,
        } => cmd_legendre(*d, spectrum, point, output.format),
        Command::Replay { .. } => Err(Error::Domain("replay cannot be nested".into())),
    }
}

/// Re-parses a manifest's argument list and regenerates its output.
pub fn replay_manifest(manifest: &RunManifest) -> Result<(RunOutput, bool)> {
    let argv = std::iter::once("spectrum-scope".to_string()).chain(manifest.args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::Domain(format!("manifest arguments: {e}")))?;
    let run = execute(&cli.command)?;
    let ok = manifest.matches(&run.bytes);
    Ok((run, ok))
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Domain(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| io_error(path, e))
}

fn default_manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn emit(run: &RunOutput, output: &OutputArgs) -> Result<()> {
    let manifest = run.manifest.to_json();
    match &output.out {
        Some(path) => write_file(path, &run.bytes)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&run.bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Domain(format!("stdout: {e}")))?;
        }
    }
    match (&output.manifest, &output.out) {
        (Some(path), _) => write_file(path, manifest.as_bytes()),
        (None, Some(out)) => write_file(&default_manifest_path(out), manifest.as_bytes()),
        (None, None) => {
            eprint!("{manifest}");
            Ok(())
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(text) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::Domain(format!("{THREADS_ENV}={text:?} is not a positive integer")))?;
    // A second initialization in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn dispatch(cli: Cli) -> Result<i32> {
    configure_threads()?;
    match &cli.command {
        Command::Replay { manifest, out } => {
            let text = fs::read_to_string(manifest).map_err(|e| io_error(manifest, e))?;
            let m = RunManifest::from_json(&text)?;
            let (run, ok) = replay_manifest(&m)?;
            if let Some(path) = out {
                write_file(path, &run.bytes)?;
            }
            if ok {
                println!("replay {}: output matches sha256 {}", m.command, m.output_sha256);
                Ok(0)
            } else {
                eprintln!(
                    "replay {}: output differs (expected sha256 {}, got {})",
                    m.command, m.output_sha256, run.manifest.output_sha256
                );
                Ok(1)
            }
        }
        command => {
            let run = execute(command)?;
            let output = match command {
                Command::Dist { output, .. }
                | Command::RateScan { output, .. }
                | Command::Sample { output, .. }
                | Command::Verify { output, .. }
                | Command::Legendre { output, .. } => output,
                Command::Replay { .. } => unreachable!(),
            };
            emit(&run, output)?;
            if run.exit_code != 0 {
                if let Some(Value::Array(failed)) = run.manifest.summary.as_ref().and_then(|s| s.get("failed")) {
                    let names: Vec<&str> = failed.iter().filter_map(Value::as_str).collect();
                    eprintln!("invariant failure: {}", names.join(", "));
                }
            }
            Ok(run.exit_code)
        }
    }
}

/// Parses `argv` (program name first) and runs it; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
