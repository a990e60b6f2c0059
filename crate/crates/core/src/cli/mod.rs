//! Command-line front end.
//!
//! Exit codes: 0 when the computation finished and is internally
//! consistent, 1 for usage errors, 2 when an oracle or cross-check
//! disagrees with the closed form.

mod svg;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::census::{Census, CensusInput};
use crate::error::{Error, Result};
use crate::oracle::{lemma_stabilizer_check, oracle_fixed_region, remark_orbit_check, OracleParams};
use crate::rational::{display_rational, parse_rational, parse_vector, Rational};
use crate::roots::{build_root_datum, ApartmentPoint, Family};
use crate::torus::TorusSpec;

pub use svg::render_figure;

/// Directory that relative `--output` paths are resolved against.
pub const OUTPUT_DIR_ENV: &str = "TORAL_OUTPUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CROSS_VALIDATION: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "toral", version, about = "Torus fixed regions, simplicial radii and type counts for Sp_2n")]
struct Cli {
    /// key=value file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Alcove vertices and (affine) simple roots.
    Apartment { family: String, n: usize },
    /// Type counts per vertex class.
    Census {
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        s0: Option<String>,
    },
    /// SVG of the rank-2 apartment with A^T and Ω_A(x, s0).
    Figure {
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        s0: Option<String>,
        /// Margin drawn around [0, 1/2]^2.
        #[arg(long)]
        window: Option<String>,
    },
    /// Matrix-level checks: remark-orbit, fixed-region, stabilizer.
    Oracle {
        check: String,
        spec: Option<String>,
        #[command(flatten)]
        params: OracleFlags,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        s: Option<String>,
    },
}

#[derive(Debug, Args)]
struct OracleFlags {
    #[arg(long)]
    q: Option<u64>,
    #[arg(long = "N")]
    n_trunc: Option<i32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

/// Flags after merging the config file underneath the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub s0: Option<Rational>,
    pub window: Rational,
    pub oracle: OracleParams,
    pub x: Option<ApartmentPoint>,
    pub s: Option<Rational>,
}

const CONFIG_KEYS: [&str; 10] = ["format", "output", "s0", "window", "q", "N", "samples", "seed", "x", "s"];

/// Reads `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", lineno + 1)))?;
        let k = k.trim();
        if !CONFIG_KEYS.contains(&k) {
            return Err(Error::Parse(format!("config line {}: unknown key {k:?}", lineno + 1)));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Parse(format!("invalid value {v:?} for {key}")))
}

fn merged(cli: &Cli) -> Result<CliConfig> {
    let file = match &cli.config {
        Some(p) => parse_config(
            &std::fs::read_to_string(p).map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?,
        )?,
        None => BTreeMap::new(),
    };
    let get = |k: &str| file.get(k).map(String::as_str);

    let (flag_s0, flag_window, flags, flag_x, flag_s) = match &cli.command {
        Command::Census { s0, .. } => (s0.clone(), None, None, None, None),
        Command::Figure { s0, window, .. } => (s0.clone(), window.clone(), None, None, None),
        Command::Oracle { params, x, s, .. } => (None, None, Some(params), x.clone(), s.clone()),
        Command::Apartment { .. } => (None, None, None, None, None),
    };

    let format = match (cli.format, get("format")) {
        (Some(f), _) => Some(f),
        (None, Some(v)) => Some(Format::from_str(v, true).map_err(|_| Error::Parse(format!("unknown format {v:?}")))?),
        (None, None) => None,
    };
    let output = cli.output.clone().or_else(|| get("output").map(PathBuf::from));
    let s0 = flag_s0.as_deref().or(get("s0")).map(parse_rational).transpose()?;
    let window = flag_window
        .as_deref()
        .or(get("window"))
        .map(parse_rational)
        .transpose()?
        .unwrap_or_else(|| crate::rational::q(1, 2));

    let d = OracleParams::default();
    let pick = |flag: Option<String>, key: &str| flag.or_else(|| get(key).map(String::from));
    let oracle = OracleParams {
        q: pick(flags.and_then(|f| f.q).map(|v| v.to_string()), "q").map_or(Ok(d.q), |v| parse_num("q", &v))?,
        n_trunc: pick(flags.and_then(|f| f.n_trunc).map(|v| v.to_string()), "N")
            .map_or(Ok(d.n_trunc), |v| parse_num("N", &v))?,
        samples: pick(flags.and_then(|f| f.samples).map(|v| v.to_string()), "samples")
            .map_or(Ok(d.samples), |v| parse_num("samples", &v))?,
        seed: pick(flags.and_then(|f| f.seed).map(|v| v.to_string()), "seed")
            .map_or(Ok(d.seed), |v| parse_num("seed", &v))?,
    };
    let x = pick(flag_x, "x").map(|v| parse_vector(&v).map(ApartmentPoint::new)).transpose()?;
    let s = pick(flag_s, "s").map(|v| parse_rational(&v)).transpose()?;
    Ok(CliConfig { format, output, s0, window, oracle, x, s })
}

/// What a subcommand produced.
struct Outcome {
    text: String,
    consistent: bool,
}

fn require_format(format: Option<Format>, allowed: &[Format], default: Format) -> Result<Format> {
    let f = format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(Error::Config(format!("format {f:?} is not available for this command")));
    }
    Ok(f)
}

#[derive(Serialize)]
struct AlcoveVertex {
    #[serde(rename = "type")]
    vertex_type: usize,
    coordinates: String,
}

#[derive(Serialize)]
struct ApartmentReport {
    family: String,
    n: usize,
    roots: Vec<String>,
    simple_roots: Vec<String>,
    affine_simple_roots: Vec<String>,
    alcove_vertices: Vec<AlcoveVertex>,
}

fn cmd_apartment(family: &str, n: usize, format: Format) -> Result<Outcome> {
    let family: Family = family.parse()?;
    let rd = build_root_datum(family, n)?;
    let text = match format {
        Format::Json => {
            let report = ApartmentReport {
                family: family.to_string(),
                n,
                roots: rd.roots().iter().map(|r| r.to_string()).collect(),
                simple_roots: rd.simple_roots().iter().map(|r| r.to_string()).collect(),
                affine_simple_roots: rd.affine_simple_roots().iter().map(|r| r.to_string()).collect(),
                alcove_vertices: rd
                    .alcove_vertices()
                    .iter()
                    .enumerate()
                    .map(|(i, v)| AlcoveVertex { vertex_type: i, coordinates: v.to_string() })
                    .collect(),
            };
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        _ => {
            let mut s = String::from("kind\tindex\tvalue\n");
            for (i, r) in rd.simple_roots().iter().enumerate() {
                s += &format!("simple_root\t{}\t{r}\n", i + 1);
            }
            for (i, r) in rd.affine_simple_roots().iter().enumerate() {
                s += &format!("affine_simple_root\t{i}\t{r}\n");
            }
            for (i, v) in rd.alcove_vertices().iter().enumerate() {
                s += &format!("vertex\t{i}\t{v}\n");
            }
            s
        }
    };
    Ok(Outcome { text, consistent: true })
}

fn census_input(spec: &str, s0: Option<Rational>) -> Result<CensusInput> {
    let spec: TorusSpec = spec.parse()?;
    let s0 = s0.ok_or_else(|| Error::Config("--s0 is required".into()))?;
    if s0 <= Rational::from_integer(0) {
        return Err(Error::Config(format!("--s0 must be positive, got {}", display_rational(&s0))));
    }
    CensusInput::new(spec, s0)
}

fn cmd_census(spec: &str, cfg: &CliConfig, format: Format) -> Result<Outcome> {
    let report = Census::new(census_input(spec, cfg.s0)?).report()?;
    let text = match format {
        Format::Tsv => report.to_tsv(),
        _ => report.to_json() + "\n",
    };
    Ok(Outcome { text, consistent: true })
}

fn cmd_figure(spec: &str, cfg: &CliConfig) -> Result<Outcome> {
    let census = Census::new(census_input(spec, cfg.s0)?);
    Ok(Outcome { text: render_figure(&census, cfg.window)?, consistent: true })
}

fn cmd_oracle(check: &str, spec: Option<&str>, cfg: &CliConfig) -> Result<Outcome> {
    let p = &cfg.oracle;
    p.validate()?;
    let report = match check {
        "remark-orbit" => remark_orbit_check(p)?.report(p),
        "fixed-region" => {
            let spec: TorusSpec = spec.ok_or_else(|| Error::Config("fixed-region needs a torus spec".into()))?.parse()?;
            oracle_fixed_region(&spec, p)?.report(p)
        }
        "stabilizer" => {
            let x = cfg.x.clone().ok_or_else(|| Error::Config("stabilizer needs --x".into()))?;
            let s = cfg.s.ok_or_else(|| Error::Config("stabilizer needs --s".into()))?;
            lemma_stabilizer_check(&x, s, p)?.report(p)
        }
        other => return Err(Error::Config(format!("unknown oracle check {other:?}"))),
    };
    Ok(Outcome { text: report.to_json() + "\n", consistent: report.verdict })
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CrossValidation(_) => EXIT_CROSS_VALIDATION,
        _ => EXIT_USAGE,
    }
}

fn execute(cli: &Cli) -> Result<(CliConfig, Outcome)> {
    let cfg = merged(cli)?;
    let outcome = match &cli.command {
        Command::Apartment { family, n } => {
            let f = require_format(cfg.format, &[Format::Json, Format::Tsv], Format::Json)?;
            cmd_apartment(family, *n, f)
        }
        Command::Census { spec, .. } => {
            let f = require_format(cfg.format, &[Format::Json, Format::Tsv], Format::Json)?;
            cmd_census(spec, &cfg, f)
        }
        Command::Figure { spec, .. } => {
            require_format(cfg.format, &[Format::Svg], Format::Svg)?;
            cmd_figure(spec, &cfg)
        }
        Command::Oracle { check, spec, .. } => {
            require_format(cfg.format, &[Format::Json], Format::Json)?;
            cmd_oracle(check, spec.as_deref(), &cfg)
        }
    }?;
    Ok((cfg, outcome))
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (cfg, outcome) = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "toral: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cfg.output {
        Some(path) => {
            let path = resolve_output(path);
            std::fs::write(&path, &outcome.text)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => stdout.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "toral: {msg}");
        return EXIT_USAGE;
    }
    if outcome.consistent {
        EXIT_OK
    } else {
        let _ = writeln!(stderr, "toral: oracle verdict disagrees with the closed form");
        EXIT_CROSS_VALIDATION
    }
}
