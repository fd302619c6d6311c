use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nervelab::blowup::Blowup;
use nervelab::complex::{ComplexJson, SimplicialComplex};
use nervelab::covers::{nerve, IndexedCover};
use nervelab::geometry::{alpha_complex_2d, alpha_values_2d, cech_nerve, cech_values, cloud_svg, PointCloud, SvgOptions};
use nervelab::homology::barcode_from_entries;
use nervelab::morse::{collapse, default_seeds, greedy_gradient_search, DiscreteVectorField, HasseDiagram};
use nervelab::verify::{self, VerificationReport};
use nervelab::{corpus, NerveError, Result};

#[derive(Parser)]
#[command(name = "nervelab", version, about = "Nerves, blowups, Morse collapses and Cech/alpha complexes")]
struct Cli {
    /// Numerical tolerance for barcode endpoints.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Largest simplex dimension for Cech complexes.
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; standard output if absent.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Cech,
    Alpha,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Bst,
    Blowup,
    CechAlpha,
    Functorial,
    Bjorner,
    GammaPsi,
}

/// Inputs are file paths, or `corpus:<name>` for a built-in instance.
#[derive(Subcommand)]
enum Cmd {
    /// Nerve of a cover.
    Nerve { cover: String },
    /// PoBar, T and the collapse pairing of a cover.
    Blowup { cover: String },
    /// Collapse a complex along a given field, or search for a gradient.
    Morse {
        complex: String,
        #[arg(long)]
        field: Option<PathBuf>,
    },
    /// Cech complex of a cloud at a radius.
    Cech {
        cloud: String,
        #[arg(long, short)]
        radius: f64,
    },
    /// Alpha complex of a planar cloud at a radius.
    Alpha {
        cloud: String,
        #[arg(long, short)]
        radius: f64,
    },
    /// Persistence barcode of the Cech or alpha filtration.
    Barcode {
        cloud: String,
        #[arg(long, value_enum, default_value_t = Mode::Cech)]
        mode: Mode,
    },
    /// Run a verification suite and write its report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        input: String,
        /// Connectivity parameter for the bjorner suite.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Samples per cover for the gamma-psi suite.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Report zero timings so repeated runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
}

fn read(input: &str) -> Result<String> {
    Ok(fs::read_to_string(input)?)
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| NerveError::Schema(e.to_string()))
}

/// Anything wrong with a readable input file is a schema violation.
fn as_schema(e: NerveError) -> NerveError {
    match e {
        NerveError::Io(_) | NerveError::Schema(_) => e,
        other => NerveError::Schema(other.to_string()),
    }
}

fn load_complex(input: &str) -> Result<SimplicialComplex> {
    if let Some(name) = input.strip_prefix("corpus:") {
        return corpus::complex_by_name(name).ok_or_else(|| NerveError::Schema(format!("unknown complex {name:?}")));
    }
    let json: ComplexJson = serde_json::from_value(parse_json(&read(input)?)?)
        .map_err(|e| NerveError::Schema(format!("complex JSON: {e}")))?;
    SimplicialComplex::from_json(&json).map_err(as_schema)
}

fn load_cover(input: &str) -> Result<IndexedCover> {
    if let Some(name) = input.strip_prefix("corpus:") {
        return corpus::cover_by_name(name).ok_or_else(|| NerveError::Schema(format!("unknown cover {name:?}")));
    }
    IndexedCover::from_json(&parse_json(&read(input)?)?).map_err(as_schema)
}

fn load_cloud(input: &str) -> Result<PointCloud> {
    if let Some(name) = input.strip_prefix("corpus:") {
        return corpus::cloud_by_name(name).ok_or_else(|| NerveError::Schema(format!("unknown cloud {name:?}")));
    }
    if input.ends_with(".csv") {
        return PointCloud::from_csv(fs::File::open(input)?).map_err(as_schema);
    }
    PointCloud::from_json_str(&read(input)?).map_err(as_schema)
}

fn complex_out(k: &SimplicialComplex) -> String {
    pretty(&serde_json::to_value(k.to_json()).expect("complex serializes"))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn unsupported(what: &str, f: Format) -> NerveError {
    let name = match f {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Svg => "svg",
    };
    NerveError::Unsupported(format!("{what} has no {name} output"))
}

fn run_verify(cli: &Cli, suite: Suite, input: &str, k: usize, samples: usize) -> Result<VerificationReport> {
    Ok(match suite {
        Suite::Bst => verify::verify_bst(input, &load_complex(input)?),
        Suite::Blowup => verify::verify_blowup(input, &load_cover(input)?),
        Suite::CechAlpha => verify::verify_cech_alpha(input, &load_cloud(input)?, cli.tol),
        Suite::Functorial => verify::verify_functorial(input, &load_cloud(input)?, None),
        Suite::Bjorner => verify::verify_bjorner(input, &load_cover(input)?, k),
        Suite::GammaPsi => verify::verify_gamma_psi(input, &load_cloud(input)?, samples, cli.seed),
    })
}

/// Returns the output text and whether the command succeeded.
fn run(cli: &Cli) -> Result<(String, bool)> {
    let text = match &cli.cmd {
        Cmd::Nerve { cover } => {
            let n = nerve(&load_cover(cover)?)?;
            match cli.format {
                Format::Json => complex_out(&n),
                Format::Dot => HasseDiagram::new(&n).to_dot(None),
                f => return Err(unsupported("nerve", f)),
            }
        }
        Cmd::Blowup { cover } => {
            let b = Blowup::new(&load_cover(cover)?)?;
            match cli.format {
                Format::Json => pretty(&serde_json::to_value(b.report())?),
                Format::Dot => b.pobar.to_dot(),
                f => return Err(unsupported("blowup", f)),
            }
        }
        Cmd::Morse { complex, field } => {
            let k = load_complex(complex)?;
            let (v, json) = match field {
                Some(path) => {
                    let text = read(&path.to_string_lossy())?;
                    let v = DiscreteVectorField::from_json(&parse_json(&text)?).map_err(as_schema)?;
                    let trace = collapse(&k, &v)?;
                    (v, trace.to_json())
                }
                None => {
                    let seeds: Vec<u64> = default_seeds().into_iter().map(|s| s.wrapping_add(cli.seed)).collect();
                    let g = greedy_gradient_search(&k, &seeds);
                    let json = json!({ "seed": g.seed, "critical_count": g.num_critical(), "field": g.field.to_json() });
                    (g.field, json)
                }
            };
            match cli.format {
                Format::Json => pretty(&json),
                Format::Dot => HasseDiagram::new(&k).to_dot(Some(&v)),
                f => return Err(unsupported("morse", f)),
            }
        }
        Cmd::Cech { cloud, radius } => {
            let c = load_cloud(cloud)?;
            let k = cech_nerve(&c, *radius, cli.max_dim)?;
            match cli.format {
                Format::Json => complex_out(&k),
                Format::Svg => cloud_svg(&c, Some(&k), &SvgOptions { radius: Some(*radius), ..Default::default() })?,
                f => return Err(unsupported("cech", f)),
            }
        }
        Cmd::Alpha { cloud, radius } => {
            let c = load_cloud(cloud)?;
            let k = alpha_complex_2d(&c, *radius)?;
            match cli.format {
                Format::Json => complex_out(&k),
                Format::Svg => cloud_svg(&c, Some(&k), &SvgOptions { radius: Some(*radius), ..Default::default() })?,
                f => return Err(unsupported("alpha", f)),
            }
        }
        Cmd::Barcode { cloud, mode } => {
            if cli.format != Format::Json {
                return Err(unsupported("barcode", cli.format));
            }
            let c = load_cloud(cloud)?;
            let entries = match mode {
                Mode::Cech => cech_values(&c, cli.max_dim.unwrap_or(2))?,
                Mode::Alpha => alpha_values_2d(&c)?,
            };
            pretty(&barcode_from_entries(&entries).without_short_bars(cli.tol).to_json())
        }
        Cmd::Verify { suite, input, k, samples, no_timing } => {
            if cli.format != Format::Json {
                return Err(unsupported("verify", cli.format));
            }
            let mut report = run_verify(cli, *suite, input, *k, *samples)?;
            if *no_timing {
                report = report.without_timing();
            }
            return Ok((format!("{}\n", serde_json::to_string_pretty(&report)?), report.passed()));
        }
    };
    Ok((text, true))
}

fn exit_code(e: &NerveError) -> u8 {
    match e {
        NerveError::Schema(_) | NerveError::Json(_) => 2,
        NerveError::ResourceLimit { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("NERVELAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(p) => fs::write(p, text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
