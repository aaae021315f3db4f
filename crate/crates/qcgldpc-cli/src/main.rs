use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qcgldpc::analysis::{distance_report, girth, girth_qc, is_codeword, weight, DEFAULT_BUDGET};
use qcgldpc::channel::{encode, monte_carlo, results_csv, DecoderConfig, StopRule};
use qcgldpc::construct::{generator_case1, generator_general};
use qcgldpc::gldpc::{construct, construct_generator, expand_binary, GldpcSpec};
use qcgldpc::rank::rank_qc;
use qcgldpc::{corpus, BinaryPoly, Error, IndexSet, PolyMatrix, RingModulus};

#[derive(Parser)]
#[command(
    name = "qcgldpc",
    version,
    about = "QC-LDPC and QC-GLDPC construction and analysis"
)]
struct Cli {
    /// Upper bound on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct MatrixArgs {
    /// Polynomial matrix in .pmx format.
    #[arg(long)]
    matrix: PathBuf,
    /// Circulant size.
    #[arg(long = "N")]
    n: usize,
}

#[derive(clap::Args)]
struct SpecArgs {
    /// GLDPC spec as a JSON file, or the name of an embedded spec.
    #[arg(long)]
    spec: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Alist,
    Pmx,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Rank and dimension of a QC matrix from its polynomial minors.
    Rank(MatrixArgs),
    /// Polynomial generator matrix of a QC-LDPC code.
    Construct {
        #[command(flatten)]
        m: MatrixArgs,
        /// One-based parity columns; without it the general synthesis picks them.
        #[arg(long, value_delimiter = ',')]
        parity: Option<Vec<usize>>,
    },
    /// Assemble, reduce and encode a GLDPC spec.
    Gldpc(SpecArgs),
    /// Tanner-graph girth of a QC matrix or a GLDPC spec.
    Girth {
        #[arg(long, conflicts_with = "spec", requires = "n")]
        matrix: Option<PathBuf>,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "matrix")]
        spec: Option<String>,
    },
    /// Minimum-distance bounds from the generator of a GLDPC spec.
    Distance {
        #[command(flatten)]
        s: SpecArgs,
        #[arg(long, default_value_t = 10_000)]
        iterations: usize,
        /// Enumeration budget for exact search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Encode a message given as one polynomial per generator row, or a random one.
    Encode {
        #[command(flatten)]
        s: SpecArgs,
        /// Message polynomials separated by ';', e.g. "1+x^3;0;x".
        #[arg(long, conflicts_with = "seed")]
        message: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Monte Carlo BPSK/AWGN simulation; writes CSV.
    Simulate {
        #[command(flatten)]
        s: SpecArgs,
        /// Es/N0 points in dB.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        snr: Vec<f64>,
        #[arg(long, default_value_t = 50)]
        min_errors: u64,
        #[arg(long, default_value_t = 10_000)]
        max_trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Decoder configuration as JSON.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        max_iterations: Option<usize>,
    },
    /// Write the binary parity-check matrix or the polynomial base.
    Export {
        #[command(flatten)]
        s: SpecArgs,
        #[arg(long, value_enum, default_value = "alist")]
        format: Format,
    },
    /// Check the embedded examples.
    Selftest,
}

fn read(path: &Path) -> qcgldpc::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path, n: usize) -> qcgldpc::Result<PolyMatrix> {
    PolyMatrix::from_pmx(&read(path)?, Some(RingModulus::new(n)?))
}

fn load_spec(arg: &str) -> qcgldpc::Result<GldpcSpec> {
    let path = Path::new(arg);
    if path.exists() {
        GldpcSpec::from_json(&read(path)?)
    } else {
        corpus::spec(arg)
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> qcgldpc::Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn bit_string(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

/// Returns the text to emit and whether the command succeeded.
fn run(command: Command) -> qcgldpc::Result<(String, bool)> {
    let out = match command {
        Command::Rank(a) => {
            let h = load_matrix(&a.matrix, a.n)?;
            pretty(&rank_qc(&h, RingModulus::new(a.n)?)?)?
        }
        Command::Construct { m, parity } => {
            let h = load_matrix(&m.matrix, m.n)?;
            let g = match parity {
                Some(cols) => generator_case1(&h, &IndexSet::from_one_based(&cols)?)?,
                None => generator_general(&h)?,
            };
            pretty(&g)?
        }
        Command::Gldpc(a) => {
            let spec = load_spec(&a.spec)?;
            let c = construct(&spec)?;
            let rate = spec.design_rate();
            pretty(&json!({
                "length": spec.length(),
                "design_rate": format!("{}/{}", rate.numer(), rate.denom()),
                "dimension": c.generator.rank,
                "complete": c.generator.complete,
                "H_GC": c.h_gc,
                "H_short": c.innermost(),
                "generator": c.generator,
            }))?
        }
        Command::Girth { matrix, n, spec } => {
            let g = match (matrix, spec) {
                (Some(path), _) => girth_qc(&load_matrix(&path, n.expect("clap requires --N"))?)?,
                (None, Some(s)) => girth(&expand_binary(&load_spec(&s)?)?),
                (None, None) => unreachable!("clap requires one input"),
            };
            pretty(&json!({ "girth": g }))?
        }
        Command::Distance {
            s,
            iterations,
            budget,
            seed,
        } => {
            let spec = load_spec(&s.spec)?;
            let g = construct_generator(&spec)?.g.circulant_expand()?;
            pretty(&distance_report(&g, budget, iterations, seed))?
        }
        Command::Encode { s, message, seed } => {
            let spec = load_spec(&s.spec)?;
            let g = construct_generator(&spec)?.g;
            let m = g.modulus().ok_or(Error::ModulusMissing)?;
            let msg: Vec<BinaryPoly> = match message {
                Some(text) => text
                    .split(';')
                    .map(|p| p.trim().parse::<BinaryPoly>().map(|p| m.reduce(&p)))
                    .collect::<Result<_, _>>()?,
                None => {
                    use rand::{Rng, SeedableRng};
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
                    (0..g.rows())
                        .map(|_| {
                            BinaryPoly::from_exponents((0..m.n()).filter(|_| rng.gen_bool(0.5)))
                        })
                        .collect()
                }
            };
            let cw = encode(&g, &msg)?;
            let syndrome_ok = is_codeword(&expand_binary(&spec)?, &cw)?;
            pretty(&json!({
                "message": msg.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "codeword": bit_string(&cw),
                "weight": weight(&cw),
                "zero_syndrome": syndrome_ok,
            }))?
        }
        Command::Simulate {
            s,
            snr,
            min_errors,
            max_trials,
            seed,
            config,
            max_iterations,
        } => {
            let spec = load_spec(&s.spec)?;
            let mut cfg = match config {
                Some(p) => {
                    serde_json::from_str(&read(&p)?).map_err(|e| Error::Parse(e.to_string()))?
                }
                None => DecoderConfig::default(),
            };
            if let Some(it) = max_iterations {
                cfg.max_iterations = it;
            }
            let g = construct_generator(&spec)?;
            let stop = StopRule {
                min_block_errors: min_errors,
                max_trials,
            };
            let results = monte_carlo(&spec, &g.g, &snr, stop, seed, &cfg)?;
            results_csv(&results, spec.length())
        }
        Command::Export { s, format } => {
            let spec = load_spec(&s.spec)?;
            match format {
                Format::Alist => expand_binary(&spec)?.to_alist(),
                Format::Pmx => spec.base.to_pmx(),
                Format::Json => spec.to_json()?,
            }
        }
        Command::Selftest => {
            let checks = corpus::selftest();
            let mut text = String::new();
            for c in &checks {
                text += &format!(
                    "{:<4}  {:<32}  {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            let ok = checks.iter().all(|c| c.passed);
            return Ok((text, ok));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok((text, ok)) => {
            let text = if text.ends_with('\n') {
                text
            } else {
                text + "\n"
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
