use albert::bargmann::{self, BargmannParams, McEstimate};
use albert::suites::{run_suite, SuiteConfig, SUITES};
use albert::{embedding, harmonic, sample, volume, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "albert",
    version,
    about = "Verification suites for the exceptional Jordan algebra and the Cayley plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Point {
    A1,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: Option<String>,
        /// Sample count for every randomized case.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, env = "ALBERT_SEED")]
        seed: Option<u64>,
        /// Tolerance for every floating-point case.
        #[arg(long)]
        tol: Option<f64>,
        /// Largest degree for exact harmonic elimination.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// JSON config file; flags take precedence over its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Also write the JSON report to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dimensions of P_k, I_k, H_k and the Poincaré series identity.
    Dims {
        #[arg(long, default_value_t = 10)]
        max_k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Table of the transform constants b_k, a_k, N(k)² and the ε regime.
    Bargmann {
        #[arg(long, default_value_t = bargmann::EPS_ISO, allow_hyphen_values = true)]
        epsilon: f64,
        #[arg(long, default_value_t = 20)]
        max_k: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Monte-Carlo estimate of the diagonal fiber integral against its closed form.
    BargmannMc {
        #[arg(long, default_value_t = 0)]
        k: u64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, env = "ALBERT_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Volume and pairing constants at a point of the cone.
    Constants {
        #[arg(long, value_enum, default_value_t = Point::A1)]
        point: Point,
        #[arg(long, env = "ALBERT_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The L/Δ/Γ identity table on the trace forms, computed exactly.
    Operators {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Config file layout: the suite config plus the output format.
#[derive(Default, Deserialize)]
#[serde(default)]
struct FileConfig {
    #[serde(flatten)]
    suite: SuiteConfig,
    format: Option<Format>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value serializes"));
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Verify { suite, samples, seed, tol, cap, format, config, output } => {
            let mut file = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
                    serde_json::from_str::<FileConfig>(&text)
                        .map_err(|e| Failure::Usage(format!("malformed config {}: {e}", path.display())))?
                }
                None => FileConfig::default(),
            };
            let cfg = &mut file.suite;
            if let Some(s) = suite {
                cfg.suite = s;
            }
            if samples.is_some() {
                cfg.samples = samples;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if tol.is_some() {
                cfg.tol = tol;
            }
            if let Some(c) = cap {
                cfg.cap = c;
            }
            let report = run_suite(cfg)?;
            match format.or(file.format).unwrap_or_default() {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            if let Some(path) = output {
                std::fs::write(&path, report.to_json())
                    .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(report.exit_code() as u8)
        }
        Command::Dims { max_k, format } => {
            let series = harmonic::poincare_series(max_k.max(1))?;
            let holds = series.identity_holds();
            let rows: Vec<_> = (0..=max_k)
                .map(|k| (k, series.pp[k].to_string(), series.pi[k].to_string(), series.ph[k].to_string()))
                .collect();
            match format {
                Format::Json => print_json(&json!({
                    "rows": rows.iter().map(|(k, p, i, h)| json!({"k": k, "dim_p": p, "dim_i": i, "dim_h": h})).collect::<Vec<_>>(),
                    "poincare_identity": holds,
                })),
                Format::Text => {
                    let w = rows.iter().map(|r| r.1.len()).max().unwrap_or(1).max(5);
                    println!("{:>4}  {:>w$}  {:>5}  {:>w$}", "k", "dim_P", "dim_I", "dim_H");
                    for (k, p, i, h) in &rows {
                        println!("{k:>4}  {p:>w$}  {i:>5}  {h:>w$}");
                    }
                    println!("PP = PH·PI through t^{}: {}", max_k.max(1), if holds { "holds" } else { "FAILS" });
                }
            }
            Ok(if holds { 0 } else { 1 })
        }
        Command::Bargmann { epsilon, max_k, format } => {
            let records = (0..=max_k)
                .map(|k| bargmann::constants(&BargmannParams { k, epsilon }))
                .collect::<albert::Result<Vec<_>>>()?;
            match format {
                Format::Json => print_json(&json!({
                    "epsilon": epsilon,
                    "regime": bargmann::regime(epsilon).as_str(),
                    "rows": records,
                })),
                Format::Text => {
                    println!("epsilon {epsilon}  regime {}", bargmann::regime(epsilon));
                    println!("{:>5}  {:>14}  {:>14}  {:>14}", "k", "log b_k", "log a_k", "log N(k)^2");
                    for r in &records {
                        println!("{:>5}  {:>14.8}  {:>14.8}  {:>14.8}", r.k, r.log_bk, r.log_ak, r.log_n2);
                    }
                }
            }
            Ok(0)
        }
        Command::BargmannMc { k, samples, seed, format } => {
            let est: McEstimate = bargmann::bargmann_diagonal_mc(k, samples, seed)?;
            let within = (est.ratio - 1.0).abs() <= 0.02;
            match format {
                Format::Json => print_json(&json!({"estimate": est, "within_2_percent": within})),
                Format::Text => {
                    println!("k {}  samples {}  seed {}", est.k, est.samples, est.seed);
                    println!("estimate     {:.10e}", est.estimate);
                    println!("closed form  {:.10e}", est.closed_form);
                    println!(
                        "ratio        {:.6}  ± {:.6}  (95% CI [{:.6}, {:.6}])",
                        est.ratio, est.std_err, est.ci95.0, est.ci95.1
                    );
                }
            }
            Ok(if within { 0 } else { 1 })
        }
        Command::Constants { point, seed, format } => {
            let qp = match point {
                Point::A1 => embedding::x1_state(std::f64::consts::SQRT_2),
                Point::Random => sample::rand_state(&mut sample::shard_rng(seed, 0)),
            };
            let a = embedding::embed_state(&qp)?;
            let (t1, t2, t3) = a.trace_forms();
            let vol = volume::omega_liouville_ratio(&qp)?;
            let pair = volume::riemann_pairing_constant(&qp)?;
            let v = json!({
                "point": format!("{point:?}").to_lowercase(),
                "norm_a": vol.norm_a,
                "null_residual": embedding::null_residual(&a),
                "trace_forms": [[t1.re, t1.im], [t2.re, t2.im], [t3.re, t3.im]],
                "g0": embedding::g0_weight(&a),
                "omega_liouville_ratio": vol.ratio,
                "c1": vol.c1,
                "log2_c1": vol.c1.log2(),
                "pairing_constant": {"re": pair.constant.re, "im": pair.constant.im, "abs": pair.constant.norm(), "arg": pair.constant.arg()},
            });
            match format {
                Format::Json => print_json(&v),
                Format::Text => {
                    println!("point                     {}", v["point"].as_str().unwrap_or_default());
                    println!("‖A‖                       {:.12}", vol.norm_a);
                    println!("A² residual               {:.3e}", embedding::null_residual(&a));
                    println!(
                        "|T1|, |T2|, |T3|          {:.3e}, {:.3e}, {:.3e}",
                        t1.norm_sqr().sqrt(),
                        t2.norm_sqr().sqrt(),
                        t3.norm_sqr().sqrt()
                    );
                    println!("g0                        {:.12e}", embedding::g0_weight(&a));
                    println!("(Ω∧Ω̄)/Liouville           {:.12e}", vol.ratio);
                    println!("C1 = ratio/‖A‖^14         {:.12e}  (log2 {:.9})", vol.c1, vol.c1.log2());
                    println!(
                        "pairing constant c        {:+.9e} {:+.9e}i  |c| {:.9e}  arg {:+.6}",
                        pair.constant.re,
                        pair.constant.im,
                        pair.constant.norm(),
                        pair.constant.arg()
                    );
                }
            }
            Ok(0)
        }
        Command::Operators { format } => {
            let rows = harmonic::operator_identities();
            let all = rows.iter().all(|r| r.holds || r.reported);
            match format {
                Format::Json => print_json(&json!({
                    "rows": rows.iter().map(|r| json!({"identity": r.name, "holds": r.holds, "reported": r.reported, "measured": r.measured, "expected": r.expected})).collect::<Vec<_>>(),
                    "gamma_t3": albert::scalar::q_to_string(&harmonic::gamma_t3()),
                })),
                Format::Text => {
                    let w = rows.iter().map(|r| r.name.chars().count()).max().unwrap_or(0);
                    for r in &rows {
                        let pad = w - r.name.chars().count();
                        println!(
                            "{}{}  {:<8}  measured {}  expected {}",
                            r.name,
                            " ".repeat(pad),
                            if r.holds {
                                "ok"
                            } else if r.reported {
                                "REPORTED"
                            } else {
                                "DIFF"
                            },
                            r.measured,
                            r.expected
                        );
                    }
                }
            }
            Ok(if all { 0 } else { 1 })
        }
    }
}
