use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orlicz_core::geometry::{convexity_curve, lp_modulus, run_search, scenario};
use orlicz_core::hyperbolic::{cocycle, cocycle_norm, HyperbolicData};
use orlicz_core::io::{cocycle_json, element_json, fmt_num, parse_element, round_json, to_json};
use orlicz_core::mazur::{holder_certificate, mazur_map};
use orlicz_core::space::{gauge_norm, orlicz_norm};
use orlicz_core::verify::{CriterionReport, CRITERIA};
use orlicz_core::word::reduce;
use orlicz_core::young::{check_delta2, check_nabla2, k_class_indices, Regime};
use orlicz_core::{Error, Word, YoungFunction};

#[derive(Parser)]
#[command(name = "orlicz", version, about = "Orlicz spaces, Mazur maps and affine isometric actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Function,
    Sequence,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Function => Regime::Function,
            RegimeArg::Sequence => Regime::Sequence,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Gauge and Orlicz norms of a vector file.
    Norm {
        #[arg(long)]
        phi: YoungFunction,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// The complementary Young function, as a spec string.
    Conjugate {
        #[arg(long)]
        phi: YoungFunction,
    },
    /// Δ2 and ∇2 reports and K-class indices.
    Growth {
        #[arg(long)]
        phi: YoungFunction,
        #[arg(long, value_enum, default_value = "function")]
        regime: RegimeArg,
    },
    /// Applies the Mazur map `sign(f)·Ψ⁻¹(Φ(|f|))`.
    Mazur {
        #[arg(long)]
        phi: YoungFunction,
        #[arg(long)]
        psi: YoungFunction,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hölder certificate of the Mazur map between two spaces.
    Certificate {
        #[arg(long)]
        phi: YoungFunction,
        #[arg(long)]
        psi: YoungFunction,
    },
    /// Sampled modulus of convexity as CSV.
    Modulus {
        #[arg(long)]
        phi: YoungFunction,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Comma-separated values in (0, 2].
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fixed point of a bundled finite affine action.
    Fixedpoint {
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value_t = 1e-10, value_parser = parse_tol)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cocycle of the proper action of a free group.
    Cocycle {
        #[arg(long, default_value = "power:2")]
        phi: YoungFunction,
        #[arg(long, default_value = "power:4")]
        psi: YoungFunction,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 1)]
        delta: usize,
        /// Group element; `""` is the identity.
        #[arg(long, required_unless_present = "sweep")]
        g: Option<String>,
        #[arg(long)]
        norm_only: bool,
        /// `start:stop:step` lengths along the ray `a^n`, or along `--g` when given.
        #[arg(long, conflicts_with = "norm_only")]
        sweep: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs every acceptance check.
    VerifyAll {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated criterion numbers; all when absent.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t >= f64::EPSILON {
        Ok(t)
    } else {
        Err(format!("tolerance must be at least {:e}", f64::EPSILON))
    }
}

/// A run that produced output but found a violated check.
struct CheckFailure(String);

enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
    Check(CheckFailure),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::Parse(_) | Error::Domain(_) | Error::UnsupportedVariant { .. }) => Failure::Usage(e),
            _ if e.downcast_ref::<std::io::Error>().is_some() => Failure::Usage(e),
            _ => Failure::Runtime(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_word(s: &str) -> anyhow::Result<Word> {
    Ok(reduce(s)?)
}

fn parse_sweep(s: &str) -> anyhow::Result<(usize, usize, usize)> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts[..] else {
        bail!(Error::Parse(format!("sweep must be start:stop:step, got `{s}`")));
    };
    let num = |x: &str| x.parse::<usize>().map_err(|e| Error::Parse(format!("sweep `{s}`: {e}")));
    let (a, b, step) = (num(a)?, num(b)?, num(step)?);
    if step == 0 || a > b {
        bail!(Error::Parse(format!("sweep `{s}` needs start <= stop and step > 0")));
    }
    Ok((a, b, step))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Norm { phi, input } => {
            let f = parse_element(&read(&input)?)?;
            let v = json!({ "gauge": gauge_norm(&phi, &f), "orlicz": orlicz_norm(&phi, &f)? });
            emit(None, &round_json(v).to_string())?;
        }
        Command::Conjugate { phi } => emit(None, &phi.conjugate().to_string())?,
        Command::Growth { phi, regime } => {
            let regime = Regime::from(regime);
            let mut v = json!({
                "phi": phi.to_string(),
                "delta2": check_delta2(&phi, regime)?,
                "nabla2": check_nabla2(&phi, regime)?,
            });
            if let Ok(k) = k_class_indices(&phi) {
                v["k_class"] = serde_json::to_value(k).map_err(anyhow::Error::from)?;
            }
            emit(None, &round_json(v).to_string())?;
        }
        Command::Mazur { phi, psi, input, out } => {
            let f = parse_element(&read(&input)?)?;
            let g = mazur_map(&phi, &psi, &f)?;
            emit(out.as_deref(), &element_json(&g).to_string())?;
        }
        Command::Certificate { phi, psi } => {
            let cert = holder_certificate(&phi, &psi)?;
            emit(None, &to_json(&cert)?)?;
        }
        Command::Modulus { phi, dim, eps, samples, seed, out } => {
            let curve = convexity_curve(&phi, dim, &eps, samples, seed)?;
            let lower = |e: f64| match &phi {
                YoungFunction::Power(p) if *p >= 2.0 => lp_modulus(*p, e).ok(),
                YoungFunction::Interpolated { s, .. } => lp_modulus(2.0 / s, e).ok(),
                _ => None,
            };
            let mut csv = String::from("eps,estimate,bound,ok");
            for est in &curve {
                let bound = lower(est.epsilon);
                let ok = bound.map_or(true, |b| est.value >= b - 1e-6);
                let b = bound.map(fmt_num).unwrap_or_default();
                write!(csv, "\n{},{},{b},{ok}", fmt_num(est.epsilon), fmt_num(est.value)).expect("string write");
            }
            emit(out.as_deref(), &csv)?;
            if curve.iter().any(|e| lower(e.epsilon).is_some_and(|b| e.value < b - 1e-6)) {
                return Err(Failure::Check(CheckFailure("sampled modulus below the lower bound".into())));
            }
        }
        Command::Fixedpoint { scenario: name, tol, out } => {
            let sc = scenario(&name)?;
            let r = run_search(&sc.phi, &sc.action, &sc.x0, tol)?;
            let mut v = serde_json::to_value(&r).map_err(anyhow::Error::from)?;
            v["scenario"] = json!(name);
            v["tol"] = json!(tol);
            emit(out.as_deref(), &round_json(v).to_string())?;
            if !r.converged {
                return Err(Failure::Check(CheckFailure(format!(
                    "no convergence: residual {:e} after {} iterations",
                    r.residual, r.iterations
                ))));
            }
        }
        Command::Cocycle { phi, psi, rank, delta, g, norm_only, sweep, out } => {
            let data = HyperbolicData::new(&phi, rank, delta)?;
            let g = g.as_deref().map(parse_word).transpose()?;
            if let Some(g) = &g {
                if g.rank_used() > rank {
                    return Err(Error::Domain(format!("word `{g}` uses letters beyond rank {rank}")).into());
                }
            }
            if let Some(spec) = sweep {
                let (a, b, step) = parse_sweep(&spec)?;
                let ray = match &g {
                    Some(w) if w.len() >= b => w.clone(),
                    Some(w) => return Err(Error::Domain(format!("--g has length {} < {b}", w.len())).into()),
                    None => Word::power(1, b),
                };
                let mut csv = String::from("dist,word,support_size,norm,bound,upper,ok");
                let mut all_ok = true;
                for n in (a..=b).step_by(step) {
                    let r = cocycle_norm(&phi, &psi, &data, &ray.prefix(n))?;
                    all_ok &= r.ok;
                    let bound = r.bound.map(fmt_num).unwrap_or_default();
                    write!(
                        csv,
                        "\n{},{},{},{},{bound},{},{}",
                        r.dist,
                        r.word,
                        r.support_size,
                        fmt_num(r.norm),
                        fmt_num(r.upper),
                        r.ok
                    )
                    .expect("string write");
                }
                emit(out.as_deref(), &csv)?;
                if !all_ok {
                    return Err(Failure::Check(CheckFailure("a sweep row failed its bounds".into())));
                }
                return Ok(());
            }
            let g = g.expect("clap requires --g without --sweep");
            let r = cocycle_norm(&phi, &psi, &data, &g)?;
            let mut v = json!({
                "word": r.word,
                "dist": r.dist,
                "support_size": r.support_size,
                "norm": r.norm,
                "bound": r.bound,
                "upper": r.upper,
                "ok": r.ok,
            });
            if !norm_only {
                v["cocycle"] = cocycle_json(&cocycle(&phi, &psi, &data, &g)?);
            }
            emit(out.as_deref(), &round_json(v).to_string())?;
            if !r.ok {
                return Err(Failure::Check(CheckFailure(format!("cocycle bounds violated at {}", r.word))));
            }
        }
        Command::VerifyAll { seed, only } => {
            if let Some(bad) = only.iter().find(|&&i| i == 0 || i > CRITERIA.len()) {
                return Err(Failure::Usage(anyhow!("no criterion {bad}; expected 1..={}", CRITERIA.len())));
            }
            let reports: Vec<CriterionReport> = CRITERIA
                .iter()
                .enumerate()
                .filter(|(i, _)| only.is_empty() || only.contains(&(i + 1)))
                .map(|(_, run)| {
                    let r = run(seed);
                    eprintln!("{}", r.line());
                    r
                })
                .collect();
            let summary = |r: &CriterionReport| {
                json!({
                    "id": r.id,
                    "title": r.title,
                    "passed": r.passed,
                    "detail": r.detail,
                    "witness": r.witness,
                    "finding": r.finding,
                })
            };
            let failed: Vec<Value> = reports.iter().filter(|r| !r.passed).map(summary).collect();
            let v = json!({
                "seed": seed,
                "passed": failed.is_empty(),
                "checked": reports.len(),
                "failures": failed,
                "findings": reports.iter().filter(|r| r.finding.is_some()).map(summary).collect::<Vec<_>>(),
            });
            emit(None, &round_json(v).to_string())?;
            if !failed.is_empty() {
                return Err(Failure::Check(CheckFailure(format!("{} criteria failed", failed.len()))));
            }
        }
    }
    Ok(())
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("ORLICZ_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow!("ORLICZ_THREADS must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("orlicz: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("orlicz: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("orlicz: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Check(CheckFailure(msg))) => {
            eprintln!("orlicz: check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
