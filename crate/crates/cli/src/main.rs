mod battery;
mod corpus;
mod output;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hadakern::generators::{gen_named_example, gen_toeplitz_tridiag, NAMED_EXAMPLES};
use hadakern::io::{matrix_to_json, parse_matrix, AnyMatrix, JsonScalar, ReadOptions};
use hadakern::kernels::{
    distinct_diagonal_check, ker_block_ones, positive_combination_kernel, rectangular_simultaneous_kernel,
    simultaneous_kernel, verify_t3pmp,
};
use hadakern::matrix::signature;
use hadakern::pmp::{check_pmp_signature, is_k_pmp, is_k_psrp, pmp_order_with_witness};
use hadakern::strata::{
    hns_decompose, identical_index_partition, pi_min, pi_stratum, rank_one_certificates, GroupSpec, Partition,
};
use hadakern::{Domain, Field, HermitianMatrix, Matrix, PrimeModulus, Rational, StarField, Tolerance};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::battery::{any_failed, battery};
use crate::output::{render, to_value, write_output, Failure, Format, Outcome};

/// Exact analysis of Hermitian matrices: principal-minor positivity,
/// partition stratification and simultaneous kernels of Hadamard powers.
#[derive(Parser, Debug)]
#[command(name = "hadakern", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Arithmetic domain: rational, gaussian-rational, gf, float.
    #[arg(long, global = true)]
    domain: Option<Domain>,
    /// Prime modulus for the gf domain.
    #[arg(long, global = true)]
    modulus: Option<u64>,
    /// trivial | roots:<k> | circle | nonzero | cyclic:<g>
    #[arg(long, global = true, default_value = "trivial")]
    group: String,
    /// Zero threshold for the float domain.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

/// Matrix inputs are a file path, `-` or nothing for stdin, or one of the
/// built-in names `T<N>`, `example5x5`, `pmp2-6x6`, `hns-fail-3x3`,
/// `pow2-psd`.
#[derive(Subcommand, Debug)]
enum Command {
    /// Order, signature, partitions, stratum certificates and kernel.
    Analyze { input: Option<String> },
    /// k-PMP test or the largest such k.
    Pmp {
        input: Option<String>,
        #[arg(long, conflicts_with = "order", required_unless_present = "order")]
        k: Option<usize>,
        #[arg(long)]
        order: bool,
    },
    /// k-PSRP test.
    Psrp {
        input: Option<String>,
        #[arg(long)]
        k: usize,
    },
    /// pi_min, the stratification partition and its certificates.
    Partition { input: Option<String> },
    /// Kernel of the Hadamard powers, or a related space selected by flag.
    Kernel {
        input: Option<String>,
        #[command(flatten)]
        mode: KernelMode,
        /// Partition for --block-ones, e.g. `1,2|3`; defaults to identical indices.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Run the theorem battery on one matrix or a seeded corpus.
    Verify {
        input: Option<String>,
        /// Seed range such as `1..100` (inclusive).
        #[arg(long, conflicts_with = "input")]
        corpus: Option<String>,
    },
    /// Build a matrix family member; parameters as `key=value,...`.
    Generate {
        family: String,
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Decompose a 3-PMP matrix with entries of modulus 0 or 1.
    Hns { input: Option<String> },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct KernelMode {
    #[arg(long)]
    simultaneous: bool,
    #[arg(long)]
    block_ones: bool,
    /// Positive coefficients c_0,...,c_{N-1}.
    #[arg(long, value_delimiter = ',')]
    combination: Option<Vec<String>>,
    #[arg(long)]
    rectangular: bool,
    #[arg(long)]
    distinct_diagonal: bool,
    /// All four kernel descriptions and their equality table.
    #[arg(long)]
    t3pmp: bool,
}

struct Env {
    opts: ReadOptions,
    group: GroupSpec,
}

type CmdResult = Result<Outcome, Failure>;

macro_rules! ordered {
    ($any:expr, |$m:ident| $body:expr) => {
        match $any {
            AnyMatrix::Rational($m) => $body,
            AnyMatrix::Gaussian($m) => $body,
            AnyMatrix::Float($m) => $body,
            AnyMatrix::Gf(_) => Err(Failure::Input(
                "this command needs an ordered domain: rational, gaussian-rational or float".into(),
            )),
        }
    };
}

macro_rules! any_field {
    ($any:expr, |$m:ident| $body:expr) => {
        match $any {
            AnyMatrix::Rational($m) => $body,
            AnyMatrix::Gaussian($m) => $body,
            AnyMatrix::Float($m) => $body,
            AnyMatrix::Gf($m) => $body,
        }
    };
}

fn builtin(name: &str) -> Option<hadakern::Result<AnyMatrix>> {
    let g = if let Some(n) = name.strip_prefix('T').and_then(|n| n.parse().ok()) {
        gen_toeplitz_tridiag(n)
    } else if NAMED_EXAMPLES.contains(&name) {
        gen_named_example(name)
    } else {
        return None;
    };
    Some(g.map(|g| AnyMatrix::Gaussian(g.matrix.into_matrix())))
}

fn load(input: Option<&str>, env: &Env) -> Result<AnyMatrix, Failure> {
    let text = match input {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            s
        }
        Some(name) if !Path::new(name).exists() => {
            let m = builtin(name).ok_or_else(|| Failure::Input(format!("{name}: no such file or built-in matrix")))??;
            return Ok(match env.opts.domain {
                Some(d) => m.convert(d, &env.opts)?,
                None => m,
            });
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?,
    };
    Ok(parse_matrix(&text, &env.opts)?)
}

fn hermitian<F: Field>(m: Matrix<F>) -> Result<HermitianMatrix<F>, Failure> {
    Ok(HermitianMatrix::new(m)?)
}

fn analyze<F: StarField + JsonScalar>(a: &HermitianMatrix<F>, g: &GroupSpec) -> CmdResult {
    let (order, witness) = pmp_order_with_witness(a);
    let stratum = pi_stratum(a, g);
    let certificates = match &stratum {
        Ok(pi) => Some(rank_one_certificates(a, pi, g)),
        Err(_) => None,
    };
    let entries_unimodular = a.entries().iter().all(|z| {
        let m = z.modulus_squared();
        m.is_zero(a.ctx()) || m.eq_in(&F::one(a.ctx()), a.ctx())
    });
    let hns = match (entries_unimodular, &witness) {
        (false, _) => json!({"applicable": false, "reason": "entries not of modulus 0 or 1"}),
        (true, Some(w)) if order < 3.min(a.n()) => {
            json!({"applicable": false, "reason": format!("not 3-PMP, negative minor on {w}")})
        }
        (true, _) => match hns_decompose(a) {
            Ok(d) => json!({"applicable": true, "decomposition": to_value(&d)}),
            Err(e) => json!({"applicable": true, "error": e.to_string()}),
        },
    };
    let kernel = simultaneous_kernel(a.as_matrix());
    let report = json!({
        "n": a.n(),
        "domain": F::DOMAIN.name(),
        "group": g.to_string(),
        "pmp_order": order,
        "pmp_witness": witness,
        "signature": signature(a),
        "pmp_signature": check_pmp_signature(a).ok(),
        "identical_index_partition": identical_index_partition(a.as_matrix()),
        "pi_min": pi_min(a, g)?,
        "pi_stratum": match &stratum { Ok(p) => to_value(p), Err(e) => json!({"error": e.to_string()}) },
        "stratum_report": match certificates {
            Some(Ok(r)) => to_value(&r),
            Some(Err(e)) => json!({"error": e.to_string()}),
            None => Value::Null,
        },
        "simultaneous_kernel": to_value(&kernel),
        "hns": hns,
    });
    Ok(Outcome::one(report))
}

fn partition_cmd<F: StarField + JsonScalar>(a: &HermitianMatrix<F>, g: &GroupSpec) -> CmdResult {
    let mut report = json!({
        "group": g.to_string(),
        "pi_min": pi_min(a, g)?,
        "identical_index_partition": identical_index_partition(a.as_matrix()),
    });
    let stratum = pi_stratum(a, g).and_then(|pi| Ok((rank_one_certificates(a, &pi, g)?, pi)));
    let violated = match stratum {
        Ok((r, pi)) => {
            report["pi_stratum"] = to_value(&pi);
            report["stratum_report"] = to_value(&r);
            false
        }
        Err(e) => {
            let failure = Failure::from(e.clone());
            if let Failure::Input(m) = failure {
                return Err(Failure::Input(m));
            }
            report["pi_stratum"] = json!({"error": e.to_string()});
            true
        }
    };
    Ok(Outcome::one(report).violated_if(violated))
}

fn parse_partition(s: &str, n: usize) -> Result<Partition, Failure> {
    let blocks = s
        .split('|')
        .map(|b| b.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Input(format!("bad partition {s:?}; expected e.g. 1,2|3")))?;
    Ok(Partition::from_one_based(n, &blocks)?)
}

fn kernel_cmd(any: AnyMatrix, mode: &KernelMode, partition: Option<&str>) -> CmdResult {
    if mode.simultaneous {
        return any_field!(any, |m| Ok(Outcome::one(to_value(&simultaneous_kernel(&m)))));
    }
    if mode.rectangular {
        return any_field!(any, |m| Ok(Outcome::one(to_value(&rectangular_simultaneous_kernel(&m)))));
    }
    if mode.distinct_diagonal {
        return any_field!(any, |m| {
            let d = distinct_diagonal_check(hermitian_shape(&m)?)?;
            Ok(Outcome::one(to_value(&d)))
        });
    }
    if mode.block_ones {
        return any_field!(any, |m| {
            let m = hermitian_shape(&m)?;
            let pi = match partition {
                Some(s) => parse_partition(s, m.rows())?,
                None => identical_index_partition(m),
            };
            let k = block_ones_like(m, &pi);
            Ok(Outcome::one(json!({"partition": pi, "kernel": to_value(&k)})))
        });
    }
    if let Some(coeffs) = &mode.combination {
        let c = coeffs.iter().map(|s| s.parse()).collect::<hadakern::Result<Vec<Rational>>>()?;
        return ordered!(any, |m| {
            let a = hermitian(m)?;
            Ok(Outcome::one(to_value(&positive_combination_kernel(a.as_matrix(), &c)?)))
        });
    }
    ordered!(any, |m| {
        let a = hermitian(m)?;
        let r = verify_t3pmp(&a);
        let violated = r.three_pmp && !r.all_equal();
        Ok(Outcome::one(to_value(&r)).violated_if(violated))
    })
}

fn block_ones_like<F: Field>(m: &Matrix<F>, pi: &Partition) -> hadakern::KernelBasis<F> {
    ker_block_ones(pi, m.ctx().clone())
}

fn hermitian_shape<F: Field>(m: &Matrix<F>) -> Result<&Matrix<F>, Failure> {
    if m.is_square() {
        Ok(m)
    } else {
        Err(Failure::Input(format!("expected a square matrix, got {}x{}", m.rows(), m.cols())))
    }
}

fn verify_one<F: StarField + JsonScalar>(a: &HermitianMatrix<F>) -> CmdResult {
    let checks = battery(a);
    let failed = any_failed(&checks);
    let mut lines: Vec<Value> = checks.iter().map(to_value).collect();
    if failed {
        lines.push(json!({"witness_matrix": matrix_to_json(a.as_matrix(), None)}));
    }
    Ok(Outcome { lines, violated: failed })
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::Input(format!("bad seed range {s:?}; expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn verify_corpus(range: &str) -> CmdResult {
    let (lo, hi) = parse_range(range)?;
    let per_seed: Vec<Vec<Value>> = (lo..=hi)
        .into_par_iter()
        .map(|seed| {
            corpus::corpus_for_seed(seed)
                .into_iter()
                .map(|item| {
                    let mut line = json!({"seed": seed, "family": item.family, "params": item.params});
                    match item.generated {
                        Err(e) => {
                            line["status"] = json!("fail");
                            line["error"] = json!(e.to_string());
                        }
                        Ok(g) => {
                            let checks = battery(&g.matrix);
                            let failed = any_failed(&checks) || !g.certificate.passed();
                            line["status"] = json!(if failed { "fail" } else { "pass" });
                            line["checks"] = json!(checks.len());
                            if failed {
                                let bad: Vec<Value> = checks
                                    .iter()
                                    .filter(|c| c.status == battery::Status::Fail)
                                    .map(to_value)
                                    .chain(g.certificate.failures().map(to_value))
                                    .collect();
                                line["failures"] = Value::Array(bad);
                                line["witness_matrix"] = matrix_to_json(g.matrix.as_matrix(), None);
                            }
                        }
                    }
                    line
                })
                .collect()
        })
        .collect();
    let lines: Vec<Value> = per_seed.into_iter().flatten().collect();
    let failed = lines.iter().filter(|l| l["status"] == "fail").count();
    let summary = json!({"summary": {"seeds": format!("{lo}..{hi}"), "matrices": lines.len(), "failed": failed}});
    let mut all = lines;
    all.push(summary);
    Ok(Outcome { lines: all, violated: failed > 0 })
}

fn run(cli: &Cli) -> CmdResult {
    let modulus = cli.modulus.map(PrimeModulus::new).transpose()?;
    let tolerance = cli.tolerance.map(Tolerance::new);
    let env = Env {
        opts: ReadOptions { domain: cli.domain, modulus, tolerance },
        group: cli.group.parse()?,
    };
    match &cli.command {
        Command::Analyze { input } => ordered!(load(input.as_deref(), &env)?, |m| analyze(&hermitian(m)?, &env.group)),
        Command::Pmp { input, k, order } => ordered!(load(input.as_deref(), &env)?, |m| {
            let a = hermitian(m)?;
            if *order {
                let (order, witness) = pmp_order_with_witness(&a);
                Ok(Outcome::one(json!({
                    "pmp_order": order,
                    "witness": witness,
                    "signature": signature(&a),
                    "pmp_signature": check_pmp_signature(&a).ok(),
                })))
            } else {
                let v = is_k_pmp(&a, k.expect("clap requires --k"))?;
                let holds = v.holds;
                Ok(Outcome::one(to_value(&v)).violated_if(!holds))
            }
        }),
        Command::Psrp { input, k } => ordered!(load(input.as_deref(), &env)?, |m| {
            let v = is_k_psrp(&hermitian(m)?, *k)?;
            let holds = v.holds;
            Ok(Outcome::one(to_value(&v)).violated_if(!holds))
        }),
        Command::Partition { input } => {
            ordered!(load(input.as_deref(), &env)?, |m| partition_cmd(&hermitian(m)?, &env.group))
        }
        Command::Kernel { input, mode, partition } => kernel_cmd(load(input.as_deref(), &env)?, mode, partition.as_deref()),
        Command::Verify { input, corpus } => match corpus {
            Some(range) => verify_corpus(range),
            None => ordered!(load(input.as_deref(), &env)?, |m| verify_one(&hermitian(m)?)),
        },
        Command::Generate { family, params } => {
            let params = corpus::parse_params(params)?;
            let g = corpus::generate(family, &params, cli.seed)?;
            let passed = g.certificate.passed();
            let line = json!({
                "family": family,
                "params": params,
                "seed": cli.seed,
                "matrix": matrix_to_json(g.matrix.as_matrix(), None),
                "epsilon": g.epsilon,
                "certificate": to_value(&g.certificate),
            });
            Ok(Outcome::one(line).violated_if(!passed))
        }
        Command::Hns { input } => ordered!(load(input.as_deref(), &env)?, |m| {
            let d = hns_decompose(&hermitian(m)?)?;
            Ok(Outcome::one(to_value(&d)))
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = render(&outcome.lines, cli.format);
            if let Err(e) = write_output(&text, cli.out.as_deref()) {
                eprintln!("hadakern: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.violated { 1 } else { 0 })
        }
        Err(f) => {
            eprintln!("hadakern: {}", f.message());
            ExitCode::from(f.code() as u8)
        }
    }
}
