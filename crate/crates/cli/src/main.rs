//! `combideal`: Gröbner bases and membership certificates for minority and
//! dual-discriminator constraint instances.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use combideal::buchberger::{GroebnerBasis, Limits};
use combideal::csp::{parse_instance, CspError, CspInstance, Tag};
use combideal::dualdisc::combined_basis;
use combideal::imp::{query, Certificate};
use combideal::minority::{lex_basis, truncated_basis, DEFAULT_EXPAND_THRESHOLD};
use combideal::oracle::{check_basis, OracleError, Report};
use combideal::random::{random_dualdisc_instance, random_gf2_instance, seeded};
use combideal::poly::parse_polynomial;
use combideal::{MonomialOrder, OrderKind, Polynomial};
use rand::Rng;

#[derive(Parser)]
#[command(name = "combideal", version, about = "Gröbner bases and ideal membership for combinatorial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a Gröbner basis of the instance's ideal.
    Basis(BasisArgs),
    /// Decide whether a polynomial lies in the ideal.
    Member(MemberArgs),
    /// Like `member`, but always write a certificate.
    Prove(MemberArgs),
    /// Check a certificate file on its own.
    Verify(VerifyArgs),
    /// Cross-check computed bases against plain Buchberger and enumeration.
    OracleCheck(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pipeline {
    Auto,
    Minority,
    Dualdisc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Instance file.
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pipeline: Pipeline,
    /// Degree bound; required by the minority pipeline under grlex.
    #[arg(long)]
    d: Option<u32>,
    /// Monomial order: grlex, or lex (minority pipeline only).
    #[arg(long, default_value = "grlex")]
    order: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct BasisArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct MemberArgs {
    #[command(flatten)]
    common: Common,
    /// Query polynomial, inline or `@path`.
    #[arg(long)]
    poly: String,
    /// Write a certificate here.
    #[arg(long)]
    proof: Option<PathBuf>,
    /// Check an existing certificate for the same query.
    #[arg(long)]
    verify: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Certificate file.
    #[arg(long)]
    proof: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    /// Check one instance; without it a seeded random batch is checked.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Candidate basis file (one polynomial per line) to check instead of
    /// computing one.
    #[arg(long)]
    basis: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pipeline: Pipeline,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    count: u64,
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// XOR rows per random minority instance.
    #[arg(long, default_value_t = 3)]
    rows: usize,
    /// Domain size for random dual-discriminator instances.
    #[arg(long, default_value_t = 3)]
    domain_size: usize,
    /// Reduction budget for the reference Buchberger run.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Failure with its exit code: 1 negative result, 2 usage or input, 3 internal.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn internal(message: impl Into<String>) -> Failure {
    Failure { code: 3, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Basis(a) => cmd_basis(&a),
        Command::Member(a) => cmd_member(&a, false),
        Command::Prove(a) => cmd_member(&a, true),
        Command::Verify(a) => cmd_verify(&a),
        Command::OracleCheck(a) => cmd_oracle_check(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("combideal: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<CspInstance, Failure> {
    parse_instance(&read(path)?).map_err(|e| match e {
        CspError::Parse(p) => usage(format!("{}:{}:{}: {}", path.display(), p.line, p.column, p.message)),
        other => usage(format!("{}: {other}", path.display())),
    })
}

fn resolve_pipeline(p: Pipeline, inst: &CspInstance) -> Result<Pipeline, Failure> {
    let tags = inst.tags();
    let xor = tags.contains(&Tag::Xor);
    let binary = tags.iter().any(|t| matches!(t, Tag::Perm | Tag::Complete | Tag::TwoFan));
    let relation = tags.contains(&Tag::Relation);
    let picked = match p {
        Pipeline::Auto => {
            if relation || (xor && binary) {
                return Err(usage("instance mixes constraint kinds; no pipeline applies"));
            }
            if xor || (!binary && inst.is_boolean()) {
                Pipeline::Minority
            } else {
                Pipeline::Dualdisc
            }
        }
        other => other,
    };
    match picked {
        Pipeline::Minority if inst.xors().is_none() => Err(usage("minority pipeline needs xor constraints only")),
        Pipeline::Dualdisc if xor || relation => {
            Err(usage("dualdisc pipeline needs permutation, complete and two-fan constraints only"))
        }
        _ => Ok(picked),
    }
}

fn parse_order(s: &str) -> Result<OrderKind, Failure> {
    s.parse::<OrderKind>().map_err(|e| usage(e.to_string()))
}

/// Computes the basis the command works against.
fn compute_basis(inst: &CspInstance, pipeline: Pipeline, order: OrderKind, d: Option<u32>) -> Result<GroebnerBasis, Failure> {
    match (pipeline, order) {
        (Pipeline::Minority, OrderKind::Grlex) => {
            let d = d.ok_or_else(|| usage("the minority pipeline under grlex needs --d"))?;
            if d == 0 {
                return Err(usage("--d must be at least 1"));
            }
            let xors = inst.xors().expect("pipeline checked");
            truncated_basis(&xors, inst.nvars(), d).map_err(|e| internal(e.to_string()))
        }
        (Pipeline::Minority, OrderKind::Lex) => {
            let xors = inst.xors().expect("pipeline checked");
            let threshold = DEFAULT_EXPAND_THRESHOLD.max(inst.nvars());
            lex_basis(&xors, inst.nvars(), threshold).map_err(|e| internal(e.to_string()))
        }
        (Pipeline::Dualdisc, OrderKind::Grlex) => {
            let gb = combined_basis(inst).map_err(|e| internal(e.to_string()))?;
            Ok(match d {
                Some(0) => return Err(usage("--d must be at least 1")),
                Some(d) => gb.truncate(d),
                None => gb,
            })
        }
        (Pipeline::Dualdisc, OrderKind::Lex) => Err(usage("the dualdisc pipeline computes grlex bases only")),
        (Pipeline::Auto, _) => unreachable!("pipeline resolved"),
    }
}

fn pipeline_name(p: Pipeline) -> &'static str {
    match p {
        Pipeline::Minority => "minority",
        Pipeline::Dualdisc => "dualdisc",
        Pipeline::Auto => "auto",
    }
}

fn cmd_basis(a: &BasisArgs) -> Outcome {
    let c = &a.common;
    let inst = load_instance(&c.instance)?;
    let pipeline = resolve_pipeline(c.pipeline, &inst)?;
    let gb = compute_basis(&inst, pipeline, parse_order(&c.order)?, c.d)?;
    match c.format {
        Format::Text => print!("{gb}"),
        Format::Json => {
            let doc = serde_json::json!({
                "pipeline": pipeline_name(pipeline),
                "order": gb.order().to_string(),
                "nvars": inst.nvars(),
                "truncation": gb.truncation(),
                "basis": gb.elements().iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(if gb.is_unit() { 1 } else { 0 })
}

fn load_poly(arg: &str, nvars: usize) -> Result<Polynomial, Failure> {
    let (text, origin) = match arg.strip_prefix('@') {
        Some(path) => (read(Path::new(path))?, path.to_string()),
        None => (arg.to_string(), "--poly".to_string()),
    };
    parse_polynomial(text.trim(), Some(nvars))
        .map_err(|e| usage(format!("{origin}:{}:{}: {}", e.line, e.column, e.message)))
}

fn cmd_member(a: &MemberArgs, require_proof: bool) -> Outcome {
    let c = &a.common;
    if require_proof && a.proof.is_none() {
        return Err(usage("prove needs --proof PATH"));
    }
    let inst = load_instance(&c.instance)?;
    let pipeline = resolve_pipeline(c.pipeline, &inst)?;
    let f = load_poly(&a.poly, inst.nvars())?;
    let order = parse_order(&c.order)?;
    let d = c.d.unwrap_or(f.degree().max(1));
    if f.degree() > d {
        return Err(usage(format!("query has degree {} but --d is {d}", f.degree())));
    }
    let gb = compute_basis(&inst, pipeline, order, (order == OrderKind::Grlex).then_some(d))?;
    let (member, proof) = query(&f, &gb, d).map_err(|e| usage(e.to_string()))?;
    let cert = Certificate::new(&f, &proof, &gb).map_err(|e| internal(e.to_string()))?;
    if let Some(path) = &a.proof {
        fs::write(path, cert.to_json()).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    let mut code = 0;
    match c.format {
        Format::Text => {
            println!("{}", if member { "MEMBER" } else { "NOT MEMBER" });
            if !member {
                println!("remainder: {}", proof.remainder);
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "member": member,
                "remainder": proof.remainder.to_string(),
                "degree_bound": d,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    if let Some(path) = &a.verify {
        let other = load_certificate(path)?;
        let ok = other.query == f && other.verify().map_err(|e| usage(e.to_string()))?;
        println!("{}", if ok { "VALID" } else { "INVALID" });
        if !ok {
            code = 1;
        }
    }
    Ok(code)
}

fn load_certificate(path: &Path) -> Result<Certificate, Failure> {
    Certificate::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let cert = load_certificate(&a.proof)?;
    let ok = cert.verify().map_err(|e| usage(e.to_string()))?;
    match a.format {
        Format::Text => println!("{}", if ok { "VALID" } else { "INVALID" }),
        Format::Json => {
            let doc = serde_json::json!({ "valid": ok, "member": cert.proof.is_member() });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn load_basis(path: &Path, nvars: usize, d: Option<u32>) -> Result<GroebnerBasis, Failure> {
    let text = read(path)?;
    let mut elements = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f = parse_polynomial(line, Some(nvars))
            .map_err(|e| usage(format!("{}:{}:{}: {}", path.display(), k + 1, e.column, e.message)))?;
        elements.push(f);
    }
    Ok(GroebnerBasis::new(elements, MonomialOrder::grlex(), false).with_truncation(d))
}

fn oracle_failure(e: OracleError) -> Failure {
    internal(e.to_string())
}

fn cmd_oracle_check(a: &OracleArgs) -> Outcome {
    let limits = Limits { max_steps: a.budget };
    let mut reports: Vec<(String, Report)> = Vec::new();
    if let Some(path) = &a.instance {
        let inst = load_instance(path)?;
        let pipeline = resolve_pipeline(a.pipeline, &inst)?;
        let d = match (pipeline, a.d) {
            (Pipeline::Minority, None) => Some(2),
            (_, d) => d,
        };
        let gb = match &a.basis {
            Some(b) => load_basis(b, inst.nvars(), d)?,
            None => compute_basis(&inst, pipeline, OrderKind::Grlex, d)?,
        };
        let report = check_basis(&inst, &gb, &limits).map_err(oracle_failure)?;
        reports.push((path.display().to_string(), report));
    } else {
        if a.basis.is_some() {
            return Err(usage("--basis needs --instance"));
        }
        let pipeline = match a.pipeline {
            Pipeline::Auto => Pipeline::Minority,
            p => p,
        };
        if a.max_n < 2 {
            return Err(usage("--max-n must be at least 2"));
        }
        if pipeline == Pipeline::Dualdisc && !(2..=6).contains(&a.domain_size) {
            return Err(usage("--domain-size must be between 2 and 6"));
        }
        for k in 0..a.count {
            let seed = a.seed + k;
            let mut rng = seeded(seed);
            let n = rng.gen_range(2..=a.max_n);
            let inst = match pipeline {
                Pipeline::Minority => random_gf2_instance(&mut rng, n, a.rows),
                _ => {
                    let m = rng.gen_range(1..=2 * n);
                    let planted = rng.gen_bool(0.7);
                    random_dualdisc_instance(&mut rng, n, a.domain_size, m, planted)
                }
            };
            let d = match pipeline {
                Pipeline::Minority => Some(a.d.unwrap_or(2)),
                _ => a.d,
            };
            let gb = compute_basis(&inst, pipeline, OrderKind::Grlex, d)?;
            let report = check_basis(&inst, &gb, &limits).map_err(oracle_failure)?;
            reports.push((format!("seed {seed} (n={n})"), report));
        }
    }
    let all = reports.iter().all(|(_, r)| r.passed());
    match a.format {
        Format::Text => {
            for (name, r) in &reports {
                println!("== {name}");
                print!("{r}");
            }
            println!("{}", if all { "ALL PASS" } else { "MISMATCH" });
        }
        Format::Json => {
            let doc: Vec<_> = reports
                .iter()
                .map(|(name, r)| {
                    let checks: serde_json::Map<String, serde_json::Value> =
                        r.checks.iter().map(|(c, ok)| (c.clone(), (*ok).into())).collect();
                    serde_json::json!({ "case": name, "checks": checks, "passed": r.passed() })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(if all { 0 } else { 1 })
}
