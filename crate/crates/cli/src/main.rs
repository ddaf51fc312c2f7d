use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use liesc::constructions::{
    abelian, catalog_with_seed, central_product, filiform_standard, heisenberg, CentralProductSpec,
    DEFAULT_CATALOG_SEED,
};
use liesc::decomposition::{decompose, verify_certificate, Case};
use liesc::format::{self, CertificateFile};
use liesc::frattinian::{is_frattinian, lemma_suite};
use liesc::maximal::enumerate_maximal;
use liesc::{Domain, Error, LieAlgebra, Subspace};

mod report;

use report::{error_record, Envelope};

#[derive(Parser)]
#[command(name = "liesc", version, about = "Exact computations with nilpotent Lie algebras")]
struct Cli {
    /// Print a JSON report envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write algebra files.
    #[command(subcommand)]
    Gen(Gen),
    /// Dimension, field, central series and center.
    Info { path: PathBuf },
    /// Maximal subalgebras.
    Maximal {
        path: PathBuf,
        #[arg(long)]
        list: bool,
    },
    #[command(subcommand)]
    Check(Check),
    /// Central-product decomposition with a verified certificate.
    Decompose {
        path: PathBuf,
        /// Write the certificate envelope here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Args)]
struct Output {
    /// F<p> or Q.
    #[arg(long, default_value = "F2")]
    field: String,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Subcommand)]
enum Gen {
    Abelian {
        #[arg(long, visible_alias = "dim")]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    Heisenberg {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: Output,
    },
    Filiform {
        #[arg(long, visible_alias = "n")]
        dim: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Central product identifying the centers of two algebras.
    CentralProduct {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Every catalog algebra of dimension <= dim, one file each, into a directory.
    Catalog {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = DEFAULT_CATALOG_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Exit 0 if Frattinian, 1 with a witness otherwise.
    Frattinian { path: PathBuf },
}

#[derive(Subcommand)]
enum Verify {
    /// Audit and decomposition round-trips over the catalog.
    Suite {
        #[arg(long)]
        field: String,
        #[arg(long)]
        max_dim: usize,
        #[arg(long, default_value_t = DEFAULT_CATALOG_SEED)]
        seed: u64,
    },
    /// Re-check a certificate against an algebra.
    Certificate { algebra: PathBuf, certificate: PathBuf },
}

/// Result of a command: exit code, text for humans, JSON payload.
struct Outcome {
    code: u8,
    text: String,
    result: Value,
    input: Vec<u8>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let name = command_name(&cli.command);
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                print!("{}", Envelope::new(&out.input, &name, out.result, start.elapsed()).to_pretty());
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("{}", error_record(&e));
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InternalAssertionFailed(_) => 1,
        _ => 2,
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Gen(g) => match g {
            Gen::Abelian { .. } => "gen abelian",
            Gen::Heisenberg { .. } => "gen heisenberg",
            Gen::Filiform { .. } => "gen filiform",
            Gen::CentralProduct { .. } => "gen central-product",
            Gen::Catalog { .. } => "gen catalog",
        },
        Command::Info { .. } => "info",
        Command::Maximal { .. } => "maximal",
        Command::Check(Check::Frattinian { .. }) => "check frattinian",
        Command::Decompose { .. } => "decompose",
        Command::Verify(Verify::Suite { .. }) => "verify suite",
        Command::Verify(Verify::Certificate { .. }) => "verify certificate",
    }
    .to_string()
}

fn read(path: &Path) -> liesc::Result<(LieAlgebra, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((format::parse_algebra(&text)?, bytes))
}

fn field(s: &str) -> liesc::Result<Domain> {
    s.parse()
}

fn run(command: Command) -> liesc::Result<Outcome> {
    match command {
        Command::Gen(g) => run_gen(g),
        Command::Info { path } => info(&path),
        Command::Maximal { path, list } => maximal(&path, list),
        Command::Check(Check::Frattinian { path }) => check_frattinian(&path),
        Command::Decompose { path, report } => run_decompose(&path, report.as_deref()),
        Command::Verify(Verify::Suite { field: f, max_dim, seed }) => suite(field(&f)?, max_dim, seed),
        Command::Verify(Verify::Certificate { algebra, certificate }) => verify_cert(&algebra, &certificate),
    }
}

fn write_algebra(l: &LieAlgebra, path: &Path) -> liesc::Result<Outcome> {
    let text = format::algebra_to_string(l);
    std::fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(Outcome {
        code: 0,
        text: format!("wrote {} (dim {} over {})\n", path.display(), l.dim(), l.domain()),
        result: json!({ "path": path.display().to_string(), "dim": l.dim() }),
        input: text.into_bytes(),
    })
}

fn run_gen(g: Gen) -> liesc::Result<Outcome> {
    match g {
        Gen::Abelian { n, out } => write_algebra(&abelian(n, field(&out.field)?), &out.output),
        Gen::Heisenberg { m, out } => write_algebra(&heisenberg(m, field(&out.field)?)?, &out.output),
        Gen::Filiform { dim, out } => write_algebra(&filiform_standard(dim, field(&out.field)?)?, &out.output),
        Gen::CentralProduct { left, right, output } => {
            let (a, _) = read(&left)?;
            let (b, _) = read(&right)?;
            let cp = central_product(&CentralProductSpec::identify_centers(a, b)?)?;
            write_algebra(&cp.algebra, &output)
        }
        Gen::Catalog { dim, seed, out } => {
            let entries = catalog_with_seed(field(&out.field)?, dim, seed)?;
            std::fs::create_dir_all(&out.output)?;
            let mut text = String::new();
            let mut files = Vec::new();
            for e in &entries {
                let file = out.output.join(format!("{}.json", file_stem(&e.name)));
                format::save(&e.algebra, &file)?;
                let _ = writeln!(text, "{:32} dim {}  {}", e.name, e.algebra.dim(), file.display());
                files.push(json!({ "name": e.name, "dim": e.algebra.dim(), "path": file.display().to_string() }));
            }
            Ok(Outcome {
                code: 0,
                text,
                result: json!({ "count": entries.len(), "files": files }),
                input: format!("catalog {} {dim} {seed}", out.field).into_bytes(),
            })
        }
    }
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| match c {
            'a'..='z' | 'A'..='Z' | '0'..='9' | '-' => c,
            '+' => 'p',
            '*' => 'x',
            _ => '_',
        })
        .collect()
}

fn rows(s: &Subspace) -> Value {
    s.basis()
        .iter()
        .map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>())
        .collect()
}

fn info(path: &Path) -> liesc::Result<Outcome> {
    let (l, input) = read(path)?;
    let lower = l.lower_central_series();
    let upper = l.upper_central_series();
    let z = l.center();
    let class = l.nilpotency_class();
    let mut text = String::new();
    let _ = writeln!(text, "dimension: {}", l.dim());
    let _ = writeln!(text, "field: {}", l.domain());
    match class {
        Some(c) => {
            let _ = writeln!(text, "nilpotency class: {c}");
        }
        None => {
            let _ = writeln!(text, "nilpotent: no");
        }
    }
    let _ = writeln!(text, "lower central series dims: {:?}", lower.dims());
    let _ = writeln!(text, "upper central series dims: {:?}", upper.dims());
    let _ = writeln!(text, "derived algebra dim: {}", l.derived().dim());
    let _ = writeln!(text, "center: {}", l.format_subspace(&z));
    Ok(Outcome {
        code: 0,
        text,
        result: json!({
            "dim": l.dim(),
            "field": l.domain().to_string(),
            "nilpotency_class": class,
            "lower_central_series": lower.dims(),
            "upper_central_series": upper.dims(),
            "derived_dim": l.derived().dim(),
            "center": rows(&z),
        }),
        input,
    })
}

fn maximal(path: &Path, list: bool) -> liesc::Result<Outcome> {
    let (l, input) = read(path)?;
    let e = enumerate_maximal(&l)?;
    let mut text = format!("maximal subalgebras: {}\n", e.count());
    let mut result = json!({ "count": e.count(), "quotient_dim": e.quotient_dim });
    if list {
        for m in &e.items {
            let _ = writeln!(text, "  {}", l.format_subspace(m));
        }
        result["items"] = e.items.iter().map(rows).collect();
    }
    Ok(Outcome {
        code: 0,
        text,
        result,
        input,
    })
}

fn check_frattinian(path: &Path) -> liesc::Result<Outcome> {
    let (l, input) = read(path)?;
    let v = is_frattinian(&l)?;
    let (text, result) = match &v.witness {
        None => (
            format!("Frattinian ({} maximal subalgebras checked)\n", v.checked_count),
            json!({ "frattinian": true, "checked": v.checked_count }),
        ),
        Some(m) => {
            let z = l.center();
            (
                format!(
                    "not Frattinian\nwitness M = {}\nZ(M) = Z(L) = {}\n",
                    l.format_subspace(m),
                    l.format_subspace(&z)
                ),
                json!({ "frattinian": false, "checked": v.checked_count, "witness": rows(m), "center": rows(&z) }),
            )
        }
    };
    Ok(Outcome {
        code: if v.is_frattinian { 0 } else { 1 },
        text,
        result,
        input,
    })
}

fn run_decompose(path: &Path, report: Option<&Path>) -> liesc::Result<Outcome> {
    let start = Instant::now();
    let (l, input) = read(path)?;
    let cert = decompose(&l)?;
    let verification = verify_certificate(&l, &cert)?;
    let file = CertificateFile::from_certificate(&l, &cert, Some(&verification));
    let result = serde_json::to_value(&file).expect("serializable");
    if let Some(out) = report {
        let env = Envelope::new(&input, "decompose", result.clone(), start.elapsed());
        std::fs::write(out, env.to_pretty()).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    }
    let mut text = format!("case {} with {} factor(s)\n", cert.case.as_str(), cert.factors.len());
    let labels: Vec<String> = match cert.case {
        Case::One => (1..=cert.factors.len()).map(|i| format!("E{i}")).collect(),
        Case::Two => vec!["E".into(), "F".into()],
    };
    for (label, f) in labels.iter().zip(&cert.factors) {
        let _ = writeln!(text, "  {label} (dim {}) = {}", f.dim(), l.format_subspace(f));
    }
    for o in &verification.obligations {
        let _ = writeln!(text, "  [{}] {}", if o.pass { "ok" } else { "FAIL" }, o.name);
    }
    for n in &verification.notes {
        let _ = writeln!(text, "  note: {n}");
    }
    Ok(Outcome {
        code: if verification.passed() { 0 } else { 1 },
        text,
        result,
        input,
    })
}

fn verify_cert(algebra: &Path, certificate: &Path) -> liesc::Result<Outcome> {
    let (l, mut input) = read(algebra)?;
    let text = std::fs::read_to_string(certificate)
        .map_err(|e| Error::Io(format!("{}: {e}", certificate.display())))?;
    input.extend_from_slice(text.as_bytes());
    // accept either a bare certificate or a decompose envelope
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    let body = match value.get("result") {
        Some(r) if value.get("tool_version").is_some() => r.clone(),
        _ => value,
    };
    let file: CertificateFile =
        serde_json::from_value(body).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    let cert = file.to_certificate(&l)?;
    let report = verify_certificate(&l, &cert)?;
    let mut out = String::new();
    for o in &report.obligations {
        let _ = writeln!(out, "[{}] {}", if o.pass { "ok" } else { "FAIL" }, o.name);
    }
    let _ = writeln!(out, "{}", if report.passed() { "certificate verified" } else { "certificate rejected" });
    Ok(Outcome {
        code: if report.passed() { 0 } else { 1 },
        text: out,
        result: serde_json::to_value(format::VerificationFile::from(&report)).expect("serializable"),
        input,
    })
}

fn suite(domain: Domain, max_dim: usize, seed: u64) -> liesc::Result<Outcome> {
    let entries = catalog_with_seed(domain, max_dim, seed)?;
    let mut per_check: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
    let mut histogram: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut failures: Vec<Value> = Vec::new();
    let mut pairs = 0;
    for e in &entries {
        let r = lemma_suite(&e.algebra, &e.name)?;
        pairs += r.maximal_count;
        for c in &r.checks {
            let slot = per_check.entry(c.lemma_id).or_default();
            slot.1 += 1;
            if c.pass {
                slot.0 += 1;
            } else {
                failures.push(json!({
                    "algebra": e.name,
                    "check": c.lemma_id,
                    "maximal": c.maximal_basis.as_ref().map(rows),
                    "witness": c.witness_subspaces.iter().map(|(k, s)| json!({ "name": k, "basis": rows(s) })).collect::<Vec<_>>(),
                }));
            }
        }
        if !r.frattinian || e.algebra.is_abelian() {
            continue;
        }
        let outcome = decompose(&e.algebra).and_then(|c| Ok((c.case, verify_certificate(&e.algebra, &c)?)));
        match outcome {
            Ok((case, v)) if v.passed() => *histogram.entry(case.as_str()).or_default() += 1,
            Ok((_, v)) => {
                *histogram.entry("failed").or_default() += 1;
                let names: Vec<&str> = v.failures().map(|o| o.name.as_str()).collect();
                failures.push(json!({ "algebra": e.name, "check": "decomposition", "message": names.join("; ") }));
            }
            Err(err) => {
                *histogram.entry("failed").or_default() += 1;
                failures.push(json!({ "algebra": e.name, "check": "decomposition", "message": err.to_string() }));
            }
        }
    }

    let mut text = format!(
        "catalog {domain}, dim <= {max_dim}, seed {seed}: {} algebras, {pairs} maximal pairs\n",
        entries.len()
    );
    for (id, (pass, total)) in &per_check {
        let _ = writeln!(text, "  {id:32} {pass}/{total}");
    }
    let _ = writeln!(
        text,
        "  decomposition cases: one {}, two {}, failed {}",
        histogram.get("one").copied().unwrap_or(0),
        histogram.get("two").copied().unwrap_or(0),
        histogram.get("failed").copied().unwrap_or(0)
    );
    for f in &failures {
        let _ = writeln!(text, "FAIL {f}");
    }
    let ok = failures.is_empty();
    let _ = writeln!(text, "{}", if ok { "all checks passed" } else { "suite failed" });
    let checks: BTreeMap<&str, Value> = per_check
        .iter()
        .map(|(k, (p, t))| (*k, json!({ "pass": p, "total": t })))
        .collect();
    Ok(Outcome {
        code: if ok { 0 } else { 1 },
        text,
        result: json!({
            "algebras": entries.len(),
            "pairs": pairs,
            "checks": checks,
            "cases": {
                "one": histogram.get("one").copied().unwrap_or(0),
                "two": histogram.get("two").copied().unwrap_or(0),
                "failed": histogram.get("failed").copied().unwrap_or(0),
            },
            "failures": failures,
        }),
        input: format!("suite {domain} {max_dim} {seed}").into_bytes(),
    })
}
