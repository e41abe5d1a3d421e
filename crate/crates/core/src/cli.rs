//! The `prational` command line.
//!
//! Exit codes: 0 success / certified, 1 not certified or invalid
//! certificate, 2 usage errors.

use crate::analytic::{
    chain_report, grh_chain_report, to_csv, GrhConfig, HarnessConfig, TermBreakdown,
};
use crate::cache::{cache_dir_from_env, CertificateCache, ClassNumberCache};
use crate::certify::{
    certificate_problems, certify_triquadratic_with, discriminant_bound_check,
    discriminant_bound_check_with_witnesses, CertifyError, Conclusion, TriquadraticCertificate,
};
use crate::quad::{
    descriptor, fundamental_unit, p_rationality_with, ClassNumberEvidence, ClassNumberStore,
    VerdictOptions,
};
use crate::search::{direct_scan, find_flanked_primes, SearchWindow, WindowDiagnostic};
use clap::{ArgGroup, Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CERTIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "prational",
    version,
    about = "Square-flanked primes and p-rational triquadratic fields"
)]
pub struct Cli {
    /// Ignore the on-disk cache
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List primes p with large square factors in p+2 and p-2
    Search(SearchArgs),
    /// Certify p-rationality of Q(sqrt(p(p+2)), sqrt(p(p-2)), i)
    Certify(CertifyArgs),
    /// Re-check a cert-v1 document
    Verify(VerifyArgs),
    /// Invariants of one quadratic field
    Field(FieldArgs),
    /// Evaluate the lower-bound sum chain on a grid
    Analytic(AnalyticArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["direct", "crt"])))]
pub struct SearchArgs {
    #[arg(long)]
    pub limit: u64,
    #[arg(long = "A")]
    pub a: f64,
    /// Scan every prime below the limit
    #[arg(long)]
    pub direct: bool,
    /// Sieve the CRT classes of the ((ln x)^A, (ln x)^B) window
    #[arg(long, requires = "b")]
    pub crt: bool,
    #[arg(long = "B")]
    pub b: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub p: u64,
    /// Write the certificate here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Witness with m² | p+2 (needs --n and --A)
    #[arg(long, requires_all = ["n", "a"])]
    pub m: Option<u64>,
    #[arg(long, requires_all = ["m", "a"])]
    pub n: Option<u64>,
    /// Add discriminant bounds at this level
    #[arg(long = "A")]
    pub a: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub cert: PathBuf,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Radicand d of Q(sqrt(d))
    #[arg(long, allow_negative_numbers = true)]
    pub d: i64,
    /// Also decide p-rationality at this prime
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[arg(long = "A", required_unless_present = "grh")]
    pub a: Option<f64>,
    #[arg(long = "B")]
    pub b: Option<f64>,
    #[arg(long = "C")]
    pub c: Option<f64>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1000,10000,100000,1000000"
    )]
    pub grid: Vec<u64>,
    /// Use the (x^ε, x^α) windows
    #[arg(long, requires_all = ["epsilon", "alpha"], conflicts_with_all = ["a", "b", "c", "force_window"])]
    pub grh: bool,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Testing hook: fixed pairs m1:n1,m2:n2,...
    #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
    pub force_window: Option<Vec<(u64, u64)>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (m, n) = s
        .split_once(':')
        .ok_or_else(|| format!("expected m:n, got {s:?}"))?;
    Ok((
        m.trim().parse().map_err(|e| format!("{m:?}: {e}"))?,
        n.trim().parse().map_err(|e| format!("{n:?}: {e}"))?,
    ))
}

/// Runs a parsed command, writing data to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cache_root = if cli.no_cache {
        None
    } else {
        cache_dir_from_env()
    };
    let result = match &cli.command {
        Command::Search(a) => cmd_search(a, out, err),
        Command::Certify(a) => cmd_certify(a, cache_root, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Field(a) => cmd_field(a, cache_root, out),
        Command::Analytic(a) => cmd_analytic(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(msg: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.to_string(),
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_NOT_CERTIFIED,
        message: e.to_string(),
    }
}

type CmdResult = Result<i32, Failure>;

fn cmd_search(args: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let records = if args.crt {
        let b = args.b.ok_or_else(|| usage("--crt requires --B"))?;
        let window = SearchWindow::new(args.a, b, args.limit).map_err(usage)?;
        let diag = WindowDiagnostic::of(&window.interval());
        writeln!(err, "{diag}").map_err(io_failure)?;
        find_flanked_primes(&window)
    } else {
        direct_scan(args.limit, args.a)
    };
    for r in &records {
        writeln!(out, "{r}").map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}

fn open_cache(root: &Option<PathBuf>) -> Option<ClassNumberCache> {
    root.as_deref().and_then(|d| ClassNumberCache::open(d).ok())
}

fn cmd_certify(
    args: &CertifyArgs,
    cache_root: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let to_failure = |e: CertifyError| match e {
        CertifyError::UnsupportedPrime(_) | CertifyError::NotFlanked { .. } => usage(e),
        other => Failure {
            code: EXIT_NOT_CERTIFIED,
            message: other.to_string(),
        },
    };
    let certs = cache_root.as_deref().map(CertificateCache::new);
    let cached = certs.as_ref().and_then(|c| c.load(args.p));
    let mut cert = match cached {
        Some(c) => c,
        None => {
            let store = open_cache(&cache_root);
            let opts = VerdictOptions {
                store: store.as_ref().map(|s| s as &dyn ClassNumberStore),
                ..VerdictOptions::default()
            };
            let c = certify_triquadratic_with(args.p, opts).map_err(to_failure)?;
            if let Some(cc) = &certs {
                let _ = cc.store(&c);
            }
            c
        }
    };
    cert.discriminant_checks = match (args.a, args.m, args.n) {
        (Some(a), Some(m), Some(n)) => {
            Some(discriminant_bound_check_with_witnesses(args.p, m, n, a).map_err(to_failure)?)
        }
        (Some(a), None, None) => Some(discriminant_bound_check(args.p, a).map_err(to_failure)?),
        _ => None,
    };
    let text = cert.to_text();
    match &args.out {
        Some(path) => std::fs::write(path, &text).map_err(io_failure)?,
        None => out.write_all(text.as_bytes()).map_err(io_failure)?,
    }
    writeln!(err, "p = {}: {}", cert.p, cert.conclusion).map_err(io_failure)?;
    Ok(if cert.conclusion == Conclusion::Certified {
        EXIT_OK
    } else {
        EXIT_NOT_CERTIFIED
    })
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let text = std::fs::read_to_string(&args.cert).map_err(usage)?;
    let cert = TriquadraticCertificate::from_text(&text).map_err(|e| Failure {
        code: EXIT_NOT_CERTIFIED,
        message: e.to_string(),
    })?;
    let problems = certificate_problems(&cert);
    for p in &problems {
        writeln!(out, "problem: {p}").map_err(io_failure)?;
    }
    if problems.is_empty() {
        writeln!(out, "valid: p = {}, conclusion {}", cert.p, cert.conclusion)
            .map_err(io_failure)?;
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_NOT_CERTIFIED)
    }
}

fn cmd_field(args: &FieldArgs, cache_root: Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    let field = descriptor(args.d).map_err(usage)?;
    let mut lines = vec![
        format!("d: {}", field.d_input),
        format!("kernel: {}", field.kernel),
        format!("discriminant: {}", field.discriminant),
        format!("signature: {}", field.signature),
    ];
    if field.is_real() {
        match fundamental_unit(field.kernel) {
            Ok(u) => lines.push(format!("fundamental_unit: {u}")),
            Err(e) => lines.push(format!("fundamental_unit: unavailable ({e})")),
        }
    }
    if let Some(p) = args.p {
        let store = open_cache(&cache_root);
        let opts = VerdictOptions {
            store: store.as_ref().map(|s| s as &dyn ClassNumberStore),
            ..VerdictOptions::default()
        };
        let v = p_rationality_with(&field, p, opts).map_err(usage)?;
        match v.class_number {
            ClassNumberEvidence::Exact { h, method } => {
                lines.push(format!("class_number: {h} ({method})"))
            }
            ClassNumberEvidence::Bound { bound } => {
                lines.push(format!("class_number_bound: {bound}"))
            }
            ClassNumberEvidence::Unavailable => lines.push("class_number: unavailable".into()),
        }
        if let Some(u) = &v.unit {
            lines.push(format!("splitting_at_p: {}", u.local.splitting));
            lines.push(format!(
                "unit_not_pth_power_somewhere: {}",
                u.local.some_place_not_pth_power()
            ));
        }
        lines.push(format!("{p}-rational: {}", v.status));
    }
    for l in lines {
        writeln!(out, "{l}").map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}

fn cmd_analytic(args: &AnalyticArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let rows = if args.grh {
        let (e, a) = (args.epsilon.unwrap_or(0.0), args.alpha.unwrap_or(0.0));
        grh_chain_report(&GrhConfig::new(e, a, args.grid.clone()).map_err(usage)?)
    } else {
        let a = args.a.ok_or_else(|| usage("--A is required"))?;
        let mut cfg = HarnessConfig::new(a, args.b, args.c, args.grid.clone()).map_err(usage)?;
        if let Some(pairs) = &args.force_window {
            cfg = cfg.with_forced_window(pairs).map_err(usage)?;
        }
        chain_report(&cfg)
    };
    let mut ok: Vec<TermBreakdown> = Vec::new();
    for r in rows {
        match r {
            Ok(row) => ok.push(row),
            Err(e) => writeln!(err, "skipped: {e}").map_err(io_failure)?,
        }
    }
    let csv = to_csv(&ok);
    match &args.out {
        Some(path) => std::fs::write(path, csv).map_err(io_failure)?,
        None => out.write_all(csv.as_bytes()).map_err(io_failure)?,
    }
    Ok(EXIT_OK)
}
