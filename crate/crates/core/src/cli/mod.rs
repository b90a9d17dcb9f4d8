//! Batch front end: `hecke <cosets|degree|multiply|verify|amplifier> [flags]`.
//!
//! Exit codes: 0 success, 1 failed verification or internal error, 2 invalid input,
//! 3 budget exceeded. Output is a pure function of the arguments (and the cache contents,
//! which never change results).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::amplifier::{build_amplifier, dichotomy, evaluate, linearization_table, to_f64, EigenvalueData};
use crate::coset_enum::{
    closed_form_degree, enumerate_right_cosets, index_formula_degree, is_prime, r0_cardinality, r0_set, r1_cardinality,
    r1_set, CosetLabel, CosetTable, DegreeSource, R0Split, TableCache, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::hecke_algebra::{
    multiply_bruteforce_with_budget, multiply_with_table, verify_corollary_with_budget, verify_theorem_a_with_budget,
    ProductDecomposition, VerificationReport, PAIRWISE_BUDGET,
};

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Exact double-coset arithmetic for GL(n) at a prime")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CommandKind {
    Cosets,
    Degree,
    Multiply,
    Verify,
    Amplifier,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical right-coset representatives of one double coset.
    Cosets(Opts),
    /// Degree of a double coset and where it came from.
    Degree(Opts),
    /// Structure constants of a product; pass --exps twice, or once to square.
    Multiply(Opts),
    /// Run the explicit checks and exit nonzero on any failure.
    Verify {
        #[arg(value_enum, default_value_t = VerifyTarget::All)]
        target: VerifyTarget,
        #[command(flatten)]
        opts: Opts,
    },
    /// Build the amplifier from eigenvalue data and evaluate it.
    Amplifier(Opts),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyTarget {
    /// Everything that applies to the given n, p, q.
    All,
    /// Sizes of the two representative sets of diag(1,p,...,p,p^2).
    Cardinalities,
    /// The split of the first set by its interior block.
    Split,
    /// The six-term square of diag(1,p,...,p,p^2).
    Theorem,
    /// The two linearization identities for p and q.
    Corollary,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Comma-separated nondecreasing exponents; repeat for a second label.
    #[arg(long)]
    pub exps: Vec<String>,
    /// Amplifier length.
    #[arg(long = "L")]
    pub length: Option<f64>,
    /// Largest table that may be enumerated.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Use the pairwise-product oracle (multiply) or add it to the checks (verify).
    #[arg(long)]
    pub oracle: bool,
    /// Directory for cached tables.
    #[arg(long, env = "HECKE_CACHE")]
    pub cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Eigenvalue data file for `amplifier`.
    #[arg(long)]
    pub data: Option<PathBuf>,
}

/// Validated run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub labels: Vec<Vec<u32>>,
    pub length: Option<f64>,
    pub budget: u64,
    pub oracle: bool,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub data: Option<PathBuf>,
}

fn parse_exps(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidLabel(format!("bad exponent {t:?} in {s:?}"))))
        .collect()
}

impl RunConfig {
    pub fn from_opts(opts: &Opts) -> Result<Self> {
        if let Some(n) = opts.n {
            if n < 2 {
                return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
            }
        }
        for x in [opts.p, opts.q].into_iter().flatten() {
            if !is_prime(x) {
                return Err(Error::NotPrime(x));
            }
        }
        if opts.budget == 0 {
            return Err(Error::InvalidArgument("budget must be positive".into()));
        }
        let labels = opts.exps.iter().map(|s| parse_exps(s)).collect::<Result<Vec<_>>>()?;
        if let Some(n) = opts.n {
            if let Some(bad) = labels.iter().find(|e| e.len() != n) {
                return Err(Error::InvalidLabel(format!("{} exponents given but n = {n}", bad.len())));
            }
        }
        Ok(RunConfig {
            n: opts.n,
            p: opts.p,
            q: opts.q,
            labels,
            length: opts.length,
            budget: opts.budget,
            oracle: opts.oracle,
            cache_dir: opts.cache.clone(),
            format: opts.format,
            data: opts.data.clone(),
        })
    }

    fn require_p(&self) -> Result<u64> {
        self.p.ok_or_else(|| Error::InvalidArgument("--p is required".into()))
    }

    fn require_n(&self) -> Result<usize> {
        self.n
            .or_else(|| self.labels.first().map(|e| e.len()))
            .ok_or_else(|| Error::InvalidArgument("--n is required".into()))
    }

    fn label(&self, i: usize) -> Result<CosetLabel> {
        let exps = self.labels.get(i).ok_or_else(|| Error::InvalidArgument("--exps is required".into()))?;
        CosetLabel::new(self.require_p()?, exps.clone())
    }

    fn cache(&self) -> Result<Option<TableCache>> {
        self.cache_dir.as_ref().map(TableCache::new).transpose()
    }

    fn table(&self, label: &CosetLabel) -> Result<CosetTable> {
        match self.cache()? {
            Some(c) => c.load_or_compute(label, self.budget),
            None => enumerate_right_cosets(label, self.budget),
        }
    }
}

/// Everything a run produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        e if e.is_validation() => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let (kind, opts, target) = match &cli.command {
        Command::Cosets(o) => (CommandKind::Cosets, o, None),
        Command::Degree(o) => (CommandKind::Degree, o, None),
        Command::Multiply(o) => (CommandKind::Multiply, o, None),
        Command::Verify { target, opts } => (CommandKind::Verify, opts, Some(*target)),
        Command::Amplifier(o) => (CommandKind::Amplifier, o, None),
    };
    let result = RunConfig::from_opts(opts).and_then(|cfg| match kind {
        CommandKind::Cosets => cmd_cosets(&cfg).map(|s| (s, true)),
        CommandKind::Degree => cmd_degree(&cfg).map(|s| (s, true)),
        CommandKind::Multiply => cmd_multiply(&cfg).map(|s| (s, true)),
        CommandKind::Verify => cmd_verify(&cfg, target.unwrap_or(VerifyTarget::All)),
        CommandKind::Amplifier => cmd_amplifier(&cfg).map(|s| (s, true)),
    });
    match result {
        Ok((stdout, ok)) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout,
            stderr: if ok { String::new() } else { "verification failed\n".into() },
        },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

pub fn cmd_cosets(cfg: &RunConfig) -> Result<String> {
    let label = cfg.label(0)?;
    let table = cfg.table(&label)?;
    Ok(with_newline(match cfg.format {
        Format::Json => table.to_json()?,
        Format::Csv => table.to_csv(),
        Format::Pretty => {
            let mut s = format!("{label}: {} right cosets\n", table.reps.len());
            for m in &table.reps {
                let _ = writeln!(s, "{m}\n");
            }
            s
        }
    }))
}

pub fn cmd_degree(cfg: &RunConfig) -> Result<String> {
    let label = cfg.label(0)?;
    let (degree, source) = match closed_form_degree(&label) {
        Some(found) => found,
        None => match cfg.table(&label.reduced().1) {
            Ok(t) => (BigUint::from(t.reps.len()), DegreeSource::Enumeration),
            Err(Error::BudgetExceeded { .. }) => (index_formula_degree(&label.reduced().1), DegreeSource::IndexFormula),
            Err(e) => return Err(e),
        },
    };
    let source_name = match source {
        DegreeSource::MainFormula { .. } => "main_formula",
        DegreeSource::TheoremA { .. } => "six_term_shapes",
        DegreeSource::Enumeration => "enumeration",
        DegreeSource::IndexFormula => "index_formula",
    };
    Ok(with_newline(match cfg.format {
        Format::Json => serde_json::to_string(&json!({
            "n": label.n(),
            "p": label.p(),
            "exps": label.exps(),
            "degree": degree.to_string(),
            "source": source,
        }))?,
        Format::Csv => {
            let e: Vec<String> = label.exps().iter().map(|x| x.to_string()).collect();
            format!("n,p,exps,degree,source\n{},{},{},{},{}", label.n(), label.p(), e.join("-"), degree, source_name)
        }
        Format::Pretty => format!("deg {label} = {degree} ({source_name})"),
    }))
}

fn emit_product(cfg: &RunConfig, d: &ProductDecomposition) -> Result<String> {
    Ok(with_newline(match cfg.format {
        Format::Json => d.to_json()?,
        Format::Csv => d.to_csv(),
        Format::Pretty => format!(
            "{} * {} = {}\nmass check: {}",
            d.left,
            d.right,
            d.element,
            if d.mass_check { "ok" } else { "FAILED" }
        ),
    }))
}

pub fn cmd_multiply(cfg: &RunConfig) -> Result<String> {
    let a = cfg.label(0)?;
    let b = match cfg.labels.len() {
        1 => a.clone(),
        2 => cfg.label(1)?,
        k => return Err(Error::InvalidArgument(format!("multiply takes one or two --exps, got {k}"))),
    };
    let d = if cfg.oracle {
        multiply_bruteforce_with_budget(&a, &b, PAIRWISE_BUDGET)?
    } else {
        if a.n() != b.n() {
            return Err(Error::DimensionMismatch(format!("{a} and {b} differ in size")));
        }
        multiply_with_table(&cfg.table(&a)?, &b)?
    };
    emit_product(cfg, &d)
}

fn cardinality_report(n: usize, p: u64) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(format!("representative sets of diag(1,p,...,p,p^2) at n = {n}, p = {p}"));
    let r0 = r0_set(n, p)?;
    let r1 = r1_set(n, p)?;
    r.check_eq("|R0| vs closed form", r0_cardinality(n, p), r0.len().into());
    r.check_eq("|R1| vs closed form", r1_cardinality(n, p), r1.len().into());
    let deg = crate::coset_enum::formula_degree(&CosetLabel::fundamental(n, p)?);
    r.check_eq("|R0| + |R1| = degree", deg, BigUint::from(r0.len() + r1.len()));
    Ok(r)
}

fn split_report(n: usize, p: u64) -> Result<VerificationReport> {
    let s = R0Split::compute(n, p)?;
    let mut r = VerificationReport::new(format!("split of R0 by its interior at n = {n}, p = {p}"));
    r.check_eq("vanishing interior count", R0Split::expected_interior_zero(n, p), s.interior_zero.len().into());
    r.check_eq(
        "nonvanishing interior count",
        R0Split::expected_interior_nonzero(n, p),
        s.interior_nonzero.len().into(),
    );
    r.check("every C0 * D lands in its predicted double coset", s.targets_match()?);
    Ok(r)
}

fn oracle_report(n: usize, p: u64, budget: u64) -> Result<VerificationReport> {
    let d = CosetLabel::fundamental(n, p)?;
    let fast = multiply_with_table(&enumerate_right_cosets(&d, budget)?, &d)?;
    let slow = multiply_bruteforce_with_budget(&d, &d, PAIRWISE_BUDGET)?;
    let mut r = VerificationReport::new(format!("pairwise oracle for the square at n = {n}, p = {p}"));
    r.check("counting formula equals pairwise classification", fast == slow);
    Ok(r)
}

pub fn cmd_verify(cfg: &RunConfig, target: VerifyTarget) -> Result<(String, bool)> {
    let n = cfg.require_n()?;
    let p = cfg.require_p()?;
    let mut reports = Vec::new();
    let all = target == VerifyTarget::All;
    if all || target == VerifyTarget::Cardinalities {
        reports.push(cardinality_report(n, p)?);
    }
    if (all && n >= 4) || target == VerifyTarget::Split {
        reports.push(split_report(n, p)?);
    }
    if (all && n >= 4) || target == VerifyTarget::Theorem {
        reports.push(verify_theorem_a_with_budget(n, p, cfg.budget)?);
        if cfg.oracle {
            reports.push(oracle_report(n, p, cfg.budget)?);
        }
    }
    if target == VerifyTarget::Corollary || (all && n >= 4 && cfg.q.is_some()) {
        let q = cfg.q.ok_or_else(|| Error::InvalidArgument("--q is required".into()))?;
        reports.push(verify_corollary_with_budget(n, p, q, cfg.budget)?);
    }
    let passed = reports.iter().all(|r| r.passed());
    let text = match cfg.format {
        Format::Json => serde_json::to_string(&json!({ "passed": passed, "reports": reports }))?,
        Format::Csv => reports.iter().map(|r| r.to_csv()).collect::<Vec<_>>().join(""),
        Format::Pretty => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
    };
    Ok((with_newline(text), passed))
}

pub fn cmd_amplifier(cfg: &RunConfig) -> Result<String> {
    let length = cfg.length.ok_or_else(|| Error::InvalidArgument("--L is required".into()))?;
    let path = cfg.data.as_ref().ok_or_else(|| Error::InvalidArgument("--data is required".into()))?;
    let data = EigenvalueData::from_json(&std::fs::read_to_string(path)?)?;
    let v = build_amplifier(length, &data)?;
    let m = evaluate(&v, &data)?;
    let per_prime = dichotomy(&v, &data)?;
    let residual = data.max_residual();
    let mut doc: Value = serde_json::from_str(&v.to_json()?)?;
    let mf = to_f64(&m);
    doc["M"] = json!([mf.re, mf.im]);
    doc["M_exact"] = json!([m.re.to_string(), m.im.to_string()]);
    doc["max_residual"] = json!(residual.to_string());
    doc["dichotomy"] = json!(per_prime.iter().all(|&(_, ok)| ok));
    if let (Some(n), Some(p), Some(q)) = (cfg.n, cfg.p, cfg.q) {
        let table = linearization_table(n, p, q)?;
        doc["linearization"] = serde_json::from_str(&table.to_json()?)?;
    }
    Ok(with_newline(match cfg.format {
        Format::Json => serde_json::to_string(&doc)?,
        Format::Csv => {
            let mut s = String::from("i,alpha_re,alpha_im\n");
            for (i, a) in &v.coefficients {
                let z = to_f64(a);
                let _ = writeln!(s, "{i},{},{}", z.re, z.im);
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("amplifier with L = {length}: {} coefficients\n", v.coefficients.len());
            for (i, a) in &v.coefficients {
                let _ = writeln!(s, "  alpha_{i} = {} + {}i", a.re, a.im);
            }
            let _ = writeln!(s, "  |alpha|_1 = {}, |alpha|_2 = {}", v.l1(), v.l2());
            let _ = writeln!(s, "  M = {} + {}i", m.re, m.im);
            let _ = write!(
                s,
                "  max residual of the identity: {}{}",
                residual,
                if residual.is_zero() { "" } else { " (data does not satisfy it exactly)" }
            );
            s
        }
    }))
}
