//! Command-line front end: decompositions, bases, dimension tables and
//! verification suites, rendered as deterministic text or JSON.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use qfischer::harmonic::{harmonic_basis, harmonic_decompose, monomial_basis, GradedBasis};
use qfischer::symplectic::{dims, full_decompose, kernel_basis, symplectic_decompose, DimReport, Orientation};
use qfischer::verify::{run_suite, Suite, SuiteReport, VerifyConfig};
use qfischer::{Bidegree, Context, OpExpr, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Harmonic,
    Symplectic,
    Full,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Harmonic => "harmonic",
            Mode::Symplectic => "symplectic",
            Mode::Full => "full",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Decompose a polynomial.
    Decompose,
    /// Print a basis of a graded space at the bidegree given by --input "a,b".
    Basis,
    /// Tabulate dimension formulas for all a+b up to the degree cap.
    Dims,
    /// Run verification suites.
    Verify,
    /// Apply an operator expression (--op) to a polynomial (--input).
    Apply,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "qfischer", version, about = "Exact Fischer decompositions on C^2p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Quaternionic dimension: polynomials in z1..z2p and their conjugates.
    #[arg(long, default_value_t = 2, global = true)]
    pub p: usize,
    #[arg(long, value_enum, default_value_t = Mode::Symplectic, global = true)]
    pub mode: Mode,
    /// Polynomial text, or "a,b" for basis.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Operator expression for apply, e.g. "Edag^2.E".
    #[arg(long, global = true)]
    pub op: Option<String>,
    #[arg(long, default_value = "all", global = true)]
    pub suite: String,
    #[arg(long = "degree-cap", default_value_t = 6, global = true)]
    pub degree_cap: u32,
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    pub output: Output,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for sampled properties in verify.
    #[arg(long, default_value_t = qfischer::sample::DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Random inputs per sampled property in verify.
    #[arg(long, default_value_t = 20, global = true)]
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub p: usize,
    pub mode: Mode,
    pub input: Option<String>,
    pub op: Option<String>,
    pub suite: String,
    pub degree_cap: u32,
    pub output: Output,
    pub out_path: Option<PathBuf>,
    pub seed: u64,
    pub samples: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            p: 2,
            mode: Mode::Symplectic,
            input: None,
            op: None,
            suite: "all".into(),
            degree_cap: 6,
            output: Output::Text,
            out_path: None,
            seed: qfischer::sample::DEFAULT_SEED,
            samples: 20,
        }
    }
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        RunConfig {
            command: c.command,
            p: c.p,
            mode: c.mode,
            input: c.input,
            op: c.op,
            suite: c.suite,
            degree_cap: c.degree_cap,
            output: c.output,
            out_path: c.out,
            seed: c.seed,
            samples: c.samples,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qfischer::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use qfischer::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                E::Parse(_)
                | E::VariableOutOfRange { .. }
                | E::InvalidContext
                | E::NotHomogeneous
                | E::NotHarmonic
                | E::InvalidOrientation { .. }
                | E::NoBidegreeShift,
            ) => 2,
            _ => 1,
        }
    }
}

/// Result of one run: exit code, the rendered report and any error message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub error: Option<String>,
}

/// Parses arguments (including the program name) into a config.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args).map(RunConfig::from)
}

/// Runs a command. The report goes to `out_path` when set, returned otherwise.
pub fn run(cfg: &RunConfig) -> Outcome {
    let failed = |e: CliError| Outcome { code: e.exit_code(), report: String::new(), error: Some(e.to_string()) };
    let (code, report) = match execute(cfg) {
        Ok(x) => x,
        Err(e) => return failed(e),
    };
    if let Some(path) = &cfg.out_path {
        if let Err(source) = std::fs::write(path, &report) {
            return failed(CliError::Io { path: path.display().to_string(), source });
        }
        return Outcome { code, report: String::new(), error: None };
    }
    Outcome { code, report, error: None }
}

fn execute(cfg: &RunConfig) -> Result<(i32, String), CliError> {
    let ctx = Context::new(cfg.p)?;
    match cfg.command {
        Command::Decompose => {
            let input = require(&cfg.input, "--input")?;
            let report = decompose(ctx, input, cfg.mode)?;
            let ok = report.reassembly_ok;
            let text = match cfg.output {
                Output::Json => to_json(&report)?,
                Output::Text => report.to_text(),
            };
            Ok((if ok { 0 } else { 1 }, text))
        }
        Command::Basis => {
            let bd = parse_bidegree(require(&cfg.input, "--input")?)?;
            let report = basis(ctx, bd, cfg.mode);
            Ok((
                0,
                match cfg.output {
                    Output::Json => to_json(&report)?,
                    Output::Text => report.to_text(),
                },
            ))
        }
        Command::Dims => {
            let report = dims_table(ctx, cfg.degree_cap)?;
            let ok = report.rows.iter().all(DimReport::consistent);
            let text = match cfg.output {
                Output::Json => to_json(&DimsJson::from(&report))?,
                Output::Text => report.to_text(),
            };
            Ok((if ok { 0 } else { 1 }, text))
        }
        Command::Verify => {
            let suite: Suite = cfg.suite.parse().map_err(CliError::Usage)?;
            let vcfg = VerifyConfig { p: cfg.p, degree_cap: cfg.degree_cap, seed: cfg.seed, samples: cfg.samples };
            let reports = run_suite(suite, &vcfg)?;
            let ok = reports.iter().all(SuiteReport::passed);
            let text = match cfg.output {
                Output::Json => to_json(&reports.iter().map(VerifyJson::from).collect::<Vec<_>>())?,
                Output::Text => verify_text(&reports),
            };
            Ok((if ok { 0 } else { 1 }, text))
        }
        Command::Apply => {
            let f = Poly::parse(require(&cfg.input, "--input")?, ctx)?;
            let op = OpExpr::parse(require(&cfg.op, "--op")?)?;
            let g = op.apply(&f)?;
            Ok((
                0,
                match cfg.output {
                    Output::Json => to_json(&ApplyJson {
                        context: ContextJson { p: cfg.p },
                        op: op.to_string(),
                        input: f.to_string(),
                        result: g.to_string(),
                    })?,
                    Output::Text => format!("{g}\n"),
                },
            ))
        }
    }
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("{flag} is required")))
}

fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Parses `"a,b"` or `"(a,b)"`.
pub fn parse_bidegree(text: &str) -> Result<Bidegree, CliError> {
    let bad = || CliError::Usage(format!("expected a bidegree \"a,b\", got {text:?}"));
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok(Bidegree::new(a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartJson {
    pub bidegree: [u32; 2],
    pub r2_power: u32,
    pub op_power: u32,
    pub op: String,
    pub component: String,
    /// `|z|^(2 r2_power) op^op_power component`, the summand it contributes.
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeJson {
    pub context: ContextJson,
    pub input: String,
    pub mode: Mode,
    pub parts: Vec<PartJson>,
    pub reassembly_ok: bool,
}

impl DecomposeJson {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p = {}, mode {}, input {}", self.context.p, self.mode.name(), self.input);
        for part in &self.parts {
            let _ = writeln!(
                s,
                "({},{}) j={} t={} op={}: {}",
                part.bidegree[0], part.bidegree[1], part.r2_power, part.op_power, part.op, part.component
            );
            let _ = writeln!(s, "    image: {}", part.image);
        }
        let _ = writeln!(s, "reassembly: {}", if self.reassembly_ok { "ok" } else { "FAILED" });
        s
    }

    /// Re-evaluates the report: parses every component, applies its operators
    /// and compares the sum with the parsed input.
    pub fn reevaluate(&self) -> qfischer::Result<bool> {
        let ctx = Context::new(self.context.p)?;
        let input = Poly::parse(&self.input, ctx)?;
        let mut sum = Poly::zero(ctx);
        for part in &self.parts {
            let h = Poly::parse(&part.component, ctx)?;
            let raised = match part.op.as_str() {
                "none" => h,
                name => OpExpr::parse(name)?.pow(part.op_power).apply(&h)?,
            };
            let image = &Poly::r2(ctx).pow(part.r2_power) * &raised;
            if image != Poly::parse(&part.image, ctx)? {
                return Ok(false);
            }
            sum = &sum + &image;
        }
        Ok(sum == input)
    }
}

fn part_json(bd: Bidegree, j: u32, t: u32, op: &str, h: &Poly, image: &Poly) -> PartJson {
    PartJson {
        bidegree: [bd.a, bd.b],
        r2_power: j,
        op_power: t,
        op: op.into(),
        component: h.to_string(),
        image: image.to_string(),
    }
}

/// Decomposes `input`; harmonic and symplectic modes work bidegree by bidegree.
pub fn decompose(ctx: Context, input: &str, mode: Mode) -> Result<DecomposeJson, CliError> {
    let f = Poly::parse(input, ctx)?;
    let mut parts = Vec::new();
    let mut sum = Poly::zero(ctx);
    match mode {
        Mode::Harmonic => {
            let r2 = Poly::r2(ctx);
            for (bd, piece) in f.bidegree_split() {
                for part in harmonic_decompose(&piece)?.parts {
                    let image = &r2.pow(part.j) * &part.h;
                    parts.push(part_json(bd, part.j, 0, "none", &part.h, &image));
                    sum = &sum + &image;
                }
            }
        }
        Mode::Symplectic => {
            for (bd, piece) in f.bidegree_split() {
                let d = symplectic_decompose(&piece)?;
                for part in &d.parts {
                    let image = d.image(part)?;
                    let op = if part.t == 0 { "none" } else { d.orientation.name() };
                    parts.push(part_json(bd, 0, part.t, op, &part.h, &image));
                    sum = &sum + &image;
                }
            }
        }
        Mode::Full => {
            for part in full_decompose(&f)?.parts {
                let image = part.image()?;
                parts.push(part_json(part.bidegree, part.j, part.t, part.op_name(), &part.h, &image));
                sum = &sum + &image;
            }
        }
    }
    Ok(DecomposeJson {
        context: ContextJson { p: ctx.p() },
        input: f.to_string(),
        mode,
        reassembly_ok: sum == f,
        parts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub context: ContextJson,
    pub bidegree: [u32; 2],
    pub space: String,
    pub dimension: usize,
    pub elements: Vec<String>,
}

impl BasisJson {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} at ({},{}), p = {}: dimension {}\n",
            self.space, self.bidegree[0], self.bidegree[1], self.context.p, self.dimension
        );
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(s, "  [{i}] {e}");
        }
        s
    }
}

/// Full mode lists monomials of `P`, harmonic mode a basis of `H`, symplectic
/// mode a basis of the kernel for the default orientation.
pub fn basis(ctx: Context, bd: Bidegree, mode: Mode) -> BasisJson {
    let b: std::sync::Arc<GradedBasis> = match mode {
        Mode::Full => monomial_basis(ctx, bd),
        Mode::Harmonic => harmonic_basis(ctx, bd),
        Mode::Symplectic => kernel_basis(ctx, bd, Orientation::default_for(bd)),
    };
    BasisJson {
        context: ContextJson { p: ctx.p() },
        bidegree: [bd.a, bd.b],
        space: b.space.to_string(),
        dimension: b.len(),
        elements: b.elements.iter().map(Poly::to_string).collect(),
    }
}

pub struct DimsTable {
    pub p: usize,
    pub rows: Vec<DimReport>,
}

pub fn dims_table(ctx: Context, cap: u32) -> qfischer::Result<DimsTable> {
    let rows = Bidegree::up_to(cap).into_iter().map(|bd| dims(ctx, bd)).collect::<qfischer::Result<_>>()?;
    Ok(DimsTable { p: ctx.p(), rows })
}

impl DimsTable {
    pub fn to_text(&self) -> String {
        let width = DimReport::HEADER.iter().map(|h| h.len()).max().unwrap_or(0) + 1;
        let mut s = String::new();
        for h in DimReport::HEADER {
            let _ = write!(s, "{h:>width$}");
        }
        s.push('\n');
        for r in &self.rows {
            for v in r.row() {
                let _ = write!(s, "{v:>width$}");
            }
            s.push('\n');
        }
        for note in self.notes() {
            let _ = writeln!(s, "note: {note}");
        }
        s
    }

    /// Rows where the printed closed form differs from the verified one.
    pub fn notes(&self) -> Vec<String> {
        self.rows
            .iter()
            .filter(|r| r.printed_form_differs())
            .map(|r| {
                format!(
                    "({},{}): closed form {} = kernel rank {}, printed form gives {}",
                    r.a, r.b, r.dim_hs_formula, r.dim_hs_rank, r.printed_closed_form
                )
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsJson {
    pub context: ContextJson,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<u64>>,
    pub notes: Vec<String>,
}

impl From<&DimsTable> for DimsJson {
    fn from(t: &DimsTable) -> Self {
        DimsJson {
            context: ContextJson { p: t.p },
            columns: DimReport::HEADER.iter().map(|h| h.to_string()).collect(),
            rows: t.rows.iter().map(|r| r.row().to_vec()).collect(),
            notes: t.notes(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub ok: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub suite: String,
    pub context: ContextJson,
    pub degree_cap: u32,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
    pub notes: Vec<String>,
}

impl From<&SuiteReport> for VerifyJson {
    fn from(r: &SuiteReport) -> Self {
        VerifyJson {
            suite: r.suite.name().into(),
            context: ContextJson { p: r.p },
            degree_cap: r.degree_cap,
            passed: r.passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson { name: c.name.clone(), ok: c.ok(), cases: c.cases, failures: c.failures.clone() })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

fn verify_text(reports: &[SuiteReport]) -> String {
    let mut s: String = reports.iter().map(|r| r.to_string()).collect();
    let failing: Vec<String> =
        reports.iter().flat_map(|r| r.failed_checks().map(move |c| format!("{}: {}", r.suite, c.name))).collect();
    if failing.is_empty() {
        s.push_str("all checks passed\n");
    } else {
        let _ = writeln!(s, "{} failing identities:", failing.len());
        for f in failing {
            let _ = writeln!(s, "  {f}");
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplyJson {
    pub context: ContextJson,
    pub op: String,
    pub input: String,
    pub result: String,
}
