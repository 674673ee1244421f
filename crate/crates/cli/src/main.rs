use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toroidal_core::characters::graded_dimension_check;
use toroidal_core::quiver::{builtin, parse_quiver_json, DimensionVector, QuiverWithWeights};
use toroidal_core::roots::FiniteType;
use toroidal_core::shuffle::{build_kernel, Algebra, KernelKind, ShuffleElement};
use toroidal_core::verify::{run_suite, suite_passed, CheckReport, SuiteConfig, Verdict};
use toroidal_core::LaurentPoly;

// a closed stdout (e.g. piped into `head`) ends the program quietly
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if write!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

/// Exact shuffle-algebra computations and relation checks.
#[derive(Parser)]
#[command(name = "toroidal", version)]
struct Cli {
    /// Worker threads for suites (overrides TOROIDAL_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct QuiverArgs {
    /// Builtin quiver: a1, a2, a3, kronecker, triple:<name>, super:<m>|<n>:<pattern>.
    #[arg(long, conflicts_with = "quiver")]
    builtin: Option<String>,
    /// Quiver JSON file.
    #[arg(long)]
    quiver: Option<PathBuf>,
}

impl QuiverArgs {
    fn load(&self) -> Result<Option<QuiverWithWeights>, String> {
        match (&self.builtin, &self.quiver) {
            (Some(name), _) => builtin(name).map(Some).map_err(|e| e.to_string()),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
                parse_quiver_json(&text).map(Some).map_err(|e| e.to_string())
            }
            (None, None) => Ok(None),
        }
    }

    fn load_or(&self, default: &str) -> Result<QuiverWithWeights, String> {
        Ok(match self.load()? {
            Some(q) => q,
            None => builtin(default).map_err(|e| e.to_string())?,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a shuffle kernel in factored and expanded form.
    Kernel {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long)]
        kind: Option<KernelKind>,
        /// Comma-separated dimension vector.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        gamma: String,
    },
    /// Multiply elements left to right: "e i n", "ediv i n r" or "poly d1,d2,.. <laurent polynomial>".
    Mul {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long)]
        kind: Option<KernelKind>,
        /// Largest total degree allowed for the product.
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long)]
        suite: String,
        /// Mode window "lo,hi".
        #[arg(long, allow_hyphen_values = true, default_value = "-2,2")]
        window: String,
        #[arg(long, default_value_t = 6)]
        qmax: u32,
        #[arg(long, default_value_t = 6)]
        zmax: i64,
        /// Largest entry of the dimension vectors in kernel derivations.
        #[arg(long, default_value_t = 2)]
        kernel_bound: u32,
        /// Also write the reports (in the chosen format) to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare graded dimensions three ways.
    Dims {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = 6)]
        qmax: u32,
        #[arg(long, default_value_t = 6)]
        zmax: i64,
    },
}

/// Input errors exit with 2, refuted checks with 1.
enum Failure {
    Input(String),
    Refuted(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn default_kind(qw: &QuiverWithWeights) -> KernelKind {
    if qw.is_super() {
        KernelKind::Super
    } else if qw.quiver.is_double() || qw.quiver.arrows.is_empty() {
        KernelKind::Bullet
    } else {
        KernelKind::Diamond
    }
}

fn parse_window(s: &str) -> Result<(i32, i32), Failure> {
    let bad = || Failure::Input(format!("bad window `{}` (expected lo,hi)", s));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let (a, b): (i32, i32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_element(alg: &Algebra, spec: &str) -> Result<ShuffleElement, Failure> {
    let qw = &alg.qw;
    let words: Vec<&str> = spec.split_whitespace().collect();
    let bad = || Failure::Input(format!("bad element `{}`", spec));
    let vertex = |w: &str| qw.quiver.vertex_index(w);
    match words.as_slice() {
        ["e", i, n] => Ok(alg.generator(vertex(i)?, n.parse().map_err(|_| bad())?, 1)?),
        ["ediv", i, n, r] => {
            Ok(alg.generator(vertex(i)?, n.parse().map_err(|_| bad())?, r.parse().map_err(|_| bad())?)?)
        }
        ["poly", d, ..] => {
            let expr = spec.trim_start().strip_prefix("poly").unwrap().trim_start().strip_prefix(d).unwrap();
            let degree = DimensionVector::parse(d, qw.rank())?;
            let value: LaurentPoly = expr.parse()?;
            let e = ShuffleElement { degree, value: value.into() };
            alg.certify_element(&e)?;
            Ok(e)
        }
        _ => Err(bad()),
    }
}

fn print_reports(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize") + "\n",
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let verdict = match r.verdict {
                    Verdict::Proved => "proved ",
                    Verdict::Refuted => "REFUTED",
                    Verdict::Skipped => "skipped",
                };
                out.push_str(&format!("{}  {}  ({} ms)\n", verdict, r.id, r.ms));
                if r.verdict == Verdict::Refuted {
                    let w = r.witness.as_deref().unwrap_or("");
                    let shown: String = w.chars().take(200).collect();
                    let more = if w.chars().count() > 200 { " …" } else { "" };
                    out.push_str(&format!("         witness: {}{}\n", shown, more));
                }
                if let Some(reason) = r.params.get("reason") {
                    out.push_str(&format!("         reason: {}\n", reason.as_str().unwrap_or_default()));
                }
            }
            let count = |v| reports.iter().filter(|r| r.verdict == v).count();
            out.push_str(&format!(
                "{} proved, {} refuted, {} skipped\n",
                count(Verdict::Proved),
                count(Verdict::Refuted),
                count(Verdict::Skipped)
            ));
            out
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Kernel { quiver, kind, alpha, gamma } => {
            let qw = quiver.load_or("a1")?;
            let kind = kind.unwrap_or_else(|| default_kind(&qw));
            let alpha = DimensionVector::parse(&alpha, qw.rank())?;
            let gamma = DimensionVector::parse(&gamma, qw.rank())?;
            let k = build_kernel(kind, &qw, &alpha, &gamma)?;
            let expanded = k.value.expand()?;
            match format {
                Format::Text => {
                    outln!("kernel {} on {}, alpha = {}, gamma = {}", kind, qw.name, alpha, gamma);
                    outln!("factored: {}", k.value);
                    outln!("expanded: {}", expanded);
                }
                Format::Json => outln!(
                    "{}",
                    serde_json::json!({
                        "kind": kind.name(), "quiver": qw.name, "alpha": alpha.to_string(),
                        "gamma": gamma.to_string(), "factored": k.value.to_string(), "expanded": expanded.to_string(),
                    })
                ),
            }
        }
        Command::Mul { quiver, kind, max_degree, elements } => {
            let qw = quiver.load_or("a1")?;
            let kind = kind.unwrap_or_else(|| default_kind(&qw));
            let alg = Algebra::new(qw, kind)?;
            let elems = elements.iter().map(|s| parse_element(&alg, s)).collect::<Result<Vec<_>, _>>()?;
            let total: u32 = elems.iter().map(|e| e.degree.total()).sum();
            if total > max_degree {
                return Err(Failure::Input(format!("total degree {} exceeds --max-degree {}", total, max_degree)));
            }
            let product = alg.mul_all(&elems)?;
            match format {
                Format::Text => {
                    outln!("degree: {}", product.degree);
                    outln!("value: {}", product.value);
                }
                Format::Json => outln!(
                    "{}",
                    serde_json::json!({ "degree": product.degree.to_string(), "value": product.value.to_string() })
                ),
            }
        }
        Command::Verify { quiver, suite, window, qmax, zmax, kernel_bound, output } => {
            let config = SuiteConfig {
                quiver: quiver.load()?,
                window: parse_window(&window)?,
                qmax,
                zmax,
                kernel_bound,
                threads: cli.threads,
                ..SuiteConfig::default()
            };
            let reports = run_suite(&suite, &config)?;
            let text = print_reports(&reports, format);
            if let Some(path) = output {
                std::fs::write(&path, &text).map_err(|e| format!("{}: {}", path.display(), e))?;
            }
            out!("{}", text);
            if !suite_passed(&reports) {
                return Err(Failure::Refuted(format!("suite {} has refuted checks", suite)));
            }
        }
        Command::Dims { ty, qmax, zmax } => {
            let ft: FiniteType = ty.parse()?;
            let report = graded_dimension_check(ft, qmax, zmax)?;
            match format {
                Format::Json => outln!("{}", serde_json::to_string_pretty(&report)?),
                Format::Text => {
                    outln!("{:>4}  {:<16} {:>10} {:>10} {:>10}  agree", "q", "z", "dimY", "form4", "pbw");
                    for r in &report.rows {
                        let z = r.z.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
                        outln!("{:>4}  {:<16} {:>10} {:>10} {:>10}  {}", r.q, z, r.dim_y, r.form4, r.pbw, r.agree);
                    }
                    outln!("all agree: {}", report.all_agree);
                }
            }
            if !report.all_agree {
                return Err(Failure::Refuted("graded dimensions disagree".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Refuted(msg)) => {
            eprintln!("{}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
