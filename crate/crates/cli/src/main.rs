//! `taut`: command-line front end for the tautological-ring engine.
//!
//! Results go to standard output, progress to standard error. Exit codes:
//! 0 success, 1 invalid arguments, 2 computation failure, 3 undetermined
//! (relation budget exhausted).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tautring::combinatorics::MultiIndex;
use tautring::export::{matrix_csv, matrix_json, relations_csv, relations_json};
use tautring::intersection::LiuXuTable;
use tautring::linalg::{is_prime, DEFAULT_PRIMES};
use tautring::pairing::{
    b_function, build_p_matrix, build_q_matrix, build_q_matrix_direct, is_anomaly,
    kernel_dimension_cg, kernel_dimension_mg, q_rank, sub_p_matrix, RankOptions, A_TABLE,
};
use tautring::pushforward::{gorenstein_with, Budget, RelationSearch, SearchStatus, Verdict};
use tautring::Error;

const EXIT_INVALID: u8 = 1;
const EXIT_FAILURE: u8 = 2;
const EXIT_UNDETERMINED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "taut", version, about = "Tautological rings of M_g and C_g")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Cache file for intersection constants (created if missing).
    #[arg(long, env = "TAUT_CACHE", global = true)]
    cache: Option<PathBuf>,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Comma-separated primes for the modular rank backend.
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,

    /// Largest short side of a matrix also ranked by exact elimination.
    #[arg(long, global = true, default_value_t = 400)]
    exact_limit: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of the pairing matrix Q_{g,i}.
    Rank {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        degree: usize,
    },
    /// Ranks of Q_{g,i} for a range of genera, one row per genus.
    Table {
        /// Inclusive range `a..b`, or a single genus.
        #[arg(long)]
        genus: GenusRange,
    },
    /// r(κ_m) for an exponent vector m with |m| = g-2.
    RValue {
        #[arg(long)]
        genus: u32,
        /// Exponent vector, e.g. `2` for κ_1² or `1,0,1` for κ_1κ_3.
        #[arg(long)]
        partition: MultiIndex,
    },
    /// Relations in R^i(C_g) and their solved forms.
    Relations {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compare pairing ranks with relation counts in every degree.
    Gorenstein {
        #[arg(long)]
        genus: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Kernel statistics a(l), b(l) and n.
    Kernel {
        #[arg(long, conflicts_with_all = ["genus", "degree"])]
        l: Option<usize>,
        #[arg(long, requires = "degree")]
        genus: Option<u32>,
        #[arg(long, requires = "genus")]
        degree: Option<usize>,
    },
    /// Export a pairing matrix.
    Matrix {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        degree: i64,
        #[arg(long, value_enum, default_value_t = MatrixKind::Q)]
        kind: MatrixKind,
        /// Row filter for `--kind p-sub`.
        #[arg(long, allow_hyphen_values = true)]
        sub: Option<i32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    P,
    PSub,
    Q,
    QDirect,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Largest j - g used for c_j(F_{2g-1} - E).
    #[arg(long, default_value_t = 4)]
    max_j_offset: usize,
    /// Do not multiply lower-degree relations by monomials.
    #[arg(long)]
    no_closure: bool,
    /// Cap on push-downs per degree.
    #[arg(long)]
    max_attempts: Option<usize>,
}

impl From<&BudgetArgs> for Budget {
    fn from(b: &BudgetArgs) -> Self {
        Budget {
            max_j_offset: b.max_j_offset,
            ideal_closure: !b.no_closure,
            max_attempts: b.max_attempts,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct GenusRange {
    start: u32,
    end: u32,
}

impl FromStr for GenusRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad genus `{x}`: {e}"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let g = parse(s)?;
                (g, g)
            }
        };
        Ok(GenusRange { start, end })
    }
}

/// A failed command: message plus exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) => EXIT_INVALID,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: msg.into(),
    }
}

/// What a command produced: text for stdout and an exit code.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

struct Context {
    format: Format,
    table: LiuXuTable,
    rank: RankOptions,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(invalid("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| invalid(format!("cannot size worker pool: {e}")))?;
    }
    let primes = cli
        .primes
        .clone()
        .unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
    if let Some(p) = primes.iter().find(|&&p| p < 3 || !is_prime(p)) {
        return Err(invalid(format!("--primes: {p} is not an odd prime")));
    }
    let table = match &cli.cache {
        Some(path) => LiuXuTable::load(path)?,
        None => LiuXuTable::new(),
    };
    let ctx = Context {
        format: cli.format,
        table,
        rank: RankOptions {
            primes,
            exact_limit: cli.exact_limit,
        },
    };
    let out = dispatch(&ctx, &cli.command)?;
    if let Some(path) = &cli.cache {
        let written = ctx.table.persist(path)?;
        if written > 0 {
            eprintln!("cache: appended {written} value(s) to {}", path.display());
        }
    }
    Ok(out)
}

fn dispatch(ctx: &Context, cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Rank { genus, degree } => cmd_rank(ctx, *genus, *degree),
        Command::Table { genus } => cmd_table(ctx, *genus),
        Command::RValue { genus, partition } => cmd_rvalue(ctx, *genus, partition),
        Command::Relations {
            genus,
            degree,
            budget,
        } => cmd_relations(ctx, *genus, *degree, &budget.into()),
        Command::Gorenstein { genus, budget } => cmd_gorenstein(ctx, *genus, &budget.into()),
        Command::Kernel { l, genus, degree } => match (l, genus, degree) {
            (Some(l), _, _) => cmd_kernel_l(ctx, *l),
            (None, Some(g), Some(k)) => cmd_kernel_gk(ctx, *g, *k),
            _ => Err(invalid("give either --l or both --genus and --degree")),
        },
        Command::Matrix {
            genus,
            degree,
            kind,
            sub,
        } => cmd_matrix(ctx, *genus, *degree, *kind, *sub),
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serialises");
    s.push('\n');
    s
}

fn check_genus(g: u32) -> Result<(), Failure> {
    if g < 2 {
        return Err(invalid(format!("genus must be at least 2, got {g}")));
    }
    Ok(())
}

fn cmd_rank(ctx: &Context, g: u32, i: usize) -> Result<Output, Failure> {
    check_genus(g)?;
    let report = q_rank(&ctx.table, g, i, &ctx.rank)?;
    let text = match ctx.format {
        Format::Human => format!("{}\n", report.rank),
        Format::Json => json_text(&serde_json::to_value(&report).expect("report serialises")),
        Format::Csv => format!(
            "genus,degree,rows,cols,rank,backend\n{},{},{},{},{},{}\n",
            report.genus, report.degree, report.rows, report.cols, report.rank, report.backend
        ),
    };
    Ok(Output::ok(text))
}

fn cmd_table(ctx: &Context, range: GenusRange) -> Result<Output, Failure> {
    if range.start <= range.end {
        check_genus(range.start)?;
    }
    let mut rows: Vec<(u32, Vec<Option<usize>>)> = Vec::new();
    let mut failed = false;
    for g in range.start..=range.end {
        eprintln!("table: genus {g}");
        let cells = (0..g as usize)
            .map(|i| match q_rank(&ctx.table, g, i, &ctx.rank) {
                Ok(r) => Some(r.rank),
                Err(e) => {
                    eprintln!("table: Q_{{{g},{i}}} failed: {e}");
                    failed = true;
                    None
                }
            })
            .collect();
        rows.push((g, cells));
    }
    let cell = |c: &Option<usize>| c.map_or("ERR".to_string(), |r| r.to_string());
    let text = match ctx.format {
        Format::Human => rows
            .iter()
            .map(|(g, cells)| {
                let cs: Vec<String> = cells.iter().map(cell).collect();
                format!("{g:>3} | {}\n", cs.join(" "))
            })
            .collect(),
        Format::Csv => {
            let width = rows.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
            let mut s = String::from("g");
            for i in 0..width {
                let _ = write!(s, ",{i}");
            }
            s.push('\n');
            for (g, cells) in &rows {
                let cs: Vec<String> = cells.iter().map(cell).collect();
                let pad = ",".repeat(width - cells.len());
                let _ = writeln!(s, "{g},{}{pad}", cs.join(","));
            }
            s
        }
        Format::Json => json_text(&Value::Array(
            rows.iter()
                .map(|(g, cells)| json!({ "genus": g, "ranks": cells }))
                .collect(),
        )),
    };
    Ok(Output {
        text,
        code: if failed { EXIT_FAILURE } else { 0 },
    })
}

fn cmd_rvalue(ctx: &Context, g: u32, m: &MultiIndex) -> Result<Output, Failure> {
    check_genus(g)?;
    let v = ctx.table.r_value(g, m)?;
    let text = match ctx.format {
        Format::Human => format!("{v}\n"),
        Format::Json => json_text(&json!({
            "genus": g,
            "partition": m.to_string(),
            "monomial": m.monomial_label(),
            "r": v.to_string(),
        })),
        Format::Csv => format!("genus,partition,r\n{g},\"{m}\",{v}\n"),
    };
    Ok(Output::ok(text))
}

fn progress(msg: &str) {
    eprintln!("{msg}");
}

fn cmd_relations(ctx: &Context, g: u32, i: usize, budget: &Budget) -> Result<Output, Failure> {
    check_genus(g)?;
    let mut search = RelationSearch::new(&ctx.table, g, budget.clone())?
        .with_rank_options(ctx.rank.clone())
        .with_progress(progress);
    let space = search.run_to(i)?;
    let labels: Vec<String> = space.basis.iter().map(ToString::to_string).collect();
    let text = match ctx.format {
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "R^{i}(C_{g}): {} monomial(s), {} independent relation(s)",
                labels.len(),
                space.rank()
            );
            for r in &space.relations {
                let _ = writeln!(s, "  {r}    [{}]", r.recipe);
            }
            let _ = writeln!(s, "reduced:");
            for f in space.reduced_forms() {
                let _ = writeln!(s, "  {f}");
            }
            if space.status == SearchStatus::BudgetExhausted {
                let _ = writeln!(
                    s,
                    "UNDETERMINED: found {} of {} relation(s) within budget",
                    space.rank(),
                    space.target
                );
            }
            s
        }
        Format::Json => {
            let mut v = relations_json(g, i, &labels, &space.relations);
            v["reduced"] = json!(space.reduced_forms());
            v["status"] = json!(space.status);
            v["target"] = json!(space.target);
            json_text(&v)
        }
        Format::Csv => relations_csv(&labels, &space.relations),
    };
    let code = match space.status {
        SearchStatus::Complete => 0,
        SearchStatus::BudgetExhausted => EXIT_UNDETERMINED,
    };
    Ok(Output { text, code })
}

fn cmd_gorenstein(ctx: &Context, g: u32, budget: &Budget) -> Result<Output, Failure> {
    check_genus(g)?;
    let mut search = RelationSearch::new(&ctx.table, g, budget.clone())?
        .with_rank_options(ctx.rank.clone())
        .with_progress(progress);
    let report = gorenstein_with(&mut search)?;
    let text = match ctx.format {
        Format::Human => {
            let mut s = format!("genus {g}\ndegree  monomials  lower  upper  matched\n");
            for d in &report.degrees {
                let _ = writeln!(
                    s,
                    "{:>6}  {:>9}  {:>5}  {:>5}  {}",
                    d.degree,
                    d.monomials,
                    d.lower,
                    d.upper,
                    if d.matched { "yes" } else { "no" }
                );
            }
            let _ = writeln!(s, "verdict: {}", report.verdict);
            if let Some(dims) = report.dimensions() {
                let ds: Vec<String> = dims.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "dims: {}", ds.join(","));
            }
            s
        }
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("report serialises");
            v["dimensions"] = json!(report.dimensions());
            json_text(&v)
        }
        Format::Csv => {
            let mut s = String::from("degree,monomials,lower,upper,matched\n");
            for d in &report.degrees {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    d.degree, d.monomials, d.lower, d.upper, d.matched
                );
            }
            s
        }
    };
    let code = match report.verdict {
        Verdict::Gorenstein => 0,
        Verdict::Undetermined => EXIT_UNDETERMINED,
    };
    Ok(Output { text, code })
}

/// `a(l)` table value, its recomputation at the smallest `g` with `2k ≤ g-2`,
/// `b(l)`, and `n` at the smallest `g` with `2k ≤ g-1`.
fn cmd_kernel_l(ctx: &Context, l: usize) -> Result<Output, Failure> {
    let b = b_function(l)?;
    let a = A_TABLE[l];
    let (ga, ka) = (2 * l as u32 + 8, l + 3);
    let a_computed = kernel_dimension_mg(&ctx.table, ga, ka, &ctx.rank)?;
    let (gn, kn) = (2 * l as u32 + 5, l + 2);
    let stats = kernel_dimension_cg(&ctx.table, gn, kn, &ctx.rank)?;
    let anomaly = is_anomaly(gn, kn);
    let text = match ctx.format {
        Format::Human => {
            let mut s = format!(
                "l={l} a={a} b={b} n={} (a recomputed at g={ga}, k={ka}: {a_computed}; n at g={gn}, k={kn})\n",
                stats.n
            );
            if stats.n as u64 != b {
                let tag = if anomaly { "known anomaly" } else { "unexpected" };
                let _ = writeln!(s, "note: n={} differs from b({l})={b} ({tag})", stats.n);
            }
            s
        }
        Format::Json => json_text(&json!({
            "l": l,
            "a": a,
            "a_recomputed": { "genus": ga, "degree": ka, "value": a_computed },
            "b": b,
            "n": stats,
            "anomaly": anomaly,
        })),
        Format::Csv => format!(
            "l,a,a_recomputed,b,n,genus,degree,anomaly\n{l},{a},{a_computed},{b},{},{gn},{kn},{anomaly}\n",
            stats.n
        ),
    };
    Ok(Output::ok(text))
}

fn cmd_kernel_gk(ctx: &Context, g: u32, k: usize) -> Result<Output, Failure> {
    check_genus(g)?;
    let stats = kernel_dimension_cg(&ctx.table, g, k, &ctx.rank)?;
    let b = if stats.l >= 0 && 2 * k < g as usize {
        b_function(stats.l as usize).ok()
    } else {
        None
    };
    let anomaly = is_anomaly(g, k);
    let text = match ctx.format {
        Format::Human => {
            let mut s = format!("g={g} k={k} l={} n={}", stats.l, stats.n);
            if let Some(b) = b {
                let _ = write!(s, " b({})={b}", stats.l);
                if b != stats.n as u64 {
                    s.push_str(if anomaly {
                        " ANOMALY (known)"
                    } else {
                        " MISMATCH"
                    });
                }
            }
            s.push('\n');
            s
        }
        Format::Json => json_text(&json!({ "stats": stats, "b": b, "anomaly": anomaly })),
        Format::Csv => format!(
            "genus,degree,l,monomials,rank,n,b,anomaly\n{g},{k},{},{},{},{},{},{anomaly}\n",
            stats.l,
            stats.monomial_count,
            stats.rank,
            stats.n,
            b.map_or(String::new(), |b| b.to_string())
        ),
    };
    Ok(Output::ok(text))
}

fn cmd_matrix(
    ctx: &Context,
    g: u32,
    degree: i64,
    kind: MatrixKind,
    sub: Option<i32>,
) -> Result<Output, Failure> {
    check_genus(g)?;
    if kind != MatrixKind::PSub && degree < 0 {
        return Err(invalid("degree must be non-negative"));
    }
    if kind != MatrixKind::PSub && sub.is_some() {
        return Err(invalid("--sub only applies to --kind p-sub"));
    }
    let m = match kind {
        MatrixKind::P => build_p_matrix(&ctx.table, g, degree as usize)?,
        MatrixKind::PSub => {
            let j = sub.ok_or_else(|| invalid("--kind p-sub needs --sub"))?;
            sub_p_matrix(&ctx.table, g, degree, j)?
        }
        MatrixKind::Q => build_q_matrix(&ctx.table, g, degree as usize)?,
        MatrixKind::QDirect => build_q_matrix_direct(&ctx.table, g, degree as usize)?,
    };
    let text = match ctx.format {
        Format::Json => json_text(&matrix_json(&m)),
        Format::Csv => matrix_csv(&m),
        Format::Human => {
            let mut s = format!(
                "{} g={} degree={} ({}x{})\n",
                m.construction,
                m.genus,
                m.degree,
                m.rows(),
                m.cols()
            );
            let _ = writeln!(s, "\t{}", m.col_labels.join("\t"));
            for (label, row) in m.row_labels.iter().zip(&m.entries) {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "{label}\t{}", cells.join("\t"));
            }
            s
        }
    };
    Ok(Output::ok(text))
}
