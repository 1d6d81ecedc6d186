use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use semitrans_core::graph::graph_from_lower;
use semitrans_core::ist::{classify_ist_with, empirical_ist_with, IstVerdict};
use semitrans_core::morphism::dump_patterns;
use semitrans_core::{
    check_split, iterate, parse_matrix, patterns_at, semi_transitive_oracle_with, split_graph, sweep, Budget,
    Condition3Reading, LowerTriangular, MorphismError, MorphismTriple, OracleLimits, SweepConfig, TritMatrix,
};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_DISAGREE: u8 = 4;

/// Semi-transitivity of split graphs and of iterated 2-D morphisms.
///
/// Exit codes: 0 yes (semi-transitive / infinite / clean sweep), 1 no,
/// 2 bad input, 3 resource bound hit, 4 methods disagree.
#[derive(Parser)]
#[command(name = "semitrans", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether G_o(M) is semi-transitive.
    Check(CheckArgs),
    /// Materialize M^k(A,B,C), its row patterns, or G_o^k as DOT.
    Iterate(IterateArgs),
    /// Classify IST(A,B,C) and cross-check against the iterates.
    Classify(ClassifyArgs),
    /// Cross-validate the classifier on every triple of one shape.
    Sweep(SweepArgs),
    /// Write G_o(M) as DOT or as a JSON edge list.
    ExportDot(ExportArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Matrix file, `-` for stdin.
    file: PathBuf,
    /// Use the path-search oracle instead of the row test.
    #[arg(long, conflicts_with = "both")]
    oracle: bool,
    /// Run both and fail with exit 4 when they disagree.
    #[arg(long)]
    both: bool,
    #[arg(long, default_value_t = OracleLimits::default().max_vertices)]
    max_vertices: usize,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = Budget::default().max_cells)]
    max_cells: u64,
    #[arg(long, default_value_t = Budget::default().max_patterns)]
    max_patterns: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { max_cells: self.max_cells, max_patterns: self.max_patterns }
    }
}

#[derive(Args)]
struct IterateArgs {
    /// Triple file (A, B, C separated by `---` lines), `-` for stdin.
    file: PathBuf,
    #[arg(short, long)]
    k: u32,
    /// Distinct rows in `v:len,...` form.
    #[arg(long, group = "format")]
    patterns: bool,
    /// The full matrix (default).
    #[arg(long, group = "format")]
    dense: bool,
    /// The split graph G_o^k in DOT.
    #[arg(long, group = "format")]
    dot: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct ClassifyArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 6)]
    kmax: u32,
    /// Read the central-zero condition as `1^p 0 1^{n-p-1}`.
    #[arg(long)]
    statement_reading: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long, default_value_t = 5)]
    kmax: u32,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    statement_reading: bool,
    /// Summary CSV path; stdout when absent.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Discrepancy dump (JSON lines); stderr count only when absent.
    #[arg(long)]
    discrepancies: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct ExportArgs {
    file: PathBuf,
    /// Emit `{"n", "edges"}` instead of DOT.
    #[arg(long)]
    json: bool,
    /// The input is a lower-triangular adjacency matrix, not a split-graph
    /// matrix.
    #[arg(long)]
    lower: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<MorphismError> for Failure {
    fn from(e: MorphismError) -> Self {
        let code = match e {
            MorphismError::CellBudget { .. } | MorphismError::PatternBudget { .. } | MorphismError::LengthOverflow { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn read_matrix(path: &Path) -> Result<TritMatrix, Failure> {
    parse_matrix(&read_input(path)?).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn read_triple(path: &Path) -> Result<MorphismTriple, Failure> {
    MorphismTriple::parse(&read_input(path)?).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::new(EXIT_INPUT, e.to_string())),
    }
}

fn print_json(v: &Value) {
    println!("{v}");
}

fn verdict_code(yes: bool) -> u8 {
    if yes {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn run_check(args: CheckArgs) -> Outcome {
    let m = read_matrix(&args.file)?;
    let limits = OracleLimits { max_vertices: args.max_vertices, ..OracleLimits::default() };
    let oracle = || semi_transitive_oracle_with(&split_graph(&m), limits).map_err(|e| Failure::new(EXIT_BUDGET, e.to_string()));
    if args.oracle {
        let v = oracle()?;
        let mut out = v.to_json();
        out["method"] = json!("oracle");
        print_json(&out);
        return Ok(verdict_code(v.is_semi_transitive()));
    }
    let v = check_split(&m);
    let mut out = v.to_json();
    out["method"] = json!("split");
    if args.both {
        let o = oracle()?;
        let agree = o.is_semi_transitive() == v.is_semi_transitive();
        out["oracle"] = o.to_json();
        out["agree"] = json!(agree);
        print_json(&out);
        if !agree {
            return Ok(EXIT_DISAGREE);
        }
        return Ok(verdict_code(v.is_semi_transitive()));
    }
    print_json(&out);
    Ok(verdict_code(v.is_semi_transitive()))
}

fn run_iterate(args: IterateArgs) -> Outcome {
    let t = read_triple(&args.file)?;
    let budget = args.budget.budget();
    let text = if args.patterns {
        dump_patterns(&patterns_at(&t, args.k, budget)?)
    } else if args.dot {
        split_graph(&iterate(&t, args.k, budget)?).to_dot(None)
    } else {
        iterate(&t, args.k, budget)?.to_string()
    };
    emit(args.output.as_deref(), &text)?;
    Ok(EXIT_YES)
}

fn run_classify(args: ClassifyArgs) -> Outcome {
    let t = read_triple(&args.file)?;
    let reading = if args.statement_reading { Condition3Reading::Statement } else { Condition3Reading::Proof };
    let unwrap = |e: semitrans_core::ist::IstError| match e {
        semitrans_core::ist::IstError::Morphism(m) => Failure::from(m),
    };
    let mut r = classify_ist_with(&t, reading).map_err(unwrap)?;
    r.empirical = Some(empirical_ist_with(&t, args.kmax, args.budget.budget()).map_err(unwrap)?);
    print_json(&r.to_json(None));
    if r.agrees() != Some(true) {
        return Ok(EXIT_DISAGREE);
    }
    Ok(verdict_code(matches!(r.verdict, IstVerdict::Infinite(_))))
}

fn run_sweep(args: SweepArgs) -> Outcome {
    let cfg = SweepConfig {
        rows: args.rows,
        cols: args.cols,
        kmax: args.kmax,
        jobs: args.jobs,
        reading: if args.statement_reading { Condition3Reading::Statement } else { Condition3Reading::Proof },
        budget: args.budget.budget(),
    };
    let s = sweep(&cfg).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    emit(args.summary.as_deref(), &s.to_csv())?;
    if let Some(p) = &args.discrepancies {
        emit(Some(p), &s.discrepancy_dump())?;
    }
    eprintln!("{} triples, {} discrepancies, {} all-zero-A edge cases", s.total, s.discrepancies.len(), s.edge_cases);
    Ok(if s.discrepancies.is_empty() { EXIT_YES } else { EXIT_DISAGREE })
}

fn run_export(args: ExportArgs) -> Outcome {
    let m = read_matrix(&args.file)?;
    let g = if args.lower {
        let l = LowerTriangular::new(m).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
        graph_from_lower(&l)
    } else {
        split_graph(&m)
    };
    let text = if args.json {
        format!("{}\n", serde_json::to_string(&g.to_edge_list()).expect("edge list serializes"))
    } else {
        g.to_dot(None)
    };
    emit(args.output.as_deref(), &text)?;
    Ok(EXIT_YES)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check(a) => run_check(a),
        Command::Iterate(a) => run_iterate(a),
        Command::Classify(a) => run_classify(a),
        Command::Sweep(a) => run_sweep(a),
        Command::ExportDot(a) => run_export(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
