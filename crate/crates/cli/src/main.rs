use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use delbound::bounds::{BoundReport, DEFAULT_MAX_STRINGS};
use delbound::codebooks::{self, verify_codebook, Codebook};
use delbound::exact::{max_independent_set, LineGraph, MisOptions, DEFAULT_BUDGET_NODES};
use delbound::hypergraph::{DeletionHypergraph, HypergraphLimits};
use delbound::lp::mps::write_mps;
use delbound::lp::symmetry::Folding;
use delbound::lp::{solve_fractional_matching, solve_fractional_transversal, LpMode, LpOptions, LpProblem};
use delbound::rate::{rate_bound, uniform_grid};
use delbound::report::{self, Table, TableOptions};
use delbound::rll::{self, ConstrainedOptions, RllSpec};
use delbound::Error;

const EXIT_MISMATCH: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "delbound", about = "Bounds and exact values for deletion-correcting codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form and enumerative upper bounds
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Fractional matching and transversal LPs
    #[command(subcommand)]
    Lp(LpCmd),
    /// Exact matching number by independent-set search
    #[command(subcommand)]
    Exact(ExactCmd),
    /// Known codes and codebook verification
    #[command(subcommand)]
    Codes(CodesCmd),
    /// Comparison table: 1a (q=2), 1b (q=3), 1c (q=4), 1d (q=5)
    Table {
        which: String,
        #[command(flatten)]
        caps: Caps,
        /// Hypergraphs with at most this many edges also get an exact matching number
        #[arg(long, default_value_t = 0)]
        exact_max_edges: usize,
        #[arg(long)]
        json: bool,
    },
    /// Figure data as CSV: 1 (rate bound curves) or 2 (U versus Levenshtein)
    Fig {
        which: u8,
        /// Grid step for figure 1
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
    },
    /// Invariant suites: invariants, oracles, duality, rll
    Suite { name: String },
}

#[derive(Args, Clone)]
struct Caps {
    /// Largest problem attempted: LP variables after folding, or line-graph vertices
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Float)]
    lp_mode: Mode,
    #[arg(long, default_value_t = DEFAULT_BUDGET_NODES)]
    budget_nodes: u64,
    /// Solve the full LP instead of the symmetry-folded one
    #[arg(long)]
    no_symmetry: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Float,
    Exact,
}

impl From<Mode> for LpMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Float => LpMode::Float,
            Mode::Exact => LpMode::Exact,
        }
    }
}

#[derive(Args)]
struct Instance {
    #[arg(long, default_value_t = 2)]
    q: u8,
    #[arg(long, default_value_t = 1)]
    s: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum BoundCmd {
    /// All single-deletion bounds for (q, n)
    Single {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long)]
        n: u64,
    },
    /// All s-deletion bounds for (q, s, n)
    Multi {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        n: u64,
    },
    /// Asymptotic rate bound at relative deletion fraction tau
    Rate {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        tau: f64,
    },
    /// Bound for (d, infinity) run-length-limited sources
    Rll {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Also compute the LP and exact matching number of the constrained hypergraph
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LpSide {
    Matching,
    Transversal,
}

#[derive(Subcommand)]
enum LpCmd {
    Solve {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, value_enum, default_value_t = LpSide::Matching)]
        side: LpSide,
        #[command(flatten)]
        caps: Caps,
        /// Include the optimal weights
        #[arg(long)]
        weights: bool,
    },
    /// Write the LP (or ILP with --integer) in MPS format
    Export {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, value_enum, default_value_t = LpSide::Matching)]
        side: LpSide,
        #[arg(long)]
        integer: bool,
        #[arg(long)]
        folded: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExactCmd {
    /// Maximum independent set in the line graph
    Mis {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        caps: Caps,
        /// Start from VT_0(n) as incumbent (q=2, s=1)
        #[arg(long)]
        seed_vt: bool,
        /// Write the witness codebook here
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CodesCmd {
    /// VT_a(n)
    Vt {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        a: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Tenengolts code; without beta/gamma, the largest of the family
    Tenengolts {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "gamma")]
        beta: Option<u64>,
        #[arg(long, requires = "beta")]
        gamma: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a newline-delimited codebook
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u8,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
}

enum Failure {
    Error(Error),
    Io(String),
    Mismatch(serde_json::Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<(), Failure>;

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        std::process::exit(0);
    }
}

fn print_json(v: &serde_json::Value) {
    out(&format!("{}\n", serde_json::to_string_pretty(v).expect("json")));
}

fn emit(text: &str, output: &Option<PathBuf>) -> Outcome {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            out(text);
            Ok(())
        }
    }
}

fn limits(caps: &Caps) -> HypergraphLimits {
    match caps.max_vertices {
        Some(m) => HypergraphLimits { max_edges: m as u64 },
        None => HypergraphLimits::default(),
    }
}

fn lp_options(caps: &Caps) -> LpOptions {
    LpOptions { mode: caps.lp_mode.into(), symmetry: !caps.no_symmetry, ..Default::default() }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Bound(cmd) => bound(cmd),
        Command::Lp(cmd) => lp(cmd),
        Command::Exact(ExactCmd::Mis { inst, caps, seed_vt, witness_out }) => {
            let h = DeletionHypergraph::build(inst.q, inst.s, inst.n, limits(&caps))?;
            let cap = caps.max_vertices.unwrap_or(delbound::exact::DEFAULT_MAX_LINE_VERTICES);
            let g = LineGraph::from_hypergraph(&h, cap)?;
            let initial = if seed_vt && inst.q == 2 && inst.s == 1 {
                let vt = codebooks::vt_code(inst.n, 0)?;
                Some(vt.members.iter().filter_map(|x| g.labels().index_of(x)).collect())
            } else {
                None
            };
            let r = max_independent_set(&g, &MisOptions { budget_nodes: caps.budget_nodes, initial, ..Default::default() })?;
            if let Some(p) = &witness_out {
                emit(&r.witness.to_text(), &Some(p.clone()))?;
            }
            let mut v = serde_json::to_value(&r).expect("json");
            v["witness"] = json!(r.witness.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            v["line_graph"] = json!({ "vertices": g.len(), "max_degree": g.max_degree(), "provenance": g.provenance });
            print_json(&v);
            Ok(())
        }
        Command::Codes(cmd) => codes(cmd),
        Command::Table { which, caps, exact_max_edges, json } => {
            let table = Table::parse(&which)?;
            let opts = TableOptions {
                max_lp_vars: caps.max_vertices.unwrap_or(TableOptions::default().max_lp_vars),
                lp_mode: caps.lp_mode.into(),
                symmetry: !caps.no_symmetry,
                exact_max_edges,
                budget_nodes: caps.budget_nodes,
            };
            let rep = report::table1(table, &opts)?;
            if json {
                print_json(&serde_json::to_value(&rep).expect("json"));
            } else {
                out(&rep.to_csv());
            }
            if !rep.matches_reference() {
                let bad: Vec<_> = rep
                    .rows
                    .iter()
                    .filter(|r| !r.mismatches.is_empty() || !r.order_violations.is_empty())
                    .map(|r| json!({ "n": r.n, "mismatches": r.mismatches, "order": r.order_violations }))
                    .collect();
                return Err(Failure::Mismatch(json!(bad)));
            }
            // LP values are required up to n = 12 in the binary table and everywhere else
            let required = |n: usize| table != Table::A || n <= 12;
            let missing: Vec<usize> = rep.skipped().into_iter().filter(|&n| required(n)).collect();
            if !missing.is_empty() {
                return Err(Failure::Error(Error::Resource {
                    what: "LP rows skipped under the cap",
                    needed: missing.len() as u128,
                    cap: 0,
                }));
            }
            Ok(())
        }
        Command::Fig { which: 1, step } => {
            let grid = uniform_grid(0.0, 0.5 - step / 2.0, step);
            let curves = report::fig1_data(&[2, 3, 4, 5], &grid)?;
            out(&report::fig1_csv(&curves));
            Ok(())
        }
        Command::Fig { which: 2, .. } => {
            let rows = report::fig2_data(&[2, 3, 4], 15..=30)?;
            out(&report::fig2_csv(&rows));
            let bad: Vec<_> = rows.iter().filter(|r| !r.dominates()).map(|r| json!({ "s": r.s, "n": r.n })).collect();
            if bad.is_empty() {
                Ok(())
            } else {
                Err(Failure::Mismatch(json!(bad)))
            }
        }
        Command::Fig { which, .. } => Err(Failure::Error(Error::Domain(format!("unknown figure {which}, expected 1 or 2")))),
        Command::Suite { name } => {
            let summary = report::run_suite(&name)?;
            print_json(&summary.to_json());
            if summary.passed() {
                Ok(())
            } else {
                Err(Failure::Mismatch(json!({ "suite": name })))
            }
        }
    }
}

fn bound(cmd: BoundCmd) -> Outcome {
    match cmd {
        BoundCmd::Single { q, n } => print_json(&serde_json::to_value(BoundReport::compute(q, 1, n, DEFAULT_MAX_STRINGS)?).expect("json")),
        BoundCmd::Multi { q, s, n } => {
            let rep = BoundReport::compute(q, s, n, DEFAULT_MAX_STRINGS)?;
            let lev = delbound::bounds::levenshtein_bound(q, s, n)?;
            let mut v = serde_json::to_value(rep).expect("json");
            v["levenshtein_argmin"] = json!(lev.argmin);
            print_json(&v);
        }
        BoundCmd::Rate { q, tau } => print_json(&json!({ "q": q, "tau": tau, "bound": rate_bound(q, tau)? })),
        BoundCmd::Rll { n, d, exact } => {
            let b = rll::rll_bound(n, d)?;
            let mut v = json!({ "n": n, "d": d, "bound": report::rational_json(&b) });
            if exact {
                let set = rll::rll_set(RllSpec::unbounded(n, d)?)?;
                let cb = rll::constrained_bounds(&set, 1, &ConstrainedOptions::default())?;
                v["source_size"] = json!(set.len());
                v["constrained"] = serde_json::to_value(&cb).expect("json");
                v["chain_holds"] = json!(rll::check_constrained_chain(&cb));
            }
            print_json(&v);
        }
    }
    Ok(())
}

fn lp(cmd: LpCmd) -> Outcome {
    match cmd {
        LpCmd::Solve { inst, side, caps, weights } => {
            let h = DeletionHypergraph::build(inst.q, inst.s, inst.n, limits(&caps))?;
            let opts = lp_options(&caps);
            let sol = match side {
                LpSide::Matching => solve_fractional_matching(&h, &opts)?,
                LpSide::Transversal => solve_fractional_transversal(&h, &opts)?,
            };
            let mut v = sol.to_json();
            if !weights {
                v.as_object_mut().expect("object").remove("weights");
            }
            v["floor"] = json!(sol.floor());
            v["q"] = json!(inst.q);
            v["s"] = json!(inst.s);
            v["n"] = json!(inst.n);
            print_json(&v);
            Ok(())
        }
        LpCmd::Export { inst, side, integer, folded, output } => {
            let h = DeletionHypergraph::build(inst.q, inst.s, inst.n, HypergraphLimits::default())?;
            let mut p = match (side, folded) {
                (LpSide::Matching, false) => LpProblem::matching(&h),
                (LpSide::Transversal, false) => LpProblem::transversal(&h),
                (LpSide::Matching, true) => Folding::new(&h).matching_lp(&h),
                (LpSide::Transversal, true) => Folding::new(&h).transversal_lp(&h),
            };
            if integer {
                if folded {
                    return Err(Failure::Error(Error::Domain("the folded LP has no integer counterpart".into())));
                }
                p = p.as_integer();
            }
            emit(&write_mps(&p), &output)
        }
    }
}

fn codes(cmd: CodesCmd) -> Outcome {
    let describe = |c: &Codebook| json!({ "q": c.q, "n": c.n, "s": c.s, "size": c.len(), "provenance": c.provenance.to_string() });
    match cmd {
        CodesCmd::Vt { n, a, output } => {
            let c = codebooks::vt_code(n, a)?;
            match output {
                Some(_) => {
                    emit(&c.members.to_text(), &output)?;
                    print_json(&describe(&c));
                }
                None => out(&c.members.to_text()),
            }
        }
        CodesCmd::Tenengolts { q, n, beta, gamma, output } => {
            let c = match (beta, gamma) {
                (Some(b), Some(g)) => codebooks::tenengolts_code(q, n, b, g)?,
                _ => codebooks::tenengolts_family_max(q, n)?,
            };
            match output {
                Some(_) => {
                    emit(&c.members.to_text(), &output)?;
                    print_json(&describe(&c));
                }
                None => out(&c.members.to_text()),
            }
        }
        CodesCmd::Verify { file, q, s } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
            let c = Codebook::from_text(q, s, &text)?;
            let r = verify_codebook(&c)?;
            let mut v = describe(&c);
            v["valid"] = json!(r.valid);
            v["violation"] = json!(r.violation.map(|(a, b)| [a.to_string(), b.to_string()]));
            print_json(&v);
            if !r.valid {
                return Err(Failure::Mismatch(json!("codebook is not deletion-correcting")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(detail)) => {
            eprintln!("check failed: {detail}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Error(e @ Error::Resource { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_RESOURCE)
        }
        Err(Failure::Error(e @ (Error::Construction(_) | Error::Internal(_)))) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
