//! Command-line front end. [`run`] returns the process exit code: 0 on
//! success, 1 when a constraint or contract is violated, 2 on usage and
//! input errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cycle_packing::{combined_design, PeriodCycle, DEFAULT_MAX_PERIOD};
use crate::error::Error;
use crate::hardness::{
    assignment_to_cycles, build_reduction, check_disjoint_cycles, cycles_to_assignment,
    parse_assignment, parse_dimacs, random_instance, write_dimacs,
};
use crate::ilp::{
    build_model, export_lp, extract_tags, parse_lp, solve_ilp, solve_lp, Formulation, IlpStatus,
    LpStatus, ModelOptions, ModelSize,
};
use crate::token_graph::{build_layered, build_token_graph, Stability};
use crate::tokens::{DnaString, TokenSet, DEFAULT_MAX_C};
use crate::tree_search::{tree_search, Availability, Pairwise, Provenance, TagSet, TokenMode};
use crate::verify::{parse_tags, provenance_word, stats, stats_of, verify_tagset, Stats};

pub const TIME_LIMIT_ENV: &str = "TAGFORGE_TIME_LIMIT";
pub const DEFAULT_TIME_LIMIT_SECS: f64 = 600.0;

#[derive(Parser, Debug)]
#[command(name = "tagforge", version, about = "DNA tag set design under the c-token model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List all c-tokens as `<text> <weight> <class>`.
    Tokens(TokensArgs),
    /// Write the token graph or a layered graph as an edge list.
    Graph(GraphArgs),
    /// Design a tag set.
    Design(DesignArgs),
    /// Solve the LP relaxation of an LP file and print its objective.
    SolveLp(SolveLpArgs),
    /// Check a tag file against the design constraints.
    Verify(VerifyArgs),
    /// Print tag, token and cyclic-share statistics of a tag file.
    Stats(StatsArgs),
    /// MAX-2-SAT-3 to cycle packing reduction tools.
    #[command(subcommand)]
    Hardness(HardnessCommand),
    /// Run a grid of designs and compare against reference values.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct TokensArgs {
    #[arg(long)]
    c: u32,
    #[arg(long)]
    count_only: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_C)]
    max_c: u32,
}

#[derive(Args, Debug, Clone, Copy)]
#[group(required = true, multiple = false)]
struct StabilityArgs {
    /// Tag length l.
    #[arg(long)]
    length: Option<u32>,
    /// Minimum tag weight h.
    #[arg(long)]
    min_weight: Option<u32>,
}

impl StabilityArgs {
    fn get(self) -> Stability {
        match (self.length, self.min_weight) {
            (Some(l), _) => Stability::Length(l),
            (_, Some(h)) => Stability::Weight(h),
            _ => unreachable!("clap requires one of the two"),
        }
    }
}

#[derive(Args, Debug)]
struct GraphArgs {
    #[arg(long)]
    c: u32,
    #[arg(long, group = "shape")]
    length: Option<u32>,
    #[arg(long, group = "shape")]
    min_weight: Option<u32>,
    /// The de Bruijn-like graph on c-tokens instead of a layered graph.
    #[arg(long, group = "shape")]
    token_graph: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Tree,
    CycleTree,
    Ilp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PairwiseArg {
    #[value(name = "C")]
    C,
    #[value(name = "Cbar")]
    Cbar,
}

impl From<PairwiseArg> for Pairwise {
    fn from(p: PairwiseArg) -> Pairwise {
        match p {
            PairwiseArg::C => Pairwise::C,
            PairwiseArg::Cbar => Pairwise::Cbar,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TokenModeArg {
    Unique,
    Multiple,
}

impl From<TokenModeArg> for TokenMode {
    fn from(m: TokenModeArg) -> TokenMode {
        match m {
            TokenModeArg::Unique => TokenMode::Unique,
            TokenModeArg::Multiple => TokenMode::Multiple,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormulationArg {
    Full,
    Reduced,
    Presolved,
}

impl From<FormulationArg> for Formulation {
    fn from(f: FormulationArg) -> Formulation {
        match f {
            FormulationArg::Full => Formulation::Full,
            FormulationArg::Reduced => Formulation::Reduced,
            FormulationArg::Presolved => Formulation::Presolved,
        }
    }
}

#[derive(Args, Debug)]
struct DesignArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long)]
    c: u32,
    #[command(flatten)]
    stability: StabilityArgs,
    #[arg(long, value_enum, default_value = "C")]
    pairwise: PairwiseArg,
    /// Defaults to `multiple` for the heuristics; the ILP is always `unique`.
    #[arg(long, value_enum)]
    token_mode: Option<TokenModeArg>,
    #[arg(long, default_value_t = DEFAULT_MAX_PERIOD)]
    max_period: usize,
    /// Write the accepted periods, one per line.
    #[arg(long)]
    emit_periods: Option<PathBuf>,
    /// Leave out the paired C0 cut rows.
    #[arg(long)]
    no_cut5: bool,
    #[arg(long, value_enum, default_value = "presolved")]
    formulation: FormulationArg,
    /// Seconds; overrides TAGFORGE_TIME_LIMIT.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    export_lp: Option<PathBuf>,
    /// Stop after writing the LP file.
    #[arg(long, requires = "export_lp")]
    export_only: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the provenance column.
    #[arg(long)]
    plain: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveLpArgs {
    #[arg(long)]
    model: PathBuf,
    /// Solve with the binaries enforced instead of relaxed.
    #[arg(long)]
    integer: bool,
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    tags: PathBuf,
    #[arg(long)]
    c: u32,
    #[command(flatten)]
    stability: StabilityArgs,
    #[arg(long, value_enum, default_value = "C")]
    pairwise: PairwiseArg,
    #[arg(long, value_enum, default_value = "multiple")]
    token_mode: TokenModeArg,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long)]
    tags: PathBuf,
    #[arg(long)]
    c: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum HardnessCommand {
    /// Build the reduction graph of a DIMACS formula.
    Gen {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Close the free labeled vertices into one extra cycle so every
        /// vertex has in- and out-degree 2.
        #[arg(long)]
        pad: bool,
    },
    /// Map an assignment to a packing and back, checking both bounds.
    Roundtrip {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
    },
    /// Write a random MAX-2-SAT-3 formula in DIMACS format.
    Random {
        #[arg(long)]
        vars: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BenchMethod {
    Tree,
    Unique,
    CycleTree,
    Ilp,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Single value or inclusive range, e.g. `4-5`.
    #[arg(long, default_value = "4-5")]
    c: String,
    /// Comma-separated tag lengths.
    #[arg(long, group = "shape")]
    length: Option<String>,
    /// Comma-separated minimum weights.
    #[arg(long, group = "shape")]
    min_weight: Option<String>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "tree,unique,cycle-tree")]
    method: Vec<BenchMethod>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "C")]
    pairwise: Vec<PairwiseArg>,
    #[arg(long, default_value_t = DEFAULT_MAX_PERIOD)]
    max_period: usize,
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    json: bool,
}

/// A failure mapped to an exit code.
enum Failure {
    Usage(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Contract(_) => Failure::Violation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Tokens(a) => cmd_tokens(a),
        Command::Graph(a) => cmd_graph(a),
        Command::Design(a) => cmd_design(a),
        Command::SolveLp(a) => cmd_solve_lp(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Hardness(h) => cmd_hardness(h),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Violation(msg)) => {
            eprintln!("tagforge: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("tagforge: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or to stdout when it is `None`.
fn emit(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> CliResult {
    match path {
        Some(p) => {
            let file = fs::File::create(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            let mut w = io::BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            // A closed pipe (`| head`) is not an error.
            match f(&mut w).and_then(|()| w.flush()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn time_limit(flag: Option<f64>) -> std::result::Result<Duration, Failure> {
    let secs = match flag {
        Some(s) => s,
        None => match std::env::var(TIME_LIMIT_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{TIME_LIMIT_ENV}={v:?} is not a number of seconds")))?,
            Err(_) => DEFAULT_TIME_LIMIT_SECS,
        },
    };
    Duration::try_from_secs_f64(secs)
        .ok()
        .filter(|d| !d.is_zero())
        .ok_or_else(|| Failure::Usage(format!("time limit must be positive, got {secs}")))
}

fn cmd_tokens(a: TokensArgs) -> CliResult {
    let tokens = TokenSet::with_max(a.c, a.max_c)?;
    emit(None, |w| {
        if a.count_only {
            return writeln!(w, "{}", tokens.len());
        }
        if a.json {
            let list: Vec<_> = tokens
                .iter()
                .map(|(_, t)| json!({"text": t.text, "weight": t.weight, "class": t.class.name()}))
                .collect();
            serde_json::to_writer(&mut *w, &list)?;
            return writeln!(w);
        }
        for (_, t) in tokens.iter() {
            writeln!(w, "{} {} {}", t.text, t.weight, t.class.name())?;
        }
        Ok(())
    })
}

fn cmd_graph(a: GraphArgs) -> CliResult {
    let tokens = TokenSet::new(a.c)?;
    let out = a.out.as_deref();
    if a.token_graph {
        let g = build_token_graph(&tokens);
        return emit(out, |w| g.write_edge_list(&tokens, w));
    }
    let mode = match (a.length, a.min_weight) {
        (Some(l), _) => Stability::Length(l),
        (_, Some(h)) => Stability::Weight(h),
        _ => {
            return Err(Failure::Usage(
                "one of --length, --min-weight or --token-graph is required".into(),
            ))
        }
    };
    let g = build_layered(&tokens, mode)?;
    emit(out, |w| g.write_edge_list(&tokens, w))
}

#[derive(Serialize)]
struct DesignParams {
    method: &'static str,
    c: u32,
    stability: String,
    pairwise: String,
    token_mode: String,
    max_period: Option<usize>,
    cut5: Option<bool>,
    formulation: Option<Formulation>,
    time_limit_s: Option<f64>,
}

#[derive(Serialize)]
struct IlpSummary {
    status: IlpStatus,
    objective: f64,
    bound: f64,
    lp: f64,
    nodes: u64,
    size: ModelSize,
}

fn write_tags(w: &mut dyn Write, set: &TagSet, plain: bool) -> io::Result<()> {
    for t in &set.tags {
        if plain {
            writeln!(w, "{}", t.seq)?;
        } else {
            writeln!(w, "{} {}", t.seq, provenance_word(t.provenance))?;
        }
    }
    Ok(())
}

fn check(set: &TagSet) -> CliResult {
    let seqs: Vec<DnaString> = set.sequences().cloned().collect();
    let report = verify_tagset(&seqs, set.c, set.stability, set.pairwise, set.token_mode);
    if report.is_feasible() {
        return Ok(());
    }
    for v in &report.violations {
        eprintln!("violation: {v}");
    }
    Err(Failure::Violation(format!(
        "designed set failed verification ({} violations); nothing written",
        report.violations.len()
    )))
}

fn cmd_design(a: DesignArgs) -> CliResult {
    let start = Instant::now();
    let stability = a.stability.get();
    let pairwise: Pairwise = a.pairwise.into();
    let tokens = TokenSet::new(a.c)?;
    let mut periods: Option<Vec<PeriodCycle>> = None;
    let mut ilp_summary = None;
    let mut params = DesignParams {
        method: "",
        c: a.c,
        stability: stability.to_string(),
        pairwise: pairwise.to_string(),
        token_mode: String::new(),
        max_period: None,
        cut5: None,
        formulation: None,
        time_limit_s: None,
    };
    if a.emit_periods.is_some() && a.method != Method::CycleTree {
        return Err(Failure::Usage("--emit-periods needs --method cycle-tree".into()));
    }
    let set = match a.method {
        Method::Tree => {
            let mode: TokenMode = a.token_mode.unwrap_or(TokenModeArg::Multiple).into();
            params.method = "tree";
            params.token_mode = mode.to_string();
            let mut avail = Availability::new(&tokens, pairwise);
            tree_search(&tokens, stability, pairwise, mode, &mut avail)
        }
        Method::CycleTree => {
            if a.token_mode == Some(TokenModeArg::Unique) {
                return Err(Failure::Usage("cycle-tree designs allow repeated tokens only".into()));
            }
            params.method = "cycle-tree";
            params.token_mode = TokenMode::Multiple.to_string();
            params.max_period = Some(a.max_period);
            let (set, cycles) = combined_design(&tokens, stability, pairwise, a.max_period);
            periods = Some(cycles);
            set
        }
        Method::Ilp => {
            if pairwise != Pairwise::C {
                return Err(Failure::Usage("the ILP supports --pairwise C only".into()));
            }
            if a.token_mode == Some(TokenModeArg::Multiple) {
                return Err(Failure::Usage("ILP designs use every token at most once".into()));
            }
            let limit = time_limit(a.time_limit)?;
            let opts = ModelOptions {
                cut5: !a.no_cut5,
                formulation: a.formulation.into(),
            };
            params.method = "ilp";
            params.token_mode = TokenMode::Unique.to_string();
            params.cut5 = Some(opts.cut5);
            params.formulation = Some(opts.formulation);
            params.time_limit_s = Some(limit.as_secs_f64());
            let g = build_layered(&tokens, stability)?;
            let model = build_model(&g, &tokens, opts);
            if let Some(p) = &a.export_lp {
                emit(Some(p), |w| export_lp(&model, w))?;
            }
            if a.export_only {
                let s = model.size();
                eprintln!("{} rows {} columns {} nonzeros", s.rows, s.vars, s.nonzeros);
                return Ok(());
            }
            let sol = solve_ilp(&model, limit)?;
            match sol.status {
                IlpStatus::Optimal => {}
                IlpStatus::TimeLimit => eprintln!(
                    "warning: time limit reached; incumbent {} with bound {}",
                    sol.objective, sol.bound
                ),
                IlpStatus::Infeasible => {
                    return Err(Failure::Violation("the model is infeasible".into()))
                }
            }
            let set = extract_tags(&model, &sol.values, &g, &tokens)?;
            ilp_summary = Some(IlpSummary {
                status: sol.status,
                objective: sol.objective,
                bound: sol.bound,
                lp: sol.root_lp,
                nodes: sol.nodes,
                size: model.size(),
            });
            set
        }
    };
    check(&set)?;
    let st = stats(&set);
    let runtime = start.elapsed().as_secs_f64();

    if let (Some(path), Some(cycles)) = (&a.emit_periods, &periods) {
        emit(Some(path), |w| {
            cycles.iter().try_for_each(|p| writeln!(w, "{}", p.period))
        })?;
    }
    emit(a.out.as_deref(), |w| {
        if a.json {
            let tags: Vec<_> = set
                .tags
                .iter()
                .map(|t| json!({"seq": t.seq, "provenance": provenance_word(t.provenance)}))
                .collect();
            let doc = json!({
                "parameters": params,
                "stats": st,
                "ilp": ilp_summary,
                "tags": tags,
            });
            serde_json::to_writer_pretty(&mut *w, &doc)?;
            writeln!(w)
        } else {
            write_tags(w, &set, a.plain)
        }
    })?;
    eprintln!("{} {} {:.1}", st.tags, st.c_tokens, st.pct_cyclic);
    if let Some(path) = &a.manifest {
        let doc = json!({
            "tool": "tagforge",
            "version": env!("CARGO_PKG_VERSION"),
            "command": "design",
            "parameters": params,
            "num_tokens": tokens.len(),
            "stats": st,
            "ilp": ilp_summary,
            "runtime_s": runtime,
        });
        emit(Some(path), |w| {
            serde_json::to_writer_pretty(&mut *w, &doc)?;
            writeln!(w)
        })?;
    }
    Ok(())
}

fn cmd_solve_lp(a: SolveLpArgs) -> CliResult {
    let model = parse_lp(&read(&a.model)?)?;
    if a.integer {
        let sol = solve_ilp(&model, time_limit(a.time_limit)?)?;
        return match sol.status {
            IlpStatus::Infeasible => Err(Failure::Violation("infeasible".into())),
            IlpStatus::TimeLimit => {
                println!("{:.6}", sol.objective);
                eprintln!("time limit reached; bound {:.6}", sol.bound);
                Ok(())
            }
            IlpStatus::Optimal => {
                println!("{:.6}", sol.objective);
                Ok(())
            }
        };
    }
    let limit = a.time_limit.map(|_| time_limit(a.time_limit)).transpose()?;
    let sol = solve_lp(&model, limit)?;
    match sol.status {
        LpStatus::Optimal => {
            println!("{:.6}", sol.objective);
            Ok(())
        }
        LpStatus::Infeasible => Err(Failure::Violation("infeasible".into())),
        LpStatus::IterationLimit => Err(Failure::Violation("time limit reached".into())),
    }
}

fn load_tags(path: &Path) -> std::result::Result<Vec<(DnaString, Option<Provenance>)>, Failure> {
    let text = read(path)?;
    parse_tags(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_verify(a: VerifyArgs) -> CliResult {
    let tags: Vec<DnaString> = load_tags(&a.tags)?.into_iter().map(|(s, _)| s).collect();
    let stability = a.stability.get();
    let report = verify_tagset(&tags, a.c, stability, a.pairwise.into(), a.token_mode.into());
    if report.is_feasible() {
        println!("ok: {} tags", tags.len());
        return Ok(());
    }
    for v in &report.violations {
        println!("{v}");
    }
    Err(Failure::Violation(format!("{} violations", report.violations.len())))
}

fn cmd_stats(a: StatsArgs) -> CliResult {
    if a.c == 0 {
        return Err(Failure::Usage("--c must be at least 1".into()));
    }
    let tags = load_tags(&a.tags)?;
    let seqs: Vec<DnaString> = tags.iter().map(|(s, _)| s.clone()).collect();
    let prov: Vec<Provenance> = tags
        .iter()
        .map(|(_, p)| p.unwrap_or(Provenance::TreeSearch))
        .collect();
    let st = stats_of(&seqs, &prov, a.c);
    if a.json {
        println!("{}", serde_json::to_string(&st).expect("plain struct"));
    } else {
        println!("{} {} {:.1}", st.tags, st.c_tokens, st.pct_cyclic);
    }
    Ok(())
}

fn cmd_hardness(h: HardnessCommand) -> CliResult {
    match h {
        HardnessCommand::Gen { cnf, out, pad } => {
            let phi = parse_dimacs(&read(&cnf)?)?;
            let mut g = build_reduction(&phi);
            if pad {
                g.pad_to_regular();
            }
            emit(out.as_deref(), |w| g.write_edge_list(w))
        }
        HardnessCommand::Roundtrip { cnf, assignment } => {
            let phi = parse_dimacs(&read(&cnf)?)?;
            let a = parse_assignment(&read(&assignment)?, phi.num_vars)?;
            let g = build_reduction(&phi);
            let k = phi.num_satisfied(&a);
            let m2 = 2 * phi.total_occurrences();
            let cycles = assignment_to_cycles(&phi, &g, &a);
            check_disjoint_cycles(&g, &cycles)
                .map_err(|e| Failure::Violation(format!("packing is not disjoint: {e}")))?;
            let back = cycles_to_assignment(&phi, &g, &cycles)?;
            let k2 = phi.num_satisfied(&back);
            println!("clauses {} variables {}", phi.clauses.len(), phi.num_vars);
            println!("assignment satisfies {k}");
            println!("packing {} cycles, need >= {}", cycles.len(), k + m2);
            println!("recovered assignment satisfies {k2}");
            if cycles.len() < k + m2 || k2 < k {
                return Err(Failure::Violation("round trip lost clauses".into()));
            }
            Ok(())
        }
        HardnessCommand::Random { vars, seed, out } => {
            let phi = random_instance(vars, seed);
            emit(out.as_deref(), |w| write_dimacs(&phi, w))
        }
    }
}

fn parse_range(s: &str) -> std::result::Result<Vec<u32>, Failure> {
    let bad = || Failure::Usage(format!("bad range {s:?}; use N or N-M"));
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn parse_list(s: &str) -> std::result::Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad list {s:?}")))
        })
        .collect()
}

/// Known-good results for the bench grid: tags, and c-tokens, % cyclic and LP where recorded.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Reference {
    pub tags: usize,
    pub c_tokens: Option<usize>,
    pub pct_cyclic: Option<f64>,
    pub lp: Option<f64>,
}

fn reference(method: BenchMethod, c: u32, st: Stability, pw: Pairwise) -> Option<Reference> {
    use Stability::{Length, Weight};
    let r = |tags, c_tokens, pct_cyclic, lp| {
        Some(Reference {
            tags,
            c_tokens,
            pct_cyclic,
            lp,
        })
    };
    match (method, pw, st, c) {
        (BenchMethod::Ilp, Pairwise::C, Length(10), 4) => r(8, None, None, Some(8.57)),
        (BenchMethod::Ilp, Pairwise::C, Length(10), 5) => r(28, None, None, Some(28.00)),
        (BenchMethod::Ilp, Pairwise::C, Weight(15), 4) => r(7, None, None, Some(7.00)),
        (BenchMethod::Ilp, Pairwise::C, Weight(15), 5) => r(21, None, None, Some(21.09)),
        (BenchMethod::Tree, Pairwise::C, Length(20), 4) => r(14, Some(59), None, None),
        (BenchMethod::Tree, Pairwise::C, Length(20), 5) => r(31, Some(165), None, None),
        (BenchMethod::Tree, Pairwise::C, Length(20), 6) => r(53, Some(433), None, None),
        (BenchMethod::Tree, Pairwise::Cbar, Length(20), 4) => r(10, Some(35), None, None),
        (BenchMethod::Unique, Pairwise::C, Length(20), 4) => r(3, None, None, None),
        (BenchMethod::Unique, Pairwise::C, Length(10), 4) => r(7, None, None, None),
        (BenchMethod::CycleTree, Pairwise::C, Length(20), 4) => r(17, Some(40), Some(100.0), None),
        (BenchMethod::CycleTree, Pairwise::C, Length(20), 5) => r(40, Some(140), Some(100.0), None),
        (BenchMethod::CycleTree, Pairwise::C, Length(20), 6) => r(72, Some(293), Some(98.6), None),
        (BenchMethod::CycleTree, Pairwise::C, Weight(28), 4) => r(17, Some(40), None, None),
        (BenchMethod::CycleTree, Pairwise::Cbar, Length(20), 4) => r(10, Some(25), Some(100.0), None),
        (BenchMethod::CycleTree, Pairwise::Cbar, Length(20), 5) => r(23, Some(85), Some(100.0), None),
        _ => None,
    }
}

#[derive(Serialize)]
struct BenchRow {
    method: &'static str,
    c: u32,
    stability: String,
    pairwise: String,
    #[serde(flatten)]
    stats: Stats,
    lp: Option<f64>,
    ilp_status: Option<IlpStatus>,
    size: Option<ModelSize>,
    seconds: f64,
    reference: Option<Reference>,
    matches: Option<bool>,
}

fn bench_method_name(m: BenchMethod) -> &'static str {
    match m {
        BenchMethod::Tree => "tree",
        BenchMethod::Unique => "unique",
        BenchMethod::CycleTree => "cycle-tree",
        BenchMethod::Ilp => "ilp",
    }
}

fn bench_one(
    method: BenchMethod,
    tokens: &TokenSet,
    st: Stability,
    pw: Pairwise,
    max_period: usize,
    limit: Duration,
) -> std::result::Result<BenchRow, Failure> {
    let start = Instant::now();
    let mut lp = None;
    let mut ilp_status = None;
    let mut size = None;
    let set = match method {
        BenchMethod::Tree | BenchMethod::Unique => {
            let mode = if method == BenchMethod::Tree {
                TokenMode::Multiple
            } else {
                TokenMode::Unique
            };
            tree_search(tokens, st, pw, mode, &mut Availability::new(tokens, pw))
        }
        BenchMethod::CycleTree => combined_design(tokens, st, pw, max_period).0,
        BenchMethod::Ilp => {
            let g = build_layered(tokens, st)?;
            let model = build_model(&g, tokens, ModelOptions::default());
            let sol = solve_ilp(&model, limit)?;
            lp = Some(sol.root_lp);
            ilp_status = Some(sol.status);
            size = Some(model.size());
            extract_tags(&model, &sol.values, &g, tokens)?
        }
    };
    check(&set)?;
    let stats = stats(&set);
    let reference = reference(method, tokens.c(), st, pw);
    let matches = reference.map(|r| {
        r.tags == stats.tags
            && r.c_tokens.is_none_or(|m| m == stats.c_tokens)
            && r.pct_cyclic.is_none_or(|p| (p - stats.pct_cyclic).abs() < 0.05)
            && r.lp.is_none_or(|v| lp.is_some_and(|x| (x - v).abs() <= 0.01))
    });
    Ok(BenchRow {
        method: bench_method_name(method),
        c: tokens.c(),
        stability: st.to_string(),
        pairwise: pw.to_string(),
        stats,
        lp,
        ilp_status,
        size,
        seconds: start.elapsed().as_secs_f64(),
        reference,
        matches,
    })
}

fn cmd_bench(a: BenchArgs) -> CliResult {
    let cs = parse_range(&a.c)?;
    let modes: Vec<Stability> = match (&a.length, &a.min_weight) {
        (_, Some(h)) => parse_list(h)?.into_iter().map(Stability::Weight).collect(),
        (Some(l), _) => parse_list(l)?.into_iter().map(Stability::Length).collect(),
        (None, None) => vec![Stability::Length(20)],
    };
    let limit = time_limit(a.time_limit)?;
    let mut rows = Vec::new();
    for &c in &cs {
        let tokens = TokenSet::new(c)?;
        for &st in &modes {
            for &pw in &a.pairwise {
                let pw: Pairwise = pw.into();
                for &m in &a.method {
                    if m == BenchMethod::Ilp && pw == Pairwise::Cbar {
                        continue;
                    }
                    rows.push(bench_one(m, &tokens, st, pw, a.max_period, limit)?);
                }
            }
        }
    }
    if a.json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("plain rows"));
        return Ok(());
    }
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    let header = [
        "method", "c", "mode", "pw", "tags", "tokens", "%cyc", "lp", "rows", "vars", "nnz", "sec",
        "ref", "match",
    ];
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.method.to_string(),
                r.c.to_string(),
                r.stability.clone(),
                r.pairwise.clone(),
                r.stats.tags.to_string(),
                r.stats.c_tokens.to_string(),
                format!("{:.1}", r.stats.pct_cyclic),
                opt(r.lp.map(|x| format!("{x:.2}"))),
                opt(r.size.map(|s| s.rows.to_string())),
                opt(r.size.map(|s| s.vars.to_string())),
                opt(r.size.map(|s| s.nonzeros.to_string())),
                format!("{:.2}", r.seconds),
                opt(r.reference.map(|x| {
                    let mut s = x.tags.to_string();
                    if let Some(m) = x.c_tokens {
                        s += &format!("/{m}");
                    }
                    if let Some(v) = x.lp {
                        s += &format!(" lp {v:.2}");
                    }
                    s
                })),
                opt(r.matches.map(|m| if m { "yes" } else { "NO" }.to_string())),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &table {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    println!("{}", line(header.to_vec()));
    for row in &table {
        println!("{}", line(row.iter().map(String::as_str).collect()));
    }
    Ok(())
}
