//! Command line frontend for the chain-of-cycles toolkit.
//!
//! Subcommands cover the full pipeline: torsion profiles and their chain
//! realizations, tableau enumeration, divisor ranks with witnesses, gonality
//! sequences, Clifford indices, divisorial completeness grids, chip-firing
//! computations on arbitrary finite graphs, and the verification suite for
//! the Martens-special families.
//!
//! Input is either a family given inline (`--genus/--type/--positions`) or a
//! JSON file; every run uses exactly one source. Results go to standard out,
//! diagnostics to standard error. Exit codes: 0 on success with every
//! verification passing, 1 when a verification fails, 2 on input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use chaincycles::chain::{
    realize_discrete_chain, torsion_of_discrete, ChainDivisor, DiscreteChain, MartensSpec,
    ProfileKind, RepresentingDivisor, TorsionProfile,
};
use chaincycles::oracle::{
    dhar_reduce, rank_baker_norine, wrd_discrete, FiniteGraph, VertexDivisor,
};
use chaincycles::rank::{
    clifford_index, divisorial_complete_report, gonality_sequence, rank_discrete, rank_metric,
    DivCompleteCell, DivCompleteReport, GonalityReport, RankResult,
};
use chaincycles::tableau::{enumerate_tableaux, DisplacementTableau, GridShape};
use chaincycles::verify::{
    probe_theorem_a_discrete, sweep, verify_divisorial_complete, verify_prop1, verify_theorem_b,
    verify_theorem_c, verify_two_row_lemmas, VerificationReport,
};
use chaincycles::Error;

#[derive(Parser)]
#[command(
    name = "chaincycles",
    version,
    about = "Divisor ranks, gonality sequences and Clifford indices on chains of cycles"
)]
struct Cli {
    /// Cap worker parallelism at N threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a torsion profile, from an inline family or a chain file.
    Profile(ProfileArgs),
    /// Realize a torsion profile as a concrete discrete chain of cycles.
    Realize(SourceArgs),
    /// Enumerate the displacement tableaux on a grid shape.
    Tableaux(TableauxArgs),
    /// Rank of a divisor, with a witness tableau.
    Rank(RankArgs),
    /// Gonality sequence g_1..g_rmax with gonality and Clifford index.
    Gonseq(GonseqArgs),
    /// Clifford index of a profile.
    Cliff(SourceArgs),
    /// Divisorial completeness grid over all degrees and ranks.
    Divcomplete(SourceArgs),
    /// Chip-firing computations on an arbitrary finite graph.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Check the headline claims on Martens-special families.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

/// Profile source shared by most subcommands: a JSON file or an inline
/// Martens-special family, never both.
#[derive(Args)]
struct SourceArgs {
    /// Torsion profile JSON file.
    #[arg(long, value_name = "FILE")]
    profile: Option<PathBuf>,

    /// Genus of an inline Martens-special family.
    #[arg(long, value_name = "G")]
    genus: Option<usize>,

    /// Type k of the family, checked against the number of positions.
    #[arg(long = "type", value_name = "K")]
    family_type: Option<usize>,

    /// Comma separated exceptional positions j_1,...,j_k.
    #[arg(long, value_name = "J1,J2,...", value_delimiter = ',')]
    positions: Option<Vec<usize>>,

    /// Give the exceptional cycles torsion g+1 instead of 0.
    #[arg(long)]
    discrete: bool,
}

impl SourceArgs {
    fn is_empty(&self) -> bool {
        self.profile.is_none()
            && self.genus.is_none()
            && self.family_type.is_none()
            && self.positions.is_none()
            && !self.discrete
    }

    fn kind(&self) -> ProfileKind {
        if self.discrete {
            ProfileKind::Discrete
        } else {
            ProfileKind::MetricGeneral
        }
    }

    fn resolve(&self) -> Result<TorsionProfile, Failure> {
        match (&self.profile, self.genus) {
            (Some(_), Some(_)) => Err(input("pass either --profile or --genus, not both")),
            (Some(path), None) => {
                if self.family_type.is_some() || self.positions.is_some() || self.discrete {
                    return Err(input(
                        "--type, --positions and --discrete apply only to inline families",
                    ));
                }
                read_json(path)
            }
            (None, Some(genus)) => {
                let positions = self
                    .positions
                    .clone()
                    .ok_or_else(|| input("--genus requires --positions"))?;
                let spec = build_spec(genus, self.family_type, positions)?;
                Ok(spec.profile(self.kind()))
            }
            (None, None) => Err(input(
                "missing input: pass --profile FILE or --genus G --positions J1,J2,...",
            )),
        }
    }
}

fn build_spec(
    genus: usize,
    family_type: Option<usize>,
    positions: Vec<usize>,
) -> Result<MartensSpec, Failure> {
    let spec = MartensSpec::new(genus, positions).map_err(|e| input(e.to_string()))?;
    if let Some(k) = family_type {
        if k != spec.k() {
            return Err(input(format!(
                "--type {k} disagrees with the {} positions given",
                spec.k()
            )));
        }
    }
    Ok(spec)
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// Discrete chain JSON file; prints its torsion profile.
    #[arg(long, value_name = "FILE")]
    chain: Option<PathBuf>,
}

#[derive(Args)]
struct TableauxArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// Grid columns.
    #[arg(long, value_name = "M")]
    cols: Option<usize>,

    /// Grid rows.
    #[arg(long, value_name = "N")]
    rows: Option<usize>,

    /// Divisor degree; with --rank picks the shape [(g-d+r) x (r+1)].
    #[arg(long, value_name = "D")]
    degree: Option<i64>,

    /// Target rank, paired with --degree.
    #[arg(long, value_name = "R")]
    rank: Option<i64>,

    /// Print only the number of tableaux.
    #[arg(long)]
    count: bool,
}

#[derive(Args)]
struct RankArgs {
    /// Torsion profile JSON file; the divisor is a representing divisor.
    #[arg(long, value_name = "FILE")]
    profile: Option<PathBuf>,

    /// Discrete chain JSON file; the divisor lists cycle coordinates.
    #[arg(long, value_name = "FILE")]
    chain: Option<PathBuf>,

    /// Divisor JSON file.
    #[arg(long, value_name = "FILE")]
    divisor: PathBuf,
}

#[derive(Args)]
struct GonseqArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// Largest r to report.
    #[arg(long, value_name = "N")]
    rmax: usize,

    /// Emit comma separated r,g_r rows.
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Baker-Norine rank of a divisor.
    Rank(OracleDivisorArgs),
    /// Dhar-reduced form of a divisor with respect to a base vertex.
    Reduce(OracleReduceArgs),
    /// Largest w such that every effective divisor of degree w+r extends to
    /// an effective divisor of degree d and rank at least r; -1 if none.
    Wrd(OracleWrdArgs),
}

#[derive(Args)]
struct OracleDivisorArgs {
    /// Graph JSON file.
    #[arg(long, value_name = "FILE")]
    graph: PathBuf,

    /// Divisor JSON file listing one coefficient per vertex.
    #[arg(long, value_name = "FILE")]
    divisor: PathBuf,
}

#[derive(Args)]
struct OracleReduceArgs {
    #[command(flatten)]
    target: OracleDivisorArgs,

    /// Base vertex, 0-based.
    #[arg(long, value_name = "Q")]
    base: usize,
}

#[derive(Args)]
struct OracleWrdArgs {
    /// Graph JSON file.
    #[arg(long, value_name = "FILE")]
    graph: PathBuf,

    /// Rank bound r.
    #[arg(short, value_name = "R")]
    r: i64,

    /// Divisor degree d.
    #[arg(short, value_name = "D")]
    d: i64,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Two-row tableau obstruction and the gonality value k+2.
    Prop1(SpecArgs),
    /// Structural facts about two-row tableaux: corner values, window
    /// deletion counts and the uniqueness clauses.
    Lemmas(SpecArgs),
    /// Gonality sequence formula on the metric-general profile.
    ThmB(ThmArgs),
    /// Gonality sequence formula on the realized discrete chain, with
    /// chip-firing confirmation at small genus.
    ThmC(ThmArgs),
    /// Divisorial completeness grid for the family.
    Divcomplete(SpecArgs),
    /// Chip-firing probe of the discrete gonality at degrees k+2 and k+1.
    ThmAProbe(SpecArgs),
    /// Every claim over every family within the genus and type bounds.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// Genus of the family.
    #[arg(long, value_name = "G")]
    genus: usize,

    /// Type k of the family, checked against the number of positions.
    #[arg(long = "type", value_name = "K")]
    family_type: Option<usize>,

    /// Comma separated exceptional positions j_1,...,j_k.
    #[arg(long, value_name = "J1,J2,...", value_delimiter = ',', required = true)]
    positions: Vec<usize>,
}

impl SpecArgs {
    fn spec(&self) -> Result<MartensSpec, Failure> {
        build_spec(self.genus, self.family_type, self.positions.clone())
    }
}

#[derive(Args)]
struct ThmArgs {
    #[command(flatten)]
    spec: SpecArgs,

    /// Largest r to check (default g+2).
    #[arg(long, value_name = "N")]
    rmax: Option<usize>,
}

impl ThmArgs {
    fn rmax(&self, genus: usize) -> Result<usize, Failure> {
        let r = self.rmax.unwrap_or(genus + 2);
        if r == 0 {
            return Err(input("--rmax must be at least 1"));
        }
        Ok(r)
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Largest genus to sweep.
    #[arg(long, value_name = "N")]
    max_genus: usize,

    /// Largest type to sweep.
    #[arg(long, value_name = "K")]
    max_type: usize,
}

/// Input errors exit 2, engine failures exit 1; both print one line.
#[derive(Debug)]
enum Failure {
    Input(String),
    Engine(String),
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(input("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| input(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Profile(args) => cmd_profile(args, cli.json),
        Command::Realize(args) => cmd_realize(args, cli.json),
        Command::Tableaux(args) => cmd_tableaux(args, cli.json),
        Command::Rank(args) => cmd_rank(args, cli.json),
        Command::Gonseq(args) => cmd_gonseq(args, cli.json),
        Command::Cliff(args) => cmd_cliff(args, cli.json),
        Command::Divcomplete(args) => cmd_divcomplete(args, cli.json),
        Command::Oracle(cmd) => cmd_oracle(cmd, cli.json),
        Command::Verify(cmd) => cmd_verify(cmd, cli.json),
    }
}

/// Writes to stdout, exiting quietly when the reader closed the pipe, so
/// that piping a long listing into `head` does not report a failure.
fn emit(text: &str) {
    use std::io::Write as _;
    if std::io::stdout().write_all(text.as_bytes()).is_err() {
        std::process::exit(0);
    }
}

fn emitln(text: &str) {
    emit(text);
    emit("\n");
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn cmd_profile(args: &ProfileArgs, json: bool) -> Result<bool, Failure> {
    let p = match &args.chain {
        Some(path) => {
            if !args.source.is_empty() {
                return Err(input("pass either --chain or a profile source, not both"));
            }
            let chain: DiscreteChain = read_json(path)?;
            torsion_of_discrete(&chain)
        }
        None => args.source.resolve()?,
    };
    if json {
        emitln(&to_json(&p));
    } else {
        emit(&render_profile(&p));
    }
    Ok(true)
}

fn cmd_realize(args: &SourceArgs, json: bool) -> Result<bool, Failure> {
    let p = args.resolve()?;
    let chain = realize_discrete_chain(&p).map_err(|e| {
        if args.genus.is_some() && !args.discrete {
            input(format!(
                "{e} (inline families default to torsion 0; pass --discrete)"
            ))
        } else {
            input(e.to_string())
        }
    })?;
    if json {
        emitln(&to_json(&chain));
    } else {
        emit(&render_chain(&chain));
    }
    Ok(true)
}

fn cmd_tableaux(args: &TableauxArgs, json: bool) -> Result<bool, Failure> {
    let p = args.source.resolve()?;
    let shape = match (args.cols, args.rows, args.degree, args.rank) {
        (Some(cols), Some(rows), None, None) => {
            if rows == 0 {
                return Err(input("--rows must be at least 1"));
            }
            GridShape::new(cols, rows)
        }
        (None, None, Some(degree), Some(rank)) => {
            if rank < 0 {
                return Err(input("--rank must be nonnegative"));
            }
            GridShape::for_rank(p.genus(), degree, rank)
        }
        _ => return Err(input("pass --cols M --rows N or --degree D --rank R")),
    };
    if args.count {
        let count = enumerate_tableaux(&p, shape).count();
        if json {
            emitln(&json!({"cols": shape.cols, "rows": shape.rows, "count": count}).to_string());
        } else {
            emitln(&count.to_string());
        }
    } else if json {
        let all: Vec<DisplacementTableau> = enumerate_tableaux(&p, shape).collect();
        emitln(&to_json(&all));
    } else {
        for t in enumerate_tableaux(&p, shape) {
            emitln(&t.to_string());
            emitln("");
        }
    }
    Ok(true)
}

fn cmd_rank(args: &RankArgs, json: bool) -> Result<bool, Failure> {
    let result = match (&args.profile, &args.chain) {
        (Some(_), Some(_)) => return Err(input("pass either --profile or --chain, not both")),
        (None, None) => return Err(input("pass --profile FILE or --chain FILE")),
        (Some(path), None) => {
            let p: TorsionProfile = read_json(path)?;
            let div: RepresentingDivisor = read_json(&args.divisor)?;
            if div.genus() != p.genus() {
                return Err(input(format!(
                    "divisor lists {} positions but the profile has genus {}",
                    div.genus(),
                    p.genus()
                )));
            }
            rank_metric(&p, &div)
        }
        (None, Some(path)) => {
            let chain: DiscreteChain = read_json(path)?;
            let div: ChainDivisor = read_json(&args.divisor)?;
            let vertex_div = div
                .to_vertex_divisor(&chain)
                .map_err(|e| input(e.to_string()))?;
            rank_discrete(&chain, &vertex_div)
        }
    };
    if json {
        emitln(&json!({"rank": result.rank, "witness": result.witness}).to_string());
    } else {
        emit(&render_rank(&result));
    }
    Ok(true)
}

fn cmd_gonseq(args: &GonseqArgs, json: bool) -> Result<bool, Failure> {
    if args.rmax == 0 {
        return Err(input("--rmax must be at least 1"));
    }
    if args.csv && json {
        return Err(input("--csv and --json are mutually exclusive"));
    }
    let p = args.source.resolve()?;
    let report = gonality_sequence(&p, args.rmax);
    if json {
        emitln(&to_json(&report));
    } else if args.csv {
        emit(&render_gonseq_csv(&report));
    } else {
        emit(&render_gonseq_text(&report));
    }
    Ok(true)
}

fn cmd_cliff(args: &SourceArgs, json: bool) -> Result<bool, Failure> {
    let p = args.resolve()?;
    let clifford = clifford_index(&p).map_err(|e| match e {
        Error::CliffordMismatch { .. } => Failure::Engine(e.to_string()),
        _ => input(e.to_string()),
    })?;
    if json {
        emitln(&json!({"genus": p.genus(), "clifford": clifford}).to_string());
    } else {
        emitln(&clifford.to_string());
    }
    Ok(true)
}

fn cmd_divcomplete(args: &SourceArgs, json: bool) -> Result<bool, Failure> {
    let p = args.resolve()?;
    let report = divisorial_complete_report(&p);
    if json {
        emitln(&to_json(&report));
    } else {
        emit(&render_divcomplete(&report));
    }
    Ok(report.pass)
}

fn cmd_oracle(cmd: &OracleCommand, json: bool) -> Result<bool, Failure> {
    match cmd {
        OracleCommand::Rank(args) => {
            let (graph, div) = load_graph_divisor(&args.graph, &args.divisor)?;
            let rank = rank_baker_norine(&graph, &div);
            if json {
                emitln(&json!({"rank": rank}).to_string());
            } else {
                emitln(&rank.to_string());
            }
        }
        OracleCommand::Reduce(args) => {
            let (graph, div) = load_graph_divisor(&args.target.graph, &args.target.divisor)?;
            if args.base >= graph.vertex_count() {
                return Err(input(format!(
                    "base vertex {} out of range 0..{}",
                    args.base,
                    graph.vertex_count()
                )));
            }
            let reduced = dhar_reduce(&graph, &div, args.base);
            if json {
                emitln(&to_json(&reduced));
            } else {
                let coeffs: Vec<String> = reduced.coeffs().iter().map(|c| c.to_string()).collect();
                emitln(&format!("coeffs: {}", coeffs.join(" ")));
            }
        }
        OracleCommand::Wrd(args) => {
            let graph: FiniteGraph = read_json(&args.graph)?;
            let w = wrd_discrete(&graph, args.r, args.d).map_err(|e| input(e.to_string()))?;
            if json {
                emitln(&json!({"r": args.r, "d": args.d, "w": w}).to_string());
            } else {
                emitln(&w.to_string());
            }
        }
    }
    Ok(true)
}

fn load_graph_divisor(
    graph: &Path,
    divisor: &Path,
) -> Result<(FiniteGraph, VertexDivisor), Failure> {
    let g: FiniteGraph = read_json(graph)?;
    let d: VertexDivisor = read_json(divisor)?;
    if d.coeffs().len() != g.vertex_count() {
        return Err(input(format!(
            "divisor lists {} coefficients but the graph has {} vertices",
            d.coeffs().len(),
            g.vertex_count()
        )));
    }
    Ok((g, d))
}

fn cmd_verify(cmd: &VerifyCommand, json: bool) -> Result<bool, Failure> {
    let reports: Vec<VerificationReport> = match cmd {
        VerifyCommand::Prop1(args) => vec![verify_prop1(&args.spec()?)],
        VerifyCommand::Lemmas(args) => vec![verify_two_row_lemmas(&args.spec()?)],
        VerifyCommand::ThmB(args) => {
            let spec = args.spec.spec()?;
            let rmax = args.rmax(spec.genus())?;
            vec![verify_theorem_b(&spec, rmax)]
        }
        VerifyCommand::ThmC(args) => {
            let spec = args.spec.spec()?;
            let rmax = args.rmax(spec.genus())?;
            vec![verify_theorem_c(&spec, rmax)]
        }
        VerifyCommand::Divcomplete(args) => {
            let spec = args.spec()?;
            if spec.genus() > 10 {
                return Err(input(
                    "the completeness grid is exhaustive; genus is capped at 10",
                ));
            }
            vec![verify_divisorial_complete(&spec)]
        }
        VerifyCommand::ThmAProbe(args) => {
            let spec = args.spec()?;
            if spec.genus() > 6 {
                return Err(input(
                    "the chip-firing probe is exhaustive; genus is capped at 6",
                ));
            }
            vec![probe_theorem_a_discrete(&spec)]
        }
        VerifyCommand::Sweep(args) => {
            if args.max_genus < 5 {
                return Err(input("no Martens-special family has genus below 5"));
            }
            if args.max_type < 1 {
                return Err(input("--max-type must be at least 1"));
            }
            sweep(args.max_genus, args.max_type)
        }
    };
    let pass = reports.iter().all(|r| r.pass);
    if json {
        if matches!(cmd, VerifyCommand::Sweep(_)) {
            emitln(&to_json(&reports));
        } else {
            emitln(&to_json(&reports[0]));
        }
    } else {
        emit(&render_reports(&reports));
    }
    Ok(pass)
}

fn render_profile(p: &TorsionProfile) -> String {
    let torsions: Vec<String> = p.torsions().iter().map(|m| m.to_string()).collect();
    format!(
        "genus: {}\ntorsions(2..={}): {}\n",
        p.genus(),
        p.genus(),
        torsions.join(" ")
    )
}

fn render_chain(chain: &DiscreteChain) -> String {
    let mut out = format!("genus: {}\n", chain.genus());
    for (i, c) in chain.cycles().iter().enumerate() {
        out.push_str(&format!(
            "cycle {}: size {}, attach {}\n",
            i + 1,
            c.size,
            c.attach
        ));
    }
    out
}

fn render_rank(result: &RankResult) -> String {
    let mut out = format!("rank: {}\n", result.rank);
    match &result.witness {
        Some(t) => out.push_str(&format!("witness:\n{t}\n")),
        None => out.push_str("witness: none\n"),
    }
    out
}

fn render_gonseq_csv(report: &GonalityReport) -> String {
    let mut out = String::from("r,g_r\n");
    for (i, g_r) in report.sequence.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, g_r));
    }
    out
}

fn render_gonseq_text(report: &GonalityReport) -> String {
    let rw = report.sequence.len().to_string().len().max(1);
    let gw = report
        .sequence
        .iter()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1)
        .max(3);
    let mut out = format!("{:>rw$}  {:>gw$}\n", "r", "g_r");
    for (i, g_r) in report.sequence.iter().enumerate() {
        out.push_str(&format!("{:>rw$}  {:>gw$}\n", i + 1, g_r));
    }
    out.push_str(&format!(
        "gonality: {}\nclifford: {}\n",
        report.gonality, report.clifford
    ));
    out
}

// One cell of the completeness grid: required and realized agree or not.
fn cell_symbol(cell: &DivCompleteCell) -> &'static str {
    match (cell.allowed, cell.realized) {
        (true, true) => "+",
        (false, false) => ".",
        (true, false) => "?",
        (false, true) => "X",
    }
}

fn render_divcomplete(report: &DivCompleteReport) -> String {
    let max_r = report.cells.iter().map(|c| c.r).max().unwrap_or(0);
    let mut out = format!("genus: {}\nclifford: {}\n", report.genus, report.clifford);
    let header: Vec<String> = (0..=max_r).map(|r| format!("{r:>2}")).collect();
    out.push_str(&format!("{:>4}  {}\n", "d\\r", header.join(" ")));
    let mut rows: Vec<(i64, Vec<&'static str>)> = Vec::new();
    for cell in &report.cells {
        match rows.last_mut() {
            Some((d, symbols)) if *d == cell.d => symbols.push(cell_symbol(cell)),
            _ => rows.push((cell.d, vec![cell_symbol(cell)])),
        }
    }
    for (d, symbols) in rows {
        let padded: Vec<String> = symbols.iter().map(|s| format!("{s:>2}")).collect();
        out.push_str(&format!("{d:>4}  {}\n", padded.join(" ")));
    }
    out.push_str("(+ realized as required, . absent as required, ? missing, X extraneous)\n");
    out.push_str(&format!("pass: {}\n", report.pass));
    out
}

fn render_report(report: &VerificationReport) -> String {
    let mut out = format!("claim: {}\nswept: {}\n", report.claim, report.swept);
    for inst in &report.instances {
        let verdict = if inst.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("  {verdict} {}: {}\n", inst.label, inst.detail));
        if let Some(ce) = &inst.counterexample {
            out.push_str(&format!("    counterexample: {ce}\n"));
        }
    }
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    out.push_str(&format!("{}: {verdict}\n", report.claim));
    out
}

fn render_reports(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for (i, report) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&render_report(report));
    }
    if reports.len() > 1 {
        let passed = reports.iter().filter(|r| r.pass).count();
        out.push_str(&format!(
            "\nsummary: {passed}/{} reports pass\n",
            reports.len()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(genus: usize, positions: &[usize]) -> SourceArgs {
        SourceArgs {
            profile: None,
            genus: Some(genus),
            family_type: None,
            positions: Some(positions.to_vec()),
            discrete: false,
        }
    }

    #[test]
    fn source_requires_exactly_one_input() {
        let none = SourceArgs {
            profile: None,
            genus: None,
            family_type: None,
            positions: None,
            discrete: false,
        };
        assert!(none.resolve().is_err());
        let both = SourceArgs {
            profile: Some(PathBuf::from("p.json")),
            ..family(5, &[3])
        };
        assert!(both.resolve().is_err());
    }

    #[test]
    fn type_flag_must_match_positions() {
        assert!(build_spec(10, Some(2), vec![3, 5]).is_ok());
        assert!(build_spec(10, Some(3), vec![3, 5]).is_err());
        assert!(build_spec(10, None, vec![3, 5]).is_ok());
    }

    #[test]
    fn inline_kind_selects_torsions() {
        let metric = family(5, &[3]).resolve().unwrap();
        assert_eq!(metric.torsion(3), 0);
        assert_eq!(metric.torsion(2), 2);
        let discrete = SourceArgs {
            discrete: true,
            ..family(5, &[3])
        }
        .resolve()
        .unwrap();
        assert_eq!(discrete.torsion(3), 6);
    }

    #[test]
    fn gonseq_csv_matches_the_sequence() {
        let p = family(10, &[3, 5]).resolve().unwrap();
        let csv = render_gonseq_csv(&gonality_sequence(&p, 10));
        let expected = "r,g_r\n1,4\n2,6\n3,8\n4,10\n5,12\n6,14\n7,16\n8,17\n9,18\n10,20\n";
        assert_eq!(csv, expected);
    }

    #[test]
    fn gonseq_text_reports_the_invariants() {
        let p = family(10, &[3, 5]).resolve().unwrap();
        let text = render_gonseq_text(&gonality_sequence(&p, 10));
        assert!(text.starts_with(" r  g_r\n 1    4\n"));
        assert!(text.contains("gonality: 4\n"));
        assert!(text.contains("clifford: 2\n"));
    }

    #[test]
    fn rank_rendering_names_a_missing_witness() {
        let rendered = render_rank(&RankResult {
            rank: -1,
            witness: None,
        });
        assert_eq!(rendered, "rank: -1\nwitness: none\n");
    }

    #[test]
    fn grid_symbols_cover_the_four_cases() {
        let cell = |allowed, realized| DivCompleteCell {
            d: 0,
            r: 0,
            allowed,
            realized,
        };
        assert_eq!(cell_symbol(&cell(true, true)), "+");
        assert_eq!(cell_symbol(&cell(false, false)), ".");
        assert_eq!(cell_symbol(&cell(true, false)), "?");
        assert_eq!(cell_symbol(&cell(false, true)), "X");
    }

    #[test]
    fn report_rendering_shows_failures_and_counterexamples() {
        let report = VerificationReport {
            claim: "demo".into(),
            swept: "g=5".into(),
            pass: false,
            instances: vec![chaincycles::verify::InstanceReport {
                label: "unit".into(),
                pass: false,
                detail: "broke".into(),
                counterexample: Some(json!({"x": 1})),
            }],
        };
        let text = render_report(&report);
        assert!(text.contains("  FAIL unit: broke\n"));
        assert!(text.contains("    counterexample: {\"x\":1}\n"));
        assert!(text.ends_with("demo: FAIL\n"));
    }
}
