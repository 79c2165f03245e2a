mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use dirramsey::catalog::named_target;
use dirramsey::constructions::{build_layered, build_lexicographic, sidecar, verify_construction, Forbidden, Stage};
use dirramsey::digraph::io::{parse_colouring, parse_tree, write_colouring, write_tree};
use dirramsey::digraph::{ColouredDigraph, OrientedTree};
use dirramsey::engine::{ramsey_path_embed_tournament, ramsey_tree_embed_tournament, RamseyEmbedOutcome};
use dirramsey::search::{directed_ramsey_exact, oriented_ramsey_exact, SearchCaps, SearchOptions};
use dirramsey::suite::{run_suite, Status, SuiteConfig};

use report::{RunReport, Verification};

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "dirramsey",
    version,
    about = "Monochromatic oriented trees in coloured tournaments and complete digraphs",
    after_help = "Exit codes: 0 success, 1 check or guarantee failed, 2 usage or parse error, 3 inconclusive search.\n\
                  Search caps: DIRRAMSEY_MAX_TOURNAMENT and DIRRAMSEY_MAX_DIGRAPH override the largest host order."
)]
struct Cli {
    /// Worker threads for parallel work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for certificates and the default report.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// JSON report path (default: <out-dir>/dirramsey-report.json).
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an extremal colouring and verify it.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a colouring for forbidden monochromatic structures.
    Check(CheckArgs),
    /// Find a monochromatic copy with the constructive embedders.
    #[command(subcommand)]
    Embed(Embed),
    /// Compute an exact Ramsey value by exhaustive search.
    #[command(subcommand)]
    Exact(Exact),
    /// Run the acceptance suite.
    Suite(SuiteArgs),
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Lexicographic tournament on [l]^(k-1) x [n].
    Lex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
    },
    /// Layered complete-digraph colouring.
    Layered {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// base, doubled or blownup (default: the last stage defined for k).
        #[arg(long)]
        stage: Option<String>,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("forbidden").required(true).args(["tree", "path_order"])))]
struct CheckArgs {
    #[arg(long)]
    colouring: PathBuf,
    /// Tree files or built-in names (p3, outstar4, ...).
    #[arg(long, num_args = 1..)]
    tree: Vec<String>,
    /// Forbid the directed path with this many vertices.
    #[arg(long)]
    path_order: Option<usize>,
    /// Only check this colour.
    #[arg(long)]
    colour: Option<u8>,
}

#[derive(Subcommand, Debug)]
enum Embed {
    /// Oriented path in a coloured tournament.
    Path {
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long, num_args = 1)]
        targets: Vec<String>,
        #[arg(long)]
        trace: bool,
    },
    /// One oriented tree per colour in a coloured tournament.
    Tree {
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long, num_args = 1..)]
        targets: Vec<String>,
        /// Number of leading colours tracked by leaf count.
        #[arg(long, default_value_t = 0)]
        tracked: usize,
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Exact {
    /// Tournaments.
    Rt(ExactArgs),
    /// Complete digraphs.
    R(ExactArgs),
}

#[derive(Args, Debug)]
struct ExactArgs {
    /// One target per colour, or a single target repeated for every colour.
    #[arg(long, num_args = 1..)]
    targets: Vec<String>,
    #[arg(long)]
    colours: Option<usize>,
    #[arg(long, default_value_t = 7)]
    max_n: usize,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long, default_value_t = 10_000)]
    runs: usize,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

/// A usage or input error: exit 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            if code != 0 {
                let mut r = RunReport::new("usage", json!({ "argv": std::env::args().collect::<Vec<_>>() }));
                r.outcome = "usage-error".into();
                r.exit_code = EXIT_USAGE as i32;
                r.details = json!({ "error": e.to_string() });
                let _ = r.write(&fallback_report_path());
                return ExitCode::from(EXIT_USAGE);
            }
            return ExitCode::SUCCESS;
        }
    };
    let report_path = cli.report.clone().unwrap_or_else(|| cli.out_dir.join("dirramsey-report.json"));
    let (name, params) = describe(&cli.command);
    let mut report = RunReport::new(name, params);

    let result = std::fs::create_dir_all(&cli.out_dir)
        .map_err(Usage::from)
        .and_then(|_| configure_jobs(cli.jobs))
        .and_then(|_| run(&cli, &mut report));
    let code = match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            report.outcome = "usage-error".into();
            report.details = json!({ "error": msg });
            EXIT_USAGE
        }
    };
    report.exit_code = code as i32;
    report.wall_time_ms = start.elapsed().as_millis();
    if let Err(e) = report.write(&report_path) {
        eprintln!("error: cannot write report {}: {e}", report_path.display());
    }
    ExitCode::from(code)
}

/// Report location when the arguments did not parse: honour --report and --out-dir if present.
fn fallback_report_path() -> PathBuf {
    let args: Vec<String> = std::env::args().collect();
    let value = |flag: &str| {
        args.iter().enumerate().find_map(|(i, a)| {
            a.strip_prefix(&format!("{flag}=")).map(str::to_string).or_else(|| (a == flag).then(|| args.get(i + 1).cloned()).flatten())
        })
    };
    match (value("--report"), value("--out-dir")) {
        (Some(r), _) => PathBuf::from(r),
        (None, Some(d)) if Path::new(&d).is_dir() => Path::new(&d).join("dirramsey-report.json"),
        _ => PathBuf::from("dirramsey-report.json"),
    }
}

fn configure_jobs(jobs: Option<usize>) -> Result<(), Usage> {
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    Ok(())
}

fn describe(cmd: &Command) -> (String, Value) {
    match cmd {
        Command::Construct(Construct::Lex { n, l, k }) => ("construct lex".into(), json!({ "n": n, "l": l, "k": k })),
        Command::Construct(Construct::Layered { n, k, stage }) => {
            ("construct layered".into(), json!({ "n": n, "k": k, "stage": stage }))
        }
        Command::Check(a) => (
            "check".into(),
            json!({ "colouring": a.colouring, "tree": a.tree, "path_order": a.path_order, "colour": a.colour }),
        ),
        Command::Embed(Embed::Path { colouring, targets, .. }) => {
            ("embed path".into(), json!({ "colouring": colouring, "targets": targets }))
        }
        Command::Embed(Embed::Tree { colouring, targets, tracked, .. }) => {
            ("embed tree".into(), json!({ "colouring": colouring, "targets": targets, "tracked": tracked }))
        }
        Command::Exact(Exact::Rt(a)) => ("exact rt".into(), exact_params(a)),
        Command::Exact(Exact::R(a)) => ("exact r".into(), exact_params(a)),
        Command::Suite(a) => ("suite".into(), json!({ "runs": a.runs, "seed": a.seed })),
    }
}

fn exact_params(a: &ExactArgs) -> Value {
    json!({ "targets": a.targets, "colours": a.colours, "max_n": a.max_n })
}

fn run(cli: &Cli, report: &mut RunReport) -> Result<u8, Usage> {
    match &cli.command {
        Command::Construct(c) => construct(c, &cli.out_dir, report),
        Command::Check(a) => check(a, report),
        Command::Embed(e) => embed(e, &cli.out_dir, report),
        Command::Exact(Exact::Rt(a)) => exact(a, true, &cli.out_dir, report),
        Command::Exact(Exact::R(a)) => exact(a, false, &cli.out_dir, report),
        Command::Suite(a) => suite(a, cli.jobs, report),
    }
}

fn read_colouring(path: &Path) -> Result<ColouredDigraph, Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    parse_colouring(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

/// A tree file if the path exists, otherwise a built-in name.
fn read_target(spec: &str) -> Result<OrientedTree, Usage> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{spec}: {e}")))?;
        return parse_tree(&text).map_err(|e| Usage(format!("{spec}: {e}")));
    }
    named_target(spec).ok_or_else(|| Usage(format!("`{spec}` is neither a tree file nor a built-in target")))
}

fn write_file(path: &Path, text: &str) -> Result<String, Usage> {
    std::fs::write(path, text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

fn construct(c: &Construct, out: &Path, report: &mut RunReport) -> Result<u8, Usage> {
    let (stem, host, params, coords, verdict) = match c {
        Construct::Lex { n, l, k } => {
            let c = build_lexicographic(*n, *l, *k)?;
            let v = c.self_verify();
            (format!("lex-n{n}-l{l}-k{k}"), c.host.clone(), c.parameters(), c.coordinates, v)
        }
        Construct::Layered { n, k, stage } => {
            let stage = match stage {
                None => Stage::last_for(*k),
                Some(s) => Stage::parse(s).ok_or_else(|| Usage(format!("unknown stage `{s}`")))?,
            };
            let c = build_layered(*n, *k, stage)?;
            let v = c.self_verify();
            let stem = format!("layered-n{n}-k{k}-{}", format!("{stage:?}").to_lowercase());
            (stem, c.host.clone(), c.parameters(), c.coordinates, v)
        }
    };
    let col = write_file(&out.join(format!("{stem}.col")), &write_colouring(&host))?;
    let side = sidecar(params, &coords, &verdict);
    let side_path = write_file(&out.join(format!("{stem}.json")), &serde_json::to_string_pretty(&side)?)?;
    for ch in &verdict.checks {
        println!("{:<50} {}", ch.bound, if ch.passed { "pass" } else { "FAIL" });
    }
    println!("order {} -> {col}", host.order());
    report.certificates = vec![col, side_path];
    report.verification = Verification::OracleChecked;
    report.outcome = if verdict.passed() { "pass" } else { "fail" }.into();
    report.details = json!({ "order": host.order(), "checks": verdict.checks });
    Ok(if verdict.passed() { EXIT_OK } else { EXIT_FAILED })
}

fn check(a: &CheckArgs, report: &mut RunReport) -> Result<u8, Usage> {
    let host = read_colouring(&a.colouring)?;
    let mut bounds = Vec::new();
    for t in &a.tree {
        bounds.push(Forbidden::Tree { colour: a.colour, tree: read_target(t)? });
    }
    if let Some(order) = a.path_order {
        if order == 0 {
            return Err(Usage("--path-order must be positive".into()));
        }
        bounds.push(Forbidden::PathLength { colour: a.colour, length: order - 1 });
    }
    let verdict = verify_construction(&host, &bounds);
    for ch in &verdict.checks {
        match &ch.witness {
            None => println!("{:<50} pass", ch.bound),
            Some(w) => println!("{:<50} FAIL at {w:?}", ch.bound),
        }
    }
    report.verification = Verification::OracleChecked;
    report.outcome = if verdict.passed() { "pass" } else { "fail" }.into();
    report.details = json!({ "order": host.order(), "colours": host.colours(), "checks": verdict.checks });
    Ok(if verdict.passed() { EXIT_OK } else { EXIT_FAILED })
}

fn embed(e: &Embed, out: &Path, report: &mut RunReport) -> Result<u8, Usage> {
    let (colouring, outcome, trace, kind) = match e {
        Embed::Path { colouring, targets, trace } => {
            let host = read_colouring(colouring)?;
            let path = read_target(&targets[0])?;
            (host.clone(), ramsey_path_embed_tournament(&host, &path, *trace)?, *trace, "path")
        }
        Embed::Tree { colouring, targets, tracked, trace } => {
            let host = read_colouring(colouring)?;
            let trees = targets.iter().map(|t| read_target(t)).collect::<Result<Vec<_>, _>>()?;
            (host.clone(), ramsey_tree_embed_tournament(&host, &trees, *tracked, *trace)?, *trace, "tree")
        }
    };
    if trace {
        print!("{}", outcome.trace.render());
    }
    finish_embed(&colouring, &outcome, kind, out, report)
}

fn finish_embed(
    host: &ColouredDigraph,
    outcome: &RamseyEmbedOutcome,
    kind: &str,
    out: &Path,
    report: &mut RunReport,
) -> Result<u8, Usage> {
    let threshold = outcome.threshold.map(|t| t.to_string());
    let base = json!({
        "threshold": threshold,
        "guaranteed": outcome.guaranteed,
        "fallback_used": outcome.fallback_used,
        "guarantee_held": outcome.guarantee_held(),
        "trace": outcome.trace.steps().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    });
    match &outcome.embedding {
        Some(emb) => {
            let valid = emb.verify(host).is_ok();
            let cert = json!({
                "colour": emb.colour,
                "tree": write_tree(&emb.tree),
                "host_vertices": emb.host_vertices,
            });
            let path =
                write_file(&out.join(format!("embed-{kind}.cert.json")), &serde_json::to_string_pretty(&cert)?)?;
            println!("colour {} copy at {:?}", emb.colour, emb.host_vertices);
            report.certificates = vec![path];
            report.verification = if valid { Verification::OracleChecked } else { Verification::Unverified };
            report.outcome = format!("found colour {}", emb.colour);
            report.details = json!({ "run": base, "certificate": cert });
            Ok(if valid && outcome.guarantee_held() { EXIT_OK } else { EXIT_FAILED })
        }
        None => {
            println!("no monochromatic copy (exhaustive search confirms)");
            report.outcome = "absent".into();
            report.details = json!({ "run": base });
            Ok(if outcome.guarantee_held() { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn exact(a: &ExactArgs, tournaments: bool, out: &Path, report: &mut RunReport) -> Result<u8, Usage> {
    let mut trees = a.targets.iter().map(|t| read_target(t)).collect::<Result<Vec<_>, _>>()?;
    let mut labels = a.targets.clone();
    if trees.is_empty() {
        return Err(Usage("--targets needs at least one tree".into()));
    }
    if let Some(k) = a.colours {
        if trees.len() == 1 && k > 1 {
            trees = vec![trees[0].clone(); k];
            labels = vec![labels[0].clone(); k];
        } else if trees.len() != k {
            return Err(Usage(format!("{} targets for {k} colours", trees.len())));
        }
    }
    let k = trees.len();
    let opts = SearchOptions { max_n: a.max_n, caps: SearchCaps::from_env(k), jobs: None };
    let res = if tournaments { oriented_ramsey_exact(&trees, &opts)? } else { directed_ramsey_exact(&trees, &opts)? };
    let family = if tournaments { "rt" } else { "r" };
    let witness_file = match &res.witness {
        Some(w) => Some(write_file(&out.join(format!("exact-{family}-witness.col")), &write_colouring(w))?),
        None => None,
    };
    let verified = res.recheck_witness();
    report.certificates = witness_file.iter().cloned().collect();
    report.verification = match (&res.witness, verified) {
        (None, _) => Verification::NotApplicable,
        (Some(_), true) => Verification::OracleChecked,
        (Some(_), false) => Verification::Unverified,
    };
    report.details = res.to_json(&labels, witness_file.as_deref());
    match res.value {
        Some(v) => {
            println!("{}({}) = {v}", family.to_uppercase(), labels.join(", "));
            report.outcome = format!("value {v}");
            Ok(if verified { EXIT_OK } else { EXIT_FAILED })
        }
        None => {
            let why = res.inconclusive.clone().unwrap_or_default();
            println!("{}({}) >= {} (inconclusive: {why})", family.to_uppercase(), labels.join(", "), res.lower_bound);
            report.outcome = format!("inconclusive: {why}");
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn suite(a: &SuiteArgs, jobs: Option<usize>, report: &mut RunReport) -> Result<u8, Usage> {
    let cfg = SuiteConfig { seed: a.seed, randomized_runs: a.runs, jobs };
    let reports = run_suite(&cfg);
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().any(|r| r.status() == Status::Fail);
    let infeasible = reports.iter().any(|r| r.status() == Status::Infeasible);
    report.verification = Verification::OracleChecked;
    report.outcome = match (failed, infeasible) {
        (true, _) => "fail",
        (false, true) => "pass with infeasible parts",
        (false, false) => "pass",
    }
    .into();
    report.details = serde_json::to_value(&reports)?;
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}
