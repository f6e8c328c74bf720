//! Command-line front end.
//!
//! Exit codes partition outcomes: 0 success, 1 negative result (failed
//! verification, exhausted search), 2 usage or malformed input, 3 greedy
//! stall, 4 resource limits (overflow, node budget, grid budget).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use netforge::discrepancy::{bound_0m2, extreme_discrepancy, star_discrepancy};
use netforge::greedy::{greedy_run, stall_search_budgeted, ChoicePolicy, RunOutcome};
use netforge::netfile::{FamilyFile, NetFile, Provenance};
use netforge::plot::{render_svg, PlotOptions};
use netforge::points::{NetPoints, Placement};
use netforge::rational::{Rational, RationalJson};
use netforge::recursive::{hammersley, recursive_run, PermutationFamily};
use netforge::verify::{exhaustive_search_budgeted, is_net};
use netforge::{Error, DEFAULT_SEARCH_BUDGET};

#[derive(Parser)]
#[command(
    name = "netforge",
    version,
    about = "Construct, verify, analyze and plot (0,m,2)-nets in base b"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a net and emit it as a version-1 net file (JSON).
    Construct(ConstructArgs),
    /// Check the (t,m,s)-net property of a net file.
    Verify(VerifyArgs),
    /// Exact star discrepancy, the (0,m,2) bound, and optionally the
    /// extreme discrepancy.
    Analyze(AnalyzeArgs),
    /// Render a net file as a deterministic SVG.
    Plot(PlotArgs),
    /// Search for a (0,m,s)-net by backtracking, or with --stall for a
    /// greedy choice prefix that empties the free region early.
    Search(SearchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Greedy,
    Recursive,
    Hammersley,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    /// First free box in row-major order.
    Lex,
    /// Seeded uniform choice among free boxes.
    Random,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    #[arg(long)]
    base: u64,
    #[arg(long)]
    m: u32,
    /// Dimension; only the greedy algorithm accepts s != 2.
    #[arg(long, default_value_t = 2)]
    s: usize,
    /// Seed for random policy, random permutations and random placement.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Greedy choice policy.
    #[arg(long, value_enum, default_value_t = Policy::Lex)]
    policy: Policy,
    /// Permutation family for the recursive algorithm: "identity", "random",
    /// or a path to a family file.
    #[arg(long, default_value = "identity")]
    perms: String,
    /// Point placement within grid boxes: "corner", "center" or "random:G"
    /// with G a finer exponent.
    #[arg(long, default_value = "corner")]
    placement: String,
    /// Output file (standard output if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Quality parameter to check.
    #[arg(long)]
    t: u32,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Also compute the extreme discrepancy (quartic grid enumeration).
    #[arg(long)]
    extreme: bool,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Draw b-adic grid lines at resolutions 1..m.
    #[arg(long)]
    grid: bool,
    /// Shade the volume-b^-m elementary intervals containing each point.
    #[arg(long)]
    boxes: bool,
    /// Output file (standard output if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    base: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    s: usize,
    /// Node budget; NETFORGE_BUDGET overrides the default.
    #[arg(long)]
    budget: Option<u64>,
    /// Search for a stalling greedy prefix instead of a net.
    #[arg(long)]
    stall: bool,
    /// Maximum stall prefix length (default b^m - 1).
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    bound: RationalJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    extreme: Option<RationalJson>,
    star: RationalJson,
    within_bound: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Plot(args) => cmd_plot(args),
        Command::Search(args) => cmd_search(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Overflow { .. }
                | Error::BudgetExceeded { .. }
                | Error::GridTooLarge { .. } => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_to_string(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedFile(format!("{}: {e}", path.display())))
}

fn write_output(out: &Option<PathBuf>, contents: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, contents)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn parse_placement(spec: &str, seed: u64) -> Result<Placement, Error> {
    match spec {
        "corner" => Ok(Placement::Corner),
        "center" => Ok(Placement::Center),
        _ => match spec.strip_prefix("random:") {
            Some(rest) => {
                let exponent: u32 = rest.parse().map_err(|_| {
                    Error::InvalidArgument(format!("bad placement exponent in {spec:?}"))
                })?;
                Ok(Placement::Random { exponent, seed })
            }
            None => Err(Error::InvalidArgument(format!(
                "unknown placement {spec:?}; expected corner, center or random:G"
            ))),
        },
    }
}

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode, Error> {
    let placement = parse_placement(&args.placement, args.seed)?;
    let (raw, mut provenance) = match args.algorithm {
        Algorithm::Hammersley => {
            require_plane(args.s)?;
            (
                hammersley(args.base, args.m)?,
                Provenance::bare("hammersley"),
            )
        }
        Algorithm::Recursive => {
            require_plane(args.s)?;
            let family = match args.perms.as_str() {
                "identity" => PermutationFamily::identity(args.base, args.m)?,
                "random" => PermutationFamily::random(args.base, args.m, args.seed)?,
                path => {
                    FamilyFile::from_json(&read_to_string(&PathBuf::from(path))?)?.to_family()?
                }
            };
            let net = recursive_run(args.base, args.m, &family)?;
            let mut provenance = Provenance::bare("recursive");
            provenance.permutations = Some(FamilyFile::from_family(&family).levels);
            if args.perms == "random" {
                provenance.seed = Some(args.seed);
            }
            (net, provenance)
        }
        Algorithm::Greedy => {
            let policy = match args.policy {
                Policy::Lex => ChoicePolicy::Lexicographic,
                Policy::Random => ChoicePolicy::SeededUniform(args.seed),
            };
            let outcome = greedy_run(args.base, args.m, args.s, &policy)?;
            let mut provenance = Provenance::bare("greedy");
            provenance.policy = Some(
                match args.policy {
                    Policy::Lex => "lex",
                    Policy::Random => "random",
                }
                .to_string(),
            );
            if matches!(args.policy, Policy::Random) {
                provenance.seed = Some(args.seed);
            }
            match outcome {
                RunOutcome::Complete(boxes) => (NetPoints::from_boxes(&boxes)?, provenance),
                RunOutcome::Stalled(report) => {
                    let stall = serde_json::json!({
                        "chosen": report.chosen.iter().map(|b| b.corner().to_vec()).collect::<Vec<_>>(),
                        "confirmed_empty": report.confirmed_empty,
                        "steps": report.steps,
                    });
                    eprintln!("{stall}");
                    return Ok(ExitCode::from(3));
                }
            }
        }
    };
    if matches!(placement, Placement::Random { .. }) {
        provenance.seed = Some(args.seed);
    }
    let placed = raw.placed(args.m, placement)?;
    let file = NetFile::from_points(&placed, args.m, provenance)?;
    write_output(&args.out, &format!("{}\n", file.to_canonical_json()))?;
    Ok(ExitCode::SUCCESS)
}

fn require_plane(s: usize) -> Result<(), Error> {
    if s != 2 {
        return Err(Error::DimensionUnsupported { s });
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let file = NetFile::from_json(&read_to_string(&args.input)?)?;
    let report = is_net(&file.to_points()?, args.t)?;
    println!(
        "{}",
        serde_json::to_string(&report).expect("reports always serialize")
    );
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<ExitCode, Error> {
    let file = NetFile::from_json(&read_to_string(&args.input)?)?;
    let points = file.to_points()?;
    let star = star_discrepancy(&points)?;
    let bound = bound_0m2(file.b, file.m)?;
    let extreme = if args.extreme {
        Some(extreme_discrepancy(&points)?.to_json()?)
    } else {
        None
    };
    let report = AnalyzeReport {
        bound: bound.to_json()?,
        extreme,
        star: star.to_json()?,
        within_bound: star <= Rational::one().min(bound),
    };
    println!(
        "{}",
        serde_json::to_string(&report).expect("reports always serialize")
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_plot(args: PlotArgs) -> Result<ExitCode, Error> {
    let file = NetFile::from_json(&read_to_string(&args.input)?)?;
    let svg = render_svg(
        &file.to_points()?,
        file.m,
        &PlotOptions {
            grid: args.grid,
            boxes: args.boxes,
        },
    )?;
    write_output(&args.out, &svg)?;
    Ok(ExitCode::SUCCESS)
}

fn search_budget(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("NETFORGE_BUDGET") {
        Ok(text) => text.parse().map_err(|_| {
            Error::InvalidArgument(format!("NETFORGE_BUDGET is not an integer: {text:?}"))
        }),
        Err(_) => Ok(DEFAULT_SEARCH_BUDGET),
    }
}

fn cmd_search(args: SearchArgs) -> Result<ExitCode, Error> {
    let budget = search_budget(args.budget)?;
    if args.stall {
        let side = netforge::badic::pow_checked(args.base, args.m)?;
        let depth = args.depth.unwrap_or((side as usize).saturating_sub(1));
        match stall_search_budgeted(args.base, args.m, args.s, depth, budget)? {
            Some(prefix) => {
                let report = serde_json::json!({
                    "prefix": prefix.iter().map(|b| b.corner().to_vec()).collect::<Vec<_>>(),
                    "steps": prefix.len(),
                });
                println!("{report}");
                Ok(ExitCode::SUCCESS)
            }
            None => {
                println!("{}", serde_json::json!({ "result": "none" }));
                Ok(ExitCode::from(1))
            }
        }
    } else {
        match exhaustive_search_budgeted(args.base, args.m, args.s, budget)? {
            Some(net) => {
                let file = NetFile::from_points(&net, args.m, Provenance::bare("search"))?;
                println!("{}", file.to_canonical_json());
                Ok(ExitCode::SUCCESS)
            }
            None => {
                println!("{}", serde_json::json!({ "result": "none" }));
                Ok(ExitCode::from(1))
            }
        }
    }
}
