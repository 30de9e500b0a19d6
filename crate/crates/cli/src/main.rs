use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use covqsc::config::{ConfigError, RunConfig};
use covqsc::suites::{uncovered_operations, Suite};
use covqsc::RunOptions;
use covqsc_core::group::{parse_word, GeneratorSet};
use covqsc_core::hyperboloid::{build_grid, SectionDocument};
use covqsc_core::induced_rep::ImprimitivitySystem;

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "covqsc", version, about = "Covariant quantum stochastic calculus verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Run(RunArgs),
    /// Print a momentum grid as a section document.
    Grid(GridArgs),
    /// Apply U_g to a section document.
    ApplyU(ApplyArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Repeatable; overrides the configured suite list.
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,
    /// Write the JSON-lines report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write dense covariant operators as JSON matrix documents (large).
    #[arg(long, value_name = "DIR")]
    dump_operators: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.5)]
    extent: f64,
    #[arg(long, default_value_t = 3)]
    n: usize,
}

#[derive(Args)]
struct ApplyArgs {
    /// Section document; `-` reads standard input.
    #[arg(long)]
    section: PathBuf,
    /// Word over the generators Rx Ry Rz Bx By Bz, e.g. `Rz Bx^-1`.
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = std::f64::consts::PI / 7.0)]
    angle: f64,
    #[arg(long, default_value_t = 0.3)]
    rapidity: f64,
}

fn threads_from_env() -> Result<Option<usize>, ConfigError> {
    match std::env::var("COVQSC_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(ConfigError::field("COVQSC_THREADS", format!("expected a positive integer, got `{v}`"))),
        },
    }
}

fn load_config(args: &RunArgs) -> Result<(RunConfig, RunOptions), ConfigError> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let mut suites = Vec::new();
    for (i, name) in args.suites.iter().enumerate() {
        match Suite::from_name(name) {
            Some(s) => suites.push(s),
            None => return Err(ConfigError::field(format!("--suite[{i}]"), format!("unknown suite `{name}`"))),
        }
    }
    cfg.validate()?;
    Ok((
        cfg,
        RunOptions {
            suites,
            dump_dir: args.dump_operators.clone(),
        },
    ))
}

fn run(args: RunArgs) -> u8 {
    let missing = uncovered_operations();
    if !missing.is_empty() {
        eprintln!("internal error: operations without a check: {}", missing.join(", "));
        return EXIT_CONFIG;
    }
    let (cfg, options) = match load_config(&args) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("config error: {e}");
            return EXIT_CONFIG;
        }
    };
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("config error: {e}");
            return EXIT_CONFIG;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("cannot start worker pool: {e}");
            return EXIT_CONFIG;
        }
    };
    let report = pool.install(|| covqsc::run(&cfg, &options));
    print!("{}", report.to_table());
    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, report.to_jsonl()) {
            eprintln!("cannot write {}: {e}", path.display());
            return EXIT_FAIL;
        }
    }
    if report.passed() {
        0
    } else {
        eprintln!("failing checks:");
        for r in report.records.iter().filter(|r| !r.pass) {
            eprintln!(
                "  {}/{} deviation {:.3e} > {:.1e} at {} {}{}",
                r.suite,
                r.check,
                r.deviation,
                r.tolerance,
                r.g_word,
                r.region,
                r.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default()
            );
        }
        EXIT_FAIL
    }
}

fn grid(args: GridArgs) -> u8 {
    match build_grid(args.mass, args.extent, args.n) {
        Ok(g) => {
            println!("{}", SectionDocument::from_grid(&g).to_json());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

fn apply_u(args: ApplyArgs) -> u8 {
    let text = if args.section.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&args.section)
    };
    let result = (|| -> Result<String, String> {
        let text = text.map_err(|e| e.to_string())?;
        let doc = SectionDocument::from_json(&text).map_err(|e| e.to_string())?;
        let section = doc.section().map_err(|e| e.to_string())?;
        let set = GeneratorSet::rotations_and_boosts(args.angle, args.rapidity).map_err(|e| e.to_string())?;
        let word = parse_word(&set, &args.word).ok_or_else(|| format!("cannot parse word `{}`", args.word))?;
        let sys = ImprimitivitySystem::spinor(section.grid().mass()).map_err(|e| e.to_string())?;
        let moved = sys.apply_u(&set.evaluate(&word), &section).map_err(|e| e.to_string())?;
        Ok(SectionDocument::from_section(&moved).to_json())
    })();
    match result {
        Ok(json) => {
            println!("{json}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(match cli.command {
        Command::Run(args) => run(args),
        Command::Grid(args) => grid(args),
        Command::ApplyU(args) => apply_u(args),
    })
}
