//! Command-line surface.
//!
//! Exit codes: 0 on success (including `--help`/`--version`), 1 for usage
//! errors (bad flags, malformed config, unknown names), 2 for I/O errors
//! (unreadable input, unwritable output).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analyze;
use crate::campaign::{
    self, measurements_csv, probabilities_csv, results_csv, run_campaign, CampaignOptions,
};
use crate::config::CampaignConfig;
use crate::design::{Design, ALL_DESIGNS};
use crate::runner::{run_single, RunSettings};
use opadapt_core::objectives::{self, ObjectiveSpec};
use opadapt_core::operators::{catalog, OperatorParams};

#[derive(Debug, Parser)]
#[command(
    name = "opadapt",
    version,
    about = "Evolutionary optimization with feedback-adaptive operator probabilities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a seeded campaign and write its results CSV.
    Run(RunArgs),
    /// Recompute the report tables from a results CSV.
    Analyze(AnalyzeArgs),
    /// List the benchmark problems.
    ListProblems,
    /// List the variation operators.
    ListOperators,
    /// Run one seeded design, printing operator probabilities per cycle.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Campaign config file; omit to run the full default campaign.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
    /// Override the config's master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (default: one per core).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Also write probabilities.csv with per-cycle operator probabilities.
    #[arg(long)]
    pub dump_probabilities: bool,
    /// Also write measurements.csv with raw credited measurement values.
    #[arg(long)]
    pub dump_measurements: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Results CSV produced by the run subcommand.
    pub csv: PathBuf,
    /// Directory for figure CSVs and the significance file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// Design name (see the run config schema for the list).
    #[arg(long, default_value = "A5-I3")]
    pub design: String,
    /// Problem code F1..F10.
    #[arg(long, default_value = "F2")]
    pub problem: String,
    #[arg(long, default_value_t = 200)]
    pub generations: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed invocation or input content; exits 1.
    Usage(String),
    /// Filesystem failure; exits 2.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    campaign::write_text(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn cmd_run(args: &RunArgs) -> Result<(), CliError> {
    let mut config = match &args.config {
        Some(path) => CampaignConfig::parse(&read_file(path)?).map_err(CliError::Usage)?,
        None => CampaignConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    let options = CampaignOptions {
        jobs: args.jobs,
        record_probabilities: args.dump_probabilities,
        record_measurements: args.dump_measurements,
    };
    println!(
        "campaign: {} designs x {} problems x {} runs, {} generations (master seed {})",
        config.designs.len(),
        config.problems.len(),
        config.runs_per_cell,
        config.max_generations,
        config.master_seed
    );
    let results = run_campaign(&config, &options);

    std::fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", args.out.display())))?;
    let results_path = args.out.join("results.csv");
    let text = results_csv(&results);
    write_file(&results_path, &text)?;
    println!(
        "wrote {} ({} rows)",
        results_path.display(),
        text.lines().count() - 1
    );
    if args.dump_probabilities {
        let path = args.out.join("probabilities.csv");
        write_file(&path, &probabilities_csv(&results))?;
        println!("wrote {}", path.display());
    }
    if args.dump_measurements {
        let path = args.out.join("measurements.csv");
        write_file(&path, &measurements_csv(&results))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let rows = analyze::parse_results_csv(&read_file(&args.csv)?).map_err(CliError::Usage)?;
    let report = analyze::analyze(&rows).map_err(CliError::Usage)?;
    print!("{}", analyze::render_report(&report));
    if let Some(dir) = &args.out {
        analyze::write_report_files(&report, dir)
            .map_err(|e| CliError::Io(format!("cannot write into {}: {e}", dir.display())))?;
        println!("report files written to {}", dir.display());
    }
    Ok(())
}

pub fn render_problem_table() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<5} {:<20} {:>4}  {}", "code", "name", "dim", "bounds");
    for spec in ObjectiveSpec::all() {
        let _ = writeln!(
            out,
            "{:<5} {:<20} {:>4}  [{}, {}]^{}",
            spec.id.code(),
            spec.name,
            spec.dimension,
            spec.lower[0],
            spec.upper[0],
            spec.dimension
        );
    }
    out
}

pub fn render_operator_table() -> String {
    let params = OperatorParams::default();
    let mut out = String::new();
    let _ = writeln!(out, "{:<6} {:<29} {:>5}  {}", "id", "name", "arity", "parameters");
    for info in catalog(&params) {
        let rendered = if info.params.is_empty() {
            String::from("-")
        } else {
            info.params
                .iter()
                .map(|(name, value)| format!("{name} = {value}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(
            out,
            "{:<6} {:<29} {:>5}  {}",
            info.id.to_string(),
            info.name,
            info.arity,
            rendered
        );
    }
    out
}

pub fn render_demo(args: &DemoArgs) -> Result<String, CliError> {
    let design = Design::by_name(&args.design).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown design '{}' (known: {})",
            args.design,
            ALL_DESIGNS.iter().map(|d| d.name).collect::<Vec<_>>().join(", ")
        ))
    })?;
    let problem = args
        .problem
        .parse::<objectives::ObjectiveId>()
        .map_err(CliError::Usage)?;
    if args.generations < 1 {
        return Err(CliError::Usage("generations must be at least 1".into()));
    }

    let mut settings = RunSettings::new(args.generations);
    settings.record_probabilities = true;
    let out = run_single(design, problem, &settings, args.seed);

    let spec = ObjectiveSpec::new(problem);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "design {} on {} ({}), {} generations, seed {}",
        design.name, problem.code(), spec.name, args.generations, args.seed
    );
    let _ = write!(text, "{:>6}", "gen");
    for slot in 1..=10 {
        let _ = write!(text, "{:>9}", format!("op{slot}"));
    }
    let _ = writeln!(text);
    for (generation, probs) in &out.probability_snapshots {
        let _ = write!(text, "{generation:>6}");
        for p in probs {
            let _ = write!(text, "{p:>9.4}");
        }
        if out.degenerate_pool_updates.contains(generation) {
            let _ = write!(text, "  degenerate pool: scores zeroed");
        }
        let _ = writeln!(text);
    }
    if !design.is_adaptive() {
        let _ = writeln!(text, "fixed portfolio; probabilities never change");
    }
    match out.solved_generation {
        Some(g) => {
            let _ = writeln!(
                text,
                "best fitness {:.6e}, solved at generation {g}",
                out.best_at(args.generations)
            );
        }
        None => {
            let _ = writeln!(
                text,
                "best fitness {:.6e}, not solved",
                out.best_at(args.generations)
            );
        }
    }
    Ok(text)
}

pub fn dispatch(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::ListProblems => {
            print!("{}", render_problem_table());
            Ok(())
        }
        Command::ListOperators => {
            print!("{}", render_operator_table());
            Ok(())
        }
        Command::Demo(args) => {
            print!("{}", render_demo(args)?);
            Ok(())
        }
    }
}

/// Parse `std::env::args` and execute; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_problem_table_lists_all_ten() {
        let table = render_problem_table();
        assert_eq!(table.lines().count(), 11, "header plus ten problems");
        assert!(table.contains("F1 "));
        assert!(table.contains("F10"));
        assert!(table.contains("Rastrigin"));
        assert!(table.contains("[-5.12, 5.12]^20"));
    }

    #[test]
    fn the_operator_table_lists_all_ten() {
        let table = render_operator_table();
        assert_eq!(table.lines().count(), 11, "header plus ten operators");
        assert!(table.contains("op1 "));
        assert!(table.contains("op10"));
        assert!(table.contains("r = 0.5"));
        assert!(table.contains("arity"));
    }

    #[test]
    fn demo_prints_one_line_per_update_cycle() {
        let args = DemoArgs {
            design: "A1-I1".into(),
            problem: "F9".into(),
            generations: 45,
            seed: 3,
        };
        let text = render_demo(&args).unwrap();
        let gen_lines: Vec<&str> = text
            .lines()
            .filter(|l| l.trim_start().starts_with(char::is_numeric))
            .collect();
        assert_eq!(gen_lines.len(), 3, "snapshots at 0, 20, 40:\n{text}");
        assert!(text.contains("best fitness"), "{text}");
    }

    #[test]
    fn demo_rejects_unknown_names() {
        let bad_design = DemoArgs {
            design: "A9-I9".into(),
            problem: "F1".into(),
            generations: 5,
            seed: 1,
        };
        let err = render_demo(&bad_design).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.message().contains("unknown design"));

        let bad_problem = DemoArgs {
            design: "SGA1".into(),
            problem: "F0".into(),
            generations: 5,
            seed: 1,
        };
        assert_eq!(render_demo(&bad_problem).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn argv_parsing_covers_the_subcommands() {
        let cli = Cli::try_parse_from(["opadapt", "list-problems"]).unwrap();
        assert!(matches!(cli.command, Command::ListProblems));

        let cli = Cli::try_parse_from([
            "opadapt",
            "run",
            "--config",
            "c.txt",
            "--out",
            "d",
            "--seed",
            "9",
            "--jobs",
            "2",
            "--dump-probabilities",
        ])
        .unwrap();
        match cli.command {
            Command::Run(args) => {
                assert_eq!(args.config.as_deref(), Some(Path::new("c.txt")));
                assert_eq!(args.seed, Some(9));
                assert_eq!(args.jobs, Some(2));
                assert!(args.dump_probabilities);
                assert!(!args.dump_measurements);
            }
            other => panic!("parsed wrong command: {other:?}"),
        }

        assert!(Cli::try_parse_from(["opadapt", "fly"]).is_err());
        assert!(Cli::try_parse_from(["opadapt"]).is_err());
    }
}
