//! Campaign execution: the full design x problem x run grid, parallelized
//! with rayon, collected in a deterministic order and serialized to CSV.
//!
//! Every run gets its own seed derived from the master seed and the cell
//! coordinates, so results do not depend on thread scheduling or on which
//! other cells are part of the campaign: re-running any subset with the
//! same master seed reproduces the same runs byte for byte.

use std::io::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::config::CampaignConfig;
use crate::design::Design;
use crate::runner::{run_single, RunSettings, SingleRunOutput};
use opadapt_core::objectives::ObjectiveId;

/// One recorded stopping point of one run.
#[derive(Debug, Clone, Copy)]
pub struct StopRow {
    pub stopping_point: u64,
    pub best_fitness: f64,
    /// Generation at which the run first reached a solved fitness, if that
    /// happened at or before this stopping point.
    pub solved: Option<u64>,
}

/// One run of the campaign grid, reduced to its stopping-point records.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub design: &'static str,
    pub problem: &'static str,
    pub run_index: usize,
    pub seed: u64,
    pub rows: Vec<StopRow>,
}

/// A run record plus the optional diagnostic streams.
#[derive(Debug, Clone)]
pub struct CampaignRunResult {
    pub record: RunRecord,
    /// `(generation, probabilities)` snapshots; empty unless requested.
    pub probability_snapshots: Vec<(u64, [f64; 10])>,
    /// `(generation, operator, value)` measurement rows; empty unless requested.
    pub measurement_rows: Vec<(u64, opadapt_core::operators::OperatorId, f64)>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CampaignOptions {
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    pub record_probabilities: bool,
    pub record_measurements: bool,
}

/// Seed for one run: the first eight bytes (little endian) of
/// `SHA-256("{master_seed}/{design}/{problem}/{run_index}")`.
pub fn derive_seed(master_seed: u64, design: &str, problem: &str, run_index: usize) -> u64 {
    let tag = format!("{master_seed}/{design}/{problem}/{run_index}");
    let digest = Sha256::digest(tag.as_bytes());
    u64::from_le_bytes(digest[..8].try_into().expect("digest has at least 8 bytes"))
}

fn reduce_run(
    design: &'static Design,
    problem: ObjectiveId,
    run_index: usize,
    seed: u64,
    config: &CampaignConfig,
    out: SingleRunOutput,
    options: &CampaignOptions,
) -> CampaignRunResult {
    let rows = config
        .stopping_points()
        .into_iter()
        .map(|sp| StopRow {
            stopping_point: sp,
            best_fitness: out.best_at(sp),
            solved: out.solved_generation.filter(|&g| g <= sp),
        })
        .collect();
    CampaignRunResult {
        record: RunRecord {
            design: design.name,
            problem: problem.code(),
            run_index,
            seed,
            rows,
        },
        probability_snapshots: if options.record_probabilities {
            out.probability_snapshots
        } else {
            Vec::new()
        },
        measurement_rows: if options.record_measurements {
            out.measurement_rows
        } else {
            Vec::new()
        },
    }
}

/// Execute the whole grid. Results come back in grid order
/// (design-major, then problem, then run index) regardless of `jobs`.
pub fn run_campaign(config: &CampaignConfig, options: &CampaignOptions) -> Vec<CampaignRunResult> {
    let mut settings = RunSettings::new(config.max_generations);
    settings.family = config.family;
    settings.record_probabilities = options.record_probabilities;
    settings.record_measurements = options.record_measurements;

    let jobs: Vec<(&'static Design, ObjectiveId, usize, u64)> = config
        .designs
        .iter()
        .flat_map(|&design| {
            config.problems.iter().flat_map(move |&problem| {
                (0..config.runs_per_cell).map(move |run| {
                    let seed =
                        derive_seed(config.master_seed, design.name, problem.code(), run);
                    (design, problem, run, seed)
                })
            })
        })
        .collect();

    let execute = |pool_jobs: &[(&'static Design, ObjectiveId, usize, u64)]| {
        use rayon::prelude::*;
        pool_jobs
            .par_iter()
            .map(|&(design, problem, run, seed)| {
                let out = run_single(design, problem, &settings, seed);
                reduce_run(design, problem, run, seed, config, out, options)
            })
            .collect::<Vec<_>>()
    };

    match options.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool construction")
            .install(|| execute(&jobs)),
        None => execute(&jobs),
    }
}

pub const RESULTS_HEADER: &str = "design,problem,run,seed,stopping_point,best_fitness,solved";

/// Serialize the main results table. One row per stopping point per run,
/// fitness in full-precision scientific notation, the `solved` column left
/// empty when the run had not reached a solution by that point.
pub fn results_csv(results: &[CampaignRunResult]) -> String {
    let mut text = String::from(RESULTS_HEADER);
    text.push('\n');
    for result in results {
        let r = &result.record;
        for row in &r.rows {
            let solved = row.solved.map(|g| g.to_string()).unwrap_or_default();
            text.push_str(&format!(
                "{},{},{},{},{},{:.16e},{}\n",
                r.design, r.problem, r.run_index, r.seed, row.stopping_point, row.best_fitness,
                solved
            ));
        }
    }
    text
}

/// Serialize the per-cycle operator probabilities (from runs executed with
/// `record_probabilities`).
pub fn probabilities_csv(results: &[CampaignRunResult]) -> String {
    let mut text = String::from("design,problem,run,generation,operator,probability\n");
    for result in results {
        let r = &result.record;
        for (generation, probs) in &result.probability_snapshots {
            for (slot, p) in probs.iter().enumerate() {
                text.push_str(&format!(
                    "{},{},{},{},op{},{:.16e}\n",
                    r.design,
                    r.problem,
                    r.run_index,
                    generation,
                    slot + 1,
                    p
                ));
            }
        }
    }
    text
}

/// Serialize the raw credited measurement values (from runs executed with
/// `record_measurements`).
pub fn measurements_csv(results: &[CampaignRunResult]) -> String {
    let mut text = String::from("design,problem,run,generation,operator,value\n");
    for result in results {
        let r = &result.record;
        for (generation, op, value) in &result.measurement_rows {
            text.push_str(&format!(
                "{},{},{},{},{},{:.16e}\n",
                r.design, r.problem, r.run_index, generation, op, value
            ));
        }
    }
    text
}

pub fn write_text(path: &Path, text: &str) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(text.as_bytes())
}
