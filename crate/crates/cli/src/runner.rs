//! Execution of one seeded optimization run: the generation loop plus
//! measurement collection and the adaptation schedule.

use crate::design::Design;
use opadapt_core::adapt::Portfolio;
use opadapt_core::credit::MeasurementWindow;
use opadapt_core::engine::{self, Population};
use opadapt_core::interpret::{DistributionFamily, Interpretation, PooledDistribution};
use opadapt_core::objectives::{self, ObjectiveId, ObjectiveSpec};
use opadapt_core::operators::{OperatorId, OperatorParams, OPERATOR_COUNT};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Knobs for a single run.
#[derive(Debug, Clone)]
pub struct RunSettings {
    pub max_generations: u64,
    pub family: DistributionFamily,
    pub params: OperatorParams,
    /// Keep a probability snapshot at generation 0 and after every update.
    pub record_probabilities: bool,
    /// Keep every measurement credited during the run.
    pub record_measurements: bool,
}

impl RunSettings {
    pub fn new(max_generations: u64) -> RunSettings {
        RunSettings {
            max_generations,
            family: DistributionFamily::Normal,
            params: OperatorParams::default(),
            record_probabilities: false,
            record_measurements: false,
        }
    }
}

/// Everything observable about one finished run.
#[derive(Debug, Clone)]
pub struct SingleRunOutput {
    /// Best fitness found up to and including each generation (index 0 =
    /// generation 1); never decreases.
    pub best_so_far: Vec<f64>,
    /// First generation at which the problem counted as solved (0 = already
    /// solved by the initial population).
    pub solved_generation: Option<u64>,
    /// Generations at which a probability update fired.
    pub update_generations: Vec<u64>,
    /// Updates whose pooled distribution was degenerate (scores zeroed).
    pub degenerate_pool_updates: Vec<u64>,
    /// `(generation, probabilities)` snapshots, if requested.
    pub probability_snapshots: Vec<(u64, [f64; OPERATOR_COUNT])>,
    /// `(generation, operator, value)` measurement rows, if requested.
    pub measurement_rows: Vec<(u64, OperatorId, f64)>,
}

impl SingleRunOutput {
    /// Best-so-far fitness at `generation` (1-based).
    pub fn best_at(&self, generation: u64) -> f64 {
        self.best_so_far[(generation - 1) as usize]
    }
}

fn score_window(
    window: &MeasurementWindow,
    interpretation: Interpretation,
    family: DistributionFamily,
) -> ([Option<f64>; OPERATOR_COUNT], bool) {
    let per_op = window.per_operator_values();
    let mut scores = [None; OPERATOR_COUNT];
    match interpretation {
        Interpretation::Average => {
            for (slot, sample) in per_op.iter().enumerate() {
                scores[slot] = opadapt_core::interpret::interpret_average(sample);
            }
            (scores, false)
        }
        Interpretation::Outlier => {
            let pooled = PooledDistribution::fit(&per_op, family);
            for (slot, sample) in per_op.iter().enumerate() {
                scores[slot] = Interpretation::Outlier.score(sample, &pooled);
            }
            (scores, pooled.is_degenerate())
        }
    }
}

/// Run `design` on `objective` for the configured number of generations,
/// fully determined by `seed`.
pub fn run_single(
    design: &Design,
    objective: ObjectiveId,
    settings: &RunSettings,
    seed: u64,
) -> SingleRunOutput {
    let spec = ObjectiveSpec::new(objective);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pop = Population::initialize(&spec, &mut rng);
    let mut portfolio = design.portfolio();
    let mut window = design.measurement.map(MeasurementWindow::new);

    let mut best = pop.best().fitness;
    let mut out = SingleRunOutput {
        best_so_far: Vec::with_capacity(settings.max_generations as usize),
        solved_generation: if objectives::is_solved(best) { Some(0) } else { None },
        update_generations: Vec::new(),
        degenerate_pool_updates: Vec::new(),
        probability_snapshots: Vec::new(),
        measurement_rows: Vec::new(),
    };
    if settings.record_probabilities {
        out.probability_snapshots.push((0, *portfolio.probabilities()));
    }

    for g in 1..=settings.max_generations {
        let (next, events) = engine::step_generation(
            &pop,
            &spec,
            &settings.params,
            portfolio.probabilities(),
            &mut rng,
        );
        pop = next;
        if let Some(w) = &mut window {
            w.record_events(pop.generation, &events);
            w.record_population(&pop);
        }

        let gen_best = pop.best().fitness;
        if gen_best > best {
            best = gen_best;
        }
        if out.solved_generation.is_none() && objectives::is_solved(best) {
            out.solved_generation = Some(g);
        }
        out.best_so_far.push(best);

        if portfolio.is_adaptive() && Portfolio::update_due(g) {
            let w = window.as_mut().expect("adaptive designs carry a window");
            let (scores, degenerate) =
                score_window(w, design.interpretation.expect("adaptive designs interpret"), settings.family);
            portfolio.apply_scores(&scores);
            out.update_generations.push(g);
            if degenerate {
                out.degenerate_pool_updates.push(g);
            }
            if settings.record_probabilities {
                out.probability_snapshots.push((g, *portfolio.probabilities()));
            }
            if settings.record_measurements {
                out.measurement_rows.extend(w.dump_rows());
            }
            w.clear(g);
        }
    }

    if settings.record_measurements {
        if let Some(w) = &window {
            out.measurement_rows.extend(w.dump_rows());
        }
    }
    out
}
