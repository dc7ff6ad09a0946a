//! The steady generational loop: a fixed-size population of unique
//! solutions, binary-tournament mating selection, one operator application
//! per offspring, and binary-tournament culling over the merged
//! parent+offspring pool.
//!
//! The probability of the single-point random mutation (slot 10) is not a
//! stored portfolio weight: it is recomputed per mating pair from the
//! normalized distance between the two selected parents, so it rises sharply
//! as the pair converges. The remaining slots share what is left in
//! proportion to their stored weights.

use crate::objectives::ObjectiveSpec;
use crate::operators::{self, OperatorId, OperatorParams, OPERATOR_COUNT};
use rand::Rng;

/// Population size, and also the number of offspring built per generation.
pub const POP_SIZE: usize = 30;

/// Baseline probability of the single-point random mutation.
pub const MUTATION_FLOOR: f64 = 0.02;
/// Extra mutation probability granted at zero parent distance.
pub const MUTATION_SPAN: f64 = 0.5;
/// Distance scale of the diversity response.
pub const DIVERSITY_DELTA: f64 = 0.001;

/// Tournament attempts allowed during culling before the remaining slots are
/// filled with random immigrants. A pool holding at least `POP_SIZE` unique
/// genomes (always true for a parent+offspring pool) never gets near this.
const CULL_ATTEMPT_CAP: usize = 10_000;

/// One candidate solution.
#[derive(Debug, Clone)]
pub struct Solution {
    pub genome: Vec<f64>,
    pub fitness: f64,
    /// Generation the solution first appeared in (0 for the initial population).
    pub birth_generation: u64,
    /// Operator that produced it; `None` for initial members and immigrants.
    pub creator: Option<OperatorId>,
}

/// What one reproduction produced, with survival outcomes filled in after
/// culling. Parent fitnesses are sorted best-first.
#[derive(Debug, Clone)]
pub struct ReproductionEvent {
    pub operator: OperatorId,
    pub parent_fitnesses: Vec<f64>,
    pub child_fitness: f64,
    /// The child's genome made it into the next population.
    pub offspring_survived: bool,
    /// The child survived and so did at least one of its parents.
    pub family_survived: bool,
}

/// A population of `POP_SIZE` solutions with pairwise distinct genomes.
#[derive(Debug, Clone)]
pub struct Population {
    pub members: Vec<Solution>,
    pub generation: u64,
}

impl Population {
    /// Draw `POP_SIZE` unique random solutions inside the feasible box.
    pub fn initialize(spec: &ObjectiveSpec, rng: &mut impl Rng) -> Population {
        let mut members: Vec<Solution> = Vec::with_capacity(POP_SIZE);
        while members.len() < POP_SIZE {
            let genome = random_genome(spec, rng);
            if members.iter().any(|m| m.genome == genome) {
                continue;
            }
            let fitness = spec.evaluate(&genome);
            members.push(Solution { genome, fitness, birth_generation: 0, creator: None });
        }
        Population { members, generation: 0 }
    }

    /// The fittest member (first one on ties).
    pub fn best(&self) -> &Solution {
        self.members
            .iter()
            .max_by(|a, b| a.fitness.total_cmp(&b.fitness))
            .expect("population is never empty")
    }
}

fn random_genome(spec: &ObjectiveSpec, rng: &mut impl Rng) -> Vec<f64> {
    (0..spec.dimension)
        .map(|i| rng.gen_range(spec.lower[i]..=spec.upper[i]))
        .collect()
}

/// Binary tournament with replacement; on equal fitness the first-drawn
/// member wins. Returns the winner's index.
pub fn tournament_select(members: &[Solution], rng: &mut impl Rng) -> usize {
    let a = rng.gen_range(0..members.len());
    let b = rng.gen_range(0..members.len());
    if members[b].fitness > members[a].fitness {
        b
    } else {
        a
    }
}

/// Euclidean distance between two genomes with every axis normalized by its
/// range, so each gene contributes on the same scale.
pub fn parent_distance(a: &[f64], b: &[f64], ranges: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .zip(ranges)
        .map(|((x, y), r)| {
            let d = (x - y) / r;
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Probability of the single-point random mutation for a mating pair at
/// normalized distance `d`. Decays from floor+span at d = 0 to the floor:
/// at `d == DIVERSITY_DELTA` the span term has already dropped to
/// span * delta (0.0205 total under the defaults).
pub fn mutation_probability(d: f64) -> f64 {
    MUTATION_FLOOR + MUTATION_SPAN * DIVERSITY_DELTA.powf(d / DIVERSITY_DELTA)
}

/// Per-pair operator distribution: slot 10 is pinned to `p_mut`, slots 1..9
/// share `1 - p_mut` in proportion to their stored weights. If all nine
/// stored weights are zero the mutation gets everything.
pub fn effective_probabilities(weights: &[f64; OPERATOR_COUNT], p_mut: f64) -> [f64; OPERATOR_COUNT] {
    let mut eff = [0.0; OPERATOR_COUNT];
    let s: f64 = weights[..OPERATOR_COUNT - 1].iter().sum();
    if s > 0.0 {
        for i in 0..OPERATOR_COUNT - 1 {
            eff[i] = (1.0 - p_mut) * weights[i] / s;
        }
        eff[OPERATOR_COUNT - 1] = p_mut;
    } else {
        eff[OPERATOR_COUNT - 1] = 1.0;
    }
    eff
}

fn draw_operator(probs: &[f64; OPERATOR_COUNT], rng: &mut impl Rng) -> OperatorId {
    let r: f64 = rng.gen();
    let mut cum = 0.0;
    let mut last_positive = OperatorId::RandomReset;
    for op in OperatorId::ALL {
        let p = probs[op.index()];
        if p > 0.0 {
            last_positive = op;
            cum += p;
            if r < cum {
                return op;
            }
        }
    }
    // floating-point shortfall at the top of the scale
    last_positive
}

/// A family survives culling when the offspring itself and at least one of
/// its parents made it into the next population.
pub fn family_survival(offspring_survived: bool, parents_survived: &[bool]) -> bool {
    offspring_survived && parents_survived.iter().any(|&p| p)
}

/// Fill a fresh population from `pool` by repeated binary tournaments,
/// inserting a winner only when its genome is not already present. If the
/// attempt cap is exhausted (a pool poorer than `POP_SIZE` unique genomes),
/// the remaining slots are filled with random immigrants.
pub fn cull(
    pool: &[Solution],
    spec: &ObjectiveSpec,
    next_generation: u64,
    rng: &mut impl Rng,
) -> Vec<Solution> {
    let mut next: Vec<Solution> = Vec::with_capacity(POP_SIZE);
    let mut attempts = 0;
    while next.len() < POP_SIZE && attempts < CULL_ATTEMPT_CAP {
        attempts += 1;
        let w = tournament_select(pool, rng);
        if next.iter().any(|m| m.genome == pool[w].genome) {
            continue;
        }
        next.push(pool[w].clone());
    }
    while next.len() < POP_SIZE {
        let genome = random_genome(spec, rng);
        if next.iter().any(|m| m.genome == genome) {
            continue;
        }
        let fitness = spec.evaluate(&genome);
        next.push(Solution {
            genome,
            fitness,
            birth_generation: next_generation,
            creator: None,
        });
    }
    next
}

/// Advance one generation: build `POP_SIZE` offspring, merge with the
/// parents, cull back down to `POP_SIZE` unique members, and report one
/// event per reproduction with survival flags resolved.
pub fn step_generation(
    pop: &Population,
    spec: &ObjectiveSpec,
    params: &OperatorParams,
    weights: &[f64; OPERATOR_COUNT],
    rng: &mut impl Rng,
) -> (Population, Vec<ReproductionEvent>) {
    let next_generation = pop.generation + 1;
    let ranges: Vec<f64> = (0..spec.dimension).map(|i| spec.range(i)).collect();

    struct PendingEvent {
        operator: OperatorId,
        parent_fitnesses: Vec<f64>,
        parent_genomes: Vec<Vec<f64>>,
        child_index: usize,
    }

    let mut offspring: Vec<Solution> = Vec::with_capacity(POP_SIZE);
    let mut pending: Vec<PendingEvent> = Vec::with_capacity(POP_SIZE);

    for _ in 0..POP_SIZE {
        let first = tournament_select(&pop.members, rng);
        let second = tournament_select(&pop.members, rng);
        let d = parent_distance(
            &pop.members[first].genome,
            &pop.members[second].genome,
            &ranges,
        );
        let eff = effective_probabilities(weights, mutation_probability(d));
        let op = draw_operator(&eff, rng);

        let mut chosen = vec![first, second];
        while chosen.len() < op.arity() {
            chosen.push(tournament_select(&pop.members, rng));
        }
        // best-first; stable, so on ties the earlier-selected parent leads
        chosen.sort_by(|&a, &b| pop.members[b].fitness.total_cmp(&pop.members[a].fitness));
        chosen.truncate(op.arity());

        let parent_slices: Vec<&[f64]> =
            chosen.iter().map(|&i| pop.members[i].genome.as_slice()).collect();
        let genome = operators::apply(op, params, &parent_slices, &spec.lower, &spec.upper, rng);
        let fitness = spec.evaluate(&genome);

        pending.push(PendingEvent {
            operator: op,
            parent_fitnesses: chosen.iter().map(|&i| pop.members[i].fitness).collect(),
            parent_genomes: chosen.iter().map(|&i| pop.members[i].genome.clone()).collect(),
            child_index: offspring.len(),
        });
        offspring.push(Solution {
            genome,
            fitness,
            birth_generation: next_generation,
            creator: Some(op),
        });
    }

    let mut pool: Vec<Solution> = pop.members.clone();
    pool.extend(offspring.iter().cloned());
    let next_members = cull(&pool, spec, next_generation, rng);

    let events = pending
        .into_iter()
        .map(|p| {
            let child = &offspring[p.child_index];
            let offspring_survived = next_members.iter().any(|m| m.genome == child.genome);
            let parents_survived: Vec<bool> = p
                .parent_genomes
                .iter()
                .map(|g| next_members.iter().any(|m| &m.genome == g))
                .collect();
            let family_survived = family_survival(offspring_survived, &parents_survived);
            ReproductionEvent {
                operator: p.operator,
                parent_fitnesses: p.parent_fitnesses,
                child_fitness: child.fitness,
                offspring_survived,
                family_survived,
            }
        })
        .collect();

    (
        Population { members: next_members, generation: next_generation },
        events,
    )
}
