//! Credit assignment: attributing performance measurements of solutions to
//! the operators that created them, accumulated over an adaptation window.
//!
//! Six measurement kinds are supported. A1–A4 derive from reproduction
//! events as they happen; A5 (age) and A6 (rank) derive from the surviving
//! population once per generation, restricted to members created inside the
//! current window so stale credit never leaks across updates. Initial
//! population members and immigrants carry no creator and are never
//! credited.

use crate::engine::{Population, ReproductionEvent};
use crate::operators::{OperatorId, OPERATOR_COUNT};
use crate::stats;

/// What aspect of a solution's performance is being measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasurementKind {
    /// A1: the offspring's raw fitness.
    RawFitness,
    /// A2: offspring-to-better-parent fitness ratio on a shifted-positive
    /// scale, so values above 1 mean the child improved on its parent.
    FitnessRatio,
    /// A3: 1 if the offspring survived culling, else 0.
    OffspringSurvival,
    /// A4: 1 if the offspring and at least one parent survived culling.
    FamilySurvival,
    /// A5: generations a solution has survived so far (re-reported while it
    /// lives).
    Age,
    /// A6: the solution's rank in the population, best = population size.
    Rank,
}

impl MeasurementKind {
    pub const ALL: [MeasurementKind; 6] = [
        MeasurementKind::RawFitness,
        MeasurementKind::FitnessRatio,
        MeasurementKind::OffspringSurvival,
        MeasurementKind::FamilySurvival,
        MeasurementKind::Age,
        MeasurementKind::Rank,
    ];

    /// Short code, `A1`..`A6`.
    pub fn code(&self) -> &'static str {
        match self {
            MeasurementKind::RawFitness => "A1",
            MeasurementKind::FitnessRatio => "A2",
            MeasurementKind::OffspringSurvival => "A3",
            MeasurementKind::FamilySurvival => "A4",
            MeasurementKind::Age => "A5",
            MeasurementKind::Rank => "A6",
        }
    }

    /// True for kinds whose values are strictly positive by construction
    /// (ratio, age, rank), making them safe under a log transform.
    pub fn strictly_positive(&self) -> bool {
        matches!(
            self,
            MeasurementKind::FitnessRatio | MeasurementKind::Age | MeasurementKind::Rank
        )
    }
}

impl std::fmt::Display for MeasurementKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

impl std::str::FromStr for MeasurementKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MeasurementKind::ALL
            .iter()
            .find(|k| k.code().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| format!("unknown measurement '{s}' (expected A1..A6)"))
    }
}

/// Per-operator measurement samples for one adaptation window.
///
/// Fitness-ratio (A2) inputs are kept as raw (child, better parent) pairs
/// and materialized on read against the worst fitness seen anywhere in the
/// window, so early events and late events share one scale.
#[derive(Debug, Clone)]
pub struct MeasurementWindow {
    kind: MeasurementKind,
    start_generation: u64,
    values: Vec<Vec<(u64, f64)>>,
    ratio_pairs: Vec<Vec<(u64, f64, f64)>>,
    worst_observed: f64,
}

impl MeasurementWindow {
    /// An empty window starting at generation 0.
    pub fn new(kind: MeasurementKind) -> MeasurementWindow {
        MeasurementWindow {
            kind,
            start_generation: 0,
            values: vec![Vec::new(); OPERATOR_COUNT],
            ratio_pairs: vec![Vec::new(); OPERATOR_COUNT],
            worst_observed: f64::INFINITY,
        }
    }

    pub fn kind(&self) -> MeasurementKind {
        self.kind
    }

    /// Generation at which this window opened; only solutions born after it
    /// are credited for age and rank.
    pub fn start_generation(&self) -> u64 {
        self.start_generation
    }

    fn observe_fitness(&mut self, f: f64) {
        if f < self.worst_observed {
            self.worst_observed = f;
        }
    }

    /// Worst fitness observed this window, nudged down so that both terms of
    /// a fitness ratio stay strictly positive.
    fn ratio_floor(&self) -> f64 {
        self.worst_observed - 1e-9 * (1.0 + self.worst_observed.abs())
    }

    /// Record the reproductions of one generation.
    pub fn record_events(&mut self, generation: u64, events: &[ReproductionEvent]) {
        for ev in events {
            self.observe_fitness(ev.child_fitness);
            for &pf in &ev.parent_fitnesses {
                self.observe_fitness(pf);
            }
            let slot = ev.operator.index();
            match self.kind {
                MeasurementKind::RawFitness => {
                    self.values[slot].push((generation, ev.child_fitness));
                }
                MeasurementKind::FitnessRatio => {
                    self.ratio_pairs[slot].push((
                        generation,
                        ev.child_fitness,
                        ev.parent_fitnesses[0],
                    ));
                }
                MeasurementKind::OffspringSurvival => {
                    self.values[slot].push((generation, f64::from(ev.offspring_survived)));
                }
                MeasurementKind::FamilySurvival => {
                    self.values[slot].push((generation, f64::from(ev.family_survived)));
                }
                MeasurementKind::Age | MeasurementKind::Rank => {}
            }
        }
    }

    /// Record the post-culling population of one generation (ages and ranks
    /// of window-born members).
    pub fn record_population(&mut self, pop: &Population) {
        for m in &pop.members {
            self.observe_fitness(m.fitness);
        }
        match self.kind {
            MeasurementKind::Age => {
                for m in &pop.members {
                    if let Some(op) = m.creator {
                        if m.birth_generation > self.start_generation {
                            let age = pop.generation - m.birth_generation + 1;
                            self.values[op.index()].push((pop.generation, age as f64));
                        }
                    }
                }
            }
            MeasurementKind::Rank => {
                let fits: Vec<f64> = pop.members.iter().map(|m| m.fitness).collect();
                let ranks = stats::midranks(&fits);
                for (m, &rank) in pop.members.iter().zip(&ranks) {
                    if let Some(op) = m.creator {
                        if m.birth_generation > self.start_generation {
                            self.values[op.index()].push((pop.generation, rank));
                        }
                    }
                }
            }
            _ => {}
        }
    }

    /// Materialized measurement values credited to `op` in this window.
    pub fn operator_values(&self, op: OperatorId) -> Vec<f64> {
        match self.kind {
            MeasurementKind::FitnessRatio => {
                let w = self.ratio_floor();
                self.ratio_pairs[op.index()]
                    .iter()
                    .map(|&(_, child, parent)| (child - w) / (parent - w))
                    .collect()
            }
            _ => self.values[op.index()].iter().map(|&(_, v)| v).collect(),
        }
    }

    /// Values for all ten operators, indexed by operator slot.
    pub fn per_operator_values(&self) -> Vec<Vec<f64>> {
        OperatorId::ALL.iter().map(|&op| self.operator_values(op)).collect()
    }

    pub fn sample_size(&self, op: OperatorId) -> usize {
        match self.kind {
            MeasurementKind::FitnessRatio => self.ratio_pairs[op.index()].len(),
            _ => self.values[op.index()].len(),
        }
    }

    /// Every recorded value as `(generation, operator, value)`, ordered by
    /// generation then operator slot — the debug-dump format.
    pub fn dump_rows(&self) -> Vec<(u64, OperatorId, f64)> {
        let mut rows = Vec::new();
        for op in OperatorId::ALL {
            match self.kind {
                MeasurementKind::FitnessRatio => {
                    let w = self.ratio_floor();
                    for &(g, child, parent) in &self.ratio_pairs[op.index()] {
                        rows.push((g, op, (child - w) / (parent - w)));
                    }
                }
                _ => {
                    for &(g, v) in &self.values[op.index()] {
                        rows.push((g, op, v));
                    }
                }
            }
        }
        rows.sort_by_key(|&(g, op, _)| (g, op.index()));
        rows
    }

    /// Drop everything and open a new window at `start_generation`.
    pub fn clear(&mut self, start_generation: u64) {
        for v in &mut self.values {
            v.clear();
        }
        for p in &mut self.ratio_pairs {
            p.clear();
        }
        self.worst_observed = f64::INFINITY;
        self.start_generation = start_generation;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{self, family_survival, Population, Solution};
    use crate::objectives::{ObjectiveId, ObjectiveSpec};
    use crate::operators::OperatorParams;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn event(
        op: OperatorId,
        parent_fitnesses: Vec<f64>,
        child_fitness: f64,
        offspring_survived: bool,
        family_survived: bool,
    ) -> ReproductionEvent {
        ReproductionEvent {
            operator: op,
            parent_fitnesses,
            child_fitness,
            offspring_survived,
            family_survived,
        }
    }

    fn member(fitness: f64, birth: u64, creator: Option<OperatorId>) -> Solution {
        Solution { genome: vec![fitness], fitness, birth_generation: birth, creator }
    }

    #[test]
    fn kind_codes_round_trip() {
        for k in MeasurementKind::ALL {
            assert_eq!(k.code().parse::<MeasurementKind>().unwrap(), k);
            assert_eq!(k.code().to_lowercase().parse::<MeasurementKind>().unwrap(), k);
        }
        assert!("A7".parse::<MeasurementKind>().is_err());
    }

    #[test]
    fn raw_fitness_credits_the_creating_operator() {
        let mut w = MeasurementWindow::new(MeasurementKind::RawFitness);
        w.record_events(
            1,
            &[
                event(OperatorId::Heuristic, vec![-1.0, -2.0], -0.5, true, true),
                event(OperatorId::Creep, vec![-3.0], -4.0, false, false),
            ],
        );
        assert_eq!(w.operator_values(OperatorId::Heuristic), vec![-0.5]);
        assert_eq!(w.operator_values(OperatorId::Creep), vec![-4.0]);
        assert!(w.operator_values(OperatorId::Uniform).is_empty());
    }

    #[test]
    fn fitness_ratio_of_equal_child_and_parent_is_exactly_one() {
        let mut w = MeasurementWindow::new(MeasurementKind::FitnessRatio);
        w.record_events(
            1,
            &[
                event(OperatorId::Blend, vec![-2.0, -3.0], -2.0, true, true),
                event(OperatorId::Swap, vec![-3.5, -4.0], -3.0, false, false),
            ],
        );
        let vals = w.operator_values(OperatorId::Blend);
        assert_eq!(vals, vec![1.0]);
    }

    #[test]
    fn fitness_ratio_exceeds_one_exactly_when_the_child_improves() {
        let mut w = MeasurementWindow::new(MeasurementKind::FitnessRatio);
        w.record_events(
            1,
            &[
                event(OperatorId::Blend, vec![-2.0, -5.0], -1.0, true, true),
                event(OperatorId::Swap, vec![-2.0, -5.0], -4.0, false, false),
            ],
        );
        assert!(w.operator_values(OperatorId::Blend)[0] > 1.0);
        assert!(w.operator_values(OperatorId::Swap)[0] < 1.0);
        for op in [OperatorId::Blend, OperatorId::Swap] {
            for v in w.operator_values(op) {
                assert!(v > 0.0, "{op}: ratio {v} not positive");
            }
        }
    }

    #[test]
    fn fitness_ratio_scale_tracks_the_windows_worst_observation() {
        let mut w = MeasurementWindow::new(MeasurementKind::FitnessRatio);
        w.record_events(2, &[event(OperatorId::OnePoint, vec![-2.0, -3.0], -1.0, true, true)]);
        // a later, much worse population member drags the floor down
        let pop = Population { members: vec![member(-10.0, 0, None)], generation: 2 };
        w.record_population(&pop);
        let floor = -10.0 - 1e-9 * 11.0;
        let expect = (-1.0 - floor) / (-2.0 - floor);
        assert_eq!(w.operator_values(OperatorId::OnePoint), vec![expect]);
    }

    #[test]
    fn survival_kinds_enumerate_all_outcome_combinations() {
        for bits in 0..8u8 {
            let off = bits & 1 != 0;
            let p1 = bits & 2 != 0;
            let p2 = bits & 4 != 0;
            let family = family_survival(off, &[p1, p2]);

            let mut w3 = MeasurementWindow::new(MeasurementKind::OffspringSurvival);
            let mut w4 = MeasurementWindow::new(MeasurementKind::FamilySurvival);
            let ev = event(OperatorId::Uniform, vec![-1.0, -2.0], -1.5, off, family);
            w3.record_events(1, &[ev.clone()]);
            w4.record_events(1, &[ev]);

            let expect3 = if off { 1.0 } else { 0.0 };
            let expect4 = if off && (p1 || p2) { 1.0 } else { 0.0 };
            assert_eq!(w3.operator_values(OperatorId::Uniform), vec![expect3]);
            assert_eq!(w4.operator_values(OperatorId::Uniform), vec![expect4]);
        }
    }

    #[test]
    fn age_counts_generations_survived_and_is_re_reported() {
        let mut w = MeasurementWindow::new(MeasurementKind::Age);
        w.clear(4);
        let born5 = member(-1.0, 5, Some(OperatorId::Raise));
        let born4 = member(-2.0, 4, Some(OperatorId::Raise)); // window boundary: too old
        let no_creator = member(-3.0, 5, None);

        let pop5 = Population {
            members: vec![born5.clone(), born4.clone(), no_creator.clone()],
            generation: 5,
        };
        w.record_population(&pop5);
        assert_eq!(w.operator_values(OperatorId::Raise), vec![1.0]);

        let pop6 = Population { members: vec![born5, born4, no_creator], generation: 6 };
        w.record_population(&pop6);
        assert_eq!(w.operator_values(OperatorId::Raise), vec![1.0, 2.0]);
    }

    #[test]
    fn rank_uses_midranks_with_best_equal_to_population_size() {
        // 28 distinct members below two tied at the top
        let mut members: Vec<Solution> = (0..28)
            .map(|i| member(-((i + 1) as f64), 1, Some(OperatorId::Differential)))
            .collect();
        members.push(member(0.0, 1, Some(OperatorId::Heuristic)));
        members.push(member(0.0, 1, Some(OperatorId::Heuristic)));
        let pop = Population { members, generation: 1 };

        let mut w = MeasurementWindow::new(MeasurementKind::Rank);
        w.record_population(&pop);

        // the two tied best share the midrank of positions 29 and 30
        assert_eq!(w.operator_values(OperatorId::Heuristic), vec![29.5, 29.5]);
        assert_eq!(w.dump_rows().len(), 30);

        // cross-check every recorded rank against a pair-counting oracle
        let fits: Vec<f64> = pop.members.iter().map(|m| m.fitness).collect();
        for (m, rank) in pop.members.iter().zip(stats::midranks(&fits)) {
            let below = fits.iter().filter(|&&x| x < m.fitness).count() as f64;
            let tied = fits.iter().filter(|&&x| x == m.fitness).count() as f64 - 1.0;
            assert_eq!(rank, 1.0 + below + 0.5 * tied);
        }
    }

    #[test]
    fn clear_opens_a_fresh_window() {
        let mut w = MeasurementWindow::new(MeasurementKind::Age);
        let pop = Population {
            members: vec![member(-1.0, 1, Some(OperatorId::Creep))],
            generation: 1,
        };
        w.record_population(&pop);
        assert_eq!(w.sample_size(OperatorId::Creep), 1);

        w.clear(20);
        assert_eq!(w.start_generation(), 20);
        assert_eq!(w.sample_size(OperatorId::Creep), 0);

        // a member born at the boundary generation belongs to the old window
        let pop20 = Population {
            members: vec![member(-1.0, 20, Some(OperatorId::Creep))],
            generation: 21,
        };
        w.record_population(&pop20);
        assert_eq!(w.sample_size(OperatorId::Creep), 0);
    }

    #[test]
    fn forcing_the_mutation_operator_credits_only_slot_ten() {
        let spec = ObjectiveSpec::new(ObjectiveId::Rastrigin);
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let mut pop = Population::initialize(&spec, &mut rng);
        let weights = [0.0; OPERATOR_COUNT]; // no stored mass: mutation takes all
        let mut w = MeasurementWindow::new(MeasurementKind::RawFitness);
        for _ in 0..3 {
            let (next, events) =
                engine::step_generation(&pop, &spec, &OperatorParams::default(), &weights, &mut rng);
            w.record_events(next.generation, &events);
            w.record_population(&next);
            pop = next;
        }
        assert_eq!(w.sample_size(OperatorId::RandomReset), 90);
        for op in OperatorId::ALL {
            if op != OperatorId::RandomReset {
                assert_eq!(w.sample_size(op), 0, "{op} unexpectedly credited");
            }
        }
    }

    #[test]
    fn rank_credit_is_bounded_by_population_size_per_generation() {
        let spec = ObjectiveSpec::new(ObjectiveId::Griewank);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut pop = Population::initialize(&spec, &mut rng);
        let weights = [0.1; OPERATOR_COUNT];
        let mut w = MeasurementWindow::new(MeasurementKind::Rank);
        for _ in 0..5 {
            let (next, events) =
                engine::step_generation(&pop, &spec, &OperatorParams::default(), &weights, &mut rng);
            w.record_events(next.generation, &events);
            w.record_population(&next);
            pop = next;
        }
        let total: usize = OperatorId::ALL.iter().map(|&op| w.sample_size(op)).sum();
        assert!(total <= 5 * engine::POP_SIZE);
        for op in OperatorId::ALL {
            for v in w.operator_values(op) {
                assert!((1.0..=30.0).contains(&v));
            }
        }
    }
}
