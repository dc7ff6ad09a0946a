//! Probability adaptation: every 20 generations, each adapted operator's
//! score is turned into a target share, blended 50/50 with the operator's
//! previous probability, floored at 0.02, and renormalized.
//!
//! A portfolio may adapt any subset of its slots; the total probability
//! mass of that subset is fixed at construction and preserved by every
//! update, so non-adapted slots (typically the diversity-controlled
//! mutation) are never disturbed.

use crate::operators::OPERATOR_COUNT;

/// Minimum probability any adapted operator can be assigned.
pub const PROBABILITY_FLOOR: f64 = 0.02;
/// Share of the previous probability kept at each update.
pub const MEMORY_WEIGHT: f64 = 0.5;
/// Generations between updates.
pub const CYCLE_GENERATIONS: u64 = 20;

/// An operator probability vector, with an optional adapted subset.
#[derive(Debug, Clone)]
pub struct Portfolio {
    probabilities: [f64; OPERATOR_COUNT],
    adapted: Vec<usize>,
    adapted_mass: f64,
}

impl Portfolio {
    /// Portfolio adapting the given slots; their combined mass is measured
    /// now and preserved forever after.
    pub fn new(probabilities: [f64; OPERATOR_COUNT], adapted: Vec<usize>) -> Portfolio {
        let mass: f64 = adapted.iter().map(|&i| probabilities[i]).sum();
        assert!(
            adapted.is_empty() || mass >= adapted.len() as f64 * PROBABILITY_FLOOR - 1e-12,
            "adapted mass {mass} cannot cover the floor for {} operators",
            adapted.len()
        );
        Portfolio { probabilities, adapted, adapted_mass: mass }
    }

    /// The standard adaptive start: all ten slots equal, slots 1..=9
    /// adapted, the mutation slot left to diversity control.
    pub fn uniform_adaptive() -> Portfolio {
        Portfolio::new([1.0 / OPERATOR_COUNT as f64; OPERATOR_COUNT], (0..9).collect())
    }

    /// A fixed portfolio that never changes (no adapted slots).
    pub fn fixed(probabilities: [f64; OPERATOR_COUNT]) -> Portfolio {
        Portfolio::new(probabilities, Vec::new())
    }

    pub fn probabilities(&self) -> &[f64; OPERATOR_COUNT] {
        &self.probabilities
    }

    pub fn is_adaptive(&self) -> bool {
        !self.adapted.is_empty()
    }

    /// True at the generations where an update is scheduled (20, 40, ...).
    pub fn update_due(generation: u64) -> bool {
        generation > 0 && generation % CYCLE_GENERATIONS == 0
    }

    /// One adaptation step: fold the per-slot scores (`None` = the operator
    /// has no data this window) into new probabilities for the adapted
    /// subset. Slots outside the subset are untouched.
    pub fn apply_scores(&mut self, scores: &[Option<f64>; OPERATOR_COUNT]) {
        if self.adapted.is_empty() {
            return;
        }
        let subset: Vec<Option<f64>> = self.adapted.iter().map(|&i| scores[i]).collect();
        let target = scores_to_target(&subset);
        let old: Vec<f64> = self.adapted.iter().map(|&i| self.probabilities[i]).collect();
        let updated = blend_floor_normalize(&old, &target, self.adapted_mass);
        for (&slot, p) in self.adapted.iter().zip(updated) {
            self.probabilities[slot] = p;
        }
    }
}

/// Normalize scores into a target allocation: shift so the worst score sits
/// at zero, give no-data slots the mean shifted score, then divide by the
/// total. All-zero (or all-no-data) inputs fall back to a uniform target.
pub fn scores_to_target(scores: &[Option<f64>]) -> Vec<f64> {
    let n = scores.len();
    assert!(n > 0);
    let known: Vec<f64> = scores.iter().flatten().copied().collect();
    if known.is_empty() {
        return vec![1.0 / n as f64; n];
    }
    let min = known.iter().cloned().fold(f64::INFINITY, f64::min);
    let shift = -min.min(0.0);
    let mean_shifted = known.iter().map(|v| v + shift).sum::<f64>() / known.len() as f64;
    let shifted: Vec<f64> = scores
        .iter()
        .map(|s| match s {
            Some(v) => v + shift,
            None => mean_shifted,
        })
        .collect();
    let sum: f64 = shifted.iter().sum();
    if sum <= 0.0 {
        return vec![1.0 / n as f64; n];
    }
    shifted.into_iter().map(|v| v / sum).collect()
}

/// The update rule: keep half of the old probability, give the target half
/// of the subset's mass, then impose the floor and renormalize by iterative
/// water-filling — floored slots sit exactly at the floor, the rest share
/// what remains in proportion.
pub fn blend_floor_normalize(old: &[f64], target: &[f64], mass: f64) -> Vec<f64> {
    assert_eq!(old.len(), target.len());
    let n = old.len();
    let mut p: Vec<f64> = (0..n)
        .map(|i| MEMORY_WEIGHT * old[i] + (1.0 - MEMORY_WEIGHT) * mass * target[i])
        .collect();

    let mut floored = vec![false; n];
    loop {
        let mut newly = false;
        for i in 0..n {
            if !floored[i] && p[i] <= PROBABILITY_FLOOR {
                floored[i] = true;
                p[i] = PROBABILITY_FLOOR;
                newly = true;
            }
        }
        let floor_mass = floored.iter().filter(|&&f| f).count() as f64 * PROBABILITY_FLOOR;
        let free: f64 = (0..n).filter(|&i| !floored[i]).map(|i| p[i]).sum();
        if free > 0.0 {
            let scale = (mass - floor_mass) / free;
            for i in 0..n {
                if !floored[i] {
                    p[i] *= scale;
                }
            }
        }
        if !newly {
            break;
        }
    }
    p
}
