//! Real-coded evolutionary optimizer with feedback-adaptive operator
//! probabilities.
//!
//! The library is organized around a small pipeline:
//!
//! * [`objectives`] — ten benchmark problems, expressed as maximization with
//!   the optimum at fitness 0.
//! * [`operators`] — the ten reproduction operators (crossovers, mutations)
//!   and their parameters.
//! * [`engine`] — population state, binary tournaments, diversity-controlled
//!   mutation probability, and the generation step.
//! * [`credit`] — collection of per-operator performance measurements
//!   (raw fitness, fitness ratio, survival, family survival, age, rank) over
//!   an adaptation window.
//! * [`interpret`] — turning a window of measurements into one score per
//!   operator, either by plain averaging or by summing statistical-outlier
//!   probabilities against the pooled distribution.
//! * [`adapt`] — the operator-probability portfolio: score-to-target
//!   normalization, memory-weighted updates, probability floor.
//! * [`stats`] — the comparison toolkit used by experiment analysis:
//!   one-sided Mann-Whitney confidence, Pearson correlation, paired t,
//!   one-way ANOVA.
//!
//! All randomness flows through a caller-supplied [`rand::Rng`], so a seeded
//! ChaCha stream reproduces a run bit for bit.

pub mod adapt;
pub mod credit;
pub mod engine;
pub mod interpret;
pub mod objectives;
pub mod operators;
pub mod stats;
