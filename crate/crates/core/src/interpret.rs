//! Interpretation: turning an operator's measurement sample into a scalar
//! score. Two interpretations are provided — the plain average, and an
//! outlier-potential score that asks how surprising each measurement is
//! against the distribution of everyone's measurements pooled together,
//! accounting for how many chances the operator had to produce it.

use crate::stats;

/// Parametric family assumed for the pooled measurement distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistributionFamily {
    #[default]
    Normal,
    /// Log-transform the (strictly positive) measurements and treat the
    /// logs as normal.
    LogNormal,
}

impl std::str::FromStr for DistributionFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "normal" => Ok(DistributionFamily::Normal),
            "lognormal" | "log-normal" => Ok(DistributionFamily::LogNormal),
            _ => Err(format!("unknown distribution family '{s}' (expected normal or lognormal)")),
        }
    }
}

/// Location and scale of the window's pooled measurements (over all
/// operators), on the transformed scale for the log-normal family.
#[derive(Debug, Clone, Copy)]
pub struct PooledDistribution {
    pub mu: f64,
    pub s: f64,
    pub count: usize,
    pub family: DistributionFamily,
}

impl PooledDistribution {
    /// Fit from every operator's values pooled together. The log-normal
    /// family requires strictly positive measurements.
    pub fn fit(per_operator: &[Vec<f64>], family: DistributionFamily) -> PooledDistribution {
        let mut data: Vec<f64> = Vec::new();
        for values in per_operator {
            for &v in values {
                data.push(transform(v, family));
            }
        }
        let count = data.len();
        if count < 2 {
            return PooledDistribution { mu: 0.0, s: 0.0, count, family };
        }
        let mu = data.iter().sum::<f64>() / count as f64;
        let ss: f64 = data.iter().map(|v| (v - mu) * (v - mu)).sum();
        let s = (ss / (count - 1) as f64).sqrt();
        PooledDistribution { mu, s, count, family }
    }

    /// True when the pool cannot support scoring (fewer than two values, or
    /// no spread at all). Callers should treat all scores as 0 and may want
    /// to surface a diagnostic.
    pub fn is_degenerate(&self) -> bool {
        self.count < 2 || self.s <= 0.0
    }
}

fn transform(x: f64, family: DistributionFamily) -> f64 {
    match family {
        DistributionFamily::Normal => x,
        DistributionFamily::LogNormal => {
            assert!(x > 0.0, "log-normal family needs positive measurements, got {x}");
            x.ln()
        }
    }
}

/// Which statistic condenses an operator's sample into its score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpretation {
    /// I:1 — the sample mean.
    Average,
    /// I:3 — the summed outlier probabilities against the pooled
    /// distribution.
    Outlier,
}

impl Interpretation {
    pub fn code(&self) -> &'static str {
        match self {
            Interpretation::Average => "I:1",
            Interpretation::Outlier => "I:3",
        }
    }

    /// Score a sample. Averaging has no answer for an empty sample
    /// (`None`); the outlier score of an empty sample is simply 0.
    pub fn score(&self, sample: &[f64], pooled: &PooledDistribution) -> Option<f64> {
        match self {
            Interpretation::Average => interpret_average(sample),
            Interpretation::Outlier => Some(interpret_outlier(sample, pooled)),
        }
    }
}

impl std::fmt::Display for Interpretation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

impl std::str::FromStr for Interpretation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "I1" | "I:1" => Ok(Interpretation::Average),
            "I3" | "I:3" => Ok(Interpretation::Outlier),
            _ => Err(format!("unknown interpretation '{s}' (expected I:1 or I:3)")),
        }
    }
}

/// The averaging interpretation: the sample mean, or `None` when the
/// operator produced nothing this window.
pub fn interpret_average(sample: &[f64]) -> Option<f64> {
    if sample.is_empty() {
        None
    } else {
        Some(sample.iter().sum::<f64>() / sample.len() as f64)
    }
}

/// Standardized position of measurement `x` in the pooled distribution.
pub fn z_score(x: f64, pooled: &PooledDistribution) -> f64 {
    debug_assert!(pooled.s > 0.0, "z-score of a degenerate pool");
    (transform(x, pooled.family) - pooled.mu) / pooled.s
}

/// Probability of drawing a value above `z` from the standard normal: the
/// chance of seeing a measurement at least this good by luck.
pub fn upper_tail_p(z: f64) -> f64 {
    stats::normal_upper_tail(z)
}

/// Probability that `n` independent draws all miss the observed level: the
/// chance that an operator with `n` tries produces *no* measurement this
/// good. Near 1 it flags a genuine outlier; computed as exp(n·ln(1−p_x))
/// for accuracy at tiny `p_x`.
pub fn outlier_probability(p_x: f64, n: usize) -> f64 {
    assert!(n >= 1, "outlier probability needs a sample size of at least 1");
    assert!((0.0..=1.0).contains(&p_x), "p_x = {p_x} is not a probability");
    if p_x >= 1.0 {
        return 0.0;
    }
    (n as f64 * (-p_x).ln_1p()).exp()
}

/// The outlier interpretation: total outlier probability over the
/// operator's sample, each measurement judged against the pooled
/// distribution with the operator's own sample size as the number of
/// chances. An empty sample scores 0, as does any sample under a
/// degenerate pool.
pub fn interpret_outlier(sample: &[f64], pooled: &PooledDistribution) -> f64 {
    if sample.is_empty() || pooled.is_degenerate() {
        return 0.0;
    }
    let n = sample.len();
    sample
        .iter()
        .map(|&x| outlier_probability(upper_tail_p(z_score(x, pooled)), n))
        .sum()
}
