//! Statistical routines for comparing optimizer result samples: one-sided
//! Mann-Whitney confidence, Pearson correlation, paired t, and one-way
//! ANOVA, plus the shared tail functions they are built on.
//!
//! The Mann-Whitney routine reports a *confidence* that sample `a` is
//! stochastically greater than sample `b`, defined as 1 minus the one-sided
//! mid-p value (half weight on the observed U). The mid-p convention is what
//! makes the reported confidences consistent: identical samples score
//! exactly 0.5, and confidence(a, b) + confidence(b, a) == 1 in the exact
//! branch, so a round-robin of comparisons sums to the expected total.

use statrs::function::beta::beta_reg;
use statrs::function::erf::erfc;

/// Largest pooled size handled by exact enumeration inside
/// [`mann_whitney_confidence`]; larger inputs use the normal approximation.
pub const MW_EXACT_MAX_TOTAL: usize = 12;

/// Which branch produced a [`ComparisonResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MwMethod {
    Exact,
    NormalApproximation,
}

/// Outcome of a one-sided Mann-Whitney comparison.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonResult {
    /// 1 − one-sided mid-p that `a` is stochastically greater than `b`.
    pub confidence: f64,
    /// U statistic of sample `a` (pair count with half credit for ties).
    pub u_statistic: f64,
    pub method: MwMethod,
}

/// Ranks of `values` (1-based, smallest value gets rank 1), with tied runs
/// sharing their average rank.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let shared = (i + j + 2) as f64 / 2.0; // average of 1-based positions i+1..=j+1
        for k in i..=j {
            ranks[order[k]] = shared;
        }
        i = j + 1;
    }
    ranks
}

fn u_statistic_from_ranks(pooled: &[f64], n_a: usize) -> f64 {
    let ranks = midranks(pooled);
    let r_a: f64 = ranks[..n_a].iter().sum();
    r_a - (n_a * (n_a + 1)) as f64 / 2.0
}

/// Exact one-sided mid-p for "a stochastically greater than b", by
/// enumerating every way of assigning the pooled values to the two groups
/// (Gosper's bit trick over group-membership masks). Returns `(p, U_a)`.
///
/// Cost grows as C(n_a+n_b, n_a); callers wanting an automatic cutover
/// should use [`mann_whitney_confidence`]. Pooled size is capped at 24.
pub fn mann_whitney_exact_midp(a: &[f64], b: &[f64]) -> (f64, f64) {
    assert!(!a.is_empty() && !b.is_empty(), "both samples must be non-empty");
    let total = a.len() + b.len();
    assert!(total <= 24, "exact enumeration capped at 24 pooled values");
    let mut pooled: Vec<f64> = a.to_vec();
    pooled.extend_from_slice(b);
    let ranks = midranks(&pooled);
    let n_a = a.len();
    let offset = (n_a * (n_a + 1)) as f64 / 2.0;
    let u_obs = ranks[..n_a].iter().sum::<f64>() - offset;

    // Every U is a sum of midranks, i.e. an exact multiple of 0.5, so exact
    // comparisons below are safe.
    let mut greater = 0u64;
    let mut equal = 0u64;
    let mut count = 0u64;
    let limit = 1u64 << total;
    let mut mask = (1u64 << n_a) - 1;
    while mask < limit {
        let mut r = 0.0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            r += ranks[i];
            m &= m - 1;
        }
        let u = r - offset;
        if u > u_obs {
            greater += 1;
        } else if u == u_obs {
            equal += 1;
        }
        count += 1;
        // Gosper's hack: next mask with the same popcount
        let c = mask & mask.wrapping_neg();
        let carry = mask + c;
        if carry >= limit {
            break;
        }
        mask = (((carry ^ mask) >> 2) / c) | carry;
    }
    let p = (greater as f64 + 0.5 * equal as f64) / count as f64;
    (p, u_obs)
}

fn mann_whitney_approx(a: &[f64], b: &[f64]) -> ComparisonResult {
    let (n, m) = (a.len() as f64, b.len() as f64);
    let total = a.len() + b.len();
    let mut pooled: Vec<f64> = a.to_vec();
    pooled.extend_from_slice(b);
    let u = u_statistic_from_ranks(&pooled, a.len());

    // tie correction over the pooled sample
    let mut sorted = pooled.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < total {
        let mut j = i;
        while j + 1 < total && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        tie_term += t * t * t - t;
        i = j + 1;
    }
    let nt = total as f64;
    let var = n * m / 12.0 * ((nt + 1.0) - tie_term / (nt * (nt - 1.0)));
    let confidence = if var <= 0.0 {
        0.5 // every pooled value tied: no evidence either way
    } else {
        let z = (u - n * m / 2.0) / var.sqrt();
        1.0 - normal_upper_tail(z)
    };
    ComparisonResult { confidence, u_statistic: u, method: MwMethod::NormalApproximation }
}

/// One-sided Mann-Whitney comparison of "a greater than b": exact
/// enumeration up to [`MW_EXACT_MAX_TOTAL`] pooled values, tie-corrected
/// normal approximation (no continuity correction, matching the mid-p
/// convention of the exact branch) beyond it.
pub fn mann_whitney_confidence(a: &[f64], b: &[f64]) -> ComparisonResult {
    assert!(!a.is_empty() && !b.is_empty(), "both samples must be non-empty");
    if a.len() + b.len() <= MW_EXACT_MAX_TOTAL {
        let (p, u) = mann_whitney_exact_midp(a, b);
        ComparisonResult { confidence: 1.0 - p, u_statistic: u, method: MwMethod::Exact }
    } else {
        mann_whitney_approx(a, b)
    }
}

/// Average Mann-Whitney confidence of `target` over every rival sample.
/// `None` when there are no rivals.
pub fn mean_confidence(target: &[f64], rivals: &[&[f64]]) -> Option<f64> {
    if rivals.is_empty() {
        return None;
    }
    let sum: f64 = rivals
        .iter()
        .map(|r| mann_whitney_confidence(target, r).confidence)
        .sum();
    Some(sum / rivals.len() as f64)
}

/// Sample Pearson correlation; `None` if either side has zero variance.
pub fn pearson_correlation(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    if n < 2 {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for i in 0..n {
        let dx = x[i] - mx;
        let dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Paired t-test result for "a greater than b".
#[derive(Debug, Clone, Copy)]
pub struct PairedT {
    pub t: f64,
    /// One-sided p for the alternative mean(a − b) > 0.
    pub p_one_sided: f64,
    pub n: usize,
}

/// Paired t-test on the elementwise differences a − b. Zero-variance
/// differences degenerate to t = 0 (p = 0.5) when the mean difference is
/// zero, and to an infinite t (p of 0 or 1) otherwise.
pub fn paired_t(a: &[f64], b: &[f64]) -> PairedT {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    assert!(n >= 2, "paired t needs at least 2 pairs");
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    let ss = d.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>();
    let sd = (ss / (n - 1) as f64).sqrt();
    if sd == 0.0 {
        return if mean == 0.0 {
            PairedT { t: 0.0, p_one_sided: 0.5, n }
        } else if mean > 0.0 {
            PairedT { t: f64::INFINITY, p_one_sided: 0.0, n }
        } else {
            PairedT { t: f64::NEG_INFINITY, p_one_sided: 1.0, n }
        };
    }
    let t = mean / (sd / (n as f64).sqrt());
    PairedT { t, p_one_sided: student_t_upper_tail(t, (n - 1) as f64), n }
}

/// One-way ANOVA decomposition and F test.
#[derive(Debug, Clone, Copy)]
pub struct AnovaResult {
    pub f: f64,
    pub p: f64,
    pub ss_between: f64,
    pub ss_within: f64,
    pub df_between: usize,
    pub df_within: usize,
}

/// One-way fixed-effects ANOVA over `groups`.
pub fn anova_f(groups: &[Vec<f64>]) -> AnovaResult {
    let k = groups.len();
    assert!(k >= 2, "ANOVA needs at least 2 groups");
    let total_n: usize = groups.iter().map(|g| g.len()).sum();
    assert!(groups.iter().all(|g| !g.is_empty()), "empty group");
    assert!(total_n > k, "no within-group degrees of freedom");

    let grand = groups.iter().flatten().sum::<f64>() / total_n as f64;
    let mut ss_between = 0.0;
    let mut ss_within = 0.0;
    for g in groups {
        let m = g.iter().sum::<f64>() / g.len() as f64;
        ss_between += g.len() as f64 * (m - grand) * (m - grand);
        ss_within += g.iter().map(|v| (v - m) * (v - m)).sum::<f64>();
    }
    let df_between = k - 1;
    let df_within = total_n - k;
    let (f, p) = f_test_from_ss(ss_between, df_between, ss_within, df_within);
    AnovaResult { f, p, ss_between, ss_within, df_between, df_within }
}

/// F statistic and upper-tail p from sum-of-squares decomposition.
/// Both sums zero → (0, 1); zero within-group variation with real
/// between-group spread → (+inf, 0).
pub fn f_test_from_ss(
    ss_between: f64,
    df_between: usize,
    ss_within: f64,
    df_within: usize,
) -> (f64, f64) {
    if ss_within == 0.0 {
        return if ss_between == 0.0 { (0.0, 1.0) } else { (f64::INFINITY, 0.0) };
    }
    let f = (ss_between / df_between as f64) / (ss_within / df_within as f64);
    (f, f_upper_tail(f, df_between as f64, df_within as f64))
}

/// P(Z > z) for standard normal Z, computed via the complementary error
/// function.
pub fn normal_upper_tail(z: f64) -> f64 {
    0.5 * erfc(z / std::f64::consts::SQRT_2)
}

/// P(T > t) for Student's t with `df` degrees of freedom.
pub fn student_t_upper_tail(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return if t > 0.0 { 0.0 } else { 1.0 };
    }
    if t < 0.0 {
        return 1.0 - student_t_upper_tail(-t, df);
    }
    0.5 * beta_reg(df / 2.0, 0.5, df / (df + t * t))
}

/// P(F > f) for the F distribution with (d1, d2) degrees of freedom.
pub fn f_upper_tail(f: f64, d1: f64, d2: f64) -> f64 {
    if f.is_infinite() {
        return 0.0;
    }
    if f <= 0.0 {
        return 1.0;
    }
    beta_reg(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f))
}
