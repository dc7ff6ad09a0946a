//! The ten reproduction operators.
//!
//! Each operator consumes one to three parents and produces a single child
//! genome, clamped to the feasible box. Callers pass parents **sorted
//! best-first**; positional semantics (e.g. which parent a one-point
//! crossover copies its prefix from) are defined against that order. All
//! stochastic choices are drawn from the caller's RNG in a fixed sequence,
//! so a seeded stream reproduces children bit for bit.

use rand::Rng;

/// Number of operators in the portfolio.
pub const OPERATOR_COUNT: usize = 10;

/// One of the ten operators. The numbering (1..=10) is the portfolio slot
/// order used throughout configuration, dumps, and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorId {
    /// 1: heuristic blend, extrapolates from the worse parent past the better.
    Heuristic,
    /// 2: one-point crossover.
    OnePoint,
    /// 3: line recombination at a fixed blend factor.
    ExtendedLine,
    /// 4: uniform crossover, each gene from either parent with probability 1/2.
    Uniform,
    /// 5: blend crossover sampling uniformly from the extended gene interval.
    Blend,
    /// 6: differential step, p1 + F * (p2 - p3).
    Differential,
    /// 7: copy the better parent, swapping in the most dissimilar gene.
    Swap,
    /// 8: shift every gene by the same signed fraction of its range.
    Raise,
    /// 9: shift a single random gene by a small fraction of its range.
    Creep,
    /// 10: redraw a single random gene uniformly within bounds.
    RandomReset,
}

impl OperatorId {
    pub const ALL: [OperatorId; OPERATOR_COUNT] = [
        OperatorId::Heuristic,
        OperatorId::OnePoint,
        OperatorId::ExtendedLine,
        OperatorId::Uniform,
        OperatorId::Blend,
        OperatorId::Differential,
        OperatorId::Swap,
        OperatorId::Raise,
        OperatorId::Creep,
        OperatorId::RandomReset,
    ];

    /// Portfolio slot number, 1..=10.
    pub fn number(&self) -> u8 {
        *self as u8 + 1
    }

    /// Zero-based portfolio slot.
    pub fn index(&self) -> usize {
        *self as usize
    }

    pub fn from_number(n: u8) -> Option<OperatorId> {
        OperatorId::ALL.get(n.checked_sub(1)? as usize).copied()
    }

    pub fn name(&self) -> &'static str {
        match self {
            OperatorId::Heuristic => "heuristic crossover",
            OperatorId::OnePoint => "one-point crossover",
            OperatorId::ExtendedLine => "extended line recombination",
            OperatorId::Uniform => "uniform crossover",
            OperatorId::Blend => "blend crossover",
            OperatorId::Differential => "differential operator",
            OperatorId::Swap => "swap mutation",
            OperatorId::Raise => "raise mutation",
            OperatorId::Creep => "creep mutation",
            OperatorId::RandomReset => "single-point random mutation",
        }
    }

    /// Number of parents the operator consumes.
    pub fn arity(&self) -> usize {
        match self {
            OperatorId::Differential => 3,
            OperatorId::Raise | OperatorId::Creep | OperatorId::RandomReset => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for OperatorId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "op{}", self.number())
    }
}

/// Named constants of the operator set. Each field documents its default.
#[derive(Debug, Clone, Copy)]
pub struct OperatorParams {
    /// Extrapolation factor of the heuristic blend (child = best + r*(best - worst)).
    pub heuristic_r: f64,
    /// Blend factor of the extended line recombination (child = best + a*(worst - best)).
    pub line_alpha: f64,
    /// Interval extension of the blend crossover.
    pub blend_alpha: f64,
    /// Differential weight F.
    pub differential_f: f64,
    /// Raise amplitude as a fraction of each gene's range.
    pub raise_amplitude: f64,
    /// Creep amplitude as a fraction of the gene's range.
    pub creep_amplitude: f64,
}

impl Default for OperatorParams {
    fn default() -> Self {
        OperatorParams {
            heuristic_r: 0.5,
            line_alpha: 0.3,
            blend_alpha: 0.2,
            differential_f: 0.8,
            raise_amplitude: 0.01,
            creep_amplitude: 0.001,
        }
    }
}

/// Catalog row for display purposes (`list-operators`).
#[derive(Debug, Clone)]
pub struct OperatorInfo {
    pub id: OperatorId,
    pub name: &'static str,
    pub arity: usize,
    pub params: Vec<(&'static str, f64)>,
}

/// The displayable operator catalog under the given parameters.
pub fn catalog(params: &OperatorParams) -> Vec<OperatorInfo> {
    OperatorId::ALL
        .iter()
        .map(|&id| {
            let p: Vec<(&'static str, f64)> = match id {
                OperatorId::Heuristic => vec![("r", params.heuristic_r)],
                OperatorId::ExtendedLine => vec![("alpha", params.line_alpha)],
                OperatorId::Blend => vec![("alpha", params.blend_alpha)],
                OperatorId::Differential => vec![("F", params.differential_f)],
                OperatorId::Raise => vec![("amplitude", params.raise_amplitude)],
                OperatorId::Creep => vec![("amplitude", params.creep_amplitude)],
                _ => vec![],
            };
            OperatorInfo { id, name: id.name(), arity: id.arity(), params: p }
        })
        .collect()
}

/// Shift one gene by `u * amplitude * (upper - lower)` and clamp to bounds.
/// `u` is the caller's draw from [-1, 1]; keeping it a parameter makes the
/// arithmetic directly testable.
pub fn creep_shift(gene: f64, lower: f64, upper: f64, amplitude: f64, u: f64) -> f64 {
    (gene + u * amplitude * (upper - lower)).clamp(lower, upper)
}

/// Apply `op` to `parents` (genomes sorted best-first, length == arity) and
/// return the child genome, clamped to `[lower, upper]` per gene.
pub fn apply(
    op: OperatorId,
    params: &OperatorParams,
    parents: &[&[f64]],
    lower: &[f64],
    upper: &[f64],
    rng: &mut impl Rng,
) -> Vec<f64> {
    assert_eq!(parents.len(), op.arity(), "{op}: wrong parent count");
    let dim = lower.len();
    debug_assert!(parents.iter().all(|p| p.len() == dim));
    debug_assert_eq!(upper.len(), dim);

    let mut child = match op {
        OperatorId::Heuristic => {
            let (b, w) = (parents[0], parents[1]);
            (0..dim)
                .map(|i| b[i] + params.heuristic_r * (b[i] - w[i]))
                .collect()
        }
        OperatorId::OnePoint => {
            let (b, w) = (parents[0], parents[1]);
            if dim < 2 {
                b.to_vec()
            } else {
                let cut = rng.gen_range(1..dim);
                let mut c = b[..cut].to_vec();
                c.extend_from_slice(&w[cut..]);
                c
            }
        }
        OperatorId::ExtendedLine => {
            let (b, w) = (parents[0], parents[1]);
            (0..dim)
                .map(|i| b[i] + params.line_alpha * (w[i] - b[i]))
                .collect()
        }
        OperatorId::Uniform => {
            let (b, w) = (parents[0], parents[1]);
            (0..dim)
                .map(|i| if rng.gen_bool(0.5) { b[i] } else { w[i] })
                .collect()
        }
        OperatorId::Blend => {
            let (b, w) = (parents[0], parents[1]);
            (0..dim)
                .map(|i| {
                    let (lo, hi) = if b[i] <= w[i] { (b[i], w[i]) } else { (w[i], b[i]) };
                    let d = hi - lo;
                    rng.gen_range(lo - params.blend_alpha * d..=hi + params.blend_alpha * d)
                })
                .collect()
        }
        OperatorId::Differential => {
            let (p1, p2, p3) = (parents[0], parents[1], parents[2]);
            (0..dim)
                .map(|i| p1[i] + params.differential_f * (p2[i] - p3[i]))
                .collect()
        }
        OperatorId::Swap => {
            let (b, w) = (parents[0], parents[1]);
            let mut m = 0;
            let mut most = f64::NEG_INFINITY;
            for i in 0..dim {
                let d = (b[i] - w[i]).abs() / (upper[i] - lower[i]);
                if d > most {
                    most = d;
                    m = i;
                }
            }
            let mut c = b.to_vec();
            c[m] = w[m];
            c
        }
        OperatorId::Raise => {
            let p = parents[0];
            let u = rng.gen_range(-1.0..=1.0);
            (0..dim)
                .map(|i| creep_shift(p[i], lower[i], upper[i], params.raise_amplitude, u))
                .collect()
        }
        OperatorId::Creep => {
            let p = parents[0];
            let j = rng.gen_range(0..dim);
            let u = rng.gen_range(-1.0..=1.0);
            let mut c = p.to_vec();
            c[j] = creep_shift(p[j], lower[j], upper[j], params.creep_amplitude, u);
            c
        }
        OperatorId::RandomReset => {
            let p = parents[0];
            let j = rng.gen_range(0..dim);
            let mut c = p.to_vec();
            c[j] = rng.gen_range(lower[j]..=upper[j]);
            c
        }
    };

    for i in 0..dim {
        child[i] = child[i].clamp(lower[i], upper[i]);
    }
    child
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const P: OperatorParams = OperatorParams {
        heuristic_r: 0.5,
        line_alpha: 0.3,
        blend_alpha: 0.2,
        differential_f: 0.8,
        raise_amplitude: 0.01,
        creep_amplitude: 0.001,
    };

    fn wide() -> (Vec<f64>, Vec<f64>) {
        (vec![-100.0; 2], vec![100.0; 2])
    }

    #[test]
    fn heuristic_extrapolates_past_the_better_parent() {
        let (lo, hi) = wide();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let child = apply(
            OperatorId::Heuristic,
            &P,
            &[&[2.0, 2.0], &[0.0, 0.0]],
            &lo,
            &hi,
            &mut rng,
        );
        assert_eq!(child, vec![3.0, 3.0]);
    }

    #[test]
    fn heuristic_clamps_to_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let child = apply(
            OperatorId::Heuristic,
            &P,
            &[&[2.0, 2.0], &[0.0, 0.0]],
            &[0.0, 0.0],
            &[2.5, 2.5],
            &mut rng,
        );
        assert_eq!(child, vec![2.5, 2.5]);
    }

    #[test]
    fn one_point_on_two_genes_splices_at_the_only_cut() {
        let (lo, hi) = wide();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let child = apply(
            OperatorId::OnePoint,
            &P,
            &[&[1.0, 2.0], &[3.0, 4.0]],
            &lo,
            &hi,
            &mut rng,
        );
        assert_eq!(child, vec![1.0, 4.0]); // cut is forced to 1 when dim == 2
    }

    #[test]
    fn extended_line_blends_toward_the_worse_parent() {
        let (lo, hi) = wide();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let child = apply(
            OperatorId::ExtendedLine,
            &P,
            &[&[0.0, 0.0], &[1.0, 1.0]],
            &lo,
            &hi,
            &mut rng,
        );
        assert_eq!(child, vec![0.3, 0.3]);
    }

    #[test]
    fn uniform_takes_every_gene_from_one_of_the_parents() {
        let (lo, hi) = wide();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let b = [1.0, 2.0];
        let w = [5.0, 6.0];
        for _ in 0..50 {
            let child = apply(OperatorId::Uniform, &P, &[&b, &w], &lo, &hi, &mut rng);
            for i in 0..2 {
                assert!(child[i] == b[i] || child[i] == w[i]);
            }
        }
    }

    #[test]
    fn uniform_of_identical_parents_is_identity() {
        let (lo, hi) = wide();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = [4.0, -7.0];
        let child = apply(OperatorId::Uniform, &P, &[&p, &p], &lo, &hi, &mut rng);
        assert_eq!(child, p.to_vec());
    }

    #[test]
    fn blend_of_identical_parents_is_identity() {
        let (lo, hi) = wide();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = [4.0, -7.0];
        let child = apply(OperatorId::Blend, &P, &[&p, &p], &lo, &hi, &mut rng);
        assert_eq!(child, p.to_vec());
    }

    #[test]
    fn blend_stays_in_the_extended_interval() {
        let (lo, hi) = wide();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let b = [0.0, 10.0];
        let w = [1.0, 0.0];
        for _ in 0..200 {
            let child = apply(OperatorId::Blend, &P, &[&b, &w], &lo, &hi, &mut rng);
            assert!((-0.2..=1.2).contains(&child[0]), "{}", child[0]);
            assert!((-2.0..=12.0).contains(&child[1]), "{}", child[1]);
        }
    }

    #[test]
    fn differential_applies_weighted_difference() {
        let (lo, hi) = wide();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let child = apply(
            OperatorId::Differential,
            &P,
            &[&[1.0, 1.0], &[2.0, 2.0], &[0.0, 0.0]],
            &lo,
            &hi,
            &mut rng,
        );
        assert_eq!(child, vec![2.6, 2.6]);
    }

    #[test]
    fn swap_moves_the_most_dissimilar_gene_from_the_worse_parent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let child = apply(
            OperatorId::Swap,
            &P,
            &[&[1.0, 5.0], &[1.0, 9.0]],
            &[0.0, 0.0],
            &[10.0, 10.0],
            &mut rng,
        );
        assert_eq!(child, vec![1.0, 9.0]);
    }

    #[test]
    fn swap_breaks_ties_toward_the_lowest_index() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let child = apply(
            OperatorId::Swap,
            &P,
            &[&[0.0, 0.0], &[1.0, 1.0]],
            &[0.0, 0.0],
            &[10.0, 10.0],
            &mut rng,
        );
        assert_eq!(child, vec![1.0, 0.0]);
    }

    #[test]
    fn raise_shifts_all_genes_by_the_same_range_fraction() {
        let lo = [0.0, 0.0];
        let hi = [1.0, 10.0];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = [0.5, 5.0];
        for _ in 0..100 {
            let child = apply(OperatorId::Raise, &P, &[&p], &lo, &hi, &mut rng);
            let s0 = child[0] - p[0];
            let s1 = child[1] - p[1];
            assert!(s0.abs() <= 0.01 + 1e-12);
            assert!(s1.abs() <= 0.1 + 1e-12);
            // same signed u, ranges 1 and 10: second shift is 10x the first
            assert!((s1 - 10.0 * s0).abs() < 1e-12, "s0={s0} s1={s1}");
        }
    }

    #[test]
    fn creep_touches_exactly_one_gene_within_its_amplitude() {
        let lo = [0.0, 0.0, 0.0];
        let hi = [1.0, 1.0, 1.0];
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let p = [0.5, 0.5, 0.5];
        for _ in 0..100 {
            let child = apply(OperatorId::Creep, &P, &[&p], &lo, &hi, &mut rng);
            let changed: Vec<usize> = (0..3).filter(|&i| child[i] != p[i]).collect();
            assert!(changed.len() <= 1);
            for &i in &changed {
                assert!((child[i] - p[i]).abs() <= 0.001 + 1e-15);
            }
        }
    }

    #[test]
    fn creep_shift_examples() {
        assert_eq!(creep_shift(0.5, 0.0, 1.0, 0.001, 1.0), 0.501);
        assert_eq!(creep_shift(0.5, 0.0, 1.0, 0.001, 0.0), 0.5);
        // at the boundary the shift is absorbed by the clamp
        assert_eq!(creep_shift(1.0, 0.0, 1.0, 0.001, 1.0), 1.0);
        assert_eq!(creep_shift(0.0, 0.0, 1.0, 0.001, -1.0), 0.0);
    }

    #[test]
    fn random_reset_redraws_one_gene_within_bounds() {
        let lo = [0.0, 0.0, 0.0];
        let hi = [1.0, 1.0, 1.0];
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = [0.5, 0.5, 0.5];
        for _ in 0..100 {
            let child = apply(OperatorId::RandomReset, &P, &[&p], &lo, &hi, &mut rng);
            let changed: Vec<usize> = (0..3).filter(|&i| child[i] != p[i]).collect();
            assert!(changed.len() <= 1); // redraw may land on the old value
            for &i in &changed {
                assert!((0.0..=1.0).contains(&child[i]));
            }
        }
    }

    #[test]
    fn arity_table() {
        let a: Vec<usize> = OperatorId::ALL.iter().map(|o| o.arity()).collect();
        assert_eq!(a, vec![2, 2, 2, 2, 2, 3, 2, 1, 1, 1]);
    }

    #[test]
    fn numbers_round_trip() {
        for op in OperatorId::ALL {
            assert_eq!(OperatorId::from_number(op.number()), Some(op));
        }
        assert_eq!(OperatorId::from_number(0), None);
        assert_eq!(OperatorId::from_number(11), None);
    }

    /// Sweep every operator over random parents and random boxes: the child
    /// must stay inside the box and keep the dimension.
    #[test]
    fn children_always_stay_in_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(20260819);
        for _ in 0..10_000 {
            let dim = rng.gen_range(1..=6);
            let mut lo = Vec::with_capacity(dim);
            let mut hi = Vec::with_capacity(dim);
            for _ in 0..dim {
                let a: f64 = rng.gen_range(-50.0..50.0);
                let w: f64 = rng.gen_range(1e-6..100.0);
                lo.push(a);
                hi.push(a + w);
            }
            let genomes: Vec<Vec<f64>> = (0..3)
                .map(|_| (0..dim).map(|i| rng.gen_range(lo[i]..=hi[i])).collect())
                .collect();
            for op in OperatorId::ALL {
                if op == OperatorId::OnePoint && dim < 2 {
                    continue;
                }
                let parents: Vec<&[f64]> =
                    genomes.iter().take(op.arity()).map(|g| g.as_slice()).collect();
                let child = apply(op, &P, &parents, &lo, &hi, &mut rng);
                assert_eq!(child.len(), dim, "{op}");
                for i in 0..dim {
                    assert!(
                        child[i] >= lo[i] && child[i] <= hi[i],
                        "{op}: gene {i} = {} outside [{}, {}]",
                        child[i],
                        lo[i],
                        hi[i]
                    );
                }
            }
        }
    }

    #[test]
    fn same_seed_reproduces_the_same_child() {
        let (lo, hi) = wide();
        let b = [1.0, 2.0];
        let w = [3.0, -4.0];
        let e = [0.5, 0.5];
        for op in OperatorId::ALL {
            let parents: Vec<&[f64]> = [b.as_slice(), w.as_slice(), e.as_slice()]
                [..op.arity()]
                .to_vec();
            let mut r1 = ChaCha8Rng::seed_from_u64(777);
            let mut r2 = ChaCha8Rng::seed_from_u64(777);
            let c1 = apply(op, &P, &parents, &lo, &hi, &mut r1);
            let c2 = apply(op, &P, &parents, &lo, &hi, &mut r2);
            assert_eq!(c1, c2, "{op}");
        }
    }
}
