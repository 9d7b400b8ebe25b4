//! Aggregation of feature tensors into rankings.
//!
//! The main path is PROMETHEE II generalized to an alternatives × criteria ×
//! features tensor: signed pairwise differences per (criterion, feature) cell,
//! a preference function on each difference, a weighted global preference
//! index, and the net outranking flow. Classical matrix PROMETHEE II is the
//! one-feature special case. A tensor TOPSIS is provided for comparison.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::features::{CriterionFeatureDirections, Direction};
use crate::tensor::{DecisionMatrix, FeatureTensor};

/// Scores closer than this are reported as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Weights γ(j, ℓ) over (criterion, feature) cells. Non-negative, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightScheme {
    n_criteria: usize,
    n_features: usize,
    gamma: Vec<f64>,
}

impl WeightScheme {
    pub const SUM_TOLERANCE: f64 = 1e-9;

    /// `gamma` is row-major over (criterion, feature).
    pub fn new(n_criteria: usize, n_features: usize, gamma: Vec<f64>) -> Result<Self> {
        if gamma.len() != n_criteria * n_features || gamma.is_empty() {
            return Err(Error::Validation(format!(
                "{} weights for {n_criteria} criteria x {n_features} features",
                gamma.len()
            )));
        }
        if let Some(g) = gamma.iter().find(|g| !(g.is_finite() && **g >= 0.0)) {
            return Err(Error::Validation(format!("weight {g} is negative or not finite")));
        }
        let total: f64 = gamma.iter().sum();
        if (total - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::Validation(format!("weights sum to {total}, expected 1")));
        }
        Ok(WeightScheme {
            n_criteria,
            n_features,
            gamma,
        })
    }

    /// γ = 1 / (m·w) everywhere.
    pub fn uniform(n_criteria: usize, n_features: usize) -> Self {
        let k = n_criteria * n_features;
        WeightScheme {
            n_criteria,
            n_features,
            gamma: vec![1.0 / k as f64; k],
        }
    }

    /// Per-criterion weights for a single-feature (matrix) aggregation.
    pub fn matrix(gamma: Vec<f64>) -> Result<Self> {
        let m = gamma.len();
        WeightScheme::new(m, 1, gamma)
    }

    pub fn n_criteria(&self) -> usize {
        self.n_criteria
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn get(&self, criterion: usize, feature: usize) -> f64 {
        self.gamma[criterion * self.n_features + feature]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.gamma
    }

    fn check_shape(&self, m: usize, w: usize) -> Result<()> {
        if (self.n_criteria, self.n_features) != (m, w) {
            return Err(Error::Validation(format!(
                "weights are {}x{} but data has {m} criteria x {w} features",
                self.n_criteria, self.n_features
            )));
        }
        Ok(())
    }
}

/// Oriented differences d(i, k, j, ℓ); positive means `i` is preferred to `k`
/// on cell (j, ℓ).
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseTensor {
    shape: [usize; 4],
    d: Vec<f64>,
}

impl PairwiseTensor {
    pub fn shape(&self) -> [usize; 4] {
        self.shape
    }

    pub fn get(&self, i: usize, k: usize, j: usize, l: usize) -> f64 {
        let [n, _, m, w] = self.shape;
        self.d[((i * n + k) * m + j) * w + l]
    }
}

/// Signed difference of `a` over `b` on one cell. The CV sentinel (+∞) is
/// worse than any finite value whatever the cell direction.
fn oriented_difference(a: f64, b: f64, direction: Direction) -> f64 {
    match (a.is_finite(), b.is_finite()) {
        (true, true) => match direction {
            Direction::Maximize => a - b,
            Direction::Minimize => b - a,
        },
        (false, false) => 0.0,
        (false, true) => -1.0,
        (true, false) => 1.0,
    }
}

fn check_directions(s: &FeatureTensor, dirs: &CriterionFeatureDirections) -> Result<()> {
    let [_, m, w] = s.shape();
    if dirs.n_criteria() != m || dirs.n_features() != w {
        return Err(Error::Validation(format!(
            "directions are {}x{} but data has {m} criteria x {w} features",
            dirs.n_criteria(),
            dirs.n_features()
        )));
    }
    Ok(())
}

pub fn pairwise_differences(s: &FeatureTensor, dirs: &CriterionFeatureDirections) -> Result<PairwiseTensor> {
    let [n, m, w] = s.shape();
    if n < 2 {
        return Err(Error::Validation("ranking needs at least two alternatives".into()));
    }
    check_directions(s, dirs)?;
    let mut d = Vec::with_capacity(n * n * m * w);
    for i in 0..n {
        for k in 0..n {
            for j in 0..m {
                for l in 0..w {
                    d.push(if i == k {
                        0.0
                    } else {
                        oriented_difference(s.get(i, j, l), s.get(k, j, l), dirs.get(j, l))
                    });
                }
            }
        }
    }
    Ok(PairwiseTensor {
        shape: [n, n, m, w],
        d,
    })
}

/// `(sgn(d) + 1) / 2`: 1 for a strict win, 0.5 for a tie, 0 for a loss.
pub fn usual_preference(d: f64) -> f64 {
    if d > 0.0 {
        1.0
    } else if d < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Maps an oriented difference to a preference degree in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PreferenceFunction {
    #[default]
    Usual,
}

impl PreferenceFunction {
    pub fn apply(self, d: f64) -> f64 {
        match self {
            PreferenceFunction::Usual => usual_preference(d),
        }
    }
}

/// Square n × n matrix of global preference indices π(i, k).
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceMatrix {
    n: usize,
    values: Vec<f64>,
}

impl PreferenceMatrix {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::Validation(format!("{} entries for a {n}x{n} matrix", values.len())));
        }
        Ok(PreferenceMatrix { n, values })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.n + k]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// π(i, k) = Σ_j Σ_ℓ γ(j, ℓ) · P(d(i, k, j, ℓ)); the diagonal is zero.
pub fn global_preference(d: &PairwiseTensor, weights: &WeightScheme, pref: PreferenceFunction) -> Result<PreferenceMatrix> {
    let [n, _, m, w] = d.shape();
    weights.check_shape(m, w)?;
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            if i == k {
                continue;
            }
            let mut pi = 0.0;
            for j in 0..m {
                for l in 0..w {
                    pi += weights.get(j, l) * pref.apply(d.get(i, k, j, l));
                }
            }
            // weights summing to 1 ± ulp can push a convex combination past the bounds
            values[i * n + k] = pi.clamp(0.0, 1.0);
        }
    }
    PreferenceMatrix::new(n, values)
}

/// Scores with the induced ordering.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankResult {
    pub alternatives: Vec<String>,
    pub scores: Vec<f64>,
    /// Alternative indices, best first. Ties keep input order.
    pub ordering: Vec<usize>,
    /// Groups (size ≥ 2) of alternatives whose scores agree within
    /// [`TIE_TOLERANCE`], each listed in ordering order.
    pub tie_groups: Vec<Vec<usize>>,
}

impl RankResult {
    /// Orders alternatives by descending score.
    pub fn from_scores(alternatives: Vec<String>, scores: Vec<f64>) -> Result<Self> {
        if alternatives.len() != scores.len() {
            return Err(Error::Validation(format!(
                "{} scores for {} alternatives",
                scores.len(),
                alternatives.len()
            )));
        }
        if scores.iter().any(|s| s.is_nan()) {
            return Err(Error::Validation("NaN score".into()));
        }
        let mut by_score: Vec<usize> = (0..scores.len()).collect();
        by_score.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));

        // chain neighbours within tolerance into groups, then restore input order inside each
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &k in &by_score {
            match groups.last_mut() {
                Some(g) if (scores[*g.last().unwrap()] - scores[k]).abs() <= TIE_TOLERANCE => g.push(k),
                _ => groups.push(vec![k]),
            }
        }
        for g in &mut groups {
            g.sort_unstable();
        }
        let ordering = groups.iter().flatten().copied().collect();
        let tie_groups = groups.into_iter().filter(|g| g.len() > 1).collect();
        Ok(RankResult {
            alternatives,
            scores,
            ordering,
            tie_groups,
        })
    }

    /// Alternative labels, best first.
    pub fn ordered_labels(&self) -> Vec<&str> {
        self.ordering.iter().map(|&k| self.alternatives[k].as_str()).collect()
    }

    pub fn score_of(&self, alternative: &str) -> Option<f64> {
        self.alternatives
            .iter()
            .position(|a| a == alternative)
            .map(|k| self.scores[k])
    }
}

/// f(i) = mean π(i, ·) − mean π(·, i).
pub fn net_flow(pi: &PreferenceMatrix, alternatives: &[String]) -> Result<RankResult> {
    let n = pi.size();
    if n < 2 || alternatives.len() != n {
        return Err(Error::Validation(format!(
            "net flow needs n >= 2 with one label each (n = {n}, {} labels)",
            alternatives.len()
        )));
    }
    let denom = (n - 1) as f64;
    let scores = (0..n)
        .map(|i| {
            let (mut out, mut inc) = (0.0, 0.0);
            for a in 0..n {
                if a != i {
                    out += pi.get(i, a);
                    inc += pi.get(a, i);
                }
            }
            out / denom - inc / denom
        })
        .collect();
    RankResult::from_scores(alternatives.to_vec(), scores)
}

/// Intermediates and result of one PROMETHEE run.
#[derive(Debug, Clone, PartialEq)]
pub struct PrometheeOutcome {
    pub preference: PreferenceMatrix,
    pub ranking: RankResult,
}

pub fn promethee_tensor(s: &FeatureTensor, dirs: &CriterionFeatureDirections, weights: &WeightScheme) -> Result<PrometheeOutcome> {
    let d = pairwise_differences(s, dirs)?;
    let preference = global_preference(&d, weights, PreferenceFunction::Usual)?;
    let ranking = net_flow(&preference, s.alternatives())?;
    Ok(PrometheeOutcome { preference, ranking })
}

/// Classical PROMETHEE II on one decision matrix.
pub fn promethee_matrix(h: &DecisionMatrix, base: &[Direction], weights: &WeightScheme) -> Result<PrometheeOutcome> {
    let s = FeatureTensor::from_matrix(h, "value")?;
    promethee_tensor(&s, &CriterionFeatureDirections::matrix(base.to_vec()), weights)
}

/// Closeness to the ideal point over all (criterion, feature) cells.
///
/// Each cell is vector-normalized across alternatives and scaled by its
/// weight; the ideal takes the best value per cell and the anti-ideal the
/// worst. Score is D⁻ / (D⁺ + D⁻), or 0.5 when both distances vanish.
pub fn topsis_tensor(s: &FeatureTensor, dirs: &CriterionFeatureDirections, weights: &WeightScheme) -> Result<RankResult> {
    let [n, m, w] = s.shape();
    if n < 2 {
        return Err(Error::Validation("ranking needs at least two alternatives".into()));
    }
    check_directions(s, dirs)?;
    weights.check_shape(m, w)?;

    let mut v = vec![0.0; n * m * w];
    let mut ideal = vec![0.0; m * w];
    let mut anti = vec![0.0; m * w];
    for j in 0..m {
        for l in 0..w {
            let cell = || format!("({}, {})", s.criteria()[j], s.features()[l]);
            if (0..n).any(|i| !s.get(i, j, l).is_finite()) {
                return Err(Error::Validation(format!("non-finite value in cell {}", cell())));
            }
            let norm = (0..n).map(|i| s.get(i, j, l).powi(2)).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::Validation(format!("all-zero column in cell {}", cell())));
            }
            let g = weights.get(j, l);
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for i in 0..n {
                let x = g * s.get(i, j, l) / norm;
                v[(i * m + j) * w + l] = x;
                lo = lo.min(x);
                hi = hi.max(x);
            }
            let (best, worst) = match dirs.get(j, l) {
                Direction::Maximize => (hi, lo),
                Direction::Minimize => (lo, hi),
            };
            ideal[j * w + l] = best;
            anti[j * w + l] = worst;
        }
    }
    let scores = (0..n)
        .map(|i| {
            let row = &v[i * m * w..(i + 1) * m * w];
            let dist = |target: &[f64]| {
                row.iter()
                    .zip(target)
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt()
            };
            let (plus, minus) = (dist(&ideal), dist(&anti));
            if plus + minus == 0.0 {
                0.5
            } else {
                minus / (plus + minus)
            }
        })
        .collect();
    RankResult::from_scores(s.alternatives().to_vec(), scores)
}

/// Pairwise agreement between two orderings of the same alternatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankAgreement {
    pub tau: f64,
    pub concordant: usize,
    pub discordant: usize,
}

/// Kendall's tau between the orderings of two rankings, matched by label.
pub fn rank_distance(a: &RankResult, b: &RankResult) -> Result<RankAgreement> {
    kendall_tau(&a.ordered_labels(), &b.ordered_labels())
}

/// Kendall's tau between two orderings (best first) of the same label set.
pub fn kendall_tau<S: AsRef<str>, T: AsRef<str>>(a: &[S], b: &[T]) -> Result<RankAgreement> {
    let pos_b: HashMap<&str, usize> = b.iter().enumerate().map(|(k, s)| (s.as_ref(), k)).collect();
    if a.len() != b.len() || pos_b.len() != b.len() {
        return Err(Error::Validation("rankings cover different alternative sets".into()));
    }
    let mapped: Vec<usize> = a
        .iter()
        .map(|s| {
            pos_b
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::Validation(format!("alternative '{}' missing from second ranking", s.as_ref())))
        })
        .collect::<Result<_>>()?;
    let (mut concordant, mut discordant) = (0, 0);
    for x in 0..mapped.len() {
        for y in x + 1..mapped.len() {
            if mapped[x] < mapped[y] {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    let pairs = concordant + discordant;
    let tau = if pairs == 0 {
        1.0
    } else {
        (concordant as f64 - discordant as f64) / pairs as f64
    };
    Ok(RankAgreement {
        tau,
        concordant,
        discordant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{derive_directions, FeatureSet};
    use crate::tensor::labels;
    use Direction::*;

    fn tensor(n: usize, m: usize, w: usize, values: Vec<f64>) -> FeatureTensor {
        FeatureTensor::new(labels("a", n), labels("c", m), labels("f", w), values).unwrap()
    }

    fn dirs(m: usize, w: usize, d: Direction) -> CriterionFeatureDirections {
        CriterionFeatureDirections::from_cells(vec![d; m], labels("f", w), vec![d; m * w]).unwrap()
    }

    #[test]
    fn differences_follow_direction() {
        let s = tensor(2, 1, 1, vec![5.0, 3.0]);
        let d = pairwise_differences(&s, &dirs(1, 1, Maximize)).unwrap();
        assert_eq!(d.get(0, 1, 0, 0), 2.0);
        assert_eq!(d.get(1, 0, 0, 0), -2.0);
        assert_eq!(d.get(0, 0, 0, 0), 0.0);
        let d = pairwise_differences(&s, &dirs(1, 1, Minimize)).unwrap();
        assert_eq!(d.get(0, 1, 0, 0), -2.0);
        let eq = tensor(2, 1, 1, vec![4.0, 4.0]);
        let d = pairwise_differences(&eq, &dirs(1, 1, Maximize)).unwrap();
        assert_eq!(d.get(0, 1, 0, 0), 0.0);
        assert_eq!(d.get(1, 0, 0, 0), 0.0);
    }

    #[test]
    fn sentinel_is_worst_either_way() {
        let s = tensor(2, 1, 1, vec![f64::INFINITY, 3.0]);
        for dir in [Maximize, Minimize] {
            let d = pairwise_differences(&s, &dirs(1, 1, dir)).unwrap();
            assert!(d.get(0, 1, 0, 0) < 0.0);
            assert!(d.get(1, 0, 0, 0) > 0.0);
        }
        let both = tensor(2, 1, 1, vec![f64::INFINITY, f64::INFINITY]);
        let d = pairwise_differences(&both, &dirs(1, 1, Minimize)).unwrap();
        assert_eq!(d.get(0, 1, 0, 0), 0.0);
    }

    #[test]
    fn single_alternative_rejected() {
        let s = tensor(1, 1, 1, vec![1.0]);
        assert!(pairwise_differences(&s, &dirs(1, 1, Maximize)).is_err());
    }

    #[test]
    fn usual_preference_values() {
        assert_eq!(usual_preference(2.0), 1.0);
        assert_eq!(usual_preference(0.0), 0.5);
        assert_eq!(usual_preference(-0.001), 0.0);
    }

    #[test]
    fn one_cell_preference() {
        let s = tensor(2, 1, 1, vec![1.0, 0.0]);
        let d = pairwise_differences(&s, &dirs(1, 1, Maximize)).unwrap();
        let pi = global_preference(&d, &WeightScheme::uniform(1, 1), PreferenceFunction::Usual).unwrap();
        assert_eq!(pi.get(0, 1), 1.0);
        assert_eq!(pi.get(1, 0), 0.0);
    }

    #[test]
    fn all_ties_give_half() {
        let s = tensor(3, 2, 2, vec![1.0; 12]);
        let out = promethee_tensor(&s, &dirs(2, 2, Maximize), &WeightScheme::uniform(2, 2)).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                let want = if i == k { 0.0 } else { 0.5 };
                assert!((out.preference.get(i, k) - want).abs() < 1e-15);
            }
        }
        assert!(out.ranking.scores.iter().all(|f| f.abs() < 1e-15));
        assert_eq!(out.ranking.tie_groups, vec![vec![0, 1, 2]]);
        assert_eq!(out.ranking.ordering, vec![0, 1, 2]);
    }

    #[test]
    fn six_of_nine_cells() {
        // a1 beats a2 on six cells and loses three
        let mut v = vec![0.0; 2 * 9];
        for c in 0..9 {
            let (a, b) = if c < 6 { (1.0, 0.0) } else { (0.0, 1.0) };
            v[c] = a;
            v[9 + c] = b;
        }
        let s = tensor(2, 3, 3, v);
        let d = pairwise_differences(&s, &dirs(3, 3, Maximize)).unwrap();
        let pi = global_preference(&d, &WeightScheme::uniform(3, 3), PreferenceFunction::Usual).unwrap();
        assert!((pi.get(0, 1) - 6.0 / 9.0).abs() < 1e-15);
        assert!((pi.get(1, 0) - 3.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn two_alternative_dominance() {
        let pi = PreferenceMatrix::new(2, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        let r = net_flow(&pi, &labels("a", 2)).unwrap();
        assert_eq!(r.scores, vec![1.0, -1.0]);
        assert_eq!(r.ordered_labels(), vec!["a1", "a2"]);
        assert!(r.tie_groups.is_empty());
    }

    #[test]
    fn tie_break_by_input_order() {
        let r = RankResult::from_scores(labels("a", 4), vec![0.1, 0.3, 0.1, 0.3 - 1e-15]).unwrap();
        assert_eq!(r.ordering, vec![1, 3, 0, 2]);
        assert_eq!(r.tie_groups, vec![vec![1, 3], vec![0, 2]]);
    }

    #[test]
    fn matrix_single_criterion() {
        let h = DecisionMatrix::new(labels("a", 2), labels("c", 1), vec![1.0, 2.0]).unwrap();
        let out = promethee_matrix(&h, &[Maximize], &WeightScheme::matrix(vec![1.0]).unwrap()).unwrap();
        assert_eq!(out.ranking.ordered_labels(), vec!["a2", "a1"]);
    }

    #[test]
    fn weight_validation() {
        assert!(WeightScheme::new(1, 2, vec![1.5, -0.5]).is_err());
        assert!(WeightScheme::new(1, 2, vec![0.5, 0.4]).is_err());
        assert!(WeightScheme::new(1, 2, vec![0.5]).is_err());
        assert!(WeightScheme::new(1, 2, vec![0.25, 0.75]).is_ok());
        let s = tensor(2, 1, 1, vec![1.0, 0.0]);
        assert!(promethee_tensor(&s, &dirs(1, 1, Maximize), &WeightScheme::uniform(2, 1)).is_err());
    }

    #[test]
    fn topsis_dominating_alternative() {
        let s = tensor(3, 2, 1, vec![5.0, 1.0, 3.0, 2.0, 1.0, 3.0]);
        let d = CriterionFeatureDirections::from_cells(vec![Maximize, Minimize], labels("f", 1), vec![Maximize, Minimize]).unwrap();
        let r = topsis_tensor(&s, &d, &WeightScheme::uniform(2, 1)).unwrap();
        assert!((r.scores[0] - 1.0).abs() < 1e-12);
        assert!(r.scores[2].abs() < 1e-12);
        assert_eq!(r.ordered_labels(), vec!["a1", "a2", "a3"]);
    }

    #[test]
    fn topsis_symmetric_pair() {
        let s = tensor(2, 1, 1, vec![4.0, 2.0]);
        let r = topsis_tensor(&s, &dirs(1, 1, Maximize), &WeightScheme::uniform(1, 1)).unwrap();
        assert!((r.scores[0] - 1.0).abs() < 1e-12);
        assert!(r.scores[1].abs() < 1e-12);
    }

    #[test]
    fn topsis_rejects_zero_column() {
        let s = tensor(2, 2, 1, vec![1.0, 0.0, 2.0, 0.0]);
        let err = topsis_tensor(&s, &dirs(2, 1, Maximize), &WeightScheme::uniform(2, 1)).unwrap_err();
        assert!(err.to_string().contains("(c2, f1)"), "{err}");
    }

    #[test]
    fn kendall_examples() {
        let a = ["a5", "a4", "a3", "a1", "a2"];
        assert_eq!(kendall_tau(&a, &a).unwrap().tau, 1.0);
        let rev: Vec<_> = a.iter().rev().copied().collect();
        assert_eq!(kendall_tau(&a, &rev).unwrap().tau, -1.0);
        let k = kendall_tau(&a, &["a4", "a5", "a1", "a2", "a3"]).unwrap();
        assert_eq!((k.concordant, k.discordant), (7, 3));
        assert!((k.tau - 0.4).abs() < 1e-15);
        assert!(kendall_tau(&a, &["a4", "a5", "a1", "a2", "a9"]).is_err());
        assert!(kendall_tau(&a, &["a4"]).is_err());
    }

    #[test]
    fn printed_feature_block_ranks_as_reported() {
        // alternatives × (average c1..c3, slope c1..c3, cv c1..c3)
        let printed = [
            [22.7, 105.6, 7.2, -0.069, 2.255, -0.114, 0.007, 0.037, 0.027],
            [20.9, 131.5, 7.0, -0.003, 2.905, -0.078, 0.012, 0.038, 0.021],
            [21.4, 105.6, 9.8, -0.054, 2.110, -0.050, 0.006, 0.034, 0.011],
            [22.4, 97.8, 4.4, -0.277, 0.453, 0.047, 0.027, 0.008, 0.022],
            [30.1, 103.9, 5.4, 0.149, 2.011, -0.2, 0.009, 0.033, 0.113],
        ];
        let mut v = Vec::new();
        for row in &printed {
            for j in 0..3 {
                for l in 0..3 {
                    v.push(row[l * 3 + j]);
                }
            }
        }
        let s = FeatureTensor::new(
            labels("a", 5),
            labels("c", 3),
            vec!["average".into(), "slope".into(), "cv".into()],
            v,
        )
        .unwrap();
        let d = derive_directions(&[Maximize, Minimize, Minimize], &FeatureSet::standard(), &[]).unwrap();
        let out = promethee_tensor(&s, &d, &WeightScheme::uniform(3, 3)).unwrap();
        assert_eq!(out.ranking.ordered_labels(), vec!["a5", "a4", "a3", "a1", "a2"]);
    }
}
