//! Probabilistic-classification metrics: AUC-ROC, Brier score, log loss,
//! expected calibration error, and their baseline-normalized variants.
//!
//! All metrics accumulate in `f64` internally regardless of the scalar type,
//! so rank sums and long reductions do not lose precision in `f32` runs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::num::{real, Real};

/// Default bin count for the expected calibration error.
pub const DEFAULT_ECE_BINS: usize = 10;
/// Probability clip applied before logarithms.
pub const LOG_LOSS_EPSILON: f64 = 1e-15;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("AUC-ROC needs at least one positive and one negative label")]
    SingleClass,
    #[error("metric inputs are empty")]
    EmptyInput,
    #[error("predictions and labels have different lengths")]
    LengthMismatch,
    #[error("baseline rate must lie in (0, 1)")]
    InvalidBaselineRate,
}

fn check_inputs<S: Real>(predictions: &[S], labels: &[bool]) -> Result<(), MetricError> {
    if predictions.is_empty() {
        return Err(MetricError::EmptyInput);
    }
    if predictions.len() != labels.len() {
        return Err(MetricError::LengthMismatch);
    }
    Ok(())
}

/// Rank-based (Mann-Whitney) AUC-ROC; tied scores credit half a pair.
pub fn auc_roc<S: Real>(predictions: &[S], labels: &[bool]) -> Result<S, MetricError> {
    check_inputs(predictions, labels)?;
    let n_pos = labels.iter().filter(|&&l| l).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(MetricError::SingleClass);
    }

    let mut order: Vec<usize> = (0..predictions.len()).collect();
    order.sort_by(|&a, &b| {
        predictions[a]
            .partial_cmp(&predictions[b])
            .expect("predictions must be comparable")
    });

    // Average ranks across ties, accumulate the positive-label rank sum.
    let mut rank_sum_pos = 0.0f64;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && predictions[order[j + 1]] == predictions[order[i]] {
            j += 1;
        }
        let avg_rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            if labels[idx] {
                rank_sum_pos += avg_rank;
            }
        }
        i = j + 1;
    }

    let n_pos = n_pos as f64;
    let n_neg = n_neg as f64;
    Ok(real(
        (rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg),
    ))
}

/// Mean squared error between prediction and the 0/1 label.
pub fn brier<S: Real>(predictions: &[S], labels: &[bool]) -> Result<S, MetricError> {
    check_inputs(predictions, labels)?;
    let mut sum = 0.0f64;
    for (p, &y) in predictions.iter().zip(labels) {
        let d = p.as_f64() - if y { 1.0 } else { 0.0 };
        sum += d * d;
    }
    Ok(real(sum / predictions.len() as f64))
}

/// Mean negative log likelihood with predictions clipped to
/// `[1e-15, 1 - 1e-15]` before the logarithm.
pub fn log_loss<S: Real>(predictions: &[S], labels: &[bool]) -> Result<S, MetricError> {
    check_inputs(predictions, labels)?;
    let mut sum = 0.0f64;
    for (p, &y) in predictions.iter().zip(labels) {
        let p = p.as_f64().clamp(LOG_LOSS_EPSILON, 1.0 - LOG_LOSS_EPSILON);
        sum -= if y { p.ln() } else { (1.0 - p).ln() };
    }
    Ok(real(sum / predictions.len() as f64))
}

/// Expected calibration error over `bins` equal-width probability bins;
/// empty bins are skipped and a prediction of exactly 1.0 lands in the last
/// bin.
pub fn ece<S: Real>(predictions: &[S], labels: &[bool], bins: usize) -> Result<S, MetricError> {
    check_inputs(predictions, labels)?;
    assert!(bins >= 1, "ece needs at least one bin");
    let mut count = vec![0usize; bins];
    let mut pred_sum = vec![0.0f64; bins];
    let mut label_sum = vec![0.0f64; bins];
    for (p, &y) in predictions.iter().zip(labels) {
        let p = p.as_f64();
        let b = ((p * bins as f64) as usize).min(bins - 1);
        count[b] += 1;
        pred_sum[b] += p;
        label_sum[b] += if y { 1.0 } else { 0.0 };
    }
    let n = predictions.len() as f64;
    let mut total = 0.0f64;
    for b in 0..bins {
        if count[b] == 0 {
            continue;
        }
        let nb = count[b] as f64;
        total += nb / n * (label_sum[b] / nb - pred_sum[b] / nb).abs();
    }
    Ok(real(total))
}

/// Ratio of a metric against its naive-baseline value.
///
/// A zero baseline with a zero metric means the two predictors coincide, so
/// the ratio is exactly one; a zero baseline with a positive metric is
/// reported as infinity.
pub fn normalized<S: Real>(metric: S, baseline: S) -> S {
    if baseline == S::zero() {
        if metric == S::zero() {
            S::one()
        } else {
            S::infinity()
        }
    } else {
        metric / baseline
    }
}

/// The seven-metric report plus the baseline reference values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport<S> {
    /// Absent when the evaluation set has a single class.
    pub auc_roc: Option<S>,
    pub bs: S,
    pub nbs: S,
    pub ll: S,
    pub nll: S,
    pub ece: S,
    pub nece: S,
    pub bs_baseline: S,
    pub ll_baseline: S,
    pub ece_baseline: S,
    /// Constant probability used by the naive baseline.
    pub baseline_rate: S,
    pub n: usize,
    pub ece_bins: usize,
}

/// Raw metric values for one predictor, used to assemble reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawMetrics<S> {
    pub auc_roc: Option<S>,
    pub bs: S,
    pub ll: S,
    pub ece: S,
}

impl<S: Real> EvalReport<S> {
    /// Assembles a report by dividing raw metrics by the baseline metrics.
    /// This is the normalization step of [`evaluate`], exposed so reported
    /// metric pairs can be cross-checked without the underlying data.
    pub fn from_components(
        raw: RawMetrics<S>,
        baseline: RawMetrics<S>,
        baseline_rate: S,
        n: usize,
        ece_bins: usize,
    ) -> Self {
        Self {
            auc_roc: raw.auc_roc,
            bs: raw.bs,
            nbs: normalized(raw.bs, baseline.bs),
            ll: raw.ll,
            nll: normalized(raw.ll, baseline.ll),
            ece: raw.ece,
            nece: normalized(raw.ece, baseline.ece),
            bs_baseline: baseline.bs,
            ll_baseline: baseline.ll,
            ece_baseline: baseline.ece,
            baseline_rate,
            n,
            ece_bins,
        }
    }

    /// One row of the fixed-width comparison table.
    fn table_row(&self, name: &str, flags: &[bool; 7]) -> String {
        let fmt = |v: Option<S>, flag: bool| -> String {
            let text = match v {
                Some(v) => format!("{:.4}", v.as_f64()),
                None => "   -  ".to_string(),
            };
            format!("{:>9}{}", text, if flag { "*" } else { " " })
        };
        let mut row = format!("{:<20}", name);
        let values = self.column_values();
        for (v, &f) in values.iter().zip(flags) {
            row.push_str(&fmt(*v, f));
        }
        row
    }

    fn column_values(&self) -> [Option<S>; 7] {
        [
            self.auc_roc,
            Some(self.bs),
            Some(self.nbs),
            Some(self.ll),
            Some(self.nll),
            Some(self.ece),
            Some(self.nece),
        ]
    }

    /// Renders reports side by side in Table-2 column order
    /// (AUC-ROC, BS, NBS, LL, NLL, ECE, NECE), flagging the best value per
    /// column with `*`. Higher is better for AUC-ROC, lower for the rest.
    pub fn render_table(rows: &[(String, EvalReport<S>)]) -> String {
        const HEADERS: [&str; 7] = ["AUC-ROC", "BS", "NBS", "LL", "NLL", "ECE", "NECE"];
        let mut out = format!("{:<20}", "approach");
        for h in HEADERS {
            out.push_str(&format!("{:>10}", h));
        }
        out.push('\n');

        // Best value per column.
        let mut best: [Option<f64>; 7] = [None; 7];
        for (_, report) in rows {
            for (i, v) in report.column_values().iter().enumerate() {
                if let Some(v) = v {
                    let v = v.as_f64();
                    let better = match best[i] {
                        None => true,
                        Some(b) => {
                            if i == 0 {
                                v > b
                            } else {
                                v < b
                            }
                        }
                    };
                    if better {
                        best[i] = Some(v);
                    }
                }
            }
        }
        for (name, report) in rows {
            let mut flags = [false; 7];
            for (i, v) in report.column_values().iter().enumerate() {
                flags[i] = matches!((v, best[i]), (Some(v), Some(b)) if v.as_f64() == b);
            }
            out.push_str(&report.table_row(name, &flags));
            out.push('\n');
        }
        out
    }
}

/// Computes all seven metrics against the naive baseline (constant
/// `baseline_rate` predictor evaluated on the same labels), with the default
/// ECE bin count.
pub fn evaluate<S: Real>(
    predictions: &[S],
    labels: &[bool],
    baseline_rate: S,
) -> Result<EvalReport<S>, MetricError> {
    evaluate_with_bins(predictions, labels, baseline_rate, DEFAULT_ECE_BINS)
}

/// As [`evaluate`] with an explicit ECE bin count.
pub fn evaluate_with_bins<S: Real>(
    predictions: &[S],
    labels: &[bool],
    baseline_rate: S,
    ece_bins: usize,
) -> Result<EvalReport<S>, MetricError> {
    check_inputs(predictions, labels)?;
    if !(baseline_rate > S::zero() && baseline_rate < S::one()) {
        return Err(MetricError::InvalidBaselineRate);
    }
    let auc = match auc_roc(predictions, labels) {
        Ok(v) => Some(v),
        Err(MetricError::SingleClass) => None,
        Err(e) => return Err(e),
    };
    let raw = RawMetrics {
        auc_roc: auc,
        bs: brier(predictions, labels)?,
        ll: log_loss(predictions, labels)?,
        ece: ece(predictions, labels, ece_bins)?,
    };
    let constant = vec![baseline_rate; labels.len()];
    let baseline = RawMetrics {
        auc_roc: None,
        bs: brier(&constant, labels)?,
        ll: log_loss(&constant, labels)?,
        ece: ece(&constant, labels, ece_bins)?,
    };
    Ok(EvalReport::from_components(
        raw,
        baseline,
        baseline_rate,
        labels.len(),
        ece_bins,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auc_perfect_ranking() {
        let preds = [0.9f64, 0.1];
        let labels = [true, false];
        assert_eq!(auc_roc(&preds, &labels).unwrap(), 1.0);
    }

    #[test]
    fn auc_constant_predictions_is_half() {
        let preds = [0.3f64; 6];
        let labels = [true, false, true, false, false, true];
        assert_eq!(auc_roc(&preds, &labels).unwrap(), 0.5);
    }

    #[test]
    fn auc_tie_rule() {
        let preds = [0.3f64, 0.3];
        let labels = [false, true];
        assert_eq!(auc_roc(&preds, &labels).unwrap(), 0.5);
    }

    #[test]
    fn auc_single_class_is_an_error() {
        let preds = [0.3f64, 0.4];
        assert_eq!(auc_roc(&preds, &[true, true]).unwrap_err(), MetricError::SingleClass);
    }

    #[test]
    fn auc_is_invariant_under_monotone_transforms() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let n = 40;
            let preds: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
            let labels: Vec<bool> = (0..n).map(|_| rng.genbool()).collect();
            if labels.iter().all(|&l| l) || labels.iter().all(|&l| !l) {
                continue;
            }
            let base = auc_roc(&preds, &labels).unwrap();
            let scale: f64 = rng.gen::<f64>() + 0.5;
            let shift: f64 = rng.gen::<f64>() - 0.5;
            let mapped: Vec<f64> = preds.iter().map(|p| (p * scale + shift).exp()).collect();
            assert_eq!(auc_roc(&mapped, &labels).unwrap(), base);
        }
    }

    #[test]
    fn brier_perfect_and_half() {
        let preds = [1.0f64, 0.0];
        let labels = [true, false];
        assert_eq!(brier(&preds, &labels).unwrap(), 0.0);

        let preds = [0.5f64; 4];
        let labels = [true, false, true, false];
        assert_eq!(brier(&preds, &labels).unwrap(), 0.25);
    }

    #[test]
    fn brier_constant_closed_form() {
        // 100 samples, 31 goals, constant p = 0.1051.
        let n = 100;
        let k = 31;
        let p = 0.1051f64;
        let preds = vec![p; n];
        let labels: Vec<bool> = (0..n).map(|i| i < k).collect();
        let r = k as f64 / n as f64;
        let expect = r * (1.0 - p).powi(2) + (1.0 - r) * p * p;
        assert!((brier(&preds, &labels).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn log_loss_basics() {
        let preds = [1.0f64, 0.0];
        let labels = [true, false];
        assert!(log_loss(&preds, &labels).unwrap() <= 1e-14);

        let preds = [0.5f64; 5];
        let labels = [true, true, false, true, false];
        assert!((log_loss(&preds, &labels).unwrap() - 2.0f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn log_loss_clipping_keeps_confident_errors_finite() {
        let preds = [1.0f64];
        let labels = [false];
        let ll = log_loss(&preds, &labels).unwrap();
        assert!(ll.is_finite());
        assert!((ll - (-(LOG_LOSS_EPSILON).ln_1p().abs() + (1.0f64 - LOG_LOSS_EPSILON).ln().abs())).abs() < 40.0);
    }

    #[test]
    fn ece_calibrated_constant_is_zero() {
        let preds = [0.25f64; 4];
        let labels = [true, false, false, false];
        assert_eq!(ece(&preds, &labels, 10).unwrap(), 0.0);
    }

    #[test]
    fn ece_single_occupied_bin() {
        let preds = [0.3f64; 10];
        let labels = [false; 10];
        assert!((ece(&preds, &labels, 10).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn ece_two_bin_hand_case() {
        let mut preds = vec![0.1f64; 4];
        preds.extend(vec![0.9f64; 4]);
        let mut labels = vec![true, false, false, false];
        labels.extend(vec![true, true, true, false]);
        assert!((ece(&preds, &labels, 10).unwrap() - 0.15).abs() < 1e-12);
    }

    #[test]
    fn evaluate_self_normalizes_to_exactly_one() {
        let rate = 0.1051f64;
        let preds = vec![rate; 200];
        let labels: Vec<bool> = (0..200).map(|i| i % 10 == 0).collect();
        let report = evaluate(&preds, &labels, rate).unwrap();
        assert_eq!(report.nbs, 1.0);
        assert_eq!(report.nll, 1.0);
        assert_eq!(report.nece, 1.0);
        assert!(report.auc_roc.is_none() || report.auc_roc == Some(0.5));
    }

    #[test]
    fn normalization_identities_match_reported_pairs() {
        assert!((normalized(0.0825f64, 0.1016) - 0.8120).abs() < 5e-5);
        assert!((normalized(0.2869f64, 0.3567) - 0.8043).abs() < 5e-5);
        assert!((normalized(0.0020f64, 0.0095) - 0.2105).abs() < 5e-5);
    }

    #[test]
    fn normalized_zero_baseline_rules() {
        assert_eq!(normalized(0.0f64, 0.0), 1.0);
        assert_eq!(normalized(0.1f64, 0.0), f64::INFINITY);
    }

    #[test]
    fn brier_constant_bounded_by_worst_class_share() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..100 {
            let n = 50;
            let labels: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.3)).collect();
            let p: f64 = rng.gen();
            let preds = vec![p; n];
            let r = labels.iter().filter(|&&l| l).count() as f64 / n as f64;
            let b = brier(&preds, &labels).unwrap();
            assert!(b <= r.max(1.0 - r) + 1e-12);
        }
    }

    #[test]
    fn table_rendering_flags_best_values() {
        let raw_a = RawMetrics { auc_roc: Some(0.79f64), bs: 0.08, ll: 0.28, ece: 0.002 };
        let raw_b = RawMetrics { auc_roc: Some(0.77f64), bs: 0.09, ll: 0.29, ece: 0.003 };
        let base = RawMetrics { auc_roc: None, bs: 0.10, ll: 0.35, ece: 0.009 };
        let a = EvalReport::from_components(raw_a, base, 0.105, 100, 10);
        let b = EvalReport::from_components(raw_b, base, 0.105, 100, 10);
        let table = EvalReport::render_table(&[("a".into(), a), ("b".into(), b)]);
        assert!(table.contains("AUC-ROC"));
        let line_a = table.lines().nth(1).unwrap();
        assert!(line_a.contains("0.7900*"));
    }
}
