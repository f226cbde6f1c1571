//! List-wise losses with gradients with respect to the per-document scores.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{check_finite, check_len, log_sum_exp, softmax, LogSumExpAcc};
use crate::plackett_luce::{
    enumerate_pl, psi_map_scaled, sample_permutation, suffix_log_sum_exp, validate, Permutation,
};

#[derive(Debug, Clone, PartialEq)]
pub struct LossResult {
    pub loss: f64,
    /// `grad[j] = ∂loss / ∂score[j]`.
    pub grad: Vec<f64>,
    /// The permutation ListPL drew for this evaluation.
    pub sampled_pi: Option<Permutation>,
}

/// ListNet with the top-1 approximation: cross entropy between
/// `softmax(label_scores)` and `softmax(predicted)`.
pub fn listnet_top1(predicted: &[f64], label_scores: &[f64]) -> Result<LossResult> {
    check_len(predicted.len(), label_scores.len())?;
    if predicted.is_empty() {
        return Err(Error::InvalidArgument("empty score list".into()));
    }
    check_finite(predicted)?;
    check_finite(label_scores)?;
    let lse = log_sum_exp(predicted);
    let q = softmax(label_scores);
    let loss = -q.iter().zip(predicted).map(|(qj, sj)| qj * (sj - lse)).sum::<f64>();
    let grad = predicted.iter().zip(&q).map(|(sj, qj)| (sj - lse).exp() - qj).collect();
    Ok(LossResult { loss, grad, sampled_pi: None })
}

/// Negative PL log-likelihood of `pi` under `predicted`.
///
/// The gradient for the document at rank `k` is
/// `Σ_{i ≤ k} exp(s_{π_k}) / Σ_{j ≥ i} exp(s_{π_j}) − 1`, accumulated in log
/// space so it stays O(n).
pub fn listmle(predicted: &[f64], pi: &Permutation) -> Result<LossResult> {
    validate(predicted, pi)?;
    let order = pi.as_slice();
    let suffix = suffix_log_sum_exp(predicted, order);
    let mut loss = 0.0;
    let mut grad = vec![0.0; order.len()];
    let mut prefix = LogSumExpAcc::new();
    for (k, &doc) in order.iter().enumerate() {
        loss -= predicted[doc] - suffix[k];
        prefix.push(-suffix[k]);
        grad[doc] = (predicted[doc] + prefix.value()).exp() - 1.0;
    }
    Ok(LossResult { loss, grad, sampled_pi: None })
}

/// ListPL: one permutation drawn from the PL distribution of `ψ(labels)`,
/// scored with [`listmle`].
pub fn listpl<R: Rng + ?Sized>(predicted: &[f64], labels: &[u32], rng: &mut R) -> Result<LossResult> {
    listpl_scaled(predicted, labels, 1.0, rng)
}

pub fn listpl_scaled<R: Rng + ?Sized>(
    predicted: &[f64],
    labels: &[u32],
    psi_scale: f64,
    rng: &mut R,
) -> Result<LossResult> {
    let label_scores = psi_map_scaled(labels, psi_scale)?;
    listpl_from_scores(predicted, &label_scores, rng)
}

pub fn listpl_from_scores<R: Rng + ?Sized>(
    predicted: &[f64],
    label_scores: &[f64],
    rng: &mut R,
) -> Result<LossResult> {
    check_len(predicted.len(), label_scores.len())?;
    let pi = sample_permutation(label_scores, rng)?;
    let mut out = listmle(predicted, &pi)?;
    out.sampled_pi = Some(pi);
    Ok(out)
}

/// Exact cross entropy between the label and prediction PL distributions,
/// summed over all `n!` permutations.
pub fn full_cross_entropy(predicted: &[f64], label_scores: &[f64]) -> Result<f64> {
    check_len(predicted.len(), label_scores.len())?;
    check_finite(predicted)?;
    let mut total = 0.0;
    for (pi, weight) in enumerate_pl(label_scores)? {
        total += weight * listmle(predicted, &pi)?.loss;
    }
    Ok(total)
}

/// The single ground-truth ranking ListMLE trains on: descending label,
/// ties broken by document index.
pub fn ground_truth_permutation(labels: &[u32]) -> Permutation {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(labels[i]));
    Permutation::new(order).expect("sorted indices form a permutation")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossKind {
    ListNet,
    ListMle,
    ListPl,
}

impl LossKind {
    pub const ALL: [LossKind; 3] = [LossKind::ListNet, LossKind::ListMle, LossKind::ListPl];

    pub fn name(self) -> &'static str {
        match self {
            LossKind::ListNet => "listnet",
            LossKind::ListMle => "listmle",
            LossKind::ListPl => "listpl",
        }
    }

    /// Loss and score gradient for one query. `samples` only affects ListPL,
    /// whose result is then the mean over that many independent draws.
    pub fn evaluate<R: Rng + ?Sized>(
        self,
        predicted: &[f64],
        labels: &[u32],
        psi_scale: f64,
        samples: usize,
        rng: &mut R,
    ) -> Result<LossResult> {
        check_len(predicted.len(), labels.len())?;
        match self {
            LossKind::ListNet => listnet_top1(predicted, &psi_map_scaled(labels, psi_scale)?),
            LossKind::ListMle => listmle(predicted, &ground_truth_permutation(labels)),
            LossKind::ListPl => {
                let label_scores = psi_map_scaled(labels, psi_scale)?;
                let first = listpl_from_scores(predicted, &label_scores, rng)?;
                if samples <= 1 {
                    return Ok(first);
                }
                let mut acc = first;
                for _ in 1..samples {
                    let r = listpl_from_scores(predicted, &label_scores, rng)?;
                    acc.loss += r.loss;
                    acc.grad.iter_mut().zip(&r.grad).for_each(|(a, g)| *a += g);
                }
                let m = samples as f64;
                acc.loss /= m;
                acc.grad.iter_mut().for_each(|g| *g /= m);
                Ok(acc)
            }
        }
    }
}

impl fmt::Display for LossKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LossKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "listnet" => Ok(LossKind::ListNet),
            "listmle" => Ok(LossKind::ListMle),
            "listpl" => Ok(LossKind::ListPl),
            other => Err(Error::InvalidArgument(format!(
                "unknown loss {other:?} (expected listnet, listmle or listpl)"
            ))),
        }
    }
}
