use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::letor::Dataset;
use crate::net::ModelParams;
use crate::numeric::{check_finite, check_len};

/// How [`mean_ndcg_with`] treats queries whose labels are all zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UndefinedNdcg {
    /// Leave them out of both numerator and denominator.
    #[default]
    Skip,
    Zero,
    One,
}

fn gain(label: u32) -> f64 {
    2f64.powi(label as i32) - 1.0
}

/// Document indices by descending score; equal scores keep document order.
pub fn rank_by_score(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    order
}

/// `Σ_{i ≤ min(k, n)} (2^rel_i − 1) / log2(i + 1)` over the given ranking.
pub fn dcg_at_k(labels: &[u32], ranking: &[usize], k: usize) -> f64 {
    ranking
        .iter()
        .take(k)
        .enumerate()
        .map(|(i, &doc)| gain(labels[doc]) / ((i + 2) as f64).log2())
        .sum()
}

/// `None` when every label is zero (no ideal gain to normalize by).
pub fn ndcg_at_k(predicted: &[f64], labels: &[u32], k: usize) -> Result<Option<f64>> {
    check_len(labels.len(), predicted.len())?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    check_finite(predicted)?;
    let mut ideal: Vec<usize> = (0..labels.len()).collect();
    ideal.sort_by_key(|&i| std::cmp::Reverse(labels[i]));
    let idcg = dcg_at_k(labels, &ideal, k);
    if idcg == 0.0 {
        return Ok(None);
    }
    let dcg = dcg_at_k(labels, &rank_by_score(predicted), k);
    Ok(Some((dcg / idcg).min(1.0)))
}

pub fn mean_ndcg(model: &ModelParams, dataset: &Dataset, k: usize) -> Result<f64> {
    mean_ndcg_with(model, dataset, k, UndefinedNdcg::Skip, Execution::default())
}

/// Mean nDCG@k of `model` over the queries of `dataset`. Per-query values are
/// computed under `exec` and summed in query order.
pub fn mean_ndcg_with(
    model: &ModelParams,
    dataset: &Dataset,
    k: usize,
    undefined: UndefinedNdcg,
    exec: Execution,
) -> Result<f64> {
    if dataset.is_empty() {
        return Err(Error::InvalidDataset("cannot evaluate an empty dataset".into()));
    }
    let per_query = exec.map(&dataset.groups, |_, g| {
        let scores = model.score(g.features.view())?;
        ndcg_at_k(&scores, &g.labels, k)
    });
    mean_of_defined(per_query.into_iter().collect::<Result<Vec<_>>>()?, undefined)
}

pub(crate) fn mean_of_defined(values: Vec<Option<f64>>, undefined: UndefinedNdcg) -> Result<f64> {
    let fill = match undefined {
        UndefinedNdcg::Skip => None,
        UndefinedNdcg::Zero => Some(0.0),
        UndefinedNdcg::One => Some(1.0),
    };
    let (sum, count) = values
        .into_iter()
        .filter_map(|v| v.or(fill))
        .fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        return Err(Error::UndefinedMetric);
    }
    Ok(sum / count as f64)
}
