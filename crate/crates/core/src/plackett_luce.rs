//! The Plackett-Luce distribution over permutations with exponential item
//! weights: scores are log-weights and
//!
//! ```text
//! P(π | s) = Π_i exp(s_{π_i}) / Σ_{j ≥ i} exp(s_{π_j})
//! ```

use rand::Rng;
use rand_distr::{Distribution, Gumbel};

use crate::error::{Error, Result};
use crate::numeric::{check_finite, check_len, LogSumExpAcc};

/// Largest list length [`enumerate_pl`] accepts (8! = 40320 permutations).
pub const MAX_ENUMERATION_LEN: usize = 8;

/// `order[i]` is the document placed at rank `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &i in &order {
            if i >= n {
                return Err(Error::InvalidPermutation(format!("position {i} out of range for n = {n}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("position {i} repeated")));
            }
        }
        Ok(Permutation(order))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl AsRef<[usize]> for Permutation {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

/// `suffix[i] = log Σ_{j ≥ i} exp(s_{π_j})`, accumulated from the tail.
pub(crate) fn suffix_log_sum_exp(scores: &[f64], order: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0; order.len()];
    let mut acc = LogSumExpAcc::new();
    for (i, &doc) in order.iter().enumerate().rev() {
        acc.push(scores[doc]);
        out[i] = acc.value();
    }
    out
}

pub(crate) fn validate(scores: &[f64], pi: &Permutation) -> Result<()> {
    check_len(scores.len(), pi.len())?;
    if scores.is_empty() {
        return Err(Error::InvalidArgument("empty score list".into()));
    }
    check_finite(scores)
}

pub fn pl_log_probability(scores: &[f64], pi: &Permutation) -> Result<f64> {
    validate(scores, pi)?;
    let order = pi.as_slice();
    let suffix = suffix_log_sum_exp(scores, order);
    Ok(order.iter().zip(&suffix).map(|(&doc, lse)| scores[doc] - lse).sum())
}

/// Order-preserving label embedding: `ψ(y) = y`.
pub fn psi_map(labels: &[u32]) -> Vec<f64> {
    labels.iter().map(|&y| f64::from(y)).collect()
}

/// `ψ(y) = scale · y`; larger scales sharpen the label distribution.
pub fn psi_map_scaled(labels: &[u32], scale: f64) -> Result<Vec<f64>> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidArgument(format!("psi scale must be positive, got {scale}")));
    }
    Ok(labels.iter().map(|&y| scale * f64::from(y)).collect())
}

/// Exact PL sample via Gumbel-max: perturb each score with standard Gumbel
/// noise and sort descending. Ties go to the lower document index.
pub fn sample_permutation<R: Rng + ?Sized>(scores: &[f64], rng: &mut R) -> Result<Permutation> {
    check_finite(scores)?;
    let gumbel = Gumbel::new(0.0, 1.0).expect("standard Gumbel parameters");
    let keys: Vec<f64> = scores.iter().map(|&s| s + gumbel.sample(rng)).collect();
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| keys[b].total_cmp(&keys[a]).then(a.cmp(&b)));
    Ok(Permutation(order))
}

/// PL sample drawn one rank at a time without replacement. Quadratic in `n`;
/// kept as an independent check on [`sample_permutation`].
pub fn sample_permutation_sequential<R: Rng + ?Sized>(
    scores: &[f64],
    rng: &mut R,
) -> Result<Permutation> {
    check_finite(scores)?;
    let mut remaining: Vec<usize> = (0..scores.len()).collect();
    let mut order = Vec::with_capacity(scores.len());
    while !remaining.is_empty() {
        let max = remaining.iter().map(|&i| scores[i]).fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = remaining.iter().map(|&i| (scores[i] - max).exp()).collect();
        let total: f64 = weights.iter().sum();
        let mut u = rng.random::<f64>() * total;
        let mut pick = remaining.len() - 1;
        for (k, w) in weights.iter().enumerate() {
            if u < *w {
                pick = k;
                break;
            }
            u -= w;
        }
        order.push(remaining.remove(pick));
    }
    Ok(Permutation(order))
}

/// Every permutation of `scores.len()` items, in lexicographic order, with its
/// exact PL probability.
pub fn enumerate_pl(scores: &[f64]) -> Result<Vec<(Permutation, f64)>> {
    let n = scores.len();
    if n > MAX_ENUMERATION_LEN {
        return Err(Error::TooLarge { n, limit: MAX_ENUMERATION_LEN });
    }
    check_finite(scores)?;
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        let pi = Permutation(order.clone());
        let lp = pl_log_probability(scores, &pi)?;
        out.push((pi, lp.exp()));
        if !next_lexicographic(&mut order) {
            break;
        }
    }
    Ok(out)
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
