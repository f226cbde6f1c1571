//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library code paths it is used to check.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Central differences of `f` at `x` with step `h`.
pub fn central_difference(mut f: impl FnMut(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut x = x.to_vec();
    (0..x.len())
        .map(|j| {
            let orig = x[j];
            x[j] = orig + h;
            let up = f(&x);
            x[j] = orig - h;
            let down = f(&x);
            x[j] = orig;
            (up - down) / (2.0 * h)
        })
        .collect()
}

fn norm(v: impl Iterator<Item = f64>) -> f64 {
    v.map(|x| x * x).sum::<f64>().sqrt()
}

/// `‖a − b‖ / max(‖a‖, ‖b‖)`; zero when both vectors are zero.
pub fn relative_error(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let diff = norm(a.iter().zip(b).map(|(x, y)| x - y));
    let scale = norm(a.iter().copied()).max(norm(b.iter().copied()));
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// All orderings of `0..n` (Heap's algorithm).
pub fn all_orderings(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, v: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(v.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, v, out);
            if k % 2 == 0 {
                v.swap(i, k - 1);
            } else {
                v.swap(0, k - 1);
            }
        }
    }
    let mut v: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut v, &mut out);
    out
}

/// Plackett-Luce probability straight from the product formula.
pub fn pl_probability_definition(scores: &[f64], ordering: &[usize]) -> f64 {
    (0..ordering.len())
        .map(|i| {
            let denom: f64 = ordering[i..].iter().map(|&j| scores[j].exp()).sum();
            scores[ordering[i]].exp() / denom
        })
        .product()
}

pub fn dcg_definition(labels: &[u32], ordering: &[usize], k: usize) -> f64 {
    let mut total = 0.0;
    for (pos, &doc) in ordering.iter().enumerate() {
        if pos >= k {
            break;
        }
        let rank = (pos + 1) as f64;
        total += (2f64.powi(labels[doc] as i32) - 1.0) / (rank + 1.0).log2();
    }
    total
}

/// nDCG of a given ordering, the ideal DCG found by trying every ordering.
pub fn ndcg_bruteforce(labels: &[u32], ordering: &[usize], k: usize) -> Option<f64> {
    let ideal = all_orderings(labels.len())
        .iter()
        .map(|o| dcg_definition(labels, o, k))
        .fold(0.0, f64::max);
    if ideal == 0.0 {
        None
    } else {
        Some(dcg_definition(labels, ordering, k) / ideal)
    }
}

/// `P(|T| > t)` for Student's t with integer degrees of freedom, from the
/// closed-form finite series for integer `df` (Abramowitz and Stegun 26.7.3 and 26.7.4).
pub fn student_t_two_sided(t: f64, df: u32) -> f64 {
    assert!(df >= 1);
    let theta = (t.abs() / (df as f64).sqrt()).atan();
    let (s, c) = theta.sin_cos();
    let within = if df % 2 == 1 {
        let mut series = 0.0;
        if df > 1 {
            let mut term = c;
            series = term;
            let mut j = 3;
            while j <= df - 2 {
                term *= c * c * (j - 1) as f64 / j as f64;
                series += term;
                j += 2;
            }
        }
        2.0 / PI * (theta + s * series)
    } else {
        let mut term = 1.0;
        let mut series = 1.0;
        let mut j = 2;
        while j <= df - 2 {
            term *= c * c * (j - 1) as f64 / j as f64;
            series += term;
            j += 2;
        }
        s * series
    };
    (1.0 - within).clamp(0.0, 1.0)
}

pub fn paired_t_oracle(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    let d: Vec<f64> = (0..n).map(|i| a[i] - b[i]).collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    let ss: f64 = d.iter().map(|x| (x - mean) * (x - mean)).sum();
    let sd = (ss / (n as f64 - 1.0)).sqrt();
    let t = mean / (sd / (n as f64).sqrt());
    student_t_two_sided(t, (n - 1) as u32)
}

/// Total-variation distance between empirical counts and a distribution.
pub fn total_variation(counts: &[usize], probs: &[f64]) -> f64 {
    let total: usize = counts.iter().sum();
    counts
        .iter()
        .zip(probs)
        .map(|(&c, &p)| (c as f64 / total as f64 - p).abs())
        .sum::<f64>()
        / 2.0
}

pub fn mean_and_standard_error(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
