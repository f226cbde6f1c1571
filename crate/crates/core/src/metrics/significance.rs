use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::numeric::{check_finite, check_len};

/// Paired two-tailed Student's t-test on `a − b`.
///
/// All-zero differences give `p = 1`; constant nonzero differences give `p = 0`.
pub fn two_tailed_t_test(a: &[f64], b: &[f64]) -> Result<f64> {
    check_len(a.len(), b.len())?;
    if a.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "paired t-test needs at least 2 samples, got {}",
            a.len()
        )));
    }
    check_finite(a)?;
    check_finite(b)?;
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0);
    if var == 0.0 {
        return Ok(if mean == 0.0 { 1.0 } else { 0.0 });
    }
    let t = mean / (var / n).sqrt();
    let dist = StudentsT::new(0.0, 1.0, n - 1.0).expect("positive degrees of freedom");
    Ok((2.0 * dist.sf(t.abs())).clamp(0.0, 1.0))
}
