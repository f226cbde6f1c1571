use crate::error::{Error, Result};

pub fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index, value: values[index] }),
        None => Ok(()),
    }
}

pub fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual })
    }
}

/// `log(sum(exp(x)))` with the maximum factored out. Empty input gives `-inf`.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + values.iter().map(|&v| (v - max).exp()).sum::<f64>().ln()
}

pub fn softmax(values: &[f64]) -> Vec<f64> {
    let lse = log_sum_exp(values);
    values.iter().map(|&v| (v - lse).exp()).collect()
}

/// Running log-sum-exp that accepts values one at a time.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogSumExpAcc {
    max: f64,
    scaled_sum: f64,
}

impl LogSumExpAcc {
    pub fn new() -> Self {
        LogSumExpAcc { max: f64::NEG_INFINITY, scaled_sum: 0.0 }
    }

    pub fn push(&mut self, v: f64) {
        if v > self.max {
            self.scaled_sum = self.scaled_sum * (self.max - v).exp() + 1.0;
            self.max = v;
        } else {
            self.scaled_sum += (v - self.max).exp();
        }
    }

    pub fn value(&self) -> f64 {
        self.max + self.scaled_sum.ln()
    }
}
