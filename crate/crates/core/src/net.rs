//! Fully connected ReLU scoring network with hand-written backpropagation
//! and the ADAM optimizer.
//!
//! Every document row is scored independently; a query's `n x d` feature
//! matrix goes through the network as one batch.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use ndarray::{Array1, Array2, ArrayView2, Axis};
use rand::Rng;
use rand_distr::{Distribution, Uniform};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::check_len;

/// Hidden layer widths of the reference architecture.
pub const DEFAULT_HIDDEN: [usize; 2] = [80, 80];

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    /// `out x in`.
    pub weight: Array2<f64>,
    pub bias: Array1<f64>,
}

impl Layer {
    fn zeros(input: usize, output: usize) -> Self {
        Layer { weight: Array2::zeros((output, input)), bias: Array1::zeros(output) }
    }

    pub fn input_dim(&self) -> usize {
        self.weight.ncols()
    }

    pub fn output_dim(&self) -> usize {
        self.weight.nrows()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub layers: Vec<Layer>,
}

/// Gradients share the parameter layout.
pub type ParamGrads = ModelParams;

impl ModelParams {
    /// Glorot-uniform weights, zero biases.
    pub fn init<R: Rng + ?Sized>(feature_count: usize, hidden: &[usize], rng: &mut R) -> Result<Self> {
        let dims = layer_dims(feature_count, hidden)?;
        let layers = dims
            .windows(2)
            .map(|w| {
                let (fan_in, fan_out) = (w[0], w[1]);
                let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
                let dist = Uniform::new_inclusive(-limit, limit).expect("finite bounds");
                let weight = Array2::from_shape_simple_fn((fan_out, fan_in), || dist.sample(rng));
                Layer { weight, bias: Array1::zeros(fan_out) }
            })
            .collect();
        Ok(ModelParams { layers })
    }

    pub fn zeros(feature_count: usize, hidden: &[usize]) -> Result<Self> {
        let dims = layer_dims(feature_count, hidden)?;
        Ok(ModelParams { layers: dims.windows(2).map(|w| Layer::zeros(w[0], w[1])).collect() })
    }

    pub fn zeros_like(&self) -> Self {
        ModelParams {
            layers: self.layers.iter().map(|l| Layer::zeros(l.input_dim(), l.output_dim())).collect(),
        }
    }

    pub fn feature_count(&self) -> usize {
        self.layers[0].input_dim()
    }

    /// `[d, hidden..., 1]`.
    pub fn dims(&self) -> Vec<usize> {
        std::iter::once(self.feature_count())
            .chain(self.layers.iter().map(Layer::output_dim))
            .collect()
    }

    pub fn num_params(&self) -> usize {
        self.layers.iter().map(|l| l.weight.len() + l.bias.len()).sum()
    }

    /// Every parameter tensor as a flat slice, weights before biases per layer.
    pub fn tensors(&self) -> Vec<&[f64]> {
        self.layers
            .iter()
            .flat_map(|l| {
                [l.weight.as_slice().expect("standard layout"), l.bias.as_slice().expect("contiguous")]
            })
            .collect()
    }

    pub fn tensors_mut(&mut self) -> Vec<&mut [f64]> {
        self.layers
            .iter_mut()
            .flat_map(|l| {
                [
                    l.weight.as_slice_mut().expect("standard layout"),
                    l.bias.as_slice_mut().expect("contiguous"),
                ]
            })
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.tensors().iter().all(|t| t.iter().all(|v| v.is_finite()))
    }

    fn check_same_shape(&self, other: &ModelParams) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::Shape(format!(
                "parameter dims {:?} vs {:?}",
                self.dims(),
                other.dims()
            )));
        }
        Ok(())
    }

    /// Scores only, without keeping activations.
    pub fn score(&self, features: ArrayView2<f64>) -> Result<Vec<f64>> {
        self.check_input(features)?;
        let mut act = features.to_owned();
        let last = self.layers.len() - 1;
        for (i, layer) in self.layers.iter().enumerate() {
            act = act.dot(&layer.weight.t()) + &layer.bias;
            if i < last {
                act.mapv_inplace(relu);
            }
        }
        Ok(act.column(0).to_vec())
    }

    fn check_input(&self, features: ArrayView2<f64>) -> Result<()> {
        if features.ncols() != self.feature_count() {
            return Err(Error::Shape(format!(
                "input has {} features, network expects {}",
                features.ncols(),
                self.feature_count()
            )));
        }
        if let Some(value) = features.iter().copied().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: 0, value });
        }
        Ok(())
    }
}

fn layer_dims(feature_count: usize, hidden: &[usize]) -> Result<Vec<usize>> {
    if feature_count == 0 || hidden.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "layer widths must be positive (features {feature_count}, hidden {hidden:?})"
        )));
    }
    Ok(std::iter::once(feature_count).chain(hidden.iter().copied()).chain([1]).collect())
}

/// Reference architecture `d -> 80 -> 80 -> 1`.
pub fn init_params<R: Rng + ?Sized>(feature_count: usize, rng: &mut R) -> Result<ModelParams> {
    ModelParams::init(feature_count, &DEFAULT_HIDDEN, rng)
}

fn relu(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Activations kept from [`forward`] for [`backward`].
#[derive(Debug, Clone)]
pub struct ForwardTrace {
    /// `inputs[l]` is the input to layer `l`; `inputs[0]` is the feature matrix.
    pub inputs: Vec<Array2<f64>>,
    /// Pre-activations of every layer.
    pub pre_activations: Vec<Array2<f64>>,
}

impl ForwardTrace {
    pub fn rows(&self) -> usize {
        self.inputs[0].nrows()
    }
}

pub fn forward(params: &ModelParams, features: ArrayView2<f64>) -> Result<(Vec<f64>, ForwardTrace)> {
    params.check_input(features)?;
    let last = params.layers.len() - 1;
    let mut inputs = Vec::with_capacity(params.layers.len());
    let mut pre_activations = Vec::with_capacity(params.layers.len());
    let mut act = features.to_owned();
    for (i, layer) in params.layers.iter().enumerate() {
        let z = act.dot(&layer.weight.t()) + &layer.bias;
        inputs.push(act);
        act = if i < last { z.mapv(relu) } else { z.clone() };
        pre_activations.push(z);
    }
    let scores = act.column(0).to_vec();
    Ok((scores, ForwardTrace { inputs, pre_activations }))
}

/// Gradient of `Σ_j score_grad[j] · score[j]` with respect to every
/// parameter. The ReLU derivative at exactly zero is taken as zero.
pub fn backward(params: &ModelParams, trace: &ForwardTrace, score_grad: &[f64]) -> Result<ParamGrads> {
    check_len(trace.rows(), score_grad.len())?;
    if trace.inputs.len() != params.layers.len() {
        return Err(Error::Shape(format!(
            "trace has {} layers, network has {}",
            trace.inputs.len(),
            params.layers.len()
        )));
    }
    let n = score_grad.len();
    let mut delta = Array2::from_shape_vec((n, 1), score_grad.to_vec()).expect("n x 1");
    let mut grads = Vec::with_capacity(params.layers.len());
    for (i, layer) in params.layers.iter().enumerate().rev() {
        if i + 1 < params.layers.len() {
            delta.zip_mut_with(&trace.pre_activations[i], |d, &z| {
                if z <= 0.0 {
                    *d = 0.0;
                }
            });
        }
        let input = &trace.inputs[i];
        if input.ncols() != layer.input_dim() {
            return Err(Error::Shape(format!("trace layer {i} width mismatch")));
        }
        let weight = delta.t().dot(input);
        let bias = delta.sum_axis(Axis(0));
        if i > 0 {
            delta = delta.dot(&layer.weight);
        }
        grads.push(Layer { weight, bias });
    }
    grads.reverse();
    Ok(ModelParams { layers: grads })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig { learning_rate: 1e-5, beta1: 0.9, beta2: 0.999, epsilon: 1e-8 }
    }
}

#[derive(Debug, Clone)]
pub struct AdamState {
    pub config: AdamConfig,
    pub step_count: u64,
    pub first_moment: ModelParams,
    pub second_moment: ModelParams,
}

impl AdamState {
    pub fn new(config: AdamConfig, params: &ModelParams) -> Self {
        AdamState {
            config,
            step_count: 0,
            first_moment: params.zeros_like(),
            second_moment: params.zeros_like(),
        }
    }
}

/// One bias-corrected ADAM update, in place.
pub fn adam_step(state: &mut AdamState, params: &mut ModelParams, grads: &ParamGrads) -> Result<()> {
    params.check_same_shape(grads)?;
    params.check_same_shape(&state.first_moment)?;
    let AdamConfig { learning_rate, beta1, beta2, epsilon } = state.config;
    state.step_count += 1;
    let t = state.step_count as i32;
    let correction1 = 1.0 - beta1.powi(t);
    let correction2 = 1.0 - beta2.powi(t);
    let tensors = params
        .tensors_mut()
        .into_iter()
        .zip(grads.tensors())
        .zip(state.first_moment.tensors_mut())
        .zip(state.second_moment.tensors_mut());
    for (((p, g), m), v) in tensors {
        for (((p, &g), m), v) in p.iter_mut().zip(g).zip(m.iter_mut()).zip(v.iter_mut()) {
            *m = beta1 * *m + (1.0 - beta1) * g;
            *v = beta2 * *v + (1.0 - beta2) * g * g;
            let m_hat = *m / correction1;
            let v_hat = *v / correction2;
            *p -= learning_rate * m_hat / (v_hat.sqrt() + epsilon);
        }
    }
    Ok(())
}

const CHECKPOINT_FORMAT: &str = "listpl-checkpoint";
const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct StoredLayer {
    rows: usize,
    cols: usize,
    weight: Vec<f64>,
    bias: Vec<f64>,
}

/// On-disk model: JSON with a format tag and version, layer dimensions and
/// row-major `f64` arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    format: String,
    version: u32,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub step_count: u64,
    layers: Vec<StoredLayer>,
}

impl Checkpoint {
    pub fn new(params: &ModelParams, seed: u64, step_count: u64) -> Self {
        Checkpoint {
            format: CHECKPOINT_FORMAT.into(),
            version: CHECKPOINT_VERSION,
            dims: params.dims(),
            seed,
            step_count,
            layers: params
                .layers
                .iter()
                .map(|l| StoredLayer {
                    rows: l.output_dim(),
                    cols: l.input_dim(),
                    weight: l.weight.iter().copied().collect(),
                    bias: l.bias.to_vec(),
                })
                .collect(),
        }
    }

    pub fn params(&self) -> Result<ModelParams> {
        if self.format != CHECKPOINT_FORMAT || self.version != CHECKPOINT_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported checkpoint {} v{}",
                self.format, self.version
            )));
        }
        let layers = self
            .layers
            .iter()
            .map(|l| {
                let weight = Array2::from_shape_vec((l.rows, l.cols), l.weight.clone())
                    .map_err(|e| Error::Shape(e.to_string()))?;
                if l.bias.len() != l.rows {
                    return Err(Error::Shape("bias length does not match layer rows".into()));
                }
                Ok(Layer { weight, bias: Array1::from(l.bias.clone()) })
            })
            .collect::<Result<Vec<_>>>()?;
        let params = ModelParams { layers };
        if params.layers.is_empty() || params.dims() != self.dims {
            return Err(Error::Shape(format!("checkpoint dims {:?} inconsistent", self.dims)));
        }
        Ok(params)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        serde_json::to_writer(BufWriter::new(file), self)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_reader(BufReader::new(file))?)
    }
}
