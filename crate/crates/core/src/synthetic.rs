//! Planted-model ranking data: uniform features, graded by quantizing a
//! hidden linear scorer.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use ndarray::Array2;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::letor::{write_letor, Dataset, QueryGroup, MSLR_MAX_GRADE};
use crate::rng::{derive_seed, derived};
use crate::train::SplitData;

/// Standardized-score cut points between consecutive grades 0..=4.
const GRADE_THRESHOLDS: [f64; 4] = [-0.25, 0.5, 1.0, 1.5];

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedConfig {
    pub train_queries: usize,
    pub validation_queries: usize,
    pub test_queries: usize,
    pub docs_per_query: usize,
    pub feature_count: usize,
    pub seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            train_queries: 50,
            validation_queries: 20,
            test_queries: 20,
            docs_per_query: 10,
            feature_count: 5,
            seed: 2017,
        }
    }
}

pub struct PlantedModel {
    pub weights: Vec<f64>,
}

impl PlantedModel {
    pub fn new(feature_count: usize, seed: u64) -> Self {
        let mut rng = derived(seed, &[0]);
        PlantedModel { weights: (0..feature_count).map(|_| rng.sample(StandardNormal)).collect() }
    }

    pub fn score(&self, row: &[f64]) -> f64 {
        row.iter().zip(&self.weights).map(|(x, w)| x * w).sum()
    }

    /// Grade of a feature row drawn uniformly from the unit cube.
    pub fn grade(&self, row: &[f64]) -> u32 {
        let mean = self.weights.iter().sum::<f64>() / 2.0;
        let sd = (self.weights.iter().map(|w| w * w).sum::<f64>() / 12.0).sqrt();
        let z = (self.score(row) - mean) / sd;
        GRADE_THRESHOLDS.iter().filter(|&&t| z > t).count() as u32
    }

    fn split(&self, prefix: &str, queries: usize, docs: usize, seed: u64, tag: u64) -> Result<Dataset> {
        let d = self.weights.len();
        let mut rng = derived(seed, &[1, tag]);
        let groups = (0..queries)
            .map(|q| {
                let features = Array2::from_shape_simple_fn((docs, d), || rng.random::<f64>());
                let labels = features
                    .outer_iter()
                    .map(|row| self.grade(row.as_slice().expect("row-major")))
                    .collect();
                QueryGroup::new(format!("{prefix}{q}"), features, labels)
            })
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(groups, d, MSLR_MAX_GRADE)
    }
}

pub fn planted_splits(config: &PlantedConfig) -> Result<SplitData> {
    planted_fold(config, 0)
}

/// `count` folds drawn from one planted model, each with fresh documents.
pub fn planted_folds(config: &PlantedConfig, count: usize) -> Result<Vec<SplitData>> {
    (1..=count as u64).map(|fold| planted_fold(config, fold)).collect()
}

fn planted_fold(config: &PlantedConfig, fold: u64) -> Result<SplitData> {
    if config.feature_count == 0 || config.docs_per_query == 0 {
        return Err(Error::InvalidArgument("planted data needs features and documents".into()));
    }
    let model = PlantedModel::new(config.feature_count, config.seed);
    let docs = config.docs_per_query;
    let data_seed = derive_seed(config.seed, &[fold]);
    Ok(SplitData {
        train: model.split("tr", config.train_queries, docs, data_seed, 1)?,
        validation: model.split("va", config.validation_queries, docs, data_seed, 2)?,
        test: model.split("te", config.test_queries, docs, data_seed, 3)?,
    })
}

/// Writes `train.txt`, `vali.txt` and `test.txt` under `dir`.
pub fn write_splits(data: &SplitData, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (name, ds) in [("train.txt", &data.train), ("vali.txt", &data.validation), ("test.txt", &data.test)] {
        let path = dir.join(name);
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        write_letor(ds, BufWriter::new(file))?;
    }
    Ok(())
}
