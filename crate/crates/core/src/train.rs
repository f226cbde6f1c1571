//! Training and evaluation harness: epoch loop, metrics log, fold runner and
//! significance report.

use std::collections::HashSet;
use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::letor::{filter_trainable, load_letor, normalize_features, Dataset, MSLR_FEATURE_COUNT, MSLR_MAX_GRADE};
use crate::losses::LossKind;
use crate::metrics::{mean_of_defined, ndcg_at_k, two_tailed_t_test, MetricsRecord, Split, UndefinedNdcg};
use crate::net::{adam_step, backward, forward, AdamConfig, AdamState, Checkpoint, ModelParams};
use crate::rng::{derived, stream};

pub const METRICS_HEADER: [&str; 4] = ["epoch", "split", "ndcg_at_k", "mean_loss"];
pub const REPORT_HEADER: [&str; 6] =
    ["loss_a", "loss_b", "selection", "fold_scores_a", "fold_scores_b", "p_value"];

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub loss: LossKind,
    pub epochs: usize,
    pub adam: AdamConfig,
    pub seed: u64,
    pub hidden_width: usize,
    pub hidden_layers: usize,
    pub eval_k: usize,
    pub psi_scale: f64,
    /// Evaluate every this many epochs; the final epoch is always evaluated.
    pub eval_every: usize,
    /// Permutations ListPL draws per update.
    pub listpl_samples: usize,
    /// Per-query min-max feature scaling on load.
    pub normalize: bool,
    pub feature_count: usize,
    pub max_grade: u32,
    /// Use only the first N training queries.
    pub max_train_queries: Option<usize>,
    pub metrics_path: Option<PathBuf>,
    pub checkpoint_path: Option<PathBuf>,
    pub execution: Execution,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            loss: LossKind::ListPl,
            epochs: 1000,
            adam: AdamConfig::default(),
            seed: 0,
            hidden_width: 80,
            hidden_layers: 2,
            eval_k: 10,
            psi_scale: 1.0,
            eval_every: 1,
            listpl_samples: 1,
            normalize: true,
            feature_count: MSLR_FEATURE_COUNT,
            max_grade: MSLR_MAX_GRADE,
            max_train_queries: None,
            metrics_path: None,
            checkpoint_path: None,
            execution: Execution::default(),
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.epochs == 0 {
            return bad("epochs must be at least 1".into());
        }
        if !(self.adam.learning_rate.is_finite() && self.adam.learning_rate > 0.0) {
            return bad(format!("learning rate must be positive, got {}", self.adam.learning_rate));
        }
        if !(0.0..1.0).contains(&self.adam.beta1) || !(0.0..1.0).contains(&self.adam.beta2) {
            return bad("ADAM betas must lie in [0, 1)".into());
        }
        if !(self.adam.epsilon.is_finite() && self.adam.epsilon > 0.0) {
            return bad("ADAM epsilon must be positive".into());
        }
        if self.eval_k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.eval_every == 0 {
            return bad("eval-every must be at least 1".into());
        }
        if self.hidden_width == 0 {
            return bad("hidden width must be at least 1".into());
        }
        if !(self.psi_scale.is_finite() && self.psi_scale > 0.0) {
            return bad(format!("psi scale must be positive, got {}", self.psi_scale));
        }
        if self.listpl_samples == 0 {
            return bad("ListPL needs at least one sample per update".into());
        }
        Ok(())
    }

    pub fn hidden(&self) -> Vec<usize> {
        vec![self.hidden_width; self.hidden_layers]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DataFiles {
    pub train: PathBuf,
    pub validation: PathBuf,
    pub test: PathBuf,
}

impl DataFiles {
    /// MSLR fold layout: `train.txt`, `vali.txt`, `test.txt`.
    pub fn in_dir(dir: &Path) -> Self {
        DataFiles {
            train: dir.join("train.txt"),
            validation: dir.join("vali.txt"),
            test: dir.join("test.txt"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitData {
    pub train: Dataset,
    pub validation: Dataset,
    pub test: Dataset,
}

impl SplitData {
    pub fn load(files: &DataFiles, config: &TrainConfig) -> Result<Self> {
        let load = |p: &Path| -> Result<Dataset> {
            let ds = load_letor(p, config.feature_count, config.max_grade)?;
            Ok(if config.normalize { normalize_features(&ds) } else { ds })
        };
        let mut train = load(&files.train)?;
        if let Some(limit) = config.max_train_queries {
            train = train.truncated(limit);
        }
        Ok(SplitData { train, validation: load(&files.validation)?, test: load(&files.test)? })
    }

    pub fn split(&self, split: Split) -> &Dataset {
        match split {
            Split::Train => &self.train,
            Split::Validation => &self.validation,
            Split::Test => &self.test,
        }
    }
}

/// Per-epoch, per-split evaluation records in the order they were produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricsLog {
    records: Vec<MetricsRecord>,
    keys: HashSet<(usize, Split)>,
}

impl MetricsLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: MetricsRecord) -> Result<()> {
        if let Some(last) = self.records.last() {
            if record.epoch < last.epoch {
                return Err(Error::InvalidArgument(format!(
                    "epoch {} logged after epoch {}",
                    record.epoch, last.epoch
                )));
            }
        }
        if !self.keys.insert((record.epoch, record.split)) {
            return Err(Error::InvalidArgument(format!(
                "duplicate record for epoch {} split {}",
                record.epoch, record.split
            )));
        }
        self.records.push(record);
        Ok(())
    }

    pub fn records(&self) -> &[MetricsRecord] {
        &self.records
    }

    pub fn get(&self, epoch: usize, split: Split) -> Option<&MetricsRecord> {
        self.records.iter().find(|r| r.epoch == epoch && r.split == split)
    }

    pub fn last_epoch(&self) -> Option<usize> {
        self.records.last().map(|r| r.epoch)
    }

    pub fn series(&self, split: Split) -> impl Iterator<Item = &MetricsRecord> {
        self.records.iter().filter(move |r| r.split == split)
    }

    /// Epoch with the highest validation nDCG; the earliest wins ties.
    pub fn best_validation_epoch(&self) -> Option<usize> {
        self.series(Split::Validation)
            .fold(None::<&MetricsRecord>, |best, r| match best {
                Some(b) if b.ndcg_at_k >= r.ndcg_at_k => Some(b),
                _ => Some(r),
            })
            .map(|r| r.epoch)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        w.write_record(METRICS_HEADER)?;
        for r in &self.records {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut reader = csv::Reader::from_path(path)?;
        let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        if header != METRICS_HEADER {
            return Err(Error::InvalidDataset(format!("{}: unexpected header {header:?}", path.display())));
        }
        let mut log = MetricsLog::new();
        for row in reader.deserialize() {
            log.push(row?)?;
        }
        Ok(log)
    }
}

/// Appends records to a metrics CSV, flushing after every epoch.
struct MetricsSink {
    writer: csv::Writer<File>,
}

impl MetricsSink {
    fn create(path: &Path) -> Result<Self> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(file);
        writer.write_record(METRICS_HEADER)?;
        writer.flush()?;
        Ok(MetricsSink { writer })
    }

    fn write_epoch(&mut self, records: &[MetricsRecord]) -> Result<()> {
        for r in records {
            self.writer.serialize(r)?;
        }
        self.writer.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub log: MetricsLog,
    pub params: ModelParams,
    pub steps: u64,
    /// Training queries skipped for carrying no preference.
    pub skipped_queries: usize,
}

pub fn run_training(config: &TrainConfig, files: &DataFiles) -> Result<TrainOutcome> {
    config.validate()?;
    let data = SplitData::load(files, config)?;
    train_on_data(config, &data)
}

fn split_index(split: Split) -> u64 {
    match split {
        Split::Train => 0,
        Split::Validation => 1,
        Split::Test => 2,
    }
}

fn numerical_failure(err: Error, epoch: usize, query_id: &str) -> Error {
    match err {
        Error::NonFinite { value, .. } => {
            Error::NonFiniteLoss { epoch, query_id: query_id.to_string(), loss: value }
        }
        other => other,
    }
}

/// Mean nDCG@k and mean loss of `params` on one split.
///
/// ListPL's evaluation loss draws its permutations from streams fixed per
/// (split, query), so successive epochs are compared on the same samples.
pub fn evaluate_split(
    params: &ModelParams,
    dataset: &Dataset,
    split: Split,
    epoch: usize,
    config: &TrainConfig,
) -> Result<MetricsRecord> {
    if dataset.is_empty() {
        return Err(Error::InvalidDataset(format!("{split} split has no queries")));
    }
    let per_query = config.execution.map(&dataset.groups, |qi, g| -> Result<(Option<f64>, f64)> {
        let scores = params.score(g.features.view())?;
        let ndcg = ndcg_at_k(&scores, &g.labels, config.eval_k)?;
        let mut rng = derived(config.seed, &[stream::EVAL, split_index(split), qi as u64]);
        let loss = config
            .loss
            .evaluate(&scores, &g.labels, config.psi_scale, config.listpl_samples, &mut rng)
            .map_err(|e| numerical_failure(e, epoch, &g.query_id))?
            .loss;
        if !loss.is_finite() {
            return Err(Error::NonFiniteLoss { epoch, query_id: g.query_id.clone(), loss });
        }
        Ok((ndcg, loss))
    });
    let per_query = per_query.into_iter().collect::<Result<Vec<_>>>()?;
    let mean_loss = per_query.iter().map(|(_, l)| l).sum::<f64>() / per_query.len() as f64;
    let ndcg = mean_of_defined(
        per_query.into_iter().map(|(n, _)| n).collect(),
        UndefinedNdcg::Skip,
    )?;
    Ok(MetricsRecord { epoch, split, ndcg_at_k: ndcg, mean_loss })
}

/// The SGD loop: one ADAM step per training query, queries shuffled each
/// epoch from a stream derived from `(seed, epoch)`.
pub fn train_on_data(config: &TrainConfig, data: &SplitData) -> Result<TrainOutcome> {
    config.validate()?;
    let (trainable, skipped_queries) = filter_trainable(&data.train);
    if trainable.is_empty() {
        return Err(Error::InvalidDataset("no training query has a label preference".into()));
    }
    let mut params =
        ModelParams::init(data.train.feature_count, &config.hidden(), &mut derived(config.seed, &[stream::INIT]))?;
    let mut adam = AdamState::new(config.adam, &params);
    let mut sink = config.metrics_path.as_deref().map(MetricsSink::create).transpose()?;
    let mut log = MetricsLog::new();
    let mut order: Vec<usize> = (0..trainable.len()).collect();

    for epoch in 1..=config.epochs {
        order.sort_unstable();
        order.shuffle(&mut derived(config.seed, &[stream::SHUFFLE, epoch as u64]));
        let mut sample_rng = derived(config.seed, &[stream::SAMPLE, epoch as u64]);
        for &qi in &order {
            let g = &trainable.groups[qi];
            let (scores, trace) = forward(&params, g.features.view())?;
            let result = config
                .loss
                .evaluate(&scores, &g.labels, config.psi_scale, config.listpl_samples, &mut sample_rng)
                .map_err(|e| numerical_failure(e, epoch, &g.query_id))?;
            if !result.loss.is_finite() {
                return Err(Error::NonFiniteLoss { epoch, query_id: g.query_id.clone(), loss: result.loss });
            }
            let grads = backward(&params, &trace, &result.grad)?;
            adam_step(&mut adam, &mut params, &grads)?;
        }

        if epoch % config.eval_every == 0 || epoch == config.epochs {
            let records = Split::ALL
                .iter()
                .map(|&s| evaluate_split(&params, data.split(s), s, epoch, config))
                .collect::<Result<Vec<_>>>()?;
            if let Some(sink) = sink.as_mut() {
                sink.write_epoch(&records)?;
            }
            for r in records {
                log.push(r)?;
            }
        }
    }

    if let Some(path) = &config.checkpoint_path {
        Checkpoint::new(&params, config.seed, adam.step_count).save(path)?;
    }
    Ok(TrainOutcome { log, params, steps: adam.step_count, skipped_queries })
}

/// Which epoch's test score represents a fold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    FinalEpoch,
    BestValidation,
}

impl Selection {
    pub const ALL: [Selection; 2] = [Selection::FinalEpoch, Selection::BestValidation];

    pub fn test_score(self, log: &MetricsLog) -> Option<f64> {
        let epoch = match self {
            Selection::FinalEpoch => log.last_epoch()?,
            Selection::BestValidation => log.best_validation_epoch()?,
        };
        log.get(epoch, Split::Test).map(|r| r.ndcg_at_k)
    }
}

/// Per-fold test nDCG of one loss under one selection rule.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldScores {
    pub loss: LossKind,
    pub selection: Selection,
    pub scores: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub loss_a: LossKind,
    pub loss_b: LossKind,
    pub selection: Selection,
    pub fold_scores_a: String,
    pub fold_scores_b: String,
    pub p_value: f64,
}

fn join_scores(scores: &[f64]) -> String {
    scores.iter().map(f64::to_string).collect::<Vec<_>>().join(";")
}

/// Pairwise paired t-tests between losses, for every selection rule present.
pub fn significance_report(scores: &[FoldScores]) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for selection in Selection::ALL {
        let group: Vec<&FoldScores> = scores.iter().filter(|s| s.selection == selection).collect();
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                rows.push(ReportRow {
                    loss_a: a.loss,
                    loss_b: b.loss,
                    selection,
                    fold_scores_a: join_scores(&a.scores),
                    fold_scores_b: join_scores(&b.scores),
                    p_value: two_tailed_t_test(&a.scores, &b.scores)?,
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_report<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(REPORT_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub folds_dir: PathBuf,
    pub fold_count: usize,
    pub losses: Vec<LossKind>,
    /// Per-run metrics go to `<dir>/fold<i>_<loss>.csv` when set.
    pub metrics_dir: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct CrossValidationOutcome {
    pub fold_scores: Vec<FoldScores>,
    pub report: Vec<ReportRow>,
}

/// Trains every loss on every `Fold<i>` directory and compares the losses'
/// per-fold test nDCG. Runs are independent and may execute concurrently.
pub fn run_cross_validation(base: &TrainConfig, cv: &CrossValidation) -> Result<CrossValidationOutcome> {
    base.validate()?;
    if cv.losses.is_empty() {
        return Err(Error::InvalidArgument("no losses selected".into()));
    }
    if cv.fold_count < 2 {
        return Err(Error::InvalidArgument("cross-validation needs at least two folds".into()));
    }
    let fold_dirs: Vec<PathBuf> = (1..=cv.fold_count).map(|i| cv.folds_dir.join(format!("Fold{i}"))).collect();
    for dir in &fold_dirs {
        if !dir.is_dir() {
            return Err(Error::InvalidDataset(format!("missing fold directory {}", dir.display())));
        }
    }
    if let Some(dir) = &cv.metrics_dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let data = base
        .execution
        .map(&fold_dirs, |_, dir| SplitData::load(&DataFiles::in_dir(dir), base))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let jobs: Vec<(usize, LossKind)> =
        (0..cv.fold_count).flat_map(|f| cv.losses.iter().map(move |&l| (f, l))).collect();
    let logs = base
        .execution
        .map(&jobs, |_, &(fold, loss)| {
            let config = TrainConfig {
                loss,
                metrics_path: cv.metrics_dir.as_ref().map(|d| d.join(format!("fold{}_{loss}.csv", fold + 1))),
                checkpoint_path: None,
                ..base.clone()
            };
            train_on_data(&config, &data[fold]).map(|o| o.log)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut fold_scores = Vec::new();
    for selection in Selection::ALL {
        for &loss in &cv.losses {
            let scores = jobs
                .iter()
                .zip(&logs)
                .filter(|((_, l), _)| *l == loss)
                .map(|(_, log)| {
                    selection
                        .test_score(log)
                        .ok_or_else(|| Error::InvalidDataset("run produced no test records".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            fold_scores.push(FoldScores { loss, selection, scores });
        }
    }
    let report = significance_report(&fold_scores)?;
    Ok(CrossValidationOutcome { fold_scores, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic::{planted_splits, PlantedConfig};

    fn record(epoch: usize, split: Split, ndcg: f64) -> MetricsRecord {
        MetricsRecord { epoch, split, ndcg_at_k: ndcg, mean_loss: 1.0 }
    }

    #[test]
    fn log_rejects_duplicates_and_regressions() {
        let mut log = MetricsLog::new();
        log.push(record(1, Split::Train, 0.5)).unwrap();
        assert!(log.push(record(1, Split::Train, 0.6)).is_err());
        log.push(record(2, Split::Train, 0.6)).unwrap();
        assert!(log.push(record(1, Split::Test, 0.6)).is_err());
    }

    #[test]
    fn selection_rules() {
        let mut log = MetricsLog::new();
        for (e, v, t) in [(1, 0.5, 0.40), (2, 0.7, 0.45), (3, 0.7, 0.50), (4, 0.6, 0.55)] {
            log.push(record(e, Split::Validation, v)).unwrap();
            log.push(record(e, Split::Test, t)).unwrap();
        }
        assert_eq!(log.best_validation_epoch(), Some(2));
        assert_eq!(Selection::BestValidation.test_score(&log), Some(0.45));
        assert_eq!(Selection::FinalEpoch.test_score(&log), Some(0.55));
    }

    #[test]
    fn report_has_one_row_per_pair_and_rule() {
        let mut scores = Vec::new();
        for selection in Selection::ALL {
            for (i, loss) in LossKind::ALL.into_iter().enumerate() {
                let base = [0.40, 0.42, 0.41, 0.43, 0.39];
                let s = base.iter().enumerate().map(|(f, b)| b + 0.01 * (i * f) as f64).collect();
                scores.push(FoldScores { loss, selection, scores: s });
            }
        }
        let rows = significance_report(&scores).unwrap();
        assert_eq!(rows.len(), 6);
        for selection in Selection::ALL {
            assert_eq!(rows.iter().filter(|r| r.selection == selection).count(), 3);
        }
        let mut buf = Vec::new();
        write_report(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("loss_a,loss_b,selection,fold_scores_a,fold_scores_b,p_value\n"));
        assert!(text.contains("listnet,listmle,final_epoch,0.4;0.42;"));
    }

    #[test]
    fn identical_fold_scores_give_p_one() {
        let s = vec![0.4, 0.5, 0.45];
        let rows = significance_report(&[
            FoldScores { loss: LossKind::ListNet, selection: Selection::FinalEpoch, scores: s.clone() },
            FoldScores { loss: LossKind::ListPl, selection: Selection::FinalEpoch, scores: s },
        ])
        .unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].p_value, 1.0);
    }

    #[test]
    fn config_validation() {
        assert!(TrainConfig::default().validate().is_ok());
        for bad in [
            TrainConfig { epochs: 0, ..Default::default() },
            TrainConfig { eval_k: 0, ..Default::default() },
            TrainConfig { eval_every: 0, ..Default::default() },
            TrainConfig { psi_scale: -1.0, ..Default::default() },
            TrainConfig { adam: AdamConfig { learning_rate: 0.0, ..AdamConfig::default() }, ..Default::default() },
        ] {
            assert!(matches!(bad.validate(), Err(Error::InvalidArgument(_))));
        }
    }

    fn small_data() -> SplitData {
        planted_splits(&PlantedConfig {
            train_queries: 6,
            validation_queries: 3,
            test_queries: 3,
            docs_per_query: 5,
            feature_count: 3,
            seed: 5,
        })
        .unwrap()
    }

    #[test]
    fn eval_stride_always_records_final_epoch() {
        let config = TrainConfig {
            epochs: 5,
            eval_every: 2,
            hidden_width: 4,
            feature_count: 3,
            adam: AdamConfig { learning_rate: 1e-3, ..AdamConfig::default() },
            ..Default::default()
        };
        let out = train_on_data(&config, &small_data()).unwrap();
        let epochs: Vec<usize> = out.log.series(Split::Train).map(|r| r.epoch).collect();
        assert_eq!(epochs, vec![2, 4, 5]);
        assert_eq!(out.steps, 5 * (6 - out.skipped_queries) as u64);
    }

    #[test]
    fn single_epoch_logs_three_splits() {
        let config = TrainConfig { epochs: 1, hidden_width: 4, feature_count: 3, ..Default::default() };
        let out = train_on_data(&config, &small_data()).unwrap();
        let keys: Vec<_> = out.log.records().iter().map(|r| (r.epoch, r.split)).collect();
        assert_eq!(keys, vec![(1, Split::Train), (1, Split::Validation), (1, Split::Test)]);
    }

    #[test]
    fn metrics_csv_round_trips_with_one_header() {
        let config = TrainConfig { epochs: 2, hidden_width: 4, feature_count: 3, ..Default::default() };
        let out = train_on_data(&config, &small_data()).unwrap();
        let mut bytes = Vec::new();
        out.log.write_csv(&mut bytes).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert_eq!(text.matches("epoch,split").count(), 1);
        assert_eq!(text.lines().count(), 7);
        let file = tempfile::NamedTempFile::new().unwrap();
        fs::write(file.path(), &text).unwrap();
        assert_eq!(MetricsLog::read_csv(file.path()).unwrap(), out.log);
    }

    #[test]
    fn divergence_is_reported_as_numerical_failure() {
        let config = TrainConfig {
            epochs: 2,
            hidden_width: 4,
            feature_count: 3,
            adam: AdamConfig { learning_rate: 1e300, ..AdamConfig::default() },
            ..Default::default()
        };
        let err = train_on_data(&config, &small_data()).unwrap_err();
        assert!(matches!(err, Error::NonFiniteLoss { .. }), "{err}");
        assert_eq!(err.exit_code(), 3);
    }
}
