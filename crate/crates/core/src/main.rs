use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use listpl::error::{Error, Result};
use listpl::exec::Execution;
use listpl::losses::LossKind;
use listpl::net::AdamConfig;
use listpl::synthetic::{planted_folds, planted_splits, write_splits, PlantedConfig};
use listpl::train::{
    run_cross_validation, run_training, write_report, CrossValidation, DataFiles, TrainConfig,
};

#[derive(Parser)]
#[command(name = "listpl", version, about = "List-wise learning to rank: ListNet, ListMLE and ListPL")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train one loss and write per-epoch nDCG/loss for train, validation and test.
    Train {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        vali: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long, default_value = "listpl")]
        loss: LossKind,
        /// Metrics CSV (epoch,split,ndcg_at_k,mean_loss).
        #[arg(long)]
        out: PathBuf,
        /// Model checkpoint; defaults to the metrics path with a `.model.json` extension.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[command(flatten)]
        opts: TrainArgs,
    },
    /// Train every loss on Fold1..FoldN and report paired t-tests between them.
    Crossval {
        #[arg(long)]
        folds: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "listnet,listmle,listpl")]
        losses: Vec<LossKind>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 5)]
        fold_count: usize,
        /// Directory for per-fold, per-loss metrics CSVs.
        #[arg(long)]
        metrics_dir: Option<PathBuf>,
        #[command(flatten)]
        opts: TrainArgs,
    },
    /// Write a planted-model dataset in LETOR format.
    Synth {
        #[arg(long)]
        out_dir: PathBuf,
        /// Write Fold1..FoldN subdirectories with independent draws instead of one split.
        #[arg(long)]
        folds: Option<usize>,
        #[arg(long, default_value_t = 50)]
        train_queries: usize,
        #[arg(long, default_value_t = 20)]
        vali_queries: usize,
        #[arg(long, default_value_t = 20)]
        test_queries: usize,
        #[arg(long, default_value_t = 10)]
        docs: usize,
        #[arg(long, default_value_t = 5)]
        features: usize,
        #[arg(long, default_value_t = 2017)]
        seed: u64,
    },
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long, default_value_t = 1000)]
    epochs: usize,
    #[arg(long, default_value_t = 1e-5)]
    lr: f64,
    #[arg(long, default_value_t = 0.9)]
    beta1: f64,
    #[arg(long, default_value_t = 0.999)]
    beta2: f64,
    #[arg(long, default_value_t = 1e-8)]
    adam_eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Units per hidden layer.
    #[arg(long, default_value_t = 80)]
    hidden: usize,
    #[arg(long, default_value_t = 2)]
    hidden_layers: usize,
    /// Cutoff for nDCG@k.
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    psi_scale: f64,
    #[arg(long, default_value_t = 1)]
    eval_every: usize,
    #[arg(long, default_value_t = 1)]
    listpl_samples: usize,
    #[arg(long, default_value_t = 136)]
    features: usize,
    #[arg(long, default_value_t = 4)]
    max_grade: u32,
    #[arg(long)]
    max_train_queries: Option<usize>,
    /// Skip per-query min-max feature scaling.
    #[arg(long)]
    no_normalize: bool,
    /// Evaluate queries on one thread.
    #[arg(long)]
    sequential: bool,
}

impl TrainArgs {
    fn config(&self, loss: LossKind) -> TrainConfig {
        TrainConfig {
            loss,
            epochs: self.epochs,
            adam: AdamConfig {
                learning_rate: self.lr,
                beta1: self.beta1,
                beta2: self.beta2,
                epsilon: self.adam_eps,
            },
            seed: self.seed,
            hidden_width: self.hidden,
            hidden_layers: self.hidden_layers,
            eval_k: self.k,
            psi_scale: self.psi_scale,
            eval_every: self.eval_every,
            listpl_samples: self.listpl_samples,
            normalize: !self.no_normalize,
            feature_count: self.features,
            max_grade: self.max_grade,
            max_train_queries: self.max_train_queries,
            metrics_path: None,
            checkpoint_path: None,
            execution: if self.sequential { Execution::Sequential } else { Execution::default() },
        }
    }
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::Io { path: path.clone(), source: e })
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Train { train, vali, test, loss, out, checkpoint, opts } => {
            let config = TrainConfig {
                checkpoint_path: Some(checkpoint.unwrap_or_else(|| out.with_extension("model.json"))),
                metrics_path: Some(out),
                ..opts.config(loss)
            };
            let files = DataFiles { train, validation: vali, test };
            let outcome = run_training(&config, &files)?;
            if let Some(last) = outcome.log.records().last() {
                eprintln!(
                    "{loss}: {} steps, final {} nDCG@{} = {:.4} ({} training queries skipped)",
                    outcome.steps, last.split, config.eval_k, last.ndcg_at_k, outcome.skipped_queries
                );
            }
        }
        Command::Crossval { folds, losses, out, fold_count, metrics_dir, opts } => {
            let base = opts.config(LossKind::ListPl);
            let cv = CrossValidation { folds_dir: folds, fold_count, losses, metrics_dir };
            let outcome = run_cross_validation(&base, &cv)?;
            write_report(&outcome.report, create(&out)?)?;
            for row in &outcome.report {
                eprintln!("{} vs {} ({:?}): p = {:.5}", row.loss_a, row.loss_b, row.selection, row.p_value);
            }
        }
        Command::Synth { out_dir, folds, train_queries, vali_queries, test_queries, docs, features, seed } => {
            let planted = |seed| PlantedConfig {
                train_queries,
                validation_queries: vali_queries,
                test_queries,
                docs_per_query: docs,
                feature_count: features,
                seed,
            };
            match folds {
                None => write_splits(&planted_splits(&planted(seed))?, &out_dir)?,
                Some(n) => {
                    for (i, data) in planted_folds(&planted(seed), n)?.iter().enumerate() {
                        write_splits(data, &out_dir.join(format!("Fold{}", i + 1)))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
