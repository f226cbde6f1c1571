use ndarray::array;

use listpl::letor::{Dataset, QueryGroup};
use listpl::losses::LossKind;
use listpl::metrics::Split;
use listpl::synthetic::{planted_splits, PlantedConfig};
use listpl::train::{train_on_data, SplitData, TrainConfig};

fn planted() -> SplitData {
    let data = planted_splits(&PlantedConfig::default()).unwrap();
    SplitData {
        train: listpl::normalize_features(&data.train),
        validation: listpl::normalize_features(&data.validation),
        test: listpl::normalize_features(&data.test),
    }
}

#[test]
fn smoothed_training_loss_does_not_increase() {
    let data = planted();
    for loss in LossKind::ALL {
        let config = TrainConfig { loss, epochs: 200, seed: 3, feature_count: 5, ..TrainConfig::default() };
        let out = train_on_data(&config, &data).unwrap();
        let losses: Vec<f64> = out.log.series(Split::Train).map(|r| r.mean_loss).collect();
        assert_eq!(losses.len(), 200);
        let windows: Vec<f64> = losses.chunks(10).map(|w| w.iter().sum::<f64>() / w.len() as f64).collect();
        for pair in windows.windows(2) {
            assert!(pair[1] <= pair[0], "{loss}: window means {windows:?}");
        }
        assert!(windows.last().unwrap() < &windows[0], "{loss}");
    }
}

#[test]
fn overfits_a_single_query() {
    let features = array![
        [0.9, 0.1, 0.3],
        [0.2, 0.8, 0.5],
        [0.5, 0.5, 0.9],
        [0.1, 0.3, 0.2],
        [0.7, 0.6, 0.1]
    ];
    let group = QueryGroup::new("q1", features, vec![4, 1, 3, 0, 2]).unwrap();
    let ds = Dataset::new(vec![group], 3, 4).unwrap();
    let data = SplitData { train: ds.clone(), validation: ds.clone(), test: ds };
    let config = TrainConfig {
        loss: LossKind::ListMle,
        epochs: 2000,
        eval_k: 5,
        eval_every: 100,
        feature_count: 3,
        normalize: false,
        ..TrainConfig::default()
    };
    let out = train_on_data(&config, &data).unwrap();
    assert_eq!(out.steps, 2000);
    assert_eq!(out.log.get(2000, Split::Train).unwrap().ndcg_at_k, 1.0);
}

#[test]
fn fixed_seed_reproduces_parameters() {
    let data = planted();
    let config = TrainConfig { loss: LossKind::ListPl, epochs: 20, seed: 11, feature_count: 5, ..TrainConfig::default() };
    let a = train_on_data(&config, &data).unwrap();
    let b = train_on_data(&config, &data).unwrap();
    assert_eq!(a.params, b.params);
    assert_eq!(a.log, b.log);
    let c = train_on_data(&TrainConfig { seed: 12, ..config }, &data).unwrap();
    assert_ne!(a.params, c.params);
}
