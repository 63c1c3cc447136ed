//! Compressor round trips and ensemble behaviour over seeded corpora.

use std::sync::Arc;

use patinfo::analysis::EstimatorConfig;
use patinfo::compression::{CalibrationCache, Compressor, Gzip, SerializationMode};
use patinfo::estimators::{
    ensemble_min_info, max_info_of, min_info, MaxInfo, MinInfo, ModifiedShannon,
};
use patinfo::properties::{mixed_corpus, CorpusSpec};
use patinfo::Estimator;

#[test]
fn gzip_round_trips_seeded_corpus() {
    let gz = Gzip::best();
    let corpus = mixed_corpus(&CorpusSpec::new(1000, 42)).unwrap();
    for mode in [SerializationMode::Utf8, SerializationMode::U32Le] {
        for p in &corpus.patterns {
            let bytes = mode.serialize(p).unwrap();
            assert_eq!(gz.decompress(&gz.compress(&bytes).unwrap()).unwrap(), bytes);
        }
    }
}

#[test]
fn ensemble_is_the_minimum_and_first_wins_ties() {
    let corpus = mixed_corpus(&CorpusSpec::new(200, 5)).unwrap();
    let config = EstimatorConfig::in_memory(SerializationMode::Utf8);
    let ensemble = config.ensemble();
    let members = [
        config.build(patinfo::EstimatorKind::ModifiedShannon),
        config.build(patinfo::EstimatorKind::Compression),
        config.build(patinfo::EstimatorKind::OracleNormalized),
    ];
    for p in &corpus.patterns {
        let (v, winner) = ensemble.evaluate(p).unwrap();
        let values: Vec<f64> = members
            .iter()
            .map(|m| m.estimate(p).unwrap().clamped.bits())
            .collect();
        let least = values.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(v.bits(), least);
        let first = values.iter().position(|&x| x == least).unwrap();
        assert_eq!(winner, members[first].name());
        assert!(v.bits() >= min_info(p).bits() && v.bits() <= max_info_of(p).unwrap().bits());
    }
    let p = &corpus.patterns[0];
    let lo = min_info(p);
    assert_eq!(
        ensemble_min_info(p, &[&MinInfo, &MaxInfo, &MinInfo]).unwrap(),
        (lo, 0)
    );
    let (_, idx) = ensemble_min_info(p, &[&ModifiedShannon, &MinInfo]).unwrap();
    assert_eq!(
        idx,
        if ModifiedShannon.estimate(p).unwrap().clamped == lo {
            0
        } else {
            1
        }
    );
}

#[test]
fn cached_calibration_reproduces_estimates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cal.json");
    let corpus = mixed_corpus(&CorpusSpec::new(50, 8)).unwrap();
    let estimate = |cache: CalibrationCache| {
        let config = EstimatorConfig::new(SerializationMode::Utf8, Arc::new(cache));
        let values: Vec<f64> = corpus
            .patterns
            .iter()
            .map(|p| config.compression().estimate(p).unwrap().clamped.bits())
            .collect();
        config.save_cache().unwrap();
        values
    };
    let first = estimate(CalibrationCache::open(&path).unwrap());
    let reopened = CalibrationCache::open(&path).unwrap();
    assert!(!reopened.is_empty());
    assert_eq!(estimate(reopened), first);
}
