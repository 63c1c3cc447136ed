//! Builds estimators by kind with shared compression settings.

use std::sync::Arc;

use crate::compression::{
    CalibrationCache, CalibrationFlavor, CompressionInfo, Compressor, CompressorOracle, Gzip,
    OracleNormalized, SerializationMode, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use crate::error::Result;
use crate::estimators::{
    EnsembleMin, Estimator, EstimatorKind, MaxInfo, MinInfo, ModifiedShannon, ShannonClassic,
};

/// Members of the `ensemble` estimator, in tie-breaking order.
pub const ENSEMBLE_MEMBERS: [EstimatorKind; 3] = [
    EstimatorKind::ModifiedShannon,
    EstimatorKind::Compression,
    EstimatorKind::OracleNormalized,
];

#[derive(Clone)]
pub struct EstimatorConfig {
    pub compressor: Arc<dyn Compressor>,
    pub mode: SerializationMode,
    pub seed: u64,
    pub samples: usize,
    pub flavor: CalibrationFlavor,
    pub cache: Arc<CalibrationCache>,
}

impl EstimatorConfig {
    /// Pinned gzip backend, default seed and sample count.
    pub fn new(mode: SerializationMode, cache: Arc<CalibrationCache>) -> Self {
        EstimatorConfig {
            compressor: Arc::new(Gzip::best()),
            mode,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            flavor: CalibrationFlavor::Bits,
            cache,
        }
    }

    pub fn in_memory(mode: SerializationMode) -> Self {
        EstimatorConfig::new(mode, Arc::new(CalibrationCache::in_memory()))
    }

    pub fn compression(&self) -> CompressionInfo {
        CompressionInfo {
            compressor: self.compressor.clone(),
            mode: self.mode,
            seed: self.seed,
            samples: self.samples,
            flavor: self.flavor,
            cache: self.cache.clone(),
        }
    }

    pub fn oracle(&self) -> CompressorOracle {
        CompressorOracle {
            compressor: self.compressor.clone(),
            mode: self.mode,
        }
    }

    pub fn build(&self, kind: EstimatorKind) -> Box<dyn Estimator> {
        match kind {
            EstimatorKind::Min => Box::new(MinInfo),
            EstimatorKind::Max => Box::new(MaxInfo),
            EstimatorKind::ShannonClassic => Box::new(ShannonClassic),
            EstimatorKind::ModifiedShannon => Box::new(ModifiedShannon),
            EstimatorKind::Compression => Box::new(self.compression()),
            EstimatorKind::OracleNormalized => Box::new(OracleNormalized::new(self.oracle())),
            EstimatorKind::EnsembleMin => Box::new(self.ensemble()),
        }
    }

    pub fn ensemble(&self) -> EnsembleMin {
        EnsembleMin::new(ENSEMBLE_MEMBERS.iter().map(|&k| self.build(k)).collect())
            .expect("ensemble has members")
    }

    /// Cache key of the calibration used for a pattern of length `n` over `k`.
    pub fn calibration_key(&self, n: usize, k: usize) -> String {
        crate::compression::calibration_key(
            n,
            k,
            self.mode,
            self.compressor.id(),
            self.seed,
            self.flavor,
        )
    }

    pub fn save_cache(&self) -> Result<()> {
        self.cache.save()
    }
}
