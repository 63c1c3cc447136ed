//! Compression-based information estimates.
//!
//! Two estimators live here:
//!
//! * [`compression_info`] maps a pattern's compressed size affinely from the
//!   `[constant reference, random reference]` compressed sizes of the same
//!   length and alphabet onto `[min_info, max_info]`.
//! * [`oracle_normalized_info`] subtracts the complexity of the constant
//!   pattern of the same length and adds back `min_info`, removing the
//!   machine-dependent constant of a complexity oracle.
//!
//! The oracle defaults to the compressed size under the pinned gzip backend.
//!
//! A calibration measures its references either by compressed size in bits
//! ([`CalibrationFlavor::Bits`], the default) or by the modified Shannon
//! information of the compressed bytes ([`CalibrationFlavor::Mark`]).

mod cache;
mod gzip;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

pub use cache::{CachedBounds, CalibrationCache};
pub use gzip::Gzip;

use crate::error::{Error, Result};
use crate::estimators::{max_info, min_info, modified_shannon_info, Estimate, Estimator};
use crate::pattern::{canonical_char, Alphabet, InfoBits, Pattern, Symbol, Tokenization};

/// Default number of random references whose median anchors the upper end.
pub const DEFAULT_SAMPLES: usize = 11;

/// Default calibration seed.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// A deterministic lossless compressor.
pub trait Compressor: Send + Sync {
    /// Short identifier, part of calibration keys.
    fn id(&self) -> &str;

    /// Human readable backend description including version and settings.
    fn describe(&self) -> String;

    fn compress(&self, data: &[u8]) -> Result<Vec<u8>>;

    fn decompress(&self, data: &[u8]) -> Result<Vec<u8>>;
}

/// How a pattern is turned into bytes before compression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SerializationMode {
    /// Symbols are bytes and are written as-is.
    #[serde(rename = "byte")]
    ByteIdentity,
    /// Symbols are characters, UTF-8 encoded.
    #[serde(rename = "utf8")]
    Utf8,
    /// Any symbols, re-indexed densely by first occurrence, 4 bytes LE each.
    #[serde(rename = "u32le")]
    U32Le,
}

impl SerializationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SerializationMode::ByteIdentity => "byte",
            SerializationMode::Utf8 => "utf8",
            SerializationMode::U32Le => "u32le",
        }
    }

    pub fn for_tokenization(t: Tokenization) -> Self {
        match t {
            Tokenization::Byte => SerializationMode::ByteIdentity,
            Tokenization::Char => SerializationMode::Utf8,
            Tokenization::Line | Tokenization::Token => SerializationMode::U32Le,
        }
    }

    pub fn serialize(self, p: &Pattern) -> Result<Vec<u8>> {
        match self {
            SerializationMode::ByteIdentity => p
                .symbols()
                .iter()
                .map(|s| match s {
                    Symbol::Byte(b) => Ok(*b),
                    other => Err(self.unserializable(other)),
                })
                .collect(),
            SerializationMode::Utf8 => {
                let mut out = String::with_capacity(p.len());
                for s in p.symbols() {
                    match s {
                        Symbol::Char(c) => out.push(*c),
                        other => return Err(self.unserializable(other)),
                    }
                }
                Ok(out.into_bytes())
            }
            SerializationMode::U32Le => {
                let mut index = std::collections::HashMap::new();
                let mut out = Vec::with_capacity(p.len() * 4);
                for s in p.symbols() {
                    let next = index.len() as u32;
                    let i = *index.entry(s).or_insert(next);
                    out.extend_from_slice(&i.to_le_bytes());
                }
                Ok(out)
            }
        }
    }

    /// The `i`-th symbol of the reference alphabet used for calibration.
    pub fn reference_symbol(self, i: usize) -> Result<Symbol> {
        match self {
            SerializationMode::ByteIdentity => {
                u8::try_from(i)
                    .map(Symbol::Byte)
                    .map_err(|_| Error::Unserializable {
                        symbol: format!("reference #{i}"),
                        mode: self.as_str(),
                    })
            }
            SerializationMode::Utf8 => Ok(Symbol::Char(canonical_char(i))),
            SerializationMode::U32Le => Ok(Symbol::Text(Arc::from(i.to_string()))),
        }
    }

    fn unserializable(self, s: &Symbol) -> Error {
        Error::Unserializable {
            symbol: s.to_string(),
            mode: self.as_str(),
        }
    }
}

impl fmt::Display for SerializationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SerializationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "byte" => Ok(SerializationMode::ByteIdentity),
            "utf8" => Ok(SerializationMode::Utf8),
            "u32le" => Ok(SerializationMode::U32Le),
            other => Err(format!("unknown serialization mode `{other}`")),
        }
    }
}

/// What the calibration and the pattern are measured by.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CalibrationFlavor {
    /// Compressed size in bits.
    #[default]
    Bits,
    /// Modified Shannon information of the compressed bytes.
    Mark,
}

impl CalibrationFlavor {
    pub fn as_str(self) -> &'static str {
        match self {
            CalibrationFlavor::Bits => "bits",
            CalibrationFlavor::Mark => "mark",
        }
    }

    pub fn measure(self, p: &Pattern, c: &dyn Compressor, mode: SerializationMode) -> Result<f64> {
        match self {
            CalibrationFlavor::Bits => Ok(compressed_bits(p, c, mode)?.bits()),
            CalibrationFlavor::Mark => {
                let packed = c.compress(&mode.serialize(p)?)?;
                Ok(modified_shannon_info(&Pattern::from_bytes(&packed)).bits())
            }
        }
    }
}

impl fmt::Display for CalibrationFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CalibrationFlavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bits" => Ok(CalibrationFlavor::Bits),
            "mark" => Ok(CalibrationFlavor::Mark),
            other => Err(format!("unknown calibration flavor `{other}`")),
        }
    }
}

/// `8 ×` the compressed length of `p` serialized under `mode`.
pub fn compressed_bits(
    p: &Pattern,
    c: &dyn Compressor,
    mode: SerializationMode,
) -> Result<InfoBits> {
    let bytes = mode.serialize(p)?;
    let out = c.compress(&bytes)?;
    Ok(InfoBits::new(out.len() as f64 * 8.0))
}

/// Reference bounds for the affine normalization of one `(n, k, mode,
/// compressor, seed)` combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionCalibration {
    pub n: usize,
    pub k: usize,
    pub mode: SerializationMode,
    pub compressor: String,
    pub low_bits: InfoBits,
    pub high_bits: InfoBits,
    pub samples: usize,
    pub seed: u64,
    #[serde(default)]
    pub flavor: CalibrationFlavor,
}

impl CompressionCalibration {
    pub fn key(&self) -> String {
        calibration_key(
            self.n,
            self.k,
            self.mode,
            &self.compressor,
            self.seed,
            self.flavor,
        )
    }
}

/// Cache key `n:k:mode:compressor:seed`, with `:mark` appended for the
/// [`CalibrationFlavor::Mark`] flavor.
pub fn calibration_key(
    n: usize,
    k: usize,
    mode: SerializationMode,
    compressor: &str,
    seed: u64,
    flavor: CalibrationFlavor,
) -> String {
    let base = format!("{n}:{k}:{}:{compressor}:{seed}", mode.as_str());
    match flavor {
        CalibrationFlavor::Bits => base,
        CalibrationFlavor::Mark => base + ":mark",
    }
}

/// The constant reference and the seeded random references of a calibration.
///
/// All references are declared over the same `k`-symbol reference alphabet.
pub fn reference_patterns(
    n: usize,
    k: usize,
    mode: SerializationMode,
    seed: u64,
    samples: usize,
) -> Result<(Pattern, Vec<Pattern>)> {
    if k == 0 {
        if n > 0 {
            return Err(Error::DegenerateAlphabet { n });
        }
        let empty = Pattern::with_alphabet(vec![], Alphabet::default())?;
        return Ok((empty.clone(), vec![empty; samples]));
    }
    let symbols: Vec<Symbol> = (0..k)
        .map(|i| mode.reference_symbol(i))
        .collect::<Result<_>>()?;
    let alphabet = Alphabet::new(symbols.iter().cloned());
    let constant = Pattern::with_alphabet(vec![symbols[0].clone(); n], alphabet.clone())?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let random = (0..samples)
        .map(|_| {
            let seq = (0..n)
                .map(|_| symbols[rng.random_range(0..k)].clone())
                .collect();
            Pattern::with_alphabet(seq, alphabet.clone())
        })
        .collect::<Result<_>>()?;
    Ok((constant, random))
}

/// Measures the constant reference and the (upper) median of `samples`
/// random references.
pub fn calibrate(
    n: usize,
    k: usize,
    c: &dyn Compressor,
    mode: SerializationMode,
    seed: u64,
    samples: usize,
    flavor: CalibrationFlavor,
) -> Result<CompressionCalibration> {
    if samples == 0 {
        return Err(Error::InvalidSpec(
            "calibration needs at least one random sample".into(),
        ));
    }
    let (constant, random) = reference_patterns(n, k, mode, seed, samples)?;
    let low = flavor.measure(&constant, c, mode)?;
    let mut highs = random
        .iter()
        .map(|r| flavor.measure(r, c, mode))
        .collect::<Result<Vec<_>>>()?;
    highs.sort_by(f64::total_cmp);
    let high = highs[highs.len() / 2];
    Ok(CompressionCalibration {
        n,
        k,
        mode,
        compressor: c.id().to_string(),
        low_bits: InfoBits::new(low),
        high_bits: InfoBits::new(high.max(low)),
        samples,
        seed,
        flavor,
    })
}

fn check_calibration(p: &Pattern, cal: &CompressionCalibration, c: &dyn Compressor) -> Result<()> {
    if cal.n != p.len() || cal.k != p.k() || cal.compressor != c.id() {
        return Err(Error::CalibrationMismatch {
            calibration: cal.key(),
            n: p.len(),
            k: p.k(),
            mode: cal.mode.as_str(),
            compressor: c.id().to_string(),
        });
    }
    Ok(())
}

/// Affine image of `compressed_bits(p)` before clamping.
pub fn compression_info_raw(
    p: &Pattern,
    cal: &CompressionCalibration,
    c: &dyn Compressor,
) -> Result<f64> {
    check_calibration(p, cal, c)?;
    let lo = min_info(p).bits();
    let hi = max_info(p.len() as u64, p.k() as u64)?.bits();
    let (low, high) = (cal.low_bits.bits(), cal.high_bits.bits());
    if high - low <= 1e-9 {
        return Ok((lo + hi) / 2.0);
    }
    let bits = cal.flavor.measure(p, c, cal.mode)?;
    Ok(lo + (bits - low) / (high - low) * (hi - lo))
}

/// Compression-calibrated information, clamped into `[min_info, max_info]`.
pub fn compression_info(
    p: &Pattern,
    cal: &CompressionCalibration,
    c: &dyn Compressor,
) -> Result<InfoBits> {
    let raw = compression_info_raw(p, cal, c)?;
    Ok(Estimate::from_raw(p, raw)?.clamped)
}

/// Something that assigns a description length in bits to any pattern.
pub trait ComplexityOracle: Send + Sync {
    fn complexity_bits(&self, p: &Pattern) -> Result<f64>;
}

/// Compressed size under a fixed compressor and serialization.
#[derive(Clone)]
pub struct CompressorOracle {
    pub compressor: Arc<dyn Compressor>,
    pub mode: SerializationMode,
}

impl CompressorOracle {
    pub fn gzip(mode: SerializationMode) -> Self {
        CompressorOracle {
            compressor: Arc::new(Gzip::best()),
            mode,
        }
    }
}

impl ComplexityOracle for CompressorOracle {
    fn complexity_bits(&self, p: &Pattern) -> Result<f64> {
        Ok(compressed_bits(p, self.compressor.as_ref(), self.mode)?.bits())
    }
}

impl<F> ComplexityOracle for F
where
    F: Fn(&Pattern) -> Result<f64> + Send + Sync,
{
    fn complexity_bits(&self, p: &Pattern) -> Result<f64> {
        self(p)
    }
}

/// `oracle(p) - oracle(constant of length n) + min_info(p)`, floored at 0.
///
/// The constant pattern repeats the first symbol of `p`.
pub fn oracle_normalized_info(p: &Pattern, oracle: &dyn ComplexityOracle) -> Result<InfoBits> {
    let Some(first) = p.symbols().first() else {
        return Ok(InfoBits::ZERO);
    };
    let constant = Pattern::with_alphabet(vec![first.clone(); p.len()], p.alphabet().clone())?;
    let raw = oracle.complexity_bits(p)? - oracle.complexity_bits(&constant)? + min_info(p).bits();
    Ok(InfoBits::new(raw.max(0.0)))
}

/// The calibrated compression estimator (`gzip`).
#[derive(Clone)]
pub struct CompressionInfo {
    pub compressor: Arc<dyn Compressor>,
    pub mode: SerializationMode,
    pub seed: u64,
    pub samples: usize,
    pub flavor: CalibrationFlavor,
    pub cache: Arc<CalibrationCache>,
}

impl CompressionInfo {
    pub fn new(mode: SerializationMode, cache: Arc<CalibrationCache>) -> Self {
        CompressionInfo {
            compressor: Arc::new(Gzip::best()),
            mode,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            flavor: CalibrationFlavor::Bits,
            cache,
        }
    }

    pub fn calibration_for(&self, n: usize, k: usize) -> Result<CompressionCalibration> {
        self.cache.get_or_calibrate(
            n,
            k,
            self.compressor.as_ref(),
            self.mode,
            self.seed,
            self.samples,
            self.flavor,
        )
    }
}

impl Estimator for CompressionInfo {
    fn name(&self) -> &str {
        "gzip"
    }

    fn raw_bits(&self, p: &Pattern) -> Result<f64> {
        let cal = self.calibration_for(p.len(), p.k())?;
        compression_info_raw(p, &cal, self.compressor.as_ref())
    }
}

/// The oracle-normalized estimator (`kolmogorov`).
pub struct OracleNormalized {
    oracle: Box<dyn ComplexityOracle>,
}

impl OracleNormalized {
    pub fn new(oracle: impl ComplexityOracle + 'static) -> Self {
        OracleNormalized {
            oracle: Box::new(oracle),
        }
    }
}

impl Estimator for OracleNormalized {
    fn name(&self) -> &str {
        "kolmogorov"
    }

    fn raw_bits(&self, p: &Pattern) -> Result<f64> {
        Ok(oracle_normalized_info(p, self.oracle.as_ref())?.bits())
    }
}

/// Uncalibrated `8 × compressed length`; useful to show why calibration is
/// needed. Not one of the reported estimators.
pub struct RawCompressedBits {
    pub compressor: Arc<dyn Compressor>,
    pub mode: SerializationMode,
}

impl Estimator for RawCompressedBits {
    fn name(&self) -> &str {
        "raw-gzip"
    }

    fn raw_bits(&self, p: &Pattern) -> Result<f64> {
        Ok(compressed_bits(p, self.compressor.as_ref(), self.mode)?.bits())
    }
}
