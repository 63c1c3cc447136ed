//! Calibrated compression estimate of a file, with the calibration shown.
//!
//! ```text
//! cargo run --example compression_estimate -- crates/core/data/english.txt
//! ```

use std::sync::Arc;

use patinfo::compression::{compressed_bits, CalibrationCache, CompressionInfo, SerializationMode};
use patinfo::{Estimator, Tokenization};

fn main() -> patinfo::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/english.txt").to_string());
    let bytes = std::fs::read(&path).map_err(|e| patinfo::Error::io(&path, e))?;
    let p = Tokenization::Char.tokenize(&bytes)?;

    let est = CompressionInfo::new(
        SerializationMode::Utf8,
        Arc::new(CalibrationCache::in_memory()),
    );
    let cal = est.calibration_for(p.len(), p.k())?;
    let raw = compressed_bits(&p, est.compressor.as_ref(), est.mode)?;
    let e = est.estimate(&p)?;

    println!("{path}: n={} k={}", p.len(), p.k());
    println!("calibration {}", cal.key());
    println!("  constant reference {:>10.1} bits", cal.low_bits.bits());
    println!(
        "  random reference   {:>10.1} bits (median of {})",
        cal.high_bits.bits(),
        cal.samples
    );
    println!("  this pattern       {:>10.1} bits", raw.bits());
    println!("estimate {:.6} bits (raw {:.6})", e.clamped.bits(), e.raw);
    Ok(())
}
