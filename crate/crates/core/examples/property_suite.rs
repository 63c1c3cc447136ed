//! Runs the property suite for every estimator and prints the table.

use std::sync::Arc;

use patinfo::analysis::EstimatorConfig;
use patinfo::compression::{CalibrationCache, SerializationMode};
use patinfo::properties::{run_suite, PropertyId};
use patinfo::report::property_table;
use patinfo::EstimatorKind;

fn main() -> patinfo::Result<()> {
    let config = EstimatorConfig::new(
        SerializationMode::Utf8,
        Arc::new(CalibrationCache::in_memory()),
    );
    let reports = run_suite(&PropertyId::ALL, &EstimatorKind::ALL, 200, 1, &config)?;
    print!("{}", property_table(&reports));
    let failures = reports.iter().filter(|r| r.is_failure()).count();
    println!("{failures} asserted properties failed");
    Ok(())
}
