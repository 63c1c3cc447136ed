//! M/S/T/K comparison over the bundled corpora, written as a table and an
//! SVG chart in the temp directory.

use std::path::Path;
use std::sync::Arc;

use patinfo::analysis::EstimatorConfig;
use patinfo::commands::{compare_checks, compare_reports};
use patinfo::compression::{CalibrationCache, SerializationMode};
use patinfo::report::{compare_svg, compare_table};
use patinfo::Tokenization;

fn main() -> patinfo::Result<()> {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for mode in [Tokenization::Token, Tokenization::Char] {
        let config = EstimatorConfig::new(
            SerializationMode::for_tokenization(mode),
            Arc::new(CalibrationCache::in_memory()),
        );
        let reports = compare_reports(&corpus, mode, &config)?;
        println!("mode {mode}");
        print!("{}", compare_table(&reports, &compare_checks(&reports)));
        let svg = std::env::temp_dir().join(format!("patinfo-compare-{mode}.svg"));
        std::fs::write(&svg, compare_svg(&reports)).map_err(|e| patinfo::Error::io(&svg, e))?;
        println!("chart: {}\n", svg.display());
    }
    Ok(())
}
