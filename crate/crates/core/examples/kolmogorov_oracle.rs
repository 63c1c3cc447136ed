//! Oracle-normalized information with the gzip oracle and with a custom
//! closure standing in for a complexity measure.

use patinfo::compression::{oracle_normalized_info, CompressorOracle, SerializationMode};
use patinfo::Pattern;

fn main() -> patinfo::Result<()> {
    let gzip = CompressorOracle::gzip(SerializationMode::Utf8);
    // run-length count as a toy complexity measure
    let runs = |p: &Pattern| -> patinfo::Result<f64> {
        let s = p.symbols();
        Ok(8.0 * (1 + s.windows(2).filter(|w| w[0] != w[1]).count()) as f64)
    };
    for s in [
        "aaaaaaaaaaaaaaaa",
        "abababababababab",
        "aabbbabaabbabbba",
        "the cat sat on the mat",
    ] {
        let p = Pattern::from_chars(s);
        println!(
            "{:<26} gzip {:>9.3}  runs {:>9.3}",
            format!("{s:?}"),
            oracle_normalized_info(&p, &gzip)?.bits(),
            oracle_normalized_info(&p, &runs)?.bits()
        );
    }
    Ok(())
}
