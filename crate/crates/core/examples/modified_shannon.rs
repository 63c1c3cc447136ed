//! Modified Shannon information against the bounds and classic Shannon.
//!
//! ```text
//! cargo run --example modified_shannon -- "abracadabra"
//! ```

use patinfo::estimators::{max_info_of, min_info, modified_shannon_info, shannon_classic_info};
use patinfo::{frequency_table, Pattern};

fn main() -> patinfo::Result<()> {
    let inputs: Vec<String> = match std::env::args().skip(1).collect::<Vec<_>>() {
        v if v.is_empty() => ["aaaa", "abab", "aab", "abracadabra", "the quick brown fox"]
            .map(String::from)
            .to_vec(),
        v => v,
    };
    println!(
        "{:<22} {:>10} {:>10} {:>10} {:>10}",
        "pattern", "min", "mshannon", "shannon", "max"
    );
    for s in &inputs {
        let p = Pattern::from_chars(s);
        let h = frequency_table(&p).shannon_entropy();
        println!(
            "{:<22} {:>10.4} {:>10.4} {:>10.4} {:>10.4}   h={h:.4}",
            format!("{s:?}"),
            min_info(&p).bits(),
            modified_shannon_info(&p).bits(),
            shannon_classic_info(&p).map(|b| b.bits()).unwrap_or(0.0),
            max_info_of(&p)?.bits(),
        );
    }
    Ok(())
}
