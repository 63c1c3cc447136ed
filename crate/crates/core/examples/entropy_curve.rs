//! Combinatorial entropy `I/(n+1)` of constant and balanced binary patterns
//! as the length grows.

use patinfo::estimators::{entropy_hc, MinInfo, ModifiedShannon};
use patinfo::Pattern;

fn main() -> patinfo::Result<()> {
    println!("{:>7} {:>12} {:>12}", "n", "H constant", "H balanced");
    for n in [0usize, 1, 2, 4, 10, 100, 1000, 10_000] {
        let constant = Pattern::from_chars(&"a".repeat(n));
        let balanced = Pattern::from_chars(&"ab".repeat(n / 2));
        println!(
            "{n:>7} {:>12.6} {:>12.6}",
            entropy_hc(&constant, &MinInfo)?.bits(),
            entropy_hc(&balanced, &ModifiedShannon)?.bits()
        );
    }
    Ok(())
}
