//! Lower and upper information bounds for a few pattern sizes.
//!
//! ```text
//! cargo run --example bounds
//! ```

use patinfo::estimators::{max_info, min_info_len};

fn main() -> patinfo::Result<()> {
    println!("{:>6} {:>4} {:>12} {:>14}", "n", "k", "I_min", "I_max");
    for &(n, k) in &[
        (0, 2),
        (1, 2),
        (2, 2),
        (3, 2),
        (10, 4),
        (1000, 2),
        (1000, 26),
        (1_000_000, 256),
    ] {
        println!(
            "{n:>6} {k:>4} {:>12.6} {:>14.6}",
            min_info_len(n).bits(),
            max_info(n, k)?.bits()
        );
    }
    Ok(())
}
