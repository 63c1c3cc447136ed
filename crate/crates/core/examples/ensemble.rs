//! Ensemble minimum over the modified Shannon, compression and oracle
//! estimators, reporting which member won.

use patinfo::analysis::EstimatorConfig;
use patinfo::compression::SerializationMode;
use patinfo::generators::{generate, GeneratorSpec};

fn main() -> patinfo::Result<()> {
    let config = EstimatorConfig::in_memory(SerializationMode::Utf8);
    let ensemble = config.ensemble();
    let patterns = [
        (
            "repeat",
            GeneratorSpec::RedundantRepeat {
                base: "0123456789".into(),
                r: 50,
            },
        ),
        (
            "uniform",
            GeneratorSpec::UniformRandom {
                n: 500,
                k: 10,
                seed: 3,
            },
        ),
        ("fib", GeneratorSpec::FibonacciDigits { n: 500 }),
        ("circles", GeneratorSpec::circles(25, 20)),
    ];
    for (name, spec) in &patterns {
        let p = generate(spec)?;
        let (bits, winner) = ensemble.evaluate(&p)?;
        println!("{name:<8} {:>10.3} bits  via {winner}", bits.bits());
    }
    Ok(())
}
