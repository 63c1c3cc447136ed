//! One pattern from each generator, with its modified Shannon information.

use patinfo::estimators::modified_shannon_info;
use patinfo::generators::{generate, GeneratorSpec};

fn main() -> patinfo::Result<()> {
    let specs = [
        GeneratorSpec::Constant { n: 40, symbol: 'a' },
        GeneratorSpec::UniformRandom {
            n: 40,
            k: 4,
            seed: 7,
        },
        GeneratorSpec::Markov {
            n: 40,
            transitions: vec![vec![0.9, 0.1], vec![0.2, 0.8]],
            seed: 7,
        },
        GeneratorSpec::FibonacciDigits { n: 40 },
        GeneratorSpec::RedundantRepeat {
            base: "abc".into(),
            r: 13,
        },
        GeneratorSpec::RedundantRandom {
            n: 40,
            copy_probability: 0.3,
            seed: 7,
        },
        GeneratorSpec::circles(20, 10),
    ];
    for spec in &specs {
        let p = generate(spec)?;
        let text: String = p
            .symbols()
            .iter()
            .map(|s| match s {
                patinfo::Symbol::Char(c) => *c,
                _ => '?',
            })
            .collect();
        let shown = if text.len() > 60 {
            format!("{}...", &text[..60])
        } else {
            text
        };
        println!(
            "{:<17} {:>8.3}  {shown}",
            spec.kind_name(),
            modified_shannon_info(&p).bits()
        );
    }
    Ok(())
}
