//! Seeded pattern families.
//!
//! Every random generator draws from [`ChaCha20Rng`] seeded with
//! `seed_from_u64(seed)`, so a spec always yields the same symbols.

use std::path::PathBuf;

use num_bigint::BigUint;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::pattern::{canonical_char, Pattern, Symbol};

/// Algorithm identifier of the generator PRNG.
pub const RNG_ALGORITHM: &str = "chacha20/seed_from_u64";

pub const DEFAULT_RING_STEP: usize = 3;
pub const DEFAULT_RING_WIDTH: usize = 1;
pub const DEFAULT_COPY_PROBABILITY: f64 = 0.3;

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Constant {
        n: usize,
        symbol: char,
    },
    /// i.i.d. uniform over the first `k` canonical characters.
    UniformRandom {
        n: usize,
        k: usize,
        seed: u64,
    },
    /// First-order chain over `k = transitions.len()` canonical characters;
    /// the initial state is uniform.
    Markov {
        n: usize,
        transitions: Vec<Vec<f64>>,
        seed: u64,
    },
    /// Decimal digits of 0, 1, 1, 2, 3, 5, ... concatenated, cut to `n`.
    FibonacciDigits {
        n: usize,
    },
    /// `width × height` raster of `'1'` rings on `'0'`, row-major.
    StructuredCircles {
        width: usize,
        height: usize,
        ring_step: usize,
        ring_width: usize,
    },
    /// `base` repeated `r` times.
    RedundantRepeat {
        base: String,
        r: usize,
    },
    /// Uniform binary source where each position after the first copies its
    /// predecessor with probability `copy_probability`.
    RedundantRandom {
        n: usize,
        copy_probability: f64,
        seed: u64,
    },
    /// Characters of a UTF-8 text file, optionally cut to `n`.
    EnglishTextFile {
        path: PathBuf,
        n: Option<usize>,
    },
}

impl GeneratorSpec {
    pub fn circles(width: usize, height: usize) -> Self {
        GeneratorSpec::StructuredCircles {
            width,
            height,
            ring_step: DEFAULT_RING_STEP,
            ring_width: DEFAULT_RING_WIDTH,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            GeneratorSpec::Constant { .. } => "constant",
            GeneratorSpec::UniformRandom { .. } => "uniform",
            GeneratorSpec::Markov { .. } => "markov",
            GeneratorSpec::FibonacciDigits { .. } => "fib",
            GeneratorSpec::StructuredCircles { .. } => "circles",
            GeneratorSpec::RedundantRepeat { .. } => "repeat",
            GeneratorSpec::RedundantRandom { .. } => "redundant-random",
            GeneratorSpec::EnglishTextFile { .. } => "english",
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Pattern> {
    match spec {
        GeneratorSpec::Constant { n, symbol } => Ok(Pattern::new(vec![Symbol::Char(*symbol); *n])),
        GeneratorSpec::UniformRandom { n, k, seed } => {
            if *k == 0 {
                return Err(Error::InvalidSpec("uniform generator needs k >= 1".into()));
            }
            let mut rng = ChaCha20Rng::seed_from_u64(*seed);
            let symbols = (0..*n)
                .map(|_| canonical(rng.random_range(0..*k)))
                .collect();
            Pattern::new(symbols).with_canonical_alphabet(*k)
        }
        GeneratorSpec::Markov {
            n,
            transitions,
            seed,
        } => markov(*n, transitions, *seed),
        GeneratorSpec::FibonacciDigits { n } => {
            let digits = fibonacci_digits(*n);
            Pattern::from_chars(&digits).with_canonical_alphabet(10)
        }
        GeneratorSpec::StructuredCircles {
            width,
            height,
            ring_step,
            ring_width,
        } => {
            if *ring_step == 0 || *ring_width == 0 {
                return Err(Error::InvalidSpec(
                    "ring step and width must be positive".into(),
                ));
            }
            let raster = circles_raster(*width, *height, *ring_step, *ring_width);
            Pattern::from_chars(&raster).with_canonical_alphabet(2)
        }
        GeneratorSpec::RedundantRepeat { base, r } => Ok(Pattern::from_chars(base).repeat(*r)),
        GeneratorSpec::RedundantRandom {
            n,
            copy_probability,
            seed,
        } => {
            if !(0.0..=1.0).contains(copy_probability) {
                return Err(Error::InvalidSpec(format!(
                    "copy probability {copy_probability} outside [0, 1]"
                )));
            }
            let mut rng = ChaCha20Rng::seed_from_u64(*seed);
            let mut out: Vec<Symbol> = Vec::with_capacity(*n);
            for _ in 0..*n {
                let copy = rng.random_bool(*copy_probability);
                let fresh = canonical(rng.random_range(0..2));
                let next = match out.last() {
                    Some(prev) if copy => prev.clone(),
                    _ => fresh,
                };
                out.push(next);
            }
            Pattern::new(out).with_canonical_alphabet(2)
        }
        GeneratorSpec::EnglishTextFile { path, n } => {
            let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
            let text = String::from_utf8(bytes)?;
            let chars: Vec<Symbol> = text.chars().map(Symbol::Char).collect();
            match n {
                Some(n) if *n > chars.len() => Err(Error::InvalidSpec(format!(
                    "{} has {} characters, {n} requested",
                    path.display(),
                    chars.len()
                ))),
                Some(n) => Ok(Pattern::new(chars[..*n].to_vec())),
                None => Ok(Pattern::new(chars)),
            }
        }
    }
}

fn canonical(i: usize) -> Symbol {
    Symbol::Char(canonical_char(i))
}

fn markov(n: usize, transitions: &[Vec<f64>], seed: u64) -> Result<Pattern> {
    let k = transitions.len();
    if k == 0 {
        return Err(Error::InvalidSpec("empty transition matrix".into()));
    }
    let mut rows = Vec::with_capacity(k);
    for (i, row) in transitions.iter().enumerate() {
        if row.len() != k {
            return Err(Error::InvalidSpec(format!(
                "transition row {i} has {} entries, expected {k}",
                row.len()
            )));
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > 1e-9 || row.iter().any(|p| p.is_nan() || *p < 0.0) {
            return Err(Error::InvalidTransitionRow { row: i, sum });
        }
        rows.push(WeightedIndex::new(row).map_err(|e| Error::InvalidSpec(e.to_string()))?);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    if n > 0 {
        let mut state = rng.random_range(0..k);
        out.push(canonical(state));
        for _ in 1..n {
            state = rows[state].sample(&mut rng);
            out.push(canonical(state));
        }
    }
    Pattern::new(out).with_canonical_alphabet(k)
}

/// Digits of the Fibonacci sequence starting `0, 1, 1, 2`, truncated to `n`.
pub fn fibonacci_digits(n: usize) -> String {
    let mut out = String::with_capacity(n + 32);
    let (mut a, mut b) = (BigUint::from(0u32), BigUint::from(1u32));
    while out.len() < n {
        out.push_str(&a.to_string());
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    out.truncate(n);
    out
}

/// Cell `(x, y)` is `'1'` when the distance from its centre to the raster
/// centre, rounded, lies within `ring_width` of a positive multiple of
/// `ring_step`.
pub fn circles_raster(width: usize, height: usize, ring_step: usize, ring_width: usize) -> String {
    let (cx, cy) = (width as f64 / 2.0, height as f64 / 2.0);
    let mut out = String::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let dx = x as f64 + 0.5 - cx;
            let dy = y as f64 + 0.5 - cy;
            let r = dx.hypot(dy).round() as usize;
            let on = r >= ring_step && r % ring_step < ring_width;
            out.push(if on { '1' } else { '0' });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::frequency_table;

    fn text(p: &Pattern) -> String {
        p.symbols()
            .iter()
            .map(|s| match s {
                Symbol::Char(c) => *c,
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn constant_and_repeat() {
        let p = generate(&GeneratorSpec::Constant { n: 5, symbol: 'a' }).unwrap();
        assert_eq!(text(&p), "aaaaa");
        let p = generate(&GeneratorSpec::RedundantRepeat {
            base: "ab".into(),
            r: 3,
        })
        .unwrap();
        assert_eq!(text(&p), "ababab");
    }

    #[test]
    fn fibonacci_prefix() {
        // 0 1 1 2 3 5 8 13 21 34 55 8(9)
        assert_eq!(fibonacci_digits(16), "0112358132134558");
        assert_eq!(fibonacci_digits(0), "");
        let p = generate(&GeneratorSpec::FibonacciDigits { n: 1000 }).unwrap();
        assert_eq!(p.len(), 1000);
        assert_eq!(p.k(), 10);
    }

    #[test]
    fn circles_length_and_symmetry() {
        let p = generate(&GeneratorSpec::circles(40, 25)).unwrap();
        assert_eq!(p.len(), 1000);
        let raster = circles_raster(40, 25, 3, 1);
        let rows: Vec<&str> = (0..25).map(|y| &raster[y * 40..(y + 1) * 40]).collect();
        for (y, row) in rows.iter().enumerate() {
            let mirrored: String = row.chars().rev().collect();
            assert_eq!(*row, mirrored, "row {y} not left-right symmetric");
            assert_eq!(*row, rows[24 - y], "row {y} not top-bottom symmetric");
        }
        assert!(raster.contains('1') && raster.contains('0'));
    }

    #[test]
    fn seeded_generators_are_deterministic() {
        let specs = [
            GeneratorSpec::UniformRandom {
                n: 200,
                k: 7,
                seed: 42,
            },
            GeneratorSpec::RedundantRandom {
                n: 200,
                copy_probability: DEFAULT_COPY_PROBABILITY,
                seed: 42,
            },
            GeneratorSpec::Markov {
                n: 200,
                transitions: vec![vec![0.9, 0.1], vec![0.5, 0.5]],
                seed: 42,
            },
        ];
        for spec in &specs {
            assert_eq!(
                generate(spec).unwrap(),
                generate(spec).unwrap(),
                "{}",
                spec.kind_name()
            );
            assert_eq!(generate(spec).unwrap().len(), 200);
        }
    }

    #[test]
    fn markov_rejects_bad_rows() {
        let spec = GeneratorSpec::Markov {
            n: 10,
            transitions: vec![vec![0.5, 0.4], vec![0.5, 0.5]],
            seed: 0,
        };
        assert!(matches!(
            generate(&spec),
            Err(Error::InvalidTransitionRow { row: 0, .. })
        ));
    }

    #[test]
    fn uniform_markov_frequencies() {
        let k = 4;
        let n = 10_000;
        let spec = GeneratorSpec::Markov {
            n,
            transitions: vec![vec![0.25; k]; k],
            seed: 11,
        };
        let table = frequency_table(&generate(&spec).unwrap());
        let mean = n as f64 / k as f64;
        let sd = (n as f64 * 0.25 * 0.75).sqrt();
        for i in 0..k {
            let c = table.count(&Symbol::Char(canonical_char(i))) as f64;
            assert!((c - mean).abs() <= 3.0 * sd, "symbol {i}: {c}");
        }
    }

    #[test]
    fn english_file_missing() {
        let spec = GeneratorSpec::EnglishTextFile {
            path: "/nonexistent/english.txt".into(),
            n: None,
        };
        assert!(matches!(generate(&spec), Err(Error::Io { .. })));
    }
}
