//! Executable checks of the general properties of information.
//!
//! Each check runs one estimator over a seeded corpus and counts every
//! instance that violates the inequality at the given tolerance. Reports are
//! exact counts, never samples.
//!
//! Properties are either [`PropertyClass::Assert`] (proven for the estimator,
//! a violation is a bug) or [`PropertyClass::Observe`] (empirical, reported
//! only). See [`classify`].

use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::EstimatorConfig;
use crate::error::{Error, Result};
use crate::estimators::{max_info_of, min_info, Estimator, EstimatorKind, ModifiedShannon};
use crate::generators::{generate, GeneratorSpec};
use crate::pattern::{canonical_char, Alphabet, Pattern, Symbol};

/// Absolute tolerance for comparisons that hold exactly in theory.
pub const EXACT_TOLERANCE: f64 = 1e-9;

/// Reversal bound for compression-based estimators, in bits.
pub const COMPRESSION_REVERSAL_BOUND: f64 = 64.0;

/// Redundancy bound for compression-based estimators, in bits.
pub const COMPRESSION_REDUNDANCY_BOUND: f64 = 128.0;

/// Redundancy bound for frequency-based estimators, in bits.
pub const REDUNDANCY_BOUND: f64 = 1.0;

pub const DEFAULT_ALPHABET_SIZES: [usize; 5] = [1, 2, 4, 26, 256];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PropertyId {
    Normalization,
    Subadditivity,
    Reversibility,
    Monotonicity,
    Redundancy,
    OrderingChain,
}

impl PropertyId {
    pub const ALL: [PropertyId; 6] = [
        PropertyId::Normalization,
        PropertyId::Subadditivity,
        PropertyId::Reversibility,
        PropertyId::Monotonicity,
        PropertyId::Redundancy,
        PropertyId::OrderingChain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::Normalization => "normalization",
            PropertyId::Subadditivity => "subadditivity",
            PropertyId::Reversibility => "reversibility",
            PropertyId::Monotonicity => "monotonicity",
            PropertyId::Redundancy => "redundancy",
            PropertyId::OrderingChain => "ordering",
        }
    }

    pub fn parse_list(list: &str) -> Result<Vec<PropertyId>> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse())
            .collect()
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        if s == "ordering_chain" || s == "chain" {
            return Ok(PropertyId::OrderingChain);
        }
        PropertyId::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or(Error::UnknownProperty(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropertyClass {
    Assert,
    Observe,
}

/// Whether a violation of `property` by `estimator` is a failure.
pub fn classify(property: PropertyId, estimator: &str) -> PropertyClass {
    use PropertyClass::*;
    use PropertyId::*;
    match (estimator, property) {
        ("min", _) => Assert,
        ("max", Redundancy) => Observe,
        ("max", _) => Assert,
        ("mshannon", Normalization | Reversibility | OrderingChain) => Assert,
        ("shannon", Reversibility) => Assert,
        ("chain", OrderingChain) => Assert,
        _ => Observe,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub estimator: String,
    pub class: PropertyClass,
    pub trials: usize,
    pub violations: usize,
    pub worst_violation_bits: f64,
    pub tolerance: f64,
    pub seed: u64,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    /// True when this report should fail a run.
    pub fn is_failure(&self) -> bool {
        self.class == PropertyClass::Assert && !self.passed()
    }

    fn from_excesses(
        property: PropertyId,
        estimator: &str,
        excesses: Vec<f64>,
        tolerance: f64,
        seed: u64,
    ) -> Self {
        let violating = excesses.iter().filter(|&&e| e > 0.0);
        PropertyReport {
            property,
            estimator: estimator.to_string(),
            class: classify(property, estimator),
            trials: excesses.len(),
            violations: violating.clone().count(),
            worst_violation_bits: violating.fold(0.0, |a: f64, &b| a.max(b)),
            tolerance,
            seed,
        }
    }
}

/// Seeded patterns, each carrying a declared canonical alphabet.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub seed: u64,
    pub patterns: Vec<Pattern>,
}

#[derive(Debug, Clone)]
pub struct PairCorpus {
    pub seed: u64,
    pub pairs: Vec<(Pattern, Pattern)>,
}

#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub trials: usize,
    pub seed: u64,
    pub max_len: usize,
    pub alphabet_sizes: Vec<usize>,
}

impl CorpusSpec {
    pub fn new(trials: usize, seed: u64) -> Self {
        CorpusSpec {
            trials,
            seed,
            max_len: 512,
            alphabet_sizes: DEFAULT_ALPHABET_SIZES.to_vec(),
        }
    }

    pub fn max_len(mut self, max_len: usize) -> Self {
        self.max_len = max_len;
        self
    }
}

const FAMILIES: usize = 6;

/// One pattern of length `n` over `k` canonical symbols. `family` picks
/// uniform, constant, sticky Markov, balanced counts, short-period repeat or
/// skewed i.i.d.
pub fn family_pattern(family: usize, n: usize, k: usize, seed: u64) -> Result<Pattern> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let sym = |i: usize| Symbol::Char(canonical_char(i));
    let symbols: Vec<Symbol> = match family % FAMILIES {
        0 => return generate(&GeneratorSpec::UniformRandom { n, k, seed }),
        1 => vec![sym(0); n],
        2 => {
            let stay = 0.8;
            let transitions = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| (1.0 - stay) / k as f64 + if i == j { stay } else { 0.0 })
                        .collect()
                })
                .collect();
            return generate(&GeneratorSpec::Markov {
                n,
                transitions,
                seed,
            });
        }
        3 => {
            let mut v: Vec<Symbol> = (0..n).map(|i| sym(i % k)).collect();
            v.shuffle(&mut rng);
            v
        }
        4 => {
            let period = rng.random_range(1..=8usize);
            let base: Vec<Symbol> = (0..period).map(|_| sym(rng.random_range(0..k))).collect();
            base.iter().cycle().take(n).cloned().collect()
        }
        _ => {
            let weights: Vec<f64> = (0..k).map(|j| 0.5f64.powi(j as i32)).collect();
            let dist = WeightedIndex::new(&weights).expect("positive weights");
            (0..n).map(|_| sym(dist.sample(&mut rng))).collect()
        }
    };
    Pattern::with_alphabet(symbols, Alphabet::canonical(k))
}

/// Mixed corpus over the requested alphabet sizes and lengths `0..=max_len`.
pub fn mixed_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let patterns = (0..spec.trials)
        .map(|i| {
            let k = spec.alphabet_sizes[rng.random_range(0..spec.alphabet_sizes.len())];
            let n = rng.random_range(0..=spec.max_len);
            family_pattern(i, n, k, rng.next_u64())
        })
        .collect::<Result<_>>()?;
    Ok(Corpus {
        seed: spec.seed,
        patterns,
    })
}

/// Pairs sharing a declared alphabet, each half up to `max_len / 2` long.
pub fn pair_corpus(spec: &CorpusSpec) -> Result<PairCorpus> {
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let half = spec.max_len / 2;
    let pairs = (0..spec.trials)
        .map(|i| {
            let k = spec.alphabet_sizes[rng.random_range(0..spec.alphabet_sizes.len())];
            let (n, m) = (rng.random_range(0..=half), rng.random_range(0..=half));
            let fam_b = if rng.random_bool(0.5) { i } else { i + 1 };
            Ok((
                family_pattern(i, n, k, rng.next_u64())?,
                family_pattern(fam_b, m, k, rng.next_u64())?,
            ))
        })
        .collect::<Result<_>>()?;
    Ok(PairCorpus {
        seed: spec.seed,
        pairs,
    })
}

/// The `(n1, n2)` rows of the constant-pattern subadditivity table.
pub const SUBADDITIVITY_TABLE: [(usize, usize); 5] = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)];

fn constant(n: usize) -> Pattern {
    Pattern::with_alphabet(
        vec![Symbol::Char(canonical_char(0)); n],
        Alphabet::canonical(1),
    )
    .expect("canonical symbol")
}

fn raw(e: &dyn Estimator, p: &Pattern) -> Result<f64> {
    e.raw_bits(p)
}

/// `min_info(p) - tol <= E(p) <= max_info(p) + tol` on raw values.
pub fn check_normalization(
    e: &dyn Estimator,
    corpus: &Corpus,
    tolerance: f64,
) -> Result<PropertyReport> {
    let excesses = corpus
        .patterns
        .par_iter()
        .map(|p| {
            let v = raw(e, p)?;
            let lo = min_info(p).bits();
            let hi = max_info_of(p)?.bits();
            Ok(((lo - v) - tolerance).max((v - hi) - tolerance))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyReport::from_excesses(
        PropertyId::Normalization,
        e.name(),
        excesses,
        tolerance,
        corpus.seed,
    ))
}

/// `E(pq) <= E(p) + E(q) + tol`, over the corpus plus the constant table rows.
pub fn check_subadditivity(
    e: &dyn Estimator,
    pairs: &PairCorpus,
    tolerance: f64,
) -> Result<PropertyReport> {
    let fixtures: Vec<(Pattern, Pattern)> = SUBADDITIVITY_TABLE
        .iter()
        .map(|&(a, b)| (constant(a), constant(b)))
        .collect();
    let excesses = pairs
        .pairs
        .par_iter()
        .chain(fixtures.par_iter())
        .map(|(p, q)| {
            let joined = raw(e, &p.concat(q))?;
            Ok(joined - raw(e, p)? - raw(e, q)? - tolerance)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyReport::from_excesses(
        PropertyId::Subadditivity,
        e.name(),
        excesses,
        tolerance,
        pairs.seed,
    ))
}

/// `|E(p) - E(reverse p)| <= bound`.
pub fn check_reversibility(
    e: &dyn Estimator,
    corpus: &Corpus,
    bound: f64,
) -> Result<PropertyReport> {
    let excesses = corpus
        .patterns
        .par_iter()
        .map(|p| Ok((raw(e, p)? - raw(e, &p.reversed())?).abs() - bound))
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyReport::from_excesses(
        PropertyId::Reversibility,
        e.name(),
        excesses,
        bound,
        corpus.seed,
    ))
}

/// Prefix, suffix and middle slice of `p`, each paired with `p` itself.
pub fn subpatterns(p: &Pattern) -> [Pattern; 3] {
    let n = p.len();
    [
        p.slice(0, n / 2),
        p.slice(n / 2, n),
        p.slice(n / 4, n - n / 4),
    ]
}

/// `E(sub) <= E(super) + tol` for contiguous sub-patterns.
pub fn check_monotonicity(
    e: &dyn Estimator,
    corpus: &Corpus,
    tolerance: f64,
) -> Result<PropertyReport> {
    let excesses = corpus
        .patterns
        .par_iter()
        .map(|p| {
            let whole = raw(e, p)?;
            subpatterns(p)
                .iter()
                .map(|s| Ok(raw(e, s)? - whole - tolerance))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyReport::from_excesses(
        PropertyId::Monotonicity,
        e.name(),
        excesses.into_iter().flatten().collect(),
        tolerance,
        corpus.seed,
    ))
}

/// `|E(p^r) - (E(p) + log2 r)| < bound` for non-empty bases.
pub fn check_redundancy(
    e: &dyn Estimator,
    base: &Corpus,
    repeats: &[usize],
    bound: f64,
) -> Result<PropertyReport> {
    let cases: Vec<(&Pattern, usize)> = base
        .patterns
        .iter()
        .filter(|p| !p.is_empty())
        .flat_map(|p| repeats.iter().filter(|&&r| r >= 1).map(move |&r| (p, r)))
        .collect();
    let excesses = cases
        .par_iter()
        .map(|&(p, r)| {
            let deviation = raw(e, &p.repeat(r))? - (raw(e, p)? + (r as f64).log2());
            // strict inequality: deviation == bound is a violation
            let d = deviation.abs() - bound;
            Ok(if d >= 0.0 {
                d.max(f64::MIN_POSITIVE)
            } else {
                d
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyReport::from_excesses(
        PropertyId::Redundancy,
        e.name(),
        excesses,
        bound,
        base.seed,
    ))
}

/// Post-clamp ordering `min <= estimates <= max`, `mshannon <= max`, and
/// `ensemble <= mshannon` when compression estimators are included.
pub fn check_ordering_chain(
    corpus: &Corpus,
    compression: Option<&EstimatorConfig>,
) -> Result<PropertyReport> {
    let extra: Vec<Box<dyn Estimator>> = compression
        .map(|cfg| {
            [
                EstimatorKind::Compression,
                EstimatorKind::OracleNormalized,
                EstimatorKind::EnsembleMin,
            ]
            .iter()
            .map(|&k| cfg.build(k))
            .collect()
        })
        .unwrap_or_default();
    let excesses = corpus
        .patterns
        .par_iter()
        .map(|p| {
            let lo = min_info(p).bits();
            let hi = max_info_of(p)?.bits();
            let s = ModifiedShannon.estimate(p)?.clamped.bits();
            let mut worst = (lo - s).max(s - hi);
            for e in &extra {
                let v = e.estimate(p)?.clamped.bits();
                worst = worst.max(lo - v).max(v - hi);
                if e.name() == "ensemble" {
                    worst = worst.max(v - s);
                }
            }
            Ok(worst - EXACT_TOLERANCE)
        })
        .collect::<Result<Vec<_>>>()?;
    let id = if compression.is_some() {
        "chain+compression"
    } else {
        "chain"
    };
    Ok(PropertyReport::from_excesses(
        PropertyId::OrderingChain,
        id,
        excesses,
        EXACT_TOLERANCE,
        corpus.seed,
    ))
}

/// Repeat counts used for redundancy checks.
pub const DEFAULT_REPEATS: [usize; 6] = [1, 2, 3, 4, 8, 16];

/// Runs `properties × estimators` over corpora of `trials` patterns.
pub fn run_suite(
    properties: &[PropertyId],
    estimators: &[EstimatorKind],
    trials: usize,
    seed: u64,
    config: &EstimatorConfig,
) -> Result<Vec<PropertyReport>> {
    let spec = CorpusSpec::new(trials, seed);
    let corpus = mixed_corpus(&spec)?;
    let mut reports = Vec::new();
    let mut lazy_pairs: Option<PairCorpus> = None;
    let mut lazy_short: Option<Corpus> = None;
    for &kind in estimators {
        let e = config.build(kind);
        let compressed = kind.uses_compressor();
        for &property in properties {
            let report = match property {
                PropertyId::Normalization => {
                    check_normalization(e.as_ref(), &corpus, EXACT_TOLERANCE)?
                }
                PropertyId::Subadditivity => {
                    let pairs = match &lazy_pairs {
                        Some(p) => p,
                        None => lazy_pairs.insert(pair_corpus(&spec)?),
                    };
                    check_subadditivity(e.as_ref(), pairs, EXACT_TOLERANCE)?
                }
                PropertyId::Reversibility => {
                    let bound = if compressed {
                        COMPRESSION_REVERSAL_BOUND
                    } else {
                        EXACT_TOLERANCE
                    };
                    check_reversibility(e.as_ref(), &corpus, bound)?
                }
                PropertyId::Monotonicity => {
                    check_monotonicity(e.as_ref(), &corpus, EXACT_TOLERANCE)?
                }
                PropertyId::Redundancy => {
                    let short = match &lazy_short {
                        Some(c) => c,
                        None => lazy_short
                            .insert(mixed_corpus(&CorpusSpec::new(trials, seed).max_len(64))?),
                    };
                    let bound = if compressed {
                        COMPRESSION_REDUNDANCY_BOUND
                    } else {
                        REDUNDANCY_BOUND
                    };
                    check_redundancy(e.as_ref(), short, &DEFAULT_REPEATS, bound)?
                }
                PropertyId::OrderingChain => continue,
            };
            reports.push(report);
        }
    }
    if properties.contains(&PropertyId::OrderingChain) {
        reports.push(check_ordering_chain(&corpus, None)?);
        if estimators.iter().any(|k| k.uses_compressor()) {
            reports.push(check_ordering_chain(&corpus, Some(config))?);
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::{MaxInfo, MinInfo};

    #[test]
    fn classification() {
        assert_eq!(
            classify(PropertyId::Redundancy, "min"),
            PropertyClass::Assert
        );
        assert_eq!(
            classify(PropertyId::Subadditivity, "mshannon"),
            PropertyClass::Observe
        );
        assert_eq!(
            classify(PropertyId::Normalization, "mshannon"),
            PropertyClass::Assert
        );
        assert_eq!(
            classify(PropertyId::Reversibility, "gzip"),
            PropertyClass::Observe
        );
        assert_eq!(
            classify(PropertyId::OrderingChain, "chain+compression"),
            PropertyClass::Observe
        );
    }

    #[test]
    fn corpus_is_reproducible() {
        let spec = CorpusSpec::new(50, 3);
        let a = mixed_corpus(&spec).unwrap();
        let b = mixed_corpus(&spec).unwrap();
        assert_eq!(a.patterns, b.patterns);
        assert!(a
            .patterns
            .iter()
            .all(|p| p.has_declared_alphabet() && p.len() <= 512));
    }

    #[test]
    fn min_info_table_rows_hold() {
        let pairs = PairCorpus {
            seed: 0,
            pairs: vec![],
        };
        let r = check_subadditivity(&MinInfo, &pairs, 0.0).unwrap();
        assert_eq!(r.trials, 5);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn palindromes_reverse_exactly() {
        let p = Pattern::from_chars("abcba")
            .with_canonical_alphabet(26)
            .unwrap();
        let corpus = Corpus {
            seed: 0,
            patterns: vec![p],
        };
        let cfg = EstimatorConfig::in_memory(crate::compression::SerializationMode::Utf8);
        for kind in EstimatorKind::ALL {
            let r = check_reversibility(cfg.build(kind).as_ref(), &corpus, 0.0).unwrap();
            assert_eq!(r.violations, 0, "{kind}");
        }
    }

    #[test]
    fn violations_are_counted_not_sampled() {
        // max_info grows linearly under repetition, far beyond log2 r
        let corpus = mixed_corpus(&CorpusSpec::new(20, 1).max_len(16)).unwrap();
        let r = check_redundancy(&MaxInfo, &corpus, &[16], 1.0).unwrap();
        let nontrivial = corpus
            .patterns
            .iter()
            .filter(|p| !p.is_empty() && p.k() >= 2)
            .count();
        assert!(r.violations >= nontrivial);
        assert!(r.violations <= r.trials);
        assert!(r.worst_violation_bits > 0.0);
    }

    #[test]
    fn property_names_parse() {
        assert_eq!(
            PropertyId::parse_list("normalization,ordering").unwrap(),
            vec![PropertyId::Normalization, PropertyId::OrderingChain]
        );
        assert!(PropertyId::parse_list("nope").is_err());
    }
}
