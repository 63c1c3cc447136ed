//! Closed-form information measures and combinatorial entropy.
//!
//! | estimator  | value |
//! |------------|-------|
//! | `min`      | `log2(n+1)` |
//! | `max`      | `log2 Σ_{i=0}^{n} k^i` |
//! | `mshannon` | `log2 Σ_{i=0}^{n} c^i`, `c = 2^h`, `h` the unigram entropy |
//! | `shannon`  | `n·h` |
//!
//! Every reported value is clamped into `[min_info, max_info]`; the raw value
//! is kept alongside in [`Estimate`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::log2_geometric_sum;
use crate::pattern::{frequency_table, InfoBits, Pattern};

/// Identifies one of the built-in information measurement methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    Min,
    Max,
    #[serde(rename = "shannon")]
    ShannonClassic,
    #[serde(rename = "mshannon")]
    ModifiedShannon,
    #[serde(rename = "gzip")]
    Compression,
    #[serde(rename = "kolmogorov")]
    OracleNormalized,
    #[serde(rename = "ensemble")]
    EnsembleMin,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 7] = [
        EstimatorKind::Min,
        EstimatorKind::Max,
        EstimatorKind::ShannonClassic,
        EstimatorKind::ModifiedShannon,
        EstimatorKind::Compression,
        EstimatorKind::OracleNormalized,
        EstimatorKind::EnsembleMin,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EstimatorKind::Min => "min",
            EstimatorKind::Max => "max",
            EstimatorKind::ShannonClassic => "shannon",
            EstimatorKind::ModifiedShannon => "mshannon",
            EstimatorKind::Compression => "gzip",
            EstimatorKind::OracleNormalized => "kolmogorov",
            EstimatorKind::EnsembleMin => "ensemble",
        }
    }

    /// True for estimators that need a compressor.
    pub fn uses_compressor(self) -> bool {
        matches!(
            self,
            EstimatorKind::Compression
                | EstimatorKind::OracleNormalized
                | EstimatorKind::EnsembleMin
        )
    }

    /// Parses a comma separated list such as `min,mshannon,gzip`.
    pub fn parse_list(list: &str) -> Result<Vec<EstimatorKind>> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse())
            .collect()
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EstimatorKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownEstimator(s.to_string()))
    }
}

/// `log2(n+1)`; zero for the empty pattern.
pub fn min_info(p: &Pattern) -> InfoBits {
    min_info_len(p.len() as u64)
}

pub fn min_info_len(n: u64) -> InfoBits {
    InfoBits::new(((n + 1) as f64).log2())
}

/// `log2 Σ_{i=0}^{n} k^i`, overflow-free for any `n`.
pub fn max_info(n: u64, k: u64) -> Result<InfoBits> {
    match k {
        0 if n == 0 => Ok(InfoBits::ZERO),
        0 => Err(Error::DegenerateAlphabet { n: n as usize }),
        1 => Ok(min_info_len(n)),
        _ => Ok(InfoBits::new(log2_geometric_sum(n, (k as f64).log2()))),
    }
}

/// Upper bound for a pattern, using its (declared or inferred) alphabet.
pub fn max_info_of(p: &Pattern) -> Result<InfoBits> {
    max_info(p.len() as u64, p.k() as u64)
}

/// Modified Shannon information `log2 Σ_{i=0}^{n} 2^{i·h}`.
///
/// Reduces to `log2(n+1)` for constant patterns and to `max_info(n, k)` when
/// all `k` symbols occur equally often.
pub fn modified_shannon_info(p: &Pattern) -> InfoBits {
    let table = frequency_table(p);
    if table.distinct() <= 1 {
        return min_info(p);
    }
    InfoBits::new(log2_geometric_sum(table.n(), table.shannon_entropy()))
}

/// Shannon's `n·h`. Undefined for the empty pattern.
pub fn shannon_classic_info(p: &Pattern) -> Result<InfoBits> {
    if p.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let table = frequency_table(p);
    Ok(InfoBits::new(table.n() as f64 * table.shannon_entropy()))
}

/// Raw and clamped value of one estimator on one pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub raw: f64,
    pub clamped: InfoBits,
}

impl Estimate {
    /// Clamps `raw` into `[min_info(p), max_info(p)]`.
    pub fn from_raw(p: &Pattern, raw: f64) -> Result<Self> {
        let lo = min_info(p).bits();
        let hi = max_info_of(p)?.bits();
        let clamped = if raw.is_nan() { lo } else { raw.clamp(lo, hi) };
        Ok(Estimate {
            raw,
            clamped: InfoBits::new(clamped),
        })
    }
}

/// An information measurement method.
pub trait Estimator: Send + Sync {
    fn name(&self) -> &str;

    /// Unclamped value in bits.
    fn raw_bits(&self, p: &Pattern) -> Result<f64>;

    fn estimate(&self, p: &Pattern) -> Result<Estimate> {
        Estimate::from_raw(p, self.raw_bits(p)?)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MinInfo;

#[derive(Debug, Clone, Copy, Default)]
pub struct MaxInfo;

#[derive(Debug, Clone, Copy, Default)]
pub struct ModifiedShannon;

/// Classic Shannon information; reports 0 for the empty pattern.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShannonClassic;

impl Estimator for MinInfo {
    fn name(&self) -> &str {
        "min"
    }

    fn raw_bits(&self, p: &Pattern) -> Result<f64> {
        Ok(min_info(p).bits())
    }
}

impl Estimator for MaxInfo {
    fn name(&self) -> &str {
        "max"
    }

    fn raw_bits(&self, p: &Pattern) -> Result<f64> {
        Ok(max_info_of(p)?.bits())
    }
}

impl Estimator for ModifiedShannon {
    fn name(&self) -> &str {
        "mshannon"
    }

    fn raw_bits(&self, p: &Pattern) -> Result<f64> {
        Ok(modified_shannon_info(p).bits())
    }
}

impl Estimator for ShannonClassic {
    fn name(&self) -> &str {
        "shannon"
    }

    fn raw_bits(&self, p: &Pattern) -> Result<f64> {
        if p.is_empty() {
            return Ok(0.0);
        }
        Ok(shannon_classic_info(p)?.bits())
    }
}

/// Minimum over the clamped values of `methods`, with the index of the first
/// method attaining it.
pub fn ensemble_min_info(p: &Pattern, methods: &[&dyn Estimator]) -> Result<(InfoBits, usize)> {
    let mut best: Option<(InfoBits, usize)> = None;
    for (i, m) in methods.iter().enumerate() {
        let v = m.estimate(p)?.clamped;
        if best.is_none_or(|(b, _)| v < b) {
            best = Some((v, i));
        }
    }
    best.ok_or(Error::NoEstimators)
}

/// Minimum over a fixed set of member estimators.
pub struct EnsembleMin {
    members: Vec<Box<dyn Estimator>>,
}

impl EnsembleMin {
    pub fn new(members: Vec<Box<dyn Estimator>>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::NoEstimators);
        }
        Ok(EnsembleMin { members })
    }

    /// Value and name of the winning member.
    pub fn evaluate(&self, p: &Pattern) -> Result<(InfoBits, &str)> {
        let refs: Vec<&dyn Estimator> = self.members.iter().map(|m| m.as_ref()).collect();
        let (v, i) = ensemble_min_info(p, &refs)?;
        Ok((v, self.members[i].name()))
    }
}

impl Estimator for EnsembleMin {
    fn name(&self) -> &str {
        "ensemble"
    }

    fn raw_bits(&self, p: &Pattern) -> Result<f64> {
        Ok(self.evaluate(p)?.0.bits())
    }
}

/// Combinatorial entropy: information per element, `I(p) / (n+1)`.
pub fn entropy_hc(p: &Pattern, info: &dyn Estimator) -> Result<InfoBits> {
    let bits = info.estimate(p)?.clamped.bits();
    Ok(InfoBits::new(bits / (p.len() as f64 + 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= TOL
    }

    #[test]
    fn min_info_fixtures() {
        assert_eq!(min_info_len(0).bits(), 0.0);
        assert_eq!(min_info_len(1).bits(), 1.0);
        assert_eq!(min_info_len(3).bits(), 2.0);
    }

    #[test]
    fn max_info_fixtures() {
        // 1 + 2 + 4 + 8
        assert!(close(
            max_info(3, 2).unwrap().bits(),
            3.906_890_595_608_518_5
        ));
        assert!(close(max_info(5, 1).unwrap().bits(), 2.584_962_500_721_156));
        assert_eq!(max_info(0, 0).unwrap().bits(), 0.0);
        assert!(matches!(
            max_info(3, 0),
            Err(Error::DegenerateAlphabet { .. })
        ));
    }

    #[test]
    fn modified_shannon_fixtures() {
        assert!(close(
            modified_shannon_info(&Pattern::from_chars("ab")).bits(),
            2.807_354_922_057_604
        ));
        assert!(close(
            modified_shannon_info(&Pattern::from_chars("aaaa")).bits(),
            2.321_928_094_887_362
        ));
        // term-wise product-form oracle at 50 digits
        assert!(close(
            modified_shannon_info(&Pattern::from_chars("aab")).bits(),
            3.723_726_077_119_987
        ));
        assert_eq!(modified_shannon_info(&Pattern::from_chars("")).bits(), 0.0);
    }

    #[test]
    fn shannon_classic_fixtures() {
        assert_eq!(
            shannon_classic_info(&Pattern::from_chars("abab"))
                .unwrap()
                .bits(),
            4.0
        );
        assert_eq!(
            shannon_classic_info(&Pattern::from_chars("aaaa"))
                .unwrap()
                .bits(),
            0.0
        );
        assert!(matches!(
            shannon_classic_info(&Pattern::from_chars("")),
            Err(Error::EmptyPattern)
        ));
        let balanced: String = "ab".repeat(5000);
        assert_eq!(
            shannon_classic_info(&Pattern::from_chars(&balanced))
                .unwrap()
                .bits(),
            10_000.0
        );
        assert_eq!(
            ShannonClassic.raw_bits(&Pattern::from_chars("")).unwrap(),
            0.0
        );
    }

    #[test]
    fn single_element_convention() {
        let p = Pattern::from_chars("x");
        for e in [&MinInfo as &dyn Estimator, &MaxInfo, &ModifiedShannon] {
            assert_eq!(e.estimate(&p).unwrap().clamped.bits(), 1.0, "{}", e.name());
        }
        let declared = p.with_alphabet_size(4).unwrap();
        assert!(close(MaxInfo.raw_bits(&declared).unwrap(), 5f64.log2()));
    }

    #[test]
    fn ensemble_min_fixtures() {
        let constant = Pattern::from_chars("aaaaaaa");
        let (v, winner) = ensemble_min_info(&constant, &[&MinInfo, &ModifiedShannon]).unwrap();
        assert_eq!(v, min_info(&constant));
        assert_eq!(winner, 0, "ties go to the first method");

        let ab = Pattern::from_chars("ab");
        let (v, _) = ensemble_min_info(&ab, &[&ModifiedShannon, &MaxInfo]).unwrap();
        assert!(close(v.bits(), 7f64.log2()));

        let p = Pattern::from_chars("abcabd");
        assert_eq!(ensemble_min_info(&p, &[&MinInfo]).unwrap().0, min_info(&p));

        assert!(matches!(
            ensemble_min_info(&p, &[]),
            Err(Error::NoEstimators)
        ));
        assert!(EnsembleMin::new(vec![]).is_err());
    }

    #[test]
    fn entropy_fixtures() {
        let h = |n: usize| {
            entropy_hc(&Pattern::from_chars(&"a".repeat(n)), &MinInfo)
                .unwrap()
                .bits()
        };
        assert_eq!(h(0), 0.0);
        assert_eq!(h(1), 0.5);
        assert!(close(h(2), 0.528_320_833_573_718_7));
        assert!(close(h(10_000), 0.001_328_652_798_904_164));
    }

    #[test]
    fn clamping_keeps_raw() {
        let p = Pattern::from_chars("abc");
        let e = Estimate::from_raw(&p, 1e6).unwrap();
        assert_eq!(e.raw, 1e6);
        assert_eq!(e.clamped, max_info_of(&p).unwrap());
        let e = Estimate::from_raw(&p, -3.0).unwrap();
        assert_eq!(e.clamped, min_info(&p));
    }

    #[test]
    fn estimator_names_round_trip() {
        for k in EstimatorKind::ALL {
            assert_eq!(k.as_str().parse::<EstimatorKind>().unwrap(), k);
        }
        assert!(EstimatorKind::parse_list("min,bogus").is_err());
        assert_eq!(EstimatorKind::parse_list("min, mshannon").unwrap().len(), 2);
    }
}
