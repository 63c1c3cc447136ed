//! Report records and their table, CSV, JSON and SVG renderings.
//!
//! JSON documents have the shape
//! `{"reports": [EstimateReport...], "property_reports": [PropertyReport...]}`
//! and carry full doubles; table and CSV output round to 6 decimals.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::EstimatorConfig;
use crate::error::Result;
use crate::estimators::{EnsembleMin, EstimatorKind};
use crate::pattern::{infer_alphabet, InfoBits, Pattern, Tokenization};
use crate::properties::PropertyReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateEntry {
    pub estimator: EstimatorKind,
    pub raw_bits: f64,
    pub clamped_bits: f64,
    pub entropy_hc: f64,
    /// Winning member, for the ensemble estimator.
    pub winner: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub source: String,
    pub mode: Tokenization,
    pub n: usize,
    pub k_inferred: usize,
    pub k_declared: Option<usize>,
    pub estimates: Vec<EstimateEntry>,
    pub compressor: Option<String>,
    pub calibration_key: Option<String>,
}

impl EstimateReport {
    pub fn clamped(&self, kind: EstimatorKind) -> Option<f64> {
        self.estimates
            .iter()
            .find(|e| e.estimator == kind)
            .map(|e| e.clamped_bits)
    }
}

/// Runs `kinds` on `pattern` and assembles the report.
pub fn analyze_pattern(
    source: &str,
    mode: Tokenization,
    pattern: &Pattern,
    kinds: &[EstimatorKind],
    config: &EstimatorConfig,
) -> Result<EstimateReport> {
    let n1 = pattern.len() as f64 + 1.0;
    let mut estimates = Vec::with_capacity(kinds.len());
    for &kind in kinds {
        let (est, winner) = if kind == EstimatorKind::EnsembleMin {
            let ensemble: EnsembleMin = config.ensemble();
            let (v, name) = ensemble.evaluate(pattern)?;
            (
                crate::estimators::Estimate {
                    raw: v.bits(),
                    clamped: v,
                },
                Some(name.to_string()),
            )
        } else {
            (config.build(kind).estimate(pattern)?, None)
        };
        estimates.push(EstimateEntry {
            estimator: kind,
            raw_bits: est.raw,
            clamped_bits: est.clamped.bits(),
            entropy_hc: est.clamped.bits() / n1,
            winner,
        });
    }
    let compressed = kinds.iter().any(|k| k.uses_compressor());
    Ok(EstimateReport {
        source: source.to_string(),
        mode,
        n: pattern.len(),
        k_inferred: infer_alphabet(pattern).len(),
        k_declared: pattern.has_declared_alphabet().then(|| pattern.k()),
        estimates,
        compressor: compressed.then(|| config.compressor.describe()),
        calibration_key: kinds
            .contains(&EstimatorKind::Compression)
            .then(|| config.calibration_key(pattern.len(), pattern.k())),
    })
}

/// Named pass/fail outcome of a qualitative check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ReportDocument {
    pub reports: Vec<EstimateReport>,
    pub property_reports: Vec<PropertyReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckOutcome>,
}

pub fn write_json(out: &mut dyn Write, doc: &ReportDocument) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out).map_err(|e| crate::Error::io("<output>", e))
}

fn f6(v: f64) -> String {
    format!("{v:.6}")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn write_estimates_csv(out: &mut dyn Write, reports: &[EstimateReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "source",
        "mode",
        "n",
        "k_inferred",
        "k_declared",
        "estimator",
        "raw_bits",
        "clamped_bits",
        "entropy_hc",
        "winner",
        "compressor",
        "calibration_key",
    ])?;
    for r in reports {
        for e in &r.estimates {
            w.write_record([
                r.source.clone(),
                r.mode.to_string(),
                r.n.to_string(),
                r.k_inferred.to_string(),
                opt(&r.k_declared),
                e.estimator.to_string(),
                f6(e.raw_bits),
                f6(e.clamped_bits),
                f6(e.entropy_hc),
                opt(&e.winner),
                opt(&r.compressor),
                opt(&r.calibration_key),
            ])?;
        }
    }
    w.flush().map_err(|e| crate::Error::io("<output>", e))
}

pub fn estimates_table(reports: &[EstimateReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let declared = r
            .k_declared
            .map(|k| format!(", declared k={k}"))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "{} [{}] n={} k={}{}",
            r.source, r.mode, r.n, r.k_inferred, declared
        );
        let _ = writeln!(
            s,
            "  {:<11} {:>16} {:>16} {:>12}",
            "estimator", "raw_bits", "clamped_bits", "entropy_hc"
        );
        for e in &r.estimates {
            let winner = e
                .winner
                .as_ref()
                .map(|w| format!("  ({w})"))
                .unwrap_or_default();
            let _ = writeln!(
                s,
                "  {:<11} {:>16} {:>16} {:>12}{}",
                e.estimator.as_str(),
                f6(e.raw_bits),
                f6(e.clamped_bits),
                f6(e.entropy_hc),
                winner
            );
        }
        if let Some(key) = &r.calibration_key {
            let _ = writeln!(s, "  calibration {key}");
        }
    }
    s
}

pub fn write_property_csv(out: &mut dyn Write, reports: &[PropertyReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "property",
        "estimator",
        "class",
        "trials",
        "violations",
        "worst_violation_bits",
        "tolerance",
        "seed",
    ])?;
    for r in reports {
        w.write_record([
            r.property.as_str().to_string(),
            r.estimator.clone(),
            format!("{:?}", r.class).to_lowercase(),
            r.trials.to_string(),
            r.violations.to_string(),
            f6(r.worst_violation_bits),
            format!("{:e}", r.tolerance),
            r.seed.to_string(),
        ])?;
    }
    w.flush().map_err(|e| crate::Error::io("<output>", e))
}

pub fn property_table(reports: &[PropertyReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let status = match (r.passed(), r.class) {
            (true, _) => "PASS",
            (false, crate::properties::PropertyClass::Assert) => "FAIL",
            (false, crate::properties::PropertyClass::Observe) => "OBSERVED",
        };
        let _ = writeln!(
            s,
            "{status:<8} {:<14} {:<18} {:<7} trials={:<6} violations={:<6} worst={} tol={:e}",
            r.property.as_str(),
            r.estimator,
            format!("{:?}", r.class).to_lowercase(),
            r.trials,
            r.violations,
            f6(r.worst_violation_bits),
            r.tolerance
        );
    }
    s
}

/// Columns of the corpus comparison matrix.
pub const COMPARE_COLUMNS: [(&str, EstimatorKind); 4] = [
    ("M", EstimatorKind::Max),
    ("S", EstimatorKind::ModifiedShannon),
    ("T", EstimatorKind::Compression),
    ("K", EstimatorKind::OracleNormalized),
];

fn matrix_value(r: &EstimateReport, kind: EstimatorKind) -> f64 {
    r.clamped(kind).unwrap_or(f64::NAN)
}

pub fn compare_table(reports: &[EstimateReport], checks: &[CheckOutcome]) -> String {
    let mut s = format!("{:<12}", "row");
    for (name, _) in COMPARE_COLUMNS {
        let _ = write!(s, " {name:>14}");
    }
    s.push('\n');
    for r in reports {
        let _ = write!(s, "{:<12}", r.source);
        for (_, kind) in COMPARE_COLUMNS {
            let _ = write!(s, " {:>14}", f6(matrix_value(r, kind)));
        }
        s.push('\n');
    }
    s.push('\n');
    for c in checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{status} {}: {}", c.check, c.detail);
    }
    s
}

/// Matrix block, a blank line, then the checks block.
pub fn write_compare_csv(
    out: &mut dyn Write,
    reports: &[EstimateReport],
    checks: &[CheckOutcome],
) -> Result<()> {
    {
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(["row", "M", "S", "T", "K"])?;
        for r in reports {
            let mut rec = vec![r.source.clone()];
            rec.extend(COMPARE_COLUMNS.iter().map(|&(_, k)| f6(matrix_value(r, k))));
            w.write_record(rec)?;
        }
        w.flush().map_err(|e| crate::Error::io("<output>", e))?;
    }
    writeln!(out).map_err(|e| crate::Error::io("<output>", e))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["check", "passed", "detail"])?;
    for c in checks {
        w.write_record([
            c.check.as_str(),
            if c.passed { "true" } else { "false" },
            c.detail.as_str(),
        ])?;
    }
    w.flush().map_err(|e| crate::Error::io("<output>", e))
}

/// Grouped bar chart, one group per row, bars M/S/T/K.
pub fn compare_svg(reports: &[EstimateReport]) -> String {
    const COLORS: [&str; 4] = ["#4c72b0", "#dd8452", "#55a868", "#c44e52"];
    let (bar_w, gap, group_gap, height, top, left) = (22.0, 4.0, 36.0, 260.0, 30.0, 60.0);
    let group_w = 4.0 * bar_w + 3.0 * gap;
    let width = left + reports.len() as f64 * (group_w + group_gap) + group_gap;
    let peak = reports
        .iter()
        .flat_map(|r| {
            COMPARE_COLUMNS
                .iter()
                .map(move |&(_, k)| matrix_value(r, k))
        })
        .filter(|v| v.is_finite())
        .fold(1.0, f64::max);
    let base = top + height;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{:.0}" font-family="sans-serif" font-size="11">"#,
        base + 50.0
    );
    let _ = writeln!(
        s,
        r#"<line x1="{left}" y1="{base}" x2="{width:.0}" y2="{base}" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="4" y="{:.1}">{:.0} bits</text>"#,
        top + 4.0,
        peak
    );
    for (i, r) in reports.iter().enumerate() {
        let x0 = left + group_gap + i as f64 * (group_w + group_gap);
        for (j, &(name, kind)) in COMPARE_COLUMNS.iter().enumerate() {
            let v = matrix_value(r, kind);
            let h = if v.is_finite() {
                v / peak * height
            } else {
                0.0
            };
            let x = x0 + j as f64 * (bar_w + gap);
            let _ = writeln!(
                s,
                r#"<rect x="{x:.1}" y="{:.1}" width="{bar_w}" height="{h:.1}" fill="{}"><title>{name} = {}</title></rect>"#,
                base - h,
                COLORS[j],
                f6(v)
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{name}</text>"#,
                x + bar_w / 2.0,
                base + 14.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            x0 + group_w / 2.0,
            base + 32.0,
            xml_escape(&r.source)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Bits as they appear in table output.
pub fn format_bits(b: InfoBits) -> String {
    f6(b.bits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compression::SerializationMode;

    fn sample() -> EstimateReport {
        let cfg = EstimatorConfig::in_memory(SerializationMode::ByteIdentity);
        let p = Pattern::from_bytes(b"abracadabra");
        analyze_pattern("x.bin", Tokenization::Byte, &p, &EstimatorKind::ALL, &cfg).unwrap()
    }

    #[test]
    fn report_fields() {
        let r = sample();
        assert_eq!(r.n, 11);
        assert_eq!(r.k_inferred, 5);
        assert_eq!(r.k_declared, None);
        assert_eq!(r.estimates.len(), 7);
        assert_eq!(r.calibration_key.as_deref(), Some("11:5:byte:gzip9:24301"));
        let ens = r
            .estimates
            .iter()
            .find(|e| e.estimator == EstimatorKind::EnsembleMin)
            .unwrap();
        assert!(ens.winner.is_some());
        for e in &r.estimates {
            assert!((e.entropy_hc - e.clamped_bits / 12.0).abs() < 1e-15);
        }
    }

    #[test]
    fn json_round_trip() {
        let doc = ReportDocument {
            reports: vec![sample()],
            property_reports: vec![],
            checks: vec![],
        };
        let mut buf = Vec::new();
        write_json(&mut buf, &doc).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"property_reports\""));
        assert!(text.contains("\"clamped_bits\""));
        assert!(text.contains("\"mshannon\""));
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.reports, doc.reports);
    }

    #[test]
    fn csv_has_six_decimals() {
        let mut buf = Vec::new();
        write_estimates_csv(&mut buf, &[sample()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row = text.lines().nth(1).unwrap();
        assert!(
            row.starts_with("x.bin,byte,11,5,,min,3.584963,3.584963,0.298747"),
            "{row}"
        );
    }

    #[test]
    fn svg_is_well_formed_text() {
        let svg = compare_svg(&[sample()]);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<rect").count(), 4);
    }
}
