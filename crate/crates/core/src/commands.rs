//! Subcommand implementations behind the `patinfo` binary.
//!
//! Each `cmd_*` writes its report to `out`, diagnostics to `err`, and returns
//! the process exit code: 0 success, 1 failed assertion, 2 usage or input
//! error.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Args;
use rayon::prelude::*;

use crate::analysis::EstimatorConfig;
use crate::compression::{CalibrationCache, CalibrationFlavor, SerializationMode, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::estimators::EstimatorKind;
use crate::generators::{self, GeneratorSpec};
use crate::pattern::{Pattern, Tokenization};
use crate::properties::{self, PropertyId};
use crate::report::{self, CheckOutcome, EstimateReport, Format, ReportDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_ANALYZE_ESTIMATORS: &str = "min,max,mshannon,gzip,kolmogorov";
pub const DEFAULT_CHECK_ESTIMATORS: &str = "min,max,mshannon";

/// Rows of the corpus comparison, read from `<row>.txt`.
pub const COMPARE_ROWS: [&str; 4] = ["fibonacci", "english", "random", "structured"];

/// Allowed relative gap between S and T on the english row.
pub const ENGLISH_TOLERANCE: f64 = 0.25;

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    /// Tokenization: byte, char, line or token.
    #[arg(long, default_value = "byte")]
    pub mode: Tokenization,
    /// Comma-separated estimators: min, max, shannon, mshannon, gzip, kolmogorov, ensemble.
    #[arg(long, default_value = DEFAULT_ANALYZE_ESTIMATORS)]
    pub estimators: String,
    /// Declared alphabet size; must cover the observed symbols.
    #[arg(long = "alphabet-size")]
    pub alphabet_size: Option<usize>,
    /// Output format: table, csv or json.
    #[arg(long, default_value = "table")]
    pub format: Format,
    /// Compression calibration measure: bits or mark.
    #[arg(long, default_value = "bits")]
    pub calibration: CalibrationFlavor,
    /// Input files; standard input when none are given.
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    /// constant, uniform, markov, fib, circles, repeat, redundant-random or english.
    #[arg(long)]
    pub kind: String,
    /// Pattern length.
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Alphabet size for `uniform`.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Symbol for `constant`.
    #[arg(long, default_value_t = 'a')]
    pub symbol: char,
    /// Rows separated by `;`, entries by `,`, for `markov`.
    #[arg(long)]
    pub transitions: Option<String>,
    #[arg(long, default_value_t = 40)]
    pub width: usize,
    #[arg(long, default_value_t = 25)]
    pub height: usize,
    #[arg(long = "ring-step", default_value_t = generators::DEFAULT_RING_STEP)]
    pub ring_step: usize,
    #[arg(long = "ring-width", default_value_t = generators::DEFAULT_RING_WIDTH)]
    pub ring_width: usize,
    /// Base pattern for `repeat`.
    #[arg(long)]
    pub base: Option<String>,
    /// Repeat count for `repeat`.
    #[arg(long)]
    pub repeats: Option<usize>,
    #[arg(long = "copy-probability", default_value_t = generators::DEFAULT_COPY_PROBABILITY)]
    pub copy_probability: f64,
    /// Text file for `english`.
    #[arg(long)]
    pub path: Option<PathBuf>,
    /// Written between symbols.
    #[arg(long, default_value = "")]
    pub separator: String,
    /// Start a new line every N symbols.
    #[arg(long)]
    pub wrap: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Directory holding fibonacci.txt, english.txt, random.txt and structured.txt.
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long, default_value = "table")]
    pub format: Format,
    /// Also write an SVG bar chart here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, default_value = "token")]
    pub mode: Tokenization,
    /// Calibration seed.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Comma-separated: normalization, subadditivity, reversibility, monotonicity, redundancy, ordering.
    #[arg(
        long,
        default_value = "normalization,subadditivity,reversibility,monotonicity,redundancy,ordering"
    )]
    pub properties: String,
    #[arg(long, default_value = DEFAULT_CHECK_ESTIMATORS)]
    pub estimators: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "table")]
    pub format: Format,
}

fn fail(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "patinfo: error: {e}");
    EXIT_USAGE
}

/// Opens the calibration cache at its default location, falling back to an
/// in-memory cache with a warning when the file is unreadable.
pub fn open_default_cache(err: &mut dyn Write) -> Arc<CalibrationCache> {
    let path = CalibrationCache::default_path();
    match CalibrationCache::open(&path) {
        Ok(c) => Arc::new(c),
        Err(e) => {
            let _ = writeln!(err, "patinfo: warning: ignoring calibration cache: {e}");
            Arc::new(CalibrationCache::in_memory())
        }
    }
}

fn save_cache(cache: &CalibrationCache, err: &mut dyn Write) {
    if let Err(e) = cache.save() {
        let _ = writeln!(err, "patinfo: warning: calibration cache not saved: {e}");
    }
}

fn load(source: &Path, mode: Tokenization, declared: Option<usize>) -> Result<Pattern> {
    let bytes = std::fs::read(source).map_err(|e| Error::io(source, e))?;
    tokenize(&bytes, mode, declared)
}

fn tokenize(bytes: &[u8], mode: Tokenization, declared: Option<usize>) -> Result<Pattern> {
    let p = mode.tokenize(bytes)?;
    match declared {
        Some(k) => p.with_alphabet_size(k),
        None => Ok(p),
    }
}

pub fn cmd_analyze(
    args: &AnalyzeArgs,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
    cache: Arc<CalibrationCache>,
) -> i32 {
    let kinds = match EstimatorKind::parse_list(&args.estimators) {
        Ok(k) => k,
        Err(e) => return fail(err, &e),
    };
    let mut config = EstimatorConfig::new(SerializationMode::for_tokenization(args.mode), cache);
    config.flavor = args.calibration;
    let reports: Result<Vec<EstimateReport>> = if args.files.is_empty() {
        let mut bytes = Vec::new();
        stdin
            .read_to_end(&mut bytes)
            .map_err(|e| Error::io("<stdin>", e))
            .and_then(|_| tokenize(&bytes, args.mode, args.alphabet_size))
            .and_then(|p| report::analyze_pattern("-", args.mode, &p, &kinds, &config))
            .map(|r| vec![r])
    } else {
        args.files
            .par_iter()
            .map(|f| {
                let p = load(f, args.mode, args.alphabet_size)?;
                report::analyze_pattern(&f.display().to_string(), args.mode, &p, &kinds, &config)
            })
            .collect()
    };
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return fail(err, &e),
    };
    save_cache(&config.cache, err);
    let written = match args.format {
        Format::Table => out
            .write_all(report::estimates_table(&reports).as_bytes())
            .map_err(|e| Error::io("<output>", e)),
        Format::Csv => report::write_estimates_csv(out, &reports),
        Format::Json => report::write_json(
            out,
            &ReportDocument {
                reports,
                ..Default::default()
            },
        ),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => fail(err, &e),
    }
}

fn parse_transitions(s: &str) -> Result<Vec<Vec<f64>>> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::InvalidSpec(format!("transition entry `{v}`: {e}")))
                })
                .collect()
        })
        .collect()
}

/// Translates generator flags into a spec.
pub fn generator_spec(args: &GenerateArgs) -> Result<GeneratorSpec> {
    let need_len = || {
        args.length.ok_or_else(|| {
            Error::InvalidSpec(format!("--length is required for kind `{}`", args.kind))
        })
    };
    let spec = match args.kind.as_str() {
        "constant" => GeneratorSpec::Constant {
            n: need_len()?,
            symbol: args.symbol,
        },
        "uniform" => GeneratorSpec::UniformRandom {
            n: need_len()?,
            k: args.k,
            seed: args.seed,
        },
        "markov" => GeneratorSpec::Markov {
            n: need_len()?,
            transitions: parse_transitions(args.transitions.as_deref().ok_or_else(|| {
                Error::InvalidSpec("--transitions is required for kind `markov`".into())
            })?)?,
            seed: args.seed,
        },
        "fib" => GeneratorSpec::FibonacciDigits { n: need_len()? },
        "circles" => GeneratorSpec::StructuredCircles {
            width: args.width,
            height: args.height,
            ring_step: args.ring_step,
            ring_width: args.ring_width,
        },
        "repeat" => GeneratorSpec::RedundantRepeat {
            base: args
                .base
                .clone()
                .ok_or_else(|| Error::InvalidSpec("--base is required for kind `repeat`".into()))?,
            r: args.repeats.ok_or_else(|| {
                Error::InvalidSpec("--repeats is required for kind `repeat`".into())
            })?,
        },
        "redundant-random" => GeneratorSpec::RedundantRandom {
            n: need_len()?,
            copy_probability: args.copy_probability,
            seed: args.seed,
        },
        "english" => GeneratorSpec::EnglishTextFile {
            path: args.path.clone().ok_or_else(|| {
                Error::InvalidSpec("--path is required for kind `english`".into())
            })?,
            n: args.length,
        },
        other => {
            return Err(Error::InvalidSpec(format!(
                "unknown generator kind `{other}`"
            )))
        }
    };
    Ok(spec)
}

/// Symbols joined by `separator`, with a newline every `wrap` symbols.
pub fn render_pattern(p: &Pattern, separator: &str, wrap: Option<usize>) -> Vec<u8> {
    let mut s = Vec::new();
    for (i, sym) in p.symbols().iter().enumerate() {
        if i > 0 {
            match wrap {
                Some(w) if w > 0 && i % w == 0 => s.push(b'\n'),
                _ => s.extend_from_slice(separator.as_bytes()),
            }
        }
        sym.write_raw(&mut s);
    }
    if wrap.is_some() && !p.is_empty() {
        s.push(b'\n');
    }
    s
}

pub fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = generator_spec(args).and_then(|spec| {
        let p = generators::generate(&spec)?;
        if let Some(n) = args.length {
            if p.len() != n {
                return Err(Error::InvalidSpec(format!(
                    "kind `{}` produced {} symbols, --length is {n}",
                    args.kind,
                    p.len()
                )));
            }
        }
        Ok(p)
    });
    match result {
        Ok(p) => match out.write_all(&render_pattern(&p, &args.separator, args.wrap)) {
            Ok(()) => EXIT_OK,
            Err(e) => fail(err, &Error::io("<output>", e)),
        },
        Err(e) => fail(err, &e),
    }
}

/// Qualitative orderings expected of the comparison matrix.
pub fn compare_checks(reports: &[EstimateReport]) -> Vec<CheckOutcome> {
    let row = |name: &str| reports.iter().find(|r| r.source == name);
    let st = |name: &str| {
        row(name).map(|r| {
            (
                r.clamped(EstimatorKind::ModifiedShannon)
                    .unwrap_or(f64::NAN),
                r.clamped(EstimatorKind::Compression).unwrap_or(f64::NAN),
            )
        })
    };
    let mut checks = Vec::new();
    if let Some((s, t)) = st("structured") {
        checks.push(CheckOutcome {
            check: "structured T < S".into(),
            passed: t < s,
            detail: format!("T={t:.6} S={s:.6}"),
        });
    }
    if let Some((s, t)) = st("english") {
        let gap = (s - t).abs() / s;
        checks.push(CheckOutcome {
            check: format!("english |S-T|/S <= {ENGLISH_TOLERANCE}"),
            passed: gap <= ENGLISH_TOLERANCE,
            detail: format!("{gap:.6}"),
        });
    }
    let mut worst = f64::NEG_INFINITY;
    let mut all_below = true;
    for r in reports {
        let m = r.clamped(EstimatorKind::Max).unwrap_or(f64::NAN);
        for e in &r.estimates {
            let excess = e.clamped_bits - m;
            worst = worst.max(excess);
            all_below &= excess <= properties::EXACT_TOLERANCE;
        }
    }
    checks.push(CheckOutcome {
        check: "every estimate <= M".into(),
        passed: all_below,
        detail: format!("max excess {worst:.6}"),
    });
    if let Some((s, t)) = st("fibonacci") {
        checks.push(CheckOutcome {
            check: "fibonacci T <= S".into(),
            passed: t <= s,
            detail: format!("T={t:.6} S={s:.6}"),
        });
    }
    checks
}

/// Reports for each comparison row in `corpus`, in row order.
pub fn compare_reports(
    corpus: &Path,
    mode: Tokenization,
    config: &EstimatorConfig,
) -> Result<Vec<EstimateReport>> {
    let kinds: Vec<EstimatorKind> = report::COMPARE_COLUMNS.iter().map(|&(_, k)| k).collect();
    COMPARE_ROWS
        .par_iter()
        .map(|row| {
            let p = load(&corpus.join(format!("{row}.txt")), mode, None)?;
            report::analyze_pattern(row, mode, &p, &kinds, config)
        })
        .collect()
}

pub fn cmd_compare(
    args: &CompareArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
    cache: Arc<CalibrationCache>,
) -> i32 {
    let mut config = EstimatorConfig::new(SerializationMode::for_tokenization(args.mode), cache);
    config.seed = args.seed;
    let reports = match compare_reports(&args.corpus, args.mode, &config) {
        Ok(r) => r,
        Err(e) => return fail(err, &e),
    };
    save_cache(&config.cache, err);
    let checks = compare_checks(&reports);
    if let Some(path) = &args.svg {
        if let Err(e) = std::fs::write(path, report::compare_svg(&reports)) {
            return fail(err, &Error::io(path, e));
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    let written = match args.format {
        Format::Table => out
            .write_all(report::compare_table(&reports, &checks).as_bytes())
            .map_err(|e| Error::io("<output>", e)),
        Format::Csv => report::write_compare_csv(out, &reports, &checks),
        Format::Json => report::write_json(
            out,
            &ReportDocument {
                reports,
                property_reports: Vec::new(),
                checks,
            },
        ),
    };
    match written {
        Ok(()) if passed => EXIT_OK,
        Ok(()) => EXIT_ASSERT,
        Err(e) => fail(err, &e),
    }
}

pub fn cmd_check(
    args: &CheckArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
    cache: Arc<CalibrationCache>,
) -> i32 {
    let parsed = PropertyId::parse_list(&args.properties)
        .and_then(|p| EstimatorKind::parse_list(&args.estimators).map(|e| (p, e)));
    let (props, kinds) = match parsed {
        Ok(v) => v,
        Err(e) => return fail(err, &e),
    };
    if args.trials == 0 {
        return fail(err, &Error::InvalidSpec("--trials must be positive".into()));
    }
    let config = EstimatorConfig::new(SerializationMode::Utf8, cache);
    let reports = match properties::run_suite(&props, &kinds, args.trials, args.seed, &config) {
        Ok(r) => r,
        Err(e) => return fail(err, &e),
    };
    if kinds.iter().any(|k| k.uses_compressor()) {
        save_cache(&config.cache, err);
    }
    let failed = reports.iter().any(|r| r.is_failure());
    let written = match args.format {
        Format::Table => out
            .write_all(report::property_table(&reports).as_bytes())
            .map_err(|e| Error::io("<output>", e)),
        Format::Csv => report::write_property_csv(out, &reports),
        Format::Json => report::write_json(
            out,
            &ReportDocument {
                reports: Vec::new(),
                property_reports: reports,
                checks: Vec::new(),
            },
        ),
    };
    match written {
        Ok(()) if failed => EXIT_ASSERT,
        Ok(()) => EXIT_OK,
        Err(e) => fail(err, &e),
    }
}
