//! Base-2 logarithms of finite geometric series.

use std::f64::consts::LN_2;

/// Above this many bits of `base^(n+1)` the series is evaluated in closed form.
pub const EXACT_THRESHOLD_BITS: f64 = 512.0;

/// Direct summation is also capped by term count; past this the closed form
/// is used even when the total stays below the bit threshold.
pub const MAX_DIRECT_TERMS: u64 = 1 << 20;

/// `log2(Σ_{i=0}^{n} b^i)` where `b = 2^log2_base` and `log2_base >= 0`.
///
/// Small series are summed term by term with compensated summation; large
/// ones use `n·log2 b + log2(1 - b^-(n+1)) - log2(1 - 1/b)` with the
/// `1 - e^-x` factors evaluated through `expm1`, so nothing overflows.
pub fn log2_geometric_sum(n: u64, log2_base: f64) -> f64 {
    debug_assert!(log2_base >= 0.0 && log2_base.is_finite());
    if n == 0 {
        return 0.0;
    }
    if log2_base <= 0.0 {
        return ((n + 1) as f64).log2();
    }
    let total = (n + 1) as f64 * log2_base;
    if total <= EXACT_THRESHOLD_BITS && n < MAX_DIRECT_TERMS {
        direct_sum(n, log2_base).log2()
    } else {
        closed_form(n, log2_base)
    }
}

fn direct_sum(n: u64, log2_base: f64) -> f64 {
    // Neumaier summation
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for i in 0..=n {
        let term = (i as f64 * log2_base).exp2();
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn closed_form(n: u64, log2_base: f64) -> f64 {
    let ln_base = log2_base * LN_2;
    let x = (n + 1) as f64 * ln_base;
    let head = (-(-x).exp_m1()).ln();
    let tail = (-(-ln_base).exp_m1()).ln();
    (n as f64 * ln_base + head - tail) / LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cases() {
        assert_eq!(log2_geometric_sum(0, 3.0), 0.0);
        assert_eq!(log2_geometric_sum(7, 0.0), 3.0);
        assert!((log2_geometric_sum(3, 1.0) - 15f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn branches_agree_near_threshold() {
        for &(n, b) in &[
            (100u64, 1.0f64),
            (255, 2.0),
            (50, 0.3),
            (1000, 0.01),
            (10, 7.9),
        ] {
            let d = direct_sum(n, b).log2();
            let c = closed_form(n, b);
            assert!((d - c).abs() < 1e-9, "n={n} b={b}: {d} vs {c}");
        }
    }

    #[test]
    fn huge_series_does_not_overflow() {
        let v = log2_geometric_sum(1_000_000, 8.0);
        assert!(v.is_finite());
        assert!((v - 8_000_000.0).abs() < 0.01);
    }
}
