//! Closed-form right-hand sides of the generalization bounds.

use crate::algorithms::forgetting_depth;
use crate::error::{invalid, Result};

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= 1.0) {
        return invalid(format!("delta must lie in (0, 1], got {delta}"));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return invalid("n must be positive");
    }
    Ok(())
}

/// `b sqrt(8 ln(2/δ) / n)`, the concentration term shared by the
/// high-probability bounds.
pub fn concentration_term(b: f64, n: usize, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    check_n(n)?;
    Ok(b * (8.0 * (2.0 / delta).ln() / n as f64).sqrt())
}

/// `4 ρ + b sqrt(8 ln(2/δ) / n)`, where `ρ` estimates the essential supremum
/// of the ARC. A finite-sample maximum can only under-estimate it.
pub fn highprob_rhs(rad_essup_estimate: f64, b: f64, n: usize, delta: f64) -> Result<f64> {
    if !(rad_essup_estimate >= 0.0) {
        return invalid("ARC estimate must be nonnegative");
    }
    Ok(4.0 * rad_essup_estimate + concentration_term(b, n, delta)?)
}

/// High-probability bound for projected SGD:
/// `4b sqrt(m ln2 / n) + b sqrt(8 ln(2/δ) / n) + 2L/n` with
/// `m = forgetting_depth(R, γ, 1/(2n))`.
pub fn sgd_rhs(b: f64, r: f64, n: usize, gamma: f64, l: f64, delta: f64) -> Result<f64> {
    check_n(n)?;
    let m = forgetting_depth(r, gamma, 0.5 / n as f64)?;
    let head = 4.0 * b * (m as f64 * std::f64::consts::LN_2 / n as f64).sqrt();
    Ok(head + concentration_term(b, n, delta)? + 2.0 * l / n as f64)
}

/// `sqrt(k ln(2en/k) / (2n))` for a k-compression scheme with losses in
/// `[0, 1]`.
pub fn compression_rhs(k: usize, n: usize) -> Result<f64> {
    if k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n, got k = {k}, n = {n}"));
    }
    let (k, n) = (k as f64, n as f64);
    Ok((k * (2.0 * std::f64::consts::E * n / k).ln() / (2.0 * n)).sqrt())
}

/// `sqrt(2V ln(en/V) / n)`: Massart's lemma applied to Sauer's growth bound
/// `(en/V)^V`, for losses in `[0, 1]`.
pub fn vc_rhs(v: usize, n: usize) -> Result<f64> {
    if v == 0 || n <= v {
        return invalid(format!("need n > V >= 1, got V = {v}, n = {n}"));
    }
    let (v, n) = (v as f64, n as f64);
    Ok((2.0 * v * (std::f64::consts::E * n / v).ln() / n).sqrt())
}

/// `C(n, k)` in floating point, exact for the sizes used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
