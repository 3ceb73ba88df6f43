// Log-domain evaluation of the analytic bounds around the doubling lemma.

use std::f64::consts::LN_2;
use std::fmt::Write as _;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// `3 + 9 ln 4 = ln(e^3 4^9)`.
fn ln_e3_4_9() -> f64 {
    3.0 + 18.0 * LN_2
}

/// `ln f(α)` for `f(α) = α^7 e^3 4^9 (1 - α)^(10(1/α - 1))`.
pub fn figure1_ln(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("figure1 needs 0 < alpha < 1, got {alpha}")));
    }
    Ok(7.0 * alpha.ln() + ln_e3_4_9() + 10.0 * (1.0 / alpha - 1.0) * (-alpha).ln_1p())
}

pub fn figure1_f(alpha: f64) -> Result<f64> {
    figure1_ln(alpha).map(f64::exp)
}

pub const FIGURE1_LO: f64 = 1.0 / 11.0;
pub const FIGURE1_HI: f64 = 1.0 / 3.0;

/// Grid `lo, lo + step, ..` up to and including `hi`.
pub fn figure1_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && lo <= hi) {
        return Err(Error::InvalidParameter(format!("bad grid [{lo}, {hi}] step {step}")));
    }
    let steps = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=steps).map(|i| lo + i as f64 * step).collect();
    if hi - grid[steps] > 1e-12 {
        grid.push(hi);
    }
    Ok(grid)
}

/// `(argmax, max)` of `f` over the grid on `[1/11, 1/3]`.
pub fn figure1_grid_max(step: f64) -> Result<(f64, f64)> {
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for a in figure1_grid(FIGURE1_LO, FIGURE1_HI, step)? {
        let v = figure1_f(a)?;
        if v > best.1 {
            best = (a, v);
        }
    }
    Ok(best)
}

pub fn figure1_csv(step: f64) -> Result<String> {
    let mut out = String::from("alpha,value\n");
    for a in figure1_grid(FIGURE1_LO, FIGURE1_HI, step)? {
        let _ = writeln!(out, "{a:.8},{:.10}", figure1_f(a)?);
    }
    Ok(out)
}

/// Line plot on the fixed window `[1/11, 1/3] x [0, 1]`.
pub fn figure1_svg(step: f64) -> Result<String> {
    let (w, h, pad) = (640.0, 400.0, 40.0);
    let x = |a: f64| pad + (a - FIGURE1_LO) / (FIGURE1_HI - FIGURE1_LO) * (w - 2.0 * pad);
    let y = |v: f64| h - pad - v.clamp(0.0, 1.0) * (h - 2.0 * pad);
    let mut points = String::new();
    for a in figure1_grid(FIGURE1_LO, FIGURE1_HI, step)? {
        let _ = write!(points, "{:.2},{:.2} ", x(a), y(figure1_f(a)?));
    }
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">"#);
    let _ = writeln!(
        out,
        r#"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        w - 2.0 * pad,
        h - 2.0 * pad
    );
    let _ = writeln!(
        out,
        r#"<line x1="{pad}" y1="{y34:.2}" x2="{}" y2="{y34:.2}" stroke="gray" stroke-dasharray="4"/>"#,
        w - pad,
        y34 = y(0.75)
    );
    let _ = writeln!(out, r#"<polyline fill="none" stroke="blue" points="{}"/>"#, points.trim_end());
    let _ = writeln!(out, r#"<text x="{pad}" y="{}">1/11</text>"#, h - pad / 4.0);
    let _ = writeln!(out, r#"<text x="{}" y="{}">1/3</text>"#, w - pad - 20.0, h - pad / 4.0);
    out.push_str("</svg>\n");
    Ok(out)
}

/// `ln p(x)` for `p(x) = [(x/k)^7 e^3 4^9]^x`; `x` may be fractional.
pub fn p_ln(x: f64, k: f64) -> f64 {
    x * (7.0 * (x / k).ln() + ln_e3_4_9())
}

pub fn p_poly(x: f64, k: f64) -> f64 {
    p_ln(x, k).exp()
}

/// `ln C(n, j)`: an exact product for small `min(j, n - j)`, log-gamma otherwise.
pub fn ln_binom(n: u64, j: u64) -> f64 {
    if j > n {
        return f64::NEG_INFINITY;
    }
    let j = j.min(n - j);
    if j <= 10_000 {
        (0..j).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
    } else {
        ln_gamma(n as f64 + 1.0) - ln_gamma(j as f64 + 1.0) - ln_gamma((n - j) as f64 + 1.0)
    }
}

/// `ln` of `2 C(k,x) C(k,2x) [(2x)^(2x) (k-x)^(k-x) / (x^x k^k)]^r`, the
/// bound on the expected number of non-doubling pairs `(X, Y)` with `|X| = x`.
pub fn expected_pairs_ln(x: u64, k: u64, r: u64) -> Result<f64> {
    if x < 1 || 3 * x > k {
        return Err(Error::InvalidParameter(format!("need 1 <= x <= k/3, got x = {x}, k = {k}")));
    }
    let (xf, kf) = (x as f64, k as f64);
    // (k-x) ln(k-x) - k ln k, rearranged to keep precision at large k
    let tail = -xf * kf.ln() + (kf - xf) * (-xf / kf).ln_1p();
    let inner = 2.0 * xf * (2.0 * xf).ln() - xf * xf.ln() + tail;
    Ok(LN_2 + ln_binom(k, x) + ln_binom(k, 2 * x) + r as f64 * inner)
}

pub fn expected_pairs_bound(x: u64, k: u64, r: u64) -> Result<f64> {
    expected_pairs_ln(x, k, r).map(f64::exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_at_one_third() {
        // ln f(1/3) = -7 ln 3 + 3 + 9 ln 4 + 20 ln(2/3)
        let expected = (-7.0 * 3f64.ln() + 3.0 + 9.0 * 4f64.ln() + 20.0 * (2.0f64 / 3.0).ln()).exp();
        assert!((figure1_f(1.0 / 3.0).unwrap() - expected).abs() < 1e-12);
        assert!((figure1_f(1.0 / 3.0).unwrap() - 0.7240180668).abs() < 1e-9);
        assert!(figure1_f(1e-3).unwrap() < 1e-10);
        assert!(figure1_f(0.0).is_err() && figure1_f(1.0).is_err());
    }

    #[test]
    fn grid_includes_endpoint() {
        let g = figure1_grid(0.0, 1.0, 0.3).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert_eq!(figure1_grid(0.0, 1.0, 0.25).unwrap().len(), 5);
    }

    #[test]
    fn binomials() {
        assert!((ln_binom(10, 3) - 120f64.ln()).abs() < 1e-12);
        assert!((ln_binom(40_000, 20_000) - (ln_gamma(40_001.0) - 2.0 * ln_gamma(20_001.0))).abs() < 1e-6);
        assert_eq!(ln_binom(3, 5), f64::NEG_INFINITY);
    }

    #[test]
    fn p_of_one() {
        let k = 1e7f64;
        let direct = 3f64.exp() * 4f64.powi(9) / k.powi(7);
        assert!((p_poly(1.0, k) / direct - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expected_pairs_is_finite_at_the_top() {
        let v = expected_pairs_bound(100, 300, 10).unwrap();
        assert!(v.is_finite() && v > 0.0);
        assert!(expected_pairs_ln(101, 300, 10).is_err());
    }
}
