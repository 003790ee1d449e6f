//! Floating-point evaluation of the auxiliary sums
//! `h_{A,B}(q) = sum_{n>=1} (-1)^n q^{A n^2 + B n} / (1 - q^n)` and
//! `f_{j,a,b}(z) = sum_{n>=1} (-1)^n n^{-j} q^{(a n^2 + b n)/2}`,
//! together with numeric checks of their pole behavior near `q = 1` and
//! `q = -1`, the away-from-poles bound, and the Mittag-Leffler partial
//! fraction expansion that drives those estimates.
//!
//! The pole lemmas come with unquantified O(1) constants, so the checks
//! here report measured residuals and trends; the asserted baselines live
//! in the test suites, recorded from actual runs.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticError {
    #[error("series did not reach the tolerance within {0} terms")]
    NoConvergence(u64),
    #[error("y = {0} is below the 1e-4 evaluation guard")]
    YBelowGuard(f64),
    #[error("2B = {0} must be odd for the q = -1 pole lemma")]
    BadParity(i64),
    #[error("empty sample band")]
    EmptyBand,
    #[error("w = {0} is within 1e-8 of an integer pole")]
    PoleInput(Complex64),
    #[error("|Im w| = {0} exceeds the overflow guard 10")]
    ImaginaryTooLarge(f64),
    #[error("invalid h-parameters: 2A = {two_a}, 2B = {two_b}")]
    BadHParams { two_a: i64, two_b: i64 },
}

const MAX_TERMS: u64 = 1_000_000;
const Y_GUARD: f64 = 1e-4;

/// Point `z = x + iy` in the upper half-plane with the derived coordinates
/// `tau = z - 1/2`, `q = e^{2 pi i z}` and `Q = e^{2 pi i tau} = -q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub x: f64,
    pub y: f64,
}

impl ComplexPoint {
    pub fn new(x: f64, y: f64) -> Self {
        assert!(y > 0.0, "need y > 0 so that |q| < 1");
        ComplexPoint { x, y }
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::new(self.x - 0.5, self.y)
    }

    pub fn q(&self) -> Complex64 {
        (Complex64::i() * 2.0 * PI * self.z()).exp()
    }

    /// `Q = e^{2 pi i tau} = -q`.
    pub fn big_q(&self) -> Complex64 {
        (Complex64::i() * 2.0 * PI * self.tau()).exp()
    }
}

/// Parameters of `h_{A,B}`: half-integers stored doubled, with `2A` a
/// positive integer and `A + B` a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HParams {
    two_a: i64,
    two_b: i64,
}

impl HParams {
    pub fn new(two_a: i64, two_b: i64) -> Result<Self, AnalyticError> {
        // A + B integral and >= 1 means two_a + two_b even and >= 2.
        if two_a < 1 || (two_a + two_b) % 2 != 0 || two_a + two_b < 2 {
            return Err(AnalyticError::BadHParams { two_a, two_b });
        }
        Ok(HParams { two_a, two_b })
    }

    pub fn two_a(&self) -> i64 {
        self.two_a
    }

    pub fn two_b(&self) -> i64 {
        self.two_b
    }

    /// Exponent `A n^2 + B n` as a float (it is a half-integer times n,
    /// integral in total by the parity constraint).
    fn exponent(&self, n: u64) -> f64 {
        let n = n as f64;
        0.5 * (self.two_a as f64 * n * n + self.two_b as f64 * n)
    }
}

/// Evaluates `h_{A,B}` at `q(pt)` by direct summation, stopping when the
/// current term falls below `tol * (1 + |partial sum|)`.
pub fn eval_h(p: HParams, pt: ComplexPoint, tol: f64) -> Result<Complex64, AnalyticError> {
    if pt.y < Y_GUARD {
        return Err(AnalyticError::YBelowGuard(pt.y));
    }
    let q = pt.q();
    let log_q = Complex64::i() * 2.0 * PI * pt.z();
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=MAX_TERMS {
        let qn = (log_q * n as f64).exp();
        let term = (log_q * p.exponent(n)).exp() / (1.0 - qn);
        let term = if n % 2 == 0 { term } else { -term };
        sum += term;
        if term.norm() < tol * (1.0 + sum.norm()) {
            return Ok(sum);
        }
    }
    let _ = q;
    Err(AnalyticError::NoConvergence(MAX_TERMS))
}

/// Evaluates `f_{j,a,b}(z) = sum (-1)^n n^{-j} q^{(a n^2 + b n)/2}`.
/// Negative `j` is allowed (the estimates use j = -1, 0, 1).
pub fn eval_f(j: i32, a: u32, b: i64, pt: ComplexPoint, tol: f64) -> Result<Complex64, AnalyticError> {
    if pt.y < Y_GUARD {
        return Err(AnalyticError::YBelowGuard(pt.y));
    }
    let log_q = Complex64::i() * 2.0 * PI * pt.z();
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=MAX_TERMS {
        let nf = n as f64;
        let expo = 0.5 * (a as f64 * nf * nf + b as f64 * nf);
        let term = nf.powi(-j) * (log_q * expo).exp();
        let term = if n % 2 == 0 { term } else { -term };
        sum += term;
        if term.norm() < tol * (1.0 + sum.norm()) {
            return Ok(sum);
        }
    }
    Err(AnalyticError::NoConvergence(MAX_TERMS))
}

/// One sampled point of a pole check: the evaluated sum, the predicted
/// main term, and the residual between them.
#[derive(Debug, Clone, Copy)]
pub struct ResidualRow {
    pub y: f64,
    pub value: Complex64,
    pub main: Complex64,
    pub residual: f64,
}

/// Trend verdict for a residual table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Bounded,
    Unbounded,
    InsufficientData,
}

impl std::fmt::Display for Trend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Trend::Bounded => write!(f, "bounded"),
            Trend::Unbounded => write!(f, "unbounded"),
            Trend::InsufficientData => write!(f, "insufficient data"),
        }
    }
}

/// Residual table of a pole-behavior check across a list of heights `y`.
#[derive(Debug, Clone)]
pub struct ResidualTable {
    pub rows: Vec<ResidualRow>,
    pub max_residual: f64,
    /// Whether `residual * y` decreases from the first to the last row and
    /// is nonincreasing across the final half of the rows.
    pub verdict: Trend,
}

fn residual_verdict(rows: &[ResidualRow]) -> Trend {
    if rows.len() < 2 {
        return Trend::InsufficientData;
    }
    let scaled: Vec<f64> = rows.iter().map(|r| r.residual * r.y).collect();
    let first = scaled[0];
    let last = scaled[scaled.len() - 1];
    let tail_ok = scaled[scaled.len() / 2..].windows(2).all(|w| w[1] <= w[0] * 1.05);
    if last < first && tail_ok {
        Trend::Bounded
    } else {
        Trend::Unbounded
    }
}

/// Checks `h_{A,B}(q) = log2 / (2 pi i z) + O(1)` along `x = 0`,
/// `y` descending. Optionally offsets the sample to `x = x_frac * y` to
/// probe the edge of the admissible cone `|x| <= y`.
pub fn check_pole_one_at(
    p: HParams,
    ys: &[f64],
    x_frac: f64,
    tol: f64,
) -> Result<ResidualTable, AnalyticError> {
    assert!((0.0..=1.0).contains(&x_frac), "cone offset must lie in [0,1]");
    let mut rows = Vec::with_capacity(ys.len());
    for &y in ys {
        let pt = ComplexPoint::new(x_frac * y, y);
        let value = eval_h(p, pt, tol)?;
        let main = 2.0_f64.ln() / (Complex64::i() * 2.0 * PI * pt.z());
        rows.push(ResidualRow {
            y,
            value,
            main,
            residual: (value - main).norm(),
        });
    }
    let max_residual = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let verdict = residual_verdict(&rows);
    Ok(ResidualTable {
        rows,
        max_residual,
        verdict,
    })
}

/// [`check_pole_one_at`] sampled at the center of the cone.
pub fn check_pole_one(p: HParams, ys: &[f64], tol: f64) -> Result<ResidualTable, AnalyticError> {
    check_pole_one_at(p, ys, 0.0, tol)
}

/// Checks `h_{A,B}(q) = log2 / (4 pi i tau) + O(1)` along `x = 1/2`.
/// Requires `B` a genuine half-integer (`2B` odd).
pub fn check_pole_minus_one(
    p: HParams,
    ys: &[f64],
    tol: f64,
) -> Result<ResidualTable, AnalyticError> {
    if p.two_b % 2 == 0 {
        return Err(AnalyticError::BadParity(p.two_b));
    }
    let mut rows = Vec::with_capacity(ys.len());
    for &y in ys {
        let pt = ComplexPoint::new(0.5, y);
        let value = eval_h(p, pt, tol)?;
        let main = 2.0_f64.ln() / (Complex64::i() * 4.0 * PI * pt.tau());
        rows.push(ResidualRow {
            y,
            value,
            main,
            residual: (value - main).norm(),
        });
    }
    let max_residual = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let verdict = residual_verdict(&rows);
    Ok(ResidualTable {
        rows,
        max_residual,
        verdict,
    })
}

/// Result of sampling `|h| * y^{3/2}` across the band `y <= x <= 1/2 - y`.
#[derive(Debug, Clone)]
pub struct AwayReport {
    pub y: f64,
    /// `max_x |h_{A,B}| * y^{3/2}` over the sampled points.
    pub scaled_max: f64,
    pub samples: usize,
}

/// Checks the away-from-poles bound `|h_{A,B}(q)| << y^{-3/2}` by
/// measuring `max |h| * y^{3/2}` over sample points `xs` inside the band.
pub fn check_away(p: HParams, y: f64, xs: &[f64], tol: f64) -> Result<AwayReport, AnalyticError> {
    if xs.is_empty() {
        return Err(AnalyticError::EmptyBand);
    }
    let mut scaled_max = 0.0_f64;
    for &x in xs {
        assert!(
            y <= x && x <= 0.5 - y,
            "x = {x} outside the band [{y}, {}]",
            0.5 - y
        );
        let value = eval_h(p, ComplexPoint::new(x, y), tol)?;
        scaled_max = scaled_max.max(value.norm() * y.powf(1.5));
    }
    Ok(AwayReport {
        y,
        scaled_max,
        samples: xs.len(),
    })
}

/// `count` equispaced points covering the closed band `[y, 1/2 - y]`.
pub fn band_points(y: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2);
    let lo = y;
    let hi = 0.5 - y;
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Both sides of the Mittag-Leffler expansion
/// `e^{pi i w}/(1 - e^{2 pi i w}) = 1/(-2 pi i w)
///    + 1/(-2 pi i) sum_{k>=1} (-1)^k (1/(w-k) + 1/(w+k))`
/// with the right side truncated at `k = k_terms`.
#[derive(Debug, Clone, Copy)]
pub struct MittagLefflerCheck {
    pub lhs: Complex64,
    pub partial_rhs: Complex64,
    pub gap: f64,
}

pub fn mittag_leffler_check(
    w: Complex64,
    k_terms: u32,
) -> Result<MittagLefflerCheck, AnalyticError> {
    if w.im.abs() > 10.0 {
        return Err(AnalyticError::ImaginaryTooLarge(w.im.abs()));
    }
    let nearest = w.re.round();
    if (w - Complex64::new(nearest, 0.0)).norm() < 1e-8 {
        return Err(AnalyticError::PoleInput(w));
    }
    let lhs = (Complex64::i() * PI * w).exp() / (1.0 - (Complex64::i() * 2.0 * PI * w).exp());
    let prefactor = 1.0 / (Complex64::i() * -2.0 * PI);
    let mut rhs = prefactor / w;
    for k in 1..=k_terms {
        let kf = k as f64;
        let pair = 1.0 / (w - kf) + 1.0 / (w + kf);
        let signed = if k % 2 == 0 { pair } else { -pair };
        rhs += prefactor * signed;
    }
    Ok(MittagLefflerCheck {
        lhs,
        partial_rhs: rhs,
        gap: (lhs - rhs).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn hp(two_a: i64, two_b: i64) -> HParams {
        HParams::new(two_a, two_b).unwrap()
    }

    #[test]
    fn hparams_validation() {
        assert!(HParams::new(1, 3).is_ok()); // A = 1/2, B = 3/2
        assert!(HParams::new(3, 1).is_ok()); // A = 3/2, B = 1/2
        assert!(HParams::new(1, 2).is_err()); // A + B not an integer
        assert!(HParams::new(2, -2).is_err()); // A + B = 0
        assert!(HParams::new(0, 2).is_err()); // 2A not positive
    }

    #[test]
    fn eval_h_agrees_with_hand_summation() {
        // At x = 0, y = 0.5, |q| = e^{-pi} is tiny; three terms suffice to
        // pin the value well below the assertion tolerance.
        let pt = ComplexPoint::new(0.0, 0.5);
        let p = hp(1, 3); // (A,B) = (1/2, 3/2): exponent n(n+3)/2 -> 2, 5, 9
        let q = pt.q();
        let hand = -q.powf(2.0) / (1.0 - q) + q.powf(5.0) / (1.0 - q.powu(2))
            - q.powf(9.0) / (1.0 - q.powu(3));
        let got = eval_h(p, pt, TOL).unwrap();
        assert!((got - hand).norm() < 1e-10, "got {got}, hand {hand}");
        assert!(got.norm() < 0.1);
    }

    #[test]
    fn eval_h_tolerance_is_cauchy() {
        let pt = ComplexPoint::new(0.1, 0.05);
        let p = hp(1, 3);
        let coarse = eval_h(p, pt, 1e-6).unwrap();
        let fine = eval_h(p, pt, 1e-7).unwrap();
        assert!((coarse - fine).norm() < 10.0 * 1e-6);
    }

    #[test]
    fn eval_h_conjugate_symmetry() {
        let p = hp(1, 3);
        let plus = eval_h(p, ComplexPoint::new(0.2, 0.07), TOL).unwrap();
        let minus = eval_h(p, ComplexPoint::new(-0.2, 0.07), TOL).unwrap();
        assert!((plus - minus.conj()).norm() < 1e-10);
    }

    #[test]
    fn eval_h_guards_small_y() {
        assert_eq!(
            eval_h(hp(1, 3), ComplexPoint { x: 0.0, y: 5e-5 }, TOL).unwrap_err(),
            AnalyticError::YBelowGuard(5e-5)
        );
    }

    #[test]
    fn f_one_approaches_minus_log2() {
        // f_{1,a,b} -> -log 2 as y -> 0 along x = 0.
        let pt = ComplexPoint::new(0.0, 2f64.powi(-10));
        for (a, b) in [(1u32, 1i64), (2, 0), (4, 2)] {
            let v = eval_f(1, a, b, pt, TOL).unwrap();
            assert!(
                (v - Complex64::new(-(2f64.ln()), 0.0)).norm() < 0.05,
                "f_1,{a},{b} = {v}"
            );
        }
    }

    #[test]
    fn f_minus_one_approaches_quarter() {
        let pt = ComplexPoint::new(0.0, 2f64.powi(-10));
        for (a, b) in [(1u32, 1i64), (2, 0)] {
            let v = eval_f(-1, a, b, pt, TOL).unwrap();
            assert!((v - Complex64::new(0.25, 0.0)).norm() < 0.05, "f_-1,{a},{b} = {v}");
        }
    }

    #[test]
    fn f_zero_leading_terms() {
        // f_0,a,b = -1/2 + (b/8)(-2 pi i z) + O(y^2).
        let pt = ComplexPoint::new(0.0, 2f64.powi(-8));
        for (a, b) in [(1u32, 1i64), (4, 2), (6, 2)] {
            let v = eval_f(0, a, b, pt, TOL).unwrap();
            let predicted = Complex64::new(-0.5, 0.0)
                + (b as f64 / 8.0) * (-2.0 * PI * Complex64::i() * pt.z());
            assert!((v - predicted).norm() < 1e-3, "f_0,{a},{b}: {v} vs {predicted}");
        }
    }

    #[test]
    fn pole_minus_one_requires_odd_2b() {
        let err = check_pole_minus_one(hp(2, 2), &[0.05], TOL).unwrap_err();
        assert_eq!(err, AnalyticError::BadParity(2));
    }

    #[test]
    fn single_height_gives_insufficient_data() {
        let table = check_pole_one(hp(1, 3), &[0.05], TOL).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.verdict, Trend::InsufficientData);
    }

    #[test]
    fn away_check_rejects_empty_band() {
        assert_eq!(
            check_away(hp(1, 3), 0.01, &[], TOL).unwrap_err(),
            AnalyticError::EmptyBand
        );
    }

    #[test]
    fn band_points_cover_closed_interval() {
        let pts = band_points(0.01, 32);
        assert_eq!(pts.len(), 32);
        assert!((pts[0] - 0.01).abs() < 1e-15);
        assert!((pts[31] - 0.49).abs() < 1e-15);
    }

    #[test]
    fn mittag_leffler_half() {
        // At w = 1/2 the left side is exactly i/2.
        let check = mittag_leffler_check(Complex64::new(0.5, 0.0), 200_000).unwrap();
        assert!((check.lhs - Complex64::new(0.0, 0.5)).norm() < 1e-14);
        assert!(check.gap < 1e-5, "gap {}", check.gap);
    }

    #[test]
    fn mittag_leffler_gap_shrinks() {
        let w = Complex64::new(0.0, 1.0);
        let small = mittag_leffler_check(w, 1_000).unwrap();
        let large = mittag_leffler_check(w, 10_000).unwrap();
        assert!(large.gap < small.gap);
    }

    #[test]
    fn mittag_leffler_conjugate_symmetry() {
        let w = Complex64::new(0.3, 0.7);
        let plus = mittag_leffler_check(w, 5_000).unwrap();
        let minus = mittag_leffler_check(w.conj(), 5_000).unwrap();
        assert!((plus.lhs - minus.lhs.conj()).norm() < 1e-12);
        assert!((plus.partial_rhs - minus.partial_rhs.conj()).norm() < 1e-12);
    }

    #[test]
    fn mittag_leffler_rejects_poles() {
        assert!(matches!(
            mittag_leffler_check(Complex64::new(3.0, 0.0), 10).unwrap_err(),
            AnalyticError::PoleInput(_)
        ));
        assert!(matches!(
            mittag_leffler_check(Complex64::new(0.5, 11.0), 10).unwrap_err(),
            AnalyticError::ImaginaryTooLarge(_)
        ));
    }
}
