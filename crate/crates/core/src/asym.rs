//! Asymptotic main terms for the crank counts, convergence and sign-pattern
//! scans against the exact tables, Wright's segment integral P_s(u), and
//! half-integer modified Bessel functions.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use std::f64::consts::PI;
use thiserror::Error;

use crate::gen::{CrankGen, Family};
use crate::table::CrankTable;

#[derive(Debug, Error, PartialEq)]
pub enum AsymError {
    #[error("u = {0} exceeds the overflow guard (e^{{2u}} must stay finite)")]
    Overflow(f64),
    #[error("unsupported Bessel order {0}/2: only +-1/2 and +-3/2 have closed forms here")]
    UnsupportedOrder(i32),
    #[error("grid point {n} exceeds the table order {max}")]
    GridOutOfRange { n: usize, max: usize },
    #[error("need at least 1000 quadrature steps, got {0}")]
    TooFewSteps(u32),
}

/// Main term `(log 2) / (4 pi sqrt(n)) * e^{pi sqrt(n) / sqrt(3)}` of both
/// crank families, computed in log space.
pub fn main_term(n: u64) -> f64 {
    log_main_term(n).exp()
}

/// `ln` of [`main_term`].
pub fn log_main_term(n: u64) -> f64 {
    let n = n as f64;
    (2.0_f64.ln()).ln() - (4.0 * PI).ln() - 0.5 * n.ln() + PI * (n / 3.0).sqrt()
}

/// Magnitude `e^{pi sqrt(n/3)} / (8 sqrt(3) n)` of the alternating
/// secondary term contributed by the pole at q = -1 to the crank
/// differences.
pub fn secondary_term(n: u64) -> f64 {
    let nf = n as f64;
    (PI * (nf / 3.0).sqrt() - (8.0 * 3.0_f64.sqrt() * nf).ln()).exp()
}

/// Trend verdict of a convergence scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrendVerdict {
    Converging,
    NotConverging,
    InsufficientData,
}

impl std::fmt::Display for TrendVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TrendVerdict::Converging => write!(f, "converging"),
            TrendVerdict::NotConverging => write!(f, "not converging"),
            TrendVerdict::InsufficientData => write!(f, "insufficient data"),
        }
    }
}

/// One grid point of a ratio scan.
#[derive(Debug, Clone)]
pub struct RatioEntry {
    pub n: usize,
    pub exact: BigInt,
    pub main: f64,
    pub ratio: f64,
}

/// Exact-to-main-term comparison along an n-grid for one row `m`.
#[derive(Debug, Clone)]
pub struct AsymReport {
    pub family: Family,
    pub m: i64,
    pub entries: Vec<RatioEntry>,
    pub verdict: TrendVerdict,
}

/// Compares `N(m,n)` against [`main_term`] along `grid`, which must be
/// strictly increasing and within the table order. The verdict is
/// `Converging` when `|ratio - 1|` shrinks from the first to the last grid
/// point and the pair-averaged deviations are eventually nonincreasing
/// (averaging consecutive grid points smooths the alternating secondary
/// term from the q = -1 pole).
pub fn ratio_scan(
    family: Family,
    m: i64,
    grid: &[usize],
    table: &CrankTable,
) -> Result<AsymReport, AsymError> {
    assert!(
        grid.windows(2).all(|w| w[0] < w[1]),
        "grid must be strictly increasing"
    );
    assert_eq!(family, table.family(), "table family mismatch");
    let mut entries = Vec::with_capacity(grid.len());
    for &n in grid {
        if n > table.order() {
            return Err(AsymError::GridOutOfRange {
                n,
                max: table.order(),
            });
        }
        let exact = table.value(m, n);
        let main = main_term(n as u64);
        let ratio = exact.to_f64().unwrap_or(f64::INFINITY) / main;
        entries.push(RatioEntry {
            n,
            exact,
            main,
            ratio,
        });
    }
    let verdict = ratio_verdict(&entries);
    Ok(AsymReport {
        family,
        m,
        entries,
        verdict,
    })
}

fn ratio_verdict(entries: &[RatioEntry]) -> TrendVerdict {
    if entries.len() < 2 {
        return TrendVerdict::InsufficientData;
    }
    let devs: Vec<f64> = entries.iter().map(|e| (e.ratio - 1.0).abs()).collect();
    let strict_shrink = devs[devs.len() - 1] < devs[0];
    let smoothed: Vec<f64> = devs.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    // Eventually monotone: nonincreasing from no later than the midpoint.
    let start = (smoothed.len() - 1) / 2;
    let tail_monotone = smoothed[start..].windows(2).all(|w| w[1] <= w[0]);
    if strict_shrink && tail_monotone {
        TrendVerdict::Converging
    } else {
        TrendVerdict::NotConverging
    }
}

/// Result of a sign-pattern scan of `(-1)^{m+n+1} (N(m,n) - N(m+1,n)) > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignScan {
    pub family: Family,
    pub m: u32,
    pub order: usize,
    /// Smallest `n0` such that the signed difference is strictly positive
    /// for every `n` in `[n0, order]`; `None` if it fails at the top.
    pub n0: Option<usize>,
    /// Whether the pattern persists over at least half the range.
    pub holds: bool,
}

/// Scans the difference row for the predicted alternating sign pattern.
pub fn sign_scan(family: Family, m: u32, order: usize) -> SignScan {
    assert!(order >= 10, "sign scan needs some room");
    let diff = CrankGen::new(order).diff_row(family, m);
    let mut n0 = None;
    for n in (1..=order).rev() {
        let c = diff.coeff(n);
        let positive = if (m as usize + n + 1) % 2 == 0 {
            c.is_positive()
        } else {
            c.is_negative()
        };
        if !positive {
            break;
        }
        n0 = Some(n);
    }
    let holds = matches!(n0, Some(n0) if order - n0 >= order / 2);
    SignScan {
        family,
        m,
        order,
        n0,
        holds,
    }
}

/// Wright's vertical-segment integral
/// `P_s(u) = 1/(2 pi i) int_{1-Mi}^{1+Mi} v^s e^{u(v + 1/v)} dv`,
/// evaluated with composite Simpson quadrature on `v = 1 + it`.
pub fn wright_p(s: f64, u: f64, m_height: f64, steps: u32) -> Result<Complex64, AsymError> {
    if u > 30.0 {
        return Err(AsymError::Overflow(u));
    }
    if steps < 1000 {
        return Err(AsymError::TooFewSteps(steps));
    }
    let panels = steps + steps % 2;
    let h = 2.0 * m_height / panels as f64;
    let integrand = |t: f64| -> Complex64 {
        let v = Complex64::new(1.0, t);
        v.powf(s) * (u * (v + 1.0 / v)).exp()
    };
    let mut total = integrand(-m_height) + integrand(m_height);
    for k in 1..panels {
        let t = -m_height + h * k as f64;
        let weight = if k % 2 == 1 { 4.0 } else { 2.0 };
        total += weight * integrand(t);
    }
    let integral_dt = total * (h / 3.0);
    // dv = i dt and the 1/(2 pi i) prefactor cancel to 1/(2 pi).
    Ok(integral_dt / (2.0 * PI))
}

/// Modified Bessel function of the first kind at half-integer order
/// `two_order / 2`, in hyperbolic closed form. Supported orders:
/// -3/2, -1/2, 1/2, 3/2.
pub fn bessel_i_half(two_order: i32, x: f64) -> Result<f64, AsymError> {
    if x > 700.0 {
        return Err(AsymError::Overflow(x));
    }
    assert!(x > 0.0, "Bessel argument must be positive");
    let scale = (2.0 / (PI * x)).sqrt();
    let value = match two_order {
        1 => scale * x.sinh(),
        -1 => scale * x.cosh(),
        3 => scale * (x.cosh() - x.sinh() / x),
        -3 => scale * (x.sinh() - x.cosh() / x),
        other => return Err(AsymError::UnsupportedOrder(other)),
    };
    Ok(value)
}
