//! Dense crank tables N(m,n) and streaming scans over all rows.
//!
//! Tables at small z-windows come straight from the univariate rows. The
//! full triangle (every row |m| < n up to the order) is assembled by
//! telescoping the difference rows from the top down, `S_m = SD_m + S_{m+1}`,
//! which costs one shifted add of the prefactor per theta term instead of a
//! dense product per row. Verification sweeps that only need aggregates
//! (marginals, residue-class sums, positivity) use the row stream and never
//! materialize the triangle.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::gen::{CrankGen, Family};
use crate::series::{QSeries, ZQSeries};

/// Dense table of crank counts `N(m,n)` for `|m| <= max_abs_m`,
/// `0 <= n <= order`. Rows are stored for `m >= 0` and mirrored on access,
/// since every row depends on `m` only through `|m|`.
#[derive(Debug, Clone)]
pub struct CrankTable {
    family: Family,
    rows: Vec<QSeries>,
}

impl CrankTable {
    /// Builds rows `|m| <= max_abs_m` from the univariate Lambert form.
    /// Suited to narrow windows at large orders (asymptotic scans).
    pub fn from_univariate(family: Family, max_abs_m: usize, order: usize) -> Self {
        let gen = CrankGen::new(order);
        let rows = (0..=max_abs_m).map(|m| gen.row(family, m as i64)).collect();
        CrankTable { family, rows }
    }

    /// Builds the full triangle `|m| <= order` by telescoping difference
    /// rows from the top down.
    pub fn from_differences(family: Family, order: usize) -> Self {
        let mut rows: Vec<QSeries> = Vec::with_capacity(order + 1);
        for_each_row_desc(family, order, |_, row| rows.push(row.clone()));
        rows.reverse();
        CrankTable { family, rows }
    }

    /// Extracts the `m >= 0` rows of a bivariate series.
    pub fn from_bivariate(s: &ZQSeries, family: Family) -> Self {
        debug_assert!(s.is_z_symmetric(), "crank series must satisfy row(m) = row(-m)");
        let max = s.zmax().max(0) as usize;
        let rows = (0..=max)
            .map(|m| s.row(m as i64).expect("row within window").clone())
            .collect();
        CrankTable { family, rows }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        self.rows[0].order()
    }

    pub fn max_abs_m(&self) -> usize {
        self.rows.len() - 1
    }

    /// Stored row for `|m| = m_abs`.
    pub fn row(&self, m_abs: usize) -> &QSeries {
        &self.rows[m_abs]
    }

    /// `N(m,n)`, mirroring negative `m`; zero outside the stored window.
    pub fn value(&self, m: i64, n: usize) -> BigInt {
        let m_abs = m.unsigned_abs() as usize;
        if m_abs >= self.rows.len() || n > self.order() {
            BigInt::zero()
        } else {
            self.rows[m_abs].coeff(n).clone()
        }
    }

    /// `sum_{m in Z} N(m,n)` over the stored window.
    pub fn marginal(&self, n: usize) -> BigInt {
        let mut total = self.rows[0].coeff(n).clone();
        for row in &self.rows[1..] {
            let c = row.coeff(n);
            total += c;
            total += c;
        }
        total
    }

    /// Residue-class sums `N(i,5,n) = sum_{m = i mod 5} N(m,n)` for
    /// `i = 0..4`, both signs of `m` included.
    pub fn class_sums_mod5(&self, n: usize) -> [BigInt; 5] {
        let mut sums: [BigInt; 5] = Default::default();
        sums[0] += self.rows[0].coeff(n);
        for (m, row) in self.rows.iter().enumerate().skip(1) {
            let c = row.coeff(n);
            sums[m % 5] += c;
            sums[(5 - m % 5) % 5] += c;
        }
        sums
    }
}

/// Streams the rows `S_m` of a family from `m = order` down to `m = 0`
/// at the given truncation order. Row `order` is identically zero (row `m`
/// first contributes at `q^{m+1}`), and each step adds one difference row.
pub fn for_each_row_desc<F: FnMut(usize, &QSeries)>(family: Family, order: usize, mut f: F) {
    let gen = CrankGen::new(order);
    let mut row = QSeries::zero(order);
    f(order, &row);
    for m in (0..order).rev() {
        gen.add_diff_row(family, m, &mut row);
        f(m, &row);
    }
}

/// Aggregates gathered in one streaming pass over every row of a family.
#[derive(Debug, Clone)]
pub struct CrankScan {
    pub family: Family,
    pub order: usize,
    /// `sum_m N(m,n)` for each `n`.
    pub marginals: Vec<BigInt>,
    /// `N(i,5,n)` for `i = 0..4` and each `n`.
    pub class_sums: [Vec<BigInt>; 5],
    /// Number of stored entries `(|m|, n)` with a negative value.
    pub negative_entries: u64,
    /// First negative entry, as `(m, n)`, if any.
    pub first_negative: Option<(usize, usize)>,
    /// Entries violating the support constraint `N(m,n) = 0 for |m| >= n`.
    pub support_violations: u64,
}

/// Streams every row of the family once and folds marginals, mod-5 class
/// sums, positivity, and support checks.
pub fn scan_crank(family: Family, order: usize) -> CrankScan {
    let mut marginals = vec![BigInt::zero(); order + 1];
    let mut class_sums: [Vec<BigInt>; 5] =
        std::array::from_fn(|_| vec![BigInt::zero(); order + 1]);
    let mut negative_entries = 0u64;
    let mut first_negative = None;
    let mut support_violations = 0u64;

    for_each_row_desc(family, order, |m, row| {
        let cls_a = m % 5;
        let cls_b = (5 - m % 5) % 5;
        for n in 0..=order {
            let c = row.coeff(n);
            if c.is_zero() {
                continue;
            }
            if n <= m {
                support_violations += 1;
            }
            if c.is_negative() {
                negative_entries += 1;
                if first_negative.is_none() {
                    first_negative = Some((m, n));
                }
            }
            marginals[n] += c;
            class_sums[cls_a][n] += c;
            if m > 0 {
                // Mirror row at -m.
                marginals[n] += c;
                class_sums[cls_b][n] += c;
            }
        }
    });

    CrankScan {
        family,
        order,
        marginals,
        class_sums,
        negative_entries,
        first_negative,
        support_violations,
    }
}
