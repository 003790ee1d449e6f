//! Truncated formal power series and Laurent series with exact
//! arbitrary-precision integer coefficients.
//!
//! Every generating function in this crate is assembled from two carriers:
//! [`QSeries`], a power series in `q` stored densely up to a truncation
//! order, and [`ZQSeries`], a Laurent polynomial in the crank variable `z`
//! whose coefficients are `QSeries`. Arithmetic between series of different
//! orders truncates to the smaller order; coefficients are `BigInt` and all
//! operations are exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    /// Inversion requires the constant term to be a unit over the integers.
    #[error("cannot invert series: leading coefficient {0} is not +1 or -1")]
    NonUnitLeadingCoefficient(BigInt),
    /// Crank-kernel division found a nonzero remainder at this q-power,
    /// which signals a construction bug upstream.
    #[error("Laurent polynomial at q^{q_power} is not divisible by (1-z)(1-1/z)")]
    NotDivisible { q_power: usize },
}

/// Number of factors in a q-Pochhammer product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochCount {
    Finite(usize),
    /// Truncated internally at the first factor whose exponent exceeds the
    /// series order.
    Infinite,
}

/// Dense truncated power series in `q` over `BigInt`.
///
/// Stores coefficients of `q^0 .. q^order` inclusive. Binary operations
/// between series of different orders produce a result at the minimum of
/// the two orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    /// The constant series 1 truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// The monomial `q^exp`; zero if `exp > order`.
    pub fn monomial(exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = BigInt::one();
        }
        s
    }

    /// Builds a series from explicit coefficients of `q^0..q^n`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the q^0 coefficient");
        QSeries { coeffs }
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n`; panics past the truncation order.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff_mut(&mut self, n: usize) -> &mut BigInt {
        &mut self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Copy truncated (or zero-extended) to `order`.
    pub fn truncated(&self, order: usize) -> QSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigInt::zero());
        coeffs.truncate(order + 1);
        QSeries { coeffs }
    }

    pub fn add(&self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
            .collect();
        QSeries { coeffs }
    }

    pub fn sub(&self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
            .collect();
        QSeries { coeffs }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// In-place `self += sign * q^shift * src`, dropping terms past the order.
    pub fn add_shifted(&mut self, src: &QSeries, shift: usize, sign: i8) {
        debug_assert!(sign == 1 || sign == -1);
        let order = self.order();
        if shift > order {
            return;
        }
        for i in 0..=(order - shift).min(src.order()) {
            let c = &src.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if sign > 0 {
                self.coeffs[i + shift] += c;
            } else {
                self.coeffs[i + shift] -= c;
            }
        }
    }

    /// Cauchy product truncated at the smaller order. Zero coefficients of
    /// either factor are skipped, so multiplying by a sparse theta series
    /// costs proportionally less.
    pub fn mul(&self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        // Iterate over the sparser factor on the outside.
        let (outer, inner) = if count_nonzero(&self.coeffs, order) <= count_nonzero(&rhs.coeffs, order)
        {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in outer.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in inner.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        QSeries { coeffs }
    }

    /// Multiplicative inverse up to the truncation order.
    ///
    /// The constant term must be +1 or -1 so that the inverse stays over the
    /// integers.
    pub fn invert(&self) -> Result<QSeries, SeriesError> {
        let a0 = &self.coeffs[0];
        if !a0.is_one() && !(-a0).is_one() {
            return Err(SeriesError::NonUnitLeadingCoefficient(a0.clone()));
        }
        let order = self.order();
        // b[n] = -a0 * sum_{k>=1} a[k] b[n-k]; iterate over nonzero a[k] only.
        let nonzero: Vec<usize> = (1..=order).filter(|&k| !self.coeffs[k].is_zero()).collect();
        let mut b = vec![BigInt::zero(); order + 1];
        b[0] = a0.clone(); // 1/(+1) = +1, 1/(-1) = -1
        let negate = a0.is_one();
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for &k in nonzero.iter().take_while(|&&k| k <= n) {
                acc += &self.coeffs[k] * &b[n - k];
            }
            b[n] = if negate { -acc } else { acc };
        }
        Ok(QSeries { coeffs: b })
    }

    /// Truncated product `prod_k (1 - q^{start_exp + k*step})`.
    ///
    /// `PochCount::Infinite` stops at the first factor whose exponent
    /// exceeds the order, which leaves the truncated expansion unchanged.
    pub fn pochhammer(start_exp: usize, step: usize, count: PochCount, order: usize) -> QSeries {
        assert!(step >= 1, "pochhammer step must be positive");
        assert!(start_exp >= 1, "pochhammer start exponent must be positive");
        let n_factors = match count {
            PochCount::Finite(n) => n,
            PochCount::Infinite => {
                if start_exp > order {
                    0
                } else {
                    (order - start_exp) / step + 1
                }
            }
        };
        let mut acc = QSeries::one(order);
        for k in 0..n_factors {
            let exp = start_exp + k * step;
            if exp > order {
                // Factor is 1 + O(q^{order+1}); nothing changes from here on.
                if matches!(count, PochCount::Infinite) {
                    break;
                }
                continue;
            }
            // acc *= (1 - q^exp), in place from the top down.
            for i in (exp..=order).rev() {
                let (lo, hi) = acc.coeffs.split_at_mut(i);
                hi[0] -= &lo[i - exp];
            }
        }
        acc
    }

    /// In-place `self += sign * q^num_exp / (1 - q^den_exp)^den_power`.
    ///
    /// `den_power` must be 1 or 2. A `num_exp` past the truncation order
    /// contributes nothing.
    pub fn lambert_add(&mut self, sign: i8, num_exp: usize, den_exp: usize, den_power: u32) {
        assert!(sign == 1 || sign == -1);
        assert!(den_exp >= 1, "Lambert denominator exponent must be positive");
        assert!(den_power == 1 || den_power == 2);
        let order = self.order();
        if num_exp > order {
            return;
        }
        // 1/(1-q^d)   = sum_k q^{kd}
        // 1/(1-q^d)^2 = sum_k (k+1) q^{kd}
        let mut k = 0usize;
        loop {
            let exp = num_exp + k * den_exp;
            if exp > order {
                break;
            }
            let mag = if den_power == 1 { 1 } else { k as i64 + 1 };
            let delta = BigInt::from(sign as i64 * mag);
            self.coeffs[exp] += delta;
            k += 1;
        }
    }

    /// `sign * self * q^num_exp / (1 - q^den_exp)^den_power`, computed by a
    /// shift followed by stride-`den_exp` prefix sums. This is how a Lambert
    /// term is folded onto an infinite-product prefactor without a dense
    /// Cauchy product.
    pub fn mul_lambert_term(
        &self,
        sign: i8,
        num_exp: usize,
        den_exp: usize,
        den_power: u32,
    ) -> QSeries {
        assert!(sign == 1 || sign == -1);
        assert!(den_exp >= 1);
        assert!(den_power == 1 || den_power == 2);
        let order = self.order();
        let mut out = QSeries::zero(order);
        if num_exp > order {
            return out;
        }
        for i in 0..=(order - num_exp) {
            if sign > 0 {
                out.coeffs[i + num_exp] = self.coeffs[i].clone();
            } else {
                out.coeffs[i + num_exp] = -&self.coeffs[i];
            }
        }
        for _ in 0..den_power {
            // out *= 1/(1 - q^den_exp)
            for i in (num_exp + den_exp)..=order {
                let (lo, hi) = out.coeffs.split_at_mut(i);
                hi[0] += &lo[i - den_exp];
            }
        }
        out
    }

    /// Substitutes `q -> q^k`; the result order is `k * self.order()`.
    pub fn substitute_q_power(&self, k: usize) -> QSeries {
        assert!(k >= 1);
        let mut out = QSeries::zero(self.order() * k);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i * k] = c.clone();
        }
        out
    }

    /// Index of the first mismatching coefficient up to the common order.
    pub fn first_mismatch(&self, rhs: &QSeries) -> Option<usize> {
        let order = self.order().min(rhs.order());
        (0..=order).find(|&i| self.coeffs[i] != rhs.coeffs[i])
    }
}

fn count_nonzero(coeffs: &[BigInt], order: usize) -> usize {
    coeffs.iter().take(order + 1).filter(|c| !c.is_zero()).count()
}

/// Laurent polynomial in `z` with `QSeries` coefficients, supported on
/// z-exponents `zmin..=zmax`. All rows share one truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZQSeries {
    zmin: i64,
    rows: Vec<QSeries>,
}

impl ZQSeries {
    pub fn zero(zmin: i64, zmax: i64, order: usize) -> Self {
        assert!(zmin <= zmax);
        let n_rows = (zmax - zmin + 1) as usize;
        ZQSeries {
            zmin,
            rows: vec![QSeries::zero(order); n_rows],
        }
    }

    /// The constant 1 on the given window.
    pub fn one(zmin: i64, zmax: i64, order: usize) -> Self {
        assert!(zmin <= 0 && 0 <= zmax);
        let mut s = Self::zero(zmin, zmax, order);
        *s.row_mut(0) = QSeries::one(order);
        s
    }

    pub fn zmin(&self) -> i64 {
        self.zmin
    }

    pub fn zmax(&self) -> i64 {
        self.zmin + self.rows.len() as i64 - 1
    }

    pub fn order(&self) -> usize {
        self.rows[0].order()
    }

    /// Row at z-exponent `m`; `None` outside the stored window (which is
    /// semantically the zero row).
    pub fn row(&self, m: i64) -> Option<&QSeries> {
        if m < self.zmin || m > self.zmax() {
            None
        } else {
            Some(&self.rows[(m - self.zmin) as usize])
        }
    }

    pub fn row_mut(&mut self, m: i64) -> &mut QSeries {
        let zmax = self.zmax();
        assert!(m >= self.zmin && m <= zmax, "row {m} outside window");
        &mut self.rows[(m - self.zmin) as usize]
    }

    /// Coefficient of `z^m q^n` (zero outside the window).
    pub fn coeff(&self, m: i64, n: usize) -> BigInt {
        match self.row(m) {
            Some(r) if n <= r.order() => r.coeff(n).clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn sub(&self, rhs: &ZQSeries) -> ZQSeries {
        let zmin = self.zmin.min(rhs.zmin);
        let zmax = self.zmax().max(rhs.zmax());
        let order = self.order().min(rhs.order());
        let mut out = ZQSeries::zero(zmin, zmax, order);
        for m in zmin..=zmax {
            let row = out.row_mut(m);
            if let Some(a) = self.row(m) {
                *row = row.add(&a.truncated(order));
            }
            if let Some(b) = rhs.row(m) {
                *row = row.sub(&b.truncated(order));
            }
        }
        out
    }

    /// In-place `self += sign * q^qshift * other`. The other window must
    /// fit inside this one.
    pub fn add_assign_shifted(&mut self, other: &ZQSeries, qshift: usize, sign: i8) {
        for m in other.zmin..=other.zmax() {
            let src = other.row(m).unwrap();
            if src.is_zero() {
                continue;
            }
            self.row_mut(m).add_shifted(src, qshift, sign);
        }
    }

    /// `z^zshift q^qshift * self`, clipped to the original window. Safe
    /// whenever the clipped rows carry only q-exponents past the order,
    /// which holds for the geometric rows used here (row |m| starts at
    /// q^{|m| * d}).
    pub fn shifted_zq(&self, zshift: i64, qshift: usize) -> ZQSeries {
        let (zmin, zmax) = (self.zmin, self.zmax());
        let order = self.order();
        let mut out = ZQSeries::zero(zmin, zmax, order);
        for m in zmin..=zmax {
            let src_m = m - zshift;
            if src_m < zmin || src_m > zmax {
                continue;
            }
            let src = self.row(src_m).unwrap();
            out.row_mut(m).add_shifted(src, qshift, 1);
        }
        out
    }

    /// In-place multiplication by `1/(1 - q^d)`, row by row.
    pub fn mul_inv_q_geometric(&mut self, d: usize) {
        assert!(d >= 1);
        let order = self.order();
        for row in &mut self.rows {
            for i in d..=order {
                let (lo, hi) = row.coeffs.split_at_mut(i);
                hi[0] += &lo[i - d];
            }
        }
    }

    /// Multiplies every row by the same `q`-series.
    pub fn mul_qseries(&self, f: &QSeries) -> ZQSeries {
        ZQSeries {
            zmin: self.zmin,
            rows: self.rows.iter().map(|r| r.mul(f)).collect(),
        }
    }

    /// In-place multiplication by the geometric series
    /// `1/(1 - z^zstep q^qexp) = sum_{k>=0} z^{k*zstep} q^{k*qexp}`
    /// with `zstep` either +1 or -1.
    ///
    /// On a window with `zmax >= order` (and `zmin <= -order`) this is exact:
    /// any mass pushed past the window in `z` carries a `q`-exponent past the
    /// truncation order, because `qexp >= 1` per unit z-step.
    pub fn mul_geometric(&mut self, zstep: i64, qexp: usize) {
        assert!(zstep == 1 || zstep == -1);
        assert!(qexp >= 1, "geometric factor needs a positive q-exponent");
        let order = self.order();
        let (zmin, zmax) = (self.zmin, self.zmax());
        // result[m][j] = old[m][j] + result[m - zstep][j - qexp]
        let ms: Vec<i64> = if zstep == 1 {
            ((zmin + 1)..=zmax).collect()
        } else {
            (zmin..zmax).rev().collect()
        };
        for m in ms {
            let src_idx = (m - zstep - self.zmin) as usize;
            let dst_idx = (m - self.zmin) as usize;
            let (a, b) = if src_idx < dst_idx {
                let (lo, hi) = self.rows.split_at_mut(dst_idx);
                (&lo[src_idx], &mut hi[0])
            } else {
                let (lo, hi) = self.rows.split_at_mut(src_idx);
                (&hi[0], &mut lo[dst_idx])
            };
            for j in qexp..=order {
                let add = a.coeff(j - qexp);
                if !add.is_zero() {
                    *b.coeff_mut(j) += add;
                }
            }
        }
    }

    /// Whether `row(m) == row(-m)` for every stored exponent.
    pub fn is_z_symmetric(&self) -> bool {
        let hi = self.zmax().max(-self.zmin);
        let order = self.order();
        let zero = QSeries::zero(order);
        (1..=hi).all(|m| {
            let a = self.row(m).unwrap_or(&zero);
            let b = self.row(-m).unwrap_or(&zero);
            a == b
        })
    }

    /// Exact division by the crank kernel `(1-z)(1-1/z) = -z^{-1}(1-z)^2`.
    ///
    /// Performed per q-power by synthetic division in `z`, twice by `(1-z)`
    /// and then a shift by `z` and a sign flip. Every q-power must divide
    /// exactly; a nonzero remainder reports the offending power.
    pub fn divide_crank_kernel(&self) -> Result<ZQSeries, SeriesError> {
        let order = self.order();
        let (zmin, zmax) = (self.zmin, self.zmax());
        if zmax - zmin < 2 {
            // Window too narrow to carry a nonzero multiple of the kernel;
            // the numerator must be identically zero.
            for n in 0..=order {
                for m in zmin..=zmax {
                    if !self.coeff(m, n).is_zero() {
                        return Err(SeriesError::NotDivisible { q_power: n });
                    }
                }
            }
            return Ok(ZQSeries::zero(0, 0, order));
        }
        // Quotient support: [zmin+1, zmax-1].
        let mut out = ZQSeries::zero(zmin + 1, zmax - 1, order);
        let width = (zmax - zmin + 1) as usize;
        let mut poly = vec![BigInt::zero(); width];
        for n in 0..=order {
            for (i, c) in poly.iter_mut().enumerate() {
                *c = self.rows[i].coeff(n).clone();
            }
            // Divide twice by (1-z): with a_m = b_m - b_{m-1}, the quotient is
            // the prefix sum b_m = a_m + b_{m-1} and the remainder is the final
            // prefix value (the polynomial evaluated at z = 1).
            for pass in 0..2 {
                let len = width - pass;
                for i in 1..len {
                    let (lo, hi) = poly.split_at_mut(i);
                    hi[0] += &lo[i - 1];
                }
                let rem = std::mem::take(&mut poly[len - 1]);
                if !rem.is_zero() {
                    return Err(SeriesError::NotDivisible { q_power: n });
                }
            }
            // Multiply by -z: negate and shift the z-exponent up by one,
            // which maps support [zmin, zmax-2] onto [zmin+1, zmax-1].
            for (i, c) in poly.iter().take(width - 2).enumerate() {
                if !c.is_zero() {
                    *out.rows[i].coeff_mut(n) = -c;
                }
            }
        }
        Ok(out)
    }

    /// Substitutes `q -> q^k` in every row.
    pub fn substitute_q_power(&self, k: usize) -> ZQSeries {
        ZQSeries {
            zmin: self.zmin,
            rows: self.rows.iter().map(|r| r.substitute_q_power(k)).collect(),
        }
    }

    /// Widens (never narrows) the z-window, padding with zero rows.
    pub fn with_window(&self, zmin: i64, zmax: i64) -> ZQSeries {
        assert!(zmin <= self.zmin && zmax >= self.zmax());
        let mut out = ZQSeries::zero(zmin, zmax, self.order());
        for m in self.zmin..=self.zmax() {
            *out.row_mut(m) = self.row(m).unwrap().clone();
        }
        out
    }
}
