//! Bivariate generating functions in the crank variable `z`: the rank and
//! crank series R(z,q) and C(z,q), the full spt-crank series S_C1(z,q),
//! and the assembly that produces S_C1 from R and C by exact division by
//! the crank kernel (1-z)(1-1/z).
//!
//! All builders require `zwindow >= order`; with that window every
//! z-truncation artifact carries a q-exponent past the truncation order,
//! so the stored rows are exact.

use crate::gen::even_parts_gf;
use crate::series::{PochCount, QSeries, SeriesError, ZQSeries};

/// Rank generating function `R(z,q) = sum_{n>=0} q^{n^2} / ((zq;q)_n (q/z;q)_n)`.
/// Row `m` at `q^n` counts partitions of `n` with rank `m`.
pub fn gen_rank_bivariate(order: usize, zwindow: usize) -> ZQSeries {
    assert!(zwindow >= order, "need zwindow >= order for exact rows");
    let w = zwindow as i64;
    let mut acc = ZQSeries::zero(-w, w, order);
    let mut inv = ZQSeries::one(-w, w, order);
    acc.add_assign_shifted(&inv, 0, 1); // n = 0 term
    let mut n = 1usize;
    while n * n <= order {
        // Extend the running inverse product by 1/((1-zq^n)(1-q^n/z)).
        inv.mul_geometric(1, n);
        inv.mul_geometric(-1, n);
        acc.add_assign_shifted(&inv, n * n, 1);
        n += 1;
    }
    acc
}

/// Crank generating function `C(z,q) = (q;q)_inf / ((zq;q)_inf (q/z;q)_inf)`.
pub fn gen_crank_bivariate(order: usize, zwindow: usize) -> ZQSeries {
    assert!(zwindow >= order, "need zwindow >= order for exact rows");
    let w = zwindow as i64;
    let mut s = ZQSeries::one(-w, w, order);
    for n in 1..=order {
        s.mul_geometric(1, n);
        s.mul_geometric(-1, n);
    }
    s.mul_qseries(&QSeries::pochhammer(1, 1, PochCount::Infinite, order))
}

/// Full spt-crank series `S_C1(z,q)`, built from the bivariate Lambert
/// expansion with each term's z-kernel split as
/// `(1+q^d)/((1-zq^d)(1-q^d/z)) = 1/(1-q^d) (1/(1-zq^d) + (q^d/z)/(1-q^d/z))`
/// and the whole sum multiplied by `1/(q^2;q^2)_inf`.
pub fn gen_sc1_bivariate(order: usize, zwindow: usize) -> ZQSeries {
    assert!(zwindow >= order, "need zwindow >= order for exact rows");
    let w = zwindow as i64;
    let mut sum = ZQSeries::zero(-w, w, order);
    let mut n = 1usize;
    loop {
        let shift1 = n * (n + 1) / 2;
        if shift1 > order {
            break;
        }
        let sign: i8 = if n % 2 == 1 { 1 } else { -1 };
        sum.add_assign_shifted(&kernel_block(n, order, zwindow), shift1, sign);
        let shift2 = 3 * n * n + n;
        if shift2 <= order {
            sum.add_assign_shifted(&kernel_block(2 * n, order, zwindow), shift2, -sign);
        }
        n += 1;
    }
    sum.mul_qseries(&even_parts_gf(order))
}

/// `(1+q^d)/((1-zq^d)(1-q^d/z))`: row `m` equals `q^{d|m|}/(1-q^d)`.
fn kernel_block(d: usize, order: usize, zwindow: usize) -> ZQSeries {
    let w = zwindow as i64;
    let mut up = ZQSeries::one(-w, w, order);
    up.mul_geometric(1, d);
    let mut down = ZQSeries::one(-w, w, order);
    down.mul_geometric(-1, d);
    let mut block = up;
    block.add_assign_shifted(&down.shifted_zq(-1, d), 0, 1);
    block.mul_inv_q_geometric(d);
    block
}

/// Assembles `S_C1(z,q)` the long way round:
/// `(R(z,q^2) - (q;q^2)_inf C(z,q)) / ((1-z)(1-1/z))`,
/// with the division performed per q-power and required to leave zero
/// remainder everywhere. The effective order is `2*(order/2)` because the
/// rank series enters through `q -> q^2`.
pub fn prop51_assembly(order: usize, zwindow: usize) -> Result<ZQSeries, SeriesError> {
    assert!(zwindow >= order, "need zwindow >= order for exact rows");
    let half = order / 2;
    let rank_doubled = gen_rank_bivariate(half, half.max(1)).substitute_q_power(2);
    let crank = gen_crank_bivariate(order, zwindow);
    let odd_poch = QSeries::pochhammer(1, 2, PochCount::Infinite, order);
    let numerator = rank_doubled.sub(&crank.mul_qseries(&odd_poch));
    numerator.divide_crank_kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_spt_omega, CrankGen, Family};
    use crate::partitions;
    use num_bigint::BigInt;
    use num_traits::Zero;

    #[test]
    fn rank_rows_match_enumeration() {
        let order = 24;
        let r = gen_rank_bivariate(order, order);
        for n in 0..=order as u32 {
            let hist = partitions::rank_histogram(n).unwrap();
            for m in -(order as i64)..=(order as i64) {
                let want = hist.get(&m).copied().unwrap_or(0);
                assert_eq!(
                    r.coeff(m, n as usize),
                    BigInt::from(want),
                    "N({m},{n}) from R(z,q)"
                );
            }
        }
    }

    #[test]
    fn crank_at_z_one_counts_partitions() {
        let order = 20;
        let c = gen_crank_bivariate(order, order);
        let p = crate::gen::partition_gf(order);
        for n in 0..=order {
            let mut total = BigInt::zero();
            for m in c.zmin()..=c.zmax() {
                total += c.coeff(m, n);
            }
            assert_eq!(&total, p.coeff(n), "sum_m crank row at q^{n}");
        }
    }

    #[test]
    fn bivariate_series_are_z_symmetric() {
        assert!(gen_rank_bivariate(16, 16).is_z_symmetric());
        assert!(gen_crank_bivariate(16, 16).is_z_symmetric());
        assert!(gen_sc1_bivariate(16, 16).is_z_symmetric());
    }

    #[test]
    fn sc1_bivariate_rows_match_univariate() {
        let order = 60;
        let s = gen_sc1_bivariate(order, order);
        let gen = CrankGen::new(order);
        for m in 0..=order as i64 {
            let row = gen.row(Family::C1, m);
            for n in 0..=order {
                assert_eq!(s.coeff(m, n), row.coeff(n).clone(), "row {m} at q^{n}");
                assert_eq!(s.coeff(-m, n), row.coeff(n).clone(), "row {} at q^{n}", -m);
            }
        }
    }

    #[test]
    fn sc1_bivariate_marginals_are_spt_omega() {
        let order = 40;
        let s = gen_sc1_bivariate(order, order);
        let spt_w = gen_spt_omega(order);
        for n in 0..=order {
            let mut total = BigInt::zero();
            for m in s.zmin()..=s.zmax() {
                total += s.coeff(m, n);
            }
            assert_eq!(&total, spt_w.coeff(n), "spt_C1({n})");
        }
    }

    #[test]
    fn prop51_assembly_matches_lambert_routes() {
        let order = 60;
        let assembled = prop51_assembly(order, order).expect("kernel division must be exact");
        let direct = gen_sc1_bivariate(order, order);
        for m in -(order as i64)..=(order as i64) {
            for n in 0..=order {
                assert_eq!(
                    assembled.coeff(m, n),
                    direct.coeff(m, n),
                    "S_C1 row {m} at q^{n}"
                );
            }
        }
    }
}
