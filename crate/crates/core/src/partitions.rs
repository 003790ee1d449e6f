//! Brute-force partition enumeration and counting oracles.
//!
//! Everything here is independent ground truth: no generating functions,
//! just streaming over the partitions of `n` and counting. The series
//! builders in [`crate::gen`] are cross-checked coefficientwise against
//! these oracles for small `n`.

use std::collections::BTreeMap;

use thiserror::Error;

/// Default enumeration cap. p(70) is about 4.1 million partitions, which
/// still streams in seconds; raise the cap explicitly for more.
pub const DEFAULT_CAP: u32 = 70;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: u32, cap: u32 },
}

/// A partition: weakly decreasing positive parts summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<u32>,
    n: u32,
}

impl Partition {
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Largest part minus number of parts; 0 for the empty partition.
    pub fn rank(&self) -> i64 {
        match self.parts.first() {
            Some(&largest) => largest as i64 - self.parts.len() as i64,
            None => 0,
        }
    }

    /// Multiplicity of the smallest part; 0 for the empty partition.
    pub fn smallest_multiplicity(&self) -> u32 {
        match self.parts.last() {
            Some(&smallest) => self.parts.iter().rev().take_while(|&&p| p == smallest).count() as u32,
            None => 0,
        }
    }

    /// Whether every odd part is smaller than twice the smallest part.
    /// Vacuously true when there are no odd parts; true for the empty
    /// partition.
    pub fn all_odd_parts_below_twice_smallest(&self) -> bool {
        match self.parts.last() {
            Some(&smallest) => self
                .parts
                .iter()
                .filter(|&&p| p % 2 == 1)
                .all(|&p| p < 2 * smallest),
            None => true,
        }
    }
}

/// Streams every partition of `n` exactly once, in decreasing
/// lexicographic order starting from `[n]` and ending at `[1, 1, ..., 1]`.
///
/// State is O(n); no list of partitions is ever materialized.
pub struct Partitions {
    parts: Vec<u32>,
    n: u32,
    started: bool,
    done: bool,
}

/// Enumerates partitions of `n` under the default cap.
pub fn partitions(n: u32) -> Result<Partitions, OracleError> {
    partitions_with_cap(n, DEFAULT_CAP)
}

/// Enumerates partitions of `n`, raising the cap explicitly.
pub fn partitions_with_cap(n: u32, cap: u32) -> Result<Partitions, OracleError> {
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    Ok(Partitions {
        parts: Vec::with_capacity(n as usize),
        n,
        started: false,
        done: false,
    })
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n == 0 {
                self.done = true;
                // One empty partition of 0, by convention.
                return Some(Partition { parts: vec![], n: 0 });
            }
            self.parts.push(self.n);
        } else if !advance(&mut self.parts) {
            self.done = true;
            return None;
        }
        Some(Partition {
            parts: self.parts.clone(),
            n: self.n,
        })
    }
}

/// Steps `parts` to the next partition in decreasing lexicographic order.
/// Returns false when `parts` was the all-ones partition.
fn advance(parts: &mut Vec<u32>) -> bool {
    // Find the last part greater than 1, decrement it, and redistribute
    // the freed amount greedily.
    let mut rest = 0u32;
    while let Some(&last) = parts.last() {
        if last > 1 {
            break;
        }
        rest += 1;
        parts.pop();
    }
    let Some(last) = parts.last_mut() else {
        return false;
    };
    *last -= 1;
    rest += 1;
    let unit = *last;
    while rest > 0 {
        let take = rest.min(unit);
        parts.push(take);
        rest -= take;
    }
    true
}

/// Visits each partition of `n` without allocating per item. The callback
/// receives the parts in weakly decreasing order.
pub fn visit_partitions<F: FnMut(&[u32])>(n: u32, mut f: F) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut parts: Vec<u32> = vec![n];
    loop {
        f(&parts);
        if !advance(&mut parts) {
            return;
        }
    }
}

fn check_cap(n: u32) -> Result<(), OracleError> {
    if n > DEFAULT_CAP {
        Err(OracleError::CapExceeded { n, cap: DEFAULT_CAP })
    } else {
        Ok(())
    }
}

/// Number of partitions of `n` where every odd part is smaller than twice
/// the smallest part. 0 for n = 0 (the sums defining it start at n = 1).
pub fn p_omega_oracle(n: u32) -> Result<u64, OracleError> {
    check_cap(n)?;
    if n == 0 {
        return Ok(0);
    }
    let mut count = 0u64;
    visit_partitions(n, |parts| {
        if qualifies_omega(parts) {
            count += 1;
        }
    });
    Ok(count)
}

/// Total multiplicity of the smallest part across the partitions counted
/// by [`p_omega_oracle`].
pub fn spt_omega_oracle(n: u32) -> Result<u64, OracleError> {
    check_cap(n)?;
    if n == 0 {
        return Ok(0);
    }
    let mut total = 0u64;
    visit_partitions(n, |parts| {
        if qualifies_omega(parts) {
            total += smallest_mult(parts);
        }
    });
    Ok(total)
}

/// Classical spt(n): total multiplicity of the smallest part across all
/// partitions of `n`.
pub fn spt_oracle(n: u32) -> Result<u64, OracleError> {
    check_cap(n)?;
    if n == 0 {
        return Ok(0);
    }
    let mut total = 0u64;
    visit_partitions(n, |parts| {
        total += smallest_mult(parts);
    });
    Ok(total)
}

/// Full rank histogram of the partitions of `n`: map from rank
/// (largest part minus number of parts) to count.
pub fn rank_histogram(n: u32) -> Result<BTreeMap<i64, u64>, OracleError> {
    check_cap(n)?;
    let mut hist = BTreeMap::new();
    visit_partitions(n, |parts| {
        let rank = match parts.first() {
            Some(&largest) => largest as i64 - parts.len() as i64,
            None => 0,
        };
        *hist.entry(rank).or_insert(0u64) += 1;
    });
    Ok(hist)
}

/// Number of partitions of `n` with rank exactly `m`.
pub fn rank_count_oracle(m: i64, n: u32) -> Result<u64, OracleError> {
    Ok(rank_histogram(n)?.get(&m).copied().unwrap_or(0))
}

/// Second rank moment N_2(n) = sum over m of m^2 N(m,n); even by the
/// conjugation symmetry N(m,n) = N(-m,n).
pub fn rank_moment2_oracle(n: u32) -> Result<u64, OracleError> {
    let hist = rank_histogram(n)?;
    Ok(hist
        .iter()
        .map(|(&m, &count)| (m * m) as u64 * count)
        .sum())
}

fn qualifies_omega(parts: &[u32]) -> bool {
    let smallest = *parts.last().expect("visit never passes empty parts for n >= 1");
    parts.iter().filter(|&&p| p % 2 == 1).all(|&p| p < 2 * smallest)
}

fn smallest_mult(parts: &[u32]) -> u64 {
    let smallest = *parts.last().expect("nonempty");
    parts.iter().rev().take_while(|&&p| p == smallest).count() as u64
}
