//! Brute-force ground truth: enumerate all partitions of small `n`, take
//! Durfee sizes directly from the definition, and cross-check the series
//! pipeline entry by entry.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::series::{partition_numbers, DurfeeTable, Partition};

/// Enumeration above this `n` is refused unless explicitly overridden.
/// p(60) is just under a million partitions; growth beyond that is steep
/// enough that an accidental call at series scale must not hang the process.
pub const ORACLE_SAFETY_BOUND: usize = 60;

/// Iterator over all partitions of `n` in reverse-lexicographic order
/// (largest-first part lists; `n`, `n-1 1`, ..., `1^n`).
#[derive(Debug)]
pub struct PartitionIter {
    current: Option<Vec<u32>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.take()?;
        self.current = next_partition(&parts);
        Some(Partition::from_parts_unchecked(parts))
    }
}

/// Successor of `parts` in reverse-lexicographic order: strip trailing 1s,
/// decrement the last part greater than 1, and redistribute the freed total
/// greedily into parts no larger than the decremented one.
fn next_partition(parts: &[u32]) -> Option<Vec<u32>> {
    let ones = parts.iter().rev().take_while(|&&p| p == 1).count();
    if ones == parts.len() {
        return None;
    }
    let mut next = parts[..parts.len() - ones].to_vec();
    let last = next.len() - 1;
    next[last] -= 1;
    let m = next[last];
    let mut remaining = ones as u32 + 1;
    while remaining >= m {
        next.push(m);
        remaining -= m;
    }
    if remaining > 0 {
        next.push(remaining);
    }
    Some(next)
}

/// Yield every partition of `n` exactly once, refusing `n` above
/// [`ORACLE_SAFETY_BOUND`]. For `n = 0` the stream holds the single empty
/// partition.
pub fn enumerate_partitions(n: usize) -> Result<PartitionIter> {
    if n > ORACLE_SAFETY_BOUND {
        return Err(Error::OracleBoundExceeded {
            n,
            bound: ORACLE_SAFETY_BOUND,
        });
    }
    Ok(enumerate_partitions_unchecked(n))
}

/// [`enumerate_partitions`] without the safety bound. Callers own the
/// consequences: the stream has p(n) items.
pub fn enumerate_partitions_unchecked(n: usize) -> PartitionIter {
    let first = if n == 0 { Vec::new() } else { vec![n as u32] };
    PartitionIter {
        current: Some(first),
    }
}

/// Histogram of Durfee sizes over all partitions of one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteHistogram {
    pub n: usize,
    /// Durfee size -> number of partitions of `n` with that size.
    pub counts: BTreeMap<usize, u64>,
    /// Total partitions seen; equals p(n).
    pub total: u64,
}

/// Count Durfee sizes by direct enumeration, refusing `n` above the bound.
pub fn brute_durfee_histogram(n: usize) -> Result<BruteHistogram> {
    enumerate_partitions(n).map(histogram_of)
}

/// [`brute_durfee_histogram`] without the safety bound.
pub fn brute_durfee_histogram_unchecked(n: usize) -> BruteHistogram {
    histogram_of(enumerate_partitions_unchecked(n))
}

fn histogram_of(iter: PartitionIter) -> BruteHistogram {
    let mut counts = BTreeMap::new();
    let mut total = 0u64;
    let mut n = 0usize;
    for partition in iter {
        n = partition.sum() as usize;
        *counts.entry(partition.durfee_size()).or_insert(0) += 1;
        total += 1;
    }
    BruteHistogram { n, counts, total }
}

/// First disagreement found by [`cross_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    /// Table entry `d(n,k)` differs from the brute-force count.
    Count {
        n: usize,
        k: usize,
        table: BigUint,
        brute: u64,
    },
    /// Row total differs from the pentagonal-recurrence value.
    Total {
        n: usize,
        table: BigUint,
        pentagonal: BigUint,
    },
}

/// Outcome of a table-vs-oracle sweep.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub upto: usize,
    pub rows_checked: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Verify, for every `n <= upto`, that the brute-force Durfee histogram
/// equals the table row exactly and that the row total matches the
/// pentagonal recurrence. Stops at the first mismatch, which is reported,
/// not raised.
pub fn cross_check(table: &DurfeeTable, upto: usize, allow_large: bool) -> Result<CheckReport> {
    if upto > table.nmax() {
        return Err(Error::OutOfRange {
            n: upto,
            nmax: table.nmax(),
        });
    }
    if upto > ORACLE_SAFETY_BOUND && !allow_large {
        return Err(Error::OracleBoundExceeded {
            n: upto,
            bound: ORACLE_SAFETY_BOUND,
        });
    }
    let pentagonal = partition_numbers(upto);
    for (n, pentagonal_count) in pentagonal.iter().enumerate() {
        let brute = brute_durfee_histogram_unchecked(n);
        // Compare the sparse brute histogram with the table row over the
        // union of supports.
        let row: BTreeMap<usize, BigUint> = table.row(n)?.map(|(k, d)| (k, d.clone())).collect();
        for (&k, &count) in &brute.counts {
            let table_count = row.get(&k).cloned().unwrap_or_default();
            if table_count != BigUint::from(count) {
                return Ok(CheckReport {
                    upto,
                    rows_checked: n,
                    first_mismatch: Some(Mismatch::Count {
                        n,
                        k,
                        table: table_count,
                        brute: count,
                    }),
                });
            }
        }
        for (&k, d) in &row {
            if !brute.counts.contains_key(&k) {
                return Ok(CheckReport {
                    upto,
                    rows_checked: n,
                    first_mismatch: Some(Mismatch::Count {
                        n,
                        k,
                        table: d.clone(),
                        brute: 0,
                    }),
                });
            }
        }
        let total = table.total(n)?;
        if total != pentagonal_count {
            return Ok(CheckReport {
                upto,
                rows_checked: n,
                first_mismatch: Some(Mismatch::Total {
                    n,
                    table: total.clone(),
                    pentagonal: pentagonal_count.clone(),
                }),
            });
        }
    }
    Ok(CheckReport {
        upto,
        rows_checked: upto + 1,
        first_mismatch: None,
    })
}
