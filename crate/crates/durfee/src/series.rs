//! Expansion of the Durfee-square refinement of the Euler–Gauss identity.
//!
//! The classical identity
//!
//! ```text
//! prod_{i>=1} 1/(1-q^i)  =  sum_{k>=0} q^{k^2} / prod_{j=1}^{k} (1-q^j)^2
//! ```
//!
//! classifies partitions by the side `k` of their Durfee square. Tagging the
//! `k`-th summand with `t^k` refines the partition generating function into
//! the two-variable series `sum_n C_n(t) q^n` whose coefficient of `q^n t^k`
//! is `d(n,k)`, the number of partitions of `n` with Durfee size exactly `k`.
//!
//! [`DurfeeTable::new`] expands that sum truncated at order `N`: only
//! `k <= floor(sqrt(N))` contribute, since the summand for `k` starts at
//! `q^{k^2}`. The row sums `sum_k d(n,k) = p(n)` are cross-checked against
//! [`partition_numbers`], which computes `p(n)` by Euler's pentagonal-number
//! recurrence - an algorithm independent of the Durfee expansion.

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense power series in `q`, truncated at a fixed order, with
/// arbitrary-precision integer coefficients.
///
/// Coefficients grow like `p(n)` (85 decimal digits at `n = 6400`), so
/// fixed-width integers are not an option.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<BigUint>,
}

impl TruncatedSeries {
    /// The constant series `1`, truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); order + 1];
        coeffs[0] = BigUint::one();
        TruncatedSeries { order, coeffs }
    }

    /// Truncation order `N`; coefficients cover `q^0 ..= q^N`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `q^j`. Panics if `j > order`.
    pub fn coeff(&self, j: usize) -> &BigUint {
        &self.coeffs[j]
    }

    /// All coefficients, index `j` holding the coefficient of `q^j`.
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }
}

/// Multiply `coeffs` in place by the geometric series `1/(1 - q^stride)`,
/// i.e. a running prefix sum with the given stride. O(len) big-int additions.
fn mul_geometric_inplace(coeffs: &mut [BigUint], stride: usize) {
    for s in stride..coeffs.len() {
        let (lo, hi) = coeffs.split_at_mut(s);
        hi[0] += &lo[s - stride];
    }
}

/// The factor `prod_{j=1}^{k} (1-q^j)^{-2}` truncated at order `N`.
///
/// Each `(1-q^j)^{-2}` is applied as two successive multiplications by the
/// geometric series in `q^j`, so the whole expansion costs O(N·k) big-int
/// additions and no polynomial division.
///
/// The coefficient of `q^m` counts pairs of partitions `(mu, nu)` with all
/// parts `<= k` and `|mu| + |nu| = m`; for `k = 0` the empty product is the
/// constant series `1`.
pub fn inv_square_factor_series(k: usize, order: usize) -> TruncatedSeries {
    let mut series = TruncatedSeries::one(order);
    for j in 1..=k {
        mul_geometric_inplace(&mut series.coeffs, j);
        mul_geometric_inplace(&mut series.coeffs, j);
    }
    series
}

/// `p(0..=nmax)` by the pentagonal-number recurrence
/// `p(n) = sum_{j>=1} (-1)^{j+1} [p(n - j(3j-1)/2) + p(n - j(3j+1)/2)]`.
///
/// Independent of the Durfee expansion; used as the cross-check for the
/// table's row sums. Positive and negative contributions are accumulated
/// separately so the arithmetic stays in unsigned big integers.
pub fn partition_numbers(nmax: usize) -> Vec<BigUint> {
    let mut p = Vec::with_capacity(nmax + 1);
    p.push(BigUint::one());
    for n in 1..=nmax {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        let mut j = 1usize;
        loop {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let acc = if j % 2 == 1 { &mut plus } else { &mut minus };
            *acc += &p[n - g1];
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= n {
                *acc += &p[n - g2];
            }
            j += 1;
        }
        p.push(plus - minus);
    }
    p
}

/// Exact counts `d(n,k)` of partitions of `n` with Durfee size `k`, for all
/// `n <= nmax`, together with the row totals `p(n)`.
#[derive(Debug, Clone)]
pub struct DurfeeTable {
    nmax: usize,
    /// Row `n` has length `floor(sqrt(n)) + 1`; entry `k` is `d(n,k)`.
    /// `d(n,0)` is zero for `n >= 1` and one for `n = 0`.
    pub(crate) rows: Vec<Vec<BigUint>>,
    totals: Vec<BigUint>,
}

impl DurfeeTable {
    /// Expand `sum_{k=0}^{floor(sqrt(nmax))} q^{k^2} t^k / prod_{j=1}^k (1-q^j)^2`
    /// to order `nmax` in `q`.
    ///
    /// The running factor series is reused across `k`: stepping from `k-1`
    /// to `k` multiplies in the two new geometric factors and then deposits
    /// the `q^{k^2}`-shifted coefficients into column `k`. Total cost is
    /// O(nmax^{3/2}) big-int additions.
    pub fn new(nmax: usize) -> DurfeeTable {
        let kmax = nmax.sqrt();
        let mut rows: Vec<Vec<BigUint>> = (0..=nmax)
            .map(|n| vec![BigUint::zero(); n.sqrt() + 1])
            .collect();
        rows[0][0] = BigUint::one();

        let mut factor = TruncatedSeries::one(nmax);
        for k in 1..=kmax {
            mul_geometric_inplace(&mut factor.coeffs, k);
            mul_geometric_inplace(&mut factor.coeffs, k);
            // Column k is the factor series shifted by q^{k^2}.
            for (row, coeff) in rows[k * k..].iter_mut().zip(&factor.coeffs) {
                row[k] = coeff.clone();
            }
        }

        let totals = rows.iter().map(|row| row.iter().sum()).collect();
        DurfeeTable { nmax, rows, totals }
    }

    /// Largest `n` covered by the table.
    pub fn nmax(&self) -> usize {
        self.nmax
    }

    /// `d(n,k)`, zero when `k` is outside the support of row `n`.
    pub fn count(&self, n: usize, k: usize) -> Result<BigUint> {
        self.check_range(n)?;
        Ok(self.rows[n].get(k).cloned().unwrap_or_else(BigUint::zero))
    }

    /// Sparse view of row `n`: the nonzero `(k, d(n,k))` pairs in
    /// ascending `k`.
    pub fn row(&self, n: usize) -> Result<impl Iterator<Item = (usize, &BigUint)>> {
        self.check_range(n)?;
        Ok(self.rows[n]
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero()))
    }

    /// Row total `sum_k d(n,k)`, which equals `p(n)`.
    pub fn total(&self, n: usize) -> Result<&BigUint> {
        self.check_range(n)?;
        Ok(&self.totals[n])
    }

    fn check_range(&self, n: usize) -> Result<()> {
        if n > self.nmax {
            Err(Error::OutOfRange { n, nmax: self.nmax })
        } else {
            Ok(())
        }
    }
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Validate and wrap a part sequence. The empty sequence is the unique
    /// partition of 0.
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts must be weakly decreasing, found {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        Ok(Partition { parts })
    }

    /// The empty partition (of 0).
    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Partition {
        debug_assert!(Partition::new(parts.clone()).is_ok());
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The partitioned integer: sum of the parts.
    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Side of the Durfee square, alias h-index: the largest `i` with
    /// `lambda_i >= i`, or 0 for the empty partition.
    ///
    /// Because the parts are weakly decreasing, `lambda_i >= i` holds on a
    /// prefix, so the answer is the length of that prefix.
    pub fn durfee_size(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p as usize > i)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn nums(series: &TruncatedSeries) -> Vec<u64> {
        series
            .coeffs()
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn inv_square_factor_k0_is_one() {
        let s = inv_square_factor_series(0, 3);
        assert_eq!(nums(&s), vec![1, 0, 0, 0]);
    }

    #[test]
    fn inv_square_factor_k1_is_binomial() {
        // 1/(1-q)^2 = sum (j+1) q^j
        let s = inv_square_factor_series(1, 4);
        assert_eq!(nums(&s), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn inv_square_factor_k2_counts_partition_pairs() {
        // Coefficient of q^m counts pairs (mu, nu) with parts <= 2 and
        // |mu| + |nu| = m. Enumerate those pairs directly.
        let parts_le2: Vec<usize> = (0..=4)
            .map(|m| {
                crate::oracle::enumerate_partitions(m)
                    .unwrap()
                    .filter(|p| p.parts().iter().all(|&x| x <= 2))
                    .count()
            })
            .collect();
        let expected: Vec<u64> = (0..=4)
            .map(|m| {
                (0..=m)
                    .map(|a| (parts_le2[a] * parts_le2[m - a]) as u64)
                    .sum()
            })
            .collect();
        assert_eq!(expected, vec![1, 2, 5, 8, 14]);
        let s = inv_square_factor_series(2, 4);
        assert_eq!(nums(&s), expected);
    }

    #[test]
    fn inv_square_factor_coefficients_strictly_positive() {
        for k in 1..=6 {
            let s = inv_square_factor_series(k, 50);
            assert!(s.coeffs().iter().all(|c| !c.is_zero()), "k = {k}");
        }
    }

    #[test]
    fn series_has_order_plus_one_coefficients() {
        for order in [0, 1, 7, 50] {
            let s = inv_square_factor_series(3, order);
            assert_eq!(s.order(), order);
            assert_eq!(s.coeffs().len(), order + 1);
        }
    }

    #[test]
    fn partition_numbers_small() {
        let p = partition_numbers(10);
        let got: Vec<u64> = p.iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn partition_numbers_known_values() {
        let p = partition_numbers(200);
        assert_eq!(p[40].to_u64().unwrap(), 37338);
        assert_eq!(p[100].to_u64().unwrap(), 190_569_292);
        assert_eq!(p[200].to_u64().unwrap(), 3_972_999_029_388);
    }

    #[test]
    fn table_order_zero() {
        let t = DurfeeTable::new(0);
        let row: Vec<(usize, u64)> = t
            .row(0)
            .unwrap()
            .map(|(k, d)| (k, d.to_u64().unwrap()))
            .collect();
        assert_eq!(row, vec![(0, 1)]);
        assert_eq!(t.total(0).unwrap().to_u64().unwrap(), 1);
    }

    #[test]
    fn table_row_4() {
        // Partitions of 4: 4, 3+1, 2+2, 2+1+1, 1+1+1+1; only 2+2 has a
        // 2x2 Durfee square.
        let t = DurfeeTable::new(4);
        let row: Vec<(usize, u64)> = t
            .row(4)
            .unwrap()
            .map(|(k, d)| (k, d.to_u64().unwrap()))
            .collect();
        assert_eq!(row, vec![(1, 4), (2, 1)]);
    }

    #[test]
    fn table_total_10() {
        let t = DurfeeTable::new(10);
        assert_eq!(t.total(10).unwrap().to_u64().unwrap(), 42);
        let row: Vec<(usize, u64)> = t
            .row(10)
            .unwrap()
            .map(|(k, d)| (k, d.to_u64().unwrap()))
            .collect();
        assert_eq!(row, vec![(1, 10), (2, 30), (3, 2)]);
    }

    #[test]
    fn table_row_sums_match_pentagonal() {
        let nmax = 300;
        let t = DurfeeTable::new(nmax);
        for (n, expected) in partition_numbers(nmax).iter().enumerate() {
            assert_eq!(t.total(n).unwrap(), expected, "n = {n}");
        }
    }

    #[test]
    fn table_support() {
        // d(n,k) > 0 iff 1 <= k and k^2 <= n, plus the single case (0,0).
        let nmax = 200;
        let t = DurfeeTable::new(nmax);
        for n in 0..=nmax {
            for k in 0..=(n.sqrt() + 1) {
                let d = t.count(n, k).unwrap();
                let expected = (k >= 1 && k * k <= n) || (n == 0 && k == 0);
                assert_eq!(!d.is_zero(), expected, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn table_column_matches_shifted_factor_series() {
        // For fixed k, d(n,k) as a function of n are the coefficients of
        // q^{k^2} / prod_{j<=k} (1-q^j)^2.
        let nmax = 120;
        let t = DurfeeTable::new(nmax);
        for k in 1..=nmax.sqrt() {
            let f = inv_square_factor_series(k, nmax - k * k);
            for n in (k * k)..=nmax {
                assert_eq!(
                    &t.count(n, k).unwrap(),
                    f.coeff(n - k * k),
                    "n = {n}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn table_out_of_range() {
        let t = DurfeeTable::new(5);
        assert!(matches!(
            t.total(6),
            Err(Error::OutOfRange { n: 6, nmax: 5 })
        ));
        assert!(t.row(9).is_err());
        assert!(t.count(9, 1).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![3, 2, 2, 1]).is_ok());
        assert!(Partition::new(vec![]).is_ok());
        assert!(matches!(
            Partition::new(vec![1, 2]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::new(vec![2, 0]),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn durfee_size_examples() {
        assert_eq!(Partition::new(vec![1, 1, 1, 1]).unwrap().durfee_size(), 1);
        assert_eq!(Partition::new(vec![2, 2]).unwrap().durfee_size(), 2);
        assert_eq!(Partition::new(vec![3, 3, 3]).unwrap().durfee_size(), 3);
        assert_eq!(Partition::empty().durfee_size(), 0);
        assert_eq!(Partition::new(vec![5, 1]).unwrap().durfee_size(), 1);
    }
}
