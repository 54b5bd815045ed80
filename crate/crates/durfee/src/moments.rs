//! Exact moment calculus for the Durfee-size distribution.
//!
//! Each table row becomes a probability row `p_{n,k} = d(n,k)/p(n)` in exact
//! rational arithmetic. The mean `a_n`, the central moments
//! `m_k(n) = sum_j p_{n,j} (j - a_n)^k` and the standardized moments
//! `alpha_k(n) = m_k(n) / m_2(n)^{k/2}` follow. Everything up to the final
//! standardization is an exact rational; only `alpha_k` is a float, produced
//! by a high-precision quotient with relative error below `2^-50`.
//!
//! The centered generating function is never materialized: dividing the
//! probability generating function by `t^{a_n}` would require a fractional
//! power, but applying `(t d/dt)^k` to it and evaluating at `t = 1` is
//! algebraically the sum `sum_j p_j (j - a_n)^k`, which stays rational.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::DurfeeTable;

/// Exact probability distribution of the Durfee size at one `n`:
/// sparse map `k -> p_{n,k}` with entries in `(0, 1]` summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityRow {
    n: usize,
    probs: Vec<(usize, BigRational)>,
}

impl ProbabilityRow {
    /// Validate and wrap an explicit distribution. Entries must be sorted by
    /// `k`, strictly positive, and sum to exactly 1.
    pub fn new(n: usize, probs: Vec<(usize, BigRational)>) -> Result<ProbabilityRow> {
        if probs.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidInput(
                "probability entries must be sorted by strictly increasing k".into(),
            ));
        }
        if probs.iter().any(|(_, p)| !p.is_positive()) {
            return Err(Error::InvalidInput(
                "probabilities must be strictly positive".into(),
            ));
        }
        let sum: BigRational = probs.iter().map(|(_, p)| p).sum();
        if !sum.is_one() {
            return Err(Error::InvalidInput(format!(
                "probabilities must sum to exactly 1, got {sum}"
            )));
        }
        Ok(ProbabilityRow { n, probs })
    }

    /// Normalize exact counts into probabilities.
    pub fn from_counts<I>(n: usize, counts: I) -> Result<ProbabilityRow>
    where
        I: IntoIterator<Item = (usize, BigUint)>,
    {
        let counts: Vec<(usize, BigUint)> =
            counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let total: BigUint = counts.iter().map(|(_, c)| c).sum();
        if total.is_zero() {
            return Err(Error::InvalidInput("empty distribution".into()));
        }
        let total = BigRational::from_integer(total.into());
        let probs = counts
            .into_iter()
            .map(|(k, c)| (k, BigRational::from_integer(c.into()) / &total))
            .collect();
        ProbabilityRow::new(n, probs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sparse entries `(k, p_{n,k})` in ascending `k`.
    pub fn probs(&self) -> &[(usize, BigRational)] {
        &self.probs
    }
}

/// `P_n(t) = C_n(t)/C_n(1)` as an exact distribution: row `n` of the table
/// normalized by its total.
pub fn pgf_row(table: &DurfeeTable, n: usize) -> Result<ProbabilityRow> {
    let counts = table.row(n)?.map(|(k, d)| (k, d.clone()));
    ProbabilityRow::from_counts(n, counts)
}

/// Expected Durfee size `a_n = sum_k k p_{n,k}`, exact.
pub fn mean(row: &ProbabilityRow) -> BigRational {
    row.probs
        .iter()
        .map(|(k, p)| BigRational::from_integer((*k).into()) * p)
        .sum()
}

/// Central moment `m_k = sum_j p_j (j - a)^k`, exact. `a` must be the row
/// mean for the centering to be meaningful; `m_1` is then exactly zero.
pub fn central_moment(row: &ProbabilityRow, a: &BigRational, k: u32) -> BigRational {
    row.probs
        .iter()
        .map(|(j, p)| {
            let diff = BigRational::from_integer((*j).into()) - a;
            p * rational_pow(&diff, k)
        })
        .sum()
}

fn rational_pow(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Standardized moment `alpha_k = m_k / m_2^{k/2}` as a float with relative
/// error at most `2^-50`.
///
/// For odd `k` the denominator involves a square root; the value is computed
/// as `sign(m_k) * sqrt(m_k^2 / m_2^k)` so the only inexact steps are one
/// high-precision rational-to-float conversion and one correctly rounded
/// `sqrt`.
pub fn standardized_moment(m2: &BigRational, mk: &BigRational, k: u32) -> Result<f64> {
    if m2.is_zero() {
        return Err(Error::ZeroVariance);
    }
    if m2.is_negative() {
        return Err(Error::InvalidInput("m_2 must be positive".into()));
    }
    if k.is_multiple_of(2) {
        let ratio = mk / rational_pow(m2, k / 2);
        Ok(rational_to_f64(&ratio))
    } else {
        let squared = mk * mk / rational_pow(m2, k);
        let magnitude = rational_to_f64(&squared).sqrt();
        Ok(if mk.is_negative() {
            -magnitude
        } else {
            magnitude
        })
    }
}

/// Moments of the standard normal distribution: 0 for odd `k`,
/// `k!/((k/2)! 2^{k/2})` (the odd double factorial `(k-1)!!`) for even `k`.
///
/// Panics if the value overflows `u64` (first at `k = 36`).
pub fn normal_moment(k: u32) -> u64 {
    if k % 2 == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    let mut factor: u64 = 1;
    while factor < u64::from(k) {
        acc = acc
            .checked_mul(factor)
            .expect("normal moment overflows u64");
        factor += 2;
    }
    acc
}

/// Exact mean, exact central moments `m_1..m_K`, and float standardized
/// moments `alpha_3..alpha_K` for one `n`.
#[derive(Debug, Clone)]
pub struct MomentRecord {
    pub n: usize,
    pub order: u32,
    pub mean: BigRational,
    central: Vec<BigRational>,
    standardized: Vec<f64>,
}

impl MomentRecord {
    /// `m_k`, for `1 <= k <= order`.
    pub fn central(&self, k: u32) -> Option<&BigRational> {
        if k >= 1 && k <= self.order {
            self.central.get((k - 1) as usize)
        } else {
            None
        }
    }

    /// `alpha_k`, for `3 <= k <= order`.
    pub fn standardized(&self, k: u32) -> Option<f64> {
        if k >= 3 && k <= self.order {
            self.standardized.get((k - 3) as usize).copied()
        } else {
            None
        }
    }

    /// All central moments, index `i` holding `m_{i+1}`.
    pub fn central_all(&self) -> &[BigRational] {
        &self.central
    }

    /// All standardized moments, index `i` holding `alpha_{i+3}`.
    pub fn standardized_all(&self) -> &[f64] {
        &self.standardized
    }
}

#[cfg(test)]
impl MomentRecord {
    /// Record with prescribed standardized moments `alpha_3..alpha_order`;
    /// mean and central moments are placeholders.
    pub(crate) fn synthetic(n: usize, order: u32, standardized: Vec<f64>) -> MomentRecord {
        assert_eq!(standardized.len() as u32, order - 2);
        MomentRecord {
            n,
            order,
            mean: BigRational::zero(),
            central: vec![BigRational::zero(); order as usize],
            standardized,
        }
    }
}

/// Compute a [`MomentRecord`] for each requested `n`, all moments up to
/// `order`.
///
/// Rows with a deterministic Durfee size (`n <= 3`) have `m_2 = 0`; they are
/// rejected with a degenerate-distribution error rather than special-cased.
pub fn moment_sweep(table: &DurfeeTable, ns: &[usize], order: u32) -> Result<Vec<MomentRecord>> {
    if order < 2 {
        return Err(Error::InvalidInput(format!(
            "moment order must be at least 2, got {order}"
        )));
    }
    ns.iter().map(|&n| moment_record(table, n, order)).collect()
}

fn moment_record(table: &DurfeeTable, n: usize, order: u32) -> Result<MomentRecord> {
    let row = pgf_row(table, n)?;
    let a = mean(&row);

    // Incremental powers of (j - a) across orders: one pass per row entry.
    let mut central = vec![BigRational::zero(); order as usize];
    for (j, p) in row.probs() {
        let diff = BigRational::from_integer((*j).into()) - &a;
        let mut power = BigRational::one();
        for m in central.iter_mut() {
            power *= &diff;
            *m += p * &power;
        }
    }

    let m2 = &central[1];
    if m2.is_zero() {
        return Err(Error::DegenerateDistribution { n });
    }
    let standardized = (3..=order)
        .map(|k| standardized_moment(m2, &central[(k - 1) as usize], k))
        .collect::<Result<Vec<f64>>>()?;

    Ok(MomentRecord {
        n,
        order,
        mean: a,
        central,
        standardized,
    })
}

/// Convert an exact rational to `f64` with relative error at most `2^-50`.
///
/// Numerators and denominators here run to thousands of bits, so converting
/// them to floats separately would overflow to infinity. Instead the
/// quotient itself is computed to 64 mantissa bits by shifting, then scaled
/// back by an exact power of two: truncation contributes at most `2^-63`
/// and the final rounding `2^-53`.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    const MANTISSA_BITS: i64 = 64;
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let shift = MANTISSA_BITS - (num.bits() as i64 - den.bits() as i64);
    let quotient = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let mantissa = quotient
        .to_u128()
        .expect("shifted quotient fits in 128 bits") as f64;
    let magnitude = ldexp(mantissa, -shift);
    if x.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// `x * 2^e` with the exponent applied in safe chunks.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}
