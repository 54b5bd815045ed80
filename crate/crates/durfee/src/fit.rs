//! Least-squares fitting of finite asymptotic expansions in powers of
//! `n^{-1/2}`, and the report comparing fitted standardized-moment limits
//! against the moments of the standard normal distribution.
//!
//! The basis `{n^e}` over half-integer exponents is Vandermonde-like and
//! ill-conditioned, so the solve goes through an orthogonal decomposition
//! (SVD) with columns scaled to unit norm first; normal equations would lose
//! digits.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::{normal_moment, MomentRecord};

/// A half-integer exponent, stored as twice its value so `1/2`, `0`, `-3/2`
/// are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(i32);

impl HalfInteger {
    /// Exponent `halves / 2`.
    pub const fn from_halves(halves: i32) -> HalfInteger {
        HalfInteger(halves)
    }

    pub const fn halves(self) -> i32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// `n^e`, evaluated as `sqrt(n)^(2e)` so the only rounding steps are one
    /// correctly rounded square root and small integer powers.
    pub fn power_of(self, n: u64) -> f64 {
        (n as f64).sqrt().powi(self.0)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInteger {
    type Err = Error;

    /// Accepts integers (`-1`), halves (`1/2`, `-3/2`) and exact decimals
    /// (`0.5`, `-1.5`).
    fn from_str(s: &str) -> Result<HalfInteger> {
        let s = s.trim();
        let invalid = || Error::InvalidInput(format!("not a half-integer exponent: {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(invalid());
            }
            let halves: i32 = num.trim().parse().map_err(|_| invalid())?;
            return Ok(HalfInteger(halves));
        }
        if let Ok(whole) = s.parse::<i32>() {
            return Ok(HalfInteger(whole * 2));
        }
        let value: f64 = s.parse().map_err(|_| invalid())?;
        let halves = value * 2.0;
        if halves.fract() != 0.0 || halves.abs() > i32::MAX as f64 {
            return Err(invalid());
        }
        Ok(HalfInteger(halves as i32))
    }
}

/// Default basis for the mean and variance fits: `sqrt(n)` leading term plus
/// constant, `1/sqrt(n)` and `1/n` corrections.
pub fn default_mean_basis() -> Vec<HalfInteger> {
    vec![
        HalfInteger::from_halves(1),
        HalfInteger::from_halves(0),
        HalfInteger::from_halves(-1),
        HalfInteger::from_halves(-2),
    ]
}

/// Default basis for standardized-moment fits: a finite limit plus
/// `1/sqrt(n)` and `1/n` corrections.
pub fn default_alpha_basis() -> Vec<HalfInteger> {
    vec![
        HalfInteger::from_halves(0),
        HalfInteger::from_halves(-1),
        HalfInteger::from_halves(-2),
    ]
}

/// A fitted expansion `sum_e c_e n^e` over strictly descending half-integer
/// exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticModel {
    exponents: Vec<HalfInteger>,
    coefficients: Vec<f64>,
}

impl AsymptoticModel {
    pub fn new(exponents: Vec<HalfInteger>, coefficients: Vec<f64>) -> Result<AsymptoticModel> {
        if exponents.len() != coefficients.len() {
            return Err(Error::InvalidInput(
                "exponent and coefficient lists must have equal length".into(),
            ));
        }
        validate_exponents(&exponents)?;
        Ok(AsymptoticModel {
            exponents,
            coefficients,
        })
    }

    pub fn exponents(&self) -> &[HalfInteger] {
        &self.exponents
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Coefficient of a given exponent, if present in the basis.
    pub fn coefficient_of(&self, exponent: HalfInteger) -> Option<f64> {
        self.exponents
            .iter()
            .position(|&e| e == exponent)
            .map(|i| self.coefficients[i])
    }

    /// Leading (largest-exponent) term.
    pub fn leading(&self) -> (HalfInteger, f64) {
        (self.exponents[0], self.coefficients[0])
    }

    /// Evaluate `sum_e c_e n^e` at `n >= 1`.
    pub fn evaluate(&self, n: u64) -> f64 {
        debug_assert!(n >= 1);
        self.exponents
            .iter()
            .zip(&self.coefficients)
            .map(|(e, c)| c * e.power_of(n))
            .sum()
    }
}

fn validate_exponents(exponents: &[HalfInteger]) -> Result<()> {
    if exponents.is_empty() {
        return Err(Error::InvalidInput("empty exponent basis".into()));
    }
    if exponents.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidInput(
            "exponents must be strictly descending".into(),
        ));
    }
    Ok(())
}

/// A fitted model plus the sample it was fitted on and residual diagnostics.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub model: AsymptoticModel,
    pub sample: Vec<u64>,
    pub residual_rms: f64,
    pub max_abs_residual: f64,
}

/// Least-squares fit of `value ~ sum_e c_e n^e` over the given exponents.
///
/// Columns of the design matrix are scaled to unit norm, the scaled system is
/// solved by SVD, and the coefficients are unscaled afterwards. Requires at
/// least as many samples as exponents, distinct `n` values, and `n >= 4`.
pub fn fit_sqrt_series(samples: &[(u64, f64)], exponents: &[HalfInteger]) -> Result<FitResult> {
    validate_exponents(exponents)?;
    if samples.len() < exponents.len() {
        return Err(Error::Underdetermined {
            samples: samples.len(),
            exponents: exponents.len(),
        });
    }
    let mut seen = std::collections::BTreeSet::new();
    for &(n, _) in samples {
        if n < 4 {
            return Err(Error::InvalidInput(format!(
                "fit samples must have n >= 4, got n = {n}"
            )));
        }
        if !seen.insert(n) {
            return Err(Error::IllConditioned(format!(
                "duplicate sample point n = {n}"
            )));
        }
    }

    let rows = samples.len();
    let cols = exponents.len();
    let mut design = DMatrix::zeros(rows, cols);
    for (i, &(n, _)) in samples.iter().enumerate() {
        for (j, e) in exponents.iter().enumerate() {
            design[(i, j)] = e.power_of(n);
        }
    }

    let scales: Vec<f64> = (0..cols).map(|j| design.column(j).norm()).collect();
    if scales.iter().any(|&s| s == 0.0 || !s.is_finite()) {
        return Err(Error::IllConditioned("degenerate basis column".into()));
    }
    for (j, &s) in scales.iter().enumerate() {
        let mut col = design.column_mut(j);
        col /= s;
    }

    let values = DVector::from_iterator(rows, samples.iter().map(|&(_, v)| v));
    let svd = design.clone().svd(true, true);
    let sigma_max = svd.singular_values.max();
    let sigma_min = svd.singular_values.min();
    if sigma_min <= sigma_max * 1e-12 {
        return Err(Error::IllConditioned(format!(
            "singular value ratio {:.3e}",
            sigma_min / sigma_max
        )));
    }
    let scaled = svd
        .solve(&values, sigma_max * f64::EPSILON)
        .map_err(|e| Error::IllConditioned(e.to_string()))?;
    let coefficients: Vec<f64> = scaled.iter().zip(&scales).map(|(c, s)| c / s).collect();

    let model = AsymptoticModel::new(exponents.to_vec(), coefficients)?;
    let mut sum_sq = 0.0;
    let mut max_abs: f64 = 0.0;
    for &(n, v) in samples {
        let r = v - model.evaluate(n);
        sum_sq += r * r;
        max_abs = max_abs.max(r.abs());
    }
    Ok(FitResult {
        model,
        sample: samples.iter().map(|&(n, _)| n).collect(),
        residual_rms: (sum_sq / rows as f64).sqrt(),
        max_abs_residual: max_abs,
    })
}

/// The `n -> infinity` limit of a fitted expansion: the coefficient of
/// `n^0`. The basis must contain exponent 0 and nothing positive, otherwise
/// the limit does not exist.
pub fn limit_estimate(fit: &FitResult) -> Result<f64> {
    let exponents = fit.model.exponents();
    if exponents.iter().any(|e| e.halves() > 0) {
        return Err(Error::ModelMisuse(
            "limit of a basis with positive exponents diverges".into(),
        ));
    }
    fit.model
        .coefficient_of(HalfInteger::from_halves(0))
        .ok_or_else(|| Error::ModelMisuse("basis has no constant term".into()))
}

/// Ratio of the leading `sqrt(n)` coefficients of the variance and mean
/// fits. Both fits must lead with exponent `1/2`.
pub fn concentration_ratio(mean_fit: &FitResult, var_fit: &FitResult) -> Result<f64> {
    let half = HalfInteger::from_halves(1);
    let (me, mc) = mean_fit.model.leading();
    let (ve, vc) = var_fit.model.leading();
    if me != half || ve != half {
        return Err(Error::ModelMisuse(format!(
            "concentration ratio needs leading exponent 1/2 on both fits, got {me} and {ve}"
        )));
    }
    Ok(vc / mc)
}

/// The exact constant `sqrt(6) ln(2) / pi` in the leading term of the mean:
/// the average Durfee size is `(sqrt(6) ln 2 / pi) sqrt(n) + O(1)`.
pub fn reference_mean_constant() -> f64 {
    6f64.sqrt() * std::f64::consts::LN_2 / std::f64::consts::PI
}

/// Absolute PASS/FAIL tolerances on `|beta_k - normal_moment(k)|`, keyed by
/// moment order. Loaded from configuration; the defaults below are the
/// shipped acceptance thresholds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToleranceSet(pub BTreeMap<u32, f64>);

impl Default for ToleranceSet {
    fn default() -> ToleranceSet {
        // Orders 3-6, 8, 10 and 12 carry individually chosen thresholds;
        // the rest follow the 2%-of-next-even-normal-moment rule.
        let mut map = BTreeMap::new();
        map.insert(3, 0.05);
        map.insert(4, 0.02);
        map.insert(5, 0.3);
        map.insert(6, 0.2);
        map.insert(7, 0.02 * normal_moment(8) as f64);
        map.insert(8, 1.5);
        map.insert(9, 0.02 * normal_moment(10) as f64);
        map.insert(10, 0.02 * normal_moment(10) as f64);
        map.insert(11, 0.02 * normal_moment(12) as f64);
        map.insert(12, 0.02 * normal_moment(12) as f64);
        map.insert(13, 0.02 * normal_moment(14) as f64);
        map.insert(14, 0.02 * normal_moment(14) as f64);
        ToleranceSet(map)
    }
}

impl ToleranceSet {
    /// Tolerance for one order, if configured.
    pub fn for_order(&self, k: u32) -> Option<f64> {
        self.0.get(&k).copied()
    }

    /// Overlay explicit entries onto the defaults.
    pub fn with_overrides(overrides: BTreeMap<u32, f64>) -> ToleranceSet {
        let mut base = ToleranceSet::default();
        base.0.extend(overrides);
        base
    }
}

/// Per-order outcome in a [`NormalityReport`].
#[derive(Debug, Clone, Serialize)]
pub struct OrderVerdict {
    pub order: u32,
    /// Fitted limit `beta_k`.
    pub limit: f64,
    /// Normal-distribution target: 0 for odd orders, `(k-1)!!` for even.
    pub target: f64,
    pub abs_deviation: f64,
    /// Deviation relative to the target; absent for odd orders (target 0).
    pub rel_deviation: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Fitted standardized-moment limits for every order `3..=K`, compared
/// against the standard normal moments.
#[derive(Debug, Clone)]
pub struct NormalityReport {
    pub orders: Vec<OrderVerdict>,
    pub sample: Vec<u64>,
    pub basis: Vec<HalfInteger>,
}

impl NormalityReport {
    pub fn all_pass(&self) -> bool {
        self.orders.iter().all(|o| o.pass)
    }
}

/// Fit each order's `alpha_k(n)` sequence over the records, estimate its
/// limit, and compare against the normal moment at the configured tolerance.
///
/// All records must stem from `n >= 4` and carry moments up to `max_order`;
/// the basis must be one whose limit exists (no positive exponents).
pub fn normality_report(
    records: &[MomentRecord],
    max_order: u32,
    basis: &[HalfInteger],
    tolerances: &ToleranceSet,
) -> Result<NormalityReport> {
    if max_order < 3 {
        return Err(Error::InvalidInput(format!(
            "normality report needs max order >= 3, got {max_order}"
        )));
    }
    if records.len() < basis.len() {
        return Err(Error::Underdetermined {
            samples: records.len(),
            exponents: basis.len(),
        });
    }
    for r in records {
        if r.order < max_order {
            return Err(Error::InvalidInput(format!(
                "record at n = {} has order {} < requested {max_order}",
                r.n, r.order
            )));
        }
    }

    let mut orders = Vec::new();
    for k in 3..=max_order {
        let samples: Vec<(u64, f64)> = records
            .iter()
            .map(|r| (r.n as u64, r.standardized(k).expect("order checked above")))
            .collect();
        let fit = fit_sqrt_series(&samples, basis)?;
        let limit = limit_estimate(&fit)?;
        let target = normal_moment(k) as f64;
        let abs_deviation = (limit - target).abs();
        let tolerance = tolerances
            .for_order(k)
            .ok_or_else(|| Error::InvalidInput(format!("no tolerance configured for order {k}")))?;
        orders.push(OrderVerdict {
            order: k,
            limit,
            target,
            abs_deviation,
            rel_deviation: (target != 0.0).then(|| abs_deviation / target),
            tolerance,
            pass: abs_deviation <= tolerance,
        });
    }
    Ok(NormalityReport {
        orders,
        sample: records.iter().map(|r| r.n as u64).collect(),
        basis: basis.to_vec(),
    })
}
