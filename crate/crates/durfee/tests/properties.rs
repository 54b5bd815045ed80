//! Property tests over the public API.

use std::sync::LazyLock;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use durfee::fit::{default_alpha_basis, fit_sqrt_series, limit_estimate, HalfInteger};
use durfee::moments::{central_moment, mean, moment_sweep, pgf_row, rational_to_f64};
use durfee::oracle::brute_durfee_histogram;
use durfee::series::{partition_numbers, DurfeeTable};

static PENTAGONAL: LazyLock<Vec<BigUint>> = LazyLock::new(|| partition_numbers(150));

/// Shared mid-scale pipeline state for fit-level properties.
static ALPHA4_SAMPLES: LazyLock<Vec<(u64, f64)>> = LazyLock::new(|| {
    let table = DurfeeTable::new(2500);
    let ns: Vec<usize> = (20..=50).map(|i| i * i).collect();
    moment_sweep(&table, &ns, 4)
        .unwrap()
        .iter()
        .map(|r| (r.n as u64, r.standardized(4).unwrap()))
        .collect()
});

proptest! {
    #[test]
    fn row_sums_equal_pentagonal_counts(nmax in 0usize..=150) {
        let table = DurfeeTable::new(nmax);
        for n in 0..=nmax {
            prop_assert_eq!(table.total(n).unwrap(), &PENTAGONAL[n]);
        }
    }

    #[test]
    fn tables_are_truncation_consistent(a in 0usize..=150, b in 0usize..=150) {
        let (lo, hi) = (a.min(b), a.max(b));
        let small = DurfeeTable::new(lo);
        let large = DurfeeTable::new(hi);
        for n in 0..=lo {
            let s: Vec<(usize, BigUint)> =
                small.row(n).unwrap().map(|(k, d)| (k, d.clone())).collect();
            let l: Vec<(usize, BigUint)> =
                large.row(n).unwrap().map(|(k, d)| (k, d.clone())).collect();
            prop_assert_eq!(s, l);
        }
    }

    #[test]
    fn probability_rows_are_exact(n in 4usize..=150) {
        let table = DurfeeTable::new(n);
        let row = pgf_row(&table, n).unwrap();
        let sum: BigRational = row.probs().iter().map(|(_, p)| p).sum();
        prop_assert!(sum.is_one());

        let a = mean(&row);
        prop_assert!(central_moment(&row, &a, 1).is_zero());

        // Two algebraic routes to the variance agree exactly.
        let ex2: BigRational = row
            .probs()
            .iter()
            .map(|(j, p)| BigRational::from_integer((*j * *j).into()) * p)
            .sum();
        prop_assert_eq!(central_moment(&row, &a, 2), ex2 - &a * &a);
    }

    /// Moments computed from the brute-force histogram equal moments
    /// computed from the table, exactly.
    #[test]
    fn moments_agree_with_brute_force(n in 4usize..=40) {
        let table = DurfeeTable::new(n);
        let from_table = pgf_row(&table, n).unwrap();

        let brute = brute_durfee_histogram(n).unwrap();
        let counts = brute.counts.iter().map(|(&k, &c)| (k, BigUint::from(c)));
        let from_brute = durfee::ProbabilityRow::from_counts(n, counts).unwrap();

        let a = mean(&from_table);
        prop_assert_eq!(&a, &mean(&from_brute));
        for k in 1..=6 {
            prop_assert_eq!(
                central_moment(&from_table, &a, k),
                central_moment(&from_brute, &a, k)
            );
        }
    }

    /// Even central moments are nonnegative rationals.
    #[test]
    fn even_central_moments_nonnegative(n in 0usize..=120) {
        let table = DurfeeTable::new(n);
        let row = pgf_row(&table, n).unwrap();
        let a = mean(&row);
        for k in [2u32, 4, 6, 8] {
            let m = central_moment(&row, &a, k);
            prop_assert!(m >= BigRational::zero(), "m_{} = {} at n = {}", k, m, n);
        }
    }

    #[test]
    fn brute_histogram_matches_table(n in 0usize..=24) {
        let table = DurfeeTable::new(n);
        let brute = brute_durfee_histogram(n).unwrap();
        let row: Vec<(usize, BigUint)> =
            table.row(n).unwrap().map(|(k, d)| (k, d.clone())).collect();
        let hist: Vec<(usize, BigUint)> = brute
            .counts
            .iter()
            .map(|(&k, &c)| (k, BigUint::from(c)))
            .collect();
        prop_assert_eq!(row, hist);
    }

    /// Fitting data generated exactly from a model in the basis recovers its
    /// coefficients to 1e-10 relative error. Coefficients are drawn in the
    /// column-scaled frame so every basis term contributes comparably.
    #[test]
    fn fit_recovers_exact_models(
        scaled in proptest::collection::vec((0.1f64..10.0, proptest::bool::ANY), 3..=3)
    ) {
        let basis = default_alpha_basis();
        let ns: Vec<u64> = (40..=80).map(|i| i * i).collect();
        let col_norms: Vec<f64> = basis
            .iter()
            .map(|e| ns.iter().map(|&n| e.power_of(n).powi(2)).sum::<f64>().sqrt())
            .collect();
        let coeffs: Vec<f64> = scaled
            .iter()
            .zip(&col_norms)
            .map(|((mag, neg), norm)| if *neg { -mag / norm } else { mag / norm })
            .collect();
        let samples: Vec<(u64, f64)> = ns
            .iter()
            .map(|&n| {
                let v: f64 = basis.iter().zip(&coeffs).map(|(e, c)| c * e.power_of(n)).sum();
                (n, v)
            })
            .collect();
        let fit = fit_sqrt_series(&samples, &basis).unwrap();
        for (got, want) in fit.model.coefficients().iter().zip(&coeffs) {
            prop_assert!(((got - want) / want).abs() <= 1e-10);
        }
    }

    /// The fitted limit does not depend on sample ordering.
    #[test]
    fn limit_is_order_invariant(perm in Just((0..31usize).collect::<Vec<_>>()).prop_shuffle()) {
        let samples = &*ALPHA4_SAMPLES;
        prop_assert_eq!(samples.len(), 31);
        let basis = default_alpha_basis();
        let base = limit_estimate(&fit_sqrt_series(samples, &basis).unwrap()).unwrap();
        let shuffled: Vec<(u64, f64)> = perm.iter().map(|&i| samples[i]).collect();
        let permuted = limit_estimate(&fit_sqrt_series(&shuffled, &basis).unwrap()).unwrap();
        prop_assert!((base - permuted).abs() <= 1e-6);
    }

    /// High-precision conversion agrees with native f64 division wherever
    /// the operands are exactly representable.
    #[test]
    fn rational_to_f64_matches_native(n in -1_000_000_000_000i64..1_000_000_000_000i64,
                                      d in 1i64..1_000_000_000_000i64) {
        let x = BigRational::new(n.into(), d.into());
        let got = rational_to_f64(&x);
        let native = n as f64 / d as f64;
        let ulp = native.abs() * f64::EPSILON;
        prop_assert!((got - native).abs() <= ulp, "{}/{}: {} vs {}", n, d, got, native);
    }

    #[test]
    fn half_integer_round_trips(halves in -40i32..=40) {
        let e = HalfInteger::from_halves(halves);
        let parsed: HalfInteger = e.to_string().parse().unwrap();
        prop_assert_eq!(parsed, e);
        prop_assert_eq!(e.as_f64(), halves as f64 / 2.0);
    }
}
