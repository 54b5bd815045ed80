//! Fit sqrt(n) expansions to the exact mean and variance of the Durfee
//! size and compare the leading coefficient with sqrt(6) ln(2) / pi.
//!
//! This runs the full-scale pipeline (table to n = 6400, exact moments on
//! the perfect squares 40^2..80^2) and takes a few seconds.
//!
//! Run with: `cargo run --example asymptotic_fit`

use durfee::fit::default_mean_basis;
use durfee::moments::{moment_sweep, rational_to_f64};
use durfee::{concentration_ratio, fit_sqrt_series, reference_mean_constant, DurfeeTable};

fn main() -> durfee::Result<()> {
    eprintln!("building table to n = 6400 ...");
    let table = DurfeeTable::new(6400);
    let sample: Vec<usize> = (40..=80).map(|i| i * i).collect();
    eprintln!(
        "computing exact moments on {} sample points ...",
        sample.len()
    );
    let records = moment_sweep(&table, &sample, 4)?;

    let mean_samples: Vec<(u64, f64)> = records
        .iter()
        .map(|r| (r.n as u64, rational_to_f64(&r.mean)))
        .collect();
    let var_samples: Vec<(u64, f64)> = records
        .iter()
        .map(|r| (r.n as u64, rational_to_f64(r.central(2).unwrap())))
        .collect();

    let basis = default_mean_basis();
    let mean_fit = fit_sqrt_series(&mean_samples, &basis)?;
    let var_fit = fit_sqrt_series(&var_samples, &basis)?;

    let describe = |name: &str, fit: &durfee::FitResult| {
        let terms: Vec<String> = fit
            .model
            .exponents()
            .iter()
            .zip(fit.model.coefficients())
            .map(|(e, c)| format!("{c:+.9} n^{e}"))
            .collect();
        println!("{name}(n) ~ {}", terms.join(" "));
        println!("         max |residual| = {:.3e}", fit.max_abs_residual);
    };
    describe("mean    ", &mean_fit);
    describe("variance", &var_fit);

    let lead = mean_fit.model.coefficients()[0];
    let reference = reference_mean_constant();
    println!("\nleading mean coefficient : {lead:.9}");
    println!("sqrt(6) ln(2) / pi       : {reference:.9}");
    println!(
        "difference               : {:.3e}",
        (lead - reference).abs()
    );

    // Variance proportional to mean, with a small constant: the law
    // concentrates about its mean.
    let ratio = concentration_ratio(&mean_fit, &var_fit)?;
    println!("\nvariance/mean leading ratio: {ratio:.6}");
    Ok(())
}
