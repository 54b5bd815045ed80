//! Exact rational moments of the Durfee-size distribution: means, central
//! moments and standardized moments across a sample of n.
//!
//! Run with: `cargo run --example exact_moments`

use durfee::moments::{moment_sweep, rational_to_f64};
use durfee::DurfeeTable;

fn main() -> durfee::Result<()> {
    let table = DurfeeTable::new(1600);

    // Small n: everything stays readable as exact fractions.
    let record = &moment_sweep(&table, &[4], 4)?[0];
    println!("n = 4 exactly:");
    println!("  mean    = {}", record.mean);
    println!("  m_2     = {}", record.central(2).unwrap());
    println!("  m_4     = {}", record.central(4).unwrap());
    println!("  alpha_4 = {}", record.standardized(4).unwrap());

    // Larger n: the standardized moments drift toward the normal values
    // 0 and 3 as n grows.
    println!(
        "\n{:>6} {:>12} {:>12} {:>10} {:>10}",
        "n", "mean", "m2", "alpha3", "alpha4"
    );
    let sample: Vec<usize> = (10..=40).step_by(10).map(|i| i * i).collect();
    for record in moment_sweep(&table, &sample, 4)? {
        println!(
            "{:>6} {:>12.6} {:>12.6} {:>10.6} {:>10.6}",
            record.n,
            rational_to_f64(&record.mean),
            rational_to_f64(record.central(2).unwrap()),
            record.standardized(3).unwrap(),
            record.standardized(4).unwrap(),
        );
    }
    Ok(())
}
