//! Cross-check the generating-function table against brute-force
//! enumeration of partitions, entry by entry.
//!
//! Run with: `cargo run --example oracle_check`

use durfee::{cross_check, DurfeeTable};

fn main() -> durfee::Result<()> {
    let upto = 40;
    let table = DurfeeTable::new(upto);
    let report = cross_check(&table, upto, false)?;
    match &report.first_mismatch {
        None => println!(
            "all {} rows match the enumeration and the pentagonal totals",
            report.rows_checked
        ),
        Some(mismatch) => println!("mismatch found: {mismatch:?}"),
    }
    std::process::exit(if report.passed() { 0 } else { 1 });
}
