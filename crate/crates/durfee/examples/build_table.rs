//! Build the exact Durfee-count table from the generating-function
//! expansion and verify its row sums against the pentagonal recurrence.
//!
//! Run with: `cargo run --example build_table`

use durfee::{partition_numbers, DurfeeTable};

fn main() -> durfee::Result<()> {
    let nmax = 200;
    let table = DurfeeTable::new(nmax);

    println!("d(n,k) for a few n:");
    for n in [0, 4, 10, 25, 100, 200] {
        let row: Vec<String> = table.row(n)?.map(|(k, d)| format!("{k}:{d}")).collect();
        println!(
            "  n = {n:>3}: {{{}}}  p({n}) = {}",
            row.join(", "),
            table.total(n)?
        );
    }

    // Row sums must equal p(n) from the independent pentagonal recurrence.
    let p = partition_numbers(nmax);
    let all_match = (0..=nmax).all(|n| table.total(n).unwrap() == &p[n]);
    println!("\nrow sums match pentagonal p(n) for all n <= {nmax}: {all_match}");
    Ok(())
}
