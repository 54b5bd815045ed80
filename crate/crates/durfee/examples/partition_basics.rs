//! Partitions and their Durfee squares, from the definition: enumerate the
//! partitions of a small number and bucket them by h-index.
//!
//! Run with: `cargo run --example partition_basics`

use durfee::{brute_durfee_histogram, enumerate_partitions, Partition};

fn main() -> durfee::Result<()> {
    let n = 10;
    println!("partitions of {n} and their Durfee-square sizes:");
    for partition in enumerate_partitions(n)? {
        let parts: Vec<String> = partition.parts().iter().map(|p| p.to_string()).collect();
        println!("  {:<22} h = {}", parts.join("+"), partition.durfee_size());
    }

    let histogram = brute_durfee_histogram(n)?;
    println!(
        "\nhistogram: {:?} (total {})",
        histogram.counts, histogram.total
    );

    // durfee_size is the largest i with lambda_i >= i.
    let lambda = Partition::new(vec![5, 4, 4, 2, 1])?;
    println!(
        "\ndurfee_size({:?}) = {}",
        lambda.parts(),
        lambda.durfee_size()
    );
    Ok(())
}
