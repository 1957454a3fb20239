// Constrained coding and store-and-forward rates against the reference
// maximum rates for binary timing channels.

use hdrelay::{baseline_rate, capacity, table_report};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    println!("C(1) = {:.6}, store-and-forward = {}", capacity(1)?, baseline_rate(1)?);
    println!("{:>5} {:>9} {:>12} {:>16}", "depth", "reference", "constrained%", "store-forward%");
    for row in table_report(1)? {
        println!(
            "{:>5} {:>9.4} {:>12.2} {:>16.2}",
            row.depth.to_string(),
            row.reference,
            row.constrained_pct,
            row.store_forward_pct
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
