// Capacity of the half-duplex constraint for a few alphabet sizes.

use hdrelay::{capacity, characteristic_roots, make_constraint, spectral_radius};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for q in [1, 2, 3, 6, 15] {
        let a = make_constraint(q)?.adjacency();
        let (l1, l2) = characteristic_roots(q)?;
        println!(
            "q={q:<2} C={:.6} bits/slot  lambda={:.6} (roots {l1:.4}, {l2:.4})",
            capacity(q)?,
            spectral_radius(&a)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
