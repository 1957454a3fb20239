// Step through encoder synthesis: eigenvector, splitting, pruning.

use hdrelay::synthesize;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for (q, p, n) in [(1, 2, 3), (6, 3, 2)] {
        let s = synthesize(q, p, n)?;
        let r = s.encoder.report();
        println!(
            "({q},{p},{n}): x={:?}, {} split round(s), {} states after splitting, {} kept",
            s.eigenvector.weights, s.split_rounds, s.split_states, r.states
        );
        println!("  rate {:.4} / capacity {:.4} = {:.2}%", r.rate, r.capacity, 100.0 * r.efficiency);
        print!("{}", s.encoder);
    }
    match synthesize(1, 1, 1) {
        Err(e) => println!("(1,1,1): {e}"),
        Ok(_) => unreachable!("rate 1 exceeds capacity"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
