// Slot-by-slot relay on a short chain, once with an admissible stream and
// once with two data symbols back to back.

use hdrelay::{simulate, verify_delivery, TreeTopology, Word};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let chain = TreeTopology::chain(3);
    for text in ["0 N 0 N N 0", "0 0 N N"] {
        let w: Word = text.parse()?;
        let trace = simulate(&chain, &w, chain.max_depth());
        println!("source: {w}");
        print!("{trace}");
        print!("{}", verify_delivery(&trace, &chain, &w));
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
