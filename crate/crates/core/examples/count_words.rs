// Exact word counts, checked against brute force where that is cheap.

use hdrelay::shift::log2_count;
use hdrelay::{capacity, count_words, enumerate_words};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let q = 2;
    for n in 0..=8 {
        let count = count_words(q, n)?;
        let brute = enumerate_words(q, n)?.len();
        println!("n={n:<2} N={count:<6} enumerated={brute}");
        assert_eq!(count, brute.into());
    }
    // big lengths stay exact
    let n = 500;
    let c = count_words(q, n)?;
    println!("n={n}: log2 N/n = {:.6} vs C = {:.6}", log2_count(&c) / n as f64, capacity(q)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
