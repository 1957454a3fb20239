// Encode, relay through a depth-3 tree, decode at every node.

use hdrelay::{end_to_end, parse_tree, Bits};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/fig1_tree.txt");
    let tree = parse_tree(&std::fs::read_to_string(path)?)?;
    let msg = Bits((0..1000).map(|i| (i * 7 + i / 3) % 5 < 2).collect());
    let r = end_to_end(1, 2, 3, &tree, &msg)?;
    print!("{r}");
    assert!(r.all_recovered());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
