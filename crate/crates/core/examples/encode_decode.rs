// Encode a bit string, check the output is admissible, decode it back.

use hdrelay::{build_encoder, decode, encode, Bits};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let e = build_encoder(6, 3, 2)?;
    let msg: Bits = "1011001110001011".parse()?;
    let (stream, header) = encode(&e, &msg);
    println!("bits:   {msg}");
    println!("header: {header}");
    println!("stream: {stream}");
    assert!(stream.is_admissible());
    let back = decode(&e, &stream, &header)?;
    println!("back:   {back}");
    assert_eq!(back, msg);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
