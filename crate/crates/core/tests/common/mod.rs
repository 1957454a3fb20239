#![allow(dead_code)]

use std::path::PathBuf;

use hdrelay::{parse_tree, Bits, Symbol, TreeTopology, Word};
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn load_tree(name: &str) -> TreeTopology {
    parse_tree(&std::fs::read_to_string(data_path(name)).unwrap()).unwrap()
}

pub fn random_bits<R: Rng>(rng: &mut R, len: usize) -> Bits {
    Bits((0..len).map(|_| rng.gen()).collect())
}

/// Admissible stream from a two-state Markov source: after data, silence.
pub fn random_admissible<R: Rng>(rng: &mut R, q: u32, len: usize, p_data: f64) -> Word {
    let mut prev_data = false;
    let symbols = (0..len)
        .map(|_| {
            let s = if !prev_data && rng.gen_bool(p_data) {
                Symbol::Data(rng.gen_range(0..q))
            } else {
                Symbol::Silence
            };
            prev_data = s.is_data();
            s
        })
        .collect();
    Word::new(symbols)
}

/// i.i.d. stream, admissible or not.
pub fn random_stream<R: Rng>(rng: &mut R, q: u32, len: usize, p_data: f64) -> Word {
    Word::new(
        (0..len)
            .map(|_| {
                if rng.gen_bool(p_data) {
                    Symbol::Data(rng.gen_range(0..q))
                } else {
                    Symbol::Silence
                }
            })
            .collect(),
    )
}

/// Direct scan for a data-data pair, independent of the library predicate.
pub fn scan_admissible(w: &Word) -> bool {
    let s = w.symbols();
    for i in 1..s.len() {
        if matches!(s[i - 1], Symbol::Data(_)) && matches!(s[i], Symbol::Data(_)) {
            return false;
        }
    }
    true
}
