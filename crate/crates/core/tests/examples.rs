//! Every example under examples/ runs to completion.

mod capacity {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/capacity.rs"));
}

#[test]
fn capacity_runs() {
    capacity::run().expect("capacity example");
}

mod count_words {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/count_words.rs"));
}

#[test]
fn count_words_runs() {
    count_words::run().expect("count_words example");
}

mod build_encoder {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/build_encoder.rs"));
}

#[test]
fn build_encoder_runs() {
    build_encoder::run().expect("build_encoder example");
}

mod encode_decode {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/encode_decode.rs"));
}

#[test]
fn encode_decode_runs() {
    encode_decode::run().expect("encode_decode example");
}

mod simulate_chain {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/simulate_chain.rs"));
}

#[test]
fn simulate_chain_runs() {
    simulate_chain::run().expect("simulate_chain example");
}

mod broadcast_tree {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/broadcast_tree.rs"));
}

#[test]
fn broadcast_tree_runs() {
    broadcast_tree::run().expect("broadcast_tree example");
}

mod rate_table {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rate_table.rs"));
}

#[test]
fn rate_table_runs() {
    rate_table::run().expect("rate_table example");
}
