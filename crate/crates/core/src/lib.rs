//! # hdrelay
//!
//! Constrained coding for broadcast over trees of error-free half-duplex
//! relays.
//!
//! A relay that transmits cannot listen. If the source never sends data in
//! two consecutive slots, every relay can simply forward, one slot later,
//! whatever it heard from its parent, and the whole tree receives the source
//! stream intact. The source sequences that satisfy this rule form a shift of
//! finite type with capacity `log2((1 + sqrt(4q + 1)) / 2)` bits per slot.
//!
//! - [`shift`] counts admissible words and computes capacities.
//! - [`encoder`] synthesizes finite-state encoders that map free bits into
//!   admissible streams, and decodes them.
//! - [`sim`] runs the slot-synchronous forwarding protocol on a tree.
//! - [`table`] compares rates against reference finite-depth capacities.
//! - [`cli`] is the command-line front end used by the `hdrelay` binary.
//!
//! ```
//! use hdrelay::{build_encoder, encode, decode, Bits};
//!
//! let enc = build_encoder(1, 2, 3).unwrap();
//! let msg: Bits = "1011001".parse().unwrap();
//! let (stream, header) = encode(&enc, &msg);
//! assert!(stream.is_admissible());
//! assert_eq!(decode(&enc, &stream, &header).unwrap(), msg);
//! ```

pub mod cli;
pub mod encoder;
pub mod error;
pub mod shift;
pub mod sim;
pub mod symbol;
pub mod table;

pub use encoder::{
    build_encoder, decode, encode, encoder_report, find_approximate_eigenvector, prune_to_encoder,
    split_states, synthesize, ApproxEigenvector, Encoder, EncoderReport, FrameHeader, Synthesis,
    Transition,
};
pub use error::{Error, Result, TopologyError};
pub use shift::{
    capacity, characteristic_roots, count_words, enumerate_words, enumerate_words_with_cap,
    make_constraint, power_graph, spectral_radius, AdjacencyMatrix, BaseState, ConstraintGraph,
    Edge,
};
pub use sim::{
    baseline_rate, end_to_end, parse_tree, simulate, verify_delivery, DeliveryReport,
    EndToEndReport, Reception, SimTrace, TreeTopology,
};
pub use symbol::{is_admissible, Alphabet, Bits, Symbol, Word};
pub use table::{table_report, TableRow};
