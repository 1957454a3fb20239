//! Rate comparison against maximum finite-depth broadcast rates for `q = 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::shift::capacity;

/// Maximum achievable broadcast rates (b/sym) for binary trees of finite
/// depth, as published for timing codes (Lutz, Hausl, Kötter 2012). They are
/// reference data here; nothing in this crate derives them.
pub const REFERENCE_RATES_Q1: [(Depth, f64); 5] = [
    (Depth::Finite(2), 0.7729),
    (Depth::Finite(3), 0.7324),
    (Depth::Finite(5), 0.7099),
    (Depth::Finite(11), 0.6981),
    (Depth::Infinite, 0.6942),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub depth: Depth,
    /// Reference maximum rate at this depth.
    pub reference: f64,
    /// Constrained coding rate `C(q)` as a percentage of the reference.
    pub constrained_pct: f64,
    /// Store-and-forward rate 0.5 as a percentage of the reference.
    pub store_forward_pct: f64,
}

pub fn table_report(q: u32) -> Result<Vec<TableRow>> {
    if q != 1 {
        return Err(Error::UnsupportedQ(q));
    }
    let c = capacity(q)?;
    Ok(REFERENCE_RATES_Q1
        .iter()
        .map(|&(depth, reference)| TableRow {
            depth,
            reference,
            constrained_pct: 100.0 * c / reference,
            store_forward_pct: 100.0 * 0.5 / reference,
        })
        .collect())
}
