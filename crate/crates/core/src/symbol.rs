//! Channel symbols, words over the extended alphabet, and bit strings.
//!
//! A node that sends a data symbol is ON; a node that sends [`Symbol::Silence`]
//! is OFF and can hear its parent. Silence is its own variant so it can never
//! be mistaken for the data symbol `q`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One channel use. Data symbols order before silence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Data(u32),
    Silence,
}

impl Symbol {
    pub fn is_data(self) -> bool {
        matches!(self, Symbol::Data(_))
    }

    pub fn is_silence(self) -> bool {
        self == Symbol::Silence
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Data(d) => write!(f, "{d}"),
            Symbol::Silence => f.write_str("N"),
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "N" {
            return Ok(Symbol::Silence);
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::MalformedWord(format!("bad symbol token `{s}`")));
        }
        s.parse()
            .map(Symbol::Data)
            .map_err(|_| Error::MalformedWord(format!("symbol `{s}` out of range")))
    }
}

/// The transmission alphabet `{0, .., q-1} ∪ {N}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    q: u32,
}

impl Alphabet {
    pub fn new(q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("q must be at least 1".into()));
        }
        Ok(Alphabet { q })
    }

    pub fn q(self) -> u32 {
        self.q
    }

    /// Number of channel symbols including silence.
    pub fn size(self) -> u32 {
        self.q + 1
    }

    pub fn contains(self, s: Symbol) -> bool {
        match s {
            Symbol::Data(d) => d < self.q,
            Symbol::Silence => true,
        }
    }

    /// All symbols, data first, silence last.
    pub fn symbols(self) -> impl Iterator<Item = Symbol> {
        (0..self.q).map(Symbol::Data).chain(std::iter::once(Symbol::Silence))
    }
}

/// A finite slot-indexed sequence of symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn silence(len: usize) -> Self {
        Word(vec![Symbol::Silence; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// True iff no two consecutive symbols are both data symbols.
    pub fn is_admissible(&self) -> bool {
        is_admissible(&self.0)
    }

    /// Position of the first symbol of the first data-data pair, if any.
    pub fn first_violation(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0].is_data() && w[1].is_data())
    }
}

/// True iff `symbols` contains no factor in `Q × Q`.
pub fn is_admissible(symbols: &[Symbol]) -> bool {
    symbols.windows(2).all(|w| !(w[0].is_data() && w[1].is_data()))
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(Symbol::from_str)
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// An unconstrained bit sequence, serialized as a string of `0`/`1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Bits(pub Vec<bool>);

impl Bits {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }
}

impl From<Vec<bool>> for Bits {
    fn from(v: Vec<bool>) -> Self {
        Bits(v)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::MalformedWord(format!("bad bit `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn admissibility_examples() {
        assert!(w("1 N 1 N N").is_admissible());
        assert!(!w("1 1").is_admissible());
        assert!(w("2 N 0 N N 1").is_admissible());
        assert!(Word::empty().is_admissible());
        assert_eq!(w("0 N 2 3 N").first_violation(), Some(2));
    }

    #[test]
    fn silence_orders_last() {
        assert!(Symbol::Data(u32::MAX) < Symbol::Silence);
        assert!(w("0 N") < w("N 0"));
    }

    #[test]
    fn stream_format() {
        let word = w("0  N\t1 N N");
        assert_eq!(word.to_string(), "0 N 1 N N");
        assert!("0 x".parse::<Word>().is_err());
        assert!("-1".parse::<Word>().is_err());
        let bits: Bits = "0110".parse().unwrap();
        assert_eq!(bits.0, vec![false, true, true, false]);
        assert_eq!(bits.to_string(), "0110");
        assert!("012".parse::<Bits>().is_err());
    }

    #[test]
    fn alphabet() {
        assert!(Alphabet::new(0).is_err());
        let a = Alphabet::new(3).unwrap();
        assert_eq!(a.size(), 4);
        assert_eq!(a.symbols().count(), 4);
        assert!(a.contains(Symbol::Data(2)));
        assert!(!a.contains(Symbol::Data(3)));
    }
}
