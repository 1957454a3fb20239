//! Finite-state rate `p:n` encoders for the half-duplex constraint.
//!
//! Synthesis runs power graph → approximate eigenvector → state splitting →
//! edge deletion. Every state of the result has exactly `2^p` transitions,
//! one per input tag, and every path through it spells an admissible word.
//!
//! A state may reuse a codeword on transitions to different next states.
//! Those next states never share an outgoing codeword, so the decoder settles
//! each block by peeking at the following one. The last block of a stream is
//! settled by the final state recorded in the [`FrameHeader`].

mod eigen;
mod split;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::shift::{capacity, make_constraint, power_graph, BaseState, ConstraintGraph};
use crate::symbol::{Alphabet, Bits, Word};

pub use eigen::{find_approximate_eigenvector, ApproxEigenvector};
pub use split::{split_states, SplitOutcome};

/// Input blocks wider than this would need an unreasonably large tag table.
pub const MAX_INPUT_BITS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub codeword: Word,
    pub next: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoder {
    q: u32,
    p: u32,
    n: u32,
    start: usize,
    /// `table[state][tag]`
    table: Vec<Vec<Transition>>,
    /// per state: codeword → tags carrying it
    lookup: Vec<BTreeMap<Word, Vec<usize>>>,
}

/// Framing side information for one encoded message.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FrameHeader {
    pub bit_length: usize,
    pub pad: usize,
    /// Encoder state after the last block.
    pub final_state: Option<usize>,
}

impl FrameHeader {
    /// Header for a stream with no padding and no recorded final state.
    pub fn unpadded(blocks: usize, p: u32) -> Self {
        FrameHeader { bit_length: blocks * p as usize, pad: 0, final_state: None }
    }
}

impl fmt::Display for FrameHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FRAME {} {}", self.bit_length, self.pad)?;
        match self.final_state {
            Some(s) => write!(f, " {s}"),
            None => f.write_str(" -"),
        }
    }
}

impl FromStr for FrameHeader {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedWord(format!("bad frame header `{s}`"));
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let [tag, bits, pad, last] = tokens[..] else { return Err(bad()) };
        if tag != "FRAME" {
            return Err(bad());
        }
        Ok(FrameHeader {
            bit_length: bits.parse().map_err(|_| bad())?,
            pad: pad.parse().map_err(|_| bad())?,
            final_state: match last {
                "-" => None,
                v => Some(v.parse().map_err(|_| bad())?),
            },
        })
    }
}

impl Encoder {
    /// Assembles an encoder from a transition table and checks every
    /// structural invariant.
    pub fn from_table(q: u32, p: u32, n: u32, start: usize, table: Vec<Vec<Transition>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::MalformedEncoder(msg));
        Alphabet::new(q)?;
        if p == 0 || n == 0 || p > MAX_INPUT_BITS {
            return bad(format!("unsupported block sizes p={p} n={n}"));
        }
        if start >= table.len() {
            return bad(format!("start state {start} out of range"));
        }
        let tags = 1usize << p;
        let alphabet = Alphabet::new(q)?;
        for (s, row) in table.iter().enumerate() {
            if row.len() != tags {
                return bad(format!("state {s} has {} transitions, expected {tags}", row.len()));
            }
            let mut seen = BTreeSet::new();
            for t in row {
                if t.codeword.len() != n as usize {
                    return bad(format!("state {s}: codeword `{}` is not {n} symbols", t.codeword));
                }
                if !t.codeword.symbols().iter().all(|&c| alphabet.contains(c)) {
                    return bad(format!("state {s}: codeword `{}` leaves the alphabet", t.codeword));
                }
                if !t.codeword.is_admissible() {
                    return bad(format!("state {s}: codeword `{}` is not admissible", t.codeword));
                }
                if t.next >= table.len() {
                    return bad(format!("state {s}: next state {} out of range", t.next));
                }
                if !seen.insert((&t.codeword, t.next)) {
                    return bad(format!("state {s}: duplicate transition `{}` → {}", t.codeword, t.next));
                }
            }
        }
        let lookup: Vec<BTreeMap<Word, Vec<usize>>> = table
            .iter()
            .map(|row| {
                let mut m: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
                for (tag, t) in row.iter().enumerate() {
                    m.entry(t.codeword.clone()).or_default().push(tag);
                }
                m
            })
            .collect();
        let enc = Encoder { q, p, n, start, table, lookup };
        enc.check_boundaries()?;
        enc.check_lookahead()?;
        if enc.rate() > capacity(q)? + 1e-12 {
            return bad(format!("rate {}/{} exceeds capacity", p, n));
        }
        Ok(enc)
    }

    /// A codeword ending in data must be followed only by codewords that
    /// start with silence.
    fn check_boundaries(&self) -> Result<()> {
        for (s, row) in self.table.iter().enumerate() {
            for t in row {
                let ends_on = t.codeword.symbols().last().is_some_and(|c| c.is_data());
                if ends_on
                    && self.table[t.next]
                        .iter()
                        .any(|u| u.codeword.symbols()[0].is_data())
                {
                    return Err(Error::MalformedEncoder(format!(
                        "state {s}: `{}` into state {} can form a data-data pair",
                        t.codeword, t.next
                    )));
                }
            }
        }
        Ok(())
    }

    /// Next states sharing a codeword out of one state must have disjoint
    /// outgoing codeword sets.
    fn check_lookahead(&self) -> Result<()> {
        for (s, by_word) in self.lookup.iter().enumerate() {
            for (word, tags) in by_word {
                for (i, &a) in tags.iter().enumerate() {
                    for &b in &tags[i + 1..] {
                        let (ta, tb) = (self.table[s][a].next, self.table[s][b].next);
                        if self.lookup[ta].keys().any(|w| self.lookup[tb].contains_key(w)) {
                            return Err(Error::MalformedEncoder(format!(
                                "state {s}: `{word}` leads to states {ta} and {tb} with a shared codeword"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn start_state(&self) -> usize {
        self.start
    }

    pub fn num_states(&self) -> usize {
        self.table.len()
    }

    pub fn rate(&self) -> f64 {
        self.p as f64 / self.n as f64
    }

    pub fn transitions(&self, state: usize) -> &[Transition] {
        &self.table[state]
    }

    pub fn transition(&self, state: usize, tag: usize) -> &Transition {
        &self.table[state][tag]
    }

    /// Largest number of transitions out of one state sharing a codeword.
    pub fn max_codeword_multiplicity(&self) -> usize {
        self.lookup
            .iter()
            .flat_map(|m| m.values().map(Vec::len))
            .max()
            .unwrap_or(0)
    }

    pub fn report(&self) -> EncoderReport {
        encoder_report(self)
    }
}

/// Rate-versus-capacity summary of an encoder.
#[derive(Debug, Clone, PartialEq)]
pub struct EncoderReport {
    pub q: u32,
    pub p: u32,
    pub n: u32,
    pub rate: f64,
    pub capacity: f64,
    pub efficiency: f64,
    pub states: usize,
}

pub fn encoder_report(e: &Encoder) -> EncoderReport {
    let cap = capacity(e.q).expect("encoder q is validated");
    EncoderReport {
        q: e.q,
        p: e.p,
        n: e.n,
        rate: e.rate(),
        capacity: cap,
        efficiency: e.rate() / cap,
        states: e.num_states(),
    }
}

/// Deletes surplus edges so each state keeps `2^p`, then tags them.
///
/// Per state the kept edges are the lexicographically smallest codewords,
/// taking each distinct codeword once before admitting any repeat. Tags
/// follow `(codeword, next state)` order. States unreachable from the start
/// state are removed afterward.
pub fn prune_to_encoder(g: &ConstraintGraph, q: u32, p: u32, n: u32) -> Result<Encoder> {
    if p == 0 || p > MAX_INPUT_BITS {
        return Err(Error::InvalidParameter(format!("p={p} outside 1..={MAX_INPUT_BITS}")));
    }
    let tags = 1usize << p;
    for e in g.edges() {
        if e.label.len() != n as usize {
            return Err(Error::NonUniformLabelLength { expected: n as usize, found: e.label.len() });
        }
    }
    let mut table = Vec::with_capacity(g.num_states());
    for s in 0..g.num_states() {
        let mut out: Vec<(&Word, usize)> = g.out_edges(s).map(|e| (&e.label, e.to)).collect();
        if out.len() < tags {
            return Err(Error::InsufficientOutDegree { state: s, degree: out.len(), needed: tags });
        }
        out.sort();
        out.dedup();
        let mut rank: BTreeMap<&Word, usize> = BTreeMap::new();
        let mut ranked: Vec<(usize, &Word, usize)> = out
            .into_iter()
            .map(|(w, to)| {
                let r = rank.entry(w).or_default();
                *r += 1;
                (*r, w, to)
            })
            .collect();
        if ranked.len() < tags {
            return Err(Error::InsufficientOutDegree { state: s, degree: ranked.len(), needed: tags });
        }
        ranked.sort();
        let mut keep: Vec<(&Word, usize)> = ranked[..tags].iter().map(|&(_, w, to)| (w, to)).collect();
        keep.sort();
        table.push(
            keep.into_iter()
                .map(|(w, to)| Transition { codeword: w.clone(), next: to })
                .collect::<Vec<_>>(),
        );
    }

    let start = (0..g.num_states())
        .find(|&s| g.origin(s) == BaseState::Off)
        .unwrap_or(0);
    let (table, start) = trim_unreachable(table, start);
    Encoder::from_table(q, p, n, start, table)
}

fn trim_unreachable(table: Vec<Vec<Transition>>, start: usize) -> (Vec<Vec<Transition>>, usize) {
    let mut seen = vec![false; table.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(s) = stack.pop() {
        for t in &table[s] {
            if !seen[t.next] {
                seen[t.next] = true;
                stack.push(t.next);
            }
        }
    }
    let mut remap = vec![usize::MAX; table.len()];
    let mut k = 0;
    for (s, &keep) in seen.iter().enumerate() {
        if keep {
            remap[s] = k;
            k += 1;
        }
    }
    let trimmed = table
        .into_iter()
        .zip(&seen)
        .filter(|(_, &keep)| keep)
        .map(|(row, _)| {
            row.into_iter()
                .map(|t| Transition { next: remap[t.next], ..t })
                .collect()
        })
        .collect();
    (trimmed, remap[start])
}

/// Everything produced along the way by [`synthesize`].
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub encoder: Encoder,
    pub eigenvector: ApproxEigenvector,
    pub split_rounds: usize,
    pub split_states: usize,
}

pub fn synthesize(q: u32, p: u32, n: u32) -> Result<Synthesis> {
    if p == 0 || n == 0 {
        return Err(Error::InvalidParameter("p and n must be at least 1".into()));
    }
    if p > MAX_INPUT_BITS {
        return Err(Error::InvalidParameter(format!("p={p} exceeds {MAX_INPUT_BITS}")));
    }
    let base = make_constraint(q)?;
    let c = capacity(q)?;
    if p as f64 / n as f64 > c + 1e-12 {
        return Err(Error::InfeasibleRate(format!("{p}/{n} exceeds C({q}) = {c:.6}")));
    }
    let power = power_graph(&base, n)?;
    let eigenvector = find_approximate_eigenvector(&power.adjacency(), p).map_err(|e| match e {
        Error::InfeasibleRate(msg) => Error::InfeasibleRate(format!("{p}/{n} for q={q}: {msg}")),
        other => other,
    })?;
    let split = split_states(&power, &eigenvector)?;
    let encoder = prune_to_encoder(&split.graph, q, p, n)?;
    Ok(Synthesis {
        encoder,
        eigenvector,
        split_rounds: split.rounds,
        split_states: split.graph.num_states(),
    })
}

/// Builds a rate `p:n` encoder for alphabet size `q`.
pub fn build_encoder(q: u32, p: u32, n: u32) -> Result<Encoder> {
    synthesize(q, p, n).map(|s| s.encoder)
}

/// Encodes `bits`, zero-padding to a whole number of `p`-bit blocks. Tags
/// are read most significant bit first.
pub fn encode(e: &Encoder, bits: &Bits) -> (Word, FrameHeader) {
    let p = e.p as usize;
    let blocks = bits.len().div_ceil(p);
    let pad = blocks * p - bits.len();
    let mut out = Vec::with_capacity(blocks * e.n as usize);
    let mut state = e.start;
    for chunk in bits.as_slice().chunks(p) {
        let tag = chunk
            .iter()
            .chain(std::iter::repeat(&false))
            .take(p)
            .fold(0usize, |acc, &b| (acc << 1) | b as usize);
        let t = &e.table[state][tag];
        out.extend_from_slice(t.codeword.symbols());
        state = t.next;
    }
    let header = FrameHeader { bit_length: bits.len(), pad, final_state: Some(state) };
    (Word::new(out), header)
}

/// Inverts [`encode`] by tracking encoder state from the start state.
pub fn decode(e: &Encoder, w: &Word, h: &FrameHeader) -> Result<Bits> {
    let n = e.n as usize;
    let p = e.p as usize;
    if w.len() % n != 0 {
        return Err(Error::RaggedWord { len: w.len(), n });
    }
    let blocks: Vec<Word> = w.symbols().chunks(n).map(|c| Word::new(c.to_vec())).collect();
    if h.bit_length + h.pad != blocks.len() * p || h.pad >= p {
        return Err(Error::MalformedWord(format!(
            "frame header {h} does not match {} blocks of {p} bits",
            blocks.len()
        )));
    }
    let mut bits = Vec::with_capacity(blocks.len() * p);
    let mut state = e.start;
    for (k, block) in blocks.iter().enumerate() {
        let tags = e.lookup[state]
            .get(block)
            .ok_or(Error::UnknownCodeword { block: k })?;
        let tag = match tags[..] {
            [only] => only,
            _ => match blocks.get(k + 1) {
                Some(next) => {
                    let fits: Vec<usize> = tags
                        .iter()
                        .copied()
                        .filter(|&t| e.lookup[e.table[state][t].next].contains_key(next))
                        .collect();
                    match fits[..] {
                        [only] => only,
                        [] => return Err(Error::UnknownCodeword { block: k + 1 }),
                        _ => return Err(Error::AmbiguousBlock { block: k }),
                    }
                }
                None => {
                    let last = h.final_state.ok_or(Error::AmbiguousBlock { block: k })?;
                    tags.iter()
                        .copied()
                        .find(|&t| e.table[state][t].next == last)
                        .ok_or(Error::UnknownCodeword { block: k })?
                }
            },
        };
        bits.extend((0..p).rev().map(|i| (tag >> i) & 1 == 1));
        state = e.table[state][tag].next;
    }
    bits.truncate(h.bit_length);
    Ok(Bits(bits))
}

impl fmt::Display for Encoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ENC {} {} {} {} {}", self.q, self.p, self.n, self.num_states(), self.start)?;
        for (s, row) in self.table.iter().enumerate() {
            for (tag, t) in row.iter().enumerate() {
                writeln!(f, "{s} {tag} {} {}", t.codeword, t.next)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Encoder {
    type Err = Error;

    /// Parses the line-oriented encoder format. Blank lines and `#` comments
    /// are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::MalformedEncoder(msg);
        let mut lines = s
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or_else(|| bad("missing ENC header".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 6 || fields[0] != "ENC" {
            return Err(bad(format!("bad header `{header}`")));
        }
        let num = |i: usize| -> Result<usize> {
            fields[i].parse().map_err(|_| bad(format!("bad header field `{}`", fields[i])))
        };
        let (q, p, n, states, start) = (num(1)? as u32, num(2)? as u32, num(3)? as u32, num(4)?, num(5)?);
        if p == 0 || p > MAX_INPUT_BITS {
            return Err(bad(format!("unsupported p={p}")));
        }
        let tags = 1usize << p;
        let mut table: Vec<Vec<Option<Transition>>> = vec![vec![None; tags]; states];
        for (lineno, line) in lines {
            let tok: Vec<&str> = line.split_whitespace().collect();
            if tok.len() != n as usize + 3 {
                return Err(bad(format!("line {}: expected {} fields", lineno + 1, n + 3)));
            }
            let field = |t: &str| -> Result<usize> {
                t.parse().map_err(|_| bad(format!("line {}: bad number `{t}`", lineno + 1)))
            };
            let (state, tag, next) = (field(tok[0])?, field(tok[1])?, field(tok[tok.len() - 1])?);
            let codeword: Word = tok[2..tok.len() - 1].join(" ").parse()?;
            let slot = table
                .get_mut(state)
                .and_then(|row| row.get_mut(tag))
                .ok_or_else(|| bad(format!("line {}: state/tag out of range", lineno + 1)))?;
            if slot.replace(Transition { codeword, next }).is_some() {
                return Err(bad(format!("line {}: repeated state/tag", lineno + 1)));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(s, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(tag, t)| t.ok_or_else(|| bad(format!("state {s} missing tag {tag}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Encoder::from_table(q, p, n, start, table)
    }
}
