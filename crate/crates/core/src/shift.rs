//! The half-duplex constraint as a shift of finite type.
//!
//! Admissible words are those with no two adjacent data symbols. The constraint
//! is presented by a two-state graph: OFF (may send anything) and ON (just sent
//! data, must go silent next). Its adjacency matrix is `[[1, q], [1, 0]]`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::symbol::{Alphabet, Symbol, Word};

/// Default limit on `(q+1)^n` for brute-force enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

const POWER_ITERATION_TOL: f64 = 1e-12;
const POWER_ITERATION_MAX: usize = 100_000;

/// Square matrix of nonnegative integers, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdjacencyMatrix {
    dim: usize,
    data: Vec<u64>,
}

impl AdjacencyMatrix {
    /// Builds a matrix from signed rows, rejecting ragged, non-square or
    /// negative input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidMatrix("matrix is empty".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for &v in row {
                if v < 0 {
                    return Err(Error::InvalidMatrix(format!("negative entry {v} in row {i}")));
                }
                data.push(v as u64);
            }
        }
        Ok(AdjacencyMatrix { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        AdjacencyMatrix { dim, data: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.data[row * self.dim + col]
    }

    fn get_mut(&mut self, row: usize, col: usize) -> &mut u64 {
        &mut self.data[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.dim).map(<[u64]>::to_vec).collect()
    }

    pub fn row_sum(&self, row: usize) -> u64 {
        self.data[row * self.dim..(row + 1) * self.dim].iter().sum()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::InvalidMatrix("dimension mismatch".into()));
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let prod = a
                        .checked_mul(other.get(k, j))
                        .ok_or(Error::Overflow("multiplying matrices"))?;
                    let cell = out.get_mut(i, j);
                    *cell = cell
                        .checked_add(prod)
                        .ok_or(Error::Overflow("multiplying matrices"))?;
                }
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, exp: u32) -> Result<Self> {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// `A·x` in wide arithmetic.
    pub fn mul_vec(&self, x: &[u64]) -> Vec<u128> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.get(i, j) as u128 * x[j] as u128)
                    .sum()
            })
            .collect()
    }
}

impl fmt::Display for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.dim) {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Spectral radius of a nonnegative matrix.
///
/// 2×2 matrices use the closed-form larger root of the characteristic
/// quadratic. Larger matrices use power iteration on `A + I`, whose Perron
/// root is `λ(A) + 1` and which is aperiodic even when `A` is not.
pub fn spectral_radius(m: &AdjacencyMatrix) -> Result<f64> {
    match m.dim() {
        1 => Ok(m.get(0, 0) as f64),
        2 => {
            let (a, b, c, d) = (
                m.get(0, 0) as f64,
                m.get(0, 1) as f64,
                m.get(1, 0) as f64,
                m.get(1, 1) as f64,
            );
            // (a-d)^2 + 4bc >= 0 for nonnegative entries: both roots are real.
            let disc = (a - d) * (a - d) + 4.0 * b * c;
            Ok((a + d + disc.sqrt()) / 2.0)
        }
        _ => power_iteration(m),
    }
}

/// Power-iteration estimate of the spectral radius, usable at any dimension.
pub fn power_iteration(m: &AdjacencyMatrix) -> Result<f64> {
    let d = m.dim();
    let mut v = vec![1.0f64; d];
    let mut estimate = 0.0f64;
    for _ in 0..POWER_ITERATION_MAX {
        let mut next: Vec<f64> = (0..d)
            .map(|i| v[i] + (0..d).map(|j| m.get(i, j) as f64 * v[j]).sum::<f64>())
            .collect();
        let norm = next.iter().cloned().fold(0.0, f64::max);
        if norm == 0.0 {
            return Ok(0.0);
        }
        next.iter_mut().for_each(|x| *x /= norm);
        let converged = (norm - estimate).abs() <= POWER_ITERATION_TOL * norm.max(1.0);
        estimate = norm;
        v = next;
        if converged {
            return Ok(estimate - 1.0);
        }
    }
    Err(Error::InvalidMatrix(format!(
        "power iteration did not converge in {POWER_ITERATION_MAX} steps"
    )))
}

/// Constraint state a presentation state descends from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseState {
    /// Previous symbol was silence; any symbol may follow.
    Off,
    /// Previous symbol was data; silence must follow.
    On,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: Word,
}

/// Labeled directed graph presenting the constraint or a power of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraph {
    q: u32,
    origins: Vec<BaseState>,
    edges: Vec<Edge>,
}

impl ConstraintGraph {
    pub fn from_parts(q: u32, origins: Vec<BaseState>, edges: Vec<Edge>) -> Self {
        ConstraintGraph { q, origins, edges }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn num_states(&self) -> usize {
        self.origins.len()
    }

    pub fn origin(&self, state: usize) -> BaseState {
        self.origins[state]
    }

    pub fn origins(&self) -> &[BaseState] {
        &self.origins
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, state: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == state)
    }

    pub fn out_degree(&self, state: usize) -> usize {
        self.out_edges(state).count()
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let mut m = AdjacencyMatrix::zeros(self.num_states());
        for e in &self.edges {
            *m.get_mut(e.from, e.to) += 1;
        }
        m
    }
}

/// The two-state presentation of the half-duplex constraint.
pub fn make_constraint(q: u32) -> Result<ConstraintGraph> {
    Alphabet::new(q)?;
    const OFF: usize = 0;
    const ON: usize = 1;
    let mut edges = vec![Edge { from: OFF, to: OFF, label: Word::silence(1) }];
    edges.extend((0..q).map(|d| Edge {
        from: OFF,
        to: ON,
        label: Word::new(vec![Symbol::Data(d)]),
    }));
    edges.push(Edge { from: ON, to: OFF, label: Word::silence(1) });
    Ok(ConstraintGraph { q, origins: vec![BaseState::Off, BaseState::On], edges })
}

/// `n`-th power presentation: one edge per length-`n` path, labeled by the
/// concatenated path labels.
pub fn power_graph(g: &ConstraintGraph, n: u32) -> Result<ConstraintGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("power must be at least 1".into()));
    }
    if n == 1 {
        return Ok(g.clone());
    }
    let out: Vec<Vec<&Edge>> = (0..g.num_states()).map(|s| g.out_edges(s).collect()).collect();
    let mut edges = Vec::new();
    for start in 0..g.num_states() {
        let mut label = Vec::with_capacity(n as usize);
        extend_paths(&out, start, start, n, &mut label, &mut edges);
    }
    Ok(ConstraintGraph { q: g.q, origins: g.origins.clone(), edges })
}

fn extend_paths(
    out: &[Vec<&Edge>],
    start: usize,
    at: usize,
    remaining: u32,
    label: &mut Vec<Symbol>,
    edges: &mut Vec<Edge>,
) {
    if remaining == 0 {
        edges.push(Edge { from: start, to: at, label: Word::new(label.clone()) });
        return;
    }
    for e in &out[at] {
        let mark = label.len();
        label.extend_from_slice(e.label.symbols());
        extend_paths(out, start, e.to, remaining - 1, label, edges);
        label.truncate(mark);
    }
}

/// Number of admissible length-`n` words, by `N(n) = N(n-1) + q·N(n-2)`.
pub fn count_words(q: u32, n: usize) -> Result<BigUint> {
    Alphabet::new(q)?;
    let mut prev = BigUint::one();
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = BigUint::from(q) + 1u32;
    for _ in 2..=n {
        let next = &cur + &prev * q;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// All admissible words of length `n`, by exhaustive scan of `X^n`.
pub fn enumerate_words(q: u32, n: usize) -> Result<Vec<Word>> {
    enumerate_words_with_cap(q, n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_words_with_cap(q: u32, n: usize, cap: u128) -> Result<Vec<Word>> {
    let alphabet = Alphabet::new(q)?;
    let radix = alphabet.size() as u128;
    let needed = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(radix)).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let symbols: Vec<Symbol> = alphabet.symbols().collect();
    let mut digits = vec![0usize; n];
    let mut words = Vec::new();
    let mut buf = vec![Symbol::Silence; n];
    loop {
        for (slot, &d) in buf.iter_mut().zip(&digits) {
            *slot = symbols[d];
        }
        if crate::symbol::is_admissible(&buf) {
            words.push(Word::new(buf.clone()));
        }
        // odometer step, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(words);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < symbols.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Broadcast capacity `log2((1 + sqrt(4q+1)) / 2)` in bits per symbol.
pub fn capacity(q: u32) -> Result<f64> {
    Alphabet::new(q)?;
    Ok(((1.0 + (4.0 * q as f64 + 1.0).sqrt()) / 2.0).log2())
}

/// Roots of `λ² − λ − q`, larger first.
pub fn characteristic_roots(q: u32) -> Result<(f64, f64)> {
    Alphabet::new(q)?;
    let s = (1.0 + 4.0 * q as f64).sqrt();
    Ok(((1.0 + s) / 2.0, (1.0 - s) / 2.0))
}

/// `log2` of an exact word count, accurate for counts beyond `f64` range.
pub fn log2_count(count: &BigUint) -> f64 {
    if count.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = count.bits();
    let shift = bits.saturating_sub(64);
    let top = (count >> shift).to_f64().unwrap_or(f64::MAX);
    top.log2() + shift as f64
}
