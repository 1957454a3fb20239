//! Approximate eigenvectors by Franaszek's fixpoint iteration.

use crate::error::{Error, Result};
use crate::shift::{spectral_radius, AdjacencyMatrix};

// Start vectors beyond this are treated as "no certificate".
const MAX_START: u64 = 1 << 24;

/// Nonnegative integer vector with `A·x ≥ 2^p·x` componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApproxEigenvector {
    pub weights: Vec<u64>,
    pub p: u32,
}

impl ApproxEigenvector {
    pub fn new(weights: Vec<u64>, p: u32) -> Self {
        ApproxEigenvector { weights, p }
    }

    pub fn is_certificate_for(&self, adjacency: &AdjacencyMatrix) -> bool {
        self.weights.len() == adjacency.dim()
            && self.weights.iter().any(|&w| w > 0)
            && adjacency
                .mul_vec(&self.weights)
                .iter()
                .zip(&self.weights)
                .all(|(&ax, &x)| ax >= (x as u128) << self.p)
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }
}

/// Largest fixpoint of `x ← min(x, ⌊A·x / 2^p⌋)` below the constant vector
/// `start`.
fn franaszek(adjacency: &AdjacencyMatrix, p: u32, start: u64) -> Vec<u64> {
    let mut x = vec![start; adjacency.dim()];
    loop {
        let next: Vec<u64> = adjacency
            .mul_vec(&x)
            .into_iter()
            .zip(&x)
            .map(|(ax, &xi)| (ax >> p).min(xi as u128) as u64)
            .collect();
        if next == x {
            return x;
        }
        x = next;
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest approximate eigenvector reachable by Franaszek iteration.
///
/// The start level is the least constant for which the fixpoint is nonzero;
/// the fixpoint is monotone in the start level, so the least level is found
/// by doubling then bisection. The result is divided by the gcd of its
/// entries.
pub fn find_approximate_eigenvector(adjacency: &AdjacencyMatrix, p: u32) -> Result<ApproxEigenvector> {
    if p >= 64 {
        return Err(Error::InvalidParameter(format!("p={p} is too large")));
    }
    let lambda = spectral_radius(adjacency)?;
    let infeasible = || {
        Error::InfeasibleRate(format!(
            "spectral radius {lambda:.6} is below 2^{p} = {}",
            1u64 << p
        ))
    };
    if lambda.log2() < p as f64 - 1e-9 {
        return Err(infeasible());
    }

    let nonzero = |start: u64| franaszek(adjacency, p, start).iter().any(|&v| v > 0);
    let mut hi = 1u64;
    while !nonzero(hi) {
        if hi >= MAX_START {
            return Err(infeasible());
        }
        hi *= 2;
    }
    let mut lo = hi / 2; // fixpoint at `lo` is zero (or lo == 0)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if nonzero(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut weights = franaszek(adjacency, p, hi);
    let g = weights.iter().fold(0, |acc, &w| gcd(acc, w));
    weights.iter_mut().for_each(|w| *w /= g);
    Ok(ApproxEigenvector { weights, p })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> AdjacencyMatrix {
        AdjacencyMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn golden_mean_cube() {
        let a = m(&[vec![3, 2], vec![2, 1]]);
        let x = find_approximate_eigenvector(&a, 2).unwrap();
        assert_eq!(x.weights, vec![2, 1]);
        assert_eq!(a.mul_vec(&x.weights), vec![8, 5]);
    }

    #[test]
    fn q6_square_is_minimal() {
        let a = m(&[vec![7, 6], vec![1, 6]]);
        let x = find_approximate_eigenvector(&a, 3).unwrap();
        // [3,1] is also a certificate ([27,9] >= [24,8]) but not the smallest.
        assert!(ApproxEigenvector::new(vec![3, 1], 3).is_certificate_for(&a));
        assert_eq!(x.weights, vec![2, 1]);
        assert!(x.is_certificate_for(&a));
        assert!(!ApproxEigenvector::new(vec![1, 1], 3).is_certificate_for(&a));
    }

    #[test]
    fn rate_above_capacity_is_rejected() {
        let a = m(&[vec![1, 1], vec![1, 0]]);
        assert!(matches!(find_approximate_eigenvector(&a, 1), Err(Error::InfeasibleRate(_))));
    }

    #[test]
    fn exact_integer_capacity() {
        // q=2: λ = 2 exactly, eigenvector [2,1].
        let a = m(&[vec![1, 2], vec![1, 0]]);
        let x = find_approximate_eigenvector(&a, 1).unwrap();
        assert_eq!(x.weights, vec![2, 1]);
    }
}
