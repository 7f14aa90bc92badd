//! Integer partitions, compositions and the counting primitives used by the
//! symmetric-function and measure modules.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Trailing zeros are stripped on construction, so two partitions compare
/// equal iff they have the same nonzero parts. The derived ordering is
/// lexicographic, which on partitions of a fixed weight is a linear extension
/// of the dominance order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates that `parts` is weakly decreasing and strips trailing zeros.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts arbitrary nonnegative entries into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Result<Vec<usize>> {
        if self.len() > n {
            return Err(Error::TooManyParts {
                partition: self.to_string(),
                max_parts: n,
            });
        }
        let mut v = self.0.clone();
        v.resize(n, 0);
        Ok(v)
    }

    /// Multiplicities of each distinct nonzero part.
    pub fn multiplicities(&self) -> Vec<usize> {
        run_lengths(&self.0)
    }

    /// The conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|k| self.0.iter().take_while(|&&p| p >= k).count())
                .collect(),
        )
    }
}

impl fmt::Display for Partition {
    /// Dash-separated parts; the empty partition prints as an empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_dashed(f, &self.0)
    }
}

/// A length-`n` vector of nonnegative integers; a lattice point of the
/// discretized simplex once divided by its weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(entries: Vec<usize>) -> Self {
        Composition(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The partition obtained by sorting the entries.
    pub fn sorted(&self) -> Partition {
        Partition::from_unsorted(self.0.clone())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_dashed(f, &self.0)
    }
}

fn write_dashed(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str("-")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn run_lengths(sorted: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&x| x == sorted[i]).count();
        out.push(j);
        i += j;
    }
    out
}

/// All partitions of `n` with at most `max_parts` parts, in decreasing
/// lexicographic order: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn partitions_of(n: usize, max_parts: usize) -> Vec<Partition> {
    fn rec(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for first in (1..=cap.min(rest)).rev() {
            // the remaining slots must be able to absorb what is left
            if first * slots < rest {
                break;
            }
            cur.push(first);
            rec(rest - first, first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// `mu ⊴ lambda`: every partial sum of `mu` is at most that of `lambda`.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.weight() != lambda.weight() {
        return Err(Error::WeightMismatch {
            expected: lambda.weight(),
            actual: mu.weight(),
        });
    }
    let (mut sm, mut sl) = (0, 0);
    for i in 0..mu.len().max(lambda.len()) {
        sm += mu.0.get(i).copied().unwrap_or(0);
        sl += lambda.0.get(i).copied().unwrap_or(0);
        if sm > sl {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `n! / Π entries[i]!`.
pub fn multinomial(n: usize, entries: &[usize]) -> Result<BigUint> {
    let total: usize = entries.iter().sum();
    if total != n {
        return Err(Error::WeightMismatch {
            expected: n,
            actual: total,
        });
    }
    // product of binomials, each step exact
    let mut acc = BigUint::one();
    let mut seen = 0usize;
    for &e in entries {
        for k in 1..=e {
            acc *= seen + k;
            acc /= k;
        }
        seen += e;
    }
    Ok(acc)
}

/// Number of distinct length-`n` vectors obtained by permuting `eta` padded
/// with zeros, i.e. `m_eta(1, …, 1)` in `n` variables.
pub fn orbit_size(eta: &Partition, n: usize) -> Result<BigUint> {
    let padded = eta.padded(n)?;
    multinomial(n, &run_lengths(&padded))
}

/// All length-`n` compositions of `total`, first coordinate descending:
/// `(2,0), (1,1), (0,2)`.
pub fn lattice_points(total: usize, n: usize) -> Vec<Composition> {
    fn rec(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if slots == 1 {
            cur.push(rest);
            out.push(Composition(cur.clone()));
            cur.pop();
            return;
        }
        for first in (0..=rest).rev() {
            cur.push(first);
            rec(rest - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(total, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `total` with at most `n` parts, each padded to a length-`n`
/// composition. These are the lattice points of the sorted chamber.
pub fn chamber_points(total: usize, n: usize) -> Vec<Composition> {
    partitions_of(total, n)
        .into_iter()
        .map(|p| Composition(p.padded(n).expect("bounded by max_parts")))
        .collect()
}

/// Every distinct permutation of the multiset `v`, in lexicographic order.
pub fn distinct_permutations(v: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
