//! Farey sequences and the residue partition of `{1, ..., p-1}`.
//!
//! No floating point: every comparison against a boundary `p * s / m` is a
//! cross-multiplication in `u128`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::primes::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {n} is not below p = {p}")]
    OrderTooLarge { p: u32, n: u32 },
}

/// A reduced fraction in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0 && num <= den, "{num}/{den} is not in [0, 1]");
        let g = gcd(num, den);
        Fraction { num: num / g, den: den / g }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// Smallest integer strictly greater than `scale * self`.
    pub fn scaled_floor_succ(&self, scale: u64) -> u64 {
        let prod = scale as u128 * self.num as u128;
        (prod / self.den as u128) as u64 + 1
    }

    /// Largest integer strictly less than `scale * self`.
    pub fn scaled_ceil_pred(&self, scale: u64) -> Option<u64> {
        let prod = scale as u128 * self.num as u128;
        let ceil = prod.div_ceil(self.den as u128) as u64;
        ceil.checked_sub(1)
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareySequence {
    n: u64,
    entries: Vec<Fraction>,
}

impl FareySequence {
    pub fn order(&self) -> u64 {
        self.n
    }

    /// `0 = f_0 < f_1 < ... < f_Phi = 1`.
    pub fn entries(&self) -> &[Fraction] {
        &self.entries
    }

    /// `|F_n \ {0}|`.
    pub fn phi(&self) -> usize {
        self.entries.len() - 1
    }
}

pub fn farey_sequence(n: u64) -> FareySequence {
    assert!(n >= 1, "Farey sequences start at order 1");
    let mut entries: Vec<Fraction> = (1..=n)
        .flat_map(|m| (0..=m).filter(move |&s| gcd(s, m) == 1).map(move |s| Fraction { num: s, den: m }))
        .collect();
    entries.sort_unstable();
    FareySequence { n, entries }
}

/// `Phi(n)` via a totient sieve, without materialising the sequence.
pub fn phi_count(n: u64) -> u64 {
    assert!(n >= 1, "Phi is defined for n >= 1");
    let n = n as usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            for j in (i..=n).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi[1..].iter().sum()
}

/// Classes `A_1, ..., A_Phi(n)`: `A_i` holds the integers strictly between
/// `p * f_{i-1}` and `p * f_i`. Classes may be empty when `p` is small
/// relative to `n^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResiduePartition {
    p: u32,
    n: u32,
    classes: Vec<Vec<u32>>,
    #[serde(skip)]
    class_of: Vec<Option<usize>>,
    #[serde(skip)]
    farey: Vec<Fraction>,
}

impl ResiduePartition {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Zero-based index of the class holding residue `r`.
    pub fn class_of(&self, r: u32) -> Option<usize> {
        self.class_of.get(r as usize).copied().flatten()
    }

    /// The `s` with `(f_{i-1}, f_i)` inside `((s-1)/m, s/m)`, so that every
    /// sum of `m` elements of class `i` lies strictly between `p(s-1)` and `ps`.
    pub fn enclosing_step(&self, class: usize, m: u32) -> u64 {
        assert!(m >= 1 && m <= self.n);
        self.farey[class].scaled_floor_succ(m as u64)
    }
}

pub fn residue_partition(p: u32, n: u32) -> Result<ResiduePartition, PartitionError> {
    if !is_prime(p as u64) {
        return Err(PartitionError::NotPrime(p));
    }
    if n == 0 {
        return Err(PartitionError::ZeroOrder);
    }
    if n >= p {
        return Err(PartitionError::OrderTooLarge { p, n });
    }
    let farey = farey_sequence(n as u64).entries;
    let mut class_of = vec![None; p as usize];
    let classes: Vec<Vec<u32>> = farey
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let lo = w[0].scaled_floor_succ(p as u64);
            let hi = w[1].scaled_ceil_pred(p as u64).unwrap_or(0);
            let members: Vec<u32> = (lo..=hi).map(|r| r as u32).collect();
            for &r in &members {
                class_of[r as usize] = Some(i);
            }
            members
        })
        .collect();
    Ok(ResiduePartition { p, n, classes, class_of, farey })
}
