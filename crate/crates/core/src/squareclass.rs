//! The group of positive rationals modulo squares, viewed as a vector space
//! over GF(2) with the primes as basis.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// A class in ℚ₊*/(ℚ₊*)², identified with its squarefree representative.
///
/// `support` holds the primes dividing the representative, strictly
/// increasing. The trivial class has empty support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SquareClass {
    support: Vec<u64>,
}

impl SquareClass {
    pub fn trivial() -> Self {
        SquareClass::default()
    }

    /// The class of a positive integer.
    pub fn of(n: u128) -> Result<Self> {
        let f = arith::factorize(n)?;
        let support = f
            .factors
            .iter()
            .filter(|&&(_, e)| e % 2 == 1)
            .map(|&(p, _)| u64::try_from(p).map_err(|_| Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(SquareClass { support })
    }

    /// Builds a class directly from its prime support. Primes are sorted and
    /// repeated primes cancel in pairs.
    pub fn from_primes<I: IntoIterator<Item = u64>>(primes: I) -> Self {
        let mut support: Vec<u64> = primes.into_iter().collect();
        support.sort_unstable();
        let mut out: Vec<u64> = Vec::with_capacity(support.len());
        for p in support {
            if out.last() == Some(&p) {
                out.pop();
            } else {
                out.push(p);
            }
        }
        SquareClass { support: out }
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn is_trivial(&self) -> bool {
        self.support.is_empty()
    }

    /// Squarefree representative.
    pub fn representative(&self) -> u128 {
        self.support.iter().map(|&p| p as u128).product()
    }

    pub fn contains_prime(&self, p: u64) -> bool {
        self.support.binary_search(&p).is_ok()
    }

    /// Group operation: symmetric difference of supports.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let (a, b) = (&self.support, &other.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        SquareClass { support: out }
    }

    fn pivot(&self) -> Option<u64> {
        self.support.last().copied()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative())
    }
}

/// A subgroup of ℚ₊*/(ℚ₊*)² kept as a GF(2) basis in reduced echelon form.
///
/// Each basis vector is keyed by its largest prime (its pivot); pivots are
/// distinct and no basis vector contains another vector's pivot.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SquareClassSubgroup {
    basis: Vec<SquareClass>,
}

impl SquareClassSubgroup {
    pub fn basis(&self) -> &[SquareClass] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `2^rank`.
    pub fn order(&self) -> u128 {
        1u128 << self.rank()
    }

    /// Reduces `c` against the basis; the result is trivial iff `c` lies in
    /// the subgroup.
    pub fn reduce(&self, c: &SquareClass) -> SquareClass {
        let mut r = c.clone();
        // basis is sorted by decreasing pivot, so one pass suffices
        for b in &self.basis {
            if let Some(p) = b.pivot() {
                if r.contains_prime(p) {
                    r = r.mul(b);
                }
            }
        }
        r
    }

    pub fn contains(&self, c: &SquareClass) -> bool {
        self.reduce(c).is_trivial()
    }

    /// Adds a generator. Returns `true` if the rank grew.
    pub fn insert(&mut self, c: &SquareClass) -> bool {
        let r = self.reduce(c);
        let Some(p) = r.pivot() else {
            return false;
        };
        for b in &mut self.basis {
            if b.contains_prime(p) {
                *b = b.mul(&r);
            }
        }
        self.basis.push(r);
        self.basis.sort_by(|a, b| b.pivot().cmp(&a.pivot()));
        true
    }
}

/// The subgroup generated by `generators`.
pub fn span<'a, I: IntoIterator<Item = &'a SquareClass>>(generators: I) -> SquareClassSubgroup {
    let mut g = SquareClassSubgroup::default();
    for c in generators {
        g.insert(c);
    }
    g
}

pub fn contains(subgroup: &SquareClassSubgroup, c: &SquareClass) -> bool {
    subgroup.contains(c)
}
