//! Integer compositions and their region structure.
//!
//! A composition `(a_1, ..., a_r)` of `n` splits the positions `1..=n` into
//! `r` consecutive regions; region `a` is `{s_{a-1}+1, ..., s_a}` where
//! `s_a = a_1 + ... + a_a`. Everything downstream (permutations, codes,
//! reduced/bracket vectors) is indexed against this region structure.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A composition of a positive integer, with cached prefix sums.
///
/// All positions and region indices exposed by this type are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
    /// `prefix[a]` is `s_a`; `prefix[0] = 0` and `prefix[r] = n`.
    prefix: Vec<usize>,
}

impl Composition {
    /// Builds a composition from its parts, rejecting empty or non-positive input.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        for (idx, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(Error::NonPositivePart {
                    position: idx + 1,
                    value: 0,
                });
            }
        }
        let mut prefix = Vec::with_capacity(parts.len() + 1);
        prefix.push(0);
        let mut total = 0;
        for &p in &parts {
            total += p;
            prefix.push(total);
        }
        Ok(Composition { parts, prefix })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being composed.
    pub fn n(&self) -> usize {
        *self.prefix.last().unwrap()
    }

    /// Number of parts `r`.
    pub fn num_regions(&self) -> usize {
        self.parts.len()
    }

    /// Prefix sum `s_a` for `0 <= a <= r`.
    pub fn prefix_sum(&self, a: usize) -> usize {
        self.prefix[a]
    }

    /// Region index `a` of position `i`, i.e. the unique `a` with
    /// `s_{a-1} < i <= s_a`.
    pub fn region_of(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        // number of prefix sums strictly below i
        Ok(self.prefix.partition_point(|&s| s < i))
    }

    /// The positions `s_{a-1}+1 ..= s_a` forming region `a`.
    pub fn region_positions(&self, a: usize) -> std::ops::RangeInclusive<usize> {
        self.prefix[a - 1] + 1..=self.prefix[a]
    }

    /// Whether positions `i` and `i+1` lie in the same region.
    pub(crate) fn same_region_as_next(&self, i: usize) -> bool {
        // i+1 is in the same region iff i is not a prefix sum
        self.prefix.binary_search(&i).is_err()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, p) in self.parts.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses the comma-separated text form, e.g. `"1,2,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::EmptyComposition);
        }
        let mut parts = Vec::new();
        for (idx, token) in trimmed.split(',').enumerate() {
            let value: i64 = token.trim().parse().map_err(|_| {
                Error::Parse(format!("invalid composition part {:?}", token.trim()))
            })?;
            if value <= 0 {
                return Err(Error::NonPositivePart {
                    position: idx + 1,
                    value,
                });
            }
            parts.push(value as usize);
        }
        Composition::new(parts)
    }
}

/// All `2^(n-1)` compositions of `n`, in lexicographic order of their parts.
pub fn compositions_of(n: usize) -> Vec<Composition> {
    fn rec(remaining: usize, acc: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if remaining == 0 {
            out.push(Composition::new(acc.clone()).unwrap());
            return;
        }
        for first in 1..=remaining {
            acc.push(first);
            rec(remaining - first, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}
