//! Alpha-permutations, inversion sets, the left weak order and its cover
//! moves, and detection of (alpha,231)-patterns.

use std::collections::BTreeSet;
use std::fmt;

use crate::composition::Composition;
use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation that increases within every
/// region of its composition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaPermutation {
    alpha: Composition,
    /// One-line notation; `word[i-1]` is the value at position `i`.
    word: Vec<usize>,
}

/// The set of right inversions `{(i,j) | i < j, w_i > w_j}` of a permutation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InversionSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl InversionSet {
    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.pairs.is_subset(&other.pairs)
    }
}

/// Explains why a word fails to be an alpha-permutation; `None` means it is one.
fn word_violation(alpha: &Composition, word: &[usize]) -> Option<String> {
    let n = alpha.n();
    if word.len() != n {
        return Some(format!("expected {} entries, got {}", n, word.len()));
    }
    let mut seen = vec![false; n + 1];
    for (idx, &v) in word.iter().enumerate() {
        if v == 0 || v > n {
            return Some(format!(
                "entry {} at position {} is not in 1..={}",
                v,
                idx + 1,
                n
            ));
        }
        if seen[v] {
            return Some(format!("duplicate entry {} at position {}", v, idx + 1));
        }
        seen[v] = true;
    }
    for i in 1..n {
        if alpha.same_region_as_next(i) && word[i - 1] > word[i] {
            return Some(format!(
                "positions {} and {} share a region but {} > {}",
                i,
                i + 1,
                word[i - 1],
                word[i]
            ));
        }
    }
    None
}

/// Whether `word` is a permutation of `1..=n` increasing within each region.
pub fn is_alpha_permutation(alpha: &Composition, word: &[usize]) -> bool {
    word_violation(alpha, word).is_none()
}

impl AlphaPermutation {
    pub fn new(alpha: Composition, word: Vec<usize>) -> Result<Self> {
        match word_violation(&alpha, &word) {
            None => Ok(AlphaPermutation { alpha, word }),
            Some(reason) => Err(Error::InvalidPermutation { reason }),
        }
    }

    /// Parses space-separated one-line notation, e.g. `"3 1 4 2"`.
    ///
    /// Entries must be individually delimited; a run-together digit string
    /// like `"3142"` parses as a single entry and is rejected.
    pub fn parse(alpha: &Composition, s: &str) -> Result<Self> {
        let mut word = Vec::new();
        for token in s.split_whitespace() {
            let v: i64 = token
                .parse()
                .map_err(|_| Error::Parse(format!("invalid permutation entry {token:?}")))?;
            if v < 1 {
                return Err(Error::InvalidPermutation {
                    reason: format!("entry {} is not in 1..={}", v, alpha.n()),
                });
            }
            word.push(v as usize);
        }
        AlphaPermutation::new(alpha.clone(), word)
    }

    pub fn identity(alpha: &Composition) -> Self {
        let word = (1..=alpha.n()).collect();
        AlphaPermutation {
            alpha: alpha.clone(),
            word,
        }
    }

    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Value at 1-based position `i`.
    pub fn value_at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    /// 1-based position of value `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.word.iter().position(|&x| x == v).unwrap() + 1
    }

    pub fn inversion_set(&self) -> InversionSet {
        let n = self.word.len();
        let mut pairs = BTreeSet::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.word[i - 1] > self.word[j - 1] {
                    pairs.insert((i, j));
                }
            }
        }
        InversionSet { pairs }
    }

    /// All permutations covering `self` in the left weak order on its
    /// alpha-permutation set: for each pair of positions `i < j` in different
    /// regions with `w_i = w_j - 1`, swap the two entries.
    pub fn covers(&self) -> Vec<AlphaPermutation> {
        let n = self.word.len();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let (ri, rj) = (
                    self.alpha.region_of(i).unwrap(),
                    self.alpha.region_of(j).unwrap(),
                );
                if ri != rj && self.word[i - 1] + 1 == self.word[j - 1] {
                    let mut word = self.word.clone();
                    word.swap(i - 1, j - 1);
                    debug_assert!(is_alpha_permutation(&self.alpha, &word));
                    out.push(AlphaPermutation {
                        alpha: self.alpha.clone(),
                        word,
                    });
                }
            }
        }
        out
    }

    /// Returns the lexicographically smallest (alpha,231)-pattern witness
    /// `(i, j, k)`, or `None` if this permutation avoids the pattern.
    ///
    /// A witness consists of positions `i < j < k` in three distinct regions
    /// with `w_i < w_j` and `w_i = w_k + 1`.
    pub fn alpha_231_pattern(&self) -> Option<(usize, usize, usize)> {
        let n = self.word.len();
        let region: Vec<usize> = (1..=n).map(|i| self.alpha.region_of(i).unwrap()).collect();
        for i in 1..=n {
            for j in i + 1..=n {
                if region[j - 1] == region[i - 1] || self.word[i - 1] >= self.word[j - 1] {
                    continue;
                }
                for k in j + 1..=n {
                    if region[k - 1] != region[j - 1] && self.word[i - 1] == self.word[k - 1] + 1 {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_avoider(&self) -> bool {
        self.alpha_231_pattern().is_none()
    }
}

impl fmt::Display for AlphaPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.word.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Whether `u <= v` in the left weak order, i.e. `Inv(u)` is contained in `Inv(v)`.
pub fn weak_leq(u: &AlphaPermutation, v: &AlphaPermutation) -> Result<bool> {
    if u.alpha() != v.alpha() {
        return Err(Error::CompositionMismatch {
            left: u.alpha().to_string(),
            right: v.alpha().to_string(),
        });
    }
    Ok(u.inversion_set().is_subset(&v.inversion_set()))
}

/// Lazily enumerates all alpha-permutations in lexicographic order of their
/// one-line notation.
pub fn enumerate_alpha_permutations(alpha: &Composition) -> AlphaPermutations {
    AlphaPermutations {
        alpha: alpha.clone(),
        partial: Vec::with_capacity(alpha.n()),
        used: vec![false; alpha.n() + 1],
        at_leaf: false,
        exhausted: false,
    }
}

/// Lazily enumerates the (alpha,231)-avoiding permutations in lexicographic order.
pub fn enumerate_avoiders(alpha: &Composition) -> impl Iterator<Item = AlphaPermutation> {
    enumerate_alpha_permutations(alpha).filter(|w| w.is_avoider())
}

/// Depth-first generator of alpha-permutations. At each position the smallest
/// admissible unused value is tried first, which yields lexicographic order.
pub struct AlphaPermutations {
    alpha: Composition,
    partial: Vec<usize>,
    used: Vec<bool>,
    at_leaf: bool,
    exhausted: bool,
}

impl AlphaPermutations {
    /// Minimum admissible value at the next position: entries within a region
    /// must increase, so a non-initial region position must exceed the
    /// previous entry.
    fn floor(&self) -> usize {
        let pos = self.partial.len() + 1; // position being filled
        if pos > 1 && self.alpha.same_region_as_next(pos - 1) {
            self.partial[pos - 2] + 1
        } else {
            1
        }
    }

    fn smallest_unused(&self, from: usize) -> Option<usize> {
        (from.max(self.floor())..=self.alpha.n()).find(|&v| !self.used[v])
    }

    fn push(&mut self, v: usize) {
        self.partial.push(v);
        self.used[v] = true;
    }

    /// Pops values until one can be advanced; returns false when the search
    /// tree is exhausted.
    fn backtrack_and_advance(&mut self) -> bool {
        while let Some(v) = self.partial.pop() {
            self.used[v] = false;
            if let Some(next) = self.smallest_unused(v + 1) {
                self.push(next);
                return true;
            }
        }
        false
    }
}

impl Iterator for AlphaPermutations {
    type Item = AlphaPermutation;

    fn next(&mut self) -> Option<AlphaPermutation> {
        if self.exhausted {
            return None;
        }
        if self.at_leaf {
            self.at_leaf = false;
            if !self.backtrack_and_advance() {
                self.exhausted = true;
                return None;
            }
        }
        loop {
            if self.partial.len() == self.alpha.n() {
                self.at_leaf = true;
                return Some(AlphaPermutation {
                    alpha: self.alpha.clone(),
                    word: self.partial.clone(),
                });
            }
            match self.smallest_unused(1) {
                Some(v) => self.push(v),
                None => {
                    if !self.backtrack_and_advance() {
                        self.exhausted = true;
                        return None;
                    }
                }
            }
        }
    }
}
