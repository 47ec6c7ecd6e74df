//! The alpha-code of an alpha-permutation and the code set it lives in.
//!
//! The code of `w` records, at each position `i`, how many consecutive
//! entries are smaller than `w_i` counting from the first position of the
//! region after `i`'s region. The admissible tuples are cut out by three
//! conditions C1-C3; componentwise order on them realizes the alpha-Tamari
//! lattice, with the (alpha,231)-avoiding permutations as canonical
//! representatives.

use std::fmt;

use crate::composition::Composition;
use crate::dfs::RangeDfs;
use crate::error::{CodeViolation, Error, Result};
use crate::perm::AlphaPermutation;

/// An integer tuple satisfying the code conditions C1-C3 for its composition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaCode {
    alpha: Composition,
    entries: Vec<usize>,
}

/// Checks membership of a raw tuple in the code set.
///
/// Reports the first violated condition, scanning in the fixed order
/// length, C1, C2, C3, with indices ascending (for C3: `i` ascending, then
/// `a` ascending).
pub fn check_code(alpha: &Composition, entries: &[i64]) -> std::result::Result<(), CodeViolation> {
    let n = alpha.n();
    let r = alpha.num_regions();
    if entries.len() != n {
        return Err(CodeViolation::Length {
            expected: n,
            actual: entries.len(),
        });
    }
    let s = |a: usize| alpha.prefix_sum(a) as i64;
    let region: Vec<usize> = (1..=n).map(|i| alpha.region_of(i).unwrap()).collect();
    // C1: 0 <= c_i <= n - s_{rho(i)}
    for i in 1..=n {
        let c = entries[i - 1];
        if c < 0 || c > n as i64 - s(region[i - 1]) {
            return Err(CodeViolation::C1 { i });
        }
    }
    // C2: within a region, entries weakly increase
    for i in 1..n {
        if region[i - 1] == region[i] && entries[i - 1] > entries[i] {
            return Err(CodeViolation::C2 { i });
        }
    }
    // C3: c_{s_a} <= c_i - s_a + s_{rho(i)} whenever c_i >= s_a - s_{rho(i)},
    // for i <= s_{r-2} and rho(i) < a <= r-1 (trivial outside that range)
    if r >= 2 {
        let i_max = alpha.prefix_sum(r - 2);
        for i in 1..=i_max {
            let c_i = entries[i - 1];
            for a in region[i - 1] + 1..=r - 1 {
                if c_i >= s(a) - s(region[i - 1])
                    && entries[alpha.prefix_sum(a) - 1] > c_i - s(a) + s(region[i - 1])
                {
                    return Err(CodeViolation::C3 { i, a });
                }
            }
        }
    }
    Ok(())
}

impl AlphaCode {
    /// Validates a raw tuple against C1-C3 and wraps it.
    pub fn new(alpha: Composition, entries: Vec<i64>) -> Result<Self> {
        check_code(&alpha, &entries).map_err(Error::InvalidCode)?;
        let entries = entries.into_iter().map(|c| c as usize).collect();
        Ok(AlphaCode { alpha, entries })
    }

    /// Parses the comma-separated text form, e.g. `"2,6,0,1,3,1,1,0"`.
    pub fn parse(alpha: &Composition, s: &str) -> Result<Self> {
        AlphaCode::new(alpha.clone(), parse_comma_i64(s)?)
    }

    pub(crate) fn from_valid(alpha: Composition, entries: Vec<usize>) -> Self {
        debug_assert!(check_code(&alpha, &to_i64(&entries)).is_ok());
        AlphaCode { alpha, entries }
    }

    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Entry `c_i` at 1-based position `i`.
    pub fn entry(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    /// Position of the left-most zero entry. Well defined because C1 forces
    /// the last entry to be zero; for the decoded avoider this is the
    /// position of the value 1.
    pub fn leftmost_zero(&self) -> usize {
        self.entries.iter().position(|&c| c == 0).unwrap() + 1
    }
}

impl fmt::Display for AlphaCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_comma(f, &self.entries)
    }
}

pub(crate) fn format_comma(f: &mut fmt::Formatter<'_>, values: &[usize]) -> fmt::Result {
    for (idx, v) in values.iter().enumerate() {
        if idx > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

pub(crate) fn parse_comma_i64(s: &str) -> Result<Vec<i64>> {
    s.trim()
        .split(',')
        .map(|token| {
            token
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid integer entry {:?}", token.trim())))
        })
        .collect()
}

pub(crate) fn to_i64(values: &[usize]) -> Vec<i64> {
    values.iter().map(|&v| v as i64).collect()
}

/// The alpha-code of `w`: `c_i` counts the consecutive entries smaller than
/// `w_i` starting from the first position of the region after `i`'s region.
pub fn encode(w: &AlphaPermutation) -> AlphaCode {
    let alpha = w.alpha();
    let n = alpha.n();
    let mut entries = Vec::with_capacity(n);
    for i in 1..=n {
        let start = alpha.prefix_sum(alpha.region_of(i).unwrap()) + 1;
        let count = (start..=n)
            .take_while(|&k| w.value_at(k) < w.value_at(i))
            .count();
        entries.push(count);
    }
    AlphaCode::from_valid(alpha.clone(), entries)
}

/// Whether `w_i` sees `w_k`, i.e. `0 < k - s_{rho(i)} <= c_i`. Seeing implies
/// `(i, k)` is an inversion of `w`.
pub fn sees(w: &AlphaPermutation, i: usize, k: usize) -> Result<bool> {
    let n = w.alpha().n();
    for idx in [i, k] {
        if idx == 0 || idx > n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
    }
    let s = w.alpha().prefix_sum(w.alpha().region_of(i)?);
    if k <= s {
        return Ok(false);
    }
    // c_i, computed directly
    let c_i = (s + 1..=n)
        .take_while(|&p| w.value_at(p) < w.value_at(i))
        .count();
    Ok(k - s <= c_i)
}

/// Componentwise comparison `a_i <= b_i` for all `i`.
pub fn componentwise_leq(a: &AlphaCode, b: &AlphaCode) -> Result<bool> {
    if a.alpha() != b.alpha() {
        return Err(Error::CompositionMismatch {
            left: a.alpha().to_string(),
            right: b.alpha().to_string(),
        });
    }
    Ok(a.entries.iter().zip(&b.entries).all(|(x, y)| x <= y))
}

/// The unique (alpha,231)-avoiding permutation with the given code.
///
/// Works by peeling off the value 1: the left-most zero of the code marks
/// where 1 sits, removing that position yields a code for a composition of
/// `n-1`, and the smaller permutation is decoded recursively.
pub fn decode(code: &AlphaCode) -> AlphaPermutation {
    let word = decode_rec(code.alpha().parts(), code.entries());
    let w = AlphaPermutation::new(code.alpha().clone(), word)
        .expect("decoded word is an alpha-permutation");
    debug_assert!(w.is_avoider());
    debug_assert_eq!(&encode(&w), code);
    w
}

fn decode_rec(parts: &[usize], code: &[usize]) -> Vec<usize> {
    let n = code.len();
    if n == 0 {
        return Vec::new();
    }
    let alpha = Composition::new(parts.to_vec()).unwrap();
    // first zero; valid codes end in 0
    let j_o = code.iter().position(|&c| c == 0).unwrap() + 1;
    let a = alpha.region_of(j_o).unwrap();
    // j_o is forced to the front of its region: a zero later in a region
    // would propagate left through C2
    debug_assert_eq!(j_o, alpha.prefix_sum(a - 1) + 1);

    let mut sub_parts = parts.to_vec();
    sub_parts[a - 1] -= 1;
    if sub_parts[a - 1] == 0 {
        sub_parts.remove(a - 1);
    }

    let s_before = alpha.prefix_sum(a - 1);
    let mut sub_code = Vec::with_capacity(n - 1);
    for i in 1..j_o {
        let s_i = alpha.prefix_sum(alpha.region_of(i).unwrap());
        // entries that reach past the removed position shrink by one
        if code[i - 1] + s_i >= s_before {
            sub_code.push(code[i - 1] - 1);
        } else {
            sub_code.push(code[i - 1]);
        }
    }
    sub_code.extend_from_slice(&code[j_o..]);

    let sub_word = decode_rec(&sub_parts, &sub_code);

    let mut word = Vec::with_capacity(n);
    word.extend(sub_word[..j_o - 1].iter().map(|&v| v + 1));
    word.push(1);
    word.extend(sub_word[j_o - 1..].iter().map(|&v| v + 1));
    word
}

/// Lazily enumerates the code set in lexicographic order.
///
/// Entries are generated left to right inside their C1 ranges; the C2 lower
/// bound and the C3 upper bounds only involve earlier positions, so invalid
/// tuples are pruned as soon as they diverge.
pub fn enumerate_codes(alpha: &Composition) -> impl Iterator<Item = AlphaCode> {
    let alpha = alpha.clone();
    let bounds_alpha = alpha.clone();
    RangeDfs::new(alpha.n(), move |prefix: &[usize]| {
        code_bounds(&bounds_alpha, prefix)
    })
    .map(move |entries| AlphaCode::from_valid(alpha.clone(), entries))
}

/// Admissible range for the entry at position `prefix.len() + 1`.
fn code_bounds(alpha: &Composition, prefix: &[usize]) -> (usize, usize) {
    let n = alpha.n();
    let r = alpha.num_regions();
    let j = prefix.len() + 1;
    let region_j = alpha.region_of(j).unwrap();
    let lo = if j > 1 && alpha.region_of(j - 1).unwrap() == region_j {
        prefix[j - 2]
    } else {
        0
    };
    let mut hi = n - alpha.prefix_sum(region_j);
    // C3 caps c_{s_a}: when j closes region a (a < r), every earlier entry
    // reaching into region a+1 bounds it
    if j == alpha.prefix_sum(region_j) && region_j < r {
        let s_a = alpha.prefix_sum(region_j);
        for i in 1..j {
            let s_i = alpha.prefix_sum(alpha.region_of(i).unwrap());
            if s_i < s_a && prefix[i - 1] + s_i >= s_a {
                let cap = prefix[i - 1] + s_i - s_a;
                hi = hi.min(cap);
            }
        }
    }
    (lo, hi)
}
