//! Bounce paths, bracket vectors and reduced vectors.
//!
//! The bounce path of a composition induces a family of bracket vectors
//! (length `2n+1`, conditions B1-B3) whose componentwise order realizes the
//! corresponding nu-Tamari lattice. Removing the `n+1` fixed positions
//! leaves reduced vectors (length `n`, conditions R1-R2), and reversing each
//! region while shifting by the region's prefix sum turns reduced vectors
//! into alpha-codes. The maps in this module are all bijections and all
//! componentwise-monotone, which chains the three incarnations together.

use std::fmt;

use crate::code::{format_comma, parse_comma_i64, to_i64, AlphaCode};
use crate::composition::Composition;
use crate::dfs::RangeDfs;
use crate::error::{BracketViolation, Error, ReducedViolation, Result};

/// One step of a northeast lattice path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    North,
    East,
}

/// The bounce path `N^{a_1} E^{a_1} ... N^{a_r} E^{a_r}` of a composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BouncePath {
    alpha: Composition,
    steps: Vec<Step>,
}

impl BouncePath {
    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }
}

impl fmt::Display for BouncePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            match step {
                Step::North => write!(f, "N")?,
                Step::East => write!(f, "E")?,
            }
        }
        Ok(())
    }
}

pub fn bounce_path(alpha: &Composition) -> BouncePath {
    let mut steps = Vec::with_capacity(2 * alpha.n());
    for &part in alpha.parts() {
        steps.extend(std::iter::repeat_n(Step::North, part));
        steps.extend(std::iter::repeat_n(Step::East, part));
    }
    BouncePath {
        alpha: alpha.clone(),
        steps,
    }
}

/// A vector of length `2n+1` satisfying the bracket conditions B1-B3.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracketVector {
    alpha: Composition,
    values: Vec<usize>,
}

/// A vector of length `n` satisfying the reduced conditions R1-R2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedVector {
    alpha: Composition,
    values: Vec<usize>,
}

/// The componentwise-minimal bracket vector of `alpha`.
///
/// Within the block of region `a` (positions `2s_{a-1}+1 ..= 2s_a`), the
/// first `a_a` entries climb from `s_{a-1}` and the rest sit at `s_a`; the
/// final entry at `2n+1` is `n`.
pub fn min_bracket_vector(alpha: &Composition) -> BracketVector {
    let n = alpha.n();
    let mut values = vec![0; 2 * n + 1];
    for a in 1..=alpha.num_regions() {
        let s_before = alpha.prefix_sum(a - 1);
        let part = alpha.parts()[a - 1];
        for i in 1..=part {
            values[2 * s_before + i - 1] = i + s_before - 1;
            values[2 * s_before + part + i - 1] = alpha.prefix_sum(a);
        }
    }
    values[2 * n] = n;
    BracketVector {
        alpha: alpha.clone(),
        values,
    }
}

/// The fixed positions `(f_0, ..., f_n)`: `f_k` is the last position where
/// `k` appears in the minimal bracket vector, with `f_n = 2n+1`.
pub fn fixed_positions(alpha: &Composition) -> Vec<usize> {
    let n = alpha.n();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..n {
        out.push(k + 1 + alpha.prefix_sum(alpha.region_of(k + 1).unwrap() - 1));
    }
    out.push(2 * n + 1);
    out
}

/// The non-fixed positions in increasing order; entry `i-1` is where the
/// `i`-th reduced-vector component lives inside a bracket vector.
fn free_positions(alpha: &Composition) -> Vec<usize> {
    let mut out = Vec::with_capacity(alpha.n());
    for a in 1..=alpha.num_regions() {
        let s_before = alpha.prefix_sum(a - 1);
        let part = alpha.parts()[a - 1];
        for i in 1..=part {
            out.push(2 * s_before + part + i);
        }
    }
    out
}

/// Checks the bracket conditions, reporting the first violation in the order
/// length, B1, B2, B3 (indices ascending).
pub fn is_bracket_vector(
    alpha: &Composition,
    values: &[i64],
) -> std::result::Result<(), BracketViolation> {
    let n = alpha.n();
    let len = 2 * n + 1;
    if values.len() != len {
        return Err(BracketViolation::Length {
            expected: len,
            actual: values.len(),
        });
    }
    let fixed = fixed_positions(alpha);
    for (k, &f_k) in fixed.iter().enumerate() {
        if values[f_k - 1] != k as i64 {
            return Err(BracketViolation::B1 { k });
        }
    }
    let minimum = min_bracket_vector(alpha);
    for i in 1..=len {
        if values[i - 1] < minimum.values[i - 1] as i64 || values[i - 1] > n as i64 {
            return Err(BracketViolation::B2 { i });
        }
    }
    for i in 1..=len {
        let k = values[i - 1] as usize;
        for j in i + 1..fixed[k] {
            if values[j - 1] > k as i64 {
                return Err(BracketViolation::B3 { i, j });
            }
        }
    }
    Ok(())
}

/// Checks the reduced conditions, reporting the first violation in the order
/// length, R1, R2 (indices ascending).
///
/// In R2 the bound `s_{rho(r(i)+1)-1}` caps at `n` when `r(i) = n`; the
/// constraint is then vacuous because R1 already bounds every entry by `n`.
pub fn is_reduced_vector(
    alpha: &Composition,
    values: &[i64],
) -> std::result::Result<(), ReducedViolation> {
    let n = alpha.n();
    if values.len() != n {
        return Err(ReducedViolation::Length {
            expected: n,
            actual: values.len(),
        });
    }
    for i in 1..=n {
        let lo = alpha.prefix_sum(alpha.region_of(i).unwrap()) as i64;
        if values[i - 1] < lo || values[i - 1] > n as i64 {
            return Err(ReducedViolation::R1 { i });
        }
    }
    for i in 1..=n {
        let r_i = values[i - 1] as usize;
        if r_i == n {
            continue;
        }
        let bound = alpha.prefix_sum(alpha.region_of(r_i + 1).unwrap() - 1);
        for j in i + 1..=bound {
            if values[j - 1] > r_i as i64 {
                return Err(ReducedViolation::R2 { i, j });
            }
        }
    }
    Ok(())
}

impl BracketVector {
    pub fn new(alpha: Composition, values: Vec<i64>) -> Result<Self> {
        is_bracket_vector(&alpha, &values).map_err(Error::InvalidBracketVector)?;
        let values = values.into_iter().map(|v| v as usize).collect();
        Ok(BracketVector { alpha, values })
    }

    pub fn parse(alpha: &Composition, s: &str) -> Result<Self> {
        BracketVector::new(alpha.clone(), parse_comma_i64(s)?)
    }

    fn from_valid(alpha: Composition, values: Vec<usize>) -> Self {
        debug_assert!(is_bracket_vector(&alpha, &to_i64(&values)).is_ok());
        BracketVector { alpha, values }
    }

    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value at 1-based position `i`.
    pub fn value_at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// JSON form annotating which positions are fixed:
    /// a list of `{index, value, fixed}` objects.
    pub fn to_json(&self) -> serde_json::Value {
        let fixed: std::collections::BTreeSet<usize> =
            fixed_positions(&self.alpha).into_iter().collect();
        serde_json::Value::Array(
            (1..=self.values.len())
                .map(|i| {
                    serde_json::json!({
                        "index": i,
                        "value": self.values[i - 1],
                        "fixed": fixed.contains(&i),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for BracketVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_comma(f, &self.values)
    }
}

impl ReducedVector {
    pub fn new(alpha: Composition, values: Vec<i64>) -> Result<Self> {
        is_reduced_vector(&alpha, &values).map_err(Error::InvalidReducedVector)?;
        let values = values.into_iter().map(|v| v as usize).collect();
        Ok(ReducedVector { alpha, values })
    }

    pub fn parse(alpha: &Composition, s: &str) -> Result<Self> {
        ReducedVector::new(alpha.clone(), parse_comma_i64(s)?)
    }

    fn from_valid(alpha: Composition, values: Vec<usize>) -> Self {
        debug_assert!(is_reduced_vector(&alpha, &to_i64(&values)).is_ok());
        ReducedVector { alpha, values }
    }

    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value at 1-based position `i`.
    pub fn value_at(&self, i: usize) -> usize {
        self.values[i - 1]
    }
}

impl fmt::Display for ReducedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_comma(f, &self.values)
    }
}

/// Drops the fixed positions of a bracket vector, leaving its reduced vector.
pub fn reduce(b: &BracketVector) -> ReducedVector {
    let alpha = b.alpha();
    let values = free_positions(alpha)
        .into_iter()
        .map(|p| b.values[p - 1])
        .collect();
    ReducedVector::from_valid(alpha.clone(), values)
}

/// Reinserts the fixed values around a reduced vector, recovering the unique
/// bracket vector that reduces to it.
pub fn extend(r: &ReducedVector) -> BracketVector {
    let alpha = r.alpha();
    let n = alpha.n();
    let mut values = vec![0; 2 * n + 1];
    for (k, f_k) in fixed_positions(alpha).into_iter().enumerate() {
        values[f_k - 1] = k;
    }
    for (idx, p) in free_positions(alpha).into_iter().enumerate() {
        values[p - 1] = r.values[idx];
    }
    BracketVector::from_valid(alpha.clone(), values)
}

/// Position `i` reflected inside its own region.
fn region_reverse(alpha: &Composition, i: usize) -> usize {
    let a = alpha.region_of(i).unwrap();
    2 * alpha.prefix_sum(a) - alpha.parts()[a - 1] - i + 1
}

/// Reverses each region of a reduced vector while subtracting the region's
/// prefix sum, producing an alpha-code.
pub fn to_code(r: &ReducedVector) -> AlphaCode {
    let alpha = r.alpha();
    let entries = (1..=alpha.n())
        .map(|i| {
            let s = alpha.prefix_sum(alpha.region_of(i).unwrap());
            r.values[region_reverse(alpha, i) - 1] - s
        })
        .collect();
    AlphaCode::from_valid(alpha.clone(), entries)
}

/// Inverse of [`to_code`]: reverses each region of a code while adding the
/// region's prefix sum.
pub fn from_code(c: &AlphaCode) -> ReducedVector {
    let alpha = c.alpha();
    let values = (1..=alpha.n())
        .map(|i| {
            let s = alpha.prefix_sum(alpha.region_of(i).unwrap());
            c.entries()[region_reverse(alpha, i) - 1] + s
        })
        .collect();
    ReducedVector::from_valid(alpha.clone(), values)
}

/// Lazily enumerates all reduced vectors in lexicographic order.
///
/// Entry `j` ranges inside its R1 bounds, capped by every earlier entry
/// whose R2 window reaches `j`.
pub fn enumerate_reduced(alpha: &Composition) -> impl Iterator<Item = ReducedVector> {
    let alpha = alpha.clone();
    let bounds_alpha = alpha.clone();
    RangeDfs::new(alpha.n(), move |prefix: &[usize]| {
        reduced_bounds(&bounds_alpha, prefix)
    })
    .map(move |values| ReducedVector::from_valid(alpha.clone(), values))
}

fn reduced_bounds(alpha: &Composition, prefix: &[usize]) -> (usize, usize) {
    let n = alpha.n();
    let j = prefix.len() + 1;
    let lo = alpha.prefix_sum(alpha.region_of(j).unwrap());
    let mut hi = n;
    for i in 1..j {
        let r_i = prefix[i - 1];
        if r_i < n && j <= alpha.prefix_sum(alpha.region_of(r_i + 1).unwrap() - 1) {
            hi = hi.min(r_i);
        }
    }
    (lo, hi)
}

/// Lazily enumerates all bracket vectors in lexicographic order.
///
/// Goes through the reduced vectors and reinserts the fixed positions, which
/// preserves lexicographic order because the inserted values are constants.
pub fn enumerate_brackets(alpha: &Composition) -> impl Iterator<Item = BracketVector> {
    enumerate_reduced(alpha).map(|r| extend(&r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::compositions_of;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn bounce_paths() {
        assert_eq!(bounce_path(&comp(&[1, 2, 1])).to_string(), "NENNEENE");
        assert_eq!(
            bounce_path(&comp(&[2, 3, 2, 1])).to_string(),
            "NNEENNNEEENNEENE"
        );
        assert_eq!(bounce_path(&comp(&[4])).to_string(), "NNNNEEEE");
    }

    #[test]
    fn minimal_bracket_vectors() {
        assert_eq!(
            min_bracket_vector(&comp(&[1, 2, 1])).values(),
            &[0, 1, 1, 2, 3, 3, 3, 4, 4]
        );
        assert_eq!(min_bracket_vector(&comp(&[1])).values(), &[0, 1, 1]);
        assert_eq!(min_bracket_vector(&comp(&[2, 3, 2, 1])).value_at(17), 8);
    }

    #[test]
    fn fixed_position_sequences() {
        assert_eq!(fixed_positions(&comp(&[1, 2, 1])), vec![1, 3, 4, 7, 9]);
        assert_eq!(fixed_positions(&comp(&[2, 3, 2, 1]))[8], 17);
        for n in 1..=6 {
            for alpha in compositions_of(n) {
                let fixed = fixed_positions(&alpha);
                assert_eq!(fixed[0], 1);
                assert_eq!(fixed.len(), n + 1);
                // f_k is the last position where k appears in the minimum
                let min = min_bracket_vector(&alpha);
                for (k, &f_k) in fixed.iter().enumerate() {
                    let last = (1..=2 * n + 1).filter(|&i| min.value_at(i) == k).max();
                    assert_eq!(Some(f_k), last);
                }
                // fixed and free positions partition 1..=2n+1
                let mut all: Vec<usize> = fixed.clone();
                all.extend(free_positions(&alpha));
                all.sort();
                assert_eq!(all, (1..=2 * n + 1).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn bracket_validity_reports() {
        let alpha = comp(&[1, 2, 1]);
        assert_eq!(
            is_bracket_vector(&alpha, &[0, 4, 1, 2, 4, 3, 3, 4, 4]),
            Ok(())
        );
        assert_eq!(
            is_bracket_vector(&alpha, &[0, 1, 1, 2, 3, 4, 3, 4, 4]),
            Err(BracketViolation::B3 { i: 5, j: 6 })
        );
        let min = min_bracket_vector(&alpha);
        assert_eq!(is_bracket_vector(&alpha, &to_i64(min.values())), Ok(()));
        assert_eq!(
            is_bracket_vector(&alpha, &[0, 1, 1]),
            Err(BracketViolation::Length {
                expected: 9,
                actual: 3
            })
        );
        assert_eq!(
            is_bracket_vector(&alpha, &[1, 1, 1, 2, 3, 3, 3, 4, 4]),
            Err(BracketViolation::B1 { k: 0 })
        );
        assert_eq!(
            is_bracket_vector(&alpha, &[0, 0, 1, 2, 3, 3, 3, 4, 4]),
            Err(BracketViolation::B2 { i: 2 })
        );
    }

    #[test]
    fn reduced_validity_reports() {
        assert_eq!(
            is_reduced_vector(&comp(&[2, 3, 2, 1]), &[8, 4, 8, 6, 5, 8, 8, 8]),
            Ok(())
        );
        assert_eq!(
            is_reduced_vector(&comp(&[1, 2, 1]), &[1, 3, 4, 4]),
            Err(ReducedViolation::R2 { i: 2, j: 3 })
        );
        assert_eq!(is_reduced_vector(&comp(&[1, 2, 1]), &[1, 3, 3, 4]), Ok(()));
        assert_eq!(
            is_reduced_vector(&comp(&[1, 2, 1]), &[0, 3, 3, 4]),
            Err(ReducedViolation::R1 { i: 1 })
        );
        assert_eq!(
            is_reduced_vector(&comp(&[1, 2, 1]), &[1, 3, 3]),
            Err(ReducedViolation::Length {
                expected: 4,
                actual: 3
            })
        );
    }

    #[test]
    fn reduction_examples() {
        let alpha = comp(&[2, 3, 2, 1]);
        let b = BracketVector::new(
            alpha.clone(),
            vec![0, 1, 8, 4, 2, 3, 4, 8, 6, 5, 5, 6, 8, 8, 7, 8, 8],
        )
        .unwrap();
        assert_eq!(reduce(&b).to_string(), "8,4,8,6,5,8,8,8");

        let b = min_bracket_vector(&comp(&[1, 2, 1]));
        assert_eq!(reduce(&b).to_string(), "1,3,3,4");

        for n in 1..=5 {
            for alpha in compositions_of(n) {
                let r = reduce(&min_bracket_vector(&alpha));
                for i in 1..=n {
                    assert_eq!(r.value_at(i), alpha.prefix_sum(alpha.region_of(i).unwrap()));
                }
            }
        }
    }

    #[test]
    fn extension_examples() {
        let alpha = comp(&[2, 3, 2, 1]);
        let r = ReducedVector::new(alpha, vec![8, 4, 8, 6, 5, 8, 8, 8]).unwrap();
        assert_eq!(extend(&r).to_string(), "0,1,8,4,2,3,4,8,6,5,5,6,8,8,7,8,8");

        let r = ReducedVector::new(comp(&[1, 2, 1]), vec![1, 4, 3, 4]).unwrap();
        assert_eq!(extend(&r).to_string(), "0,1,1,2,4,3,3,4,4");
    }

    #[test]
    fn conversion_examples() {
        let alpha = comp(&[2, 3, 2, 1]);
        let r = ReducedVector::new(alpha.clone(), vec![8, 4, 8, 6, 5, 8, 8, 8]).unwrap();
        assert_eq!(to_code(&r).to_string(), "2,6,0,1,3,1,1,0");
        let c = AlphaCode::new(alpha, vec![2, 6, 0, 1, 3, 1, 1, 0]).unwrap();
        assert_eq!(from_code(&c).to_string(), "8,4,8,6,5,8,8,8");

        let alpha = comp(&[1, 2, 1]);
        let r = ReducedVector::new(alpha.clone(), vec![1, 3, 3, 4]).unwrap();
        assert_eq!(to_code(&r).to_string(), "0,0,0,0");
        let r = ReducedVector::new(alpha.clone(), vec![4, 4, 4, 4]).unwrap();
        assert_eq!(to_code(&r).to_string(), "3,1,1,0");
        let c = AlphaCode::new(alpha.clone(), vec![1, 1, 1, 0]).unwrap();
        assert_eq!(from_code(&c).to_string(), "2,4,4,4");

        for n in 1..=5 {
            for alpha in compositions_of(n) {
                let zeros = AlphaCode::new(alpha.clone(), vec![0; n]).unwrap();
                let r = from_code(&zeros);
                for i in 1..=n {
                    assert_eq!(r.value_at(i), alpha.prefix_sum(alpha.region_of(i).unwrap()));
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_reduced(&comp(&[1, 2, 1])).count(), 10);
        assert_eq!(enumerate_brackets(&comp(&[1, 2, 1])).count(), 10);
        assert_eq!(enumerate_reduced(&comp(&[1])).count(), 1);
        assert_eq!(enumerate_brackets(&comp(&[1])).count(), 1);
        assert_eq!(enumerate_reduced(&comp(&[1, 1, 1])).count(), 5);
        assert_eq!(enumerate_brackets(&comp(&[1, 1, 1])).count(), 5);
    }

    #[test]
    fn enumerations_are_lex_ordered_and_valid() {
        for n in 1..=5 {
            for alpha in compositions_of(n) {
                let reduced: Vec<ReducedVector> = enumerate_reduced(&alpha).collect();
                for r in &reduced {
                    assert_eq!(is_reduced_vector(&alpha, &to_i64(r.values())), Ok(()));
                }
                for pair in reduced.windows(2) {
                    assert!(pair[0].values() < pair[1].values());
                }
                let brackets: Vec<BracketVector> = enumerate_brackets(&alpha).collect();
                for b in &brackets {
                    assert_eq!(is_bracket_vector(&alpha, &to_i64(b.values())), Ok(()));
                }
                for pair in brackets.windows(2) {
                    assert!(pair[0].values() < pair[1].values());
                }
            }
        }
    }

    #[test]
    fn reduced_enumeration_matches_filtered_search() {
        // independent reference: R1 boxes filtered through is_reduced_vector
        for n in 1..=5 {
            for alpha in compositions_of(n) {
                let mut reference = Vec::new();
                let lows: Vec<usize> = (1..=n)
                    .map(|i| alpha.prefix_sum(alpha.region_of(i).unwrap()))
                    .collect();
                let mut cur = lows.clone();
                'outer: loop {
                    if is_reduced_vector(&alpha, &to_i64(&cur)).is_ok() {
                        reference.push(cur.clone());
                    }
                    let mut pos = n;
                    loop {
                        if pos == 0 {
                            break 'outer;
                        }
                        if cur[pos - 1] < n {
                            cur[pos - 1] += 1;
                            break;
                        }
                        cur[pos - 1] = lows[pos - 1];
                        pos -= 1;
                    }
                }
                let by_dfs: Vec<Vec<usize>> = enumerate_reduced(&alpha)
                    .map(|r| r.values().to_vec())
                    .collect();
                assert_eq!(by_dfs, reference, "reduced vectors of {alpha}");
            }
        }
    }

    #[test]
    fn bracket_json_marks_fixed_positions() {
        let b = min_bracket_vector(&comp(&[1, 1]));
        let json = b.to_json();
        let arr = json.as_array().unwrap();
        assert_eq!(arr.len(), 5);
        assert_eq!(arr[0]["index"], 1);
        assert_eq!(arr[0]["fixed"], true);
        assert_eq!(arr[1]["fixed"], false);
    }
}
