//! Materialized posets for the five order incarnations, plus the projection
//! onto avoiders and its congruence fibers.
//!
//! A poset stores its elements as canonical text keys, its cover edges
//! (the transitive reduction of the defining order), and a cached
//! reachability matrix for order queries. Meet and join are brute force; at
//! the sizes involved, correctness beats cleverness.

use std::collections::BTreeMap;

use serde_json::json;

use crate::code::{componentwise_leq, decode, encode, AlphaCode};
use crate::composition::Composition;
use crate::enumeration_cap;
use crate::error::{Error, Result};
use crate::nu::{
    enumerate_brackets, enumerate_reduced, reduce, to_code, BracketVector, ReducedVector,
};
use crate::perm::{
    enumerate_alpha_permutations, enumerate_avoiders, AlphaPermutation, InversionSet,
};

/// Which order a poset materializes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetKind {
    /// All alpha-permutations under the left weak order.
    WeakOrder,
    /// The (alpha,231)-avoiding permutations under the left weak order.
    AlphaTamari,
    /// The code set under componentwise order.
    Code,
    /// The reduced vectors under componentwise order.
    Reduced,
    /// The bracket vectors under componentwise order.
    Bracket,
}

impl PosetKind {
    pub fn name(self) -> &'static str {
        match self {
            PosetKind::WeakOrder => "weak-order",
            PosetKind::AlphaTamari => "alpha-tamari",
            PosetKind::Code => "code",
            PosetKind::Reduced => "reduced",
            PosetKind::Bracket => "bracket",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "weak-order" => Ok(PosetKind::WeakOrder),
            "alpha-tamari" => Ok(PosetKind::AlphaTamari),
            "code" => Ok(PosetKind::Code),
            "reduced" => Ok(PosetKind::Reduced),
            "bracket" => Ok(PosetKind::Bracket),
            other => Err(Error::Parse(format!("unknown poset kind {other:?}"))),
        }
    }
}

/// Export format for [`Poset::export`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl ExportFormat {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

/// What the DOT node labels show.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Labeling {
    Element,
    Code,
    #[default]
    Both,
}

impl Labeling {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "element" => Ok(Labeling::Element),
            "code" => Ok(Labeling::Code),
            "both" => Ok(Labeling::Both),
            other => Err(Error::Parse(format!("unknown labeling {other:?}"))),
        }
    }
}

/// A finite poset with elements keyed by canonical text and covers forming
/// the transitive reduction of the order.
#[derive(Debug, Clone)]
pub struct Poset {
    alpha: Composition,
    kind: PosetKind,
    elements: Vec<String>,
    covers: Vec<(usize, usize)>,
    /// `reach[i][j]` holds iff element `i` is below-or-equal element `j`.
    reach: Vec<Vec<bool>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        // reach is derived from covers
        self.alpha == other.alpha
            && self.kind == other.kind
            && self.elements == other.elements
            && self.covers == other.covers
    }
}

impl Eq for Poset {}

/// Builds the poset of the given kind, with elements in lexicographic order
/// and covers computed by transitive reduction of the defining relation.
///
/// For the weak order the reduction is cross-checked against the swap-based
/// cover moves.
pub fn build_poset(alpha: &Composition, kind: PosetKind) -> Result<Poset> {
    let cap = enumeration_cap();
    if alpha.n() > cap {
        return Err(Error::SizeCapExceeded { n: alpha.n(), cap });
    }
    let (elements, reach) = match kind {
        PosetKind::WeakOrder => perm_relation(alpha, false),
        PosetKind::AlphaTamari => perm_relation(alpha, true),
        PosetKind::Code => {
            let codes: Vec<AlphaCode> = crate::code::enumerate_codes(alpha).collect();
            vector_relation(
                &codes,
                |c| c.to_string(),
                |a, b| componentwise_leq(a, b).unwrap(),
            )
        }
        PosetKind::Reduced => {
            let vecs: Vec<ReducedVector> = enumerate_reduced(alpha).collect();
            vector_relation(
                &vecs,
                |r| r.to_string(),
                |a, b| a.values().iter().zip(b.values()).all(|(x, y)| x <= y),
            )
        }
        PosetKind::Bracket => {
            let vecs: Vec<BracketVector> = enumerate_brackets(alpha).collect();
            vector_relation(
                &vecs,
                |b| b.to_string(),
                |a, b| a.values().iter().zip(b.values()).all(|(x, y)| x <= y),
            )
        }
    };
    let covers = transitive_reduction(&reach);
    if kind == PosetKind::WeakOrder {
        cross_check_weak_covers(alpha, &elements, &covers);
    }
    Ok(Poset {
        alpha: alpha.clone(),
        kind,
        elements,
        covers,
        reach,
    })
}

fn perm_relation(alpha: &Composition, avoiders_only: bool) -> (Vec<String>, Vec<Vec<bool>>) {
    let perms: Vec<AlphaPermutation> = if avoiders_only {
        enumerate_avoiders(alpha).collect()
    } else {
        enumerate_alpha_permutations(alpha).collect()
    };
    let inv: Vec<InversionSet> = perms.iter().map(|w| w.inversion_set()).collect();
    let keys = perms.iter().map(|w| w.to_string()).collect();
    let m = perms.len();
    let reach = (0..m)
        .map(|i| (0..m).map(|j| inv[i].is_subset(&inv[j])).collect())
        .collect();
    (keys, reach)
}

fn vector_relation<T>(
    items: &[T],
    key: impl Fn(&T) -> String,
    leq: impl Fn(&T, &T) -> bool,
) -> (Vec<String>, Vec<Vec<bool>>) {
    let keys = items.iter().map(key).collect();
    let m = items.len();
    let reach = (0..m)
        .map(|i| (0..m).map(|j| leq(&items[i], &items[j])).collect())
        .collect();
    (keys, reach)
}

/// Cover edges of a reflexive, transitively closed relation: pairs `i < j`
/// with nothing strictly between.
fn transitive_reduction(reach: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let m = reach.len();
    let mut covers = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j || !reach[i][j] {
                continue;
            }
            let between = (0..m).any(|k| k != i && k != j && reach[i][k] && reach[k][j]);
            if !between {
                // enumeration is lexicographic and the orders refine it
                debug_assert!(i < j);
                covers.push((i, j));
            }
        }
    }
    covers.sort_unstable();
    covers
}

fn cross_check_weak_covers(alpha: &Composition, elements: &[String], covers: &[(usize, usize)]) {
    let index: BTreeMap<&str, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_str(), i))
        .collect();
    let mut by_swap = Vec::new();
    for (i, key) in elements.iter().enumerate() {
        let w = AlphaPermutation::parse(alpha, key).unwrap();
        for v in w.covers() {
            by_swap.push((i, index[v.to_string().as_str()]));
        }
    }
    by_swap.sort_unstable();
    assert_eq!(
        by_swap, covers,
        "weak-order covers disagree with swap moves"
    );
}

impl Poset {
    /// Rebuilds a poset from raw parts, recomputing reachability as the
    /// reflexive-transitive closure of the cover edges. The edges must form a
    /// DAG but are otherwise taken as given.
    pub fn from_parts(
        alpha: Composition,
        kind: PosetKind,
        elements: Vec<String>,
        mut covers: Vec<(usize, usize)>,
    ) -> Result<Poset> {
        let m = elements.len();
        for &(lo, up) in &covers {
            if lo >= m || up >= m {
                return Err(Error::Parse(format!("cover ({lo},{up}) out of range")));
            }
            if lo == up {
                return Err(Error::Parse(format!("self-loop cover ({lo},{up})")));
            }
        }
        covers.sort_unstable();
        covers.dedup();
        let mut up_edges = vec![Vec::new(); m];
        for &(lo, up) in &covers {
            up_edges[lo].push(up);
        }
        let mut reach = vec![vec![false; m]; m];
        for (start, row) in reach.iter_mut().enumerate() {
            // depth-first closure
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if row[v] {
                    continue;
                }
                row[v] = true;
                stack.extend(&up_edges[v]);
            }
        }
        for (i, row) in reach.iter().enumerate() {
            for (j, &forward) in row.iter().enumerate() {
                if i != j && forward && reach[j][i] {
                    return Err(Error::Parse("cover edges contain a cycle".into()));
                }
            }
        }
        Ok(Poset {
            alpha,
            kind,
            elements,
            covers,
            reach,
        })
    }

    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &str {
        &self.elements[idx]
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == key)
    }

    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Order query: is element `x` below-or-equal element `y`?
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.reach[x][y]
    }

    /// Greatest lower bound of `x` and `y`.
    pub fn meet(&self, x: usize, y: usize) -> Result<usize> {
        self.bound(x, y, true)
    }

    /// Least upper bound of `x` and `y`.
    pub fn join(&self, x: usize, y: usize) -> Result<usize> {
        self.bound(x, y, false)
    }

    fn bound(&self, x: usize, y: usize, lower: bool) -> Result<usize> {
        let m = self.len();
        let below = |a: usize, b: usize| {
            if lower {
                self.reach[a][b]
            } else {
                self.reach[b][a]
            }
        };
        let candidates: Vec<usize> = (0..m).filter(|&k| below(k, x) && below(k, y)).collect();
        // the bound, if any, is the unique maximal candidate (candidate sets
        // are closed toward the far side of the order)
        let extremal: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&c| !candidates.iter().any(|&d| d != c && below(c, d)))
            .collect();
        if extremal.len() == 1 {
            Ok(extremal[0])
        } else {
            Err(Error::NotALattice {
                x: self.elements[x].clone(),
                y: self.elements[y].clone(),
                op: if lower { "meet" } else { "join" },
                candidates: extremal.iter().map(|&c| self.elements[c].clone()).collect(),
            })
        }
    }

    /// First pair without a unique meet or join, as a ready-made error.
    pub fn find_lattice_violation(&self) -> Option<Error> {
        for x in 0..self.len() {
            for y in x..self.len() {
                if let Err(e) = self.meet(x, y) {
                    return Some(e);
                }
                if let Err(e) = self.join(x, y) {
                    return Some(e);
                }
            }
        }
        None
    }

    /// Whether every pair has a unique meet and a unique join.
    pub fn is_lattice(&self) -> bool {
        self.find_lattice_violation().is_none()
    }

    /// Longest-chain height of every element above the minimal ones.
    pub fn heights(&self) -> Vec<usize> {
        let mut heights = vec![0; self.len()];
        // covers point from smaller to larger index
        for &(lo, up) in &self.covers {
            heights[up] = heights[up].max(heights[lo] + 1);
        }
        heights
    }

    /// The alpha-code attached to an element, derived per kind.
    pub fn element_code(&self, idx: usize) -> AlphaCode {
        let key = &self.elements[idx];
        match self.kind {
            PosetKind::WeakOrder | PosetKind::AlphaTamari => {
                encode(&AlphaPermutation::parse(&self.alpha, key).unwrap())
            }
            PosetKind::Code => AlphaCode::parse(&self.alpha, key).unwrap(),
            PosetKind::Reduced => to_code(&ReducedVector::parse(&self.alpha, key).unwrap()),
            PosetKind::Bracket => {
                to_code(&reduce(&BracketVector::parse(&self.alpha, key).unwrap()))
            }
        }
    }

    /// Deterministic text export.
    pub fn export(&self, format: ExportFormat, labeling: Labeling) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(labeling),
            ExportFormat::Json => self.to_json().to_string(),
        }
    }

    /// Graphviz digraph, edges pointing from lower to upper covers, elements
    /// of equal height sharing a rank.
    pub fn to_dot(&self, labeling: Labeling) -> String {
        use std::fmt::Write;

        let mut out = String::new();
        writeln!(out, "digraph {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=box];").unwrap();
        for (idx, key) in self.elements.iter().enumerate() {
            let label = match labeling {
                Labeling::Element => key.clone(),
                Labeling::Code => format!("({})", self.element_code(idx)),
                Labeling::Both => format!("{}\\n({})", key, self.element_code(idx)),
            };
            writeln!(out, "  n{idx} [label=\"{label}\"];").unwrap();
        }
        for &(lo, up) in &self.covers {
            writeln!(out, "  n{lo} -> n{up};").unwrap();
        }
        let heights = self.heights();
        let max_height = heights.iter().copied().max().unwrap_or(0);
        for h in 0..=max_height {
            let level: Vec<String> = (0..self.len())
                .filter(|&i| heights[i] == h)
                .map(|i| format!("n{i};"))
                .collect();
            if !level.is_empty() {
                writeln!(out, "  {{ rank=same; {} }}", level.join(" ")).unwrap();
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }

    /// JSON object `{alpha, kind, elements, covers}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "alpha": self.alpha.to_string(),
            "kind": self.kind.name(),
            "elements": self.elements,
            "covers": self.covers.iter().map(|&(lo, up)| vec![lo, up]).collect::<Vec<_>>(),
        })
    }

    /// Reads a poset back from its JSON export (the bare object or one
    /// wrapped in a `result` field).
    pub fn from_json(text: &str) -> Result<Poset> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let obj = value.get("result").unwrap_or(&value);
        let alpha: Composition = obj
            .get("alpha")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::Parse("missing alpha".into()))?
            .parse()?;
        let kind = PosetKind::from_name(
            obj.get("kind")
                .and_then(|v| v.as_str())
                .ok_or_else(|| Error::Parse("missing kind".into()))?,
        )?;
        let elements: Vec<String> = obj
            .get("elements")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("missing elements".into()))?
            .iter()
            .map(|e| {
                e.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::Parse("element is not a string".into()))
            })
            .collect::<Result<_>>()?;
        let covers: Vec<(usize, usize)> = obj
            .get("covers")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("missing covers".into()))?
            .iter()
            .map(|pair| {
                let arr = pair.as_array().filter(|a| a.len() == 2);
                let lo = arr.and_then(|a| a[0].as_u64());
                let up = arr.and_then(|a| a[1].as_u64());
                match (lo, up) {
                    (Some(lo), Some(up)) => Ok((lo as usize, up as usize)),
                    _ => Err(Error::Parse("cover is not an index pair".into())),
                }
            })
            .collect::<Result<_>>()?;
        Poset::from_parts(alpha, kind, elements, covers)
    }
}

/// The greatest (alpha,231)-avoiding permutation weakly below `w`, computed
/// by decoding `w`'s code. Idempotent; fixes avoiders.
pub fn projection(w: &AlphaPermutation) -> AlphaPermutation {
    decode(&encode(w))
}

/// One congruence class of the projection: its avoiding representative and
/// all members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberBlock {
    pub avoider: AlphaPermutation,
    pub members: Vec<AlphaPermutation>,
}

/// Partition of all alpha-permutations by their projection, blocks ordered by
/// their avoider's one-line notation, members in lexicographic order.
pub fn fibers(alpha: &Composition) -> Result<Vec<FiberBlock>> {
    let cap = enumeration_cap();
    if alpha.n() > cap {
        return Err(Error::SizeCapExceeded { n: alpha.n(), cap });
    }
    let mut blocks: BTreeMap<Vec<usize>, Vec<AlphaPermutation>> = BTreeMap::new();
    for w in enumerate_alpha_permutations(alpha) {
        blocks
            .entry(projection(&w).word().to_vec())
            .or_default()
            .push(w);
    }
    Ok(blocks
        .into_iter()
        .map(|(word, members)| FiberBlock {
            avoider: AlphaPermutation::new(alpha.clone(), word).unwrap(),
            members,
        })
        .collect())
}
