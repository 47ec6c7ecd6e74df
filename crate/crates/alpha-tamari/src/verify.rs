//! Brute-force verification of the structural results the library rests on.
//!
//! Every check here recomputes its ground truth from first principles
//! (all-pairs order predicates, exhaustive searches for greatest elements,
//! order-theoretic cover detection) and never trusts the optimized path it
//! is validating. Failures carry a serialized witness.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde_json::json;

use crate::code::{check_code, decode, encode, enumerate_codes, to_i64, AlphaCode};
use crate::composition::{compositions_of, Composition};
use crate::nu::{
    enumerate_brackets, enumerate_reduced, extend, from_code, is_bracket_vector, is_reduced_vector,
    reduce, to_code,
};
use crate::perm::{
    enumerate_alpha_permutations, enumerate_avoiders, AlphaPermutation, InversionSet,
};

/// Outcome of one verification check on one composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check_name: String,
    pub alpha: Composition,
    pub passed: bool,
    /// Present exactly when the check failed.
    pub counterexample: Option<String>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "check": self.check_name,
            "alpha": self.alpha.to_string(),
            "passed": self.passed,
            "counterexample": self.counterexample,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

fn run_check(
    name: &str,
    alpha: &Composition,
    body: impl FnOnce() -> Option<String>,
) -> CheckReport {
    let start = Instant::now();
    let counterexample = body();
    CheckReport {
        check_name: name.to_string(),
        alpha: alpha.clone(),
        passed: counterexample.is_none(),
        counterexample,
        elapsed: start.elapsed(),
    }
}

/// Greatest avoider weakly below `w`, by exhaustive search. Returns `None`
/// if the candidate set has no unique greatest element.
fn greatest_avoider_below(
    avoiders: &[(AlphaPermutation, InversionSet)],
    w_inv: &InversionSet,
) -> Option<AlphaPermutation> {
    let below: Vec<&(AlphaPermutation, InversionSet)> = avoiders
        .iter()
        .filter(|(_, inv)| inv.is_subset(w_inv))
        .collect();
    let greatest: Vec<_> = below
        .iter()
        .filter(|(_, inv)| below.iter().all(|(_, other)| other.is_subset(inv)))
        .collect();
    match greatest.as_slice() {
        [(w, _)] => Some(w.clone()),
        _ => None,
    }
}

/// Cover pairs of the weak order computed from the order definition alone:
/// strict containments of inversion sets with nothing in between.
fn order_theoretic_covers(inv: &[InversionSet]) -> Vec<(usize, usize)> {
    let m = inv.len();
    let mut covers = Vec::new();
    for u in 0..m {
        for v in 0..m {
            if u == v || !inv[u].is_subset(&inv[v]) {
                continue;
            }
            let between = (0..m).any(|x| {
                x != u && x != v && inv[u].is_subset(&inv[x]) && inv[x].is_subset(&inv[v])
            });
            if !between {
                covers.push((u, v));
            }
        }
    }
    covers
}

/// The encoding is a bijection from avoiders onto the code set and both
/// directions preserve order: checked element by element and pair by pair.
pub fn check_theorem_code_iso(alpha: &Composition) -> CheckReport {
    run_check("theorem_code_iso", alpha, || {
        let avoiders: Vec<AlphaPermutation> = enumerate_avoiders(alpha).collect();
        let codes: Vec<AlphaCode> = enumerate_codes(alpha).collect();
        if avoiders.len() != codes.len() {
            return Some(format!(
                "{} avoiders but {} codes",
                avoiders.len(),
                codes.len()
            ));
        }
        let encoded: Vec<AlphaCode> = avoiders.iter().map(encode).collect();
        for (w, c) in avoiders.iter().zip(&encoded) {
            if check_code(alpha, &to_i64(c.entries())).is_err() {
                return Some(format!("encode({w}) = {c} fails the code conditions"));
            }
            if !codes.contains(c) {
                return Some(format!(
                    "encode({w}) = {c} missing from the enumerated code set"
                ));
            }
        }
        for (i, u) in avoiders.iter().enumerate() {
            for (j, v) in avoiders.iter().enumerate() {
                if i != j && encoded[i] == encoded[j] {
                    return Some(format!("encode not injective: {u} and {v}"));
                }
            }
        }
        // decode against its oracle: inverting encode by exhaustive search
        for c in &codes {
            let preimages: Vec<&AlphaPermutation> = avoiders
                .iter()
                .zip(&encoded)
                .filter(|(_, e)| *e == c)
                .map(|(w, _)| w)
                .collect();
            match preimages.as_slice() {
                [w] => {
                    let decoded = decode(c);
                    if decoded != **w {
                        return Some(format!(
                            "decode({c}) = {decoded} but the encode-preimage is {w}"
                        ));
                    }
                }
                others => {
                    return Some(format!(
                        "code {c} has {} encode-preimages among avoiders",
                        others.len()
                    ))
                }
            }
        }
        let inv: Vec<InversionSet> = avoiders.iter().map(|w| w.inversion_set()).collect();
        for i in 0..avoiders.len() {
            for j in 0..avoiders.len() {
                let weak = inv[i].is_subset(&inv[j]);
                let code = encoded[i]
                    .entries()
                    .iter()
                    .zip(encoded[j].entries())
                    .all(|(a, b)| a <= b);
                if weak != code {
                    return Some(format!(
                        "order mismatch: u={}, v={}, weak_leq={}, code_leq={}",
                        avoiders[i], avoiders[j], weak, code
                    ));
                }
            }
        }
        None
    })
}

/// The code/reduced/bracket conversions are mutually inverse bijections and
/// componentwise-monotone in both directions on the enumerated sets.
pub fn check_theorem_nu_iso(alpha: &Composition) -> CheckReport {
    run_check("theorem_nu_iso", alpha, || {
        let codes: Vec<AlphaCode> = enumerate_codes(alpha).collect();
        let reduced: Vec<_> = enumerate_reduced(alpha).collect();
        let brackets: Vec<_> = enumerate_brackets(alpha).collect();
        if codes.len() != reduced.len() || reduced.len() != brackets.len() {
            return Some(format!(
                "cardinalities differ: {} codes, {} reduced, {} brackets",
                codes.len(),
                reduced.len(),
                brackets.len()
            ));
        }
        for c in &codes {
            let r = from_code(c);
            if is_reduced_vector(alpha, &to_i64(r.values())).is_err() {
                return Some(format!("from_code({c}) = {r} violates R1-R2"));
            }
            if !reduced.contains(&r) {
                return Some(format!(
                    "from_code({c}) missing from enumerated reduced set"
                ));
            }
            if to_code(&r) != *c {
                return Some(format!("to_code(from_code({c})) differs"));
            }
        }
        for r in &reduced {
            let c = to_code(r);
            if check_code(alpha, &to_i64(c.entries())).is_err() {
                return Some(format!("to_code({r}) = {c} violates C1-C3"));
            }
            if from_code(&c) != *r {
                return Some(format!("from_code(to_code({r})) differs"));
            }
            let b = extend(r);
            if is_bracket_vector(alpha, &to_i64(b.values())).is_err() {
                return Some(format!("extend({r}) = {b} violates B1-B3"));
            }
            if !brackets.contains(&b) {
                return Some(format!("extend({r}) missing from enumerated bracket set"));
            }
            if reduce(&b) != *r {
                return Some(format!("reduce(extend({r})) differs"));
            }
        }
        for b in &brackets {
            if extend(&reduce(b)) != *b {
                return Some(format!("extend(reduce({b})) differs"));
            }
        }
        // componentwise monotonicity, both directions of both maps
        let leq = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(x, y)| x <= y);
        for c in &codes {
            for d in &codes {
                let on_codes = leq(c.entries(), d.entries());
                let on_reduced = leq(from_code(c).values(), from_code(d).values());
                if on_codes != on_reduced {
                    return Some(format!("from_code not an order isomorphism on ({c}, {d})"));
                }
                let on_brackets = leq(
                    extend(&from_code(c)).values(),
                    extend(&from_code(d)).values(),
                );
                if on_codes != on_brackets {
                    return Some(format!(
                        "extend . from_code not an order isomorphism on ({c}, {d})"
                    ));
                }
            }
        }
        None
    })
}

/// Every alpha-permutation's code satisfies C1-C3.
pub fn check_alpha_code_is_code(alpha: &Composition) -> CheckReport {
    run_check("alpha_code_is_code", alpha, || {
        for w in enumerate_alpha_permutations(alpha) {
            let c = encode(&w);
            if let Err(violation) = check_code(alpha, &to_i64(c.entries())) {
                return Some(format!("encode({w}) = {c}: {violation}"));
            }
        }
        None
    })
}

/// Along every cover of the weak order the code grows by at most one in a
/// single coordinate, staying equal exactly when the projections agree.
pub fn check_code_steps(alpha: &Composition) -> CheckReport {
    check_code_steps_with(alpha, &|w| encode(w).entries().to_vec())
}

/// Fault-injection seam for [`check_code_steps`]: the same check against an
/// arbitrary encoder, so tests can confirm a broken encoding is caught.
pub fn check_code_steps_with(
    alpha: &Composition,
    encoder: &dyn Fn(&AlphaPermutation) -> Vec<usize>,
) -> CheckReport {
    run_check("code_steps", alpha, || {
        let perms: Vec<AlphaPermutation> = enumerate_alpha_permutations(alpha).collect();
        let inv: Vec<InversionSet> = perms.iter().map(|w| w.inversion_set()).collect();
        let avoiders: Vec<(AlphaPermutation, InversionSet)> = perms
            .iter()
            .filter(|w| w.is_avoider())
            .map(|w| (w.clone(), w.inversion_set()))
            .collect();
        let codes: Vec<Vec<usize>> = perms.iter().map(encoder).collect();
        for (u, v) in order_theoretic_covers(&inv) {
            let (a, b) = (&codes[u], &codes[v]);
            if !a.iter().zip(b).all(|(x, y)| x <= y) {
                return Some(format!(
                    "cover {} -> {}: code {:?} not componentwise below {:?}",
                    perms[u], perms[v], a, b
                ));
            }
            // the value at the changed coordinate can grow by more than one
            // (e.g. 3 1 4 2 -> 4 1 3 2 moves c_1 from 1 to 3), only the
            // number of changed coordinates is bounded
            let diffs = (0..a.len()).filter(|&i| a[i] != b[i]).count();
            if diffs > 1 {
                return Some(format!(
                    "cover {} -> {}: codes differ in {} coordinates",
                    perms[u], perms[v], diffs
                ));
            }
            let pu = greatest_avoider_below(&avoiders, &inv[u]);
            let pv = greatest_avoider_below(&avoiders, &inv[v]);
            let same_projection = match (pu, pv) {
                (Some(pu), Some(pv)) => pu == pv,
                _ => {
                    return Some(format!(
                        "no unique greatest avoider below {} or {}",
                        perms[u], perms[v]
                    ))
                }
            };
            if (a == b) != same_projection {
                return Some(format!(
                    "cover {} -> {}: codes equal = {}, projections equal = {}",
                    perms[u],
                    perms[v],
                    a == b,
                    same_projection
                ));
            }
        }
        None
    })
}

/// For every avoider the left-most zero of the code marks the position of
/// the value 1.
pub fn check_code_left_zero(alpha: &Composition) -> CheckReport {
    run_check("code_left_zero", alpha, || {
        for w in enumerate_avoiders(alpha) {
            let c = encode(&w);
            if c.leftmost_zero() != w.position_of(1) {
                return Some(format!(
                    "avoider {w}: left-most zero of {c} at {}, value 1 at {}",
                    c.leftmost_zero(),
                    w.position_of(1)
                ));
            }
        }
        None
    })
}

/// Codes and projections induce the same partition, and every class is an
/// interval of the weak order.
pub fn check_code_congruence(alpha: &Composition) -> CheckReport {
    run_check("code_congruence", alpha, || {
        let perms: Vec<AlphaPermutation> = enumerate_alpha_permutations(alpha).collect();
        let inv: Vec<InversionSet> = perms.iter().map(|w| w.inversion_set()).collect();
        let avoiders: Vec<(AlphaPermutation, InversionSet)> = perms
            .iter()
            .filter(|w| w.is_avoider())
            .map(|w| (w.clone(), w.inversion_set()))
            .collect();
        let codes: Vec<AlphaCode> = perms.iter().map(encode).collect();
        let mut projections = Vec::with_capacity(perms.len());
        for (idx, w) in perms.iter().enumerate() {
            match greatest_avoider_below(&avoiders, &inv[idx]) {
                Some(p) => projections.push(p),
                None => return Some(format!("no unique greatest avoider below {w}")),
            }
        }
        for i in 0..perms.len() {
            for j in i + 1..perms.len() {
                let same_code = codes[i] == codes[j];
                let same_projection = projections[i] == projections[j];
                if same_code != same_projection {
                    return Some(format!(
                        "u={}, v={}: codes equal = {}, projections equal = {}",
                        perms[i], perms[j], same_code, same_projection
                    ));
                }
            }
        }
        // each fiber is an interval [min, max] of the weak order
        let mut blocks: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (idx, p) in projections.iter().enumerate() {
            blocks.entry(p.word().to_vec()).or_default().push(idx);
        }
        for (avoider_word, members) in &blocks {
            let minima: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&m| members.iter().all(|&x| inv[m].is_subset(&inv[x])))
                .collect();
            if minima != [members[0]] || perms[members[0]].word() != avoider_word {
                return Some(format!(
                    "fiber of {} does not have its avoider as minimum",
                    perms[members[0]]
                ));
            }
            let maxima: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&m| members.iter().all(|&x| inv[x].is_subset(&inv[m])))
                .collect();
            let (lo, hi) = match (minima.as_slice(), maxima.as_slice()) {
                ([lo], [hi]) => (*lo, *hi),
                _ => {
                    return Some(format!(
                        "fiber of {} lacks a unique min or max",
                        perms[members[0]]
                    ))
                }
            };
            for x in 0..perms.len() {
                let inside = inv[lo].is_subset(&inv[x]) && inv[x].is_subset(&inv[hi]);
                if inside != members.contains(&x) {
                    return Some(format!(
                        "fiber of {} is not the interval [{}, {}]: {} is {}",
                        perms[members[0]],
                        perms[lo],
                        perms[hi],
                        perms[x],
                        if inside {
                            "inside but not a member"
                        } else {
                            "a member but outside"
                        }
                    ));
                }
            }
        }
        None
    })
}

/// Reduced vectors weakly decrease inside every region.
pub fn check_reduced_decrease(alpha: &Composition) -> CheckReport {
    run_check("reduced_decrease", alpha, || {
        for r in enumerate_reduced(alpha) {
            for a in 1..=alpha.num_regions() {
                let positions: Vec<usize> = alpha.region_positions(a).collect();
                for pair in positions.windows(2) {
                    if r.value_at(pair[0]) < r.value_at(pair[1]) {
                        return Some(format!(
                            "reduced vector {r}: entries rise at positions {} and {}",
                            pair[0], pair[1]
                        ));
                    }
                }
            }
        }
        None
    })
}

/// The fast projection (decode of encode) agrees with the exhaustive
/// greatest-avoider-below search.
pub fn check_projection_oracle(alpha: &Composition) -> CheckReport {
    run_check("projection_oracle", alpha, || {
        let avoiders: Vec<(AlphaPermutation, InversionSet)> = enumerate_avoiders(alpha)
            .map(|w| {
                let inv = w.inversion_set();
                (w, inv)
            })
            .collect();
        for w in enumerate_alpha_permutations(alpha) {
            let by_search = match greatest_avoider_below(&avoiders, &w.inversion_set()) {
                Some(p) => p,
                None => return Some(format!("no unique greatest avoider below {w}")),
            };
            let by_code = decode(&encode(&w));
            if by_search != by_code {
                return Some(format!(
                    "projection of {w}: search says {by_search}, code path says {by_code}"
                ));
            }
        }
        None
    })
}

/// The five per-composition lemma checks, in a fixed order.
pub fn check_lemma_suite(alpha: &Composition) -> Vec<CheckReport> {
    vec![
        check_alpha_code_is_code(alpha),
        check_code_steps(alpha),
        check_code_left_zero(alpha),
        check_code_congruence(alpha),
        check_reduced_decrease(alpha),
    ]
}

/// For the all-ones composition the avoider counts are the Catalan numbers.
pub fn catalan_crosscheck(max_n: usize) -> CheckReport {
    let alpha = Composition::new(vec![1; max_n.max(1)]).unwrap();
    run_check("catalan_crosscheck", &alpha, || {
        // independent reference via the convolution recurrence
        let mut catalan = vec![1u64];
        for n in 1..=max_n {
            let next = (0..n).map(|i| catalan[i] * catalan[n - 1 - i]).sum();
            catalan.push(next);
        }
        for (n, &expected) in catalan.iter().enumerate().skip(1) {
            let ones = Composition::new(vec![1; n]).unwrap();
            let count = enumerate_avoiders(&ones).count() as u64;
            if count != expected {
                return Some(format!(
                    "n={n}: {count} avoiders, expected Catalan number {expected}"
                ));
            }
        }
        None
    })
}

/// Runs every check on every composition of every `n <= max_n`, in a fixed
/// deterministic order, and appends the Catalan cross-check.
pub fn sweep(max_n: usize) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    for n in 1..=max_n {
        for alpha in compositions_of(n) {
            reports.push(check_theorem_code_iso(&alpha));
            reports.push(check_theorem_nu_iso(&alpha));
            reports.extend(check_lemma_suite(&alpha));
            reports.push(check_projection_oracle(&alpha));
        }
    }
    reports.push(catalan_crosscheck(max_n));
    reports
}
