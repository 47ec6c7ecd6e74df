//! Exhaustive cross-module invariants at desk scale, with independent
//! oracles written directly against the definitions.

use std::collections::BTreeSet;

use alpha_tamari::code::{check_code, componentwise_leq, decode, encode, enumerate_codes};
use alpha_tamari::compositions_of;
use alpha_tamari::nu::{
    enumerate_brackets, enumerate_reduced, extend, fixed_positions, is_bracket_vector,
    min_bracket_vector, reduce, BracketVector,
};
use alpha_tamari::perm::{
    enumerate_alpha_permutations, enumerate_avoiders, weak_leq, AlphaPermutation, InversionSet,
};
use alpha_tamari::poset::{build_poset, projection, PosetKind};
use alpha_tamari::Composition;

fn to_i64(values: &[usize]) -> Vec<i64> {
    values.iter().map(|&v| v as i64).collect()
}

/// Greatest avoider weakly below `w` by exhaustive search; the test-side
/// oracle for the projection.
fn greatest_avoider_below(alpha: &Composition, w: &AlphaPermutation) -> AlphaPermutation {
    let w_inv = w.inversion_set();
    let below: Vec<AlphaPermutation> = enumerate_avoiders(alpha)
        .filter(|a| a.inversion_set().is_subset(&w_inv))
        .collect();
    let greatest: Vec<&AlphaPermutation> = below
        .iter()
        .filter(|a| {
            let inv = a.inversion_set();
            below
                .iter()
                .all(|other| other.inversion_set().is_subset(&inv))
        })
        .collect();
    assert_eq!(greatest.len(), 1, "unique greatest avoider below {w}");
    greatest[0].clone()
}

#[test]
fn code_comparison_is_necessary_for_weak_order() {
    for n in 1..=5 {
        for alpha in compositions_of(n) {
            let perms: Vec<AlphaPermutation> = enumerate_alpha_permutations(&alpha).collect();
            for u in &perms {
                for v in &perms {
                    if weak_leq(u, v).unwrap() {
                        assert!(
                            componentwise_leq(&encode(u), &encode(v)).unwrap(),
                            "{u} <= {v} but codes incomparable under {alpha}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn code_comparison_is_sufficient_between_avoiders() {
    for n in 1..=5 {
        for alpha in compositions_of(n) {
            let avoiders: Vec<AlphaPermutation> = enumerate_avoiders(&alpha).collect();
            for u in &avoiders {
                for v in &avoiders {
                    if componentwise_leq(&encode(u), &encode(v)).unwrap() {
                        assert!(
                            weak_leq(u, v).unwrap(),
                            "codes of {u}, {v} comparable but not the permutations"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn round_trips_at_n6() {
    for alpha in compositions_of(6) {
        for c in enumerate_codes(&alpha) {
            assert_eq!(encode(&decode(&c)), c);
        }
        for w in enumerate_avoiders(&alpha) {
            assert_eq!(decode(&encode(&w)), w);
        }
    }
}

#[test]
fn codes_and_avoiders_are_equinumerous_up_to_n7() {
    for n in 1..=7 {
        for alpha in compositions_of(n) {
            assert_eq!(
                enumerate_codes(&alpha).count(),
                enumerate_avoiders(&alpha).count(),
                "bijection cardinality for {alpha}"
            );
        }
    }
}

#[test]
fn all_incarnations_are_equinumerous_up_to_n6() {
    for n in 1..=6 {
        for alpha in compositions_of(n) {
            let codes = enumerate_codes(&alpha).count();
            assert_eq!(codes, enumerate_avoiders(&alpha).count());
            assert_eq!(codes, enumerate_reduced(&alpha).count());
            assert_eq!(codes, enumerate_brackets(&alpha).count());
        }
    }
}

#[test]
fn valid_codes_end_in_zero() {
    for n in 1..=5 {
        for alpha in compositions_of(n) {
            for c in enumerate_codes(&alpha) {
                assert_eq!(c.entry(n), 0);
                assert!(c.leftmost_zero() <= n);
            }
        }
    }
}

#[test]
fn extension_agrees_with_minimum_exactly_on_forced_positions() {
    // fixed positions always agree; free positions agree exactly where the
    // reduced entry sits at its lower bound
    for n in 1..=5 {
        for alpha in compositions_of(n) {
            let minimum = min_bracket_vector(&alpha);
            let fixed: BTreeSet<usize> = fixed_positions(&alpha).into_iter().collect();
            for r in enumerate_reduced(&alpha) {
                let b = extend(&r);
                let mut free_idx = 0;
                for pos in 1..=2 * n + 1 {
                    if fixed.contains(&pos) {
                        assert_eq!(b.value_at(pos), minimum.value_at(pos));
                    } else {
                        free_idx += 1;
                        let at_floor = r.value_at(free_idx)
                            == alpha.prefix_sum(alpha.region_of(free_idx).unwrap());
                        assert_eq!(
                            b.value_at(pos) == minimum.value_at(pos),
                            at_floor,
                            "position {pos} of extend({r})"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn minimum_bracket_vector_is_the_componentwise_minimum() {
    for n in 1..=5 {
        for alpha in compositions_of(n) {
            let minimum = min_bracket_vector(&alpha);
            let brackets: Vec<BracketVector> = enumerate_brackets(&alpha).collect();
            assert!(brackets.contains(&minimum));
            for pos in 1..=2 * n + 1 {
                let least = brackets.iter().map(|b| b.value_at(pos)).min().unwrap();
                assert_eq!(minimum.value_at(pos), least, "position {pos} under {alpha}");
            }
        }
    }
}

#[test]
fn bracket_enumeration_matches_direct_search() {
    // independent route: fix the forced positions, sweep the free ones over
    // the B2 boxes, and filter with the condition checker
    for n in 1..=4 {
        for alpha in compositions_of(n) {
            let minimum = min_bracket_vector(&alpha);
            let fixed: Vec<usize> = fixed_positions(&alpha);
            let len = 2 * n + 1;
            let mut base = vec![0i64; len];
            for (k, &f_k) in fixed.iter().enumerate() {
                base[f_k - 1] = k as i64;
            }
            let free: Vec<usize> = (1..=len).filter(|p| !fixed.contains(p)).collect();
            let mut found = Vec::new();
            let mut cursor = vec![0usize; free.len()];
            'sweep: loop {
                let mut candidate = base.clone();
                for (slot, &pos) in free.iter().enumerate() {
                    candidate[pos - 1] = (minimum.value_at(pos) + cursor[slot]) as i64;
                }
                if is_bracket_vector(&alpha, &candidate).is_ok() {
                    found.push(candidate.clone());
                }
                let mut slot = free.len();
                loop {
                    if slot == 0 {
                        break 'sweep;
                    }
                    let pos = free[slot - 1];
                    if minimum.value_at(pos) + cursor[slot - 1] < n {
                        cursor[slot - 1] += 1;
                        break;
                    }
                    cursor[slot - 1] = 0;
                    slot -= 1;
                }
            }
            found.sort();
            let by_map: Vec<Vec<i64>> = enumerate_brackets(&alpha)
                .map(|b| to_i64(b.values()))
                .collect();
            assert_eq!(by_map, found, "bracket vectors of {alpha}");
        }
    }
}

#[test]
fn tamari_and_code_posets_are_isomorphic_with_matching_covers() {
    for n in 1..=5 {
        for alpha in compositions_of(n) {
            let tamari = build_poset(&alpha, PosetKind::AlphaTamari).unwrap();
            let codes = build_poset(&alpha, PosetKind::Code).unwrap();
            assert_eq!(tamari.len(), codes.len());
            // encode maps tamari elements onto code elements
            let mapped: Vec<usize> = tamari
                .elements()
                .iter()
                .map(|key| {
                    let w = AlphaPermutation::parse(&alpha, key).unwrap();
                    codes
                        .index_of(&encode(&w).to_string())
                        .expect("encoded element present in code poset")
                })
                .collect();
            let distinct: BTreeSet<usize> = mapped.iter().copied().collect();
            assert_eq!(distinct.len(), tamari.len(), "bijectivity under {alpha}");
            // cover edges correspond one-to-one
            let tamari_covers: BTreeSet<(usize, usize)> = tamari
                .cover_edges()
                .iter()
                .map(|&(lo, up)| (mapped[lo], mapped[up]))
                .collect();
            let code_covers: BTreeSet<(usize, usize)> =
                codes.cover_edges().iter().copied().collect();
            assert_eq!(tamari_covers, code_covers, "cover edges under {alpha}");
        }
    }
}

#[test]
fn projection_is_monotone() {
    for n in 1..=5 {
        for alpha in compositions_of(n) {
            let perms: Vec<AlphaPermutation> = enumerate_alpha_permutations(&alpha).collect();
            let projections: Vec<AlphaPermutation> = perms.iter().map(projection).collect();
            for (i, u) in perms.iter().enumerate() {
                for (j, v) in perms.iter().enumerate() {
                    if weak_leq(u, v).unwrap() {
                        assert!(
                            weak_leq(&projections[i], &projections[j]).unwrap(),
                            "projection not monotone on {u} <= {v}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn cover_congruence_criterion() {
    // along a cover, the projections agree exactly when some entry in a
    // region strictly between the swapped positions exceeds the new top entry
    for n in 1..=5 {
        for alpha in compositions_of(n) {
            for u in enumerate_alpha_permutations(&alpha) {
                let proj_u = greatest_avoider_below(&alpha, &u);
                for v in u.covers() {
                    let added: Vec<(usize, usize)> = v
                        .inversion_set()
                        .pairs()
                        .difference(u.inversion_set().pairs())
                        .copied()
                        .collect();
                    let [(i, k)] = added.as_slice() else {
                        panic!("cover adds exactly one inversion");
                    };
                    assert_eq!(v.value_at(*i), v.value_at(*k) + 1);
                    let (ri, rk) = (alpha.region_of(*i).unwrap(), alpha.region_of(*k).unwrap());
                    let blocked = (*i + 1..*k).any(|j| {
                        let rj = alpha.region_of(j).unwrap();
                        ri < rj && rj < rk && v.value_at(*i) < v.value_at(j)
                    });
                    let proj_v = greatest_avoider_below(&alpha, &v);
                    assert_eq!(
                        proj_u == proj_v,
                        blocked,
                        "congruence criterion on cover {u} -> {v}"
                    );
                }
            }
        }
    }
}

#[test]
fn covers_in_posets_respect_inversion_counts() {
    for alpha in compositions_of(5) {
        let poset = build_poset(&alpha, PosetKind::WeakOrder).unwrap();
        let inv: Vec<InversionSet> = poset
            .elements()
            .iter()
            .map(|key| {
                AlphaPermutation::parse(&alpha, key)
                    .unwrap()
                    .inversion_set()
            })
            .collect();
        for &(lo, up) in poset.cover_edges() {
            assert_eq!(inv[up].len(), inv[lo].len() + 1);
        }
    }
}

#[test]
fn reduce_then_extend_is_identity_on_brackets_at_n6() {
    for alpha in compositions_of(6) {
        for b in enumerate_brackets(&alpha) {
            assert_eq!(extend(&reduce(&b)), b);
        }
    }
}

#[test]
fn encode_stays_in_the_code_set_at_n6() {
    for alpha in compositions_of(6) {
        for w in enumerate_alpha_permutations(&alpha) {
            let c = encode(&w);
            assert_eq!(check_code(&alpha, &to_i64(c.entries())), Ok(()));
        }
    }
}

#[test]
fn permutation_posets_are_lattices_at_n5() {
    for alpha in compositions_of(5) {
        for kind in [PosetKind::WeakOrder, PosetKind::AlphaTamari] {
            let p = build_poset(&alpha, kind).unwrap();
            assert!(p.is_lattice(), "{} poset of {alpha}", kind.name());
        }
    }
}

#[test]
fn weak_order_on_121_matches_the_known_diagram() {
    // the full 12-element weak order on the (1,2,1)-permutations: every
    // element with its code label and all fifteen cover edges
    let alpha: Composition = "1,2,1".parse().unwrap();
    let poset = build_poset(&alpha, PosetKind::WeakOrder).unwrap();
    assert_eq!(poset.len(), 12);

    let labels: &[(&str, &str)] = &[
        ("1 2 3 4", "0,0,0,0"),
        ("2 1 3 4", "1,0,0,0"),
        ("1 2 4 3", "0,0,1,0"),
        ("3 1 2 4", "2,0,0,0"),
        ("2 1 4 3", "1,0,1,0"),
        ("1 3 4 2", "0,1,1,0"),
        ("4 1 2 3", "3,0,0,0"),
        ("3 1 4 2", "1,0,1,0"),
        ("2 3 4 1", "0,1,1,0"),
        ("4 1 3 2", "3,0,1,0"),
        ("3 2 4 1", "1,1,1,0"),
        ("4 2 3 1", "3,1,1,0"),
    ];
    assert_eq!(labels.len(), 12);
    for (word, code) in labels {
        let idx = poset.index_of(word).expect(word);
        assert_eq!(
            poset.element_code(idx).to_string(),
            *code,
            "label of {word}"
        );
    }

    let expected_edges: &[(&str, &str)] = &[
        ("1 2 3 4", "2 1 3 4"),
        ("1 2 3 4", "1 2 4 3"),
        ("2 1 3 4", "3 1 2 4"),
        ("2 1 3 4", "2 1 4 3"),
        ("1 2 4 3", "2 1 4 3"),
        ("1 2 4 3", "1 3 4 2"),
        ("3 1 2 4", "4 1 2 3"),
        ("2 1 4 3", "3 1 4 2"),
        ("1 3 4 2", "2 3 4 1"),
        ("4 1 2 3", "4 1 3 2"),
        ("3 1 4 2", "4 1 3 2"),
        ("3 1 4 2", "3 2 4 1"),
        ("2 3 4 1", "3 2 4 1"),
        ("4 1 3 2", "4 2 3 1"),
        ("3 2 4 1", "4 2 3 1"),
    ];
    let got: BTreeSet<(String, String)> = poset
        .cover_edges()
        .iter()
        .map(|&(lo, up)| (poset.element(lo).to_string(), poset.element(up).to_string()))
        .collect();
    let expected: BTreeSet<(String, String)> = expected_edges
        .iter()
        .map(|&(lo, up)| (lo.to_string(), up.to_string()))
        .collect();
    assert_eq!(got, expected);
}
