//! Independent oracles for the representation-theory layer.
//!
//! Every expected value here is computed by a second, structurally
//! different method: explicit weight strings for rank one, Freudenthal
//! weight sums against the Weyl product formula, symmetric/alternating
//! square decompositions for reality types, and direct exterior-power
//! combinatorics for the 495-dimensional check.

use maxsub_core::rootdata::{
    conjugate_weight, decompose_weight_multiset, diagram_automorphisms, dimension,
    enumerate_selfdual_irreps, reality_of_tensor, reality_type, weight_multiplicity,
    weight_system, HighestWeight, Reality, Series, SimpleAlgebraId,
};
use num_bigint::BigUint;
use std::collections::{BTreeMap, BTreeSet};

fn id(series: Series, rank: usize) -> SimpleAlgebraId {
    SimpleAlgebraId::new(series, rank).unwrap()
}

fn hw(labels: &[i64]) -> HighestWeight {
    HighestWeight {
        labels: labels.to_vec(),
    }
}

fn rank_le3_ids() -> Vec<SimpleAlgebraId> {
    vec![
        id(Series::A, 1),
        id(Series::A, 2),
        id(Series::A, 3),
        id(Series::B, 2),
        id(Series::B, 3),
        id(Series::C, 3),
        id(Series::G, 2),
    ]
}

/// All dominant weights of `a` with dimension at most `max_dim`,
/// including zero.
fn dominant_weights_up_to(a: SimpleAlgebraId, max_dim: u64) -> Vec<Vec<i64>> {
    let r = a.rank();
    let bound = BigUint::from(max_dim);
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = vec![vec![0i64; r]];
    seen.insert(queue[0].clone());
    while let Some(w) = queue.pop() {
        for i in 0..r {
            let mut next = w.clone();
            next[i] += 1;
            if seen.contains(&next) {
                continue;
            }
            if dimension(a, &hw(&next)).unwrap() <= bound {
                seen.insert(next.clone());
                queue.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

#[test]
fn rank_one_weight_strings_by_hand() {
    let a1 = id(Series::A, 1);
    for m in 0i64..=10 {
        // The string m, m-2, ..., -m with every multiplicity 1.
        assert_eq!(
            dimension(a1, &hw(&[m])).unwrap(),
            BigUint::from((m + 1) as u64)
        );
        for k in 0..=m {
            assert_eq!(weight_multiplicity(a1, &hw(&[m]), &[m - 2 * k]).unwrap(), 1);
        }
        assert_eq!(weight_multiplicity(a1, &hw(&[m]), &[m + 2]).unwrap(), 0);
        assert_eq!(weight_multiplicity(a1, &hw(&[m]), &[m - 1]).unwrap(), 0);
        let ws = weight_system(a1, &hw(&[m])).unwrap();
        assert_eq!(ws.len() as i64, m + 1);
    }
}

#[test]
fn defining_representation_dimensions() {
    for n in 2usize..=12 {
        let a = id(Series::A, n - 1);
        let mut labels = vec![0i64; n - 1];
        labels[0] = 1;
        assert_eq!(dimension(a, &hw(&labels)).unwrap(), BigUint::from(n as u64));
    }
}

#[test]
fn weight_sums_match_product_formula_up_to_rank_three() {
    for a in rank_le3_ids() {
        for labels in dominant_weights_up_to(a, 200) {
            let dim = dimension(a, &hw(&labels)).unwrap();
            let ws = weight_system(a, &hw(&labels)).unwrap();
            let total: u64 = ws.values().sum();
            assert_eq!(
                BigUint::from(total),
                dim,
                "weight sum mismatch for {:?} {:?}",
                a,
                labels
            );
        }
    }
}

#[test]
fn adjoint_zero_weight_multiplicities() {
    let a1 = id(Series::A, 1);
    assert_eq!(weight_multiplicity(a1, &hw(&[2]), &[0]).unwrap(), 1);
    let a2 = id(Series::A, 2);
    assert_eq!(weight_multiplicity(a2, &hw(&[1, 1]), &[0, 0]).unwrap(), 2);
    // Highest weight always occurs exactly once.
    let b3 = id(Series::B, 3);
    assert_eq!(
        weight_multiplicity(b3, &hw(&[1, 0, 1]), &[1, 0, 1]).unwrap(),
        1
    );
}

/// Multiset of pairwise sums for the symmetric (sym = true) or
/// alternating (sym = false) square of a weight system.
fn square_multiset(ws: &BTreeMap<Vec<i64>, u64>, sym: bool) -> BTreeMap<Vec<i64>, u64> {
    let entries: Vec<(&Vec<i64>, u64)> = ws.iter().map(|(k, &v)| (k, v)).collect();
    let mut out: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for (i, (wi, mi)) in entries.iter().enumerate() {
        // Diagonal: sym gets m(m+1)/2 copies of 2w, alt gets m(m-1)/2.
        let diag = if sym {
            mi * (mi + 1) / 2
        } else {
            mi * (mi - 1) / 2
        };
        if diag > 0 {
            let twice: Vec<i64> = wi.iter().map(|x| 2 * x).collect();
            *out.entry(twice).or_insert(0) += diag;
        }
        for (wj, mj) in entries.iter().skip(i + 1) {
            let sum: Vec<i64> = wi.iter().zip(wj.iter()).map(|(x, y)| x + y).collect();
            *out.entry(sum).or_insert(0) += mi * mj;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

fn trivial_multiplicity(a: SimpleAlgebraId, multiset: BTreeMap<Vec<i64>, u64>) -> u64 {
    let zero = vec![0i64; a.rank()];
    decompose_weight_multiset(a, multiset)
        .into_iter()
        .filter(|(w, _)| *w == zero)
        .map(|(_, m)| m)
        .sum()
}

#[test]
fn reality_matches_square_decomposition_oracle() {
    for a in rank_le3_ids() {
        for labels in dominant_weights_up_to(a, 50) {
            if labels.iter().all(|&x| x == 0) {
                continue;
            }
            let w = hw(&labels);
            if conjugate_weight(a, &w).unwrap().labels != labels {
                continue;
            }
            let ws = weight_system(a, &w).unwrap();
            let in_sym = trivial_multiplicity(a, square_multiset(&ws, true));
            let in_alt = trivial_multiplicity(a, square_multiset(&ws, false));
            // A self-dual irreducible carries exactly one invariant
            // bilinear form, either symmetric or alternating.
            assert_eq!(in_sym + in_alt, 1, "{:?} {:?}", a, labels);
            let expected = if in_sym == 1 {
                Reality::Real
            } else {
                Reality::Quaternionic
            };
            assert_eq!(
                reality_type(a, &w).unwrap(),
                expected,
                "reality mismatch for {:?} {:?}",
                a,
                labels
            );
        }
    }
}

#[test]
fn frozen_reality_examples() {
    assert_eq!(
        reality_type(id(Series::A, 1), &hw(&[1])).unwrap(),
        Reality::Quaternionic
    );
    assert_eq!(
        reality_type(id(Series::A, 2), &hw(&[1, 0])).unwrap(),
        Reality::Complex
    );
    for r in 2..=4 {
        let mut labels = vec![0i64; r];
        labels[0] = 1;
        assert_eq!(
            reality_type(id(Series::B, r), &hw(&labels)).unwrap(),
            Reality::Real
        );
    }
    assert_eq!(
        reality_type(id(Series::C, 3), &hw(&[1, 0, 0])).unwrap(),
        Reality::Quaternionic
    );
    assert_eq!(
        reality_type(id(Series::D, 5), &hw(&[1, 0, 0, 0, 0])).unwrap(),
        Reality::Real
    );
}

#[test]
fn tensor_reality_sign_rule() {
    use Reality::{Complex, Quaternionic, Real};
    assert_eq!(reality_of_tensor(&[Quaternionic, Quaternionic]), Real);
    assert_eq!(reality_of_tensor(&[Quaternionic, Real]), Quaternionic);
    assert_eq!(reality_of_tensor(&[Real, Real, Real]), Real);
    assert_eq!(
        reality_of_tensor(&[Quaternionic, Quaternionic, Quaternionic]),
        Quaternionic
    );
    assert_eq!(reality_of_tensor(&[Complex, Real]), Complex);
}

#[test]
fn exterior_fourth_power_of_twelve_dimensional_orthogonal_rep() {
    let d6 = id(Series::D, 6);
    let defining = hw(&[1, 0, 0, 0, 0, 0]);
    let fourth = hw(&[0, 0, 0, 1, 0, 0]);
    assert_eq!(dimension(d6, &fourth).unwrap(), BigUint::from(495u64));

    let base = weight_system(d6, &defining).unwrap();
    assert_eq!(base.len(), 12);
    assert!(base.values().all(|&m| m == 1));
    let vecs: Vec<Vec<i64>> = base.keys().cloned().collect();

    // Direct combinatorics: weights of the fourth exterior power are the
    // sums over 4-element subsets of the defining weights.
    let mut expected: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    let n = vecs.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let mut s = vec![0i64; 6];
                    for idx in [a, b, c, d] {
                        for (t, v) in s.iter_mut().zip(vecs[idx].iter()) {
                            *t += v;
                        }
                    }
                    *expected.entry(s).or_insert(0) += 1;
                }
            }
        }
    }
    let total: u64 = expected.values().sum();
    assert_eq!(total, 495);
    assert_eq!(weight_system(d6, &fourth).unwrap(), expected);
}

#[test]
fn selfdual_enumeration_examples() {
    let reals = enumerate_selfdual_irreps(Reality::Real, 7);
    assert!(reals
        .iter()
        .any(|r| r.algebra == id(Series::B, 3) && r.weight.labels == vec![1, 0, 0] && r.dim == 7));
    assert!(reals
        .iter()
        .any(|r| r.algebra == id(Series::G, 2) && r.dim == 7));

    let quat2 = enumerate_selfdual_irreps(Reality::Quaternionic, 2);
    assert_eq!(quat2.len(), 1);
    assert_eq!(quat2[0].algebra, id(Series::A, 1));
    assert_eq!(quat2[0].weight.labels, vec![1]);

    assert!(enumerate_selfdual_irreps(Reality::Complex, 2).is_empty());

    // Deterministic output.
    let again = enumerate_selfdual_irreps(Reality::Real, 7);
    assert_eq!(reals, again);
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(SimpleAlgebraId::new(Series::B, 1).is_err());
    assert!(SimpleAlgebraId::new(Series::C, 2).is_err());
    assert!(SimpleAlgebraId::new(Series::D, 3).is_err());
    assert!(SimpleAlgebraId::new(Series::E, 9).is_err());
    assert!(SimpleAlgebraId::new(Series::F, 3).is_err());
    assert!(SimpleAlgebraId::new(Series::G, 1).is_err());
    let a2 = id(Series::A, 2);
    assert!(dimension(a2, &hw(&[1])).is_err());
    assert!(dimension(a2, &hw(&[1, -1])).is_err());
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn small_algebra() -> impl Strategy<Value = SimpleAlgebraId> {
        prop_oneof![
            Just(id(Series::A, 2)),
            Just(id(Series::A, 3)),
            Just(id(Series::B, 2)),
            Just(id(Series::C, 3)),
            Just(id(Series::D, 4)),
            Just(id(Series::G, 2)),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn conjugation_is_an_involution_preserving_dimension(
            a in small_algebra(),
            seed in proptest::collection::vec(0i64..3, 6),
        ) {
            let labels = seed[..a.rank()].to_vec();
            let w = hw(&labels);
            let c = conjugate_weight(a, &w).unwrap();
            let cc = conjugate_weight(a, &c).unwrap();
            prop_assert_eq!(cc.labels, labels);
            prop_assert_eq!(
                dimension(a, &w).unwrap(),
                dimension(a, &c).unwrap()
            );
        }

        #[test]
        fn reality_is_diagram_automorphism_invariant(
            a in small_algebra(),
            seed in proptest::collection::vec(0i64..3, 6),
        ) {
            let labels = seed[..a.rank()].to_vec();
            let w = hw(&labels);
            let base = reality_type(a, &w).unwrap();
            for perm in diagram_automorphisms(a) {
                let mut moved = vec![0i64; a.rank()];
                for (i, &x) in labels.iter().enumerate() {
                    moved[perm[i]] = x;
                }
                prop_assert_eq!(reality_type(a, &hw(&moved)).unwrap(), base);
            }
        }
    }
}
