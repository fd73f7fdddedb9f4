//! Shared fixtures for the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;

use tautring::combinatorics::MultiIndex;
use tautring::pushforward::TautMonomial;
use tautring::Rational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

/// Known ranks of `Q_{g,i}` for `2 ≤ g ≤ 27`; row `g - 2`.
pub const KNOWN_RANKS: [&[usize]; 26] = [
    &[1, 1],
    &[1, 2, 1],
    &[1, 2, 2, 1],
    &[1, 2, 3, 2, 1],
    &[1, 2, 4, 4, 2, 1],
    &[1, 2, 4, 5, 4, 2, 1],
    &[1, 2, 4, 6, 6, 4, 2, 1],
    &[1, 2, 4, 7, 9, 7, 4, 2, 1],
    &[1, 2, 4, 7, 10, 10, 7, 4, 2, 1],
    &[1, 2, 4, 7, 11, 13, 11, 7, 4, 2, 1],
    &[1, 2, 4, 7, 12, 16, 16, 12, 7, 4, 2, 1],
    &[1, 2, 4, 7, 12, 17, 20, 17, 12, 7, 4, 2, 1],
    &[1, 2, 4, 7, 12, 18, 24, 24, 18, 12, 7, 4, 2, 1],
    &[1, 2, 4, 7, 12, 19, 27, 31, 27, 19, 12, 7, 4, 2, 1],
    &[1, 2, 4, 7, 12, 19, 28, 35, 35, 28, 19, 12, 7, 4, 2, 1],
    &[1, 2, 4, 7, 12, 19, 29, 39, 45, 39, 29, 19, 12, 7, 4, 2, 1],
    &[
        1, 2, 4, 7, 12, 19, 30, 42, 53, 53, 42, 30, 19, 12, 7, 4, 2, 1,
    ],
    &[
        1, 2, 4, 7, 12, 19, 30, 43, 57, 64, 57, 43, 30, 19, 12, 7, 4, 2, 1,
    ],
    &[
        1, 2, 4, 7, 12, 19, 30, 44, 61, 75, 75, 61, 44, 30, 19, 12, 7, 4, 2, 1,
    ],
    &[
        1, 2, 4, 7, 12, 19, 30, 45, 64, 83, 94, 83, 64, 45, 30, 19, 12, 7, 4, 2, 1,
    ],
    &[
        1, 2, 4, 7, 12, 19, 30, 45, 65, 87, 106, 106, 87, 65, 45, 30, 19, 12, 7, 4, 2, 1,
    ],
    &[
        1, 2, 4, 7, 12, 19, 30, 45, 66, 91, 117, 131, 117, 91, 66, 45, 30, 19, 12, 7, 4, 2, 1,
    ],
    &[
        1, 2, 4, 7, 12, 19, 30, 45, 67, 94, 125, 150, 150, 125, 94, 67, 45, 30, 19, 12, 7, 4, 2, 1,
    ],
    &[
        1, 2, 4, 7, 12, 19, 30, 45, 67, 95, 129, 162, 181, 162, 129, 95, 67, 45, 30, 19, 12, 7, 4,
        2, 1,
    ],
    &[
        1, 2, 4, 7, 12, 19, 30, 45, 67, 96, 133, 173, 208, 208, 173, 133, 96, 67, 45, 30, 19, 12,
        7, 4, 2, 1,
    ],
    &[
        1, 2, 4, 7, 12, 19, 30, 45, 67, 97, 136, 181, 227, 253, 227, 181, 136, 97, 67, 45, 30, 19,
        12, 7, 4, 2, 1,
    ],
];

pub fn known_row(g: u32) -> &'static [usize] {
    KNOWN_RANKS[g as usize - 2]
}

/// One factor of a random monomial on `C_g^n`.
#[derive(Clone, Debug)]
pub enum Factor {
    K(usize),
    D(usize, usize),
    Kappa(usize),
}

fn factor(points: usize) -> impl Strategy<Value = Factor> {
    prop_oneof![
        (1..=points).prop_map(Factor::K),
        (1..=points, 1..=points)
            .prop_filter("distinct points", |(i, j)| i != j)
            .prop_map(|(i, j)| Factor::D(i, j)),
        (1usize..=3).prop_map(Factor::Kappa),
    ]
}

pub fn build(points: usize, factors: &[Factor]) -> TautMonomial {
    factors.iter().fold(TautMonomial::one(points), |acc, f| {
        let m = match *f {
            Factor::K(p) => TautMonomial::k(points, p, 1),
            Factor::D(i, j) => TautMonomial::diagonal(points, i, j),
            Factor::Kappa(a) => TautMonomial::kappa(points, MultiIndex::unit(a)),
        };
        acc.mul(&m)
    })
}

/// A random monomial on `C_g^n`, `2 ≤ n ≤ max_points`, of degree at most
/// `max_degree`.
pub fn monomial(max_points: usize, max_degree: usize) -> impl Strategy<Value = TautMonomial> {
    (2..=max_points).prop_flat_map(move |n| {
        prop::collection::vec(factor(n), 0..=max_degree).prop_map(move |fs| build(n, &fs))
    })
}

/// A monomial built from `K` and `D` factors only (no κ), for rule tests.
pub fn kd_monomial(max_points: usize, max_degree: usize) -> impl Strategy<Value = TautMonomial> {
    (2..=max_points).prop_flat_map(move |n| {
        prop::collection::vec(
            prop_oneof![
                (1..=n).prop_map(Factor::K),
                (1..=n, 1..=n)
                    .prop_filter("distinct points", |(i, j)| i != j)
                    .prop_map(|(i, j)| Factor::D(i, j)),
            ],
            0..=max_degree,
        )
        .prop_map(move |fs| build(n, &fs))
    })
}

/// Rewrites `m` with the diagonal identities, choosing among applicable
/// rules by `choices`, until none applies. Returns `(negated, result, steps)`.
pub fn rewrite_fully(m: &TautMonomial, choices: &[usize]) -> (bool, TautMonomial, usize) {
    let mut cur = m.clone();
    let mut neg = false;
    let mut steps = 0;
    loop {
        let rules = cur.applicable_rules();
        if rules.is_empty() {
            return (neg, cur, steps);
        }
        let pick = choices
            .get(steps % choices.len().max(1))
            .copied()
            .unwrap_or(0);
        let (n, next) = cur
            .apply_rule(rules[pick % rules.len()])
            .expect("applicable rule applies");
        neg ^= n;
        cur = next;
        steps += 1;
        assert!(steps < 10_000, "rewriting did not terminate");
    }
}
