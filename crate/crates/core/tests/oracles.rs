//! Values checked against independent re-derivations written here, not
//! against the library's own recursions.

mod common;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use common::{mi, rat};
use tautring::combinatorics::{bernoulli, partitions, MultiIndex};
use tautring::intersection::LiuXuTable;
use tautring::pushforward::lambda_polynomials;
use tautring::Rational;

fn fact(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn dfact(n: i64) -> BigInt {
    let mut a = BigInt::one();
    let mut k = n;
    while k > 1 {
        a *= k;
        k -= 2;
    }
    a
}

fn binom(n: u64, k: u64) -> BigInt {
    fact(n) / (fact(k) * fact(n - k))
}

/// All permutations of `0..k` in one-line notation.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Sorted cycle weights of `perm` acting on the parts `d`.
fn merged(d: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; d.len()];
    let mut out = Vec::new();
    for s in 0..d.len() {
        let (mut i, mut w) = (s, 0);
        while !seen[i] {
            seen[i] = true;
            w += d[i];
            i = perm[i];
        }
        if w > 0 {
            out.push(w);
        }
    }
    out.sort_unstable();
    out
}

/// `r(κ_d)` for every partition `d` of `g - 2`, solved from the symmetric
/// group identity alone: the identity permutation is the only one keeping all
/// `k` parts, so the system is triangular in the number of parts.
fn r_values_from_identity(g: u64) -> HashMap<Vec<usize>, Rational> {
    let mut parts: Vec<Vec<usize>> = partitions(g as usize - 2)
        .into_iter()
        .map(|mut p| {
            p.sort_unstable();
            p
        })
        .collect();
    parts.sort_by_key(Vec::len);
    let mut r: HashMap<Vec<usize>, Rational> = HashMap::new();
    for d in parts {
        let k = d.len() as u64;
        let mut den = fact(2 * g - 1);
        for &x in &d {
            den *= dfact(2 * x as i64 + 1);
        }
        let rhs = Rational::new(fact(2 * g - 3 + k) * dfact(2 * g as i64 - 1), den);
        let mut rest = Rational::zero();
        for perm in permutations(d.len()) {
            if perm.iter().enumerate().all(|(i, &p)| i == p) {
                continue;
            }
            rest += r[&merged(&d, &perm)].clone();
        }
        r.insert(d, rhs - rest);
    }
    r
}

#[test]
fn r_values_match_symmetric_group_solution() {
    let table = LiuXuTable::new();
    for g in 2..=8u64 {
        for (d, want) in r_values_from_identity(g) {
            let got = table
                .r_value(g as u32, &MultiIndex::from_parts(&d))
                .unwrap();
            assert_eq!(got, want, "r at g={g}, parts {d:?}");
        }
    }
}

#[test]
fn r_values_small_genus() {
    let table = LiuXuTable::new();
    assert_eq!(table.r_value(2, &MultiIndex::zero()).unwrap(), rat(1, 2));
    assert_eq!(table.r_value(3, &mi(&[1])).unwrap(), rat(1, 1));
    assert_eq!(table.r_value(4, &mi(&[0, 1])).unwrap(), rat(1, 1));
    assert_eq!(table.r_value(4, &mi(&[2])).unwrap(), rat(32, 3));
}

/// `B_n` from `Σ_{k<n+1} C(n+1,k) B_k = 0`, `B_0 = 1`.
fn bernoulli_oracle(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n as u64 {
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from_integer(binom(m + 1, k as u64)) * bk;
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

#[test]
fn bernoulli_matches_binomial_recurrence() {
    let oracle = bernoulli_oracle(30);
    for n in (2..=30).step_by(2) {
        assert_eq!(bernoulli(n).unwrap(), oracle[n], "B_{n}");
    }
    assert_eq!(oracle[12], rat(-691, 2730));
}

type Poly = BTreeMap<MultiIndex, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            *out.entry(ma.add(mb)).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_add(acc: &mut Poly, b: &Poly, scale: &Rational) {
    for (m, c) in b {
        *acc.entry(m.clone()).or_insert_with(Rational::zero) += c * scale;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// `λ_i` from Newton's identities `i λ_i = Σ_j (-1)^{j-1} p_j λ_{i-j}` with
/// power sums `p_j = j! ch_j`, `ch_{2k-1} = B_{2k}/(2k)! κ_{2k-1}`.
fn lambda_oracle(g: usize) -> Vec<Poly> {
    let b = bernoulli_oracle(g + 1);
    let p: Vec<Poly> = (0..=g)
        .map(|j| {
            let mut poly = Poly::new();
            if j % 2 == 1 {
                let c = Rational::from_integer(fact(j as u64)) * &b[j + 1]
                    / Rational::from_integer(fact(j as u64 + 1));
                poly.insert(MultiIndex::unit(j), c);
            }
            poly
        })
        .collect();
    let mut lam = vec![Poly::from([(MultiIndex::zero(), Rational::one())])];
    for i in 1..=g {
        let mut acc = Poly::new();
        for j in 1..=i {
            let sign = if j % 2 == 1 { rat(1, 1) } else { rat(-1, 1) };
            poly_add(
                &mut acc,
                &poly_mul(&p[j], &lam[i - j]),
                &(sign / rat(i as i64, 1)),
            );
        }
        lam.push(acc);
    }
    lam
}

#[test]
fn lambda_classes_match_newton_identities() {
    for g in 2..=9usize {
        let oracle = lambda_oracle(g);
        let got = lambda_polynomials(g as u32);
        assert_eq!(got.len(), g + 1);
        for i in 0..=g {
            assert_eq!(got[i], oracle[i], "λ_{i} at g={g}");
        }
    }
}

#[test]
fn lambda_total_class_is_self_dual_inverse() {
    // c(E) c(E^∨) = 1 in every degree up to g
    let g = 8usize;
    let lam = lambda_polynomials(g as u32);
    for d in 1..=g {
        let mut sum = Poly::new();
        for i in 0..=d {
            let sign = if i % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            poly_add(&mut sum, &poly_mul(&lam[i], &lam[d - i]), &sign);
        }
        assert!(sum.is_empty(), "degree {d}: {sum:?}");
    }
}
