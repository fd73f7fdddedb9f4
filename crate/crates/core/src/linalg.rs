//! Exact rank over ℚ and incremental row reduction.
//!
//! Two independent rank backends are provided:
//!
//! - [`multi_modular_rank`] reduces the matrix modulo several fixed 62-bit
//!   primes and eliminates over each `F_p`. A modular rank never exceeds the
//!   rational rank, so the maximum over primes is a lower bound that is exact
//!   unless every prime is unlucky.
//! - [`bareiss_rank`] clears denominators row by row and runs fraction-free
//!   elimination over ℤ.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::Rational;

/// Fixed primes just below `2^62`.
pub const DEFAULT_PRIMES: [u64; 4] = [
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    4_611_686_018_427_387_787,
    4_611_686_018_427_387_761,
];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller–Rabin primality test for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let small = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &small {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &small {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Image of a rational in `F_p`, or `None` if `p` divides the denominator.
pub fn reduce_rational(x: &Rational, p: u64) -> Option<u64> {
    let d = reduce_int(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(reduce_int(x.numer(), p), inv_mod(d, p), p))
}

/// Rank of a dense matrix over `F_p`; the input is consumed.
pub fn rank_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][c], p);
        let pivot_row: Vec<u64> = a[rank][c..].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for row in a.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row) {
                let sub = mul_mod(f, y, p);
                *x = if *x >= sub { *x - sub } else { *x + p - sub };
            }
        }
        rank += 1;
    }
    rank
}

/// Rank modulo `p` of a rational matrix, or `None` when `p` divides some
/// denominator.
pub fn modular_rank(rows: &[Vec<Rational>], p: u64) -> Option<usize> {
    let reduced = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| reduce_rational(x, p))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Some(rank_mod_p(reduced, p))
}

/// Result of a multi-prime rank computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularRank {
    pub rank: usize,
    /// Primes that were usable for this matrix.
    pub primes: Vec<u64>,
    /// Whether all usable primes agreed.
    pub unanimous: bool,
}

pub fn multi_modular_rank(rows: &[Vec<Rational>], primes: &[u64]) -> ModularRank {
    let results: Vec<(u64, usize)> = primes
        .par_iter()
        .filter_map(|&p| modular_rank(rows, p).map(|r| (p, r)))
        .collect();
    let rank = results.iter().map(|&(_, r)| r).max().unwrap_or(0);
    let unanimous = results.iter().all(|&(_, r)| r == rank);
    ModularRank {
        rank,
        primes: results.into_iter().map(|(p, _)| p).collect(),
        unanimous,
    }
}

/// Scales a rational row to a primitive integer row.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() || content.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &content).collect()
    }
}

/// Exact rank by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        bottom.par_iter_mut().for_each(|row| {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = pivot * &row[j] - &f * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "inexact Bareiss division");
                row[j] = v / &prev;
            }
        });
        prev = pivot_row[c].clone();
        rank += 1;
    }
    rank
}

/// An echelon basis of a growing subspace of `ℚ^n`, kept fully reduced.
///
/// Columns are eliminated in the order given by `column_order`, so pivots sit
/// on the earliest columns of that order.
#[derive(Clone, Debug)]
pub struct RowSpace {
    width: usize,
    column_order: Vec<usize>,
    /// `(pivot column, row)` with the pivot entry equal to one.
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    pub fn new(width: usize) -> Self {
        Self::with_order((0..width).collect())
    }

    pub fn with_order(column_order: Vec<usize>) -> Self {
        RowSpace {
            width: column_order.len(),
            column_order,
            rows: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the space grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let mut r = self.reduce(v);
        let Some(&pc) = self.column_order.iter().find(|&&c| !r[c].is_zero()) else {
            return false;
        };
        let inv = r[pc].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((pc, r));
        true
    }

    /// Basis rows with their pivot columns, pivots in elimination order.
    pub fn basis(&self) -> Vec<(usize, Vec<Rational>)> {
        let mut rows = self.rows.clone();
        let pos = |c: usize| self.column_order.iter().position(|&x| x == c).unwrap();
        rows.sort_by_key(|(pc, _)| pos(*pc));
        rows
    }
}

/// Rank over ℚ by plain rational elimination; for small matrices and tests.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut space = RowSpace::new(width);
    for r in rows {
        space.insert(r);
    }
    space.rank()
}

/// Divides an integer vector by its content and makes the entry at `lead`
/// positive.
pub fn normalize_integer_vector(v: &mut [BigInt], lead: Option<usize>) {
    let content = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !content.is_zero() && !content.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &content;
        }
    }
    if let Some(i) = lead {
        if v[i].sign() == Sign::Minus {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rat;

    #[test]
    fn default_primes_are_prime() {
        for p in DEFAULT_PRIMES {
            assert!(is_prime(p), "{p}");
            assert!(p < 1 << 62 && p > (1 << 62) - 1000);
        }
    }

    #[test]
    fn reduction_of_rationals() {
        let p = 101;
        let x = reduce_rational(&rat(1, 3), p).unwrap();
        assert_eq!(mul_mod(x, 3, p), 1);
        assert_eq!(reduce_rational(&rat(-1, 1), p), Some(100));
        assert_eq!(reduce_rational(&rat(1, 101), p), None);
    }

    #[test]
    fn ranks_agree_on_small_matrices() {
        let m = vec![
            vec![rat(1, 2), rat(1, 3), rat(1, 4)],
            vec![rat(1, 3), rat(1, 4), rat(1, 5)],
            vec![rat(5, 6), rat(7, 12), rat(9, 20)],
        ];
        assert_eq!(rational_rank(&m), 2);
        assert_eq!(bareiss_rank(&m), 2);
        assert_eq!(multi_modular_rank(&m, &DEFAULT_PRIMES).rank, 2);
    }

    #[test]
    fn unlucky_prime_undercounts() {
        // det = 7, so the rank drops modulo 7 only.
        let m = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(13, 1)]];
        assert_eq!(modular_rank(&m, 7), Some(1));
        assert_eq!(modular_rank(&m, 11), Some(2));
        let r = multi_modular_rank(&m, &[7, 11]);
        assert_eq!(r.rank, 2);
        assert!(!r.unanimous);
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert_eq!(bareiss_rank(&[]), 0);
        assert_eq!(rational_rank(&[]), 0);
        let z = vec![vec![rat(0, 1); 3]; 2];
        assert_eq!(bareiss_rank(&z), 0);
        assert_eq!(modular_rank(&z, 101), Some(0));
    }

    #[test]
    fn row_space_reduces() {
        let mut s = RowSpace::new(3);
        assert!(s.insert(&[rat(1, 1), rat(2, 1), rat(0, 1)]));
        assert!(!s.insert(&[rat(2, 1), rat(4, 1), rat(0, 1)]));
        assert!(s.insert(&[rat(0, 1), rat(1, 1), rat(1, 1)]));
        assert!(s.contains(&[rat(1, 1), rat(3, 1), rat(1, 1)]));
        assert!(!s.contains(&[rat(0, 1), rat(0, 1), rat(1, 1)]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn integer_rows_are_primitive() {
        let r = integer_row(&[rat(1, 2), rat(-3, 4), rat(0, 1)]);
        assert_eq!(r, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}
