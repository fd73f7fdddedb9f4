//! Partitions, κ-monomials and small number-theoretic helpers.
//!
//! A κ-monomial `κ_1^{m_1} κ_2^{m_2} ⋯` is stored as its exponent vector
//! [`MultiIndex`]. Monomials on `C_g` additionally carry a power of `K`
//! ([`CgMonomial`]).
//!
//! The order `<_κ` on κ-monomials of equal degree is lexicographic on the
//! exponent vector `(m_1, m_2, …)`. The order `<_*` on `C_g` monomials compares
//! the `K`-power first and breaks ties with `<_κ`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::Rational;

/// Exponent vector of a κ-monomial, with trailing zeros stripped.
///
/// Component `i` (1-based) is the exponent of `κ_i`. The derived ordering is
/// lexicographic on the exponent vector, which for indexes of equal degree is
/// the monomial order `<_κ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        MultiIndex(exponents)
    }

    /// The empty product `1`.
    pub fn zero() -> Self {
        MultiIndex(Vec::new())
    }

    /// The single class `κ_i`, `i ≥ 1`.
    pub fn unit(i: usize) -> Self {
        assert!(i >= 1, "κ-index must be positive");
        let mut v = vec![0; i];
        v[i - 1] = 1;
        MultiIndex(v)
    }

    /// Builds the index of `κ_{d_1} κ_{d_2} ⋯` from a list of parts.
    pub fn from_parts(parts: &[usize]) -> Self {
        let mut m = MultiIndex::zero();
        for &p in parts {
            m.bump(p, 1);
        }
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `κ_i` (1-based); zero beyond the stored prefix.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `|m| = Σ i·m_i`, the degree of `κ_m`.
    pub fn degree(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| (i + 1) * e as usize)
            .sum()
    }

    /// `||m|| = Σ m_i`, the number of κ-factors.
    pub fn length(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// `m! = Π m_i!`.
    pub fn factorial(&self) -> BigUint {
        self.0
            .iter()
            .fold(BigUint::one(), |acc, &e| acc * factorial(e as u64))
    }

    /// Whether `κ_j` divides `κ_m`.
    pub fn contains(&self, j: usize) -> bool {
        self.get(j) > 0
    }

    /// Multiplies in `κ_i^by`.
    pub fn bump(&mut self, i: usize, by: u32) {
        assert!(i >= 1, "κ-index must be positive");
        if by == 0 {
            return;
        }
        if self.0.len() < i {
            self.0.resize(i, 0);
        }
        self.0[i - 1] += by;
    }

    pub fn with_factor(&self, i: usize) -> Self {
        let mut m = self.clone();
        m.bump(i, 1);
        m
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let n = self.0.len().max(other.0.len());
        let v = (1..=n).map(|i| self.get(i) + other.get(i)).collect();
        MultiIndex::new(v)
    }

    /// `self - other` when `other ≤ self` coordinatewise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (a, &b) in v.iter_mut().zip(&other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(MultiIndex::new(v))
    }

    /// All coordinatewise splittings `m = m' + m''`, as `(m', m'')` pairs.
    ///
    /// The hyper-rectangle `Π (m_i + 1)` is walked in odometer order, so the
    /// first pair is `(0, m)` and the last is `(m, 0)`.
    pub fn splittings(&self) -> Vec<(MultiIndex, MultiIndex)> {
        let n = self.0.len();
        let total: usize = self.0.iter().map(|&e| e as usize + 1).product();
        let mut out = Vec::with_capacity(total);
        let mut cur = vec![0u32; n];
        loop {
            let rest: Vec<u32> = self.0.iter().zip(&cur).map(|(a, b)| a - b).collect();
            out.push((MultiIndex::new(cur.clone()), MultiIndex::new(rest)));
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                if cur[k] < self.0[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    /// The parts of the partition, largest first.
    pub fn parts(&self) -> Vec<usize> {
        let mut parts = Vec::with_capacity(self.length());
        for (i, &e) in self.0.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i + 1, e as usize));
        }
        parts
    }

    /// Human-readable form such as `k1^2*k3`; the empty product prints as `1`.
    pub fn monomial_label(&self) -> String {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("k{}", i + 1)
                } else {
                    format!("k{}^{}", i + 1, e)
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

/// Canonical text encoding: comma-separated exponents, `0` for the empty index.
impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return invalid("empty multi-index");
        }
        let exps = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidArgument(format!("bad exponent `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiIndex::new(exps))
    }
}

/// A monomial `K^j κ_m` in `R(C_g)`.
///
/// Field order matters: the derived ordering is `<_*` (K-power first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CgMonomial {
    pub k_power: u32,
    pub kappa: MultiIndex,
}

impl CgMonomial {
    pub fn new(k_power: u32, kappa: MultiIndex) -> Self {
        CgMonomial { k_power, kappa }
    }

    pub fn one() -> Self {
        CgMonomial::new(0, MultiIndex::zero())
    }

    pub fn degree(&self) -> usize {
        self.k_power as usize + self.kappa.degree()
    }

    pub fn mul(&self, other: &CgMonomial) -> CgMonomial {
        CgMonomial::new(self.k_power + other.k_power, self.kappa.add(&other.kappa))
    }

    /// Number of factors, counting `K` with multiplicity.
    pub fn factor_count(&self) -> usize {
        self.k_power as usize + self.kappa.length()
    }
}

impl fmt::Display for CgMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.k_power {
            0 => None,
            1 => Some("K".to_string()),
            e => Some(format!("K^{e}")),
        };
        match (k, self.kappa.is_zero()) {
            (None, _) => write!(f, "{}", self.kappa.monomial_label()),
            (Some(k), true) => write!(f, "{k}"),
            (Some(k), false) => write!(f, "{k}*{}", self.kappa.monomial_label()),
        }
    }
}

/// Partitions of `n` as part lists (non-increasing), generated by largest part.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All κ-monomials of degree `d`, sorted ascending by `<_κ`.
pub fn enumerate_kappa_monomials(d: usize) -> Vec<MultiIndex> {
    let mut out: Vec<MultiIndex> = partitions(d)
        .iter()
        .map(|p| MultiIndex::from_parts(p))
        .collect();
    out.sort();
    out
}

/// All `K^j κ_m` of degree `d`, sorted ascending by `<_*`.
pub fn enumerate_cg_monomials(d: usize) -> Vec<CgMonomial> {
    (0..=d)
        .rev()
        .flat_map(|r| {
            let j = (d - r) as u32;
            enumerate_kappa_monomials(r)
                .into_iter()
                .map(move |m| CgMonomial::new(j, m))
        })
        .collect()
}

/// The partition function `p(d)`, with `p(0) = 1`.
pub fn partition_count(d: usize) -> u64 {
    // p(n, k): partitions of n with parts ≤ k, filled column by column.
    let mut table = vec![0u64; d + 1];
    table[0] = 1;
    for part in 1..=d {
        for n in part..=d {
            table[n] += table[n - part];
        }
    }
    table[d]
}

/// `Σ_{r=0}^{d} p(r)`, the number of `C_g` monomials of degree `d`.
pub fn cg_monomial_count(d: usize) -> u64 {
    (0..=d).map(partition_count).sum()
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `k!!` for `k ≥ -1`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> Result<BigUint> {
    if k < -1 {
        return invalid(format!("double factorial undefined for {k}"));
    }
    let mut acc = BigUint::one();
    let mut j = k;
    while j > 1 {
        acc *= j as u64;
        j -= 2;
    }
    Ok(acc)
}

/// The Bernoulli number `B_n` for even `n ≥ 2`, with `B_2 = 1/6`.
///
/// Computed with the Akiyama–Tanigawa transform.
pub fn bernoulli(n: usize) -> Result<Rational> {
    if n < 2 || n % 2 == 1 {
        return invalid(format!("Bernoulli index must be even and ≥ 2, got {n}"));
    }
    let mut row: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(Rational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &row[j - 1] - &row[j];
            row[j - 1] = diff * BigInt::from(j);
        }
    }
    Ok(row[0].clone())
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn trailing_zeros_are_ignored() {
        assert_eq!(mi(&[2, 0, 1, 0, 0]), mi(&[2, 0, 1]));
        assert_eq!(mi(&[0, 0]), MultiIndex::zero());
    }

    #[test]
    fn degree_length_factorial() {
        let m = mi(&[2, 0, 3]);
        assert_eq!(m.degree(), 2 + 9);
        assert_eq!(m.length(), 5);
        assert_eq!(m.factorial(), BigUint::from(12u32));
        assert_eq!(MultiIndex::zero().factorial(), BigUint::one());
    }

    #[test]
    fn text_encoding() {
        assert_eq!(mi(&[2, 0, 1]).to_string(), "2,0,1");
        assert_eq!(MultiIndex::zero().to_string(), "0");
        assert_eq!("2,0,1,0".parse::<MultiIndex>().unwrap(), mi(&[2, 0, 1]));
        assert_eq!("0".parse::<MultiIndex>().unwrap(), MultiIndex::zero());
        assert!("2,x".parse::<MultiIndex>().is_err());
        assert!("".parse::<MultiIndex>().is_err());
    }

    #[test]
    fn splittings_cover_rectangle() {
        let m = mi(&[2, 1]);
        let s = m.splittings();
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], (MultiIndex::zero(), m.clone()));
        assert_eq!(s[5], (m.clone(), MultiIndex::zero()));
        for (a, b) in s {
            assert_eq!(a.add(&b), m);
        }
        assert_eq!(MultiIndex::zero().splittings().len(), 1);
    }

    #[test]
    fn kappa_enumeration_small() {
        assert_eq!(enumerate_kappa_monomials(0), vec![MultiIndex::zero()]);
        assert_eq!(
            enumerate_kappa_monomials(2),
            vec![MultiIndex::unit(2), mi(&[2])]
        );
        assert_eq!(enumerate_kappa_monomials(4).len(), 5);
    }

    #[test]
    fn cg_enumeration_small() {
        let d1 = enumerate_cg_monomials(1);
        assert_eq!(
            d1,
            vec![
                CgMonomial::new(0, MultiIndex::unit(1)),
                CgMonomial::new(1, MultiIndex::zero())
            ]
        );
        let labels: Vec<String> = enumerate_cg_monomials(3)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(
            labels,
            ["k3", "k1*k2", "k1^3", "K*k2", "K*k1^2", "K^2*k1", "K^3"]
        );
        assert_eq!(enumerate_cg_monomials(12).len(), 272);
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partition_count(0), 1);
        assert_eq!(partition_count(3), 3);
        assert_eq!(partition_count(4), 5);
        assert_eq!(partition_count(10), 42);
        assert_eq!(partition_count(25), 1958);
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1).unwrap(), BigUint::one());
        assert_eq!(double_factorial(0).unwrap(), BigUint::one());
        assert_eq!(double_factorial(5).unwrap(), BigUint::from(15u32));
        assert_eq!(double_factorial(7).unwrap(), BigUint::from(105u32));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), rat(1, 42));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(0).is_err());
    }

    #[test]
    fn cg_monomial_labels() {
        assert_eq!(CgMonomial::one().to_string(), "1");
        assert_eq!(CgMonomial::new(2, MultiIndex::zero()).to_string(), "K^2");
        assert_eq!(CgMonomial::new(1, mi(&[1])).to_string(), "K*k1");
    }
}
