//! Proportionality constants of top-degree κ-monomials on `M_g`.
//!
//! Every κ-monomial `κ_m` with `|m| = g - 2` is a rational multiple
//! `r(κ_m)·κ_{g-2}` of `κ_{g-2}`. The constants are computed with the
//! Liu–Xu recursion:
//!
//! ```text
//! Σ_{m'+m''=m} (-1)^{||m'||} β_{m'} / (m''! (2|m''|+1)!!) = 0,  β_0 = 1
//! γ_m  = (-1)^{||m||} / (m! (2|m|+1)!!)
//! C_m  = Σ_{m'+m''=m} 2|m'| β_{m'} γ_{m''}
//! |m| F_g(m) = (g-1) Σ_{m'+m''=m, m'≠0} C_{m'} F_g(m''),  F_g(0) = 1
//! r(κ_m) = (2g-3)!! m! / (2g-2) · F_g(m)
//! ```
//!
//! β, γ and C do not depend on the genus; F and r do. All of them are memoised
//! in a [`LiuXuTable`] that can be shared between threads and persisted to a
//! line-oriented cache file.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{double_factorial, factorial, rat_int, MultiIndex};
use crate::error::{invalid, Error, Result};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Beta,
    C,
    F,
    R,
}

impl Kind {
    fn tag(self) -> &'static str {
        match self {
            Kind::Beta => "beta",
            Kind::C => "c",
            Kind::F => "f",
            Kind::R => "r",
        }
    }
}

/// `(kind, genus, index)`; the genus is 0 for genus-independent kinds.
type Key = (Kind, u32, MultiIndex);

/// Shared memo table for β, C, F_g and r.
///
/// Reads take a shared lock. A missing entry is computed outside the lock and
/// then inserted; two threads may race on the same entry, which is harmless
/// since every value is deterministic.
#[derive(Default)]
pub struct LiuXuTable {
    values: RwLock<HashMap<Key, Rational>>,
    persisted: RwLock<HashSet<Key>>,
}

impl LiuXuTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn lookup(&self, key: &Key) -> Option<Rational> {
        self.values.read().unwrap().get(key).cloned()
    }

    fn store(&self, key: Key, value: Rational) -> Rational {
        let mut map = self.values.write().unwrap();
        map.entry(key).or_insert(value).clone()
    }

    pub fn len(&self) -> usize {
        self.values.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn beta(&self, m: &MultiIndex) -> Rational {
        if m.is_zero() {
            return Rational::one();
        }
        let key = (Kind::Beta, 0, m.clone());
        if let Some(v) = self.lookup(&key) {
            return v;
        }
        // The m' = m term is (-1)^{||m||} β_m; solve for it.
        let mut sum = Rational::zero();
        for (mp, mpp) in m.splittings() {
            if mpp.is_zero() {
                continue;
            }
            let term = sign(mp.length()) * self.beta(&mp) / inverse_weight(&mpp);
            sum += term;
        }
        let value = -(sign(m.length()) * sum);
        self.store(key, value)
    }

    pub fn gamma(&self, m: &MultiIndex) -> Rational {
        sign(m.length()) / inverse_weight(m)
    }

    pub fn c_constant(&self, m: &MultiIndex) -> Rational {
        if m.is_zero() {
            return Rational::zero();
        }
        let key = (Kind::C, 0, m.clone());
        if let Some(v) = self.lookup(&key) {
            return v;
        }
        let mut sum = Rational::zero();
        for (mp, mpp) in m.splittings() {
            if mp.is_zero() {
                continue;
            }
            sum += rat_int(2 * mp.degree()) * self.beta(&mp) * self.gamma(&mpp);
        }
        self.store(key, sum)
    }

    /// `F_g(m)` for `|m| ≤ g - 2`.
    pub fn f_constant(&self, g: u32, m: &MultiIndex) -> Result<Rational> {
        check_genus(g)?;
        if m.degree() + 2 > g as usize {
            return invalid(format!(
                "F_g(m) needs |m| ≤ g-2, got |m| = {} with g = {g}",
                m.degree()
            ));
        }
        Ok(self.f_unchecked(g, m))
    }

    fn f_unchecked(&self, g: u32, m: &MultiIndex) -> Rational {
        if m.is_zero() {
            return Rational::one();
        }
        let key = (Kind::F, g, m.clone());
        if let Some(v) = self.lookup(&key) {
            return v;
        }
        let mut sum = Rational::zero();
        for (mp, mpp) in m.splittings() {
            if mp.is_zero() {
                continue;
            }
            sum += self.c_constant(&mp) * self.f_unchecked(g, &mpp);
        }
        let value = sum * rat_int(g - 1) / rat_int(m.degree());
        self.store(key, value)
    }

    /// `r(κ_m)` with `κ_m = r(κ_m)·κ_{g-2}`, for `|m| = g - 2`.
    ///
    /// For `g = 2` the only index is the empty product `1 = κ_0 / 2`, so
    /// `r(1) = 1/2`.
    pub fn r_value(&self, g: u32, m: &MultiIndex) -> Result<Rational> {
        check_genus(g)?;
        if m.degree() + 2 != g as usize {
            return invalid(format!(
                "r(κ_m) needs |m| = g-2; got |m| = {} but g-2 = {}",
                m.degree(),
                g - 2
            ));
        }
        let key = (Kind::R, g, m.clone());
        if let Some(v) = self.lookup(&key) {
            return Ok(v);
        }
        let df = double_factorial(2 * g as i64 - 3)?;
        let prefactor = Rational::new(
            BigInt::from(df) * BigInt::from(m.factorial()),
            BigInt::from(2 * g - 2),
        );
        let value = prefactor * self.f_unchecked(g, m);
        Ok(self.store(key, value))
    }

    /// Loads a cache file; a missing file yields an empty table.
    ///
    /// Lines have the form `beta <mi> <p/q>`, `c <mi> <p/q>`, `f <g> <mi> <p/q>`
    /// or `r <g> <mi> <p/q>`. Repeated keys must carry equal values.
    pub fn load(path: &Path) -> Result<Self> {
        let table = LiuXuTable::new();
        if !path.exists() {
            return Ok(table);
        }
        let reader = BufReader::new(File::open(path)?);
        {
            let mut values = table.values.write().unwrap();
            let mut persisted = table.persisted.write().unwrap();
            for (lineno, line) in reader.lines().enumerate() {
                let line = line?;
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = parse_cache_line(line)
                    .map_err(|e| Error::Cache(format!("line {}: {e}", lineno + 1)))?;
                if let Some(old) = values.get(&key) {
                    if *old != value {
                        return Err(Error::Cache(format!(
                            "line {}: conflicting value for `{} {}`",
                            lineno + 1,
                            key.0.tag(),
                            key.2
                        )));
                    }
                }
                persisted.insert(key.clone());
                values.insert(key, value);
            }
        }
        Ok(table)
    }

    /// Appends every entry not yet present in the file. Returns the number of
    /// lines written.
    pub fn persist(&self, path: &Path) -> Result<usize> {
        let values = self.values.read().unwrap();
        let mut persisted = self.persisted.write().unwrap();
        let fresh: BTreeMap<&Key, &Rational> = values
            .iter()
            .filter(|(k, _)| !persisted.contains(*k))
            .collect();
        if fresh.is_empty() {
            return Ok(0);
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut buf = String::new();
        for (key, value) in &fresh {
            buf.push_str(&format_cache_line(key, value));
            buf.push('\n');
        }
        file.write_all(buf.as_bytes())?;
        let n = fresh.len();
        persisted.extend(fresh.into_keys().cloned());
        Ok(n)
    }
}

fn check_genus(g: u32) -> Result<()> {
    if g < 2 {
        return invalid(format!("genus must be at least 2, got {g}"));
    }
    Ok(())
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `m! (2|m|+1)!!` as a rational.
fn inverse_weight(m: &MultiIndex) -> Rational {
    let df = double_factorial(2 * m.degree() as i64 + 1).expect("non-negative argument");
    rat_int(BigInt::from(m.factorial() * df))
}

fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn format_cache_line(key: &Key, value: &Rational) -> String {
    match key.0 {
        Kind::Beta | Kind::C => format!("{} {} {}", key.0.tag(), key.2, format_rational(value)),
        Kind::F | Kind::R => format!(
            "{} {} {} {}",
            key.0.tag(),
            key.1,
            key.2,
            format_rational(value)
        ),
    }
}

fn parse_cache_line(line: &str) -> Result<(Key, Rational)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let parse_genus = |s: &str| {
        s.parse::<u32>()
            .map_err(|_| Error::InvalidArgument(format!("bad genus `{s}`")))
    };
    match fields.as_slice() {
        ["beta", m, v] => Ok(((Kind::Beta, 0, m.parse()?), parse_rational(v)?)),
        ["c", m, v] => Ok(((Kind::C, 0, m.parse()?), parse_rational(v)?)),
        ["f", g, m, v] => Ok(((Kind::F, parse_genus(g)?, m.parse()?), parse_rational(v)?)),
        ["r", g, m, v] => Ok(((Kind::R, parse_genus(g)?, m.parse()?), parse_rational(v)?)),
        _ => invalid(format!("unrecognised line `{line}`")),
    }
}

/// Right-hand side of the symmetric-group identity for a partition `d̄` of
/// `g - 2` with `k` parts:
/// `(2g-3+k)! (2g-1)!! / ((2g-1)! Π (2d_j+1)!!)`.
pub fn sk_sum_rhs(g: u32, dbar: &[usize]) -> Result<Rational> {
    check_genus(g)?;
    let k = dbar.len() as u64;
    let g = g as u64;
    let num =
        BigInt::from(factorial(2 * g - 3 + k)) * BigInt::from(double_factorial(2 * g as i64 - 1)?);
    let mut den = BigInt::from(factorial(2 * g - 1));
    for &d in dbar {
        den *= BigInt::from(double_factorial(2 * d as i64 + 1)?);
    }
    Ok(Rational::new(num, den))
}

/// Left-hand side `Σ_{σ ∈ S_k} r(κ_σ(d̄))`, where each cycle `α` of `σ`
/// contributes a factor `κ_{Σ_{i∈α} d_i}`.
pub fn sk_sum_lhs(table: &LiuXuTable, g: u32, dbar: &[usize]) -> Result<Rational> {
    validate_partition(g, dbar)?;
    let mut by_index: HashMap<MultiIndex, u64> = HashMap::new();
    for_each_permutation(dbar.len(), |perm| {
        let mut seen = vec![false; perm.len()];
        let mut m = MultiIndex::zero();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut weight = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                weight += dbar[i];
                i = perm[i];
            }
            m.bump(weight, 1);
        }
        *by_index.entry(m).or_default() += 1;
    });
    let mut total = Rational::zero();
    for (m, count) in by_index {
        total += table.r_value(g, &m)? * rat_int(count);
    }
    Ok(total)
}

/// Whether the symmetric-group identity holds exactly for `d̄`.
pub fn sk_sum_check(table: &LiuXuTable, g: u32, dbar: &[usize]) -> Result<bool> {
    Ok(sk_sum_lhs(table, g, dbar)? == sk_sum_rhs(g, dbar)?)
}

fn validate_partition(g: u32, dbar: &[usize]) -> Result<()> {
    check_genus(g)?;
    if dbar.contains(&0) {
        return invalid("partition parts must be positive");
    }
    let total: usize = dbar.iter().sum();
    if total + 2 != g as usize {
        return invalid(format!(
            "partition sums to {total}, expected g-2 = {}",
            g - 2
        ));
    }
    Ok(())
}

/// Calls `f` on every permutation of `0..k` (Heap's algorithm).
fn for_each_permutation(k: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    f(&perm);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
