//! Relations in `R^i(C_g)` from `c_j(F_{2g-1} - E) = 0`, and the Gorenstein
//! check comparing them with pairing ranks.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::expression::TautExpression;
use super::k_minus_delta;
use super::monomial::TautMonomial;
use crate::combinatorics::{enumerate_cg_monomials, CgMonomial};
use crate::error::{invalid, Error, Result};
use crate::intersection::LiuXuTable;
use crate::linalg::{integer_row, normalize_integer_vector, RowSpace};
use crate::pairing::{build_q_matrix, q_rank, RankOptions};
use crate::Rational;

fn check_genus(g: u32) -> Result<()> {
    if g < 2 {
        return invalid(format!("genus must be at least 2, got {g}"));
    }
    if 2 * g as usize - 1 > 255 {
        return invalid(format!("genus {g} is too large for the fibre-power engine"));
    }
    Ok(())
}

/// The monomial family for relations in degree `i` from `c_j`:
/// with `q = 2g + 2i - 2j - 1`,
/// `M_0 = D_{1,2}⋯D_{1,q} · D_{q+1,q+2} D_{q+3,q+4} ⋯ D_{2g-2,2g-1}` and
/// `M_{r+1}` is `M_r` with `D_{1,q-r}` replaced by `D_{q-r,q-r+1}`.
/// Every `M_r` has degree `i + 2g - 2 - j` and lives on `C_g^{2g-1}`.
pub fn faber_monomials(g: u32, i: usize, j: usize) -> Result<Vec<TautMonomial>> {
    check_genus(g)?;
    let n = 2 * g as usize - 1;
    let q = 2 * (g as i64) + 2 * i as i64 - 2 * j as i64 - 1;
    if q < 1 || q > n as i64 {
        return invalid(format!(
            "q = 2g+2i-2j-1 = {q} must lie in 1..={n} (g={g}, i={i}, j={j})"
        ));
    }
    let q = q as usize;
    let mut pairs: Vec<(usize, usize)> = (2..=q).map(|k| (1, k)).collect();
    pairs.extend((q + 1..n).step_by(2).map(|k| (k, k + 1)));
    let mut out = vec![TautMonomial::diagonals(n, &pairs)];
    for r in 0..q.saturating_sub(2) {
        let k = q - r;
        let pos = pairs
            .iter()
            .position(|&p| p == (1, k))
            .expect("D_(1,q-r) present by construction");
        pairs[pos] = (k, k + 1);
        out.push(TautMonomial::diagonals(n, &pairs));
    }
    Ok(out)
}

/// `π_*(M · c_j(F_{2g-1} - E))` down to `C_g`, before λ-elimination.
///
/// Points are forgotten from the last one down using
/// `π_{n*}(P c_k(F_n)) = π_{n*}(P) c_k(F_{n-1}) + π_{n*}(P(K_n - Δ_n)) c_{k-1}(F_{n-1})`,
/// so `c_j(F_n)` is never expanded. Classes of degree above `g + m - 2` on
/// `C_g^m` vanish and are dropped on the way.
pub fn pushdown_class(g: u32, j: usize, m: &TautMonomial) -> Result<TautExpression> {
    check_genus(g)?;
    let n = m.points();
    if n == 0 {
        return invalid("the monomial must live on C_g^n with n ≥ 1");
    }
    // state[k] = P_k with the class to push equal to Σ_k P_k c_k(F_current)
    let mut state: Vec<TautExpression> = vec![TautExpression::zero(g, n); j + 1];
    for l in 0..=j.min(g as usize) {
        let sign = if l % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        state[j - l] = TautExpression::zero(g, n);
        state[j - l].add_term(m.mul(&TautMonomial::lambda(n, l)), sign);
    }
    state.truncate(n + 1);
    for cur in (2..=n).rev() {
        let factor = k_minus_delta(g, cur);
        let mut next: Vec<TautExpression> = vec![TautExpression::zero(g, cur - 1); cur];
        for (k, p) in state.iter().enumerate() {
            if p.is_zero() || vanishes(g, cur, p, k) {
                continue;
            }
            if k < cur {
                next[k].add(&p.pushforward(cur)?);
            }
            if k >= 1 {
                next[k - 1].add(&p.mul(&factor).pushforward(cur)?);
            }
        }
        state = next;
    }
    let mut out = state
        .first()
        .cloned()
        .unwrap_or_else(|| TautExpression::zero(g, 1));
    if let Some(p1) = state.get(1) {
        out.add(&p1.mul_monomial(&TautMonomial::k(1, 1, 1), &Rational::one()));
    }
    Ok(out)
}

/// Whether `P · c_k(F_m)` is zero for degree reasons on `C_g^m`.
fn vanishes(g: u32, m: usize, p: &TautExpression, k: usize) -> bool {
    let Some((t, _)) = p.terms().into_iter().next() else {
        return true;
    };
    t.degree() + k > g as usize + m - 2
}

/// Provenance of a relation vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    /// Push-down of `M · c_j(F_{2g-1} - E)`.
    Faber { j: usize, monomial: String },
    /// A lower-degree relation multiplied by a monomial of `R(C_g)`.
    Product {
        multiplier: String,
        source: Box<Recipe>,
    },
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Faber { j, monomial } => write!(f, "c_{j} * {monomial}"),
            Recipe::Product { multiplier, source } => write!(f, "{multiplier} * ({source})"),
        }
    }
}

/// A relation `Σ c_k N_k = 0` in `R^i(C_g)`, indexed by
/// `enumerate_cg_monomials(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub genus: u32,
    pub degree: usize,
    pub coefficients: Vec<Rational>,
    pub recipe: Recipe,
}

impl Relation {
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn basis(&self) -> Vec<CgMonomial> {
        enumerate_cg_monomials(self.degree)
    }

    /// Primitive integer vector whose entry on the `<_*`-largest monomial
    /// present is positive.
    pub fn normalized(&self) -> Vec<BigInt> {
        let mut v = integer_row(&self.coefficients);
        let lead = v.iter().rposition(|x| !x.is_zero());
        normalize_integer_vector(&mut v, lead);
        v
    }

    /// Whether `self` and `other` agree up to a nonzero scalar.
    pub fn proportional_to(&self, other: &[Rational]) -> bool {
        if other.len() != self.coefficients.len() {
            return false;
        }
        let mut ratio: Option<Rational> = None;
        for (a, b) in self.coefficients.iter().zip(other) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let r = a / b;
                    match &ratio {
                        None => ratio = Some(r),
                        Some(x) if *x == r => {}
                        Some(_) => return false,
                    }
                }
                _ => return false,
            }
        }
        ratio.is_some()
    }
}

fn write_linear(f: &mut fmt::Formatter<'_>, terms: &[(Rational, String)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (idx, (c, label)) in terms.iter().enumerate() {
        let abs = c.abs();
        match (idx, c.is_negative()) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if label == "1" {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{label}")?;
        } else {
            write!(f, "{abs}*{label}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Relation {
    /// Terms from the `<_*`-largest monomial down, e.g.
    /// `42*K^2 - 21/2*K*k1 + 7/48*k1^2 = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = self.basis();
        let terms: Vec<(Rational, String)> = basis
            .iter()
            .zip(&self.coefficients)
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c.clone(), m.to_string()))
            .collect();
        write_linear(f, &terms)?;
        write!(f, " = 0")
    }
}

/// Coefficient vector of a class on `C_g` in the basis of degree-`i` monomials.
fn vectorize(
    e: &TautExpression,
    i: usize,
    index: &HashMap<CgMonomial, usize>,
) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); index.len()];
    for (m, c) in e.terms() {
        if m.points() != 1 || m.diagonal_pairs().next().is_some() || !m.lambda_part().is_zero() {
            return Err(Error::Internal(format!("unexpected term {m} on C_g")));
        }
        let key = CgMonomial::new(m.k_exponent(1), m.kappa_part().clone());
        if key.degree() != i {
            return Err(Error::Internal(format!(
                "term {m} has degree {} instead of {i}",
                key.degree()
            )));
        }
        let pos = index[&key];
        v[pos] += c;
    }
    Ok(v)
}

/// Flips the sign so the entry on the `<_*`-largest monomial present is positive.
fn orient(v: &mut [Rational]) {
    if v.iter()
        .rev()
        .find(|x| !x.is_zero())
        .is_some_and(Signed::is_negative)
    {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
}

fn basis_index(basis: &[CgMonomial]) -> HashMap<CgMonomial, usize> {
    basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect()
}

/// The relation in `R^i(C_g)` obtained by pushing `M · c_j(F_{2g-1} - E)`
/// down to `C_g` and eliminating λ, signed so that the coefficient of the
/// `<_*`-largest monomial present is positive.
pub fn push_relation(g: u32, i: usize, j: usize, m: &TautMonomial) -> Result<Relation> {
    check_genus(g)?;
    let n = 2 * g as usize - 1;
    if m.points() != n {
        return invalid(format!("M must live on C_g^{n}, got C_g^{}", m.points()));
    }
    if j < g as usize {
        return invalid(format!(
            "c_j(F_{n} - E) vanishes only for j ≥ g = {g}; got j = {j}"
        ));
    }
    if m.degree() + j != i + 2 * g as usize - 2 {
        return invalid(format!(
            "deg M = {} but relations in degree {i} from c_{j} need deg M = {}",
            m.degree(),
            (i + 2 * g as usize - 2) as i64 - j as i64
        ));
    }
    let pushed = pushdown_class(g, j, m)?.lambda_to_kappa();
    let basis = enumerate_cg_monomials(i);
    let mut coefficients = vectorize(&pushed, i, &basis_index(&basis))?;
    orient(&mut coefficients);
    Ok(Relation {
        genus: g,
        degree: i,
        coefficients,
        recipe: Recipe::Faber {
            j,
            monomial: m.to_string(),
        },
    })
}

/// Limits on the relation search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest `j - g` tried.
    pub max_j_offset: usize,
    /// Also multiply lower-degree relations by monomials of `R(C_g)`.
    pub ideal_closure: bool,
    /// Cap on the number of push-downs per degree.
    pub max_attempts: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_j_offset: 4,
            ideal_closure: true,
            max_attempts: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// The relations found span the whole kernel of the pairing.
    Complete,
    BudgetExhausted,
}

/// The relations discovered in one degree.
#[derive(Clone, Debug)]
pub struct RelationSpace {
    pub genus: u32,
    pub degree: usize,
    pub basis: Vec<CgMonomial>,
    /// Linearly independent relations in discovery order.
    pub relations: Vec<Relation>,
    /// Kernel dimension of the pairing, the most relations can reach.
    pub target: usize,
    /// Push-downs performed.
    pub attempts: usize,
    pub status: SearchStatus,
    space: RowSpace,
}

impl RelationSpace {
    pub fn rank(&self) -> usize {
        self.relations.len()
    }

    /// `dim R^i(C_g)` is at most this.
    pub fn upper_bound(&self) -> usize {
        self.basis.len() - self.rank()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.space.contains(v)
    }

    /// Reduced echelon form; see [`reduced_forms`].
    pub fn reduced_forms(&self) -> Vec<String> {
        reduced_forms(&self.basis, &self.relations)
    }
}

/// Column preference for solved forms: monomials with more factors are
/// eliminated first and pure powers of `K` last, so the survivors are the
/// simplest classes.
fn elimination_order(basis: &[CgMonomial]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&k| {
        let m = &basis[k];
        (m.kappa.is_zero(), std::cmp::Reverse(m.factor_count()), k)
    });
    order
}

/// Solved forms `N = Σ c N'` of a relation set, one per pivot, e.g.
/// `K*k1 = 6*K^2 + 7/9*k2`.
pub fn reduced_forms(basis: &[CgMonomial], relations: &[Relation]) -> Vec<String> {
    let mut space = RowSpace::with_order(elimination_order(basis));
    for r in relations {
        space.insert(&r.coefficients);
    }
    space
        .basis()
        .into_iter()
        .map(|(pc, row)| {
            let rhs: Vec<(Rational, String)> = (0..basis.len())
                .rev()
                .filter(|&c| c != pc && !row[c].is_zero())
                .map(|c| (-row[c].clone(), basis[c].to_string()))
                .collect();
            struct Rhs<'a>(&'a [(Rational, String)]);
            impl fmt::Display for Rhs<'_> {
                fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                    write_linear(f, self.0)
                }
            }
            format!("{} = {}", basis[pc], Rhs(&rhs))
        })
        .collect()
}

/// Drives relation generation degree by degree for one genus.
pub struct RelationSearch<'a> {
    table: &'a LiuXuTable,
    genus: u32,
    budget: Budget,
    rank_options: RankOptions,
    spaces: Vec<RelationSpace>,
    progress: Option<Progress<'a>>,
}

type Progress<'a> = Box<dyn Fn(&str) + Sync + 'a>;

impl<'a> RelationSearch<'a> {
    pub fn new(table: &'a LiuXuTable, genus: u32, budget: Budget) -> Result<Self> {
        check_genus(genus)?;
        Ok(RelationSearch {
            table,
            genus,
            budget,
            rank_options: RankOptions::default(),
            spaces: Vec::new(),
            progress: None,
        })
    }

    pub fn with_rank_options(mut self, opts: RankOptions) -> Self {
        self.rank_options = opts;
        self
    }

    pub fn with_progress(mut self, f: impl Fn(&str) + Sync + 'a) -> Self {
        self.progress = Some(Box::new(f));
        self
    }

    fn note(&self, msg: &str) {
        if let Some(f) = &self.progress {
            f(msg);
        }
    }

    /// Searches every degree up to `i` (inclusive) not yet searched and
    /// returns the space for degree `i`.
    pub fn run_to(&mut self, i: usize) -> Result<&RelationSpace> {
        if i >= self.genus as usize {
            return invalid(format!("degree must lie in 0..={}", self.genus - 1));
        }
        while self.spaces.len() <= i {
            let d = self.spaces.len();
            let space = self.search_degree(d)?;
            self.spaces.push(space);
        }
        Ok(&self.spaces[i])
    }

    pub fn spaces(&self) -> &[RelationSpace] {
        &self.spaces
    }

    fn search_degree(&self, i: usize) -> Result<RelationSpace> {
        let g = self.genus;
        let basis = enumerate_cg_monomials(i);
        let q = build_q_matrix(self.table, g, i)?;
        let rank = q_rank(self.table, g, i, &self.rank_options)?.rank;
        let target = basis.len() - rank;
        let mut out = RelationSpace {
            genus: g,
            degree: i,
            basis: basis.clone(),
            relations: Vec::new(),
            target,
            attempts: 0,
            status: SearchStatus::BudgetExhausted,
            space: RowSpace::new(basis.len()),
        };
        let accept = |out: &mut RelationSpace, rel: Relation| -> Result<()> {
            check_against_pairing(&rel, &q.entries)?;
            if out.space.insert(&rel.coefficients) {
                out.relations.push(rel);
            }
            Ok(())
        };

        if self.budget.ideal_closure && i > 0 {
            let index = basis_index(&basis);
            for lower in &self.spaces[..i] {
                if out.rank() == target {
                    break;
                }
                for mult in enumerate_cg_monomials(i - lower.degree) {
                    for rel in &lower.relations {
                        if out.rank() == target {
                            break;
                        }
                        let mut v = vec![Rational::zero(); basis.len()];
                        for (m, c) in lower.basis.iter().zip(&rel.coefficients) {
                            if !c.is_zero() {
                                v[index[&m.mul(&mult)]] += c;
                            }
                        }
                        orient(&mut v);
                        accept(
                            &mut out,
                            Relation {
                                genus: g,
                                degree: i,
                                coefficients: v,
                                recipe: Recipe::Product {
                                    multiplier: mult.to_string(),
                                    source: Box::new(rel.recipe.clone()),
                                },
                            },
                        )?;
                    }
                }
            }
        }

        let g_us = g as usize;
        let j_max = (g_us + self.budget.max_j_offset).min(g_us + i.saturating_sub(1));
        let mut j = g_us;
        while out.rank() < target && j <= j_max && i > 0 {
            let mut family = faber_monomials(g, i, j)?;
            if let Some(cap) = self.budget.max_attempts {
                family.truncate(cap.saturating_sub(out.attempts));
            }
            if family.is_empty() {
                break;
            }
            self.note(&format!(
                "g={g} degree {i}: pushing {} monomial(s) with c_{j}",
                family.len()
            ));
            let results: Vec<Result<Relation>> = family
                .par_iter()
                .map(|m| push_relation(g, i, j, m))
                .collect();
            out.attempts += results.len();
            for rel in results {
                accept(&mut out, rel?)?;
            }
            j += 1;
        }
        if out.rank() == target {
            out.status = SearchStatus::Complete;
        }
        self.note(&format!(
            "g={g} degree {i}: {} of {target} relation(s) found",
            out.rank()
        ));
        Ok(out)
    }
}

/// A relation must lie in the kernel of the pairing `Q_{g,i}`.
fn check_against_pairing(rel: &Relation, q: &[Vec<Rational>]) -> Result<()> {
    let cols = q.first().map_or(0, Vec::len);
    for c in 0..cols {
        let mut s = Rational::zero();
        for (x, row) in rel.coefficients.iter().zip(q) {
            if !x.is_zero() {
                s += x * &row[c];
            }
        }
        if !s.is_zero() {
            return Err(Error::Internal(format!(
                "relation {} ({}) pairs nontrivially with column {c}",
                rel, rel.recipe
            )));
        }
    }
    Ok(())
}

/// Relations in `R^i(C_g)` found within `budget`.
pub fn relation_space(
    table: &LiuXuTable,
    g: u32,
    i: usize,
    budget: &Budget,
) -> Result<RelationSpace> {
    let mut search = RelationSearch::new(table, g, budget.clone())?;
    search.run_to(i).cloned()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBound {
    pub degree: usize,
    pub monomials: usize,
    /// Rank of the pairing.
    pub lower: usize,
    /// Monomials minus independent relations.
    pub upper: usize,
    pub matched: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Gorenstein,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Gorenstein => write!(f, "GORENSTEIN"),
            Verdict::Undetermined => write!(f, "UNDETERMINED"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    pub genus: u32,
    pub degrees: Vec<DegreeBound>,
    pub verdict: Verdict,
}

impl GorensteinReport {
    /// Graded dimensions when every degree is matched.
    pub fn dimensions(&self) -> Option<Vec<usize>> {
        (self.verdict == Verdict::Gorenstein)
            .then(|| self.degrees.iter().map(|d| d.lower).collect())
    }
}

/// Compares pairing ranks with relation counts in every degree `0..g`.
/// Degrees above `g-1` vanish, so matching bounds everywhere plus a
/// one-dimensional top degree give a Gorenstein ring with perfect pairing.
/// A search that falls short yields `UNDETERMINED`, never a negative answer.
pub fn gorenstein_check(
    table: &LiuXuTable,
    g: u32,
    budget: &Budget,
    opts: &RankOptions,
) -> Result<GorensteinReport> {
    let mut search = RelationSearch::new(table, g, budget.clone())?.with_rank_options(opts.clone());
    gorenstein_with(&mut search)
}

/// As [`gorenstein_check`], reusing a configured search.
pub fn gorenstein_with(search: &mut RelationSearch<'_>) -> Result<GorensteinReport> {
    let g = search.genus;
    search.run_to(g as usize - 1)?;
    let degrees: Vec<DegreeBound> = search
        .spaces()
        .iter()
        .map(|s| {
            let lower = s.basis.len() - s.target;
            DegreeBound {
                degree: s.degree,
                monomials: s.basis.len(),
                lower,
                upper: s.upper_bound(),
                matched: lower == s.upper_bound(),
            }
        })
        .collect();
    if let Some(bad) = degrees.iter().find(|d| d.upper < d.lower) {
        return Err(Error::Internal(format!(
            "degree {}: upper bound {} below lower bound {}",
            bad.degree, bad.upper, bad.lower
        )));
    }
    let top_ok = degrees.last().is_some_and(|d| d.lower == 1);
    let verdict = if top_ok && degrees.iter().all(|d| d.matched) {
        Verdict::Gorenstein
    } else {
        Verdict::Undetermined
    };
    Ok(GorensteinReport {
        genus: g,
        degrees,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rat;

    #[test]
    fn faber_family_shapes() {
        let ms = faber_monomials(2, 1, 2).unwrap();
        assert_eq!(ms, vec![TautMonomial::diagonals(3, &[(2, 3)])]);
        let ms = faber_monomials(3, 2, 3).unwrap();
        assert_eq!(
            ms,
            vec![
                TautMonomial::diagonals(5, &[(1, 2), (1, 3), (4, 5)]),
                TautMonomial::diagonals(5, &[(1, 2), (3, 4), (4, 5)]),
            ]
        );
        for g in 2..=5u32 {
            for i in 1..g as usize {
                for j in g as usize..g as usize + i {
                    for m in faber_monomials(g, i, j).unwrap() {
                        assert_eq!(m.degree(), i + 2 * g as usize - 2 - j);
                    }
                }
            }
        }
        assert!(faber_monomials(3, 2, 5).is_err());
        assert!(faber_monomials(3, 2, 1).is_err());
    }

    #[test]
    fn genus_two_relation() {
        let m = TautMonomial::diagonals(3, &[(2, 3)]);
        let r = push_relation(2, 1, 2, &m).unwrap();
        // basis: k1, K
        assert_eq!(r.coefficients, vec![rat(5, 3), rat(0, 1)]);
        assert_eq!(r.to_string(), "5/3*k1 = 0");
    }

    #[test]
    fn genus_three_relations() {
        // basis: k2, k1^2, K*k1, K^2
        let m = TautMonomial::diagonals(5, &[(1, 2), (1, 3), (4, 5)]);
        let r = push_relation(3, 2, 3, &m).unwrap();
        assert!(
            r.proportional_to(&[rat(0, 1), rat(7, 48), rat(-21, 2), rat(42, 1)]),
            "{r}"
        );
        let m = TautMonomial::diagonals(5, &[(1, 2), (3, 4), (4, 5)]);
        let r = push_relation(3, 2, 3, &m).unwrap();
        assert!(
            r.proportional_to(&[rat(-6, 1), rat(41, 48), rat(-63, 2), rat(126, 1)]),
            "{r}"
        );
        let m = TautMonomial::diagonals(5, &[(2, 3), (4, 5)]);
        let r = push_relation(3, 2, 4, &m).unwrap();
        assert!(
            r.proportional_to(&[rat(-20, 1), rat(47, 12), rat(-14, 1), rat(56, 1)]),
            "{r}"
        );
    }

    #[test]
    fn precondition_errors() {
        let m = TautMonomial::diagonals(3, &[(2, 3)]);
        assert!(push_relation(2, 1, 1, &m).is_err());
        assert!(push_relation(2, 2, 2, &m).is_err());
        assert!(push_relation(2, 1, 2, &TautMonomial::one(2)).is_err());
    }

    #[test]
    fn low_genus_spaces() {
        let t = LiuXuTable::new();
        let b = Budget::default();
        let s = relation_space(&t, 2, 1, &b).unwrap();
        assert_eq!((s.rank(), s.status), (1, SearchStatus::Complete));
        let s = relation_space(&t, 3, 2, &b).unwrap();
        assert_eq!((s.rank(), s.status), (3, SearchStatus::Complete));
        let mut forms = s.reduced_forms();
        forms.sort();
        assert_eq!(forms, vec!["K*k1 = 4*K^2", "k1^2 = 0", "k2 = 0"]);
    }
}
