//! Monomials in `K_i`, `D_{i,j}`, κ and λ on the fibre power `C_g^n`.

use std::fmt;

use crate::combinatorics::MultiIndex;

/// A monomial `Π K_p^{e_p} · Π D_{i,j} · κ_m · λ_l` on `C_g^n`.
///
/// Points are numbered `1..=n`. Diagonals are kept as a sorted multiset of
/// pairs `(i, j)` with `i < j`. The λ part is an exponent vector over
/// `λ_1, λ_2, …`.
///
/// Field order gives the canonical term order: diagonals, then K-exponents,
/// then κ, then λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TautMonomial {
    pub(crate) points: usize,
    pub(crate) diagonals: Vec<(u8, u8)>,
    pub(crate) k_exponents: Vec<u32>,
    pub(crate) kappa: MultiIndex,
    pub(crate) lambda: MultiIndex,
}

/// One application of a diagonal identity, for step-by-step rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `D_{i,p} D_{j,p} = D_{i,j} D_{i,p}` for `i < j < p`.
    MergeDiagonals { i: usize, j: usize, p: usize },
    /// `D_{i,p}^2 = -K_i D_{i,p}` for `i < p`.
    SelfIntersection { i: usize, p: usize },
    /// `K_p D_{i,p} = K_i D_{i,p}` for `i < p`.
    MoveCanonical { i: usize, p: usize },
}

impl TautMonomial {
    /// The unit class on `C_g^n`.
    pub fn one(points: usize) -> Self {
        assert!(points < 256, "too many points");
        TautMonomial {
            points,
            diagonals: Vec::new(),
            k_exponents: vec![0; points],
            kappa: MultiIndex::zero(),
            lambda: MultiIndex::zero(),
        }
    }

    /// `K_p^e`.
    pub fn k(points: usize, p: usize, e: u32) -> Self {
        let mut m = Self::one(points);
        m.check_point(p);
        m.k_exponents[p - 1] = e;
        m
    }

    /// `D_{i,j}`.
    pub fn diagonal(points: usize, i: usize, j: usize) -> Self {
        let mut m = Self::one(points);
        m.push_diagonal(i, j);
        m
    }

    /// A product of diagonals.
    pub fn diagonals(points: usize, pairs: &[(usize, usize)]) -> Self {
        let mut m = Self::one(points);
        for &(i, j) in pairs {
            m.push_diagonal(i, j);
        }
        m
    }

    pub fn kappa(points: usize, kappa: MultiIndex) -> Self {
        let mut m = Self::one(points);
        m.kappa = kappa;
        m
    }

    /// `λ_i`; `λ_0 = 1`.
    pub fn lambda(points: usize, i: usize) -> Self {
        let mut m = Self::one(points);
        if i > 0 {
            m.lambda = MultiIndex::unit(i);
        }
        m
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn diagonal_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.diagonals
            .iter()
            .map(|&(i, j)| (i as usize, j as usize))
    }

    pub fn k_exponent(&self, p: usize) -> u32 {
        self.k_exponents[p - 1]
    }

    pub fn kappa_part(&self) -> &MultiIndex {
        &self.kappa
    }

    pub fn lambda_part(&self) -> &MultiIndex {
        &self.lambda
    }

    pub fn with_kappa(mut self, kappa: MultiIndex) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_lambda(mut self, lambda: MultiIndex) -> Self {
        self.lambda = lambda;
        self
    }

    fn check_point(&self, p: usize) {
        assert!(
            (1..=self.points).contains(&p),
            "point {p} outside 1..={}",
            self.points
        );
    }

    pub(crate) fn push_diagonal(&mut self, i: usize, j: usize) {
        self.check_point(i);
        self.check_point(j);
        assert_ne!(i, j, "D_{{i,i}} is not a diagonal class");
        let pair = (i.min(j) as u8, i.max(j) as u8);
        let pos = self.diagonals.partition_point(|&d| d <= pair);
        self.diagonals.insert(pos, pair);
    }

    fn remove_diagonal(&mut self, i: usize, j: usize) -> bool {
        let pair = (i.min(j) as u8, i.max(j) as u8);
        match self.diagonals.iter().position(|&d| d == pair) {
            Some(pos) => {
                self.diagonals.remove(pos);
                true
            }
            None => false,
        }
    }

    fn diagonal_count(&self, i: usize, j: usize) -> usize {
        let pair = (i.min(j) as u8, i.max(j) as u8);
        self.diagonals.iter().filter(|&&d| d == pair).count()
    }

    /// Total degree: K-powers, diagonals, `|κ|` and the weighted λ degree.
    pub fn degree(&self) -> usize {
        self.k_exponents.iter().map(|&e| e as usize).sum::<usize>()
            + self.diagonals.len()
            + self.kappa.degree()
            + self.lambda.degree()
    }

    /// Whether the monomial involves point `p` through `K_p` or some `D_{·,p}`.
    pub fn touches(&self, p: usize) -> bool {
        self.k_exponents[p - 1] > 0
            || self
                .diagonals
                .iter()
                .any(|&(i, j)| i as usize == p || j as usize == p)
    }

    /// Raw product, without normalisation.
    pub fn mul(&self, other: &TautMonomial) -> TautMonomial {
        assert_eq!(self.points, other.points, "ambient spaces differ");
        let mut out = self.clone();
        for &(i, j) in &other.diagonals {
            out.push_diagonal(i as usize, j as usize);
        }
        for (a, b) in out.k_exponents.iter_mut().zip(&other.k_exponents) {
            *a += b;
        }
        out.kappa = out.kappa.add(&other.kappa);
        out.lambda = out.lambda.add(&other.lambda);
        out
    }

    /// The same monomial pulled back to `C_g^{points}` (extra points unused).
    pub fn lift(&self, points: usize) -> TautMonomial {
        assert!(points >= self.points);
        let mut out = self.clone();
        out.points = points;
        out.k_exponents.resize(points, 0);
        out
    }

    /// Canonical form, returned with its sign.
    ///
    /// Diagonals are grouped into blocks of coinciding points. Each block of
    /// size `s` with `e` diagonal factors becomes the star of diagonals from a
    /// centre point, all K-powers of the block move to the centre, and the
    /// `e - (s - 1)` excess factors become `(-K_centre)^{e-s+1}`. The centre is
    /// the smallest point of the block other than `last`, so that with respect
    /// to `last` the result carries either a single `D_{i,last}` or a pure
    /// power of `K_last`.
    pub fn canonical(&self, last: Option<usize>) -> (bool, TautMonomial) {
        if self.diagonals.is_empty() {
            return (false, self.clone());
        }
        let n = self.points;
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(i, j) in &self.diagonals {
            let a = find(&mut parent, i as usize);
            let b = find(&mut parent, j as usize);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        // Per root: size, edge count, K total, and chosen centre.
        let mut size = vec![0usize; n + 1];
        let mut edges = vec![0usize; n + 1];
        let mut ksum = vec![0u32; n + 1];
        let mut centre = vec![0usize; n + 1];
        for p in 1..=n {
            let r = find(&mut parent, p);
            size[r] += 1;
            ksum[r] += self.k_exponents[p - 1];
            if Some(p) != last && (centre[r] == 0 || p < centre[r]) {
                centre[r] = p;
            }
        }
        for &(i, _) in &self.diagonals {
            let r = find(&mut parent, i as usize);
            edges[r] += 1;
        }
        let mut out = TautMonomial {
            points: n,
            diagonals: Vec::with_capacity(self.diagonals.len()),
            k_exponents: vec![0; n],
            kappa: self.kappa.clone(),
            lambda: self.lambda.clone(),
        };
        let mut negative = false;
        for p in 1..=n {
            let r = find(&mut parent, p);
            if size[r] == 1 {
                out.k_exponents[p - 1] = self.k_exponents[p - 1];
                continue;
            }
            let c = centre[r];
            if p == c {
                let excess = edges[r] + 1 - size[r];
                out.k_exponents[p - 1] = ksum[r] + excess as u32;
                negative ^= excess % 2 == 1;
            } else {
                out.diagonals.push((c.min(p) as u8, c.max(p) as u8));
            }
        }
        out.diagonals.sort_unstable();
        (negative, out)
    }

    /// Every rule application available on this monomial.
    pub fn applicable_rules(&self) -> Vec<Rule> {
        let mut rules = Vec::new();
        for p in 1..=self.points {
            let lower: Vec<usize> = {
                let mut v: Vec<usize> = self
                    .diagonals
                    .iter()
                    .filter(|&&(_, b)| b as usize == p)
                    .map(|&(a, _)| a as usize)
                    .collect();
                v.dedup();
                v
            };
            for (x, &i) in lower.iter().enumerate() {
                if self.diagonal_count(i, p) >= 2 {
                    rules.push(Rule::SelfIntersection { i, p });
                }
                if self.k_exponents[p - 1] > 0 {
                    rules.push(Rule::MoveCanonical { i, p });
                }
                for &j in &lower[x + 1..] {
                    rules.push(Rule::MergeDiagonals { i, j, p });
                }
            }
        }
        rules
    }

    /// Applies one rule; returns `(negated, result)` or `None` if the rule
    /// does not match.
    pub fn apply_rule(&self, rule: Rule) -> Option<(bool, TautMonomial)> {
        let mut m = self.clone();
        match rule {
            Rule::MergeDiagonals { i, j, p } => {
                if !(i < j && j < p) || m.diagonal_count(i, p) == 0 {
                    return None;
                }
                if !m.remove_diagonal(j, p) {
                    return None;
                }
                m.push_diagonal(i, j);
                Some((false, m))
            }
            Rule::SelfIntersection { i, p } => {
                if i >= p || m.diagonal_count(i, p) < 2 {
                    return None;
                }
                m.remove_diagonal(i, p);
                m.k_exponents[i - 1] += 1;
                Some((true, m))
            }
            Rule::MoveCanonical { i, p } => {
                if i >= p || m.k_exponents[p - 1] == 0 || m.diagonal_count(i, p) == 0 {
                    return None;
                }
                m.k_exponents[p - 1] -= 1;
                m.k_exponents[i - 1] += 1;
                Some((false, m))
            }
        }
    }

    /// Drops point `p` from a monomial that does not involve it, renumbering
    /// the points above `p`.
    pub(crate) fn drop_point(&self, p: usize) -> TautMonomial {
        debug_assert!(!self.touches(p));
        let shift = |x: u8| if x as usize > p { x - 1 } else { x };
        let mut k = self.k_exponents.clone();
        k.remove(p - 1);
        let mut diagonals: Vec<(u8, u8)> = self
            .diagonals
            .iter()
            .map(|&(i, j)| (shift(i), shift(j)))
            .collect();
        diagonals.sort_unstable();
        TautMonomial {
            points: self.points - 1,
            diagonals,
            k_exponents: k,
            kappa: self.kappa.clone(),
            lambda: self.lambda.clone(),
        }
    }

    /// For a monomial canonical with respect to `p`, splits off the part at
    /// `p`: either `Some(i)` for a single `D_{i,p}`, or `None` when the only
    /// factor at `p` is `K_p^e` (possibly `e = 0`).
    pub(crate) fn take_point(&self, p: usize) -> (Option<usize>, u32, TautMonomial) {
        let mut rest = self.clone();
        let e = rest.k_exponents[p - 1];
        rest.k_exponents[p - 1] = 0;
        let partner = rest
            .diagonals
            .iter()
            .position(|&(i, j)| i as usize == p || j as usize == p);
        let partner = partner.map(|pos| {
            let (i, j) = rest.diagonals.remove(pos);
            if i as usize == p {
                j as usize
            } else {
                i as usize
            }
        });
        (partner, e, rest)
    }
}

impl fmt::Display for TautMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (p, &e) in self.k_exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("K{}", p + 1)),
                e => factors.push(format!("K{}^{}", p + 1, e)),
            }
        }
        for &(i, j) in &self.diagonals {
            factors.push(format!("D{i},{j}"));
        }
        if !self.kappa.is_zero() {
            factors.push(self.kappa.monomial_label());
        }
        for (i, &e) in self.lambda.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("l{}", i + 1)),
                e => factors.push(format!("l{}^{}", i + 1, e)),
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_merges_paths_into_stars() {
        let path = TautMonomial::diagonals(3, &[(1, 2), (2, 3)]);
        let star = TautMonomial::diagonals(3, &[(1, 2), (1, 3)]);
        assert_eq!(path.canonical(None), star.canonical(None));
        assert_eq!(star.canonical(None), (false, star.clone()));
    }

    #[test]
    fn canonical_excess_edges_give_minus_k() {
        let sq = TautMonomial::diagonals(2, &[(1, 2), (1, 2)]);
        let (neg, c) = sq.canonical(None);
        assert!(neg);
        assert_eq!(
            c,
            TautMonomial::diagonal(2, 1, 2).mul(&TautMonomial::k(2, 1, 1))
        );
        let tri = TautMonomial::diagonals(3, &[(1, 2), (1, 3), (2, 3)]);
        let (neg, c) = tri.canonical(None);
        assert!(neg);
        assert_eq!(c.k_exponent(1), 1);
        assert_eq!(c.diagonals.len(), 2);
    }

    #[test]
    fn canonical_respects_last_point() {
        // With point 1 treated as last, the star is centred at 2.
        let m = TautMonomial::diagonals(3, &[(1, 2), (1, 3)]).mul(&TautMonomial::k(3, 1, 2));
        let (_, c) = m.canonical(Some(1));
        assert_eq!(c.diagonals, vec![(1, 2), (2, 3)]);
        assert_eq!(c.k_exponent(2), 2);
        assert_eq!(c.k_exponent(1), 0);
    }

    #[test]
    fn rules_match_identities() {
        let m = TautMonomial::diagonals(3, &[(1, 3), (2, 3)]);
        let (neg, r) = m
            .apply_rule(Rule::MergeDiagonals { i: 1, j: 2, p: 3 })
            .unwrap();
        assert!(!neg);
        assert_eq!(r, TautMonomial::diagonals(3, &[(1, 2), (1, 3)]));

        let sq = TautMonomial::diagonals(2, &[(1, 2), (1, 2)]);
        let (neg, r) = sq
            .apply_rule(Rule::SelfIntersection { i: 1, p: 2 })
            .unwrap();
        assert!(neg);
        assert_eq!(
            r,
            TautMonomial::diagonal(2, 1, 2).mul(&TautMonomial::k(2, 1, 1))
        );

        let kd = TautMonomial::diagonal(2, 1, 2).mul(&TautMonomial::k(2, 2, 1));
        let (_, r) = kd.apply_rule(Rule::MoveCanonical { i: 1, p: 2 }).unwrap();
        assert_eq!(
            r,
            TautMonomial::diagonal(2, 1, 2).mul(&TautMonomial::k(2, 1, 1))
        );

        assert!(kd
            .apply_rule(Rule::SelfIntersection { i: 1, p: 2 })
            .is_none());
    }

    #[test]
    fn degree_counts_everything() {
        let m = TautMonomial::diagonals(4, &[(1, 2), (3, 4)])
            .mul(&TautMonomial::k(4, 2, 3))
            .with_kappa(MultiIndex::new(vec![1, 1]))
            .with_lambda(MultiIndex::unit(2));
        assert_eq!(m.degree(), 2 + 3 + 3 + 2);
        assert_eq!(m.to_string(), "K2^3*D1,2*D3,4*k1*k2*l2");
    }
}
