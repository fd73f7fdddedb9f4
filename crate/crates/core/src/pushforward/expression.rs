//! ℚ-linear combinations of [`TautMonomial`]s and their pushforwards.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use super::monomial::TautMonomial;
use crate::combinatorics::{rat_int, MultiIndex};
use crate::error::{invalid, Result};
use crate::Rational;

/// A class in `R(C_g^n)`; `n = 0` means `R(M_g)`.
///
/// Terms are stored in canonical form (see [`TautMonomial::canonical`]) and
/// never carry a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautExpression {
    genus: u32,
    points: usize,
    terms: HashMap<TautMonomial, Rational>,
}

impl TautExpression {
    pub fn zero(genus: u32, points: usize) -> Self {
        TautExpression {
            genus,
            points,
            terms: HashMap::new(),
        }
    }

    pub fn one(genus: u32, points: usize) -> Self {
        Self::monomial(genus, TautMonomial::one(points))
    }

    pub fn monomial(genus: u32, m: TautMonomial) -> Self {
        let mut e = Self::zero(genus, m.points());
        e.add_term(m, Rational::one());
        e
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`TautExpression::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, m: &TautMonomial) -> Rational {
        let (neg, c) = m.canonical(None);
        let v = self.terms.get(&c).cloned().unwrap_or_else(Rational::zero);
        if neg {
            -v
        } else {
            v
        }
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> Vec<(&TautMonomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// Adds `c·m`, normalising `m`.
    pub fn add_term(&mut self, m: TautMonomial, c: Rational) {
        assert_eq!(m.points(), self.points, "ambient spaces differ");
        let (neg, m) = m.canonical(None);
        self.add_canonical(m, if neg { -c } else { c });
    }

    fn add_canonical(&mut self, m: TautMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&mut self, other: &TautExpression) {
        assert_eq!(self.points, other.points, "ambient spaces differ");
        for (m, c) in &other.terms {
            self.add_canonical(m.clone(), c.clone());
        }
    }

    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    pub fn mul(&self, other: &TautExpression) -> TautExpression {
        assert_eq!(self.points, other.points, "ambient spaces differ");
        let mut out = TautExpression::zero(self.genus, self.points);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &TautMonomial, c: &Rational) -> TautExpression {
        let mut out = TautExpression::zero(self.genus, self.points);
        for (a, ca) in &self.terms {
            out.add_term(a.mul(m), ca * c);
        }
        out
    }

    /// Pullback along the map forgetting the extra points `points+1..`.
    pub fn lift(&self, points: usize) -> TautExpression {
        let mut out = TautExpression::zero(self.genus, points);
        for (m, c) in &self.terms {
            out.add_canonical(m.lift(points), c.clone());
        }
        out
    }

    /// Whether every term has total degree `d`.
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Pushforward along `C_g^n → C_g^{n-1}` forgetting point `p`; points
    /// above `p` are renumbered down by one.
    pub fn pushforward(&self, p: usize) -> Result<TautExpression> {
        if p == 0 || p > self.points {
            return invalid(format!("cannot forget point {p} on C_g^{}", self.points));
        }
        let mut out = TautExpression::zero(self.genus, self.points - 1);
        let last = p == self.points;
        for (m, c) in &self.terms {
            // Stored terms are already canonical with respect to the last point.
            if last {
                if let Some((m, factor)) = push_canonical(self.genus, m, p) {
                    out.add_canonical(m, c * factor);
                }
                continue;
            }
            let (neg, m) = m.canonical(Some(p));
            let c = if neg { -c.clone() } else { c.clone() };
            if let Some((m, factor)) = push_canonical(self.genus, &m, p) {
                out.add_term(m, c * factor);
            }
        }
        Ok(out)
    }

    /// Replaces every λ-monomial by its κ-polynomial.
    pub fn lambda_to_kappa(&self) -> TautExpression {
        let lambdas = lambda_polynomials(self.genus);
        let mut out = TautExpression::zero(self.genus, self.points);
        for (m, c) in &self.terms {
            let poly = lambda_monomial_in_kappa(&lambdas, m.lambda_part());
            let base = m.clone().with_lambda(MultiIndex::zero());
            for (k, ck) in poly {
                let t = base.clone().with_kappa(base.kappa_part().add(&k));
                out.add_canonical(t, c * ck);
            }
        }
        out
    }
}

/// Pushes a monomial that is canonical with respect to `p`.
pub(crate) fn push_canonical(
    genus: u32,
    m: &TautMonomial,
    p: usize,
) -> Option<(TautMonomial, Rational)> {
    let (partner, e, rest) = m.take_point(p);
    match (partner, e) {
        // M · D_{i,p} ↦ M
        (Some(_), 0) => Some((rest.drop_point(p), Rational::one())),
        (Some(_), _) => unreachable!("K_p next to D_(i,p) after canonicalisation"),
        // M ↦ 0, κ_{-1} = 0
        (None, 0) => None,
        // M · K_p ↦ κ_0 M = (2g-2) M
        (None, 1) => Some((rest.drop_point(p), rat_int(2 * genus as i64 - 2))),
        // M · K_p^e ↦ κ_{e-1} M
        (None, e) => {
            let dropped = rest.drop_point(p);
            let kappa = dropped.kappa_part().with_factor(e as usize - 1);
            Some((dropped.with_kappa(kappa), Rational::one()))
        }
    }
}

impl fmt::Display for TautExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().into_iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{abs}*{m}")?;
        }
        Ok(())
    }
}

/// A polynomial in the κ-classes.
pub type KappaPolynomial = BTreeMap<MultiIndex, Rational>;

/// `λ_0, …, λ_g` as κ-polynomials, from
/// `Σ λ_i t^i = exp(Σ_{i≥1} B_{2i} κ_{2i-1} t^{2i-1} / (2i(2i-1)))`.
pub fn lambda_polynomials(genus: u32) -> Vec<KappaPolynomial> {
    let g = genus as usize;
    let mut exponent = KappaPolynomial::new();
    let mut i = 1;
    while 2 * i - 1 <= g {
        let b = crate::combinatorics::bernoulli(2 * i).expect("even index");
        let c = b / rat_int((2 * i * (2 * i - 1)) as i64);
        exponent.insert(MultiIndex::unit(2 * i - 1), c);
        i += 1;
    }
    // exp(S) truncated at degree g: Σ_{n ≤ g} S^n / n!.
    let mut total = KappaPolynomial::new();
    total.insert(MultiIndex::zero(), Rational::one());
    let mut power = total.clone();
    for n in 1..=g {
        power = truncated_product(&power, &exponent, g);
        for (m, c) in &power {
            let v = c / rat_int(crate::combinatorics::factorial(n as u64));
            *total.entry(m.clone()).or_insert_with(Rational::zero) += v;
        }
    }
    let mut out = vec![KappaPolynomial::new(); g + 1];
    for (m, c) in total {
        if !c.is_zero() {
            out[m.degree()].insert(m, c);
        }
    }
    out
}

fn truncated_product(
    a: &KappaPolynomial,
    b: &KappaPolynomial,
    max_degree: usize,
) -> KappaPolynomial {
    let mut out = KappaPolynomial::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.add(mb);
            if m.degree() > max_degree {
                continue;
            }
            *out.entry(m).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Expands `Π λ_i^{l_i}`; any `λ_i` with `i > g` vanishes.
fn lambda_monomial_in_kappa(lambdas: &[KappaPolynomial], l: &MultiIndex) -> KappaPolynomial {
    let mut acc = KappaPolynomial::new();
    acc.insert(MultiIndex::zero(), Rational::one());
    for (idx, &e) in l.exponents().iter().enumerate() {
        let i = idx + 1;
        for _ in 0..e {
            let Some(poly) = lambdas.get(i) else {
                return KappaPolynomial::new();
            };
            acc = truncated_product(&acc, poly, usize::MAX);
        }
    }
    acc
}
