//! Classes on the fibre powers `C_g^n` and Faber-style relation generation.
//!
//! Monomials in `K_i` and `D_{i,j}` are rewritten with the diagonal identities
//!
//! ```text
//! D_{i,n} D_{j,n} = D_{i,j} D_{i,n}      (i < j < n)
//! D_{i,n}^2       = -K_i D_{i,n}         (i < n)
//! K_n D_{i,n}     = K_i D_{i,n}          (i < n)
//! ```
//!
//! after which forgetting point `n` is immediate:
//! `π_*(M·D_{i,n}) = M` and `π_*(M·K_n^k) = M·κ_{k-1}` with `κ_0 = 2g-2`,
//! `κ_{-1} = 0`.
//!
//! Relations in `R^i(C_g)` come from the vanishing of `c_j(F_n - E)` for
//! `n ≥ 2g-1`, `j ≥ n-g+1`, multiplied by a monomial and pushed down to `C_g`.

mod expression;
mod monomial;
mod relations;

pub use expression::{lambda_polynomials, KappaPolynomial, TautExpression};
pub use monomial::{Rule, TautMonomial};
pub use relations::{
    faber_monomials, gorenstein_check, gorenstein_with, push_relation, pushdown_class,
    reduced_forms, relation_space, Budget, DegreeBound, GorensteinReport, Recipe, Relation,
    RelationSearch, RelationSpace, SearchStatus, Verdict,
};

use num_traits::One;

use crate::error::{invalid, Result};
use crate::Rational;

/// Rewrites `m` so that, with respect to point `forget`, it is a class pulled
/// back from the other points times either a single `D_{i,forget}` or a power
/// of `K_forget`. Returns the sign picked up along the way.
pub fn normalize(m: &TautMonomial, forget: usize) -> Result<(Rational, TautMonomial)> {
    if forget == 0 || forget > m.points() {
        return invalid(format!("point {forget} not on C_g^{}", m.points()));
    }
    let (neg, c) = m.canonical(Some(forget));
    let sign = if neg {
        -Rational::one()
    } else {
        Rational::one()
    };
    Ok((sign, c))
}

/// Pushforward forgetting point `forget`.
pub fn pushforward(e: &TautExpression, forget: usize) -> Result<TautExpression> {
    e.pushforward(forget)
}

/// `K_n - Δ_n` on `C_g^n`, with `Δ_n = Σ_{i<n} D_{i,n}`.
pub fn k_minus_delta(genus: u32, n: usize) -> TautExpression {
    let mut e = TautExpression::monomial(genus, TautMonomial::k(n, n, 1));
    for i in 1..n {
        e.add_term(TautMonomial::diagonal(n, i, n), -Rational::one());
    }
    e
}

/// `c_k(F_n)`, the degree-`k` part of `(1+K_1)(1+K_2-Δ_2)⋯(1+K_n-Δ_n)`,
/// built with `c_k(F_n) = c_k(F_{n-1}) + (K_n - Δ_n) c_{k-1}(F_{n-1})`.
pub fn chern_f(genus: u32, n: usize, k: usize) -> Result<TautExpression> {
    if n == 0 {
        return invalid("F_n needs n ≥ 1");
    }
    // layer[k] = c_k(F_m) on C_g^m
    let mut layer = vec![TautExpression::one(genus, 1)];
    layer.push(TautExpression::monomial(genus, TautMonomial::k(1, 1, 1)));
    for m in 2..=n {
        let factor = k_minus_delta(genus, m);
        let lifted: Vec<TautExpression> = layer.iter().map(|e| e.lift(m)).collect();
        let mut next = Vec::with_capacity(lifted.len() + 1);
        for d in 0..=lifted.len().min(k) {
            let mut e = lifted
                .get(d)
                .cloned()
                .unwrap_or_else(|| TautExpression::zero(genus, m));
            if d >= 1 {
                e.add(&lifted[d - 1].mul(&factor));
            }
            next.push(e);
        }
        layer = next;
    }
    Ok(layer
        .get(k)
        .cloned()
        .unwrap_or_else(|| TautExpression::zero(genus, n)))
}

/// `c_k(F_n - E) = Σ_i (-1)^i λ_i c_{k-i}(F_n)`, with `λ_i = 0` for `i > g`.
pub fn chern_fe(genus: u32, n: usize, k: usize) -> Result<TautExpression> {
    let mut out = TautExpression::zero(genus, n);
    for i in 0..=k.min(genus as usize) {
        let c = chern_f(genus, n, k - i)?;
        let sign = if i % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        out.add(&c.mul_monomial(&TautMonomial::lambda(n, i), &sign));
    }
    Ok(out)
}

/// `λ`-elimination on an arbitrary expression.
pub fn lambda_to_kappa(e: &TautExpression) -> TautExpression {
    e.lambda_to_kappa()
}
