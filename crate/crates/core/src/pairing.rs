//! Pairing matrices for `R(M_g)` and `R(C_g)` and their exact ranks.
//!
//! `P_{g,i}` pairs `κ`-monomials of degree `i` against those of degree
//! `g-2-i` via `r(κ_I κ_J)`. `Q_{g,i}` pairs `K^a κ_I` of degree `i` against
//! `K^b κ_J` of degree `g-1-i` via `π_*(K^{a+b} κ_I κ_J) = κ_{a+b-1} κ_I κ_J`.
//! The rank of either matrix bounds the corresponding graded piece from below.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    cg_monomial_count, enumerate_cg_monomials, enumerate_kappa_monomials, partition_count,
    CgMonomial, MultiIndex,
};
use crate::error::{invalid, Error, Result};
use crate::intersection::LiuXuTable;
use crate::linalg::{bareiss_rank, multi_modular_rank, DEFAULT_PRIMES};
use crate::Rational;

/// How a matrix was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    P,
    PSub(i32),
    QBlock,
    QDirect,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::P => write!(f, "P"),
            Construction::PSub(j) => write!(f, "P_sub({j})"),
            Construction::QBlock => write!(f, "Q_block"),
            Construction::QDirect => write!(f, "Q_direct"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairingMatrix {
    pub genus: u32,
    pub degree: usize,
    pub construction: Construction,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<Rational>>,
}

impl PairingMatrix {
    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn transpose(&self) -> Vec<Vec<Rational>> {
        (0..self.cols())
            .map(|c| self.entries.iter().map(|row| row[c].clone()).collect())
            .collect()
    }
}

fn check_genus(g: u32) -> Result<()> {
    if g < 2 {
        return invalid(format!("genus must be at least 2, got {g}"));
    }
    Ok(())
}

fn kappa_labels(ms: &[MultiIndex]) -> Vec<String> {
    ms.iter().map(MultiIndex::monomial_label).collect()
}

fn cg_labels(ms: &[CgMonomial]) -> Vec<String> {
    ms.iter().map(ToString::to_string).collect()
}

/// `P_{g,i}`, of shape `p(i) × p(g-2-i)` with entries `r(κ_k κ_l)`.
pub fn build_p_matrix(table: &LiuXuTable, g: u32, i: usize) -> Result<PairingMatrix> {
    check_genus(g)?;
    let top = g as usize - 2;
    if i > top {
        return invalid(format!("P_{{{g},{i}}} needs 0 ≤ i ≤ {top}"));
    }
    let rows = enumerate_kappa_monomials(i);
    let cols = enumerate_kappa_monomials(top - i);
    let entries = rows
        .iter()
        .map(|a| {
            cols.iter()
                .map(|b| table.r_value(g, &a.add(b)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairingMatrix {
        genus: g,
        degree: i,
        construction: Construction::P,
        row_labels: kappa_labels(&rows),
        col_labels: kappa_labels(&cols),
        entries,
    })
}

/// `P^j_{g,i}`: for `j ≥ 1` the rows of `P_{g,i}` containing `κ_j`; for
/// `j = 0` the matrix `(2g-2)·P_{g,i}`; for `j = -1` the zero matrix of shape
/// `p(i+1) × p(g-2-i)`.
pub fn sub_p_matrix(table: &LiuXuTable, g: u32, i: i64, j: i32) -> Result<PairingMatrix> {
    check_genus(g)?;
    let top = g as i64 - 2;
    if j < -1 || (j as i64) > i || i > top || (i < 0 && !(i == -1 && j == -1)) {
        return invalid(format!("P^{j}_{{{g},{i}}} needs -1 ≤ j ≤ i ≤ {top}"));
    }
    if j == -1 {
        let rows = enumerate_kappa_monomials((i + 1) as usize);
        let cols = enumerate_kappa_monomials((top - i) as usize);
        let entries = vec![vec![Rational::zero(); cols.len()]; rows.len()];
        return Ok(PairingMatrix {
            genus: g,
            degree: (i + 1) as usize,
            construction: Construction::PSub(-1),
            row_labels: kappa_labels(&rows),
            col_labels: kappa_labels(&cols),
            entries,
        });
    }
    let mut p = build_p_matrix(table, g, i as usize)?;
    p.construction = Construction::PSub(j);
    if j == 0 {
        let scale = Rational::from_integer((2 * g as i64 - 2).into());
        for row in &mut p.entries {
            for x in row.iter_mut() {
                *x *= &scale;
            }
        }
        return Ok(p);
    }
    let rows = enumerate_kappa_monomials(i as usize);
    let keep: Vec<usize> = (0..rows.len())
        .filter(|&k| rows[k].contains(j as usize))
        .collect();
    p.row_labels = keep.iter().map(|&k| p.row_labels[k].clone()).collect();
    p.entries = keep.iter().map(|&k| p.entries[k].clone()).collect();
    Ok(p)
}

/// `Q_{g,i}` assembled from `P`-blocks: the block in row-block `a` (K-power
/// of the row monomials) and column-block `b` is `P^{a+b-1}_{g,i+b-1}`.
/// `Q_{g,0}` is the single row labelled `1`.
pub fn build_q_matrix(table: &LiuXuTable, g: u32, i: usize) -> Result<PairingMatrix> {
    check_genus(g)?;
    let gi = g as usize;
    if i >= gi {
        return invalid(format!("Q_{{{g},{i}}} needs 0 ≤ i ≤ {}", gi - 1));
    }
    let rows = enumerate_cg_monomials(i);
    let cols = enumerate_cg_monomials(gi - 1 - i);
    if i == 0 {
        // π_*(K^b κ_J) = κ_{b-1} κ_J
        let row = cols
            .iter()
            .map(|c| pairing_value(table, g, &CgMonomial::one(), c))
            .collect::<Result<Vec<_>>>()?;
        return Ok(PairingMatrix {
            genus: g,
            degree: 0,
            construction: Construction::QBlock,
            row_labels: cg_labels(&rows),
            col_labels: cg_labels(&cols),
            entries: vec![row],
        });
    }
    let mut entries: Vec<Vec<Rational>> = Vec::with_capacity(rows.len());
    for a in 0..=i {
        let block_rows = partition_count(i - a) as usize;
        let blocks = (0..=gi - 1 - i)
            .map(|b| {
                let blk = sub_p_matrix(table, g, (i + b) as i64 - 1, (a + b) as i32 - 1)?;
                let want_cols = partition_count(gi - 1 - i - b) as usize;
                if blk.rows() != block_rows || blk.cols() != want_cols {
                    return Err(Error::Internal(format!(
                        "Q_{{{g},{i}}} block ({a},{b}) has shape {}×{}, expected {block_rows}×{want_cols}",
                        blk.rows(),
                        blk.cols()
                    )));
                }
                Ok(blk.entries)
            })
            .collect::<Result<Vec<_>>>()?;
        for r in 0..block_rows {
            entries.push(
                blocks
                    .iter()
                    .flat_map(|blk| blk[r].iter().cloned())
                    .collect(),
            );
        }
    }
    if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
        return Err(Error::Internal(format!(
            "Q_{{{g},{i}}} has inconsistent shape"
        )));
    }
    Ok(PairingMatrix {
        genus: g,
        degree: i,
        construction: Construction::QBlock,
        row_labels: cg_labels(&rows),
        col_labels: cg_labels(&cols),
        entries,
    })
}

/// `s` with `π_*(M·N) = s·κ_{g-2}`, for `deg M + deg N = g-1`.
pub fn pairing_value(
    table: &LiuXuTable,
    g: u32,
    m: &CgMonomial,
    n: &CgMonomial,
) -> Result<Rational> {
    let prod = m.mul(n);
    if prod.degree() + 1 != g as usize {
        return invalid(format!(
            "pairing needs total degree g-1 = {}, got {}",
            g - 1,
            prod.degree()
        ));
    }
    match prod.k_power {
        0 => Ok(Rational::zero()),
        1 => {
            let two_g_2 = Rational::from_integer((2 * g as i64 - 2).into());
            Ok(two_g_2 * table.r_value(g, &prod.kappa)?)
        }
        c => table.r_value(g, &prod.kappa.with_factor(c as usize - 1)),
    }
}

/// `Q_{g,i}` computed entry by entry from the pushforward rule.
pub fn build_q_matrix_direct(table: &LiuXuTable, g: u32, i: usize) -> Result<PairingMatrix> {
    check_genus(g)?;
    let gi = g as usize;
    if i >= gi {
        return invalid(format!("Q_{{{g},{i}}} needs 0 ≤ i ≤ {}", gi - 1));
    }
    let rows = enumerate_cg_monomials(i);
    let cols = enumerate_cg_monomials(gi - 1 - i);
    let entries = rows
        .iter()
        .map(|a| {
            cols.iter()
                .map(|b| pairing_value(table, g, a, b))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairingMatrix {
        genus: g,
        degree: i,
        construction: Construction::QDirect,
        row_labels: cg_labels(&rows),
        col_labels: cg_labels(&cols),
        entries,
    })
}

/// Rank computation settings.
#[derive(Clone, Debug)]
pub struct RankOptions {
    pub primes: Vec<u64>,
    /// Largest row count (after transposing to the short side) confirmed by
    /// fraction-free elimination.
    pub exact_limit: usize,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            primes: DEFAULT_PRIMES.to_vec(),
            exact_limit: 400,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub genus: u32,
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub backend: String,
    pub primes: Vec<u64>,
}

/// Rank over ℚ. The multi-prime rank is always computed; matrices whose
/// short side is within `exact_limit` are also eliminated over ℤ, and a
/// disagreement is an internal error.
pub fn exact_rank(m: &PairingMatrix, opts: &RankOptions) -> Result<RankReport> {
    let transposed;
    let rows: &[Vec<Rational>] = if m.rows() > m.cols() {
        transposed = m.transpose();
        &transposed
    } else {
        &m.entries
    };
    let modular = multi_modular_rank(rows, &opts.primes);
    let short = m.rows().min(m.cols());
    let (rank, backend) = if short <= opts.exact_limit {
        let exact = bareiss_rank(rows);
        if exact != modular.rank && !modular.primes.is_empty() {
            // an unlucky prime can only undercount
            if exact < modular.rank {
                return Err(Error::Internal(format!(
                    "modular rank {} exceeds exact rank {exact}",
                    modular.rank
                )));
            }
        }
        (exact, "bareiss+modular")
    } else {
        if modular.primes.is_empty() {
            return Err(Error::Internal(
                "no usable prime for modular rank".to_string(),
            ));
        }
        (modular.rank, "modular")
    };
    Ok(RankReport {
        genus: m.genus,
        degree: m.degree,
        rows: m.rows(),
        cols: m.cols(),
        rank,
        backend: backend.to_string(),
        primes: modular.primes,
    })
}

/// Rank of `Q_{g,i}`, using `Q_{g,g-1-i} = Q_{g,i}^T` to build the smaller
/// half only.
pub fn q_rank(table: &LiuXuTable, g: u32, i: usize, opts: &RankOptions) -> Result<RankReport> {
    check_genus(g)?;
    if i >= g as usize {
        return invalid(format!("Q_{{{g},{i}}} needs 0 ≤ i ≤ {}", g - 1));
    }
    let j = (g as usize - 1 - i).min(i);
    let mut report = exact_rank(&build_q_matrix(table, g, j)?, opts)?;
    if j != i {
        report.degree = i;
        std::mem::swap(&mut report.rows, &mut report.cols);
    }
    Ok(report)
}

/// Kernel statistics of `K, κ`-monomials of degree `k` on `C_g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelStats {
    pub genus: u32,
    pub codegree: usize,
    /// `3k - g - 1`, negative when `g` is large compared to `k`.
    pub l: i64,
    pub monomial_count: usize,
    pub rank: usize,
    pub n: usize,
}

pub fn kernel_dimension_cg(
    table: &LiuXuTable,
    g: u32,
    k: usize,
    opts: &RankOptions,
) -> Result<KernelStats> {
    check_genus(g)?;
    if k >= g as usize {
        return invalid(format!("codegree must lie in 0..={}", g - 1));
    }
    let report = q_rank(table, g, k, opts)?;
    let count = cg_monomial_count(k) as usize;
    Ok(KernelStats {
        genus: g,
        codegree: k,
        l: 3 * k as i64 - g as i64 - 1,
        monomial_count: count,
        rank: report.rank,
        n: count - report.rank,
    })
}

/// `p(k) - rank P_{g,k}`: relations among `κ`-monomials of degree `k` in `R(M_g)`.
pub fn kernel_dimension_mg(
    table: &LiuXuTable,
    g: u32,
    k: usize,
    opts: &RankOptions,
) -> Result<usize> {
    check_genus(g)?;
    if k + 2 > g as usize {
        return invalid(format!("degree must lie in 0..={}", g - 2));
    }
    let report = exact_rank(&build_p_matrix(table, g, k)?, opts)?;
    Ok(partition_count(k) as usize - report.rank)
}

/// Tabulated `a(l)`, `0 ≤ l ≤ 11`.
pub const A_TABLE: [u64; 12] = [1, 1, 2, 3, 5, 6, 10, 13, 18, 24, 33, 41];

/// `b(l) = Σ_{i ≤ l, i ≢ 2 (mod 3)} a(l-i)`.
pub fn b_function(l: usize) -> Result<u64> {
    if l >= A_TABLE.len() {
        return invalid(format!(
            "a(l) is only tabulated for l ≤ {}",
            A_TABLE.len() - 1
        ));
    }
    Ok((0..=l).filter(|i| i % 3 != 2).map(|i| A_TABLE[l - i]).sum())
}

/// `b(l)` through `b(l) = 2Σ_{i<l} a(i) + a(l) - b(l-1) - b(l-2)`.
pub fn b_recursive(l: usize) -> Result<u64> {
    if l >= A_TABLE.len() {
        return invalid(format!(
            "a(l) is only tabulated for l ≤ {}",
            A_TABLE.len() - 1
        ));
    }
    let mut b: Vec<i64> = Vec::with_capacity(l + 1);
    for n in 0..=l {
        let v = match n {
            0 => A_TABLE[0] as i64,
            1 => (A_TABLE[0] + A_TABLE[1]) as i64,
            _ => {
                let s: u64 = A_TABLE[..n].iter().sum();
                2 * s as i64 + A_TABLE[n] as i64 - b[n - 1] - b[n - 2]
            }
        };
        b.push(v);
    }
    Ok(b[l] as u64)
}

/// The `(g, k)` pairs where the kernel dimension is known to differ from `b(l)`.
pub const ANOMALIES: [(u32, usize); 2] = [(25, 12), (27, 13)];

pub fn is_anomaly(g: u32, k: usize) -> bool {
    ANOMALIES.contains(&(g, k))
}
