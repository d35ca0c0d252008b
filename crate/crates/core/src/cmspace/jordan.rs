//! Jordan-stratum bookkeeping: block matrices with tau^2-strings of
//! eigenvalues, the twisted Sylvester operator `S_J(F) = tau J F - tau^{-1}
//! F J`, and the closed-form dimension counts checked against brute force.
//!
//! `vec` ordering is row-major throughout; the image-membership golden
//! values depend on it.

use super::CmError;
use crate::exact::Rat;
use crate::linalg::Matrix;
use serde::{Deserialize, Serialize};

/// One eigenvalue with its tau^2-string of partitions: string `s`
/// (0-based) carries Jordan blocks at eigenvalue `lambda * tau^{2s}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanEntry {
    pub eigenvalue: Rat,
    pub strings: Vec<Vec<usize>>,
}

impl JordanEntry {
    pub fn size(&self) -> usize {
        self.strings.iter().map(|s| s.iter().sum::<usize>()).sum()
    }
}

/// A full symbolic Jordan form: a list of entries whose eigenvalues are
/// pairwise non-resonant (`lambda_i / lambda_j != tau^{2c}` for `|c| <= n`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanData {
    pub entries: Vec<JordanEntry>,
}

impl JordanData {
    pub fn new(entries: Vec<JordanEntry>) -> Result<Self, CmError> {
        if entries.is_empty() {
            return Err(CmError::BadJordanData("no entries".into()));
        }
        for e in &entries {
            if e.eigenvalue.is_zero() {
                return Err(CmError::BadJordanData("zero eigenvalue".into()));
            }
            if e.strings.is_empty() {
                return Err(CmError::BadJordanData("entry with no strings".into()));
            }
            for s in &e.strings {
                if s.is_empty() || s.contains(&0) {
                    return Err(CmError::BadJordanData("empty partition part".into()));
                }
                if s.windows(2).any(|w| w[0] < w[1]) {
                    return Err(CmError::BadJordanData(
                        "partition must be weakly decreasing".into(),
                    ));
                }
            }
        }
        Ok(JordanData { entries })
    }

    pub fn single(eigenvalue: Rat, strings: Vec<Vec<usize>>) -> Result<Self, CmError> {
        JordanData::new(vec![JordanEntry {
            eigenvalue,
            strings,
        }])
    }

    pub fn total_size(&self) -> usize {
        self.entries.iter().map(JordanEntry::size).sum()
    }

    /// Cross-entry non-resonance: `lambda_i / lambda_j != tau^{2c}` for
    /// `|c| <= n` and `i != j`.
    pub fn check_hypothesis(&self, tau: &Rat) -> Result<(), CmError> {
        let n = self.total_size() as i64;
        for (i, a) in self.entries.iter().enumerate() {
            for (j, b) in self.entries.iter().enumerate() {
                if i == j {
                    continue;
                }
                let ratio = &a.eigenvalue / &b.eigenvalue;
                for c in -n..=n {
                    if ratio == tau.pow(2 * c) {
                        return Err(CmError::BadJordanData(
                            "eigenvalues are tau^2-resonant across entries".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn jordan_block(eigenvalue: &Rat, size: usize) -> Matrix {
    Matrix::from_fn(size, size, |r, c| {
        if r == c {
            eigenvalue.clone()
        } else if r + 1 == c {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

fn block_diag(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(Matrix::n_rows).sum();
    let mut out = Matrix::zeros(n, n);
    let mut offset = 0;
    for b in blocks {
        for r in 0..b.n_rows() {
            for c in 0..b.n_cols() {
                out[(offset + r, offset + c)] = b[(r, c)].clone();
            }
        }
        offset += b.n_rows();
    }
    out
}

/// Realizes the symbolic data as a block-diagonal matrix: entry by entry,
/// string `s` contributes blocks `J_k(lambda * tau^{2s})` in order.
pub fn jordan_matrix(data: &JordanData, tau: &Rat) -> Result<Matrix, CmError> {
    data.check_hypothesis(tau)?;
    let mut blocks = Vec::new();
    for entry in &data.entries {
        for (s, string) in entry.strings.iter().enumerate() {
            let eig = &entry.eigenvalue * &tau.pow(2 * s as i64);
            for &k in string {
                blocks.push(jordan_block(&eig, k));
            }
        }
    }
    Ok(block_diag(&blocks))
}

/// The matrix of `F -> tau J F - tau^{-1} F J` acting on row-major `vec(F)`.
pub fn sylvester_matrix(j: &Matrix, tau: &Rat) -> Matrix {
    assert!(j.is_square());
    let n = j.n_rows();
    let tau_inv = tau.inv().expect("tau nonzero");
    Matrix::from_fn(n * n, n * n, |rc, cc| {
        let (i, jj) = (rc / n, rc % n);
        let (k, l) = (cc / n, cc % n);
        let mut acc = Rat::zero();
        if jj == l {
            acc = acc + tau * &j[(i, k)];
        }
        if i == k {
            acc = acc - &tau_inv * &j[(l, jj)];
        }
        acc
    })
}

/// Exact nullity of the twisted Sylvester operator.
pub fn ker_dim_bruteforce(j: &Matrix, tau: &Rat) -> usize {
    let n = j.n_rows();
    n * n - sylvester_matrix(j, tau).rank()
}

/// Closed-form kernel dimension: per entry,
/// `sum_{s} sum_{i,j} min(k_s^i, k_{s+1}^j)` over consecutive strings;
/// distinct entries contribute independently.
pub fn ker_dim_formula(data: &JordanData) -> usize {
    data.entries
        .iter()
        .map(|entry| {
            entry
                .strings
                .windows(2)
                .map(|pair| {
                    pair[0]
                        .iter()
                        .map(|&a| pair[1].iter().map(|&b| a.min(b)).sum::<usize>())
                        .sum::<usize>()
                })
                .sum::<usize>()
        })
        .sum()
}

/// Closed-form dimension of the centralizer of a single-eigenvalue Jordan
/// matrix with the given partition: `sum_{i,j} min(k^i, k^j)`.
pub fn stab_dim_formula(partition: &[usize]) -> usize {
    partition
        .iter()
        .map(|&a| partition.iter().map(|&b| a.min(b)).sum::<usize>())
        .sum()
}

/// Brute-force dimension of `{F : [F, J] = 0}`.
pub fn stab_commutant_bruteforce(j: &Matrix) -> usize {
    let n = j.n_rows();
    let commutator = Matrix::from_fn(n * n, n * n, |rc, cc| {
        let (i, jj) = (rc / n, rc % n);
        let (k, l) = (cc / n, cc % n);
        let mut acc = Rat::zero();
        if jj == l {
            acc = acc + &j[(i, k)];
        }
        if i == k {
            acc = acc - &j[(l, jj)];
        }
        acc
    });
    n * n - commutator.rank()
}

/// Brute-force dimension of the joint commutant `{R : [R,X] = [R,Y] = 0}`.
pub fn pair_commutant_dimension(x: &Matrix, y: &Matrix) -> usize {
    let n = x.n_rows();
    let block = |m: &Matrix| {
        Matrix::from_fn(n * n, n * n, |rc, cc| {
            let (i, jj) = (rc / n, rc % n);
            let (k, l) = (cc / n, cc % n);
            let mut acc = Rat::zero();
            if jj == l {
                acc = acc + &m[(i, k)];
            }
            if i == k {
                acc = acc - &m[(l, jj)];
            }
            acc
        })
    };
    let stacked = Matrix::vstack(&[&block(x), &block(y)]);
    n * n - stacked.rank()
}

/// Strict positivity of `sum_s sum_{i,j} min(k_s^i, k_s^j) - sum_s
/// sum_{i,j} min(k_s^i, k_{s+1}^j)` for a single-eigenvalue datum.
pub fn ineq_check(strings: &[Vec<usize>]) -> (i64, bool) {
    let stab: i64 = strings.iter().map(|s| stab_dim_formula(s) as i64).sum();
    let cross: i64 = strings
        .windows(2)
        .map(|pair| {
            pair[0]
                .iter()
                .map(|&a| pair[1].iter().map(|&b| a.min(b) as i64).sum::<i64>())
                .sum::<i64>()
        })
        .sum();
    let lhs = stab - cross;
    (lhs, lhs > 0)
}

/// Brute-force membership of `Z` in the image of the twisted Sylvester
/// operator of `J`: rank of the operator matrix is unchanged by adjoining
/// `vec(Z)` as an extra column.
pub fn im_membership(z: &Matrix, j: &Matrix, tau: &Rat) -> bool {
    let n = j.n_rows();
    assert_eq!((z.n_rows(), z.n_cols()), (n, n));
    let s = sylvester_matrix(j, tau);
    let vec_z: Vec<Rat> = (0..n).flat_map(|r| z.row(r).to_vec()).collect();
    let augmented = s.hstack(&Matrix::from_columns(&[vec_z]));
    s.rank() == augmented.rank()
}

/// Closed-form image conditions for a single-eigenvalue datum.
///
/// Membership in the image is the vanishing of the trace pairing against the
/// kernel of the reversed-twist operator, whose basis elements are shifted
/// diagonals with geometric `tau^2` weights. Concretely: for each
/// consecutive string pair `(s, s+1)` and block pair with row length `k`,
/// column length `m`, the conditions are
/// `sum_{l=0}^{u-1} Z_{ij; k-u+1+l, 1+l} tau^{2l} = 0` for
/// `u = 1..min(k, m)` (antidiagonals starting in the first column, weights
/// increasing down the diagonal). The brute-force test is normative; this
/// is the structured cross-check.
pub fn im_membership_closed_form(z: &Matrix, strings: &[Vec<usize>], tau: &Rat) -> bool {
    let string_offsets: Vec<usize> = strings
        .iter()
        .scan(0usize, |acc, s| {
            let here = *acc;
            *acc += s.iter().sum::<usize>();
            Some(here)
        })
        .collect();
    for s in 0..strings.len().saturating_sub(1) {
        let row_string = &strings[s];
        let col_string = &strings[s + 1];
        let mut row_block = string_offsets[s];
        for &k in row_string {
            let mut col_block = string_offsets[s + 1];
            for &m in col_string {
                for u in 1..=k.min(m) {
                    let mut acc = Rat::zero();
                    for l in 0..u {
                        // 1-based block coordinates (k - u + 1 + l, 1 + l).
                        let p = k - u + 1 + l;
                        let q = 1 + l;
                        acc = acc
                            + &z[(row_block + p - 1, col_block + q - 1)] * &tau.pow(2 * l as i64);
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
                col_block += m;
            }
            row_block += k;
        }
    }
    true
}

/// All partitions of `k`, parts weakly decreasing.
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=k.min(max)).rev() {
            prefix.push(part);
            rec(k - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

fn compositions(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in 1..=k {
            prefix.push(first);
            rec(k - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut out);
    out
}

/// All string-lists of total size `size`: for every composition into string
/// sizes, every choice of a partition per string.
pub fn enumerate_entry_shapes(size: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for comp in compositions(size) {
        let per_string: Vec<Vec<Vec<usize>>> = comp.iter().map(|&c| partitions(c)).collect();
        let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![]];
        for options in &per_string {
            let mut next = Vec::new();
            for partial in &acc {
                for opt in options {
                    let mut extended = partial.clone();
                    extended.push(opt.clone());
                    next.push(extended);
                }
            }
            acc = next;
        }
        out.extend(acc);
    }
    out
}

/// All multi-entry shapes of total size `total`: compositions into entry
/// sizes crossed with entry shapes.
pub fn enumerate_jordan_shapes(total: usize) -> Vec<Vec<Vec<Vec<usize>>>> {
    let mut out = Vec::new();
    for comp in compositions(total) {
        let per_entry: Vec<Vec<Vec<Vec<usize>>>> =
            comp.iter().map(|&c| enumerate_entry_shapes(c)).collect();
        let mut acc: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![]];
        for options in &per_entry {
            let mut next = Vec::new();
            for partial in &acc {
                for opt in options {
                    let mut extended = partial.clone();
                    extended.push(opt.clone());
                    next.push(extended);
                }
            }
            acc = next;
        }
        out.extend(acc);
    }
    out
}
