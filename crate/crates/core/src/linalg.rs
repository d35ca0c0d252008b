//! Exact dense linear algebra over [`Rat`].
//!
//! Rank goes through fraction-free (Bareiss) elimination on a
//! denominator-cleared integer copy, with exact pivot tests; solving,
//! nullspaces, and inverses use Gauss-Jordan over the rationals. Matrix
//! products skip zero entries of the left factor, which keeps products of
//! the sparse generator matrices cheap, and large products fan out across
//! rows when the `parallel` feature is enabled.

use crate::exact::Rat;
use crate::par;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Rat>>", into = "Vec<Vec<Rat>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Rat>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n_cols), "ragged rows");
        Matrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::int(x)).collect())
                .collect(),
        )
    }

    /// Rank-one outer product `u * v^T`.
    pub fn outer(u: &[Rat], v: &[Rat]) -> Self {
        Matrix::from_fn(u.len(), v.len(), |i, j| &u[i] * &v[j])
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn set_column(&mut self, c: usize, values: &[Rat]) {
        assert_eq!(values.len(), self.rows);
        for (r, v) in values.iter().enumerate() {
            self[(r, c)] = v.clone();
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn scale(&self, k: &Rat) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| k * x).collect(),
        }
    }

    pub fn trace(&self) -> Rat {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// First entry where the two matrices differ, as a relation witness.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self[(r, c)] != other[(r, c)] {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(blocks: &[&Matrix]) -> Matrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend(b.data.iter().cloned());
        }
        Matrix { rows, cols, data }
    }

    pub fn from_columns(cols: &[Vec<Rat>]) -> Matrix {
        assert!(!cols.is_empty());
        let rows = cols[0].len();
        assert!(cols.iter().all(|c| c.len() == rows));
        Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                m[(row, c)] = &m[(row, c)] * &inv;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        m[(r, c)] = &m[(r, c)] - &(&factor * &m[(row, c)]);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact rank by fraction-free (Bareiss) elimination with exact pivot
    /// tests. Rows are first cleared to integers; the integer elimination
    /// divides by the previous pivot, which is exact for this scheme.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let lcm = self
                    .row(r)
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                self.row(r)
                    .iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            for r in (row + 1)..self.rows {
                for c in (col + 1)..self.cols {
                    m[r][c] = (&m[row][col] * &m[r][c] - &m[r][col] * &m[row][c]) / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[row][col].clone();
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Basis of the right nullspace `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (col, p) in pivot_set.iter().enumerate() {
                if let Some(prow) = p {
                    vec[col] = -&r[(*prow, free)];
                }
            }
            basis.push(vec);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// Solves `A X = B` for a left factor with full column rank, returning
    /// `None` when some column of `B` is outside the column span of `A`.
    pub fn solve_many(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let (r, pivots) = self.hstack(b).rref();
        // Every pivot inside the A-block must sit on consecutive columns
        // 0..k and cover all of them (full column rank); pivots landing in
        // the B-block certify inconsistency.
        if pivots.len() < self.cols || pivots[..self.cols] != (0..self.cols).collect::<Vec<_>>() {
            return None;
        }
        if pivots.len() > self.cols {
            return None;
        }
        Some(Matrix::from_fn(self.cols, b.cols, |i, j| {
            r[(i, self.cols + j)].clone()
        }))
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in (col + 1)..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for c in col..n {
                    m[(r, c)] = &m[(r, c)] - &(&factor * &m[(col, c)]);
                }
            }
        }
        det
    }

    /// Monic characteristic polynomial `det(xI - A)` by the
    /// Faddeev-LeVerrier recurrence; returned as coefficients
    /// `c_0, ..., c_{n-1}, 1` in ascending degree.
    pub fn charpoly(&self) -> Vec<Rat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        if n == 0 {
            return coeffs;
        }
        let mut mk = self.clone();
        let mut c = -mk.trace();
        coeffs[n - 1] = c.clone();
        for k in 2..=n {
            let shifted = &mk + &Matrix::identity(n).scale(&c);
            mk = self * &shifted;
            c = -(mk.trace() / Rat::int(k as i64));
            coeffs[n - k] = c.clone();
        }
        coeffs
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let cols = rhs.cols;
        let rows_out: Vec<Vec<Rat>> = par::map_indexed(self.rows, |r| {
            let mut acc = vec![Rat::zero(); cols];
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = rhs.row(k);
                for (c, b) in rhs_row.iter().enumerate() {
                    if !b.is_zero() {
                        acc[c] = &acc[c] + &(a * b);
                    }
                }
            }
            acc
        });
        Matrix::from_rows(rows_out)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(r)
                    .iter()
                    .map(Rat::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        write!(f, "]")
    }
}

impl From<Matrix> for Vec<Vec<Rat>> {
    fn from(m: Matrix) -> Self {
        (0..m.rows).map(|r| m.row(r).to_vec()).collect()
    }
}

impl TryFrom<Vec<Vec<Rat>>> for Matrix {
    type Error = String;
    fn try_from(rows: Vec<Vec<Rat>>) -> Result<Self, Self::Error> {
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err("ragged matrix rows".to_string());
        }
        Ok(Matrix::from_rows(rows))
    }
}

/// Multiplies two polynomials given as ascending coefficient vectors.
pub fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Monic polynomial with the given roots and multiplicities, ascending
/// coefficients.
pub fn poly_from_roots(roots: &[(Rat, usize)]) -> Vec<Rat> {
    let mut acc = vec![Rat::one()];
    for (root, mult) in roots {
        for _ in 0..*mult {
            acc = poly_mul(&acc, &[-root, Rat::one()]);
        }
    }
    acc
}

pub fn poly_eval(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn poly_derivative(coeffs: &[Rat]) -> Vec<Rat> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| Rat::int(i as i64) * c)
        .collect()
}

fn poly_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Rat::is_zero) {
        p.pop();
    }
    p
}

/// Monic gcd of two rational polynomials (Euclid); `[1]` for coprime inputs.
pub fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = poly_trim(r);
    }
    if a.is_empty() {
        return a;
    }
    let lead = a.last().unwrap().inv().expect("nonzero leading coefficient");
    a.iter().map(|c| c * &lead).collect()
}

fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b.last().unwrap().inv().expect("nonzero divisor");
    while poly_trim(rem.clone()).len() > db {
        let rem_t = poly_trim(rem.clone());
        let shift = rem_t.len() - 1 - db;
        let factor = rem_t.last().unwrap() * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            rem[i + shift] = &rem[i + shift] - &(&factor * bc);
        }
        rem = poly_trim(rem);
        if rem.len() <= db {
            break;
        }
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn product_and_identity() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let id = Matrix::identity(2);
        assert_eq!(&a * &id, a);
        let b = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let ab = &a * &b;
        assert_eq!(ab, Matrix::from_int_rows(&[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn rank_and_nullspace() {
        let a = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Rat::is_zero));
        }
        assert_eq!(Matrix::zeros(3, 3).rank(), 0);
        assert_eq!(Matrix::identity(4).rank(), 4);
    }

    #[test]
    fn rank_matches_rref_pivot_count() {
        // Fraction-free rank against the Gauss-Jordan pivot count.
        let cases = [
            Matrix::from_int_rows(&[&[2, 0, 1], &[4, 0, 2], &[0, 5, 1]]),
            Matrix::from_rows(vec![
                vec![r(1, 2), r(1, 3)],
                vec![r(1, 4), r(1, 6)],
            ]),
            Matrix::from_int_rows(&[&[0, 0], &[0, 0]]),
        ];
        for m in cases {
            assert_eq!(m.rank(), m.rref().1.len());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_rows(vec![
            vec![r(1, 2), r(3, 1), r(0, 1)],
            vec![r(0, 1), r(1, 1), r(4, 5)],
            vec![r(7, 2), r(0, 1), r(1, 3)],
        ]);
        let inv = a.inverse().expect("invertible");
        assert_eq!(&a * &inv, Matrix::identity(3));
        assert_eq!(&inv * &a, Matrix::identity(3));
        let singular = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn solve_many_consistency() {
        let a = Matrix::from_int_rows(&[&[1, 0], &[1, 1], &[0, 2]]);
        // b in span of columns of a.
        let x = Matrix::from_int_rows(&[&[3], &[5]]);
        let b = &a * &x;
        assert_eq!(a.solve_many(&b).unwrap(), x);
        // b outside the span.
        let bad = Matrix::from_int_rows(&[&[1], &[0], &[0]]);
        assert!(a.solve_many(&bad).is_none());
    }

    #[test]
    fn determinant_and_charpoly() {
        let a = Matrix::from_int_rows(&[&[2, 1], &[1, 3]]);
        assert_eq!(a.det(), r(5, 1));
        // det(xI - A) = x^2 - 5x + 5.
        assert_eq!(a.charpoly(), vec![r(5, 1), r(-5, 1), r(1, 1)]);
        let roots_poly = poly_from_roots(&[(r(2, 1), 2), (r(-1, 3), 1)]);
        // (x-2)^2 (x+1/3) = x^3 - 11/3 x^2 + 8/3 x + 4/3.
        assert_eq!(
            roots_poly,
            vec![r(4, 3), r(8, 3), r(-11, 3), r(1, 1)]
        );
        let diag = Matrix::diagonal(&[r(2, 1), r(2, 1), r(-1, 3)]);
        assert_eq!(diag.charpoly(), roots_poly);
    }

    #[test]
    fn poly_gcd_detects_repeated_roots() {
        let sq = poly_from_roots(&[(r(1, 1), 2), (r(3, 1), 1)]);
        let g = poly_gcd(&sq, &poly_derivative(&sq));
        // gcd = (x - 1) exactly.
        assert_eq!(g, vec![r(-1, 1), r(1, 1)]);
        let squarefree = poly_from_roots(&[(r(1, 1), 1), (r(3, 1), 1)]);
        assert_eq!(
            poly_gcd(&squarefree, &poly_derivative(&squarefree)),
            vec![r(1, 1)]
        );
    }

    #[test]
    fn outer_product_rank() {
        let u = vec![r(1, 1), r(2, 1), r(-1, 2)];
        let v = vec![r(3, 1), r(5, 7)];
        let m = Matrix::outer(&u, &v);
        assert_eq!(m.rank(), 1);
        assert_eq!(m[(1, 1)], r(10, 7));
    }
}
