//! The matrix model of the multiplicative Calogero-Moser space.
//!
//! A point is a quadruple `(X, Y, U, V)` of an invertible pair and a rank-one
//! pairing with `X^{-1} Y^{-1} X Y tau - tau^{-1} I = U (x) V`, equivalently
//! `rank(tau XY - tau^{-1} YX) = 1`. On the open chart where `X` has
//! distinct eigenvalues off the twisted divisor, the orbit is coordinatized
//! by `(lambda, q)`: `X = diag(lambda)`, `Y_ij = (tau - tau^{-1}) q_i
//! lambda_j / (tau lambda_i - tau^{-1} lambda_j)` (the diagonal degenerates
//! to `Y_ii = q_i`), `V = lambda`, `U = (tau - tau^{-1}) X^{-1} Y^{-1} q`.
//!
//! Canonicalization inverts the chart: it extracts the (necessarily
//! rational, distinct) spectrum of `X` exactly, conjugates `Y` into the
//! eigenbasis, and reads `q` off the diagonal. Points whose spectrum does
//! not split over the rationals are reported as outside the chart; no
//! numeric eigensolver is involved anywhere.

pub mod jordan;
mod roots;

pub use jordan::{
    enumerate_entry_shapes, enumerate_jordan_shapes, im_membership, im_membership_closed_form,
    ineq_check, jordan_matrix, ker_dim_bruteforce, ker_dim_formula, partitions,
    stab_commutant_bruteforce, stab_dim_formula, sylvester_matrix, JordanData, JordanEntry,
};

use crate::exact::{twisted_delta, vandermonde_delta, Rat};
use crate::linalg::{poly_derivative, poly_gcd, Matrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CmError {
    #[error("coordinates outside chart: {0}")]
    OutsideChart(String),
    #[error("coordinates lie on the twisted divisor (tau-resonant spectrum)")]
    OnDivisor,
    #[error("matrix is singular where an invertible one is required")]
    Singular,
    #[error("point violates the defining rank-one equation: {0}")]
    InvariantViolation(String),
    #[error("matrix is not of rank one")]
    NotRankOne,
    #[error("input sizes are inconsistent: {0}")]
    SizeMismatch(String),
    #[error("cauchy determinant requires a_i != b_j for all i, j")]
    CauchyPole,
    #[error("jordan data malformed: {0}")]
    BadJordanData(String),
}

/// A representative `(X, Y, U, V)` of a Calogero-Moser point at parameter
/// `tau`; the defining equation is validated exactly on construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmPoint {
    tau: Rat,
    x: Matrix,
    y: Matrix,
    u: Vec<Rat>,
    v: Vec<Rat>,
}

impl CmPoint {
    pub fn new(tau: Rat, x: Matrix, y: Matrix, u: Vec<Rat>, v: Vec<Rat>) -> Result<Self, CmError> {
        let n = x.n_rows();
        if !x.is_square() || !y.is_square() || y.n_rows() != n || u.len() != n || v.len() != n {
            return Err(CmError::SizeMismatch("X, Y, U, V must share size n".into()));
        }
        if tau.is_zero() {
            return Err(CmError::InvariantViolation("tau must be nonzero".into()));
        }
        let point = CmPoint { tau, x, y, u, v };
        point.verify()?;
        Ok(point)
    }

    /// Recovers `U (x) V` from the defining equation of an `(X, Y)` pair
    /// already known to satisfy the rank-one condition.
    pub fn from_pair(tau: Rat, x: Matrix, y: Matrix) -> Result<Self, CmError> {
        let m = cm_defect(&tau, &x, &y)?;
        let n = m.n_rows();
        let Some(r0) = (0..n).find(|&r| m.row(r).iter().any(|e| !e.is_zero())) else {
            return Err(CmError::NotRankOne);
        };
        let v: Vec<Rat> = m.row(r0).to_vec();
        let c0 = v.iter().position(|e| !e.is_zero()).expect("nonzero row");
        let u: Vec<Rat> = (0..n).map(|r| &m[(r, c0)] / &v[c0]).collect();
        if Matrix::outer(&u, &v) != m {
            return Err(CmError::NotRankOne);
        }
        CmPoint::new(tau, x, y, u, v)
    }

    pub fn tau(&self) -> &Rat {
        &self.tau
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &Matrix {
        &self.y
    }

    pub fn u(&self) -> &[Rat] {
        &self.u
    }

    pub fn v(&self) -> &[Rat] {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.x.n_rows()
    }

    /// Exact check of `X^{-1} Y^{-1} X Y tau - tau^{-1} = U (x) V` plus the
    /// equivalent rank-one condition on `tau XY - tau^{-1} YX`.
    pub fn verify(&self) -> Result<(), CmError> {
        let defect = cm_defect(&self.tau, &self.x, &self.y)?;
        if defect != Matrix::outer(&self.u, &self.v) {
            return Err(CmError::InvariantViolation(
                "X^-1 Y^-1 X Y tau - tau^-1 differs from U (x) V".into(),
            ));
        }
        let tau_inv = self.tau.inv().expect("tau nonzero");
        let twist = &(&self.x * &self.y).scale(&self.tau) - &(&self.y * &self.x).scale(&tau_inv);
        if twist.rank() != 1 {
            return Err(CmError::InvariantViolation(
                "tau XY - tau^-1 YX is not of rank one".into(),
            ));
        }
        Ok(())
    }

    /// The involution `(X, Y, U, V) -> (Y, X, -Y^{-1} X^{-1} Y X U, V)`,
    /// landing on a valid point at parameter `tau^{-1}`; applying it twice
    /// restores `(X, Y)` (and in fact `U, V`) exactly.
    pub fn epsilon(&self) -> Result<CmPoint, CmError> {
        let x_inv = self.x.inverse().ok_or(CmError::Singular)?;
        let y_inv = self.y.inverse().ok_or(CmError::Singular)?;
        let conj = &(&y_inv * &x_inv) * &(&self.y * &self.x);
        let u_new: Vec<Rat> = conj.mul_vec(&self.u).iter().map(|e| -e).collect();
        CmPoint::new(
            self.tau.inv().expect("tau nonzero"),
            self.y.clone(),
            self.x.clone(),
            u_new,
            self.v.clone(),
        )
    }

    /// Conjugated representative `(g X g^{-1}, g Y g^{-1}, g U, V g^{-1})`.
    pub fn conjugate(&self, g: &Matrix) -> Result<CmPoint, CmError> {
        let g_inv = g.inverse().ok_or(CmError::Singular)?;
        CmPoint::new(
            self.tau.clone(),
            &(g * &self.x) * &g_inv,
            &(g * &self.y) * &g_inv,
            g.mul_vec(&self.u),
            g_inv.transpose().mul_vec(&self.v),
        )
    }
}

/// `X^{-1} Y^{-1} X Y tau - tau^{-1} I`.
fn cm_defect(tau: &Rat, x: &Matrix, y: &Matrix) -> Result<Matrix, CmError> {
    let x_inv = x.inverse().ok_or(CmError::Singular)?;
    let y_inv = y.inverse().ok_or(CmError::Singular)?;
    let tau_inv = tau.inv().ok_or(CmError::Singular)?;
    let commutator = &(&x_inv * &y_inv) * &(x * y);
    Ok(&commutator.scale(tau) - &Matrix::identity(x.n_rows()).scale(&tau_inv))
}

/// Chart coordinates `(lambda, q)`: distinct nonzero eigenvalues and nonzero
/// diagonal parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmCoords {
    lambda: Vec<Rat>,
    q: Vec<Rat>,
}

impl CmCoords {
    pub fn new(lambda: Vec<Rat>, q: Vec<Rat>) -> Result<Self, CmError> {
        if lambda.len() != q.len() {
            return Err(CmError::SizeMismatch("lambda and q lengths differ".into()));
        }
        if lambda.iter().any(Rat::is_zero) || q.iter().any(Rat::is_zero) {
            return Err(CmError::OutsideChart("zero coordinate".into()));
        }
        if vandermonde_delta(&lambda).is_zero() {
            return Err(CmError::OutsideChart("repeated eigenvalue".into()));
        }
        Ok(CmCoords { lambda, q })
    }

    pub fn lambda(&self) -> &[Rat] {
        &self.lambda
    }

    pub fn q(&self) -> &[Rat] {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// Checks the twisted-divisor condition for the given `tau`.
    pub fn check_off_divisor(&self, tau: &Rat) -> Result<(), CmError> {
        if twisted_delta(tau, &self.lambda).is_zero() {
            Err(CmError::OnDivisor)
        } else {
            Ok(())
        }
    }

    /// Simultaneously sorts the `(lambda_i, q_i)` pairs by ascending lambda.
    pub fn sorted(&self) -> CmCoords {
        let mut pairs: Vec<(Rat, Rat)> = self
            .lambda
            .iter()
            .cloned()
            .zip(self.q.iter().cloned())
            .collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let (lambda, q) = pairs.into_iter().unzip();
        CmCoords { lambda, q }
    }
}

/// The chart parametrization. The returned point is validated exactly
/// against the defining equation before being handed back.
pub fn point_from_coords(tau: &Rat, coords: &CmCoords) -> Result<CmPoint, CmError> {
    coords.check_off_divisor(tau)?;
    let n = coords.len();
    let tau_inv = tau.inv().ok_or(CmError::Singular)?;
    let delta = tau - &tau_inv;
    let lambda = coords.lambda();
    let q = coords.q();

    let x = Matrix::diagonal(lambda);
    // The off-diagonal formula degenerates to Y_ii = q_i at i = j.
    let y = Matrix::from_fn(n, n, |i, j| {
        &(&delta * &q[i]) * &lambda[j] / &(tau * &lambda[i] - &tau_inv * &lambda[j])
    });

    // det(Y) through the Cauchy closed form; nonzero exactly because the
    // lambda are distinct.
    let a: Vec<Rat> = lambda.iter().map(|l| tau * l).collect();
    let b: Vec<Rat> = lambda.iter().map(|l| &tau_inv * l).collect();
    let cauchy = cauchy_det(&a, &b)?;
    let det_y = q
        .iter()
        .chain(lambda.iter())
        .fold(delta.pow(n as i64), |acc, f| acc * f)
        * &cauchy;
    assert!(!det_y.is_zero(), "Cauchy determinant cannot vanish on the chart");

    let y_inv = y.inverse().ok_or(CmError::Singular)?;
    let x_inv = x.inverse().ok_or(CmError::Singular)?;
    let u = &(&x_inv * &y_inv).mul_vec(q)
        .iter()
        .map(|e| &delta * e)
        .collect::<Vec<_>>();
    CmPoint::new(tau.clone(), x, y, u.clone(), lambda.to_vec())
}

/// Determinant of the Cauchy matrix `M_ij = 1/(a_i - b_j)` in closed form:
/// `prod_{i<j} (a_i - a_j)(b_j - b_i) / prod_{i,j} (a_i - b_j)`.
pub fn cauchy_det(a: &[Rat], b: &[Rat]) -> Result<Rat, CmError> {
    if a.len() != b.len() {
        return Err(CmError::SizeMismatch("cauchy_det needs equal lengths".into()));
    }
    let n = a.len();
    for ai in a {
        for bj in b {
            if ai == bj {
                return Err(CmError::CauchyPole);
            }
        }
    }
    let mut num = Rat::one();
    for i in 0..n {
        for j in (i + 1)..n {
            num = num * (&a[i] - &a[j]) * (&b[j] - &b[i]);
        }
    }
    let mut den = Rat::one();
    for ai in a {
        for bj in b {
            den = den * (ai - bj);
        }
    }
    Ok(num / den)
}

/// Inverts the chart: extracts the rational spectrum of `X` exactly, solves
/// for eigenvectors, and reads `q` off the diagonal of the conjugated `Y`.
/// The result is sorted by ascending eigenvalue; points whose spectrum is
/// repeated or does not split over the rationals are outside the chart.
pub fn canonicalize(p: &CmPoint) -> Result<CmCoords, CmError> {
    let n = p.dim();
    let charpoly = p.x().charpoly();
    let gcd = poly_gcd(&charpoly, &poly_derivative(&charpoly));
    if gcd.len() > 1 {
        return Err(CmError::OutsideChart("repeated eigenvalue".into()));
    }
    let mut lambda = roots::rational_roots_monic_squarefree(&charpoly);
    if lambda.len() != n {
        return Err(CmError::OutsideChart(
            "characteristic polynomial does not split over the rationals".into(),
        ));
    }
    lambda.sort();
    if lambda.iter().any(Rat::is_zero) {
        return Err(CmError::Singular);
    }
    if twisted_delta(p.tau(), &lambda).is_zero() {
        return Err(CmError::OnDivisor);
    }

    let id = Matrix::identity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for l in &lambda {
        let shifted = p.x() - &id.scale(l);
        let ns = shifted.nullspace();
        if ns.len() != 1 {
            return Err(CmError::OutsideChart("non-simple eigenvalue".into()));
        }
        eigenvectors.push(ns.into_iter().next().expect("one vector"));
    }
    let w = Matrix::from_columns(&eigenvectors);
    let w_inv = w.inverse().ok_or(CmError::Singular)?;
    let conj = &(&w_inv * p.y()) * &w;
    let q: Vec<Rat> = (0..n).map(|i| conj[(i, i)].clone()).collect();
    if q.iter().any(Rat::is_zero) {
        return Err(CmError::InvariantViolation(
            "vanishing diagonal parameter q_i".into(),
        ));
    }
    CmCoords::new(lambda, q)
}

/// The chart expression of the diagonal `Y` parameters through a character:
/// `q_i = mu_i prod_{j != i} (tau^{-1} nu_j - tau nu_i) / (nu_j - nu_i)`.
pub fn chart_q(tau: &Rat, mu: &[Rat], nu: &[Rat]) -> Vec<Rat> {
    let tau_inv = tau.inv().expect("tau nonzero");
    (0..nu.len())
        .map(|i| {
            let mut acc = mu[i].clone();
            for j in 0..nu.len() {
                if j != i {
                    acc = acc * (&tau_inv * &nu[j] - tau * &nu[i]) / (&nu[j] - &nu[i]);
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::ExactRng;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn one_dimensional_chart_point() {
        let tau = r(2, 1);
        let coords = CmCoords::new(vec![r(5, 1)], vec![r(3, 1)]).unwrap();
        let p = point_from_coords(&tau, &coords).unwrap();
        assert_eq!(p.x()[(0, 0)], r(5, 1));
        assert_eq!(p.y()[(0, 0)], r(3, 1));
        assert_eq!(p.u(), &[r(3, 10)]);
        assert_eq!(p.v(), &[r(5, 1)]);
    }

    #[test]
    fn two_dimensional_chart_point_matches_hand_computation() {
        let tau = r(2, 1);
        let coords = CmCoords::new(vec![r(1, 1), r(3, 1)], vec![r(1, 1), r(1, 1)]).unwrap();
        let p = point_from_coords(&tau, &coords).unwrap();
        assert_eq!(p.y()[(0, 1)], r(9, 1));
        assert_eq!(p.y()[(1, 0)], r(3, 11));
        assert_eq!(p.y()[(0, 0)], r(1, 1));
        let twist = &(p.x() * p.y()).scale(&tau) - &(p.y() * p.x()).scale(&r(1, 2));
        let expected = Matrix::from_rows(vec![
            vec![r(3, 2), r(9, 2)],
            vec![r(3, 2), r(9, 2)],
        ]);
        assert_eq!(twist, expected);
        assert_eq!(twist.rank(), 1);
    }

    #[test]
    fn repeated_eigenvalue_is_rejected() {
        assert!(matches!(
            CmCoords::new(vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(1, 1)]),
            Err(CmError::OutsideChart(_))
        ));
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(
            cauchy_det(&[r(2, 1)], &[r(1, 1)]).unwrap(),
            r(1, 1)
        );
        // Oracle: brute-force determinant of [[-1/2, -1/4], [-1, -1/3]].
        let a = [r(1, 1), r(2, 1)];
        let b = [r(3, 1), r(5, 1)];
        let brute = Matrix::from_fn(2, 2, |i, j| Rat::one() / (&a[i] - &b[j])).det();
        assert_eq!(brute, r(-1, 12));
        assert_eq!(cauchy_det(&a, &b).unwrap(), brute);
        assert_eq!(
            cauchy_det(&[r(1, 1), r(2, 1)], &[r(1, 1), r(4, 1)]),
            Err(CmError::CauchyPole)
        );
    }

    #[test]
    fn cauchy_closed_form_matches_brute_force_up_to_n6() {
        let mut rng = ExactRng::new(40);
        for n in 1..=6 {
            let mut pool = rng.distinct_nonzero(2 * n);
            let b = pool.split_off(n);
            let a = pool;
            if a.iter().any(|x| b.contains(x)) {
                continue;
            }
            let closed = cauchy_det(&a, &b).unwrap();
            let brute = Matrix::from_fn(n, n, |i, j| Rat::one() / (&a[i] - &b[j])).det();
            assert_eq!(closed, brute, "n = {n}");
        }
    }

    #[test]
    fn canonicalize_inverts_the_chart_after_conjugation() {
        let tau = r(2, 1);
        let coords = CmCoords::new(vec![r(1, 1), r(3, 1)], vec![r(1, 1), r(1, 1)]).unwrap();
        let p = point_from_coords(&tau, &coords).unwrap();
        let g = Matrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        let conjugated = p.conjugate(&g).unwrap();
        let recovered = canonicalize(&conjugated).unwrap();
        assert_eq!(recovered.lambda(), coords.lambda());
        assert_eq!(recovered.q(), coords.q());
    }

    #[test]
    fn canonicalize_reads_q_off_diagonal_for_sorted_diagonal_x() {
        let tau = r(2, 1);
        let coords = CmCoords::new(vec![r(1, 1), r(3, 1)], vec![r(5, 1), r(7, 2)]).unwrap();
        let p = point_from_coords(&tau, &coords).unwrap();
        let back = canonicalize(&p).unwrap();
        assert_eq!(back.lambda(), coords.lambda());
        assert_eq!(back.q(), coords.q());
    }

    #[test]
    fn non_split_spectrum_is_outside_chart() {
        // Rotation matrix with eigenvalues +-i and a compatible rank-one
        // pairing cannot arise; test canonicalize directly on the pair with
        // a synthetic point bypassing validation is not possible, so check
        // the spectrum path through a valid-but-non-split X via from_pair
        // failure or direct charpoly reasoning.
        let x = Matrix::from_int_rows(&[&[0, 1], &[-1, 0]]);
        let charpoly = x.charpoly();
        let roots = super::roots::rational_roots_monic_squarefree(&charpoly);
        assert!(roots.is_empty());
    }

    #[test]
    fn epsilon_involution() {
        let tau = r(2, 1);
        let coords = CmCoords::new(vec![r(1, 1), r(3, 1)], vec![r(1, 1), r(1, 1)]).unwrap();
        let p = point_from_coords(&tau, &coords).unwrap();
        let flipped = p.epsilon().unwrap();
        assert_eq!(flipped.tau(), &r(1, 2));
        assert_eq!(flipped.x(), p.y());
        assert_eq!(flipped.y(), p.x());
        // n = 1: U' = -U, V' = V.
        let p1 = point_from_coords(&tau, &CmCoords::new(vec![r(5, 1)], vec![r(3, 1)]).unwrap())
            .unwrap();
        let f1 = p1.epsilon().unwrap();
        assert_eq!(f1.u()[0], -&p1.u()[0]);
        assert_eq!(f1.v(), p1.v());
        // Double application restores the quadruple exactly.
        let back = flipped.epsilon().unwrap();
        assert_eq!(back.x(), p.x());
        assert_eq!(back.y(), p.y());
        assert_eq!(back.u(), p.u());
        assert_eq!(back.v(), p.v());
    }

    #[test]
    fn from_pair_recovers_rank_one_factorization() {
        let tau = r(2, 1);
        let coords = CmCoords::new(vec![r(1, 1), r(3, 1)], vec![r(2, 1), r(5, 1)]).unwrap();
        let p = point_from_coords(&tau, &coords).unwrap();
        let again = CmPoint::from_pair(tau.clone(), p.x().clone(), p.y().clone()).unwrap();
        assert_eq!(
            Matrix::outer(again.u(), again.v()),
            Matrix::outer(p.u(), p.v())
        );
        // A commuting pair has no rank-one defect.
        assert!(matches!(
            CmPoint::from_pair(tau, Matrix::identity(2), Matrix::identity(2)),
            Err(CmError::NotRankOne)
        ));
    }

    #[test]
    fn free_action_shadow_scalar_commutant() {
        // For chart points, the joint commutant of {X, Y} is the scalars.
        let mut rng = ExactRng::new(17);
        for n in 2..=4 {
            let tau = r(2, 1);
            let lambda = rng.strongly_generic(&tau, n);
            let q = (0..n).map(|_| rng.nonzero_rat()).collect();
            let coords = CmCoords::new(lambda, q).unwrap();
            let p = point_from_coords(&tau, &coords).unwrap();
            let dim = jordan::pair_commutant_dimension(p.x(), p.y());
            assert_eq!(dim, 1, "n = {n}");
        }
    }
}
