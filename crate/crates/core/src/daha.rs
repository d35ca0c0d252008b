//! Finite-dimensional representations of the double affine Hecke algebra of
//! type `GL(n)` at `q = 1`.
//!
//! The module realizes the `n!`-dimensional induced module on the basis
//! `{w (x) 1 : w in S_n}` (lexicographic order). A permutation `u` acts by
//! `w (x) 1 -> (uw) (x) 1`; a Laurent function `F(P, X)` acts diagonally by
//! the scalar `F(mu o w^{-1}, nu o w^{-1})`, i.e. position `i` evaluates to
//! the character value at `w^{-1}(i)`. Under this convention the restriction
//! of `X_1` to the invariant subspace is `diag(nu)` on the nose, which is
//! what the Calogero-Moser certificate checks.
//!
//! Generators:
//! - `X_i` acts diagonally by `nu_{w^{-1}(i)}`;
//! - `T_i = tau s_i + (tau - tau^{-1}) / (X_i / X_{i+1} - 1) (s_i - 1)`;
//! - `pi = P_1^{-1} c` with `c` the n-cycle `i -> i+1`;
//! - `Y_1 = T_1 ... T_{n-1} pi^{-1}` and `Y_{i+1} = T_i^{-1} Y_i T_i^{-1}`,
//!   which closes to `Y_i = T_i ... T_{n-1} pi^{-1} T_1^{-1} ... T_{i-1}^{-1}`
//!   and degenerates to `Y_n = pi^{-1} T_1^{-1} ... T_{n-1}^{-1}`.

use crate::cmspace::chart_q;
use crate::exact::{vandermonde_delta, twisted_delta, Jet, Rat};
use crate::linalg::{poly_from_roots, Matrix};
use crate::par;
use crate::report::{Check, EntryWitness};
use crate::rng::ExactRng;
use crate::symgroup::{enumerate_sn, Permutation, SymGroupError};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DahaError {
    #[error(transparent)]
    SymGroup(#[from] SymGroupError),
    #[error("tau must avoid 0 and +-1; got {0}")]
    BadTau(Rat),
    #[error("character is not generic: {0}")]
    CharacterNotGeneric(String),
    #[error("character length {got} does not match n = {expected}")]
    CharacterLength { expected: usize, got: usize },
    #[error("a generator matrix is singular; a non-generic character slipped through")]
    SingularGenerator,
    #[error("invariant space has dimension {got}, expected {expected}")]
    InvariantSpaceDimension { expected: usize, got: usize },
    #[error("X_1 or Y_1 maps an invariant vector outside the invariant span")]
    RestrictionEscapes,
    #[error("commutator X_1 Y_1 X_1^-1 Y_1^-1 differs from the T-product")]
    CommutatorMismatch,
    #[error("spectrum of the central element differs from the predicted powers of tau")]
    SpectrumMismatch,
    #[error("symmetrizer denominator vanished")]
    SymmetrizerDenominatorZero,
    #[error("operation supported only for n <= {limit}; got n = {got}")]
    DegreeTooLarge { limit: usize, got: usize },
    #[error("operation requires n >= 2")]
    DegreeTooSmall,
}

/// Degree and deformation parameter. `tau` must avoid `0, 1, -1`; a rational
/// off the unit circle is never a nontrivial root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DahaParams {
    n: usize,
    tau: Rat,
}

impl DahaParams {
    pub fn new(n: usize, tau: Rat) -> Result<Self, DahaError> {
        if n == 0 || n > 8 {
            return Err(SymGroupError::DegreeOutOfRange(n).into());
        }
        if tau.is_zero() || tau.abs().is_one() {
            return Err(DahaError::BadTau(tau));
        }
        Ok(DahaParams { n, tau })
    }

    /// Constructor without the tau restriction, for degeneration studies
    /// (tau = 1 turns the finite Hecke algebra into the group algebra).
    pub fn new_unchecked(n: usize, tau: Rat) -> Self {
        DahaParams { n, tau }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> &Rat {
        &self.tau
    }
}

/// Character `(mu, nu)` of the commutative part; the induced module is
/// irreducible when the `nu_i` are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Character {
    mu: Vec<Rat>,
    nu: Vec<Rat>,
}

impl Character {
    pub fn new(mu: Vec<Rat>, nu: Vec<Rat>) -> Result<Self, DahaError> {
        if mu.len() != nu.len() {
            return Err(DahaError::CharacterLength {
                expected: mu.len(),
                got: nu.len(),
            });
        }
        if mu.iter().any(Rat::is_zero) || nu.iter().any(Rat::is_zero) {
            return Err(DahaError::CharacterNotGeneric(
                "all mu_i and nu_i must be nonzero".into(),
            ));
        }
        if vandermonde_delta(&nu).is_zero() {
            return Err(DahaError::CharacterNotGeneric(
                "nu_i must be pairwise distinct".into(),
            ));
        }
        Ok(Character { mu, nu })
    }

    /// No validation; for deliberately degenerate fixtures.
    pub fn new_unchecked(mu: Vec<Rat>, nu: Vec<Rat>) -> Self {
        Character { mu, nu }
    }

    pub fn mu(&self) -> &[Rat] {
        &self.mu
    }

    pub fn nu(&self) -> &[Rat] {
        &self.nu
    }

    /// Also avoids the twisted divisor `prod_{i != j}(tau nu_i - tau^{-1} nu_j) = 0`.
    pub fn is_strongly_generic(&self, tau: &Rat) -> bool {
        !twisted_delta(tau, &self.nu).is_zero()
    }
}

/// Field operations shared by the exact scalars and jets, so the Hecke
/// T-action coefficients can be formed over either.
pub trait HeckeScalar: Clone {
    fn sub_s(&self, other: &Self) -> Self;
    fn mul_s(&self, other: &Self) -> Self;
    /// Division by a value known to be nonzero.
    fn div_s(&self, other: &Self) -> Self;
}

impl HeckeScalar for Rat {
    fn sub_s(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_s(&self, other: &Self) -> Self {
        self * other
    }
    fn div_s(&self, other: &Self) -> Self {
        self / other
    }
}

impl HeckeScalar for Jet {
    fn sub_s(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_s(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn div_s(&self, other: &Self) -> Self {
        self.div(other).expect("nonzero divisor")
    }
}

/// Coefficients of the T-generator action on the basis line through `w`:
/// with `a = nu_{w^{-1}(i)}` and `b = nu_{w^{-1}(i+1)}`,
/// `T_i (w (x) 1) = same * (w (x) 1) + swap * (s_i w (x) 1)` where
/// `same = (tau - tau^{-1}) b / (b - a)` and
/// `swap = tau - (tau - tau^{-1}) a / (a - b)`.
pub fn hecke_t_coeffs<S: HeckeScalar>(tau: &S, tau_inv: &S, a: &S, b: &S) -> (S, S) {
    let delta = tau.sub_s(tau_inv);
    let same = delta.mul_s(b).div_s(&b.sub_s(a));
    let swap = tau.sub_s(&delta.mul_s(a).div_s(&a.sub_s(b)));
    (same, swap)
}

/// Generators of the `GL(2, Z)` action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gl2zGen {
    /// `X_i -> X_i const, Y_i -> X_i Y_i, T_i -> T_i` (q = 1).
    Sigma,
    /// Fourier flip `X_i -> Y_i, Y_i -> X_i, T_i -> T_i^{-1}`, landing at
    /// parameter `tau^{-1}`.
    Epsilon,
}

/// Full matrix realization of the generators on the `n!`-dimensional module.
#[derive(Debug, Clone, Serialize)]
pub struct RepBundle {
    params: DahaParams,
    character: Character,
    basis: Vec<Permutation>,
    mat_x: Vec<Matrix>,
    mat_t: Vec<Matrix>,
    mat_pi: Matrix,
    mat_y: Vec<Matrix>,
    #[serde(skip)]
    y1_inv: Matrix,
}

/// Builds the induced representation for a generic character.
pub fn build_rep(params: &DahaParams, chi: &Character) -> Result<RepBundle, DahaError> {
    let n = params.n;
    if chi.nu.len() != n {
        return Err(DahaError::CharacterLength {
            expected: n,
            got: chi.nu.len(),
        });
    }
    if chi.mu.iter().any(Rat::is_zero) || chi.nu.iter().any(Rat::is_zero) {
        return Err(DahaError::CharacterNotGeneric("zero character value".into()));
    }
    // Repeated nu values are rejected where they first break a T-matrix
    // line; the group-algebra degeneration tau = tau^{-1} tolerates them.
    let tau = params.tau.clone();
    let tau_inv = tau.inv().ok_or_else(|| DahaError::BadTau(tau.clone()))?;

    let basis = enumerate_sn(n)?;
    let nn = basis.len();
    // labels[r][i] = nu_{w_r^{-1}(i+1)}: the diagonal value of X_{i+1} on w_r.
    let labels: Vec<Vec<Rat>> = basis
        .iter()
        .map(|w| {
            let wi = w.inverse();
            (0..n).map(|i| chi.nu[wi.apply(i)].clone()).collect()
        })
        .collect();

    let mat_x: Vec<Matrix> = (0..n)
        .map(|i| Matrix::diagonal(&labels.iter().map(|l| l[i].clone()).collect::<Vec<_>>()))
        .collect();

    let mut mat_t = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let s_k = Permutation::simple(n, k);
        let mut m = Matrix::zeros(nn, nn);
        for (r, w) in basis.iter().enumerate() {
            let a = &labels[r][k - 1];
            let b = &labels[r][k];
            let (same, swap) = if a == b {
                // Coincident labels are only consistent in the group-algebra
                // degeneration tau = tau^{-1}, where the reflection term
                // vanishes identically.
                if tau != tau_inv {
                    return Err(DahaError::CharacterNotGeneric(
                        "coincident X-labels on a basis line".into(),
                    ));
                }
                (Rat::zero(), tau.clone())
            } else {
                hecke_t_coeffs(&tau, &tau_inv, a, b)
            };
            let swapped_row = s_k.compose(w).lex_rank();
            m[(r, r)] = same;
            m[(swapped_row, r)] = swap;
        }
        mat_t.push(m);
    }

    // pi (w (x) 1) = mu_{w^{-1}(n)}^{-1} (c w (x) 1).
    let cycle = Permutation::cycle(n);
    let mut mat_pi = Matrix::zeros(nn, nn);
    for (r, w) in basis.iter().enumerate() {
        let value = chi.mu[w.inverse().apply(n - 1)]
            .inv()
            .ok_or(DahaError::SingularGenerator)?;
        mat_pi[(cycle.compose(w).lex_rank(), r)] = value;
    }
    let pi_inv = invert_monomial(&mat_pi).ok_or(DahaError::SingularGenerator)?;

    let delta = &tau - &tau_inv;
    let t_inv: Vec<Matrix> = mat_t
        .iter()
        .map(|t| t - &Matrix::identity(nn).scale(&delta))
        .collect();

    let mat_y = y_family(&mat_t, &t_inv, &pi_inv);
    let y1_inv = y1_inverse(&mat_pi, &t_inv);

    Ok(RepBundle {
        params: params.clone(),
        character: chi.clone(),
        basis,
        mat_x,
        mat_t,
        mat_pi,
        mat_y,
        y1_inv,
    })
}

/// The commuting family `Y_i = T_i ... T_{n-1} pi^{-1} T_1^{-1} ... T_{i-1}^{-1}`
/// built from generator matrices; shared by the plain construction and the
/// parameter-preserving twist.
fn y_family(mat_t: &[Matrix], t_inv: &[Matrix], pi_inv: &Matrix) -> Vec<Matrix> {
    let n = mat_t.len() + 1;
    let nn = pi_inv.n_rows();
    let mut mat_y = Vec::with_capacity(n);
    for i in 1..=n {
        let mut y = Matrix::identity(nn);
        for k in i..n {
            y = &y * &mat_t[k - 1];
        }
        y = &y * pi_inv;
        for k in 1..i {
            y = &y * &t_inv[k - 1];
        }
        mat_y.push(y);
    }
    mat_y
}

/// `Y_1^{-1} = pi T_{n-1}^{-1} ... T_1^{-1}` from the product form.
fn y1_inverse(pi: &Matrix, t_inv: &[Matrix]) -> Matrix {
    let mut y1_inv = pi.clone();
    for k in (0..t_inv.len()).rev() {
        y1_inv = &y1_inv * &t_inv[k];
    }
    y1_inv
}

/// Inverts a matrix with exactly one nonzero entry per row and column.
fn invert_monomial(m: &Matrix) -> Option<Matrix> {
    let n = m.n_rows();
    let mut out = Matrix::zeros(n, n);
    for c in 0..n {
        let mut hit = None;
        for r in 0..n {
            if !m[(r, c)].is_zero() {
                if hit.is_some() {
                    return None;
                }
                hit = Some(r);
            }
        }
        let r = hit?;
        out[(c, r)] = m[(r, c)].inv()?;
    }
    Some(out)
}

impl RepBundle {
    pub fn params(&self) -> &DahaParams {
        &self.params
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `X_i`, 1-based.
    pub fn x(&self, i: usize) -> &Matrix {
        &self.mat_x[i - 1]
    }

    /// `T_i`, 1-based.
    pub fn t(&self, i: usize) -> &Matrix {
        &self.mat_t[i - 1]
    }

    /// `Y_i`, 1-based.
    pub fn y(&self, i: usize) -> &Matrix {
        &self.mat_y[i - 1]
    }

    pub fn pi(&self) -> &Matrix {
        &self.mat_pi
    }

    /// `T_i^{-1} = T_i - (tau - tau^{-1})`, from the quadratic relation.
    pub fn t_inverse(&self, i: usize) -> Matrix {
        let delta = &self.params.tau - &self.params.tau.inv().expect("tau nonzero");
        self.t(i) - &Matrix::identity(self.dim()).scale(&delta)
    }

    /// Matrix of left multiplication by the group element `u`.
    pub fn perm_matrix(&self, u: &Permutation) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (r, w) in self.basis.iter().enumerate() {
            m[(u.compose(w).lex_rank(), r)] = Rat::one();
        }
        m
    }

    /// Fault-injection helper: returns a copy with `T_k` replaced. The `Y`
    /// matrices are left untouched, so relation checks on the result are
    /// expected to flag failures.
    pub fn with_replaced_t(&self, k: usize, m: Matrix) -> RepBundle {
        let mut out = self.clone();
        out.mat_t[k - 1] = m;
        out
    }

    /// Verifies every defining relation as an exact matrix identity and
    /// returns one check per instance.
    pub fn verify_relations(&self) -> Vec<Check> {
        let n = self.params.n;
        let nn = self.dim();
        let tau = &self.params.tau;
        let tau_inv = tau.inv().expect("tau nonzero");

        enum Rel {
            XCommute(usize, usize),
            Txt(usize),
            TxCommute(usize, usize),
            TtCommute(usize, usize),
            Braid(usize),
            PiXShift(usize),
            PiXCycle,
            PiTShift(usize),
            PiNCentral(usize),
            TQuadratic(usize),
            Tyt(usize),
            TyCommute(usize, usize),
            YCommute(usize, usize),
        }

        let mut rels = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                rels.push(Rel::XCommute(i, j));
            }
        }
        for i in 1..n {
            rels.push(Rel::Txt(i));
            rels.push(Rel::TQuadratic(i));
            rels.push(Rel::Tyt(i));
        }
        for i in 1..n {
            for j in 1..=n {
                if j != i && j != i + 1 {
                    rels.push(Rel::TxCommute(i, j));
                    rels.push(Rel::TyCommute(i, j));
                }
            }
        }
        for i in 1..n {
            for j in (i + 2)..n {
                rels.push(Rel::TtCommute(i, j));
            }
        }
        for i in 1..(n.saturating_sub(1)) {
            rels.push(Rel::Braid(i));
        }
        for i in 1..n {
            rels.push(Rel::PiXShift(i));
        }
        rels.push(Rel::PiXCycle);
        for i in 1..n.saturating_sub(1) {
            rels.push(Rel::PiTShift(i));
        }
        for j in 1..n {
            rels.push(Rel::PiNCentral(j));
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                rels.push(Rel::YCommute(i, j));
            }
        }

        let pi_pow_n = {
            let mut p = Matrix::identity(nn);
            for _ in 0..n {
                p = &p * &self.mat_pi;
            }
            p
        };

        par::map_items(rels, |rel| match rel {
            Rel::XCommute(i, j) => self.check_eq(
                "X-commute",
                vec![i as i64, j as i64],
                &(self.x(i) * self.x(j)),
                &(self.x(j) * self.x(i)),
            ),
            Rel::Txt(i) => self.check_eq(
                "TXT=X",
                vec![i as i64],
                &(&(self.t(i) * self.x(i)) * self.t(i)),
                self.x(i + 1),
            ),
            Rel::TxCommute(i, j) => self.check_eq(
                "TX-commute",
                vec![i as i64, j as i64],
                &(self.t(i) * self.x(j)),
                &(self.x(j) * self.t(i)),
            ),
            Rel::TtCommute(i, j) => self.check_eq(
                "TT-commute",
                vec![i as i64, j as i64],
                &(self.t(i) * self.t(j)),
                &(self.t(j) * self.t(i)),
            ),
            Rel::Braid(i) => self.check_eq(
                "braid",
                vec![i as i64],
                &(&(self.t(i) * self.t(i + 1)) * self.t(i)),
                &(&(self.t(i + 1) * self.t(i)) * self.t(i + 1)),
            ),
            Rel::PiXShift(i) => self.check_eq(
                "piX-shift",
                vec![i as i64],
                &(self.pi() * self.x(i)),
                &(self.x(i + 1) * self.pi()),
            ),
            Rel::PiXCycle => self.check_eq(
                "piX-cycle",
                vec![],
                &(self.pi() * self.x(n)),
                &(self.x(1) * self.pi()),
            ),
            Rel::PiTShift(i) => self.check_eq(
                "piT-shift",
                vec![i as i64],
                &(self.pi() * self.t(i)),
                &(self.t(i + 1) * self.pi()),
            ),
            Rel::PiNCentral(j) => self.check_eq(
                "piN-central",
                vec![j as i64],
                &(&pi_pow_n * self.t(j)),
                &(self.t(j) * &pi_pow_n),
            ),
            Rel::TQuadratic(i) => {
                let id = Matrix::identity(nn);
                let lhs = &(self.t(i) - &id.scale(tau)) * &(self.t(i) + &id.scale(&tau_inv));
                self.check_eq("T-quadratic", vec![i as i64], &lhs, &Matrix::zeros(nn, nn))
            }
            Rel::Tyt(i) => self.check_eq(
                "TYT=Y",
                vec![i as i64],
                &(&(self.t(i) * self.y(i + 1)) * self.t(i)),
                self.y(i),
            ),
            Rel::TyCommute(i, j) => self.check_eq(
                "TY-commute",
                vec![i as i64, j as i64],
                &(self.t(i) * self.y(j)),
                &(self.y(j) * self.t(i)),
            ),
            Rel::YCommute(i, j) => self.check_eq(
                "Y-commute",
                vec![i as i64, j as i64],
                &(self.y(i) * self.y(j)),
                &(self.y(j) * self.y(i)),
            ),
        })
    }

    fn check_eq(&self, id: &str, instance: Vec<i64>, lhs: &Matrix, rhs: &Matrix) -> Check {
        match lhs.first_difference(rhs) {
            None => Check::passing(id, instance),
            Some((row, col)) => Check::failing(
                id,
                instance,
                EntryWitness {
                    row,
                    col,
                    lhs: lhs[(row, col)].clone(),
                    rhs: rhs[(row, col)].clone(),
                }
                .to_value(),
            ),
        }
    }

    /// The vectors `e_i = sum_{w' fixing 1} (w' s_{1i}) (x) 1`, `i = 1..n`.
    /// They span the space of vectors with `T_k v = tau v` for `2 <= k < n`,
    /// which is verified directly and, for `n >= 3`, against an exact
    /// nullspace computation.
    pub fn invariant_basis(&self) -> Result<Vec<Vec<Rat>>, DahaError> {
        let n = self.params.n;
        let nn = self.dim();
        let tau = &self.params.tau;
        let mut vectors = Vec::with_capacity(n);
        for i in 1..=n {
            let s1i = Permutation::transposition(n, 1, i);
            let mut v = vec![Rat::zero(); nn];
            for w in &self.basis {
                if w.apply(0) != 0 {
                    continue;
                }
                let idx = w.compose(&s1i).lex_rank();
                v[idx] = &v[idx] + &Rat::one();
            }
            vectors.push(v);
        }
        for k in 2..n {
            for v in &vectors {
                let image = self.t(k).mul_vec(v);
                let scaled: Vec<Rat> = v.iter().map(|x| tau * x).collect();
                if image != scaled {
                    return Err(DahaError::InvariantSpaceDimension {
                        expected: n,
                        got: 0,
                    });
                }
            }
        }
        if Matrix::from_columns(&vectors).rank() != n {
            return Err(DahaError::InvariantSpaceDimension { expected: n, got: 0 });
        }
        if n >= 3 {
            let id = Matrix::identity(nn);
            let blocks: Vec<Matrix> = (2..n).map(|k| self.t(k) - &id.scale(tau)).collect();
            let refs: Vec<&Matrix> = blocks.iter().collect();
            let dim = Matrix::vstack(&refs).nullspace().len();
            if dim != n {
                return Err(DahaError::InvariantSpaceDimension {
                    expected: n,
                    got: dim,
                });
            }
        }
        Ok(vectors)
    }

    /// Restriction of `X_1` and `Y_1` to the invariant basis, without the
    /// chart certificate. Errors when the subspace is not preserved.
    pub fn cm_restrict(&self) -> Result<(Matrix, Matrix), DahaError> {
        let e = Matrix::from_columns(&self.invariant_basis()?);
        let x_bar = e
            .solve_many(&(self.x(1) * &e))
            .ok_or(DahaError::RestrictionEscapes)?;
        let y_bar = e
            .solve_many(&(self.y(1) * &e))
            .ok_or(DahaError::RestrictionEscapes)?;
        Ok((x_bar, y_bar))
    }

    /// The map to the Calogero-Moser space with its exact certificate:
    /// `Xbar = diag(nu)`, the product formula for the diagonal of `Ybar`,
    /// and the twisted-commutator rank-one condition. In the evaluation
    /// convention fixed here (the one that makes `Xbar` diagonal on the
    /// nose) the rank-one scaling reads `rank(tau Ybar Xbar - tau^{-1}
    /// Xbar Ybar) = 1`; entrywise this is the rank-one factorization
    /// `(tau nu_j - tau^{-1} nu_i) Ybar_ij / (tau - tau^{-1}) = p_i s_j`
    /// with `q_i = p_i s_i / nu_i`.
    pub fn cm_map(&self) -> Result<CmMapOutput, DahaError> {
        let (x_bar, y_bar) = self.cm_restrict()?;
        let tau = &self.params.tau;
        let tau_inv = tau.inv().expect("tau nonzero");
        let x_diagonal = x_bar == Matrix::diagonal(&self.character.nu);
        let expected_q = chart_q(tau, &self.character.mu, &self.character.nu);
        let y_diagonal_formula = (0..self.params.n).all(|i| y_bar[(i, i)] == expected_q[i]);
        let twist = &(&y_bar * &x_bar).scale(tau) - &(&x_bar * &y_bar).scale(&tau_inv);
        let rank_one = twist.rank() == 1;
        Ok(CmMapOutput {
            x_bar,
            y_bar,
            certificate: CmCertificate {
                x_diagonal,
                y_diagonal_formula,
                rank_one,
            },
        })
    }

    /// `Z = T_1 ... T_{n-2} T_{n-1}^2 T_{n-2} ... T_1`.
    pub fn z_matrix(&self) -> Matrix {
        let n = self.params.n;
        assert!(n >= 2);
        let mut z = Matrix::identity(self.dim());
        for k in 1..n {
            z = &z * self.t(k);
        }
        for k in (1..n).rev() {
            z = &z * self.t(k);
        }
        z
    }

    /// The group commutator of `Y_1` and `X_1` in the orientation matching
    /// the evaluation convention: `Y_1 X_1 Y_1^{-1} X_1^{-1}`, using the
    /// product form of `Y_1^{-1}`.
    pub fn xy_commutator(&self) -> Matrix {
        let x1 = self.x(1);
        let x1_inv = x1.inverse().expect("X_1 invertible");
        &(&(self.y(1) * x1) * &self.y1_inv) * &x1_inv
    }

    /// Checks the commutator identity `Y_1 X_1 Y_1^{-1} X_1^{-1} = Z` (the
    /// orientation of the commutator is tied to the same convention choice
    /// that makes the restricted `X_1` diagonal) and the spectrum of `Z` on
    /// the invariant space: `{tau^{2(n-1)}} + {tau^{-2}, n-1 times}`.
    pub fn z_element(&self) -> Result<ZElementOutput, DahaError> {
        let n = self.params.n;
        if n < 2 {
            return Err(DahaError::DegreeTooSmall);
        }
        let z = self.z_matrix();
        if z != self.xy_commutator() {
            return Err(DahaError::CommutatorMismatch);
        }
        let e = Matrix::from_columns(&self.invariant_basis()?);
        let z_bar = e
            .solve_many(&(&z * &e))
            .ok_or(DahaError::RestrictionEscapes)?;
        let tau = &self.params.tau;
        let spectrum = vec![
            (tau.pow(2 * (n as i64 - 1)), 1usize),
            (tau.pow(-2), n - 1),
        ];
        if z_bar.charpoly() != poly_from_roots(&spectrum) {
            return Err(DahaError::SpectrumMismatch);
        }
        Ok(ZElementOutput { z, spectrum })
    }

    /// Table of `T_w` for every basis permutation, indexed by lexicographic
    /// rank. Each `T_w` is built from the deterministic reduced word, which
    /// strips the smallest descent on the right; the result is independent
    /// of the word choice because the braid relations hold.
    pub fn t_word_table(&self) -> Vec<Matrix> {
        let nn = self.dim();
        let mut order: Vec<usize> = (0..nn).collect();
        order.sort_by_key(|&r| self.basis[r].coxeter_length());
        let mut table: Vec<Option<Matrix>> = vec![None; nn];
        for &r in &order {
            let w = &self.basis[r];
            let Some(pos) = (0..w.degree().saturating_sub(1)).find(|&i| w.apply(i) > w.apply(i + 1))
            else {
                table[r] = Some(Matrix::identity(nn));
                continue;
            };
            // w = (w s_i) s_i with l(w s_i) = l(w) - 1, so T_w = T_{w s_i} T_i.
            let letter = pos + 1;
            let shorter = w.compose(&Permutation::simple(w.degree(), letter));
            let prefix = table[shorter.lex_rank()]
                .as_ref()
                .expect("shorter word already built");
            table[r] = Some(prefix * self.t(letter));
        }
        table.into_iter().map(|m| m.expect("table complete")).collect()
    }

    /// The symmetrizer `e = sum_w tau^{l(w)} T_w / sum_w tau^{2 l(w)}`:
    /// a rank-one idempotent with `T_i e = tau e`.
    pub fn symmetrizer(&self) -> Result<Matrix, DahaError> {
        let table = self.t_word_table();
        let tau = &self.params.tau;
        let mut numerator = Matrix::zeros(self.dim(), self.dim());
        let mut denominator = Rat::zero();
        for (r, w) in self.basis.iter().enumerate() {
            let l = w.coxeter_length() as i64;
            numerator = &numerator + &table[r].scale(&tau.pow(l));
            denominator = denominator + tau.pow(2 * l);
        }
        let inv = denominator
            .inv()
            .ok_or(DahaError::SymmetrizerDenominatorZero)?;
        Ok(numerator.scale(&inv))
    }

    /// True iff the `n!` vectors `T_w (id (x) 1)` are linearly independent,
    /// i.e. the module is the regular module of the finite Hecke algebra.
    pub fn regularity_check(&self) -> bool {
        let table = self.t_word_table();
        let columns: Vec<Vec<Rat>> = table.iter().map(|t| t.column(0)).collect();
        Matrix::from_columns(&columns).rank() == self.dim()
    }

    /// Dimension of `{M : M commutes with every generator matrix}`, an
    /// exact Schur-lemma surrogate: 1 for irreducible bundles. Joint
    /// commutation with the diagonal `X_i` cuts the search to coordinate
    /// pairs with equal label vectors; the remaining generators refine by
    /// exact nullspace computations. Supported for `n <= 4`.
    pub fn commutant_dimension(&self) -> Result<usize, DahaError> {
        let n = self.params.n;
        if n > 4 {
            return Err(DahaError::DegreeTooLarge { limit: 4, got: n });
        }
        let nn = self.dim();
        let mut classes: BTreeMap<Vec<Rat>, Vec<usize>> = BTreeMap::new();
        for r in 0..nn {
            let label: Vec<Rat> = (0..n).map(|i| self.mat_x[i][(r, r)].clone()).collect();
            classes.entry(label).or_default().push(r);
        }
        let mut candidates: Vec<Matrix> = Vec::new();
        for members in classes.values() {
            for &r in members {
                for &s in members {
                    let mut m = Matrix::zeros(nn, nn);
                    m[(r, s)] = Rat::one();
                    candidates.push(m);
                }
            }
        }
        let mut generators: Vec<&Matrix> = self.mat_t.iter().collect();
        generators.push(&self.mat_pi);
        for g in generators {
            if candidates.is_empty() {
                break;
            }
            let images: Vec<Vec<Rat>> = candidates
                .iter()
                .map(|b| {
                    let comm = &(g * b) - &(b * g);
                    (0..nn)
                        .flat_map(|r| comm.row(r).to_vec())
                        .collect::<Vec<Rat>>()
                })
                .collect();
            let coeffs = Matrix::from_columns(&images).nullspace();
            candidates = coeffs
                .iter()
                .map(|c| {
                    let mut acc = Matrix::zeros(nn, nn);
                    for (j, coeff) in c.iter().enumerate() {
                        if !coeff.is_zero() {
                            acc = &acc + &candidates[j].scale(coeff);
                        }
                    }
                    acc
                })
                .collect();
        }
        Ok(candidates.len())
    }

    /// Applies a `GL(2, Z)` generator; the result is a representation of
    /// the algebra at the same `tau` (sigma) or at `tau^{-1}` (epsilon).
    ///
    /// Sigma is the shear fixing every `X_i` and `T_i` and sending
    /// `pi -> X_1^{-1} pi`; on the commuting family this realizes
    /// `Y_1 -> Y_1 X_1` (meridian plus parallel) and the `Y` matrices are
    /// rebuilt from the twisted `pi` through the usual products. Epsilon
    /// swaps `X_i` and `Y_i`, inverts each `T_i`, and rebuilds `pi` from the
    /// inverted `Y_1` product expression; it lands at parameter `tau^{-1}`.
    pub fn gl2z_twist(&self, generator: Gl2zGen) -> RepBundle {
        let n = self.params.n;
        match generator {
            Gl2zGen::Sigma => {
                let x1_inv = self.x(1).inverse().expect("X_1 invertible");
                let pi = &x1_inv * &self.mat_pi;
                let pi_inv = &self
                    .mat_pi
                    .inverse()
                    .expect("pi invertible")
                    * self.x(1);
                let t_inv: Vec<Matrix> = (1..n).map(|i| self.t_inverse(i)).collect();
                let mat_y = y_family(&self.mat_t, &t_inv, &pi_inv);
                let y1_inv = y1_inverse(&pi, &t_inv);
                RepBundle {
                    params: self.params.clone(),
                    character: self.character.clone(),
                    basis: self.basis.clone(),
                    mat_x: self.mat_x.clone(),
                    mat_t: self.mat_t.clone(),
                    mat_pi: pi,
                    mat_y,
                    y1_inv,
                }
            }
            Gl2zGen::Epsilon => {
                let params = DahaParams {
                    n,
                    tau: self.params.tau.inv().expect("tau nonzero"),
                };
                let mat_t: Vec<Matrix> = (1..n).map(|i| self.t_inverse(i)).collect();
                let y1_inv = self.x(1).inverse().expect("X_1 invertible");
                let mut pi = y1_inv.clone();
                for t in &mat_t {
                    pi = &pi * t;
                }
                RepBundle {
                    params,
                    character: self.character.clone(),
                    basis: self.basis.clone(),
                    mat_x: self.mat_y.clone(),
                    mat_t,
                    mat_pi: pi,
                    mat_y: self.mat_x.clone(),
                    y1_inv,
                }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CmCertificate {
    pub x_diagonal: bool,
    pub y_diagonal_formula: bool,
    pub rank_one: bool,
}

impl CmCertificate {
    pub fn all_pass(&self) -> bool {
        self.x_diagonal && self.y_diagonal_formula && self.rank_one
    }
}

#[derive(Debug, Clone)]
pub struct CmMapOutput {
    pub x_bar: Matrix,
    pub y_bar: Matrix,
    pub certificate: CmCertificate,
}

#[derive(Debug, Clone)]
pub struct ZElementOutput {
    pub z: Matrix,
    pub spectrum: Vec<(Rat, usize)>,
}

/// Spectrum check for the tau = 1 companion: on the invariants of the
/// group-algebra bundle, `2 sum_{i=2}^{n} s_{1i}` has spectrum
/// `{2(n-1)} + {-2 with multiplicity n-1}`.
pub fn tau_one_companion_spectrum(n: usize, chi: &Character) -> Result<Vec<(Rat, usize)>, DahaError> {
    if n < 2 {
        return Err(DahaError::DegreeTooSmall);
    }
    let params = DahaParams::new_unchecked(n, Rat::one());
    let rep = build_rep(&params, chi)?;
    let mut a = Matrix::zeros(rep.dim(), rep.dim());
    for i in 2..=n {
        a = &a + &rep.perm_matrix(&Permutation::transposition(n, 1, i));
    }
    let doubled = a.scale(&Rat::int(2));
    let e = Matrix::from_columns(&rep.invariant_basis()?);
    let restricted = e
        .solve_many(&(&doubled * &e))
        .ok_or(DahaError::RestrictionEscapes)?;
    let spectrum = vec![(Rat::int(2 * (n as i64 - 1)), 1usize), (Rat::int(-2), n - 1)];
    if restricted.charpoly() != poly_from_roots(&spectrum) {
        return Err(DahaError::SpectrumMismatch);
    }
    Ok(spectrum)
}

/// Samples a generic character: nonzero `mu`, distinct nonzero `nu`.
pub fn sample_character(n: usize, rng: &mut ExactRng) -> Character {
    let mu = (0..n).map(|_| rng.nonzero_rat()).collect();
    let nu = rng.distinct_nonzero(n);
    Character::new(mu, nu).expect("sampled character is generic")
}

/// Samples a strongly generic character (also off the twisted divisor).
pub fn sample_strongly_generic_character(n: usize, tau: &Rat, rng: &mut ExactRng) -> Character {
    let mu = (0..n).map(|_| rng.nonzero_rat()).collect();
    let nu = rng.strongly_generic(tau, n);
    Character::new(mu, nu).expect("sampled character is generic")
}

/// True when `b` is a scalar multiple of `a` (both nonzero on a shared
/// support); used for the spherical-projection checks `e a e ~ e`.
pub fn is_scalar_multiple(a: &Matrix, b: &Matrix) -> bool {
    assert_eq!((a.n_rows(), a.n_cols()), (b.n_rows(), b.n_cols()));
    let mut ratio: Option<Rat> = None;
    for r in 0..a.n_rows() {
        for c in 0..a.n_cols() {
            let (x, y) = (&a[(r, c)], &b[(r, c)]);
            match (x.is_zero(), y.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                (false, false) => {
                    let q = y / x;
                    match &ratio {
                        None => ratio = Some(q),
                        Some(r0) if *r0 == q => {}
                        Some(_) => return false,
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    /// The worked 2-dimensional module: tau = 2, nu = (1, 3), mu = (5, 7),
    /// basis (id, s_1).
    fn small_rep() -> RepBundle {
        let params = DahaParams::new(2, r(2, 1)).unwrap();
        let chi = Character::new(vec![r(5, 1), r(7, 1)], vec![r(1, 1), r(3, 1)]).unwrap();
        build_rep(&params, &chi).unwrap()
    }

    fn generic_rep(n: usize, tau: Rat, seed: u64) -> RepBundle {
        let params = DahaParams::new(n, tau).unwrap();
        let mut rng = ExactRng::new(seed);
        let chi = sample_character(n, &mut rng);
        build_rep(&params, &chi).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(DahaParams::new(2, r(2, 1)).is_ok());
        assert!(matches!(DahaParams::new(2, r(1, 1)), Err(DahaError::BadTau(_))));
        assert!(matches!(DahaParams::new(2, r(-1, 1)), Err(DahaError::BadTau(_))));
        assert!(matches!(DahaParams::new(2, r(0, 1)), Err(DahaError::BadTau(_))));
        assert!(DahaParams::new(0, r(2, 1)).is_err());
        assert!(Character::new(vec![r(1, 1)], vec![r(0, 1)]).is_err());
        assert!(Character::new(vec![r(1, 1), r(2, 1)], vec![r(3, 1), r(3, 1)]).is_err());
    }

    #[test]
    fn hand_computed_generator_matrices() {
        let rep = small_rep();
        assert_eq!(rep.x(1), &Matrix::diagonal(&[r(1, 1), r(3, 1)]));
        assert_eq!(rep.x(2), &Matrix::diagonal(&[r(3, 1), r(1, 1)]));
        // T_1 (id) = 9/4 id + 11/4 s_1; T_1 (s_1) = -1/4 id - 3/4 s_1.
        let expected_t = Matrix::from_rows(vec![
            vec![r(9, 4), r(-1, 4)],
            vec![r(11, 4), r(-3, 4)],
        ]);
        assert_eq!(rep.t(1), &expected_t);
        // Forced by the quadratic relation on a 2-dimensional space.
        assert_eq!(rep.t(1).trace(), r(3, 2));
        assert_eq!(rep.t(1).det(), r(-1, 1));
        // T X_1 T = diag(3, 1) = X_2 by direct product.
        assert_eq!(&(&(rep.t(1) * rep.x(1)) * rep.t(1)), rep.x(2));
    }

    #[test]
    fn n_equals_one_degenerate_bundle() {
        let params = DahaParams::new(1, r(2, 1)).unwrap();
        let chi = Character::new(vec![r(5, 1)], vec![r(3, 1)]).unwrap();
        let rep = build_rep(&params, &chi).unwrap();
        assert_eq!(rep.x(1), &Matrix::diagonal(&[r(3, 1)]));
        assert_eq!(rep.pi(), &Matrix::diagonal(&[r(1, 5)]));
        assert_eq!(rep.y(1), &Matrix::diagonal(&[r(5, 1)]));
        assert!(rep.verify_relations().iter().all(|c| c.pass));
        let out = rep.cm_map().unwrap();
        assert_eq!(out.x_bar, Matrix::diagonal(&[r(3, 1)]));
        assert_eq!(out.y_bar, Matrix::diagonal(&[r(5, 1)]));
        assert!(out.certificate.all_pass());
        assert_eq!(rep.symmetrizer().unwrap(), Matrix::identity(1));
    }

    #[test]
    fn relation_suite_exact_for_small_ranks() {
        for (n, seed) in [(2, 1u64), (3, 2), (4, 3)] {
            for tau in [r(2, 1), r(3, 2), r(-5, 7)] {
                let rep = generic_rep(n, tau.clone(), seed);
                let checks = rep.verify_relations();
                assert!(
                    checks.iter().all(|c| c.pass),
                    "n={n} tau={tau} failures: {:?}",
                    checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn tau_one_group_algebra_degeneration() {
        // tau = 1 is allowed only through the unchecked constructor; the
        // T matrices become permutation matrices and all relations hold.
        let params = DahaParams::new_unchecked(3, Rat::one());
        let chi = Character::new(
            vec![r(5, 1), r(7, 1), r(11, 1)],
            vec![r(1, 1), r(3, 1), r(4, 1)],
        )
        .unwrap();
        let rep = build_rep(&params, &chi).unwrap();
        assert_eq!(rep.t(1), &rep.perm_matrix(&Permutation::simple(3, 1)));
        assert_eq!(rep.t(2), &rep.perm_matrix(&Permutation::simple(3, 2)));
        assert!(rep.verify_relations().iter().all(|c| c.pass));
    }

    #[test]
    fn broken_bundle_is_reported_with_witness() {
        let rep = small_rep();
        let broken = rep.with_replaced_t(1, Matrix::identity(2));
        let checks = broken.verify_relations();
        let txt = checks
            .iter()
            .find(|c| c.id == "TXT=X" && c.instance == vec![1])
            .unwrap();
        assert!(!txt.pass);
        let witness = txt.witness.as_ref().unwrap();
        assert!(witness.get("row").is_some());
        assert!(witness.get("lhs").is_some());
    }

    #[test]
    fn invariant_basis_small_cases() {
        let rep = small_rep();
        let basis = rep.invariant_basis().unwrap();
        assert_eq!(basis, vec![
            vec![r(1, 1), r(0, 1)],
            vec![r(0, 1), r(1, 1)],
        ]);

        let rep3 = generic_rep(3, r(2, 1), 5);
        let basis3 = rep3.invariant_basis().unwrap();
        // Lexicographic ranks in S_3: id=0, s_2=1, s_1=2, s_1 s_2=3,
        // s_2 s_1=4, s_1 s_2 s_1=5.
        let dense = |idx: &[usize]| {
            let mut v = vec![Rat::zero(); 6];
            for &i in idx {
                v[i] = Rat::one();
            }
            v
        };
        assert_eq!(basis3[0], dense(&[0, 1])); // id + s_2
        assert_eq!(basis3[1], dense(&[2, 4])); // s_1 + s_2 s_1
        assert_eq!(basis3[2], dense(&[3, 5])); // s_1 s_2 + s_1 s_2 s_1
        // Exact nullspace cross-check: the stacked (T_2 - tau) system has
        // a 3-dimensional solution space spanned by the e_i (the method
        // itself errors if not).
    }

    #[test]
    fn cm_map_frozen_values() {
        let rep = small_rep();
        let out = rep.cm_map().unwrap();
        assert_eq!(out.x_bar, Matrix::diagonal(&[r(1, 1), r(3, 1)]));
        assert_eq!(out.y_bar[(0, 0)], r(-5, 4));
        assert_eq!(out.y_bar[(1, 1)], r(77, 4));
        assert!(out.certificate.all_pass());
        // Independent restriction oracle: restrict the full matrices by
        // solving on the invariant columns, then check the rank-one
        // condition by fraction-free elimination.
        let tau = r(2, 1);
        let twist =
            &(&out.x_bar * &out.y_bar).scale(&tau) - &(&out.y_bar * &out.x_bar).scale(&r(1, 2));
        assert_eq!(twist.rank(), 1);
    }

    #[test]
    fn cm_map_off_diagonal_rank_one_factorization() {
        // B_ij = (tau nu_i - tau^{-1} nu_j) Ybar_ij / (tau - tau^{-1}) has
        // rank one.
        for n in 2..=4 {
            let rep = generic_rep(n, r(2, 1), 17 + n as u64);
            let out = rep.cm_map().unwrap();
            assert!(out.certificate.all_pass());
            let nu = rep.character().nu();
            let tau = r(2, 1);
            let tau_inv = r(1, 2);
            let delta = &tau - &tau_inv;
            let b = Matrix::from_fn(n, n, |i, j| {
                (&tau * &nu[j] - &tau_inv * &nu[i]) * &out.y_bar[(i, j)] / &delta
            });
            assert_eq!(b.rank(), 1, "n = {n}");
            // The rank-one factorization reproduces the diagonal parameters:
            // with B = p (x) s normalized by p_1 = 1, q_i = p_i s_i / nu_i.
            let s: Vec<Rat> = (0..n).map(|j| b[(0, j)].clone()).collect();
            let p: Vec<Rat> = (0..n).map(|i| &b[(i, 0)] / &s[0]).collect();
            for i in 0..n {
                assert_eq!(&p[i] * &s[i] / &nu[i], out.y_bar[(i, i)]);
            }
        }
    }

    #[test]
    fn z_element_spectra() {
        let rep = small_rep();
        let out = rep.z_element().unwrap();
        assert_eq!(out.spectrum, vec![(r(4, 1), 1), (r(1, 4), 1)]);
        // Z = T_1^2 on the 2-dimensional module.
        assert_eq!(out.z, rep.t(1) * rep.t(1));

        let rep3 = generic_rep(3, r(2, 1), 11);
        let out3 = rep3.z_element().unwrap();
        assert_eq!(out3.spectrum, vec![(r(16, 1), 1), (r(1, 4), 2)]);
    }

    #[test]
    fn tau_one_companion() {
        for n in 2..=4 {
            let mut rng = ExactRng::new(23 + n as u64);
            let chi = sample_character(n, &mut rng);
            let spectrum = tau_one_companion_spectrum(n, &chi).unwrap();
            assert_eq!(spectrum[0], (Rat::int(2 * (n as i64 - 1)), 1));
            assert_eq!(spectrum[1], (Rat::int(-2), n - 1));
        }
    }

    #[test]
    fn symmetrizer_properties() {
        let rep = small_rep();
        let e = rep.symmetrizer().unwrap();
        // e = (I + 2 T_1) / 5 at tau = 2.
        let expected = (&Matrix::identity(2) + &rep.t(1).scale(&r(2, 1))).scale(&r(1, 5));
        assert_eq!(e, expected);
        assert_eq!(&e * &e, e);
        assert_eq!(rep.t(1) * &e, e.scale(&r(2, 1)));
        assert_eq!(e.rank(), 1);

        let rep3 = generic_rep(3, r(2, 1), 31);
        let e3 = rep3.symmetrizer().unwrap();
        assert_eq!(&e3 * &e3, e3);
        assert_eq!(e3.rank(), 1);
        for i in 1..3 {
            assert_eq!(rep3.t(i) * &e3, e3.scale(&r(2, 1)));
        }
        // Spherical products: e a e is a scalar multiple of e, and the
        // compressed elements commute.
        let eae = &(&e3 * rep3.x(1)) * &e3;
        let ebe = &(&e3 * rep3.y(1)) * &e3;
        assert!(is_scalar_multiple(&e3, &eae));
        assert!(is_scalar_multiple(&e3, &ebe));
        assert_eq!(&eae * &ebe, &ebe * &eae);
    }

    #[test]
    fn symmetrizer_is_word_independent() {
        // Rebuild every T_w from the alternative (largest-descent) reduced
        // words; the braid relations force equality word by word.
        let rep = generic_rep(4, r(3, 2), 41);
        let table = rep.t_word_table();
        for idx in [3usize, 7, 11, 17, 23] {
            let w = &rep.basis()[idx];
            let alt_word = w.reduced_word_largest_descent();
            let mut alt = Matrix::identity(rep.dim());
            for k in &alt_word {
                alt = &alt * rep.t(*k);
            }
            assert_eq!(alt, table[idx], "w = {w:?}");
        }
    }

    #[test]
    fn regularity_and_commutant() {
        let rep = small_rep();
        assert!(rep.regularity_check());
        assert_eq!(rep.commutant_dimension().unwrap(), 1);

        let rep3 = generic_rep(3, r(2, 1), 43);
        assert!(rep3.regularity_check());
        assert_eq!(rep3.commutant_dimension().unwrap(), 1);

        // Degenerate surrogate: T_1 = tau I collapses the T-orbit of the
        // cyclic vector.
        let surrogate = rep.with_replaced_t(1, Matrix::identity(2).scale(&r(2, 1)));
        assert!(!surrogate.regularity_check());

        // Fully degenerate smash-product fixture: tau = 1, mu = nu = (1, 1).
        let params = DahaParams::new_unchecked(2, Rat::one());
        let chi = Character::new_unchecked(vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(1, 1)]);
        let degenerate = build_rep(&params, &chi).unwrap();
        assert!(degenerate.commutant_dimension().unwrap() >= 2);
    }

    #[test]
    fn sigma_twist_preserves_relations() {
        let rep = small_rep();
        let twisted = rep.gl2z_twist(Gl2zGen::Sigma);
        assert!(twisted.verify_relations().iter().all(|c| c.pass));
        assert_eq!(twisted.params().tau(), &r(2, 1));
        // The twist realizes Y_1 -> Y_1 X_1.
        assert_eq!(twisted.y(1), &(rep.y(1) * rep.x(1)));
        let rep3 = generic_rep(3, r(2, 1), 47);
        let twisted3 = rep3.gl2z_twist(Gl2zGen::Sigma);
        assert!(twisted3.verify_relations().iter().all(|c| c.pass));
        assert_eq!(twisted3.y(1), &(rep3.y(1) * rep3.x(1)));
    }

    #[test]
    fn epsilon_twist_lands_at_inverse_parameter() {
        let rep = small_rep();
        let eps = rep.gl2z_twist(Gl2zGen::Epsilon);
        assert_eq!(eps.params().tau(), &r(1, 2));
        assert!(eps.verify_relations().iter().all(|c| c.pass));
        assert_eq!(eps.x(1), rep.y(1));
        assert_eq!(eps.y(1), rep.x(1));
        // Involution on the full generator set.
        let back = eps.gl2z_twist(Gl2zGen::Epsilon);
        assert_eq!(back.x(1), rep.x(1));
        assert_eq!(back.y(2), rep.y(2));
        assert_eq!(back.t(1), rep.t(1));
        assert_eq!(back.pi(), rep.pi());
    }

    #[test]
    fn bundle_export_shape() {
        let rep = small_rep();
        let value = serde_json::to_value(&rep).unwrap();
        assert_eq!(value["params"]["n"], 2);
        assert_eq!(value["params"]["tau"], "2");
        assert_eq!(value["basis"][0], serde_json::json!([1, 2]));
        // Matrices serialize as row-major arrays of rational strings.
        assert_eq!(value["mat_x"][0][0][0], "1");
        assert_eq!(value["mat_t"][0][1][0], "11/4");
        assert!(value.get("y1_inv").is_none());
    }
}
