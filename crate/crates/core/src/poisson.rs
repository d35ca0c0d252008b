//! Exact verification that the coordinate change from module parameters
//! `(nu, mu)` to chart coordinates `(lambda, q)` carries the bracket
//! `{nu_i, mu_j} = delta_ij nu_i mu_j` to the closed-form chart bracket.
//!
//! The chain-rule side evaluates `lambda_i = nu_i` and
//! `q_i = mu_i prod_{j != i} (tau^{-1} nu_j - tau nu_i)/(nu_j - nu_i)` as
//! jets in the `2n` variables `(nu_1..nu_n, mu_1..mu_n)` and computes
//! `{f, g} = sum_k nu_k mu_k (df/dnu_k dg/dmu_k - df/dmu_k dg/dnu_k)`
//! exactly. The closed-form side evaluates the displayed bracket table at
//! the image point. Both sides are fixed rational functions, so exact
//! agreement at many random rational points certifies the identity.

use crate::cmspace::{chart_q, CmCoords};
use crate::exact::{twisted_delta, vandermonde_delta, Jet, Rat};
use crate::linalg::Matrix;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PoissonError {
    #[error("chart violation: {0}")]
    ChartViolation(String),
    #[error("mu and nu must have equal length")]
    SizeMismatch,
}

/// Bracket values of the coordinate functions at a point: `LL[i][j] =
/// {lambda_i, lambda_j}`, `LQ[i][j] = {lambda_i, q_j}`, `QQ[i][j] =
/// {q_i, q_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketTable {
    pub n: usize,
    pub ll: Matrix,
    pub lq: Matrix,
    pub qq: Matrix,
}

impl BracketTable {
    pub fn is_antisymmetric(&self) -> bool {
        self.ll == -&self.ll.transpose() && self.qq == -&self.qq.transpose()
    }
}

fn check_point(tau: &Rat, nu: &[Rat], mu: &[Rat]) -> Result<(), PoissonError> {
    if nu.len() != mu.len() {
        return Err(PoissonError::SizeMismatch);
    }
    if nu.iter().any(Rat::is_zero) || mu.iter().any(Rat::is_zero) {
        return Err(PoissonError::ChartViolation("zero coordinate".into()));
    }
    if vandermonde_delta(nu).is_zero() {
        return Err(PoissonError::ChartViolation("repeated nu".into()));
    }
    if twisted_delta(tau, nu).is_zero() {
        return Err(PoissonError::ChartViolation(
            "nu on the twisted divisor".into(),
        ));
    }
    Ok(())
}

/// The jets of `lambda_i` and `q_i` over the variables
/// `(nu_1..nu_n, mu_1..mu_n)` at the given point.
fn coordinate_jets(tau: &Rat, nu: &[Rat], mu: &[Rat]) -> (Vec<Jet>, Vec<Jet>) {
    let n = nu.len();
    let point: Vec<Rat> = nu.iter().chain(mu.iter()).cloned().collect();
    let nu_jets: Vec<Jet> = (0..n).map(|i| Jet::var(&point, i).expect("in range")).collect();
    let mu_jets: Vec<Jet> = (0..n)
        .map(|i| Jet::var(&point, n + i).expect("in range"))
        .collect();
    let tau_inv = tau.inv().expect("tau nonzero");
    let lambda = nu_jets.clone();
    let q: Vec<Jet> = (0..n)
        .map(|i| {
            let mut acc = mu_jets[i].clone();
            for j in 0..n {
                if j != i {
                    let numer = nu_jets[j].scale(&tau_inv).sub(&nu_jets[i].scale(tau));
                    let denom = nu_jets[j].sub(&nu_jets[i]);
                    acc = acc.mul(&numer.div(&denom).expect("nu distinct"));
                }
            }
            acc
        })
        .collect();
    (lambda, q)
}

/// `{f, g}` from the base bracket `{nu_k, mu_k} = nu_k mu_k`.
fn base_bracket(f: &Jet, g: &Jet, nu: &[Rat], mu: &[Rat]) -> Rat {
    let n = nu.len();
    let mut acc = Rat::zero();
    for k in 0..n {
        let weight = &nu[k] * &mu[k];
        let term = f.partial(k) * g.partial(n + k) - f.partial(n + k) * g.partial(k);
        acc = acc + weight * term;
    }
    acc
}

/// Chain-rule bracket table at `(nu, mu)`.
pub fn chain_rule_brackets(tau: &Rat, nu: &[Rat], mu: &[Rat]) -> Result<BracketTable, PoissonError> {
    check_point(tau, nu, mu)?;
    let n = nu.len();
    let (lambda, q) = coordinate_jets(tau, nu, mu);
    let ll = Matrix::from_fn(n, n, |i, j| base_bracket(&lambda[i], &lambda[j], nu, mu));
    let lq = Matrix::from_fn(n, n, |i, j| base_bracket(&lambda[i], &q[j], nu, mu));
    let qq = Matrix::from_fn(n, n, |i, j| base_bracket(&q[i], &q[j], nu, mu));
    Ok(BracketTable { n, ll, lq, qq })
}

/// Closed-form chart bracket table at `(lambda, q)`:
/// `{lambda_i, lambda_j} = 0`, `{lambda_i, q_j} = delta_ij lambda_i q_i`,
/// and the displayed rational expression for `{q_i, q_j}`.
pub fn fr_brackets(tau: &Rat, coords: &CmCoords) -> Result<BracketTable, PoissonError> {
    coords
        .check_off_divisor(tau)
        .map_err(|e| PoissonError::ChartViolation(e.to_string()))?;
    let n = coords.len();
    let lambda = coords.lambda();
    let q = coords.q();
    let tau_inv = tau.inv().expect("tau nonzero");
    let delta_sq = (tau - &tau_inv).pow(2);
    let ll = Matrix::zeros(n, n);
    let lq = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            &lambda[i] * &q[i]
        } else {
            Rat::zero()
        }
    });
    let qq = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            return Rat::zero();
        }
        let numer = &delta_sq
            * &(&q[i] * &q[j])
            * (&lambda[i] + &lambda[j])
            * (&lambda[i] * &lambda[j]);
        let denom = (tau * &lambda[i] - &tau_inv * &lambda[j])
            * (tau * &lambda[j] - &tau_inv * &lambda[i])
            * (&lambda[i] - &lambda[j]);
        numer / denom
    });
    Ok(BracketTable { n, ll, lq, qq })
}

/// Outcome of comparing the two bracket computations at one point.
#[derive(Debug, Clone)]
pub struct MatchOutcome {
    pub matched: bool,
    pub witness: Option<serde_json::Value>,
}

/// Entry-by-entry exact comparison of the chain-rule table against the
/// closed form evaluated at the image `(lambda(nu), q(mu, nu))`.
pub fn poisson_match(tau: &Rat, nu: &[Rat], mu: &[Rat]) -> Result<MatchOutcome, PoissonError> {
    let chain = chain_rule_brackets(tau, nu, mu)?;
    let lambda = nu.to_vec();
    let q = chart_q(tau, mu, nu);
    let coords = CmCoords::new(lambda, q)
        .map_err(|e| PoissonError::ChartViolation(e.to_string()))?;
    let closed = fr_brackets(tau, &coords)?;
    for (name, lhs, rhs) in [
        ("lambda-lambda", &chain.ll, &closed.ll),
        ("lambda-q", &chain.lq, &closed.lq),
        ("q-q", &chain.qq, &closed.qq),
    ] {
        if let Some((i, j)) = lhs.first_difference(rhs) {
            return Ok(MatchOutcome {
                matched: false,
                witness: Some(json!({
                    "pair": [i + 1, j + 1],
                    "table": name,
                    "lhs": lhs[(i, j)].to_string(),
                    "rhs": rhs[(i, j)].to_string(),
                    "point": {
                        "nu": nu.iter().map(Rat::to_string).collect::<Vec<_>>(),
                        "mu": mu.iter().map(Rat::to_string).collect::<Vec<_>>(),
                    },
                })),
            });
        }
    }
    Ok(MatchOutcome {
        matched: true,
        witness: None,
    })
}
