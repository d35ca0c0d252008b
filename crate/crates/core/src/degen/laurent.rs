//! Multivariate Laurent polynomials over exact rationals, with the
//! symmetric-group action by exponent permutation and the exact divided
//! differences the Dunkl operators are built from.

use crate::exact::Rat;
use crate::symgroup::Permutation;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Terms map exponent vectors in `Z^n` to nonzero coefficients; zero
/// coefficients are never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    n_vars: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    pub fn zero(n_vars: usize) -> Self {
        LaurentPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_vars: usize) -> Self {
        LaurentPoly::constant(n_vars, Rat::one())
    }

    pub fn constant(n_vars: usize, value: Rat) -> Self {
        let mut p = LaurentPoly::zero(n_vars);
        if !value.is_zero() {
            p.terms.insert(vec![0; n_vars], value);
        }
        p
    }

    /// The variable `x_i`, 1-based.
    pub fn var(n_vars: usize, i: usize) -> Self {
        LaurentPoly::monomial_unchecked(n_vars, unit_exp(n_vars, i, 1), Rat::one())
    }

    pub fn monomial(n_vars: usize, exponents: Vec<i64>, coeff: Rat) -> Self {
        assert_eq!(exponents.len(), n_vars);
        LaurentPoly::monomial_unchecked(n_vars, exponents, coeff)
    }

    fn monomial_unchecked(n_vars: usize, exponents: Vec<i64>, coeff: Rat) -> Self {
        let mut p = LaurentPoly::zero(n_vars);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[i64]) -> Rat {
        self.terms.get(exponents).cloned().unwrap_or_else(Rat::zero)
    }

    /// True when every exponent is nonnegative (polynomial flavor).
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    fn insert_add(&mut self, exponents: Vec<i64>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponents) {
            Some(existing) => {
                *existing = &*existing + &coeff;
                if existing.is_zero() {
                    self.terms.remove(&exponents);
                }
            }
            None => {
                self.terms.insert(exponents, coeff);
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly::zero(self.n_vars);
        }
        LaurentPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = LaurentPoly::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(exps, ca * cb);
            }
        }
        out
    }

    /// Multiplication by `x_i^power` (1-based `i`), exact for any sign.
    pub fn mul_var(&self, i: usize, power: i64) -> LaurentPoly {
        LaurentPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i - 1] += power;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Action of a permutation on variables: `x_i -> x_{w(i)}`.
    pub fn apply_perm(&self, w: &Permutation) -> LaurentPoly {
        assert_eq!(w.degree(), self.n_vars);
        LaurentPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut out = vec![0; self.n_vars];
                    for (pos, &exp) in e.iter().enumerate() {
                        out[w.apply(pos)] = exp;
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }

    /// Transposition action `s_{ij}` (1-based indices).
    pub fn swap_vars(&self, i: usize, j: usize) -> LaurentPoly {
        LaurentPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i - 1, j - 1);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Partial derivative `d/dx_i`, 1-based; exact on Laurent exponents.
    pub fn deriv(&self, i: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n_vars);
        for (e, c) in &self.terms {
            let k = e[i - 1];
            if k == 0 {
                continue;
            }
            let mut e = e.clone();
            e[i - 1] -= 1;
            out.insert_add(e, Rat::int(k) * c);
        }
        out
    }

    /// The Euler-type operator `x_i d/dx_i`: scales each term by its
    /// `i`-exponent without shifting it.
    pub fn theta(&self, i: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n_vars);
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), Rat::int(e[i - 1]) * c);
        }
        out
    }

    /// The divided difference `g` with `(x_i - x_j) g = (s_ij - 1) f`,
    /// computed term by term; the numerator is always divisible, so the
    /// result is again a (Laurent) polynomial.
    pub fn divided_difference(&self, i: usize, j: usize) -> LaurentPoly {
        assert_ne!(i, j);
        let mut out = LaurentPoly::zero(self.n_vars);
        for (e, c) in &self.terms {
            let p = e[i - 1];
            let q = e[j - 1];
            if p == q {
                continue;
            }
            let lo = p.min(q);
            let hi = p.max(q);
            // (s-1) x^e = +- m x_i^lo x_j^lo (x_i^{hi-lo} - x_j^{hi-lo}),
            // and (x_i^d - x_j^d)/(x_i - x_j) telescopes.
            let sign = if p > q { -c.clone() } else { c.clone() };
            for l in 0..(hi - lo) {
                let mut exps = e.clone();
                exps[i - 1] = lo + (hi - lo - 1 - l);
                exps[j - 1] = lo + l;
                out.insert_add(exps, sign.clone());
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, k)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{}*{}", c, vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

#[derive(Serialize)]
struct TermRecord<'a> {
    exponents: &'a [i64],
    coeff: &'a Rat,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&TermRecord {
                exponents: e,
                coeff: c,
            })?;
        }
        seq.end()
    }
}

fn unit_exp(n_vars: usize, i: usize, power: i64) -> Vec<i64> {
    assert!((1..=n_vars).contains(&i));
    let mut e = vec![0; n_vars];
    e[i - 1] = power;
    e
}
