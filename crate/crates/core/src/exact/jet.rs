//! First-order jets over a fixed variable set: a value together with its
//! exact partial derivatives. Arithmetic follows the product and quotient
//! rules componentwise, all over [`Rat`].

use super::{ArithOp, ExactError, Rat};

/// A rational value with exact first partials with respect to an ordered
/// variable set. The partials vector length identifies the variable set; two
/// jets combine only when those lengths agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    value: Rat,
    partials: Vec<Rat>,
}

impl Jet {
    /// A constant: value with all partials zero.
    pub fn constant(value: Rat, n_vars: usize) -> Self {
        Jet {
            value,
            partials: vec![Rat::zero(); n_vars],
        }
    }

    /// Seeds the coordinate function `x_index` at `point`: the value is
    /// `point[index]` and the partials form the matching unit vector.
    pub fn var(point: &[Rat], index: usize) -> Result<Self, ExactError> {
        if index >= point.len() {
            return Err(ExactError::VarIndexOutOfRange {
                index,
                len: point.len(),
            });
        }
        let mut partials = vec![Rat::zero(); point.len()];
        partials[index] = Rat::one();
        Ok(Jet {
            value: point[index].clone(),
            partials,
        })
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    pub fn partials(&self) -> &[Rat] {
        &self.partials
    }

    pub fn partial(&self, k: usize) -> &Rat {
        &self.partials[k]
    }

    pub fn n_vars(&self) -> usize {
        self.partials.len()
    }

    fn check_compatible(&self, other: &Jet) -> Result<(), ExactError> {
        if self.n_vars() == other.n_vars() {
            Ok(())
        } else {
            Err(ExactError::PartialsMismatch {
                left: self.n_vars(),
                right: other.n_vars(),
            })
        }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        self.check_compatible(other).expect("jet variable sets");
        Jet {
            value: &self.value + &other.value,
            partials: self
                .partials
                .iter()
                .zip(&other.partials)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        self.check_compatible(other).expect("jet variable sets");
        Jet {
            value: &self.value - &other.value,
            partials: self
                .partials
                .iter()
                .zip(&other.partials)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Product rule: `(fg)' = f'g + fg'`.
    pub fn mul(&self, other: &Jet) -> Jet {
        self.check_compatible(other).expect("jet variable sets");
        Jet {
            value: &self.value * &other.value,
            partials: self
                .partials
                .iter()
                .zip(&other.partials)
                .map(|(a, b)| a * &other.value + &self.value * b)
                .collect(),
        }
    }

    /// Quotient rule: `(f/g)' = (f'g - fg')/g^2`. Defined only for a divisor
    /// with nonzero value.
    pub fn div(&self, other: &Jet) -> Result<Jet, ExactError> {
        self.check_compatible(other)?;
        if other.value.is_zero() {
            return Err(ExactError::DivisionByZero { op: "jet div" });
        }
        let g_sq = &other.value * &other.value;
        Ok(Jet {
            value: &self.value / &other.value,
            partials: self
                .partials
                .iter()
                .zip(&other.partials)
                .map(|(a, b)| (a * &other.value - &self.value * b) / &g_sq)
                .collect(),
        })
    }

    pub fn neg(&self) -> Jet {
        Jet {
            value: -&self.value,
            partials: self.partials.iter().map(|p| -p).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Jet {
        Jet {
            value: k * &self.value,
            partials: self.partials.iter().map(|p| k * p).collect(),
        }
    }

    pub fn inv(&self) -> Result<Jet, ExactError> {
        Jet::constant(Rat::one(), self.n_vars()).div(self)
    }
}

/// Spec-level jet operation entry point with full error reporting.
pub fn jet_arith(a: &Jet, b: &Jet, op: ArithOp) -> Result<Jet, ExactError> {
    a.check_compatible(b)?;
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    fn point(vals: &[(i64, i64)]) -> Vec<Rat> {
        vals.iter().map(|&(n, d)| r(n, d)).collect()
    }

    #[test]
    fn var_seeds_unit_partials() {
        let p = point(&[(2, 1), (3, 1)]);
        let x = Jet::var(&p, 0).unwrap();
        assert_eq!(x.value(), &r(2, 1));
        assert_eq!(x.partials(), &[Rat::one(), Rat::zero()]);
        let y = Jet::var(&p, 1).unwrap();
        assert_eq!(y.value(), &r(3, 1));
        assert_eq!(y.partials(), &[Rat::zero(), Rat::one()]);
        assert_eq!(
            Jet::var(&p, 5),
            Err(ExactError::VarIndexOutOfRange { index: 5, len: 2 })
        );
    }

    #[test]
    fn product_rule_example() {
        let p = point(&[(2, 1), (3, 1)]);
        let x = Jet::var(&p, 0).unwrap();
        let y = Jet::var(&p, 1).unwrap();
        let xy = x.mul(&y);
        assert_eq!(xy.value(), &r(6, 1));
        assert_eq!(xy.partials(), &[r(3, 1), r(2, 1)]);
        let zero = x.sub(&x);
        assert!(zero.value().is_zero());
        assert!(zero.partials().iter().all(Rat::is_zero));
    }

    #[test]
    fn quotient_rule_example() {
        // a = (1; (1,0)), b = (2; (0,1)): a/b = (1/2; (1/2, -1/4)).
        let p = point(&[(1, 1), (2, 1)]);
        let a = Jet::var(&p, 0).unwrap();
        let b = Jet::var(&p, 1).unwrap();
        let q = jet_arith(&a, &b, ArithOp::Div).unwrap();
        assert_eq!(q.value(), &r(1, 2));
        assert_eq!(q.partials(), &[r(1, 2), r(-1, 4)]);

        let zero = Jet::constant(Rat::zero(), 2);
        assert_eq!(
            jet_arith(&a, &zero, ArithOp::Div),
            Err(ExactError::DivisionByZero { op: "jet div" })
        );
    }

    #[test]
    fn incompatible_variable_sets_are_rejected() {
        let a = Jet::constant(Rat::one(), 2);
        let b = Jet::constant(Rat::one(), 3);
        assert_eq!(
            jet_arith(&a, &b, ArithOp::Add),
            Err(ExactError::PartialsMismatch { left: 2, right: 3 })
        );
    }

    /// Difference-quotient oracle: for a polynomial expression h of degree d,
    /// (h(x + eps*e_k) - h(x)) / eps is a polynomial in eps of degree d-1;
    /// interpolating it at d distinct rational eps values and evaluating at
    /// eps = 0 recovers the exact partial derivative.
    fn difference_quotient_partial<F>(h: &F, x: &[Rat], k: usize, degree: usize) -> Rat
    where
        F: Fn(&[Rat]) -> Rat,
    {
        let eps_points: Vec<Rat> = (1..=degree as i64)
            .map(|i| Rat::new(1, 1 + i).unwrap())
            .collect();
        let h0 = h(x);
        let samples: Vec<(Rat, Rat)> = eps_points
            .iter()
            .map(|eps| {
                let mut shifted = x.to_vec();
                shifted[k] = &shifted[k] + eps;
                ((h(&shifted) - &h0) / eps, eps.clone())
            })
            .map(|(q, eps)| (eps, q))
            .collect();
        // Lagrange interpolation evaluated at eps = 0.
        let mut acc = Rat::zero();
        for (i, (xi, yi)) in samples.iter().enumerate() {
            let mut weight = Rat::one();
            for (j, (xj, _)) in samples.iter().enumerate() {
                if i != j {
                    weight = weight * (-xj) / (xi - xj);
                }
            }
            acc = acc + yi * &weight;
        }
        acc
    }

    #[test]
    fn jet_partials_match_difference_quotient_oracle() {
        // h(x0, x1, x2) = x0^2*x1 + 3*x2*x0 - x1*x2 + 5, degree 3.
        let rat_h = |x: &[Rat]| -> Rat {
            &x[0] * &x[0] * &x[1] + Rat::int(3) * &x[2] * &x[0] - &x[1] * &x[2] + Rat::int(5)
        };
        let jet_h = |x: &[Rat]| -> Jet {
            let v: Vec<Jet> = (0..3).map(|i| Jet::var(x, i).unwrap()).collect();
            let three = Jet::constant(Rat::int(3), 3);
            let five = Jet::constant(Rat::int(5), 3);
            v[0].mul(&v[0])
                .mul(&v[1])
                .add(&three.mul(&v[2]).mul(&v[0]))
                .sub(&v[1].mul(&v[2]))
                .add(&five)
        };
        let x = point(&[(2, 3), (-1, 2), (5, 7)]);
        let jet = jet_h(&x);
        assert_eq!(jet.value(), &rat_h(&x));
        for k in 0..3 {
            let oracle = difference_quotient_partial(&rat_h, &x, k, 3);
            assert_eq!(jet.partial(k), &oracle, "partial {k}");
        }
    }

    #[test]
    fn division_consistency() {
        // For h = f/g, check h*g = f exactly at the jet level.
        let x = point(&[(3, 2), (7, 5)]);
        let f = Jet::var(&x, 0).unwrap().mul(&Jet::var(&x, 1).unwrap());
        let g = Jet::var(&x, 0)
            .unwrap()
            .add(&Jet::constant(Rat::one(), 2));
        let h = f.div(&g).unwrap();
        assert_eq!(h.mul(&g), f);
    }
}
