//! Exact rational root extraction for monic squarefree polynomials.
//!
//! The polynomial is rescaled to a monic integer one (roots scale by the
//! coefficient-denominator lcm), its roots are located modulo a prime by a
//! direct scan, lifted by Hensel's lemma until the modulus exceeds twice the
//! root bound, and verified exactly over the integers. Everything is exact;
//! primes where the reduction fails to stay squarefree are skipped.

use crate::exact::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// All rational roots of a monic polynomial over the rationals, given as
/// ascending coefficients with leading coefficient 1. The input must be
/// squarefree (no repeated roots); callers check this with a gcd test.
pub fn rational_roots_monic_squarefree(coeffs: &[Rat]) -> Vec<Rat> {
    assert!(coeffs.last().is_some_and(Rat::is_one), "monic input expected");
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return vec![];
    }
    if degree == 1 {
        return vec![-&coeffs[0]];
    }
    // Rescale x = y / d with d the denominator lcm: q(y) = d^n p(y/d) is
    // monic with integer coefficients and roots d * (roots of p).
    let scale = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let int_coeffs: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let power = scale.pow((degree - i) as u32);
            c.numer() * (power / c.denom())
        })
        .collect();
    integer_roots_monic(&int_coeffs)
        .into_iter()
        .map(|y| Rat::from_big(y, scale.clone()).expect("scale is positive"))
        .collect()
}

/// Integer roots of a monic squarefree integer polynomial.
fn integer_roots_monic(coeffs: &[BigInt]) -> Vec<BigInt> {
    let degree = coeffs.len() - 1;
    // Cauchy bound: every root satisfies |y| <= 1 + max |c_i|.
    let bound: BigInt = coeffs
        .iter()
        .take(degree)
        .map(Signed::abs)
        .max()
        .unwrap_or_else(BigInt::zero)
        + 1;

    let mut prime = 10_007u64;
    let (p, residues) = loop {
        if let Some(residues) = simple_roots_mod_p(coeffs, prime) {
            break (prime, residues);
        }
        prime = next_prime(prime + 1);
    };

    let mut out = Vec::new();
    for r0 in residues {
        if let Some(root) = hensel_lift(coeffs, p, r0, &bound) {
            if poly_eval_int(coeffs, &root).is_zero() {
                out.push(root);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Roots of the reduction mod `p`, provided the reduction stays squarefree;
/// `None` asks the caller to try another prime.
fn simple_roots_mod_p(coeffs: &[BigInt], p: u64) -> Option<Vec<u64>> {
    let reduced: Vec<u64> = coeffs.iter().map(|c| reduce_mod(c, p)).collect();
    let derivative: Vec<u64> = reduced
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_mod(i as u64 % p, c, p))
        .collect();
    if poly_gcd_mod_p(&reduced, &derivative, p).len() > 1 {
        return None;
    }
    let roots = (0..p)
        .filter(|&r| horner_mod(&reduced, r, p) == 0)
        .collect();
    Some(roots)
}

/// Quadratic Hensel lifting of a simple root mod `p` to a root mod `p^(2^k)`
/// exceeding `2 * bound + 1`, returned as the symmetric representative.
fn hensel_lift(coeffs: &[BigInt], p: u64, r0: u64, bound: &BigInt) -> Option<BigInt> {
    let derivative: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| BigInt::from(i) * c)
        .collect();
    let target: BigInt = bound * 2 + 1;
    let mut modulus = BigInt::from(p);
    let mut root = BigInt::from(r0);
    while modulus < target {
        let next = &modulus * &modulus;
        let deriv_val = poly_eval_int(&derivative, &root).mod_floor(&next);
        let inv = mod_inverse(&deriv_val, &next)?;
        let val = poly_eval_int(coeffs, &root).mod_floor(&next);
        root = (&root - val * inv).mod_floor(&next);
        modulus = next;
    }
    // Symmetric representative in (-modulus/2, modulus/2].
    if &root * 2 > modulus {
        root -= &modulus;
    }
    Some(root)
}

fn poly_eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn reduce_mod(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("fits")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn horner_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs.iter().rev() {
        acc = (mul_mod(acc, x, p) + c) % p;
    }
    acc
}

fn poly_trim_mod(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_gcd_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim_mod(a.to_vec());
    let mut b = poly_trim_mod(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem_mod_p(&a, &b, p);
        a = b;
        b = poly_trim_mod(r);
    }
    if a.is_empty() {
        vec![]
    } else {
        a
    }
}

fn poly_rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_pow(b[db], p - 2, p);
    while poly_trim_mod(rem.clone()).len() > db {
        let t = poly_trim_mod(rem.clone());
        let shift = t.len() - 1 - db;
        let factor = mul_mod(t[t.len() - 1], lead_inv, p);
        for (i, &bc) in b.iter().enumerate() {
            let sub = mul_mod(factor, bc, p);
            rem[i + shift] = (rem[i + shift] + p - sub) % p;
        }
        rem = poly_trim_mod(rem);
        if rem.len() <= db {
            break;
        }
    }
    rem
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn next_prime(mut candidate: u64) -> u64 {
    loop {
        if is_prime(candidate) {
            return candidate;
        }
        candidate += 1;
    }
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x.is_multiple_of(2) {
        return x == 2;
    }
    let mut d = 3;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::poly_from_roots;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn splits_small_integer_polynomials() {
        let poly = poly_from_roots(&[(r(2, 1), 1), (r(-3, 1), 1), (r(7, 1), 1)]);
        let mut roots = rational_roots_monic_squarefree(&poly);
        roots.sort();
        assert_eq!(roots, vec![r(-3, 1), r(2, 1), r(7, 1)]);
    }

    #[test]
    fn splits_rational_roots_with_large_denominators() {
        let expected = vec![r(-10_000, 999), r(1, 1000), r(317, 5), r(9999, 998)];
        let poly = poly_from_roots(&expected.iter().map(|x| (x.clone(), 1)).collect::<Vec<_>>());
        let mut roots = rational_roots_monic_squarefree(&poly);
        roots.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(roots, want);
    }

    #[test]
    fn reports_partial_or_empty_splits() {
        // x^2 + 1 has no rational roots.
        let poly = vec![r(1, 1), r(0, 1), r(1, 1)];
        assert!(rational_roots_monic_squarefree(&poly).is_empty());
        // (x^2 + 1)(x - 2) has exactly one.
        let mixed = crate::linalg::poly_mul(&poly, &[r(-2, 1), r(1, 1)]);
        assert_eq!(rational_roots_monic_squarefree(&mixed), vec![r(2, 1)]);
        // x^2 - 2 splits over the reals but not the rationals.
        let sqrt2 = vec![r(-2, 1), r(0, 1), r(1, 1)];
        assert!(rational_roots_monic_squarefree(&sqrt2).is_empty());
    }
}
