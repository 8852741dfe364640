//! Finite Laurent polynomials in z with arbitrary-precision integer coefficients.
//!
//! These are the coefficients of the q-series ring. The z-support of every
//! series in scope is sparse and roughly symmetric around 0, so terms live in
//! an ordered map keyed by z-exponent.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A finite integer Laurent polynomial `sum c_e z^e`. No zero coefficients
/// are ever stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl ZPolynomial {
    pub fn zero() -> Self {
        ZPolynomial::default()
    }

    pub fn one() -> Self {
        ZPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        ZPolynomial::term(c, 0)
    }

    /// The single term `c z^e` (zero if `c` is zero).
    pub fn term(c: BigInt, z_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(z_exp, c);
        }
        ZPolynomial { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = ZPolynomial::zero();
        for (e, c) in pairs {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `z^e` (zero if absent).
    pub fn coeff(&self, z_exp: i64) -> BigInt {
        self.terms.get(&z_exp).cloned().unwrap_or_default()
    }

    /// Terms in ascending z-exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn add_term(&mut self, z_exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(z_exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&z_exp);
        }
    }

    pub fn add_assign(&mut self, other: &ZPolynomial) {
        for (e, c) in other.iter() {
            self.add_term(e, c);
        }
    }

    pub fn sub_assign(&mut self, other: &ZPolynomial) {
        for (e, c) in other.iter() {
            self.add_term(e, &-c.clone());
        }
    }

    pub fn add(&self, other: &ZPolynomial) -> ZPolynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn mul(&self, other: &ZPolynomial) -> ZPolynomial {
        let mut out = ZPolynomial::zero();
        for (ea, ca) in self.iter() {
            for (eb, cb) in other.iter() {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }

    /// Adds `c * other` into `self` (fused multiply-accumulate on coefficients).
    pub fn add_mul_assign(&mut self, other: &ZPolynomial, c: &BigInt, z_shift: i64) {
        if c.is_zero() {
            return;
        }
        for (e, oc) in other.iter() {
            self.add_term(e + z_shift, &(oc * c));
        }
    }

    pub fn scale(&self, c: &BigInt) -> ZPolynomial {
        if c.is_zero() {
            return ZPolynomial::zero();
        }
        ZPolynomial {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Shifts every z-exponent by `delta` and scales by `c`.
    pub fn shift_scale(&self, delta: i64, c: &BigInt) -> ZPolynomial {
        if c.is_zero() {
            return ZPolynomial::zero();
        }
        ZPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&e, v)| (e + delta, v * c))
                .collect(),
        }
    }

    /// The substitution z -> 1/z: negates every exponent.
    pub fn invert_z(&self) -> ZPolynomial {
        ZPolynomial {
            terms: self.terms.iter().map(|(&e, v)| (-e, v.clone())).collect(),
        }
    }

    /// Sum of all coefficients (the evaluation z = 1).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// If the polynomial is a single term `±z^e`, returns `(coeff, e)`.
    /// These are exactly the units of the coefficient ring.
    pub fn unit_term(&self) -> Option<(BigInt, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next().unwrap();
        if c.abs().is_one() {
            Some((c.clone(), e))
        } else {
            None
        }
    }
}

impl Neg for ZPolynomial {
    type Output = ZPolynomial;
    fn neg(self) -> ZPolynomial {
        ZPolynomial {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &ZPolynomial {
    type Output = ZPolynomial;
    fn neg(self) -> ZPolynomial {
        ZPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for ZPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "z")?,
                1 => write!(f, "{a}*z")?,
                _ if a.is_one() => write!(f, "z^{e}")?,
                _ => write!(f, "{a}*z^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(pairs: &[(i64, i64)]) -> ZPolynomial {
        ZPolynomial::from_terms(pairs.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn no_zero_coefficients_after_cancellation() {
        let mut a = p(&[(0, 1), (2, 3)]);
        a.add_assign(&p(&[(2, -3)]));
        assert_eq!(a, p(&[(0, 1)]));
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn mul_and_eval() {
        // (z + 1/z)^2 = z^2 + 2 + z^-2
        let a = p(&[(1, 1), (-1, 1)]);
        let sq = a.mul(&a);
        assert_eq!(sq, p(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(sq.eval_at_one(), BigInt::from(4));
    }

    #[test]
    fn units() {
        assert_eq!(p(&[(3, -1)]).unit_term(), Some((BigInt::from(-1), 3)));
        assert_eq!(p(&[(0, 2)]).unit_term(), None);
        assert_eq!(p(&[(0, 1), (1, 1)]).unit_term(), None);
    }

    #[test]
    fn invert_z_is_involution() {
        let a = p(&[(-2, 5), (0, 1), (3, -7)]);
        assert_eq!(a.invert_z().invert_z(), a);
        assert_eq!(a.invert_z(), p(&[(2, 5), (0, 1), (-3, -7)]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(0, 1), (1, -2), (-1, 1)]).to_string(), "z^-1 + 1 - 2*z");
        assert_eq!(p(&[]).to_string(), "0");
    }
}
