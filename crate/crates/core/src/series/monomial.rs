//! Monomials `c * z^e * q^f`: the atoms used as Pochhammer arguments and
//! Bailey chain parameters.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::halfexp::HalfExp;
use super::zpoly::ZPolynomial;

/// `coeff * z^{z_exp} * q^{q_exp}` with a nonzero integer coefficient and a
/// half-integer q-exponent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    coeff: BigInt,
    z_exp: i64,
    q_exp: HalfExp,
}

impl Monomial {
    pub fn new(coeff: impl Into<BigInt>, z_exp: i64, q_exp: HalfExp) -> Self {
        let coeff = coeff.into();
        assert!(!coeff.is_zero(), "monomial coefficient must be nonzero");
        Monomial {
            coeff,
            z_exp,
            q_exp,
        }
    }

    pub fn one() -> Self {
        Monomial::new(1, 0, HalfExp::ZERO)
    }

    /// `q`
    pub fn q() -> Self {
        Monomial::q_pow(HalfExp::int(1))
    }

    /// `q^e`
    pub fn q_pow(e: HalfExp) -> Self {
        Monomial::new(1, 0, e)
    }

    /// `z`
    pub fn z() -> Self {
        Monomial::z_pow(1)
    }

    /// `z^e`
    pub fn z_pow(e: i64) -> Self {
        Monomial::new(1, e, HalfExp::ZERO)
    }

    /// `z^{z_exp} q^{q_exp}` with coefficient 1.
    pub fn zq(z_exp: i64, q_exp: HalfExp) -> Self {
        Monomial::new(1, z_exp, q_exp)
    }

    pub fn coeff(&self) -> &BigInt {
        &self.coeff
    }

    pub fn z_exp(&self) -> i64 {
        self.z_exp
    }

    pub fn q_exp(&self) -> HalfExp {
        self.q_exp
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            coeff: &self.coeff * &other.coeff,
            z_exp: self.z_exp + other.z_exp,
            q_exp: self.q_exp + other.q_exp,
        }
    }

    /// Nonnegative integer power.
    pub fn pow(&self, n: u32) -> Monomial {
        Monomial {
            coeff: self.coeff.pow(n),
            z_exp: self.z_exp * i64::from(n),
            q_exp: self.q_exp.times(i64::from(n)),
        }
    }

    pub fn neg(&self) -> Monomial {
        Monomial {
            coeff: -&self.coeff,
            z_exp: self.z_exp,
            q_exp: self.q_exp,
        }
    }

    /// The q-coefficient part as a Laurent polynomial in z.
    pub fn z_part(&self) -> ZPolynomial {
        ZPolynomial::term(self.coeff.clone(), self.z_exp)
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.z_exp == 0 && self.q_exp == HalfExp::ZERO
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if self.coeff.abs().is_one() {
            if self.coeff.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", self.coeff)?;
            wrote = true;
        }
        if self.z_exp != 0 {
            if wrote {
                write!(f, "*")?;
            }
            if self.z_exp == 1 {
                write!(f, "z")?;
            } else {
                write!(f, "z^{}", self.z_exp)?;
            }
            wrote = true;
        }
        if self.q_exp != HalfExp::ZERO {
            if wrote {
                write!(f, "*")?;
            }
            if self.q_exp == HalfExp::int(1) {
                write!(f, "q")?;
            } else {
                write!(f, "q^{}", self.q_exp)?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra() {
        let a = Monomial::new(-1, 1, HalfExp::int(1)); // -z q
        let b = Monomial::new(2, -1, HalfExp::half_steps(1)); // 2 z^-1 q^{1/2}
        let ab = a.mul(&b);
        assert_eq!(ab.coeff(), &BigInt::from(-2));
        assert_eq!(ab.z_exp(), 0);
        assert_eq!(ab.q_exp(), HalfExp::half_steps(3));
        assert_eq!(a.pow(3).q_exp(), HalfExp::int(3));
        assert_eq!(a.pow(3).coeff(), &BigInt::from(-1));
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::zq(1, HalfExp::int(1)).to_string(), "z*q");
        assert_eq!(
            Monomial::new(-1, -1, HalfExp::half_steps(3)).to_string(),
            "-z^-1*q^3/2"
        );
        assert_eq!(Monomial::one().to_string(), "1");
        assert_eq!(Monomial::new(2, 0, HalfExp::ZERO).to_string(), "2");
    }
}
