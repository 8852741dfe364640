//! Exponents on the half-integer grid.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// A q-exponent on the half-integer grid: the value is `steps / 2`.
///
/// All arithmetic is exact integer arithmetic on the step count; there is no
/// floating point anywhere. The grid denominator is fixed at 2, which is the
/// finest grid any series in scope lives on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfExp {
    steps: i64,
}

impl HalfExp {
    pub const ZERO: HalfExp = HalfExp { steps: 0 };

    /// Exponent `n` (an integer point of the grid).
    pub const fn int(n: i64) -> Self {
        HalfExp { steps: 2 * n }
    }

    /// Exponent `steps / 2`.
    pub const fn half_steps(steps: i64) -> Self {
        HalfExp { steps }
    }

    /// Number of half-steps (twice the exponent value).
    pub const fn steps(self) -> i64 {
        self.steps
    }

    pub const fn is_integer(self) -> bool {
        self.steps % 2 == 0
    }

    /// Integer scalar multiple.
    pub fn times(self, k: i64) -> Self {
        HalfExp {
            steps: self.steps * k,
        }
    }

    /// Doubles the exponent (the q -> q^2 substitution on the grid).
    pub fn double(self) -> Self {
        HalfExp {
            steps: self.steps * 2,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Parses a rational string `"a"` or `"a/b"` with `b | 2`, e.g. `"30"`,
    /// `"61/2"`, `"-1/2"`, `"4/2"`.
    pub fn parse_rational(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("`{s}` is not a half-integer rational"));
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                Ok(HalfExp::int(n))
            }
            Some((num, den)) => {
                let n: i64 = num.trim().parse().map_err(|_| bad())?;
                let d: i64 = den.trim().parse().map_err(|_| bad())?;
                match d {
                    1 => Ok(HalfExp::int(n)),
                    2 => Ok(HalfExp::half_steps(n)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, rhs: HalfExp) -> HalfExp {
        HalfExp {
            steps: self.steps + rhs.steps,
        }
    }
}

impl AddAssign for HalfExp {
    fn add_assign(&mut self, rhs: HalfExp) {
        self.steps += rhs.steps;
    }
}

impl Sub for HalfExp {
    type Output = HalfExp;
    fn sub(self, rhs: HalfExp) -> HalfExp {
        HalfExp {
            steps: self.steps - rhs.steps,
        }
    }
}

impl SubAssign for HalfExp {
    fn sub_assign(&mut self, rhs: HalfExp) {
        self.steps -= rhs.steps;
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> HalfExp {
        HalfExp { steps: -self.steps }
    }
}

impl Sum for HalfExp {
    fn sum<I: Iterator<Item = HalfExp>>(iter: I) -> HalfExp {
        iter.fold(HalfExp::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps % 2 == 0 {
            write!(f, "{}", self.steps / 2)
        } else {
            write!(f, "{}/2", self.steps)
        }
    }
}

impl fmt::Debug for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
