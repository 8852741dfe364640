//! Truncated bivariate series: exact formal series in q on the half-integer
//! grid, bounded below, with finite Laurent-polynomial coefficients in z.
//!
//! Every value is immutable after construction and every operation is a pure
//! function, so series move freely between threads. Truncation orders are
//! inclusive: a series with `trunc_order = T` asserts its coefficients are
//! exact for all exponents `<= T`; everything above `T` is unknown.
//!
//! Truncation propagation is pessimistic: `mul` claims
//! `min(a.trunc + b.min_exp, b.trunc + a.min_exp)` and callers over-provision
//! the order rather than the kernel tracking per-term exactness.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::halfexp::HalfExp;
use super::monomial::Monomial;
use super::zpoly::ZPolynomial;

/// Result of comparing two series up to an order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Mismatch(Mismatch),
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

/// The least (q-exponent, z-exponent) where two series differ, with both
/// coefficient values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub q_exp: HalfExp,
    pub z_exp: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// A truncated formal series `sum_{e} P_e(z) q^e` with `e` on the half grid.
///
/// Storage is dense in q (one slot per half-step from `min_exp` upward) and
/// sparse in z. The first and last stored slots are nonzero; the zero series
/// stores nothing and has `min_exp = 0` by convention.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    min_exp: HalfExp,
    trunc_order: HalfExp,
    coeffs: Vec<ZPolynomial>,
}

impl QSeries {
    // ------------------------------------------------------------------
    // Constructors
    // ------------------------------------------------------------------

    pub fn zero(trunc_order: HalfExp) -> Self {
        QSeries {
            min_exp: HalfExp::ZERO,
            trunc_order,
            coeffs: Vec::new(),
        }
    }

    pub fn one(trunc_order: HalfExp) -> Self {
        QSeries::constant(ZPolynomial::one(), trunc_order)
    }

    /// A series constant in q (the coefficient of `q^0`).
    pub fn constant(p: ZPolynomial, trunc_order: HalfExp) -> Self {
        if p.is_zero() {
            return QSeries::zero(trunc_order);
        }
        QSeries {
            min_exp: HalfExp::ZERO,
            trunc_order,
            coeffs: vec![p],
        }
    }

    /// Builds a series from explicit terms. Rejects any exponent above the
    /// truncation order; duplicate exponents are summed.
    pub fn make(
        terms: impl IntoIterator<Item = (HalfExp, ZPolynomial)>,
        trunc_order: HalfExp,
    ) -> Result<Self> {
        let mut map: BTreeMap<i64, ZPolynomial> = BTreeMap::new();
        for (e, p) in terms {
            if e > trunc_order {
                return Err(Error::ExponentAboveTruncation {
                    exp: e,
                    order: trunc_order,
                });
            }
            map.entry(e.steps()).or_default().add_assign(&p);
        }
        Ok(QSeries::from_map(map, trunc_order))
    }

    /// Like `make`, but silently drops terms above the truncation order.
    /// This is the right behavior for sum builders: a dropped term is exactly
    /// the statement that it does not affect coefficients below the order.
    pub(crate) fn from_terms_truncating(
        terms: impl IntoIterator<Item = (HalfExp, ZPolynomial)>,
        trunc_order: HalfExp,
    ) -> Self {
        let mut map: BTreeMap<i64, ZPolynomial> = BTreeMap::new();
        for (e, p) in terms {
            if e <= trunc_order {
                map.entry(e.steps()).or_default().add_assign(&p);
            }
        }
        QSeries::from_map(map, trunc_order)
    }

    pub(crate) fn from_map(map: BTreeMap<i64, ZPolynomial>, trunc_order: HalfExp) -> Self {
        let mut first = None;
        let mut last = None;
        for (&s, p) in &map {
            if !p.is_zero() {
                if first.is_none() {
                    first = Some(s);
                }
                last = Some(s);
            }
        }
        let (Some(first), Some(last)) = (first, last) else {
            return QSeries::zero(trunc_order);
        };
        debug_assert!(last <= trunc_order.steps());
        let mut coeffs = vec![ZPolynomial::zero(); (last - first + 1) as usize];
        for (s, p) in map {
            if !p.is_zero() {
                coeffs[(s - first) as usize] = p;
            }
        }
        QSeries {
            min_exp: HalfExp::half_steps(first),
            trunc_order,
            coeffs,
        }
    }

    /// The single term `c z^e q^f`; a term above the order contributes nothing.
    pub fn monomial(m: &Monomial, trunc_order: HalfExp) -> Self {
        if m.q_exp() > trunc_order {
            return QSeries::zero(trunc_order);
        }
        QSeries {
            min_exp: m.q_exp(),
            trunc_order,
            coeffs: vec![m.z_part()],
        }
    }

    /// `1 - m`, the basic Pochhammer factor.
    pub fn one_minus(m: &Monomial, trunc_order: HalfExp) -> Self {
        QSeries::from_terms_truncating(
            [
                (HalfExp::ZERO, ZPolynomial::one()),
                (m.q_exp(), -m.z_part()),
            ],
            trunc_order,
        )
    }

    /// The truncated geometric sum `sum_{i=0}^{count-1} q^{i*step}`, realizing
    /// ratios such as `(1 - q^{6n+1})/(1 - q)` as explicit polynomials.
    pub fn geometric_sum(step: HalfExp, count: u64, trunc_order: HalfExp) -> Self {
        assert!(step > HalfExp::ZERO, "geometric step must be positive");
        let mut map = BTreeMap::new();
        let mut e = HalfExp::ZERO;
        for _ in 0..count {
            if e > trunc_order {
                break;
            }
            map.insert(e.steps(), ZPolynomial::one());
            e += step;
        }
        QSeries::from_map(map, trunc_order)
    }

    // ------------------------------------------------------------------
    // Accessors
    // ------------------------------------------------------------------

    pub fn min_exp(&self) -> HalfExp {
        self.min_exp
    }

    pub fn trunc_order(&self) -> HalfExp {
        self.trunc_order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^e` (zero when not stored; does not distinguish
    /// unknown exponents above the truncation order).
    pub fn coeff(&self, e: HalfExp) -> ZPolynomial {
        self.coeff_ref(e).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, e: HalfExp) -> Option<&ZPolynomial> {
        let idx = e.steps() - self.min_exp.steps();
        if idx < 0 {
            return None;
        }
        self.coeffs.get(idx as usize).filter(|p| !p.is_zero())
    }

    /// Nonzero terms in ascending q-exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (HalfExp, &ZPolynomial)> {
        let min = self.min_exp;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(move |(i, p)| (HalfExp::half_steps(min.steps() + i as i64), p))
    }

    /// Total number of nonzero (q, z) coefficient entries.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().map(ZPolynomial::len).sum()
    }

    // ------------------------------------------------------------------
    // Ring operations
    // ------------------------------------------------------------------

    pub fn add(&self, other: &QSeries) -> QSeries {
        let trunc = self.trunc_order.min(other.trunc_order);
        let mut map: BTreeMap<i64, ZPolynomial> = BTreeMap::new();
        for (e, p) in self.terms().chain(other.terms()) {
            if e <= trunc {
                map.entry(e.steps()).or_default().add_assign(p);
            }
        }
        QSeries::from_map(map, trunc)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            min_exp: self.min_exp,
            trunc_order: self.trunc_order,
            coeffs: self.coeffs.iter().map(|p| -p).collect(),
        }
    }

    /// Exact product. The result is exact below
    /// `min(a.trunc + b.min_exp, b.trunc + a.min_exp)`: unknown coefficients
    /// of one factor only reach the result beyond that bound.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        #[cfg(feature = "parallel")]
        {
            if self.coeffs.len().saturating_mul(other.coeffs.len()) >= PAR_MUL_WORK_THRESHOLD {
                return mul_par(self, other);
            }
        }
        mul_seq(self, other)
    }

    /// Multiplies by a monomial: an exact exponent shift and scale. The
    /// truncation order shifts by the monomial's q-exponent.
    pub fn mul_monomial(&self, m: &Monomial) -> QSeries {
        if self.is_zero() {
            return QSeries::zero(self.trunc_order + m.q_exp());
        }
        QSeries {
            min_exp: self.min_exp + m.q_exp(),
            trunc_order: self.trunc_order + m.q_exp(),
            coeffs: self
                .coeffs
                .iter()
                .map(|p| p.shift_scale(m.z_exp(), m.coeff()))
                .collect(),
        }
    }

    /// Inverts a series whose lowest q-coefficient is `±z^e` (a unit of the
    /// coefficient ring). The relative precision carries over, so the result
    /// is exact below `trunc_order - 2 * min_exp`.
    pub fn invert_unit(&self) -> Result<QSeries> {
        let Some(lowest) = self.coeffs.first() else {
            return Err(Error::NotAUnit {
                exp: self.min_exp,
                found: "0".to_string(),
            });
        };
        let Some((u, e)) = lowest.unit_term() else {
            return Err(Error::NotAUnit {
                exp: self.min_exp,
                found: lowest.to_string(),
            });
        };
        // s = u z^e q^m (1 + t);  1/s = u z^-e q^-m (1 + t)^-1  (u^-1 = u).
        let rel_len = (self.trunc_order.steps() - self.min_exp.steps() + 1).max(1) as usize;
        let norm: Vec<ZPolynomial> = self
            .coeffs
            .iter()
            .map(|p| p.shift_scale(-e, &u))
            .collect();
        let mut inv = vec![ZPolynomial::zero(); rel_len];
        inv[0] = ZPolynomial::one();
        for n in 1..rel_len {
            let mut acc = ZPolynomial::zero();
            for k in 1..=n.min(norm.len() - 1) {
                if !norm[k].is_zero() && !inv[n - k].is_zero() {
                    acc.add_assign(&norm[k].mul(&inv[n - k]));
                }
            }
            inv[n] = -acc;
        }
        let mut coeffs: Vec<ZPolynomial> = inv.iter().map(|p| p.shift_scale(-e, &u)).collect();
        let last = coeffs.iter().rposition(|p| !p.is_zero()).unwrap();
        coeffs.truncate(last + 1);
        let min = -self.min_exp;
        Ok(QSeries {
            min_exp: min,
            trunc_order: HalfExp::half_steps(min.steps() + rel_len as i64 - 1),
            coeffs,
        })
    }

    // ------------------------------------------------------------------
    // Substitutions and specialization
    // ------------------------------------------------------------------

    /// The substitution z -> 1/z (an involution and ring homomorphism).
    pub fn subst_z_inverse(&self) -> QSeries {
        QSeries {
            min_exp: self.min_exp,
            trunc_order: self.trunc_order,
            coeffs: self.coeffs.iter().map(ZPolynomial::invert_z).collect(),
        }
    }

    /// The substitution q -> q^2: doubles every q-exponent, mapping the half
    /// grid into the integer grid. The truncation order doubles.
    pub fn subst_q_square(&self) -> QSeries {
        if self.is_zero() {
            return QSeries::zero(self.trunc_order.double());
        }
        let mut coeffs = vec![ZPolynomial::zero(); 2 * (self.coeffs.len() - 1) + 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            if !p.is_zero() {
                coeffs[2 * i] = p.clone();
            }
        }
        QSeries {
            min_exp: self.min_exp.double(),
            trunc_order: self.trunc_order.double(),
            coeffs,
        }
    }

    /// Specializes z = 1: each q-coefficient becomes the integer sum of its
    /// z-coefficients (also a ring homomorphism).
    pub fn eval_z_one(&self) -> QSeries {
        let map: BTreeMap<i64, ZPolynomial> = self
            .terms()
            .map(|(e, p)| (e.steps(), ZPolynomial::constant(p.eval_at_one())))
            .collect();
        QSeries::from_map(map, self.trunc_order)
    }

    /// Restricts to coefficients at or below `order` and tightens the claimed
    /// truncation order accordingly.
    pub fn truncated(&self, order: HalfExp) -> QSeries {
        let trunc = self.trunc_order.min(order);
        let map: BTreeMap<i64, ZPolynomial> = self
            .terms()
            .take_while(|&(e, _)| e <= trunc)
            .map(|(e, p)| (e.steps(), p.clone()))
            .collect();
        QSeries::from_map(map, trunc)
    }

    // ------------------------------------------------------------------
    // Comparison
    // ------------------------------------------------------------------

    /// Compares two series up to `order` (inclusive). Errors if either side
    /// does not know its coefficients that far.
    pub fn equal_up_to(&self, other: &QSeries, order: HalfExp) -> Result<Comparison> {
        for t in [self.trunc_order, other.trunc_order] {
            if order > t {
                return Err(Error::InsufficientOrder {
                    requested: order,
                    available: t,
                });
            }
        }
        let lo = self.min_exp.min(other.min_exp).min(HalfExp::ZERO);
        let zero = ZPolynomial::zero();
        for s in lo.steps()..=order.steps() {
            let e = HalfExp::half_steps(s);
            let a = self.coeff_ref(e).unwrap_or(&zero);
            let b = other.coeff_ref(e).unwrap_or(&zero);
            if a == b {
                continue;
            }
            let mut z_keys: Vec<i64> = a.iter().map(|(z, _)| z).collect();
            z_keys.extend(b.iter().map(|(z, _)| z));
            z_keys.sort_unstable();
            z_keys.dedup();
            for z in z_keys {
                let ca = a.coeff(z);
                let cb = b.coeff(z);
                if ca != cb {
                    return Ok(Comparison::Mismatch(Mismatch {
                        q_exp: e,
                        z_exp: z,
                        lhs: ca,
                        rhs: cb,
                    }));
                }
            }
        }
        Ok(Comparison::Equal)
    }
}

/// Work threshold (in q-slice pairs) above which `mul` goes parallel.
#[cfg(feature = "parallel")]
const PAR_MUL_WORK_THRESHOLD: usize = 4096;

/// Sequential convolution kernel. Exposed so the benchmark suite can compare
/// execution strategies; prefer [`QSeries::mul`] in normal code.
pub fn mul_seq(a: &QSeries, b: &QSeries) -> QSeries {
    let trunc = (a.trunc_order + b.min_exp).min(b.trunc_order + a.min_exp);
    if a.is_zero() || b.is_zero() {
        return QSeries::zero(trunc);
    }
    let min = a.min_exp + b.min_exp;
    let out_len = (trunc.steps() - min.steps() + 1).max(0) as usize;
    if out_len == 0 {
        return QSeries::zero(trunc);
    }
    let mut out = vec![ZPolynomial::zero(); out_len];
    for (i, pa) in a.coeffs.iter().enumerate() {
        if pa.is_zero() || i >= out_len {
            continue;
        }
        let rem = out_len - i;
        for (j, pb) in b.coeffs.iter().take(rem).enumerate() {
            if !pb.is_zero() {
                out[i + j].add_assign(&pa.mul(pb));
            }
        }
    }
    finish_mul(out, min, trunc)
}

/// Parallel convolution kernel: each output q-slice is an independent
/// reduction, computed on the rayon pool.
#[cfg(feature = "parallel")]
pub fn mul_par(a: &QSeries, b: &QSeries) -> QSeries {
    use rayon::prelude::*;

    let trunc = (a.trunc_order + b.min_exp).min(b.trunc_order + a.min_exp);
    if a.is_zero() || b.is_zero() {
        return QSeries::zero(trunc);
    }
    let min = a.min_exp + b.min_exp;
    let out_len = (trunc.steps() - min.steps() + 1).max(0) as usize;
    if out_len == 0 {
        return QSeries::zero(trunc);
    }
    let out: Vec<ZPolynomial> = (0..out_len)
        .into_par_iter()
        .map(|k| {
            let mut acc = ZPolynomial::zero();
            let i_lo = k.saturating_sub(b.coeffs.len() - 1);
            let i_hi = k.min(a.coeffs.len() - 1);
            for i in i_lo..=i_hi {
                let (pa, pb) = (&a.coeffs[i], &b.coeffs[k - i]);
                if !pa.is_zero() && !pb.is_zero() {
                    acc.add_assign(&pa.mul(pb));
                }
            }
            acc
        })
        .collect();
    finish_mul(out, min, trunc)
}

fn finish_mul(mut out: Vec<ZPolynomial>, min: HalfExp, trunc: HalfExp) -> QSeries {
    let first = out.iter().position(|p| !p.is_zero());
    let Some(first) = first else {
        return QSeries::zero(trunc);
    };
    let last = out.iter().rposition(|p| !p.is_zero()).unwrap();
    out.truncate(last + 1);
    out.drain(..first);
    QSeries {
        min_exp: HalfExp::half_steps(min.steps() + first as i64),
        trunc_order: trunc,
        coeffs: out,
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (e, p) in self.terms() {
            if any {
                write!(f, " + ")?;
            }
            if e == HalfExp::ZERO {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})*q^{e}")?;
            }
            any = true;
        }
        if !any {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc_order + HalfExp::half_steps(1))
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn zp(pairs: &[(i64, i64)]) -> ZPolynomial {
        ZPolynomial::from_terms(pairs.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn ord(n: i64) -> HalfExp {
        HalfExp::int(n)
    }

    #[test]
    fn make_normalizes_zero() {
        let z = QSeries::make([], ord(10)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.min_exp(), HalfExp::ZERO);
        let z2 = QSeries::make([(HalfExp::ZERO, ZPolynomial::zero())], ord(10)).unwrap();
        assert_eq!(z, z2);
    }

    #[test]
    fn make_constructs_and_rejects() {
        let s = QSeries::make(
            [
                (HalfExp::half_steps(-1), -ZPolynomial::one()),
                (HalfExp::half_steps(5), zp(&[(2, 3)])),
            ],
            ord(5),
        )
        .unwrap();
        assert_eq!(s.min_exp(), HalfExp::half_steps(-1));
        assert_eq!(s.term_count(), 2);

        let err = QSeries::make([(ord(11), ZPolynomial::one())], ord(10)).unwrap_err();
        assert!(matches!(err, Error::ExponentAboveTruncation { .. }));
    }

    #[test]
    fn add_truncates_to_min_order() {
        // (1 + q) + (1 - q) = 2
        let one_plus = QSeries::make(
            [(ord(0), ZPolynomial::one()), (ord(1), ZPolynomial::one())],
            ord(10),
        )
        .unwrap();
        let one_minus = QSeries::make(
            [(ord(0), ZPolynomial::one()), (ord(1), -ZPolynomial::one())],
            ord(7),
        )
        .unwrap();
        let sum = &one_plus + &one_minus;
        assert_eq!(sum.trunc_order(), ord(7));
        assert_eq!(sum.coeff(ord(0)), zp(&[(0, 2)]));
        assert_eq!(sum.term_count(), 1);

        let s = QSeries::monomial(&Monomial::zq(1, ord(1)), ord(9));
        assert_eq!(&s + &QSeries::zero(ord(5)), s.truncated(ord(5)));
    }

    #[test]
    fn add_z_polynomials() {
        // zq + z^-1 q = (z + z^-1) q
        let a = QSeries::monomial(&Monomial::zq(1, ord(1)), ord(10));
        let b = QSeries::monomial(&Monomial::zq(-1, ord(1)), ord(10));
        let s = &a + &b;
        assert_eq!(s.coeff(ord(1)), zp(&[(1, 1), (-1, 1)]));
    }

    #[test]
    fn mul_telescopes_geometric() {
        // (1 - zq) * sum_{n=0..N} z^n q^n = 1 (up to order N)
        let n = 12;
        let geo = QSeries::from_terms_truncating(
            (0..=n).map(|i| (ord(i), zp(&[(i, 1)]))),
            ord(n),
        );
        let fac = QSeries::one_minus(&Monomial::zq(1, ord(1)), ord(n));
        let prod = &fac * &geo;
        assert_eq!(prod.trunc_order(), ord(n));
        assert_eq!(prod, QSeries::one(ord(n)));
    }

    #[test]
    fn mul_direct_expansion() {
        // (1 - q)(1 - q^2) = 1 - q - q^2 + q^3
        let a = QSeries::one_minus(&Monomial::q(), ord(10));
        let b = QSeries::one_minus(&Monomial::q_pow(ord(2)), ord(10));
        let p = &a * &b;
        let expect = QSeries::make(
            [
                (ord(0), ZPolynomial::one()),
                (ord(1), -ZPolynomial::one()),
                (ord(2), -ZPolynomial::one()),
                (ord(3), ZPolynomial::one()),
            ],
            ord(10),
        )
        .unwrap();
        assert_eq!(p, expect);

        let s = QSeries::monomial(&Monomial::new(3, -2, HalfExp::half_steps(5)), ord(9));
        assert_eq!(&s * &QSeries::one(ord(9)), s);
    }

    #[test]
    fn mul_trunc_rule_accounts_for_min_exp() {
        // a known to order 10 with min 0; b = q^-2 * (...) known to order 10.
        let a = QSeries::one(ord(10));
        let b = QSeries::monomial(&Monomial::zq(0, ord(-2)), ord(10));
        let p = &a * &b;
        assert_eq!(p.trunc_order(), ord(8));
        assert_eq!(p.min_exp(), ord(-2));
    }

    #[test]
    fn invert_geometric() {
        // 1/(1 - q) = 1 + q + ... + q^N
        let s = QSeries::one_minus(&Monomial::q(), ord(8));
        let inv = s.invert_unit().unwrap();
        assert_eq!(inv.trunc_order(), ord(8));
        for i in 0..=8 {
            assert_eq!(inv.coeff(ord(i)), ZPolynomial::one());
        }
        assert_eq!(&s * &inv, QSeries::one(ord(8)));

        // 1/(1 - z^-1 q) = sum z^-n q^n
        let s = QSeries::one_minus(&Monomial::zq(-1, ord(1)), ord(6));
        let inv = s.invert_unit().unwrap();
        for i in 0..=6 {
            assert_eq!(inv.coeff(ord(i)), zp(&[(-i, 1)]));
        }
    }

    #[test]
    fn invert_rejects_non_units() {
        // 1 + z has a two-term lowest coefficient
        let s = QSeries::constant(zp(&[(0, 1), (1, 1)]), ord(5));
        assert!(matches!(
            s.invert_unit().unwrap_err(),
            Error::NotAUnit { .. }
        ));
        // 2 is not a unit either
        let s = QSeries::constant(zp(&[(0, 2)]), ord(5));
        assert!(s.invert_unit().is_err());
        assert!(QSeries::zero(ord(5)).invert_unit().is_err());
    }

    #[test]
    fn invert_shifted_unit() {
        // s = -z^2 q^{-1/2} (1 - q): inverse has min_exp +1/2.
        let m = Monomial::new(-1, 2, HalfExp::half_steps(-1));
        let s = QSeries::one_minus(&Monomial::q(), ord(10)).mul_monomial(&m);
        let inv = s.invert_unit().unwrap();
        assert_eq!(inv.min_exp(), HalfExp::half_steps(1));
        // relative precision preserved: trunc = T - 2*min = (10-1/2) - 2*(-1/2) + ...
        assert_eq!(
            inv.trunc_order(),
            s.trunc_order() - s.min_exp() - s.min_exp()
        );
        let prod = &s * &inv;
        assert_eq!(prod, QSeries::one(prod.trunc_order()));
    }

    #[test]
    fn mul_monomial_shifts() {
        let s = QSeries::one(ord(10));
        let shifted = s.mul_monomial(&Monomial::zq(1, HalfExp::half_steps(1)));
        assert_eq!(shifted.min_exp(), HalfExp::half_steps(1));
        assert_eq!(shifted.trunc_order(), HalfExp::half_steps(21));
        assert_eq!(shifted.coeff(HalfExp::half_steps(1)), zp(&[(1, 1)]));

        let q = QSeries::monomial(&Monomial::q(), ord(10));
        let back = q.mul_monomial(&Monomial::q_pow(HalfExp::half_steps(-1)));
        assert_eq!(back.min_exp(), HalfExp::half_steps(1));

        assert_eq!(s.mul_monomial(&Monomial::one()), s);
    }

    #[test]
    fn subst_z_inverse_involution() {
        let s = QSeries::make(
            [
                (ord(1), zp(&[(1, 1)])),
                (HalfExp::half_steps(5), zp(&[(-2, 3), (0, 1)])),
            ],
            ord(5),
        )
        .unwrap();
        assert_eq!(s.subst_z_inverse().subst_z_inverse(), s);
        assert_eq!(
            QSeries::monomial(&Monomial::zq(1, ord(1)), ord(4)).subst_z_inverse(),
            QSeries::monomial(&Monomial::zq(-1, ord(1)), ord(4))
        );
    }

    #[test]
    fn subst_q_square_doubles() {
        let s = QSeries::make([(HalfExp::half_steps(1), ZPolynomial::one())], ord(3)).unwrap();
        let d = s.subst_q_square();
        assert_eq!(d.coeff(ord(1)), ZPolynomial::one());
        assert_eq!(d.trunc_order(), ord(6));

        // 1 + zq -> 1 + zq^2
        let s = QSeries::make([(ord(0), ZPolynomial::one()), (ord(1), zp(&[(1, 1)]))], ord(4))
            .unwrap();
        let d = s.subst_q_square();
        assert_eq!(d.coeff(ord(2)), zp(&[(1, 1)]));
        assert!(d.coeff(ord(1)).is_zero());
    }

    #[test]
    fn eval_z_one_sums_coefficients() {
        let s = QSeries::make([(ord(1), zp(&[(1, 1), (-1, 1)]))], ord(4)).unwrap();
        let e = s.eval_z_one();
        assert_eq!(e.coeff(ord(1)), zp(&[(0, 2)]));
        assert!(QSeries::zero(ord(4)).eval_z_one().is_zero());

        // cancellation renormalizes: (z - 1) q has z-sum 0
        let s = QSeries::make([(ord(1), zp(&[(1, 1), (0, -1)]))], ord(4)).unwrap();
        assert!(s.eval_z_one().is_zero());
    }

    #[test]
    fn equal_up_to_reports_first_mismatch() {
        let one = QSeries::one(ord(5));
        assert_eq!(one.equal_up_to(&one, ord(5)).unwrap(), Comparison::Equal);

        let one_plus_q = QSeries::make(
            [(ord(0), ZPolynomial::one()), (ord(1), ZPolynomial::one())],
            ord(5),
        )
        .unwrap();
        match one.equal_up_to(&one_plus_q, ord(2)).unwrap() {
            Comparison::Mismatch(m) => {
                assert_eq!(m.q_exp, ord(1));
                assert_eq!(m.z_exp, 0);
                assert_eq!(m.lhs, BigInt::from(0));
                assert_eq!(m.rhs, BigInt::from(1));
            }
            Comparison::Equal => panic!("expected mismatch"),
        }

        assert!(matches!(
            one.equal_up_to(&one_plus_q, ord(6)),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn values_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<QSeries>();
        check::<ZPolynomial>();
        check::<Monomial>();
        check::<HalfExp>();
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_mul_agree() {
        let a = QSeries::from_terms_truncating(
            (0..=40).map(|i| (HalfExp::half_steps(i), zp(&[(i % 5 - 2, i + 1), (-(i % 3), 7)]))),
            HalfExp::half_steps(40),
        );
        let b = QSeries::from_terms_truncating(
            (0..=40).map(|i| (HalfExp::half_steps(i), zp(&[(i % 7 - 3, 2 * i - 9)]))),
            HalfExp::half_steps(40),
        );
        assert_eq!(mul_seq(&a, &b), mul_par(&a, &b));
    }
}
