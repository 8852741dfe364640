//! q-Pochhammer symbols with arbitrary monomial argument and step, plus the
//! Jacobi triple product and Warnaar's generalization.
//!
//! `(a; s)_n = prod_{k=0}^{n-1} (1 - a s^k)` where the argument `a` is a
//! monomial `c z^e q^f` and the step `s` is a pure q-power. Arguments are
//! monomials only — everything in scope has this shape, and it keeps unit
//! detection decidable. Infinite products are computed by repeated
//! unit-binomial multiplication; factors whose q-order exceeds the truncation
//! order contribute 1 and are skipped.

use std::time::Instant;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::series::{HalfExp, Monomial, QSeries, ZPolynomial};

/// Length of a Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLength {
    /// `(a; s)_n`. Negative lengths arise only under inversion, where
    /// `1/(a; s)_n = 0` by convention.
    Finite(i64),
    /// `(a; s)_inf`.
    Infinite,
}

/// A validated Pochhammer specification `(arg; q^step)_length`.
#[derive(Clone, Debug)]
pub struct PochSpec {
    arg: Monomial,
    step: HalfExp,
    length: PochLength,
}

impl PochSpec {
    pub fn finite(arg: Monomial, step: HalfExp, length: i64) -> Result<Self> {
        Self::validated(arg, step, PochLength::Finite(length))
    }

    pub fn infinite(arg: Monomial, step: HalfExp) -> Result<Self> {
        Self::validated(arg, step, PochLength::Infinite)
    }

    fn validated(arg: Monomial, step: HalfExp, length: PochLength) -> Result<Self> {
        if step < HalfExp::half_steps(1) {
            return Err(Error::InvalidPochSpec(format!(
                "step q^{step} must have q-order >= 1/2"
            )));
        }
        if length == PochLength::Infinite && arg.q_exp() < HalfExp::ZERO {
            return Err(Error::InvalidPochSpec(format!(
                "infinite product needs an argument of q-order >= 0, got {arg}"
            )));
        }
        Ok(PochSpec { arg, step, length })
    }

    pub fn arg(&self) -> &Monomial {
        &self.arg
    }

    pub fn step(&self) -> HalfExp {
        self.step
    }

    pub fn length(&self) -> PochLength {
        self.length
    }
}

/// The truncated product for a Pochhammer specification.
///
/// Finite lengths must be nonnegative here; the negative-length convention
/// lives in [`poch_inverse`].
pub fn poch(spec: &PochSpec, order: HalfExp) -> QSeries {
    let count = match spec.length {
        PochLength::Finite(n) => {
            assert!(n >= 0, "poch needs a nonnegative length, got {n}");
            Some(n)
        }
        PochLength::Infinite => None,
    };
    let mut acc = QSeries::one(order);
    let mut k: i64 = 0;
    loop {
        if let Some(n) = count {
            if k >= n {
                break;
            }
        }
        let factor_exp = spec.arg.q_exp() + spec.step.times(k);
        if count.is_none() && factor_exp > order {
            break; // all remaining factors are 1 up to the order
        }
        let m = Monomial::new(
            spec.arg.coeff().clone(),
            spec.arg.z_exp(),
            factor_exp,
        );
        acc = acc.mul(&QSeries::one_minus(&m, order));
        k += 1;
    }
    acc
}

/// `1 / (arg; q^step)_length`, with `1/(a; s)_n = 0` for negative `n`.
///
/// Errors with `NotAUnit` when the product's lowest q-coefficient is not
/// `±z^e` — for example `(z; q)_n` with `n >= 1`.
pub fn poch_inverse(spec: &PochSpec, order: HalfExp) -> Result<QSeries> {
    if let PochLength::Finite(n) = spec.length {
        if n < 0 {
            return Ok(QSeries::zero(order));
        }
    }
    if spec.length == PochLength::Infinite && spec.arg.q_exp() < HalfExp::half_steps(1) {
        return Err(Error::InvalidPochSpec(format!(
            "inverse infinite product needs an argument of q-order >= 1/2, got {}",
            spec.arg
        )));
    }
    poch(spec, order).invert_unit()
}

/// Convenience: `(arg; q^step)_n` for nonnegative `n` at the given order,
/// returning the zero series when asked below q-order zero.
pub(crate) fn finite_poch(arg: &Monomial, step: HalfExp, n: i64, order: HalfExp) -> QSeries {
    if order < HalfExp::ZERO {
        // every coefficient at or below a negative order is zero
        return QSeries::zero(order);
    }
    let spec = PochSpec::finite(arg.clone(), step, n).expect("valid step");
    poch(&spec, order)
}

/// Convenience: `1 / (arg; q^step)_n` where `n` may be negative (giving 0).
/// Panics if the product is not a unit; callers use it only for unit
/// arguments such as `q^j` or `z^{±1} q^j` with `j >= 1/2`.
pub(crate) fn finite_poch_inv(arg: &Monomial, step: HalfExp, n: i64, order: HalfExp) -> QSeries {
    if n < 0 {
        return QSeries::zero(order);
    }
    if order < HalfExp::ZERO {
        return QSeries::zero(order);
    }
    finite_poch(arg, step, n, order)
        .invert_unit()
        .expect("Pochhammer argument with positive q-order is a unit")
}

/// Convenience: `(arg; q^step)_inf` at the given order.
pub(crate) fn infinite_poch(arg: &Monomial, step: HalfExp, order: HalfExp) -> QSeries {
    if order < HalfExp::ZERO {
        return QSeries::zero(order);
    }
    let spec = PochSpec::infinite(arg.clone(), step).expect("valid infinite spec");
    poch(&spec, order)
}

/// Checks Jacobi's triple product
/// `1 + sum_{r>=1} (-1)^r q^{r(r-1)/2} (z^r + z^{-r} q^r) = (z, z^{-1}q, q; q)_inf`
/// as truncated series.
pub fn jacobi_triple_product_check(order: HalfExp) -> VerificationReport {
    let start = Instant::now();
    let q1 = HalfExp::int(1);

    let mut terms: Vec<(HalfExp, ZPolynomial)> = vec![(HalfExp::ZERO, ZPolynomial::one())];
    let mut r: i64 = 1;
    loop {
        let binom = HalfExp::int(r * (r - 1) / 2);
        if binom > order {
            break;
        }
        let sign = BigInt::from(if r % 2 == 0 { 1 } else { -1 });
        terms.push((binom, ZPolynomial::term(sign.clone(), r)));
        terms.push((binom + HalfExp::int(r), ZPolynomial::term(sign, -r)));
        r += 1;
    }
    let lhs = QSeries::from_terms_truncating(terms, order);

    let rhs = infinite_poch(&Monomial::z(), q1, order)
        .mul(&infinite_poch(&Monomial::zq(-1, q1), q1, order))
        .mul(&infinite_poch(&Monomial::q(), q1, order));

    let cmp = lhs.equal_up_to(&rhs, order).expect("orders match");
    let mut report = VerificationReport::new("eq2.5-jtp", order).with_comparison(cmp);
    report.lhs_terms = lhs.term_count();
    report.rhs_terms = rhs.term_count();
    report.elapsed = start.elapsed();
    report
}

/// Checks Warnaar's generalized triple product
/// `1 + sum_{r>=1} (-1)^r q^{r(r-1)/2} (a^r + b^r)
///    = (a, b, q; q)_inf * sum_{r>=0} (ab/q; q)_{2r} q^r / ((q, a, b, ab; q)_r)`
/// for monomials `a`, `b` of q-order at least 1/2.
pub fn warnaar_gjtp_check(a: &Monomial, b: &Monomial, order: HalfExp) -> Result<VerificationReport> {
    let half = HalfExp::half_steps(1);
    if a.q_exp() < half || b.q_exp() < half {
        return Err(Error::Precondition(format!(
            "generalized triple product needs q-order >= 1/2 in both parameters, got a={a}, b={b}"
        )));
    }
    let start = Instant::now();
    let q1 = HalfExp::int(1);
    let ab = a.mul(b);

    let mut lhs_terms: Vec<(HalfExp, ZPolynomial)> = vec![(HalfExp::ZERO, ZPolynomial::one())];
    let mut r: u32 = 1;
    loop {
        let ri = i64::from(r);
        let binom = HalfExp::int(ri * (ri - 1) / 2);
        let a_pow = a.pow(r);
        let b_pow = b.pow(r);
        let lowest = binom + a_pow.q_exp().min(b_pow.q_exp());
        if lowest > order {
            break;
        }
        for m in [a_pow, b_pow] {
            let m = if r % 2 == 0 { m } else { m.neg() };
            lhs_terms.push((binom + m.q_exp(), m.z_part()));
        }
        r += 1;
    }
    let lhs = QSeries::from_terms_truncating(lhs_terms, order);

    let product = infinite_poch(a, q1, order)
        .mul(&infinite_poch(b, q1, order))
        .mul(&infinite_poch(&Monomial::q(), q1, order));

    let ab_over_q = ab.mul(&Monomial::q_pow(HalfExp::int(-1)));
    let mut series_sum = QSeries::zero(order);
    let mut r: i64 = 0;
    while HalfExp::int(r) <= order {
        let rel = order - HalfExp::int(r);
        let numer = finite_poch(&ab_over_q, q1, 2 * r, rel);
        let mut term = numer;
        for arg in [&Monomial::q(), a, b, &ab] {
            term = term.mul(&finite_poch_inv(arg, q1, r, rel));
        }
        series_sum = series_sum.add(&term.mul_monomial(&Monomial::q_pow(HalfExp::int(r))));
        r += 1;
    }
    let rhs = product.mul(&series_sum).truncated(order);

    let cmp = lhs.equal_up_to(&rhs, order)?;
    let mut report = VerificationReport::new(format!("eq2.4-gjtp[a={a},b={b}]"), order)
        .with_comparison(cmp);
    report.lhs_terms = lhs.term_count();
    report.rhs_terms = rhs.term_count();
    report.elapsed = start.elapsed();
    Ok(report)
}
