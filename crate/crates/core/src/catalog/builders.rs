//! Builders for the named series: the rank functions R and H, the
//! lost-notebook function K, the pole-cleared universal mock theta functions
//! (1-z) g2 and (1-z) g3, the triple-product prefactors, and the
//! multi-sum left sides of the infinite families.
//!
//! Raw g2 and g3 are deliberately not constructible: they carry a 1/(1-z)
//! pole, which is not an element of the working ring. Every statement in the
//! catalog is pole-free after clearing, using
//! `(z;q)_{n+1} = (1-z)(zq;q)_n` termwise.

use crate::bailey::{pair_family_a, pair_family_b, pair_family_c, Family};
use crate::error::Result;
use crate::qproducts::{finite_poch, finite_poch_inv, infinite_poch};
use crate::series::{HalfExp, Monomial, QSeries};

fn q1() -> HalfExp {
    HalfExp::int(1)
}

fn q2() -> HalfExp {
    HalfExp::int(2)
}

fn isqrt(c: i64) -> i64 {
    let mut r = (c.max(0) as f64).sqrt() as i64;
    while (r + 1) * (r + 1) <= c {
        r += 1;
    }
    while r > 0 && r * r > c {
        r -= 1;
    }
    r
}

/// `(zq, z^{-1}q, q; q)_inf`, the prefactor of the base-q identities.
pub fn prefactor(order: HalfExp) -> QSeries {
    infinite_poch(&Monomial::zq(1, q1()), q1(), order)
        .mul(&infinite_poch(&Monomial::zq(-1, q1()), q1(), order))
        .mul(&infinite_poch(&Monomial::q(), q1(), order))
}

/// `(zq^2, z^{-1}q^2, q^2; q^2)_inf`, the prefactor of the base-q^2
/// identities for K.
pub fn prefactor_q2(order: HalfExp) -> QSeries {
    infinite_poch(&Monomial::zq(1, q2()), q2(), order)
        .mul(&infinite_poch(&Monomial::zq(-1, q2()), q2(), order))
        .mul(&infinite_poch(&Monomial::q_pow(q2()), q2(), order))
}

/// Euler's product `(q;q)_inf`.
pub fn euler(order: HalfExp) -> QSeries {
    infinite_poch(&Monomial::q(), q1(), order)
}

/// `(q^2;q^2)_inf`.
pub fn euler_q2(order: HalfExp) -> QSeries {
    infinite_poch(&Monomial::q_pow(q2()), q2(), order)
}

/// The rank function `R(z;q) = sum_n q^{n^2} / ((zq;q)_n (z^{-1}q;q)_n)`.
/// The n-th summand has q-order n^2, so the outer sum cuts at `sqrt(order)`.
pub fn series_r(order: HalfExp) -> QSeries {
    let mut acc = QSeries::zero(order);
    let n_cut = isqrt(order.steps() / 2) + 1;
    for n in 0..=n_cut {
        let shift = HalfExp::int(n * n);
        if shift > order {
            break;
        }
        let rel = order - shift;
        let term = finite_poch_inv(&Monomial::zq(1, q1()), q1(), n, rel)
            .mul(&finite_poch_inv(&Monomial::zq(-1, q1()), q1(), n, rel))
            .mul_monomial(&Monomial::q_pow(shift));
        acc = acc.add(&term);
    }
    acc
}

/// The overpartition rank function
/// `H(z;q) = sum_n (-1;q)_n q^{n(n+1)/2} / ((zq;q)_n (z^{-1}q;q)_n)`.
pub fn series_h(order: HalfExp) -> QSeries {
    let mut acc = QSeries::zero(order);
    let mut n = 0i64;
    loop {
        let shift = HalfExp::int(n * (n + 1) / 2);
        if shift > order {
            break;
        }
        let rel = order - shift;
        let term = finite_poch(&Monomial::new(-1, 0, HalfExp::ZERO), q1(), n, rel)
            .mul(&finite_poch_inv(&Monomial::zq(1, q1()), q1(), n, rel))
            .mul(&finite_poch_inv(&Monomial::zq(-1, q1()), q1(), n, rel))
            .mul_monomial(&Monomial::q_pow(shift));
        acc = acc.add(&term);
        n += 1;
    }
    acc
}

/// The lost-notebook function
/// `K(z;q) = sum_n (-1)^n (q;q^2)_n q^{n^2} / ((zq^2;q^2)_n (z^{-1}q^2;q^2)_n)`
/// on the integer q-grid.
pub fn series_k(order: HalfExp) -> QSeries {
    let mut acc = QSeries::zero(order);
    let n_cut = isqrt(order.steps() / 2) + 1;
    for n in 0..=n_cut {
        let shift = HalfExp::int(n * n);
        if shift > order {
            break;
        }
        let rel = order - shift;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let term = finite_poch(&Monomial::q(), q2(), n, rel)
            .mul(&finite_poch_inv(&Monomial::zq(1, q2()), q2(), n, rel))
            .mul(&finite_poch_inv(&Monomial::zq(-1, q2()), q2(), n, rel))
            .mul_monomial(&Monomial::new(sign, 0, shift));
        acc = acc.add(&term);
    }
    acc
}

/// `(1-z) g2(z;q) = sum_n (-q;q)_n q^{n(n+1)/2} / ((zq;q)_n (z^{-1}q;q)_{n+1})`.
pub fn series_g2_cleared(order: HalfExp) -> QSeries {
    let mut acc = QSeries::zero(order);
    let mut n = 0i64;
    loop {
        let shift = HalfExp::int(n * (n + 1) / 2);
        if shift > order {
            break;
        }
        let rel = order - shift;
        let term = finite_poch(&Monomial::new(-1, 0, q1()), q1(), n, rel)
            .mul(&finite_poch_inv(&Monomial::zq(1, q1()), q1(), n, rel))
            .mul(&finite_poch_inv(&Monomial::zq(-1, q1()), q1(), n + 1, rel))
            .mul_monomial(&Monomial::q_pow(shift));
        acc = acc.add(&term);
        n += 1;
    }
    acc
}

/// `(1-z) g3(z;q) = sum_n q^{n(n+1)} / ((zq;q)_n (z^{-1}q;q)_{n+1})`.
pub fn series_g3_cleared(order: HalfExp) -> QSeries {
    let mut acc = QSeries::zero(order);
    let mut n = 0i64;
    loop {
        let shift = HalfExp::int(n * (n + 1));
        if shift > order {
            break;
        }
        let rel = order - shift;
        let term = finite_poch_inv(&Monomial::zq(1, q1()), q1(), n, rel)
            .mul(&finite_poch_inv(&Monomial::zq(-1, q1()), q1(), n + 1, rel))
            .mul_monomial(&Monomial::q_pow(shift));
        acc = acc.add(&term);
        n += 1;
    }
    acc
}

/// The multi-sum left side of a family identity: the triple-product
/// prefactor times `sum_n w_n(q) beta^{(k)}_n / (Pochhammer denominators)`,
/// assembled exactly as displayed. The beta multi-sums come from the Bailey
/// module; for family C everything is pushed to base q^2 through the
/// q -> q^2 substitution of the half-grid builders.
pub fn family_lhs(which: Family, k: u32, order: HalfExp) -> Result<QSeries> {
    match which {
        Family::A => {
            let pair = pair_family_a(k)?;
            let mut acc = QSeries::zero(order);
            let mut n: i64 = 0;
            while HalfExp::int(n) <= order {
                let shift = HalfExp::int(n);
                let rel = order - shift;
                let term = finite_poch(&Monomial::q(), q1(), 2 * n, rel)
                    .mul(&finite_poch_inv(&Monomial::zq(1, q1()), q1(), n, rel))
                    .mul(&finite_poch_inv(&Monomial::zq(-1, q1()), q1(), n, rel))
                    .mul(&pair.beta(n as u32, rel))
                    .truncated(rel)
                    .mul_monomial(&Monomial::q_pow(shift));
                acc = acc.add(&term);
                n += 1;
            }
            Ok(prefactor(order).mul(&acc).truncated(order))
        }
        Family::B => {
            let pair = pair_family_b(k)?;
            let mut acc = QSeries::zero(order);
            let mut n: i64 = 0;
            while HalfExp::int(n) <= order {
                let shift = HalfExp::int(n);
                let rel = order - shift;
                let term = finite_poch(&Monomial::q_pow(q2()), q1(), 2 * n, rel)
                    .mul(&finite_poch_inv(&Monomial::zq(1, q1()), q1(), n, rel))
                    .mul(&finite_poch_inv(&Monomial::zq(-1, q1()), q1(), n + 1, rel))
                    .mul(&pair.beta(n as u32, rel))
                    .truncated(rel)
                    .mul_monomial(&Monomial::q_pow(shift));
                acc = acc.add(&term);
                n += 1;
            }
            Ok(prefactor(order).mul(&acc).truncated(order))
        }
        Family::C => {
            let pair = pair_family_c(k)?;
            let mut acc = QSeries::zero(order);
            let mut n: i64 = 0;
            while HalfExp::int(2 * n) <= order {
                let shift = HalfExp::int(2 * n);
                let rel = order - shift;
                // beta^(k) lives on the half grid in base q; its q -> q^2
                // image needs half the relative order.
                let rel_half = HalfExp::half_steps((rel.steps() + 1).div_euclid(2));
                let beta_q2 = pair.beta(n as u32, rel_half).subst_q_square();
                let term = finite_poch(&Monomial::q_pow(q2()), q2(), 2 * n, rel)
                    .mul(&finite_poch_inv(&Monomial::zq(1, q2()), q2(), n, rel))
                    .mul(&finite_poch_inv(&Monomial::zq(-1, q2()), q2(), n, rel))
                    .mul(&beta_q2)
                    .truncated(rel)
                    .mul_monomial(&Monomial::q_pow(shift));
                acc = acc.add(&term);
                n += 1;
            }
            Ok(prefactor_q2(order).mul(&acc).truncated(order))
        }
    }
}
