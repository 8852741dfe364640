//! The identity registry: one entry per verifiable display, each with
//! builders for both sides, a stable id, and a human-readable location
//! string. Ids are stable strings; reports carry both.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;

use super::builders::{
    euler, euler_q2, family_lhs, prefactor, prefactor_q2, series_g2_cleared, series_g3_cleared,
    series_h, series_k, series_r,
};
use super::double_sum::{
    n_max_h8_type, n_max_h_type, n_max_k_type, n_max_r_type, theta_correction_sums, DoubleSumSpec,
};
use crate::bailey::Family;
use crate::error::{Error, Result};
use crate::report::{Status, VerificationReport};
use crate::series::{HalfExp, Monomial, QSeries, ZPolynomial};

type SideBuilder = Arc<dyn Fn(HalfExp, u32) -> Result<QSeries> + Send + Sync>;

/// A registered identity: builders for both sides at any truncation order.
/// Family identities additionally take the iteration depth k >= 2.
#[derive(Clone)]
pub struct IdentityCase {
    id: &'static str,
    location: &'static str,
    family: bool,
    lhs: SideBuilder,
    rhs: SideBuilder,
}

impl IdentityCase {
    pub fn id(&self) -> &'static str {
        self.id
    }

    pub fn location(&self) -> &'static str {
        self.location
    }

    pub fn is_family(&self) -> bool {
        self.family
    }

    pub fn lhs(&self, order: HalfExp, k: u32) -> Result<QSeries> {
        (self.lhs)(order, k)
    }

    pub fn rhs(&self, order: HalfExp, k: u32) -> Result<QSeries> {
        (self.rhs)(order, k)
    }
}

fn sign_pm(parity: i64) -> i32 {
    if parity.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

// ---------------------------------------------------------------------------
// Double-sum specifications
//
// All q-exponents are written in half-steps (twice the exponent). The family
// parameter enters with a factor (k-1), so k = 1 recovers the base display.
// ---------------------------------------------------------------------------

/// First compact sum for R: `sum_{j=0}^{[n/2]} (-1)^{n+j} z^{n-3j}
/// q^{(n^2-3j^2)/2 + (n-j)/2}`.
pub fn spec_compact_first() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "thm1.1-compact-first",
        |n, j| sign_pm(n + j),
        |n, j| vec![n - 3 * j],
        |n, j| HalfExp::half_steps(n * n - 3 * j * j + n - j),
        |n| 0..=n.div_euclid(2),
        n_max_r_type,
    )
}

/// Second compact sum for R: `sum_{j=1}^{[n/2]} (-1)^{n+j} z^{n-3j+1}
/// q^{(n^2-3j^2)/2 + (n+j)/2}`.
pub fn spec_compact_second() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "thm1.1-compact-second",
        |n, j| sign_pm(n + j),
        |n, j| vec![n - 3 * j + 1],
        |n, j| HalfExp::half_steps(n * n - 3 * j * j + n + j),
        |n| 1..=n.div_euclid(2),
        n_max_r_type,
    )
}

/// First sum of the doubled two-variable identity for R, with both z-powers.
pub fn spec_doubled_first() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "eq1.1-doubled-first",
        |n, j| sign_pm(n + j),
        |n, j| vec![n - 3 * j, 3 * j - n],
        |n, j| HalfExp::half_steps(n * n - 3 * j * j + n - j),
        |n| 0..=n.div_euclid(2),
        n_max_r_type,
    )
}

/// Second sum of the doubled identity for R.
pub fn spec_doubled_second() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "eq1.1-doubled-second",
        |n, j| sign_pm(n + j),
        |n, j| vec![n - 3 * j + 1, 3 * j - n - 1],
        |n, j| HalfExp::half_steps(n * n - 3 * j * j + n + j),
        |n| 1..=n.div_euclid(2),
        n_max_r_type,
    )
}

/// Expanded-form first sum (region `0 <= j < n/3`), with the family exponent
/// addition `3(k-1) j(3j+1)`.
pub fn spec_expanded_first(k: u32) -> DoubleSumSpec {
    let kk = i64::from(k);
    DoubleSumSpec::new(
        format!("r-expanded-first[k={k}]"),
        |n, j| sign_pm(n + j),
        |n, j| vec![n - 3 * j, 3 * j - n],
        move |n, j| {
            HalfExp::half_steps(n * n - 3 * j * j + n - j + 6 * (kk - 1) * j * (3 * j + 1))
        },
        |n| 0..=(n - 1).div_euclid(3),
        n_max_r_type,
    )
}

/// Expanded-form second sum (region `1 <= j < (n+1)/3`), with the family
/// exponent addition `3(k-1) j(3j-1)`.
pub fn spec_expanded_second(k: u32) -> DoubleSumSpec {
    let kk = i64::from(k);
    DoubleSumSpec::new(
        format!("r-expanded-second[k={k}]"),
        |n, j| sign_pm(n + j),
        |n, j| vec![n - 3 * j + 1, 3 * j - n - 1],
        move |n, j| {
            HalfExp::half_steps(n * n - 3 * j * j + n + j + 6 * (kk - 1) * j * (3 * j - 1))
        },
        |n| 1..=n.div_euclid(3),
        n_max_r_type,
    )
}

/// First H-shape sum, with the family addition `4(k-1)(m^2+m)`:
/// `sum_{m=0}^{[n/2]} (-1)^{m+n} z^{n-2m} q^{(n^2-2m^2)/2 + n/2 + ...}`.
pub fn spec_h_first(k: u32) -> DoubleSumSpec {
    let kk = i64::from(k);
    DoubleSumSpec::new(
        format!("g2-sum-first[k={k}]"),
        |n, m| sign_pm(n + m),
        |n, m| vec![n - 2 * m],
        move |n, m| HalfExp::half_steps(n * n - 2 * m * m + n + 8 * (kk - 1) * (m * m + m)),
        |n| 0..=n.div_euclid(2),
        n_max_h_type,
    )
}

/// Second H-shape sum, with the family addition `4(k-1)(m^2-m)`.
pub fn spec_h_second(k: u32) -> DoubleSumSpec {
    let kk = i64::from(k);
    DoubleSumSpec::new(
        format!("g2-sum-second[k={k}]"),
        |n, m| sign_pm(n + m),
        |n, m| vec![2 * m - n - 1],
        move |n, m| HalfExp::half_steps(n * n - 2 * m * m + n + 8 * (kk - 1) * (m * m - m)),
        |n| 1..=n.div_euclid(2),
        n_max_h_type,
    )
}

/// The H identity sum over `|m| <= [n/2]` with paired z-powers.
pub fn spec_eq15() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "eq1.5-H-sum",
        |n, m| sign_pm(n + m),
        |n, m| vec![n - 2 * m.abs() + 1, 2 * m.abs() - n],
        |n, m| HalfExp::half_steps(n * n - 2 * m * m + n),
        |n| -n.div_euclid(2)..=n.div_euclid(2),
        n_max_h_type,
    )
}

/// The H identity sum over `|m| <= [n/3]` (sign depends on n only).
pub fn spec_eq16() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "eq1.6-H-sum",
        |n, _| sign_pm(n),
        |n, m| vec![n - 4 * m.abs() + 1, 4 * m.abs() - n],
        |n, m| HalfExp::half_steps(n * n - 8 * m * m + n),
        |n| -n.div_euclid(3)..=n.div_euclid(3),
        n_max_h8_type,
    )
}

/// First K-shape sum (base q^2 grid), family addition `2(k-1)(m^2+m)`:
/// `sum_{m=0}^{n} (-1)^n z^{m-n} q^{(2n^2-m^2)/2 + (2n-m)/2 + ...}`.
pub fn spec_k_first(k: u32) -> DoubleSumSpec {
    let kk = i64::from(k);
    DoubleSumSpec::new(
        format!("k-sum-first[k={k}]"),
        |n, _| sign_pm(n),
        |n, m| vec![m - n],
        move |n, m| {
            HalfExp::half_steps(2 * n * n - m * m + 2 * n - m + 4 * (kk - 1) * (m * m + m))
        },
        |n| 0..=n,
        n_max_k_type,
    )
}

/// Second K-shape sum, family addition `2(k-1)(m^2-m)`.
pub fn spec_k_second(k: u32) -> DoubleSumSpec {
    let kk = i64::from(k);
    DoubleSumSpec::new(
        format!("k-sum-second[k={k}]"),
        |n, _| sign_pm(n),
        |n, m| vec![n - m + 1],
        move |n, m| {
            HalfExp::half_steps(2 * n * n - m * m + 2 * n + m + 4 * (kk - 1) * (m * m - m))
        },
        |n| 1..=n,
        n_max_k_type,
    )
}

/// Left side of the first sector-reflection rearrangement.
pub fn spec_rearr214_lhs() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "rearr-2.14-lhs",
        |n, j| sign_pm(n + j),
        |n, j| vec![n - 3 * j],
        |n, j| HalfExp::half_steps(n * n - 3 * j * j + n - j),
        |n| 0..=(n - 1).div_euclid(3),
        n_max_r_type,
    )
}

/// Right side: the reflected sector `n/3 < j <= n/2`.
pub fn spec_rearr214_rhs() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "rearr-2.14-rhs",
        |n, j| sign_pm(n + j),
        |n, j| vec![3 * j - n],
        |n, j| HalfExp::half_steps(n * n - 3 * j * j + n - j),
        |n| (n.div_euclid(3) + 1)..=n.div_euclid(2),
        n_max_r_type,
    )
}

/// Left side of the second sector-reflection rearrangement.
pub fn spec_rearr215_lhs() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "rearr-2.15-lhs",
        |n, j| sign_pm(n + j),
        |n, j| vec![n - 3 * j + 1],
        |n, j| HalfExp::half_steps(n * n - 3 * j * j + n + j),
        |n| 1..=n.div_euclid(3),
        n_max_r_type,
    )
}

/// Right side: the reflected sector `(n+1)/3 < j <= n/2`.
pub fn spec_rearr215_rhs() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "rearr-2.15-rhs",
        |n, j| sign_pm(n + j),
        |n, j| vec![3 * j - n - 1],
        |n, j| HalfExp::half_steps(n * n - 3 * j * j + n + j),
        |n| (n + 4).div_euclid(3)..=n.div_euclid(2),
        n_max_r_type,
    )
}

/// z = 1 of the doubled R identity: the classical double sum for
/// `(q;q)_inf^2`, `j` running over the full symmetric sector.
pub fn spec_eq12_z1() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "eq1.2-z1-sum",
        |n, j| sign_pm(n + j),
        |_, _| vec![0],
        |n, j| HalfExp::half_steps(n * n - 3 * j * j + n + j),
        |n| -n.div_euclid(2)..=n.div_euclid(2),
        n_max_r_type,
    )
}

/// z = 1 of the `|m| <= n/2` H identity.
pub fn spec_eq17_z1() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "eq1.7-z1-sum",
        |n, m| sign_pm(n + m),
        |_, _| vec![0],
        |n, m| HalfExp::half_steps(n * n - 2 * m * m + n),
        |n| -n.div_euclid(2)..=n.div_euclid(2),
        n_max_h_type,
    )
}

/// z = 1 of the `|m| <= n/3` H identity.
pub fn spec_eq18_z1() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "eq1.8-z1-sum",
        |n, _| sign_pm(n),
        |_, _| vec![0],
        |n, m| HalfExp::half_steps(n * n - 8 * m * m + n),
        |n| -n.div_euclid(3)..=n.div_euclid(3),
        n_max_h8_type,
    )
}

/// z = 1 of the K identity: Bressoud's double sum over `|m| <= n`.
pub fn spec_eq110_z1() -> DoubleSumSpec {
    DoubleSumSpec::new(
        "eq1.10-z1-sum",
        |n, _| sign_pm(n),
        |_, _| vec![0],
        |n, m| HalfExp::half_steps(2 * n * n - m * m + 2 * n + m),
        |n| -n..=n,
        n_max_k_type,
    )
}

// ---------------------------------------------------------------------------
// Small composition helpers
// ---------------------------------------------------------------------------

fn one_plus_z() -> ZPolynomial {
    ZPolynomial::from_terms([(0, BigInt::from(1)), (1, BigInt::from(1))])
}

fn one_minus_z() -> ZPolynomial {
    ZPolynomial::from_terms([(0, BigInt::from(1)), (1, BigInt::from(-1))])
}

fn b(f: impl Fn(HalfExp, u32) -> Result<QSeries> + Send + Sync + 'static) -> SideBuilder {
    Arc::new(f)
}

// ---------------------------------------------------------------------------
// The catalog
// ---------------------------------------------------------------------------

/// The registry of all verifiable identities, immutable after construction.
pub struct IdentityCatalog {
    cases: Vec<IdentityCase>,
}

impl Default for IdentityCatalog {
    fn default() -> Self {
        Self::standard()
    }
}

impl IdentityCatalog {
    /// Builds the standard registry.
    pub fn standard() -> Self {
        let mut cases = Vec::new();

        cases.push(IdentityCase {
            id: "eq1.1-R-doubled",
            location: "Eq. (1.1): two-variable Hecke-Rogers identity for R(z;q), doubled to clear the 1/2 prefactor",
            family: false,
            lhs: b(|order, _| {
                let p = prefactor(order).mul(&series_r(order));
                Ok(p.add(&p))
            }),
            rhs: b(|order, _| {
                Ok(spec_doubled_first()
                    .evaluate(order)
                    .add(&spec_doubled_second().evaluate(order)))
            }),
        });

        cases.push(IdentityCase {
            id: "thm1.1-compact",
            location: "Theorem 1.1, Eq. (1.11): compact Hecke-Rogers form for R(z;q)",
            family: false,
            lhs: b(|order, _| Ok(prefactor(order).mul(&series_r(order)))),
            rhs: b(|order, _| {
                Ok(spec_compact_first()
                    .evaluate(order)
                    .add(&spec_compact_second().evaluate(order)))
            }),
        });

        cases.push(IdentityCase {
            id: "thm1.1-expanded",
            location: "Theorem 1.1, Eq. (1.12): expanded form with theta corrections",
            family: false,
            lhs: b(|order, _| Ok(prefactor(order).mul(&series_r(order)))),
            rhs: b(|order, _| {
                Ok(spec_expanded_first(1)
                    .evaluate(order)
                    .add(&spec_expanded_second(1).evaluate(order))
                    .add(&theta_correction_sums(1, order)))
            }),
        });

        cases.push(IdentityCase {
            id: "thm1.2-g2",
            location: "Theorem 1.2, Eq. (1.13): Hecke-Rogers identity for (1-z)(zq,z^{-1}q,q;q)_inf g2(z;q)",
            family: false,
            lhs: b(|order, _| Ok(prefactor(order).mul(&series_g2_cleared(order)))),
            rhs: b(|order, _| {
                Ok(spec_h_first(1)
                    .evaluate(order)
                    .add(&spec_h_second(1).evaluate(order)))
            }),
        });

        cases.push(IdentityCase {
            id: "eq1.4-H-g2",
            location: "Eq. (1.4): relation (1+z) H(z;q) = (1-z) + 2z(1-z) g2(z;q)",
            family: false,
            lhs: b(|order, _| {
                Ok(QSeries::constant(one_plus_z(), order).mul(&series_h(order)))
            }),
            rhs: b(|order, _| {
                let two_z = Monomial::new(2, 1, HalfExp::ZERO);
                Ok(QSeries::constant(one_minus_z(), order)
                    .add(&series_g2_cleared(order).mul_monomial(&two_z)))
            }),
        });

        cases.push(IdentityCase {
            id: "eq1.5-H",
            location: "Eq. (1.5): Hecke-Rogers identity for (1+z)(zq,z^{-1}q,q;q)_inf H(z;q), |m| <= n/2 form",
            family: false,
            lhs: b(|order, _| {
                Ok(QSeries::constant(one_plus_z(), order)
                    .mul(&prefactor(order))
                    .mul(&series_h(order)))
            }),
            rhs: b(|order, _| Ok(spec_eq15().evaluate(order))),
        });

        cases.push(IdentityCase {
            id: "eq1.6-H",
            location: "Eq. (1.6): Hecke-Rogers identity for (1+z)(zq,z^{-1}q,q;q)_inf H(z;q), |m| <= n/3 form",
            family: false,
            lhs: b(|order, _| {
                Ok(QSeries::constant(one_plus_z(), order)
                    .mul(&prefactor(order))
                    .mul(&series_h(order)))
            }),
            rhs: b(|order, _| Ok(spec_eq16().evaluate(order))),
        });

        cases.push(IdentityCase {
            id: "eq1.9-K",
            location: "Eq. (1.9): Hecke-Rogers identity for (zq^2,z^{-1}q^2,q^2;q^2)_inf K(z;q)",
            family: false,
            lhs: b(|order, _| Ok(prefactor_q2(order).mul(&series_k(order)))),
            rhs: b(|order, _| {
                Ok(spec_k_first(1)
                    .evaluate(order)
                    .add(&spec_k_second(1).evaluate(order)))
            }),
        });

        cases.push(IdentityCase {
            id: "rel-g3-R",
            location: "Section 1 relation g3 = -1/z + R/(z(1-z)), cleared: z(1-z)g3 + (1-z) = R",
            family: false,
            lhs: b(|order, _| {
                Ok(series_g3_cleared(order)
                    .mul_monomial(&Monomial::z())
                    .add(&QSeries::constant(one_minus_z(), order)))
            }),
            rhs: b(|order, _| Ok(series_r(order))),
        });

        cases.push(IdentityCase {
            id: "rel-R-symmetry",
            location: "Section 1 symmetry R(z;q) = R(z^{-1};q)",
            family: false,
            lhs: b(|order, _| Ok(series_r(order))),
            rhs: b(|order, _| Ok(series_r(order).subst_z_inverse())),
        });

        cases.push(IdentityCase {
            id: "rearr-2.14",
            location: "Garvan Eq. (2.14): sector reflection for the (n-j)/2-weighted double sum",
            family: false,
            lhs: b(|order, _| Ok(spec_rearr214_lhs().evaluate(order))),
            rhs: b(|order, _| Ok(spec_rearr214_rhs().evaluate(order))),
        });

        cases.push(IdentityCase {
            id: "rearr-2.15",
            location: "Garvan Eq. (2.15): sector reflection for the (n+j)/2-weighted double sum",
            family: false,
            lhs: b(|order, _| Ok(spec_rearr215_lhs().evaluate(order))),
            rhs: b(|order, _| Ok(spec_rearr215_rhs().evaluate(order))),
        });

        cases.push(IdentityCase {
            id: "thm1.3-R-family",
            location: "Theorem 1.3, Eq. (1.14): infinite family extending Eq. (1.12), parameter k",
            family: true,
            lhs: b(|order, k| family_lhs(Family::A, k, order)),
            rhs: b(|order, k| {
                let scale = 3 * i64::from(k) - 2;
                Ok(spec_expanded_first(k)
                    .evaluate(order)
                    .add(&spec_expanded_second(k).evaluate(order))
                    .add(&theta_correction_sums(scale, order)))
            }),
        });

        cases.push(IdentityCase {
            id: "thm1.4-g2-family",
            location: "Theorem 1.4, Eq. (1.15): infinite family extending Theorem 1.2, parameter k",
            family: true,
            lhs: b(|order, k| family_lhs(Family::B, k, order)),
            rhs: b(|order, k| {
                Ok(spec_h_first(k)
                    .evaluate(order)
                    .add(&spec_h_second(k).evaluate(order)))
            }),
        });

        cases.push(IdentityCase {
            id: "thm1.5-K-family",
            location: "Theorem 1.5, Eq. (1.16): infinite family extending Eq. (1.9), parameter k",
            family: true,
            lhs: b(|order, k| family_lhs(Family::C, k, order)),
            rhs: b(|order, k| {
                Ok(spec_k_first(k)
                    .evaluate(order)
                    .add(&spec_k_second(k).evaluate(order)))
            }),
        });

        cases.push(IdentityCase {
            id: "eq1.2-z1",
            location: "Eq. (1.2): classical Hecke-Rogers identity for (q;q)_inf^2 (z = 1)",
            family: false,
            lhs: b(|order, _| {
                let e = euler(order);
                Ok(e.mul(&e))
            }),
            rhs: b(|order, _| Ok(spec_eq12_z1().evaluate(order))),
        });

        cases.push(IdentityCase {
            id: "eq1.7-z1",
            location: "Eq. (1.7): Kac-Peterson identity for (q;q)_inf (q^2;q^2)_inf (z = 1 of Eq. (1.5))",
            family: false,
            lhs: b(|order, _| Ok(euler(order).mul(&euler_q2(order)))),
            rhs: b(|order, _| Ok(spec_eq17_z1().evaluate(order))),
        });

        cases.push(IdentityCase {
            id: "eq1.8-z1",
            location: "Eq. (1.8): Kac-Peterson identity for (q;q)_inf (q^2;q^2)_inf (z = 1 of Eq. (1.6))",
            family: false,
            lhs: b(|order, _| Ok(euler(order).mul(&euler_q2(order)))),
            rhs: b(|order, _| Ok(spec_eq18_z1().evaluate(order))),
        });

        cases.push(IdentityCase {
            id: "eq1.10-z1",
            location: "Eq. (1.10): Bressoud's Hecke-Rogers identity (z = 1 of Eq. (1.9))",
            family: false,
            lhs: b(|order, _| Ok(euler(order).mul(&euler_q2(order)))),
            rhs: b(|order, _| Ok(spec_eq110_z1().evaluate(order))),
        });

        IdentityCatalog { cases }
    }

    pub fn cases(&self) -> &[IdentityCase] {
        &self.cases
    }

    pub fn get(&self, id: &str) -> Option<&IdentityCase> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.cases.iter().map(|c| c.id)
    }

    /// Builds both sides of an identity and compares them up to `order`.
    ///
    /// Usage-level problems (unknown id, missing or invalid k) come back as
    /// errors; anything that goes wrong while building series is folded into
    /// a report with `Status::Error`.
    pub fn verify(&self, id: &str, order: HalfExp, k: Option<u32>) -> Result<VerificationReport> {
        let case = self
            .get(id)
            .ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
        let k_value = if case.family {
            let k = k.ok_or_else(|| Error::MissingK(id.to_string()))?;
            if k < 2 {
                return Err(Error::InvalidK(k));
            }
            Some(k)
        } else {
            None
        };
        let kk = k_value.unwrap_or(1);

        let start = Instant::now();
        let mut report = VerificationReport::new(id, order);
        report.k = k_value;
        let (lhs, rhs) = crate::exec::join(|| case.lhs(order, kk), || case.rhs(order, kk));
        match (lhs, rhs) {
            (Ok(lhs), Ok(rhs)) => {
                report.lhs_terms = lhs.term_count();
                report.rhs_terms = rhs.term_count();
                match lhs.equal_up_to(&rhs, order) {
                    Ok(cmp) => report = report.with_comparison(cmp),
                    Err(e) => {
                        report.status = Status::Error;
                        report.error = Some(e.to_string());
                    }
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                report.status = Status::Error;
                report.error = Some(e.to_string());
            }
        }
        report.elapsed = start.elapsed();
        Ok(report)
    }

    /// Every double-sum specification used by the registry, instantiating
    /// the k-dependent families at each of the supplied depths. This is the
    /// population the self-audit sweeps.
    pub fn all_double_sum_specs(&self, ks: &[u32]) -> Vec<DoubleSumSpec> {
        let mut specs = vec![
            spec_compact_first(),
            spec_compact_second(),
            spec_doubled_first(),
            spec_doubled_second(),
            spec_eq15(),
            spec_eq16(),
            spec_rearr214_lhs(),
            spec_rearr214_rhs(),
            spec_rearr215_lhs(),
            spec_rearr215_rhs(),
            spec_eq12_z1(),
            spec_eq17_z1(),
            spec_eq18_z1(),
            spec_eq110_z1(),
        ];
        let mut depths = vec![1u32];
        depths.extend(ks.iter().copied().filter(|&k| k >= 2));
        depths.dedup();
        for k in depths {
            specs.push(spec_expanded_first(k));
            specs.push(spec_expanded_second(k));
            specs.push(spec_h_first(k));
            specs.push(spec_h_second(k));
            specs.push(spec_k_first(k));
            specs.push(spec_k_second(k));
        }
        specs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: i64) -> HalfExp {
        HalfExp::int(n)
    }

    #[test]
    fn registry_contains_expected_ids() {
        let cat = IdentityCatalog::standard();
        for id in [
            "eq1.1-R-doubled",
            "thm1.1-compact",
            "thm1.1-expanded",
            "thm1.2-g2",
            "eq1.4-H-g2",
            "eq1.5-H",
            "eq1.6-H",
            "eq1.9-K",
            "rel-g3-R",
            "rel-R-symmetry",
            "rearr-2.14",
            "rearr-2.15",
            "thm1.3-R-family",
            "thm1.4-g2-family",
            "thm1.5-K-family",
            "eq1.2-z1",
            "eq1.7-z1",
            "eq1.8-z1",
            "eq1.10-z1",
        ] {
            assert!(cat.get(id).is_some(), "missing {id}");
        }
        assert_eq!(cat.cases().len(), 19);
    }

    #[test]
    fn unknown_identity_and_k_validation() {
        let cat = IdentityCatalog::standard();
        assert!(matches!(
            cat.verify("no-such-id", ord(5), None),
            Err(Error::UnknownIdentity(_))
        ));
        assert!(matches!(
            cat.verify("thm1.3-R-family", ord(5), None),
            Err(Error::MissingK(_))
        ));
        assert!(matches!(
            cat.verify("thm1.3-R-family", ord(5), Some(1)),
            Err(Error::InvalidK(1))
        ));
    }

    #[test]
    fn small_order_passes() {
        let cat = IdentityCatalog::standard();
        let r = cat.verify("rel-R-symmetry", ord(12), None).unwrap();
        assert!(r.passed(), "{}", r.text_line());
        let r = cat.verify("rearr-2.14", ord(12), None).unwrap();
        assert!(r.passed(), "{}", r.text_line());
    }
}
