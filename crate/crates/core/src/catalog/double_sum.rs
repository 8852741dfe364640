//! Declarative Hecke-Rogers double sums: a sign rule, one or two z-exponent
//! linear forms, a quadratic q-exponent, a j-region per n, and a certified
//! outer enumeration bound.
//!
//! Every bound carries its one-line proof next to the constructor that uses
//! it; the `audit` method re-scans a window past the bound and errors if any
//! term it finds would have landed at or below the order.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::series::{HalfExp, QSeries, ZPolynomial};

type SignFn = Arc<dyn Fn(i64, i64) -> i32 + Send + Sync>;
type ZExpFn = Arc<dyn Fn(i64, i64) -> Vec<i64> + Send + Sync>;
type QExpFn = Arc<dyn Fn(i64, i64) -> HalfExp + Send + Sync>;
type RegionFn = Arc<dyn Fn(i64) -> RangeInclusive<i64> + Send + Sync>;
type NMaxFn = Arc<dyn Fn(HalfExp) -> i64 + Send + Sync>;

/// A double sum `sum_{n>=0} sum_{j in region(n)} sign(n,j) *
/// (sum of z^{e} over z_exps(n,j)) * q^{q_exp(n,j)}`.
#[derive(Clone)]
pub struct DoubleSumSpec {
    name: String,
    sign: SignFn,
    z_exps: ZExpFn,
    q_exp: QExpFn,
    region: RegionFn,
    n_max: NMaxFn,
}

impl DoubleSumSpec {
    pub fn new(
        name: impl Into<String>,
        sign: impl Fn(i64, i64) -> i32 + Send + Sync + 'static,
        z_exps: impl Fn(i64, i64) -> Vec<i64> + Send + Sync + 'static,
        q_exp: impl Fn(i64, i64) -> HalfExp + Send + Sync + 'static,
        region: impl Fn(i64) -> RangeInclusive<i64> + Send + Sync + 'static,
        n_max: impl Fn(HalfExp) -> i64 + Send + Sync + 'static,
    ) -> Self {
        DoubleSumSpec {
            name: name.into(),
            sign: Arc::new(sign),
            z_exps: Arc::new(z_exps),
            q_exp: Arc::new(q_exp),
            region: Arc::new(region),
            n_max: Arc::new(n_max),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sign(&self, n: i64, j: i64) -> i32 {
        (self.sign)(n, j)
    }

    pub fn z_exps(&self, n: i64, j: i64) -> Vec<i64> {
        (self.z_exps)(n, j)
    }

    pub fn q_exp(&self, n: i64, j: i64) -> HalfExp {
        (self.q_exp)(n, j)
    }

    pub fn region(&self, n: i64) -> RangeInclusive<i64> {
        (self.region)(n)
    }

    pub fn n_max(&self, order: HalfExp) -> i64 {
        (self.n_max)(order)
    }

    /// Restricts the j-region to a single value (used by the family
    /// degeneration checks, which compare the j = 0 diagonals across k).
    pub fn restricted_to_j(&self, j0: i64) -> DoubleSumSpec {
        let region = self.region.clone();
        DoubleSumSpec {
            name: format!("{}[j={j0}]", self.name),
            sign: self.sign.clone(),
            z_exps: self.z_exps.clone(),
            q_exp: self.q_exp.clone(),
            region: Arc::new(move |n| {
                let r = region(n);
                if r.contains(&j0) {
                    j0..=j0
                } else {
                    1..=0
                }
            }),
            n_max: self.n_max.clone(),
        }
    }

    fn row(&self, n: i64, order: HalfExp) -> BTreeMap<i64, ZPolynomial> {
        let mut out: BTreeMap<i64, ZPolynomial> = BTreeMap::new();
        for j in self.region(n) {
            let e = self.q_exp(n, j);
            if e > order {
                continue;
            }
            let c = BigInt::from(self.sign(n, j));
            let slot = out.entry(e.steps()).or_default();
            for ze in self.z_exps(n, j) {
                slot.add_term(ze, &c);
            }
        }
        out
    }

    /// Exact enumeration of all terms with q-exponent at most `order`.
    pub fn evaluate(&self, order: HalfExp) -> QSeries {
        let n_max = self.n_max(order);
        #[cfg(feature = "parallel")]
        {
            if n_max >= 64 {
                return self.evaluate_par(order, n_max);
            }
        }
        let mut acc: BTreeMap<i64, ZPolynomial> = BTreeMap::new();
        for n in 0..=n_max {
            for (steps, poly) in self.row(n, order) {
                acc.entry(steps).or_default().add_assign(&poly);
            }
        }
        QSeries::from_map(acc, order)
    }

    #[cfg(feature = "parallel")]
    fn evaluate_par(&self, order: HalfExp, n_max: i64) -> QSeries {
        use rayon::prelude::*;
        let acc = (0..=n_max)
            .into_par_iter()
            .map(|n| self.row(n, order))
            .reduce(BTreeMap::new, |mut a, b| {
                for (steps, poly) in b {
                    a.entry(steps).or_default().add_assign(&poly);
                }
                a
            });
        QSeries::from_map(acc, order)
    }

    /// Scans `n` in `(n_max, n_max + 5]` and errors if any term there has
    /// exponent at or below the order — i.e. the certified bound missed it.
    pub fn audit(&self, order: HalfExp) -> Result<()> {
        let n_max = self.n_max(order);
        for n in n_max + 1..=n_max + 5 {
            for j in self.region(n) {
                let e = self.q_exp(n, j);
                if e <= order {
                    return Err(Error::BoundViolation {
                        spec: self.name.clone(),
                        n,
                        j,
                        exp: e,
                        order,
                        n_max,
                    });
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for DoubleSumSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DoubleSumSpec({})", self.name)
    }
}

// ---------------------------------------------------------------------------
// Certified outer bounds, one per region/exponent shape.
//
// Each bound proves: for n beyond it, every term in the region has exponent
// above the order. The k-dependent exponent additions in the families are
// all nonnegative, so the same bounds stay valid for every k >= 2.
// ---------------------------------------------------------------------------

/// Smallest integer whose square exceeds `c`, plus a margin of 2.
fn sqrt_bound(c: i64) -> i64 {
    let mut r = (c.max(0) as f64).sqrt() as i64;
    while r * r <= c {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) > c {
        r -= 1;
    }
    r + 2
}

/// `|j| <= n/2`, exponent `(n^2-3j^2)/2 + (n±j)/2 >= n^2/8`:
/// cut at `n > sqrt(8*order)`.
pub fn n_max_r_type(order: HalfExp) -> i64 {
    sqrt_bound(4 * order.steps().max(0))
}

/// `|m| <= n/2`, exponent `(n^2-2m^2)/2 + n/2 >= n^2/4`:
/// cut at `n > sqrt(4*order)`.
pub fn n_max_h_type(order: HalfExp) -> i64 {
    sqrt_bound(2 * order.steps().max(0))
}

/// `|m| <= n/3`, exponent `(n^2-8m^2)/2 + n/2 >= n^2/18`:
/// cut at `n > sqrt(18*order)`.
pub fn n_max_h8_type(order: HalfExp) -> i64 {
    sqrt_bound(9 * order.steps().max(0))
}

/// `0 <= m <= n`, exponent `(2n^2-m^2)/2 + (2n±m)/2 >= n^2/2`:
/// cut at `n > sqrt(2*order)`.
pub fn n_max_k_type(order: HalfExp) -> i64 {
    sqrt_bound(order.steps().max(0))
}

// ---------------------------------------------------------------------------
// Theta correction sums
// ---------------------------------------------------------------------------

/// `sum_{j>=0} q^{scale * j(3j+1)}`, cut where the exponent passes the order.
pub fn theta_plus(scale: i64, order: HalfExp) -> QSeries {
    theta_sum(scale, 1, 0, order)
}

/// `sum_{j>=1} q^{scale * j(3j-1)}`.
pub fn theta_minus(scale: i64, order: HalfExp) -> QSeries {
    theta_sum(scale, -1, 1, order)
}

fn theta_sum(scale: i64, lin_sign: i64, j_start: i64, order: HalfExp) -> QSeries {
    assert!(scale >= 1);
    let mut map = BTreeMap::new();
    let mut j = j_start;
    loop {
        let e = HalfExp::int(scale * j * (3 * j + lin_sign));
        if e > order {
            break;
        }
        map.entry(e.steps())
            .or_insert_with(ZPolynomial::zero)
            .add_term(0, &BigInt::from(1));
        j += 1;
    }
    QSeries::from_map(map, order)
}

/// The full correction `theta_plus(scale) - theta_minus(scale)` appearing on
/// the expanded Hecke-Rogers side.
pub fn theta_correction_sums(scale: i64, order: HalfExp) -> QSeries {
    theta_plus(scale, order).sub(&theta_minus(scale, order))
}
