//! Bailey pairs, conjugate Bailey pairs, the Bailey transform, and the chain
//! step, together with the specific pairs that drive the identity catalog.
//!
//! A pair of sequences `(alpha_n, beta_n)` is a Bailey pair relative to `a`
//! when `beta_n = sum_{r=0}^{n} alpha_r / ((q;q)_{n-r} (aq;q)_{n+r})`, and
//! `(delta_n, gamma_n)` is a conjugate Bailey pair relative to `a` when
//! `gamma_n = sum_{r>=n} delta_r / ((q;q)_{r-n} (aq;q)_{r+n})`. Combining one
//! of each with the same relative parameter gives the Bailey transform
//! `sum alpha_n gamma_n = sum beta_n delta_n`.
//!
//! Sequence builders are lazy and memoized per `(n, order)`. The caches sit
//! behind mutexes, so pairs are safe to share across verification workers;
//! concurrent misses may duplicate a computation but never corrupt it.
//!
//! Every infinite sum here is cut using an explicit per-pair order floor
//! (a certified lower bound on the q-order of the n-th term). The floors are
//! exact for the built-in pairs, and the tests check that the first several
//! terms past each cut are zero below the truncation order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::qproducts::{finite_poch, finite_poch_inv, infinite_poch};
use crate::report::VerificationReport;
use crate::series::{Comparison, HalfExp, Monomial, QSeries, ZPolynomial};

type SeqBuilder = Arc<dyn Fn(u32, HalfExp) -> QSeries + Send + Sync>;
type FloorFn = Arc<dyn Fn(u32) -> HalfExp + Send + Sync>;
type Cache = Arc<Mutex<HashMap<(u32, i64), QSeries>>>;

/// Extra half-steps of working precision used when summing sequences whose
/// terms can dip slightly below q^0 (the half-grid pairs reach q^{-1/2}).
const SLACK: HalfExp = HalfExp::int(1);

fn cached(cache: &Cache, builder: &SeqBuilder, n: u32, order: HalfExp) -> QSeries {
    let key = (n, order.steps());
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let value = builder(n, order);
    debug_assert!(value.trunc_order() >= order);
    cache
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(value)
        .clone()
}

/// A Bailey pair relative to `rel`, with lazily evaluated, memoized terms.
#[derive(Clone)]
pub struct BaileyPair {
    rel: Monomial,
    alpha: SeqBuilder,
    beta: SeqBuilder,
    alpha_floor: FloorFn,
    alpha_cache: Cache,
    beta_cache: Cache,
}

impl BaileyPair {
    /// Builds a pair from raw sequence closures. `alpha_floor(n)` must be a
    /// lower bound on the q-order of `alpha_n` that grows without bound.
    pub fn new(
        rel: Monomial,
        alpha: impl Fn(u32, HalfExp) -> QSeries + Send + Sync + 'static,
        beta: impl Fn(u32, HalfExp) -> QSeries + Send + Sync + 'static,
        alpha_floor: impl Fn(u32) -> HalfExp + Send + Sync + 'static,
    ) -> Self {
        BaileyPair {
            rel,
            alpha: Arc::new(alpha),
            beta: Arc::new(beta),
            alpha_floor: Arc::new(alpha_floor),
            alpha_cache: Arc::new(Mutex::new(HashMap::new())),
            beta_cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn rel(&self) -> &Monomial {
        &self.rel
    }

    pub fn alpha(&self, n: u32, order: HalfExp) -> QSeries {
        cached(&self.alpha_cache, &self.alpha, n, order)
    }

    pub fn beta(&self, n: u32, order: HalfExp) -> QSeries {
        cached(&self.beta_cache, &self.beta, n, order)
    }

    pub fn alpha_order_floor(&self, n: u32) -> HalfExp {
        (self.alpha_floor)(n)
    }
}

impl std::fmt::Debug for BaileyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BaileyPair(rel = {})", self.rel)
    }
}

/// A conjugate Bailey pair relative to `rel`.
#[derive(Clone)]
pub struct ConjugateBaileyPair {
    rel: Monomial,
    delta: SeqBuilder,
    gamma: SeqBuilder,
    delta_floor: FloorFn,
    delta_cache: Cache,
    gamma_cache: Cache,
}

impl ConjugateBaileyPair {
    pub fn new(
        rel: Monomial,
        delta: impl Fn(u32, HalfExp) -> QSeries + Send + Sync + 'static,
        gamma: impl Fn(u32, HalfExp) -> QSeries + Send + Sync + 'static,
        delta_floor: impl Fn(u32) -> HalfExp + Send + Sync + 'static,
    ) -> Self {
        ConjugateBaileyPair {
            rel,
            delta: Arc::new(delta),
            gamma: Arc::new(gamma),
            delta_floor: Arc::new(delta_floor),
            delta_cache: Arc::new(Mutex::new(HashMap::new())),
            gamma_cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn rel(&self) -> &Monomial {
        &self.rel
    }

    pub fn delta(&self, n: u32, order: HalfExp) -> QSeries {
        cached(&self.delta_cache, &self.delta, n, order)
    }

    pub fn gamma(&self, n: u32, order: HalfExp) -> QSeries {
        cached(&self.gamma_cache, &self.gamma, n, order)
    }

    pub fn delta_order_floor(&self, n: u32) -> HalfExp {
        (self.delta_floor)(n)
    }
}

impl std::fmt::Debug for ConjugateBaileyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ConjugateBaileyPair(rel = {})", self.rel)
    }
}

// ---------------------------------------------------------------------------
// Defining-relation verification
// ---------------------------------------------------------------------------

fn q1() -> HalfExp {
    HalfExp::int(1)
}

/// Indices `0..` while `floor(n) <= limit`, with a hard cap as a backstop
/// against a floor that fails to grow.
fn indices_below(floor: impl Fn(u32) -> HalfExp, limit: HalfExp) -> Vec<u32> {
    let cap = 8 * (limit.steps().max(2) as u32);
    let mut out = Vec::new();
    for n in 0..=cap {
        if floor(n) <= limit {
            out.push(n);
        } else {
            break;
        }
    }
    out
}

/// The defining sum `sum_{r=0}^{n} alpha_r / ((q;q)_{n-r} (rel q;q)_{n+r})`.
pub fn bailey_defining_sum(pair: &BaileyPair, n: u32, order: HalfExp) -> QSeries {
    let relq = pair.rel.mul(&Monomial::q());
    let mut acc = QSeries::zero(order);
    for r in 0..=n {
        let alpha = pair.alpha(r, order);
        let term = alpha
            .mul(&finite_poch_inv(&Monomial::q(), q1(), i64::from(n - r), order))
            .mul(&finite_poch_inv(&relq, q1(), i64::from(n + r), order));
        acc = acc.add(&term);
    }
    acc
}

/// Checks the Bailey pair defining relation for every `n <= n_max` at the
/// given order. Reports the first failing index.
pub fn verify_bailey_pair(pair: &BaileyPair, n_max: u32, order: HalfExp) -> VerificationReport {
    let start = Instant::now();
    let work = order + SLACK;
    let mut report = VerificationReport::new("bailey-pair-defining-relation", order);
    for n in 0..=n_max {
        let beta = pair.beta(n, work);
        let sum = bailey_defining_sum(pair, n, work);
        report.lhs_terms += beta.term_count();
        report.rhs_terms += sum.term_count();
        match beta.equal_up_to(&sum, order).expect("enough working order") {
            Comparison::Equal => {}
            Comparison::Mismatch(m) => {
                report = report.with_comparison(Comparison::Mismatch(m));
                report.failing_index = Some(n);
                break;
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

/// The truncated conjugate defining sum
/// `sum_{r=n}^{R} delta_r / ((q;q)_{r-n} (rel q;q)_{r+n})`, with `R` chosen
/// from the delta order floor so that omitted terms sit above the order.
pub fn conjugate_defining_sum(c: &ConjugateBaileyPair, n: u32, order: HalfExp) -> QSeries {
    let relq = c.rel.mul(&Monomial::q());
    let mut acc = QSeries::zero(order);
    for r in indices_below(|r| c.delta_order_floor(r), order + SLACK) {
        if r < n {
            continue;
        }
        let delta = c.delta(r, order);
        let term = delta
            .mul(&finite_poch_inv(&Monomial::q(), q1(), i64::from(r - n), order))
            .mul(&finite_poch_inv(&relq, q1(), i64::from(r + n), order));
        acc = acc.add(&term);
    }
    acc
}

/// Checks the conjugate-pair defining relation for every `n <= n_max`.
pub fn verify_conjugate_pair(
    c: &ConjugateBaileyPair,
    n_max: u32,
    order: HalfExp,
) -> VerificationReport {
    let start = Instant::now();
    let work = order + SLACK;
    let mut report = VerificationReport::new("conjugate-pair-defining-relation", order);
    for n in 0..=n_max {
        let gamma = c.gamma(n, work);
        let sum = conjugate_defining_sum(c, n, work);
        report.lhs_terms += gamma.term_count();
        report.rhs_terms += sum.term_count();
        match gamma.equal_up_to(&sum, order).expect("enough working order") {
            Comparison::Equal => {}
            Comparison::Mismatch(m) => {
                report = report.with_comparison(Comparison::Mismatch(m));
                report.failing_index = Some(n);
                break;
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

// ---------------------------------------------------------------------------
// Bailey transform
// ---------------------------------------------------------------------------

/// `sum_n alpha_n gamma_n`, cut where the alpha order floor passes the order.
pub fn transform_alpha_gamma_sum(
    pair: &BaileyPair,
    c: &ConjugateBaileyPair,
    order: HalfExp,
) -> QSeries {
    let work = order + SLACK;
    let mut acc = QSeries::zero(order);
    for n in indices_below(|n| pair.alpha_order_floor(n), order + SLACK) {
        let term = pair.alpha(n, work).mul(&c.gamma(n, work));
        acc = acc.add(&term.truncated(order));
    }
    acc
}

/// `sum_n beta_n delta_n`, cut where the delta order floor passes the order.
pub fn transform_beta_delta_sum(
    pair: &BaileyPair,
    c: &ConjugateBaileyPair,
    order: HalfExp,
) -> QSeries {
    let work = order + SLACK;
    let mut acc = QSeries::zero(order);
    for n in indices_below(|n| c.delta_order_floor(n), order + SLACK) {
        let term = pair.beta(n, work).mul(&c.delta(n, work));
        acc = acc.add(&term.truncated(order));
    }
    acc
}

/// Checks the Bailey transform `sum alpha_n gamma_n = sum beta_n delta_n`
/// for a pair and a conjugate pair of the same relative parameter.
pub fn bailey_transform_check(
    pair: &BaileyPair,
    c: &ConjugateBaileyPair,
    order: HalfExp,
) -> Result<VerificationReport> {
    if pair.rel != c.rel {
        return Err(Error::RelMismatch {
            left: pair.rel.to_string(),
            right: c.rel.to_string(),
        });
    }
    let start = Instant::now();
    let (lhs, rhs) = crate::exec::join(
        || transform_alpha_gamma_sum(pair, c, order),
        || transform_beta_delta_sum(pair, c, order),
    );
    let cmp = lhs.equal_up_to(&rhs, order)?;
    let mut report = VerificationReport::new("bailey-transform", order).with_comparison(cmp);
    report.lhs_terms = lhs.term_count();
    report.rhs_terms = rhs.term_count();
    report.elapsed = start.elapsed();
    Ok(report)
}

// ---------------------------------------------------------------------------
// Chain step
// ---------------------------------------------------------------------------

/// One step along the Bailey chain:
/// `alpha'_n = a^n q^{n^2} alpha_n`,
/// `beta'_n = sum_{j=0}^{n} a^j q^{j^2} beta_j / (q;q)_{n-j}`.
///
/// Only the special case `a = rel` is supported — it is the only one the
/// catalog iterates — and the order floor advances by `n * ord_q(a) + n^2`.
pub fn chain_step(pair: &BaileyPair, a: &Monomial) -> Result<BaileyPair> {
    if a != &pair.rel {
        return Err(Error::RelMismatch {
            left: a.to_string(),
            right: pair.rel.to_string(),
        });
    }
    let parent = pair.clone();
    let a = a.clone();
    let a_alpha = a.clone();
    let a_q = a.q_exp();
    let parent_beta = pair.clone();
    let floor_parent = pair.alpha_floor.clone();

    let alpha = move |n: u32, order: HalfExp| {
        let ni = i64::from(n);
        let shift = a_alpha.pow(n).mul(&Monomial::q_pow(HalfExp::int(ni * ni)));
        let inner = order - shift.q_exp();
        parent.alpha(n, inner).mul_monomial(&shift)
    };
    let beta = move |n: u32, order: HalfExp| {
        let mut acc = QSeries::zero(order);
        for j in 0..=n {
            let ji = i64::from(j);
            let shift = a.pow(j).mul(&Monomial::q_pow(HalfExp::int(ji * ji)));
            if shift.q_exp() > order {
                continue;
            }
            let inner = order - shift.q_exp() + SLACK;
            let term = parent_beta
                .beta(j, inner)
                .mul(&finite_poch_inv(&Monomial::q(), q1(), i64::from(n - j), inner))
                .mul_monomial(&shift);
            acc = acc.add(&term.truncated(order));
        }
        acc
    };
    let floor = move |n: u32| {
        let ni = i64::from(n);
        floor_parent(n) + a_q.times(ni) + HalfExp::int(ni * ni)
    };
    Ok(BaileyPair::new(pair.rel.clone(), alpha, beta, floor))
}

// ---------------------------------------------------------------------------
// Built-in pairs
// ---------------------------------------------------------------------------

fn neg_pow(n: u32) -> BigInt {
    if n % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// `sign * q^{shift} * sum_{i=0}^{count-1} q^{i*step}` delivered at `order`.
fn shifted_geometric(
    sign: BigInt,
    shift: HalfExp,
    step: HalfExp,
    count: u64,
    order: HalfExp,
) -> QSeries {
    let inner = order - shift;
    if inner < HalfExp::ZERO {
        return QSeries::zero(order);
    }
    QSeries::geometric_sum(step, count, inner)
        .mul_monomial(&Monomial::new(sign, 0, shift))
}

/// The Bailey pair relative to `q` behind the R(z;q) identities:
/// `alpha_{3n} = q^{(3n-2)n} (1-q^{6n+1})/(1-q)`, `alpha_{3n+1} = 0`,
/// `alpha_{3n+2} = -q^{(3n+2)n} (1-q^{6n+5})/(1-q)`,
/// `beta_n = q^{n(n-1)} / (q;q)_{2n}`.
pub fn pair_slater_a() -> BaileyPair {
    let alpha = |n: u32, order: HalfExp| {
        let ni = i64::from(n);
        match n % 3 {
            0 => {
                let m = ni / 3;
                shifted_geometric(
                    BigInt::from(1),
                    HalfExp::int((3 * m - 2) * m),
                    q1(),
                    (6 * m + 1) as u64,
                    order,
                )
            }
            1 => QSeries::zero(order),
            _ => {
                let m = (ni - 2) / 3;
                shifted_geometric(
                    BigInt::from(-1),
                    HalfExp::int((3 * m + 2) * m),
                    q1(),
                    (6 * m + 5) as u64,
                    order,
                )
            }
        }
    };
    let beta = |n: u32, order: HalfExp| {
        let ni = i64::from(n);
        let shift = HalfExp::int(ni * (ni - 1));
        let inner = order - shift;
        finite_poch_inv(&Monomial::q(), q1(), 2 * ni, inner)
            .mul_monomial(&Monomial::q_pow(shift))
    };
    let floor = |n: u32| {
        let ni = i64::from(n);
        HalfExp::int((ni * ni - 2 * ni).div_euclid(3))
    };
    BaileyPair::new(Monomial::q(), alpha, beta, floor)
}

/// The Bailey pair relative to `q^2` behind the g2(z;q) identities:
/// `alpha_{2n} = (-1)^n q^{n^2-n} (1-q^{4n+2})/(1-q^2)`, `alpha_{2n+1} = 0`,
/// `beta_n = (-q;q)_n q^{n(n-1)/2} / (q^2;q)_{2n}`.
pub fn pair_slater_b() -> BaileyPair {
    let alpha = |n: u32, order: HalfExp| {
        if n % 2 == 1 {
            return QSeries::zero(order);
        }
        let m = i64::from(n) / 2;
        shifted_geometric(
            neg_pow((n / 2) % 2),
            HalfExp::int(m * m - m),
            HalfExp::int(2),
            (2 * m + 1) as u64,
            order,
        )
    };
    let beta = |n: u32, order: HalfExp| {
        let ni = i64::from(n);
        let shift = HalfExp::int(ni * (ni - 1) / 2);
        let inner = order - shift;
        if inner < HalfExp::ZERO {
            return QSeries::zero(order);
        }
        finite_poch(&Monomial::new(-1, 0, q1()), q1(), ni, inner)
            .mul(&finite_poch_inv(
                &Monomial::q_pow(HalfExp::int(2)),
                q1(),
                2 * ni,
                inner,
            ))
            .mul_monomial(&Monomial::q_pow(shift))
    };
    let floor = |n: u32| {
        let ni = i64::from(n);
        HalfExp::int((ni * ni - 2 * ni).div_euclid(4))
    };
    BaileyPair::new(Monomial::q_pow(HalfExp::int(2)), alpha, beta, floor)
}

/// The half-grid Bailey pair relative to `q` behind the K(z;q) identities:
/// `alpha_n = (-1)^n q^{(n^2-3n)/4} (1-q^{2n+1})/(1-q)`,
/// `beta_n = (-1)^n q^{n^2/2-n} (q^{1/2};q)_n / (q;q)_{2n}`.
pub fn pair_slater_c() -> BaileyPair {
    let alpha = |n: u32, order: HalfExp| {
        let ni = i64::from(n);
        shifted_geometric(
            neg_pow(n),
            HalfExp::half_steps((ni * ni - 3 * ni) / 2),
            q1(),
            (2 * ni + 1) as u64,
            order,
        )
    };
    let beta = |n: u32, order: HalfExp| {
        let ni = i64::from(n);
        let shift = HalfExp::half_steps(ni * ni - 2 * ni);
        let inner = order - shift;
        if inner < HalfExp::ZERO {
            return QSeries::zero(order);
        }
        finite_poch(&Monomial::q_pow(HalfExp::half_steps(1)), q1(), ni, inner)
            .mul(&finite_poch_inv(&Monomial::q(), q1(), 2 * ni, inner))
            .mul_monomial(&Monomial::new(neg_pow(n), 0, shift))
    };
    let floor = |n: u32| {
        let ni = i64::from(n);
        HalfExp::half_steps((ni * ni - 3 * ni) / 2)
    };
    BaileyPair::new(Monomial::q(), alpha, beta, floor)
}

// ---------------------------------------------------------------------------
// Iterated families
// ---------------------------------------------------------------------------

/// Which family of iterated pairs (one per base pair).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A,
    B,
    C,
}

fn check_k(k: u32) -> Result<i64> {
    if k < 2 {
        return Err(Error::InvalidK(k));
    }
    Ok(i64::from(k))
}

/// Per-family data for the nested beta multi-sum
/// `beta^(k)_n = sum_{n_1..n_{k-1}} weight / ((q;q)_{n-N_1} (q;q)_{n_1} ...
/// (q;q)_{n_{k-2}} * last_den)`, enumerated over the suffix sums
/// `N_1 >= N_2 >= ... >= N_{k-1} >= 0`, `N_1 <= n`.
struct MultiSum {
    /// exponent contribution of an interior suffix sum N_j, j <= k-2
    interior: fn(i64) -> HalfExp,
    /// exponent contribution of the innermost suffix sum N_{k-1}
    innermost: fn(i64) -> HalfExp,
    /// numerator factor attached to n_{k-1} = N_{k-1}
    innermost_factor: fn(i64, HalfExp) -> QSeries,
    /// denominator factor attached to n_{k-1}
    innermost_den_inv: fn(i64, HalfExp) -> QSeries,
}

fn family_tables(which: Family) -> MultiSum {
    match which {
        Family::A => MultiSum {
            interior: |n| HalfExp::int(n * n + n),
            innermost: |n| HalfExp::int(2 * n * n),
            innermost_factor: |_, order| QSeries::one(order),
            innermost_den_inv: |n, order| finite_poch_inv(&Monomial::q(), q1(), 2 * n, order),
        },
        Family::B => MultiSum {
            interior: |n| HalfExp::int(n * n + 2 * n),
            innermost: |n| HalfExp::half_steps(3 * n * n + 3 * n),
            innermost_factor: |n, order| {
                finite_poch(&Monomial::new(-1, 0, q1()), q1(), n, order)
            },
            innermost_den_inv: |n, order| {
                finite_poch_inv(&Monomial::q_pow(HalfExp::int(2)), q1(), 2 * n, order)
            },
        },
        Family::C => MultiSum {
            interior: |n| HalfExp::int(n * n + n),
            innermost: |n| HalfExp::half_steps(3 * n * n),
            innermost_factor: |n, order| {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                finite_poch(&Monomial::q_pow(HalfExp::half_steps(1)), q1(), n, order)
                    .mul(&QSeries::constant(
                        ZPolynomial::constant(BigInt::from(sign)),
                        order,
                    ))
            },
            innermost_den_inv: |n, order| finite_poch_inv(&Monomial::q(), q1(), 2 * n, order),
        },
    }
}

/// Evaluates the (k-1)-fold nested beta multi-sum for one of the families,
/// pruning tuples as soon as the accumulated exponent passes the order.
fn family_beta(which: Family, k: i64, n: u32, order: HalfExp) -> QSeries {
    let tables = family_tables(which);
    let ni = i64::from(n);
    let mut acc = QSeries::zero(order);
    // suffix sums, innermost first: ns[0] = N_{k-1}, ..., ns[k-2] = N_1
    let mut stack: Vec<(Vec<i64>, HalfExp)> = vec![(Vec::new(), HalfExp::ZERO)];
    while let Some((ns, exp)) = stack.pop() {
        let depth = ns.len() as i64;
        if depth == k - 1 {
            let n1 = *ns.last().unwrap_or(&0);
            if n1 > ni {
                continue;
            }
            let inner = order - exp + SLACK;
            let mut term = (tables.innermost_factor)(ns[0], inner)
                .mul(&(tables.innermost_den_inv)(ns[0], inner))
                .mul(&finite_poch_inv(&Monomial::q(), q1(), ni - n1, inner));
            for w in ns.windows(2) {
                term = term.mul(&finite_poch_inv(&Monomial::q(), q1(), w[1] - w[0], inner));
            }
            let shifted = term.mul_monomial(&Monomial::q_pow(exp));
            acc = acc.add(&shifted.truncated(order));
            continue;
        }
        let lower = *ns.last().unwrap_or(&0);
        let contribution = if depth == 0 {
            tables.innermost
        } else {
            tables.interior
        };
        let mut value = lower;
        loop {
            let e = exp + contribution(value);
            if e > order || value > ni {
                break;
            }
            let mut next = ns.clone();
            next.push(value);
            stack.push((next, e));
            value += 1;
        }
    }
    acc
}

/// The k-th iterate of [`pair_slater_a`] in closed form (relative to `q`).
pub fn pair_family_a(k: u32) -> Result<BaileyPair> {
    let ki = check_k(k)?;
    let alpha = move |n: u32, order: HalfExp| {
        let ni = i64::from(n);
        match n % 3 {
            0 => {
                let m = ni / 3;
                shifted_geometric(
                    BigInt::from(1),
                    HalfExp::int(3 * (3 * ki - 2) * m * m + (3 * ki - 5) * m),
                    q1(),
                    (6 * m + 1) as u64,
                    order,
                )
            }
            1 => QSeries::zero(order),
            _ => {
                let m = (ni - 2) / 3;
                shifted_geometric(
                    BigInt::from(-1),
                    HalfExp::int(3 * (3 * ki - 2) * m * m + (15 * ki - 13) * m + 6 * (ki - 1)),
                    q1(),
                    (6 * m + 5) as u64,
                    order,
                )
            }
        }
    };
    let beta = move |n: u32, order: HalfExp| family_beta(Family::A, ki, n, order);
    let floor = move |n: u32| {
        let ni = i64::from(n);
        match n % 3 {
            0 | 1 => {
                let m = ni / 3;
                HalfExp::int(3 * (3 * ki - 2) * m * m + (3 * ki - 5) * m)
            }
            _ => {
                let m = (ni - 2) / 3;
                HalfExp::int(3 * (3 * ki - 2) * m * m + (15 * ki - 13) * m + 6 * (ki - 1))
            }
        }
    };
    Ok(BaileyPair::new(Monomial::q(), alpha, beta, floor))
}

/// The k-th iterate of [`pair_slater_b`] in closed form (relative to `q^2`).
pub fn pair_family_b(k: u32) -> Result<BaileyPair> {
    let ki = check_k(k)?;
    let alpha = move |n: u32, order: HalfExp| {
        if n % 2 == 1 {
            return QSeries::zero(order);
        }
        let m = i64::from(n) / 2;
        shifted_geometric(
            neg_pow((n / 2) % 2),
            HalfExp::int((4 * ki - 3) * m * m + (4 * ki - 5) * m),
            HalfExp::int(2),
            (2 * m + 1) as u64,
            order,
        )
    };
    let beta = move |n: u32, order: HalfExp| family_beta(Family::B, ki, n, order);
    let floor = move |n: u32| {
        let m = i64::from(n) / 2;
        HalfExp::int((4 * ki - 3) * m * m + (4 * ki - 5) * m)
    };
    Ok(BaileyPair::new(
        Monomial::q_pow(HalfExp::int(2)),
        alpha,
        beta,
        floor,
    ))
}

/// The k-th iterate of [`pair_slater_c`] in closed form (relative to `q`).
pub fn pair_family_c(k: u32) -> Result<BaileyPair> {
    let ki = check_k(k)?;
    let alpha = move |n: u32, order: HalfExp| {
        let ni = i64::from(n);
        shifted_geometric(
            neg_pow(n),
            HalfExp::half_steps(((4 * ki - 3) * ni * ni + (4 * ki - 7) * ni) / 2),
            q1(),
            (2 * ni + 1) as u64,
            order,
        )
    };
    let beta = move |n: u32, order: HalfExp| family_beta(Family::C, ki, n, order);
    let floor = move |n: u32| {
        let ni = i64::from(n);
        HalfExp::half_steps(((4 * ki - 3) * ni * ni + (4 * ki - 7) * ni) / 2)
    };
    Ok(BaileyPair::new(Monomial::q(), alpha, beta, floor))
}

// ---------------------------------------------------------------------------
// Warnaar's conjugate pair
// ---------------------------------------------------------------------------

/// The conjugate Bailey pair relative to `ab` built from the generalized
/// triple product:
/// `delta_n = (aq, b, q;q)_inf (ab;q)_{2n} q^n / ((aq;q)_n (b;q)_n)`,
/// `gamma_n = (1-ab) q^n / (1-ab q^{2n}) *
///            (1 + sum_{r>=1} (-1)^r q^{r(r-1)/2} ((a q^{n+1})^r + (b q^n)^r))`.
///
/// Requires `aq`, `b`, `abq` and `ab` to have q-order >= 1/2, which both
/// catalog instances `(a,b) = (z, z^{-1}q)` and `(z^{-1}q, zq)` satisfy.
pub fn warnaar_conjugate_pair(a: &Monomial, b: &Monomial) -> Result<ConjugateBaileyPair> {
    let half = HalfExp::half_steps(1);
    let aq = a.mul(&Monomial::q());
    let ab = a.mul(b);
    for (name, m) in [("a*q", &aq), ("b", b), ("a*b", &ab)] {
        if m.q_exp() < half {
            return Err(Error::Precondition(format!(
                "conjugate pair parameter {name} = {m} must have q-order >= 1/2"
            )));
        }
    }

    let prefactor_cache: Arc<Mutex<HashMap<i64, QSeries>>> = Arc::new(Mutex::new(HashMap::new()));
    let (aq_d, b_d, ab_d) = (aq.clone(), b.clone(), ab.clone());
    let delta = move |n: u32, order: HalfExp| {
        let ni = i64::from(n);
        let prefactor = {
            let mut cache = prefactor_cache.lock().unwrap();
            cache
                .entry(order.steps())
                .or_insert_with(|| {
                    infinite_poch(&aq_d, q1(), order)
                        .mul(&infinite_poch(&b_d, q1(), order))
                        .mul(&infinite_poch(&Monomial::q(), q1(), order))
                })
                .clone()
        };
        prefactor
            .mul(&finite_poch(&ab_d, q1(), 2 * ni, order))
            .mul(&finite_poch_inv(&aq_d, q1(), ni, order))
            .mul(&finite_poch_inv(&b_d, q1(), ni, order))
            .mul_monomial(&Monomial::q_pow(HalfExp::int(ni)))
            .truncated(order)
    };

    let (a_g, b_g, ab_g) = (a.clone(), b.clone(), ab.clone());
    let gamma = move |n: u32, order: HalfExp| {
        let ni = i64::from(n);
        let mut bracket: Vec<(HalfExp, ZPolynomial)> =
            vec![(HalfExp::ZERO, ZPolynomial::one())];
        let a_shift = a_g.mul(&Monomial::q_pow(HalfExp::int(ni + 1)));
        let b_shift = b_g.mul(&Monomial::q_pow(HalfExp::int(ni)));
        let mut r: u32 = 1;
        loop {
            let ri = i64::from(r);
            let binom = HalfExp::int(ri * (ri - 1) / 2);
            let a_pow = a_shift.pow(r);
            let b_pow = b_shift.pow(r);
            if binom + a_pow.q_exp().min(b_pow.q_exp()) > order {
                break;
            }
            for m in [a_pow, b_pow] {
                let m = if r % 2 == 0 { m } else { m.neg() };
                bracket.push((binom + m.q_exp(), m.z_part()));
            }
            r += 1;
        }
        let bracket = QSeries::from_terms_truncating(bracket, order);
        let ab2n = ab_g.mul(&Monomial::q_pow(HalfExp::int(2 * ni)));
        QSeries::one_minus(&ab_g, order)
            .mul(
                &QSeries::one_minus(&ab2n, order)
                    .invert_unit()
                    .expect("1 - ab q^{2n} is a unit for ab of positive q-order"),
            )
            .mul(&bracket)
            .mul_monomial(&Monomial::q_pow(HalfExp::int(ni)))
            .truncated(order)
    };

    Ok(ConjugateBaileyPair::new(
        ab,
        delta,
        gamma,
        |n| HalfExp::int(i64::from(n)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: i64) -> HalfExp {
        HalfExp::int(n)
    }

    #[test]
    fn slater_a_low_terms() {
        let p = pair_slater_a();
        // alpha_0 = 1, alpha_1 = 0
        assert_eq!(p.alpha(0, ord(10)), QSeries::one(ord(10)));
        assert!(p.alpha(1, ord(10)).is_zero());
        // beta_0 = 1
        assert_eq!(p.beta(0, ord(10)), QSeries::one(ord(10)));
    }

    #[test]
    fn slater_b_low_terms() {
        let p = pair_slater_b();
        assert_eq!(p.alpha(0, ord(10)), QSeries::one(ord(10)));
        assert_eq!(p.beta(0, ord(10)), QSeries::one(ord(10)));
        assert!(p.alpha(1, ord(10)).is_zero());
        // alpha_2 = -(1 + q^2 + q^4)
        let a2 = p.alpha(2, ord(10));
        let expect = QSeries::make(
            [
                (ord(0), -ZPolynomial::one()),
                (ord(2), -ZPolynomial::one()),
                (ord(4), -ZPolynomial::one()),
            ],
            ord(10),
        )
        .unwrap();
        assert_eq!(a2, expect);
    }

    #[test]
    fn slater_c_low_terms() {
        let p = pair_slater_c();
        // alpha_1 = -q^{-1/2} (1 + q + q^2), lowest exponent -1/2
        let a1 = p.alpha(1, ord(10));
        assert_eq!(a1.min_exp(), HalfExp::half_steps(-1));
        let expect = QSeries::make(
            [
                (HalfExp::half_steps(-1), -ZPolynomial::one()),
                (HalfExp::half_steps(1), -ZPolynomial::one()),
                (HalfExp::half_steps(3), -ZPolynomial::one()),
            ],
            ord(10),
        )
        .unwrap();
        assert_eq!(a1, expect);
        // beta_1 lowest exponent is also -1/2
        assert_eq!(p.beta(1, ord(10)).min_exp(), HalfExp::half_steps(-1));
    }

    #[test]
    fn defining_relation_small() {
        for pair in [pair_slater_a(), pair_slater_b(), pair_slater_c()] {
            let report = verify_bailey_pair(&pair, 5, ord(15));
            assert!(report.passed(), "{}", report.text_line());
        }
    }

    #[test]
    fn chain_alpha_formula_and_unit_beta() {
        // chain of pair A: alpha'_{3n} = q^{12n^2+n} (1-q^{6n+1})/(1-q)
        let chained = chain_step(&pair_slater_a(), &Monomial::q()).unwrap();
        let direct = pair_family_a(2).unwrap();
        for n in 0..=7 {
            assert_eq!(
                chained.alpha(n, ord(25)),
                direct.alpha(n, ord(25)),
                "alpha mismatch at n={n}"
            );
        }
        // alpha'_0 = alpha_0 for any pair
        assert_eq!(chained.alpha(0, ord(25)), pair_slater_a().alpha(0, ord(25)));

        // delta-sequence input: beta_j = [j=0] gives beta'_n = 1/(q;q)_n
        let unit = BaileyPair::new(
            Monomial::q(),
            |n, order| {
                if n == 0 {
                    QSeries::one(order)
                } else {
                    QSeries::zero(order)
                }
            },
            |n, order| {
                if n == 0 {
                    QSeries::one(order)
                } else {
                    QSeries::zero(order)
                }
            },
            |n| HalfExp::int(i64::from(n)),
        );
        let chained = chain_step(&unit, &Monomial::q()).unwrap();
        for n in 0..=4 {
            assert_eq!(
                chained.beta(n, ord(12)),
                finite_poch_inv(&Monomial::q(), HalfExp::int(1), i64::from(n), ord(12)),
                "beta' at n={n}"
            );
        }
    }

    #[test]
    fn chain_requires_matching_parameter() {
        let err = chain_step(&pair_slater_b(), &Monomial::q()).unwrap_err();
        assert!(matches!(err, Error::RelMismatch { .. }));
    }

    #[test]
    fn family_k_validation() {
        assert!(matches!(pair_family_a(1), Err(Error::InvalidK(1))));
        assert!(pair_family_a(2).is_ok());
    }

    #[test]
    fn family_c_alpha_k2() {
        // alpha^{(2)}_n = (-1)^n q^{(5n^2+n)/4} (1-q^{2n+1})/(1-q)
        let p = pair_family_c(2).unwrap();
        let a1 = p.alpha(1, ord(12));
        assert_eq!(a1.min_exp(), HalfExp::half_steps(3)); // (5+1)/4 = 3/2
        let expect = shifted_geometric(
            BigInt::from(-1),
            HalfExp::half_steps(3),
            HalfExp::int(1),
            3,
            ord(12),
        );
        assert_eq!(a1, expect);
    }

    #[test]
    fn warnaar_pair_rel_and_gamma_constant() {
        let z = Monomial::z();
        let z_inv_q = Monomial::zq(-1, ord(1));
        let c = warnaar_conjugate_pair(&z, &z_inv_q).unwrap();
        assert_eq!(c.rel(), &Monomial::q());
        // gamma_0's q^0 coefficient is 1 (from the leading 1 of the bracket)
        let g0 = c.gamma(0, ord(8));
        assert_eq!(g0.coeff(HalfExp::ZERO), ZPolynomial::one());

        let c2 = warnaar_conjugate_pair(&z_inv_q, &Monomial::zq(1, ord(1))).unwrap();
        assert_eq!(c2.rel(), &Monomial::q_pow(ord(2)));

        assert!(warnaar_conjugate_pair(&z, &Monomial::z_pow(-1)).is_err());
    }

    #[test]
    fn memoized_builders_are_consistent_across_threads() {
        let pair = pair_slater_a();
        let baseline = pair.beta(6, ord(20));
        let values = crate::exec::map_collect((0..16).collect::<Vec<i32>>(), |_| {
            pair.beta(6, ord(20))
        });
        for v in values {
            assert_eq!(v, baseline);
        }
    }
}
