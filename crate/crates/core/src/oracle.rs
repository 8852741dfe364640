//! A deliberately naive reference implementation used by the test suite to
//! cross-check the kernel: dense schoolbook arithmetic over a fixed
//! rectangular (q, z) grid, direct nested-loop sums with oversized cutoffs.
//!
//! Independence is the point. This module shares nothing with the kernel
//! beyond the bignum type: no `QSeries`, no truncation-order bookkeeping, no
//! certified enumeration bounds. It is single-threaded, slow on purpose, and
//! meant for small orders (up to roughly 40 half-steps bivariate; more when
//! z-free).

use num_bigint::BigInt;
use num_traits::Zero;

/// A dense series over the rectangle
/// `q half-steps in [-q_range, q_range]` x `z exponents in [-z_range, z_range]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSeries {
    q_range: i64,
    z_range: i64,
    data: Vec<BigInt>,
}

impl DenseSeries {
    pub fn zero(q_range: i64, z_range: i64) -> Self {
        assert!(q_range >= 0 && z_range >= 0);
        let rows = (2 * q_range + 1) as usize;
        let cols = (2 * z_range + 1) as usize;
        DenseSeries {
            q_range,
            z_range,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn one(q_range: i64, z_range: i64) -> Self {
        let mut s = DenseSeries::zero(q_range, z_range);
        s.add_term(0, 0, &BigInt::from(1));
        s
    }

    pub fn q_range(&self) -> i64 {
        self.q_range
    }

    pub fn z_range(&self) -> i64 {
        self.z_range
    }

    fn index(&self, q_steps: i64, z: i64) -> usize {
        assert!(
            q_steps.abs() <= self.q_range && z.abs() <= self.z_range,
            "dense bounds overflow: q_steps={q_steps} z={z} range=({}, {})",
            self.q_range,
            self.z_range
        );
        ((q_steps + self.q_range) * (2 * self.z_range + 1) + (z + self.z_range)) as usize
    }

    /// Coefficient of `q^{q_steps/2} z^z`.
    pub fn get(&self, q_steps: i64, z: i64) -> &BigInt {
        &self.data[self.index(q_steps, z)]
    }

    pub fn add_term(&mut self, q_steps: i64, z: i64, c: &BigInt) {
        let i = self.index(q_steps, z);
        self.data[i] += c;
    }

    pub fn add_assign(&mut self, other: &DenseSeries) {
        assert_eq!((self.q_range, self.z_range), (other.q_range, other.z_range));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn neg(&self) -> DenseSeries {
        DenseSeries {
            q_range: self.q_range,
            z_range: self.z_range,
            data: self.data.iter().map(|c| -c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero cells as `(q_steps, z, coeff)` triples.
    pub fn nonzero_terms(&self) -> Vec<(i64, i64, &BigInt)> {
        let mut out = Vec::new();
        for q in -self.q_range..=self.q_range {
            for z in -self.z_range..=self.z_range {
                let c = self.get(q, z);
                if !c.is_zero() {
                    out.push((q, z, c));
                }
            }
        }
        out
    }

    /// Schoolbook product over the nonzero cells. Terms that would land
    /// outside the rectangle are dropped: the caller is responsible for
    /// choosing bounds large enough that everything of interest stays inside
    /// (that is the whole contract of a fixed-grid oracle).
    pub fn mul(&self, other: &DenseSeries) -> DenseSeries {
        assert_eq!((self.q_range, self.z_range), (other.q_range, other.z_range));
        let mut out = DenseSeries::zero(self.q_range, self.z_range);
        let rhs = other.nonzero_terms();
        for (qa, za, ca) in self.nonzero_terms() {
            for &(qb, zb, cb) in &rhs {
                let (q, z) = (qa + qb, za + zb);
                if q.abs() > self.q_range || z.abs() > self.z_range {
                    continue;
                }
                let prod = ca * cb;
                out.add_term(q, z, &prod);
            }
        }
        out
    }

    /// Sum of `(c z^{ze} q^{qs/2})^i` for `i >= 0` while the q-exponent stays
    /// on the grid. Requires a strictly positive q-exponent.
    pub fn geometric(q_range: i64, z_range: i64, c: i64, ze: i64, qs: i64) -> DenseSeries {
        assert!(qs > 0, "geometric needs positive q-order");
        let mut out = DenseSeries::zero(q_range, z_range);
        let mut coeff = BigInt::from(1);
        let mut i: i64 = 0;
        while i * qs <= q_range && (i * ze).abs() <= z_range {
            out.add_term(i * qs, i * ze, &coeff);
            coeff *= c;
            i += 1;
        }
        out
    }

    /// `1 - c z^{ze} q^{qs/2}`.
    pub fn binomial(q_range: i64, z_range: i64, c: i64, ze: i64, qs: i64) -> DenseSeries {
        let mut out = DenseSeries::one(q_range, z_range);
        if qs.abs() <= q_range && ze.abs() <= z_range {
            out.add_term(qs, ze, &BigInt::from(-c));
        }
        out
    }

    /// Negates every z-exponent.
    pub fn flip_z(&self) -> DenseSeries {
        let mut out = DenseSeries::zero(self.q_range, self.z_range);
        for q in -self.q_range..=self.q_range {
            for z in -self.z_range..=self.z_range {
                let c = self.get(q, z).clone();
                if !c.is_zero() {
                    out.add_term(q, -z, &c);
                }
            }
        }
        out
    }

    /// Sums each q-row over z (the z = 1 specialization), leaving a z-free
    /// dense series.
    pub fn collapse_z(&self) -> DenseSeries {
        let mut out = DenseSeries::zero(self.q_range, 0);
        for q in -self.q_range..=self.q_range {
            let mut acc = BigInt::zero();
            for z in -self.z_range..=self.z_range {
                acc += self.get(q, z);
            }
            out.add_term(q, 0, &acc);
        }
        out
    }
}

/// Product `prod_{k=0}^{count-1} (1 - c z^{ze} q^{(qs + k*step)/2})`, all
/// exponents in half-steps. `count = None` keeps multiplying until the factor
/// exponent leaves the grid.
pub fn oracle_poch(
    q_range: i64,
    z_range: i64,
    c: i64,
    ze: i64,
    qs: i64,
    step: i64,
    count: Option<i64>,
) -> DenseSeries {
    assert!(step >= 1);
    let mut acc = DenseSeries::one(q_range, z_range);
    let mut k = 0i64;
    loop {
        if let Some(n) = count {
            if k >= n {
                break;
            }
        }
        let e = qs + k * step;
        if count.is_none() && e > q_range {
            break;
        }
        acc = acc.mul(&DenseSeries::binomial(q_range, z_range, c, ze, e));
        k += 1;
    }
    acc
}

/// Euler product `(q; q)_inf` on a z-free grid of `q_range` half-steps.
pub fn oracle_euler(q_range: i64) -> DenseSeries {
    oracle_poch(q_range, 0, 1, 0, 2, 2, None)
}

/// Direct nested-loop double sum with a hard cutoff at `4 * n_max`,
/// asserting that no term beyond `n_max` lands at or below `order_steps`.
/// All closures speak half-steps for q-exponents.
///
/// This deliberately ignores the certified bound it is asked to audit: the
/// extra sweep is how the bound gets checked.
pub fn oracle_double_sum(
    q_range: i64,
    z_range: i64,
    order_steps: i64,
    n_max: i64,
    sign: &dyn Fn(i64, i64) -> i64,
    z_exps: &dyn Fn(i64, i64) -> Vec<i64>,
    q_steps: &dyn Fn(i64, i64) -> i64,
    region: &dyn Fn(i64) -> std::ops::RangeInclusive<i64>,
) -> DenseSeries {
    let mut out = DenseSeries::zero(q_range, z_range);
    for n in 0..=4 * n_max {
        for j in region(n) {
            let e = q_steps(n, j);
            if e > order_steps {
                continue;
            }
            assert!(
                n <= n_max,
                "missed term beyond claimed bound: n={n} j={j} exponent {e}/2 <= {order_steps}/2"
            );
            let s = BigInt::from(sign(n, j));
            for ze in z_exps(n, j) {
                out.add_term(e, ze, &s);
            }
        }
    }
    out
}
