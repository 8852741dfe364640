//! Property tests for the working ring: exact ring axioms on randomized
//! inputs, unit inversion, truncation coherence over random expression
//! trees, substitution homomorphisms, and Pochhammer functional equations.

use num_bigint::BigInt;
use proptest::prelude::*;

use baileyforge::qproducts::{poch, PochSpec};
use baileyforge::series::{HalfExp, Monomial, QSeries, ZPolynomial};

const ORDER_STEPS: i64 = 40; // order 20 on the half grid

fn ord() -> HalfExp {
    HalfExp::half_steps(ORDER_STEPS)
}

/// Compares two series on everything both of them know.
fn assert_series_eq(a: &QSeries, b: &QSeries) {
    let common = a.trunc_order().min(b.trunc_order());
    let cmp = a.equal_up_to(b, common).expect("common order is available");
    assert!(
        cmp.is_equal(),
        "series differ up to {common}: {cmp:?}\n  lhs: {a}\n  rhs: {b}"
    );
}

fn arb_zpoly() -> impl Strategy<Value = ZPolynomial> {
    prop::collection::vec((-6i64..=6, -9i64..=9), 0..4).prop_map(|terms| {
        ZPolynomial::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    })
}

fn arb_series() -> impl Strategy<Value = QSeries> {
    prop::collection::vec((-4i64..=ORDER_STEPS, arb_zpoly()), 0..8).prop_map(|terms| {
        QSeries::make(
            terms
                .into_iter()
                .map(|(s, p)| (HalfExp::half_steps(s), p)),
            ord(),
        )
        .expect("exponents within order")
    })
}

/// A random series whose lowest q-coefficient is forced to `±z^e`.
fn arb_unit_series() -> impl Strategy<Value = QSeries> {
    (
        -4i64..=4,          // min exponent (half-steps)
        prop::bool::ANY,    // sign of the unit
        -5i64..=5,          // z-exponent of the unit
        prop::collection::vec((1i64..=ORDER_STEPS, arb_zpoly()), 0..6),
    )
        .prop_map(|(min, neg, e, rest)| {
            let unit = ZPolynomial::term(BigInt::from(if neg { -1 } else { 1 }), e);
            let mut terms = vec![(HalfExp::half_steps(min), unit)];
            terms.extend(
                rest.into_iter()
                    .filter(|(s, _)| min + s <= ORDER_STEPS)
                    .map(|(s, p)| (HalfExp::half_steps(min + s), p)),
            );
            QSeries::make(terms, ord()).expect("exponents within order")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn add_commutes(a in arb_series(), b in arb_series()) {
        assert_series_eq(&a.add(&b), &b.add(&a));
    }

    #[test]
    fn add_associates(a in arb_series(), b in arb_series(), c in arb_series()) {
        assert_series_eq(&a.add(&b).add(&c), &a.add(&b.add(&c)));
    }

    #[test]
    fn additive_inverse(a in arb_series()) {
        let z = a.add(&a.neg());
        prop_assert!(z.is_zero(), "a - a = {z}");
    }

    #[test]
    fn mul_commutes(a in arb_series(), b in arb_series()) {
        assert_series_eq(&a.mul(&b), &b.mul(&a));
    }

    #[test]
    fn mul_associates(a in arb_series(), b in arb_series(), c in arb_series()) {
        assert_series_eq(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_distributes(a in arb_series(), b in arb_series(), c in arb_series()) {
        assert_series_eq(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn one_is_neutral(a in arb_series()) {
        assert_series_eq(&a.mul(&QSeries::one(ord())), &a);
    }

    #[test]
    fn invert_unit_is_a_right_inverse(s in arb_unit_series()) {
        let inv = s.invert_unit().expect("constructed as a unit");
        let prod = s.mul(&inv);
        assert_series_eq(&prod, &QSeries::one(prod.trunc_order()));
    }

    #[test]
    fn subst_z_inverse_is_multiplicative(a in arb_series(), b in arb_series()) {
        assert_series_eq(
            &a.mul(&b).subst_z_inverse(),
            &a.subst_z_inverse().mul(&b.subst_z_inverse()),
        );
        assert_series_eq(
            &a.add(&b).subst_z_inverse(),
            &a.subst_z_inverse().add(&b.subst_z_inverse()),
        );
    }

    #[test]
    fn eval_z_one_is_multiplicative(a in arb_series(), b in arb_series()) {
        assert_series_eq(&a.mul(&b).eval_z_one(), &a.eval_z_one().mul(&b.eval_z_one()));
        assert_series_eq(&a.add(&b).eval_z_one(), &a.eval_z_one().add(&b.eval_z_one()));
    }

    #[test]
    fn subst_q_square_is_multiplicative(a in arb_series(), b in arb_series()) {
        assert_series_eq(
            &a.mul(&b).subst_q_square(),
            &a.subst_q_square().mul(&b.subst_q_square()),
        );
    }

    #[test]
    fn poch_splits_at_any_index(
        coeff in prop_oneof![Just(-1i64), Just(1i64), Just(2i64)],
        z_exp in -2i64..=2,
        q_steps in 0i64..=4,
        m in 0i64..=8,
        n in 0i64..=8,
    ) {
        // (a;q)_{m+n} = (a;q)_m (a q^m;q)_n
        let a = Monomial::new(coeff, z_exp, HalfExp::half_steps(q_steps));
        let step = HalfExp::int(1);
        let whole = poch(&PochSpec::finite(a.clone(), step, m + n).unwrap(), ord());
        let head = poch(&PochSpec::finite(a.clone(), step, m).unwrap(), ord());
        let shifted = a.mul(&Monomial::q_pow(HalfExp::int(m)));
        let tail = poch(&PochSpec::finite(shifted, step, n).unwrap(), ord());
        assert_series_eq(&whole, &head.mul(&tail));
    }
}

// ---------------------------------------------------------------------------
// Truncation coherence over random expression trees
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum Expr {
    Leaf(Vec<(i64, i64, i64)>), // (q half-steps, z-exponent, coefficient)
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    MulMonomial(Box<Expr>, i64, i64, i64), // coeff, z, q half-steps (>= 0)
    Neg(Box<Expr>),
    SubstZ(Box<Expr>),
    EvalZOne(Box<Expr>),
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop::collection::vec((0i64..=24, -4i64..=4, -5i64..=5), 1..5)
        .prop_map(Expr::Leaf);
    leaf.prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 1i64..=3, -2i64..=2, 0i64..=6)
                .prop_map(|(a, c, z, q)| Expr::MulMonomial(Box::new(a), c, z, q)),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            inner.clone().prop_map(|a| Expr::SubstZ(Box::new(a))),
            inner.prop_map(|a| Expr::EvalZOne(Box::new(a))),
        ]
    })
}

fn eval(expr: &Expr, order: HalfExp) -> QSeries {
    match expr {
        Expr::Leaf(terms) => QSeries::make(
            terms
                .iter()
                .filter(|&&(s, _, _)| HalfExp::half_steps(s) <= order)
                .map(|&(s, z, c)| {
                    (HalfExp::half_steps(s), ZPolynomial::term(BigInt::from(c), z))
                }),
            order,
        )
        .expect("filtered"),
        Expr::Add(a, b) => eval(a, order).add(&eval(b, order)),
        Expr::Mul(a, b) => eval(a, order).mul(&eval(b, order)),
        Expr::MulMonomial(a, c, z, q) => {
            eval(a, order).mul_monomial(&Monomial::new(*c, *z, HalfExp::half_steps(*q)))
        }
        Expr::Neg(a) => eval(a, order).neg(),
        Expr::SubstZ(a) => eval(a, order).subst_z_inverse(),
        Expr::EvalZOne(a) => eval(a, order).eval_z_one(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn truncation_coherence(expr in arb_expr(), m_steps in 0i64..=30) {
        // evaluating at order N then truncating to M <= N equals evaluating
        // at order M, on everything both evaluations know
        let n_order = HalfExp::half_steps(40);
        let m_order = HalfExp::half_steps(m_steps);
        let at_n = eval(&expr, n_order);
        let at_m = eval(&expr, m_order);
        let common = at_n.trunc_order().min(at_m.trunc_order()).min(m_order);
        let cmp = at_n
            .truncated(common)
            .equal_up_to(&at_m, common)
            .expect("common order");
        prop_assert!(cmp.is_equal(), "coherence broken at {common}: {cmp:?}");
    }
}

// ---------------------------------------------------------------------------
// Arbitrary-precision safety
// ---------------------------------------------------------------------------

#[test]
fn partition_like_coefficients_stay_exact_past_u64() {
    // 1/(q;q)_inf squared to order 200: the top coefficient exceeds 2^64.
    let order = HalfExp::int(200);
    let euler = baileyforge::catalog::euler(order);
    let inv = euler.invert_unit().unwrap();
    let sq = inv.mul(&inv);
    let top = sq.coeff(order).coeff(0);
    assert!(
        top > BigInt::from(u64::MAX),
        "coefficient of q^200 should exceed 2^64, got {top}"
    );
    // exactness closes the loop: (q;q)_inf^2 * (1/(q;q)_inf)^2 = 1
    let back = euler.mul(&euler).mul(&sq);
    assert!(back
        .equal_up_to(&QSeries::one(order), order)
        .unwrap()
        .is_equal());
}
