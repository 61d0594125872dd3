use super::*;
use proptest::prelude::*;

fn s(l: u32, c: &[i64]) -> CyclotomicScalar {
    CyclotomicScalar::from_int_coefficients(l, c).unwrap()
}

fn z(l: u32, k: i64) -> CyclotomicScalar {
    root_of_unity(l, k).unwrap()
}

#[test]
fn roots_of_unity_reduce() {
    assert!(z(3, 3).is_one());
    assert_eq!(z(3, 2), s(3, &[-1, -1]));
    assert_eq!(z(3, -1), z(3, 2));
    for l in [3, 5, 7, 9, 15] {
        let mut acc = CyclotomicScalar::zero(l);
        for k in 0..l as i64 {
            acc += &z(l, k);
        }
        if field_degree(l).unwrap() + 1 == l as usize {
            assert!(acc.is_zero(), "l = {l}");
        }
    }
}

#[test]
fn invalid_orders() {
    assert_eq!(root_of_unity(4, 1), Err(ScalarError::InvalidOrder(4)));
    assert_eq!(root_of_unity(1, 1), Err(ScalarError::InvalidOrder(1)));
    assert!(root_of_unity(9, 1).is_ok());
}

#[test]
fn arithmetic_examples() {
    for l in [3u32, 5, 7] {
        let one = CyclotomicScalar::one(l);
        assert!(
            field_arithmetic(&z(l, 1), &z(l, l as i64 - 1), ArithKind::Mul)
                .unwrap()
                .is_one()
        );
        assert_eq!(
            field_arithmetic(&one, &z(l, 1), ArithKind::Div).unwrap(),
            z(l, l as i64 - 1)
        );
    }
    let a = s(5, &[3, -1, 0, 7]);
    assert!(field_arithmetic(&a, &-&a, ArithKind::Add)
        .unwrap()
        .is_zero());
    assert_eq!(
        field_arithmetic(&a, &CyclotomicScalar::zero(5), ArithKind::Div),
        Err(ScalarError::DivisionByZero)
    );
    assert_eq!(
        a.checked_add(&z(3, 1)),
        Err(ScalarError::OrderMismatch(5, 3))
    );
}

#[test]
fn conjugation() {
    let r = CyclotomicScalar::from_rational(7, &Rational::new(3.into(), 4.into()));
    assert_eq!(r.conjugate(), r);
    assert_eq!(z(5, 1).conjugate(), z(5, 4));
    assert_eq!(z(5, 4), s(5, &[-1, -1, -1, -1]));
}

#[test]
fn norms() {
    assert!(CyclotomicScalar::zero(5).norm_squared().is_zero());
    for l in [3u32, 5, 7] {
        for k in 0..l as i64 {
            assert!(z(l, k).norm_squared().is_one());
        }
    }
}

/// Multiplication in Z[x]/(x^l − 1), a redundant model of Z[ζ_l] for prime l
/// that never touches the canonical reduction.
fn convolve(a: &[i64], b: &[i64], l: usize) -> Vec<i64> {
    let mut out = vec![0; l];
    for i in 0..l {
        for j in 0..l {
            out[(i + j) % l] += a[i] * b[j];
        }
    }
    out
}

#[test]
fn gauss_sum_norm_is_l() {
    for l in [3usize, 5, 7] {
        let mut g = vec![0i64; l];
        let mut gbar = vec![0i64; l];
        for t in 0..l {
            g[(t * t) % l] += 1;
            gbar[(l - (t * t) % l) % l] += 1;
        }
        let mut prod = convolve(&g, &gbar, l);
        prod[0] -= l as i64;
        // kernel of Z[x]/(x^l-1) -> Z[ζ] is spanned by the all-ones vector
        assert!(prod.iter().all(|&c| c == prod[0]), "oracle l = {l}");
        let gs = CyclotomicScalar::gauss_sum(l as u32).unwrap();
        assert_eq!(
            gs.norm_squared(),
            CyclotomicScalar::from_integer(l as u32, l as i64)
        );
        let sign = if l % 4 == 1 { 1 } else { -1 };
        assert_eq!(
            &gs * &gs,
            CyclotomicScalar::from_integer(l as u32, sign * l as i64)
        );
    }
}

#[test]
fn half_powers_square_to_q() {
    for l in [3u32, 5, 7, 9, 11] {
        let h = CyclotomicScalar::half_power(l, 1);
        assert_eq!(&h * &h, z(l, 1));
        for n in -5..5 {
            let hn = CyclotomicScalar::half_power(l, n);
            assert_eq!(&hn * &hn, z(l, n));
        }
    }
}

#[test]
fn square_roots() {
    let l = 5;
    let c = z(l, 3).mul_integer(9);
    let r = c.sqrt_exact().unwrap();
    assert_eq!(&r * &r, c);
    let g = CyclotomicScalar::gauss_sum(l).unwrap();
    let c2 = (&g * &z(l, 2)).mul_integer(4);
    let c2 = &c2 * &c2;
    let r2 = c2.sqrt_exact().unwrap();
    assert_eq!(&r2 * &r2, c2);
    assert!(CyclotomicScalar::from_integer(l, 2).sqrt_exact().is_none());
}

#[test]
fn big_values_roundtrip_to_small() {
    let big = s(5, &[i64::MAX, i64::MAX - 1, 3, -i64::MAX]);
    let sq = &big * &big;
    assert!(matches!(sq.repr, Repr::Big { .. }));
    let back = sq.checked_div(&big).unwrap();
    assert_eq!(back, big);
    assert!(matches!(back.repr, Repr::Small { .. }));
    let zero = &sq - &sq;
    assert!(zero.is_zero());
    assert_eq!(zero, CyclotomicScalar::zero(5));
}

#[test]
fn composite_order() {
    let l = 9;
    let a = s(l, &[1, 2, 0, -1, 0, 5]);
    let inv = a.inverse().unwrap();
    assert!((&a * &inv).is_one());
    assert_eq!(z(l, 9), CyclotomicScalar::one(l));
    assert_eq!(z(l, 3).pow(3).unwrap(), CyclotomicScalar::one(l));
    assert_eq!(a.conjugate().conjugate(), a);
}

#[test]
fn display_and_json() {
    assert_eq!(z(3, 2).to_string(), "-1 - z");
    assert_eq!(CyclotomicScalar::zero(3).to_string(), "0");
    let a = CyclotomicScalar::from_coefficients(
        5,
        &[
            Rational::new(1.into(), 2.into()),
            Rational::zero(),
            Rational::new((-3).into(), 1.into()),
            Rational::one(),
        ],
    )
    .unwrap();
    assert_eq!(a.to_string(), "1/2 - 3*z^2 + z^3");
    let j = serde_json::to_string(&a).unwrap();
    assert_eq!(j, r#"{"l":5,"coeffs":["1/2","0","-3","1"]}"#);
    let back: CyclotomicScalar = serde_json::from_str(&j).unwrap();
    assert_eq!(back, a);
    assert_eq!(
        CyclotomicScalar::from_json_value(&a.to_json_value()).unwrap(),
        a
    );
    assert!(serde_json::from_str::<CyclotomicScalar>(r#"{"l":5,"coeffs":["1"]}"#).is_err());
    assert!(serde_json::from_str::<CyclotomicScalar>(r#"{"l":4,"coeffs":["1"]}"#).is_err());
    assert_eq!(
        z(3, 1).to_decimal_string(20),
        "-0.50000000000000000000 + 0.86602540378443864676i"
    );
}

fn arb_scalar(l: u32, range: i64) -> impl Strategy<Value = CyclotomicScalar> {
    let d = field_degree(l).unwrap();
    (
        proptest::collection::vec(-range..=range, d),
        1..=range.min(1000),
    )
        .prop_map(move |(c, den)| {
            let cs: Vec<Rational> = c
                .iter()
                .map(|&x| Rational::new(x.into(), den.into()))
                .collect();
            CyclotomicScalar::from_coefficients(l, &cs).unwrap()
        })
}

fn arb_any() -> impl Strategy<Value = (CyclotomicScalar, CyclotomicScalar, CyclotomicScalar)> {
    prop_oneof![Just(3u32), Just(5u32), Just(7u32), Just(9u32)].prop_flat_map(|l| {
        let r = prop_oneof![Just(20i64), Just(i64::MAX / 3)];
        r.prop_flat_map(move |range| {
            (
                arb_scalar(l, range),
                arb_scalar(l, range),
                arb_scalar(l, range),
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms((a, b, c) in arb_any()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn conjugation_is_ring_automorphism((a, b, _c) in arb_any()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.norm_squared(), a.conjugate().norm_squared());
        prop_assert_eq!(a.norm_squared().conjugate(), a.norm_squared());
    }

    #[test]
    fn coefficient_roundtrip((a, _b, _c) in arb_any()) {
        let back = CyclotomicScalar::from_coefficients(a.order(), &a.coefficients()).unwrap();
        prop_assert_eq!(&back, &a);
        let j = serde_json::to_string(&a).unwrap();
        let parsed: CyclotomicScalar = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(parsed, a);
    }
}
