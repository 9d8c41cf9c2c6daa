use dra::algebra::{diamond, h_hat, hat_generator, is_central, AlgebraElement, Generator, Monomial};
use dra::scalar::DynamicalScalar;
use proptest::prelude::*;
use Generator::*;

fn hat(g: Generator) -> AlgebraElement {
    hat_generator(g)
}

fn poly(c: &[i64]) -> DynamicalScalar {
    DynamicalScalar::from_poly(dra::scalar::RatPolynomial::from_i64s(c))
}

fn d(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    diamond(a, b)
}

fn s(f: DynamicalScalar, a: &AlgebraElement) -> AlgebraElement {
    a.scale(&f)
}

#[test]
fn normalized_generators_shift_h() {
    let h = AlgebraElement::scalar(DynamicalScalar::h());
    for g in [Xm2, Xm1, Xp1, Xp2] {
        let k = g.shift();
        let lhs = d(&hat(g), &h);
        let rhs = s(&DynamicalScalar::h() + &DynamicalScalar::from_int(k), &hat(g));
        assert_eq!(lhs, rhs, "{g:?}");
    }
    assert!(is_central(&h_hat()).unwrap());
}

#[test]
fn normalized_squares_and_commuting_pairs() {
    assert_eq!(d(&hat(Xp1), &hat(Xp1)), s(DynamicalScalar::from_int(2), &d(&h_hat(), &hat(Xp2))));
    assert_eq!(d(&hat(Xm1), &hat(Xm1)), s(DynamicalScalar::from_int(-2), &d(&h_hat(), &hat(Xm2))));
    assert_eq!(d(&hat(Xp1), &hat(Xp2)), d(&hat(Xp2), &hat(Xp1)));
    assert_eq!(d(&hat(Xm1), &hat(Xm2)), d(&hat(Xm2), &hat(Xm1)));
}

#[test]
fn normalized_mixed_relations() {
    // (H-1)^2 x2 x-1 = (H+1)^2 x-1 x2 + 2H h x1
    let lhs = s(poly(&[1, -2, 1]), &d(&hat(Xp2), &hat(Xm1)));
    let rhs = &s(poly(&[1, 2, 1]), &d(&hat(Xm1), &hat(Xp2))) + &s(poly(&[0, 2]), &d(&h_hat(), &hat(Xp1)));
    assert_eq!(lhs, rhs);

    // (H-2)^2 x1 x-1 = -H^2 x-1 x1 + 4H^2 x-2 x2 - (H-2)^2 h h + H^2 (H-1)^2 (H-2)^2
    let lhs = s(poly(&[4, -4, 1]), &d(&hat(Xp1), &hat(Xm1)));
    let rhs = &(&(&s(poly(&[0, 0, -1]), &d(&hat(Xm1), &hat(Xp1)))
        + &s(poly(&[0, 0, 4]), &d(&hat(Xm2), &hat(Xp2))))
        - &s(poly(&[4, -4, 1]), &d(&h_hat(), &h_hat())))
        + &AlgebraElement::scalar(poly(&[0, 0, 1]) * poly(&[1, -2, 1]) * poly(&[4, -4, 1]));
    assert_eq!(lhs, rhs);

    // (H-2)^2 x1 x-2 = H^2 x-2 x1 - 2(H-1) x-1 h
    let lhs = s(poly(&[4, -4, 1]), &d(&hat(Xp1), &hat(Xm2)));
    let rhs = &s(poly(&[0, 0, 1]), &d(&hat(Xm2), &hat(Xp1))) - &s(poly(&[-2, 2]), &d(&hat(Xm1), &h_hat()));
    assert_eq!(lhs, rhs);

    // (H-1)^2 (H-2)^2 x2 x-2 = H^2 (H-1)^2 x-2 x2 + (-H^2+H+1) x-1 x1 + H (H-2)^2 h h - H^3 (H-1)^2 (H-2)^2
    let h1sq = poly(&[1, -2, 1]);
    let h2sq = poly(&[4, -4, 1]);
    let lhs = s(&h1sq * &h2sq, &d(&hat(Xp2), &hat(Xm2)));
    let rhs = &(&(&s(poly(&[0, 0, 1]) * h1sq.clone(), &d(&hat(Xm2), &hat(Xp2)))
        + &s(poly(&[1, 1, -1]), &d(&hat(Xm1), &hat(Xp1))))
        + &s(poly(&[0, 1]) * h2sq.clone(), &d(&h_hat(), &h_hat())))
        - &AlgebraElement::scalar(poly(&[0, 0, 0, 1]) * h1sq * h2sq);
    assert_eq!(lhs, rhs);
}

fn small_monomial() -> impl Strategy<Value = AlgebraElement> {
    (0u32..=2, 0u8..=1, 0u32..=2, 0u8..=1, 0u32..=2, -3i64..=3)
        .prop_map(|(p, q, r, s, t, k)| {
            AlgebraElement::term(
                &DynamicalScalar::h() + &DynamicalScalar::from_int(k),
                Monomial::new(p, q, r, s, t),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn diamond_is_associative(a in small_monomial(), b in small_monomial(), c in small_monomial()) {
        prop_assert_eq!(d(&d(&a, &b), &c), d(&a, &d(&b, &c)));
    }

    #[test]
    fn weights_add(a in small_monomial(), b in small_monomial()) {
        let w = a.weight().unwrap() + b.weight().unwrap();
        let prod = d(&a, &b);
        prop_assert!(prod.terms().all(|(m, _)| m.weight() == w));
    }
}
