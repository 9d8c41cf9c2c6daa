use dra::algebra::{diamond, theta, AlgebraElement, Generator, Monomial};
use dra::scalar::{rat, DynamicalScalar, RatPolynomial};
use dra::text::{parse_expression, print_expression};
use dra::verma::{shapovalov, verma_act, HighestWeight, VermaElement};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = DynamicalScalar> {
    (
        prop::collection::vec(-4i64..=4, 0..4),
        prop::collection::btree_map(-3i64..=3, 1u32..=2, 0..3),
    )
        .prop_map(|(num, den)| DynamicalScalar::new(RatPolynomial::from_i64s(&num), den))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (0u32..=2, 0u8..=1, 0u32..=2, 0u8..=1, 0u32..=2).prop_map(|(p, q, r, s, t)| Monomial::new(p, q, r, s, t))
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((monomial(), scalar()), 1..=2).prop_map(AlgebraElement::from_terms)
}

fn generator() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn shift_is_a_ring_homomorphism(a in scalar(), b in scalar(), k in -4i64..=4) {
        prop_assert_eq!((&a * &b).shift(k), a.shift(k) * b.shift(k));
        prop_assert_eq!((&a + &b).shift(k), &a.shift(k) + &b.shift(k));
        prop_assert_eq!(a.shift(k).shift(-k), a);
    }

    #[test]
    fn sum_matches_pairwise_addition(items in prop::collection::vec(scalar(), 0..5)) {
        let pairwise = items.iter().fold(DynamicalScalar::zero(), |acc, s| &acc + s);
        prop_assert_eq!(DynamicalScalar::sum(&items), pairwise);
    }

    #[test]
    fn units_invert(k in -5i64..=5, m in 1u32..=3, c in 1i64..=7) {
        let f = DynamicalScalar::h_minus(k).pow(m) * DynamicalScalar::from_int(c);
        prop_assert!((&f * &f.invert().unwrap()).is_one());
    }

    #[test]
    fn theta_reverses_products(a in element(), b in element()) {
        prop_assert_eq!(theta(&diamond(&a, &b)), diamond(&theta(&b), &theta(&a)));
        prop_assert_eq!(theta(&theta(&a)), a);
    }

    #[test]
    fn parse_print_round_trip(a in element()) {
        let text = print_expression(&a);
        prop_assert_eq!(parse_expression(&text).unwrap(), a);
    }

    #[test]
    fn shapovalov_is_symmetric_and_contravariant(
        u in prop::collection::vec(((0u32..=3, 0u8..=1), scalar()), 1..=2),
        w in prop::collection::vec(((0u32..=3, 0u8..=1), scalar()), 1..=2),
        g in generator(),
    ) {
        let weight = HighestWeight::new(DynamicalScalar::h_minus(-2));
        let u = VermaElement::from_terms(&weight, u);
        let w = VermaElement::from_terms(&weight, w);
        prop_assert_eq!(shapovalov(&u, &w).unwrap(), shapovalov(&w, &u).unwrap());
        let x = AlgebraElement::generator(g);
        prop_assert_eq!(
            shapovalov(&verma_act(&x, &u), &w).unwrap(),
            shapovalov(&u, &verma_act(&theta(&x), &w)).unwrap()
        );
    }
}

#[test]
fn theta_on_all_generator_pairs() {
    for a in Generator::ALL {
        for b in Generator::ALL {
            let (x, y) = (AlgebraElement::generator(a), AlgebraElement::generator(b));
            assert_eq!(theta(&diamond(&x, &y)), diamond(&theta(&y), &theta(&x)), "{a:?} {b:?}");
        }
    }
}

#[test]
fn constant_weight_form() {
    let weight = HighestWeight::constant(rat(3, 2));
    let v = VermaElement::highest(&weight);
    assert!(shapovalov(&v, &v).unwrap().is_one());
}
