use abelian_ideals::equations::{determinant, pfaffian, SymbolicMatrix};
use abelian_ideals::exactnum::{int, parse_rational, rat, rational_to_text, Cyclotomic, Field, Rational};
use abelian_ideals::heisenberg::{lift, HeisenbergElement};
use abelian_ideals::polyring::{distance, Monomial, Polynomial, Variable};
use proptest::prelude::*;

const ORDERS: [u32; 8] = [1, 3, 4, 5, 6, 7, 8, 12];

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..6).prop_map(|(p, q)| rat(p, q))
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(&ORDERS[..]), prop::collection::vec(rational(), 1..8))
        .prop_map(|(n, c)| Cyclotomic::new(n, c).expect("coefficients reduce modulo the cyclotomic polynomial"))
}

fn element(n: u32) -> impl Strategy<Value = HeisenbergElement> {
    (0..n as i64, 0..n as i64, 0..n as i64, any::<bool>())
        .prop_map(move |(k, a, b, i)| HeisenbergElement::new(n, Cyclotomic::root_of_unity(n, k), a, b, i))
}

fn linear_form(n: u32) -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec(-5i64..5, n as usize).prop_map(move |c| {
        Polynomial::from_terms(c.iter().enumerate().map(|(i, &a)| (int(a), Monomial::var(Variable::x(i as i64, n)))))
    })
}

fn polynomial(n: u32) -> impl Strategy<Value = Polynomial<Rational>> {
    (linear_form(n), linear_form(n), linear_form(n)).prop_map(|(a, b, c)| &(&a * &b) + &c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&Cyclotomic::zero()), a.clone());
        prop_assert_eq!(a.mul(&Cyclotomic::one()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn cyclotomic_matches_complex_values(a in cyclotomic(), b in cyclotomic()) {
        let z = a.mul(&b).to_complex() - a.to_complex() * b.to_complex();
        prop_assert!(z.norm() < 1e-9 * (1.0 + a.to_complex().norm() * b.to_complex().norm()));
    }

    #[test]
    fn cyclotomic_text_round_trip(a in cyclotomic()) {
        let back: Cyclotomic = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rational_text_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&rational_to_text(&r)).unwrap(), r);
    }

    #[test]
    fn polynomial_text_round_trip(p in polynomial(7)) {
        prop_assert_eq!(Polynomial::<Rational>::parse(&p.to_text(), 7).unwrap(), p);
    }

    #[test]
    fn heisenberg_action_is_a_representation(
        (n, g, h, p) in prop::sample::select(&[3u32, 4, 5, 6, 7][..])
            .prop_flat_map(|n| (Just(n), element(n), element(n), polynomial(n)))
    ) {
        let p = lift(&p);
        let gh = g.compose(&h).unwrap();
        prop_assert_eq!(gh.act(&p), g.act(&h.act(&p)));
        let pt: Vec<Cyclotomic> = (0..n as i64).map(|k| Cyclotomic::rational(int(k * k - 3))).collect();
        prop_assert_eq!(gh.act_point_exact(&pt), g.act_point_exact(&h.act_point_exact(&pt)));
        prop_assert_eq!(g.compose(&g.inverse()).unwrap(), HeisenbergElement::identity(n));
    }

    #[test]
    fn iota_inverts_sigma_and_tau(n in 2u32..16, a in 0u32..16, b in 0u32..16) {
        let i = HeisenbergElement::iota(n);
        let s = HeisenbergElement::sigma(n).pow(a);
        let t = HeisenbergElement::tau(n).pow(b);
        prop_assert_eq!(i.compose(&s).unwrap().compose(&i).unwrap(), s.inverse());
        prop_assert_eq!(i.compose(&t).unwrap().compose(&i).unwrap(), t.inverse());
    }

    #[test]
    fn pfaffian_squares_to_determinant(
        (k, entries) in (1usize..5).prop_flat_map(|k| (Just(2 * k), prop::collection::vec(-4i64..5, 2 * k * 2 * k)))
    ) {
        let x = |i: usize| Polynomial::<Rational>::var(Variable::x(i as i64, 8));
        let m = SymbolicMatrix::from_fn(k, k, "random skew", |i, j| {
            let a = Polynomial::constant(int(entries[i.min(j) * k + i.max(j)]));
            // Mix in a variable so the identity is checked symbolically.
            let e = &a + &(&x(i) * &x(j));
            match i.cmp(&j) {
                std::cmp::Ordering::Less => e,
                std::cmp::Ordering::Greater => -e,
                std::cmp::Ordering::Equal => Polynomial::zero(),
            }
        });
        let pf = pfaffian(&m).unwrap();
        prop_assert_eq!(&pf * &pf, determinant(&m).unwrap());
    }
}

#[test]
fn distance_is_a_metric() {
    for m in 1..=30u32 {
        let mi = m as i64;
        for a in 0..mi {
            assert_eq!(distance(a, a, m), 0);
            assert_eq!(distance(a, a + mi, m), 0);
            for b in 0..mi {
                let dab = distance(a, b, m);
                assert_eq!(dab, distance(b, a, m));
                assert!(dab <= m / 2);
                assert_eq!(dab == 0, a == b);
                for c in 0..mi {
                    assert!(distance(a, c, m) <= dab + distance(b, c, m));
                }
            }
        }
    }
}
