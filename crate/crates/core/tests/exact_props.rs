use proptest::prelude::*;
use qwc::exact::*;

const NV: usize = 3;

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, NV), -4i64..=4), 0..4)
        .prop_map(|terms| MultiPoly::from_terms(NV, terms.into_iter().map(|(e, c)| (e, rat(c)))).unwrap())
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn series(with_constant: bool) -> impl Strategy<Value = NovikovSeries<Rat>> {
    prop::collection::vec(-3i64..=3, 4).prop_map(move |cs| {
        let g = Grading::new(vec![1]);
        let mut s = NovikovSeries::zero(g, 4, &rat(1));
        if with_constant {
            s.insert(CurveClass(vec![0]), rat(1)).unwrap();
        }
        for (d, c) in cs.into_iter().enumerate() {
            s.insert(CurveClass(vec![d as i64 + 1]), rat(c)).unwrap();
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.div(&a).unwrap().is_one());
            prop_assert_eq!(b.mul(&a).div(&a).unwrap(), b.clone());
        }
    }

    #[test]
    fn normal_form_is_canonical(n in poly(), d in nonzero_poly(), k in nonzero_poly()) {
        let f = RatFunc::new(n.clone(), d.clone()).unwrap();
        let g = RatFunc::new(n.mul(&k), d.mul(&k)).unwrap();
        prop_assert_eq!(&f, &g);
        prop_assert_eq!(f.canonical(), g.canonical());
        let again = RatFunc::new(f.canonical().0, f.canonical().1).unwrap();
        prop_assert_eq!(again, f);
    }

    #[test]
    fn gcd_divides(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let g = gcd(&a.mul(&c), &b.mul(&c));
        prop_assert!(a.mul(&c).div_exact(&g).is_some());
        prop_assert!(b.mul(&c).div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c.primitive()).is_some());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in ratfunc(), b in ratfunc(), s in 1i64..4) {
        let images = vec![
            MultiPoly::var(NV, 0).add(&MultiPoly::from_int(NV, s)),
            MultiPoly::var(NV, 1),
            MultiPoly::var(NV, 2),
        ];
        if let (Ok(x), Ok(y), Ok(p)) = (a.substitute(&images), b.substitute(&images), a.mul(&b).substitute(&images)) {
            prop_assert_eq!(x.mul(&y), p);
        }
    }

    #[test]
    fn laurent_expansion_round_trips(n in poly(), root in -3i64..=3, m in 1u32..3) {
        // n / (z + root*x0)^m expanded far enough is exact once multiplied back.
        let z = MultiPoly::var(NV, 2);
        let lin = z.add(&MultiPoly::var(NV, 0).scale(&rat(root)));
        let f = RatFunc::new(n.clone(), lin.pow(m)).unwrap();
        let e = laurent_expand(&f, 2, 12).unwrap();
        let back = e.mul(&laurent_expand(&RatFunc::from_poly(lin.pow(m)), 2, 12).unwrap()).truncate(6);
        let direct = laurent_expand(&RatFunc::from_poly(n), 2, 6).unwrap();
        prop_assert_eq!(back, direct);
    }

    #[test]
    fn series_log_exp_inverse(s in series(true), x in series(false)) {
        let l = s.log().unwrap();
        prop_assert_eq!(l.exp().unwrap(), s.clone());
        prop_assert_eq!(x.exp().unwrap().log().unwrap(), x.clone());
        let prod = s.mul(&s.inv().unwrap()).unwrap();
        prop_assert!(prod.sub(&NovikovSeries::one(Grading::new(vec![1]), 4, &rat(1))).unwrap().is_zero());
    }

    #[test]
    fn rational_parsing_round_trips(n in -1000i64..1000, d in 1i64..1000) {
        let r = ratio(n, d);
        prop_assert_eq!(parse_rat(&r.to_string()), Some(r));
    }
}

#[test]
fn printing_is_stable() {
    let names = MultiPoly::default_names(NV);
    let x = MultiPoly::var(NV, 0);
    let z = MultiPoly::var(NV, 2);
    let f = RatFunc::new(MultiPoly::one(NV), z.mul(&z.add(&x)).mul(&z)).unwrap();
    assert_eq!(f.to_factored_string_with(&names), f.clone().to_factored_string_with(&names));
    assert!(f.to_factored_string_with(&names).contains("^2"), "{}", f.to_factored_string_with(&names));
}
