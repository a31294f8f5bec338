use danielewski::ambient::ideal_membership;
use danielewski::interpolation::{bezout_pair, hermite_interpolate, HermiteSpec};
use danielewski::laurent::{bindings, substitute, XLaurent};
use danielewski::syntax::parse_poly;
use danielewski::univariate::taylor_shift;
use danielewski::{GaussianRational as Q, MultiPoly};
use proptest::prelude::*;

const VARS: [&str; 4] = ["x", "y", "z", "w"];

fn coeff() -> impl Strategy<Value = Q> {
    (-6i64..=6, -3i64..=3, 1i64..=4).prop_map(|(a, b, d)| {
        &Q::gaussian(a, b) / &Q::from_int(d)
    })
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((coeff(), prop::collection::vec(0u32..=3, 4)), 0..6).prop_map(|terms| {
        let mut p = MultiPoly::zero();
        for (c, e) in terms {
            let powers: Vec<(&str, u32)> = VARS.iter().copied().zip(e).collect();
            p = &p + &MultiPoly::monomial(c, &powers);
        }
        p
    })
}

fn univariate(var: &'static str) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(coeff(), 0..6).prop_map(move |cs| {
        let mut p = MultiPoly::zero();
        for (k, c) in cs.into_iter().enumerate() {
            p = &p + &MultiPoly::monomial(c, &[(var, k as u32)]);
        }
        p
    })
}

proptest! {
    #[test]
    fn field_axioms(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn large_coefficients_stay_exact(a in coeff(), k in 20i64..80) {
        // powers past the machine-word range and back
        prop_assume!(!a.is_zero() && !a.is_one());
        let big = a.pow(k);
        prop_assert_eq!(&big * &a.pow(-k), Q::one());
        prop_assert_eq!(big.pow(2), a.pow(2 * k));
    }

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &MultiPoly::one(), p.clone());
    }

    #[test]
    fn leibniz_rule(p in poly(), q in poly(), v in prop::sample::select(&VARS[..])) {
        let lhs = (&p * &q).derivative(v);
        let rhs = &(&p.derivative(v) * &q) + &(&p * &q.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_homomorphism(p in poly(), q in poly(), a in poly(), b in poly(), k in -3i64..=3) {
        let env = bindings([
            ("z", XLaurent::new(a, k)),
            ("w", XLaurent::from_poly(b)),
        ]);
        let sp = substitute(&p, &env);
        let sq = substitute(&q, &env);
        prop_assert_eq!(substitute(&(&p * &q), &env), &sp * &sq);
        prop_assert_eq!(substitute(&(&p + &q), &env), &sp + &sq);
    }

    #[test]
    fn substitution_agrees_with_compose(p in poly(), a in poly()) {
        let env = bindings([("y", XLaurent::from_poly(a.clone()))]);
        prop_assert_eq!(substitute(&p, &env).to_poly().unwrap(), p.compose_var("y", &a));
    }

    #[test]
    fn exact_x_division_round_trip(p in poly(), k in 0u32..5) {
        let shifted = p.shift_var("x", k);
        prop_assert_eq!(shifted.div_exact_x_power(k).unwrap(), p.clone());
        let off = &shifted + &MultiPoly::var("y");
        if k > 0 {
            prop_assert!(off.div_exact_x_power(k).is_err());
        }
    }

    #[test]
    fn taylor_shift_matches_composition(p in poly(), c in coeff()) {
        let line = &MultiPoly::constant(c.clone()) + &(&MultiPoly::var("x") * &MultiPoly::var("t"));
        let direct = p.compose_var("z", &line);
        prop_assert_eq!(taylor_shift(&p.rename(&[("z".to_string(), "t".to_string())].into()), &c, "x", "t"), direct);
    }

    #[test]
    fn print_then_parse_is_identity(p in poly()) {
        let text = p.to_string();
        prop_assert_eq!(parse_poly(&text).unwrap(), p);
    }

    #[test]
    fn multiples_of_a_relation_are_members(p in poly()) {
        let rel = parse_poly("x*y - z^2 + 1").unwrap();
        prop_assert!(ideal_membership(&(&p * &rel), std::slice::from_ref(&rel)).unwrap());
        prop_assert!(!ideal_membership(&(&(&p * &rel) + &MultiPoly::one()), &[rel]).unwrap());
    }

    #[test]
    fn bezout_identity(roots in prop::collection::btree_set(-5i64..=5, 1..5)) {
        let mut p = MultiPoly::one();
        for r in &roots {
            p = &p * &(&MultiPoly::var("z") - &MultiPoly::int(*r));
        }
        let b = bezout_pair(&p).unwrap();
        prop_assert_eq!(&(&b.u * &p.derivative("z")) + &(&b.v * &p), MultiPoly::one());
        for r in &roots {
            prop_assert_eq!(b.g.eval_univariate("z", &Q::from_int(*r)), Q::from_int(*r));
            prop_assert!(b.g.derivative("z").eval_univariate("z", &Q::from_int(*r)).is_zero());
        }
    }

    #[test]
    fn hermite_meets_its_conditions(
        nodes in prop::collection::btree_set(-4i64..=4, 1..4),
        order in 0u32..3,
        seed in univariate("t"),
    ) {
        let nodes: Vec<Q> = nodes.into_iter().map(Q::from_int).collect();
        let values: Vec<Q> = nodes.iter().map(|a| seed.eval_univariate("t", a)).collect();
        let spec = HermiteSpec::uniform(nodes.clone(), values.clone(), order).unwrap();
        let h = hermite_interpolate(&spec).unwrap();
        let var = h.vars().first().cloned().unwrap_or_else(|| "t".into());
        prop_assert!(h.degree_in(&var) < nodes.len() as u32 * (order + 1));
        for (a, v) in nodes.iter().zip(&values) {
            prop_assert_eq!(h.eval_univariate(&var, a), v.clone());
            let mut d = h.clone();
            for _ in 0..order {
                d = d.derivative(&var);
                prop_assert!(d.eval_univariate(&var, a).is_zero());
            }
        }
    }
}
