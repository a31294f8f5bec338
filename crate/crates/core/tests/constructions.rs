use danielewski::cylinder::{
    build_prop5_pair, build_theorem_phi, certify_theorem_map, embedding_equations, CylinderMap,
};
use danielewski::io::{Document, PolyJson};
use danielewski::surface::{make_classical, make_hypersurface};
use danielewski::syntax::parse_poly;
use danielewski::verify::verify_inverse_pair;
use danielewski::{GaussianRational as Q, MultiPoly};
use proptest::prelude::*;

fn roots(k: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::btree_set((-3i64..=3, -1i64..=1), k)
        .prop_map(|s| s.into_iter().map(|(a, b)| Q::gaussian(a, b)).collect())
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-5i64..=5, 1i64..=3, 0u32..=3, 0u32..=3, 0u32..=2), 0..6).prop_map(|ts| {
        let mut p = MultiPoly::zero();
        for (a, d, ex, ez, eu) in ts {
            p = &p
                + &MultiPoly::monomial(Q::ratio(a, d), &[("x", ex), ("z", ez), ("u1", eu)]);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn poly_json_round_trip(p in poly()) {
        let json = serde_json::to_string(&PolyJson::from(&p)).unwrap();
        let back: PolyJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.to_poly().unwrap(), p);
    }

    #[test]
    fn classical_surfaces_certify_and_round_trip(r in roots(2..=3), n in 1u32..=2, perm in any::<prop::sample::Index>()) {
        let s = make_classical(n, &r).unwrap();
        let mut target = r.clone();
        target.rotate_left(perm.index(r.len()));
        let (map, cert) = build_theorem_phi(&s, &target).unwrap();
        prop_assert!(cert.valid());
        let doc = Document::with_map(&CylinderMap::Theorem(map.clone()));
        let back = Document::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        match back.cylinder_map().unwrap() {
            CylinderMap::Theorem(t) => {
                prop_assert_eq!(&t.chart_images, &map.chart_images);
                prop_assert!(certify_theorem_map(&t).valid());
            }
            _ => prop_assert!(false, "wrong map kind"),
        }
    }

    #[test]
    fn ambient_pairs_are_mutual_inverses(r in roots(2..=3), n in 1u32..=2, m in 1u32..=2) {
        let mut q = r.clone();
        q.reverse();
        let pair = build_prop5_pair(&r, &q, n, m).unwrap();
        prop_assert!(pair.checks.iter().all(|c| c.passed));
        let checks = verify_inverse_pair(&pair.phi, &pair.psi);
        prop_assert!(checks.iter().all(|c| c.passed), "{:?}", checks.iter().find(|c| !c.passed));
    }

    #[test]
    fn edited_images_are_rejected(r in roots(2..=3), k in 0usize..4, delta in 1i64..=3) {
        let s = make_classical(1, &r).unwrap();
        let (mut map, _) = build_theorem_phi(&s, &r).unwrap();
        let v = ["x", "y", "z", "w"][k];
        let img = map.chart_images[0].get(v).cloned().unwrap_or_default();
        map.chart_images[0].insert(v.to_string(), &img + &MultiPoly::int(delta));
        prop_assert!(!certify_theorem_map(&map).passed());
    }
}

#[test]
fn russell_pair_document_round_trip() {
    let r = [Q::one(), Q::from_int(-1)];
    let pair = build_prop5_pair(&r, &r, 2, 1).unwrap();
    let map = CylinderMap::AmbientPair {
        phi: pair.phi.clone(),
        psi: pair.psi.clone(),
        construction: Some(pair.construction.clone()),
    };
    let doc = Document::with_map(&map);
    let back = Document::from_json(&doc.to_json()).unwrap();
    let CylinderMap::AmbientPair { phi, psi, .. } = back.cylinder_map().unwrap() else {
        panic!("wrong map kind");
    };
    assert_eq!(phi.images, pair.phi.images);
    assert!(verify_inverse_pair(&phi, &psi).iter().all(|c| c.passed));
}

#[test]
fn hypersurface_embedding_starts_with_target_relation() {
    let q = parse_poly("z^2 - 1").unwrap();
    let s = make_hypersurface(2, &q, &[Q::one(), Q::from_int(-1)]).unwrap();
    let e = embedding_equations(&s, &s.spec.roots.clone(), &Q::zero(), None).unwrap();
    assert_eq!(e.equations.len(), 2);
    assert!(e.equations[1].contains_var("w"));
    assert_eq!(e.equations[0], parse_poly("x*y - z^2 + 1").unwrap());
}
