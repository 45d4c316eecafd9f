use proptest::prelude::*;
use quantum_pieri::pieri::{check_pieri, check_tfae, special_class};
use quantum_pieri::shapes::{
    barred_permutation, element_to_shape, gamma_sets, shape_to_element, star_word, Gamma2Reading, Shape,
};
use quantum_pieri::{Coeff, CurveDegree, Grassmannian, GrassmannianDesc, LieType, QuantumEngine, WeylElement};

fn lie_type() -> impl Strategy<Value = LieType> {
    prop_oneof![Just(LieType::A), Just(LieType::B), Just(LieType::C), Just(LieType::D)]
}

/// A type, a rank the type accepts, and an element given by a random word.
fn element(max_rank: usize) -> impl Strategy<Value = WeylElement> {
    (lie_type(), 2..=max_rank).prop_flat_map(|(ty, rank)| {
        let rank = rank.max(ty.min_rank());
        prop::collection::vec(1..=rank, 0..12).prop_map(move |w| WeylElement::from_word(ty, rank, &w).unwrap())
    })
}

fn pair(max_rank: usize) -> impl Strategy<Value = (WeylElement, WeylElement)> {
    element(max_rank).prop_flat_map(|u| {
        let (ty, rank) = (u.lie_type(), u.rank());
        prop::collection::vec(1..=rank, 0..10).prop_map(move |w| (u, WeylElement::from_word(ty, rank, &w).unwrap()))
    })
}

fn grassmannian() -> impl Strategy<Value = GrassmannianDesc> {
    prop_oneof![
        (1..=3usize).prop_flat_map(|n| (1..=n).prop_map(move |k| GrassmannianDesc::ig(k, 2 * n).unwrap())),
        (2..=3usize).prop_flat_map(|n| (1..=n).prop_map(move |k| GrassmannianDesc::og(k, 2 * n + 1).unwrap())),
        (1..=4usize).prop_flat_map(|n| (1..=n).prop_map(move |k| GrassmannianDesc::gr(k, n + 1).unwrap())),
        (1..=2usize).prop_map(|k| GrassmannianDesc::og(k, 8).unwrap()),
    ]
}

fn shape(max_n: usize) -> impl Strategy<Value = Shape> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, k)| {
            let all = Shape::all(n, k);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_word_round_trips(w in element(5)) {
        let word = w.reduced_word();
        prop_assert_eq!(word.len(), w.length());
        prop_assert_eq!(WeylElement::from_word(w.lie_type(), w.rank(), &word).unwrap(), w);
        prop_assert_eq!(w.inverse().length(), w.length());
        prop_assert!(w.compose(&w.inverse()).is_identity());
    }

    #[test]
    fn one_line_text_round_trips(w in element(5)) {
        let back = WeylElement::parse(w.lie_type(), w.rank(), &w.one_line_string()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn simple_reflections_change_length_by_one(w in element(5), i in 1usize..=6) {
        prop_assume!(i <= w.rank());
        let ws = w.right_mul_simple(i);
        prop_assert_eq!(ws.length().abs_diff(w.length()), 1);
        prop_assert_eq!(ws.length() < w.length(), w.sgn(i) == 1);
    }

    #[test]
    fn products_commute_and_are_homogeneous((u, v) in pair(3)) {
        let e = QuantumEngine::for_type(u.lie_type(), u.rank()).unwrap();
        let uv = e.quantum_multiply(&u, &v).unwrap();
        let vu = e.quantum_multiply(&v, &u).unwrap();
        prop_assert_eq!(&*uv, &*vu);
        prop_assert!(uv.is_homogeneous(e.root_system(), u.length() + v.length()));
        prop_assert!(uv.all_nonnegative());
        prop_assert!(uv.all_effective());
    }

    #[test]
    fn identity_is_a_unit(w in element(4)) {
        let e = QuantumEngine::for_type(w.lie_type(), w.rank()).unwrap();
        let p = e.quantum_multiply(&e.identity(), &w).unwrap();
        prop_assert_eq!(p.len(), 1);
        prop_assert_eq!(p.get(&w, &CurveDegree::zero(w.rank())), Coeff::from(1));
    }

    #[test]
    fn pieri_formula_matches_oracle(gd in grassmannian(), p in 1usize..=5, i in 0usize..400) {
        prop_assume!(special_class(&gd, p).is_ok());
        let g = Grassmannian::new(gd).unwrap();
        let reps = g.parabolic().min_coset_reps();
        let v = reps[i % reps.len()];
        let r = check_pieri(&g, p, &v).unwrap();
        prop_assert!(r.matched, "{}", serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn tfae_conditions_agree(n in 1usize..=4, k in 1usize..=4, i in 0usize..400) {
        prop_assume!(k <= n);
        let g = Grassmannian::new(GrassmannianDesc::ig(k, 2 * n).unwrap()).unwrap();
        let reps = g.parabolic().min_coset_reps();
        prop_assert!(check_tfae(&g, &reps[i % reps.len()]).unwrap().all_equal());
    }

    #[test]
    fn shapes_round_trip(sh in shape(4), ty in prop_oneof![Just(LieType::B), Just(LieType::C)]) {
        let w = shape_to_element(&sh, ty).unwrap();
        prop_assert_eq!(w.length(), sh.size());
        prop_assert_eq!(star_word(&sh).len(), sh.size());
        prop_assert_eq!(element_to_shape(&w, sh.k).unwrap(), sh.clone());
        let line: Vec<i64> = w.one_line().iter().map(|&x| x as i64).collect();
        prop_assert_eq!(barred_permutation(sh.n, &star_word(&sh)), line);
        prop_assert_eq!(Shape::parse(&sh.to_string(), sh.n, sh.k).unwrap(), sh);
    }

    #[test]
    fn gamma_sets_drop_one_box(sh in shape(5)) {
        prop_assume!(sh.k < sh.n);
        for reading in Gamma2Reading::ALL {
            let g = gamma_sets(&sh, reading);
            prop_assert!(g.s.iter().all(|nu| nu.size() + 1 == sh.size()));
            prop_assert!(g.gamma2.iter().all(|nu| g.s.contains(nu)));
            prop_assert!(g.gamma1.iter().all(|nu| !g.gamma2.contains(nu)));
        }
    }

    #[test]
    fn coefficients_agree_with_wide_integers(a in any::<i64>(), b in -1000i64..1000, c in any::<i64>()) {
        let mut x = Coeff::from(a);
        x.add_mul_small(&Coeff::from(c), b);
        let want = a as i128 + c as i128 * b as i128;
        prop_assert_eq!(x.to_string(), want.to_string());
        prop_assert_eq!(Coeff::from(a).mul(&Coeff::from(c)).to_string(), (a as i128 * c as i128).to_string());
    }
}
