use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use divkummer::exactalg::{snf, FgModule, IntMatrix, Ring, Submodule};
use divkummer::modfilter::{divide_filter, is_jtorsion, torsion, IdealFilter};
use divkummer::pointed::{frac, TorsionTarget};

fn matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-12i64..=12, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v))
    })
}

/// A finite module from a random square relation matrix with nonzero determinant.
fn finite_module() -> impl Strategy<Value = FgModule> {
    (1..=3usize)
        .prop_flat_map(|n| prop::collection::vec(-6i64..=6, n * n).prop_map(move |v| IntMatrix::from_i64(n, n, &v)))
        .prop_filter("nonsingular", |m| !m.determinant().is_zero() && m.determinant().abs() <= BigInt::from(500))
        .prop_map(|m| FgModule::from_relations(Ring::Integers, m.cols(), &m, None).unwrap().module)
}

fn module_and_sub() -> impl Strategy<Value = (FgModule, Submodule)> {
    finite_module().prop_flat_map(|m| {
        let n = m.ngens();
        prop::collection::vec(prop::collection::vec(-20i64..=20, n), 0..=2).prop_map(move |gens| {
            let elems: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let sub = Submodule::from_elements(&m, &elems);
            (m.clone(), sub)
        })
    })
}

fn filter() -> impl Strategy<Value = IdealFilter> {
    prop::sample::select(vec!["2^inf", "3^inf", "5^inf", "inf", "0", "1"]).prop_map(|s| s.parse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_valid_factorization(m in matrix(5)) {
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.s.clone());
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        let d = s.diagonal();
        for w in d.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn module_order_is_the_relation_determinant(m in finite_module()) {
        prop_assert_eq!(m.elements().unwrap().len(), usize::try_from(m.order().unwrap()).unwrap());
        for w in m.torsion_factors().windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn division_is_a_closure((_, sub) in module_and_sub(), j in filter()) {
        let d = divide_filter(&j, &sub).unwrap();
        prop_assert!(sub.is_subset(&d));
        prop_assert_eq!(divide_filter(&j, &d).unwrap(), d.clone());
        let (q, proj) = sub.quotient();
        prop_assert_eq!(proj.image_of(&d), torsion(&j, &q).unwrap());
    }

    #[test]
    fn division_is_monotone((m, sub) in module_and_sub(), extra in prop::collection::vec(-9i64..=9, 3), j in filter()) {
        let e: Vec<BigInt> = extra.iter().take(m.ngens()).map(|&x| BigInt::from(x)).collect();
        let bigger = sub.sum(&Submodule::from_elements(&m, &[e]));
        prop_assert!(divide_filter(&j, &sub).unwrap().is_subset(&divide_filter(&j, &bigger).unwrap()));
    }

    #[test]
    fn finite_modules_are_torsion_for_the_full_filter(m in finite_module()) {
        prop_assert!(is_jtorsion(&"inf".parse().unwrap(), &m).unwrap());
        prop_assert!(is_jtorsion(&"0".parse().unwrap(), &m).unwrap());
        prop_assert_eq!(torsion(&"1".parse().unwrap(), &m).unwrap(), Submodule::zero(&m));
    }

    #[test]
    fn target_layers_round_trip(n in prop::collection::vec(-64i64..64, 2), e in 0u32..6) {
        let t = TorsionTarget::prufer(2, 2).unwrap();
        let level = BigInt::from(2u32.pow(e));
        let x: Vec<BigRational> = n.iter().map(|&k| frac(&BigRational::new(k.into(), level.clone()))).collect();
        let v = t.to_layer(&x, &level).unwrap();
        prop_assert_eq!(t.from_layer(&v, &level), x);
        let half = vec![BigRational::new(BigInt::one(), BigInt::from(2) * &level), BigRational::zero()];
        prop_assert!(t.to_layer(&half, &level).is_none());
    }
}
