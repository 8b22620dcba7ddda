mod common;

use common::{circle_point, quaternion};
use g2forms::classify::Verdict;
use g2forms::cmat::CMat3;
use g2forms::x7::{self, SU3Element, SpherePoint};
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sample_points_are_special_unitary(q1 in quaternion(), p in circle_point(), q2 in quaternion()) {
        let x = x7::sample_point(&q1, &p, &q2);
        prop_assert!(SU3Element::new(x.matrix().clone()).is_ok());
        prop_assert_eq!(x.mul(&x.inverse()).matrix().clone(), CMat3::identity());
        prop_assert!(x7::in_x7(&x));
        prop_assert_eq!(&x.g11().re, &g2forms::RealScalar::from_rational(p.cos().clone()));
    }

    #[test]
    fn level_set_is_invariant(q1 in quaternion(), p in circle_point(), q2 in quaternion(), q3 in quaternion()) {
        let x = x7::sample_point(&q1, &p, &q2);
        prop_assert!(x7::invariance_check(&x, &q3, &q1));
    }

    #[test]
    fn quaternion_product_is_embedded_product(a in quaternion(), b in quaternion()) {
        let lhs = x7::embed_su2(&a.mul(&b));
        prop_assert_eq!(lhs, x7::embed_su2(&a).mul(&x7::embed_su2(&b)));
    }

    #[test]
    fn factor_point_reproduces_the_sphere_point(q in quaternion(), p in circle_point(), q2 in quaternion()) {
        let col = x7::sample_point(&q, &p, &q2).projection();
        let v = SpherePoint::new(col[0].re.rational_part().clone(), col[1].clone(), col[2].clone()).unwrap();
        let (fq, fp) = x7::factor_point(&v).unwrap();
        prop_assert_eq!(x7::embed_su2(&fq).mul(&x7::so2_1(&fp)).projection(), v.as_column());
        prop_assert!(!fp.sin().is_zero() || (v.z2.is_zero() && v.z3.is_zero()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // The restricted form is split-stable wherever x₁₁ = cos α is nonzero.
    #[test]
    fn split_stable_off_vanishing_g11(q1 in quaternion(), p in circle_point(), q2 in quaternion()) {
        prop_assume!(!p.cos().is_zero());
        let x = x7::sample_point(&q1, &p, &q2);
        let frame = x7::tangent_frame(&x).unwrap();
        prop_assert_eq!(frame.rank(), 7);
        let r = x7::verify_at(&x).unwrap();
        prop_assert_eq!(r.verdict, Verdict::SplitStable);
        prop_assert_eq!(r.stabilizer_dim, 14);
    }
}
