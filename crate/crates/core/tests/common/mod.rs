#![allow(dead_code)]

use g2forms::exterior::{index_tuples, KForm, LinearMap, Vector};
use g2forms::linalg::{self, Matrix};
use g2forms::scalar::{rat, ComplexScalar, Rational, RealScalar};
use g2forms::x7::{CirclePoint, RationalQuaternion};
use num_traits::Zero;
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

pub fn real() -> impl Strategy<Value = RealScalar> {
    (rational(), rational()).prop_map(|(a, b)| RealScalar::new(a, b))
}

pub fn nonzero_real() -> impl Strategy<Value = RealScalar> {
    real().prop_filter("nonzero", |x| !x.is_zero())
}

pub fn complex() -> impl Strategy<Value = ComplexScalar> {
    (real(), real()).prop_map(|(re, im)| ComplexScalar::new(re, im))
}

/// Small coefficients `a + b√2`, zero about a third of the time.
fn small_coeff() -> impl Strategy<Value = RealScalar> {
    (-2i64..=2, -1i64..=1).prop_map(|(a, b)| RealScalar::from_int(a) + RealScalar::from_int(b) * RealScalar::sqrt2())
}

pub fn kform(dim: usize, degree: usize) -> impl Strategy<Value = KForm> {
    let tuples = index_tuples(dim, degree);
    prop::collection::vec(small_coeff(), tuples.len()).prop_map(move |cs| {
        let terms = tuples.iter().zip(cs).filter(|(_, c)| !c.is_zero()).map(|(t, c)| (t.one_based(), c));
        KForm::from_terms(dim, degree, terms).unwrap()
    })
}

pub fn vector(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec((-4i64..=4).prop_map(RealScalar::from_int), dim).prop_map(Vector)
}

pub fn int_vec(dim: usize) -> impl Strategy<Value = Vec<RealScalar>> {
    prop::collection::vec((-3i64..=3).prop_map(RealScalar::from_int), dim)
}

/// `L·D·U` with unit triangular factors and a nonzero diagonal: always invertible.
pub fn invertible(n: usize) -> impl Strategy<Value = LinearMap> {
    let off = n * (n - 1) / 2;
    (
        prop::collection::vec(-2i64..=2, off),
        prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], n),
        prop::collection::vec(-2i64..=2, off),
    )
        .prop_map(move |(l, d, u)| {
            let mut lm: Matrix = linalg::identity(n);
            let mut um: Matrix = linalg::identity(n);
            let mut k = 0;
            for i in 0..n {
                for j in 0..i {
                    lm[i][j] = RealScalar::from_int(l[k]);
                    um[j][i] = RealScalar::from_int(u[k]);
                    k += 1;
                }
            }
            let dm = LinearMap::diagonal(&d.iter().map(|&x| RealScalar::from_int(x)).collect::<Vec<_>>());
            LinearMap::new(lm).unwrap().compose(&dm).compose(&LinearMap::new(um).unwrap())
        })
}

pub fn quaternion() -> impl Strategy<Value = RationalQuaternion> {
    (rational(), rational(), rational()).prop_map(|(x, y, z)| RationalQuaternion::cayley(x, y, z))
}

pub fn circle_point() -> impl Strategy<Value = CirclePoint> {
    rational().prop_map(CirclePoint::from_parameter)
}

pub fn constant_of(form: &KForm) -> RealScalar {
    assert_eq!(form.degree(), 0);
    form.coeff(&[])
}
