//! Exact points of SU(3) and of the level set `X⁷ = {g ∈ SU(3) : Im g₁₁ = 0}`,
//! tangent spaces (left-translated to su(3)), and the restriction of the
//! bi-invariant Cartan 3-form to them.
//!
//! Points of X⁷ are produced as `g₁ · α · g₂` with `g₁, g₂` in the SU(2) fixing
//! `e₁` and `α` a rotation of the real `(e₁, e₂)`-plane. Unit quaternions and
//! circle points come from Cayley-type rational parameterizations, so no
//! square roots are ever taken.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::classify::{self, TypeReport};
use crate::cmat::CMat3;
use crate::error::Error;
use crate::exterior::{index_tuples, KForm, Vector};
use crate::liealg::{self, LieAlgebra};
use crate::linalg::{self, Matrix};
use crate::scalar::{rational_sqrt, ComplexScalar, Rational, RealScalar};

/// Unit quaternion `a + bi + cj + dk` with rational components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalQuaternion {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl RationalQuaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self, Error> {
        let q = RationalQuaternion { a, b, c, d };
        if !q.norm_sqr().is_one() {
            return Err(Error::NotUnit(format!("quaternion {:?} has norm² {}", q.components_text(), q.norm_sqr())));
        }
        Ok(q)
    }

    pub fn identity() -> Self {
        RationalQuaternion { a: Rational::one(), b: Rational::zero(), c: Rational::zero(), d: Rational::zero() }
    }

    /// Cayley transform `(1 + u)(1 − u)⁻¹` of the pure quaternion `u = xi + yj + zk`,
    /// which equals `((1 − |u|²) + 2u) / (1 + |u|²)`.
    pub fn cayley(x: Rational, y: Rational, z: Rational) -> Self {
        let n = &x * &x + &y * &y + &z * &z;
        let den = Rational::one() + &n;
        let two = Rational::from_integer(2.into());
        RationalQuaternion {
            a: (Rational::one() - &n) / &den,
            b: &two * x / &den,
            c: &two * y / &den,
            d: two * z / den,
        }
    }

    fn norm_sqr(&self) -> Rational {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn components_text(&self) -> Vec<String> {
        self.components().iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect()
    }

    /// Hamilton product.
    pub fn mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        RationalQuaternion {
            a: a * e - b * f - c * g - d * h,
            b: a * f + b * e + c * h - d * g,
            c: a * g - b * h + c * e + d * f,
            d: a * h + b * g - c * f + d * e,
        }
    }

    /// `[[a+bi, c+di], [−c+di, a−bi]]`.
    pub fn su2_matrix(&self) -> [[ComplexScalar; 2]; 2] {
        let z = |re: &Rational, im: &Rational| ComplexScalar::from_rationals(re.clone(), im.clone());
        [[z(&self.a, &self.b), z(&self.c, &self.d)], [z(&-&self.c, &self.d), z(&self.a, &-&self.b)]]
    }
}

/// Point `(c, s)` on the unit circle with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirclePoint {
    c: Rational,
    s: Rational,
}

impl CirclePoint {
    pub fn new(c: Rational, s: Rational) -> Result<Self, Error> {
        if !(&c * &c + &s * &s).is_one() {
            return Err(Error::NotUnit(format!("circle point ({c}, {s})")));
        }
        Ok(CirclePoint { c, s })
    }

    pub fn identity() -> Self {
        CirclePoint { c: Rational::one(), s: Rational::zero() }
    }

    /// `((1 − t²)/(1 + t²), 2t/(1 + t²))`.
    pub fn from_parameter(t: Rational) -> Self {
        let t2 = &t * &t;
        let den = Rational::one() + &t2;
        CirclePoint { c: (Rational::one() - t2) / &den, s: Rational::from_integer(2.into()) * t / den }
    }

    pub fn cos(&self) -> &Rational {
        &self.c
    }

    pub fn sin(&self) -> &Rational {
        &self.s
    }

    pub fn components_text(&self) -> Vec<String> {
        [&self.c, &self.s].iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect()
    }
}

/// Element of SU(3): `gᴴg = I` and `det g = 1`, checked exactly on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SU3Element(CMat3);

impl SU3Element {
    pub fn new(m: CMat3) -> Result<Self, Error> {
        if &m.adjoint() * &m != CMat3::identity() {
            return Err(Error::NotSpecialUnitary("not unitary".into()));
        }
        if m.det() != ComplexScalar::one() {
            return Err(Error::NotSpecialUnitary(format!("determinant {}", m.det())));
        }
        Ok(SU3Element(m))
    }

    pub fn identity() -> Self {
        SU3Element(CMat3::identity())
    }

    pub fn matrix(&self) -> &CMat3 {
        &self.0
    }

    pub fn mul(&self, other: &SU3Element) -> SU3Element {
        SU3Element(&self.0 * &other.0)
    }

    pub fn inverse(&self) -> SU3Element {
        SU3Element(self.0.adjoint())
    }

    pub fn g11(&self) -> &ComplexScalar {
        self.0.get(0, 0)
    }

    /// `Π(g) = g·e₁`, the first column.
    pub fn projection(&self) -> [ComplexScalar; 3] {
        self.0.first_column()
    }
}

/// `diag(1, U(q))`, an element of the SU(2) fixing `e₁`.
pub fn embed_su2(q: &RationalQuaternion) -> SU3Element {
    let u = q.su2_matrix();
    let mut m = CMat3::identity();
    for i in 0..2 {
        for j in 0..2 {
            m.0[i + 1][j + 1] = u[i][j].clone();
        }
    }
    SU3Element(m)
}

/// Rotation `[[c, −s, 0], [s, c, 0], [0, 0, 1]]` of the real `(e₁, e₂)`-plane.
pub fn so2_1(p: &CirclePoint) -> SU3Element {
    let r = |x: &Rational| ComplexScalar::from_rationals(x.clone(), Rational::zero());
    let mut m = CMat3::identity();
    m.0[0][0] = r(&p.c);
    m.0[0][1] = r(&-&p.s);
    m.0[1][0] = r(&p.s);
    m.0[1][1] = r(&p.c);
    SU3Element(m)
}

pub fn in_x7(g: &SU3Element) -> bool {
    g.g11().im.is_zero()
}

/// `g₁ · α · g₂`.
pub fn sample_point(q1: &RationalQuaternion, p: &CirclePoint, q2: &RationalQuaternion) -> SU3Element {
    embed_su2(q1).mul(&so2_1(p)).mul(&embed_su2(q2))
}

/// Point `(c, z₂, z₃)` of `S⁴ = {v ∈ S⁵ : Im v₁ = 0}` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherePoint {
    pub c: Rational,
    pub z2: ComplexScalar,
    pub z3: ComplexScalar,
}

impl SpherePoint {
    pub fn new(c: Rational, z2: ComplexScalar, z3: ComplexScalar) -> Result<Self, Error> {
        let rational = |z: &ComplexScalar| z.re.is_rational() && z.im.is_rational();
        if !rational(&z2) || !rational(&z3) {
            return Err(Error::InvalidInput("sphere point coordinates must be rational".into()));
        }
        let n = RealScalar::from_rational(&c * &c) + z2.norm_sqr() + z3.norm_sqr();
        if !n.is_one() {
            return Err(Error::NotUnit(format!("sphere point has norm² {n}")));
        }
        Ok(SpherePoint { c, z2, z3 })
    }

    pub fn as_column(&self) -> [ComplexScalar; 3] {
        [ComplexScalar::from_rationals(self.c.clone(), Rational::zero()), self.z2.clone(), self.z3.clone()]
    }
}

/// Finds `q` and `α = (c, s)` with `Π(embed_su2(q) · so2_1(α)) = v`, where
/// `s = +√(1 − c²)` must be rational. `U(q)` sends `(s, 0)` to `(z₂, z₃)`.
pub fn factor_point(v: &SpherePoint) -> Result<(RationalQuaternion, CirclePoint), Error> {
    let s = rational_sqrt(&(Rational::one() - &v.c * &v.c))
        .ok_or_else(|| Error::Exactness(format!("sqrt(1 - c^2) is irrational for c = {}", v.c)))?;
    let p = CirclePoint { c: v.c.clone(), s: s.clone() };
    let q = if s.is_zero() {
        if !v.z2.is_zero() || !v.z3.is_zero() {
            return Err(Error::InvalidInput("|c| = 1 but (z2, z3) is nonzero".into()));
        }
        RationalQuaternion::identity()
    } else {
        let part = |x: &RealScalar| x.rational_part() / &s;
        // first column of U(q) is (a + bi, −c + di) = (z₂, z₃)/s
        RationalQuaternion::new(part(&v.z2.re), part(&v.z2.im), -part(&v.z3.re), part(&v.z3.im))?
    };
    let got = embed_su2(&q).mul(&so2_1(&p)).projection();
    if got != v.as_column() {
        return Err(Error::Inconsistent("factorization does not reproduce the point".into()));
    }
    Ok((q, p))
}

/// su(3) with its Cartan 3-form for the metric `−tr(xy)`, built once.
fn su3_data() -> &'static (LieAlgebra, KForm) {
    static DATA: OnceLock<(LieAlgebra, KForm)> = OnceLock::new();
    DATA.get_or_init(|| {
        let g = liealg::build_su3();
        let phi = g.cartan_3form(&g.neg_trace_form().expect("realized")).expect("ad-invariant");
        (g, phi)
    })
}

/// The su(3) algebra used by this module (basis `δ₁, δ₂, δ₃, f₁, …, f₄, ξ′`).
pub fn su3() -> &'static LieAlgebra {
    &su3_data().0
}

/// The Cartan 3-form of su(3) for the metric `−tr(xy)`.
pub fn su3_cartan_form() -> &'static KForm {
    &su3_data().1
}

/// Coefficients of the linear functional `v ↦ Im((g·v)₁₁)` on su(3).
pub fn defining_functional(g: &SU3Element) -> Vec<RealScalar> {
    let basis = su3().realization().expect("realized");
    basis.iter().map(|b| (0..3).map(|m| g.matrix().get(0, m) * b.get(m, 0)).sum::<ComplexScalar>().im).collect()
}

/// Seven vectors of su(3) spanning `W_g = {v : Im((g·v)₁₁) = 0}`, the tangent
/// space of X⁷ at `g` translated back to the identity.
#[derive(Clone, Debug)]
pub struct TangentFrame {
    pub base: SU3Element,
    pub vectors: Vec<Vec<RealScalar>>,
}

impl TangentFrame {
    pub fn rank(&self) -> usize {
        linalg::rank(&self.vectors)
    }
}

/// Null-space frame of the defining functional. With pivot `k` the last
/// coordinate where the functional is nonzero, the frame is
/// `e_j − (λ_j/λ_k) e_k` for `j ≠ k`; at the identity this is exactly
/// `(δ₁, δ₂, δ₃, f₁, f₂, f₃, f₄)`.
pub fn tangent_frame(g: &SU3Element) -> Result<TangentFrame, Error> {
    if !in_x7(g) {
        return Err(Error::NotOnLevelSet);
    }
    let lambda = defining_functional(g);
    let k = lambda.iter().rposition(|x| !x.is_zero()).ok_or(Error::SingularPoint)?;
    let inv = lambda[k].inverse()?;
    let vectors = (0..lambda.len())
        .filter(|&j| j != k)
        .map(|j| {
            let mut v = vec![RealScalar::zero(); lambda.len()];
            v[j] = RealScalar::one();
            v[k] = -(&lambda[j] * &inv);
            v
        })
        .collect();
    Ok(TangentFrame { base: g.clone(), vectors })
}

/// The 3-form `(a, b, c) ↦ φ(v_a, v_b, v_c)` on the span of the given su(3)
/// vectors, in the basis dual to them.
pub fn restrict_to(vectors: &[Vec<RealScalar>]) -> Result<KForm, Error> {
    let phi = su3_cartan_form();
    let n = vectors.len();
    let vs: Vec<Vector> = vectors.iter().map(|v| Vector(v.clone())).collect();
    let mut terms = Vec::new();
    for t in index_tuples(n, 3) {
        let args: Vec<Vector> = t.indices().map(|i| vs[i].clone()).collect();
        let c = phi.eval(&args)?;
        if !c.is_zero() {
            terms.push((t.one_based(), c));
        }
    }
    KForm::from_terms(n, 3, terms)
}

/// Restriction of the Cartan 3-form to `T_g X⁷`, expressed in the tangent frame.
/// By bi-invariance this is `φ` on `W_g ⊂ su(3)`.
pub fn restrict_cartan(g: &SU3Element) -> Result<KForm, Error> {
    restrict_to(&tangent_frame(g)?.vectors)
}

pub fn verify_at(g: &SU3Element) -> Result<TypeReport, Error> {
    classify::classify(&restrict_cartan(g)?)
}

/// Whether `W_α` equals `W_e` as subspaces of su(3) for the rotation `α = so2_1(p)`.
pub fn translate_check(p: &CirclePoint) -> bool {
    let (Ok(at_alpha), Ok(at_e)) = (tangent_frame(&so2_1(p)), tangent_frame(&SU3Element::identity())) else {
        return false;
    };
    let stacked: Matrix = at_alpha.vectors.into_iter().chain(at_e.vectors).collect();
    linalg::rank(&stacked) == 7
}

/// Membership of `embed_su2(q₁) · g · embed_su2(q₂)` in X⁷.
pub fn invariance_check(g: &SU3Element, q1: &RationalQuaternion, q2: &RationalQuaternion) -> bool {
    in_x7(&embed_su2(q1).mul(g).mul(&embed_su2(q2)))
}

/// The expected restriction at the identity in the frame `(δ₁,δ₂,δ₃,f₁,f₂,f₃,f₄)`:
///
/// `√2 δ₁∧δ₂∧δ₃ + (1/√2)(ω₁∧δ₁ + ω₂∧δ₂ + ω₃∧δ₃)` with
/// `2ω₁ = −F₁∧F₂ + F₃∧F₄`, `2ω₂ = −F₁∧F₃ − F₂∧F₄`, `2ω₃ = −F₁∧F₄ + F₂∧F₃`,
/// where `F₁ = (e₁₂ − e₂₁) = √2 f₁`, `F₂ = i(e₁₂ + e₂₁) = √2 f₂`, and so on.
pub fn identity_reference_form() -> KForm {
    let cov = |i: usize| KForm::covector(7, i).expect("valid");
    let (d1, d2, d3) = (cov(1), cov(2), cov(3));
    let big_f = |j: usize| cov(3 + j).scale(&RealScalar::sqrt2());
    let w = |a: usize, b: usize| big_f(a).wedge(&big_f(b)).expect("same space");
    let half = RealScalar::frac(1, 2);
    let om1 = w(3, 4).sub(&w(1, 2)).unwrap().scale(&half);
    let om2 = w(1, 3).add(&w(2, 4)).unwrap().scale(&-half.clone());
    let om3 = w(2, 3).sub(&w(1, 4)).unwrap().scale(&half);
    let mut form = d1.wedge(&d2).and_then(|x| x.wedge(&d3)).unwrap().scale(&RealScalar::sqrt2());
    for (om, d) in [(om1, &d1), (om2, &d2), (om3, &d3)] {
        form = form.add(&om.wedge(d).unwrap().scale(&RealScalar::inv_sqrt2())).unwrap();
    }
    form
}

/// Frozen coefficient list of the restriction at the identity (KForm JSON).
pub const IDENTITY_GOLDEN: &str = include_str!("../golden/identity_restriction.json");

/// Compares `restrict_cartan(identity)` against the frozen golden file.
pub fn identity_golden_match() -> Result<bool, Error> {
    Ok(restrict_cartan(&SU3Element::identity())? == KForm::from_json(IDENTITY_GOLDEN)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Verdict;
    use crate::scalar::rat;

    fn q(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> RationalQuaternion {
        RationalQuaternion::new(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1), rat(d.0, d.1)).unwrap()
    }

    fn circle(c: (i64, i64), s: (i64, i64)) -> CirclePoint {
        CirclePoint::new(rat(c.0, c.1), rat(s.0, s.1)).unwrap()
    }

    fn cz(re: (i64, i64), im: (i64, i64)) -> ComplexScalar {
        ComplexScalar::from_rationals(rat(re.0, re.1), rat(im.0, im.1))
    }

    #[test]
    fn unit_checks() {
        assert!(RationalQuaternion::new(rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1)).is_err());
        assert!(CirclePoint::new(rat(1, 2), rat(1, 2)).is_err());
        let u = RationalQuaternion::cayley(rat(1, 3), rat(-2, 5), rat(7, 11));
        assert!(RationalQuaternion::new(u.a.clone(), u.b.clone(), u.c.clone(), u.d.clone()).is_ok());
        let p = CirclePoint::from_parameter(rat(2, 7));
        assert!(CirclePoint::new(p.c.clone(), p.s.clone()).is_ok());
    }

    #[test]
    fn su2_embedding() {
        assert_eq!(embed_su2(&RationalQuaternion::identity()), SU3Element::identity());
        let g = embed_su2(&q((3, 5), (4, 5), (0, 1), (0, 1)));
        let mut want = CMat3::identity();
        want.0[1][1] = cz((3, 5), (4, 5));
        want.0[2][2] = cz((3, 5), (-4, 5));
        assert_eq!(g.matrix(), &want);
        assert!(SU3Element::new(g.matrix().clone()).is_ok());
        assert_eq!(g.projection(), SU3Element::identity().projection());
    }

    #[test]
    fn su2_embedding_is_a_homomorphism() {
        let a = RationalQuaternion::cayley(rat(1, 2), rat(-1, 3), rat(2, 5));
        let b = RationalQuaternion::cayley(rat(-3, 4), rat(1, 7), rat(0, 1));
        assert_eq!(embed_su2(&a).mul(&embed_su2(&b)), embed_su2(&a.mul(&b)));
    }

    #[test]
    fn rotations() {
        assert_eq!(so2_1(&CirclePoint::identity()), SU3Element::identity());
        let a = so2_1(&circle((3, 5), (4, 5)));
        assert_eq!(a.projection(), [cz((3, 5), (0, 1)), cz((4, 5), (0, 1)), cz((0, 1), (0, 1))]);
        assert!(in_x7(&a));
        assert!(SU3Element::new(a.matrix().clone()).is_ok());
    }

    #[test]
    fn membership() {
        assert!(in_x7(&SU3Element::identity()));
        // diag(i, i, −1) has determinant i·i·(−1) = 1
        let mut m = CMat3::zero();
        m.0[0][0] = ComplexScalar::i();
        m.0[1][1] = ComplexScalar::i();
        m.0[2][2] = -ComplexScalar::one();
        let g = SU3Element::new(m).unwrap();
        assert!(!in_x7(&g));
        assert_eq!(tangent_frame(&g).unwrap_err(), Error::NotOnLevelSet);
    }

    #[test]
    fn su3_element_rejects_non_members() {
        let mut m = CMat3::identity();
        m.0[0][1] = ComplexScalar::one();
        assert!(SU3Element::new(m).is_err());
        let m = CMat3::identity().scale(&-ComplexScalar::one());
        assert!(SU3Element::new(m).is_err(), "det(−I) = −1");
    }

    #[test]
    fn sample_point_g11_by_direct_multiplication() {
        let q1 = RationalQuaternion::cayley(rat(2, 3), rat(1, 5), rat(-1, 2));
        let q2 = RationalQuaternion::cayley(rat(-1, 4), rat(3, 7), rat(1, 9));
        let p = CirclePoint::from_parameter(rat(3, 8));
        let x = sample_point(&q1, &p, &q2);
        assert!(in_x7(&x));
        assert!(SU3Element::new(x.matrix().clone()).is_ok());
        // g₁ fixes e₁ and g₂ has first row e₁ᵀ, so x₁₁ = α₁₁ = c.
        assert_eq!(x.g11(), &ComplexScalar::from_rationals(p.c.clone(), Rational::zero()));
    }

    #[test]
    fn factor_point_examples() {
        let base = SpherePoint::new(rat(1, 1), ComplexScalar::zero(), ComplexScalar::zero()).unwrap();
        assert_eq!(factor_point(&base).unwrap(), (RationalQuaternion::identity(), CirclePoint::identity()));

        let v = SpherePoint::new(rat(3, 5), cz((4, 5), (0, 1)), ComplexScalar::zero()).unwrap();
        assert_eq!(factor_point(&v).unwrap(), (RationalQuaternion::identity(), circle((3, 5), (4, 5))));

        let v = SpherePoint::new(rat(0, 1), ComplexScalar::zero(), ComplexScalar::one()).unwrap();
        let (qq, p) = factor_point(&v).unwrap();
        assert_eq!(p, circle((0, 1), (1, 1)));
        let u = qq.su2_matrix();
        assert_eq!((u[0][0].clone(), u[1][0].clone()), (ComplexScalar::zero(), ComplexScalar::one()));
    }

    #[test]
    fn factor_point_errors() {
        // c = 1/2: s = √3/2 is irrational
        let v = SpherePoint::new(rat(1, 2), cz((1, 2), (0, 1)), cz((1, 2), (1, 2))).unwrap();
        assert!(matches!(factor_point(&v), Err(Error::Exactness(_))));
        assert!(SpherePoint::new(rat(1, 2), ComplexScalar::zero(), ComplexScalar::zero()).is_err());
    }

    #[test]
    fn frame_at_identity_is_the_standard_one() {
        let f = tangent_frame(&SU3Element::identity()).unwrap();
        let want: Vec<Vec<RealScalar>> = (0..7).map(|i| su3().basis_vector(i)).collect();
        assert_eq!(f.vectors, want);
        assert_eq!(f.rank(), 7);
    }

    #[test]
    fn frame_vectors_satisfy_the_functional() {
        let x = sample_point(
            &RationalQuaternion::cayley(rat(1, 2), rat(1, 3), rat(1, 4)),
            &CirclePoint::from_parameter(rat(5, 6)),
            &RationalQuaternion::cayley(rat(-2, 3), rat(0, 1), rat(3, 2)),
        );
        let f = tangent_frame(&x).unwrap();
        let lambda = defining_functional(&x);
        for v in &f.vectors {
            assert!(v.iter().zip(&lambda).map(|(a, b)| a * b).sum::<RealScalar>().is_zero());
        }
        assert_eq!(f.rank(), 7);
    }

    #[test]
    fn restriction_at_identity_matches_reference() {
        let got = restrict_cartan(&SU3Element::identity()).unwrap();
        assert_eq!(got, identity_reference_form());
        assert_eq!(got.coeff(&[4, 5, 1]), -RealScalar::inv_sqrt2());
        assert!(identity_golden_match().unwrap());
    }

    #[test]
    fn restriction_is_frame_covariant() {
        // Frame B = frame A · M for an invertible M; restriction in B is M*(restriction in A).
        let x = sample_point(
            &RationalQuaternion::cayley(rat(1, 5), rat(-1, 2), rat(0, 1)),
            &CirclePoint::from_parameter(rat(1, 3)),
            &RationalQuaternion::identity(),
        );
        let a = tangent_frame(&x).unwrap().vectors;
        let mut m = linalg::identity(7);
        m[0][1] = RealScalar::from_int(2);
        m[3][6] = RealScalar::sqrt2();
        m[5][5] = RealScalar::frac(-1, 3);
        let b: Vec<Vec<RealScalar>> =
            (0..7).map(|j| (0..8).map(|c| (0..7).map(|i| &a[i][c] * &m[i][j]).sum()).collect()).collect();
        let map = crate::exterior::LinearMap::new(m).unwrap();
        assert_eq!(restrict_to(&b).unwrap(), restrict_to(&a).unwrap().pullback(&map).unwrap());
    }

    #[test]
    fn verdicts_at_special_points() {
        assert_eq!(verify_at(&SU3Element::identity()).unwrap().verdict, Verdict::SplitStable);
        let r = verify_at(&so2_1(&circle((5, 13), (12, 13)))).unwrap();
        assert_eq!(r.verdict, Verdict::SplitStable);
        assert_eq!(r.stabilizer_dim, 14);
    }

    #[test]
    fn degenerate_where_g11_vanishes() {
        // x₁₁ = cos α for every sample, and the restricted form drops rank there.
        for p in [circle((0, 1), (1, 1)), circle((0, 1), (-1, 1))] {
            let x = sample_point(
                &RationalQuaternion::cayley(rat(1, 3), rat(-2, 5), rat(4, 7)),
                &p,
                &RationalQuaternion::cayley(rat(-3, 2), rat(1, 1), rat(0, 1)),
            );
            assert!(x.g11().is_zero());
            assert_eq!(tangent_frame(&x).unwrap().rank(), 7);
            let r = verify_at(&x).unwrap();
            assert_eq!(r.verdict, Verdict::NotStable);
            assert_eq!(r.signature, [2, 2]);
            assert_eq!(r.b_rank, 4);
            assert_eq!(r.stabilizer_dim, 15);
        }
    }

    #[test]
    fn translated_tangent_spaces() {
        assert!(translate_check(&CirclePoint::identity()));
        assert!(translate_check(&circle((-1, 1), (0, 1))));
        // W_α = {c·Im v₁₁ − s·Im v₁₂ = 0} differs from W_e = {Im v₁₁ = 0} once s ≠ 0.
        assert!(!translate_check(&circle((3, 5), (4, 5))));
        let lambda = defining_functional(&so2_1(&circle((3, 5), (4, 5))));
        assert!(!lambda[4].is_zero(), "f₂ direction enters the functional at α");
    }

    #[test]
    fn sandwich_preserves_membership() {
        let q1 = RationalQuaternion::cayley(rat(3, 2), rat(-1, 1), rat(2, 9));
        let q2 = RationalQuaternion::cayley(rat(0, 1), rat(5, 4), rat(-7, 3));
        assert!(invariance_check(&SU3Element::identity(), &q1, &q2));
        assert!(invariance_check(&so2_1(&circle((8, 17), (15, 17))), &q1, &q2));
    }
}
