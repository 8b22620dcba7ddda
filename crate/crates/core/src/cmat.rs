//! 3×3 matrices over Q(√2, i).

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{ComplexScalar, RealScalar};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CMat3(pub [[ComplexScalar; 3]; 3]);

impl CMat3 {
    pub fn zero() -> Self {
        CMat3::default()
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = ComplexScalar::one();
        }
        m
    }

    /// Matrix unit `e_ij` (1-based, as in `e₁₂`).
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.0[i - 1][j - 1] = ComplexScalar::one();
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &ComplexScalar {
        &self.0[i][j]
    }

    pub fn scale(&self, c: &ComplexScalar) -> Self {
        CMat3(self.0.clone().map(|row| row.map(|x| &x * c)))
    }

    pub fn scale_real(&self, c: &RealScalar) -> Self {
        CMat3(self.0.clone().map(|row| row.map(|x| x.scale(c))))
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &CMat3) -> CMat3 {
        &(self * other) - &(other * self)
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..3).map(|i| self.0[i][i].clone()).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat3 {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn det(&self) -> ComplexScalar {
        let a = &self.0;
        let minor =
            |r1: usize, r2: usize, c1: usize, c2: usize| &(&a[r1][c1] * &a[r2][c2]) - &(&a[r1][c2] * &a[r2][c1]);
        &(&(&a[0][0] * &minor(1, 2, 1, 2)) - &(&a[0][1] * &minor(1, 2, 0, 2))) + &(&a[0][2] * &minor(1, 2, 0, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    /// First column, i.e. the image of `e₁`.
    pub fn first_column(&self) -> [ComplexScalar; 3] {
        [self.0[0][0].clone(), self.0[1][0].clone(), self.0[2][0].clone()]
    }
}

impl<'a> Mul<&'a CMat3> for &CMat3 {
    type Output = CMat3;
    fn mul(self, rhs: &'a CMat3) -> CMat3 {
        let mut m = CMat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = (0..3).map(|k| &self.0[i][k] * &rhs.0[k][j]).sum();
            }
        }
        m
    }
}

impl<'a> Add<&'a CMat3> for &CMat3 {
    type Output = CMat3;
    fn add(self, rhs: &'a CMat3) -> CMat3 {
        let mut m = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] += &rhs.0[i][j];
            }
        }
        m
    }
}

impl<'a> Sub<&'a CMat3> for &CMat3 {
    type Output = CMat3;
    fn sub(self, rhs: &'a CMat3) -> CMat3 {
        self + &-rhs
    }
}

impl Neg for &CMat3 {
    type Output = CMat3;
    fn neg(self) -> CMat3 {
        CMat3(self.0.clone().map(|row| row.map(|x| -x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_multiply() {
        assert_eq!(&CMat3::unit(1, 2) * &CMat3::unit(2, 3), CMat3::unit(1, 3));
        assert!((&CMat3::unit(1, 2) * &CMat3::unit(1, 3)).is_zero());
    }

    #[test]
    fn determinant_and_trace() {
        let d = CMat3::identity().scale(&ComplexScalar::i());
        assert_eq!(d.det(), -ComplexScalar::i());
        assert_eq!(d.trace(), ComplexScalar::imag(RealScalar::from_int(3)));
        let p = &(&CMat3::unit(1, 2) + &CMat3::unit(2, 3)) + &CMat3::unit(3, 1);
        assert_eq!(p.det(), ComplexScalar::one());
    }

    #[test]
    fn adjoint_conjugates() {
        let m = CMat3::unit(1, 2).scale(&ComplexScalar::i());
        assert_eq!(m.adjoint(), CMat3::unit(2, 1).scale(&-ComplexScalar::i()));
    }
}
