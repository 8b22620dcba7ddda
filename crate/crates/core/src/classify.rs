//! GL(7)-orbit type of a 3-form on a 7-dimensional space.
//!
//! The verdict comes from the symmetric pairing
//! `B(x, y) = [(x⌟ω) ∧ (y⌟ω) ∧ ω]_{1…7}` (coefficient of `e¹∧…∧e⁷`):
//! nondegenerate and definite for G₂-type, nondegenerate of signature {3,4}
//! for split G̃₂-type, degenerate otherwise. The stabilizer dimension in gl(7)
//! is computed independently and must agree (14 exactly for stable forms).

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exterior::{index_tuples, KForm};
use crate::linalg::{self, Matrix};
use crate::scalar::RealScalar;

const N: usize = 7;

/// Stabilizer dimension of a stable 3-form: dim GL(7) − dim Λ³ = 49 − 35.
pub const STABLE_STABILIZER_DIM: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// G₂-type.
    DefiniteStable,
    /// G̃₂-type.
    SplitStable,
    NotStable,
}

/// Inertia of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    /// `{p, q}` as an ascending pair, independent of the overall sign of B.
    pub fn unordered(&self) -> [usize; 2] {
        let (a, b) = (self.positive, self.negative);
        [a.min(b), a.max(b)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeReport {
    pub verdict: Verdict,
    pub signature: [usize; 2],
    pub stabilizer_dim: usize,
    pub b_rank: usize,
}

/// Basis of the stabilizer subalgebra `{A ∈ gl(7) : A·ω = 0}`.
#[derive(Clone, Debug)]
pub struct StabilizerBasis {
    pub elements: Vec<Matrix>,
}

impl StabilizerBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

fn check_shape(omega: &KForm) -> Result<(), Error> {
    if omega.dim() != N || omega.degree() != 3 {
        return Err(Error::WrongShape {
            expected_dim: N,
            expected_degree: 3,
            dim: omega.dim(),
            degree: omega.degree(),
        });
    }
    Ok(())
}

/// The symmetric 7×7 matrix `B_ij = [(e_i⌟ω) ∧ (e_j⌟ω) ∧ ω]_{1…7}`.
pub fn b_matrix(omega: &KForm) -> Result<Matrix, Error> {
    check_shape(omega)?;
    let contractions: Vec<KForm> = (0..N).map(|i| omega.contract_basis(i)).collect::<Result<_, _>>()?;
    let top: Vec<usize> = (1..=N).collect();
    let mut b = linalg::zeros(N, N);
    for i in 0..N {
        for j in i..N {
            let v = contractions[i].wedge(&contractions[j])?.wedge(omega)?.coeff(&top);
            b[i][j] = v.clone();
            b[j][i] = v;
        }
    }
    Ok(b)
}

/// Exact inertia of a symmetric matrix.
pub fn signature(m: &Matrix) -> Result<Signature, Error> {
    let (positive, negative, zero) = linalg::inertia(m)?;
    Ok(Signature { positive, negative, zero })
}

/// The derivation action `(A·ω)(x,y,z) = ω(Ax,y,z) + ω(x,Ay,z) + ω(x,y,Az)`,
/// written as `Σ_{a,b} A_ab e^b ∧ (e_a ⌟ ω)`.
pub fn derivation(a: &Matrix, omega: &KForm) -> Result<KForm, Error> {
    let n = omega.dim();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: a.len() });
    }
    let mut out = KForm::zero(n, omega.degree())?;
    for (r, row) in a.iter().enumerate() {
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        let c = omega.contract_basis(r)?;
        for (s, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let term = KForm::covector(n, s + 1)?.wedge(&c)?;
            out = out.add(&term.scale(x))?;
        }
    }
    Ok(out)
}

/// Coefficient matrix (35 × 49) of `A ↦ A·ω`, columns indexed by `7a + b`
/// for the matrix unit `E_ab`.
fn derivation_system(omega: &KForm) -> Result<Matrix, Error> {
    let rows = index_tuples(N, 3);
    let mut m = linalg::zeros(rows.len(), N * N);
    for a in 0..N {
        let c = omega.contract_basis(a)?;
        if c.is_zero() {
            continue;
        }
        for b in 0..N {
            let image = KForm::covector(N, b + 1)?.wedge(&c)?;
            for (r, t) in rows.iter().enumerate() {
                m[r][N * a + b] = image.coeff(&t.one_based());
            }
        }
    }
    Ok(m)
}

/// Exact null-space basis of the derivation system.
pub fn stabilizer(omega: &KForm) -> Result<StabilizerBasis, Error> {
    check_shape(omega)?;
    let sys = derivation_system(omega)?;
    let elements =
        linalg::nullspace(&sys, N * N).into_iter().map(|v| v.chunks(N).map(<[RealScalar]>::to_vec).collect()).collect();
    Ok(StabilizerBasis { elements })
}

/// Stabilizer dimension via exact rank only (no basis).
pub fn stabilizer_dim(omega: &KForm) -> Result<usize, Error> {
    check_shape(omega)?;
    Ok(N * N - linalg::rank(&derivation_system(omega)?))
}

/// Orbit type of `ω`. The signature-based verdict is cross-checked against
/// the stabilizer dimension; disagreement is an `Inconsistent` error.
pub fn classify(omega: &KForm) -> Result<TypeReport, Error> {
    check_shape(omega)?;
    let b = b_matrix(omega)?;
    let sig = signature(&b)?;
    let b_rank = N - sig.zero;
    let stabilizer_dim = stabilizer_dim(omega)?;
    let pair = sig.unordered();
    let verdict = if b_rank < N {
        Verdict::NotStable
    } else if pair == [0, 7] {
        Verdict::DefiniteStable
    } else if pair == [3, 4] {
        Verdict::SplitStable
    } else {
        return Err(Error::Inconsistent(format!(
            "nondegenerate B with signature {pair:?}, expected {{7,0}} or {{3,4}}"
        )));
    };
    let stable = verdict != Verdict::NotStable;
    if stable != (stabilizer_dim == STABLE_STABILIZER_DIM) {
        return Err(Error::Inconsistent(format!(
            "verdict {verdict:?} (B rank {b_rank}) but stabilizer dimension {stabilizer_dim}"
        )));
    }
    Ok(TypeReport { verdict, signature: pair, stabilizer_dim, b_rank })
}
