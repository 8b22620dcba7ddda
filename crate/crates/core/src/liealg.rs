//! Finite-dimensional real Lie algebras given by structure constants over Q(√2).
//!
//! Includes the Killing form, the Cartan 3-form `φ(X,Y,Z) = ⟨X,[Y,Z]⟩`, the
//! Chevalley–Eilenberg differential on left-invariant forms, and builders for
//! su(2) and su(3) in the basis
//!
//! ```text
//! δ₁ = (i/√2)(e₂₂ − e₃₃)   δ₂ = (e₂₃ − e₃₂)/√2     δ₃ = (i/√2)(e₂₃ + e₃₂)
//! f₁ = (e₁₂ − e₂₁)/√2      f₂ = i(e₁₂ + e₂₁)/√2    f₃ = (e₁₃ − e₃₁)/√2
//! f₄ = i(e₁₃ + e₃₁)/√2     ξ′ = i(2e₁₁ − e₂₂ − e₃₃)
//! ```
//!
//! The first seven are orthonormal for `⟨x,y⟩ = −tr(xy)`; `ξ′` is orthogonal
//! to them with `⟨ξ′,ξ′⟩ = 6` (normalizing it would need √6 ∉ Q(√2)).

use serde::{Deserialize, Serialize};

use num_traits::{One, Zero};

use crate::cmat::CMat3;
use crate::error::Error;
use crate::exterior::{index_tuples, KForm};
use crate::linalg::{self, Matrix};
use crate::scalar::{ComplexScalar, RealScalar};

/// Basis labels of the su(3) builder, in order.
pub const SU3_LABELS: [&str; 8] = ["d1", "d2", "d3", "f1", "f2", "f3", "f4", "xi"];

/// Symmetric bilinear form on a Lie algebra, as a Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct(Matrix);

impl InnerProduct {
    pub fn new(gram: Matrix) -> Result<Self, Error> {
        if !linalg::is_symmetric(&gram) {
            return Err(Error::NotSymmetric);
        }
        Ok(InnerProduct(gram))
    }

    pub fn gram(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: &[RealScalar], y: &[RealScalar]) -> RealScalar {
        self.0
            .iter()
            .zip(x)
            .filter(|(_, xi)| !xi.is_zero())
            .map(|(row, xi)| xi * &row.iter().zip(y).map(|(g, yj)| g * yj).sum::<RealScalar>())
            .sum()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.0)
    }
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    dim: usize,
    /// `table[i][j]` = coordinates of `[e_i, e_j]`; antisymmetric by construction.
    table: Vec<Vec<Vec<RealScalar>>>,
    labels: Vec<String>,
    realization: Option<Vec<CMat3>>,
}

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    coeffs: Vec<RealScalar>,
}

/// On-disk form: `{"dim": n, "brackets": [{"i", "j", "coeffs"}]}`, 1-based `i < j`.
#[derive(Serialize, Deserialize)]
struct LieAlgebraFile {
    dim: usize,
    brackets: Vec<BracketEntry>,
}

impl LieAlgebra {
    /// Builds from brackets `[e_i, e_j]` with 0-based `i < j`; omitted pairs
    /// are zero. Does not check the Jacobi identity.
    pub fn from_brackets<I>(dim: usize, brackets: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize, Vec<RealScalar>)>,
    {
        let mut table = vec![vec![vec![RealScalar::zero(); dim]; dim]; dim];
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, coeffs) in brackets {
            if i >= j || j >= dim {
                return Err(Error::InvalidInput(format!("bracket index pair ({}, {})", i + 1, j + 1)));
            }
            if coeffs.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: coeffs.len() });
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidInput(format!("bracket ({}, {}) listed twice", i + 1, j + 1)));
            }
            table[j][i] = coeffs.iter().map(|c| -c).collect();
            table[i][j] = coeffs;
        }
        let labels = (1..=dim).map(|k| format!("e{k}")).collect();
        Ok(LieAlgebra { dim, table, labels, realization: None })
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_brackets(dim, []).expect("no brackets")
    }

    /// Builds from a matrix realization; brackets are matrix commutators
    /// expanded in the given basis, which must be linearly independent and
    /// closed under commutators.
    pub fn from_realization(basis: Vec<CMat3>, labels: Vec<String>) -> Result<Self, Error> {
        let dim = basis.len();
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let c = basis[i].commutator(&basis[j]);
                brackets.push((i, j, coordinates_in(&basis, &c)?));
            }
        }
        let mut g = Self::from_brackets(dim, brackets)?;
        g.labels = labels;
        g.realization = Some(basis);
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn realization(&self) -> Option<&[CMat3]> {
        self.realization.as_deref()
    }

    /// Coordinates of `[e_i, e_j]` (0-based).
    pub fn structure_constants(&self, i: usize, j: usize) -> &[RealScalar] {
        &self.table[i][j]
    }

    /// Standard basis vector.
    pub fn basis_vector(&self, i: usize) -> Vec<RealScalar> {
        let mut v = vec![RealScalar::zero(); self.dim];
        v[i] = RealScalar::one();
        v
    }

    pub fn bracket(&self, x: &[RealScalar], y: &[RealScalar]) -> Result<Vec<RealScalar>, Error> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
            }
        }
        let mut out = vec![RealScalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if i == j {
                    continue;
                }
                let f = xi * yj;
                for (o, c) in out.iter_mut().zip(&self.table[i][j]) {
                    if !c.is_zero() {
                        *o += &(&f * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad x`, column `j` = `[x, e_j]`.
    pub fn ad(&self, x: &[RealScalar]) -> Result<Matrix, Error> {
        let cols: Vec<Vec<RealScalar>> =
            (0..self.dim).map(|j| self.bracket(x, &self.basis_vector(j))).collect::<Result<_, _>>()?;
        Ok(linalg::transpose(&cols))
    }

    /// Jacobi identity on all basis triples.
    pub fn jacobi_check(&self) -> bool {
        let e = |i| self.basis_vector(i);
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let terms = [
                        self.bracket(&e(i), &self.table[j][k]),
                        self.bracket(&e(j), &self.table[k][i]),
                        self.bracket(&e(k), &self.table[i][j]),
                    ];
                    let mut sum = vec![RealScalar::zero(); self.dim];
                    for t in terms {
                        for (s, x) in sum.iter_mut().zip(t.expect("matching dims")) {
                            *s += &x;
                        }
                    }
                    if sum.iter().any(|x| !x.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `κ(x, y) = tr(ad x ∘ ad y)`.
    pub fn killing_form(&self) -> InnerProduct {
        let ads: Vec<Matrix> = (0..self.dim).map(|i| self.ad(&self.basis_vector(i)).expect("basis vector")).collect();
        let mut gram = linalg::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let p = linalg::mat_mul(&ads[i], &ads[j]);
                let tr: RealScalar = (0..self.dim).map(|k| p[k][k].clone()).sum();
                gram[i][j] = tr.clone();
                gram[j][i] = tr;
            }
        }
        InnerProduct(gram)
    }

    /// Cartan's criterion: the Killing form is nondegenerate.
    pub fn is_semisimple(&self) -> bool {
        self.killing_form().rank() == self.dim
    }

    /// `⟨x, y⟩ = −Re tr(xy)` on the matrix realization.
    pub fn neg_trace_form(&self) -> Result<InnerProduct, Error> {
        let basis =
            self.realization.as_ref().ok_or_else(|| Error::InvalidInput("algebra has no matrix realization".into()))?;
        Ok(InnerProduct(neg_trace_gram(basis)))
    }

    /// Default metric: the negative trace form when a realization exists,
    /// otherwise the Killing form.
    pub fn default_metric(&self) -> InnerProduct {
        self.neg_trace_form().unwrap_or_else(|_| self.killing_form())
    }

    /// Whether `⟨[z,x],y⟩ + ⟨x,[z,y]⟩ = 0` for all basis `x, y, z`.
    pub fn is_ad_invariant(&self, m: &InnerProduct) -> bool {
        if m.dim() != self.dim {
            return false;
        }
        // M·ad(z) must be antisymmetric for each basis z.
        (0..self.dim).all(|z| {
            let ad = self.ad(&self.basis_vector(z)).expect("basis vector");
            let p = linalg::mat_mul(m.gram(), &ad);
            (0..self.dim).all(|i| (i..self.dim).all(|j| (&p[i][j] + &p[j][i]).is_zero()))
        })
    }

    /// `φ(X, Y, Z) = ⟨X, [Y, Z]⟩`. Rejects metrics that are not ad-invariant.
    pub fn cartan_3form(&self, m: &InnerProduct) -> Result<KForm, Error> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: m.dim() });
        }
        if !self.is_ad_invariant(m) {
            return Err(Error::NotAdInvariant);
        }
        let value = |a: usize, b: usize, c: usize| -> RealScalar {
            self.table[b][c].iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(d, x)| x * &m.gram()[a][d]).sum()
        };
        let mut terms = Vec::new();
        for t in index_tuples(self.dim, 3) {
            let idx: Vec<usize> = t.indices().collect();
            let (a, b, c) = (idx[0], idx[1], idx[2]);
            let v = value(a, b, c);
            // ad-invariance makes φ totally antisymmetric
            debug_assert_eq!(v, value(b, c, a));
            debug_assert_eq!(v, -value(b, a, c));
            terms.push((t.one_based(), v));
        }
        KForm::from_terms(self.dim, 3, terms.into_iter().filter(|(_, v)| !v.is_zero()))
    }

    /// Chevalley–Eilenberg differential
    /// `dω(x₀,…,x_k) = Σ_{i<j} (−1)^{i+j} ω([xᵢ,xⱼ], x₀,…,x̂ᵢ,…,x̂ⱼ,…,x_k)`.
    pub fn ce_differential(&self, omega: &KForm) -> Result<KForm, Error> {
        if omega.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: omega.dim() });
        }
        let k = omega.degree();
        if k >= self.dim {
            return Err(Error::DegreeOutOfRange { degree: k + 1, dim: self.dim });
        }
        let mut terms = Vec::new();
        for t in index_tuples(self.dim, k + 1) {
            let xs: Vec<usize> = t.indices().collect();
            let mut total = RealScalar::zero();
            for i in 0..xs.len() {
                for j in (i + 1)..xs.len() {
                    let rest: Vec<usize> =
                        xs.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &x)| x + 1).collect();
                    let mut inner = RealScalar::zero();
                    for (d, c) in self.table[xs[i]][xs[j]].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut idx = Vec::with_capacity(k);
                        idx.push(d + 1);
                        idx.extend_from_slice(&rest);
                        inner += &(c * &omega.coeff(&idx));
                    }
                    if (i + j) % 2 == 1 {
                        total -= &inner;
                    } else {
                        total += &inner;
                    }
                }
            }
            if !total.is_zero() {
                terms.push((t.one_based(), total));
            }
        }
        KForm::from_terms(self.dim, k + 1, terms)
    }

    /// `self ⊕ other`, basis of `self` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut brackets = Vec::new();
        for (off, g) in [(0, self), (self.dim, other)] {
            for i in 0..g.dim {
                for j in (i + 1)..g.dim {
                    let mut v = vec![RealScalar::zero(); n];
                    for (d, c) in g.table[i][j].iter().enumerate() {
                        v[off + d] = c.clone();
                    }
                    brackets.push((off + i, off + j, v));
                }
            }
        }
        let mut sum = LieAlgebra::from_brackets(n, brackets).expect("valid brackets");
        sum.labels = self.labels.iter().chain(&other.labels).cloned().collect();
        sum
    }

    /// Parses the JSON file format and runs the Jacobi check.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let file: LieAlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.dim == 0 || file.dim > crate::exterior::MAX_DIM {
            return Err(Error::UnsupportedDimension(file.dim));
        }
        let mut entries = Vec::with_capacity(file.brackets.len());
        for b in file.brackets {
            if b.i == 0 || b.j == 0 {
                return Err(Error::InvalidInput(format!("bracket indices are 1-based, got ({}, {})", b.i, b.j)));
            }
            entries.push((b.i - 1, b.j - 1, b.coeffs));
        }
        let g = Self::from_brackets(file.dim, entries)?;
        if !g.jacobi_check() {
            return Err(Error::JacobiFailure);
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.table[i][j].iter().any(|c| !c.is_zero()) {
                    brackets.push(BracketEntry { i: i + 1, j: j + 1, coeffs: self.table[i][j].clone() });
                }
            }
        }
        serde_json::to_string_pretty(&LieAlgebraFile { dim: self.dim, brackets }).expect("serializable")
    }
}

fn neg_trace_gram(basis: &[CMat3]) -> Matrix {
    let n = basis.len();
    let mut gram = linalg::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = -(&basis[i] * &basis[j]).trace().re;
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
    }
    gram
}

/// Real coordinates of `m` in `basis`, via the Gram system of the real inner
/// product `Re tr(x y*)`. Errors if `m` is not in the real span.
pub fn coordinates_in(basis: &[CMat3], m: &CMat3) -> Result<Vec<RealScalar>, Error> {
    let real_ip = |x: &CMat3, y: &CMat3| (x * &y.adjoint()).trace().re;
    let n = basis.len();
    let gram: Matrix = (0..n).map(|i| (0..n).map(|j| real_ip(&basis[i], &basis[j])).collect()).collect();
    let rhs: Vec<RealScalar> = basis.iter().map(|b| real_ip(m, b)).collect();
    let x = linalg::solve(&gram, &rhs)?;
    let back = combine(basis, &x);
    if &back != m {
        return Err(Error::InvalidInput("matrix is not in the span of the basis".into()));
    }
    Ok(x)
}

/// `Σ xᵢ basisᵢ`.
pub fn combine(basis: &[CMat3], x: &[RealScalar]) -> CMat3 {
    basis.iter().zip(x).filter(|(_, c)| !c.is_zero()).fold(CMat3::zero(), |acc, (b, c)| &acc + &b.scale_real(c))
}

/// The su(3) basis matrices `(δ₁, δ₂, δ₃, f₁, f₂, f₃, f₄, ξ′)`.
pub fn su3_basis() -> Vec<CMat3> {
    let e = CMat3::unit;
    let i = ComplexScalar::i();
    let r = RealScalar::inv_sqrt2();
    let d1 = (&e(2, 2) - &e(3, 3)).scale(&i).scale_real(&r);
    let d2 = (&e(2, 3) - &e(3, 2)).scale_real(&r);
    let d3 = (&e(2, 3) + &e(3, 2)).scale(&i).scale_real(&r);
    let f1 = (&e(1, 2) - &e(2, 1)).scale_real(&r);
    let f2 = (&e(1, 2) + &e(2, 1)).scale(&i).scale_real(&r);
    let f3 = (&e(1, 3) - &e(3, 1)).scale_real(&r);
    let f4 = (&e(1, 3) + &e(3, 1)).scale(&i).scale_real(&r);
    let xi = (&(&e(1, 1).scale_real(&RealScalar::from_int(2)) - &e(2, 2)) - &e(3, 3)).scale(&i);
    vec![d1, d2, d3, f1, f2, f3, f4, xi]
}

/// su(2) as the span of `(δ₁, δ₂, δ₃)`, the stabilizer of `e₁` in su(3).
pub fn build_su2() -> LieAlgebra {
    let basis = su3_basis().into_iter().take(3).collect();
    LieAlgebra::from_realization(basis, SU3_LABELS[..3].iter().map(|s| s.to_string()).collect())
        .expect("su(2) basis is closed")
}

pub fn build_su3() -> LieAlgebra {
    LieAlgebra::from_realization(su3_basis(), SU3_LABELS.iter().map(|s| s.to_string()).collect())
        .expect("su(3) basis is closed")
}
