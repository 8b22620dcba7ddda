//! Alternating multilinear forms on an n-dimensional real space (n ≤ 12).
//!
//! A `KForm` stores its coefficients sparsely, keyed by the bitmask of the
//! strictly increasing index tuple. Bit `i` stands for the covector `e^{i+1}`;
//! all public index tuples are 1-based.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::{self, Matrix};
use crate::scalar::RealScalar;

pub const MAX_DIM: usize = 12;

/// Strictly increasing set of 0-based basis indices, as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple(u16);

impl IndexTuple {
    /// Builds from 1-based indices; they must be strictly increasing and within `1..=dim`.
    pub fn from_one_based(indices: &[usize], dim: usize) -> Result<Self, Error> {
        let ok = indices.windows(2).all(|w| w[0] < w[1]) && indices.iter().all(|&i| (1..=dim).contains(&i));
        if !ok {
            return Err(Error::InvalidIndices(indices.to_vec()));
        }
        Ok(IndexTuple(indices.iter().fold(0u16, |m, &i| m | (1 << (i - 1)))))
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// 0-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn one_based(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }
}

/// All k-subsets of `0..n` in lexicographic order of their sorted tuples.
pub fn index_tuples(n: usize, k: usize) -> Vec<IndexTuple> {
    fn rec(start: usize, n: usize, k: usize, mask: u16, out: &mut Vec<IndexTuple>) {
        if k == 0 {
            out.push(IndexTuple(mask));
            return;
        }
        for i in start..=(n - k) {
            rec(i + 1, n, k - 1, mask | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// Sign of the permutation sorting the concatenation `a ++ b` (disjoint sets).
fn merge_sign(a: u16, b: u16) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

/// Coordinate vector in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector(pub Vec<RealScalar>);

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![RealScalar::zero(); dim])
    }

    /// Standard basis vector `e_{i+1}` (0-based `i`).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = RealScalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Square matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap(Matrix);

impl LinearMap {
    pub fn new(rows: Matrix) -> Result<Self, Error> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
        }
        Ok(LinearMap(rows))
    }

    pub fn identity(n: usize) -> Self {
        LinearMap(linalg::identity(n))
    }

    pub fn scalar(n: usize, c: &RealScalar) -> Self {
        Self::diagonal(&vec![c.clone(); n])
    }

    pub fn diagonal(d: &[RealScalar]) -> Self {
        let mut m = linalg::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[i][i] = x.clone();
        }
        LinearMap(m)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> &RealScalar {
        &self.0[i][j]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap(linalg::mat_mul(&self.0, &other.0))
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector(linalg::mat_vec(&self.0, &v.0))
    }

    pub fn determinant(&self) -> RealScalar {
        linalg::determinant(&self.0)
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }
}

/// Alternating k-form on an n-dimensional space.
#[derive(Clone, PartialEq, Eq)]
pub struct KForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<IndexTuple, RealScalar>,
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Result<Self, Error> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        if degree > dim {
            return Err(Error::DegreeOutOfRange { degree, dim });
        }
        Ok(KForm { dim, degree, coeffs: BTreeMap::new() })
    }

    /// The 0-form with value `c`.
    pub fn constant(dim: usize, c: RealScalar) -> Result<Self, Error> {
        let mut f = Self::zero(dim, 0)?;
        f.insert(IndexTuple(0), c);
        Ok(f)
    }

    /// Builds a form from `(1-based indices, coefficient)` pairs. Repeated index
    /// tuples are rejected.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vec<usize>, RealScalar)>,
    {
        let mut f = Self::zero(dim, degree)?;
        let mut seen = std::collections::BTreeSet::new();
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::InvalidIndices(idx));
            }
            let t = IndexTuple::from_one_based(&idx, dim)?;
            if !seen.insert(t) {
                return Err(Error::DuplicateIndices(idx));
            }
            f.insert(t, c);
        }
        Ok(f)
    }

    /// The monomial `e^{i1} ∧ … ∧ e^{ik}` (1-based, strictly increasing).
    pub fn monomial(dim: usize, indices: &[usize]) -> Result<Self, Error> {
        Self::from_terms(dim, indices.len(), [(indices.to_vec(), RealScalar::one())])
    }

    /// The covector `e^i` (1-based).
    pub fn covector(dim: usize, i: usize) -> Result<Self, Error> {
        Self::monomial(dim, &[i])
    }

    /// The 1-form `Σ c_i e^i`.
    pub fn from_covector(coords: &[RealScalar]) -> Result<Self, Error> {
        let mut f = Self::zero(coords.len(), 1)?;
        for (i, c) in coords.iter().enumerate() {
            f.insert(IndexTuple(1 << i), c.clone());
        }
        Ok(f)
    }

    fn insert(&mut self, t: IndexTuple, c: RealScalar) {
        if c.is_zero() {
            self.coeffs.remove(&t);
        } else {
            self.coeffs.insert(t, c);
        }
    }

    fn accumulate(&mut self, t: IndexTuple, c: &RealScalar, negate: bool) {
        let entry = self.coeffs.entry(t).or_default();
        if negate {
            *entry -= c;
        } else {
            *entry += c;
        }
        if entry.is_zero() {
            self.coeffs.remove(&t);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored (nonzero) monomials.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the monomial with the given 1-based indices. Indices need
    /// not be sorted; the sign of the sorting permutation is applied and a
    /// repeated index yields zero.
    pub fn coeff(&self, indices: &[usize]) -> RealScalar {
        let mut sorted = indices.to_vec();
        let mut odd = false;
        // insertion sort, counting transpositions
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        match IndexTuple::from_one_based(&sorted, self.dim) {
            Ok(t) if sorted.len() == self.degree => {
                let c = self.coeffs.get(&t).cloned().unwrap_or_default();
                if odd {
                    -c
                } else {
                    c
                }
            }
            _ => RealScalar::zero(),
        }
    }

    /// Stored terms as `(1-based indices, coefficient)`, in lexicographic order.
    pub fn terms(&self) -> Vec<(Vec<usize>, RealScalar)> {
        let mut out: Vec<_> = self.coeffs.iter().map(|(t, c)| (t.one_based(), c.clone())).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    fn check_same_space(&self, other: &KForm) -> Result<(), Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &KForm) -> Result<KForm, Error> {
        self.check_same_space(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeOutOfRange { degree: other.degree, dim: self.dim });
        }
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            out.accumulate(*t, c, false);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KForm) -> Result<KForm, Error> {
        self.add(&other.scale(&-RealScalar::one()))
    }

    pub fn scale(&self, c: &RealScalar) -> KForm {
        let mut out = KForm { dim: self.dim, degree: self.degree, coeffs: BTreeMap::new() };
        if !c.is_zero() {
            for (t, x) in &self.coeffs {
                out.coeffs.insert(*t, x * c);
            }
        }
        out
    }

    /// Exterior product. Graded commutative: `ω∧η = (−1)^{kl} η∧ω`.
    pub fn wedge(&self, other: &KForm) -> Result<KForm, Error> {
        self.check_same_space(other)?;
        let degree = self.degree + other.degree;
        let mut out = KForm::zero(self.dim, degree)?;
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if a.0 & b.0 != 0 {
                    continue;
                }
                out.accumulate(IndexTuple(a.0 | b.0), &(x * y), merge_sign(a.0, b.0));
            }
        }
        Ok(out)
    }

    /// Interior product `x ⌟ ω`, i.e. `ω(x, ·, …, ·)`.
    pub fn contract(&self, x: &Vector) -> Result<KForm, Error> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.dim() });
        }
        if self.degree == 0 {
            return Err(Error::DegreeOutOfRange { degree: 0, dim: self.dim });
        }
        let mut out = KForm::zero(self.dim, self.degree - 1)?;
        for (t, c) in &self.coeffs {
            for (pos, i) in t.indices().enumerate() {
                let xi = &x.0[i];
                if xi.is_zero() {
                    continue;
                }
                out.accumulate(IndexTuple(t.0 & !(1 << i)), &(c * xi), pos % 2 == 1);
            }
        }
        Ok(out)
    }

    /// Contraction with the basis vector `e_{i+1}` (0-based `i`).
    pub fn contract_basis(&self, i: usize) -> Result<KForm, Error> {
        self.contract(&Vector::basis(self.dim, i))
    }

    /// Value on `k` vectors: `Σ_I ω_I det(X_I)` where `X_I` takes rows `I` of
    /// the matrix whose columns are the arguments.
    pub fn eval(&self, xs: &[Vector]) -> Result<RealScalar, Error> {
        if xs.len() != self.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, got: xs.len() });
        }
        if let Some(bad) = xs.iter().find(|x| x.dim() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, got: bad.dim() });
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(t, c)| {
                let minor: Matrix = t.indices().map(|i| xs.iter().map(|x| x.0[i].clone()).collect()).collect();
                c * &linalg::determinant(&minor)
            })
            .sum())
    }

    /// `(g*ω)(x₁,…,x_k) = ω(g x₁,…,g x_k)`.
    pub fn pullback(&self, g: &LinearMap) -> Result<KForm, Error> {
        if g.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: g.dim() });
        }
        // g*e^j = Σ_i g[j][i] e^i
        let pulled: Vec<KForm> =
            (0..self.dim).map(|j| KForm::from_covector(&g.matrix()[j])).collect::<Result<_, _>>()?;
        let mut out = KForm::zero(self.dim, self.degree)?;
        for (t, c) in &self.coeffs {
            let mut term = KForm::constant(self.dim, c.clone())?;
            for j in t.indices() {
                term = term.wedge(&pulled[j])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Matrix of `I_ω : V → Λ^{k−1}V*`, of size `C(n, k−1) × n`. Column `j`
    /// holds the coefficients of `e_j ⌟ ω` in lexicographic tuple order.
    pub fn interior_matrix(&self) -> Result<Matrix, Error> {
        if self.degree == 0 {
            return Err(Error::DegreeOutOfRange { degree: 0, dim: self.dim });
        }
        let rows = index_tuples(self.dim, self.degree - 1);
        let row_of: BTreeMap<IndexTuple, usize> = rows.iter().enumerate().map(|(r, t)| (*t, r)).collect();
        let mut m = linalg::zeros(rows.len(), self.dim);
        for j in 0..self.dim {
            for (t, c) in &self.contract_basis(j)?.coeffs {
                m[row_of[t]][j] = c.clone();
            }
        }
        Ok(m)
    }

    /// Whether `I_ω` is injective, decided by exact rank.
    pub fn is_multisymplectic(&self) -> bool {
        match self.interior_matrix() {
            Ok(m) => linalg::rank(&m) == self.dim,
            Err(_) => false,
        }
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct TermFile {
    indices: Vec<usize>,
    coeff: String,
}

/// On-disk form: `{"dim": n, "degree": k, "terms": [{"indices": [...], "coeff": "..."}]}`.
#[derive(serde::Serialize, serde::Deserialize)]
struct KFormFile {
    dim: usize,
    degree: usize,
    terms: Vec<TermFile>,
}

impl KForm {
    /// Parses the JSON form schema. Errors name the offending term (0-based position).
    pub fn from_json(text: &str) -> Result<KForm, Error> {
        let file: KFormFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut terms = Vec::with_capacity(file.terms.len());
        for (k, t) in file.terms.into_iter().enumerate() {
            let c: RealScalar =
                t.coeff.parse().map_err(|e| Error::Parse(format!("term {k} (indices {:?}): {e}", t.indices)))?;
            terms.push((t.indices, c));
        }
        KForm::from_terms(file.dim, file.degree, terms)
    }

    pub fn to_json(&self) -> String {
        let file = KFormFile {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms().into_iter().map(|(indices, c)| TermFile { indices, coeff: c.to_string() }).collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm(dim={}, degree={}) {{", self.dim, self.degree)?;
        for (idx, c) in self.terms() {
            write!(f, " {idx:?}: {c};")?;
        }
        write!(f, " }}")
    }
}

/// The split (G̃₂-type) 3-form on V⁷,
/// `θ₁∧θ₂∧θ₃ + α₁∧θ₁ + α₂∧θ₂ + α₃∧θ₃` with
/// `α₁ = y₁∧y₂ + y₃∧y₄`, `α₂ = y₁∧y₃ − y₂∧y₄`, `α₃ = y₁∧y₄ + y₂∧y₃`,
/// in the basis `(θ₁,θ₂,θ₃,y₁,y₂,y₃,y₄) = (e¹,…,e⁷)`.
pub fn canonical_split_g2() -> KForm {
    let e = |i: usize| KForm::covector(7, i).expect("valid covector");
    let w2 = |i: usize, j: usize| e(i).wedge(&e(j)).expect("same space");
    let (t1, t2, t3) = (e(1), e(2), e(3));
    let (y1, y2, y3, y4) = (4, 5, 6, 7);
    let a1 = w2(y1, y2).add(&w2(y3, y4)).unwrap();
    let a2 = w2(y1, y3).sub(&w2(y2, y4)).unwrap();
    let a3 = w2(y1, y4).add(&w2(y2, y3)).unwrap();
    let mut omega = t1.wedge(&t2).and_then(|x| x.wedge(&t3)).unwrap();
    for (a, t) in [(a1, t1), (a2, t2), (a3, t3)] {
        omega = omega.add(&a.wedge(&t).unwrap()).unwrap();
    }
    omega
}

/// The definite (G₂-type) 3-form
/// `e¹²³ + e¹⁴⁵ + e¹⁶⁷ + e²⁴⁶ − e²⁵⁷ − e³⁴⁷ − e³⁵⁶`.
pub fn canonical_definite_g2() -> KForm {
    let one = RealScalar::one();
    let neg = -RealScalar::one();
    KForm::from_terms(
        7,
        3,
        [
            (vec![1, 2, 3], one.clone()),
            (vec![1, 4, 5], one.clone()),
            (vec![1, 6, 7], one.clone()),
            (vec![2, 4, 6], one),
            (vec![2, 5, 7], neg.clone()),
            (vec![3, 4, 7], neg.clone()),
            (vec![3, 5, 6], neg),
        ],
    )
    .expect("valid terms")
}
