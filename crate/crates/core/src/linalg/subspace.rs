use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A linear subspace of `F^ambient`, stored as the nonzero rows of its
/// reduced row echelon basis. Equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn from_matrix(m: Matrix<F>) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Subspace { basis, pivots }
    }

    pub fn from_rows(field: F, ambient: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        Ok(Self::from_matrix(Matrix::from_rows(field, ambient, rows)?))
    }

    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn span_of(field: F, v: Vec<F::Elem>) -> Self {
        let n = v.len();
        Self::from_rows(field, n, vec![v]).expect("single row has ambient length")
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }
    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis_vec(&self, i: usize) -> &[F::Elem] {
        self.basis.row(i)
    }
    pub fn basis_vecs(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vecs()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    /// Coefficients of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in F^{}",
                v.len(),
                self.ambient_dim()
            )));
        }
        // In RREF the coefficient on basis row i is v at pivot column i.
        let coeffs: Vec<F::Elem> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        let recon = self.basis.left_apply(&coeffs)?;
        Ok((recon.as_slice() == v).then_some(coeffs))
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        for i in 0..other.dim() {
            if !self.contains(other.basis_vec(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::from_matrix(self.basis.stack(&other.basis)?))
    }

    /// Exact intersection, from the kernel of `[A; B]^T`: a relation
    /// `alpha A = beta B` yields the common vector `alpha A`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let f = self.field().clone();
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(f, self.ambient_dim()));
        }
        let stacked = self.basis.stack(&other.basis)?;
        let rel = stacked.transpose().kernel();
        let da = self.dim();
        let rows = (0..rel.dim())
            .map(|i| self.basis.left_apply(&rel.basis_vec(i)[..da]))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(f, self.ambient_dim(), rows)
    }

    /// `{y : y . x = 0 for all x in self}` in the dual coordinates.
    pub fn annihilator(&self) -> Self {
        if self.dim() == 0 {
            return Self::full(self.field().clone(), self.ambient_dim());
        }
        self.basis.kernel()
    }

    /// Standard basis vectors at the non-pivot columns: a complement.
    pub fn complement(&self) -> Self {
        let f = self.field().clone();
        let n = self.ambient_dim();
        let rows = (0..n)
            .filter(|c| !self.pivots.contains(c))
            .map(|c| {
                let mut v = vec![f.zero(); n];
                v[c] = f.one();
                v
            })
            .collect();
        Self::from_rows(f, n, rows).expect("unit vectors have ambient length")
    }

    /// Image of the subspace under `v -> v M` (rows times matrix).
    pub fn image_under(&self, m: &Matrix<F>) -> Result<Self> {
        if m.rows() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "map from F^{} applied to subspace of F^{}",
                m.rows(),
                self.ambient_dim()
            )));
        }
        Ok(Self::from_matrix(self.basis.mul(m)?))
    }

    pub fn to_prime(&self, target: crate::field::PrimeField) -> Result<Subspace<crate::field::PrimeField>> {
        Ok(Subspace::from_matrix(self.basis.reduce_mod(target)?))
    }
}

/// First nonzero coordinate scaled to one: the canonical projective representative.
pub fn normalize_projective<F: Field>(f: &F, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let lead = v.iter().find(|x| !f.is_zero(x))?;
    let inv = f.inv(lead)?;
    Some(v.iter().map(|x| f.mul(x, &inv)).collect())
}
