use super::{echelon, LinalgError, Matrix, Rational};

/// Linear subspace of `Q^ambient`, stored as a matrix whose columns are a
/// basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubspaceDims {
    pub sum_dim: usize,
    pub intersection_dim: usize,
    /// `dim((U + V) / V)`
    pub quotient_dim: usize,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            basis: Matrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            basis: Matrix::identity(ambient),
        }
    }

    /// Span of arbitrary columns; dependent columns are dropped.
    pub fn span(columns: &Matrix) -> Self {
        columns.image()
    }

    pub(crate) fn from_independent_columns(basis: Matrix) -> Self {
        debug_assert_eq!(basis.rank(), basis.cols());
        Self { basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn into_basis(self) -> Matrix {
        self.basis
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(LinalgError::AmbientMismatch(
                self.ambient_dim(),
                other.ambient_dim(),
            ));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let both = Matrix::hstack(self.ambient_dim(), &[&self.basis, &other.basis])?;
        Ok(Subspace::span(&both))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        // (x, y) with U x = V y, mapped through U.
        let both = Matrix::hstack(self.ambient_dim(), &[&self.basis, &other.basis.neg()])?;
        let ker = echelon::kernel_columns(&both);
        let xs = ker.block(0, 0, self.dim(), ker.cols());
        Ok(Subspace::span(&self.basis.mul(&xs)?))
    }

    /// Image of the subspace under `map`.
    pub fn image_under(&self, map: &Matrix) -> Result<Subspace, LinalgError> {
        Ok(Subspace::span(&map.mul(&self.basis)?))
    }

    pub fn contains(&self, vectors: &Matrix) -> Result<bool, LinalgError> {
        Ok(self.coordinates(vectors)?.is_some())
    }

    /// Coordinates of the given columns with respect to the basis.
    pub fn coordinates(&self, vectors: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        self.basis.solve(vectors)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        let m = Matrix::from_columns(v.len(), &[v.to_vec()])?;
        self.contains(&m)
    }
}

/// Dimensions of `U + V`, `U ∩ V` and `(U + V)/V`.
pub fn subspace_arithmetic(u: &Subspace, v: &Subspace) -> Result<SubspaceDims, LinalgError> {
    u.check(v)?;
    let both = Matrix::hstack(u.ambient_dim(), &[&u.basis, &v.basis])?;
    let sum_dim = both.rank();
    Ok(SubspaceDims {
        sum_dim,
        intersection_dim: u.dim() + v.dim() - sum_dim,
        quotient_dim: sum_dim - v.dim(),
    })
}
