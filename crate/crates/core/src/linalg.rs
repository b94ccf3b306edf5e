//! Subspaces, quotients and the basic rank calculus.

use crate::field::Field;
use crate::matrix::Matrix;

/// A subspace of k^ambient spanned by the independent columns of `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub basis: Matrix,
    left_inv: Matrix,
}

impl Subspace {
    /// Span of arbitrary generators (dependent columns are dropped).
    pub fn span(gens: &Matrix) -> Subspace {
        Subspace::from_basis(gens.image())
    }

    /// `basis` must have independent columns.
    pub fn from_basis(basis: Matrix) -> Subspace {
        let left_inv = basis.left_inverse().expect("subspace basis must be independent");
        Subspace { basis, left_inv }
    }

    pub fn whole(field: Field, n: usize) -> Subspace {
        Subspace::from_basis(Matrix::identity(field, n))
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains(&self, v: &Matrix) -> bool {
        self.basis.mul(&self.left_inv.mul(v)) == *v
    }

    /// Coordinates of vectors (columns of `v`) known to lie in the subspace.
    pub fn coords(&self, v: &Matrix) -> Matrix {
        debug_assert!(self.contains(v), "vector outside subspace");
        self.left_inv.mul(v)
    }
}

/// The quotient k^ambient / W with a canonical complement: `section` picks the
/// coordinates that are not pivots of W, `projection` kills W.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub projection: Matrix,
    pub section: Matrix,
}

impl Quotient {
    pub fn ambient(&self) -> usize {
        self.projection.cols()
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    /// k^n modulo the span of the columns of `rel`.
    pub fn of_relations(rel: &Matrix) -> Quotient {
        let field = rel.field();
        let n = rel.rows();
        let rr = rel.transpose().rref();
        let pivots = rr.pivots;
        let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let mut projection = Matrix::zeros(field, free.len(), n);
        for (j, &f) in free.iter().enumerate() {
            projection.set(j, f, field.one());
            for (r, &p) in pivots.iter().enumerate() {
                let c = rr.reduced.get(r, f);
                if !c.is_zero() {
                    projection.set(j, p, -c);
                }
            }
        }
        let mut section = Matrix::zeros(field, n, free.len());
        for (j, &f) in free.iter().enumerate() {
            section.set(f, j, field.one());
        }
        Quotient { projection, section }
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel(m: &Matrix) -> Subspace {
    Subspace::from_basis(m.kernel())
}

pub fn image(m: &Matrix) -> Subspace {
    Subspace::from_basis(m.image())
}

pub fn cokernel(m: &Matrix) -> Quotient {
    Quotient::of_relations(m)
}
