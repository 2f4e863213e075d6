use num_traits::Zero;

use super::{Matrix, Rational, Vector};
use crate::error::Error;

/// A linear subspace of `ℚ^n`, stored by its reduced row-echelon basis so
/// that equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| super::unit_vector(ambient_dim, i)).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_spanning(ambient_dim: usize, vectors: &[Vector]) -> Result<Self, Error> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a subspace of dimension-{ambient_dim} space",
                v.len()
            )));
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let (r, pivots) = Matrix::from_rows(vectors)?.rref();
        Ok(Self {
            ambient_dim,
            basis: (0..pivots.len()).map(|i| r.row(i)).collect(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduced row-echelon basis.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_vec(
            self.dim(),
            self.ambient_dim,
            self.basis.iter().flatten().cloned().collect(),
        )
        .expect("basis vectors have ambient length")
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if v.len() != self.ambient_dim {
            return None;
        }
        // RREF rows: the coordinate on row i is v's entry at that row's pivot.
        let coords: Vector = self
            .basis
            .iter()
            .map(|b| {
                let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
                v[p].clone()
            })
            .collect();
        let recon = super::linear_combination(&coords, &self.basis, self.ambient_dim);
        (recon.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        let all: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::from_spanning(self.ambient_dim, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // Solve Σ aᵢ sᵢ − Σ bⱼ tⱼ = 0 and map the a-part back.
        let mut cols: Vec<Vector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|t| t.iter().map(|x| -x).collect()));
        let system = Matrix::from_columns(self.ambient_dim, &cols)?;
        let kernel = system.kernel();
        let vectors: Vec<Vector> = kernel
            .basis()
            .iter()
            .map(|k| super::linear_combination(&k[..self.dim()], &self.basis, self.ambient_dim))
            .collect();
        Subspace::from_spanning(self.ambient_dim, &vectors)
    }

    /// Intersection and sum in one call; `dim ∩ + dim Σ = dim S₁ + dim S₂`.
    pub fn meet_join(&self, other: &Subspace) -> Result<(Subspace, Subspace), Error> {
        Ok((self.intersection(other)?, self.sum(other)?))
    }

    /// `{a : F(a, s) = 0 ∀ s ∈ self}` for the bilinear form with Gram matrix `form`.
    pub fn orthogonal(&self, form: &Matrix) -> Result<Subspace, Error> {
        if form.rows() != self.ambient_dim || form.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch(
                "form size differs from ambient dimension".into(),
            ));
        }
        if self.is_zero() {
            return Ok(Subspace::full(self.ambient_dim));
        }
        // Row i of (B·F) is F(bᵢ, ·); for symmetric F this is the orthogonal.
        let constraints = &self.basis_matrix() * form;
        Ok(constraints.kernel())
    }

    /// Extends `self`'s basis greedily from `candidates`, returning the chosen
    /// candidates that complete it to the span of both.
    pub fn complement_within(&self, candidates: &[Vector]) -> Vec<Vector> {
        let mut acc = self.clone();
        let mut picked = Vec::new();
        for c in candidates {
            if !acc.contains(c) {
                let mut vs = acc.basis.clone();
                vs.push(c.clone());
                acc = Subspace::from_spanning(self.ambient_dim, &vs).expect("same ambient");
                picked.push(c.clone());
            }
        }
        picked
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of {} and {} dimensional spaces",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}
