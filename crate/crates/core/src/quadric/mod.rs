//! Commutative actions on smooth projective quadrics: compatibility of the
//! induced scalar product, the structural consequences it forces, obstruction and
//! canonicalization certificates, the explicit actions, and a seeded search.

pub mod canonical;
pub mod catalog;
pub mod certificate;
pub mod compat;
pub mod fuzz;
pub mod obstruction;

use num_traits::Zero;

use crate::algebra::{split_generating_subspace, Algebra, GeneratingSubspace};
use crate::bridge::{ht_forward, induced_form, CyclicRep};
use crate::error::Error;
use crate::linalg::{Matrix, Rational, Subspace, Vector};

pub use canonical::{canonicalize_n2, Canonical};
pub use catalog::{
    catalog_model, check_projective_orthogonality, evaluate_action, normalize_projective, orbit_dimension_at,
    projectively_equal, ActionKind, ActionModel,
};
pub use certificate::{verify_certificate, Certificate, CertificateKind, Claim, Step, Witness};
pub use compat::{
    check_compatibility, compatible_by_matrices, lemma3_report, CompatibilityReport, Lemma3Report, Violation,
};
pub use fuzz::{fuzz_search, FuzzReport, FuzzStats};
pub use obstruction::obstruction_mixed;

/// Polarization `F` of a smooth quadric `f(x) = F(x, x) = 0` in `ℙ^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricForm {
    n: usize,
    matrix: Matrix,
}

impl QuadricForm {
    pub fn new(matrix: Matrix) -> Result<Self, Error> {
        if !matrix.is_square() || matrix.rows() < 3 {
            return Err(Error::InvalidForm("need a square matrix of size at least 3".into()));
        }
        if !matrix.is_symmetric() {
            return Err(Error::InvalidForm("matrix is not symmetric".into()));
        }
        if !matrix.is_invertible() {
            return Err(Error::InvalidForm("form is degenerate".into()));
        }
        Ok(Self {
            n: matrix.rows() - 2,
            matrix,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.matrix.bilinear(x, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.evaluate(x).is_zero()
    }
}

/// An algebra with generating subspace and a scalar product on the algebra,
/// the data an action on a quadric induces. Construction only checks shapes;
/// [`QuadricActionData::violations`] lists which quadric invariants fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricActionData {
    pub algebra: Algebra,
    pub subspace: GeneratingSubspace,
    pub form: Matrix,
}

impl QuadricActionData {
    pub fn new(algebra: Algebra, u: &Subspace, form: Matrix) -> Result<Self, Error> {
        let subspace = split_generating_subspace(&algebra, u)?;
        if form.rows() != algebra.dim() || form.cols() != algebra.dim() {
            return Err(Error::DimensionMismatch("form does not match the algebra".into()));
        }
        if !form.is_symmetric() {
            return Err(Error::InvalidForm("form is not symmetric".into()));
        }
        Ok(Self {
            algebra,
            subspace,
            form,
        })
    }

    /// Forward correspondence plus induced form.
    pub fn from_rep(rep: &CyclicRep) -> Result<Self, Error> {
        let fwd = ht_forward(rep)?;
        let induced = induced_form(rep, &fwd.xi)?;
        Ok(Self {
            algebra: fwd.algebra,
            subspace: fwd.subspace,
            form: induced.matrix,
        })
    }

    pub fn from_model(model: &ActionModel) -> Result<Self, Error> {
        Self::from_rep(&model.rep)
    }

    pub fn n(&self) -> usize {
        self.subspace.n()
    }

    pub fn l(&self) -> usize {
        self.subspace.l()
    }

    pub fn r(&self) -> usize {
        self.subspace.r()
    }

    /// Same data in the basis given by the columns of `change`.
    pub fn change_basis(&self, change: &Matrix) -> Result<Self, Error> {
        let inv = change
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        let algebra = self.algebra.change_basis(change)?;
        let moved: Vec<Vector> = self
            .subspace
            .subspace()
            .basis()
            .iter()
            .map(|u| inv.mul_vec(u))
            .collect();
        let u = Subspace::from_spanning(self.algebra.dim(), &moved)?;
        let form = &(&change.transpose() * &self.form) * change;
        Self::new(algebra, &u, form)
    }

    /// Failing quadric invariants, empty when the data is a full candidate.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.algebra.dim() != self.n() + 2 {
            out.push(format!(
                "dim A = {} but dim U + 2 = {}",
                self.algebra.dim(),
                self.n() + 2
            ));
        }
        let report = check_compatibility(self);
        if !report.unit_isotropic() {
            out.push("F(1,1) is not zero".into());
        }
        if let Some(v) = &report.violation {
            out.push(format!(
                "derivative identity fails for generator {} on basis pair ({}, {})",
                v.generator_index, v.a1, v.a2
            ));
        }
        if !self.form.is_invertible() {
            out.push("form is degenerate".into());
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Maximal torus dimension in the automorphism group of `Q_n` and whether
/// it is large enough for an action of `𝔾_m^n` with an open orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusBound {
    pub max_torus_dim: usize,
    pub gm_action_possible: bool,
}

pub fn torus_bound(n: usize) -> TorusBound {
    let max_torus_dim = (n + 2) / 2;
    TorusBound {
        max_torus_dim,
        gm_action_possible: max_torus_dim >= n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_bound_examples() {
        assert_eq!(
            torus_bound(3),
            TorusBound {
                max_torus_dim: 2,
                gm_action_possible: false
            }
        );
        assert_eq!(
            torus_bound(4),
            TorusBound {
                max_torus_dim: 3,
                gm_action_possible: false
            }
        );
        assert_eq!(
            torus_bound(2),
            TorusBound {
                max_torus_dim: 2,
                gm_action_possible: true
            }
        );
        assert_eq!(
            torus_bound(1),
            TorusBound {
                max_torus_dim: 1,
                gm_action_possible: true
            }
        );
    }

    #[test]
    fn torus_bound_threshold() {
        for n in 1..=100 {
            assert_eq!(torus_bound(n).gm_action_possible, n <= 2, "n = {n}");
        }
    }

    #[test]
    fn quadric_form_rejects_degenerate() {
        let f = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert!(matches!(QuadricForm::new(f), Err(Error::InvalidForm(_))));
        let g = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]);
        assert!(matches!(QuadricForm::new(g), Err(Error::InvalidForm(_))));
    }

    #[test]
    fn catalog_data_is_valid() {
        for (kind, n) in [
            (ActionKind::Additive, 1),
            (ActionKind::Additive, 4),
            (ActionKind::MixedN2, 2),
            (ActionKind::TorusN1, 1),
            (ActionKind::TorusN2, 2),
        ] {
            let data = QuadricActionData::from_model(&catalog_model(kind, n).unwrap()).unwrap();
            assert!(data.is_valid(), "{kind:?} {n}: {:?}", data.violations());
        }
    }

    #[test]
    fn broken_form_is_reported() {
        let mut data = catalog::reference_data();
        data.form.set(1, 2, crate::linalg::rat(1));
        data.form.set(2, 1, crate::linalg::rat(1));
        assert_eq!(data.violations().len(), 1);
    }
}
