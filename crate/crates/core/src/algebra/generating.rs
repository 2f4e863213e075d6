use super::Algebra;
use crate::error::Error;
use crate::linalg::{is_semisimple, jordan_chevalley, Subspace, Vector};

/// A subspace `U` generating an algebra together with its unit, split as
/// `U = U_a ⊕ U_m` into its nilpotent part `U_a = U ∩ R` and a complement
/// of semisimple elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSubspace {
    subspace: Subspace,
    nilpotent: Subspace,
    semisimple: Subspace,
}

impl GeneratingSubspace {
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// `U_a = U ∩ R`.
    pub fn nilpotent_part(&self) -> &Subspace {
        &self.nilpotent
    }

    /// `U_m`, spanned by semisimple elements.
    pub fn semisimple_part(&self) -> &Subspace {
        &self.semisimple
    }

    /// `l = dim U_a`
    pub fn l(&self) -> usize {
        self.nilpotent.dim()
    }

    /// `r = dim U_m`
    pub fn r(&self) -> usize {
        self.semisimple.dim()
    }

    pub fn n(&self) -> usize {
        self.subspace.dim()
    }

    /// Generators in the fixed order: `U_a` basis, then `U_m` basis.
    pub fn ordered_basis(&self) -> Vec<Vector> {
        self.nilpotent
            .basis()
            .iter()
            .chain(self.semisimple.basis())
            .cloned()
            .collect()
    }
}

/// Splits a generating subspace into nilpotent and semisimple parts.
///
/// `U_a` is `U ∩ R`. The echelon basis vectors of `U` that complete `U_a` are
/// replaced by the semisimple parts of their multiplication operators; those
/// parts are polynomials in the operator, hence multiplications by algebra
/// elements, and they must land back in `U`.
pub fn split_generating_subspace(algebra: &Algebra, u: &Subspace) -> Result<GeneratingSubspace, Error> {
    if u.ambient_dim() != algebra.dim() {
        return Err(Error::DimensionMismatch("subspace lives in another space".into()));
    }
    if u.contains(algebra.unit()) {
        return Err(Error::UnitInSubspace);
    }
    let closure = algebra.span_closure(u)?;
    if closure.dim() != algebra.dim() {
        return Err(Error::NotGenerating {
            closure: closure.dim(),
            dim: algebra.dim(),
        });
    }
    let nilpotent = u.intersection(&algebra.radical()?)?;
    let complement = nilpotent.complement_within(u.basis());
    let mut semisimple_vectors = Vec::with_capacity(complement.len());
    for c in complement {
        let op = algebra.left_mult_operator(&c);
        let s = if is_semisimple(&op) {
            c
        } else {
            let jc = jordan_chevalley(&op)?;
            let s = jc.semisimple.mul_vec(algebra.unit());
            if algebra.left_mult_operator(&s) != jc.semisimple {
                return Err(Error::Internal(
                    "semisimple part is not a multiplication operator".into(),
                ));
            }
            s
        };
        if !u.contains(&s) {
            return Err(Error::SemisimplePartEscapesU);
        }
        semisimple_vectors.push(s);
    }
    let semisimple = Subspace::from_spanning(algebra.dim(), &semisimple_vectors)?;
    debug_assert_eq!(semisimple.dim() + nilpotent.dim(), u.dim());
    Ok(GeneratingSubspace {
        subspace: u.clone(),
        nilpotent,
        semisimple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, unit_vector, Matrix};

    #[test]
    fn mixed_split() {
        let a = crate::quadric::catalog::reference_algebra();
        let u = Subspace::from_spanning(4, &[unit_vector(4, 1), unit_vector(4, 2)]).unwrap();
        let g = split_generating_subspace(&a, &u).unwrap();
        assert_eq!(g.nilpotent_part().basis(), &[unit_vector(4, 1)]);
        assert_eq!(g.semisimple_part().basis(), &[unit_vector(4, 2)]);
        assert_eq!((g.l(), g.r()), (1, 1));
    }

    #[test]
    fn mixed_basis_vector_is_split() {
        // Basis 1, u, w + u, h: the echelon complement vector is w + u, whose
        // semisimple part is w = f2 - f1.
        let change = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let a = crate::quadric::catalog::reference_algebra()
            .change_basis(&change)
            .unwrap();
        let u = Subspace::from_spanning(4, &[unit_vector(4, 1), unit_vector(4, 2)]).unwrap();
        let g = split_generating_subspace(&a, &u).unwrap();
        assert_eq!(g.nilpotent_part().basis(), &[unit_vector(4, 1)]);
        assert_eq!(g.semisimple_part().basis(), &[vec![rat(0), rat(1), rat(-1), rat(0)]]);
    }

    #[test]
    fn semisimple_part_can_escape() {
        // ℚ[x]/(x²) × ℚ with U = span{(1 + x, 0)}: the semisimple part (1, 0)
        // is not in U.
        let a = Algebra::product(&[Algebra::truncated_polynomial(2), Algebra::field()]);
        let u = Subspace::from_spanning(3, &[vec![rat(1), rat(1), rat(0)]]).unwrap();
        assert_eq!(split_generating_subspace(&a, &u), Err(Error::SemisimplePartEscapesU));
    }

    #[test]
    fn non_generating_and_unit_errors() {
        let a = crate::quadric::catalog::reference_algebra();
        let u = Subspace::from_spanning(4, &[unit_vector(4, 1), unit_vector(4, 3)]).unwrap();
        assert!(matches!(
            split_generating_subspace(&a, &u),
            Err(Error::NotGenerating { closure: 3, dim: 4 })
        ));
        let with_unit = Subspace::from_spanning(4, &[unit_vector(4, 0)]).unwrap();
        assert_eq!(split_generating_subspace(&a, &with_unit), Err(Error::UnitInSubspace));
    }

    #[test]
    fn split_algebra_is_all_semisimple() {
        let a = Algebra::split_semisimple(4);
        // two independent non-unit semisimple elements generating ℚ⁴
        let s1 = vec![rat(1), rat(-1), rat(0), rat(0)];
        let s2 = vec![rat(0), rat(0), rat(1), rat(-1)];
        let u = Subspace::from_spanning(4, &[s1, s2]).unwrap();
        let g = split_generating_subspace(&a, &u).unwrap();
        assert_eq!((g.l(), g.r()), (0, 2));
    }

    #[test]
    fn one_dimensional_algebra_with_trivial_subspace() {
        let a = Algebra::field();
        let g = split_generating_subspace(&a, &Subspace::zero(1)).unwrap();
        assert_eq!((g.l(), g.r(), g.n()), (0, 0, 0));
        assert_eq!(a.left_mult_operator(a.unit()), Matrix::identity(1));
    }
}
