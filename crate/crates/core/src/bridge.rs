//! The correspondence between faithful cyclic representations of
//! `𝔾_a^l × 𝔾_m^r` and pairs `(A, U)` of an algebra with a generating
//! subspace, worked at the Lie-algebra level.
//!
//! Forward: the unital matrix algebra generated by the commuting generators
//! is identified with `ℚ^s` through `ξ(a) = a·v` for the cyclic vector `v`.
//! Backward: the regular representation `a ↦ L_a` with cyclic vector `1`.

use num_traits::Zero;

use crate::algebra::{split_generating_subspace, Algebra, GeneratingSubspace};
use crate::error::Error;
use crate::linalg::{self, is_nilpotent, minimal_polynomial, split_over_rationals, Matrix, Subspace, Vector};

/// Commuting generators of `dρ(𝔤)` with a cyclic vector, and optionally the
/// invariant scalar product on the ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicRep {
    ambient_dim: usize,
    nilpotent_gens: Vec<Matrix>,
    semisimple_gens: Vec<Matrix>,
    cyclic_vector: Vector,
    ambient_form: Option<Matrix>,
}

impl CyclicRep {
    /// Checks sizes, commutation, the nilpotent/semisimple split, linear
    /// independence of the generators and symmetry of the form. Cyclicity is
    /// a separate check ([`CyclicRep::is_cyclic`]) so that non-cyclic input
    /// can still reach [`ht_forward`] and be reported there.
    pub fn new(
        nilpotent_gens: Vec<Matrix>,
        semisimple_gens: Vec<Matrix>,
        cyclic_vector: Vector,
        ambient_form: Option<Matrix>,
    ) -> Result<Self, Error> {
        let s = cyclic_vector.len();
        let gens: Vec<&Matrix> = nilpotent_gens.iter().chain(&semisimple_gens).collect();
        if gens.iter().any(|g| g.rows() != s || g.cols() != s) {
            return Err(Error::InvalidRep(format!("generators must be {s}x{s}")));
        }
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(Error::InvalidRep("generators do not commute".into()));
                }
            }
        }
        if let Some(i) = nilpotent_gens.iter().position(|g| !is_nilpotent(g)) {
            return Err(Error::InvalidRep(format!("nilpotent generator {i} is not nilpotent")));
        }
        for (i, g) in semisimple_gens.iter().enumerate() {
            let p = minimal_polynomial(g);
            if !p.is_squarefree() || !split_over_rationals(&p) {
                return Err(Error::InvalidRep(format!(
                    "semisimple generator {i} has minimal polynomial {p}, not squarefree and split"
                )));
            }
        }
        let flat: Vec<Vector> = gens.iter().map(|g| g.entries().to_vec()).collect();
        if Subspace::from_spanning(s * s, &flat)?.dim() != gens.len() {
            return Err(Error::InvalidRep("generators are linearly dependent".into()));
        }
        if let Some(f) = &ambient_form {
            if f.rows() != s || f.cols() != s || !f.is_symmetric() {
                return Err(Error::InvalidRep(format!(
                    "ambient form must be a symmetric {s}x{s} matrix"
                )));
            }
        }
        Ok(Self {
            ambient_dim: s,
            nilpotent_gens,
            semisimple_gens,
            cyclic_vector,
            ambient_form,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn nilpotent_gens(&self) -> &[Matrix] {
        &self.nilpotent_gens
    }

    pub fn semisimple_gens(&self) -> &[Matrix] {
        &self.semisimple_gens
    }

    /// Nilpotent generators first, then semisimple.
    pub fn generators(&self) -> impl Iterator<Item = &Matrix> {
        self.nilpotent_gens.iter().chain(&self.semisimple_gens)
    }

    pub fn cyclic_vector(&self) -> &[linalg::Rational] {
        &self.cyclic_vector
    }

    pub fn ambient_form(&self) -> Option<&Matrix> {
        self.ambient_form.as_ref()
    }

    pub fn with_form(mut self, form: Option<Matrix>) -> Result<Self, Error> {
        self.ambient_form = form;
        Self::new(
            self.nilpotent_gens,
            self.semisimple_gens,
            self.cyclic_vector,
            self.ambient_form,
        )
    }

    pub fn l(&self) -> usize {
        self.nilpotent_gens.len()
    }

    pub fn r(&self) -> usize {
        self.semisimple_gens.len()
    }

    /// The orbit of `v` under the generated unital algebra spans the space.
    pub fn is_cyclic(&self) -> bool {
        let basis = matrix_algebra_basis(self);
        let images: Vec<Vector> = basis.iter().map(|b| b.mul_vec(&self.cyclic_vector)).collect();
        Subspace::from_spanning(self.ambient_dim, &images)
            .map(|s| s.dim() == self.ambient_dim)
            .unwrap_or(false)
    }
}

/// Basis of the unital matrix algebra generated by the representation, in
/// breadth-first product order: identity, nilpotent generators, semisimple
/// generators, then `basis[i] · generator` for growing `i`.
fn matrix_algebra_basis(rep: &CyclicRep) -> Vec<Matrix> {
    let s = rep.ambient_dim;
    let gens: Vec<&Matrix> = rep.generators().collect();
    let mut basis: Vec<Matrix> = Vec::new();
    let mut span = Subspace::zero(s * s);
    let mut push = |m: Matrix, basis: &mut Vec<Matrix>| {
        if !span.contains(m.entries()) {
            let mut vs = span.basis().to_vec();
            vs.push(m.entries().to_vec());
            span = Subspace::from_spanning(s * s, &vs).expect("flattened matrices");
            basis.push(m);
        }
    };
    push(Matrix::identity(s), &mut basis);
    for g in &gens {
        push((*g).clone(), &mut basis);
    }
    let mut idx = 0;
    while idx < basis.len() {
        for g in &gens {
            let candidate = &basis[idx] * g;
            push(candidate, &mut basis);
        }
        idx += 1;
    }
    basis
}

/// Output of [`ht_forward`].
#[derive(Clone, Debug)]
pub struct Forward {
    pub algebra: Algebra,
    pub subspace: GeneratingSubspace,
    /// Matrix of `a ↦ a·v` from algebra coordinates to the ambient space.
    pub xi: Matrix,
    /// The matrices representing the algebra basis vectors.
    pub basis_matrices: Vec<Matrix>,
}

impl Forward {
    /// The matrix representing the algebra element with coordinates `a`.
    pub fn matrix_of(&self, a: &[linalg::Rational]) -> Matrix {
        let s = self.xi.rows();
        a.iter()
            .zip(&self.basis_matrices)
            .filter(|(c, _)| !c.is_zero())
            .fold(Matrix::zeros(s, s), |acc, (c, b)| &acc + &b.scale(c))
    }
}

/// Representation → `(A, U)`.
pub fn ht_forward(rep: &CyclicRep) -> Result<Forward, Error> {
    let s = rep.ambient_dim;
    let basis = matrix_algebra_basis(rep);
    if basis.len() != s {
        return Err(Error::DimensionMismatch(format!(
            "generated algebra has dimension {} but the ambient space has dimension {s}",
            basis.len()
        )));
    }
    let images: Vec<Vector> = basis.iter().map(|b| b.mul_vec(&rep.cyclic_vector)).collect();
    let xi = Matrix::from_columns(s, &images)?;
    let xi_inv = xi.inverse().ok_or_else(|| {
        Error::DimensionMismatch(format!(
            "orbit of the cyclic vector spans only {} of {s} dimensions",
            xi.rank()
        ))
    })?;

    let mut structure = vec![vec![Vector::new(); s]; s];
    for i in 0..s {
        for j in i..s {
            let product = &basis[i] * &basis[j];
            let coords = xi_inv.mul_vec(&product.mul_vec(&rep.cyclic_vector));
            let rebuilt = coords
                .iter()
                .zip(&basis)
                .fold(Matrix::zeros(s, s), |acc, (c, b)| &acc + &b.scale(c));
            if rebuilt != product {
                return Err(Error::Internal("product escaped the generated algebra".into()));
            }
            structure[j][i] = coords.clone();
            structure[i][j] = coords;
        }
    }
    let mut names = vec!["1".to_string()];
    names.extend((1..=rep.l()).map(|i| format!("u{i}")));
    names.extend((1..=rep.r()).map(|i| format!("w{i}")));
    names.extend((names.len()..s).map(|i| format!("p{i}")));
    let algebra = Algebra::validate(structure, linalg::unit_vector(s, 0))?.with_basis_names(names)?;

    let gens: Vec<Vector> = (1..=rep.l() + rep.r()).map(|i| linalg::unit_vector(s, i)).collect();
    let u = Subspace::from_spanning(s, &gens)?;
    let subspace = split_generating_subspace(&algebra, &u)?;
    if subspace.l() != rep.l() || subspace.r() != rep.r() {
        return Err(Error::SignatureMismatch {
            expected_l: rep.l(),
            expected_r: rep.r(),
            l: subspace.l(),
            r: subspace.r(),
        });
    }
    Ok(Forward {
        algebra,
        subspace,
        xi,
        basis_matrices: basis,
    })
}

/// `(A, U)` → representation by left multiplication, cyclic vector `1`.
pub fn ht_backward(algebra: &Algebra, subspace: &GeneratingSubspace) -> Result<CyclicRep, Error> {
    let nilpotent = subspace
        .nilpotent_part()
        .basis()
        .iter()
        .map(|u| algebra.left_mult_operator(u))
        .collect();
    let semisimple = subspace
        .semisimple_part()
        .basis()
        .iter()
        .map(|u| algebra.left_mult_operator(u))
        .collect();
    CyclicRep::new(nilpotent, semisimple, algebra.unit().to_vec(), None)
}

/// Result of checking `ht_backward ∘ ht_forward` against the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    /// `ξ · L_u = ρ(u) · ξ` for every backward generator.
    pub intertwines: bool,
    /// `ξ(1) = v`.
    pub unit_to_cyclic_vector: bool,
    /// Backward nilpotent/semisimple generators span the same spaces as the
    /// original ones.
    pub generator_spans_match: bool,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.intertwines && self.unit_to_cyclic_vector && self.generator_spans_match
    }
}

pub fn check_round_trip(rep: &CyclicRep, forward: &Forward, backward: &CyclicRep) -> RoundTrip {
    let s = rep.ambient_dim;
    let ordered = forward.subspace.ordered_basis();
    let back_gens: Vec<&Matrix> = backward.generators().collect();
    let images: Vec<Matrix> = ordered.iter().map(|u| forward.matrix_of(u)).collect();
    let intertwines = back_gens.len() == images.len()
        && back_gens
            .iter()
            .zip(&images)
            .all(|(l, m)| &forward.xi * *l == m * &forward.xi);
    let unit_to_cyclic_vector = forward.xi.mul_vec(backward.cyclic_vector()) == rep.cyclic_vector;
    let span = |ms: &[Matrix]| {
        let flat: Vec<Vector> = ms.iter().map(|m| m.entries().to_vec()).collect();
        Subspace::from_spanning(s * s, &flat).expect("flattened matrices")
    };
    let l = forward.subspace.l();
    let generator_spans_match = images.len() == rep.l() + rep.r()
        && span(&images[..l]) == span(&rep.nilpotent_gens)
        && span(&images[l..]) == span(&rep.semisimple_gens);
    RoundTrip {
        intertwines,
        unit_to_cyclic_vector,
        generator_spans_match,
    }
}

/// The scalar product `F_v(a, a') = F(ξa, ξa')` pulled back to the algebra,
/// with the outcome of the identities it must satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedForm {
    pub matrix: Matrix,
    /// `F_v(u a₁, a₂) + F_v(a₁, u a₂) = 0` for every generator and basis pair.
    pub derivative_identity: bool,
    /// First failure as `(generator index, a₁ index, a₂ index)`.
    pub first_violation: Option<(usize, usize, usize)>,
    /// `F_v(1, 1) = F(v, v)`.
    pub unit_norm_matches: bool,
    /// `F(v, v) = 0`, required for quadric data.
    pub cyclic_vector_isotropic: bool,
}

pub fn induced_form(rep: &CyclicRep, xi: &Matrix) -> Result<InducedForm, Error> {
    let form = rep.ambient_form().ok_or(Error::NoAmbientForm)?;
    let s = rep.ambient_dim;
    if xi.rows() != s || xi.cols() != s {
        return Err(Error::DimensionMismatch("ξ has the wrong size".into()));
    }
    let xi_inv = xi
        .inverse()
        .ok_or_else(|| Error::DimensionMismatch("ξ is not invertible".into()))?;
    let fv = &(&xi.transpose() * form) * xi;

    let mut first_violation = None;
    'outer: for (g, m) in rep.generators().enumerate() {
        let l = &(&xi_inv * m) * xi;
        let sym = &(&l.transpose() * &fv) + &(&fv * &l);
        for i in 0..s {
            for j in 0..s {
                if !sym.get(i, j).is_zero() {
                    first_violation = Some((g, i, j));
                    break 'outer;
                }
            }
        }
    }
    let v = rep.cyclic_vector();
    let unit = xi_inv.mul_vec(v);
    let ambient_norm = form.bilinear(v, v);
    Ok(InducedForm {
        unit_norm_matches: fv.bilinear(&unit, &unit) == ambient_norm,
        cyclic_vector_isotropic: ambient_norm.is_zero(),
        derivative_identity: first_violation.is_none(),
        first_violation,
        matrix: fv,
    })
}

/// Checks that `phi` (columns: images of the basis of the first algebra) is
/// an isomorphism of pairs, and of forms up to one nonzero scalar when forms
/// are given.
pub fn verify_equivalence(
    first: (&Algebra, &GeneratingSubspace),
    second: (&Algebra, &GeneratingSubspace),
    phi: &Matrix,
    forms: Option<(&Matrix, &Matrix)>,
) -> Result<bool, Error> {
    let (a1, u1) = first;
    let (a2, u2) = second;
    let s = a1.dim();
    if a2.dim() != s || phi.rows() != s || phi.cols() != s {
        return Err(Error::DimensionMismatch(
            "algebras and phi must share one dimension".into(),
        ));
    }
    if !phi.is_invertible() {
        return Ok(false);
    }
    let cols = phi.column_vectors();
    for i in 0..s {
        for j in i..s {
            let lhs = phi.mul_vec(a1.basis_product(i, j));
            if lhs != a2.multiply(&cols[i], &cols[j])? {
                return Ok(false);
            }
        }
    }
    if phi.mul_vec(a1.unit()) != a2.unit() {
        return Ok(false);
    }
    let mapped: Vec<Vector> = u1.subspace().basis().iter().map(|u| phi.mul_vec(u)).collect();
    if &Subspace::from_spanning(s, &mapped)? != u2.subspace() {
        return Ok(false);
    }
    if let Some((f1, f2)) = forms {
        if f1.rows() != s || f2.rows() != s {
            return Err(Error::DimensionMismatch("forms have the wrong size".into()));
        }
        let pulled = &(&phi.transpose() * f2) * phi;
        match linalg::proportionality(pulled.entries(), f1.entries()) {
            Some(c) if !c.is_zero() => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, unit_vector};
    use crate::quadric::catalog::{self, ActionKind};

    fn mixed_rep() -> CyclicRep {
        catalog::catalog_model(ActionKind::MixedN2, 2).unwrap().rep
    }

    #[test]
    fn mixed_model_gives_the_reference_algebra() {
        let fwd = ht_forward(&mixed_rep()).unwrap();
        assert_eq!(fwd.algebra.structure(), catalog::reference_algebra().structure());
        assert_eq!(fwd.algebra.unit(), catalog::reference_algebra().unit());
    }

    #[test]
    fn torus_n1_forward() {
        let rep = catalog::catalog_model(ActionKind::TorusN1, 1).unwrap().rep;
        let fwd = ht_forward(&rep).unwrap();
        assert_eq!(fwd.algebra.dim(), 3);
        assert!(fwd.algebra.radical().unwrap().is_zero());
        assert_eq!(fwd.subspace.subspace().basis(), &[unit_vector(3, 1)]);
        assert_eq!((fwd.subspace.l(), fwd.subspace.r()), (0, 1));
    }

    #[test]
    fn non_cyclic_vector_is_a_dimension_mismatch() {
        let rep = mixed_rep();
        let bad = CyclicRep::new(
            rep.nilpotent_gens().to_vec(),
            rep.semisimple_gens().to_vec(),
            unit_vector(4, 0),
            None,
        )
        .unwrap();
        assert!(!bad.is_cyclic());
        assert!(matches!(ht_forward(&bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn backward_examples() {
        let a = catalog::reference_algebra();
        let u = Subspace::from_spanning(4, &[unit_vector(4, 1), unit_vector(4, 2)]).unwrap();
        let g = split_generating_subspace(&a, &u).unwrap();
        let rep = ht_backward(&a, &g).unwrap();
        assert_eq!(rep.nilpotent_gens(), &[a.left_mult_operator(&unit_vector(4, 1))]);
        assert_eq!(rep.semisimple_gens(), &[a.left_mult_operator(&unit_vector(4, 2))]);
        assert_eq!(rep.cyclic_vector(), unit_vector(4, 0).as_slice());

        let t = Algebra::truncated_polynomial(3);
        let g = split_generating_subspace(&t, &Subspace::from_spanning(3, &[unit_vector(3, 1)]).unwrap()).unwrap();
        let rep = ht_backward(&t, &g).unwrap();
        assert_eq!(
            rep.nilpotent_gens(),
            &[Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])]
        );

        let k = Algebra::field();
        let g = split_generating_subspace(&k, &Subspace::zero(1)).unwrap();
        let rep = ht_backward(&k, &g).unwrap();
        assert_eq!(rep.generators().count(), 0);
        assert_eq!(rep.cyclic_vector(), &[rat(1)]);
    }

    #[test]
    fn mixed_form_table() {
        let rep = mixed_rep();
        let fwd = ht_forward(&rep).unwrap();
        let f = induced_form(&rep, &fwd.xi).unwrap();
        assert_eq!(f.matrix, catalog::reference_form());
        assert!(f.derivative_identity && f.unit_norm_matches && f.cyclic_vector_isotropic);
    }

    #[test]
    fn additive_n1_form_table() {
        let rep = catalog::catalog_model(ActionKind::Additive, 1).unwrap().rep;
        let fwd = ht_forward(&rep).unwrap();
        let f = induced_form(&rep, &fwd.xi).unwrap();
        let expected = Matrix::from_i64(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
        assert_eq!(f.matrix, expected);
        assert!(f.derivative_identity);
    }

    #[test]
    fn non_isotropic_cyclic_vector_is_flagged() {
        let rep = mixed_rep();
        let v = vec![rat(1), rat(0), rat(1), rat(1)];
        let other = CyclicRep::new(
            rep.nilpotent_gens().to_vec(),
            rep.semisimple_gens().to_vec(),
            v,
            rep.ambient_form().cloned(),
        )
        .unwrap();
        let fwd = ht_forward(&other).unwrap();
        let f = induced_form(&other, &fwd.xi).unwrap();
        assert!(!f.cyclic_vector_isotropic);
        assert!(f.unit_norm_matches);
        assert!(!f.matrix.get(0, 0).is_zero());
    }

    #[test]
    fn missing_form_is_an_error() {
        let rep = mixed_rep().with_form(None).unwrap();
        let fwd = ht_forward(&rep).unwrap();
        assert_eq!(induced_form(&rep, &fwd.xi), Err(Error::NoAmbientForm));
    }

    #[test]
    fn equivalence_examples() {
        let a = catalog::reference_algebra();
        let u = Subspace::from_spanning(4, &[unit_vector(4, 1), unit_vector(4, 2)]).unwrap();
        let g = split_generating_subspace(&a, &u).unwrap();
        let f = catalog::reference_form();
        assert!(verify_equivalence((&a, &g), (&a, &g), &Matrix::identity(4), Some((&f, &f))).unwrap());

        let swap = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        assert!(!verify_equivalence((&a, &g), (&a, &g), &swap, None).unwrap());

        let q4 = Algebra::split_semisimple(4);
        let u1 = Subspace::from_spanning(
            4,
            &[
                vec![rat(1), rat(-1), rat(0), rat(0)],
                vec![rat(0), rat(0), rat(1), rat(-1)],
            ],
        )
        .unwrap();
        let g1 = split_generating_subspace(&q4, &u1).unwrap();
        // the permutation (0 2)(1 3), which maps U onto itself
        let perm = Matrix::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert!(verify_equivalence((&q4, &g1), (&q4, &g1), &perm, None).unwrap());
        // the transposition (1 2) maps U elsewhere
        let t12 = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let mapped: Vec<Vector> = u1.basis().iter().map(|v| t12.mul_vec(v)).collect();
        let u2 = Subspace::from_spanning(4, &mapped).unwrap();
        let g2 = split_generating_subspace(&q4, &u2).unwrap();
        assert!(verify_equivalence((&q4, &g1), (&q4, &g2), &t12, None).unwrap());
        assert!(!verify_equivalence((&q4, &g1), (&q4, &g1), &t12, None).unwrap());
    }
}
