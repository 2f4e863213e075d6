//! Finite-dimensional commutative associative unital algebras given by
//! structure constants.

mod generating;

pub use generating::{split_generating_subspace, GeneratingSubspace};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{
    self, is_nilpotent, minimal_polynomial, rat, split_over_rationals, Matrix, Rational, Subspace, Vector,
};

/// A validated algebra: `e_i · e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    /// `products[i * dim + j]` is the coordinate vector of `e_i · e_j`.
    products: Vec<Vector>,
    unit: Vector,
    basis_names: Option<Vec<String>>,
}

/// Nilpotent, semisimple, or neither, judged by the minimal polynomial of
/// the multiplication operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementType {
    Nilpotent,
    Semisimple,
    Mixed,
}

impl Algebra {
    /// Checks commutativity, associativity and the unit exactly, reporting
    /// the first violation with its witnessing indices.
    pub fn validate(structure: Vec<Vec<Vector>>, unit: Vector) -> Result<Self, Error> {
        let dim = unit.len();
        if structure.len() != dim
            || structure
                .iter()
                .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::DimensionMismatch(format!(
                "structure tensor must be {dim}x{dim}x{dim}"
            )));
        }
        let products: Vec<Vector> = structure.into_iter().flatten().collect();
        let alg = Self {
            dim,
            products,
            unit,
            basis_names: None,
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    /// Builds from a product rule on basis indices and validates.
    pub fn from_fn(dim: usize, unit: Vector, mut product: impl FnMut(usize, usize) -> Vector) -> Result<Self, Error> {
        let structure = (0..dim).map(|i| (0..dim).map(|j| product(i, j)).collect()).collect();
        Self::validate(structure, unit)
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self, Error> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch("one name per basis vector".into()));
        }
        self.basis_names = Some(names);
        Ok(self)
    }

    fn check_axioms(&self) -> Result<(), Error> {
        let s = self.dim;
        for i in 0..s {
            for j in i + 1..s {
                let (a, b) = (self.basis_product(i, j), self.basis_product(j, i));
                if let Some(k) = (0..s).find(|&k| a[k] != b[k]) {
                    return Err(Error::NotCommutative(i, j, k));
                }
            }
        }
        for i in 0..s {
            for j in 0..s {
                for k in 0..s {
                    let left = self.multiply_unchecked(self.basis_product(i, j), &linalg::unit_vector(s, k));
                    let right = self.multiply_unchecked(&linalg::unit_vector(s, i), self.basis_product(j, k));
                    if left != right {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..s {
            let e = linalg::unit_vector(s, i);
            if self.multiply_unchecked(&self.unit, &e) != e {
                return Err(Error::UnitFails(i));
            }
        }
        Ok(())
    }

    /// The trivial algebra ℚ.
    pub fn field() -> Self {
        Self::from_fn(1, vec![rat(1)], |_, _| vec![rat(1)]).expect("ℚ is an algebra")
    }

    /// `ℚ[x]/(x^k)` in the monomial basis `1, x, …, x^{k-1}`.
    pub fn truncated_polynomial(k: usize) -> Self {
        assert!(k >= 1);
        Self::from_fn(k, linalg::unit_vector(k, 0), |i, j| {
            if i + j < k {
                linalg::unit_vector(k, i + j)
            } else {
                linalg::zero_vector(k)
            }
        })
        .expect("truncated polynomial ring is an algebra")
    }

    /// `ℚ^k` in its basis of orthogonal idempotents.
    pub fn split_semisimple(k: usize) -> Self {
        assert!(k >= 1);
        Self::from_fn(k, vec![rat(1); k], |i, j| {
            if i == j {
                linalg::unit_vector(k, i)
            } else {
                linalg::zero_vector(k)
            }
        })
        .expect("product of fields is an algebra")
    }

    /// Direct product, with the factors' bases concatenated.
    pub fn product(factors: &[Algebra]) -> Self {
        let dim: usize = factors.iter().map(Algebra::dim).sum();
        let mut offsets = Vec::with_capacity(factors.len());
        let mut acc = 0;
        for f in factors {
            offsets.push(acc);
            acc += f.dim;
        }
        let locate = |idx: usize| {
            let f = offsets.iter().rposition(|&o| o <= idx).unwrap();
            (f, idx - offsets[f])
        };
        let mut unit = linalg::zero_vector(dim);
        for (f, o) in factors.iter().zip(&offsets) {
            unit[*o..*o + f.dim].clone_from_slice(&f.unit);
        }
        Self::from_fn(dim, unit, |i, j| {
            let (fi, a) = locate(i);
            let (fj, b) = locate(j);
            let mut v = linalg::zero_vector(dim);
            if fi == fj {
                let o = offsets[fi];
                v[o..o + factors[fi].dim].clone_from_slice(factors[fi].basis_product(a, b));
            }
            v
        })
        .expect("product of algebras is an algebra")
    }

    /// The same algebra in the basis whose vectors are the columns of `change`.
    pub fn change_basis(&self, change: &Matrix) -> Result<Self, Error> {
        if change.rows() != self.dim || change.cols() != self.dim {
            return Err(Error::DimensionMismatch("change of basis has the wrong size".into()));
        }
        let inv = change
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        let cols = change.column_vectors();
        let unit = inv.mul_vec(&self.unit);
        Self::from_fn(self.dim, unit, |i, j| {
            inv.mul_vec(&self.multiply_unchecked(&cols[i], &cols[j]))
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    /// Coordinates of `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.products[i * self.dim + j]
    }

    /// Structure tensor as nested vectors, `c[i][j]` = coordinates of `e_i e_j`.
    pub fn structure(&self) -> Vec<Vec<Vector>> {
        self.products.chunks(self.dim.max(1)).map(<[Vector]>::to_vec).collect()
    }

    pub fn multiply(&self, a: &[Rational], b: &[Rational]) -> Result<Vector, Error> {
        if a.len() != self.dim || b.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} in a {}-dimensional algebra",
                a.len(),
                b.len(),
                self.dim
            )));
        }
        Ok(self.multiply_unchecked(a, b))
    }

    fn multiply_unchecked(&self, a: &[Rational], b: &[Rational]) -> Vector {
        let mut out = linalg::zero_vector(self.dim);
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let c = ai * bj;
                for (o, p) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !p.is_zero() {
                        *o += &c * p;
                    }
                }
            }
        }
        out
    }

    /// `a·a·…·a` (`k` factors, `a⁰ = 1`).
    pub fn power(&self, a: &[Rational], k: usize) -> Vector {
        (0..k).fold(self.unit.clone(), |acc, _| self.multiply_unchecked(&acc, a))
    }

    /// Matrix of `x ↦ a·x`; column `j` is `a·e_j`.
    pub fn left_mult_operator(&self, a: &[Rational]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.multiply_unchecked(a, &linalg::unit_vector(self.dim, j)))
            .collect();
        Matrix::from_columns(self.dim, &cols).expect("square operator")
    }

    /// Smallest subspace containing the unit and `u`, closed under products.
    pub fn span_closure(&self, u: &Subspace) -> Result<Subspace, Error> {
        if u.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch("subspace lives in another space".into()));
        }
        let mut vecs: Vec<Vector> = vec![self.unit.clone()];
        vecs.extend(u.basis().iter().cloned());
        let mut current = Subspace::from_spanning(self.dim, &vecs)?;
        loop {
            let basis = current.basis();
            let mut next_vecs = basis.to_vec();
            for (i, a) in basis.iter().enumerate() {
                for b in &basis[i..] {
                    next_vecs.push(self.multiply_unchecked(a, b));
                }
            }
            let next = Subspace::from_spanning(self.dim, &next_vecs)?;
            if next.dim() == current.dim() {
                return Ok(current);
            }
            current = next;
        }
    }

    pub fn generates(&self, u: &Subspace) -> Result<bool, Error> {
        Ok(self.span_closure(u)?.dim() == self.dim)
    }

    /// Gram matrix of the trace form `T(a, b) = tr L_{ab}` on the basis.
    pub fn trace_form(&self) -> Matrix {
        let s = self.dim;
        let traces: Vec<Rational> = (0..s)
            .map(|m| (0..s).fold(Rational::zero(), |acc, j| acc + &self.basis_product(m, j)[j]))
            .collect();
        let mut t = Matrix::zeros(s, s);
        for i in 0..s {
            for j in 0..s {
                t.set(i, j, linalg::dot(self.basis_product(i, j), &traces));
            }
        }
        t
    }

    /// The nilradical, as the kernel of the trace form. Every basis vector of
    /// the result is re-checked for nilpotency.
    pub fn radical(&self) -> Result<Subspace, Error> {
        let rad = self.trace_form().kernel();
        for b in rad.basis() {
            if !is_nilpotent(&self.left_mult_operator(b)) {
                return Err(Error::InconsistentRadical(format!(
                    "trace-form kernel vector {:?} is not nilpotent",
                    b.iter().map(linalg::format_rational).collect::<Vec<_>>()
                )));
            }
        }
        Ok(rad)
    }

    /// Number of maximal ideals over the algebraic closure, `dim A − dim R`,
    /// and whether `A/R` splits over ℚ.
    ///
    /// The flag is decided by searching the deterministic elements
    /// `Σ_i c^i e_i` for one whose multiplication operator has `dim A − dim R`
    /// distinct rational eigenvalues; only finitely many `c` can fail when one
    /// exists.
    pub fn maximal_ideal_count(&self) -> Result<(usize, bool), Error> {
        let m = self.dim - self.radical()?.dim();
        let tries = 2 * self.dim * self.dim + 2;
        let split = (1..=tries as i64).any(|c| {
            let mut coeff = Rational::one();
            let a: Vector = (0..self.dim)
                .map(|_| {
                    let x = coeff.clone();
                    coeff *= rat(c);
                    x
                })
                .collect();
            let p = minimal_polynomial(&self.left_mult_operator(&a)).squarefree_part();
            p.degree() == Some(m) && split_over_rationals(&p)
        });
        Ok((m, split))
    }

    pub fn element_type(&self, a: &[Rational]) -> Result<ElementType, Error> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch("element of another algebra".into()));
        }
        let p = minimal_polynomial(&self.left_mult_operator(a));
        Ok(if p.monomial_degree().is_some() {
            ElementType::Nilpotent
        } else if p.is_squarefree() {
            ElementType::Semisimple
        } else {
            ElementType::Mixed
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vector;

    fn mixed() -> Algebra {
        crate::quadric::catalog::reference_algebra()
    }

    #[test]
    fn truncated_polynomial_is_valid_and_local() {
        let a = Algebra::truncated_polynomial(3);
        let rad = a.radical().unwrap();
        let expected = Subspace::from_spanning(3, &[unit_vector(3, 1), unit_vector(3, 2)]).unwrap();
        assert_eq!(rad, expected);
        assert_eq!(a.maximal_ideal_count().unwrap(), (1, true));
    }

    #[test]
    fn broken_commutativity_is_reported() {
        let a = mixed();
        let mut structure = a.structure();
        // u·w = h on one side only
        structure[1][2][3] = rat(0);
        assert_eq!(
            Algebra::validate(structure, a.unit().to_vec()),
            Err(Error::NotCommutative(1, 2, 3))
        );
    }

    #[test]
    fn broken_unit_is_reported() {
        let a = Algebra::truncated_polynomial(2);
        let err = Algebra::validate(a.structure(), vec![rat(2), rat(0)]).unwrap_err();
        assert_eq!(err, Error::UnitFails(0));
    }

    #[test]
    fn non_associative_table_is_reported() {
        // x²·x² = x breaks (x·x)·x² = x·(x·x²)
        let t = Algebra::truncated_polynomial(3);
        let mut s = t.structure();
        s[2][2] = unit_vector(3, 1);
        let err = Algebra::validate(s, t.unit().to_vec()).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)), "{err:?}");
    }

    #[test]
    fn mixed_products() {
        let a = mixed();
        let (u, w, h) = (unit_vector(4, 1), unit_vector(4, 2), unit_vector(4, 3));
        assert_eq!(a.multiply(&u, &w).unwrap(), h);
        assert_eq!(a.multiply(&w, &w).unwrap(), unit_vector(4, 0));
        let x = vec![rat(3), rat(-1), rat(2), rat(5)];
        assert_eq!(a.multiply(a.unit(), &x).unwrap(), x);
        assert!(a.multiply(&u, &[rat(1)]).is_err());
    }

    #[test]
    fn left_multiplication_operators() {
        assert_eq!(mixed().left_mult_operator(mixed().unit()), Matrix::identity(4));
        let shift = Algebra::truncated_polynomial(3).left_mult_operator(&unit_vector(3, 1));
        assert_eq!(shift, Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]));
        // w swaps 1 <-> w and u <-> h
        let lw = mixed().left_mult_operator(&unit_vector(4, 2));
        assert_eq!(
            lw,
            Matrix::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]])
        );
    }

    #[test]
    fn span_closure_examples() {
        let a = mixed();
        let uw = Subspace::from_spanning(4, &[unit_vector(4, 1), unit_vector(4, 2)]).unwrap();
        assert_eq!(a.span_closure(&uw).unwrap(), Subspace::full(4));
        let uh = Subspace::from_spanning(4, &[unit_vector(4, 1), unit_vector(4, 3)]).unwrap();
        let expected = Subspace::from_spanning(4, &[unit_vector(4, 0), unit_vector(4, 1), unit_vector(4, 3)]).unwrap();
        assert_eq!(a.span_closure(&uh).unwrap(), expected);
        let zero = Subspace::zero(4);
        assert_eq!(
            a.span_closure(&zero).unwrap(),
            Subspace::from_spanning(4, &[a.unit().to_vec()]).unwrap()
        );
    }

    #[test]
    fn radicals() {
        assert!(Algebra::split_semisimple(4).radical().unwrap().is_zero());
        let rad = mixed().radical().unwrap();
        assert_eq!(
            rad,
            Subspace::from_spanning(4, &[unit_vector(4, 1), unit_vector(4, 3)]).unwrap()
        );
        assert_eq!(mixed().maximal_ideal_count().unwrap(), (2, true));
        assert_eq!(Algebra::split_semisimple(4).maximal_ideal_count().unwrap(), (4, true));
    }

    #[test]
    fn non_split_quotient_flag() {
        // ℚ[x]/(x² − 2) ≅ ℚ(√2): two maximal ideals over the closure, not split.
        let a = Algebra::from_fn(2, unit_vector(2, 0), |i, j| match (i, j) {
            (0, k) | (k, 0) => unit_vector(2, k),
            _ => vec![rat(2), rat(0)],
        })
        .unwrap();
        assert_eq!(a.maximal_ideal_count().unwrap(), (2, false));
    }

    #[test]
    fn element_types() {
        let a = mixed();
        assert_eq!(a.element_type(a.unit()).unwrap(), ElementType::Semisimple);
        assert_eq!(a.element_type(&unit_vector(4, 1)).unwrap(), ElementType::Nilpotent);
        let one_plus_u = vec![rat(1), rat(1), rat(0), rat(0)];
        assert_eq!(a.element_type(&one_plus_u).unwrap(), ElementType::Mixed);
        assert_eq!(
            minimal_polynomial(&a.left_mult_operator(&one_plus_u)),
            crate::linalg::Poly::from_i64(&[1, -2, 1])
        );
    }

    #[test]
    fn product_and_change_of_basis_preserve_structure() {
        let p = Algebra::product(&[Algebra::truncated_polynomial(2), Algebra::field()]);
        assert_eq!(p.dim(), 3);
        assert_eq!(p.radical().unwrap().dim(), 1);
        let change = Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]]);
        let q = p.change_basis(&change).unwrap();
        assert_eq!(q.radical().unwrap().dim(), 1);
        assert_eq!(q.maximal_ideal_count().unwrap(), (2, true));
    }
}
