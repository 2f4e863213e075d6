//! The compatibility system between the scalar product and the generating
//! subspace, and the structural facts it implies.

use num_traits::Zero;

use super::QuadricActionData;
use crate::linalg::{Matrix, Rational, Subspace, Vector};

/// A basis pair on which `F(u·a₁, a₂) + F(a₁, u·a₂)` does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Position of the generator in the `U_a`-then-`U_m` basis.
    pub generator_index: usize,
    pub generator: Vector,
    pub a1: usize,
    pub a2: usize,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    /// `F(1, 1)`
    pub unit_norm: Rational,
    pub violation: Option<Violation>,
}

impl CompatibilityReport {
    pub fn unit_isotropic(&self) -> bool {
        self.unit_norm.is_zero()
    }

    pub fn passed(&self) -> bool {
        self.unit_isotropic() && self.violation.is_none()
    }
}

/// Checks `F(1,1) = 0` and `F(u·a₁, a₂) + F(a₁, u·a₂) = 0` for every
/// generator and basis pair. Pairs are scanned with `a₂ ≤ a₁`, and for each
/// pair the generators in basis order; the first failure is reported.
pub fn check_compatibility(data: &QuadricActionData) -> CompatibilityReport {
    let a = &data.algebra;
    let f = &data.form;
    let s = a.dim();
    let unit_norm = f.bilinear(a.unit(), a.unit());
    let gens = data.subspace.ordered_basis();
    let ops: Vec<Matrix> = gens.iter().map(|u| a.left_mult_operator(u)).collect();
    for i in 0..s {
        for j in 0..=i {
            for (g, op) in ops.iter().enumerate() {
                // u·e_i is column i of L_u
                let value = f.bilinear(&op.column(i), &crate::linalg::unit_vector(s, j))
                    + f.bilinear(&crate::linalg::unit_vector(s, i), &op.column(j));
                if !value.is_zero() {
                    return CompatibilityReport {
                        unit_norm,
                        violation: Some(Violation {
                            generator_index: g,
                            generator: gens[g].clone(),
                            a1: i,
                            a2: j,
                            value,
                        }),
                    };
                }
            }
        }
    }
    CompatibilityReport {
        unit_norm,
        violation: None,
    }
}

/// The same identity as matrices: `L_uᵀF + F·L_u = 0` for every generator.
pub fn compatible_by_matrices(data: &QuadricActionData) -> bool {
    let f = &data.form;
    data.subspace.ordered_basis().iter().all(|u| {
        let l = data.algebra.left_mult_operator(u);
        (&(&l.transpose() * f) + &(f * &l)).is_zero()
    })
}

/// The five consequences of compatibility, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma3Report {
    /// Whether the input passed [`check_compatibility`]; the items are only
    /// guaranteed when it did.
    pub compatible: bool,
    /// Every `u ∈ U` is orthogonal to `1`.
    pub orthogonal_to_unit: bool,
    /// Every product `u₁u₂` lies in `U^⊥`.
    pub products_in_perp: bool,
    /// `F` restricted to `U` is nondegenerate.
    pub restriction_nondegenerate: bool,
    pub perp: Subspace,
    /// `dim(U^⊥ ∩ R)`, evaluated only when `l ≠ 0`.
    pub perp_radical_dim: Option<usize>,
}

impl Lemma3Report {
    pub fn perp_dim(&self) -> usize {
        self.perp.dim()
    }

    pub fn perp_dim_two(&self) -> bool {
        self.perp.dim() == 2
    }

    pub fn perp_radical_line(&self) -> Option<bool> {
        self.perp_radical_dim.map(|d| d == 1)
    }

    /// Items (i) to (v) in order; `None` marks a skipped item.
    pub fn items(&self) -> [Option<bool>; 5] {
        [
            Some(self.orthogonal_to_unit),
            Some(self.products_in_perp),
            Some(self.restriction_nondegenerate),
            Some(self.perp_dim_two()),
            self.perp_radical_line(),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.items().iter().all(|i| i.unwrap_or(true))
    }
}

pub fn lemma3_report(data: &QuadricActionData) -> Lemma3Report {
    let a = &data.algebra;
    let f = &data.form;
    let u = data.subspace.subspace();
    let basis = u.basis();
    let orthogonal_to_unit = basis.iter().all(|b| f.bilinear(a.unit(), b).is_zero());
    let perp = u.orthogonal(f).expect("form matches the algebra");
    let products_in_perp = basis.iter().enumerate().all(|(i, x)| {
        basis[i..]
            .iter()
            .all(|y| perp.contains(&a.multiply(x, y).expect("same algebra")))
    });
    let gram = Matrix::from_vec(
        basis.len(),
        basis.len(),
        basis
            .iter()
            .flat_map(|x| basis.iter().map(move |y| f.bilinear(x, y)))
            .collect(),
    )
    .expect("square gram matrix");
    let restriction_nondegenerate = gram.is_invertible();
    let perp_radical_dim = (data.l() != 0).then(|| {
        let rad = a.radical().expect("validated algebra");
        perp.intersection(&rad).expect("same ambient space").dim()
    });
    Lemma3Report {
        compatible: check_compatibility(data).passed(),
        orthogonal_to_unit,
        products_in_perp,
        restriction_nondegenerate,
        perp,
        perp_radical_dim,
    }
}
