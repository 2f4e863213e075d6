//! The explicit commutative actions on low-dimensional quadrics and the
//! reference tables for the mixed action on `Q_2`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{QuadricActionData, QuadricForm};
use crate::algebra::Algebra;
use crate::bridge::CyclicRep;
use crate::error::Error;
use crate::linalg::{frac, rat, unit_vector, Matrix, Rational, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    /// `𝔾_a^n` on `Q_n`, any `n ≥ 1`.
    Additive,
    /// `𝔾_a × 𝔾_m` on `Q_2`.
    MixedN2,
    /// `𝔾_m` on `Q_1`.
    TorusN1,
    /// `𝔾_m^2` on `Q_2`.
    TorusN2,
}

impl ActionKind {
    pub const ALL: [ActionKind; 4] = [
        ActionKind::Additive,
        ActionKind::MixedN2,
        ActionKind::TorusN1,
        ActionKind::TorusN2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ActionKind::Additive => "additive",
            ActionKind::MixedN2 => "mixed_n2",
            ActionKind::TorusN1 => "torus_n1",
            ActionKind::TorusN2 => "torus_n2",
        }
    }

    /// Number of group parameters.
    pub fn param_count(self, n: usize) -> usize {
        match self {
            ActionKind::Additive => n,
            ActionKind::MixedN2 | ActionKind::TorusN2 => 2,
            ActionKind::TorusN1 => 1,
        }
    }

    /// Whether parameter `i` is multiplicative (must be nonzero).
    pub fn is_multiplicative(self, i: usize) -> bool {
        match self {
            ActionKind::Additive => false,
            ActionKind::MixedN2 => i == 1,
            ActionKind::TorusN1 | ActionKind::TorusN2 => true,
        }
    }

    pub fn identity_params(self, n: usize) -> Vec<Rational> {
        (0..self.param_count(n))
            .map(|i| {
                if self.is_multiplicative(i) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }

    /// Group law on parameter tuples.
    pub fn group_product(self, p: &[Rational], q: &[Rational]) -> Vec<Rational> {
        p.iter()
            .zip(q)
            .enumerate()
            .map(|(i, (a, b))| if self.is_multiplicative(i) { a * b } else { a + b })
            .collect()
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ActionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown action kind {s:?}")))
    }
}

/// An explicit action: strictly orthogonal Lie-algebra generators (with the
/// base point as cyclic vector and the quadric's form attached), the quadric,
/// and a base point in the open orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionModel {
    pub kind: ActionKind,
    pub n: usize,
    pub rep: CyclicRep,
    pub quadric: QuadricForm,
    pub base_point: Vector,
}

impl ActionModel {
    pub fn orbit_dimension_at(&self, point: &[Rational]) -> usize {
        let gens: Vec<Matrix> = self.rep.generators().cloned().collect();
        orbit_dimension_at(&gens, point)
    }
}

fn e(s: usize, i: usize, j: usize, value: Rational) -> Matrix {
    let mut m = Matrix::zeros(s, s);
    m.set(i, j, value);
    m
}

fn form_from_entries(s: usize, entries: &[(usize, usize, Rational)]) -> Matrix {
    let mut f = Matrix::zeros(s, s);
    for (i, j, v) in entries {
        f.set(*i, *j, v.clone());
        f.set(*j, *i, v.clone());
    }
    f
}

pub fn catalog_model(kind: ActionKind, n: usize) -> Result<ActionModel, Error> {
    let unsupported = || Error::Unsupported {
        kind: kind.name().into(),
        n,
    };
    let s = n + 2;
    let (nilpotent, semisimple, form, base_point) = match kind {
        ActionKind::Additive => {
            if n == 0 {
                return Err(unsupported());
            }
            // x₀x_{n+1} = x₁² + … + x_n²
            let gens = (1..=n).map(|i| &e(s, 0, i, rat(2)) + &e(s, i, n + 1, rat(1))).collect();
            let mut entries = vec![(0, n + 1, frac(1, 2))];
            entries.extend((1..=n).map(|i| (i, i, rat(-1))));
            (gens, vec![], form_from_entries(s, &entries), unit_vector(s, n + 1))
        }
        ActionKind::MixedN2 => {
            if n != 2 {
                return Err(unsupported());
            }
            // x₀x₃ = x₁x₂, the degenerate 2×2 matrices
            let nil = &e(4, 0, 2, rat(1)) + &e(4, 1, 3, rat(1));
            let ss = Matrix::diagonal(&[rat(1), rat(-1), rat(1), rat(-1)]);
            let f = form_from_entries(4, &[(0, 3, frac(1, 2)), (1, 2, frac(-1, 2))]);
            (vec![nil], vec![ss], f, vec![rat(1); 4])
        }
        ActionKind::TorusN1 => {
            if n != 1 {
                return Err(unsupported());
            }
            // x₀x₁ = x₂²
            let ss = Matrix::diagonal(&[rat(1), rat(-1), rat(0)]);
            let f = form_from_entries(3, &[(0, 1, frac(1, 2)), (2, 2, rat(-1))]);
            (vec![], vec![ss], f, vec![rat(1); 3])
        }
        ActionKind::TorusN2 => {
            if n != 2 {
                return Err(unsupported());
            }
            // x₀x₁ = x₂x₃
            let s1 = Matrix::diagonal(&[rat(1), rat(-1), rat(0), rat(0)]);
            let s2 = Matrix::diagonal(&[rat(0), rat(0), rat(1), rat(-1)]);
            let f = form_from_entries(4, &[(0, 1, frac(1, 2)), (2, 3, frac(-1, 2))]);
            (vec![], vec![s1, s2], f, vec![rat(1); 4])
        }
    };
    let quadric = QuadricForm::new(form.clone())?;
    let rep = CyclicRep::new(nilpotent, semisimple, base_point.clone(), Some(form))?;
    Ok(ActionModel {
        kind,
        n,
        rep,
        quadric,
        base_point,
    })
}

/// Image of `point` under the group element with parameters `params`, from
/// the closed-form formulas. The result is checked to lie on the quadric.
pub fn evaluate_action(model: &ActionModel, params: &[Rational], point: &[Rational]) -> Result<Vector, Error> {
    let s = model.n + 2;
    if params.len() != model.kind.param_count(model.n) || point.len() != s {
        return Err(Error::DimensionMismatch(format!(
            "{} on Q_{} takes {} parameters and points with {s} coordinates",
            model.kind,
            model.n,
            model.kind.param_count(model.n)
        )));
    }
    if point.iter().all(Zero::is_zero) || !model.quadric.contains(point) {
        return Err(Error::PointOffQuadric);
    }
    if params
        .iter()
        .enumerate()
        .any(|(i, p)| model.kind.is_multiplicative(i) && p.is_zero())
    {
        return Err(Error::ZeroTorusParameter);
    }
    let x = point;
    let image: Vector = match model.kind {
        ActionKind::Additive => {
            let n = model.n;
            let last = &x[n + 1];
            let linear: Rational = (1..=n).map(|i| &params[i - 1] * &x[i]).sum();
            let square: Rational = params.iter().map(|p| p * p).sum();
            let mut out = Vec::with_capacity(s);
            out.push(&x[0] + rat(2) * linear + square * last);
            out.extend((1..=n).map(|i| &x[i] + &params[i - 1] * last));
            out.push(last.clone());
            out
        }
        ActionKind::MixedN2 => {
            let (sv, t) = (&params[0], &params[1]);
            vec![t * (&x[0] + sv * &x[2]), &x[1] + sv * &x[3], t * &x[2], x[3].clone()]
        }
        ActionKind::TorusN1 => {
            let t = &params[0];
            vec![t * &x[0], &x[1] / t, x[2].clone()]
        }
        ActionKind::TorusN2 => {
            let (t1, t2) = (&params[0], &params[1]);
            vec![t1 * &x[0], &x[1] / t1, t2 * &x[2], &x[3] / t2]
        }
    };
    if !model.quadric.contains(&image) {
        return Err(Error::Internal(format!("{} moved a point off the quadric", model.kind)));
    }
    Ok(image)
}

/// Representative scaled so that the first nonzero coordinate is 1.
pub fn normalize_projective(v: &[Rational]) -> Vector {
    match v.iter().find(|c| !c.is_zero()) {
        Some(lead) => v.iter().map(|c| c / lead).collect(),
        None => v.to_vec(),
    }
}

pub fn projectively_equal(a: &[Rational], b: &[Rational]) -> bool {
    a.len() == b.len() && !a.iter().all(Zero::is_zero) && normalize_projective(a) == normalize_projective(b)
}

/// Dimension of the orbit of `[point]` for the group with the given Lie
/// algebra generators: `dim(span{point, g·point}) − 1`.
pub fn orbit_dimension_at(generators: &[Matrix], point: &[Rational]) -> usize {
    let mut vectors = vec![point.to_vec()];
    vectors.extend(generators.iter().map(|g| g.mul_vec(point)));
    Subspace::from_spanning(point.len(), &vectors)
        .map(|s| s.dim().saturating_sub(1))
        .unwrap_or(0)
}

/// The scalar `λ` with `gᵀFg = λF`, if `g` preserves the quadric projectively.
pub fn check_projective_orthogonality(g: &Matrix, form: &QuadricForm) -> Option<Rational> {
    let f = form.matrix();
    if g.rows() != f.rows() || g.cols() != f.cols() || !g.is_invertible() {
        return None;
    }
    let pulled = &(&g.transpose() * f) * g;
    crate::linalg::proportionality(pulled.entries(), f.entries()).filter(|l| !l.is_zero())
}

/// The algebra of the mixed action on `Q_2` in the basis `{1, u, w, h}`:
/// `uw = h`, `w² = 1`, `wh = u`, and `u² = uh = h² = 0`.
pub fn reference_algebra() -> Algebra {
    let table: [[Option<usize>; 4]; 4] = [
        [Some(0), Some(1), Some(2), Some(3)],
        [Some(1), None, Some(3), None],
        [Some(2), Some(3), Some(0), Some(1)],
        [Some(3), None, Some(1), None],
    ];
    Algebra::from_fn(4, unit_vector(4, 0), |i, j| match table[i][j] {
        Some(k) => unit_vector(4, k),
        None => vec![Rational::zero(); 4],
    })
    .expect("reference table is a valid algebra")
    .with_basis_names(["1", "u", "w", "h"].map(String::from).to_vec())
    .expect("four names")
}

/// Scalar product on the mixed-action algebra: `F(1, h) = 1`,
/// `F(u, w) = −1`, all other basis pairs 0.
pub fn reference_form() -> Matrix {
    form_from_entries(4, &[(0, 3, rat(1)), (1, 2, rat(-1))])
}

/// Reference data: the tables above with `U = span{u, w}`.
pub fn reference_data() -> QuadricActionData {
    let u = Subspace::from_spanning(4, &[unit_vector(4, 1), unit_vector(4, 2)]).expect("basis vectors");
    QuadricActionData::new(reference_algebra(), &u, reference_form()).expect("reference data")
}
