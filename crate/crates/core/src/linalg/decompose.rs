//! Minimal and characteristic polynomials, rational root isolation, and the
//! Jordan–Chevalley decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rat, Matrix, Poly, Rational};
use crate::error::Error;

/// Least-degree monic polynomial annihilating `m`, found as the first linear
/// dependence among `I, m, m², …`.
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let n = m.rows();
    let mut powers = vec![Matrix::identity(n)];
    for k in 1..=n {
        let next = &powers[k - 1] * m;
        powers.push(next);
        let cols: Vec<Vec<Rational>> = powers.iter().map(|p| p.entries().to_vec()).collect();
        let kernel = Matrix::from_columns(n * n, &cols).expect("flattened powers").kernel();
        if let Some(v) = kernel.basis().first() {
            let lead = v[k].clone();
            return Poly::new(v.iter().map(|c| c / &lead).collect());
        }
    }
    // Cayley–Hamilton guarantees a dependence by degree n; n = 0 lands here.
    Poly::one()
}

/// Characteristic polynomial `det(xI − m)` by the Faddeev–LeVerrier recurrence.
pub fn characteristic_polynomial(m: &Matrix) -> Poly {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut acc = Matrix::zeros(n, n);
    for k in 1..=n {
        acc = &(m * &acc) + &Matrix::identity(n).scale(&coeffs[n - k + 1]);
        let t = (m * &acc).trace();
        coeffs[n - k] = -t / rat(k as i64);
    }
    Poly::new(coeffs)
}

pub fn is_nilpotent(m: &Matrix) -> bool {
    minimal_polynomial(m).monomial_degree().is_some()
}

/// Diagonalizable over the algebraic closure.
pub fn is_semisimple(m: &Matrix) -> bool {
    minimal_polynomial(m).is_squarefree()
}

/// Distinct rational roots of a nonzero polynomial, ascending.
///
/// The squarefree part is rescaled to a monic integer polynomial, whose
/// rational roots are integers; those are isolated with a Sturm sequence
/// evaluated at half-integers, which can never be roots.
pub fn rational_roots(p: &Poly) -> Vec<Rational> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let g = p.squarefree_part();
    let d = g.degree().unwrap();
    let scale = g.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    // q(y) = scale^d · g(y / scale) is monic with integer coefficients.
    let mut factor = Rational::one();
    let mut q_coeffs = vec![Rational::zero(); d + 1];
    for i in (0..=d).rev() {
        q_coeffs[i] = &g.coeffs()[i] * &factor;
        factor *= Rational::from_integer(scale.clone());
    }
    let q = Poly::new(q_coeffs);
    let bound = q
        .coeffs()
        .iter()
        .map(|c| c.abs().to_integer())
        .max()
        .unwrap_or_else(BigInt::zero)
        + BigInt::one();

    let sturm = sturm_sequence(&q);
    let mut roots = Vec::new();
    isolate_integer_roots(&q, &sturm, -bound.clone(), bound, &mut roots);
    let s = Rational::from_integer(scale);
    roots.into_iter().map(|y| Rational::from_integer(y) / &s).collect()
}

/// True when every root of `p` over the closure is rational.
pub fn split_over_rationals(p: &Poly) -> bool {
    match p.degree() {
        None => false,
        Some(0) => true,
        Some(_) => rational_roots(p).len() == p.squarefree_part().degree().unwrap(),
    }
}

/// Sturm sequence, each member rescaled by a positive factor to integer
/// coefficients (signs are all that matter).
fn sturm_sequence(q: &Poly) -> Vec<Vec<BigInt>> {
    let mut seq = vec![q.clone(), q.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&-Rational::one()));
    }
    seq.iter()
        .map(|p| {
            let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            p.coeffs()
                .iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Sign of `p(m/2)`, from the integer `2^d · p(m/2)`.
fn sign_at_half(p: &[BigInt], m: &BigInt) -> i8 {
    let d = p.len() - 1;
    let mut acc = p[d].clone();
    for i in (0..d).rev() {
        acc = acc * m + (&p[i] << (d - i));
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_changes(seq: &[Vec<BigInt>], m: &BigInt) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| sign_at_half(p, m)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Collects the integer roots of `q` in the inclusive range `[lo, hi]`.
fn isolate_integer_roots(q: &Poly, sturm: &[Vec<BigInt>], lo: BigInt, hi: BigInt, out: &mut Vec<BigInt>) {
    // lo − 1/2 and hi + 1/2, as numerators over 2
    let left = BigInt::from(2) * &lo - 1;
    let right = BigInt::from(2) * &hi + 1;
    let count = sign_changes(sturm, &left) - sign_changes(sturm, &right);
    if count == 0 {
        return;
    }
    if lo == hi {
        if q.eval(&Rational::from_integer(lo.clone())).is_zero() {
            out.push(lo);
        }
        return;
    }
    let mid = (&lo + &hi).div_floor(&BigInt::from(2));
    isolate_integer_roots(q, sturm, lo, mid.clone(), out);
    isolate_integer_roots(q, sturm, mid + 1, hi, out);
}

/// Additive Jordan–Chevalley decomposition `M = S + N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanChevalley {
    pub semisimple: Matrix,
    pub nilpotent: Matrix,
}

/// Splits `m` into commuting semisimple and nilpotent parts, both polynomials
/// in `m`. Requires the spectrum to be rational; an irrational eigenvalue is
/// reported as [`Error::NonSplitSpectrum`].
///
/// The semisimple part is the limit of the Newton iteration
/// `S ← S − p(S)·p'(S)⁻¹` for the squarefree part `p` of the minimal
/// polynomial, which terminates exactly after logarithmically many steps.
pub fn jordan_chevalley(m: &Matrix) -> Result<JordanChevalley, Error> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "Jordan–Chevalley of a non-square matrix".into(),
        ));
    }
    let minpoly = minimal_polynomial(m);
    if !split_over_rationals(&minpoly) {
        return Err(Error::NonSplitSpectrum(minpoly.to_string()));
    }
    let p = minpoly.squarefree_part();
    let dp = p.derivative();
    let mut s = m.clone();
    for _ in 0..=m.rows() + 1 {
        let ps = p.eval_matrix(&s);
        if ps.is_zero() {
            let nilpotent = m - &s;
            return Ok(JordanChevalley {
                semisimple: s,
                nilpotent,
            });
        }
        let inv = dp
            .eval_matrix(&s)
            .inverse()
            .ok_or_else(|| Error::Internal("p'(S) singular in Newton step".into()))?;
        s = &s - &(&ps * &inv);
    }
    Err(Error::Internal(
        "Newton iteration for Jordan–Chevalley did not terminate".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    fn shift3() -> Matrix {
        Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])
    }

    #[test]
    fn minimal_polynomial_examples() {
        assert_eq!(minimal_polynomial(&Matrix::zeros(3, 3)), Poly::monomial(1));
        assert_eq!(minimal_polynomial(&shift3()), Poly::monomial(3));
        let d = Matrix::diagonal(&[rat(1), rat(-1), rat(0)]);
        assert_eq!(minimal_polynomial(&d), Poly::from_i64(&[0, -1, 0, 1]));
        assert_eq!(minimal_polynomial(&Matrix::identity(2)), Poly::from_i64(&[-1, 1]));
    }

    #[test]
    fn characteristic_polynomial_of_triangular() {
        let m = Matrix::from_i64(&[&[2, 5], &[0, 3]]);
        assert_eq!(characteristic_polynomial(&m), Poly::from_i64(&[6, -5, 1]));
    }

    #[test]
    fn rational_roots_examples() {
        // (2x - 1)(x + 3)(x^2 + 1)
        let p = Poly::from_i64(&[-1, 2])
            .mul(&Poly::from_i64(&[3, 1]))
            .mul(&Poly::from_i64(&[1, 0, 1]));
        assert_eq!(rational_roots(&p), vec![rat(-3), frac(1, 2)]);
        assert!(!split_over_rationals(&p));
        assert!(!split_over_rationals(&Poly::from_i64(&[-2, 0, 1])));
        assert!(split_over_rationals(&Poly::from_i64(&[0, 0, 1])));
        let big = Poly::linear_root(&rat(1000)).mul(&Poly::linear_root(&frac(-7, 3)));
        assert_eq!(rational_roots(&big), vec![frac(-7, 3), rat(1000)]);
    }

    #[test]
    fn jordan_chevalley_of_nilpotent_and_diagonal() {
        let jc = jordan_chevalley(&shift3()).unwrap();
        assert!(jc.semisimple.is_zero());
        assert_eq!(jc.nilpotent, shift3());
        let d = Matrix::diagonal(&[rat(2), rat(-1), rat(2)]);
        let jc = jordan_chevalley(&d).unwrap();
        assert_eq!(jc.semisimple, d);
        assert!(jc.nilpotent.is_zero());
    }

    #[test]
    fn jordan_chevalley_of_jordan_block() {
        let m = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let jc = jordan_chevalley(&m).unwrap();
        assert_eq!(jc.semisimple, Matrix::identity(2));
        assert_eq!(jc.nilpotent, Matrix::from_i64(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn irrational_spectrum_is_reported() {
        let m = Matrix::from_i64(&[&[0, 2], &[1, 0]]);
        assert!(matches!(jordan_chevalley(&m), Err(Error::NonSplitSpectrum(_))));
    }
}
