//! Exact rational linear algebra.
//!
//! Everything downstream (algebras, representations, quadric forms) is built
//! on [`Matrix`], [`Subspace`] and [`Poly`] over arbitrary-precision
//! rationals. Nothing here ever rounds.

mod decompose;
mod matrix;
pub mod modular;
mod poly;
mod subspace;

pub use decompose::{
    characteristic_polynomial, is_nilpotent, is_semisimple, jordan_chevalley, minimal_polynomial, rational_roots,
    split_over_rationals, JordanChevalley,
};
pub use matrix::Matrix;
pub use poly::Poly;
pub use subspace::Subspace;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Coordinate vector over the rationals.
pub type Vector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`; the denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// `Σ coeffs[i] · vectors[i]`; `dim` is needed for the empty sum.
pub fn linear_combination(coeffs: &[Rational], vectors: &[Vector], dim: usize) -> Vector {
    let mut out = zero_vector(dim);
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Returns `Some(λ)` with `v = λ·w` when `w ≠ 0` and such a scalar exists.
pub fn proportionality(v: &[Rational], w: &[Rational]) -> Option<Rational> {
    let pivot = w.iter().position(|x| !x.is_zero())?;
    let lambda = &v[pivot] / &w[pivot];
    v.iter().zip(w).all(|(a, b)| *a == &lambda * b).then_some(lambda)
}

/// Square root inside the rationals, if there is one.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    use num_traits::Signed;
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}
