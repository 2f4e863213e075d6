//! Certificate that mixed data (`l ≥ 1`, `r ≥ 1`, `n ≥ 3`) cannot come from
//! a smooth quadric.
//!
//! Compatibility alone already forces `F` to degenerate: `F` kills `1` and
//! `U` against `1`, so if `F|_U` has a radical vector `u₀`, a suitable
//! combination of `u₀` and `1` lies in the kernel of `F`. If `F|_U` is
//! nondegenerate instead, the chain `dim U^⊥ = 2`, `u² = λ·1` with `λ ≠ 0`
//! and `u·U ⊆ U^⊥` ends in a rank contradiction. The certificate records
//! whichever branch the data takes.

use num_traits::Zero;

use super::certificate::{input_witness, Claim, Replay, Step, Witness};
use super::compat::lemma3_report;
use super::{Certificate, CertificateKind, QuadricActionData};
use crate::error::Error;
use crate::linalg::{self, Matrix, Rational, Subspace, Vector};

pub fn obstruction_mixed(data: &QuadricActionData) -> Result<Certificate, Error> {
    let (n, l, r) = (data.n(), data.l(), data.r());
    if l == 0 || r == 0 || n < 3 {
        return Err(Error::HypothesesNotMet { n, l, r });
    }
    let mut b = Builder::new(CertificateKind::Obstruction);
    let a = &data.algebra;
    let f = &data.form;
    let s = a.dim();
    let g = &data.subspace;
    let u_basis = g.subspace().basis().to_vec();

    b.push(
        Claim::InputData,
        input_witness(a, g.subspace(), g.nilpotent_part(), g.semisimple_part(), f),
    )?;
    b.push(
        Claim::Signature,
        Witness::new().count("n", n).count("l", l).count("r", r),
    )?;
    b.push(
        Claim::Compatibility,
        Witness::new().scalar("unit_norm", &f.bilinear(a.unit(), a.unit())),
    )?;
    let values: Vector = u_basis.iter().map(|x| f.bilinear(a.unit(), x)).collect();
    b.push(Claim::UnitOrthogonalToU, Witness::new().vector("values", &values))?;
    let report = lemma3_report(data);
    b.push(
        Claim::ProductsInUPerp,
        Witness::new().vectors("perp_basis", report.perp.basis()),
    )?;
    let u = g.semisimple_part().basis()[0].clone();
    b.push(Claim::ChooseSemisimple, Witness::new().vector("u", &u))?;

    let gram = gram_matrix(f, &u_basis);
    if let Some(c) = gram.kernel().basis().first() {
        let u0 = linalg::linear_combination(c, &u_basis, s);
        b.push(
            Claim::RestrictionDegenerate,
            Witness::new().vector("radical_vector", &u0),
        )?;
        let k = kernel_vector(data, &u0);
        b.push(Claim::FormDegenerate, Witness::new().vector("kernel_vector", &k))?;
        return b.finish();
    }

    b.push(Claim::RestrictionNondegenerate, Witness::new().matrix("gram", &gram))?;
    b.push(Claim::UPerpDimensionTwo, Witness::new().count("dim", report.perp.dim()))?;
    let rad = a.radical()?;
    let meet = report.perp.intersection(&rad)?;
    b.push(Claim::UPerpRadicalLine, Witness::new().vectors("basis", meet.basis()))?;
    let sq = a.multiply(&u, &u)?;
    let lambda = linalg::proportionality(&sq, a.unit()).unwrap_or_else(Rational::zero);
    b.push(
        Claim::SquareIsScalar,
        Witness::new().vector("square", &sq).scalar("lambda", &lambda),
    )?;
    b.push(Claim::ScalarNonzero, Witness::new().scalar("lambda", &lambda))?;
    let phi = a.left_mult_operator(&u);
    b.push(Claim::MultiplicationInvertible, Witness::new().matrix("phi", &phi))?;
    let images: Vec<Vector> = u_basis.iter().map(|x| phi.mul_vec(x)).collect();
    b.push(Claim::ImageInUPerp, Witness::new().vectors("images", &images))?;
    let rank = Subspace::from_spanning(s, &images)?.dim();
    b.push(Claim::RankContradiction, Witness::new().count("rank", rank))?;
    b.finish()
}

fn gram_matrix(f: &Matrix, basis: &[Vector]) -> Matrix {
    let k = basis.len();
    Matrix::from_vec(
        k,
        k,
        basis
            .iter()
            .flat_map(|x| basis.iter().map(move |y| f.bilinear(x, y)))
            .collect(),
    )
    .expect("square gram matrix")
}

/// A nonzero vector killed by `F`, built from a radical vector `u₀` of `F|_U`.
/// With `e` outside `⟨1, U⟩`, `α = F(u₀, e)` and `β = F(1, e)`, the vector is
/// `1` when `β = 0` and `β·u₀ − α·1` otherwise.
fn kernel_vector(data: &QuadricActionData, u0: &[Rational]) -> Vector {
    let a = &data.algebra;
    let f = &data.form;
    let s = a.dim();
    let mut span: Vec<Vector> = data.subspace.subspace().basis().to_vec();
    span.push(a.unit().to_vec());
    let hull = Subspace::from_spanning(s, &span).expect("vectors of the algebra");
    let e = (0..s)
        .map(|i| linalg::unit_vector(s, i))
        .find(|e| !hull.contains(e))
        .unwrap_or_else(|| linalg::zero_vector(s));
    let alpha = f.bilinear(u0, &e);
    let beta = f.bilinear(a.unit(), &e);
    if beta.is_zero() {
        a.unit().to_vec()
    } else {
        linalg::sub_vectors(
            &linalg::scale_vector(&beta, u0),
            &linalg::scale_vector(&alpha, a.unit()),
        )
    }
}

/// Collects steps, checking each with the shared replay as it is added.
pub(crate) struct Builder {
    replay: Replay,
    cert: Certificate,
}

impl Builder {
    pub(crate) fn new(kind: CertificateKind) -> Self {
        Self {
            replay: Replay::new(kind),
            cert: Certificate {
                kind,
                steps: Vec::new(),
            },
        }
    }

    pub(crate) fn push(&mut self, claim: Claim, witness: Witness) -> Result<(), Error> {
        let step = Step { claim, witness };
        self.replay.apply(&step)?;
        self.cert.steps.push(step);
        Ok(())
    }

    pub(crate) fn finish(self) -> Result<Certificate, Error> {
        self.replay.finish()?;
        Ok(self.cert)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::{rat, unit_vector};
    use crate::quadric::catalog::{catalog_model, reference_data, ActionKind};
    use crate::quadric::verify_certificate;

    #[test]
    fn hypotheses() {
        assert_eq!(
            obstruction_mixed(&reference_data()),
            Err(Error::HypothesesNotMet { n: 2, l: 1, r: 1 })
        );
        let add = QuadricActionData::from_model(&catalog_model(ActionKind::Additive, 3).unwrap()).unwrap();
        assert_eq!(
            obstruction_mixed(&add),
            Err(Error::HypothesesNotMet { n: 3, l: 3, r: 0 })
        );
    }

    /// `ℚ[x]/(x³) × ℚ × ℚ` with `U = span{x, p₂, p₃}` where `pᵢ` are the
    /// idempotents of the field factors, and a compatible but necessarily
    /// degenerate form.
    fn partial_candidate() -> QuadricActionData {
        let a = Algebra::product(&[Algebra::truncated_polynomial(3), Algebra::field(), Algebra::field()]);
        // basis: 1₁, x, x², p₂, p₃
        let u = Subspace::from_spanning(5, &[unit_vector(5, 1), unit_vector(5, 3), unit_vector(5, 4)]).unwrap();
        // F(1₁, x²) = 1, F(x, x) = −1 satisfies the identity for x; the
        // idempotents only pair trivially.
        let mut f = Matrix::zeros(5, 5);
        f.set(0, 2, rat(1));
        f.set(2, 0, rat(1));
        f.set(1, 1, rat(-1));
        QuadricActionData::new(a, &u, f).unwrap()
    }

    #[test]
    fn partial_candidate_gets_degeneracy_certificate() {
        let data = partial_candidate();
        assert!(crate::quadric::check_compatibility(&data).passed());
        assert_eq!((data.n(), data.l(), data.r()), (3, 1, 2));
        let cert = obstruction_mixed(&data).unwrap();
        assert_eq!(cert.conclusion(), Some(Claim::FormDegenerate));
        verify_certificate(&cert).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        verify_certificate(&back).unwrap();
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut cert = obstruction_mixed(&partial_candidate()).unwrap();
        let last = cert.steps.last_mut().unwrap();
        last.witness = Witness::new().vector("kernel_vector", &unit_vector(5, 1));
        match verify_certificate(&cert) {
            Err(Error::StepFailed { step, .. }) => assert_eq!(step, "form_degenerate"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn incompatible_data_fails_at_compatibility() {
        let mut data = partial_candidate();
        data.form.set(3, 3, rat(1));
        match obstruction_mixed(&data) {
            Err(Error::StepFailed { step, .. }) => assert_eq!(step, "compatibility"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
