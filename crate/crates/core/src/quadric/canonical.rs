//! Normal form for the mixed action on `Q_2`: rescale the semisimple
//! generator to `w² = 1`, the nilpotent one to `F(u, w) = −1`, and read the
//! tables in the basis `{1, u, w, h = uw}`.

use num_traits::{One, Zero};

use super::certificate::{input_witness, Claim, Witness};
use super::obstruction::Builder;
use super::{Certificate, CertificateKind, QuadricActionData};
use crate::error::Error;
use crate::linalg::{self, format_rational, Matrix, Rational, Vector};

/// Canonical tables with the certificate that derives them.
#[derive(Clone, Debug, PartialEq)]
pub struct Canonical {
    pub certificate: Certificate,
    /// Columns are `1, u, w, h` in the input basis.
    pub change_of_basis: Matrix,
    pub structure: Vec<Vec<Vector>>,
    pub form: Matrix,
}

pub fn canonicalize_n2(data: &QuadricActionData) -> Result<Canonical, Error> {
    let (n, l, r) = (data.n(), data.l(), data.r());
    if (l, r) != (1, 1) || n != 2 {
        return Err(Error::WrongSignature(l, r));
    }
    let a = &data.algebra;
    let f = &data.form;
    let g = &data.subspace;
    let s = a.dim();
    let mut b = Builder::new(CertificateKind::Canonicalization);
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

    let w = g.semisimple_part().basis()[0].clone();
    let w_sq = a.multiply(&w, &w)?;
    let lambda = linalg::proportionality(&w_sq, a.unit()).unwrap_or_else(Rational::zero);
    b.push(
        Claim::ChooseW,
        Witness::new()
            .vector("w", &w)
            .vector("square", &w_sq)
            .scalar("lambda", &lambda),
    )?;
    let mu = linalg::rational_sqrt(&lambda).ok_or_else(|| Error::NonSquareScalar(format_rational(&lambda)))?;
    let w1 = linalg::scale_vector(&mu.recip(), &w);
    b.push(Claim::ScaleW, Witness::new().scalar("mu", &mu).vector("w_scaled", &w1))?;

    let u = g.nilpotent_part().basis()[0].clone();
    let c = f.bilinear(&u, &w1);
    b.push(Claim::ChooseU, Witness::new().vector("u", &u).scalar("pairing", &c))?;
    let u1 = linalg::scale_vector(&(-Rational::one() / &c), &u);
    b.push(Claim::ScaleU, Witness::new().vector("u_scaled", &u1))?;
    let h = a.multiply(&u1, &w1)?;
    b.push(Claim::DefineH, Witness::new().vector("h", &h))?;

    let change = Matrix::from_columns(s, &[a.unit().to_vec(), u1.clone(), w1.clone(), h.clone()])?;
    b.push(Claim::BasisChange, Witness::new().matrix("change", &change))?;
    b.push(
        Claim::Relations,
        Witness::new()
            .vector("u_squared", &a.multiply(&u1, &u1)?)
            .vector("uh", &a.multiply(&u1, &h)?)
            .vector("h_squared", &a.multiply(&h, &h)?)
            .vector("wh", &a.multiply(&w1, &h)?),
    )?;
    let structure = a.change_basis(&change)?.structure();
    let form = &(&change.transpose() * f) * &change;
    b.push(
        Claim::CanonicalTables,
        Witness::new().tensor("structure", &structure).matrix("form", &form),
    )?;
    Ok(Canonical {
        certificate: b.finish()?,
        change_of_basis: change,
        structure,
        form,
    })
}
