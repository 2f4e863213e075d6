//! JSON file formats. Rationals are always strings (`"p/q"` or `"p"`),
//! matrices row-major nested arrays.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Algebra, GeneratingSubspace};
use crate::bridge::{CyclicRep, Forward, InducedForm};
use crate::error::Error;
use crate::linalg::{format_rational, parse_rational, Matrix, Rational, Subspace, Vector};
use crate::quadric::fuzz::{FuzzReport, Survivor, SurvivorOutcome};
use crate::quadric::{Certificate, QuadricActionData, QuadricForm};

pub fn vector_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn parse_vector(v: &[String]) -> Result<Vector, Error> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn vector_json(v: &[Rational]) -> Value {
    json!(vector_strings(v))
}

pub fn vectors_json(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| vector_json(v)).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_strings())
}

pub fn tensor_json(t: &[Vec<Vector>]) -> Value {
    Value::Array(t.iter().map(|row| vectors_json(row)).collect())
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub unit: Vec<String>,
    pub structure: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &Algebra) -> Self {
        Self {
            dim: a.dim(),
            unit: vector_strings(a.unit()),
            structure: a
                .structure()
                .iter()
                .map(|row| row.iter().map(|v| vector_strings(v)).collect())
                .collect(),
            basis_names: a.basis_names().map(<[String]>::to_vec),
        }
    }

    /// Validates the axioms.
    pub fn to_algebra(&self) -> Result<Algebra, Error> {
        if self.unit.len() != self.dim {
            return Err(Error::DimensionMismatch(format!("unit must have {} entries", self.dim)));
        }
        let structure = self
            .structure
            .iter()
            .map(|row| row.iter().map(|v| parse_vector(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let a = Algebra::validate(structure, parse_vector(&self.unit)?)?;
        match &self.basis_names {
            Some(names) => a.with_basis_names(names.clone()),
            None => Ok(a),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<String>>,
}

impl SubspaceFile {
    pub fn from_subspace(s: &Subspace) -> Self {
        Self {
            ambient_dim: s.ambient_dim(),
            basis: s.basis().iter().map(|v| vector_strings(v)).collect(),
        }
    }

    pub fn to_subspace(&self) -> Result<Subspace, Error> {
        let vs = self
            .basis
            .iter()
            .map(|v| parse_vector(v))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::from_spanning(self.ambient_dim, &vs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepFile {
    pub ambient_dim: usize,
    pub nilpotent: Vec<Matrix>,
    pub semisimple: Vec<Matrix>,
    pub cyclic_vector: Vec<String>,
    #[serde(default)]
    pub form: Option<Matrix>,
}

impl RepFile {
    pub fn from_rep(rep: &CyclicRep) -> Self {
        Self {
            ambient_dim: rep.ambient_dim(),
            nilpotent: rep.nilpotent_gens().to_vec(),
            semisimple: rep.semisimple_gens().to_vec(),
            cyclic_vector: vector_strings(rep.cyclic_vector()),
            form: rep.ambient_form().cloned(),
        }
    }

    pub fn to_rep(&self) -> Result<CyclicRep, Error> {
        let v = parse_vector(&self.cyclic_vector)?;
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "cyclic vector must have {} entries",
                self.ambient_dim
            )));
        }
        CyclicRep::new(self.nilpotent.clone(), self.semisimple.clone(), v, self.form.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricFormFile {
    pub n: usize,
    pub matrix: Matrix,
}

impl QuadricFormFile {
    pub fn to_form(&self) -> Result<QuadricForm, Error> {
        let q = QuadricForm::new(self.matrix.clone())?;
        if q.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "matrix does not describe Q_{}",
                self.n
            )));
        }
        Ok(q)
    }
}

/// `(A, U, F)` in one file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricDataFile {
    pub algebra: AlgebraFile,
    pub subspace: SubspaceFile,
    pub form: Matrix,
}

impl QuadricDataFile {
    pub fn from_data(d: &QuadricActionData) -> Self {
        Self {
            algebra: AlgebraFile::from_algebra(&d.algebra),
            subspace: SubspaceFile::from_subspace(d.subspace.subspace()),
            form: d.form.clone(),
        }
    }

    pub fn to_data(&self) -> Result<QuadricActionData, Error> {
        QuadricActionData::new(
            self.algebra.to_algebra()?,
            &self.subspace.to_subspace()?,
            self.form.clone(),
        )
    }
}

pub fn read_algebra(text: &str) -> Result<Algebra, Error> {
    parse_json::<AlgebraFile>(text)?.to_algebra()
}

pub fn read_subspace(text: &str) -> Result<Subspace, Error> {
    parse_json::<SubspaceFile>(text)?.to_subspace()
}

pub fn read_rep(text: &str) -> Result<CyclicRep, Error> {
    parse_json::<RepFile>(text)?.to_rep()
}

pub fn read_quadric_form(text: &str) -> Result<QuadricForm, Error> {
    parse_json::<QuadricFormFile>(text)?.to_form()
}

pub fn read_data(text: &str) -> Result<QuadricActionData, Error> {
    parse_json::<QuadricDataFile>(text)?.to_data()
}

pub fn parse_certificate(text: &str) -> Result<Certificate, Error> {
    parse_json(text)
}

pub fn certificate_json(c: &Certificate) -> Value {
    serde_json::to_value(c).expect("certificates serialize")
}

pub fn algebra_json(a: &Algebra) -> Value {
    serde_json::to_value(AlgebraFile::from_algebra(a)).expect("algebra serializes")
}

pub fn subspace_json(s: &Subspace) -> Value {
    serde_json::to_value(SubspaceFile::from_subspace(s)).expect("subspace serializes")
}

pub fn rep_json(rep: &CyclicRep) -> Value {
    serde_json::to_value(RepFile::from_rep(rep)).expect("representation serializes")
}

pub fn data_json(d: &QuadricActionData) -> Value {
    serde_json::to_value(QuadricDataFile::from_data(d)).expect("data serializes")
}

pub fn generating_json(g: &GeneratingSubspace) -> Value {
    json!({
        "subspace": subspace_json(g.subspace()),
        "nilpotent_part": vectors_json(g.nilpotent_part().basis()),
        "semisimple_part": vectors_json(g.semisimple_part().basis()),
        "l": g.l(),
        "r": g.r(),
    })
}

pub fn forward_json(f: &Forward) -> Value {
    json!({
        "algebra": algebra_json(&f.algebra),
        "generating_subspace": generating_json(&f.subspace),
        "xi": matrix_json(&f.xi),
    })
}

pub fn induced_form_json(f: &InducedForm) -> Value {
    json!({
        "matrix": matrix_json(&f.matrix),
        "derivative_identity": f.derivative_identity,
        "first_violation": f.first_violation.map(|(g, i, j)| json!({"generator": g, "a1": i, "a2": j})),
        "unit_norm_matches": f.unit_norm_matches,
        "cyclic_vector_isotropic": f.cyclic_vector_isotropic,
    })
}

pub fn survivor_json(s: &Survivor) -> Value {
    let outcome = match &s.outcome {
        SurvivorOutcome::Canonical { change_of_basis } => {
            json!({"canonical": {"change_of_basis": matrix_json(change_of_basis)}})
        }
        SurvivorOutcome::NonSquare(q) => json!({"non_square_scalar": q}),
        SurvivorOutcome::CanonicalFailed(e) => json!({"canonicalization_failed": e}),
        SurvivorOutcome::ObstructionFailed(e) => json!({"obstruction_failed": e}),
        SurvivorOutcome::Unchecked => json!("unchecked"),
    };
    json!({
        "index": s.index,
        "data": data_json(&s.data),
        "outcome": outcome,
    })
}

pub fn fuzz_report_json(r: &FuzzReport) -> Value {
    let st = &r.stats;
    json!({
        "signature": [r.n, r.l, r.r],
        "budget": r.budget,
        "seed": r.seed,
        "survivors": r.survivors.iter().map(survivor_json).collect::<Vec<_>>(),
        "stats": {
            "sampled": st.sampled,
            "rejected": st.rejected,
            "incompatible": st.incompatible,
            "partial": st.partial,
            "certificates_verified": st.certificates_verified,
            "certificate_failures": st.certificate_failures,
            "survivors": st.survivors,
            "canonicalized": st.canonicalized,
            "non_square": st.non_square,
        },
        "failures": r.failures.iter().map(|(i, e)| json!({"index": i, "error": e})).collect::<Vec<_>>(),
    })
}
