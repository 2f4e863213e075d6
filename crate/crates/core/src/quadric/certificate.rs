//! Step-by-step proof certificates and their independent re-checker.
//!
//! The first step of every certificate embeds the input data (structure
//! constants, unit, subspaces, form). Each later step states one claim with
//! the objects that witness it, and [`verify_certificate`] recomputes every
//! claim from the embedded data and the earlier steps alone.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::catalog::{reference_algebra, reference_form};
use crate::algebra::{Algebra, ElementType};
use crate::error::Error;
use crate::linalg::{self, format_rational, parse_rational, Matrix, Rational, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Obstruction,
    Canonicalization,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    InputData,
    Signature,
    Compatibility,
    UnitOrthogonalToU,
    ProductsInUPerp,
    ChooseSemisimple,
    RestrictionDegenerate,
    FormDegenerate,
    RestrictionNondegenerate,
    UPerpDimensionTwo,
    UPerpRadicalLine,
    SquareIsScalar,
    ScalarNonzero,
    MultiplicationInvertible,
    ImageInUPerp,
    RankContradiction,
    ChooseW,
    ScaleW,
    ChooseU,
    ScaleU,
    DefineH,
    BasisChange,
    Relations,
    CanonicalTables,
}

impl Claim {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default()
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

use Claim::*;

const OBSTRUCTION_DEGENERATE: &[Claim] = &[
    InputData,
    Signature,
    Compatibility,
    UnitOrthogonalToU,
    ProductsInUPerp,
    ChooseSemisimple,
    RestrictionDegenerate,
    FormDegenerate,
];

const OBSTRUCTION_RANK: &[Claim] = &[
    InputData,
    Signature,
    Compatibility,
    UnitOrthogonalToU,
    ProductsInUPerp,
    ChooseSemisimple,
    RestrictionNondegenerate,
    UPerpDimensionTwo,
    UPerpRadicalLine,
    SquareIsScalar,
    ScalarNonzero,
    MultiplicationInvertible,
    ImageInUPerp,
    RankContradiction,
];

const CANONICALIZATION: &[Claim] = &[
    InputData,
    Signature,
    Compatibility,
    ChooseW,
    ScaleW,
    ChooseU,
    ScaleU,
    DefineH,
    BasisChange,
    Relations,
    CanonicalTables,
];

fn templates(kind: CertificateKind) -> &'static [&'static [Claim]] {
    match kind {
        CertificateKind::Obstruction => &[OBSTRUCTION_DEGENERATE, OBSTRUCTION_RANK],
        CertificateKind::Canonicalization => &[CANONICALIZATION],
    }
}

/// Named witness objects. Scalars are rational strings, vectors arrays of
/// them, matrices and tensors nested arrays, counts plain integers.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Witness(BTreeMap<String, Value>);

fn vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect())
}

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn count(mut self, name: &str, n: usize) -> Self {
        self.0.insert(name.into(), Value::from(n));
        self
    }

    pub fn scalar(mut self, name: &str, q: &Rational) -> Self {
        self.0.insert(name.into(), Value::String(format_rational(q)));
        self
    }

    pub fn vector(mut self, name: &str, v: &[Rational]) -> Self {
        self.0.insert(name.into(), vec_json(v));
        self
    }

    /// A list of vectors, e.g. a subspace basis.
    pub fn vectors(mut self, name: &str, vs: &[Vector]) -> Self {
        self.0
            .insert(name.into(), Value::Array(vs.iter().map(|v| vec_json(v)).collect()));
        self
    }

    pub fn matrix(self, name: &str, m: &Matrix) -> Self {
        self.vectors(name, &m.row_vectors())
    }

    pub fn tensor(mut self, name: &str, t: &[Vec<Vector>]) -> Self {
        let rows = t
            .iter()
            .map(|row| Value::Array(row.iter().map(|v| vec_json(v)).collect()))
            .collect();
        self.0.insert(name.into(), Value::Array(rows));
        self
    }

    fn raw(&self, name: &str) -> Result<&Value, String> {
        self.0.get(name).ok_or_else(|| format!("witness `{name}` is missing"))
    }

    pub fn get_count(&self, name: &str) -> Result<usize, String> {
        self.raw(name)?
            .as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| format!("witness `{name}` is not a count"))
    }

    pub fn get_scalar(&self, name: &str) -> Result<Rational, String> {
        parse_scalar(self.raw(name)?).map_err(|e| format!("witness `{name}`: {e}"))
    }

    pub fn get_vector(&self, name: &str, dim: usize) -> Result<Vector, String> {
        parse_vector(self.raw(name)?, dim).map_err(|e| format!("witness `{name}`: {e}"))
    }

    pub fn get_vectors(&self, name: &str, dim: usize) -> Result<Vec<Vector>, String> {
        let arr = self
            .raw(name)?
            .as_array()
            .ok_or_else(|| format!("witness `{name}` is not a list"))?;
        arr.iter()
            .map(|v| parse_vector(v, dim).map_err(|e| format!("witness `{name}`: {e}")))
            .collect()
    }

    pub fn get_matrix(&self, name: &str, rows: usize, cols: usize) -> Result<Matrix, String> {
        let vs = self.get_vectors(name, cols)?;
        if vs.len() != rows {
            return Err(format!("witness `{name}` must have {rows} rows"));
        }
        if rows == 0 {
            return Ok(Matrix::zeros(0, cols));
        }
        Matrix::from_rows(&vs).map_err(|e| e.to_string())
    }

    pub fn get_tensor(&self, name: &str, dim: usize) -> Result<Vec<Vec<Vector>>, String> {
        let arr = self
            .raw(name)?
            .as_array()
            .ok_or_else(|| format!("witness `{name}` is not a tensor"))?;
        if arr.len() != dim {
            return Err(format!("witness `{name}` must have {dim} slices"));
        }
        arr.iter()
            .map(|row| {
                let row = row
                    .as_array()
                    .ok_or_else(|| format!("witness `{name}` is not a tensor"))?;
                if row.len() != dim {
                    return Err(format!("witness `{name}` must have {dim} entries per slice"));
                }
                row.iter().map(|v| parse_vector(v, dim)).collect()
            })
            .collect()
    }
}

fn parse_scalar(v: &Value) -> Result<Rational, String> {
    v.as_str()
        .ok_or_else(|| "expected a rational string".to_string())
        .and_then(|s| parse_rational(s).map_err(|e| e.to_string()))
}

fn parse_vector(v: &Value, dim: usize) -> Result<Vector, String> {
    let arr = v.as_array().ok_or("expected a vector")?;
    if arr.len() != dim {
        return Err(format!("expected a vector of length {dim}"));
    }
    arr.iter().map(parse_scalar).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub claim: Claim,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub steps: Vec<Step>,
}

impl Certificate {
    /// The last claim, which states the conclusion.
    pub fn conclusion(&self) -> Option<Claim> {
        self.steps.last().map(|s| s.claim)
    }
}

/// Re-checks every step from the embedded data.
pub fn verify_certificate(cert: &Certificate) -> Result<(), Error> {
    let mut replay = Replay::new(cert.kind);
    for step in &cert.steps {
        replay.apply(step)?;
    }
    replay.finish()
}

/// Input data as reconstructed by the checker.
pub(crate) struct Input {
    pub algebra: Algebra,
    pub u: Subspace,
    pub nilpotent: Subspace,
    pub semisimple: Subspace,
    pub form: Matrix,
}

impl Input {
    fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn ordered_basis(&self) -> Vec<Vector> {
        self.nilpotent
            .basis()
            .iter()
            .chain(self.semisimple.basis())
            .cloned()
            .collect()
    }

    fn mul(&self, a: &[Rational], b: &[Rational]) -> Vector {
        self.algebra.multiply(a, b).expect("vectors of the right length")
    }

    fn f(&self, a: &[Rational], b: &[Rational]) -> Rational {
        self.form.bilinear(a, b)
    }
}

/// Embedded-data witness for the first step.
pub(crate) fn input_witness(
    algebra: &Algebra,
    u: &Subspace,
    nilpotent: &Subspace,
    semisimple: &Subspace,
    form: &Matrix,
) -> Witness {
    Witness::new()
        .tensor("structure", &algebra.structure())
        .vector("unit", algebra.unit())
        .vectors("subspace", u.basis())
        .vectors("nilpotent_part", nilpotent.basis())
        .vectors("semisimple_part", semisimple.basis())
        .matrix("form", form)
}

#[derive(Default)]
struct State {
    perp: Option<Subspace>,
    chosen: Option<Vector>,
    degenerate_vector: Option<Vector>,
    lambda: Option<Rational>,
    w: Option<Vector>,
    w_scaled: Option<Vector>,
    u: Option<Vector>,
    u_scaled: Option<Vector>,
    h: Option<Vector>,
    change: Option<Matrix>,
}

/// Sequential checker shared by the certificate builders and
/// [`verify_certificate`].
pub(crate) struct Replay {
    kind: CertificateKind,
    claims: Vec<Claim>,
    input: Option<Input>,
    state: State,
}

fn need<'a, T>(x: &'a Option<T>, what: &str) -> Result<&'a T, String> {
    x.as_ref().ok_or_else(|| format!("{what} has not been established"))
}

fn ensure(cond: bool, reason: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason.into())
    }
}

fn show(v: &[Rational]) -> String {
    format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

impl Replay {
    pub(crate) fn new(kind: CertificateKind) -> Self {
        Self {
            kind,
            claims: Vec::new(),
            input: None,
            state: State::default(),
        }
    }

    pub(crate) fn apply(&mut self, step: &Step) -> Result<(), Error> {
        self.claims.push(step.claim);
        let fail = |reason: String| Error::StepFailed {
            step: step.claim.name(),
            reason,
        };
        let n = self.claims.len();
        if !templates(self.kind)
            .iter()
            .any(|t| t.len() >= n && t[..n] == self.claims[..])
        {
            return Err(fail(format!("claim is out of order for a {:?} certificate", self.kind)));
        }
        self.check(step).map_err(fail)
    }

    pub(crate) fn finish(&self) -> Result<(), Error> {
        if templates(self.kind).contains(&self.claims.as_slice()) {
            Ok(())
        } else {
            Err(Error::StepFailed {
                step: self
                    .claims
                    .last()
                    .map(|c| c.name())
                    .unwrap_or_else(|| "input_data".into()),
                reason: "certificate ends before its conclusion".into(),
            })
        }
    }

    fn input(&self) -> Result<&Input, String> {
        need(&self.input, "input data")
    }

    fn check(&mut self, step: &Step) -> Result<(), String> {
        let w = &step.witness;
        match step.claim {
            InputData => {
                self.input = Some(parse_input(w)?);
                Ok(())
            }
            Signature => self.check_signature(w),
            Compatibility => {
                let inp = self.input()?;
                let unit = inp.algebra.unit();
                let norm = inp.f(unit, unit);
                ensure(w.get_scalar("unit_norm")? == norm, "unit_norm does not match F(1,1)")?;
                ensure(norm.is_zero(), format!("F(1,1) = {}", format_rational(&norm)))?;
                let s = inp.dim();
                for g in inp.ordered_basis() {
                    let op = inp.algebra.left_mult_operator(&g);
                    let sym = &(&op.transpose() * &inp.form) + &(&inp.form * &op);
                    if !sym.is_zero() {
                        let (i, j) = (0..s)
                            .flat_map(|i| (0..s).map(move |j| (i, j)))
                            .find(|&(i, j)| !sym.get(i, j).is_zero())
                            .expect("nonzero matrix");
                        return Err(format!(
                            "derivative identity fails for generator {} on basis pair ({i}, {j})",
                            show(&g)
                        ));
                    }
                }
                Ok(())
            }
            UnitOrthogonalToU => {
                let inp = self.input()?;
                let basis = inp.u.basis();
                let values = w.get_vector("values", basis.len())?;
                for (b, v) in basis.iter().zip(&values) {
                    let actual = inp.f(inp.algebra.unit(), b);
                    ensure(&actual == v, "listed value does not match F(1, u)")?;
                    ensure(actual.is_zero(), format!("F(1, {}) ≠ 0", show(b)))?;
                }
                Ok(())
            }
            ProductsInUPerp => {
                let inp = self.input()?;
                let perp = inp.u.orthogonal(&inp.form).map_err(|e| e.to_string())?;
                let listed = w.get_vectors("perp_basis", inp.dim())?;
                let listed = Subspace::from_spanning(inp.dim(), &listed).map_err(|e| e.to_string())?;
                ensure(
                    listed == perp,
                    "listed basis does not span the orthogonal complement of U",
                )?;
                let basis = inp.u.basis();
                for (i, x) in basis.iter().enumerate() {
                    for y in &basis[i..] {
                        let p = inp.mul(x, y);
                        ensure(
                            perp.contains(&p),
                            format!("product {} is not orthogonal to U", show(&p)),
                        )?;
                    }
                }
                self.state.perp = Some(perp);
                Ok(())
            }
            ChooseSemisimple => {
                let inp = self.input()?;
                let u = w.get_vector("u", inp.dim())?;
                ensure(!linalg::is_zero_vector(&u), "chosen element is zero")?;
                ensure(
                    inp.semisimple.contains(&u),
                    "chosen element is not in the semisimple part",
                )?;
                self.state.chosen = Some(u);
                Ok(())
            }
            RestrictionDegenerate => {
                let inp = self.input()?;
                let v = w.get_vector("radical_vector", inp.dim())?;
                ensure(!linalg::is_zero_vector(&v), "vector is zero")?;
                ensure(inp.u.contains(&v), "vector is not in U")?;
                for b in inp.u.basis() {
                    ensure(
                        inp.f(&v, b).is_zero(),
                        format!("vector is not orthogonal to {}", show(b)),
                    )?;
                }
                self.state.degenerate_vector = Some(v);
                Ok(())
            }
            FormDegenerate => {
                let inp = self.input()?;
                need(&self.state.degenerate_vector, "a radical vector of F on U")?;
                let k = w.get_vector("kernel_vector", inp.dim())?;
                ensure(!linalg::is_zero_vector(&k), "kernel vector is zero")?;
                ensure(
                    linalg::is_zero_vector(&inp.form.mul_vec(&k)),
                    "F does not annihilate the kernel vector",
                )
            }
            RestrictionNondegenerate => {
                let inp = self.input()?;
                let basis = inp.u.basis();
                let gram = w.get_matrix("gram", basis.len(), basis.len())?;
                for (i, x) in basis.iter().enumerate() {
                    for (j, y) in basis.iter().enumerate() {
                        ensure(gram.get(i, j) == &inp.f(x, y), "gram matrix does not match F on U")?;
                    }
                }
                ensure(gram.is_invertible(), "restriction of F to U is degenerate")
            }
            UPerpDimensionTwo => {
                let perp = need(&self.state.perp, "U^⊥")?;
                ensure(w.get_count("dim")? == perp.dim(), "listed dimension is wrong")?;
                ensure(perp.dim() == 2, format!("dim U^⊥ = {}", perp.dim()))
            }
            UPerpRadicalLine => {
                let inp = self.input()?;
                let perp = need(&self.state.perp, "U^⊥")?;
                let rad = inp.algebra.radical().map_err(|e| e.to_string())?;
                let meet = perp.intersection(&rad).map_err(|e| e.to_string())?;
                let listed = w.get_vectors("basis", inp.dim())?;
                let listed = Subspace::from_spanning(inp.dim(), &listed).map_err(|e| e.to_string())?;
                ensure(listed == meet, "listed basis does not span U^⊥ ∩ R")?;
                ensure(meet.dim() == 1, format!("dim(U^⊥ ∩ R) = {}", meet.dim()))
            }
            SquareIsScalar => {
                let inp = self.input()?;
                let u = need(&self.state.chosen, "the semisimple element")?;
                let sq = inp.mul(u, u);
                ensure(w.get_vector("square", inp.dim())? == sq, "listed square is wrong")?;
                let lambda = w.get_scalar("lambda")?;
                ensure(
                    sq == linalg::scale_vector(&lambda, inp.algebra.unit()),
                    format!("u² = {} is not λ·1", show(&sq)),
                )?;
                self.state.lambda = Some(lambda);
                Ok(())
            }
            ScalarNonzero => {
                let lambda = need(&self.state.lambda, "λ")?;
                ensure(!lambda.is_zero(), "λ = 0")
            }
            MultiplicationInvertible => {
                let inp = self.input()?;
                let u = need(&self.state.chosen, "the semisimple element")?;
                let lambda = need(&self.state.lambda, "λ")?;
                let s = inp.dim();
                let phi = w.get_matrix("phi", s, s)?;
                ensure(
                    phi == inp.algebra.left_mult_operator(u),
                    "phi is not multiplication by u",
                )?;
                ensure(&phi * &phi == Matrix::identity(s).scale(lambda), "phi² ≠ λ·I")?;
                ensure(!lambda.is_zero(), "λ = 0")
            }
            ImageInUPerp => {
                let inp = self.input()?;
                let u = need(&self.state.chosen, "the semisimple element")?;
                let perp = need(&self.state.perp, "U^⊥")?;
                let images = w.get_vectors("images", inp.dim())?;
                ensure(images.len() == inp.u.dim(), "one image per basis vector of U")?;
                for (b, img) in inp.u.basis().iter().zip(&images) {
                    ensure(&inp.mul(u, b) == img, "listed image is wrong")?;
                    ensure(perp.contains(img), format!("image {} is not in U^⊥", show(img)))?;
                }
                Ok(())
            }
            RankContradiction => {
                let inp = self.input()?;
                let u = need(&self.state.chosen, "the semisimple element")?;
                let perp = need(&self.state.perp, "U^⊥")?;
                let images: Vec<Vector> = inp.u.basis().iter().map(|b| inp.mul(u, b)).collect();
                let rank = Subspace::from_spanning(inp.dim(), &images)
                    .map_err(|e| e.to_string())?
                    .dim();
                ensure(w.get_count("rank")? == rank, "listed rank is wrong")?;
                ensure(
                    rank == inp.u.dim() && rank > perp.dim(),
                    format!("rank {rank} does not exceed dim U^⊥ = {}", perp.dim()),
                )
            }
            ChooseW => {
                let inp = self.input()?;
                let v = w.get_vector("w", inp.dim())?;
                ensure(!linalg::is_zero_vector(&v), "w is zero")?;
                ensure(inp.semisimple.contains(&v), "w is not in the semisimple part")?;
                let sq = inp.mul(&v, &v);
                ensure(w.get_vector("square", inp.dim())? == sq, "listed square is wrong")?;
                let lambda = w.get_scalar("lambda")?;
                ensure(
                    sq == linalg::scale_vector(&lambda, inp.algebra.unit()),
                    format!("w² = {} is not λ·1", show(&sq)),
                )?;
                ensure(!lambda.is_zero(), "λ = 0")?;
                self.state.w = Some(v);
                self.state.lambda = Some(lambda);
                Ok(())
            }
            ScaleW => {
                let inp = self.input()?;
                let v = need(&self.state.w, "w")?;
                let lambda = need(&self.state.lambda, "λ")?;
                let mu = w.get_scalar("mu")?;
                ensure(mu.is_positive(), "μ is not positive")?;
                ensure(&(&mu * &mu) == lambda, "μ² ≠ λ")?;
                let scaled = w.get_vector("w_scaled", inp.dim())?;
                ensure(scaled == linalg::scale_vector(&mu.recip(), v), "w_scaled ≠ w / μ")?;
                ensure(inp.mul(&scaled, &scaled) == inp.algebra.unit(), "w_scaled² ≠ 1")?;
                self.state.w_scaled = Some(scaled);
                Ok(())
            }
            ChooseU => {
                let inp = self.input()?;
                let ws = need(&self.state.w_scaled, "scaled w")?;
                let u = w.get_vector("u", inp.dim())?;
                ensure(!linalg::is_zero_vector(&u), "u is zero")?;
                ensure(inp.nilpotent.contains(&u), "u is not in the nilpotent part")?;
                let c = w.get_scalar("pairing")?;
                ensure(c == inp.f(&u, ws), "listed pairing is not F(u, w)")?;
                ensure(!c.is_zero(), "F(u, w) = 0")?;
                self.state.u = Some(u);
                Ok(())
            }
            ScaleU => {
                let inp = self.input()?;
                let u = need(&self.state.u, "u")?;
                let ws = need(&self.state.w_scaled, "scaled w")?;
                let scaled = w.get_vector("u_scaled", inp.dim())?;
                ensure(
                    proportional_nonzero(&scaled, u),
                    "u_scaled is not a nonzero multiple of u",
                )?;
                ensure(inp.f(&scaled, ws) == -Rational::one(), "F(u_scaled, w) ≠ −1")?;
                self.state.u_scaled = Some(scaled);
                Ok(())
            }
            DefineH => {
                let inp = self.input()?;
                let u = need(&self.state.u_scaled, "scaled u")?;
                let ws = need(&self.state.w_scaled, "scaled w")?;
                let h = w.get_vector("h", inp.dim())?;
                ensure(h == inp.mul(u, ws), "h ≠ u·w")?;
                self.state.h = Some(h);
                Ok(())
            }
            BasisChange => {
                let inp = self.input()?;
                let s = inp.dim();
                let cols = vec![
                    inp.algebra.unit().to_vec(),
                    need(&self.state.u_scaled, "scaled u")?.clone(),
                    need(&self.state.w_scaled, "scaled w")?.clone(),
                    need(&self.state.h, "h")?.clone(),
                ];
                let expected = Matrix::from_columns(s, &cols).map_err(|e| e.to_string())?;
                let p = w.get_matrix("change", s, s)?;
                ensure(p == expected, "columns are not 1, u, w, h")?;
                ensure(p.is_invertible(), "1, u, w, h are linearly dependent")?;
                self.state.change = Some(p);
                Ok(())
            }
            Relations => {
                let inp = self.input()?;
                let s = inp.dim();
                let u = need(&self.state.u_scaled, "scaled u")?;
                let ws = need(&self.state.w_scaled, "scaled w")?;
                let h = need(&self.state.h, "h")?;
                let zero = linalg::zero_vector(s);
                for (name, value, expected) in [
                    ("u_squared", inp.mul(u, u), &zero),
                    ("uh", inp.mul(u, h), &zero),
                    ("h_squared", inp.mul(h, h), &zero),
                    ("wh", inp.mul(ws, h), u),
                ] {
                    ensure(w.get_vector(name, s)? == value, format!("listed {name} is wrong"))?;
                    ensure(&value == expected, format!("{name} = {}", show(&value)))?;
                }
                Ok(())
            }
            CanonicalTables => {
                let inp = self.input()?;
                let p = need(&self.state.change, "the change of basis")?;
                let s = inp.dim();
                let alg = inp.algebra.change_basis(p).map_err(|e| e.to_string())?;
                let form = &(&p.transpose() * &inp.form) * p;
                ensure(
                    w.get_tensor("structure", s)? == alg.structure(),
                    "listed table is not the transformed one",
                )?;
                ensure(
                    w.get_matrix("form", s, s)? == form,
                    "listed form is not the transformed one",
                )?;
                ensure(
                    alg.structure() == reference_algebra().structure(),
                    "multiplication table differs from the reference",
                )?;
                ensure(
                    form == reference_form(),
                    "scalar-product table differs from the reference",
                )
            }
        }
    }

    fn check_signature(&self, w: &Witness) -> Result<(), String> {
        let inp = self.input()?;
        let (n, l, r) = (inp.u.dim(), inp.nilpotent.dim(), inp.semisimple.dim());
        ensure(
            w.get_count("n")? == n && w.get_count("l")? == l && w.get_count("r")? == r,
            "listed signature does not match the subspaces",
        )?;
        ensure(
            inp.dim() == n + 2,
            format!("dim A = {} but n + 2 = {}", inp.dim(), n + 2),
        )?;
        match self.kind {
            CertificateKind::Obstruction => ensure(
                l >= 1 && r >= 1 && n >= 3,
                format!("(n, l, r) = ({n}, {l}, {r}) is outside l ≥ 1, r ≥ 1, n ≥ 3"),
            ),
            CertificateKind::Canonicalization => ensure(
                (n, l, r) == (2, 1, 1),
                format!("(n, l, r) = ({n}, {l}, {r}) is not (2, 1, 1)"),
            ),
        }
    }
}

fn proportional_nonzero(v: &[Rational], w: &[Rational]) -> bool {
    linalg::proportionality(v, w).is_some_and(|c| !c.is_zero())
}

fn parse_input(w: &Witness) -> Result<Input, String> {
    let unit_len = w
        .raw("unit")?
        .as_array()
        .map(Vec::len)
        .ok_or("witness `unit` is not a vector")?;
    let s = unit_len;
    let structure = w.get_tensor("structure", s)?;
    let unit = w.get_vector("unit", s)?;
    let algebra = Algebra::validate(structure, unit).map_err(|e| format!("algebra: {e}"))?;
    let span = |name: &str| -> Result<Subspace, String> {
        Subspace::from_spanning(s, &w.get_vectors(name, s)?).map_err(|e| e.to_string())
    };
    let u = span("subspace")?;
    let nilpotent = span("nilpotent_part")?;
    let semisimple = span("semisimple_part")?;
    let form = w.get_matrix("form", s, s)?;
    ensure(form.is_symmetric(), "form is not symmetric")?;
    ensure(!u.contains(algebra.unit()), "the unit lies in U")?;
    let closure = algebra.span_closure(&u).map_err(|e| e.to_string())?;
    ensure(closure.dim() == s, "U does not generate the algebra")?;
    ensure(
        u.contains_subspace(&nilpotent) && u.contains_subspace(&semisimple),
        "parts are not inside U",
    )?;
    ensure(
        nilpotent.dim() + semisimple.dim() == u.dim() && nilpotent.sum(&semisimple).map_err(|e| e.to_string())? == u,
        "U is not the direct sum of its parts",
    )?;
    for b in nilpotent.basis() {
        ensure(
            algebra.element_type(b).map_err(|e| e.to_string())? == ElementType::Nilpotent,
            format!("{} in the nilpotent part is not nilpotent", show(b)),
        )?;
    }
    for b in semisimple.basis() {
        ensure(
            algebra.element_type(b).map_err(|e| e.to_string())? == ElementType::Semisimple,
            format!("{} in the semisimple part is not semisimple", show(b)),
        )?;
    }
    Ok(Input {
        algebra,
        u,
        nilpotent,
        semisimple,
        form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, rat};

    #[test]
    fn witness_round_trip() {
        let m = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let w = Witness::new()
            .scalar("q", &frac(-3, 4))
            .count("k", 7)
            .vector("v", &[rat(1), frac(1, 2)])
            .matrix("m", &m)
            .vectors("empty", &[]);
        let json = serde_json::to_string(&w).unwrap();
        let back: Witness = serde_json::from_str(&json).unwrap();
        assert_eq!(back.get_scalar("q").unwrap(), frac(-3, 4));
        assert_eq!(back.get_count("k").unwrap(), 7);
        assert_eq!(back.get_vector("v", 2).unwrap(), vec![rat(1), frac(1, 2)]);
        assert_eq!(back.get_matrix("m", 2, 2).unwrap(), m);
        assert_eq!(back.get_matrix("empty", 0, 3).unwrap(), Matrix::zeros(0, 3));
        assert!(back.get_vector("v", 3).is_err());
        assert!(back.get_scalar("missing").is_err());
    }

    #[test]
    fn claims_serialize_in_snake_case() {
        assert_eq!(Claim::UPerpDimensionTwo.name(), "u_perp_dimension_two");
        assert_eq!(serde_json::to_string(&Claim::InputData).unwrap(), "\"input_data\"");
    }

    #[test]
    fn empty_certificate_is_incomplete() {
        let cert = Certificate {
            kind: CertificateKind::Obstruction,
            steps: vec![],
        };
        assert!(matches!(verify_certificate(&cert), Err(Error::StepFailed { .. })));
    }

    #[test]
    fn out_of_order_claim_is_rejected() {
        let cert = Certificate {
            kind: CertificateKind::Canonicalization,
            steps: vec![Step {
                claim: Claim::Signature,
                witness: Witness::new(),
            }],
        };
        match verify_certificate(&cert) {
            Err(Error::StepFailed { step, .. }) => assert_eq!(step, "signature"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
