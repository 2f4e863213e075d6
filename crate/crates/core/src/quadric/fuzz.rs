//! Seeded search for scalar products compatible with a generating subspace.
//!
//! Candidates are built structurally: a product of local algebras with the
//! right number of factors, with `U` spanned by random radical vectors and
//! random combinations of the factor idempotents (optionally shifted by
//! radical vectors already in `U`). For each `(A, U)` the compatibility
//! identities plus `F(1,1) = 0` are solved exactly as a linear system in the
//! entries of a symmetric `F`; a full rank modulo a large prime settles the
//! common incompatible case early. A nonzero solution space containing a
//! nondegenerate form makes a survivor; a nonzero space of degenerate forms
//! is a partial candidate, which at mixed signatures with `n ≥ 3` is handed
//! to [`obstruction_mixed`]. Both are first rewritten in a random unimodular
//! basis, so follow-ups never rely on the sparse one.
//!
//! Nondegeneracy of the solution space is probed with random integer
//! combinations of its basis. The determinant is a polynomial of degree
//! `n + 2` in the combination coefficients, so a space containing a
//! nondegenerate form is missed with probability at most
//! `((n + 2) / 101)^6`.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::canonical::canonicalize_n2;
use super::certificate::{verify_certificate, Certificate};
use super::obstruction::obstruction_mixed;
use super::QuadricActionData;
use crate::algebra::Algebra;
use crate::error::Error;
use crate::linalg::{self, rat, Matrix, Rational, Subspace, Vector};

/// What happened to a survivor after the follow-up check for its signature.
#[derive(Clone, Debug, PartialEq)]
pub enum SurvivorOutcome {
    /// `(n, l, r) = (2, 1, 1)`: canonical tables reached.
    Canonical { change_of_basis: Matrix },
    /// `(2, 1, 1)` with `w² = λ·1` for a non-square `λ`.
    NonSquare(String),
    /// `(2, 1, 1)` canonicalization failed for another reason.
    CanonicalFailed(String),
    /// Mixed `n ≥ 3`: the obstruction replay broke at a step.
    ObstructionFailed(String),
    /// No follow-up applies to this signature.
    Unchecked,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Survivor {
    pub index: u64,
    pub data: QuadricActionData,
    pub outcome: SurvivorOutcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzStats {
    pub sampled: u64,
    /// `U` failed to generate, contained the unit, or had another signature.
    pub rejected: u64,
    /// Only `F = 0` satisfies the identities.
    pub incompatible: u64,
    /// Compatible forms exist but all are degenerate.
    pub partial: u64,
    pub certificates_verified: u64,
    pub certificate_failures: u64,
    pub survivors: u64,
    pub canonicalized: u64,
    pub non_square: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzReport {
    pub n: usize,
    pub l: usize,
    pub r: usize,
    pub budget: u64,
    pub seed: u64,
    /// Sorted by their JSON serialization.
    pub survivors: Vec<Survivor>,
    pub stats: FuzzStats,
    /// Certificates for partial candidates, the first `keep_certificates` by
    /// candidate index.
    pub certificates: Vec<Certificate>,
    /// Failed obstruction attempts, `(candidate index, error)`.
    pub failures: Vec<(u64, String)>,
}

impl FuzzReport {
    /// Every follow-up succeeded: no certificate failed and every `(2,1,1)`
    /// survivor reached the canonical tables or a non-square scalar.
    pub fn clean(&self) -> bool {
        self.stats.certificate_failures == 0
            && self.survivors.iter().all(|s| {
                matches!(
                    s.outcome,
                    SurvivorOutcome::Canonical { .. } | SurvivorOutcome::NonSquare(_) | SurvivorOutcome::Unchecked
                )
            })
    }
}

pub fn fuzz_search(n: usize, l: usize, r: usize, budget: u64, seed: u64) -> Result<FuzzReport, Error> {
    fuzz_search_keeping(n, l, r, budget, seed, 0)
}

/// As [`fuzz_search`], additionally returning up to `keep_certificates`
/// obstruction certificates.
pub fn fuzz_search_keeping(
    n: usize,
    l: usize,
    r: usize,
    budget: u64,
    seed: u64,
    keep_certificates: usize,
) -> Result<FuzzReport, Error> {
    if n != l + r {
        return Err(Error::SignatureMismatch {
            expected_l: l,
            expected_r: r,
            l: n.saturating_sub(r),
            r,
        });
    }
    let outcomes: Vec<Outcome> = (0..budget)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index);
            evaluate_candidate(n, l, r, &mut rng)
        })
        .collect();

    let mut stats = FuzzStats {
        sampled: budget,
        ..FuzzStats::default()
    };
    let mut survivors = Vec::new();
    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    for (index, outcome) in (0..budget).zip(outcomes) {
        match outcome {
            Outcome::Rejected => stats.rejected += 1,
            Outcome::Incompatible => stats.incompatible += 1,
            Outcome::Partial(cert) => {
                stats.partial += 1;
                match cert {
                    Some(Ok(c)) => {
                        stats.certificates_verified += 1;
                        if certificates.len() < keep_certificates {
                            certificates.push(*c);
                        }
                    }
                    Some(Err(e)) => {
                        stats.certificate_failures += 1;
                        failures.push((index, e));
                    }
                    None => {}
                }
            }
            Outcome::Survivor(data, outcome) => {
                stats.survivors += 1;
                match &outcome {
                    SurvivorOutcome::Canonical { .. } => stats.canonicalized += 1,
                    SurvivorOutcome::NonSquare(_) => stats.non_square += 1,
                    _ => {}
                }
                survivors.push(Survivor {
                    index,
                    data: *data,
                    outcome,
                });
            }
        }
    }
    survivors.sort_by_cached_key(|s| crate::io::survivor_json(s).to_string());
    Ok(FuzzReport {
        n,
        l,
        r,
        budget,
        seed,
        survivors,
        stats,
        certificates,
        failures,
    })
}

enum Outcome {
    Rejected,
    Incompatible,
    /// Certificate result when the signature calls for one.
    Partial(Option<Result<Box<Certificate>, String>>),
    Survivor(Box<QuadricActionData>, SurvivorOutcome),
}

fn evaluate_candidate(n: usize, l: usize, r: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let Some((algebra, u)) = sample_pair(n, l, r, rng) else {
        return Outcome::Rejected;
    };
    let Ok(mut data) = QuadricActionData::new(algebra, &u, Matrix::zeros(n + 2, n + 2)) else {
        return Outcome::Rejected;
    };
    if (data.l(), data.r()) != (l, r) {
        return Outcome::Rejected;
    }
    let forms = compatible_forms(&data);
    if forms.is_empty() {
        return Outcome::Incompatible;
    }
    let probe = probe_forms(&forms, n + 2, rng);
    let nondegenerate = probe.iter().position(Matrix::is_invertible);
    data.form = probe[nondegenerate.unwrap_or(0)].clone();
    // Follow-ups run in a random basis so they never see the sparse one.
    let change = unimodular(n + 2, rng);
    let Ok(data) = data.change_basis(&change) else {
        return Outcome::Survivor(
            Box::new(data),
            SurvivorOutcome::CanonicalFailed("basis change failed".into()),
        );
    };
    if nondegenerate.is_some() {
        let outcome = follow_up(&data);
        return Outcome::Survivor(Box::new(data), outcome);
    }
    if l >= 1 && r >= 1 && n >= 3 {
        let cert = obstruction_mixed(&data).map_err(|e| e.to_string()).and_then(|c| {
            // re-check from the serialized form, as an external checker would
            let json = serde_json::to_string(&crate::io::certificate_json(&c)).map_err(|e| e.to_string())?;
            let back = crate::io::parse_certificate(&json).map_err(|e| e.to_string())?;
            verify_certificate(&back).map_err(|e| e.to_string())?;
            Ok(Box::new(c))
        });
        Outcome::Partial(Some(cert))
    } else {
        Outcome::Partial(None)
    }
}

fn follow_up(data: &QuadricActionData) -> SurvivorOutcome {
    let (n, l, r) = (data.n(), data.l(), data.r());
    if (n, l, r) == (2, 1, 1) {
        return match canonicalize_n2(data) {
            Ok(c) => SurvivorOutcome::Canonical {
                change_of_basis: c.change_of_basis,
            },
            Err(Error::NonSquareScalar(q)) => SurvivorOutcome::NonSquare(q),
            Err(e) => SurvivorOutcome::CanonicalFailed(e.to_string()),
        };
    }
    if l >= 1 && r >= 1 && n >= 3 {
        return match obstruction_mixed(data) {
            Ok(_) => SurvivorOutcome::ObstructionFailed("certificate verified on nondegenerate data".into()),
            Err(e) => SurvivorOutcome::ObstructionFailed(e.to_string()),
        };
    }
    SurvivorOutcome::Unchecked
}

/// Basis of the space of symmetric `F` with `F(1,1) = 0` and
/// `L_uᵀF + F·L_u = 0` for every `u` in the basis of `U`.
pub fn compatible_forms(data: &QuadricActionData) -> Vec<Matrix> {
    let a = &data.algebra;
    let s = a.dim();
    let var = |i: usize, j: usize| {
        let (i, j) = (i.min(j), i.max(j));
        i * s - i * (i + 1) / 2 + j
    };
    let nvars = s * (s + 1) / 2;
    let mut rows: Vec<Vector> = Vec::new();
    let unit = a.unit();
    let mut row = linalg::zero_vector(nvars);
    for i in 0..s {
        for j in 0..s {
            row[var(i, j)] += &unit[i] * &unit[j];
        }
    }
    rows.push(row);
    for g in data.subspace.subspace().basis() {
        let lm = a.left_mult_operator(g);
        for i in 0..s {
            for j in i..s {
                // Σ_k L[k][i] F[k][j] + Σ_k L[k][j] F[i][k]
                let mut row = linalg::zero_vector(nvars);
                for k in 0..s {
                    let (x, y) = (lm.get(k, i), lm.get(k, j));
                    if !x.is_zero() {
                        row[var(k, j)] += x;
                    }
                    if !y.is_zero() {
                        row[var(i, k)] += y;
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(&rows).expect("rows of equal length");
    // full column rank modulo a prime forces full rank over ℚ
    if linalg::modular::rank_mod_prime(&system) == Some(nvars) {
        return Vec::new();
    }
    system
        .kernel()
        .basis()
        .iter()
        .map(|v| {
            let mut f = Matrix::zeros(s, s);
            for i in 0..s {
                for j in i..s {
                    f.set(i, j, v[var(i, j)].clone());
                    f.set(j, i, v[var(i, j)].clone());
                }
            }
            f
        })
        .collect()
}

const PROBES: usize = 6;

fn probe_forms(forms: &[Matrix], s: usize, rng: &mut ChaCha8Rng) -> Vec<Matrix> {
    (0..PROBES)
        .map(|_| {
            forms.iter().fold(Matrix::zeros(s, s), |acc, f| {
                let c = loop {
                    let c: i64 = rng.gen_range(-50..=50);
                    if c != 0 {
                        break c;
                    }
                };
                &acc + &f.scale(&rat(c))
            })
        })
        .collect()
}

/// Local algebras of dimension `d` with unit `e_0` and radical spanned by
/// the remaining basis vectors.
fn local_algebra(d: usize, rng: &mut ChaCha8Rng) -> Algebra {
    let mut choices: Vec<u8> = vec![0];
    if d >= 3 {
        choices.extend([1, 2]);
    }
    if d == 4 {
        choices.extend([3, 4]);
    }
    match *choices.choose(rng).expect("nonempty") {
        0 => Algebra::truncated_polynomial(d),
        1 => square_zero(d - 1),
        2 => gorenstein(d - 2),
        3 => table_algebra(4, &[((1, 2), 3)]),
        _ => table_algebra(4, &[((2, 2), 3)]),
    }
}

/// `ℚ ⊕ V` with `V² = 0`.
fn square_zero(m: usize) -> Algebra {
    table_algebra(m + 1, &[])
}

/// `1, x₁, …, x_m, h` with `x_i x_j = δ_ij h`.
fn gorenstein(m: usize) -> Algebra {
    let pairs: Vec<((usize, usize), usize)> = (1..=m).map(|i| ((i, i), m + 1)).collect();
    table_algebra(m + 2, &pairs)
}

/// Unit `e_0`; the listed products `e_i e_j = e_k`; all other products of
/// non-unit basis vectors vanish.
fn table_algebra(d: usize, products: &[((usize, usize), usize)]) -> Algebra {
    Algebra::from_fn(d, linalg::unit_vector(d, 0), |i, j| {
        if i == 0 {
            return linalg::unit_vector(d, j);
        }
        if j == 0 {
            return linalg::unit_vector(d, i);
        }
        products
            .iter()
            .find(|((a, b), _)| (*a, *b) == (i, j) || (*a, *b) == (j, i))
            .map(|(_, k)| linalg::unit_vector(d, *k))
            .unwrap_or_else(|| linalg::zero_vector(d))
    })
    .expect("local table algebra")
}

/// Random composition of `total` into `parts` positive summands.
fn composition(total: usize, parts: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut sizes = vec![1; parts];
    for _ in 0..total - parts {
        let i = rng.gen_range(0..parts);
        sizes[i] += 1;
    }
    sizes
}

fn small(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound))
}

/// Unimodular `L·R` with unit diagonals and small entries, so the inverse is
/// integral as well.
fn unimodular(s: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut lower = Matrix::identity(s);
    let mut upper = Matrix::identity(s);
    for i in 0..s {
        for j in 0..i {
            lower.set(i, j, small(rng, 1));
            upper.set(j, i, small(rng, 1));
        }
    }
    &lower * &upper
}

fn sample_pair(n: usize, l: usize, r: usize, rng: &mut ChaCha8Rng) -> Option<(Algebra, Subspace)> {
    let s = n + 2;
    let k = rng.gen_range(r + 1..=s - l);
    let sizes = composition(s, k, rng);
    let factors: Vec<Algebra> = sizes.iter().map(|&d| local_algebra(d, rng)).collect();
    let algebra = Algebra::product(&factors);
    let mut idempotents = Vec::new();
    let mut radical = Vec::new();
    let mut offset = 0;
    for d in &sizes {
        idempotents.push(linalg::unit_vector(s, offset));
        radical.extend((offset + 1..offset + d).map(|i| linalg::unit_vector(s, i)));
        offset += d;
    }

    let nilpotent: Vec<Vector> = (0..l)
        .map(|_| {
            let c: Vec<Rational> = radical.iter().map(|_| small(rng, 3)).collect();
            linalg::linear_combination(&c, &radical, s)
        })
        .collect();
    let semisimple: Vec<Vector> = (0..r)
        .map(|_| {
            let c: Vec<Rational> = idempotents.iter().map(|_| small(rng, 3)).collect();
            let mut v = linalg::linear_combination(&c, &idempotents, s);
            if !nilpotent.is_empty() && rng.gen_bool(0.5) {
                let c: Vec<Rational> = nilpotent.iter().map(|_| small(rng, 2)).collect();
                v = linalg::add_vectors(&v, &linalg::linear_combination(&c, &nilpotent, s));
            }
            v
        })
        .collect();

    let spanning: Vec<Vector> = nilpotent.into_iter().chain(semisimple).collect();
    let u = Subspace::from_spanning(s, &spanning).ok()?;
    if u.dim() != n {
        return None;
    }
    Some((algebra, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::catalog::reference_data;
    use crate::quadric::check_compatibility;

    #[test]
    fn zero_budget_is_empty() {
        let rep = fuzz_search(3, 1, 2, 0, 42).unwrap();
        assert!(rep.survivors.is_empty());
        assert_eq!(rep.stats, FuzzStats::default());
    }

    #[test]
    fn compatible_forms_of_the_mixed_pair() {
        let data = reference_data();
        let forms = compatible_forms(&data);
        // the reference form spans the solution space
        assert_eq!(forms.len(), 1);
        assert!(linalg::proportionality(forms[0].entries(), data.form.entries()).is_some());
        for f in forms {
            let mut d = data.clone();
            d.form = f;
            assert!(check_compatibility(&d).passed());
        }
    }

    #[test]
    fn local_algebras_are_local() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in 1..=5 {
            for _ in 0..5 {
                let a = local_algebra(d, &mut rng);
                assert_eq!(a.radical().unwrap().dim(), d - 1);
            }
        }
        assert_eq!(unimodular(5, &mut rng).determinant(), rat(1));
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = fuzz_search(2, 1, 1, 200, 7).unwrap();
        let b = fuzz_search(2, 1, 1, 200, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.stats.survivors > 0);
        assert!(a.clean());
    }

    #[test]
    fn mixed_n3_has_no_survivors() {
        let rep = fuzz_search_keeping(3, 1, 2, 300, 3, 5).unwrap();
        assert_eq!(rep.stats.survivors, 0);
        assert_eq!(rep.stats.certificate_failures, 0, "{:?}", rep.failures);
        assert!(rep.stats.partial > 0);
        for c in &rep.certificates {
            verify_certificate(c).unwrap();
        }
    }
}
