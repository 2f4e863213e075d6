//! End-to-end checks over the whole kit, and the classification table of
//! commutative actions on `Q_n` that follows from them.
//!
//! Every check is exact. Each criterion records its own wall-clock time
//! against a budget; [`CriterionReport::passed`] needs both.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::bridge::{check_round_trip, ht_backward, ht_forward, induced_form};
use crate::error::Error;
use crate::linalg::{frac, Matrix, Rational, Vector};
use crate::quadric::catalog::{
    catalog_model, evaluate_action, projectively_equal, reference_algebra, reference_form, ActionKind, ActionModel,
};
use crate::quadric::fuzz::fuzz_search_keeping;
use crate::quadric::{
    canonicalize_n2, check_compatibility, lemma3_report, torus_bound, Certificate, QuadricActionData,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Candidates per mixed signature in the fuzz criterion.
    pub fuzz_budget: u64,
    pub seed: u64,
    /// Obstruction certificates to hand back for external re-checking.
    pub keep_certificates: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            fuzz_budget: 10_000,
            seed: 42,
            keep_certificates: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks_ok: bool,
    /// One line per finding, failures first.
    pub detail: Vec<String>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionReport {
    pub fn within_time(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn passed(&self) -> bool {
        self.checks_ok && self.within_time()
    }
}

/// Actions on `Q_n` up to equivalence, as established by the checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRow {
    pub n: usize,
    /// Catalog kinds realizing a signature, each backed by passing checks.
    pub classes: Vec<ActionKind>,
    /// Signatures `(l, r)` with no action, and the check that rules each out.
    pub excluded: Vec<(usize, usize, String)>,
    /// Signatures left undecided because a check failed.
    pub undecided: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub criteria: Vec<CriterionReport>,
    pub classification: Vec<ClassRow>,
    pub certificates: Vec<Certificate>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionReport::passed)
    }
}

/// Expected class counts for `n = 1, 2, 3, 4`.
pub const EXPECTED_CLASS_COUNTS: [(usize, usize); 4] = [(1, 2), (2, 3), (3, 1), (4, 1)];

/// Mixed signatures covered by the fuzz criterion: every `(n, l, r)` with
/// `l, r ≥ 1` and `n ∈ {3, 4}`.
pub const FUZZ_SIGNATURES: [(usize, usize, usize); 5] = [(3, 1, 2), (3, 2, 1), (4, 1, 3), (4, 2, 2), (4, 3, 1)];

struct Findings {
    ok: bool,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Findings {
    fn new() -> Self {
        Self {
            ok: true,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.failures.push(what.into());
        }
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.check(false, what);
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self, id: u8, title: &'static str, start: Instant, limit: Duration) -> CriterionReport {
        let mut detail = self.failures;
        detail.extend(self.notes);
        CriterionReport {
            id,
            title,
            checks_ok: self.ok,
            detail,
            elapsed: start.elapsed(),
            limit,
        }
    }
}

fn mixed_data() -> Result<QuadricActionData, Error> {
    QuadricActionData::from_model(&catalog_model(ActionKind::MixedN2, 2)?)
}

/// Catalog models used by the per-model criteria.
pub fn catalog_models() -> Vec<ActionModel> {
    let mut out: Vec<ActionModel> = (1..=4)
        .map(|n| catalog_model(ActionKind::Additive, n).expect("additive models exist for n ≥ 1"))
        .collect();
    for (kind, n) in [
        (ActionKind::MixedN2, 2),
        (ActionKind::TorusN1, 1),
        (ActionKind::TorusN2, 2),
    ] {
        out.push(catalog_model(kind, n).expect("catalog entry"));
    }
    out
}

/// 1: the mixed model on `Q_2` reproduces the reference tables.
pub fn golden_tables() -> CriterionReport {
    let start = Instant::now();
    let mut f = Findings::new();
    let result = (|| -> Result<(), Error> {
        let model = catalog_model(ActionKind::MixedN2, 2)?;
        let fwd = ht_forward(&model.rep)?;
        let form = induced_form(&model.rep, &fwd.xi)?;
        let reference = reference_algebra();
        let mut products = 0;
        for i in 0..4 {
            for j in 0..4 {
                if fwd.algebra.basis_product(i, j) == reference.basis_product(i, j) {
                    products += 1;
                }
            }
        }
        let expected = reference_form();
        let entries = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| form.matrix.get(i, j) == expected.get(i, j))
            .count();
        f.check(products == 16, format!("{products}/16 multiplication entries match"));
        f.check(entries == 16, format!("{entries}/16 form entries match"));
        f.check(form.derivative_identity, "induced form fails the derivative identity");
        f.note(format!("multiplication {products}/16, form {entries}/16"));
        Ok(())
    })();
    if let Err(e) = result {
        f.fail(e.to_string());
    }
    f.finish(
        1,
        "golden tables of the mixed action on Q_2",
        start,
        Duration::from_secs(1),
    )
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// Random invertible matrix with small rational entries.
pub fn random_invertible(s: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let entries = (0..s * s).map(|_| small_rational(rng)).collect();
        let m = Matrix::from_vec(s, s, entries).expect("square");
        if m.is_invertible() {
            return m;
        }
    }
}

/// 2: canonicalization of 50 random conjugates lands on one set of tables.
pub fn canonical_uniqueness(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut f = Findings::new();
    let result = (|| -> Result<(), Error> {
        let data = mixed_data()?;
        let structure = reference_algebra().structure();
        let form = reference_form();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut identical = 0;
        for trial in 0..50 {
            let p = random_invertible(4, &mut rng);
            match canonicalize_n2(&data.change_basis(&p)?) {
                Ok(c) if c.structure == structure && c.form == form => identical += 1,
                Ok(_) => f.fail(format!("conjugate {trial} gave different tables")),
                Err(e) => f.fail(format!("conjugate {trial}: {e}")),
            }
        }
        f.note(format!("{identical}/50 conjugates reach the reference tables"));
        Ok(())
    })();
    if let Err(e) = result {
        f.fail(e.to_string());
    }
    f.finish(
        2,
        "canonical form of the mixed action is unique",
        start,
        Duration::from_secs(10),
    )
}

/// 3: additive data for `n = 1..=6`.
pub fn additive_family() -> CriterionReport {
    let start = Instant::now();
    let mut f = Findings::new();
    for n in 1..=6 {
        let result = (|| -> Result<(), Error> {
            let data = QuadricActionData::from_model(&catalog_model(ActionKind::Additive, n)?)?;
            let a = &data.algebra;
            Algebra::validate(a.structure(), a.unit().to_vec())?;
            f.check(
                check_compatibility(&data).passed(),
                format!("n = {n}: compatibility fails"),
            );
            let l3 = lemma3_report(&data);
            f.check(
                l3.items().iter().all(|i| *i == Some(true)),
                format!("n = {n}: structural items {:?}", l3.items()),
            );
            let radical = a.radical()?.dim();
            f.check(radical == n + 1, format!("n = {n}: radical dimension {radical}"));
            let (ideals, _) = a.maximal_ideal_count()?;
            f.check(ideals == 1, format!("n = {n}: {ideals} maximal ideals"));
            Ok(())
        })();
        if let Err(e) = result {
            f.fail(format!("n = {n}: {e}"));
        }
    }
    f.note("n = 1..6 checked");
    f.finish(
        3,
        "additive family is local and compatible",
        start,
        Duration::from_secs(5),
    )
}

/// 4: torus dimension bound for `n = 1..=100`.
pub fn torus_bounds() -> CriterionReport {
    let start = Instant::now();
    let mut f = Findings::new();
    for n in 1..=100 {
        let b = torus_bound(n);
        f.check(
            b.max_torus_dim == (n + 2) / 2,
            format!("n = {n}: torus dimension {}", b.max_torus_dim),
        );
        f.check(
            b.gm_action_possible == (n <= 2),
            format!("n = {n}: flag {}", b.gm_action_possible),
        );
    }
    f.note("n = 1..100 checked");
    f.finish(4, "maximal torus is too small for n ≥ 3", start, Duration::from_secs(1))
}

/// 5: no survivors at the mixed signatures, every partial candidate
/// certified. Returns the first `keep` certificates as well.
pub fn obstruction(budget: u64, seed: u64, keep: usize) -> (CriterionReport, Vec<Certificate>) {
    let start = Instant::now();
    let mut f = Findings::new();
    let mut certificates = Vec::new();
    for (n, l, r) in FUZZ_SIGNATURES {
        match fuzz_search_keeping(n, l, r, budget, seed, keep.saturating_sub(certificates.len())) {
            Ok(rep) => {
                let st = &rep.stats;
                f.check(st.survivors == 0, format!("({n},{l},{r}): {} survivors", st.survivors));
                f.check(
                    st.certificate_failures == 0,
                    format!(
                        "({n},{l},{r}): {} certificates failed, first {:?}",
                        st.certificate_failures,
                        rep.failures.first()
                    ),
                );
                f.check(
                    st.certificates_verified == st.partial,
                    format!(
                        "({n},{l},{r}): {} of {} partial candidates certified",
                        st.certificates_verified, st.partial
                    ),
                );
                f.note(format!(
                    "({n},{l},{r}): {} sampled, {} rejected, {} incompatible, {} partial, {} certified, {} survivors",
                    st.sampled, st.rejected, st.incompatible, st.partial, st.certificates_verified, st.survivors
                ));
                certificates.extend(rep.certificates);
            }
            Err(e) => f.fail(format!("({n},{l},{r}): {e}")),
        }
    }
    (
        f.finish(5, "no mixed action for n ≥ 3", start, Duration::from_secs(120)),
        certificates,
    )
}

fn random_params(kind: ActionKind, n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    (0..kind.param_count(n))
        .map(|i| loop {
            let q = small_rational(rng);
            if !kind.is_multiplicative(i) || !q.is_zero() {
                break q;
            }
        })
        .collect()
}

/// 6: closed-form actions preserve the quadric and compose.
pub fn action_axioms(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut f = Findings::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for model in catalog_models() {
        let (kind, n) = (model.kind, model.n);
        let dim = model.orbit_dimension_at(&model.base_point);
        f.check(
            dim == n,
            format!("{kind} on Q_{n}: orbit dimension {dim} at the base point"),
        );
        let mut good = 0;
        for _ in 0..100 {
            let result = (|| -> Result<bool, Error> {
                let start_params = random_params(kind, n, &mut rng);
                let scale = loop {
                    let q = small_rational(&mut rng);
                    if !q.is_zero() {
                        break q;
                    }
                };
                let point: Vector = evaluate_action(&model, &start_params, &model.base_point)?
                    .iter()
                    .map(|x| x * &scale)
                    .collect();
                let p1 = random_params(kind, n, &mut rng);
                let p2 = random_params(kind, n, &mut rng);
                let once = evaluate_action(&model, &p1, &point)?;
                let twice = evaluate_action(&model, &p2, &once)?;
                let composed = evaluate_action(&model, &kind.group_product(&p1, &p2), &point)?;
                let same = evaluate_action(&model, &kind.identity_params(n), &point)?;
                Ok(model.quadric.contains(&twice) && projectively_equal(&twice, &composed) && same == point)
            })();
            match result {
                Ok(true) => good += 1,
                Ok(false) => f.fail(format!("{kind} on Q_{n}: composition or quadric check fails")),
                Err(e) => f.fail(format!("{kind} on Q_{n}: {e}")),
            }
        }
        f.note(format!("{kind} on Q_{n}: {good}/100 samples"));
    }
    f.finish(
        6,
        "catalog actions satisfy the action axioms",
        start,
        Duration::from_secs(10),
    )
}

/// 7: forward then backward correspondence is intertwined by `ξ`.
pub fn round_trips() -> CriterionReport {
    let start = Instant::now();
    let mut f = Findings::new();
    for model in catalog_models() {
        let (kind, n) = (model.kind, model.n);
        let result = (|| -> Result<(), Error> {
            let fwd = ht_forward(&model.rep)?;
            let back = ht_backward(&fwd.algebra, &fwd.subspace)?;
            let rt = check_round_trip(&model.rep, &fwd, &back);
            f.check(rt.holds(), format!("{kind} on Q_{n}: {rt:?}"));
            f.check(
                (fwd.subspace.l(), fwd.subspace.r()) == (model.rep.l(), model.rep.r()),
                format!("{kind} on Q_{n}: split ({}, {})", fwd.subspace.l(), fwd.subspace.r()),
            );
            Ok(())
        })();
        if let Err(e) = result {
            f.fail(format!("{kind} on Q_{n}: {e}"));
        }
    }
    f.note(format!("{} catalog models", catalog_models().len()));
    f.finish(7, "correspondence round trip", start, Duration::from_secs(1))
}

/// The table of actions for `n = 1..=4` derived from criteria 1–7, indexed
/// by criterion id.
pub fn classify(criteria: &[CriterionReport]) -> Vec<ClassRow> {
    let ok = |id: u8| criteria.iter().any(|c| c.id == id && c.checks_ok);
    // a catalog kind counts once its data, axioms and correspondence all check
    let realized = |kind: ActionKind| match kind {
        ActionKind::Additive => ok(3) && ok(6) && ok(7),
        ActionKind::MixedN2 => ok(1) && ok(2) && ok(6) && ok(7),
        ActionKind::TorusN1 | ActionKind::TorusN2 => ok(4) && ok(6) && ok(7),
    };
    (1..=4)
        .map(|n| {
            let mut row = ClassRow {
                n,
                classes: Vec::new(),
                excluded: Vec::new(),
                undecided: Vec::new(),
            };
            for l in (0..=n).rev() {
                let r = n - l;
                let kind = match (n, l, r) {
                    (_, _, 0) => Some(ActionKind::Additive),
                    (2, 1, 1) => Some(ActionKind::MixedN2),
                    (1, 0, 1) => Some(ActionKind::TorusN1),
                    (2, 0, 2) => Some(ActionKind::TorusN2),
                    _ => None,
                };
                match kind {
                    Some(k) if realized(k) => row.classes.push(k),
                    Some(_) => row.undecided.push((l, r)),
                    None if l == 0 && ok(4) => row.excluded.push((l, r, "torus bound".into())),
                    None if FUZZ_SIGNATURES.contains(&(n, l, r)) && ok(5) => {
                        row.excluded.push((l, r, "obstruction certificates".into()))
                    }
                    None => row.undecided.push((l, r)),
                }
            }
            row
        })
        .collect()
}

/// 8: the table has the expected shape and rests on passing checks.
pub fn classification_summary(criteria: &[CriterionReport], table: &[ClassRow]) -> CriterionReport {
    let start = Instant::now();
    let mut f = Findings::new();
    for c in criteria {
        f.check(c.passed(), format!("criterion {} did not pass", c.id));
    }
    for (n, expected) in EXPECTED_CLASS_COUNTS {
        match table.iter().find(|row| row.n == n) {
            Some(row) => {
                f.check(
                    row.classes.len() == expected && row.undecided.is_empty(),
                    format!(
                        "n = {n}: {} classes, {} undecided",
                        row.classes.len(),
                        row.undecided.len()
                    ),
                );
            }
            None => f.fail(format!("n = {n} missing from the table")),
        }
    }
    for row in table {
        f.note(format_row(row));
    }
    f.finish(8, "classification summary", start, Duration::from_secs(1))
}

pub fn format_row(row: &ClassRow) -> String {
    let classes: Vec<&str> = row.classes.iter().map(|k| k.name()).collect();
    let label = match row.classes.as_slice() {
        [ActionKind::Additive] => "additive only".to_string(),
        _ => format!("{} classes", row.classes.len()),
    };
    let mut s = format!("n = {}: {label} ({})", row.n, classes.join(", "));
    for (l, r, why) in &row.excluded {
        s.push_str(&format!("; (l,r) = ({l},{r}) excluded by {why}"));
    }
    for (l, r) in &row.undecided {
        s.push_str(&format!("; (l,r) = ({l},{r}) undecided"));
    }
    s
}

/// Runs criteria 1–8 in order.
pub fn run_all(opts: &Options) -> Report {
    let mut criteria = vec![
        golden_tables(),
        canonical_uniqueness(opts.seed),
        additive_family(),
        torus_bounds(),
    ];
    let (obstruction, certificates) = obstruction(opts.fuzz_budget, opts.seed, opts.keep_certificates);
    criteria.push(obstruction);
    criteria.push(action_axioms(opts.seed));
    criteria.push(round_trips());
    let classification = classify(&criteria);
    let summary = classification_summary(&criteria, &classification);
    criteria.push(summary);
    Report {
        criteria,
        classification,
        certificates,
    }
}
