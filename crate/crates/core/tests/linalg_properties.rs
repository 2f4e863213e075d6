//! Property tests for the exact linear algebra, checked against a small
//! fraction-free integer oracle written here.

use proptest::prelude::*;

use quadric_core::linalg::{
    characteristic_polynomial, is_nilpotent, is_semisimple, jordan_chevalley, minimal_polynomial, rat, Matrix, Poly,
    Rational, Subspace,
};

/// Rank by fraction-free elimination over `i128`.
fn oracle_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = a * m[i][j] - b * m[rank][j];
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Determinant by cofactor expansion over `i128` (small sizes only).
fn oracle_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * oracle_det(&minor)
        })
        .sum()
}

fn to_matrix(rows: &[Vec<i64>]) -> Matrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64(&refs)
}

fn int_rows(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn sized_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| int_rows(r, c))
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=max).prop_flat_map(|n| int_rows(n, n))
}

fn subspace_pair() -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (1usize..=5).prop_flat_map(|d| {
        (
            Just(d),
            (0usize..=d).prop_flat_map(move |k| int_rows(k, d)),
            (0usize..=d).prop_flat_map(move |k| int_rows(k, d)),
        )
    })
}

fn vecs(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn meet_and_join_dimensions_add_up((d, a, b) in subspace_pair()) {
        let s1 = Subspace::from_spanning(d, &vecs(&a)).unwrap();
        let s2 = Subspace::from_spanning(d, &vecs(&b)).unwrap();
        let (meet, join) = s1.meet_join(&s2).unwrap();
        prop_assert_eq!(meet.dim() + join.dim(), s1.dim() + s2.dim());
        prop_assert!(s1.contains_subspace(&meet) && s2.contains_subspace(&meet));
        prop_assert!(join.contains_subspace(&s1) && join.contains_subspace(&s2));
        // the sum is spanned by the union, whose rank the oracle knows
        let union: Vec<Vec<i64>> = a.iter().chain(&b).cloned().collect();
        prop_assert_eq!(join.dim(), if union.is_empty() { 0 } else { oracle_rank(&union) });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_kernel_agrees_with_oracle(rows in sized_matrix()) {
        let m = to_matrix(&rows);
        let (rank, kernel) = m.rank_kernel();
        prop_assert_eq!(rank, oracle_rank(&rows));
        prop_assert_eq!(rank + kernel.dim(), m.cols());
        for v in kernel.basis() {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn equal_spans_store_identical_bases(rows in int_rows(3, 4), mix in int_rows(3, 3)) {
        let s = Subspace::from_spanning(4, &vecs(&rows)).unwrap();
        // random combinations of the same vectors plus the originals
        let mut spanning = vecs(&rows);
        for c in &mix {
            let v: Vec<Rational> = (0..4)
                .map(|j| (0..3).map(|i| rat(c[i] * rows[i][j])).sum())
                .collect();
            spanning.push(v);
        }
        spanning.reverse();
        prop_assert_eq!(Subspace::from_spanning(4, &spanning).unwrap(), s);
    }

    #[test]
    fn minimal_polynomial_divides_characteristic(rows in square(4)) {
        let m = to_matrix(&rows);
        let min = minimal_polynomial(&m);
        let chr = characteristic_polynomial(&m);
        prop_assert!(min.eval_matrix(&m).is_zero());
        prop_assert_eq!(min.leading(), rat(1));
        prop_assert!(chr.div_rem(&min).1.is_zero());
        // minimality: I, M, …, M^{d−1} are independent
        let d = min.degree().unwrap();
        let powers: Vec<Vec<Rational>> = (0..d).map(|k| m.pow(k as u32).entries().to_vec()).collect();
        if d > 0 {
            let flat = Matrix::from_rows(&powers).unwrap();
            prop_assert_eq!(flat.rank(), d);
        }
        // det(xI − M) at a few integers, by cofactor expansion
        for x in -2i128..=2 {
            let shifted: Vec<Vec<i128>> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| r.iter().enumerate().map(|(j, &v)| if i == j { x - v as i128 } else { -(v as i128) }).collect())
                .collect();
            prop_assert_eq!(chr.eval(&rat(x as i64)), rat(oracle_det(&shifted) as i64));
        }
    }
}

/// `P (D + N) P⁻¹` with rational diagonal `D` and strictly upper `N`: the
/// spectrum is the diagonal of `D`.
fn split_matrix() -> impl Strategy<Value = (Matrix, Matrix)> {
    (1usize..=4).prop_flat_map(|n| {
        (prop::collection::vec(-2i64..=2, n), int_rows(n, n), int_rows(n, n)).prop_map(move |(diag, upper, p)| {
            let mut t = Matrix::zeros(n, n);
            for i in 0..n {
                t.set(i, i, rat(diag[i]));
                for j in i + 1..n {
                    t.set(i, j, rat(upper[i][j]));
                }
            }
            let mut p = to_matrix(&p);
            if !p.is_invertible() {
                p = Matrix::identity(n);
            }
            (t, p)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jordan_chevalley_on_split_matrices((t, p) in split_matrix()) {
        let m = &(&p * &t) * &p.inverse().unwrap();
        let jc = jordan_chevalley(&m).unwrap();
        prop_assert_eq!(&(&jc.semisimple + &jc.nilpotent), &m);
        prop_assert!(jc.semisimple.commutes_with(&jc.nilpotent));
        prop_assert!(is_semisimple(&jc.semisimple));
        prop_assert!(is_nilpotent(&jc.nilpotent));
        // both parts commute with m, as polynomials in m must
        prop_assert!(jc.semisimple.commutes_with(&m));
        // eigenvalues are preserved: same characteristic polynomial
        prop_assert_eq!(characteristic_polynomial(&jc.semisimple), characteristic_polynomial(&m));
    }
}

#[test]
fn irrational_spectrum_is_reported_not_approximated() {
    // companion matrix of x² − 3
    let m = Matrix::from_i64(&[&[0, 3], &[1, 0]]);
    assert!(matches!(
        jordan_chevalley(&m),
        Err(quadric_core::Error::NonSplitSpectrum(_))
    ));
    assert_eq!(minimal_polynomial(&m), Poly::from_i64(&[-3, 0, 1]));
}
