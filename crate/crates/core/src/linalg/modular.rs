//! Reductions modulo a fixed large prime, used only as one-sided filters:
//! the rank of a rational matrix modulo a prime never exceeds its rank over
//! the rationals.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Matrix, Rational};

/// `2^61 − 1`.
pub const PRIME: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let r = (x as u64 & PRIME) + (x >> 61) as u64;
    let r = if r >= PRIME { r - PRIME } else { r };
    if r >= PRIME {
        r - PRIME
    } else {
        r
    }
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, PRIME - 2)
}

fn reduce_int(x: &BigInt) -> u64 {
    if let Some(v) = x.to_i64() {
        return v.rem_euclid(PRIME as i64) as u64;
    }
    let p = BigInt::from(PRIME);
    let r = ((x % &p) + &p) % &p;
    r.to_u64().expect("residue fits")
}

/// Image of `q` in the prime field, or `None` when the prime divides the
/// denominator.
pub fn reduce(q: &Rational) -> Option<u64> {
    if q.is_integer() {
        return Some(reduce_int(q.numer()));
    }
    let d = reduce_int(q.denom());
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(q.numer()), inv(d)))
}

/// Rank of `m` modulo [`PRIME`]; `None` if some entry has no image.
pub fn rank_mod_prime(m: &Matrix) -> Option<usize> {
    let cols = m.cols();
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row = (0..cols).map(|j| reduce(m.get(i, j))).collect::<Option<Vec<_>>>()?;
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pinv = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = mul(*x, pinv);
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                if *y != 0 {
                    let t = *x + PRIME - mul(f, *y);
                    *x = if t >= PRIME { t - PRIME } else { t };
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Some(rank)
}
