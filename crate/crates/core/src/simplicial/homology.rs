use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{vertices_of, SimplicialComplex};
use crate::error::{Error, Result};

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Field {
    #[default]
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !is_prime || p >= 1 << 31 {
            return Err(Error::Invalid(format!(
                "field characteristic {p} is not a prime below 2^31"
            )));
        }
        Ok(Field::Prime(p))
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "q" | "qq" | "rationals" | "0" => Ok(Field::Rationals),
            other => {
                let p = other
                    .trim_start_matches("gf")
                    .trim_start_matches(['(', 'p'])
                    .trim_end_matches(')')
                    .parse::<u64>()
                    .map_err(|_| Error::Invalid(format!("unknown field {s:?}")))?;
                Field::prime(p)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Reduced homology ranks, starting in degree −1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReducedBetti {
    ranks: Vec<usize>,
}

impl ReducedBetti {
    /// `dim H̃_d` for `d ≥ -1`; zero outside the stored range.
    pub fn get(&self, d: isize) -> usize {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.ranks.get(i).copied())
            .unwrap_or(0)
    }

    /// Ranks for degrees `-1, 0, 1, ...`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }
}

fn rank_mod_p(mut rows: Vec<Vec<i64>>, p: u64) -> usize {
    let p = p as i64;
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = mod_inverse(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let (mut t, mut new_t, mut r, mut new_r) = (0i64, 1i64, p, a);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p)
}

/// Exact rank over the rationals by fraction-free integer elimination,
/// keeping every row primitive.
fn rank_rational(rows: Vec<Vec<i64>>) -> usize {
    let mut rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].abs())
        else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot = rows[rank].clone();
        let a = pivot[col].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let b = row[col].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&a / &g, &b / &g);
            let mut content = BigInt::zero();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = &*x * &fa - y * &fb;
                content = content.gcd(x);
            }
            if !content.is_zero() && content != BigInt::from(1) {
                for x in row.iter_mut() {
                    *x /= &content;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank(rows: Vec<Vec<i64>>, field: Field) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    match field {
        Field::Rationals => rank_rational(rows),
        Field::Prime(p) => rank_mod_p(rows, p),
    }
}

/// Boundary matrix from faces of size `k` to faces of size `k - 1`, rows
/// indexed by the smaller faces.
fn boundary_rows(lower: &[u64], upper: &[u64]) -> Vec<Vec<i64>> {
    let index: HashMap<u64, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut rows = vec![vec![0i64; upper.len()]; lower.len()];
    for (c, &face) in upper.iter().enumerate() {
        for (j, v) in vertices_of(face).enumerate() {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            rows[index[&(face & !(1 << v))]][c] = sign;
        }
    }
    rows
}

/// Homology ranks indexed by face size; `include_empty` adds the
/// augmentation to the empty face.
fn homology_by_size(delta: &SimplicialComplex, field: Field, include_empty: bool) -> Vec<usize> {
    let groups = delta.faces_by_size();
    let top = groups.len();
    let first = if include_empty { 0 } else { 1 };
    // ranks[k] = rank of the boundary from size k to size k-1.
    let mut ranks = vec![0usize; top + 1];
    for k in (first + 1)..top {
        ranks[k] = rank(boundary_rows(&groups[k - 1], &groups[k]), field);
    }
    (first..top)
        .map(|k| groups[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

/// Reduced homology ranks `dim H̃_d` for `d = -1, 0, 1, ...`. The
/// irrelevant complex has `H̃_{-1} = 1`.
pub fn reduced_betti_numbers(delta: &SimplicialComplex, field: Field) -> Result<ReducedBetti> {
    if delta.is_void() {
        return Err(Error::VoidComplex);
    }
    Ok(ReducedBetti {
        ranks: homology_by_size(delta, field, true),
    })
}

/// Reduced homology, with the void complex treated as acyclic.
pub(crate) fn reduced_or_zero(delta: &SimplicialComplex, field: Field) -> ReducedBetti {
    if delta.is_void() {
        ReducedBetti::default()
    } else {
        ReducedBetti {
            ranks: homology_by_size(delta, field, true),
        }
    }
}

/// Ordinary homology ranks `β_0, β_1, ...` up to the dimension of the
/// complex. Empty for the irrelevant complex.
pub fn betti_numbers(delta: &SimplicialComplex, field: Field) -> Result<Vec<usize>> {
    if delta.is_void() {
        return Err(Error::VoidComplex);
    }
    Ok(homology_by_size(delta, field, false))
}
