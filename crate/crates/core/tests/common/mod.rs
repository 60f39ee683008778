//! Independent reference implementations used by the integration tests.
//! Nothing here calls the library's rank, derivative-matrix or decoding code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use seplab::{Field, Poly, Scalar};

/// Row reduction over `Q` with `BigRational` entries.
pub fn naive_rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let factor = &rows[i][c] / &pivot;
                for j in c..cols {
                    let delta = &factor * &rows[rank][j];
                    rows[i][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Row reduction over `F_p` with `u64` residues.
pub fn naive_rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let inv = |a: u64| (1..p).find(|b| a * b % p == 1).expect("nonzero residue");
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else { continue };
        rows.swap(rank, piv);
        let s = inv(rows[rank][c] % p);
        for j in 0..cols {
            rows[rank][j] = rows[rank][j] * s % p;
        }
        for i in 0..rows.len() {
            let f = rows[i][c] % p;
            if i != rank && f != 0 {
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a list of scalar vectors, through the naive eliminations above.
pub fn naive_rank(field: Field, rows: Vec<Vec<Scalar>>) -> usize {
    match field {
        Field::Rationals => naive_rank_q(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| x.as_rational().unwrap().clone()).collect())
                .collect(),
        ),
        Field::Prime(p) => naive_rank_mod(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| x.residue().unwrap() as u64).collect())
                .collect(),
            p as u64,
        ),
    }
}

/// Coefficient vectors of `polys` over the union of their supports.
pub fn coefficient_rows(polys: &[Poly]) -> Vec<Vec<Scalar>> {
    let support: BTreeSet<Vec<u32>> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.exps().to_vec())).collect();
    let index: BTreeMap<&Vec<u32>, usize> = support.iter().enumerate().map(|(i, m)| (m, i)).collect();
    polys
        .iter()
        .map(|p| {
            let mut row = vec![p.field().zero(); support.len()];
            for (m, c) in p.terms() {
                row[index[&m.exps().to_vec()]] = c.clone();
            }
            row
        })
        .collect()
}

/// `dim ∂(f)` (order zero included): close `{f}` under single-variable
/// derivatives level by level, dedupe, then rank the coefficient vectors.
pub fn oracle_dim_partials(f: &Poly) -> usize {
    if f.is_zero() {
        return 0;
    }
    let mut all: Vec<Poly> = vec![f.clone()];
    let mut level: Vec<Poly> = vec![f.clone()];
    while !level.is_empty() {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for i in 0..f.n() {
                let h = g.partial_derivative(i).unwrap();
                if !h.is_zero() && seen.insert(h.to_string()) {
                    next.push(h);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    naive_rank(f.field(), coefficient_rows(&all))
}

/// Closed form of `dim ∂(e_{m,n})` for `m <= n`: `sum_k min(C(n,k), C(n,m-k))`.
pub fn esym_dim_formula(m: u64, n: u64) -> u64 {
    (0..=m).map(|k| binom(n, k).min(binom(n, m - k))).sum()
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Minimum distance from `table` (index `i` = point with `x1` as the most
/// significant bit) to any `F_2` polynomial of degree `<= d`, by evaluating
/// every such polynomial at every point.
pub fn oracle_rm_distance(n: usize, table: &[bool], d: u32) -> usize {
    let monos: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() <= d).collect();
    let mut best = usize::MAX;
    for code in 0u64..1 << monos.len() {
        let mut dist = 0;
        for (pt, &want) in table.iter().enumerate() {
            // variable j (0-based) is bit n-1-j of the point index
            let x = |j: usize| (pt >> (n - 1 - j)) & 1 == 1;
            let mut val = false;
            for (b, &m) in monos.iter().enumerate() {
                if code >> b & 1 == 1 && (0..n).all(|j| m >> j & 1 == 0 || x(j)) {
                    val ^= true;
                }
            }
            dist += (val != want) as usize;
        }
        best = best.min(dist);
    }
    best
}

pub fn mod3_table(n: usize, residue: u32) -> Vec<bool> {
    (0u32..1 << n).map(|i| i.count_ones() % 3 == residue).collect()
}

/// Distinct rearrangements of an exponent vector.
pub fn exponent_orbit(e: &[u32]) -> BTreeSet<Vec<u32>> {
    fn go(rest: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
        if rest.is_empty() {
            out.insert(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = BTreeSet::new();
    go(&mut e.to_vec(), &mut Vec::new(), &mut out);
    out
}

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn is_one(x: &BigRational) -> bool {
    x.is_one()
}

/// `dim ∂(e_{2d,n})` for `n` in 4..=10 and `d` in 1..=3 with `2d <= n`, row
/// by row in that order. Frozen from [`esym_dim_formula`] and cross-checked
/// against [`oracle_dim_partials`] in `oracles.rs`.
pub const FROZEN_TABLE: &[(usize, usize, usize)] = &[
    (4, 1, 6),
    (4, 2, 16),
    (5, 1, 7),
    (5, 2, 22),
    (6, 1, 8),
    (6, 2, 29),
    (6, 3, 64),
    (7, 1, 9),
    (7, 2, 37),
    (7, 3, 93),
    (8, 1, 10),
    (8, 2, 46),
    (8, 3, 130),
    (9, 1, 11),
    (9, 2, 56),
    (9, 3, 176),
    (10, 1, 12),
    (10, 2, 67),
    (10, 3, 232),
];
