//! Dense exact linear algebra over [`Field`].
//!
//! Rank and determinant over `Q` use fraction-free (Bareiss) elimination on
//! integer rows obtained by clearing denominators row by row; over `F_p` they
//! use ordinary Gaussian elimination on residues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(field, x.field()));
                }
                data.push(x);
            }
        }
        Ok(Matrix { field, rows: r, cols, data })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular literal")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field, o.field));
        }
        let mut out = Self::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.get(i, j).add(&a.mul(o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.field, self.cols, self.to_rows())
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("determinant of {}x{}", self.rows, self.cols)));
        }
        Ok(match self.field {
            Field::Rationals => {
                let (ints, scale) = clear_denominators(&self.to_rows());
                let det = bareiss_determinant(ints);
                Scalar::Rational(BigRational::new(det, scale))
            }
            Field::Prime(_) => {
                let mut m = self.clone();
                let mut det = self.field.one();
                for c in 0..self.cols {
                    let Some(p) = (c..self.rows).find(|&r| !m.get(r, c).is_zero()) else {
                        return Ok(self.field.zero());
                    };
                    if p != c {
                        m.swap_rows(p, c);
                        det = det.neg();
                    }
                    let piv = m.get(c, c).clone();
                    det = det.mul(&piv);
                    let inv = piv.inv();
                    for r in c + 1..self.rows {
                        let factor = m.get(r, c).mul(&inv);
                        if !factor.is_zero() {
                            m.sub_row_multiple(r, c, &factor);
                        }
                    }
                }
                det
            }
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, j).sub(&factor.mul(s));
            self.set(target, j, v);
        }
    }

    /// Reduced row-echelon form (zero rows dropped) and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv();
            for j in 0..self.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    m.sub_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * self.cols);
        m.rows = r;
        (m, pivots)
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = r.get(i, free).neg();
            }
            basis.push(v);
        }
        basis
    }
}

/// Exact rank of the matrix whose rows are `rows` (each of length `cols`).
pub fn rank_of_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    match field {
        Field::Rationals => {
            let (ints, _) = clear_denominators(&rows);
            bareiss_rank(ints)
        }
        Field::Prime(p) => {
            let res: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| r.iter().map(|x| x.residue().expect("modular entry") as u64).collect())
                .collect();
            modular_rank(res, p as u64)
        }
    }
}

/// Scales every row by the lcm of its denominators. Returns the integer rows
/// and the product of all scale factors.
fn clear_denominators(rows: &[Vec<Scalar>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut total = BigInt::one();
    let ints = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| {
                acc.lcm(x.as_rational().expect("rational entry").denom())
            });
            total *= &l;
            row.iter()
                .map(|x| {
                    let q = x.as_rational().expect("rational entry");
                    q.numer() * (&l / q.denom())
                })
                .collect()
        })
        .collect();
    (ints, total)
}

/// Rank by fraction-free elimination. After processing pivots in columns
/// `c_1..c_k`, entry `(i, j)` equals the minor on rows `{pivot rows, i}` and
/// columns `{c_1..c_k, j}`, so each division by the previous pivot is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].abs()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            if lead.is_zero() {
                for x in row.iter_mut().skip(c + 1) {
                    if !x.is_zero() {
                        *x = &*x * piv;
                        debug_assert!((&*x % &prev).is_zero());
                        *x = &*x / &prev;
                    }
                }
                continue;
            }
            for j in c + 1..n {
                let v = &row[j] * piv - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
        }
        prev = piv.clone();
        r += 1;
    }
    r
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = &a[i][j] * &a[c][c] - &a[i][c] * &a[c][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn modular_rank(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let m = a.len();
    let n = a[0].len();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mod_pow(a[r][c], p - 2, p);
        for j in c..n {
            a[r][j] = a[r][j] * inv % p;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..n {
                row[j] = (row[j] + (p - f) * prow[j]) % p;
            }
        }
        r += 1;
    }
    r
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Subspace of `field^dim`, stored as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    dim_ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(field: Field, dim_ambient: usize) -> Self {
        Subspace { field, dim_ambient, basis: Vec::new() }
    }

    pub fn full(field: Field, dim_ambient: usize) -> Self {
        Self::span(field, dim_ambient, Matrix::identity(field, dim_ambient).to_rows())
    }

    /// Row span of the given vectors.
    pub fn span(field: Field, dim_ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, dim_ambient);
        }
        let m = Matrix::from_rows(field, vectors).expect("vectors of equal length");
        assert_eq!(m.cols(), dim_ambient, "vector length");
        let (r, _) = m.rref();
        Subspace { field, dim_ambient, basis: r.to_rows() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank_of_rows(self.field, self.dim_ambient, rows) == self.dim()
    }

    /// `{v : <v, u> = 0 for all u in self}`.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Self::full(self.field, self.dim_ambient);
        }
        let m = Matrix::from_rows(self.field, self.basis.clone()).expect("basis");
        Self::span(self.field, self.dim_ambient, m.kernel())
    }

    /// Intersection via the kernel of `[U; -W]^T`: pairs `(a, b)` with
    /// `a U = b W` give exactly the common vectors `a U`.
    pub fn intersect(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.dim_ambient, o.dim_ambient, "ambient dimension");
        if self.basis.is_empty() || o.basis.is_empty() {
            return Self::zero(self.field, self.dim_ambient);
        }
        let k1 = self.basis.len();
        let mut stacked = self.basis.clone();
        stacked.extend(o.basis.iter().map(|r| r.iter().map(Scalar::neg).collect()));
        let system = Matrix::from_rows(self.field, stacked).expect("basis").transpose();
        let vectors = system
            .kernel()
            .into_iter()
            .map(|coeffs| {
                (0..self.dim_ambient)
                    .map(|j| {
                        (0..k1).fold(self.field.zero(), |acc, i| acc.add(&coeffs[i].mul(&self.basis[i][j])))
                    })
                    .collect()
            })
            .collect();
        Self::span(self.field, self.dim_ambient, vectors)
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Self::span(self.field, self.dim_ambient, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn ranks() {
        assert_eq!(Matrix::identity(Q, 3).rank(), 3);
        assert_eq!(Matrix::from_i64(Q, &[&[1; 4], &[1; 4], &[1; 4], &[1; 4]]).rank(), 1);
        assert_eq!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4], &[3, 6]]).rank(), 1);
        assert_eq!(Matrix::from_i64(Field::Prime(2), &[&[1, 1], &[1, -1]]).rank(), 1);
        assert_eq!(Matrix::from_i64(Q, &[&[1, 1], &[1, -1]]).rank(), 2);
        assert_eq!(Matrix::zeros(Q, 0, 3).rank(), 0);
    }

    #[test]
    fn rank_with_skipped_columns() {
        let m = Matrix::from_i64(Q, &[&[0, 2, 4, 1], &[0, 1, 2, 3], &[0, 3, 6, 4], &[0, 0, 0, 5]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rational_rank_clears_denominators() {
        let h = Field::Rationals;
        let rows = vec![
            vec![h.parse_scalar("1/2").unwrap(), h.parse_scalar("1/3").unwrap()],
            vec![h.parse_scalar("3").unwrap(), h.parse_scalar("2").unwrap()],
        ];
        assert_eq!(Matrix::from_rows(h, rows).unwrap().rank(), 1);
    }

    #[test]
    fn determinants() {
        let m = Matrix::from_i64(Q, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.determinant().unwrap(), Q.from_i64(-2));
        let m = Matrix::from_i64(Q, &[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(m.determinant().unwrap(), Q.from_i64(-2));
        let f7 = Field::Prime(7);
        assert_eq!(Matrix::from_i64(f7, &[&[0, 1], &[1, 0]]).determinant().unwrap(), f7.from_i64(-1));
        let half = Matrix::from_rows(Q, vec![vec![Q.parse_scalar("1/2").unwrap()]]).unwrap();
        assert_eq!(half.determinant().unwrap(), Q.parse_scalar("1/2").unwrap());
    }

    #[test]
    fn kernel_and_subspaces() {
        let m = Matrix::from_i64(Q, &[&[1, 1, 0], &[0, 0, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(m.mul_vec(&k[0]).unwrap(), vec![Q.zero(), Q.zero()]);

        let u = Subspace::span(Q, 3, Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 1, 0]]).to_rows());
        let w = Subspace::span(Q, 3, Matrix::from_i64(Q, &[&[0, 1, 0], &[0, 0, 1]]).to_rows());
        let i = u.intersect(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[Q.zero(), Q.one(), Q.zero()]));
        assert_eq!(u.annihilator().dim(), 1);
        assert_eq!(u.sum(&w).dim(), 3);
    }
}
