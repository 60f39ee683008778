//! Rank-based complexity measures as exact labeled matrices.
//!
//! * `dim ∂(f)`: rank of the matrix whose rows are the derivatives `∂^c f`
//!   for `|c| <= deg f` and whose columns are monomials of degree `<= deg f`.
//!   Order zero (`f` itself) is included unless disabled.
//! * shifted partials `∂^{=k}(f)_{<=ℓ}`: rows `x^m · ∂^c f` with `|m| <= ℓ`
//!   and `|c| = k`.
//! * Hessian rank at a point.
//!
//! Matrices are stored with sparse rows. Rank splits the matrix into blocks
//! that share no column (connected components of the row/column incidence
//! graph) and eliminates each block densely; for homogeneous inputs these
//! blocks are the per-order slices.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{rank_of_rows, Matrix};
use crate::poly::{monomials_of_degree, monomials_up_to, Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    /// Column indexed by a monomial `x^e`.
    Monomial(Monomial),
    /// Row indexed by a derivative operator `∂^c`.
    Operator(Monomial),
    /// Row `(x^m, ∂^c)` of the shifted-partials matrix.
    Shifted { shift: Monomial, operator: Monomial },
    /// Plain position (Hessian rows and columns, generic matrices).
    Index(usize),
}

/// Exact matrix with labeled rows and columns and sparse row storage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    row_labels: Vec<Label>,
    col_labels: Vec<Label>,
    /// Nonzero entries of each row, sorted by column.
    entries: Vec<Vec<(usize, Scalar)>>,
}

impl ExactMatrix {
    pub fn new(field: Field, row_labels: Vec<Label>, col_labels: Vec<Label>, entries: Vec<Vec<(usize, Scalar)>>) -> Result<Self> {
        if entries.len() != row_labels.len() {
            return Err(Error::DimensionMismatch("row labels".into()));
        }
        let cols = col_labels.len();
        for row in &entries {
            if row.iter().any(|(j, _)| *j >= cols) {
                return Err(Error::DimensionMismatch("column index beyond labels".into()));
            }
        }
        Ok(ExactMatrix { field, row_labels, col_labels, entries })
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        ExactMatrix {
            field: m.field(),
            row_labels: (0..m.rows()).map(Label::Index).collect(),
            col_labels: (0..m.cols()).map(Label::Index).collect(),
            entries,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Label] {
        &self.col_labels
    }

    pub fn row_entries(&self, i: usize) -> &[(usize, Scalar)] {
        &self.entries[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| self.entries[i][k].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows(), self.cols());
        for (i, row) in self.entries.iter().enumerate() {
            for (j, x) in row {
                m.set(i, *j, x.clone());
            }
        }
        m
    }

    /// Exact rank; see [`rank_exact`].
    pub fn rank(&self) -> usize {
        rank_exact(self)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Exact rank: Bareiss over `Q`, Gaussian elimination over `F_p`, applied
/// independently to each block of rows that share columns.
pub fn rank_exact(m: &ExactMatrix) -> usize {
    let mut parent: Vec<usize> = (0..m.cols()).collect();
    for row in &m.entries {
        if let Some((first, _)) = row.first() {
            let a = find(&mut parent, *first);
            for (j, _) in &row[1..] {
                let b = find(&mut parent, *j);
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, row) in m.entries.iter().enumerate() {
        if let Some((first, _)) = row.first() {
            let root = find(&mut parent, *first);
            blocks.entry(root).or_default().push(i);
        }
    }
    let blocks: Vec<Vec<usize>> = blocks.into_values().collect();
    blocks
        .par_iter()
        .map(|rows| {
            let mut cols: Vec<usize> = rows.iter().flat_map(|&i| m.entries[i].iter().map(|(j, _)| *j)).collect();
            cols.sort_unstable();
            cols.dedup();
            let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
            let dense: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|&i| {
                    let mut r = vec![m.field.zero(); cols.len()];
                    for (j, x) in &m.entries[i] {
                        r[pos[j]] = x.clone();
                    }
                    r
                })
                .collect();
            rank_of_rows(m.field, cols.len(), dense)
        })
        .sum()
}

/// Options for [`partial_deriv_matrix_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialsOptions {
    /// Include the order-zero operator (the row `f` itself).
    pub include_order_zero: bool,
    /// Keep only operators of order `<= max_order`.
    pub max_order: Option<u32>,
}

impl Default for PartialsOptions {
    fn default() -> Self {
        PartialsOptions { include_order_zero: true, max_order: None }
    }
}

fn sparse_row(p: &Poly, col_index: &HashMap<Monomial, usize>) -> Vec<(usize, Scalar)> {
    let mut row: Vec<(usize, Scalar)> = p.terms().map(|(m, c)| (col_index[m], c.clone())).collect();
    row.sort_unstable_by_key(|(j, _)| *j);
    row
}

fn column_index(cols: &[Monomial]) -> HashMap<Monomial, usize> {
    cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Matrix of all partial derivatives of `f` with the default convention.
pub fn partial_deriv_matrix(f: &Poly) -> Result<ExactMatrix> {
    partial_deriv_matrix_with(f, PartialsOptions::default())
}

pub fn partial_deriv_matrix_with(f: &Poly, opts: PartialsOptions) -> Result<ExactMatrix> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("partial derivative matrix of the zero polynomial".into()));
    }
    let d = f.degree() as u32;
    let top = opts.max_order.map_or(d, |m| m.min(d));
    let lo = if opts.include_order_zero { 0 } else { 1 };
    let ops: Vec<Monomial> = (lo..=top).flat_map(|k| monomials_of_degree(f.n(), k)).collect();
    let cols = monomials_up_to(f.n(), d);
    let idx = column_index(&cols);
    let entries: Vec<Vec<(usize, Scalar)>> = ops.par_iter().map(|c| sparse_row(&f.derivative(c), &idx)).collect();
    ExactMatrix::new(
        f.field(),
        ops.into_iter().map(Label::Operator).collect(),
        cols.into_iter().map(Label::Monomial).collect(),
        entries,
    )
}

/// `dim ∂(f)`, all orders including zero. The zero polynomial has dimension 0.
pub fn dim_partials(f: &Poly) -> usize {
    dim_partials_with(f, PartialsOptions::default())
}

pub fn dim_partials_with(f: &Poly, opts: PartialsOptions) -> usize {
    if f.is_zero() {
        return 0;
    }
    rank_exact(&partial_deriv_matrix_with(f, opts).expect("nonzero input"))
}

/// Rows `(x^m, ∂^c)` with `|m| <= shift_degree`, `|c| = order`; columns the
/// monomials of degree `<= deg f - order + shift_degree`.
pub fn shifted_partials_matrix(f: &Poly, order: u32, shift_degree: u32) -> Result<ExactMatrix> {
    if f.is_zero() || order as i64 > f.degree() {
        return Err(Error::InvalidParameter(format!("derivative order {order} exceeds degree {}", f.degree())));
    }
    let d = f.degree() as u32;
    let ops = monomials_of_degree(f.n(), order);
    let derivs: Vec<Poly> = ops.iter().map(|c| f.derivative(c)).collect();
    let shifts = monomials_up_to(f.n(), shift_degree);
    let cols = monomials_up_to(f.n(), d - order + shift_degree);
    let idx = column_index(&cols);
    let pairs: Vec<(usize, usize)> = (0..shifts.len()).flat_map(|s| (0..ops.len()).map(move |c| (s, c))).collect();
    let entries: Vec<Vec<(usize, Scalar)>> = pairs
        .par_iter()
        .map(|&(s, c)| sparse_row(&derivs[c].mul_monomial(&shifts[s]), &idx))
        .collect();
    let labels = pairs
        .iter()
        .map(|&(s, c)| Label::Shifted { shift: shifts[s].clone(), operator: ops[c].clone() })
        .collect();
    ExactMatrix::new(f.field(), labels, cols.into_iter().map(Label::Monomial).collect(), entries)
}

/// `dim ∂^{=k}(f)_{<=ℓ}`.
pub fn shifted_partials_rank(f: &Poly, order: u32, shift_degree: u32) -> Result<usize> {
    Ok(rank_exact(&shifted_partials_matrix(f, order, shift_degree)?))
}

/// Symbolic Hessian: entry `(i, j)` is `∂²f / ∂x_i ∂x_j`.
pub fn hessian(f: &Poly) -> Result<Vec<Vec<Poly>>> {
    if f.n() == 0 {
        return Err(Error::InvalidParameter("Hessian needs at least one variable".into()));
    }
    let first: Vec<Poly> = (0..f.n()).map(|i| f.partial_derivative(i)).collect::<Result<_>>()?;
    first
        .iter()
        .map(|g| (0..f.n()).map(|j| g.partial_derivative(j)).collect())
        .collect()
}

/// Scalar Hessian at `point`.
pub fn hessian_at(f: &Poly, point: &[Scalar]) -> Result<Matrix> {
    if point.len() != f.n() {
        return Err(Error::ArityMismatch { expected: f.n(), got: point.len() });
    }
    let h = hessian(f)?;
    let rows: Result<Vec<Vec<Scalar>>> = h.iter().map(|r| r.iter().map(|p| p.evaluate(point)).collect()).collect();
    Matrix::from_rows(f.field(), rows?)
}

pub fn hessian_rank_at(f: &Poly, point: &[Scalar]) -> Result<usize> {
    Ok(hessian_at(f, point)?.rank())
}

/// A random singular `n x n` matrix, flattened row-major: the last row is a
/// random combination of the others, so the determinant vanishes.
pub fn sample_singular_matrix<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R, coeff_bound: i64) -> Vec<Scalar> {
    let entry = |rng: &mut R| match field {
        Field::Rationals => field.from_i64(rng.gen_range(-coeff_bound..=coeff_bound)),
        Field::Prime(p) => field.from_u64(rng.gen_range(0..p as u64)),
    };
    let mut rows: Vec<Vec<Scalar>> = (0..n.saturating_sub(1)).map(|_| (0..n).map(|_| entry(rng)).collect()).collect();
    let weights: Vec<Scalar> = (0..rows.len()).map(|_| entry(rng)).collect();
    let last = (0..n)
        .map(|j| rows.iter().zip(&weights).fold(field.zero(), |acc, (r, w)| acc.add(&r[j].mul(w))))
        .collect();
    rows.push(last);
    rows.into_iter().flatten().collect()
}

/// The registered measures. All but `TermCount` are invariant under
/// invertible linear substitutions (shifted partials for homogeneous inputs);
/// `TermCount` is a deliberately non-invariant fixture for harness checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Measure {
    DimPartials(PartialsOptions),
    Shifted { order: u32, shift_degree: u32 },
    HessianRankAt(Vec<Scalar>),
    TermCount,
}

impl Measure {
    pub fn dim_partials() -> Self {
        Measure::DimPartials(PartialsOptions::default())
    }

    pub fn name(&self) -> String {
        match self {
            Measure::DimPartials(o) if o.include_order_zero && o.max_order.is_none() => "dim_partials".into(),
            Measure::DimPartials(_) => "dim_partials_variant".into(),
            Measure::Shifted { .. } => "shifted".into(),
            Measure::HessianRankAt(_) => "hessian_rank".into(),
            Measure::TermCount => "term_count".into(),
        }
    }

    pub fn params(&self) -> BTreeMap<String, serde_json::Value> {
        let mut p = BTreeMap::new();
        match self {
            Measure::DimPartials(o) => {
                p.insert("include_order_zero".into(), o.include_order_zero.into());
                if let Some(m) = o.max_order {
                    p.insert("max_order".into(), m.into());
                }
            }
            Measure::Shifted { order, shift_degree } => {
                p.insert("k".into(), (*order).into());
                p.insert("l".into(), (*shift_degree).into());
            }
            Measure::HessianRankAt(pt) => {
                p.insert("point".into(), pt.iter().map(|x| x.to_string()).collect::<Vec<_>>().into());
            }
            Measure::TermCount => {}
        }
        p
    }

    /// The labeled matrix whose rank is the measure (`None` for `TermCount`).
    pub fn matrix(&self, f: &Poly) -> Result<Option<ExactMatrix>> {
        Ok(match self {
            Measure::DimPartials(o) => {
                if f.is_zero() {
                    Some(ExactMatrix::new(f.field(), vec![], vec![], vec![])?)
                } else {
                    Some(partial_deriv_matrix_with(f, *o)?)
                }
            }
            Measure::Shifted { order, shift_degree } => Some(shifted_partials_matrix(f, *order, *shift_degree)?),
            Measure::HessianRankAt(pt) => Some(ExactMatrix::from_dense(&hessian_at(f, pt)?)),
            Measure::TermCount => None,
        })
    }

    pub fn evaluate(&self, f: &Poly) -> Result<usize> {
        Ok(self.report(f)?.rank)
    }

    pub fn report(&self, f: &Poly) -> Result<MeasureReport> {
        let (rank, rows, cols) = match self.matrix(f)? {
            Some(m) => (rank_exact(&m), m.rows(), m.cols()),
            None => (f.num_terms(), 0, 0),
        };
        Ok(MeasureReport { measure: self.name(), params: self.params(), rank, rows, cols })
    }
}

/// `{"measure": "dim_partials" | "shifted" | "hessian_rank", "params": {..}, "rank": r, "rows": m, "cols": n}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub measure: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn p(n: usize, s: &str) -> Poly {
        Poly::parse(n, Q, s).unwrap()
    }

    #[test]
    fn rank_examples() {
        let id = ExactMatrix::from_dense(&Matrix::identity(Q, 3));
        assert_eq!(rank_exact(&id), 3);
        let ones = ExactMatrix::from_dense(&Matrix::from_i64(Q, &[&[1; 4], &[1; 4], &[1; 4], &[1; 4]]));
        assert_eq!(rank_exact(&ones), 1);
        let prop = ExactMatrix::from_dense(&Matrix::from_i64(Q, &[&[1, 2], &[2, 4], &[3, 6]]));
        assert_eq!(rank_exact(&prop), 1);
    }

    #[test]
    fn block_decomposition_keeps_rank() {
        // two blocks linked only through a later row
        let m = Matrix::from_i64(Q, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 1, 0, 0]]);
        assert_eq!(rank_exact(&ExactMatrix::from_dense(&m)), m.rank());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn partial_derivative_matrices() {
        let m = partial_deriv_matrix(&p(1, "x1^2")).unwrap();
        assert_eq!((m.rows(), m.cols(), m.rank()), (3, 3, 3));
        assert_eq!(dim_partials(&p(2, "x1*x2")), 4);
        assert_eq!(dim_partials(&p(4, "x1*x2+x1*x3+x1*x4+x2*x3+x2*x4+x3*x4")), 6);
        assert_eq!(dim_partials(&Poly::constant(3, Q, Q.from_i64(5))), 1);
        assert_eq!(dim_partials(&Poly::zero(3, Q)), 0);
        assert!(partial_deriv_matrix(&Poly::zero(2, Q)).is_err());
        assert_eq!(m.row_labels()[0], Label::Operator(Monomial::new(vec![0])));
        assert_eq!(m.get(1, 1), Q.from_i64(2));
    }

    #[test]
    fn order_zero_convention_flag() {
        let opts = PartialsOptions { include_order_zero: false, max_order: None };
        assert_eq!(dim_partials_with(&p(2, "x1*x2"), opts), 3);
    }

    #[test]
    fn shifted_partials() {
        assert_eq!(shifted_partials_rank(&p(2, "x1*x2"), 1, 1).unwrap(), 5);
        assert_eq!(shifted_partials_rank(&p(1, "x1^2"), 1, 0).unwrap(), 1);
        assert!(shifted_partials_matrix(&p(1, "x1^2"), 3, 0).is_err());
        // ℓ = 0 is the order-k slice of the derivative matrix
        let f = p(3, "x1^2*x2 + x2*x3^2 - 2*x1*x2*x3");
        let slice = partial_deriv_matrix_with(&f, PartialsOptions { include_order_zero: true, max_order: Some(1) }).unwrap();
        let order1: Vec<Vec<(usize, Scalar)>> = (1..slice.rows()).map(|i| slice.row_entries(i).to_vec()).collect();
        let sub = ExactMatrix::new(Q, (0..3).map(Label::Index).collect(), slice.col_labels().to_vec(), order1).unwrap();
        assert_eq!(shifted_partials_rank(&f, 1, 0).unwrap(), sub.rank());
    }

    #[test]
    fn hessians() {
        assert_eq!(hessian(&p(1, "x1^2")).unwrap(), vec![vec![p(1, "2")]]);
        let perm2 = p(4, "x1*x4 + x2*x3");
        let h = hessian(&perm2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i + j == 3 { p(4, "1") } else { Poly::zero(4, Q) };
                assert_eq!(h[i][j], expect, "entry {i},{j}");
            }
        }
        let pt: Vec<Scalar> = [1, 0, 0, 0].iter().map(|&v| Q.from_i64(v)).collect();
        assert_eq!(hessian_rank_at(&perm2, &pt).unwrap(), 4);
        assert_eq!(hessian_rank_at(&p(2, "3*x1 - x2"), &[Q.one(), Q.one()]).unwrap(), 0);
        assert!(hessian_rank_at(&perm2, &pt[..2]).is_err());
    }

    #[test]
    fn singular_sampler() {
        let mut rng = crate::seed::rng_from_seed(3);
        for field in [Q, Field::Prime(7)] {
            for _ in 0..10 {
                let flat = sample_singular_matrix(3, field, &mut rng, 3);
                let m = Matrix::from_rows(field, flat.chunks(3).map(|c| c.to_vec()).collect()).unwrap();
                assert!(m.determinant().unwrap().is_zero());
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let r = Measure::Shifted { order: 1, shift_degree: 1 }.report(&p(2, "x1*x2")).unwrap();
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(j, r#"{"measure":"shifted","params":{"k":1,"l":1},"rank":5,"rows":6,"cols":6}"#);
    }
}
