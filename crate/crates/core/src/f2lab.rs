//! Desk-scale finite-field constructions.
//!
//! * truth tables and their unique `F_2`-multilinear representatives
//!   (binary Möbius transform);
//! * exact distance from a Boolean function to the degree-`d` Reed–Muller
//!   code, by enumerating every codeword;
//! * vanishing ideals of point sets inside the space of reduced functions
//!   (`x^q = x`) of bounded degree;
//! * the intersection property `Λ ∩ I ≠ 0` where `Λ` is the intersection of
//!   twisted derivative spaces `∂^{≤r}(f)^σ` and `I` the functions vanishing
//!   on `GL_n(F_q)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::enumerate_gl;
use crate::linalg::{Matrix, Subspace};
use crate::poly::{monomials_up_to, Monomial, Poly, PolyJson};

/// Boolean function on `F_2^n`. Entry `i` is the value at the point whose
/// coordinates are the binary digits of `i`, `x1` most significant, so the
/// table is listed in lexicographic order of points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    bits: Vec<bool>,
}

pub const MAX_TABLE_VARS: usize = 24;

impl TruthTable {
    pub fn new(n: usize, bits: Vec<bool>) -> Result<Self> {
        if n > MAX_TABLE_VARS {
            return Err(Error::Infeasible(format!("truth tables are capped at {MAX_TABLE_VARS} variables")));
        }
        if bits.len() != 1 << n {
            return Err(Error::DimensionMismatch(format!("{} entries for n = {n}", bits.len())));
        }
        Ok(TruthTable { n, bits })
    }

    /// Builds the table from `f(point)`, with `point[j]` the value of `x_{j+1}`.
    pub fn from_fn(n: usize, f: impl Fn(&[u8]) -> bool) -> Result<Self> {
        let bits = (0..1usize << n).map(|i| f(&Self::point_of(n, i))).collect();
        Self::new(n, bits)
    }

    /// 1 iff the Hamming weight is `≡ residue (mod 3)`.
    pub fn mod3(n: usize, residue: u32) -> Result<Self> {
        Self::new(n, (0..1usize << n).map(|i| i.count_ones() % 3 == residue).collect())
    }

    pub fn parity(n: usize) -> Result<Self> {
        Self::new(n, (0..1usize << n).map(|i| i.count_ones() % 2 == 1).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn point_of(n: usize, index: usize) -> Vec<u8> {
        (0..n).map(|j| ((index >> (n - 1 - j)) & 1) as u8).collect()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Unique multilinear polynomial over `F_2` agreeing with the table.
    pub fn to_multilinear(&self) -> Result<Poly> {
        let mut coeffs = self.bits.clone();
        mobius_in_place(&mut coeffs);
        let f2 = Field::Prime(2);
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(i, _)| (Self::point_of(self.n, i).into_iter().map(u32::from).collect(), f2.one()));
        Poly::from_terms(self.n, f2, terms)
    }

    /// Truth table of a polynomial over `F_2` (any exponents; evaluated as a function).
    pub fn from_poly(f: &Poly) -> Result<Self> {
        if f.field() != Field::Prime(2) {
            return Err(Error::FieldMismatch(Field::Prime(2), f.field()));
        }
        let n = f.n();
        if n > MAX_TABLE_VARS {
            return Err(Error::Infeasible(format!("truth tables are capped at {MAX_TABLE_VARS} variables")));
        }
        let mut coeffs = vec![false; 1 << n];
        for (m, c) in f.reduce_to_function()?.terms() {
            let idx = m.exps().iter().fold(0usize, |acc, &e| (acc << 1) | (e > 0) as usize);
            coeffs[idx] ^= !c.is_zero();
        }
        mobius_in_place(&mut coeffs);
        Self::new(n, coeffs)
    }

    fn to_words(&self) -> Vec<u64> {
        let mut w = vec![0u64; self.bits.len().div_ceil(64)];
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                w[i / 64] |= 1 << (i % 64);
            }
        }
        w
    }
}

/// `truth_table_to_multilinear`.
pub fn truth_table_to_multilinear(t: &TruthTable) -> Result<Poly> {
    t.to_multilinear()
}

/// `multilinear_to_truth_table`.
pub fn multilinear_to_truth_table(f: &Poly) -> Result<TruthTable> {
    TruthTable::from_poly(f)
}

/// Subset-sum transform over `F_2`; it is its own inverse.
fn mobius_in_place(a: &mut [bool]) {
    let len = a.len();
    let mut step = 1;
    while step < len {
        for i in 0..len {
            if i & step != 0 {
                a[i] ^= a[i ^ step];
            }
        }
        step <<= 1;
    }
}

impl fmt::Display for TruthTable {
    /// `n=<int>` header line, then one line of `0`/`1` characters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        let line: String = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        writeln!(f, "{line}")
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty truth table".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
        let body = lines.next().ok_or_else(|| Error::Parse("missing table line".into()))?;
        let bits: Result<Vec<bool>> = body
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bad table character {c:?}"))),
            })
            .collect();
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after table".into()));
        }
        TruthTable::new(n, bits?)
    }
}

/// Closest degree-`<= d` function found by exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub n: usize,
    pub degree_bound: u32,
    /// Minimum number of disagreeing points.
    pub distance: usize,
    pub witness: Poly,
}

impl AgreementReport {
    /// Size of the largest agreement set `Γ`, i.e. `2^n - distance`.
    pub fn agreement(&self) -> usize {
        (1 << self.n) - self.distance
    }

    pub fn to_json(&self) -> AgreementJson {
        AgreementJson {
            n: self.n,
            degree_bound: self.degree_bound,
            distance: self.distance,
            agreement: self.agreement(),
            witness: self.witness.to_json(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AgreementJson {
    pub n: usize,
    pub degree_bound: u32,
    pub distance: usize,
    pub agreement: usize,
    pub witness: PolyJson,
}

/// Largest number of low-degree monomials whose code is enumerated.
pub const MAX_CODE_DIMENSION: usize = 24;
/// Largest arity for which distance computations run.
pub const MAX_DISTANCE_VARS: usize = 16;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension `sum_{i<=d} binom(n, i)` of the degree-`d` Reed–Muller code.
pub fn code_dimension(n: usize, d: u32) -> u64 {
    (0..=d.min(n as u32)).map(|i| binomial(n as u64, i as u64)).sum()
}

/// Exact Hamming distance from `t` to the nearest function of degree `<= d`,
/// with a witness. Ties prefer the witness with the smallest coefficient mask
/// (monomials ordered by grlex), so results are deterministic.
pub fn distance_to_degree(t: &TruthTable, d: u32) -> Result<AgreementReport> {
    let n = t.n();
    let k = code_dimension(n, d);
    if k as usize > MAX_CODE_DIMENSION || n > MAX_DISTANCE_VARS {
        return Err(Error::Infeasible(format!(
            "code dimension {k} (cap {MAX_CODE_DIMENSION}) with n = {n} (cap {MAX_DISTANCE_VARS})"
        )));
    }
    let k = k as usize;
    let gens: Vec<Monomial> = monomials_up_to(n, d).into_iter().filter(Monomial::is_multilinear).collect();
    debug_assert_eq!(gens.len(), k);
    let gen_words: Vec<Vec<u64>> = gens
        .iter()
        .map(|m| {
            TruthTable::from_fn(n, |pt| pt.iter().zip(m.exps()).all(|(&x, &e)| e == 0 || x == 1))
                .expect("n within cap")
                .to_words()
        })
        .collect();
    let target = t.to_words();
    let hi = k.min(6);
    let lo = k - hi;
    let (distance, mask) = (0u64..1 << hi)
        .into_par_iter()
        .map(|prefix| {
            // residual = target XOR codeword; start from the prefix codeword
            let mut residual = target.clone();
            let mut mask = 0u64;
            for b in 0..hi {
                if prefix >> b & 1 == 1 {
                    xor_into(&mut residual, &gen_words[lo + b]);
                    mask |= 1 << (lo + b);
                }
            }
            let mut best = (popcount(&residual), mask);
            for step in 1u64..1 << lo {
                let b = step.trailing_zeros() as usize;
                xor_into(&mut residual, &gen_words[b]);
                mask ^= 1 << b;
                let cand = (popcount(&residual), mask);
                if cand < best {
                    best = cand;
                }
            }
            best
        })
        .min()
        .expect("at least one codeword");
    let f2 = Field::Prime(2);
    let witness = Poly::from_terms(
        n,
        f2,
        (0..k).filter(|b| mask >> b & 1 == 1).map(|b| (gens[b].exps().to_vec(), f2.one())),
    )?;
    Ok(AgreementReport { n, degree_bound: d, distance, witness })
}

fn xor_into(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

fn popcount(a: &[u64]) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

/// Subspace of reduced functions on `F_q^m` of degree `<= D`, in the basis of
/// reduced monomials (every exponent `< q`) ordered by grlex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceOverFq {
    field: Field,
    n: usize,
    max_degree: u32,
    monomials: Vec<Monomial>,
    space: Subspace,
}

fn reduced_monomials(n: usize, q: u32, max_degree: u32) -> Vec<Monomial> {
    monomials_up_to(n, max_degree)
        .into_iter()
        .filter(|m| m.exps().iter().all(|&e| e < q))
        .collect()
}

fn prime_of(field: Field) -> Result<u32> {
    match field {
        Field::Prime(q) => Ok(q),
        Field::Rationals => Err(Error::InvalidField("function spaces need a finite field".into())),
    }
}

impl SubspaceOverFq {
    fn empty(field: Field, n: usize, max_degree: u32) -> Result<Self> {
        let q = prime_of(field)?;
        let monomials = reduced_monomials(n, q, max_degree);
        let space = Subspace::zero(field, monomials.len());
        Ok(SubspaceOverFq { field, n, max_degree, monomials, space })
    }

    /// Span of the function forms of `polys`. Fails if one exceeds the degree cap.
    pub fn span_of(field: Field, n: usize, max_degree: u32, polys: &[Poly]) -> Result<Self> {
        let mut out = Self::empty(field, n, max_degree)?;
        let vectors: Vec<Vec<Scalar>> = polys.iter().map(|p| out.coordinates(p)).collect::<Result<_>>()?;
        out.space = Subspace::span(field, out.monomials.len(), vectors);
        Ok(out)
    }

    fn with_space(&self, space: Subspace) -> Self {
        SubspaceOverFq { space, ..self.clone() }
    }

    /// Coordinates of the function form of `p` in the reduced monomial basis.
    pub fn coordinates(&self, p: &Poly) -> Result<Vec<Scalar>> {
        if p.field() != self.field {
            return Err(Error::FieldMismatch(self.field, p.field()));
        }
        if p.n() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, got: p.n() });
        }
        let r = p.reduce_to_function()?;
        let mut v = vec![self.field.zero(); self.monomials.len()];
        for (m, c) in r.terms() {
            let i = self.monomials.binary_search(m).map_err(|_| {
                Error::InvalidParameter(format!("degree {} exceeds the cap {}", m.degree(), self.max_degree))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.space
            .basis()
            .iter()
            .map(|v| {
                Poly::from_terms(
                    self.n,
                    self.field,
                    self.monomials.iter().zip(v).map(|(m, c)| (m.exps().to_vec(), c.clone())),
                )
                .expect("consistent arity")
            })
            .collect()
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.space.contains(&self.coordinates(p)?))
    }

    fn check_same_ambient(&self, o: &Self) -> Result<()> {
        if self.field != o.field || self.n != o.n || self.max_degree != o.max_degree {
            return Err(Error::AmbientMismatch("function spaces differ".into()));
        }
        Ok(())
    }

    pub fn intersect(&self, o: &Self) -> Result<Self> {
        self.check_same_ambient(o)?;
        Ok(self.with_space(self.space.intersect(&o.space)))
    }

    pub fn sum(&self, o: &Self) -> Result<Self> {
        self.check_same_ambient(o)?;
        Ok(self.with_space(self.space.sum(&o.space)))
    }
}

/// Evaluation matrix: rows are points, columns the reduced monomials.
fn evaluation_matrix(field: Field, points: &[Vec<Scalar>], monomials: &[Monomial]) -> Result<Matrix> {
    let n = monomials.first().map_or(0, Monomial::n);
    let rows: Result<Vec<Vec<Scalar>>> = points
        .iter()
        .map(|pt| {
            if pt.len() != n {
                return Err(Error::ArityMismatch { expected: n, got: pt.len() });
            }
            Ok(monomials
                .iter()
                .map(|m| {
                    pt.iter()
                        .zip(m.exps())
                        .fold(field.one(), |acc, (x, &e)| if e == 0 { acc } else { acc.mul(&x.pow(e)) })
                })
                .collect())
        })
        .collect();
    Matrix::from_rows(field, rows?)
}

/// Reduced functions of degree `<= max_degree` vanishing at every point.
pub fn vanishing_ideal_basis(field: Field, points: &[Vec<Scalar>], max_degree: u32) -> Result<SubspaceOverFq> {
    let first = points.first().ok_or_else(|| Error::InvalidParameter("need at least one point".into()))?;
    let mut out = SubspaceOverFq::empty(field, first.len(), max_degree)?;
    let eval = evaluation_matrix(field, points, &out.monomials)?;
    out.space = Subspace::span(field, out.monomials.len(), eval.kernel());
    Ok(out)
}

/// `GL_n(F_q)` as points of `F_q^{n²}`, flattened row-major.
pub fn gl_points(n: usize, field: Field) -> Result<Vec<Vec<Scalar>>> {
    Ok(enumerate_gl(n, field)?
        .into_iter()
        .map(|m| m.to_rows().into_iter().flatten().collect())
        .collect())
}

/// How `Λ ∩ I` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntersectionStrategy {
    /// Intersect the twisted derivative spaces two at a time, then with `I`.
    Pairwise,
    /// One linear system: the annihilators of every twisted space stacked on
    /// the evaluation matrix of `GL_n(F_q)`.
    Stacked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkReport {
    pub n: usize,
    pub q: u32,
    pub r: u32,
    pub max_degree: u32,
    pub set_size: usize,
    pub strategy: IntersectionStrategy,
    pub lambda_dim: usize,
    pub ideal_dim: usize,
    pub intersection_dim: usize,
    pub property_holds: bool,
}

/// Largest `q^{n²}` accepted by [`gk_intersection_test`].
pub const GK_SCALE_CAP: u64 = 4096;

/// `g ↦ g(σX)` for `g` in the `n²` matrix variables.
fn twist_matrix(sigma: &Matrix, n: usize) -> Matrix {
    let field = sigma.field();
    let mut b = Matrix::zeros(field, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // (σX)_{ij} = sum_k σ_{ik} X_{kj}
                b.set(i * n + j, k * n + j, sigma.get(i, k).clone());
            }
        }
    }
    b
}

/// Does some nonzero `g ∈ ⋂_{σ∈S} ∂^{≤r}(f)^σ` vanish on all of `GL_n(F_q)`?
///
/// `f` is a polynomial in the `n²` matrix variables (row-major). Derivatives
/// are formal; twisted derivatives are reduced to function form (`x^q = x`).
/// `max_degree` defaults to `n²(q-1)`, the largest reduced degree.
pub fn gk_intersection_test(
    f: &Poly,
    n: usize,
    r: u32,
    set: &[Matrix],
    max_degree: Option<u32>,
    strategy: IntersectionStrategy,
) -> Result<GkReport> {
    let field = f.field();
    let q = prime_of(field)?;
    if f.n() != n * n {
        return Err(Error::ArityMismatch { expected: n * n, got: f.n() });
    }
    if (q as u64).checked_pow((n * n) as u32).is_none_or(|s| s > GK_SCALE_CAP) {
        return Err(Error::Infeasible(format!("q^(n^2) = {q}^{} exceeds {GK_SCALE_CAP}", n * n)));
    }
    if set.is_empty() {
        return Err(Error::InvalidParameter("the set S must be nonempty".into()));
    }
    for s in set {
        if s.field() != field || s.rows() != n || s.cols() != n || !s.is_invertible() {
            return Err(Error::InvalidParameter("S must contain invertible n x n matrices over the same field".into()));
        }
    }
    let full = (n * n) as u32 * (q - 1);
    let max_degree = max_degree.unwrap_or(full);
    let reduced_deg = if f.is_zero() { 0 } else { f.reduce_to_function()?.degree().max(0) as u32 };
    if max_degree < reduced_deg {
        return Err(Error::InvalidParameter(format!("degree cap {max_degree} is below deg f = {reduced_deg}")));
    }

    let derivs: Vec<Poly> = if f.is_zero() {
        Vec::new()
    } else {
        let top = r.min(f.degree() as u32);
        monomials_up_to(n * n, top).iter().map(|c| f.derivative(c)).collect()
    };
    let twisted: Vec<SubspaceOverFq> = set
        .iter()
        .map(|sigma| {
            let b = twist_matrix(sigma, n);
            let images: Vec<Poly> = derivs.iter().map(|g| g.substitute_linear(&b)).collect::<Result<_>>()?;
            SubspaceOverFq::span_of(field, n * n, max_degree, &images)
        })
        .collect::<Result<_>>()?;

    let points = gl_points(n, field)?;
    let ideal = vanishing_ideal_basis(field, &points, max_degree)?;

    let mut lambda = twisted[0].clone();
    for t in &twisted[1..] {
        lambda = lambda.intersect(t)?;
    }
    let intersection_dim = match strategy {
        IntersectionStrategy::Pairwise => lambda.intersect(&ideal)?.dim(),
        IntersectionStrategy::Stacked => {
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for t in &twisted {
                rows.extend(t.subspace().annihilator().basis().iter().cloned());
            }
            rows.extend(evaluation_matrix(field, &points, ideal.ambient_monomials())?.to_rows());
            let dim = ideal.ambient_monomials().len();
            if rows.is_empty() {
                dim
            } else {
                dim - Matrix::from_rows(field, rows)?.rank()
            }
        }
    };
    Ok(GkReport {
        n,
        q,
        r,
        max_degree,
        set_size: set.len(),
        strategy,
        lambda_dim: lambda.dim(),
        ideal_dim: ideal.dim(),
        intersection_dim,
        property_holds: intersection_dim > 0,
    })
}
