//! Linear, affine and permutation actions on input polynomials, and the
//! induced linear map on coefficient vectors.
//!
//! Conventions:
//! * `apply(g, f)` is `f(g x)`: `Linear(A)` gives `f(Ax)`, `Affine(A, b)` gives
//!   `f(Ax + b)`, and a permutation `π` (one-line array, zero-based) gives
//!   `f(x_{π(0)}, .., x_{π(n-1)})`, i.e. the matrix `P[i][π(i)] = 1`.
//! * Composition is right-to-left on polynomials:
//!   `apply(g, apply(h, f)) == apply(&composite(g, h), f)`. For matrices this
//!   is the product `H G`; for permutations `σ(i) = π_g(π_h(i))`.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::measures::Measure;
use crate::poly::{monomials_of_degree, monomials_up_to, Monomial, Poly};
use crate::seed;

/// Element of `GL_n`, `AGL_n` or `S_n` acting on variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupElement {
    Linear(Matrix),
    Affine(Matrix, Vec<Scalar>),
    Permutation(Vec<usize>),
}

/// Which group to sample from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Linear,
    Affine,
    Permutation,
}

impl GroupElement {
    pub fn linear(a: Matrix) -> Result<Self> {
        if !a.is_invertible() {
            return Err(Error::InvalidParameter("matrix is not invertible".into()));
        }
        Ok(GroupElement::Linear(a))
    }

    pub fn affine(a: Matrix, b: Vec<Scalar>) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch("translation length".into()));
        }
        if !a.is_invertible() {
            return Err(Error::InvalidParameter("matrix is not invertible".into()));
        }
        Ok(GroupElement::Affine(a, b))
    }

    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidParameter(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(GroupElement::Permutation(perm))
    }

    pub fn identity(n: usize) -> Self {
        GroupElement::Permutation((0..n).collect())
    }

    pub fn n(&self) -> usize {
        match self {
            GroupElement::Linear(a) | GroupElement::Affine(a, _) => a.rows(),
            GroupElement::Permutation(p) => p.len(),
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, GroupElement::Affine(..))
    }

    /// Linear part as a matrix over `field`.
    pub fn matrix(&self, field: Field) -> Matrix {
        match self {
            GroupElement::Linear(a) | GroupElement::Affine(a, _) => a.clone(),
            GroupElement::Permutation(p) => {
                let mut m = Matrix::zeros(field, p.len(), p.len());
                for (i, &j) in p.iter().enumerate() {
                    m.set(i, j, field.one());
                }
                m
            }
        }
    }

    fn translation(&self, field: Field) -> Vec<Scalar> {
        match self {
            GroupElement::Affine(_, b) => b.clone(),
            _ => vec![field.zero(); self.n()],
        }
    }

    fn check_field(&self, field: Field) -> Result<()> {
        match self {
            GroupElement::Linear(a) | GroupElement::Affine(a, _) if a.field() != field => {
                Err(Error::FieldMismatch(field, a.field()))
            }
            _ => Ok(()),
        }
    }

    /// `f(g x)`.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.n() != self.n() {
            return Err(Error::ArityMismatch { expected: self.n(), got: f.n() });
        }
        self.check_field(f.field())?;
        match self {
            GroupElement::Linear(a) => f.substitute_linear(a),
            GroupElement::Affine(a, b) => f.substitute_affine(a, b),
            GroupElement::Permutation(p) => Ok(f.rename_vars(p, f.n())),
        }
    }

    /// The element acting as "first `h`, then `g`" on polynomials.
    pub fn composite(g: &GroupElement, h: &GroupElement, field: Field) -> Result<GroupElement> {
        if g.n() != h.n() {
            return Err(Error::ArityMismatch { expected: g.n(), got: h.n() });
        }
        g.check_field(field)?;
        h.check_field(field)?;
        Ok(match (g, h) {
            (GroupElement::Permutation(pg), GroupElement::Permutation(ph)) => {
                GroupElement::Permutation(ph.iter().map(|&i| pg[i]).collect())
            }
            _ => {
                let gm = g.matrix(field);
                let hm = h.matrix(field);
                let lin = hm.mul(&gm)?;
                if g.is_affine() || h.is_affine() {
                    // f(H(Gx + c) + d) = f(HGx + Hc + d)
                    let hc = hm.mul_vec(&g.translation(field))?;
                    let b = hc.iter().zip(h.translation(field)).map(|(a, d)| a.add(&d)).collect();
                    GroupElement::Affine(lin, b)
                } else {
                    GroupElement::Linear(lin)
                }
            }
        })
    }

    pub fn to_json(&self) -> GroupElementJson {
        let mat = |a: &Matrix| a.to_rows().iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect();
        match self {
            GroupElement::Linear(a) => GroupElementJson {
                kind: "linear".into(),
                matrix: Some(mat(a)),
                b: None,
                perm: None,
            },
            GroupElement::Affine(a, b) => GroupElementJson {
                kind: "affine".into(),
                matrix: Some(mat(a)),
                b: Some(b.iter().map(Scalar::to_string).collect()),
                perm: None,
            },
            GroupElement::Permutation(p) => GroupElementJson {
                kind: "perm".into(),
                matrix: None,
                b: None,
                perm: Some(p.clone()),
            },
        }
    }

    pub fn from_json(j: &GroupElementJson, field: Field) -> Result<Self> {
        let parse_matrix = || -> Result<Matrix> {
            let rows = j.matrix.as_ref().ok_or_else(|| Error::Parse("missing \"matrix\"".into()))?;
            let rows: Result<Vec<Vec<Scalar>>> = rows
                .iter()
                .map(|r| r.iter().map(|s| field.parse_scalar(s)).collect())
                .collect();
            let m = Matrix::from_rows(field, rows?)?;
            if m.rows() != m.cols() {
                return Err(Error::DimensionMismatch("group matrix must be square".into()));
            }
            Ok(m)
        };
        match j.kind.as_str() {
            "linear" => GroupElement::linear(parse_matrix()?),
            "affine" => {
                let b = j.b.as_ref().ok_or_else(|| Error::Parse("missing \"b\"".into()))?;
                let b: Result<Vec<Scalar>> = b.iter().map(|s| field.parse_scalar(s)).collect();
                GroupElement::affine(parse_matrix()?, b?)
            }
            "perm" => GroupElement::permutation(j.perm.clone().ok_or_else(|| Error::Parse("missing \"perm\"".into()))?),
            other => Err(Error::Parse(format!("unknown group element kind {other:?}"))),
        }
    }
}

/// Serialized group element:
/// `{"kind": "linear" | "affine" | "perm", "matrix": [[..]], "b": [..], "perm": [..]}`.
/// Scalars are strings (`"3"`, `"-1/2"`).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupElementJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
}

fn random_entry<R: Rng + ?Sized>(field: Field, rng: &mut R, bound: i64) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-bound..=bound)),
        Field::Prime(p) => field.from_u64(rng.gen_range(0..p as u64)),
    }
}

fn random_invertible_matrix<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R, coeff_bound: i64) -> Matrix {
    loop {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, random_entry(field, rng, coeff_bound));
            }
        }
        if m.is_invertible() {
            return m;
        }
    }
}

/// Uniform entries in `-coeff_bound..=coeff_bound` over `Q` (uniform in
/// `F_p` otherwise), resampled until the determinant is nonzero.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R, coeff_bound: i64) -> GroupElement {
    assert!(field != Field::Rationals || coeff_bound >= 1, "coeff_bound must be positive");
    GroupElement::Linear(random_invertible_matrix(n, field, rng, coeff_bound))
}

pub fn random_affine<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R, coeff_bound: i64) -> GroupElement {
    let a = random_invertible_matrix(n, field, rng, coeff_bound);
    let b = (0..n).map(|_| random_entry(field, rng, coeff_bound)).collect();
    GroupElement::Affine(a, b)
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GroupElement {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    GroupElement::Permutation(p)
}

pub fn random_element<R: Rng + ?Sized>(kind: GroupKind, n: usize, field: Field, rng: &mut R, coeff_bound: i64) -> GroupElement {
    match kind {
        GroupKind::Linear => random_invertible(n, field, rng, coeff_bound),
        GroupKind::Affine => random_affine(n, field, rng, coeff_bound),
        GroupKind::Permutation => random_permutation(n, rng),
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u64) -> u128 {
    (0..n).map(|i| (q as u128).pow(n) - (q as u128).pow(i)).product()
}

pub const EXHAUSTIVE_GROUP_CAP: u128 = 10_000;

/// Every element of `GL_n(F_q)`, in lexicographic order of row-major entries.
/// Refused when the group has more than [`EXHAUSTIVE_GROUP_CAP`] elements.
pub fn enumerate_gl(n: usize, field: Field) -> Result<Vec<Matrix>> {
    let q = field
        .order()
        .ok_or_else(|| Error::Infeasible("cannot enumerate GL_n over Q".into()))?;
    let order = gl_order(n as u32, q);
    if order > EXHAUSTIVE_GROUP_CAP {
        return Err(Error::Infeasible(format!("|GL_{n}(F_{q})| = {order} exceeds {EXHAUSTIVE_GROUP_CAP}")));
    }
    let cells = n * n;
    let total = (q as u128).pow(cells as u32) as u64;
    let mut out = Vec::with_capacity(order as usize);
    for code in 0..total {
        let mut m = Matrix::zeros(field, n, n);
        let mut c = code;
        for k in (0..cells).rev() {
            m.set(k / n, k % n, field.from_u64(c % q));
            c /= q;
        }
        if m.is_invertible() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Coefficient space: homogeneous polynomials of degree `d` (the graded
/// piece), or all polynomials of degree `<= d`, with the grlex monomial basis.
#[derive(Clone, Debug)]
pub struct CoeffSpace {
    n: usize,
    degree: u32,
    homogeneous: bool,
    field: Field,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl PartialEq for CoeffSpace {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.degree == o.degree && self.homogeneous == o.homogeneous && self.field == o.field
    }
}

impl Eq for CoeffSpace {}

impl CoeffSpace {
    fn build(n: usize, degree: u32, homogeneous: bool, field: Field) -> Self {
        let monomials = if homogeneous { monomials_of_degree(n, degree) } else { monomials_up_to(n, degree) };
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        CoeffSpace { n, degree, homogeneous, field, monomials, index }
    }

    /// Homogeneous forms of degree `d`; dimension `binom(n + d - 1, d)`.
    pub fn homogeneous(n: usize, d: u32, field: Field) -> Self {
        Self::build(n, d, true, field)
    }

    /// All polynomials of degree `<= d`; dimension `binom(n + d, d)`.
    pub fn up_to(n: usize, d: u32, field: Field) -> Self {
        Self::build(n, d, false, field)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        f.n() == self.n && f.field() == self.field && f.terms().all(|(m, _)| self.index.contains_key(m))
    }

    /// Coefficient vector of `f` in the monomial basis.
    pub fn coefficients(&self, f: &Poly) -> Result<Vec<Scalar>> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch(self.field, f.field()));
        }
        if f.n() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, got: f.n() });
        }
        let mut v = vec![self.field.zero(); self.dim()];
        for (m, c) in f.terms() {
            let i = self.index_of(m).ok_or_else(|| {
                Error::AmbientMismatch(format!("monomial {:?} is outside the coefficient space", m.exps()))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn poly_from_coefficients(&self, v: &[Scalar]) -> Poly {
        assert_eq!(v.len(), self.dim(), "coefficient vector length");
        Poly::from_terms(
            self.n,
            self.field,
            self.monomials.iter().zip(v).map(|(m, c)| (m.exps().to_vec(), c.clone())),
        )
        .expect("consistent arity")
    }
}

/// Matrix of `Coeff_g`: `matrix * coeffs(f) == coeffs(apply(g, f))`.
#[derive(Clone, Debug)]
pub struct CoeffMap {
    pub space: CoeffSpace,
    pub matrix: Matrix,
}

impl CoeffMap {
    pub fn apply_to(&self, coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(coeffs)
    }

    /// `t ∘ Coeff_g` for a test polynomial `t` in the coefficient variables.
    pub fn pull_back(&self, t: &Poly) -> Result<Poly> {
        t.substitute_linear(&self.matrix)
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }
}

/// `Coeff_g` on a given coefficient space. Affine elements need a
/// non-homogeneous space since translations mix degrees.
pub fn induced_coeff_map_on(g: &GroupElement, space: &CoeffSpace) -> Result<CoeffMap> {
    if g.n() != space.n() {
        return Err(Error::ArityMismatch { expected: space.n(), got: g.n() });
    }
    if g.is_affine() && space.is_homogeneous() {
        return Err(Error::AmbientMismatch("affine maps do not preserve a graded piece".into()));
    }
    let dim = space.dim();
    let mut m = Matrix::zeros(space.field(), dim, dim);
    for (j, mono) in space.monomials().iter().enumerate() {
        let image = g.apply(&Poly::monomial(space.n(), space.field(), mono.clone(), space.field().one()))?;
        for (i, c) in space.coefficients(&image)?.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(CoeffMap { space: space.clone(), matrix: m })
}

/// `Coeff_g` on `Poly^d`: the homogeneous degree-`d` forms for linear and
/// permutation elements, degree `<= d` for affine ones.
pub fn induced_coeff_map(g: &GroupElement, n: usize, d: u32, field: Field) -> Result<CoeffMap> {
    let space = if g.is_affine() { CoeffSpace::up_to(n, d, field) } else { CoeffSpace::homogeneous(n, d, field) };
    induced_coeff_map_on(g, &space)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub measure: String,
    pub base_value: usize,
    /// Measure of `apply(g_i, f)` for each trial, in trial order.
    pub values: Vec<usize>,
    pub all_equal: bool,
}

/// Compares `measure(f)` with `measure(apply(g_i, f))` for `trials` random
/// invertible linear maps (entries in `-3..=3` over `Q`). Trial `i` uses
/// `seed::sub_seed(master_seed, i)`.
pub fn invariance_check(measure: &Measure, f: &Poly, trials: usize, master_seed: u64) -> Result<InvarianceReport> {
    invariance_check_with(measure, f, trials, master_seed, GroupKind::Linear, 3)
}

pub fn invariance_check_with(
    measure: &Measure,
    f: &Poly,
    trials: usize,
    master_seed: u64,
    kind: GroupKind,
    coeff_bound: i64,
) -> Result<InvarianceReport> {
    let base = measure.evaluate(f)?;
    let values: Result<Vec<usize>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed::trial_rng(master_seed, i as u64);
            let g = random_element(kind, f.n(), f.field(), &mut rng, coeff_bound);
            measure.evaluate(&g.apply(f)?)
        })
        .collect();
    finish_report(measure, base, values?)
}

/// Exhaustive variant over all of `GL_n(F_q)`; refused for large groups.
pub fn invariance_check_exhaustive(measure: &Measure, f: &Poly) -> Result<InvarianceReport> {
    let base = measure.evaluate(f)?;
    let group = enumerate_gl(f.n(), f.field())?;
    let values: Result<Vec<usize>> = group
        .into_par_iter()
        .map(|a| measure.evaluate(&f.substitute_linear(&a)?))
        .collect();
    finish_report(measure, base, values?)
}

fn finish_report(measure: &Measure, base: usize, values: Vec<usize>) -> Result<InvarianceReport> {
    Ok(InvarianceReport {
        measure: measure.name(),
        base_value: base,
        all_equal: values.iter().all(|&v| v == base),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    const Q: Field = Field::Rationals;

    #[test]
    fn sampler_contracts() {
        let f2 = Field::Prime(2);
        let mut rng = rng_from_seed(5);
        for _ in 0..10 {
            assert_eq!(random_invertible(1, f2, &mut rng, 1), GroupElement::Linear(Matrix::identity(f2, 1)));
        }
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..400 {
            let GroupElement::Linear(m) = random_invertible(2, f2, &mut rng, 1) else { unreachable!() };
            assert!(!m.determinant().unwrap().is_zero());
            seen.insert(format!("{:?}", m.to_rows()));
        }
        assert_eq!(seen.len(), 6);
        for s in 0..20 {
            let GroupElement::Linear(m) = random_invertible(3, Q, &mut rng_from_seed(s), 3) else { unreachable!() };
            assert!(!m.determinant().unwrap().is_zero());
        }
    }

    #[test]
    fn apply_examples() {
        let f = Poly::parse(2, Q, "x1 + 2*x2").unwrap();
        let swap = GroupElement::permutation(vec![1, 0]).unwrap();
        assert_eq!(swap.apply(&f).unwrap(), Poly::parse(2, Q, "x2 + 2*x1").unwrap());
        assert_eq!(GroupElement::identity(2).apply(&f).unwrap(), f);
        let xy = Poly::parse(2, Q, "x1*x2").unwrap();
        let lin = GroupElement::linear(Matrix::from_i64(Q, &[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(lin.apply(&xy).unwrap(), xy);
        assert!(GroupElement::permutation(vec![0, 0]).is_err());
        assert!(GroupElement::linear(Matrix::from_i64(Q, &[&[1, 1], &[1, 1]])).is_err());
        assert!(matches!(swap.apply(&Poly::one(3, Q)), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn permutation_matches_its_matrix() {
        let f = Poly::parse(3, Q, "x1^2*x2 + 3*x3 - x2*x3").unwrap();
        let p = GroupElement::permutation(vec![2, 0, 1]).unwrap();
        let m = GroupElement::Linear(p.matrix(Q));
        assert_eq!(p.apply(&f).unwrap(), m.apply(&f).unwrap());
    }

    #[test]
    fn composition_law() {
        let f = Poly::parse(2, Q, "x1^2*x2 - x2 + 4").unwrap();
        let g = GroupElement::affine(Matrix::from_i64(Q, &[&[1, 2], &[0, 1]]), vec![Q.one(), Q.from_i64(-1)]).unwrap();
        let h = GroupElement::linear(Matrix::from_i64(Q, &[&[2, 1], &[1, 1]])).unwrap();
        let gh = GroupElement::composite(&g, &h, Q).unwrap();
        assert_eq!(g.apply(&h.apply(&f).unwrap()).unwrap(), gh.apply(&f).unwrap());
        let p1 = GroupElement::permutation(vec![1, 2, 0]).unwrap();
        let p2 = GroupElement::permutation(vec![0, 2, 1]).unwrap();
        let f3 = Poly::parse(3, Q, "x1 + 2*x2^2 + 3*x3^3").unwrap();
        let p12 = GroupElement::composite(&p1, &p2, Q).unwrap();
        assert_eq!(p1.apply(&p2.apply(&f3).unwrap()).unwrap(), p12.apply(&f3).unwrap());
    }

    #[test]
    fn induced_map_identity_and_linear_rows() {
        let id = induced_coeff_map(&GroupElement::identity(3), 3, 2, Q).unwrap();
        assert_eq!(id.matrix, Matrix::identity(Q, 6));
        // g = [[α, β], [γ, δ]] = [[2, 3], [5, 7]] on Poly^1: x -> 2x + 3y
        let g = GroupElement::linear(Matrix::from_i64(Q, &[&[2, 3], &[5, 7]])).unwrap();
        let cm = induced_coeff_map(&g, 2, 1, Q).unwrap();
        let sp = &cm.space;
        let x = sp.index_of(&Monomial::var(2, 0)).unwrap();
        let y = sp.index_of(&Monomial::var(2, 1)).unwrap();
        assert_eq!(cm.matrix.get(x, x), &Q.from_i64(2));
        assert_eq!(cm.matrix.get(y, x), &Q.from_i64(3));
        assert_eq!(cm.matrix.get(x, y), &Q.from_i64(5));
        assert_eq!(cm.matrix.get(y, y), &Q.from_i64(7));
    }

    #[test]
    fn induced_map_acts_on_coefficients() {
        let f = Poly::parse(2, Q, "3*x1^2 - x1*x2 + 5*x2^2").unwrap();
        let g = GroupElement::linear(Matrix::from_i64(Q, &[&[1, -2], &[3, 1]])).unwrap();
        let cm = induced_coeff_map(&g, 2, 2, Q).unwrap();
        let sp = &cm.space;
        let moved = cm.apply_to(&sp.coefficients(&f).unwrap()).unwrap();
        assert_eq!(sp.poly_from_coefficients(&moved), g.apply(&f).unwrap());
        assert!(cm.is_invertible());
    }

    #[test]
    fn affine_requires_full_space() {
        let g = GroupElement::affine(Matrix::identity(Q, 1), vec![Q.one()]).unwrap();
        assert!(induced_coeff_map_on(&g, &CoeffSpace::homogeneous(1, 2, Q)).is_err());
        let cm = induced_coeff_map(&g, 1, 2, Q).unwrap();
        assert_eq!(cm.space.dim(), 3);
        assert!(cm.is_invertible());
    }

    #[test]
    fn permutations_and_group_orders() {
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(3, 2), 168);
        assert_eq!(enumerate_gl(2, Field::Prime(2)).unwrap().len(), 6);
        assert_eq!(enumerate_gl(2, Field::Prime(3)).unwrap().len(), 48);
        assert!(matches!(enumerate_gl(3, Field::Prime(3)), Err(Error::Infeasible(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = GroupElement::affine(Matrix::from_i64(Q, &[&[1, 2], &[0, 1]]), vec![Q.parse_scalar("1/2").unwrap(), Q.zero()]).unwrap();
        let j = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(j, r#"{"kind":"affine","matrix":[["1","2"],["0","1"]],"b":["1/2","0"]}"#);
        let back = GroupElement::from_json(&serde_json::from_str(&j).unwrap(), Q).unwrap();
        assert_eq!(back, g);
        let p = GroupElement::permutation(vec![1, 0]).unwrap();
        assert_eq!(serde_json::to_string(&p.to_json()).unwrap(), r#"{"kind":"perm","perm":[1,0]}"#);
    }
}
