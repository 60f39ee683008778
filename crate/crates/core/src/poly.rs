//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic: lower total degree first, ties broken by comparing
//! exponent vectors lexicographically. Iteration over `terms()` is therefore
//! ascending in grlex, and the same order indexes matrix columns elsewhere in
//! the crate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// Exponent vector `e` of a monomial `x^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self <= o`.
    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Multilinear monomial from a bitmask over the variables (bit `i` is `x_{i+1}`).
    pub fn from_mask(n: usize, mask: u64) -> Monomial {
        Monomial((0..n).map(|i| ((mask >> i) & 1) as u32).collect())
    }

    pub fn to_mask(&self) -> Option<u64> {
        let mut m = 0u64;
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => m |= 1 << i,
                _ => return None,
            }
        }
        Some(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All monomials of total degree exactly `d` in `n` variables, ascending grlex.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort();
    out
}

/// All monomials of total degree `<= d`, ascending grlex.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// Target of a single variable in [`Poly::restrict`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Const(Scalar),
    Var(usize),
}

/// Exact multivariate polynomial over `Q` or `F_p`. The zero polynomial has
/// no terms and degree `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

fn add_term(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get().add(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl Poly {
    pub fn zero(n: usize, field: Field) -> Self {
        Poly { n, field, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, field: Field, c: Scalar) -> Self {
        Self::monomial(n, field, Monomial::one(n), c)
    }

    pub fn one(n: usize, field: Field) -> Self {
        Self::constant(n, field, field.one())
    }

    /// The variable `x_{i+1}` (indices are zero-based).
    pub fn var(n: usize, field: Field, i: usize) -> Self {
        Self::monomial(n, field, Monomial::var(n, i), field.one())
    }

    pub fn monomial(n: usize, field: Field, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.n(), n, "monomial arity");
        let mut terms = BTreeMap::new();
        add_term(&mut terms, m, c);
        Poly { n, field, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(n: usize, field: Field, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::ArityMismatch { expected: n, got: e.len() });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            add_term(&mut map, Monomial(e), c);
        }
        Ok(Poly { n, field, terms: map })
    }

    /// Linear form `sum_i coeffs[i] * x_{i+1}`.
    pub fn linear_form(field: Field, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            add_term(&mut terms, Monomial::var(n, i), c.clone());
        }
        Poly { n, field, terms }
    }

    /// Parses expressions such as `"x1^2 - 3/2*x1*x2 + 7"` with variables
    /// `x1..xn`. Only sums of products of numbers and variable powers are
    /// accepted.
    pub fn parse(n: usize, field: Field, src: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in {src:?}"));
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "0" {
            return Ok(Self::zero(n, field));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        pieces.push(&s[start..]);
        let mut out = Self::zero(n, field);
        for piece in pieces {
            let (neg, body) = match piece.as_bytes()[0] {
                b'-' => (true, &piece[1..]),
                b'+' => (false, &piece[1..]),
                _ => (false, piece),
            };
            let mut coeff = field.one();
            let mut exps = vec![0u32; n];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(bad("empty factor"));
                }
                if let Some(v) = factor.strip_prefix('x') {
                    let (idx, pow) = match v.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (v, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable"))?;
                    if idx == 0 || idx > n {
                        return Err(Error::IndexOutOfRange { index: idx, n });
                    }
                    exps[idx - 1] += pow;
                } else {
                    coeff = coeff.mul(&field.parse_scalar(factor)?);
                }
            }
            if neg {
                coeff = coeff.neg();
            }
            out.add_assign_term(Monomial(exps), coeff);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().next_back().map_or(-1, |m| m.degree() as i64)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.n))
    }

    fn add_assign_term(&mut self, m: Monomial, c: Scalar) {
        add_term(&mut self.terms, m, c);
    }

    fn check_compatible(&self, o: &Poly) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field, o.field));
        }
        if self.n != o.n {
            return Err(Error::ArityMismatch { expected: self.n, got: o.n });
        }
        Ok(())
    }

    pub fn add(&self, o: &Poly) -> Result<Poly> {
        self.check_compatible(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_assign_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Poly) -> Result<Poly> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        self.map_coeffs(Scalar::neg)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Self::zero(self.n, self.field);
        }
        self.map_coeffs(|x| x.mul(c))
    }

    fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            add_term(&mut terms, m.clone(), f(c));
        }
        Poly { n: self.n, field: self.field, terms }
    }

    pub fn mul(&self, o: &Poly) -> Result<Poly> {
        self.check_compatible(o)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                add_term(&mut terms, m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(Poly { n: self.n, field: self.field, terms })
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        let terms = self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect();
        Poly { n: self.n, field: self.field, terms }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Self::one(self.n, self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal derivative with respect to `x_{i+1}`.
    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(self.derivative(&Monomial::var(self.n, i)))
    }

    /// Mixed derivative `∂^c f`, with `c` given as an exponent vector.
    pub fn derivative(&self, c: &Monomial) -> Poly {
        assert_eq!(c.n(), self.n, "derivative operator arity");
        let mut terms = BTreeMap::new();
        for (m, coeff) in &self.terms {
            if !c.divides(m) {
                continue;
            }
            let mut weight = coeff.clone();
            let mut e = Vec::with_capacity(self.n);
            for (&a, &b) in m.0.iter().zip(&c.0) {
                // falling factorial a (a-1) ... (a-b+1)
                for t in 0..b {
                    weight = weight.scale_u64((a - t) as u64);
                }
                e.push(a - b);
            }
            add_term(&mut terms, Monomial(e), weight);
        }
        Poly { n: self.n, field: self.field, terms }
    }

    /// Substitutes `x_i <- images[i]` simultaneously. All images must share a
    /// ring (possibly with a different variable count than `self`).
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, got: images.len() });
        }
        let (out_n, out_field) = match images.first() {
            Some(p) => (p.n, p.field),
            None => (0, self.field),
        };
        for p in images {
            if p.field != self.field || out_field != self.field {
                return Err(Error::FieldMismatch(self.field, p.field));
            }
            if p.n != out_n {
                return Err(Error::ArityMismatch { expected: out_n, got: p.n });
            }
        }
        // powers[i][k] = images[i]^k, filled lazily
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|_| vec![Poly::one(out_n, self.field)]).collect();
        let mut out = Poly::zero(out_n, self.field);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(out_n, self.field, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][e as usize];
                if acc.is_zero() {
                    break;
                }
            }
            for (k, v) in acc.terms {
                out.add_assign_term(k, v);
            }
        }
        Ok(out)
    }

    /// `f(A x)`: each `x_i` becomes `sum_j A[i][j] x_j`. `A` need not be invertible.
    pub fn substitute_linear(&self, a: &Matrix) -> Result<Poly> {
        if a.rows() != self.n || a.cols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for {} variables",
                a.rows(),
                a.cols(),
                self.n
            )));
        }
        if a.field() != self.field {
            return Err(Error::FieldMismatch(self.field, a.field()));
        }
        let images: Vec<Poly> = (0..self.n).map(|i| Poly::linear_form(self.field, a.row(i))).collect();
        self.compose(&images)
    }

    /// `f(A x + b)`.
    pub fn substitute_affine(&self, a: &Matrix, b: &[Scalar]) -> Result<Poly> {
        if b.len() != self.n {
            return Err(Error::DimensionMismatch(format!("translation of length {} for {} variables", b.len(), self.n)));
        }
        if a.rows() != self.n || a.cols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for {} variables",
                a.rows(),
                a.cols(),
                self.n
            )));
        }
        if a.field() != self.field {
            return Err(Error::FieldMismatch(self.field, a.field()));
        }
        let images: Result<Vec<Poly>> = (0..self.n)
            .map(|i| {
                Poly::linear_form(self.field, a.row(i)).add(&Poly::constant(self.n, self.field, b[i].clone()))
            })
            .collect();
        self.compose(&images?)
    }

    /// Applies a partial assignment of variables to constants or to other
    /// variables of the same ring. Unassigned variables are left in place; use
    /// [`Poly::compact`] to re-index over the variables that remain, or
    /// [`Poly::with_extra_vars`] beforehand to target fresh variables.
    pub fn restrict(&self, assignment: &[(usize, Target)]) -> Result<Poly> {
        let mut slots: Vec<Option<&Target>> = vec![None; self.n];
        for (i, t) in assignment {
            if *i >= self.n {
                return Err(Error::IndexOutOfRange { index: *i, n: self.n });
            }
            match slots[*i] {
                Some(prev) if prev != t => return Err(Error::ConflictingAssignment(*i)),
                _ => slots[*i] = Some(t),
            }
        }
        let images: Result<Vec<Poly>> = slots
            .iter()
            .enumerate()
            .map(|(i, t)| match t {
                None => Ok(Poly::var(self.n, self.field, i)),
                Some(Target::Var(j)) if *j < self.n => Ok(Poly::var(self.n, self.field, *j)),
                Some(Target::Var(j)) => Err(Error::IndexOutOfRange { index: *j, n: self.n }),
                Some(Target::Const(c)) if c.field() == self.field => Ok(Poly::constant(self.n, self.field, c.clone())),
                Some(Target::Const(c)) => Err(Error::FieldMismatch(self.field, c.field())),
            })
            .collect();
        self.compose(&images?)
    }

    /// Embeds into a ring with `k` additional trailing variables.
    pub fn with_extra_vars(&self, k: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.extend(std::iter::repeat_n(0, k));
                (Monomial(e), c.clone())
            })
            .collect();
        Poly { n: self.n + k, field: self.field, terms }
    }

    /// Indices of variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    /// Drops unused variables; returns the re-indexed polynomial and, for each
    /// new variable, its original index.
    pub fn compact(&self) -> (Poly, Vec<usize>) {
        let keep = self.support_vars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone()))
            .collect();
        (Poly { n: keep.len(), field: self.field, terms }, keep)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, got: point.len() });
        }
        if let Some(p) = point.iter().find(|p| p.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, p.field()));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&x.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly { n: self.n, field: self.field, terms }
    }

    /// Function form over `F_q`: every exponent `e >= q` is folded to the
    /// representative in `1..q` that agrees on all of `F_q` (`x^q = x`).
    pub fn reduce_to_function(&self) -> Result<Poly> {
        let q = match self.field {
            Field::Prime(p) => p,
            Field::Rationals => return Err(Error::InvalidField("function form needs a finite field".into())),
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0.iter().map(|&e| if e == 0 { 0 } else { (e - 1) % (q - 1) + 1 }).collect();
            add_term(&mut terms, Monomial(e), c.clone());
        }
        Ok(Poly { n: self.n, field: self.field, terms })
    }

    /// Relabels variables: `x_i` goes to `x_{perm[i]}`.
    pub fn rename_vars(&self, perm: &[usize], out_n: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; out_n];
            for (i, &k) in m.0.iter().enumerate() {
                e[perm[i]] += k;
            }
            add_term(&mut terms, Monomial(e), c.clone());
        }
        Poly { n: out_n, field: self.field, terms }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.n,
            field: self.field.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { e: m.0.clone(), c: c.to_string() })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Poly> {
        let field: Field = j.field.parse()?;
        let terms: Result<Vec<_>> = j
            .terms
            .iter()
            .map(|t| Ok((t.e.clone(), field.parse_scalar(&t.c)?)))
            .collect();
        Poly::from_terms(j.n, field, terms?)
    }
}

impl<'a> std::ops::Add for &'a Poly {
    type Output = Poly;
    /// Panics on field or arity mismatch; use [`Poly::add`] for the checked form.
    fn add(self, o: &'a Poly) -> Poly {
        Poly::add(self, o).expect("incompatible polynomials")
    }
}

impl<'a> std::ops::Sub for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &'a Poly) -> Poly {
        Poly::sub(self, o).expect("incompatible polynomials")
    }
}

impl<'a> std::ops::Mul for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &'a Poly) -> Poly {
        Poly::mul(self, o).expect("incompatible polynomials")
    }
}

impl fmt::Display for Poly {
    /// Highest-degree terms first, variables written `x1..xn`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Serialized polynomial: `{"n": 2, "field": "Q", "terms": [{"e": [1, 1], "c": "3/2"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub n: usize,
    pub field: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn p(n: usize, s: &str) -> Poly {
        Poly::parse(n, Q, s).unwrap()
    }

    #[test]
    fn grlex_order() {
        let ms = monomials_up_to(2, 2);
        let got: Vec<Vec<u32>> = ms.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }

    #[test]
    fn addition() {
        assert!(p(1, "x1^2").add(&p(1, "-x1^2")).unwrap().is_zero());
        assert_eq!(p(2, "x1*x2").add(&p(2, "x1*x2")).unwrap(), p(2, "2*x1*x2"));
        let f2 = Field::Prime(2);
        let xy = Poly::parse(2, f2, "x1*x2").unwrap();
        assert!(xy.add(&xy).unwrap().is_zero());
        assert!(matches!(xy.add(&p(2, "x1")), Err(Error::FieldMismatch(..))));
        assert!(matches!(p(3, "x1").add(&p(2, "x1")), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn multiplication() {
        assert_eq!(p(2, "x1+x2").mul(&p(2, "x1-x2")).unwrap(), p(2, "x1^2-x2^2"));
        assert_eq!(p(2, "x1+x2").pow(2), p(2, "x1^2+2*x1*x2+x2^2"));
        let f = p(2, "3*x1^2 - x2 + 1/2");
        assert_eq!(f.mul(&Poly::one(2, Q)).unwrap(), f);
    }

    #[test]
    fn derivatives() {
        assert_eq!(p(2, "x1^2*x2").partial_derivative(0).unwrap(), p(2, "2*x1*x2"));
        // det_2 with x11 x12 x21 x22 = x1 x2 x3 x4
        assert_eq!(p(4, "x1*x4 - x2*x3").partial_derivative(0).unwrap(), p(4, "x4"));
        assert_eq!(p(3, "x1*x2+x1*x3+x2*x3").partial_derivative(0).unwrap(), p(3, "x2+x3"));
        assert!(matches!(p(2, "x1").partial_derivative(2), Err(Error::IndexOutOfRange { .. })));
        let f3 = Poly::parse(1, Field::Prime(3), "x1^3").unwrap();
        assert!(f3.partial_derivative(0).unwrap().is_zero());
    }

    #[test]
    fn linear_substitution() {
        let id = Matrix::identity(Q, 1);
        assert_eq!(p(1, "x1^2").substitute_linear(&id).unwrap(), p(1, "x1^2"));
        let a = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
        assert_eq!(p(2, "x1^2").substitute_linear(&a).unwrap(), p(2, "x1^2+2*x1*x2+x2^2"));
        assert!(matches!(p(3, "x1").substitute_linear(&a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn affine_substitution() {
        let a = Matrix::identity(Q, 1);
        let b = [Q.one()];
        assert_eq!(p(1, "x1").substitute_affine(&a, &b).unwrap(), p(1, "x1+1"));
        assert_eq!(p(1, "x1^2").substitute_affine(&a, &b).unwrap(), p(1, "x1^2+2*x1+1"));
        let f = p(2, "x1^3 - 2*x1*x2 + 5");
        let zero = [Q.zero(), Q.zero()];
        assert_eq!(f.substitute_affine(&Matrix::identity(Q, 2), &zero).unwrap(), f);
    }

    #[test]
    fn restrictions() {
        let one = Target::Const(Q.one());
        assert_eq!(p(2, "x1*x2").restrict(&[(0, one.clone())]).unwrap(), p(2, "x2"));
        let e24 = p(4, "x1*x2+x1*x3+x1*x4+x2*x3+x2*x4+x3*x4");
        let r = e24.restrict(&[(0, one.clone()), (1, one.clone())]).unwrap();
        assert_eq!(r, p(4, "1+2*x3+2*x4+x3*x4"));
        let (c, keep) = r.compact();
        assert_eq!(keep, vec![2, 3]);
        assert_eq!(c, p(2, "1+2*x1+2*x2+x1*x2"));
        assert_eq!(p(2, "x1*x2").restrict(&[(0, Target::Var(1))]).unwrap(), p(2, "x2^2"));
        assert!(matches!(
            p(2, "x1").restrict(&[(0, one), (0, Target::Var(1))]),
            Err(Error::ConflictingAssignment(0))
        ));
    }

    #[test]
    fn evaluation() {
        let det2 = p(4, "x1*x4 - x2*x3");
        let pt: Vec<Scalar> = [1, 2, 3, 4].iter().map(|&v| Q.from_i64(v)).collect();
        assert_eq!(det2.evaluate(&pt).unwrap(), Q.from_i64(-2));
        let perm2 = p(4, "x1*x4 + x2*x3");
        assert_eq!(perm2.evaluate(&pt).unwrap(), Q.from_i64(10));
        let f = p(2, "x1^2 + 7/3");
        assert_eq!(f.evaluate(&[Q.zero(), Q.zero()]).unwrap(), f.constant_term());
        assert!(matches!(f.evaluate(&[Q.zero()]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(Poly::zero(3, Q).degree(), -1);
        assert_eq!(Poly::one(3, Q).degree(), 0);
    }

    #[test]
    fn json_round_trip_and_display() {
        let f = p(2, "-3/2*x1^2*x2 + x2 - 4");
        let j = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(
            j,
            r#"{"n":2,"field":"Q","terms":[{"e":[0,0],"c":"-4"},{"e":[0,1],"c":"1"},{"e":[2,1],"c":"-3/2"}]}"#
        );
        let back = Poly::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, f);
        assert_eq!(f.to_string(), "-3/2*x1^2*x2 + x2 - 4");
    }

    #[test]
    fn function_form_folds_exponents() {
        let f = Poly::parse(2, Field::Prime(3), "x1^3*x2^4 + x1^2").unwrap();
        assert_eq!(f.reduce_to_function().unwrap(), Poly::parse(2, Field::Prime(3), "x1*x2^2 + x1^2").unwrap());
    }
}
