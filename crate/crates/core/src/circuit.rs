//! Easy-class circuits: homogeneous depth-3 `ΣΠΣ` and depth-4 `ΣΠΣΠ` with
//! bounded bottom fan-in, their seeded samplers and expansion to polynomials.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::functions::{nonzero_coefficient, random_dense};
use crate::linalg::Matrix;
use crate::measures::dim_partials;
use crate::poly::{Poly, PolyJson};
use crate::seed;

/// Sum of `s` products of `d` homogeneous linear forms in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Depth3Circuit {
    n: usize,
    field: Field,
    products: Vec<Vec<Vec<Scalar>>>,
}

impl Depth3Circuit {
    /// Every product must have the same number `d >= 1` of linear forms, each
    /// a nonzero coefficient vector of length `n`.
    pub fn new(n: usize, field: Field, products: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let d = products.first().map_or(0, Vec::len);
        if products.is_empty() || d == 0 {
            return Err(Error::InvalidParameter("need s >= 1 products of d >= 1 forms".into()));
        }
        for p in &products {
            if p.len() != d {
                return Err(Error::InvalidParameter("products have different lengths".into()));
            }
            for form in p {
                if form.len() != n {
                    return Err(Error::ArityMismatch { expected: n, got: form.len() });
                }
                if form.iter().any(|c| c.field() != field) {
                    return Err(Error::FieldMismatch(field, form[0].field()));
                }
                if form.iter().all(Scalar::is_zero) {
                    return Err(Error::InvalidParameter("zero linear form".into()));
                }
            }
        }
        Ok(Depth3Circuit { n, field, products })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Top fan-in.
    pub fn s(&self) -> usize {
        self.products.len()
    }

    /// Number of linear forms per product.
    pub fn d(&self) -> usize {
        self.products[0].len()
    }

    pub fn products(&self) -> &[Vec<Vec<Scalar>>] {
        &self.products
    }

    pub fn expand(&self) -> Poly {
        let mut acc = Poly::zero(self.n, self.field);
        for p in &self.products {
            let mut prod = Poly::one(self.n, self.field);
            for form in p {
                prod = &prod * &Poly::linear_form(self.field, form);
            }
            acc = &acc + &prod;
        }
        acc
    }

    /// Sum of two circuits: the products of both, side by side.
    pub fn concat(&self, o: &Depth3Circuit) -> Result<Depth3Circuit> {
        if self.n != o.n || self.field != o.field || self.d() != o.d() {
            return Err(Error::InvalidParameter("circuits differ in n, field or d".into()));
        }
        let mut products = self.products.clone();
        products.extend(o.products.iter().cloned());
        Ok(Depth3Circuit { products, ..self.clone() })
    }

    /// The circuit computing `f(Ax)`: the form `c·x` becomes `(Aᵀc)·x`.
    pub fn transform(&self, a: &Matrix) -> Result<Depth3Circuit> {
        if a.rows() != self.n || a.cols() != self.n {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix for n = {}", a.rows(), a.cols(), self.n)));
        }
        let at = a.transpose();
        let products = self
            .products
            .iter()
            .map(|p| p.iter().map(|form| at.mul_vec(form)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Depth3Circuit::new(self.n, self.field, products)
    }

    pub fn to_json(&self) -> Depth3Json {
        Depth3Json {
            n: self.n,
            field: self.field.to_string(),
            s: self.s(),
            d: self.d(),
            products: self
                .products
                .iter()
                .map(|p| p.iter().map(|f| f.iter().map(Scalar::to_string).collect()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &Depth3Json) -> Result<Self> {
        let field: Field = j.field.parse()?;
        let products = j
            .products
            .iter()
            .map(|p| {
                p.iter()
                    .map(|f| f.iter().map(|c| field.parse_scalar(c)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let c = Depth3Circuit::new(j.n, field, products)?;
        if c.s() != j.s || c.d() != j.d {
            return Err(Error::Parse("declared s/d disagree with the products".into()));
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Depth3Json {
    pub n: usize,
    pub field: String,
    pub s: usize,
    pub d: usize,
    pub products: Vec<Vec<Vec<String>>>,
}

/// Sum of `s` products of polynomials of degree `<= t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Depth4Circuit {
    n: usize,
    field: Field,
    t: u32,
    summands: Vec<Vec<Poly>>,
}

impl Depth4Circuit {
    pub fn new(n: usize, field: Field, t: u32, summands: Vec<Vec<Poly>>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::InvalidParameter("need s >= 1 summands".into()));
        }
        for p in summands.iter().flatten() {
            if p.n() != n {
                return Err(Error::ArityMismatch { expected: n, got: p.n() });
            }
            if p.field() != field {
                return Err(Error::FieldMismatch(field, p.field()));
            }
            if p.degree() > t as i64 {
                return Err(Error::InvalidParameter(format!("bottom polynomial of degree {} > t = {t}", p.degree())));
            }
        }
        Ok(Depth4Circuit { n, field, t, summands })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn s(&self) -> usize {
        self.summands.len()
    }

    pub fn summands(&self) -> &[Vec<Poly>] {
        &self.summands
    }

    pub fn expand(&self) -> Poly {
        let mut acc = Poly::zero(self.n, self.field);
        for p in &self.summands {
            let prod = p.iter().fold(Poly::one(self.n, self.field), |a, b| &a * b);
            acc = &acc + &prod;
        }
        acc
    }

    pub fn concat(&self, o: &Depth4Circuit) -> Result<Depth4Circuit> {
        if self.n != o.n || self.field != o.field {
            return Err(Error::InvalidParameter("circuits differ in n or field".into()));
        }
        let mut summands = self.summands.clone();
        summands.extend(o.summands.iter().cloned());
        Depth4Circuit::new(self.n, self.field, self.t.max(o.t), summands)
    }

    pub fn to_json(&self) -> Depth4Json {
        Depth4Json {
            n: self.n,
            field: self.field.to_string(),
            t: self.t,
            summands: self.summands.iter().map(|p| p.iter().map(Poly::to_json).collect()).collect(),
        }
    }

    pub fn from_json(j: &Depth4Json) -> Result<Self> {
        let field: Field = j.field.parse()?;
        let summands = j
            .summands
            .iter()
            .map(|p| p.iter().map(Poly::from_json).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Depth4Circuit::new(j.n, field, j.t, summands)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Depth4Json {
    pub n: usize,
    pub field: String,
    pub t: u32,
    pub summands: Vec<Vec<PolyJson>>,
}

/// Depth-3 circuit whose every coefficient is drawn by [`nonzero_coefficient`].
pub fn sample_depth3<R: Rng + ?Sized>(n: usize, d: usize, s: usize, field: Field, rng: &mut R) -> Result<Depth3Circuit> {
    if n == 0 || d == 0 || s == 0 {
        return Err(Error::InvalidParameter("n, d, s must be positive".into()));
    }
    let products = (0..s)
        .map(|_| (0..d).map(|_| (0..n).map(|_| nonzero_coefficient(field, rng)).collect()).collect())
        .collect();
    Depth3Circuit::new(n, field, products)
}

/// Depth-4 circuit of degree `deg`: each summand multiplies `deg / t` dense
/// homogeneous forms of degree `t`, and one of degree `deg % t` when nonzero.
pub fn sample_depth4<R: Rng + ?Sized>(
    n: usize,
    deg: u32,
    s: usize,
    t: u32,
    field: Field,
    rng: &mut R,
) -> Result<Depth4Circuit> {
    if n == 0 || deg == 0 || s == 0 || t == 0 {
        return Err(Error::InvalidParameter("n, deg, s, t must be positive".into()));
    }
    if t > deg {
        return Err(Error::InvalidParameter(format!("t = {t} exceeds deg = {deg}")));
    }
    let mut degrees = vec![t; (deg / t) as usize];
    if !deg.is_multiple_of(t) {
        degrees.push(deg % t);
    }
    let summands = (0..s)
        .map(|_| degrees.iter().map(|&e| random_dense(n, e, rng.gen(), field)).collect())
        .collect();
    Depth4Circuit::new(n, field, t, summands)
}

/// Either circuit shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Circuit {
    Depth3(Depth3Circuit),
    Depth4(Depth4Circuit),
}

impl Circuit {
    pub fn expand(&self) -> Poly {
        match self {
            Circuit::Depth3(c) => c.expand(),
            Circuit::Depth4(c) => c.expand(),
        }
    }
}

/// Easy-class sampler: `depth3:n,d,s` or `depth4:n,deg,s,t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EasyClass {
    Depth3 { n: usize, d: usize, s: usize },
    Depth4 { n: usize, deg: u32, s: usize, t: u32 },
}

impl EasyClass {
    pub fn n(&self) -> usize {
        match *self {
            EasyClass::Depth3 { n, .. } | EasyClass::Depth4 { n, .. } => n,
        }
    }

    /// Degree of the computed polynomials.
    pub fn degree(&self) -> u32 {
        match *self {
            EasyClass::Depth3 { d, .. } => d as u32,
            EasyClass::Depth4 { deg, .. } => deg,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, field: Field, rng: &mut R) -> Result<Circuit> {
        Ok(match *self {
            EasyClass::Depth3 { n, d, s } => Circuit::Depth3(sample_depth3(n, d, s, field, rng)?),
            EasyClass::Depth4 { n, deg, s, t } => Circuit::Depth4(sample_depth4(n, deg, s, t, field, rng)?),
        })
    }

    /// Trial `i` is sampled from `seed::trial_rng(master_seed, i)`.
    pub fn sample_batch(&self, field: Field, master_seed: u64, trials: usize) -> Result<Vec<Circuit>> {
        (0..trials)
            .into_par_iter()
            .map(|i| self.sample(field, &mut seed::trial_rng(master_seed, i as u64)))
            .collect()
    }
}

impl FromStr for EasyClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad easy-class spec {s:?}"));
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let v: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (kind, v.as_slice()) {
            ("depth3", &[n, d, s]) => Ok(EasyClass::Depth3 { n, d, s }),
            ("depth4", &[n, deg, s, t]) => Ok(EasyClass::Depth4 { n, deg: deg as u32, s, t: t as u32 }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for EasyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EasyClass::Depth3 { n, d, s } => write!(f, "depth3:{n},{d},{s}"),
            EasyClass::Depth4 { n, deg, s, t } => write!(f, "depth4:{n},{deg},{s},{t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub measure: usize,
    pub bound: u64,
    pub ok: bool,
}

/// `dim ∂(expand(c)) <= s·2^d`.
pub fn verify_nw_bound(c: &Depth3Circuit) -> BoundCheck {
    let measure = dim_partials(&c.expand());
    let bound = (c.s() as u64) << c.d();
    BoundCheck { measure, bound, ok: measure as u64 <= bound }
}
