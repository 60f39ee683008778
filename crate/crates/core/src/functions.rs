//! Generators for the hard functions: elementary symmetric polynomials,
//! determinant, permanent, the `F_2`-multilinear MOD_3 function and seeded
//! dense random forms.
//!
//! Determinant and permanent variables are flattened row-major: `x_{ij}` is
//! variable index `i * n + j`, so `x11, x12, .., xnn`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::f2lab::TruthTable;
use crate::field::{Field, Scalar};
use crate::group::all_permutations;
use crate::poly::{monomials_of_degree, Monomial, Poly};
use crate::seed;

/// Largest `n` for which `det_n` / `perm_n` (with `n!` terms) are expanded.
pub const DEFAULT_DET_CAP: usize = 6;

/// `e_{d,n}`: sum of all multilinear monomials of degree `d` in `n` variables.
pub fn elementary_symmetric(d: usize, n: usize, field: Field) -> Result<Poly> {
    if d == 0 || d > n {
        return Err(Error::InvalidParameter(format!("e_{{d,n}} needs 1 <= d <= n, got d={d}, n={n}")));
    }
    let terms = (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == d)
        .map(|m| (Monomial::from_mask(n, m).exps().to_vec(), field.one()));
    Poly::from_terms(n, field, terms)
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn permutation_sum(n: usize, field: Field, signed: bool, cap: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix size must be positive".into()));
    }
    if n > cap {
        return Err(Error::Infeasible(format!("n = {n} exceeds the expansion cap {cap}")));
    }
    let terms = all_permutations(n).into_iter().map(|p| {
        let mut e = vec![0u32; n * n];
        for (i, &j) in p.iter().enumerate() {
            e[i * n + j] = 1;
        }
        let c = if signed { permutation_sign(&p) } else { 1 };
        (e, field.from_i64(c))
    });
    Poly::from_terms(n * n, field, terms)
}

/// `det_n = sum_π sgn(π) prod_i x_{i π(i)}`.
pub fn determinant_poly(n: usize, field: Field) -> Result<Poly> {
    permutation_sum(n, field, true, DEFAULT_DET_CAP)
}

/// `perm_n = sum_π prod_i x_{i π(i)}`.
pub fn permanent_poly(n: usize, field: Field) -> Result<Poly> {
    permutation_sum(n, field, false, DEFAULT_DET_CAP)
}

pub fn determinant_poly_with_cap(n: usize, field: Field, cap: usize) -> Result<Poly> {
    permutation_sum(n, field, true, cap)
}

pub fn permanent_poly_with_cap(n: usize, field: Field, cap: usize) -> Result<Poly> {
    permutation_sum(n, field, false, cap)
}

/// The unique `F_2`-multilinear polynomial that is 1 exactly when the
/// Hamming weight of the input is `≡ residue (mod 3)`.
pub fn mod3_multilinear(n: usize, residue: u32) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidParameter("MOD_3 needs n >= 1".into()));
    }
    if residue > 2 {
        return Err(Error::InvalidParameter(format!("residue {residue} is not in 0..3")));
    }
    TruthTable::mod3(n, residue)?.to_multilinear()
}

/// Dense homogeneous form of degree `d`: every degree-`d` monomial gets a
/// coefficient from `{-3..3} \ {0}` over `Q`, or a uniform nonzero residue.
pub fn random_dense(n: usize, d: u32, seed: u64, field: Field) -> Poly {
    let mut rng = seed::rng_from_seed(seed);
    let terms: Vec<(Vec<u32>, Scalar)> = monomials_of_degree(n, d)
        .into_iter()
        .map(|m| (m.exps().to_vec(), nonzero_coefficient(field, &mut rng)))
        .collect();
    Poly::from_terms(n, field, terms).expect("consistent arity")
}

/// Uniform in `{-3..3} \ {0}` over `Q`, uniform in `F_p \ {0}` otherwise.
pub fn nonzero_coefficient<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rationals => {
            let v = rng.gen_range(1..=3i64);
            field.from_i64(if rng.gen_bool(0.5) { v } else { -v })
        }
        Field::Prime(p) => field.from_u64(rng.gen_range(1..p as u64)),
    }
}

/// Named hard function: `esym:d,n`, `det:n`, `perm:n`, `mod3:n`, `rand:n,d,seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HardFunctionSpec {
    ElementarySymmetric { d: usize, n: usize },
    Determinant(usize),
    Permanent(usize),
    Mod3(usize),
    RandomDense { n: usize, d: u32, seed: u64 },
}

impl HardFunctionSpec {
    /// Expands the function. `mod3_residue` selects the MOD_3 convention;
    /// MOD_3 is always over `F_2` and rejects any other field.
    pub fn build(&self, field: Field, mod3_residue: u32) -> Result<Poly> {
        match *self {
            HardFunctionSpec::ElementarySymmetric { d, n } => elementary_symmetric(d, n, field),
            HardFunctionSpec::Determinant(n) => determinant_poly(n, field),
            HardFunctionSpec::Permanent(n) => permanent_poly(n, field),
            HardFunctionSpec::Mod3(n) => {
                if field != Field::Prime(2) {
                    return Err(Error::InvalidField(format!("MOD_3 lives over F_2, not {field}")));
                }
                mod3_multilinear(n, mod3_residue)
            }
            HardFunctionSpec::RandomDense { n, d, seed } => Ok(random_dense(n, d, seed, field)),
        }
    }

    /// Field the function defaults to when none is given.
    pub fn natural_field(&self) -> Field {
        match self {
            HardFunctionSpec::Mod3(_) => Field::Prime(2),
            _ => Field::Rationals,
        }
    }
}

impl FromStr for HardFunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad function spec {s:?}"));
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums: Vec<u64> = args
            .split(',')
            .map(|a| a.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (kind, nums.as_slice()) {
            ("esym", [d, n]) => Ok(HardFunctionSpec::ElementarySymmetric { d: *d as usize, n: *n as usize }),
            ("det", [n]) => Ok(HardFunctionSpec::Determinant(*n as usize)),
            ("perm", [n]) => Ok(HardFunctionSpec::Permanent(*n as usize)),
            ("mod3", [n]) => Ok(HardFunctionSpec::Mod3(*n as usize)),
            ("rand", [n, d, seed]) => Ok(HardFunctionSpec::RandomDense { n: *n as usize, d: *d as u32, seed: *seed }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for HardFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HardFunctionSpec::ElementarySymmetric { d, n } => write!(f, "esym:{d},{n}"),
            HardFunctionSpec::Determinant(n) => write!(f, "det:{n}"),
            HardFunctionSpec::Permanent(n) => write!(f, "perm:{n}"),
            HardFunctionSpec::Mod3(n) => write!(f, "mod3:{n}"),
            HardFunctionSpec::RandomDense { n, d, seed } => write!(f, "rand:{n},{d},{seed}"),
        }
    }
}
