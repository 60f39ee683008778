//! Coefficient fields: the rationals and prime fields `F_p` with `p < 2^31`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which field a value or polynomial lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// Checked constructor for `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        if !(2..=(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Modular(Fp { value: 0, modulus: p }),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular(Fp {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            }),
        }
    }

    pub fn from_u64(self, v: u64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular(Fp {
                value: (v % p as u64) as u32,
                modulus: p,
            }),
        }
    }

    /// Maps an exact rational into this field. Fails over `F_p` when `p`
    /// divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let num = reduce_bigint(q.numer(), p);
                let den = reduce_bigint(q.denom(), p);
                if den == 0 {
                    return Err(Error::Parse(format!("denominator of {q} vanishes mod {p}")));
                }
                Ok(Scalar::Modular(Fp { value: num, modulus: p }.mul(Fp { value: den, modulus: p }.inv())))
            }
        }
    }

    /// Parses `"3"`, `"-7/2"` or `"0.25"` into a field element.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        self.from_rational(&parse_rational(s)?)
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(p as u64),
        }
    }

    /// All field elements in the order `0, 1, .., p-1`. Panics over the rationals.
    pub fn elements(self) -> Vec<Scalar> {
        let p = self.order().expect("the rationals are not enumerable");
        (0..p).map(|v| self.from_u64(v)).collect()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = t.strip_prefix("Fp:").or_else(|| t.strip_prefix("F")) {
            let p: u32 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad field descriptor {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::Parse(format!("bad field descriptor {s:?}")))
    }
}

fn reduce_bigint(v: &BigInt, p: u32) -> u32 {
    let m = v.mod_floor(&BigInt::from(p));
    m.to_u32().expect("residue fits in u32")
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad scalar {s:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, d);
        return Ok(if neg { -q } else { q });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Element of `F_p`, stored as the canonical residue together with `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub value: u32,
    pub modulus: u32,
}

impl Fp {
    fn add(self, o: Fp) -> Fp {
        let v = (self.value as u64 + o.value as u64) % self.modulus as u64;
        Fp { value: v as u32, ..self }
    }

    fn sub(self, o: Fp) -> Fp {
        let p = self.modulus as u64;
        let v = (self.value as u64 + p - o.value as u64) % p;
        Fp { value: v as u32, ..self }
    }

    fn mul(self, o: Fp) -> Fp {
        let v = (self.value as u64 * o.value as u64) % self.modulus as u64;
        Fp { value: v as u32, ..self }
    }

    fn neg(self) -> Fp {
        Fp { value: 0, ..self }.sub(self)
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp { value: 1 % self.modulus, ..self };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    fn inv(self) -> Fp {
        assert!(self.value != 0, "inverse of zero in F_{}", self.modulus);
        self.pow(self.modulus as u64 - 2)
    }
}

/// A field element tagged with its field.
///
/// Binary operations on elements of different fields panic; callers check
/// field agreement at the polynomial or matrix level before mixing values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular(Fp),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular(x) => Field::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular(x) => x.value == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular(a), Scalar::Modular(b)) if a.modulus == b.modulus => Scalar::Modular(a.add(*b)),
            _ => panic!("field mismatch: {} vs {}", self.field(), o.field()),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular(a), Scalar::Modular(b)) if a.modulus == b.modulus => Scalar::Modular(a.sub(*b)),
            _ => panic!("field mismatch: {} vs {}", self.field(), o.field()),
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular(a), Scalar::Modular(b)) if a.modulus == b.modulus => Scalar::Modular(a.mul(*b)),
            _ => panic!("field mismatch: {} vs {}", self.field(), o.field()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular(a) => Scalar::Modular(a.neg()),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rational(a.recip())
            }
            Scalar::Modular(a) => Scalar::Modular(a.inv()),
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(num_traits::pow(a.clone(), e as usize)),
            Scalar::Modular(a) => Scalar::Modular(a.pow(e as u64)),
        }
    }

    /// Multiplies by a small non-negative integer (falling-factorial weights
    /// of derivatives).
    pub fn scale_u64(&self, k: u64) -> Scalar {
        self.mul(&self.field().from_u64(k))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular(_) => None,
        }
    }

    /// Canonical residue in `0..p` for modular elements.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Modular(x) => Some(x.value),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular(x) => write!(f, "{}", x.value),
        }
    }
}
