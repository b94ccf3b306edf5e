//! Exact scalars over ℚ or a prime field 𝔽ₚ.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p < 2 || p >= (1 << 31) || !(2..).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::BadField(format!("F{p}")));
        }
        Ok(Field::Prime(p))
    }

    /// Reads the `FIELD` environment variable, defaulting to ℚ.
    pub fn from_env() -> Result<Field, Error> {
        match std::env::var("FIELD") {
            Ok(s) if !s.trim().is_empty() => s.trim().parse(),
            _ => Ok(Field::Rational),
        }
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rat::Small(Ratio::from_integer(n))),
            Field::Prime(p) => Scalar::F(n.rem_euclid(p as i64) as u64, p),
        }
    }

    /// `n / d` in this field.
    pub fn frac(self, n: i64, d: i64) -> Result<Scalar, Error> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        self.int(n).checked_div(&self.int(d))
    }

    /// Parses an integer or `p/q` literal.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar, Error> {
        let s = s.trim();
        let bad = || Error::Parse { line: 0, col: 0, msg: format!("bad scalar `{s}`") };
        let (n, d) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Q(Rat::from_big(BigRational::new(n, d)))),
            Field::Prime(p) => {
                let pm = BigInt::from(p);
                let n = n.mod_floor(&pm).to_u64().unwrap();
                let d = d.mod_floor(&pm).to_u64().unwrap();
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::F(n * inv_mod(d, p) % p, p))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Field, Error> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(Field::Rational);
        }
        match s.strip_prefix('F').or_else(|| s.strip_prefix('f')) {
            Some(p) => Field::prime(p.parse().map_err(|_| Error::BadField(s.to_string()))?),
            None => Err(Error::BadField(s.to_string())),
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i128) as u64
}

/// A rational number stored as an `i64` ratio while it fits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rat {
    fn from_big(b: BigRational) -> Rat {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rat::Small(Ratio::new_raw(n, d)),
            _ => Rat::Big(b),
        }
    }

    fn big(&self) -> BigRational {
        match self {
            Rat::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rat::Big(b) => b.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_zero(),
            Rat::Big(b) => b.is_zero(),
        }
    }

    fn op(
        &self,
        o: &Rat,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, o) {
            if let Some(c) = small(a, b) {
                if *c.numer() != i64::MIN && *c.denom() != i64::MIN {
                    return Rat::Small(c);
                }
            }
        }
        Rat::from_big(big(self.big(), o.big()))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(r) => write!(f, "{r}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}

/// An exact field element. Mixing fields in one operation is a bug and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rat),
    F(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::F(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::F(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(Rat::Small(r)) => r.is_one(),
            Scalar::Q(Rat::Big(b)) => b.is_one(),
            Scalar::F(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(Rat::Small(r)) => Scalar::Q(Rat::Small(r.recip())),
            Scalar::Q(Rat::Big(b)) => Scalar::Q(Rat::from_big(b.recip())),
            Scalar::F(v, p) => Scalar::F(inv_mod(*v, *p), *p),
        })
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, Error> {
        Ok(self * &o.inv()?)
    }

    /// Integer value when the scalar is an integer (for ℚ) or its canonical representative (for 𝔽ₚ).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(Rat::Small(r)) if r.is_integer() => Some(*r.numer()),
            Scalar::Q(_) => None,
            Scalar::F(v, _) => Some(*v as i64),
        }
    }

    fn same(&self, o: &Scalar) {
        if self.field() != o.field() {
            panic!("mixed fields {} and {}", self.field(), o.field());
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::F(v, p) => {
                // symmetric representative reads better for signs
                if *v > p / 2 {
                    write!(f, "-{}", p - v)
                } else {
                    write!(f, "{v}")
                }
            }
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, o: &Rat) -> Option<Ordering> {
        Some(self.big().cmp(&o.big()))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.same(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.op(b, |x, y| x.checked_add(y), |x, y| x + y)),
            (Scalar::F(a, p), Scalar::F(b, _)) => Scalar::F((a + b) % p, *p),
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.same(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.op(b, |x, y| x.checked_sub(y), |x, y| x - y)),
            (Scalar::F(a, p), Scalar::F(b, _)) => Scalar::F((a + p - b) % p, *p),
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.same(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.op(b, |x, y| x.checked_mul(y), |x, y| x * y)),
            (Scalar::F(a, p), Scalar::F(b, _)) => Scalar::F(a * b % p, *p),
            _ => unreachable!(),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.same(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => {
                assert!(!b.is_zero(), "division by zero");
                Scalar::Q(a.op(b, |x, y| x.checked_div(y), |x, y| x / y))
            }
            (Scalar::F(..), Scalar::F(..)) => self * &o.inv().expect("division by zero"),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(Rat::Small(r)) if *r.numer() != i64::MIN => Scalar::Q(Rat::Small(-r)),
            Scalar::Q(r) => Scalar::Q(Rat::from_big(-r.big())),
            Scalar::F(v, p) => Scalar::F((p - v) % p, *p),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Scalar {
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(Rat::Small(r)) => r.is_negative(),
            Scalar::Q(Rat::Big(b)) => b.is_negative(),
            Scalar::F(..) => false,
        }
    }
}
