//! Exact scalars over the rationals and prime fields.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    /// Residues modulo a prime, checked at construction.
    Prime(u32),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Q, F_2 and F_3.
    pub const SUITE: [FieldSpec; 3] = [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)];

    pub fn prime(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::parse(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Integer(v),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// Parses a scalar literal: `"a"`, `"a/b"` over Q, or an integer (reduced) over F_p.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num = BigInt::from_str(num).map_err(|e| Error::parse(format!("{s:?}: {e}")))?;
                let den = BigInt::from_str(den).map_err(|e| Error::parse(format!("{s:?}: {e}")))?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::from_rational(BigRational::new(num, den)))
            }
            FieldSpec::Prime(p) => {
                let v = BigInt::from_str(s).map_err(|e| Error::parse(format!("{s:?}: {e}")))?;
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Ok(Scalar::Residue {
                    value: r.to_u32().expect("residue fits"),
                    modulus: p,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`/`q` and `F:<p>`/`f:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let rest = s
            .strip_prefix("F:")
            .or_else(|| s.strip_prefix("f:"))
            .ok_or_else(|| Error::parse(format!("unknown field {s:?}, expected Q or F:<p>")))?;
        let p: u32 = rest
            .parse()
            .map_err(|_| Error::parse(format!("bad characteristic in {s:?}")))?;
        FieldSpec::prime(p)
    }
}

/// An exact field element in canonical form. A rational is `Integer` when
/// it is an integer fitting in `i64` (the common case, with no allocation)
/// and `Rational` otherwise, reduced with positive denominator. Residues are
/// least nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Integer(i64),
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

fn big(a: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(a))
}

impl Scalar {
    /// The canonical scalar for a rational.
    pub fn from_rational(r: BigRational) -> Scalar {
        if r.is_integer() {
            if let Some(a) = r.numer().to_i64() {
                return Scalar::Integer(a);
            }
        }
        Scalar::Rational(r)
    }

    /// The value as a rational, if this is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Integer(a) => Some(big(*a)),
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Residue { .. } => None,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Integer(_) | Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Integer(a) => *a == 0,
            Scalar::Rational(_) => false,
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Integer(a) => *a == 1,
            Scalar::Rational(_) => false,
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Rational arithmetic on two rationals: `i64` when it does not
    /// overflow, `BigRational` otherwise.
    fn rational_op(
        &self,
        other: &Scalar,
        small: fn(i64, i64) -> Option<i64>,
        general: fn(BigRational, BigRational) -> BigRational,
    ) -> Option<Scalar> {
        match (self, other) {
            (Scalar::Integer(a), Scalar::Integer(b)) => {
                Some(small(*a, *b).map_or_else(|| Scalar::from_rational(general(big(*a), big(*b))), Scalar::Integer))
            }
            (Scalar::Residue { .. }, _) | (_, Scalar::Residue { .. }) => None,
            _ => Some(Scalar::from_rational(general(
                self.to_rational().expect("rational"),
                other.to_rational().expect("rational"),
            ))),
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch(self.field().to_string(), other.field().to_string())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        if let Some(r) = self.rational_op(other, i64::checked_add, |a, b| a + b) {
            return Ok(r);
        }
        match (self, other) {
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Residue {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        if let Some(r) = self.rational_op(other, i64::checked_mul, |a, b| a * b) {
            return Ok(r);
        }
        match (self, other) {
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Residue {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Integer(a) => Ok(Scalar::from_rational(big(*a).recip())),
            Scalar::Rational(a) => Ok(Scalar::from_rational(a.recip())),
            Scalar::Residue { value, modulus } => Ok(Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            }),
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.try_mul(&other.try_inv()?)
    }

    /// Multiplies by a small integer without building a second scalar.
    pub fn scale_i64(&self, k: i64) -> Scalar {
        match self {
            Scalar::Integer(a) => a
                .checked_mul(k)
                .map_or_else(|| Scalar::from_rational(big(*a) * big(k)), Scalar::Integer),
            Scalar::Rational(a) => Scalar::from_rational(a * big(k)),
            Scalar::Residue { value, modulus } => {
                let k = k.rem_euclid(*modulus as i64) as u64;
                Scalar::Residue {
                    value: ((*value as u64 * k) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
        }
    }

    /// `self += a * b`, the inner-loop workhorse.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (self, a, b) {
            (Scalar::Residue { value, modulus }, Scalar::Residue { value: x, .. }, Scalar::Residue { value: y, .. }) => {
                let p = *modulus as u64;
                *value = ((*value as u64 + (*x as u64 * *y as u64) % p) % p) as u32;
            }
            (Scalar::Integer(acc), Scalar::Integer(x), Scalar::Integer(y))
                if x.checked_mul(*y).and_then(|xy| acc.checked_add(xy)).is_some() =>
            {
                *acc += x * y;
            }
            (s, a, b) => {
                if a.is_zero() || b.is_zero() {
                    if s.field() != a.field() || a.field() != b.field() {
                        panic!("mixed fields in add_mul: {} / {} / {}", s.field(), a.field(), b.field());
                    }
                    return;
                }
                *s = &*s + &(a * b);
            }
        }
    }

    /// Exact integer value if this is an integral rational or a residue.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Integer(a) => Some(*a),
            // canonical form: never integral within i64
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Integer(a) => *a < 0,
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    let p = p as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc as u32
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Integer(a) => write!(f, "{a}"),
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident, $assign_tr:ident, $assign_m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $assign_tr<&Scalar> for Scalar {
            fn $assign_m(&mut self, rhs: &Scalar) {
                *self = (&*self).$m(rhs);
            }
        }
    };
}

binop!(Add, add, try_add, AddAssign, add_assign);
binop!(Sub, sub, try_sub, SubAssign, sub_assign);
binop!(Mul, mul, try_mul, MulAssign, mul_assign);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Integer(a) => a.checked_neg().map_or_else(|| Scalar::from_rational(-big(*a)), Scalar::Integer),
            Scalar::Rational(r) => Scalar::from_rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sum() {
        let q = FieldSpec::Rationals;
        let a = q.parse_scalar("1/2").unwrap();
        let b = q.parse_scalar("1/3").unwrap();
        assert_eq!((&a + &b).to_string(), "5/6");
    }

    #[test]
    fn inverse_mod_five() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.from_i64(2).try_inv().unwrap(), f5.from_i64(3));
    }

    #[test]
    fn inverse_of_zero() {
        assert!(matches!(FieldSpec::Rationals.zero().try_inv(), Err(Error::DivisionByZero)));
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(matches!(f7.zero().try_inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn field_mismatch() {
        let a = FieldSpec::Rationals.one();
        let b = FieldSpec::prime(3).unwrap().one();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(..))));
        let c = FieldSpec::prime(5).unwrap().one();
        assert!(matches!(b.try_mul(&c), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn canonical_forms() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse_scalar("4/-6").unwrap().to_string(), "-2/3");
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(f3.parse_scalar("-1").unwrap(), f3.from_i64(2));
        assert_eq!(f3.from_i64(-7).to_string(), "2");
    }

    #[test]
    fn field_specs() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("F:2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert!(matches!("F:4".parse::<FieldSpec>(), Err(Error::Parse(_))));
        assert!(matches!("F:1".parse::<FieldSpec>(), Err(Error::Parse(_))));
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::prime(13).unwrap().to_string(), "F:13");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let q = FieldSpec::Rationals;
        let m = q.from_i64(i64::MAX);
        let big_sum = &m + &q.one();
        assert!(matches!(big_sum, Scalar::Rational(_)));
        assert_eq!(big_sum.to_string(), "9223372036854775808");
        assert_eq!(&big_sum - &q.one(), m);
        assert_eq!(-q.from_i64(i64::MIN), &q.from_i64(i64::MAX) + &q.one());
        let sq = &m * &m;
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
        let mut acc = q.from_i64(i64::MAX);
        acc.add_mul(&q.from_i64(2), &q.from_i64(3));
        assert_eq!(acc.to_string(), "9223372036854775813");
        assert_eq!(q.parse_scalar("6/3").unwrap(), q.from_i64(2));
        assert_eq!(q.parse_scalar("1/2").unwrap().scale_i64(2), q.one());
        assert_eq!(q.from_i64(-1).try_inv().unwrap(), q.from_i64(-1));
    }

    #[test]
    fn add_mul_accumulates() {
        let f = FieldSpec::prime(7).unwrap();
        let mut acc = f.from_i64(5);
        acc.add_mul(&f.from_i64(3), &f.from_i64(4));
        assert_eq!(acc, f.from_i64(3));
        let q = FieldSpec::Rationals;
        let mut acc = q.from_i64(1);
        acc.add_mul(&q.parse_scalar("1/2").unwrap(), &q.from_i64(3));
        assert_eq!(acc.to_string(), "5/2");
    }
}
