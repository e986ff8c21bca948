//! Exact scalars: rationals with a machine-word fast path, and residues modulo a prime.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// The prime field `F_p`. Primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(Rational::from_integer(n)),
            Field::Prime(p) => Scalar::Fp {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d.inv().ok_or_else(|| Error::InvalidScalar(format!("{num}/{den}")))?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// The image of a natural number, e.g. a group order.
    pub fn from_usize(&self, n: usize) -> Scalar {
        self.from_i64(n as i64)
    }

    /// Parses `"n"`, `"-n"` or `"n/d"` with arbitrary-size integers.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(text.to_string());
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match *self {
            Field::Rationals => Ok(Scalar::Q(Rational::from_big(BigRational::new(num, den)))),
            Field::Prime(p) => {
                let p_big = BigInt::from(p);
                let n = num.mod_floor(&p_big).to_u64().unwrap();
                let d = den.mod_floor(&p_big).to_u64().unwrap();
                let d = Scalar::Fp { value: d, modulus: p };
                let inv = d.inv().ok_or_else(bad)?;
                Ok(&Scalar::Fp { value: n, modulus: p } * &inv)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A rational number in lowest terms with positive denominator.
///
/// Values that fit in a pair of `i64` are kept inline; everything else falls
/// back to a `BigRational`. The representation is canonical, so derived
/// equality and hashing are value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small { num: i64, den: i64 },
    Big(BigRational),
}

impl Rational {
    pub fn from_integer(n: i64) -> Rational {
        Rational::from_i128(n as i128, 1)
    }

    pub fn from_big(r: BigRational) -> Rational {
        let (n, d) = (r.numer(), r.denom());
        match (n.to_i64(), d.to_i64()) {
            // i64::MIN is excluded so negation can never overflow
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rational::Small { num: n, den: d },
            _ => Rational::Big(r),
        }
    }

    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Rational::Small { num: n, den: d },
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Rational::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small { num: 0, .. })
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small { num, .. } => BigInt::from(*num),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small { den, .. } => BigInt::from(*den),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    fn add(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                if b == d {
                    return Rational::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d + c * b, b * d)
            }
            _ => Rational::from_big(self.to_big() + other.to_big()),
        }
    }

    fn mul(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                if *a == 0 || *c == 0 {
                    return Rational::from_integer(0);
                }
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small { num, den } => Rational::Small { num: -num, den: *den },
            Rational::Big(b) => Rational::from_big(-b.clone()),
        }
    }

    fn inv(&self) -> Option<Rational> {
        match self {
            Rational::Small { num: 0, .. } => None,
            Rational::Small { num, den } => Some(Rational::from_i128(*den as i128, *num as i128)),
            Rational::Big(b) => Some(Rational::from_big(b.recip())),
        }
    }

    fn signum(&self) -> Ordering {
        match self {
            Rational::Small { num, .. } => num.cmp(&0),
            Rational::Big(b) => {
                if b.is_positive() {
                    Ordering::Greater
                } else if b.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small { num, den: 1 } => write!(f, "{num}"),
            Rational::Small { num, den } => write!(f, "{num}/{den}"),
            Rational::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    /// Canonical residue in `[0, modulus)`.
    Fp {
        value: u64,
        modulus: u64,
    },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => matches!(r, Rational::Small { num: 1, den: 1 }),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => r.inv().map(Scalar::Q),
            Scalar::Fp { value, modulus } => {
                if *value == 0 {
                    return None;
                }
                Some(Scalar::Fp {
                    value: pow_mod(*value, modulus - 2, *modulus),
                    modulus: *modulus,
                })
            }
        }
    }

    /// Sign of a rational; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.signum() == Ordering::Less,
            Scalar::Fp { .. } => false,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

fn field_mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) if p == q => Scalar::Fp {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => field_mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) if p == q => Scalar::Fp {
                value: a * b % p,
                modulus: *p,
            },
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
