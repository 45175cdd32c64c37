//! Coefficient types.
//!
//! Everything above this module is generic over [`Coefficient`] (ring
//! operations) or [`Field`] (exact division). The workhorse is [`Rational`],
//! an exact rational that stays on machine integers until a value no longer
//! fits and then spills to `BigRational`. [`Zp`] is the prime field
//! `Z/(2^31 - 1)`, used for rank lower bounds.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Ring operations needed by polynomials, matrices and determinants.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + Num + Neg<Output = Self> + FromPrimitive {}

impl<T> Coefficient for T where T: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + Num + Neg<Output = Self> + FromPrimitive {}

/// An exact field. Groebner bases, ideals and spans require this.
pub trait Field: Coefficient {
    fn inv(&self) -> Self;

    /// Converts an exact rational into this field, `None` if the denominator
    /// is not invertible.
    fn from_rational(q: &Rational) -> Option<Self>;

    /// Image in `Zp`, `None` when the denominator vanishes modulo the prime.
    fn to_zp(&self) -> Option<Zp>;
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

/// Exact rational number with an inline fast path.
///
/// Canonical form: `Small(n, d)` with `d > 0`, `gcd(n, d) = 1` and
/// `n != i64::MIN`; `Big` is used only for values that do not fit.
#[derive(Clone)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

impl Rational {
    pub fn from_integer(n: i64) -> Self {
        if n == i64::MIN {
            Rational::Big(Box::new(BigRational::from_integer(BigInt::from(n))))
        } else {
            Rational::Small(n, 1)
        }
    }

    /// `n / d`, panicking on a zero denominator.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rational::Small(n as i64, d as i64)
        } else {
            Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    pub fn from_big(q: BigRational) -> Self {
        if let (Some(n), Some(d)) = (q.numer().to_i64(), q.denom().to_i64()) {
            if n != i64::MIN {
                return Rational::Small(n, d);
            }
        }
        Rational::Big(Box::new(q))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            Rational::Small(n, d) => {
                assert!(*n != 0, "division by zero");
                if *n < 0 {
                    Rational::Small(-*d, -*n)
                } else {
                    Rational::Small(*d, *n)
                }
            }
            Rational::Big(b) => Rational::from_big(b.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_ref(&self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if b == d {
                    Self::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                    Self::from_i128(n, *b as i128 * *d as i128)
                }
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }

    fn mul_ref(&self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Rational::Small(0, 1);
                }
                let g1 = gcd_i64(*a, *d);
                let g2 = gcd_i64(*c, *b);
                let n = (*a / g1) as i128 * (*c / g2) as i128;
                let den = (*b / g2) as i128 * (*d / g1) as i128;
                if n > i64::MIN as i128 && n <= i64::MAX as i128 && den <= i64::MAX as i128 {
                    Rational::Small(n as i64, den as i64)
                } else {
                    Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(den))))
                }
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(x), Rational::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rational::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal `{}`", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = match d {
            Some(d) => d.parse().map_err(|_| err())?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::Small(1, 1)
    }
    fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::Small(-n, d),
            Rational::Big(b) => Rational::from_big(-*b),
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -(self.clone())
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $body:expr) => {
        impl $Trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                let f: fn(&Rational, &Rational) -> Rational = $body;
                f(&self, &rhs)
            }
        }
        impl<'a> $Trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                let f: fn(&Rational, &Rational) -> Rational = $body;
                f(&self, rhs)
            }
        }
        impl<'a> $Trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                let f: fn(&Rational, &Rational) -> Rational = $body;
                f(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a.mul_ref(&b.recip()));
forward_binop!(Rem, rem, |a, b| {
    let q = (a.to_big() / b.to_big()).trunc();
    Rational::from_big(a.to_big() - q * b.to_big())
});

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = self.add_ref(&-rhs);
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = self.mul_ref(rhs);
    }
}

impl Num for Rational {
    type FromStrRadixErr = ParseRationalError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix == 10 {
            s.parse()
        } else {
            BigRational::from_str_radix(s, radix).map(Rational::from_big).map_err(|_| ParseRationalError(s.to_string()))
        }
    }
}

impl FromPrimitive for Rational {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Rational::from_integer(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Rational::from_big(BigRational::from_integer(BigInt::from(n))))
    }
    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational::from_big)
    }
}

impl ToPrimitive for Rational {
    fn to_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(n, 1) => Some(*n),
            Rational::Small(..) => None,
            Rational::Big(b) => b.is_integer().then(|| b.numer().to_i64()).flatten(),
        }
    }
    fn to_u64(&self) -> Option<u64> {
        self.to_i64().and_then(|n| u64::try_from(n).ok())
    }
    fn to_f64(&self) -> Option<f64> {
        match self {
            Rational::Small(n, d) => Some(*n as f64 / *d as f64),
            Rational::Big(b) => b.to_f64(),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::Small(n as i64, 1)
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
    fn to_zp(&self) -> Option<Zp> {
        Zp::from_rational(self)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.to_big())
    }
    fn to_zp(&self) -> Option<Zp> {
        Zp::from_rational(&Rational::from_big(self.clone()))
    }
}

// ---------------------------------------------------------------------------
// Zp
// ---------------------------------------------------------------------------

/// The prime field with `Zp::MODULUS = 2^31 - 1` elements.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct Zp(u32);

impl Zp {
    pub const MODULUS: u32 = 2_147_483_647;

    pub fn new(v: i64) -> Self {
        Zp(v.rem_euclid(Self::MODULUS as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Zp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn from_bigint(n: &BigInt) -> Zp {
        let m = BigInt::from(Self::MODULUS);
        let r = n.mod_floor(&m);
        Zp(r.to_u32().expect("reduced residue fits"))
    }
}

impl fmt::Debug for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Zp {
    type Output = Zp;
    fn add(self, rhs: Zp) -> Zp {
        let s = self.0 as u64 + rhs.0 as u64;
        Zp((s % Self::MODULUS as u64) as u32)
    }
}

impl Sub for Zp {
    type Output = Zp;
    fn sub(self, rhs: Zp) -> Zp {
        let s = self.0 as u64 + Self::MODULUS as u64 - rhs.0 as u64;
        Zp((s % Self::MODULUS as u64) as u32)
    }
}

impl Mul for Zp {
    type Output = Zp;
    fn mul(self, rhs: Zp) -> Zp {
        Zp(((self.0 as u64 * rhs.0 as u64) % Self::MODULUS as u64) as u32)
    }
}

impl Div for Zp {
    type Output = Zp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Zp) -> Zp {
        self * rhs.inv()
    }
}

impl Rem for Zp {
    type Output = Zp;
    fn rem(self, _rhs: Zp) -> Zp {
        Zp(0)
    }
}

impl Neg for Zp {
    type Output = Zp;
    fn neg(self) -> Zp {
        if self.0 == 0 {
            self
        } else {
            Zp(Self::MODULUS - self.0)
        }
    }
}

impl Zero for Zp {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Zp {
    fn one() -> Self {
        Zp(1)
    }
}

impl Num for Zp {
    type FromStrRadixErr = ParseRationalError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let n = BigInt::from_str_radix(s, radix).map_err(|_| ParseRationalError(s.to_string()))?;
        Ok(Zp::from_bigint(&n))
    }
}

impl FromPrimitive for Zp {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Zp::new(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Zp((n % Self::MODULUS as u64) as u32))
    }
}

impl Field for Zp {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "division by zero in Zp");
        self.pow(Self::MODULUS as u64 - 2)
    }

    fn from_rational(q: &Rational) -> Option<Self> {
        match q {
            Rational::Small(n, d) => {
                let d = Zp::new(*d);
                (!d.is_zero()).then(|| Zp::new(*n) / d)
            }
            Rational::Big(b) => {
                let d = Zp::from_bigint(b.denom());
                (!d.is_zero()).then(|| Zp::from_bigint(b.numer()) / d)
            }
        }
    }

    fn to_zp(&self) -> Option<Zp> {
        Some(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(q: &Rational) -> BigRational {
        q.to_big()
    }

    #[test]
    fn canonical_small_form() {
        assert_eq!(Rational::new(6, -4), Rational::Small(-3, 2));
        assert_eq!(Rational::new(0, 5), Rational::zero());
        assert_eq!("10/4".parse::<Rational>().unwrap(), Rational::new(5, 2));
        assert_eq!(Rational::new(-7, 3).to_string(), "-7/3");
    }

    #[test]
    fn overflow_spills_to_big_and_back() {
        let a = Rational::from_integer(i64::MAX);
        let b = &a * &a;
        assert!(matches!(b, Rational::Big(_)));
        let c = &b / &a;
        assert_eq!(c, a);
        assert!(matches!(c, Rational::Small(..)));
        let m = Rational::from_integer(i64::MIN);
        assert!(matches!(m, Rational::Big(_)));
        assert_eq!(-(-m.clone()), m);
    }

    #[test]
    fn zp_inverse_and_rational_image() {
        let x = Zp::new(12345);
        assert_eq!(x * x.inv(), Zp::one());
        assert_eq!(Zp::from_rational(&Rational::new(1, 2)).unwrap() * Zp::new(2), Zp::one());
        assert!(Zp::from_rational(&Rational::new(1, Zp::MODULUS as i64)).is_none());
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigrational(a in -1i64<<62..1i64<<62, b in 1i64..1i64<<40,
                                          c in -1i64<<62..1i64<<62, d in 1i64..1i64<<40) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            prop_assert_eq!(big(&(&x + &y)), big(&x) + big(&y));
            prop_assert_eq!(big(&(&x - &y)), big(&x) - big(&y));
            prop_assert_eq!(big(&(&x * &y)), big(&x) * big(&y));
            if !y.is_zero() {
                prop_assert_eq!(big(&(&x / &y)), big(&x) / big(&y));
            }
            prop_assert_eq!(x.cmp(&y), big(&x).cmp(&big(&y)));
            let s = x.to_string();
            prop_assert_eq!(s.parse::<Rational>().unwrap(), x);
        }
    }
}
