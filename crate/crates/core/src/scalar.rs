//! Exact field elements over ℚ and 𝔽p.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, stored inline while it fits in `i64`.
///
/// Always reduced with a positive denominator; the `Small` form is used
/// whenever both parts fit, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub fn zero() -> Rat {
        Rat::Small(0, 1)
    }

    pub fn one() -> Rat {
        Rat::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    /// Build `num/den` from 128-bit parts, reducing and demoting when possible.
    fn from_i128(num: i128, den: i128) -> Rat {
        assert!(den != 0, "zero denominator");
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::Small(a, b),
            _ => Rat::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        // BigRational::new already reduces; demote if it fits.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rat::Small(a, b),
            _ => Rat::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Rat::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rat::Small(a, _) => BigInt::from(*a),
            Rat::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rat::Small(_, b) => BigInt::from(*b),
            Rat::Big(r) => r.denom().clone(),
        }
    }

    pub fn add(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let Some(n) = x.checked_add(y) {
                    return Rat::from_i128(n, b * d);
                }
            }
        }
        Rat::from_big(self.to_big() + o.to_big())
    }

    pub fn neg(&self) -> Rat {
        match self {
            Rat::Small(a, b) if *a != i64::MIN => Rat::Small(-a, *b),
            _ => Rat::from_big(-self.to_big()),
        }
    }

    pub fn sub(&self, o: &Rat) -> Rat {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            return Rat::from_i128(a * c, b * d);
        }
        Rat::from_big(self.to_big() * o.to_big())
    }

    pub fn inv(&self) -> Rat {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Rat::Small(a, b) => Rat::from_i128(*b as i128, *a as i128),
            Rat::Big(r) => Rat::from_big(r.recip()),
        }
    }

    pub fn div(&self, o: &Rat) -> Rat {
        self.mul(&o.inv())
    }

    /// Residue mod p, or `None` when p divides the denominator.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let n = self.numer().mod_floor(&pb);
        let d = self.denom().mod_floor(&pb);
        if d.is_zero() {
            return None;
        }
        let n = n.to_u64().unwrap();
        let d = d.to_u64().unwrap();
        Some(n * inv_mod(d, p) % p)
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(a, 1) => write!(f, "{a}"),
            Rat::Small(a, b) => write!(f, "{a}/{b}"),
            Rat::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Rat::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Rat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rat> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat::from_big(BigRational::new(n, d)))
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and below 2^31 so products fit in u64.
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest modulus accepted for 𝔽p.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::Validation(format!("modulus {p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(Rat::from_int(n)),
            Field::Prime(p) => Scalar::Mod { value: n.rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn from_rat(self, r: &Rat) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rat(r.clone())),
            Field::Prime(p) => r
                .mod_p(p)
                .map(|value| Scalar::Mod { value, p })
                .ok_or_else(|| Error::Parse(format!("{r} has a denominator divisible by {p}"))),
        }
    }

    /// Parse a scalar literal: "a/b" over ℚ, a decimal integer (or reducible fraction) over 𝔽p.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let r: Rat = s.parse()?;
        self.from_rat(&r)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// Parse "Q" or "Fp:<p>" (also accepts "F<p>" and a bare prime).
    pub fn from_flag(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix("fp:"))
            .or_else(|| t.strip_prefix('F'))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown scalar field {s:?}")))?;
        Field::prime(p)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rat),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.add(b)),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod { value: (a + b) % p, p: *p }
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.neg()),
            Scalar::Mod { value, p } => Scalar::Mod { value: (p - value) % p, p: *p },
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.mul(b)),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod { value: a * b % p, p: *p }
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.inv()),
            Scalar::Mod { value, p } => {
                assert!(*value != 0, "inverse of zero");
                Scalar::Mod { value: inv_mod(*value, *p), p: *p }
            }
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    /// Reduce a rational scalar mod p; `None` if a denominator is divisible by p.
    pub fn reduce_mod(&self, p: u64) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => r.mod_p(p).map(|value| Scalar::Mod { value, p }),
            Scalar::Mod { value, p: q } if *q == p => Some(Scalar::Mod { value: *value, p }),
            Scalar::Mod { .. } => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Integer with an inline fast path, used by fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Int {
    S(i64),
    B(BigInt),
}

impl Int {
    fn norm(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::S(v),
            None => Int::B(b),
        }
    }

    fn big(&self) -> BigInt {
        match self {
            Int::S(v) => BigInt::from(*v),
            Int::B(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::S(0))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::S(v) => *v < 0,
            Int::B(b) => b.is_negative(),
        }
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::S(v) if *v != i64::MIN => Int::S(-v),
            _ => Int::norm(-self.big()),
        }
    }

    /// `a*x - b*y`.
    pub fn cross(a: &Int, x: &Int, b: &Int, y: &Int) -> Int {
        if let (Int::S(a), Int::S(x), Int::S(b), Int::S(y)) = (a, x, b, y) {
            let v = (*a as i128) * (*x as i128) - (*b as i128) * (*y as i128);
            if let Ok(s) = i64::try_from(v) {
                return Int::S(s);
            }
            return Int::B(BigInt::from(v));
        }
        Int::norm(a.big() * x.big() - b.big() * y.big())
    }

    pub fn gcd(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::S(a), Int::S(b)) => {
                Int::norm(BigInt::from(gcd_u128(a.unsigned_abs() as u128, b.unsigned_abs() as u128)))
            }
            _ => Int::norm(self.big().gcd(&o.big())),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Int::S(1) | Int::S(-1))
    }

    pub fn div_exact(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::S(a), Int::S(b)) if !(*a == i64::MIN && *b == -1) => Int::S(a / b),
            _ => Int::norm(self.big() / o.big()),
        }
    }

    pub fn to_rat_over(&self, den: &Int) -> Rat {
        match (self, den) {
            (Int::S(a), Int::S(b)) => Rat::from_i128(*a as i128, *b as i128),
            _ => Rat::from_big(BigRational::new(self.big(), den.big())),
        }
    }

    pub fn from_rat_scaled(r: &Rat, lcm: &BigInt) -> Int {
        Int::norm(r.numer() * (lcm / r.denom()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals_round_trip() {
        for s in ["0", "1", "-3/4", "22/7", "123456789012345678901234567891/2"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        let r: Rat = "4/-6".parse().unwrap();
        assert_eq!(r, Rat::Small(-2, 3));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rat::from_int(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Rat::Big(_)));
        let back = sq.div(&big);
        assert_eq!(back, Rat::from_int(i64::MAX));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        assert_eq!(a.mul(&a.inv()), f.one());
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
        assert!(f.parse("1/7").is_err());
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn field_flags() {
        assert_eq!(Field::from_flag("Q").unwrap(), Field::Rational);
        assert_eq!(Field::from_flag("Fp:5").unwrap(), Field::Prime(5));
        assert!(Field::from_flag("Fp:4").is_err());
    }
}
