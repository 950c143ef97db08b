//! Exact commutative rings used as coefficients.
//!
//! Three concrete rings are supported: the integers, the integers modulo
//! `m`, and the rationals. Everything downstream (Witt vectors, matrices,
//! characteristic series) is generic over [`Ring`] and never divides, so it
//! is valid over torsion rings as written.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn spec(&self) -> RingSpec;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// The inverse of a unit; `None` for non-units or where unsupported.
    fn unit_inverse(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// The ring of integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        self.is_unit(a).then(|| a.clone())
    }
    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("`{s}` is not an integer")))
    }
}

/// The integers modulo `m`, with representatives in `0..m`.
///
/// `m = 1` is the zero ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    modulus: u64,
}

impl IntegersMod {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument(
                "modulus 0 is the integers; use `z:0`".into(),
            ));
        }
        Ok(IntegersMod { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Ring for IntegersMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits in u64")
    }
    fn is_unit(&self, a: &u64) -> bool {
        a.gcd(&self.modulus) == 1
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        let e = BigInt::from(*a).extended_gcd(&BigInt::from(self.modulus));
        e.gcd.is_one().then(|| self.from_int(&e.x))
    }
    fn spec(&self) -> RingSpec {
        RingSpec::Mod(self.modulus)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let n: BigInt = Integers.parse(s)?;
        Ok(self.from_int(&n))
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn spec(&self) -> RingSpec {
        RingSpec::Rationals
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("`{s}` is not a rational number"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

/// Rings the randomized suites can sample from.
pub trait SampleRing: Ring {
    /// A small random element: integers in `[-9, 9]`, all residues mod
    /// `m`, rationals with numerator in `[-5, 5]` and denominator in `[1, 4]`.
    fn sample(&self, rng: &mut impl Rng) -> Self::Elem;

    /// An integer representative, when the ring is a quotient of `ℤ`.
    fn lift(&self, _a: &Self::Elem) -> Option<BigInt> {
        None
    }
}

impl SampleRing for Integers {
    fn sample(&self, rng: &mut impl Rng) -> BigInt {
        BigInt::from(rng.random_range(-9i64..=9))
    }
    fn lift(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }
}

impl SampleRing for IntegersMod {
    fn sample(&self, rng: &mut impl Rng) -> u64 {
        rng.random_range(0..self.modulus)
    }
    fn lift(&self, a: &u64) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }
}

impl SampleRing for Rationals {
    fn sample(&self, rng: &mut impl Rng) -> BigRational {
        BigRational::new(rng.random_range(-5i64..=5).into(), rng.random_range(1i64..=4).into())
    }
}

/// Runtime tag naming one of the supported rings: `z:0`, `z:m` or `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    Mod(u64),
    Rationals,
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "z:0"),
            RingSpec::Mod(m) => write!(f, "z:{m}"),
            RingSpec::Rationals => write!(f, "q"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(RingSpec::Rationals);
        }
        let m = s
            .strip_prefix("z:")
            .or_else(|| s.strip_prefix("Z:"))
            .and_then(|m| m.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown ring `{s}`")))?;
        Ok(if m == 0 { RingSpec::Integers } else { RingSpec::Mod(m) })
    }
}

impl Serialize for RingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Runs `$body` with `$r` bound to the concrete ring named by a [`RingSpec`].
#[macro_export]
macro_rules! with_ring {
    ($spec:expr, |$r:ident| $body:expr) => {
        match $spec {
            $crate::ring::RingSpec::Integers => {
                let $r = $crate::ring::Integers;
                $body
            }
            $crate::ring::RingSpec::Mod(m) => {
                let $r = $crate::ring::IntegersMod::new(m).expect("nonzero modulus");
                $body
            }
            $crate::ring::RingSpec::Rationals => {
                let $r = $crate::ring::Rationals;
                $body
            }
        }
    };
}

/// Truncated polynomials `R[t]/(t^{precision+1})`, coefficients in
/// ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedPolynomials<R: Ring> {
    base: R,
    precision: usize,
}

impl<R: Ring> TruncatedPolynomials<R> {
    pub fn new(base: R, precision: usize) -> Self {
        TruncatedPolynomials { base, precision }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// The element `c·t^e`.
    pub fn monomial(&self, c: R::Elem, e: usize) -> Vec<R::Elem> {
        let mut v = self.zero();
        if e <= self.precision {
            v[e] = c;
        }
        v
    }
}

impl<R: Ring> Ring for TruncatedPolynomials<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.precision + 1]
    }
    fn one(&self) -> Self::Elem {
        self.monomial(self.base.one(), 0)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        crate::witt::series::mul(&self.base, a, b, self.precision)
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.monomial(self.base.from_int(n), 0)
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.base.is_unit(&a[0])
    }
    fn spec(&self) -> RingSpec {
        self.base.spec()
    }
    fn format(&self, a: &Self::Elem) -> String {
        crate::witt::series::format(&self.base, a)
    }
    fn parse(&self, s: &str) -> Result<Self::Elem> {
        Err(Error::InvalidArgument(format!(
            "cannot parse truncated polynomial `{s}`"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_spec_round_trips() {
        for s in ["z:0", "z:7", "q"] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("r:3".parse::<RingSpec>().is_err());
    }

    #[test]
    fn modular_arithmetic_reduces() {
        let r = IntegersMod::new(6).unwrap();
        assert_eq!(r.neg(&2), 4);
        assert_eq!(r.mul(&4, &5), 2);
        assert_eq!(r.from_i64(-1), 5);
        assert!(r.is_unit(&5));
        assert!(!r.is_unit(&3));
        assert_eq!(IntegersMod::new(1).unwrap().one(), 0);
        assert_eq!(r.unit_inverse(&5), Some(5));
        assert_eq!(r.unit_inverse(&2), None);
        assert_eq!(IntegersMod::new(5).unwrap().unit_inverse(&3), Some(2));
    }

    #[test]
    fn pow_by_squaring_matches_repeated_product() {
        let z = Integers;
        let a = BigInt::from(-3);
        let mut acc = z.one();
        for e in 0..20u64 {
            assert_eq!(z.pow(&a, e), acc);
            acc = z.mul(&acc, &a);
        }
    }

    #[test]
    fn parse_rationals() {
        let q = Rationals;
        assert_eq!(q.parse("6/4").unwrap(), BigRational::new(3.into(), 2.into()));
        assert!(q.parse("1/0").is_err());
    }
}
