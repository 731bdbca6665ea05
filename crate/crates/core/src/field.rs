//! Exact scalars: arbitrary-precision rationals and residues modulo a word-sized prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Prime field `F_p`; rejects composite moduli and `p < 2`.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(p),
        }
    }

    pub fn is_rationals(self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("fp:")
            .ok_or_else(|| Error::FieldSyntax(s.to_string()))?;
        let big: BigUint = digits
            .parse()
            .map_err(|_| Error::FieldSyntax(s.to_string()))?;
        let p = big
            .to_u64()
            .ok_or_else(|| Error::ModulusTooLarge(digits.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// Deterministic primality for 64-bit integers (Miller-Rabin with a base set
/// that is exact below 2^64).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a.wrapping_sub(b).wrapping_add(p)
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse via the extended Euclidean algorithm; `None` when `a ≡ 0`.
pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    if r1 == 0 {
        return None;
    }
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// An exact scalar. Rationals are kept in lowest terms with positive
/// denominator; residues are kept in `[0, p)`.
///
/// Arithmetic operators panic when the operands live in different fields.
/// Inputs are checked for field agreement at the public entry points
/// (ideal construction, linear systems, parsers), so a mismatch reaching an
/// operator is a bug.
///
/// The order is numeric over ℚ and by representative in `[0, p)` over `F_p`;
/// it only serves to sort sample points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, n: i64) -> Self {
        match field {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(n.into())),
            FieldSpec::Prime(p) => FieldElement::Residue {
                value: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: FieldSpec, n: &BigInt) -> Self {
        match field {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldElement::Residue {
                    value: r.to_u64().expect("reduced residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in the given field.
    pub fn from_ratio(field: FieldSpec, num: i64, den: i64) -> Result<Self> {
        let n = Self::from_i64(field, num);
        let d = Self::from_i64(field, den);
        n.div(&d)
    }

    pub fn from_rational(r: BigRational) -> Self {
        FieldElement::Rational(r)
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    /// Residue value, for the prime-field fast paths.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElement::Residue { value, .. } => Some(*value),
            FieldElement::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Residue { .. } => None,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            FieldElement::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(FieldElement::Rational(r.recip()))
                }
            }
            FieldElement::Residue { value, modulus } => inv_mod(*value, *modulus)
                .map(|v| FieldElement::Residue {
                    value: v,
                    modulus: *modulus,
                })
                .ok_or(Error::DivisionByZero),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        match self {
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: pow_mod(*value, exp, *modulus),
                modulus: *modulus,
            },
            FieldElement::Rational(_) => {
                let mut acc = Self::one(self.field());
                let mut base = self.clone();
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = &acc * &base;
                    }
                    base = &base * &base;
                    exp >>= 1;
                }
                acc
            }
        }
    }

    /// Parses a scalar literal: `-3/4`, `7` over ℚ; a decimal integer over `F_p`.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::FieldLiteral(text.to_string());
        match field {
            FieldSpec::Rationals => {
                if let Some((n, d)) = text.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    Ok(FieldElement::Rational(BigRational::new(n, d)))
                } else {
                    let n: BigInt = text.parse().map_err(|_| bad())?;
                    Ok(FieldElement::Rational(BigRational::from_integer(n)))
                }
            }
            FieldSpec::Prime(_) => {
                let n: BigInt = text.parse().map_err(|_| bad())?;
                Ok(Self::from_bigint(field, &n))
            }
        }
    }

    /// True when the value would print with a leading minus sign.
    pub(crate) fn is_negative_literal(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Residue { .. } => false,
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic between elements of different fields"
        );
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, .. },
            ) => FieldElement::Residue {
                value: add_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, .. },
            ) => FieldElement::Residue {
                value: sub_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, .. },
            ) => FieldElement::Residue {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: sub_mod(0, *value, *modulus),
                modulus: *modulus,
            },
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        -&self
    }
}

/// A primitive `k`-th root of unity: `ξ^k = 1` and `ξ^j ≠ 1` for `0 < j < k`.
///
/// Over `F_p` the residues are scanned upward from 1 and the first hit is
/// returned, so the answer is the smallest such residue.
pub fn primitive_root_of_unity(field: FieldSpec, k: u64) -> Result<FieldElement> {
    if k == 0 {
        return Err(Error::NoRootExists { field, k });
    }
    match field {
        FieldSpec::Rationals => match k {
            1 => Ok(FieldElement::one(field)),
            2 => Ok(FieldElement::from_i64(field, -1)),
            _ => Err(Error::NoRootExists { field, k }),
        },
        FieldSpec::Prime(p) => {
            if (p - 1) % k != 0 {
                return Err(Error::NoRootExists { field, k });
            }
            let prime_factors = distinct_prime_factors(k);
            for candidate in 1..p {
                if pow_mod(candidate, k, p) != 1 {
                    continue;
                }
                // order divides k; it equals k iff no k/q power is 1
                if prime_factors
                    .iter()
                    .all(|q| pow_mod(candidate, k / q, p) != 1)
                {
                    return Ok(FieldElement::Residue {
                        value: candidate,
                        modulus: p,
                    });
                }
            }
            Err(Error::NoRootExists { field, k })
        }
    }
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn field_syntax() {
        assert_eq!("QQ".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("fp:65537".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(65537));
        assert!(matches!("fp:15".parse::<FieldSpec>(), Err(Error::NotPrime(_))));
        assert!(matches!("fp:1".parse::<FieldSpec>(), Err(Error::NotPrime(_))));
        assert!(matches!(
            "fp:340282366920938463463374607431768211507".parse::<FieldSpec>(),
            Err(Error::ModulusTooLarge(_))
        ));
        assert!("Q".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            let slow = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), slow, "n = {n}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn invert_examples() {
        let q = FieldSpec::Rationals;
        let a = FieldElement::parse(q, "2/3").unwrap();
        assert_eq!(a.inv().unwrap(), FieldElement::parse(q, "3/2").unwrap());
        let ten = FieldElement::from_i64(fp(13), 10);
        assert_eq!(ten.inv().unwrap(), FieldElement::from_i64(fp(13), 4));
        assert!(matches!(FieldElement::zero(q).inv(), Err(Error::DivisionByZero)));
        assert!(matches!(FieldElement::zero(fp(13)).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn roots_of_unity_examples() {
        let r = primitive_root_of_unity(fp(13), 3).unwrap();
        assert!(r == FieldElement::from_i64(fp(13), 3) || r == FieldElement::from_i64(fp(13), 9));
        let r = primitive_root_of_unity(fp(7), 3).unwrap();
        assert!(r == FieldElement::from_i64(fp(7), 2) || r == FieldElement::from_i64(fp(7), 4));
        assert_eq!(
            primitive_root_of_unity(FieldSpec::Rationals, 2).unwrap(),
            FieldElement::from_i64(FieldSpec::Rationals, -1)
        );
        assert!(matches!(
            primitive_root_of_unity(FieldSpec::Rationals, 3),
            Err(Error::NoRootExists { .. })
        ));
        assert!(matches!(
            primitive_root_of_unity(fp(13), 5),
            Err(Error::NoRootExists { .. })
        ));
    }

    #[test]
    fn root_orders_by_exhaustion() {
        for p in [5u64, 7, 11, 13, 19, 29, 31, 37, 41, 65537] {
            let f = fp(p);
            for k in 1..=24u64 {
                if (p - 1) % k != 0 {
                    continue;
                }
                let xi = primitive_root_of_unity(f, k).unwrap();
                let hits: Vec<u64> = (1..=k).filter(|&j| xi.pow(j).is_one()).collect();
                assert_eq!(hits, vec![k], "p={p} k={k}");
            }
        }
    }

    #[test]
    fn literals() {
        let q = FieldSpec::Rationals;
        assert_eq!(FieldElement::parse(q, "-6/8").unwrap().to_string(), "-3/4");
        assert_eq!(FieldElement::parse(q, "7").unwrap().to_string(), "7");
        assert_eq!(FieldElement::parse(fp(13), "-1").unwrap().to_string(), "12");
        assert!(matches!(
            FieldElement::parse(fp(13), "1/2"),
            Err(Error::FieldLiteral(_))
        ));
        assert!(matches!(FieldElement::parse(q, "1/0"), Err(Error::DivisionByZero)));
    }
}
