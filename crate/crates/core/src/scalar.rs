//! Exact scalars over prime fields `F_p` and the rationals.
//!
//! A [`Scalar`] always carries its [`Domain`]. Canonical form is unique: a
//! residue in `[0, p)` for prime fields, a reduced fraction with positive
//! denominator for the rationals. Equality is therefore representational.
//!
//! The operator impls (`+`, `-`, `*`, unary `-`) panic on a domain mismatch;
//! use [`Scalar::arith`] or the `checked_*` methods when operands come from
//! untrusted places.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Default upper bound on accepted primes; keeps hyperplane enumeration tractable.
pub const DEFAULT_PRIME_CAP: u32 = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Prime(u32),
    Rational,
}

impl Domain {
    /// Validated prime-field constructor.
    pub fn prime(p: u32) -> Result<Domain> {
        if is_prime(p) {
            Ok(Domain::Prime(p))
        } else {
            Err(Error::InvalidDomain(format!("{p} is not prime")))
        }
    }

    pub fn validate(self) -> Result<Domain> {
        match self {
            Domain::Prime(p) => Domain::prime(p),
            Domain::Rational => Ok(self),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Domain::Prime(_))
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u32> {
        match self {
            Domain::Prime(p) => Some(p),
            Domain::Rational => None,
        }
    }

    /// All elements of a finite domain in canonical order.
    pub fn elements(self) -> Result<Vec<Scalar>> {
        match self {
            Domain::Prime(p) => Ok((0..p).map(|r| Scalar(Repr::Residue { p, r })).collect()),
            Domain::Rational => Err(Error::InfiniteDomain),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Prime(p) => write!(f, "F{p}"),
            Domain::Rational => write!(f, "Q"),
        }
    }
}

/// Parses `F<p>` or `Q`.
impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Domain> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(Domain::Rational);
        }
        let digits = s
            .strip_prefix('F')
            .or_else(|| s.strip_prefix('f'))
            .ok_or_else(|| Error::InvalidDomain(format!("unrecognised field {s:?}")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::InvalidDomain(format!("unrecognised field {s:?}")))?;
        Domain::prime(p)
    }
}

pub fn is_prime(p: u32) -> bool {
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

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Residue { p: u32, r: u32 },
    Fraction(BigRational),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero(domain: Domain) -> Scalar {
        match domain {
            Domain::Prime(p) => Scalar(Repr::Residue { p, r: 0 }),
            Domain::Rational => Scalar(Repr::Fraction(BigRational::zero())),
        }
    }

    pub fn one(domain: Domain) -> Scalar {
        Scalar::from_i64(domain, 1)
    }

    /// The image of an integer in `domain`.
    pub fn from_i64(domain: Domain, v: i64) -> Scalar {
        match domain {
            Domain::Prime(p) => Scalar(Repr::Residue {
                p,
                r: v.rem_euclid(p as i64) as u32,
            }),
            Domain::Rational => Scalar(Repr::Fraction(BigRational::from_integer(BigInt::from(v)))),
        }
    }

    /// A rational `num/den` reduced to lowest terms.
    pub fn ratio(num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(Repr::Fraction(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        ))))
    }

    pub fn domain(&self) -> Domain {
        match &self.0 {
            Repr::Residue { p, .. } => Domain::Prime(*p),
            Repr::Fraction(_) => Domain::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Residue { r, .. } => *r == 0,
            Repr::Fraction(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Residue { r, .. } => *r == 1,
            Repr::Fraction(q) => q.is_one(),
        }
    }

    /// Residue in `[0, p)` for prime-field scalars.
    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Residue { r, .. } => Some(*r),
            Repr::Fraction(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Residue { .. } => None,
            Repr::Fraction(q) => Some(q),
        }
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        let (a, b) = (self.domain(), other.domain());
        if a != b {
            return Err(Error::DomainMismatch(a, b));
        }
        match op {
            ArithOp::Add => Ok(self.add_same(other)),
            ArithOp::Sub => Ok(self.sub_same(other)),
            ArithOp::Mul => Ok(self.mul_same(other)),
            ArithOp::Div => Ok(self.mul_same(&other.inverse()?)),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.arith(other, ArithOp::Add)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.arith(other, ArithOp::Div)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Residue { p, r } => Scalar(Repr::Residue {
                p: *p,
                r: pow_mod(*r, *p as u64 - 2, *p),
            }),
            Repr::Fraction(q) => Scalar(Repr::Fraction(q.recip())),
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.domain());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            base = base.mul_same(&base);
            e >>= 1;
        }
        acc
    }

    /// Parses a decimal literal (`"-3"`, `"2"`, `"3/4"`). Prime-field literals
    /// must already lie in `[0, p)`; fractions are accepted only over the rationals.
    pub fn parse(domain: Domain, literal: &str) -> Result<Scalar> {
        let invalid = || Error::InvalidScalar {
            literal: literal.to_string(),
            domain,
        };
        let s = literal.trim();
        match domain {
            Domain::Prime(p) => {
                let r: u64 = s.parse().map_err(|_| invalid())?;
                if r >= p as u64 {
                    return Err(invalid());
                }
                Ok(Scalar(Repr::Residue { p, r: r as u32 }))
            }
            Domain::Rational => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num: BigInt = num.trim().parse().map_err(|_| invalid())?;
                let den: BigInt = den.trim().parse().map_err(|_| invalid())?;
                if den.is_zero() {
                    return Err(invalid());
                }
                Ok(Scalar(Repr::Fraction(BigRational::new(num, den))))
            }
        }
    }

    /// A uniformly random residue, or a small random fraction over the rationals.
    pub fn random<R: Rng + ?Sized>(domain: Domain, rng: &mut R) -> Scalar {
        match domain {
            Domain::Prime(p) => Scalar(Repr::Residue {
                p,
                r: rng.gen_range(0..p),
            }),
            Domain::Rational => {
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=5);
                Scalar(Repr::Fraction(BigRational::new(num.into(), den.into())))
            }
        }
    }

    fn add_same(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Residue { p, r }, Repr::Residue { r: s, .. }) => Scalar(Repr::Residue {
                p: *p,
                r: ((*r as u64 + *s as u64) % *p as u64) as u32,
            }),
            (Repr::Fraction(a), Repr::Fraction(b)) => Scalar(Repr::Fraction(a + b)),
            _ => mismatch(self, other),
        }
    }

    fn sub_same(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Residue { p, r }, Repr::Residue { r: s, .. }) => Scalar(Repr::Residue {
                p: *p,
                r: ((*r as u64 + *p as u64 - *s as u64) % *p as u64) as u32,
            }),
            (Repr::Fraction(a), Repr::Fraction(b)) => Scalar(Repr::Fraction(a - b)),
            _ => mismatch(self, other),
        }
    }

    fn mul_same(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Residue { p, r }, Repr::Residue { r: s, .. }) => Scalar(Repr::Residue {
                p: *p,
                r: ((*r as u64 * *s as u64) % *p as u64) as u32,
            }),
            (Repr::Fraction(a), Repr::Fraction(b)) => Scalar(Repr::Fraction(a * b)),
            _ => mismatch(self, other),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar domain mismatch: {} vs {}", a.domain(), b.domain())
}

fn pow_mod(base: u32, mut e: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut b = base as u64 % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc as u32
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used for canonical sorting: by domain, then by residue or
/// numeric value.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Residue { r, .. } => write!(f, "{r}"),
            Repr::Fraction(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self, self.domain())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_same(rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.sub_same(rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_same(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Residue { p, r } => Scalar(Repr::Residue {
                p: *p,
                r: (*p - *r) % *p,
            }),
            Repr::Fraction(q) => Scalar(Repr::Fraction(-q)),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_same(&rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.sub_same(&rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_same(&rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Scalar {
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Residue { .. } => false,
            Repr::Fraction(q) => q.is_negative(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u32, v: i64) -> Scalar {
        Scalar::from_i64(Domain::Prime(p), v)
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(f(5, 2).arith(&f(5, 4), ArithOp::Add).unwrap(), f(5, 1));
        assert_eq!(q(1, 3).arith(&q(3, 4), ArithOp::Mul).unwrap(), q(1, 4));
        assert_eq!(f(5, 3).inverse().unwrap(), f(5, 2));
        assert_eq!(q(2, 7).inverse().unwrap(), q(7, 2));
        for d in [Domain::Prime(2), Domain::Prime(7), Domain::Rational] {
            assert_eq!(Scalar::one(d).inverse().unwrap(), Scalar::one(d));
        }
    }

    #[test]
    fn additive_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in [Domain::Prime(3), Domain::Rational] {
            for _ in 0..100 {
                let x = Scalar::random(d, &mut rng);
                assert_eq!(x.arith(&Scalar::zero(d), ArithOp::Add).unwrap(), x);
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            f(5, 1).checked_add(&f(7, 1)),
            Err(Error::DomainMismatch(Domain::Prime(5), Domain::Prime(7)))
        );
        assert_eq!(f(5, 1).checked_add(&q(1, 2)).unwrap_err().kind(), "DomainMismatch");
        assert_eq!(f(5, 1).checked_div(&f(5, 0)), Err(Error::DivisionByZero));
        assert_eq!(Scalar::zero(Domain::Rational).inverse(), Err(Error::DivisionByZero));
        assert!(Domain::prime(4).is_err());
        assert!(Domain::prime(1).is_err());
    }

    #[test]
    fn literals() {
        let d = Domain::Rational;
        assert_eq!(Scalar::parse(d, "3/4").unwrap(), q(3, 4));
        assert_eq!(Scalar::parse(d, "6/-8").unwrap(), q(-3, 4));
        assert_eq!(Scalar::parse(d, "-3").unwrap().to_string(), "-3");
        assert_eq!(q(6, 8).to_string(), "3/4");
        assert!(Scalar::parse(d, "1/0").is_err());
        let p = Domain::Prime(5);
        assert_eq!(Scalar::parse(p, "4").unwrap(), f(5, 4));
        assert!(Scalar::parse(p, "5").is_err());
        assert!(Scalar::parse(p, "-1").is_err());
        assert!(Scalar::parse(p, "1/2").is_err());
        assert_eq!("F7".parse::<Domain>().unwrap(), Domain::Prime(7));
        assert_eq!("Q".parse::<Domain>().unwrap(), Domain::Rational);
        assert!("F9".parse::<Domain>().is_err());
    }

    #[test]
    fn fermat() {
        for p in [2u32, 3, 5, 7, 11, 13, 101] {
            for x in Domain::Prime(p).elements().unwrap() {
                assert_eq!(x.pow(p as u64), x);
            }
        }
    }

    fn domains() -> impl Strategy<Value = Domain> {
        prop_oneof![
            Just(Domain::Prime(2)),
            Just(Domain::Prime(3)),
            Just(Domain::Prime(5)),
            Just(Domain::Prime(101)),
            Just(Domain::Rational),
        ]
    }

    fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        (domains(), any::<u64>()).prop_map(|(d, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (
                Scalar::random(d, &mut rng),
                Scalar::random(d, &mut rng),
                Scalar::random(d, &mut rng),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
                prop_assert_eq!(b.checked_div(&a).unwrap(), &b * &a.inverse().unwrap());
            }
        }
    }
}
