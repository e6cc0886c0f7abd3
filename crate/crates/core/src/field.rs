//! Exact scalar fields: a word-sized prime field and the rationals.
//!
//! Every computation in the crate is generic over [`Field`]. A field is a
//! small context value (it may carry a modulus) and elements are plain
//! values manipulated through it, so `GF(p)` and `Q` share one code path.

use std::fmt;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::Error;

/// Default modulus, the Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Half-width of the range random coefficients are drawn from.
pub const SAMPLE_RANGE: i64 = 1_000_000;

/// Arithmetic in an exact field.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    // the field value carries the modulus
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// A nonzero coefficient for generic sampling: uniform in `[1, 10^6]`
    /// for prime fields and in `[-10^6, 10^6] \ {0}` for the rationals.
    fn random_coefficient<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Characteristic, `None` for characteristic zero.
    fn characteristic(&self) -> Option<u64>;

    fn spec(&self) -> FieldSpec;

    fn display(&self, a: &Self::Elem) -> String;

    /// `a - factor * b`, the elimination kernel.
    fn sub_mul(&self, a: &Self::Elem, factor: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(factor, b))
    }
}

/// `Z/pZ` for a prime `p < 2^32`; elements are canonical representatives in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("prime {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        self.pow(*a, self.p - 2)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        r.to_u64().expect("reduced residue fits in u64")
    }
    fn random_coefficient<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.from_i64(rng.gen_range(1..=SAMPLE_RANGE))
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.p)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn display(&self, a: &u64) -> String {
        a.to_string()
    }
    fn sub_mul(&self, a: &u64, factor: &u64, b: &u64) -> u64 {
        (a + self.p * self.p - factor * b) % self.p
    }
}

/// The field of rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn random_coefficient<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let magnitude = rng.gen_range(1..=SAMPLE_RANGE);
        let n = if rng.gen_bool(0.5) { -magnitude } else { magnitude };
        self.from_i64(n)
    }
    fn characteristic(&self) -> Option<u64> {
        None
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn display(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-({}/{})", a.numer().abs(), a.denom())
        } else {
            format!("({}/{})", a.numer(), a.denom())
        }
    }
}

/// Runtime choice of field, as read from module files and CLI flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl FieldSpec {
    /// Checks that the field can host forms of degree `socle_degree`:
    /// the characteristic must exceed it so derivative factors stay invertible.
    pub fn check_degree(&self, socle_degree: usize) -> Result<(), Error> {
        match *self {
            FieldSpec::Prime(p) if p <= socle_degree as u64 => Err(Error::InvalidField(format!(
                "characteristic {p} must exceed socle degree {socle_degree}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "{p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("rational") {
            return Ok(FieldSpec::Rational);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::InvalidField(format!("expected a prime or `rational`, got `{s}`")))?;
        PrimeField::new(p).map(|f| f.spec())
    }
}

/// Deterministic primality test; trial division is enough below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
