//! Exact arithmetic substrate: arbitrary-precision rationals, univariate
//! and multivariate polynomials over them, and the handful of integer
//! combinatorial functions the rest of the engine needs.

mod multipoly;
mod unipoly;

pub use multipoly::{Mono, MultiPoly, Var};
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always stored reduced with positive denominator,
/// so structural equality is mathematical equality.
pub type Rat = num_rational::BigRational;

/// Rational from an integer pair; panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical text form: `p/q`, or just `p` when the denominator is one.
/// Used bit-exactly in every file format and CLI output.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the canonical `p/q` (or `p`) text form.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Nearest f64 to an exact rational.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| panic!("rational out of f64 range: {}", rat_to_string(r)))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Signed Stirling number of the first kind, the coefficient of x^k in
/// the falling factorial x(x-1)...(x-n+1). Computed by the recurrence
/// s(n+1,k) = s(n,k-1) - n*s(n,k). Returns 0 for k > n.
pub fn stirling_first(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    // row-by-row; row m holds s(m, 0..=m)
    let mut row = vec![BigInt::one()];
    for m in 0..n {
        let mut next = vec![BigInt::zero(); m as usize + 2];
        for (j, v) in row.iter().enumerate() {
            next[j + 1] += v;
            next[j] -= BigInt::from(m) * v;
        }
        row = next;
    }
    row[k as usize].clone()
}

/// Möbius function: 1 on 1, (-1)^q on squarefree products of q primes,
/// 0 otherwise. n = 0 is an input error.
pub fn moebius(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidInput("moebius(0) is undefined".into()));
    }
    let mut n = n;
    let mut q = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            q += 1;
        }
        p += 1;
    }
    if n > 1 {
        q += 1;
    }
    Ok(if q % 2 == 0 { 1 } else { -1 })
}

/// Coefficient hook shared by the Bell-polynomial evaluators: a commutative
/// Q-algebra. The same evaluation code then runs over rationals, polynomials
/// in t, multivariate polynomials, and shuffle-algebra elements.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, by: &Rat) -> Self;
    fn from_rat(r: Rat) -> Self;

    fn neg(&self) -> Self {
        self.scale(&Rat::new(BigInt::from(-1), BigInt::from(1)))
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, by: &Rat) -> Self {
        self * by
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
}

pub fn big_to_rat(b: BigInt) -> Rat {
    Rat::from_integer(b)
}
