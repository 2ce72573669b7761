use std::fmt;

use num_traits::{One, Zero};

use super::{rat_to_string, Rat};

/// Univariate polynomial in `t` over the rationals, constant term first.
/// The coefficient list never carries trailing zeros; the zero polynomial
/// is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// a0 + a1*t
    pub fn linear(a0: Rat, a1: Rat) -> Self {
        Self::from_coeffs(vec![a0, a1])
    }

    /// The variable t itself.
    pub fn var() -> Self {
        Self::linear(Rat::zero(), Rat::one())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner composition self(g(t)).
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> UniPoly {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rat::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / Rat::from_integer((k as i64 + 1).into()));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, by: &Rat) -> UniPoly {
        if by.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = if c < &Rat::zero() { -c.clone() } else { c.clone() };
            if first {
                if c < &Rat::zero() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < &Rat::zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_mag = mag.is_one();
            match k {
                0 => write!(f, "{}", rat_to_string(&mag))?,
                1 => {
                    if unit_mag {
                        write!(f, "t")?;
                    } else {
                        write!(f, "{}*t", rat_to_string(&mag))?;
                    }
                }
                _ => {
                    if unit_mag {
                        write!(f, "t^{k}")?;
                    } else {
                        write!(f, "{}*t^{k}", rat_to_string(&mag))?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl super::Scalar for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::constant(<Rat as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        UniPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        UniPoly::mul(self, other)
    }
    fn scale(&self, by: &Rat) -> Self {
        UniPoly::scale(self, by)
    }
    fn from_rat(r: Rat) -> Self {
        UniPoly::constant(r)
    }
}
