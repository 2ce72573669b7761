use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{rat_to_string, Rat, UniPoly};

/// Variables of the commutative polynomial rings in play: the generators
/// t_1, t_2, ... of the Faà di Bruno algebra, the deformation parameter t,
/// and the auxiliary variable x. New generators appear lazily.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// t_i
    Gen(u32),
    /// the deformation parameter t
    T,
    /// x
    X,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Gen(i) => write!(f, "t{i}"),
            Var::T => write!(f, "t"),
            Var::X => write!(f, "x"),
        }
    }
}

/// Monomial as a finitely supported exponent vector; no zero exponents kept.
pub type Mono = BTreeMap<Var, u32>;

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = a.clone();
    for (v, e) in b {
        *out.entry(*v).or_insert(0) += e;
    }
    out
}

fn mono_degree(m: &Mono) -> u32 {
    m.values().sum()
}

/// Sparse multivariate commutative polynomial over the rationals.
/// No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::new(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut m = Mono::new();
        m.insert(v, 1);
        let mut terms = BTreeMap::new();
        terms.insert(m, Rat::one());
        MultiPoly { terms }
    }

    /// The generator t_i.
    pub fn gen(i: u32) -> Self {
        Self::var(Var::Gen(i))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_empty().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn insert(&mut self, m: Mono, c: Rat) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, by: &Rat) -> MultiPoly {
        if by.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * by)).collect(),
        }
    }

    /// Substitute a polynomial for a variable.
    pub fn subst(&self, v: Var, with: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.get(&v).copied().unwrap_or(0);
            let mut rest = m.clone();
            rest.remove(&v);
            let base = MultiPoly {
                terms: [(rest, c.clone())].into_iter().collect(),
            };
            out = out.add(&base.mul(&super::Scalar::pow(with, e)));
        }
        out
    }

    /// View a univariate polynomial in `t` as a MultiPoly in the given variable.
    pub fn from_unipoly(p: &UniPoly, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut m = Mono::new();
            if k > 0 {
                m.insert(v, k as u32);
            }
            out.insert(m, c.clone());
        }
        out
    }
}

impl super::Scalar for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
    fn scale(&self, by: &Rat) -> Self {
        MultiPoly::scale(self, by)
    }
    fn from_rat(r: Rat) -> Self {
        MultiPoly::constant(r)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // higher total degree first, ties broken by the monomial order
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(ma, _), (mb, _)| {
            mono_degree(mb)
                .cmp(&mono_degree(ma))
                .then_with(|| ma.cmp(mb))
        });
        for (idx, (m, c)) in terms.iter().enumerate() {
            let neg = **c < Rat::zero();
            let mag = if neg { -(*c).clone() } else { (*c).clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .iter()
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", rat_to_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_to_string(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}
