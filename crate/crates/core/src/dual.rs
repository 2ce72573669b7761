//! The graded dual of the shuffle algebra: truncated linear functionals,
//! convolution, the exp/log bijection between infinitesimal characters and
//! characters, right-nested Lie elements, and the degree-wise formal-center
//! conditions (the pairing ρ against t_i, the γ coefficients, and the
//! projection π).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{rat_int, Rat, Scalar};
use crate::shuffle::{shuffle_words, NcPoly};
use crate::words::{words_up_to, Word};
use crate::displacement::p_factor_at;

/// A linear functional on the shuffle algebra, truncated at degree N:
/// values on every word of degree <= N. Group-like instances are the
/// characters; see [`is_group_like`](TruncatedFunctional::is_group_like).
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedFunctional {
    order: u32,
    values: BTreeMap<Word, Rat>,
}

impl TruncatedFunctional {
    /// The zero functional of order N.
    pub fn zero(order: u32) -> Self {
        let values = words_up_to(order)
            .into_iter()
            .map(|w| (w, Rat::zero()))
            .collect();
        TruncatedFunctional { order, values }
    }

    /// The convolution unit ι: one at the empty word, zero elsewhere.
    pub fn unit(order: u32) -> Self {
        let mut f = Self::zero(order);
        f.set(Word::empty(), Rat::one());
        f
    }

    /// Build from an explicit value assignment.
    pub fn from_fn(order: u32, mut value: impl FnMut(&Word) -> Rat) -> Self {
        let values = words_up_to(order)
            .into_iter()
            .map(|w| {
                let v = value(&w);
                (w, v)
            })
            .collect();
        TruncatedFunctional { order, values }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn value(&self, w: &Word) -> Rat {
        self.values.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, w: Word, v: Rat) {
        debug_assert!(w.degree() <= self.order);
        self.values.insert(w, v);
    }

    pub fn values(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.values.iter()
    }

    /// Pair against a word polynomial (linear extension of value lookups).
    pub fn pair(&self, p: &NcPoly<Rat>) -> Rat {
        let mut acc = Rat::zero();
        for (w, c) in p.terms() {
            acc += self.value(w) * c;
        }
        acc
    }

    /// Convolution through the decatenation coproduct:
    /// (f*g)(w) = Σ over splits w = u·v of f(u)·g(v).
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::InvalidInput(format!(
                "convolution order mismatch: {} vs {}",
                self.order, other.order
            )));
        }
        let mut out = Self::zero(self.order);
        for w in words_up_to(self.order) {
            let mut acc = Rat::zero();
            for j in 0..=w.len() {
                let (u, v) = w.split_at(j);
                acc += self.value(&u) * other.value(&v);
            }
            out.set(w, acc);
        }
        Ok(out)
    }

    /// Convolution inverse of a character: f ∘ S.
    pub fn inverse_character(&self) -> Result<Self> {
        if !self.is_group_like() {
            return Err(Error::Domain(
                "inverse_character requires a group-like functional".into(),
            ));
        }
        let mut out = Self::zero(self.order);
        for w in words_up_to(self.order) {
            let sign = if w.len() % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            let v = self.value(&w.reverse()) * sign;
            out.set(w, v);
        }
        Ok(out)
    }

    /// Convolution exponential of an infinitesimal element (must vanish at
    /// the empty word). Truncation makes the series finite: the n-th
    /// convolution power vanishes below degree n.
    pub fn exp(&self) -> Result<Self> {
        if !self.value(&Word::empty()).is_zero() {
            return Err(Error::Domain("exp needs value 0 at the empty word".into()));
        }
        let mut out = Self::unit(self.order);
        let mut power = Self::unit(self.order);
        let mut fact = Rat::one();
        for n in 1..=self.order {
            power = power.convolve(self)?;
            fact *= rat_int(n as i64);
            for w in words_up_to(self.order) {
                let v = out.value(&w) + power.value(&w) / &fact;
                out.set(w, v);
            }
        }
        Ok(out)
    }

    /// Convolution logarithm of a functional with value 1 at the empty word;
    /// exact inverse of [`exp`](Self::exp) at the same truncation order.
    pub fn log(&self) -> Result<Self> {
        if self.value(&Word::empty()) != Rat::one() {
            return Err(Error::Domain("log needs value 1 at the empty word".into()));
        }
        let mut dev = self.clone();
        dev.set(Word::empty(), Rat::zero());
        let mut out = Self::zero(self.order);
        let mut power = Self::unit(self.order);
        for n in 1..=self.order {
            power = power.convolve(&dev)?;
            let sign = if n % 2 == 1 { rat_int(1) } else { rat_int(-1) };
            let coeff = sign / rat_int(n as i64);
            for w in words_up_to(self.order) {
                let v = out.value(&w) + power.value(&w) * &coeff;
                out.set(w, v);
            }
        }
        Ok(out)
    }

    /// Character property: value 1 at the empty word and multiplicativity
    /// against the shuffle product, f(u)f(v) = f(u ⧢ v), for all nonempty
    /// u, v with deg(u) + deg(v) <= N.
    pub fn is_group_like(&self) -> bool {
        if self.value(&Word::empty()) != Rat::one() {
            return false;
        }
        self.multiplicative_defect_free(|lhs, rhs| lhs == rhs)
    }

    /// Infinitesimal character property: value 0 at the empty word and
    /// vanishing on all proper shuffle products.
    pub fn is_infinitesimal(&self) -> bool {
        if !self.value(&Word::empty()).is_zero() {
            return false;
        }
        self.multiplicative_defect_free(|_, rhs| rhs.is_zero())
    }

    fn multiplicative_defect_free(&self, check: impl Fn(&Rat, &Rat) -> bool) -> bool {
        if self.order == 0 {
            return true;
        }
        let words = words_up_to(self.order - 1);
        for u in &words {
            if u.is_empty() {
                continue;
            }
            for v in &words {
                if v.is_empty() || u.degree() + v.degree() > self.order {
                    continue;
                }
                let lhs = self.value(u) * self.value(v);
                let mut rhs = Rat::zero();
                for (w, mult) in shuffle_words(u, v) {
                    rhs += self.value(&w) * rat_int(mult as i64);
                }
                if !check(&lhs, &rhs) {
                    return false;
                }
            }
        }
        true
    }
}

/// Expansion of the right-nested commutator [X_{i_k}, [..., [X_{i_2}, X_{i_1}]...]]
/// indexed by the nonempty word c = (i_1, ..., i_k); a single letter gives X_{i_1}.
pub fn lie_nest(c: &Word) -> Result<NcPoly<Rat>> {
    if c.is_empty() {
        return Err(Error::InvalidInput("lie_nest on the empty word".into()));
    }
    let letters = c.letters();
    let mut acc = NcPoly::term(Word::single(letters[0]), Rat::one());
    for &l in &letters[1..] {
        let x = NcPoly::term(Word::single(l), Rat::one());
        acc = x.concat_mul(&acc).sub(&acc.concat_mul(&x));
    }
    Ok(acc)
}

/// γ coefficient of a nonempty composition:
/// (i_2 - i_1)(i_3 - i_2 - i_1)···(i_k - i_{k-1} - ... - i_1); 1 for single letters.
pub fn gamma(c: &Word) -> Result<Rat> {
    if c.is_empty() {
        return Err(Error::InvalidInput("gamma on the empty word".into()));
    }
    let mut acc = rat_int(1);
    let mut partial: i64 = c.letters()[0] as i64;
    for &l in &c.letters()[1..] {
        acc *= rat_int(l as i64 - partial);
        partial += l as i64;
    }
    Ok(acc)
}

/// The degree-i component of ρ paired against t_i: for homogeneous g of
/// degree i, Σ over words w in g of coeff(w) · p_w(i). Vanishing of this
/// value is the degree-wise formal-center condition.
pub fn rho_pair(g: &NcPoly<Rat>) -> Result<Rat> {
    let deg = g
        .homogeneous_degree()?
        .ok_or_else(|| Error::InvalidInput("rho_pair on the zero polynomial".into()))?;
    if deg == 0 {
        return Err(Error::InvalidInput("rho_pair needs degree >= 1".into()));
    }
    let t = rat_int(deg as i64);
    let mut acc = Rat::zero();
    for (w, c) in g.terms() {
        acc += c * p_factor_at(w, &t);
    }
    Ok(acc)
}

/// The projection g ↦ g - ρ(g)·X_i on the homogeneous degree-i component;
/// idempotent, with image exactly the kernel of [`rho_pair`].
pub fn pi_projection(g: &NcPoly<Rat>) -> Result<NcPoly<Rat>> {
    let deg = g
        .homogeneous_degree()?
        .ok_or_else(|| Error::InvalidInput("pi_projection on the zero polynomial".into()))?;
    let rho = rho_pair(g)?;
    let xi = NcPoly::term(Word::single(deg), rho);
    Ok(g.sub(&xi))
}

/// A homogeneous Lie element lies in the Lie algebra of formal centers
/// exactly when its ρ pairing vanishes.
pub fn is_center_component(g: &NcPoly<Rat>) -> Result<bool> {
    Ok(rho_pair(g)?.is_zero())
}

/// Functional induced by a homogeneous polynomial: value on a word is its
/// coefficient; used to test primitivity of Lie elements.
pub fn functional_from_poly(g: &NcPoly<Rat>, order: u32) -> TruncatedFunctional {
    TruncatedFunctional::from_fn(order, |w| g.coeff(w))
}
