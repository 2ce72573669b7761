//! The shuffle Hopf algebra on words: shuffle product, decatenation
//! coproduct, antipode, counit, and the Radford freeness check.
//!
//! One sparse polynomial type carries both readings of a word-indexed
//! polynomial: as an element of the shuffle algebra (product ⧢) and as a
//! noncommutative X-polynomial in the graded dual (product = concatenation).
//! The word (i_1, ..., i_k) denotes the monomial X_{i_k}···X_{i_1}; the two
//! views share coefficients and differ only in which product you call.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{big_to_rat, Rat, Scalar, UniPoly};
use crate::words::{enumerate_words, lyndon_words, Word};

/// Sparse word-indexed polynomial with coefficients in a Q-algebra.
/// No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct NcPoly<C: Scalar> {
    terms: BTreeMap<Word, C>,
}

impl<C: Scalar> Default for NcPoly<C> {
    fn default() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> NcPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty word with coefficient one: the unit of both products.
    pub fn one() -> Self {
        Self::term(Word::empty(), C::one())
    }

    pub fn term(w: Word, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, by: &C) -> Self {
        let mut out = Self::zero();
        if by.is_zero() {
            return out;
        }
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul(by));
        }
        out
    }

    pub fn scale_rat(&self, by: &Rat) -> Self {
        self.scale(&C::from_rat(by.clone()))
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> NcPoly<D> {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// The common degree of all words, None for the zero polynomial, or an
    /// input error when the polynomial is not homogeneous.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut deg = None;
        for w in self.terms.keys() {
            match deg {
                None => deg = Some(w.degree()),
                Some(d) if d == w.degree() => {}
                Some(d) => {
                    return Err(Error::InvalidInput(format!(
                        "polynomial is not homogeneous: degrees {d} and {}",
                        w.degree()
                    )))
                }
            }
        }
        Ok(deg)
    }

    /// Shuffle-algebra product (bilinear extension of the word shuffle).
    pub fn shuffle_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let c = cu.mul(cv);
                for (w, mult) in shuffle_words(u, v) {
                    out.add_term(w, c.scale(&big_to_rat(mult.into())));
                }
            }
        }
        out
    }

    /// Concatenation (X-monomial) product: monomial(u)·monomial(v) is the
    /// word v ++ u under the encoding above.
    pub fn concat_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                out.add_term(v.concat(u), cu.mul(cv));
            }
        }
        out
    }

    /// Drop every term whose word contains a letter larger than n.
    pub fn truncate_alphabet(&self, n: u32) -> Self {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.max_letter() <= n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the empty word.
    pub fn counit(&self) -> C {
        self.coeff(&Word::empty())
    }

    /// Linear antipode: word w goes to (-1)^len(w) times its reversal.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let c = if w.len() % 2 == 0 { c.clone() } else { c.neg() };
            out.add_term(w.reverse(), c);
        }
        out
    }

    fn format_with(&self, f: &mut fmt::Formatter<'_>, one_word: &str, word_fmt: impl Fn(&Word) -> String) -> fmt::Result
    where
        C: fmt::Display,
    {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            // a leading '-' counts as a sign only on single-term coefficients
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-', ' ']) => (true, rest.to_string()),
                _ => (false, cs),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let body = if w.is_empty() { one_word.to_string() } else { word_fmt(w) };
            if mag == "1" {
                write!(f, "{body}")?;
            } else if mag.contains(['+', '-', ' ']) {
                write!(f, "({mag})*{body}")?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

fn format_x_word(w: &Word) -> String {
    w.letters()
        .iter()
        .rev()
        .map(|l| format!("X{l}"))
        .collect::<Vec<_>>()
        .join("*")
}

/// Bracketed word view, e.g. `2*[1.1] + [2]`.
pub struct WordsDisplay<'a, C: Scalar>(pub &'a NcPoly<C>);

impl<C: Scalar + fmt::Display> fmt::Display for WordsDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.format_with(f, "[]", |w| w.to_string())
    }
}

/// X-monomial view, e.g. `X3 + 3*X2*X1`; the empty word prints as `I`.
pub struct XDisplay<'a, C: Scalar>(pub &'a NcPoly<C>);

impl<C: Scalar + fmt::Display> fmt::Display for XDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.format_with(f, "I", format_x_word)
    }
}

/// All interleavings of u and v with multiplicities.
pub fn shuffle_words(u: &Word, v: &Word) -> BTreeMap<Word, u64> {
    fn rec(u: &[u32], v: &[u32], prefix: &mut Vec<u32>, out: &mut BTreeMap<Word, u64>) {
        if u.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(v);
            *out.entry(Word::new(w)).or_insert(0) += 1;
            return;
        }
        if v.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(u);
            *out.entry(Word::new(w)).or_insert(0) += 1;
            return;
        }
        prefix.push(u[0]);
        rec(&u[1..], v, prefix, out);
        prefix.pop();
        prefix.push(v[0]);
        rec(u, &v[1..], prefix, out);
        prefix.pop();
    }
    let mut out = BTreeMap::new();
    rec(u.letters(), v.letters(), &mut Vec::new(), &mut out);
    out
}

/// Shuffle of two single words as a rational polynomial.
pub fn shuffle(u: &Word, v: &Word) -> NcPoly<Rat> {
    let mut out = NcPoly::zero();
    for (w, mult) in shuffle_words(u, v) {
        out.add_term(w, big_to_rat(mult.into()));
    }
    out
}

/// Element of the tensor square, indexed by word pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct WordTensor<C: Scalar> {
    terms: BTreeMap<(Word, Word), C>,
}

impl<C: Scalar> Default for WordTensor<C> {
    fn default() -> Self {
        WordTensor { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> WordTensor<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: C) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.neg());
        }
        out
    }

    pub fn scale_rat(&self, by: &Rat) -> Self {
        let mut out = Self::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(l.clone(), r.clone(), c.scale(by));
        }
        out
    }

    pub fn flip(&self) -> Self {
        let mut out = Self::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(r.clone(), l.clone(), c.clone());
        }
        out
    }

    /// Componentwise shuffle product on the tensor square.
    pub fn shuffle_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((ul, ur), cu) in &self.terms {
            for ((vl, vr), cv) in &other.terms {
                let c = cu.mul(cv);
                for (wl, ml) in shuffle_words(ul, vl) {
                    for (wr, mr) in shuffle_words(ur, vr) {
                        out.add_term(wl.clone(), wr, c.scale(&big_to_rat((ml * mr).into())));
                    }
                }
            }
        }
        out
    }

    /// Pure tensor p ⊗ q.
    pub fn from_pair(p: &NcPoly<C>, q: &NcPoly<C>) -> Self {
        let mut out = Self::zero();
        for (u, cu) in p.terms() {
            for (v, cv) in q.terms() {
                out.add_term(u.clone(), v.clone(), cu.mul(cv));
            }
        }
        out
    }
}

/// Decatenation coproduct of a single word: the sum of prefix ⊗ suffix over
/// all splits, trivial splits included.
pub fn coproduct(w: &Word) -> WordTensor<Rat> {
    let mut out = WordTensor::zero();
    for j in 0..=w.len() {
        let (u, v) = w.split_at(j);
        out.add_term(u, v, Rat::one());
    }
    out
}

/// Linear extension of the coproduct.
pub fn coproduct_poly<C: Scalar>(p: &NcPoly<C>) -> WordTensor<C> {
    let mut out = WordTensor::zero();
    for (w, c) in p.terms() {
        for j in 0..=w.len() {
            let (u, v) = w.split_at(j);
            out.add_term(u, v, c.clone());
        }
    }
    out
}

/// Wrapper giving a word polynomial the Scalar interface of the shuffle
/// algebra, so the generic Bell evaluators can run inside the shuffle ring.
#[derive(Debug, Clone, PartialEq)]
pub struct ShuffleView<C: Scalar>(pub NcPoly<C>);

impl<C: Scalar> Scalar for ShuffleView<C> {
    fn zero() -> Self {
        ShuffleView(NcPoly::zero())
    }
    fn one() -> Self {
        ShuffleView(NcPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        ShuffleView(self.0.add(&other.0))
    }
    fn mul(&self, other: &Self) -> Self {
        ShuffleView(self.0.shuffle_mul(&other.0))
    }
    fn scale(&self, by: &Rat) -> Self {
        ShuffleView(self.0.scale_rat(by))
    }
    fn from_rat(r: Rat) -> Self {
        ShuffleView(NcPoly::term(Word::empty(), C::from_rat(r)))
    }
}

/// Shuffle monomials in Lyndon words of total degree n: every multiset of
/// Lyndon words with degrees summing to n, multiplied out with ⧢.
fn lyndon_shuffle_monomials(n: u32) -> Vec<NcPoly<Rat>> {
    let groups = lyndon_words(n);
    let all: Vec<Word> = groups.into_iter().flatten().collect();
    let mut out = Vec::new();
    // multisets as non-increasing index sequences
    fn rec(all: &[Word], start: usize, rest: u32, acc: &NcPoly<Rat>, out: &mut Vec<NcPoly<Rat>>) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        for (idx, w) in all.iter().enumerate().skip(start) {
            if w.degree() > rest {
                continue;
            }
            let next = acc.shuffle_mul(&NcPoly::term(w.clone(), Rat::one()));
            rec(all, idx, rest - w.degree(), &next, out);
        }
    }
    rec(&all, 0, n, &NcPoly::one(), &mut out);
    out
}

/// Exact rank of a rational matrix (rows of equal length) by Gaussian
/// elimination.
fn rational_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    let mut col = 0;
    while col < cols && rank < rows.len() {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        if let Some(p) = pivot {
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            let inv = pivot_row[col].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] / &inv;
                for (entry, pivot_entry) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *entry -= pivot_entry * &factor;
                }
            }
            rank += 1;
        }
        col += 1;
    }
    rank
}

/// Radford's freeness check at degree n: the shuffle monomials in Lyndon
/// words of total degree n must number exactly 2^(n-1) and span the whole
/// degree-n component. Established by exact Gaussian elimination.
pub fn verify_radford(n: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("verify_radford needs n >= 1".into()));
    }
    let basis = enumerate_words(n);
    let index: BTreeMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let monomials = lyndon_shuffle_monomials(n);
    if monomials.len() != basis.len() {
        return Ok(false);
    }
    let rows: Vec<Vec<Rat>> = monomials
        .iter()
        .map(|p| {
            let mut row = vec![Rat::zero(); basis.len()];
            for (w, c) in p.terms() {
                row[index[w]] = c.clone();
            }
            row
        })
        .collect();
    Ok(rational_rank(rows) == basis.len())
}

/// Antipode axiom m∘(S⊗id)∘Δ = η∘ε evaluated on one word.
pub fn antipode_axiom_holds(w: &Word) -> bool {
    let mut acc: NcPoly<Rat> = NcPoly::zero();
    for ((u, v), c) in coproduct(w).terms() {
        let su = NcPoly::term(u.clone(), c.clone()).antipode();
        acc = acc.add(&su.shuffle_mul(&NcPoly::term(v.clone(), Rat::one())));
    }
    let expected = if w.is_empty() { NcPoly::one() } else { NcPoly::zero() };
    acc == expected
}

pub fn poly_to_string<C: Scalar + fmt::Display>(p: &NcPoly<C>) -> String {
    WordsDisplay(p).to_string()
}

pub fn poly_to_x_string<C: Scalar + fmt::Display>(p: &NcPoly<C>) -> String {
    XDisplay(p).to_string()
}

/// Symbolic-t word polynomials, the workhorse of the identity checks.
pub type TPoly = NcPoly<UniPoly>;

pub fn rat_poly_to_t(p: &NcPoly<Rat>) -> TPoly {
    p.map_coeffs(|c| UniPoly::constant(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::words::words_up_to;

    fn w(letters: &[u32]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn shuffle_examples() {
        let p = shuffle(&w(&[1]), &w(&[1]));
        assert_eq!(p, NcPoly::term(w(&[1, 1]), rat(2, 1)));

        let p = shuffle(&w(&[1]), &w(&[2]));
        let mut expect = NcPoly::term(w(&[1, 2]), rat(1, 1));
        expect.add_term(w(&[2, 1]), rat(1, 1));
        assert_eq!(p, expect);

        let p = shuffle(&Word::empty(), &w(&[3, 1]));
        assert_eq!(p, NcPoly::term(w(&[3, 1]), rat(1, 1)));
    }

    /// The recursive interleaving must agree with the textbook definition:
    /// choose which r of the r+s slots carry u.
    #[test]
    fn shuffle_matches_position_subsets() {
        let words = words_up_to(4);
        for u in &words {
            for v in &words {
                if u.degree() + v.degree() > 5 {
                    continue;
                }
                let mut expect: BTreeMap<Word, u64> = BTreeMap::new();
                let r = u.len();
                let n = r + v.len();
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() as usize != r {
                        continue;
                    }
                    let (mut iu, mut iv) = (0, 0);
                    let mut word = Vec::with_capacity(n);
                    for pos in 0..n {
                        if mask & (1 << pos) != 0 {
                            word.push(u.letters()[iu]);
                            iu += 1;
                        } else {
                            word.push(v.letters()[iv]);
                            iv += 1;
                        }
                    }
                    *expect.entry(Word::new(word)).or_insert(0) += 1;
                }
                assert_eq!(shuffle_words(u, v), expect, "u={u} v={v}");
            }
        }
    }

    #[test]
    fn shuffle_term_count_with_distinct_letters() {
        let u = w(&[1, 2]);
        let v = w(&[3, 4, 5]);
        let total: u64 = shuffle_words(&u, &v).values().sum();
        assert_eq!(total, 10); // binom(5, 2)
        assert_eq!(shuffle_words(&u, &v).len(), 10);
        // and the product is homogeneous of the summed degree
        let p = shuffle(&u, &v);
        assert_eq!(p.homogeneous_degree().unwrap(), Some(u.degree() + v.degree()));
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct(&Word::empty());
        let mut expect = WordTensor::zero();
        expect.add_term(Word::empty(), Word::empty(), rat(1, 1));
        assert_eq!(d, expect);

        let d = coproduct(&w(&[1, 2]));
        let mut expect = WordTensor::zero();
        expect.add_term(w(&[1, 2]), Word::empty(), rat(1, 1));
        expect.add_term(Word::empty(), w(&[1, 2]), rat(1, 1));
        expect.add_term(w(&[1]), w(&[2]), rat(1, 1));
        assert_eq!(d, expect);
    }

    #[test]
    fn antipode_examples() {
        let p = NcPoly::term(w(&[1, 2]), rat(1, 1)).antipode();
        assert_eq!(p, NcPoly::term(w(&[2, 1]), rat(1, 1)));
        let p = NcPoly::term(w(&[1, 1, 2]), rat(1, 1)).antipode();
        assert_eq!(p, NcPoly::term(w(&[2, 1, 1]), rat(-1, 1)));
        let e: NcPoly<Rat> = NcPoly::one();
        assert_eq!(e.antipode(), NcPoly::one());
    }

    #[test]
    fn counit_examples() {
        let mut p = NcPoly::term(Word::empty(), rat(3, 1));
        p.add_term(w(&[1]), rat(5, 1));
        assert_eq!(p.counit(), rat(3, 1));
        assert_eq!(NcPoly::term(w(&[2, 1]), rat(1, 1)).counit(), rat(0, 1));
    }

    #[test]
    fn concat_product_convention() {
        // X_1 * X_2 = monomial X_1 X_2 = word (2,1)
        let x1 = NcPoly::term(w(&[1]), rat(1, 1));
        let x2 = NcPoly::term(w(&[2]), rat(1, 1));
        assert_eq!(x1.concat_mul(&x2), NcPoly::term(w(&[2, 1]), rat(1, 1)));
        assert_eq!(format_x_word(&w(&[2, 1])), "X1*X2");
        // I is a two-sided unit
        let p = x1.add(&x2);
        assert_eq!(NcPoly::one().concat_mul(&p), p);
        assert_eq!(p.concat_mul(&NcPoly::one()), p);
    }

    #[test]
    fn shuffle_is_commutative_and_associative_small() {
        let words = words_up_to(4);
        for u in &words {
            for v in &words {
                if u.degree() + v.degree() > 4 {
                    continue;
                }
                assert_eq!(shuffle(u, v), shuffle(v, u));
            }
        }
        for u in &words {
            for v in &words {
                for t in &words {
                    if u.degree() + v.degree() + t.degree() > 4 {
                        continue;
                    }
                    let pu = NcPoly::term(u.clone(), Rat::one());
                    let pv = NcPoly::term(v.clone(), Rat::one());
                    let pt = NcPoly::term(t.clone(), Rat::one());
                    assert_eq!(
                        pu.shuffle_mul(&pv).shuffle_mul(&pt),
                        pu.shuffle_mul(&pv.shuffle_mul(&pt))
                    );
                }
            }
        }
    }

    #[test]
    fn radford_small_degrees() {
        assert!(verify_radford(1).unwrap());
        assert!(verify_radford(2).unwrap());
        assert!(verify_radford(4).unwrap());
        assert!(verify_radford(0).is_err());
    }

    #[test]
    fn display_forms() {
        let mut p = NcPoly::term(w(&[3]), rat(1, 1));
        p.add_term(w(&[1, 2]), rat(3, 1));
        p.add_term(w(&[2, 1]), rat(2, 1));
        p.add_term(w(&[1, 1, 1]), rat(6, 1));
        assert_eq!(poly_to_x_string(&p), "X3 + 3*X2*X1 + 2*X1*X2 + 6*X1*X1*X1");
        assert_eq!(poly_to_string(&p), "[3] + 3*[1.2] + 2*[2.1] + 6*[1.1.1]");
        let z: NcPoly<Rat> = NcPoly::zero();
        assert_eq!(poly_to_string(&z), "0");
    }
}
