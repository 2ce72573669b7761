//! Words over the graded alphabet {α_1, α_2, ...}: compositions, the
//! canonical order, Lyndon words, and the Witt–Möbius dimension formula.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::moebius;

/// A word: a finite (possibly empty) sequence of positive integer letters,
/// read as a composition of its degree. Letter `i` stands for the degree-i
/// alphabet element, so deg(w) is the sum of the letters.
///
/// The derived order is the canonical one used everywhere for deterministic
/// output: by degree, then by length, then lexicographic on the letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l > 0), "letters are positive");
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(letter: u32) -> Self {
        Word(vec![letter])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Prepend one letter.
    pub fn cons(&self, letter: u32) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// Append one letter.
    pub fn push(&self, letter: u32) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn reverse(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// (prefix of length j, suffix), for j = 0..=len.
    pub fn split_at(&self, j: usize) -> (Word, Word) {
        (Word(self.0[..j].to_vec()), Word(self.0[j..].to_vec()))
    }

    /// Plain lexicographic comparison on letter sequences (a proper prefix
    /// precedes its extensions); this is the order Lyndon words are defined
    /// against, not the canonical one.
    pub fn lex_cmp(&self, other: &Word) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub fn rotation(&self, k: usize) -> Word {
        let n = self.0.len();
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// All compositions of n in canonical order (shorter first, then
/// lexicographic); 2^(n-1) of them for n >= 1, and just the empty word
/// for n = 0.
pub fn enumerate_words(n: u32) -> Vec<Word> {
    if n == 0 {
        return vec![Word::empty()];
    }
    let mut out = Vec::with_capacity(1usize << (n - 1));
    for parts in 1..=n {
        compositions_into(n, parts, &mut Vec::new(), &mut out);
    }
    out
}

fn compositions_into(rest: u32, parts: u32, prefix: &mut Vec<u32>, out: &mut Vec<Word>) {
    if parts == 1 {
        prefix.push(rest);
        out.push(Word::new(prefix.clone()));
        prefix.pop();
        return;
    }
    // leave at least 1 for each remaining part
    for first in 1..=(rest - parts + 1) {
        prefix.push(first);
        compositions_into(rest - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// All words of degree <= n, in canonical order.
pub fn words_up_to(n: u32) -> Vec<Word> {
    (0..=n).flat_map(enumerate_words).collect()
}

/// True iff all rotations of w are pairwise distinct and w is strictly
/// lexicographically smallest among them. Errors on the empty word.
pub fn is_lyndon(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::InvalidInput("is_lyndon on the empty word".into()));
    }
    for k in 1..w.len() {
        if w.lex_cmp(&w.rotation(k)) != Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All Lyndon words of degree <= max_degree, grouped by degree, each degree
/// group in canonical order. Generated by filtering the full enumeration;
/// at these sizes an oracle-simple filter beats a dedicated generator.
pub fn lyndon_words(max_degree: u32) -> Vec<Vec<Word>> {
    (1..=max_degree)
        .map(|d| {
            enumerate_words(d)
                .into_iter()
                .filter(|w| is_lyndon(w).unwrap())
                .collect()
        })
        .collect()
}

/// Dimension of the degree-n homogeneous component of the free Lie algebra
/// sitting inside the graded dual: (1/n) * sum over d | n of (2^(n/d) - 1) μ(d).
pub fn witt_dimension(n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("witt_dimension(0) is undefined".into()));
    }
    let mut acc: i128 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            let pw = (1i128 << (n / d)) - 1;
            acc += pw * moebius(d as u64)? as i128;
        }
    }
    if acc % n as i128 != 0 || acc < 0 {
        return Err(Error::Internal(format!(
            "witt_dimension({n}) produced non-integral value {acc}/{n}"
        )));
    }
    Ok((acc / n as i128) as u64)
}
