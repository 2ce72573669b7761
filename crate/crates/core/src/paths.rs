//! Piecewise-polynomial coefficient paths with rational data, the path
//! semigroup (concatenation and inverse), exact iterated integrals over the
//! simplex, and the truncated Chen map. Everything here is exact: paths are
//! piecewise polynomial, so every integral is a rational number.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::dual::TruncatedFunctional;
use crate::error::{Error, Result};
use crate::exact::{parse_rat, rat_to_f64, rat_to_string, Rat, Scalar, UniPoly};
use crate::words::Word;

/// One coefficient function: polynomial pieces on a strictly increasing
/// rational breakpoint grid spanning exactly [0, T].
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePolyFn {
    breaks: Vec<Rat>,
    pieces: Vec<UniPoly>,
}

impl PiecewisePolyFn {
    pub fn new(breaks: Vec<Rat>, pieces: Vec<UniPoly>) -> Result<Self> {
        if breaks.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(Error::InvalidInput(
                "piecewise function needs n+1 breakpoints for n >= 1 pieces".into(),
            ));
        }
        if !breaks[0].is_zero() {
            return Err(Error::InvalidInput("first breakpoint must be 0".into()));
        }
        for pair in breaks.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::InvalidInput(
                    "breakpoints must be strictly increasing".into(),
                ));
            }
        }
        Ok(PiecewisePolyFn { breaks, pieces })
    }

    pub fn zero(horizon: Rat) -> Self {
        PiecewisePolyFn {
            breaks: vec![Rat::zero(), horizon],
            pieces: vec![UniPoly::zero()],
        }
    }

    pub fn constant(horizon: Rat, c: Rat) -> Self {
        Self::from_poly(horizon, UniPoly::constant(c))
    }

    /// A single polynomial piece on [0, T].
    pub fn from_poly(horizon: Rat, p: UniPoly) -> Self {
        PiecewisePolyFn {
            breaks: vec![Rat::zero(), horizon],
            pieces: vec![p],
        }
    }

    pub fn horizon(&self) -> &Rat {
        self.breaks.last().unwrap()
    }

    pub fn breaks(&self) -> &[Rat] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[UniPoly] {
        &self.pieces
    }

    pub fn is_zero_fn(&self) -> bool {
        self.pieces.iter().all(|p| p.is_zero())
    }

    /// Value at a point; at an interior breakpoint the right piece wins
    /// (immaterial for integration).
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut idx = self.pieces.len() - 1;
        for (j, b) in self.breaks[1..].iter().enumerate() {
            if x < b {
                idx = j;
                break;
            }
        }
        self.pieces[idx].eval(x)
    }

    /// Rebuild on a refined grid that must contain all current breakpoints.
    fn on_grid(&self, grid: &[Rat]) -> PiecewisePolyFn {
        let mut pieces = Vec::with_capacity(grid.len() - 1);
        let mut j = 0;
        for win in grid.windows(2) {
            while self.breaks[j + 1] <= win[0] && j + 1 < self.breaks.len() - 1 {
                j += 1;
            }
            pieces.push(self.pieces[j].clone());
        }
        PiecewisePolyFn { breaks: grid.to_vec(), pieces }
    }

    fn merged_grid(&self, other: &Self) -> Vec<Rat> {
        let mut grid: Vec<Rat> = self.breaks.iter().chain(other.breaks.iter()).cloned().collect();
        grid.sort();
        grid.dedup();
        grid
    }

    pub fn add(&self, other: &Self) -> PiecewisePolyFn {
        let grid = self.merged_grid(other);
        let a = self.on_grid(&grid);
        let b = other.on_grid(&grid);
        PiecewisePolyFn {
            breaks: grid,
            pieces: a.pieces.iter().zip(&b.pieces).map(|(p, q)| p.add(q)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> PiecewisePolyFn {
        let grid = self.merged_grid(other);
        let a = self.on_grid(&grid);
        let b = other.on_grid(&grid);
        PiecewisePolyFn {
            breaks: grid,
            pieces: a.pieces.iter().zip(&b.pieces).map(|(p, q)| p.mul(q)).collect(),
        }
    }

    pub fn neg(&self) -> PiecewisePolyFn {
        PiecewisePolyFn {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(|p| p.neg()).collect(),
        }
    }

    pub fn scale(&self, by: &Rat) -> PiecewisePolyFn {
        PiecewisePolyFn {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(by)).collect(),
        }
    }

    /// x ↦ ∫_0^x f, continuous, piecewise polynomial on the same grid.
    pub fn cumulative_integral(&self) -> PiecewisePolyFn {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        let mut acc = Rat::zero();
        for (j, p) in self.pieces.iter().enumerate() {
            let anti = p.antiderivative();
            let left = anti.eval(&self.breaks[j]);
            // anti(x) - anti(b_j) + acc
            let piece = anti.add(&UniPoly::constant(acc.clone() - &left));
            acc = piece.eval(&self.breaks[j + 1]);
            pieces.push(piece);
        }
        PiecewisePolyFn { breaks: self.breaks.clone(), pieces }
    }

    /// ∫_0^T f.
    pub fn integral(&self) -> Rat {
        let c = self.cumulative_integral();
        c.pieces.last().unwrap().eval(c.horizon())
    }

    /// Crude upper bound on sup |f| over [0, T], for numeric tail estimates.
    pub fn sup_bound_f64(&self) -> f64 {
        let mut best: f64 = 0.0;
        for (j, p) in self.pieces.iter().enumerate() {
            let m = rat_to_f64(&self.breaks[j + 1]).abs().max(rat_to_f64(&self.breaks[j]).abs());
            let mut acc = 0.0;
            let mut pw = 1.0;
            for c in p.coeffs() {
                acc += rat_to_f64(c).abs() * pw;
                pw *= m.max(1e-30);
            }
            best = best.max(acc);
        }
        best
    }
}

/// A coefficient path: horizon T and finitely many coefficient functions
/// a_1, ..., a_M sharing it; a_i = 0 beyond the stored support.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffPath {
    horizon: Rat,
    coeffs: Vec<PiecewisePolyFn>,
}

impl CoeffPath {
    pub fn zero(horizon: Rat) -> Result<Self> {
        if horizon <= Rat::zero() {
            return Err(Error::InvalidInput("horizon must be positive".into()));
        }
        Ok(CoeffPath { horizon, coeffs: Vec::new() })
    }

    /// Build from (index, function) pairs; unlisted indices are zero.
    pub fn from_parts(horizon: Rat, parts: Vec<(u32, PiecewisePolyFn)>) -> Result<Self> {
        let mut path = Self::zero(horizon)?;
        let mut seen = std::collections::BTreeSet::new();
        for (index, f) in parts {
            if index == 0 {
                return Err(Error::InvalidInput("coefficient indices start at 1".into()));
            }
            if !seen.insert(index) {
                return Err(Error::InvalidInput(format!("duplicate coefficient index {index}")));
            }
            if f.horizon() != &path.horizon {
                return Err(Error::InvalidInput(format!(
                    "coefficient {index} spans [0, {}] but the path horizon is {}",
                    rat_to_string(f.horizon()),
                    rat_to_string(&path.horizon)
                )));
            }
            path.set_coeff(index, f);
        }
        Ok(path)
    }

    pub fn horizon(&self) -> &Rat {
        &self.horizon
    }

    pub fn set_coeff(&mut self, index: u32, f: PiecewisePolyFn) {
        let idx = index as usize - 1;
        while self.coeffs.len() <= idx {
            self.coeffs.push(PiecewisePolyFn::zero(self.horizon.clone()));
        }
        self.coeffs[idx] = f;
    }

    /// a_index, with indices starting at 1; zero beyond the support.
    pub fn coeff(&self, index: u32) -> PiecewisePolyFn {
        self.coeffs
            .get(index as usize - 1)
            .cloned()
            .unwrap_or_else(|| PiecewisePolyFn::zero(self.horizon.clone()))
    }

    /// Largest index with a nonzero coefficient function.
    pub fn max_index(&self) -> u32 {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .find(|(_, f)| !f.is_zero_fn())
            .map(|(i, _)| i as u32 + 1)
            .unwrap_or(0)
    }

    pub fn is_zero_path(&self) -> bool {
        self.max_index() == 0
    }
}

/// Semigroup product: b runs on [0, T/2] (first), a on (T/2, T], both
/// rescaled by 2 so integrals are preserved. Not associative.
pub fn path_concat(a: &CoeffPath, b: &CoeffPath) -> Result<CoeffPath> {
    if a.horizon != b.horizon {
        return Err(Error::InvalidInput(format!(
            "path horizons differ: {} vs {}",
            rat_to_string(&a.horizon),
            rat_to_string(&b.horizon)
        )));
    }
    let t = a.horizon.clone();
    let top = a.coeffs.len().max(b.coeffs.len());
    let mut out = CoeffPath::zero(t.clone())?;
    for index in 1..=top as u32 {
        let fa = a.coeff(index);
        let fb = b.coeff(index);
        if fa.is_zero_fn() && fb.is_zero_fn() {
            continue;
        }
        let two = crate::exact::rat_int(2);
        let mut breaks = Vec::new();
        let mut pieces = Vec::new();
        // first half: 2 b(2x) on [u/2, v/2]
        for (j, p) in fb.pieces.iter().enumerate() {
            breaks.push(&fb.breaks[j] / &two);
            pieces.push(p.compose(&UniPoly::linear(Rat::zero(), two.clone())).scale(&two));
        }
        // second half: 2 a(2x - T) on [(u+T)/2, (v+T)/2]
        for (j, p) in fa.pieces.iter().enumerate() {
            breaks.push((&fa.breaks[j] + &t) / &two);
            pieces.push(p.compose(&UniPoly::linear(-t.clone(), two.clone())).scale(&two));
        }
        breaks.push(t.clone());
        out.set_coeff(index, PiecewisePolyFn::new(breaks, pieces)?);
    }
    Ok(out)
}

/// Semigroup inverse: a_i^{-1}(x) = -a_i(T - x).
pub fn path_inverse(a: &CoeffPath) -> CoeffPath {
    let t = a.horizon.clone();
    let mut out = CoeffPath::zero(t.clone()).expect("horizon already validated");
    for (idx, f) in a.coeffs.iter().enumerate() {
        if f.is_zero_fn() {
            continue;
        }
        let n = f.pieces.len();
        let mut breaks = Vec::with_capacity(n + 1);
        let mut pieces = Vec::with_capacity(n);
        for j in (0..n).rev() {
            breaks.push(&t - &f.breaks[j + 1]);
            // -p(T - x)
            pieces.push(
                f.pieces[j]
                    .compose(&UniPoly::linear(t.clone(), -Rat::one()))
                    .neg(),
            );
        }
        breaks.push(t.clone());
        out.set_coeff(idx as u32 + 1, PiecewisePolyFn::new(breaks, pieces).unwrap());
    }
    out
}

/// Basic iterated integral over the simplex 0 <= s_1 <= ... <= s_k <= T,
/// with the letter c_j attached to the time s_j. Computed by the
/// inner-to-outer recursion G_j(x) = ∫_0^x a_{c_j} G_{j-1}; the empty word
/// gives 1.
pub fn iterated_integral(a: &CoeffPath, c: &Word) -> Rat {
    let mut g = PiecewisePolyFn::constant(a.horizon.clone(), Rat::one());
    for &letter in c.letters() {
        g = a.coeff(letter).mul(&g).cumulative_integral();
    }
    g.pieces.last().unwrap().eval(g.horizon())
}

/// The Chen map truncated at degree N: the functional w ↦ I_w(a). Prefix
/// integrals are shared across words, so each simplex integral is computed
/// once.
pub fn chen_map(a: &CoeffPath, order: u32) -> TruncatedFunctional {
    let mut values: BTreeMap<Word, Rat> = BTreeMap::new();
    let unit = PiecewisePolyFn::constant(a.horizon.clone(), Rat::one());
    values.insert(Word::empty(), Rat::one());
    fn extend(
        a: &CoeffPath,
        g: &PiecewisePolyFn,
        prefix: &Word,
        budget: u32,
        values: &mut BTreeMap<Word, Rat>,
    ) {
        for letter in 1..=budget {
            let next = a.coeff(letter).mul(g).cumulative_integral();
            let word = prefix.push(letter);
            values.insert(word.clone(), next.pieces.last().unwrap().eval(next.horizon()));
            extend(a, &next, &word, budget - letter, values);
        }
    }
    extend(a, &unit, &Word::empty(), order, &mut values);
    TruncatedFunctional::from_fn(order, |w| values.get(w).cloned().unwrap_or_else(Rat::zero))
}

/// Serialize to the path JSON schema with exact rational strings.
pub fn path_to_json(a: &CoeffPath) -> Value {
    let mut coefficients = Vec::new();
    for (idx, f) in a.coeffs.iter().enumerate() {
        if f.is_zero_fn() {
            continue;
        }
        let pieces: Vec<Value> = (0..f.pieces.len())
            .map(|j| {
                json!({
                    "from": rat_to_string(&f.breaks[j]),
                    "to": rat_to_string(&f.breaks[j + 1]),
                    "poly": f.pieces[j].coeffs().iter().map(rat_to_string).collect::<Vec<_>>(),
                })
            })
            .collect();
        coefficients.push(json!({ "index": idx as u32 + 1, "pieces": pieces }));
    }
    json!({ "T": rat_to_string(&a.horizon), "coefficients": coefficients })
}

/// Parse and validate the path JSON schema: pieces must tile [0, T] exactly.
pub fn path_from_json(v: &Value) -> Result<CoeffPath> {
    let bad = |msg: &str| Error::InvalidInput(format!("path file: {msg}"));
    let obj = v.as_object().ok_or_else(|| bad("top level must be an object"))?;
    let horizon = parse_rat(
        obj.get("T")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing string field T"))?,
    )?;
    if horizon <= Rat::zero() {
        return Err(bad("T must be positive"));
    }
    let mut parts = Vec::new();
    let coefficients = obj
        .get("coefficients")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array field coefficients"))?;
    for entry in coefficients {
        let index = entry
            .get("index")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("coefficient entry needs an integer index"))?;
        if index == 0 {
            return Err(bad("coefficient indices start at 1"));
        }
        if index > 64 {
            return Err(bad("coefficient indices above 64 are outside desk scale"));
        }
        let pieces_json = entry
            .get("pieces")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("coefficient entry needs a pieces array"))?;
        if pieces_json.is_empty() {
            return Err(bad("pieces must tile [0, T]; empty list given"));
        }
        let mut breaks = Vec::with_capacity(pieces_json.len() + 1);
        let mut pieces = Vec::with_capacity(pieces_json.len());
        for (j, pj) in pieces_json.iter().enumerate() {
            let from = parse_rat(pj.get("from").and_then(Value::as_str).ok_or_else(|| bad("piece needs from"))?)?;
            let to = parse_rat(pj.get("to").and_then(Value::as_str).ok_or_else(|| bad("piece needs to"))?)?;
            if j == 0 {
                if !from.is_zero() {
                    return Err(bad("first piece must start at 0"));
                }
                breaks.push(from);
            } else if breaks.last() != Some(&from) {
                return Err(bad("pieces must be contiguous"));
            }
            if to <= *breaks.last().unwrap() {
                return Err(bad("piece endpoints must increase"));
            }
            breaks.push(to);
            let coeffs = pj
                .get("poly")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("piece needs a poly array of rational strings"))?
                .iter()
                .map(|c| c.as_str().ok_or_else(|| bad("poly entries must be strings")).and_then(parse_rat))
                .collect::<Result<Vec<Rat>>>()?;
            pieces.push(UniPoly::from_coeffs(coeffs));
        }
        if breaks.last() != Some(&horizon) {
            return Err(bad("last piece must end at T"));
        }
        parts.push((index as u32, PiecewisePolyFn::new(breaks, pieces)?));
    }
    CoeffPath::from_parts(horizon, parts)
}

pub fn path_from_json_str(s: &str) -> Result<CoeffPath> {
    let v: Value = serde_json::from_str(s)
        .map_err(|e| Error::InvalidInput(format!("path file: invalid JSON: {e}")))?;
    path_from_json(&v)
}
