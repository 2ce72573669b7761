//! Differentiation and left-translation operators on truncated polynomial
//! space, word-operator evaluation, the operator identity behind the
//! augmentation closed form, and the operator-valued integrals I_i(a) with
//! their two independent evaluation routes.

use crate::displacement::p_factor_at;
use crate::error::{Error, Result};
use crate::exact::{big_to_rat, factorial, rat_int, Rat, Scalar};
use crate::fdb::bell_eval;
use crate::paths::{iterated_integral, CoeffPath};
use crate::report::IdentityReport;
use crate::returnmap::{return_map, ReturnMapMethod};
use crate::words::{enumerate_words, Word};

/// A polynomial Σ c_k z^k in a fixed ambient space of degree <= M;
/// trailing zeros are permitted (the dimension is part of the type's state).
#[derive(Debug, Clone, PartialEq)]
pub struct PolySpaceVec {
    coeffs: Vec<Rat>,
}

impl PolySpaceVec {
    pub fn zero(max_degree: usize) -> Self {
        PolySpaceVec { coeffs: vec![Rat::zero(); max_degree + 1] }
    }

    /// The basis vector z^m.
    pub fn basis(m: usize, max_degree: usize) -> Result<Self> {
        if m > max_degree {
            return Err(Error::InvalidInput(format!(
                "z^{m} does not fit in the degree-{max_degree} ambient space"
            )));
        }
        let mut v = Self::zero(max_degree);
        v.coeffs[m] = Rat::one();
        Ok(v)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Differentiation: c_k ← (k+1) c_{k+1}.
    pub fn apply_d(&self) -> Self {
        let mut out = Self::zero(self.coeffs.len() - 1);
        for k in 0..self.coeffs.len() - 1 {
            out.coeffs[k] = &self.coeffs[k + 1] * rat_int(k as i64 + 1);
        }
        out
    }

    /// Left translation: c_k ← c_{k+1}.
    pub fn apply_l(&self) -> Self {
        let mut out = Self::zero(self.coeffs.len() - 1);
        for k in 0..self.coeffs.len() - 1 {
            out.coeffs[k] = self.coeffs[k + 1].clone();
        }
        out
    }

    /// D L^power.
    pub fn apply_dl(&self, power: u32) -> Self {
        let mut v = self.clone();
        for _ in 0..power {
            v = v.apply_l();
        }
        v.apply_d()
    }

    pub fn add(&self, other: &Self) -> Self {
        PolySpaceVec {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        PolySpaceVec {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, by: &Rat) -> Self {
        PolySpaceVec { coeffs: self.coeffs.iter().map(|c| c * by).collect() }
    }
}

/// Apply the word operator D L^{c_k - 1} ··· D L^{c_1 - 1} to z^m (the
/// factor indexed by the first letter acts first). Returns the scalar and
/// the exponent m - deg(c); the scalar is p_c(m) when m >= deg(c) and 0
/// otherwise (the operator kills too-low powers).
pub fn apply_word_operator(c: &Word, m: u32) -> (Rat, i64) {
    let target = m as i64 - c.degree() as i64;
    let mut exponent = m as i64;
    let mut scalar = Rat::one();
    for &l in c.letters() {
        // L^{l-1} then D
        exponent -= l as i64 - 1;
        if exponent < 0 {
            return (Rat::zero(), target);
        }
        scalar *= rat_int(exponent);
        exponent -= 1;
        if scalar.is_zero() {
            return (Rat::zero(), target);
        }
    }
    (scalar, target)
}

/// Check [D L^i, D L^j] = (i - j) D L^{i+j+1} on every basis vector z^m,
/// m <= M, by honest operator application.
pub fn commutator_check(i: u32, j: u32, max_degree: u32) -> Result<bool> {
    if max_degree < i + j + 2 {
        return Err(Error::InvalidInput(format!(
            "commutator_check needs M >= {}, got {max_degree}",
            i + j + 2
        )));
    }
    let m = max_degree as usize;
    for k in 0..=m {
        let zk = PolySpaceVec::basis(k, m)?;
        let lhs = zk.apply_dl(j).apply_dl(i).sub(&zk.apply_dl(i).apply_dl(j));
        let rhs = zk.apply_dl(i + j + 1).scale(&rat_int(i as i64 - j as i64));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check Σ over compositions c of i of x^{|c|} D L^{c_1-1} ··· D L^{c_k-1}
/// = x D (L + x D)^{i-1} on z^m, m <= M. The left side composes the factors
/// in the reversed order relative to [`apply_word_operator`]; summed over
/// all compositions the two orderings coincide, which this check also
/// exercises.
pub fn operator_polynomial_check(i: u32, x: &Rat, max_degree: u32) -> Result<bool> {
    if max_degree < i {
        return Err(Error::InvalidInput(format!(
            "operator_polynomial_check needs M >= {i}, got {max_degree}"
        )));
    }
    let m = max_degree as usize;
    for k in 0..=m {
        let zk = PolySpaceVec::basis(k, m)?;
        // LHS: rightmost factor DL^{c_k - 1} acts first
        let mut lhs = PolySpaceVec::zero(m);
        for c in enumerate_words(i) {
            let mut v = zk.clone();
            for &l in c.letters().iter().rev() {
                v = v.apply_dl(l - 1);
            }
            lhs = lhs.add(&v.scale(&Scalar::pow(x, c.len() as u32)));
        }
        // RHS: x D (L + x D)^{i-1}
        let mut v = zk.clone();
        for _ in 0..i - 1 {
            v = v.apply_l().add(&v.apply_d().scale(x));
        }
        let rhs = v.apply_d().scale(x);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The scalar multiplying z^{m-i} in I_i(a)(z^m), where I_i(a) is the
/// degree-i coefficient of the fundamental solution acting on polynomial
/// space: computed BOTH as Σ_c p_c(m) I_c(a) and through the Bell closed
/// form ((m-i+1)!/(m+1)!) B_{m+1,m-i+1}(1, 2!p_1(a), ..., (i+1)!p_i(a)).
/// Disagreement is an internal error. Zero when m < i.
pub fn i_op_value(a: &CoeffPath, i: u32, m: u32) -> Result<Rat> {
    if i == 0 {
        return Err(Error::InvalidInput("i_op_value needs i >= 1".into()));
    }
    let mut composition_sum = Rat::zero();
    for c in enumerate_words(i) {
        let (scalar, _) = apply_word_operator(&c, m);
        if scalar.is_zero() {
            continue;
        }
        composition_sum += scalar * iterated_integral(a, &c);
    }
    if m < i {
        if !composition_sum.is_zero() {
            return Err(Error::Internal(format!(
                "i_op_value: nonzero composition sum below the diagonal (i={i}, m={m})"
            )));
        }
        return Ok(Rat::zero());
    }
    let series = return_map(a, i, ReturnMapMethod::Integrals);
    let mut args = vec![Rat::one()];
    for j in 2..=(i + 1) {
        args.push(big_to_rat(factorial(j)) * series.coeff(j - 1));
    }
    let bell: Rat = bell_eval(m + 1, m - i + 1, &args)?;
    let closed = bell * big_to_rat(factorial(m - i + 1)) / big_to_rat(factorial(m + 1));
    if closed != composition_sum {
        return Err(Error::Internal(format!(
            "i_op_value routes disagree at i={i}, m={m}: sum {} vs Bell {}",
            crate::exact::rat_to_string(&composition_sum),
            crate::exact::rat_to_string(&closed)
        )));
    }
    Ok(composition_sum)
}

/// Word-operator scalars against the composition coefficients, degree by
/// degree: the content of the operator representation.
pub fn verify_word_operator(max_degree: u32, max_m: u32) -> IdentityReport {
    let mut report = IdentityReport::new("word-operator");
    for d in 1..=max_degree {
        let mut ok = true;
        let mut diff = String::new();
        for c in enumerate_words(d) {
            for m in 0..=max_m {
                let (scalar, exp) = apply_word_operator(&c, m);
                let expect = if m >= d { p_factor_at(&c, &rat_int(m as i64)) } else { Rat::zero() };
                if scalar != expect || exp != m as i64 - d as i64 {
                    ok = false;
                    diff = format!("word {c}, m={m}: operator gave {scalar:?}");
                    break;
                }
            }
        }
        report.push(d, ok, || diff.clone());
    }
    report
}

/// Dual-route agreement for I_i(a)(z^m) over a given path.
pub fn verify_dual_routes(a: &CoeffPath, max_i: u32, max_m: u32) -> IdentityReport {
    let mut report = IdentityReport::new("operator-integral routes");
    for i in 1..=max_i {
        let mut failure = None;
        for m in 0..=max_m {
            if let Err(e) = i_op_value(a, i, m) {
                failure = Some(format!("m={m}: {e}"));
                break;
            }
        }
        match failure {
            None => report.push_ok(i),
            Some(f) => report.push_fail(i, f),
        }
    }
    report
}
