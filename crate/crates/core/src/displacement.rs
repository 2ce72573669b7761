//! Displacement polynomials P_i, their generalized one-parameter family
//! P~_i(·;t), truncations, recurrences, the Bell-polynomial identities they
//! satisfy in the shuffle algebra, augmentation values, and the composition
//! sums S_{i,k}(t).
//!
//! P_i = Σ over compositions c of i of p_c(i)·monomial(c), where p_c(t) is
//! the falling product over the partial sums of c. The same sparse data is
//! read in the concatenation algebra (X view) or the shuffle algebra
//! (word view), depending on the identity being checked.


use crate::error::{Error, Result};
use crate::exact::{
    big_to_rat, factorial, rat, rat_int, MultiPoly, Rat, Scalar, UniPoly, Var,
};
use crate::fdb::{bell_eval, genbell_eval};
use crate::report::IdentityReport;
use crate::shuffle::{
    coproduct_poly, rat_poly_to_t, NcPoly, ShuffleView, TPoly, WordTensor,
    WordsDisplay,
};
use crate::words::{enumerate_words, Word};

/// The coefficient polynomial of a composition: for c = (i_1, ..., i_k),
/// p_c(t) = (t - i_1 + 1)(t - i_1 - i_2 + 1)···(t - deg(c) + 1), one factor
/// per partial sum.
pub fn p_factor(c: &Word) -> UniPoly {
    p_factor_shifted(c, &Rat::zero())
}

/// p_c(t - shift) as a polynomial in t.
pub fn p_factor_shifted(c: &Word, shift: &Rat) -> UniPoly {
    let mut acc = UniPoly::constant(Rat::one());
    let mut partial: i64 = 0;
    for &l in c.letters() {
        partial += l as i64;
        acc = acc.mul(&UniPoly::linear(rat_int(1 - partial) - shift, Rat::one()));
    }
    acc
}

/// p_c evaluated at a rational t.
pub fn p_factor_at(c: &Word, t: &Rat) -> Rat {
    let mut acc = Rat::one();
    let mut partial: i64 = 0;
    for &l in c.letters() {
        partial += l as i64;
        acc *= t - rat_int(partial - 1);
    }
    acc
}

/// Construction route for polynomials that have both a defining sum and a
/// recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    Recurrence,
}

/// The displacement polynomial P_i, by the defining composition sum or by
/// the recurrence P_n = Σ_{j=1}^{n} (n-j+1) P_{n-j} X_j.
pub fn displacement(i: u32, method: Method) -> NcPoly<Rat> {
    match method {
        Method::Direct => {
            let t = rat_int(i as i64);
            let mut out = NcPoly::zero();
            for c in enumerate_words(i) {
                let coeff = p_factor_at(&c, &t);
                out.add_term(c, coeff);
            }
            out
        }
        Method::Recurrence => {
            let mut prev: Vec<NcPoly<Rat>> = vec![NcPoly::one()];
            for n in 1..=i {
                let mut pn = NcPoly::zero();
                for j in 1..=n {
                    let factor = rat_int((n - j + 1) as i64);
                    for (w, c) in prev[(n - j) as usize].terms() {
                        pn.add_term(w.cons(j), c * &factor);
                    }
                }
                prev.push(pn);
            }
            prev.pop().unwrap()
        }
    }
}

/// The generalized displacement polynomial P~_i(·;t) with symbolic t,
/// optionally pre-shifted: coefficients p_c(t - shift).
pub fn gen_displacement_shifted(i: u32, shift: &Rat) -> TPoly {
    let mut out = NcPoly::zero();
    for c in enumerate_words(i) {
        let coeff = p_factor_shifted(&c, shift);
        out.add_term(c, coeff);
    }
    out
}

pub fn gen_displacement(i: u32) -> TPoly {
    gen_displacement_shifted(i, &Rat::zero())
}

/// P~_i evaluated at a rational parameter value.
pub fn gen_displacement_at(i: u32, t0: &Rat) -> NcPoly<Rat> {
    let mut out = NcPoly::zero();
    for c in enumerate_words(i) {
        out.add_term(c.clone(), p_factor_at(&c, t0));
    }
    out
}

/// Truncated polynomial P_i^N: either alphabet truncation of P_i or the
/// truncated recurrence P_n^N = Σ_{j<=min(n,N)} (n-j+1) P_{n-j}^N X_j.
pub fn truncated_displacement(i: u32, n_letters: u32, method: Method) -> NcPoly<Rat> {
    match method {
        Method::Direct => displacement(i, Method::Direct).truncate_alphabet(n_letters),
        Method::Recurrence => {
            let mut prev: Vec<NcPoly<Rat>> = vec![NcPoly::one()];
            for n in 1..=i {
                let mut pn = NcPoly::zero();
                for j in 1..=n.min(n_letters) {
                    let factor = rat_int((n - j + 1) as i64);
                    for (w, c) in prev[(n - j) as usize].terms() {
                        pn.add_term(w.cons(j), c * &factor);
                    }
                }
                prev.push(pn);
            }
            prev.pop().unwrap()
        }
    }
}

/// Antipode image S(P_i) in the shuffle algebra: termwise signed reversal,
/// equal to Σ_c (-1)^{|c|} p_{reverse(c)}(i) · word(c).
pub fn antipode_image(i: u32) -> NcPoly<Rat> {
    displacement(i, Method::Direct).antipode()
}

/// P_1, ..., P_n lifted to symbolic-t coefficients, for use inside the
/// Bell evaluators; index 0 holds P_0 = 1.
fn displacement_family_t(n: u32) -> Vec<TPoly> {
    (0..=n)
        .map(|j| {
            if j == 0 {
                NcPoly::one()
            } else {
                rat_poly_to_t(&displacement(j, Method::Recurrence))
            }
        })
        .collect()
}

fn diff_t(lhs: &TPoly, rhs: &TPoly) -> String {
    format!(
        "lhs = {}\nrhs = {}",
        WordsDisplay(lhs),
        WordsDisplay(rhs)
    )
}

/// Shuffle-algebra scalar (t + c) ⧢ — the empty word with a linear
/// coefficient.
fn t_scalar(c: i64) -> ShuffleView<UniPoly> {
    ShuffleView(NcPoly::term(
        Word::empty(),
        UniPoly::linear(rat_int(c), Rat::one()),
    ))
}

/// Antipode expansion of P_i through Bell polynomials with shuffle products:
/// S(P_i) = (1/(i+1)!) Σ_{j=1}^{i} (-1)^j B_{i+j,j}(0, 2!P_1, ..., (i+1)!P_i).
fn antipode_bell_rhs(i: u32) -> Result<NcPoly<Rat>> {
    let family = displacement_family_t(i);
    let mut args: Vec<ShuffleView<Rat>> = vec![ShuffleView(NcPoly::zero())];
    for m in 2..=(i + 1) {
        let p = family[(m - 1) as usize].map_coeffs(|c| c.coeff(0));
        args.push(ShuffleView(p.scale_rat(&big_to_rat(factorial(m)))));
    }
    let mut acc: ShuffleView<Rat> = ShuffleView(NcPoly::zero());
    for j in 1..=i {
        let b = bell_eval(i + j, j, &args)?;
        let sign = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        acc = acc.add(&b.scale(&sign));
    }
    Ok(acc.0.scale_rat(&(Rat::one() / big_to_rat(factorial(i + 1)))))
}

/// Coproduct expansion of P_i through Bell polynomials: with this crate's
/// prefix ⊗ suffix decatenation, Δ(P_i) = Σ_{j=0}^{i} Q_{i,j} ⊗ P_j with
/// Q_{i,j} = ((j+1)!/(i+1)!) B_{i+1,j+1}(1, 2!P_1, ..., (i-j+1)!P_{i-j})
/// (shuffle products inside).
fn coproduct_bell_rhs(i: u32) -> Result<WordTensor<Rat>> {
    let family = displacement_family_t(i);
    let rat_family: Vec<NcPoly<Rat>> =
        family.iter().map(|p| p.map_coeffs(|c| c.coeff(0))).collect();
    let mut out = WordTensor::zero();
    for j in 0..=i {
        let mut args: Vec<ShuffleView<Rat>> = vec![ShuffleView(NcPoly::one())];
        for m in 2..=(i - j + 1) {
            args.push(ShuffleView(
                rat_family[(m - 1) as usize].scale_rat(&big_to_rat(factorial(m))),
            ));
        }
        let bell: ShuffleView<Rat> = bell_eval(i + 1, j + 1, &args)?;
        let q = bell
            .0
            .scale_rat(&(big_to_rat(factorial(j + 1)) / big_to_rat(factorial(i + 1))));
        out = out.add(&WordTensor::from_pair(&q, &rat_family[j as usize]));
    }
    Ok(out)
}

/// P~_i(·;t) expressed through the generalized Bell polynomials in the
/// shuffle algebra: B_i(P_1, ..., P_i, t-i+1).
fn genbell_shuffle_rhs(i: u32) -> Result<TPoly> {
    let family = displacement_family_t(i);
    let args: Vec<ShuffleView<UniPoly>> =
        (1..=i).map(|j| ShuffleView(family[j as usize].clone())).collect();
    let t_arg = t_scalar(1 - i as i64);
    Ok(genbell_eval(i, &args, &t_arg)?.0)
}

/// Right recurrence with parameter shifts:
/// P~_n(·;t) = Σ_{j=1}^{n} (t-j+1) · P~_{n-j}(·;t-j) · X_j.
/// `with_factor = false` gives the factorless variant, which is wrong for
/// n >= 2 and kept only as a regression pin.
pub fn right_recurrence_rhs(n: u32, with_factor: bool) -> TPoly {
    let mut out = NcPoly::zero();
    for j in 1..=n {
        let inner = gen_displacement_shifted(n - j, &rat_int(j as i64));
        let factor = UniPoly::linear(rat_int(1 - j as i64), Rat::one());
        for (w, c) in inner.terms() {
            let c = if with_factor { c.mul(&factor) } else { c.clone() };
            out.add_term(w.cons(j), c);
        }
    }
    out
}

/// Left recurrence: P~_n(·;t) = (t-n+1) · Σ_{j=1}^{n} X_j · P~_{n-j}(·;t).
fn left_recurrence_rhs(n: u32) -> TPoly {
    let mut out = NcPoly::zero();
    for j in 1..=n {
        let inner = gen_displacement(n - j);
        for (w, c) in inner.terms() {
            out.add_term(w.push(j), c.clone());
        }
    }
    let factor = UniPoly::linear(rat_int(1 - n as i64), Rat::one());
    out.map_coeffs(|c| c.mul(&factor))
}

/// Augmentation sum Σ_c p_c(t) x^{|c|} as a polynomial in x and t.
pub fn augmentation(i: u32) -> MultiPoly {
    let x = MultiPoly::var(Var::X);
    let mut out = MultiPoly::zero();
    for c in enumerate_words(i) {
        let p = MultiPoly::from_unipoly(&p_factor(&c), Var::T);
        out = out.add(&p.mul(&Scalar::pow(&x, c.len() as u32)));
    }
    out
}

/// Closed form of the augmentation sum:
/// (xt+1)(x(t-1)+1)···(x(t-i+2)+1) · x(t-i+1).
pub fn augmentation_closed(i: u32) -> MultiPoly {
    let x = MultiPoly::var(Var::X);
    let t = MultiPoly::var(Var::T);
    let mut acc = MultiPoly::one();
    for l in 0..i.saturating_sub(1) {
        let factor = x
            .mul(&t.sub(&MultiPoly::constant(rat_int(l as i64))))
            .add(&MultiPoly::one());
        acc = acc.mul(&factor);
    }
    acc.mul(&x.mul(&t.sub(&MultiPoly::constant(rat_int(i as i64 - 1)))))
}

/// Augmentation sum evaluated at rational x and t.
pub fn augmentation_at(i: u32, x: &Rat, t: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in enumerate_words(i) {
        acc += p_factor_at(&c, t) * Scalar::pow(x, c.len() as u32);
    }
    acc
}

/// S_{i,k}(t): the sum of p_c(t) over compositions of i with exactly k
/// parts, or its closed form through Stirling numbers of the first kind:
/// (t-i+1) Σ_{l=0}^{k-1} s(i-1, l+i-k) binom(l+i-k, l) t^l.
pub fn s_ik(i: u32, k: u32, method: Method) -> Result<UniPoly> {
    if k == 0 || k > i {
        return Err(Error::InvalidInput(format!("s_ik needs 1 <= k <= i, got k={k}, i={i}")));
    }
    match method {
        Method::Direct => {
            let mut acc = UniPoly::zero();
            for c in enumerate_words(i) {
                if c.len() == k as usize {
                    acc = acc.add(&p_factor(&c));
                }
            }
            Ok(acc)
        }
        Method::Recurrence => {
            let mut sum = UniPoly::zero();
            for l in 0..k {
                let s = crate::exact::stirling_first(i - 1, l + i - k);
                let b = crate::exact::binomial(l + i - k, l);
                let mut mono = vec![Rat::zero(); l as usize + 1];
                mono[l as usize] = big_to_rat(s * b);
                sum = sum.add(&UniPoly::from_coeffs(mono));
            }
            Ok(UniPoly::linear(rat_int(1 - (i as i64)), Rat::one()).mul(&sum))
        }
    }
}

/// Separable-example polynomial S_i(x,t) = Σ_{k=1}^{i} S_{i,k}(t) x^k / k!.
pub fn s_poly(i: u32) -> MultiPoly {
    let x = MultiPoly::var(Var::X);
    let mut out = MultiPoly::zero();
    for k in 1..=i {
        let sik = MultiPoly::from_unipoly(&s_ik(i, k, Method::Direct).unwrap(), Var::T);
        let term = sik
            .mul(&Scalar::pow(&x, k))
            .scale(&(Rat::one() / big_to_rat(factorial(k))));
        out = out.add(&term);
    }
    out
}

/// Check one named identity degree by degree, exactly; reports the first
/// divergence with both sides in canonical text.
pub fn verify_identity(name: &str, max_degree: u32) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(name);
    match name {
        "eq5.2a" => {
            for i in 1..=max_degree {
                let lhs = antipode_image(i);
                let rhs = antipode_bell_rhs(i)?;
                report.push(i, lhs == rhs, || {
                    format!("lhs = {}\nrhs = {}", WordsDisplay(&lhs), WordsDisplay(&rhs))
                });
            }
        }
        "eq5.2b" => {
            for i in 1..=max_degree {
                let lhs = coproduct_poly(&displacement(i, Method::Recurrence));
                let rhs = coproduct_bell_rhs(i)?;
                report.push(i, lhs == rhs, || {
                    let d = lhs.sub(&rhs);
                    let terms: Vec<String> = d
                        .terms()
                        .map(|((l, r), c)| format!("{} * {l}(x){r}", crate::exact::rat_to_string(c)))
                        .collect();
                    format!("difference = {}", terms.join(" + "))
                });
            }
        }
        "gpshuffle" => {
            for i in 1..=max_degree {
                let lhs = gen_displacement(i);
                let rhs = genbell_shuffle_rhs(i)?;
                report.push(i, lhs == rhs, || diff_t(&lhs, &rhs));
            }
        }
        "rec63" => {
            for n in 1..=max_degree {
                let lhs = gen_displacement(n);
                let rhs = right_recurrence_rhs(n, true);
                report.push(n, lhs == rhs, || diff_t(&lhs, &rhs));
            }
        }
        "rec64" => {
            for n in 1..=max_degree {
                let lhs = gen_displacement(n);
                let rhs = left_recurrence_rhs(n);
                report.push(n, lhs == rhs, || diff_t(&lhs, &rhs));
            }
        }
        "te67a" => {
            for i in 1..=max_degree {
                // cleared of the (t+1) denominator
                let t_plus_1 = UniPoly::linear(Rat::one(), Rat::one());
                let lhs = gen_displacement(i).map_coeffs(|c| c.mul(&t_plus_1));
                let family = displacement_family_t(i);
                let mut acc: TPoly = NcPoly::zero();
                for j in 1..=(i + 1) {
                    let shifted = gen_displacement_shifted(i + 1 - j, &rat_int(j as i64));
                    let prod = family[(j - 1) as usize].shuffle_mul(&shifted);
                    acc = acc.add(&prod.scale_rat(&rat_int(j as i64)));
                }
                let factor = UniPoly::linear(rat_int(1 - i as i64), Rat::one());
                let rhs = acc.map_coeffs(|c| c.mul(&factor));
                report.push(i, lhs == rhs, || diff_t(&lhs, &rhs));
            }
        }
        "te67b" => {
            for i in 1..=max_degree {
                let lhs = gen_displacement(i);
                let family = displacement_family_t(i);
                let mut rhs: TPoly = NcPoly::zero();
                for j in 1..=i {
                    let shifted = gen_displacement_shifted(i - j, &rat_int(j as i64));
                    let prod = family[j as usize].shuffle_mul(&shifted);
                    // (t-i+2) j/i - 1
                    let coeff = UniPoly::linear(
                        rat(j as i64 * (2 - i as i64), i as i64) - Rat::one(),
                        rat(j as i64, i as i64),
                    );
                    rhs = rhs.add(&prod.map_coeffs(|c| c.mul(&coeff)));
                }
                report.push(i, lhs == rhs, || diff_t(&lhs, &rhs));
            }
        }
        "eq625" => {
            for i in 1..=max_degree {
                let lhs = s_poly(i);
                let args: Vec<MultiPoly> = (1..=i)
                    .map(|j| s_poly(j).subst(Var::T, &MultiPoly::constant(rat_int(j as i64))))
                    .collect();
                let t_arg = MultiPoly::var(Var::T).sub(&MultiPoly::constant(rat_int(i as i64 - 1)));
                let rhs = genbell_eval(i, &args, &t_arg)?;
                report.push(i, lhs == rhs, || format!("lhs = {lhs}\nrhs = {rhs}"));
            }
        }
        _ => {
            return Err(Error::InvalidInput(format!("unknown identity name {name:?}")));
        }
    }
    Ok(report)
}

/// Direct-vs-recurrence agreement for P_i, degree by degree.
pub fn verify_devlin(max_degree: u32) -> IdentityReport {
    let mut report = IdentityReport::new("devlin");
    for i in 1..=max_degree {
        let lhs = displacement(i, Method::Direct);
        let rhs = displacement(i, Method::Recurrence);
        report.push(i, lhs == rhs, || {
            format!("direct = {}\nrecurrence = {}", WordsDisplay(&lhs), WordsDisplay(&rhs))
        });
    }
    report
}
