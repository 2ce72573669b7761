//! Named verification suites: every identity in scope is reachable by name,
//! so the whole battery is one loop over [`IDENTITY_NAMES`].

use crate::displacement::{self, Method};
use crate::dual::TruncatedFunctional;
use crate::error::{Error, Result};
use crate::exact::{big_to_rat, factorial, rat, rat_int, MultiPoly, Rat, Scalar, Var};
use crate::fixtures;
use crate::oprep;
use crate::paths::{chen_map, path_concat, path_inverse};
use crate::report::IdentityReport;
use crate::shuffle::{
    antipode_axiom_holds, coproduct, coproduct_poly, shuffle, shuffle_words, verify_radford,
    NcPoly,
};
use crate::words::{enumerate_words, lyndon_words, witt_dimension, words_up_to, Word};

/// Every identity name the `verify` surface accepts.
pub const IDENTITY_NAMES: &[&str] = &[
    "hopf-axioms",
    "radford",
    "witt-lyndon",
    "devlin",
    "eq5.2a",
    "eq5.2b",
    "gpshuffle",
    "rec63",
    "rec64",
    "te67a",
    "te67b",
    "eq625",
    "ree",
    "chen-mult",
    "prop64",
    "cor611",
    "prop6.10",
    "equ6.20",
];

/// The degree each suite is normally run to (the documented desk scale).
pub fn default_max_degree(name: &str) -> Option<u32> {
    Some(match name {
        "hopf-axioms" => 6,
        "radford" => 5,
        "witt-lyndon" => 12,
        "devlin" => 10,
        "eq5.2a" | "eq5.2b" => 5,
        "gpshuffle" => 6,
        "rec63" | "rec64" => 8,
        "te67a" | "te67b" => 5,
        "eq625" => 6,
        "ree" => 6,
        "chen-mult" => 5,
        "prop64" => 5,
        "cor611" => 10,
        "prop6.10" => 10,
        "equ6.20" => 5,
        _ => return None,
    })
}

/// Largest degree each suite accepts; beyond this the exhaustive sweeps
/// leave desk scale.
pub fn max_supported_degree(name: &str) -> Option<u32> {
    Some(match name {
        "hopf-axioms" => 8,
        "radford" => 7,
        "witt-lyndon" => 20,
        "devlin" => 14,
        "eq5.2a" | "eq5.2b" => 7,
        "gpshuffle" => 8,
        "rec63" | "rec64" => 12,
        "te67a" | "te67b" => 7,
        "eq625" => 8,
        "ree" => 8,
        "chen-mult" => 8,
        "prop64" => 8,
        "cor611" => 14,
        "prop6.10" => 14,
        "equ6.20" => 8,
        _ => return None,
    })
}

/// Run one named suite to the given degree.
pub fn run(name: &str, max_degree: u32) -> Result<IdentityReport> {
    if let Some(cap) = max_supported_degree(name) {
        if max_degree > cap {
            return Err(Error::InvalidInput(format!(
                "identity {name:?} is verified up to degree {cap}; {max_degree} requested"
            )));
        }
    }
    match name {
        "hopf-axioms" => Ok(hopf_axioms(max_degree)),
        "radford" => {
            let mut report = IdentityReport::new("radford");
            for n in 1..=max_degree {
                report.push(n, verify_radford(n)?, || {
                    "Lyndon shuffle monomials do not span".into()
                });
            }
            Ok(report)
        }
        "witt-lyndon" => {
            let mut report = IdentityReport::new("witt-lyndon");
            let groups = lyndon_words(max_degree);
            for n in 1..=max_degree {
                let count = groups[n as usize - 1].len() as u64;
                let dim = witt_dimension(n)?;
                report.push(n, count == dim, || {
                    format!("{count} Lyndon words vs dimension {dim}")
                });
            }
            Ok(report)
        }
        "devlin" => Ok(displacement::verify_devlin(max_degree)),
        "eq5.2a" | "eq5.2b" | "gpshuffle" | "rec63" | "rec64" | "te67a" | "te67b" | "eq625" => {
            displacement::verify_identity(name, max_degree)
        }
        "ree" => Ok(ree_suite(max_degree)),
        "chen-mult" => Ok(chen_mult_suite(max_degree)),
        "prop64" => Ok(oprep::verify_dual_routes(&fixtures::path_two_piece(), max_degree, 8)),
        "cor611" => Ok(stirling_suite(max_degree)),
        "prop6.10" => Ok(augmentation_suite(max_degree)),
        "equ6.20" => Ok(operator_polynomial_suite(max_degree)),
        other => Err(Error::InvalidInput(format!("unknown identity name {other:?}"))),
    }
}

/// Shuffle Hopf axioms, exhaustively per total degree: commutativity,
/// associativity, coassociativity, the bialgebra compatibility
/// Δ(u ⧢ v) = Δ(u) ⧢ Δ(v), and the antipode axiom.
fn hopf_axioms(max_degree: u32) -> IdentityReport {
    let mut report = IdentityReport::new("hopf-axioms");
    let words = words_up_to(max_degree);
    for d in 1..=max_degree {
        let mut failure: Option<String> = None;
        // commutativity and bialgebra compatibility over pairs of total degree d
        for u in words.iter().filter(|w| !w.is_empty() && w.degree() < d) {
            if failure.is_some() {
                break;
            }
            for v in words.iter().filter(|w| !w.is_empty() && w.degree() + u.degree() == d) {
                let uv = shuffle(u, v);
                if uv != shuffle(v, u) {
                    failure = Some(format!("commutativity fails at {u} ⧢ {v}"));
                    break;
                }
                let lhs = coproduct_poly(&uv);
                let rhs = coproduct(u).shuffle_mul(&coproduct(v));
                if lhs != rhs {
                    failure = Some(format!("bialgebra compatibility fails at {u}, {v}"));
                    break;
                }
            }
        }
        // associativity over triples of total degree d
        'outer: for u in words.iter().filter(|w| !w.is_empty() && w.degree() <= d) {
            if failure.is_some() {
                break;
            }
            for v in words.iter().filter(|w| !w.is_empty() && u.degree() + w.degree() < d) {
                for t in words
                    .iter()
                    .filter(|w| !w.is_empty() && u.degree() + v.degree() + w.degree() == d)
                {
                    let left = shuffle(u, v).shuffle_mul(&NcPoly::term(t.clone(), Rat::one()));
                    let right = NcPoly::term(u.clone(), Rat::one()).shuffle_mul(&shuffle(v, t));
                    if left != right {
                        failure = Some(format!("associativity fails at {u}, {v}, {t}"));
                        break 'outer;
                    }
                }
            }
        }
        // coassociativity and the antipode axiom on all words of degree d
        for w in words.iter().filter(|w| w.degree() == d) {
            if failure.is_some() {
                break;
            }
            if !coassociative(w) {
                failure = Some(format!("coassociativity fails at {w}"));
                break;
            }
            if !antipode_axiom_holds(w) {
                failure = Some(format!("antipode axiom fails at {w}"));
                break;
            }
        }
        match failure {
            None => report.push_ok(d),
            Some(f) => report.push_fail(d, f),
        }
    }
    report
}

/// (Δ ⊗ id)Δ = (id ⊗ Δ)Δ on one word, expanded into triples.
fn coassociative(w: &Word) -> bool {
    use std::collections::BTreeMap;
    let mut left: BTreeMap<(Word, Word, Word), Rat> = BTreeMap::new();
    let mut right: BTreeMap<(Word, Word, Word), Rat> = BTreeMap::new();
    for ((u, v), c) in coproduct(w).terms() {
        for j in 0..=u.len() {
            let (a, b) = u.split_at(j);
            *left.entry((a, b, v.clone())).or_insert_with(Rat::zero) += c;
        }
        for j in 0..=v.len() {
            let (a, b) = v.split_at(j);
            *right.entry((u.clone(), a, b)).or_insert_with(Rat::zero) += c;
        }
    }
    left.retain(|_, c| !c.is_zero());
    right.retain(|_, c| !c.is_zero());
    left == right
}

/// Ree's shuffle relation I_u I_v = I(u ⧢ v) on the fixed two-piece path,
/// grouped by total degree.
fn ree_suite(max_degree: u32) -> IdentityReport {
    let mut report = IdentityReport::new("ree");
    let path = fixtures::path_two_piece();
    let e = chen_map(&path, max_degree);
    let words = words_up_to(max_degree.saturating_sub(1));
    for d in 2..=max_degree {
        let mut failure = None;
        for u in words.iter().filter(|w| !w.is_empty() && w.degree() < d) {
            if failure.is_some() {
                break;
            }
            for v in words.iter().filter(|w| !w.is_empty() && w.degree() + u.degree() == d) {
                let lhs = e.value(u) * e.value(v);
                let mut rhs = Rat::zero();
                for (word, mult) in shuffle_words(u, v) {
                    rhs += e.value(&word) * rat_int(mult as i64);
                }
                if lhs != rhs {
                    failure = Some(format!("fails at {u}, {v}"));
                    break;
                }
            }
        }
        match failure {
            None => report.push_ok(d),
            Some(f) => report.push_fail(d, f),
        }
    }
    report
}

/// Chen-map functoriality on the fixed paths: multiplicativity under
/// concatenation, triviality on a ⧢ a^{-1}, and the character property,
/// compared degree by degree.
fn chen_mult_suite(max_degree: u32) -> IdentityReport {
    let mut report = IdentityReport::new("chen-mult");
    let a = fixtures::path_two_piece();
    let b = fixtures::path_mixed();
    let ab = path_concat(&a, &b).expect("same horizon");
    let ea = chen_map(&a, max_degree);
    let eb = chen_map(&b, max_degree);
    let eab = chen_map(&ab, max_degree);
    let conv = eb.convolve(&ea).expect("same order");
    let trivial = chen_map(
        &path_concat(&a, &path_inverse(&a)).expect("same horizon"),
        max_degree,
    );
    let unit = TruncatedFunctional::unit(max_degree);
    let group_like = ea.is_group_like();
    for d in 1..=max_degree {
        let mut failure = None;
        for w in enumerate_words(d) {
            if eab.value(&w) != conv.value(&w) {
                failure = Some(format!("multiplicativity fails at {w}"));
                break;
            }
            if trivial.value(&w) != unit.value(&w) {
                failure = Some(format!("a * a^-1 is not trivial at {w}"));
                break;
            }
        }
        if failure.is_none() && !group_like {
            failure = Some("chen map is not a character".into());
        }
        match failure {
            None => report.push_ok(d),
            Some(f) => report.push_fail(d, f),
        }
    }
    report
}

/// Composition sums vs the Stirling closed form, plus the special values
/// S_{i,k}(i-2) = -|s(i-1, i-k)| and the augmentation identity
/// Σ_k S_{i,k}(t) x^k = augmentation(i).
fn stirling_suite(max_degree: u32) -> IdentityReport {
    let mut report = IdentityReport::new("cor611");
    for i in 1..=max_degree {
        let mut failure = None;
        let x = MultiPoly::var(Var::X);
        let mut sum = MultiPoly::zero();
        for k in 1..=i {
            let direct = displacement::s_ik(i, k, Method::Direct).unwrap();
            let closed = displacement::s_ik(i, k, Method::Recurrence).unwrap();
            if direct != closed {
                failure = Some(format!("closed form differs at k={k}:\n  direct = {direct}\n  stirling = {closed}"));
                break;
            }
            let at = direct.eval(&rat_int(i as i64 - 2));
            let s = crate::exact::stirling_first(i - 1, i - k);
            let abs = if s < 0.into() { -s } else { s };
            if at != -big_to_rat(abs) {
                failure = Some(format!("special value fails at k={k}"));
                break;
            }
            sum = sum.add(&MultiPoly::from_unipoly(&direct, Var::T).mul(&Scalar::pow(&x, k)));
        }
        if failure.is_none() && sum != displacement::augmentation(i) {
            failure = Some("sum over k does not match the augmentation polynomial".into());
        }
        match failure {
            None => report.push_ok(i),
            Some(f) => report.push_fail(i, f),
        }
    }
    report
}

/// Augmentation closed form, symbolically in x and t, and the value
/// (i+1)!/2 at x = 1, t = i.
fn augmentation_suite(max_degree: u32) -> IdentityReport {
    let mut report = IdentityReport::new("prop6.10");
    for i in 1..=max_degree {
        let lhs = displacement::augmentation(i);
        let rhs = displacement::augmentation_closed(i);
        let special = displacement::augmentation_at(i, &Rat::one(), &rat_int(i as i64))
            == big_to_rat(factorial(i + 1)) / rat(2, 1);
        report.push(i, lhs == rhs && special, || {
            format!("lhs = {lhs}\nrhs = {rhs}\nspecial value ok: {special}")
        });
    }
    report
}

/// The operator identity Σ_c x^{|c|} DL^{c_1-1}···DL^{c_k-1} = xD(L+xD)^{i-1}
/// at x in {1, 1/2, -2}.
fn operator_polynomial_suite(max_degree: u32) -> IdentityReport {
    let mut report = IdentityReport::new("equ6.20");
    for i in 1..=max_degree {
        let mut failure = None;
        for x in [rat(1, 1), rat(1, 2), rat(-2, 1)] {
            match oprep::operator_polynomial_check(i, &x, i + 5) {
                Ok(true) => {}
                Ok(false) => {
                    failure = Some(format!("fails at x = {}", crate::exact::rat_to_string(&x)));
                    break;
                }
                Err(e) => {
                    failure = Some(e.to_string());
                    break;
                }
            }
        }
        match failure {
            None => report.push_ok(i),
            Some(f) => report.push_fail(i, f),
        }
    }
    report
}
