//! Cross-module invariants and randomized property tests: the generating
//! function for the displacement polynomials, the primitive-basis bracket
//! relation, Lie-element primitivity, the two-variable generating identity
//! for the operator integrals, and ring/group axioms under proptest.

use proptest::prelude::*;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use hopfcenter_core::displacement::{displacement, p_factor_at, Method};
use hopfcenter_core::dual::{functional_from_poly, lie_nest, TruncatedFunctional};
use hopfcenter_core::exact::{rat, rat_int, MultiPoly, Rat, Scalar, UniPoly, Var};
use hopfcenter_core::fdb::{fdb_convolve, theta, FdbFunctional, PowerSeriesMap};
use hopfcenter_core::fixtures::{path_mixed, path_two_piece};
use hopfcenter_core::oprep::i_op_value;
use hopfcenter_core::paths::{
    chen_map, iterated_integral, path_concat, path_inverse, CoeffPath, PiecewisePolyFn,
};
use hopfcenter_core::returnmap::{
    displacement_value, is_center_to_order, return_map, ReturnMapMethod,
};
use hopfcenter_core::shuffle::{shuffle_words, NcPoly};
use hopfcenter_core::words::{enumerate_words, words_up_to, Word};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Addition agrees with the unreduced brute-force form
    /// (a d + c b) / (b d) after reduction.
    #[test]
    fn rational_addition_matches_brute_force(
        a in -10_000i64..10_000, b in 1i64..500,
        c in -10_000i64..10_000, d in 1i64..500,
    ) {
        let lhs = rat(a, b) + rat(c, d);
        let rhs = rat(a * d + c * b, b * d);
        prop_assert_eq!(lhs, rhs);
    }
}

fn unipoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 0..=21)
        .prop_map(|cs| UniPoly::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

proptest! {
    #[test]
    fn unipoly_ring_axioms(p in unipoly(), q in unipoly(), r in unipoly()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
    }

    /// Composition of truncated diffeomorphisms is associative and the
    /// coefficient-wise inverse is two-sided.
    #[test]
    fn series_group_axioms(
        a in prop::collection::vec(small_rat(), 8),
        b in prop::collection::vec(small_rat(), 8),
        c in prop::collection::vec(small_rat(), 8),
    ) {
        let f = PowerSeriesMap::new(a);
        let g = PowerSeriesMap::new(b);
        let h = PowerSeriesMap::new(c);
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let inv = f.invert();
        prop_assert_eq!(f.compose(&inv).unwrap(), PowerSeriesMap::identity(8));
        prop_assert_eq!(inv.compose(&f).unwrap(), PowerSeriesMap::identity(8));
    }

    /// Θ turns character convolution into series composition.
    #[test]
    fn theta_is_a_homomorphism(
        a in prop::collection::vec(small_rat(), 5),
        b in prop::collection::vec(small_rat(), 5),
    ) {
        let ab = fdb_convolve(&a, &b).unwrap();
        prop_assert_eq!(theta(&ab), theta(&a).compose(&theta(&b)).unwrap());
    }
}

fn random_functional(rng: &mut ChaCha8Rng, order: u32, at_unit: i64) -> TruncatedFunctional {
    let mut f = TruncatedFunctional::zero(order);
    f.set(Word::empty(), rat_int(at_unit));
    for w in words_up_to(order) {
        if w.is_empty() {
            continue;
        }
        f.set(w, rat(rng.random_range(-9..=9), rng.random_range(1..=5)));
    }
    f
}

#[test]
fn convolution_algebra_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let order = 5;
    let unit = TruncatedFunctional::unit(order);
    for _ in 0..10 {
        let f = random_functional(&mut rng, order, 1);
        let g = random_functional(&mut rng, order, 0);
        let h = random_functional(&mut rng, order, 2);
        let left = f.convolve(&g).unwrap().convolve(&h).unwrap();
        let right = f.convolve(&g.convolve(&h).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(unit.convolve(&f).unwrap(), f);
        assert_eq!(f.convolve(&unit).unwrap(), f);
        // log inverts exp on infinitesimal data
        let inf = {
            let mut v = g.clone();
            v.set(Word::empty(), Rat::zero());
            v
        };
        assert_eq!(inf.exp().unwrap().log().unwrap(), inf);
    }
    // characters invert through the antipode
    let mut g = TruncatedFunctional::zero(order);
    g.set(Word::new(vec![1]), rat(2, 3));
    g.set(Word::new(vec![2]), rat(-1, 2));
    for (w, c) in lie_nest(&Word::new(vec![1, 2])).unwrap().terms() {
        g.set(w.clone(), c.clone());
    }
    let f = g.exp().unwrap();
    let inv = f.inverse_character().unwrap();
    assert_eq!(f.convolve(&inv).unwrap(), unit);
    assert_eq!(inv.convolve(&f).unwrap(), unit);
}

/// Right-nested brackets induce functionals vanishing on proper shuffles.
#[test]
fn lie_nests_are_primitive() {
    for d in 1..=5u32 {
        for c in enumerate_words(d) {
            let nest = lie_nest(&c).unwrap();
            if nest.is_zero() {
                continue;
            }
            assert!(functional_from_poly(&nest, 5).is_infinitesimal(), "{c}");
        }
    }
}

/// [t'_i, t'_j] = (i-j) t'_{i+j} paired against every generator of degree
/// <= 8, with the convolutions computed through the coproduct; the pairing
/// values also match the composition-coefficient differences.
#[test]
fn primitive_basis_bracket_relation() {
    let order = 8;
    for i in 1..=7u32 {
        for j in 1..=(order - i) {
            let ti = FdbFunctional::t_prime(i, order);
            let tj = FdbFunctional::t_prime(j, order);
            let ij = ti.convolve(&tj).unwrap();
            let ji = tj.convolve(&ti).unwrap();
            for k in 1..=order {
                let bracket = ij.value_at_gen(k) - ji.value_at_gen(k);
                let expect = if k == i + j {
                    rat_int(i as i64 - j as i64)
                } else {
                    Rat::zero()
                };
                assert_eq!(bracket, expect, "i={i} j={j} k={k}");
                if k == i + j {
                    let pj_i = p_factor_at(&Word::new(vec![j, i]), &rat_int(k as i64));
                    let pi_j = p_factor_at(&Word::new(vec![i, j]), &rat_int(k as i64));
                    assert_eq!(bracket, pj_i - pi_j);
                }
            }
        }
    }
}

/// The resolvent expansion pairs to the displacement polynomials: the
/// iterated convolution of primitive basis functionals along a composition
/// equals its coefficient polynomial at the degree, rebuilding P_n.
#[test]
fn generating_function_reconstructs_displacement() {
    for n in 1..=6u32 {
        let mut rebuilt = NcPoly::zero();
        for c in enumerate_words(n) {
            // fold t'_{c_k} * ... * t'_{c_1}
            let mut letters = c.letters().to_vec();
            letters.reverse();
            let mut acc = FdbFunctional::t_prime(letters[0], n);
            for &l in &letters[1..] {
                acc = acc.convolve(&FdbFunctional::t_prime(l, n)).unwrap();
            }
            let value = acc.value_at_gen(n);
            assert_eq!(value, p_factor_at(&c, &rat_int(n as i64)), "{c}");
            rebuilt.add_term(c, value);
        }
        assert_eq!(rebuilt, displacement(n, Method::Direct), "degree {n}");
    }
}

/// Coefficient of each composition word in P_i is its p-polynomial at i,
/// read off the recurrence construction.
#[test]
fn displacement_pairing_coefficients() {
    for i in 1..=7u32 {
        let p = displacement(i, Method::Recurrence);
        for c in enumerate_words(i) {
            assert_eq!(p.coeff(&c), p_factor_at(&c, &rat_int(i as i64)), "{c}");
        }
    }
}

fn mp_pow_trunc(base: &MultiPoly, e: u32, max_x: u32) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for _ in 0..e {
        let full = acc.mul(base);
        // drop powers of x beyond the window
        let mut trimmed = MultiPoly::zero();
        for (mono, c) in full.terms() {
            let xdeg = mono.get(&Var::X).copied().unwrap_or(0);
            if xdeg <= max_x {
                let single = MultiPoly::constant(c.clone());
                let mut m = MultiPoly::one();
                for (v, exp) in mono.iter() {
                    m = m.mul(&Scalar::pow(&MultiPoly::var(*v), *exp));
                }
                trimmed = trimmed.add(&single.mul(&m));
            }
        }
        acc = trimmed;
    }
    acc
}

/// The bivariate generating identity behind the operator integrals: the
/// coefficient of z^{m-i} r^{m+1} t^i in the transported fundamental
/// solution equals the composition of the geometric kernel with the
/// rescaled return map. Checked coefficientwise on a fixed path, with the
/// right side expanded by direct truncated series arithmetic (a third
/// route, independent of both i_op_value formulas).
#[test]
fn generating_identity_two_variables() {
    let a = path_two_piece();
    let (max_m, max_i) = (6u32, 4u32);
    // w(r, t) = r + Σ_k p_k r^{k+1} t^k as a polynomial in x := r, t
    let series = return_map(&a, max_m, ReturnMapMethod::Integrals);
    let r = MultiPoly::var(Var::X);
    let t = MultiPoly::var(Var::T);
    let mut w = r.clone();
    for k in 1..=max_m {
        let term = Scalar::pow(&r, k + 1)
            .mul(&Scalar::pow(&t, k))
            .scale(&series.coeff(k));
        w = w.add(&term);
    }
    for m in 0..=max_m {
        // s(z, w) contributes w^{m-i+1} at z^{m-i}
        for i in 0..=max_i.min(m) {
            let power = mp_pow_trunc(&w, m - i + 1, m + 1);
            let mut expect = Rat::zero();
            for (mono, c) in power.terms() {
                let xdeg = mono.get(&Var::X).copied().unwrap_or(0);
                let tdeg = mono.get(&Var::T).copied().unwrap_or(0);
                if xdeg == m + 1 && tdeg == i {
                    expect += c;
                }
            }
            let got = if i == 0 {
                Rat::one()
            } else {
                i_op_value(&a, i, m).unwrap()
            };
            assert_eq!(got, expect, "m={m} i={i}");
        }
    }
}

fn random_path(rng: &mut ChaCha8Rng) -> CoeffPath {
    let t = rat_int(1);
    let mid = rat(rng.random_range(1..=7), 8);
    let mut parts = Vec::new();
    for index in 1..=rng.random_range(1..=3u32) {
        let mut piece = || {
            UniPoly::from_coeffs(
                (0..rng.random_range(1..=3))
                    .map(|_| rat(rng.random_range(-4..=4), rng.random_range(1..=3)))
                    .collect(),
            )
        };
        let f = PiecewisePolyFn::new(vec![rat(0, 1), mid.clone(), rat(1, 1)], vec![piece(), piece()])
            .unwrap();
        parts.push((index, f));
    }
    CoeffPath::from_parts(t, parts).unwrap()
}

/// The two return-map routes agree on randomized paths to order 8, and the
/// Ree relation holds on randomized piecewise data.
#[test]
fn randomized_return_map_factorization_and_ree() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240911);
    for trial in 0..3 {
        let a = random_path(&mut rng);
        assert_eq!(
            return_map(&a, 8, ReturnMapMethod::Integrals),
            return_map(&a, 8, ReturnMapMethod::Hopf),
            "trial {trial}"
        );
        let e = chen_map(&a, 6);
        let words = words_up_to(5);
        for u in &words {
            if u.is_empty() {
                continue;
            }
            for v in &words {
                if v.is_empty() || u.degree() + v.degree() > 6 {
                    continue;
                }
                let lhs = e.value(u) * e.value(v);
                let mut rhs = Rat::zero();
                for (word, mult) in shuffle_words(u, v) {
                    rhs += e.value(&word) * rat_int(mult as i64);
                }
                assert_eq!(lhs, rhs, "trial {trial}: {u}, {v}");
            }
        }
    }
}

/// Composing with a universal center changes nothing observable: the
/// displacement values agree at sampled parameters and the quotient path
/// is a center.
#[test]
fn universal_center_factor_is_invisible() {
    let a = path_two_piece();
    let c = path_mixed();
    let trivial = path_concat(&c, &path_inverse(&c)).unwrap();
    let b = path_concat(&a, &trivial).unwrap();
    for i in 1..=5u32 {
        for t_num in [-3i64, -1, 2, 5, 9] {
            let t = rat(t_num, 2);
            assert_eq!(
                displacement_value(&a, i, &t).unwrap(),
                displacement_value(&b, i, &t).unwrap(),
                "i={i} t={t_num}/2"
            );
        }
    }
    let quotient = path_concat(&a, &path_inverse(&b)).unwrap();
    assert!(is_center_to_order(&quotient, 5));
}

/// Splitting a piece at an interior point changes nothing: integrals only
/// see the function, not its representation.
#[test]
fn iterated_integrals_are_representation_independent() {
    let a = path_two_piece();
    let json = hopfcenter_core::paths::path_to_json(&a);
    let back = hopfcenter_core::paths::path_from_json(&json).unwrap();
    for w in words_up_to(5) {
        assert_eq!(iterated_integral(&a, &w), iterated_integral(&back, &w));
    }
}
