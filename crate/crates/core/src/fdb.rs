//! The (co-opposite) Faà di Bruno Hopf algebra: Bell polynomials, the
//! generalized polynomials B_k, coproduct and antipode on generators,
//! characters and their convolution, the Θ isomorphism onto the
//! composition group of truncated formal series, and linear functionals
//! on the algebra (used for the t'_i machinery).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{big_to_rat, factorial, rat_int, rat_to_string, Mono, MultiPoly, Rat, Scalar, Var};

/// Partial exponential Bell polynomial B_{r,s} evaluated in any commutative
/// Q-algebra: Σ over k_1 + ... + k_l = s, k_1 + 2k_2 + ... + l k_l = r
/// (l = r - s + 1) of r!/(k_1!...k_l!) (x_1/1!)^{k_1} ... (x_l/l!)^{k_l}.
/// Conventions: B_{0,0} = 1 and B_{r,0} = 0 for r >= 1; s > r is an input
/// error.
pub fn bell_eval<R: Scalar>(r: u32, s: u32, args: &[R]) -> Result<R> {
    if s > r {
        return Err(Error::InvalidInput(format!("bell: s = {s} exceeds r = {r}")));
    }
    if s == 0 {
        return Ok(if r == 0 { R::one() } else { R::zero() });
    }
    let l = (r - s + 1) as usize;
    if args.len() < l {
        return Err(Error::InvalidInput(format!(
            "bell: B_{{{r},{s}}} needs {l} arguments, got {}",
            args.len()
        )));
    }
    // Σ over admissible exponent vectors of monomial / (prod k_j! (j!)^{k_j}),
    // scaled by r! at the end
    let mut acc = R::zero();
    let mut ks = vec![0u32; l];
    bell_rec(args, 1, r, s, &mut ks, &mut acc);
    Ok(acc.scale(&big_to_rat(factorial(r))))
}

fn bell_rec<R: Scalar>(args: &[R], j: u32, weight_left: u32, count_left: u32, ks: &mut [u32], acc: &mut R) {
    let l = ks.len() as u32;
    if j > l {
        if weight_left == 0 && count_left == 0 {
            let mut denom = num_bigint::BigInt::from(1);
            for (idx, &k) in ks.iter().enumerate() {
                denom *= factorial(k);
                let jf = factorial(idx as u32 + 1);
                for _ in 0..k {
                    denom *= &jf;
                }
            }
            let mut term = R::from_rat(Rat::one() / big_to_rat(denom));
            for (idx, &k) in ks.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&args[idx].pow(k));
                }
            }
            *acc = acc.add(&term);
        }
        return;
    }
    let max_k = (weight_left / j).min(count_left);
    for k in 0..=max_k {
        ks[j as usize - 1] = k;
        bell_rec(args, j + 1, weight_left - j * k, count_left - k, ks, acc);
    }
    ks[j as usize - 1] = 0;
}

/// B_{r,s} as a symbolic polynomial in the generators t_1, ..., t_{r-s+1}.
pub fn bell_sym(r: u32, s: u32) -> Result<MultiPoly> {
    let l = if s == 0 || s > r { 0 } else { (r - s + 1) as usize };
    let args: Vec<MultiPoly> = (1..=l as u32).map(MultiPoly::gen).collect();
    bell_eval(r, s, &args)
}

/// Generalized polynomial B_k(t_1, ..., t_k, t) =
/// Σ over l_1 + 2 l_2 + ... + k l_k = k of t(t-1)···(t-s+1) · Π t_j^{l_j}/l_j!
/// with s = Σ l_j; B_0 = 1. Evaluated in any commutative Q-algebra, with
/// the t slot supplied as an algebra element.
pub fn genbell_eval<R: Scalar>(k: u32, args: &[R], t: &R) -> Result<R> {
    if k == 0 {
        return Ok(R::one());
    }
    if args.len() < k as usize {
        return Err(Error::InvalidInput(format!(
            "genbell: B_{k} needs {k} arguments, got {}",
            args.len()
        )));
    }
    let mut acc = R::zero();
    let mut ls = vec![0u32; k as usize];
    genbell_rec(args, t, 1, k, &mut ls, &mut acc);
    Ok(acc)
}

fn genbell_rec<R: Scalar>(args: &[R], t: &R, j: u32, weight_left: u32, ls: &mut [u32], acc: &mut R) {
    let k = ls.len() as u32;
    if j > k {
        if weight_left == 0 {
            let s: u32 = ls.iter().sum();
            // falling factorial t(t-1)...(t-s+1) in the algebra
            let mut term = R::one();
            for m in 0..s {
                term = term.mul(&t.sub(&R::from_rat(rat_int(m as i64))));
            }
            let mut denom = num_bigint::BigInt::from(1);
            for &l in ls.iter() {
                denom *= factorial(l);
            }
            term = term.scale(&(Rat::one() / big_to_rat(denom)));
            for (idx, &l) in ls.iter().enumerate() {
                if l > 0 {
                    term = term.mul(&args[idx].pow(l));
                }
            }
            *acc = acc.add(&term);
        }
        return;
    }
    let max_l = weight_left / j;
    for l in 0..=max_l {
        ls[j as usize - 1] = l;
        genbell_rec(args, t, j + 1, weight_left - j * l, ls, acc);
    }
    ls[j as usize - 1] = 0;
}

/// B_k as a symbolic polynomial in t_1, ..., t_k and the extra variable t.
pub fn genbell(k: u32) -> MultiPoly {
    let args: Vec<MultiPoly> = (1..=k).map(MultiPoly::gen).collect();
    genbell_eval(k, &args, &MultiPoly::var(Var::T)).expect("args supplied")
}

/// The Bell-polynomial tail of the coproduct of t_i at left slot j:
/// ((j+1)!/(i+1)!) B_{i+1,j+1}(1, 2! t_1, ..., (i-j+1)! t_{i-j}).
pub fn coproduct_tail(i: u32, j: u32) -> MultiPoly {
    let mut args = vec![MultiPoly::one()];
    for m in 2..=(i - j + 1) {
        args.push(MultiPoly::gen(m - 1).scale(&big_to_rat(factorial(m))));
    }
    let bell = bell_eval(i + 1, j + 1, &args).expect("args supplied");
    bell.scale(&(big_to_rat(factorial(j + 1)) / big_to_rat(factorial(i + 1))))
}

/// Coproduct of the generator t_i as a list of tensor factors
/// (t_j, Bell tail), j = 0..=i; t_0 reads as 1.
pub fn fdb_coproduct(i: u32) -> Vec<(MultiPoly, MultiPoly)> {
    (0..=i)
        .map(|j| {
            let left = if j == 0 { MultiPoly::one() } else { MultiPoly::gen(j) };
            (left, coproduct_tail(i, j))
        })
        .collect()
}

/// Antipode on the generator t_i:
/// (1/(i+1)!) Σ_{j=1}^{i} (-1)^j B_{i+j,j}(0, 2! t_1, ..., (i+1)! t_i).
pub fn fdb_antipode(i: u32) -> MultiPoly {
    let mut args = vec![MultiPoly::zero()];
    for m in 2..=(i + 1) {
        args.push(MultiPoly::gen(m - 1).scale(&big_to_rat(factorial(m))));
    }
    let mut acc = MultiPoly::zero();
    for j in 1..=i {
        let bell = bell_eval(i + j, j, &args).expect("args supplied");
        let sign = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        acc = acc.add(&bell.scale(&sign));
    }
    acc.scale(&(Rat::one() / big_to_rat(factorial(i + 1))))
}

/// Multiplicative extension of the antipode to polynomials in the t_i.
pub fn fdb_antipode_poly(p: &MultiPoly) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for (mono, c) in p.terms() {
        let mut term = MultiPoly::constant(c.clone());
        for (v, e) in mono.iter() {
            let Var::Gen(i) = v else {
                return Err(Error::InvalidInput(format!(
                    "antipode extension applies to generator variables only, found {v}"
                )));
            };
            term = term.mul(&Scalar::pow(&fdb_antipode(*i), *e));
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Evaluate a polynomial in the generators at a character given by its
/// values c_1, ..., c_N on t_1, ..., t_N (extended multiplicatively).
pub fn char_eval(values: &[Rat], p: &MultiPoly) -> Result<Rat> {
    let mut acc = Rat::zero();
    for (mono, c) in p.terms() {
        let mut term = c.clone();
        for (v, e) in mono.iter() {
            let Var::Gen(i) = v else {
                return Err(Error::InvalidInput(format!(
                    "character evaluation hit non-generator variable {v}"
                )));
            };
            let idx = *i as usize;
            if idx == 0 || idx > values.len() {
                return Err(Error::InvalidInput(format!(
                    "character evaluation needs value at t{i}, only {} given",
                    values.len()
                )));
            }
            term *= Scalar::pow(&values[idx - 1], *e);
        }
        acc += term;
    }
    Ok(acc)
}

/// Convolution of two characters, by their generator values:
/// (a*b)(t_i) = Σ_j a(t_j) · b(Bell tail of the coproduct of t_i).
pub fn fdb_convolve(a: &[Rat], b: &[Rat]) -> Result<Vec<Rat>> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "character order mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len() as u32;
    let mut out = Vec::with_capacity(a.len());
    for i in 1..=n {
        let mut acc = Rat::zero();
        for j in 0..=i {
            let left = if j == 0 { Rat::one() } else { a[j as usize - 1].clone() };
            acc += left * char_eval(b, &coproduct_tail(i, j))?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Truncated formal diffeomorphism r + Σ_{i<=N} c_i r^{i+1}; the group
/// operation is composition.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeriesMap {
    coeffs: Vec<Rat>,
}

impl PowerSeriesMap {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        PowerSeriesMap { coeffs }
    }

    pub fn identity(order: u32) -> Self {
        PowerSeriesMap { coeffs: vec![Rat::zero(); order as usize] }
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// c_i, 1-based.
    pub fn coeff(&self, i: u32) -> Rat {
        self.coeffs[i as usize - 1].clone()
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Dense coefficients of r^1 ... r^{N+1}.
    fn dense(&self) -> Vec<Rat> {
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(Rat::one());
        v.extend(self.coeffs.iter().cloned());
        v
    }

    fn from_dense(v: Vec<Rat>) -> Self {
        debug_assert!(v[0] == Rat::one());
        PowerSeriesMap { coeffs: v[1..].to_vec() }
    }

    /// Composition f(g(r)) truncated at the common order.
    pub fn compose(&self, g: &PowerSeriesMap) -> Result<PowerSeriesMap> {
        if self.order() != g.order() {
            return Err(Error::InvalidInput(format!(
                "series order mismatch: {} vs {}",
                self.order(),
                g.order()
            )));
        }
        let n = self.coeffs.len();
        let gd = g.dense();
        // powers of g, truncated to r^{n+1}
        let mut acc = gd.clone();
        let mut power = gd.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            power = mul_trunc(&power, &gd, n + 1);
            if c.is_zero() {
                continue;
            }
            for (k, p) in power.iter().enumerate() {
                acc[k] = &acc[k] + &(c * p);
            }
            let _ = i;
        }
        Ok(PowerSeriesMap::from_dense(acc))
    }

    /// Compositional inverse: self ∘ inv = inv ∘ self = r up to the
    /// truncation order, solved coefficient by coefficient.
    pub fn invert(&self) -> PowerSeriesMap {
        let n = self.coeffs.len();
        let mut inv = PowerSeriesMap::identity(n as u32);
        for k in 0..n {
            let e = self.compose(&inv).expect("orders match");
            inv.coeffs[k] = &inv.coeffs[k] - &e.coeffs[k];
        }
        inv
    }

    pub fn eval_f64(&self, r0: f64) -> f64 {
        let mut acc = r0;
        let mut pw = r0;
        for c in &self.coeffs {
            pw *= r0;
            acc += crate::exact::rat_to_f64(c) * pw;
        }
        acc
    }
}

/// Truncated product of dense series starting at r^1 (index 0 = coeff of r^1).
fn mul_trunc(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    // (r-power i+1) * (r-power j+1) = r-power i+j+2 -> index i+j+1
    let mut out = vec![Rat::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j + 1 >= n {
                break;
            }
            out[i + j + 1] = &out[i + j + 1] + &(ai * bj);
        }
    }
    out
}

impl fmt::Display for PowerSeriesMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            write!(f, " {} ", if neg { "-" } else { "+" })?;
            if mag == Rat::one() {
                write!(f, "r^{}", i + 2)?;
            } else {
                write!(f, "{}*r^{}", rat_to_string(&mag), i + 2)?;
            }
        }
        Ok(())
    }
}

/// Θ: the character with generator values c_1, ..., c_N goes to the series
/// r + Σ c_i r^{i+1}.
pub fn theta(values: &[Rat]) -> PowerSeriesMap {
    PowerSeriesMap::new(values.to_vec())
}

/// B_{i-j}(t_1, ..., t_{i-j}, j+1) equals the Bell tail of the coproduct,
/// ((j+1)!/(i+1)!) B_{i+1,j+1}(1, 2!t_1, ..., (i-j+1)!t_{i-j}), as an exact
/// polynomial identity. Needs 0 <= j < i.
pub fn genbell_matches_coproduct_tail(i: u32, j: u32) -> bool {
    let lhs = genbell(i - j).subst(Var::T, &MultiPoly::constant(rat_int(j as i64 + 1)));
    lhs == coproduct_tail(i, j)
}

/// Parameter-lowering recurrence for the generalized Bell polynomials,
/// cleared of the (t+k) denominator:
/// (t+k) B_k(..., t) = t Σ_{j=1}^{k+1} j t_{j-1} B_{k-j+1}(..., t-1), t_0 = 1.
pub fn genbell_parameter_recurrence(k: u32) -> bool {
    let t = MultiPoly::var(Var::T);
    let lhs = genbell(k).mul(&t.add(&MultiPoly::constant(rat_int(k as i64))));
    let t_minus_1 = t.sub(&MultiPoly::one());
    let mut sum = MultiPoly::zero();
    for j in 1..=(k + 1) {
        let gen = if j == 1 { MultiPoly::one() } else { MultiPoly::gen(j - 1) };
        let inner = genbell(k + 1 - j).subst(Var::T, &t_minus_1);
        sum = sum.add(&gen.mul(&inner).scale(&rat_int(j as i64)));
    }
    lhs == t.mul(&sum)
}

/// Same-parameter recurrence:
/// B_k(..., t) = Σ_{j=1}^{k} ((t+1)j/k - 1) t_j B_{k-j}(..., t).
pub fn genbell_weighted_recurrence(k: u32) -> bool {
    let t = MultiPoly::var(Var::T);
    let lhs = genbell(k);
    let mut sum = MultiPoly::zero();
    for j in 1..=k {
        let weight = t
            .add(&MultiPoly::one())
            .scale(&Rat::new((j as i64).into(), (k as i64).into()))
            .sub(&MultiPoly::one());
        sum = sum.add(&weight.mul(&MultiPoly::gen(j)).mul(&genbell(k - j)));
    }
    lhs == sum
}

/// FdB monomial: sorted multiset of generator indices (t_1^2 t_3 is `[1,1,3]`).
pub type FdbMono = Vec<u32>;

fn mono_to_multiset(m: &Mono) -> Result<FdbMono> {
    let mut out = Vec::new();
    for (v, e) in m.iter() {
        let Var::Gen(i) = v else {
            return Err(Error::InvalidInput(format!("non-generator variable {v} in monomial")));
        };
        for _ in 0..*e {
            out.push(*i);
        }
    }
    Ok(out)
}

/// Linear functional on the Faà di Bruno algebra, truncated by weighted
/// degree (deg t_i = i): values on all monomials of degree <= order.
#[derive(Debug, Clone, PartialEq)]
pub struct FdbFunctional {
    order: u32,
    values: BTreeMap<FdbMono, Rat>,
}

fn monomials_up_to(order: u32) -> Vec<FdbMono> {
    // multisets of positive integers with sum <= order, non-decreasing
    fn rec(min: u32, rest: u32, cur: &mut FdbMono, out: &mut Vec<FdbMono>) {
        out.push(cur.clone());
        for i in min..=rest {
            cur.push(i);
            rec(i, rest - i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, order, &mut Vec::new(), &mut out);
    out
}

impl FdbFunctional {
    pub fn zero(order: u32) -> Self {
        FdbFunctional {
            order,
            values: monomials_up_to(order).into_iter().map(|m| (m, Rat::zero())).collect(),
        }
    }

    /// The primitive basis functional t'_j: one on the monomial t_j,
    /// zero on every other monomial (including 1).
    pub fn t_prime(j: u32, order: u32) -> Self {
        let mut f = Self::zero(order);
        f.values.insert(vec![j], Rat::one());
        f
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn value(&self, m: &FdbMono) -> Rat {
        self.values.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Value at the generator t_k.
    pub fn value_at_gen(&self, k: u32) -> Rat {
        self.value(&vec![k])
    }

    /// Linear extension to polynomials in the generators.
    pub fn eval_poly(&self, p: &MultiPoly) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (mono, c) in p.terms() {
            acc += c * self.value(&mono_to_multiset(mono)?);
        }
        Ok(acc)
    }

    /// Convolution through the co-opposite coproduct, extended
    /// multiplicatively to monomials.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::InvalidInput("functional order mismatch".into()));
        }
        let mut out = Self::zero(self.order);
        for m in monomials_up_to(self.order) {
            let mut acc = Rat::zero();
            for ((left, right), c) in monomial_coproduct(&m)? {
                acc += c * self.value(&left) * other.value(&right);
            }
            out.values.insert(m, acc);
        }
        Ok(out)
    }
}

/// Co-opposite coproduct of a monomial, expanded into pairs of monomials:
/// the tensor-square product of the generator coproducts.
fn monomial_coproduct(m: &FdbMono) -> Result<BTreeMap<(FdbMono, FdbMono), Rat>> {
    let mut acc: BTreeMap<(FdbMono, FdbMono), Rat> = BTreeMap::new();
    acc.insert((vec![], vec![]), Rat::one());
    for &i in m {
        let parts = fdb_coproduct(i);
        let mut next: BTreeMap<(FdbMono, FdbMono), Rat> = BTreeMap::new();
        for ((la, ra), ca) in &acc {
            for (left, right) in &parts {
                for (lm, lc) in left.terms() {
                    for (rm, rc) in right.terms() {
                        let mut nl = la.clone();
                        nl.extend(mono_to_multiset(lm)?);
                        nl.sort_unstable();
                        let mut nr = ra.clone();
                        nr.extend(mono_to_multiset(rm)?);
                        nr.sort_unstable();
                        let c = ca * lc * rc;
                        let e = next.entry((nl, nr)).or_insert_with(Rat::zero);
                        *e += c;
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    Ok(acc)
}
