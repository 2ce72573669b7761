//! First return maps of dv/dx = Σ a_i(x) v^{i+1}: the exact rational series
//! from iterated integrals (two independent routes), center detection, a
//! floating-point Runge–Kutta cross-check, the separable example with its
//! Lambert-W closed form, and the inverse construction that realizes
//! prescribed return-map coefficients.

use crate::displacement::{self, p_factor_at, Method};
use crate::error::{Error, Result};
use crate::exact::{big_to_rat, factorial, rat_int, rat_to_f64, Rat, Scalar, UniPoly};
use crate::fdb::{bell_eval, genbell_eval, PowerSeriesMap};
use crate::paths::{chen_map, iterated_integral, CoeffPath, PiecewisePolyFn};
use crate::words::enumerate_words;

/// How to compute the return-map coefficients: directly from the defining
/// composition sum, or by pairing the Chen functional against the
/// displacement polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReturnMapMethod {
    Integrals,
    Hopf,
}

/// Return-map coefficient p_i(a) = Σ over compositions c of i of
/// p_c(i)·I_c(a).
fn p_coeff_integrals(a: &CoeffPath, i: u32) -> Rat {
    let t = rat_int(i as i64);
    let max = a.max_index();
    let mut acc = Rat::zero();
    for c in enumerate_words(i) {
        if c.max_letter() > max {
            continue;
        }
        acc += p_factor_at(&c, &t) * iterated_integral(a, &c);
    }
    acc
}

/// The first return map truncated at order N: r + Σ_{i<=N} p_i(a) r^{i+1}.
pub fn return_map(a: &CoeffPath, order: u32, method: ReturnMapMethod) -> PowerSeriesMap {
    match method {
        ReturnMapMethod::Integrals => {
            let coeffs = (1..=order).map(|i| p_coeff_integrals(a, i)).collect();
            PowerSeriesMap::new(coeffs)
        }
        ReturnMapMethod::Hopf => {
            let chen = chen_map(a, order);
            let coeffs = (1..=order)
                .map(|i| chen.pair(&displacement::displacement(i, Method::Recurrence)))
                .collect();
            PowerSeriesMap::new(coeffs)
        }
    }
}

/// True iff every return-map coefficient vanishes exactly up to order N.
pub fn is_center_to_order(a: &CoeffPath, order: u32) -> bool {
    return_map(a, order, ReturnMapMethod::Integrals).is_identity()
}

/// The generalized displacement value Σ_c p_c(t)·I_c(a), computed both from
/// the composition sum and through the generalized Bell polynomials at the
/// return-map coefficients; the two routes must agree.
pub fn displacement_value(a: &CoeffPath, i: u32, t: &Rat) -> Result<Rat> {
    let max = a.max_index();
    let mut direct = Rat::zero();
    for c in enumerate_words(i) {
        if c.max_letter() > max {
            continue;
        }
        direct += p_factor_at(&c, t) * iterated_integral(a, &c);
    }
    let ps: Vec<Rat> = (1..=i).map(|j| p_coeff_integrals(a, j)).collect();
    let t_arg = t - rat_int(i as i64 - 1);
    let bell_route = genbell_eval(i, &ps, &t_arg)?;
    if direct != bell_route {
        return Err(Error::Internal(format!(
            "displacement_value routes disagree at i={i}: sum {} vs Bell {}",
            crate::exact::rat_to_string(&direct),
            crate::exact::rat_to_string(&bell_route)
        )));
    }
    Ok(direct)
}

/// Numerical solver configuration: the right-hand side is truncated at
/// degree M, i.e. dv/dx = Σ_{i<=M} a_i(x) v^{i+1}.
#[derive(Debug, Clone)]
pub struct OdeConfig {
    pub degree: u32,
    pub r0: f64,
    pub tol: f64,
    pub max_steps: usize,
}

impl OdeConfig {
    pub fn new(degree: u32, r0: f64, tol: f64) -> Result<Self> {
        if tol <= 0.0 || degree == 0 {
            return Err(Error::InvalidInput("ode config needs tol > 0 and degree >= 1".into()));
        }
        Ok(OdeConfig { degree, r0, tol, max_steps: 2_000_000 })
    }
}

struct PiecewiseF64 {
    breaks: Vec<f64>,
    pieces: Vec<Vec<f64>>,
}

impl PiecewiseF64 {
    fn from_exact(f: &PiecewisePolyFn) -> Self {
        PiecewiseF64 {
            breaks: f.breaks().iter().map(rat_to_f64).collect(),
            pieces: f
                .pieces()
                .iter()
                .map(|p| p.coeffs().iter().map(rat_to_f64).collect())
                .collect(),
        }
    }

    fn eval(&self, x: f64) -> f64 {
        let mut idx = self.pieces.len() - 1;
        for (j, b) in self.breaks[1..].iter().enumerate() {
            if x < *b {
                idx = j;
                break;
            }
        }
        let mut acc = 0.0;
        for c in self.pieces[idx].iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Dormand–Prince 5(4) adaptive integration of the degree-M truncation,
/// stepping segment by segment between coefficient breakpoints so the
/// right-hand side is smooth inside every step. Deterministic for a fixed
/// configuration.
pub fn ode_solve(a: &CoeffPath, cfg: &OdeConfig) -> Result<f64> {
    let horizon = rat_to_f64(a.horizon());
    let m = cfg.degree.min(a.max_index().max(1));
    let coeffs: Vec<(usize, PiecewiseF64)> = (1..=m)
        .map(|i| (i as usize, PiecewiseF64::from_exact(&a.coeff(i))))
        .collect();
    // segment boundaries: union of all breakpoints
    let mut seg: Vec<f64> = (1..=m)
        .flat_map(|i| a.coeff(i).breaks().iter().map(rat_to_f64).collect::<Vec<_>>())
        .collect();
    seg.push(0.0);
    seg.push(horizon);
    seg.sort_by(f64::total_cmp);
    seg.dedup();

    let f = |x: f64, v: f64| -> f64 {
        let mut acc = 0.0;
        let mut vp = v * v;
        let mut last = 1usize;
        for (i, c) in &coeffs {
            for _ in last..*i {
                vp *= v;
            }
            last = *i;
            acc += c.eval(x) * vp;
        }
        acc
    };

    // Dormand–Prince coefficients
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    // difference between 5th and embedded 4th order weights
    const E: [f64; 7] = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];

    let mut v = cfg.r0;
    let mut steps = 0usize;
    for win in seg.windows(2) {
        let (x0, x1) = (win[0], win[1]);
        if x1 <= x0 {
            continue;
        }
        let mut x = x0;
        let mut h = (x1 - x0) / 8.0;
        let min_h = (x1 - x0) * 1e-14;
        while x < x1 {
            if steps > cfg.max_steps {
                return Err(Error::Numeric("ode_solve: step budget exhausted".into()));
            }
            steps += 1;
            h = h.min(x1 - x);
            let mut k = [0.0f64; 7];
            k[0] = f(x, v);
            for s in 0..6 {
                let mut vs = v;
                for (j, kj) in k.iter().enumerate().take(s + 1) {
                    vs += h * A[s][j] * kj;
                }
                k[s + 1] = f(x + C[s] * h, vs);
            }
            let v5 = v
                + h * (35.0 / 384.0 * k[0]
                    + 500.0 / 1113.0 * k[2]
                    + 125.0 / 192.0 * k[3]
                    - 2187.0 / 6784.0 * k[4]
                    + 11.0 / 84.0 * k[5]);
            let err: f64 = h * E.iter().zip(&k).map(|(e, kj)| e * kj).sum::<f64>();
            let scale = cfg.tol;
            let ratio = (err / scale).abs();
            if ratio <= 1.0 {
                x += h;
                v = v5;
                if !v.is_finite() || v.abs() > 0.5 {
                    return Err(Error::Numeric(format!(
                        "ode_solve: solution left the small-value region at x = {x} (v = {v})"
                    )));
                }
            }
            let factor = if ratio > 0.0 { 0.9 * ratio.powf(-0.2) } else { 5.0 };
            h *= factor.clamp(0.2, 5.0);
            if h < min_h {
                return Err(Error::Numeric("ode_solve: step size underflow".into()));
            }
        }
    }
    Ok(v)
}

/// Upper bound on the series tail |Σ_{i>N} p_i r0^{i+1}| at a concrete r0.
///
/// Every composition coefficient p_c(i) is positive and every integral obeys
/// |I_c(a)| <= A^k T^k / k! with A the sup bound on the coefficients, so
/// |p_i| <= Σ_c p_c(i) (AT)^|c| = (ATi+1)(AT(i-1)+1)···AT(t-i+1 term), the
/// augmentation closed form, itself at most (ATi+1)^{i-1}·AT. The bound
/// errors out when these majorant terms do not decay geometrically at r0 —
/// the truncation is then untrustworthy and callers must abort.
pub fn series_tail_bound(a: &CoeffPath, order: u32, r0: f64) -> Result<f64> {
    let t = rat_to_f64(a.horizon());
    let sup = (1..=a.max_index())
        .map(|i| a.coeff(i).sup_bound_f64())
        .fold(0.0f64, f64::max);
    if sup == 0.0 {
        return Ok(0.0);
    }
    let at = sup * t;
    let term = |i: u32| -> f64 {
        let ln = (i as f64 - 1.0) * (at * i as f64 + 1.0).ln() + at.ln().max(0.0)
            + (i as f64 + 1.0) * r0.abs().ln();
        ln.exp()
    };
    let mut sum = 0.0;
    let mut prev = term(order + 1);
    sum += prev;
    for i in order + 2..=order + 40 {
        let cur = term(i);
        if prev > 0.0 && cur / prev >= 0.5 {
            return Err(Error::Numeric(format!(
                "series_tail_bound: majorant terms stop decaying at order {i} \
                 (ratio {:.3}); r0 = {r0} is too large for this path",
                cur / prev
            )));
        }
        sum += cur;
        prev = cur;
    }
    // the geometric remainder past the last computed term
    Ok(sum + prev)
}

/// Coefficient of r^{i+1} in the return map of the all-ones equation on
/// [0, x]: Σ_{k=1}^{i} S_{i,k}(i) x^k / k!.
pub fn separable_series(i: u32, x: &Rat) -> Rat {
    let t = rat_int(i as i64);
    let mut acc = Rat::zero();
    for k in 1..=i {
        let sik = displacement::s_ik(i, k, Method::Direct).unwrap().eval(&t);
        acc += sik * Scalar::pow(x, k) / big_to_rat(factorial(k));
    }
    acc
}

/// The bivariate polynomial S_i(x,t) = Σ_k S_{i,k}(t) x^k / k!.
pub use crate::displacement::s_poly as separable_poly;

const INV_E: f64 = 0.36787944117144233; // 1/e

/// Real Lambert W on branch 0 or -1, by Halley iteration from
/// branch-appropriate seeds; the result w satisfies
/// |w e^w - x| <= 1e-14 max(1, |x|).
pub fn lambert_w(branch: i32, x: f64) -> Result<f64> {
    let seed = match branch {
        0 => {
            if x < -INV_E - 1e-15 {
                return Err(Error::Domain(format!("lambert_w branch 0 needs x >= -1/e, got {x}")));
            }
            if x < -INV_E + 1e-4 {
                // branch-point expansion in p = sqrt(2(1 + e x))
                let p = (2.0 * (1.0 + std::f64::consts::E * x)).max(0.0).sqrt();
                -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0
            } else if x < 3.0 {
                x.ln_1p()
            } else {
                // ln(ln x) is safe once x > e
                let l1 = x.ln();
                let l2 = l1.ln();
                l1 - l2 + l2 / l1
            }
        }
        -1 => {
            if !(-INV_E - 1e-15..0.0).contains(&x) {
                return Err(Error::Domain(format!(
                    "lambert_w branch -1 needs -1/e <= x < 0, got {x}"
                )));
            }
            if x < -INV_E + 1e-4 {
                let p = (2.0 * (1.0 + std::f64::consts::E * x)).max(0.0).sqrt();
                -1.0 - p - p * p / 3.0 - 11.0 * p * p * p / 72.0
            } else {
                let l1 = (-x).ln();
                l1 - (-l1).ln()
            }
        }
        other => {
            return Err(Error::InvalidInput(format!("lambert_w branch must be 0 or -1, got {other}")));
        }
    };
    let mut w = seed;
    for _ in 0..60 {
        let ew = w.exp();
        let fw = w * ew - x;
        if fw == 0.0 {
            break;
        }
        let d1 = (w + 1.0) * ew;
        let d2 = (w + 2.0) * ew;
        let denom = d1 - fw * d2 / (2.0 * d1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = fw / denom;
        w -= step;
        if step.abs() <= 1e-17 * w.abs().max(1.0) {
            break;
        }
    }
    let residual = (w * w.exp() - x).abs();
    if residual <= 1e-14 * x.abs().max(1.0) {
        Ok(w)
    } else {
        Err(Error::Numeric(format!(
            "lambert_w({branch}, {x}) did not converge (residual {residual:.3e})"
        )))
    }
}

/// W_0(y) given ln(y); switches to solving w + ln w = ln y when y itself
/// would overflow an f64.
fn w0_from_ln(ln_y: f64) -> Result<f64> {
    if ln_y < 700.0 {
        return lambert_w(0, ln_y.exp());
    }
    // w + ln w = ln y, w > 0; Newton converges from the asymptotic seed
    let mut w = ln_y - ln_y.ln();
    for _ in 0..80 {
        let g = w + w.ln() - ln_y;
        let step = g / (1.0 + 1.0 / w);
        w -= step;
        if step.abs() <= 1e-16 * w {
            break;
        }
    }
    Ok(w)
}

/// W_{-1}(z) for z < 0 given ln(-z); switches to solving u - ln u = -ln(-z)
/// with u = -w when z underflows.
fn wm1_from_ln(ln_neg_z: f64) -> Result<f64> {
    if ln_neg_z > -700.0 {
        return lambert_w(-1, -ln_neg_z.exp());
    }
    let target = -ln_neg_z; // u - ln u = target, u > 1
    let mut u = target + target.ln();
    for _ in 0..80 {
        let g = u - u.ln() - target;
        let step = g / (1.0 - 1.0 / u);
        u -= step;
        if step.abs() <= 1e-16 * u {
            break;
        }
    }
    Ok(-u)
}

/// Closed-form solution of dv/dx = v²/(1-v) (the all-ones equation):
/// v(x;r) = -1/W(e^x · W^{-1}(-1/r)) on the branch matching the sign of r,
/// where W^{-1}(s) = s e^s. Validity: r < 0, or 0 < r <= -1/W_{-1}(-e^{-x-1}).
pub fn separable_closed_form(x: f64, r: f64) -> Result<f64> {
    if r == 0.0 {
        return Ok(0.0);
    }
    if r < 0.0 {
        // s = -1/r > 0; ln(s e^s) = ln s + s stays finite in log space
        let s = -1.0 / r;
        let ln_y = s.ln() + s + x;
        let w = w0_from_ln(ln_y)?;
        Ok(-1.0 / w)
    } else {
        let r_max = -1.0 / lambert_w(-1, -(-x - 1.0).exp())?;
        if r > r_max * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "separable_closed_form: r = {r} exceeds the validity bound {r_max} at x = {x}"
            )));
        }
        let s = -1.0 / r; // <= -1
        let ln_neg_z = (1.0 / r).ln() + s + x;
        let w = wm1_from_ln(ln_neg_z)?;
        Ok(-1.0 / w)
    }
}

/// Build a path whose return map has the prescribed coefficients
/// p_i = targets_i / (i+1)! for i <= N: one polynomial piece per
/// coefficient, from the closed-form kernel in ((x-T)/T).
pub fn inverse_construction(targets: &[Rat], horizon: &Rat) -> Result<CoeffPath> {
    if targets.is_empty() {
        return Err(Error::InvalidInput("inverse_construction needs at least one target".into()));
    }
    if *horizon <= Rat::zero() {
        return Err(Error::InvalidInput("inverse_construction needs T > 0".into()));
    }
    let n = targets.len() as u32;
    let mut path = CoeffPath::zero(horizon.clone())?;
    // base = (x - T)/T
    let base = UniPoly::linear(-Rat::one(), Rat::one() / horizon);
    for i in 1..=n {
        let mut acc = UniPoly::zero();
        for k in 1..=i {
            let mut inner = UniPoly::zero();
            for l in 0..=(i - k) {
                let args = &targets[..(i - k - l + 1) as usize];
                let b: Rat = bell_eval(i - k, l, args)?;
                if b.is_zero() {
                    continue;
                }
                let coeff = big_to_rat(factorial(l)) * b;
                inner = inner.add(&Scalar::pow(&base, l).scale(&coeff));
            }
            let factor = &targets[k as usize - 1] / horizon
                * big_to_rat(crate::exact::binomial(i + 1, i - k));
            acc = acc.add(&inner.scale(&factor));
        }
        let a_i = acc.scale(&(Rat::one() / big_to_rat(factorial(i + 1))));
        if !a_i.is_zero() {
            path.set_coeff(i, PiecewisePolyFn::from_poly(horizon.clone(), a_i));
        }
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::paths::{path_concat, path_inverse};

    fn ones_path(t: Rat) -> CoeffPath {
        CoeffPath::from_parts(t.clone(), vec![(1, PiecewisePolyFn::constant(t, rat_int(1)))]).unwrap()
    }

    /// All coefficients 1 up to index m, on [0, T].
    fn all_ones_path(t: Rat, m: u32) -> CoeffPath {
        let parts = (1..=m)
            .map(|i| (i, PiecewisePolyFn::constant(t.clone(), rat_int(1))))
            .collect();
        CoeffPath::from_parts(t, parts).unwrap()
    }

    #[test]
    fn return_map_examples() {
        let z = CoeffPath::zero(rat_int(1)).unwrap();
        assert!(return_map(&z, 4, ReturnMapMethod::Integrals).is_identity());
        // a_1 = 1 on [0,T]: p_1 = T
        let t = rat(3, 2);
        let a = ones_path(t.clone());
        assert_eq!(return_map(&a, 1, ReturnMapMethod::Integrals).coeff(1), t);
        // all ones on [0,1]: p_2 = S_{2,1}(2) + S_{2,2}(2)/2 = 2
        let b = all_ones_path(rat_int(1), 2);
        assert_eq!(return_map(&b, 2, ReturnMapMethod::Integrals).coeff(2), rat(2, 1));
    }

    #[test]
    fn both_methods_agree() {
        let t = rat_int(1);
        let a1 = PiecewisePolyFn::new(
            vec![rat(0, 1), rat(1, 2), rat(1, 1)],
            vec![UniPoly::from_coeffs(vec![rat(1, 1), rat(-2, 1)]), UniPoly::constant(rat(1, 3))],
        )
        .unwrap();
        let a2 = PiecewisePolyFn::from_poly(t.clone(), UniPoly::from_coeffs(vec![rat(0, 1), rat(1, 1)]));
        let a = CoeffPath::from_parts(t, vec![(1, a1), (2, a2)]).unwrap();
        for order in [3, 6] {
            assert_eq!(
                return_map(&a, order, ReturnMapMethod::Integrals),
                return_map(&a, order, ReturnMapMethod::Hopf)
            );
        }
    }

    #[test]
    fn center_detection() {
        let z = CoeffPath::zero(rat_int(1)).unwrap();
        assert!(is_center_to_order(&z, 4));
        let a = ones_path(rat_int(1));
        assert!(!is_center_to_order(&a, 1));
        // a * a^{-1} is a universal center
        let u = path_concat(&a, &path_inverse(&a)).unwrap();
        assert!(is_center_to_order(&u, 6));
    }

    #[test]
    fn displacement_value_examples() {
        let a = ones_path(rat_int(1));
        // t = i specializes to p_i
        assert_eq!(
            displacement_value(&a, 2, &rat_int(2)).unwrap(),
            return_map(&a, 2, ReturnMapMethod::Integrals).coeff(2)
        );
        // only the (1,1) composition contributes without an a_2 term
        assert_eq!(displacement_value(&a, 2, &rat_int(5)).unwrap(), rat(10, 1));
        // with all coefficients present: S_{2,1}(5) + S_{2,2}(5)/2 = 4 + 10 = 14
        let ones2 = all_ones_path(rat_int(1), 2);
        assert_eq!(displacement_value(&ones2, 2, &rat_int(5)).unwrap(), rat(14, 1));
        let z = CoeffPath::zero(rat_int(1)).unwrap();
        assert_eq!(displacement_value(&z, 3, &rat(7, 2)).unwrap(), rat(0, 1));
    }

    #[test]
    fn ode_matches_closed_form_riccati() {
        // dv/dx = v^2 with v(0) = r0: v(1) = r0/(1 - r0)
        let a = ones_path(rat_int(1));
        let cfg = OdeConfig::new(8, 1e-3, 1e-13).unwrap();
        let v = ode_solve(&a, &cfg).unwrap();
        let exact = 1e-3 / (1.0 - 1e-3);
        assert!((v - exact).abs() <= 1e-12, "v = {v}, exact = {exact}");
        // zero path returns r0
        let z = CoeffPath::zero(rat_int(1)).unwrap();
        assert_eq!(ode_solve(&z, &cfg).unwrap(), 1e-3);
    }

    #[test]
    fn ode_series_cross_check() {
        let a = all_ones_path(rat_int(1), 3);
        let r0 = 1e-3;
        let series = return_map(&a, 8, ReturnMapMethod::Integrals);
        let tail = series_tail_bound(&a, 8, r0).unwrap();
        assert!(tail < 1e-8 * r0 / 2.0, "tail bound {tail} too large");
        let cfg = OdeConfig::new(8, r0, 1e-13).unwrap();
        let v = ode_solve(&a, &cfg).unwrap();
        assert!((series.eval_f64(r0) - v).abs() <= 1e-8 * r0);
    }

    #[test]
    fn ode_rejects_divergence() {
        // dv/dx = v^2 from r0 = 0.9 blows past the small-value region
        let a = ones_path(rat_int(2));
        let cfg = OdeConfig::new(4, 0.9, 1e-10).unwrap();
        match ode_solve(&a, &cfg) {
            Err(Error::Numeric(msg)) => assert!(msg.contains("small-value"), "{msg}"),
            other => panic!("expected a numeric error, got {other:?}"),
        }
        assert!(OdeConfig::new(0, 1e-3, 1e-10).is_err());
        assert!(OdeConfig::new(4, 1e-3, 0.0).is_err());
    }

    #[test]
    fn lambert_w_values() {
        assert_eq!(lambert_w(0, 0.0).unwrap(), 0.0);
        assert!((lambert_w(0, std::f64::consts::E).unwrap() - 1.0).abs() < 1e-14);
        assert!((lambert_w(-1, -INV_E).unwrap() + 1.0).abs() < 2e-4);
        // residual bound on both branches
        for k in 1..=100 {
            let x = -INV_E + (k as f64) * 0.37;
            let w = lambert_w(0, x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-14 * x.abs().max(1.0));
        }
        for k in 1..=99 {
            let x = -INV_E * (k as f64) / 100.0;
            let w = lambert_w(-1, x).unwrap();
            assert!(w <= -1.0);
            assert!((w * w.exp() - x).abs() <= 1e-14 * x.abs().max(1.0));
        }
        assert!(lambert_w(0, -1.0).is_err());
        assert!(lambert_w(-1, 0.1).is_err());
        assert!(lambert_w(2, 1.0).is_err());
    }

    #[test]
    fn separable_series_examples() {
        // i=1: coefficient is x itself
        assert_eq!(separable_series(1, &rat(1, 2)), rat(1, 2));
        assert_eq!(separable_series(2, &rat_int(1)), rat(2, 1));
        // matches the return map of the all-ones path on [0, x]
        let x = rat(1, 2);
        let a = all_ones_path(x.clone(), 6);
        let series = return_map(&a, 6, ReturnMapMethod::Integrals);
        for i in 1..=6 {
            assert_eq!(series.coeff(i), separable_series(i, &x), "i = {i}");
        }
    }

    #[test]
    fn separable_closed_form_examples() {
        // initial condition at x = 0
        for r in [-1e-3, 1e-3, -0.2, 0.05] {
            let v = separable_closed_form(0.0, r).unwrap();
            assert!((v - r).abs() <= 1e-14 * r.abs().max(1.0), "r = {r}, v = {v}");
        }
        // vanishing limit from below
        let v = separable_closed_form(0.5, -1e-6).unwrap();
        assert!(v.abs() < 2e-6);
        // series vs closed form at T = 1/2
        let x = rat(1, 2);
        let series: Vec<Rat> = (1..=8).map(|i| separable_series(i, &x)).collect();
        for r in [-1e-3, 1e-3] {
            let mut acc = r;
            let mut pw = r;
            for c in &series {
                pw *= r;
                acc += rat_to_f64(c) * pw;
            }
            let closed = separable_closed_form(0.5, r).unwrap();
            assert!(
                (acc - closed).abs() <= 1e-12,
                "r = {r}: series {acc}, closed {closed}"
            );
        }
        // out-of-window r is rejected
        assert!(separable_closed_form(0.5, 0.9).is_err());
    }

    #[test]
    fn inverse_construction_examples() {
        // all-zero targets give the zero path
        let z = inverse_construction(&[rat(0, 1), rat(0, 1)], &rat_int(1)).unwrap();
        assert!(z.is_zero_path());
        // N = 1, t1 = 2, T = 1: a_1 = 1 and p_1 = 1 = t1/2!
        let p = inverse_construction(&[rat(2, 1)], &rat_int(1)).unwrap();
        assert_eq!(p.coeff(1).eval(&rat(1, 3)), rat(1, 1));
        assert_eq!(return_map(&p, 1, ReturnMapMethod::Integrals).coeff(1), rat(1, 1));
        // three irregular targets recovered exactly
        let targets = [rat(3, 7), rat(-5, 2), rat(11, 13)];
        let path = inverse_construction(&targets, &rat_int(1)).unwrap();
        let series = return_map(&path, 3, ReturnMapMethod::Integrals);
        for (i, t) in targets.iter().enumerate() {
            let i = i as u32 + 1;
            assert_eq!(series.coeff(i), t / big_to_rat(factorial(i + 1)), "i = {i}");
        }
    }
}
