//! Evaluation of Phi and its moments, the saddle-point equation, and the
//! Laplace-integral checks behind the moment asymptotics.

use std::sync::{Arc, RwLock};

use num_complex::Complex64;
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{domain, Error, Result};
use crate::numeric::Compensated;
use crate::partitions::WeightConfig;
use crate::sieve::{semiprime_parts, SemiprimePart};
use crate::special;

/// Largest triangle cut-off any evaluation may use before refusing.
pub const PART_LIMIT_BUDGET: u64 = 200_000_000;

/// Shared, growing list of semiprime parts.
pub(crate) fn parts_upto(limit: u64) -> Arc<Vec<SemiprimePart>> {
    static CACHE: RwLock<Option<(u64, Arc<Vec<SemiprimePart>>)>> = RwLock::new(None);
    if let Some((l, v)) = CACHE.read().unwrap().as_ref() {
        if *l >= limit {
            return v.clone();
        }
    }
    let mut guard = CACHE.write().unwrap();
    if let Some((l, v)) = guard.as_ref() {
        if *l >= limit {
            return v.clone();
        }
    }
    let grown = limit.max(1 << 16).next_power_of_two();
    let v = Arc::new(semiprime_parts(grown));
    *guard = Some((grown, v.clone()));
    v
}

/// Real weights lambda, mu of Phi_{lambda,mu} = lambda*Phi_{P2} + mu*Phi_{P^2}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Weights {
    pub lambda: f64,
    pub mu: f64,
}

impl Weights {
    pub const P2_PAIRS: Weights = Weights { lambda: 1.0, mu: 0.0 };
    pub const PRIME_SQUARES: Weights = Weights { lambda: 0.0, mu: 1.0 };

    pub(crate) fn of(&self, part: &SemiprimePart) -> f64 {
        self.lambda * part.weight as f64 + if part.is_square() { self.mu } else { 0.0 }
    }

    /// Parts of Phi_{P^2} are the prime squares, each with weight one.
    pub(crate) fn max_abs(&self) -> f64 {
        (2.0 * self.lambda.abs()).max((self.lambda + self.mu).abs()).max(1e-300)
    }
}

impl From<WeightConfig> for Weights {
    fn from(c: WeightConfig) -> Self {
        let f = |r: num_rational::Rational64| *r.numer() as f64 / *r.denom() as f64;
        Weights { lambda: f(c.lambda), mu: f(c.mu) }
    }
}

/// Bound on sum_{N>L} cmax * N^m * (1 + ln N) * rho^N, or None if the ratio test fails at L.
fn triangle_tail(l: u64, m: u32, x: f64, cmax: f64) -> Option<f64> {
    let n1 = (l + 1) as f64;
    let ln_rho = -1.0 / x;
    let ratio = ((n1 + 1.0) / n1).powi(m as i32) * (1.0 + (n1 + 1.0).ln()) / (1.0 + n1.ln()) * ln_rho.exp();
    if ratio >= 1.0 {
        return None;
    }
    let ln_first = cmax.ln() + m as f64 * n1.ln() + (1.0 + n1.ln()).ln() + n1 * ln_rho;
    Some(ln_first.exp() / (1.0 - ratio))
}

/// Smallest doubling of a starting cut-off with certified tail below `target`.
pub(crate) fn choose_part_limit(x: f64, m: u32, cmax: f64, target: f64) -> Result<(u64, f64)> {
    let mut l = ((8.0 * x).ceil() as u64).max(64);
    loop {
        if let Some(t) = triangle_tail(l, m, x, cmax) {
            if t <= target {
                return Ok((l, t));
            }
        }
        if l > PART_LIMIT_BUDGET {
            let best = triangle_tail(l, m, x, cmax).unwrap_or(f64::INFINITY);
            return Err(Error::Budget(format!(
                "part limit {l} exceeds budget; best tail bound {best:e} above target {target:e}"
            )));
        }
        l *= 2;
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PhiEvaluation {
    pub rho: f64,
    pub alpha: f64,
    pub value: Complex64,
    pub truncation_j: u64,
    pub part_limit: u64,
    pub tail_bound: f64,
}

fn check_rho(rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return domain(format!("rho must lie in (0,1), got {rho}"));
    }
    Ok(-1.0 / rho.ln())
}

/// Phi_{lambda,mu}(rho e(alpha)) truncated to kj <= L and j <= j_max.
pub fn phi_weighted(
    weights: Weights,
    rho: f64,
    alpha: f64,
    precision_target: f64,
    j_max: Option<u64>,
) -> Result<PhiEvaluation> {
    let x = check_rho(rho)?;
    let cmax = weights.max_abs();
    let (l, mut tail) = choose_part_limit(x, 0, cmax, precision_target)?;
    let parts = parts_upto(l);
    let jcap = j_max.unwrap_or(u64::MAX).max(1);
    let mut re = Compensated::new();
    let mut im = Compensated::new();
    for part in parts.iter().take_while(|p| p.value <= l) {
        let e = weights.of(part);
        if e == 0.0 {
            continue;
        }
        let k = part.value;
        let jmax = (l / k).min(jcap);
        let rk = (-(k as f64) / x).exp();
        if alpha == 0.0 {
            let mut w = 1.0;
            for j in 1..=jmax {
                w *= rk;
                if w < 1e-300 {
                    tail += e.abs() * w / (1.0 - rk);
                    break;
                }
                re.add(e * w / j as f64);
            }
        } else {
            let t = alpha * k as f64;
            let phase = 2.0 * std::f64::consts::PI * (t - t.round());
            let zk = Complex64::from_polar(rk, phase);
            let mut w = Complex64::new(1.0, 0.0);
            for j in 1..=jmax {
                w *= zk;
                if w.norm_sqr() < 1e-300 {
                    tail += e.abs() * w.norm() / (1.0 - rk);
                    break;
                }
                let term = w * (e / j as f64);
                re.add(term.re);
                im.add(term.im);
            }
        }
        if jmax == jcap && jcap < l / k {
            // dropped j > J inside the triangle
            tail += e.abs() * rk.powf((jcap + 1) as f64) / ((jcap + 1) as f64 * (1.0 - rk));
        }
    }
    let truncation_j = (l / 4).min(jcap);
    Ok(PhiEvaluation {
        rho,
        alpha,
        value: Complex64::new(re.value(), im.value()),
        truncation_j,
        part_limit: l,
        tail_bound: tail,
    })
}

/// Phi_{P2}: semiprime parts counted with ordered-pair weight.
pub fn phi_p2(rho: f64, alpha: f64, precision_target: f64) -> Result<PhiEvaluation> {
    phi_weighted(Weights::P2_PAIRS, rho, alpha, precision_target, None)
}

/// Phi_{P^2}: prime-square parts only.
pub fn phi_p2sq(rho: f64, alpha: f64, precision_target: f64) -> Result<PhiEvaluation> {
    phi_weighted(Weights::PRIME_SQUARES, rho, alpha, precision_target, None)
}

/// (rho d/drho)^m Phi at rho = e^{-1/X} for m = 0..=3, with tail bounds.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MomentSums {
    pub x: f64,
    pub values: [f64; 4],
    pub tails: [f64; 4],
    pub part_limit: u64,
}

/// All four moments with relative truncation error below `rel`.
pub fn phi_moments(x: f64, weights: Weights, rel: f64) -> Result<MomentSums> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("X must be positive, got {x}"));
    }
    let cmax = weights.max_abs();
    let mut l = ((48.0 * x).ceil() as u64).max(64);
    loop {
        if l > PART_LIMIT_BUDGET {
            return Err(Error::Budget(format!("moment sums at X = {x} need part limit above budget")));
        }
        let parts = parts_upto(l);
        let mut acc = [Compensated::new(); 4];
        for part in parts.iter().take_while(|p| p.value <= l) {
            let e = weights.of(part);
            if e == 0.0 {
                continue;
            }
            let k = part.value as f64;
            let rk = (-k / x).exp();
            let mut w = 1.0;
            let mut n = 0.0;
            for j in 1..=(l / part.value) {
                w *= rk;
                n += k;
                if w < 1e-300 {
                    break;
                }
                let base = e * w / j as f64;
                acc[0].add(base);
                acc[1].add(base * n);
                acc[2].add(base * n * n);
                acc[3].add(base * n * n * n);
            }
        }
        let values = [acc[0].value(), acc[1].value(), acc[2].value(), acc[3].value()];
        let mut tails = [0.0; 4];
        let mut ok = true;
        for m in 0..4u32 {
            let t = triangle_tail(l, m, x, cmax).unwrap_or(f64::INFINITY);
            tails[m as usize] = t;
            if !(t <= rel * values[m as usize].abs()) {
                ok = false;
            }
        }
        if ok {
            return Ok(MomentSums { x, values, tails, part_limit: l });
        }
        l *= 2;
    }
}

/// (rho d/drho)^m Phi_config(rho) at rho = e^{-1/X}, m <= 3.
pub fn phi_moment_exact(m: u32, x: f64, config: WeightConfig) -> Result<f64> {
    if m > 3 {
        return domain(format!("moments above m = 3 are unsupported, got {m}"));
    }
    Ok(phi_moments(x, config.into(), 1e-13)?.values[m as usize])
}

/// Leading-order moment: lambda*2 zeta(2) m! X^{m+1}(M + loglog X)/log X
/// plus mu*Gamma(m + 1/2) zeta(3/2) X^{m+1/2}/log X.
pub fn phi_moment_asymptotic(m: u32, x: f64, config: WeightConfig) -> Result<f64> {
    moment_asymptotic_weights(m, x, config.into())
}

pub fn moment_asymptotic_weights(m: u32, x: f64, w: Weights) -> Result<f64> {
    if !(x > std::f64::consts::E) {
        return domain(format!("asymptotic moments need X > e, got {x}"));
    }
    let zeta2 = special::riemann_zeta(2.0)?.value;
    let zeta32 = special::riemann_zeta(1.5)?.value;
    let mm = special::meissel_mertens().value;
    let lx = x.ln();
    let md = m as f64;
    let lam = 2.0 * zeta2 * gamma(md + 1.0) * x.powf(md + 1.0) * (mm + lx.ln()) / lx;
    let sq = gamma(md + 0.5) * zeta32 * x.powf(md + 0.5) / lx;
    Ok(w.lambda * lam + w.mu * sq)
}

/// Closed-form saddle location with its two correction terms.
pub fn closed_form_x(n: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return domain(format!("lambda must be positive, got {lambda}"));
    }
    let x = n / lambda;
    let l1 = x.ln();
    let l2 = if l1 > 0.0 { l1.ln() } else { f64::NAN };
    let mm = special::meissel_mertens().value;
    let core = l2 - std::f64::consts::LN_2 + mm;
    if !(l2 > 0.0 && core > 0.0) {
        return domain(format!("closed-form X undefined at n = {n}, lambda = {lambda}"));
    }
    let zeta2 = special::riemann_zeta(2.0)?.value;
    let base = (x * l1 / (4.0 * zeta2 * core)).sqrt();
    Ok(base * (1.0 + 0.5 * l2 / l1 - 0.5 * l2.ln() / l1))
}

#[derive(Clone, Debug, Serialize)]
pub struct SaddleSolution {
    pub n: u64,
    pub config: &'static str,
    #[serde(rename = "X")]
    pub x: f64,
    pub rho: f64,
    pub phi_moments: [f64; 4],
    pub log_psi: f64,
    pub residual: f64,
    /// (X, saddle map) pairs visited by the solver.
    #[serde(skip)]
    pub trace: Vec<(f64, f64)>,
}

/// The strictly increasing map X -> rho Phi'(rho).
pub fn saddle_map(x: f64, config: WeightConfig) -> Result<f64> {
    Ok(phi_moments(x, config.into(), 1e-13)?.values[1])
}

/// Solve n = rho Phi'(rho) for X by bracketing and Illinois regula falsi in log X.
pub fn solve_saddle(n: u64, config: WeightConfig) -> Result<SaddleSolution> {
    if n < 4 {
        return domain(format!("saddle point needs n >= 4, got {n}"));
    }
    let w: Weights = config.into();
    if !(w.lambda > 0.0) {
        return domain("saddle point needs lambda > 0");
    }
    let nf = n as f64;
    let x0 = closed_form_x(nf, w.lambda).unwrap_or(nf.sqrt());
    let mut trace = Vec::new();
    let eval = |x: f64, trace: &mut Vec<(f64, f64)>| -> Result<f64> {
        let v = saddle_map(x, config)?;
        trace.push((x, v));
        Ok(v)
    };
    let (mut lo, mut hi) = (x0 / 4.0, x0 * 4.0);
    let mut flo = eval(lo, &mut trace)?;
    let mut expand = 0;
    while flo > nf {
        lo /= 2.0;
        flo = eval(lo, &mut trace)?;
        expand += 1;
        if expand > 200 {
            return Err(Error::Solver(format!("no lower bracket for n = {n}")));
        }
    }
    let mut fhi = eval(hi, &mut trace)?;
    while fhi < nf {
        hi *= 2.0;
        fhi = eval(hi, &mut trace)?;
        expand += 1;
        if expand > 200 {
            return Err(Error::Solver(format!("no upper bracket for n = {n}")));
        }
    }
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let (mut fa, mut fb) = (flo - nf, fhi - nf);
    let mut side = 0i8;
    let mut best = (if fa.abs() < fb.abs() { a } else { b }, fa.abs().min(fb.abs()));
    for _ in 0..400 {
        if best.1 <= 1e-8 * nf || (b - a).abs() < 1e-15 {
            break;
        }
        let c = (a * fb - b * fa) / (fb - fa);
        let c = if c.is_finite() && c > a && c < b { c } else { 0.5 * (a + b) };
        let fc = eval(c.exp(), &mut trace)? - nf;
        if fc.abs() < best.1 {
            best = (c, fc.abs());
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa /= 2.0;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb /= 2.0;
            }
            side = 1;
        }
    }
    let x = best.0.exp();
    let ms = phi_moments(x, w, 1e-13)?;
    let residual = (ms.values[1] - nf).abs() / nf;
    if residual > 1e-6 {
        return Err(Error::Solver(format!("saddle residual {residual:e} above tolerance at n = {n}")));
    }
    Ok(SaddleSolution {
        n,
        config: config.label(),
        x,
        rho: (-1.0 / x).exp(),
        phi_moments: ms.values,
        log_psi: ms.values[0],
        residual,
        trace,
    })
}

/// log of rho^{-n} Psi(rho) / sqrt(2 pi Phi_2(rho)) at the saddle.
pub fn saddle_estimate_from(sol: &SaddleSolution) -> f64 {
    sol.n as f64 / sol.x + sol.phi_moments[0] - 0.5 * (2.0 * std::f64::consts::PI * sol.phi_moments[2]).ln()
}

pub fn saddle_estimate(n: u64, config: WeightConfig) -> Result<f64> {
    if n < 16 {
        return domain(format!("saddle estimate needs n >= 16, got {n}"));
    }
    Ok(saddle_estimate_from(&solve_saddle(n, config)?))
}

/// Saddle estimate of p(n+1) - p(n): the count estimate times log(1/rho) = 1/X.
pub fn difference_estimate(n: u64, config: WeightConfig) -> Result<f64> {
    if n < 16 {
        return domain(format!("difference estimate needs n >= 16, got {n}"));
    }
    let sol = solve_saddle(n, config)?;
    Ok(saddle_estimate_from(&sol) - sol.x.ln())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LaplaceParams {
    pub a: f64,
    pub lambda: f64,
    pub b: f64,
    pub l: f64,
    /// Include the (loglog t + M) factor.
    pub loglog: bool,
    pub m_const: f64,
}

impl LaplaceParams {
    pub fn new(a: f64, lambda: f64, b: f64, l: f64) -> Self {
        LaplaceParams { a, lambda, b, l, loglog: true, m_const: special::meissel_mertens().value }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LaplaceReport {
    pub params: LaplaceParams,
    pub integral: f64,
    pub asymptotic: f64,
    pub ratio: f64,
    pub quadrature_error: f64,
    pub tail_bound: f64,
    pub upper_limit: f64,
}

/// Upper bound for Gamma(s, x) when x > s - 1 >= 0.
fn upper_incomplete_gamma_bound(s: f64, x: f64) -> f64 {
    if x <= s - 1.0 {
        return f64::INFINITY;
    }
    ((s - 1.0) * x.ln() - x).exp() / (1.0 - (s - 1.0) / x)
}

/// Compares the integral of e^{-at} t^lambda (loglog t + M)/(log t)^b over [L, inf)
/// with Gamma(lambda+1)(loglog(1/a) + M)/(a^{lambda+1} (log 1/a)^b).
pub fn laplace_check(p: LaplaceParams) -> Result<LaplaceReport> {
    if !(p.a > 0.0 && p.a <= 1e-2) {
        return domain(format!("laplace check needs 0 < a <= 1e-2, got {}", p.a));
    }
    if !(p.lambda > 0.0) || !(p.b >= 0.0) || !(p.l > 1.0) {
        return domain("laplace check needs lambda > 0, b >= 0, L > 1");
    }
    let la = (1.0 / p.a).ln();
    let g_at = |v: f64| if p.loglog { v.ln() + p.m_const } else { 1.0 } / v.powf(p.b);
    let asym = gamma(p.lambda + 1.0) * g_at(la) / p.a.powf(p.lambda + 1.0);
    let ln_asym = asym.abs().ln();
    // for t >= e^e the integrand is at most e^{-at} t^{lambda+1}
    let mut t_hi = p.l.max(std::f64::consts::E.powf(std::f64::consts::E)).max(4.0 * (p.lambda + 2.0) / p.a);
    let tail = loop {
        let s = p.lambda + 2.0;
        let bound = upper_incomplete_gamma_bound(s, p.a * t_hi) / p.a.powf(s);
        if bound.ln() - ln_asym < (1e-14f64).ln() {
            break bound;
        }
        t_hi *= 1.5;
    };
    // integrate in v = log t, normalised by the asymptotic value
    let f = |v: f64| {
        let t = v.exp();
        let ln_mag = -p.a * t + (p.lambda + 1.0) * v - ln_asym;
        ln_mag.exp() * g_at(v) * asym.signum()
    };
    let (v0, v1) = (p.l.ln(), t_hi.ln());
    let pieces = 256;
    let h = (v1 - v0) / pieces as f64;
    let mut total = Compensated::new();
    let mut err = 0.0;
    for i in 0..pieces {
        let a = v0 + i as f64 * h;
        let out = quadrature::double_exponential::integrate(f, a, a + h, 1e-13);
        total.add(out.integral);
        err += out.error_estimate;
    }
    if !(err <= 1e-9) || !total.value().is_finite() {
        return Err(Error::Quadrature { message: "laplace integral".into(), achieved: err });
    }
    let ratio = total.value();
    Ok(LaplaceReport {
        params: p,
        integral: ratio * asym,
        asymptotic: asym,
        ratio,
        quadrature_error: err * asym.abs(),
        tail_bound: tail,
        upper_limit: t_hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_rho(x: f64) -> f64 {
        (-1.0 / x).exp()
    }

    #[test]
    fn phi_p2_against_leading_term() {
        let ev = phi_p2(x_rho(50.0), 0.0, 1e-12).unwrap();
        assert_eq!(ev.value.im, 0.0);
        let asym = moment_asymptotic_weights(0, 50.0, Weights::P2_PAIRS).unwrap();
        let r = ev.value.re / asym;
        assert!((0.5..=2.0).contains(&r), "ratio {r}");
    }

    #[test]
    fn phi_p2sq_against_leading_term() {
        let ev = phi_p2sq(x_rho(50.0), 0.0, 1e-12).unwrap();
        let asym = moment_asymptotic_weights(0, 50.0, Weights::PRIME_SQUARES).unwrap();
        let r = ev.value.re / asym;
        assert!((0.5..=2.0).contains(&r), "ratio {r}");
        let tiny = phi_p2sq(1e-3, 0.0, 1e-30).unwrap();
        assert!(tiny.value.re < 1e-11);
    }

    #[test]
    fn phi_cancellation_and_symmetry() {
        let rho = x_rho(10.0);
        let at0 = phi_p2(rho, 0.0, 1e-12).unwrap().value.re;
        let half = phi_p2(rho, -0.5, 1e-12).unwrap().value;
        assert!(half.norm() < at0);
        for alpha in [0.1, 0.237, 0.4] {
            let p = phi_p2(rho, alpha, 1e-12).unwrap().value;
            let m = phi_p2(rho, -alpha, 1e-12).unwrap().value;
            assert!((p - m.conj()).norm() < 1e-12 * at0);
        }
        assert!(phi_p2(1.0, 0.0, 1e-6).is_err());
        assert!(phi_p2(0.0, 0.0, 1e-6).is_err());
    }

    #[test]
    fn additivity_of_weights() {
        let rho = x_rho(30.0);
        let w = Weights { lambda: 0.5, mu: 0.5 };
        let all = phi_weighted(w, rho, 0.13, 1e-13, None).unwrap().value;
        let a = phi_p2(rho, 0.13, 1e-13).unwrap().value;
        let b = phi_p2sq(rho, 0.13, 1e-13).unwrap().value;
        assert!((all - (a * 0.5 + b * 0.5)).norm() < 1e-11);
    }

    #[test]
    fn j_truncation_within_bound() {
        let rho = x_rho(20.0);
        let one = phi_weighted(Weights::P2_PAIRS, rho, 0.0, 1e-13, Some(1)).unwrap();
        let many = phi_weighted(Weights::P2_PAIRS, rho, 0.0, 1e-13, Some(64)).unwrap();
        assert!((one.value.re - many.value.re).abs() <= one.tail_bound);
        assert!(one.tail_bound > many.tail_bound);
    }

    #[test]
    fn moments_consistent_with_phi() {
        let cfg = WeightConfig::p2_sharp();
        let m0 = phi_moment_exact(0, 40.0, cfg).unwrap();
        let ev = phi_p2(x_rho(40.0), 0.0, 1e-13).unwrap();
        assert!((m0 - ev.value.re).abs() < 1e-10 * m0);
        assert!(phi_moment_exact(4, 40.0, cfg).is_err());
    }

    #[test]
    fn moment_law_at_moderate_x() {
        let cfg = WeightConfig::p2_sharp();
        let exact = phi_moment_exact(1, 100.0, cfg).unwrap();
        let asym = phi_moment_asymptotic(1, 100.0, cfg).unwrap();
        assert!((0.5..=2.0).contains(&(exact / asym)));
        let r = phi_moment_exact(2, 1000.0, cfg).unwrap() / phi_moment_exact(1, 1000.0, cfg).unwrap();
        assert!((r / 2000.0 - 1.0).abs() < 0.25, "ratio {r}");
        for x in [100.0, 300.0, 1000.0] {
            for m in 0..3u32 {
                let q = phi_moment_exact(m + 1, x, cfg).unwrap() / phi_moment_exact(m, x, cfg).unwrap();
                let k = (m + 1) as f64;
                assert!(q >= k * x / 2.0 && q <= 2.0 * k * x, "X={x} m={m} q={q}");
            }
        }
    }

    #[test]
    fn asymptotic_moment_formula() {
        let cfg = WeightConfig::p2_sharp();
        let e = std::f64::consts::E;
        let x = e.powf(e);
        let v = phi_moment_asymptotic(0, x, cfg).unwrap();
        let m = special::meissel_mertens().value;
        let expect = 2.0 * std::f64::consts::PI.powi(2) / 6.0 * x * (m + 1.0) / e;
        assert!((v / expect - 1.0).abs() < 1e-12);
        let a2 = phi_moment_asymptotic(2, 500.0, cfg).unwrap();
        let a1 = phi_moment_asymptotic(1, 500.0, cfg).unwrap();
        assert!((a2 / a1 - 1000.0).abs() < 1e-9);
        assert!(phi_moment_asymptotic(0, 2.0, cfg).is_err());
    }

    #[test]
    fn closed_form_domain_and_scaling() {
        let v = closed_form_x(1e6, 0.5).unwrap();
        assert!(v.is_finite() && v > 0.0);
        assert_eq!(closed_form_x(2e6, 1.0).unwrap(), closed_form_x(1e6, 0.5).unwrap());
        assert!(closed_form_x(3.0, 1.0).is_err());
    }

    #[test]
    fn saddle_solutions() {
        let cfg = WeightConfig::p2();
        let s = solve_saddle(10_000, cfg).unwrap();
        assert!(s.residual <= 1e-6);
        let cf = closed_form_x(1e4, 0.5).unwrap();
        assert!(s.x / cf < 2.0 && cf / s.x < 2.0);
        let s2 = solve_saddle(12_000, cfg).unwrap();
        assert!(s2.x > s.x);
        for (x, _) in s.trace.iter().take(6) {
            let h = 1e-4 * x;
            let d = saddle_map(x + h, cfg).unwrap() - saddle_map(x - h, cfg).unwrap();
            assert!(d > 0.0);
        }
        assert!(s.phi_moments.iter().all(|&m| m > 0.0));
        assert!(solve_saddle(3, cfg).is_err());
        let small = solve_saddle(4, cfg).unwrap();
        assert!(small.residual <= 1e-6);
    }

    #[test]
    fn estimate_relations() {
        let cfg = WeightConfig::p2();
        let s = solve_saddle(500, cfg).unwrap();
        let a = saddle_estimate(500, cfg).unwrap();
        let b = difference_estimate(500, cfg).unwrap();
        assert!((b - a + s.x.ln()).abs() < 1e-9);
        assert!(saddle_estimate(15, cfg).is_err());
        let mut prev = f64::NEG_INFINITY;
        for n in [100u64, 400, 1600, 6400, 20_000] {
            let e = saddle_estimate(n, cfg).unwrap();
            assert!(e > prev);
            prev = e;
        }
    }

    #[test]
    fn laplace_examples() {
        let r = laplace_check(LaplaceParams::new(1e-4, 1.0, 1.0, 2.0)).unwrap();
        assert!((0.8..=1.2).contains(&r.ratio), "{}", r.ratio);
        let r3 = laplace_check(LaplaceParams::new(1e-3, 1.0, 1.0, 2.0)).unwrap();
        let r6 = laplace_check(LaplaceParams::new(1e-6, 1.0, 1.0, 2.0)).unwrap();
        assert!((r6.ratio - 1.0).abs() < (r3.ratio - 1.0).abs());
        let plain = LaplaceParams { loglog: false, m_const: 0.0, b: 0.0, ..LaplaceParams::new(1e-6, 1.5, 0.0, 2.0) };
        let r = laplace_check(plain).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-8, "{}", r.ratio);
        assert!(laplace_check(LaplaceParams::new(0.5, 1.0, 1.0, 2.0)).is_err());
    }
}
