//! Farey arcs, coefficient recovery from samples on a circle, and the
//! magnitude of Phi around the circle.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::numeric::{ln_biguint, Compensated};
use crate::partitions::{PartitionSeries, WeightConfig};
use crate::saddle::{self, choose_part_limit, parts_upto, Weights};
use crate::special;

pub use crate::sieve::{mobius, totient};

const TAU: f64 = std::f64::consts::TAU;
const U: f64 = f64::EPSILON / 2.0;

/// Largest Farey order the arc list is materialised for.
pub const FAREY_ORDER_BUDGET: u64 = 2000;

/// Largest DFT length the recovery will try.
pub const MAX_SAMPLES: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MajorArc {
    pub a: u64,
    pub q: u64,
    pub center: f64,
    pub half_width: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ArcClass {
    Major { q: u64, a: u64 },
    Minor,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcDecomposition {
    pub x: f64,
    pub a_param: f64,
    pub q_max: f64,
    pub arcs: Vec<MajorArc>,
}

/// Farey fractions of order n in [0,1), by the neighbour recurrence.
fn farey(n: u64) -> Vec<(u64, u64)> {
    let mut out = vec![(0, 1)];
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    while c < d {
        out.push((c, d));
        let k = (n + b) / d;
        let (nc, nd) = (k * c - a, k * d - b);
        a = c;
        b = d;
        c = nc;
        d = nd;
    }
    out
}

/// Arcs |alpha - a/q| <= (log X)^A/(qX) around every a/q with q <= (log X)^A.
///
/// The construction insists on A > 18 unless `allow_small_a` is set.
pub fn build_arcs(x: f64, a_param: f64, allow_small_a: bool) -> Result<ArcDecomposition> {
    if !(x >= std::f64::consts::E.exp()) {
        return domain(format!("arcs need X >= e^e, got {x}"));
    }
    if !(a_param > 0.0) {
        return domain(format!("A must be positive, got {a_param}"));
    }
    if a_param <= 18.0 && !allow_small_a {
        return domain(format!("A must exceed 18, got {a_param} (pass the small-A override to experiment)"));
    }
    let q = x.ln().powf(a_param);
    let order = q.floor();
    // neighbours a/q, a'/q' sit 1/(qq') apart and the widths sum to Q(q+q')/(qq'X)
    let widest = if order >= 2.0 { 2.0 * order - 1.0 } else { 2.0 };
    if q * widest >= x {
        return domain(format!("major arcs overlap at X = {x}, A = {a_param} (Q = {q:.4e}); X too small for A"));
    }
    if order > FAREY_ORDER_BUDGET as f64 {
        return Err(Error::Budget(format!("Farey order {order} exceeds budget {FAREY_ORDER_BUDGET}")));
    }
    let arcs = farey(order as u64)
        .into_iter()
        .map(|(a, qq)| MajorArc { a, q: qq, center: a as f64 / qq as f64, half_width: q / (qq as f64 * x) })
        .collect();
    Ok(ArcDecomposition { x, a_param, q_max: q, arcs })
}

impl ArcDecomposition {
    pub fn half_width(&self, q: u64) -> f64 {
        self.q_max / (q as f64 * self.x)
    }

    /// Major arc containing alpha (taken mod 1), if any.
    pub fn classify(&self, alpha: f64) -> ArcClass {
        let t = alpha - alpha.floor();
        for q in 1..=(self.q_max.floor() as u64) {
            let a = (t * q as f64).round() as u64;
            let d = (t - a as f64 / q as f64).abs();
            let a = a % q;
            if a.gcd(&q) == 1 && d <= self.half_width(q) {
                return ArcClass::Major { q, a };
            }
        }
        ArcClass::Minor
    }

    /// Lebesgue measure of the union of the major arcs.
    pub fn total_measure(&self) -> f64 {
        self.arcs.iter().map(|a| 2.0 * a.half_width).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientRecovery {
    pub n: u64,
    pub n_samples: usize,
    pub rho: f64,
    pub raw: f64,
    pub alias_bound: f64,
    pub rounding_bound: f64,
    #[serde(serialize_with = "ser_big")]
    pub rounded: BigUint,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Taylor coefficients of Phi scaled by rho^N and folded mod `n_samples`.
struct Folded {
    bins: Vec<Complex64>,
    /// Bound on the l1 error of the bins from rounding.
    bin_error: f64,
    tail: f64,
    abs_sum: f64,
}

fn fold_phi(weights: Weights, x: f64, n_samples: usize) -> Result<Folded> {
    let (l, tail) = choose_part_limit(x, 0, weights.max_abs(), 1e-18)?;
    let parts = parts_upto(l);
    let mut bins = vec![0.0f64; n_samples];
    let mut hits = vec![0u32; n_samples];
    let mut term_error = 0.0;
    for part in parts.iter().take_while(|p| p.value <= l) {
        let e = weights.of(part);
        if e == 0.0 {
            continue;
        }
        let k = part.value;
        let rk = (-(k as f64) / x).exp();
        let mut w = 1.0;
        for j in 1..=(l / k) {
            w *= rk;
            let term = e * w / j as f64;
            if term.abs() < 1e-300 {
                break;
            }
            let r = ((k * j) % n_samples as u64) as usize;
            bins[r] += term;
            hits[r] += 1;
            term_error += term.abs() * (2 * j + 3) as f64 * U;
        }
    }
    let abs_sum: f64 = bins.iter().map(|b| b.abs()).sum();
    let max_hits = hits.iter().copied().max().unwrap_or(0) as f64;
    Ok(Folded {
        bins: bins.into_iter().map(|b| Complex64::new(b, 0.0)).collect(),
        bin_error: term_error + max_hits * U * abs_sum,
        tail,
        abs_sum,
    })
}

/// Relative normwise error bound of one radix-2 style FFT of length n.
fn fft_relative(n: usize) -> f64 {
    10.0 * U * (n as f64).log2().max(1.0)
}

/// Upper bound on sum_{t>=1} p(n+tN) rho^{tN}.
fn alias_bound(n: u64, n_samples: usize, rho: f64, weights: Weights, exact: Option<&PartitionSeries>) -> Result<f64> {
    let nn = n_samples as u64;
    let ln_rho = rho.ln();
    let mut total = 0.0;
    let mut t0 = 1u64;
    if let Some(s) = exact {
        while n + t0 * nn <= s.n_max as u64 {
            let m = (n + t0 * nn) as usize;
            total += (ln_biguint(s.count(m)) + (t0 * nn) as f64 * ln_rho).exp();
            t0 += 1;
        }
    }
    // p(m) <= r^{-m} Psi(r) for any r in (0,1), summed as a geometric series in (rho/r)^N
    let x = -1.0 / ln_rho;
    let mut best = f64::INFINITY;
    for i in 1..=48 {
        let c = 1.0 + 0.02 * 1.12f64.powi(i);
        let xr = x * c;
        let r = (-1.0 / xr).exp();
        let phi = saddle::phi_weighted(weights, r, 0.0, 1e-12, None)?;
        let phi_upper = phi.value.re + phi.tail_bound + 1e-10 * phi.value.re.abs();
        let ln_q = nn as f64 * (ln_rho + 1.0 / xr);
        let ln_b = n as f64 / xr + phi_upper + t0 as f64 * ln_q - (-ln_q.exp()).ln_1p();
        best = best.min(ln_b.exp());
    }
    Ok(total + best)
}

/// Recovers p(n) from N samples of Psi on |z| = rho by one inverse and one forward DFT.
pub fn recover_coefficient(
    n: u64,
    config: WeightConfig,
    n_samples: usize,
    rho: f64,
    exact: Option<&PartitionSeries>,
) -> Result<CoefficientRecovery> {
    if !(rho > 0.0 && rho < 1.0) {
        return domain(format!("rho must lie in (0,1), got {rho}"));
    }
    if (n_samples as u64) <= n {
        return domain(format!("need more than n = {n} samples, got {n_samples}"));
    }
    if n_samples > MAX_SAMPLES {
        return Err(Error::Budget(format!("{n_samples} samples exceeds budget {MAX_SAMPLES}")));
    }
    let weights = Weights::from(config);
    let x = -1.0 / rho.ln();
    let folded = fold_phi(weights, x, n_samples)?;
    let mut planner = FftPlanner::<f64>::new();
    let mut phi = folded.bins.clone();
    planner.plan_fft_inverse(n_samples).process(&mut phi);
    let shift = phi.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max);
    let mut psi: Vec<Complex64> = phi.iter().map(|p| (p - shift).exp()).collect();
    let abs_psi_sum: f64 = psi.iter().map(|p| p.norm()).sum();
    let rms_psi = (psi.iter().map(|p| p.norm_sqr()).sum::<f64>() / n_samples as f64).sqrt();
    planner.plan_fft_forward(n_samples).process(&mut psi);
    let ln_scale = shift - n as f64 * rho.ln();
    let coeff = psi[n as usize].re / n_samples as f64;
    let raw = coeff * ln_scale.exp();

    let l2_bins = folded.bins.iter().map(|b| b.norm_sqr()).sum::<f64>().sqrt();
    let fft = fft_relative(n_samples);
    let phi_err = folded.bin_error + folded.tail + fft * (n_samples as f64).sqrt() * l2_bins;
    let psi_rel = (phi_err + 2.0 * U * (folded.abs_sum + shift.abs())).exp_m1() + 2.0 * U;
    let coeff_err = abs_psi_sum / n_samples as f64 * psi_rel + fft * rms_psi * (1.0 + psi_rel);
    let rounding_bound = coeff_err * ln_scale.exp() + raw.abs() * U * (ln_scale.abs() + 4.0);
    let alias = alias_bound(n, n_samples, rho, weights, exact)?;
    if !(alias + rounding_bound < 0.5) || !raw.is_finite() {
        return Err(Error::Budget(format!(
            "recovery of p({n}) with N = {n_samples}, rho = {rho}: alias bound {alias:e} + rounding bound {rounding_bound:e} is not below 1/2"
        )));
    }
    let rounded = BigUint::from(raw.round().max(0.0) as u128);
    Ok(CoefficientRecovery { n, n_samples, rho, raw, alias_bound: alias, rounding_bound, rounded })
}

/// Near-saddle radius for coefficient n.
pub fn default_rho(n: u64, config: WeightConfig) -> f64 {
    let x = saddle::solve_saddle(n, config)
        .map(|s| s.x)
        .or_else(|_| saddle::closed_form_x(n as f64, Weights::from(config).lambda))
        .unwrap_or(2.0)
        .max(1.5);
    (-1.0 / x).exp()
}

/// Recovery at the near-saddle radius, doubling N from the next power of two >= 4n until certified.
pub fn recover_coefficient_auto(
    n: u64,
    config: WeightConfig,
    exact: Option<&PartitionSeries>,
) -> Result<CoefficientRecovery> {
    let rho = default_rho(n, config);
    let mut n_samples = ((4 * n).max(64) as usize).next_power_of_two();
    loop {
        match recover_coefficient(n, config, n_samples, rho, exact) {
            Err(Error::Budget(msg)) => {
                if n_samples * 2 > MAX_SAMPLES {
                    return Err(Error::Budget(msg));
                }
                n_samples *= 2;
            }
            other => return other,
        }
    }
}

/// Coefficients c_N rho^N of Phi(rho z), ready for evaluation anywhere on the circle.
pub struct PhiCoefficients {
    pub x: f64,
    pub coeffs: Vec<f64>,
    pub tail: f64,
}

pub fn phi_coefficients(x: f64, config: WeightConfig, target: f64) -> Result<PhiCoefficients> {
    let weights = Weights::from(config);
    let (l, tail) = choose_part_limit(x, 0, weights.max_abs(), target)?;
    let parts = parts_upto(l);
    let mut coeffs = vec![0.0; l as usize + 1];
    for part in parts.iter().take_while(|p| p.value <= l) {
        let e = weights.of(part);
        if e == 0.0 {
            continue;
        }
        let k = part.value;
        let rk = (-(k as f64) / x).exp();
        let mut w = 1.0;
        for j in 1..=(l / k) {
            w *= rk;
            if w < 1e-300 {
                break;
            }
            coeffs[(k * j) as usize] += e * w / j as f64;
        }
    }
    Ok(PhiCoefficients { x, coeffs, tail })
}

impl PhiCoefficients {
    /// Phi(rho e(alpha)); the rotation is re-anchored every 256 steps.
    pub fn eval(&self, alpha: f64) -> Complex64 {
        let t = alpha - alpha.round();
        let mut re = Compensated::new();
        let mut im = Compensated::new();
        let step = Complex64::from_polar(1.0, TAU * t);
        let mut z = Complex64::new(1.0, 0.0);
        for (m, &c) in self.coeffs.iter().enumerate() {
            if m % 256 == 0 {
                let ph = m as f64 * t;
                z = Complex64::from_polar(1.0, TAU * (ph - ph.round()));
            }
            if c != 0.0 {
                re.add(c * z.re);
                im.add(c * z.im);
            }
            z *= step;
        }
        Complex64::new(re.value(), im.value())
    }

    pub fn at_origin(&self) -> f64 {
        let mut s = Compensated::new();
        for &c in &self.coeffs {
            s.add(c);
        }
        s.value()
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProfileRow {
    pub alpha: f64,
    pub re_phi: f64,
    /// |exp Phi(rho e(alpha))| / exp Phi(rho).
    pub abs_psi: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiProfile {
    pub x: f64,
    pub phi_rho: f64,
    pub rows: Vec<ProfileRow>,
    pub argmax_alpha: f64,
    /// Largest Re Phi / Phi(rho) over samples on major arcs with q >= 2.
    pub max_nonprincipal_ratio: Option<f64>,
    pub nonprincipal_argmax: Option<f64>,
    pub half_ratio: f64,
}

/// Re Phi(rho e(alpha)) on a uniform grid of [-1/2, 1/2) plus points on every non-principal arc.
///
/// Without arcs only the grid is sampled and no non-principal maximum is reported.
pub fn profile_phi(x: f64, config: WeightConfig, grid_size: usize, arcs: Option<&ArcDecomposition>) -> Result<PhiProfile> {
    if !(x >= 100.0) {
        return domain(format!("profile needs X >= 100, got {x}"));
    }
    if grid_size < 2 {
        return domain("grid needs at least two points");
    }
    let coeffs = phi_coefficients(x, config, 1e-12)?;
    let phi_rho = coeffs.at_origin();
    let mut alphas: Vec<f64> = (0..grid_size).map(|j| -0.5 + j as f64 / grid_size as f64).collect();
    alphas.push(0.5);
    for arc in arcs.iter().flat_map(|d| d.arcs.iter()).filter(|a| a.q >= 2) {
        let c = if arc.center > 0.5 { arc.center - 1.0 } else { arc.center };
        for f in [-0.999, -0.5, 0.0, 0.5, 0.999] {
            alphas.push(c + f * arc.half_width);
        }
    }
    alphas.sort_by(|a, b| a.total_cmp(b));
    alphas.dedup();
    let rows: Vec<ProfileRow> = alphas
        .par_iter()
        .map(|&alpha| {
            let v = coeffs.eval(alpha);
            ProfileRow { alpha, re_phi: v.re, abs_psi: (v.re - phi_rho).exp() }
        })
        .collect();
    let argmax_alpha = rows.iter().max_by(|a, b| a.re_phi.total_cmp(&b.re_phi)).map(|r| r.alpha).unwrap_or(0.0);
    let mut best: Option<(f64, f64)> = None;
    for r in rows.iter().filter(|_| arcs.is_some()) {
        if let Some(ArcClass::Major { q, .. }) = arcs.map(|d| d.classify(r.alpha)) {
            if q >= 2 {
                let ratio = r.re_phi / phi_rho;
                if best.map_or(true, |(b, _)| ratio > b) {
                    best = Some((ratio, r.alpha));
                }
            }
        }
    }
    let half = rows.iter().find(|r| r.alpha == 0.5).map(|r| r.re_phi).unwrap_or(f64::NAN);
    Ok(PhiProfile {
        x,
        phi_rho,
        rows,
        argmax_alpha,
        max_nonprincipal_ratio: best.map(|b| b.0),
        nonprincipal_argmax: best.map(|b| b.1),
        half_ratio: half / phi_rho,
    })
}

/// S*(q,a) = sum over l mod q coprime to q of e(al/q), summed directly and rounded.
pub fn ramanujan_sum(q: u64, a: i64) -> Result<i64> {
    if q == 0 {
        return domain("q must be positive");
    }
    if q > 1_000_000 {
        return Err(Error::Budget(format!("direct Ramanujan sum limited to q <= 10^6, got {q}")));
    }
    let ar = a.rem_euclid(q as i64) as u64;
    let mut s = Compensated::new();
    for l in 1..=q {
        if l.gcd(&q) == 1 {
            let r = (ar * l) % q;
            s.add((TAU * r as f64 / q as f64).cos());
        }
    }
    Ok(s.value().round() as i64)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MajorArcSum {
    pub q: u64,
    pub a: u64,
    pub j_max: u64,
    pub partial: f64,
    /// zeta(2) prod_{p | q}(-p) / q^2
    pub closed_form: f64,
    /// The same sum with S*(q_j, a_j) replaced by (-1)^j mu(q_j).
    pub alternating: f64,
}

/// Partial sum of S*(q_j,a_j)/(j^2 phi(q_j)) over j <= j_max.
pub fn major_arc_partial(q: u64, a: u64, j_max: u64) -> Result<MajorArcSum> {
    if q == 0 || a.gcd(&q) != 1 {
        return domain(format!("need gcd(a, q) = 1 with q >= 1, got a = {a}, q = {q}"));
    }
    let mut partial = Compensated::new();
    let mut alternating = Compensated::new();
    for j in 1..=j_max {
        let g = q.gcd(&j);
        let qj = q / g;
        let aj = (a as u128 * (j / g) as u128 % qj as u128) as i64;
        let s = ramanujan_sum(qj, aj)? as f64;
        let denom = (j as f64).powi(2) * totient(qj) as f64;
        partial.add(s / denom);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        alternating.add(sign * mobius(qj) as f64 / denom);
    }
    let zeta2 = special::riemann_zeta(2.0)?.value;
    let mut prod = 1.0;
    for p in crate::sieve::prime_factors(q) {
        prod *= -(p as f64);
    }
    Ok(MajorArcSum {
        q,
        a,
        j_max,
        partial: partial.value(),
        closed_form: zeta2 * prod / (q as f64).powi(2),
        alternating: alternating.value(),
    })
}

/// The sum over j <= sqrt(X).
pub fn major_arc_sum(q: u64, a: u64, x: f64) -> Result<MajorArcSum> {
    if !(x >= 1.0) {
        return domain(format!("X must be at least 1, got {x}"));
    }
    major_arc_partial(q, a, x.sqrt().floor() as u64)
}

/// Exact p(n) as a float-free check value, for callers that hold a series.
pub fn exact_matches(rec: &CoefficientRecovery, series: &PartitionSeries) -> bool {
    (rec.n as usize) <= series.n_max && &rec.rounded == series.count(rec.n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partition_series;

    fn small_arcs(x: f64) -> ArcDecomposition {
        build_arcs(x, 1.0, true).unwrap()
    }

    #[test]
    fn farey_sequence_of_order_five() {
        let f = farey(5);
        assert_eq!(f.len(), 10);
        assert_eq!(f[0], (0, 1));
        assert_eq!(f[1], (1, 5));
        assert_eq!(*f.last().unwrap(), (4, 5));
        for w in f.windows(2) {
            let ((a, b), (c, d)) = (w[0], w[1]);
            assert_eq!(c * b - a * d, 1);
        }
    }

    #[test]
    fn classifier_examples() {
        let arcs = small_arcs(1000.0);
        assert!(arcs.q_max >= 2.0);
        assert_eq!(arcs.classify(0.0), ArcClass::Major { q: 1, a: 0 });
        assert_eq!(arcs.classify(1.0), ArcClass::Major { q: 1, a: 0 });
        assert_eq!(arcs.classify(0.5), ArcClass::Major { q: 2, a: 1 });
        assert_eq!(arcs.classify(-0.5), ArcClass::Major { q: 2, a: 1 });
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert_eq!(arcs.classify(golden), ArcClass::Minor);
    }

    #[test]
    fn arcs_disjoint_and_coprime() {
        let arcs = small_arcs(1e4);
        for w in arcs.arcs.windows(2) {
            assert!(w[0].center + w[0].half_width < w[1].center - w[1].half_width);
            assert_eq!(w[1].a.gcd(&w[1].q), 1);
        }
        let last = arcs.arcs.last().unwrap();
        assert!(last.center + last.half_width < 1.0 - arcs.arcs[0].half_width);
    }

    #[test]
    fn large_a_required_without_override() {
        assert!(build_arcs(1e3, 10.0, false).is_err());
        assert!(matches!(build_arcs(1e6, 19.0, false), Err(Error::Domain(_))));
        assert!(build_arcs(10.0, 1.0, true).is_err());
    }

    #[test]
    fn major_measure_shrinks() {
        let m: Vec<f64> = [1e3, 1e4, 1e5].iter().map(|&x| small_arcs(x).total_measure()).collect();
        assert!(m[0] > m[1] && m[1] > m[2], "{m:?}");
    }

    #[test]
    fn recovery_examples() {
        let r = recover_coefficient(10, WeightConfig::p2(), 64, 0.5, None).unwrap();
        assert_eq!(r.rounded, BigUint::from(2u32));
        assert!(r.alias_bound + r.rounding_bound < 0.5);
        assert!((r.raw - 2.0).abs() <= r.alias_bound + r.rounding_bound);
        let r = recover_coefficient_auto(0, WeightConfig::p2(), None).unwrap();
        assert_eq!(r.rounded, BigUint::from(1u32));
        let s = partition_series(WeightConfig::p2_sharp(), 100).unwrap();
        let r = recover_coefficient_auto(100, WeightConfig::p2_sharp(), None).unwrap();
        assert!(exact_matches(&r, &s));
    }

    #[test]
    fn recovery_refuses_aliased_sampling() {
        let r = recover_coefficient(200, WeightConfig::p2_sharp(), 256, 0.99, None);
        assert!(matches!(r, Err(Error::Budget(_))));
        assert!(recover_coefficient(10, WeightConfig::p2(), 8, 0.5, None).is_err());
        assert!(recover_coefficient(10, WeightConfig::p2(), 64, 1.0, None).is_err());
    }

    #[test]
    fn direct_phi_matches_saddle_engine() {
        let c = phi_coefficients(200.0, WeightConfig::p2_sharp(), 1e-12).unwrap();
        for alpha in [0.0, 0.1, 0.25, 0.5] {
            let rho = (-1.0f64 / 200.0).exp();
            let e = saddle::phi_weighted(Weights::P2_PAIRS, rho, alpha, 1e-12, None).unwrap();
            assert!((c.eval(alpha) - e.value).norm() < 1e-9 * e.value.norm().max(1.0));
        }
    }

    #[test]
    fn profile_symmetric_and_peaked() {
        let arcs = small_arcs(300.0);
        let p = profile_phi(300.0, WeightConfig::p2_sharp(), 256, Some(&arcs)).unwrap();
        assert_eq!(p.argmax_alpha, 0.0);
        let by_alpha = |a: f64| p.rows.iter().find(|r| (r.alpha - a).abs() < 1e-15).unwrap().re_phi;
        for j in 1..128 {
            let a = j as f64 / 256.0;
            assert!((by_alpha(a) - by_alpha(-a)).abs() < 1e-9 * p.phi_rho);
        }
        assert!(p.max_nonprincipal_ratio.unwrap() < 1.0);
        assert!(profile_phi(50.0, WeightConfig::p2(), 16, None).is_err());
    }

    #[test]
    fn ramanujan_sum_examples() {
        assert_eq!(ramanujan_sum(1, 0).unwrap(), 1);
        assert_eq!(ramanujan_sum(4, 1).unwrap(), 0);
        assert_eq!(ramanujan_sum(6, 1).unwrap(), 1);
        // c_q(0) = phi(q)
        assert_eq!(ramanujan_sum(12, 0).unwrap(), 4);
    }

    #[test]
    fn ramanujan_sum_is_mobius_for_coprime_a() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 200 {
            let q = rng.gen_range(1..=10_000u64);
            let a = rng.gen_range(0..q.max(2)) as u64;
            if a.gcd(&q) != 1 {
                continue;
            }
            assert_eq!(ramanujan_sum(q, a as i64).unwrap(), mobius(q) as i64, "q = {q}, a = {a}");
            done += 1;
        }
    }

    #[test]
    fn major_arc_sum_examples() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        let s = major_arc_sum(1, 0, 1e6).unwrap();
        assert!((s.partial - z2).abs() < 2e-3);
        let s = major_arc_sum(2, 1, 1e6).unwrap();
        assert!((s.closed_form + z2 / 2.0).abs() < 1e-12);
        assert!((s.partial - s.closed_form).abs() < 1e-2);
        let s = major_arc_sum(6, 1, 1e6).unwrap();
        assert!((s.closed_form - z2 / 6.0).abs() < 1e-12);
        assert!((s.partial - s.closed_form).abs() < 1e-2);
        assert!(major_arc_sum(4, 2, 1e4).is_err());
    }

    #[test]
    fn major_arc_partial_sums_are_cauchy() {
        let mut cs = Vec::new();
        for q in 1..=12u64 {
            for &root in &[100u64, 400] {
                let a = major_arc_partial(q, 1, root).unwrap();
                let b = major_arc_partial(q, 1, 2 * root).unwrap();
                cs.push((a.partial - b.partial).abs() * root as f64);
            }
        }
        let cmax = cs.iter().cloned().fold(0.0, f64::max);
        assert!(cmax < 2.0, "{cmax}");
    }
}
