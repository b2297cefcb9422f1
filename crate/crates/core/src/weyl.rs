//! Exponential sums over primes and semiprimes, rational approximation of
//! frequencies, and empirical checks of the Weyl-type bounds.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::numeric::{frac_mul, pairwise_sum};
use crate::saddle::parts_upto;
use crate::sieve::{pi2_star, sieve_primes};

const TAU: f64 = std::f64::consts::TAU;

/// Largest X accepted by the sweeps.
pub const SWEEP_BUDGET: u64 = 100_000_000;

/// Largest X accepted by the bilinear double sum.
pub const BILINEAR_BUDGET: u64 = 1_000_000;

fn e(alpha: f64, v: u64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * frac_mul(alpha, v as f64))
}

/// S1(beta, x) = sum_{p <= x} e(beta p).
pub fn s1(beta: f64, x: u64) -> Result<Complex64> {
    if x < 2 {
        return domain(format!("S1 needs x >= 2, got {x}"));
    }
    let table = sieve_primes(x)?;
    let terms: Vec<Complex64> = table.primes().iter().map(|&p| e(beta, p as u64)).collect();
    Ok(pairwise_sum(&terms))
}

/// S2(alpha, X) over ordered prime pairs, traversing the semiprime list with weights.
pub fn s2(alpha: f64, x: u64) -> Result<Complex64> {
    if x < 4 {
        return domain(format!("S2 needs X >= 4, got {x}"));
    }
    let parts = parts_upto(x);
    let terms: Vec<Complex64> = parts
        .iter()
        .take_while(|p| p.value <= x)
        .map(|p| e(alpha, p.value) * p.weight as f64)
        .collect();
    Ok(pairwise_sum(&terms))
}

/// S2 by a double loop over primes p1 and p2 <= X/p1, independent of the semiprime list.
pub fn s2_pairs(alpha: f64, x: u64) -> Result<Complex64> {
    if x < 4 {
        return domain(format!("S2 needs X >= 4, got {x}"));
    }
    let table = sieve_primes(x / 2)?;
    let primes = table.primes();
    let mut terms = Vec::new();
    for &p1 in primes {
        let cap = x / p1 as u64;
        if cap < 2 {
            break;
        }
        for &p2 in primes.iter().take_while(|&&p| p as u64 <= cap) {
            terms.push(e(alpha, p1 as u64 * p2 as u64));
        }
    }
    Ok(pairwise_sum(&terms))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RationalApprox {
    pub alpha: f64,
    pub a: i64,
    pub q: u64,
    pub err: f64,
}

/// Last continued-fraction convergent of alpha with denominator <= q_max.
pub fn dirichlet_approx(alpha: f64, q_max: u64) -> Result<RationalApprox> {
    if q_max < 1 {
        return domain("Q_max must be at least 1");
    }
    let exact = BigRational::from_float(alpha).ok_or_else(|| Error::Domain(format!("alpha must be finite, got {alpha}")))?;
    let qmax = BigInt::from(q_max);
    let (mut p0, mut q0) = (BigInt::from(1), BigInt::zero());
    let mut a0 = exact.floor().to_integer();
    let (mut p1, mut q1) = (a0.clone(), BigInt::from(1));
    let mut rest = &exact - BigRational::from_integer(a0.clone());
    while !rest.is_zero() {
        let inv = rest.recip();
        a0 = inv.floor().to_integer();
        let q2 = &a0 * &q1 + &q0;
        if q2 > qmax {
            break;
        }
        let p2 = &a0 * &p1 + &p0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        rest = &inv - BigRational::from_integer(a0.clone());
    }
    let a = p1.to_i64().ok_or_else(|| Error::Domain(format!("alpha {alpha} too large")))?;
    let q = q1.to_u64().unwrap_or(1);
    // alpha is taken to be a/q exactly when a/q rounds to alpha
    let err = if a as f64 / q as f64 == alpha {
        0.0
    } else {
        (exact - BigRational::new(p1, q1)).abs().to_f64().unwrap_or(f64::INFINITY)
    };
    Ok(RationalApprox { alpha, a, q, err })
}

/// Upsilon (x/sqrt q + x^{4/5} + sqrt(x q)) (log x)^3.
pub fn vinogradov_bound_s1(x: f64, q: f64, upsilon: f64) -> Result<f64> {
    if !(x >= 3.0) || !(q >= 1.0) || !(upsilon >= 1.0) {
        return domain(format!("need x >= 3, q >= 1, Upsilon >= 1; got {x}, {q}, {upsilon}"));
    }
    Ok(upsilon * (x / q.sqrt() + x.powf(0.8) + (x * q).sqrt()) * x.ln().powi(3))
}

/// X q^{-1/6} L^{7/3} + X^{16/17} L^{39/17} + X^{7/8} q^{1/8} L^{9/4}, L = log X.
pub fn double_bound_s2(x: f64, q: f64) -> Result<f64> {
    if !(x >= 4.0) || !(q >= 1.0) {
        return domain(format!("need X >= 4 and q >= 1; got {x}, {q}"));
    }
    let l = x.ln();
    Ok(x * q.powf(-1.0 / 6.0) * l.powf(7.0 / 3.0)
        + x.powf(16.0 / 17.0) * l.powf(39.0 / 17.0)
        + x.powf(7.0 / 8.0) * q.powf(1.0 / 8.0) * l.powf(9.0 / 4.0))
}

/// The decreasing term F and the increasing terms G1..G3 of the optimisation over M.
#[derive(Clone, Copy, Debug)]
struct MinimaxTerms {
    x: f64,
    q: f64,
    l: f64,
}

impl MinimaxTerms {
    fn f(&self, m: f64) -> f64 {
        self.x * self.l.powi(2) / m.sqrt()
    }

    fn g(&self, i: usize, m: f64) -> f64 {
        let l3 = self.l.powi(3);
        match i {
            0 => self.x * m * l3 / self.q.sqrt(),
            1 => self.x.powf(0.8) * l3 * m.powf(1.2),
            _ => (self.x * self.q).sqrt() * m.powf(1.5) * l3,
        }
    }

    fn closed_root(&self, i: usize) -> f64 {
        match i {
            0 => self.q.powf(1.0 / 3.0) * self.l.powf(-2.0 / 3.0),
            1 => self.x.powf(2.0 / 17.0) * self.l.powf(-10.0 / 17.0),
            _ => self.x.powf(0.25) * self.q.powf(-0.25) * self.l.powf(-0.5),
        }
    }

    fn closed_value(&self, i: usize) -> f64 {
        let (x, q, l) = (self.x, self.q, self.l);
        match i {
            0 => x * q.powf(-1.0 / 6.0) * l.powf(7.0 / 3.0),
            1 => x.powf(16.0 / 17.0) * l.powf(39.0 / 17.0),
            _ => x.powf(7.0 / 8.0) * q.powf(1.0 / 8.0) * l.powf(9.0 / 4.0),
        }
    }

    /// Root of F = G_i by bisection in log M; F - G_i is strictly decreasing.
    fn numeric_root(&self, i: usize) -> f64 {
        let (mut lo, mut hi) = (-80.0f64, 80.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let m = mid.exp();
            if self.f(m) > self.g(i, m) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (0.5 * (lo + hi)).exp()
    }

    fn h(&self, order: &[usize; 3], m: f64) -> f64 {
        order.iter().fold(self.f(m), |acc, &i| acc.max(self.g(i, m)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimaxReport {
    pub x: f64,
    pub q: f64,
    pub closed_roots: [f64; 3],
    pub numeric_roots: [f64; 3],
    pub max_root_rel_diff: f64,
    pub max_value_rel_diff: f64,
    pub f_at_min_root: f64,
    pub grid_min: f64,
    pub grid_min_permuted: f64,
    pub grid_step: f64,
    pub grid_consistent: bool,
}

/// Checks the closed-form balancing points M_i and that min_M max(F, G_i) = F(min M_i).
pub fn minimax_check(x: f64, q: f64) -> Result<MinimaxReport> {
    if !(x >= 16.0) || !(q >= 1.0 && q <= x) {
        return domain(format!("need X >= 16 and 1 <= q <= X; got {x}, {q}"));
    }
    let t = MinimaxTerms { x, q, l: x.ln() };
    let closed_roots = [0, 1, 2].map(|i| t.closed_root(i));
    let numeric_roots = [0, 1, 2].map(|i| t.numeric_root(i));
    let mut max_root_rel_diff: f64 = 0.0;
    let mut max_value_rel_diff: f64 = 0.0;
    for i in 0..3 {
        max_root_rel_diff = max_root_rel_diff.max((closed_roots[i] / numeric_roots[i] - 1.0).abs());
        max_value_rel_diff = max_value_rel_diff.max((t.f(closed_roots[i]) / t.closed_value(i) - 1.0).abs());
    }
    let m_min = closed_roots.iter().cloned().fold(f64::INFINITY, f64::min);
    let m_max = closed_roots.iter().cloned().fold(0.0, f64::max);
    let f_at_min_root = t.f(m_min);
    let (lo, hi) = (m_min.ln() - 5.0, m_max.ln() + 5.0);
    let steps = 100_000;
    let grid_step = (hi - lo) / steps as f64;
    let grid_min_for = |order: &[usize; 3]| {
        (0..=steps)
            .map(|k| t.h(order, (lo + k as f64 * grid_step).exp()))
            .fold(f64::INFINITY, f64::min)
    };
    let grid_min = grid_min_for(&[0, 1, 2]);
    let grid_min_permuted = grid_min_for(&[2, 0, 1]);
    // H moves by at most a factor e^{1.5 step} between grid points
    let grid_consistent = grid_min >= f_at_min_root * (1.0 - 1e-3)
        && grid_min <= f_at_min_root * (1.5 * grid_step).exp()
        && grid_min == grid_min_permuted;
    Ok(MinimaxReport {
        x,
        q,
        closed_roots,
        numeric_roots,
        max_root_rel_diff,
        max_value_rel_diff,
        f_at_min_root,
        grid_min,
        grid_min_permuted,
        grid_step,
        grid_consistent,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct WeylBoundReport {
    pub alpha: f64,
    pub x: u64,
    pub a: i64,
    pub q: u64,
    pub err: f64,
    pub abs_s2: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// Half uniform frequencies, half a/q + u/q^2 with small q and u in {0, 1/2, -1/2}.
fn sample_alphas(n_samples: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_samples)
        .map(|i| {
            if i % 2 == 0 {
                rng.gen::<f64>()
            } else {
                let q: u64 = rng.gen_range(1..=50);
                let mut a: u64 = rng.gen_range(0..q);
                while a.gcd(&q) != 1 {
                    a = rng.gen_range(0..q);
                }
                let u = [0.0, 0.5, -0.5][rng.gen_range(0..3)];
                let alpha = a as f64 / q as f64 + u / (q * q) as f64;
                alpha - alpha.floor()
            }
        })
        .collect()
}

/// |S2| against the double bound at seeded frequencies, in sample order.
pub fn bound_ratio_sweep(x: u64, n_samples: usize, seed: u64) -> Result<Vec<WeylBoundReport>> {
    if x > SWEEP_BUDGET {
        return Err(Error::Budget(format!("sweep limited to X <= {SWEEP_BUDGET}, got {x}")));
    }
    if x < 4 {
        return domain(format!("sweep needs X >= 4, got {x}"));
    }
    let q_max = (x as f64).sqrt().floor() as u64;
    parts_upto(x);
    sample_alphas(n_samples, seed)
        .into_par_iter()
        .map(|alpha| {
            let approx = dirichlet_approx(alpha, q_max)?;
            let abs_s2 = s2(alpha, x)?.norm();
            let bound = double_bound_s2(x as f64, approx.q as f64)?;
            Ok(WeylBoundReport {
                alpha,
                x,
                a: approx.a,
                q: approx.q,
                err: approx.err,
                abs_s2,
                bound,
                ratio: abs_s2 / bound,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct VinogradovReport {
    pub beta: f64,
    pub q: u64,
    pub abs_s1: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// |S1| against the prime-sum bound with Upsilon = 1 at seeded uniform frequencies.
pub fn vinogradov_sweep(x: u64, n_samples: usize, seed: u64) -> Result<Vec<VinogradovReport>> {
    if x > SWEEP_BUDGET {
        return Err(Error::Budget(format!("sweep limited to x <= {SWEEP_BUDGET}, got {x}")));
    }
    if x < 3 {
        return domain(format!("sweep needs x >= 3, got {x}"));
    }
    let table = sieve_primes(x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let betas: Vec<f64> = (0..n_samples).map(|_| rng.gen()).collect();
    let q_max = (x as f64).sqrt().floor() as u64;
    betas
        .into_par_iter()
        .map(|beta| {
            let approx = dirichlet_approx(beta, q_max)?;
            let terms: Vec<Complex64> = table.primes().iter().map(|&p| e(beta, p as u64)).collect();
            let abs_s1 = pairwise_sum(&terms).norm();
            let bound = vinogradov_bound_s1(x as f64, approx.q as f64, 1.0)?;
            Ok(VinogradovReport { beta, q: approx.q, abs_s1, bound, ratio: abs_s1 / bound })
        })
        .collect()
}

/// (x/M + x/N + x/q + q)^{1/2} x^{1/2} (log x)^2.
pub fn bilinear_bound(x: f64, m_cut: f64, n_cut: f64, q: f64) -> f64 {
    (x / m_cut + x / n_cut + x / q + q).sqrt() * x.sqrt() * x.ln().powi(2)
}

/// sum over m > M, n > N, mn <= X of xi_m eta_n e(alpha m n); xi and eta are indexed from 1.
pub fn bilinear_sum(x: u64, m_cut: u64, n_cut: u64, xi: &[Complex64], eta: &[Complex64], alpha: f64) -> Result<Complex64> {
    if m_cut < 1 || n_cut < 1 {
        return domain("M_cut and N_cut must be at least 1");
    }
    if x > BILINEAR_BUDGET {
        return Err(Error::Budget(format!("bilinear sum limited to X <= {BILINEAR_BUDGET}, got {x}")));
    }
    let m_top = x / (n_cut + 1);
    if (xi.len() as u64) < m_top || (eta.len() as u64) < x / (m_cut + 1) {
        return domain("coefficient sequences are too short for X");
    }
    let rows: Vec<Complex64> = ((m_cut + 1)..=m_top)
        .into_par_iter()
        .map(|m| {
            let n_top = x / m;
            let step = e(alpha, m);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut z = Complex64::new(0.0, 0.0);
            for n in (n_cut + 1)..=n_top {
                if (n - n_cut - 1) % 256 == 0 {
                    z = e(alpha, m * n);
                }
                acc += eta[(n - 1) as usize] * z;
                z *= step;
            }
            xi[(m - 1) as usize] * acc
        })
        .collect();
    Ok(pairwise_sum(&rows))
}

#[derive(Clone, Debug, Serialize)]
pub struct BilinearReport {
    pub x: u64,
    pub m_cut: u64,
    pub n_cut: u64,
    pub trials: usize,
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
}

/// Random unit coefficients and random frequencies against the bilinear bound.
pub fn bilinear_check(x: u64, m_cut: u64, n_cut: u64, trials: usize, seed: u64) -> Result<BilinearReport> {
    if m_cut < 1 || n_cut < 1 {
        return domain("M_cut and N_cut must be at least 1");
    }
    if x > BILINEAR_BUDGET {
        return Err(Error::Budget(format!("bilinear sum limited to X <= {BILINEAR_BUDGET}, got {x}")));
    }
    if x < 3 {
        return domain(format!("bilinear check needs X >= 3, got {x}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q_max = (x as f64).sqrt().floor() as u64;
    let mut ratios = Vec::with_capacity(trials);
    for _ in 0..trials {
        let xi: Vec<Complex64> = (0..x).map(|_| Complex64::from_polar(1.0, TAU * rng.gen::<f64>())).collect();
        let eta: Vec<Complex64> = (0..x).map(|_| Complex64::from_polar(1.0, TAU * rng.gen::<f64>())).collect();
        let alpha: f64 = rng.gen();
        let q = dirichlet_approx(alpha, q_max)?.q;
        let s = bilinear_sum(x, m_cut, n_cut, &xi, &eta, alpha)?;
        ratios.push(s.norm() / bilinear_bound(x as f64, m_cut as f64, n_cut as f64, q as f64));
    }
    let max_ratio = ratios.iter().cloned().fold(0.0, f64::max);
    Ok(BilinearReport { x, m_cut, n_cut, trials, ratios, max_ratio })
}

/// Upper bound |S2(alpha, X)| <= pi2_star(X), with the float slack of the summation.
pub fn trivial_bound_holds(abs_s2: f64, x: u64) -> bool {
    let total = pi2_star(x) as f64;
    abs_s2 <= total * (1.0 + 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_examples() {
        assert_eq!(s1(0.0, 1000).unwrap().re, 168.0);
        let v = s1(0.5, 10).unwrap();
        assert!((v - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        let a = s1(0.123, 10_000).unwrap();
        let b = s1(-0.123, 10_000).unwrap();
        assert!((a - b.conj()).norm() < 1e-8);
    }

    #[test]
    fn s2_examples() {
        assert_eq!(s2(0.0, 1000).unwrap().re, pi2_star(1000) as f64);
        let v = s2(0.5, 10).unwrap();
        assert!((v - Complex64::new(4.0, 0.0)).norm() < 1e-12);
        let a = s2(0.3141, 5000).unwrap();
        let b = s2(-0.3141, 5000).unwrap();
        assert!((a - b.conj()).norm() < 1e-8);
    }

    #[test]
    fn s2_paths_agree() {
        let total = pi2_star(100_000) as f64;
        for alpha in [0.0, 0.5, 1.0 / 3.0, 0.123456789, (5f64.sqrt() - 1.0) / 2.0, 0.999] {
            let a = s2(alpha, 100_000).unwrap();
            let b = s2_pairs(alpha, 100_000).unwrap();
            assert!((a - b).norm() <= 1e-9 * total, "alpha = {alpha}: {a} vs {b}");
        }
    }

    #[test]
    fn dirichlet_examples() {
        assert_eq!(dirichlet_approx(1.0 / 3.0, 10).unwrap(), RationalApprox { alpha: 1.0 / 3.0, a: 1, q: 3, err: 0.0 });
        let r = dirichlet_approx(2f64.sqrt() - 1.0, 10).unwrap();
        assert_eq!((r.a, r.q), (2, 5));
        assert!((r.err - (2f64.sqrt() - 1.4)).abs() < 1e-15);
        assert!(dirichlet_approx(0.5, 0).is_err());
        let r = dirichlet_approx(-2.75, 100).unwrap();
        assert_eq!((r.a, r.q, r.err), (-11, 4, 0.0));
    }

    #[test]
    fn dirichlet_invariants_on_random_alphas() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let alpha: f64 = rng.gen();
            let q_max = rng.gen_range(1..100_000u64);
            let r = dirichlet_approx(alpha, q_max).unwrap();
            assert!(r.q <= q_max);
            assert_eq!(r.a.unsigned_abs().gcd(&r.q), 1);
            assert!(r.err * (r.q as f64).powi(2) <= 1.0);
            assert!(r.err <= 1.0 / (r.q as f64 * q_max as f64) * (1.0 + 1e-9));
        }
    }

    #[test]
    fn vinogradov_bound_shape() {
        let x = 1e6;
        let b = vinogradov_bound_s1(x, x, 1.0).unwrap();
        assert!(b >= x * x.ln().powi(3));
        assert!(vinogradov_bound_s1(2.0, 1.0, 1.0).is_err());
        assert!(vinogradov_bound_s1(10.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn double_bound_terms() {
        let x = 1e12f64;
        let l = x.ln();
        let first = x * l.powf(7.0 / 3.0);
        let b = double_bound_s2(x, 1.0).unwrap();
        assert!(first / b > 0.5);
        // first = third term where q^{7/24} = X^{1/8} (log X)^{1/12}
        let x = 1e6f64;
        let l = x.ln();
        let (mut lo, mut hi) = (0.0f64, 40.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let q = mid.exp();
            let d = x * q.powf(-1.0 / 6.0) * l.powf(7.0 / 3.0) - x.powf(7.0 / 8.0) * q.powf(1.0 / 8.0) * l.powf(9.0 / 4.0);
            if d > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let q_closed = (x.powf(1.0 / 8.0) * l.powf(1.0 / 12.0)).powf(24.0 / 7.0);
        assert!((lo.exp() / q_closed - 1.0).abs() < 1e-9);
        let mut prev = 0.0;
        for k in 2..60 {
            let v = double_bound_s2(1.5f64.powi(k).max(4.0), 3.0).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn minimax_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let x = 10f64.powf(rng.gen_range(2.0..12.0));
            let q = x.powf(rng.gen_range(0.0..1.0)).max(1.0);
            let r = minimax_check(x, q).unwrap();
            assert!(r.max_root_rel_diff <= 1e-6, "{r:?}");
            assert!(r.max_value_rel_diff <= 1e-6, "{r:?}");
            assert!(r.grid_consistent, "{r:?}");
        }
        assert!(minimax_check(10.0, 1.0).is_err());
        assert!(minimax_check(100.0, 200.0).is_err());
    }

    #[test]
    fn sweep_is_deterministic_and_bounded() {
        let a = bound_ratio_sweep(20_000, 40, 3).unwrap();
        let b = bound_ratio_sweep(20_000, 40, 3).unwrap();
        assert_eq!(a.len(), 40);
        for (u, v) in a.iter().zip(&b) {
            assert_eq!(u.alpha, v.alpha);
            assert_eq!(u.abs_s2, v.abs_s2);
            assert!(trivial_bound_holds(u.abs_s2, 20_000));
            assert!(u.ratio >= 0.0);
        }
        assert!(matches!(bound_ratio_sweep(200_000_000, 1, 0), Err(Error::Budget(_))));
    }

    #[test]
    fn bilinear_counting_oracle() {
        let x = 5000u64;
        let ones = vec![Complex64::new(1.0, 0.0); x as usize];
        let s = bilinear_sum(x, 3, 7, &ones, &ones, 0.0).unwrap();
        let mut count = 0u64;
        for m in 4..=x {
            for n in 8..=x {
                if m * n <= x {
                    count += 1;
                }
            }
        }
        assert_eq!(s.re, count as f64);
        assert_eq!(bilinear_bound(1e4, 3.0, 7.0, 11.0), bilinear_bound(1e4, 7.0, 3.0, 11.0));
        assert!(matches!(bilinear_check(2_000_000, 1, 1, 1, 0), Err(Error::Budget(_))));
        assert!(bilinear_check(100, 0, 1, 1, 0).is_err());
    }

    #[test]
    fn bilinear_phase_recurrence_matches_direct() {
        let x = 3000u64;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let xi: Vec<Complex64> = (0..x).map(|_| Complex64::from_polar(1.0, TAU * rng.gen::<f64>())).collect();
        let eta: Vec<Complex64> = (0..x).map(|_| Complex64::from_polar(1.0, TAU * rng.gen::<f64>())).collect();
        let alpha = 0.377;
        let fast = bilinear_sum(x, 2, 2, &xi, &eta, alpha).unwrap();
        let mut direct = Complex64::new(0.0, 0.0);
        for m in 3..=x {
            for n in 3..=(x / m) {
                direct += xi[(m - 1) as usize] * eta[(n - 1) as usize] * e(alpha, m * n);
            }
        }
        assert!((fast - direct).norm() < 1e-9);
        let r = bilinear_check(3000, 5, 5, 5, 9).unwrap();
        assert_eq!(r.ratios.len(), 5);
    }
}
