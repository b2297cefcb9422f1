//! The acceptance suite: one check per criterion, each returning a verdict
//! with the measured quantities behind it.

use std::fmt::Write as _;
use std::sync::OnceLock;
use std::time::Instant;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::asymptotics;
use crate::circle;
use crate::error::Result;
use crate::numeric::Compensated;
use crate::partitions::{self, PartitionSeries, WeightConfig};
use crate::saddle;
use crate::sieve;
use crate::special::{self, Variant};
use crate::weyl;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} [{}] ({:.1}s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.seconds,
            self.detail
        )
    }
}

pub const TITLES: [&str; 11] = [
    "exact-count oracle equivalence",
    "convolution identity",
    "circle-method exactness",
    "constants",
    "moment law",
    "semiprime prime number theorem",
    "saddle estimate",
    "exponent fit",
    "Ramanujan-sum closed form",
    "Weyl machinery",
    "non-principal arc suppression",
];

fn p2_series() -> Result<&'static PartitionSeries> {
    static SERIES: OnceLock<PartitionSeries> = OnceLock::new();
    if let Some(s) = SERIES.get() {
        return Ok(s);
    }
    let s = partitions::partition_series(WeightConfig::p2(), 20_001)?;
    Ok(SERIES.get_or_init(|| s))
}

fn criterion_1() -> Result<(bool, String)> {
    let mut mismatches = Vec::new();
    for config in WeightConfig::named() {
        let series = partitions::partition_series(config, 120)?;
        for n in 0..=120 {
            if &partitions::brute_force_count(config, n)? != series.count(n) {
                mismatches.push(format!("{}({n})", config.label()));
            }
        }
    }
    let detail = if mismatches.is_empty() {
        "DP equals brute force for n <= 120 in p2, p2ne, p2sharp".to_string()
    } else {
        format!("mismatches at {}", mismatches.join(", "))
    };
    Ok((mismatches.is_empty(), detail))
}

fn criterion_2() -> Result<(bool, String)> {
    let c = partitions::convolution_check(2000)?;
    Ok((c.holds, format!("holds = {}, first failure = {:?}", c.holds, c.first_failure)))
}

fn criterion_3() -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut max_samples = 0;
    for config in WeightConfig::named() {
        let series = partitions::partition_series(config, 256)?;
        for n in 0..=256u64 {
            match circle::recover_coefficient_auto(n, config, Some(&series)) {
                Ok(r) => {
                    worst = worst.max(r.alias_bound + r.rounding_bound);
                    max_samples = max_samples.max(r.n_samples);
                    if !circle::exact_matches(&r, &series) {
                        failures.push(format!("{}({n}) recovered {}", config.label(), r.rounded));
                    }
                }
                Err(e) => failures.push(format!("{}({n}): {e}", config.label())),
            }
        }
    }
    let detail = format!(
        "{} of 771 coefficients wrong; largest alias + rounding bound {worst:.3e}; largest N {max_samples}{}",
        failures.len(),
        if failures.is_empty() { String::new() } else { format!("; first: {}", failures[0]) }
    );
    Ok((failures.is_empty(), detail))
}

/// Sum_{p > P} p^{-s} <= 1.25506 s P^{1-s}/((s-1) log P), from pi(x) < 1.25506 x/log x.
fn prime_tail(p: f64, s: f64) -> f64 {
    1.25506 * s * p.powf(1.0 - s) / ((s - 1.0) * p.ln())
}

fn criterion_4() -> Result<(bool, String)> {
    let m = special::meissel_mertens();
    let d = special::froberg_d();
    let m_ok = (m.value - 0.26149721).abs() <= 1e-6;
    let d_ok = (d.value - 0.315718452).abs() <= 1e-8;
    let limit = 1_000_000u64;
    let table = sieve::sieve_primes(limit)?;
    let mut ok = m_ok && d_ok;
    let mut parts = vec![format!("M = {:.10}", m.value), format!("D = {:.10}", d.value)];
    for s in [1.5, 2.0, 3.0, 4.0] {
        let mut acc = Compensated::new();
        for &p in table.primes() {
            acc.add((p as f64).powf(-s));
        }
        let direct = acc.value();
        let rounding = 4.0 * f64::EPSILON * table.len() as f64 * direct;
        let tail = prime_tail(limit as f64, s);
        let pz = special::prime_zeta(s)?;
        let lo = direct - rounding - pz.abs_error_bound;
        let hi = direct + tail + rounding + pz.abs_error_bound;
        let inside = pz.value >= lo && pz.value <= hi;
        ok &= inside;
        parts.push(format!("P({s}) = {:.12} in [{lo:.12}, {hi:.12}]: {inside}", pz.value));
    }
    Ok((ok, parts.join("; ")))
}

fn criterion_5() -> Result<(bool, String)> {
    let config = WeightConfig::p2_sharp();
    let mut ok = true;
    let mut parts = Vec::new();
    for m in 0..=2u32 {
        let ratio = |x: f64| -> Result<f64> {
            Ok(saddle::phi_moment_exact(m, x, config)? / saddle::phi_moment_asymptotic(m, x, config)?)
        };
        let (r2, r3, r4) = (ratio(1e2)?, ratio(1e3)?, ratio(1e4)?);
        let bracket = (0.5..=2.0).contains(&r3);
        let trend = (r4 - 1.0).abs() < (r2 - 1.0).abs();
        ok &= bracket && trend;
        parts.push(format!("m={m}: {r2:.4}, {r3:.4}, {r4:.4} at X = 1e2, 1e3, 1e4"));
    }
    Ok((ok, parts.join("; ")))
}

fn criterion_6() -> Result<(bool, String)> {
    let table = sieve::sieve_primes(10_000_000 / 2)?;
    let ratio = |x: u64| -> Result<f64> {
        Ok(sieve::pi2_star_with(&table, x) as f64 / sieve::pi2_star_leading(x as f64)?)
    };
    let (r5, r6, r7) = (ratio(100_000)?, ratio(1_000_000)?, ratio(10_000_000)?);
    let bracket = (0.5..=1.5).contains(&r6);
    let trend = (r7 - 1.0).abs() < (r5 - 1.0).abs();
    let detail = format!(
        "ratio {r5:.5} at 1e5, {r6:.5} at 1e6, {r7:.5} at 1e7; bracket at 1e6: {bracket}; closer at 1e7 than 1e5: {trend}"
    );
    Ok((bracket && trend, detail))
}

fn criterion_7() -> Result<(bool, String)> {
    let series = p2_series()?;
    let mut ok = true;
    let mut prev = f64::INFINITY;
    let mut parts = Vec::new();
    for n in [2000u64, 5000, 10_000, 20_000] {
        let log_ratio = saddle::saddle_estimate(n, WeightConfig::p2())? - series.log_count(n as usize);
        let ratio = log_ratio.exp();
        ok &= ratio > 0.5 && ratio < 2.0 && log_ratio.abs() <= prev;
        prev = log_ratio.abs();
        parts.push(format!("n={n}: {ratio:.5}"));
    }
    Ok((ok, parts.join(", ")))
}

fn criterion_8() -> Result<(bool, String)> {
    let series = p2_series()?;
    let points: Vec<(u64, f64)> = (2000..=20_000u64).map(|n| (n, series.log_count(n as usize))).collect();
    let fit = match asymptotics::fit_exponent(&points, WeightConfig::p2())? {
        Some(f) => f,
        None => return Ok((false, "fit needs at least three points".into())),
    };
    let verdict = match fit.closer {
        Some(Variant::Theorem1) => "theorem-1 constant at least 2x closer",
        Some(Variant::Theorem72) => "theorem-7.2 constant at least 2x closer",
        None => "neither variant 2x closer",
    };
    let detail = format!(
        "c3_hat = {:.4} +- {:.4} over {} points; theorem-1 c3 = {:.4} (distance {:.4}), theorem-7.2 c3 = {:.4} (distance {:.4}); {verdict}",
        fit.c3_hat, fit.std_error, fit.n_points, fit.c3_theorem1, fit.distance_theorem1, fit.c3_theorem72, fit.distance_theorem72
    );
    Ok((fit.closer.is_some(), detail))
}

fn criterion_9() -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for q in [1u64, 2, 3, 4, 6, 12] {
        let mut q_worst = 0.0f64;
        let mut alt_worst = 0.0f64;
        for a in (0..q.max(1)).filter(|a| a.gcd(&q) == 1) {
            let s = circle::major_arc_sum(q, a, 1e6)?;
            q_worst = q_worst.max((s.partial - s.closed_form).abs());
            alt_worst = alt_worst.max((s.alternating - s.closed_form).abs());
        }
        ok &= q_worst <= 1e-2;
        worst = worst.max(q_worst);
        parts.push(format!("q={q}: {q_worst:.2e} (alternating variant {alt_worst:.2e})"));
    }
    Ok((ok, format!("largest deviation {worst:.2e}; {}", parts.join(", "))))
}

fn criterion_10() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut root_diff = 0.0f64;
    let mut minimax_ok = true;
    for _ in 0..10 {
        let x = 10f64.powf(rng.gen_range(2.0..12.0));
        let q = x.powf(rng.gen_range(0.0..1.0)).max(1.0);
        let r = weyl::minimax_check(x, q)?;
        root_diff = root_diff.max(r.max_root_rel_diff).max(r.max_value_rel_diff);
        minimax_ok &= r.grid_consistent;
    }
    minimax_ok &= root_diff <= 1e-6;

    let x = 1_000_000u64;
    let sweep = weyl::bound_ratio_sweep(x, 1000, 1)?;
    let max_ratio = sweep.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let trivial = sweep.iter().all(|r| weyl::trivial_bound_holds(r.abs_s2, x));
    let other = weyl::bound_ratio_sweep(x, 1000, 2)?;
    let other_max = other.iter().map(|r| r.ratio).fold(0.0, f64::max);

    let small = 100_000u64;
    let total = sieve::pi2_star(small) as f64;
    let mut path_diff = 0.0f64;
    for _ in 0..16 {
        let alpha: f64 = rng.gen();
        path_diff = path_diff.max((weyl::s2(alpha, small)? - weyl::s2_pairs(alpha, small)?).norm());
    }
    let paths_ok = path_diff <= 1e-9 * total;
    let ok = minimax_ok && max_ratio <= 10.0 && trivial && paths_ok;
    let detail = format!(
        "minimax max rel diff {root_diff:.2e}, grid consistent {minimax_ok}; sweep max ratio {max_ratio:.4} (seed 1), {other_max:.4} (seed 2); |S2| <= pi2*(X) {trivial}; S2 paths max diff {path_diff:.2e}"
    );
    Ok((ok, detail))
}

fn criterion_11() -> Result<(bool, String)> {
    let x = 1000.0;
    let arcs = circle::build_arcs(x, 1.0, true)?;
    let profile = circle::profile_phi(x, WeightConfig::p2_sharp(), 4096, Some(&arcs))?;
    let max = profile.max_nonprincipal_ratio.unwrap_or(f64::NAN);
    let detail = format!(
        "max Re Phi/Phi(rho) on non-principal arcs {max:.4} at alpha = {:.5} (A = 1, Q = {:.2}); at alpha = 1/2: {:.4}; reference value 0.75",
        profile.nonprincipal_argmax.unwrap_or(f64::NAN),
        arcs.q_max,
        profile.half_ratio
    );
    Ok((max <= 0.9, detail))
}

/// Runs criterion `id` (1..=11); internal errors count as failures.
pub fn run(id: u8) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        title: TITLES.get(id as usize - 1).copied().unwrap_or("unknown"),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=11).map(run).collect()
}

/// Markdown summary of a suite run.
pub fn markdown(results: &[CriterionResult]) -> String {
    let mut out = String::from("# semipart acceptance report\n\n| # | criterion | verdict | seconds | detail |\n|---|---|---|---|---|\n");
    for r in results {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {:.1} | {} |",
            r.id,
            r.title,
            if r.passed { "pass" } else { "FAIL" },
            r.seconds,
            r.detail.replace('|', "\\|")
        );
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "\n{passed} of {} criteria pass.", results.len());
    out
}
