//! Closed-form asymptotic formulas and their comparison with exact counts.

use num_rational::Rational64;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{domain, Error, Result};
use crate::partitions::{ConfigName, PartitionSeries, WeightConfig};
use crate::saddle;
use crate::special::{theorem_constants, TheoremConstants, Variant};

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticEstimate {
    pub n: u64,
    pub set_name: &'static str,
    pub variant: Variant,
    pub log_value: f64,
    pub prefactor_log: f64,
    pub exponent: f64,
    /// The argument y appearing as log(y) in the formula.
    pub log_argument: f64,
    /// For p2sharp under theorem-1, the same formula with log(n/2) in place of log n.
    pub alternate_log_value: Option<f64>,
}

/// Weight lambda attached to a set for the lambda-dependent constants.
fn set_lambda(config: WeightConfig) -> Rational64 {
    config.lambda
}

/// Divisor d such that the formula uses log(n/d).
pub fn log_divisor(config: WeightConfig, variant: Variant) -> Result<f64> {
    match variant {
        Variant::Theorem1 => match config.name {
            ConfigName::P2 | ConfigName::P2Distinct => Ok(2.0),
            ConfigName::P2Sharp => Ok(1.0),
            ConfigName::Custom => Err(Error::Config("theorem-1 constants only cover the named sets".into())),
        },
        Variant::Theorem72 => {
            let l = set_lambda(config);
            Ok(*l.numer() as f64 / *l.denom() as f64)
        }
    }
}

/// Prefactor and exponent of the closed form with explicit constants and log(n/divisor).
pub fn formula_parts(n: f64, c: &TheoremConstants, divisor: f64) -> Result<(f64, f64)> {
    if n < 16.0 {
        return domain(format!("closed forms need n >= 16, got {n}"));
    }
    let ll = n.ln().ln() + c.c2.value;
    if !(ll > 0.0) {
        return domain(format!("loglog n + c2 <= 0 at n = {n}"));
    }
    let lg = (n / divisor).ln();
    if !(lg > 0.0) {
        return domain(format!("log(n/{divisor}) <= 0 at n = {n}"));
    }
    let prefactor = c.c1.value.ln() - 0.75 * n.ln() - 0.25 * lg.ln() + 0.25 * ll.ln();
    let exponent = c.c3.value * (n / lg).sqrt() * ll.sqrt();
    Ok((prefactor, exponent))
}

fn constants_for(config: WeightConfig, variant: Variant) -> Result<TheoremConstants> {
    theorem_constants(set_lambda(config), variant)
}

/// Log of the closed-form estimate for p(n).
pub fn theorem_main(n: u64, config: WeightConfig, variant: Variant) -> Result<AsymptoticEstimate> {
    let divisor = log_divisor(config, variant)?;
    let mut est = theorem_main_with_divisor(n, config, variant, divisor)?;
    if variant == Variant::Theorem1 && config.name == ConfigName::P2Sharp {
        est.alternate_log_value = Some(theorem_main_with_divisor(n, config, variant, 2.0)?.log_value);
    }
    Ok(est)
}

/// As [`theorem_main`] but with the log argument n/divisor chosen by the caller.
pub fn theorem_main_with_divisor(
    n: u64,
    config: WeightConfig,
    variant: Variant,
    divisor: f64,
) -> Result<AsymptoticEstimate> {
    let c = constants_for(config, variant)?;
    let (prefactor_log, exponent) = formula_parts(n as f64, &c, divisor)?;
    Ok(AsymptoticEstimate {
        n,
        set_name: config.label(),
        variant,
        log_value: prefactor_log + exponent,
        prefactor_log,
        exponent,
        log_argument: n as f64 / divisor,
        alternate_log_value: None,
    })
}

/// Predicted (p(n+1) - p(n))/p(n) = c4 ((c2 + loglog n)/(n log(n/2)))^{1/2}.
pub fn difference_ratio(n: u64) -> Result<f64> {
    if n < 16 {
        return domain(format!("difference ratio needs n >= 16, got {n}"));
    }
    let c = theorem_constants(Rational64::new(1, 2), Variant::Theorem1)?;
    let nf = n as f64;
    let ll = nf.ln().ln() + c.c2.value;
    if !(ll > 0.0) {
        return domain(format!("loglog n + c2 <= 0 at n = {n}"));
    }
    Ok(c.c4.value * (ll / (nf * (nf / 2.0).ln())).sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRow {
    pub n: u64,
    pub log_exact: Option<f64>,
    pub log_saddle: Option<f64>,
    pub log_thm1: Option<f64>,
    pub log_thm72: Option<f64>,
    pub saddle_minus_exact: Option<f64>,
    pub thm1_minus_exact: Option<f64>,
    pub thm72_minus_exact: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentFit {
    pub n_points: usize,
    pub c3_hat: f64,
    pub intercept: f64,
    pub std_error: f64,
    pub ci95: (f64, f64),
    pub c3_theorem1: f64,
    pub c3_theorem72: f64,
    pub distance_theorem1: f64,
    pub distance_theorem72: f64,
    /// The variant whose c3 is at least twice as close to the fit, if any.
    pub closer: Option<Variant>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub set_name: &'static str,
    pub rows: Vec<ComparisonRow>,
    pub fit: Option<ExponentFit>,
    pub partial: bool,
}

/// Regressor u(n) = (n (loglog n + c2)/log(n/d))^{1/2} and the prefactor-corrected log count.
fn fit_coordinates(n: u64, log_exact: f64, c: &TheoremConstants, divisor: f64) -> Result<(f64, f64)> {
    let (prefactor, exponent) = formula_parts(n as f64, c, divisor)?;
    Ok((exponent / c.c3.value, log_exact - (prefactor - c.c1.value.ln())))
}

/// Least-squares fit y = a + c3_hat * u over the given exact log counts.
pub fn fit_exponent(points: &[(u64, f64)], config: WeightConfig) -> Result<Option<ExponentFit>> {
    if points.len() < 3 {
        return Ok(None);
    }
    let t1 = constants_for(config, Variant::Theorem1)?;
    let t72 = constants_for(config, Variant::Theorem72)?;
    let divisor = log_divisor(config, Variant::Theorem1)?;
    let coords: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, y)| fit_coordinates(n, y, &t1, divisor))
        .collect::<Result<_>>()?;
    let k = coords.len() as f64;
    let mu = coords.iter().map(|c| c.0).sum::<f64>() / k;
    let my = coords.iter().map(|c| c.1).sum::<f64>() / k;
    let sxx: f64 = coords.iter().map(|c| (c.0 - mu).powi(2)).sum();
    let sxy: f64 = coords.iter().map(|c| (c.0 - mu) * (c.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mu;
    let rss: f64 = coords.iter().map(|c| (c.1 - intercept - slope * c.0).powi(2)).sum();
    let dof = k - 2.0;
    let std_error = (rss / dof / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, dof).map_err(|e| Error::Solver(e.to_string()))?.inverse_cdf(0.975);
    let d1 = (slope - t1.c3.value).abs();
    let d72 = (slope - t72.c3.value).abs();
    let closer = if d72 >= 2.0 * d1 {
        Some(Variant::Theorem1)
    } else if d1 >= 2.0 * d72 {
        Some(Variant::Theorem72)
    } else {
        None
    };
    Ok(Some(ExponentFit {
        n_points: coords.len(),
        c3_hat: slope,
        intercept,
        std_error,
        ci95: (slope - t * std_error, slope + t * std_error),
        c3_theorem1: t1.c3.value,
        c3_theorem72: t72.c3.value,
        distance_theorem1: d1,
        distance_theorem72: d72,
        closer,
    }))
}

/// Per-n comparison of exact, saddle and closed-form log counts, plus the exponent fit.
pub fn comparison_report(
    n_list: &[u64],
    config: WeightConfig,
    exact: Option<&PartitionSeries>,
) -> Result<ComparisonReport> {
    let mut rows = Vec::with_capacity(n_list.len());
    let mut points = Vec::new();
    let mut partial = false;
    for &n in n_list {
        let log_exact = exact.filter(|s| (n as usize) <= s.n_max).map(|s| s.log_count(n as usize));
        if log_exact.is_none() {
            partial = true;
        }
        let log_saddle = saddle::saddle_estimate(n, config).ok();
        let log_thm1 = theorem_main(n, config, Variant::Theorem1).ok().map(|e| e.log_value);
        let log_thm72 = theorem_main(n, config, Variant::Theorem72).ok().map(|e| e.log_value);
        let diff = |v: Option<f64>| v.zip(log_exact).map(|(a, b)| a - b);
        if let Some(y) = log_exact {
            if y.is_finite() && n >= 16 {
                points.push((n, y));
            }
        }
        rows.push(ComparisonRow {
            n,
            log_exact,
            log_saddle,
            log_thm1,
            log_thm72,
            saddle_minus_exact: diff(log_saddle),
            thm1_minus_exact: diff(log_thm1),
            thm72_minus_exact: diff(log_thm72),
        });
    }
    let fit = if points.len() >= 3 { fit_exponent(&points, config)? } else { None };
    Ok(ComparisonReport { set_name: config.label(), rows, fit, partial })
}
