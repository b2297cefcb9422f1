//! Exact partition counts with semiprime parts under the three weightings.

use num_bigint::{BigInt, BigUint};
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::numeric::ln_biguint;
use crate::sieve::{semiprime_parts, SemiprimePart};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ConfigName {
    P2,
    P2Distinct,
    P2Sharp,
    Custom,
}

/// Exponent weights: part m gets exponent lambda*w2(m) + mu*[m is a prime square].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightConfig {
    pub lambda: Rational64,
    pub mu: Rational64,
    pub name: ConfigName,
}

impl WeightConfig {
    pub fn p2() -> Self {
        Self { lambda: Rational64::new(1, 2), mu: Rational64::new(1, 2), name: ConfigName::P2 }
    }

    pub fn p2_distinct() -> Self {
        Self { lambda: Rational64::new(1, 2), mu: Rational64::new(-1, 2), name: ConfigName::P2Distinct }
    }

    pub fn p2_sharp() -> Self {
        Self { lambda: Rational64::new(1, 1), mu: Rational64::new(0, 1), name: ConfigName::P2Sharp }
    }

    /// A custom weighting; both part kinds must get nonnegative integer exponents.
    pub fn custom(lambda: Rational64, mu: Rational64) -> Result<Self> {
        let c = Self { lambda, mu, name: ConfigName::Custom };
        for (value, weight) in [(4u64, 1u8), (6, 2)] {
            c.exponent(&SemiprimePart { value, weight })?;
        }
        Ok(c)
    }

    pub fn named() -> [Self; 3] {
        [Self::p2(), Self::p2_distinct(), Self::p2_sharp()]
    }

    /// Parse the command line set names `p2`, `p2ne`, `p2sharp`.
    pub fn from_set_name(s: &str) -> Result<Self> {
        match s {
            "p2" => Ok(Self::p2()),
            "p2ne" | "p2-distinct" => Ok(Self::p2_distinct()),
            "p2sharp" | "p2-sharp" => Ok(Self::p2_sharp()),
            other => Err(Error::Config(format!("unknown set `{other}` (expected p2, p2ne or p2sharp)"))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self.name {
            ConfigName::P2 => "p2",
            ConfigName::P2Distinct => "p2ne",
            ConfigName::P2Sharp => "p2sharp",
            ConfigName::Custom => "custom",
        }
    }

    pub fn exponent_rational(&self, part: &SemiprimePart) -> Rational64 {
        let sq = if part.is_square() { self.mu } else { Rational64::zero() };
        self.lambda * Rational64::from_integer(part.weight as i64) + sq
    }

    pub fn exponent_f64(&self, part: &SemiprimePart) -> f64 {
        let r = self.exponent_rational(part);
        *r.numer() as f64 / *r.denom() as f64
    }

    /// Integer exponent of a part, or a configuration error naming the part.
    pub fn exponent(&self, part: &SemiprimePart) -> Result<u32> {
        let e = self.exponent_rational(part);
        if !e.is_integer() || e < Rational64::zero() {
            return Err(Error::Config(format!(
                "part {} has effective exponent {e}, which is not a nonnegative integer",
                part.value
            )));
        }
        Ok(e.to_integer() as u32)
    }
}

#[derive(Clone, Debug)]
pub struct PartitionSeries {
    pub config: WeightConfig,
    pub n_max: usize,
    pub counts: Vec<BigUint>,
}

impl PartitionSeries {
    pub fn count(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }

    pub fn log_count(&self, n: usize) -> f64 {
        ln_biguint(&self.counts[n])
    }
}

/// Fixed-width little-endian limb rows, one per coefficient.
struct LimbRows {
    offs: Vec<usize>,
    widths: Vec<usize>,
    data: Vec<u64>,
}

impl LimbRows {
    /// Row widths from p(i) <= exp(pi*sqrt(2*e*i/3)), valid whenever every exponent is at most e.
    fn new(n_max: usize, e_max: u32) -> Self {
        let mut offs = Vec::with_capacity(n_max + 1);
        let mut widths = Vec::with_capacity(n_max + 1);
        let mut total = 0;
        for i in 0..=n_max {
            let nats = std::f64::consts::PI * (2.0 * e_max.max(1) as f64 * i as f64 / 3.0).sqrt();
            let bits = nats / std::f64::consts::LN_2 + 2.0;
            let w = (bits / 64.0).ceil() as usize + 1;
            offs.push(total);
            widths.push(w);
            total += w;
        }
        let mut data = vec![0u64; total];
        data[0] = 1;
        LimbRows { offs, widths, data }
    }

    /// row[dst] += row[src], where row[src] is no wider than row[dst].
    fn add_into(&mut self, dst: usize, src: usize) {
        let (so, sw) = (self.offs[src], self.widths[src]);
        let (d_o, dw) = (self.offs[dst], self.widths[dst]);
        let (head, tail) = self.data.split_at_mut(d_o);
        let s = &head[so..so + sw];
        let d = &mut tail[..dw];
        let mut carry = 0u64;
        for k in 0..sw {
            let (a, c1) = d[k].overflowing_add(s[k]);
            let (a, c2) = a.overflowing_add(carry);
            d[k] = a;
            carry = (c1 as u64) + (c2 as u64);
        }
        let mut k = sw;
        while carry != 0 {
            assert!(k < dw, "limb width bound violated");
            let (a, c) = d[k].overflowing_add(carry);
            d[k] = a;
            carry = c as u64;
            k += 1;
        }
    }

    fn to_biguint(&self, i: usize) -> BigUint {
        let row = &self.data[self.offs[i]..self.offs[i] + self.widths[i]];
        let mut digits = Vec::with_capacity(2 * row.len());
        for &limb in row {
            digits.push(limb as u32);
            digits.push((limb >> 32) as u32);
        }
        BigUint::new(digits)
    }
}

/// Coefficients of prod_m (1 - z^m)^{-e(m)} up to z^{n_max}, parts ascending.
pub fn partition_series(config: WeightConfig, n_max: usize) -> Result<PartitionSeries> {
    let parts = semiprime_parts(n_max as u64);
    partition_series_from_parts(config, n_max, &parts)
}

/// Same as [`partition_series`] with the parts processed in the given order.
pub fn partition_series_from_parts(
    config: WeightConfig,
    n_max: usize,
    parts: &[SemiprimePart],
) -> Result<PartitionSeries> {
    let exps: Vec<u32> = parts.iter().map(|p| config.exponent(p)).collect::<Result<_>>()?;
    let e_max = exps.iter().copied().max().unwrap_or(0);
    let mut rows = LimbRows::new(n_max, e_max);
    for (part, &e) in parts.iter().zip(&exps) {
        let m = part.value as usize;
        if m > n_max {
            continue;
        }
        for _ in 0..e {
            for i in m..=n_max {
                rows.add_into(i, i - m);
            }
        }
    }
    let counts = (0..=n_max).map(|i| rows.to_biguint(i)).collect();
    Ok(PartitionSeries { config, n_max, counts })
}

fn is_semiprime_by_trial_division(m: u64) -> Option<SemiprimePart> {
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            let r = m / d;
            let mut e = 2;
            while e * e <= r {
                if r % e == 0 {
                    return None;
                }
                e += 1;
            }
            return Some(SemiprimePart { value: m, weight: if r == d { 1 } else { 2 } });
        }
        d += 1;
    }
    None
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exhaustive enumeration of multisets of parts summing to n (n <= 150).
pub fn brute_force_count(config: WeightConfig, n: usize) -> Result<BigUint> {
    if n > 150 {
        return Err(Error::Budget(format!("brute-force enumeration limited to n <= 150, got {n}")));
    }
    let mut parts = Vec::new();
    for m in (4..=n as u64).rev() {
        if let Some(p) = is_semiprime_by_trial_division(m) {
            let e = config.exponent(&p)?;
            parts.push((m, e as u64));
        }
    }
    fn rec(parts: &[(u64, u64)], rem: u64) -> BigUint {
        if rem == 0 {
            return BigUint::one();
        }
        let Some((&(m, e), rest)) = parts.split_first() else {
            return BigUint::zero();
        };
        let mut total = BigUint::zero();
        let mut k = 0;
        while k * m <= rem {
            // multiset of k copies of a part carrying e colours
            let ways = if e == 0 {
                if k == 0 { BigUint::one() } else { BigUint::zero() }
            } else {
                binomial(e + k - 1, k)
            };
            if !ways.is_zero() {
                total += ways * rec(rest, rem - k * m);
            }
            k += 1;
        }
        total
    }
    Ok(rec(&parts, n as u64))
}

/// d[n] = p(n+1) - p(n) for n < n_max.
pub fn difference_series(series: &PartitionSeries) -> Result<Vec<BigInt>> {
    if series.n_max < 1 {
        return domain("difference series needs n_max >= 1");
    }
    Ok(series
        .counts
        .windows(2)
        .map(|w| BigInt::from(w[1].clone()) - BigInt::from(w[0].clone()))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionCheck {
    pub n_max: usize,
    pub holds: bool,
    pub first_failure: Option<usize>,
}

/// Checks p_{P2} * p_{P2-distinct} = p_{P2-sharp} coefficientwise up to n_max.
pub fn convolution_check(n_max: usize) -> Result<ConvolutionCheck> {
    let a = partition_series(WeightConfig::p2(), n_max)?;
    let b = partition_series(WeightConfig::p2_distinct(), n_max)?;
    let c = partition_series(WeightConfig::p2_sharp(), n_max)?;
    let first_failure = (0..=n_max).find(|&n| {
        let mut acc = BigUint::zero();
        for k in 0..=n {
            if !a.counts[k].is_zero() && !b.counts[n - k].is_zero() {
                acc += &a.counts[k] * &b.counts[n - k];
            }
        }
        acc != c.counts[n]
    });
    Ok(ConvolutionCheck { n_max, holds: first_failure.is_none(), first_failure })
}

/// Ratio of consecutive differences to counts, as floating point, for n in range.
pub fn difference_ratio_exact(series: &PartitionSeries, n: usize) -> f64 {
    let d = BigInt::from(series.counts[n + 1].clone()) - BigInt::from(series.counts[n].clone());
    let num = crate::numeric::ln_abs_bigint(&d);
    let sign = if d < BigInt::zero() { -1.0 } else { 1.0 };
    sign * (num - series.log_count(n)).exp()
}
