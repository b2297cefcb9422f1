//! Zeta-type functions and the constants used by the asymptotic formulas.
//!
//! Everything is computed from scratch in binary floating point of adjustable
//! precision (default 192 bits) and carries a certified absolute error bound
//! covering series truncation and rounding.

use std::sync::{Mutex, OnceLock};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, Result};
use crate::sieve::mobius;

pub const DEFAULT_PRECISION: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

/// A double-precision value with a certified absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrecisionReal {
    pub value: f64,
    pub abs_error_bound: f64,
}

impl PrecisionReal {
    pub fn contains(&self, x: f64) -> bool {
        (self.value - x).abs() <= self.abs_error_bound
    }
}

/// A multi-precision value with a certified absolute error bound.
#[derive(Clone, Debug)]
pub struct HpReal {
    pub value: BigFloat,
    pub abs_error_bound: f64,
}

impl HpReal {
    pub fn to_f64(&self) -> f64 {
        bf_to_f64(&self.value)
    }

    /// Round to double precision, folding the rounding error into the bound.
    pub fn to_precision_real(&self) -> PrecisionReal {
        let v = self.to_f64();
        PrecisionReal {
            value: v,
            abs_error_bound: self.abs_error_bound + v.abs() * f64::EPSILON,
        }
    }

    pub fn decimal(&self) -> String {
        format!("{}", self.value)
    }

    /// |self - other| evaluated in the larger of the two precisions.
    pub fn distance(&self, other: &HpReal) -> f64 {
        let p = self.value.mantissa_max_bit_len().unwrap_or(64).max(other.value.mantissa_max_bit_len().unwrap_or(64));
        bf_to_f64(&self.value.sub(&other.value, p, RM).abs())
    }
}

fn bf_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    format!("{x}").parse::<f64>().unwrap_or(f64::NAN)
}

struct Hp {
    p: usize,
    cc: Consts,
}

impl Hp {
    fn new(p: usize) -> Self {
        Hp { p, cc: Consts::new().expect("constant cache") }
    }
    fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }
    fn f(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }
    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }
    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }
    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }
    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }
    fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc)
    }
    fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc)
    }
    fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }
    fn pow(&mut self, a: &BigFloat, e: &BigFloat) -> BigFloat {
        let l = self.ln(a);
        let t = self.mul(&l, e);
        self.exp(&t)
    }
    fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }
    fn rational(&mut self, r: &BigRational) -> BigFloat {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        self.div(&n, &d)
    }
    /// Generous rounding allowance for a computation of moderate length at this precision.
    fn slack(&self, scale: f64) -> f64 {
        scale.abs().max(1.0) * 2f64.powi(-(self.p as i32) + 24)
    }
    /// Tail target for series truncation at this precision.
    fn target(&self) -> f64 {
        2f64.powi(-(self.p as i32) + 64)
    }
}

/// Bernoulli numbers B_0..=B_n (B_1 = -1/2).
fn bernoulli(n: usize) -> Vec<BigRational> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut b = cache.lock().unwrap();
    while b.len() <= n {
        let m = b.len();
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b[..=n].to_vec()
}

fn ln_abs_rational(r: &BigRational) -> f64 {
    let n = crate::numeric::ln_abs_bigint(r.numer());
    let d = crate::numeric::ln_abs_bigint(r.denom());
    n - d
}

/// Euler-Maclaurin evaluation of zeta(s) for real s > 1 given in multi-precision.
fn zeta_em(hp: &mut Hp, s: &BigFloat, s64: f64) -> HpReal {
    let target = hp.target();
    let ln_target = target.ln();
    let mut n_cut = 16usize;
    let m_terms = loop {
        let ln_n = (n_cut as f64).ln();
        let ln2pin = (2.0 * std::f64::consts::PI * n_cut as f64).ln();
        let found = (1..=80usize).find(|&m| {
            let mm = 2.0 * m as f64;
            let ln_poch = ln_gamma(s64 + mm) - ln_gamma(s64);
            let ln_bound = 4f64.ln() + ln_poch - mm * ln2pin + (1.0 - s64) * ln_n - (s64 + mm - 1.0).ln();
            ln_bound < ln_target - 2.0
        });
        match found {
            Some(m) => break m,
            None => n_cut *= 2,
        }
    };
    let mm = 2.0 * m_terms as f64;
    let ln_poch = ln_gamma(s64 + mm) - ln_gamma(s64);
    let ln_n = (n_cut as f64).ln();
    let ln2pin = (2.0 * std::f64::consts::PI * n_cut as f64).ln();
    let tail = (4f64.ln() + ln_poch - mm * ln2pin + (1.0 - s64) * ln_n - (s64 + mm - 1.0).ln()).exp();

    let neg_s = s.neg();
    let mut sum = hp.int(0);
    for k in 1..n_cut {
        let kb = hp.int(k as i64);
        let t = hp.pow(&kb, &neg_s);
        sum = hp.add(&sum, &t);
    }
    let nb = hp.int(n_cut as i64);
    let n_neg_s = hp.pow(&nb, &neg_s);
    let one = hp.int(1);
    let s_minus_1 = hp.sub(s, &one);
    // N^{1-s}/(s-1) + N^{-s}/2
    let t = hp.mul(&n_neg_s, &nb);
    let t = hp.div(&t, &s_minus_1);
    sum = hp.add(&sum, &t);
    let half = hp.f(0.5);
    let t = hp.mul(&n_neg_s, &half);
    sum = hp.add(&sum, &t);
    // sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let b = bernoulli(2 * m_terms);
    let n2 = hp.mul(&nb, &nb);
    let mut poch = s.clone(); // s(s+1)...(s+2k-2)
    let mut npow = hp.div(&n_neg_s, &nb); // N^{-s-1}
    let mut fact = BigRational::from_integer(BigInt::from(2)); // (2k)!
    for k in 1..=m_terms {
        let coef = &b[2 * k] / &fact;
        let cb = hp.rational(&coef);
        let t = hp.mul(&cb, &poch);
        let t = hp.mul(&t, &npow);
        sum = hp.add(&sum, &t);
        // advance to k+1
        let a1 = hp.add(s, &hp.int(2 * k as i64 - 1));
        let a2 = hp.add(s, &hp.int(2 * k as i64));
        poch = hp.mul(&poch, &a1);
        poch = hp.mul(&poch, &a2);
        npow = hp.div(&npow, &n2);
        fact *= BigRational::from_integer(BigInt::from((2 * k + 1) * (2 * k + 2)));
    }
    let scale = bf_to_f64(&sum) * n_cut as f64;
    HpReal { abs_error_bound: tail + hp.slack(scale), value: sum }
}

fn ln_of(hp: &mut Hp, x: &HpReal) -> HpReal {
    let v = hp.ln(&x.value);
    let xv = x.to_f64();
    let e = x.abs_error_bound;
    let bound = if e < 0.5 * xv { e / (xv - e) } else { f64::INFINITY };
    HpReal { value: v, abs_error_bound: bound + hp.slack(1.0) }
}

/// Riemann zeta at real s > 1 in the given binary precision.
pub fn riemann_zeta_hp(s: f64, precision: usize) -> Result<HpReal> {
    if !(s > 1.0) || !s.is_finite() {
        return domain(format!("zeta needs real s > 1, got {s}"));
    }
    let mut hp = Hp::new(precision);
    let sb = hp.f(s);
    Ok(zeta_em(&mut hp, &sb, s))
}

pub fn riemann_zeta(s: f64) -> Result<PrecisionReal> {
    Ok(riemann_zeta_hp(s, DEFAULT_PRECISION)?.to_precision_real())
}

/// Number of Moebius terms needed so that the prime zeta tail is below `target`.
fn prime_zeta_terms(s: f64, target: f64) -> (usize, f64) {
    let mut n0 = 1usize;
    loop {
        let next = (n0 + 1) as f64;
        if next * s >= 2.0 {
            let tail = 3.0 * (-(next * s) * std::f64::consts::LN_2).exp() / (next * (1.0 - 2f64.powf(-s)));
            if tail < target {
                return (n0, tail);
            }
        }
        n0 += 1;
    }
}

fn prime_zeta_from<F>(hp: &mut Hp, s: f64, mut ln_zeta: F) -> HpReal
where
    F: FnMut(&mut Hp, usize) -> HpReal,
{
    let (n0, tail) = prime_zeta_terms(s, hp.target());
    let mut sum = hp.int(0);
    let mut err = tail;
    for n in 1..=n0 {
        let mu = mobius(n as u64);
        if mu == 0 {
            continue;
        }
        let lz = ln_zeta(hp, n);
        let t = hp.div(&lz.value, &hp.int(n as i64));
        sum = if mu > 0 { hp.add(&sum, &t) } else { hp.sub(&sum, &t) };
        err += lz.abs_error_bound / n as f64;
    }
    HpReal { value: sum, abs_error_bound: err + hp.slack(1.0) }
}

/// Prime zeta function via the Moebius series sum_n mu(n)/n log zeta(ns).
pub fn prime_zeta_hp(s: f64, precision: usize) -> Result<HpReal> {
    if !(s > 1.0) || !s.is_finite() {
        return domain(format!("prime zeta needs real s > 1, got {s}"));
    }
    let mut hp = Hp::new(precision);
    Ok(prime_zeta_from(&mut hp, s, |hp, n| {
        let arg = s * n as f64;
        // n*s is exact in the working precision when s is a double
        let sb = hp.mul(&hp.f(s), &hp.int(n as i64));
        let z = zeta_em(hp, &sb, arg);
        ln_of(hp, &z)
    }))
}

pub fn prime_zeta(s: f64) -> Result<PrecisionReal> {
    Ok(prime_zeta_hp(s, DEFAULT_PRECISION)?.to_precision_real())
}

/// log zeta(k) for integers 2..=kmax.
fn ln_zeta_integers(hp: &mut Hp, kmax: usize) -> Vec<HpReal> {
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(HpReal { value: hp.int(0), abs_error_bound: 0.0 });
    out.push(HpReal { value: hp.int(0), abs_error_bound: 0.0 });
    for k in 2..=kmax {
        let kb = hp.int(k as i64);
        let z = zeta_em(hp, &kb, k as f64);
        out.push(ln_of(hp, &z));
    }
    out
}

/// Froberg's constant D = sum_{j>=2} zeta_P(j)/j in the given precision.
pub fn froberg_d_hp(precision: usize) -> HpReal {
    let mut hp = Hp::new(precision);
    let target = hp.target();
    // sum_{j>J} zeta_P(j)/j <= sum_{j>J} 3*2^-j/j <= 3*2^-J/(J+1)
    let mut jmax = 2usize;
    while 3.0 * 2f64.powi(-(jmax as i32)) / (jmax as f64 + 1.0) >= target {
        jmax += 1;
    }
    let tail_j = 3.0 * 2f64.powi(-(jmax as i32)) / (jmax as f64 + 1.0);
    let kmax = (2..=jmax).map(|j| j * prime_zeta_terms(j as f64, target).0).max().unwrap_or(2);
    let lz = ln_zeta_integers(&mut hp, kmax);
    let mut sum = hp.int(0);
    let mut err = tail_j;
    for j in 2..=jmax {
        let pz = prime_zeta_from(&mut hp, j as f64, |_, n| lz[n * j].clone());
        let t = hp.div(&pz.value, &hp.int(j as i64));
        sum = hp.add(&sum, &t);
        err += pz.abs_error_bound / j as f64;
    }
    HpReal { value: sum, abs_error_bound: err + hp.slack(1.0) }
}

/// Euler's constant from the Euler-Maclaurin expansion of the harmonic numbers.
pub fn euler_gamma_hp(precision: usize) -> HpReal {
    let mut hp = Hp::new(precision);
    let target = hp.target();
    let n = 64usize;
    let b = bernoulli(2 * 120);
    let ln_n = (n as f64).ln();
    // remainder of the asymptotic series is bounded by the first omitted term
    let term_ln = |k: usize| ln_abs_rational(&b[2 * k]) - ((2 * k) as f64).ln() - (2 * k) as f64 * ln_n;
    let mut m = 1usize;
    while term_ln(m + 1) >= target.ln() - 1.0 {
        m += 1;
    }
    let tail = term_ln(m + 1).exp();
    let mut h = hp.int(0);
    for k in 1..=n {
        let t = hp.div(&hp.int(1), &hp.int(k as i64));
        h = hp.add(&h, &t);
    }
    let nb = hp.int(n as i64);
    let lnn = hp.ln(&nb);
    let mut g = hp.sub(&h, &lnn);
    let t = hp.div(&hp.f(0.5), &nb);
    g = hp.sub(&g, &t);
    let n2 = hp.mul(&nb, &nb);
    let mut npow = n2.clone();
    for k in 1..=m {
        let coef = &b[2 * k] / BigRational::from_integer(BigInt::from(2 * k));
        let cb = hp.rational(&coef);
        let t = hp.div(&cb, &npow);
        g = hp.add(&g, &t);
        npow = hp.mul(&npow, &n2);
    }
    HpReal { value: g, abs_error_bound: tail + hp.slack(8.0) }
}

fn combine(hp: &Hp, a: &HpReal, b: &HpReal, subtract: bool) -> HpReal {
    let v = if subtract { hp.sub(&a.value, &b.value) } else { hp.add(&a.value, &b.value) };
    HpReal { value: v, abs_error_bound: a.abs_error_bound + b.abs_error_bound + hp.slack(1.0) }
}

/// Meissel-Mertens constant, implemented as gamma - D.
pub fn meissel_mertens_hp(precision: usize) -> HpReal {
    let hp = Hp::new(precision);
    let g = euler_gamma_hp(precision);
    let d = froberg_d_hp(precision);
    combine(&hp, &g, &d, true)
}

fn cached(cell: &'static OnceLock<HpReal>, f: fn(usize) -> HpReal) -> &'static HpReal {
    cell.get_or_init(|| f(DEFAULT_PRECISION))
}

static GAMMA: OnceLock<HpReal> = OnceLock::new();
static FROBERG: OnceLock<HpReal> = OnceLock::new();
static MERTENS: OnceLock<HpReal> = OnceLock::new();

pub fn euler_gamma() -> PrecisionReal {
    cached(&GAMMA, euler_gamma_hp).to_precision_real()
}

pub fn froberg_d() -> PrecisionReal {
    cached(&FROBERG, froberg_d_hp).to_precision_real()
}

pub fn meissel_mertens() -> PrecisionReal {
    MERTENS
        .get_or_init(|| {
            let hp = Hp::new(DEFAULT_PRECISION);
            combine(&hp, cached(&GAMMA, euler_gamma_hp), cached(&FROBERG, froberg_d_hp), true)
        })
        .to_precision_real()
}

/// Integer partitions of k as multiplicity vectors (index i holds the count of part i).
fn multiplicity_partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max_part.min(rem)).rev() {
            cur[part] += 1;
            rec(rem - part, part, cur, out);
            cur[part] -= 1;
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0; k + 1];
    rec(k, k, &mut cur, &mut out);
    out
}

/// Dirichlet series over integers with exactly k prime factors (with multiplicity).
pub fn almost_prime_zeta_hp(k: usize, s: f64, precision: usize) -> Result<HpReal> {
    if !(1..=8).contains(&k) {
        return domain(format!("almost-prime zeta supports 1 <= k <= 8, got {k}"));
    }
    if !(s > 1.0) || !s.is_finite() {
        return domain(format!("almost-prime zeta needs real s > 1, got {s}"));
    }
    let pz: Vec<HpReal> = (1..=k)
        .map(|i| prime_zeta_hp(s * i as f64, precision))
        .collect::<Result<_>>()?;
    let hp = Hp::new(precision);
    let mut sum = hp.int(0);
    let mut err = 0.0;
    for mult in multiplicity_partitions(k) {
        let mut term = hp.int(1);
        let mut upper = 1.0f64;
        let mut central = 1.0f64;
        let mut denom = BigInt::one();
        for (i, &ki) in mult.iter().enumerate().skip(1) {
            for _ in 0..ki {
                term = hp.mul(&term, &pz[i - 1].value);
                let v = pz[i - 1].to_f64();
                central *= v;
                upper *= v + pz[i - 1].abs_error_bound;
            }
            let fact: BigInt = (1..=ki).map(BigInt::from).product();
            denom *= fact * BigInt::from(i).pow(ki as u32);
        }
        let d = denom.to_f64().unwrap_or(f64::INFINITY);
        term = hp.div(&term, &hp.int(denom.to_i64().unwrap_or(i64::MAX)));
        sum = hp.add(&sum, &term);
        err += (upper - central).abs() * (1.0 + 1e-12) / d;
    }
    Ok(HpReal { value: sum, abs_error_bound: err + hp.slack(1.0) })
}

pub fn almost_prime_zeta(k: usize, s: f64) -> Result<PrecisionReal> {
    Ok(almost_prime_zeta_hp(k, s, DEFAULT_PRECISION)?.to_precision_real())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    #[serde(rename = "theorem-1")]
    Theorem1,
    #[serde(rename = "theorem-7.2")]
    Theorem72,
}

impl Variant {
    pub fn label(&self) -> &'static str {
        match self {
            Variant::Theorem1 => "theorem-1",
            Variant::Theorem72 => "theorem-7.2",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremConstants {
    pub lambda: (i64, i64),
    pub variant: Variant,
    pub c1: PrecisionReal,
    pub c2: PrecisionReal,
    pub c3: PrecisionReal,
    pub c4: PrecisionReal,
}

/// Constants c1..c4 of the closed-form asymptotics for a weight lambda.
pub fn theorem_constants(lambda: Rational64, variant: Variant) -> Result<TheoremConstants> {
    if lambda <= Rational64::zero() {
        return domain(format!("lambda must be positive, got {lambda}"));
    }
    let mut hp = Hp::new(DEFAULT_PRECISION);
    let two_b = hp.int(2);
    let z2 = zeta_em(&mut hp, &two_b, 2.0);
    let four_z2 = hp.mul(&hp.int(4), &z2.value);
    let root = hp.sqrt(&four_z2);
    let quarter = hp.sqrt(&root);
    let pi = hp.pi();
    let sqrt_pi = hp.sqrt(&pi);
    let two = hp.int(2);
    let sqrt2 = hp.sqrt(&two);
    let lam = hp.div(&hp.int(*lambda.numer()), &hp.int(*lambda.denom()));
    let (c1, c3) = match variant {
        Variant::Theorem1 => {
            let fourth_root2 = hp.sqrt(&sqrt2);
            let d = hp.mul(&fourth_root2, &sqrt_pi);
            let c1 = hp.div(&quarter, &d);
            let inv = hp.div(&hp.int(1), &hp.mul(&two, &sqrt2));
            let f = hp.add(&sqrt2, &inv);
            (c1, hp.mul(&f, &root))
        }
        Variant::Theorem72 => {
            let lam34 = hp.pow(&lam, &hp.f(0.75));
            let d = hp.mul(&hp.mul(&two, &sqrt_pi), &lam34);
            let c1 = hp.div(&quarter, &d);
            let inv = hp.div(&hp.int(1), &lam);
            let f = hp.add(&lam, &inv);
            let f = hp.div(&f, &hp.sqrt(&lam));
            (c1, hp.mul(&f, &root))
        }
    };
    let m = cached(&MERTENS_HP, meissel_mertens_hp);
    let ln2 = hp.ln(&two);
    let c2 = HpReal { value: hp.sub(&m.value, &ln2), abs_error_bound: m.abs_error_bound + hp.slack(1.0) };
    let c4 = hp.div(&hp.mul(&two, &pi), &hp.sqrt(&hp.int(3)));
    // zeta(2) enters through a fractional power, so its relative error bounds the relative error
    let rel = z2.abs_error_bound / bf_to_f64(&z2.value);
    let wrap = |hp: &Hp, v: BigFloat| {
        let x = bf_to_f64(&v);
        HpReal { abs_error_bound: x.abs() * rel + hp.slack(x), value: v }.to_precision_real()
    };
    Ok(TheoremConstants {
        lambda: (*lambda.numer(), *lambda.denom()),
        variant,
        c1: wrap(&hp, c1),
        c2: c2.to_precision_real(),
        c3: wrap(&hp, c3),
        c4: wrap(&hp, c4),
    })
}

static MERTENS_HP: OnceLock<HpReal> = OnceLock::new();

/// Named constants with value and error bound, as reported by the command line.
pub fn constants_table() -> Vec<(String, PrecisionReal)> {
    let mut out = vec![
        ("euler_gamma".to_string(), euler_gamma()),
        ("meissel_mertens".to_string(), meissel_mertens()),
        ("froberg_d".to_string(), froberg_d()),
        ("zeta_2".to_string(), riemann_zeta(2.0).expect("s > 1")),
        ("zeta_3_2".to_string(), riemann_zeta(1.5).expect("s > 1")),
    ];
    for (variant, lam) in [
        (Variant::Theorem1, Rational64::new(1, 2)),
        (Variant::Theorem72, Rational64::new(1, 2)),
        (Variant::Theorem72, Rational64::new(1, 1)),
    ] {
        let c = theorem_constants(lam, variant).expect("lambda > 0");
        let tag = match variant {
            Variant::Theorem1 => "theorem1".to_string(),
            Variant::Theorem72 => format!("theorem72_lambda_{}_{}", lam.numer(), lam.denom()),
        };
        for (name, v) in [("c1", c.c1), ("c2", c.c2), ("c3", c.c3), ("c4", c.c4)] {
            out.push((format!("{tag}_{name}"), v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(12);
        assert_eq!(b[1], BigRational::new((-1).into(), 2.into()));
        assert_eq!(b[2], BigRational::new(1.into(), 6.into()));
        assert_eq!(b[12], BigRational::new((-691).into(), 2730.into()));
        assert!(b[3].is_zero());
    }

    #[test]
    fn zeta_closed_forms() {
        let z2 = riemann_zeta(2.0).unwrap();
        assert!(z2.abs_error_bound <= 1e-12);
        assert!((z2.value - PI * PI / 6.0).abs() < 1e-15);
        let z4 = riemann_zeta(4.0).unwrap();
        assert!((z4.value - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!(riemann_zeta(1.0).is_err());
        assert!(riemann_zeta(0.5).is_err());
    }

    #[test]
    fn zeta_three_halves_direct_sum() {
        // partial sum to N plus the tail integral bracket [N^{-1/2}*2 - ..]
        let n = 2_000_000u64;
        let mut acc = crate::numeric::Compensated::new();
        for k in (1..=n).rev() {
            acc.add((k as f64).powf(-1.5));
        }
        // sum_{k>N} k^{-3/2} lies between 2(N+1)^{-1/2} and 2N^{-1/2}
        let lo = acc.value() + 2.0 / ((n + 1) as f64).sqrt();
        let hi = acc.value() + 2.0 / (n as f64).sqrt();
        let z = riemann_zeta(1.5).unwrap();
        assert!(z.value > lo - 1e-9 && z.value < hi + 1e-9, "{} not in [{lo},{hi}]", z.value);
        assert!((z.value - 2.612_375_348_685_488).abs() < 1e-12);
    }

    #[test]
    fn prime_zeta_small_and_large() {
        let p10 = prime_zeta(10.0).unwrap();
        let two_terms = 2f64.powi(-10) + 3f64.powi(-10);
        // remaining primes contribute at most sum_{n>=5} n^{-10} < 5^-10 * 2
        assert!(p10.value > two_terms && p10.value - two_terms < 2.0 * 5f64.powi(-10));
        let p40 = prime_zeta(40.0).unwrap();
        assert!((p40.value / 2f64.powi(-40) - 1.0).abs() < 1e-6);
        assert!(prime_zeta(1.0).is_err());
    }

    #[test]
    fn froberg_and_mertens_values() {
        let d = froberg_d();
        assert!((d.value - 0.315_718_452).abs() < 1e-8);
        let m = meissel_mertens();
        assert!((m.value - 0.261_497_21).abs() < 1e-6);
        let g = euler_gamma();
        assert!((g.value - 0.577_215_664_901_532_9).abs() < 1e-15);
        assert!((m.value + d.value - g.value).abs() <= m.abs_error_bound + d.abs_error_bound + g.abs_error_bound + 1e-16);
        let half_pz2 = prime_zeta(2.0).unwrap().value / 2.0;
        assert!(half_pz2 < d.value);
    }

    #[test]
    fn almost_prime_reduces() {
        let a = almost_prime_zeta(1, 2.5).unwrap();
        let p = prime_zeta(2.5).unwrap();
        assert!((a.value - p.value).abs() <= a.abs_error_bound + p.abs_error_bound);
        let a2 = almost_prime_zeta(2, 2.0).unwrap();
        let p2 = prime_zeta(2.0).unwrap().value;
        let p4 = prime_zeta(4.0).unwrap().value;
        assert!((a2.value - (p2 * p2 + p4) / 2.0).abs() < 1e-15);
        assert!(almost_prime_zeta(0, 2.0).is_err());
        assert!(almost_prime_zeta(9, 2.0).is_err());
        assert!(almost_prime_zeta(2, 1.0).is_err());
    }

    #[test]
    fn almost_prime_decreasing_in_s() {
        for k in 1..=8 {
            let mut prev = f64::INFINITY;
            for s in [1.5, 2.0, 3.0, 5.0] {
                let v = almost_prime_zeta(k, s).unwrap().value;
                assert!(v >= 0.0 && v < prev, "k={k} s={s}");
                prev = v;
            }
        }
    }

    #[test]
    fn partitions_of_small_k() {
        assert_eq!(multiplicity_partitions(4).len(), 5);
        assert_eq!(multiplicity_partitions(8).len(), 22);
    }

    #[test]
    fn doubled_precision_stays_within_bounds() {
        for s in [1.5, 2.0, 3.0] {
            let lo = prime_zeta_hp(s, 192).unwrap();
            let hi = prime_zeta_hp(s, 384).unwrap();
            assert!(lo.distance(&hi) <= lo.abs_error_bound, "s={s}");
            let lo = riemann_zeta_hp(s, 192).unwrap();
            let hi = riemann_zeta_hp(s, 384).unwrap();
            assert!(lo.distance(&hi) <= lo.abs_error_bound, "s={s}");
        }
        let lo = froberg_d_hp(192);
        let hi = froberg_d_hp(384);
        assert!(lo.distance(&hi) <= lo.abs_error_bound);
        let lo = euler_gamma_hp(192);
        let hi = euler_gamma_hp(384);
        assert!(lo.distance(&hi) <= lo.abs_error_bound);
    }

    #[test]
    fn closed_form_constant_values() {
        let half = Rational64::new(1, 2);
        let t1 = theorem_constants(half, Variant::Theorem1).unwrap();
        let m = meissel_mertens().value;
        assert!((t1.c2.value - (m - 2f64.ln())).abs() < 1e-14);
        assert!((t1.c2.value + 0.43165).abs() < 1e-5);
        let root = (4.0 * PI * PI / 6.0).sqrt();
        assert!((t1.c3.value - (2f64.sqrt() + 2f64.powf(-1.5)) * root).abs() < 1e-13);
        assert!((t1.c4.value - 2.0 * PI / 3f64.sqrt()).abs() < 1e-14);
        let one = theorem_constants(Rational64::new(1, 1), Variant::Theorem72).unwrap();
        assert!((one.c3.value - 2.0 * root).abs() < 1e-13);
        let t72 = theorem_constants(half, Variant::Theorem72).unwrap();
        assert!((t72.c3.value - 2.5 * 2f64.sqrt() * root).abs() < 1e-13);
        assert!((t72.c3.value - t1.c3.value).abs() > 1.0);
        assert_eq!(t72.c2, t1.c2);
        assert!(theorem_constants(Rational64::new(0, 1), Variant::Theorem1).is_err());
        assert!(theorem_constants(Rational64::new(-1, 2), Variant::Theorem72).is_err());
    }
}
