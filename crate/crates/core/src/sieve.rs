//! Prime and semiprime enumeration, semiprime counting and residue-class counts.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::numeric::Compensated;

const SEGMENT: u64 = 1 << 20;

/// Sorted table of all primes up to `limit`.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u32>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Number of primes `<= x`; `x` must not exceed the table limit.
    pub fn pi(&self, x: u64) -> u64 {
        debug_assert!(x <= self.limit);
        self.primes.partition_point(|&p| (p as u64) <= x) as u64
    }
}

fn small_sieve(limit: u64) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn sieve_segment(lo: u64, hi: u64, base: &[u32]) -> Vec<u32> {
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        let p = p as u64;
        if p * p >= hi {
            break;
        }
        let mut start = (lo.div_ceil(p) * p).max(p * p);
        while start < hi {
            composite[(start - lo) as usize] = true;
            start += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|&(i, &c)| !c && lo + i as u64 >= 2)
        .map(|(i, _)| (lo + i as u64) as u32)
        .collect()
}

/// Segmented sieve of Eratosthenes. Segments are sieved in parallel and
/// concatenated in order, so the table is the same for any thread count.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return domain(format!("sieve limit must be at least 2, got {limit}"));
    }
    if limit > u32::MAX as u64 {
        return domain(format!("sieve limit {limit} exceeds 32-bit range"));
    }
    let root = limit.isqrt();
    let base = small_sieve(root);
    let n_seg = (limit + 1).div_ceil(SEGMENT);
    let chunks: Vec<Vec<u32>> = (0..n_seg)
        .into_par_iter()
        .map(|s| {
            let lo = s * SEGMENT;
            let hi = ((s + 1) * SEGMENT).min(limit + 1);
            sieve_segment(lo, hi, &base)
        })
        .collect();
    let primes = chunks.concat();
    Ok(PrimeTable { limit, primes })
}

/// A semiprime `value = p1*p2` with `weight` the number of ordered factorizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SemiprimePart {
    pub value: u64,
    pub weight: u8,
}

impl SemiprimePart {
    pub fn is_square(&self) -> bool {
        self.weight == 1
    }
}

/// All semiprimes up to `limit`, sorted by value.
pub fn semiprime_parts(limit: u64) -> Vec<SemiprimePart> {
    if limit < 4 {
        return Vec::new();
    }
    let table = sieve_primes(limit / 2).expect("limit >= 4");
    semiprime_parts_with(&table, limit)
}

pub(crate) fn semiprime_parts_with(table: &PrimeTable, limit: u64) -> Vec<SemiprimePart> {
    let ps = table.primes();
    let mut out = Vec::new();
    for (i, &p1) in ps.iter().enumerate() {
        let p1 = p1 as u64;
        if p1 * p1 > limit {
            break;
        }
        out.push(SemiprimePart { value: p1 * p1, weight: 1 });
        for &p2 in &ps[i + 1..] {
            let v = p1 * p2 as u64;
            if v > limit {
                break;
            }
            out.push(SemiprimePart { value: v, weight: 2 });
        }
    }
    out.sort_unstable_by_key(|s| s.value);
    out
}

/// Ordered-pair semiprime count `#{(p1,p2) : p1*p2 <= x}`.
pub fn pi2_star(x: u64) -> u64 {
    if x < 4 {
        return 0;
    }
    let table = sieve_primes(x / 2).expect("x >= 4");
    pi2_star_with(&table, x)
}

/// Hyperbola form `2 * sum_{p <= sqrt x} pi(x/p) - pi(sqrt x)^2`.
pub fn pi2_star_with(table: &PrimeTable, x: u64) -> u64 {
    if x < 4 {
        return 0;
    }
    let r = x.isqrt();
    let mut total = 0u64;
    let mut k = 0u64;
    for &p in table.primes() {
        let p = p as u64;
        if p > r {
            break;
        }
        total += table.pi(x / p);
        k += 1;
    }
    2 * total - k * k
}

/// Leading term `2x loglog x / log x` of the ordered semiprime count.
pub fn pi2_star_leading(x: f64) -> Result<f64> {
    if !(x > std::f64::consts::E) {
        return domain(format!("leading term needs x > e, got {x}"));
    }
    Ok(2.0 * x * x.ln().ln() / x.ln())
}

/// `sum_{p <= x} 1/p` with compensated summation.
pub fn mertens_sum(x: u64) -> f64 {
    if x < 2 {
        return 0.0;
    }
    let table = sieve_primes(x).expect("x >= 2");
    let mut acc = Compensated::new();
    for &p in table.primes() {
        acc.add(1.0 / p as f64);
    }
    acc.value()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueClassCount {
    pub t: u64,
    pub q: u64,
    pub ell: u64,
    pub count: u64,
}

fn mod_inverse(a: u64, q: u64) -> Option<u64> {
    let e = (a as i64).extended_gcd(&(q as i64));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(q as i64) as u64)
}

/// Weighted count of ordered prime pairs with `p1*p2 <= t` and `p1*p2 = ell (mod q)`.
pub fn semiprime_count_mod(t: u64, q: u64, ell: u64) -> Result<ResidueClassCount> {
    if q == 0 {
        return domain("modulus must be at least 1");
    }
    if ell.gcd(&q) != 1 {
        return domain(format!("residue {ell} is not coprime to modulus {q}"));
    }
    let ell = ell % q;
    let count = if t < 4 {
        0
    } else {
        let table = sieve_primes(t / 2)?;
        count_mod_with(&table, t, q, ell)
    };
    Ok(ResidueClassCount { t, q, ell, count })
}

fn count_mod_with(table: &PrimeTable, t: u64, q: u64, ell: u64) -> u64 {
    let qs = q as usize;
    let mut by_class: Vec<Vec<u32>> = vec![Vec::new(); qs];
    for &p in table.primes() {
        by_class[(p as u64 % q) as usize].push(p);
    }
    let upto = |class: usize, x: u64| by_class[class].partition_point(|&p| (p as u64) <= x) as u64;
    let r = t.isqrt();
    // A1 counts pairs with p1 <= sqrt t and any p2 <= t/p1; A3 the square overlap.
    let mut a1 = 0u64;
    let mut a3 = 0u64;
    for &p1 in table.primes() {
        let p1 = p1 as u64;
        if p1 > r {
            break;
        }
        let Some(inv) = mod_inverse(p1 % q, q) else {
            continue;
        };
        let class = ((ell as u128 * inv as u128) % q as u128) as usize;
        a1 += upto(class, t / p1);
        a3 += upto(class, r);
    }
    2 * a1 - a3
}

/// Distinct prime factors of `n` by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Moebius function.
pub fn mobius(n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let mut m = n;
    let mut sign = 1i8;
    for p in prime_factors(n) {
        m /= p;
        if m % p == 0 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    prime_factors(n).iter().fold(n, |acc, p| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn multiplicative_functions() {
        let mu: Vec<i8> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
        let phi: Vec<u64> = (1..=12).map(totient).collect();
        assert_eq!(phi, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
    }

    #[test]
    fn small_tables() {
        assert_eq!(sieve_primes(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap().primes(), &[2]);
        assert!(sieve_primes(1).is_err());
    }

    #[test]
    fn segment_boundaries_match_trial_division() {
        let limit = 3 * SEGMENT + 17;
        let t = sieve_primes(limit).unwrap();
        let oracle: Vec<u32> = (0..=limit).filter(|&n| trial_division_prime(n)).map(|n| n as u32).collect();
        assert_eq!(t.primes(), &oracle[..]);
    }

    #[test]
    fn million_has_78498_primes() {
        let t = sieve_primes(1_000_000).unwrap();
        let oracle = (0..=1_000_000u64).filter(|&n| trial_division_prime(n)).count();
        assert_eq!(oracle, 78498);
        assert_eq!(t.len(), oracle);
    }

    #[test]
    fn semiprime_lists() {
        let v = semiprime_parts(10);
        let pairs: Vec<(u64, u8)> = v.iter().map(|s| (s.value, s.weight)).collect();
        assert_eq!(pairs, vec![(4, 1), (6, 2), (9, 1), (10, 2)]);
        let v = semiprime_parts(25);
        let vals: Vec<u64> = v.iter().map(|s| s.value).collect();
        assert_eq!(vals, vec![4, 6, 9, 10, 14, 15, 21, 22, 25]);
        assert_eq!(v.last().unwrap().weight, 1);
        assert!(semiprime_parts(3).is_empty());
    }

    #[test]
    fn pi2_star_small() {
        assert_eq!(pi2_star(10), 6);
        assert_eq!(pi2_star(3), 0);
        assert_eq!(pi2_star(4), 1);
    }

    #[test]
    fn pi2_star_matches_part_weights() {
        let parts = semiprime_parts(100_000);
        let table = sieve_primes(50_000).unwrap();
        let mut acc = 0u64;
        let mut idx = 0;
        for x in (0..=100_000u64).step_by(997).chain([100_000]) {
            while idx < parts.len() && parts[idx].value <= x {
                acc += parts[idx].weight as u64;
                idx += 1;
            }
            assert_eq!(pi2_star_with(&table, x), acc, "x = {x}");
        }
    }

    #[test]
    fn leading_term() {
        let x = std::f64::consts::E.powf(std::f64::consts::E);
        let v = pi2_star_leading(x).unwrap();
        assert!((v - 2.0 * x / std::f64::consts::E).abs() < 1e-9 * v);
        assert!(pi2_star_leading(2.0).is_err());
    }

    #[test]
    fn mertens_small() {
        assert_eq!(mertens_sum(2), 0.5);
        let direct = 0.5 + 1.0 / 3.0 + 0.2 + 1.0 / 7.0;
        assert!((mertens_sum(10) - direct).abs() < 1e-15);
    }

    #[test]
    fn residue_counts() {
        assert_eq!(semiprime_count_mod(10, 1, 1).unwrap().count, 6);
        assert_eq!(semiprime_count_mod(25, 3, 1).unwrap().count, 6);
        assert!(semiprime_count_mod(25, 3, 3).is_err());
        assert!(semiprime_count_mod(25, 4, 2).is_err());
    }

    #[test]
    fn residue_classes_partition_the_count() {
        for t in [50u64, 997, 10_000] {
            let parts = semiprime_parts(t);
            for q in 1..=12u64 {
                let mut total = 0;
                for ell in 0..q {
                    if ell.gcd(&q) == 1 {
                        total += semiprime_count_mod(t, q, ell).unwrap().count;
                    }
                }
                let shared: u64 = parts
                    .iter()
                    .filter(|s| s.value.gcd(&q) != 1)
                    .map(|s| s.weight as u64)
                    .sum();
                assert_eq!(total + shared, pi2_star(t), "t={t} q={q}");
            }
        }
    }

    #[test]
    fn residue_classes_mod_4_equidistribute() {
        let a = semiprime_count_mod(100_000, 4, 1).unwrap().count as f64;
        let b = semiprime_count_mod(100_000, 4, 3).unwrap().count as f64;
        assert!((a - b).abs() / a.max(b) < 0.1);
    }
}
