//! Small summation helpers shared by the numeric modules.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use num_complex::Complex64;

/// Neumaier compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Pairwise (cascade) summation of complex terms; order-fixed and therefore reproducible.
pub fn pairwise_sum(terms: &[Complex64]) -> Complex64 {
    const BLOCK: usize = 64;
    if terms.len() <= BLOCK {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in terms {
            acc += t;
        }
        return acc;
    }
    let mid = terms.len() / 2;
    pairwise_sum(&terms[..mid]) + pairwise_sum(&terms[mid..])
}

/// Natural logarithm of a positive big integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of |x| for a big signed integer.
pub fn ln_abs_bigint(x: &BigInt) -> f64 {
    ln_biguint(&x.abs().to_biguint().unwrap_or_default())
}

/// Reduce `a * b` modulo 1 into [0,1), keeping the low-order part of the product.
pub fn frac_mul(a: f64, b: f64) -> f64 {
    let hi = a * b;
    let lo = a.mul_add(b, -hi);
    let f = hi - hi.floor();
    let r = f + lo;
    r - r.floor()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_recovers_small_terms() {
        let mut c = Compensated::new();
        c.add(1.0);
        for _ in 0..10 {
            c.add(1e-17);
        }
        c.add(-1.0);
        assert!((c.value() - 1e-16).abs() < 1e-30);
    }

    #[test]
    fn ln_of_large_integer() {
        let x = BigUint::from(3u32).pow(2000);
        let got = ln_biguint(&x);
        assert!((got - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn frac_mul_keeps_phase() {
        let alpha = 0.1;
        let v = 99_999_989.0;
        let f = frac_mul(alpha, v);
        // 0.1 as a double is slightly above 1/10
        let exact = (alpha as f64 * v) - (alpha * v).floor();
        assert!((f - exact).abs() < 1e-7);
        assert!((0.0..1.0).contains(&f));
    }
}
