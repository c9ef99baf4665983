//! Double-double arithmetic: an unevaluated sum `hi + lo` carrying about
//! 106 bits of mantissa, enough to absorb cancellation in alternating sums.

use core::ops::{Add, Mul, Neg};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DoubleDouble {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl DoubleDouble {
    pub(crate) const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub(crate) const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub(crate) fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact for integers below 2^106, otherwise correctly rounded to 106 bits.
    pub(crate) fn from_u128(x: u128) -> Self {
        let hi = x as f64;
        let lo = if hi >= 1.7e38 {
            0.0
        } else {
            (x as i128 - hi as i128) as f64
        };
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    pub(crate) fn powi(self, mut n: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        Self { hi, lo }
    }
}

/// `n choose k` when it and every intermediate product fit in a `u128`.
pub(crate) fn exact_binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return None;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_low_bits() {
        let big = DoubleDouble::from_f64(1e20);
        let sum = big + DoubleDouble::ONE + (-big);
        assert_eq!(sum.to_f64(), 1.0);
    }

    #[test]
    fn product_keeps_error_term() {
        let a = DoubleDouble::from_f64(1.0 + f64::EPSILON);
        let sq = a * a;
        // (1 + ε)² = 1 + 2ε + ε²; the ε² part lives in the low word
        let rest = sq + DoubleDouble::from_f64(-1.0) + DoubleDouble::from_f64(-2.0 * f64::EPSILON);
        assert_eq!(rest.to_f64(), f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn integers_convert_exactly() {
        let x: u128 = (1u128 << 100) + 12345;
        let d = DoubleDouble::from_u128(x);
        assert_eq!(
            (d + DoubleDouble::from_f64(-(2f64.powi(100)))).to_f64(),
            12345.0
        );
    }

    #[test]
    fn powi_matches_repeated_products() {
        let c = DoubleDouble::from_f64(0.7);
        let mut slow = DoubleDouble::ONE;
        for _ in 0..13 {
            slow = slow * c;
        }
        let fast = c.powi(13);
        assert!((fast.to_f64() - slow.to_f64()).abs() < 1e-30);
        assert_eq!(DoubleDouble::ZERO.powi(0), DoubleDouble::ONE);
    }

    #[test]
    fn binomials() {
        assert_eq!(exact_binomial(10, 3), Some(120));
        assert_eq!(
            exact_binomial(120, 60),
            Some(96614908840363322603893139521372656)
        );
        assert_eq!(exact_binomial(2, 3), None);
        assert_eq!(exact_binomial(200, 100), None);
    }
}
