use crate::error::{invalid, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// ln(m!) for m = 0..=15, computed from the exact factorials.
const LN_FACTORIAL_SMALL: [f64; 16] = [
    0.0,
    0.0,
    core::f64::consts::LN_2,
    1.791_759_469_228_055,
    3.178_053_830_347_945_7,
    4.787_491_742_782_046,
    6.579_251_212_010_101,
    8.525_161_361_065_415,
    10.604_602_902_745_25,
    12.801_827_480_081_469,
    15.104_412_573_075_516,
    17.502_307_845_873_887,
    19.987_214_495_661_885,
    22.552_163_853_123_42,
    25.191_221_182_738_683,
    27.899_271_383_840_894,
];

/// Stirling remainder `ln(m!) - (m ln m - m + ½ ln(2πm))` for `m ≥ 1`.
fn stirling_remainder(m: u64) -> f64 {
    if m < LN_FACTORIAL_SMALL.len() as u64 {
        let x = m as f64;
        return LN_FACTORIAL_SMALL[m as usize]
            - (x * libm::log(x) - x + HALF_LN_2PI + 0.5 * libm::log(x));
    }
    let x = m as f64;
    let x2 = x * x;
    // 1/(12x) - 1/(360x³) + 1/(1260x⁵) - 1/(1680x⁷) + 1/(1188x⁹)
    (1.0 / 12.0
        - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / (1188.0 * x2)) / x2) / x2) / x2)
        / x
}

/// Natural log of m!.
pub fn ln_factorial(m: u64) -> f64 {
    if m < LN_FACTORIAL_SMALL.len() as u64 {
        return LN_FACTORIAL_SMALL[m as usize];
    }
    let x = m as f64;
    x * libm::log(x) - x + HALF_LN_2PI + 0.5 * libm::log(x) + stirling_remainder(m)
}

/// Natural log of the binomial coefficient `n choose k`.
///
/// The leading Stirling terms are combined as `k·ln(n/k) + (n−k)·ln(n/(n−k))`,
/// two nonnegative quantities, so no large terms cancel even for `n ~ 10⁶`.
pub fn log_binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(invalid!("binomial({n}, {k}) requires 0 <= k <= n"));
    }
    let k = k.min(n - k);
    if k == 0 {
        return Ok(0.0);
    }
    let (nf, kf) = (n as f64, k as f64);
    let rest = n - k;
    let rf = rest as f64;
    let entropy = kf * libm::log(nf / kf) - rf * libm::log1p(-kf / nf);
    let prefactor = 0.5 * libm::log(nf / (kf * rf)) - HALF_LN_2PI;
    let remainder = stirling_remainder(n) - stirling_remainder(k) - stirling_remainder(rest);
    Ok(entropy + prefactor + remainder)
}
