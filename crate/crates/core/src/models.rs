//! Experimental models: k copies of a two-qubit singlet with relaxed MUBs,
//! and the 2d-photon polarization singlet measured in rotated Fock bases.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, LN_2, PI};

use crate::error::{invalid, Error, Result};
use crate::numerics::dd::{exact_binomial, DoubleDouble};
use crate::numerics::{ln_factorial, log_binomial};

/// Above this many copies the multi-singlet ratio is evaluated in the log domain.
pub const LOG_DOMAIN_THRESHOLD: u32 = 50;

/// Default upper end of the settings scan.
pub const DEFAULT_N_MAX: usize = 400;

/// Parameters of the k-copy singlet model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiSingletParams {
    /// Number of singlet copies; the local dimension is `2^k`.
    pub k: u32,
    /// Detector efficiency in `(0, 1]`.
    pub eta: f64,
    /// Single-pair fidelity in `(0, 1]`.
    pub fidelity: f64,
    /// MUB relaxation `ε ∈ [0, 1)`.
    pub epsilon: f64,
    /// Settings exponent `σ ∈ [0, 1)`, with `N = 2^(k(1−σ))`.
    pub sigma: f64,
}

fn in_half_open_unit(v: f64) -> bool {
    v > 0.0 && v <= 1.0
}

fn in_unit_from_zero(v: f64) -> bool {
    (0.0..1.0).contains(&v)
}

impl MultiSingletParams {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(invalid!("k must be at least 1"));
        }
        if !in_half_open_unit(self.eta) {
            return Err(invalid!("eta = {} must lie in (0, 1]", self.eta));
        }
        if !in_half_open_unit(self.fidelity) {
            return Err(invalid!("fidelity = {} must lie in (0, 1]", self.fidelity));
        }
        if !in_unit_from_zero(self.epsilon) {
            return Err(invalid!("epsilon = {} must lie in [0, 1)", self.epsilon));
        }
        if !in_unit_from_zero(self.sigma) {
            return Err(invalid!("sigma = {} must lie in [0, 1)", self.sigma));
        }
        Ok(())
    }
}

/// `ln(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + libm::log1p(libm::exp(-z))
    } else {
        libm::log1p(libm::exp(z))
    }
}

/// Natural log of [`multisinglet_violation`]; finite for any `k`.
pub fn multisinglet_log_violation(p: &MultiSingletParams) -> Result<f64> {
    p.validate()?;
    let k = p.k as f64;
    let ln_num = k * ((1.0 - p.sigma) * LN_2 + libm::log(p.eta) + libm::log(p.fidelity));
    // ln(2^k − 1) + (ε − 1)·k·ln2/2
    let ln_tail = k * LN_2 + libm::log1p(-libm::exp2(-k)) + 0.5 * (p.epsilon - 1.0) * k * LN_2;
    Ok(ln_num - softplus(ln_tail))
}

/// `V_Q^η = (2^(1−σ) η F)^k / (1 + (2^k − 1)·2^((ε−1)k/2))`.
pub fn multisinglet_violation(p: &MultiSingletParams) -> Result<f64> {
    p.validate()?;
    if p.k > LOG_DOMAIN_THRESHOLD {
        return Ok(libm::exp(multisinglet_log_violation(p)?));
    }
    let k = p.k as f64;
    let num = libm::pow(libm::exp2(1.0 - p.sigma) * p.eta * p.fidelity, k);
    let den = 1.0 + (libm::exp2(k) - 1.0) * libm::exp2(0.5 * (p.epsilon - 1.0) * k);
    Ok(num / den)
}

/// Whether the violation grows exponentially in `k`: `ε + 2σ < 2 log₂(ηF) + 1`.
///
/// The inequality is strict with a 1e-12 margin, so the boundary `ηF = 1/√2`
/// at `ε = σ = 0` evaluates to `false` despite round-off in `ηF`.
pub fn multisinglet_growth_condition(eta: f64, fidelity: f64, epsilon: f64, sigma: f64) -> bool {
    let lhs = epsilon + 2.0 * sigma;
    let rhs = 2.0 * libm::log2(eta * fidelity) + 1.0;
    rhs - lhs > 1e-12
}

/// Smallest efficiency at which the k-copy model still violates (`V_Q^η = 1`),
/// or `None` when even `η = 1` gives no violation.
pub fn multisinglet_critical_efficiency(
    k: u32,
    fidelity: f64,
    epsilon: f64,
    sigma: f64,
) -> Result<Option<f64>> {
    let lossless = MultiSingletParams {
        k,
        eta: 1.0,
        fidelity,
        epsilon,
        sigma,
    };
    let ln_v = multisinglet_log_violation(&lossless)?;
    if ln_v <= 0.0 {
        return Ok(None);
    }
    // V_Q^η = η^k · V_Q^1
    Ok(Some(libm::exp(-ln_v / k as f64)))
}

fn check_angle(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(invalid!(
            "angle {theta} must lie in the open interval (0, pi/2)"
        ));
    }
    Ok(())
}

/// `<(d−n)_H, n_V | (d−m)_{H+θ}, m_{V+θ}>`, the signed real overlap between
/// the unrotated Fock basis and the basis rotated by `θ`.
///
/// Evaluated as the stride-2 sum over `k` of
/// `(−1)^q binom(d−m, j) binom(m, q) cos^(m+k)θ sin^(d−m−k)θ` with
/// `j = (d−n+k)/2`, `q = (d−n−k)/2`, times `√((d−n)! n! / ((d−m)! m!))`.
/// The sum alternates and its terms can exceed the result by a factor of
/// order `2^(d/2)`, so it is accumulated in double-double arithmetic from
/// exact integer binomials. When the rounding estimate exceeds
/// [`OVERLAP_ABS_TOL`] (around `d > 120` at generic angles) the call fails
/// with [`Error::Precision`] instead of returning a wrong value.
pub fn photonic_overlap(d: usize, n: usize, m: usize, theta: f64) -> Result<f64> {
    if n > d || m > d {
        return Err(invalid!(
            "photon numbers (n={n}, m={m}) must not exceed d={d}"
        ));
    }
    if !(0.0..FRAC_PI_2).contains(&theta) {
        return Err(invalid!("angle {theta} must lie in [0, pi/2)"));
    }
    let terms = StrideTerms::new(d, n, m);
    let prefactor = libm::exp(
        0.5 * (ln_factorial((d - n) as u64) + ln_factorial(n as u64)
            - ln_factorial((d - m) as u64)
            - ln_factorial(m as u64)),
    );
    let too_large = || {
        Error::Precision(alloc::format!(
            "overlap for d={d}, n={n}, m={m} exceeds double-double range"
        ))
    };
    let (sum, abs_sum) = stride_sum_extended(&terms, theta).ok_or_else(too_large)?;
    let estimate = prefactor * abs_sum * DD_RELATIVE_ERROR;
    if !(estimate <= OVERLAP_ABS_TOL) {
        return Err(Error::Precision(alloc::format!(
            "overlap for d={d}, n={n}, m={m}, theta={theta} has rounding estimate {estimate:e}"
        )));
    }
    Ok(prefactor * sum)
}

/// Largest accepted rounding estimate for [`photonic_overlap`].
pub const OVERLAP_ABS_TOL: f64 = 1e-13;

/// Per-term relative error of the double-double evaluation, with headroom
/// for the powers and products.
const DD_RELATIVE_ERROR: f64 = 1e-29;

/// Index bookkeeping for the stride-2 sum.
struct StrideTerms {
    d: i64,
    m: i64,
    r: i64,
    k_min: i64,
    k_max: i64,
}

impl StrideTerms {
    fn new(d: usize, n: usize, m: usize) -> Self {
        let (d, m, r) = (d as i64, m as i64, (d - n) as i64);
        Self {
            d,
            m,
            r,
            k_min: (-r).max(r - 2 * m),
            k_max: r.min(2 * (d - m) - r),
        }
    }

    /// `(from_h, from_v, cos_power, sin_power)` for every admissible `k`.
    fn iter(&self) -> impl Iterator<Item = (u64, u64, u32, u32)> + '_ {
        (self.k_min..=self.k_max).step_by(2).map(move |k| {
            (
                ((self.r + k) / 2) as u64,
                ((self.r - k) / 2) as u64,
                (self.m + k) as u32,
                (self.d - self.m - k) as u32,
            )
        })
    }
}

/// Signed sum and sum of magnitudes, or `None` when a weight does not fit
/// in 106 bits.
fn stride_sum_extended(terms: &StrideTerms, theta: f64) -> Option<(f64, f64)> {
    let (cos, sin) = (
        DoubleDouble::from_f64(libm::cos(theta)),
        DoubleDouble::from_f64(libm::sin(theta)),
    );
    let (rest_h, rest_v) = ((terms.d - terms.m) as u64, terms.m as u64);
    let mut total = DoubleDouble::ZERO;
    let mut magnitude = 0.0;
    for (from_h, from_v, cos_power, sin_power) in terms.iter() {
        let weight =
            exact_binomial(rest_h, from_h)?.checked_mul(exact_binomial(rest_v, from_v)?)?;
        if weight >= 1u128 << 106 {
            return None;
        }
        let term = DoubleDouble::from_u128(weight) * cos.powi(cos_power) * sin.powi(sin_power);
        magnitude += term.to_f64();
        total = total + if from_v % 2 == 0 { term } else { -term };
    }
    Some((total.to_f64(), magnitude))
}

/// `q_{θ,d} = ⌊d sin²θ − cos²θ⌋ + 1`, clamped to `[0, d]`.
///
/// Arguments within 1e-9 of an integer are snapped to it before flooring.
pub fn photonic_q(theta: f64, d: usize) -> usize {
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    let x = d as f64 * s * s - c * c;
    let nearest = libm::round(x);
    let x = if (x - nearest).abs() < 1e-9 {
        nearest
    } else {
        x
    };
    let q = libm::floor(x) + 1.0;
    q.clamp(0.0, d as f64) as usize
}

fn ln_boundary_overlap(theta: f64, d: usize, q: usize) -> f64 {
    0.5 * log_binomial(d as u64, q as u64).expect("q <= d")
        + d as f64 * libm::log(libm::cos(theta))
        + q as f64 * libm::log(libm::tan(theta))
}

/// Largest overlap `C(θ, d) = √binom(d, q)·cos^d θ·tan^q θ` between the
/// unrotated and rotated Fock bases.
///
/// The floor in `q` is discontinuous, so the neighbours `q ± 1` are also
/// evaluated and the largest value is returned.
pub fn photonic_c(theta: f64, d: usize) -> Result<f64> {
    check_angle(theta)?;
    let q = photonic_q(theta, d);
    let best = [q.checked_sub(1), Some(q), Some(q + 1)]
        .into_iter()
        .flatten()
        .filter(|&c| c <= d)
        .map(|c| ln_boundary_overlap(theta, d, c))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(libm::exp(best))
}

/// Large-d approximation `1 / (∜(πd/2)·√sin 2θ)`.
pub fn photonic_asymptotic_c(theta: f64, d: usize) -> Result<f64> {
    check_angle(theta)?;
    if d == 0 {
        return Err(invalid!("d must be at least 1"));
    }
    Ok(1.0 / (libm::pow(PI * d as f64 / 2.0, 0.25) * libm::sqrt(libm::sin(2.0 * theta))))
}

/// `p[m][n] = |<φ^n(0)|φ^m(θ)>|²`.
pub fn photonic_distribution(d: usize, theta: f64) -> Result<Vec<Vec<f64>>> {
    (0..=d)
        .map(|m| {
            (0..=d)
                .map(|n| photonic_overlap(d, n, m, theta).map(|o| o * o))
                .collect()
        })
        .collect()
}

/// Violation ratio `N / (1 + (N − 1)·C(π/(2N), d))` for `N` equally spaced
/// polarization settings.
pub fn photonic_violation(d: usize, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(invalid!("need at least 2 settings, got {n}"));
    }
    let theta = PI / (2 * n) as f64;
    let c = photonic_c(theta, d)?;
    Ok(n as f64 / (1.0 + (n - 1) as f64 * c))
}

/// `(N, V_Q(N))` for every `N` in `2..=n_max`.
pub fn photonic_band(d: usize, n_max: usize) -> Result<Vec<(usize, f64)>> {
    if n_max < 2 {
        return Err(invalid!("n_max must be at least 2, got {n_max}"));
    }
    (2..=n_max)
        .map(|n| photonic_violation(d, n).map(|v| (n, v)))
        .collect()
}

/// One row of the optimal-settings scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonicScanRow {
    pub d: usize,
    pub n_opt: usize,
    /// `π / (2·n_opt)` radians.
    pub theta: f64,
    pub v_q: f64,
    pub eta: f64,
    /// `η^d · v_q`.
    pub v_q_eta: f64,
}

/// Scans `N = 2..=n_max` at angle spacing `π/(2N)` and keeps the best ratio
/// (smallest `N` on ties); losses scale the quantum value by `η^d`.
pub fn optimal_settings_scan(d: usize, n_max: usize, eta: f64) -> Result<PhotonicScanRow> {
    if d == 0 {
        return Err(invalid!("d must be at least 1"));
    }
    if !in_half_open_unit(eta) {
        return Err(invalid!("eta = {eta} must lie in (0, 1]"));
    }
    let mut best = (0usize, f64::NEG_INFINITY);
    for (n, v) in photonic_band(d, n_max)? {
        if v > best.1 {
            best = (n, v);
        }
    }
    let (n_opt, v_q) = best;
    Ok(PhotonicScanRow {
        d,
        n_opt,
        theta: PI / (2 * n_opt) as f64,
        v_q,
        eta,
        v_q_eta: lossy_value(eta, d, v_q),
    })
}

/// `η^d · v`.
pub fn lossy_value(eta: f64, d: usize, v: f64) -> f64 {
    libm::pow(eta, d as f64) * v
}

/// Efficiency at which the optimal photonic violation drops to 1,
/// `V_Q^(−1/d)`, or `None` when the lossless ratio does not exceed 1.
pub fn photonic_critical_efficiency(d: usize, n_max: usize) -> Result<Option<f64>> {
    let row = optimal_settings_scan(d, n_max, 1.0)?;
    if row.v_q <= 1.0 {
        return Ok(None);
    }
    Ok(Some(libm::pow(row.v_q, -1.0 / d as f64)))
}

/// `points` evenly spaced angles from 0.01 to π/2 − 0.01 inclusive.
pub fn theta_grid(points: usize) -> Vec<f64> {
    let (lo, hi) = (0.01, FRAC_PI_2 - 0.01);
    match points {
        0 => Vec::new(),
        1 => alloc::vec![0.5 * (lo + hi)],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}
