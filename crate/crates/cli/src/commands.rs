//! Command bodies. Each returns its output text so it can be written to a
//! file, printed, or compared in tests.

use std::f64::consts::PI;

use rayon::ThreadPool;
use steerbound_core::bases::{
    epsilon_of_overlap, generate_mub_prime, overlap_summary, perturb_bases, BasisSet,
};
use steerbound_core::models::{
    multisinglet_violation, optimal_settings_scan, photonic_band, MultiSingletParams,
    PhotonicScanRow,
};
use steerbound_core::steering::SteeringBounds;

use crate::csv::{self, Cell};
use crate::formats::{basis_to_json, bounds_to_json};
use crate::parallel::{lhs_exact_parallel, ordered_map};
use crate::CliError;

pub const MULTISINGLET_HEADER: [&str; 6] = ["k", "eta", "fidelity", "epsilon", "sigma", "v_q_eta"];
pub const PHOTONIC_HEADER: [&str; 6] = ["d", "n_opt", "theta", "v_q", "eta", "v_q_eta"];
pub const PHOTONIC_BAND_HEADER: [&str; 4] = ["d", "n", "theta", "v_q"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsOptions {
    pub exact_lhs: bool,
    pub exact_limit: u64,
    pub toeplitz_tol: f64,
}

/// Bounds report for `b` as JSON.
pub fn run_bounds(
    b: &BasisSet,
    opts: &BoundsOptions,
    pool: &ThreadPool,
) -> Result<String, CliError> {
    if !(opts.toeplitz_tol >= 0.0) {
        return Err(CliError::Input(format!(
            "toeplitz tolerance {} must be nonnegative",
            opts.toeplitz_tol
        )));
    }
    if b.settings() < 2 {
        return Err(CliError::Input(
            "at least two settings are needed for a bound".into(),
        ));
    }
    let exact = if opts.exact_lhs {
        Some(lhs_exact_parallel(pool, b, opts.exact_limit)?)
    } else {
        None
    };
    let bounds = SteeringBounds::evaluate(b, None, opts.toeplitz_tol, exact)?;
    Ok(bounds_to_json(&bounds))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MubOutput {
    pub json: String,
    pub c_max: f64,
    pub epsilon: f64,
}

/// A complete MUB set for prime `dim`, optionally perturbed.
pub fn run_mub(dim: usize, perturb: Option<f64>, seed: u64) -> Result<MubOutput, CliError> {
    let mut b = generate_mub_prime(dim)?;
    if let Some(delta) = perturb {
        b = perturb_bases(&b, delta, seed)?;
    }
    let c_max = overlap_summary(&b)
        .c_max
        .ok_or_else(|| CliError::Internal("basis set has a single setting".into()))?;
    let epsilon = epsilon_of_overlap(c_max, dim)?;
    Ok(MubOutput {
        json: basis_to_json(&b),
        c_max,
        epsilon,
    })
}

/// Keeps points inside a domain, dropping points that sit exactly on an
/// excluded endpoint. Anything else outside the domain is an input error, as
/// is a grid with no points left.
fn restrict(
    name: &str,
    points: Vec<f64>,
    lo: f64,
    hi: f64,
    lo_open: bool,
    hi_open: bool,
) -> Result<Vec<f64>, CliError> {
    let mut kept = Vec::with_capacity(points.len());
    let mut dropped = false;
    for p in points {
        if (lo_open && p == lo) || (hi_open && p == hi) {
            dropped = true;
            continue;
        }
        if p < lo || p > hi {
            let (l, h) = (
                if lo_open { '(' } else { '[' },
                if hi_open { ')' } else { ']' },
            );
            return Err(CliError::Input(format!(
                "{name} = {p} lies outside {l}{lo}, {hi}{h}"
            )));
        }
        kept.push(p);
    }
    if kept.is_empty() {
        let why = if dropped { " (excluded endpoint)" } else { "" };
        return Err(CliError::Input(format!("no admissible {name} values{why}")));
    }
    Ok(kept)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultisingletOptions {
    pub k_max: u32,
    pub eta: Vec<f64>,
    pub fidelity: f64,
    pub epsilon: Vec<f64>,
    pub sigma: f64,
}

/// One row per `(k, eta, epsilon)` in lexicographic order.
pub fn run_multisinglet(opts: &MultisingletOptions, pool: &ThreadPool) -> Result<String, CliError> {
    if opts.k_max == 0 {
        return Err(CliError::Input("k-max must be at least 1".into()));
    }
    let etas = restrict(
        "eta",
        crate::grid::sorted_unique(opts.eta.clone()),
        0.0,
        1.0,
        true,
        false,
    )?;
    let epsilons = restrict(
        "epsilon",
        crate::grid::sorted_unique(opts.epsilon.clone()),
        0.0,
        1.0,
        false,
        true,
    )?;
    let mut points = Vec::with_capacity(opts.k_max as usize * etas.len() * epsilons.len());
    for k in 1..=opts.k_max {
        for &eta in &etas {
            for &epsilon in &epsilons {
                points.push(MultiSingletParams {
                    k,
                    eta,
                    fidelity: opts.fidelity,
                    epsilon,
                    sigma: opts.sigma,
                });
            }
        }
    }
    points[0].validate()?;
    let values = ordered_map(pool, &points, multisinglet_violation);
    let mut rows = Vec::with_capacity(points.len());
    for (p, v) in points.iter().zip(values) {
        rows.push(vec![
            Cell::Int(p.k as u64),
            Cell::Real(p.eta),
            Cell::Real(p.fidelity),
            Cell::Real(p.epsilon),
            Cell::Real(p.sigma),
            Cell::Real(v?),
        ]);
    }
    Ok(csv::render(&MULTISINGLET_HEADER, rows))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhotonicOptions {
    pub d_max: usize,
    pub n_max: usize,
    pub eta: Vec<f64>,
    pub emit_all_n: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhotonicOutput {
    pub rows: Vec<PhotonicScanRow>,
    pub csv: String,
    /// Every scanned `(d, N)` pair when requested.
    pub band_csv: Option<String>,
}

/// Optimal settings count for every `d ≤ d_max` and efficiency, ordered by `(d, eta)`.
pub fn run_photonic(opts: &PhotonicOptions, pool: &ThreadPool) -> Result<PhotonicOutput, CliError> {
    if opts.d_max == 0 {
        return Err(CliError::Input("d-max must be at least 1".into()));
    }
    if opts.n_max < 2 {
        return Err(CliError::Input(format!(
            "n-max must be at least 2, got {}",
            opts.n_max
        )));
    }
    let etas = restrict(
        "eta",
        crate::grid::sorted_unique(opts.eta.clone()),
        0.0,
        1.0,
        true,
        false,
    )?;
    let grid: Vec<(usize, f64)> = (1..=opts.d_max)
        .flat_map(|d| etas.iter().map(move |&eta| (d, eta)))
        .collect();
    let rows = ordered_map(pool, &grid, |&(d, eta)| {
        optimal_settings_scan(d, opts.n_max, eta)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let csv = csv::render(
        &PHOTONIC_HEADER,
        rows.iter().map(|r| {
            vec![
                Cell::Int(r.d as u64),
                Cell::Int(r.n_opt as u64),
                Cell::Real(r.theta),
                Cell::Real(r.v_q),
                Cell::Real(r.eta),
                Cell::Real(r.v_q_eta),
            ]
        }),
    );
    let band_csv = if opts.emit_all_n {
        let ds: Vec<usize> = (1..=opts.d_max).collect();
        let bands = ordered_map(pool, &ds, |&d| photonic_band(d, opts.n_max))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        let lines = ds.iter().zip(&bands).flat_map(|(&d, band)| {
            band.iter().map(move |&(n, v)| {
                vec![
                    Cell::Int(d as u64),
                    Cell::Int(n as u64),
                    Cell::Real(PI / (2 * n) as f64),
                    Cell::Real(v),
                ]
            })
        });
        Some(csv::render(&PHOTONIC_BAND_HEADER, lines))
    } else {
        None
    };
    Ok(PhotonicOutput {
        rows,
        csv,
        band_csv,
    })
}
