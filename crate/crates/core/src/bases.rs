//! Measurement-basis sets and their complementarity structure.
//!
//! Settings and outcomes are indexed from zero throughout. For a set of `N`
//! bases the overlap parameter `C_xy = max_{a,b} |<φ_x^a|φ_y^b>|` is
//! collected into an `N×N` matrix, and `C_i` is the maximum of `C_xy` along
//! the `i`-th wrap-around diagonal `y = (x − i) mod N`, `i = 1..N−1`.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::numerics::{
    operator_norm, orthonormalize, unitary_exp, validate_density, CMatrix, CVector, DENSITY_TOL,
};

/// Orthonormality tolerance for internally constructed basis sets.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// Orthonormality tolerance for basis sets read from files.
pub const ORTHONORMAL_TOL_EXTERNAL: f64 = 1e-8;

/// `N` orthonormal bases of `C^d`; `vectors[x][a]` is `|φ_x^a>`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    dim: usize,
    vectors: Vec<Vec<CVector>>,
}

impl BasisSet {
    /// Validates orthonormality of every setting to [`ORTHONORMAL_TOL`].
    pub fn new(vectors: Vec<Vec<CVector>>) -> Result<Self> {
        Self::with_tolerance(vectors, ORTHONORMAL_TOL)
    }

    /// Validates orthonormality to `tol`. The first violation is reported as
    /// [`Error::NotOrthonormal`] with its `(x, a, b)` indices.
    pub fn with_tolerance(vectors: Vec<Vec<CVector>>, tol: f64) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(invalid!("a basis set needs at least one setting"));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(invalid!("bases must have at least one outcome"));
        }
        for (x, basis) in vectors.iter().enumerate() {
            if basis.len() != dim {
                return Err(Error::DimensionMismatch(alloc::format!(
                    "setting {x} has {} vectors, expected {dim}",
                    basis.len()
                )));
            }
            if let Some(a) = basis.iter().position(|v| v.dim() != dim) {
                return Err(Error::DimensionMismatch(alloc::format!(
                    "vector (x={x}, a={a}) has {} components, expected {dim}",
                    basis[a].dim()
                )));
            }
            for a in 0..dim {
                for b in a..dim {
                    let target = if a == b { 1.0 } else { 0.0 };
                    let deviation =
                        (basis[a].inner(&basis[b]) - Complex64::new(target, 0.0)).norm();
                    if !(deviation <= tol) {
                        return Err(Error::NotOrthonormal {
                            setting: x,
                            a,
                            b,
                            deviation,
                        });
                    }
                }
            }
        }
        Ok(Self { dim, vectors })
    }

    /// Number of outcomes `d` per setting.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of settings `N`.
    pub fn settings(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, x: usize, a: usize) -> &CVector {
        &self.vectors[x][a]
    }

    pub fn basis(&self, x: usize) -> &[CVector] {
        &self.vectors[x]
    }

    pub fn vectors(&self) -> &[Vec<CVector>] {
        &self.vectors
    }

    /// Elementwise complex conjugate of every vector.
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            vectors: self
                .vectors
                .iter()
                .map(|basis| basis.iter().map(CVector::conj).collect())
                .collect(),
        }
    }

    /// The `d×d` block `O_xy` with entries `<φ_x^a|φ_y^b>`.
    pub fn overlap_block(&self, x: usize, y: usize) -> CMatrix {
        CMatrix::from_fn(self.dim, self.dim, |a, b| {
            self.vectors[x][a].inner(&self.vectors[y][b])
        })
    }

    /// `C_xy = max_{a,b} |<φ_x^a|φ_y^b>|`.
    pub fn max_overlap(&self, x: usize, y: usize) -> f64 {
        let mut best = 0.0_f64;
        for u in &self.vectors[x] {
            for v in &self.vectors[y] {
                best = best.max(u.inner(v).norm());
            }
        }
        best
    }
}

/// The partner setting `y = (x − i) mod N` on the `i`-th wrap-around diagonal.
pub fn diagonal_partner(x: usize, i: usize, n: usize) -> usize {
    (x + n - i % n) % n
}

/// Overlap structure of a [`BasisSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapSummary {
    /// `c_matrix[x][y] = C_xy`.
    pub c_matrix: Vec<Vec<f64>>,
    /// `c_diag[i − 1] = C_i` for `i = 1..N−1`.
    pub c_diag: Vec<f64>,
    /// `C = max_{x≠y} C_xy`; absent for a single setting.
    pub c_max: Option<f64>,
}

impl OverlapSummary {
    pub fn settings(&self) -> usize {
        self.c_matrix.len()
    }
}

pub fn overlap_summary(b: &BasisSet) -> OverlapSummary {
    let n = b.settings();
    let mut c_matrix = alloc::vec![alloc::vec![1.0; n]; n];
    for x in 0..n {
        for y in x + 1..n {
            let c = b.max_overlap(x, y);
            c_matrix[x][y] = c;
            c_matrix[y][x] = c;
        }
    }
    let c_diag: Vec<f64> = (1..n)
        .map(|i| {
            (0..n)
                .map(|x| c_matrix[x][diagonal_partner(x, i, n)])
                .fold(0.0, f64::max)
        })
        .collect();
    let c_max = c_diag.iter().copied().reduce(f64::max);
    OverlapSummary {
        c_matrix,
        c_diag,
        c_max,
    }
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// The complete set of `d + 1` mutually unbiased bases for prime `d`.
///
/// Setting 0 is the computational basis. For odd `d` setting `k + 1` has
/// vectors `ψ_j[n] = ω^(k n² + j n) / √d` with `ω = e^(2πi/d)`; for `d = 2`
/// the quadratic phase degenerates, so `ψ_j[n] = i^(k n) (−1)^(j n) / √2`.
pub fn generate_mub_prime(d: usize) -> Result<BasisSet> {
    if !is_prime(d) {
        return Err(Error::UnsupportedDimension { dim: d });
    }
    let norm = 1.0 / libm::sqrt(d as f64);
    let mut vectors = Vec::with_capacity(d + 1);
    vectors.push((0..d).map(|a| CVector::basis(d, a)).collect());
    for k in 0..d {
        let basis = (0..d)
            .map(|j| {
                let entries = (0..d)
                    .map(|n| {
                        let angle = if d == 2 {
                            // i^(kn)·(−1)^(jn): quarter turns
                            core::f64::consts::FRAC_PI_2 * ((k * n + 2 * j * n) % 4) as f64
                        } else {
                            2.0 * core::f64::consts::PI * ((k * n * n + j * n) % d) as f64
                                / d as f64
                        };
                        Complex64::new(norm * libm::cos(angle), norm * libm::sin(angle))
                    })
                    .collect();
                CVector::new(entries).expect("finite entries")
            })
            .collect();
        vectors.push(basis);
    }
    BasisSet::new(vectors)
}

fn random_hermitian(rng: &mut impl Rng, d: usize) -> CMatrix {
    let m = CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    (&m + &m.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// Rotates every basis by its own unitary `exp(i·delta·H_x)`, with `H_x` a
/// seeded random Hermitian matrix of unit operator norm, then
/// re-orthonormalizes against round-off. Deterministic for a fixed seed.
pub fn perturb_bases(b: &BasisSet, delta: f64, seed: u64) -> Result<BasisSet> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(invalid!("perturbation strength {delta} must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = b.dim();
    let mut vectors = Vec::with_capacity(b.settings());
    for basis in b.vectors() {
        let h = random_hermitian(&mut rng, d);
        let norm = operator_norm(&h)?;
        let h = if norm > 0.0 {
            h.scale(Complex64::new(1.0 / norm, 0.0))
        } else {
            h
        };
        let u = unitary_exp(&h, delta)?;
        let mut rotated = basis
            .iter()
            .map(|v| u.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        orthonormalize(&mut rotated)?;
        vectors.push(rotated);
    }
    BasisSet::new(vectors)
}

/// `settings` independent random orthonormal bases of `C^dim`, each from
/// Gram–Schmidt on a matrix with uniform complex entries.
pub fn random_basis_set(dim: usize, settings: usize, rng: &mut impl Rng) -> Result<BasisSet> {
    if dim == 0 || settings == 0 {
        return Err(invalid!(
            "random basis set needs dim >= 1 and settings >= 1"
        ));
    }
    let mut vectors = Vec::with_capacity(settings);
    for _ in 0..settings {
        let mut basis: Vec<CVector> = (0..dim)
            .map(|_| {
                CVector::new(
                    (0..dim)
                        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect(),
                )
                .expect("finite entries")
            })
            .collect();
        orthonormalize(&mut basis)?;
        vectors.push(basis);
    }
    BasisSet::new(vectors)
}

/// Bases `x = 0..settings` given by the columns of `F^x`, with `F` the
/// discrete Fourier transform on `C^dim`. Overlap blocks depend only on
/// `y − x`, so the set is block Toeplitz.
pub fn fourier_power_family(dim: usize, settings: usize) -> Result<BasisSet> {
    if dim == 0 || settings == 0 {
        return Err(invalid!("Fourier family needs dim >= 1 and settings >= 1"));
    }
    let norm = 1.0 / libm::sqrt(dim as f64);
    let f = CMatrix::from_fn(dim, dim, |j, k| {
        let angle = 2.0 * core::f64::consts::PI * ((j * k) % dim) as f64 / dim as f64;
        Complex64::new(norm * libm::cos(angle), norm * libm::sin(angle))
    });
    let mut power = CMatrix::identity(dim);
    let mut vectors = Vec::with_capacity(settings);
    for _ in 0..settings {
        let basis = (0..dim)
            .map(|a| CVector::new((0..dim).map(|r| power[(r, a)]).collect()))
            .collect::<Result<Vec<_>>>()?;
        vectors.push(basis);
        power = &f * &power;
    }
    BasisSet::new(vectors)
}

/// Solves `c = √(d^(ε−1))` for ε, i.e. `ε = 1 + 2 ln c / ln d`.
///
/// Accepts `c ∈ [1/√d, 1]` with 1e-9 slack for round-off; the result is
/// clamped to `[0, 1]`.
pub fn epsilon_of_overlap(c: f64, d: usize) -> Result<f64> {
    if d < 2 {
        return Err(invalid!("dimension {d} must be at least 2"));
    }
    let lower = 1.0 / libm::sqrt(d as f64);
    if !(c >= lower - 1e-9 && c <= 1.0 + 1e-9) {
        return Err(invalid!("overlap {c} outside [{lower}, 1] for d = {d}"));
    }
    let eps = 1.0 + 2.0 * libm::log(c) / libm::log(d as f64);
    Ok(eps.clamp(0.0, 1.0))
}

/// Result of the entropic uncertainty check for one pair of bases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyCheck {
    /// `H(x|σ) + H(y|σ)` in nats.
    pub entropy_sum: f64,
    /// `−2 ln C_xy`.
    pub bound: f64,
    pub holds: bool,
}

/// Shannon entropy in nats, with `0·ln 0 = 0`.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * libm::log(p))
        .sum()
}

fn outcome_distribution(b: &BasisSet, x: usize, sigma: &CMatrix) -> Result<Vec<f64>> {
    b.basis(x)
        .iter()
        .map(|v| Ok(sigma.expectation(v)?.re.max(0.0)))
        .collect()
}

/// Evaluates `H({φ_x}|σ) + H({φ_y}|σ) ≥ −2 ln C_xy` for the density matrix
/// `sigma`.
pub fn dmu_check(b: &BasisSet, x: usize, y: usize, sigma: &CMatrix) -> Result<EntropyCheck> {
    let n = b.settings();
    if x >= n || y >= n {
        return Err(invalid!("settings ({x}, {y}) out of range for {n} bases"));
    }
    if x == y {
        return Err(invalid!(
            "the entropic relation needs two distinct settings, got x = y = {x}"
        ));
    }
    if sigma.rows() != b.dim() || sigma.cols() != b.dim() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "state is {}x{}, bases have dimension {}",
            sigma.rows(),
            sigma.cols(),
            b.dim()
        )));
    }
    validate_density(sigma, DENSITY_TOL)?;
    let p = outcome_distribution(b, x, sigma)?;
    let q = outcome_distribution(b, y, sigma)?;
    let entropy_sum = shannon_entropy(&p) + shannon_entropy(&q);
    let bound = -2.0 * libm::log(b.max_overlap(x, y));
    Ok(EntropyCheck {
        entropy_sum,
        bound,
        holds: entropy_sum >= bound - 1e-9,
    })
}
