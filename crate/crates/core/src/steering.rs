//! The steering functional, local-hidden-state (LHS) bounds and violation ratios.
//!
//! For Bob's bases `{φ_x^a}` the LHS value of the steering functional is
//! bounded by `1 + Σ_i C_i` ([`bound_theorem`]), by the weaker
//! `1 + (N − 1)·C` ([`bound_weak`]) and, when the overlap blocks are block
//! Toeplitz, by [`bound_toeplitz`]. [`lhs_exact`] computes the LHS value
//! itself by enumerating deterministic strategies, which is feasible for
//! small `d^N` and serves as the reference all bounds must dominate.

use alloc::vec::Vec;
use core::ops::Range;

use num_complex::Complex64;

use crate::bases::{overlap_summary, BasisSet, OverlapSummary};
use crate::error::{invalid, Error, Result};
use crate::numerics::{kron, max_eigenvalue_hermitian, validate_density, CMatrix, DENSITY_TOL};

/// Default cap on the number of enumerated deterministic strategies.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1_000_000;

/// Default elementwise tolerance for the block-Toeplitz test.
pub const DEFAULT_TOEPLITZ_TOL: f64 = 1e-9;

/// Bob's conditional states `σ_x^a = Tr_A[(|φ_x^a><φ_x^a| ⊗ I) ρ]`, indexed
/// `[x][a]`.
pub fn conditional_states(rho: &CMatrix, alice_bases: &BasisSet) -> Result<Vec<Vec<CMatrix>>> {
    let dim_a = alice_bases.dim();
    if !rho.is_square() || !rho.rows().is_multiple_of(dim_a) {
        return Err(Error::DimensionMismatch(alloc::format!(
            "state is {}x{}, not divisible by Alice's dimension {dim_a}",
            rho.rows(),
            rho.cols()
        )));
    }
    validate_density(rho, DENSITY_TOL)?;
    let dim_b = rho.rows() / dim_a;
    let id_b = CMatrix::identity(dim_b);
    alice_bases
        .vectors()
        .iter()
        .map(|basis| {
            basis
                .iter()
                .map(|phi| {
                    let lifted = kron(&CMatrix::projector(phi), &id_b);
                    (&lifted * rho).partial_trace_first(dim_a, dim_b)
                })
                .collect()
        })
        .collect()
}

/// `Σ_x Σ_a Tr{|φ_x^a><φ_x^a| σ_x^a}` for a concrete state, without the
/// supremum over states.
pub fn steering_value(rho: &CMatrix, alice_bases: &BasisSet, bob_bases: &BasisSet) -> Result<f64> {
    if alice_bases.settings() != bob_bases.settings() {
        return Err(invalid!(
            "Alice has {} settings but Bob has {}",
            alice_bases.settings(),
            bob_bases.settings()
        ));
    }
    if rho.rows() != alice_bases.dim() * bob_bases.dim() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "state dimension {} != {} x {}",
            rho.rows(),
            alice_bases.dim(),
            bob_bases.dim()
        )));
    }
    let sigma = conditional_states(rho, alice_bases)?;
    let mut total = 0.0;
    for (x, states) in sigma.iter().enumerate() {
        for (a, s) in states.iter().enumerate() {
            total += s.expectation(bob_bases.vector(x, a))?.re;
        }
    }
    Ok(total)
}

/// Density matrix of `(1/√d) Σ_i |ii>`.
pub fn max_entangled_state(d: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(invalid!("maximally entangled state needs d >= 2, got {d}"));
    }
    let w = Complex64::new(1.0 / d as f64, 0.0);
    Ok(CMatrix::from_fn(d * d, d * d, |r, c| {
        if r % (d + 1) == 0 && c % (d + 1) == 0 {
            w
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// `1 + Σ_{i=1}^{N−1} C_i`.
pub fn bound_theorem(o: &OverlapSummary) -> f64 {
    1.0 + o.c_diag.iter().sum::<f64>()
}

/// `1 + (N − 1)·C`; needs at least two settings.
pub fn bound_weak(o: &OverlapSummary) -> Result<f64> {
    let c = o
        .c_max
        .ok_or_else(|| invalid!("the weak bound needs at least two settings"))?;
    Ok(1.0 + (o.settings() - 1) as f64 * c)
}

/// Where the block-Toeplitz structure `O_{x,y} = O_{x+1,y+1}` fails worst.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToeplitzViolation {
    pub x: usize,
    pub y: usize,
    pub deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ToeplitzOutcome {
    Holds(f64),
    NotToeplitz(ToeplitzViolation),
}

impl ToeplitzOutcome {
    pub fn bound(&self) -> Option<f64> {
        match self {
            Self::Holds(b) => Some(*b),
            Self::NotToeplitz(_) => None,
        }
    }
}

/// Largest elementwise deviation from `O_{x,y} = O_{x+1,y+1}`, if any pair
/// deviates at all.
pub fn toeplitz_defect(b: &BasisSet) -> Option<ToeplitzViolation> {
    let n = b.settings();
    let mut worst: Option<ToeplitzViolation> = None;
    for x in 0..n.saturating_sub(1) {
        for y in 0..n - 1 {
            let deviation = b
                .overlap_block(x, y)
                .max_abs_diff(&b.overlap_block(x + 1, y + 1));
            if worst.is_none_or(|w| deviation > w.deviation) {
                worst = Some(ToeplitzViolation { x, y, deviation });
            }
        }
    }
    worst
}

/// `1 + (⌈N′⌉ − ⌊N′⌋)·C_{⌊N′⌋+1} + 2 Σ_{i=1}^{⌊N′⌋} C_i` with `N′ = (N − 1)/2`.
pub fn toeplitz_bound_value(o: &OverlapSummary) -> f64 {
    let n = o.settings();
    let half = (n - 1) / 2;
    let doubled: f64 = 2.0 * o.c_diag[..half].iter().sum::<f64>();
    // the middle diagonal only exists for even N
    let middle = if (n - 1) % 2 == 1 {
        o.c_diag[half]
    } else {
        0.0
    };
    1.0 + middle + doubled
}

/// The sharper bound for block-Toeplitz overlap structure, or the worst
/// violating block when the structure does not hold within `tol`.
pub fn bound_toeplitz(b: &BasisSet, tol: f64) -> ToeplitzOutcome {
    match toeplitz_defect(b) {
        Some(v) if !(v.deviation <= tol) => ToeplitzOutcome::NotToeplitz(v),
        _ => ToeplitzOutcome::Holds(toeplitz_bound_value(&overlap_summary(b))),
    }
}

/// Number of deterministic strategies `d^N`, or a capacity error beyond `limit`.
pub fn strategy_count(b: &BasisSet, limit: u64) -> Result<u64> {
    let capacity = || Error::Capacity {
        dim: b.dim(),
        settings: b.settings(),
        limit,
    };
    let exp = u32::try_from(b.settings()).map_err(|_| capacity())?;
    match (b.dim() as u64).checked_pow(exp) {
        Some(count) if count <= limit => Ok(count),
        _ => Err(capacity()),
    }
}

/// Outcome assignment `a(x)` encoded by `index` in base `d`.
pub fn decode_strategy(index: u64, dim: usize, settings: usize) -> Vec<usize> {
    let d = dim as u64;
    let mut rest = index;
    (0..settings)
        .map(|_| {
            let a = (rest % d) as usize;
            rest /= d;
            a
        })
        .collect()
}

/// Top eigenvalue of `Σ_x |φ_x^{a(x)}><φ_x^{a(x)}|` for one strategy.
pub fn strategy_value(b: &BasisSet, assignment: &[usize]) -> f64 {
    let d = b.dim();
    let mut sum = CMatrix::zeros(d, d);
    for (x, &a) in assignment.iter().enumerate() {
        sum = &sum + &CMatrix::projector(b.vector(x, a));
    }
    max_eigenvalue_hermitian(&sum).expect("projector sums are Hermitian")
}

/// Best strategy value over a sub-range of strategy indices. Partitioning
/// `0..d^N` and taking the max of the parts gives exactly [`lhs_exact`].
pub fn lhs_max_over(b: &BasisSet, range: Range<u64>) -> f64 {
    range
        .map(|i| strategy_value(b, &decode_strategy(i, b.dim(), b.settings())))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Exact LHS value: the maximum over all `d^N` deterministic response
/// functions of the top eigenvalue of the selected projector sum.
pub fn lhs_exact(b: &BasisSet, limit: u64) -> Result<f64> {
    let count = strategy_count(b, limit)?;
    Ok(lhs_max_over(b, 0..count))
}

/// Probability tables `p(a|x)` must be within this of normalized.
pub const PROB_SUM_TOL: f64 = 1e-12;

/// `G[(x,a),(y,b)] = √(p(a|x) p(b|y)) <φ_x^a|φ_y^b>`, rows indexed `x·d + a`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: CMatrix,
    probs: Vec<Vec<f64>>,
}

impl GramMatrix {
    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn probs(&self) -> &[Vec<f64>] {
        &self.probs
    }

    pub fn operator_norm(&self) -> f64 {
        crate::numerics::operator_norm(&self.entries).expect("finite Gram matrix")
    }
}

pub fn gram_matrix(bob_bases: &BasisSet, probs: &[Vec<f64>]) -> Result<GramMatrix> {
    let (n, d) = (bob_bases.settings(), bob_bases.dim());
    if probs.len() != n {
        return Err(invalid!(
            "probability table has {} settings, expected {n}",
            probs.len()
        ));
    }
    for (x, row) in probs.iter().enumerate() {
        if row.len() != d {
            return Err(invalid!(
                "p(.|{x}) has {} outcomes, expected {d}",
                row.len()
            ));
        }
        if let Some(a) = row.iter().position(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(invalid!("p({a}|{x}) = {} is not a probability", row[a]));
        }
        let total: f64 = row.iter().sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(invalid!("p(.|{x}) sums to {total}, expected 1"));
        }
    }
    let amp: Vec<Vec<f64>> = probs
        .iter()
        .map(|row| row.iter().map(|&p| libm::sqrt(p)).collect())
        .collect();
    let entries = CMatrix::from_fn(n * d, n * d, |r, c| {
        let (x, a) = (r / d, r % d);
        let (y, b) = (c / d, c % d);
        bob_bases.vector(x, a).inner(bob_bases.vector(y, b)) * (amp[x][a] * amp[y][b])
    });
    Ok(GramMatrix {
        entries,
        probs: probs.to_vec(),
    })
}

/// `s_q / bound`.
pub fn violation_ratio(s_q: f64, bound: f64) -> Result<f64> {
    if !(bound > 0.0 && bound.is_finite()) {
        return Err(invalid!("bound must be positive and finite, got {bound}"));
    }
    if !s_q.is_finite() {
        return Err(invalid!("quantum value must be finite, got {s_q}"));
    }
    Ok(s_q / bound)
}

/// Quantum value, LHS bounds and violation ratios for one set of bases.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringBounds {
    pub n_settings: usize,
    /// Quantum value for a supplied state, otherwise the maximum `N`.
    pub s_q: f64,
    pub bound_theorem: f64,
    pub bound_weak: f64,
    pub bound_toeplitz: Option<f64>,
    pub lhs_exact: Option<f64>,
    pub v_q_theorem: f64,
    pub v_q_weak: f64,
}

impl SteeringBounds {
    /// Assembles the bounds for `bob_bases`. `s_q` defaults to `N`;
    /// `lhs_exact` is passed in so callers can compute it however they like
    /// (sequentially via [`lhs_exact`] or partitioned across workers).
    pub fn evaluate(
        bob_bases: &BasisSet,
        s_q: Option<f64>,
        toeplitz_tol: f64,
        lhs_exact: Option<f64>,
    ) -> Result<Self> {
        let n = bob_bases.settings();
        let o = overlap_summary(bob_bases);
        let bound_theorem = bound_theorem(&o);
        let bound_weak = bound_weak(&o)?;
        let s_q = s_q.unwrap_or(n as f64);
        Ok(Self {
            n_settings: n,
            s_q,
            bound_theorem,
            bound_weak,
            bound_toeplitz: bound_toeplitz(bob_bases, toeplitz_tol).bound(),
            lhs_exact,
            v_q_theorem: violation_ratio(s_q, bound_theorem)?,
            v_q_weak: violation_ratio(s_q, bound_weak)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{fourier_power_family, generate_mub_prime, random_basis_set};
    use crate::numerics::{operator_norm, CVector};
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SQRT1_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn comp_hadamard() -> BasisSet {
        let plus = CVector::new(vec![c(SQRT1_2, 0.0), c(SQRT1_2, 0.0)]).unwrap();
        let minus = CVector::new(vec![c(SQRT1_2, 0.0), c(-SQRT1_2, 0.0)]).unwrap();
        BasisSet::new(vec![
            vec![CVector::basis(2, 0), CVector::basis(2, 1)],
            vec![plus, minus],
        ])
        .unwrap()
    }

    fn random_density(rng: &mut impl Rng, n: usize) -> CMatrix {
        let a = CMatrix::from_fn(n, n, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let p = &a * &a.adjoint();
        let tr = p.trace().re;
        p.scale(c(1.0 / tr, 0.0))
    }

    /// σ_x^a[j,l] = Σ_{i,k} φ_i conj(φ_k) ρ[(k,j),(i,l)], straight from the indices.
    fn conditional_state_oracle(rho: &CMatrix, phi: &CVector, da: usize, db: usize) -> CMatrix {
        CMatrix::from_fn(db, db, |j, l| {
            let mut acc = c(0.0, 0.0);
            for i in 0..da {
                for k in 0..da {
                    acc += phi[i] * phi[k].conj() * rho[(k * db + j, i * db + l)];
                }
            }
            acc
        })
    }

    #[test]
    fn product_state_factorizes() {
        let sa = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => c(0.6, 0.0),
            (1, 1) => c(0.4, 0.0),
            (0, 1) => c(0.2, 0.1),
            _ => c(0.2, -0.1),
        });
        let sb = CMatrix::from_real_diagonal(&[0.25, 0.75]);
        let rho = sa.kron(&sb);
        let bases = comp_hadamard();
        let states = conditional_states(&rho, &bases).unwrap();
        for x in 0..2 {
            for a in 0..2 {
                let w = sa.expectation(bases.vector(x, a)).unwrap();
                assert!(states[x][a].max_abs_diff(&sb.scale(w)) < 1e-15);
            }
        }
    }

    #[test]
    fn maximally_entangled_marginals() {
        for d in [2usize, 3] {
            let rho = max_entangled_state(d).unwrap();
            let bases = generate_mub_prime(d).unwrap();
            let states = conditional_states(&rho, &bases).unwrap();
            let target = CMatrix::identity(d).scale(c(1.0 / d as f64, 0.0));
            for row in &states {
                let sum = row.iter().skip(1).fold(row[0].clone(), |acc, s| &acc + s);
                assert!(sum.max_abs_diff(&target) < 1e-14);
            }
        }
    }

    #[test]
    fn conditional_states_match_index_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let rho = random_density(&mut rng, 4);
        let bases = random_basis_set(2, 3, &mut rng).unwrap();
        let states = conditional_states(&rho, &bases).unwrap();
        for x in 0..3 {
            let mut total = 0.0;
            for a in 0..2 {
                let oracle = conditional_state_oracle(&rho, bases.vector(x, a), 2, 2);
                assert!(states[x][a].max_abs_diff(&oracle) < 1e-12);
                assert!(crate::numerics::min_eigenvalue_hermitian(&states[x][a]).unwrap() > -1e-12);
                total += states[x][a].trace().re;
            }
            assert!((total - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn conditional_states_reject_bad_inputs() {
        let bases = comp_hadamard();
        assert!(matches!(
            conditional_states(&CMatrix::identity(3), &bases),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(conditional_states(&CMatrix::identity(4), &bases).is_err());
    }

    #[test]
    fn perfect_match_reaches_n() {
        for d in [2usize, 3] {
            let rho = max_entangled_state(d).unwrap();
            let bob = generate_mub_prime(d).unwrap();
            let v = steering_value(&rho, &bob.conj(), &bob).unwrap();
            assert!((v - (d + 1) as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn product_state_value_is_one_and_a_half() {
        let rho = CMatrix::projector(&CVector::basis(4, 0));
        let b = comp_hadamard();
        let v = steering_value(&rho, &b, &b).unwrap();
        assert!((v - 1.5).abs() < 1e-15);
    }

    #[test]
    fn steering_value_never_exceeds_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let rho = random_density(&mut rng, 9);
            let alice = random_basis_set(3, 3, &mut rng).unwrap();
            let bob = random_basis_set(3, 3, &mut rng).unwrap();
            let v = steering_value(&rho, &alice, &bob).unwrap();
            assert!((0.0..=3.0 + 1e-9).contains(&v));
        }
    }

    #[test]
    fn setting_count_mismatch() {
        let rho = max_entangled_state(2).unwrap();
        let a = generate_mub_prime(2).unwrap();
        let b = comp_hadamard();
        assert!(matches!(
            steering_value(&rho, &a, &b),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn max_entangled_state_properties() {
        let bell = max_entangled_state(2).unwrap();
        let nonzero: Vec<_> = bell.as_slice().iter().filter(|z| z.norm() > 0.0).collect();
        assert_eq!(nonzero.len(), 4);
        assert!(nonzero.iter().all(|z| **z == c(0.5, 0.0)));
        for d in 2..=16 {
            let rho = max_entangled_state(d).unwrap();
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            assert!(((&rho * &rho).trace().re - 1.0).abs() < 1e-12);
            let marginal = rho.partial_trace_first(d, d).unwrap();
            assert!(
                marginal.max_abs_diff(&CMatrix::identity(d).scale(c(1.0 / d as f64, 0.0))) < 1e-15
            );
        }
        assert!(max_entangled_state(1).is_err());
    }

    #[test]
    fn theorem_bound_substitutions() {
        let single = overlap_summary(
            &BasisSet::new(vec![vec![CVector::basis(2, 0), CVector::basis(2, 1)]]).unwrap(),
        );
        assert_eq!(bound_theorem(&single), 1.0);
        assert!(bound_weak(&single).is_err());

        let pair = overlap_summary(&comp_hadamard());
        assert!((bound_theorem(&pair) - (1.0 + SQRT1_2)).abs() < 1e-15);
        assert_eq!(bound_weak(&pair).unwrap(), bound_theorem(&pair));

        let mub3 = overlap_summary(&generate_mub_prime(3).unwrap());
        assert!((bound_theorem(&mub3) - 2.732_050_81).abs() < 1e-8);

        let mub2 = overlap_summary(&generate_mub_prime(2).unwrap());
        assert!((bound_weak(&mub2).unwrap() - 2.414_213_56).abs() < 1e-8);
    }

    #[test]
    fn toeplitz_substitutions() {
        let id = vec![CVector::basis(2, 0), CVector::basis(2, 1)];
        let three = BasisSet::new(vec![id.clone(), id.clone(), id]).unwrap();
        assert_eq!(
            bound_toeplitz(&three, DEFAULT_TOEPLITZ_TOL),
            ToeplitzOutcome::Holds(3.0)
        );

        let pair = comp_hadamard();
        let b = bound_toeplitz(&pair, DEFAULT_TOEPLITZ_TOL).bound().unwrap();
        assert!((b - (1.0 + SQRT1_2)).abs() < 1e-15);
        assert_eq!(b, bound_theorem(&overlap_summary(&pair)));
    }

    #[test]
    fn fourier_family_is_toeplitz() {
        let b = fourier_power_family(3, 3).unwrap();
        let t = bound_toeplitz(&b, DEFAULT_TOEPLITZ_TOL)
            .bound()
            .expect("block Toeplitz");
        assert!(t <= bound_theorem(&overlap_summary(&b)) + 1e-12);
    }

    #[test]
    fn random_bases_are_not_toeplitz() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = random_basis_set(3, 3, &mut rng).unwrap();
        match bound_toeplitz(&b, DEFAULT_TOEPLITZ_TOL) {
            ToeplitzOutcome::NotToeplitz(v) => assert!(v.deviation > 1e-3 && v.x < 2 && v.y < 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lhs_exact_small_cases() {
        let one = BasisSet::new(vec![vec![
            CVector::basis(3, 0),
            CVector::basis(3, 1),
            CVector::basis(3, 2),
        ]])
        .unwrap();
        assert!((lhs_exact(&one, DEFAULT_ENUMERATION_LIMIT).unwrap() - 1.0).abs() < 1e-15);

        let id: Vec<CVector> = (0..2).map(|a| CVector::basis(2, a)).collect();
        let same = BasisSet::new(vec![id.clone(), id]).unwrap();
        assert!((lhs_exact(&same, DEFAULT_ENUMERATION_LIMIT).unwrap() - 2.0).abs() < 1e-15);

        let pair = comp_hadamard();
        assert!(
            (lhs_exact(&pair, DEFAULT_ENUMERATION_LIMIT).unwrap() - (1.0 + SQRT1_2)).abs() < 1e-14
        );
    }

    #[test]
    fn lhs_exact_capacity_error() {
        let b = generate_mub_prime(7).unwrap();
        assert_eq!(
            lhs_exact(&b, 1000),
            Err(Error::Capacity {
                dim: 7,
                settings: 8,
                limit: 1000
            })
        );
        assert_eq!(
            strategy_count(&b, DEFAULT_ENUMERATION_LIMIT),
            Err(Error::Capacity {
                dim: 7,
                settings: 8,
                limit: DEFAULT_ENUMERATION_LIMIT
            })
        );
    }

    #[test]
    fn partitioned_enumeration_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let b = random_basis_set(3, 4, &mut rng).unwrap();
        let whole = lhs_exact(&b, DEFAULT_ENUMERATION_LIMIT).unwrap();
        let parts = [0..13u64, 13..40, 40..81]
            .into_iter()
            .map(|r| lhs_max_over(&b, r))
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(whole.to_bits(), parts.to_bits());
    }

    #[test]
    fn gram_uniform_single_setting() {
        let b = BasisSet::new(vec![(0..3).map(|a| CVector::basis(3, a)).collect()]).unwrap();
        let g = gram_matrix(&b, &[vec![1.0 / 3.0; 3]]).unwrap();
        assert_eq!(g.entries().rows(), 3);
        // orthonormal vectors weighted by √(1/3): G = I/3
        assert!((g.operator_norm() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn gram_deterministic_equals_strategy_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let b = random_basis_set(3, 3, &mut rng).unwrap();
        for idx in [0u64, 5, 17, 26] {
            let assignment = decode_strategy(idx, 3, 3);
            let probs: Vec<Vec<f64>> = assignment
                .iter()
                .map(|&a| (0..3).map(|k| if k == a { 1.0 } else { 0.0 }).collect())
                .collect();
            let g = gram_matrix(&b, &probs).unwrap();
            assert!(g.entries().is_hermitian(1e-12));
            assert!((g.operator_norm() - strategy_value(&b, &assignment)).abs() < 1e-12);
        }
    }

    #[test]
    fn gram_rejects_bad_tables() {
        let b = comp_hadamard();
        assert!(gram_matrix(&b, &[vec![0.5, 0.5]]).is_err());
        assert!(gram_matrix(&b, &[vec![0.5, 0.5], vec![1.2, -0.2]]).is_err());
        assert!(gram_matrix(&b, &[vec![0.5, 0.5], vec![0.5, 0.6]]).is_err());
        assert!(gram_matrix(&b, &[vec![0.5, 0.5], vec![0.5]]).is_err());
    }

    #[test]
    fn gram_norm_below_theorem_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..30 {
            let d = rng.gen_range(2..=3);
            let n = rng.gen_range(1..=3);
            let b = random_basis_set(d, n, &mut rng).unwrap();
            let probs: Vec<Vec<f64>> = (0..n)
                .map(|_| {
                    let w: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
                    let s: f64 = w.iter().sum();
                    w.iter().map(|v| v / s).collect()
                })
                .collect();
            let g = gram_matrix(&b, &probs).unwrap();
            let norm = operator_norm(g.entries()).unwrap();
            assert!(norm <= bound_theorem(&overlap_summary(&b)) + 1e-9);
        }
    }

    #[test]
    fn violation_ratio_cases() {
        assert_eq!(violation_ratio(3.0, 3.0).unwrap(), 1.0);
        let weak = bound_weak(&overlap_summary(&generate_mub_prime(2).unwrap())).unwrap();
        assert!((violation_ratio(3.0, weak).unwrap() - 1.242_640_69).abs() < 1e-8);
        assert!(violation_ratio(1.0, 0.0).is_err());
        assert!(violation_ratio(1.0, -2.0).is_err());
        // with the full MUB set the ratio is (d+1)/(1+√d), which stays below √d
        // (within 20%); N/(1+(N−1)C) only reaches 1/C = √d as N grows
        for d in [2usize, 3, 5, 7] {
            let weak = bound_weak(&overlap_summary(&generate_mub_prime(d).unwrap())).unwrap();
            let v = violation_ratio((d + 1) as f64, weak).unwrap();
            let df = d as f64;
            assert!((v - (df + 1.0) / (1.0 + df.sqrt())).abs() < 1e-12);
            let fraction = v / df.sqrt();
            assert!(fraction < 1.0 && fraction > 0.8);
            let c = 1.0 / df.sqrt();
            let large_n = 1e9;
            assert!((large_n / (1.0 + (large_n - 1.0) * c) - df.sqrt()).abs() < 1e-6);
        }
    }

    #[test]
    fn bounds_record_for_mub_pair() {
        let b = comp_hadamard();
        let exact = lhs_exact(&b, DEFAULT_ENUMERATION_LIMIT).unwrap();
        let r = SteeringBounds::evaluate(&b, None, DEFAULT_TOEPLITZ_TOL, Some(exact)).unwrap();
        assert_eq!(r.n_settings, 2);
        assert_eq!(r.s_q, 2.0);
        assert!((r.bound_theorem - 1.707_106_78).abs() < 1e-8);
        assert!(r.bound_theorem <= r.bound_weak);
        assert_eq!(r.v_q_theorem, r.s_q / r.bound_theorem);
        assert!(r.lhs_exact.unwrap() <= r.bound_theorem + 1e-9);
    }
}
