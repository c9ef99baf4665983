use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{invalid, Result};

/// Maximum elementwise `|m - m^†|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 80;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose `k`-th column is the eigenvector for `values[k]`.
    pub vectors: CMatrix,
}

/// Cyclic complex Jacobi on the Hermitian part of `m`. Each rotation first
/// removes the phase of the pivot `a_pq` and then applies a real Givens
/// rotation, so the accumulated transform stays unitary.
pub(crate) fn jacobi_hermitian(m: &CMatrix) -> HermitianEigen {
    let n = m.rows();
    let mut a = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    });
    let mut v = CMatrix::identity(n);

    let frob: f64 = libm::sqrt(a.as_slice().iter().map(|z| z.norm_sqr()).sum());
    let stop = 1e-15 * frob;

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if libm::sqrt(2.0 * off) <= stop || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 || g < 1e-300 {
                    continue;
                }
                let phase = (apq / g).conj();
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                let w00 = Complex64::new(c, 0.0);
                let w01 = Complex64::new(s, 0.0);
                let w10 = phase * (-s);
                let w11 = phase * c;
                rotate_columns(&mut a, p, q, [w00, w01, w10, w11]);
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = w00.conj() * apk + w10.conj() * aqk;
                    a[(q, k)] = w01.conj() * apk + w11.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                rotate_columns(&mut v, p, q, [w00, w01, w10, w11]);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}

fn rotate_columns(m: &mut CMatrix, p: usize, q: usize, [w00, w01, w10, w11]: [Complex64; 4]) {
    for k in 0..m.rows() {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * w00 + mkq * w10;
        m[(k, q)] = mkp * w01 + mkq * w11;
    }
}

fn check_hermitian(m: &CMatrix) -> Result<()> {
    m.ensure_finite()?;
    if !m.is_square() {
        return Err(invalid!(
            "matrix is {}x{}, expected square",
            m.rows(),
            m.cols()
        ));
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(invalid!(
            "matrix is not Hermitian: max |m - m^dagger| = {defect:.3e}"
        ));
    }
    Ok(())
}

/// Full eigen-decomposition of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> Result<HermitianEigen> {
    check_hermitian(m)?;
    Ok(jacobi_hermitian(m))
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn max_eigenvalue_hermitian(m: &CMatrix) -> Result<f64> {
    check_hermitian(m)?;
    Ok(*jacobi_hermitian(m).values.last().expect("non-empty matrix"))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue_hermitian(m: &CMatrix) -> Result<f64> {
    check_hermitian(m)?;
    Ok(jacobi_hermitian(m).values[0])
}

/// Largest singular value, from the top eigenvalue of the smaller of
/// `m^† m` and `m m^†`.
pub fn operator_norm(m: &CMatrix) -> Result<f64> {
    m.ensure_finite()?;
    let gram = if m.cols() <= m.rows() {
        &m.adjoint() * m
    } else {
        m * &m.adjoint()
    };
    let top = *jacobi_hermitian(&gram)
        .values
        .last()
        .expect("non-empty matrix");
    Ok(libm::sqrt(top.max(0.0)))
}

/// `exp(i·t·h)` for Hermitian `h`.
pub fn unitary_exp(h: &CMatrix, t: f64) -> Result<CMatrix> {
    let eig = hermitian_eigen(h)?;
    let n = h.rows();
    let phases: Vec<Complex64> = eig
        .values
        .iter()
        .map(|&l| Complex64::new(libm::cos(t * l), libm::sin(t * l)))
        .collect();
    let v = &eig.vectors;
    Ok(CMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| v[(i, k)] * phases[k] * v[(j, k)].conj())
            .sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::CVector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn hermitize(m: &CMatrix) -> CMatrix {
        (m + &m.adjoint()).scale(Complex64::new(0.5, 0.0))
    }

    /// Power iteration on m^† m; independent of the Jacobi path.
    fn power_iteration_norm(m: &CMatrix) -> f64 {
        let g = &m.adjoint() * m;
        let n = g.cols();
        let mut v = CVector::new(
            (0..n)
                .map(|i| Complex64::new(1.0, 0.1 * i as f64))
                .collect(),
        )
        .unwrap();
        let mut lambda = 0.0;
        for _ in 0..20_000 {
            let w = g.mul_vec(&v).unwrap();
            let nw = w.norm();
            let next = v.inner(&w).re;
            v = w.scale(Complex64::new(1.0 / nw, 0.0));
            if (next - lambda).abs() <= 1e-16 * next.abs() {
                lambda = next;
                break;
            }
            lambda = next;
        }
        lambda.sqrt()
    }

    #[test]
    fn identity_norm_is_one() {
        assert!((operator_norm(&CMatrix::identity(2)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rank_one_norm_is_squared_length() {
        let v = CVector::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]).unwrap();
        let m = CMatrix::outer(&v, &v);
        assert!((operator_norm(&m).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn operator_norm_matches_power_iteration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let m = random_matrix(&mut rng, 6, 6);
            let a = operator_norm(&m).unwrap();
            let b = power_iteration_norm(&m);
            assert!((a - b).abs() <= 1e-9 * b, "{a} vs {b}");
        }
    }

    #[test]
    fn diagonal_max_eigenvalue() {
        let m = CMatrix::from_real_diagonal(&[1.0, 3.0, 2.0]);
        assert_eq!(max_eigenvalue_hermitian(&m).unwrap(), 3.0);
        assert_eq!(min_eigenvalue_hermitian(&m).unwrap(), 1.0);
    }

    #[test]
    fn two_projector_sum() {
        let u = CVector::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
        let th: f64 = 0.4;
        let v = CVector::new(vec![
            Complex64::new(th.cos(), 0.0),
            Complex64::new(0.0, th.sin()),
        ])
        .unwrap();
        let m = &CMatrix::projector(&u) + &CMatrix::projector(&v);
        let expect = 1.0 + u.inner(&v).norm();
        assert!((max_eigenvalue_hermitian(&m).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn psd_max_eigenvalue_equals_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let h = hermitize(&random_matrix(&mut rng, 8, 8));
            // shift to PSD so the top eigenvalue is the operator norm
            let shift = operator_norm(&h).unwrap();
            let psd = &h + &CMatrix::identity(8).scale(Complex64::new(shift, 0.0));
            let lmax = max_eigenvalue_hermitian(&psd).unwrap();
            let norm = operator_norm(&psd).unwrap();
            assert!((lmax - norm).abs() <= 1e-9 * norm);
        }
    }

    #[test]
    fn eigen_reconstructs_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = hermitize(&random_matrix(&mut rng, 7, 7));
        let eig = hermitian_eigen(&h).unwrap();
        let d = CMatrix::from_real_diagonal(&eig.values);
        let back = &(&eig.vectors * &d) * &eig.vectors.adjoint();
        assert!(back.max_abs_diff(&h) < 1e-13);
        let vv = &eig.vectors.adjoint() * &eig.vectors;
        assert!(vv.max_abs_diff(&CMatrix::identity(7)) < 1e-13);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_fn(2, 2, |i, j| Complex64::new((i * 2 + j) as f64, 0.0));
        assert!(max_eigenvalue_hermitian(&m).is_err());
        let nan = CMatrix::from_fn(1, 1, |_, _| Complex64::new(1.0, 0.0));
        assert!(max_eigenvalue_hermitian(&nan).is_ok());
    }

    #[test]
    fn unitary_exp_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = hermitize(&random_matrix(&mut rng, 4, 4));
        let u = unitary_exp(&h, 0.3).unwrap();
        let uu = &u.adjoint() * &u;
        assert!(uu.max_abs_diff(&CMatrix::identity(4)) < 1e-13);
        let id = unitary_exp(&h, 0.0).unwrap();
        assert!(id.max_abs_diff(&CMatrix::identity(4)) < 1e-14);
    }
}
