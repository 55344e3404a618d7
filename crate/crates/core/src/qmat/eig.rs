//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Matrices here are at most 16x16, so a plain Jacobi sweep is both fast
//! enough and fully deterministic, which matters more than asymptotics:
//! the optimizer and the CSV emitters downstream rely on bit-stable
//! spectra for a given input.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::{Error, Result};

/// Convergence threshold on the largest off-diagonal magnitude.
const OFF_DIAG_TOL: f64 = 1e-12;
/// Rotations are skipped below this pivot size; anything left is already
/// an order of magnitude under the convergence threshold.
const PIVOT_SKIP: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;
const HERMITICITY_TOL: f64 = 1e-10;

/// Eigendecomposition `m = V diag(l) V†` of a Hermitian matrix.
///
/// Eigenvalues are returned ascending, with matching eigenvector columns.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            deviation,
            tol: HERMITICITY_TOL,
        });
    }

    let n = m.rows();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if max_off_diagonal(&a) < OFF_DIAG_TOL {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && max_off_diagonal(&a) >= OFF_DIAG_TOL {
        return Err(Error::EigNonConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new_col, v.get(r, old_col));
        }
    }
    Ok((eigenvalues, vectors))
}

fn max_off_diagonal(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut worst = 0.0f64;
    for p in 0..n {
        for q in p + 1..n {
            worst = worst.max(a.get(p, q).norm());
        }
    }
    worst
}

/// One complex Jacobi rotation annihilating the (p, q) element.
///
/// With pivot a·e^{iφ} = A[p][q] and τ = (A[p][p] − A[q][q]) / (2a), the
/// stable root t of t² + 2τt − 1 = 0 gives tan of the rotation angle; the
/// unitary differs from the identity only in the (p, q) block
/// [[c, −s·e^{iφ}], [s·e^{−iφ}, c]].
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let pivot = a.get(p, q);
    let mag = pivot.norm();
    if mag < PIVOT_SKIP {
        return;
    }
    let phase = pivot / mag; // e^{iφ}
    let alpha = a.get(p, p).re;
    let beta = a.get(q, q).re;
    let tau = (alpha - beta) / (2.0 * mag);
    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
    let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    let s_conj_phase = phase.conj() * s; // s·e^{−iφ}
    let s_phase = phase * s; // s·e^{iφ}

    // columns: A <- A·U
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * c + akq * s_conj_phase);
        a.set(k, q, akq * c - akp * s_phase);
    }
    // rows: A <- U†·A
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, apk * c + aqk * s_phase);
        a.set(q, k, aqk * c - apk * s_conj_phase);
    }
    // exact zeros at the pivot, real diagonal
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    let app = a.get(p, p);
    let aqq = a.get(q, q);
    a.set(p, p, Complex64::new(app.re, 0.0));
    a.set(q, q, Complex64::new(aqq.re, 0.0));

    // accumulate V <- V·U
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * c + vkq * s_conj_phase);
        v.set(k, q, vkq * c - vkp * s_phase);
    }
}

/// Square root of a positive-semidefinite Hermitian matrix.
///
/// Eigenvalues in [−1e-9, 0] are clamped to zero; anything lower is an
/// error.
pub fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (eigenvalues, vectors) = eig_hermitian(m)?;
    let roots: Vec<f64> = eigenvalues
        .iter()
        .map(|&l| {
            if l < -super::EIG_CLAMP {
                Err(Error::NegativeEigenvalue { value: l })
            } else {
                Ok(l.max(0.0).sqrt())
            }
        })
        .collect::<Result<_>>()?;

    let n = m.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &r) in roots.iter().enumerate() {
                acc += vectors.get(i, k) * vectors.get(j, k).conj() * r;
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::haar_random_pure;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reconstruct(eigenvalues: &[f64], vectors: &ComplexMatrix) -> ComplexMatrix {
        let n = vectors.rows();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = c(0.0, 0.0);
                for (k, &l) in eigenvalues.iter().enumerate() {
                    acc += vectors.get(i, k) * vectors.get(j, k).conj() * l;
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        // Haar amplitudes reshaped into H = (G + G†)/2
        let g = haar_random_pure(&[n, n], seed).unwrap();
        let mut m = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for col in 0..n {
                m.set(r, col, g.amplitudes()[r * n + col]);
            }
        }
        m.add(&m.adjoint()).scale(c(0.5, 0.0))
    }

    #[test]
    fn diagonal_input_is_fixed_point() {
        let m =
            ComplexMatrix::from_real(3, 3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 3.0]).unwrap();
        let (vals, vecs) = eig_hermitian(&m).unwrap();
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
        assert!(vecs.approx_eq(&ComplexMatrix::identity(3), 0.0));
    }

    #[test]
    fn pauli_x_spectrum() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let (vals, vecs) = eig_hermitian(&m).unwrap();
        assert_abs_diff_eq!(vals[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[1], 1.0, epsilon = 1e-12);
        assert!(reconstruct(&vals, &vecs).approx_eq(&m, 1e-12));
    }

    #[test]
    fn complex_hermitian_reconstruction() {
        let m = ComplexMatrix::from_entries(
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(1.0, 0.0)],
        )
        .unwrap(); // I + sigma_y
        let (vals, vecs) = eig_hermitian(&m).unwrap();
        assert_abs_diff_eq!(vals[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[1], 2.0, epsilon = 1e-12);
        assert!(reconstruct(&vals, &vecs).approx_eq(&m, 1e-12));
    }

    #[test]
    fn random_8x8_reconstruction_and_unitarity() {
        for seed in 0..5 {
            let m = random_hermitian(8, 900 + seed);
            let (vals, vecs) = eig_hermitian(&m).unwrap();
            assert!(
                reconstruct(&vals, &vecs).approx_eq(&m, 1e-9),
                "reconstruction failed for seed {seed}"
            );
            let gram = vecs.adjoint().mul(&vecs);
            assert!(gram.approx_eq(&ComplexMatrix::identity(8), 1e-9));
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eigenvalue_sum_equals_trace() {
        let m = random_hermitian(6, 77);
        let (vals, _) = eig_hermitian(&m).unwrap();
        assert_abs_diff_eq!(vals.iter().sum::<f64>(), m.trace().re, epsilon = 1e-9);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn sqrt_of_identity_and_diagonal() {
        let i4 = ComplexMatrix::identity(4);
        assert!(matrix_sqrt_psd(&i4).unwrap().approx_eq(&i4, 1e-12));

        let m = ComplexMatrix::from_real(2, 2, &[4.0, 0.0, 0.0, 9.0]).unwrap();
        let expected = ComplexMatrix::from_real(2, 2, &[2.0, 0.0, 0.0, 3.0]).unwrap();
        assert!(matrix_sqrt_psd(&m).unwrap().approx_eq(&expected, 1e-12));
    }

    #[test]
    fn sqrt_squares_back_to_input() {
        // random PSD: conjugate a diagonal by eigenvectors of a random Hermitian
        let h = random_hermitian(4, 321);
        let (_, vecs) = eig_hermitian(&h).unwrap();
        let d = ComplexMatrix::from_real(
            4,
            4,
            &[
                0.4, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.3, 0.0, 0.0, 0.0, 0.0, 2.1,
            ],
        )
        .unwrap();
        let psd = vecs.mul(&d).mul(&vecs.adjoint());
        let root = matrix_sqrt_psd(&psd).unwrap();
        assert!(root.mul(&root).approx_eq(&psd, 1e-8));
    }

    #[test]
    fn sqrt_rejects_genuinely_negative() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1e-6]).unwrap();
        assert!(matches!(
            matrix_sqrt_psd(&m),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }
}
