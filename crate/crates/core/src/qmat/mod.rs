//! Dense complex linear algebra for multipartite quantum states.
//!
//! Everything here is row-major, dense and small: the states this crate
//! handles are at most a handful of qubits, so clarity and determinism
//! win over asymptotic speed.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{Error, Result};

mod eig;

pub use eig::{eig_hermitian, matrix_sqrt_psd};

/// Hermiticity / trace tolerance used when validating density matrices.
pub const STATE_TOL: f64 = 1e-10;

/// Eigenvalues in `[-EIG_CLAMP, 0]` are treated as round-off and clamped
/// to zero; anything below `-EIG_CLAMP` is rejected as genuinely invalid.
pub const EIG_CLAMP: f64 = 1e-9;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                dims: vec![rows, cols],
                size: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from real entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        let entries = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_entries(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// Elementwise complex conjugate.
    pub fn conj(&self) -> Self {
        let entries = self.entries.iter().map(|z| z.conj()).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let entries = self.entries.iter().map(|z| z * s).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Standard tensor (Kronecker) product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for ra in 0..self.rows {
            for ca in 0..self.cols {
                let a = self.get(ra, ca);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for rb in 0..other.rows {
                    for cb in 0..other.cols {
                        out.set(
                            ra * other.rows + rb,
                            ca * other.cols + cb,
                            a * other.get(rb, cb),
                        );
                    }
                }
            }
        }
        out
    }

    /// Largest elementwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Elementwise equality within an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.max_abs_diff(other) <= tol
    }

    /// Largest deviation from Hermiticity, `max |m - m†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                let d = (self.get(r, c) - self.get(c, r).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tol
    }
}

fn check_dims(dims: &[usize], size: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch {
            dims: dims.to_vec(),
            size,
        });
    }
    let prod: usize = dims.iter().product();
    if prod != size {
        return Err(Error::DimensionMismatch {
            dims: dims.to_vec(),
            size,
        });
    }
    Ok(())
}

/// Hermitian, unit-trace, positive-semidefinite matrix over a tensor
/// product of subsystems.
///
/// The subsystem dimension list fixes how row/column indices factor into
/// multi-indices; a dimension-1 factor is allowed so that purifications of
/// already-pure states keep a (trivial) ancilla slot.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates all invariants: square shape matching `dims`, Hermiticity
    /// and unit trace within 1e-10, spectrum above -1e-9.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows,
                cols: matrix.cols,
            });
        }
        check_dims(&dims, matrix.rows)?;
        let deviation = matrix.hermiticity_deviation();
        if deviation > STATE_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tol: STATE_TOL,
            });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::TraceNotOne { trace: tr.re });
        }
        let (eigenvalues, _) = eig_hermitian(&matrix)?;
        if let Some(&low) = eigenvalues.first() {
            if low < -EIG_CLAMP {
                return Err(Error::NegativeEigenvalue { value: low });
            }
        }
        Ok(Self { matrix, dims })
    }

    /// Wraps parts that are valid by construction (reductions, conditioned
    /// states of already-validated inputs). Debug builds still assert the
    /// cheap invariants.
    pub(crate) fn from_valid_parts(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert!(matrix.is_square());
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.rows());
        debug_assert!(matrix.hermiticity_deviation() <= 1e-8);
        Self { matrix, dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total Hilbert-space dimension.
    pub fn side(&self) -> usize {
        self.matrix.rows
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    /// Maximally mixed state on the given subsystem dimensions.
    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let side: usize = dims.iter().product();
        let m = ComplexMatrix::identity(side).scale(Complex64::new(1.0 / side as f64, 0.0));
        Self::from_valid_parts(m, dims)
    }

    /// Traces out every subsystem not listed in `keep`.
    ///
    /// `keep` must be strictly increasing and non-empty; the kept
    /// subsystems appear in their original order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.dims.len();
        if keep.is_empty() {
            return Err(Error::InvalidSubsystems("empty keep set".into()));
        }
        if keep.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubsystems(format!(
                "keep set {keep:?} is not strictly increasing"
            )));
        }
        if *keep.last().unwrap() >= n {
            return Err(Error::InvalidSubsystems(format!(
                "keep index {} out of range for {} subsystems",
                keep.last().unwrap(),
                n
            )));
        }

        let keep_dims: Vec<usize> = keep.iter().map(|&k| self.dims[k]).collect();
        let traced: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&k| self.dims[k]).collect();
        let keep_side: usize = keep_dims.iter().product();
        let traced_side: usize = traced_dims.iter().product();

        let strides = index_strides(&self.dims);
        let mut out = ComplexMatrix::zeros(keep_side, keep_side);
        for a in 0..keep_side {
            let base_a = compose_index(a, &keep_dims, keep, &strides);
            for b in 0..keep_side {
                let base_b = compose_index(b, &keep_dims, keep, &strides);
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..traced_side {
                    let off = compose_index(t, &traced_dims, &traced, &strides);
                    acc += self.matrix.get(base_a + off, base_b + off);
                }
                out.set(a, b, acc);
            }
        }
        Ok(DensityMatrix::from_valid_parts(out, keep_dims))
    }

    /// Reorders subsystems so that new position `k` holds old subsystem
    /// `perm[k]`. The spectrum is unchanged.
    pub fn permute_subsystems(&self, perm: &[usize]) -> Result<DensityMatrix> {
        let n = self.dims.len();
        validate_permutation(perm, n)?;
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let strides = index_strides(&self.dims);
        let side = self.side();
        // map from new flat index to old flat index
        let mut old_of_new = vec![0usize; side];
        for (idx, slot) in old_of_new.iter_mut().enumerate() {
            let multi = decompose_index(idx, &new_dims);
            let mut old = 0;
            for (k, &p) in perm.iter().enumerate() {
                old += multi[k] * strides[p];
            }
            *slot = old;
        }
        let mut out = ComplexMatrix::zeros(side, side);
        for r in 0..side {
            for c in 0..side {
                out.set(r, c, self.matrix.get(old_of_new[r], old_of_new[c]));
            }
        }
        Ok(DensityMatrix::from_valid_parts(out, new_dims))
    }
}

/// Normalized pure state over a tensor product of subsystems.
#[derive(Debug, Clone)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    dims: Vec<usize>,
}

impl PureState {
    /// Validates normalization (squared norm 1 within 1e-10) and the
    /// dimension product.
    pub fn new(amplitudes: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > STATE_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amplitudes, dims })
    }

    pub(crate) fn from_valid_parts(amplitudes: Vec<Complex64>, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), amplitudes.len());
        Self { amplitudes, dims }
    }

    /// Basis state |i⟩ on the given subsystem dimensions.
    pub fn basis_state(dims: Vec<usize>, index: usize) -> Self {
        let side: usize = dims.iter().product();
        assert!(index < side);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); side];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes, dims }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Projector |ψ⟩⟨ψ| as a density matrix.
    pub fn to_density(&self) -> DensityMatrix {
        let n = self.amplitudes.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, self.amplitudes[r] * self.amplitudes[c].conj());
            }
        }
        DensityMatrix::from_valid_parts(m, self.dims.clone())
    }

    /// Reduced density matrix over the kept subsystems.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        self.to_density().partial_trace(keep)
    }

    /// Reorders subsystems so that new position `k` holds old subsystem
    /// `perm[k]`.
    pub fn permute_subsystems(&self, perm: &[usize]) -> Result<PureState> {
        let n = self.dims.len();
        validate_permutation(perm, n)?;
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let strides = index_strides(&self.dims);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (idx, slot) in out.iter_mut().enumerate() {
            let multi = decompose_index(idx, &new_dims);
            let mut old = 0;
            for (k, &p) in perm.iter().enumerate() {
                old += multi[k] * strides[p];
            }
            *slot = self.amplitudes[old];
        }
        Ok(PureState::from_valid_parts(out, new_dims))
    }
}

fn validate_permutation(perm: &[usize], len: usize) -> Result<()> {
    if perm.len() != len {
        return Err(Error::MalformedPermutation {
            perm: perm.to_vec(),
            len,
        });
    }
    let mut seen = vec![false; len];
    for &p in perm {
        if p >= len || seen[p] {
            return Err(Error::MalformedPermutation {
                perm: perm.to_vec(),
                len,
            });
        }
        seen[p] = true;
    }
    Ok(())
}

/// Row-major strides of each subsystem index.
fn index_strides(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    strides
}

/// Flat index -> multi-index for the given dims.
fn decompose_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut multi = vec![0usize; dims.len()];
    for k in (0..dims.len()).rev() {
        multi[k] = idx % dims[k];
        idx /= dims[k];
    }
    multi
}

/// Multi-index over a subsystem subset -> contribution to the flat index
/// of the full system.
fn compose_index(
    flat: usize,
    sub_dims: &[usize],
    subsystems: &[usize],
    strides: &[usize],
) -> usize {
    let multi = decompose_index(flat, sub_dims);
    multi
        .iter()
        .zip(subsystems)
        .map(|(&m, &s)| m * strides[s])
        .sum()
}

/// Minimal purification of `rho`: a pure state on `rho.dims() ++ [r]`
/// where `r` is the numerical rank (eigenvalues above 1e-10).
///
/// Tracing out the ancilla recovers `rho`. The ancilla basis is ordered by
/// descending eigenvalue; any other choice differs by a local unitary on
/// the ancilla, which no quantity downstream is sensitive to.
pub fn purify(rho: &DensityMatrix) -> PureState {
    let (eigenvalues, vectors) =
        eig_hermitian(rho.matrix()).expect("validated density matrix has a convergent spectrum");
    let side = rho.side();
    let kept: Vec<(f64, usize)> = eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 1e-10)
        .map(|(k, &l)| (l, k))
        .collect();
    // descending eigenvalue order
    let mut kept = kept;
    kept.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let rank = kept.len().max(1);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); side * rank];
    for (anc, &(l, col)) in kept.iter().enumerate() {
        let w = l.sqrt();
        for i in 0..side {
            amplitudes[i * rank + anc] = vectors.get(i, col) * w;
        }
    }
    let mut dims = rho.dims().to_vec();
    dims.push(rank);
    PureState::from_valid_parts(amplitudes, dims)
}

/// Haar-random pure state: a complex standard-normal vector, normalized.
/// Deterministic for a given seed.
pub fn haar_random_pure(dims: &[usize], seed: u64) -> Result<PureState> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(Error::InvalidConfig(format!(
            "haar sampling requires every dimension >= 2, got {dims:?}"
        )));
    }
    let side: usize = dims.iter().product();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let mut amplitudes: Vec<Complex64> = (0..side)
        .map(|_| {
            let re: f64 = normal.sample(&mut rng);
            let im: f64 = normal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amplitudes {
        *a /= norm;
    }
    Ok(PureState::from_valid_parts(amplitudes, dims.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub(crate) fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    pub(crate) fn bell_phi_plus() -> PureState {
        let s = 1.0 / 2.0_f64.sqrt();
        PureState::new(
            vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)],
            vec![2, 2],
        )
        .unwrap()
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert!(i2.kron(&i2).approx_eq(&ComplexMatrix::identity(4), 0.0));

        let one = ComplexMatrix::from_real(1, 1, &[1.0]).unwrap();
        assert!(pauli_x().kron(&one).approx_eq(&pauli_x(), 0.0));
    }

    #[test]
    fn kron_sigma_z_pair() {
        // hand expansion of the four blocks
        let zz = pauli_z().kron(&pauli_z());
        let expected = ComplexMatrix::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, -1.0, 0.0, 0.0, //
                0.0, 0.0, -1.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        )
        .unwrap();
        assert!(zz.approx_eq(&expected, 0.0));
    }

    #[test]
    fn partial_trace_bell_is_maximally_mixed() {
        let rho = bell_phi_plus().to_density();
        let a = rho.partial_trace(&[0]).unwrap();
        let half = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(a.matrix().approx_eq(&half, 1e-12));
    }

    #[test]
    fn partial_trace_product_recovers_factor() {
        let rho_a = ComplexMatrix::from_real(2, 2, &[0.75, 0.1, 0.1, 0.25]).unwrap();
        let rho_b = ComplexMatrix::from_real(2, 2, &[0.4, 0.0, 0.0, 0.6]).unwrap();
        let joint = DensityMatrix::new(rho_a.kron(&rho_b), vec![2, 2]).unwrap();
        let b = joint.partial_trace(&[1]).unwrap();
        assert!(b.matrix().approx_eq(&rho_b, 1e-12));
    }

    #[test]
    fn partial_trace_nested_reduction_consistency() {
        let psi = haar_random_pure(&[2, 2, 2], 11).unwrap();
        let rho = psi.to_density();
        let via_pair = rho
            .partial_trace(&[0, 2])
            .unwrap()
            .partial_trace(&[0])
            .unwrap();
        let direct = rho.partial_trace(&[0]).unwrap();
        assert!(via_pair.matrix().approx_eq(direct.matrix(), 1e-12));
    }

    #[test]
    fn partial_trace_rejects_bad_keep_sets() {
        let rho = bell_phi_plus().to_density();
        assert!(rho.partial_trace(&[]).is_err());
        assert!(rho.partial_trace(&[2]).is_err());
        assert!(rho.partial_trace(&[1, 0]).is_err());
    }

    #[test]
    fn permute_identity_and_involution() {
        let psi = haar_random_pure(&[2, 3], 3).unwrap();
        let rho = psi.to_density();
        let same = rho.permute_subsystems(&[0, 1]).unwrap();
        assert!(same.matrix().approx_eq(rho.matrix(), 0.0));

        let swapped = rho.permute_subsystems(&[1, 0]).unwrap();
        assert_eq!(swapped.dims(), &[3, 2]);
        let back = swapped.permute_subsystems(&[1, 0]).unwrap();
        assert!(back.matrix().approx_eq(rho.matrix(), 0.0));
    }

    #[test]
    fn permute_swaps_product_factors() {
        let rho_a = ComplexMatrix::from_real(2, 2, &[0.9, 0.0, 0.0, 0.1]).unwrap();
        let rho_b = ComplexMatrix::from_real(2, 2, &[0.3, 0.1, 0.1, 0.7]).unwrap();
        let ab = DensityMatrix::new(rho_a.kron(&rho_b), vec![2, 2]).unwrap();
        let ba = ab.permute_subsystems(&[1, 0]).unwrap();
        assert!(ba.matrix().approx_eq(&rho_b.kron(&rho_a), 1e-12));
    }

    #[test]
    fn permute_rejects_malformed() {
        let rho = bell_phi_plus().to_density();
        assert!(rho.permute_subsystems(&[0, 0]).is_err());
        assert!(rho.permute_subsystems(&[0]).is_err());
        assert!(rho.permute_subsystems(&[0, 2]).is_err());
    }

    #[test]
    fn permute_preserves_spectrum() {
        let psi = haar_random_pure(&[2, 2, 2], 19).unwrap();
        let rho = psi.reduced(&[0, 1, 2]).unwrap();
        let permuted = rho.permute_subsystems(&[2, 0, 1]).unwrap();
        let (e1, _) = eig_hermitian(rho.matrix()).unwrap();
        let (e2, _) = eig_hermitian(permuted.matrix()).unwrap();
        for (a, b) in e1.iter().zip(&e2) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn density_matrix_validation() {
        // non-Hermitian
        let m = ComplexMatrix::from_entries(
            2,
            2,
            vec![c(0.5, 0.0), c(0.3, 0.0), c(0.1, 0.0), c(0.5, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            DensityMatrix::new(m, vec![2]),
            Err(Error::NotHermitian { .. })
        ));

        // trace != 1
        let m = ComplexMatrix::from_real(2, 2, &[0.9, 0.0, 0.0, 0.9]).unwrap();
        assert!(matches!(
            DensityMatrix::new(m, vec![2]),
            Err(Error::TraceNotOne { .. })
        ));

        // negative eigenvalue
        let m = ComplexMatrix::from_real(2, 2, &[1.2, 0.0, 0.0, -0.2]).unwrap();
        assert!(matches!(
            DensityMatrix::new(m, vec![2]),
            Err(Error::NegativeEigenvalue { .. })
        ));

        // dims mismatch
        let m = ComplexMatrix::identity(4).scale(c(0.25, 0.0));
        assert!(DensityMatrix::new(m, vec![2, 3]).is_err());
    }

    #[test]
    fn purify_pure_state_gets_trivial_ancilla() {
        let rho = DensityMatrix::new(
            ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap(),
            vec![2],
        )
        .unwrap();
        let psi = purify(&rho);
        assert_eq!(psi.dims(), &[2, 1]);
        assert_abs_diff_eq!(psi.amplitudes()[0].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn purify_maximally_mixed_is_maximally_entangled() {
        let rho = DensityMatrix::maximally_mixed(vec![2]);
        let psi = purify(&rho);
        assert_eq!(psi.dims(), &[2, 2]);
        let back = psi.reduced(&[0]).unwrap();
        assert!(back.matrix().approx_eq(rho.matrix(), 1e-12));
    }

    #[test]
    fn purify_round_trip_on_rank2_mixed_state() {
        let psi = haar_random_pure(&[2, 2, 2], 5).unwrap();
        let rho = psi.reduced(&[0, 1]).unwrap(); // rank <= 2 two-qubit state
        let phi = purify(&rho);
        assert_eq!(phi.dims().len(), 3);
        assert!(phi.dims()[2] <= 2);
        let keep: Vec<usize> = vec![0, 1];
        let back = phi.reduced(&keep).unwrap();
        assert!(back.matrix().approx_eq(rho.matrix(), 1e-9));
    }

    #[test]
    fn haar_norm_and_determinism() {
        let a = haar_random_pure(&[2], 123).unwrap();
        assert_abs_diff_eq!(a.norm_sqr(), 1.0, epsilon = 1e-12);
        let b = haar_random_pure(&[2], 123).unwrap();
        assert_eq!(a.amplitudes(), b.amplitudes());
        let c = haar_random_pure(&[2], 124).unwrap();
        assert_ne!(a.amplitudes(), c.amplitudes());
    }

    #[test]
    fn haar_first_moment_matches_uniform() {
        // Monte-Carlo oracle: E|<0|psi>|^2 = 1/d for Haar states.
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|s| haar_random_pure(&[2], s as u64).unwrap().amplitudes()[0].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn haar_rejects_degenerate_dims() {
        assert!(haar_random_pure(&[1, 2], 0).is_err());
        assert!(haar_random_pure(&[], 0).is_err());
    }
}
