//! Amplitude damping of two entangled qubits, each coupled to its own
//! zero-temperature reservoir, tracked at the pure-state level.
//!
//! The channel is kept unitary by carrying one reservoir qubit per system
//! qubit: |0⟩|0⟩ → |0⟩|0⟩ and |1⟩|0⟩ → √(1−p)|1⟩|0⟩ + √p|0⟩|1⟩ with
//! p = 1 − e^{−Γt}. Starting from α|00⟩ + β|11⟩ the pair state ρ_AB is an
//! X state whose concurrence 2β(1−p)·max(0, α−βp) hits zero at p* = α/β
//! whenever α < β — entanglement sudden death. The sweep records, for
//! each p, the pair EOF, the average LII of the pair, and the summed LII
//! balance against the composite environment E = R_A ⊗ R_B, so the decay
//! can be read as the balance overtaking the average.

use num_complex::Complex64;

use crate::lii::{pairwise_discord, Party, TripartiteLabels};
use crate::measures::{concurrence, eof_two_qubit, OptimizerConfig};
use crate::qmat::{ComplexMatrix, PureState};
use crate::{Error, Result};

/// Real amplitudes (α, β) of the initial α|00⟩ + β|11⟩ pair state.
#[derive(Debug, Clone, Copy)]
pub struct InitialAmplitudes {
    alpha: f64,
    beta: f64,
}

impl InitialAmplitudes {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if alpha < 0.0 || beta < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "amplitudes must be non-negative, got ({alpha}, {beta})"
            )));
        }
        let norm_sq = alpha * alpha + beta * beta;
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { alpha, beta })
    }

    /// Builds from the |00⟩ population α² ∈ [0, 1].
    pub fn from_alpha_sq(alpha_sq: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_sq) {
            return Err(Error::InvalidConfig(format!(
                "alpha² must lie in [0,1], got {alpha_sq}"
            )));
        }
        Ok(Self {
            alpha: alpha_sq.sqrt(),
            beta: (1.0 - alpha_sq).sqrt(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Damping strength p = 1 − e^{−Γt} ∈ [0, 1].
#[derive(Debug, Clone, Copy)]
pub struct DampingParams {
    p: f64,
}

impl DampingParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidConfig(format!(
                "damping strength must lie in [0,1], got {p}"
            )));
        }
        Ok(Self { p })
    }

    /// Converts an exponent Γt ≥ 0 into the channel strength.
    pub fn from_gamma_t(gamma_t: f64) -> Result<Self> {
        if gamma_t < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "Γt must be non-negative, got {gamma_t}"
            )));
        }
        Ok(Self {
            p: 1.0 - (-gamma_t).exp(),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Isometry of the damping channel on (system ⊗ reservoir), as a 4×2
/// matrix whose columns are the images of |0⟩|0⟩ and |1⟩|0⟩. Columns are
/// orthonormal for every p.
pub fn damping_isometry(p: &DampingParams) -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(4, 2);
    v.set(0, 0, Complex64::new(1.0, 0.0)); // |00> -> |00>
    v.set(1, 1, Complex64::new(p.p.sqrt(), 0.0)); // |10> -> √p |01>
    v.set(2, 1, Complex64::new((1.0 - p.p).sqrt(), 0.0)); // ... + √(1−p) |10>
    v
}

/// Unitary completion of the isometry on the full (system ⊗ reservoir)
/// space; the reservoir always starts in |0⟩, so the added columns never
/// act on physical input.
fn damping_unitary(p: &DampingParams) -> ComplexMatrix {
    let root_p = p.p.sqrt();
    let root_q = (1.0 - p.p).sqrt();
    let mut u = ComplexMatrix::zeros(4, 4);
    u.set(0, 0, Complex64::new(1.0, 0.0));
    u.set(1, 1, Complex64::new(root_q, 0.0));
    u.set(2, 1, Complex64::new(-root_p, 0.0));
    u.set(1, 2, Complex64::new(root_p, 0.0));
    u.set(2, 2, Complex64::new(root_q, 0.0));
    u.set(3, 3, Complex64::new(1.0, 0.0));
    u
}

/// Applies a two-qubit unitary to subsystems (i, j) of a multi-qubit pure
/// state, with i addressing the more significant factor of the gate.
fn apply_two_qubit(state: &mut [Complex64], dims: &[usize], i: usize, j: usize, u: &ComplexMatrix) {
    let stride = |k: usize| -> usize { dims[k + 1..].iter().product() };
    let (si, sj) = (stride(i), stride(j));
    for base in 0..state.len() {
        // visit each 4-element group once, from its (0, 0) member
        if (base / si) % 2 != 0 || (base / sj) % 2 != 0 {
            continue;
        }
        let idx = [base, base + sj, base + si, base + si + sj];
        let old = [state[idx[0]], state[idx[1]], state[idx[2]], state[idx[3]]];
        for (r, &target) in idx.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, &o) in old.iter().enumerate() {
                acc += u.get(r, c) * o;
            }
            state[target] = acc;
        }
    }
}

/// Joint 4-qubit pure state (A, B, R_A, R_B) after both local channels
/// act on α|00⟩_AB ⊗ |00⟩_R.
pub fn evolve_esd(amps: &InitialAmplitudes, p: &DampingParams) -> PureState {
    let dims = vec![2usize, 2, 2, 2];
    let mut state = vec![Complex64::new(0.0, 0.0); 16];
    state[0b0000] = Complex64::new(amps.alpha, 0.0); // |0000>
    state[0b1100] = Complex64::new(amps.beta, 0.0); // |1100>
    let u = damping_unitary(p);
    apply_two_qubit(&mut state, &dims, 0, 2, &u); // A with R_A
    apply_two_qubit(&mut state, &dims, 1, 3, &u); // B with R_B
    PureState::from_valid_parts(state, dims)
}

/// Closed-form concurrence of the damped pair state: 2β(1−p)·max(0, α−βp).
/// Crosses zero at p* = α/β when α < β.
pub fn analytic_concurrence_esd(amps: &InitialAmplitudes, p: &DampingParams) -> f64 {
    2.0 * amps.beta * (1.0 - p.p) * (amps.alpha - amps.beta * p.p).max(0.0)
}

/// One row of the sudden-death sweep.
#[derive(Debug, Clone, Copy)]
pub struct EsdRecord {
    pub p: f64,
    /// E_AB of the damped pair (Wootters).
    pub eof_ab: f64,
    /// ϖ⁺_{A|B}: average LII of the pair, both discords optimized
    /// directly.
    pub avg_lii_ab: f64,
    /// ϖ⁻_{E|A} + ϖ⁻_{E|B} with E = R_A ⊗ R_B.
    pub balance_sum: f64,
    pub concurrence_ab: f64,
    /// |E_AB − (ϖ⁺_{A|B} − balance_sum)|.
    pub eab2_residual: f64,
}

/// Uniform grid of `steps` damping strengths covering [0, 1].
pub fn esd_grid(steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidConfig(format!(
            "sweep needs at least 2 grid points, got {steps}"
        )));
    }
    Ok((0..steps).map(|i| i as f64 / (steps - 1) as f64).collect())
}

/// Evaluates one sweep point.
pub fn esd_record(
    amps: &InitialAmplitudes,
    p: &DampingParams,
    cfg: &OptimizerConfig,
) -> Result<EsdRecord> {
    let psi = evolve_esd(amps, p);
    let labels = TripartiteLabels::composite_environment(4);

    let rho_ab = psi.reduced(&[0, 1])?;
    let eof_ab = eof_two_qubit(&rho_ab)?;
    let concurrence_ab = concurrence(&rho_ab)?;

    // both pair discords are direct qubit optimizations
    let (d_ab, _) = pairwise_discord(&psi, &labels, Party::A, Party::B, cfg)?;
    let (d_ba, _) = pairwise_discord(&psi, &labels, Party::B, Party::A, cfg)?;
    let avg_lii_ab = (d_ab + d_ba) / 2.0;

    // measurements on the 4-dimensional E go through the analytic route,
    // measurements on the qubits A and B are optimized on the 8-dim pair
    let (d_ea, _) = pairwise_discord(&psi, &labels, Party::E, Party::A, cfg)?;
    let (d_ae, _) = pairwise_discord(&psi, &labels, Party::A, Party::E, cfg)?;
    let (d_eb, _) = pairwise_discord(&psi, &labels, Party::E, Party::B, cfg)?;
    let (d_be, _) = pairwise_discord(&psi, &labels, Party::B, Party::E, cfg)?;
    let balance_sum = (d_ea - d_ae) / 2.0 + (d_eb - d_be) / 2.0;

    let eab2_residual = (eof_ab - (avg_lii_ab - balance_sum)).abs();
    Ok(EsdRecord {
        p: p.p,
        eof_ab,
        avg_lii_ab,
        balance_sum,
        concurrence_ab,
        eab2_residual,
    })
}

/// Sweeps the damping strength over the given grid. Records come back
/// sorted by p.
pub fn esd_sweep(
    amps: &InitialAmplitudes,
    grid: &[f64],
    cfg: &OptimizerConfig,
) -> Result<Vec<EsdRecord>> {
    let mut records = Vec::with_capacity(grid.len());
    for &p in grid {
        records.push(esd_record(amps, &DampingParams::new(p)?, cfg)?);
    }
    records.sort_by(|a, b| a.p.partial_cmp(&b.p).unwrap());
    Ok(records)
}
