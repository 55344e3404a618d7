//! Entropic and entanglement measures in bits.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * every entropy is base-2;
//! * a directional discord δ←_XY is always minimized over rank-1
//!   projective measurements on the *second* party Y, which must be a
//!   qubit;
//! * in every report, "A" is the unmeasured side (all subsystems other
//!   than the measured one, in their original order) and "B" the measured
//!   party.

use num_complex::Complex64;

use crate::qmat::{eig_hermitian, ComplexMatrix, DensityMatrix, EIG_CLAMP};
use crate::{Error, Result};

mod entanglement;
mod optimize;

pub use entanglement::{
    concurrence, discord_qubit_qudit_rank2, eof_from_concurrence, eof_qubit_qudit_rank2,
    eof_two_qubit,
};

/// Outcomes below this probability are carried as maximally mixed
/// conditional states and excluded from entropy averages.
pub const OUTCOME_PRUNE: f64 = 1e-12;

/// Binary Shannon entropy in bits, with h(0) = h(1) = 0.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

fn entropy_from_eigenvalues(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in eigenvalues {
        if l < -EIG_CLAMP {
            return Err(Error::NegativeEigenvalue { value: l });
        }
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    Ok(s.max(0.0))
}

/// Entropy of a raw Hermitian PSD matrix of arbitrary trace p, rescaled
/// to the normalized state m/p. Used on unnormalized conditional states.
///
/// The clamping window applies to the raw eigenvalues, before the 1/p
/// rescaling: a low-probability outcome must not amplify round-off
/// noise into a spurious negativity error.
fn entropy_of_unnormalized(m: &ComplexMatrix, p: f64) -> Result<f64> {
    let (eigenvalues, _) = eig_hermitian(m)?;
    let mut s = 0.0;
    for &l in &eigenvalues {
        if l < -EIG_CLAMP {
            return Err(Error::NegativeEigenvalue { value: l });
        }
        let scaled = l.max(0.0) / p;
        if scaled > 0.0 {
            s -= scaled * scaled.log2();
        }
    }
    Ok(s.max(0.0))
}

/// Von Neumann entropy −Σ λ log₂ λ in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let (eigenvalues, _) = eig_hermitian(rho.matrix())?;
    entropy_from_eigenvalues(&eigenvalues)
}

/// Mutual information S_A + S_B − S_AB across the bipartition
/// (side_a | complement).
pub fn mutual_information(rho: &DensityMatrix, side_a: &[usize]) -> Result<f64> {
    let n = rho.n_subsystems();
    let side_b: Vec<usize> = (0..n).filter(|i| !side_a.contains(i)).collect();
    if side_a.is_empty() || side_b.is_empty() {
        return Err(Error::InvalidSubsystems(
            "bipartition must leave subsystems on both sides".into(),
        ));
    }
    let s_a = von_neumann_entropy(&rho.partial_trace(side_a)?)?;
    let s_b = von_neumann_entropy(&rho.partial_trace(&side_b)?)?;
    let s_ab = von_neumann_entropy(rho)?;
    Ok(s_a + s_b - s_ab)
}

/// Conditional entropy S(A|B) = S_AB − S_B, with B the `given`
/// subsystems. May be negative.
pub fn conditional_entropy(rho: &DensityMatrix, given: &[usize]) -> Result<f64> {
    let s_ab = von_neumann_entropy(rho)?;
    let s_b = von_neumann_entropy(&rho.partial_trace(given)?)?;
    Ok(s_ab - s_b)
}

/// One-parameter family of rank-1 projective measurements on a qubit,
/// parameterized by Bloch angles. Construction canonicalizes the angles
/// into θ ∈ [0, π], φ ∈ [0, 2π); the projectors are unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    theta: f64,
    phi: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Self {
        let tau = std::f64::consts::TAU;
        let mut t = theta.rem_euclid(tau);
        let mut p = phi;
        if t > std::f64::consts::PI {
            t = tau - t;
            p += std::f64::consts::PI;
        }
        Self {
            theta: t,
            phi: p.rem_euclid(tau),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// |v⟩ = (cos(θ/2), e^{iφ} sin(θ/2)).
    pub fn ket(&self) -> [Complex64; 2] {
        let (half_sin, half_cos) = (self.theta / 2.0).sin_cos();
        [
            Complex64::new(half_cos, 0.0),
            Complex64::from_polar(1.0, self.phi) * half_sin,
        ]
    }

    /// The unit vector orthogonal to [`Self::ket`].
    pub fn orthogonal_ket(&self) -> [Complex64; 2] {
        let [a, b] = self.ket();
        [-b.conj(), a.conj()]
    }

    /// Projectors Π₀ = |v⟩⟨v| and Π₁ = I − Π₀.
    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        let [a, b] = self.ket();
        let mut p0 = ComplexMatrix::zeros(2, 2);
        p0.set(0, 0, a * a.conj());
        p0.set(0, 1, a * b.conj());
        p0.set(1, 0, b * a.conj());
        p0.set(1, 1, b * b.conj());
        let p1 = ComplexMatrix::identity(2).sub(&p0);
        [p0, p1]
    }
}

/// One measurement outcome: its probability and the conditional state of
/// the unmeasured side.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub probability: f64,
    pub state: DensityMatrix,
}

/// The ensemble {p_k, ρ_{A|k}} produced by measuring one qubit.
#[derive(Debug, Clone)]
pub struct PostMeasurementEnsemble {
    pub outcomes: Vec<MeasurementOutcome>,
}

impl PostMeasurementEnsemble {
    /// Σ p_k S(ρ_{A|k}), skipping pruned outcomes.
    pub fn average_conditional_entropy(&self) -> Result<f64> {
        let mut acc = 0.0;
        for outcome in &self.outcomes {
            if outcome.probability >= OUTCOME_PRUNE {
                acc += outcome.probability * von_neumann_entropy(&outcome.state)?;
            }
        }
        Ok(acc)
    }
}

fn unmeasured_dims(dims: &[usize], measured: usize) -> Vec<usize> {
    dims.iter()
        .enumerate()
        .filter(|&(i, _)| i != measured)
        .map(|(_, &d)| d)
        .collect()
}

fn require_qubit(rho: &DensityMatrix, measured: usize) -> Result<()> {
    match rho.dims().get(measured) {
        Some(&2) => Ok(()),
        Some(&d) => Err(Error::MeasuredNotQubit {
            index: measured,
            dim: d,
        }),
        None => Err(Error::InvalidSubsystems(format!(
            "measured index {measured} out of range for {} subsystems",
            rho.n_subsystems()
        ))),
    }
}

/// Unnormalized conditional state of the unmeasured side after projecting
/// the measured qubit onto |v⟩: M[a][b] = Σ_{m,m'} v̄[m] ρ[(a,m),(b,m')] v[m'],
/// together with its trace (the outcome probability).
///
/// This equals Tr_meas[(I⊗|v⟩⟨v|) ρ (I⊗|v⟩⟨v|)] without forming the
/// full-space product; it is the optimizer's inner loop.
fn condition_on_qubit(
    rho: &DensityMatrix,
    measured: usize,
    v: &[Complex64; 2],
) -> (f64, ComplexMatrix) {
    let dims = rho.dims();
    let stride: usize = dims[measured + 1..].iter().product();
    let a_side = rho.side() / 2;
    let full = |a: usize, m: usize| -> usize {
        let pre = a / stride;
        let post = a % stride;
        pre * 2 * stride + m * stride + post
    };
    let mut m_out = ComplexMatrix::zeros(a_side, a_side);
    for a in 0..a_side {
        for b in 0..a_side {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..2 {
                let row = full(a, m);
                for mp in 0..2 {
                    acc += v[m].conj() * rho.matrix().get(row, full(b, mp)) * v[mp];
                }
            }
            m_out.set(a, b, acc);
        }
    }
    let p = m_out.trace().re.max(0.0);
    (p, m_out)
}

/// Measures the designated qubit in the given basis and returns both
/// outcomes with the conditional reduced states of the unmeasured side.
///
/// Outcomes with probability below 1e-12 carry a maximally mixed
/// conditional state; entropy averages skip them.
pub fn post_measurement_ensemble(
    rho: &DensityMatrix,
    basis: &MeasurementBasis,
    measured: usize,
) -> Result<PostMeasurementEnsemble> {
    require_qubit(rho, measured)?;
    let rest = unmeasured_dims(rho.dims(), measured);
    let mut outcomes = Vec::with_capacity(2);
    for v in [basis.ket(), basis.orthogonal_ket()] {
        let (p, m) = condition_on_qubit(rho, measured, &v);
        let state = if p < OUTCOME_PRUNE {
            DensityMatrix::maximally_mixed(rest.clone())
        } else {
            DensityMatrix::from_valid_parts(m.scale(Complex64::new(1.0 / p, 0.0)), rest.clone())
        };
        outcomes.push(MeasurementOutcome {
            probability: p,
            state,
        });
    }
    Ok(PostMeasurementEnsemble { outcomes })
}

/// The objective the basis optimizer minimizes: Σ p_k S(ρ_{A|k}) for the
/// measurement with Bloch angles (θ, φ).
pub(crate) fn measured_conditional_entropy(
    rho: &DensityMatrix,
    measured: usize,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    let basis = MeasurementBasis::new(theta, phi);
    let mut acc = 0.0;
    for v in [basis.ket(), basis.orthogonal_ket()] {
        let (p, m) = condition_on_qubit(rho, measured, &v);
        if p >= OUTCOME_PRUNE {
            acc += p * entropy_of_unnormalized(&m, p)?;
        }
    }
    Ok(acc)
}

/// Search configuration for the measurement-basis optimizer: exhaustive
/// (θ, φ) grid followed by simplex refinement.
#[derive(Debug, Clone, Copy)]
pub struct OptimizerConfig {
    pub grid_theta: usize,
    pub grid_phi: usize,
    pub refine_iters: usize,
    pub tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_theta: 60,
            grid_phi: 120,
            refine_iters: 200,
            tol: 1e-7,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_theta < 2 || self.grid_phi < 2 || self.refine_iters < 2 {
            return Err(Error::InvalidConfig(format!(
                "optimizer counts must be >= 2, got grid {}x{}, refine {}",
                self.grid_theta, self.grid_phi, self.refine_iters
            )));
        }
        if self.tol <= 0.0 || self.tol.is_nan() {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Maximum locally accessible information J← = S_A − min_basis Σ p_k S_{A|k},
/// measuring the designated qubit. Returns the value and the optimizing
/// basis; deterministic for a fixed configuration.
pub fn accessible_information(
    rho: &DensityMatrix,
    measured: usize,
    cfg: &OptimizerConfig,
) -> Result<(f64, MeasurementBasis)> {
    let n = rho.n_subsystems();
    let rest: Vec<usize> = (0..n).filter(|&i| i != measured).collect();
    if rest.is_empty() {
        return Err(Error::InvalidSubsystems("nothing left unmeasured".into()));
    }
    let s_a = von_neumann_entropy(&rho.partial_trace(&rest)?)?;
    let (s_q, basis) = optimize::minimize_measured_entropy(rho, measured, cfg)?;
    Ok((s_a - s_q, basis))
}

/// Quantum discord δ← = I − J← with the measurement on the designated
/// qubit. Values in (−tol, 0) report as 0; anything at or below −tol is
/// an inconsistency and errors out.
pub fn discord(rho: &DensityMatrix, measured: usize, cfg: &OptimizerConfig) -> Result<f64> {
    // I − J = S_q − S(A|B); the S_A terms cancel.
    let s_ab = von_neumann_entropy(rho)?;
    let s_b = von_neumann_entropy(&rho.partial_trace(&[measured])?)?;
    let (s_q, _) = optimize::minimize_measured_entropy(rho, measured, cfg)?;
    clamp_discord(s_q - (s_ab - s_b), cfg.tol)
}

pub(crate) fn clamp_discord(raw: f64, tol: f64) -> Result<f64> {
    if raw <= -tol {
        Err(Error::NegativeDiscord { value: raw, tol })
    } else {
        Ok(raw.max(0.0))
    }
}

/// All pairwise scalars for a bipartition (unmeasured side A | measured
/// qubit B), in bits.
#[derive(Debug, Clone)]
pub struct CorrelationReport {
    pub s_a: f64,
    pub s_b: f64,
    pub s_ab: f64,
    pub mutual_info: f64,
    pub accessible: f64,
    pub discord: f64,
    pub cond_entropy: f64,
    pub cond_entropy_measured: f64,
    /// Present only when the whole state is exactly two qubits.
    pub eof: Option<f64>,
    pub basis_opt: MeasurementBasis,
}

/// Computes the full correlation report for a state with one designated
/// measured qubit.
///
/// The additive identities I = J + δ and δ = S_q(A|B) − S(A|B) hold by
/// construction: when the optimizer lands within tol below zero discord,
/// the slack is absorbed into (accessible, cond_entropy_measured).
pub fn correlation_report(
    rho: &DensityMatrix,
    measured: usize,
    cfg: &OptimizerConfig,
) -> Result<CorrelationReport> {
    let n = rho.n_subsystems();
    let rest: Vec<usize> = (0..n).filter(|&i| i != measured).collect();
    if rest.is_empty() {
        return Err(Error::InvalidSubsystems("nothing left unmeasured".into()));
    }
    let s_a = von_neumann_entropy(&rho.partial_trace(&rest)?)?;
    let s_b = von_neumann_entropy(&rho.partial_trace(&[measured])?)?;
    let s_ab = von_neumann_entropy(rho)?;
    let mutual_info = s_a + s_b - s_ab;
    let cond_entropy = s_ab - s_b;
    let (s_q_raw, basis_opt) = optimize::minimize_measured_entropy(rho, measured, cfg)?;
    let discord_raw = s_q_raw - cond_entropy;
    let discord = clamp_discord(discord_raw, cfg.tol)?;
    let (cond_entropy_measured, accessible) = if discord == 0.0 {
        (cond_entropy, mutual_info)
    } else {
        (s_q_raw, mutual_info - discord)
    };
    let eof = if rho.dims() == [2, 2] {
        Some(eof_two_qubit(rho)?)
    } else {
        None
    };
    Ok(CorrelationReport {
        s_a,
        s_b,
        s_ab,
        mutual_info,
        accessible,
        discord,
        cond_entropy,
        cond_entropy_measured,
        eof,
        basis_opt,
    })
}
