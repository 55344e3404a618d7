//! Two-qubit entanglement of formation via the Wootters spin-flip, and
//! the monogamy shortcuts that extend EOF and discord to qubit–qudit
//! pairs of rank 2 through a tripartite purification.

use num_complex::Complex64;

use super::{binary_entropy, discord, von_neumann_entropy, OptimizerConfig};
use crate::qmat::{eig_hermitian, matrix_sqrt_psd, ComplexMatrix, DensityMatrix, PureState};
use crate::{Error, Result};

/// Eigenvalues above this count toward the numerical rank used by the
/// rank-2 preconditions.
const RANK_TOL: f64 = 1e-8;

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::InvalidSubsystems(format!(
            "expected a two-qubit state, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

fn sigma_y_pair() -> ComplexMatrix {
    let mut sy = ComplexMatrix::zeros(2, 2);
    sy.set(0, 1, Complex64::new(0.0, -1.0));
    sy.set(1, 0, Complex64::new(0.0, 1.0));
    sy.kron(&sy)
}

/// Wootters concurrence of a two-qubit state: max(0, λ₁−λ₂−λ₃−λ₄) from
/// the square roots of the spectrum of ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y), in
/// descending order.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let yy = sigma_y_pair();
    let flipped = yy.mul(&rho.matrix().conj()).mul(&yy);
    // eigenvalues of ρ·ρ̃ via the Hermitian form √ρ · ρ̃ · √ρ
    let root = matrix_sqrt_psd(rho.matrix())?;
    let m = root.mul(&flipped).mul(&root);
    let (eigenvalues, _) = eig_hermitian(&m)?;
    let lambda: Vec<f64> = eigenvalues
        .iter()
        .rev()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    Ok((lambda[0] - lambda[1] - lambda[2] - lambda[3]).max(0.0))
}

/// EOF of two qubits as a function of the concurrence,
/// h((1 + √(1−C²)) / 2) in bits.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0)
}

/// Entanglement of formation of a two-qubit state in bits.
pub fn eof_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

/// Tripartite split of a pure state into parties (a, e, bridge) given as
/// disjoint subsystem-index sets covering the whole state. Returns each
/// party's index set sorted.
fn validate_split(
    psi: &PureState,
    a: &[usize],
    e: &[usize],
    bridge: &[usize],
) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let n = psi.n_subsystems();
    let mut all: Vec<usize> = a.iter().chain(e).chain(bridge).copied().collect();
    all.sort_unstable();
    let expected: Vec<usize> = (0..n).collect();
    if all != expected {
        return Err(Error::InvalidSubsystems(format!(
            "parties a={a:?}, e={e:?}, bridge={bridge:?} must partition 0..{n}"
        )));
    }
    let sorted = |s: &[usize]| {
        let mut v = s.to_vec();
        v.sort_unstable();
        v
    };
    Ok((sorted(a), sorted(e), sorted(bridge)))
}

fn party_dim(psi: &PureState, part: &[usize]) -> usize {
    part.iter().map(|&i| psi.dims()[i]).product()
}

fn check_rank2_pair(psi: &PureState, a: &[usize], e: &[usize]) -> Result<()> {
    let mut keep: Vec<usize> = a.iter().chain(e).copied().collect();
    keep.sort_unstable();
    let rho_ae = psi.reduced(&keep)?;
    let (eigenvalues, _) = eig_hermitian(rho_ae.matrix())?;
    let rank = eigenvalues.iter().filter(|&&l| l > RANK_TOL).count();
    if rank > 2 {
        return Err(Error::RankAboveTwo { rank });
    }
    Ok(())
}

/// Reduction onto a ∪ bridge together with the position of the bridge
/// qubit inside the reduced ordering.
fn pair_with_bridge(
    psi: &PureState,
    a: &[usize],
    bridge: &[usize],
) -> Result<(DensityMatrix, usize)> {
    let mut keep: Vec<usize> = a.iter().chain(bridge).copied().collect();
    keep.sort_unstable();
    let measured_pos = keep.iter().position(|k| k == &bridge[0]).unwrap();
    Ok((psi.reduced(&keep)?, measured_pos))
}

/// EOF between a qubit `a` and a (possibly composite) party `e` whose
/// joint state has rank ≤ 2, evaluated through the purifying bridge
/// qubit: E_AE = δ←_AB + S(A|B), with the discord measured on the bridge.
///
/// The discord term is found numerically; everything else is spectral.
pub fn eof_qubit_qudit_rank2(
    psi: &PureState,
    a: &[usize],
    e: &[usize],
    bridge: &[usize],
    cfg: &OptimizerConfig,
) -> Result<f64> {
    let (a, e, bridge) = validate_split(psi, a, e, bridge)?;
    if party_dim(psi, &a) != 2 || party_dim(psi, &bridge) != 2 {
        return Err(Error::InvalidSubsystems(
            "the target qubit and the bridge must both have dimension 2".into(),
        ));
    }
    check_rank2_pair(psi, &a, &e)?;
    let (rho_ab, measured_pos) = pair_with_bridge(psi, &a, &bridge)?;
    let delta_ab = discord(&rho_ab, measured_pos, cfg)?;
    let s_ab = von_neumann_entropy(&rho_ab)?;
    let s_b = von_neumann_entropy(&rho_ab.partial_trace(&[measured_pos])?)?;
    Ok(delta_ab + (s_ab - s_b))
}

/// Discord δ←_AE between a qubit `a` and a (possibly composite) measured
/// party `e` of joint rank ≤ 2, evaluated fully analytically through the
/// bridge qubit: δ←_AE = E_AB + S(A|B). No optimizer is involved.
pub fn discord_qubit_qudit_rank2(
    psi: &PureState,
    a: &[usize],
    e: &[usize],
    bridge: &[usize],
) -> Result<f64> {
    let (a, e, bridge) = validate_split(psi, a, e, bridge)?;
    if party_dim(psi, &a) != 2 || party_dim(psi, &bridge) != 2 {
        return Err(Error::InvalidSubsystems(
            "the target qubit and the bridge must both have dimension 2".into(),
        ));
    }
    check_rank2_pair(psi, &a, &e)?;
    let (rho_ab, measured_pos) = pair_with_bridge(psi, &a, &bridge)?;
    let e_ab = eof_two_qubit(&rho_ab)?;
    let s_ab = von_neumann_entropy(&rho_ab)?;
    let s_b = von_neumann_entropy(&rho_ab.partial_trace(&[measured_pos])?)?;
    Ok(e_ab + (s_ab - s_b))
}
