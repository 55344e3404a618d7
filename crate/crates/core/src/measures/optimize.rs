//! Measurement-basis search: exhaustive (θ, φ) grid, then Nelder–Mead
//! refinement from the best grid point.
//!
//! Discord landscapes are smooth but plateau-heavy, so the grid does the
//! global work and the simplex only polishes. Ties on the grid break
//! toward the lowest θ index, then the lowest φ index, which keeps the
//! result independent of evaluation order.

use std::f64::consts::{PI, TAU};

use super::{measured_conditional_entropy, MeasurementBasis, OptimizerConfig};
use crate::qmat::DensityMatrix;
use crate::Result;

// standard Nelder-Mead coefficients
const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimizes Σ p_k S(ρ_{A|k}) over measurement bases on the designated
/// qubit. Returns the minimum and the canonicalized optimizing basis.
pub(crate) fn minimize_measured_entropy(
    rho: &DensityMatrix,
    measured: usize,
    cfg: &OptimizerConfig,
) -> Result<(f64, MeasurementBasis)> {
    cfg.validate()?;
    super::require_qubit(rho, measured)?;

    let theta_step = PI / (cfg.grid_theta - 1) as f64;
    let phi_step = TAU / cfg.grid_phi as f64;

    let mut best = f64::INFINITY;
    let mut best_point = [0.0, 0.0];
    for i in 0..cfg.grid_theta {
        let theta = i as f64 * theta_step;
        for j in 0..cfg.grid_phi {
            let phi = j as f64 * phi_step;
            let value = measured_conditional_entropy(rho, measured, theta, phi)?;
            if value < best {
                best = value;
                best_point = [theta, phi];
            }
        }
    }

    let (value, point) = nelder_mead(
        |p| measured_conditional_entropy(rho, measured, p[0], p[1]),
        best_point,
        [theta_step / 2.0, phi_step / 2.0],
        cfg.refine_iters,
        cfg.tol,
    )?;

    if value < best {
        Ok((value, MeasurementBasis::new(point[0], point[1])))
    } else {
        Ok((best, MeasurementBasis::new(best_point[0], best_point[1])))
    }
}

/// Plain two-dimensional Nelder–Mead. The objective is smooth and
/// periodic, so the simplex runs unconstrained; angles are reduced when
/// the basis is built.
fn nelder_mead<F>(
    mut f: F,
    start: [f64; 2],
    step: [f64; 2],
    max_iters: usize,
    tol: f64,
) -> Result<(f64, [f64; 2])>
where
    F: FnMut([f64; 2]) -> Result<f64>,
{
    let mut simplex = [
        start,
        [start[0] + step[0], start[1]],
        [start[0], start[1] + step[1]],
    ];
    let mut values = [f(simplex[0])?, f(simplex[1])?, f(simplex[2])?];

    for _ in 0..max_iters {
        // order: best, middle, worst
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        let [lo, mid, hi] = order;

        if values[hi] - values[lo] < tol {
            break;
        }

        let centroid = [
            (simplex[lo][0] + simplex[mid][0]) / 2.0,
            (simplex[lo][1] + simplex[mid][1]) / 2.0,
        ];
        let shifted = |coef: f64| {
            [
                centroid[0] + coef * (centroid[0] - simplex[hi][0]),
                centroid[1] + coef * (centroid[1] - simplex[hi][1]),
            ]
        };

        let reflected = shifted(REFLECT);
        let f_reflected = f(reflected)?;
        if f_reflected < values[lo] {
            let expanded = shifted(EXPAND);
            let f_expanded = f(expanded)?;
            if f_expanded < f_reflected {
                simplex[hi] = expanded;
                values[hi] = f_expanded;
            } else {
                simplex[hi] = reflected;
                values[hi] = f_reflected;
            }
        } else if f_reflected < values[mid] {
            simplex[hi] = reflected;
            values[hi] = f_reflected;
        } else {
            let contracted = shifted(-CONTRACT);
            let f_contracted = f(contracted)?;
            if f_contracted < values[hi] {
                simplex[hi] = contracted;
                values[hi] = f_contracted;
            } else {
                // shrink toward the best vertex
                for k in [mid, hi] {
                    simplex[k] = [
                        simplex[lo][0] + SHRINK * (simplex[k][0] - simplex[lo][0]),
                        simplex[lo][1] + SHRINK * (simplex[k][1] - simplex[lo][1]),
                    ];
                    values[k] = f(simplex[k])?;
                }
            }
        }
    }

    let mut best = 0;
    for k in 1..3 {
        if values[k] < values[best] {
            best = k;
        }
    }
    Ok((values[best], simplex[best]))
}
