//! Exact propagation of a state under a piecewise-constant generator, a
//! fixed-step numerical cross-check, and steady-state extraction.
//!
//! Propagation appends two absorbing counter rows to the 7×7 generator: one
//! integrating the photocurrent-generating ionization flux and one the
//! radiated-photon flux. A single matrix exponential of the augmented 9×9
//! system then yields the final populations and both time integrals at
//! machine precision, with no quadrature error. The independent fixed-step
//! integrator exists to validate that construction.

use nalgebra::SVector;

use crate::error::{Error, Result};
use crate::expm::{expm, Matrix9, AUG_DIM};
use crate::generator::GeneratorMatrix;
use crate::model::level::{Populations, StateVector, POPULATION_FLOOR, TRACE_TOL};
use crate::model::LEVEL_COUNT;

type Vector9 = SVector<f64, AUG_DIM>;

const CHARGE_ROW: usize = LEVEL_COUNT;
const PHOTON_ROW: usize = LEVEL_COUNT + 1;

/// One sampled point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    /// Time since the start of the segment (µs).
    pub time_us: f64,
    pub state: StateVector,
}

/// Result of propagating one constant-generator segment.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentResult {
    /// State at the end of the segment, with accumulators advanced.
    pub state: StateVector,
    /// Charge collected during this segment (AU).
    pub delta_q: f64,
    /// Photons radiated during this segment (AU).
    pub delta_f: f64,
    /// Sampled trajectory, present when a stride was requested.
    pub trajectory: Option<Vec<TrajectorySample>>,
}

/// Assemble the augmented 9×9 system: generator block plus two absorbing
/// counter rows fed by the ionization and radiative fluxes.
fn augmented(g: &GeneratorMatrix) -> Matrix9 {
    let mut m = Matrix9::zeros();
    for col in 0..LEVEL_COUNT {
        for row in 0..LEVEL_COUNT {
            m[(row, col)] = g.matrix()[(row, col)];
        }
        m[(CHARGE_ROW, col)] = g.charge_flux()[col];
        m[(PHOTON_ROW, col)] = g.photon_flux()[col];
    }
    m
}

fn embed(state: &StateVector) -> Vector9 {
    let mut y = Vector9::zeros();
    for i in 0..LEVEL_COUNT {
        y[i] = state.populations()[i];
    }
    // Counter rows start at zero so they read out per-segment deltas.
    y
}

fn extract(state: &StateVector, y: &Vector9) -> Result<(StateVector, f64, f64)> {
    let p = Populations::from_fn(|i, _| y[i]);
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > TRACE_TOL {
        return Err(Error::Numerical(format!(
            "population trace drifted to {total}"
        )));
    }
    if let Some(&bad) = p.iter().find(|&&x| x < POPULATION_FLOOR) {
        return Err(Error::Numerical(format!(
            "population {bad} fell below the numerical floor"
        )));
    }
    let (dq, df) = (y[CHARGE_ROW], y[PHOTON_ROW]);
    if dq < POPULATION_FLOOR * 1e3 || df < POPULATION_FLOOR * 1e3 {
        return Err(Error::Numerical(format!(
            "negative accumulator increment ({dq}, {df})"
        )));
    }
    let delta_q = dq.max(0.0);
    let delta_f = df.max(0.0);
    let out = StateVector::from_parts(
        p,
        state.charge_acc() + delta_q,
        state.photons_acc() + delta_f,
    )?;
    Ok((out, delta_q, delta_f))
}

fn identity_segment(state: &StateVector, sampled: bool) -> SegmentResult {
    SegmentResult {
        state: *state,
        delta_q: 0.0,
        delta_f: 0.0,
        trajectory: sampled.then(|| {
            vec![TrajectorySample {
                time_us: 0.0,
                state: *state,
            }]
        }),
    }
}

/// Propagate exactly for `duration_us` under a constant generator.
pub fn propagate(
    state: &StateVector,
    g: &GeneratorMatrix,
    duration_us: f64,
) -> Result<SegmentResult> {
    propagate_sampled(state, g, duration_us, None)
}

/// Propagate exactly, optionally sampling the trajectory every `stride_us`.
/// Sampling is observational: the final state and the accumulated deltas are
/// always computed from a single full-duration exponential, so results are
/// bit-identical whatever the stride.
pub fn propagate_sampled(
    state: &StateVector,
    g: &GeneratorMatrix,
    duration_us: f64,
    stride_us: Option<f64>,
) -> Result<SegmentResult> {
    if !duration_us.is_finite() || duration_us < 0.0 {
        return Err(Error::NegativeDuration { us: duration_us });
    }
    if let Some(s) = stride_us {
        if s.is_nan() || s <= 0.0 {
            return Err(Error::Numerical(format!("stride must be positive, got {s}")));
        }
    }
    if duration_us == 0.0 {
        return Ok(identity_segment(state, stride_us.is_some()));
    }

    let m = augmented(g);
    let e_full = expm(&(m * duration_us))?;
    let y = e_full * embed(state);
    let (final_state, delta_q, delta_f) = extract(state, &y)?;

    let trajectory = match stride_us {
        None => None,
        Some(stride) => {
            let mut samples = Vec::new();
            samples.push(TrajectorySample {
                time_us: 0.0,
                state: *state,
            });
            let e_stride = expm(&(m * stride))?;
            let mut y_s = embed(state);
            let mut t = stride;
            while t < duration_us {
                y_s = e_stride * y_s;
                let (st, _, _) = extract(state, &y_s)?;
                samples.push(TrajectorySample { time_us: t, state: st });
                t += stride;
            }
            samples.push(TrajectorySample {
                time_us: duration_us,
                state: final_state,
            });
            Some(samples)
        }
    };

    Ok(SegmentResult {
        state: final_state,
        delta_q,
        delta_f,
        trajectory,
    })
}

/// Classic fixed-step fourth-order integration of the same augmented system,
/// kept free of any matrix-exponential machinery so it can serve as an
/// independent oracle for [`propagate`].
pub fn propagate_numeric(
    state: &StateVector,
    g: &GeneratorMatrix,
    duration_us: f64,
    step_us: f64,
) -> Result<SegmentResult> {
    if !duration_us.is_finite() || duration_us < 0.0 {
        return Err(Error::NegativeDuration { us: duration_us });
    }
    if duration_us == 0.0 {
        return Ok(identity_segment(state, false));
    }
    if step_us.is_nan() || step_us <= 0.0 || step_us > duration_us {
        return Err(Error::BadStep {
            step_us,
            duration_us,
        });
    }

    let m = augmented(g);
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("non-finite generator entry".into()));
    }
    let n = (duration_us / step_us).ceil() as u64;
    let h = duration_us / n as f64;

    let mut y = embed(state);
    for _ in 0..n {
        let k1 = m * y;
        let k2 = m * (y + k1 * (h / 2.0));
        let k3 = m * (y + k2 * (h / 2.0));
        let k4 = m * (y + k3 * h);
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }

    let (final_state, delta_q, delta_f) = extract(state, &y)?;
    Ok(SegmentResult {
        state: final_state,
        delta_q,
        delta_f,
        trajectory: None,
    })
}

/// A steady state plus a degeneracy flag. `degenerate` is set when the
/// generator's null space is multi-dimensional (disconnected chains), in
/// which case the returned state is the long-time limit of propagation from
/// the provided (or uniform) start.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub state: StateVector,
    pub degenerate: bool,
}

/// Relative singular-value threshold below which a direction counts as null.
const NULL_TOL: f64 = 1e-10;
/// Convergence threshold for long-time propagation.
const FIXPOINT_TOL: f64 = 1e-12;
const FIXPOINT_BUDGET: usize = 64;

/// Steady state from the default uniform start (only relevant when the
/// null space is degenerate).
pub fn steady_state(g: &GeneratorMatrix) -> Result<SteadyState> {
    steady_state_from(g, None)
}

/// Steady state via null-space extraction, falling back to long-time
/// propagation from `start` when the null space is degenerate or the null
/// vector is not a probability distribution.
pub fn steady_state_from(g: &GeneratorMatrix, start: Option<&StateVector>) -> Result<SteadyState> {
    let default_start = StateVector::uniform();
    let start = start.copied().unwrap_or(default_start);

    let svd = g.matrix().svd(false, true);
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        // Null dynamics: every state is steady.
        return Ok(SteadyState {
            state: start,
            degenerate: true,
        });
    }
    let tol = smax * NULL_TOL;
    let null_count = svd.singular_values.iter().filter(|&&s| s <= tol).count();

    if null_count == 0 {
        // Every generator has a null vector (columns sum to zero); failing
        // to resolve one is a conditioning artifact, so settle by
        // propagation instead.
        return propagate_to_fixpoint(g, &start, false);
    }
    if null_count == 1 {
        // Right singular vector of the smallest singular value. nalgebra
        // sorts singular values in descending order.
        let v_t = svd
            .v_t
            .ok_or_else(|| Error::Numerical("SVD did not return V^T".into()))?;
        let v = v_t.row(LEVEL_COUNT - 1).transpose();
        let sum: f64 = v.iter().sum();
        if sum.abs() > 1e-8 {
            let mut p = v / sum;
            if p.min() >= -1e-9 {
                // Clean up rounding and renormalize.
                p.iter_mut().for_each(|x| *x = x.max(0.0));
                let total: f64 = p.iter().sum();
                p /= total;
                let state = StateVector::from_parts(p, 0.0, 0.0)?;
                return Ok(SteadyState {
                    state,
                    degenerate: false,
                });
            }
        }
        // Mixed-sign or unnormalizable null vector: settle it by propagation.
        return propagate_to_fixpoint(g, &start, false);
    }

    // Multi-dimensional null space: disconnected chains, start-dependent.
    propagate_to_fixpoint(g, &start, true)
}

fn propagate_to_fixpoint(
    g: &GeneratorMatrix,
    start: &StateVector,
    degenerate: bool,
) -> Result<SteadyState> {
    let min_rate = g
        .min_nonzero_rate()
        .ok_or_else(|| Error::Numerical("generator has no nonzero rates".into()))?;
    let horizon = 1000.0 / min_rate;

    let mut current = StateVector::from_parts(*start.populations(), 0.0, 0.0)?;
    for _ in 0..FIXPOINT_BUDGET {
        let next = propagate(&current, g, horizon)?.state;
        let moved = (next.populations() - current.populations()).amax();
        let next = StateVector::from_parts(*next.populations(), 0.0, 0.0)?;
        if moved <= FIXPOINT_TOL {
            return Ok(SteadyState {
                state: next,
                degenerate,
            });
        }
        current = next;
    }
    Err(Error::Numerical(format!(
        "steady state did not converge within {FIXPOINT_BUDGET} relaxation steps"
    )))
}
