//! Staged proximal reconstruction of (J, T, A) from a single hazy image.
//!
//! Each stage minimizes the quadratic data term one block at a time while
//! anchoring the block to its previous value:
//!
//! ```text
//!     argmin_X  1/2 ||P - T*J - (1-T)*A||^2 + lambda_X/2 ||X - X_prev||^2
//! ```
//!
//! All three subproblems are strictly convex for lambda > 0 and solve in
//! closed form per pixel:
//!
//! ```text
//!     A* = ((1-T)(P - J*T) + la*A_prev) / ((1-T)^2 + la)          per channel
//!     T* = (lt*T_prev + sum_c (A-J)(A-P)) / (lt + sum_c (A-J)^2)
//!     J* = (T*P + T^2*A - T*A + lj*J_prev) / (T^2 + lj)           per channel
//! ```
//!
//! A stage runs A then T then J. The airlight update is purely proximal;
//! the T and J updates each pass through a configurable refinement operator
//! before use, and T is clamped to [T_MIN, 1] after refinement. Because
//! every accepted point either minimizes its block objective or lies
//! between the previous iterate and that minimizer on a parabola, the data
//! term never increases across a stage when the refinements are identity.

use rayon::prelude::*;

use crate::error::{check_positive, Result};
use crate::field::{RgbImage, ScalarField};
use crate::refine::{refine_radiance, refine_transmission, RefinementOperator};
use crate::scattering::{clamp_transmission, data_term, ScatteringState};

/// Proximal anchor weights, one per block. All must be positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProximalWeights {
    pub lambda_airlight: f64,
    pub lambda_transmission: f64,
    pub lambda_radiance: f64,
}

impl Default for ProximalWeights {
    fn default() -> Self {
        Self {
            lambda_airlight: 0.1,
            lambda_transmission: 0.1,
            lambda_radiance: 0.1,
        }
    }
}

impl ProximalWeights {
    pub fn new(lambda_airlight: f64, lambda_transmission: f64, lambda_radiance: f64) -> Result<Self> {
        let w = Self {
            lambda_airlight,
            lambda_transmission,
            lambda_radiance,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("lambda_airlight", self.lambda_airlight)?;
        check_positive("lambda_transmission", self.lambda_transmission)?;
        check_positive("lambda_radiance", self.lambda_radiance)?;
        Ok(())
    }
}

/// Settings for one reconstruction run.
#[derive(Debug, Clone)]
pub struct StageConfig {
    pub num_stages: usize,
    pub weights: ProximalWeights,
    pub refine_transmission: RefinementOperator,
    pub refine_radiance: RefinementOperator,
    /// Record the data term before the first stage and after each stage.
    pub record_objective: bool,
    /// Keep every intermediate state and each stage's unclamped T update.
    pub record_states: bool,
}

impl Default for StageConfig {
    fn default() -> Self {
        Self {
            num_stages: 4,
            weights: ProximalWeights::default(),
            refine_transmission: RefinementOperator::identity(),
            refine_radiance: RefinementOperator::identity(),
            record_objective: true,
            record_states: false,
        }
    }
}

/// What a reconstruction run recorded while it iterated.
///
/// `data_terms` has `num_stages + 1` entries (initial state first) when
/// objectives were recorded, and is empty otherwise. `states` likewise
/// holds `num_stages + 1` states; `raw_transmissions` holds each stage's
/// analytic T update before refinement and clamping.
#[derive(Debug, Clone, Default)]
pub struct StageTrace {
    pub data_terms: Vec<f64>,
    pub states: Option<Vec<ScatteringState>>,
    pub raw_transmissions: Option<Vec<ScalarField>>,
}

/// Closed-form airlight block update.
pub fn prox_airlight(
    observed: &RgbImage,
    radiance: &RgbImage,
    transmission: &ScalarField,
    airlight_prev: &RgbImage,
    lambda: f64,
) -> Result<RgbImage> {
    check_positive("lambda_airlight", lambda)?;
    let state = ScatteringState {
        radiance: radiance.clone(),
        transmission: transmission.clone(),
        airlight: airlight_prev.clone(),
    };
    state.check_against(observed)?;

    let p = observed.data();
    let j = radiance.data();
    let t = transmission.data();
    let a_prev = airlight_prev.data();
    let data: Vec<[f64; 3]> = (0..p.len())
        .into_par_iter()
        .map(|i| {
            let omt = 1.0 - t[i];
            let denom = omt * omt + lambda;
            let mut out = [0.0; 3];
            for c in 0..3 {
                out[c] = (omt * (p[i][c] - j[i][c] * t[i]) + lambda * a_prev[i][c]) / denom;
            }
            out
        })
        .collect();
    let (w, h) = observed.dims();
    Ok(RgbImage::from_vec(w, h, data).expect("update preserves shape and finiteness"))
}

/// Closed-form transmission block update. The result is the unconstrained
/// minimizer; callers clamp separately via [`clamp_transmission`].
pub fn prox_transmission(
    observed: &RgbImage,
    radiance: &RgbImage,
    transmission_prev: &ScalarField,
    airlight: &RgbImage,
    lambda: f64,
) -> Result<ScalarField> {
    check_positive("lambda_transmission", lambda)?;
    let state = ScatteringState {
        radiance: radiance.clone(),
        transmission: transmission_prev.clone(),
        airlight: airlight.clone(),
    };
    state.check_against(observed)?;

    let p = observed.data();
    let j = radiance.data();
    let t_prev = transmission_prev.data();
    let a = airlight.data();
    let data: Vec<f64> = (0..p.len())
        .into_par_iter()
        .map(|i| {
            let mut num = lambda * t_prev[i];
            let mut den = lambda;
            for c in 0..3 {
                let aj = a[i][c] - j[i][c];
                num += aj * (a[i][c] - p[i][c]);
                den += aj * aj;
            }
            num / den
        })
        .collect();
    let (w, h) = observed.dims();
    Ok(ScalarField::from_vec(w, h, data).expect("update preserves shape and finiteness"))
}

/// Closed-form radiance block update.
pub fn prox_radiance(
    observed: &RgbImage,
    radiance_prev: &RgbImage,
    transmission: &ScalarField,
    airlight: &RgbImage,
    lambda: f64,
) -> Result<RgbImage> {
    check_positive("lambda_radiance", lambda)?;
    let state = ScatteringState {
        radiance: radiance_prev.clone(),
        transmission: transmission.clone(),
        airlight: airlight.clone(),
    };
    state.check_against(observed)?;

    let p = observed.data();
    let j_prev = radiance_prev.data();
    let t = transmission.data();
    let a = airlight.data();
    let data: Vec<[f64; 3]> = (0..p.len())
        .into_par_iter()
        .map(|i| {
            let ti = t[i];
            let denom = ti * ti + lambda;
            let mut out = [0.0; 3];
            for c in 0..3 {
                out[c] =
                    (ti * p[i][c] + ti * ti * a[i][c] - ti * a[i][c] + lambda * j_prev[i][c]) / denom;
            }
            out
        })
        .collect();
    let (w, h) = observed.dims();
    Ok(RgbImage::from_vec(w, h, data).expect("update preserves shape and finiteness"))
}

fn stage_with_raw(
    observed: &RgbImage,
    state: &ScatteringState,
    config: &StageConfig,
) -> Result<(ScatteringState, ScalarField)> {
    let w = &config.weights;
    let airlight = prox_airlight(
        observed,
        &state.radiance,
        &state.transmission,
        &state.airlight,
        w.lambda_airlight,
    )?;
    let raw_t = prox_transmission(
        observed,
        &state.radiance,
        &state.transmission,
        &airlight,
        w.lambda_transmission,
    )?;
    let refined_t = refine_transmission(&raw_t, &state.radiance, &config.refine_transmission)?;
    let transmission = clamp_transmission(&refined_t);
    let raw_j = prox_radiance(
        observed,
        &state.radiance,
        &transmission,
        &airlight,
        w.lambda_radiance,
    )?;
    let radiance = refine_radiance(&raw_j, &transmission, &airlight, &config.refine_radiance)?;
    Ok((
        ScatteringState {
            radiance,
            transmission,
            airlight,
        },
        raw_t,
    ))
}

/// One stage: airlight, then transmission (refined, clamped), then radiance
/// (refined).
pub fn run_stage(
    observed: &RgbImage,
    state: &ScatteringState,
    config: &StageConfig,
) -> Result<ScatteringState> {
    config.weights.validate()?;
    config.refine_transmission.validate()?;
    config.refine_radiance.validate()?;
    Ok(stage_with_raw(observed, state, config)?.0)
}

/// Full reconstruction: starts from [`ScatteringState::initial`] and runs
/// `config.num_stages` stages.
pub fn dehaze(observed: &RgbImage, config: &StageConfig) -> Result<(ScatteringState, StageTrace)> {
    config.weights.validate()?;
    config.refine_transmission.validate()?;
    config.refine_radiance.validate()?;

    let mut state = ScatteringState::initial(observed);
    let mut trace = StageTrace::default();
    if config.record_objective {
        trace.data_terms.push(data_term(observed, &state)?);
    }
    if config.record_states {
        trace.states = Some(vec![state.clone()]);
        trace.raw_transmissions = Some(Vec::new());
    }

    for _ in 0..config.num_stages {
        let (next, raw_t) = stage_with_raw(observed, &state, config)?;
        state = next;
        if config.record_objective {
            trace.data_terms.push(data_term(observed, &state)?);
        }
        if let Some(states) = trace.states.as_mut() {
            states.push(state.clone());
        }
        if let Some(raws) = trace.raw_transmissions.as_mut() {
            raws.push(raw_t);
        }
    }
    Ok((state, trace))
}
