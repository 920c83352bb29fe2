//! Closed-form single-image dehazing on the atmospheric scattering model,
//! with a matching haze synthesizer and a physical residual-haze audit.
//!
//! The three pieces share one vocabulary:
//!
//! * [`synth`] composites hazy images from clean radiance and depth, with
//!   seeded, bit-reproducible sampling of density, near-haze and airlight.
//! * [`proximal`] recovers radiance, transmission and airlight from a hazy
//!   image by a fixed number of closed-form block updates.
//! * [`audit`] re-runs the recovery on a dehazed result and scores how much
//!   haze it still detects.
//!
//! Everything is f64, row-major, and deterministic: reductions run in a
//! fixed order, so results do not depend on the rayon thread count.

pub mod audit;
pub mod depth;
mod error;
mod field;
pub mod metrics;
pub mod pfm;
pub mod proximal;
pub mod refine;
pub mod scattering;
pub mod synth;

pub use audit::{
    audit_dehazed, audit_dehazed_full, audit_weights, airlight_total_variation, quality_gate,
    residual_haze_score, score_gradient_energy, score_local_contrast, AuditReport, AuditWeights,
    COVERAGE_THRESHOLD, RESIDUAL_T_TARGET,
};
pub use depth::{procedural_depth, DepthMode};
pub use error::{Error, Result};
pub use field::{RgbImage, ScalarField};
pub use metrics::{mean_abs_diff, median, psnr};
pub use pfm::{
    read_pfm, read_pfm_from, write_rgb_pfm, write_rgb_pfm_to, write_scalar_pfm,
    write_scalar_pfm_to, PfmImage,
};
pub use proximal::{
    dehaze, prox_airlight, prox_radiance, prox_transmission, run_stage, ProximalWeights,
    StageConfig, StageTrace,
};
pub use refine::{
    refine_radiance, refine_transmission, RefinementKind, RefinementOperator, GUIDED_RANGE_SIGMA,
};
pub use scattering::{
    clamp_transmission, data_term, render_scattering, render_scattering_raw, ScatteringState,
    T_MIN,
};
pub use synth::{
    make_density_field, make_transmission, near_haze_depth_offset, sample_airlight, synthesize,
    AugmentSpec, DensitySample, NoiseFieldSpec, SampledParams, SynthesisOutput, SynthesisSpec,
};
