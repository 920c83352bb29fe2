//! Physical plausibility audit of a dehazed image.
//!
//! The audit re-runs the staged reconstruction on the dehazed image itself.
//! If haze was truly removed, the re-estimated transmission should be near
//! 1; mass below the target reveals residue. Pixels where transmission is
//! not identifiable are down-weighted before scoring:
//!
//! * `airlight_distance`: pixels colored like the airlight carry no signal.
//! * `texture`: flat regions cannot separate haze from surface shading.
//! * `highlight`: bright pixels saturate the brightness cue.
//!
//! Each cue is min-max normalized per image (constant cues normalize to
//! zero) and combined as `max(dist, tex) * dist * highlight`. The residual
//! score is the weighted average hinge below the transmission target.

use crate::error::{check_dims, Error, Result};
use crate::field::{RgbImage, ScalarField};
use crate::proximal::{dehaze, StageConfig};
use crate::scattering::ScatteringState;

/// Transmission a fully dehazed image is expected to reach.
pub const RESIDUAL_T_TARGET: f64 = 0.9;

/// Combined-weight level above which a pixel counts as covered.
pub const COVERAGE_THRESHOLD: f64 = 0.1;

const SCORE_EPS: f64 = 1e-6;

/// Per-pixel reliability maps; all values lie in [0, 1].
#[derive(Debug, Clone)]
pub struct AuditWeights {
    pub airlight_distance: ScalarField,
    pub texture: ScalarField,
    pub highlight: ScalarField,
    pub combined: ScalarField,
}

#[derive(Debug, Clone, Copy)]
pub struct AuditReport {
    pub residual_haze_score: f64,
    pub transmission_min: f64,
    pub transmission_median: f64,
    pub transmission_mean: f64,
    /// Fraction of pixels whose combined weight clears
    /// [`COVERAGE_THRESHOLD`].
    pub weight_coverage: f64,
    pub airlight_tv: f64,
}

/// Builds the reliability maps for a radiance estimate against a
/// (re-)estimated airlight.
pub fn audit_weights(radiance: &RgbImage, airlight: &RgbImage) -> Result<AuditWeights> {
    check_dims("airlight", radiance.dims(), airlight.dims())?;
    let (w, h) = radiance.dims();

    let dist_raw = ScalarField::from_fn(w, h, |x, y| {
        let j = radiance.pixel(x, y);
        let a = airlight.pixel(x, y);
        ((j[0] - a[0]).abs() + (j[1] - a[1]).abs() + (j[2] - a[2]).abs()) / 3.0
    });
    let luma = radiance.luminance();
    let tex_raw = ScalarField::from_fn(w, h, |x, y| {
        let v = luma.get(x, y);
        let gx = if x + 1 < w { luma.get(x + 1, y) - v } else { 0.0 };
        let gy = if y + 1 < h { luma.get(x, y + 1) - v } else { 0.0 };
        (gx * gx + gy * gy).sqrt()
    });

    let airlight_distance = dist_raw.normalized();
    let texture = tex_raw.normalized();
    let highlight = radiance.max_channel().normalized().map(|v| 1.0 - v);
    let combined = ScalarField::from_fn(w, h, |x, y| {
        let d = airlight_distance.get(x, y);
        let t = texture.get(x, y);
        d.max(t) * d * highlight.get(x, y)
    });
    Ok(AuditWeights {
        airlight_distance,
        texture,
        highlight,
        combined,
    })
}

/// Weighted average hinge mass below `t_target`. Zero exactly when the
/// transmission clears the target wherever weights are positive.
pub fn residual_haze_score(
    transmission: &ScalarField,
    weights: &ScalarField,
    t_target: f64,
) -> Result<f64> {
    check_dims("weights", transmission.dims(), weights.dims())?;
    crate::error::check_unit_interval("t_target", t_target)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for (t, w) in transmission.data().iter().zip(weights.data()) {
        num += w * (t_target - t).max(0.0);
        den += w;
    }
    Ok(num / (den + SCORE_EPS))
}

/// Anisotropic total variation of the airlight estimate: forward
/// differences, replicate boundary, summed over channels. Constant fields
/// score zero; the value is shift-invariant.
pub fn airlight_total_variation(airlight: &RgbImage) -> f64 {
    let (w, h) = airlight.dims();
    let mut total = 0.0;
    for y in 0..h {
        for x in 0..w {
            let p = airlight.pixel(x, y);
            let px = if x + 1 < w { airlight.pixel(x + 1, y) } else { p };
            let py = if y + 1 < h { airlight.pixel(x, y + 1) } else { p };
            for c in 0..3 {
                total += (px[c] - p[c]).abs() + (py[c] - p[c]).abs();
            }
        }
    }
    total
}

/// Audits a dehazed image by reconstructing it again and scoring the
/// re-estimated transmission. Returns the report plus the weights and the
/// reconstruction, so callers can emit them without a second run.
pub fn audit_dehazed_full(
    dehazed: &RgbImage,
    config: &StageConfig,
) -> Result<(AuditReport, AuditWeights, ScatteringState)> {
    let (state, _) = dehaze(dehazed, config)?;
    let weights = audit_weights(dehazed, &state.airlight)?;
    let score = residual_haze_score(&state.transmission, &weights.combined, RESIDUAL_T_TARGET)?;
    let covered = weights
        .combined
        .data()
        .iter()
        .filter(|&&w| w > COVERAGE_THRESHOLD)
        .count();
    let report = AuditReport {
        residual_haze_score: score,
        transmission_min: state.transmission.min(),
        transmission_median: state.transmission.median(),
        transmission_mean: state.transmission.mean(),
        weight_coverage: covered as f64 / weights.combined.data().len() as f64,
        airlight_tv: airlight_total_variation(&state.airlight),
    };
    Ok((report, weights, state))
}

pub fn audit_dehazed(dehazed: &RgbImage, config: &StageConfig) -> Result<AuditReport> {
    Ok(audit_dehazed_full(dehazed, config)?.0)
}

/// Strict teacher-beats-student comparison: true only if the teacher wins
/// every paired score.
pub fn quality_gate(teacher_scores: &[f64], student_scores: &[f64]) -> Result<bool> {
    if teacher_scores.is_empty() {
        return Err(Error::EmptyInput {
            what: "teacher_scores",
        });
    }
    if teacher_scores.len() != student_scores.len() {
        return Err(Error::LengthMismatch {
            what: "student_scores",
            left: student_scores.len(),
            right: teacher_scores.len(),
        });
    }
    Ok(teacher_scores
        .iter()
        .zip(student_scores)
        .all(|(t, s)| t > s))
}

/// Mean local standard deviation of luminance over 3x3 windows. Higher
/// means more visible detail.
pub fn score_local_contrast(img: &RgbImage) -> f64 {
    let luma = img.luminance();
    let (w, h) = luma.dims();
    let mut total = 0.0;
    for y in 0..h {
        for x in 0..w {
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            let mut n = 0.0;
            for ny in y.saturating_sub(1)..=(y + 1).min(h - 1) {
                for nx in x.saturating_sub(1)..=(x + 1).min(w - 1) {
                    let v = luma.get(nx, ny);
                    sum += v;
                    sum_sq += v * v;
                    n += 1.0;
                }
            }
            let mean = sum / n;
            total += (sum_sq / n - mean * mean).max(0.0).sqrt();
        }
    }
    total / (w * h) as f64
}

/// Mean squared luminance gradient (forward differences). Higher means
/// stronger edges.
pub fn score_gradient_energy(img: &RgbImage) -> f64 {
    let luma = img.luminance();
    let (w, h) = luma.dims();
    let mut total = 0.0;
    for y in 0..h {
        for x in 0..w {
            let v = luma.get(x, y);
            let gx = if x + 1 < w { luma.get(x + 1, y) - v } else { 0.0 };
            let gy = if y + 1 < h { luma.get(x, y + 1) - v } else { 0.0 };
            total += gx * gx + gy * gy;
        }
    }
    total / (w * h) as f64
}
