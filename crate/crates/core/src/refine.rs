//! Plug-in refinement of the analytic T and J updates.
//!
//! Refinement is residual-shaped: the operator smooths its input and blends
//! the change back in,
//!
//! ```text
//!     out = in + strength * (smoothed(in) - in)
//! ```
//!
//! so strength 0 (and the identity kind) reproduce the input bit for bit,
//! and constant inputs pass through every kind unchanged. Both smoothing
//! kinds touch only pixels within `radius` of the output pixel: the guided
//! average uses a (2r+1)^2 window, and the variation-diminishing kind runs
//! exactly `radius` one-pixel diffusion sweeps.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{RgbImage, ScalarField};

/// Range sigma of the guided average, in guide-luminance units. Neighbors
/// whose guide value differs by much more than this stop contributing.
pub const GUIDED_RANGE_SIGMA: f64 = 0.1;

const TV_STEP: f64 = 0.2;
const TV_EPS: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefinementKind {
    Identity,
    /// Box average gated by guide-luminance similarity.
    GuidedSmooth,
    /// Gradient-magnitude-normalized diffusion, one sweep per radius unit.
    TvSmooth,
}

impl std::str::FromStr for RefinementKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "identity" => Ok(Self::Identity),
            "guided_smooth" => Ok(Self::GuidedSmooth),
            "tv_smooth" => Ok(Self::TvSmooth),
            other => Err(format!(
                "unknown refinement kind {other:?} (expected identity, guided_smooth, or tv_smooth)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementOperator {
    pub kind: RefinementKind,
    /// Residual blend factor in [0, 1].
    pub strength: f64,
    /// Neighborhood half-width; must be >= 1 for the smoothing kinds.
    pub radius: usize,
}

impl RefinementOperator {
    pub fn identity() -> Self {
        Self {
            kind: RefinementKind::Identity,
            strength: 0.0,
            radius: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.strength.is_finite() && (0.0..=1.0).contains(&self.strength)) {
            return Err(Error::InvalidParameter {
                name: "strength",
                value: self.strength,
                requirement: "must lie in [0, 1]",
            });
        }
        if self.kind != RefinementKind::Identity && self.radius == 0 {
            return Err(Error::InvalidParameter {
                name: "radius",
                value: 0.0,
                requirement: "smoothing kinds need radius >= 1",
            });
        }
        Ok(())
    }
}

/// Refines a transmission update, guided by the luminance of the previous
/// radiance estimate.
pub fn refine_transmission(
    raw: &ScalarField,
    guide: &RgbImage,
    op: &RefinementOperator,
) -> Result<ScalarField> {
    op.validate()?;
    crate::error::check_dims("guide", raw.dims(), guide.dims())?;
    if is_identity(op) {
        return Ok(raw.clone());
    }
    let smoothed = match op.kind {
        RefinementKind::Identity => unreachable!(),
        RefinementKind::GuidedSmooth => guided_box_average(raw, &guide.luminance(), op.radius),
        RefinementKind::TvSmooth => tv_diffuse(raw, op.radius),
    };
    Ok(blend(raw, &smoothed, op.strength))
}

/// Refines a radiance update channel by channel. The smoothing is
/// self-guided; `_transmission` and `_airlight` are part of the operator
/// contract for implementations that want them.
pub fn refine_radiance(
    raw: &RgbImage,
    _transmission: &ScalarField,
    _airlight: &RgbImage,
    op: &RefinementOperator,
) -> Result<RgbImage> {
    op.validate()?;
    if is_identity(op) {
        return Ok(raw.clone());
    }
    let guide = raw.luminance();
    let (w, h) = raw.dims();
    let mut channels = Vec::with_capacity(3);
    for c in 0..3 {
        let chan = ScalarField::from_fn(w, h, |x, y| raw.pixel(x, y)[c]);
        let smoothed = match op.kind {
            RefinementKind::Identity => unreachable!(),
            RefinementKind::GuidedSmooth => guided_box_average(&chan, &guide, op.radius),
            RefinementKind::TvSmooth => tv_diffuse(&chan, op.radius),
        };
        channels.push(blend(&chan, &smoothed, op.strength));
    }
    Ok(RgbImage::from_fn(w, h, |x, y| {
        [
            channels[0].get(x, y),
            channels[1].get(x, y),
            channels[2].get(x, y),
        ]
    }))
}

fn is_identity(op: &RefinementOperator) -> bool {
    op.kind == RefinementKind::Identity || op.strength == 0.0
}

fn blend(raw: &ScalarField, smoothed: &ScalarField, strength: f64) -> ScalarField {
    let (w, h) = raw.dims();
    let data: Vec<f64> = raw
        .data()
        .iter()
        .zip(smoothed.data())
        .map(|(&r, &s)| r + strength * (s - r))
        .collect();
    ScalarField::from_vec(w, h, data).expect("blend preserves shape and finiteness")
}

fn guided_box_average(src: &ScalarField, guide: &ScalarField, radius: usize) -> ScalarField {
    let (w, h) = src.dims();
    let r = radius as i64;
    let inv_two_sigma_sq = 1.0 / (2.0 * GUIDED_RANGE_SIGMA * GUIDED_RANGE_SIGMA);
    let rows: Vec<Vec<f64>> = (0..h as i64)
        .into_par_iter()
        .map(|y| {
            let mut row = Vec::with_capacity(w);
            for x in 0..w as i64 {
                let gc = guide.get(x as usize, y as usize);
                let mut num = 0.0;
                let mut den = 0.0;
                for ny in (y - r).max(0)..=(y + r).min(h as i64 - 1) {
                    for nx in (x - r).max(0)..=(x + r).min(w as i64 - 1) {
                        let gn = guide.get(nx as usize, ny as usize);
                        let d = gn - gc;
                        let wgt = (-d * d * inv_two_sigma_sq).exp();
                        num += wgt * src.get(nx as usize, ny as usize);
                        den += wgt;
                    }
                }
                row.push(num / den);
            }
            row
        })
        .collect();
    ScalarField::from_vec(w, h, rows.concat()).expect("filter preserves shape and finiteness")
}

/// Runs `sweeps` explicit steps of u += step * div(grad u / |grad u|_eps).
/// Forward differences for the gradient, the matching backward divergence,
/// zero contribution across the border.
fn tv_diffuse(src: &ScalarField, sweeps: usize) -> ScalarField {
    let (w, h) = src.dims();
    let mut u = src.clone();
    for _ in 0..sweeps {
        let mut nx = vec![0.0; w * h];
        let mut ny = vec![0.0; w * h];
        for y in 0..h {
            for x in 0..w {
                let v = u.get(x, y);
                let gx = if x + 1 < w { u.get(x + 1, y) - v } else { 0.0 };
                let gy = if y + 1 < h { u.get(x, y + 1) - v } else { 0.0 };
                let mag = (gx * gx + gy * gy + TV_EPS * TV_EPS).sqrt();
                nx[y * w + x] = gx / mag;
                ny[y * w + x] = gy / mag;
            }
        }
        let mut next = u.clone();
        for y in 0..h {
            for x in 0..w {
                let div = nx[y * w + x] - if x > 0 { nx[y * w + x - 1] } else { 0.0 }
                    + ny[y * w + x]
                    - if y > 0 { ny[(y - 1) * w + x] } else { 0.0 };
                next.set(x, y, u.get(x, y) + TV_STEP * div);
            }
        }
        u = next;
    }
    u
}
