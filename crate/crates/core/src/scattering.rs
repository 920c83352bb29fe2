//! Atmospheric scattering model.
//!
//! A hazy observation P relates to scene radiance J, transmission T and
//! (spatially varying) airlight A pixel-wise per channel:
//!
//! ```text
//!     P(x) = T(x) * J(x) + (1 - T(x)) * A(x)
//! ```
//!
//! The fit of a candidate decomposition to an observation is the quadratic
//!
//! ```text
//!     D = 1/2 * sum_x sum_c (P - T*J - (1-T)*A)^2
//! ```
//!
//! summed in a fixed row-major order so the value is reproducible bit for
//! bit regardless of thread count.

use crate::error::{check_dims, Result};
use crate::field::{RgbImage, ScalarField};

/// Transmission floor applied by [`clamp_transmission`]. Keeps the radiance
/// recovery `(P - (1-T)A) / T` well conditioned.
pub const T_MIN: f64 = 1e-3;

/// One full model state: the three unknowns of the decomposition.
#[derive(Debug, Clone)]
pub struct ScatteringState {
    pub radiance: RgbImage,
    pub transmission: ScalarField,
    pub airlight: RgbImage,
}

impl ScatteringState {
    /// Starting point for the staged reconstruction: radiance adopts the
    /// observation, airlight starts at a bright gray 0.9, transmission at
    /// the uninformative midpoint 0.5.
    pub fn initial(observed: &RgbImage) -> Self {
        let (w, h) = observed.dims();
        Self {
            radiance: observed.clone(),
            transmission: ScalarField::constant(w, h, 0.5),
            airlight: RgbImage::constant(w, h, [0.9; 3]),
        }
    }

    pub(crate) fn check_against(&self, observed: &RgbImage) -> Result<()> {
        let dims = observed.dims();
        check_dims("radiance", dims, self.radiance.dims())?;
        check_dims("transmission", dims, self.transmission.dims())?;
        check_dims("airlight", dims, self.airlight.dims())?;
        Ok(())
    }
}

/// Composites a hazy image from a decomposition, clamped to [0, 1].
///
/// For in-range inputs (J, A in [0,1], T in [0,1]) the blend is convex and
/// the clamp never fires; see [`render_scattering_raw`] for the unclamped
/// value used by consistency checks.
pub fn render_scattering(
    radiance: &RgbImage,
    transmission: &ScalarField,
    airlight: &RgbImage,
) -> Result<RgbImage> {
    Ok(render_scattering_raw(radiance, transmission, airlight)?.clamped01())
}

/// Same composite without the output clamp.
pub fn render_scattering_raw(
    radiance: &RgbImage,
    transmission: &ScalarField,
    airlight: &RgbImage,
) -> Result<RgbImage> {
    let dims = radiance.dims();
    check_dims("transmission", dims, transmission.dims())?;
    check_dims("airlight", dims, airlight.dims())?;
    let mut out = radiance.clone();
    for (i, px) in out.data_mut().iter_mut().enumerate() {
        let t = transmission.data()[i];
        let a = airlight.data()[i];
        for c in 0..3 {
            px[c] = t * px[c] + (1.0 - t) * a[c];
        }
    }
    Ok(out)
}

/// Quadratic data term of a state against an observation. Zero exactly when
/// the state reproduces the observation.
pub fn data_term(observed: &RgbImage, state: &ScatteringState) -> Result<f64> {
    state.check_against(observed)?;
    let mut total = 0.0;
    for (i, p) in observed.data().iter().enumerate() {
        let t = state.transmission.data()[i];
        let j = state.radiance.data()[i];
        let a = state.airlight.data()[i];
        for c in 0..3 {
            let r = p[c] - t * j[c] - (1.0 - t) * a[c];
            total += 0.5 * r * r;
        }
    }
    Ok(total)
}

/// Restricts a transmission map to [`T_MIN`, 1].
pub fn clamp_transmission(t: &ScalarField) -> ScalarField {
    t.clamped(T_MIN, 1.0)
}
