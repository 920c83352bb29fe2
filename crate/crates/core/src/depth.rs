//! Procedural depth maps for synthesis when no measured depth is supplied.
//! Convention: 1 is nearest to the camera, 0 is farthest.

use crate::field::ScalarField;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthMode {
    /// Linear ramp, far at the top row, near at the bottom row.
    Vertical,
    /// Far at the image center, near toward the corners.
    Radial,
    /// Far plane (0.2) on the top half, near plane (0.8) below.
    TwoPlane,
}

impl std::str::FromStr for DepthMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "vertical" => Ok(Self::Vertical),
            "radial" => Ok(Self::Radial),
            "two-plane" => Ok(Self::TwoPlane),
            other => Err(format!(
                "unknown depth mode {other:?} (expected vertical, radial, or two-plane)"
            )),
        }
    }
}

pub fn procedural_depth(mode: DepthMode, width: usize, height: usize) -> ScalarField {
    match mode {
        DepthMode::Vertical => {
            if height == 1 {
                return ScalarField::constant(width, 1, 1.0);
            }
            ScalarField::from_fn(width, height, |_, y| y as f64 / (height - 1) as f64)
        }
        DepthMode::Radial => {
            let cx = (width - 1) as f64 / 2.0;
            let cy = (height - 1) as f64 / 2.0;
            let rmax = (cx * cx + cy * cy).sqrt();
            if rmax == 0.0 {
                return ScalarField::constant(width, height, 1.0);
            }
            ScalarField::from_fn(width, height, |x, y| {
                let dx = x as f64 - cx;
                let dy = y as f64 - cy;
                ((dx * dx + dy * dy).sqrt() / rmax).min(1.0)
            })
        }
        DepthMode::TwoPlane => {
            ScalarField::from_fn(width, height, |_, y| if y < height / 2 { 0.2 } else { 0.8 })
        }
    }
}
