//! Image comparison metrics used by the round-trip harness.

use crate::error::{check_dims, Result};
use crate::field::{RgbImage, ScalarField};

/// Peak signal-to-noise ratio against a unit peak, in dB. Identical images
/// return infinity.
pub fn psnr(a: &RgbImage, b: &RgbImage) -> Result<f64> {
    check_dims("b", a.dims(), b.dims())?;
    let mut sum = 0.0;
    for (pa, pb) in a.data().iter().zip(b.data()) {
        for c in 0..3 {
            let d = pa[c] - pb[c];
            sum += d * d;
        }
    }
    let mse = sum / (3 * a.data().len()) as f64;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(-10.0 * mse.log10())
}

pub fn mean_abs_diff(a: &ScalarField, b: &ScalarField) -> Result<f64> {
    check_dims("b", a.dims(), b.dims())?;
    let sum: f64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).abs())
        .sum();
    Ok(sum / a.data().len() as f64)
}

/// Median by sorting; even lengths average the middle pair. None if empty.
pub fn median(mut values: Vec<f64>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("metrics never see NaN"));
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    })
}
