//! Dense row-major pixel grids. `ScalarField` holds one f64 per pixel,
//! `RgbImage` three. Values loaded from files are validated finite once at
//! the boundary; internal math assumes finiteness and never re-checks.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl ScalarField {
    /// Panics if either dimension is zero.
    pub fn constant(width: usize, height: usize, value: f64) -> Self {
        assert!(width > 0 && height > 0, "zero-sized field");
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    /// Panics if either dimension is zero.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(width > 0 && height > 0, "zero-sized field");
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    /// Boundary constructor: rejects size mismatches and non-finite values.
    pub fn from_vec(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::ImageTooSmall {
                width,
                height,
                min: 1,
            });
        }
        if data.len() != width * height {
            return Err(Error::LengthMismatch {
                what: "scalar field data",
                left: data.len(),
                right: width * height,
            });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                field: "scalar field data",
                index,
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.data[y * self.width + x] = v;
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn clamped(&self, lo: f64, hi: f64) -> Self {
        self.map(|v| v.clamp(lo, hi))
    }

    pub fn min(&self) -> f64 {
        self.data.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.data.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    /// Median by sorted copy; even lengths average the middle pair.
    pub fn median(&self) -> f64 {
        crate::metrics::median(self.data.clone()).expect("fields are never empty")
    }

    /// Rescales affinely so min maps to `lo` and max to `hi`. A constant
    /// field has no spread to rescale and maps to `lo` everywhere.
    pub fn rescaled(&self, lo: f64, hi: f64) -> Self {
        let (mn, mx) = (self.min(), self.max());
        if mx - mn <= 0.0 {
            return Self::constant(self.width, self.height, lo);
        }
        let scale = (hi - lo) / (mx - mn);
        self.map(|v| lo + (v - mn) * scale)
    }

    /// Min-max normalization to [0, 1]; constant fields map to zero.
    pub fn normalized(&self) -> Self {
        self.rescaled(0.0, 1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    data: Vec<[f64; 3]>,
}

impl RgbImage {
    /// Panics if either dimension is zero.
    pub fn constant(width: usize, height: usize, value: [f64; 3]) -> Self {
        assert!(width > 0 && height > 0, "zero-sized image");
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    /// Panics if either dimension is zero.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [f64; 3],
    ) -> Self {
        assert!(width > 0 && height > 0, "zero-sized image");
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    /// Boundary constructor: rejects size mismatches and non-finite values.
    pub fn from_vec(width: usize, height: usize, data: Vec<[f64; 3]>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::ImageTooSmall {
                width,
                height,
                min: 1,
            });
        }
        if data.len() != width * height {
            return Err(Error::LengthMismatch {
                what: "image data",
                left: data.len(),
                right: width * height,
            });
        }
        if let Some(index) = data
            .iter()
            .position(|p| p.iter().any(|v| !v.is_finite()))
        {
            return Err(Error::NonFinite {
                field: "image data",
                index,
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn pixel(&self, x: usize, y: usize) -> [f64; 3] {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set_pixel(&mut self, x: usize, y: usize, p: [f64; 3]) {
        self.data[y * self.width + x] = p;
    }

    #[inline]
    pub fn data(&self) -> &[[f64; 3]] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [[f64; 3]] {
        &mut self.data
    }

    pub fn map(&self, f: impl Fn([f64; 3]) -> [f64; 3]) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&p| f(p)).collect(),
        }
    }

    pub fn clamped01(&self) -> Self {
        self.map(|p| [p[0].clamp(0.0, 1.0), p[1].clamp(0.0, 1.0), p[2].clamp(0.0, 1.0)])
    }

    /// Channel mean, the grayscale used for guidance and texture measures.
    pub fn luminance(&self) -> ScalarField {
        ScalarField {
            width: self.width,
            height: self.height,
            data: self
                .data
                .iter()
                .map(|p| (p[0] + p[1] + p[2]) / 3.0)
                .collect(),
        }
    }

    pub fn max_channel(&self) -> ScalarField {
        ScalarField {
            width: self.width,
            height: self.height,
            data: self
                .data
                .iter()
                .map(|p| p[0].max(p[1]).max(p[2]))
                .collect(),
        }
    }
}
