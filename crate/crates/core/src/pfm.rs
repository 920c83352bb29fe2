//! Portable FloatMap (PFM) reader and writer.
//!
//! The on-disk layout is the de facto standard: a magic line (`PF` color,
//! `Pf` grayscale), a dimensions line, a scale line whose sign encodes
//! endianness, then rows of raw f32 samples ordered bottom-to-top. This
//! writer always emits little-endian data with scale -1.0; the reader
//! accepts either endianness and validates that every sample is finite.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{RgbImage, ScalarField};

/// Upper bound on accepted pixel counts, a guard against absurd headers.
const MAX_PIXELS: usize = 1 << 26;

#[derive(Debug, Clone)]
pub enum PfmImage {
    Gray(ScalarField),
    Rgb(RgbImage),
}

pub fn write_scalar_pfm(path: &Path, field: &ScalarField) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_scalar_pfm_to(&mut w, field)
}

pub fn write_rgb_pfm(path: &Path, image: &RgbImage) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_rgb_pfm_to(&mut w, image)
}

pub fn write_scalar_pfm_to(w: &mut impl Write, field: &ScalarField) -> Result<()> {
    write!(w, "Pf\n{} {}\n-1.0\n", field.width(), field.height())?;
    for y in (0..field.height()).rev() {
        for x in 0..field.width() {
            w.write_all(&(field.get(x, y) as f32).to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn write_rgb_pfm_to(w: &mut impl Write, image: &RgbImage) -> Result<()> {
    write!(w, "PF\n{} {}\n-1.0\n", image.width(), image.height())?;
    for y in (0..image.height()).rev() {
        for x in 0..image.width() {
            let p = image.pixel(x, y);
            for c in 0..3 {
                w.write_all(&(p[c] as f32).to_le_bytes())?;
            }
        }
    }
    Ok(())
}

pub fn read_pfm(path: &Path) -> Result<PfmImage> {
    let mut r = BufReader::new(File::open(path)?);
    read_pfm_from(&mut r)
}

pub fn read_pfm_from(r: &mut impl Read) -> Result<PfmImage> {
    let magic = read_token(r)?;
    let color = match magic.as_str() {
        "PF" => true,
        "Pf" => false,
        other => {
            return Err(Error::MalformedPfm {
                reason: format!("bad magic {other:?}"),
            })
        }
    };
    let width = parse_dim(&read_token(r)?, "width")?;
    let height = parse_dim(&read_token(r)?, "height")?;
    if width == 0 || height == 0 || width.saturating_mul(height) > MAX_PIXELS {
        return Err(Error::MalformedPfm {
            reason: format!("unreasonable dimensions {width}x{height}"),
        });
    }
    let scale: f64 = read_token(r)?.parse().map_err(|_| Error::MalformedPfm {
        reason: "scale is not a number".into(),
    })?;
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::MalformedPfm {
            reason: format!("bad scale {scale}"),
        });
    }
    let little_endian = scale < 0.0;

    let channels = if color { 3 } else { 1 };
    let mut bytes = vec![0u8; width * height * channels * 4];
    r.read_exact(&mut bytes).map_err(|_| Error::MalformedPfm {
        reason: "truncated sample data".into(),
    })?;
    let mut samples = Vec::with_capacity(width * height * channels);
    for chunk in bytes.chunks_exact(4) {
        let raw: [u8; 4] = chunk.try_into().expect("chunks are 4 bytes");
        let v = if little_endian {
            f32::from_le_bytes(raw)
        } else {
            f32::from_be_bytes(raw)
        };
        samples.push(v as f64);
    }

    // Rows are stored bottom-to-top; flip while copying out.
    if color {
        let mut data = vec![[0.0; 3]; width * height];
        for y in 0..height {
            let src_row = height - 1 - y;
            for x in 0..width {
                let s = (src_row * width + x) * 3;
                data[y * width + x] = [samples[s], samples[s + 1], samples[s + 2]];
            }
        }
        Ok(PfmImage::Rgb(RgbImage::from_vec(width, height, data)?))
    } else {
        let mut data = vec![0.0; width * height];
        for y in 0..height {
            let src_row = height - 1 - y;
            data[y * width..(y + 1) * width]
                .copy_from_slice(&samples[src_row * width..(src_row + 1) * width]);
        }
        Ok(PfmImage::Gray(ScalarField::from_vec(width, height, data)?))
    }
}

/// Reads one whitespace-delimited header token, consuming the single
/// whitespace byte that terminates it.
fn read_token(r: &mut impl Read) -> Result<String> {
    let mut token = Vec::new();
    let mut byte = [0u8; 1];
    loop {
        if r.read(&mut byte)? == 0 {
            if token.is_empty() {
                return Err(Error::MalformedPfm {
                    reason: "unexpected end of header".into(),
                });
            }
            break;
        }
        if byte[0].is_ascii_whitespace() {
            if token.is_empty() {
                continue;
            }
            break;
        }
        token.push(byte[0]);
        if token.len() > 64 {
            return Err(Error::MalformedPfm {
                reason: "header token too long".into(),
            });
        }
    }
    String::from_utf8(token).map_err(|_| Error::MalformedPfm {
        reason: "header is not ASCII".into(),
    })
}

fn parse_dim(token: &str, what: &str) -> Result<usize> {
    token.parse().map_err(|_| Error::MalformedPfm {
        reason: format!("bad {what} {token:?}"),
    })
}
