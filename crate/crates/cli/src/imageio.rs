//! PNG input and output plus batch output-path bookkeeping.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use hazelab_core::{RgbImage, ScalarField};

/// Loads an 8- or 16-bit PNG (or any format the decoder recognizes) into
/// unit-range f64. No gamma handling: values are divided by the bit depth's
/// maximum and nothing else.
pub fn read_image(path: &Path) -> Result<RgbImage> {
    let img = image::open(path).with_context(|| format!("reading {}", path.display()))?;
    let sixteen = matches!(
        img,
        image::DynamicImage::ImageLuma16(_)
            | image::DynamicImage::ImageLumaA16(_)
            | image::DynamicImage::ImageRgb16(_)
            | image::DynamicImage::ImageRgba16(_)
    );
    let (w, h, data) = if sixteen {
        let buf = img.to_rgb16();
        let (w, h) = (buf.width() as usize, buf.height() as usize);
        let data = buf
            .pixels()
            .map(|p| {
                [
                    p.0[0] as f64 / 65535.0,
                    p.0[1] as f64 / 65535.0,
                    p.0[2] as f64 / 65535.0,
                ]
            })
            .collect();
        (w, h, data)
    } else {
        let buf = img.to_rgb8();
        let (w, h) = (buf.width() as usize, buf.height() as usize);
        let data = buf
            .pixels()
            .map(|p| {
                [
                    p.0[0] as f64 / 255.0,
                    p.0[1] as f64 / 255.0,
                    p.0[2] as f64 / 255.0,
                ]
            })
            .collect();
        (w, h, data)
    };
    RgbImage::from_vec(w, h, data).map_err(Into::into)
}

fn encode_png16(image: &RgbImage) -> image::ImageBuffer<image::Rgb<u16>, Vec<u16>> {
    let (w, h) = image.dims();
    image::ImageBuffer::from_fn(w as u32, h as u32, |x, y| {
        let p = image.pixel(x as usize, y as usize);
        let q = |v: f64| (v.clamp(0.0, 1.0) * 65535.0).round() as u16;
        image::Rgb([q(p[0]), q(p[1]), q(p[2])])
    })
}

/// One fully computed output file, written only after the whole item
/// succeeds.
pub enum FileBody {
    Png(RgbImage),
    ScalarPfm(ScalarField),
    RgbPfm(RgbImage),
    Text(String),
}

/// Writes every file or none: on the first failure all files written so far
/// for this item are removed, including the partial one.
pub fn write_outputs(files: &[(PathBuf, FileBody)]) -> Result<()> {
    let mut written: Vec<&Path> = Vec::with_capacity(files.len());
    for (path, body) in files {
        let result = match body {
            FileBody::Png(img) => encode_png16(img)
                .save(path)
                .with_context(|| format!("writing {}", path.display())),
            FileBody::ScalarPfm(field) => hazelab_core::write_scalar_pfm(path, field)
                .with_context(|| format!("writing {}", path.display())),
            FileBody::RgbPfm(img) => hazelab_core::write_rgb_pfm(path, img)
                .with_context(|| format!("writing {}", path.display())),
            FileBody::Text(text) => std::fs::write(path, text)
                .with_context(|| format!("writing {}", path.display())),
        };
        if let Err(e) = result {
            for p in written.iter().chain([&path.as_path()]) {
                let _ = std::fs::remove_file(p);
            }
            return Err(e);
        }
        written.push(path);
    }
    Ok(())
}

/// Loads the depth map for one input: `{stem}.pfm` under `depth_dir` when a
/// directory is given, else a procedural ramp. Depth is unit-range with 1 at
/// the nearest point.
pub fn load_depth(
    depth_dir: Option<&Path>,
    stem: &str,
    mode: hazelab_core::DepthMode,
    width: usize,
    height: usize,
) -> Result<ScalarField> {
    let Some(dir) = depth_dir else {
        return Ok(hazelab_core::procedural_depth(mode, width, height));
    };
    let path = dir.join(format!("{stem}.pfm"));
    let field = match hazelab_core::read_pfm(&path)
        .with_context(|| format!("reading depth map {}", path.display()))?
    {
        hazelab_core::PfmImage::Gray(field) => field,
        hazelab_core::PfmImage::Rgb(_) => {
            anyhow::bail!("{}: depth map must be grayscale", path.display())
        }
    };
    let (w, h) = field.dims();
    if (w, h) != (width, height) {
        anyhow::bail!(
            "{}: depth is {w}x{h} but the image is {width}x{height}",
            path.display()
        );
    }
    Ok(field)
}

/// Output name stems for a batch, unique even when two inputs share a file
/// stem. Later duplicates get their 1-based input position appended.
pub fn output_stems(inputs: &[PathBuf]) -> Vec<String> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    inputs
        .iter()
        .enumerate()
        .map(|(i, path)| {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| format!("input_{}", i + 1));
            let count = seen.entry(stem.clone()).or_insert(0);
            *count += 1;
            if *count == 1 {
                stem
            } else {
                format!("{}_{}", stem, i + 1)
            }
        })
        .collect()
}
