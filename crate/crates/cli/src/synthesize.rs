//! `hazelab synthesize`: composites seeded haze over clean images.

use std::path::{Path, PathBuf};

use anyhow::Result;
use hazelab_core::{synthesize, SynthesisSpec};

use crate::batch::{fmt_f64, run_batch, write_records, Record};
use crate::imageio::{load_depth, output_stems, read_image, write_outputs, FileBody};
use crate::options::{item_seed, Resolved};

pub fn run(
    inputs: &[PathBuf],
    out_dir: &Path,
    opts: &Resolved,
    depth_dir: Option<&Path>,
) -> Result<usize> {
    let stems = output_stems(inputs);
    let (records, failures) = run_batch(inputs, &stems, |i, path, stem| {
        let clean = read_image(path)?;
        let (w, h) = clean.dims();
        let depth = load_depth(depth_dir, stem, opts.depth_mode, w, h)?;
        let spec = SynthesisSpec {
            seed: item_seed(opts.seed, i),
            ..opts.synthesis.clone()
        };
        let out = synthesize(&clean, &depth, &spec)?;

        let hazy = format!("{stem}_hazy.png");
        let transmission = format!("{stem}_transmission.pfm");
        let airlight = format!("{stem}_airlight.pfm");
        let density = format!("{stem}_density.pfm");
        write_outputs(&[
            (out_dir.join(&hazy), FileBody::Png(out.hazy.clone())),
            (
                out_dir.join(&transmission),
                FileBody::ScalarPfm(out.transmission.clone()),
            ),
            (
                out_dir.join(&airlight),
                FileBody::RgbPfm(out.airlight.clone()),
            ),
            (
                out_dir.join(&density),
                FileBody::ScalarPfm(out.density.clone()),
            ),
        ])?;

        let p = &out.params;
        let record: Record = vec![
            ("input", path.display().to_string()),
            ("hazy", hazy),
            ("transmission", transmission),
            ("airlight", airlight),
            ("density", density),
            ("width", w.to_string()),
            ("height", h.to_string()),
            ("seed", spec.seed.to_string()),
            ("beta_init", fmt_f64(p.beta_init)),
            ("nonuniform", p.nonuniform.to_string()),
            ("h_near", fmt_f64(p.h_near)),
            ("d0", fmt_f64(out.d0)),
            ("luminance_factor", fmt_f64(p.luminance_factor)),
            ("airlight_r", fmt_f64(p.airlight[0])),
            ("airlight_g", fmt_f64(p.airlight[1])),
            ("airlight_b", fmt_f64(p.airlight[2])),
        ];
        Ok(record)
    });
    write_records(&out_dir.join("manifest.txt"), &records)?;
    Ok(failures)
}
