//! `hazelab roundtrip`: synthesizes haze over clean images, dehazes the
//! result, and reports recovery quality against the known ground truth.
//!
//! The summary's `median_improvement` is the difference of the two PSNR
//! medians, not the median of the per-row differences.

use std::path::{Path, PathBuf};

use anyhow::Result;
use hazelab_core::{
    dehaze, mean_abs_diff, median, psnr, quality_gate, score_gradient_energy,
    score_local_contrast, synthesize, SynthesisSpec,
};

use crate::batch::{fmt_f64, record_line, run_batch, Record};
use crate::imageio::{load_depth, output_stems, read_image, write_outputs, FileBody};
use crate::options::{item_seed, Resolved};

pub const REPORT_NAME: &str = "roundtrip_report.txt";

fn find(record: &Record, key: &str) -> f64 {
    record
        .iter()
        .find(|(k, _)| *k == key)
        .expect("summary reads keys this module wrote")
        .1
        .parse()
        .expect("floats are written in round-trip format")
}

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
        let syn = synthesize(&clean, &depth, &spec)?;
        let (state, trace) = dehaze(&syn.hazy, &opts.stage_config)?;
        let dehazed = state.radiance.clamped01();

        // The recovery target is the radiance that was actually blended,
        // which equals the clean input whenever augmentation is off.
        let target = &syn.augmented;
        let psnr_hazy = psnr(&syn.hazy, target)?;
        let psnr_dehazed = psnr(&dehazed, target)?;
        let t_mae = mean_abs_diff(&state.transmission, &syn.transmission)?;
        let teacher = [
            score_local_contrast(&dehazed),
            score_gradient_energy(&dehazed),
        ];
        let student = [
            score_local_contrast(&syn.hazy),
            score_gradient_energy(&syn.hazy),
        ];
        let gate = quality_gate(&teacher, &student)?;

        let hazy_name = format!("{stem}_hazy.png");
        let dehazed_name = format!("{stem}_dehazed.png");
        write_outputs(&[
            (out_dir.join(&hazy_name), FileBody::Png(syn.hazy.clone())),
            (out_dir.join(&dehazed_name), FileBody::Png(dehazed.clone())),
        ])?;

        let trace_list = trace
            .data_terms
            .iter()
            .map(|v| fmt_f64(*v))
            .collect::<Vec<_>>()
            .join(",");
        let record: Record = vec![
            ("input", path.display().to_string()),
            ("hazy", hazy_name),
            ("dehazed", dehazed_name),
            ("width", w.to_string()),
            ("height", h.to_string()),
            ("seed", spec.seed.to_string()),
            ("beta_init", fmt_f64(syn.params.beta_init)),
            ("nonuniform", syn.params.nonuniform.to_string()),
            ("h_near", fmt_f64(syn.params.h_near)),
            ("psnr_hazy", fmt_f64(psnr_hazy)),
            ("psnr_dehazed", fmt_f64(psnr_dehazed)),
            ("improvement", fmt_f64(psnr_dehazed - psnr_hazy)),
            ("t_mae", fmt_f64(t_mae)),
            ("gate", gate.to_string()),
            ("trace", trace_list),
        ];
        Ok(record)
    });

    // The summary re-parses the row values it just wrote, so any external
    // recomputation from the rows lands on identical numbers.
    let mut summary: Record = vec![
        ("summary", "true".to_string()),
        ("count", records.len().to_string()),
    ];
    if !records.is_empty() {
        let hazy: Vec<f64> = records.iter().map(|r| find(r, "psnr_hazy")).collect();
        let deh: Vec<f64> = records.iter().map(|r| find(r, "psnr_dehazed")).collect();
        let maes: Vec<f64> = records.iter().map(|r| find(r, "t_mae")).collect();
        let median_hazy = median(hazy).unwrap();
        let median_dehazed = median(deh).unwrap();
        let mean_t_mae = maes.iter().sum::<f64>() / maes.len() as f64;
        summary.push(("median_psnr_hazy", fmt_f64(median_hazy)));
        summary.push(("median_psnr_dehazed", fmt_f64(median_dehazed)));
        summary.push(("median_improvement", fmt_f64(median_dehazed - median_hazy)));
        summary.push(("mean_t_mae", fmt_f64(mean_t_mae)));
    }

    let mut text = String::new();
    for record in &records {
        text.push_str(&record_line(record));
        text.push('\n');
    }
    text.push_str(&record_line(&summary));
    text.push('\n');
    std::fs::write(out_dir.join(REPORT_NAME), text)?;
    Ok(failures)
}
