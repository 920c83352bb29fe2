//! `hazelab audit`: re-estimates scattering on already-dehazed images and
//! reports how much haze the estimate still sees.

use std::path::{Path, PathBuf};

use anyhow::Result;
use hazelab_core::{audit_dehazed_full, AuditReport};

use crate::batch::{fmt_f64, run_batch, write_records, Record};
use crate::imageio::{output_stems, read_image, write_outputs, FileBody};
use crate::options::Resolved;

fn report_text(report: &AuditReport, seed: u64, stages: usize) -> String {
    let mut text = String::new();
    let mut line = |k: &str, v: String| {
        text.push_str(k);
        text.push('=');
        text.push_str(&v);
        text.push('\n');
    };
    line("residual_haze_score", fmt_f64(report.residual_haze_score));
    line("transmission_min", fmt_f64(report.transmission_min));
    line("transmission_median", fmt_f64(report.transmission_median));
    line("transmission_mean", fmt_f64(report.transmission_mean));
    line("weight_coverage", fmt_f64(report.weight_coverage));
    line("airlight_tv", fmt_f64(report.airlight_tv));
    line("seed", seed.to_string());
    line("stages", stages.to_string());
    text
}

pub fn run(inputs: &[PathBuf], out_dir: &Path, opts: &Resolved) -> Result<usize> {
    let stems = output_stems(inputs);
    let (records, failures) = run_batch(inputs, &stems, |_i, path, stem| {
        let img = read_image(path)?;
        let (w, h) = img.dims();
        let (report, weights, state) = audit_dehazed_full(&img, &opts.stage_config)?;

        let report_name = format!("{stem}_audit.txt");
        let mut files = vec![(
            out_dir.join(&report_name),
            FileBody::Text(report_text(&report, opts.seed, opts.stage_config.num_stages)),
        )];
        let mut record: Record = vec![
            ("input", path.display().to_string()),
            ("report", report_name.clone()),
        ];
        if opts.emit_intermediates {
            let named = [
                ("weight_airlight_distance", &weights.airlight_distance),
                ("weight_texture", &weights.texture),
                ("weight_highlight", &weights.highlight),
                ("weight_combined", &weights.combined),
                ("audit_transmission", &state.transmission),
            ];
            for (key, field) in named {
                let name = format!("{stem}_{key}.pfm");
                files.push((out_dir.join(&name), FileBody::ScalarPfm((*field).clone())));
                record.push((key, name));
            }
        }
        write_outputs(&files)?;

        record.push(("width", w.to_string()));
        record.push(("height", h.to_string()));
        record.push(("seed", opts.seed.to_string()));
        record.push(("residual_haze_score", fmt_f64(report.residual_haze_score)));
        record.push(("transmission_min", fmt_f64(report.transmission_min)));
        record.push(("transmission_median", fmt_f64(report.transmission_median)));
        record.push(("transmission_mean", fmt_f64(report.transmission_mean)));
        record.push(("weight_coverage", fmt_f64(report.weight_coverage)));
        record.push(("airlight_tv", fmt_f64(report.airlight_tv)));
        Ok(record)
    });
    write_records(&out_dir.join("manifest.txt"), &records)?;
    Ok(failures)
}
