//! `hazelab dehaze`: recovers radiance from hazy images, optionally keeping
//! the transmission, airlight, and per-stage objective trace.

use std::path::{Path, PathBuf};

use anyhow::Result;
use hazelab_core::dehaze;

use crate::batch::{fmt_f64, run_batch, write_records, Record};
use crate::imageio::{output_stems, read_image, write_outputs, FileBody};
use crate::options::Resolved;

pub fn trace_text(data_terms: &[f64]) -> String {
    let mut text = String::new();
    for v in data_terms {
        text.push_str(&fmt_f64(*v));
        text.push('\n');
    }
    text
}

pub fn run(inputs: &[PathBuf], out_dir: &Path, opts: &Resolved) -> Result<usize> {
    let stems = output_stems(inputs);
    let (records, failures) = run_batch(inputs, &stems, |_i, path, stem| {
        let hazy = read_image(path)?;
        let (w, h) = hazy.dims();
        let (state, trace) = dehaze(&hazy, &opts.stage_config)?;

        let dehazed = format!("{stem}_dehazed.png");
        let mut files = vec![(
            out_dir.join(&dehazed),
            FileBody::Png(state.radiance.clamped01()),
        )];
        let mut record: Record = vec![
            ("input", path.display().to_string()),
            ("dehazed", dehazed.clone()),
        ];
        if opts.emit_intermediates {
            let transmission = format!("{stem}_transmission.pfm");
            let airlight = format!("{stem}_airlight.pfm");
            let trace_name = format!("{stem}_trace.txt");
            files.push((
                out_dir.join(&transmission),
                FileBody::ScalarPfm(state.transmission.clone()),
            ));
            files.push((
                out_dir.join(&airlight),
                FileBody::RgbPfm(state.airlight.clone()),
            ));
            files.push((
                out_dir.join(&trace_name),
                FileBody::Text(trace_text(&trace.data_terms)),
            ));
            record.push(("transmission", transmission));
            record.push(("airlight", airlight));
            record.push(("trace", trace_name));
        }
        write_outputs(&files)?;

        record.push(("width", w.to_string()));
        record.push(("height", h.to_string()));
        record.push(("seed", opts.seed.to_string()));
        record.push(("stages", opts.stage_config.num_stages.to_string()));
        record.push(("data_term_initial", fmt_f64(trace.data_terms[0])));
        record.push((
            "data_term_final",
            fmt_f64(*trace.data_terms.last().unwrap()),
        ));
        Ok(record)
    });
    write_records(&out_dir.join("manifest.txt"), &records)?;
    Ok(failures)
}
