//! Layered run options: command-line flags override the config file, the
//! config file overrides `HAZELAB_THREADS` (threads only), and anything
//! still unset falls back to built-in defaults.

use std::path::Path;

use anyhow::{bail, Context, Result};
use hazelab_core::{
    AugmentSpec, DepthMode, NoiseFieldSpec, ProximalWeights, RefinementKind, RefinementOperator,
    StageConfig, SynthesisSpec,
};

pub const THREADS_ENV: &str = "HAZELAB_THREADS";

/// One optional value per tunable. Field names match the long flag
/// spellings, which double as the config-file keys.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub emit_intermediates: Option<bool>,
    pub stages: Option<usize>,
    pub lambda_a: Option<f64>,
    pub lambda_t: Option<f64>,
    pub lambda_j: Option<f64>,
    pub refine_t: Option<RefinementKind>,
    pub refine_j: Option<RefinementKind>,
    pub refine_strength: Option<f64>,
    pub refine_radius: Option<usize>,
    pub beta_min: Option<f64>,
    pub beta_max: Option<f64>,
    pub nonuniform_prob: Option<f64>,
    pub near_haze_min: Option<f64>,
    pub near_haze_max: Option<f64>,
    pub airlight_min: Option<f64>,
    pub airlight_max: Option<f64>,
    pub airlight_jitter: Option<f64>,
    pub luminance_jitter: Option<f64>,
    pub noise_std: Option<f64>,
    pub compress: Option<bool>,
    pub noise_base_resolution: Option<usize>,
    pub noise_sigma_base: Option<f64>,
    pub noise_sigma_full: Option<f64>,
    pub rescale_min: Option<f64>,
    pub rescale_max: Option<f64>,
    pub depth_mode: Option<DepthMode>,
}

impl Overrides {
    /// Fills every unset field from `fallback`.
    pub fn or(self, fallback: Overrides) -> Overrides {
        macro_rules! pick {
            ($($field:ident),* $(,)?) => {
                Overrides { $($field: self.$field.or(fallback.$field)),* }
            };
        }
        pick!(
            seed,
            threads,
            emit_intermediates,
            stages,
            lambda_a,
            lambda_t,
            lambda_j,
            refine_t,
            refine_j,
            refine_strength,
            refine_radius,
            beta_min,
            beta_max,
            nonuniform_prob,
            near_haze_min,
            near_haze_max,
            airlight_min,
            airlight_max,
            airlight_jitter,
            luminance_jitter,
            noise_std,
            compress,
            noise_base_resolution,
            noise_sigma_base,
            noise_sigma_full,
            rescale_min,
            rescale_max,
            depth_mode,
        )
    }
}

/// Parses a `key=value` config file. Keys use the long flag spellings,
/// `#` starts a comment, blank lines are ignored, unknown keys are errors.
pub fn parse_config_file(path: &Path) -> Result<Overrides> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    let mut out = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .with_context(|| format!("{}:{}: expected key=value", path.display(), lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        set_key(&mut out, key, value)
            .with_context(|| format!("{}:{}: key {key:?}", path.display(), lineno + 1))?;
    }
    Ok(out)
}

fn set_key(out: &mut Overrides, key: &str, value: &str) -> Result<()> {
    fn parse<T: std::str::FromStr>(value: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        value
            .parse()
            .map_err(|e| anyhow::anyhow!("invalid value {value:?}: {e}"))
    }
    match key {
        "seed" => out.seed = Some(parse(value)?),
        "threads" => out.threads = Some(parse(value)?),
        "emit-intermediates" => out.emit_intermediates = Some(parse(value)?),
        "stages" => out.stages = Some(parse(value)?),
        "lambda-a" => out.lambda_a = Some(parse(value)?),
        "lambda-t" => out.lambda_t = Some(parse(value)?),
        "lambda-j" => out.lambda_j = Some(parse(value)?),
        "refine-t" => out.refine_t = Some(parse(value)?),
        "refine-j" => out.refine_j = Some(parse(value)?),
        "refine-strength" => out.refine_strength = Some(parse(value)?),
        "refine-radius" => out.refine_radius = Some(parse(value)?),
        "beta-min" => out.beta_min = Some(parse(value)?),
        "beta-max" => out.beta_max = Some(parse(value)?),
        "nonuniform-prob" => out.nonuniform_prob = Some(parse(value)?),
        "near-haze-min" => out.near_haze_min = Some(parse(value)?),
        "near-haze-max" => out.near_haze_max = Some(parse(value)?),
        "airlight-min" => out.airlight_min = Some(parse(value)?),
        "airlight-max" => out.airlight_max = Some(parse(value)?),
        "airlight-jitter" => out.airlight_jitter = Some(parse(value)?),
        "luminance-jitter" => out.luminance_jitter = Some(parse(value)?),
        "noise-std" => out.noise_std = Some(parse(value)?),
        "compress" => out.compress = Some(parse(value)?),
        "noise-base-resolution" => out.noise_base_resolution = Some(parse(value)?),
        "noise-sigma-base" => out.noise_sigma_base = Some(parse(value)?),
        "noise-sigma-full" => out.noise_sigma_full = Some(parse(value)?),
        "rescale-min" => out.rescale_min = Some(parse(value)?),
        "rescale-max" => out.rescale_max = Some(parse(value)?),
        "depth-mode" => out.depth_mode = Some(parse(value)?),
        other => bail!("unknown config key {other:?}"),
    }
    Ok(())
}

/// Fully resolved options every subcommand runs with.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub seed: u64,
    /// 0 means let the pool pick.
    pub threads: usize,
    pub emit_intermediates: bool,
    pub stage_config: StageConfig,
    /// Per-image seed is filled in later; this carries everything else.
    pub synthesis: SynthesisSpec,
    pub depth_mode: DepthMode,
}

pub fn resolve(opts: Overrides) -> Result<Resolved> {
    let threads = match opts.threads {
        Some(n) => n,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .parse()
                .with_context(|| format!("{THREADS_ENV}={v:?} is not a thread count"))?,
            Err(_) => 0,
        },
    };

    let refine_op = |kind: Option<RefinementKind>| -> RefinementOperator {
        match kind.unwrap_or(RefinementKind::Identity) {
            RefinementKind::Identity => RefinementOperator::identity(),
            other => RefinementOperator {
                kind: other,
                strength: opts.refine_strength.unwrap_or(0.5),
                radius: opts.refine_radius.unwrap_or(2),
            },
        }
    };

    let defaults = StageConfig::default();
    let stage_config = StageConfig {
        num_stages: opts.stages.unwrap_or(defaults.num_stages),
        weights: ProximalWeights {
            lambda_airlight: opts.lambda_a.unwrap_or(0.1),
            lambda_transmission: opts.lambda_t.unwrap_or(0.1),
            lambda_radiance: opts.lambda_j.unwrap_or(0.1),
        },
        refine_transmission: refine_op(opts.refine_t),
        refine_radiance: refine_op(opts.refine_j),
        record_objective: true,
        record_states: false,
    };
    stage_config.weights.validate()?;
    stage_config.refine_transmission.validate()?;
    stage_config.refine_radiance.validate()?;

    let sd = SynthesisSpec::default();
    let nd = NoiseFieldSpec::default();
    let synthesis = SynthesisSpec {
        beta_min: opts.beta_min.unwrap_or(sd.beta_min),
        beta_max: opts.beta_max.unwrap_or(sd.beta_max),
        nonuniform_prob: opts.nonuniform_prob.unwrap_or(sd.nonuniform_prob),
        near_haze_min: opts.near_haze_min.unwrap_or(sd.near_haze_min),
        near_haze_max: opts.near_haze_max.unwrap_or(sd.near_haze_max),
        airlight_min: opts.airlight_min.unwrap_or(sd.airlight_min),
        airlight_max: opts.airlight_max.unwrap_or(sd.airlight_max),
        airlight_jitter: opts.airlight_jitter.unwrap_or(sd.airlight_jitter),
        noise: NoiseFieldSpec {
            base_resolution: opts.noise_base_resolution.unwrap_or(nd.base_resolution),
            sigma_base: opts.noise_sigma_base.unwrap_or(nd.sigma_base),
            sigma_full: opts.noise_sigma_full.unwrap_or(nd.sigma_full),
            rescale_min: opts.rescale_min.unwrap_or(nd.rescale_min),
            rescale_max: opts.rescale_max.unwrap_or(nd.rescale_max),
        },
        augment: AugmentSpec {
            luminance_jitter: opts.luminance_jitter.unwrap_or(0.0),
            noise_std: opts.noise_std.unwrap_or(0.0),
            enable_compress: opts.compress.unwrap_or(false),
        },
        seed: opts.seed.unwrap_or(0),
    };
    synthesis.validate()?;

    Ok(Resolved {
        seed: opts.seed.unwrap_or(0),
        threads,
        emit_intermediates: opts.emit_intermediates.unwrap_or(false),
        stage_config,
        synthesis,
        depth_mode: opts.depth_mode.unwrap_or(DepthMode::Vertical),
    })
}

/// Derives a well-mixed per-item seed from the base seed and the item's
/// position, so batch items draw independent streams.
pub fn item_seed(base: u64, index: usize) -> u64 {
    let mut z = base.wrapping_add((index as u64 + 1).wrapping_mul(0x9E3779B97F4A7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}
