//! Batch front end for seeded haze synthesis, closed-form dehazing, and
//! residual-haze audits.
//!
//! Option precedence: command-line flag, then `--config` file entry, then
//! `HAZELAB_THREADS` (threads only), then the built-in default. With a fixed
//! seed every command is bit-reproducible across runs and thread counts.

mod audit;
mod batch;
mod dehaze;
mod imageio;
mod options;
mod roundtrip;
mod synthesize;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand};
use hazelab_core::{DepthMode, RefinementKind};

use options::Overrides;

#[derive(Parser)]
#[command(
    name = "hazelab",
    version,
    about = "Seeded haze synthesis, closed-form dehazing, and residual-haze audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Composite seeded synthetic haze over clean images.
    Synthesize(CommandArgs),
    /// Recover radiance, transmission, and airlight from hazy images.
    Dehaze(CommandArgs),
    /// Score residual haze in already-dehazed images.
    Audit(CommandArgs),
    /// Synthesize, dehaze, and report recovery quality per image.
    Roundtrip(CommandArgs),
}

/// Every subcommand takes the same flag surface; commands ignore what they
/// do not use, so one config file can drive a whole experiment.
#[derive(Args)]
struct CommandArgs {
    /// Input PNG images.
    inputs: Vec<PathBuf>,

    /// Directory that receives every output file (created if missing).
    #[arg(long, value_name = "DIR")]
    out_dir: PathBuf,

    /// key=value config file; flags override its entries.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Base seed; each input derives its own stream from it.
    #[arg(long)]
    seed: Option<u64>,

    /// Worker threads, 0 = automatic. HAZELAB_THREADS applies when unset.
    #[arg(long)]
    threads: Option<usize>,

    /// Also write per-image intermediates (T/A/trace or weight maps).
    #[arg(long, action = ArgAction::SetTrue)]
    emit_intermediates: bool,

    /// Directory of {stem}.pfm depth maps; procedural depth when absent.
    #[arg(long, value_name = "DIR")]
    depth_dir: Option<PathBuf>,

    /// Procedural depth layout: vertical, radial, or two-plane.
    #[arg(long)]
    depth_mode: Option<DepthMode>,

    /// Number of block-update stages.
    #[arg(long)]
    stages: Option<usize>,

    /// Trust-region weight of the airlight update.
    #[arg(long)]
    lambda_a: Option<f64>,

    /// Trust-region weight of the transmission update.
    #[arg(long)]
    lambda_t: Option<f64>,

    /// Trust-region weight of the radiance update.
    #[arg(long)]
    lambda_j: Option<f64>,

    /// Transmission refinement: identity, guided_smooth, or tv_smooth.
    #[arg(long)]
    refine_t: Option<RefinementKind>,

    /// Radiance refinement: identity, guided_smooth, or tv_smooth.
    #[arg(long)]
    refine_j: Option<RefinementKind>,

    /// Residual blend factor for the smoothing refinements.
    #[arg(long)]
    refine_strength: Option<f64>,

    /// Neighborhood half-width for the smoothing refinements.
    #[arg(long)]
    refine_radius: Option<usize>,

    /// Lower bound of the scattering density draw.
    #[arg(long)]
    beta_min: Option<f64>,

    /// Upper bound of the scattering density draw.
    #[arg(long)]
    beta_max: Option<f64>,

    /// Probability of a spatially varying density field.
    #[arg(long)]
    nonuniform_prob: Option<f64>,

    /// Lower bound of the near-point haze level.
    #[arg(long)]
    near_haze_min: Option<f64>,

    /// Upper bound of the near-point haze level (must stay below 1).
    #[arg(long)]
    near_haze_max: Option<f64>,

    /// Lower bound of the airlight base draw.
    #[arg(long)]
    airlight_min: Option<f64>,

    /// Upper bound of the airlight base draw.
    #[arg(long)]
    airlight_max: Option<f64>,

    /// Per-channel airlight jitter half-width.
    #[arg(long)]
    airlight_jitter: Option<f64>,

    /// Multiplicative exposure jitter half-width for augmentation.
    #[arg(long)]
    luminance_jitter: Option<f64>,

    /// Additive Gaussian pixel-noise standard deviation.
    #[arg(long)]
    noise_std: Option<f64>,

    /// Run the hazy result through an 8-bit quantize-dequantize proxy.
    #[arg(long, action = ArgAction::SetTrue)]
    compress: bool,

    /// Side length of the low-resolution density noise grid.
    #[arg(long)]
    noise_base_resolution: Option<usize>,

    /// Blur std-dev applied on the low-resolution grid.
    #[arg(long)]
    noise_sigma_base: Option<f64>,

    /// Blur std-dev applied after upsampling.
    #[arg(long)]
    noise_sigma_full: Option<f64>,

    /// Lower target of the density perturbation rescale.
    #[arg(long)]
    rescale_min: Option<f64>,

    /// Upper target of the density perturbation rescale.
    #[arg(long)]
    rescale_max: Option<f64>,
}

impl CommandArgs {
    fn to_overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            threads: self.threads,
            emit_intermediates: self.emit_intermediates.then_some(true),
            stages: self.stages,
            lambda_a: self.lambda_a,
            lambda_t: self.lambda_t,
            lambda_j: self.lambda_j,
            refine_t: self.refine_t,
            refine_j: self.refine_j,
            refine_strength: self.refine_strength,
            refine_radius: self.refine_radius,
            beta_min: self.beta_min,
            beta_max: self.beta_max,
            nonuniform_prob: self.nonuniform_prob,
            near_haze_min: self.near_haze_min,
            near_haze_max: self.near_haze_max,
            airlight_min: self.airlight_min,
            airlight_max: self.airlight_max,
            airlight_jitter: self.airlight_jitter,
            luminance_jitter: self.luminance_jitter,
            noise_std: self.noise_std,
            compress: self.compress.then_some(true),
            noise_base_resolution: self.noise_base_resolution,
            noise_sigma_base: self.noise_sigma_base,
            noise_sigma_full: self.noise_sigma_full,
            rescale_min: self.rescale_min,
            rescale_max: self.rescale_max,
            depth_mode: self.depth_mode,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(failures) if failures == 0 => ExitCode::SUCCESS,
        Ok(_) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<usize> {
    let args = match &cli.command {
        Command::Synthesize(a) | Command::Dehaze(a) | Command::Audit(a) | Command::Roundtrip(a) => {
            a
        }
    };

    let mut overrides = args.to_overrides();
    if let Some(config_path) = &args.config {
        overrides = overrides.or(options::parse_config_file(config_path)?);
    }
    let resolved = options::resolve(overrides)?;

    if resolved.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(resolved.threads)
            .build_global()
            .context("building thread pool")?;
    }

    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;

    let depth_dir = args.depth_dir.as_deref();
    match &cli.command {
        Command::Synthesize(a) => synthesize::run(&a.inputs, &a.out_dir, &resolved, depth_dir),
        Command::Dehaze(a) => dehaze::run(&a.inputs, &a.out_dir, &resolved),
        Command::Audit(a) => audit::run(&a.inputs, &a.out_dir, &resolved),
        Command::Roundtrip(a) => roundtrip::run(&a.inputs, &a.out_dir, &resolved, depth_dir),
    }
}
