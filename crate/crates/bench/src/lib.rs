//! Shared scene builders for the benchmark targets.

use rand::{Rng, SeedableRng};

use hazelab_core::{DepthMode, RgbImage, SynthesisOutput, SynthesisSpec};

/// Deterministic textured scene used by every benchmark, so runs are
/// comparable across machines and revisions.
pub fn bench_scene(seed: u64, width: usize, height: usize) -> RgbImage {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let fx: f64 = 0.05 + 0.3 * rng.gen::<f64>();
    let fy: f64 = 0.05 + 0.3 * rng.gen::<f64>();
    let phase: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
    let base: [f64; 3] = [
        0.2 + 0.5 * rng.gen::<f64>(),
        0.2 + 0.5 * rng.gen::<f64>(),
        0.2 + 0.5 * rng.gen::<f64>(),
    ];
    let mut img = RgbImage::from_fn(width, height, |x, y| {
        let s = (fx * x as f64 + phase).sin();
        let c = (fy * y as f64).cos();
        [
            (base[0] + 0.3 * s).clamp(0.0, 1.0),
            (base[1] + 0.3 * c).clamp(0.0, 1.0),
            (base[2] + 0.2 * s * c).clamp(0.0, 1.0),
        ]
    });
    for p in img.data_mut() {
        for ch in p.iter_mut() {
            *ch = (*ch + 0.03 * (rng.gen::<f64>() - 0.5)).clamp(0.0, 1.0);
        }
    }
    img
}

/// Hazy input paired with the clean scene it came from.
pub fn bench_hazy(seed: u64, width: usize, height: usize) -> (RgbImage, SynthesisOutput) {
    let clean = bench_scene(seed, width, height);
    let depth = hazelab_core::procedural_depth(DepthMode::Vertical, width, height);
    let spec = SynthesisSpec {
        seed,
        ..SynthesisSpec::default()
    };
    let out = hazelab_core::synthesize(&clean, &depth, &spec).expect("valid spec");
    (clean, out)
}
