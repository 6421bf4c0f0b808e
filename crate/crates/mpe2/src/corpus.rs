//! Deterministic synthetic benchmark corpus.
//!
//! Six 512x512 grayscale images with natural-image-like prediction-error
//! statistics: smooth regions, ridges, plateaus with edges, and fine
//! texture. Generation is fully seeded, so the corpus is reproducible and
//! the bench numbers derived from it are stable. One image carries a
//! sprinkle of exact 0 and 255 pixels to exercise the guard/overhead path
//! end to end.

use crate::error::Result;
use crate::image::{save_pgm, GrayImage};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};

/// Seed of the bundled corpus. `gen-corpus` defaults to this value, so files
/// written on disk match the images the acceptance suite generates in
/// memory.
pub const CORPUS_SEED: u64 = 0x6d70_6532;

pub const CORPUS_SIZE: u32 = 512;

/// A lattice of random values sampled with bilinear interpolation; summing a
/// few octaves gives a value-noise field.
struct NoiseOctave {
    lattice: Vec<f64>,
    cols: usize,
    cell: f64,
    amp: f64,
}

impl NoiseOctave {
    fn new(rng: &mut impl RngCore, width: u32, height: u32, cell: f64, amp: f64) -> Self {
        let cols = (width as f64 / cell).ceil() as usize + 2;
        let rows = (height as f64 / cell).ceil() as usize + 2;
        let lattice = (0..cols * rows)
            .map(|_| rng.next_u32() as f64 / u32::MAX as f64 * 2.0 - 1.0)
            .collect();
        NoiseOctave {
            lattice,
            cols,
            cell,
            amp,
        }
    }

    fn sample(&self, x: f64, y: f64) -> f64 {
        let gx = x / self.cell;
        let gy = y / self.cell;
        let x0 = gx.floor() as usize;
        let y0 = gy.floor() as usize;
        let fx = gx - gx.floor();
        let fy = gy - gy.floor();
        let at = |r: usize, c: usize| self.lattice[r * self.cols + c];
        let top = at(y0, x0) * (1.0 - fx) + at(y0, x0 + 1) * fx;
        let bottom = at(y0 + 1, x0) * (1.0 - fx) + at(y0 + 1, x0 + 1) * fx;
        (top * (1.0 - fy) + bottom * fy) * self.amp
    }
}

fn field_to_image(width: u32, height: u32, field: &[f64], lo: u8, hi: u8) -> GrayImage {
    let pixels = field
        .iter()
        .map(|&v| v.round().clamp(lo as f64, hi as f64) as u8)
        .collect();
    GrayImage::new(width, height, pixels).expect("field covers the raster")
}

struct Recipe {
    /// (cell size, amplitude) pairs of value-noise octaves.
    octaves: &'static [(f64, f64)],
    /// Horizontal and vertical ramp slopes.
    ramp: (f64, f64),
    /// Amplitude of a diagonal micro-ripple.
    ripple: f64,
    /// Soft two-level quantisation strength; produces plateaus and edges.
    terrace: f64,
    /// Scale of the bell-shaped per-pixel grain (sum of three uniforms).
    /// Natural sensor grain is bell-shaped, and that shape matters here:
    /// averaging predictors beat edge-selecting ones under it, which is the
    /// prediction-error statistic the benchmark images rely on.
    grain: f64,
}

fn render(rng: &mut ChaCha8Rng, recipe: &Recipe) -> GrayImage {
    let (w, h) = (CORPUS_SIZE, CORPUS_SIZE);
    let octaves: Vec<NoiseOctave> = recipe
        .octaves
        .iter()
        .map(|&(cell, amp)| NoiseOctave::new(rng, w, h, cell, amp))
        .collect();

    let mut field = vec![0.0f64; (w * h) as usize];
    for y in 0..h as usize {
        for x in 0..w as usize {
            let mut v: f64 = octaves.iter().map(|o| o.sample(x as f64, y as f64)).sum();
            if recipe.terrace > 0.0 {
                v = (v / 40.0).tanh() * recipe.terrace;
            }
            v += recipe.ramp.0 * x as f64 + recipe.ramp.1 * y as f64;
            if recipe.ripple > 0.0 {
                v += recipe.ripple * ((x as f64 - y as f64) * 1.1).sin()
                    + recipe.ripple * 0.8 * ((x + y) as f64 * 0.73).sin();
            }
            if recipe.grain > 0.0 {
                let g: f64 = (0..3)
                    .map(|_| rng.random_range(-recipe.grain..=recipe.grain))
                    .sum();
                v += g;
            }
            field[y * w as usize + x] = 128.0 + v;
        }
    }
    field_to_image(w, h, &field, 2, 253)
}

/// Scatters exact 0 and 255 pixels so guard handling sees real traffic.
fn add_salt_and_pepper(img: GrayImage, rng: &mut ChaCha8Rng, count: usize) -> GrayImage {
    let (w, h) = (img.width(), img.height());
    let mut pixels = img.into_pixels();
    for _ in 0..count {
        let idx = rng.random_range(0..pixels.len());
        pixels[idx] = 0;
        let idx = rng.random_range(0..pixels.len());
        pixels[idx] = 255;
    }
    GrayImage::new(w, h, pixels).expect("dimensions unchanged")
}

/// The six benchmark images, generated from `seed`.
pub fn generate_corpus(seed: u64) -> Vec<(String, GrayImage)> {
    let recipes: &[(&str, Recipe)] = &[
        (
            "hills",
            Recipe {
                octaves: &[(96.0, 70.0), (28.0, 16.0)],
                ramp: (0.0, 0.0),
                ripple: 0.0,
                terrace: 0.0,
                grain: 2.6,
            },
        ),
        (
            "dunes",
            Recipe {
                octaves: &[(64.0, 50.0), (16.0, 9.0)],
                ramp: (0.09, -0.05),
                ripple: 0.8,
                terrace: 0.0,
                grain: 2.9,
            },
        ),
        (
            "mesa",
            Recipe {
                octaves: &[(80.0, 85.0), (20.0, 14.0)],
                ramp: (0.0, 0.04),
                ripple: 0.0,
                terrace: 65.0,
                grain: 2.7,
            },
        ),
        (
            "grain",
            Recipe {
                octaves: &[(40.0, 40.0), (9.0, 8.0)],
                ramp: (0.0, 0.0),
                ripple: 0.9,
                terrace: 0.0,
                grain: 3.8,
            },
        ),
        (
            "weave",
            Recipe {
                octaves: &[(120.0, 55.0), (13.0, 7.0)],
                ramp: (-0.06, 0.02),
                ripple: 1.3,
                terrace: 0.0,
                grain: 3.2,
            },
        ),
        (
            "speckle",
            Recipe {
                octaves: &[(72.0, 65.0), (18.0, 11.0)],
                ramp: (0.03, 0.03),
                ripple: 0.0,
                terrace: 0.0,
                grain: 3.0,
            },
        ),
    ];

    recipes
        .iter()
        .enumerate()
        .map(|(n, (name, recipe))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut img = render(&mut rng, recipe);
            if *name == "speckle" {
                img = add_salt_and_pepper(img, &mut rng, 180);
            }
            (name.to_string(), img)
        })
        .collect()
}

/// The corpus at the bundled seed.
pub fn benchmark_corpus() -> Vec<(String, GrayImage)> {
    generate_corpus(CORPUS_SEED)
}

/// Writes the corpus as PGM files into `dir`, returning the paths.
pub fn write_corpus(dir: &Path, seed: u64) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for (name, img) in generate_corpus(seed) {
        let path = dir.join(format!("{name}.pgm"));
        std::fs::write(&path, save_pgm(&img))?;
        paths.push(path);
    }
    Ok(paths)
}
