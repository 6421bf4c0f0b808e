//! Corpus benchmark runner: capacity, PSNR, and round-trip verification per
//! (image, algorithm, payload fraction), exported as CSV.

use crate::algorithm::Algorithm;
use crate::bitstream::BitStream;
use crate::engine;
use crate::error::{Error, Result};
use crate::image::{load_pgm_file, GrayImage};
use crate::metrics::{format_psnr, psnr};
use crate::scheme;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::time::Instant;

/// One benchmark measurement.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub image: String,
    pub algorithm: String,
    pub payload_bits: usize,
    pub max_capacity: usize,
    pub psnr_db: f64,
    /// Wall-clock embed + extract time. The only field exempt from the
    /// deterministic-output contract.
    pub elapsed_ms: u64,
    pub rng_seed: u64,
    pub roundtrip_ok: bool,
}

pub const CSV_HEADER: &str =
    "image,algorithm,payload_bits,max_capacity,psnr_db,elapsed_ms,rng_seed,roundtrip_ok";

/// Stable 64-bit hash for deriving per-(image, algorithm) payload streams;
/// must not change across releases or the recorded numbers drift.
fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn payload_stream_seed(master: u64, image: &str, descriptor: &str) -> u64 {
    master ^ fnv1a64(image.as_bytes()) ^ fnv1a64(descriptor.as_bytes()).rotate_left(32)
}

/// Runs every (image, algorithm, fraction) combination over in-memory
/// images.
///
/// For a fixed image and algorithm the payloads of different fractions are
/// prefixes of one seeded stream, so distortion grows monotonically with the
/// fraction and PSNR is non-increasing.
pub fn bench_images(
    images: &[(String, GrayImage)],
    algorithms: &[Algorithm],
    fractions: &[f64],
    seed: u64,
) -> Result<Vec<BenchRecord>> {
    for &f in fractions {
        if !(f > 0.0 && f <= 1.0) {
            return Err(Error::BenchConfig(format!(
                "payload fraction {f} outside (0, 1]"
            )));
        }
    }

    let mut records = Vec::with_capacity(images.len() * algorithms.len() * fractions.len());
    for (name, cover) in images {
        for algorithm in algorithms {
            let scheme = scheme::build(algorithm);
            let descriptor = algorithm.descriptor();
            let max_capacity = engine::capacity(scheme.as_ref(), cover);
            let mut rng =
                ChaCha8Rng::seed_from_u64(payload_stream_seed(seed, name, &descriptor));
            let full_stream = BitStream::random(&mut rng, max_capacity);

            for &fraction in fractions {
                let payload_bits = (fraction * max_capacity as f64).floor() as usize;
                let payload =
                    BitStream::from_bits(&full_stream.to_bit_vec()[..payload_bits]);

                let start = Instant::now();
                let record = run_one(scheme.as_ref(), cover, &payload, max_capacity);
                let elapsed_ms = start.elapsed().as_millis() as u64;

                let (psnr_db, roundtrip_ok) = record;
                records.push(BenchRecord {
                    image: name.clone(),
                    algorithm: descriptor.clone(),
                    payload_bits,
                    max_capacity,
                    psnr_db,
                    elapsed_ms,
                    rng_seed: seed,
                    roundtrip_ok,
                });
            }
        }
    }

    records.sort_by(|a, b| {
        (&a.image, &a.algorithm, a.payload_bits).cmp(&(&b.image, &b.algorithm, b.payload_bits))
    });
    Ok(records)
}

fn run_one(
    scheme: &dyn scheme::Scheme,
    cover: &GrayImage,
    payload: &BitStream,
    _max_capacity: usize,
) -> (f64, bool) {
    let outcome = match engine::embed(scheme, cover, payload) {
        Ok(outcome) => outcome,
        Err(_) => return (f64::NAN, false),
    };
    let psnr_db = psnr(cover, &outcome.stego).expect("dimensions match");
    let ok = match engine::extract(scheme, &outcome.stego, &outcome.meta) {
        Ok((bits, recovered)) => bits == *payload && recovered == *cover,
        Err(_) => false,
    };
    (psnr_db, ok)
}

/// Loads a corpus of PGM files and benchmarks it.
pub fn bench_run(
    corpus: &[PathBuf],
    algorithms: &[Algorithm],
    fractions: &[f64],
    seed: u64,
) -> Result<Vec<BenchRecord>> {
    let mut images = Vec::with_capacity(corpus.len());
    for path in corpus {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        images.push((name, load_pgm_file(path)?));
    }
    bench_images(&images, algorithms, fractions, seed)
}

/// Renders records as CSV: header plus one row per record, decimal dot,
/// `inf` for the PSNR of an unmodified image.
pub fn write_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.image,
            r.algorithm,
            r.payload_bits,
            r.max_capacity,
            format_psnr(r.psnr_db),
            r.elapsed_ms,
            r.rng_seed,
            r.roundtrip_ok
        ));
    }
    out
}

/// Every algorithm the registry can name with default predictors, in
/// registry order: the standard bench lineup.
pub fn default_algorithms() -> Vec<Algorithm> {
    scheme::REGISTRY
        .iter()
        .map(|entry| entry.algorithm(None).expect("registry entries are valid"))
        .collect()
}
