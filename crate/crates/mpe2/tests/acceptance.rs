//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! The capacity/PSNR table reproductions were published for the canonical
//! USC-SIPI scans, which are not bundled. Every ordering, range, bound, and
//! round-trip check runs unconditionally on the bundled synthetic corpus;
//! the exact table-value comparisons additionally run, at their stated
//! tolerances, when `MPE2_SIPI_DIR` points at a directory containing
//! lena.pgm, baboon.pgm, airplane.pgm, peppers.pgm, boat.pgm, barbara.pgm.

mod common;

use std::sync::OnceLock;
use std::time::Instant;

use mpe2::scheme::{self, Scheme};
use mpe2::{
    capacity, corpus, embed, extract, load_pgm, polarity_stats, save_pgm, Algorithm, BitStream,
    EmbedMeta, GrayImage, PredictorKind, PredictorSet, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FRACTIONS: [f64; 3] = [0.25, 0.5, 1.0];
const PAYLOAD_SEED: u64 = 0x2024_0acc;

/// The algorithm grid of criterion 1: the three dual-predictor variants,
/// both baselines, and the one-bin configuration with three and four
/// predictors.
fn algorithm_grid() -> Vec<Algorithm> {
    let mut grid = vec![
        Algorithm::mpe2(Variant::OneBin, PredictorSet::default()).unwrap(),
        Algorithm::mpe2(Variant::TwoBin, PredictorSet::default()).unwrap(),
        Algorithm::mpe2(Variant::ThreeBin, PredictorSet::default()).unwrap(),
        Algorithm::mpe_baseline(Variant::TwoBin).unwrap(),
        Algorithm::mpe_baseline(Variant::ThreeBin).unwrap(),
    ];
    for predictors in ["med,mean,median", "med,mean,median,min"] {
        grid.push(
            Algorithm::mpe2(Variant::OneBin, PredictorSet::parse(predictors).unwrap()).unwrap(),
        );
    }
    grid
}

struct RunFact {
    image: String,
    algorithm: Algorithm,
    fraction: f64,
    payload_bits: usize,
    capacity: usize,
    psnr_db: f64,
    roundtrip_ok: bool,
    max_abs_delta: i32,
    frame_untouched: bool,
    tail_untouched: bool,
}

struct BlockTiming {
    image: String,
    algorithm: Algorithm,
    elapsed_s: f64,
}

struct Evaluation {
    facts: Vec<RunFact>,
    timings: Vec<BlockTiming>,
}

fn corpus_images() -> &'static Vec<(String, GrayImage)> {
    static CORPUS: OnceLock<Vec<(String, GrayImage)>> = OnceLock::new();
    CORPUS.get_or_init(corpus::benchmark_corpus)
}

fn evaluate_corpus(images: &[(String, GrayImage)]) -> Evaluation {
    let mut facts = Vec::new();
    let mut timings = Vec::new();

    for (name, cover) in images {
        for algorithm in algorithm_grid() {
            let scheme = scheme::build(&algorithm);
            let started = Instant::now();

            let max_capacity = capacity(scheme.as_ref(), cover);
            let mut rng = ChaCha8Rng::seed_from_u64(
                PAYLOAD_SEED ^ name.len() as u64 ^ (algorithm.descriptor().len() as u64) << 8,
            );
            let full_stream = BitStream::random(&mut rng, max_capacity);

            for fraction in FRACTIONS {
                let payload_bits = (fraction * max_capacity as f64).floor() as usize;
                let payload = BitStream::from_bits(&full_stream.to_bit_vec()[..payload_bits]);
                let outcome = embed(scheme.as_ref(), cover, &payload).expect("payload fits");
                let psnr_db = mpe2::metrics::psnr(cover, &outcome.stego).unwrap();

                let width = cover.width() as usize;
                let mut max_abs_delta = 0i32;
                let mut frame_untouched = true;
                let mut tail_untouched = true;
                for (idx, (&c, &s)) in cover
                    .as_slice()
                    .iter()
                    .zip(outcome.stego.as_slice())
                    .enumerate()
                {
                    let delta = (c as i32 - s as i32).abs();
                    max_abs_delta = max_abs_delta.max(delta);
                    if delta != 0 {
                        if idx < width || idx % width == 0 {
                            frame_untouched = false;
                        }
                        if idx > outcome.meta.last_index {
                            tail_untouched = false;
                        }
                    }
                }

                let roundtrip_ok = match extract(scheme.as_ref(), &outcome.stego, &outcome.meta) {
                    Ok((bits, recovered)) => bits == payload && recovered == *cover,
                    Err(_) => false,
                };

                facts.push(RunFact {
                    image: name.clone(),
                    algorithm: algorithm.clone(),
                    fraction,
                    payload_bits,
                    capacity: max_capacity,
                    psnr_db,
                    roundtrip_ok,
                    max_abs_delta,
                    frame_untouched,
                    tail_untouched,
                });
            }

            timings.push(BlockTiming {
                image: name.clone(),
                algorithm,
                elapsed_s: started.elapsed().as_secs_f64(),
            });
        }
    }

    Evaluation { facts, timings }
}

fn evaluation() -> &'static Evaluation {
    static EVAL: OnceLock<Evaluation> = OnceLock::new();
    EVAL.get_or_init(|| evaluate_corpus(corpus_images()))
}

fn capacity_of(facts: &[RunFact], image: &str, descriptor: &str) -> usize {
    facts
        .iter()
        .find(|f| f.image == image && f.algorithm.descriptor() == descriptor)
        .unwrap_or_else(|| panic!("no run for {image}/{descriptor}"))
        .capacity
}

const CANONICAL_NAMES: [&str; 6] = ["lena", "baboon", "airplane", "peppers", "boat", "barbara"];

/// Published full-capacity values for the canonical scans:
/// (image, 1bin, 2bin, 3bin capacities, 1bin PSNR).
const TABLE_VALUES: [(&str, usize, usize, usize, f64); 6] = [
    ("lena", 57_406, 77_746, 101_121, 49.64),
    ("baboon", 40_957, 48_250, 64_019, 49.67),
    ("airplane", 69_213, 89_184, 116_517, 49.78),
    ("peppers", 62_796, 82_419, 106_634, 49.74),
    ("boat", 46_760, 64_211, 83_615, 49.65),
    ("barbara", 37_685, 50_445, 65_619, 49.52),
];

/// Loads the canonical corpus when `MPE2_SIPI_DIR` supplies it.
fn canonical_corpus() -> Option<Vec<(String, GrayImage)>> {
    let dir = std::env::var_os("MPE2_SIPI_DIR")?;
    let dir = std::path::PathBuf::from(dir);
    let mut images = Vec::new();
    for name in CANONICAL_NAMES {
        let path = dir.join(format!("{name}.pgm"));
        let bytes = std::fs::read(&path).ok()?;
        images.push((name.to_string(), load_pgm(&bytes).ok()?));
    }
    Some(images)
}

#[test]
fn criterion1_reversibility_and_runtime() {
    let eval = evaluation();
    assert_eq!(eval.facts.len(), 6 * 7 * FRACTIONS.len());

    for fact in &eval.facts {
        assert!(
            fact.roundtrip_ok,
            "round trip failed: {} / {} at fraction {}",
            fact.image,
            fact.algorithm,
            fact.fraction
        );
    }
    for timing in &eval.timings {
        assert!(
            timing.elapsed_s < 2.0,
            "{} / {} took {:.2} s",
            timing.image,
            timing.algorithm,
            timing.elapsed_s
        );
    }
    println!(
        "criterion 1 (reversibility, {} runs, slowest block {:.3} s): PASS",
        eval.facts.len(),
        eval.timings
            .iter()
            .map(|t| t.elapsed_s)
            .fold(0.0, f64::max)
    );
}

#[test]
fn criterion2_exhaustive_rule_oracle() {
    let started = Instant::now();
    for variant in Variant::ALL {
        let scheme = common::mpe2_scheme(variant, "med,mean");
        common::assert_inverse(scheme.as_ref(), (-8, 8), 2);
        common::assert_totality(scheme.as_ref(), 2, (-8, 8));
    }
    for predictors in ["med,mean,median", "med,mean,median,min"] {
        let scheme = common::mpe2_scheme(Variant::OneBin, predictors);
        let n = scheme.algorithm().predictor_kinds().len();
        common::assert_inverse(scheme.as_ref(), (-4, 4), n);
        common::assert_totality(scheme.as_ref(), n, (-4, 4));
    }
    for variant in [Variant::TwoBin, Variant::ThreeBin] {
        let scheme = common::baseline_scheme(variant);
        common::assert_inverse(scheme.as_ref(), (-8, 8), 1);
        common::assert_totality(scheme.as_ref(), 1, (-8, 8));
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "oracle took {elapsed:?}");
    println!(
        "criterion 2 (exhaustive rule oracle in {:.0} ms): PASS",
        elapsed.as_secs_f64() * 1e3
    );
}

#[test]
fn criterion3_distortion_bounds() {
    let eval = evaluation();
    for fact in &eval.facts {
        match fact.algorithm.variant() {
            Variant::OneBin => assert_eq!(
                fact.max_abs_delta, 1,
                "{} / {}: one-bin distortion must be exactly 1",
                fact.image, fact.algorithm
            ),
            Variant::TwoBin | Variant::ThreeBin => assert!(
                fact.max_abs_delta <= 2,
                "{} / {}: distortion {} exceeds 2",
                fact.image,
                fact.algorithm,
                fact.max_abs_delta
            ),
        }
        assert!(
            fact.frame_untouched,
            "{} / {}: first row or column modified",
            fact.image, fact.algorithm
        );
        assert!(
            fact.tail_untouched,
            "{} / {}: pixel after the last embedding position modified",
            fact.image, fact.algorithm
        );
    }
    println!("criterion 3 (distortion bounds, frame and tail untouched): PASS");
}

#[test]
fn criterion4_analytic_psnr_floors() {
    let cases = [
        (Variant::OneBin, 49.89),
        (Variant::TwoBin, 45.91),
        (Variant::ThreeBin, 43.87),
    ];
    for (variant, expected) in cases {
        let floor = mpe2::metrics::theoretical_floor(variant);
        assert!(
            (floor - expected).abs() <= 0.01,
            "{variant}: {floor:.4} vs {expected}"
        );
    }
    println!("criterion 4 (analytic PSNR floors 49.89 / 45.91 / 43.87): PASS");
}

#[test]
fn criterion5_full_capacity_psnr_window() {
    let eval = evaluation();
    let one_bin = Algorithm::mpe2(Variant::OneBin, PredictorSet::default())
        .unwrap()
        .descriptor();
    for fact in &eval.facts {
        if fact.fraction == 1.0 && fact.algorithm.descriptor() == one_bin {
            assert!(
                (48.5..=50.5).contains(&fact.psnr_db),
                "{}: full-capacity one-bin PSNR {:.3} outside [48.5, 50.5]",
                fact.image,
                fact.psnr_db
            );
        }
    }

    match canonical_corpus() {
        Some(images) => {
            let canon = evaluate_corpus(&images);
            for (name, _, _, _, table_psnr) in TABLE_VALUES {
                let fact = canon
                    .facts
                    .iter()
                    .find(|f| {
                        f.image == name && f.fraction == 1.0 && f.algorithm.descriptor() == one_bin
                    })
                    .unwrap();
                assert!(
                    (fact.psnr_db - table_psnr).abs() <= 0.5,
                    "{name}: PSNR {:.3} not within 0.5 dB of {table_psnr}",
                    fact.psnr_db
                );
            }
            println!("criterion 5 (PSNR window and canonical table match): PASS");
        }
        None => println!(
            "criterion 5 (PSNR window; canonical scans not supplied via MPE2_SIPI_DIR, \
             table comparison vacuous): PASS"
        ),
    }
}

#[test]
fn criterion6_capacity_tables_and_orderings() {
    let eval = evaluation();
    let d1 = "mpe2-1bin/med+mean";
    let d2 = "mpe2-2bin/med+mean";
    let d3 = "mpe2-3bin/med+mean";
    let base2 = "mpe-2bin/med";

    for (name, _) in corpus_images() {
        let c1 = capacity_of(&eval.facts, name, d1);
        let c2 = capacity_of(&eval.facts, name, d2);
        let c3 = capacity_of(&eval.facts, name, d3);
        let b2 = capacity_of(&eval.facts, name, base2);
        assert!(c3 > c2 && c2 > c1, "{name}: ordering {c3} > {c2} > {c1}");
        assert!(
            c1 > b2,
            "{name}: one-bin dual-predictor {c1} not above two-bin baseline {b2}"
        );
    }

    match canonical_corpus() {
        Some(images) => {
            let canon = evaluate_corpus(&images);
            for (name, t1, t2, t3, _) in TABLE_VALUES {
                for (descriptor, table) in [(d1, t1), (d2, t2), (d3, t3)] {
                    let got = capacity_of(&canon.facts, name, descriptor);
                    let tolerance = (table as f64 * 0.05) as usize;
                    assert!(
                        got.abs_diff(table) <= tolerance,
                        "{name}/{descriptor}: capacity {got} not within 5% of {table}"
                    );
                }
            }
            println!("criterion 6 (capacity orderings and canonical table match): PASS");
        }
        None => println!(
            "criterion 6 (capacity orderings; canonical scans not supplied via MPE2_SIPI_DIR, \
             table comparison vacuous): PASS"
        ),
    }
}

#[test]
fn criterion7_capacity_payload_identity() {
    let eval = evaluation();
    // Saturating payloads embed exactly the capacity.
    for fact in &eval.facts {
        if fact.fraction == 1.0 {
            assert_eq!(
                fact.payload_bits, fact.capacity,
                "{} / {}",
                fact.image, fact.algorithm
            );
        }
    }

    // Two different payloads of equal length land on the same positions.
    let images = corpus_images();
    let (first_name, first_cover) = &images[0];
    for algorithm in algorithm_grid() {
        let scheme = scheme::build(&algorithm);
        assert_same_geometry(scheme.as_ref(), first_name, first_cover);
    }
    let one_bin = Algorithm::mpe2(Variant::OneBin, PredictorSet::default()).unwrap();
    for (name, cover) in images.iter().skip(1) {
        let scheme = scheme::build(&one_bin);
        assert_same_geometry(scheme.as_ref(), name, cover);
    }
    println!("criterion 7 (capacity equals saturating payload, content-independent): PASS");
}

fn assert_same_geometry(scheme: &dyn Scheme, name: &str, cover: &GrayImage) {
    let max = capacity(scheme, cover);
    let bits = max / 2;
    let mut rng_a = ChaCha8Rng::seed_from_u64(101);
    let mut rng_b = ChaCha8Rng::seed_from_u64(202);
    let a = embed(scheme, cover, &BitStream::random(&mut rng_a, bits)).unwrap();
    let b = embed(scheme, cover, &BitStream::random(&mut rng_b, bits)).unwrap();
    assert_eq!(
        a.meta.last_index,
        b.meta.last_index,
        "{name}/{}",
        scheme.algorithm()
    );
    assert_eq!(a.meta.overhead, b.meta.overhead);

    let positions = mpe2::engine::embed_positions(scheme, cover);
    assert_eq!(positions.len(), max);
    if bits > 0 {
        assert_eq!(a.meta.last_index, positions[bits - 1]);
    }
}

#[test]
fn criterion8_multi_predictor_trend() {
    let eval = evaluation();
    let two = "mpe2-1bin/med+mean";
    let three = "mpe2-1bin/med+mean+median";
    let four = "mpe2-1bin/med+mean+median+min";

    // Round trips for the 3- and 4-predictor runs are asserted in
    // criterion 1; here the capacity stays within 20% of the 2-predictor
    // value and the polarity census follows the published trend.
    let sets = [
        PredictorSet::parse("med,mean").unwrap(),
        PredictorSet::parse("med,mean,median").unwrap(),
        PredictorSet::parse("med,mean,median,min").unwrap(),
    ];
    for (name, cover) in corpus_images() {
        let c2 = capacity_of(&eval.facts, name, two) as f64;
        for descriptor in [three, four] {
            let cn = capacity_of(&eval.facts, name, descriptor) as f64;
            let diff = (cn - c2).abs() / c2;
            assert!(
                diff < 0.20,
                "{name}/{descriptor}: capacity differs from 2-predictor by {:.1}%",
                diff * 100.0
            );
        }

        let unipolar: Vec<usize> = sets
            .iter()
            .map(|set| polarity_stats(set, cover).unipolar_total())
            .collect();
        println!(
            "  polarity baseline {name}: unipolar 2p={} 3p={} 4p={}",
            unipolar[0], unipolar[1], unipolar[2]
        );
        assert!(
            unipolar[0] >= unipolar[1] && unipolar[1] >= unipolar[2],
            "{name}: unipolar count grew with more predictors: {unipolar:?}"
        );
    }
    println!("criterion 8 (multi-predictor capacity and polarity trend): PASS");
}

#[test]
fn criterion9_format_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf0f0);

    // PGM round trips on 1000 random rasters.
    for _ in 0..1000 {
        let width = rng.random_range(1..=40);
        let height = rng.random_range(1..=40);
        let pixels = (0..width as usize * height as usize)
            .map(|_| rng.random_range(0..=255u8))
            .collect();
        let img = GrayImage::new(width, height, pixels).unwrap();
        let bytes = save_pgm(&img);
        let reloaded = load_pgm(&bytes).unwrap();
        assert_eq!(reloaded, img);
        assert_eq!(save_pgm(&reloaded), bytes);
    }

    // Sidecar round trips on 1000 random valid documents.
    for _ in 0..1000 {
        let meta = random_meta(&mut rng);
        let text = mpe2::sidecar::write_sidecar(&meta);
        let parsed = mpe2::sidecar::read_sidecar(&text).unwrap();
        assert_eq!(parsed, meta);
        assert_eq!(mpe2::sidecar::write_sidecar(&parsed), text);
    }

    // Dirty padding is rejected.
    assert!(matches!(
        BitStream::from_bytes(vec![0x75], 6),
        Err(mpe2::Error::PaddingNonZero)
    ));
    for _ in 0..200 {
        let bit_len = rng.random_range(1..=64usize);
        if bit_len % 8 == 0 {
            continue;
        }
        let mut bytes = BitStream::random(&mut rng, bit_len).as_bytes().to_vec();
        let last = bytes.len() - 1;
        let dirty_bit = 1u8 << rng.random_range(0..(8 - bit_len % 8));
        bytes[last] |= dirty_bit;
        assert!(BitStream::from_bytes(bytes, bit_len).is_err());
    }

    // Malformed sidecars are rejected.
    let good = mpe2::sidecar::write_sidecar(&EmbedMeta {
        algorithm: Algorithm::mpe2(Variant::OneBin, PredictorSet::default()).unwrap(),
        width: 8,
        height: 8,
        payload_bits: 11,
        last_index: 27,
        overhead: vec![9, 18],
    });
    let mutations: Vec<String> = vec![
        good.replace("MPE2META 1", "MPE2META 2"),
        good.replace("algorithm", "algorithn"),
        good.replacen("variant", "varlant", 1),
        good.trim_end().to_string(),
        format!("{good}stray\n"),
        good.replace("med", "avg"),
        String::new(),
    ];
    for text in mutations {
        assert!(
            mpe2::sidecar::read_sidecar(&text).is_err(),
            "accepted: {text:?}"
        );
    }

    println!("criterion 9 (format round trips, 1000 cases each, rejections): PASS");
}

fn random_meta(rng: &mut ChaCha8Rng) -> EmbedMeta {
    let width = rng.random_range(2..=48u32);
    let height = rng.random_range(2..=48u32);

    let algorithm = if rng.random_bool(0.3) {
        let variant = if rng.random_bool(0.5) {
            Variant::TwoBin
        } else {
            Variant::ThreeBin
        };
        Algorithm::mpe_baseline(variant).unwrap()
    } else {
        let variant = match rng.random_range(0..3) {
            0 => Variant::OneBin,
            1 => Variant::TwoBin,
            _ => Variant::ThreeBin,
        };
        let count = if variant == Variant::OneBin {
            rng.random_range(2..=4usize)
        } else {
            2
        };
        let mut kinds = PredictorKind::ALL.to_vec();
        for n in (1..kinds.len()).rev() {
            kinds.swap(n, rng.random_range(0..=n));
        }
        kinds.truncate(count);
        Algorithm::mpe2(variant, PredictorSet::new(&kinds).unwrap()).unwrap()
    };

    let scan_index = |rng: &mut ChaCha8Rng| {
        let i = rng.random_range(2..=height) as usize;
        let j = rng.random_range(2..=width) as usize;
        (i - 1) * width as usize + (j - 1)
    };

    let (payload_bits, last_index) = if rng.random_bool(0.15) {
        (0, EmbedMeta::sentinel(width, height))
    } else {
        (rng.random_range(1..=5000usize), scan_index(rng))
    };

    let mut overhead: Vec<usize> = (0..rng.random_range(0..8usize))
        .map(|_| scan_index(rng))
        .collect();
    overhead.sort_unstable();
    overhead.dedup();

    EmbedMeta {
        algorithm,
        width,
        height,
        payload_bits,
        last_index,
        overhead,
    }
}
