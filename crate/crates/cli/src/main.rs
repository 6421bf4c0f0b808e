//! Command-line surface for the reversible data hiding toolkit.
//!
//! Exit codes: 0 success, 1 usage, 2 payload exceeds capacity,
//! 3 format or metadata mismatch, 4 inconsistent stego data.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use mpe2::{
    bench, corpus, engine, load_pgm, metrics, save_pgm, scheme, sidecar, Algorithm, BitStream,
    GrayImage, PredictorSet,
};

#[derive(Parser)]
#[command(
    name = "mpe2",
    version,
    about = "Reversible data hiding in grayscale PGM images via prediction-error histogram shifting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgorithmArgs {
    /// Embedding family: mpe2 (dual/multi predictor) or mpe (single-predictor baseline).
    #[arg(long, default_value = "mpe2")]
    family: String,

    /// Histogram bins carrying payload: 1bin, 2bin, or 3bin.
    #[arg(long, default_value = "1bin")]
    variant: String,

    /// Comma-separated predictors for the mpe2 family (default med,mean).
    /// Choices: med, mean, median, min.
    #[arg(long)]
    predictors: Option<String>,
}

impl AlgorithmArgs {
    fn build(&self) -> Result<Algorithm, CliError> {
        let name = format!("{}-{}", self.family, self.variant);
        let entry = scheme::lookup(&name).ok_or_else(|| {
            CliError::usage(format!(
                "no algorithm \"{name}\"; available: {}",
                scheme::REGISTRY
                    .iter()
                    .map(|e| e.name)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })?;
        let predictors = self
            .predictors
            .as_deref()
            .map(PredictorSet::parse)
            .transpose()
            .map_err(|e| CliError::usage(e.to_string()))?;
        entry
            .algorithm(predictors)
            .map_err(|e| CliError::usage(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Embed a payload into a cover image, writing the stego image and its
    /// .mpe2meta sidecar.
    Embed {
        /// Cover image (binary PGM, maxval 255).
        cover: PathBuf,
        /// Payload file, read as MSB-first bits.
        payload: PathBuf,
        /// Number of payload bits to embed (default: the whole file).
        #[arg(long)]
        bits: Option<usize>,
        /// Output stego image path.
        #[arg(long)]
        out_stego: PathBuf,
        /// Output sidecar path.
        #[arg(long)]
        out_meta: PathBuf,
        #[command(flatten)]
        algorithm: AlgorithmArgs,
        /// Allow an output path to overwrite an input path.
        #[arg(long)]
        overwrite: bool,
    },
    /// Recover the payload and the original image from a stego image and its
    /// sidecar.
    Extract {
        /// Stego image (binary PGM).
        stego: PathBuf,
        /// Sidecar written by embed.
        meta: PathBuf,
        /// Output payload path (ceil(bits/8) bytes, zero padded).
        #[arg(long)]
        out_payload: PathBuf,
        /// Output recovered image path.
        #[arg(long)]
        out_recovered: PathBuf,
        /// Allow an output path to overwrite an input path.
        #[arg(long)]
        overwrite: bool,
    },
    /// Print the embedding capacity of a cover image in bits.
    Capacity {
        cover: PathBuf,
        #[command(flatten)]
        algorithm: AlgorithmArgs,
    },
    /// Print the PSNR between two images in dB, or "inf" if identical.
    Psnr { reference: PathBuf, test: PathBuf },
    /// Benchmark a corpus directory of .pgm files and write a CSV report.
    Bench {
        /// Directory containing .pgm cover images.
        corpus: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Seed for the deterministic random payloads.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated payload fractions of capacity, each in (0, 1].
        #[arg(long, default_value = "0.25,0.5,1.0")]
        fractions: String,
        /// Comma-separated algorithm names (default: all registered).
        #[arg(long)]
        algorithms: Option<String>,
        /// Predictors applied to the mpe2-family algorithms in the list.
        #[arg(long)]
        predictors: Option<String>,
    },
    /// Write the bundled synthetic benchmark corpus as PGM files.
    GenCorpus {
        /// Output directory.
        out: PathBuf,
        #[arg(long, default_value_t = corpus::CORPUS_SEED)]
        seed: u64,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<mpe2::Error> for CliError {
    fn from(err: mpe2::Error) -> Self {
        let code = match &err {
            mpe2::Error::PayloadExceedsCapacity { .. } => 2,
            mpe2::Error::InconsistentState(_) | mpe2::Error::PayloadShortfall { .. } => 4,
            mpe2::Error::AlgorithmConfig(_) | mpe2::Error::BenchConfig(_) => 1,
            _ => 3,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError {
            code: 3,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) =>
        {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let line = err.to_string().lines().next().unwrap_or("bad usage").to_string();
            eprintln!("mpe2: {line}");
            return ExitCode::from(1);
        }
    };

    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("mpe2: {}", err.message.replace('\n', " "));
            ExitCode::from(err.code)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Embed {
            cover,
            payload,
            bits,
            out_stego,
            out_meta,
            algorithm,
            overwrite,
        } => {
            guard_overwrite(&[&cover, &payload], &[&out_stego, &out_meta], overwrite)?;
            let alg = algorithm.build()?;
            let cover_img = load_image(&cover)?;
            let payload_bits = read_payload(&payload, bits)?;

            let scheme = scheme::build(&alg);
            let max_capacity = engine::capacity(scheme.as_ref(), &cover_img);
            let outcome = engine::embed(scheme.as_ref(), &cover_img, &payload_bits)?;
            let psnr = metrics::psnr(&cover_img, &outcome.stego)?;

            write_atomic(&out_stego, &save_pgm(&outcome.stego))?;
            write_atomic(&out_meta, sidecar::write_sidecar(&outcome.meta).as_bytes())?;

            println!("bits_embedded {}", outcome.bits_embedded);
            println!("capacity {max_capacity}");
            println!("psnr_db {}", metrics::format_psnr(psnr));
            Ok(())
        }
        Command::Extract {
            stego,
            meta,
            out_payload,
            out_recovered,
            overwrite,
        } => {
            guard_overwrite(&[&stego, &meta], &[&out_payload, &out_recovered], overwrite)?;
            let stego_img = load_image(&stego)?;
            let meta_doc = sidecar::read_sidecar(&std::fs::read_to_string(&meta)?)?;
            let scheme = scheme::build(&meta_doc.algorithm);
            let (payload, recovered) = engine::extract(scheme.as_ref(), &stego_img, &meta_doc)?;

            write_atomic(&out_payload, payload.as_bytes())?;
            write_atomic(&out_recovered, &save_pgm(&recovered))?;

            println!("payload_bits {}", payload.bit_len());
            Ok(())
        }
        Command::Capacity { cover, algorithm } => {
            let alg = algorithm.build()?;
            let cover_img = load_image(&cover)?;
            let scheme = scheme::build(&alg);
            println!("{}", engine::capacity(scheme.as_ref(), &cover_img));
            Ok(())
        }
        Command::Psnr { reference, test } => {
            let a = load_image(&reference)?;
            let b = load_image(&test)?;
            println!("{}", metrics::format_psnr(metrics::psnr(&a, &b)?));
            Ok(())
        }
        Command::Bench {
            corpus,
            out,
            seed,
            fractions,
            algorithms,
            predictors,
        } => {
            let fractions = parse_fractions(&fractions)?;
            let algorithms = parse_algorithms(algorithms.as_deref(), predictors.as_deref())?;
            let images = corpus_paths(&corpus)?;
            let records = bench::bench_run(&images, &algorithms, &fractions, seed)?;
            write_atomic(&out, bench::write_csv(&records).as_bytes())?;
            println!("records {}", records.len());
            println!("csv {}", out.display());
            Ok(())
        }
        Command::GenCorpus { out, seed } => {
            let paths = corpus::write_corpus(&out, seed)?;
            for path in &paths {
                println!("{}", path.display());
            }
            Ok(())
        }
    }
}

fn load_image(path: &Path) -> Result<GrayImage, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::from(e).with_context(&path.display().to_string()))?;
    Ok(load_pgm(&bytes)?)
}

impl CliError {
    fn with_context(mut self, context: &str) -> Self {
        self.message = format!("{context}: {}", self.message);
        self
    }
}

/// Reads the requested number of MSB-first bits from a payload file. Files
/// shorter than the requested bit length are rejected, never zero-extended;
/// unused low bits in the final consumed byte must be zero.
fn read_payload(path: &Path, bits: Option<usize>) -> Result<BitStream, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::from(e).with_context(&path.display().to_string()))?;
    let bit_len = bits.unwrap_or(bytes.len() * 8);
    let needed = bit_len.div_ceil(8);
    if bytes.len() < needed {
        return Err(CliError {
            code: 3,
            message: format!(
                "payload file {} holds {} bytes, {bit_len} bits need {needed}",
                path.display(),
                bytes.len()
            ),
        });
    }
    Ok(BitStream::from_bytes(bytes[..needed].to_vec(), bit_len)?)
}

fn parse_fractions(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|token| {
            token
                .trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("bad fraction \"{token}\"")))
        })
        .collect()
}

fn parse_algorithms(
    names: Option<&str>,
    predictors: Option<&str>,
) -> Result<Vec<Algorithm>, CliError> {
    let predictors = predictors
        .map(PredictorSet::parse)
        .transpose()
        .map_err(|e| CliError::usage(e.to_string()))?;
    let entries: Vec<&scheme::SchemeEntry> = match names {
        None => scheme::REGISTRY.iter().collect(),
        Some(list) => list
            .split(',')
            .map(|name| {
                scheme::lookup(name.trim())
                    .ok_or_else(|| CliError::usage(format!("unknown algorithm \"{name}\"")))
            })
            .collect::<Result<_, _>>()?,
    };
    entries
        .into_iter()
        .map(|entry| {
            let preds = match entry.family {
                mpe2::Family::Mpe2 => predictors.clone(),
                mpe2::Family::MpeBaseline => None,
            };
            entry.algorithm(preds).map_err(|e| CliError::usage(e.to_string()))
        })
        .collect()
}

fn corpus_paths(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::from(e).with_context(&dir.display().to_string()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "pgm"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError {
            code: 3,
            message: format!("no .pgm files in {}", dir.display()),
        });
    }
    Ok(paths)
}

/// Outputs appear fully written or not at all: write to a temporary in the
/// target directory, then rename over the destination.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| CliError {
        code: 3,
        message: format!("writing {}: {}", path.display(), e.error),
    })?;
    Ok(())
}

fn guard_overwrite(
    inputs: &[&PathBuf],
    outputs: &[&PathBuf],
    overwrite: bool,
) -> Result<(), CliError> {
    if overwrite {
        return Ok(());
    }
    for output in outputs {
        for input in inputs {
            if paths_collide(input, output) {
                return Err(CliError::usage(format!(
                    "output {} would overwrite input {}; pass --overwrite to allow",
                    output.display(),
                    input.display()
                )));
            }
        }
    }
    Ok(())
}

fn paths_collide(a: &Path, b: &Path) -> bool {
    if a == b {
        return true;
    }
    match (std::path::absolute(a), std::path::absolute(b)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}
