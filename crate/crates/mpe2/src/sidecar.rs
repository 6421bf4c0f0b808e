//! The `.mpe2meta` sidecar: a line-oriented text file carrying everything
//! extraction needs besides the stego image itself.
//!
//! Grammar (LF line endings, one trailing LF):
//!
//! ```text
//! MPE2META 1
//! algorithm <mpe2|mpe>
//! variant <1bin|2bin|3bin>
//! predictors <comma-separated kind names>
//! size <width> <height>
//! payload_bits <n>
//! last_index <0-based linear index, or width*height for an empty payload>
//! overhead_count <m>
//! <one overhead index per line, ascending>
//! ```
//!
//! Serialization is canonical: parsing and re-serializing reproduces the
//! input byte for byte.

use crate::algorithm::{Algorithm, Family, Variant};
use crate::engine::EmbedMeta;
use crate::error::{Error, Result};
use crate::predictor::PredictorSet;

const MAGIC: &str = "MPE2META 1";

pub fn write_sidecar(meta: &EmbedMeta) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!("algorithm {}\n", meta.algorithm.family()));
    out.push_str(&format!("variant {}\n", meta.algorithm.variant()));
    out.push_str("predictors ");
    for (n, kind) in meta.algorithm.predictor_kinds().iter().enumerate() {
        if n > 0 {
            out.push(',');
        }
        out.push_str(kind.as_str());
    }
    out.push('\n');
    out.push_str(&format!("size {} {}\n", meta.width, meta.height));
    out.push_str(&format!("payload_bits {}\n", meta.payload_bits));
    out.push_str(&format!("last_index {}\n", meta.last_index));
    out.push_str(&format!("overhead_count {}\n", meta.overhead.len()));
    for idx in &meta.overhead {
        out.push_str(&format!("{idx}\n"));
    }
    out
}

fn bad(msg: impl Into<String>) -> Error {
    Error::SidecarFormat(msg.into())
}

fn field<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| bad(format!("missing {key} line")))?;
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| bad(format!("expected \"{key} ...\", got \"{line}\"")))
}

fn parse_number(token: &str, what: &str) -> Result<usize> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad(format!("invalid {what} \"{token}\"")));
    }
    token
        .parse()
        .map_err(|_| bad(format!("{what} out of range: \"{token}\"")))
}

pub fn read_sidecar(text: &str) -> Result<EmbedMeta> {
    if !text.ends_with('\n') {
        return Err(bad("missing trailing newline"));
    }
    let body = &text[..text.len() - 1];
    let mut lines = body.split('\n');

    let magic = lines.next().ok_or_else(|| bad("empty sidecar"))?;
    if magic != MAGIC {
        return Err(bad(format!(
            "bad magic or version: \"{magic}\", expected \"{MAGIC}\""
        )));
    }

    let family_name = field(lines.next(), "algorithm")?;
    let family = Family::parse(family_name)
        .ok_or_else(|| bad(format!("unknown algorithm \"{family_name}\"")))?;

    let variant_name = field(lines.next(), "variant")?;
    let variant = Variant::parse(variant_name)
        .ok_or_else(|| bad(format!("unknown variant \"{variant_name}\"")))?;

    let predictor_names = field(lines.next(), "predictors")?;
    let algorithm = match family {
        Family::Mpe2 => {
            let set = PredictorSet::parse(predictor_names)
                .map_err(|e| bad(format!("bad predictor list: {e}")))?;
            Algorithm::mpe2(variant, set).map_err(|e| bad(e.to_string()))?
        }
        Family::MpeBaseline => {
            if predictor_names != "med" {
                return Err(bad(format!(
                    "the mpe baseline uses \"predictors med\", got \"{predictor_names}\""
                )));
            }
            Algorithm::mpe_baseline(variant).map_err(|e| bad(e.to_string()))?
        }
    };

    let size = field(lines.next(), "size")?;
    let (w, h) = size
        .split_once(' ')
        .ok_or_else(|| bad(format!("size needs two numbers, got \"{size}\"")))?;
    let width = parse_number(w, "width")?;
    let height = parse_number(h, "height")?;
    if width == 0 || height == 0 || width > u32::MAX as usize || height > u32::MAX as usize {
        return Err(bad(format!("bad image size {width}x{height}")));
    }
    let (width, height) = (width as u32, height as u32);
    let pixel_count = width as usize * height as usize;

    let payload_bits = parse_number(field(lines.next(), "payload_bits")?, "payload_bits")?;
    let last_index = parse_number(field(lines.next(), "last_index")?, "last_index")?;

    let sentinel = EmbedMeta::sentinel(width, height);
    if last_index > sentinel {
        return Err(bad(format!(
            "last_index {last_index} out of range for {width}x{height}"
        )));
    }
    let addresses_scan_area = |idx: usize| idx / width as usize >= 1 && idx % width as usize >= 1;
    if last_index < sentinel && !addresses_scan_area(last_index) {
        return Err(bad(format!(
            "last_index {last_index} lies in the first row or column"
        )));
    }
    if (payload_bits == 0) != (last_index == sentinel) {
        return Err(bad(format!(
            "payload_bits {payload_bits} disagrees with last_index {last_index}"
        )));
    }

    let overhead_count = parse_number(field(lines.next(), "overhead_count")?, "overhead_count")?;
    let mut overhead = Vec::with_capacity(overhead_count.min(pixel_count));
    for n in 0..overhead_count {
        let idx = parse_number(
            lines
                .next()
                .ok_or_else(|| bad(format!("overhead_count {overhead_count}, found {n} indices")))?,
            "overhead index",
        )?;
        if idx >= pixel_count {
            return Err(bad(format!("overhead index {idx} out of range")));
        }
        if !addresses_scan_area(idx) {
            return Err(bad(format!(
                "overhead index {idx} lies in the first row or column"
            )));
        }
        if let Some(&prev) = overhead.last() {
            if idx <= prev {
                return Err(bad(format!(
                    "overhead indices not strictly increasing: {prev} then {idx}"
                )));
            }
        }
        overhead.push(idx);
    }
    if let Some(extra) = lines.next() {
        return Err(bad(format!("unexpected trailing line \"{extra}\"")));
    }

    Ok(EmbedMeta {
        algorithm,
        width,
        height,
        payload_bits,
        last_index,
        overhead,
    })
}
