//! Causal-context predictors and prediction-error vectors.
//!
//! Every predictor estimates a pixel from its three causal neighbours: left,
//! up, and up-left. The first row and first column of an image therefore
//! carry no prediction errors and are never touched by the codec.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// The three causal neighbours of a pixel: `a` left, `b` up, `c` up-left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CausalContext {
    pub a: u8,
    pub b: u8,
    pub c: u8,
}

/// The closed set of supported predictors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PredictorKind {
    /// Median edge detector: min/max of the horizontal and vertical
    /// neighbours near edges, planar estimate `a + b - c` otherwise.
    Med,
    /// Floor of the mean of the three neighbours.
    Mean,
    /// Middle value of the three neighbours.
    Median,
    /// Minimum of the three neighbours.
    Min,
}

impl PredictorKind {
    pub const ALL: [PredictorKind; 4] = [
        PredictorKind::Med,
        PredictorKind::Mean,
        PredictorKind::Median,
        PredictorKind::Min,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PredictorKind::Med => "med",
            PredictorKind::Mean => "mean",
            PredictorKind::Median => "median",
            PredictorKind::Min => "min",
        }
    }

    pub fn parse(name: &str) -> Option<PredictorKind> {
        match name {
            "med" => Some(PredictorKind::Med),
            "mean" => Some(PredictorKind::Mean),
            "median" => Some(PredictorKind::Median),
            "min" => Some(PredictorKind::Min),
            _ => None,
        }
    }
}

impl std::fmt::Display for PredictorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An ordered set of 2 to 4 distinct predictors. Order is significant:
/// the first element is predictor 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictorSet {
    kinds: Vec<PredictorKind>,
}

impl PredictorSet {
    pub fn new(kinds: &[PredictorKind]) -> Result<Self> {
        if kinds.len() < 2 || kinds.len() > 4 {
            return Err(Error::AlgorithmConfig(format!(
                "predictor set needs 2 to 4 predictors, got {}",
                kinds.len()
            )));
        }
        for (n, kind) in kinds.iter().enumerate() {
            if kinds[..n].contains(kind) {
                return Err(Error::AlgorithmConfig(format!(
                    "duplicate predictor \"{kind}\""
                )));
            }
        }
        Ok(PredictorSet {
            kinds: kinds.to_vec(),
        })
    }

    /// Parses a comma-separated predictor list, e.g. `med,mean`.
    pub fn parse(names: &str) -> Result<Self> {
        let kinds = names
            .split(',')
            .map(|name| {
                PredictorKind::parse(name.trim())
                    .ok_or_else(|| Error::AlgorithmConfig(format!("unknown predictor \"{name}\"")))
            })
            .collect::<Result<Vec<_>>>()?;
        PredictorSet::new(&kinds)
    }

    pub fn kinds(&self) -> &[PredictorKind] {
        &self.kinds
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl Default for PredictorSet {
    /// MED then mean, the pairing the dual-predictor algorithms were
    /// designed around.
    fn default() -> Self {
        PredictorSet::new(&[PredictorKind::Med, PredictorKind::Mean]).unwrap()
    }
}

impl std::fmt::Display for PredictorSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (n, kind) in self.kinds.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            f.write_str(kind.as_str())?;
        }
        Ok(())
    }
}

/// Reads the causal context of (i, j) from `source`. Requires i >= 2 and
/// j >= 2; the first row and column have incomplete contexts.
pub fn context_of(source: &GrayImage, i: u32, j: u32) -> Result<CausalContext> {
    if i < 2 || j < 2 || i > source.height() || j > source.width() {
        return Err(Error::OutOfBounds {
            row: i,
            col: j,
            width: source.width(),
            height: source.height(),
        });
    }
    let pixels = source.as_slice();
    let w = source.width() as usize;
    let idx = source.linear_index(i, j);
    Ok(CausalContext {
        a: pixels[idx - 1],
        b: pixels[idx - w],
        c: pixels[idx - w - 1],
    })
}

/// Predicted intensity for a context. MED's planar branch `a + b - c` is
/// used as-is, never clamped: the codec works in signed error space and any
/// rounding here would desynchronise embedding and extraction. (Its branch
/// guards in fact confine the value to [min(a,b), max(a,b)].)
pub fn predict(kind: PredictorKind, ctx: CausalContext) -> i32 {
    let (a, b, c) = (ctx.a as i32, ctx.b as i32, ctx.c as i32);
    match kind {
        PredictorKind::Med => {
            if c >= a.max(b) {
                a.min(b)
            } else if c <= a.min(b) {
                a.max(b)
            } else {
                a + b - c
            }
        }
        PredictorKind::Mean => (a + b + c) / 3,
        PredictorKind::Median => a.max(b).min(a.min(b).max(c)),
        PredictorKind::Min => a.min(b).min(c),
    }
}

/// Prediction errors `actual - prediction` for each predictor kind, written
/// into `out`. Returns the filled prefix.
pub fn error_vector_into<'a>(
    kinds: &[PredictorKind],
    ctx: CausalContext,
    actual: u8,
    out: &'a mut [i32; 4],
) -> &'a [i32] {
    for (k, &kind) in kinds.iter().enumerate() {
        out[k] = actual as i32 - predict(kind, ctx);
    }
    &out[..kinds.len()]
}

/// Prediction errors of the pixel at (i, j) against its causal context in
/// `source`.
pub fn error_vector(set: &PredictorSet, source: &GrayImage, i: u32, j: u32) -> Result<Vec<i32>> {
    let ctx = context_of(source, i, j)?;
    let actual = source.pixel(i, j)?;
    let mut buf = [0i32; 4];
    Ok(error_vector_into(set.kinds(), ctx, actual, &mut buf).to_vec())
}
