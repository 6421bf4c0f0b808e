//! Algorithm descriptors: which embedding family, how many histogram bins,
//! and which predictors.

use crate::error::{Error, Result};
use crate::predictor::{PredictorKind, PredictorSet};

/// Number of prediction-error histogram bins used to carry payload bits.
///
/// One bin embeds at error 0 only; two bins add -1; three bins add +1.
/// Wider variants shift out-of-bin errors by up to 2 instead of 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    OneBin,
    TwoBin,
    ThreeBin,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::OneBin, Variant::TwoBin, Variant::ThreeBin];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::OneBin => "1bin",
            Variant::TwoBin => "2bin",
            Variant::ThreeBin => "3bin",
        }
    }

    pub fn parse(name: &str) -> Option<Variant> {
        match name {
            "1bin" => Some(Variant::OneBin),
            "2bin" => Some(Variant::TwoBin),
            "3bin" => Some(Variant::ThreeBin),
            _ => None,
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Embedding family: the dual/multi-predictor codec, or the classic
/// single-predictor modification-of-prediction-errors baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Mpe2,
    MpeBaseline,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Mpe2 => "mpe2",
            Family::MpeBaseline => "mpe",
        }
    }

    pub fn parse(name: &str) -> Option<Family> {
        match name {
            "mpe2" => Some(Family::Mpe2),
            "mpe" => Some(Family::MpeBaseline),
            _ => None,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A fully specified algorithm configuration.
///
/// Construction enforces the pairing rules: the baseline family supports two
/// and three bins with an implicit MED predictor, and multi-predictor (more
/// than two) configurations exist only for the one-bin family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algorithm {
    family: Family,
    variant: Variant,
    /// `None` for the baseline, which always predicts with MED alone.
    predictors: Option<PredictorSet>,
}

impl Algorithm {
    pub fn mpe2(variant: Variant, predictors: PredictorSet) -> Result<Self> {
        if predictors.len() > 2 && variant != Variant::OneBin {
            return Err(Error::AlgorithmConfig(format!(
                "mpe2 with {} predictors requires the 1bin variant",
                predictors.len()
            )));
        }
        Ok(Algorithm {
            family: Family::Mpe2,
            variant,
            predictors: Some(predictors),
        })
    }

    pub fn mpe_baseline(variant: Variant) -> Result<Self> {
        if variant == Variant::OneBin {
            return Err(Error::AlgorithmConfig(
                "the mpe baseline supports only the 2bin and 3bin variants".into(),
            ));
        }
        Ok(Algorithm {
            family: Family::MpeBaseline,
            variant,
            predictors: None,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Predictor kinds used by this configuration. The baseline always
    /// predicts with MED alone.
    pub fn predictor_kinds(&self) -> &[PredictorKind] {
        match &self.predictors {
            Some(set) => set.kinds(),
            None => &[PredictorKind::Med],
        }
    }

    /// Registry name of the underlying strategy, e.g. `mpe2-1bin`.
    pub fn strategy_name(&self) -> String {
        format!("{}-{}", self.family, self.variant)
    }

    /// Compact descriptor used in CSV rows and log lines, e.g.
    /// `mpe2-1bin/med+mean`. Contains no commas so it stays a single
    /// CSV field.
    pub fn descriptor(&self) -> String {
        let mut s = self.strategy_name();
        s.push('/');
        for (n, kind) in self.predictor_kinds().iter().enumerate() {
            if n > 0 {
                s.push('+');
            }
            s.push_str(kind.as_str());
        }
        s
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.descriptor())
    }
}
