//! Helpers shared by the oracle and acceptance test binaries.

#![allow(dead_code)]

use std::collections::HashMap;

use mpe2::scheme::{self, Disposition, Scheme};
use mpe2::{Algorithm, PredictorSet, Variant};

pub fn mpe2_scheme(variant: Variant, predictors: &str) -> Box<dyn Scheme> {
    let alg = Algorithm::mpe2(variant, PredictorSet::parse(predictors).unwrap()).unwrap();
    scheme::build(&alg)
}

pub fn baseline_scheme(variant: Variant) -> Box<dyn Scheme> {
    scheme::build(&Algorithm::mpe_baseline(variant).unwrap())
}

/// Every vector in `[lo, hi]^n`.
pub fn vectors(n: usize, lo: i32, hi: i32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |e| {
                    let mut v = v.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn shifted(errors: &[i32], delta: i32) -> Vec<i32> {
    errors.iter().map(|&e| e + delta).collect()
}

/// For every cover vector in range and both bit values: apply the embed
/// decision, re-classify the shifted vector, and demand the same bit and the
/// negated delta. Panics on the first violation.
pub fn assert_inverse(scheme: &dyn Scheme, cover_range: (i32, i32), n: usize) {
    let mut embeds = 0usize;
    for errors in vectors(n, cover_range.0, cover_range.1) {
        match scheme.disposition(&errors) {
            Disposition::Embed {
                bit0_delta,
                bit1_delta,
            } => {
                embeds += 1;
                for (bit, delta) in [(0u8, bit0_delta), (1u8, bit1_delta)] {
                    let stego = shifted(&errors, delta);
                    let (got_bit, restore) = scheme
                        .classify_extract(&stego)
                        .unwrap_or_else(|e| panic!("{errors:?} bit {bit}: {e}"));
                    assert_eq!(got_bit, Some(bit), "cover {errors:?} stego {stego:?}");
                    assert_eq!(restore, -delta, "cover {errors:?} stego {stego:?}");
                }
            }
            Disposition::Shift(delta) => {
                let stego = shifted(&errors, delta);
                let (got_bit, restore) = scheme
                    .classify_extract(&stego)
                    .unwrap_or_else(|e| panic!("shift of {errors:?}: {e}"));
                assert_eq!(got_bit, None, "shift of {errors:?}");
                assert_eq!(restore, -delta, "shift of {errors:?}");
            }
            Disposition::Skip => {
                let (got_bit, restore) = scheme
                    .classify_extract(&errors)
                    .unwrap_or_else(|e| panic!("skip of {errors:?}: {e}"));
                assert_eq!((got_bit, restore), (None, 0), "skip of {errors:?}");
            }
        }
    }
    assert!(embeds > 0, "range never produced an embeddable vector");
}

/// Forward-enumerates the reachable stego set from a wider cover range, then
/// demands exact agreement inside it and rejection outside it.
pub fn assert_totality(scheme: &dyn Scheme, n: usize, stego_range: (i32, i32)) {
    // Covers reach two beyond the checked stego range (deltas are at most 2).
    let cover_range = (stego_range.0 - 2, stego_range.1 + 2);
    let mut reachable: HashMap<Vec<i32>, (Option<u8>, i32)> = HashMap::new();
    let mut record = |stego: Vec<i32>, outcome: (Option<u8>, i32)| {
        if let Some(prev) = reachable.insert(stego.clone(), outcome) {
            assert_eq!(
                prev, outcome,
                "stego {stego:?} reachable with two different outcomes"
            );
        }
    };

    for errors in vectors(n, cover_range.0, cover_range.1) {
        match scheme.disposition(&errors) {
            Disposition::Embed {
                bit0_delta,
                bit1_delta,
            } => {
                record(shifted(&errors, bit0_delta), (Some(0), -bit0_delta));
                record(shifted(&errors, bit1_delta), (Some(1), -bit1_delta));
            }
            Disposition::Shift(delta) => record(shifted(&errors, delta), (None, -delta)),
            Disposition::Skip => record(errors, (None, 0)),
        }
    }

    let mut rejected = 0usize;
    for stego in vectors(n, stego_range.0, stego_range.1) {
        match reachable.get(&stego) {
            Some(&expected) => {
                let got = scheme
                    .classify_extract(&stego)
                    .unwrap_or_else(|e| panic!("reachable {stego:?} rejected: {e}"));
                assert_eq!(got, expected, "stego {stego:?}");
            }
            None => {
                assert!(
                    scheme.classify_extract(&stego).is_err(),
                    "unreachable {stego:?} not rejected"
                );
                rejected += 1;
            }
        }
    }
    // Baseline 2bin is total over the integers; everything else must reject
    // at least one in-range state.
    let total_map = scheme.algorithm().strategy_name() == "mpe-2bin";
    assert_eq!(rejected > 0, !total_map, "{}", scheme.algorithm());
}
