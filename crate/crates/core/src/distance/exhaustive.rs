//! Gray-code enumeration of a whole kernel.

use rayon::prelude::*;

use super::{Found, Problem};
use crate::gf2::{dot_words, xor_into};

/// Leading basis coordinates fixed per parallel chunk.
const SPLIT_BITS: usize = 6;

/// Visits every nonzero vector of `ker C` and returns the lightest logical
/// one together with the number of vectors visited.
pub(super) fn enumerate(problem: &Problem, pool: &rayon::ThreadPool) -> (Option<Found>, u64) {
    let basis = &problem.kernel;
    let dim = basis.rows();
    assert!(dim < 64, "kernel too large for full enumeration");
    let rows: Vec<&[u64]> = (0..dim).map(|i| basis.row(i)).collect();
    // Detector syndrome of each basis row; dim < 64 bounds the detector count.
    let syndromes: Vec<u64> = rows
        .iter()
        .map(|r| {
            (0..problem.detectors.rows()).fold(0u64, |acc, d| {
                acc | (dot_words(problem.detectors.row(d), r) as u64) << d
            })
        })
        .collect();

    let split = dim.min(SPLIT_BITS);
    let inner = dim - split;
    let best = pool.install(|| {
        (0..1u64 << split)
            .into_par_iter()
            .map(|chunk| {
                let mut v = vec![0u64; basis.stride()];
                let mut syn = 0u64;
                for b in 0..split {
                    if chunk >> b & 1 == 1 {
                        xor_into(&mut v, rows[inner + b]);
                        syn ^= syndromes[inner + b];
                    }
                }
                let mut best: Option<Found> = None;
                let consider = |v: &[u64], syn: u64, best: &mut Option<Found>| {
                    if syn == 0 {
                        return;
                    }
                    let weight = problem.weight(v);
                    if best.as_ref().is_none_or(|b| weight <= b.weight) {
                        *best = Found::pick(
                            best.take(),
                            Some(Found {
                                weight,
                                bits: v.to_vec(),
                            }),
                        );
                    }
                };
                consider(&v, syn, &mut best);
                for g in 1..1u64 << inner {
                    let flip = g.trailing_zeros() as usize;
                    xor_into(&mut v, rows[flip]);
                    syn ^= syndromes[flip];
                    consider(&v, syn, &mut best);
                }
                best
            })
            .reduce(|| None, Found::pick)
    });
    (best, 1u64 << dim)
}
