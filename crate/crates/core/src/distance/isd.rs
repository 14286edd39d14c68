//! Randomized information-set search for light logical vectors.
//!
//! Each iteration reduces a kernel basis to reduced row echelon form with the
//! pivot columns taken in a random site order, so every row is the unique
//! kernel vector with a single one on the chosen information set. A light
//! vector shows up as a row whenever the information set meets its support
//! in one position. Rows and pairwise sums of the lightest rows are checked.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Found, Problem};
use crate::gf2::{xor_into, BitMatrix, WORD_BITS};

const CHUNK: usize = 16;
const PAIR_POOL: usize = 24;

/// Returns the lightest logical vector seen and the iterations run. The
/// kernel basis itself is checked first, so a logical vector is always found
/// when one exists.
pub(super) fn random_search(
    problem: &Problem,
    iterations: usize,
    seed: u64,
    pool: &rayon::ThreadPool,
) -> (Option<Found>, u64) {
    let basis = &problem.kernel;
    let mut best = None;
    for i in 0..basis.rows() {
        consider(problem, basis.row(i), &mut best);
    }
    let chunks = iterations.div_ceil(CHUNK);
    let sampled = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(c as u64);
                let mut work = basis.clone();
                let mut order: Vec<usize> = (0..problem.sites()).collect();
                let mut best = None;
                let count = CHUNK.min(iterations - c * CHUNK);
                for _ in 0..count {
                    order.shuffle(&mut rng);
                    work.clone_from(basis);
                    eliminate(problem, &mut work, &order);
                    harvest(problem, &work, &mut best);
                }
                best
            })
            .reduce(|| None, Found::pick)
    });
    (Found::pick(best, sampled), iterations as u64)
}

fn eliminate(problem: &Problem, m: &mut BitMatrix, order: &[usize]) {
    let rows = m.rows();
    let stride = m.stride();
    let mut rank = 0;
    let mut pivot_row = vec![0u64; stride];
    'sites: for &site in order {
        for offset in 0..problem.bits_per_site() {
            if rank == rows {
                break 'sites;
            }
            let col = problem.bit_of(site, offset);
            let (wi, mask) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let Some(p) = (rank..rows).find(|&r| m.row(r)[wi] & mask != 0) else {
                continue;
            };
            m.swap_rows(p, rank);
            pivot_row.copy_from_slice(m.row(rank));
            for r in 0..rows {
                if r != rank && m.row(r)[wi] & mask != 0 {
                    xor_into(m.row_mut(r), &pivot_row);
                }
            }
            rank += 1;
        }
    }
}

fn harvest(problem: &Problem, m: &BitMatrix, best: &mut Option<Found>) {
    let mut weights: Vec<(usize, usize)> = (0..m.rows())
        .map(|i| (problem.weight(m.row(i)), i))
        .collect();
    for &(w, i) in &weights {
        if best.as_ref().is_none_or(|b: &Found| w <= b.weight) {
            consider(problem, m.row(i), best);
        }
    }
    weights.sort_unstable();
    weights.truncate(PAIR_POOL);
    let mut sum = vec![0u64; m.stride()];
    for (a, &(_, i)) in weights.iter().enumerate() {
        for &(_, j) in &weights[a + 1..] {
            sum.copy_from_slice(m.row(i));
            xor_into(&mut sum, m.row(j));
            consider(problem, &sum, best);
        }
    }
}

fn consider(problem: &Problem, v: &[u64], best: &mut Option<Found>) {
    let weight = problem.weight(v);
    if weight == 0 || best.as_ref().is_some_and(|b| weight > b.weight) {
        return;
    }
    if problem.is_logical(v) {
        *best = Found::pick(
            best.take(),
            Some(Found {
                weight,
                bits: v.to_vec(),
            }),
        );
    }
}
