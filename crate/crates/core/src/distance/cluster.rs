//! Exhaustive elimination of logical vectors by connected support.
//!
//! Two sites are adjacent when some constraint row touches both. If the
//! support of a minimum-weight logical vector split into two parts with no
//! constraint row touching both, each part would satisfy every constraint on
//! its own and at least one of them would still be logical, contradicting
//! minimality. So every minimum-weight logical vector has a connected
//! support, and enumerating connected site sets of size `w` decides whether
//! one of weight `w` exists.
//!
//! Whether a site set `S` carries a logical vector is a small rank question:
//! stack, for each bit in `S`, its column of the constraint matrix on top of
//! its column of the detector matrix. A logical vector supported in `S`
//! exists iff some combination of those columns vanishes on the constraint
//! part but not on the detector part. The columns are eliminated
//! incrementally along the depth-first enumeration.
//!
//! Connected sets are enumerated with the ESU scheme: each connected set is
//! produced exactly once, from its smallest site.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{Found, Problem};
use crate::gf2::{words_for, xor_into, WORD_BITS};

const FLUSH_EVERY: u64 = 4096;

pub(super) struct ClusterSearch<'a> {
    problem: &'a Problem,
    adjacency: Vec<Vec<u32>>,
    /// Column `b` of `[C; D]`, `cw` words each.
    columns: Vec<u64>,
    cw: usize,
    c_bits: usize,
}

pub(super) struct ClusterOutcome {
    pub found: Option<Found>,
    /// Levels `1..=completed` hold no logical vector.
    pub completed: usize,
    pub visits: u64,
}

enum Level {
    Found(Found),
    Empty,
    Aborted,
}

struct Scratch {
    marks: Vec<u16>,
    cols: Vec<usize>,
    basis: Vec<u64>,
    pivots: Vec<usize>,
    combos: Vec<u64>,
    tmp: Vec<u64>,
    visits: u64,
}

struct Shared<'s> {
    counter: &'s AtomicU64,
    abort: &'s AtomicBool,
    limit: Option<u64>,
}

impl Shared<'_> {
    /// Publishes local visits; returns false once the budget is gone.
    fn flush(&self, scratch: &mut Scratch) -> bool {
        let total = self.counter.fetch_add(scratch.visits, Ordering::Relaxed) + scratch.visits;
        scratch.visits = 0;
        if self.limit.is_some_and(|l| total > l) {
            self.abort.store(true, Ordering::Relaxed);
        }
        !self.abort.load(Ordering::Relaxed)
    }
}

impl<'a> ClusterSearch<'a> {
    pub fn new(problem: &'a Problem) -> Self {
        let c_bits = problem.constraint.rows();
        let stacked = problem.constraint.vconcat(&problem.detectors).transpose();
        let cw = stacked.stride();
        let mut columns = Vec::with_capacity(stacked.rows() * cw);
        for b in 0..stacked.rows() {
            columns.extend_from_slice(stacked.row(b));
        }
        let sites = problem.sites();
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); sites];
        for i in 0..problem.constraint.rows() {
            let mut touched: Vec<usize> = problem
                .constraint
                .row_support(i)
                .into_iter()
                .map(|b| problem.site_of(b))
                .collect();
            touched.dedup();
            for &a in &touched {
                for &b in &touched {
                    if a != b {
                        adjacency[a].push(b as u32);
                    }
                }
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
            adj.dedup();
        }
        ClusterSearch {
            problem,
            adjacency,
            columns,
            cw,
            c_bits,
        }
    }

    /// Runs levels `1..=max_level` until a logical vector turns up, the levels
    /// run out, or the visit budget is spent.
    pub fn run(
        &self,
        max_level: usize,
        budget: Option<u64>,
        pool: &rayon::ThreadPool,
    ) -> ClusterOutcome {
        let max_level = max_level.min(64 / self.problem.bits_per_site());
        let mut visits = 0u64;
        let mut completed = 0;
        for level in 1..=max_level {
            let remaining = budget.map(|b| b.saturating_sub(visits));
            let (result, spent) = self.level(level, remaining, pool);
            match result {
                Level::Found(f) => {
                    return ClusterOutcome {
                        found: Some(f),
                        completed,
                        visits: visits + spent,
                    }
                }
                Level::Empty => {
                    visits += spent;
                    completed = level;
                }
                Level::Aborted => {
                    // An aborted level always consumed the whole remainder.
                    visits = budget.unwrap_or(visits);
                    break;
                }
            }
        }
        ClusterOutcome {
            found: None,
            completed,
            visits,
        }
    }

    fn level(&self, target: usize, limit: Option<u64>, pool: &rayon::ThreadPool) -> (Level, u64) {
        let counter = AtomicU64::new(0);
        let abort = AtomicBool::new(false);
        let shared = Shared {
            counter: &counter,
            abort: &abort,
            limit,
        };
        let sites = self.problem.sites();
        let best = pool.install(|| {
            (0..sites)
                .into_par_iter()
                .map_init(
                    || self.scratch(target),
                    |scratch, root| {
                        if abort.load(Ordering::Relaxed) {
                            return None;
                        }
                        let mut best = None;
                        self.search_root(root, target, scratch, &shared, &mut best);
                        shared.flush(scratch);
                        best
                    },
                )
                .reduce(|| None, Found::pick)
        });
        let spent = counter.load(Ordering::Relaxed);
        if abort.load(Ordering::Relaxed) {
            return (Level::Aborted, spent);
        }
        match best {
            Some(f) => (Level::Found(f), spent),
            None => (Level::Empty, spent),
        }
    }

    fn scratch(&self, target: usize) -> Scratch {
        let slots = target * self.problem.bits_per_site();
        Scratch {
            marks: vec![0; self.problem.sites()],
            cols: Vec::with_capacity(slots),
            basis: Vec::with_capacity(slots * self.cw),
            pivots: Vec::with_capacity(slots),
            combos: Vec::with_capacity(slots),
            tmp: vec![0; self.cw],
            visits: 0,
        }
    }

    fn search_root(
        &self,
        root: usize,
        target: usize,
        scratch: &mut Scratch,
        shared: &Shared<'_>,
        best: &mut Option<Found>,
    ) {
        scratch.visits += 1;
        if let Some(combo) = self.add_site(scratch, root) {
            self.record(scratch, combo, best);
        } else if target > 1 {
            self.mark(scratch, root, true);
            let ext: Vec<u32> = self.adjacency[root]
                .iter()
                .copied()
                .filter(|&u| u as usize > root)
                .collect();
            self.extend(scratch, &ext, root, 1, target, shared, best);
            self.mark(scratch, root, false);
        }
        scratch.cols.clear();
        scratch.pivots.clear();
        scratch.combos.clear();
        scratch.basis.clear();
    }

    /// Grows the current set (of size `size`) by each site of `ext` in turn.
    /// Returns false when the budget ran out.
    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        scratch: &mut Scratch,
        ext: &[u32],
        root: usize,
        size: usize,
        target: usize,
        shared: &Shared<'_>,
        best: &mut Option<Found>,
    ) -> bool {
        for (idx, &w) in ext.iter().enumerate() {
            let w = w as usize;
            scratch.visits += 1;
            if scratch.visits >= FLUSH_EVERY && !shared.flush(scratch) {
                return false;
            }
            let saved = (scratch.cols.len(), scratch.pivots.len());
            if let Some(combo) = self.add_site(scratch, w) {
                self.record(scratch, combo, best);
            } else if size + 1 < target {
                let mut next: Vec<u32> = ext[idx + 1..].to_vec();
                next.extend(
                    self.adjacency[w]
                        .iter()
                        .copied()
                        .filter(|&u| u as usize > root && scratch.marks[u as usize] == 0),
                );
                self.mark(scratch, w, true);
                let alive = self.extend(scratch, &next, root, size + 1, target, shared, best);
                self.mark(scratch, w, false);
                if !alive {
                    return false;
                }
            }
            scratch.cols.truncate(saved.0);
            scratch.pivots.truncate(saved.1);
            scratch.combos.truncate(saved.1);
            scratch.basis.truncate(saved.1 * self.cw);
        }
        true
    }

    fn mark(&self, scratch: &mut Scratch, site: usize, on: bool) {
        let delta: i32 = if on { 1 } else { -1 };
        let apply = |m: &mut u16| *m = (*m as i32 + delta) as u16;
        apply(&mut scratch.marks[site]);
        for &u in &self.adjacency[site] {
            apply(&mut scratch.marks[u as usize]);
        }
    }

    /// Adds the columns of `site` to the elimination state. Returns the
    /// combination of local columns forming a logical vector, if one appears.
    fn add_site(&self, scratch: &mut Scratch, site: usize) -> Option<u64> {
        let cw = self.cw;
        for offset in 0..self.problem.bits_per_site() {
            let bit = self.problem.bit_of(site, offset);
            let local = scratch.cols.len();
            scratch.cols.push(bit);
            scratch
                .tmp
                .copy_from_slice(&self.columns[bit * cw..(bit + 1) * cw]);
            let mut combo = 1u64 << local;
            for (e, &p) in scratch.pivots.iter().enumerate() {
                if scratch.tmp[p / WORD_BITS] >> (p % WORD_BITS) & 1 == 1 {
                    xor_into(&mut scratch.tmp, &scratch.basis[e * cw..(e + 1) * cw]);
                    combo ^= scratch.combos[e];
                }
            }
            match self.constraint_pivot(&scratch.tmp) {
                Some(p) => {
                    scratch.basis.extend_from_slice(&scratch.tmp);
                    scratch.pivots.push(p);
                    scratch.combos.push(combo);
                }
                None if scratch.tmp.iter().any(|&w| w != 0) => return Some(combo),
                None => {}
            }
        }
        None
    }

    /// Lowest set bit within the constraint rows.
    fn constraint_pivot(&self, v: &[u64]) -> Option<usize> {
        let full = self.c_bits / WORD_BITS;
        for (wi, &w) in v[..full].iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        let rem = self.c_bits % WORD_BITS;
        if rem > 0 {
            let w = v[full] & ((1u64 << rem) - 1);
            if w != 0 {
                return Some(full * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn record(&self, scratch: &Scratch, combo: u64, best: &mut Option<Found>) {
        let mut bits = vec![0u64; words_for(self.problem.nbits)];
        let mut rest = combo;
        while rest != 0 {
            let b = scratch.cols[rest.trailing_zeros() as usize];
            bits[b / WORD_BITS] ^= 1u64 << (b % WORD_BITS);
            rest &= rest - 1;
        }
        let weight = self.problem.weight(&bits);
        *best = Found::pick(best.take(), Some(Found { weight, bits }));
    }
}
