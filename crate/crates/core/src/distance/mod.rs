//! Minimum-weight search over `{v : C·v = 0, v ∉ rowspace(R)}`.
//!
//! One search problem covers all three uses in the crate: classical codewords
//! (`R` empty), one sector of a CSS code (`C = G_X`, `R = G_Z` or the reverse),
//! and symplectic logical operators, where each qubit contributes a pair of
//! bits and the weight counts qubits with either bit set.
//!
//! The strategy ladder is:
//!
//! 1. If `ker C` has dimension at most [`SearchConfig::exact_max_dim`], every
//!    kernel vector is enumerated in Gray-code order. The result is exact.
//! 2. Otherwise a randomized information-set search produces a witnessed upper
//!    bound `U`, and then all connected supports of size `1, 2, …` are
//!    eliminated level by level (see `cluster`). A minimum-weight logical
//!    operator always has a support that is connected in the graph linking
//!    sites that share a check, so exhausting level `w` proves there is no
//!    logical operator of weight `w`. Reaching `U − 1` makes `U` exact.
//!
//! Every parallel stage splits its work into fixed chunks with their own
//! deterministic seeds and reduces to the lightest witness, ties broken by
//! sorted support, so results do not depend on the worker count.

mod cluster;
mod exhaustive;
mod isd;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gf2::{
    dot_words, kernel_intersection, support_order, BitMatrix, BitVector, IncrementalBasis,
};
use crate::stabilizer::{CssCheckMatrix, LogicalOperator, SymplecticCheckMatrix};

/// A code distance: a positive integer, or infinity for a code with no
/// nonzero codewords (no logical operators).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Distance::Infinite)
    }

    /// `⌈d / 2⌉`, with infinity preserved.
    pub fn half_ceil(self) -> Distance {
        match self {
            Distance::Finite(d) => Distance::Finite(d.div_ceil(2)),
            Distance::Infinite => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

// JSON form: a number, or the string "inf".
impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(n) => Ok(Distance::Finite(n as usize)),
            Repr::Str(s) if s == "inf" => Ok(Distance::Infinite),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("bad distance {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certainty {
    /// Every lighter vector was excluded exhaustively.
    Exact,
    /// A witness of this weight exists; lighter ones were not ruled out.
    UpperBound,
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certainty::Exact => "EXACT",
            Certainty::UpperBound => "UPPER_BOUND",
        })
    }
}

/// Budgets and parallelism for a distance search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Exhaust all supports up to this weight regardless of `cluster_budget`.
    /// With `None`, levels run up to the random upper bound minus one while
    /// the budget lasts.
    pub exact_max_weight: Option<usize>,
    /// Enumerate the whole kernel when its dimension is at most this.
    pub exact_max_dim: usize,
    pub random_iterations: usize,
    pub rng_seed: u64,
    pub worker_count: usize,
    /// Support visits allowed for the connected-support stage when
    /// `exact_max_weight` is `None`.
    pub cluster_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            exact_max_weight: None,
            exact_max_dim: 24,
            random_iterations: 20_000,
            rng_seed: 0,
            worker_count: default_workers(),
            cluster_budget: 20_000_000,
        }
    }
}

/// Worker count from `QHP_WORKERS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var("QHP_WORKERS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Work counters of a search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Kernel vectors visited by full enumeration.
    pub enumerated: u64,
    pub random_iterations: u64,
    /// Supports visited by the connected-support stage.
    pub cluster_visits: u64,
    /// Every vector of weight up to this value has been excluded.
    pub excluded_through: usize,
}

impl SearchStats {
    fn merge(&self, other: &SearchStats) -> SearchStats {
        SearchStats {
            enumerated: self.enumerated + other.enumerated,
            random_iterations: self.random_iterations + other.random_iterations,
            cluster_visits: self.cluster_visits + other.cluster_visits,
            excluded_through: self.excluded_through.min(other.excluded_through),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Codeword(BitVector),
    Logical(LogicalOperator),
}

/// Outcome of a distance search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub value: Distance,
    pub certainty: Certainty,
    /// Largest value proven to be a lower bound; equals `value` iff exact.
    pub lower_bound: Distance,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
}

impl DistanceResult {
    pub fn is_exact(&self) -> bool {
        self.certainty == Certainty::Exact
    }

    pub(crate) fn infinite() -> Self {
        DistanceResult {
            value: Distance::Infinite,
            certainty: Certainty::Exact,
            lower_bound: Distance::Infinite,
            witness: None,
            stats: SearchStats::default(),
        }
    }
}

/// How the problem's bits group into weighted sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Layout {
    /// One bit per site.
    Single,
    /// Two interleaved bits per site: bit `2j` is the X part and `2j + 1`
    /// the Z part of qubit `j`.
    Paired,
}

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

/// A candidate vector with its site weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Found {
    pub weight: usize,
    pub bits: Vec<u64>,
}

impl Found {
    fn cmp_key(&self, other: &Found) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| support_order(&self.bits, &other.bits))
    }

    pub fn pick(a: Option<Found>, b: Option<Found>) -> Option<Found> {
        match (a, b) {
            (Some(a), Some(b)) => Some(if b.cmp_key(&a) == Ordering::Less {
                b
            } else {
                a
            }),
            (a, None) => a,
            (None, b) => b,
        }
    }
}

pub(crate) struct Problem {
    layout: Layout,
    nbits: usize,
    constraint: BitMatrix,
    /// Functionals that vanish on the excluded subspace but not on every
    /// kernel vector: `v ∈ ker C` is excluded iff all of them vanish on `v`.
    detectors: BitMatrix,
    kernel: BitMatrix,
}

impl Problem {
    pub fn new(layout: Layout, constraint: BitMatrix, excluded: &BitMatrix) -> Problem {
        let nbits = constraint.cols();
        assert_eq!(
            excluded.cols(),
            nbits,
            "excluded rows have the wrong length"
        );
        if layout == Layout::Paired {
            assert!(nbits.is_multiple_of(2));
        }
        let kernel = constraint.kernel_basis();
        // Only the part of rowspace(R) inside ker C can be hit.
        let excluded = kernel_intersection(&constraint, excluded);
        let excluded_kernel = excluded.kernel_basis();
        let mut span = IncrementalBasis::new(&constraint);
        let mut detectors = Vec::new();
        for i in 0..excluded_kernel.rows() {
            let candidate = excluded_kernel.row_vector(i);
            if span.insert(candidate.words()) {
                detectors.push(candidate);
            }
        }
        Problem {
            layout,
            nbits,
            detectors: BitMatrix::from_rows(nbits, &detectors),
            constraint,
            kernel,
        }
    }

    pub fn sites(&self) -> usize {
        match self.layout {
            Layout::Single => self.nbits,
            Layout::Paired => self.nbits / 2,
        }
    }

    pub fn bits_per_site(&self) -> usize {
        match self.layout {
            Layout::Single => 1,
            Layout::Paired => 2,
        }
    }

    pub fn bit_of(&self, site: usize, offset: usize) -> usize {
        match self.layout {
            Layout::Single => site,
            Layout::Paired => 2 * site + offset,
        }
    }

    pub fn site_of(&self, bit: usize) -> usize {
        match self.layout {
            Layout::Single => bit,
            Layout::Paired => bit / 2,
        }
    }

    #[inline]
    pub fn weight(&self, words: &[u64]) -> usize {
        match self.layout {
            Layout::Single => words.iter().map(|w| w.count_ones() as usize).sum(),
            Layout::Paired => words
                .iter()
                .map(|w| ((w | (w >> 1)) & EVEN_BITS).count_ones() as usize)
                .sum(),
        }
    }

    #[inline]
    pub fn is_logical(&self, words: &[u64]) -> bool {
        (0..self.detectors.rows()).any(|i| dot_words(self.detectors.row(i), words))
    }

    pub fn logical_dimension(&self) -> usize {
        self.detectors.rows()
    }
}

pub(crate) struct RawOutcome {
    pub value: Distance,
    pub lower_bound: Distance,
    pub witness: Option<BitVector>,
    pub stats: SearchStats,
}

impl RawOutcome {
    fn certainty(&self) -> Certainty {
        if self.lower_bound >= self.value {
            Certainty::Exact
        } else {
            Certainty::UpperBound
        }
    }
}

fn thread_pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to start search workers")
}

pub(crate) fn run(problem: &Problem, cfg: &SearchConfig) -> RawOutcome {
    if problem.logical_dimension() == 0 {
        return RawOutcome {
            value: Distance::Infinite,
            lower_bound: Distance::Infinite,
            witness: None,
            stats: SearchStats::default(),
        };
    }
    let pool = thread_pool(cfg.worker_count);
    let mut stats = SearchStats::default();

    if problem.kernel.rows() <= cfg.exact_max_dim {
        let (best, visited) = exhaustive::enumerate(problem, &pool);
        let best = best.expect("a nonzero logical dimension guarantees a logical vector");
        stats.enumerated = visited;
        stats.excluded_through = best.weight - 1;
        return RawOutcome {
            value: Distance::Finite(best.weight),
            lower_bound: Distance::Finite(best.weight),
            witness: Some(BitVector::from_words(problem.nbits, best.bits)),
            stats,
        };
    }

    let (upper, iterations) =
        isd::random_search(problem, cfg.random_iterations, cfg.rng_seed, &pool);
    stats.random_iterations = iterations;
    let upper = upper.expect("the kernel basis always contains a logical vector");

    let cap = upper.weight - 1;
    let max_level = cfg.exact_max_weight.map_or(cap, |w| w.min(cap));
    let budget = match cfg.exact_max_weight {
        Some(_) => None,
        None => Some(cfg.cluster_budget),
    };
    let search = cluster::ClusterSearch::new(problem);
    let outcome = search.run(max_level, budget, &pool);
    stats.cluster_visits = outcome.visits;
    stats.excluded_through = outcome.completed;

    let (value, witness) = match outcome.found {
        Some(f) => {
            stats.excluded_through = f.weight - 1;
            (f.weight, f.bits)
        }
        None => (upper.weight, upper.bits),
    };
    RawOutcome {
        value: Distance::Finite(value),
        lower_bound: Distance::Finite(stats.excluded_through + 1),
        witness: Some(BitVector::from_words(problem.nbits, witness)),
        stats,
    }
}

/// Minimum Hamming weight over `{u : kernel_of·u = 0, u ∉ rowspace(excluded_rowspace)}`,
/// infinite when the set is empty.
pub fn min_weight_excluding(
    kernel_of: &BitMatrix,
    excluded_rowspace: &BitMatrix,
    cfg: &SearchConfig,
) -> DistanceResult {
    let problem = Problem::new(Layout::Single, kernel_of.clone(), excluded_rowspace);
    let raw = run(&problem, cfg);
    DistanceResult {
        certainty: raw.certainty(),
        value: raw.value,
        lower_bound: raw.lower_bound,
        witness: raw.witness.map(Witness::Codeword),
        stats: raw.stats,
    }
}

pub(crate) fn interleave(x: &BitVector, z: &BitVector) -> BitVector {
    let n = x.len();
    let mut out = BitVector::zeros(2 * n);
    for j in x.ones() {
        out.set(2 * j, true);
    }
    for j in z.ones() {
        out.set(2 * j + 1, true);
    }
    out
}

pub(crate) fn deinterleave(v: &BitVector) -> LogicalOperator {
    let n = v.len() / 2;
    let mut x = BitVector::zeros(n);
    let mut z = BitVector::zeros(n);
    for b in v.ones() {
        if b % 2 == 0 {
            x.set(b / 2, true);
        } else {
            z.set(b / 2, true);
        }
    }
    LogicalOperator::new(x, z)
}

/// Minimum OR-weight of a logical operator of a stabilizer code given in
/// symplectic form. Codes with `k = 0` report an exact infinite distance.
pub fn symplectic_min_weight(code: &SymplecticCheckMatrix, cfg: &SearchConfig) -> DistanceResult {
    let (ax, az) = (code.a_x(), code.a_z());
    let n = ax.cols();
    let mut generators = Vec::with_capacity(ax.rows());
    let mut constraints = Vec::with_capacity(ax.rows());
    for i in 0..ax.rows() {
        let (x, z) = (ax.row_vector(i), az.row_vector(i));
        generators.push(interleave(&x, &z));
        // Commutation with (x|z) reads x·b + z·a = 0.
        constraints.push(interleave(&z, &x));
    }
    let problem = Problem::new(
        Layout::Paired,
        BitMatrix::from_rows(2 * n, &constraints),
        &BitMatrix::from_rows(2 * n, &generators),
    );
    let raw = run(&problem, cfg);
    DistanceResult {
        certainty: raw.certainty(),
        value: raw.value,
        lower_bound: raw.lower_bound,
        witness: raw.witness.map(|w| Witness::Logical(deinterleave(&w))),
        stats: raw.stats,
    }
}

/// `min(d_X, d_Z)` of a CSS code, searching each sector separately.
pub fn css_min_weight(code: &CssCheckMatrix, cfg: &SearchConfig) -> DistanceResult {
    let n = code.n();
    // Z-type logicals: G_X·u = 0, u ∉ rowspace(G_Z).
    let z_sector = min_weight_excluding(code.g_x(), code.g_z(), cfg);
    if z_sector.value.is_infinite() {
        return DistanceResult::infinite();
    }
    let x_sector = min_weight_excluding(code.g_z(), code.g_x(), cfg);
    let to_logical = |w: Option<Witness>, z_type: bool| {
        w.map(|w| match w {
            Witness::Codeword(v) if z_type => {
                Witness::Logical(LogicalOperator::new(BitVector::zeros(n), v))
            }
            Witness::Codeword(v) => Witness::Logical(LogicalOperator::new(v, BitVector::zeros(n))),
            other => other,
        })
    };
    let stats = z_sector.stats.merge(&x_sector.stats);
    let lower_bound = z_sector.lower_bound.min(x_sector.lower_bound);
    let (value, witness) = if x_sector.value < z_sector.value {
        (x_sector.value, to_logical(x_sector.witness, false))
    } else {
        (z_sector.value, to_logical(z_sector.witness, true))
    };
    DistanceResult {
        value,
        certainty: if lower_bound >= value {
            Certainty::Exact
        } else {
            Certainty::UpperBound
        },
        lower_bound,
        witness,
        stats,
    }
}
