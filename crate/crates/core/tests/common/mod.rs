//! Brute-force oracles on dense bitmask rows, sharing no code with the crate
//! beyond reading matrix entries.

#![allow(dead_code)]

use qhp::BitMatrix;
use rand::Rng;

/// Rows as bitmasks over at most 128 columns.
pub fn masks(m: &BitMatrix) -> Vec<u128> {
    assert!(m.cols() <= 128);
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter(|&j| m.get(i, j))
                .fold(0u128, |acc, j| acc | 1 << j)
        })
        .collect()
}

/// Echelon basis keyed by leading bit.
#[derive(Default)]
pub struct Span {
    basis: Vec<u128>,
}

impl Span {
    pub fn new(rows: impl IntoIterator<Item = u128>) -> Self {
        let mut s = Span::default();
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn reduce(&self, mut v: u128) -> u128 {
        for &b in &self.basis {
            let lead = 127 - b.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    pub fn insert(&mut self, v: u128) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        self.basis.push(v);
        self.basis.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn contains(&self, v: u128) -> bool {
        self.reduce(v) == 0
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    Span::new(masks(m)).rank()
}

/// Rank by plain elimination on rows of booleans; any width.
pub fn wide_rank(m: &BitMatrix) -> usize {
    let mut rows: Vec<Vec<bool>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

fn parity(v: u128) -> bool {
    v.count_ones() % 2 == 1
}

/// Classical `(n, k, d)` of `ker h` by enumerating all `2^n` words;
/// `d = None` when `k = 0`.
pub fn classical(h: &BitMatrix) -> (usize, usize, Option<usize>) {
    let n = h.cols();
    assert!(n <= 22, "classical oracle is exponential in n");
    let rows = masks(h);
    let d = (1u128..1 << n)
        .filter(|&v| rows.iter().all(|&r| !parity(r & v)))
        .map(|v| v.count_ones() as usize)
        .min();
    (n, n - rank(h), d)
}

/// `min(d1, d2, d̃1, d̃2)` over whichever codes are nontrivial.
pub fn min_factor_distance(hs: &[&BitMatrix]) -> Option<usize> {
    hs.iter()
        .flat_map(|h| [classical(h).2, classical(&h.transpose()).2])
        .flatten()
        .min()
}

/// CSS distance by enumerating all `2^n` vectors in each sector.
pub fn css_distance(g_x: &BitMatrix, g_z: &BitMatrix) -> Option<usize> {
    let n = g_x.cols();
    assert!(n <= 22, "CSS oracle is exponential in n");
    let sector = |checks: &BitMatrix, stabilizers: &BitMatrix| {
        let rows = masks(checks);
        let span = Span::new(masks(stabilizers));
        (1u128..1 << n)
            .filter(|&v| rows.iter().all(|&r| !parity(r & v)) && !span.contains(v))
            .map(|v| v.count_ones() as usize)
            .min()
    };
    [sector(g_x, g_z), sector(g_z, g_x)]
        .into_iter()
        .flatten()
        .min()
}

/// Every `w`-subset of `0..n`, as a bitmask.
pub fn subsets(n: usize, w: usize) -> Vec<u64> {
    fn go(start: usize, n: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - left {
            go(i + 1, n, left - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if w <= n {
        go(0, n, w, 0, &mut out);
    }
    out
}

/// Stabilizer-code distance by trying every Pauli of weight 1, 2, … in turn.
/// Returns `(weight, x, z)` of the first logical found.
pub fn symplectic_distance(a_x: &BitMatrix, a_z: &BitMatrix) -> Option<(usize, u64, u64)> {
    let n = a_x.cols();
    assert!(n <= 60);
    let (xs, zs) = (masks(a_x), masks(a_z));
    let stabilizers = Span::new(xs.iter().zip(&zs).map(|(&x, &z)| x << 64 | z));
    let commutes = |x: u64, z: u64| {
        xs.iter()
            .zip(&zs)
            .all(|(&gx, &gz)| parity(gx & z as u128) == parity(gz & x as u128))
    };
    for w in 1..=n {
        for support in subsets(n, w) {
            let sites: Vec<usize> = (0..n).filter(|&i| support >> i & 1 == 1).collect();
            // Each site carries X, Y or Z.
            for code in 0..3u64.pow(w as u32) {
                let (mut x, mut z, mut c) = (0u64, 0u64, code);
                for &s in &sites {
                    match c % 3 {
                        0 => x |= 1 << s,
                        1 => z |= 1 << s,
                        _ => {
                            x |= 1 << s;
                            z |= 1 << s;
                        }
                    }
                    c /= 3;
                }
                if commutes(x, z) && !stabilizers.contains((x as u128) << 64 | z as u128) {
                    return Some((w, x, z));
                }
            }
        }
    }
    None
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.random_bool(density));
        }
    }
    m
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize, density: f64) -> BitMatrix {
    let mut m = BitMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let b = rng.random_bool(density);
            m.set(i, j, b);
            m.set(j, i, b);
        }
    }
    m
}
