//! Codes on periodic square lattices: the canonical toric code, rotated
//! checkerboard codes, and non-bipartite ZXXZ codes.
//!
//! A torus is given by two integer periodicity vectors `L1`, `L2`; points of
//! `Z²` differing by `m1·L1 + m2·L2` are identified.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::stabilizer::{CssCheckMatrix, SymplecticCheckMatrix};

pub type Point = (i64, i64);

/// Two linearly independent integer vectors spanning the identification lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicityVectors {
    l1: Point,
    l2: Point,
}

impl PeriodicityVectors {
    pub fn new(l1: Point, l2: Point) -> Result<Self> {
        if l1.0 * l2.1 - l1.1 * l2.0 == 0 {
            return Err(Error::DegenerateLattice(l1, l2));
        }
        Ok(PeriodicityVectors { l1, l2 })
    }

    pub fn l1(&self) -> Point {
        self.l1
    }

    pub fn l2(&self) -> Point {
        self.l2
    }

    /// Signed area `a1·b2 − b1·a2`; never zero.
    pub fn det(&self) -> i64 {
        self.l1.0 * self.l2.1 - self.l1.1 * self.l2.0
    }

    /// Number of lattice sites in the torus.
    pub fn area(&self) -> usize {
        self.det().unsigned_abs() as usize
    }

    /// Both vectors have even 1-norm, so the plaquette two-coloring survives
    /// the identification.
    pub fn is_bipartite(&self) -> bool {
        norm1(self.l1) % 2 == 0 && norm1(self.l2) % 2 == 0
    }
}

fn norm1(v: Point) -> i64 {
    v.0.abs() + v.1.abs()
}

fn norm_inf(v: Point) -> i64 {
    v.0.abs().max(v.1.abs())
}

/// `(g, s, t)` with `g = gcd(a, b) ≥ 0` and `s·a + t·b = g`.
fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1, 0);
    let (mut t0, mut t1) = (0, 1);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Fundamental domain of the torus in Hermite normal form: the lattice is
/// spanned by `(width, shear)` and `(0, height)`, and every point has a unique
/// representative with `0 ≤ x < width`, `0 ≤ y < height`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cluster {
    vectors: PeriodicityVectors,
    width: i64,
    shear: i64,
    height: i64,
}

impl Cluster {
    pub fn new(vectors: PeriodicityVectors) -> Self {
        let ((a1, b1), (a2, b2)) = (vectors.l1, vectors.l2);
        let (width, s, t) = egcd(a1, a2);
        // a1 = a2 = 0 would make the lattice degenerate.
        debug_assert!(width > 0);
        let shear = s * b1 + t * b2;
        let height = ((a2 * b1 - a1 * b2) / width).abs();
        Cluster {
            vectors,
            width,
            shear: shear.rem_euclid(height),
            height,
        }
    }

    pub fn vectors(&self) -> PeriodicityVectors {
        self.vectors
    }

    pub fn len(&self) -> usize {
        (self.width * self.height) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Canonical representative of `p` modulo the lattice.
    pub fn reduce(&self, p: Point) -> Point {
        let x = p.0.rem_euclid(self.width);
        let m = (p.0 - x) / self.width;
        let y = (p.1 - m * self.shear).rem_euclid(self.height);
        (x, y)
    }

    /// Qubit index of the site containing `p`.
    pub fn index(&self, p: Point) -> usize {
        let (x, y) = self.reduce(p);
        (x * self.height + y) as usize
    }

    /// Representatives in index order.
    pub fn sites(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.width).flat_map(move |x| (0..self.height).map(move |y| (x, y)))
    }
}

pub fn reduce(vectors: &PeriodicityVectors, p: Point) -> Point {
    Cluster::new(*vectors).reduce(p)
}

/// Toric code with qubits on the bonds of an `l_xi × l_eta` periodic lattice:
/// X on plaquettes, Z on vertices.
pub fn canonical_toric(l_xi: usize, l_eta: usize) -> Result<CssCheckMatrix> {
    if l_xi < 2 || l_eta < 2 {
        return Err(Error::LatticeTooSmall(l_xi.min(l_eta)));
    }
    let (lx, ly) = (l_xi as i64, l_eta as i64);
    let n = 2 * l_xi * l_eta;
    let horizontal = |x: i64, y: i64| (y.rem_euclid(ly) * lx + x.rem_euclid(lx)) as usize;
    let vertical = |x: i64, y: i64| l_xi * l_eta + horizontal(x, y);
    let mut g_x = BitMatrix::zeros(l_xi * l_eta, n);
    let mut g_z = BitMatrix::zeros(l_xi * l_eta, n);
    for y in 0..ly {
        for x in 0..lx {
            let row = (y * lx + x) as usize;
            for q in [
                horizontal(x, y),
                horizontal(x, y + 1),
                vertical(x, y),
                vertical(x + 1, y),
            ] {
                g_x.toggle(row, q);
            }
            for q in [
                horizontal(x, y),
                horizontal(x - 1, y),
                vertical(x, y),
                vertical(x, y - 1),
            ] {
                g_z.toggle(row, q);
            }
        }
    }
    CssCheckMatrix::new(g_x, g_z)
}

fn plaquette(cluster: &Cluster, (x, y): Point) -> [usize; 4] {
    [
        cluster.index((x, y)),
        cluster.index((x + 1, y)),
        cluster.index((x, y + 1)),
        cluster.index((x + 1, y + 1)),
    ]
}

/// Qubits on sites; X on the corners of colored plaquettes (`x + y` even),
/// Z on the white ones.
pub fn rotated_checkerboard(vectors: &PeriodicityVectors) -> Result<CssCheckMatrix> {
    if !vectors.is_bipartite() {
        return Err(Error::NotBipartite(vectors.l1, vectors.l2));
    }
    let cluster = Cluster::new(*vectors);
    let n = cluster.len();
    let (mut x_rows, mut z_rows) = (Vec::new(), Vec::new());
    for p in cluster.sites() {
        let mut row = crate::gf2::BitVector::zeros(n);
        for q in plaquette(&cluster, p) {
            row.toggle(q);
        }
        if (p.0 + p.1) % 2 == 0 {
            x_rows.push(row);
        } else {
            z_rows.push(row);
        }
    }
    CssCheckMatrix::new(
        BitMatrix::from_rows(n, &x_rows),
        BitMatrix::from_rows(n, &z_rows),
    )
}

/// One `ZXXZ` generator per plaquette: Z on `(x, y)` and `(x+1, y+1)`, X on
/// `(x+1, y)` and `(x, y+1)`.
pub fn non_bipartite_rotated(vectors: &PeriodicityVectors) -> Result<SymplecticCheckMatrix> {
    if vectors.is_bipartite() {
        return Err(Error::Bipartite(vectors.l1, vectors.l2));
    }
    let cluster = Cluster::new(*vectors);
    let n = cluster.len();
    let mut a_x = BitMatrix::zeros(n, n);
    let mut a_z = BitMatrix::zeros(n, n);
    for (row, p) in cluster.sites().enumerate() {
        let [ll, lr, ul, ur] = plaquette(&cluster, p);
        a_z.toggle(row, ll);
        a_z.toggle(row, ur);
        a_x.toggle(row, lr);
        a_x.toggle(row, ul);
    }
    SymplecticCheckMatrix::new(a_x, a_z)
}

/// Shortest nonzero lattice vector in the max-norm.
///
/// If `v = m1·L1 + m2·L2` then `m1 = det(v, L2) / det(L1, L2)`, so
/// `|m1| ≤ ‖v‖∞·‖L2‖₁ / |det|`, and likewise for `m2`. Vectors no longer
/// than the shorter generator therefore lie in a finite box.
pub fn predicted_distance_checkerboard(vectors: &PeriodicityVectors) -> Result<usize> {
    if !vectors.is_bipartite() {
        return Err(Error::NotBipartite(vectors.l1, vectors.l2));
    }
    let (l1, l2) = (vectors.l1, vectors.l2);
    let bound = norm_inf(l1).min(norm_inf(l2));
    let det = vectors.det().abs();
    let r1 = (bound * norm1(l2)).div_euclid(det);
    let r2 = (bound * norm1(l1)).div_euclid(det);
    let best = (-r1..=r1)
        .flat_map(|m1| (-r2..=r2).map(move |m2| (m1, m2)))
        .filter(|&m| m != (0, 0))
        .map(|(m1, m2)| norm_inf((m1 * l1.0 + m2 * l2.0, m1 * l1.1 + m2 * l2.1)))
        .min()
        .unwrap_or(bound);
    Ok(best.min(bound) as usize)
}

/// `L'_i = Σ_j g_ij·L_j` for an integer matrix with determinant ±1.
pub fn unimodular_equiv(
    vectors: &PeriodicityVectors,
    g: [[i64; 2]; 2],
) -> Result<PeriodicityVectors> {
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if det.abs() != 1 {
        return Err(Error::NotUnimodular(det));
    }
    let (l1, l2) = (vectors.l1, vectors.l2);
    let combine = |row: [i64; 2]| (row[0] * l1.0 + row[1] * l2.0, row[0] * l1.1 + row[1] * l2.1);
    PeriodicityVectors::new(combine(g[0]), combine(g[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::SearchConfig;
    use crate::stabilizer::StabilizerCode;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn pv(l1: Point, l2: Point) -> PeriodicityVectors {
        PeriodicityVectors::new(l1, l2).unwrap()
    }

    fn nkd(code: &impl StabilizerCode) -> (usize, usize, Option<usize>) {
        let d = code.distance(&SearchConfig::default());
        assert!(d.is_exact());
        (code.n(), code.k(), d.value.finite())
    }

    #[test]
    fn egcd_identity() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, s, t) = egcd(a, b);
                assert_eq!(s * a + t * b, g);
                assert!(g >= 0);
                if a != 0 || b != 0 {
                    assert_eq!(a % g, 0);
                    assert_eq!(b % g, 0);
                }
            }
        }
    }

    #[test]
    fn degenerate_vectors_rejected() {
        assert!(matches!(
            PeriodicityVectors::new((2, 4), (1, 2)),
            Err(Error::DegenerateLattice(..))
        ));
    }

    #[test]
    fn cluster_sizes() {
        let c = Cluster::new(pv((3, 1), (-1, 3)));
        let reps: HashSet<Point> = (-20..20)
            .flat_map(|x| (-20..20).map(move |y| (x, y)))
            .map(|p| c.reduce(p))
            .collect();
        assert_eq!(reps.len(), 10);
        assert_eq!(c.len(), 10);
        for l in 1..6 {
            assert_eq!(
                Cluster::new(pv((l, l), (-l, l))).len(),
                (2 * l * l) as usize
            );
        }
    }

    #[test]
    fn toric_codes() {
        assert_eq!(nkd(&canonical_toric(5, 5).unwrap()), (50, 2, Some(5)));
        assert_eq!(nkd(&canonical_toric(3, 3).unwrap()), (18, 2, Some(3)));
        assert_eq!(nkd(&canonical_toric(2, 4).unwrap()), (16, 2, Some(2)));
        assert!(canonical_toric(1, 4).is_err());
    }

    #[test]
    fn checkerboard_codes() {
        assert_eq!(
            nkd(&rotated_checkerboard(&pv((4, 0), (0, 4))).unwrap()),
            (16, 2, Some(4))
        );
        assert_eq!(
            nkd(&rotated_checkerboard(&pv((3, 1), (-1, 3))).unwrap()),
            (10, 2, Some(3))
        );
        assert_eq!(
            nkd(&rotated_checkerboard(&pv((5, 1), (-1, 5))).unwrap()),
            (26, 2, Some(5))
        );
    }

    #[test]
    fn checkerboard_rejects_odd_norms() {
        assert!(matches!(
            rotated_checkerboard(&pv((2, 1), (-1, 2))),
            Err(Error::NotBipartite(..))
        ));
        assert!(matches!(
            non_bipartite_rotated(&pv((3, 1), (-1, 3))),
            Err(Error::Bipartite(..))
        ));
    }

    #[test]
    fn zxxz_codes() {
        assert_eq!(
            nkd(&non_bipartite_rotated(&pv((2, 1), (-1, 2))).unwrap()),
            (5, 1, Some(3))
        );
        assert_eq!(
            nkd(&non_bipartite_rotated(&pv((3, 0), (0, 3))).unwrap()),
            (9, 1, Some(3))
        );
        assert_eq!(
            nkd(&non_bipartite_rotated(&pv((3, 2), (-2, 3))).unwrap()),
            (13, 1, Some(5))
        );
    }

    #[test]
    fn zxxz_diagonal_convention() {
        let code = non_bipartite_rotated(&pv((3, 0), (0, 3))).unwrap();
        let c = Cluster::new(pv((3, 0), (0, 3)));
        let row = c.sites().position(|p| p == (0, 0)).unwrap();
        assert_eq!(code.a_z().row_support(row), {
            let mut v = vec![c.index((0, 0)), c.index((1, 1))];
            v.sort();
            v
        });
        assert_eq!(code.a_x().row_support(row), {
            let mut v = vec![c.index((1, 0)), c.index((0, 1))];
            v.sort();
            v
        });
    }

    #[test]
    fn predicted_distances() {
        assert_eq!(
            predicted_distance_checkerboard(&pv((3, 1), (-1, 3))).unwrap(),
            3
        );
        assert_eq!(
            predicted_distance_checkerboard(&pv((4, 0), (0, 4))).unwrap(),
            4
        );
        for l in 1..8 {
            assert_eq!(
                predicted_distance_checkerboard(&pv((l, l), (-l, l))).unwrap(),
                l as usize
            );
        }
    }

    #[test]
    fn unimodular_transforms() {
        let v = pv((3, 1), (-1, 3));
        assert_eq!(unimodular_equiv(&v, [[1, 0], [0, 1]]).unwrap(), v);
        let w = unimodular_equiv(&v, [[1, 1], [0, 1]]).unwrap();
        assert_eq!((w.l1(), w.l2()), ((2, 4), (-1, 3)));
        assert_eq!(nkd(&rotated_checkerboard(&w).unwrap()), (10, 2, Some(3)));
        assert!(matches!(
            unimodular_equiv(&v, [[2, 0], [0, 1]]),
            Err(Error::NotUnimodular(2))
        ));
    }

    #[test]
    fn toric_matches_diagonal_checkerboard() {
        for l in 2..5 {
            let toric = canonical_toric(l, l).unwrap();
            let li = l as i64;
            let board = rotated_checkerboard(&pv((li, li), (-li, li))).unwrap();
            assert_eq!(nkd(&toric), nkd(&board));
        }
    }

    #[test]
    fn generator_products_vanish() {
        let code = rotated_checkerboard(&pv((5, 1), (-1, 5))).unwrap();
        for g in [code.g_x(), code.g_z()] {
            let ones = BitMatrix::from_dense(&[vec![1u8; g.rows()]]);
            assert!(ones.mul(g).is_zero());
        }
    }

    fn arb_vectors() -> impl Strategy<Value = PeriodicityVectors> {
        ((-6i64..=6, -6i64..=6), (-6i64..=6, -6i64..=6))
            .prop_filter_map("degenerate", |(l1, l2)| {
                PeriodicityVectors::new(l1, l2).ok()
            })
    }

    proptest! {
        #[test]
        fn reduce_is_lattice_invariant(v in arb_vectors(), p in (-50i64..50, -50i64..50)) {
            let c = Cluster::new(v);
            let r = c.reduce(p);
            prop_assert_eq!(c.reduce((p.0 + v.l1().0, p.1 + v.l1().1)), r);
            prop_assert_eq!(c.reduce((p.0 - v.l2().0, p.1 - v.l2().1)), r);
            prop_assert_eq!(c.reduce(r), r);
            prop_assert!(c.index(p) < c.len());
            prop_assert_eq!(c.len(), v.area());
        }

        #[test]
        fn lattice_k_is_fixed(v in arb_vectors()) {
            prop_assume!(v.area() >= 4);
            if v.is_bipartite() {
                prop_assert_eq!(rotated_checkerboard(&v).unwrap().k(), 2);
            } else {
                prop_assert_eq!(non_bipartite_rotated(&v).unwrap().k(), 1);
            }
        }
    }
}
