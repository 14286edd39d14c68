//! Hypergraph-product codes and the structured families built on them.
//!
//! Every constructor returns the code together with its closed-form
//! prediction. Predictions are never substituted for measurements.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classical::{
    same_shape, split_tiles, tile_dimensions, BinaryCode, ClassicalCodeParams, TileDimensions,
};
use crate::distance::Distance;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::poly::{circulant, Gf2Poly};
use crate::stabilizer::{CssCheckMatrix, SymplecticCheckMatrix};

/// A constructed code with the parameters predicted for it.
#[derive(Clone, Debug)]
pub struct Construction<C, P> {
    pub code: C,
    pub prediction: P,
}

/// Closed-form `[[n, k, d]]`, with the generator weight when it is determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedParams {
    pub n: usize,
    pub k: usize,
    pub d: Distance,
    pub w: Option<usize>,
}

impl fmt::Display for PredictedParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}, {}", self.n, self.k, self.d)?;
        if let Some(w) = self.w {
            write!(f, ", w={w}")?;
        }
        write!(f, "]]")
    }
}

/// Shape and measured parameters of one classical factor and its transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorParams {
    pub r: usize,
    pub code: ClassicalCodeParams,
    pub transposed: ClassicalCodeParams,
}

impl FactorParams {
    pub fn measure(h: &BitMatrix) -> Self {
        let code = BinaryCode::new(h.clone());
        FactorParams {
            r: h.rows(),
            code: code.params(),
            transposed: code.transposed_params(),
        }
    }

    /// `s = n − r`; negative for tall matrices.
    pub fn excess(&self) -> i64 {
        self.code.n as i64 - self.r as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphProductPrediction {
    pub n: usize,
    pub k: usize,
    pub rank_gx: usize,
    pub rank_gz: usize,
    pub d_lower: Distance,
    /// `d1`, when `k1 > 0` and `k̃2 > 0`.
    pub d_upper_1: Option<usize>,
    /// `d2`, when `k2 > 0` and `k̃1 > 0`.
    pub d_upper_2: Option<usize>,
    pub w: usize,
    pub factors: [FactorParams; 2],
}

impl HypergraphProductPrediction {
    /// Tightest applicable upper bound.
    pub fn d_upper(&self) -> Option<usize> {
        self.d_upper_1.into_iter().chain(self.d_upper_2).min()
    }
}

fn to_count(v: i64, what: &str) -> usize {
    usize::try_from(v).unwrap_or_else(|_| panic!("{what} came out negative: {v}"))
}

fn min_distance(factors: &[FactorParams; 2]) -> Distance {
    factors
        .iter()
        .flat_map(|f| [f.code.d, f.transposed.d])
        .min()
        .unwrap_or(Distance::Infinite)
}

fn upper_bounds(f1: &FactorParams, f2: &FactorParams) -> (Option<usize>, Option<usize>) {
    let u1 = (f1.code.k > 0 && f2.transposed.k > 0)
        .then(|| f1.code.d.finite())
        .flatten();
    let u2 = (f2.code.k > 0 && f1.transposed.k > 0)
        .then(|| f2.code.d.finite())
        .flatten();
    (u1, u2)
}

fn product_weight(h1: &BitMatrix, h2: &BitMatrix) -> usize {
    (h1.max_row_weight() + h2.max_row_weight()).max(h1.max_col_weight() + h2.max_col_weight())
}

/// `G_X = (E_{r2}⊗H1 | H2⊗E_{r1})`, `G_Z = (H2ᵀ⊗E_{n1} | E_{n2}⊗H1ᵀ)`.
pub fn hypergraph_product(h1: &BitMatrix, h2: &BitMatrix) -> CssCheckMatrix {
    let (r1, n1) = (h1.rows(), h1.cols());
    let (r2, n2) = (h2.rows(), h2.cols());
    let g_x = BitMatrix::identity(r2)
        .kron(h1)
        .hconcat(&h2.kron(&BitMatrix::identity(r1)));
    let g_z = h2
        .transpose()
        .kron(&BitMatrix::identity(n1))
        .hconcat(&BitMatrix::identity(n2).kron(&h1.transpose()));
    CssCheckMatrix::new(g_x, g_z).expect("hypergraph product generators commute")
}

pub fn predict_hypergraph(h1: &BitMatrix, h2: &BitMatrix) -> HypergraphProductPrediction {
    let factors = [FactorParams::measure(h1), FactorParams::measure(h2)];
    let [f1, f2] = &factors;
    let (n1, n2) = (f1.code.n, f2.code.n);
    let (r1, r2) = (f1.r, f2.r);
    let (k1, k2) = (f1.code.k as i64, f2.code.k as i64);
    let k = 2 * k1 * k2 - k1 * f2.excess() - k2 * f1.excess();
    let (d_upper_1, d_upper_2) = upper_bounds(f1, f2);
    HypergraphProductPrediction {
        n: r2 * n1 + r1 * n2,
        k: to_count(k, "k"),
        rank_gx: r1 * r2 - f1.transposed.k * f2.transposed.k,
        rank_gz: n1 * n2 - f1.code.k * f2.code.k,
        d_lower: min_distance(&factors),
        d_upper_1,
        d_upper_2,
        w: product_weight(h1, h2),
        factors,
    }
}

fn require_full_rank(h: &BitMatrix) -> Result<()> {
    let rank = h.rank();
    if rank != h.rows() {
        return Err(Error::RankDeficient {
            rank,
            rows: h.rows(),
        });
    }
    Ok(())
}

fn require_square(h: &BitMatrix) -> Result<()> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    Ok(())
}

/// Product of a full-rank `H1` with its transpose:
/// `[[(n1 − k1)² + n1², k1², d1]]`.
pub fn original_family(h1: &BitMatrix) -> Result<Construction<CssCheckMatrix, PredictedParams>> {
    require_full_rank(h1)?;
    let params = BinaryCode::new(h1.clone()).params();
    let (n1, k1) = (params.n, params.k);
    Ok(Construction {
        code: hypergraph_product(h1, &h1.transpose()),
        prediction: PredictedParams {
            n: (n1 - k1).pow(2) + n1 * n1,
            k: k1 * k1,
            d: if k1 == 0 {
                Distance::Infinite
            } else {
                params.d
            },
            w: Some(h1.max_row_weight() + h1.max_col_weight()),
        },
    })
}

/// Product of two square checks whose codes match their transposes in
/// distance: `[[2n1n2, 2k1k2, min(d1, d2)]]`.
pub fn square_family(
    h1: &BitMatrix,
    h2: &BitMatrix,
) -> Result<Construction<CssCheckMatrix, PredictedParams>> {
    require_square(h1)?;
    require_square(h2)?;
    let mut measured = Vec::with_capacity(2);
    for (i, h) in [h1, h2].into_iter().enumerate() {
        let f = FactorParams::measure(h);
        if f.code.d != f.transposed.d {
            return Err(Error::TransposedDistanceMismatch(format!(
                "factor {}: d = {}, transposed d = {}",
                i + 1,
                f.code.d,
                f.transposed.d
            )));
        }
        measured.push(f.code);
    }
    let (p1, p2) = (measured[0], measured[1]);
    let k = 2 * p1.k * p2.k;
    Ok(Construction {
        code: hypergraph_product(h1, h2),
        prediction: PredictedParams {
            n: 2 * p1.n * p2.n,
            k,
            d: if k == 0 {
                Distance::Infinite
            } else {
                p1.d.min(p2.d)
            },
            w: Some(product_weight(h1, h2)),
        },
    })
}

/// Non-CSS code `H = (E_{n2}⊗H1 | H2⊗E_{n1})` for symmetric `H1`, `H2`:
/// `[[n1n2, k1k2, min(d1, d2)]]`.
pub fn symmetric_family(
    h1: &BitMatrix,
    h2: &BitMatrix,
) -> Result<Construction<SymplecticCheckMatrix, PredictedParams>> {
    if !h1.is_symmetric() || !h2.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let (n1, n2) = (h1.cols(), h2.cols());
    let a_x = BitMatrix::identity(n2).kron(h1);
    let a_z = h2.kron(&BitMatrix::identity(n1));
    let code = SymplecticCheckMatrix::new(a_x, a_z)?;
    let p1 = BinaryCode::new(h1.clone()).params();
    let p2 = BinaryCode::new(h2.clone()).params();
    let k = p1.k * p2.k;
    Ok(Construction {
        code,
        prediction: PredictedParams {
            n: n1 * n2,
            k,
            d: if k == 0 {
                Distance::Infinite
            } else {
                p1.d.min(p2.d)
            },
            w: None,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilePrediction {
    pub n: usize,
    pub k: usize,
    pub rank_gx: usize,
    pub rank_gz: usize,
    /// `⌈min(d1, d2, d̃1, d̃2) / 2⌉`.
    pub d_lower: Distance,
    pub d_upper_1: Option<usize>,
    pub d_upper_2: Option<usize>,
    pub w: usize,
    /// Parameters of the assembled `[[a, b], [b, a]]` checks.
    pub factors: [FactorParams; 2],
    pub tiles: [TileDimensions; 2],
}

impl TilePrediction {
    pub fn d_upper(&self) -> Option<usize> {
        self.d_upper_1.into_iter().chain(self.d_upper_2).min()
    }
}

/// `a⊗I₂ + b⊗X`: the tiled check in interleaved index order.
pub fn interleaved_tiles(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    same_shape(a, b)?;
    let swap = BitMatrix::from_dense(&[[0u8, 1], [1, 0]]);
    Ok(a.kron(&BitMatrix::identity(2)).add(&b.kron(&swap)))
}

/// Permutations `(rows, cols)` with
/// `tiled.permute(rows, cols) == interleaved` for tiles of shape `r × c`.
/// Interleaved index `2ρ + σ` comes from block index `σ·size + ρ`.
pub fn tile_permutation(r: usize, c: usize) -> (Vec<usize>, Vec<usize>) {
    let perm = |size: usize| (0..2 * size).map(|i| (i % 2) * size + i / 2).collect();
    (perm(r), perm(c))
}

/// Two-tile product from tiles `a_i`, `b_i` of `H_i = [[a_i, b_i], [b_i, a_i]]`:
/// `G_X = (E⊗H1 | H2ᵖ⊗E)`, `G_Z = (H2ᵖᵀ⊗E | E⊗H1ᵀ)` with half-size identities
/// and `H2ᵖ = a2⊗I₂ + b2⊗X`.
pub fn two_tile(
    a1: &BitMatrix,
    b1: &BitMatrix,
    a2: &BitMatrix,
    b2: &BitMatrix,
) -> Result<Construction<CssCheckMatrix, TilePrediction>> {
    let h1 = BitMatrix::block2x2(a1, b1, b1, a1);
    same_shape(a1, b1)?;
    let h2p = interleaved_tiles(a2, b2)?;
    let h2 = BitMatrix::block2x2(a2, b2, b2, a2);
    let (half_r1, half_n1) = (a1.rows(), a1.cols());
    let (half_r2, half_n2) = (a2.rows(), a2.cols());
    let g_x = BitMatrix::identity(half_r2)
        .kron(&h1)
        .hconcat(&h2p.kron(&BitMatrix::identity(half_r1)));
    let g_z = h2p
        .transpose()
        .kron(&BitMatrix::identity(half_n1))
        .hconcat(&BitMatrix::identity(half_n2).kron(&h1.transpose()));
    let code = CssCheckMatrix::new(g_x, g_z)?;

    let factors = [FactorParams::measure(&h1), FactorParams::measure(&h2)];
    let tiles = [tile_dimensions(a1, b1)?, tile_dimensions(a2, b2)?];
    let [f1, f2] = &factors;
    let [t1, t2] = &tiles;
    let (n1, n2, r1, r2) = (f1.code.n, f2.code.n, f1.r, f2.r);
    let (k1, k2) = (f1.code.k as i64, f2.code.k as i64);
    // Tiled shapes are even, so the halves are exact.
    let k = 2 * (t1.k_sym * t2.k_sym + t1.k_asym * t2.k_asym) as i64
        - k1 * f2.excess() / 2
        - k2 * f1.excess() / 2;
    let (d_upper_1, d_upper_2) = upper_bounds(f1, f2);
    let prediction = TilePrediction {
        n: (n1 * r2 + n2 * r1) / 2,
        k: to_count(k, "k"),
        rank_gx: r1 * r2 / 2
            - t1.k_sym_transposed * t2.k_sym_transposed
            - t1.k_asym_transposed * t2.k_asym_transposed,
        rank_gz: n1 * n2 / 2 - t1.k_sym * t2.k_sym - t1.k_asym * t2.k_asym,
        d_lower: min_distance(&factors).half_ceil(),
        d_upper_1,
        d_upper_2,
        w: product_weight(&h1, &h2),
        factors,
        tiles,
    };
    Ok(Construction { code, prediction })
}

/// The condition that keeps a tile pair out of the special case with
/// `[[n1n2, 2k1k2, min(d1, d2, d̃1, d̃2)]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum TileConditionFailure {
    /// `k^a ≠ 0`.
    AntisymmetricCodewords { factor: usize },
    /// `k^s = 0`.
    NoSymmetricCodewords { factor: usize },
    /// Tiles are not square.
    NotSquare { factor: usize },
    /// The row space of `a + b` (or of `aᵀ + bᵀ`) is zero or holds a
    /// weight-one vector.
    GeneratedDistanceOne { factor: usize, transposed: bool },
}

impl fmt::Display for TileConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TileConditionFailure::AntisymmetricCodewords { factor } => {
                write!(f, "factor {factor} has antisymmetric codewords")
            }
            TileConditionFailure::NoSymmetricCodewords { factor } => {
                write!(f, "factor {factor} has no symmetric codewords")
            }
            TileConditionFailure::NotSquare { factor } => {
                write!(f, "factor {factor} tiles are not square")
            }
            TileConditionFailure::GeneratedDistanceOne { factor, transposed } => write!(
                f,
                "the code generated by factor {factor}'s {} has distance below 2",
                if transposed { "a^T + b^T" } else { "a + b" }
            ),
        }
    }
}

/// Minimum weight of a nonzero vector in the row space of `m`.
fn row_space_distance(m: &BitMatrix) -> Distance {
    let dual = m.kernel_basis();
    BinaryCode::new(dual).params().d
}

/// Checks the special-case conditions and, when all hold, returns the
/// predicted parameters.
pub fn two_tile_theorem4_check(
    a1: &BitMatrix,
    b1: &BitMatrix,
    a2: &BitMatrix,
    b2: &BitMatrix,
) -> Result<std::result::Result<PredictedParams, TileConditionFailure>> {
    let pairs = [(a1, b1), (a2, b2)];
    let mut factors = Vec::with_capacity(2);
    for (i, (a, b)) in pairs.into_iter().enumerate() {
        let factor = i + 1;
        let dims = tile_dimensions(a, b)?;
        if !a.is_square() {
            return Ok(Err(TileConditionFailure::NotSquare { factor }));
        }
        if dims.k_asym != 0 {
            return Ok(Err(TileConditionFailure::AntisymmetricCodewords { factor }));
        }
        if dims.k_sym == 0 {
            return Ok(Err(TileConditionFailure::NoSymmetricCodewords { factor }));
        }
        for (transposed, sum) in [(false, a.add(b)), (true, a.transpose().add(&b.transpose()))] {
            if row_space_distance(&sum) < Distance::Finite(2) || sum.is_zero() {
                return Ok(Err(TileConditionFailure::GeneratedDistanceOne {
                    factor,
                    transposed,
                }));
            }
        }
        factors.push(FactorParams::measure(&BitMatrix::block2x2(a, b, b, a)));
    }
    let factors = [factors[0], factors[1]];
    Ok(Ok(PredictedParams {
        n: factors[0].code.n * factors[1].code.n,
        k: 2 * factors[0].code.k * factors[1].code.k,
        d: min_distance(&factors),
        w: None,
    }))
}

/// Two-tile code with `a_i = H_i + E`, `b_i = E` for square half-size checks.
pub fn two_tile_from_square(
    h_half_1: &BitMatrix,
    h_half_2: &BitMatrix,
) -> Result<Construction<CssCheckMatrix, TilePrediction>> {
    require_square(h_half_1)?;
    require_square(h_half_2)?;
    let [(a1, b1), (a2, b2)] = [h_half_1, h_half_2].map(|h| {
        let e = BitMatrix::identity(h.rows());
        (h.add(&e), e)
    });
    two_tile(&a1, &b1, &a2, &b2)
}

/// Tiles `(a, b)` of the even-length circulant of `h`.
pub fn circulant_tiles(h: &Gf2Poly, n: usize) -> Result<(BitMatrix, BitMatrix)> {
    if n % 2 == 1 {
        return Err(Error::DimensionMismatch(format!(
            "tiled circulant needs even length, got {n}"
        )));
    }
    let c = circulant(h, n)?;
    Ok(split_tiles(&c).expect("even circulants are two-tiled"))
}

/// Two-tile code with both factors from the circulant of `h`.
pub fn two_tile_cyclic(
    h: &Gf2Poly,
    n: usize,
) -> Result<Construction<CssCheckMatrix, TilePrediction>> {
    let (a, b) = circulant_tiles(h, n)?;
    two_tile(&a, &b, &a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{palindromic_symmetric_circulant, symmetrize};
    use crate::distance::SearchConfig;
    use crate::stabilizer::StabilizerCode;
    use proptest::prelude::*;

    fn rep(n: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(n - 1, n);
        for i in 0..n - 1 {
            m.set(i, i, true);
            m.set(i, i + 1, true);
        }
        m
    }

    fn ring(n: usize) -> BitMatrix {
        circulant(&Gf2Poly::from_exponents([0, 1]), n).unwrap()
    }

    fn measured(code: &impl StabilizerCode) -> (usize, usize, Distance) {
        let d = code.distance(&SearchConfig::default());
        assert!(d.is_exact());
        (code.n(), code.k(), d.value)
    }

    #[test]
    fn original_family_repetition() {
        for (d, n) in [(3, 13), (4, 25), (5, 41)] {
            let c = original_family(&rep(d)).unwrap();
            assert_eq!(measured(&c.code), (n, 1, Distance::Finite(d)));
            assert_eq!(
                c.prediction,
                PredictedParams {
                    n,
                    k: 1,
                    d: Distance::Finite(d),
                    w: Some(4)
                }
            );
            assert_eq!(c.code.generator_weight(), 4);
            // Row (i, j) of G_X: row j of H1 plus column i of H1.
            let h = rep(d);
            let g_x = c.code.g_x();
            for i in 0..h.cols() {
                for j in 0..h.rows() {
                    assert_eq!(
                        g_x.row_weight(i * h.rows() + j),
                        h.row_weight(j) + h.col_weight(i)
                    );
                }
            }
        }
        assert!(matches!(
            original_family(&ring(4)),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn square_family_toric() {
        for d in 3..6 {
            let c = square_family(&ring(d), &ring(d)).unwrap();
            assert_eq!(measured(&c.code), (2 * d * d, 2, Distance::Finite(d)));
            assert_eq!(c.prediction.n, 2 * d * d);
        }
        let p = predict_hypergraph(&ring(3), &ring(3));
        assert_eq!(
            (p.n, p.k, p.d_lower, p.d_upper()),
            (18, 2, Distance::Finite(3), Some(3))
        );
    }

    #[test]
    fn square_family_symmetrized() {
        let s = symmetrize(&rep(3)).unwrap();
        let c = square_family(&s, &s).unwrap();
        assert_eq!(
            c.prediction,
            PredictedParams {
                n: 50,
                k: 2,
                d: Distance::Finite(3),
                w: Some(6)
            }
        );
        assert_eq!(measured(&c.code), (50, 2, Distance::Finite(3)));
        assert!(matches!(
            square_family(&rep(3), &ring(3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn square_family_needs_matching_transposed_distance() {
        // d = 2, while the transpose has the weight-one codeword 010.
        let h = BitMatrix::from_dense(&[[1u8, 1, 1], [0, 0, 0], [0, 0, 0]]);
        let f = FactorParams::measure(&h);
        assert_ne!(f.code.d, f.transposed.d);
        assert!(matches!(
            square_family(&h, &h),
            Err(Error::TransposedDistanceMismatch(_))
        ));
    }

    #[test]
    fn identity_products_are_trivial() {
        let id = BitMatrix::identity(2);
        let code = hypergraph_product(&id, &id);
        assert_eq!((code.n(), code.k()), (8, 0));
        let c = square_family(&id, &id).unwrap();
        assert_eq!((c.prediction.k, c.prediction.d), (0, Distance::Infinite));
        let s = symmetric_family(&id, &id).unwrap();
        assert_eq!((s.code.n(), s.code.k()), (4, 0));
        assert!(s
            .code
            .distance(&SearchConfig::default())
            .value
            .is_infinite());
    }

    #[test]
    fn symmetric_family_small() {
        let h = palindromic_symmetric_circulant(&Gf2Poly::from_exponents([0, 1]), 3).unwrap();
        let c = symmetric_family(h.check(), h.check()).unwrap();
        assert_eq!(measured(&c.code), (9, 1, Distance::Finite(3)));
        assert_eq!(
            c.prediction,
            PredictedParams {
                n: 9,
                k: 1,
                d: Distance::Finite(3),
                w: None
            }
        );
        assert!(matches!(
            symmetric_family(&rep(3), &rep(3)),
            Err(Error::NotSymmetric)
        ));
    }

    #[test]
    fn symmetric_family_matches_zxxz() {
        use crate::lattice::{non_bipartite_rotated, PeriodicityVectors};
        for n in [3usize, 5] {
            let h = palindromic_symmetric_circulant(&Gf2Poly::from_exponents([0, 1]), n).unwrap();
            let sym = symmetric_family(h.check(), h.check()).unwrap().code;
            let v = PeriodicityVectors::new((n as i64, 0), (0, n as i64)).unwrap();
            let zxxz = non_bipartite_rotated(&v).unwrap();
            assert_eq!(measured(&sym), measured(&zxxz));
            assert_eq!(measured(&sym), (n * n, 1, Distance::Finite(n)));
        }
    }

    #[test]
    fn tile_permutation_relates_layouts() {
        let a = BitMatrix::from_dense(&[[1u8, 0, 1], [0, 1, 1]]);
        let b = BitMatrix::from_dense(&[[0u8, 1, 1], [1, 1, 0]]);
        let blocked = BitMatrix::block2x2(&a, &b, &b, &a);
        let (rows, cols) = tile_permutation(2, 3);
        assert_eq!(
            blocked.permute(&rows, &cols),
            interleaved_tiles(&a, &b).unwrap()
        );
    }

    #[test]
    fn two_tile_repetition_gives_checkerboard() {
        for n in [4usize, 6] {
            let c = two_tile_cyclic(&Gf2Poly::from_exponents([0, 1]), n).unwrap();
            assert_eq!(measured(&c.code), (n * n, 2, Distance::Finite(n)));
            assert_eq!((c.prediction.n, c.prediction.k), (n * n, 2));
        }
    }

    #[test]
    fn two_tile_cyclic_n30_shape() {
        let h = Gf2Poly::from_exponents([0, 1, 3, 5]);
        let c = two_tile_cyclic(&h, 30).unwrap();
        assert_eq!(
            (c.code.n(), c.code.k(), c.code.generator_weight()),
            (900, 50, 8)
        );
        assert_eq!(
            (c.prediction.n, c.prediction.k, c.prediction.w),
            (900, 50, 8)
        );
        let (a, b) = circulant_tiles(&h, 30).unwrap();
        let special = two_tile_theorem4_check(&a, &b, &a, &b).unwrap().unwrap();
        assert_eq!(
            (special.n, special.k, special.d),
            (900, 50, Distance::Finite(14))
        );
    }

    #[test]
    fn equal_tiles_fail_special_case() {
        let a = BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1], [1, 0, 1]]);
        let r = two_tile_theorem4_check(&a, &a, &a, &a).unwrap();
        assert!(matches!(
            r,
            Err(TileConditionFailure::AntisymmetricCodewords { factor: 1 })
        ));
    }

    #[test]
    fn two_tile_from_symmetrized_square() {
        let s = symmetrize(&rep(3)).unwrap();
        let c = two_tile_from_square(&s, &s).unwrap();
        // The doubled distance shows up even though a + b = s has weight-one
        // vectors in its row space, so the special-case check declines.
        assert_eq!(measured(&c.code), (100, 2, Distance::Finite(6)));
        assert_eq!((c.prediction.n, c.prediction.k), (100, 2));
        let e = BitMatrix::identity(5);
        let r = two_tile_theorem4_check(&s.add(&e), &e, &s.add(&e), &e).unwrap();
        assert_eq!(
            r,
            Err(TileConditionFailure::GeneratedDistanceOne {
                factor: 1,
                transposed: false
            })
        );
    }

    #[test]
    fn two_tile_from_small_squares() {
        let c = two_tile_from_square(&ring(3), &ring(3)).unwrap();
        assert!(c.code.n() > 0);
        let id = BitMatrix::identity(3);
        let c = two_tile_from_square(&id, &id).unwrap();
        assert_eq!(c.code.k(), 0);
        assert!(matches!(
            two_tile_from_square(&rep(3), &id),
            Err(Error::NotSquare { .. })
        ));
    }

    fn fixed(r: usize, c: usize) -> impl Strategy<Value = BitMatrix> {
        proptest::collection::vec(proptest::bool::ANY, r * c).prop_map(move |bits| {
            let mut m = BitMatrix::zeros(r, c);
            for (i, b) in bits.into_iter().enumerate() {
                m.set(i / c, i % c, b);
            }
            m
        })
    }

    fn arb(max_r: usize, max_c: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| fixed(r, c))
    }

    fn arb_tiles(max: usize) -> impl Strategy<Value = (BitMatrix, BitMatrix)> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| (fixed(r, c), fixed(r, c)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hypergraph_prediction_matches_ranks(h1 in arb(5, 6), h2 in arb(5, 6)) {
            let code = hypergraph_product(&h1, &h2);
            let p = predict_hypergraph(&h1, &h2);
            prop_assert_eq!(code.n(), p.n);
            prop_assert_eq!(code.g_x().rank(), p.rank_gx);
            prop_assert_eq!(code.g_z().rank(), p.rank_gz);
            prop_assert_eq!(code.k(), p.k);
            prop_assert_eq!(code.generator_weight(), p.w);
        }

        #[test]
        fn two_tile_prediction_matches_ranks((a1, b1) in arb_tiles(3), (a2, b2) in arb_tiles(3)) {
            let c = two_tile(&a1, &b1, &a2, &b2).unwrap();
            let p = c.prediction;
            prop_assert_eq!(c.code.n(), p.n);
            prop_assert_eq!(c.code.g_x().rank(), p.rank_gx);
            prop_assert_eq!(c.code.g_z().rank(), p.rank_gz);
            prop_assert_eq!(c.code.k(), p.k);
        }
    }
}
