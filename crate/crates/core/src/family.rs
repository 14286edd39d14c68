//! Named constructions with their predictions, shared by the CLI and the
//! examples table.

use serde_json::{json, Value};

use crate::classical::{cyclic_code, palindromic_symmetric_circulant};
use crate::distance::Distance;
use crate::error::Result;
use crate::gf2::BitMatrix;
use crate::io::{AnyCode, Construction as Descriptor};
use crate::lattice::{
    canonical_toric, non_bipartite_rotated, predicted_distance_checkerboard, rotated_checkerboard,
    PeriodicityVectors,
};
use crate::poly::Gf2Poly;
use crate::product::{
    circulant_tiles, hypergraph_product, original_family, predict_hypergraph, square_family,
    symmetric_family, two_tile, two_tile_from_square, two_tile_theorem4_check, Construction,
    TilePrediction,
};
use crate::report::Prediction;

#[derive(Clone, Debug)]
pub enum Family {
    Toric {
        l_xi: usize,
        l_eta: usize,
    },
    Checkerboard(PeriodicityVectors),
    Zxxz(PeriodicityVectors),
    Hypergraph {
        h1: BitMatrix,
        h2: BitMatrix,
    },
    Original {
        h1: BitMatrix,
    },
    /// Original family on the `(d − 1) × d` repetition check.
    Repetition {
        d: usize,
    },
    Square {
        h1: BitMatrix,
        h2: BitMatrix,
    },
    /// Square family with both factors `circulant(h, n)`.
    CyclicSquare {
        h: Gf2Poly,
        n: usize,
    },
    Symmetric {
        h1: BitMatrix,
        h2: BitMatrix,
    },
    /// Symmetric family with both factors the symmetric circulant of a
    /// palindromic `h`.
    PalindromicSymmetric {
        h: Gf2Poly,
        n: usize,
    },
    TwoTile {
        a1: BitMatrix,
        b1: BitMatrix,
        a2: BitMatrix,
        b2: BitMatrix,
    },
    /// Two-tile family with both factors from `circulant(h, n)`.
    TwoTileCyclic {
        h: Gf2Poly,
        n: usize,
    },
    TwoTileSquare {
        h1: BitMatrix,
        h2: BitMatrix,
    },
}

/// A code with its prediction and a description of how it was made.
#[derive(Clone, Debug)]
pub struct Built {
    pub code: AnyCode,
    pub prediction: Prediction,
    pub construction: Descriptor,
}

fn shape(m: &BitMatrix) -> Value {
    json!([m.rows(), m.cols()])
}

fn exponents(h: &Gf2Poly) -> Value {
    json!(h.exponents())
}

pub fn repetition_check(d: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(d.saturating_sub(1), d);
    for i in 0..d.saturating_sub(1) {
        m.set(i, i, true);
        m.set(i, i + 1, true);
    }
    m
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Toric { .. } => "toric",
            Family::Checkerboard(_) => "rotated",
            Family::Zxxz(_) => "zxxz",
            Family::Hypergraph { .. } => "hypergraph",
            Family::Original { .. } | Family::Repetition { .. } => "original",
            Family::Square { .. } | Family::CyclicSquare { .. } => "square",
            Family::Symmetric { .. } | Family::PalindromicSymmetric { .. } => "symmetric",
            Family::TwoTile { .. } => "two-tile",
            Family::TwoTileCyclic { .. } => "two-tile-cyclic",
            Family::TwoTileSquare { .. } => "two-tile-square",
        }
    }

    fn args(&self) -> Value {
        match self {
            Family::Toric { l_xi, l_eta } => json!({ "lx": l_xi, "leta": l_eta }),
            Family::Checkerboard(v) | Family::Zxxz(v) => json!({ "l1": v.l1(), "l2": v.l2() }),
            Family::Hypergraph { h1, h2 }
            | Family::Square { h1, h2 }
            | Family::Symmetric { h1, h2 }
            | Family::TwoTileSquare { h1, h2 } => {
                json!({ "h1_shape": shape(h1), "h2_shape": shape(h2) })
            }
            Family::Original { h1 } => json!({ "h1_shape": shape(h1) }),
            Family::Repetition { d } => json!({ "repetition": d }),
            Family::CyclicSquare { h, n }
            | Family::PalindromicSymmetric { h, n }
            | Family::TwoTileCyclic { h, n } => json!({ "n": n, "h": exponents(h) }),
            Family::TwoTile { a1, a2, .. } => {
                json!({ "tile1_shape": shape(a1), "tile2_shape": shape(a2) })
            }
        }
    }

    pub fn build(&self) -> Result<Built> {
        let (code, prediction) = match self {
            Family::Toric { l_xi, l_eta } => {
                let code = canonical_toric(*l_xi, *l_eta)?;
                let p = Prediction {
                    n: 2 * l_xi * l_eta,
                    k: 2,
                    d: Some(Distance::Finite(*l_xi.min(l_eta))),
                    w: Some(4),
                    ..Default::default()
                };
                (AnyCode::Css(code), p)
            }
            Family::Checkerboard(v) => {
                let code = rotated_checkerboard(v)?;
                let p = Prediction {
                    n: v.area(),
                    k: 2,
                    d: Some(Distance::Finite(predicted_distance_checkerboard(v)?)),
                    ..Default::default()
                };
                (AnyCode::Css(code), p)
            }
            Family::Zxxz(v) => {
                let code = non_bipartite_rotated(v)?;
                let p = Prediction {
                    n: v.area(),
                    k: 1,
                    ..Default::default()
                };
                (AnyCode::Symplectic(code), p)
            }
            Family::Hypergraph { h1, h2 } => (
                AnyCode::Css(hypergraph_product(h1, h2)),
                Prediction::from(&predict_hypergraph(h1, h2)),
            ),
            Family::Original { h1 } => original(h1)?,
            Family::Repetition { d } => original(&repetition_check(*d))?,
            Family::Square { h1, h2 } => square(h1, h2)?,
            Family::CyclicSquare { h, n } => {
                let c = cyclic_code(h, *n)?;
                square(c.check(), c.check())?
            }
            Family::Symmetric { h1, h2 } => symmetric(h1, h2)?,
            Family::PalindromicSymmetric { h, n } => {
                let c = palindromic_symmetric_circulant(h, *n)?;
                symmetric(c.check(), c.check())?
            }
            Family::TwoTile { a1, b1, a2, b2 } => {
                tiled(two_tile(a1, b1, a2, b2)?, [a1, b1, a2, b2])?
            }
            Family::TwoTileCyclic { h, n } => {
                let (a, b) = circulant_tiles(h, *n)?;
                tiled(two_tile(&a, &b, &a, &b)?, [&a, &b, &a, &b])?
            }
            Family::TwoTileSquare { h1, h2 } => {
                let built = two_tile_from_square(h1, h2)?;
                let [e1, e2] = [h1, h2].map(|h| BitMatrix::identity(h.rows()));
                let (a1, a2) = (h1.add(&e1), h2.add(&e2));
                tiled(built, [&a1, &e1, &a2, &e2])?
            }
        };
        Ok(Built {
            code,
            prediction,
            construction: Descriptor {
                family: self.name().to_string(),
                args: self.args(),
            },
        })
    }
}

fn original(h1: &BitMatrix) -> Result<(AnyCode, Prediction)> {
    let built = original_family(h1)?;
    let mut p = Prediction::from(&predict_hypergraph(h1, &h1.transpose()));
    p.d = Some(built.prediction.d);
    Ok((AnyCode::Css(built.code), p))
}

fn square(h1: &BitMatrix, h2: &BitMatrix) -> Result<(AnyCode, Prediction)> {
    let built = square_family(h1, h2)?;
    let mut p = Prediction::from(&predict_hypergraph(h1, h2));
    p.d = Some(built.prediction.d);
    Ok((AnyCode::Css(built.code), p))
}

fn symmetric(h1: &BitMatrix, h2: &BitMatrix) -> Result<(AnyCode, Prediction)> {
    let built = symmetric_family(h1, h2)?;
    Ok((
        AnyCode::Symplectic(built.code),
        Prediction::from(built.prediction),
    ))
}

/// Tile prediction, with the exact distance when the special-case
/// conditions hold.
fn tiled(
    built: Construction<crate::stabilizer::CssCheckMatrix, TilePrediction>,
    [a1, b1, a2, b2]: [&BitMatrix; 4],
) -> Result<(AnyCode, Prediction)> {
    let mut p = Prediction::from(&built.prediction);
    if let Ok(special) = two_tile_theorem4_check(a1, b1, a2, b2)? {
        p.d = Some(special.d);
    }
    Ok((AnyCode::Css(built.code), p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::StabilizerCode;

    #[test]
    fn builds_report_shapes() {
        let b = Family::Toric { l_xi: 3, l_eta: 3 }.build().unwrap();
        assert_eq!((b.code.n(), b.prediction.n, b.prediction.k), (18, 18, 2));
        assert_eq!(b.construction.family, "toric");
        let b = Family::Repetition { d: 3 }.build().unwrap();
        assert_eq!(
            (b.code.n(), b.prediction.d),
            (13, Some(Distance::Finite(3)))
        );
        let b = Family::PalindromicSymmetric {
            h: Gf2Poly::from_exponents([0, 1]),
            n: 3,
        }
        .build()
        .unwrap();
        assert_eq!((b.code.n(), b.code.k()), (9, 1));
        let b = Family::TwoTileCyclic {
            h: Gf2Poly::from_exponents([0, 1]),
            n: 4,
        }
        .build()
        .unwrap();
        assert_eq!(
            (b.code.n(), b.prediction.k, b.prediction.d),
            (16, 2, Some(Distance::Finite(4)))
        );
    }

    #[test]
    fn repetition_check_shape() {
        let m = repetition_check(4);
        assert_eq!((m.rows(), m.cols(), m.rank()), (3, 4, 3));
    }
}
