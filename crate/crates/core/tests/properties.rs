//! Invariants checked against the brute-force oracles in `common`.

mod common;

use common::*;
use proptest::prelude::*;
use qhp::io::{read_bundle, write_bundle, Bundle, Construction, MatrixFormat, Metadata};
use qhp::lattice::{predicted_distance_checkerboard, rotated_checkerboard, unimodular_equiv};
use qhp::product::{hypergraph_product, predict_hypergraph, symmetric_family, two_tile};
use qhp::{AnyCode, BinaryCode, BitMatrix, PeriodicityVectors, SearchConfig, StabilizerCode};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
            let mut m = BitMatrix::zeros(r, c);
            for (i, b) in bits.into_iter().enumerate() {
                m.set(i / c, i % c, b);
            }
            m
        })
    })
}

fn symmetric(max: usize) -> impl Strategy<Value = BitMatrix> {
    matrix(max, max).prop_map(|m| {
        let n = m.rows().min(m.cols());
        let mut s = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                s.set(i, j, m.get(i, j));
                s.set(j, i, m.get(i, j));
            }
        }
        s
    })
}

fn tile_pair(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (BitMatrix, BitMatrix)> {
    matrix(max_rows, max_cols).prop_flat_map(|a| {
        let (r, c) = (a.rows(), a.cols());
        proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
            let mut b = BitMatrix::zeros(r, c);
            for (i, v) in bits.into_iter().enumerate() {
                b.set(i / c, i % c, v);
            }
            (a.clone(), b)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classical_distance_matches_enumeration(h in matrix(6, 12)) {
        let (n, k, d) = classical(&h);
        let p = BinaryCode::new(h).params();
        prop_assert_eq!((p.n, p.k, p.d.finite()), (n, k, d));
    }

    #[test]
    fn product_distance_matches_enumeration(h1 in matrix(3, 4), h2 in matrix(3, 4)) {
        let code = hypergraph_product(&h1, &h2);
        prop_assume!(code.n() <= 16);
        let r = code.distance(&SearchConfig::default());
        prop_assert!(r.is_exact());
        prop_assert_eq!(r.value.finite(), css_distance(code.g_x(), code.g_z()));
        let p = predict_hypergraph(&h1, &h2);
        prop_assert_eq!(p.k, code.k());
        prop_assert_eq!((p.rank_gx, p.rank_gz), (wide_rank(code.g_x()), wide_rank(code.g_z())));
    }

    #[test]
    fn symmetric_distance_matches_pauli_enumeration(s1 in symmetric(4), s2 in symmetric(4)) {
        let code = symmetric_family(&s1, &s2).unwrap().code;
        prop_assume!(code.n() <= 12 && code.k() > 0);
        let r = code.distance(&SearchConfig::default());
        prop_assert!(r.is_exact());
        prop_assert_eq!(r.value.finite(), symplectic_distance(code.a_x(), code.a_z()).map(|t| t.0));
    }

    #[test]
    fn two_tile_generators_commute_and_counts_agree((a1, b1) in tile_pair(3, 4), (a2, b2) in tile_pair(3, 4)) {
        let built = two_tile(&a1, &b1, &a2, &b2).unwrap();
        let code = &built.code;
        prop_assert!(code.g_x().mul(&code.g_z().transpose()).is_zero());
        prop_assert_eq!(built.prediction.k, code.n() - wide_rank(code.g_x()) - wide_rank(code.g_z()));
        prop_assert_eq!(built.prediction.n, code.n());
    }

    #[test]
    fn engine_witness_is_a_minimum_logical(h1 in matrix(4, 5), h2 in matrix(4, 5)) {
        let code = AnyCode::Css(hypergraph_product(&h1, &h2));
        let r = code.distance(&SearchConfig::default());
        if let (Some(d), Some(qhp::Witness::Logical(op))) = (r.value.finite(), &r.witness) {
            prop_assert_eq!(op.weight(), d);
            prop_assert!(code.is_logical(op));
        } else {
            prop_assert_eq!(code.k(), 0);
        }
    }

    #[test]
    fn checkerboard_distance_is_unimodular_invariant(
        a in -5i64..=5, b in -5i64..=5, c in -5i64..=5, e in -5i64..=5, t in -3i64..=3,
    ) {
        let det = a * e - b * c;
        prop_assume!(det > 0 && det <= 40 && (a + b) % 2 == 0 && (c + e) % 2 == 0);
        let v = PeriodicityVectors::new((a, b), (c, e)).unwrap();
        let Ok(code) = rotated_checkerboard(&v) else { return Ok(()) };
        let moved = unimodular_equiv(&v, [[1, t], [0, 1]]).unwrap();
        let predicted = predicted_distance_checkerboard(&v).unwrap();
        prop_assert_eq!(predicted_distance_checkerboard(&moved).unwrap(), predicted);
        prop_assert_eq!(rotated_checkerboard(&moved).unwrap().k(), code.k());
        let d = code.distance(&SearchConfig::default());
        prop_assert_eq!(d.value.finite(), Some(predicted));
    }

    #[test]
    fn bundles_round_trip(h1 in matrix(4, 5), h2 in matrix(4, 5), txt in any::<bool>()) {
        let dir = tempfile::tempdir().unwrap();
        let code = AnyCode::Css(hypergraph_product(&h1, &h2));
        let format = if txt { MatrixFormat::Txt01 } else { MatrixFormat::Alist };
        let construction = Construction { family: "hypergraph".into(), args: serde_json::json!({}) };
        let bundle = Bundle::new(code.clone(), construction, None, None, format, Metadata::now(None));
        write_bundle(dir.path(), &bundle).unwrap();
        prop_assert_eq!(read_bundle(dir.path()).unwrap().code, code);
    }
}
