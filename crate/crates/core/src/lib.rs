//! Construction and verification of toric, checkerboard and hypergraph-product
//! quantum LDPC codes over GF(2).

pub mod catalog;
pub mod classical;
pub mod distance;
pub mod error;
pub mod family;
pub mod gf2;
pub mod io;
pub mod lattice;
pub mod poly;
pub mod product;
pub mod report;
pub mod stabilizer;

pub use classical::{
    cyclic_code, palindromic_symmetric_circulant, symmetrize, tile_dimensions, BinaryCode,
    ClassicalCodeParams, TileDimensions,
};
pub use distance::{
    css_min_weight, min_weight_excluding, symplectic_min_weight, Certainty, Distance,
    DistanceResult, SearchConfig, SearchStats, Witness,
};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, RowEchelon};
pub use io::AnyCode;
pub use lattice::PeriodicityVectors;
pub use poly::{circulant, generator_poly, reverse_poly, Gf2Poly};
pub use stabilizer::{
    css_to_symplectic, CodeForm, CssCheckMatrix, LogicalOperator, QuantumCodeParams,
    StabilizerCode, SymplecticCheckMatrix,
};
