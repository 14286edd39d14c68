use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial degree {degree} must be below the block length {n}")]
    DegreeTooLarge { degree: usize, n: usize },

    #[error("{poly} does not divide x^{n} - 1")]
    NotADivisor { poly: String, n: usize },

    #[error("check polynomial {0} is not palindromic")]
    NotPalindromic(String),

    #[error("n - deg h = {0} is odd, so no symmetric shift of the circulant exists")]
    OddShift(usize),

    #[error("check matrix must have full row rank (rank {rank}, {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },

    #[error(
        "check matrix must be symmetric; build one from a full-rank check matrix with symmetrize()"
    )]
    NotSymmetric,

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("stabilizer generators do not commute: {0}")]
    NonCommuting(String),

    #[error("square-family inputs need equal distances of the code and its transpose; {0}")]
    TransposedDistanceMismatch(String),

    #[error("periodicity vectors {0:?} and {1:?} are parallel")]
    DegenerateLattice((i64, i64), (i64, i64)),

    #[error("periodicity vectors {0:?}, {1:?} break the checkerboard pattern (odd 1-norm); use the non-bipartite ZXXZ construction")]
    NotBipartite((i64, i64), (i64, i64)),

    #[error(
        "periodicity vectors {0:?}, {1:?} both have even 1-norm; use the checkerboard construction"
    )]
    Bipartite((i64, i64), (i64, i64)),

    #[error("transformation has determinant {0}, expected +1 or -1")]
    NotUnimodular(i64),

    #[error("lattice side {0} is too small, need at least 2")]
    LatticeTooSmall(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
