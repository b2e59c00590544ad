use thiserror::Error;

/// Errors reported by validating operations. Internal invariant violations
/// (things that can only happen through a bug) panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("polynomial degree {degree} exceeds the supported bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial has odd degree {0}")]
    OddDegree(usize),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
    #[error("relator is not preserved by the endomorphism")]
    RelatorNotPreserved,
    #[error("endomorphism reverses orientation")]
    OrientationReversing,
    #[error("homology action is not symplectic")]
    NonSymplectic,
    #[error("mapping class does not act trivially on mod-2 homology; no canonical lift")]
    NotLiftable,
    #[error("word has odd sigma value and does not lie in the cover subgroup")]
    OddWord,
    #[error("word is outside the certifier scope (acts nontrivially on mod-2 homology)")]
    NotInScope,
    #[error("invalid separating splitting: {0}")]
    InvalidSplitting(String),
    #[error("fewer than 3 usable lengths; cannot fit a decay rate")]
    InsufficientData,
    #[error("mod-p closure exceeded the configured bound {0}")]
    Explosion(usize),
    #[error("generating set is not closed under inversion: `{0}` has no inverse")]
    AsymmetricGenerators(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
