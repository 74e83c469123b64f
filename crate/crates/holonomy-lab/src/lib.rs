//! Exact-arithmetic toolkit for the linear algebra of pseudo-quaternionic-Hermitian
//! spaces of signature (4, 4n+4): the parabolic subalgebra sp(1,n+1) preserving an
//! isotropic quaternionic line, its curvature-tensor space, Berger-property checks
//! for the classified subalgebra families, and the symmetric-pair condition.
//!
//! Everything is computed over the rationals; there is no floating point and no
//! tolerance anywhere. All identity checks are exact equalities.
//!
//! The crate is organised as a library with one thin CLI binary (`holonomy-lab`).
//! Each major capability has a runnable example under `examples/`.

pub mod curvature;
pub mod families;
pub mod hermitian;
pub mod linalg;
pub mod parabolic;
pub mod parametric;
pub mod qmatrix;
pub mod quat;
pub mod report;
pub mod scalar;
pub mod solver;
pub mod subspace;
pub mod symmetric;

pub mod cli;

pub use curvature::{CurvatureTensor, IdentityReport, PTensor};
pub use families::{Family, FamilySpec, Subalgebra};
pub use hermitian::HermitianSpace;
pub use parabolic::{ParabolicElement, SimilarityElement};
pub use parametric::CurvatureParams;
pub use qmatrix::{QMatrix, QVector};
pub use quat::Quat;
pub use scalar::Scalar;
pub use solver::{berger_check, solve_p, solve_r, BergerReport};
pub use subspace::RealSubspace;
pub use symmetric::SymmetricPair;

/// Errors reported by validating constructors and solvers.
///
/// Low-level arithmetic (quaternion products, `Op` application, brackets) treats
/// dimension mismatches as programmer errors and panics instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("Gram matrix is not Hermitian at entry ({0},{1})")]
    NotHermitian(usize, usize),
    #[error("Gram matrix realification is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not skew for the given metric: {0}")]
    NotSkew(String),
    #[error("vectors are not linearly independent")]
    NotIndependent,
    #[error("subspace parameter out of range: {0}")]
    SubspaceParameter(String),
    #[error("subspace summands are not g-orthogonal: {0}")]
    NotOrthogonal(String),
    #[error("index ranges overlap: {0}")]
    IndexOverlap(String),
    #[error("basis is not closed under the bracket (pair {0}, {1})")]
    NotClosed(usize, usize),
    #[error("family constraint violated ({clause}): {detail}")]
    FamilyConstraint { clause: String, detail: String },
    #[error("tensor does not lie in the curvature space of the algebra: {0}")]
    NotInCurvatureSpace(String),
    #[error("value is not in the parameter space: {0}")]
    InvalidParameter(String),
    #[error("ambient spaces differ")]
    AmbientMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
