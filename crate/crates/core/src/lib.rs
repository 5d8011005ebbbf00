//! Riemannian and almost Hermitian invariants of 4-dimensional metric Lie
//! algebras.
//!
//! A 4-dimensional Lie algebra is given by its structure constants in an
//! orthonormal frame `{X, Y, Z, W}`, with the vertical distribution spanned
//! by `{Z, W}` and the horizontal one by `{X, Y}`. On top of the metric
//! structure (Levi-Civita connection, curvature, second fundamental forms of
//! the induced foliation) the crate carries the adapted almost complex
//! structure `J` with `JX = Y`, `JZ = W`, its Kähler form `ω`, the exterior
//! derivative `dω`, the covariant derivative `∇ω`, the Nijenhuis tensor, and
//! the orthogonal decomposition of the space of tensors with the symmetries
//! of `∇ω`.
//!
//! Twenty families `g1..g20` of such algebras are built in [`families`],
//! together with the closed-form conditions for each family to be almost
//! Kähler (`dω = 0`), integrable (`N_J = 0`) or Kähler (`∇ω = 0`). The
//! [`classify`] module runs the three independent classification routes
//! (closed-form conditions, direct `dω`/`N_J` computation, and the
//! projection decomposition of `∇ω`) and checks their agreement.
//!
//! All of the numerics are generic over the scalar type: exact arithmetic
//! over arbitrary-precision rationals, or `f64` with a session tolerance.
//!
//! ```
//! use lieclass_core::classify::classify;
//! use lieclass_core::families::{build, FamilyId, FamilyParams};
//! use lieclass_core::{Rational, Scalar, DEFAULT_TOLERANCE};
//!
//! // g7 with theta1 = theta2 = 0 is almost Kähler but, since
//! // 2 z2 + w1 = 3 here, not integrable.
//! let params = FamilyParams::from_pairs([
//!     ("z2", Rational::from_int(1)),
//!     ("w1", Rational::from_int(1)),
//!     ("w2", Rational::from_int(0)),
//!     ("theta1", Rational::from_int(0)),
//!     ("theta2", Rational::from_int(0)),
//! ])?;
//! let algebra = build(FamilyId::G7, &params, DEFAULT_TOLERANCE)?;
//! let report = classify(&algebra, DEFAULT_TOLERANCE).unwrap();
//! assert!(report.routes_agree);
//! assert!(report.ak && !report.i);
//! assert_eq!(report.class_label(), "AK");
//! # Ok::<(), lieclass_core::families::FamilyError>(())
//! ```

pub mod classify;
pub mod families;
pub mod gray_hervella;
pub mod hermitian;
pub mod lie;
pub mod linalg;
pub mod scalar;

pub use classify::{Classification, RouteVerdicts};
pub use families::{AdaptedParams, FamilyId, FamilyParams, Mode};
pub use gray_hervella::{ClassLabel, WDecomposition, WTensor};
pub use lie::{Connection, FoliationData, LieAlgebra4};
pub use linalg::{Axis, Tensor3, Vec4};
pub use scalar::Scalar;

/// Exact scalar: arbitrary-precision rational in lowest terms.
pub type Rational = num_rational::BigRational;

/// Default tolerance for `f64` zero tests; ignored in exact mode.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A 4-dimensional metric Lie algebra over exact rationals.
pub type ExactLieAlgebra = LieAlgebra4<Rational>;
/// A 4-dimensional metric Lie algebra over `f64`.
pub type FloatLieAlgebra = LieAlgebra4<f64>;
