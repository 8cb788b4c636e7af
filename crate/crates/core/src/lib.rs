//! Invariant Einstein metrics on full flag manifolds `K/T`.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`]: root systems, the Killing-normalised inner product, Weyl
//!   reflections and weights.
//! * [`isotropy`]: root strings, squared structure constants and the
//!   symmetric triple tensor `[k; ij]` of the isotropy decomposition.
//! * [`curvature`]: Ricci components of an invariant metric in exact, float
//!   or symbolic (Laurent polynomial) arithmetic, plus the Kähler–Einstein
//!   metric `g_{2δ}`.
//! * [`polyalg`]: sparse multivariate polynomials over `Q`, Buchberger's
//!   algorithm, saturation, and Sturm-sequence real-root isolation.
//! * [`solver`]: Einstein polynomial systems, the `G2/T` case analysis, a
//!   multi-start Newton oracle and isometry classification.
//!
//! ```
//! use flag_einstein::{curvature, isotropy, rootsys::RootSystem};
//!
//! let g2 = RootSystem::from_label("G2").unwrap();
//! let tensor = isotropy::triple_tensor(&g2);
//! let ke = curvature::kaehler_einstein_metric(&g2);
//! let (k, residual) = curvature::einstein_residual(&ke, &tensor).unwrap();
//! assert_eq!(residual, num_rational::BigRational::from_integer(0.into()));
//! assert!(k > num_rational::BigRational::from_integer(0.into()));
//! ```

pub mod curvature;
pub mod error;
pub mod isotropy;
pub mod polyalg;
pub mod rational;
pub mod rootsys;
pub mod solver;

pub use error::{Error, Result};
