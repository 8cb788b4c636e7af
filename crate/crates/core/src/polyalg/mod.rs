//! Exact polynomial algebra over `Q`.

pub mod groebner;
pub mod laurent;
pub mod modular;
pub mod poly;
pub mod sturm;
pub mod text;

pub use groebner::{buchberger, saturate, Budget, GroebnerBasis, PartialBasis};
pub use laurent::LaurentPoly;
pub use modular::{lift_shape, LiftedShape};
pub use poly::{variables, Monomial, MultiPoly, OrderKind, TermOrder, Vars};
pub use sturm::{isolate_positive_roots, isolate_real_roots, Interval, IsolatingInterval, UniPoly};
