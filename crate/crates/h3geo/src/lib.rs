//! Surface geometry in the 3-dimensional Heisenberg group H₃.
//!
//! H₃ is R³ carrying the left-invariant metric `ds² = dx² + dy² + ω²`,
//! where `ω = dz + ½(y dx − x dy)` is the Darboux (contact) form. This
//! crate implements the ambient kernel (group law, orthonormal frame,
//! Levi-Civita connection, isometries, geodesic-line predicates), surface
//! charts with exact second-order jets, the fundamental forms and mean
//! curvature, the tension field, scalar Laplace–Beltrami operators in
//! divergence form, and the machinery to classify ruled surfaces whose
//! coordinates satisfy the finite-type condition `Δrᵢ = λᵢ rᵢ`.
//!
//! The two ruled families swept by straight geodesic lines are
//!
//! * `r(t,s) = (t, a(t), s)` — vertical rulings over a plane curve, and
//! * `r(t,s) = (t, 0, a(t)) + s (u(t), 1, t/2)` — rulings inside `ker ω`,
//!
//! with `a`, `u` user-supplied expressions parsed by the small DSL in
//! [`expr`]. Profiles may also be built by integrating the slope ODE of
//! the ruled-graph reduction, and the reduced nonlinear Poisson equations
//! for those graphs have a desk-scale damped-Newton solver.
//!
//! Everything is pure and immutable; all entry points are safe to call
//! concurrently.

pub mod chart;
pub mod error;
pub mod expr;
pub mod heisenberg;
pub mod laplace;
pub mod report;
pub mod ruled;
pub mod surface;
pub mod tol;

pub use chart::{Chart, ChartJet, Domain};
pub use error::Error;
pub use expr::{parse, Bindings, Expr, Jet2, Var};
pub use heisenberg::{CoordPoint, CoordVector, FrameVector, Isometry};
pub use laplace::{FiniteTypeReport, GridSpec};

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;
