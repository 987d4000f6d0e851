//! Default numerical tolerances and step sizes, collected in one place.
//!
//! These are the values the verification suite pins; the CLI can override
//! the run-time ones (`--h`, `--tol-eigen`, `--tol-minimal`).

/// Exact algebraic identities evaluated in f64 (group law, frame algebra).
pub const EXACT: f64 = 1e-12;

/// Identities that accumulate a handful of rounding steps (isometry
/// pushforwards, metric invariance under composed maps).
pub const NEAR_EXACT: f64 = 1e-10;

/// A surface point counts as minimal when |H| is below this.
pub const MINIMAL_H: f64 = 1e-10;

/// Eigenvalue agreement for the finite-type fit (|λ_fit − λ_ref|).
pub const EIGEN: f64 = 1e-6;

/// Relative threshold on the fit residual for "Δrᵢ = λᵢrᵢ holds":
/// residual_rms ≤ `FIT_RESIDUAL_REL · (1 + |λ|)`.
pub const FIT_RESIDUAL_REL: f64 = 1e-5;

/// |λ| below this counts as the zero eigenvalue in classification.
pub const LAMBDA_ZERO: f64 = 1e-7;

/// Two fitted eigenvalues count as equal within
/// `LAMBDA_EQ · (1 + max(|λᵢ|, |λⱼ|))`.
pub const LAMBDA_EQ: f64 = 1e-6;

/// Coordinate exclusion for the λ fit: points with |rᵢ| below
/// `COORD_EXCLUDE_REL · (1 + grid diameter)` do not enter the fit.
pub const COORD_EXCLUDE_REL: f64 = 1e-6;

/// Tension field vs 2H·N agreement (Beltrami identity check).
pub const BELTRAMI: f64 = 1e-6;

/// Default outer-FD step for the divergence-form scalar Laplacian:
/// `h = FD_STEP_REL · min(grid spacing, 1)`.
pub const FD_STEP_REL: f64 = 1e-3;

/// Central-difference step for surface Christoffel symbols:
/// `h = CHRISTOFFEL_STEP_REL · (1 + |p|)` at parameter point p.
pub const CHRISTOFFEL_STEP_REL: f64 = 1e-4;

/// W² at or below this is reported as a degenerate chart point.
pub const DEGENERATE_W2: f64 = 1e-12;

/// Residual tolerance for the implicit ruling-parameter solve
/// |x − t − y·u(t)|.
pub const IMPLICIT_SOLVE: f64 = 1e-12;

/// Newton damping floor for the nonlinear Poisson solver: 2⁻²⁰.
pub const NEWTON_DAMP_FLOOR: f64 = 9.5367431640625e-7;

/// Target residual max-norm for the nonlinear Poisson solver.
pub const PDE_RESIDUAL: f64 = 1e-10;
