//! Error types shared across the crate.

use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument left the region where the routine is defined.
    #[error("domain error: {what} (offending value {value})")]
    Domain { what: &'static str, value: f64 },

    /// A series or expansion failed to reach the requested tolerance.
    #[error("convergence failure: {what} (best residual {residual})")]
    Convergence { what: &'static str, residual: f64 },

    /// Newton iteration ran out of iterations.
    #[error("Newton did not converge after {iterations} iterations (|f| = {residual} at {last})")]
    NonConvergence {
        iterations: u32,
        residual: f64,
        last: Complex64,
    },

    /// Newton hit a vanishing derivative.
    #[error("derivative underflow at {at} (|f'| = {magnitude})")]
    DerivativeUnderflow { at: Complex64, magnitude: f64 },

    /// The 2x2 Jacobian of the critical system is numerically singular.
    #[error("Jacobian singular near eps = {eps}, lambda = {lambda}")]
    JacobianSingular { eps: f64, lambda: f64 },

    /// Continuation step size collapsed below the floor without convergence.
    #[error("step collapse at eps = {eps} (step {step})")]
    StepCollapse { eps: f64, step: f64 },

    /// Corrector landed outside the trust radius of the predictor.
    #[error("branch jump at eps = {eps}: corrector moved {displacement} against predicted {predicted}")]
    BranchJump {
        eps: f64,
        displacement: f64,
        predicted: f64,
    },

    /// A branch has no turning point in the traced range.
    #[error("no turning point: lambda is monotone over the traced range of branch {k}")]
    NoTurning { k: u32 },

    /// Implicit-function denominator vanished during arc continuation.
    #[error("singular denominator on arc {k} near a = {a}")]
    SingularDenominator { k: u32, a: f64 },

    /// The locus map is undefined for (near-)real xi.
    #[error("degenerate xi: |Im xi| = {im_abs} is below 1e-12")]
    DegenerateXi { im_abs: f64 },

    /// Dense QR iteration failed to deflate an eigenvalue.
    #[error("eigensolve failure: QR iteration stalled at index {index} of {n}")]
    EigensolveFailure { index: usize, n: usize },

    /// Oracle/determinant pairing exceeded the match distance.
    #[error("unmatched eigenvalue: oracle value {oracle} is {distance} from nearest determinant root")]
    UnmatchedEigenvalue { oracle: Complex64, distance: f64 },

    /// similarity_threshold was called with no norms present.
    #[error("all norms missing: at least one of the L-inf, L1, L2 norms is required")]
    AllNormsMissing,
}
