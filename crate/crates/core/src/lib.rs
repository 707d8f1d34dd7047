//! Temporary build scaffold; full module set lands incrementally.
pub mod airy;
pub mod det;
pub mod roots;
mod dd;
pub mod error;

pub use airy::{eval_airy, eval_u, eval_v, AiryPair, Sign, SolutionKind};
pub use det::{char_det, det_on_knot, knot_point, xi_map, DetValue, SpectralParams};
pub use roots::{newton_complex, ray_zero_moduli, solve_critical, CriticalPoint, RootResult};
pub use error::{Error, Result};
pub use num_complex::Complex64;
