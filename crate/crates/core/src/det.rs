//! Characteristic determinant of -eps^{-1} y'' + i x y = lambda y on [-1, 1]
//! with Dirichlet conditions.
//!
//! The substitution xi = eps^{1/3}(lambda - i x) sends the problem to the Airy
//! equation, so the general solution is a combination of Ai and Bi evaluated
//! along the segment between xi(-1) and xi(+1). Imposing y(-1) = y(1) = 0 makes
//! lambda an eigenvalue exactly when
//!
//! ```text
//! D(eps, lambda) = -i * [ Ai(xi_+) Bi(xi_-) - Ai(xi_-) Bi(xi_+) ] = 0,
//! xi_± = eps^{1/3} (lambda ∓ i).
//! ```
//!
//! The -i factor fixes the scalar normalization (any nonzero multiple has the
//! same zeros) so that the PT symmetry reads conj(D(eps, conj lambda)) =
//! D(eps, lambda): D is real on the real lambda axis and positive beyond the
//! largest real eigenvalue. Partial derivatives in lambda and eps come from
//! the chain rule through Ai', Bi' with d(xi)/d(lambda) = eps^{1/3} and
//! d(xi)/d(eps) = xi / (3 eps).

use crate::airy::eval_ai_bi;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Base tolerance of the "is an eigenvalue" test: |D| <= DET_TOL * scale,
/// where scale = max(1, |Ai(xi_+) Bi(xi_-)|) compensates the exponential
/// growth of Bi.
pub const DET_TOL: f64 = 1e-10;

/// The branch point 1/sqrt(3) of the limit spectral graph; the unique site of
/// all eigenvalue collisions.
pub fn knot_point() -> f64 {
    1.0 / 3.0f64.sqrt()
}

/// Point (eps, lambda) of the parameter-times-spectral plane, eps > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    pub eps: f64,
    pub lambda: Complex64,
}

impl SpectralParams {
    pub fn new(eps: f64, lambda: Complex64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::Domain {
                what: "eps must be positive and finite",
                value: eps,
            });
        }
        if !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(Error::Domain {
                what: "lambda must be finite",
                value: f64::NAN,
            });
        }
        Ok(SpectralParams { eps, lambda })
    }
}

/// Determinant value with its first partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetValue {
    /// D(eps, lambda).
    pub d: Complex64,
    /// dD/dlambda.
    pub d_lambda: Complex64,
    /// dD/deps.
    pub d_eps: Complex64,
    /// max(1, |Ai(xi_+) Bi(xi_-)|): the natural magnitude against which |D|
    /// should be compared.
    pub scale: f64,
}

impl DetValue {
    /// Whether |D| is consistent with lambda being an eigenvalue.
    pub fn is_root(&self, tol: f64) -> bool {
        self.d.norm() <= tol * self.scale
    }
}

/// xi = eps^{1/3} (lambda - i x) with the real positive cube root.
pub fn xi_map(eps: f64, lambda: Complex64, x: f64) -> Result<Complex64> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Domain {
            what: "eps must be positive and finite",
            value: eps,
        });
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            what: "x must lie in [-1, 1]",
            value: x,
        });
    }
    Ok(eps.cbrt() * Complex64::new(lambda.re, lambda.im - x))
}

/// Evaluate D and its partials at (eps, lambda).
pub fn char_det(p: &SpectralParams) -> Result<DetValue> {
    let xi_p = xi_map(p.eps, p.lambda, 1.0)?;
    let xi_m = xi_map(p.eps, p.lambda, -1.0)?;
    let (ai_p, bi_p) = eval_ai_bi(xi_p)?;
    let (ai_m, bi_m) = eval_ai_bi(xi_m)?;

    let norm = Complex64::new(0.0, -1.0);
    let d = norm * (ai_p.value * bi_m.value - ai_m.value * bi_p.value);

    let cbrt = p.eps.cbrt();
    let d_lambda = norm
        * cbrt
        * (ai_p.derivative * bi_m.value + ai_p.value * bi_m.derivative
            - ai_m.derivative * bi_p.value
            - ai_m.value * bi_p.derivative);

    let (dxi_p, dxi_m) = (xi_p / (3.0 * p.eps), xi_m / (3.0 * p.eps));
    let d_eps = norm
        * (ai_p.derivative * dxi_p * bi_m.value + ai_p.value * bi_m.derivative * dxi_m
            - ai_m.derivative * dxi_m * bi_p.value
            - ai_m.value * bi_p.derivative * dxi_p);

    let scale = (ai_p.value * bi_m.value).norm().max(1.0);
    Ok(DetValue {
        d,
        d_lambda,
        d_eps,
        scale,
    })
}

/// D restricted to the knot line lambda = 1/sqrt(3); its real roots in eps are
/// exactly the knot crossings {delta_k} and the collisions {eps_k}.
pub fn det_on_knot(eps: f64) -> Result<DetValue> {
    char_det(&SpectralParams::new(eps, Complex64::new(knot_point(), 0.0))?)
}
