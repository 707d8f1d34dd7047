//! Root finding: damped complex Newton, the two-dimensional critical solve
//! (D, dD/dlambda) = 0, and the ray zeros of U±.

use crate::airy::{eval_u, Sign};
use crate::det::{char_det, knot_point, SpectralParams};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Outcome of a Newton run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: Complex64,
    /// |f| at the returned point.
    pub residual: f64,
    pub iterations: u32,
    pub converged: bool,
}

/// A double eigenvalue of the operator family: D = dD/dlambda = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub eps_star: f64,
    pub lambda_star: Complex64,
    /// (|D|, |dD/dlambda|) at the solution.
    pub residual_pair: (f64, f64),
}

/// Damped Newton iteration for a holomorphic f given by value and derivative.
///
/// Steps are halved (up to 20 times) whenever |f| fails to decrease; the
/// converged flag requires both |f| <= tol and a final step below
/// tol * (1 + |root|).
pub fn newton_complex<F>(f: F, seed: Complex64, tol: f64, max_iter: u32) -> Result<RootResult>
where
    F: Fn(Complex64) -> Result<(Complex64, Complex64)>,
{
    if !(tol > 0.0) {
        return Err(Error::Domain {
            what: "Newton tolerance must be positive",
            value: tol,
        });
    }
    let mut z = seed;
    let (mut v, mut dv) = f(z)?;
    for it in 0..max_iter {
        let r = v.norm();
        if dv.norm() < 1e-300 {
            return Err(Error::DerivativeUnderflow {
                at: z,
                magnitude: dv.norm(),
            });
        }
        let mut step = v / dv;
        if r <= tol && step.norm() <= tol * (1.0 + z.norm()) {
            return Ok(RootResult {
                root: z,
                residual: r,
                iterations: it,
                converged: true,
            });
        }
        let mut trial = z - step;
        let (mut tv, mut tdv) = f(trial)?;
        let mut halvings = 0;
        while tv.norm() > r && halvings < 20 {
            step *= 0.5;
            trial = z - step;
            let next = f(trial)?;
            tv = next.0;
            tdv = next.1;
            halvings += 1;
        }
        z = trial;
        v = tv;
        dv = tdv;
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        residual: v.norm(),
        last: z,
    })
}

/// Solve D = 0, dD/dlambda = 0 for (eps, lambda) near a suspected collision.
///
/// PT symmetry makes both D and dD/dlambda real on the real lambda axis, and
/// every critical point has real lambda, so the solve is a damped real 2x2
/// Newton in (eps, Re lambda). The first Jacobian row is analytic from the
/// determinant partials; the second row comes from central differences of
/// dD/dlambda. Convergence never silently yields a non-critical point: both
/// residuals are enforced, and the knot-point identity |lambda - 1/sqrt(3)|
/// <= 1e-8 is checked after the solve.
pub fn solve_critical(seed_eps: f64, seed_lambda: Complex64, tol: f64) -> Result<CriticalPoint> {
    if !(tol > 0.0) {
        return Err(Error::Domain {
            what: "critical-solve tolerance must be positive",
            value: tol,
        });
    }
    let mut eps = seed_eps;
    let mut lam = seed_lambda.re;

    let eval = |eps: f64, lam: f64| -> Result<(f64, f64, f64, f64)> {
        let v = char_det(&SpectralParams::new(eps, Complex64::new(lam, 0.0))?)?;
        Ok((v.d.re, v.d_lambda.re, v.d_eps.re, v.scale))
    };

    let (mut d, mut dl, mut de, mut _scale) = eval(eps, lam)?;
    for _ in 0..80 {
        let fnorm = d.hypot(dl);
        if d.abs() <= tol && dl.abs() <= tol {
            let lambda_star = Complex64::new(lam, 0.0);
            if (lam - knot_point()).abs() > 1e-8 {
                return Err(Error::Convergence {
                    what: "critical point off the knot line",
                    residual: (lam - knot_point()).abs(),
                });
            }
            return Ok(CriticalPoint {
                eps_star: eps,
                lambda_star,
                residual_pair: (d.abs(), dl.abs()),
            });
        }
        // Second derivatives of D by central differences of d_lambda.
        let h_l = 1e-6 * (1.0 + lam.abs());
        let h_e = 1e-6 * (1.0 + eps.abs());
        let (_, dl_p, _, _) = eval(eps, lam + h_l)?;
        let (_, dl_m, _, _) = eval(eps, lam - h_l)?;
        let d_ll = (dl_p - dl_m) / (2.0 * h_l);
        let (_, dl_pe, _, _) = eval(eps + h_e, lam)?;
        let (_, dl_me, _, _) = eval(eps - h_e, lam)?;
        let d_le = (dl_pe - dl_me) / (2.0 * h_e);

        // J * [d_eps_step, d_lam_step] = -F with F = (D, D_lambda)
        let det_j = de * d_ll - dl * d_le;
        if det_j.abs() < 1e-300 {
            return Err(Error::JacobianSingular { eps, lambda: lam });
        }
        let mut step_e = (-d * d_ll + dl * dl) / det_j;
        let mut step_l = (-de * dl + d_le * d) / det_j;

        // Damping: halve while the residual norm does not decrease.
        let mut halvings = 0;
        loop {
            let (te, tl) = (eps + step_e, lam + step_l);
            if te > 0.0 {
                if let Ok((nd, ndl, nde, nscale)) = eval(te, tl) {
                    if nd.hypot(ndl) < fnorm || halvings >= 20 {
                        eps = te;
                        lam = tl;
                        d = nd;
                        dl = ndl;
                        de = nde;
                        _scale = nscale;
                        break;
                    }
                }
            }
            if halvings >= 20 {
                return Err(Error::NonConvergence {
                    iterations: 80,
                    residual: fnorm,
                    last: Complex64::new(lam, 0.0),
                });
            }
            step_e *= 0.5;
            step_l *= 0.5;
            halvings += 1;
        }
    }
    Err(Error::NonConvergence {
        iterations: 80,
        residual: d.hypot(dl),
        last: Complex64::new(lam, 0.0),
    })
}

/// Asymptotic seed for the k-th ray zero modulus: invert
/// (sqrt(3)/4)(3/2)^3 (pi k - phi)^2 through m = (2/sqrt 3) value^{1/3}.
fn ray_seed_modulus(k: u32, phi: f64) -> f64 {
    let value = (3.0f64.sqrt() / 4.0) * (1.5f64).powi(3) * (PI * k as f64 - phi).powi(2);
    (2.0 / 3.0f64.sqrt()) * value.cbrt()
}

/// First `count` moduli of the zeros of U_- (sign Minus, the alpha_k) or U_+
/// (sign Plus, the beta_k) on the ray arg z = pi/3, in increasing order.
///
/// Zeros are found by unrestricted complex Newton and only then verified to
/// lie on the ray (|arg z - pi/3| <= 1e-10, |U| <= 1e-10), so the ray
/// location is a checked property, not an assumption. The origin zero of U_-
/// is not counted: moduli start with the first nonzero one.
pub fn ray_zero_moduli(sign: Sign, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::Domain {
            what: "count must be at least 1",
            value: 0.0,
        });
    }
    let phi = match sign {
        Sign::Minus => PI / 12.0,
        Sign::Plus => 5.0 * PI / 12.0,
    };
    let ray = Complex64::from_polar(1.0, PI / 3.0);
    let mut moduli: Vec<f64> = Vec::with_capacity(count);
    let mut k = 1u32;
    while moduli.len() < count {
        if k as usize > count + 16 {
            return Err(Error::Convergence {
                what: "ray zero enumeration fell short",
                residual: (count - moduli.len()) as f64,
            });
        }
        let seed = ray_seed_modulus(k, phi) * ray;
        k += 1;
        let f = |z: Complex64| -> Result<(Complex64, Complex64)> {
            let u = eval_u(sign, z)?;
            Ok((u.value, u.derivative))
        };
        let res = newton_complex(f, seed, 1e-12, 40)?;
        let value = eval_u(sign, res.root)?.value;
        if value.norm() > 1e-10 || (res.root.arg() - PI / 3.0).abs() > 1e-10 {
            return Err(Error::Convergence {
                what: "ray zero failed on-ray verification",
                residual: value.norm().max((res.root.arg() - PI / 3.0).abs()),
            });
        }
        let m = res.root.norm();
        if moduli.iter().all(|&p| (p - m).abs() > 1e-6) {
            moduli.push(m);
        }
    }
    moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(moduli)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_quadratic() {
        let f = |z: Complex64| Ok((z * z - 1.0, 2.0 * z));
        let r = newton_complex(f, Complex64::new(1.5, 0.0), 1e-12, 20).unwrap();
        assert!(r.converged);
        assert!((r.root - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(r.iterations <= 8, "{} iterations", r.iterations);
    }

    #[test]
    fn newton_is_deterministic() {
        let f = |z: Complex64| Ok((z * z * z - 2.0, 3.0 * z * z));
        let a = newton_complex(f, Complex64::new(1.0, 0.3), 1e-13, 40).unwrap();
        let b = newton_complex(f, Complex64::new(1.0, 0.3), 1e-13, 40).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn lowest_eigenvalue_at_eps_one() {
        // Seed from lambda_1 ~ (pi/2)^2 / eps; the refined root was frozen
        // from a 30-digit determinant evaluation.
        let f = |z: Complex64| {
            let v = char_det(&SpectralParams::new(1.0, z)?)?;
            Ok((v.d, v.d_lambda))
        };
        let r = newton_complex(f, Complex64::new(2.4674, 0.0), 1e-11, 30).unwrap();
        assert!(r.converged);
        assert!(
            (r.root.re - 2.484980098688361).abs() < 1e-9,
            "lambda_1(1) = {}",
            r.root
        );
        assert!(r.root.im.abs() < 1e-12);
    }

    #[test]
    fn u_minus_ray_root_from_seed() {
        let f = |z: Complex64| {
            let u = eval_u(Sign::Minus, z)?;
            Ok((u.value, u.derivative))
        };
        let seed = Complex64::from_polar(2.666, PI / 3.0);
        let r = newton_complex(f, seed, 1e-12, 30).unwrap();
        assert!(r.converged);
        assert!((r.root.arg() - PI / 3.0).abs() < 1e-8);
        assert!((r.root.norm() - 2.66635269040693788).abs() < 1e-10);
    }

    #[test]
    fn ray_zero_values_and_interlacing() {
        let alphas = ray_zero_moduli(Sign::Minus, 3).unwrap();
        let betas = ray_zero_moduli(Sign::Plus, 3).unwrap();
        // 30-digit references for the first three moduli of each family.
        let alpha_ref = [2.66635269040693788, 4.34247756803955738, 5.74102881611223979];
        let beta_ref = [1.98635270743047281, 3.82533919116045265, 5.29562113684275586];
        for i in 0..3 {
            assert!((alphas[i] - alpha_ref[i]).abs() < 1e-10, "alpha_{}", i + 1);
            assert!((betas[i] - beta_ref[i]).abs() < 1e-10, "beta_{}", i + 1);
        }
        // beta_1 < alpha_1 < beta_2 < alpha_2 < beta_3 < alpha_3 (alpha_0 = 0
        // precedes them all).
        let mut merged = Vec::new();
        for i in 0..3 {
            merged.push(betas[i]);
            merged.push(alphas[i]);
        }
        assert!(merged.windows(2).all(|w| w[0] < w[1]), "{merged:?}");
    }

    #[test]
    fn interlacing_first_twenty() {
        let alphas = ray_zero_moduli(Sign::Minus, 20).unwrap();
        let betas = ray_zero_moduli(Sign::Plus, 20).unwrap();
        for i in 0..20 {
            assert!(betas[i] < alphas[i]);
            if i + 1 < 20 {
                assert!(alphas[i] < betas[i + 1]);
            }
        }
        // Every reported zero really sits on the ray with a tiny residual.
        let ray = Complex64::from_polar(1.0, PI / 3.0);
        for (&m, sign) in alphas.iter().zip(std::iter::repeat(Sign::Minus)) {
            let u = eval_u(sign, m * ray).unwrap();
            assert!(u.value.norm() <= 1e-10);
        }
    }

    #[test]
    fn critical_solve_first_collision() {
        let cp = solve_critical(12.0, Complex64::new(0.58, 0.0), 1e-10).unwrap();
        assert!(
            (cp.eps_star - 12.312455672260525).abs() < 1e-8,
            "eps_1 = {}",
            cp.eps_star
        );
        assert!((cp.lambda_star.re - knot_point()).abs() < 1e-8);
        assert!(cp.residual_pair.0 <= 1e-10 && cp.residual_pair.1 <= 1e-10);
    }

    #[test]
    fn critical_solve_second_collision_matches_ray_formula() {
        let cp = solve_critical(53.0, Complex64::new(0.578, 0.0), 1e-10).unwrap();
        let alpha2 = ray_zero_moduli(Sign::Minus, 2).unwrap()[1];
        let eps2 = (alpha2 * 3.0f64.sqrt() / 2.0).powi(3);
        assert!(
            (cp.eps_star - eps2).abs() < 1e-8,
            "eps_2 = {} vs ray {}",
            cp.eps_star,
            eps2
        );
    }

    #[test]
    fn critical_solve_far_seed_never_lies() {
        // Far from any collision the solve either fails or lands on a genuine
        // critical point (residuals enforced, lambda on the knot).
        match solve_critical(5.0, Complex64::new(0.9, 0.0), 1e-10) {
            Err(_) => {}
            Ok(cp) => {
                assert!(cp.residual_pair.0 <= 1e-10 && cp.residual_pair.1 <= 1e-10);
                assert!((cp.lambda_star.re - knot_point()).abs() <= 1e-8);
            }
        }
    }
}
