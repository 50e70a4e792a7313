//! Small special-function kit: the complex exponential integral E₁ and a
//! few cancellation-safe elementary quotients.
//!
//! E₁ appears when the tail ∫_T^∞ a(t)e^{-zt}dt of an oscillatory signal
//! has a closed form, e.g. for sin t / t:
//! ∫_T^∞ (sin t / t) e^{-zt} dt = (E₁((z-i)T) - E₁((z+i)T)) / (2i).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant (reference value; the zeta module re-derives
/// it from the limit definition and cross-checks against this).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// (1 - e^{-w}) / w, the relative decrement of the exponential.
///
/// Evaluated by series for small |w| to avoid the subtractive cancellation
/// in the direct formula.
pub fn one_minus_exp_over(w: Complex64) -> Complex64 {
    if w.norm() < 0.25 {
        // sum_{k>=0} (-w)^k / (k+1)!
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for k in 1..=20 {
            term *= -w / (k as f64 + 1.0);
            acc += term;
            if term.norm() < 1e-20 {
                break;
            }
        }
        acc
    } else {
        ((-w).exp() - 1.0) / -w
    }
}

/// Principal-branch E₁(w) = ∫_1^∞ e^{-wt}/t dt for Re w ≥ 0, w ≠ 0.
pub fn e1(w: Complex64) -> Result<Complex64> {
    Ok(exp_scaled_e1(w)? * (-w).exp())
}

/// e^w E₁(w), stable for large |w| where E₁ itself underflows.
///
/// Series for small |w|, modified-Lentz continued fraction otherwise.
pub fn exp_scaled_e1(w: Complex64) -> Result<Complex64> {
    if w.norm() == 0.0 {
        return Err(Error::Pole("E1 at w = 0".into()));
    }
    if w.re < -1e-12 {
        return Err(Error::Domain(format!(
            "E1 evaluated off the closed right half-plane: {w}"
        )));
    }
    if w.norm() <= 4.0 {
        // E1(w) = -γ - ln w + Σ_{k>=1} (-1)^{k+1} w^k / (k · k!)
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for k in 1..=60 {
            term *= w / (k as f64);
            let contrib = term / (k as f64);
            if k % 2 == 1 {
                sum += contrib;
            } else {
                sum -= contrib;
            }
            if contrib.norm() < 1e-20 * (1.0 + sum.norm()) {
                break;
            }
        }
        let e1 = -Complex64::new(EULER_GAMMA, 0.0) - w.ln() + sum;
        return Ok(e1 * w.exp());
    }

    // e^w E1(w) = 1 / (w + 1 - 1/(w + 3 - 4/(w + 5 - 9/(...))))
    let tiny = 1e-280;
    let one = Complex64::new(1.0, 0.0);
    let mut b = w + 1.0;
    let mut c = Complex64::new(1e280, 0.0);
    let mut d = one / b;
    let mut h = d;
    for k in 1..=400u32 {
        let a = -((k * k) as f64);
        b += 2.0;
        d = b + a * d;
        if d.norm() < tiny {
            d = Complex64::new(tiny, 0.0);
        }
        c = b + a / c;
        if c.norm() < tiny {
            c = Complex64::new(tiny, 0.0);
        }
        d = one / d;
        let delta = c * d;
        h *= delta;
        if (delta - one).norm() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence { estimate: f64::NAN })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn decrement_matches_direct_formula() {
        for &x in &[0.5, 1.0, 3.0] {
            let w = Complex64::new(x, 0.3);
            let direct = (Complex64::new(1.0, 0.0) - (-w).exp()) / w;
            assert!((one_minus_exp_over(w) - direct).norm() < 1e-14);
        }
        assert_abs_diff_eq!(one_minus_exp_over(Complex64::new(0.0, 0.0)).re, 1.0, epsilon = 1e-16);
        // Small-argument series vs exact value at w = 1e-4.
        let w = Complex64::new(1e-4, 0.0);
        let exact = (1.0 - (-1e-4f64).exp()) / 1e-4;
        assert_abs_diff_eq!(one_minus_exp_over(w).re, exact, epsilon = 1e-12);
    }

    #[test]
    fn e1_reference_values() {
        // E1(1) = 0.21938393439552026..., E1(2) = 0.048900510708061120...
        let v1 = e1(Complex64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v1.re, 0.219_383_934_395_520_26, epsilon = 1e-14);
        assert_abs_diff_eq!(v1.im, 0.0, epsilon = 1e-16);
        let v2 = e1(Complex64::new(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v2.re, 0.048_900_510_708_061_120, epsilon = 1e-14);
    }

    #[test]
    fn e1_matches_quadrature_for_complex_argument() {
        // Compare against direct numerical evaluation of ∫_1^N e^{-wt}/t dt.
        let w = Complex64::new(1.5, 2.0);
        let opts = crate::quad::QuadOptions::default().with_panel_cap(0.05);
        let num =
            crate::quad::integrate(|t| (-w * t).exp() / t, 1.0, 40.0, &opts).into_value().unwrap();
        let v = e1(w).unwrap();
        assert!((v - num).norm() < 1e-12, "diff {}", (v - num).norm());
    }

    #[test]
    fn scaled_form_consistent_across_branches() {
        // |w| = 4 is the series/fraction switch; check both sides agree.
        for &arg in &[0.1f64, 0.7, 1.3] {
            let dir = Complex64::from_polar(1.0, arg);
            let inside = exp_scaled_e1(3.9 * dir).unwrap();
            let outside = exp_scaled_e1(4.1 * dir).unwrap();
            // E1 is smooth there; compare both to quadrature.
            for (r, v) in [(3.9, inside), (4.1, outside)] {
                let w = r * dir;
                let opts = crate::quad::QuadOptions::default().with_panel_cap(0.05);
                let num = crate::quad::integrate(|t| (-w * t).exp() / t, 1.0, 30.0, &opts)
                    .into_value()
                    .unwrap();
                assert!((v * (-w).exp() - num).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn imaginary_axis_argument() {
        // E1(iy) relates to the sine and cosine integrals; check against
        // quadrature of the damped oscillatory tail rotated onto a ray.
        let w = Complex64::new(0.0, 5.0);
        let v = e1(w).unwrap();
        // ∫_1^∞ e^{-iyt}/t dt via contour rotation t -> 1 + s(1 - i):
        // equals ∫_0^∞ e^{-iy(1+s(1-i))}/(1+s(1-i)) (1-i) ds, absolutely convergent.
        let dirn = Complex64::new(1.0, -1.0);
        let opts = crate::quad::QuadOptions::default().with_panel_cap(0.05);
        let num = crate::quad::integrate(
            |s| {
                let t = Complex64::new(1.0, 0.0) + s * dirn;
                (-w * t).exp() / t * dirn
            },
            0.0,
            15.0,
            &opts,
        )
        .into_value()
        .unwrap();
        assert!((v - num).norm() < 1e-10, "diff {}", (v - num).norm());
    }

    #[test]
    fn rejects_pole_and_left_half_plane() {
        assert!(e1(Complex64::new(0.0, 0.0)).is_err());
        assert!(e1(Complex64::new(-1.0, 0.0)).is_err());
    }
}
