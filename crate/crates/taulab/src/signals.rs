//! Bounded signals a(t) and their Laplace-transform machinery.
//!
//! A signal is a bounded measurable function on [0, ∞), extended by zero
//! for t < 0, with a known sup bound M, an optional closed-form transform
//! f(z) = ∫₀^∞ a(t)e^{-zt}dt with a stated analyticity domain, and an
//! optional half-length B of the imaginary-axis interval to which f
//! extends. Signals are complex-valued throughout; real ones are the
//! special case.
//!
//! Besides f(z) the module provides the truncated transform
//! f_T(z) = ∫₀^T a(t)e^{-zt}dt, partial integrals ∫₀^T a, and the boundary
//! quotient q(x+iy) = (f(x+iy) − f(x))/(iy) with its removable singularity
//! at y = 0 handled by a short Taylor jet.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::arith::MangoldtTable;
use crate::error::{Error, Result};
use crate::quad::{integrate_with_breakpoints, QuadOptions};
use crate::specfn::one_minus_exp_over;
use crate::zeta::ZetaEvaluator;

/// Below this |y| the quotient switches to its Taylor jet.
pub const QUOTIENT_DELTA: f64 = 1e-3;

type EvalFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
type TransformFn = Arc<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>;

/// A piecewise-constant signal: `values[i]` on `[breaks[i], breaks[i+1])`,
/// zero outside `[breaks.first(), breaks.last())`.
#[derive(Debug, Clone)]
pub struct StepSignal {
    breaks: Vec<f64>,
    values: Vec<f64>,
}

impl StepSignal {
    pub fn new(breaks: Vec<f64>, values: Vec<f64>) -> Self {
        assert!(breaks.len() >= 2, "need at least one segment");
        assert_eq!(values.len() + 1, breaks.len(), "one value per segment");
        assert!(breaks.windows(2).all(|w| w[0] < w[1]), "breaks must increase");
        assert!(breaks[0] >= 0.0, "signals vanish for t < 0");
        StepSignal { breaks, values }
    }

    fn eval(&self, t: f64) -> f64 {
        if t < self.breaks[0] || t >= *self.breaks.last().unwrap() {
            return 0.0;
        }
        let i = self.breaks.partition_point(|&b| b <= t) - 1;
        self.values[i]
    }

    fn sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn segments(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breaks.windows(2).zip(&self.values).map(|(w, &v)| (w[0], w[1], v))
    }
}

/// A signal supplied by closures, for cases outside the built-in library.
#[derive(Clone)]
pub struct CustomSignal {
    pub name: String,
    pub eval: EvalFn,
    pub sup_bound: f64,
    pub transform: Option<TransformFn>,
    pub window_b: Option<f64>,
}

impl fmt::Debug for CustomSignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomSignal")
            .field("name", &self.name)
            .field("sup_bound", &self.sup_bound)
            .field("window_b", &self.window_b)
            .finish()
    }
}

/// The signal library plus the generic variants.
#[derive(Debug, Clone)]
pub enum Signal {
    /// a(t) = e^{-αt}, f(z) = 1/(z+α).
    ExpDecay { alpha: f64 },
    /// a(t) = sin t / t, f(z) = π/2 − arctan z, axis window (−i, i).
    Sinc,
    /// a(t) = sin ωt, f(z) = ω/(z²+ω²); poles on the axis, no window.
    Sine { omega: f64 },
    /// The prime-power remainder b(t) = e^{-t}(ψ(e^t) − ⌊e^t⌋) with the
    /// zeta-side transform g(z).
    Pnt { table: Arc<MangoldtTable>, zeta: Arc<ZetaEvaluator> },
    /// Piecewise-constant test signal with exact transform sums.
    Step(StepSignal),
    Custom(CustomSignal),
}

impl Signal {
    pub fn exp_decay(alpha: f64) -> Signal {
        assert!(alpha > 0.0, "decay rate must be positive");
        Signal::ExpDecay { alpha }
    }

    pub fn sinc() -> Signal {
        Signal::Sinc
    }

    pub fn sine(omega: f64) -> Signal {
        assert!(omega > 0.0, "frequency must be positive");
        Signal::Sine { omega }
    }

    pub fn pnt(table: Arc<MangoldtTable>, zeta: Arc<ZetaEvaluator>) -> Signal {
        Signal::Pnt { table, zeta }
    }

    pub fn step(breaks: Vec<f64>, values: Vec<f64>) -> Signal {
        Signal::Step(StepSignal::new(breaks, values))
    }

    pub fn name(&self) -> String {
        match self {
            Signal::ExpDecay { alpha } => format!("exp_decay({alpha})"),
            Signal::Sinc => "sinc".into(),
            Signal::Sine { omega } => format!("sine({omega})"),
            Signal::Pnt { .. } => "pnt_b".into(),
            Signal::Step(_) => "step".into(),
            Signal::Custom(c) => c.name.clone(),
        }
    }

    /// a(t); zero for t < 0.
    pub fn eval(&self, t: f64) -> Complex64 {
        if t < 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let re = |x: f64| Complex64::new(x, 0.0);
        match self {
            Signal::ExpDecay { alpha } => re((-alpha * t).exp()),
            Signal::Sinc => {
                if t == 0.0 {
                    re(1.0)
                } else {
                    re(t.sin() / t)
                }
            }
            Signal::Sine { omega } => re((omega * t).sin()),
            Signal::Pnt { table, .. } => re(table.pnt_signal(t).unwrap_or(0.0)),
            Signal::Step(s) => re(s.eval(t)),
            Signal::Custom(c) => (c.eval)(t),
        }
    }

    /// Sup bound M on |a|.
    pub fn sup_bound(&self) -> f64 {
        match self {
            Signal::ExpDecay { .. } | Signal::Sinc | Signal::Sine { .. } | Signal::Pnt { .. } => {
                1.0
            }
            Signal::Step(s) => s.sup(),
            Signal::Custom(c) => c.sup_bound,
        }
    }

    /// Half-length B of the imaginary-axis interval where f extends; None
    /// marks signals with axis singularities (Tauberian bound inapplicable).
    pub fn window_b(&self) -> Option<f64> {
        match self {
            Signal::ExpDecay { .. } | Signal::Pnt { .. } | Signal::Step(_) => Some(f64::INFINITY),
            Signal::Sinc => Some(1.0),
            Signal::Sine { .. } => None,
            Signal::Custom(c) => c.window_b,
        }
    }

    /// Dominant oscillation frequency of a(t), used for panel caps.
    fn intrinsic_frequency(&self) -> f64 {
        match self {
            Signal::Sinc => 1.0,
            Signal::Sine { omega } => *omega,
            _ => 0.0,
        }
    }

    /// The Laplace transform f(z): closed form when available, otherwise a
    /// truncated quadrature of the defining integral (Re z > 0 only).
    pub fn full_transform(&self, z: Complex64) -> Result<Complex64> {
        match self {
            Signal::ExpDecay { alpha } => {
                let den = z + alpha;
                if den.norm() < 1e-300 {
                    return Err(Error::Pole(format!("transform of exp_decay at z = -{alpha}")));
                }
                Ok(1.0 / den)
            }
            Signal::Sinc => {
                if z.re == 0.0 && z.im.abs() >= 1.0 {
                    return Err(Error::Domain(
                        "sinc transform has branch points at ±i and cuts beyond".into(),
                    ));
                }
                Ok(Complex64::new(FRAC_PI_2, 0.0) - z.atan())
            }
            Signal::Sine { omega } => {
                let den = z * z + omega * omega;
                if den.norm() < 1e-300 {
                    return Err(Error::Pole(format!("transform of sine at z = ±{omega}i")));
                }
                Ok(omega / den)
            }
            Signal::Pnt { zeta, .. } => zeta.pnt_transform(z),
            Signal::Step(s) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, b, v) in s.segments() {
                    acc += v * segment_transform(z, a, b);
                }
                Ok(acc)
            }
            Signal::Custom(c) => {
                if let Some(f) = &c.transform {
                    f(z)
                } else {
                    let (value, _) = self.quadrature_transform(z)?;
                    Ok(value)
                }
            }
        }
    }

    /// Quadrature fallback for the defining integral; returns the value and
    /// an error estimate that includes the truncation tail bound M e^{-xT}/x.
    fn quadrature_transform(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let x = z.re;
        if x <= 0.0 {
            return Err(Error::Domain(
                "no closed-form transform and Re z <= 0: integral diverges or is undefined".into(),
            ));
        }
        let m = self.sup_bound();
        // Cut where the certified tail drops below target.
        let t_cut = ((m / (x * 1e-13)).ln() / x).clamp(10.0, 2e4);
        let tail = m * (-x * t_cut).exp() / x;
        let r = self.truncated_quadrature(z, t_cut)?;
        Ok((r, tail))
    }

    /// f_T(z) = ∫₀^T a(t) e^{-zt} dt.
    ///
    /// Adaptive quadrature for smooth signals; exact step sums for the
    /// piecewise-constant ones (step and the prime-power remainder), whose
    /// integrands jump at every integer image point.
    pub fn truncated_transform(&self, z: Complex64, t_upper: f64) -> Result<Complex64> {
        if t_upper < 0.0 {
            return Err(Error::Range { value: t_upper, context: "truncation time must be >= 0" });
        }
        if t_upper == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        match self {
            Signal::Step(s) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, b, v) in s.segments() {
                    if a >= t_upper {
                        break;
                    }
                    acc += v * segment_transform(z, a, b.min(t_upper));
                }
                Ok(acc)
            }
            Signal::Pnt { table, .. } => pnt_truncated(table, z, t_upper, None),
            _ => self.truncated_quadrature(z, t_upper),
        }
    }

    fn truncated_quadrature(&self, z: Complex64, t_upper: f64) -> Result<Complex64> {
        let freq = z.im.abs() + self.intrinsic_frequency();
        let mut cap = t_upper / 8.0;
        if freq > 0.0 {
            cap = cap.min(FRAC_PI_2 / freq);
        }
        if z.re != 0.0 {
            cap = cap.min(3.0 / z.re.abs());
        }
        cap = cap.max(t_upper / 20_000.0);
        let opts = QuadOptions { panel_cap: Some(cap), ..QuadOptions::default() };
        integrate_with_breakpoints(|t| self.eval(t) * (-z * t).exp(), 0.0, t_upper, &[], &opts)
            .into_value()
    }

    /// ∫₀^T a(t) dt. Passing T = ∞ returns f(0), the value of the improper
    /// integral whenever it converges.
    pub fn partial_integral(&self, t_upper: f64) -> Result<Complex64> {
        if t_upper.is_infinite() && t_upper > 0.0 {
            return self.full_transform(Complex64::new(0.0, 0.0));
        }
        self.truncated_transform(Complex64::new(0.0, 0.0), t_upper)
    }

    /// The boundary quotient q(x+iy) = (f(x+iy) − f(x)) / (iy).
    ///
    /// For |y| below [`QUOTIENT_DELTA`] the literal quotient loses digits
    /// to cancellation and the removable singularity is filled with the
    /// two-term Taylor jet f′(x) + f″(x)·iy/2.
    pub fn quotient(&self, x: f64, y: f64) -> Result<Complex64> {
        if x < 0.0 {
            return Err(Error::Domain("quotient requires x >= 0".into()));
        }
        if x == 0.0 && self.window_b().is_none() {
            return Err(Error::Domain(
                "quotient at x = 0 needs an analytic extension to the axis".into(),
            ));
        }
        if y.abs() >= QUOTIENT_DELTA {
            let num = self.full_transform(Complex64::new(x, y))?
                - self.full_transform(Complex64::new(x, 0.0))?;
            return Ok(num / Complex64::new(0.0, y));
        }
        let (d1, d2) = self.transform_jet2(x)?;
        Ok(d1 + 0.5 * d2 * Complex64::new(0.0, y))
    }

    /// (f′, f″) at a real point: analytic for the closed-form library,
    /// fourth-order imaginary-direction differences otherwise.
    pub(crate) fn transform_jet2(&self, x: f64) -> Result<(Complex64, Complex64)> {
        let z = Complex64::new(x, 0.0);
        match self {
            Signal::ExpDecay { alpha } => {
                let d = z + alpha;
                Ok((-1.0 / (d * d), 2.0 / (d * d * d)))
            }
            Signal::Sine { omega } => {
                let den = z * z + omega * omega;
                let d1 = -2.0 * omega * z / (den * den);
                let d2 = -2.0 * omega * (omega * omega - 3.0 * z * z) / (den * den * den);
                Ok((d1, d2))
            }
            Signal::Sinc => {
                let den = 1.0 + z * z;
                Ok((-1.0 / den, 2.0 * z / (den * den)))
            }
            Signal::Step(s) => {
                let mut d1 = Complex64::new(0.0, 0.0);
                let mut d2 = Complex64::new(0.0, 0.0);
                for (a, b, v) in s.segments() {
                    d1 -= v * segment_moment(z, a, b, 1);
                    d2 += v * segment_moment(z, a, b, 2);
                }
                Ok((d1, d2))
            }
            Signal::Pnt { .. } | Signal::Custom(_) => {
                let h = match self.window_b() {
                    Some(b) if b.is_finite() => (0.01f64).min(b / 4.0),
                    _ => 0.01,
                };
                let f = |k: f64| self.full_transform(Complex64::new(x, k * h));
                let (p1, m1, p2, m2, f0) = (f(1.0)?, f(-1.0)?, f(2.0)?, f(-2.0)?, f(0.0)?);
                let ih = Complex64::new(0.0, h);
                let d1 = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * ih);
                let d2 = (-m2 + 16.0 * m1 - 30.0 * f0 + 16.0 * p1 - p2) / (-12.0 * h * h);
                Ok((d1, d2))
            }
        }
    }

    /// e^{Tz}(f(z) − f_T(z)) without forming either overflowing factor,
    /// for use on contours with Re z ≥ 0.
    pub(crate) fn tail_transform_scaled(&self, z: Complex64, t_upper: f64) -> Result<Complex64> {
        match self {
            Signal::ExpDecay { alpha } => Ok((-alpha * t_upper).exp() / (z + alpha)),
            Signal::Sine { omega } => {
                let (s, c) = (omega * t_upper).sin_cos();
                Ok((z * s + omega * c) / (z * z + omega * omega))
            }
            Signal::Sinc => {
                // ∫_T^∞ (sin t / t) e^{-zt} dt = (E₁((z−i)T) − E₁((z+i)T)) / 2i
                let i = Complex64::new(0.0, 1.0);
                let a = crate::specfn::exp_scaled_e1((z - i) * t_upper)?;
                let b = crate::specfn::exp_scaled_e1((z + i) * t_upper)?;
                let rot_p = Complex64::new(0.0, t_upper).exp();
                let rot_m = Complex64::new(0.0, -t_upper).exp();
                Ok((rot_p * a - rot_m * b) / (2.0 * i))
            }
            Signal::Step(s) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, b, v) in s.segments() {
                    if b <= t_upper {
                        continue;
                    }
                    let a2 = a.max(t_upper);
                    let h = b - a2;
                    acc += v * (-z * (a2 - t_upper)).exp() * h * one_minus_exp_over(z * h);
                }
                Ok(acc)
            }
            Signal::Pnt { .. } | Signal::Custom(_) => {
                // No stable tail route: subtract and rescale. Loses
                // ~e^{T·Re z} in relative accuracy; fine for the looser
                // tolerances these signals carry.
                let f = self.full_transform(z)?;
                let ft = self.truncated_transform(z, t_upper)?;
                Ok((f - ft) * (z * t_upper).exp())
            }
        }
    }

    /// e^{Tz} f_T(z) without forming either factor, for contours with
    /// Re z ≤ 0 where f_T alone grows like e^{T|Re z|}.
    pub(crate) fn truncated_transform_scaled(
        &self,
        z: Complex64,
        t_upper: f64,
    ) -> Result<Complex64> {
        match self {
            Signal::ExpDecay { alpha } => {
                let w = z + alpha;
                if (w * t_upper).norm() < 0.25 {
                    let e = (-alpha * t_upper).exp();
                    Ok(e * t_upper * one_minus_exp_over(-w * t_upper))
                } else {
                    Ok(((z * t_upper).exp() - (-alpha * t_upper).exp()) / w)
                }
            }
            Signal::Sine { omega } => {
                let den = z * z + omega * omega;
                if den.norm() < 1e-300 {
                    return Err(Error::Pole("sine transform pole".into()));
                }
                let (s, c) = (omega * t_upper).sin_cos();
                Ok((omega * (z * t_upper).exp() - (z * s + omega * c)) / den)
            }
            Signal::Step(s) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, b, v) in s.segments() {
                    if a >= t_upper {
                        break;
                    }
                    let c = b.min(t_upper);
                    let h = c - a;
                    acc += v * (z * (t_upper - c)).exp() * h * one_minus_exp_over(-z * h);
                }
                Ok(acc)
            }
            Signal::Pnt { table, .. } => pnt_truncated(table, z, t_upper, Some(t_upper)),
            Signal::Sinc | Signal::Custom(_) => {
                if z.re > 1e-12 {
                    return Err(Error::Domain(
                        "scaled truncated transform is for Re z <= 0".into(),
                    ));
                }
                let freq = z.im.abs() + self.intrinsic_frequency();
                let mut cap = t_upper / 8.0;
                if freq > 0.0 {
                    cap = cap.min(FRAC_PI_2 / freq);
                }
                if z.re != 0.0 {
                    cap = cap.min(3.0 / z.re.abs());
                }
                let opts = QuadOptions { panel_cap: Some(cap), ..QuadOptions::default() };
                integrate_with_breakpoints(
                    |t| self.eval(t) * (z * (t_upper - t)).exp(),
                    0.0,
                    t_upper,
                    &[],
                    &opts,
                )
                .into_value()
            }
        }
    }
}

/// ∫_a^b e^{-zt} dt, entire in z.
fn segment_transform(z: Complex64, a: f64, b: f64) -> Complex64 {
    let h = b - a;
    (-z * a).exp() * h * one_minus_exp_over(z * h)
}

/// ∫_a^b t^k e^{-zt} dt for k = 1, 2; series near z = 0.
fn segment_moment(z: Complex64, a: f64, b: f64, k: u32) -> Complex64 {
    if (z.norm() * b.max(1.0)) < 0.5 {
        // Σ_j (−z)^j (b^{j+k+1} − a^{j+k+1}) / (j! (j+k+1))
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..40u32 {
            if j > 0 {
                term *= -z / j as f64;
            }
            let p = (j + k + 1) as i32;
            let contrib = term * (b.powi(p) - a.powi(p)) / p as f64;
            acc += contrib;
            if contrib.norm() < 1e-18 * (1.0 + acc.norm()) {
                break;
            }
        }
        acc
    } else {
        let ea = (-z * a).exp();
        let eb = (-z * b).exp();
        match k {
            1 => (a * ea - b * eb) / z + (ea - eb) / (z * z),
            2 => {
                (a * a * ea - b * b * eb) / z
                    + 2.0 * (a * ea - b * eb) / (z * z)
                    + 2.0 * (ea - eb) / (z * z * z)
            }
            _ => unreachable!("only first and second moments are needed"),
        }
    }
}

/// Exact Stieltjes-sum evaluation of ∫₀^T b(t)e^{-zt}dt for the
/// prime-power remainder: with v = e^t the integrand is piecewise
/// v^{-z-2} with jumps exactly at the integers.
///
/// `scale_at` = Some(T) multiplies by e^{Tz} term-by-term.
fn pnt_truncated(
    table: &MangoldtTable,
    z: Complex64,
    t_upper: f64,
    scale_at: Option<f64>,
) -> Result<Complex64> {
    let v_max = t_upper.exp();
    if v_max > table.limit() as f64 * (1.0 + 1e-12) {
        return Err(Error::Range { value: t_upper, context: "e^T exceeds the sieve limit" });
    }
    let v_max = v_max.min(table.limit() as f64);
    let n_last = crate::arith::guarded_floor(v_max);
    let w = z + 1.0;

    if z.norm() == 0.0 {
        // Real fast path: Σ c_n (1/a − 1/b).
        let mut c_n = 0.0;
        let mut acc = 0.0;
        let mut comp = 0.0;
        for n in 1..=n_last {
            c_n += table.lambda(n) - 1.0;
            let a = n as f64;
            let b = if n == n_last { v_max } else { (n + 1) as f64 };
            if b <= a {
                continue;
            }
            let term = c_n * (1.0 / a - 1.0 / b);
            let y = term - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        return Ok(Complex64::new(acc, 0.0));
    }

    let scale = scale_at.map(|t| z * t);
    let mut c_n = 0.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=n_last {
        c_n += table.lambda(n) - 1.0;
        if c_n == 0.0 {
            continue;
        }
        let a = n as f64;
        let b = if n == n_last { v_max } else { (n + 1) as f64 };
        if b <= a {
            continue;
        }
        let ln_a = a.ln();
        let ln_ba = (b / a).ln();
        // ∫_a^b v^{-z-2} dv = a^{-w} ln(b/a) φ(w ln(b/a)), φ = (1-e^{-s})/s
        let exponent = match scale {
            Some(tz) => tz - w * ln_a,
            None => -w * ln_a,
        };
        acc += c_n * exponent.exp() * ln_ba * one_minus_exp_over(w * ln_ba);
    }
    Ok(acc)
}

/// A reproducible ±M step signal on [0, t_max] with a uniformly drawn
/// partition.
pub fn random_step_signal<R: Rng + ?Sized>(rng: &mut R, sup: f64, t_max: f64) -> Signal {
    let cuts = rng.gen_range(1..=9usize);
    let mut breaks: Vec<f64> = (0..cuts).map(|_| rng.gen_range(0.0..t_max)).collect();
    breaks.push(0.0);
    breaks.push(t_max);
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    let values: Vec<f64> =
        (0..breaks.len() - 1).map(|_| if rng.gen_bool(0.5) { sup } else { -sup }).collect();
    Signal::step(breaks, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn small_table() -> Arc<MangoldtTable> {
        Arc::new(crate::arith::sieve_mangoldt(100_000).unwrap())
    }

    fn pnt_signal() -> Signal {
        Signal::pnt(small_table(), Arc::new(ZetaEvaluator::new()))
    }

    #[test]
    fn signals_vanish_for_negative_time_and_respect_bound() {
        let signals = [Signal::exp_decay(1.0), Signal::sinc(), Signal::sine(1.0), pnt_signal()];
        for s in &signals {
            assert_eq!(s.eval(-0.5), c(0.0, 0.0));
            let mut t = 0.0;
            while t < 30.0 {
                assert!(s.eval(t).norm() <= s.sup_bound() + 1e-12, "{} at t={t}", s.name());
                t += 0.031;
            }
        }
    }

    #[test]
    fn truncated_exp_decay_closed_form() {
        let s = Signal::exp_decay(1.0);
        for &t in &[0.5, 1.0, 5.0] {
            let v = s.truncated_transform(c(0.0, 0.0), t).unwrap();
            assert_abs_diff_eq!(v.re, 1.0 - (-t).exp(), epsilon = 1e-12);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
        }
        // T = 0 is the empty integral for any signal.
        let zero = s.truncated_transform(c(0.3, 2.0), 0.0).unwrap();
        assert_eq!(zero, c(0.0, 0.0));
        assert!(s.truncated_transform(c(0.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn truncated_sinc_is_sine_integral() {
        // Si(1000) against the two-term asymptotic expansion:
        // Si(x) = π/2 − cos x / x · (1 − 2/x²) − sin x / x² · (1 − 6/x²)
        let x = 1000.0f64;
        let si_oracle = FRAC_PI_2 - x.cos() / x * (1.0 - 2.0 / (x * x))
            - x.sin() / (x * x) * (1.0 - 6.0 / (x * x));
        let v = Signal::sinc().truncated_transform(c(0.0, 0.0), x).unwrap();
        assert_abs_diff_eq!(v.re, si_oracle, epsilon = 1e-8);
        assert!((v.re - FRAC_PI_2).abs() < 0.01);
    }

    #[test]
    fn full_transform_closed_forms() {
        assert_abs_diff_eq!(
            Signal::exp_decay(1.0).full_transform(c(0.0, 0.0)).unwrap().re,
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            Signal::sine(1.0).full_transform(c(0.5, 0.0)).unwrap().re,
            0.8,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            Signal::sinc().full_transform(c(0.0, 0.0)).unwrap().re,
            FRAC_PI_2,
            epsilon = 1e-15
        );
        // Poles and cut guards.
        assert!(Signal::exp_decay(1.0).full_transform(c(-1.0, 0.0)).is_err());
        assert!(Signal::sine(1.0).full_transform(c(0.0, 1.0)).is_err());
        assert!(Signal::sinc().full_transform(c(0.0, 1.0)).is_err());
    }

    #[test]
    fn pnt_transform_consistent_with_arithmetic_route() {
        // Zeta-side continuation vs the exact sieve-side step sum: the gap
        // is the transform tail beyond the table, ~e^{-T} at z = 1.
        let s = pnt_signal();
        let t_max = (100_000.0f64).ln();
        let zeta_side = s.full_transform(c(1.0, 0.0)).unwrap();
        let sieve_side = s.truncated_transform(c(1.0, 0.0), t_max).unwrap();
        assert!((zeta_side - sieve_side).norm() < 1e-4);
    }

    #[test]
    fn transforms_match_defining_quadrature_on_half_plane() {
        // Closed forms vs direct quadrature of ∫ a e^{-zt} dt, Re z ≥ 0.1.
        let signals = [Signal::exp_decay(1.0), Signal::sine(1.0), Signal::sinc()];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let s = &signals[rng.gen_range(0..signals.len())];
            let z = c(rng.gen_range(0.1..2.0), rng.gen_range(-2.0..2.0));
            let closed = s.full_transform(z).unwrap();
            let t_cut = (30.0 / z.re).min(400.0);
            let direct = s.truncated_transform(z, t_cut).unwrap();
            let tail = s.sup_bound() * (-z.re * t_cut).exp() / z.re;
            assert!(
                (closed - direct).norm() <= 1e-6 + tail,
                "{} at z = {z}: {}",
                s.name(),
                (closed - direct).norm()
            );
        }
    }

    #[test]
    fn partial_integrals() {
        // sine: ∫₀^T sin t dt = 1 − cos T.
        let s = Signal::sine(1.0);
        for &t in &[1.0, 10.0, 106.3] {
            let v = s.partial_integral(t).unwrap();
            assert_abs_diff_eq!(v.re, 1.0 - t.cos(), epsilon = 1e-9);
        }
        // exp_decay at the ∞ marker: the improper integral equals f(0).
        let e = Signal::exp_decay(1.0).partial_integral(f64::INFINITY).unwrap();
        assert_abs_diff_eq!(e.re, 1.0, epsilon = 1e-15);
        assert!(Signal::sine(1.0).partial_integral(-2.0).is_err());
    }

    #[test]
    fn pnt_partial_integral_near_minus_two_gamma() {
        let s = pnt_signal();
        let t = (100_000.0f64).ln();
        let v = s.partial_integral(t).unwrap();
        let target = -2.0 * crate::specfn::EULER_GAMMA;
        assert!((v.re - target).abs() < 0.05, "got {} vs {target}", v.re);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn pnt_partial_matches_dirichlet_route_per_jump() {
        // ∫_1^V (ψ(v) − ⌊v⌋)/v² dv = Σ_{n<V} (Λ(n)−1)/n − (ψ(V−1) − (V−1))/V
        // for integer V: checked for the first hundred jumps.
        let table = small_table();
        let s = Signal::pnt(table.clone(), Arc::new(ZetaEvaluator::new()));
        let mut dirichlet = 0.0;
        for v in 2..=100u64 {
            dirichlet += (table.lambda(v - 1) - 1.0) / (v as f64 - 1.0);
            let boundary =
                (table.chebyshev_psi(v as f64 - 1.0).unwrap() - (v as f64 - 1.0)) / v as f64;
            let integral = s.partial_integral((v as f64).ln()).unwrap().re;
            assert_abs_diff_eq!(integral, dirichlet - boundary, epsilon = 1e-10);
        }
    }

    #[test]
    fn quotient_literal_value() {
        // exp_decay(1), x = 1, y = 1: (1/(2+i) − 1/2)/i = −0.2 + 0.1i.
        let q = Signal::exp_decay(1.0).quotient(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(q.re, -0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(q.im, 0.1, epsilon = 1e-15);
    }

    #[test]
    fn quotient_limit_matches_derivative() {
        // y → 0 limit of q equals f′(x); analytic oracles per signal.
        let cases: [(Signal, Box<dyn Fn(f64) -> f64>); 3] = [
            (Signal::exp_decay(1.0), Box::new(|x: f64| -1.0 / ((x + 1.0) * (x + 1.0)))),
            (Signal::sinc(), Box::new(|x: f64| -1.0 / (1.0 + x * x))),
            (Signal::sine(2.0), Box::new(|x: f64| -4.0 * x / ((x * x + 4.0) * (x * x + 4.0)))),
        ];
        for (s, fprime) in &cases {
            for &x in &[0.3, 1.0, 2.5] {
                let q = s.quotient(x, 1e-9).unwrap();
                assert!((q.re - fprime(x)).abs() < 1e-6, "{} at x={x}", s.name());
                // Seam accuracy: the jet extended to a literal-branch point
                // must agree with the literal quotient there.
                let y = 1.1 * QUOTIENT_DELTA;
                let literal = s.quotient(x, y).unwrap();
                let (d1, d2) = s.transform_jet2(x).unwrap();
                let jet = d1 + 0.5 * d2 * Complex64::new(0.0, y);
                assert!((literal - jet).norm() < 1e-6, "{} at x={x}", s.name());
            }
        }
    }

    #[test]
    fn quotient_jet_for_numerically_differentiated_signals() {
        let s = pnt_signal();
        let q_jet = s.quotient(0.5, 1e-4).unwrap();
        let q_lit = s.quotient(0.5, 2e-3).unwrap();
        assert!((q_jet - q_lit).norm() < 1e-3);
    }

    #[test]
    fn quotient_stabilizes_toward_axis() {
        let s = Signal::sinc();
        let q1 = s.quotient(0.1, 0.5).unwrap();
        let q2 = s.quotient(0.01, 0.5).unwrap();
        let q3 = s.quotient(0.001, 0.5).unwrap();
        assert!(q3.norm() < 10.0);
        assert!((q2 - q3).norm() < (q1 - q2).norm());
        assert!((q2 - q3).norm() < 1e-2);
    }

    #[test]
    fn quotient_domain_errors() {
        assert!(Signal::sine(1.0).quotient(0.0, 0.5).is_err());
        assert!(Signal::exp_decay(1.0).quotient(-0.1, 0.5).is_err());
    }

    #[test]
    fn scaled_tail_matches_direct_subtraction() {
        // At moderate T·Re z the naive route is accurate enough to verify
        // the stable one.
        let t = 5.0;
        for (s, tol) in
            [(Signal::exp_decay(1.0), 1e-12), (Signal::sine(1.0), 1e-12), (Signal::sinc(), 1e-9)]
        {
            let z = c(0.3, 0.4);
            let stable = s.tail_transform_scaled(z, t).unwrap();
            let naive = (s.full_transform(z).unwrap() - s.truncated_transform(z, t).unwrap())
                * (z * t).exp();
            assert!((stable - naive).norm() < tol, "{}: {}", s.name(), (stable - naive).norm());
        }
    }

    #[test]
    fn scaled_truncated_matches_direct_product() {
        let t = 6.0;
        let z = c(-0.4, 0.7);
        for s in [
            Signal::exp_decay(1.0),
            Signal::sine(1.0),
            Signal::sinc(),
            Signal::step(vec![0.0, 1.0, 2.5, 7.0], vec![1.0, -1.0, 1.0]),
        ] {
            let stable = s.truncated_transform_scaled(z, t).unwrap();
            let naive = s.truncated_transform(z, t).unwrap() * (z * t).exp();
            assert!((stable - naive).norm() < 1e-10, "{}", s.name());
        }
        // Removable point z = −α of the exp_decay formula.
        let s = Signal::exp_decay(0.4);
        let stable = s.truncated_transform_scaled(c(-0.4, 0.0), t).unwrap();
        let naive = s.truncated_transform(c(-0.4, 0.0), t).unwrap() * (c(-0.4, 0.0) * t).exp();
        assert!((stable - naive).norm() < 1e-12);
    }

    #[test]
    fn step_transform_exactness() {
        let s = Signal::step(vec![0.0, 2.0, 5.0], vec![1.0, -1.0]);
        assert_abs_diff_eq!(s.partial_integral(10.0).unwrap().re, 2.0 - 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.partial_integral(3.0).unwrap().re, 2.0 - 1.0, epsilon = 1e-14);
        // Entire transform: value at a left-half-plane point stays finite.
        let v = s.full_transform(c(-1.0, 2.0)).unwrap();
        assert!(v.norm() < 1e3);
        // Against generic quadrature with breakpoints.
        let z = c(0.7, 1.3);
        let direct = integrate_with_breakpoints(
            |t| s.eval(t) * (-z * t).exp(),
            0.0,
            5.0,
            &[2.0],
            &QuadOptions::default(),
        )
        .into_value()
        .unwrap();
        assert!((s.full_transform(z).unwrap() - direct).norm() < 1e-11);
    }

    #[test]
    fn custom_signal_quadrature_fallback() {
        // a(t) = e^{-t²} with no closed form recorded.
        let s = Signal::Custom(CustomSignal {
            name: "gauss".into(),
            eval: Arc::new(|t: f64| c((-t * t).exp(), 0.0)),
            sup_bound: 1.0,
            transform: None,
            window_b: None,
        });
        // f(1) = ∫₀^∞ e^{-t²-t} dt = e^{1/4} √π/2 · erfc(1/2)
        let v = s.full_transform(c(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 0.545_641_360_728_713_8, epsilon = 1e-8);
        assert!(s.full_transform(c(-0.2, 0.0)).is_err());
    }

    #[test]
    fn random_step_signals_are_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        let s1 = random_step_signal(&mut a, 1.0, 20.0);
        let s2 = random_step_signal(&mut b, 1.0, 20.0);
        for t in [0.1, 3.7, 11.9, 19.99] {
            assert_eq!(s1.eval(t), s2.eval(t));
        }
        assert_eq!(s1.sup_bound(), 1.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// |f_T(z) − f(z)| ≤ M e^{-xT}/x for x = Re z > 0.
        #[test]
        fn tail_bound_right_half_plane(
            x in 0.05f64..1.5,
            y in -2.0f64..2.0,
            t in 0.5f64..12.0,
            seed in 0u64..200,
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let signals = [
                Signal::exp_decay(1.0),
                Signal::sine(1.0),
                random_step_signal(&mut rng, 1.0, 20.0),
            ];
            for s in &signals {
                let z = c(x, y);
                let diff = (s.truncated_transform(z, t).unwrap()
                    - s.full_transform(z).unwrap()).norm();
                let bound = s.sup_bound() * (-x * t).exp() / x;
                prop_assert!(diff <= bound + 1e-9, "{}: {} > {}", s.name(), diff, bound);
            }
        }

        /// |f_T(z)| ≤ (M/|x|) e^{-xT} for x = Re z < 0.
        #[test]
        fn truncated_bound_left_half_plane(
            x in -1.5f64..-0.05,
            y in -2.0f64..2.0,
            t in 0.5f64..12.0,
        ) {
            for s in [Signal::exp_decay(1.0), Signal::sine(1.0)] {
                let v = s.truncated_transform(c(x, y), t).unwrap().norm();
                let bound = s.sup_bound() / x.abs() * (-x * t).exp();
                prop_assert!(v <= bound + 1e-9, "{}: {} > {}", s.name(), v, bound);
            }
        }
    }
}
