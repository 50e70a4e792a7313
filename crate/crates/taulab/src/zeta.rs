//! Complex evaluation of ζ(w), ζ′/ζ(w), and the pole-cancelled transform
//!
//! g(z) = (1/(z+1)) · (−ζ′(z+1)/ζ(z+1) − ζ(z+1)).
//!
//! ζ and ζ′ come from one Euler–Maclaurin pass, valid on the strip
//! Re w > −1, |Im w| ≤ 100. The poles of −ζ′/ζ and ζ at w = 1 cancel in g;
//! near z = 0 the composed formula is replaced by a Laurent expansion whose
//! coefficients are derived, by truncated power-series division, from the
//! Stieltjes constants γ₀, γ₁, …  The Stieltjes constants themselves are
//! computed at construction time from the limit definition
//! γ_k = lim_m [Σ_{n≤m} (log n)^k/n − (log m)^{k+1}/(k+1)], accelerated by
//! Euler–Maclaurin, so no expansion coefficient is hand-entered.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Bernoulli numbers B₂, B₄, …, B₂₄ (verified against the defining
/// recurrence in the test suite).
const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Evaluation parameters; the defaults cover every use in this crate with
/// at least ten significant digits.
#[derive(Debug, Clone)]
pub struct ZetaConfig {
    /// Number of directly summed Dirichlet terms in Euler–Maclaurin.
    pub em_terms: usize,
    /// Number of Bernoulli correction terms (≤ 12).
    pub bernoulli_order: usize,
    /// Switch-over radius around w = 1 for the Laurent branch.
    pub laurent_radius: f64,
    /// Number of Stieltjes constants γ₀ … γ_{K−1} to derive.
    pub stieltjes_order: usize,
    /// Half-height of the evaluation strip.
    pub im_cap: f64,
    /// Target accuracy of the Laurent branch at the seam.
    pub seam_tol: f64,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        ZetaConfig {
            em_terms: 64,
            bernoulli_order: 12,
            laurent_radius: 0.25,
            stieltjes_order: 8,
            im_cap: 100.0,
            seam_tol: 1e-8,
        }
    }
}

/// Immutable ζ evaluator; all evaluations are pure.
#[derive(Debug, Clone)]
pub struct ZetaEvaluator {
    cfg: ZetaConfig,
    /// γ₀, γ₁, …, γ_{K−1}.
    stieltjes: Vec<f64>,
    /// Taylor coefficients about w = 1 of −ζ′/ζ(w) − ζ(w).
    g_series: Vec<f64>,
    /// Taylor coefficients about w = 1 of −ζ′/ζ(w) − 1/(w−1).
    logderiv_reg_series: Vec<f64>,
}

impl Default for ZetaEvaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl ZetaEvaluator {
    pub fn new() -> Self {
        Self::with_config(ZetaConfig::default()).expect("default zeta configuration is valid")
    }

    pub fn with_config(cfg: ZetaConfig) -> Result<Self> {
        if cfg.em_terms < 8 {
            return Err(Error::Config("em_terms must be at least 8".into()));
        }
        if cfg.bernoulli_order == 0 || cfg.bernoulli_order > BERNOULLI_EVEN.len() {
            return Err(Error::Config(format!(
                "bernoulli_order must be in 1..={}",
                BERNOULLI_EVEN.len()
            )));
        }
        if !(0.01..=0.5).contains(&cfg.laurent_radius) {
            return Err(Error::Config("laurent_radius must be in [0.01, 0.5]".into()));
        }
        if cfg.stieltjes_order < 4 || cfg.stieltjes_order > 12 {
            return Err(Error::Config("stieltjes_order must be in 4..=12".into()));
        }

        let stieltjes: Vec<f64> =
            (0..cfg.stieltjes_order).map(|k| stieltjes_constant(k, 32, 12)).collect();

        // Power series about w = 1 + u, truncated at degree K:
        //   P(u) = u ζ(1+u)   = 1 + Σ_k (−1)^k γ_k u^{k+1} / k!
        //   Q(u) = u² ζ′(1+u) = −1 + Σ_{k≥1} (−1)^k γ_k k u^{k+1} / k!
        // so that −ζ′/ζ − ζ = −(Q + P²)/(uP) and −ζ′/ζ − 1/u = −(Q + P)/(uP).
        let deg = cfg.stieltjes_order;
        let mut p = vec![0.0; deg + 1];
        let mut q = vec![0.0; deg + 1];
        p[0] = 1.0;
        q[0] = -1.0;
        let mut kfact = 1.0;
        for (k, &g) in stieltjes.iter().enumerate() {
            if k > 0 {
                kfact *= k as f64;
            }
            if k + 1 <= deg {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                p[k + 1] = sign * g / kfact;
                if k >= 1 {
                    q[k + 1] = sign * g * (k as f64) / kfact;
                }
            }
        }

        let p_sq = mul_trunc(&p, &p, deg);
        let r = add(&q, &p_sq);
        if r[0].abs() > 1e-12 {
            return Err(Error::Config(format!(
                "series inconsistency: constant term {} of Q + P^2 should vanish",
                r[0]
            )));
        }
        let g_series = negate(div_trunc(&shift_down(&r), &p));

        let s = add(&q, &p);
        if s[0].abs() > 1e-12 {
            return Err(Error::Config("series inconsistency in Q + P".into()));
        }
        let logderiv_reg_series = negate(div_trunc(&shift_down(&s), &p));

        // The truncated tail at the seam must stay below the target: the
        // coefficients decay like 3^{-k} (nearest singularity of the
        // expanded function is the trivial zero at w = −2).
        let rho = cfg.laurent_radius;
        let last = g_series.last().copied().unwrap_or(0.0).abs();
        let ratio = rho / 2.5;
        let tail_estimate = last * rho.powi(g_series.len() as i32 - 1) * ratio / (1.0 - ratio);
        if tail_estimate > cfg.seam_tol {
            return Err(Error::Config(format!(
                "stieltjes_order {} insufficient for seam tolerance {:e} at radius {} \
                 (tail estimate {:e})",
                cfg.stieltjes_order, cfg.seam_tol, rho, tail_estimate
            )));
        }

        Ok(ZetaEvaluator { cfg, stieltjes, g_series, logderiv_reg_series })
    }

    pub fn config(&self) -> &ZetaConfig {
        &self.cfg
    }

    /// γ₀, γ₁, … as derived at construction.
    pub fn stieltjes(&self) -> &[f64] {
        &self.stieltjes
    }

    pub fn laurent_radius(&self) -> f64 {
        self.cfg.laurent_radius
    }

    fn check_strip(&self, w: Complex64) -> Result<()> {
        if w.re <= -1.0 {
            return Err(Error::Domain(format!("Re w = {} is left of the strip Re w > -1", w.re)));
        }
        if w.im.abs() > self.cfg.im_cap {
            return Err(Error::Domain(format!(
                "|Im w| = {} above the strip cap {}",
                w.im.abs(),
                self.cfg.im_cap
            )));
        }
        Ok(())
    }

    /// Euler–Maclaurin ζ(w) on the strip; errors at the pole w = 1.
    pub fn zeta(&self, w: Complex64) -> Result<Complex64> {
        Ok(self.zeta_and_deriv(w)?.0)
    }

    /// (ζ(w), ζ′(w)) from one Euler–Maclaurin pass; ζ′ is the term-wise
    /// analytic derivative of the same formula, not a finite difference.
    pub fn zeta_and_deriv(&self, w: Complex64) -> Result<(Complex64, Complex64)> {
        self.check_strip(w)?;
        if (w - Complex64::new(1.0, 0.0)).norm() < 1e-14 {
            return Err(Error::Pole("zeta at w = 1".into()));
        }
        Ok(self.zeta_and_deriv_raw(w, self.cfg.em_terms))
    }

    fn zeta_and_deriv_raw(&self, w: Complex64, m: usize) -> (Complex64, Complex64) {
        let mf = m as f64;
        let ln_m = mf.ln();

        let mut s = Complex64::new(1.0, 0.0); // n = 1 term
        let mut ds = Complex64::new(0.0, 0.0);
        for n in 2..m {
            let ln_n = (n as f64).ln();
            let pow = (-w * ln_n).exp();
            s += pow;
            ds -= ln_n * pow;
        }

        let m_pow = (-w * ln_m).exp(); // m^{-w}
        let w1 = w - 1.0;
        let t1 = mf * m_pow / w1;
        let dt1 = t1 * (-ln_m - 1.0 / w1);
        let t2 = 0.5 * m_pow;
        let dt2 = -ln_m * t2;

        let mut corr = Complex64::new(0.0, 0.0);
        let mut dcorr = Complex64::new(0.0, 0.0);
        // Rising product w(w+1)…(w+2j−2) and its derivative, extended two
        // factors at a time.
        let mut rp = w;
        let mut drp = Complex64::new(1.0, 0.0);
        let mut fact = 2.0; // (2j)!
        let mut m_scale = 1.0 / mf; // m^{-2j+1}
        for j in 1..=self.cfg.bernoulli_order {
            let b_over_fact = BERNOULLI_EVEN[j - 1] / fact;
            let scale = m_pow * m_scale;
            corr += b_over_fact * rp * scale;
            dcorr += b_over_fact * (drp - rp * ln_m) * scale;
            // Prepare factors (w + 2j - 1), (w + 2j) for the next order.
            let f1 = w + (2 * j - 1) as f64;
            drp = drp * f1 + rp;
            rp *= f1;
            let f2 = w + (2 * j) as f64;
            drp = drp * f2 + rp;
            rp *= f2;
            fact *= (2 * j + 1) as f64 * (2 * j + 2) as f64;
            m_scale /= mf * mf;
        }

        (s + t1 + t2 + corr, ds + dt1 + dt2 + dcorr)
    }

    /// ζ′(w)/ζ(w).  Refuses the neighborhood |w − 1| < laurent_radius
    /// (use [`ZetaEvaluator::neg_log_deriv_minus_pole`] there) and points
    /// too close to a zeta zero.
    pub fn log_deriv(&self, w: Complex64) -> Result<Complex64> {
        if (w - Complex64::new(1.0, 0.0)).norm() < self.cfg.laurent_radius {
            return Err(Error::NearSingularity(format!(
                "w = {w} within laurent radius of the pole at 1"
            )));
        }
        let (z, dz) = self.zeta_and_deriv(w)?;
        if z.norm() < 1e-8 {
            return Err(Error::Domain(format!("w = {w} too close to a zeta zero")));
        }
        Ok(dz / z)
    }

    /// −ζ′/ζ(w) − 1/(w−1): the logarithmic derivative with its simple pole
    /// removed, finite and smooth through w = 1.
    pub fn neg_log_deriv_minus_pole(&self, w: Complex64) -> Result<Complex64> {
        let u = w - Complex64::new(1.0, 0.0);
        if u.norm() < self.cfg.laurent_radius {
            self.check_strip(w)?;
            return Ok(eval_series(&self.logderiv_reg_series, u));
        }
        let ld = self.log_deriv(w)?;
        Ok(-ld - 1.0 / u)
    }

    /// The transform g(z) = (−ζ′/ζ(z+1) − ζ(z+1)) / (z+1).
    ///
    /// For |z| ≥ laurent_radius this is the composed formula; inside, the
    /// truncated expansion built from the Stieltjes constants, so the value
    /// is finite and smooth through z = 0 where the two poles cancel.
    pub fn pnt_transform(&self, z: Complex64) -> Result<Complex64> {
        let zp1 = z + Complex64::new(1.0, 0.0);
        if zp1.norm() < 1e-12 {
            return Err(Error::Pole("transform at z = -1".into()));
        }
        if z.norm() < self.cfg.laurent_radius {
            self.check_strip(zp1)?;
            return Ok(eval_series(&self.g_series, z) / zp1);
        }
        let (zeta, dzeta) = self.zeta_and_deriv(zp1)?;
        if zeta.norm() < 1e-8 {
            return Err(Error::Domain(format!("z = {z} too close to a zeta zero")));
        }
        Ok((-dzeta / zeta - zeta) / zp1)
    }

    /// Gap between the configured evaluation and one with twice the direct
    /// terms; a consistency probe for the analytic continuation.
    pub fn continuation_gap(&self, w: Complex64) -> Result<f64> {
        self.check_strip(w)?;
        if (w - Complex64::new(1.0, 0.0)).norm() < 1e-14 {
            return Err(Error::Pole("zeta at w = 1".into()));
        }
        let a = self.zeta_and_deriv_raw(w, self.cfg.em_terms).0;
        let b = self.zeta_and_deriv_raw(w, 2 * self.cfg.em_terms).0;
        Ok((a - b).norm())
    }

    #[cfg(test)]
    pub(crate) fn g_series_coeffs(&self) -> &[f64] {
        &self.g_series
    }
}

fn eval_series(coeffs: &[f64], u: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * u + c;
    }
    acc
}

fn mul_trunc(a: &[f64], b: &[f64], deg: usize) -> Vec<f64> {
    let mut out = vec![0.0; deg + 1];
    for (i, &x) in a.iter().enumerate() {
        if i > deg {
            break;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j > deg {
                break;
            }
            out[i + j] += x * y;
        }
    }
    out
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0.0) + b.get(i).copied().unwrap_or(0.0))
        .collect()
}

fn negate(a: Vec<f64>) -> Vec<f64> {
    a.into_iter().map(|x| -x).collect()
}

/// Drops the vanishing constant term: [0, a₁, a₂, …] → [a₁, a₂, …].
fn shift_down(a: &[f64]) -> Vec<f64> {
    a[1..].to_vec()
}

/// Coefficients of a/b as formal power series, truncated to a.len().
fn div_trunc(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut out = vec![0.0; n];
    for i in 0..n {
        let mut acc = a[i];
        for j in 1..=i {
            if j < b.len() {
                acc -= b[j] * out[i - j];
            }
        }
        out[i] = acc / b[0];
    }
    out
}

/// γ_k by Euler–Maclaurin acceleration of the limit definition.
///
/// With f(x) = (log x)^k / x,
/// γ_k = Σ_{n≤m} f(n) − (log m)^{k+1}/(k+1) − f(m)/2
///       − Σ_{j=1}^{J} B_{2j}/(2j)! · f^{(2j−1)}(m).
/// Derivatives of f are carried symbolically as coefficient vectors over
/// the basis (log x)^j / x^{i+1}.
fn stieltjes_constant(k: usize, m: usize, j_max: usize) -> f64 {
    let mf = m as f64;
    let ln_m = mf.ln();

    // Compensated sum of f(n) for n ≤ m.
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 1..=m {
        let ln_n = (n as f64).ln();
        let f = ln_n.powi(k as i32) / n as f64;
        let y = f - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    let f_m = ln_m.powi(k as i32) / mf;
    let mut gamma = sum - ln_m.powi(k as i32 + 1) / (k as f64 + 1.0) - 0.5 * f_m;

    // a[j] holds the coefficient of (log x)^j / x^{i+1} in f^{(i)}.
    let mut a = vec![0.0; k + 1];
    a[k] = 1.0;
    let mut fact = 1.0; // becomes (2j)! at the point of use
    let mut j = 1usize;
    for i in 1..=(2 * j_max - 1) {
        let mut next = vec![0.0; k + 1];
        for (idx, slot) in next.iter_mut().enumerate() {
            let carry = if idx + 1 <= k { (idx as f64 + 1.0) * a[idx + 1] } else { 0.0 };
            *slot = carry - (i as f64) * a[idx];
        }
        a = next;
        if i == 2 * j - 1 {
            fact *= (2 * j - 1) as f64 * (2 * j) as f64;
            let mut deriv = 0.0;
            for (idx, &cf) in a.iter().enumerate() {
                deriv += cf * ln_m.powi(idx as i32);
            }
            deriv /= mf.powi(i as i32 + 1);
            gamma -= BERNOULLI_EVEN[j - 1] / fact * deriv;
            j += 1;
        }
    }
    gamma
}
