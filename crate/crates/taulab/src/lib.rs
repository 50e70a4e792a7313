//! Numerical laboratory for complex Tauberian theory.
//!
//! The crate verifies, at desk scale, the quantitative content of the
//! contour-method Tauberian toolkit:
//!
//! * [`arith`] — von Mangoldt sieve, Chebyshev ψ, prime counts, and the
//!   normalized prime-power remainder signal.
//! * [`zeta`] — Euler–Maclaurin evaluation of ζ(w) and ζ′/ζ(w) on a strip,
//!   Stieltjes constants, and the pole-cancelled transform
//!   g(z) = (−ζ′/ζ(z+1) − ζ(z+1)) / (z+1).
//! * [`signals`] — bounded signals a(t) with Laplace transforms f(z),
//!   truncated transforms f_T(z), partial integrals, and the boundary
//!   quotient q(x+iy) = (f(x+iy) − f(x)) / (iy).
//! * [`contour`] — Newman's circle-plus-chord machinery: the kernel
//!   e^{Tz}(1/z + z/R²), the decomposition f_T(0) − f(0) = I₁ + I₂ + I₃,
//!   and the bound |∫₀^T a − f(0)| ≤ 2M/R + |f(0)|/(eRT) + axis term.
//! * [`fourier`] — pseudomeasure/pseudofunction models given by a time-side
//!   pre-image b(t), trapezoidal test functions, modulated pairings, and
//!   boundary pairings at Re z = ε > 0.
//! * [`tauber`] — end-to-end experiments: Tauberian bound sweeps, the PNT
//!   pipeline, Fatou series, and a Wiener–Ikehara style check.
//! * [`cli`] — the `taulab` command-line front end emitting CSV/JSON tables.
//!
//! Every capability has a runnable demo under `examples/`.

pub mod arith;
pub mod cli;
pub mod contour;
pub mod error;
pub mod fourier;
pub mod quad;
pub mod report;
pub mod signals;
pub mod specfn;
pub mod tauber;
pub mod zeta;

pub use error::{Error, Result};
