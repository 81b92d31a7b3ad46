//! Zero sets of phase-space distributions.
//!
//! The crate evaluates closed-form cross-ambiguity kernels, checks them
//! against an independent quadrature oracle for the Wigner distribution,
//! the ambiguity function and the short-time Fourier transform, and
//! locates zeros (or certifies a positive minimum modulus) of these
//! functions on rectangles of the time-frequency plane.
//!
//! Module map:
//!
//! * [`phase_space`]: points, transform kinds, the function catalog and
//!   the exact relations between W, A and V.
//! * [`kernels`]: closed-form ambiguity functions.
//! * [`special`]: complex Gamma and half-integer Macdonald functions.
//! * [`hurwitz`]: exact Hurwitz-matrix stability certificates.
//! * [`oracle`]: adaptive oscillatory quadrature for A, W, V, Bargmann
//!   and Fourier transforms.
//! * [`scan`]: grid zero search and sign-change witnesses.
//! * [`polyanalytic`]: Hermite-window STFTs and polyanalytic polynomials.
//! * [`step`]: step functions against the box window.

pub mod error;
pub mod hurwitz;
pub mod kernels;
pub mod oracle;
pub mod phase_space;
pub mod polyanalytic;
pub mod quad;
pub mod roots;
pub mod scan;
pub mod special;
pub mod step;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use phase_space::{FunctionSpec, PhaseSpacePoint, TransformKind};

/// Double-precision complex value carried by every transform.
pub type ComplexValue = Complex64;

pub(crate) const TAU: f64 = 2.0 * std::f64::consts::PI;
