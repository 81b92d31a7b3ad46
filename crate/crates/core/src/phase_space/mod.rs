//! Phase-space points, transform kinds, evaluation grids, the function
//! catalog and the algebraic relations between W, A and V.

mod relations;
mod spec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use relations::{
    convert_value, convolution_identity_check, fourier_covariance_check, fourier_covariance_with,
    polarization_check, shift_covariance_check, symplectic_form, Conversion,
};
pub use spec::FunctionSpec;

/// A point z = (x, ξ) of the time-frequency plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpacePoint {
    pub x: f64,
    pub xi: f64,
}

impl PhaseSpacePoint {
    pub fn new(x: f64, xi: f64) -> Result<Self> {
        if !(x.is_finite() && xi.is_finite()) {
            return Err(Error::Invalid(format!("phase-space point ({x}, {xi}) is not finite")));
        }
        Ok(Self { x, xi })
    }

    pub(crate) const fn raw(x: f64, xi: f64) -> Self {
        Self { x, xi }
    }

    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.xi * self.xi
    }
}

impl std::ops::Sub for PhaseSpacePoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { x: self.x - o.x, xi: self.xi - o.xi }
    }
}

impl std::ops::Add for PhaseSpacePoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { x: self.x + o.x, xi: self.xi + o.xi }
    }
}

impl std::ops::Mul<f64> for PhaseSpacePoint {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self { x: self.x * s, xi: self.xi * s }
    }
}

/// Which of the three quadratic/sesquilinear representations a value
/// belongs to. `Stft` denotes V_g f with the pair ordered as (f, g).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    Wigner,
    Ambiguity,
    Stft,
}

impl TransformKind {
    pub const ALL: [TransformKind; 3] = [TransformKind::Wigner, TransformKind::Ambiguity, TransformKind::Stft];
}

/// A rectangular grid of nx × nxi points including the corners.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_range: (f64, f64),
    pub xi_range: (f64, f64),
    pub nx: usize,
    pub nxi: usize,
}

impl GridSpec {
    pub fn new(x_range: (f64, f64), xi_range: (f64, f64), nx: usize, nxi: usize) -> Result<Self> {
        let g = Self { x_range, xi_range, nx, nxi };
        g.validate()?;
        Ok(g)
    }

    /// The square [−r, r]² with n points per side.
    pub fn square(r: f64, n: usize) -> Result<Self> {
        Self::new((-r, r), (-r, r), n, n)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_range.0, self.x_range.1, self.xi_range.0, self.xi_range.1]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::Invalid("grid ranges must be finite".into()));
        }
        if self.nx < 2 || self.nxi < 2 {
            return Err(Error::Invalid(format!("grid needs at least 2 points per axis, got {}x{}", self.nx, self.nxi)));
        }
        if self.x_range.1 < self.x_range.0 || self.xi_range.1 < self.xi_range.0 {
            return Err(Error::Invalid("grid ranges must be ordered low to high".into()));
        }
        Ok(())
    }

    pub fn x_at(&self, i: usize) -> f64 {
        lerp(self.x_range, i, self.nx)
    }

    pub fn xi_at(&self, j: usize) -> f64 {
        lerp(self.xi_range, j, self.nxi)
    }

    pub fn point(&self, i: usize, j: usize) -> PhaseSpacePoint {
        PhaseSpacePoint::raw(self.x_at(i), self.xi_at(j))
    }

    pub fn len(&self) -> usize {
        self.nx * self.nxi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All points, ξ-major (row j holds fixed ξ, increasing x).
    pub fn points(&self) -> impl Iterator<Item = PhaseSpacePoint> + '_ {
        (0..self.nxi).flat_map(move |j| (0..self.nx).map(move |i| self.point(i, j)))
    }

    pub fn cell_width(&self) -> (f64, f64) {
        (
            (self.x_range.1 - self.x_range.0) / (self.nx - 1) as f64,
            (self.xi_range.1 - self.xi_range.0) / (self.nxi - 1) as f64,
        )
    }
}

fn lerp(range: (f64, f64), i: usize, n: usize) -> f64 {
    if i + 1 == n {
        range.1
    } else {
        range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_corners() {
        let g = GridSpec::new((-3.0, 3.0), (0.0, 1.0), 7, 3).unwrap();
        assert_eq!(g.x_at(0), -3.0);
        assert_eq!(g.x_at(6), 3.0);
        assert_eq!(g.x_at(3), 0.0);
        assert_eq!(g.xi_at(1), 0.5);
        assert_eq!(g.points().count(), 21);
    }

    #[test]
    fn degenerate_grids_rejected() {
        assert!(GridSpec::new((0.0, 1.0), (0.0, 1.0), 1, 5).is_err());
        assert!(GridSpec::new((0.0, f64::NAN), (0.0, 1.0), 3, 5).is_err());
        assert!(PhaseSpacePoint::new(f64::INFINITY, 0.0).is_err());
    }
}
