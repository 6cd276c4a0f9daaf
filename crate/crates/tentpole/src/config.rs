//! Numerical tolerances used across the crate.
//!
//! All thresholds are collected here so that a single configuration value can
//! be threaded through the decomposition pipeline and overridden from the
//! command line. Relative tolerances are scaled at the point of use.

/// Tolerance bundle for the decomposition and certification pipeline.
#[derive(Clone, Debug)]
pub struct Tolerances {
    /// Conjugate-pair projection radius, relative to `1 + |root|`.
    pub pair: f64,
    /// Acceptable root-reconstruction residual, relative to the coefficient
    /// sup-norm of the input polynomial.
    pub roots: f64,
    /// Reconstruction residual for interval decompositions, relative to the
    /// sup-norm of the decomposed polynomial.
    pub sos: f64,
    /// Boundary interpolation accuracy, scaled by `1 + sup-norm`.
    pub interp: f64,
    /// Boundary feasibility slack, scaled by `1 + sup-norm`.
    pub bnd: f64,
    /// Grid dominance slack, relative to the sup-norm.
    pub dom: f64,
    /// How far below zero a value may dip and still count as nonnegative,
    /// relative to the sup-norm.
    pub nonneg: f64,
    /// Vertex compatibility tolerance, scaled by `1 + max vertex magnitude`.
    pub compat: f64,
    /// Certificate verification residual, scaled by `1 + sup-norm`.
    pub cert: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            pair: 1e-7,
            roots: 1e-6,
            sos: 1e-8,
            interp: 1e-8,
            bnd: 1e-8,
            dom: 1e-8,
            nonneg: 1e-9,
            compat: 1e-9,
            cert: 1e-6,
        }
    }
}

impl Tolerances {
    /// Absolute nonnegativity slack for a polynomial of the given sup-norm.
    pub fn nonneg_abs(&self, norm: f64) -> f64 {
        self.nonneg * norm
    }

    /// Absolute boundary slack for a polynomial of the given sup-norm.
    pub fn bnd_abs(&self, norm: f64) -> f64 {
        self.bnd * (1.0 + norm)
    }

    /// Absolute compatibility tolerance for the given vertex magnitude.
    pub fn compat_abs(&self, magnitude: f64) -> f64 {
        self.compat * (1.0 + magnitude)
    }
}
