//! Uniform quadrature on the unit circle.
//!
//! All circle integrals in this crate are computed with the periodic
//! trapezoid rule: the n-th roots of unity as nodes, equal weights
//! `2*pi/n`. For the smooth integrands that appear here the rule is
//! spectrally accurate, so the closed-form metric coefficients are
//! reproduced to near machine precision away from the disc boundary.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default node count used by the CLI and the validation suites.
pub const DEFAULT_NODES: usize = 256;

/// The n-th roots of unity with equal weights `2*pi/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<Complex64>,
}

impl QuadratureRule {
    /// Requires `n >= 8` and even.
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::BadQuadrature { n });
        }
        let nodes = (0..n)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        Ok(Self { nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    /// Weight per node, `2*pi/n`.
    pub fn node_weight(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.len() as f64
    }

    /// Normalized integral `(1/2pi) ∮ f dm`, i.e. the plain node average.
    pub fn mean(&self, mut f: impl FnMut(Complex64) -> f64) -> f64 {
        self.nodes.iter().map(|&z| f(z)).sum::<f64>() / self.len() as f64
    }

    /// Full integral `∮ f dm = (2pi/n) Σ f(z_k)`.
    pub fn integral(&self, f: impl FnMut(Complex64) -> f64) -> f64 {
        self.mean(f) * 2.0 * std::f64::consts::PI
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::new(DEFAULT_NODES).expect("default node count is valid")
    }
}
