//! The model space: circle x disc with the product metric.
//!
//! The disc factor carries `ds^2 = 2 (dr^2 + r^2 dtheta^2) / (1 - r^2)`,
//! the circle factor has length `2*pi`. The map
//! `F(t, rho, theta) = e^{it} T_{rho e^{i theta}}` identifies this product
//! isometrically with the Moebius group under the kinetic-energy metric,
//! which is what the Gram-matrix checks in [`crate::kinetic`] verify.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moebius::{DiscPoint, MoebiusMap, UnitComplex};

const TAU: f64 = std::f64::consts::TAU;

/// A point `(t, rho, theta)` of the circle x disc model, angles reduced
/// mod `2*pi`, `0 <= rho < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductPoint {
    t: f64,
    rho: f64,
    theta: f64,
}

impl ProductPoint {
    pub fn new(t: f64, rho: f64, theta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::ParameterOutOfRange {
                name: "rho",
                value: rho,
            });
        }
        if !t.is_finite() || !theta.is_finite() {
            return Err(Error::ParameterOutOfRange {
                name: "angle",
                value: if t.is_finite() { theta } else { t },
            });
        }
        Ok(Self {
            t: t.rem_euclid(TAU),
            rho,
            theta: theta.rem_euclid(TAU),
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Diagonal entries of the product metric at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor {
    pub g_tt: f64,
    pub g_rr: f64,
    pub g_thth: f64,
}

/// Radial metric coefficient `E(rho) = 2 / (1 - rho^2)`.
pub(crate) fn e_coeff(rho: f64) -> f64 {
    2.0 / (1.0 - rho * rho)
}

/// Angular metric coefficient `G(rho) = 2 rho^2 / (1 - rho^2)`.
pub(crate) fn g_coeff(rho: f64) -> f64 {
    2.0 * rho * rho / (1.0 - rho * rho)
}

/// Common derivative `E'(rho) = G'(rho) = 4 rho / (1 - rho^2)^2`.
pub(crate) fn eg_coeff_prime(rho: f64) -> f64 {
    let w = 1.0 - rho * rho;
    4.0 * rho / (w * w)
}

/// The metric tensor `diag(1, E(rho), G(rho))`. Valid at `rho = 0`,
/// where `g_thth = 0` reflects the polar degeneracy.
pub fn metric_tensor(p: &ProductPoint) -> MetricTensor {
    MetricTensor {
        g_tt: 1.0,
        g_rr: e_coeff(p.rho),
        g_thth: g_coeff(p.rho),
    }
}

/// The nonzero Christoffel symbols of the disc factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel {
    /// `Γ^rho_{rho rho} = E'/(2E) = rho/(1-rho^2)`
    pub rho_rho_rho: f64,
    /// `Γ^rho_{theta theta} = -G'/(2E) = -rho/(1-rho^2)`
    pub rho_theta_theta: f64,
    /// `Γ^theta_{rho theta} = G'/(2G) = 1/(rho (1-rho^2))`
    pub theta_rho_theta: f64,
}

/// Christoffel symbols in the polar chart; rejects `rho = 0`.
pub fn christoffel(p: &ProductPoint) -> Result<Christoffel> {
    let rho = p.rho;
    if rho == 0.0 {
        return Err(Error::DegenerateChart);
    }
    let e = e_coeff(rho);
    let g = g_coeff(rho);
    let dp = eg_coeff_prime(rho);
    Ok(Christoffel {
        rho_rho_rho: dp / (2.0 * e),
        rho_theta_theta: -dp / (2.0 * e),
        theta_rho_theta: dp / (2.0 * g),
    })
}

/// Gaussian curvature of the disc factor, `K(rho) = -1/(1 - rho^2)`.
/// Unbounded below as `rho -> 1`.
pub fn gaussian_curvature(rho: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&rho));
    -1.0 / (1.0 - rho * rho)
}

/// Gaussian curvature by the rotational-metric form
/// `K = -(1/(2 sqrt(EG))) d/drho (G'/sqrt(EG))`, the displayed radial
/// derivative taken by a central difference of the closed-form
/// coefficient data. Agrees with [`gaussian_curvature`] to `O(h^2)`;
/// the truncation constant grows like `(1-rho^2)^{-3}`, so accuracy
/// degrades toward the boundary.
pub fn curvature_numeric(rho: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || h >= rho / 2.0 || rho + 2.0 * h >= 1.0 {
        return Err(Error::StepTooLarge { step: h, rho });
    }
    let phi = |r: f64| eg_coeff_prime(r) / (e_coeff(r) * g_coeff(r)).sqrt();
    let outer = (phi(rho + h) - phi(rho - h)) / (2.0 * h);
    Ok(-outer / (2.0 * (e_coeff(rho) * g_coeff(rho)).sqrt()))
}

/// Length of the radial segment `[r0, r1]`:
/// `∫ sqrt(2/(1-r^2)) dr = sqrt(2) (asin r1 - asin r0)`.
///
/// The limit `r1 -> 1` is `pi/sqrt(2)`, finite: the metric is incomplete.
pub fn radial_length(r0: f64, r1: f64) -> f64 {
    debug_assert!(0.0 <= r0 && r0 <= r1 && r1 < 1.0);
    std::f64::consts::SQRT_2 * (r1.asin() - r0.asin())
}

/// The isometry `F(t, rho, theta) = (e^{it}, rho e^{i theta})` from the
/// product model to the group.
pub fn f_map(p: &ProductPoint) -> MoebiusMap {
    MoebiusMap::new(
        UnitComplex::from_angle(p.t),
        DiscPoint::new(Complex64::from_polar(p.rho, p.theta))
            .expect("rho < 1 by the point invariant"),
    )
}

/// Inverse of [`f_map`]; `theta = 0` by convention when `rho = 0`.
pub fn f_inverse(g: &MoebiusMap) -> ProductPoint {
    ProductPoint::new(g.u().angle(), g.alpha().radius(), g.alpha().angle())
        .expect("normal form is always representable")
}
