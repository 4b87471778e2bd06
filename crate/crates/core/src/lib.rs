//! Kinetic-energy geometry of the Moebius group of the circle.
//!
//! The group of Moebius transformations preserving the unit circle,
//! `z -> u (z + alpha)/(1 + conj(alpha) z)` with `|u| = 1`, `|alpha| < 1`,
//! carries a natural Riemannian metric: the kinetic energy of the unit
//! mass distribution its elements push around the circle. This crate
//! implements that geometry and verifies it numerically:
//!
//! - [`moebius`] — exact arithmetic of the group in normal form;
//! - [`quadrature`] — the uniform circle rule behind every integral;
//! - [`kinetic`] — induced velocity fields, the metric quadratic form,
//!   and Gram matrices of coordinate fields;
//! - [`product`] — the circle x disc model with the disc metric
//!   `2 (dr^2 + r^2 dtheta^2)/(1 - r^2)`, its curvature, and the
//!   identification map between the model and the group;
//! - [`geodesic`] — the geodesic flow, Clairaut first integrals, the
//!   trajectory-equation adjudication, hypocycloid trajectory fits;
//! - [`motion`] — time-sampled motions, their kinetic energy and action,
//!   and the variational force-free test;
//! - [`validation`] — the structured check suites behind the CLI.

// `!(x > 0.0)` guards deliberately treat NaN as out of range, and the
// 3x3 Gram loops read better indexed.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod geodesic;
pub mod kinetic;
pub mod moebius;
pub mod motion;
pub mod product;
pub mod quadrature;
pub mod validation;

pub use error::{Error, Result};
pub use geodesic::{
    clairaut_constant, clairaut_initial_state, clairaut_parameters, geodesic_rhs, hypocycloid_fit,
    integrate, path_csv, trajectory_residual, turning_radius, ClairautParameters, GeodesicPath,
    GeodesicState, HypocycloidFit, TrajectoryFit, TrajectoryForm,
};
pub use kinetic::{
    coordinate_fields, field_csv, gram_matrix, induced_field, inner, norm_squared, InducedField,
    ProductTangent,
};
pub use moebius::{DiscPoint, MoebiusMap, MoebiusMapRecord, UnitComplex};
pub use motion::{
    action, energy_trace, force_free_residual, kinetic_energy, kinetic_energy_lagrangian,
    total_mass, torus_translate, velocity_field, EnergyTrace, SampledMotion,
};
pub use product::{
    christoffel, curvature_numeric, f_inverse, f_map, gaussian_curvature, metric_tensor,
    radial_length, Christoffel, MetricTensor, ProductPoint,
};
pub use quadrature::{QuadratureRule, DEFAULT_NODES};

#[cfg(test)]
mod tests {
    use super::*;

    // everything is immutable after construction and safe to share or
    // move across threads
    #[test]
    fn core_types_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<MoebiusMap>();
        check::<QuadratureRule>();
        check::<InducedField>();
        check::<ProductPoint>();
        check::<GeodesicState>();
        check::<GeodesicPath>();
        check::<SampledMotion>();
        check::<EnergyTrace>();
        check::<Error>();
    }
}
