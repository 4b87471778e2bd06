//! The kinetic-energy Riemannian metric on the Moebius group.
//!
//! A tangent vector at a group element induces a velocity field on the
//! circle; its squared norm is the mean squared particle speed,
//! `(1/2pi) ∮ |X(q)|^2 dm(q)`. Sampling the induced fields on a
//! [`QuadratureRule`] turns the metric, and the Gram matrix of the
//! coordinate fields, into plain averages over the nodes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moebius::MoebiusMap;
use crate::quadrature::QuadratureRule;

/// Tangent triple `(dt, drho, dtheta)` in the circle x disc coordinates
/// `(t, rho, theta) -> (e^{it}, rho e^{i theta})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductTangent {
    pub dt: f64,
    pub drho: f64,
    pub dtheta: f64,
}

impl ProductTangent {
    pub fn new(dt: f64, drho: f64, dtheta: f64) -> Self {
        Self { dt, drho, dtheta }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.dt.is_finite() && self.drho.is_finite() && self.dtheta.is_finite()
    }
}

/// A velocity field on the circle sampled at quadrature nodes.
///
/// `values[k]` is a tangent vector to the circle, represented in the
/// ambient plane, attached at `base_points[k]` (the image of the k-th
/// node under the group element). Tangency means `Re(value * conj(base))`
/// vanishes at every node.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedField {
    values: Vec<Complex64>,
    base_points: Vec<Complex64>,
}

impl InducedField {
    pub fn new(values: Vec<Complex64>, base_points: Vec<Complex64>) -> Result<Self> {
        if values.len() != base_points.len() {
            return Err(Error::NodeMismatch {
                left: values.len(),
                right: base_points.len(),
            });
        }
        Ok(Self {
            values,
            base_points,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn base_points(&self) -> &[Complex64] {
        &self.base_points
    }

    /// Max over nodes of `|Re(value * conj(base))|`; zero for a field
    /// tangent to the circle.
    pub fn max_tangency_defect(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.base_points)
            .map(|(v, b)| (v * b.conj()).re.abs())
            .fold(0.0, f64::max)
    }
}

/// The three coordinate fields at the base point `(1, r)` of the circle
/// x disc model, in closed form:
///
/// ```text
/// X(z) = i (z + r) / (1 + r z)                  (circle factor)
/// Y(z) = (1 - z^2) / (1 + r z)^2                (radial)
/// Z(z) = r i (1 + 2 r z + z^2) / (1 + r z)^2    (angular)
/// ```
///
/// sampled on the quadrature nodes, attached at `T_r(z)`.
pub fn coordinate_fields(
    r: f64,
    quad: &QuadratureRule,
) -> Result<(InducedField, InducedField, InducedField)> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "r",
            value: r,
        });
    }
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let n = quad.len();
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    let mut base = Vec::with_capacity(n);
    for &z in quad.nodes() {
        let den = one + r * z;
        base.push((z + r) / den);
        x.push(i * (z + r) / den);
        y.push((one - z * z) / (den * den));
        w.push(r * i * (one + 2.0 * r * z + z * z) / (den * den));
    }
    Ok((
        InducedField::new(x, base.clone())?,
        InducedField::new(y, base.clone())?,
        InducedField::new(w, base)?,
    ))
}

/// The velocity field induced on the circle by moving the group element
/// `g = (e^{it}, rho e^{i theta})` with coordinate velocity `v`.
///
/// Differentiating `z -> u (z + alpha)/(1 + conj(alpha) z)` in `u` and
/// `alpha` gives, with `da = (drho + i rho dtheta) e^{i theta}`,
///
/// ```text
/// X(z) = i dt * g(z) + u [ da (1 + conj(a) z) - z (z + a) conj(da) ] / (1 + conj(a) z)^2
/// ```
pub fn induced_field(g: &MoebiusMap, v: ProductTangent, quad: &QuadratureRule) -> InducedField {
    assert!(v.is_finite(), "tangent components must be finite");
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let u = g.u().value();
    let a = g.alpha().value();
    let rho = g.alpha().radius();
    let theta = g.alpha().angle();
    let da = Complex64::new(v.drho, rho * v.dtheta) * Complex64::from_polar(1.0, theta);

    let n = quad.len();
    let mut values = Vec::with_capacity(n);
    let mut base = Vec::with_capacity(n);
    for &z in quad.nodes() {
        let den = one + a.conj() * z;
        let gz = u * (z + a) / den;
        let alpha_part = u * (da * den - z * (z + a) * da.conj()) / (den * den);
        values.push(i * v.dt * gz + alpha_part);
        base.push(gz);
    }
    InducedField::new(values, base).expect("lengths match by construction")
}

/// Squared metric norm `(1/n) Σ |X(z_k)|^2`, the node average of the
/// squared particle speeds.
pub fn norm_squared(field: &InducedField, quad: &QuadratureRule) -> f64 {
    debug_assert_eq!(field.len(), quad.len(), "field not sampled on this rule");
    field.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / field.len() as f64
}

/// Metric inner product `(1/n) Σ Re(f1(z_k) conj(f2(z_k)))`.
pub fn inner(f1: &InducedField, f2: &InducedField, quad: &QuadratureRule) -> Result<f64> {
    if f1.len() != f2.len() || f1.len() != quad.len() {
        return Err(Error::NodeMismatch {
            left: f1.len(),
            right: f2.len().min(quad.len()),
        });
    }
    Ok(f1
        .values
        .iter()
        .zip(&f2.values)
        .map(|(a, b)| (a * b.conj()).re)
        .sum::<f64>()
        / f1.len() as f64)
}

/// Gram matrix of the three induced coordinate fields at `g`, ordered
/// `(t, rho, theta)`. Requires `|alpha| > 0` so the polar chart is
/// defined.
pub fn gram_matrix(g: &MoebiusMap, quad: &QuadratureRule) -> Result<[[f64; 3]; 3]> {
    if g.alpha().radius() == 0.0 {
        return Err(Error::DegenerateChart);
    }
    let fields = [
        induced_field(g, ProductTangent::new(1.0, 0.0, 0.0), quad),
        induced_field(g, ProductTangent::new(0.0, 1.0, 0.0), quad),
        induced_field(g, ProductTangent::new(0.0, 0.0, 1.0), quad),
    ];
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v = inner(&fields[i], &fields[j], quad)?;
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    Ok(m)
}

/// CSV export of a sampled field: `node,z_re,z_im,field_re,field_im`
/// with the node taken from the quadrature rule.
pub fn field_csv(field: &InducedField, quad: &QuadratureRule) -> String {
    let mut out = String::from("# moebius-kinetics field v1\nnode,z_re,z_im,field_re,field_im\n");
    for (k, (z, v)) in quad.nodes().iter().zip(field.values()).enumerate() {
        out.push_str(&format!(
            "{k},{},{},{},{}\n",
            z.re, z.im, v.re, v.im
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::{DiscPoint, UnitComplex};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn quad() -> QuadratureRule {
        QuadratureRule::new(256).unwrap()
    }

    fn map_at(t: f64, rho: f64, theta: f64) -> MoebiusMap {
        MoebiusMap::new(
            UnitComplex::from_angle(t),
            DiscPoint::new(Complex64::from_polar(rho, theta)).unwrap(),
        )
    }

    #[test]
    fn coordinate_fields_reject_bad_r() {
        assert!(coordinate_fields(0.0, &quad()).is_err());
        assert!(coordinate_fields(1.0, &quad()).is_err());
        assert!(coordinate_fields(-0.2, &quad()).is_err());
    }

    #[test]
    fn angular_field_vanishes_as_r_to_zero() {
        let q = quad();
        let (_, _, z) = coordinate_fields(1e-9, &q).unwrap();
        assert!(norm_squared(&z, &q) < 1e-17);
    }

    #[test]
    fn circle_field_at_one() {
        // T_r fixes 1, and X(z) = i T_r(z), so X(1) = i.
        let q = QuadratureRule::new(8).unwrap();
        let (x, _, _) = coordinate_fields(0.5, &q).unwrap();
        let v = x.values()[0]; // first node is z = 1
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn radial_field_at_i() {
        // Y(i) = (1 - i^2)/(1 + 0.5 i)^2 = 2/(0.75 + i) = 0.96 - 1.28 i
        let q = QuadratureRule::new(256).unwrap();
        let (_, y, _) = coordinate_fields(0.5, &q).unwrap();
        let v = y.values()[64]; // node 64 of 256 is z = i
        assert_abs_diff_eq!(v.re, 0.96, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, -1.28, epsilon = 1e-14);
    }

    #[test]
    fn induced_field_zero_velocity() {
        let q = quad();
        let f = induced_field(&map_at(0.3, 0.5, 1.0), ProductTangent::zero(), &q);
        assert!(norm_squared(&f, &q) == 0.0);
    }

    #[test]
    fn induced_field_matches_closed_forms_at_base_point() {
        let q = quad();
        let r = 0.37;
        let g = map_at(0.0, r, 0.0);
        let (x, y, z) = coordinate_fields(r, &q).unwrap();
        let fx = induced_field(&g, ProductTangent::new(1.0, 0.0, 0.0), &q);
        let fy = induced_field(&g, ProductTangent::new(0.0, 1.0, 0.0), &q);
        let fz = induced_field(&g, ProductTangent::new(0.0, 0.0, 1.0), &q);
        for k in 0..q.len() {
            assert!((x.values()[k] - fx.values()[k]).norm() < 1e-14);
            assert!((y.values()[k] - fy.values()[k]).norm() < 1e-14);
            assert!((z.values()[k] - fz.values()[k]).norm() < 1e-14);
        }
    }

    #[test]
    fn induced_field_matches_finite_difference() {
        // d/ds of apply along the coordinate curve through a generic element
        let q = QuadratureRule::new(64).unwrap();
        let (t0, rho0, theta0) = (0.8, 0.45, 2.1);
        let g = map_at(t0, rho0, theta0);
        let v = ProductTangent::new(0.7, -0.4, 1.3);
        let f = induced_field(&g, v, &q);
        let h = 1e-6;
        let at = |s: f64, z: Complex64| {
            let gs = map_at(t0 + s * v.dt, rho0 + s * v.drho, theta0 + s * v.dtheta);
            gs.apply_complex(z)
        };
        for (k, &z) in q.nodes().iter().enumerate() {
            let fd = (at(h, z) - at(-h, z)) / (2.0 * h);
            assert!(
                (fd - f.values()[k]).norm() < 1e-8,
                "node {k}: fd {fd} vs analytic {}",
                f.values()[k]
            );
        }
    }

    #[test]
    fn tangency_invariant() {
        let q = quad();
        let f = induced_field(&map_at(1.5, 0.72, -0.9), ProductTangent::new(0.3, 1.1, -0.8), &q);
        assert!(f.max_tangency_defect() < 1e-10);
    }

    #[test]
    fn circle_field_has_unit_norm_any_r() {
        let q = quad();
        for r in [0.1, 0.5, 0.9] {
            let (x, _, _) = coordinate_fields(r, &q).unwrap();
            assert_abs_diff_eq!(norm_squared(&x, &q), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn radial_field_norm_at_half() {
        let q = quad();
        let (_, y, _) = coordinate_fields(0.5, &q).unwrap();
        assert_abs_diff_eq!(norm_squared(&y, &q), 8.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn inner_of_field_with_itself_is_norm() {
        let q = quad();
        let (_, y, _) = coordinate_fields(0.33, &q).unwrap();
        assert_abs_diff_eq!(
            inner(&y, &y, &q).unwrap(),
            norm_squared(&y, &q),
            epsilon = 1e-15
        );
    }

    #[test]
    fn coordinate_fields_are_orthogonal() {
        let q = quad();
        let (x, y, z) = coordinate_fields(0.5, &q).unwrap();
        assert_abs_diff_eq!(inner(&x, &y, &q).unwrap(), 0.0, epsilon = 1e-12);
        let (_, y7, z7) = coordinate_fields(0.7, &q).unwrap();
        assert_abs_diff_eq!(inner(&y7, &z7, &q).unwrap(), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(inner(&x, &z, &q).unwrap(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn polarization_identity() {
        let q = quad();
        let (_, y, z) = coordinate_fields(0.61, &q).unwrap();
        let plus: Vec<Complex64> = y.values().iter().zip(z.values()).map(|(a, b)| a + b).collect();
        let minus: Vec<Complex64> = y.values().iter().zip(z.values()).map(|(a, b)| a - b).collect();
        let fp = InducedField::new(plus, y.base_points().to_vec()).unwrap();
        let fm = InducedField::new(minus, y.base_points().to_vec()).unwrap();
        let pol = (norm_squared(&fp, &q) - norm_squared(&fm, &q)) / 4.0;
        assert_abs_diff_eq!(pol, inner(&y, &z, &q).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn inner_rejects_mismatched_rules() {
        let q1 = QuadratureRule::new(64).unwrap();
        let q2 = QuadratureRule::new(128).unwrap();
        let (x1, _, _) = coordinate_fields(0.5, &q1).unwrap();
        let (x2, _, _) = coordinate_fields(0.5, &q2).unwrap();
        assert!(inner(&x1, &x2, &q1).is_err());
    }

    #[test]
    fn gram_matrix_at_base_point() {
        let q = quad();
        let m = gram_matrix(&map_at(0.0, 0.5, 0.0), &q).unwrap();
        let target = [[1.0, 0.0, 0.0], [0.0, 8.0 / 3.0, 0.0], [0.0, 0.0, 2.0 / 3.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(m[i][j], target[i][j], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn gram_matrix_is_torus_invariant() {
        let q = quad();
        let base = gram_matrix(&map_at(0.0, 0.5, 0.0), &q).unwrap();
        for (phi, theta) in [(1.0, 0.7), (2.9, -2.0), (4.5, 3.0)] {
            let m = gram_matrix(&map_at(phi, 0.5, theta), &q).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    assert_abs_diff_eq!(m[i][j], base[i][j], epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn angular_to_radial_norm_ratio_is_rho_squared() {
        let q = quad();
        for rho in [0.2, 0.45, 0.8] {
            let m = gram_matrix(&map_at(0.3, rho, 1.0), &q).unwrap();
            assert_abs_diff_eq!(m[2][2] / m[1][1], rho * rho, epsilon = 1e-12);
        }
    }

    #[test]
    fn gram_matrix_rejects_origin() {
        let q = quad();
        assert_eq!(
            gram_matrix(&MoebiusMap::identity(), &q),
            Err(Error::DegenerateChart)
        );
    }

    #[test]
    fn gram_truncation_near_the_boundary_is_resolution_limited() {
        // at r = 0.9 the integrand poles at -1/r sit close to the circle:
        // 256 nodes leave ~1.2e-9 of trapezoid truncation, 512 remove it
        let target = 2.0 / (1.0 - 0.81);
        let err_at = |n: usize| {
            let q = QuadratureRule::new(n).unwrap();
            let (_, y, _) = coordinate_fields(0.9, &q).unwrap();
            (norm_squared(&y, &q) - target).abs()
        };
        let coarse = err_at(256);
        assert!((1e-10..1e-8).contains(&coarse), "coarse error {coarse}");
        assert!(err_at(512) < 1e-12);
    }

    #[test]
    fn quadrature_error_decreases_with_node_count() {
        // closed-form comparisons from the module examples, n doubling
        let mut last = f64::INFINITY;
        for n in [8, 16, 32, 64, 128, 256] {
            let q = QuadratureRule::new(n).unwrap();
            let (_, y, _) = coordinate_fields(0.7, &q).unwrap();
            let err = (norm_squared(&y, &q) - 2.0 / (1.0 - 0.49)).abs();
            assert!(err < last.max(1e-13), "n={n}: {err} vs last {last}");
            last = err;
        }
        assert!(last < 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn inner_is_symmetric_and_bilinear(
            rho in 0.05..0.85,
            a in -2.0..2.0,
            b in -2.0..2.0,
        ) {
            let q = QuadratureRule::new(64).unwrap();
            let (x, y, z) = coordinate_fields(rho, &q).unwrap();
            let combo: Vec<Complex64> = y
                .values()
                .iter()
                .zip(z.values())
                .map(|(p, r)| a * *p + b * *r)
                .collect();
            let f = InducedField::new(combo, y.base_points().to_vec()).unwrap();
            let lhs: f64 = super::inner(&x, &f, &q).unwrap();
            let rhs: f64 = a * super::inner(&x, &y, &q).unwrap()
                + b * super::inner(&x, &z, &q).unwrap();
            let sym: f64 = super::inner(&f, &x, &q).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
            prop_assert!((sym - lhs).abs() < 1e-15);
        }
    }
}
