//! Arithmetic of the group of Moebius transformations of the circle.
//!
//! Every element is kept in the normal form `(u, alpha)` representing the
//! map `z -> u (z + alpha) / (1 + conj(alpha) z)` with `|u| = 1` and
//! `|alpha| < 1`. The rotation part `u` is renormalized after every
//! operation; `alpha` is validated on construction. The pair is unique,
//! so two maps are equal iff their fields agree.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `| |u| - 1 |` for unit-circle values.
pub const UNIT_MODULUS_TOL: f64 = 1e-12;

/// Constructors reject transvection parameters with `|alpha| >= 1 - DISC_MARGIN`;
/// the group law degenerates there and the metric is incomplete.
pub const DISC_MARGIN: f64 = 1e-12;

/// A complex number of unit modulus, renormalized on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitComplex(Complex64);

impl UnitComplex {
    /// Projects `value` onto the unit circle. Fails only for zero or
    /// non-finite input.
    pub fn new(value: Complex64) -> Result<Self> {
        let m = value.norm();
        if !m.is_finite() || m == 0.0 {
            return Err(Error::NotOnCircle { modulus: m });
        }
        Ok(Self(value / m))
    }

    pub fn from_angle(t: f64) -> Self {
        Self(Complex64::from_polar(1.0, t))
    }

    pub fn one() -> Self {
        Self(Complex64::new(1.0, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    /// Argument in `(-pi, pi]`.
    pub fn angle(self) -> f64 {
        self.0.arg()
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }
}

/// A point of the open unit disc, the transvection parameter `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    /// Rejects `|value| >= 1 - DISC_MARGIN` (and non-finite values).
    pub fn new(value: Complex64) -> Result<Self> {
        let m = value.norm();
        if m < 1.0 - DISC_MARGIN {
            Ok(Self(value))
        } else {
            Err(Error::OutsideDisc { modulus: m })
        }
    }

    /// For results of group operations, where `|value| < 1` holds by
    /// construction (the group maps the open disc to itself).
    pub(crate) fn new_unchecked(value: Complex64) -> Self {
        debug_assert!(value.norm() < 1.0, "group operation left the disc");
        Self(value)
    }

    pub fn origin() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    /// Polar radius `|alpha|`.
    pub fn radius(self) -> f64 {
        self.0.norm()
    }

    /// Polar angle; 0 by convention at the origin.
    pub fn angle(self) -> f64 {
        if self.radius() == 0.0 {
            0.0
        } else {
            self.0.arg()
        }
    }
}

/// A Moebius transformation of the circle in normal form:
/// `z -> u (z + alpha) / (1 + conj(alpha) z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    u: UnitComplex,
    alpha: DiscPoint,
}

impl MoebiusMap {
    pub fn new(u: UnitComplex, alpha: DiscPoint) -> Self {
        Self { u, alpha }
    }

    pub fn identity() -> Self {
        Self {
            u: UnitComplex::one(),
            alpha: DiscPoint::origin(),
        }
    }

    /// The rigid rotation `z -> u z`.
    pub fn rotation(u: UnitComplex) -> Self {
        Self {
            u,
            alpha: DiscPoint::origin(),
        }
    }

    /// The transvection `T_alpha`, translating the hyperbolic geodesic
    /// through `±alpha/|alpha|` and sending 0 to `alpha`.
    pub fn transvection(alpha: DiscPoint) -> Self {
        Self {
            u: UnitComplex::one(),
            alpha,
        }
    }

    pub fn u(&self) -> UnitComplex {
        self.u
    }

    pub fn alpha(&self) -> DiscPoint {
        self.alpha
    }

    /// Evaluates the map at a point of the circle. The denominator
    /// `1 + conj(alpha) z` is bounded away from zero for `|alpha| < 1`,
    /// and the result is renormalized to unit modulus.
    pub fn apply(&self, z: UnitComplex) -> UnitComplex {
        UnitComplex::new(self.apply_complex(z.value()))
            .expect("Moebius map of a circle point stays on the circle")
    }

    /// Evaluates the same formula at any point of the closed disc.
    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        let a = self.alpha.value();
        self.u.value() * (z + a) / (Complex64::new(1.0, 0.0) + a.conj() * z)
    }

    /// Complex derivative `g'(z) = u (1 - |alpha|^2) / (1 + conj(alpha) z)^2`.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let a = self.alpha.value();
        let den = Complex64::new(1.0, 0.0) + a.conj() * z;
        self.u.value() * (1.0 - a.norm_sqr()) / (den * den)
    }

    /// Stretch factor of the induced circle diffeomorphism at `z`:
    /// `|g'(z)| = (1 - |alpha|^2) / |1 + conj(alpha) z|^2`, strictly positive.
    pub fn circle_derivative(&self, z: UnitComplex) -> f64 {
        let a = self.alpha.value();
        let den = Complex64::new(1.0, 0.0) + a.conj() * z.value();
        (1.0 - a.norm_sqr()) / den.norm_sqr()
    }

    /// Group law in normal form. The composite `f = self ∘ other` is
    /// recovered from its value and complex derivative at 0:
    /// `u = f'(0)/|f'(0)|`, `alpha = conj(u) f(0)`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let zero = Complex64::new(0.0, 0.0);
        let w0 = other.apply_complex(zero);
        let f0 = self.apply_complex(w0);
        let d = self.derivative(w0) * other.derivative(zero);
        let u = UnitComplex::new(d).expect("derivative of a disc automorphism never vanishes");
        let alpha = u.value().conj() * f0;
        MoebiusMap {
            u,
            alpha: DiscPoint::new_unchecked(alpha),
        }
    }

    /// Closed-form inverse: `(u, alpha)^{-1} = (conj(u), -u alpha)`.
    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap {
            u: self.u.conj(),
            alpha: DiscPoint::new_unchecked(-self.u.value() * self.alpha.value()),
        }
    }

    /// Normal-form comparison: both fields within `tol`.
    pub fn approx_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        (self.u.value() - other.u.value()).norm() <= tol
            && (self.alpha.value() - other.alpha.value()).norm() <= tol
    }
}

/// Wire format used by the CLI and the motion files:
/// `{"u_re":…, "u_im":…, "alpha_re":…, "alpha_im":…}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MoebiusMapRecord {
    pub u_re: f64,
    pub u_im: f64,
    pub alpha_re: f64,
    pub alpha_im: f64,
}

impl From<&MoebiusMap> for MoebiusMapRecord {
    fn from(g: &MoebiusMap) -> Self {
        let u = g.u.value();
        let a = g.alpha.value();
        Self {
            u_re: u.re,
            u_im: u.im,
            alpha_re: a.re,
            alpha_im: a.im,
        }
    }
}

impl TryFrom<MoebiusMapRecord> for MoebiusMap {
    type Error = Error;

    fn try_from(r: MoebiusMapRecord) -> Result<Self> {
        Ok(MoebiusMap::new(
            UnitComplex::new(Complex64::new(r.u_re, r.u_im))?,
            DiscPoint::new(Complex64::new(r.alpha_re, r.alpha_im))?,
        ))
    }
}

impl Serialize for MoebiusMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MoebiusMapRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MoebiusMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MoebiusMapRecord::deserialize(d)?;
        MoebiusMap::try_from(r).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn roots_of_unity(n: usize) -> Vec<UnitComplex> {
        (0..n)
            .map(|k| UnitComplex::from_angle(2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect()
    }

    fn sample_map(t: f64, ar: f64, ath: f64) -> MoebiusMap {
        MoebiusMap::new(
            UnitComplex::from_angle(t),
            DiscPoint::new(Complex64::from_polar(ar, ath)).unwrap(),
        )
    }

    #[test]
    fn identity_fixes_everything() {
        let id = MoebiusMap::identity();
        for z in roots_of_unity(64) {
            assert!((id.apply(z).value() - z.value()).norm() <= 1e-15);
        }
    }

    #[test]
    fn real_transvection_fixes_plus_minus_one() {
        let g = sample_map(0.0, 0.5, 0.0);
        let one = UnitComplex::one();
        let minus_one = UnitComplex::from_angle(std::f64::consts::PI);
        assert!((g.apply(one).value() - one.value()).norm() <= 1e-15);
        assert!((g.apply(minus_one).value() - minus_one.value()).norm() <= 1e-15);
    }

    #[test]
    fn transvection_at_i() {
        // (i + 0.5) / (1 + 0.5 i) = 0.8 + 0.6 i
        let g = sample_map(0.0, 0.5, 0.0);
        let w = g.apply(UnitComplex::from_angle(std::f64::consts::FRAC_PI_2)).value();
        assert_abs_diff_eq!(w.re, 0.8, epsilon = 1e-14);
        assert_abs_diff_eq!(w.im, 0.6, epsilon = 1e-14);
    }

    #[test]
    fn apply_preserves_modulus() {
        let g = sample_map(1.1, 0.83, -2.0);
        for z in roots_of_unity(64) {
            assert_abs_diff_eq!(g.apply(z).value().norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn compose_with_identity() {
        let g = sample_map(0.7, 0.3, 1.2);
        assert!(g.compose(&MoebiusMap::identity()).approx_eq(&g, 1e-12));
        assert!(MoebiusMap::identity().compose(&g).approx_eq(&g, 1e-12));
    }

    #[test]
    fn transvection_inverse_composes_to_identity() {
        let a = DiscPoint::new(Complex64::new(0.4, 0.2)).unwrap();
        let b = DiscPoint::new(Complex64::new(-0.4, -0.2)).unwrap();
        let k = MoebiusMap::transvection(a).compose(&MoebiusMap::transvection(b));
        assert!(k.approx_eq(&MoebiusMap::identity(), 1e-12));
    }

    #[test]
    fn compose_matches_pointwise_chain() {
        let g = sample_map(std::f64::consts::FRAC_PI_2, 0.3, 0.0);
        let h = sample_map(0.0, 0.4, std::f64::consts::FRAC_PI_2);
        let k = g.compose(&h);
        for z in roots_of_unity(64) {
            let lhs = k.apply(z).value();
            let rhs = g.apply(h.apply(z)).value();
            assert!((lhs - rhs).norm() < 1e-12, "mismatch at {z:?}");
        }
    }

    #[test]
    fn inverse_identity_and_transvection() {
        assert!(MoebiusMap::identity()
            .inverse()
            .approx_eq(&MoebiusMap::identity(), 1e-15));
        let a = Complex64::new(0.3, -0.1);
        let inv = MoebiusMap::transvection(DiscPoint::new(a).unwrap()).inverse();
        assert!((inv.u().value() - Complex64::new(1.0, 0.0)).norm() <= 1e-15);
        assert!((inv.alpha().value() + a).norm() <= 1e-15);
    }

    #[test]
    fn inverse_round_trip() {
        let g = sample_map(std::f64::consts::FRAC_PI_3, 0.2236, 0.4636); // alpha = 0.2 + 0.1 i
        assert!(g.compose(&g.inverse()).approx_eq(&MoebiusMap::identity(), 1e-12));
        assert!(g.inverse().compose(&g).approx_eq(&MoebiusMap::identity(), 1e-12));
    }

    #[test]
    fn circle_derivative_values() {
        let id = MoebiusMap::identity();
        let g = sample_map(0.0, 0.5, 0.0);
        let one = UnitComplex::one();
        let minus_one = UnitComplex::from_angle(std::f64::consts::PI);
        assert_abs_diff_eq!(id.circle_derivative(one), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.circle_derivative(one), 1.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(g.circle_derivative(minus_one), 3.0, epsilon = 1e-14);
    }

    #[test]
    fn circle_derivative_matches_angle_finite_difference() {
        // d/ds arg(g(e^{is})) is the stretch factor of the induced circle map.
        let g = sample_map(0.9, 0.6, -1.0);
        let h = 1e-6;
        for s in [0.0, 0.8, 2.2, 4.0, 5.9] {
            let wp = g.apply(UnitComplex::from_angle(s + h)).value();
            let wm = g.apply(UnitComplex::from_angle(s - h)).value();
            // angle increment via the quotient avoids branch cuts
            let num = (wp / wm).arg() / (2.0 * h);
            let exact = g.circle_derivative(UnitComplex::from_angle(s));
            assert_abs_diff_eq!(num, exact, epsilon = 1e-8);
        }
    }

    #[test]
    fn chain_rule_for_circle_derivative() {
        let g = sample_map(2.0, 0.55, 0.3);
        let ginv = g.inverse();
        for z in roots_of_unity(32) {
            let prod = g.circle_derivative(z) * ginv.circle_derivative(g.apply(z));
            assert_abs_diff_eq!(prod, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn circle_derivative_integrates_to_two_pi() {
        // The induced map is a degree-1 diffeomorphism of the circle.
        let g = sample_map(0.4, 0.7, 2.5);
        let n = 256;
        let total: f64 = roots_of_unity(n)
            .into_iter()
            .map(|z| g.circle_derivative(z))
            .sum::<f64>()
            * (2.0 * std::f64::consts::PI / n as f64);
        assert_abs_diff_eq!(total, 2.0 * std::f64::consts::PI, epsilon = 1e-10);
    }

    #[test]
    fn disc_point_rejects_boundary() {
        assert!(DiscPoint::new(Complex64::new(1.0, 0.0)).is_err());
        assert!(DiscPoint::new(Complex64::new(0.0, 1.0 - 1e-13)).is_err());
        assert!(DiscPoint::new(Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(DiscPoint::new(Complex64::new(0.0, 0.99)).is_ok());
    }

    #[test]
    fn unit_complex_rejects_zero() {
        assert!(UnitComplex::new(Complex64::new(0.0, 0.0)).is_err());
        assert!(UnitComplex::new(Complex64::new(f64::INFINITY, 0.0)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = sample_map(1.2, 0.35, -0.7);
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"u_re\"") && s.contains("\"alpha_im\""));
        let back: MoebiusMap = serde_json::from_str(&s).unwrap();
        assert!(g.approx_eq(&back, 1e-15));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn group_laws_pointwise(
            t1 in 0.0..std::f64::consts::TAU, r1 in 0.0..0.9, p1 in 0.0..std::f64::consts::TAU,
            t2 in 0.0..std::f64::consts::TAU, r2 in 0.0..0.9, p2 in 0.0..std::f64::consts::TAU,
            t3 in 0.0..std::f64::consts::TAU, r3 in 0.0..0.9, p3 in 0.0..std::f64::consts::TAU,
        ) {
            let g = sample_map(t1, r1, p1);
            let h = sample_map(t2, r2, p2);
            let k = sample_map(t3, r3, p3);

            // associativity, pointwise on 64 roots of unity
            let gh_k = g.compose(&h).compose(&k);
            let g_hk = g.compose(&h.compose(&k));
            for z in roots_of_unity(64) {
                let a = gh_k.apply(z).value();
                let b = g_hk.apply(z).value();
                prop_assert!((a - b).norm() < 1e-12);
                prop_assert!((g.apply(z).value().norm() - 1.0).abs() < 1e-12);
            }

            // inverse round trip in normal form
            prop_assert!(g.compose(&g.inverse()).approx_eq(&MoebiusMap::identity(), 1e-12));
        }
    }
}
