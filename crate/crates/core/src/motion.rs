//! Moebius motions of the circle and their kinetic energy.
//!
//! A motion is a time-sampled curve of Moebius maps, read as a moving
//! configuration of a unit-density mass on the circle. The particle at
//! `p` sits at `q = gamma(t)(p)` with velocity `d/ds gamma(s)(p)`, and
//! the instantaneous kinetic energy is
//! `E(t) = 1/2 ∮ |v_t(q)|^2 rho_t(q) dm(q)`, which the change of
//! variables turns into `1/2 ∮ |d/ds gamma(s)(p)|^2 dm(p)`. Both
//! evaluations are implemented, on deliberately different grids, so that
//! the identity is verified rather than assumed.
//!
//! Force-free means critical for the time integral of the energy under
//! proper variations; geodesics of the kinetic-energy metric are exactly
//! the force-free motions, which the residual estimator below checks.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinetic::InducedField;
use crate::moebius::{DiscPoint, MoebiusMap, UnitComplex};
use crate::product::f_inverse;
use crate::quadrature::QuadratureRule;

/// Relative tolerance for the uniform-grid check on motion times.
const GRID_TOL: f64 = 1e-9;

/// Step used for the variational derivative `d/ds E(gamma_s)`.
const VARIATION_STEP: f64 = 1e-4;

/// A time-sampled curve in the Moebius group on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledMotion {
    times: Vec<f64>,
    maps: Vec<MoebiusMap>,
}

impl SampledMotion {
    /// Requires at least five samples, matching lengths, and a strictly
    /// increasing uniform time grid (the finite-difference stencils
    /// depend on uniformity).
    pub fn new(times: Vec<f64>, maps: Vec<MoebiusMap>) -> Result<Self> {
        if times.len() < 5 {
            return Err(Error::TooFewSamples { len: times.len() });
        }
        if times.len() != maps.len() {
            return Err(Error::NodeMismatch {
                left: times.len(),
                right: maps.len(),
            });
        }
        let h = times[1] - times[0];
        if !(h > 0.0) {
            return Err(Error::NonUniformTimes);
        }
        for w in times.windows(2) {
            let d = w[1] - w[0];
            if !(d > 0.0) || (d - h).abs() > GRID_TOL * h.max(1.0) {
                return Err(Error::NonUniformTimes);
            }
        }
        Ok(Self { times, maps })
    }

    /// Samples a coordinate curve `t -> F(coords(t))` on `[t0, t1]`.
    pub fn from_coords(
        t0: f64,
        t1: f64,
        samples: usize,
        coords: impl Fn(f64) -> (f64, f64, f64),
    ) -> Result<Self> {
        if samples < 5 {
            return Err(Error::TooFewSamples { len: samples });
        }
        let h = (t1 - t0) / (samples - 1) as f64;
        let mut times = Vec::with_capacity(samples);
        let mut maps = Vec::with_capacity(samples);
        for i in 0..samples {
            let t = t0 + i as f64 * h;
            let (ct, crho, ctheta) = coords(t);
            times.push(t);
            maps.push(map_from_raw_coords(ct, crho, ctheta)?);
        }
        Self::new(times, maps)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn maps(&self) -> &[MoebiusMap] {
        &self.maps
    }

    pub fn time_step(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    pub fn duration(&self) -> f64 {
        self.times[self.times.len() - 1] - self.times[0]
    }

    /// JSON wire format `{"times": […], "maps": [{u_re,…}, …]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MotionRecord {
            times: self.times.clone(),
            maps: self.maps.clone(),
        })
        .expect("motion serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rec: MotionRecord =
            serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::new(rec.times, rec.maps)
    }
}

#[derive(Serialize, Deserialize)]
struct MotionRecord {
    times: Vec<f64>,
    maps: Vec<MoebiusMap>,
}

/// Builds the group element for raw coordinate values. A negative radius
/// is accepted and folded through the origin, which keeps variations of
/// near-origin motions smooth.
fn map_from_raw_coords(t: f64, rho: f64, theta: f64) -> Result<MoebiusMap> {
    Ok(MoebiusMap::new(
        UnitComplex::from_angle(t),
        DiscPoint::new(Complex64::from_polar(rho, theta))?,
    ))
}

/// Fourth-order differentiation of `f` on the uniform grid at `index`.
/// Centered in the interior, one-sided within two samples of the ends.
fn stencil_derivative(
    n: usize,
    h: f64,
    index: usize,
    f: impl Fn(usize) -> Complex64,
) -> Complex64 {
    debug_assert!(n >= 5);
    let at = |j: isize| f(j as usize);
    let i = index as isize;
    let v = if index >= 2 && index + 2 < n {
        -f(index + 2) + 8.0 * f(index + 1) - 8.0 * f(index - 1) + f(index - 2)
    } else if index == 0 {
        -25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)
    } else if index == 1 {
        -3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)
    } else if index + 2 == n {
        3.0 * at(i + 1) + 10.0 * at(i) - 18.0 * at(i - 1) + 6.0 * at(i - 2) - at(i - 3)
    } else {
        25.0 * at(i) - 48.0 * at(i - 1) + 36.0 * at(i - 2) - 16.0 * at(i - 3) + 3.0 * at(i - 4)
    };
    v / (12.0 * h)
}

fn velocity_field_any_index(
    motion: &SampledMotion,
    index: usize,
    quad: &QuadratureRule,
) -> InducedField {
    let n = motion.len();
    let h = motion.time_step();
    let g = &motion.maps()[index];
    let mut values = Vec::with_capacity(quad.len());
    let mut base = Vec::with_capacity(quad.len());
    for &p in quad.nodes() {
        values.push(stencil_derivative(n, h, index, |j| {
            motion.maps()[j].apply_complex(p)
        }));
        base.push(g.apply_complex(p));
    }
    InducedField::new(values, base).expect("lengths match by construction")
}

/// Particle velocity field of the motion at one time sample, by a
/// fourth-order centered stencil. The value at node `p` is attached at
/// `q = gamma(t)(p)`.
pub fn velocity_field(
    motion: &SampledMotion,
    index: usize,
    quad: &QuadratureRule,
) -> Result<InducedField> {
    let n = motion.len();
    if index >= n {
        return Err(Error::BoundaryIndex { index, len: n });
    }
    if index < 2 || index + 2 >= n {
        return Err(Error::BoundaryIndex { index, len: n });
    }
    Ok(velocity_field_any_index(motion, index, quad))
}

/// Kinetic energy at one sample by the Lagrangian-label integral
/// `1/2 ∮ |d/ds gamma(s)(p)|^2 dm(p)` over uniform particle labels.
pub fn kinetic_energy(motion: &SampledMotion, index: usize, quad: &QuadratureRule) -> Result<f64> {
    let field = velocity_field(motion, index, quad)?;
    Ok(energy_of_field(&field))
}

fn energy_of_field(field: &InducedField) -> f64 {
    std::f64::consts::PI
        * field.values().iter().map(|v| v.norm_sqr()).sum::<f64>()
        / field.len() as f64
}

/// Kinetic energy at one sample by the spatial integral
/// `1/2 ∮ |v_t(q)|^2 rho_t(q) dm(q)`, evaluated on uniform nodes in the
/// *image* circle: each node `q` is pulled back to its particle label
/// through the inverse map, and the mass density is
/// `rho_t(q) = 1/det d(gamma_t) = (gamma_t^{-1})'(q)`.
///
/// The quadrature grid here is genuinely different from the one in
/// [`kinetic_energy`], so agreement of the two values is a numerical
/// verification of the change-of-variables identity, not bookkeeping.
pub fn kinetic_energy_lagrangian(
    motion: &SampledMotion,
    index: usize,
    quad: &QuadratureRule,
) -> Result<f64> {
    let n = motion.len();
    if index < 2 || index + 2 >= n {
        return Err(Error::BoundaryIndex { index, len: n });
    }
    let h = motion.time_step();
    let g_inv = motion.maps()[index].inverse();
    let mut sum = 0.0;
    for &q in quad.nodes() {
        let p = g_inv.apply_complex(q);
        let v = stencil_derivative(n, h, index, |j| motion.maps()[j].apply_complex(p));
        let density = g_inv.circle_derivative(
            UnitComplex::new(q).expect("quadrature nodes are on the circle"),
        );
        sum += v.norm_sqr() * density;
    }
    Ok(std::f64::consts::PI * sum / quad.len() as f64)
}

/// Total transported mass `∮ rho_t dm`, which change of variables pins
/// at `2 pi` for every group element.
pub fn total_mass(g: &MoebiusMap, quad: &QuadratureRule) -> f64 {
    let g_inv = g.inverse();
    quad.integral(|q| {
        g_inv.circle_derivative(UnitComplex::new(q).expect("node on circle"))
    })
}

/// Kinetic energy at every sample (one-sided stencils at the ends).
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyTrace {
    values: Vec<f64>,
}

impl EnergyTrace {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// CSV export `t,energy` with a schema header comment.
    pub fn to_csv(&self, motion: &SampledMotion) -> String {
        let mut out = String::from("# moebius-kinetics energy v1\nt,energy\n");
        for (t, e) in motion.times().iter().zip(&self.values) {
            out.push_str(&format!("{t},{e}\n"));
        }
        out
    }
}

pub fn energy_trace(motion: &SampledMotion, quad: &QuadratureRule) -> EnergyTrace {
    let values = (0..motion.len())
        .map(|i| energy_of_field(&velocity_field_any_index(motion, i, quad)))
        .collect();
    EnergyTrace { values }
}

/// Action `∫ E_gamma(t) dt` by the composite trapezoid rule over the
/// energy trace.
pub fn action(motion: &SampledMotion, quad: &QuadratureRule) -> f64 {
    let trace = energy_trace(motion, quad);
    let v = trace.values();
    let h = motion.time_step();
    let inner: f64 = v[1..v.len() - 1].iter().sum();
    h * (0.5 * (v[0] + v[v.len() - 1]) + inner)
}

/// Estimates how far a motion is from being force free.
///
/// Draws `variation_count` proper variations — sine bumps in one of the
/// three product coordinates, vanishing at the endpoints, with seeded
/// random amplitudes in `[0.02, 0.05]` and signs — and returns the
/// largest `|d/ds E(gamma_s)|` over the family, estimated by a central
/// difference in the variation parameter.
///
/// Criticality against this family is the testable surrogate for
/// criticality against all proper variations; the thresholds that turn
/// the residual into a verdict live with the validation configuration.
pub fn force_free_residual(
    motion: &SampledMotion,
    variation_count: usize,
    seed: u64,
    quad: &QuadratureRule,
) -> Result<f64> {
    let n = motion.len();
    let t0 = motion.times()[0];
    let duration = motion.duration();
    let coords: Vec<(f64, f64, f64)> = motion
        .maps()
        .iter()
        .map(|g| {
            let p = f_inverse(g);
            (p.t(), p.rho(), p.theta())
        })
        .collect();
    let bump: Vec<f64> = motion
        .times()
        .iter()
        .map(|&t| (std::f64::consts::PI * (t - t0) / duration).sin())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for v_idx in 0..variation_count {
        let coord = v_idx % 3;
        let amplitude = rng.gen_range(0.02..0.05) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };

        let displaced = |s: f64| -> Result<SampledMotion> {
            let mut maps = Vec::with_capacity(n);
            for i in 0..n {
                let (mut t, mut rho, mut theta) = coords[i];
                let d = s * amplitude * bump[i];
                match coord {
                    0 => t += d,
                    1 => rho += d,
                    _ => theta += d,
                }
                maps.push(map_from_raw_coords(t, rho, theta)?);
            }
            SampledMotion::new(motion.times().to_vec(), maps)
        };

        let plus = action(&displaced(VARIATION_STEP)?, quad);
        let minus = action(&displaced(-VARIATION_STEP)?, quad);
        worst = worst.max(((plus - minus) / (2.0 * VARIATION_STEP)).abs());
    }
    Ok(worst)
}

/// Left torus translation `g -> u g conj(v)` applied samplewise. The
/// action is by isometries, so energies and the action integral are
/// unchanged.
pub fn torus_translate(motion: &SampledMotion, u: UnitComplex, v: UnitComplex) -> SampledMotion {
    let left = MoebiusMap::rotation(u);
    let right = MoebiusMap::rotation(v.conj());
    let maps = motion
        .maps()
        .iter()
        .map(|g| left.compose(&g.compose(&right)))
        .collect();
    SampledMotion::new(motion.times().to_vec(), maps)
        .expect("translation preserves the time grid")
}
