//! Geodesic flow on the circle x disc model.
//!
//! The circle factor is flat, so its coordinate is affine in arc length.
//! The disc factor has a Clairaut metric (coefficients depend on rho
//! only): the angular momentum `G(rho) dtheta` is conserved, non-radial
//! trajectories turn around at `rho_min = |c| / sqrt(2 v^2 + c^2)`, and
//! every trajectory reaches the boundary in finite length because the
//! metric is incomplete.
//!
//! Integration is fixed-step classical RK4 in the polar chart, switching
//! to the conformal Cartesian chart `2 (dx^2 + dy^2) / (1 - x^2 - y^2)`
//! near the origin where the polar symbols blow up like `1/rho`.

use crate::error::{Error, Result};
use crate::kinetic::ProductTangent;
use crate::product::{e_coeff, g_coeff, metric_tensor, ProductPoint};

const TAU: f64 = std::f64::consts::TAU;

/// Below this radius the integrator works in the Cartesian chart.
pub const CHART_SWITCH_RHO: f64 = 0.05;

/// Integration stops once rho exceeds this; the ODE is singular at the
/// boundary and no representable point has rho >= 1.
pub const BOUNDARY_RHO: f64 = 1.0 - 1e-6;

/// Largest admissible integration step.
pub const MAX_STEP: f64 = 1e-3;

/// Position and velocity of the geodesic flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicState {
    pub point: ProductPoint,
    pub velocity: ProductTangent,
}

impl GeodesicState {
    /// Requires finite velocity components and strictly positive speed.
    pub fn new(point: ProductPoint, velocity: ProductTangent) -> Result<Self> {
        let s = Self { point, velocity };
        let v2 = s.speed_squared();
        if !v2.is_finite() || v2 <= 0.0 {
            return Err(Error::ParameterOutOfRange {
                name: "speed",
                value: v2,
            });
        }
        Ok(s)
    }

    /// `g_tt dt^2 + E(rho) drho^2 + G(rho) dtheta^2`.
    pub fn speed_squared(&self) -> f64 {
        let m = metric_tensor(&self.point);
        m.g_tt * self.velocity.dt * self.velocity.dt
            + m.g_rr * self.velocity.drho * self.velocity.drho
            + m.g_thth * self.velocity.dtheta * self.velocity.dtheta
    }

    pub fn speed(&self) -> f64 {
        self.speed_squared().sqrt()
    }

    /// The Clairaut first integral `c = G(rho) dtheta`, conserved along
    /// geodesics.
    pub fn clairaut_constant(&self) -> f64 {
        g_coeff(self.point.rho()) * self.velocity.dtheta
    }
}

/// Free-function form of [`GeodesicState::clairaut_constant`].
pub fn clairaut_constant(state: &GeodesicState) -> f64 {
    state.clairaut_constant()
}

/// First and second derivatives of the product coordinates along the flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicDerivative {
    pub velocity: ProductTangent,
    pub acceleration: ProductTangent,
}

// Internal 6-state [t, rho, theta, dt, drho, dtheta] (polar) or
// [t, x, y, dt, dx, dy] (Cartesian).
type State6 = [f64; 6];

fn rhs_polar(y: &State6) -> State6 {
    let [_, rho, _, dt, dr, dth] = *y;
    let w = 1.0 - rho * rho;
    // Gamma^rho_rhorho = rho/w, Gamma^rho_thth = -rho/w, Gamma^th_rth = 1/(rho w)
    [
        dt,
        dr,
        dth,
        0.0,
        -(rho / w) * dr * dr + (rho / w) * dth * dth,
        -2.0 / (rho * w) * dr * dth,
    ]
}

fn rhs_cartesian(y: &State6) -> State6 {
    let [_, x, yy, dt, dx, dy] = *y;
    let w = 1.0 - x * x - yy * yy;
    let px = x / w;
    let py = yy / w;
    [
        dt,
        dx,
        dy,
        0.0,
        -px * dx * dx - 2.0 * py * dx * dy + px * dy * dy,
        -py * dy * dy - 2.0 * px * dx * dy + py * dx * dx,
    ]
}

fn rk4_step(f: fn(&State6) -> State6, y: &State6, h: f64) -> State6 {
    let add = |a: &State6, b: &State6, s: f64| {
        let mut out = [0.0; 6];
        for i in 0..6 {
            out[i] = a[i] + s * b[i];
        }
        out
    };
    let k1 = f(y);
    let k2 = f(&add(y, &k1, h / 2.0));
    let k3 = f(&add(y, &k2, h / 2.0));
    let k4 = f(&add(y, &k3, h));
    let mut out = [0.0; 6];
    for i in 0..6 {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn polar_to_cartesian(y: &State6) -> State6 {
    let [t, rho, th, dt, dr, dth] = *y;
    let (s, c) = th.sin_cos();
    [
        t,
        rho * c,
        rho * s,
        dt,
        dr * c - rho * s * dth,
        dr * s + rho * c * dth,
    ]
}

fn cartesian_to_polar(y: &State6) -> State6 {
    let [t, x, yy, dt, dx, dy] = *y;
    let rho = x.hypot(yy);
    // callers never convert at the exact origin; see advance()
    let th = yy.atan2(x);
    let dr = (x * dx + yy * dy) / rho;
    let dth = (x * dy - yy * dx) / (rho * rho);
    [t, rho, th, dt, dr, dth]
}

/// One RK4 step in the chart appropriate for the current radius.
/// The chart is chosen at the step start; both right-hand sides are
/// smooth over the whole stage excursion.
fn advance(y: &State6, h: f64) -> State6 {
    if y[1] < CHART_SWITCH_RHO {
        let yc = rk4_step(rhs_cartesian, &polar_to_cartesian(y), h);
        cartesian_to_polar(&yc)
    } else {
        rk4_step(rhs_polar, y, h)
    }
}

fn state_to_six(state: &GeodesicState) -> State6 {
    [
        state.point.t(),
        state.point.rho(),
        state.point.theta(),
        state.velocity.dt,
        state.velocity.drho,
        state.velocity.dtheta,
    ]
}

fn six_to_state(y: &State6) -> Result<GeodesicState> {
    GeodesicState::new(
        ProductPoint::new(y[0], y[1], y[2])?,
        ProductTangent::new(y[3], y[4], y[5]),
    )
}

/// The geodesic equation at one state: second derivatives
/// `(0, -Γ^ρ_ρρ ρ'^2 - Γ^ρ_θθ θ'^2, -2 Γ^θ_ρθ ρ' θ')`, computed through
/// the Cartesian chart below [`CHART_SWITCH_RHO`].
pub fn geodesic_rhs(state: &GeodesicState) -> Result<GeodesicDerivative> {
    let rho = state.point.rho();
    if rho >= BOUNDARY_RHO {
        return Err(Error::ParameterOutOfRange {
            name: "rho",
            value: rho,
        });
    }
    let y = state_to_six(state);
    let acc = if rho < CHART_SWITCH_RHO {
        if rho == 0.0 {
            // the polar acceleration components are undefined at the origin
            return Err(Error::DegenerateChart);
        }
        let yc = polar_to_cartesian(&y);
        let d = rhs_cartesian(&yc);
        // convert (xdd, ydd) back to polar second derivatives
        let [_, x, yy, _, dx, dy] = yc;
        let (xdd, ydd) = (d[4], d[5]);
        let dr = y[4];
        let dth = y[5];
        let rdd = (dx * dx + dy * dy + x * xdd + yy * ydd - dr * dr) / rho;
        let thdd = (x * ydd - yy * xdd - 2.0 * rho * dr * dth) / (rho * rho);
        [0.0, rdd, thdd]
    } else {
        let d = rhs_polar(&y);
        [0.0, d[4], d[5]]
    };
    Ok(GeodesicDerivative {
        velocity: state.velocity,
        acceleration: ProductTangent::new(acc[0], acc[1], acc[2]),
    })
}

/// Where and when an integrated geodesic met the stopping radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryHit {
    /// Arc parameter of the crossing, refined within the last step.
    pub arc_length: f64,
    /// State at the crossing.
    pub state: GeodesicState,
}

/// A geodesic sampled on a uniform arc-parameter grid.
#[derive(Debug, Clone)]
pub struct GeodesicPath {
    samples: Vec<(f64, GeodesicState)>,
    step: f64,
    boundary: Option<BoundaryHit>,
}

impl GeodesicPath {
    /// Rebuilds a path from stored samples (e.g. a parsed CSV export).
    /// The arc parameters must be uniformly spaced.
    pub fn from_samples(
        samples: Vec<(f64, GeodesicState)>,
        boundary: Option<BoundaryHit>,
    ) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::TooFewSamples { len: samples.len() });
        }
        let step = samples[1].0 - samples[0].0;
        if !(step > 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "step",
                value: step,
            });
        }
        for w in samples.windows(2) {
            if ((w[1].0 - w[0].0) - step).abs() > 1e-9 * step.max(1.0) {
                return Err(Error::ParameterOutOfRange {
                    name: "arc spacing",
                    value: w[1].0 - w[0].0,
                });
            }
        }
        Ok(Self {
            samples,
            step,
            boundary,
        })
    }

    pub fn samples(&self) -> &[(f64, GeodesicState)] {
        &self.samples
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// `Some` when integration stopped early at the boundary radius.
    pub fn boundary_hit(&self) -> Option<&BoundaryHit> {
        self.boundary.as_ref()
    }

    pub fn first(&self) -> &GeodesicState {
        &self.samples[0].1
    }

    pub fn last(&self) -> &GeodesicState {
        &self.samples[self.samples.len() - 1].1
    }

    /// Minimum radius along the path, parabolically refined through the
    /// three samples around the discrete minimum. Returns
    /// `(arc parameter, rho)`.
    pub fn refined_min_rho(&self) -> (f64, f64) {
        let (jmin, _) = self
            .samples
            .iter()
            .enumerate()
            .min_by(|a, b| {
                a.1 .1
                    .point
                    .rho()
                    .partial_cmp(&b.1 .1.point.rho())
                    .expect("rho is finite")
            })
            .expect("path is nonempty");
        let (s2, r2) = (self.samples[jmin].0, self.samples[jmin].1.point.rho());
        if jmin == 0 || jmin + 1 == self.samples.len() {
            return (s2, r2);
        }
        let r1 = self.samples[jmin - 1].1.point.rho();
        let r3 = self.samples[jmin + 1].1.point.rho();
        let denom = r1 - 2.0 * r2 + r3;
        if denom <= 0.0 {
            return (s2, r2);
        }
        let delta = 0.5 * (r1 - r3) / denom;
        (
            s2 + delta * self.step,
            r2 - 0.25 * (r1 - r3) * delta,
        )
    }

    /// Polar angles unwrapped to a continuous sequence.
    pub(crate) fn unwrapped_theta(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.samples.len());
        let mut prev = self.samples[0].1.point.theta();
        let mut acc = prev;
        out.push(acc);
        for (_, st) in &self.samples[1..] {
            let th = st.point.theta();
            let mut d = th - prev;
            if d > std::f64::consts::PI {
                d -= TAU;
            } else if d < -std::f64::consts::PI {
                d += TAU;
            }
            acc += d;
            out.push(acc);
            prev = th;
        }
        out
    }
}

/// Integrates the geodesic flow for the given parameter length with a
/// fixed step, stopping early (with a [`BoundaryHit`]) if the radius
/// exceeds [`BOUNDARY_RHO`]. The crossing parameter is refined by
/// bisection inside the offending step.
pub fn integrate(state0: &GeodesicState, length: f64, step: f64) -> Result<GeodesicPath> {
    if !(step > 0.0 && step <= MAX_STEP) {
        return Err(Error::ParameterOutOfRange {
            name: "step",
            value: step,
        });
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::ParameterOutOfRange {
            name: "length",
            value: length,
        });
    }
    if state0.point.rho() >= BOUNDARY_RHO {
        return Err(Error::ParameterOutOfRange {
            name: "rho",
            value: state0.point.rho(),
        });
    }

    let n_steps = (length / step).round().max(1.0) as usize;
    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut y = state_to_six(state0);
    samples.push((0.0, *state0));
    let mut boundary = None;

    for k in 1..=n_steps {
        let y_new = advance(&y, step);
        if y_new[1] > BOUNDARY_RHO {
            // refine the crossing fraction sigma in (0, 1]
            let s_prev = (k - 1) as f64 * step;
            let mut lo = 0.0;
            let mut hi = 1.0;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if advance(&y, mid * step)[1] > BOUNDARY_RHO {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let y_hit = advance(&y, lo * step);
            boundary = Some(BoundaryHit {
                arc_length: s_prev + 0.5 * (lo + hi) * step,
                state: six_to_state(&y_hit)?,
            });
            break;
        }
        y = y_new;
        samples.push((k as f64 * step, six_to_state(&y)?));
    }

    Ok(GeodesicPath {
        samples,
        step,
        boundary,
    })
}

/// Initial state at `(t, rho, theta) = (0, rho0, 0)` with disc speed `v`,
/// Clairaut constant `c`, and no circle-factor motion. `inward` selects
/// the sign of the radial velocity. Radial when `c = 0`.
pub fn clairaut_initial_state(rho0: f64, c: f64, v: f64, inward: bool) -> Result<GeodesicState> {
    if !(rho0 > 0.0 && rho0 < 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "rho0",
            value: rho0,
        });
    }
    if !(v > 0.0) {
        return Err(Error::ParameterOutOfRange { name: "v", value: v });
    }
    let g = g_coeff(rho0);
    let dtheta = c / g;
    let radial2 = (v * v - c * c / g) / e_coeff(rho0);
    if radial2 < 0.0 {
        // the requested angular momentum exceeds the speed at this radius
        return Err(Error::ParameterOutOfRange { name: "c", value: c });
    }
    let drho = if inward { -radial2.sqrt() } else { radial2.sqrt() };
    GeodesicState::new(
        ProductPoint::new(0.0, rho0, 0.0)?,
        ProductTangent::new(0.0, drho, dtheta),
    )
}

/// Turning radius of a Clairaut geodesic: `|c| / sqrt(2 v^2 + c^2)`.
pub fn turning_radius(c: f64, v: f64) -> f64 {
    c.abs() / (2.0 * v * v + c * c).sqrt()
}

/// The two candidate first-order trajectory equations for `rho(theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryForm {
    /// `(rho')^2 = (mu + rho^2) / ((1 - rho^2) rho^2)`
    Paper,
    /// `(rho')^2 = rho^2 ((2 lambda + 1) rho^2 - 1) / (1 - rho^2)`,
    /// the Clairaut relation `lambda G^2 = G + E (rho')^2` solved for
    /// `(rho')^2`, with `lambda = v^2 / c^2`.
    Standard,
}

/// Best-fit constant of a trajectory form and its worst pointwise defect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryFit {
    pub constant: f64,
    pub max_residual: f64,
}

/// Fits the single constant of the given trajectory form to a sampled
/// path by least squares and reports the maximum pointwise residual.
/// `rho' = drho/dtheta` is estimated by central differences on the
/// unwrapped-angle samples; the angle is strictly monotone on any
/// non-radial geodesic, so no further segmentation is needed.
pub fn trajectory_residual(path: &GeodesicPath, form: TrajectoryForm) -> Result<TrajectoryFit> {
    if path.samples().len() < 3 {
        return Err(Error::TooFewSamples {
            len: path.samples().len(),
        });
    }
    if path.first().clairaut_constant().abs() < 1e-12 {
        return Err(Error::RadialTrajectory);
    }
    let theta = path.unwrapped_theta();
    let rho: Vec<f64> = path
        .samples()
        .iter()
        .map(|(_, st)| st.point.rho())
        .collect();

    // least squares for the model residual a_k - constant * b_k
    let mut sum_ab = 0.0;
    let mut sum_bb = 0.0;
    let mut terms = Vec::with_capacity(rho.len() - 2);
    for k in 1..rho.len() - 1 {
        let rp = (rho[k + 1] - rho[k - 1]) / (theta[k + 1] - theta[k - 1]);
        let r = rho[k];
        let r2 = r * r;
        let w = 1.0 - r2;
        let (a, b) = match form {
            TrajectoryForm::Paper => (rp * rp - 1.0 / w, 1.0 / (w * r2)),
            TrajectoryForm::Standard => (rp * rp + r2, 2.0 * r2 * r2 / w),
        };
        sum_ab += a * b;
        sum_bb += b * b;
        terms.push((a, b));
    }
    let constant = sum_ab / sum_bb;
    let max_residual = terms
        .iter()
        .map(|(a, b)| (a - constant * b).abs())
        .fold(0.0, f64::max);
    Ok(TrajectoryFit {
        constant,
        max_residual,
    })
}

/// Conserved data and fitted trajectory constants of one non-radial
/// geodesic: the angular momentum `c`, the disc speed `v`, and the
/// least-squares constants of the two candidate trajectory forms.
/// For a true geodesic `lambda = v^2/c^2` and `mu > -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClairautParameters {
    pub c: f64,
    pub v: f64,
    pub lambda: f64,
    pub mu: f64,
}

/// Extracts the Clairaut data of a path: conserved quantities from the
/// initial sample, constants from fitting both trajectory forms.
pub fn clairaut_parameters(path: &GeodesicPath) -> Result<ClairautParameters> {
    let first = path.first();
    let disc_speed2 = e_coeff(first.point.rho()) * first.velocity.drho * first.velocity.drho
        + g_coeff(first.point.rho()) * first.velocity.dtheta * first.velocity.dtheta;
    Ok(ClairautParameters {
        c: first.clairaut_constant(),
        v: disc_speed2.sqrt(),
        lambda: trajectory_residual(path, TrajectoryForm::Standard)?.constant,
        mu: trajectory_residual(path, TrajectoryForm::Paper)?.constant,
    })
}

/// Result of matching a disc trajectory against a hypocycloid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypocycloidFit {
    /// Rolling-circle radius `k = (1 - rho_min) / 2` (outer radius 1).
    pub rolling_radius: f64,
    /// Rotation aligning the curve's inner tangency with the path's.
    pub phase: f64,
    /// Maximum pointwise distance, matched by signed arc length from the
    /// tangency point.
    pub max_deviation: f64,
}

/// Point of the reference hypocycloid
/// `z(phi) = (1-k) e^{i phi} + k e^{-i (1-k) phi / k}` at the parameter
/// whose arc length from the inner tangency (at `phi = pi k`) equals `ell`.
/// The arc function `4 k (1-k) (1 - cos(phi/(2k)))` inverts in closed form.
fn hypocycloid_at_arc(k: f64, ell: f64) -> num_complex::Complex64 {
    use num_complex::Complex64;
    let span = 4.0 * k * (1.0 - k);
    let cosv = (-ell / span).clamp(-1.0, 1.0);
    let phi = 2.0 * k * cosv.acos();
    (1.0 - k) * Complex64::from_polar(1.0, phi)
        + k * Complex64::from_polar(1.0, -(1.0 - k) * phi / k)
}

/// Fits the deterministic hypocycloid (rolling radius from the measured
/// turning radius, phase from the tangency angle) to one inner-tangency
/// arc: a path running from one boundary approach through its radial
/// minimum to another boundary approach.
pub fn hypocycloid_fit(path: &GeodesicPath) -> Result<HypocycloidFit> {
    use num_complex::Complex64;

    if path.samples().len() < 16 {
        return Err(Error::IncompleteArc);
    }
    if path.first().clairaut_constant().abs() < 1e-12 {
        return Err(Error::RadialTrajectory);
    }
    let rho_first = path.first().point.rho();
    let rho_last = path
        .boundary_hit()
        .map(|b| b.state.point.rho())
        .unwrap_or_else(|| path.last().point.rho());
    let near = BOUNDARY_RHO - 1e-4;
    if rho_first < near || rho_last < near {
        return Err(Error::IncompleteArc);
    }

    let (_, rho_min) = path.refined_min_rho();
    let jmin = path
        .samples()
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.point.rho().partial_cmp(&b.1 .1.point.rho()).unwrap())
        .map(|(j, _)| j)
        .unwrap();
    if jmin == 0 || jmin + 1 == path.samples().len() {
        return Err(Error::IncompleteArc);
    }

    let k = (1.0 - rho_min) / 2.0;
    let theta = path.unwrapped_theta();
    let rho: Vec<f64> = path
        .samples()
        .iter()
        .map(|(_, st)| st.point.rho())
        .collect();

    // sub-sample offset of the minimum from the rho parabola
    let (r1, r2, r3) = (rho[jmin - 1], rho[jmin], rho[jmin + 1]);
    let denom = r1 - 2.0 * r2 + r3;
    let delta = if denom > 0.0 {
        (0.5 * (r1 - r3) / denom).clamp(-0.5, 0.5)
    } else {
        0.0
    };
    let theta_star = theta[jmin] + delta * 0.5 * (theta[jmin + 1] - theta[jmin - 1]);

    // positions and cumulative chordal arc length
    let pts: Vec<Complex64> = path
        .samples()
        .iter()
        .map(|(_, st)| Complex64::from_polar(st.point.rho(), st.point.theta()))
        .collect();
    let mut cum = Vec::with_capacity(pts.len());
    cum.push(0.0);
    for j in 1..pts.len() {
        cum.push(cum[j - 1] + (pts[j] - pts[j - 1]).norm());
    }
    let ell_min = if delta >= 0.0 {
        cum[jmin] + delta * (cum[jmin + 1] - cum[jmin])
    } else {
        cum[jmin] + delta * (cum[jmin] - cum[jmin - 1])
    };

    // orientation: mirror the reference curve when theta decreases
    let orient = path.samples()[jmin].1.velocity.dtheta.signum();
    let phase = theta_star - orient * std::f64::consts::PI * k;
    let rot = Complex64::from_polar(1.0, phase);

    let mut max_dev: f64 = 0.0;
    for j in 0..pts.len() {
        let ell = cum[j] - ell_min;
        let z = hypocycloid_at_arc(k, ell);
        let fitted = if orient >= 0.0 { rot * z } else { rot * z.conj() };
        max_dev = max_dev.max((pts[j] - fitted).norm());
    }

    Ok(HypocycloidFit {
        rolling_radius: k,
        phase,
        max_deviation: max_dev,
    })
}

/// Samples the fitted hypocycloid arc for display: `n` points over one
/// inner-tangency arc, rotated by the fit's phase, mirrored when the
/// trajectory runs clockwise (`orient < 0`).
pub fn hypocycloid_curve(fit: &HypocycloidFit, orient: f64, n: usize) -> Vec<(f64, f64)> {
    use num_complex::Complex64;
    let k = fit.rolling_radius;
    let rot = Complex64::from_polar(1.0, fit.phase);
    (0..n)
        .map(|i| {
            let phi = std::f64::consts::TAU * k * i as f64 / (n - 1) as f64;
            let z = (1.0 - k) * Complex64::from_polar(1.0, phi)
                + k * Complex64::from_polar(1.0, -(1.0 - k) * phi / k);
            let w = if orient >= 0.0 { rot * z } else { rot * z.conj() };
            (w.re, w.im)
        })
        .collect()
}

/// CSV export: `s,t,rho,theta,dt,drho,dtheta,speed,clairaut_c` per sample,
/// with a schema header comment.
pub fn path_csv(path: &GeodesicPath) -> String {
    let mut out =
        String::from("# moebius-kinetics path v1\ns,t,rho,theta,dt,drho,dtheta,speed,clairaut_c\n");
    for (s, st) in path.samples() {
        out.push_str(&format!(
            "{s},{},{},{},{},{},{},{},{}\n",
            st.point.t(),
            st.point.rho(),
            st.point.theta(),
            st.velocity.dt,
            st.velocity.drho,
            st.velocity.dtheta,
            st.speed(),
            st.clairaut_constant(),
        ));
    }
    if let Some(hit) = path.boundary_hit() {
        out.push_str(&format!("# boundary reached at s={}\n", hit.arc_length));
    }
    out
}
