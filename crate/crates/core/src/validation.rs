//! Structured verification suites behind the `validate` CLI command.
//!
//! Each suite re-measures one slice of the library against its closed
//! forms and conserved quantities and returns machine-readable checks.
//! A check records what was measured, the bound it must stay below (or
//! above), and the verdict; nothing is clamped or hidden, so a check
//! near its tolerance reports exactly how near.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geodesic::{
    clairaut_initial_state, hypocycloid_fit, integrate, trajectory_residual, turning_radius,
    GeodesicState, TrajectoryForm, BOUNDARY_RHO,
};
use crate::kinetic::{gram_matrix, induced_field, norm_squared, ProductTangent};
use crate::moebius::{DiscPoint, MoebiusMap, UnitComplex};
use crate::motion::{
    action, energy_trace, force_free_residual, kinetic_energy, kinetic_energy_lagrangian,
    total_mass, SampledMotion,
};
use crate::product::{
    curvature_numeric, f_inverse, f_map, gaussian_curvature, metric_tensor, radial_length,
    ProductPoint,
};
use crate::quadrature::QuadratureRule;
use num_complex::Complex64;

/// Residual below which a motion is accepted as force free, calibrated
/// for motions of duration 1 sampled at step 1e-3.
pub const CRITICAL_RESIDUAL: f64 = 1e-5;

/// Residual above which a motion is rejected as not force free, for
/// interior coordinate bumps of amplitude 0.01.
pub const NONCRITICAL_RESIDUAL: f64 = 1e-2;

/// Which side of the tolerance a check must land on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Requirement {
    Below,
    Above,
}

/// One measured quantity with its bound and verdict.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub requirement: Requirement,
    pub pass: bool,
}

impl Check {
    fn below(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            requirement: Requirement::Below,
            pass: value < tolerance,
        }
    }

    fn above(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            requirement: Requirement::Above,
            pass: value > tolerance,
        }
    }
}

/// All checks of one suite plus free-form findings (e.g. the trajectory
/// equation verdict).
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>, notes: Vec<String>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            suite: suite.to_string(),
            checks,
            notes,
            pass,
        }
    }
}

/// Suite names accepted by [`run_suite`], in execution order.
pub const SUITE_NAMES: &[&str] = &[
    "group",
    "metric",
    "curvature",
    "geodesic",
    "clairaut",
    "energy",
    "criticality",
    "hypocycloid",
];

/// Runs one named suite.
pub fn run_suite(name: &str, seed: u64, nodes: usize) -> Result<SuiteReport> {
    match name {
        "group" => Ok(group_suite(seed)),
        "metric" => metric_suite(seed, nodes),
        "curvature" => Ok(curvature_suite()),
        "geodesic" => geodesic_suite(),
        "clairaut" => clairaut_suite(),
        "energy" => energy_suite(nodes),
        "criticality" => criticality_suite(seed),
        "hypocycloid" => hypocycloid_suite(),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// Runs every suite.
pub fn run_all(seed: u64, nodes: usize) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, seed, nodes))
        .collect()
}

fn random_map(rng: &mut ChaCha8Rng, max_rho: f64) -> MoebiusMap {
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    let rho = rng.gen_range(0.0..max_rho);
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    MoebiusMap::new(
        UnitComplex::from_angle(t),
        DiscPoint::new(Complex64::from_polar(rho, theta)).expect("rho < 1"),
    )
}

fn roots_of_unity(n: usize) -> Vec<UnitComplex> {
    (0..n)
        .map(|k| UnitComplex::from_angle(std::f64::consts::TAU * k as f64 / n as f64))
        .collect()
}

fn group_suite(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zs = roots_of_unity(64);
    let mut compose_err: f64 = 0.0;
    let mut inverse_err: f64 = 0.0;
    let mut modulus_err: f64 = 0.0;
    for _ in 0..1000 {
        let g = random_map(&mut rng, 0.9);
        let h = random_map(&mut rng, 0.9);
        let k = g.compose(&h);
        let round = g.compose(&g.inverse());
        for &z in &zs {
            let chained = g.apply(h.apply(z));
            compose_err = compose_err.max((k.apply(z).value() - chained.value()).norm());
            inverse_err = inverse_err.max((round.apply(z).value() - z.value()).norm());
            modulus_err = modulus_err.max((g.apply(z).value().norm() - 1.0).abs());
        }
    }
    SuiteReport::new(
        "group",
        vec![
            Check::below("compose pointwise vs chained apply (1000 random pairs)", compose_err, 1e-12),
            Check::below("inverse round trip pointwise", inverse_err, 1e-12),
            Check::below("apply preserves unit modulus", modulus_err, 1e-12),
        ],
        vec![],
    )
}

fn max_entrywise_gram_error(g: &MoebiusMap, quad: &QuadratureRule) -> Result<f64> {
    let m = gram_matrix(g, quad)?;
    let p = f_inverse(g);
    let target = metric_tensor(&p);
    let diag = [target.g_tt, target.g_rr, target.g_thth];
    let mut err: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let t = if i == j { diag[i] } else { 0.0 };
            err = err.max((m[i][j] - t).abs());
        }
    }
    Ok(err)
}

fn metric_suite(seed: u64, nodes: usize) -> Result<SuiteReport> {
    let quad = QuadratureRule::new(nodes)?;
    let mut checks = Vec::new();
    for r in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let g = f_map(&ProductPoint::new(0.0, r, 0.0)?);
        let err = max_entrywise_gram_error(&g, &quad)?;
        checks.push(Check::below(
            format!("gram matrix vs closed form at r={r}, n={nodes}"),
            err,
            1e-10,
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut iso_err: f64 = 0.0;
    let mut torus_err: f64 = 0.0;
    for _ in 0..50 {
        let t = rng.gen_range(0.0..std::f64::consts::TAU);
        let rho = rng.gen_range(0.05..0.9);
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let g = f_map(&ProductPoint::new(t, rho, theta)?);
        iso_err = iso_err.max(max_entrywise_gram_error(&g, &quad)?);

        let u = UnitComplex::from_angle(rng.gen_range(0.0..std::f64::consts::TAU));
        let v = UnitComplex::from_angle(rng.gen_range(0.0..std::f64::consts::TAU));
        let translated = MoebiusMap::rotation(u).compose(&g.compose(&MoebiusMap::rotation(v.conj())));
        let a = gram_matrix(&g, &quad)?;
        let b = gram_matrix(&translated, &quad)?;
        for i in 0..3 {
            for j in 0..3 {
                torus_err = torus_err.max((a[i][j] - b[i][j]).abs());
            }
        }
    }
    checks.push(Check::below(
        "isometry: gram vs metric tensor at 50 random points",
        iso_err,
        1e-9,
    ));
    checks.push(Check::below(
        "torus translates leave the gram matrix unchanged",
        torus_err,
        1e-9,
    ));
    Ok(SuiteReport::new("metric", checks, vec![]))
}

fn curvature_suite() -> SuiteReport {
    let mut checks = Vec::new();
    let mut order_dev: f64 = 0.0;
    for k in 1..=9 {
        let rho = k as f64 / 10.0;
        let exact = gaussian_curvature(rho);
        let num = curvature_numeric(rho, 1e-4).expect("step fits");
        checks.push(Check::below(
            format!("finite-difference curvature vs -1/(1-rho^2) at rho={rho}, h=1e-4"),
            (num - exact).abs(),
            1e-6,
        ));
        let e1 = (curvature_numeric(rho, 2e-3).expect("step fits") - exact).abs();
        let e2 = (curvature_numeric(rho, 1e-3).expect("step fits") - exact).abs();
        let order = (e1 / e2).log2();
        order_dev = order_dev.max((order - 2.0).abs());
    }
    checks.push(Check::below(
        "convergence order deviation from 2",
        order_dev,
        0.2,
    ));
    SuiteReport::new("curvature", checks, vec![])
}

fn geodesic_suite() -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    // incompleteness: radial ray reaches the stopping radius at the
    // closed-form arc length
    let radial = GeodesicState::new(
        ProductPoint::new(0.0, 0.0, 0.0)?,
        ProductTangent::new(0.0, 0.5f64.sqrt(), 0.0),
    )?;
    let path = integrate(&radial, 3.0, 1e-4)?;
    let hit = path.boundary_hit().expect("radial ray reaches the boundary");
    let expect = std::f64::consts::SQRT_2 * BOUNDARY_RHO.asin();
    checks.push(Check::below(
        "radial arc length to rho = 1 - 1e-6 vs sqrt(2) asin",
        (hit.arc_length - expect).abs(),
        1e-8,
    ));
    notes.push(format!(
        "inextendible radial ray length limit: pi/sqrt(2) = {:.9} (closed form {:.9})",
        std::f64::consts::PI / std::f64::consts::SQRT_2,
        radial_length(0.0, BOUNDARY_RHO)
    ));

    // conservation along an interior Clairaut path with a moving circle factor
    let mut st = clairaut_initial_state(0.75, 1.0, 1.0, true)?;
    st.velocity.dt = 0.5;
    let st = GeodesicState::new(st.point, st.velocity)?;
    let path = integrate(&st, 2.0, 1e-4)?;
    let v0 = path.first().speed();
    let c0 = path.first().clairaut_constant();
    let t0 = path.first().point.t();
    let dt0 = path.first().velocity.dt;
    let mut speed_drift: f64 = 0.0;
    let mut clairaut_drift: f64 = 0.0;
    let mut affine_defect: f64 = 0.0;
    for (s, state) in path.samples() {
        speed_drift = speed_drift.max((state.speed() - v0).abs());
        clairaut_drift = clairaut_drift.max((state.clairaut_constant() - c0).abs());
        let expected_t = t0 + dt0 * s;
        let diff = (state.point.t() - expected_t + std::f64::consts::PI)
            .rem_euclid(std::f64::consts::TAU)
            - std::f64::consts::PI;
        affine_defect = affine_defect.max(diff.abs());
    }
    checks.push(Check::below("speed drift over length 2 at step 1e-4", speed_drift, 1e-8));
    checks.push(Check::below("Clairaut-constant drift over length 2", clairaut_drift, 1e-8));
    checks.push(Check::below("circle factor affine in arc length", affine_defect, 1e-10));

    // turning radii
    for c in [0.25, 0.5, 1.0, 2.0] {
        let rho0 = if c < 1.9 { 0.85 } else { 0.9 };
        let st = clairaut_initial_state(rho0, c, 1.0, true)?;
        let path = integrate(&st, 2.0, 1e-4)?;
        let (_, measured) = path.refined_min_rho();
        checks.push(Check::below(
            format!("turning radius vs c/sqrt(2+c^2) at c={c}"),
            (measured - turning_radius(c, 1.0)).abs(),
            1e-6,
        ));
    }

    Ok(SuiteReport::new("geodesic", checks, notes))
}

/// Interior test paths for the trajectory-equation adjudication. The
/// c = 2 trajectory cannot stay interior for length 2 (its outward arc
/// from the turning circle to the boundary is only about 1.28), so it
/// uses a shorter run.
const ADJUDICATION_PATHS: &[(f64, f64, f64)] = &[
    (0.25, 0.45, 2.0),
    (0.5, 0.55, 2.0),
    (1.0, 0.75, 2.0),
    (2.0, 0.9, 1.2),
];

fn clairaut_suite() -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let mut standard_wins_everywhere = true;
    for &(c, rho0, length) in ADJUDICATION_PATHS {
        let st = clairaut_initial_state(rho0, c, 1.0, true)?;
        let path = integrate(&st, length, 1e-4)?;
        let standard = trajectory_residual(&path, TrajectoryForm::Standard)?;
        let paper = trajectory_residual(&path, TrajectoryForm::Paper)?;
        checks.push(Check::below(
            format!("standard-form residual on c={c} path"),
            standard.max_residual,
            1e-6,
        ));
        checks.push(Check::above(
            format!("paper-form residual on c={c} path"),
            paper.max_residual,
            1e-2,
        ));
        checks.push(Check::below(
            format!("fitted lambda vs v^2/c^2 at c={c}"),
            (standard.constant - 1.0 / (c * c)).abs(),
            1e-6,
        ));
        standard_wins_everywhere &=
            standard.max_residual < 1e-6 && paper.max_residual > 1e-2;
        notes.push(format!(
            "c={c}: standard form residual {:.3e} (lambda={:.9}), paper form residual {:.3e} (mu={:.6})",
            standard.max_residual, standard.constant, paper.max_residual, paper.constant
        ));
    }
    notes.push(if standard_wins_everywhere {
        "verdict: the standard Clairaut relation lambda G^2 = G + E (rho')^2 matches the \
         integrated geodesics; the published trajectory equation (its E and G interchanged) \
         does not. The constants are related by mu = 2 lambda - 1."
            .to_string()
    } else {
        "verdict: adjudication inconclusive".to_string()
    });
    Ok(SuiteReport::new("clairaut", checks, notes))
}

/// A geodesic of the product metric, pushed through F into a motion.
fn geodesic_motion(rho0: f64, c: f64, length: f64, step: f64) -> Result<SampledMotion> {
    let st = clairaut_initial_state(rho0, c, 1.0, true)?;
    let path = integrate(&st, length, step)?;
    let times = path.samples().iter().map(|(s, _)| *s).collect();
    let maps = path
        .samples()
        .iter()
        .map(|(_, st)| f_map(&st.point))
        .collect();
    SampledMotion::new(times, maps)
}

fn energy_suite(nodes: usize) -> Result<SuiteReport> {
    let quad = QuadratureRule::new(nodes)?;
    let mut checks = Vec::new();

    // the two energy integrals on a transvection and a generic line
    let transvection =
        SampledMotion::from_coords(-5e-3, 5e-3, 11, |t| (0.0, 0.5 + t, 0.0))?;
    let generic =
        SampledMotion::from_coords(-5e-3, 5e-3, 11, |t| (0.4 * t, 0.5 + 0.7 * t, -0.5 * t))?;
    let mut identity_err: f64 = 0.0;
    for motion in [&transvection, &generic] {
        let a = kinetic_energy(motion, 5, &quad)?;
        let b = kinetic_energy_lagrangian(motion, 5, &quad)?;
        identity_err = identity_err.max((a - b).abs());
    }
    checks.push(Check::below(
        "spatial vs label energy integral (change of variables)",
        identity_err,
        1e-8,
    ));

    // E = pi * |velocity|^2 in the metric
    let v = ProductTangent::new(0.4, 0.7, -0.5);
    let g = f_map(&ProductPoint::new(0.0, 0.5, 0.0)?);
    let metric_norm2 = norm_squared(&induced_field(&g, v, &quad), &quad);
    let e = kinetic_energy(&generic, 5, &quad)?;
    checks.push(Check::below(
        "kinetic energy vs pi * squared metric speed",
        (e - std::f64::consts::PI * metric_norm2).abs(),
        1e-8,
    ));

    // transported mass
    let mut mass_err: f64 = 0.0;
    for (rho, theta) in [(0.0, 0.0), (0.3, 1.0), (0.7, -2.0), (0.85, 0.4)] {
        let g = MoebiusMap::new(
            UnitComplex::from_angle(0.9),
            DiscPoint::new(Complex64::from_polar(rho, theta))?,
        );
        mass_err = mass_err.max((total_mass(&g, &quad) - std::f64::consts::TAU).abs());
    }
    checks.push(Check::below("total mass is 2 pi", mass_err, 1e-10));

    // unit-speed rotation has constant energy pi
    let rotation = SampledMotion::from_coords(0.0, 1.0, 1001, |t| (t, 0.0, 0.0))?;
    let trace = energy_trace(&rotation, &quad);
    let rot_err = trace
        .values()
        .iter()
        .map(|e| (e - std::f64::consts::PI).abs())
        .fold(0.0, f64::max);
    checks.push(Check::below("unit-speed rotation energy is pi", rot_err, 1e-11));
    checks.push(Check::below(
        "unit-speed rotation action over [0,1] is pi",
        (action(&rotation, &quad) - std::f64::consts::PI).abs(),
        1e-8,
    ));

    Ok(SuiteReport::new("energy", checks, vec![]))
}

/// Quadrature size for the criticality sweep. The motions stay well
/// inside the disc, where this size already integrates the energy to
/// machine accuracy, and the sweep is by far the heaviest suite.
const CRITICALITY_NODES: usize = 128;

fn criticality_suite(seed: u64) -> Result<SuiteReport> {
    let quad = QuadratureRule::new(CRITICALITY_NODES)?;
    let cases = [
        (0.6, 0.8),
        (0.5, 0.5),
        (0.7, 1.0),
        (0.4, 0.3),
        (0.65, 0.0), // radial
    ];
    let mut geo_worst: f64 = 0.0;
    let mut perturbed_best = f64::INFINITY;
    for (i, &(rho0, c)) in cases.iter().enumerate() {
        let motion = geodesic_motion(rho0, c, 1.0, 1e-3)?;
        let res = force_free_residual(&motion, 20, seed.wrapping_add(i as u64), &quad)?;
        geo_worst = geo_worst.max(res);

        let t0 = motion.times()[0];
        let duration = motion.duration();
        let bumped: Vec<MoebiusMap> = motion
            .times()
            .iter()
            .zip(motion.maps())
            .map(|(&t, g)| {
                let p = f_inverse(g);
                let b = 0.01 * (std::f64::consts::PI * (t - t0) / duration).sin();
                MoebiusMap::new(
                    UnitComplex::from_angle(p.t()),
                    DiscPoint::new(Complex64::from_polar(p.rho() + b, p.theta()))
                        .expect("bump stays inside the disc"),
                )
            })
            .collect();
        let perturbed = SampledMotion::new(motion.times().to_vec(), bumped)?;
        let res = force_free_residual(&perturbed, 20, seed.wrapping_add(i as u64), &quad)?;
        perturbed_best = perturbed_best.min(res);
    }
    Ok(SuiteReport::new(
        "criticality",
        vec![
            Check::below(
                "worst geodesic residual over 5 motions x 20 variations",
                geo_worst,
                CRITICAL_RESIDUAL,
            ),
            Check::above(
                "smallest residual of 0.01-bump perturbed motions",
                perturbed_best,
                NONCRITICAL_RESIDUAL,
            ),
        ],
        vec![],
    ))
}

fn hypocycloid_suite() -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for c in [0.5, 1.0, 2.0] {
        let st = clairaut_initial_state(BOUNDARY_RHO - 1e-6, c, 1.0, true)?;
        let path = integrate(&st, 8.0, 1e-4)?;
        match hypocycloid_fit(&path) {
            Ok(fit) => {
                let k_expect = (1.0 - turning_radius(c, 1.0)) / 2.0;
                checks.push(Check::below(
                    format!("hypocycloid deviation on c={c} arc"),
                    fit.max_deviation,
                    1e-3,
                ));
                checks.push(Check::below(
                    format!("rolling radius vs (1 - rho_min)/2 at c={c}"),
                    (fit.rolling_radius - k_expect).abs(),
                    1e-6,
                ));
                notes.push(format!(
                    "c={c}: k={:.6}, max deviation {:.3e}",
                    fit.rolling_radius, fit.max_deviation
                ));
            }
            Err(e) => {
                // a failed fit is a finding, not a crash
                checks.push(Check::below(format!("hypocycloid fit on c={c} arc"), f64::INFINITY, 1e-3));
                notes.push(format!("c={c}: fit not applicable: {e}"));
            }
        }
    }
    Ok(SuiteReport::new("hypocycloid", checks, notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(
            run_suite("nope", 7, 64),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn group_suite_passes() {
        assert!(run_suite("group", 7, 64).unwrap().pass);
    }

    #[test]
    fn curvature_suite_passes_except_at_the_boundary_point() {
        // second-order truncation of the curvature formula cannot reach
        // 1e-6 at rho=0.9 with h=1e-4 (the constant is ~5e-6 there);
        // every interior point passes and the order is 2
        let report = run_suite("curvature", 7, 64).unwrap();
        for check in &report.checks {
            if check.name.contains("rho=0.9") {
                assert!(!check.pass);
                assert!((check.value - 5.28e-6).abs() < 5e-7, "value {}", check.value);
            } else {
                assert!(check.pass, "{} failed: {}", check.name, check.value);
            }
        }
    }
}
