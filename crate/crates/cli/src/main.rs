//! Command-line front end: metric checks, geodesic integration,
//! validation reports, motion energy traces, and SVG plots.
//!
//! Exit codes: 0 success, 1 tolerance failure, 2 usage or precondition
//! error (clap also exits 2 on bad flags).

#![allow(clippy::needless_range_loop)]

mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use moebius_kinetics::geodesic::BOUNDARY_RHO;
use moebius_kinetics::validation::{run_all, run_suite, SuiteReport, SUITE_NAMES};
use moebius_kinetics::*;

#[derive(Parser)]
#[command(
    name = "moebius-kinetics",
    version,
    about = "Kinetic-energy geometry of the Moebius group of the circle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the quadrature Gram matrix at (1, r) with its closed form
    Metric {
        /// Radial coordinate, 0 < r < 1
        #[arg(long)]
        r: f64,
        /// Quadrature node count (even, >= 8)
        #[arg(long, default_value_t = 256)]
        nodes: usize,
        /// Also write the three coordinate-field samples as CSV
        /// (suffixes .t.csv, .rho.csv, .theta.csv)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate a geodesic and write the sampled path
    Geodesic {
        /// Starting radius, 0 < r < 1
        #[arg(long)]
        r: f64,
        /// Clairaut constant (angular momentum); 0 gives a radial ray
        #[arg(long, default_value_t = 0.0)]
        c: f64,
        /// Disc-factor speed
        #[arg(long, default_value_t = 1.0)]
        v: f64,
        /// Circle-factor speed
        #[arg(long, default_value_t = 0.0)]
        dt: f64,
        /// Arc-parameter length to integrate
        #[arg(long, default_value_t = 2.0)]
        length: f64,
        /// Integration step (at most 1e-3)
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
        /// Start moving outward instead of inward
        #[arg(long)]
        outward: bool,
        #[arg(long, default_value = "geodesic.csv")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = PathFormat::Csv)]
        format: PathFormat,
    },
    /// Run verification suites and emit a JSON report
    Validate {
        /// Suite name, or "all"
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for the randomized checks
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Quadrature node count
        #[arg(long, default_value_t = 256)]
        nodes: usize,
        /// Report file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the energy trace and action of a motion JSON file
    Energy {
        /// Motion file: {"times": [...], "maps": [{u_re,...}, ...]}
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 256)]
        nodes: usize,
        /// Trace CSV (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a path CSV as a static SVG
    Plot {
        /// Path file written by the geodesic subcommand
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "plot.svg")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Metric { r, nodes, out } => cmd_metric(r, nodes, out),
        Command::Geodesic {
            r,
            c,
            v,
            dt,
            length,
            step,
            outward,
            out,
            format,
        } => cmd_geodesic(r, c, v, dt, length, step, outward, out, format),
        Command::Validate {
            suite,
            seed,
            nodes,
            out,
        } => cmd_validate(&suite, seed, nodes, out),
        Command::Energy { input, nodes, out } => cmd_energy(&input, nodes, out),
        Command::Plot { input, out } => plot::cmd_plot(&input, &out),
    };
    ExitCode::from(code)
}

fn usage_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    2
}

const GRAM_TOLERANCE: f64 = 1e-10;

fn cmd_metric(r: f64, nodes: usize, out: Option<PathBuf>) -> u8 {
    if !(r > 0.0 && r < 1.0) {
        return usage_error(format!("r = {r} must satisfy 0 < r < 1"));
    }
    let quad = match QuadratureRule::new(nodes) {
        Ok(q) => q,
        Err(e) => return usage_error(e),
    };
    let point = ProductPoint::new(0.0, r, 0.0).expect("r validated");
    let gram = gram_matrix(&f_map(&point), &quad).expect("r > 0");
    let w = 1.0 - r * r;
    let target = [1.0, 2.0 / w, 2.0 * r * r / w];

    println!("gram matrix at (1, {r}) with n = {nodes}:");
    for row in &gram {
        println!("  [{:>22.16} {:>22.16} {:>22.16}]", row[0], row[1], row[2]);
    }
    println!(
        "closed-form target: diag({:.12}, {:.12}, {:.12})",
        target[0], target[1], target[2]
    );
    let mut err: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let t = if i == j { target[i] } else { 0.0 };
            err = err.max((gram[i][j] - t).abs());
        }
    }
    println!("max entrywise error: {err:.3e} (tolerance {GRAM_TOLERANCE:.0e})");

    if let Some(base) = out {
        let (x, y, z) = coordinate_fields(r, &quad).expect("r validated");
        for (field, name) in [(&x, "t"), (&y, "rho"), (&z, "theta")] {
            let path = base.with_extension(format!("{name}.csv"));
            if let Err(e) = std::fs::write(&path, field_csv(field, &quad)) {
                return usage_error(format!("cannot write {}: {e}", path.display()));
            }
            println!("wrote {}", path.display());
        }
        let mut gram_csv = String::from("# moebius-kinetics gram v1\ng_t,g_rho,g_theta\n");
        for row in &gram {
            gram_csv.push_str(&format!("{},{},{}\n", row[0], row[1], row[2]));
        }
        let path = base.with_extension("gram.csv");
        if let Err(e) = std::fs::write(&path, gram_csv) {
            return usage_error(format!("cannot write {}: {e}", path.display()));
        }
        println!("wrote {}", path.display());
    }

    if err < GRAM_TOLERANCE {
        0
    } else {
        eprintln!("tolerance exceeded: quadrature truncation at n = {nodes} near the boundary");
        1
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_geodesic(
    r: f64,
    c: f64,
    v: f64,
    dt: f64,
    length: f64,
    step: f64,
    outward: bool,
    out: PathBuf,
    format: PathFormat,
) -> u8 {
    let mut state = match clairaut_initial_state(r, c, v, !outward) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    state.velocity.dt = dt;
    let state = match GeodesicState::new(state.point, state.velocity) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let path = match integrate(&state, length, step) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };

    let v0 = path.first().speed();
    let c0 = path.first().clairaut_constant();
    let mut speed_drift: f64 = 0.0;
    let mut c_drift: f64 = 0.0;
    for (_, st) in path.samples() {
        speed_drift = speed_drift.max((st.speed() - v0).abs());
        c_drift = c_drift.max((st.clairaut_constant() - c0).abs());
    }
    let (_, min_rho) = path.refined_min_rho();

    println!(
        "integrated {} samples (length {length}, step {step})",
        path.samples().len()
    );
    println!("conservation drift: speed {speed_drift:.3e}, clairaut {c_drift:.3e}");
    println!("min rho {min_rho:.6}");
    if c != 0.0 {
        println!("turning radius c/sqrt(2 v^2 + c^2) = {:.6}", turning_radius(c, v));
    }
    match path.boundary_hit() {
        Some(hit) => println!(
            "boundary rho = {BOUNDARY_RHO} reached at s = {:.9}; integration stopped early",
            hit.arc_length
        ),
        None => println!("boundary not reached"),
    }

    let contents = match format {
        PathFormat::Csv => path_csv(&path),
        PathFormat::Json => path_json(&path),
    };
    if let Err(e) = std::fs::write(&out, contents) {
        return usage_error(format!("cannot write {}: {e}", out.display()));
    }
    println!("wrote {}", out.display());
    0
}

fn path_json(path: &GeodesicPath) -> String {
    let samples: Vec<serde_json::Value> = path
        .samples()
        .iter()
        .map(|(s, st)| {
            serde_json::json!({
                "s": s,
                "t": st.point.t(),
                "rho": st.point.rho(),
                "theta": st.point.theta(),
                "dt": st.velocity.dt,
                "drho": st.velocity.drho,
                "dtheta": st.velocity.dtheta,
                "speed": st.speed(),
                "clairaut_c": st.clairaut_constant(),
            })
        })
        .collect();
    let report = serde_json::json!({
        "schema": "moebius-kinetics path v1",
        "samples": samples,
        "boundary_arc_length": path.boundary_hit().map(|h| h.arc_length),
    });
    serde_json::to_string_pretty(&report).expect("report serialization cannot fail")
}

fn cmd_validate(suite: &str, seed: u64, nodes: usize, out: Option<PathBuf>) -> u8 {
    let reports: Vec<SuiteReport> = if suite == "all" {
        match run_all(seed, nodes) {
            Ok(r) => r,
            Err(e) => return usage_error(e),
        }
    } else {
        match run_suite(suite, seed, nodes) {
            Ok(r) => vec![r],
            Err(e) => {
                let code = usage_error(&e);
                eprintln!("known suites: all, {}", SUITE_NAMES.join(", "));
                return code;
            }
        }
    };

    for report in &reports {
        eprintln!(
            "suite {:12} {} ({} checks)",
            report.suite,
            if report.pass { "PASS" } else { "FAIL" },
            report.checks.len()
        );
        for check in &report.checks {
            if !check.pass {
                eprintln!(
                    "  FAIL {}: value {:.3e} must be {} {:.1e}",
                    check.name,
                    check.value,
                    match check.requirement {
                        validation::Requirement::Below => "below",
                        validation::Requirement::Above => "above",
                    },
                    check.tolerance
                );
            }
        }
    }

    let pass = reports.iter().all(|r| r.pass);
    let doc = serde_json::json!({
        "schema": "moebius-kinetics report v1",
        "seed": seed,
        "nodes": nodes,
        "pass": pass,
        "suites": reports,
    });
    let text = serde_json::to_string_pretty(&doc).expect("report serialization cannot fail");
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, text) {
                return usage_error(format!("cannot write {}: {e}", p.display()));
            }
            eprintln!("wrote {}", p.display());
        }
        None => println!("{text}"),
    }
    u8::from(!pass)
}

fn cmd_energy(input: &PathBuf, nodes: usize, out: Option<PathBuf>) -> u8 {
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => return usage_error(format!("cannot read {}: {e}", input.display())),
    };
    let motion = match SampledMotion::from_json(&text) {
        Ok(m) => m,
        Err(e) => return usage_error(format!("malformed motion file: {e}")),
    };
    let quad = match QuadratureRule::new(nodes) {
        Ok(q) => q,
        Err(e) => return usage_error(e),
    };
    let trace = energy_trace(&motion, &quad);
    eprintln!(
        "action over [{}, {}]: {:.12}",
        motion.times()[0],
        motion.times()[motion.len() - 1],
        action(&motion, &quad)
    );
    let csv = trace.to_csv(&motion);
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, csv) {
                return usage_error(format!("cannot write {}: {e}", p.display()));
            }
            eprintln!("wrote {}", p.display());
        }
        None => print!("{csv}"),
    }
    0
}
