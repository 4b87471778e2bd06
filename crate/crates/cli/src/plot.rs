//! Path-file parsing and SVG rendering.

use std::path::Path;

use moebius_kinetics::geodesic::hypocycloid_curve;
use moebius_kinetics::{
    hypocycloid_fit, GeodesicPath, GeodesicState, ProductPoint, ProductTangent,
};

pub fn cmd_plot(input: &Path, out: &Path) -> u8 {
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", input.display());
            return 2;
        }
    };
    let path = match parse_path_csv(&text) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: malformed path file {}: {msg}", input.display());
            return 2;
        }
    };
    let svg = render_svg(&path);
    if let Err(e) = std::fs::write(out, svg) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return 2;
    }
    println!("wrote {}", out.display());
    0
}

/// Parses the CSV written by the geodesic subcommand back into a path.
fn parse_path_csv(text: &str) -> Result<GeodesicPath, String> {
    let mut samples = Vec::new();
    let mut saw_header = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with("s,") {
            if line != "s,t,rho,theta,dt,drho,dtheta,speed,clairaut_c" {
                return Err(format!("unexpected header {line:?}"));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("bad number in {line:?}: {e}"))?;
        if fields.len() != 9 {
            return Err(format!("expected 9 columns, got {}", fields.len()));
        }
        let point = ProductPoint::new(fields[1], fields[2], fields[3])
            .map_err(|e| e.to_string())?;
        let velocity = ProductTangent::new(fields[4], fields[5], fields[6]);
        let state = GeodesicState::new(point, velocity).map_err(|e| e.to_string())?;
        samples.push((fields[0], state));
    }
    if !saw_header {
        return Err("missing header row".to_string());
    }
    GeodesicPath::from_samples(samples, None).map_err(|e| e.to_string())
}

fn polyline(points: impl Iterator<Item = (f64, f64)>, style: &str) -> String {
    let coords: Vec<String> = points.map(|(x, y)| format!("{x:.6},{y:.6}")).collect();
    format!(
        "  <polyline fill=\"none\" {style} points=\"{}\"/>\n",
        coords.join(" ")
    )
}

fn render_svg(path: &GeodesicPath) -> String {
    let mut body = String::new();
    // unit circle boundary
    body.push_str(
        "  <circle r=\"1\" fill=\"none\" stroke=\"#202020\" stroke-width=\"0.008\"/>\n",
    );

    // inner tangency circle for non-radial trajectories
    let c0 = path.first().clairaut_constant();
    let (min_idx, _) = path
        .samples()
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.point.rho().partial_cmp(&b.1 .1.point.rho()).unwrap())
        .expect("path is nonempty");
    let (_, min_rho) = path.refined_min_rho();
    if c0.abs() > 1e-12 && min_rho > 1e-3 {
        body.push_str(&format!(
            "  <circle r=\"{min_rho:.6}\" fill=\"none\" stroke=\"#909090\" \
             stroke-width=\"0.005\" stroke-dasharray=\"0.03,0.02\"/>\n"
        ));
    }

    // trajectory in the disc
    body.push_str(&polyline(
        path.samples().iter().map(|(_, st)| {
            let (s, c) = st.point.theta().sin_cos();
            (st.point.rho() * c, st.point.rho() * s)
        }),
        "stroke=\"#1f77b4\" stroke-width=\"0.006\"",
    ));

    // hypocycloid overlay when the deterministic fit is tight
    if let Ok(fit) = hypocycloid_fit(path) {
        if fit.max_deviation < 1e-3 {
            let orient = path.samples()[min_idx].1.velocity.dtheta;
            body.push_str(&polyline(
                hypocycloid_curve(&fit, orient, 512).into_iter(),
                "stroke=\"#d62728\" stroke-width=\"0.004\" stroke-dasharray=\"0.015,0.015\"",
            ));
        }
    }

    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <!-- moebius-kinetics plot v1 -->\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.15 -1.15 2.3 2.3\" \
         width=\"600\" height=\"600\">\n\
         <g transform=\"scale(1,-1)\">\n{body}</g>\n</svg>\n"
    )
}
