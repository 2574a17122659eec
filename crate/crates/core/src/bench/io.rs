//! Results CSV, profile CSV and profile SVG.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::profile::{Metric, ProfileCurve};
use crate::error::{BenchError, ConfigError};
use crate::solver::{RunRecord, Status};

/// Column order of the results file.
pub const RESULTS_HEADER: [&str; 18] = [
    "problem", "n", "m", "solver", "niter", "nfeval", "nmvp", "time_s", "fvalue", "gnorm",
    "status", "theta", "gamma", "rho", "l", "u", "eps", "kmax",
];

/// Column order of the profile file.
pub const PROFILE_HEADER: [&str; 4] = ["metric", "solver", "tau", "rho"];

const CONFIG_KEYS: [&str; 7] = ["theta", "gamma", "rho", "l", "u", "eps", "kmax"];

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> BenchError + '_ {
    move |source| BenchError::Csv {
        path: path.to_path_buf(),
        source,
    }
}

fn fingerprint_value<'a>(fingerprint: &'a str, key: &str) -> &'a str {
    fingerprint
        .split(';')
        .filter_map(|kv| kv.split_once('='))
        .find(|(k, _)| *k == key)
        .map_or("", |(_, v)| v)
}

/// The CSV fields of one record. Runs that did not converge leave the
/// numeric result columns empty.
pub fn record_fields(r: &RunRecord) -> Vec<String> {
    let mut row = vec![
        r.problem.clone(),
        r.n.to_string(),
        r.m.to_string(),
        r.solver.clone(),
    ];
    if r.converged() {
        row.extend([
            r.niter.to_string(),
            r.nfeval.to_string(),
            r.nmvp.to_string(),
            format!("{:?}", r.time_s),
            format!("{:?}", r.fvalue),
            format!("{:?}", r.gnorm),
        ]);
    } else {
        row.extend(std::iter::repeat_n(String::new(), 6));
    }
    row.push(r.status.to_string());
    row.extend(
        CONFIG_KEYS
            .iter()
            .map(|k| fingerprint_value(&r.config, k).to_string()),
    );
    row
}

/// Writes the results file.
pub fn emit_csv(records: &[RunRecord], path: &Path) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(RESULTS_HEADER).map_err(csv_err(path))?;
    for r in records {
        w.write_record(record_fields(r)).map_err(csv_err(path))?;
    }
    w.flush().map_err(|source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a results file. Empty numeric fields of failed runs come back as
/// zero counts and NaN values; the status is authoritative. The `config`
/// field holds the configuration columns as `key=value` pairs and `x` is
/// empty.
pub fn read_csv(path: &Path) -> Result<Vec<RunRecord>, BenchError> {
    let mut rdr = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let header = rdr.headers().map_err(csv_err(path))?.clone();
    if header.iter().ne(RESULTS_HEADER) {
        return Err(BenchError::Parse {
            path: path.to_path_buf(),
            line: 1,
            msg: format!("expected header `{}`", RESULTS_HEADER.join(",")),
        });
    }
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row.map_err(csv_err(path))?;
        let line = i + 2;
        let bad = |col: &str, v: &str| BenchError::Parse {
            path: path.to_path_buf(),
            line,
            msg: format!("bad `{col}` value `{v}`"),
        };
        let field = |idx: usize| row.get(idx).unwrap_or("");
        let int = |idx: usize| -> Result<u64, BenchError> {
            let v = field(idx);
            if v.is_empty() {
                return Ok(0);
            }
            v.parse().map_err(|_| bad(RESULTS_HEADER[idx], v))
        };
        let float = |idx: usize| -> Result<f64, BenchError> {
            let v = field(idx);
            if v.is_empty() {
                return Ok(f64::NAN);
            }
            v.parse().map_err(|_| bad(RESULTS_HEADER[idx], v))
        };
        let status: Status = field(10).parse().map_err(|_| bad("status", field(10)))?;
        let config = CONFIG_KEYS
            .iter()
            .zip(11..)
            .map(|(k, idx)| format!("{k}={}", field(idx)))
            .collect::<Vec<_>>()
            .join(";");
        out.push(RunRecord {
            problem: field(0).to_string(),
            n: int(1)? as usize,
            m: int(2)? as usize,
            solver: field(3).to_string(),
            niter: int(4)?,
            nfeval: int(5)?,
            nmvp: int(6)?,
            time_s: float(7)?,
            fvalue: float(8)?,
            gnorm: float(9)?,
            status,
            config,
            x: Vec::new(),
        });
    }
    Ok(out)
}

/// Writes curves as `metric,solver,tau,rho` rows.
pub fn write_profile_csv(curves: &[ProfileCurve], path: &Path) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(PROFILE_HEADER).map_err(csv_err(path))?;
    for c in curves {
        for &(tau, rho) in &c.points {
            w.write_record([
                c.metric.as_str(),
                &c.solver,
                &format!("{tau:?}"),
                &format!("{rho:?}"),
            ])
            .map_err(csv_err(path))?;
        }
    }
    w.flush().map_err(|source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a profile file back into curves, in file order.
pub fn read_profile_csv(path: &Path) -> Result<Vec<ProfileCurve>, BenchError> {
    let mut rdr = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let mut curves: Vec<ProfileCurve> = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row.map_err(csv_err(path))?;
        let bad = |msg: String| BenchError::Parse {
            path: path.to_path_buf(),
            line: i + 2,
            msg,
        };
        let metric: Metric = row.get(0).unwrap_or("").parse().map_err(bad)?;
        let solver = row.get(1).unwrap_or("");
        let num = |idx: usize| {
            let v = row.get(idx).unwrap_or("");
            v.parse::<f64>()
                .map_err(|_| bad(format!("bad number `{v}`")))
        };
        let point = (num(2)?, num(3)?);
        match curves.last_mut() {
            Some(c) if c.metric == metric && c.solver == solver => c.points.push(point),
            _ => curves.push(ProfileCurve {
                metric,
                solver: solver.to_string(),
                points: vec![point],
            }),
        }
    }
    Ok(curves)
}

/// Writes a profile as `.csv`, or as `.svg` plus a `.csv` with the same
/// stem. Returns the paths written.
pub fn emit_profile(curves: &[ProfileCurve], path: &Path) -> Result<Vec<PathBuf>, BenchError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => {
            write_profile_csv(curves, path)?;
            Ok(vec![path.to_path_buf()])
        }
        Some("svg") => {
            std::fs::write(path, render_svg(curves)).map_err(|source| BenchError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            let csv_path = path.with_extension("csv");
            write_profile_csv(curves, &csv_path)?;
            Ok(vec![path.to_path_buf(), csv_path])
        }
        _ => Err(ConfigError(format!(
            "profile output `{}` must end in .csv or .svg",
            path.display()
        ))
        .into()),
    }
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders step curves on a log2 `tau` axis, one polyline per solver.
pub fn render_svg(curves: &[ProfileCurve]) -> String {
    const W: f64 = 720.0;
    const H: f64 = 460.0;
    const LEFT: f64 = 70.0;
    const RIGHT: f64 = 190.0;
    const TOP: f64 = 50.0;
    const BOTTOM: f64 = 60.0;
    let plot_w = W - LEFT - RIGHT;
    let plot_h = H - TOP - BOTTOM;

    let tau_max = curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| p.0))
        .fold(1.0_f64, f64::max);
    let x_max = tau_max.log2().ceil().max(1.0);
    let px = |tau: f64| LEFT + plot_w * tau.max(1.0).log2() / x_max;
    let py = |rho: f64| TOP + plot_h * (1.0 - rho);

    let metric = curves.first().map_or("", |c| c.metric.as_str());
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="28" text-anchor="middle" font-size="16">Performance profile: {metric}</text>"#,
        LEFT + plot_w / 2.0
    );

    let step = (x_max / 10.0).ceil().max(1.0);
    let mut k = 0.0;
    while k <= x_max + 1e-9 {
        let x = LEFT + plot_w * k / x_max;
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#e0e0e0"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
            TOP + plot_h,
            TOP + plot_h + 18.0,
            2f64.powf(k)
        );
        k += step;
    }
    for i in 0..=4 {
        let rho = f64::from(i) / 4.0;
        let y = py(rho);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e0e0e0"/><text x="{:.2}" y="{:.2}" text-anchor="end">{rho}</text>"##,
            LEFT + plot_w,
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">tau (log2 scale)</text>"#,
        LEFT + plot_w / 2.0,
        H - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">rho(tau)</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut pts: Vec<(f64, f64)> = Vec::with_capacity(2 * c.points.len() + 2);
        let mut last = 0.0;
        for (j, &(tau, rho)) in c.points.iter().enumerate() {
            if j == 0 {
                pts.push((px(tau), py(rho)));
            } else {
                pts.push((px(tau), py(last)));
                pts.push((px(tau), py(rho)));
            }
            last = rho;
        }
        if pts.is_empty() {
            pts.push((px(1.0), py(0.0)));
        }
        pts.push((LEFT + plot_w, py(last)));
        let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"><title>{}</title></polyline>"#,
            list.join(" "),
            escape(&c.solver)
        );
        let ly = TOP + 10.0 + 20.0 * i as f64;
        let lx = W - RIGHT + 20.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            lx + 24.0,
            lx + 30.0,
            ly + 4.0,
            escape(&c.solver)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(solver: &str, points: Vec<(f64, f64)>) -> ProfileCurve {
        ProfileCurve {
            metric: Metric::Nmvp,
            solver: solver.into(),
            points,
        }
    }

    #[test]
    fn fingerprint_lookup() {
        let fp = "gamma=0.2;theta=0.0001;kmax=1000";
        assert_eq!(fingerprint_value(fp, "theta"), "0.0001");
        assert_eq!(fingerprint_value(fp, "kmax"), "1000");
        assert_eq!(fingerprint_value(fp, "eps"), "");
    }

    #[test]
    fn svg_has_one_polyline_per_solver() {
        let svg = render_svg(&[
            curve("a<b", vec![(1.0, 0.5), (3.0, 1.0)]),
            curve("c", vec![(1.0, 0.5)]),
            curve("d", vec![]),
        ]);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(svg.contains("a&lt;b"));
        assert!(svg.contains("Performance profile: nmvp"));
    }

    #[test]
    fn unknown_extension_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let r = emit_profile(&[curve("a", vec![(1.0, 1.0)])], &dir.path().join("p.png"));
        assert!(matches!(r, Err(BenchError::Config(_))));
    }
}
