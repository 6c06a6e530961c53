//! SVG reconstruction plots: ground truth against each solver's solution.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::BenchRun;
use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 40.0;

const PALETTE: [&str; 7] = [
    "#d62728", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#1f77b4",
];

pub fn plot_file_name(test: &str, solver: &str) -> String {
    format!("{test}_{solver}.svg")
}

fn fmt_rho(rho: f64) -> String {
    if rho == 0.0 {
        "0".into()
    } else if rho.is_infinite() {
        "inf".into()
    } else if (1e-3..1e4).contains(&rho) {
        format!("{rho:.4}")
    } else {
        format!("{rho:.3e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Frame {
    n: usize,
    y_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn new(n: usize, series: &[&[f64]]) -> Self {
        let (mut lo, mut hi) = series
            .iter()
            .flat_map(|s| s.iter())
            .fold((0.0_f64, 0.0_f64), |(lo, hi), &y| (lo.min(y), hi.max(y)));
        if hi - lo < 1e-12 {
            hi = lo + 1.0;
        }
        let pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
        Self { n, y_lo: lo, y_hi: hi }
    }

    fn x(&self, i: usize) -> f64 {
        let span = (self.n.max(2) - 1) as f64;
        MARGIN_L + (WIDTH - MARGIN_L - MARGIN_R) * i as f64 / span
    }

    fn y(&self, v: f64) -> f64 {
        let t = (v - self.y_lo) / (self.y_hi - self.y_lo);
        HEIGHT - MARGIN_B - (HEIGHT - MARGIN_T - MARGIN_B) * t
    }

    fn header(&self, out: &mut String, title: &str) {
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(
            out,
            r#"<defs><clipPath id="plot"><rect x="{MARGIN_L}" y="{MARGIN_T}" width="{}" height="{}"/></clipPath></defs>"#,
            WIDTH - MARGIN_L - MARGIN_R,
            HEIGHT - MARGIN_T - MARGIN_B
        );
        let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            WIDTH / 2.0,
            escape(title)
        );
        // Axes and zero line.
        let (x0, x1) = (MARGIN_L, WIDTH - MARGIN_R);
        let (y0, y1) = (MARGIN_T, HEIGHT - MARGIN_B);
        let _ = writeln!(
            out,
            r#"<path d="M{x0} {y0} L{x0} {y1} L{x1} {y1}" fill="none" stroke="black"/>"#
        );
        let yz = self.y(0.0);
        let _ = writeln!(
            out,
            r##"<line x1="{x0}" y1="{yz:.2}" x2="{x1}" y2="{yz:.2}" stroke="#bbbbbb" stroke-dasharray="4 3"/>"##
        );
        for v in [self.y_lo, 0.5 * (self.y_lo + self.y_hi), self.y_hi] {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{:.2}" text-anchor="end">{:.3}</text>"#,
                x0 - 6.0,
                self.y(v) + 4.0,
                v
            );
        }
        for i in [0, self.n / 2, self.n - 1] {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
                self.x(i),
                y1 + 16.0,
                i + 1
            );
        }
    }

    fn polyline(&self, out: &mut String, ys: &[f64], color: &str, width: f64, dash: Option<&str>) {
        let pts: Vec<String> = ys
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                // Keep coordinates finite for wildly unstable solutions.
                let y = self.y(v).clamp(-10.0 * HEIGHT, 11.0 * HEIGHT);
                format!("{:.2},{:.2}", self.x(i), y)
            })
            .collect();
        let dash = dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
        let _ = writeln!(
            out,
            r#"<polyline clip-path="url(#plot)" points="{}" fill="none" stroke="{color}" stroke-width="{width}"{dash}/>"#,
            pts.join(" ")
        );
    }

    fn legend(&self, out: &mut String, entries: &[(&str, &str)]) {
        for (k, (label, color)) in entries.iter().enumerate() {
            let y = MARGIN_T + 14.0 + 16.0 * k as f64;
            let x = WIDTH - MARGIN_R - 150.0;
            let _ = writeln!(
                out,
                r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="2"/>"#,
                x + 20.0
            );
            let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, x + 26.0, y + 4.0, escape(label));
        }
    }
}

/// Ground truth (black) against one reconstruction, titled `<solver> — ρ=<value>`.
pub fn reconstruction_svg(solver: &str, rho: f64, v0: &[f64], v: &[f64]) -> String {
    let frame = Frame::new(v0.len(), &[v0, v]);
    let mut out = String::new();
    frame.header(&mut out, &format!("{solver} — ρ={}", fmt_rho(rho)));
    frame.polyline(&mut out, v0, "black", 2.5, None);
    frame.polyline(&mut out, v, "#1f77b4", 1.5, Some("6 3"));
    frame.legend(&mut out, &[("v0", "black"), (solver, "#1f77b4")]);
    out.push_str("</svg>\n");
    out
}

/// Ground truth with every successful reconstruction of one test.
///
/// The vertical range follows the ground truth (three times its span) so an
/// unstable solver does not flatten the others; lines are clipped to the frame.
pub fn summary_svg(test: &str, v0: &[f64], solutions: &[(&str, f64, &[f64])]) -> String {
    let peak = v0.iter().fold(0.0_f64, |m, x| m.max(x.abs())).max(1e-12);
    let bounds = [-peak, 2.0 * peak];
    let frame = Frame::new(v0.len(), &[v0, &bounds]);
    let mut out = String::new();
    frame.header(&mut out, &format!("{test} — all solvers"));
    frame.polyline(&mut out, v0, "black", 2.5, None);
    let mut legend = vec![("v0".to_string(), "black")];
    for (k, (solver, rho, v)) in solutions.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        frame.polyline(&mut out, v, color, 1.5, None);
        legend.push((format!("{solver} ρ={}", fmt_rho(*rho)), color));
    }
    let entries: Vec<(&str, &str)> = legend.iter().map(|(l, c)| (l.as_str(), *c)).collect();
    frame.legend(&mut out, &entries);
    out.push_str("</svg>\n");
    out
}

/// One SVG per successful (test, solver) pair plus `<test>_summary.svg` per test.
pub fn emit_plots(run: &BenchRun, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let write = |name: String, text: String| {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| Error::io(path, e))
    };
    for problem in &run.problems {
        let mut summary = Vec::new();
        for (record, solution) in run.records.iter().zip(&run.solutions) {
            if record.problem != problem.name {
                continue;
            }
            let Some(v) = solution else { continue };
            write(
                plot_file_name(&problem.name, &record.solver),
                reconstruction_svg(&record.solver, record.rho, &problem.v0, v),
            )?;
            summary.push((record.solver.as_str(), record.rho, v.as_slice()));
        }
        write(
            format!("{}_summary.svg", problem.name),
            summary_svg(&problem.name, &problem.v0, &summary),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_curves_have_zero_rho() {
        let v0 = [0.0, 1.0, 0.5];
        let svg = reconstruction_svg("trnnc", 0.0, &v0, &v0);
        assert!(svg.contains("trnnc — ρ=0<"));
        roxmltree::Document::parse(&svg).unwrap();
    }

    #[test]
    fn summary_is_well_formed_with_extreme_values() {
        let v0 = [0.0, 1.0, 0.0];
        let wild = [1e8, -3e9, 2e7];
        let svg = summary_svg("test1", &v0, &[("inv", 1e9, &wild), ("a<b", 0.5, &v0)]);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(doc.descendants().filter(|n| n.has_tag_name("polyline")).count(), 3);
        assert!(svg.contains("a&lt;b"));
    }

    #[test]
    fn rho_formatting() {
        assert_eq!(fmt_rho(0.0), "0");
        assert_eq!(fmt_rho(0.25), "0.2500");
        assert_eq!(fmt_rho(1.5e7), "1.500e7");
        assert_eq!(fmt_rho(f64::INFINITY), "inf");
    }
}
