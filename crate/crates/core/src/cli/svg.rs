//! Plain SVG output: polylines, ECDF steps and heatmap cells. Numbers are
//! printed at fixed precision, so equal inputs give equal bytes.

use super::output::PathRow;
use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 420.0;
const M: f64 = 48.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
    body: String,
}

fn range(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() || !hi.is_finite() {
        (0.0, 1.0)
    } else if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

impl Frame {
    fn new(x: (f64, f64), y: (f64, f64)) -> Frame {
        Frame { x, y, body: String::new() }
    }

    fn px(&self, x: f64) -> f64 {
        M + (x - self.x.0) / (self.x.1 - self.x.0) * (W - 2.0 * M)
    }

    fn py(&self, y: f64) -> f64 {
        H - M - (y - self.y.0) / (self.y.1 - self.y.0) * (H - 2.0 * M)
    }

    fn polyline(&mut self, pts: &[(f64, f64)], color: &str) {
        let mut s = String::new();
        for (i, &(x, y)) in pts.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{:.2},{:.2}", self.px(x), self.py(y));
        }
        let _ = writeln!(self.body, r#"<polyline fill="none" stroke="{color}" stroke-width="1" points="{s}"/>"#);
    }

    fn label(&mut self, i: usize, text: &str, color: &str) {
        let y = M + 14.0 * i as f64;
        let _ = writeln!(self.body, r#"<text x="{:.2}" y="{y:.2}" font-size="11" fill="{color}">{}</text>"#, W - M - 150.0, escape(text));
    }

    fn finish(self, title: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
        let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(s, r#"<text x="{M}" y="24" font-size="14">{}</text>"#, escape(title));
        let (x0, x1, y0, y1) = (M, W - M, M, H - M);
        let _ = writeln!(s, r#"<line x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}" stroke="black"/>"#);
        let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#);
        for (v, x) in [(self.x.0, x0), (self.x.1, x1)] {
            let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" font-size="10" text-anchor="middle">{v:.3}</text>"#, y1 + 14.0);
        }
        for (v, y) in [(self.y.0, y1), (self.y.1, y0)] {
            let _ = writeln!(s, r#"<text x="{:.2}" y="{y:.2}" font-size="10" text-anchor="end">{v:.3}</text>"#, x0 - 4.0);
        }
        s.push_str(&self.body);
        s.push_str("</svg>\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One polyline of `Re Z` against `alpha` per path (rows grouped by `tau`).
pub fn paths_svg(rows: &[PathRow], title: &str) -> String {
    let mut groups: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut last_tau = None;
    for r in rows {
        if last_tau != Some(r.tau.to_bits()) {
            groups.push(Vec::new());
            last_tau = Some(r.tau.to_bits());
        }
        groups.last_mut().expect("pushed").push((r.alpha, r.re_z));
    }
    let mut f = Frame::new(range(rows.iter().map(|r| r.alpha)), range(rows.iter().map(|r| r.re_z)));
    for (i, g) in groups.iter().enumerate() {
        f.polyline(g, PALETTE[i % PALETTE.len()]);
    }
    f.finish(title)
}

/// Step ECDFs of several named samples on common axes.
pub fn ecdf_svg(samples: &[(String, Vec<f64>)], title: &str) -> String {
    let mut f = Frame::new(range(samples.iter().flat_map(|(_, v)| v.iter().copied())), (0.0, 1.0));
    for (i, (name, v)) in samples.iter().enumerate() {
        let mut v = v.clone();
        v.sort_by(f64::total_cmp);
        let n = v.len() as f64;
        let mut pts = Vec::with_capacity(2 * v.len());
        for (k, &x) in v.iter().enumerate() {
            pts.push((x, k as f64 / n));
            pts.push((x, (k + 1) as f64 / n));
        }
        let color = PALETTE[i % PALETTE.len()];
        if !pts.is_empty() {
            f.polyline(&pts, color);
        }
        f.label(i, name, color);
    }
    f.finish(title)
}

/// Heatmap of a square matrix (blue negative, red positive, scaled by `scale`).
pub fn heatmap_svg(labels: &[f64], values: &[Vec<f64>], scale: f64, title: &str) -> String {
    let d = labels.len().max(1) as f64;
    let mut f = Frame::new((0.0, d), (0.0, d));
    for (i, row) in values.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let t = (v / scale).clamp(-1.0, 1.0);
            let (r, g, b) = if t >= 0.0 {
                (255.0, 255.0 * (1.0 - t), 255.0 * (1.0 - t))
            } else {
                (255.0 * (1.0 + t), 255.0 * (1.0 + t), 255.0)
            };
            let x = f.px(j as f64);
            let y = f.py((i + 1) as f64);
            let w = f.px(1.0) - f.px(0.0);
            let h = f.py(0.0) - f.py(1.0);
            let _ = writeln!(
                f.body,
                r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="rgb({:.0},{:.0},{:.0})"/>"#,
                r, g, b
            );
            let _ = writeln!(
                f.body,
                r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{v:.3}</text>"#,
                x + w / 2.0,
                y + h / 2.0
            );
        }
    }
    f.finish(title)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(tau: f64, alpha: f64, re: f64) -> PathRow {
        PathRow {
            tau,
            alpha,
            re_z: re,
            im_z: 0.0,
            model: "prime_sum".into(),
        }
    }

    #[test]
    fn empty_input_gives_axes_only() {
        let s = paths_svg(&[], "empty");
        assert!(s.contains("<line") && !s.contains("<polyline"));
    }

    #[test]
    fn one_polyline_per_path_and_deterministic() {
        let rows = vec![row(1.0, 0.0, 0.1), row(1.0, 1.0, 0.3), row(2.0, 0.0, -0.1), row(2.0, 1.0, 0.2)];
        let s = paths_svg(&rows[..2], "one");
        assert_eq!(s.matches("<polyline").count(), 1);
        assert_eq!(paths_svg(&rows, "two").matches("<polyline").count(), 2);
        assert_eq!(paths_svg(&rows, "two"), paths_svg(&rows, "two"));
        let e = ecdf_svg(&[("a".into(), vec![0.3, 0.1]), ("b".into(), vec![0.2])], "ecdf");
        assert_eq!(e.matches("<polyline").count(), 2);
        let h = heatmap_svg(&[0.5, 1.0], &[vec![0.5, 0.4], vec![0.4, 0.9]], 1.0, "cov");
        assert_eq!(h.matches("<rect").count(), 5);
    }
}
