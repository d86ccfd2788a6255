//! Native SVG output: region heatmaps, seats-votes curves and the
//! four-panel range plot of a short-burst run.
//!
//! Signed values use a diverging blue-white-red ramp; red is positive,
//! i.e. bias toward party A.

use std::fmt::Write;

use crate::bounds::{CellValue, Raster, RasterKind};
use crate::chain::{BandMetric, BurstRunSummary};
use crate::metrics::SeatsVotesCurve;
use crate::rational::{to_f64, Exact};

const BLUE: (f64, f64, f64) = (33.0, 102.0, 172.0);
const RED: (f64, f64, f64) = (178.0, 24.0, 43.0);
const NULL_FILL: &str = "#d9d9d9";

/// Colour for `t` in [-1, 1]: blue at -1, white at 0, red at 1.
pub fn diverging(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(-1.0, 1.0) } else { 0.0 };
    let end = if t < 0.0 { BLUE } else { RED };
    let a = t.abs();
    let mix = |c: f64| (255.0 + (c - 255.0) * a).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(end.0), mix(end.1), mix(end.2))
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open(w: f64, h: f64) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    )
}

fn text(out: &mut String, x: f64, y: f64, anchor: &str, body: &str) {
    let _ = writeln!(out, "<text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"{anchor}\">{}</text>", escape(body));
}

// Unit square frame with 0, ½, 1 ticks on both axes.
fn unit_axes(out: &mut String, x0: f64, y0: f64, size: f64, xlabel: &str, ylabel: &str) {
    let _ = writeln!(out, "<rect x=\"{x0}\" y=\"{y0}\" width=\"{size}\" height=\"{size}\" fill=\"none\" stroke=\"black\"/>");
    for (k, label) in ["0", "0.5", "1"].iter().enumerate() {
        let f = k as f64 / 2.0;
        text(out, x0 + f * size, y0 + size + 16.0, "middle", label);
        text(out, x0 - 6.0, y0 + size - f * size + 4.0, "end", label);
    }
    text(out, x0 + size / 2.0, y0 + size + 34.0, "middle", xlabel);
    let _ = writeln!(
        out,
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" transform=\"rotate(-90 {:.1} {:.1})\">{}</text>",
        x0 - 34.0,
        y0 + size / 2.0,
        x0 - 34.0,
        y0 + size / 2.0,
        escape(ylabel)
    );
}

/// Heatmap of a region raster, V across and S up. Endpoint cells use the
/// diverging ramp scaled to the largest magnitude present; flag cells are
/// dark when set. Runs of equal colour along a row share one rectangle.
pub fn raster_svg(r: &Raster) -> String {
    let size = 600.0;
    let (x0, y0) = (70.0, 40.0);
    let scale = r
        .cells
        .iter()
        .filter_map(|c| match &c.value {
            CellValue::Endpoint { value, .. } => Some(to_f64(value).abs()),
            _ => None,
        })
        .fold(0.0f64, f64::max);
    let fill = |v: &CellValue| match v {
        CellValue::Null => NULL_FILL.to_string(),
        CellValue::Flag(true) => "#404040".to_string(),
        CellValue::Flag(false) => "#ffffff".to_string(),
        CellValue::Endpoint { value, .. } => diverging(if scale > 0.0 { to_f64(value) / scale } else { 0.0 }),
    };
    let (cols, rows) = (r.columns.len(), r.rows.len());
    let (cw, ch) = (size / cols as f64, size / rows as f64);
    let mut out = open(x0 + size + 150.0, y0 + size + 60.0);
    let kind = match r.spec.kind {
        RasterKind::Zero => "zero region".to_string(),
        k => format!("{k} endpoint"),
    };
    let n = r.spec.n.map(|n| format!(", n = {n}")).unwrap_or_default();
    let c = r.spec.turnout_ratio.as_ref().map(|c| format!(", C = {}", Exact(c))).unwrap_or_default();
    text(&mut out, x0 + size / 2.0, 24.0, "middle", &format!("{} {kind}{n}{c}", r.spec.metric.to_string().to_uppercase()));
    out.push_str("<g shape-rendering=\"crispEdges\">\n");
    for row in 0..rows {
        let y = y0 + size - (row + 1) as f64 * ch;
        let mut col = 0;
        while col < cols {
            let colour = fill(&r.cell(row, col).value);
            let start = col;
            while col < cols && fill(&r.cell(row, col).value) == colour {
                col += 1;
            }
            let _ = writeln!(
                out,
                "<rect x=\"{:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{ch:.2}\" fill=\"{colour}\"/>",
                x0 + start as f64 * cw,
                (col - start) as f64 * cw
            );
        }
    }
    out.push_str("</g>\n");
    unit_axes(&mut out, x0, y0, size, "vote share V", "seat share S");
    if scale > 0.0 {
        let lx = x0 + size + 30.0;
        for k in 0..=20 {
            let t = 1.0 - k as f64 / 10.0;
            let _ = writeln!(out, "<rect x=\"{lx}\" y=\"{:.1}\" width=\"20\" height=\"{:.1}\" fill=\"{}\"/>", y0 + k as f64 * 15.0, 15.0, diverging(t));
        }
        text(&mut out, lx + 26.0, y0 + 10.0, "start", &format!("{scale:.3}"));
        text(&mut out, lx + 26.0, y0 + 157.0, "start", "0");
        text(&mut out, lx + 26.0, y0 + 312.0, "start", &format!("{:.3}", -scale));
    }
    out.push_str("</svg>\n");
    out
}

/// Step plot of a seats-votes curve with the diagonal and the ½ lines.
pub fn curve_svg(c: &SeatsVotesCurve) -> String {
    let size = 500.0;
    let (x0, y0) = (70.0, 40.0);
    let px = |v: f64| x0 + v * size;
    let py = |s: f64| y0 + size - s * size;
    let mut out = open(x0 + size + 30.0, y0 + size + 60.0);
    text(&mut out, x0 + size / 2.0, 24.0, "middle", &format!("seats-votes curve, {} districts", c.n()));
    let _ = writeln!(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#aaaaaa\" stroke-dasharray=\"4 4\"/>", px(0.0), py(0.0), px(1.0), py(1.0));
    let _ = writeln!(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#aaaaaa\"/>", px(0.5), py(0.0), px(0.5), py(1.0));
    let _ = writeln!(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#aaaaaa\"/>", px(0.0), py(0.5), px(1.0), py(0.5));
    let points: Vec<String> =
        c.points().iter().map(|(v, s)| format!("{:.2},{:.2}", px(to_f64(v)), py(to_f64(s)))).collect();
    let _ = writeln!(out, "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>", points.join(" "), diverging(0.9));
    unit_axes(&mut out, x0, y0, size, "vote share V", "seat share S");
    out.push_str("</svg>\n");
    out
}

/// One panel per metric: x is seats won, each bucket a min-max bar with a
/// mean dot and plan count, over the green acceptability band.
pub fn range_plot_svg(s: &BurstRunSummary) -> String {
    let (pw, ph) = (360.0, 260.0);
    let (mx, my) = (70.0, 50.0);
    let mut out = open(2.0 * (pw + mx) + 20.0, 2.0 * (ph + my) + 40.0);
    let party = s.config.party;
    text(
        &mut out,
        pw + mx,
        22.0,
        "middle",
        &format!("party {party}, vote share {:.3}, {} plans", to_f64(&s.vote_share), s.records.len()),
    );
    let seats_max = s.config.districts as f64;
    for (k, metric) in BandMetric::ALL.iter().enumerate() {
        let x0 = mx + (k % 2) as f64 * (pw + mx);
        let y0 = 40.0 + my / 2.0 + (k / 2) as f64 * (ph + my);
        let band = s.bands.iter().find(|b| b.metric == *metric).expect("one band per metric");
        let stats: Vec<_> = s.buckets.iter().filter_map(|b| metric.stats(b).map(|st| (b, st))).collect();
        let (mut lo, mut hi) = (to_f64(&band.lo), to_f64(&band.hi));
        for (_, st) in &stats {
            lo = lo.min(to_f64(&st.min));
            hi = hi.max(to_f64(&st.max));
        }
        let pad = ((hi - lo) * 0.1).max(0.01);
        let (lo, hi) = (lo - pad, hi + pad);
        let px = |seats: f64| x0 + (seats + 0.5) / (seats_max + 1.0) * pw;
        let py = |v: f64| y0 + ph - (v - lo) / (hi - lo) * ph;
        let _ = writeln!(
            out,
            "<rect x=\"{x0}\" y=\"{:.2}\" width=\"{pw}\" height=\"{:.2}\" fill=\"#c7e9c0\"/>",
            py(to_f64(&band.hi)),
            (py(to_f64(&band.lo)) - py(to_f64(&band.hi))).max(0.0)
        );
        let _ = writeln!(out, "<line x1=\"{x0}\" y1=\"{:.2}\" x2=\"{}\" y2=\"{:.2}\" stroke=\"#888888\"/>", py(0.0), x0 + pw, py(0.0));
        for (b, st) in &stats {
            let x = px(b.seats as f64);
            let _ = writeln!(
                out,
                "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"{}\" stroke-width=\"6\"/>",
                py(to_f64(&st.min)),
                py(to_f64(&st.max)),
                diverging(-0.8)
            );
            let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"black\"/>", py(to_f64(&st.mean)));
            text(&mut out, x, py(to_f64(&st.max)) - 6.0, "middle", &b.plans.to_string());
        }
        let _ = writeln!(out, "<rect x=\"{x0}\" y=\"{y0}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" stroke=\"black\"/>");
        for seats in 0..=s.config.districts {
            text(&mut out, px(seats as f64), y0 + ph + 16.0, "middle", &seats.to_string());
        }
        for f in [0.0, 0.5, 1.0] {
            let v = lo + f * (hi - lo);
            text(&mut out, x0 - 6.0, py(v) + 4.0, "end", &format!("{v:.2}"));
        }
        text(&mut out, x0 + pw / 2.0, y0 - 8.0, "middle", &format!("{} by seats won", metric.label()));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_ends() {
        assert_eq!(diverging(0.0), "#ffffff");
        assert_eq!(diverging(1.0), "#b2182b");
        assert_eq!(diverging(-1.0), "#2166ac");
        assert_eq!(diverging(f64::NAN), "#ffffff");
    }
}
