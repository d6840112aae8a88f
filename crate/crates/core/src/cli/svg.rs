//! Deterministic SVG scatter plots of zero sets.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::roots::ZeroSet;

pub const SIZE: f64 = 1200.0;
const MARGIN: f64 = 60.0;
const RADIUS: f64 = 3.0;

/// Plot rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if !(x0 < x1 && y0 < y1) || ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("window must be a nonempty finite rectangle".into()));
        }
        Ok(Self { x0, x1, y0, y1 })
    }

    /// Smallest square holding every point, padded by 5%, never thinner
    /// than 2 units.
    pub fn fit<'a>(points: impl IntoIterator<Item = &'a (f64, f64)>) -> Self {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            if x.is_finite() && y.is_finite() {
                lo = (lo.0.min(x), lo.1.min(y));
                hi = (hi.0.max(x), hi.1.max(y));
            }
        }
        if lo.0 > hi.0 {
            return Self { x0: -1.0, x1: 1.0, y0: -1.0, y1: 1.0 };
        }
        let side = (hi.0 - lo.0).max(hi.1 - lo.1).max(2.0) * 1.1;
        let (cx, cy) = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
        Self { x0: cx - side / 2.0, x1: cx + side / 2.0, y0: cy - side / 2.0, y1: cy + side / 2.0 }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let span = SIZE - 2.0 * MARGIN;
        let px = MARGIN + (x - self.x0) / (self.x1 - self.x0) * span;
        let py = SIZE - MARGIN - (y - self.y0) / (self.y1 - self.y0) * span;
        (px, py)
    }
}

/// Fill color for a zero-set label.
pub fn color(label: &str) -> &'static str {
    match label {
        "q0" | "zeros" => "blue",
        "q1" | "poles" => "red",
        _ => "black",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// One circle per root, drawn set by set in the given order, over the
/// coordinate axes and a caption line.
pub fn render_svg(sets: &[&ZeroSet], window: &Window, caption: &str, meta: &[(String, String)]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    );
    for (k, v) in meta {
        let _ = writeln!(s, "<!-- {}: {} -->", escape(k), escape(v));
    }
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let (fx0, fy0) = window.map(window.x0, window.y1);
    let (fx1, fy1) = window.map(window.x1, window.y0);
    let _ = writeln!(
        s,
        r##"<rect x="{fx0:.2}" y="{fy0:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#888" stroke-width="1"/>"##,
        fx1 - fx0,
        fy1 - fy0
    );
    if window.y0 <= 0.0 && 0.0 <= window.y1 {
        let (ax0, ay) = window.map(window.x0, 0.0);
        let (ax1, _) = window.map(window.x1, 0.0);
        let _ = writeln!(s, r##"<line x1="{ax0:.2}" y1="{ay:.2}" x2="{ax1:.2}" y2="{ay:.2}" stroke="#888" stroke-width="1"/>"##);
    }
    if window.x0 <= 0.0 && 0.0 <= window.x1 {
        let (ax, ay0) = window.map(0.0, window.y0);
        let (_, ay1) = window.map(0.0, window.y1);
        let _ = writeln!(s, r##"<line x1="{ax:.2}" y1="{ay0:.2}" x2="{ax:.2}" y2="{ay1:.2}" stroke="#888" stroke-width="1"/>"##);
    }
    let label = |s: &mut String, x: f64, y: f64, anchor: &str, text: String| {
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{y:.2}" font-family="monospace" font-size="16" text-anchor="{anchor}">{text}</text>"#);
    };
    label(&mut s, fx0, fy1 + 24.0, "start", format!("{:.4}", window.x0));
    label(&mut s, fx1, fy1 + 24.0, "end", format!("{:.4}", window.x1));
    label(&mut s, fx0 - 6.0, fy1, "end", format!("{:.4}", window.y0));
    label(&mut s, fx0 - 6.0, fy0 + 12.0, "end", format!("{:.4}", window.y1));
    label(&mut s, SIZE / 2.0, 36.0, "middle", escape(caption));
    for set in sets {
        let _ = writeln!(s, r#"<g id="{}" fill="{}">"#, escape(&set.label), color(&set.label));
        for (x, y) in set.points() {
            let (px, py) = window.map(x, y);
            let _ = writeln!(s, r#"<circle cx="{px:.2}" cy="{py:.2}" r="{RADIUS}"/>"#);
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}
