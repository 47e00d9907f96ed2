//! SVG 1.1 wall diagrams: nested semicircles in the `(s, t)` half-plane next
//! to the semi-lines of the `(s, q)` model.

use std::fmt::Write as _;

use crate::rational::to_f64;
use crate::surface::ChernCharacter;
use crate::walls::WallRecord;

const W: f64 = 900.0;
const H: f64 = 420.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 380.0;
const PANELS: [(f64, f64); 2] = [(40.0, 430.0), (470.0, 860.0)];

fn num(x: f64) -> String {
    format!("{x:.6}")
}

struct Axis {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Axis {
    fn new(lo: f64, hi: f64, px_lo: f64, px_hi: f64) -> Self {
        let (lo, hi) = if hi - lo < 1e-9 { (lo - 1.0, hi + 1.0) } else { (lo, hi) };
        Axis { lo, hi, px_lo, px_hi }
    }

    fn map(&self, v: f64) -> f64 {
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }

    fn scale(&self) -> f64 {
        (self.px_hi - self.px_lo).abs() / (self.hi - self.lo)
    }
}

fn header(out: &mut String, title: &str, walls: &[WallRecord]) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<!-- bmwalls wall diagram. Geometry attributes are decimal renderings of exact rationals with 6 digits after the point. -->\n");
    for w in walls {
        let _ = writeln!(out, "<!-- wall C={} D={} radius_sq={} model={} -->", w.center, w.d, w.radius_sq, w.model);
    }
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    out.push_str("<rect x=\"0\" y=\"0\" width=\"900\" height=\"420\" fill=\"white\"/>\n");
    let _ = writeln!(out, "<text x=\"450\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>", escape(title));
    for (i, (x0, x1)) in PANELS.iter().enumerate() {
        let _ = writeln!(
            out,
            "<clipPath id=\"panel{i}\"><rect x=\"{x0}\" y=\"{TOP}\" width=\"{}\" height=\"{}\"/></clipPath>",
            x1 - x0,
            BOTTOM - TOP
        );
        let _ = writeln!(
            out,
            "<rect x=\"{x0}\" y=\"{TOP}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#888\"/>",
            x1 - x0,
            BOTTOM - TOP
        );
    }
    let _ = writeln!(out, "<text x=\"235\" y=\"400\" text-anchor=\"middle\">(s, t) half-plane</text>");
    let _ = writeln!(out, "<text x=\"665\" y=\"400\" text-anchor=\"middle\">(s, q) model, q = (s^2 + t^2)/2</text>");
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn note(out: &mut String, text: &str) {
    for (x0, x1) in PANELS {
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"#444\">{}</text>",
            (x0 + x1) / 2.0,
            (TOP + BOTTOM) / 2.0,
            escape(text)
        );
    }
}

/// Renders the diagram. Empty `walls` give annotated empty panels.
pub fn render_svg(title: &str, ch: &ChernCharacter, walls: &[WallRecord]) -> String {
    let mut out = String::new();
    header(&mut out, title, walls);
    let nonempty: Vec<&WallRecord> = walls.iter().filter(|w| !w.is_empty()).collect();
    if nonempty.is_empty() {
        let trivial = num_traits::Zero::is_zero(&ch.ch0) && ch.ch1.is_zero();
        note(&mut out, if trivial { "trivial chamber: there is no wall" } else { "no walls within the search bounds" });
        out.push_str("</svg>\n");
        return out;
    }
    let circles: Vec<(f64, f64, &WallRecord)> =
        nonempty.iter().map(|w| (to_f64(&w.center), to_f64(&w.radius_sq).sqrt(), *w)).collect();
    let pivot = nonempty[0].sq_line().pivot.map(|(s, q)| (to_f64(&s), to_f64(&q)));
    let mut s_lo = circles.iter().map(|(c, r, _)| c - r).fold(f64::INFINITY, f64::min);
    let mut s_hi = circles.iter().map(|(c, r, _)| c + r).fold(f64::NEG_INFINITY, f64::max);
    if let Some((ps, _)) = pivot {
        s_lo = s_lo.min(ps);
        s_hi = s_hi.max(ps);
    }
    let pad = 0.08 * (s_hi - s_lo).max(1.0);
    let (s_lo, s_hi) = (s_lo - pad, s_hi + pad);
    let t_hi = circles.iter().map(|(_, r, _)| *r).fold(0.0, f64::max) * 1.15;

    let (a0, a1) = PANELS[0];
    let sx = Axis::new(s_lo, s_hi, a0, a1);
    let ty = Axis::new(0.0, t_hi, BOTTOM, TOP);
    out.push_str("<g clip-path=\"url(#panel0)\" fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1.2\">\n");
    for (c, r, _) in &circles {
        let (xl, xr, y0) = (sx.map(c - r), sx.map(c + r), ty.map(0.0));
        let (rx, ry) = (r * sx.scale(), r * ty.scale());
        let _ = writeln!(
            out,
            "<path d=\"M {} {} A {} {} 0 0 1 {} {}\"/>",
            num(xl),
            num(y0),
            num(rx),
            num(ry),
            num(xr),
            num(y0)
        );
    }
    out.push_str("</g>\n");

    let (b0, b1) = PANELS[1];
    let sx2 = Axis::new(s_lo, s_hi, b0, b1);
    let endpoints: Vec<(f64, f64, f64, f64)> = circles
        .iter()
        .map(|(c, r, w)| {
            let line = w.sq_line();
            let (m, k) = (to_f64(&line.slope), to_f64(&line.intercept));
            (c - r, m * (c - r) + k, c + r, m * (c + r) + k)
        })
        .collect();
    let mut q_lo = endpoints.iter().flat_map(|e| [e.1, e.3]).fold(f64::INFINITY, f64::min).min(0.0);
    let mut q_hi = endpoints.iter().flat_map(|e| [e.1, e.3]).fold(f64::NEG_INFINITY, f64::max);
    if let Some((_, pq)) = pivot {
        q_lo = q_lo.min(pq);
        q_hi = q_hi.max(pq);
    }
    let qpad = 0.08 * (q_hi - q_lo).max(1.0);
    let qy = Axis::new(q_lo - qpad, q_hi + qpad, BOTTOM, TOP);
    out.push_str("<g clip-path=\"url(#panel1)\" fill=\"none\">\n");
    let steps = 120;
    let parabola: Vec<String> = (0..=steps)
        .map(|i| {
            let s = s_lo + (s_hi - s_lo) * i as f64 / steps as f64;
            format!("{},{}", num(sx2.map(s)), num(qy.map(s * s / 2.0)))
        })
        .collect();
    let _ = writeln!(out, "<polyline points=\"{}\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>", parabola.join(" "));
    for (s1, q1, s2, q2) in &endpoints {
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1f4e99\" stroke-width=\"1.2\"/>",
            num(sx2.map(*s1)),
            num(qy.map(*q1)),
            num(sx2.map(*s2)),
            num(qy.map(*q2))
        );
    }
    if let Some((ps, pq)) = pivot {
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3.5\" fill=\"#c0392b\" stroke=\"none\"><title>pivot</title></circle>",
            num(sx2.map(ps)),
            num(qy.map(pq))
        );
    }
    out.push_str("</g>\n");
    let _ =
        writeln!(out, "<text x=\"{a0}\" y=\"{}\" fill=\"#444\">s in [{}, {}]</text>", TOP - 6.0, num(s_lo), num(s_hi));
    out.push_str("</svg>\n");
    out
}
