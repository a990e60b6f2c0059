//! SVG rendering of the rank-2 apartment: walls, `A^T` and `Ω_A(x, s_0)`.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::census::Census;
use crate::error::{Error, Result};
use crate::rational::{ceil_int, floor_int, int, q, Rational};
use crate::roots::ApartmentPoint;

/// Figure styling, kept in one place.
mod style {
    pub const SCALE: f64 = 480.0;
    pub const MARGIN: f64 = 24.0;
    pub const WALL_STROKE: &str = "#000000";
    pub const WALL_WIDTH: f64 = 1.0;
    pub const FIXED_FILL: &str = "#d9d9d9";
    pub const FIXED_DEGENERATE_WIDTH: f64 = 8.0;
    pub const OMEGA_STROKE: &str = "#000000";
    pub const OMEGA_DASH: &str = "2,3";
    pub const POINT_RADIUS: f64 = 3.0;
    pub const POINT_FILL: &str = "#000000";
    pub const FONT_SIZE: f64 = 16.0;
    pub const FONT_FAMILY: &str = "serif";
}

struct View {
    lo: Rational,
    hi: Rational,
}

impl View {
    fn px(&self, z: &[Rational]) -> (f64, f64) {
        let f = |r: Rational| r.to_f64().expect("finite rational");
        (
            style::MARGIN + f(z[0] - self.lo) * style::SCALE,
            style::MARGIN + f(self.hi - z[1]) * style::SCALE,
        )
    }

    fn side(&self) -> f64 {
        2.0 * style::MARGIN + (self.hi - self.lo).to_f64().expect("finite") * style::SCALE
    }

    fn inside(&self, v: Rational) -> bool {
        v >= self.lo && v <= self.hi
    }

    /// Endpoints of `g · z = c` inside the square view, if it crosses it.
    fn clip(&self, g: &[i64], c: Rational) -> Option<(Vec<Rational>, Vec<Rational>)> {
        let mut pts: Vec<Vec<Rational>> = Vec::new();
        for edge in [self.lo, self.hi] {
            if g[1] != 0 {
                let z2 = (c - edge * g[0]) / g[1];
                if self.inside(z2) {
                    pts.push(vec![edge, z2]);
                }
            }
            if g[0] != 0 {
                let z1 = (c - edge * g[1]) / g[0];
                if self.inside(z1) {
                    pts.push(vec![z1, edge]);
                }
            }
        }
        pts.sort();
        pts.dedup();
        if pts.len() < 2 {
            return None;
        }
        Some((pts[0].clone(), pts[pts.len() - 1].clone()))
    }
}

fn polygon_points(view: &View, vertices: &[ApartmentPoint]) -> String {
    let pix: Vec<(f64, f64)> = vertices.iter().map(|v| view.px(v.coords())).collect();
    let (cx, cy) = pix.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (cx, cy) = (cx / pix.len() as f64, cy / pix.len() as f64);
    let mut order: Vec<(f64, f64)> = pix.clone();
    order.sort_by(|a, b| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.partial_cmp(&tb).expect("finite angles")
    });
    order.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect::<Vec<_>>().join(" ")
}

/// The window is `[-w, 1/2 + w]^2`.
pub fn render_figure(census: &Census, window: Rational) -> Result<String> {
    let rd = census.root_datum();
    if rd.rank() != 2 {
        return Err(Error::Config(format!("figure supports n = 2 only, got n = {}", rd.rank())));
    }
    if window < Rational::from_integer(0) {
        return Err(Error::Config("window must be >= 0".into()));
    }
    let view = View { lo: -window, hi: q(1, 2) + window };
    let side = view.side();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side:.2}" height="{side:.2}" viewBox="0 0 {side:.2} {side:.2}">"#
    );

    let fixed = census.fixed_region().polytope_vertices();
    match fixed.len() {
        1 => {
            let (x, y) = view.px(fixed[0].coords());
            let r = style::FIXED_DEGENERATE_WIDTH;
            let _ = writeln!(s, r#"  <circle id="fixed-region" cx="{x:.2}" cy="{y:.2}" r="{r:.2}" fill="{}"/>"#, style::FIXED_FILL);
        }
        2 => {
            let (a, b) = (view.px(fixed[0].coords()), view.px(fixed[1].coords()));
            let _ = writeln!(
                s,
                r#"  <line id="fixed-region" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="{:.2}" stroke-linecap="round"/>"#,
                a.0, a.1, b.0, b.1, style::FIXED_FILL, style::FIXED_DEGENERATE_WIDTH
            );
        }
        _ => {
            let _ = writeln!(
                s,
                r#"  <polygon id="fixed-region" points="{}" fill="{}" stroke="none"/>"#,
                polygon_points(&view, &fixed),
                style::FIXED_FILL
            );
        }
    }

    let _ = writeln!(s, r#"  <g id="walls" stroke="{}" stroke-width="{:.2}">"#, style::WALL_STROKE, style::WALL_WIDTH);
    let corners = [[view.lo, view.lo], [view.lo, view.hi], [view.hi, view.lo], [view.hi, view.hi]];
    for g in rd.positive_roots() {
        let g = g.coeffs();
        let vals: Vec<Rational> = corners.iter().map(|c| c[0] * g[0] + c[1] * g[1]).collect();
        let (min, max) = (*vals.iter().min().expect("4 corners"), *vals.iter().max().expect("4 corners"));
        for c in ceil_int(&min)..=floor_int(&max) {
            if let Some((a, b)) = view.clip(g, int(c)) {
                let (a, b) = (view.px(&a), view.px(&b));
                let _ = writeln!(s, r#"    <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, a.0, a.1, b.0, b.1);
            }
        }
    }
    let _ = writeln!(s, "  </g>");

    let omega = census.omega().polytope_vertices();
    let _ = writeln!(
        s,
        r#"  <polygon id="omega" points="{}" fill="none" stroke="{}" stroke-dasharray="{}"/>"#,
        polygon_points(&view, &omega),
        style::OMEGA_STROKE,
        style::OMEGA_DASH
    );

    let half = q(1, 2);
    let zero = Rational::from_integer(0);
    let mut labels = vec![("x", census.attachment_point().clone(), "end", -6.0, -6.0)];
    for (name, p, anchor, dx, dy) in [
        ("y", ApartmentPoint::new(vec![half, zero]), "start", 6.0, 18.0),
        ("wy", ApartmentPoint::new(vec![zero, half]), "end", -6.0, -6.0),
    ] {
        if census.fixed_region().contains(&p) {
            labels.push((name, p, anchor, dx, dy));
        }
    }
    for (name, p, anchor, dx, dy) in labels {
        let (x, y) = view.px(p.coords());
        let _ = writeln!(s, r#"  <circle id="point-{name}" cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="{}"/>"#, style::POINT_RADIUS, style::POINT_FILL);
        let _ = writeln!(
            s,
            r#"  <text x="{:.2}" y="{:.2}" font-family="{}" font-size="{:.2}" font-style="italic" text-anchor="{anchor}">{name}</text>"#,
            x + dx,
            y + dy,
            style::FONT_FAMILY,
            style::FONT_SIZE
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
