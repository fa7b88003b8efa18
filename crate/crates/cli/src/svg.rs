//! Minimal deterministic SVG 1.1 writer in world coordinates (y up).

use std::fmt::Write;

use brocard::{Circle64, Ellipse64, Point64, Triangle64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stroke {
    Solid,
    Dashed,
}

#[derive(Debug, Clone)]
pub struct Svg {
    title: String,
    items: Vec<String>,
    lo: Point64,
    hi: Point64,
}

fn num(x: f64) -> String {
    let s = format!("{x:.8}");
    if s.trim_start_matches('-')
        .trim_matches(|c| c == '0' || c == '.')
        .is_empty()
    {
        "0.00000000".to_string()
    } else {
        s
    }
}

fn xy(p: Point64) -> String {
    format!("{},{}", num(p.x), num(-p.y))
}

impl Svg {
    pub fn new(title: &str) -> Self {
        Svg {
            title: title.to_string(),
            items: Vec::new(),
            lo: Point64::new(f64::INFINITY, f64::INFINITY),
            hi: Point64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn grow(&mut self, p: Point64) {
        self.lo = Point64::new(self.lo.x.min(p.x), self.lo.y.min(p.y));
        self.hi = Point64::new(self.hi.x.max(p.x), self.hi.y.max(p.y));
    }

    fn grow_box(&mut self, c: Point64, rx: f64, ry: f64) {
        self.grow(Point64::new(c.x - rx, c.y - ry));
        self.grow(Point64::new(c.x + rx, c.y + ry));
    }

    fn dash(stroke: Stroke) -> &'static str {
        match stroke {
            Stroke::Solid => "",
            Stroke::Dashed => " dashed",
        }
    }

    pub fn circle(&mut self, c: &Circle64, class: &str, stroke: Stroke) {
        self.grow_box(c.center, c.radius, c.radius);
        self.items.push(format!(
            r#"<circle class="{class}{}" cx="{}" cy="{}" r="{}"/>"#,
            Self::dash(stroke),
            num(c.center.x),
            num(-c.center.y),
            num(c.radius)
        ));
    }

    pub fn ellipse(&mut self, e: &Ellipse64, class: &str) {
        let (rx, ry) = e.extents();
        self.grow_box(e.center, rx, ry);
        self.items.push(format!(
            r#"<ellipse class="{class}" cx="{}" cy="{}" rx="{}" ry="{}"/>"#,
            num(e.center.x),
            num(-e.center.y),
            num(rx),
            num(ry)
        ));
    }

    pub fn triangle(&mut self, t: &Triangle64, stroke: Stroke) {
        for v in t.vertices() {
            self.grow(v);
        }
        let pts: Vec<String> = t.vertices().into_iter().map(xy).collect();
        self.items.push(format!(
            r#"<polygon class="triangle{}" points="{}"/>"#,
            Self::dash(stroke),
            pts.join(" ")
        ));
    }

    pub fn polyline(&mut self, pts: &[Point64], class: &str) {
        for &p in pts {
            self.grow(p);
        }
        let s: Vec<String> = pts.iter().map(|&p| xy(p)).collect();
        self.items.push(format!(
            r#"<polyline class="{class}" points="{}"/>"#,
            s.join(" ")
        ));
    }

    /// Counterclockwise arc of `c` from angle `from` to `to` (radians).
    pub fn arc(&mut self, c: &Circle64, from: f64, to: f64, class: &str) {
        let at = |a: f64| c.center + Point64::new(a.cos(), a.sin()) * c.radius;
        let sweep = (to - from).rem_euclid(std::f64::consts::TAU);
        for k in 0..=16 {
            self.grow(at(from + sweep * k as f64 / 16.0));
        }
        let large = if sweep > std::f64::consts::PI { 1 } else { 0 };
        // y is flipped, so a counterclockwise world arc is a clockwise (sweep 0) screen arc
        self.items.push(format!(
            r#"<path class="{class}" d="M {} A {} {} 0 {large} 0 {}"/>"#,
            xy(at(from)),
            num(c.radius),
            num(c.radius),
            xy(at(from + sweep))
        ));
    }

    pub fn point(&mut self, p: Point64, label: &str) {
        self.grow(p);
        self.items.push(format!(
            r#"<circle class="point" cx="{}" cy="{}" r="@DOT@"/>"#,
            num(p.x),
            num(-p.y)
        ));
        if !label.is_empty() {
            self.items.push(format!(
                r#"<text x="{}" y="{}" font-size="@FONT@">{label}</text>"#,
                num(p.x),
                num(-p.y)
            ));
        }
    }

    pub fn finish(&self) -> String {
        let (lo, hi) = if self.lo.x.is_finite() {
            (self.lo, self.hi)
        } else {
            (Point64::new(-1.0, -1.0), Point64::new(1.0, 1.0))
        };
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let pad = 0.05 * span;
        let (x0, y0) = (lo.x - pad, -hi.y - pad);
        let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
        let stroke = num(span / 400.0);
        let dot = num(span / 200.0);
        let font = num(span / 40.0);
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="{}" viewBox="{} {} {} {}">"#,
            (800.0 * h / w).round().max(1.0),
            num(x0),
            num(y0),
            num(w),
            num(h)
        );
        let _ = writeln!(s, "<title>{}</title>", self.title);
        let _ = writeln!(
            s,
            "<style>* {{ fill: none; stroke: #222; stroke-width: {stroke}; }} .dashed {{ stroke-dasharray: {} {}; }} \
             .point {{ fill: #c00; stroke: none; }} text {{ fill: #222; stroke: none; font-family: sans-serif; }} \
             .inellipse {{ stroke: #06c; }} .brocard {{ stroke: #c60; }} .arc {{ stroke: #090; }} \
             .circumcircle {{ stroke: #888; }} .locus {{ stroke: #909; }}</style>",
            num(span / 100.0),
            num(span / 150.0)
        );
        for item in &self.items {
            let _ = writeln!(
                s,
                "{}",
                item.replace("@DOT@", &dot).replace("@FONT@", &font)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn output_is_deterministic_and_well_formed() {
        let build = || {
            let mut s = Svg::new("t");
            s.circle(
                &Circle64::new(Point64::new(0.0, 0.0), 1.0).unwrap(),
                "circumcircle",
                Stroke::Solid,
            );
            s.arc(
                &Circle64::new(Point64::new(1.0, 0.0), 1.0).unwrap(),
                0.0,
                1.0,
                "arc",
            );
            s.point(Point64::new(0.5, -0.0), "O");
            s.finish()
        };
        let a = build();
        assert_eq!(a, build());
        assert!(a.starts_with("<?xml") && a.ends_with("</svg>\n"));
        assert!(!a.contains("-0.00000000"));
        assert_eq!(a.matches("class=\"arc\"").count(), 1);
    }
}
