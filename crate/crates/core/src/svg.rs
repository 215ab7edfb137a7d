//! Static SVG pictures of anchor sets and arrangements.
//!
//! Each range disk is one `<circle class="disk">`; anchors are small squares
//! and face representatives small diamonds, so the circle count equals the
//! anchor count.

use std::fmt::Write as _;

use crate::arrangement::Arrangement;
use crate::geom::{DomainSquare, Point, Rect};
use crate::signature::bounding_box;

#[derive(Debug, Clone, Default)]
pub struct Scene<'a> {
    pub anchors: &'a [Point],
    pub radius: f64,
    pub domain: Option<DomainSquare>,
    pub arrangement: Option<&'a Arrangement>,
    /// Extra highlighted points, e.g. a worst pair.
    pub marks: Vec<Point>,
}

const WIDTH: f64 = 800.0;

fn hue(hash: u64) -> u64 {
    hash % 360
}

impl Scene<'_> {
    fn extent(&self) -> Rect {
        let mut r = bounding_box(self.anchors)
            .map(|b| {
                Rect::new(
                    b.min - Point::new(self.radius, self.radius),
                    b.max + Point::new(self.radius, self.radius),
                )
            })
            .unwrap_or(Rect::new(Point::default(), Point::new(1.0, 1.0)));
        if let Some(d) = self.domain {
            let s = d.rect();
            r = Rect::new(
                Point::new(r.min.x.min(s.min.x), r.min.y.min(s.min.y)),
                Point::new(r.max.x.max(s.max.x), r.max.y.max(s.max.y)),
            );
        }
        let pad = 0.02 * r.width().max(r.height()).max(f64::MIN_POSITIVE);
        Rect::new(r.min - Point::new(pad, pad), r.max + Point::new(pad, pad))
    }

    pub fn render(&self) -> String {
        let ext = self.extent();
        let scale = WIDTH / ext.width().max(ext.height());
        let height = ext.height() * scale;
        // y grows downwards in SVG
        let tx = |p: Point| ((p.x - ext.min.x) * scale, (ext.max.y - p.y) * scale);
        let dot = 3.0;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.3} {height:.3}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        if let Some(d) = self.domain {
            let r = d.rect();
            let (x, y) = tx(Point::new(r.min.x, r.max.y));
            let _ = writeln!(
                s,
                r#"<rect class="domain" x="{x:.3}" y="{y:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="black" stroke-width="1.5"/>"#,
                r.width() * scale,
                r.height() * scale
            );
        }
        for &a in self.anchors {
            let (x, y) = tx(a);
            let _ = writeln!(
                s,
                r##"<circle class="disk" cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="none" stroke="#4a6fa5" stroke-opacity="0.6"/>"##,
                self.radius * scale
            );
        }
        if let Some(arr) = self.arrangement {
            for f in &arr.faces {
                let (x, y) = tx(f.representative);
                let _ = writeln!(
                    s,
                    r#"<polygon class="face" points="{:.3},{:.3} {:.3},{:.3} {:.3},{:.3} {:.3},{:.3}" fill="hsl({},70%,50%)"><title>{}</title></polygon>"#,
                    x,
                    y - dot,
                    x + dot,
                    y,
                    x,
                    y + dot,
                    x - dot,
                    y,
                    hue(f.signature.stable_hash()),
                    f.signature
                );
            }
        }
        for &a in self.anchors {
            let (x, y) = tx(a);
            let _ = writeln!(
                s,
                r#"<rect class="anchor" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="black"/>"#,
                x - dot / 2.0,
                y - dot / 2.0,
                dot,
                dot
            );
        }
        for &m in &self.marks {
            let (x, y) = tx(m);
            let _ = writeln!(
                s,
                r#"<rect class="mark" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="red"/>"#,
                x - dot,
                y - dot,
                2.0 * dot,
                2.0 * dot
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
