//! SVG pictures of planar PL sets. Cells are clipped exactly to the
//! viewport; edges whose points belong to the cell are solid, the rest
//! dashed. Lower-dimensional cells become segments and dots.

use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};
use staircase_core::qe::{Cell, HalfSpace};
use staircase_core::{PlSet, Rational};

const SIZE: f64 = 480.0;
const PAD: f64 = 16.0;
const PALETTE: [&str; 6] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#b07aa1",
];

type Pt = [Rational; 2];

/// Sutherland–Hodgman against the closed half-space `h`.
fn clip(poly: &[Pt], h: &HalfSpace) -> Vec<Pt> {
    let val = |p: &Pt| &h.normal[0] * &p[0] + &h.normal[1] * &p[1] - &h.offset;
    let mut out = Vec::new();
    for (k, p) in poly.iter().enumerate() {
        let q = &poly[(k + 1) % poly.len()];
        let (vp, vq) = (val(p), val(q));
        let (pin, qin) = (vp <= Rational::zero(), vq <= Rational::zero());
        if pin {
            out.push(p.clone());
        }
        if pin != qin {
            let t = &vp / (&vp - &vq);
            out.push([&p[0] + &t * (&q[0] - &p[0]), &p[1] + &t * (&q[1] - &p[1])]);
        }
    }
    out.dedup();
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn polygon(c: &Cell, lo: &[Rational], hi: &[Rational]) -> Vec<Pt> {
    let mut poly = vec![
        [lo[0].clone(), lo[1].clone()],
        [hi[0].clone(), lo[1].clone()],
        [hi[0].clone(), hi[1].clone()],
        [lo[0].clone(), hi[1].clone()],
    ];
    for h in &c.constraints {
        if poly.is_empty() {
            break;
        }
        poly = clip(&poly, h);
    }
    poly
}

fn mid(a: &Pt, b: &Pt) -> Vec<Rational> {
    let two = Rational::from_integer(2.into());
    vec![(&a[0] + &b[0]) / &two, (&a[1] + &b[1]) / &two]
}

fn on_frame(a: &Pt, b: &Pt, lo: &[Rational], hi: &[Rational]) -> bool {
    (0..2).any(|i| (a[i] == lo[i] && b[i] == lo[i]) || (a[i] == hi[i] && b[i] == hi[i]))
}

struct View {
    lo: [f64; 2],
    scale: f64,
    height: f64,
}

impl View {
    fn xy(&self, p: &Pt) -> (f64, f64) {
        let x = p[0].to_f64().unwrap_or(0.0);
        let y = p[1].to_f64().unwrap_or(0.0);
        (
            PAD + (x - self.lo[0]) * self.scale,
            PAD + self.height - (y - self.lo[1]) * self.scale,
        )
    }
}

fn line(out: &mut String, v: &View, a: &Pt, b: &Pt, color: &str, dashed: bool) {
    let ((x1, y1), (x2, y2)) = (v.xy(a), v.xy(b));
    let dash = if dashed {
        r#" stroke-dasharray="6 4""#
    } else {
        ""
    };
    let _ = writeln!(
        out,
        r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="2"{dash}/>"#
    );
}

fn dot(out: &mut String, v: &View, p: &Pt, color: &str, filled: bool) {
    let (x, y) = v.xy(p);
    let fill = if filled { color } else { "white" };
    let _ = writeln!(
        out,
        r#"  <circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{fill}" stroke="{color}" stroke-width="2"/>"#
    );
}

pub fn svg(s: &PlSet, lo: &[Rational], hi: &[Rational]) -> String {
    let w = (&hi[0] - &lo[0]).to_f64().unwrap_or(1.0);
    let h = (&hi[1] - &lo[1]).to_f64().unwrap_or(1.0);
    let scale = SIZE / w.max(h);
    let view = View {
        lo: [lo[0].to_f64().unwrap_or(0.0), lo[1].to_f64().unwrap_or(0.0)],
        scale,
        height: h * scale,
    };
    let (width, height) = (w * scale + 2.0 * PAD, h * scale + 2.0 * PAD);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(
        out,
        r##"  <rect x="{PAD}" y="{PAD}" width="{:.2}" height="{:.2}" fill="none" stroke="#bbb"/>"##,
        w * scale,
        h * scale
    );
    // axes
    let zero = Rational::zero();
    if lo[0] <= zero && zero <= hi[0] {
        let (x, _) = view.xy(&[zero.clone(), zero.clone()]);
        let _ = writeln!(
            out,
            r##"  <line x1="{x:.2}" y1="{PAD}" x2="{x:.2}" y2="{:.2}" stroke="#ddd"/>"##,
            PAD + h * scale
        );
    }
    if lo[1] <= zero && zero <= hi[1] {
        let (_, y) = view.xy(&[zero.clone(), zero.clone()]);
        let _ = writeln!(
            out,
            r##"  <line x1="{PAD}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/>"##,
            PAD + w * scale
        );
    }
    for (k, c) in s.cells.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let poly = polygon(c, lo, hi);
        match poly.len() {
            0 => {}
            1 => dot(
                &mut out,
                &view,
                &poly[0],
                color,
                c.contains(poly[0].as_ref()),
            ),
            2 => {
                line(
                    &mut out,
                    &view,
                    &poly[0],
                    &poly[1],
                    color,
                    !c.contains(&mid(&poly[0], &poly[1])),
                );
                for p in poly.iter().filter(|p| !on_frame(p, p, lo, hi)) {
                    dot(&mut out, &view, p, color, c.contains(p.as_ref()));
                }
            }
            _ => {
                let pts: Vec<String> = poly
                    .iter()
                    .map(|p| {
                        let (x, y) = view.xy(p);
                        format!("{x:.2},{y:.2}")
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    r#"  <polygon points="{}" fill="{color}" fill-opacity="0.25" stroke="none"/>"#,
                    pts.join(" ")
                );
                for (i, a) in poly.iter().enumerate() {
                    let b = &poly[(i + 1) % poly.len()];
                    if !on_frame(a, b, lo, hi) {
                        line(&mut out, &view, a, b, color, !c.contains(&mid(a, b)));
                    }
                }
            }
        }
    }
    out.push_str("</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use staircase_core::rational::int;

    #[test]
    fn strict_edges_dashed() {
        let tri = PlSet::from_constraints(
            2,
            vec![vec![
                HalfSpace::new(vec![int(1), int(1)], int(1), true),
                HalfSpace::new(vec![int(-1), int(0)], int(0), false),
                HalfSpace::new(vec![int(0), int(-1)], int(0), false),
            ]],
        )
        .unwrap();
        let s = svg(&tri, &[int(-1), int(-1)], &[int(2), int(2)]);
        assert_eq!(s.matches("stroke-dasharray").count(), 1);
        assert_eq!(s.matches("<polygon").count(), 1);
        // two solid legs plus the two axes
        assert_eq!(s.matches("<line").count(), 5);
    }

    #[test]
    fn segment_with_open_end() {
        let seg = PlSet::from_constraints(
            2,
            vec![vec![
                HalfSpace::new(vec![int(0), int(1)], int(0), false),
                HalfSpace::new(vec![int(0), int(-1)], int(0), false),
                HalfSpace::new(vec![int(-1), int(0)], int(0), false),
                HalfSpace::new(vec![int(1), int(0)], int(1), true),
            ]],
        )
        .unwrap();
        let s = svg(&seg, &[int(-1), int(-1)], &[int(2), int(2)]);
        assert_eq!(s.matches(r#"fill="white""#).count(), 1);
        assert!(!s.contains("stroke-dasharray"));
    }
}
