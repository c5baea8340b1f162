//! SVG rendering of a free-space diagram.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::curve::{Curve, ParamPoint};
use crate::engines::{DecisionDiagram, Matching};
use crate::error::Result;
use crate::numeric::{Dist, Rational};

const FREE: &str = "#f4f4f4";
const BLOCKED: &str = "#3a3a3a";
const CANVAS: f64 = 640.0;
const MARGIN: f64 = 20.0;

/// Settings for drawing the free space of two curves at ε.
#[derive(Clone, Debug)]
pub struct FsdRender {
    /// Samples per cell side.
    pub resolution: usize,
    pub eps: Dist,
    /// Scale axes by edge length instead of vertex index.
    pub arclength: bool,
    pub witness: Option<Matching>,
}

impl FsdRender {
    pub fn new(eps: Dist) -> FsdRender {
        FsdRender { resolution: 16, eps, arclength: false, witness: None }
    }

    pub fn render(&self, p: &Curve, q: &Curve) -> Result<String> {
        let diagram = DecisionDiagram::at(p, q, self.eps)?;
        let xs = Axis::new(p, self.arclength);
        let ys = Axis::new(q, self.arclength);
        let longest = xs.total.max(ys.total).max(1e-9);
        let (w, h) = (CANVAS * xs.total / longest, CANVAS * ys.total / longest);
        let sx = |t: f64| MARGIN + w * xs.map(t) / xs.total.max(1e-9);
        let sy = |t: f64| MARGIN + h - h * ys.map(t) / ys.total.max(1e-9);

        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" data-eps="{}">"#,
            w + 2.0 * MARGIN,
            h + 2.0 * MARGIN,
            self.eps
        )
        .unwrap();
        writeln!(out, r#"<rect x="0" y="0" width="100%" height="100%" fill="white"/>"#).unwrap();

        let res = self.resolution.max(1) as i64;
        let (cols, rows) = (p.len().max(2) - 1, q.len().max(2) - 1);
        for j in 0..rows {
            for b in 0..res {
                let y0 = j as f64 + b as f64 / res as f64;
                let y1 = y0 + 1.0 / res as f64;
                let yc = ParamPoint(Rational::new(j as i64 * 2 * res + 2 * b + 1, 2 * res) + 1);
                // run-length encode each sample row
                let mut run: Option<(f64, bool)> = None;
                for i in 0..cols {
                    for a in 0..res {
                        let x0 = i as f64 + a as f64 / res as f64;
                        let xc = ParamPoint(Rational::new(i as i64 * 2 * res + 2 * a + 1, 2 * res) + 1);
                        let free = diagram.is_free(clamp(xc, p), clamp(yc, q))?;
                        match run {
                            Some((_, f)) if f == free => {}
                            Some((start, f)) => {
                                rect(&mut out, sx(start), sx(x0), sy(y1), sy(y0), f);
                                run = Some((x0, free));
                            }
                            None => run = Some((x0, free)),
                        }
                    }
                }
                if let Some((start, f)) = run {
                    rect(&mut out, sx(start), sx(cols as f64), sy(y1), sy(y0), f);
                }
            }
        }

        for i in 0..=cols {
            writeln!(
                out,
                r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-width="0.5"/>"##,
                sx(i as f64),
                sy(0.0),
                sx(i as f64),
                sy(rows as f64)
            )
            .unwrap();
        }
        for j in 0..=rows {
            writeln!(
                out,
                r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-width="0.5"/>"##,
                sx(0.0),
                sy(j as f64),
                sx(cols as f64),
                sy(j as f64)
            )
            .unwrap();
        }
        for (i, j, free) in corner_classes(p, q, self.eps)? {
            writeln!(
                out,
                r#"<circle class="corner {}" data-i="{i}" data-j="{j}" cx="{:.2}" cy="{:.2}" r="2" fill="{}"/>"#,
                if free { "free" } else { "blocked" },
                sx((i - 1) as f64),
                sy((j - 1) as f64),
                if free { "#2a7" } else { "#c33" }
            )
            .unwrap();
        }
        if let Some(m) = &self.witness {
            let pts: Vec<String> = m
                .path
                .iter()
                .map(|(a, b)| format!("{:.2},{:.2}", sx(to_f64(a) - 1.0), sy(to_f64(b) - 1.0)))
                .collect();
            writeln!(
                out,
                r##"<polyline class="witness" points="{}" fill="none" stroke="#1565c0" stroke-width="1.5"/>"##,
                pts.join(" ")
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        Ok(out)
    }
}

/// Every vertex pair `(i, j)`, 1-based, with whether it lies in the free space.
pub fn corner_classes(p: &Curve, q: &Curve, eps: Dist) -> Result<Vec<(usize, usize, bool)>> {
    let mut out = Vec::with_capacity(p.len() * q.len());
    for j in 1..=q.len() {
        for i in 1..=p.len() {
            let d = p.vertex(i - 1).dist2(&q.vertex(j - 1));
            out.push((i, j, d <= eps.squared()));
        }
    }
    Ok(out)
}

fn clamp(t: ParamPoint, c: &Curve) -> ParamPoint {
    ParamPoint(t.0.min(Rational::from_integer(c.len() as i64)))
}

fn to_f64(t: &ParamPoint) -> f64 {
    *t.0.numer() as f64 / *t.0.denom() as f64
}

fn rect(out: &mut String, x0: f64, x1: f64, y0: f64, y1: f64, free: bool) {
    writeln!(
        out,
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
        x0,
        y0,
        (x1 - x0).max(0.0),
        (y1 - y0).max(0.0),
        if free { FREE } else { BLOCKED }
    )
    .unwrap();
}

/// Maps a 0-based parameter to a drawing coordinate.
struct Axis {
    /// Cumulative position of each vertex.
    stops: Vec<f64>,
    total: f64,
}

impl Axis {
    fn new(c: &Curve, arclength: bool) -> Axis {
        let mut stops = vec![0.0];
        for k in 1..c.len() {
            let step = if arclength { c.vertex(k - 1).dist2(&c.vertex(k)).to_f64().unwrap_or(0.0).sqrt() } else { 1.0 };
            stops.push(stops[k - 1] + step);
        }
        if stops.len() == 1 {
            stops.push(1.0);
        }
        let total = *stops.last().expect("non-empty");
        Axis { stops, total }
    }

    fn map(&self, t: f64) -> f64 {
        let k = (t.floor() as usize).min(self.stops.len() - 2);
        let frac = t - k as f64;
        self.stops[k] + frac * (self.stops[k + 1] - self.stops[k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::frac;

    #[test]
    fn corners_follow_eps() {
        let p = Curve::from_ints(&[0, 10]).unwrap();
        let q = Curve::from_ints(&[1, 9]).unwrap();
        let free = corner_classes(&p, &q, Dist::from_int(1)).unwrap();
        assert!(free.contains(&(1, 1, true)) && free.contains(&(2, 2, true)));
        let tight = corner_classes(&p, &q, Dist::from_rational(frac(1, 2))).unwrap();
        assert!(tight.contains(&(1, 1, false)) && tight.contains(&(2, 2, false)));
        let svg = FsdRender::new(Dist::from_int(1)).render(&p, &q).unwrap();
        assert_eq!(svg, FsdRender::new(Dist::from_int(1)).render(&p, &q).unwrap());
        assert!(svg.contains(r#"class="corner free" data-i="1" data-j="1""#));
    }
}
