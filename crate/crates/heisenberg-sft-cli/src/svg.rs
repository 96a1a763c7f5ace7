//! Deterministic SVG slices of a window.
//!
//! `yz` fixes `x` and puts `y` rightward, `z` upward. `xz` fixes `y` and puts
//! `z` rightward, `x` upward, so each counter layer is one row.

use std::fmt::Write as _;
use std::str::FromStr;

use heisenberg_sft::counter::CounterSym;
use heisenberg_sft::robinson::{Dir, Mark, Slot};
use heisenberg_sft::{RobTile, Seg, Site, Symbol, Window};
use thiserror::Error;

const CELL: i64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plane {
    Yz,
    Xz,
}

impl FromStr for Plane {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Plane, RenderError> {
        match s {
            "yz" => Ok(Plane::Yz),
            "xz" => Ok(Plane::Xz),
            _ => Err(RenderError::BadPlane(s.to_string())),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("unknown plane `{0}`, expected yz or xz")]
    BadPlane(String),
    #[error("the slice {plane}={fix} misses the box")]
    EmptySlice { plane: &'static str, fix: i64 },
}

struct Frame {
    u0: i64,
    v1: i64,
}

impl Frame {
    /// Top-left pixel of cell `(u, v)`.
    fn corner(&self, u: i64, v: i64) -> (i64, i64) {
        ((u - self.u0) * CELL, (self.v1 - v) * CELL)
    }
}

/// Point on the cell boundary in direction `d`, `t` of the way along the edge
/// (from W to E on N/S edges and from S to N on E/W edges).
fn edge_point(d: Dir, t: f64) -> (f64, f64) {
    let c = CELL as f64;
    match d {
        Dir::N => (t * c, 0.0),
        Dir::S => (t * c, c),
        Dir::E => (c, (1.0 - t) * c),
        Dir::W => (0.0, (1.0 - t) * c),
    }
}

fn lerp(a: (f64, f64), b: (f64, f64), t: f64) -> (f64, f64) {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

fn line(out: &mut String, class: &str, a: (f64, f64), b: (f64, f64)) {
    let _ = writeln!(
        out,
        r#"<line class="{class}" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"#,
        a.0, a.1, b.0, b.1
    );
}

fn robinson_glyph(out: &mut String, t: RobTile) {
    let c = CELL as f64 / 2.0;
    let centre = (c, c);
    let edges = t.edges();
    for (d, e) in Dir::ALL.into_iter().zip(edges) {
        if e.black == Mark::Head {
            line(out, "principal", centre, edge_point(d, 0.5));
        }
        for (slot, s) in e.slots.into_iter().enumerate() {
            let at = edge_point(d, if slot == 0 { 0.25 } else { 0.75 });
            match s {
                Slot::Arrow(m) => {
                    let class = if m == Mark::Head { "side out" } else { "side in" };
                    line(out, class, at, lerp(at, centre, 0.4));
                }
                Slot::Digit(v) => {
                    let p = lerp(at, centre, 0.35);
                    let _ = writeln!(out, r#"<text class="parity" x="{:.1}" y="{:.1}">{v}</text>"#, p.0, p.1);
                }
            }
        }
    }
}

fn counter_glyph(out: &mut String, s: CounterSym) {
    let c = CELL as f64;
    if s.seg.has_diag() {
        line(out, "seg diag", (0.0, c), (c, 0.0));
    }
    if s.seg.has_fwd() {
        line(out, "seg fwd", (c / 2.0, 0.0), (c / 2.0, c));
    }
    if s.seg == Seg::Coord {
        line(out, "seg coord", (0.0, c / 2.0), (c, c / 2.0));
    }
    let class = if s.bold { "digit bold" } else { "digit" };
    let _ = writeln!(out, r#"<text class="{class}" x="{:.1}" y="{:.1}">{}</text>"#, c / 2.0, c / 2.0, s.digit);
}

fn cell(out: &mut String, frame: &Frame, u: i64, v: i64, h: Site, s: Symbol) {
    let (px, py) = frame.corner(u, v);
    let class = match s {
        Symbol::Rob(t) if t.is_cross() => "cell rob cross",
        Symbol::Rob(_) => "cell rob arm",
        Symbol::Count(c) if c.bold => "cell count boldcell",
        Symbol::Count(_) => "cell count",
        Symbol::Letter(_) => "cell letter",
    };
    let _ = writeln!(
        out,
        r#"<g class="{class}" data-site="{},{},{}" transform="translate({px},{py})">"#,
        h.x, h.y, h.z
    );
    let _ = writeln!(out, r#"<rect width="{CELL}" height="{CELL}"/>"#);
    match s {
        Symbol::Rob(t) => robinson_glyph(out, t),
        Symbol::Count(c) => counter_glyph(out, c),
        Symbol::Letter(l) => {
            let c = CELL as f64 / 2.0;
            let _ = writeln!(out, r#"<text class="digit" x="{c:.1}" y="{c:.1}">{}</text>"#, l.code());
        }
    }
    out.push_str("</g>\n");
}

const STYLE: &str = "\
rect{fill:#fff;stroke:#bbb;stroke-width:0.5}
.cross rect{fill:#f4d35e}
.boldcell rect{fill:#ddd}
line{stroke:#000;stroke-linecap:round}
.principal{stroke-width:2.5}
.side{stroke-width:1}
.side.in{stroke:#777}
.seg{stroke:#1f5fbf;stroke-width:1.5}
.seg.coord{stroke:#c0392b}
text{font-family:monospace;text-anchor:middle;dominant-baseline:central}
.digit{font-size:12px}
.digit.bold{font-weight:900;font-size:14px}
.parity{font-size:6px;fill:#555}
";

/// Render the slice of `w` with the named coordinate held at `fix`.
pub fn render(w: &Window, plane: Plane, fix: i64) -> Result<String, RenderError> {
    let b = w.bbox();
    let (name, lo, hi) = match plane {
        Plane::Yz => ("x", b.x0, b.x1),
        Plane::Xz => ("y", b.y0, b.y1),
    };
    if fix < lo || fix > hi {
        return Err(RenderError::EmptySlice { plane: name, fix });
    }
    let (u0, u1, v0, v1) = match plane {
        Plane::Yz => (b.y0, b.y1, b.z0, b.z1),
        Plane::Xz => (b.z0, b.z1, b.x0, b.x1),
    };
    let frame = Frame { u0, v1 };
    let width = (u1 - u0 + 1) * CELL;
    let height = (v1 - v0 + 1) * CELL;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "<title>{} {name}={fix}</title>", w.variant().name());
    let _ = writeln!(out, "<style>\n{STYLE}</style>");
    for v in (v0..=v1).rev() {
        for u in u0..=u1 {
            let h = match plane {
                Plane::Yz => Site::new(fix, u, v),
                Plane::Xz => Site::new(v, fix, u),
            };
            let s = w.get(h).expect("slice sites lie in the box");
            cell(&mut out, &frame, u, v, h, s);
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use heisenberg_sft::generate::{gen_omega, GenParams};
    use heisenberg_sft::robinson::in_c;
    use heisenberg_sft::{SiteBox, Variant};

    fn sample() -> Window {
        gen_omega(&GenParams::new(SiteBox::symmetric(2, 9).unwrap(), Variant::Omega)).unwrap()
    }

    fn sites_with_class(svg: &str, class: &str) -> Vec<(i64, i64, i64)> {
        let needle = format!(r#"<g class="{class}" data-site=""#);
        svg.lines()
            .filter_map(|l| l.strip_prefix(&needle))
            .map(|rest| {
                let coords = rest.split('"').next().unwrap();
                let v: Vec<i64> = coords.split(',').map(|c| c.parse().unwrap()).collect();
                (v[0], v[1], v[2])
            })
            .collect()
    }

    #[test]
    fn crosses_are_drawn_exactly_on_c() {
        let w = sample();
        let svg = render(&w, Plane::Yz, 0).unwrap();
        let drawn = sites_with_class(&svg, "cell rob cross");
        let mut expect = Vec::new();
        for z in (-9..=9).rev() {
            for y in -9..=9 {
                if in_c(y, z) {
                    expect.push((0, y, z));
                }
            }
        }
        assert_eq!(drawn, expect);
        assert!(!drawn.is_empty());
    }

    #[test]
    fn xz_slice_at_y_one_has_bold_columns_every_other_cell() {
        let w = sample();
        let svg = render(&w, Plane::Xz, 1).unwrap();
        let bold = sites_with_class(&svg, "cell count boldcell");
        assert!(!bold.is_empty());
        let cols: std::collections::BTreeSet<i64> = bold.iter().map(|s| s.2.rem_euclid(2)).collect();
        assert_eq!(cols.len(), 1);
        for x in [-1, 1] {
            assert_eq!(bold.iter().filter(|s| s.0 == x).count(), 9);
        }
    }

    #[test]
    fn deterministic_and_bounded() {
        let w = sample();
        assert_eq!(render(&w, Plane::Xz, 3).unwrap(), render(&w, Plane::Xz, 3).unwrap());
        assert_eq!(
            render(&w, Plane::Yz, 3),
            Err(RenderError::EmptySlice { plane: "x", fix: 3 })
        );
        assert!("zz".parse::<Plane>().is_err());
    }
}
