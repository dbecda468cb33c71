//! Raster (binary PPM) and vector (SVG) pictures of a rectangle of a
//! configuration. The top row of the picture is the highest `y`.

use crate::error::{Error, Result};
use crate::lattice::{Alphabet, Coord, Rect, Symbol};
use std::collections::BTreeMap;
use std::fmt::Write;

pub type Rgb = [u8; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ppm,
    Svg,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        match s {
            "ppm" => Ok(Format::Ppm),
            "svg" => Ok(Format::Svg),
            _ => Err(Error::InvalidRenderSpec(format!("unknown format `{s}`"))),
        }
    }
}

/// Colours for the symbol names used across the gallery.
const KNOWN: &[(&str, Rgb)] = &[
    ("green", [0, 128, 0]),
    ("orange", [255, 140, 0]),
    ("a", [230, 230, 230]),
    ("b", [200, 40, 40]),
    ("c", [40, 60, 200]),
    ("0", [255, 255, 255]),
    ("1", [0, 0, 0]),
    ("out", [250, 250, 250]),
    ("post", [60, 60, 60]),
    ("in", [210, 225, 245]),
    ("su", [220, 30, 30]),
    ("sd", [240, 120, 30]),
    ("wall", [90, 90, 160]),
    ("ca", [20, 160, 60]),
    ("cb", [160, 20, 160]),
    ("k", [0, 0, 0]),
    ("h", [200, 30, 30]),
    ("u", [30, 160, 30]),
    ("d", [30, 30, 200]),
    ("p", [240, 240, 240]),
    ("q", [190, 190, 190]),
    ("r", [250, 230, 150]),
    ("s", [200, 170, 90]),
];

/// Fallback colours for names outside [`KNOWN`], cycled in alphabet order.
const CYCLE: &[Rgb] = &[
    [31, 119, 180],
    [255, 127, 14],
    [44, 160, 44],
    [214, 39, 40],
    [148, 103, 189],
    [140, 86, 75],
    [227, 119, 194],
    [127, 127, 127],
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette(pub BTreeMap<String, Rgb>);

impl Palette {
    /// Known colours where the name has one, the cycle otherwise.
    pub fn default_for(a: &Alphabet) -> Palette {
        let mut spare = CYCLE.iter().cycle();
        Palette(
            a.names()
                .iter()
                .map(|n| {
                    let c = KNOWN.iter().find(|(k, _)| k == n).map(|(_, c)| *c);
                    (n.clone(), c.unwrap_or_else(|| *spare.next().expect("cycle")))
                })
                .collect(),
        )
    }

    /// Lines `name r g b`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Palette> {
        let mut out = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let rgb: Option<Vec<u8>> = f.get(1..).map(|xs| xs.iter().filter_map(|x| x.parse().ok()).collect());
            match rgb {
                Some(c) if f.len() == 4 && c.len() == 3 => {
                    out.insert(f[0].to_string(), [c[0], c[1], c[2]]);
                }
                _ => return Err(Error::syntax(i + 1, 1, "expected `name r g b` with components in 0..=255")),
            }
        }
        Ok(Palette(out))
    }

    fn table(&self, a: &Alphabet) -> Result<Vec<Rgb>> {
        a.names()
            .iter()
            .map(|n| self.0.get(n).copied().ok_or_else(|| Error::PaletteMissingSymbol(n.clone())))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub rect: Rect,
    pub palette: Palette,
    /// Pixels per cell side.
    pub scale: u32,
    pub format: Format,
}

/// Draws `rect` of the configuration `x`.
pub fn render(a: &Alphabet, x: impl Fn(Coord) -> Symbol, spec: &RenderSpec) -> Result<Vec<u8>> {
    if spec.scale == 0 {
        return Err(Error::InvalidRenderSpec("scale must be positive".into()));
    }
    if spec.rect.is_empty() {
        return Err(Error::InvalidRenderSpec("empty rectangle".into()));
    }
    let colours = spec.palette.table(a)?;
    let r = spec.rect;
    // rows from the top of the picture down
    let rows: Vec<Vec<Rgb>> = (r.lo.y..=r.hi.y)
        .rev()
        .map(|y| (r.lo.x..=r.hi.x).map(|xx| colours[x(Coord::new(xx, y)).index()]).collect())
        .collect();
    Ok(match spec.format {
        Format::Ppm => ppm(&rows, spec.scale as usize),
        Format::Svg => svg(&rows, spec.scale).into_bytes(),
    })
}

fn ppm(rows: &[Vec<Rgb>], k: usize) -> Vec<u8> {
    let (w, h) = (rows[0].len() * k, rows.len() * k);
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    for row in rows {
        for _ in 0..k {
            for c in row {
                for _ in 0..k {
                    out.extend_from_slice(c);
                }
            }
        }
    }
    out
}

fn svg(rows: &[Vec<Rgb>], k: u32) -> String {
    let (w, h) = (rows[0].len() as u32 * k, rows.len() as u32 * k);
    let mut out = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" shape-rendering=\"crispEdges\">\n");
    for (j, row) in rows.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            let _ = writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{k}\" height=\"{k}\" fill=\"#{:02x}{:02x}{:02x}\"/>",
                i as u32 * k,
                j as u32 * k,
                c[0],
                c[1],
                c[2]
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// RGBA bytes, one pixel per cell, top row first.
pub fn rgba(a: &Alphabet, x: impl Fn(Coord) -> Symbol, r: Rect, palette: &Palette) -> Result<Vec<u8>> {
    let colours = palette.table(a)?;
    let mut out = Vec::with_capacity(r.area() as usize * 4);
    for y in (r.lo.y..=r.hi.y).rev() {
        for xx in r.lo.x..=r.hi.x {
            out.extend_from_slice(&colours[x(Coord::new(xx, y)).index()]);
            out.push(255);
        }
    }
    Ok(out)
}
