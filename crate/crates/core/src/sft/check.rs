//! Occurrence search for forbidden sets on finite canvases and tori.

use super::{ForbiddenSet, PairRule};
use crate::lattice::{Coord, Lattice, Pattern, Rect, Symbol};

/// Something forbidden patterns can be searched in.
pub(crate) trait Canvas {
    fn get(&self, c: Coord) -> Option<Symbol>;
    /// Cells where the first cell of an occurrence may sit, up to the
    /// canvas's own translations.
    fn base_cells(&self) -> Vec<Coord>;
    fn lattice(&self) -> Option<&Lattice> {
        None
    }
    /// Whether some fully defined `side × side` square contains `r`.
    fn square_around(&self, r: &Rect, side: i64) -> bool;
}

/// A located occurrence: its bounding box and the side of the square it
/// must sit in (0 for plain patterns).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Occ {
    pub rect: Rect,
    pub side: i64,
}

pub(crate) fn pattern_occurrences(p: &Pattern, canvas: &dyn Canvas, out: &mut Vec<Occ>, stop_at_first: bool) {
    let (first, first_sym) = p.cells()[0];
    for b in canvas.base_cells() {
        if canvas.get(b) != Some(first_sym) {
            continue;
        }
        let anchor = b - first;
        if p
            .cells()
            .iter()
            .all(|(c, s)| canvas.get(*c + anchor) == Some(*s))
        {
            out.push(Occ {
                rect: p.bounding_rect().translate(anchor),
                side: 0,
            });
            if stop_at_first {
                return;
            }
        }
    }
}

fn set_occurrences(set: &ForbiddenSet, canvas: &dyn Canvas, stop_at_first: bool) -> Vec<Occ> {
    let mut out = Vec::new();
    for p in &set.patterns {
        pattern_occurrences(p, canvas, &mut out, stop_at_first);
        if stop_at_first && !out.is_empty() {
            return out;
        }
    }
    for r in &set.pairs {
        rule_occurrences(r, canvas, &mut out, stop_at_first);
        if stop_at_first && !out.is_empty() {
            return out;
        }
    }
    out
}

fn rule_occurrences(rule: &PairRule, canvas: &dyn Canvas, out: &mut Vec<Occ>, stop_at_first: bool) {
    let left = set_occurrences(&rule.left, canvas, false);
    if left.is_empty() {
        return;
    }
    let right = set_occurrences(&rule.right, canvas, false);
    for l in &left {
        for r in &right {
            if let Some(u) = fit_pair(l, r, rule.side, canvas) {
                out.push(Occ {
                    rect: u,
                    side: rule.side,
                });
                if stop_at_first {
                    return;
                }
            }
        }
    }
}

fn fits(u: &Rect, side: i64) -> bool {
    u.width() <= side && u.height() <= side
}

fn fit_pair(l: &Occ, r: &Occ, side: i64, canvas: &dyn Canvas) -> Option<Rect> {
    if l.side > side || r.side > side {
        return None;
    }
    match canvas.lattice() {
        None => {
            let u = l.rect.union(&r.rect);
            (fits(&u, side) && canvas.square_around(&u, side)).then_some(u)
        }
        Some(lat) => {
            let (e1, e2) = lat.basis();
            // Offsets s with the shifted `r` inside a common window along one axis.
            let range = |l_lo: i64, l_hi: i64, r_lo: i64, r_hi: i64| (l_hi - side + 1 - r_lo, l_lo + side - 1 - r_hi);
            let (ylo, yhi) = range(l.rect.lo.y, l.rect.hi.y, r.rect.lo.y, r.rect.hi.y);
            for k2 in ylo.div_euclid(e2.y) + 1 - i64::from(ylo.rem_euclid(e2.y) == 0)..=yhi.div_euclid(e2.y) {
                let (xlo, xhi) = range(l.rect.lo.x, l.rect.hi.x, r.rect.lo.x + k2 * e2.x, r.rect.hi.x + k2 * e2.x);
                let k1 = xlo.div_euclid(e1.x) + 1 - i64::from(xlo.rem_euclid(e1.x) == 0);
                if k1 * e1.x <= xhi {
                    let u = l.rect.union(&r.rect.translate(k1 * e1 + k2 * e2));
                    debug_assert!(fits(&u, side));
                    return Some(u);
                }
            }
            None
        }
    }
}

/// True if some forbidden pattern of `set` occurs on the canvas.
pub(crate) fn violates(set: &ForbiddenSet, canvas: &dyn Canvas) -> bool {
    !set_occurrences(set, canvas, true).is_empty()
}

/// A finite pattern read as a canvas; holes are undefined cells.
pub(crate) struct PatternCanvas<'a>(pub &'a Pattern);

impl Canvas for PatternCanvas<'_> {
    fn get(&self, c: Coord) -> Option<Symbol> {
        self.0.get(c)
    }

    fn base_cells(&self) -> Vec<Coord> {
        self.0.domain().collect()
    }

    fn square_around(&self, r: &Rect, side: i64) -> bool {
        let bounds = self.0.bounding_rect();
        let lo_x = (r.hi.x - side + 1).max(bounds.lo.x);
        let lo_y = (r.hi.y - side + 1).max(bounds.lo.y);
        for y0 in lo_y..=r.lo.y {
            for x0 in lo_x..=r.lo.x {
                let sq = Rect::from_extent(Coord::new(x0, y0), crate::lattice::Extent::new(side, side));
                if bounds.contains_rect(&sq) && sq.cells().all(|c| self.0.contains(c)) {
                    return true;
                }
            }
        }
        false
    }
}

/// A fully assigned rectangle.
pub(crate) struct RectCanvas<'a> {
    pub rect: Rect,
    pub values: &'a [Symbol],
}

impl Canvas for RectCanvas<'_> {
    fn get(&self, c: Coord) -> Option<Symbol> {
        if !self.rect.contains(c) {
            return None;
        }
        let i = (c.y - self.rect.lo.y) * self.rect.width() + (c.x - self.rect.lo.x);
        Some(self.values[i as usize])
    }

    fn base_cells(&self) -> Vec<Coord> {
        self.rect.cells().collect()
    }

    fn square_around(&self, r: &Rect, side: i64) -> bool {
        self.rect.contains_rect(r) && self.rect.width() >= side && self.rect.height() >= side
    }
}

/// A coloring of a fundamental domain, read periodically.
pub(crate) struct TorusCanvas<'a> {
    pub lattice: Lattice,
    pub values: &'a [Symbol],
}

impl Canvas for TorusCanvas<'_> {
    fn get(&self, c: Coord) -> Option<Symbol> {
        Some(self.values[self.lattice.index(c)])
    }

    fn base_cells(&self) -> Vec<Coord> {
        self.lattice.cells().collect()
    }

    fn lattice(&self) -> Option<&Lattice> {
        Some(&self.lattice)
    }

    fn square_around(&self, _r: &Rect, _side: i64) -> bool {
        true
    }
}
