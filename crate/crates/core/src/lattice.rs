//! Coordinates, alphabets and finite patterns on the square lattice.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A vector of Z².
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub x: i64,
    pub y: i64,
}

impl Coord {
    pub const ZERO: Coord = Coord { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Coord { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Maximum-coordinate norm.
    pub fn norm_inf(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn norm_sq(self) -> i64 {
        self.x * self.x + self.y * self.y
    }

    pub fn cross(self, other: Coord) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn min(self, other: Coord) -> Coord {
        Coord::new(self.x.min(other.x), self.y.min(other.y))
    }

    pub fn max(self, other: Coord) -> Coord {
        Coord::new(self.x.max(other.x), self.y.max(other.y))
    }

    /// Row-major ordering key: bottom row first, then left to right.
    pub fn row_major(self) -> (i64, i64) {
        (self.y, self.x)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for Coord {
    type Output = Coord;
    fn add(self, o: Coord) -> Coord {
        Coord::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Coord {
    type Output = Coord;
    fn sub(self, o: Coord) -> Coord {
        Coord::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord::new(-self.x, -self.y)
    }
}

impl Mul<Coord> for i64 {
    type Output = Coord;
    fn mul(self, c: Coord) -> Coord {
        Coord::new(self * c.x, self * c.y)
    }
}

/// True iff the two vectors span a rank-2 lattice.
pub fn independent(v1: Coord, v2: Coord) -> bool {
    v1.cross(v2) != 0
}

/// Index of a symbol in its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u8);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Solvers store candidate sets as 64-bit masks.
pub const MAX_ALPHABET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if names.len() > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(format!(
                "{} symbols, at most {MAX_ALPHABET} supported",
                names.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !valid_name(n) {
                return Err(Error::InvalidAlphabet(format!("bad symbol name `{n}`")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{n}`")));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Symbol(i as u8))
    }

    pub fn lookup(&self, name: &str) -> Result<Symbol> {
        self.symbol(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(|i| Symbol(i as u8))
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.index() < self.names.len()
    }
}

fn valid_name(n: &str) -> bool {
    !n.is_empty()
        && n != "."
        && n != "---"
        && !n.ends_with(':')
        && !n.starts_with('#')
        && !n.chars().any(char::is_whitespace)
}

/// Width and height of a box, both at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Extent {
    pub w: i64,
    pub h: i64,
}

impl Extent {
    pub const fn new(w: i64, h: i64) -> Self {
        Extent { w, h }
    }

    pub fn max_side(self) -> i64 {
        self.w.max(self.h)
    }

    pub fn union(self, o: Extent) -> Extent {
        Extent::new(self.w.max(o.w), self.h.max(o.h))
    }
}

/// Inclusive axis-aligned box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rect {
    pub lo: Coord,
    pub hi: Coord,
}

impl Rect {
    pub fn new(lo: Coord, hi: Coord) -> Self {
        Rect { lo, hi }
    }

    pub fn from_extent(lo: Coord, e: Extent) -> Self {
        Rect::new(lo, lo + Coord::new(e.w - 1, e.h - 1))
    }

    /// Square `[-r, r]²`.
    pub fn ball(r: i64) -> Self {
        Rect::new(Coord::new(-r, -r), Coord::new(r, r))
    }

    pub fn width(&self) -> i64 {
        self.hi.x - self.lo.x + 1
    }

    pub fn height(&self) -> i64 {
        self.hi.y - self.lo.y + 1
    }

    pub fn area(&self) -> i64 {
        if self.is_empty() {
            0
        } else {
            self.width() * self.height()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.hi.x < self.lo.x || self.hi.y < self.lo.y
    }

    pub fn contains(&self, c: Coord) -> bool {
        c.x >= self.lo.x && c.x <= self.hi.x && c.y >= self.lo.y && c.y <= self.hi.y
    }

    pub fn contains_rect(&self, r: &Rect) -> bool {
        self.contains(r.lo) && self.contains(r.hi)
    }

    pub fn union(&self, o: &Rect) -> Rect {
        Rect::new(self.lo.min(o.lo), self.hi.max(o.hi))
    }

    pub fn translate(&self, v: Coord) -> Rect {
        Rect::new(self.lo + v, self.hi + v)
    }

    pub fn inflate(&self, m: i64) -> Rect {
        Rect::new(self.lo - Coord::new(m, m), self.hi + Coord::new(m, m))
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Coord> + '_ {
        let (lo, hi) = (self.lo, self.hi);
        (lo.y..=hi.y).flat_map(move |y| (lo.x..=hi.x).map(move |x| Coord::new(x, y)))
    }
}

/// Anchored finite coloring; the raw material patterns are made from.
pub type Cells = BTreeMap<Coord, Symbol>;

/// A finite partial coloring of Z² taken up to translation.
///
/// The stored domain is translated so that its minimum x and minimum y are
/// both zero. Domains may have holes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    // Sorted by coordinate.
    cells: Vec<(Coord, Symbol)>,
    extent: Extent,
}

impl Pattern {
    /// Canonical translate of `raw`.
    pub fn canonicalize(raw: &Cells) -> Result<Pattern> {
        let mut it = raw.keys();
        let first = it.next().ok_or(Error::EmptyPattern)?;
        let (mut lo, mut hi) = (*first, *first);
        for c in it {
            lo = lo.min(*c);
            hi = hi.max(*c);
        }
        let cells = raw.iter().map(|(c, s)| (*c - lo, *s)).collect();
        Ok(Pattern {
            cells,
            extent: Extent::new(hi.x - lo.x + 1, hi.y - lo.y + 1),
        })
    }

    pub fn from_cells(cells: impl IntoIterator<Item = (Coord, Symbol)>) -> Result<Pattern> {
        Pattern::canonicalize(&cells.into_iter().collect())
    }

    /// Full rectangle from rows listed bottom row first.
    pub fn from_rows_bottom_up(rows: &[Vec<Symbol>]) -> Result<Pattern> {
        let mut cells = Cells::new();
        for (y, row) in rows.iter().enumerate() {
            for (x, s) in row.iter().enumerate() {
                cells.insert(Coord::new(x as i64, y as i64), *s);
            }
        }
        Pattern::canonicalize(&cells)
    }

    pub fn single(s: Symbol) -> Pattern {
        Pattern {
            cells: vec![(Coord::ZERO, s)],
            extent: Extent::new(1, 1),
        }
    }

    pub fn cells(&self) -> &[(Coord, Symbol)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    pub fn width(&self) -> i64 {
        self.extent.w
    }

    pub fn height(&self) -> i64 {
        self.extent.h
    }

    pub fn bounding_rect(&self) -> Rect {
        Rect::from_extent(Coord::ZERO, self.extent)
    }

    pub fn get(&self, c: Coord) -> Option<Symbol> {
        self.cells
            .binary_search_by(|(k, _)| k.cmp(&c))
            .ok()
            .map(|i| self.cells[i].1)
    }

    pub fn contains(&self, c: Coord) -> bool {
        self.get(c).is_some()
    }

    /// True when the domain is the whole bounding rectangle.
    pub fn is_full(&self) -> bool {
        self.cells.len() as i64 == self.extent.w * self.extent.h
    }

    pub fn domain(&self) -> impl Iterator<Item = Coord> + '_ {
        self.cells.iter().map(|(c, _)| *c)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.cells.iter().map(|(_, s)| *s)
    }

    pub fn to_cells(&self) -> Cells {
        self.cells.iter().copied().collect()
    }

    /// The anchored cells of this pattern placed with its origin at `anchor`.
    pub fn placed_at(&self, anchor: Coord) -> Cells {
        shift_pattern(self, anchor)
    }

    /// Sub-pattern on the cells of the rectangle, if any remain.
    pub fn restrict(&self, r: &Rect) -> Option<Pattern> {
        let cells: Cells = self
            .cells
            .iter()
            .filter(|(c, _)| r.contains(*c))
            .copied()
            .collect();
        Pattern::canonicalize(&cells).ok()
    }
}

/// Translate the pattern's cells by `v`, keeping the anchored result.
pub fn shift_pattern(p: &Pattern, v: Coord) -> Cells {
    p.cells.iter().map(|(c, s)| (*c + v, *s)).collect()
}

/// All anchors `v` such that `q(x + v) = p(x)` on the domain of `p`.
pub fn occurs_in(p: &Pattern, q: &Pattern) -> BTreeSet<Coord> {
    let (first, first_sym) = p.cells[0];
    q.cells
        .iter()
        .filter(|(_, s)| *s == first_sym)
        .map(|(c, _)| *c - first)
        .filter(|v| p.cells.iter().all(|(c, s)| q.get(*c + *v) == Some(*s)))
        .collect()
}

/// True if `p` occurs somewhere in `q`.
pub fn appears_in(p: &Pattern, q: &Pattern) -> bool {
    if p.width() > q.width() || p.height() > q.height() || p.len() > q.len() {
        return false;
    }
    let (first, first_sym) = p.cells[0];
    q.cells.iter().any(|(c, s)| {
        *s == first_sym && {
            let v = *c - first;
            p.cells.iter().all(|(pc, ps)| q.get(*pc + v) == Some(*ps))
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DomainPeriod {
    pub v: Coord,
    /// No pair `x, x + v` lies inside the domain.
    pub vacuous: bool,
}

/// Nonzero vectors `v` with `|v.x| <= search.w`, `|v.y| <= search.h` such that
/// `p(x) = p(x + v)` whenever both are defined.
pub fn domain_periods(p: &Pattern, search: Extent) -> Vec<DomainPeriod> {
    let mut out = Vec::new();
    for vy in -search.h..=search.h {
        for vx in -search.w..=search.w {
            let v = Coord::new(vx, vy);
            if v.is_zero() {
                continue;
            }
            let mut witnessed = false;
            let mut ok = true;
            for (c, s) in &p.cells {
                if let Some(t) = p.get(*c + v) {
                    witnessed = true;
                    if t != *s {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                out.push(DomainPeriod {
                    v,
                    vacuous: !witnessed,
                });
            }
        }
    }
    out
}

/// Smallest witnessed period, ties broken by squared length then `(x, y)`.
pub fn minimal_period(periods: &[DomainPeriod]) -> Option<Coord> {
    periods
        .iter()
        .filter(|p| !p.vacuous)
        .map(|p| p.v)
        .min_by_key(|v| (v.norm_sq(), v.x, v.y))
}

/// A full-rank sublattice of Z² in Hermite normal form with basis
/// `(a, 0)` and `(b, d)`, `0 <= b < a`, `d > 0`.
///
/// Its fundamental domain is the rectangle `[0, a) × [0, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lattice {
    a: i64,
    b: i64,
    d: i64,
}

impl Lattice {
    pub fn from_periods(p1: Coord, p2: Coord) -> Result<Lattice> {
        if !independent(p1, p2) {
            return Err(Error::IndependenceViolation(p1, p2));
        }
        let (g, s, t) = ext_gcd(p1.y, p2.y);
        // u has y-component g; w lies on the x axis.
        let (u, w) = if g == 0 {
            unreachable!("independent vectors cannot both be horizontal")
        } else {
            let u = s * p1 + t * p2;
            let w = (p2.y / g) * p1 - (p1.y / g) * p2;
            (u, w)
        };
        let (u, g) = if g < 0 { (-u, -g) } else { (u, g) };
        let a = w.x.abs();
        debug_assert!(a > 0 && w.y == 0 && u.y == g);
        Ok(Lattice {
            a,
            b: u.x.rem_euclid(a),
            d: g,
        })
    }

    pub fn rectangular(a: i64, d: i64) -> Lattice {
        assert!(a > 0 && d > 0);
        Lattice { a, b: 0, d }
    }

    pub fn basis(&self) -> (Coord, Coord) {
        (Coord::new(self.a, 0), Coord::new(self.b, self.d))
    }

    /// Fundamental domain size `(a, d)`.
    pub fn extent(&self) -> Extent {
        Extent::new(self.a, self.d)
    }

    pub fn area(&self) -> i64 {
        self.a * self.d
    }

    /// Representative of `c` in the fundamental rectangle.
    pub fn reduce(&self, c: Coord) -> Coord {
        let k = c.y.div_euclid(self.d);
        let x = c.x - k * self.b;
        Coord::new(x.rem_euclid(self.a), c.y - k * self.d)
    }

    pub fn index(&self, c: Coord) -> usize {
        let r = self.reduce(c);
        (r.y * self.a + r.x) as usize
    }

    pub fn cell(&self, i: usize) -> Coord {
        let i = i as i64;
        Coord::new(i % self.a, i / self.a)
    }

    pub fn contains(&self, v: Coord) -> bool {
        self.reduce(v).is_zero()
    }

    /// Fundamental cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Coord> + '_ {
        Rect::from_extent(Coord::ZERO, self.extent()).cells().collect::<Vec<_>>().into_iter()
    }
}

/// Returns `(g, s, t)` with `s*a + t*b = g = ±gcd(a, b)`.
pub(crate) fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
