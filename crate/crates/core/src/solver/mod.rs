//! Bounded search: finite regions, tori, stripes, extendability and
//! margin-bounded languages.

mod engine;

pub(crate) use engine::Space;
use engine::{Engine, Goal};

use crate::error::{Error, Result};
use crate::lattice::{Cells, Coord, Extent, Lattice, Pattern, Rect, Symbol};
use crate::sft::{locally_admissible, SftPresentation};
use std::collections::BTreeSet;

/// Default enumeration cap.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// A rectangle to fill, with some cells fixed in advance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub rect: Rect,
    pub clamps: Cells,
}

impl Region {
    pub fn new(rect: Rect) -> Self {
        Region {
            rect,
            clamps: Cells::new(),
        }
    }

    pub fn with_clamps(rect: Rect, clamps: Cells) -> Self {
        Region { rect, clamps }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillMode {
    First,
    Count,
    Enumerate,
}

/// A complete coloring of a rectangle, stored row-major from `rect.lo`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filling {
    pub rect: Rect,
    pub values: Vec<Symbol>,
}

impl Filling {
    pub fn get(&self, c: Coord) -> Option<Symbol> {
        Space::Rect(self.rect).index(c).map(|i| self.values[i])
    }

    pub fn to_cells(&self) -> Cells {
        self.rect.cells().zip(self.values.iter().copied()).collect()
    }

    pub fn to_pattern(&self) -> Pattern {
        Pattern::canonicalize(&self.to_cells()).expect("rectangles are non-empty")
    }

    /// Anchored sub-pattern on `r ∩ rect`.
    pub fn window(&self, r: &Rect) -> Option<Pattern> {
        let cells: Cells = r
            .cells()
            .filter_map(|c| self.get(c).map(|s| (c, s)))
            .collect();
        Pattern::canonicalize(&cells).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FillResult {
    Unsat,
    Found(Filling),
    Count(u64),
    All(Vec<Filling>),
}

fn check_alphabet(s: &SftPresentation, cells: impl IntoIterator<Item = Symbol>) -> Result<()> {
    for x in cells {
        if !s.alphabet().contains(x) {
            return Err(Error::AlphabetMismatch(x.0));
        }
    }
    Ok(())
}

/// Backtracking fill of `r` in row-major cell order and alphabet symbol
/// order. `count` errors with `CapExceeded` rather than truncating.
pub fn fill_region(s: &SftPresentation, r: &Region, mode: FillMode, cap: u64) -> Result<FillResult> {
    if r.rect.is_empty() {
        return Err(Error::Precondition("empty region".into()));
    }
    if let Some(c) = r.clamps.keys().find(|c| !r.rect.contains(**c)) {
        return Err(Error::Precondition(format!("clamp {c} lies outside the region")));
    }
    check_alphabet(s, r.clamps.values().copied())?;
    let space = Space::Rect(r.rect);
    let clamps: Vec<(usize, Symbol)> = r
        .clamps
        .iter()
        .map(|(c, x)| (space.index(*c).expect("checked above"), *x))
        .collect();
    let engine = Engine::new(s, space, &clamps);
    let wrap = |values: Vec<Symbol>| Filling { rect: r.rect, values };
    Ok(match mode {
        FillMode::First => match engine.run(Goal::First)?.solutions.pop() {
            Some(v) => FillResult::Found(wrap(v)),
            None => FillResult::Unsat,
        },
        FillMode::Count => FillResult::Count(engine.run(Goal::Count(cap))?.count),
        FillMode::Enumerate => {
            if cap == 0 {
                return Err(Error::Precondition("enumeration cap must be at least 1".into()));
            }
            FillResult::All(engine.run(Goal::All(cap))?.solutions.into_iter().map(wrap).collect())
        }
    })
}

/// First filling in search order, if any.
pub fn fill_first(s: &SftPresentation, r: &Region) -> Result<Option<Filling>> {
    match fill_region(s, r, FillMode::First, 1)? {
        FillResult::Found(f) => Ok(Some(f)),
        _ => Ok(None),
    }
}

/// All colorings of the fundamental domain of a period lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusSolutionSet {
    pub p1: Coord,
    pub p2: Coord,
    pub lattice: Lattice,
    /// Each solution lists the fundamental cells `[0, a) × [0, d)` row-major.
    pub solutions: Vec<Vec<Symbol>>,
}

impl TorusSolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// Value of solution `k` unrolled to the plane.
    pub fn eval(&self, k: usize, c: Coord) -> Symbol {
        self.solutions[k][self.lattice.index(c)]
    }

    pub fn as_set(&self) -> BTreeSet<Vec<Symbol>> {
        self.solutions.iter().cloned().collect()
    }
}

pub fn torus_solutions(s: &SftPresentation, p1: Coord, p2: Coord) -> Result<TorusSolutionSet> {
    torus_solutions_capped(s, p1, p2, DEFAULT_CAP)
}

pub fn torus_solutions_capped(s: &SftPresentation, p1: Coord, p2: Coord, cap: u64) -> Result<TorusSolutionSet> {
    let lattice = Lattice::from_periods(p1, p2)?;
    let solutions = Engine::new(s, Space::Torus(lattice), &[]).run(Goal::All(cap))?.solutions;
    Ok(TorusSolutionSet {
        p1,
        p2,
        lattice,
        solutions,
    })
}

/// Number of torus solutions, failing above `cap`.
pub fn torus_count(s: &SftPresentation, lattice: Lattice, cap: u64) -> Result<u64> {
    Ok(Engine::new(s, Space::Torus(lattice), &[]).run(Goal::Count(cap))?.count)
}

/// First torus solution, if any.
pub fn torus_first(s: &SftPresentation, lattice: Lattice) -> Option<Vec<Symbol>> {
    Engine::new(s, Space::Torus(lattice), &[])
        .run(Goal::First)
        .ok()
        .and_then(|mut o| o.solutions.pop())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiperiodicWitness {
    pub p1: Coord,
    pub p2: Coord,
    pub lattice: Lattice,
    pub values: Vec<Symbol>,
}

/// Scans `(a,0),(0,b)` for `a, b <= bound` in lexicographic order.
pub fn has_biperiodic(s: &SftPresentation, bound: i64) -> Option<BiperiodicWitness> {
    for a in 1..=bound {
        for b in 1..=bound {
            let lattice = Lattice::rectangular(a, b);
            if let Some(values) = torus_first(s, lattice) {
                return Some(BiperiodicWitness {
                    p1: Coord::new(a, 0),
                    p2: Coord::new(0, b),
                    lattice,
                    values,
                });
            }
        }
    }
    None
}

/// Whether the bi-infinite repetition of `m` along `v` avoids every
/// forbidden pattern.
pub fn stripe_extendable(s: &SftPresentation, m: &Pattern, v: Coord) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::Precondition("stripe direction must be nonzero".into()));
    }
    s.check_pattern(m)?;
    let step = v.norm_inf();
    let diam = m.extent().max_side();
    // Translates closer than the pattern's diameter may overlap.
    for k in 1..=diam / step + 1 {
        let t = k * v;
        for (c, x) in m.cells() {
            if let Some(y) = m.get(*c + t) {
                if y != *x {
                    return Err(Error::OverlapConflict(v));
                }
            }
        }
    }
    // Every occurrence in the stripe has a translate meeting the k = 0 copy.
    let reach = (s.window().max_side() + diam) / step + 1;
    let mut patch = Cells::new();
    for k in -reach..=reach {
        for (c, x) in m.cells() {
            patch.insert(*c + k * v, *x);
        }
    }
    locally_admissible(s, &Pattern::canonicalize(&patch)?)
}

/// Whether `p` can be completed on its bounding box inflated by `margin`.
pub fn extendable(s: &SftPresentation, p: &Pattern, margin: i64) -> Result<bool> {
    extendable_at(s, &p.to_cells(), margin)
}

pub(crate) fn extendable_at(s: &SftPresentation, cells: &Cells, margin: i64) -> Result<bool> {
    let (lo, hi) = cells.keys().fold((Coord::new(i64::MAX, i64::MAX), Coord::new(i64::MIN, i64::MIN)), |(lo, hi), c| {
        (lo.min(*c), hi.max(*c))
    });
    if cells.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let rect = Rect::new(lo, hi).inflate(margin.max(0));
    Ok(fill_first(s, &Region::with_clamps(rect, cells.clone()))?.is_some())
}

/// All `n × n` patterns that are extendable with the given margin.
pub fn language(s: &SftPresentation, n: i64, margin: i64) -> Result<BTreeSet<Pattern>> {
    language_capped(s, n, margin, DEFAULT_CAP)
}

fn check_language_cap(s: &SftPresentation, n: i64, cap: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::Precondition("window size must be at least 1".into()));
    }
    let mut total: u64 = 1;
    for _ in 0..n * n {
        total = total.saturating_mul(s.alphabet().len() as u64);
    }
    if total > cap {
        return Err(Error::CapExceeded { cap });
    }
    Ok(())
}

/// Locally admissible `n × n` patterns, in search order.
pub fn admissible_blocks(s: &SftPresentation, n: i64, cap: u64) -> Result<Vec<Pattern>> {
    check_language_cap(s, n, cap)?;
    let rect = Rect::from_extent(Coord::ZERO, Extent::new(n, n));
    match fill_region(s, &Region::new(rect), FillMode::Enumerate, cap)? {
        FillResult::All(v) => Ok(v.iter().map(Filling::to_pattern).collect()),
        _ => unreachable!("enumerate mode"),
    }
}

pub fn language_capped(s: &SftPresentation, n: i64, margin: i64, cap: u64) -> Result<BTreeSet<Pattern>> {
    let mut out = BTreeSet::new();
    for p in admissible_blocks(s, n, cap)? {
        if margin == 0 || extendable(s, &p, margin)? {
            out.insert(p);
        }
    }
    Ok(out)
}

/// Smallest margin `m <= cap` after which the `n × n` language stops
/// shrinking for one step.
pub fn stabilization_margin(s: &SftPresentation, n: i64, cap: usize) -> Result<usize> {
    stabilization_margin_capped(s, n, cap, DEFAULT_CAP)
}

pub fn stabilization_margin_capped(s: &SftPresentation, n: i64, cap: usize, enum_cap: u64) -> Result<usize> {
    let mut cur = language_capped(s, n, 0, enum_cap)?;
    for m in 0..=cap {
        let mut next = BTreeSet::new();
        for p in &cur {
            if extendable(s, p, m as i64 + 1)? {
                next.insert(p.clone());
            }
        }
        if next == cur {
            return Ok(m);
        }
        cur = next;
    }
    Err(Error::NotStabilized { cap })
}

#[cfg(test)]
mod tests;
