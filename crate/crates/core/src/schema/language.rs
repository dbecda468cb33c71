use super::{HalfPlane, Schema, SchemaPresentation};
use crate::error::Result;
use crate::lattice::{Coord, Extent, Pattern, Rect};
use crate::sft::{locally_admissible, SftPresentation, Subshift};
use std::collections::BTreeSet;

/// Radius used for ray-sector shapes, whose languages are never certified.
pub const RAY_CHECK_RADIUS: i64 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaLanguage {
    pub patterns: BTreeSet<Pattern>,
    /// Whether every `n × n` window of the configuration was seen.
    pub stabilized: bool,
}

/// The `n × n` window anchored at `t`.
pub fn window_at(s: &Schema, t: Coord, n: i64) -> Pattern {
    let r = Rect::from_extent(t, Extent::new(n, n));
    Pattern::canonicalize(&s.cells_on(&r)).expect("n >= 1")
}

/// Bound on how many slabs an `n × n` window of `h` can span.
pub(crate) fn spread(h: &HalfPlane, n: i64) -> i64 {
    let e = h.lattice().extent();
    let det = h.v().cross(h.w()).abs();
    (2 * h.v().norm_inf() * (n - 1 + e.w + e.h) + det - 1) / det
}

/// Anchor radius past which no new `n × n` window appears, when one is known.
pub fn stabilization_radius(s: &Schema, n: i64) -> Option<i64> {
    let fund = |e: Extent| e.max_side();
    match s {
        Schema::Biperiodic(b) => Some(fund(b.lattice().extent()) + n),
        Schema::Defect(d) => {
            let r = d.patch_rect();
            let pr = [r.lo.x, r.lo.y, r.hi.x, r.hi.y].iter().map(|v| v.abs()).max().unwrap_or(0);
            Some(pr + fund(d.background().lattice().extent()) + n)
        }
        Schema::HalfPlane(h) => Some(fund(h.lattice().extent()) + (spread(h, n) + 2) * h.w().norm_inf() + n),
        Schema::Rays(_) => None,
    }
}

/// `n × n` windows with anchors in `[-radius, radius]²`. The set is the full
/// language exactly when `radius` reaches the stabilization radius.
pub fn schema_language(s: &Schema, n: i64, radius: i64) -> SchemaLanguage {
    let patterns = Rect::ball(radius).cells().map(|t| window_at(s, t, n)).collect();
    let stabilized = stabilization_radius(s, n).is_some_and(|r| radius >= r);
    SchemaLanguage { patterns, stabilized }
}

/// The full language when it is certifiable, else windows up to `fallback`.
pub(crate) fn best_language(s: &Schema, n: i64, fallback: i64) -> SchemaLanguage {
    schema_language(s, n, stabilization_radius(s, n).unwrap_or(fallback))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Member,
    NonMember,
    /// No violation found, but only a bounded part was inspected.
    Bounded,
}

impl Membership {
    pub fn holds(self) -> bool {
        self != Membership::NonMember
    }
}

/// Whether the configuration avoids every forbidden pattern. Exact except
/// for ray-sector shapes, which are inspected on a bounded ball.
pub fn schema_in_sft(s: &Schema, f: &SftPresentation) -> Result<Membership> {
    let n = f.window().max_side();
    let lang = best_language(s, n, RAY_CHECK_RADIUS);
    for p in &lang.patterns {
        if !locally_admissible(f, p)? {
            return Ok(Membership::NonMember);
        }
    }
    Ok(if lang.stabilized { Membership::Member } else { Membership::Bounded })
}

/// Like [`schema_in_sft`]; predicate subshifts are checked on one ball of
/// `radius`, which is only ever a bounded answer.
pub fn schema_in_subshift(s: &Schema, x: &Subshift, radius: i64) -> Result<Membership> {
    match x {
        Subshift::Sft(f) => schema_in_sft(s, f),
        Subshift::Predicate(p) => {
            let ball = Pattern::canonicalize(&s.cells_on(&Rect::ball(radius)))?;
            Ok(if p.forbids(&ball) { Membership::NonMember } else { Membership::Bounded })
        }
    }
}

impl SchemaPresentation {
    /// Whether every schema lies in `x`, with the weakest certainty seen.
    pub fn check_in(&self, x: &Subshift, radius: i64) -> Result<Vec<Membership>> {
        self.schemas.iter().map(|s| schema_in_subshift(&s.schema, x, radius)).collect()
    }
}
