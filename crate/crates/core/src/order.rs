//! The pattern pre-order between configurations, its Hasse diagram, and
//! Cantor-Bendixson ranks of schema presentations.

use crate::error::{Error, Result};
use crate::lattice::{Coord, Pattern, Rect};
use crate::schema::{best_language, spread, stabilization_radius, window_at, Letter, Schema, SchemaPresentation, RAY_CHECK_RADIUS};
use std::fmt;

/// Outcome of a pre-order query. The bounded variants mean only part of a
/// language could be inspected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    BoundedTrue,
    BoundedFalse,
}

impl Verdict {
    pub fn holds(self) -> bool {
        matches!(self, Verdict::True | Verdict::BoundedTrue)
    }

    pub fn is_definitive(self) -> bool {
        matches!(self, Verdict::True | Verdict::False)
    }

    fn and(self, o: Verdict) -> Verdict {
        match (self.holds() && o.holds(), self.is_definitive() && o.is_definitive()) {
            (true, true) => Verdict::True,
            (true, false) => Verdict::BoundedTrue,
            // one definitive failure settles it
            (false, _) if (!self.holds() && self.is_definitive()) || (!o.holds() && o.is_definitive()) => Verdict::False,
            (false, _) => Verdict::BoundedFalse,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::BoundedTrue => "bounded-true",
            Verdict::BoundedFalse => "bounded-false",
        })
    }
}

fn compare(x: &crate::schema::SchemaLanguage, y: &crate::schema::SchemaLanguage) -> Verdict {
    if x.patterns.is_subset(&y.patterns) {
        if x.stabilized && y.stabilized {
            Verdict::True
        } else {
            Verdict::BoundedTrue
        }
    } else if y.stabilized {
        Verdict::False
    } else {
        Verdict::BoundedFalse
    }
}

/// Whether every `n × n` pattern of `x` appears in `y`. Languages that cannot
/// be certified are read off the ball of `radius`.
pub fn preceq(x: &Schema, y: &Schema, n: i64, radius: i64) -> Verdict {
    compare(&best_language(x, n, radius), &best_language(y, n, radius))
}

pub fn equivalent(x: &Schema, y: &Schema, n: i64, radius: i64) -> Verdict {
    preceq(x, y, n, radius).and(preceq(y, x, n, radius))
}

fn lattice_area(s: &Schema) -> i64 {
    match s {
        Schema::Biperiodic(b) => b.lattice().area(),
        Schema::Defect(d) => d.background().lattice().area(),
        Schema::HalfPlane(h) => h.lattice().area(),
        Schema::Rays(r) => r.sectors().iter().map(|s| s.fill.lattice().area()).max().unwrap_or(1),
    }
}

fn feature_radius(s: &Schema) -> i64 {
    stabilization_radius(s, 2).unwrap_or(RAY_CHECK_RADIUS)
}

/// Whether `y(a) = x(a - v)` on a ball wide enough to hold the features and a
/// joint fundamental domain of both.
fn agrees_shifted(x: &Schema, y: &Schema, v: Coord) -> bool {
    let r = v.norm_inf() + feature_radius(x) + feature_radius(y) + lattice_area(x) * lattice_area(y);
    Rect::ball(r).cells().all(|a| x.eval(a - v) == y.eval(a))
}

/// Smallest `v` with `|v|∞ <= bound` and `y = σ_v x`, ordered by squared
/// length, then `x`, then `y`.
pub fn shift_equal(x: &Schema, y: &Schema, bound: i64) -> Option<Coord> {
    let mut vs: Vec<Coord> = Rect::ball(bound).cells().collect();
    vs.sort_by_key(|v| (v.norm_sq(), v.x, v.y));
    vs.into_iter().find(|v| agrees_shifted(x, y, *v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseReport {
    /// `relation[i][j]` is whether schema `i` precedes schema `j`.
    pub relation: Vec<Vec<bool>>,
    /// Equivalence classes, each sorted, ordered by first member.
    pub classes: Vec<Vec<usize>>,
    /// Covering pairs `(lower, upper)` between class indices.
    pub edges: Vec<(usize, usize)>,
    /// Height of each class above the minimal ones.
    pub levels: Vec<usize>,
}

impl HasseReport {
    pub fn class_of(&self, i: usize) -> usize {
        self.classes.iter().position(|c| c.contains(&i)).expect("every schema has a class")
    }

    fn below(&self, a: usize, b: usize) -> bool {
        a != b && self.relation[self.classes[a][0]][self.classes[b][0]]
    }

    /// Number of minimal classes strictly below schema `i`.
    pub fn minimal_classes_below(&self, i: usize) -> usize {
        let c = self.class_of(i);
        (0..self.classes.len()).filter(|k| self.levels[*k] == 0 && self.below(*k, c)).count()
    }

    pub fn render(&self, p: &SchemaPresentation) -> String {
        let mut out = String::new();
        for (k, c) in self.classes.iter().enumerate() {
            let names: Vec<&str> = c.iter().map(|i| p.schemas[*i].name.as_str()).collect();
            out.push_str(&format!("class {k} level {}: {}\n", self.levels[k], names.join(" ")));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("{a} -> {b}\n"));
        }
        out
    }
}

/// Classes, covering edges and levels of the pre-order on `p` at window
/// size `n`. Any bounded comparison aborts with the offending pairs.
pub fn hasse(p: &SchemaPresentation, n: i64, radius: i64) -> Result<HasseReport> {
    let langs: Vec<_> = p.schemas.iter().map(|s| best_language(&s.schema, n, radius)).collect();
    let k = langs.len();
    let mut relation = vec![vec![false; k]; k];
    let mut bounded = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let v = compare(&langs[i], &langs[j]);
            if !v.is_definitive() {
                bounded.push((i, j));
            }
            relation[i][j] = v.holds();
        }
    }
    if !bounded.is_empty() {
        return Err(Error::BoundedVerdict(bounded));
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        match classes.iter_mut().find(|c| relation[i][c[0]] && relation[c[0]][i]) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let m = classes.len();
    let lt = |a: usize, b: usize| a != b && relation[classes[a][0]][classes[b][0]];
    let mut edges = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if lt(a, b) && !(0..m).any(|c| lt(a, c) && lt(c, b)) {
                edges.push((a, b));
            }
        }
    }
    // Heights by repeated relaxation; the strict order is acyclic.
    let mut levels = vec![0usize; m];
    for _ in 0..m {
        for b in 0..m {
            for a in 0..m {
                if lt(a, b) {
                    levels[b] = levels[b].max(levels[a] + 1);
                }
            }
        }
    }
    Ok(HasseReport {
        relation,
        classes,
        edges,
        levels,
    })
}

enum Occurrences {
    Infinite,
    Finite(Vec<Coord>),
}

fn anchors_matching(s: &Schema, r: &Pattern, m: i64, anchors: impl Iterator<Item = Coord>) -> Vec<Coord> {
    anchors.filter(|t| window_at(s, *t, m) == *r).collect()
}

/// Anchors of `r` in `s`, up to the periods of `s`; `Infinite` when the
/// occurrences cannot be collapsed to finitely many configurations.
fn occurrences(s: &Schema, r: &Pattern) -> Result<Occurrences> {
    let m = r.width();
    let in_periodic = |b: &crate::schema::Biperiodic| {
        let fund = Rect::from_extent(Coord::ZERO, b.lattice().extent());
        !anchors_matching(&Schema::Biperiodic(b.clone()), r, m, fund.cells()).is_empty()
    };
    Ok(match s {
        Schema::Biperiodic(b) => {
            Occurrences::Finite(anchors_matching(s, r, m, Rect::from_extent(Coord::ZERO, b.lattice().extent()).cells()))
        }
        Schema::Defect(d) => {
            if in_periodic(d.background()) {
                Occurrences::Infinite
            } else {
                let pr = d.patch_rect();
                let near = Rect::new(pr.lo - Coord::new(m - 1, m - 1), pr.hi);
                Occurrences::Finite(anchors_matching(s, r, m, near.cells()))
            }
        }
        Schema::HalfPlane(h) => {
            if in_periodic(&h.limit(Letter::A)) || in_periodic(&h.limit(Letter::C)) {
                Occurrences::Infinite
            } else {
                let k = spread(h, m) + 1;
                let fund = Rect::from_extent(Coord::ZERO, h.lattice().extent());
                let anchors: Vec<Coord> = (-k..=k).flat_map(|i| fund.cells().map(move |c| c + i * h.w())).collect();
                Occurrences::Finite(anchors_matching(s, r, m, anchors.into_iter()))
            }
        }
        Schema::Rays(_) => return Err(Error::PresentationNotClosed("ray-sector shapes have no occurrence analysis".into())),
    })
}

/// A window of schema `i` whose every occurrence, among the schemas listed
/// in `alive`, belongs to schema `i` itself at the same position. Windows are
/// squares of growing size anchored in the ball of `radius`.
pub fn isolating_pattern(p: &SchemaPresentation, alive: &[usize], i: usize, radius: i64) -> Result<Option<(Coord, Pattern)>> {
    let si = p.get(i);
    for m in 1..=2 * radius + 1 {
        let anchors = Rect::new(Coord::new(-radius, -radius), Coord::new(radius - m + 1, radius - m + 1));
        'anchor: for t in anchors.cells() {
            let r = window_at(si, t, m);
            for j in alive {
                let sj = p.get(*j);
                match occurrences(sj, &r)? {
                    Occurrences::Infinite => continue 'anchor,
                    Occurrences::Finite(ts) => {
                        // σ_v s_j carries the occurrence at u onto t
                        if !ts.iter().all(|u| agrees_shifted(sj, si, t - *u)) {
                            continue 'anchor;
                        }
                    }
                }
            }
            return Ok(Some((t, r)));
        }
    }
    Ok(None)
}

/// Whether the union of orbit closures equals the union of orbits: each
/// defect's background and each half-plane's limits must be listed.
pub fn check_closed(p: &SchemaPresentation) -> Result<()> {
    let present = |b: &crate::schema::Biperiodic| {
        let x = Schema::Biperiodic(b.clone());
        let bound = b.lattice().extent().max_side();
        p.schemas
            .iter()
            .any(|s| matches!(s.schema, Schema::Biperiodic(_)) && shift_equal(&x, &s.schema, bound).is_some())
    };
    for s in &p.schemas {
        let ok = match &s.schema {
            Schema::Biperiodic(_) => true,
            Schema::Defect(d) => present(d.background()),
            Schema::HalfPlane(h) => present(&h.limit(Letter::A)) && present(&h.limit(Letter::C)),
            Schema::Rays(_) => false,
        };
        if !ok {
            return Err(Error::PresentationNotClosed(format!("limits of `{}` are missing", s.name)));
        }
    }
    Ok(())
}

/// Schemas of `alive` that are not isolated.
pub fn cb_derivative(p: &SchemaPresentation, alive: &[usize], radius: i64) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in alive {
        if isolating_pattern(p, alive, *i, radius)?.is_none() {
            out.push(*i);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbReport {
    /// Schemas removed at each derivative step.
    pub stages: Vec<Vec<usize>>,
    /// 1-based removal step of each schema; `None` for the perfect kernel.
    pub ranks: Vec<Option<usize>>,
    /// Number of steps to reach the empty set, if it is reached.
    pub rank: Option<usize>,
}

impl CbReport {
    pub fn render(&self, p: &SchemaPresentation) -> String {
        let mut out = String::new();
        for (k, st) in self.stages.iter().enumerate() {
            let names: Vec<&str> = st.iter().map(|i| p.schemas[*i].name.as_str()).collect();
            out.push_str(&format!("stage {}: {}\n", k + 1, names.join(" ")));
        }
        match self.rank {
            Some(r) => out.push_str(&format!("rank: {r}\n")),
            None => out.push_str("rank: none (perfect kernel)\n"),
        }
        out
    }
}

pub fn cb_rank(p: &SchemaPresentation, radius: i64, max_stage: usize) -> Result<CbReport> {
    check_closed(p)?;
    let mut alive: Vec<usize> = (0..p.len()).collect();
    let mut stages = Vec::new();
    let mut ranks = vec![None; p.len()];
    while !alive.is_empty() {
        let next = cb_derivative(p, &alive, radius)?;
        if next.len() == alive.len() {
            return Ok(CbReport { stages, ranks, rank: None });
        }
        if stages.len() == max_stage {
            return Err(Error::NotStabilized { cap: max_stage });
        }
        let gone: Vec<usize> = alive.iter().copied().filter(|i| !next.contains(i)).collect();
        for i in &gone {
            ranks[*i] = Some(stages.len() + 1);
        }
        stages.push(gone);
        alive = next;
    }
    let rank = Some(stages.len());
    Ok(CbReport { stages, ranks, rank })
}
