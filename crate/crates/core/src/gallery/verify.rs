use super::parabola::{self, choice_sites, wall_run};
use super::{GalleryItem, TYPIC_RAYS};
use crate::error::Result;
use crate::lattice::{domain_periods, Coord, Extent, Lattice, Pattern, Rect};
use crate::order::{cb_rank, hasse};
use crate::schema::{HalfPlane, Letter, RaySectors, Schema};
use crate::sft::Subshift;
use crate::solver::{language, stabilization_margin, torus_count, DEFAULT_CAP};
use std::collections::BTreeSet;

/// One checked statement about a gallery item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

impl Fact {
    fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Fact {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Fact {
            name: name.into(),
            ok: expected == actual,
            expected,
            actual,
        }
    }
}

const WINDOW: i64 = 2;
const RADIUS: i64 = 8;
const ROW_RADIUS: i64 = 12;

/// Reads every row of blocks `j·w + i·v` with `|j| <= radius` back from the
/// configuration and checks it is `…A A B C C…` with `B` at `j = 0`.
pub fn halfplane_rows_ok(h: &HalfPlane, radius: i64) -> bool {
    let (v, w) = (h.v(), h.w());
    let seen = |anchor: Coord, l: Letter| h.block(l).cells().iter().all(|(c, s)| h.eval(anchor + *c) == *s);
    (-radius..=radius).all(|i| {
        (-radius..=radius).all(|j| {
            let l = match j.signum() {
                -1 => Letter::A,
                0 => Letter::B,
                _ => Letter::C,
            };
            seen(i * v + j * w, l)
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaysCheck {
    pub core_cells: usize,
    pub rays: usize,
    /// One flag per unordered pair of rays.
    pub parallel: Vec<bool>,
    pub sectors_periodic: bool,
}

impl RaysCheck {
    pub fn ok(&self, rays: usize) -> bool {
        self.core_cells > 0 && self.rays == rays && self.parallel.iter().all(|p| !p) && self.sectors_periodic
    }
}

/// Finite core, pairwise non-parallel rays, and each sector invariant under
/// its fill's periods wherever both ends stay inside the sector.
pub fn rays_check(r: &RaySectors, radius: i64) -> RaysCheck {
    let mut parallel = Vec::new();
    for (i, a) in r.rays().iter().enumerate() {
        for b in &r.rays()[i + 1..] {
            parallel.push(a.dir.cross(b.dir) == 0);
        }
    }
    let plain = |c: Coord| !r.core().contains_key(&c) && r.rays().iter().all(|ray| ray.position(c).is_none());
    let ball = Rect::ball(radius);
    let sectors_periodic = r.sectors().iter().enumerate().all(|(k, s)| {
        let (p1, p2) = s.fill.periods();
        ball.cells().filter(|c| plain(*c) && r.sector_of(*c) == Some(k)).all(|c| {
            [p1, p2, -p1, -p2].iter().all(|p| {
                let d = c + *p;
                !(ball.contains(d) && plain(d) && r.sector_of(d) == Some(k)) || r.eval(c) == r.eval(d)
            })
        })
    });
    RaysCheck {
        core_cells: r.core().len(),
        rays: r.rays().len(),
        parallel,
        sectors_periodic,
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Language sizes for `n = 1..=top`.
fn language_sizes(x: &Subshift, top: i64) -> Result<Vec<usize>> {
    let s = x.as_sft().expect("caller checks");
    (1..=top)
        .map(|n| {
            let m = stabilization_margin(s, n, 8)?;
            Ok(language(s, n, m as i64)?.len())
        })
        .collect()
}

pub fn verify(item: &GalleryItem) -> Result<Vec<Fact>> {
    let p = &item.presentation;
    let mut out = Vec::new();
    if let Some(x) = &item.subshift {
        let m = p.check_in(x, RADIUS)?;
        out.push(Fact::new("schemas inside the subshift", true, m.iter().all(|m| m.holds())));
    }
    for s in &p.schemas {
        if let Schema::HalfPlane(h) = &s.schema {
            out.push(Fact::new(format!("rows of {} read A^k B C^m", s.name), true, halfplane_rows_ok(h, ROW_RADIUS)));
        }
        if let Schema::Rays(r) = &s.schema {
            let c = rays_check(r, RADIUS);
            out.push(Fact::new("finite core", true, c.core_cells > 0));
            out.push(Fact::new("rays", TYPIC_RAYS, c.rays));
            out.push(Fact::new("parallel ray pairs", 0, c.parallel.iter().filter(|p| **p).count()));
            out.push(Fact::new("sectors biperiodic", true, c.sectors_periodic));
        }
    }
    let e = &item.expected;
    if e.levels.is_some() || e.minimal_below.is_some() {
        let h = hasse(p, WINDOW, RADIUS)?;
        if let Some(levels) = &e.levels {
            let got: BTreeSet<usize> = h.levels.iter().copied().collect();
            out.push(Fact::new("hasse levels", join(levels), join(got)));
        }
        if let Some((name, k)) = e.minimal_below {
            let i = p.index_of(name).expect("gallery names its schemas");
            out.push(Fact::new(format!("minimal classes below {name}"), k, h.minimal_classes_below(i)));
        }
    }
    if let Some(r) = e.rank {
        let got = cb_rank(p, RADIUS, 8)?.rank.map_or("none".to_string(), |r| r.to_string());
        out.push(Fact::new("cantor-bendixson rank", r, got));
    }
    if let Some(x) = item.subshift.as_ref().filter(|x| x.as_sft().is_some()) {
        // a finite subshift has a constant language count, an infinite one grows
        let top = if x.alphabet().len() > 4 { 2 } else { 3 };
        let sizes = language_sizes(x, top)?;
        let shape = if sizes.windows(2).all(|w| w[0] == w[1]) {
            "constant"
        } else if sizes.windows(2).all(|w| w[0] < w[1]) {
            "increasing"
        } else {
            "mixed"
        };
        out.push(Fact::new(
            format!("language sizes {} are", join(&sizes)),
            if item.finite { "constant" } else { "increasing" },
            shape,
        ));
    }
    if item.countable && !item.finite && item.subshift.as_ref().is_some_and(|x| x.as_sft().is_some()) {
        let one = p.schemas.iter().filter(|s| one_direction(&s.schema)).count();
        out.push(Fact::new("schemas with one direction of periodicity", true, one > 0));
    }
    if item.name == "checkerboard" {
        let s = item.subshift.as_ref().and_then(|x| x.as_sft()).expect("an SFT");
        out.push(Fact::new("2x2 torus solutions", 2, torus_count(s, Lattice::rectangular(2, 2), DEFAULT_CAP)?));
    }
    if item.name == "parabola" {
        out.extend(parabola_facts()?);
    }
    Ok(out)
}

/// Witnessed periods of a 9×9 window all lie on one line through the origin.
fn one_direction(s: &Schema) -> bool {
    let Ok(w) = Pattern::canonicalize(&s.cells_on(&Rect::ball(4))) else {
        return false;
    };
    let ps: Vec<Coord> = domain_periods(&w, Extent { w: 4, h: 4 }).into_iter().filter(|p| !p.vacuous).map(|p| p.v).collect();
    !ps.is_empty() && ps.iter().all(|p| p.cross(ps[0]) == 0)
}

fn parabola_facts() -> Result<Vec<Fact>> {
    let mut out = Vec::new();
    let sites = choice_sites();
    let closed: Vec<Coord> = (0..sites.len() as i64)
        .map(|k| Coord::new(parabola::POST_X + 2 + k, k * k + 3 * k + 1))
        .collect();
    out.push(Fact::new("hit times", join(&closed), join(&sites)));
    let tree = parabola::choice_tree(3)?;
    let leaves = tree.leaves();
    let distinct: BTreeSet<_> = leaves.iter().map(|(_, f)| f.values.clone()).collect();
    out.push(Fact::new("distinct leaves at depth 3", 8, distinct.len()));
    let runs: Vec<usize> = (0..3).map(|k| wall_run(leaves[0].1, sites[k])).collect();
    out.push(Fact::new("boundary runs after hits", join((0..3).map(|k| 2 * k + 3)), join(runs)));
    Ok(out)
}
