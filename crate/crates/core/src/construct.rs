//! Compiling "configurations of X with a period in P" into an SFT.
//!
//! Collinear periods are grouped; every group after the first is merged in
//! with a windowed pair rule forbidding any square that holds a violation
//! of both sides.

use crate::error::{Error, Result};
use crate::lattice::{gcd, Coord, Lattice, Pattern, Symbol};
use crate::sft::check::{violates, PatternCanvas};
use crate::sft::{domino, ForbiddenSet, PairRule, SftPresentation};
use crate::solver::{stabilization_margin_capped, torus_solutions_capped, TorusSolutionSet};
use std::collections::BTreeSet;

/// Limits for the compilation and its self-checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Candidate limit for enumerations and materialization.
    pub enumeration: u64,
    /// Largest margin tried when looking for language stabilization.
    pub margin: usize,
    /// Torus size used by external oracle checks.
    pub test_bound: i64,
    /// Rectangular tori up to this size are checked after each step.
    pub verify_bound: i64,
    /// Box size for mismatch witnesses of collinear groups.
    pub thickness: i64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: crate::solver::DEFAULT_CAP,
            margin: 8,
            test_bound: 4,
            verify_bound: 3,
            thickness: 4,
        }
    }
}

/// Sorted, duplicate-free set of nonzero periods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodSet(Vec<Coord>);

impl PeriodSet {
    pub fn new(periods: impl IntoIterator<Item = Coord>) -> Result<Self> {
        let mut v: Vec<Coord> = periods.into_iter().collect();
        if v.iter().any(|p| p.is_zero()) {
            return Err(Error::Precondition("the zero vector is not a period".into()));
        }
        v.sort();
        v.dedup();
        Ok(PeriodSet(v))
    }

    pub fn as_slice(&self) -> &[Coord] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Collinearity classes, ordered by their first member.
    pub fn classes(&self) -> Vec<Vec<Coord>> {
        let mut out: Vec<Vec<Coord>> = Vec::new();
        for p in &self.0 {
            match out.iter_mut().find(|c| c[0].cross(*p) == 0) {
                Some(c) => c.push(*p),
                None => out.push(vec![*p]),
            }
        }
        out
    }
}

/// Primitive vector with first nonzero coordinate positive.
fn direction(p: Coord) -> Coord {
    let g = gcd(p.x, p.y);
    let u = Coord::new(p.x / g, p.y / g);
    if u.x < 0 || (u.x == 0 && u.y < 0) {
        -u
    } else {
        u
    }
}

fn multiple_of(p: Coord, u: Coord) -> i64 {
    (if u.x != 0 { p.x / u.x } else { p.y / u.y }).abs()
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// Smallest positive common multiple of a collinear group.
pub fn common_multiple(group: &[Coord]) -> Result<Coord> {
    let first = *group.first().ok_or_else(|| Error::Precondition("empty period group".into()))?;
    let u = direction(first);
    let mut k = 1;
    for p in group {
        if p.cross(first) != 0 {
            return Err(Error::NonCollinear(first, *p));
        }
        k = lcm(k, multiple_of(*p, u));
    }
    Ok(k * u)
}

fn mismatches(s: &SftPresentation, p: Coord) -> Vec<Pattern> {
    let syms: Vec<Symbol> = s.alphabet().symbols().collect();
    let mut out = Vec::new();
    for a in &syms {
        for b in &syms {
            if a != b {
                out.push(domino(*a, *b, p));
            }
        }
    }
    out
}

/// Configurations of `s` with period `p`.
pub fn single_period_sft(s: &SftPresentation, p: Coord) -> Result<SftPresentation> {
    if p.is_zero() {
        return Err(Error::Precondition("the zero vector is not a period".into()));
    }
    s.with_more(mismatches(s, p))
}

/// Patterns holding, for every `p_i`, a mismatch `x(c_i) != x(c_i + p_i)`
/// with all `c_i` inside one `t × t` box.
fn witnesses(s: &SftPresentation, ps: &[Coord], t: i64) -> Vec<Pattern> {
    let syms: Vec<Symbol> = s.alphabet().symbols().collect();
    let pairs: Vec<(Symbol, Symbol)> = syms
        .iter()
        .flat_map(|a| syms.iter().filter(move |b| *b != a).map(move |b| (*a, *b)))
        .collect();
    let offsets: Vec<Coord> = crate::lattice::Rect::new(Coord::new(1 - t, 1 - t), Coord::new(t - 1, t - 1))
        .cells()
        .collect();
    let mut out = BTreeSet::new();
    let mut cells = crate::lattice::Cells::new();
    fn go(
        i: usize,
        ps: &[Coord],
        pairs: &[(Symbol, Symbol)],
        offsets: &[Coord],
        cells: &mut crate::lattice::Cells,
        out: &mut BTreeSet<Pattern>,
    ) {
        if i == ps.len() {
            out.insert(Pattern::canonicalize(cells).expect("non-empty"));
            return;
        }
        // the first mismatch is pinned at the origin
        let origins: &[Coord] = if i == 0 { &[Coord::ZERO] } else { offsets };
        for c in origins {
            for (a, b) in pairs {
                let (u, v) = (*c, *c + ps[i]);
                let clash = |at: Coord, x: Symbol| cells.get(&at).is_some_and(|y| *y != x);
                if clash(u, *a) || clash(v, *b) {
                    continue;
                }
                let added: Vec<Coord> = [(u, *a), (v, *b)]
                    .into_iter()
                    .filter_map(|(at, x)| cells.insert(at, x).is_none().then_some(at))
                    .collect();
                go(i + 1, ps, pairs, offsets, cells, out);
                for at in added {
                    cells.remove(&at);
                }
            }
        }
    }
    go(0, ps, &pairs, &offsets, &mut cells, &mut out);
    out.into_iter().collect()
}

/// Configurations of `s` with a period in a collinear `group`.
///
/// With one essential period this is exact. Otherwise the result forbids
/// mismatches of the common multiple and every combination of mismatches of
/// the essential periods inside a `thickness` box: exact on tori whose
/// fundamental rectangle fits the box, and on the plane a superset whenever
/// the mismatches can drift apart.
pub fn collinear_group_sft(s: &SftPresentation, group: &[Coord], caps: &Caps) -> Result<SftPresentation> {
    let p = common_multiple(group)?;
    let u = direction(p);
    let mut ks: Vec<i64> = group.iter().map(|q| multiple_of(*q, u)).collect();
    ks.sort();
    ks.dedup();
    // a period that divides another one implies it
    let essential: Vec<Coord> = ks
        .iter()
        .filter(|k| !ks.iter().any(|m| *m != **k && *m % **k == 0))
        .map(|k| *k * u)
        .collect();
    if essential.len() == 1 {
        return single_period_sft(s, essential[0]);
    }
    let mut extra = mismatches(s, p);
    extra.extend(witnesses(s, &essential, caps.thickness));
    s.with_more(extra)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstructionReport {
    pub lines: Vec<String>,
}

impl ConstructionReport {
    fn note(&mut self, line: String) {
        self.lines.push(line);
    }

    pub fn render(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub sft: SftPresentation,
    pub report: ConstructionReport,
}

fn has_period(t: &TorusSolutionSet, k: usize, p: Coord) -> bool {
    t.lattice.cells().all(|c| t.eval(k, c) == t.eval(k, c + p))
}

fn tori(bound: i64) -> impl Iterator<Item = Lattice> {
    (1..=bound).flat_map(move |a| (1..=bound).map(move |d| Lattice::rectangular(a, d)))
}

fn solutions(s: &SftPresentation, l: Lattice, cap: u64) -> Result<TorusSolutionSet> {
    let (p1, p2) = l.basis();
    torus_solutions_capped(s, p1, p2, cap)
}

fn stabilized(s: &SftPresentation, k: i64, caps: &Caps) -> Result<usize> {
    stabilization_margin_capped(s, k, caps.margin, caps.enumeration).map_err(|e| match e {
        Error::NotStabilized { cap } => Error::NStabilizationNotFound { cap },
        e => e,
    })
}

/// Expand pair rules into explicit patterns on their full windows.
pub fn materialize(s: &SftPresentation, cap: u64) -> Result<SftPresentation> {
    let f = s.forbidden();
    let Some(side) = f.pairs.iter().map(|r| r.side).max() else {
        return Ok(s.clone());
    };
    let k = s.alphabet().len() as u64;
    let cells = (side * side) as u32;
    let total = k.checked_pow(cells).filter(|t| *t <= cap).ok_or(Error::CapExceeded { cap })?;
    let rules = ForbiddenSet {
        patterns: Vec::new(),
        pairs: f.pairs.clone(),
    };
    let mut patterns = f.patterns.clone();
    for mut code in 0..total {
        let mut rows = vec![vec![Symbol(0); side as usize]; side as usize];
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                *x = Symbol((code % k) as u8);
                code /= k;
            }
        }
        let p = Pattern::from_rows_bottom_up(&rows)?;
        if violates(&rules, &PatternCanvas(&p)) {
            patterns.push(p);
        }
    }
    SftPresentation::from_patterns(s.alphabet().clone(), patterns)
}

/// `X ∪ Y` for `X` whose configurations have a period in `ps` and `Y` whose
/// configurations are `q`-periodic, `q` collinear with none of `ps`.
pub fn union_with_periodic_sft(
    x: &SftPresentation,
    y: &SftPresentation,
    q: Coord,
    ps: &[Coord],
    caps: &Caps,
) -> Result<Construction> {
    if q.is_zero() {
        return Err(Error::Precondition("the zero vector is not a period".into()));
    }
    if let Some(p) = ps.iter().find(|p| p.cross(q) == 0) {
        return Err(Error::CollinearityViolation(q, *p));
    }
    if x.alphabet() != y.alphabet() {
        return Err(Error::Precondition("both sides must share one alphabet".into()));
    }
    let mut report = ConstructionReport::default();
    for l in tori(caps.verify_bound) {
        let tx = solutions(x, l, caps.enumeration)?;
        if let Some(k) = (0..tx.len()).find(|k| !ps.iter().any(|p| has_period(&tx, *k, *p))) {
            return Err(Error::Precondition(format!(
                "a solution on the {:?} torus has no period in the set: {:?}",
                l.extent(),
                tx.solutions[k]
            )));
        }
        let ty = solutions(y, l, caps.enumeration)?;
        if (0..ty.len()).any(|k| !has_period(&ty, k, q)) {
            return Err(Error::Precondition(format!("a solution on the {:?} torus is not {q}-periodic", l.extent())));
        }
    }
    let y = single_period_sft(y, q)?;
    let side = |s: &SftPresentation| s.window().max_side();
    let longest = ps.iter().map(|p| p.norm_inf()).max().unwrap_or(0);
    let n = 4 * side(x).max(side(&y)).max(q.norm_inf()).max(longest);
    let k = side(x).max(side(&y)).clamp(1, 2);
    let (mx, my) = (stabilized(x, k, caps)?, stabilized(&y, k, caps)?);
    let big_n = n + mx.max(my) as i64;
    report.note(format!(
        "union with {q}: n = {n}, margins {mx}/{my} at window {k}, N = {big_n}, pair side {}",
        2 * big_n + 1
    ));
    let shared: Vec<Pattern> = x
        .patterns()
        .iter()
        .filter(|p| y.patterns().contains(p))
        .cloned()
        .collect();
    let z = SftPresentation::new(
        x.alphabet().clone(),
        ForbiddenSet {
            patterns: shared,
            pairs: vec![PairRule {
                side: 2 * big_n + 1,
                left: x.forbidden().clone(),
                right: y.forbidden().clone(),
            }],
        },
    )?;
    match materialize(&z, caps.enumeration) {
        Ok(_) => report.note("explicit patterns fit the cap".into()),
        Err(Error::CapExceeded { cap }) => report.note(format!("explicit patterns exceed the cap {cap}; kept as a pair rule")),
        Err(e) => return Err(e),
    }
    let mut checked = 0;
    for l in tori(caps.verify_bound) {
        let want: BTreeSet<Vec<Symbol>> = solutions(x, l, caps.enumeration)?
            .as_set()
            .union(&solutions(&y, l, caps.enumeration)?.as_set())
            .cloned()
            .collect();
        if solutions(&z, l, caps.enumeration)?.as_set() != want {
            return Err(Error::VerificationFailed(format!("union differs on the {:?} torus", l.extent())));
        }
        checked += 1;
    }
    report.note(format!("union verified on {checked} tori"));
    Ok(Construction { sft: z, report })
}

/// Configurations of `s` with a period in `ps`.
pub fn periods_sft(s: &SftPresentation, ps: &PeriodSet, caps: &Caps) -> Result<Construction> {
    let classes = ps.classes();
    let first = classes.first().ok_or_else(|| Error::Precondition("empty period set".into()))?;
    let mut report = ConstructionReport::default();
    let mut x = collinear_group_sft(s, first, caps)?;
    report.note(format!("group {}: {} patterns", show(first), x.patterns().len()));
    let mut seen = first.clone();
    for class in &classes[1..] {
        let y = collinear_group_sft(s, class, caps)?;
        let q = common_multiple(class)?;
        report.note(format!("group {}: {} patterns", show(class), y.patterns().len()));
        let c = union_with_periodic_sft(&x, &y, q, &seen, caps)?;
        report.lines.extend(c.report.lines);
        x = c.sft;
        seen.extend(class.iter().copied());
    }
    let mut checked = 0;
    for l in tori(caps.verify_bound) {
        let base = solutions(s, l, caps.enumeration)?;
        let want: BTreeSet<Vec<Symbol>> = (0..base.len())
            .filter(|k| ps.as_slice().iter().any(|p| has_period(&base, *k, *p)))
            .map(|k| base.solutions[k].clone())
            .collect();
        if solutions(&x, l, caps.enumeration)?.as_set() != want {
            return Err(Error::VerificationFailed(format!("result differs on the {:?} torus", l.extent())));
        }
        checked += 1;
    }
    report.note(format!("verified against the period filter on {checked} tori"));
    Ok(Construction { sft: x, report })
}

fn show(ps: &[Coord]) -> String {
    let v: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}
