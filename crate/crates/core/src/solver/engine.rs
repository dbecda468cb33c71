//! Backtracking search over a finite set of cells: forward checking on the
//! explicit forbidden patterns, conflict-directed backjumping, fixed cell
//! order, pair rules checked on complete assignments.

use crate::error::{Error, Result};
use crate::lattice::{Coord, Lattice, Rect, Symbol};
use crate::sft::check::{violates, RectCanvas, TorusCanvas};
use crate::sft::{ForbiddenSet, SftPresentation};
use std::collections::{BTreeMap, HashSet};

const NONE: u8 = u8::MAX;
const ROOT: u32 = u32::MAX;
const DENSE_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, Copy)]
pub(crate) enum Space {
    Rect(Rect),
    Torus(Lattice),
}

impl Space {
    pub fn len(&self) -> usize {
        match self {
            Space::Rect(r) => r.area() as usize,
            Space::Torus(l) => l.area() as usize,
        }
    }

    pub fn index(&self, c: Coord) -> Option<usize> {
        match self {
            Space::Rect(r) => r
                .contains(c)
                .then(|| ((c.y - r.lo.y) * r.width() + (c.x - r.lo.x)) as usize),
            Space::Torus(l) => Some(l.index(c)),
        }
    }

    /// Anchors at which a box of extent `(w, h)` is placed.
    fn anchors(&self, w: i64, h: i64) -> Vec<Coord> {
        match self {
            Space::Rect(r) => {
                let hi = r.hi - Coord::new(w - 1, h - 1);
                if hi.x < r.lo.x || hi.y < r.lo.y {
                    Vec::new()
                } else {
                    Rect::new(r.lo, hi).cells().collect()
                }
            }
            Space::Torus(l) => l.cells().collect(),
        }
    }
}

enum Table {
    Dense(Vec<u64>),
    Sparse(HashSet<Vec<u8>>),
}

struct Shape {
    weights: Vec<usize>,
    table: Table,
}

impl Shape {
    fn forbidden_key(&self, key: usize) -> bool {
        match &self.table {
            Table::Dense(bits) => bits[key / 64] >> (key % 64) & 1 == 1,
            Table::Sparse(_) => unreachable!(),
        }
    }
}

pub(crate) enum Goal {
    First,
    Count(u64),
    All(u64),
}

#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub count: u64,
    pub solutions: Vec<Vec<Symbol>>,
}

struct Frame {
    remaining: u64,
    mark: usize,
}

pub(crate) struct Engine {
    space: Space,
    shapes: Vec<Shape>,
    // Instance i covers cells[offs[i]..offs[i + 1]] and uses shapes[shape[i]].
    offs: Vec<usize>,
    cells: Vec<u32>,
    shape: Vec<u32>,
    by_cell: Vec<Vec<u32>>,
    pairs: ForbiddenSet,
    dom: Vec<u64>,
    val: Vec<u8>,
    depth: Vec<u32>,
    past_fc: Vec<Vec<u32>>,
    // (cell, old domain, reasons pushed onto past_fc)
    trail: Vec<(u32, u64, u32)>,
    root_mark: usize,
    root_failed: bool,
    order: Vec<u32>,
}

impl Engine {
    pub fn new(s: &SftPresentation, space: Space, clamps: &[(usize, Symbol)]) -> Engine {
        let n = space.len();
        let alpha = s.alphabet().len();
        let full = if alpha == 64 { u64::MAX } else { (1u64 << alpha) - 1 };

        let mut groups: BTreeMap<Vec<Coord>, Vec<Vec<u8>>> = BTreeMap::new();
        for p in s.patterns() {
            groups
                .entry(p.domain().collect())
                .or_default()
                .push(p.symbols().map(|x| x.0).collect());
        }

        let mut e = Engine {
            space,
            shapes: Vec::new(),
            offs: vec![0],
            cells: Vec::new(),
            shape: Vec::new(),
            by_cell: vec![Vec::new(); n],
            pairs: ForbiddenSet {
                patterns: Vec::new(),
                pairs: s.forbidden().pairs.clone(),
            },
            dom: vec![full; n],
            val: vec![NONE; n],
            depth: vec![ROOT; n],
            past_fc: vec![Vec::new(); n],
            trail: Vec::new(),
            root_mark: 0,
            root_failed: false,
            order: Vec::new(),
        };

        for (domain, tuples) in groups {
            let k = domain.len();
            let mut weights = Vec::with_capacity(k);
            let mut w = 1usize;
            let mut dense = true;
            for _ in 0..k {
                weights.push(w);
                match w.checked_mul(alpha) {
                    Some(x) if x <= DENSE_LIMIT => w = x,
                    _ => dense = false,
                }
            }
            let table = if dense {
                let mut bits = vec![0u64; w / 64 + 1];
                for t in &tuples {
                    let key: usize = t.iter().zip(&weights).map(|(s, w)| *s as usize * w).sum();
                    bits[key / 64] |= 1 << (key % 64);
                }
                Table::Dense(bits)
            } else {
                Table::Sparse(tuples.into_iter().collect())
            };
            let sid = e.shapes.len() as u32;
            e.shapes.push(Shape { weights, table });
            let ext = domain.iter().fold(Coord::ZERO, |m, c| m.max(*c));
            for a in space.anchors(ext.x + 1, ext.y + 1) {
                let inst = e.shape.len() as u32;
                let start = e.cells.len();
                for c in &domain {
                    let i = space.index(a + *c).expect("anchored inside the space") as u32;
                    e.cells.push(i);
                }
                e.offs.push(e.cells.len());
                e.shape.push(sid);
                let mut seen: Vec<u32> = e.cells[start..].to_vec();
                seen.sort_unstable();
                seen.dedup();
                for c in seen {
                    e.by_cell[c as usize].push(inst);
                }
            }
        }

        // Unary constraints (including patterns folded onto one torus cell).
        for inst in 0..e.shape.len() {
            let cs = e.inst(inst);
            if cs.iter().all(|c| *c == cs[0]) {
                let u = cs[0] as usize;
                let mut mask = e.dom[u];
                for v in bits(e.dom[u]) {
                    if e.forbidden_with(inst, u, v) {
                        mask &= !(1 << v);
                    }
                }
                e.dom[u] = mask;
            }
        }

        for &(c, sym) in clamps {
            if e.root_failed {
                break;
            }
            if e.val[c] != NONE {
                e.root_failed |= e.val[c] != sym.0;
                continue;
            }
            if e.dom[c] >> sym.0 & 1 == 0 {
                e.root_failed = true;
                break;
            }
            e.val[c] = sym.0;
            e.dom[c] = 1 << sym.0;
            if e.forward(c, ROOT).is_err() {
                e.root_failed = true;
            }
        }
        e.root_failed |= e.dom.iter().any(|d| *d == 0);
        e.root_mark = e.trail.len();
        e.order = (0..n as u32).filter(|c| e.val[*c as usize] == NONE).collect();
        for (d, c) in e.order.iter().enumerate() {
            e.depth[*c as usize] = d as u32;
        }
        e
    }

    fn inst(&self, i: usize) -> &[u32] {
        &self.cells[self.offs[i]..self.offs[i + 1]]
    }

    /// Whether instance `inst` is forbidden with cell `u` set to `v` and all
    /// other cells at their assigned values.
    fn forbidden_with(&self, inst: usize, u: usize, v: u8) -> bool {
        let shape = &self.shapes[self.shape[inst] as usize];
        let cs = self.inst(inst);
        let sym = |c: u32| if c as usize == u { v } else { self.val[c as usize] };
        match &shape.table {
            Table::Dense(_) => {
                let key: usize = cs
                    .iter()
                    .zip(&shape.weights)
                    .map(|(c, w)| sym(*c) as usize * w)
                    .sum();
                shape.forbidden_key(key)
            }
            Table::Sparse(set) => {
                let t: Vec<u8> = cs.iter().map(|c| sym(*c)).collect();
                set.contains(&t)
            }
        }
    }

    /// Prune the domains of cells left alone in an instance by assigning
    /// `c`. On failure returns the depths responsible.
    fn forward(&mut self, c: usize, d: u32) -> std::result::Result<(), Vec<u32>> {
        for k in 0..self.by_cell[c].len() {
            let inst = self.by_cell[c][k] as usize;
            let mut lone: Option<u32> = None;
            let mut several = false;
            for &x in self.inst(inst) {
                if self.val[x as usize] == NONE {
                    match lone {
                        None => lone = Some(x),
                        Some(y) if y == x => {}
                        Some(_) => {
                            several = true;
                            break;
                        }
                    }
                }
            }
            if several {
                continue;
            }
            match lone {
                None => {
                    if self.forbidden_with(inst, usize::MAX, 0) {
                        let mut why: Vec<u32> = self
                            .inst(inst)
                            .iter()
                            .map(|x| self.depth[*x as usize])
                            .filter(|x| *x != ROOT && *x != d)
                            .collect();
                        why.sort_unstable();
                        why.dedup();
                        return Err(why);
                    }
                }
                Some(u) => {
                    let u = u as usize;
                    let old = self.dom[u];
                    let mut mask = old;
                    for v in bits(old) {
                        if self.forbidden_with(inst, u, v) {
                            mask &= !(1 << v);
                        }
                    }
                    if mask != old {
                        // every assigned cell of the instance shares the blame
                        let mut why: Vec<u32> = self
                            .inst(inst)
                            .iter()
                            .filter(|x| **x as usize != u)
                            .map(|x| self.depth[*x as usize])
                            .filter(|x| *x != ROOT)
                            .collect();
                        why.sort_unstable();
                        why.dedup();
                        self.trail.push((u as u32, old, why.len() as u32));
                        self.dom[u] = mask;
                        self.past_fc[u].extend(why);
                        if mask == 0 {
                            let mut why: Vec<u32> =
                                self.past_fc[u].iter().copied().filter(|x| *x != d).collect();
                            why.sort_unstable();
                            why.dedup();
                            return Err(why);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (u, old, k) = self.trail.pop().expect("non-empty trail");
            self.dom[u as usize] = old;
            let fc = &mut self.past_fc[u as usize];
            fc.truncate(fc.len() - k as usize);
        }
    }

    fn leaf_ok(&self) -> bool {
        if self.pairs.is_empty() {
            return true;
        }
        let values: Vec<Symbol> = self.val.iter().map(|v| Symbol(*v)).collect();
        match self.space {
            Space::Rect(rect) => !violates(&self.pairs, &RectCanvas { rect, values: &values }),
            Space::Torus(lattice) => !violates(&self.pairs, &TorusCanvas { lattice, values: &values }),
        }
    }

    fn record(&self, goal: &Goal, out: &mut Outcome) -> Result<bool> {
        out.count += 1;
        match goal {
            Goal::First => {
                out.solutions.push(self.val.iter().map(|v| Symbol(*v)).collect());
                Ok(true)
            }
            Goal::Count(cap) => {
                if out.count > *cap {
                    return Err(Error::CapExceeded { cap: *cap });
                }
                Ok(false)
            }
            Goal::All(cap) => {
                if out.count > *cap {
                    return Err(Error::CapExceeded { cap: *cap });
                }
                out.solutions.push(self.val.iter().map(|v| Symbol(*v)).collect());
                Ok(false)
            }
        }
    }

    pub fn run(mut self, goal: Goal) -> Result<Outcome> {
        let mut out = Outcome::default();
        if self.root_failed {
            return Ok(out);
        }
        let n = self.order.len();
        if n == 0 {
            if self.leaf_ok() {
                self.record(&goal, &mut out)?;
            }
            return Ok(out);
        }
        let mut conf: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut frames = vec![Frame {
            remaining: self.dom[self.order[0] as usize],
            mark: self.root_mark,
        }];
        while !frames.is_empty() {
            let d = frames.len() - 1;
            let cell = self.order[d] as usize;
            if frames[d].remaining == 0 {
                let mut why = conf[d].clone();
                merge(&mut why, &self.past_fc[cell]);
                why.retain(|x| *x != d as u32);
                let Some(&h) = why.last() else { break };
                let h = h as usize;
                why.pop();
                merge(&mut conf[h], &why);
                while frames.len() > h + 1 {
                    let top = frames.pop().expect("deeper frame");
                    let td = frames.len();
                    self.undo(top.mark);
                    self.val[self.order[td] as usize] = NONE;
                    conf[td].clear();
                }
                let mark = frames[h].mark;
                self.undo(mark);
                self.val[self.order[h] as usize] = NONE;
                continue;
            }
            let f = &mut frames[d];
            let v = f.remaining.trailing_zeros() as u8;
            f.remaining &= f.remaining - 1;
            let mark = f.mark;
            self.val[cell] = v;
            if let Err(why) = self.forward(cell, d as u32) {
                merge(&mut conf[d], &why);
                self.undo(mark);
                self.val[cell] = NONE;
                continue;
            }
            if d + 1 == n {
                if self.leaf_ok() && self.record(&goal, &mut out)? {
                    return Ok(out);
                }
                // Later values must be revisited in full.
                conf[d] = (0..d as u32).collect();
                self.undo(mark);
                self.val[cell] = NONE;
                continue;
            }
            let next = self.order[d + 1] as usize;
            frames.push(Frame {
                remaining: self.dom[next],
                mark: self.trail.len(),
            });
        }
        Ok(out)
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = u8> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as u8;
            m &= m - 1;
            v
        })
    })
}

/// Sorted-set union into `a`.
fn merge(a: &mut Vec<u32>, b: &[u32]) {
    if b.is_empty() {
        return;
    }
    a.extend_from_slice(b);
    a.sort_unstable();
    a.dedup();
}
