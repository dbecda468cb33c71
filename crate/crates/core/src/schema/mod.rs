//! Finitely described configurations: biperiodic, half-plane `^ωABC^ω`,
//! finite defects on a biperiodic background, and ray-sector shapes.

mod format;
mod language;

pub use format::{parse_schemas, serialize_schemas};
pub(crate) use language::{best_language, spread};
pub use language::{
    schema_in_sft, schema_in_subshift, schema_language, stabilization_radius, window_at, Membership,
    SchemaLanguage, RAY_CHECK_RADIUS,
};

use crate::error::{Error, Result};
use crate::lattice::{Alphabet, Cells, Coord, Lattice, Pattern, Rect, Symbol};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSchema(msg.into())
}

/// Values over the fundamental cells of `lattice`, read off `cells`.
fn table_from(cells: impl IntoIterator<Item = (Coord, Symbol)>, lattice: &Lattice, what: &str) -> Result<Vec<Symbol>> {
    let mut table: Vec<Option<Symbol>> = vec![None; lattice.area() as usize];
    for (c, s) in cells {
        let slot = &mut table[lattice.index(c)];
        match slot {
            Some(t) if *t != s => {
                return Err(invalid(format!("{what} disagrees with itself modulo the periods at {c}")));
            }
            _ => *slot = Some(s),
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| invalid(format!("{what} does not cover fundamental cell {}", lattice.cell(i)))))
        .collect()
}

/// A configuration invariant under two independent periods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biperiodic {
    block: Pattern,
    p1: Coord,
    p2: Coord,
    lattice: Lattice,
    table: Vec<Symbol>,
}

impl Biperiodic {
    /// `block` is read with its lower-left corner at the origin.
    pub fn new(block: Pattern, p1: Coord, p2: Coord) -> Result<Self> {
        if !block.is_full() {
            return Err(invalid("biperiodic block must be a full rectangle"));
        }
        let lattice = Lattice::from_periods(p1, p2).map_err(|_| invalid(format!("periods {p1} and {p2} are not independent")))?;
        let table = table_from(block.cells().iter().copied(), &lattice, "block")?;
        Ok(Biperiodic {
            block,
            p1,
            p2,
            lattice,
            table,
        })
    }

    pub fn constant(s: Symbol) -> Self {
        Biperiodic::new(Pattern::single(s), Coord::new(1, 0), Coord::new(0, 1)).expect("one cell tiles Z²")
    }

    /// From values over the fundamental rectangle of `lattice`, row-major.
    pub fn from_table(lattice: Lattice, table: Vec<Symbol>) -> Result<Self> {
        if table.len() != lattice.area() as usize {
            return Err(invalid("table size differs from the lattice index"));
        }
        let (p1, p2) = lattice.basis();
        let cells: Cells = lattice.cells().zip(table.iter().copied()).collect();
        Biperiodic::new(Pattern::canonicalize(&cells)?, p1, p2)
    }

    pub fn eval(&self, c: Coord) -> Symbol {
        self.table[self.lattice.index(c)]
    }

    pub fn block(&self) -> &Pattern {
        &self.block
    }

    pub fn periods(&self) -> (Coord, Coord) {
        (self.p1, self.p2)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Fundamental-domain values, row-major.
    pub fn table(&self) -> &[Symbol] {
        &self.table
    }
}

/// Which of the three blocks a half-plane cell reads from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
}

/// The `v`-periodic configuration `…AAABCCC…` along `w`: block `B` sits on
/// the slab through the origin, `A` on every slab behind it, `C` on every
/// slab ahead of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlane {
    blocks: [Pattern; 3],
    v: Coord,
    w: Coord,
    lattice: Lattice,
    tables: [Vec<Symbol>; 3],
}

impl HalfPlane {
    pub fn new(a: Pattern, b: Pattern, c: Pattern, v: Coord, w: Coord) -> Result<Self> {
        if a.extent() != b.extent() || b.extent() != c.extent() {
            return Err(invalid("A, B and C must have equal extents"));
        }
        if !(a.is_full() && b.is_full() && c.is_full()) {
            return Err(invalid("half-plane blocks must be full rectangles"));
        }
        let lattice = Lattice::from_periods(v, w).map_err(|_| invalid(format!("v = {v} and w = {w} are not independent")))?;
        let rect = a.bounding_rect();
        if !rect.contains(v) && !rect.contains(-v) {
            return Err(invalid(format!("blocks must contain both 0 and the period {v}")));
        }
        let mut hp = HalfPlane {
            blocks: [a, b, c],
            v,
            w,
            lattice,
            tables: [Vec::new(), Vec::new(), Vec::new()],
        };
        for (k, name) in ["A", "B", "C"].iter().enumerate() {
            if let Some((c, _)) = hp.blocks[k].cells().iter().find(|(c, _)| hp.slab(*c) != 0) {
                return Err(invalid(format!("block {name} leaves the central slab at {c}")));
            }
            hp.tables[k] = table_from(hp.blocks[k].cells().iter().copied(), &lattice, name)?;
        }
        if hp.tables[0] == hp.tables[1] && hp.tables[1] == hp.tables[2] {
            return Err(invalid("A = B = C describes a biperiodic configuration"));
        }
        Ok(hp)
    }

    /// Index `i` of the slab holding `c`: `c ≡ s·v + i·w` modulo the
    /// fundamental rectangle.
    pub fn slab(&self, c: Coord) -> i64 {
        let d = c - self.lattice.reduce(c);
        let det = self.v.cross(self.w);
        let i = self.v.cross(d);
        debug_assert_eq!(i % det, 0);
        i / det
    }

    pub fn letter(&self, c: Coord) -> Letter {
        match self.slab(c).signum() {
            -1 => Letter::A,
            0 => Letter::B,
            _ => Letter::C,
        }
    }

    pub fn eval(&self, c: Coord) -> Symbol {
        self.tables[self.letter(c) as usize][self.lattice.index(c)]
    }

    pub fn block(&self, l: Letter) -> &Pattern {
        &self.blocks[l as usize]
    }

    pub fn v(&self) -> Coord {
        self.v
    }

    pub fn w(&self) -> Coord {
        self.w
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The biperiodic configuration made of `A` (or `C`) alone.
    pub fn limit(&self, l: Letter) -> Biperiodic {
        Biperiodic::from_table(self.lattice, self.tables[l as usize].clone()).expect("tables cover the lattice")
    }
}

/// A biperiodic background overwritten on finitely many cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteDefect {
    background: Biperiodic,
    patch: Cells,
}

impl FiniteDefect {
    pub fn new(background: Biperiodic, patch: Cells) -> Result<Self> {
        if patch.is_empty() {
            return Err(invalid("defect patch is empty"));
        }
        if patch.iter().all(|(c, s)| background.eval(*c) == *s) {
            return Err(invalid("defect patch agrees with its background"));
        }
        Ok(FiniteDefect { background, patch })
    }

    pub fn eval(&self, c: Coord) -> Symbol {
        match self.patch.get(&c) {
            Some(s) => *s,
            None => self.background.eval(c),
        }
    }

    pub fn background(&self) -> &Biperiodic {
        &self.background
    }

    pub fn patch(&self) -> &Cells {
        &self.patch
    }

    /// Bounding box of the patch.
    pub fn patch_rect(&self) -> Rect {
        let mut it = self.patch.keys();
        let first = *it.next().expect("non-empty patch");
        it.fold(Rect::new(first, first), |r, c| r.union(&Rect::new(*c, *c)))
    }
}

/// Cells `base + k·dir` for `k >= 0` (or every `k` when `full`), coloured
/// periodically by a one-row word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub base: Coord,
    pub dir: Coord,
    pub word: Pattern,
    pub full: bool,
}

impl Ray {
    /// Position index of `c` along the ray, if it lies on it.
    pub fn position(&self, c: Coord) -> Option<i64> {
        let d = c - self.base;
        if d.cross(self.dir) != 0 {
            return None;
        }
        let k = if self.dir.x != 0 { d.x / self.dir.x } else { d.y / self.dir.y };
        (k * self.dir == d && (self.full || k >= 0)).then_some(k)
    }

    pub fn symbol_at(&self, k: i64) -> Symbol {
        let x = k.rem_euclid(self.word.width());
        self.word.get(Coord::new(x, 0)).expect("full one-row word")
    }
}

/// The wedge swept counter-clockwise from `d1` to `d2` around `apex`,
/// including the `d1` edge and excluding the `d2` edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub apex: Coord,
    pub d1: Coord,
    pub d2: Coord,
    pub fill: Biperiodic,
}

impl Sector {
    pub fn contains(&self, c: Coord) -> bool {
        let r = c - self.apex;
        if self.d1.cross(self.d2) > 0 {
            self.d1.cross(r) >= 0 && r.cross(self.d2) > 0
        } else {
            !(self.d2.cross(r) >= 0 && r.cross(self.d1) > 0)
        }
    }
}

/// A finite core, finitely many rays, and biperiodic sectors in between.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaySectors {
    core: Cells,
    rays: Vec<Ray>,
    sectors: Vec<Sector>,
}

/// Radius on which ray-sector shapes are validated.
const RAY_VALIDATION_RADIUS: i64 = 16;

impl RaySectors {
    pub fn new(core: Cells, rays: Vec<Ray>, sectors: Vec<Sector>) -> Result<Self> {
        for r in &rays {
            if r.dir.is_zero() {
                return Err(invalid("ray direction is zero"));
            }
            if r.word.height() != 1 || !r.word.is_full() {
                return Err(invalid("ray words are full one-row patterns"));
            }
        }
        for (i, r) in rays.iter().enumerate() {
            for s in &rays[i + 1..] {
                if r.dir.cross(s.dir) == 0 {
                    return Err(invalid(format!("rays along {} and {} are parallel", r.dir, s.dir)));
                }
            }
        }
        for s in &sectors {
            if s.d1.is_zero() || s.d2.is_zero() {
                return Err(invalid("sector edge direction is zero"));
            }
        }
        let rs = RaySectors { core, rays, sectors };
        for c in Rect::ball(RAY_VALIDATION_RADIUS).cells() {
            if rs.core.contains_key(&c) || rs.rays.iter().any(|r| r.position(c).is_some()) {
                continue;
            }
            let n = rs.sectors.iter().filter(|s| s.contains(c)).count();
            if n != 1 {
                return Err(invalid(format!("cell {c} lies in {n} sectors")));
            }
        }
        Ok(rs)
    }

    /// Core first, then rays in order, then sectors in order.
    pub fn eval(&self, c: Coord) -> Symbol {
        if let Some(s) = self.core.get(&c) {
            return *s;
        }
        for r in &self.rays {
            if let Some(k) = r.position(c) {
                return r.symbol_at(k);
            }
        }
        let s = self.sectors.iter().find(|s| s.contains(c)).unwrap_or(&self.sectors[0]);
        s.fill.eval(c)
    }

    pub fn core(&self) -> &Cells {
        &self.core
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    /// The sector owning `c`, if `c` is off the core and the rays.
    pub fn sector_of(&self, c: Coord) -> Option<usize> {
        if self.core.contains_key(&c) || self.rays.iter().any(|r| r.position(c).is_some()) {
            return None;
        }
        self.sectors.iter().position(|s| s.contains(c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schema {
    Biperiodic(Biperiodic),
    HalfPlane(HalfPlane),
    Defect(FiniteDefect),
    Rays(RaySectors),
}

impl Schema {
    pub fn eval(&self, c: Coord) -> Symbol {
        match self {
            Schema::Biperiodic(b) => b.eval(c),
            Schema::HalfPlane(h) => h.eval(c),
            Schema::Defect(d) => d.eval(c),
            Schema::Rays(r) => r.eval(c),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Schema::Biperiodic(_) => "biperiodic",
            Schema::HalfPlane(_) => "halfplane",
            Schema::Defect(_) => "defect",
            Schema::Rays(_) => "raysectors",
        }
    }

    /// Anchored cells of `r`.
    pub fn cells_on(&self, r: &Rect) -> Cells {
        r.cells().map(|c| (c, self.eval(c))).collect()
    }

    fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = match self {
            Schema::Biperiodic(b) => b.table.clone(),
            Schema::HalfPlane(h) => h.tables.concat(),
            Schema::Defect(d) => d.background.table.iter().chain(d.patch.values()).copied().collect(),
            Schema::Rays(r) => r
                .core
                .values()
                .copied()
                .chain(r.rays.iter().flat_map(|x| x.word.symbols()))
                .chain(r.sectors.iter().flat_map(|s| s.fill.table.iter().copied()))
                .collect(),
        };
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSchema {
    pub name: String,
    pub schema: Schema,
}

/// Finitely many schemas, each standing for its orbit closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaPresentation {
    pub name: String,
    pub alphabet: Alphabet,
    pub schemas: Vec<NamedSchema>,
}

impl SchemaPresentation {
    pub fn new(name: impl Into<String>, alphabet: Alphabet, schemas: Vec<NamedSchema>) -> Result<Self> {
        for s in &schemas {
            if let Some(x) = s.schema.symbols().into_iter().find(|x| !alphabet.contains(*x)) {
                return Err(Error::AlphabetMismatch(x.0));
            }
        }
        let mut names: Vec<&str> = schemas.iter().map(|s| s.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("schema names must be unique"));
        }
        Ok(SchemaPresentation {
            name: name.into(),
            alphabet,
            schemas,
        })
    }

    pub fn len(&self) -> usize {
        self.schemas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemas.is_empty()
    }

    pub fn get(&self, i: usize) -> &Schema {
        &self.schemas[i].schema
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.schemas.iter().position(|s| s.name == name)
    }

    /// The presentation restricted to the listed schemas, in order.
    pub fn subset(&self, keep: &[usize]) -> SchemaPresentation {
        SchemaPresentation {
            name: self.name.clone(),
            alphabet: self.alphabet.clone(),
            schemas: keep.iter().map(|i| self.schemas[*i].clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests;
