//! Subshifts of finite type given by forbidden patterns, Wang tiles, and
//! predicate subshifts.

pub(crate) mod check;
mod format;

pub use format::{parse_sft, parse_wang, serialize_sft, serialize_wang};
pub(crate) use format::{keyword, lines, Line};

use crate::error::{Error, Result};
use crate::lattice::{appears_in, Alphabet, Cells, Coord, Extent, Pattern, Symbol};
use check::{violates, PatternCanvas};
use std::fmt;
use std::sync::Arc;

/// A finite set of forbidden patterns, plus windowed conjunction rules.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ForbiddenSet {
    pub patterns: Vec<Pattern>,
    pub pairs: Vec<PairRule>,
}

/// Forbids every `side × side` square that contains both an occurrence of
/// something in `left` and an occurrence of something in `right`.
///
/// This is the lazy form of the (usually astronomically large) explicit set
/// of such squares.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairRule {
    pub side: i64,
    pub left: ForbiddenSet,
    pub right: ForbiddenSet,
}

impl ForbiddenSet {
    pub fn from_patterns(patterns: Vec<Pattern>) -> Self {
        let mut s = ForbiddenSet {
            patterns,
            pairs: Vec::new(),
        };
        s.normalize();
        s
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty() && self.pairs.is_empty()
    }

    /// Canonical order, no duplicates, no pattern containing another one.
    pub fn normalize(&mut self) {
        self.patterns.sort();
        self.patterns.dedup();
        let mut by_size: Vec<usize> = (0..self.patterns.len()).collect();
        by_size.sort_by_key(|&i| self.patterns[i].len());
        let mut keep = vec![true; self.patterns.len()];
        for (k, &i) in by_size.iter().enumerate() {
            let big = &self.patterns[i];
            keep[i] = !by_size[..k].iter().any(|&j| {
                keep[j] && self.patterns[j].len() < big.len() && appears_in(&self.patterns[j], big)
            });
        }
        let mut idx = 0;
        self.patterns.retain(|_| {
            idx += 1;
            keep[idx - 1]
        });
        for r in &mut self.pairs {
            r.left.normalize();
            r.right.normalize();
        }
        self.pairs.sort();
        self.pairs.dedup();
    }

    pub fn window(&self) -> Extent {
        let mut e = Extent::new(1, 1);
        for p in &self.patterns {
            e = e.union(p.extent());
        }
        for r in &self.pairs {
            e = e.union(Extent::new(r.side, r.side));
        }
        e
    }

    pub(crate) fn symbols(&self) -> Box<dyn Iterator<Item = Symbol> + '_> {
        Box::new(
            self.patterns
                .iter()
                .flat_map(|p| p.symbols())
                .chain(self.pairs.iter().flat_map(|r| r.left.symbols().chain(r.right.symbols()))),
        )
    }

    pub fn union(&self, other: &ForbiddenSet) -> ForbiddenSet {
        let mut s = ForbiddenSet {
            patterns: self.patterns.iter().chain(&other.patterns).cloned().collect(),
            pairs: self.pairs.iter().chain(&other.pairs).cloned().collect(),
        };
        s.normalize();
        s
    }
}

/// An SFT: alphabet plus forbidden set, normalized on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SftPresentation {
    alphabet: Alphabet,
    forbidden: ForbiddenSet,
}

impl SftPresentation {
    pub fn new(alphabet: Alphabet, mut forbidden: ForbiddenSet) -> Result<Self> {
        if let Some(s) = forbidden.symbols().find(|s| !alphabet.contains(*s)) {
            return Err(Error::AlphabetMismatch(s.0));
        }
        forbidden.normalize();
        Ok(SftPresentation {
            alphabet,
            forbidden,
        })
    }

    pub fn from_patterns(alphabet: Alphabet, patterns: Vec<Pattern>) -> Result<Self> {
        SftPresentation::new(
            alphabet,
            ForbiddenSet {
                patterns,
                pairs: Vec::new(),
            },
        )
    }

    /// No forbidden patterns at all.
    pub fn full_shift(alphabet: Alphabet) -> Self {
        SftPresentation {
            alphabet,
            forbidden: ForbiddenSet::default(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &ForbiddenSet {
        &self.forbidden
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.forbidden.patterns
    }

    /// Smallest box covering every forbidden domain.
    pub fn window(&self) -> Extent {
        self.forbidden.window()
    }

    pub fn with_more(&self, extra: Vec<Pattern>) -> Result<Self> {
        let mut f = self.forbidden.clone();
        f.patterns.extend(extra);
        SftPresentation::new(self.alphabet.clone(), f)
    }

    pub(crate) fn check_pattern(&self, p: &Pattern) -> Result<()> {
        match p.symbols().find(|s| !self.alphabet.contains(*s)) {
            Some(s) => Err(Error::AlphabetMismatch(s.0)),
            None => Ok(()),
        }
    }
}

/// True iff no forbidden pattern occurs in `p`.
///
/// A forbidden occurrence needs every one of its cells defined in `p`.
pub fn locally_admissible(s: &SftPresentation, p: &Pattern) -> Result<bool> {
    s.check_pattern(p)?;
    Ok(!violates(&s.forbidden, &PatternCanvas(p)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WangTile {
    pub north: u32,
    pub east: u32,
    pub south: u32,
    pub west: u32,
}

impl WangTile {
    pub const fn new(north: u32, east: u32, south: u32, west: u32) -> Self {
        WangTile {
            north,
            east,
            south,
            west,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WangTileSet {
    tiles: Vec<WangTile>,
    names: Vec<String>,
}

impl WangTileSet {
    /// Tiles named `t0`, `t1`, ...
    pub fn new(tiles: Vec<WangTile>) -> Result<Self> {
        let names = (0..tiles.len()).map(|i| format!("t{i}")).collect();
        WangTileSet::named(tiles, names)
    }

    pub fn named(tiles: Vec<WangTile>, names: Vec<String>) -> Result<Self> {
        if tiles.is_empty() {
            return Err(Error::InvalidAlphabet("tile set is empty".into()));
        }
        if names.len() != tiles.len() {
            return Err(Error::InvalidAlphabet("one name per tile required".into()));
        }
        Alphabet::new(names.iter().cloned())?;
        Ok(WangTileSet { tiles, names })
    }

    pub fn tiles(&self) -> &[WangTile] {
        &self.tiles
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Edge-matching rules as forbidden dominoes.
pub fn wang_to_sft(t: &WangTileSet) -> SftPresentation {
    let alphabet = Alphabet::new(t.names.iter().cloned()).expect("validated on construction");
    let mut forbidden = Vec::new();
    for (i, a) in t.tiles.iter().enumerate() {
        for (j, b) in t.tiles.iter().enumerate() {
            let (si, sj) = (Symbol(i as u8), Symbol(j as u8));
            if a.east != b.west {
                forbidden.push(domino(si, sj, Coord::new(1, 0)));
            }
            if a.north != b.south {
                forbidden.push(domino(si, sj, Coord::new(0, 1)));
            }
        }
    }
    SftPresentation::from_patterns(alphabet, forbidden).expect("symbols come from the tile set")
}

/// Two-cell pattern: `a` at the origin, `b` at `v`.
pub fn domino(a: Symbol, b: Symbol, v: Coord) -> Pattern {
    let mut c = Cells::new();
    c.insert(Coord::ZERO, a);
    c.insert(v, b);
    Pattern::canonicalize(&c).expect("two cells")
}

pub type PatternPredicate = dyn Fn(&Pattern) -> bool + Send + Sync;

/// A subshift given by an upward-closed predicate on finite patterns: if a
/// pattern is forbidden, so is every pattern containing it.
#[derive(Clone)]
pub struct PredicateSubshift {
    pub alphabet: Alphabet,
    pub description: String,
    forbids: Arc<PatternPredicate>,
}

impl PredicateSubshift {
    pub fn new(
        alphabet: Alphabet,
        description: impl Into<String>,
        forbids: impl Fn(&Pattern) -> bool + Send + Sync + 'static,
    ) -> Self {
        PredicateSubshift {
            alphabet,
            description: description.into(),
            forbids: Arc::new(forbids),
        }
    }

    pub fn forbids(&self, p: &Pattern) -> bool {
        (self.forbids)(p)
    }
}

impl fmt::Debug for PredicateSubshift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PredicateSubshift")
            .field("alphabet", &self.alphabet)
            .field("description", &self.description)
            .finish_non_exhaustive()
    }
}

/// Either flavour of subshift the gallery works with.
#[derive(Debug, Clone)]
pub enum Subshift {
    Sft(SftPresentation),
    Predicate(PredicateSubshift),
}

impl Subshift {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Subshift::Sft(s) => s.alphabet(),
            Subshift::Predicate(p) => &p.alphabet,
        }
    }

    pub fn as_sft(&self) -> Option<&SftPresentation> {
        match self {
            Subshift::Sft(s) => Some(s),
            Subshift::Predicate(_) => None,
        }
    }

    pub fn locally_admissible(&self, p: &Pattern) -> Result<bool> {
        match self {
            Subshift::Sft(s) => locally_admissible(s, p),
            Subshift::Predicate(q) => Ok(!q.forbids(p)),
        }
    }
}
