//! Worked examples: small subshifts with known pre-order and rank facts.

pub mod parabola;
mod verify;

pub use parabola::{choice_tree, ChoiceTree};
pub use verify::{halfplane_rows_ok, rays_check, verify, Fact, RaysCheck};

use crate::error::{Error, Result};
use crate::lattice::{Alphabet, Cells, Coord, Pattern, Rect, Symbol};
use crate::schema::{Biperiodic, FiniteDefect, HalfPlane, NamedSchema, Ray, RaySectors, Schema, SchemaPresentation, Sector};
use crate::sft::{domino, wang_to_sft, PredicateSubshift, SftPresentation, Subshift, WangTile, WangTileSet};

/// What the paper's statements predict for an item.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expected {
    /// Distinct Hasse levels.
    pub levels: Option<Vec<usize>>,
    /// Schema and the number of minimal classes strictly below it.
    pub minimal_below: Option<(&'static str, usize)>,
    pub rank: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct GalleryItem {
    pub name: &'static str,
    pub summary: &'static str,
    /// `None` for items given by schemas only.
    pub subshift: Option<Subshift>,
    pub presentation: SchemaPresentation,
    pub countable: bool,
    pub finite: bool,
    pub expected: Expected,
}

pub const NAMES: [&str; 6] = ["checkerboard", "one_orange", "abc_level1", "hassenonsft2", "typic_rang2", "parabola"];

pub fn all() -> Vec<GalleryItem> {
    vec![
        build_checkerboard(),
        build_one_orange(),
        build_abc_level1(),
        build_hassenonsft2(),
        build_typic_rang2(),
        build_parabola(),
    ]
}

pub fn by_name(name: &str) -> Result<GalleryItem> {
    all()
        .into_iter()
        .find(|i| i.name == name)
        .ok_or_else(|| Error::UnknownItem(name.to_string()))
}

fn named(name: &str, schema: Schema) -> NamedSchema {
    NamedSchema {
        name: name.to_string(),
        schema,
    }
}

fn constant(s: u8) -> Schema {
    Schema::Biperiodic(Biperiodic::constant(Symbol(s)))
}

fn column(s: u8, h: usize) -> Pattern {
    Pattern::from_rows_bottom_up(&vec![vec![Symbol(s)]; h]).expect("non-empty")
}

/// Two symbols, equal horizontal or vertical neighbours forbidden.
pub fn checkerboard_sft() -> SftPresentation {
    let a = Alphabet::new(["a", "b"]).expect("valid names");
    let mut f = Vec::new();
    for s in a.symbols() {
        f.push(domino(s, s, Coord::new(1, 0)));
        f.push(domino(s, s, Coord::new(0, 1)));
    }
    SftPresentation::from_patterns(a, f).expect("symbols from the alphabet")
}

pub fn build_checkerboard() -> GalleryItem {
    let s = checkerboard_sft();
    let board = |a: u8, b: u8| {
        let block = Pattern::from_rows_bottom_up(&[vec![Symbol(a), Symbol(b)]]).expect("non-empty");
        Schema::Biperiodic(Biperiodic::new(block, Coord::new(2, 0), Coord::new(1, 1)).expect("valid"))
    };
    let p = SchemaPresentation::new("checkerboard", s.alphabet().clone(), vec![named("ab", board(0, 1)), named("ba", board(1, 0))])
        .expect("valid");
    GalleryItem {
        name: "checkerboard",
        summary: "finite SFT: the two checkerboard colourings",
        subshift: Some(Subshift::Sft(s)),
        presentation: p,
        countable: true,
        finite: true,
        expected: Expected {
            levels: Some(vec![0]),
            minimal_below: None,
            rank: Some(1),
        },
    }
}

/// Configurations over green and orange with at most one orange cell.
pub fn one_orange_subshift() -> PredicateSubshift {
    let a = Alphabet::new(["green", "orange"]).expect("valid names");
    PredicateSubshift::new(a, "at most one orange cell", |p: &Pattern| {
        p.symbols().filter(|s| *s == Symbol(1)).count() >= 2
    })
}

pub fn build_one_orange() -> GalleryItem {
    let x = one_orange_subshift();
    let green = Biperiodic::constant(Symbol(0));
    let dot = FiniteDefect::new(green.clone(), Cells::from([(Coord::ZERO, Symbol(1))])).expect("visible");
    let p = SchemaPresentation::new(
        "one_orange",
        x.alphabet.clone(),
        vec![named("all_green", Schema::Biperiodic(green)), named("one_orange", Schema::Defect(dot))],
    )
    .expect("valid");
    GalleryItem {
        name: "one_orange",
        summary: "not of finite type: at most one orange cell on a green plane",
        subshift: Some(Subshift::Predicate(x)),
        presentation: p,
        countable: true,
        finite: false,
        expected: Expected {
            levels: Some(vec![0, 1]),
            minimal_below: Some(("one_orange", 1)),
            rank: Some(2),
        },
    }
}

/// Tiles `a`, `b`, `c`: columns are constant and each row reads
/// `…aaabccc…`, `a^Z` or `c^Z`.
pub fn abc_tiles() -> WangTileSet {
    WangTileSet::named(
        vec![WangTile::new(0, 0, 0, 0), WangTile::new(1, 1, 1, 0), WangTile::new(2, 1, 2, 1)],
        vec!["a".into(), "b".into(), "c".into()],
    )
    .expect("valid tiles")
}

pub fn build_abc_level1() -> GalleryItem {
    let s = wang_to_sft(&abc_tiles());
    let hp = HalfPlane::new(column(0, 2), column(1, 2), column(2, 2), Coord::new(0, 1), Coord::new(1, 0)).expect("valid");
    let p = SchemaPresentation::new(
        "abc_level1",
        s.alphabet().clone(),
        vec![named("all_a", constant(0)), named("all_c", constant(2)), named("abc", Schema::HalfPlane(hp))],
    )
    .expect("valid");
    GalleryItem {
        name: "abc_level1",
        summary: "countable SFT whose level-1 configuration sits above two periodic ones",
        subshift: Some(Subshift::Sft(s)),
        presentation: p,
        countable: true,
        finite: false,
        expected: Expected {
            levels: Some(vec![0, 1]),
            minimal_below: Some(("abc", 2)),
            rank: Some(2),
        },
    }
}

pub fn build_hassenonsft2() -> GalleryItem {
    let a = Alphabet::new(["0", "1"]).expect("valid names");
    let line = HalfPlane::new(column(0, 2), column(1, 2), column(0, 2), Coord::new(0, 1), Coord::new(1, 0)).expect("valid");
    let p = SchemaPresentation::new("hassenonsft2", a, vec![named("zero", constant(0)), named("line", Schema::HalfPlane(line))])
        .expect("valid");
    GalleryItem {
        name: "hassenonsft2",
        summary: "schemas only: one vertical line on a blank plane, one configuration below it",
        subshift: None,
        presentation: p,
        countable: true,
        finite: false,
        expected: Expected {
            levels: Some(vec![0, 1]),
            minimal_below: Some(("line", 1)),
            rank: Some(2),
        },
    }
}

/// Rays declared by the rank-two shape.
pub const TYPIC_RAYS: usize = 3;

pub fn typic_rang2_schema() -> RaySectors {
    // k core, h u d rays, p q r s sector fills
    let sym = |s: u8| Symbol(s);
    let (k, h, u, d, p, q, r, s) = (0, 1, 2, 3, 4, 5, 6, 7);
    let core: Cells = Rect::ball(1).cells().map(|c| (c, sym(k))).collect();
    let word = |x: u8| Pattern::single(sym(x));
    let ray = |dir, w, full| Ray {
        base: Coord::ZERO,
        dir,
        word: word(w),
        full,
    };
    let fill = |rows: Vec<Vec<u8>>, p1, p2| {
        let rows: Vec<Vec<Symbol>> = rows.into_iter().map(|r| r.into_iter().map(sym).collect()).collect();
        Biperiodic::new(Pattern::from_rows_bottom_up(&rows).expect("non-empty"), p1, p2).expect("valid fill")
    };
    let sector = |d1, d2, fill| Sector {
        apex: Coord::ZERO,
        d1,
        d2,
        fill,
    };
    let (e, n, w, sw) = (Coord::new(1, 0), Coord::new(0, 1), Coord::new(-1, 0), Coord::new(-1, -1));
    RaySectors::new(
        core,
        vec![ray(e, h, true), ray(n, u, false), ray(sw, d, false)],
        vec![
            sector(e, n, fill(vec![vec![p, q]], Coord::new(2, 0), Coord::new(1, 1))),
            sector(n, w, fill(vec![vec![r, s]], Coord::new(2, 0), Coord::new(0, 1))),
            sector(w, sw, fill(vec![vec![s], vec![r]], Coord::new(1, 0), Coord::new(0, 2))),
            sector(sw, e, fill(vec![vec![p]], Coord::new(1, 0), Coord::new(0, 1))),
        ],
    )
    .expect("valid shape")
}

pub fn build_typic_rang2() -> GalleryItem {
    let a = Alphabet::new(["k", "h", "u", "d", "p", "q", "r", "s"]).expect("valid names");
    let p = SchemaPresentation::new("typic_rang2", a, vec![named("shape", Schema::Rays(typic_rang2_schema()))]).expect("valid");
    GalleryItem {
        name: "typic_rang2",
        summary: "shape of a rank-two configuration: a core, three rays, biperiodic sectors",
        subshift: None,
        presentation: p,
        countable: true,
        finite: false,
        expected: Expected::default(),
    }
}

pub fn build_parabola() -> GalleryItem {
    let s = parabola::parabola_sft();
    let sym = |n: &str| s.alphabet().symbol(n).expect("known name").0;
    let post = HalfPlane::new(column(sym("out"), 2), column(sym("post"), 2), column(sym("in"), 2), Coord::new(0, 1), Coord::new(1, 0))
        .expect("valid");
    let p = SchemaPresentation::new(
        "parabola",
        s.alphabet().clone(),
        vec![
            named("all_out", constant(sym("out"))),
            named("all_in", constant(sym("in"))),
            named("quiet_post", Schema::HalfPlane(post)),
        ],
    )
    .expect("valid");
    GalleryItem {
        name: "parabola",
        summary: "uncountable SFT: a bouncing signal makes a binary choice at every hit",
        subshift: Some(Subshift::Sft(s)),
        presentation: p,
        countable: false,
        finite: false,
        expected: Expected {
            levels: Some(vec![0, 1]),
            minimal_below: Some(("quiet_post", 2)),
            rank: Some(2),
        },
    }
}
