//! Brute-force oracles and a shared SFT corpus. Nothing here goes through
//! the crate's own admissibility checks or search engine.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sft_core::gallery;
use sft_core::sft::domino;
use sft_core::{Alphabet, Cells, Coord, Pattern, Rect, SftPresentation, Symbol};
use std::collections::BTreeSet;

pub mod suites;

pub const SEED: u64 = 0x5f7_2d_0bad;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

/// All words of length `n` over `k` letters, in lexicographic order with the
/// last position varying fastest.
pub fn all_words(k: usize, n: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |s| {
                    let mut w = w.clone();
                    w.push(Symbol(s as u8));
                    w
                })
            })
            .collect();
    }
    out
}

/// Does `p` match `f` when its origin sits at `t`?
fn matches_at(p: &Pattern, t: Coord, f: &dyn Fn(Coord) -> Option<Symbol>) -> bool {
    p.cells().iter().all(|(c, s)| f(t + *c) == Some(*s))
}

fn explicit(s: &SftPresentation) -> &[Pattern] {
    assert!(s.forbidden().pairs.is_empty(), "oracle handles explicit patterns only");
    s.patterns()
}

/// Torus colourings of `[0, a) × [0, d)`, row-major, that avoid every
/// forbidden pattern once unrolled to the plane.
pub fn brute_torus(s: &SftPresentation, a: i64, d: i64) -> BTreeSet<Vec<Symbol>> {
    let pats = explicit(s);
    let k = s.alphabet().len();
    let mut out = BTreeSet::new();
    for w in all_words(k, (a * d) as usize) {
        let at = |c: Coord| Some(w[(c.y.rem_euclid(d) * a + c.x.rem_euclid(a)) as usize]);
        let bad = pats.iter().any(|p| {
            (0..d).any(|y| (0..a).any(|x| matches_at(p, Coord::new(x, y), &at)))
        });
        if !bad {
            out.insert(w);
        }
    }
    out
}

/// Colourings of the fundamental rectangle `[0, a) × [0, d)` of the lattice
/// spanned by `(a, 0)` and `(b, d)`, row-major, avoiding every forbidden
/// pattern once unrolled.
pub fn brute_lattice(s: &SftPresentation, a: i64, b: i64, d: i64) -> BTreeSet<Vec<Symbol>> {
    let pats = explicit(s);
    let k = s.alphabet().len();
    let fold = |c: Coord| {
        let q = c.y.div_euclid(d);
        let (x, y) = (c.x - q * b, c.y - q * d);
        (y * a + x.rem_euclid(a)) as usize
    };
    let mut out = BTreeSet::new();
    for w in all_words(k, (a * d) as usize) {
        let at = |c: Coord| Some(w[fold(c)]);
        let bad = pats.iter().any(|p| (0..d).any(|y| (0..a).any(|x| matches_at(p, Coord::new(x, y), &at))));
        if !bad {
            out.insert(w);
        }
    }
    out
}

/// Number of colourings of `r` with no forbidden pattern fully inside.
pub fn brute_rect_count(s: &SftPresentation, r: Rect) -> u64 {
    let pats = explicit(s);
    let k = s.alphabet().len();
    let (w, h) = (r.width(), r.height());
    let mut n = 0;
    for word in all_words(k, (w * h) as usize) {
        let at = |c: Coord| {
            let (x, y) = (c.x - r.lo.x, c.y - r.lo.y);
            (x >= 0 && y >= 0 && x < w && y < h).then(|| word[(y * w + x) as usize])
        };
        let bad = pats.iter().any(|p| r.cells().any(|t| matches_at(p, t, &at)));
        if !bad {
            n += 1;
        }
    }
    n
}

/// Whether every forbidden pattern avoids every position of `q`.
pub fn brute_admissible(s: &SftPresentation, q: &Pattern) -> bool {
    let at = |c: Coord| q.get(c);
    let span = Rect::new(Coord::new(-8, -8), Coord::new(q.width() + 8, q.height() + 8));
    !explicit(s).iter().any(|p| span.cells().any(|t| matches_at(p, t, &at)))
}

/// Solution `w` on the lattice `(a, 0), (b, d)` has period `p`.
pub fn lattice_has_period(w: &[Symbol], a: i64, b: i64, d: i64, p: Coord) -> bool {
    let at = |c: Coord| {
        let q = c.y.div_euclid(d);
        let (x, y) = (c.x - q * b, c.y - q * d);
        w[(y * a + x.rem_euclid(a)) as usize]
    };
    (0..d).all(|y| (0..a).all(|x| at(Coord::new(x, y)) == at(Coord::new(x, y) + p)))
}

pub fn alphabet(k: usize) -> Alphabet {
    Alphabet::new((0..k).map(|i| ["a", "b", "c"][i])).unwrap()
}

/// A random pattern inside a 2×2 box.
pub fn random_pattern(rng: &mut ChaCha8Rng, k: usize) -> Pattern {
    loop {
        let mut cells = Cells::new();
        for c in Rect::new(Coord::ZERO, Coord::new(1, 1)).cells() {
            if rng.gen_bool(0.6) {
                cells.insert(c, Symbol(rng.gen_range(0..k) as u8));
            }
        }
        if let Ok(p) = Pattern::canonicalize(&cells) {
            if p.len() >= 2 || rng.gen_bool(0.1) {
                return p;
            }
        }
    }
}

pub fn random_sft(rng: &mut ChaCha8Rng) -> SftPresentation {
    let k = rng.gen_range(2..=3);
    let n = rng.gen_range(1..=6);
    let pats = (0..n).map(|_| random_pattern(rng, k)).collect();
    SftPresentation::from_patterns(alphabet(k), pats).unwrap()
}

fn named(name: &str, s: SftPresentation) -> (String, SftPresentation) {
    (name.to_string(), s)
}

/// Hand-picked, gallery and random SFTs with at most three symbols and
/// windows inside 2×2.
pub fn corpus() -> Vec<(String, SftPresentation)> {
    let (e, n) = (Coord::new(1, 0), Coord::new(0, 1));
    let two = alphabet(2);
    let (a, b) = (Symbol(0), Symbol(1));
    let mk = |p: Vec<Pattern>| SftPresentation::from_patterns(two.clone(), p).unwrap();
    let mut out = vec![
        named("full2", SftPresentation::full_shift(two.clone())),
        named("full3", SftPresentation::full_shift(alphabet(3))),
        named("hard-square", mk(vec![domino(b, b, e), domino(b, b, n)])),
        named("rows-constant", mk(vec![domino(a, b, e), domino(b, a, e)])),
        named("no-ab-vertical", mk(vec![domino(a, b, n)])),
        named("diagonal-b", mk(vec![domino(b, b, Coord::new(1, 1))])),
        named("anti-diagonal", mk(vec![domino(a, a, Coord::new(1, -1))])),
        named("empty", mk(vec![Pattern::single(a), Pattern::single(b)])),
        named("only-a", mk(vec![Pattern::single(b)])),
        named(
            "square-abba",
            mk(vec![Pattern::from_rows_bottom_up(&[vec![a, b], vec![b, a]]).unwrap()]),
        ),
    ];
    for item in gallery::all() {
        if let Some(s) = item.subshift.as_ref().and_then(|x| x.as_sft()) {
            if s.alphabet().len() <= 3 && s.window().w <= 2 && s.window().h <= 2 {
                out.push((format!("gallery:{}", item.name), s.clone()));
            }
        }
    }
    let mut r = rng();
    for i in 0..14 {
        out.push((format!("random{i}"), random_sft(&mut r)));
    }
    out
}
