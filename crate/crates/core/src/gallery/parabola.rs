//! A cellular automaton drawn as an SFT: time runs up the y axis. A post
//! column on the left sends a signal at full speed to a boundary on the
//! right; each time the signal hits the boundary the boundary cell turns
//! into one of two choice colours and the boundary moves one step right,
//! while the signal bounces back to the post. The hit times lie on a
//! parabola.

use crate::error::{Error, Result};
use crate::lattice::{Alphabet, Cells, Coord, Pattern, Rect, Symbol};
use crate::sft::SftPresentation;
use crate::solver::{fill_first, Filling, Region};
use std::collections::BTreeSet;

pub const NAMES: [&str; 8] = ["out", "post", "in", "su", "sd", "wall", "ca", "cb"];
const OUT: u8 = 0;
const POST: u8 = 1;
const IN: u8 = 2;
const SU: u8 = 3;
const SD: u8 = 4;
const WALL: u8 = 5;
const CA: u8 = 6;
const CB: u8 = 7;

/// Side of the solved square.
pub const SIZE: i64 = 64;
/// Column of the post in the seed row.
pub const POST_X: i64 = 2;

fn is_choice(s: u8) -> bool {
    s == CA || s == CB
}

/// Symbols allowed above `c` given its left and right neighbours.
pub fn successors(l: u8, c: u8, r: u8) -> Vec<u8> {
    match c {
        POST => vec![POST],
        OUT if is_choice(l) => vec![WALL],
        OUT => vec![OUT],
        WALL if l == SU => vec![CA, CB],
        WALL => vec![WALL],
        CA | CB => vec![IN],
        _ if l == SU => vec![SU],
        _ if r == SD || is_choice(r) => vec![SD],
        SD if l == POST => vec![SU],
        _ => vec![IN],
    }
}

fn tee(l: Option<u8>, c: u8, r: Option<u8>, u: u8) -> Pattern {
    let mut cells = Cells::new();
    cells.insert(Coord::new(0, 0), Symbol(c));
    cells.insert(Coord::new(0, 1), Symbol(u));
    if let Some(l) = l {
        cells.insert(Coord::new(-1, 0), Symbol(l));
    }
    if let Some(r) = r {
        cells.insert(Coord::new(1, 0), Symbol(r));
    }
    Pattern::canonicalize(&cells).expect("non-empty")
}

/// Forbidden T-shapes, each shrunk to the cells that already decide it.
pub fn parabola_sft() -> SftPresentation {
    let alphabet = Alphabet::new(NAMES).expect("distinct names");
    let k = NAMES.len() as u8;
    let bad = |l: u8, c: u8, r: u8, u: u8| !successors(l, c, r).contains(&u);
    let mut out = BTreeSet::new();
    for c in 0..k {
        for u in 0..k {
            if (0..k).all(|l| (0..k).all(|r| bad(l, c, r, u))) {
                out.insert(tee(None, c, None, u));
                continue;
            }
            for l in 0..k {
                for r in 0..k {
                    if !bad(l, c, r, u) {
                        continue;
                    }
                    let p = if (0..k).all(|r| bad(l, c, r, u)) {
                        tee(Some(l), c, None, u)
                    } else if (0..k).all(|l| bad(l, c, r, u)) {
                        tee(None, c, Some(r), u)
                    } else {
                        tee(Some(l), c, Some(r), u)
                    };
                    out.insert(p);
                }
            }
        }
    }
    SftPresentation::from_patterns(alphabet, out.into_iter().collect()).expect("symbols in range")
}

/// Seed row `out out post su wall out …` across the square.
pub fn seed() -> Cells {
    (0..SIZE)
        .map(|x| {
            let s = match x - POST_X {
                -2 | -1 => OUT,
                0 => POST,
                1 => SU,
                2 => WALL,
                _ => OUT,
            };
            (Coord::new(x, 0), Symbol(s))
        })
        .collect()
}

pub fn region() -> Rect {
    Rect::new(Coord::ZERO, Coord::new(SIZE - 1, SIZE - 1))
}

/// Runs the automaton from the seed, taking `pick` at each hit, and
/// returns the rows. Cells beyond the square's edges read as `out`.
pub fn simulate(rows: i64, mut pick: impl FnMut(usize) -> u8) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..SIZE).map(|x| seed()[&Coord::new(x, 0)].0).collect();
    let mut out = vec![cur.clone()];
    let mut hits = 0;
    for _ in 1..rows {
        let at = |x: i64| if (0..SIZE).contains(&x) { cur[x as usize] } else { OUT };
        let mut next = Vec::with_capacity(SIZE as usize);
        for x in 0..SIZE {
            let s = successors(at(x - 1), at(x), at(x + 1));
            next.push(if s.len() == 2 {
                hits += 1;
                pick(hits - 1)
            } else {
                s[0]
            });
        }
        cur = next;
        out.push(cur.clone());
    }
    out
}

/// Hit cells inside the square, in time order.
pub fn choice_sites() -> Vec<Coord> {
    let rows = simulate(SIZE, |_| CA);
    let mut out = Vec::new();
    for (y, row) in rows.iter().enumerate() {
        for (x, s) in row.iter().enumerate() {
            if is_choice(*s) {
                out.push(Coord::new(x as i64, y as i64));
            }
        }
    }
    out
}

/// Row `post in^(k+1) ca`: present exactly when hit `k` took the first colour.
pub fn label(k: usize) -> Pattern {
    let mut row = vec![Symbol(POST)];
    row.extend(std::iter::repeat_n(Symbol(IN), k + 1));
    row.push(Symbol(CA));
    Pattern::from_rows_bottom_up(&[row]).expect("non-empty")
}

/// A complete binary tree of patterns: the left child of a node contains its
/// label, the right child does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChoiceTree {
    Leaf(Filling),
    Node {
        label: Pattern,
        left: Box<ChoiceTree>,
        right: Box<ChoiceTree>,
    },
}

impl ChoiceTree {
    /// Leaves with their choice words, `true` for left.
    pub fn leaves(&self) -> Vec<(Vec<bool>, &Filling)> {
        match self {
            ChoiceTree::Leaf(f) => vec![(Vec::new(), f)],
            ChoiceTree::Node { left, right, .. } => {
                let mut out = Vec::new();
                for (side, t) in [(true, left), (false, right)] {
                    for (mut w, f) in t.leaves() {
                        w.insert(0, side);
                        out.push((w, f));
                    }
                }
                out
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ChoiceTree::Leaf(_) => 0,
            ChoiceTree::Node { left, .. } => 1 + left.depth(),
        }
    }
}

/// Solves the seeded square with the first `word.len()` hits fixed.
pub fn solve_word(word: &[bool]) -> Result<Filling> {
    let sites = choice_sites();
    if word.len() > sites.len() {
        return Err(Error::DepthUnrealizable(word.to_vec()));
    }
    let mut clamps = seed();
    for (k, left) in word.iter().enumerate() {
        clamps.insert(sites[k], Symbol(if *left { CA } else { CB }));
    }
    let s = parabola_sft();
    fill_first(&s, &Region::with_clamps(region(), clamps))?.ok_or_else(|| Error::DepthUnrealizable(word.to_vec()))
}

fn build(word: &mut Vec<bool>, depth: usize) -> Result<ChoiceTree> {
    if word.len() == depth {
        return Ok(ChoiceTree::Leaf(solve_word(word)?));
    }
    let k = word.len();
    word.push(true);
    let left = build(word, depth)?;
    *word.last_mut().expect("pushed") = false;
    let right = build(word, depth)?;
    word.pop();
    Ok(ChoiceTree::Node {
        label: label(k),
        left: Box::new(left),
        right: Box::new(right),
    })
}

pub fn choice_tree(depth: usize) -> Result<ChoiceTree> {
    build(&mut Vec::new(), depth)
}

/// Length of the run of boundary cells right above and beside hit `k`.
pub fn wall_run(f: &Filling, site: Coord) -> usize {
    (1..)
        .map(|dy| f.get(site + Coord::new(1, dy)))
        .take_while(|s| *s == Some(Symbol(WALL)))
        .count()
}
