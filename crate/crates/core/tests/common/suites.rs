//! Randomized property suites with a fixed seed. Each returns the number of
//! cases checked or the first counterexample.

use super::{corpus, random_pattern, random_sft, rng, brute_admissible};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sft_core::lattice::Rect;
use sft_core::order::{preceq, Verdict};
use sft_core::schema::{Biperiodic, FiniteDefect, HalfPlane, Schema};
use sft_core::solver::{language_capped, stripe_extendable};
use sft_core::{locally_admissible, Cells, Coord, Error, Pattern, SftPresentation, Symbol};
use std::collections::BTreeSet;

pub const CASES: usize = 1000;

pub type Outcome = Result<usize, String>;

fn windows(p: &Pattern, n: i64) -> Vec<Pattern> {
    let mut out = Vec::new();
    for y in 0..=p.height() - n {
        for x in 0..=p.width() - n {
            let r = Rect::new(Coord::new(x, y), Coord::new(x + n - 1, y + n - 1));
            out.push(p.restrict(&r).expect("inside a full block"));
        }
    }
    out
}

/// Languages shrink as the margin grows, and every window of an
/// `(n+1)`-pattern lies in the `n`-language at the same margin. A case is one
/// `(SFT, n, margin)` triple.
pub fn language_monotonicity() -> Outcome {
    let mut sfts: Vec<(String, SftPresentation)> = corpus();
    let mut r = rng();
    let mut i = 0;
    while sfts.len() * 15 < CASES {
        sfts.push((format!("extra{i}"), random_sft(&mut r)));
        i += 1;
    }
    let mut cases = 0;
    for (name, s) in &sfts {
        let mut langs: Vec<Vec<BTreeSet<Pattern>>> = Vec::new();
        for n in 1..=3 {
            let row = (0..=4)
                .map(|m| language_capped(s, n, m, 1 << 20).map_err(|e| format!("{name} n={n} m={m}: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            langs.push(row);
        }
        for n in 1..=3usize {
            for m in 0..=4usize {
                cases += 1;
                let l = &langs[n - 1][m];
                if m < 4 && !langs[n - 1][m + 1].is_subset(l) {
                    return Err(format!("{name}: L({n}, {}) is not inside L({n}, {m})", m + 1));
                }
                if n < 3 {
                    for p in &langs[n][m] {
                        if let Some(w) = windows(p, n as i64).into_iter().find(|w| !l.contains(w)) {
                            return Err(format!("{name}: window {w:?} of an L({}, {m}) pattern is missing from L({n}, {m})", n + 1));
                        }
                    }
                }
            }
        }
    }
    Ok(cases)
}

fn random_partial(r: &mut ChaCha8Rng, k: usize, side: i64) -> Pattern {
    loop {
        let mut cells = Cells::new();
        for c in Rect::new(Coord::ZERO, Coord::new(side - 1, side - 1)).cells() {
            if r.gen_bool(0.7) {
                cells.insert(c, Symbol(r.gen_range(0..k) as u8));
            }
        }
        if let Ok(p) = Pattern::canonicalize(&cells) {
            return p;
        }
    }
}

/// Sub-patterns of admissible patterns are admissible; the crate's check
/// agrees with a direct scan. A case is one admissible pattern.
pub fn admissible_heredity() -> Outcome {
    let mut r = rng();
    let mut cases = 0;
    let mut tries = 0;
    while cases < CASES {
        tries += 1;
        if tries > 100 * CASES {
            return Err("too few admissible samples".into());
        }
        let s = random_sft(&mut r);
        let q = random_partial(&mut r, s.alphabet().len(), 3);
        let got = locally_admissible(&s, &q).map_err(|e| e.to_string())?;
        if got != brute_admissible(&s, &q) {
            return Err(format!("admissibility of {q:?} disagrees with the scan under {:?}", s.patterns()));
        }
        if !got {
            continue;
        }
        cases += 1;
        let mut cells: Vec<(Coord, Symbol)> = q.cells().to_vec();
        cells.shuffle(&mut r);
        let keep = r.gen_range(1..=cells.len());
        let sub = Pattern::from_cells(cells[..keep].iter().copied()).map_err(|e| e.to_string())?;
        if !locally_admissible(&s, &sub).map_err(|e| e.to_string())? {
            return Err(format!("{sub:?} inside admissible {q:?} is not admissible"));
        }
    }
    Ok(cases)
}

fn random_biperiodic(r: &mut ChaCha8Rng) -> Biperiodic {
    let (w, h) = (r.gen_range(1..=2), r.gen_range(1..=2));
    let rows: Vec<Vec<Symbol>> = (0..h).map(|_| (0..w).map(|_| Symbol(r.gen_range(0..2))).collect()).collect();
    let block = Pattern::from_rows_bottom_up(&rows).expect("non-empty");
    Biperiodic::new(block, Coord::new(w, 0), Coord::new(0, h)).expect("block is a fundamental domain")
}

fn random_schema(r: &mut ChaCha8Rng) -> Schema {
    match r.gen_range(0..3) {
        0 => Schema::Biperiodic(random_biperiodic(r)),
        1 => loop {
            let bg = random_biperiodic(r);
            let patch: Cells = (0..r.gen_range(1..=2))
                .map(|_| (Coord::new(r.gen_range(-1..=1), r.gen_range(-1..=1)), Symbol(r.gen_range(0..2))))
                .collect();
            if let Ok(d) = FiniteDefect::new(bg, patch) {
                break Schema::Defect(d);
            }
        },
        _ => loop {
            // columns `s t s` with vertical period 2
            let mut col = || {
                let (s, t) = (Symbol(r.gen_range(0..2)), Symbol(r.gen_range(0..2)));
                Pattern::from_rows_bottom_up(&[vec![s], vec![t], vec![s]]).expect("non-empty")
            };
            let (a, b, c) = (col(), col(), col());
            if let Ok(h) = HalfPlane::new(a, b, c, Coord::new(0, 2), Coord::new(1, 0)) {
                break Schema::HalfPlane(h);
            }
        },
    }
}

/// Definitive `x ≼ y` and `y ≼ z` always give a definitive `x ≼ z`. A
/// case is one triple with both premises definitively true.
pub fn preceq_transitivity() -> Outcome {
    let mut r = rng();
    let pool: Vec<Schema> = (0..36).map(|_| random_schema(&mut r)).collect();
    let rel: Vec<Vec<Verdict>> = pool.iter().map(|x| pool.iter().map(|y| preceq(x, y, 2, 6)).collect()).collect();
    let mut cases = 0;
    for i in 0..pool.len() {
        for j in 0..pool.len() {
            if rel[i][j] != Verdict::True {
                continue;
            }
            for k in 0..pool.len() {
                if rel[j][k] != Verdict::True {
                    continue;
                }
                cases += 1;
                if rel[i][k] != Verdict::True {
                    return Err(format!("{:?} ≼ {:?} ≼ {:?} but not the ends", pool[i], pool[j], pool[k]));
                }
            }
        }
    }
    if cases < CASES {
        return Err(format!("only {cases} triples with definitive premises"));
    }
    Ok(cases)
}

/// Repeating a pattern along `v` or along `-v` draws the same stripe.
pub fn stripe_symmetry() -> Outcome {
    let mut r = rng();
    for _ in 0..CASES {
        let s = random_sft(&mut r);
        let m = random_pattern(&mut r, s.alphabet().len());
        let v = loop {
            let v = Coord::new(r.gen_range(-3..=3), r.gen_range(-3..=3));
            if !v.is_zero() {
                break v;
            }
        };
        let key = |x: Result<bool, Error>| match x {
            Ok(b) => b.to_string(),
            Err(Error::OverlapConflict(_)) => "overlap".into(),
            Err(e) => e.to_string(),
        };
        let (a, b) = (key(stripe_extendable(&s, &m, v)), key(stripe_extendable(&s, &m, -v)));
        if a != b {
            return Err(format!("{m:?} along {v}: {a} vs {b}"));
        }
    }
    Ok(CASES)
}
