//! The search engine against exhaustive enumeration.

mod common;

use common::*;
use sft_core::solver::{fill_region, torus_solutions, FillMode, FillResult, Region};
use sft_core::{Coord, Rect};

#[test]
fn skewed_tori_match_enumeration() {
    for (name, s) in corpus() {
        for a in 1..=3 {
            for d in 1..=2 {
                for b in 0..a {
                    let want = brute_lattice(&s, a, b, d);
                    let t = torus_solutions(&s, Coord::new(a, 0), Coord::new(b, d)).unwrap();
                    let got = (0..t.len())
                        .map(|k| {
                            (0..d)
                                .flat_map(|y| (0..a).map(move |x| Coord::new(x, y)))
                                .map(|c| t.eval(k, c))
                                .collect::<Vec<_>>()
                        })
                        .collect();
                    assert_eq!(want, got, "{name} on (({a},0),({b},{d}))");
                }
            }
        }
    }
}

#[test]
fn rectangle_counts_match_enumeration() {
    for (name, s) in corpus() {
        for (w, h) in [(1, 1), (2, 1), (1, 3), (2, 2), (3, 2)] {
            let r = Rect::new(Coord::new(-1, 2), Coord::new(w - 2, h + 1));
            let got = match fill_region(&s, &Region::new(r), FillMode::Count, 1 << 20).unwrap() {
                FillResult::Count(n) => n,
                other => panic!("{other:?}"),
            };
            assert_eq!(got, brute_rect_count(&s, r), "{name} on {w}x{h}");
        }
    }
}

#[test]
fn periods_found_on_the_torus_are_real() {
    // the oracle's own period test agrees with the obvious full shift count
    let s = sft_core::SftPresentation::full_shift(alphabet(2));
    let sols = brute_lattice(&s, 2, 0, 2);
    let n = sols.iter().filter(|w| lattice_has_period(w, 2, 0, 2, Coord::new(1, 0))).count();
    assert_eq!(n, 4);
}
