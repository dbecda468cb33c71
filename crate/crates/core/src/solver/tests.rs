use super::*;
use crate::gallery::checkerboard_sft;
use crate::lattice::Alphabet;
use crate::sft::domino;

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

fn square(n: i64) -> Rect {
    Rect::from_extent(Coord::ZERO, Extent::new(n, n))
}

fn count(s: &SftPresentation, r: &Region) -> u64 {
    match fill_region(s, r, FillMode::Count, DEFAULT_CAP).unwrap() {
        FillResult::Count(n) => n,
        other => panic!("{other:?}"),
    }
}

#[test]
fn fill_counts() {
    assert_eq!(count(&SftPresentation::full_shift(ab()), &Region::new(square(2))), 16);
    assert_eq!(count(&checkerboard_sft(), &Region::new(square(2))), 2);
    let mut clamps = Cells::new();
    clamps.insert(Coord::new(0, 0), Symbol(0));
    clamps.insert(Coord::new(1, 0), Symbol(0));
    let r = Region::with_clamps(square(2), clamps);
    assert_eq!(fill_region(&checkerboard_sft(), &r, FillMode::First, 1).unwrap(), FillResult::Unsat);
}

#[test]
fn count_never_truncates() {
    let s = SftPresentation::full_shift(ab());
    assert_eq!(
        fill_region(&s, &Region::new(square(2)), FillMode::Count, 15),
        Err(Error::CapExceeded { cap: 15 })
    );
    assert_eq!(
        fill_region(&s, &Region::new(square(2)), FillMode::Enumerate, 3),
        Err(Error::CapExceeded { cap: 3 })
    );
}

#[test]
fn enumeration_order_is_lexicographic() {
    let s = SftPresentation::full_shift(ab());
    let FillResult::All(v) = fill_region(&s, &Region::new(square(2)), FillMode::Enumerate, 100).unwrap() else {
        panic!()
    };
    let values: Vec<_> = v.iter().map(|f| f.values.clone()).collect();
    let mut sorted = values.clone();
    sorted.sort();
    assert_eq!(values, sorted);
    assert_eq!(values[1], vec![Symbol(0), Symbol(0), Symbol(0), Symbol(1)]);
}

#[test]
fn torus_examples() {
    let c = checkerboard_sft();
    assert_eq!(torus_solutions(&c, Coord::new(2, 0), Coord::new(0, 2)).unwrap().len(), 2);
    assert_eq!(torus_solutions(&c, Coord::new(1, 0), Coord::new(0, 1)).unwrap().len(), 0);
    let three = SftPresentation::full_shift(Alphabet::new(["a", "b", "c"]).unwrap());
    assert_eq!(torus_solutions(&three, Coord::new(1, 0), Coord::new(0, 1)).unwrap().len(), 3);
    assert_eq!(
        torus_solutions(&c, Coord::new(2, 4), Coord::new(1, 2)),
        Err(Error::IndependenceViolation(Coord::new(2, 4), Coord::new(1, 2)))
    );
    // Skewed lattice: (1,1) and (1,-1) has index 2 and carries both phases.
    let t = torus_solutions(&c, Coord::new(1, 1), Coord::new(1, -1)).unwrap();
    assert_eq!(t.len(), 2);
    for k in 0..2 {
        for y in -3..3 {
            for x in -3..3 {
                let z = Coord::new(x, y);
                assert_ne!(t.eval(k, z), t.eval(k, z + Coord::new(1, 0)));
                assert_eq!(t.eval(k, z), t.eval(k, z + Coord::new(1, 1)));
            }
        }
    }
}

#[test]
fn biperiodic_scan() {
    let w = has_biperiodic(&checkerboard_sft(), 2).unwrap();
    assert_eq!((w.p1, w.p2), (Coord::new(2, 0), Coord::new(0, 2)));
    let empty = SftPresentation::from_patterns(ab(), vec![Pattern::single(Symbol(0)), Pattern::single(Symbol(1))]).unwrap();
    assert_eq!(has_biperiodic(&empty, 3), None);
    let w = has_biperiodic(&SftPresentation::full_shift(ab()), 1).unwrap();
    assert_eq!((w.p1, w.p2, w.values), (Coord::new(1, 0), Coord::new(0, 1), vec![Symbol(0)]));
}

#[test]
fn stripes() {
    let c = checkerboard_sft();
    let a = Pattern::single(Symbol(0));
    assert!(!stripe_extendable(&c, &a, Coord::new(0, 1)).unwrap());
    let col = Pattern::from_rows_bottom_up(&[vec![Symbol(0)], vec![Symbol(1)]]).unwrap();
    assert!(stripe_extendable(&c, &col, Coord::new(0, 2)).unwrap());
    assert!(stripe_extendable(&SftPresentation::full_shift(ab()), &col, Coord::new(3, 7)).unwrap());
    assert_eq!(stripe_extendable(&c, &col, Coord::new(0, 1)), Err(Error::OverlapConflict(Coord::new(0, 1))));
}

#[test]
fn extendability() {
    let c = checkerboard_sft();
    assert!(extendable(&c, &Pattern::single(Symbol(0)), 5).unwrap());
    // Neighbours of 'a' can be neither 'a' nor 'b'.
    let s = SftPresentation::from_patterns(
        ab(),
        vec![Pattern::single(Symbol(1)), domino(Symbol(0), Symbol(0), Coord::new(1, 0)), domino(Symbol(0), Symbol(0), Coord::new(0, 1))],
    )
    .unwrap();
    assert!(extendable(&s, &Pattern::single(Symbol(0)), 0).unwrap());
    assert!(!extendable(&s, &Pattern::single(Symbol(0)), 1).unwrap());
}

#[test]
fn languages() {
    let c = checkerboard_sft();
    for m in 0..3 {
        assert_eq!(language(&c, 1, m).unwrap().len(), 2);
    }
    assert_eq!(language(&c, 2, 2).unwrap().len(), 2);
    assert_eq!(language(&SftPresentation::full_shift(ab()), 1, 4).unwrap().len(), 2);
    assert_eq!(language_capped(&c, 3, 0, 100), Err(Error::CapExceeded { cap: 100 }));
    assert_eq!(stabilization_margin(&c, 1, 8), Ok(0));
    assert_eq!(stabilization_margin(&SftPresentation::full_shift(ab()), 2, 8), Ok(0));
}
