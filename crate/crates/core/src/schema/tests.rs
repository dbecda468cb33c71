use super::*;
use crate::gallery::checkerboard_sft;
use crate::sft::SftPresentation;
use std::collections::BTreeSet;

fn sym(i: u8) -> Symbol {
    Symbol(i)
}

fn row(v: &[u8]) -> Pattern {
    Pattern::from_rows_bottom_up(&[v.iter().map(|i| Symbol(*i)).collect()]).unwrap()
}

fn col(v: &[u8]) -> Pattern {
    let rows: Vec<Vec<Symbol>> = v.iter().map(|i| vec![Symbol(*i)]).collect();
    Pattern::from_rows_bottom_up(&rows).unwrap()
}

fn abc() -> HalfPlane {
    let c = |i| col(&[i, i]);
    HalfPlane::new(c(0), c(1), c(2), Coord::new(0, 1), Coord::new(1, 0)).unwrap()
}

#[test]
fn biperiodic_eval_and_validation() {
    let b = Biperiodic::new(row(&[0, 1]), Coord::new(2, 0), Coord::new(1, 1)).unwrap();
    assert_eq!(b.eval(Coord::new(0, 0)), sym(0));
    assert_eq!(b.eval(Coord::new(1, 1)), sym(0));
    assert_eq!(b.eval(Coord::new(-1, 0)), sym(1));
    assert!(Biperiodic::new(row(&[0, 1]), Coord::new(1, 0), Coord::new(0, 1)).is_err());
    assert!(Biperiodic::new(row(&[0]), Coord::new(2, 0), Coord::new(0, 1)).is_err());
    assert!(Biperiodic::new(row(&[0, 0]), Coord::new(2, 0), Coord::new(4, 0)).is_err());
    let t = Biperiodic::from_table(Lattice::rectangular(2, 1), vec![sym(1), sym(0)]).unwrap();
    assert_eq!(t.eval(Coord::new(3, 7)), sym(0));
}

#[test]
fn halfplane_letters() {
    let h = abc();
    assert_eq!(h.eval(Coord::new(-5, 3)), sym(0));
    assert_eq!(h.eval(Coord::new(0, -9)), sym(1));
    assert_eq!(h.eval(Coord::new(4, 0)), sym(2));
    let skew = HalfPlane::new(row(&[0, 0]), row(&[1, 1]), row(&[2, 2]), Coord::new(1, 0), Coord::new(1, 1)).unwrap();
    assert_eq!(skew.letter(Coord::new(10, 0)), Letter::B);
    assert_eq!(skew.letter(Coord::new(10, 1)), Letter::C);
    assert_eq!(skew.letter(Coord::new(-3, -2)), Letter::A);
    assert!(HalfPlane::new(col(&[0]), col(&[0]), col(&[0]), Coord::new(0, 1), Coord::new(1, 0)).is_err());
    let same = |i| col(&[i, i]);
    assert!(HalfPlane::new(same(0), same(0), same(0), Coord::new(0, 1), Coord::new(1, 0)).is_err());
}

#[test]
fn defect_rejects_invisible_patch() {
    let bg = Biperiodic::constant(sym(0));
    assert!(FiniteDefect::new(bg.clone(), Cells::from([(Coord::ZERO, sym(0))])).is_err());
    let d = FiniteDefect::new(bg, Cells::from([(Coord::new(2, 1), sym(1))])).unwrap();
    assert_eq!(d.eval(Coord::new(2, 1)), sym(1));
    assert_eq!(d.eval(Coord::new(2, 2)), sym(0));
}

#[test]
fn sectors_partition_the_plane() {
    let fill = |i| Biperiodic::constant(sym(i));
    let sec = |d1: Coord, d2: Coord, i| Sector {
        apex: Coord::ZERO,
        d1,
        d2,
        fill: fill(i),
    };
    let (e, n, w, s) = (Coord::new(1, 0), Coord::new(0, 1), Coord::new(-1, 0), Coord::new(0, -1));
    let ray = |dir, full| Ray {
        base: Coord::ZERO,
        dir,
        word: row(&[3]),
        full,
    };
    let rs = RaySectors::new(Cells::new(), vec![ray(e, true), ray(n, false)], vec![sec(e, n, 0), sec(n, w, 1), sec(w, e, 2)]).unwrap();
    assert_eq!(rs.eval(Coord::new(2, 2)), sym(0));
    assert_eq!(rs.eval(Coord::new(-2, 2)), sym(1));
    assert_eq!(rs.eval(Coord::new(0, -2)), sym(2));
    assert_eq!(rs.eval(Coord::new(-7, 0)), sym(3));
    assert_eq!(rs.eval(Coord::new(0, 5)), sym(3));
    // overlapping sectors
    assert!(RaySectors::new(Cells::new(), vec![ray(e, true)], vec![sec(e, w, 0), sec(s, n, 1)]).is_err());
    // parallel rays
    assert!(RaySectors::new(Cells::new(), vec![ray(e, false), ray(w, false)], vec![sec(e, e, 0)]).is_err());
}

/// Windows collected over a much larger ball.
fn wide_language(s: &Schema, n: i64) -> BTreeSet<Pattern> {
    schema_language(s, n, 40).patterns
}

#[test]
fn stabilized_languages_are_complete() {
    let bg = Biperiodic::new(row(&[0, 1, 1]), Coord::new(3, 0), Coord::new(1, 1)).unwrap();
    let d = FiniteDefect::new(bg.clone(), Cells::from([(Coord::new(-3, 4), sym(2)), (Coord::new(1, 1), sym(2))])).unwrap();
    let sq = |lo: u8, hi: u8| Pattern::from_rows_bottom_up(&[vec![sym(lo); 2], vec![sym(hi); 2]]).unwrap();
    let skew = HalfPlane::new(sq(0, 1), sq(1, 1), sq(2, 0), Coord::new(1, 0), Coord::new(1, 2)).unwrap();
    for s in [Schema::Biperiodic(bg), Schema::Defect(d), Schema::HalfPlane(abc()), Schema::HalfPlane(skew)] {
        for n in 1..=3 {
            let r = stabilization_radius(&s, n).unwrap();
            let l = schema_language(&s, n, r);
            assert!(l.stabilized);
            assert_eq!(l.patterns, wide_language(&s, n), "{} n={n}", s.kind());
        }
    }
}

#[test]
fn membership() {
    let chk = checkerboard_sft();
    let board = Schema::Biperiodic(Biperiodic::new(row(&[0, 1]), Coord::new(2, 0), Coord::new(1, 1)).unwrap());
    assert_eq!(schema_in_sft(&board, &chk).unwrap(), Membership::Member);
    let flat = Schema::Biperiodic(Biperiodic::constant(sym(0)));
    assert_eq!(schema_in_sft(&flat, &chk).unwrap(), Membership::NonMember);
    let full = SftPresentation::full_shift(Alphabet::new(["a", "b", "c"]).unwrap());
    assert_eq!(schema_in_sft(&Schema::HalfPlane(abc()), &full).unwrap(), Membership::Member);
}

const FILE: &str = "\
alphabet: a b c
presentation: demo
schema flat biperiodic
p1: 1 0
p2: 0 1
block:
a
---
schema dot defect
p1: 1 0
p2: 0 1
block:
a
---
patch: -1 2
b . b
---
schema wall halfplane
v: 0 1
w: 1 0
A:
a
a
---
B:
b
b
---
C:
c
c
---
schema star raysectors
core: 0 0
c
---
ray: 0 0 1 0 full
b
---
sector: 0 0 1 0 -1 0 1 0 0 1
a
---
sector: 0 0 -1 0 1 0 1 0 0 1
c
---
";

#[test]
fn file_roundtrip() {
    let p = parse_schemas(FILE).unwrap();
    assert_eq!(p.name, "demo");
    assert_eq!(p.len(), 4);
    assert_eq!(p.get(1).eval(Coord::new(1, 2)), sym(1));
    assert_eq!(p.get(1).eval(Coord::new(0, 2)), sym(0));
    assert_eq!(p.get(3).eval(Coord::new(3, -1)), sym(2));
    assert_eq!(serialize_schemas(&p), FILE);
    assert_eq!(parse_schemas(&serialize_schemas(&p)).unwrap(), p);
}

#[test]
fn file_errors() {
    let bad = |t: &str| parse_schemas(t).unwrap_err();
    assert!(matches!(bad("alphabet: a\nschema x biperiodic\np1: 1 0\nblock:\na\n---\n"), Error::Syntax { line: 2, .. }));
    assert!(matches!(bad("alphabet: a\nschema x cube\n"), Error::Syntax { line: 2, .. }));
    assert!(matches!(bad("alphabet: a\nschema x biperiodic\np1: 1\n"), Error::Syntax { line: 3, .. }));
    assert!(matches!(bad("alphabet: a\nschema x biperiodic\np1: 1 0\np2: 0 1\nblock:\na\n"), Error::Syntax { line: 5, .. }));
    assert!(matches!(
        bad("alphabet: a b\nschema x biperiodic\np1: 1 0\np2: 0 1\nblock:\na b\n---\n"),
        Error::InvalidSchema(_)
    ));
    assert!(matches!(bad("alphabet: a\nschema x biperiodic\np1: 1 0\np2: 0 1\nblock:\nz\n---\n"), Error::UnknownSymbol(_)));
}
