//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use common::suites;
use common::*;
use sft_core::construct::{periods_sft, Caps, PeriodSet};
use sft_core::gallery::{self, choice_tree, halfplane_rows_ok, parabola, rays_check, TYPIC_RAYS};
use sft_core::lattice::appears_in;
use sft_core::order::{cb_rank, hasse, preceq, Verdict};
use sft_core::schema::Schema;
use sft_core::sft::domino;
use sft_core::solver::torus_solutions;
use sft_core::{Coord, Error, SftPresentation, Symbol};
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn torus_oracle() -> Check {
    let corpus = corpus();
    ensure(corpus.len() >= 20, || format!("corpus has only {} presentations", corpus.len()))?;
    for item in gallery::all() {
        if let Some(s) = item.subshift.as_ref().and_then(|x| x.as_sft()) {
            let small = s.alphabet().len() <= 3 && s.window().w <= 2 && s.window().h <= 2;
            let listed = corpus.iter().any(|(n, _)| *n == format!("gallery:{}", item.name));
            ensure(!small || listed, || format!("gallery SFT {} missing from the corpus", item.name))?;
        }
    }
    let mut lattices = 0;
    for (name, s) in &corpus {
        for a in 1..=3 {
            for b in 1..=3 {
                let got = torus_solutions(s, Coord::new(a, 0), Coord::new(0, b)).map_err(|e| format!("{name}: {e}"))?;
                ensure(got.as_set() == brute_torus(s, a, b), || format!("{name} differs on the {a}x{b} torus"))?;
                lattices += 1;
            }
        }
    }
    Ok(format!("{} presentations, {lattices} torus comparisons", corpus.len()))
}

/// Solution `k` read back row-major over the fundamental rectangle.
fn rows(t: &sft_core::solver::TorusSolutionSet, k: usize, a: i64, d: i64) -> Vec<Symbol> {
    (0..d).flat_map(|y| (0..a).map(move |x| Coord::new(x, y))).map(|c| t.eval(k, c)).collect()
}

fn periods_instances() -> Vec<(&'static str, SftPresentation, Vec<Coord>)> {
    let two = alphabet(2);
    let (a, b) = (Symbol(0), Symbol(1));
    let (e, n) = (Coord::new(1, 0), Coord::new(0, 1));
    let mk = |p: Vec<sft_core::Pattern>| SftPresentation::from_patterns(two.clone(), p).unwrap();
    let full = SftPresentation::full_shift(two.clone());
    let c = Coord::new;
    vec![
        ("full2", full.clone(), vec![e, n]),
        ("full2", full.clone(), vec![e]),
        ("full2", full.clone(), vec![c(1, 1)]),
        ("full2", full.clone(), vec![c(2, 0), c(3, 0)]),
        ("full2", full.clone(), vec![e, c(0, 2)]),
        ("full2", full.clone(), vec![c(1, 1), c(1, -1)]),
        ("full2", full.clone(), vec![c(2, 0), c(0, 2), c(1, 1)]),
        ("full2", full, vec![e, n, c(1, 1)]),
        ("hard-square", mk(vec![domino(b, b, e), domino(b, b, n)]), vec![c(2, 0), c(0, 2)]),
        ("checkerboard", gallery::checkerboard_sft(), vec![c(2, 0), c(0, 2), c(1, 1)]),
        ("no-ab-vertical", mk(vec![domino(a, b, n)]), vec![e]),
        ("diagonal-b", mk(vec![domino(b, b, c(1, 1))]), vec![n, c(2, 0)]),
        ("rows-constant", mk(vec![domino(a, b, e), domino(b, a, e)]), vec![c(0, 2), c(0, 3)]),
    ]
}

fn periods_correct() -> Check {
    let instances = periods_instances();
    ensure(instances.len() >= 10, || "fewer than 10 instances".into())?;
    let mut cache: BTreeMap<(&str, i64, i64, i64), BTreeSet<Vec<Symbol>>> = BTreeMap::new();
    let mut compared = 0;
    for (name, s, ps) in &instances {
        ensure(ps.len() <= 3 && s.alphabet().len() == 2, || format!("{name}: instance out of scope"))?;
        let set = PeriodSet::new(ps.iter().copied()).map_err(|e| e.to_string())?;
        let out = periods_sft(s, &set, &Caps::default()).map_err(|e| format!("{name} {ps:?}: {e}"))?.sft;
        for a in 1..=4 {
            for d in 1..=4 {
                for b in 0..a {
                    let all = cache.entry((name, a, b, d)).or_insert_with(|| brute_lattice(s, a, b, d));
                    let want: BTreeSet<Vec<Symbol>> = all
                        .iter()
                        .filter(|w| ps.iter().any(|p| lattice_has_period(w, a, b, d, *p)))
                        .cloned()
                        .collect();
                    let t = torus_solutions(&out, Coord::new(a, 0), Coord::new(b, d)).map_err(|e| e.to_string())?;
                    let got: BTreeSet<Vec<Symbol>> = (0..t.len()).map(|k| rows(&t, k, a, d)).collect();
                    ensure(got == want, || {
                        format!("{name} {ps:?} on ((a,0),(b,d)) = (({a},0),({b},{d})): {} solutions, expected {}", got.len(), want.len())
                    })?;
                    compared += 1;
                }
            }
        }
        if *name == "full2" && ps[..] == [Coord::new(1, 0), Coord::new(0, 1)] {
            let t = torus_solutions(&out, Coord::new(2, 0), Coord::new(0, 2)).map_err(|e| e.to_string())?;
            ensure(t.len() == 6, || format!("full shift with both axes: {} solutions on the 2x2 torus, expected 6", t.len()))?;
        }
    }
    Ok(format!("{} instances, {compared} lattice comparisons, worked count 6 reproduced", instances.len()))
}

fn cb_engine() -> Check {
    let item = gallery::by_name("one_orange").map_err(|e| e.to_string())?;
    let p = &item.presentation;
    let r = cb_rank(p, 8, 8).map_err(|e| e.to_string())?;
    let rk = |n: &str| r.ranks[p.index_of(n).expect("named")];
    ensure(rk("one_orange") == Some(1) && rk("all_green") == Some(2) && r.rank == Some(2), || {
        format!("one_orange ranks {:?}, total {:?}", r.ranks, r.rank)
    })?;
    let mut pairs = 0;
    let mut skipped = Vec::new();
    for item in gallery::all() {
        let p = &item.presentation;
        let r = match cb_rank(p, 8, 8) {
            Ok(r) => r,
            Err(Error::PresentationNotClosed(_)) => {
                skipped.push(item.name);
                continue;
            }
            Err(e) => return Err(format!("{}: {e}", item.name)),
        };
        for i in 0..p.len() {
            for j in 0..p.len() {
                let (x, y) = (p.get(i), p.get(j));
                if preceq(x, y, 2, 8) == Verdict::True && preceq(y, x, 2, 8) == Verdict::False {
                    pairs += 1;
                    let (ri, rj) = (r.ranks[i], r.ranks[j]);
                    ensure(matches!((ri, rj), (Some(a), Some(b)) if a > b), || {
                        format!("{}: {} below {} but ranks {ri:?} and {rj:?}", item.name, p.schemas[i].name, p.schemas[j].name)
                    })?;
                }
            }
        }
    }
    Ok(format!("one_orange ranks 1/2, total 2; {pairs} strict pairs reversed; skipped (not limit-closed): {}", skipped.join(" ")))
}

fn minimal_below(item: &str, schema: &str) -> Result<usize, String> {
    let p = gallery::by_name(item).map_err(|e| e.to_string())?.presentation;
    let h = hasse(&p, 2, 8).map_err(|e| e.to_string())?;
    Ok(h.minimal_classes_below(p.index_of(schema).expect("named")))
}

fn level_one() -> Check {
    let abc = minimal_below("abc_level1", "abc")?;
    let dot = minimal_below("one_orange", "one_orange")?;
    ensure(abc == 2 && dot == 1, || format!("abc_level1 has {abc} minimal classes below, one_orange {dot}"))?;
    Ok("abc_level1: 2, one_orange: 1".into())
}

fn abc_rows() -> Check {
    let mut n = 0;
    for item in gallery::all() {
        for s in &item.presentation.schemas {
            if let Schema::HalfPlane(h) = &s.schema {
                ensure(halfplane_rows_ok(h, 12), || format!("{}/{}: a row breaks the block form", item.name, s.name))?;
                n += 1;
            }
        }
    }
    ensure(n > 0, || "no half-plane schema in the gallery".into())?;
    Ok(format!("{n} half-plane schemas, rows within radius 12"))
}

fn complete_tree() -> Check {
    let s = parabola::parabola_sft();
    let mut sizes = Vec::new();
    for d in 1..=5 {
        let t = choice_tree(d).map_err(|e| format!("depth {d}: {e}"))?;
        let leaves = t.leaves();
        let distinct: BTreeSet<_> = leaves.iter().map(|(_, f)| f.values.clone()).collect();
        ensure(leaves.len() == 1 << d && distinct.len() == 1 << d, || {
            format!("depth {d}: {} leaves, {} distinct", leaves.len(), distinct.len())
        })?;
        for (word, f) in &leaves {
            let p = f.to_pattern();
            ensure(brute_admissible(&s, &p), || format!("depth {d}: leaf {word:?} is not locally admissible"))?;
            for (k, left) in word.iter().enumerate() {
                ensure(appears_in(&parabola::label(k), &p) == *left, || format!("depth {d}: leaf {word:?} and label {k}"))?;
            }
        }
        sizes.push(leaves.len().to_string());
    }
    Ok(format!("leaves per depth: {}", sizes.join(" ")))
}

fn rank_two_shape() -> Check {
    let c = rays_check(&gallery::typic_rang2_schema(), 8);
    ensure(c.ok(TYPIC_RAYS), || format!("{c:?}"))?;
    Ok(format!("core of {} cells, {} rays, no parallel pair, sectors periodic", c.core_cells, c.rays))
}

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/golden")
}

struct Run {
    code: i32,
    stdout: Vec<u8>,
    files: Vec<Vec<u8>>,
}

fn sftw(args: &[String], outputs: &[PathBuf]) -> Result<Run, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_sftw")).args(args).output().map_err(|e| e.to_string())?;
    let files = outputs.iter().map(|p| std::fs::read(p).unwrap_or_default()).collect();
    Ok(Run {
        code: o.status.code().unwrap_or(-1),
        stdout: o.stdout,
        files,
    })
}

fn cli_determinism() -> Check {
    let g = golden();
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let full = tmp.join("full2.sft");
    std::fs::write(&full, "alphabet: a b\nforbid:\n").map_err(|e| e.to_string())?;
    let p = |x: &Path| x.display().to_string();
    let s = |x: &str| x.to_string();
    let green = tmp.join("green.ppm");
    let para = tmp.join("parabola.ppm");
    let built = tmp.join("periods.sft");
    let cases: Vec<(Vec<String>, Vec<PathBuf>, i32, &str)> = vec![
        (vec![s("torus"), s("--sft"), p(&g.join("checkerboard.sft")), s("--p1"), s("2"), s("0"), s("--p2"), s("0"), s("2")], vec![], 0, "solutions: 2"),
        (vec![s("gallery"), s("parabola"), s("--verify")], vec![], 0, "0 failed"),
        (vec![s("gallery"), s("abc_level1"), s("--verify")], vec![], 0, "0 failed"),
        (vec![s("hasse"), s("--schemas"), p(&g.join("abc_level1.schemas"))], vec![], 0, "class 2 level 1: abc"),
        (vec![s("cbrank"), s("--schemas"), p(&g.join("one_orange.schemas"))], vec![], 0, "rank: 2"),
        (vec![s("compare"), s("--schemas"), p(&g.join("one_orange.schemas")), s("all_green"), s("one_orange")], vec![], 0, "all_green <= one_orange: true"),
        (vec![s("language"), s("--sft"), p(&g.join("abc.sft")), s("-n"), s("2")], vec![], 0, "patterns: 4"),
        (vec![s("solve"), s("--sft"), p(&g.join("checkerboard.sft")), s("--rect"), s("0"), s("0"), s("3"), s("3"), s("--count")], vec![], 0, "solutions: 2"),
        (
            vec![s("construct"), s("periods"), s("--sft"), p(&full), s("--periods"), s("1,0"), s("0,1"), s("--out"), p(&built)],
            vec![built.clone()],
            0,
            "torus 2x2: output 6",
        ),
        (
            vec![s("render"), s("--schemas"), p(&g.join("one_orange.schemas")), s("--schema"), s("all_green"), s("--rect"), s("0"), s("0"), s("0"), s("0"), s("--out"), p(&green)],
            vec![green.clone()],
            0,
            "1x1 cells",
        ),
        (vec![s("gallery"), s("parabola"), s("--render"), p(&para), s("--word"), s("abba")], vec![para.clone()], 0, "64x64 cells"),
        (vec![s("frobnicate")], vec![], 2, ""),
    ];
    for (args, outputs, code, needle) in &cases {
        let first = sftw(args, outputs)?;
        let second = sftw(args, outputs)?;
        let line = args.join(" ");
        ensure(first.code == *code && second.code == *code, || format!("`{line}` exited {} / {}, expected {code}", first.code, second.code))?;
        ensure(first.stdout == second.stdout, || format!("`{line}`: stdout differs between runs"))?;
        ensure(first.files == second.files && first.files.iter().all(|f| !f.is_empty()), || format!("`{line}`: output files differ or are missing"))?;
        ensure(String::from_utf8_lossy(&first.stdout).contains(needle), || format!("`{line}`: output lacks `{needle}`"))?;
    }
    let want = std::fs::read(g.join("green_1x1.ppm")).map_err(|e| e.to_string())?;
    let got = std::fs::read(&green).map_err(|e| e.to_string())?;
    ensure(want == got, || "1x1 render differs from the golden file".into())?;
    ensure(got == b"P6\n1 1\n255\n\x00\x80\x00", || "golden file is not the 1x1 green pixel".into())?;
    Ok(format!("{} commands run twice, byte-identical; 1x1 golden matches", cases.len()))
}

fn properties() -> Check {
    let mut parts = Vec::new();
    let suites: [(&str, fn() -> suites::Outcome); 4] = [
        ("language monotonicity", suites::language_monotonicity),
        ("admissibility heredity", suites::admissible_heredity),
        ("preceq transitivity", suites::preceq_transitivity),
        ("stripe symmetry", suites::stripe_symmetry),
    ];
    for (name, f) in suites {
        let t = Instant::now();
        let n = f().map_err(|e| format!("{name}: {e}"))?;
        let dt = t.elapsed();
        ensure(n >= suites::CASES, || format!("{name}: only {n} cases"))?;
        ensure(dt < Duration::from_secs(60), || format!("{name}: took {dt:?}"))?;
        parts.push(format!("{name} {n}"));
    }
    Ok(parts.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("torus oracle", torus_oracle),
        ("periods_sft", periods_correct),
        ("cantor-bendixson", cb_engine),
        ("level-1 structure", level_one),
        ("ABC rows", abc_rows),
        ("complete tree", complete_tree),
        ("rank-two shape", rank_two_shape),
        ("cli determinism", cli_determinism),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(d) => println!("criterion {} {name}: PASS ({d}) [{secs:.1}s]", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({e}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
