use crate::{Bounds, Command, Construct, Picture};
use anyhow::{anyhow, bail, Context};
use sft_core::construct::{periods_sft, Caps, PeriodSet};
use sft_core::gallery::{self, parabola};
use sft_core::literal::{format_cells, format_pattern};
use sft_core::order::{cb_rank, equivalent, hasse, preceq};
use sft_core::render::{render, Format, Palette, RenderSpec};
use sft_core::schema::{parse_schemas, serialize_schemas, SchemaPresentation};
use sft_core::sft::{parse_sft, serialize_sft};
use sft_core::solver::{
    fill_first, fill_region, language_capped, stabilization_margin_capped, torus_count, torus_solutions_capped, FillMode,
    FillResult, Filling, Region,
};
use sft_core::{Alphabet, Cells, Coord, Error, Lattice, Rect, SftPresentation, Symbol};
use std::fmt::Write;
use std::path::Path;

/// Input that could not be read or understood.
#[derive(Debug)]
struct BadInput(String);

impl std::fmt::Display for BadInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BadInput {}

fn bad(msg: impl Into<String>) -> anyhow::Error {
    BadInput(msg.into()).into()
}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<BadInput>().is_some() || e.downcast_ref::<std::io::Error>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(
            Error::Syntax { .. }
            | Error::UnknownSymbol(_)
            | Error::AlphabetMismatch(_)
            | Error::InvalidAlphabet(_)
            | Error::EmptyPattern
            | Error::InvalidSchema(_)
            | Error::UnknownItem(_)
            | Error::IndependenceViolation(..)
            | Error::NonCollinear(..)
            | Error::CollinearityViolation(..)
            | Error::Precondition(_)
            | Error::PaletteMissingSymbol(_)
            | Error::InvalidRenderSpec(_),
        ) => 2,
        _ => 1,
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_sft(path: &Path) -> anyhow::Result<SftPresentation> {
    parse_sft(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_schemas(path: &Path) -> anyhow::Result<SchemaPresentation> {
    parse_schemas(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn rect_of(v: &[i64]) -> Rect {
    Rect::new(Coord::new(v[0], v[1]), Coord::new(v[2], v[3]))
}

fn coord_of(v: &[i64]) -> Coord {
    Coord::new(v[0], v[1])
}

fn parse_period(s: &str) -> anyhow::Result<Coord> {
    let (x, y) = s.split_once(',').ok_or_else(|| bad(format!("period `{s}` is not `x,y`")))?;
    let n = |t: &str| t.trim().parse::<i64>().map_err(|_| bad(format!("period `{s}` is not `x,y`")));
    Ok(Coord::new(n(x)?, n(y)?))
}

fn parse_clamp(a: &Alphabet, s: &str) -> anyhow::Result<(Coord, Symbol)> {
    let f: Vec<&str> = s.split(',').collect();
    if f.len() != 3 {
        return Err(bad(format!("clamp `{s}` is not `x,y,symbol`")));
    }
    let c = parse_period(&format!("{},{}", f[0], f[1]))?;
    Ok((c, a.lookup(f[2].trim())?))
}

fn schema_index(p: &SchemaPresentation, name: &str) -> anyhow::Result<usize> {
    p.index_of(name).ok_or_else(|| Error::UnknownItem(name.to_string()).into())
}

/// Runs one command; `Ok(false)` means a verification failed.
pub fn run(cmd: Command) -> anyhow::Result<bool> {
    let mut out = String::new();
    let ok = match cmd {
        Command::Solve { sft, rect, clamp, count, bounds } => solve(&mut out, &sft, &rect, &clamp, count, bounds)?,
        Command::Torus { sft, p1, p2, list, bounds } => torus(&mut out, &sft, coord_of(&p1), coord_of(&p2), list, bounds)?,
        Command::Language { sft, n, margin, quiet, bounds } => {
            let s = load_sft(&sft)?;
            let m = match margin {
                Some(m) => m,
                None => stabilization_margin_capped(&s, n, bounds.margin_cap, bounds.cap)? as i64,
            };
            let l = language_capped(&s, n, m, bounds.cap)?;
            writeln!(out, "margin: {m}\npatterns: {}", l.len())?;
            if !quiet {
                for p in &l {
                    writeln!(out, "{}\n---", format_pattern(s.alphabet(), p))?;
                }
            }
            true
        }
        Command::Compare { schemas, x, y, n, bounds } => {
            let p = load_schemas(&schemas)?;
            let (i, j) = (schema_index(&p, &x)?, schema_index(&p, &y)?);
            let (a, b) = (p.get(i), p.get(j));
            writeln!(out, "{x} <= {y}: {}", preceq(a, b, n, bounds.radius))?;
            writeln!(out, "{y} <= {x}: {}", preceq(b, a, n, bounds.radius))?;
            writeln!(out, "equivalent: {}", equivalent(a, b, n, bounds.radius))?;
            true
        }
        Command::Hasse { schemas, n, bounds } => {
            let p = load_schemas(&schemas)?;
            out.push_str(&hasse(&p, n, bounds.radius)?.render(&p));
            true
        }
        Command::Cbrank { schemas, max_stage, bounds } => {
            let p = load_schemas(&schemas)?;
            out.push_str(&cb_rank(&p, bounds.radius, max_stage)?.render(&p));
            true
        }
        Command::Construct {
            what: Construct::Periods { sft, periods, out: path, test_bound, bounds },
        } => construct(&mut out, &sft, &periods, &path, test_bound, bounds)?,
        Command::Gallery { name, verify, render, schema, word, picture } => {
            gallery_cmd(&mut out, name, verify, render, schema, &word, &picture)?
        }
        Command::Render { schemas, schema, sft, out: path, picture } => {
            if let Some(f) = schemas {
                let p = load_schemas(&f)?;
                draw_schema(&mut out, &p, schema.as_deref(), &path, &picture)?;
            } else {
                let s = load_sft(sft.as_deref().expect("clap requires one source"))?;
                let rect = picture.rect.as_deref().map_or(Rect::ball(8), rect_of);
                let f = fill_first(&s, &Region::new(rect))?.ok_or_else(|| anyhow!("the rectangle has no filling"))?;
                draw_filling(&mut out, s.alphabet(), &f, &path, &picture)?;
            }
            true
        }
    };
    print!("{out}");
    Ok(ok)
}

fn solve(out: &mut String, sft: &Path, rect: &[i64], clamp: &[String], count: bool, b: Bounds) -> anyhow::Result<bool> {
    let s = load_sft(sft)?;
    let r = rect_of(rect);
    let clamps = clamp.iter().map(|c| parse_clamp(s.alphabet(), c)).collect::<anyhow::Result<Cells>>()?;
    let mode = if count { FillMode::Count } else { FillMode::First };
    match fill_region(&s, &Region::with_clamps(r, clamps), mode, b.cap)? {
        FillResult::Count(n) => writeln!(out, "solutions: {n}")?,
        FillResult::Found(f) => writeln!(out, "solution:\n{}", format_cells(s.alphabet(), &f.to_cells(), r.lo, r.hi))?,
        FillResult::Unsat => writeln!(out, "no solution")?,
        FillResult::All(_) => unreachable!("not requested"),
    }
    Ok(true)
}

fn torus(out: &mut String, sft: &Path, p1: Coord, p2: Coord, list: bool, b: Bounds) -> anyhow::Result<bool> {
    let s = load_sft(sft)?;
    let l = Lattice::from_periods(p1, p2)?;
    let (u, v) = l.basis();
    writeln!(out, "lattice: {u} {v}")?;
    if list {
        let t = torus_solutions_capped(&s, p1, p2, b.cap)?;
        writeln!(out, "solutions: {}", t.len())?;
        let e = l.extent();
        for k in 0..t.len() {
            let cells: Cells = l.cells().map(|c| (c, t.eval(k, c))).collect();
            writeln!(out, "{}\n---", format_cells(s.alphabet(), &cells, Coord::ZERO, Coord::new(e.w - 1, e.h - 1)))?;
        }
    } else {
        writeln!(out, "solutions: {}", torus_count(&s, l, b.cap)?)?;
    }
    Ok(true)
}

fn construct(out: &mut String, sft: &Path, periods: &[String], path: &Path, test_bound: i64, b: Bounds) -> anyhow::Result<bool> {
    let s = load_sft(sft)?;
    let ps = PeriodSet::new(periods.iter().map(|p| parse_period(p)).collect::<anyhow::Result<Vec<_>>>()?)?;
    let caps = Caps {
        enumeration: b.cap,
        margin: b.margin_cap,
        test_bound,
        ..Caps::default()
    };
    let c = periods_sft(&s, &ps, &caps)?;
    out.push_str(&c.report.render());
    std::fs::write(path, serialize_sft(&c.sft)).with_context(|| format!("writing {}", path.display()))?;
    writeln!(out, "wrote {}", path.display())?;
    // the output against the original filtered by the periods
    let mut ok = true;
    for a in 1..=test_bound {
        for d in 1..=test_bound {
            let (p1, p2) = (Coord::new(a, 0), Coord::new(0, d));
            let base = torus_solutions_capped(&s, p1, p2, b.cap)?;
            let want: std::collections::BTreeSet<Vec<Symbol>> = (0..base.len())
                .filter(|k| ps.as_slice().iter().any(|p| base.lattice.cells().all(|x| base.eval(*k, x) == base.eval(*k, x + *p))))
                .map(|k| base.solutions[k].clone())
                .collect();
            let got = torus_solutions_capped(&c.sft, p1, p2, b.cap)?.as_set();
            let same = got == want;
            ok &= same;
            writeln!(
                out,
                "torus {a}x{d}: output {}, filtered input {}: {}",
                got.len(),
                want.len(),
                if same { "ok" } else { "MISMATCH" }
            )?;
        }
    }
    writeln!(out, "oracle tori: {}", test_bound * test_bound)?;
    Ok(ok)
}

fn gallery_cmd(
    out: &mut String,
    name: Option<String>,
    verify: bool,
    render_to: Option<std::path::PathBuf>,
    schema: Option<String>,
    word: &str,
    picture: &Picture,
) -> anyhow::Result<bool> {
    let Some(name) = name else {
        for item in gallery::all() {
            writeln!(out, "{:<14}{}", item.name, item.summary)?;
        }
        return Ok(true);
    };
    let item = gallery::by_name(&name)?;
    if verify {
        let facts = gallery::verify(&item)?;
        for f in &facts {
            writeln!(
                out,
                "{:<4} {:<44} expected {:<24} got {}",
                if f.ok { "ok" } else { "FAIL" },
                f.name,
                f.expected,
                f.actual
            )?;
        }
        let failed = facts.iter().filter(|f| !f.ok).count();
        writeln!(out, "{} facts, {} failed", facts.len(), failed)?;
        return Ok(failed == 0);
    }
    if let Some(path) = render_to {
        if item.name == "parabola" && schema.is_none() {
            let w = word
                .chars()
                .map(|c| match c {
                    'a' => Ok(true),
                    'b' => Ok(false),
                    _ => Err(bad(format!("choice word `{word}` may hold only `a` and `b`"))),
                })
                .collect::<anyhow::Result<Vec<bool>>>()?;
            let f = parabola::solve_word(&w)?;
            draw_filling(out, &item.presentation.alphabet, &f, &path, picture)?;
        } else {
            draw_schema(out, &item.presentation, schema.as_deref(), &path, picture)?;
        }
        return Ok(true);
    }
    writeln!(out, "name: {}\nsummary: {}", item.name, item.summary)?;
    writeln!(out, "countable: {}\nfinite: {}", item.countable, item.finite)?;
    let kind = match &item.subshift {
        Some(sft_core::sft::Subshift::Sft(_)) => "sft",
        Some(sft_core::sft::Subshift::Predicate(_)) => "predicate",
        None => "schemas only",
    };
    writeln!(out, "subshift: {kind}\n")?;
    out.push_str(&serialize_schemas(&item.presentation));
    if let Some(s) = item.subshift.as_ref().and_then(|x| x.as_sft()) {
        out.push('\n');
        out.push_str(&serialize_sft(s));
    }
    Ok(true)
}

fn spec(a: &Alphabet, rect: Rect, path: &Path, p: &Picture) -> anyhow::Result<RenderSpec> {
    let format = match &p.format {
        Some(f) => Format::parse(f)?,
        None if path.extension().is_some_and(|e| e == "svg") => Format::Svg,
        None => Format::Ppm,
    };
    let palette = match &p.palette {
        Some(f) => Palette::parse(&read(f)?).with_context(|| format!("in {}", f.display()))?,
        None => Palette::default_for(a),
    };
    Ok(RenderSpec {
        rect,
        palette,
        scale: p.scale,
        format,
    })
}

fn write_image(out: &mut String, path: &Path, bytes: &[u8], s: &RenderSpec) -> anyhow::Result<()> {
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    writeln!(out, "wrote {}: {}x{} cells at scale {}", path.display(), s.rect.width(), s.rect.height(), s.scale)?;
    Ok(())
}

fn draw_schema(out: &mut String, p: &SchemaPresentation, name: Option<&str>, path: &Path, pic: &Picture) -> anyhow::Result<()> {
    let i = match name {
        Some(n) => schema_index(p, n)?,
        None => 0,
    };
    let x = p.get(i);
    let s = spec(&p.alphabet, pic.rect.as_deref().map_or(Rect::ball(8), rect_of), path, pic)?;
    let bytes = render(&p.alphabet, |c| x.eval(c), &s)?;
    write_image(out, path, &bytes, &s)
}

fn draw_filling(out: &mut String, a: &Alphabet, f: &Filling, path: &Path, pic: &Picture) -> anyhow::Result<()> {
    let rect = pic.rect.as_deref().map_or(f.rect, rect_of);
    if !f.rect.contains_rect(&rect) {
        bail!(Error::InvalidRenderSpec("the rectangle leaves the solved region".into()));
    }
    let s = spec(a, rect, path, pic)?;
    let bytes = render(a, |c| f.get(c).expect("inside the filling"), &s)?;
    write_image(out, path, &bytes, &s)
}
