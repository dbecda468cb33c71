//! Schema presentation files.
//!
//! ```text
//! alphabet: g o
//! presentation: one_orange
//! schema green biperiodic
//! p1: 1 0
//! p2: 0 1
//! block:
//! g
//! ---
//! schema orange defect
//! p1: 1 0
//! p2: 0 1
//! block:
//! g
//! ---
//! patch: 0 0
//! o
//! ---
//! ```
//!
//! Half-planes take `v:`, `w:` and blocks `A:`, `B:`, `C:`. Ray-sector
//! shapes take an optional `core: x y` block, `ray: bx by dx dy half|full`
//! blocks holding one-row words, and `sector: ax ay d1x d1y d2x d2y p1x p1y
//! p2x p2y` blocks holding the fill.

use super::{Biperiodic, FiniteDefect, HalfPlane, Letter, NamedSchema, Ray, RaySectors, Schema, SchemaPresentation, Sector};
use crate::error::{Error, Result};
use crate::lattice::{Alphabet, Cells, Coord, Pattern};
use crate::literal::{format_cells, format_pattern, parse_pattern};
use crate::sft::{keyword, lines, Line};

struct Item {
    no: usize,
    key: String,
    args: Vec<i64>,
    flag: Option<String>,
    block: Option<Pattern>,
}

fn ints(l: &Line<'_>, arg: &str, want: usize, flag: bool) -> Result<(Vec<i64>, Option<String>)> {
    let mut toks: Vec<&str> = arg.split_whitespace().collect();
    let f = if flag { toks.pop().map(str::to_string) } else { None };
    let nums: Result<Vec<i64>> = toks
        .iter()
        .map(|t| t.parse().map_err(|_| Error::syntax(l.no, 1, format!("bad integer `{t}`"))))
        .collect();
    let nums = nums?;
    if nums.len() != want || (flag && f.is_none()) {
        return Err(Error::syntax(l.no, 1, format!("expected {want} integers{}", if flag { " and a flag" } else { "" })));
    }
    Ok((nums, f))
}

const KEYS: [(&str, usize, bool, bool); 10] = [
    // key, integers, trailing flag, followed by a block
    ("p1", 2, false, false),
    ("p2", 2, false, false),
    ("v", 2, false, false),
    ("w", 2, false, false),
    ("block", 0, false, true),
    ("A", 0, false, true),
    ("B", 0, false, true),
    ("C", 0, false, true),
    ("patch", 2, false, true),
    ("core", 2, false, true),
];

fn read_block(ls: &[Line<'_>], pos: &mut usize, alphabet: &Alphabet, after: usize) -> Result<Pattern> {
    let start = *pos;
    while let Some(l) = ls.get(*pos) {
        *pos += 1;
        if l.text == "---" {
            let rows: Vec<&str> = ls[start..*pos - 1].iter().map(|l| l.text).collect();
            if rows.is_empty() {
                return Err(Error::syntax(l.no, 1, "empty block"));
            }
            return parse_pattern(alphabet, &rows, ls[start].no);
        }
    }
    Err(Error::syntax(after, 1, "block not closed by `---`"))
}

fn items(ls: &[Line<'_>], pos: &mut usize, alphabet: &Alphabet) -> Result<Vec<Item>> {
    let mut out = Vec::new();
    while let Some(l) = ls.get(*pos) {
        if l.text.starts_with("schema ") {
            break;
        }
        *pos += 1;
        let (key, arg) = l
            .text
            .split_once(':')
            .ok_or_else(|| Error::syntax(l.no, 1, format!("unexpected `{}`", l.text)))?;
        let (n, flag, block) = match (key, KEYS.iter().find(|k| k.0 == key)) {
            (_, Some(k)) => (k.1, k.2, k.3),
            ("ray", None) => (4, true, true),
            ("sector", None) => (10, false, true),
            _ => return Err(Error::syntax(l.no, 1, format!("unknown key `{key}`"))),
        };
        let (args, flag) = ints(l, arg, n, flag)?;
        let block = if block { Some(read_block(ls, pos, alphabet, l.no)?) } else { None };
        out.push(Item {
            no: l.no,
            key: key.to_string(),
            args,
            flag,
            block,
        });
    }
    Ok(out)
}

struct Fields {
    no: usize,
    items: Vec<Item>,
}

impl Fields {
    fn take(&mut self, key: &str) -> Result<Item> {
        let i = self
            .items
            .iter()
            .position(|it| it.key == key)
            .ok_or_else(|| Error::syntax(self.no, 1, format!("missing `{key}:`")))?;
        Ok(self.items.remove(i))
    }

    fn coord(&mut self, key: &str) -> Result<Coord> {
        let it = self.take(key)?;
        Ok(Coord::new(it.args[0], it.args[1]))
    }

    fn block(&mut self, key: &str) -> Result<Pattern> {
        Ok(self.take(key)?.block.expect("keyed as a block"))
    }

    fn all(&mut self, key: &str) -> Vec<Item> {
        let (hit, rest) = std::mem::take(&mut self.items).into_iter().partition(|it| it.key == key);
        self.items = rest;
        hit
    }

    fn finish(self) -> Result<()> {
        match self.items.first() {
            Some(it) => Err(Error::syntax(it.no, 1, format!("`{}:` does not belong here", it.key))),
            None => Ok(()),
        }
    }
}

fn anchored(p: &Pattern, at: Coord) -> Cells {
    p.placed_at(at)
}

fn biperiodic(f: &mut Fields) -> Result<Biperiodic> {
    let p1 = f.coord("p1")?;
    let p2 = f.coord("p2")?;
    Biperiodic::new(f.block("block")?, p1, p2)
}

fn build(kind: &str, f: &mut Fields) -> Result<Schema> {
    Ok(match kind {
        "biperiodic" => Schema::Biperiodic(biperiodic(f)?),
        "halfplane" => {
            let (v, w) = (f.coord("v")?, f.coord("w")?);
            let (a, b, c) = (f.block("A")?, f.block("B")?, f.block("C")?);
            Schema::HalfPlane(HalfPlane::new(a, b, c, v, w)?)
        }
        "defect" => {
            let bg = biperiodic(f)?;
            let it = f.take("patch")?;
            let patch = anchored(it.block.as_ref().expect("block"), Coord::new(it.args[0], it.args[1]));
            Schema::Defect(FiniteDefect::new(bg, patch)?)
        }
        "raysectors" => {
            let core = match f.all("core").pop() {
                Some(it) => anchored(it.block.as_ref().expect("block"), Coord::new(it.args[0], it.args[1])),
                None => Cells::new(),
            };
            let mut rays = Vec::new();
            for it in f.all("ray") {
                let full = match it.flag.as_deref() {
                    Some("full") => true,
                    Some("half") => false,
                    _ => return Err(Error::syntax(it.no, 1, "ray flag is `half` or `full`")),
                };
                rays.push(Ray {
                    base: Coord::new(it.args[0], it.args[1]),
                    dir: Coord::new(it.args[2], it.args[3]),
                    word: it.block.expect("block"),
                    full,
                });
            }
            let mut sectors = Vec::new();
            for it in f.all("sector") {
                let a = &it.args;
                let c = |i: usize| Coord::new(a[i], a[i + 1]);
                sectors.push(Sector {
                    apex: c(0),
                    d1: c(2),
                    d2: c(4),
                    fill: Biperiodic::new(it.block.expect("block"), c(6), c(8))?,
                });
            }
            if sectors.is_empty() {
                return Err(Error::syntax(f.no, 1, "ray-sector shape needs a `sector:`"));
            }
            Schema::Rays(RaySectors::new(core, rays, sectors)?)
        }
        other => return Err(Error::syntax(f.no, 1, format!("unknown schema kind `{other}`"))),
    })
}

pub fn parse_schemas(text: &str) -> Result<SchemaPresentation> {
    let ls = lines(text);
    let head = ls.first().ok_or_else(|| Error::syntax(1, 1, "missing `alphabet:` line"))?;
    let names = keyword(head.text, "alphabet").ok_or_else(|| Error::syntax(head.no, 1, "expected `alphabet:`"))?;
    let alphabet = Alphabet::new(names.split_whitespace())?;
    let mut pos = 1;
    let mut name = String::new();
    if let Some(n) = ls.get(1).and_then(|l| keyword(l.text, "presentation")) {
        name = n.to_string();
        pos = 2;
    }
    let mut schemas = Vec::new();
    while let Some(l) = ls.get(pos) {
        let rest = l
            .text
            .strip_prefix("schema ")
            .ok_or_else(|| Error::syntax(l.no, 1, "expected `schema <name> <kind>`"))?;
        let (sname, kind) = match rest.split_whitespace().collect::<Vec<_>>()[..] {
            [n, k] => (n.to_string(), k),
            _ => return Err(Error::syntax(l.no, 1, "expected `schema <name> <kind>`")),
        };
        pos += 1;
        let mut f = Fields {
            no: l.no,
            items: items(&ls, &mut pos, &alphabet)?,
        };
        let schema = build(kind, &mut f)?;
        f.finish()?;
        schemas.push(NamedSchema { name: sname, schema });
    }
    SchemaPresentation::new(name, alphabet, schemas)
}

fn write_block(out: &mut String, a: &Alphabet, p: &Pattern) {
    out.push_str(&format_pattern(a, p));
    out.push_str("\n---\n");
}

fn write_cells(out: &mut String, a: &Alphabet, key: &str, cells: &Cells) {
    let lo = cells.keys().fold(Coord::new(i64::MAX, i64::MAX), |m, c| m.min(*c));
    let hi = cells.keys().fold(Coord::new(i64::MIN, i64::MIN), |m, c| m.max(*c));
    out.push_str(&format!("{key}: {} {}\n{}\n---\n", lo.x, lo.y, format_cells(a, cells, lo, hi)));
}

fn write_biperiodic(out: &mut String, a: &Alphabet, b: &Biperiodic) {
    let (p1, p2) = b.periods();
    out.push_str(&format!("p1: {} {}\np2: {} {}\nblock:\n", p1.x, p1.y, p2.x, p2.y));
    write_block(out, a, b.block());
}

pub fn serialize_schemas(p: &SchemaPresentation) -> String {
    let a = &p.alphabet;
    let mut out = format!("alphabet: {}\n", a.names().join(" "));
    if !p.name.is_empty() {
        out.push_str(&format!("presentation: {}\n", p.name));
    }
    for s in &p.schemas {
        out.push_str(&format!("schema {} {}\n", s.name, s.schema.kind()));
        match &s.schema {
            Schema::Biperiodic(b) => write_biperiodic(&mut out, a, b),
            Schema::HalfPlane(h) => {
                out.push_str(&format!("v: {} {}\nw: {} {}\n", h.v().x, h.v().y, h.w().x, h.w().y));
                for (l, k) in [(Letter::A, "A"), (Letter::B, "B"), (Letter::C, "C")] {
                    out.push_str(&format!("{k}:\n"));
                    write_block(&mut out, a, h.block(l));
                }
            }
            Schema::Defect(d) => {
                write_biperiodic(&mut out, a, d.background());
                write_cells(&mut out, a, "patch", d.patch());
            }
            Schema::Rays(r) => {
                if !r.core().is_empty() {
                    write_cells(&mut out, a, "core", r.core());
                }
                for ray in r.rays() {
                    let flag = if ray.full { "full" } else { "half" };
                    out.push_str(&format!("ray: {} {} {} {} {flag}\n", ray.base.x, ray.base.y, ray.dir.x, ray.dir.y));
                    write_block(&mut out, a, &ray.word);
                }
                for sec in r.sectors() {
                    let (p1, p2) = sec.fill.periods();
                    let v = [sec.apex, sec.d1, sec.d2, p1, p2];
                    let nums: Vec<String> = v.iter().flat_map(|c| [c.x.to_string(), c.y.to_string()]).collect();
                    out.push_str(&format!("sector: {}\n", nums.join(" ")));
                    write_block(&mut out, a, sec.fill.block());
                }
            }
        }
    }
    out
}
