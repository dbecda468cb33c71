//! Line-oriented SFT and Wang tile files.
//!
//! ```text
//! alphabet: a b
//! forbid:
//! a a
//! ---
//! a
//! a
//! ---
//! ```
//!
//! Besides plain pattern blocks a forbidden section may hold windowed pair
//! rules, which nest:
//!
//! ```text
//! pair: 7
//! left:
//!   <blocks>
//! right:
//!   <blocks>
//! end:
//! ```

use super::{ForbiddenSet, PairRule, SftPresentation, WangTile, WangTileSet};
use crate::error::{Error, Result};
use crate::lattice::Alphabet;
use crate::literal::{format_pattern, parse_pattern};

pub(crate) struct Line<'a> {
    pub no: usize,
    pub text: &'a str,
}

fn strip_comment(s: &str) -> &str {
    let mut at_token_start = true;
    for (i, ch) in s.char_indices() {
        if ch == '#' && at_token_start {
            return &s[..i];
        }
        at_token_start = ch.is_whitespace();
    }
    s
}

pub(crate) fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| Line {
            no: i + 1,
            text: strip_comment(l).trim(),
        })
        .filter(|l| !l.text.is_empty())
        .collect()
}

pub(crate) fn keyword<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .map(str::trim)
}

struct Parser<'a, 'b> {
    lines: &'b [Line<'a>],
    pos: usize,
    alphabet: &'b Alphabet,
}

impl Parser<'_, '_> {
    /// Blocks and rules up to (not including) one of `stops`, or EOF when
    /// `stops` is empty.
    fn body(&mut self, stops: &[&str]) -> Result<ForbiddenSet> {
        let mut set = ForbiddenSet::default();
        let mut rows: Vec<&str> = Vec::new();
        let mut first = 0;
        while let Some(l) = self.lines.get(self.pos) {
            if stops.iter().any(|k| keyword(l.text, k).is_some()) {
                break;
            }
            self.pos += 1;
            if l.text == "---" {
                if rows.is_empty() {
                    return Err(Error::syntax(l.no, 1, "empty pattern block"));
                }
                set.patterns.push(parse_pattern(self.alphabet, &rows, first)?);
                rows.clear();
            } else if let Some(arg) = keyword(l.text, "pair") {
                if !rows.is_empty() {
                    return Err(Error::syntax(l.no, 1, "pattern block not closed by `---`"));
                }
                set.pairs.push(self.pair(l.no, arg)?);
            } else if l.text.ends_with(':') {
                return Err(Error::syntax(l.no, 1, format!("unexpected `{}`", l.text)));
            } else {
                if rows.is_empty() {
                    first = l.no;
                }
                rows.push(l.text);
            }
        }
        if !rows.is_empty() {
            return Err(Error::syntax(first, 1, "pattern block not closed by `---`"));
        }
        Ok(set)
    }

    fn expect(&mut self, key: &str, after: usize) -> Result<()> {
        match self.lines.get(self.pos) {
            Some(l) if keyword(l.text, key) == Some("") => {
                self.pos += 1;
                Ok(())
            }
            Some(l) => Err(Error::syntax(l.no, 1, format!("expected `{key}:`"))),
            None => Err(Error::syntax(after, 1, format!("expected `{key}:` before end of file"))),
        }
    }

    fn pair(&mut self, no: usize, arg: &str) -> Result<PairRule> {
        let side: i64 = arg
            .parse()
            .ok()
            .filter(|s| *s >= 1)
            .ok_or_else(|| Error::syntax(no, 7, format!("bad pair side `{arg}`")))?;
        self.expect("left", no)?;
        let left = self.body(&["right"])?;
        self.expect("right", no)?;
        let right = self.body(&["end"])?;
        self.expect("end", no)?;
        Ok(PairRule { side, left, right })
    }
}

pub fn parse_sft(text: &str) -> Result<SftPresentation> {
    let ls = lines(text);
    let head = ls.first().ok_or_else(|| Error::syntax(1, 1, "missing `alphabet:` line"))?;
    let names = keyword(head.text, "alphabet")
        .ok_or_else(|| Error::syntax(head.no, 1, "expected `alphabet:`"))?;
    let alphabet = Alphabet::new(names.split_whitespace())?;
    let forbidden = match ls.get(1) {
        None => ForbiddenSet::default(),
        Some(l) if keyword(l.text, "forbid") == Some("") => {
            let mut p = Parser {
                lines: &ls,
                pos: 2,
                alphabet: &alphabet,
            };
            let set = p.body(&[])?;
            if let Some(l) = ls.get(p.pos) {
                return Err(Error::syntax(l.no, 1, format!("unexpected `{}`", l.text)));
            }
            set
        }
        Some(l) => return Err(Error::syntax(l.no, 1, "expected `forbid:`")),
    };
    SftPresentation::new(alphabet, forbidden)
}

fn write_set(out: &mut String, a: &Alphabet, set: &ForbiddenSet, indent: usize) {
    let pad = " ".repeat(indent);
    for p in &set.patterns {
        for row in format_pattern(a, p).lines() {
            out.push_str(&format!("{pad}{row}\n"));
        }
        out.push_str(&format!("{pad}---\n"));
    }
    for r in &set.pairs {
        out.push_str(&format!("{pad}pair: {}\n{pad}left:\n", r.side));
        write_set(out, a, &r.left, indent + 2);
        out.push_str(&format!("{pad}right:\n"));
        write_set(out, a, &r.right, indent + 2);
        out.push_str(&format!("{pad}end:\n"));
    }
}

pub fn serialize_sft(s: &SftPresentation) -> String {
    let mut out = format!("alphabet: {}\nforbid:\n", s.alphabet().names().join(" "));
    write_set(&mut out, s.alphabet(), s.forbidden(), 0);
    out
}

/// `tiles:` followed by one `N E S W` line per tile, optionally led by the
/// tile's name (default `t<index>`).
pub fn parse_wang(text: &str) -> Result<WangTileSet> {
    let ls = lines(text);
    match ls.first() {
        Some(l) if keyword(l.text, "tiles") == Some("") => {}
        Some(l) => return Err(Error::syntax(l.no, 1, "expected `tiles:`")),
        None => return Err(Error::syntax(1, 1, "missing `tiles:` line")),
    }
    let mut tiles = Vec::new();
    let mut names = Vec::new();
    for l in &ls[1..] {
        let mut nums: Vec<&str> = l.text.split_whitespace().collect();
        let name = match nums.len() {
            5 => nums.remove(0).to_string(),
            4 => format!("t{}", tiles.len()),
            _ => return Err(Error::syntax(l.no, 1, "a tile is four colours `N E S W`, optionally after a name")),
        };
        names.push(name);
        let mut c = [0u32; 4];
        for (i, n) in nums.iter().enumerate() {
            c[i] = n
                .parse()
                .map_err(|_| Error::syntax(l.no, 1, format!("bad colour `{n}`")))?;
        }
        tiles.push(WangTile::new(c[0], c[1], c[2], c[3]));
    }
    WangTileSet::named(tiles, names)
}

pub fn serialize_wang(t: &WangTileSet) -> String {
    let mut out = String::from("tiles:\n");
    let plain = t.names().iter().enumerate().all(|(i, n)| *n == format!("t{i}"));
    for (w, name) in t.tiles().iter().zip(t.names()) {
        if !plain {
            out.push_str(name);
            out.push(' ');
        }
        out.push_str(&format!("{} {} {} {}\n", w.north, w.east, w.south, w.west));
    }
    out
}
