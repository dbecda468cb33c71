//! Textual pattern literals: whitespace-separated symbol names, `.` for a
//! hole, top row first.

use crate::error::{Error, Result};
use crate::lattice::{Alphabet, Cells, Coord, Pattern};

/// Parse literal rows. `first_line` is the 1-based line number of `rows[0]`
/// and is only used for error positions.
pub fn parse_pattern(alphabet: &Alphabet, rows: &[&str], first_line: usize) -> Result<Pattern> {
    let mut cells = Cells::new();
    let height = rows.len() as i64;
    for (i, row) in rows.iter().enumerate() {
        let y = height - 1 - i as i64;
        for (x, tok) in row.split_whitespace().enumerate() {
            if tok == "." {
                continue;
            }
            let s = alphabet
                .symbol(tok)
                .ok_or_else(|| Error::UnknownSymbol(tok.to_string()))?;
            cells.insert(Coord::new(x as i64, y), s);
        }
    }
    if cells.is_empty() {
        return Err(Error::syntax(first_line, 1, "pattern block has no cells"));
    }
    Pattern::canonicalize(&cells)
}

/// Render a canonical pattern, one line per row, top row first, no trailing
/// newline on the last row.
pub fn format_pattern(alphabet: &Alphabet, p: &Pattern) -> String {
    let mut out = String::new();
    for y in (0..p.height()).rev() {
        let row: Vec<&str> = (0..p.width())
            .map(|x| match p.get(Coord::new(x, y)) {
                Some(s) => alphabet.name(s),
                None => ".",
            })
            .collect();
        out.push_str(&row.join(" "));
        if y > 0 {
            out.push('\n');
        }
    }
    out
}

/// Like [`format_pattern`] but for anchored cells over an explicit box.
pub fn format_cells(alphabet: &Alphabet, cells: &Cells, lo: Coord, hi: Coord) -> String {
    let mut lines = Vec::new();
    for y in (lo.y..=hi.y).rev() {
        let row: Vec<&str> = (lo.x..=hi.x)
            .map(|x| match cells.get(&Coord::new(x, y)) {
                Some(s) => alphabet.name(*s),
                None => ".",
            })
            .collect();
        lines.push(row.join(" "));
    }
    lines.join("\n")
}
